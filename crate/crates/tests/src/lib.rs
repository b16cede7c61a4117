//! Host crate for the end-to-end acceptance target.
