//! q-oscillator algebras and their Fock representations.
//!
//! `Osc_q` is generated by `a+`, `a-`, `k` with
//! `k a+ = q a+ k`, `k a- = q^-1 a- k`, `a- a+ = 1 - q^2 k^2`,
//! `a+ a- = 1 - k^2`, acting by `k|m> = q^m|m>`, `a+|m> = |m+1>`,
//! `a-|m> = (1 - q^{2m})|m-1>`. `Osc_{q^2}` is the same with `q -> q^2`.

mod osc;
mod slots;

pub use osc::{normal_order, normal_order_from_right, Base, FockVector, Letter, Monomial, OscExpr};
pub use slots::{
    apply_slots, check_signature, Column, Identity, LocalOperator, MultiIndex, SlotOperator, TensorVector,
    MAX_OCCUPATION, MAX_SLOTS,
};
