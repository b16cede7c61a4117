use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use crate::coeff::CoeffRing;
use crate::error::{Error, Result};

use super::Base;

const WIDTH: u32 = 8;
const MASK: u128 = (1 << WIDTH) - 1;
pub const MAX_SLOTS: usize = 16;
pub const MAX_OCCUPATION: u32 = MASK as u32;

/// Occupation numbers of up to 16 slots packed 8 bits per slot.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MultiIndex {
    packed: u128,
    len: u8,
}

impl MultiIndex {
    pub fn zeros(len: usize) -> Self {
        assert!(len <= MAX_SLOTS);
        MultiIndex { packed: 0, len: len as u8 }
    }

    pub fn new(occ: &[u32]) -> Self {
        let mut m = Self::zeros(occ.len());
        for (i, &x) in occ.iter().enumerate() {
            m = m.with(i, x);
        }
        m
    }

    pub fn len(&self) -> usize {
        self.len as usize
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    #[inline]
    pub fn get(&self, i: usize) -> u32 {
        debug_assert!(i < self.len());
        ((self.packed >> (WIDTH * i as u32)) & MASK) as u32
    }

    #[inline]
    pub fn with(mut self, i: usize, v: u32) -> Self {
        assert!(v <= MAX_OCCUPATION, "occupation {v} does not fit a slot");
        let sh = WIDTH * i as u32;
        self.packed = (self.packed & !(MASK << sh)) | ((v as u128) << sh);
        self
    }

    pub fn to_vec(&self) -> Vec<u32> {
        (0..self.len()).map(|i| self.get(i)).collect()
    }

    pub fn reversed(&self) -> Self {
        let n = self.len();
        let mut out = Self::zeros(n);
        for i in 0..n {
            out = out.with(n - 1 - i, self.get(i));
        }
        out
    }

    pub fn max_occupation(&self) -> u32 {
        (0..self.len()).map(|i| self.get(i)).max().unwrap_or(0)
    }

    /// Sub-index at the given (0-based) positions, in the listed order.
    pub fn extract(&self, slots: &[usize]) -> Self {
        let mut out = Self::zeros(slots.len());
        for (t, &s) in slots.iter().enumerate() {
            out = out.with(t, self.get(s));
        }
        out
    }

    /// Writes `sub` into the given positions.
    pub fn insert(&self, slots: &[usize], sub: &MultiIndex) -> Self {
        let mut out = *self;
        for (t, &s) in slots.iter().enumerate() {
            out = out.with(s, sub.get(t));
        }
        out
    }

    /// All indices of length `len` with every occupation `<= max`, in
    /// lexicographic order.
    pub fn window(len: usize, max: u32) -> Vec<MultiIndex> {
        let mut out = vec![MultiIndex::zeros(len)];
        for i in 0..len {
            out = out.into_iter().flat_map(|m| (0..=max).map(move |v| m.with(i, v))).collect();
        }
        out.sort();
        out
    }
}

impl fmt::Debug for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "|")?;
        for i in 0..self.len() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}", self.get(i))?;
        }
        write!(f, ">")
    }
}

impl fmt::Display for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let v: Vec<String> = self.to_vec().iter().map(|x| x.to_string()).collect();
        write!(f, "{}", v.join(","))
    }
}

/// Sparse vector in a tensor product of Fock spaces.
#[derive(Clone, Debug)]
pub struct TensorVector<E> {
    pub entries: HashMap<MultiIndex, E>,
}

impl<E: Clone> TensorVector<E> {
    pub fn zero() -> Self {
        TensorVector { entries: HashMap::new() }
    }

    pub fn basis<R: CoeffRing<Elem = E>>(ring: &R, m: MultiIndex) -> Self {
        let mut v = Self::zero();
        v.entries.insert(m, ring.one());
        v
    }

    pub fn add_entry<R: CoeffRing<Elem = E>>(&mut self, ring: &R, m: MultiIndex, c: &E) {
        if ring.is_zero(c) {
            return;
        }
        match self.entries.get_mut(&m) {
            Some(x) => {
                ring.add_assign(x, c);
                if ring.is_zero(x) {
                    self.entries.remove(&m);
                }
            }
            None => {
                self.entries.insert(m, c.clone());
            }
        }
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Entries sorted by index.
    pub fn sorted(&self) -> Vec<(MultiIndex, E)> {
        let mut v: Vec<_> = self.entries.iter().map(|(k, x)| (*k, x.clone())).collect();
        v.sort_by_key(|e| e.0);
        v
    }

    /// First index where the two vectors differ, if any.
    pub fn first_difference<R: CoeffRing<Elem = E>>(&self, ring: &R, o: &Self) -> Option<MultiIndex> {
        let mut keys: Vec<MultiIndex> = self.entries.keys().chain(o.entries.keys()).copied().collect();
        keys.sort();
        keys.dedup();
        keys.into_iter().find(|k| {
            let z = ring.zero();
            let a = self.entries.get(k).unwrap_or(&z);
            let b = o.entries.get(k).unwrap_or(&z);
            !ring.is_zero(&ring.sub(a, b))
        })
    }
}

/// One sparse output column of a local operator.
pub type Column<E> = Arc<Vec<(MultiIndex, E)>>;

/// A linear operator on a few slots, queried column by column.
pub trait LocalOperator<R: CoeffRing>: Sync {
    fn signature(&self) -> &[Base];
    fn column(&self, x: MultiIndex) -> Result<Column<R::Elem>>;
}

/// Explicit sparse operator: in multi-index to out column.
#[derive(Clone, Debug)]
pub struct SlotOperator<E> {
    signature: Vec<Base>,
    columns: HashMap<MultiIndex, Column<E>>,
    placement: Option<Vec<usize>>,
}

impl<E: Clone> SlotOperator<E> {
    pub fn new(signature: Vec<Base>) -> Self {
        SlotOperator { signature, columns: HashMap::new(), placement: None }
    }

    pub fn with_placement(mut self, slots: Vec<usize>) -> Self {
        assert_eq!(slots.len(), self.signature.len());
        self.placement = Some(slots);
        self
    }

    pub fn placement(&self) -> Option<&[usize]> {
        self.placement.as_deref()
    }

    pub fn set_column(&mut self, x: MultiIndex, col: Vec<(MultiIndex, E)>) {
        assert_eq!(x.len(), self.signature.len());
        self.columns.insert(x, Arc::new(col));
    }

    pub fn stored_columns(&self) -> impl Iterator<Item = (&MultiIndex, &Column<E>)> {
        self.columns.iter()
    }
}

impl<R: CoeffRing> LocalOperator<R> for SlotOperator<R::Elem> {
    fn signature(&self) -> &[Base] {
        &self.signature
    }

    fn column(&self, x: MultiIndex) -> Result<Column<R::Elem>> {
        Ok(self.columns.get(&x).cloned().unwrap_or_default())
    }
}

/// The identity on `n` slots.
pub struct Identity(pub Vec<Base>);

impl<R: CoeffRing> LocalOperator<R> for Identity {
    fn signature(&self) -> &[Base] {
        &self.0
    }

    fn column(&self, x: MultiIndex) -> Result<Column<R::Elem>> {
        Err(Error::Dump(format!("identity has no stored column {x:?}")))
    }
}

/// Checks that `op` may act on the (0-based) `slots` of a space with
/// signature `ambient`.
pub fn check_signature(op_sig: &[Base], slots: &[usize], ambient: &[Base]) -> Result<()> {
    assert_eq!(op_sig.len(), slots.len(), "placement arity");
    for (t, (&s, &b)) in slots.iter().zip(op_sig).enumerate() {
        let found = ambient.get(s).copied();
        if found != Some(b) {
            return Err(Error::SignatureMismatch {
                position: t,
                expected: b.to_string(),
                found: found.map_or("nothing".into(), |x| x.to_string()),
            });
        }
    }
    Ok(())
}

/// Applies `op` on the 0-based `slots` of `v`, identity elsewhere.
/// `cutoff` bounds every output occupation when given.
pub fn apply_slots<R: CoeffRing, O: LocalOperator<R> + ?Sized>(
    ring: &R,
    op: &O,
    slots: &[usize],
    ambient: &[Base],
    v: &TensorVector<R::Elem>,
    cutoff: Option<u32>,
) -> Result<TensorVector<R::Elem>> {
    check_signature(op.signature(), slots, ambient)?;
    let mut out = TensorVector::zero();
    let mut keys: Vec<&MultiIndex> = v.entries.keys().collect();
    keys.sort();
    for idx in keys {
        let c = &v.entries[idx];
        let col = op.column(idx.extract(slots))?;
        for (o, t) in col.iter() {
            let target = idx.insert(slots, o);
            if let Some(cut) = cutoff {
                for (pos, &s) in slots.iter().enumerate() {
                    if o.get(pos) > cut {
                        return Err(Error::CutoffOverflow { slot: s, occupation: o.get(pos), cutoff: cut });
                    }
                }
            }
            out.add_entry(ring, target, &ring.mul(c, t));
        }
    }
    Ok(out)
}
