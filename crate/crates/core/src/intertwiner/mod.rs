//! The intertwiners `S` (3 slots) and `J` (4 slots), solved block by block
//! from their intertwining relations.
//!
//! A tensor `T` is stored as `T[out][in]`. The intertwiner itself acts on
//! the reversed input, `Phi(y) = T(rev y)`, and satisfies
//! `pi_out(Delta t)(Phi y) = Phi(pi_in(Delta t) y)` for every generator.
//! For `S` the words are `(1,2,1) -> (2,1,2)`, for `J` they are
//! `(2,3,2,3) -> (3,2,3,2)`.

mod closed_form;
mod dressing;
mod dump;
mod solver;

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use rayon::prelude::*;

use crate::coeff::{CoeffRing, Coefficient, Symbolic};
use crate::error::{Error, Result};
use crate::fock::{Base, Column, LocalOperator, MultiIndex};
use crate::reps::{compile_reps, ParameterSet, WordAction};

pub use closed_form::{bracket, closed_form_s, pochhammer};
pub use dressing::{dress_j, dress_s, j_prefactor, s_prefactor, undress_j, undress_s};
pub use dump::{parse_dump, write_block, write_header, DumpedBlock, ParsedDump, DUMP_FORMAT};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum TensorKind {
    S,
    J,
}

impl TensorKind {
    pub fn name(self) -> &'static str {
        match self {
            TensorKind::S => "S",
            TensorKind::J => "J",
        }
    }

    pub fn slots(self) -> usize {
        match self {
            TensorKind::S => 3,
            TensorKind::J => 4,
        }
    }

    pub fn in_word(self) -> &'static [usize] {
        match self {
            TensorKind::S => &[1, 2, 1],
            TensorKind::J => &[2, 3, 2, 3],
        }
    }

    pub fn out_word(self) -> &'static [usize] {
        match self {
            TensorKind::S => &[2, 1, 2],
            TensorKind::J => &[3, 2, 3, 2],
        }
    }

    /// Bases of the slots `T` acts on.
    pub fn signature(self) -> Vec<Base> {
        match self {
            TensorKind::S => vec![Base::Q2; 3],
            TensorKind::J => vec![Base::Q, Base::Q2, Base::Q, Base::Q2],
        }
    }

    /// Conserved weights of a basis state.
    pub fn key(self, x: MultiIndex) -> BlockKey {
        match self {
            TensorKind::S => BlockKey::new(x.get(0) + x.get(1), x.get(1) + x.get(2)),
            TensorKind::J => BlockKey::new(x.get(0) + 2 * x.get(1) + x.get(2), x.get(1) + x.get(2) + x.get(3)),
        }
    }

    /// Key shift caused by a per-slot occupation shift.
    pub fn key_shift(self, d: &[i64]) -> (i64, i64) {
        match self {
            TensorKind::S => (d[0] + d[1], d[1] + d[2]),
            TensorKind::J => (d[0] + 2 * d[1] + d[2], d[1] + d[2] + d[3]),
        }
    }

    /// All states of a block, sorted.
    pub fn block_states(self, key: BlockKey) -> Vec<MultiIndex> {
        let (p, q) = (key.p, key.q);
        let mut out = Vec::new();
        match self {
            TensorKind::S => {
                for j in 0..=p.min(q) {
                    out.push(MultiIndex::new(&[p - j, j, q - j]));
                }
            }
            TensorKind::J => {
                for j in 0..=(p / 2).min(q) {
                    for k in 0..=(p - 2 * j).min(q - j) {
                        out.push(MultiIndex::new(&[p - 2 * j - k, j, k, q - j - k]));
                    }
                }
            }
        }
        out.sort();
        out
    }
}

impl fmt::Display for TensorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Conserved-weight label `(P, Q)` of a block.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BlockKey {
    pub p: u32,
    pub q: u32,
}

impl BlockKey {
    pub fn new(p: u32, q: u32) -> Self {
        BlockKey { p, q }
    }

    pub fn offset(self, d: (i64, i64)) -> Option<BlockKey> {
        let p = self.p as i64 + d.0;
        let q = self.q as i64 + d.1;
        (p >= 0 && q >= 0).then(|| BlockKey::new(p as u32, q as u32))
    }

    pub fn pair(self) -> (u32, u32) {
        (self.p, self.q)
    }
}

impl fmt::Display for BlockKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "P={},Q={}", self.p, self.q)
    }
}

/// A solved block: the square matrix `T[out][in]` on its states.
#[derive(Clone, Debug)]
pub struct Block<E> {
    pub key: BlockKey,
    pub states: Vec<MultiIndex>,
    index: HashMap<MultiIndex, usize>,
    /// `entries[o][x]`.
    entries: Vec<Vec<E>>,
    columns: Vec<Column<E>>,
    /// Dimension of the solution space before normalization.
    pub uniqueness: usize,
}

impl<E: Clone> Block<E> {
    pub fn new<R: CoeffRing<Elem = E>>(
        ring: &R,
        key: BlockKey,
        states: Vec<MultiIndex>,
        entries: Vec<Vec<E>>,
        uniqueness: usize,
    ) -> Self {
        let index = states.iter().enumerate().map(|(k, s)| (*s, k)).collect();
        let n = states.len();
        let columns = (0..n)
            .map(|x| {
                Arc::new(
                    (0..n).filter(|&o| !ring.is_zero(&entries[o][x])).map(|o| (states[o], entries[o][x].clone())).collect(),
                )
            })
            .collect();
        Block { key, states, index, entries, columns, uniqueness }
    }

    pub fn len(&self) -> usize {
        self.states.len()
    }

    pub fn is_empty(&self) -> bool {
        self.states.is_empty()
    }

    pub fn position(&self, x: &MultiIndex) -> Option<usize> {
        self.index.get(x).copied()
    }

    pub fn entry_at(&self, o: usize, x: usize) -> &E {
        &self.entries[o][x]
    }

    /// `T[o][x]`; `None` if either state is outside the block.
    pub fn entry(&self, o: &MultiIndex, x: &MultiIndex) -> Option<&E> {
        Some(&self.entries[self.position(o)?][self.position(x)?])
    }

    /// Nonzero entries of column `x` (empty if `x` is not in the block).
    pub fn column(&self, x: &MultiIndex) -> Column<E> {
        self.position(x).map(|k| self.columns[k].clone()).unwrap_or_default()
    }

    /// Nonzero entries `(out, in, value)` sorted by `(out, in)`.
    pub fn nonzero_entries(&self) -> Vec<(MultiIndex, MultiIndex, E)> {
        let mut out: Vec<(MultiIndex, MultiIndex, E)> = self
            .columns
            .iter()
            .zip(&self.states)
            .flat_map(|(col, x)| col.iter().map(move |(o, v)| (*o, *x, v.clone())))
            .collect();
        out.sort_by_key(|e| (e.0, e.1));
        out
    }
}

type Slot<E> = Arc<OnceLock<Result<Arc<Block<E>>>>>;

/// Shift of the block key under one generator, shared by both words.
#[derive(Clone, Debug)]
pub(crate) struct GeneratorShift {
    pub i: usize,
    pub j: usize,
    pub shift: (i64, i64),
}

/// An intertwiner whose blocks are solved lazily and cached.
pub struct Tensor<R: CoeffRing> {
    pub kind: TensorKind,
    ring: R,
    params: ParameterSet,
    pub(crate) in_action: WordAction<R>,
    pub(crate) out_action: WordAction<R>,
    pub(crate) generators: Vec<GeneratorShift>,
    signature: Vec<Base>,
    verify: bool,
    cache: Mutex<HashMap<BlockKey, Slot<R::Elem>>>,
}

impl<R: CoeffRing + Clone> Tensor<R> {
    /// Validates the parameter constraints and prepares the word actions.
    pub fn new(kind: TensorKind, ring: R, params: ParameterSet) -> Result<Self> {
        match kind {
            TensorKind::S => params.check_for_s()?,
            TensorKind::J => params.check_all()?,
        }
        let reps = compile_reps(&ring, &params)?;
        let in_action = WordAction::new(kind.in_word(), &reps);
        let out_action = WordAction::new(kind.out_word(), &reps);
        let mut generators = Vec::new();
        for i in 1..=7 {
            for j in 1..=7 {
                let rev = |d: Vec<i64>| d.into_iter().rev().collect::<Vec<i64>>();
                let ins: Vec<(i64, i64)> =
                    in_action.shift_vectors(i, j).into_iter().map(|d| kind.key_shift(&rev(d))).collect();
                let outs: Vec<(i64, i64)> =
                    out_action.shift_vectors(i, j).into_iter().map(|d| kind.key_shift(&d)).collect();
                let all: Vec<(i64, i64)> = ins.iter().chain(&outs).copied().collect();
                let Some(&first) = all.first() else { continue };
                if all.iter().any(|s| *s != first) {
                    return Err(Error::Gate {
                        gate: "block-shift".into(),
                        detail: format!("generator t_{i}{j} mixes weight shifts {all:?}"),
                    });
                }
                generators.push(GeneratorShift { i, j, shift: first });
            }
        }
        Ok(Tensor {
            kind,
            ring,
            params,
            in_action,
            out_action,
            generators,
            signature: kind.signature(),
            verify: true,
            cache: Mutex::new(HashMap::new()),
        })
    }

    /// Whether each solved block is checked against every intertwining
    /// equation it enters (on by default). Without it only the equations
    /// used to solve the block hold by construction.
    pub fn with_block_verification(mut self, on: bool) -> Self {
        self.verify = on;
        self
    }

    pub fn verifies_blocks(&self) -> bool {
        self.verify
    }

    pub fn ring(&self) -> &R {
        &self.ring
    }

    pub fn params(&self) -> &ParameterSet {
        &self.params
    }

    /// The block with key `key`, solving it (and its dependencies) on demand.
    pub fn block(&self, key: BlockKey) -> Result<Arc<Block<R::Elem>>> {
        let slot = {
            let mut cache = self.cache.lock().expect("cache lock");
            cache.entry(key).or_default().clone()
        };
        slot.get_or_init(|| solver::solve_block(self, key).map(Arc::new)).clone()
    }

    /// Inserts an externally obtained block (e.g. from a cache file).
    pub fn preload(&self, block: Block<R::Elem>) {
        let mut cache = self.cache.lock().expect("cache lock");
        let slot: Slot<R::Elem> = Arc::new(OnceLock::new());
        let _ = slot.set(Ok(Arc::new(block)));
        cache.insert(key_of_slot(&slot), slot);
    }

    /// Keys currently materialized.
    pub fn cached_keys(&self) -> Vec<BlockKey> {
        let cache = self.cache.lock().expect("cache lock");
        let mut keys: Vec<BlockKey> =
            cache.iter().filter(|(_, s)| matches!(s.get(), Some(Ok(_)))).map(|(k, _)| *k).collect();
        keys.sort();
        keys
    }

    /// Solves every block with `P, Q <= max_block`, in waves of constant
    /// `P + Q` with the blocks of a wave in parallel. Returned in key order.
    pub fn solve_up_to(&self, max_block: u32) -> Result<Vec<Arc<Block<R::Elem>>>> {
        let mut out = Vec::new();
        for total in 0..=2 * max_block {
            let wave: Vec<BlockKey> = (0..=total)
                .filter(|&p| p <= max_block && total - p <= max_block)
                .map(|p| BlockKey::new(p, total - p))
                .collect();
            let solved: Vec<Result<Arc<Block<R::Elem>>>> = wave.par_iter().map(|&k| self.block(k)).collect();
            for b in solved {
                out.push(b?);
            }
        }
        out.sort_by_key(|b| b.key);
        Ok(out)
    }

    /// `T[out][in]` for arbitrary states (zero across blocks).
    pub fn entry(&self, out: MultiIndex, inp: MultiIndex) -> Result<R::Elem> {
        let k = self.kind.key(inp);
        if self.kind.key(out) != k {
            return Ok(self.ring.zero());
        }
        Ok(self.block(k)?.entry(&out, &inp).cloned().unwrap_or_else(|| self.ring.zero()))
    }
}

fn key_of_slot<E>(slot: &Slot<E>) -> BlockKey {
    match slot.get() {
        Some(Ok(b)) => b.key,
        _ => unreachable!("preloaded slot is set"),
    }
}

impl<R: CoeffRing + Clone> LocalOperator<R> for Tensor<R> {
    fn signature(&self) -> &[Base] {
        &self.signature
    }

    fn column(&self, x: MultiIndex) -> Result<Column<R::Elem>> {
        Ok(self.block(self.kind.key(x))?.column(&x))
    }
}

/// `S` for a parameter set, solved on all blocks `P, Q <= max_block`.
pub fn solve_s(p: &ParameterSet, max_block: u32) -> Result<Tensor<Symbolic>> {
    let t = Tensor::new(TensorKind::S, Symbolic, p.clone())?;
    t.solve_up_to(max_block)?;
    Ok(t)
}

/// `J` for a parameter set, solved on all blocks `P, Q <= max_block`.
pub fn solve_j(p: &ParameterSet, max_block: u32) -> Result<Tensor<Symbolic>> {
    let t = Tensor::new(TensorKind::J, Symbolic, p.clone())?;
    t.solve_up_to(max_block)?;
    Ok(t)
}

/// Dimension of the affine solution space of a block before normalization.
pub fn uniqueness_report<E: Clone>(block: &Block<E>) -> usize {
    block.uniqueness
}

/// The vacuum-to-vacuum entry, which normalization fixes to 1.
pub fn vacuum_entry<R: CoeffRing + Clone>(t: &Tensor<R>) -> Result<R::Elem> {
    let z = MultiIndex::zeros(t.kind.slots());
    t.entry(z, z)
}

/// Symbolic entry lookup helper used by reports: `T^{out}_{in}`.
pub fn symbolic_entry(t: &Tensor<Symbolic>, out: &[u32], inp: &[u32]) -> Result<Coefficient> {
    t.entry(MultiIndex::new(out), MultiIndex::new(inp))
}
