//! Products of placed `S` and `J` tensors applied to windows of basis
//! vectors, and the algebraic symmetries of `S`.
//!
//! Products are written as in composition: the rightmost placement acts
//! first. Slots are numbered from 1.

use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::coeff::{CoeffRing, Coefficient, Symbolic};
use crate::error::{Error, Result};
use crate::fock::{check_signature, Base, LocalOperator, MultiIndex, TensorVector};
use crate::intertwiner::{Block, BlockKey, Tensor, TensorKind};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Placement {
    pub tensor: TensorKind,
    /// 1-based slots, in the order the tensor's indices are attached.
    pub slots: Vec<usize>,
}

impl Placement {
    pub fn new(tensor: TensorKind, slots: &[usize]) -> Self {
        assert_eq!(slots.len(), tensor.slots(), "placement arity");
        Placement { tensor, slots: slots.to_vec() }
    }

    pub fn s(slots: [usize; 3]) -> Self {
        Self::new(TensorKind::S, &slots)
    }

    pub fn j(slots: [usize; 4]) -> Self {
        Self::new(TensorKind::J, &slots)
    }

    fn zero_based(&self) -> Vec<usize> {
        self.slots.iter().map(|s| s - 1).collect()
    }
}

impl fmt::Display for Placement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.slots.iter().map(|x| x.to_string()).collect();
        write!(f, "{}_{}", self.tensor, s.join(""))
    }
}

#[derive(Clone, Debug)]
pub struct EquationSpec {
    pub name: String,
    pub left: Vec<Placement>,
    pub right: Vec<Placement>,
    pub ambient: Vec<Base>,
}

const NINE: [Base; 9] = [Base::Q, Base::Q2, Base::Q, Base::Q2, Base::Q2, Base::Q2, Base::Q, Base::Q2, Base::Q2];

impl EquationSpec {
    /// `S_356 S_246 S_145 S_123 = S_123 S_145 S_246 S_356`.
    pub fn tetrahedron() -> Self {
        let left = vec![Placement::s([3, 5, 6]), Placement::s([2, 4, 6]), Placement::s([1, 4, 5]), Placement::s([1, 2, 3])];
        let mut right = left.clone();
        right.reverse();
        EquationSpec { name: "tetrahedron".into(), left, right, ambient: vec![Base::Q2; 6] }
    }

    /// `S_456 S_489 J_3579 S_269 S_258 J_1678 J_1234
    ///  = J_1234 J_1678 S_258 S_269 J_3579 S_489 S_456`.
    pub fn three_d_reflection() -> Self {
        let left = vec![
            Placement::s([4, 5, 6]),
            Placement::s([4, 8, 9]),
            Placement::j([3, 5, 7, 9]),
            Placement::s([2, 6, 9]),
            Placement::s([2, 5, 8]),
            Placement::j([1, 6, 7, 8]),
            Placement::j([1, 2, 3, 4]),
        ];
        let mut right = left.clone();
        right.reverse();
        EquationSpec { name: "3d-reflection".into(), left, right, ambient: NINE.to_vec() }
    }

    /// The same identity with `S_456` moved across:
    /// `S_489 J_3579 S_269 S_258 J_1678 J_1234 S_654
    ///  = S_654 J_1234 J_1678 S_258 S_269 J_3579 S_489`.
    pub fn three_d_reflection_moved() -> Self {
        let left = vec![
            Placement::s([4, 8, 9]),
            Placement::j([3, 5, 7, 9]),
            Placement::s([2, 6, 9]),
            Placement::s([2, 5, 8]),
            Placement::j([1, 6, 7, 8]),
            Placement::j([1, 2, 3, 4]),
            Placement::s([6, 5, 4]),
        ];
        let mut right = left.clone();
        right.reverse();
        EquationSpec { name: "3d-reflection-moved".into(), left, right, ambient: NINE.to_vec() }
    }

    pub fn slots(&self) -> usize {
        self.ambient.len()
    }

    pub fn uses(&self, kind: TensorKind) -> bool {
        self.left.iter().chain(&self.right).any(|p| p.tensor == kind)
    }

    /// Checks every placement against the ambient signature.
    pub fn check(&self) -> Result<()> {
        for p in self.left.iter().chain(&self.right) {
            check_signature(&p.tensor.signature(), &p.zero_based(), &self.ambient)?;
        }
        Ok(())
    }
}

impl fmt::Display for EquationSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let side = |v: &[Placement]| v.iter().map(|p| p.to_string()).collect::<Vec<_>>().join(" ");
        write!(f, "{} = {}", side(&self.left), side(&self.right))
    }
}

/// The tensors an equation may refer to.
pub struct Tensors<'a, R: CoeffRing> {
    pub s: &'a Tensor<R>,
    pub j: Option<&'a Tensor<R>>,
}

impl<'a, R: CoeffRing + Clone> Tensors<'a, R> {
    fn get(&self, kind: TensorKind) -> Result<&'a Tensor<R>> {
        match kind {
            TensorKind::S => Ok(self.s),
            TensorKind::J => self.j.ok_or_else(|| Error::Gate { gate: "tensors".into(), detail: "J not supplied".into() }),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EquationReport {
    pub name: String,
    pub vectors: usize,
    pub window: String,
    pub mode: String,
    /// Largest `P + Q` among the blocks demanded, with one such key.
    pub max_block: Option<BlockKey>,
    pub witness: Option<String>,
}

impl EquationReport {
    pub fn passed(&self) -> bool {
        self.witness.is_none()
    }

    pub fn line(&self) -> String {
        let mut s = format!(
            "CHECK {} vectors={} window={} mode={} result={}",
            self.name,
            self.vectors,
            self.window,
            self.mode,
            if self.passed() { "PASS" } else { "FAIL" }
        );
        if let Some(w) = &self.witness {
            s.push_str(&format!(" witness={w}"));
        }
        s
    }
}

impl fmt::Display for EquationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.line())
    }
}

fn larger(a: Option<BlockKey>, b: Option<BlockKey>) -> Option<BlockKey> {
    match (a, b) {
        (Some(x), Some(y)) => Some(if (y.p + y.q, y) > (x.p + x.q, x) { y } else { x }),
        (x, None) => x,
        (None, y) => y,
    }
}

/// Applies one placement, checking that every output keeps the conserved
/// weights of its input.
fn apply_placement<R: CoeffRing + Clone>(
    ring: &R,
    t: &Tensor<R>,
    p: &Placement,
    v: &TensorVector<R::Elem>,
    max: &mut Option<BlockKey>,
) -> Result<TensorVector<R::Elem>> {
    let slots = p.zero_based();
    let mut out = TensorVector::zero();
    for (idx, c) in v.entries.iter() {
        let x = idx.extract(&slots);
        let key = t.kind.key(x);
        *max = larger(*max, Some(key));
        for (o, e) in t.column(x)?.iter() {
            if t.kind.key(*o) != key {
                return Err(Error::Gate { gate: "conservation".into(), detail: format!("{p}: {x:?} -> {o:?}") });
            }
            out.add_entry(ring, idx.insert(&slots, o), &ring.mul(c, e));
        }
    }
    Ok(out)
}

/// Applies a product (rightmost first) to a vector.
pub fn apply_product<R: CoeffRing + Clone>(
    tensors: &Tensors<'_, R>,
    product: &[Placement],
    v: &TensorVector<R::Elem>,
) -> Result<TensorVector<R::Elem>> {
    let mut max = None;
    apply_product_tracked(tensors, product, v, &mut max)
}

fn apply_product_tracked<R: CoeffRing + Clone>(
    tensors: &Tensors<'_, R>,
    product: &[Placement],
    v: &TensorVector<R::Elem>,
    max: &mut Option<BlockKey>,
) -> Result<TensorVector<R::Elem>> {
    let mut cur = v.clone();
    for p in product.iter().rev() {
        let t = tensors.get(p.tensor)?;
        cur = apply_placement(t.ring(), t, p, &cur, max)?;
    }
    Ok(cur)
}

struct VectorOutcome {
    max: Option<BlockKey>,
    witness: Option<String>,
}

fn check_vector<R: CoeffRing + Clone>(spec: &EquationSpec, tensors: &Tensors<'_, R>, x: MultiIndex) -> Result<VectorOutcome> {
    let ring = tensors.s.ring();
    let v = TensorVector::basis(ring, x);
    let mut max = None;
    let l = apply_product_tracked(tensors, &spec.left, &v, &mut max)?;
    let r = apply_product_tracked(tensors, &spec.right, &v, &mut max)?;
    let witness = l.first_difference(ring, &r).map(|d| {
        let z = ring.zero();
        format!("{x:?}->{d:?}:{:?}!={:?}", l.entries.get(&d).unwrap_or(&z), r.entries.get(&d).unwrap_or(&z))
    });
    Ok(VectorOutcome { max, witness })
}

/// Checks both sides on the given basis vectors.
pub fn verify_vectors<R: CoeffRing + Clone>(
    spec: &EquationSpec,
    tensors: &Tensors<'_, R>,
    vectors: &[MultiIndex],
    window: &str,
) -> Result<EquationReport> {
    spec.check()?;
    if let Some(x) = vectors.iter().find(|x| x.len() != spec.slots()) {
        return Err(Error::Gate { gate: "window".into(), detail: format!("{x:?} has the wrong number of slots") });
    }
    let outcomes: Vec<Result<VectorOutcome>> = vectors.par_iter().map(|x| check_vector(spec, tensors, *x)).collect();
    let mut max = None;
    let mut witness = None;
    for o in outcomes {
        let o = o?;
        max = larger(max, o.max);
        if witness.is_none() {
            witness = o.witness;
        }
    }
    Ok(EquationReport {
        name: spec.name.clone(),
        vectors: vectors.len(),
        window: window.to_string(),
        mode: tensors.s.ring().mode_label(),
        max_block: max,
        witness,
    })
}

/// Checks both sides on every basis vector with all occupations `<= window`.
pub fn verify_equation<R: CoeffRing + Clone>(spec: &EquationSpec, tensors: &Tensors<'_, R>, window: u32) -> Result<EquationReport> {
    let vectors = MultiIndex::window(spec.slots(), window);
    verify_vectors(spec, tensors, &vectors, &window.to_string())
}

/// `count` distinct basis vectors with occupations `<= max`, drawn with a
/// fixed seed.
pub fn random_vectors(slots: usize, max: u32, count: usize, seed: u64) -> Vec<MultiIndex> {
    let total = (max as u128 + 1).checked_pow(slots as u32);
    let count = match total {
        Some(t) if (count as u128) > t => t as usize,
        _ => count,
    };
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out: Vec<MultiIndex> = Vec::with_capacity(count);
    while out.len() < count {
        let occ: Vec<u32> = (0..slots).map(|_| rng.gen_range(0..=max)).collect();
        let m = MultiIndex::new(&occ);
        if !out.contains(&m) {
            out.push(m);
        }
    }
    out
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SymmetryReport {
    pub blocks: usize,
    pub entries: usize,
    pub involution_failures: Vec<BlockKey>,
    /// `(out, in)` with `S[out][in] != S[rev out][rev in]`.
    pub reversal_failures: Vec<(MultiIndex, MultiIndex)>,
}

impl SymmetryReport {
    pub fn passed(&self) -> bool {
        self.involution_failures.is_empty() && self.reversal_failures.is_empty()
    }

    pub fn lines(&self, max_block: u32) -> Vec<String> {
        let verdict = |ok: bool| if ok { "PASS" } else { "FAIL" };
        let mut inv = format!(
            "CHECK s-involution vectors={} window={max_block} mode=symbolic result={}",
            self.entries,
            verdict(self.involution_failures.is_empty())
        );
        if let Some(k) = self.involution_failures.first() {
            inv.push_str(&format!(" witness=block({k})"));
        }
        let mut rev = format!(
            "CHECK s-reversal vectors={} window={max_block} mode=symbolic result={}",
            self.entries,
            verdict(self.reversal_failures.is_empty())
        );
        if let Some((o, x)) = self.reversal_failures.first() {
            rev.push_str(&format!(" witness={o:?}{x:?}"));
        }
        vec![inv, rev]
    }
}

fn is_identity(block: &Block<Coefficient>) -> bool {
    let n = block.len();
    (0..n).all(|o| {
        (0..n).all(|x| {
            let s = (0..n).fold(Coefficient::zero(), |acc, k| acc.add(&block.entry_at(o, k).mul(block.entry_at(k, x))));
            if o == x {
                s.is_one()
            } else {
                s.is_zero()
            }
        })
    })
}

/// `S^2 = 1` on each block and `S^{abc}_{ijk} = S^{cba}_{kji}`, for all
/// blocks with `P, Q <= max_block`.
pub fn verify_s_symmetries(s: &Tensor<Symbolic>, max_block: u32) -> Result<SymmetryReport> {
    if s.kind != TensorKind::S {
        return Err(Error::Gate { gate: "symmetries".into(), detail: "expects S".into() });
    }
    let blocks = s.solve_up_to(max_block)?;
    let mut report = SymmetryReport { blocks: blocks.len(), ..Default::default() };
    let results: Vec<(bool, Vec<(MultiIndex, MultiIndex)>)> = blocks
        .par_iter()
        .map(|b| {
            let mirror = s.block(BlockKey::new(b.key.q, b.key.p))?;
            let mut bad = Vec::new();
            for o in &b.states {
                for x in &b.states {
                    if b.entry(o, x) != mirror.entry(&o.reversed(), &x.reversed()) {
                        bad.push((*o, *x));
                    }
                }
            }
            Ok((is_identity(b), bad))
        })
        .collect::<Result<_>>()?;
    for (b, (inv, bad)) in blocks.iter().zip(results) {
        report.entries += b.len() * b.len();
        if !inv {
            report.involution_failures.push(b.key);
        }
        report.reversal_failures.extend(bad);
    }
    Ok(report)
}
