//! Parameters, the fundamental representations `pi_1, pi_2, pi_3` of
//! `A_q(B_3)` as 7x7 oscillator matrices, and iterated coproducts on words.

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use crate::coeff::{CoeffRing, Coefficient, Symbolic};
use crate::error::{Error, Result};
use crate::fock::{normal_order, Base, Letter, MultiIndex, OscExpr, SlotOperator};

/// All parameters of the three representations.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ParameterSet {
    pub alpha1: Coefficient,
    pub beta1: Coefficient,
    pub mu1: Coefficient,
    pub nu1: Coefficient,
    pub sigma1: Coefficient,
    pub kappa1: Coefficient,
    pub alpha2: Coefficient,
    pub beta2: Coefficient,
    pub mu2: Coefficient,
    pub nu2: Coefficient,
    pub sigma2: Coefficient,
    pub kappa2: Coefficient,
    pub alpha3: Coefficient,
    pub mu3: Coefficient,
    pub kappa31: Coefficient,
    pub kappa32: Coefficient,
}

const NAMES: [&str; 16] = [
    "alpha1", "beta1", "mu1", "nu1", "sigma1", "kappa1", "alpha2", "beta2", "mu2", "nu2", "sigma2", "kappa2",
    "alpha3", "mu3", "kappa31", "kappa32",
];

/// The three sign factors `(sigma, rho, epsilon)`.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct Signs {
    pub sigma: i64,
    pub rho: i64,
    pub epsilon: i64,
}

fn sign_of(c: &Coefficient) -> Option<i64> {
    if c.is_one() {
        Some(1)
    } else if c.neg().is_one() {
        Some(-1)
    } else {
        None
    }
}

fn int(c: i64) -> Coefficient {
    Coefficient::from_int(c)
}

fn frac(n: i64, d: i64) -> Coefficient {
    int(n).div(&int(d)).expect("nonzero")
}

impl ParameterSet {
    /// `sigma = rho = epsilon = 1`, every free parameter 1, `beta_i = -q^2`.
    pub fn canonical() -> Self {
        let one = Coefficient::one();
        let mq2 = Coefficient::q_pow(2).neg();
        ParameterSet {
            alpha1: one.clone(),
            beta1: mq2.clone(),
            mu1: one.clone(),
            nu1: one.clone(),
            sigma1: one.clone(),
            kappa1: one.clone(),
            alpha2: one.clone(),
            beta2: mq2,
            mu2: one.clone(),
            nu2: one.clone(),
            sigma2: one.clone(),
            kappa2: one.clone(),
            alpha3: one.clone(),
            mu3: one.clone(),
            kappa31: one.clone(),
            kappa32: one,
        }
    }

    /// A valid set with non-unit free parameters and the given signs.
    pub fn generic(sigma: i64, rho: i64, epsilon: i64) -> Self {
        let e = int(epsilon);
        let mq2e = Coefficient::q_pow(2).mul(&e).neg();
        ParameterSet {
            alpha1: int(2),
            beta1: mq2e.div(&int(2)).unwrap(),
            mu1: int(3),
            nu1: e.div(&int(3)).unwrap(),
            sigma1: int(sigma),
            kappa1: int(sigma),
            alpha2: Coefficient::q(),
            beta2: Coefficient::q().mul(&e).neg(),
            mu2: frac(7, 2),
            nu2: e.mul(&frac(2, 7)),
            sigma2: int(sigma),
            kappa2: int(sigma),
            alpha3: Coefficient::q().scale_int(3),
            mu3: int(5),
            kappa31: int(rho),
            kappa32: int(rho),
        }
    }

    fn fields(&self) -> [&Coefficient; 16] {
        [
            &self.alpha1,
            &self.beta1,
            &self.mu1,
            &self.nu1,
            &self.sigma1,
            &self.kappa1,
            &self.alpha2,
            &self.beta2,
            &self.mu2,
            &self.nu2,
            &self.sigma2,
            &self.kappa2,
            &self.alpha3,
            &self.mu3,
            &self.kappa31,
            &self.kappa32,
        ]
    }

    fn field_mut(&mut self, name: &str) -> Option<&mut Coefficient> {
        Some(match name {
            "alpha1" => &mut self.alpha1,
            "beta1" => &mut self.beta1,
            "mu1" => &mut self.mu1,
            "nu1" => &mut self.nu1,
            "sigma1" => &mut self.sigma1,
            "kappa1" => &mut self.kappa1,
            "alpha2" => &mut self.alpha2,
            "beta2" => &mut self.beta2,
            "mu2" => &mut self.mu2,
            "nu2" => &mut self.nu2,
            "sigma2" => &mut self.sigma2,
            "kappa2" => &mut self.kappa2,
            "alpha3" => &mut self.alpha3,
            "mu3" => &mut self.mu3,
            "kappa31" => &mut self.kappa31,
            "kappa32" => &mut self.kappa32,
            _ => return None,
        })
    }

    /// Reads `name = coefficient` lines on top of the canonical set.
    /// Blank lines and `#` comments are ignored.
    pub fn from_assignments(text: &str) -> std::result::Result<Self, String> {
        let mut p = Self::canonical();
        for line in text.lines().map(str::trim).filter(|l| !l.is_empty() && !l.starts_with('#')) {
            let (k, v) = line.split_once('=').ok_or_else(|| format!("expected name=value: {line:?}"))?;
            let slot = p.field_mut(k.trim()).ok_or_else(|| format!("unknown parameter {:?}", k.trim()))?;
            *slot = v.trim().parse().map_err(|e| format!("{}: {e}", k.trim()))?;
        }
        Ok(p)
    }

    pub fn is_canonical(&self) -> bool {
        *self == Self::canonical()
    }

    /// `canonical`, or `name=value;...` for every parameter.
    pub fn describe(&self) -> String {
        if self.is_canonical() {
            return "canonical".to_string();
        }
        NAMES.iter().zip(self.fields()).map(|(n, c)| format!("{n}={c}")).collect::<Vec<_>>().join(";")
    }

    fn fail(relation: &str) -> Error {
        Error::Constraint { relation: relation.to_string() }
    }

    /// `alpha_i beta_i = -q^2 mu_i nu_i`, `sigma_i = +-1`.
    pub fn check_paracon(&self) -> Result<()> {
        let mq2 = Coefficient::q_pow(2).neg();
        if self.alpha1.mul(&self.beta1) != mq2.mul(&self.mu1).mul(&self.nu1) {
            return Err(Self::fail("alpha1*beta1 = -q^2*mu1*nu1"));
        }
        if self.alpha2.mul(&self.beta2) != mq2.mul(&self.mu2).mul(&self.nu2) {
            return Err(Self::fail("alpha2*beta2 = -q^2*mu2*nu2"));
        }
        if sign_of(&self.sigma1).is_none() || sign_of(&self.sigma2).is_none() {
            return Err(Self::fail("sigma_i = +-1"));
        }
        Ok(())
    }

    /// `kappa1 = sigma1`, `kappa31 = kappa32`.
    pub fn check_par1(&self) -> Result<()> {
        if self.kappa1 != self.sigma1 {
            return Err(Self::fail("kappa1 = sigma1"));
        }
        if self.kappa31 != self.kappa32 {
            return Err(Self::fail("kappa31 = kappa32"));
        }
        Ok(())
    }

    /// `kappa1 = kappa2 = sigma2`, `alpha1 beta1 = alpha2 beta2`.
    pub fn check_par2(&self) -> Result<()> {
        if self.kappa1 != self.kappa2 || self.kappa2 != self.sigma2 {
            return Err(Self::fail("kappa1 = kappa2 = sigma2"));
        }
        if self.alpha1.mul(&self.beta1) != self.alpha2.mul(&self.beta2) {
            return Err(Self::fail("alpha1*beta1 = alpha2*beta2"));
        }
        Ok(())
    }

    /// `kappa31 = kappa32 = +-1`, `alpha2 beta2 = +-q^2`.
    pub fn check_par3(&self) -> Result<()> {
        if self.kappa31 != self.kappa32 || sign_of(&self.kappa31).is_none() {
            return Err(Self::fail("kappa31 = kappa32 = +-1"));
        }
        let ab = self.alpha2.mul(&self.beta2).mul(&Coefficient::q_pow(-2));
        if sign_of(&ab).is_none() {
            return Err(Self::fail("alpha2*beta2 = +-q^2"));
        }
        Ok(())
    }

    /// Constraints required for the `S` intertwiner.
    pub fn check_for_s(&self) -> Result<()> {
        self.check_paracon()?;
        self.check_par1()?;
        self.check_par2()
    }

    /// All constraints, as required for the `J` intertwiner.
    pub fn check_all(&self) -> Result<()> {
        self.check_for_s()?;
        self.check_par3()
    }

    /// `(sigma, rho, epsilon)`; requires [`check_all`](Self::check_all).
    pub fn signs(&self) -> Result<Signs> {
        self.check_all()?;
        let eps = sign_of(&self.mu1.mul(&self.nu1)).ok_or_else(|| Self::fail("mu1*nu1 = +-1"))?;
        Ok(Signs {
            sigma: sign_of(&self.sigma1).expect("checked"),
            rho: sign_of(&self.kappa31).expect("checked"),
            epsilon: eps,
        })
    }
}

impl fmt::Display for ParameterSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.describe())
    }
}

/// A square matrix of oscillator expressions representing `t_ij`.
#[derive(Clone, Debug)]
pub struct FundamentalRep {
    pub label: String,
    pub base: Base,
    entries: Vec<Vec<OscExpr>>,
}

impl FundamentalRep {
    pub fn dim(&self) -> usize {
        self.entries.len()
    }

    /// `pi(t_ij)`, 1-based.
    pub fn entry(&self, i: usize, j: usize) -> &OscExpr {
        &self.entries[i - 1][j - 1]
    }

    pub fn is_nonzero(&self, i: usize, j: usize) -> bool {
        !self.entries[i - 1][j - 1].is_zero()
    }
}

fn word(base: Base, letters: &[Letter], c: Coefficient) -> OscExpr {
    normal_order(letters, base).scale(&c)
}

fn inv(c: &Coefficient) -> Coefficient {
    c.inv().expect("parameters are nonzero")
}

/// `pi_i` for `i` in 1..=3.
pub fn build_rep(i: usize, p: &ParameterSet) -> Result<FundamentalRep> {
    use Letter::*;
    p.check_paracon()?;
    let q2 = Coefficient::q_pow(2);
    let (base, entries): (Base, Vec<((usize, usize), OscExpr)>) = match i {
        1 => {
            let b = Base::Q2;
            (
                b,
                vec![
                    ((1, 1), word(b, &[Minus], p.mu1.clone())),
                    ((1, 2), word(b, &[K], p.alpha1.clone())),
                    ((2, 1), word(b, &[K], p.beta1.clone())),
                    ((2, 2), word(b, &[Plus], p.nu1.clone())),
                    ((3, 3), word(b, &[], p.kappa1.clone())),
                    ((4, 4), word(b, &[], p.sigma1.clone())),
                    ((5, 5), word(b, &[], inv(&p.kappa1))),
                    ((6, 6), word(b, &[Minus], inv(&p.nu1))),
                    ((6, 7), word(b, &[K], q2.mul(&inv(&p.beta1)))),
                    ((7, 6), word(b, &[K], q2.mul(&inv(&p.alpha1)))),
                    ((7, 7), word(b, &[Plus], inv(&p.mu1))),
                ],
            )
        }
        2 => {
            let b = Base::Q2;
            (
                b,
                vec![
                    ((1, 1), word(b, &[], p.kappa2.clone())),
                    ((2, 2), word(b, &[Minus], p.mu2.clone())),
                    ((2, 3), word(b, &[K], p.alpha2.clone())),
                    ((3, 2), word(b, &[K], p.beta2.clone())),
                    ((3, 3), word(b, &[Plus], p.nu2.clone())),
                    ((4, 4), word(b, &[], p.sigma2.clone())),
                    ((5, 5), word(b, &[Minus], inv(&p.nu2))),
                    ((5, 6), word(b, &[K], q2.mul(&inv(&p.beta2)))),
                    ((6, 5), word(b, &[K], q2.mul(&inv(&p.alpha2)))),
                    ((6, 6), word(b, &[Plus], inv(&p.mu2))),
                    ((7, 7), word(b, &[], inv(&p.kappa2))),
                ],
            )
        }
        3 => {
            let b = Base::Q;
            let r = Coefficient::r();
            let (a3, m3) = (&p.alpha3, &p.mu3);
            let q = Coefficient::q();
            (
                b,
                vec![
                    ((1, 1), word(b, &[], p.kappa31.clone())),
                    ((2, 2), word(b, &[], p.kappa32.clone())),
                    ((3, 3), word(b, &[Minus, Minus], m3.clone())),
                    ((3, 4), word(b, &[K, Minus], a3.clone())),
                    ((3, 5), word(b, &[K, K], inv(&r.mul(m3)).mul(a3).mul(a3).neg())),
                    ((4, 3), word(b, &[Minus, K], r.mul(&inv(a3)).mul(m3).neg())),
                    ((4, 4), normal_order(&[Minus, Plus], b).sub(&normal_order(&[K, K], b))),
                    ((4, 5), word(b, &[K, Plus], inv(&q.mul(m3)).mul(a3).neg())),
                    ((5, 3), word(b, &[K, K], r.mul(&q.mul(&inv(a3)).pow(2).unwrap()).mul(m3).neg())),
                    ((5, 4), word(b, &[K, Plus], r.mul(&inv(a3)))),
                    ((5, 5), word(b, &[Plus, Plus], inv(m3))),
                    ((6, 6), word(b, &[], inv(&p.kappa32))),
                    ((7, 7), word(b, &[], inv(&p.kappa31))),
                ],
            )
        }
        _ => panic!("representation index {i} out of range"),
    };
    let mut m = vec![vec![OscExpr::zero(base); 7]; 7];
    for ((a, b), e) in entries {
        m[a - 1][b - 1] = e;
    }
    Ok(FundamentalRep { label: format!("pi{i}"), base, entries: m })
}

/// The 5x5 block (rows and columns 2..=6) of `pi_2` (`i = 1`) or `pi_3`
/// (`i = 2`), a representation of `A_q(B_2)`.
pub fn b2_subrep(i: usize, p: &ParameterSet) -> Result<FundamentalRep> {
    let src = match i {
        1 => build_rep(2, p)?,
        2 => build_rep(3, p)?,
        _ => panic!("B2 representation index {i} out of range"),
    };
    let entries = (2..=6).map(|a| (2..=6).map(|b| src.entry(a, b).clone()).collect()).collect();
    Ok(FundamentalRep { label: format!("pi{i}^B2"), base: src.base, entries })
}

/// A representation with entries pre-evaluated in a coefficient ring.
///
/// Every entry has a single occupation shift, so `pi(t_ij)|m>` is one
/// basis vector times a scalar.
pub struct CompiledRep<R: CoeffRing> {
    pub base: Base,
    dim: usize,
    shifts: Vec<Option<i64>>,
    table: Vec<Vec<Option<(u32, R::Elem)>>>,
    terms: Vec<Vec<(R::Elem, crate::fock::Monomial)>>,
}

const TABLE_SIZE: u32 = 40;

impl<R: CoeffRing> CompiledRep<R> {
    pub fn new(ring: &R, rep: &FundamentalRep) -> Result<Self> {
        let dim = rep.dim();
        let mut shifts = Vec::with_capacity(dim * dim);
        let mut terms = Vec::with_capacity(dim * dim);
        for i in 1..=dim {
            for j in 1..=dim {
                let e = rep.entry(i, j);
                if e.is_zero() {
                    shifts.push(None);
                    terms.push(Vec::new());
                    continue;
                }
                shifts.push(Some(e.shift().expect("entries have a uniform shift")));
                let mut t = Vec::new();
                for (m, c) in e.terms() {
                    let c = ring.embed(c).ok_or_else(|| Error::EvaluationPole(c.to_string()))?;
                    t.push((c, *m));
                }
                terms.push(t);
            }
        }
        let mut out = CompiledRep { base: rep.base, dim, shifts, table: Vec::new(), terms };
        let table = (0..dim * dim).map(|k| (0..TABLE_SIZE).map(|m| out.compute(ring, k, m)).collect()).collect();
        out.table = table;
        Ok(out)
    }

    fn compute(&self, ring: &R, k: usize, m: u32) -> Option<(u32, R::Elem)> {
        let e = self.base.exponent();
        let mut acc: Option<(u32, R::Elem)> = None;
        for (c, mono) in &self.terms[k] {
            if mono.minus > m {
                continue;
            }
            let rest = m - mono.minus;
            let mut f = ring.mul(c, &ring.q_pow(e * mono.k as i64 * rest as i64));
            for j in (rest + 1)..=m {
                f = ring.mul(&f, &ring.sub(&ring.one(), &ring.q_pow(2 * e * j as i64)));
            }
            let target = rest + mono.plus;
            acc = Some(match acc {
                None => (target, f),
                Some((t, x)) => {
                    debug_assert_eq!(t, target);
                    (t, ring.add(&x, &f))
                }
            });
        }
        acc.filter(|(_, x)| !ring.is_zero(x))
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn is_nonzero(&self, i: usize, j: usize) -> bool {
        self.shifts[(i - 1) * self.dim + j - 1].is_some()
    }

    /// Occupation shift of `pi(t_ij)`.
    pub fn shift(&self, i: usize, j: usize) -> Option<i64> {
        self.shifts[(i - 1) * self.dim + j - 1]
    }

    /// `pi(t_ij)|m> = c |m'>`, or `None` if it vanishes.
    pub fn element(&self, ring: &R, i: usize, j: usize, m: u32) -> Option<(u32, R::Elem)> {
        let k = (i - 1) * self.dim + j - 1;
        if m < TABLE_SIZE {
            self.table[k][m as usize].clone()
        } else {
            self.compute(ring, k, m)
        }
    }
}

/// `pi_{w_1} (x) ... (x) pi_{w_r}` applied to `Delta^{(r)}(t_ij)`.
pub struct WordAction<R: CoeffRing> {
    pub word: Vec<usize>,
    reps: Vec<Arc<CompiledRep<R>>>,
    dim: usize,
    paths: HashMap<(usize, usize), Vec<Vec<usize>>>,
}

impl<R: CoeffRing> WordAction<R> {
    /// `reps[k]` is the compiled `pi_{k+1}`.
    pub fn new(word: &[usize], reps: &[Arc<CompiledRep<R>>]) -> Self {
        assert!(!word.is_empty());
        let slots: Vec<Arc<CompiledRep<R>>> = word.iter().map(|&w| reps[w - 1].clone()).collect();
        let dim = slots[0].dim();
        let mut paths = HashMap::new();
        for i in 1..=dim {
            for j in 1..=dim {
                // rows visited: i = k_0, k_1, ..., k_r = j
                let mut partial: Vec<Vec<usize>> = vec![vec![i]];
                for (s, rep) in slots.iter().enumerate() {
                    let last = s + 1 == slots.len();
                    let mut next = Vec::new();
                    for p in &partial {
                        let cur = *p.last().unwrap();
                        let targets: Vec<usize> = if last { vec![j] } else { (1..=dim).collect() };
                        for k in targets {
                            if rep.is_nonzero(cur, k) {
                                let mut p2 = p.clone();
                                p2.push(k);
                                next.push(p2);
                            }
                        }
                    }
                    partial = next;
                }
                if !partial.is_empty() {
                    paths.insert((i, j), partial);
                }
            }
        }
        WordAction { word: word.to_vec(), reps: slots, dim, paths }
    }

    pub fn signature(&self) -> Vec<Base> {
        self.reps.iter().map(|r| r.base).collect()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Index paths `(i, k_1, ..., k_{r-1}, j)` with statically nonzero factors.
    pub fn paths(&self, i: usize, j: usize) -> &[Vec<usize>] {
        self.paths.get(&(i, j)).map_or(&[], |v| v.as_slice())
    }

    /// Occupation shift vectors of all paths of `t_ij`.
    pub fn shift_vectors(&self, i: usize, j: usize) -> Vec<Vec<i64>> {
        self.paths(i, j)
            .iter()
            .map(|p| (0..self.reps.len()).map(|s| self.reps[s].shift(p[s], p[s + 1]).unwrap()).collect())
            .collect()
    }

    /// `Delta(t_ij)` on a basis vector.
    pub fn apply(&self, ring: &R, i: usize, j: usize, x: MultiIndex) -> Vec<(MultiIndex, R::Elem)> {
        let mut out: Vec<(MultiIndex, R::Elem)> = Vec::new();
        'path: for p in self.paths(i, j) {
            let mut c = ring.one();
            let mut y = x;
            for (s, rep) in self.reps.iter().enumerate() {
                match rep.element(ring, p[s], p[s + 1], x.get(s)) {
                    Some((m, f)) => {
                        c = ring.mul(&c, &f);
                        y = y.with(s, m);
                    }
                    None => continue 'path,
                }
            }
            match out.iter_mut().find(|(k, _)| *k == y) {
                Some((_, acc)) => ring.add_assign(acc, &c),
                None => out.push((y, c)),
            }
        }
        out.retain(|(_, c)| !ring.is_zero(c));
        out.sort_by_key(|e| e.0);
        out
    }

    /// `Delta(t_ij)` on a sparse vector.
    pub fn apply_vector(
        &self,
        ring: &R,
        i: usize,
        j: usize,
        v: &[(MultiIndex, R::Elem)],
    ) -> HashMap<MultiIndex, R::Elem> {
        let mut out: HashMap<MultiIndex, R::Elem> = HashMap::new();
        for (x, c) in v {
            for (y, f) in self.apply(ring, i, j, *x) {
                let t = ring.mul(c, &f);
                match out.get_mut(&y) {
                    Some(acc) => ring.add_assign(acc, &t),
                    None => {
                        out.insert(y, t);
                    }
                }
            }
        }
        out.retain(|_, c| !ring.is_zero(c));
        out
    }
}

/// Compiles `pi_1, pi_2, pi_3` for a parameter set.
pub fn compile_reps<R: CoeffRing>(ring: &R, p: &ParameterSet) -> Result<Vec<Arc<CompiledRep<R>>>> {
    (1..=3).map(|i| Ok(Arc::new(CompiledRep::new(ring, &build_rep(i, p)?)?))).collect()
}

/// `pi_{word}(Delta(t_ij))` as an explicit operator on all in-states with
/// occupations `<= cutoff`.
pub fn rep_word(word: &[usize], i: usize, j: usize, p: &ParameterSet, cutoff: u32) -> Result<SlotOperator<Coefficient>> {
    let reps = compile_reps(&Symbolic, p)?;
    let action = WordAction::new(word, &reps);
    let mut op = SlotOperator::new(action.signature());
    for x in MultiIndex::window(word.len(), cutoff) {
        let col = action.apply(&Symbolic, i, j, x);
        if !col.is_empty() {
            op.set_column(x, col);
        }
    }
    Ok(op)
}

/// Result of the `pi_13 ~ pi_31` transposition check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TranspositionReport {
    pub checked: usize,
    /// `(i, j, (m1, m3))` of the first mismatch.
    pub witness: Option<(usize, usize, (u32, u32))>,
}

impl TranspositionReport {
    pub fn passed(&self) -> bool {
        self.witness.is_none()
    }
}

/// Checks `P o pi_13(Delta t_ij) = pi_31(Delta t_ij) o P` for all 49
/// generators on occupations `<= cutoff`.
pub fn check_13_transposition(p: &ParameterSet, cutoff: u32) -> Result<TranspositionReport> {
    let ring = Symbolic;
    let reps = compile_reps(&ring, p)?;
    let w13 = WordAction::new(&[1, 3], &reps);
    let w31 = WordAction::new(&[3, 1], &reps);
    let mut checked = 0;
    for i in 1..=7 {
        for j in 1..=7 {
            for x in MultiIndex::window(2, cutoff) {
                checked += 1;
                let mut lhs: Vec<(MultiIndex, Coefficient)> =
                    w13.apply(&ring, i, j, x).into_iter().map(|(y, c)| (y.reversed(), c)).collect();
                lhs.sort_by_key(|e| e.0);
                let rhs = w31.apply(&ring, i, j, x.reversed());
                if lhs != rhs {
                    return Ok(TranspositionReport { checked, witness: Some((i, j, (x.get(0), x.get(1)))) });
                }
            }
        }
    }
    Ok(TranspositionReport { checked, witness: None })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fock::Monomial;

    #[test]
    fn printed_entries() {
        let p = ParameterSet::canonical();
        let pi1 = build_rep(1, &p).unwrap();
        assert_eq!(*pi1.entry(3, 3), OscExpr::one(Base::Q2).scale(&p.kappa1));
        let pi3 = build_rep(3, &p).unwrap();
        let expect = p.alpha3.mul(&p.alpha3).div(&Coefficient::r().mul(&p.mu3)).unwrap().neg();
        assert_eq!(*pi3.entry(3, 5), OscExpr::term(Base::Q, expect, Monomial::new(0, 2, 0)));
        let pi2 = build_rep(2, &p).unwrap();
        assert!(pi2.entry(1, 4).is_zero());
    }

    #[test]
    fn signs_of_sets() {
        assert_eq!(ParameterSet::canonical().signs().unwrap(), Signs { sigma: 1, rho: 1, epsilon: 1 });
        let g = ParameterSet::generic(-1, 1, -1);
        assert_eq!(g.signs().unwrap(), Signs { sigma: -1, rho: 1, epsilon: -1 });
    }

    #[test]
    fn assignments_round_trip() {
        let g = ParameterSet::generic(1, -1, -1);
        let text = g.describe().replace(';', "\n");
        assert_eq!(ParameterSet::from_assignments(&text).unwrap(), g);
        assert_eq!(ParameterSet::canonical().describe(), "canonical");
    }
}
