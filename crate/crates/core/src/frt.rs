//! Constant R matrices and C matrices of the vector representations of
//! type `B_n` (`N = 2n + 1`) and `C_2` (`N = 4`), and checks that the
//! oscillator representations satisfy the RTT and C relations.
//!
//! `R_{ij,mp}` maps `e_m (x) e_p` to `e_i (x) e_j`. The RTT relation reads
//! `sum_{m,p} R_{ij,mp} t_mk t_pl = sum_{m,p} t_jp t_im R_{mp,kl}`.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

use rayon::prelude::*;

use crate::coeff::{Coefficient, Symbolic};
use crate::error::{Error, Result};
use crate::linalg::{Echelon, PivotRule};
use crate::reps::{b2_subrep, build_rep, CompiledRep, FundamentalRep, ParameterSet};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Family {
    /// `B_n` with the given rank.
    B(usize),
    C2,
}

impl Family {
    /// Size `N` of the vector representation.
    pub fn dim(self) -> usize {
        match self {
            Family::B(n) => 2 * n + 1,
            Family::C2 => 4,
        }
    }

    pub fn name(self) -> String {
        match self {
            Family::B(n) => format!("B{n}"),
            Family::C2 => "C2".into(),
        }
    }

    /// `R` is built with `Q = q^{q_exponent}`.
    pub fn q_exponent(self) -> i64 {
        match self {
            Family::B(_) => 2,
            Family::C2 => 1,
        }
    }

    /// Exponents with `Q^{rho_i - rho_j} = q^{varrho_i - varrho_j}`.
    pub fn varrho(self) -> Vec<i64> {
        match self {
            Family::B(n) => {
                let n = n as i64;
                let top: Vec<i64> = (1..=n).map(|i| 2 * n - 2 * i + 1).collect();
                top.iter().copied().chain([0]).chain(top.iter().rev().map(|x| -x)).collect()
            }
            Family::C2 => vec![2, 1, -1, -2],
        }
    }

    pub fn signs(self) -> Vec<i64> {
        match self {
            Family::B(n) => vec![1; 2 * n + 1],
            Family::C2 => vec![1, 1, -1, -1],
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

/// `C_ij = delta_{i,N+1-j} eps_j q^{varrho_j}`.
pub fn build_c(family: Family) -> Vec<Vec<Coefficient>> {
    let n = family.dim();
    let (rho, eps) = (family.varrho(), family.signs());
    let mut c = vec![vec![Coefficient::zero(); n]; n];
    for j in 0..n {
        c[n - 1 - j][j] = Coefficient::monomial(eps[j], rho[j]);
    }
    c
}

/// A sparse `N^2 x N^2` matrix indexed as `R_{ij,mp}` (1-based).
#[derive(Clone, Debug, PartialEq)]
pub struct RMatrix {
    pub dim: usize,
    entries: BTreeMap<[usize; 4], Coefficient>,
    by_row: HashMap<(usize, usize), Vec<(usize, usize, Coefficient)>>,
    by_col: HashMap<(usize, usize), Vec<(usize, usize, Coefficient)>>,
}

impl RMatrix {
    pub fn from_entries(dim: usize, entries: BTreeMap<[usize; 4], Coefficient>) -> Self {
        let entries: BTreeMap<[usize; 4], Coefficient> = entries.into_iter().filter(|(_, v)| !v.is_zero()).collect();
        let mut by_row: HashMap<(usize, usize), Vec<_>> = HashMap::new();
        let mut by_col: HashMap<(usize, usize), Vec<_>> = HashMap::new();
        for (&[i, j, m, p], v) in &entries {
            by_row.entry((i, j)).or_default().push((m, p, v.clone()));
            by_col.entry((m, p)).or_default().push((i, j, v.clone()));
        }
        RMatrix { dim, entries, by_row, by_col }
    }

    pub fn get(&self, i: usize, j: usize, m: usize, p: usize) -> Coefficient {
        self.entries.get(&[i, j, m, p]).cloned().unwrap_or_default()
    }

    pub fn entries(&self) -> impl Iterator<Item = (&[usize; 4], &Coefficient)> {
        self.entries.iter()
    }

    pub fn nonzero_count(&self) -> usize {
        self.entries.len()
    }

    /// `(m, p, R_{ij,mp})` for fixed `(i, j)`.
    pub fn row(&self, i: usize, j: usize) -> &[(usize, usize, Coefficient)] {
        self.by_row.get(&(i, j)).map_or(&[], |v| v.as_slice())
    }

    /// `(i, j, R_{ij,mp})` for fixed `(m, p)`.
    pub fn column(&self, m: usize, p: usize) -> &[(usize, usize, Coefficient)] {
        self.by_col.get(&(m, p)).map_or(&[], |v| v.as_slice())
    }
}

/// The constant R matrix
/// `sum_{i != i'} Q E_ii(x)E_ii + E_mid(x)E_mid + sum_{j != i,i'} E_ii(x)E_jj
///  + Q^{-1} sum_{i != i'} E_ii(x)E_i'i'
///  + (Q - Q^{-1}) sum_{i>j} (E_ij(x)E_ji - Q^{rho_i - rho_j} eps_i eps_j E_ij(x)E_i'j')`
/// with `i' = N + 1 - i` and `E_ab (x) E_cd` contributing to `R_{ac,bd}`.
pub fn build_r(family: Family) -> RMatrix {
    let n = family.dim();
    let e = family.q_exponent();
    let (rho, eps) = (family.varrho(), family.signs());
    let big_q = Coefficient::q_pow(e);
    let diff = big_q.sub(&Coefficient::q_pow(-e));
    let prime = |i: usize| n + 1 - i;
    let mut entries: BTreeMap<[usize; 4], Coefficient> = BTreeMap::new();
    let mut add = |a: usize, b: usize, c: usize, d: usize, v: Coefficient| {
        let slot = entries.entry([a, c, b, d]).or_default();
        *slot = slot.add(&v);
    };
    for i in 1..=n {
        for j in 1..=n {
            let v = if i == j && i != prime(i) {
                big_q.clone()
            } else if i == j || j != prime(i) {
                Coefficient::one()
            } else {
                Coefficient::q_pow(-e)
            };
            add(i, i, j, j, v);
        }
    }
    for i in 1..=n {
        for j in 1..i {
            add(i, j, j, i, diff.clone());
            // Q^{rho_i - rho_j} = q^{e (rho2_i - rho2_j) / 2} with rho2 = 2 rho
            let ex = match family {
                Family::B(_) => rho[i - 1] - rho[j - 1],
                Family::C2 => e * (rho[i - 1] - rho[j - 1]),
            };
            let f = Coefficient::monomial(-eps[i - 1] * eps[j - 1], ex).mul(&diff);
            add(i, j, prime(i), prime(j), f);
        }
    }
    RMatrix::from_entries(n, entries)
}

type Triple = (usize, usize, usize);

fn apply_r_on(r: &RMatrix, pair: (usize, usize), v: &HashMap<Triple, Coefficient>) -> HashMap<Triple, Coefficient> {
    let mut out: HashMap<Triple, Coefficient> = HashMap::new();
    for (&t, c) in v {
        let a = [t.0, t.1, t.2];
        for (i, j, f) in r.column(a[pair.0], a[pair.1]) {
            let mut b = a;
            b[pair.0] = *i;
            b[pair.1] = *j;
            let e = out.entry((b[0], b[1], b[2])).or_default();
            *e = e.add(&c.mul(f));
        }
    }
    out.retain(|_, c| !c.is_zero());
    out
}

/// `R_12 R_13 R_23 = R_23 R_13 R_12` on every basis vector; returns the
/// first failing input.
pub fn check_ybe(r: &RMatrix) -> Option<Triple> {
    let n = r.dim;
    let inputs: Vec<Triple> =
        (1..=n).flat_map(|a| (1..=n).flat_map(move |b| (1..=n).map(move |c| (a, b, c)))).collect();
    inputs
        .par_iter()
        .find_first(|&&t| {
            let v: HashMap<Triple, Coefficient> = [(t, Coefficient::one())].into_iter().collect();
            let l = apply_r_on(r, (0, 1), &apply_r_on(r, (0, 2), &apply_r_on(r, (1, 2), &v)));
            let rr = apply_r_on(r, (1, 2), &apply_r_on(r, (0, 2), &apply_r_on(r, (0, 1), &v)));
            l != rr
        })
        .copied()
}

/// Full rank of `R` over `Q(q)`, by blocks of pairs connected through
/// nonzero entries. Returns the first singular block.
pub fn check_invertible(r: &RMatrix) -> std::result::Result<(), Vec<(usize, usize)>> {
    let mut seen: BTreeSet<(usize, usize)> = BTreeSet::new();
    for i in 1..=r.dim {
        for j in 1..=r.dim {
            if seen.contains(&(i, j)) {
                continue;
            }
            let mut block = vec![(i, j)];
            seen.insert((i, j));
            let mut k = 0;
            while k < block.len() {
                let (a, b) = block[k];
                k += 1;
                for (m, p, _) in r.row(a, b).iter().chain(r.column(a, b)) {
                    if seen.insert((*m, *p)) {
                        block.push((*m, *p));
                    }
                }
            }
            block.sort();
            let idx: HashMap<(usize, usize), usize> = block.iter().enumerate().map(|(k, x)| (*x, k)).collect();
            let mut ech = Echelon::new(&Symbolic, block.len(), PivotRule::MinComplexity);
            for (a, b) in &block {
                let mut row: Vec<(usize, Coefficient)> = r.row(*a, *b).iter().map(|(m, p, v)| (idx[&(*m, *p)], v.clone())).collect();
                row.sort_by_key(|x| x.0);
                ech.insert(row);
            }
            if ech.rank() != block.len() {
                return Err(block);
            }
        }
    }
    Ok(())
}

fn proportional(x: &BTreeMap<(usize, usize), Coefficient>, y: &BTreeMap<(usize, usize), Coefficient>) -> bool {
    if x.keys().ne(y.keys()) {
        return false;
    }
    let Some((k, v)) = x.iter().next() else { return true };
    let Some(lambda) = y[k].div(v) else { return false };
    x.iter().all(|(k, v)| y[k] == v.mul(&lambda))
}

/// `u = sum C_jk e_j (x) e_k` is an eigenvector of `P R`, and its transpose
/// of `(P R)^T`, as required for the C relations to be compatible with
/// the RTT relation.
pub fn check_c_consistency(r: &RMatrix, c: &[Vec<Coefficient>]) -> bool {
    let n = r.dim;
    let mut u = BTreeMap::new();
    let mut ut = BTreeMap::new();
    for j in 1..=n {
        for k in 1..=n {
            if !c[j - 1][k - 1].is_zero() {
                u.insert((j, k), c[j - 1][k - 1].clone());
                ut.insert((k, j), c[j - 1][k - 1].clone());
            }
        }
    }
    let add = |m: &mut BTreeMap<(usize, usize), Coefficient>, k: (usize, usize), v: Coefficient| {
        let e = m.entry(k).or_default();
        *e = e.add(&v);
    };
    let mut ru = BTreeMap::new();
    for ((m, p), v) in &u {
        for (i, j, f) in r.column(*m, *p) {
            add(&mut ru, (*j, *i), v.mul(f));
        }
    }
    ru.retain(|_, v: &mut Coefficient| !v.is_zero());
    let mut rut = BTreeMap::new();
    for ((i, j), v) in &ut {
        for (m, p, f) in r.row(*i, *j) {
            add(&mut rut, (*p, *m), v.mul(f));
        }
    }
    rut.retain(|_, v: &mut Coefficient| !v.is_zero());
    proportional(&u, &ru) && proportional(&ut, &rut)
}

/// Accepted structure constants of one family.
#[derive(Clone, Debug)]
pub struct StructureConstants {
    pub family: Family,
    pub c: Vec<Vec<Coefficient>>,
    pub r: RMatrix,
}

/// Representations used to gate a type-B candidate.
fn gate_reps(family: Family, p: &ParameterSet) -> Result<Vec<FundamentalRep>> {
    match family {
        Family::B(3) => (1..=3).map(|i| build_rep(i, p)).collect(),
        Family::B(2) => (1..=2).map(|i| b2_subrep(i, p)).collect(),
        _ => Ok(Vec::new()),
    }
}

impl StructureConstants {
    /// Builds `C` and `R` and admits them only through the gates: YBE,
    /// invertibility, compatibility of `C` with `R`, and for `B_2`, `B_3`
    /// the RTT and C relations of the oscillator representations on a
    /// window of `gate_cutoff`.
    pub fn accepted(family: Family, gate_cutoff: u32) -> Result<Self> {
        let fail = |detail: String| Error::Gate { gate: format!("{family} structure constants"), detail };
        let r = build_r(family);
        let c = build_c(family);
        if let Some(t) = check_ybe(&r) {
            return Err(fail(format!("Yang-Baxter fails on e{t:?}")));
        }
        if let Err(b) = check_invertible(&r) {
            return Err(fail(format!("R singular on block {b:?}")));
        }
        if !check_c_consistency(&r, &c) {
            return Err(fail("C is not an eigenvector of PR".into()));
        }
        let sc = StructureConstants { family, c, r };
        for rep in gate_reps(family, &ParameterSet::canonical())? {
            let report = rtt_check(&rep, &sc, gate_cutoff)?;
            if !report.passed() {
                return Err(fail(report.line()));
            }
        }
        Ok(sc)
    }

    pub fn dim(&self) -> usize {
        self.family.dim()
    }

    /// Nonzero `(j, k, C_jk)`.
    pub fn c_entries(&self) -> Vec<(usize, usize, Coefficient)> {
        let n = self.dim();
        (1..=n)
            .flat_map(|j| (1..=n).map(move |k| (j, k)))
            .filter(|(j, k)| !self.c[j - 1][k - 1].is_zero())
            .map(|(j, k)| (j, k, self.c[j - 1][k - 1].clone()))
            .collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RttReport {
    pub label: String,
    pub cutoff: u32,
    pub states: u32,
    pub tuples: usize,
    pub rtt_witness: Option<String>,
    pub c_witness: Option<String>,
}

impl RttReport {
    pub fn passed(&self) -> bool {
        self.rtt_witness.is_none() && self.c_witness.is_none()
    }

    pub fn line(&self) -> String {
        let mut s = format!(
            "CHECK rtt-{} vectors={} window={} mode=symbolic result={}",
            self.label,
            self.tuples * self.states as usize,
            self.cutoff,
            if self.passed() { "PASS" } else { "FAIL" }
        );
        if let Some(w) = self.rtt_witness.as_ref().or(self.c_witness.as_ref()) {
            s.push_str(&format!(" witness={w}"));
        }
        s
    }
}

type Single = HashMap<u32, Coefficient>;

fn add_single(acc: &mut Single, m: u32, v: Coefficient) {
    let e = acc.entry(m).or_default();
    *e = e.add(&v);
}

/// `coef * pi(t_ab) pi(t_cd) |s>`.
fn pair_action(rep: &CompiledRep<Symbolic>, a: usize, b: usize, c: usize, d: usize, s: u32) -> Option<(u32, Coefficient)> {
    let (m1, f1) = rep.element(&Symbolic, c, d, s)?;
    let (m2, f2) = rep.element(&Symbolic, a, b, m1)?;
    Some((m2, f1.mul(&f2)))
}

/// RTT and both C relations on the states `0..=cutoff - margin`, where the
/// margin is twice the largest occupation shift of the representation.
pub fn rtt_check(rep: &FundamentalRep, sc: &StructureConstants, cutoff: u32) -> Result<RttReport> {
    let n = sc.dim();
    if rep.dim() != n {
        return Err(Error::Gate { gate: "rtt".into(), detail: format!("{} is {}x{}, R needs {n}", rep.label, rep.dim(), rep.dim()) });
    }
    let compiled = CompiledRep::new(&Symbolic, rep)?;
    let mut max_shift = 0;
    for i in 1..=n {
        for j in 1..=n {
            if let Some(s) = compiled.shift(i, j) {
                max_shift = max_shift.max(s.unsigned_abs() as u32);
            }
        }
    }
    let margin = 2 * max_shift;
    let states = cutoff.saturating_sub(margin) + 1;
    let tuples: Vec<[usize; 4]> = (0..n.pow(4)).map(|x| [x / n.pow(3) + 1, x / n.pow(2) % n + 1, x / n % n + 1, x % n + 1]).collect();
    let nonzero = |m: &Single| m.iter().any(|(_, v)| !v.is_zero());
    let rtt_witness = tuples
        .par_iter()
        .find_map_first(|&[i, j, k, l]| {
            for s in 0..states {
                let mut acc = Single::new();
                for (m, p, v) in sc.r.row(i, j) {
                    if let Some((t, f)) = pair_action(&compiled, *m, k, *p, l, s) {
                        add_single(&mut acc, t, f.mul(v));
                    }
                }
                for (a, b, v) in sc.r.column(k, l) {
                    if let Some((t, f)) = pair_action(&compiled, j, *b, i, *a, s) {
                        add_single(&mut acc, t, f.mul(v).neg());
                    }
                }
                if nonzero(&acc) {
                    return Some(format!("t{i}{j}{k}{l}|{s}>"));
                }
            }
            None
        });
    let c = sc.c_entries();
    let mut c_witness = None;
    'c: for i in 1..=n {
        for m in 1..=n {
            for s in 0..states {
                let mut a1 = Single::new();
                for (j, k, c1) in &c {
                    for (l, mm, c2) in &c {
                        if *mm == m {
                            if let Some((t, f)) = pair_action(&compiled, i, *j, *l, *k, s) {
                                add_single(&mut a1, t, f.mul(c1).mul(c2));
                            }
                        }
                    }
                }
                let mut a2 = Single::new();
                for (ii, j, c1) in &c {
                    if *ii != i {
                        continue;
                    }
                    for (k, l, c2) in &c {
                        if let Some((t, f)) = pair_action(&compiled, *k, *j, *l, m, s) {
                            add_single(&mut a2, t, f.mul(c1).mul(c2));
                        }
                    }
                }
                for (which, mut acc) in [(1, a1), (2, a2)] {
                    if i == m {
                        add_single(&mut acc, s, Coefficient::one().neg());
                    }
                    if nonzero(&acc) {
                        c_witness = Some(format!("C{which}({i},{m})|{s}>"));
                        break 'c;
                    }
                }
            }
        }
    }
    Ok(RttReport { label: rep.label.clone(), cutoff, states, tuples: tuples.len(), rtt_witness, c_witness })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn c_matrix_entries() {
        let c = build_c(Family::B(3));
        assert_eq!(c[0][6], Coefficient::q_pow(-5));
        assert!(c[3][3].is_one());
        assert!(c[0][1].is_zero());
        let c2 = build_c(Family::C2);
        assert_eq!(c2[3][0], Coefficient::q_pow(2));
        assert_eq!(c2[0][3], Coefficient::monomial(-1, -2));
    }

    #[test]
    fn varrho_values() {
        assert_eq!(Family::B(3).varrho(), vec![5, 3, 1, 0, -1, -3, -5]);
        assert_eq!(Family::B(2).varrho(), vec![3, 1, 0, -1, -3]);
    }

    #[test]
    fn r_is_gated() {
        for f in [Family::B(2), Family::B(3), Family::C2] {
            let r = build_r(f);
            assert_eq!(check_ybe(&r), None, "{f}");
            assert!(check_invertible(&r).is_ok());
            assert!(check_c_consistency(&r, &build_c(f)));
        }
    }

    #[test]
    fn wrong_c_exponent_fails_compatibility() {
        let r = build_r(Family::C2);
        let mut c = build_c(Family::C2);
        for (j, row) in c.iter_mut().enumerate() {
            row[3 - j] = row[3 - j].mul(&Coefficient::q_pow(Family::C2.varrho()[3 - j]));
        }
        assert!(!check_c_consistency(&r, &c));
    }
}
