//! The embedding of `A_q(B_2)` into `A_q(C_2)` on generators, and a
//! bounded-degree normal form modulo the `A_q(C_2)` relations used to
//! check that every `A_q(B_2)` relation maps into the ideal.
//!
//! `sqrt(r)` is represented by `w` with `w^2 = 1 + q^2`.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use rayon::prelude::*;

use crate::coeff::{Coefficient, Symbolic};
use crate::error::{Error, Result};
use crate::frt::{Family, StructureConstants};
use crate::linalg::{Echelon, PivotRule, SparseRow};

pub const GENERATORS: usize = 16;
const MAX_SUPPORTED_DEGREE: usize = 6;

static SYMBOLIC: Symbolic = Symbolic;

/// Letter of `s_ij`, `1 <= i, j <= 4`.
pub fn letter(i: usize, j: usize) -> u8 {
    debug_assert!((1..=4).contains(&i) && (1..=4).contains(&j));
    (4 * (i - 1) + (j - 1)) as u8
}

/// `(i, j)` of a letter.
pub fn letter_indices(x: u8) -> (usize, usize) {
    (x as usize / 4 + 1, x as usize % 4 + 1)
}

pub type Word = Vec<u8>;

/// Noncommutative polynomial in the `s_ij`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct NCPoly {
    terms: BTreeMap<Word, Coefficient>,
}

impl NCPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: Coefficient) -> Self {
        Self::term(Vec::new(), c)
    }

    pub fn term(w: Word, c: Coefficient) -> Self {
        let mut p = Self::zero();
        p.add_term(w, &c);
        p
    }

    /// `c * s_{i1 j1} s_{i2 j2} ...`.
    pub fn monomial(c: Coefficient, letters: &[(usize, usize)]) -> Self {
        Self::term(letters.iter().map(|&(i, j)| letter(i, j)).collect(), c)
    }

    pub fn add_term(&mut self, w: Word, c: &Coefficient) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry(w).or_default();
        *e = e.add(c);
        if e.is_zero() {
            self.terms.retain(|_, v| !v.is_zero());
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Word, &Coefficient)> {
        self.terms.iter()
    }

    pub fn degree(&self) -> usize {
        self.terms.keys().map(|w| w.len()).max().unwrap_or(0)
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut out = self.clone();
        for (w, c) in &o.terms {
            out.add_term(w.clone(), c);
        }
        out
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.scale(&Coefficient::one().neg()))
    }

    pub fn scale(&self, c: &Coefficient) -> Self {
        let mut out = Self::zero();
        for (w, x) in &self.terms {
            out.add_term(w.clone(), &x.mul(c));
        }
        out
    }

    pub fn mul(&self, o: &Self) -> Self {
        let mut out = Self::zero();
        for (w1, c1) in &self.terms {
            for (w2, c2) in &o.terms {
                let mut w = w1.clone();
                w.extend_from_slice(w2);
                out.add_term(w, &c1.mul(c2));
            }
        }
        out
    }

    /// `u * self * v` for words `u`, `v`.
    pub fn sandwich(&self, u: &[u8], v: &[u8]) -> Self {
        let mut out = Self::zero();
        for (w, c) in &self.terms {
            let mut x = u.to_vec();
            x.extend_from_slice(w);
            x.extend_from_slice(v);
            out.terms.insert(x, c.clone());
        }
        out
    }

    /// Splits into weight-homogeneous parts.
    pub fn by_weight(&self) -> BTreeMap<Weight, NCPoly> {
        let mut out: BTreeMap<Weight, NCPoly> = BTreeMap::new();
        for (w, c) in &self.terms {
            out.entry(word_weight(w)).or_default().terms.insert(w.clone(), c.clone());
        }
        out
    }

    /// `Some(0)` or `Some(1)` if every coefficient is rational or every
    /// coefficient is `w` times a rational; `None` if mixed.
    pub fn w_parity(&self) -> Option<u8> {
        let even = self.terms.values().all(|c| c.w_part().is_zero());
        let odd = self.terms.values().all(|c| c.rational_part().is_zero());
        match (even, odd) {
            (true, _) => Some(0),
            (false, true) => Some(1),
            _ => None,
        }
    }
}

impl fmt::Display for NCPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (k, (w, c)) in self.terms.iter().enumerate() {
            if k > 0 {
                f.write_str(" + ")?;
            }
            write!(f, "({c})")?;
            for x in w {
                let (i, j) = letter_indices(*x);
                write!(f, "*s{i}{j}")?;
            }
        }
        Ok(())
    }
}

/// `(row weight, column weight)` with `wt(1) = (1,0)`, `wt(2) = (0,1)`,
/// `wt(3) = (0,-1)`, `wt(4) = (-1,0)`.
pub type Weight = [i32; 4];

fn index_weight(i: usize) -> [i32; 2] {
    match i {
        1 => [1, 0],
        2 => [0, 1],
        3 => [0, -1],
        _ => [-1, 0],
    }
}

pub fn word_weight(w: &[u8]) -> Weight {
    let mut out = [0; 4];
    for x in w {
        let (i, j) = letter_indices(*x);
        let (a, b) = (index_weight(i), index_weight(j));
        out[0] += a[0];
        out[1] += a[1];
        out[2] += b[0];
        out[3] += b[1];
    }
    out
}

const XI: [usize; 5] = [1, 1, 2, 2, 3];
const ETA: [usize; 5] = [2, 3, 3, 4, 4];

/// Image of `t_ij` (`1 <= i, j <= 5`).
pub fn iota(i: usize, j: usize) -> NCPoly {
    assert!((1..=5).contains(&i) && (1..=5).contains(&j));
    let q = Coefficient::q();
    if i == 3 && j == 3 {
        let one = Coefficient::one();
        return NCPoly::monomial(one, &[(2, 2), (3, 3)])
            .add(&NCPoly::monomial(q.neg(), &[(2, 1), (3, 4)]))
            .add(&NCPoly::monomial(q.clone(), &[(2, 4), (3, 1)]))
            .add(&NCPoly::monomial(Coefficient::q_pow(2).neg(), &[(2, 3), (3, 2)]));
    }
    let (xi, eta) = (XI[i - 1], ETA[i - 1]);
    if j != 3 {
        let (xj, ej) = (XI[j - 1], ETA[j - 1]);
        let sign = if (i == 5) != (j == 5) { -1 } else { 1 };
        let mut c = Coefficient::from_int(sign);
        if i == 3 {
            c = c.mul(&Coefficient::w());
        }
        NCPoly::monomial(c.clone(), &[(xi, xj), (eta, ej)]).add(&NCPoly::monomial(c.mul(&q).neg(), &[(xi, ej), (eta, xj)]))
    } else {
        let sign = if i == 5 { -1 } else { 1 };
        let c = Coefficient::from_int(sign).mul(&Coefficient::w());
        NCPoly::monomial(c.mul(&Coefficient::q_pow(-1)).neg(), &[(xi, 1), (eta, 4)])
            .add(&NCPoly::monomial(c.mul(&q), &[(xi, 4), (eta, 1)]))
    }
}

/// Generator enumeration inside the degree-lexicographic order.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GeneratorOrder {
    /// `s_11 < s_12 < ... < s_44`.
    RowMajor,
    /// `s_11 < s_21 < ... < s_44`.
    ColumnMajor,
}

impl GeneratorOrder {
    fn rank(self, x: u8) -> usize {
        match self {
            GeneratorOrder::RowMajor => x as usize,
            GeneratorOrder::ColumnMajor => {
                let (i, j) = letter_indices(x);
                4 * (j - 1) + (i - 1)
            }
        }
    }

    fn unrank(self, r: usize) -> u8 {
        match self {
            GeneratorOrder::RowMajor => r as u8,
            GeneratorOrder::ColumnMajor => letter(r % 4 + 1, r / 4 + 1),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            GeneratorOrder::RowMajor => "row-major",
            GeneratorOrder::ColumnMajor => "column-major",
        }
    }
}

fn degree_offset(d: usize) -> usize {
    (0..d).map(|k| GENERATORS.pow(k as u32)).sum()
}

/// The relations of `A_q(C_2)`: all RTT components and both C relations,
/// each as `lhs - rhs`.
pub fn c2_relations(sc: &StructureConstants) -> Vec<NCPoly> {
    relations(sc, |i, j| NCPoly::monomial(Coefficient::one(), &[(i, j)]))
}

/// RTT components `(i,j,k,l)` in lexicographic order, then the C relations
/// `(i,m)` of each kind, with `t_ij` replaced by `image(i, j)`.
fn labelled_relations(sc: &StructureConstants, image: impl Fn(usize, usize) -> NCPoly) -> Vec<(RelationLabel, NCPoly)> {
    let n = sc.dim();
    let mut out = Vec::new();
    let images: Vec<Vec<NCPoly>> = (1..=n).map(|i| (1..=n).map(|j| image(i, j)).collect()).collect();
    let t = |i: usize, j: usize| &images[i - 1][j - 1];
    for i in 1..=n {
        for j in 1..=n {
            for k in 1..=n {
                for l in 1..=n {
                    let mut p = NCPoly::zero();
                    for (m, pp, v) in sc.r.row(i, j) {
                        p = p.add(&t(*m, k).mul(t(*pp, l)).scale(v));
                    }
                    for (a, b, v) in sc.r.column(k, l) {
                        p = p.sub(&t(j, *b).mul(t(i, *a)).scale(v));
                    }
                    out.push((RelationLabel::Rtt(i, j, k, l), p));
                }
            }
        }
    }
    let c = sc.c_entries();
    for i in 1..=n {
        for m in 1..=n {
            let delta = if i == m { NCPoly::constant(Coefficient::one()) } else { NCPoly::zero() };
            let mut p1 = NCPoly::zero();
            for (j, k, c1) in &c {
                for (l, mm, c2) in &c {
                    if *mm == m {
                        p1 = p1.add(&t(i, *j).mul(t(*l, *k)).scale(&c1.mul(c2)));
                    }
                }
            }
            out.push((RelationLabel::C1(i, m), p1.sub(&delta)));
            let mut p2 = NCPoly::zero();
            for (ii, j, c1) in &c {
                if *ii != i {
                    continue;
                }
                for (k, l, c2) in &c {
                    p2 = p2.add(&t(*k, *j).mul(t(*l, m)).scale(&c1.mul(c2)));
                }
            }
            out.push((RelationLabel::C2(i, m), p2.sub(&delta)));
        }
    }
    out
}

fn relations(sc: &StructureConstants, image: impl Fn(usize, usize) -> NCPoly) -> Vec<NCPoly> {
    labelled_relations(sc, image).into_iter().map(|(_, p)| p).filter(|p| !p.is_zero()).collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum RelationLabel {
    Rtt(usize, usize, usize, usize),
    C1(usize, usize),
    C2(usize, usize),
}

impl fmt::Display for RelationLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RelationLabel::Rtt(i, j, k, l) => write!(f, "{i},{j},{k},{l}"),
            RelationLabel::C1(i, m) => write!(f, "C1:{i},{m}"),
            RelationLabel::C2(i, m) => write!(f, "C2:{i},{m}"),
        }
    }
}

type BlockSlot = Arc<OnceLock<Arc<Echelon<'static, Symbolic>>>>;

/// Normal forms modulo the span of all `u g v` with `g` a relation and
/// `deg(u g v) <= max_degree`, computed per weight block by Gaussian
/// elimination on leading words.
pub struct RewriteSystem {
    pub order: GeneratorOrder,
    pub max_degree: usize,
    relations: Vec<NCPoly>,
    multiples: HashMap<Weight, Vec<(Word, usize, Word)>>,
    blocks: Mutex<HashMap<Weight, BlockSlot>>,
}

fn all_words(len: usize) -> Vec<Word> {
    let mut out = vec![Vec::new()];
    for _ in 0..len {
        out = out.into_iter().flat_map(|w| (0..GENERATORS as u8).map(move |x| [w.clone(), vec![x]].concat())).collect();
    }
    out
}

impl RewriteSystem {
    pub fn new(relations: Vec<NCPoly>, max_degree: usize, order: GeneratorOrder) -> Result<Self> {
        if max_degree > MAX_SUPPORTED_DEGREE {
            return Err(Error::DegreeBound { degree: max_degree, bound: MAX_SUPPORTED_DEGREE });
        }
        let words: Vec<Vec<Word>> = (0..=max_degree).map(all_words).collect();
        let mut multiples: HashMap<Weight, Vec<(Word, usize, Word)>> = HashMap::new();
        for (k, rel) in relations.iter().enumerate() {
            let parts = rel.by_weight();
            if parts.len() != 1 {
                return Err(Error::Gate { gate: "rewrite".into(), detail: format!("relation {k} is not weight homogeneous") });
            }
            let wr = *parts.keys().next().unwrap();
            let d = rel.degree();
            if d > max_degree {
                continue;
            }
            for du in 0..=max_degree - d {
                for dv in 0..=max_degree - d - du {
                    for u in &words[du] {
                        let wu = word_weight(u);
                        for v in &words[dv] {
                            let wv = word_weight(v);
                            let total = [0, 1, 2, 3].map(|t| wu[t] + wr[t] + wv[t]);
                            multiples.entry(total).or_default().push((u.clone(), k, v.clone()));
                        }
                    }
                }
            }
        }
        Ok(RewriteSystem { order, max_degree, relations, multiples, blocks: Mutex::new(HashMap::new()) })
    }

    /// The system for the `A_q(C_2)` relations.
    pub fn for_c2(sc: &StructureConstants, max_degree: usize, order: GeneratorOrder) -> Result<Self> {
        if sc.family != Family::C2 {
            return Err(Error::Gate { gate: "rewrite".into(), detail: format!("expects C2, got {}", sc.family) });
        }
        Self::new(c2_relations(sc), max_degree, order)
    }

    pub fn relations(&self) -> &[NCPoly] {
        &self.relations
    }

    fn column(&self, w: &[u8]) -> usize {
        let mut v = 0;
        for x in w {
            v = v * GENERATORS + self.order.rank(*x);
        }
        degree_offset(w.len()) + v
    }

    fn word(&self, mut c: usize) -> Word {
        let mut d = 0;
        while c >= degree_offset(d + 1) {
            d += 1;
        }
        c -= degree_offset(d);
        let mut w = vec![0; d];
        for k in (0..d).rev() {
            w[k] = self.order.unrank(c % GENERATORS);
            c /= GENERATORS;
        }
        w
    }

    fn columns(&self) -> usize {
        degree_offset(self.max_degree + 1)
    }

    fn to_row(&self, p: &NCPoly) -> SparseRow<Coefficient> {
        let mut row: SparseRow<Coefficient> = p.terms.iter().map(|(w, c)| (self.column(w), c.clone())).collect();
        row.sort_by_key(|e| e.0);
        row
    }

    fn block(&self, weight: Weight) -> Arc<Echelon<'static, Symbolic>> {
        let slot = {
            let mut blocks = self.blocks.lock().expect("block lock");
            blocks.entry(weight).or_default().clone()
        };
        slot.get_or_init(|| {
            let mut ech = Echelon::new(&SYMBOLIC, self.columns(), PivotRule::Leading);
            if let Some(ms) = self.multiples.get(&weight) {
                for (u, k, v) in ms {
                    ech.insert(self.to_row(&self.relations[*k].sandwich(u, v)));
                }
            }
            Arc::new(ech)
        })
        .clone()
    }

    /// Number of weight blocks eliminated so far.
    pub fn blocks_built(&self) -> usize {
        self.blocks.lock().expect("block lock").values().filter(|s| s.get().is_some()).count()
    }

    /// Normal form of `p`.
    pub fn reduce(&self, p: &NCPoly) -> Result<NCPoly> {
        if p.degree() > self.max_degree {
            return Err(Error::DegreeBound { degree: p.degree(), bound: self.max_degree });
        }
        let mut out = NCPoly::zero();
        for (wt, part) in p.by_weight() {
            let row = self.block(wt).reduce(self.to_row(&part));
            for (c, v) in row {
                out.terms.insert(self.word(c), v);
            }
        }
        Ok(out)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelationOutcome {
    pub label: RelationLabel,
    pub image_terms: usize,
    pub parity: Option<u8>,
    pub residual: NCPoly,
}

impl RelationOutcome {
    pub fn is_zero(&self) -> bool {
        self.parity.is_some() && self.residual.is_zero()
    }

    pub fn trace_line(&self) -> String {
        format!(
            "B2-REL {} -> reduced_terms={} result={}",
            self.label,
            self.residual.len(),
            if self.is_zero() { "ZERO" } else { "NONZERO" }
        )
    }
}

#[derive(Clone, Debug)]
pub struct EmbeddingReport {
    pub order: GeneratorOrder,
    pub sqrt_r_branch: &'static str,
    pub outcomes: Vec<RelationOutcome>,
    pub max_image_terms: usize,
}

impl EmbeddingReport {
    pub fn passed(&self) -> bool {
        self.outcomes.iter().all(|o| o.is_zero())
    }

    pub fn nonempty(&self) -> usize {
        self.outcomes.iter().filter(|o| o.image_terms > 0).count()
    }

    pub fn line(&self) -> String {
        let mut s = format!(
            "CHECK embedding vectors={} window=deg{} mode=symbolic result={}",
            self.outcomes.len(),
            4,
            if self.passed() { "PASS" } else { "FAIL" }
        );
        if let Some(o) = self.outcomes.iter().find(|o| !o.is_zero()) {
            s.push_str(&format!(" witness={}:{}", o.label, o.residual));
        }
        s
    }

    pub fn trace(&self) -> Vec<String> {
        self.outcomes.iter().map(|o| o.trace_line()).collect()
    }
}

/// Images under the embedding of every `A_q(B_2)` relation, labelled.
pub fn b2_relation_images(b2: &StructureConstants) -> Vec<(RelationLabel, NCPoly)> {
    labelled_relations(b2, iota)
}

/// Reduces the image of every `A_q(B_2)` relation modulo `rs`. A relation
/// image is first checked to be even or odd in `w`; odd images are divided
/// by `w`, so reduction runs over `Q(q)`.
pub fn verify_embedding(b2: &StructureConstants, rs: &RewriteSystem) -> Result<EmbeddingReport> {
    if b2.family != Family::B(2) {
        return Err(Error::Gate { gate: "embedding".into(), detail: format!("expects B2, got {}", b2.family) });
    }
    let images = b2_relation_images(b2);
    let w_inv = Coefficient::w().div(&Coefficient::r()).expect("r is nonzero");
    let outcomes: Vec<Result<RelationOutcome>> = images
        .par_iter()
        .map(|(label, p)| {
            let parity = p.w_parity();
            let rational = match parity {
                Some(1) => p.scale(&w_inv),
                _ => p.clone(),
            };
            let residual = if parity.is_some() { rs.reduce(&rational)? } else { rational };
            Ok(RelationOutcome { label: *label, image_terms: p.len(), parity, residual })
        })
        .collect();
    let outcomes = outcomes.into_iter().collect::<Result<Vec<_>>>()?;
    let max_image_terms = outcomes.iter().map(|o| o.image_terms).max().unwrap_or(0);
    Ok(EmbeddingReport { order: rs.order, sqrt_r_branch: "+w", outcomes, max_image_terms })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn printed_images() {
        let q = Coefficient::q();
        let expect = NCPoly::monomial(Coefficient::one(), &[(2, 2), (3, 3)])
            .sub(&NCPoly::monomial(q.clone(), &[(2, 1), (3, 4)]))
            .add(&NCPoly::monomial(q.clone(), &[(2, 4), (3, 1)]))
            .sub(&NCPoly::monomial(Coefficient::q_pow(2), &[(2, 3), (3, 2)]));
        assert_eq!(iota(3, 3), expect);
        let w = Coefficient::w();
        let expect = NCPoly::monomial(w.mul(&Coefficient::q_pow(-1)).neg(), &[(1, 1), (2, 4)])
            .add(&NCPoly::monomial(w.mul(&q), &[(1, 4), (2, 1)]));
        assert_eq!(iota(1, 3), expect);
        let expect = NCPoly::monomial(Coefficient::one(), &[(1, 1), (2, 2)]).sub(&NCPoly::monomial(q, &[(1, 2), (2, 1)]));
        assert_eq!(iota(1, 1), expect);
    }

    #[test]
    fn sign_rule() {
        let p = iota(5, 1);
        assert!(p.terms().all(|(_, c)| c.is_rational()));
        assert_eq!(p.terms().next().unwrap().1, &Coefficient::from_int(-1));
        assert_eq!(iota(5, 5).terms().next().unwrap().1, &Coefficient::one());
    }

    #[test]
    fn word_columns_round_trip() {
        for order in [GeneratorOrder::RowMajor, GeneratorOrder::ColumnMajor] {
            let rs = RewriteSystem::new(Vec::new(), 4, order).unwrap();
            for w in [vec![], vec![3], vec![15, 0, 7], vec![1, 2, 3, 4]] {
                assert_eq!(rs.word(rs.column(&w)), w);
            }
            assert!(rs.column(&[15]) < rs.column(&[0, 0]));
        }
    }
}
