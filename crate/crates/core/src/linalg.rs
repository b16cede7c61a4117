//! Incremental sparse row echelon forms over a [`CoeffRing`].

use std::collections::BTreeMap;

use crate::coeff::CoeffRing;

/// Sparse row: `(column, value)` pairs sorted by column, no zeros.
pub type SparseRow<E> = Vec<(usize, E)>;

/// How a new pivot column is picked among the admissible nonzero columns.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PivotRule {
    /// Cheapest entry by [`CoeffRing::complexity`], ties to the lower column.
    MinComplexity,
    /// The highest admissible column (leading term for a monomial order).
    Leading,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Insert {
    Pivot(usize),
    Dependent,
    /// Zero on the unknown columns but not on the right-hand side.
    Inconsistent,
}

/// Row echelon form with pivots restricted to columns `< split`.
///
/// With `PivotRule::MinComplexity` the form is kept fully reduced; with
/// `PivotRule::Leading` pivot rows only contain lower columns, which is
/// enough for unique remainders.
pub struct Echelon<'r, R: CoeffRing> {
    ring: &'r R,
    split: usize,
    rule: PivotRule,
    pivots: BTreeMap<usize, SparseRow<R::Elem>>,
}

impl<'r, R: CoeffRing> Echelon<'r, R> {
    pub fn new(ring: &'r R, split: usize, rule: PivotRule) -> Self {
        Echelon { ring, split, rule, pivots: BTreeMap::new() }
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn pivot_columns(&self) -> impl Iterator<Item = &usize> {
        self.pivots.keys()
    }

    pub fn pivot_row(&self, col: usize) -> Option<&SparseRow<R::Elem>> {
        self.pivots.get(&col)
    }

    /// `a - c * b`.
    fn axpy(&self, a: &SparseRow<R::Elem>, c: &R::Elem, b: &SparseRow<R::Elem>) -> SparseRow<R::Elem> {
        let ring = self.ring;
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() || j < b.len() {
            let ca = a.get(i).map(|x| x.0);
            let cb = b.get(j).map(|x| x.0);
            match (ca, cb) {
                (Some(x), Some(y)) if x == y => {
                    let v = ring.sub(&a[i].1, &ring.mul(c, &b[j].1));
                    if !ring.is_zero(&v) {
                        out.push((x, v));
                    }
                    i += 1;
                    j += 1;
                }
                (Some(x), Some(y)) if x < y => {
                    out.push(a[i].clone());
                    i += 1;
                }
                (Some(_), None) => {
                    out.push(a[i].clone());
                    i += 1;
                }
                _ => {
                    let v = ring.neg(&ring.mul(c, &b[j].1));
                    out.push((b[j].0, v));
                    j += 1;
                }
            }
        }
        out
    }

    /// Remainder of `row` modulo the current pivots.
    pub fn reduce(&self, mut row: SparseRow<R::Elem>) -> SparseRow<R::Elem> {
        match self.rule {
            PivotRule::MinComplexity => {
                let hits: Vec<(usize, R::Elem)> =
                    row.iter().filter(|(c, _)| self.pivots.contains_key(c)).cloned().collect();
                for (c, v) in hits {
                    row = self.axpy(&row, &v, &self.pivots[&c]);
                }
                row
            }
            PivotRule::Leading => loop {
                let hit = row.iter().rev().find(|(c, _)| self.pivots.contains_key(c)).cloned();
                match hit {
                    Some((c, v)) => row = self.axpy(&row, &v, &self.pivots[&c]),
                    None => return row,
                }
            },
        }
    }

    /// Reduces and, if independent, adds `row` as a new pivot row.
    pub fn insert(&mut self, row: SparseRow<R::Elem>) -> Insert {
        let ring = self.ring;
        let row = self.reduce(row);
        let admissible = row.iter().filter(|(c, _)| *c < self.split);
        let chosen = match self.rule {
            PivotRule::MinComplexity => admissible.min_by_key(|(c, v)| (ring.complexity(v), *c)).cloned(),
            PivotRule::Leading => admissible.last().cloned(),
        };
        let Some((p, v)) = chosen else {
            return if row.is_empty() { Insert::Dependent } else { Insert::Inconsistent };
        };
        let inv = ring.inv(&v).expect("nonzero pivot");
        let row: SparseRow<R::Elem> = row.into_iter().map(|(c, x)| (c, ring.mul(&x, &inv))).collect();
        if self.rule == PivotRule::MinComplexity {
            let cols: Vec<usize> = self.pivots.keys().copied().collect();
            for c in cols {
                let other = &self.pivots[&c];
                if let Some((_, f)) = other.iter().find(|(k, _)| *k == p) {
                    let f = f.clone();
                    let updated = self.axpy(other, &f, &row);
                    self.pivots.insert(c, updated);
                }
            }
        }
        self.pivots.insert(p, row);
        Insert::Pivot(p)
    }

    /// With full column rank on the unknowns: the right-hand side part of
    /// the pivot row of each unknown, re-indexed from `split`.
    pub fn solution(&self) -> Option<Vec<SparseRow<R::Elem>>> {
        if self.rank() != self.split {
            return None;
        }
        Some(
            (0..self.split)
                .map(|c| {
                    self.pivots[&c].iter().filter(|(k, _)| *k >= self.split).map(|(k, v)| (k - self.split, v.clone())).collect()
                })
                .collect(),
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::{Coefficient, Symbolic};

    fn c(n: i64) -> Coefficient {
        Coefficient::from_int(n)
    }

    #[test]
    fn solves_small_system() {
        // x + y = 3, x - y = 1 -> x = 2, y = 1
        let mut e = Echelon::new(&Symbolic, 2, PivotRule::MinComplexity);
        assert_eq!(e.insert(vec![(0, c(1)), (1, c(1)), (2, c(3))]), Insert::Pivot(0));
        assert!(matches!(e.insert(vec![(0, c(1)), (1, c(-1)), (2, c(1))]), Insert::Pivot(1)));
        assert_eq!(e.insert(vec![(0, c(2)), (2, c(4))]), Insert::Dependent);
        assert_eq!(e.insert(vec![(0, c(2)), (2, c(5))]), Insert::Inconsistent);
        let s = e.solution().unwrap();
        assert_eq!(s[0], vec![(0, c(2))]);
        assert_eq!(s[1], vec![(0, c(1))]);
    }

    #[test]
    fn leading_remainders_are_unique() {
        let q = Coefficient::q();
        let rows = vec![vec![(0, c(1)), (2, q.clone())], vec![(1, c(1)), (2, c(1))], vec![(0, c(1)), (1, c(1))]];
        let mut a = Echelon::new(&Symbolic, 3, PivotRule::Leading);
        let mut b = Echelon::new(&Symbolic, 3, PivotRule::Leading);
        for r in &rows {
            a.insert(r.clone());
        }
        for r in rows.iter().rev() {
            b.insert(r.clone());
        }
        let probe = vec![(0, c(5)), (1, q.clone()), (2, c(1))];
        assert_eq!(a.reduce(probe.clone()), b.reduce(probe));
    }
}
