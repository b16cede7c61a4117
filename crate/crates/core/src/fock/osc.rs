use std::collections::BTreeMap;
use std::fmt;

use crate::coeff::Coefficient;
use crate::error::{Error, Result};

/// Deformation parameter of an oscillator copy: `q` or `q^2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Base {
    Q,
    Q2,
}

impl Base {
    /// `e` with base `= q^e`.
    pub fn exponent(self) -> i64 {
        match self {
            Base::Q => 1,
            Base::Q2 => 2,
        }
    }

    /// `base^n` as a coefficient.
    pub fn pow(self, n: i64) -> Coefficient {
        Coefficient::q_pow(self.exponent() * n)
    }
}

impl fmt::Display for Base {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Base::Q => write!(f, "q"),
            Base::Q2 => write!(f, "q^2"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Letter {
    One,
    Plus,
    Minus,
    K,
}

/// `(a+)^plus k^k (a-)^minus` with `min(plus, minus) = 0`.
///
/// Since `a+ a- = 1 - k^2`, a product with both powers positive is never
/// in normal form.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial {
    pub plus: u32,
    pub k: u32,
    pub minus: u32,
}

impl Monomial {
    pub const ONE: Monomial = Monomial { plus: 0, k: 0, minus: 0 };

    pub fn new(plus: u32, k: u32, minus: u32) -> Self {
        assert!(plus == 0 || minus == 0, "not a normal-ordered monomial");
        Monomial { plus, k, minus }
    }

    /// Change of occupation number.
    pub fn shift(&self) -> i64 {
        self.plus as i64 - self.minus as i64
    }

    /// Action on `|m>`: `None` if it vanishes.
    pub fn act(&self, base: Base, m: u32) -> Option<(u32, Coefficient)> {
        if self.minus > m {
            return None;
        }
        let mut c = Coefficient::one();
        for j in (m - self.minus + 1)..=m {
            c = c.mul(&Coefficient::one().sub(&base.pow(2 * j as i64)));
        }
        let rest = m - self.minus;
        c = c.mul(&base.pow(self.k as i64 * rest as i64));
        Some((rest + self.plus, c))
    }
}

/// A normal-ordered element of `Osc_q` or `Osc_{q^2}`.
#[derive(Clone, PartialEq, Eq)]
pub struct OscExpr {
    base: Base,
    terms: BTreeMap<Monomial, Coefficient>,
}

impl OscExpr {
    pub fn zero(base: Base) -> Self {
        OscExpr { base, terms: BTreeMap::new() }
    }

    pub fn one(base: Base) -> Self {
        Self::term(base, Coefficient::one(), Monomial::ONE)
    }

    pub fn term(base: Base, c: Coefficient, m: Monomial) -> Self {
        let mut e = Self::zero(base);
        e.add_term(m, &c);
        e
    }

    pub fn letter(base: Base, l: Letter) -> Self {
        Self::one(base).mul_letter_right(l)
    }

    pub fn base(&self) -> Base {
        self.base
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Coefficient)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Monomial) -> Coefficient {
        self.terms.get(m).cloned().unwrap_or_default()
    }

    fn add_term(&mut self, m: Monomial, c: &Coefficient) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(m).or_default();
        *entry = entry.add(c);
        if entry.is_zero() {
            self.terms.remove(&m);
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        assert_eq!(self.base, o.base, "mixed oscillator bases");
        let mut out = self.clone();
        for (m, c) in &o.terms {
            out.add_term(*m, c);
        }
        out
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.scale(&Coefficient::from_int(-1)))
    }

    pub fn scale(&self, c: &Coefficient) -> Self {
        let mut out = Self::zero(self.base);
        for (m, x) in &self.terms {
            out.add_term(*m, &x.mul(c));
        }
        out
    }

    /// `self * l`.
    pub fn mul_letter_right(&self, l: Letter) -> Self {
        let b = self.base;
        let mut out = Self::zero(b);
        for (&Monomial { plus, k, minus }, c) in &self.terms {
            match l {
                Letter::One => out.add_term(Monomial { plus, k, minus }, c),
                Letter::K => {
                    // k^n (a-)^m k = b^m k^{n+1} (a-)^m
                    out.add_term(Monomial { plus, k: k + 1, minus }, &c.mul(&b.pow(minus as i64)));
                }
                Letter::Plus if minus == 0 => {
                    // (a+)^p k^n a+ = b^n (a+)^{p+1} k^n
                    out.add_term(Monomial { plus: plus + 1, k, minus: 0 }, &c.mul(&b.pow(k as i64)));
                }
                Letter::Plus => {
                    // k^n (a-)^m a+ = k^n (a-)^{m-1} (1 - b^2 k^2)
                    out.add_term(Monomial { plus: 0, k, minus: minus - 1 }, c);
                    let f = b.pow(2 * minus as i64);
                    out.add_term(Monomial { plus: 0, k: k + 2, minus: minus - 1 }, &c.mul(&f).neg());
                }
                Letter::Minus if plus == 0 => out.add_term(Monomial { plus: 0, k, minus: minus + 1 }, c),
                Letter::Minus => {
                    // (a+)^p k^n a- = b^{-n} (a+)^{p-1} k^n (1 - k^2)
                    let f = c.mul(&b.pow(-(k as i64)));
                    out.add_term(Monomial { plus: plus - 1, k, minus: 0 }, &f);
                    out.add_term(Monomial { plus: plus - 1, k: k + 2, minus: 0 }, &f.neg());
                }
            }
        }
        out
    }

    /// `l * self`.
    pub fn mul_letter_left(&self, l: Letter) -> Self {
        let b = self.base;
        let mut out = Self::zero(b);
        for (&Monomial { plus, k, minus }, c) in &self.terms {
            match l {
                Letter::One => out.add_term(Monomial { plus, k, minus }, c),
                Letter::K => {
                    out.add_term(Monomial { plus, k: k + 1, minus }, &c.mul(&b.pow(plus as i64)));
                }
                Letter::Plus if minus == 0 => out.add_term(Monomial { plus: plus + 1, k, minus: 0 }, c),
                Letter::Plus => {
                    // a+ k^n (a-)^m = b^{-n} k^n (1 - k^2) (a-)^{m-1}
                    let f = c.mul(&b.pow(-(k as i64)));
                    out.add_term(Monomial { plus: 0, k, minus: minus - 1 }, &f);
                    out.add_term(Monomial { plus: 0, k: k + 2, minus: minus - 1 }, &f.neg());
                }
                Letter::Minus if plus == 0 => {
                    out.add_term(Monomial { plus: 0, k, minus: minus + 1 }, &c.mul(&b.pow(k as i64)));
                }
                Letter::Minus => {
                    // a- (a+)^p k^n = (1 - b^2 k^2) (a+)^{p-1} k^n
                    out.add_term(Monomial { plus: plus - 1, k, minus: 0 }, c);
                    let f = b.pow(2 * plus as i64);
                    out.add_term(Monomial { plus: plus - 1, k: k + 2, minus: 0 }, &c.mul(&f).neg());
                }
            }
        }
        out
    }

    pub fn mul(&self, o: &Self) -> Self {
        assert_eq!(self.base, o.base, "mixed oscillator bases");
        let mut out = Self::zero(self.base);
        for (m, c) in &o.terms {
            let mut part = self.scale(c);
            for l in monomial_letters(m) {
                part = part.mul_letter_right(l);
            }
            out = out.add(&part);
        }
        out
    }

    /// Common occupation shift of all monomials, if there is one.
    pub fn shift(&self) -> Option<i64> {
        let mut it = self.terms.keys().map(Monomial::shift);
        let first = it.next()?;
        it.all(|s| s == first).then_some(first)
    }

    /// Applies `self` to `v`. Results above `cutoff` are reported, not dropped.
    pub fn apply(&self, v: &FockVector, cutoff: u32) -> Result<FockVector> {
        assert_eq!(self.base, v.base, "mixed oscillator bases");
        let mut out = FockVector::zero(self.base);
        for (&m, x) in &v.entries {
            for (mono, c) in &self.terms {
                if let Some((m2, f)) = mono.act(self.base, m) {
                    if m2 > cutoff {
                        return Err(Error::CutoffOverflow { slot: 0, occupation: m2, cutoff });
                    }
                    out.add_entry(m2, &x.mul(c).mul(&f));
                }
            }
        }
        Ok(out)
    }
}

fn monomial_letters(m: &Monomial) -> Vec<Letter> {
    let mut w = vec![Letter::Plus; m.plus as usize];
    w.extend(std::iter::repeat_n(Letter::K, m.k as usize));
    w.extend(std::iter::repeat_n(Letter::Minus, m.minus as usize));
    w
}

/// Normal form of a word, multiplying letters from the left end.
pub fn normal_order(word: &[Letter], base: Base) -> OscExpr {
    word.iter().fold(OscExpr::one(base), |e, &l| e.mul_letter_right(l))
}

/// Normal form of a word, multiplying letters from the right end.
pub fn normal_order_from_right(word: &[Letter], base: Base) -> OscExpr {
    word.iter().rev().fold(OscExpr::one(base), |e, &l| e.mul_letter_left(l))
}

impl fmt::Display for OscExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let (p, m) = match self.base {
            Base::Q => ("a+", "a-"),
            Base::Q2 => ("A+", "A-"),
        };
        let kk = if self.base == Base::Q { "k" } else { "K" };
        for (i, (mono, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({c})")?;
            for (sym, n) in [(p, mono.plus), (kk, mono.k), (m, mono.minus)] {
                match n {
                    0 => {}
                    1 => write!(f, " {sym}")?,
                    _ => write!(f, " {sym}^{n}")?,
                }
            }
        }
        Ok(())
    }
}

impl fmt::Debug for OscExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "OscExpr[{}]({self})", self.base)
    }
}

/// Sparse vector in a Fock space.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct FockVector {
    base: Base,
    entries: BTreeMap<u32, Coefficient>,
}

impl FockVector {
    pub fn zero(base: Base) -> Self {
        FockVector { base, entries: BTreeMap::new() }
    }

    pub fn basis(base: Base, m: u32) -> Self {
        let mut v = Self::zero(base);
        v.add_entry(m, &Coefficient::one());
        v
    }

    pub fn base(&self) -> Base {
        self.base
    }

    pub fn entries(&self) -> impl Iterator<Item = (u32, &Coefficient)> {
        self.entries.iter().map(|(m, c)| (*m, c))
    }

    pub fn get(&self, m: u32) -> Coefficient {
        self.entries.get(&m).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn add_entry(&mut self, m: u32, c: &Coefficient) {
        if c.is_zero() {
            return;
        }
        let e = self.entries.entry(m).or_default();
        *e = e.add(c);
        if e.is_zero() {
            self.entries.remove(&m);
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in o.entries() {
            out.add_entry(m, c);
        }
        out
    }

    pub fn scale(&self, c: &Coefficient) -> Self {
        let mut out = Self::zero(self.base);
        for (m, x) in self.entries() {
            out.add_entry(m, &x.mul(c));
        }
        out
    }

    /// Applies one letter directly through the Fock action.
    pub fn apply_letter(&self, l: Letter) -> Self {
        let mut out = Self::zero(self.base);
        for (m, c) in self.entries() {
            match l {
                Letter::One => out.add_entry(m, c),
                Letter::K => out.add_entry(m, &c.mul(&self.base.pow(m as i64))),
                Letter::Plus => out.add_entry(m + 1, c),
                Letter::Minus if m > 0 => {
                    let f = Coefficient::one().sub(&self.base.pow(2 * m as i64));
                    out.add_entry(m - 1, &c.mul(&f));
                }
                Letter::Minus => {}
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use Letter::*;

    #[test]
    fn defining_relations() {
        let b = Base::Q;
        let lhs = normal_order(&[Minus, Plus], b);
        let rhs = OscExpr::one(b).sub(&OscExpr::term(b, Coefficient::q_pow(2), Monomial::new(0, 2, 0)));
        assert_eq!(lhs, rhs);
        let ka = normal_order(&[K, Plus], b);
        assert_eq!(ka, OscExpr::term(b, Coefficient::q(), Monomial::new(1, 1, 0)));
        let pm = normal_order(&[Plus, Minus], b);
        let rhs = OscExpr::one(b).sub(&OscExpr::term(b, Coefficient::one(), Monomial::new(0, 2, 0)));
        assert_eq!(pm, rhs);
        // k a- = q^-1 a- k, so a- k = q k a-
        let mk = normal_order(&[Minus, K], b);
        assert_eq!(mk, OscExpr::term(b, Coefficient::q(), Monomial::new(0, 1, 1)));
    }

    #[test]
    fn fock_examples() {
        let b = Base::Q;
        let v = OscExpr::letter(b, Plus).apply(&FockVector::basis(b, 2), 10).unwrap();
        assert_eq!(v, FockVector::basis(b, 3));
        let v = OscExpr::letter(b, Minus).apply(&FockVector::basis(b, 0), 10).unwrap();
        assert!(v.is_zero());
        let e = normal_order(&[Minus, Plus], b).sub(&normal_order(&[K, K], b));
        let v = e.apply(&FockVector::basis(b, 0), 10).unwrap();
        assert_eq!(v, FockVector::basis(b, 0).scale(&Coefficient::q_pow(2).neg()));
    }

    #[test]
    fn overflow_is_reported() {
        let b = Base::Q2;
        let err = OscExpr::letter(b, Plus).apply(&FockVector::basis(b, 4), 4).unwrap_err();
        assert_eq!(err, Error::CutoffOverflow { slot: 0, occupation: 5, cutoff: 4 });
    }
}
