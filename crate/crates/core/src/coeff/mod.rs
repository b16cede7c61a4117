//! Exact coefficients: `Q(q)` extended by `w` with `w^2 = 1 + q^2`.
//!
//! [`Coefficient`] is the symbolic field element used everywhere in the
//! engine. [`EvalPoint`] specializes `q` to a rational number, giving the
//! quadratic number field `Q(sqrt(1 + q0^2))`; [`CoeffRing`] abstracts over
//! both so the solver and the contraction engine run in either mode.

mod eval;
mod grammar;
pub mod poly;
pub mod ratfunc;

use std::fmt;

use num_bigint::BigInt;

pub use eval::{EvalPoint, EvalValue, Evaluated};
pub use grammar::ParseCoefficientError;
pub use poly::Poly;
pub use ratfunc::RatFunc;

/// `a + b*w` with `a, b` in `Q(q)` and `w^2 = 1 + q^2`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Coefficient {
    a: RatFunc,
    b: RatFunc,
}

/// `r = 1 + q^2`.
fn r_poly() -> Poly {
    Poly::from_i64s(vec![1, 0, 1])
}

impl Coefficient {
    pub fn new(a: RatFunc, b: RatFunc) -> Self {
        Coefficient { a, b }
    }

    pub fn zero() -> Self {
        Coefficient { a: RatFunc::zero(), b: RatFunc::zero() }
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    pub fn from_int(c: i64) -> Self {
        Coefficient { a: RatFunc::from_int(c), b: RatFunc::zero() }
    }

    pub fn from_ratfunc(a: RatFunc) -> Self {
        Coefficient { a, b: RatFunc::zero() }
    }

    pub fn from_poly(p: Poly) -> Self {
        Self::from_ratfunc(RatFunc::from_poly(p))
    }

    /// `q`.
    pub fn q() -> Self {
        Self::q_pow(1)
    }

    /// `q^e` for any integer `e`.
    pub fn q_pow(e: i64) -> Self {
        Self::from_ratfunc(RatFunc::q_power(1, e))
    }

    /// `c * q^e`.
    pub fn monomial(c: i64, e: i64) -> Self {
        Self::from_ratfunc(RatFunc::q_power(c, e))
    }

    /// `r = 1 + q^2`.
    pub fn r() -> Self {
        Self::from_poly(r_poly())
    }

    /// `w`, the formal square root of `1 + q^2`.
    pub fn w() -> Self {
        Coefficient { a: RatFunc::zero(), b: RatFunc::one() }
    }

    /// Rational part.
    pub fn rational_part(&self) -> &RatFunc {
        &self.a
    }

    /// Coefficient of `w`.
    pub fn w_part(&self) -> &RatFunc {
        &self.b
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.a.is_one() && self.b.is_zero()
    }

    /// Number of stored terms; the pivot heuristic prefers small values.
    pub fn term_count(&self) -> usize {
        let a = if self.a.is_zero() { 0 } else { self.a.term_count() };
        let b = if self.b.is_zero() { 0 } else { self.b.term_count() };
        a + b
    }

    pub fn neg(&self) -> Self {
        Coefficient { a: self.a.neg(), b: self.b.neg() }
    }

    pub fn add(&self, o: &Self) -> Self {
        Coefficient { a: self.a.add(&o.a), b: self.b.add(&o.b) }
    }

    pub fn sub(&self, o: &Self) -> Self {
        Coefficient { a: self.a.sub(&o.a), b: self.b.sub(&o.b) }
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.b.is_zero() && o.b.is_zero() {
            return Self::from_ratfunc(self.a.mul(&o.a));
        }
        let r = RatFunc::from_poly(r_poly());
        let a = self.a.mul(&o.a).add(&self.b.mul(&o.b).mul(&r));
        let b = self.a.mul(&o.b).add(&self.b.mul(&o.a));
        Coefficient { a, b }
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(&self) -> Option<Self> {
        if self.b.is_zero() {
            return Some(Self::from_ratfunc(self.a.inv()?));
        }
        // (a - b w) / (a^2 - b^2 r)
        let r = RatFunc::from_poly(r_poly());
        let norm = self.a.mul(&self.a).sub(&self.b.mul(&self.b).mul(&r));
        let ninv = norm.inv()?;
        Some(Coefficient { a: self.a.mul(&ninv), b: self.b.neg().mul(&ninv) })
    }

    pub fn div(&self, o: &Self) -> Option<Self> {
        Some(self.mul(&o.inv()?))
    }

    pub fn pow(&self, e: i64) -> Option<Self> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let mut acc = Self::one();
        for _ in 0..e.unsigned_abs() {
            acc = acc.mul(&base);
        }
        Some(acc)
    }

    pub fn scale_int(&self, c: i64) -> Self {
        let c = BigInt::from(c);
        Coefficient { a: self.a.scale_int(&c), b: self.b.scale_int(&c) }
    }

    /// True iff the value is a polynomial in `q^2` (no `w`, no denominator,
    /// only even powers of `q`).
    pub fn is_polynomial_in_q_squared(&self) -> bool {
        self.b.is_zero() && self.a.is_polynomial() && self.a.numer().is_even()
    }

    /// True iff the value is a polynomial in `q` without `w`.
    pub fn is_polynomial(&self) -> bool {
        self.b.is_zero() && self.a.is_polynomial()
    }

    /// True iff the value lies in `Q(q)` (no `w` component).
    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    /// Replace `q` by `q^k` (`k >= 1`); `w` must be absent.
    pub fn compose_power(&self, k: usize) -> Option<Self> {
        if !self.b.is_zero() {
            return None;
        }
        Some(Self::from_ratfunc(self.a.compose_power(k)))
    }
}

impl Default for Coefficient {
    fn default() -> Self {
        Self::zero()
    }
}

impl fmt::Debug for Coefficient {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// A commutative field in which the engine computes: symbolic
/// [`Coefficient`]s, or their images at an [`EvalPoint`].
pub trait CoeffRing: Send + Sync {
    type Elem: Clone + PartialEq + fmt::Debug + Send + Sync;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn is_zero(&self, x: &Self::Elem) -> bool;
    fn add(&self, x: &Self::Elem, y: &Self::Elem) -> Self::Elem;
    fn sub(&self, x: &Self::Elem, y: &Self::Elem) -> Self::Elem;
    fn mul(&self, x: &Self::Elem, y: &Self::Elem) -> Self::Elem;
    fn neg(&self, x: &Self::Elem) -> Self::Elem;
    fn inv(&self, x: &Self::Elem) -> Option<Self::Elem>;
    /// `q^e`.
    fn q_pow(&self, e: i64) -> Self::Elem;
    /// Image of a symbolic coefficient; `None` if a denominator vanishes.
    fn embed(&self, c: &Coefficient) -> Option<Self::Elem>;
    /// Cost estimate used for pivot selection.
    fn complexity(&self, x: &Self::Elem) -> usize;
    /// Short label for reports.
    fn mode_label(&self) -> String;

    fn add_assign(&self, x: &mut Self::Elem, y: &Self::Elem) {
        *x = self.add(x, y);
    }
}

/// The symbolic field `Q(q)(w)`.
#[derive(Clone, Copy, Debug, Default)]
pub struct Symbolic;

impl CoeffRing for Symbolic {
    type Elem = Coefficient;

    fn zero(&self) -> Coefficient {
        Coefficient::zero()
    }
    fn one(&self) -> Coefficient {
        Coefficient::one()
    }
    fn is_zero(&self, x: &Coefficient) -> bool {
        x.is_zero()
    }
    fn add(&self, x: &Coefficient, y: &Coefficient) -> Coefficient {
        x.add(y)
    }
    fn sub(&self, x: &Coefficient, y: &Coefficient) -> Coefficient {
        x.sub(y)
    }
    fn mul(&self, x: &Coefficient, y: &Coefficient) -> Coefficient {
        x.mul(y)
    }
    fn neg(&self, x: &Coefficient) -> Coefficient {
        x.neg()
    }
    fn inv(&self, x: &Coefficient) -> Option<Coefficient> {
        x.inv()
    }
    fn q_pow(&self, e: i64) -> Coefficient {
        Coefficient::q_pow(e)
    }
    fn embed(&self, c: &Coefficient) -> Option<Coefficient> {
        Some(c.clone())
    }
    fn complexity(&self, x: &Coefficient) -> usize {
        x.term_count()
    }
    fn mode_label(&self) -> String {
        "symbolic".to_string()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn w_squared_is_r() {
        assert_eq!(Coefficient::w().mul(&Coefficient::w()), Coefficient::r());
    }

    #[test]
    fn inverse_of_r() {
        let r = Coefficient::r();
        assert_eq!(r.inv().unwrap().mul(&r), Coefficient::one());
    }

    #[test]
    fn quotient_reduces_to_polynomial() {
        // (1 - q^4) / (1 - q^2) = 1 + q^2, checked against long division
        let num = Coefficient::from_poly(Poly::from_i64s(vec![1, 0, 0, 0, -1]));
        let den = Coefficient::from_poly(Poly::from_i64s(vec![1, 0, -1]));
        let quotient = num.div(&den).unwrap();
        let by_division = Poly::from_i64s(vec![1, 0, 0, 0, -1])
            .div_exact(&Poly::from_i64s(vec![1, 0, -1]))
            .unwrap();
        assert_eq!(quotient, Coefficient::from_poly(by_division));
        assert_eq!(quotient, Coefficient::r());
    }

    #[test]
    fn inverse_with_w_component() {
        let x = Coefficient::one().add(&Coefficient::w().mul(&Coefficient::q()));
        assert_eq!(x.mul(&x.inv().unwrap()), Coefficient::one());
        assert!(Coefficient::zero().inv().is_none());
    }

    #[test]
    fn polynomial_in_q_squared() {
        let x: Coefficient = "1 - 1*q^4 + 1*q^10".parse().unwrap();
        assert!(x.is_polynomial_in_q_squared());
        assert!(!Coefficient::q_pow(3).is_polynomial_in_q_squared());
        let y = Coefficient::one().div(&"1 - 1*q^2".parse().unwrap()).unwrap();
        assert!(!y.is_polynomial_in_q_squared());
        assert!(!Coefficient::w().is_polynomial_in_q_squared());
    }
}
