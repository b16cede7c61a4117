//! Exact specialization `q -> q0` for rational `q0`.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Pow, Zero};

use super::{CoeffRing, Coefficient};

/// A rational specialization point together with a choice of sign for
/// `w = +-sqrt(1 + q0^2)`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct EvalPoint {
    q0: BigRational,
    negative_branch: bool,
}

impl EvalPoint {
    /// Returns `None` if `1 + q0^2 = 0` (never for rationals) or `q0 = 0`.
    pub fn new(q0: BigRational) -> Option<Self> {
        if q0.is_zero() {
            return None;
        }
        Some(EvalPoint { q0, negative_branch: false })
    }

    pub fn from_ratio(n: i64, d: i64) -> Self {
        Self::new(BigRational::new(BigInt::from(n), BigInt::from(d))).expect("nonzero point")
    }

    pub fn with_negative_branch(mut self) -> Self {
        self.negative_branch = true;
        self
    }

    pub fn q0(&self) -> &BigRational {
        &self.q0
    }

    pub fn is_negative_branch(&self) -> bool {
        self.negative_branch
    }

    /// `1 + q0^2`, the value of `w^2`.
    pub fn w_squared(&self) -> BigRational {
        BigRational::one() + &self.q0 * &self.q0
    }

    /// The three default smoke-test points `2/3, 3/5, 5/7`.
    pub fn defaults() -> Vec<EvalPoint> {
        vec![Self::from_ratio(2, 3), Self::from_ratio(3, 5), Self::from_ratio(5, 7)]
    }

    /// Evaluates `x`; `None` if a denominator of `x` vanishes at `q0`.
    pub fn evaluate(&self, x: &Coefficient) -> Option<EvalValue> {
        let a = x.rational_part().eval(&self.q0)?;
        let mut b = x.w_part().eval(&self.q0)?;
        if self.negative_branch {
            b = -b;
        }
        Some(EvalValue { a, b })
    }
}

impl fmt::Display for EvalPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.q0)?;
        if self.negative_branch {
            write!(f, "(w<0)")?;
        }
        Ok(())
    }
}

impl fmt::Debug for EvalPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "EvalPoint({self})")
    }
}

impl FromStr for EvalPoint {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let q0: BigRational = s.trim().parse().map_err(|e| format!("bad rational {s:?}: {e}"))?;
        EvalPoint::new(q0).ok_or_else(|| format!("evaluation point {s} is not allowed"))
    }
}

/// An element `a + b*sqrt(1 + q0^2)` of the quadratic number field at a point.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct EvalValue {
    pub a: BigRational,
    pub b: BigRational,
}

impl EvalValue {
    pub fn rational(a: BigRational) -> Self {
        EvalValue { a, b: BigRational::zero() }
    }
}

/// Field operations at a fixed [`EvalPoint`].
#[derive(Clone, Debug)]
pub struct Evaluated {
    point: EvalPoint,
    w2: BigRational,
}

impl Evaluated {
    pub fn new(point: EvalPoint) -> Self {
        let w2 = point.w_squared();
        Evaluated { point, w2 }
    }

    pub fn point(&self) -> &EvalPoint {
        &self.point
    }
}

impl CoeffRing for Evaluated {
    type Elem = EvalValue;

    fn zero(&self) -> EvalValue {
        EvalValue::rational(BigRational::zero())
    }

    fn one(&self) -> EvalValue {
        EvalValue::rational(BigRational::one())
    }

    fn is_zero(&self, x: &EvalValue) -> bool {
        x.a.is_zero() && x.b.is_zero()
    }

    fn add(&self, x: &EvalValue, y: &EvalValue) -> EvalValue {
        EvalValue { a: &x.a + &y.a, b: &x.b + &y.b }
    }

    fn sub(&self, x: &EvalValue, y: &EvalValue) -> EvalValue {
        EvalValue { a: &x.a - &y.a, b: &x.b - &y.b }
    }

    fn mul(&self, x: &EvalValue, y: &EvalValue) -> EvalValue {
        if x.b.is_zero() && y.b.is_zero() {
            return EvalValue::rational(&x.a * &y.a);
        }
        EvalValue {
            a: &x.a * &y.a + &x.b * &y.b * &self.w2,
            b: &x.a * &y.b + &x.b * &y.a,
        }
    }

    fn neg(&self, x: &EvalValue) -> EvalValue {
        EvalValue { a: -&x.a, b: -&x.b }
    }

    fn inv(&self, x: &EvalValue) -> Option<EvalValue> {
        if self.is_zero(x) {
            return None;
        }
        if x.b.is_zero() {
            return Some(EvalValue::rational(x.a.recip()));
        }
        // 1 + q0^2 is not a rational square for the points we use, so the
        // norm only vanishes at zero; guard anyway.
        let norm = &x.a * &x.a - &x.b * &x.b * &self.w2;
        if norm.is_zero() {
            return None;
        }
        Some(EvalValue { a: &x.a / &norm, b: -&x.b / &norm })
    }

    fn q_pow(&self, e: i64) -> EvalValue {
        EvalValue::rational(Pow::pow(self.point.q0(), e as i32))
    }

    fn embed(&self, c: &Coefficient) -> Option<EvalValue> {
        self.point.evaluate(c)
    }

    fn complexity(&self, x: &EvalValue) -> usize {
        let size = |r: &BigRational| (r.numer().bits() + r.denom().bits()) as usize;
        size(&x.a) + if x.b.is_zero() { 0 } else { size(&x.b) }
    }

    fn mode_label(&self) -> String {
        format!("eval:q={}", self.point)
    }
}
