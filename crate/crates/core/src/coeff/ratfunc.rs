//! Reduced rational functions `num / den` in `q` over the integers.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use super::poly::Poly;

/// A rational function in canonical form: `gcd(num, den) = 1` in `Z[q]`
/// (integer content included) and the leading coefficient of `den` is
/// positive. Zero is `0 / 1`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct RatFunc {
    num: Poly,
    den: Poly,
}

impl RatFunc {
    pub fn zero() -> Self {
        RatFunc { num: Poly::zero(), den: Poly::one() }
    }

    pub fn one() -> Self {
        RatFunc { num: Poly::one(), den: Poly::one() }
    }

    pub fn from_poly(p: Poly) -> Self {
        RatFunc { num: p, den: Poly::one() }
    }

    pub fn from_int(c: i64) -> Self {
        Self::from_poly(Poly::constant(c))
    }

    /// `c * q^e` for any integer exponent.
    pub fn q_power(c: i64, e: i64) -> Self {
        if e >= 0 {
            Self::from_poly(Poly::monomial(c, e as usize))
        } else {
            Self::new(Poly::constant(c), Poly::monomial(1, e.unsigned_abs() as usize))
        }
    }

    /// Reduces `num / den` to canonical form. Panics if `den` is zero.
    pub fn new(num: Poly, den: Poly) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        if num.is_zero() {
            return Self::zero();
        }
        if den.is_one() {
            return RatFunc { num, den };
        }
        let g = Poly::gcd(&num, &den);
        let (mut num, mut den) = if g.is_one() {
            (num, den)
        } else {
            (num.div_exact(&g).expect("gcd divides"), den.div_exact(&g).expect("gcd divides"))
        };
        if den.leading_is_negative() {
            num = num.neg();
            den = den.neg();
        }
        RatFunc { num, den }
    }

    pub fn numer(&self) -> &Poly {
        &self.num
    }

    pub fn denom(&self) -> &Poly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    pub fn term_count(&self) -> usize {
        self.num.term_count() + self.den.term_count() - 1
    }

    pub fn neg(&self) -> Self {
        RatFunc { num: self.num.neg(), den: self.den.clone() }
    }

    pub fn add(&self, o: &Self) -> Self {
        self.add_signed(o, false)
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add_signed(o, true)
    }

    fn add_signed(&self, o: &Self, negate: bool) -> Self {
        if o.is_zero() {
            return self.clone();
        }
        if self.is_zero() {
            return if negate { o.neg() } else { o.clone() };
        }
        let combine = |a: &Poly, b: &Poly| if negate { a.sub(b) } else { a.add(b) };
        if self.den.is_one() && o.den.is_one() {
            return Self::from_poly(combine(&self.num, &o.num));
        }
        if self.den == o.den {
            return Self::new(combine(&self.num, &o.num), self.den.clone());
        }
        // a/b + c/d with one side polynomial stays reduced
        if self.den.is_one() {
            let num = combine(&self.num.mul(&o.den), &o.num);
            return RatFunc { num, den: o.den.clone() }.fix_zero();
        }
        if o.den.is_one() {
            let num = combine(&self.num, &o.num.mul(&self.den));
            return RatFunc { num, den: self.den.clone() }.fix_zero();
        }
        let g = Poly::gcd(&self.den, &o.den);
        let bd = self.den.div_exact(&g).unwrap();
        let dd = o.den.div_exact(&g).unwrap();
        let num = combine(&self.num.mul(&dd), &o.num.mul(&bd));
        Self::new(num, self.den.mul(&dd))
    }

    fn fix_zero(self) -> Self {
        if self.num.is_zero() {
            Self::zero()
        } else {
            self
        }
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Self::zero();
        }
        if self.den.is_one() && o.den.is_one() {
            return Self::from_poly(self.num.mul(&o.num));
        }
        let g1 = Poly::gcd(&self.num, &o.den);
        let g2 = Poly::gcd(&o.num, &self.den);
        let a = self.num.div_exact(&g1).unwrap();
        let d = o.den.div_exact(&g1).unwrap();
        let c = o.num.div_exact(&g2).unwrap();
        let b = self.den.div_exact(&g2).unwrap();
        let mut num = a.mul(&c);
        let mut den = b.mul(&d);
        if den.leading_is_negative() {
            num = num.neg();
            den = den.neg();
        }
        RatFunc { num, den }
    }

    pub fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let (mut num, mut den) = (self.den.clone(), self.num.clone());
        if den.leading_is_negative() {
            num = num.neg();
            den = den.neg();
        }
        Some(RatFunc { num, den })
    }

    pub fn div(&self, o: &Self) -> Option<Self> {
        Some(self.mul(&o.inv()?))
    }

    pub fn scale_int(&self, c: &BigInt) -> Self {
        self.mul(&Self::from_poly(Poly::from_bigs(vec![c.clone()])))
    }

    /// Value at `q = x`; `None` when the denominator vanishes there.
    pub fn eval(&self, x: &BigRational) -> Option<BigRational> {
        let d = self.den.eval(x);
        if d.is_zero() {
            return None;
        }
        Some(self.num.eval(x) / d)
    }

    /// If the denominator is `c * q^k` with `c = 1`, returns `k`; used for
    /// Laurent-polynomial display.
    pub fn monomial_denominator(&self) -> Option<usize> {
        let v = self.den.valuation();
        if self.den.shift_down(v).is_one() {
            Some(v)
        } else {
            None
        }
    }

    /// `f(q^k)`.
    pub fn compose_power(&self, k: usize) -> Self {
        RatFunc::new(self.num.compose_power(k), self.den.compose_power(k))
    }
}

impl Default for RatFunc {
    fn default() -> Self {
        Self::zero()
    }
}

impl From<Poly> for RatFunc {
    fn from(p: Poly) -> Self {
        RatFunc::from_poly(p)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reduction_and_sign() {
        let r = RatFunc::new(Poly::from_i64s(vec![1, 0, 0, 0, -1]), Poly::from_i64s(vec![1, 0, -1]));
        assert_eq!(r, RatFunc::from_poly(Poly::from_i64s(vec![1, 0, 1])));
        let s = RatFunc::new(Poly::constant(2), Poly::from_i64s(vec![0, -4]));
        assert_eq!(s.numer(), &Poly::constant(-1));
        assert_eq!(s.denom(), &Poly::from_i64s(vec![0, 2]));
    }

    #[test]
    fn add_with_distinct_denominators() {
        // 1/(1-q) + 1/(1+q) = 2/(1-q^2)
        let a = RatFunc::new(Poly::one(), Poly::from_i64s(vec![1, -1]));
        let b = RatFunc::new(Poly::one(), Poly::from_i64s(vec![1, 1]));
        let s = a.add(&b);
        assert_eq!(s, RatFunc::new(Poly::constant(2), Poly::from_i64s(vec![1, 0, -1])));
        assert_eq!(s.sub(&a).sub(&b), RatFunc::zero());
    }
}
