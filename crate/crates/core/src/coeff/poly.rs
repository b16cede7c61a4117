//! Dense univariate polynomials in `q` with integer coefficients.
//!
//! Coefficients are kept as machine `i64` words while they fit and are
//! promoted to `BigInt` on overflow. The representation is canonical
//! (trailing zeros trimmed, small form whenever every coefficient fits), so
//! derived equality and hashing are structural.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

#[derive(Clone, PartialEq, Eq, Hash)]
enum Coeffs {
    Small(Vec<i64>),
    Big(Vec<BigInt>),
}

/// Polynomial `c_0 + c_1 q + ... + c_d q^d` over the integers.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Poly {
    coeffs: Coeffs,
}

impl Default for Poly {
    fn default() -> Self {
        Self::zero()
    }
}

fn trim_small(mut v: Vec<i64>) -> Vec<i64> {
    while v.last() == Some(&0) {
        v.pop();
    }
    v
}

fn trim_big(mut v: Vec<BigInt>) -> Vec<BigInt> {
    while v.last().is_some_and(|c| c.is_zero()) {
        v.pop();
    }
    v
}

impl Poly {
    pub fn zero() -> Self {
        Poly { coeffs: Coeffs::Small(Vec::new()) }
    }

    pub fn one() -> Self {
        Self::constant(1)
    }

    pub fn constant(c: i64) -> Self {
        Self::from_i64s(vec![c])
    }

    /// `c * q^e`.
    pub fn monomial(c: i64, e: usize) -> Self {
        let mut v = vec![0; e + 1];
        v[e] = c;
        Self::from_i64s(v)
    }

    pub fn from_i64s(v: Vec<i64>) -> Self {
        Poly { coeffs: Coeffs::Small(trim_small(v)) }
    }

    pub fn from_bigs(v: Vec<BigInt>) -> Self {
        let v = trim_big(v);
        let small: Option<Vec<i64>> = v.iter().map(|c| c.to_i64()).collect();
        match small {
            Some(s) => Poly { coeffs: Coeffs::Small(s) },
            None => Poly { coeffs: Coeffs::Big(v) },
        }
    }

    /// Builds from `(exponent, coefficient)` pairs; repeated exponents add up.
    pub fn from_terms<I: IntoIterator<Item = (usize, BigInt)>>(terms: I) -> Self {
        let mut v: Vec<BigInt> = Vec::new();
        for (e, c) in terms {
            if v.len() <= e {
                v.resize(e + 1, BigInt::zero());
            }
            v[e] += c;
        }
        Self::from_bigs(v)
    }

    fn to_bigs(&self) -> Vec<BigInt> {
        match &self.coeffs {
            Coeffs::Small(v) => v.iter().map(|&c| BigInt::from(c)).collect(),
            Coeffs::Big(v) => v.clone(),
        }
    }

    /// Number of stored coefficient slots (degree + 1, or 0 for the zero polynomial).
    pub fn len_dense(&self) -> usize {
        match &self.coeffs {
            Coeffs::Small(v) => v.len(),
            Coeffs::Big(v) => v.len(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.len_dense() == 0
    }

    pub fn is_one(&self) -> bool {
        matches!(&self.coeffs, Coeffs::Small(v) if v.len() == 1 && v[0] == 1)
    }

    pub fn is_constant(&self) -> bool {
        self.len_dense() <= 1
    }

    pub fn degree(&self) -> Option<usize> {
        self.len_dense().checked_sub(1)
    }

    pub fn coeff(&self, e: usize) -> BigInt {
        match &self.coeffs {
            Coeffs::Small(v) => v.get(e).map_or_else(BigInt::zero, |&c| BigInt::from(c)),
            Coeffs::Big(v) => v.get(e).cloned().unwrap_or_else(BigInt::zero),
        }
    }

    fn coeff_sign(&self, e: usize) -> Ordering {
        match &self.coeffs {
            Coeffs::Small(v) => v.get(e).map_or(Ordering::Equal, |c| c.cmp(&0)),
            Coeffs::Big(v) => v.get(e).map_or(Ordering::Equal, |c| c.sign_cmp()),
        }
    }

    pub fn leading_coeff(&self) -> BigInt {
        self.degree().map_or_else(BigInt::zero, |d| self.coeff(d))
    }

    pub fn leading_is_negative(&self) -> bool {
        self.degree().is_some_and(|d| self.coeff_sign(d) == Ordering::Less)
    }

    /// Number of nonzero terms.
    pub fn term_count(&self) -> usize {
        match &self.coeffs {
            Coeffs::Small(v) => v.iter().filter(|c| **c != 0).count(),
            Coeffs::Big(v) => v.iter().filter(|c| !c.is_zero()).count(),
        }
    }

    /// Nonzero terms as `(exponent, coefficient)`, ascending.
    pub fn terms(&self) -> Vec<(usize, BigInt)> {
        match &self.coeffs {
            Coeffs::Small(v) => v
                .iter()
                .enumerate()
                .filter(|(_, c)| **c != 0)
                .map(|(e, &c)| (e, BigInt::from(c)))
                .collect(),
            Coeffs::Big(v) => v
                .iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(e, c)| (e, c.clone()))
                .collect(),
        }
    }

    /// Largest `k` with `q^k` dividing `self` (0 for the zero polynomial).
    pub fn valuation(&self) -> usize {
        match &self.coeffs {
            Coeffs::Small(v) => v.iter().position(|c| *c != 0).unwrap_or(0),
            Coeffs::Big(v) => v.iter().position(|c| !c.is_zero()).unwrap_or(0),
        }
    }

    /// True iff only even powers of `q` occur.
    pub fn is_even(&self) -> bool {
        match &self.coeffs {
            Coeffs::Small(v) => v.iter().skip(1).step_by(2).all(|c| *c == 0),
            Coeffs::Big(v) => v.iter().skip(1).step_by(2).all(|c| c.is_zero()),
        }
    }

    /// Multiply by `q^k`.
    pub fn shift_up(&self, k: usize) -> Poly {
        if self.is_zero() || k == 0 {
            return self.clone();
        }
        match &self.coeffs {
            Coeffs::Small(v) => {
                let mut out = vec![0; k];
                out.extend_from_slice(v);
                Poly { coeffs: Coeffs::Small(out) }
            }
            Coeffs::Big(v) => {
                let mut out = vec![BigInt::zero(); k];
                out.extend(v.iter().cloned());
                Poly { coeffs: Coeffs::Big(out) }
            }
        }
    }

    /// Divide by `q^k`; the low `k` coefficients must vanish.
    pub fn shift_down(&self, k: usize) -> Poly {
        debug_assert!(k <= self.valuation() || self.is_zero());
        if k == 0 || self.is_zero() {
            return self.clone();
        }
        match &self.coeffs {
            Coeffs::Small(v) => Poly { coeffs: Coeffs::Small(v[k..].to_vec()) },
            Coeffs::Big(v) => Poly { coeffs: Coeffs::Big(v[k..].to_vec()) },
        }
    }

    pub fn neg(&self) -> Poly {
        if let Coeffs::Small(v) = &self.coeffs {
            let out: Option<Vec<i64>> = v.iter().map(|c| c.checked_neg()).collect();
            if let Some(out) = out {
                return Poly { coeffs: Coeffs::Small(out) };
            }
        }
        Poly::from_bigs(self.to_bigs().into_iter().map(|c| -c).collect())
    }

    pub fn add(&self, other: &Poly) -> Poly {
        self.add_signed(other, false)
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        self.add_signed(other, true)
    }

    fn add_signed(&self, other: &Poly, negate: bool) -> Poly {
        if let (Coeffs::Small(a), Coeffs::Small(b)) = (&self.coeffs, &other.coeffs) {
            let n = a.len().max(b.len());
            let mut out = Vec::with_capacity(n);
            let mut ok = true;
            for i in 0..n {
                let x = a.get(i).copied().unwrap_or(0);
                let y = b.get(i).copied().unwrap_or(0);
                let r = if negate { x.checked_sub(y) } else { x.checked_add(y) };
                match r {
                    Some(r) => out.push(r),
                    None => {
                        ok = false;
                        break;
                    }
                }
            }
            if ok {
                return Poly::from_i64s(out);
            }
        }
        let a = self.to_bigs();
        let b = other.to_bigs();
        let n = a.len().max(b.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            let x = a.get(i).cloned().unwrap_or_else(BigInt::zero);
            let y = b.get(i).cloned().unwrap_or_else(BigInt::zero);
            out.push(if negate { x - y } else { x + y });
        }
        Poly::from_bigs(out)
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        if self.is_one() {
            return other.clone();
        }
        if other.is_one() {
            return self.clone();
        }
        if let (Coeffs::Small(a), Coeffs::Small(b)) = (&self.coeffs, &other.coeffs) {
            if let Some(out) = mul_small(a, b) {
                return Poly::from_i64s(out);
            }
        }
        let a = self.to_bigs();
        let b = other.to_bigs();
        let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                out[i + j] += x * y;
            }
        }
        Poly::from_bigs(out)
    }

    pub fn scale(&self, c: &BigInt) -> Poly {
        if c.is_one() {
            return self.clone();
        }
        if let (Coeffs::Small(a), Some(s)) = (&self.coeffs, c.to_i64()) {
            let out: Option<Vec<i64>> = a.iter().map(|x| x.checked_mul(s)).collect();
            if let Some(out) = out {
                return Poly::from_i64s(out);
            }
        }
        Poly::from_bigs(self.to_bigs().into_iter().map(|x| x * c).collect())
    }

    /// Exact division by an integer that divides every coefficient.
    pub fn div_scalar_exact(&self, c: &BigInt) -> Poly {
        if c.is_one() {
            return self.clone();
        }
        if let (Coeffs::Small(a), Some(s)) = (&self.coeffs, c.to_i64()) {
            if s != 0 && s != -1 {
                return Poly::from_i64s(a.iter().map(|x| x / s).collect());
            }
        }
        Poly::from_bigs(self.to_bigs().into_iter().map(|x| x / c).collect())
    }

    /// Nonnegative gcd of the coefficients (0 for the zero polynomial).
    pub fn content(&self) -> BigInt {
        match &self.coeffs {
            Coeffs::Small(v) => {
                let mut g: u64 = 0;
                for &c in v {
                    g = g.gcd(&c.unsigned_abs());
                    if g == 1 {
                        break;
                    }
                }
                BigInt::from(g)
            }
            Coeffs::Big(v) => {
                let mut g = BigInt::zero();
                for c in v {
                    g = g.gcd(c);
                    if g.is_one() {
                        break;
                    }
                }
                g
            }
        }
    }

    /// Primitive part with positive leading coefficient.
    pub fn primitive_part(&self) -> Poly {
        if self.is_zero() {
            return Poly::zero();
        }
        let mut c = self.content();
        if self.leading_is_negative() {
            c = -c;
        }
        self.div_scalar_exact(&c)
    }

    /// Exact quotient `self / d` over the integers, if it exists.
    pub fn div_exact(&self, d: &Poly) -> Option<Poly> {
        if d.is_zero() {
            return None;
        }
        if d.is_one() {
            return Some(self.clone());
        }
        if self.is_zero() {
            return Some(Poly::zero());
        }
        let dd = d.degree().unwrap();
        let nd = self.degree().unwrap();
        if nd < dd {
            return None;
        }
        if dd == 0 {
            let c = d.coeff(0);
            let bigs = self.to_bigs();
            let mut out = Vec::with_capacity(bigs.len());
            for x in bigs {
                let (qt, rm) = x.div_rem(&c);
                if !rm.is_zero() {
                    return None;
                }
                out.push(qt);
            }
            return Some(Poly::from_bigs(out));
        }
        let mut rem = self.to_bigs();
        let dv = d.to_bigs();
        let lc = dv[dd].clone();
        let mut quot = vec![BigInt::zero(); nd - dd + 1];
        for k in (0..=nd - dd).rev() {
            let top = &rem[k + dd];
            if top.is_zero() {
                continue;
            }
            let (qt, rm) = top.div_rem(&lc);
            if !rm.is_zero() {
                return None;
            }
            for (j, y) in dv.iter().enumerate() {
                if !y.is_zero() {
                    rem[k + j] -= &qt * y;
                }
            }
            quot[k] = qt;
        }
        if rem.iter().any(|x| !x.is_zero()) {
            return None;
        }
        Some(Poly::from_bigs(quot))
    }

    /// Greatest common divisor in `Z[q]`, with positive leading coefficient.
    /// `gcd(0, 0) = 0`.
    pub fn gcd(a: &Poly, b: &Poly) -> Poly {
        if a.is_zero() {
            return b.normalize_sign();
        }
        if b.is_zero() {
            return a.normalize_sign();
        }
        let v = a.valuation().min(b.valuation());
        let c = a.content().gcd(&b.content());
        let pa = a.shift_down(a.valuation()).primitive_part();
        let pb = b.shift_down(b.valuation()).primitive_part();
        let g = if pa.is_constant() || pb.is_constant() {
            Poly::one()
        } else if pa == pb {
            pa
        } else {
            let (mut x, mut y) = if pa.degree() >= pb.degree() { (pa, pb) } else { (pb, pa) };
            while !y.is_zero() {
                let r = x.pseudo_rem(&y);
                x = y;
                y = r.primitive_part();
                if y.is_constant() && !y.is_zero() {
                    x = Poly::one();
                    break;
                }
            }
            x.primitive_part()
        };
        g.scale(&c).shift_up(v)
    }

    fn normalize_sign(&self) -> Poly {
        if self.leading_is_negative() {
            self.neg()
        } else {
            self.clone()
        }
    }

    /// Sparse pseudo-remainder of `self` modulo `d` (defined up to an integer factor).
    fn pseudo_rem(&self, d: &Poly) -> Poly {
        let dd = d.degree().expect("pseudo_rem by zero");
        let dv = d.to_bigs();
        let lc = dv[dd].clone();
        let mut r = self.to_bigs();
        r = trim_big(r);
        while r.len() > dd {
            let top = r.len() - 1;
            let t = r[top].clone();
            let shift = top - dd;
            let g = t.gcd(&lc);
            let mul_r = &lc / &g;
            let mul_d = &t / &g;
            for x in r.iter_mut() {
                *x *= &mul_r;
            }
            for (j, y) in dv.iter().enumerate() {
                if !y.is_zero() {
                    r[shift + j] -= &mul_d * y;
                }
            }
            r = trim_big(r);
        }
        Poly::from_bigs(r)
    }

    pub fn eval(&self, x: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for e in (0..self.len_dense()).rev() {
            acc = acc * x + BigRational::from_integer(self.coeff(e));
        }
        acc
    }

    /// `p(q^k)`.
    pub fn compose_power(&self, k: usize) -> Poly {
        Poly::from_terms(self.terms().into_iter().map(|(e, c)| (e * k, c)))
    }
}

fn mul_small(a: &[i64], b: &[i64]) -> Option<Vec<i64>> {
    let mut acc = vec![0i128; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            acc[i + j] = acc[i + j].checked_add(x as i128 * y as i128)?;
        }
    }
    acc.into_iter().map(|c| i64::try_from(c).ok()).collect()
}

trait SignCmp {
    fn sign_cmp(&self) -> Ordering;
}

impl SignCmp for BigInt {
    fn sign_cmp(&self) -> Ordering {
        if self.is_negative() {
            Ordering::Less
        } else if self.is_zero() {
            Ordering::Equal
        } else {
            Ordering::Greater
        }
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly(")?;
        for (i, (e, c)) in self.terms().into_iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "{c}*q^{e}")?;
        }
        write!(f, ")")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(v: &[i64]) -> Poly {
        Poly::from_i64s(v.to_vec())
    }

    #[test]
    fn gcd_of_cyclotomic_products() {
        // (1 - q^4) and (1 - q^2) share 1 - q^2 (up to sign)
        let a = p(&[1, 0, 0, 0, -1]);
        let b = p(&[1, 0, -1]);
        assert_eq!(Poly::gcd(&a, &b), p(&[-1, 0, 1]));
        assert_eq!(a.div_exact(&b), Some(p(&[1, 0, 1])));
    }

    #[test]
    fn gcd_keeps_content_and_q_power() {
        let a = p(&[0, 0, 6, 6]);
        let b = p(&[0, 4, 4]);
        assert_eq!(Poly::gcd(&a, &b), p(&[0, 2, 2]));
    }

    #[test]
    fn overflow_promotes_to_big() {
        let big = p(&[i64::MAX, 1]);
        let sq = big.mul(&big);
        assert_eq!(sq.coeff(0), BigInt::from(i64::MAX) * BigInt::from(i64::MAX));
        let back = sq.div_exact(&big).unwrap();
        assert_eq!(back, big);
        assert!(matches!(back.coeffs, Coeffs::Small(_)));
    }

    #[test]
    fn inexact_division_is_rejected() {
        assert_eq!(p(&[1, 1]).div_exact(&p(&[1, 0, 1])), None);
        assert_eq!(p(&[1, 3]).div_exact(&p(&[2])), None);
    }
}
