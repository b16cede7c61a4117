use crate::coeff::{Coefficient, Poly};

/// `(x)_n = prod_{j=1}^n (1 - x^j)` at `x = q^step`.
pub fn pochhammer(n: u32, step: usize) -> Poly {
    (1..=n as usize).fold(Poly::one(), |acc, j| acc.mul(&Poly::one().sub(&Poly::monomial(1, step * j))))
}

/// `[i_1..i_r / j_1..j_s]_{q^step}`; zero if any argument is negative.
pub fn bracket(top: &[i64], bottom: &[i64], step: usize) -> Poly {
    if top.iter().chain(bottom).any(|&x| x < 0) {
        return Poly::zero();
    }
    let num = top.iter().fold(Poly::one(), |acc, &x| acc.mul(&pochhammer(x as u32, step)));
    let den = bottom.iter().fold(Poly::one(), |acc, &x| acc.mul(&pochhammer(x as u32, step)));
    num.div_exact(&den).expect("q-multinomial brackets are polynomials")
}

/// The parameter-free 3D R entry `S^{abc}_{ijk}`.
pub fn closed_form_s(a: u32, b: u32, c: u32, i: u32, j: u32, k: u32) -> Coefficient {
    if a + b != i + j || b + c != j + k {
        return Coefficient::zero();
    }
    let (b, c, i, j, k) = (b as i64, c as i64, i as i64, j as i64, k as i64);
    let mut acc = Coefficient::zero();
    for lambda in 0..=b {
        let mu = b - lambda;
        let br = bracket(&[i, j, c + mu], &[mu, lambda, i - mu, j - lambda, c], 4);
        if br.is_zero() {
            continue;
        }
        let e = 2 * i * (c - j) + 2 * (k + 1) * lambda + 2 * mu * (mu - k);
        let sign = if lambda % 2 == 0 { 1 } else { -1 };
        acc = acc.add(&Coefficient::from_poly(br).mul(&Coefficient::monomial(sign, e)));
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_entries() {
        assert!(closed_form_s(0, 0, 0, 0, 0, 0).is_one());
        assert!(closed_form_s(1, 0, 0, 0, 0, 0).is_zero());
        assert_eq!(closed_form_s(0, 1, 1, 0, 1, 1), Coefficient::monomial(-1, 4));
        assert!(closed_form_s(1, 0, 2, 0, 1, 1).is_one());
    }

    #[test]
    fn bracket_vanishes_on_negative_arguments() {
        assert!(bracket(&[2], &[3, -1], 4).is_zero());
        assert_eq!(bracket(&[2], &[1, 1], 1), Poly::from_i64s(vec![1, 1]));
    }
}
