//! Prefactors relating the solved `S`, `J` to the parameter-free tensors.

use crate::coeff::Coefficient;
use crate::error::{Error, Result};
use crate::reps::ParameterSet;

fn power(x: &Coefficient, e: i64) -> Result<Coefficient> {
    x.pow(e).ok_or_else(|| Error::EvaluationPole(format!("({x})^{e}")))
}

fn sign_power(s: i64, e: i64) -> Coefficient {
    Coefficient::from_int(if s < 0 && e.rem_euclid(2) == 1 { -1 } else { 1 })
}

/// `S^{abc}_{ijk} / S'^{abc}_{ijk}` where `S'` is the parameter-free tensor.
pub fn s_prefactor(p: &ParameterSet, out: [u32; 3], inp: [u32; 3]) -> Result<Coefficient> {
    let [a, b, _] = out.map(i64::from);
    let [_, j, k] = inp.map(i64::from);
    let base = p.alpha1.mul(&p.beta1).mul(&Coefficient::monomial(-1, -2));
    Ok(power(&base, j)?
        .mul(&power(&p.mu1, a - j + k)?)
        .mul(&power(&p.mu2, b - a - k)?)
        .mul(&power(&p.sigma1, b + j)?))
}

/// `J^{abcd}_{ijkl} / J'^{abcd}_{ijkl}` where `J'` is the parameter-free tensor.
pub fn j_prefactor(p: &ParameterSet, out: [u32; 4], inp: [u32; 4]) -> Result<Coefficient> {
    let s = p.signs()?;
    let [_, b, c, _] = out.map(i64::from);
    let [i, j, k, l] = inp.map(i64::from);
    let sm = Coefficient::from_int(s.sigma).mul(&p.mu2);
    Ok(sign_power(s.epsilon, b + i + l)
        .mul(&sign_power(s.rho, b + c + i + j))
        .mul(&power(&sm, c - k)?)
        .mul(&power(&p.mu3, b - j)?))
}

pub fn dress_s(p: &ParameterSet, entry: &Coefficient, out: [u32; 3], inp: [u32; 3]) -> Result<Coefficient> {
    Ok(entry.mul(&s_prefactor(p, out, inp)?))
}

pub fn undress_s(p: &ParameterSet, entry: &Coefficient, out: [u32; 3], inp: [u32; 3]) -> Result<Coefficient> {
    let f = s_prefactor(p, out, inp)?;
    entry.div(&f).ok_or_else(|| Error::EvaluationPole(f.to_string()))
}

pub fn dress_j(p: &ParameterSet, entry: &Coefficient, out: [u32; 4], inp: [u32; 4]) -> Result<Coefficient> {
    Ok(entry.mul(&j_prefactor(p, out, inp)?))
}

pub fn undress_j(p: &ParameterSet, entry: &Coefficient, out: [u32; 4], inp: [u32; 4]) -> Result<Coefficient> {
    let f = j_prefactor(p, out, inp)?;
    entry.div(&f).ok_or_else(|| Error::EvaluationPole(f.to_string()))
}
