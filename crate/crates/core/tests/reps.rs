use refl3d_core::coeff::Coefficient;
use refl3d_core::fock::FockVector;
use refl3d_core::reps::{build_rep, check_13_transposition, rep_word, ParameterSet};

fn printed_pattern(i: usize) -> Vec<(usize, usize)> {
    let diag = |v: &[usize]| v.iter().map(|&d| (d, d)).collect::<Vec<_>>();
    let mut p = match i {
        1 => [(1, 2), (2, 1), (6, 7), (7, 6)].to_vec(),
        2 => [(2, 3), (3, 2), (5, 6), (6, 5)].to_vec(),
        _ => [(3, 4), (3, 5), (4, 3), (4, 5), (5, 3), (5, 4)].to_vec(),
    };
    p.extend(diag(&[1, 2, 3, 4, 5, 6, 7]));
    p.sort();
    p
}

#[test]
fn zero_pattern_matches_printed_matrices() {
    for p in [ParameterSet::canonical(), ParameterSet::generic(1, -1, -1), ParameterSet::generic(-1, 1, 1)] {
        for i in 1..=3 {
            let rep = build_rep(i, &p).unwrap();
            let mut found = Vec::new();
            for a in 1..=7 {
                for b in 1..=7 {
                    if rep.is_nonzero(a, b) {
                        found.push((a, b));
                    }
                }
            }
            assert_eq!(found, printed_pattern(i), "pi_{i} {}", p.describe());
        }
    }
}

#[test]
fn one_letter_word_is_the_representation() {
    let p = ParameterSet::generic(1, 1, -1);
    let cutoff = 6;
    for i in 1..=3 {
        let rep = build_rep(i, &p).unwrap();
        for a in 1..=7 {
            for b in 1..=7 {
                let op = rep_word(&[i], a, b, &p, cutoff).unwrap();
                let mut cols: Vec<_> = op.stored_columns().map(|(x, c)| (x.get(0), c.clone())).collect();
                cols.sort_by_key(|(m, _)| *m);
                for m in 0..=cutoff {
                    let direct = rep.entry(a, b).apply(&FockVector::basis(rep.base, m), 64).unwrap();
                    let from_word: Vec<(u32, Coefficient)> = cols
                        .iter()
                        .filter(|(x, _)| *x == m)
                        .flat_map(|(_, c)| c.iter().map(|(y, v)| (y.get(0), v.clone())))
                        .collect();
                    let mut expect: Vec<(u32, Coefficient)> = direct.entries().map(|(k, v)| (k, v.clone())).collect();
                    expect.sort_by_key(|(k, _)| *k);
                    assert_eq!(from_word, expect, "pi_{i}(t_{a}{b}) on |{m}>");
                }
            }
        }
    }
}

#[test]
fn pi13_is_equivalent_to_pi31() {
    let r = check_13_transposition(&ParameterSet::canonical(), 4).unwrap();
    assert!(r.passed(), "{:?}", r.witness);
    assert_eq!(r.checked, 49 * 25);
}

#[test]
fn constraints_are_enforced() {
    let mut p = ParameterSet::canonical();
    p.beta1 = Coefficient::q_pow(2);
    assert!(p.check_all().is_err());
    let mut p = ParameterSet::canonical();
    p.kappa31 = Coefficient::from_int(2);
    p.kappa32 = Coefficient::from_int(2);
    assert!(p.check_for_s().is_ok());
    assert!(p.check_all().is_err());
}

#[test]
fn unequal_kappa3_is_rejected() {
    let mut p = ParameterSet::canonical();
    p.kappa31 = Coefficient::from_int(-1);
    assert!(p.check_for_s().is_err());
}
