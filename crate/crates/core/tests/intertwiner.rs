use refl3d_core::coeff::{Coefficient, Poly};
use refl3d_core::fock::MultiIndex;
use refl3d_core::intertwiner::{
    closed_form_s, parse_dump, solve_j, solve_s, undress_j, undress_s, uniqueness_report, vacuum_entry, write_block,
    write_header, Block, BlockKey, TensorKind,
};
use refl3d_core::reps::ParameterSet;

fn poly(c: &[i64]) -> Coefficient {
    Coefficient::from_poly(Poly::from_i64s(c.to_vec()))
}

fn q(e: i64) -> Coefficient {
    Coefficient::q_pow(e)
}

fn one_minus(e: usize) -> Coefficient {
    let mut v = vec![0; e + 1];
    v[0] = 1;
    v[e] = -1;
    poly(&v)
}

fn arr3(m: &MultiIndex) -> [u32; 3] {
    let v = m.to_vec();
    [v[0], v[1], v[2]]
}

fn arr4(m: &MultiIndex) -> [u32; 4] {
    let v = m.to_vec();
    [v[0], v[1], v[2], v[3]]
}

#[test]
fn s_matches_closed_form_small() {
    let t = solve_s(&ParameterSet::canonical(), 3).unwrap();
    for b in t.solve_up_to(3).unwrap() {
        for o in &b.states {
            for x in &b.states {
                let ([a, bb, c], [i, j, k]) = (arr3(o), arr3(x));
                assert_eq!(b.entry(o, x).unwrap(), &closed_form_s(a, bb, c, i, j, k), "{o:?} {x:?}");
            }
        }
    }
}

#[test]
fn undressed_generic_s_matches_closed_form() {
    for (sigma, rho, eps) in [(1, 1, -1), (-1, -1, 1), (-1, 1, -1)] {
        let p = ParameterSet::generic(sigma, rho, eps);
        let t = solve_s(&p, 3).unwrap();
        for b in t.solve_up_to(3).unwrap() {
            for (o, x, v) in b.nonzero_entries() {
                let ([a, bb, c], [i, j, k]) = (arr3(&o), arr3(&x));
                let bare = undress_s(&p, &v, [a, bb, c], [i, j, k]).unwrap();
                assert_eq!(bare, closed_form_s(a, bb, c, i, j, k), "{} {o:?} {x:?}", p.describe());
            }
        }
    }
}

#[test]
fn j_example_entries() {
    let t = solve_j(&ParameterSet::canonical(), 0).unwrap();
    let out = MultiIndex::new(&[1, 1, 0, 2]);
    let cases: Vec<([u32; 4], Coefficient)> = vec![
        ([3, 0, 0, 3], q(8).mul(&one_minus(6)).mul(&one_minus(12))),
        ([2, 0, 1, 2], q(4).mul(&one_minus(4)).mul(&poly(&[1, 0, -1, 0, 1, 0, -1, 0, 0, 0, -1]))),
        ([1, 0, 2, 1], q(6).mul(&one_minus(6)).neg()),
        ([0, 0, 3, 0], q(2).mul(&one_minus(6)).neg()),
        ([1, 1, 0, 2], q(2).mul(&poly(&[1, 0, 0, 0, 0, 0, 0, 0, -1, 0, 0, 0, 0, 0, 1]))),
        ([0, 1, 1, 1], poly(&[1, 0, 0, 0, -1, 0, 0, 0, 0, 0, 1])),
    ];
    for (inp, expect) in cases {
        assert_eq!(t.entry(out, MultiIndex::new(&inp)).unwrap(), expect, "{inp:?}");
    }
}

#[test]
fn j_is_parameter_free_after_undressing() {
    let canon = solve_j(&ParameterSet::canonical(), 3).unwrap();
    for (sigma, rho, eps) in [(1, 1, -1), (-1, -1, -1), (-1, 1, 1)] {
        let p = ParameterSet::generic(sigma, rho, eps);
        let t = solve_j(&p, 3).unwrap();
        for b in t.solve_up_to(3).unwrap() {
            let reference = canon.block(b.key).unwrap();
            for o in &b.states {
                for x in &b.states {
                    let bare = undress_j(&p, b.entry(o, x).unwrap(), arr4(o), arr4(x)).unwrap();
                    assert_eq!(&bare, reference.entry(o, x).unwrap(), "{} {o:?} {x:?}", p.describe());
                }
            }
        }
    }
}

#[test]
fn j_entries_respect_selection_rule() {
    let t = solve_j(&ParameterSet::canonical(), 3).unwrap();
    for out in MultiIndex::window(4, 2) {
        for inp in MultiIndex::window(4, 2) {
            let v = t.entry(out, inp).unwrap();
            let (a, x) = (arr4(&out), arr4(&inp));
            let same = (a[0] + 2 * a[1] + a[2], a[1] + a[2] + a[3]) == (x[0] + 2 * x[1] + x[2], x[1] + x[2] + x[3]);
            assert!(same || v.is_zero(), "{out:?} {inp:?}");
        }
    }
}

#[test]
fn j_entries_are_q_polynomials_with_fixed_parity() {
    let t = solve_j(&ParameterSet::canonical(), 4).unwrap();
    for b in t.solve_up_to(4).unwrap() {
        for (o, x, v) in b.nonzero_entries() {
            let (a, i) = (arr4(&o), arr4(&x));
            let twist = q(i64::from(a[0] * a[2] + i[0] * i[2]));
            assert!(v.is_polynomial(), "{o:?} {x:?}");
            assert!(v.mul(&twist).is_polynomial_in_q_squared(), "{o:?} {x:?}");
        }
    }
}

#[test]
fn every_block_is_unique_and_normalized() {
    let p = ParameterSet::canonical();
    let s = solve_s(&p, 4).unwrap();
    let j = solve_j(&p, 3).unwrap();
    for b in s.solve_up_to(4).unwrap().iter().chain(j.solve_up_to(3).unwrap().iter()) {
        assert_eq!(uniqueness_report(b), 1, "{}", b.key);
    }
    assert!(vacuum_entry(&s).unwrap().is_one());
    assert!(vacuum_entry(&j).unwrap().is_one());
}

#[test]
fn dump_round_trip_is_exact() {
    let p = ParameterSet::canonical();
    for (kind, t) in [(TensorKind::S, solve_s(&p, 3).unwrap()), (TensorKind::J, solve_j(&p, 2).unwrap())] {
        let blocks = t.solve_up_to(if kind == TensorKind::S { 3 } else { 2 }).unwrap();
        let mut text = write_header(kind, &p.describe());
        for b in &blocks {
            text.push_str(&write_block(b));
        }
        let parsed = parse_dump(&text).unwrap();
        assert_eq!(parsed.kind, kind);
        assert_eq!(parsed.params, p.describe());
        assert_eq!(parsed.blocks.len(), blocks.len());
        let mut again = write_header(kind, &parsed.params);
        for (d, b) in parsed.blocks.iter().zip(&blocks) {
            let rebuilt = Block::from_dump(kind, d).unwrap();
            assert_eq!(rebuilt.key, b.key);
            assert_eq!(rebuilt.nonzero_entries(), b.nonzero_entries());
            again.push_str(&write_block(&rebuilt));
        }
        assert_eq!(again, text);
    }
}

#[test]
fn malformed_dumps_are_rejected() {
    let good = "format=1\n# tensor: S\n# params: canonical\n# block: P=0,Q=0\n# uniqueness: 1\n0,0,0|0,0,0 -> 1\n";
    assert!(parse_dump(good).is_ok());
    assert!(parse_dump(&good.replace("format=1", "format=2")).is_err());
    assert!(parse_dump(&good.replace("0,0,0|0,0,0", "0,0|0,0,0")).is_err());
    assert!(parse_dump(&good.replace("-> 1", "-> 1+")).is_err());
    let off_block = good.replace("0,0,0|0,0,0", "1,0,0|0,0,0");
    let parsed = parse_dump(&off_block);
    assert!(parsed.is_err() || Block::from_dump(TensorKind::S, &parsed.unwrap().blocks[0]).is_err());
}

#[test]
fn blocks_are_weight_spaces() {
    for kind in [TensorKind::S, TensorKind::J] {
        for p in 0..4 {
            for qq in 0..4 {
                let key = BlockKey::new(p, qq);
                for m in kind.block_states(key) {
                    assert_eq!(kind.key(m), key);
                }
            }
        }
    }
}
