use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use refl3d_core::coeff::Coefficient;
use refl3d_core::embed::{b2_relation_images, c2_relations, iota, letter, GeneratorOrder, NCPoly, RewriteSystem};
use refl3d_core::frt::{Family, StructureConstants};
use refl3d_core::Error;

fn c2() -> StructureConstants {
    StructureConstants::accepted(Family::C2, 4).unwrap()
}

fn random_poly(rng: &mut ChaCha8Rng, max_degree: usize, terms: usize) -> NCPoly {
    let mut p = NCPoly::zero();
    for _ in 0..terms {
        let d = rng.gen_range(0..=max_degree);
        let w: Vec<u8> = (0..d).map(|_| rng.gen_range(0..16)).collect();
        let c = Coefficient::monomial(rng.gen_range(-3..=3), rng.gen_range(-2..=2));
        p.add_term(w, &c);
    }
    p
}

#[test]
fn relations_reduce_to_zero() {
    let rs = RewriteSystem::for_c2(&c2(), 3, GeneratorOrder::RowMajor).unwrap();
    for rel in rs.relations().to_vec() {
        assert!(rs.reduce(&rel).unwrap().is_zero());
        for x in [0, 5, 15] {
            assert!(rs.reduce(&rel.sandwich(&[x], &[])).unwrap().is_zero());
            assert!(rs.reduce(&rel.sandwich(&[], &[x])).unwrap().is_zero());
        }
    }
}

#[test]
fn reduction_is_idempotent_and_ideal_invariant() {
    let rs = RewriteSystem::for_c2(&c2(), 3, GeneratorOrder::RowMajor).unwrap();
    let rels = rs.relations().to_vec();
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..40 {
        let p = random_poly(&mut rng, 3, 6);
        let nf = rs.reduce(&p).unwrap();
        assert_eq!(rs.reduce(&nf).unwrap(), nf);
        let rel = &rels[rng.gen_range(0..rels.len())];
        let x = rng.gen_range(0..16u8);
        let shifted = p.add(&rel.sandwich(&[x], &[]).scale(&Coefficient::q_pow(3)));
        assert_eq!(rs.reduce(&shifted).unwrap(), nf);
    }
}

#[test]
fn normal_forms_do_not_depend_on_relation_order() {
    let rels = c2_relations(&c2());
    let mut reversed = rels.clone();
    reversed.reverse();
    let a = RewriteSystem::new(rels, 3, GeneratorOrder::RowMajor).unwrap();
    let b = RewriteSystem::new(reversed, 3, GeneratorOrder::RowMajor).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..30 {
        let p = random_poly(&mut rng, 3, 5);
        assert_eq!(a.reduce(&p).unwrap(), b.reduce(&p).unwrap());
    }
}

#[test]
fn both_orders_agree_on_membership() {
    let a = RewriteSystem::for_c2(&c2(), 3, GeneratorOrder::RowMajor).unwrap();
    let b = RewriteSystem::for_c2(&c2(), 3, GeneratorOrder::ColumnMajor).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for _ in 0..30 {
        let p = random_poly(&mut rng, 3, 5);
        let diff = a.reduce(&p).unwrap().sub(&b.reduce(&p).unwrap());
        assert!(a.reduce(&diff).unwrap().is_zero());
    }
}

#[test]
fn degree_bound_is_enforced() {
    let rs = RewriteSystem::for_c2(&c2(), 2, GeneratorOrder::RowMajor).unwrap();
    let p = NCPoly::monomial(Coefficient::one(), &[(1, 1), (1, 2), (2, 1)]);
    assert!(matches!(rs.reduce(&p), Err(Error::DegreeBound { degree: 3, bound: 2 })));
    assert!(RewriteSystem::for_c2(&c2(), 9, GeneratorOrder::RowMajor).is_err());
    let b2 = StructureConstants::accepted(Family::B(2), 4).unwrap();
    assert!(RewriteSystem::for_c2(&b2, 2, GeneratorOrder::RowMajor).is_err());
}

#[test]
fn images_are_homogeneous_of_degree_two() {
    for i in 1..=5 {
        for j in 1..=5 {
            let p = iota(i, j);
            assert!(p.terms().all(|(w, _)| w.len() == 2), "{i} {j}");
            assert_eq!(p.by_weight().len(), 1);
            assert!(p.w_parity().is_some());
        }
    }
}

#[test]
fn relation_images_have_definite_parity() {
    let b2 = StructureConstants::accepted(Family::B(2), 4).unwrap();
    let images = b2_relation_images(&b2);
    assert_eq!(images.len(), 625 + 50);
    for (label, p) in &images {
        assert!(p.is_zero() || p.degree() == 4, "{label}");
        assert!(p.w_parity().is_some(), "{label}");
    }
}

#[test]
fn letters_are_row_major() {
    assert_eq!(letter(1, 1), 0);
    assert_eq!(letter(2, 3), 6);
    assert_eq!(letter(4, 4), 15);
}
