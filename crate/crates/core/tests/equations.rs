use refl3d_core::coeff::{CoeffRing, EvalPoint, Evaluated, Symbolic};
use refl3d_core::equations::{
    apply_product, random_vectors, verify_equation, verify_s_symmetries, verify_vectors, EquationSpec, Tensors,
};
use refl3d_core::fock::{MultiIndex, TensorVector};
use refl3d_core::intertwiner::{BlockKey, Tensor, TensorKind};
use refl3d_core::reps::ParameterSet;

fn symbolic(kind: TensorKind) -> Tensor<Symbolic> {
    Tensor::new(kind, Symbolic, ParameterSet::canonical()).unwrap()
}

#[test]
fn tetrahedron_on_unit_window() {
    let s = symbolic(TensorKind::S);
    let r = verify_equation(&EquationSpec::tetrahedron(), &Tensors { s: &s, j: None }, 1).unwrap();
    assert!(r.passed(), "{}", r.line());
    assert_eq!(r.vectors, 64);
    assert_eq!(r.line(), "CHECK tetrahedron vectors=64 window=1 mode=symbolic result=PASS");
}

#[test]
fn reflection_moved_form_on_unit_window() {
    let s = symbolic(TensorKind::S);
    let j = symbolic(TensorKind::J);
    let r = verify_equation(&EquationSpec::three_d_reflection_moved(), &Tensors { s: &s, j: Some(&j) }, 1).unwrap();
    assert!(r.passed(), "{}", r.line());
    assert_eq!(r.vectors, 512);
}

#[test]
fn reflection_sample_in_evaluated_mode() {
    let p = ParameterSet::canonical();
    let ring = Evaluated::new(EvalPoint::from_ratio(2, 3));
    let s = Tensor::new(TensorKind::S, ring.clone(), p.clone()).unwrap();
    let j = Tensor::new(TensorKind::J, ring, p).unwrap();
    let vectors = random_vectors(9, 1, 40, 7);
    let r = verify_vectors(&EquationSpec::three_d_reflection(), &Tensors { s: &s, j: Some(&j) }, &vectors, "1").unwrap();
    assert!(r.passed(), "{}", r.line());
    assert_eq!(r.mode, "eval:q=2/3");
}

#[test]
fn broken_tensor_is_caught() {
    let s = symbolic(TensorKind::S);
    let good = verify_equation(&EquationSpec::tetrahedron(), &Tensors { s: &s, j: None }, 1).unwrap();
    assert!(good.passed());
    let wrong = Tensor::new(TensorKind::S, Symbolic, ParameterSet::canonical()).unwrap();
    for key in s.cached_keys() {
        let b = s.block(key).unwrap();
        let n = b.len();
        let mut entries = vec![vec![Symbolic.zero(); n]; n];
        for o in 0..n {
            for x in 0..n {
                entries[o][x] = b.entry_at(o, x).clone();
            }
        }
        if key == BlockKey::new(1, 1) {
            entries[0][0] = Symbolic.add(&entries[0][0], &Symbolic.one());
        }
        wrong.preload(refl3d_core::intertwiner::Block::new(&Symbolic, b.key, b.states.clone(), entries, 1));
    }
    let r = verify_equation(&EquationSpec::tetrahedron(), &Tensors { s: &wrong, j: None }, 1).unwrap();
    assert!(!r.passed());
    assert!(r.line().contains("result=FAIL witness="));
}

#[test]
fn evaluated_blocks_are_evaluations_of_symbolic_blocks() {
    let p = ParameterSet::canonical();
    for point in EvalPoint::defaults() {
        let ring = Evaluated::new(point.clone());
        for (kind, max) in [(TensorKind::S, 3), (TensorKind::J, 3)] {
            let sym = Tensor::new(kind, Symbolic, p.clone()).unwrap();
            let ev = Tensor::new(kind, ring.clone(), p.clone()).unwrap();
            for b in sym.solve_up_to(max).unwrap() {
                let e = ev.block(b.key).unwrap();
                for o in 0..b.len() {
                    for x in 0..b.len() {
                        assert_eq!(&point.evaluate(b.entry_at(o, x)).unwrap(), e.entry_at(o, x), "{kind} {}", b.key);
                    }
                }
            }
        }
    }
}

#[test]
fn evaluated_tetrahedron_matches() {
    for point in EvalPoint::defaults() {
        let s = Tensor::new(TensorKind::S, Evaluated::new(point), ParameterSet::canonical()).unwrap();
        let r = verify_equation(&EquationSpec::tetrahedron(), &Tensors { s: &s, j: None }, 1).unwrap();
        assert!(r.passed(), "{}", r.line());
    }
}

#[test]
fn window_growth_keeps_earlier_results() {
    let spec = EquationSpec::tetrahedron();
    let small = symbolic(TensorKind::S);
    let large = symbolic(TensorKind::S);
    assert!(verify_equation(&spec, &Tensors { s: &small, j: None }, 1).unwrap().passed());
    let r = verify_equation(&spec, &Tensors { s: &large, j: None }, 2).unwrap();
    assert!(r.passed());
    assert!(r.max_block.unwrap() >= BlockKey::new(2, 2));
    for x in MultiIndex::window(6, 1) {
        let v = TensorVector::basis(&Symbolic, x);
        for side in [&spec.left, &spec.right] {
            let a = apply_product(&Tensors { s: &small, j: None }, side, &v).unwrap();
            let b = apply_product(&Tensors { s: &large, j: None }, side, &v).unwrap();
            assert_eq!(a.sorted(), b.sorted(), "{x:?}");
        }
    }
}

#[test]
fn s_symmetries_hold() {
    let s = symbolic(TensorKind::S);
    let r = verify_s_symmetries(&s, 4).unwrap();
    assert!(r.passed());
    assert_eq!(r.blocks, 25);
}

#[test]
fn random_vectors_cover_small_windows() {
    let all = random_vectors(3, 1, 100, 3);
    assert_eq!(all.len(), 8);
    let v = random_vectors(9, 2, 50, 1);
    assert_eq!(v.len(), 50);
    assert!(v.iter().all(|x| x.max_occupation() <= 2));
}
