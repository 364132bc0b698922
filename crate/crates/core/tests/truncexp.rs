use std::sync::Arc;

use proptest::prelude::*;
use qhopf_core::catalog::*;
use qhopf_core::linalg::{sparse_from_dense, SparseVec};
use qhopf_core::truncexp::*;
use qhopf_core::{certify_nilpotent, Algebra, Error, Matrix, TensorElement};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn terms(a: &Arc<Algebra>, arity: usize, t: &[(&[usize], u32)]) -> TensorElement {
    let v: Vec<_> = t.iter().map(|(d, c)| (d.to_vec(), *c)).collect();
    TensorElement::from_terms(a, arity, &v).unwrap()
}

fn one(a: &Arc<Algebra>, n: usize) -> TensorElement {
    TensorElement::one(a, n).unwrap()
}

fn truncated(p: u32) -> Arc<Algebra> {
    make_alpha(p, 1).unwrap().algebra().clone()
}

#[test]
fn exp_examples() {
    let a = truncated(3);
    assert_eq!(trunc_exp(&TensorElement::zero(&a, 2).unwrap()).unwrap(), one(&a, 2));
    let xx = terms(&a, 2, &[(&[1, 1], 1)]);
    let e = trunc_exp(&xx).unwrap();
    assert_eq!(e, terms(&a, 2, &[(&[0, 0], 1), (&[1, 1], 1), (&[2, 2], 2)]));
    let t = terms(&a, 2, &[(&[1, 1], 1), (&[1, 2], 1)]);
    let expected = terms(&a, 2, &[(&[0, 0], 1), (&[1, 1], 1), (&[1, 2], 1), (&[2, 2], 2)]);
    assert_eq!(trunc_exp(&t).unwrap(), expected);
}

#[test]
fn log_examples() {
    let a = truncated(3);
    assert!(trunc_log(&one(&a, 2)).unwrap().is_zero());
    let s = terms(&a, 2, &[(&[0, 0], 1), (&[1, 1], 1), (&[2, 2], 2)]);
    assert_eq!(trunc_log(&s).unwrap(), terms(&a, 2, &[(&[1, 1], 1)]));
    let s = terms(&a, 2, &[(&[0, 0], 1), (&[1, 2], 1)]);
    let w = certify_nilpotent(&a).unwrap();
    assert_eq!(trunc_log(&s).unwrap(), terms(&a, 2, &[(&[1, 2], 1)]));
    assert_eq!(w.log_series(&s).unwrap(), trunc_log(&s).unwrap());
}

#[test]
fn exp_refusals() {
    let a = truncated(3);
    let x = terms(&a, 1, &[(&[1], 1)]);
    assert!(matches!(trunc_exp(&x), Err(Error::Unsupported(_))));
    let unit_slot = terms(&a, 2, &[(&[0, 1], 1)]);
    assert!(matches!(trunc_exp(&unit_slot), Err(Error::Input(_))));
    let b = make_alpha(3, 2).unwrap().algebra().clone();
    let y = terms(&b, 2, &[(&[1, 1], 1)]);
    assert!(matches!(trunc_exp(&y), Err(Error::Unsupported(_))));
    let xx = terms(&a, 2, &[(&[1, 1], 1)]);
    assert!(matches!(trunc_exp_extended(&xx), Err(Error::Unsupported(_))));
}

#[test]
fn extended_examples() {
    let a = truncated(3);
    let t = terms(&a, 3, &[(&[1, 2, 1], 2), (&[2, 1, 1], 1)]);
    assert_eq!(trunc_exp_extended(&t).unwrap(), trunc_exp(&t).unwrap());
    let t = terms(&a, 3, &[(&[0, 1, 1], 1)]);
    let expected = terms(&a, 3, &[(&[0, 0, 0], 1), (&[0, 1, 1], 1), (&[0, 2, 2], 2)]);
    assert_eq!(trunc_exp_extended(&t).unwrap(), expected);
    let t3 = terms(&a, 3, &[(&[1, 1, 0], 1), (&[2, 1, 0], 1)]);
    let e1 = trunc_exp_extended(&t).unwrap();
    let e3 = trunc_exp_extended(&t3).unwrap();
    let both = trunc_exp_extended(&t.add(&t3).unwrap()).unwrap();
    assert_eq!(both, e1.mul(&e3).unwrap());
    assert_eq!(both, e3.mul(&e1).unwrap());
    assert_eq!(trunc_log_extended(&both).unwrap(), t.add(&t3).unwrap());
    let two_units = terms(&a, 3, &[(&[0, 0, 1], 1)]);
    assert!(matches!(trunc_exp_extended(&two_units), Err(Error::Input(_))));
}

#[test]
fn certification_examples() {
    assert!(certify_nilpotent(&truncated(3)).is_some());
    assert!(certify_nilpotent(make_alpha(3, 2).unwrap().algebra()).is_none());
    assert!(certify_nilpotent(make_alpha_dual(3, 2).unwrap().algebra()).is_some());
    assert!(certify_nilpotent(u_abelian_dual(5, 2).unwrap().algebra()).is_some());
    assert!(certify_nilpotent(make_cyclic_group_algebra(3, 1).unwrap().algebra()).is_some());
    assert!(certify_nilpotent(make_cyclic_group_algebra(3, 2).unwrap().algebra()).is_none());
}

fn nil_catalog() -> Vec<Arc<Algebra>> {
    let mut out = Vec::new();
    for p in [3u32, 5] {
        out.push(truncated(p));
        out.push(make_alpha_dual(p, 2).unwrap().algebra().clone());
        out.push(u_abelian_dual(p, 2).unwrap().algebra().clone());
        out.push(make_u_abelian_zero(p, 2).unwrap().algebra().clone());
        out.push(make_cyclic_group_algebra(p, 1).unwrap().algebra().clone());
    }
    out
}

fn random_ideal_tensor(rng: &mut ChaCha8Rng, a: &Arc<Algebra>, arity: usize, terms: usize) -> TensorElement {
    let ideal = a.ideal_basis().to_vec();
    let mut t = TensorElement::zero(a, arity).unwrap();
    for _ in 0..terms {
        let factors: Vec<_> = (0..arity).map(|_| ideal[rng.gen_range(0..ideal.len())].clone()).collect();
        let c = rng.gen_range(1..a.p());
        t = t.add(&TensorElement::pure(a, &factors).unwrap().scale(c)).unwrap();
    }
    t
}

#[test]
fn exp_log_round_trips() {
    let mut rng = ChaCha8Rng::seed_from_u64(31);
    for a in nil_catalog() {
        let w = certify_nilpotent(&a).unwrap();
        for i in 0..200 {
            let arity = if a.dim() <= 5 && i % 4 == 0 { 3 } else { 2 };
            let k = rng.gen_range(1..6);
            let t = random_ideal_tensor(&mut rng, &a, arity, k);
            let e = w.exp(&t).unwrap();
            assert_eq!(w.log(&e).unwrap(), t);
            let s = TensorElement::one(&a, arity).unwrap().add(&random_ideal_tensor(&mut rng, &a, arity, k)).unwrap();
            assert_eq!(w.exp(&w.log(&s).unwrap()).unwrap(), s);
        }
    }
}

#[test]
fn exp_is_a_homomorphism() {
    let mut rng = ChaCha8Rng::seed_from_u64(32);
    for a in nil_catalog() {
        let w = certify_nilpotent(&a).unwrap();
        for _ in 0..200 {
            let (k, l) = (rng.gen_range(1..5), rng.gen_range(1..5));
            let t = random_ideal_tensor(&mut rng, &a, 2, k);
            let u = random_ideal_tensor(&mut rng, &a, 2, l);
            let lhs = w.exp(&t.add(&u).unwrap()).unwrap();
            assert_eq!(lhs, w.exp(&t).unwrap().mul(&w.exp(&u).unwrap()).unwrap());
        }
    }
}

#[test]
fn closed_form_log_on_decomposables() {
    let mut rng = ChaCha8Rng::seed_from_u64(33);
    for a in nil_catalog() {
        let w = certify_nilpotent(&a).unwrap();
        for _ in 0..50 {
            let mut factors = Vec::new();
            for _ in 0..2 {
                let k = rng.gen_range(1..4);
                let v = random_ideal_tensor(&mut rng, &a, 1, k);
                factors.push(v.into_coords());
            }
            let d = TensorElement::pure(&a, &factors).unwrap();
            let s = w.exp(&d).unwrap();
            assert_eq!(s, w.exp_series(&d).unwrap());
            assert_eq!(w.log(&s).unwrap(), w.log_series(&s).unwrap());
            assert_eq!(w.log(&s).unwrap(), d);
        }
    }
}

#[test]
fn series_is_not_additive_at_two() {
    // k[x,y]/(x²,y²) at p = 2, T = x⊗x, U = y⊗y with TU = xy⊗xy ≠ 0
    let h = make_u_abelian_zero(2, 2).unwrap();
    let a = h.algebra().clone();
    let (x, y, xy) = (2, 1, 3);
    let t = terms(&a, 2, &[(&[x, x], 1)]);
    let u = terms(&a, 2, &[(&[y, y], 1)]);
    let tu = terms(&a, 2, &[(&[xy, xy], 1)]);
    let e = |v: &TensorElement| trunc_exp(v).unwrap();
    assert_eq!(e(&t), one(&a, 2).add(&t).unwrap());
    let sum = t.add(&u).unwrap();
    let linear = one(&a, 2).add(&sum).unwrap();
    assert_eq!(e(&sum), linear.add(&tu).unwrap());
    assert_ne!(e(&sum), linear);
    let w = certify_nilpotent(&a).unwrap();
    assert_eq!(w.exp_series(&sum).unwrap(), linear);
}

#[test]
fn scaling_only_rescales_the_argument() {
    let a = truncated(5);
    let w = certify_nilpotent(&a).unwrap();
    let t = terms(&a, 2, &[(&[1, 2], 1)]);
    for c in 1..5 {
        let ct = t.scale(c);
        assert_eq!(w.exp(&ct).unwrap(), w.exp_series(&ct).unwrap());
        assert_eq!(w.exp(&ct).unwrap(), w.exp(&t).unwrap().pow(c as u64).unwrap());
    }
}

// stored-basis independence: E commutes with a random change of basis
fn random_basis(rng: &mut ChaCha8Rng, a: &Algebra) -> (Vec<Vec<u32>>, Matrix) {
    let d = a.dim();
    let f = a.field();
    loop {
        let cols: Vec<Vec<u32>> = (0..d).map(|_| (0..d).map(|_| rng.gen_range(0..f.p())).collect()).collect();
        let m = Matrix::from_columns(f, d, &cols);
        if let Some(inv) = m.inverse() {
            return (cols, inv);
        }
    }
}

#[test]
fn exp_is_basis_independent() {
    let mut rng = ChaCha8Rng::seed_from_u64(34);
    for a in [truncated(3), truncated(5), u_abelian_dual(3, 2).unwrap().algebra().clone()] {
        for _ in 0..5 {
            let (cols, inv) = random_basis(&mut rng, &a);
            let labels = (0..a.dim()).map(|i| format!("b{i}")).collect();
            let b = Arc::new(a.change_basis(&cols, labels).unwrap());
            let images: Vec<SparseVec> = (0..a.dim()).map(|j| sparse_from_dense(&inv.column(j))).collect();
            let to_b = |t: &TensorElement| t.map_each_slot(&images).unwrap().transport(&b).unwrap();
            for _ in 0..10 {
                let t = random_ideal_tensor(&mut rng, &a, 2, 3);
                assert_eq!(to_b(&trunc_exp(&t).unwrap()), trunc_exp(&to_b(&t)).unwrap());
            }
        }
    }
}

proptest! {
    #[test]
    fn exp_of_negation_is_inverse(seed in any::<u64>()) {
        let a = u_abelian_dual(3, 2).unwrap().algebra().clone();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let t = random_ideal_tensor(&mut rng, &a, 2, 4);
        let e = trunc_exp(&t).unwrap();
        prop_assert_eq!(trunc_exp(&t.neg()).unwrap(), e.invert().unwrap());
    }
}
