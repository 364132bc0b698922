use std::sync::Arc;

use qhopf_core::catalog::*;
use qhopf_core::cohomology::*;
use qhopf_core::quasihopf::pseudotwist_transform;
use qhopf_core::{Algebra, PrimeField, QuasiData, TensorElement};

fn terms(h: &qhopf_core::HopfStructure, arity: usize, t: &[(&[usize], u32)]) -> TensorElement {
    let v: Vec<_> = t.iter().map(|(d, c)| (d.to_vec(), *c)).collect();
    TensorElement::from_terms(h.algebra(), arity, &v).unwrap()
}

#[test]
fn differential_of_dual_monomials() {
    let h = make_alpha(3, 1).unwrap();
    let r = h.algebra();
    let x = AdditiveCochain::basis_functional(r, 1);
    let x2 = AdditiveCochain::basis_functional(r, 2);
    let c = AdditiveCochain::product(r, std::slice::from_ref(&x)).unwrap();
    assert!(c.differential().unwrap().is_zero());
    let d = AdditiveCochain::product(r, &[x2]).unwrap().differential().unwrap();
    let expected = AdditiveCochain::product(r, &[x.clone(), x]).unwrap().scale(2);
    assert_eq!(d, expected);
    assert_eq!(d.to_string(), "2·x*⊗x*");
}

#[test]
fn alpha_cohomology_is_one_dimensional() {
    let h = make_alpha(3, 1).unwrap();
    for n in 1..=3 {
        let rep = additive_cohomology(h.algebra(), n).unwrap();
        assert_eq!(rep.dim, 1, "degree {n}");
        assert_eq!(rep.representatives.len(), 1);
    }
}

#[test]
fn product_of_two_alphas_in_degree_three() {
    let h = alpha_product(3, &[1, 1]).unwrap();
    assert_eq!(additive_cohomology(h.algebra(), 3).unwrap().dim, 4);
}

#[test]
fn semisimple_has_no_cohomology() {
    let f = PrimeField::new(3).unwrap();
    let labels = vec!["e0".into(), "e1".into(), "e2".into()];
    let a = Arc::new(Algebra::new(f, labels, (0..3).map(|i| (i, i, i, 1)), vec![1, 0, 0]).unwrap());
    for n in 1..=3 {
        assert_eq!(additive_cohomology(&a, n).unwrap().dim, 0);
    }
}

#[test]
fn xi_examples() {
    let h = make_alpha(3, 1).unwrap();
    let xi = xi_map(&h, &[0, 1, 0]).unwrap();
    assert_eq!(xi.to_string(), "x⊗x^2 + x^2⊗x");
    assert!(xi.is_cocycle().unwrap());
    let h5 = make_alpha(5, 1).unwrap();
    let t = xi_tensor(&h5, &[0, 1, 0, 0, 0]).unwrap();
    assert_eq!(t.to_string(), "x⊗x^4 + 2·x^2⊗x^3 + 2·x^3⊗x^2 + x^4⊗x");
    assert!(xi_map(&h5, &[0, 1, 0, 0, 0]).unwrap().is_cocycle().unwrap());
    assert!(xi_map(&h, &[0, 0, 1]).is_err());
}

#[test]
fn canonical_basis_counts() {
    for (spec, count) in [
        (vec![(3, 1)], 1),
        (vec![(3, 1), (3, 1)], 4),
        (vec![(2, 1), (2, 1), (2, 1)], 10),
    ] {
        let (h, basis) = canonical_h3_basis(&spec).unwrap();
        assert_eq!(basis.len(), count);
        let complex = BarComplex::new(h.algebra());
        assert!(complex.classes_independent(&basis).unwrap());
        assert_eq!(complex.cohomology(3).unwrap().dim, count);
    }
}

#[test]
fn coboundary_matches_pseudotwist_of_inverse() {
    let h = make_alpha(3, 1).unwrap();
    let j = terms(&h, 2, &[(&[0, 0], 1), (&[1, 1], 1)]);
    let c = MultiplicativeCochain::new(&h, j.clone()).unwrap();
    let d = multiplicative_coboundary(&c).unwrap();
    let q = QuasiData::trivial(h.clone());
    let via_twist = pseudotwist_transform(&q, &j.invert().unwrap()).unwrap();
    assert_eq!(*d.value(), via_twist.phi);
    assert!(is_multiplicative_cocycle(&d).unwrap());
    match is_multiplicative_coboundary(&d).unwrap() {
        CoboundaryResult::Coboundary { witness } => {
            assert_eq!(multiplicative_coboundary(&witness).unwrap(), d)
        }
        other => panic!("{other:?}"),
    }
    let q2 = QuasiData::new(h.clone(), d.value().clone(), None).unwrap();
    match trivialize_associator(&q2).unwrap() {
        Trivialization::Trivialized { twist, .. } => {
            assert!(pseudotwist_transform(&q2, &twist).unwrap().phi.is_one())
        }
        other => panic!("{other:?}"),
    }
}

#[test]
fn associator_is_obstructed() {
    let q = associator_phi(3, 1).unwrap();
    assert!(q.check_pentagon().unwrap().all_passed());
    let c = MultiplicativeCochain::new(&q.hopf, q.phi.clone()).unwrap();
    let a = match is_multiplicative_coboundary(&c).unwrap() {
        CoboundaryResult::NotCoboundary { class, .. } => class,
        other => panic!("{other:?}"),
    };
    let b = match trivialize_associator(&q).unwrap() {
        Trivialization::Obstructed { class, degree, .. } => {
            assert_eq!(degree, 4);
            class
        }
        other => panic!("{other:?}"),
    };
    assert_eq!(a.len(), 1);
    assert_ne!(a[0], 0);
    assert_eq!(a, b);
}

#[test]
fn exp_does_not_intertwine_in_degree_one() {
    let h = cyclic_group_algebra(2, 2).unwrap();
    let a = h.algebra();
    let w = qhopf_core::certify_nilpotent(a).unwrap();
    let one_plus_g = TensorElement::from_coords(a, 1, vec![1, 1]).unwrap();
    let d = cobar_differential(&h, &one_plus_g).unwrap();
    let lhs = w.exp_series(&d).unwrap();
    let expected = TensorElement::one(a, 2)
        .unwrap()
        .add(&one_plus_g.outer(&one_plus_g).unwrap())
        .unwrap();
    assert_eq!(lhs, expected);
    assert_eq!(lhs.to_string(), "1⊗g + g⊗1 + g⊗g");
    let e = w.exp_series(&one_plus_g).unwrap();
    assert_eq!(e.to_string(), "g");
    let rhs = multiplicative_coboundary(&MultiplicativeCochain::new(&h, e).unwrap()).unwrap();
    assert!(rhs.value().is_one());
    assert!(!lhs.is_one());
}

#[test]
fn brute_force_examples() {
    let z3 = cyclic_group_algebra(3, 3).unwrap();
    let r = brute_force_h2_multiplicative(&z3, SearchSpace::Full, 1000).unwrap();
    assert_eq!(r.candidates, 81);
    assert_eq!((r.cocycles, r.coboundaries, r.classes), (9, 3, 3), "{r:?}");
    let a3 = make_alpha(3, 1).unwrap();
    let r = brute_force_h2_multiplicative(&a3, SearchSpace::Full, 1000).unwrap();
    assert!(r.all_coboundaries, "{r:?}");
    let ud = u_abelian_dual(3, 2).unwrap();
    assert!(brute_force_h2_multiplicative(&ud, SearchSpace::Full, 1_000_000).is_err());
    let r = brute_force_h2_multiplicative(&ud, SearchSpace::PrimitiveExponentials, 1_000_000).unwrap();
    assert!(!r.all_coboundaries, "{r:?}");
    assert_eq!(r.classes, 3, "{r:?}");
}

#[test]
fn multiplicative_cocycle_examples() {
    let h = make_alpha(3, 1).unwrap();
    for n in 2..=3 {
        assert!(is_multiplicative_cocycle(&MultiplicativeCochain::unit(&h, n).unwrap()).unwrap());
    }
    let q = associator_phi(3, 1).unwrap();
    assert!(is_multiplicative_cocycle(&MultiplicativeCochain::new(&h, q.phi).unwrap()).unwrap());
    let j = terms(&h, 2, &[(&[0, 0], 1), (&[1, 1], 1)]);
    assert!(!is_multiplicative_cocycle(&MultiplicativeCochain::new(&h, j).unwrap()).unwrap());
    let four = MultiplicativeCochain::unit(&h, 4).unwrap();
    assert!(matches!(is_multiplicative_cocycle(&four), Err(qhopf_core::Error::Unsupported(_))));
    let unit1 = MultiplicativeCochain::unit(&h, 1).unwrap();
    assert!(multiplicative_coboundary(&unit1).unwrap().value().is_one());
    let unit2 = MultiplicativeCochain::unit(&h, 2).unwrap();
    assert!(multiplicative_coboundary(&unit2).unwrap().value().is_one());
    match is_multiplicative_coboundary(&MultiplicativeCochain::unit(&h, 3).unwrap()).unwrap() {
        CoboundaryResult::Coboundary { witness } => assert!(witness.value().is_one()),
        other => panic!("{other:?}"),
    }
    assert!(is_multiplicative_coboundary(&unit2).is_err());
    match trivialize_associator(&QuasiData::trivial(h)).unwrap() {
        Trivialization::Trivialized { twist, .. } => assert!(twist.is_one()),
        other => panic!("{other:?}"),
    }
}

#[test]
fn trivialization_refuses_rmatrix() {
    let h = make_alpha(3, 1).unwrap();
    let one = TensorElement::one(h.algebra(), 2).unwrap();
    let q = QuasiData::trivial(h).with_rmatrix(one).unwrap();
    assert!(matches!(trivialize_associator(&q), Err(qhopf_core::Error::Unsupported(_))));
}


use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn random_cochain(rng: &mut ChaCha8Rng, r: &Arc<Algebra>, n: usize) -> AdditiveCochain {
    let m = r.ideal_basis().len();
    let coords = (0..m.pow(n as u32)).map(|_| rng.gen_range(0..r.p())).collect();
    AdditiveCochain::new(r, n, coords).unwrap()
}

#[test]
fn differential_squares_to_zero() {
    let mut rng = ChaCha8Rng::seed_from_u64(41);
    let algebras: Vec<Arc<Algebra>> = vec![
        make_alpha(3, 1).unwrap().algebra().clone(),
        make_alpha(3, 2).unwrap().algebra().clone(),
        make_alpha(2, 2).unwrap().algebra().clone(),
        make_alpha_dual(3, 2).unwrap().algebra().clone(),
        alpha_product(3, &[1, 1]).unwrap().algebra().clone(),
        cyclic_group_algebra(3, 3).unwrap().algebra().clone(),
        cyclic_function_algebra(3, 3).unwrap().algebra().clone(),
        make_u_abelian_zero(3, 2).unwrap().algebra().clone(),
    ];
    for r in algebras {
        for n in 1..=3 {
            if r.ideal_basis().len().pow(n as u32 + 2) > 1 << 20 {
                continue;
            }
            for _ in 0..5 {
                let c = random_cochain(&mut rng, &r, n);
                assert!(c.differential().unwrap().differential().unwrap().is_zero());
            }
        }
    }
}

fn nil_hopf() -> Vec<qhopf_core::HopfStructure> {
    vec![
        make_alpha(3, 1).unwrap(),
        make_alpha(5, 1).unwrap(),
        make_alpha_dual(3, 2).unwrap(),
        make_u_abelian_zero(3, 2).unwrap(),
        u_abelian_dual(3, 2).unwrap(),
    ]
}

#[test]
fn exponential_intertwines_differentials() {
    let mut rng = ChaCha8Rng::seed_from_u64(42);
    for h in nil_hopf() {
        let bridge = CochainBridge::new(&h).unwrap();
        let w = qhopf_core::certify_nilpotent(h.algebra()).unwrap();
        for _ in 0..10 {
            let f = random_cochain(&mut rng, bridge.dual(), 2);
            let t = bridge.from_cochain(&f).unwrap();
            let dt = bridge.from_cochain(&f.differential().unwrap()).unwrap();
            let lhs = w.exp(&dt).unwrap();
            let ef = MultiplicativeCochain::new(&h, w.exp(&t).unwrap()).unwrap();
            assert_eq!(lhs, multiplicative_coboundary(&ef).unwrap().into_value());
        }
    }
}

#[test]
fn bridge_round_trip() {
    let mut rng = ChaCha8Rng::seed_from_u64(43);
    for h in nil_hopf() {
        let bridge = CochainBridge::new(&h).unwrap();
        for n in 1..=3 {
            let c = random_cochain(&mut rng, bridge.dual(), n);
            let t = bridge.from_cochain(&c).unwrap();
            assert_eq!(bridge.to_cochain(&t).unwrap(), c);
        }
    }
}

#[test]
fn cocycles_transport_to_multiplicative_cocycles() {
    let mut rng = ChaCha8Rng::seed_from_u64(44);
    let mut done = 0;
    let hs = nil_hopf();
    while done < 100 {
        let h = &hs[done % hs.len()];
        let n = 2 + done % 2;
        let bridge = CochainBridge::new(h).unwrap();
        let complex = BarComplex::new(bridge.dual());
        let report = complex.cohomology(n).unwrap();
        let mut phi = random_cochain(&mut rng, bridge.dual(), n - 1).differential().unwrap();
        for rep in &report.representatives {
            phi = phi.add(&rep.scale(rng.gen_range(0..h.algebra().p()))).unwrap();
        }
        assert!(phi.is_cocycle().unwrap());
        let t = bridge.from_cochain(&phi).unwrap();
        let w = qhopf_core::certify_nilpotent(h.algebra()).unwrap();
        let e = w.exp(&t).unwrap();
        let c = MultiplicativeCochain::new(h, e.clone()).unwrap();
        assert!(is_multiplicative_cocycle(&c).unwrap(), "degree {n}");
        assert_eq!(w.log(&e).unwrap(), t);
        done += 1;
    }
}

#[test]
fn lowest_part_of_associator_is_a_nontrivial_cocycle() {
    let q = associator_phi(3, 1).unwrap();
    let h = &q.hopf;
    let one = TensorElement::one(h.algebra(), 3).unwrap();
    let phi = q.phi.sub(&one).unwrap();
    assert!(cobar_differential(h, &phi).unwrap().is_zero());
    let bridge = CochainBridge::new(h).unwrap();
    let c = bridge.to_cochain(&phi).unwrap();
    assert!(c.is_cocycle().unwrap());
    let complex = BarComplex::new(bridge.dual());
    assert!(complex.solve_coboundary(&c).unwrap().is_none());
}

fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

// Ext over a tensor product of truncated polynomial algebras in m variables
// has Poincaré series 1/(1-t)^m.
fn truncated_polynomial_dim(m: usize, n: usize) -> usize {
    binomial(n + m - 1, m - 1)
}

#[test]
fn dimension_oracle() {
    let configs: Vec<(u32, Vec<u32>, usize)> = vec![
        (3, vec![1], 3),
        (3, vec![2], 3),
        (3, vec![1, 1], 3),
        (3, vec![1, 2], 2),
        (2, vec![1, 1], 3),
        (2, vec![1, 1, 1], 3),
        (2, vec![2], 3),
        (5, vec![1], 3),
        (5, vec![1, 1], 2),
    ];
    for (p, rs, max_n) in configs {
        let h = alpha_product(p, &rs).unwrap();
        // functions: one truncated variable per factor
        let functions = BarComplex::new(h.algebra());
        // group algebra: r truncated variables per factor
        let dual = h.dual().unwrap();
        let group = BarComplex::new(dual.algebra());
        let total: u32 = rs.iter().sum();
        for n in 1..=max_n {
            assert_eq!(
                functions.cohomology(n).unwrap().dim,
                truncated_polynomial_dim(rs.len(), n),
                "O(G) p={p} rs={rs:?} n={n}"
            );
            if group.ideal_dim().pow(n as u32 + 1) <= 1 << 20 {
                assert_eq!(
                    group.cohomology(n).unwrap().dim,
                    truncated_polynomial_dim(total as usize, n),
                    "kG p={p} rs={rs:?} n={n}"
                );
            }
        }
        let k = rs.len();
        if max_n >= 3 {
            assert_eq!(functions.cohomology(3).unwrap().dim, k * k + binomial(k, 3));
        }
    }
}

#[test]
fn xi_is_linear_over_the_prime_field() {
    for (p, r) in [(3u32, 1u32), (5, 1), (3, 2)] {
        let h = make_alpha(p, r).unwrap();
        for f in h.primitives() {
            let base = xi_map(&h, &f).unwrap();
            assert!(base.is_cocycle().unwrap());
            for a in 0..p {
                let af: Vec<u32> = f.iter().map(|&v| h.algebra().field().mul(a, v)).collect();
                assert_eq!(xi_map(&h, &af).unwrap(), base.scale(a));
            }
        }
    }
}

