use qhopf_core::catalog::*;
use qhopf_core::hopf::generated_subalgebra;
use qhopf_core::linalg::Subspace;
use qhopf_core::{Error, HopfStructure, PrimeField, TensorElement};

fn catalog() -> Vec<(&'static str, HopfStructure)> {
    vec![
        ("alpha_3_1", make_alpha(3, 1).unwrap()),
        ("alpha_3_2", make_alpha(3, 2).unwrap()),
        ("alpha_2_3", make_alpha(2, 3).unwrap()),
        ("alpha_5_1", make_alpha(5, 1).unwrap()),
        ("alpha_dual_3_2", make_alpha_dual(3, 2).unwrap()),
        ("alpha_product_3_12", alpha_product(3, &[1, 2]).unwrap()),
        ("cyclic_3", cyclic_group_algebra(3, 3).unwrap()),
        ("cyclic_9", make_cyclic_group_algebra(3, 2).unwrap()),
        ("cyclic_2_in_3", cyclic_group_algebra(3, 2).unwrap()),
        ("functions_3", cyclic_function_algebra(3, 3).unwrap()),
        ("u_zero_3_2", make_u_abelian_zero(3, 2).unwrap()),
        ("u_dual_3_2", u_abelian_dual(3, 2).unwrap()),
        ("u_identity_3_1", make_u_abelian(3, 1, &[vec![1]]).unwrap()),
    ]
}

#[test]
fn catalog_passes_bialgebra_axioms() {
    for (name, h) in catalog() {
        let report = h.check_bialgebra();
        assert!(report.all_passed(), "{name}: {report:?}");
    }
    let g = cyclic_group_algebra(3, 3).unwrap();
    assert!(g.is_cocommutative());
    assert_eq!(g.check_bialgebra().passed("cocommutativity"), Some(true));
}

#[test]
fn corrupted_comultiplication_fails() {
    let h = make_alpha(3, 1).unwrap();
    let mut comul = h.comul_images().to_vec();
    // Δ(x) := x⊗1
    comul[1] = vec![(3, 1)];
    let bad = h.with_comul(comul).unwrap();
    let report = bad.check_bialgebra();
    assert!(!report.all_passed());
    assert_eq!(report.passed("counit"), Some(false));
    assert!(report.get("counit").unwrap().residual.is_some());
}

#[test]
fn primitive_spaces() {
    let h = make_alpha(3, 2).unwrap();
    let prims = Subspace::spanned_by(h.algebra().field(), 9, &h.primitives());
    assert_eq!(prims.dim(), 2);
    let mut x = vec![0; 9];
    x[1] = 1;
    let mut x3 = vec![0; 9];
    x3[3] = 1;
    assert!(prims.contains(&x) && prims.contains(&x3));

    assert_eq!(cyclic_group_algebra(3, 3).unwrap().primitives().len(), 0);
    assert_eq!(cyclic_function_algebra(3, 3).unwrap().primitives().len(), 1);
    // split semisimple with a constant group scheme coproduct
    assert_eq!(cyclic_function_algebra(2, 3).unwrap().primitives().len(), 0);

    for (name, h) in catalog() {
        for v in h.primitives() {
            assert_eq!(h.algebra().apply_counit(&v), 0, "{name}");
            assert!(h.is_primitive(&v));
        }
    }
}

#[test]
fn primitive_dimension_is_sum_of_heights() {
    for (p, rs) in [(3u32, vec![1u32]), (3, vec![2]), (3, vec![1, 1]), (3, vec![1, 2]), (2, vec![1, 2]), (2, vec![3]), (5, vec![1, 1])] {
        let h = alpha_product(p, &rs).unwrap();
        let expected: u32 = rs.iter().sum();
        assert_eq!(h.primitives().len(), expected as usize, "p={p} rs={rs:?}");
    }
}

#[test]
fn grouplike_membership() {
    let h = make_alpha(3, 1).unwrap();
    assert!(h.is_grouplike(h.algebra().unit()));
    assert!(!h.is_grouplike(&[1, 1, 0]));
    let g2 = cyclic_group_algebra(2, 2).unwrap();
    assert!(g2.is_grouplike(&[0, 1]));
    assert!(!g2.is_grouplike(&[1, 1]));
    // O(α) has no characters besides ε, so O(α)* has only the unit
    let d = make_alpha_dual(3, 1).unwrap();
    assert!(d.is_grouplike(d.algebra().unit()));
    assert!(!d.is_grouplike(&[1, 1, 2]));
    assert!(!d.is_grouplike(&[1, 1, 0]));
    let fun = cyclic_function_algebra(3, 3).unwrap().dual().unwrap();
    for k in 0..3 {
        assert!(fun.is_grouplike(&fun.algebra().basis_vector(k)));
    }
}

#[test]
fn dual_of_alpha_is_divided_powers() {
    let d = make_alpha_dual(3, 2).unwrap();
    let a = d.algebra();
    assert_eq!(a.label(1), "x*");
    // x^{a*} x^{b*} = C(a+b, a) x^{(a+b)*}
    let f = a.field();
    for i in 0..9 {
        for j in 0..9 {
            let prod = a.mul(&a.basis_vector(i), &a.basis_vector(j));
            let mut expected = vec![0; 9];
            if i + j < 9 {
                expected[i + j] = f.binomial((i + j) as u64, i as u64);
            }
            assert_eq!(prod, expected, "{i} {j}");
        }
    }
    for g in [1usize, 3] {
        assert!(a.pow(&a.basis_vector(g), 3).iter().all(|&c| c == 0));
    }
    let gens = [a.basis_vector(1), a.basis_vector(3)];
    assert_eq!(generated_subalgebra(a, &gens).dim(), 9);
    for i in 0..9 {
        let terms: Vec<_> = (0..=i).map(|j| (vec![j, i - j], 1)).collect();
        assert_eq!(d.comul_basis(i), TensorElement::from_terms(a, 2, &terms).unwrap());
    }
}

#[test]
fn dual_of_group_algebra_is_function_algebra() {
    for p in [2u32, 3, 5] {
        let g = cyclic_group_algebra(p, p as usize).unwrap();
        let d = g.dual().unwrap();
        let fun = cyclic_function_algebra(p, p as usize).unwrap();
        assert_eq!(d.algebra().structure_constants(), fun.algebra().structure_constants());
        assert_eq!(d.comul_images(), fun.comul_images());
        assert_eq!(d.algebra().counit(), fun.algebra().counit());
    }
}

#[test]
fn double_dual_is_identity() {
    for (name, h) in catalog() {
        let dd = h.dual().unwrap().dual().unwrap();
        assert_eq!(dd.algebra().structure_constants(), h.algebra().structure_constants(), "{name}");
        assert_eq!(dd.comul_images(), h.comul_images(), "{name}");
        assert_eq!(dd.algebra().counit(), h.algebra().counit(), "{name}");
        assert_eq!(dd.algebra().labels(), h.algebra().labels(), "{name}");
        assert!(h.dual().unwrap().check_bialgebra().all_passed(), "{name}");
    }
}

#[test]
fn graded_cyclic_group() {
    let h = make_cyclic_group_algebra(3, 2).unwrap();
    let gr = h.associated_graded().unwrap();
    assert_eq!(gr.hopf.dim(), 9);
    assert!(gr.is_graded());
    assert!(gr.hopf.is_cocommutative());
    assert!(gr.hopf.check_bialgebra().all_passed());
    assert!(gr.is_primitively_generated());
    assert_eq!(gr.degrees.iter().filter(|&&d| d == 1).count(), 1);
    assert!(!h.is_radically_graded().unwrap());
}

#[test]
fn graded_alpha_is_itself() {
    for (p, r) in [(3u32, 1u32), (3, 2), (5, 1)] {
        let h = make_alpha(p, r).unwrap();
        assert!(h.is_radically_graded().unwrap());
        let gr = h.associated_graded().unwrap();
        assert_eq!(gr.hopf.algebra().structure_constants(), h.algebra().structure_constants());
        assert_eq!(gr.hopf.comul_images(), h.comul_images());
    }
}

#[test]
fn graded_semisimple_sits_in_degree_zero() {
    let h = cyclic_function_algebra(3, 2).unwrap();
    let gr = h.associated_graded().unwrap();
    assert!(gr.degrees.iter().all(|&d| d == 0));
    assert_eq!(gr.hopf.dim(), 2);
    assert_eq!(gr.hopf.radical_filtration().unwrap().radical_dim(), 0);
    assert!(gr.hopf.check_bialgebra().all_passed());
}

#[test]
fn graded_invariants_on_local_catalog() {
    let locals = [
        make_alpha(3, 1).unwrap(),
        make_alpha(3, 2).unwrap(),
        make_alpha(2, 2).unwrap(),
        alpha_product(3, &[1, 1]).unwrap(),
        make_cyclic_group_algebra(2, 2).unwrap(),
        make_cyclic_group_algebra(3, 1).unwrap(),
        make_cyclic_group_algebra(3, 2).unwrap(),
        make_cyclic_group_algebra(5, 1).unwrap(),
        make_u_abelian_zero(3, 2).unwrap(),
        make_u_abelian(3, 1, &[vec![1]]).unwrap(),
    ];
    for h in locals {
        let gr = h.associated_graded().unwrap();
        assert_eq!(gr.hopf.dim(), h.dim());
        assert!(gr.is_graded());
        assert!(gr.hopf.check_bialgebra().all_passed());
        assert!(gr.is_primitively_generated());
        let a = gr.hopf.algebra();
        for i in 0..a.dim() {
            for j in 0..a.dim() {
                for &(k, _) in a.basis_product(i, j) {
                    assert_eq!(gr.degrees[k], gr.degrees[i] + gr.degrees[j]);
                }
            }
        }
    }
}

#[test]
fn graded_divided_powers() {
    let d = make_alpha_dual(3, 2).unwrap();
    let gr = d.associated_graded().unwrap();
    assert!(gr.is_graded());
    assert_eq!(gr.hopf.primitives().len(), 2);
}

#[test]
fn non_hopf_radical_is_reported() {
    // group algebra of ℤ/2 in characteristic 3 twisted so that the radical
    // direction is not a coideal: A = k[x]/(x²), Δ(x) = x⊗x
    let f = PrimeField::new(3).unwrap();
    let labels = vec!["1".to_string(), "x".to_string()];
    let alg = std::sync::Arc::new(
        qhopf_core::Algebra::new(f, labels, [(0, 0, 0, 1), (0, 1, 1, 1), (1, 0, 1, 1)], vec![1, 0]).unwrap(),
    );
    // Δ(x) = x⊗1 + 1⊗x + 1⊗1 is not counital but exercises the degree check
    let h = HopfStructure::new(alg, vec![vec![(0, 1)], vec![(0, 1), (1, 1), (2, 1)]]).unwrap();
    assert!(matches!(h.associated_graded(), Err(Error::ChevalleyViolation(_))));
}
