//! Named end-to-end scenarios.
//!
//! Report schema (one `key=value` per line, in this order):
//!
//! * `nontrivial-associator`: `demo.p{P}.phi`, `demo.p{P}.check.*` for
//!   P = 2, 3, 5; for odd P also `demo.p{P}.h3.dim`,
//!   `demo.p{P}.obstruction.degree`, `demo.p{P}.obstruction.coords`,
//!   `demo.p{P}.obstruction.consistent`; then `demo.scaling.image`,
//!   `demo.scaling.s`.
//! * `exp-degree-one`: `demo.f`, `demo.df`, `demo.exp_df`,
//!   `demo.exp_df.closed_form`, `check.exp_df_matches_closed_form`,
//!   `demo.exp_f`, `demo.d_exp_f`, `check.d_exp_f_trivial`,
//!   `check.inequality`.
//! * `h3-basis`: per case `demo.{case}.count`, `.expected`, `.dim`,
//!   `.cocycles`, `.independent`, `.element.{k}`.
//! * `skew-twist`: `demo.seed`, `demo.trials`, `demo.example.s`,
//!   `demo.example.twist`, `demo.example.minimal`, then per case
//!   `demo.{case}.trials`, `.twists`, `.nondegenerate`, `.minimal`,
//!   `.agree`.
//! * `trichotomy`: `demo.{group,alpha,alpha_phi}.grouplikes`,
//!   `demo.{alpha,alpha_phi}.trivialize`, `check.group_vs_alpha`,
//!   `check.alpha_vs_alpha_phi`.
//! * `graded`: `demo.dim`, `demo.gr.dim`, `demo.gr.degrees`,
//!   `demo.gr.check.bialgebra.*`, `demo.gr.radically_graded`,
//!   `demo.gr.cocommutative`, `demo.gr.primitively_generated`.
//!
//! Every report ends with `demo.result=pass|fail`.

use clap::ValueEnum;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use qhopf_core::catalog::{
    associator_phi, associator_tensor, count_grouplikes, cyclic_group_algebra, make_alpha,
    make_cyclic_group_algebra, minimality_check, scaling_automorphism, skew_twist, u_abelian_dual,
};
use qhopf_core::cohomology::{
    canonical_h3_basis, cobar_differential, is_multiplicative_coboundary, multiplicative_coboundary,
    BarComplex, CoboundaryResult, MultiplicativeCochain, Trivialization,
};
use qhopf_core::quasihopf::check_twist;
use qhopf_core::{certify_nilpotent, Error, Matrix, QuasiData, Result, Scalar, TensorElement};

use crate::report::{list, verdict, Report};
use crate::{EXIT_CHECK_FAILED, EXIT_OK};

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Demo {
    /// Φ over O(α_p) satisfies the pentagon and is not a coboundary.
    NontrivialAssociator,
    /// E fails to intertwine the differentials in degree one.
    ExpDegreeOne,
    /// Explicit basis of H³ for products of truncated polynomial algebras.
    H3Basis,
    /// Twists E(s) on u(g)* and their minimality.
    SkewTwist,
    /// k[Z/p], kα_p and (kα_p, Φ) told apart at p = 3.
    Trichotomy,
    /// The associated graded of k[Z/9] at p = 3.
    Graded,
}

pub fn run_demo(demo: Demo, seed: u64, trials: usize) -> Result<(i32, Report)> {
    let mut report = Report::new();
    let ok = match demo {
        Demo::NontrivialAssociator => nontrivial_associator(&mut report)?,
        Demo::ExpDegreeOne => exp_degree_one(&mut report)?,
        Demo::H3Basis => h3_basis(&mut report)?,
        Demo::SkewTwist => skew_twists(&mut report, seed, trials)?,
        Demo::Trichotomy => trichotomy(&mut report)?,
        Demo::Graded => graded(&mut report)?,
    };
    report.flag("demo.result", ok);
    Ok((if ok { EXIT_OK } else { EXIT_CHECK_FAILED }, report))
}

fn nontrivial_associator(report: &mut Report) -> Result<bool> {
    let mut ok = true;
    for p in [2u32, 3, 5] {
        let q = associator_phi(p, 1)?;
        let key = format!("demo.p{p}");
        report.push(format!("{key}.phi"), &q.phi);
        let mut checks = q.check_pentagon()?;
        checks.extend(q.check_counit_normalization()?);
        report.checks(&format!("{key}.check"), &checks);
        ok &= checks.all_passed();
        if p == 2 {
            continue;
        }
        let h3 = BarComplex::new(q.hopf.algebra()).cohomology(3)?;
        report.push(format!("{key}.h3.dim"), h3.dim);
        let direct = match is_multiplicative_coboundary(&MultiplicativeCochain::new(&q.hopf, q.phi.clone())?)? {
            CoboundaryResult::NotCoboundary { class, .. } => Some(class),
            CoboundaryResult::Coboundary { .. } => None,
        };
        match qhopf_core::cohomology::trivialize_associator(&q)? {
            Trivialization::Obstructed { degree, class, .. } => {
                report.push(format!("{key}.obstruction.degree"), degree);
                report.push(format!("{key}.obstruction.coords"), list(&class));
                let consistent = direct.as_ref() == Some(&class) && class.iter().any(|&c| c != 0);
                report.flag(format!("{key}.obstruction.consistent"), consistent);
                ok &= consistent && h3.dim == 1;
            }
            Trivialization::Trivialized { .. } => {
                report.push(format!("{key}.obstruction.degree"), "none");
                ok = false;
            }
        }
    }
    let q = associator_phi(5, 1)?;
    let image = q.phi.map_each_slot(&scaling_automorphism(5, 2)?)?;
    report.push("demo.scaling.image", &image);
    let s = (0..5).find(|&t| associator_tensor(&q.hopf, t).map(|phi| phi == image).unwrap_or(false));
    match s {
        Some(s) => report.push("demo.scaling.s", s),
        None => report.push("demo.scaling.s", "none"),
    }
    ok &= s == Some(4);
    Ok(ok)
}

fn exp_degree_one(report: &mut Report) -> Result<bool> {
    let h = cyclic_group_algebra(2, 2)?;
    let a = h.algebra();
    let w = certify_nilpotent(a).ok_or_else(|| Error::internal("k[Z/2] has a nil witness at p = 2"))?;
    let f = TensorElement::from_coords(a, 1, vec![1, 1])?;
    let df = cobar_differential(&h, &f)?;
    let exp_df = w.exp_series(&df)?;
    let closed = TensorElement::one(a, 2)?.add(&f.outer(&f)?)?;
    report.push("demo.f", &f);
    report.push("demo.df", &df);
    report.push("demo.exp_df", &exp_df);
    report.push("demo.exp_df.closed_form", "1 + (1+g)⊗(1+g)");
    report.flag("check.exp_df_matches_closed_form", exp_df == closed);
    let exp_f = w.exp_series(&f)?;
    let d_exp_f = multiplicative_coboundary(&MultiplicativeCochain::new(&h, exp_f.clone())?)?;
    report.push("demo.exp_f", &exp_f);
    report.push("demo.d_exp_f", d_exp_f.value());
    report.flag("check.d_exp_f_trivial", d_exp_f.value().is_one());
    let differ = exp_df != *d_exp_f.value();
    report.flag("check.inequality", differ);
    Ok(exp_df == closed && d_exp_f.value().is_one() && differ)
}

fn h3_basis(report: &mut Report) -> Result<bool> {
    let cases: [&[(u32, u32)]; 4] = [&[(3, 1)], &[(3, 1), (3, 1)], &[(3, 2)], &[(2, 1), (2, 1), (2, 1)]];
    let mut ok = true;
    for case in cases {
        let rs: Vec<String> = case.iter().map(|&(_, r)| r.to_string()).collect();
        let key = format!("demo.p{}_r{}", case[0].0, rs.join("_"));
        let (h, basis) = canonical_h3_basis(case)?;
        let n = case.len();
        let expected = n * n + n * n.saturating_sub(1) * n.saturating_sub(2) / 6;
        let complex = BarComplex::new(h.algebra());
        let dim = complex.cohomology(3)?.dim;
        let mut cocycles = true;
        for c in &basis {
            cocycles &= c.is_cocycle()?;
        }
        let independent = complex.classes_independent(&basis)?;
        report.push(format!("{key}.count"), basis.len());
        report.push(format!("{key}.expected"), expected);
        report.push(format!("{key}.dim"), dim);
        report.flag(format!("{key}.cocycles"), cocycles);
        report.flag(format!("{key}.independent"), independent);
        for (k, c) in basis.iter().enumerate() {
            report.push(format!("{key}.element.{}", k + 1), c);
        }
        ok &= basis.len() == expected && dim == expected && cocycles && independent;
    }
    Ok(ok)
}

fn random_antisymmetric(rng: &mut ChaCha8Rng, p: u32, d: usize) -> Vec<Vec<Scalar>> {
    let mut s = vec![vec![0; d]; d];
    for i in 0..d {
        for j in i + 1..d {
            let v = rng.gen_range(0..p);
            s[i][j] = v;
            s[j][i] = (p - v) % p;
        }
    }
    s
}

fn skew_twists(report: &mut Report, seed: u64, trials: usize) -> Result<bool> {
    report.push("demo.seed", seed);
    report.push("demo.trials", trials);
    let ud = u_abelian_dual(3, 2)?;
    let s = vec![vec![0, 1], vec![2, 0]];
    let j = skew_twist(&ud, &s)?;
    let example_ok = check_twist(&ud, &j)?.all_passed() && minimality_check(&j)?;
    report.push("demo.example.s", "[[0,1],[2,0]]");
    report.push("demo.example.twist", &j);
    report.push("demo.example.minimal", verdict(minimality_check(&j)?));
    let mut ok = example_ok;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let cases = [(3u32, 2usize), (3, 3), (5, 2)];
    let mut counts = [[0usize; 5]; 3];
    for t in 0..trials {
        let k = t % cases.len();
        let (p, d) = cases[k];
        let ud = u_abelian_dual(p, d)?;
        let s = random_antisymmetric(&mut rng, p, d);
        let j = skew_twist(&ud, &s)?;
        let twist = check_twist(&ud, &j)?.all_passed();
        let field = ud.algebra().field();
        let nondegenerate = Matrix::from_fn(field, d, d, |r, c| s[r][c]).rank() == d;
        let minimal = minimality_check(&j)?;
        let c = &mut counts[k];
        c[0] += 1;
        c[1] += twist as usize;
        c[2] += nondegenerate as usize;
        c[3] += minimal as usize;
        c[4] += (nondegenerate == minimal) as usize;
    }
    for ((p, d), c) in cases.iter().zip(&counts) {
        let key = format!("demo.p{p}_dim{d}");
        report.push(format!("{key}.trials"), c[0]);
        report.push(format!("{key}.twists"), c[1]);
        report.push(format!("{key}.nondegenerate"), c[2]);
        report.push(format!("{key}.minimal"), c[3]);
        report.push(format!("{key}.agree"), c[4]);
        ok &= c[1] == c[0] && c[4] == c[0];
    }
    Ok(ok)
}

fn trichotomy(report: &mut Report) -> Result<bool> {
    let budget = 1 << 20;
    let group = make_cyclic_group_algebra(3, 1)?;
    let alpha = make_alpha(3, 1)?;
    let with_phi = associator_phi(3, 1)?;
    let g = count_grouplikes(&group, budget)?;
    let a = count_grouplikes(&alpha, budget)?;
    let ap = count_grouplikes(&with_phi.hopf, budget)?;
    report.push("demo.group.grouplikes", g);
    report.push("demo.alpha.grouplikes", a);
    report.push("demo.alpha_phi.grouplikes", ap);
    let name = |t: &Trivialization| match t {
        Trivialization::Trivialized { .. } => "trivialized",
        Trivialization::Obstructed { .. } => "obstructed",
    };
    let plain = qhopf_core::cohomology::trivialize_associator(&QuasiData::trivial(alpha))?;
    let twisted = qhopf_core::cohomology::trivialize_associator(&with_phi)?;
    report.push("demo.alpha.trivialize", name(&plain));
    report.push("demo.alpha_phi.trivialize", name(&twisted));
    let first = g != a && g != ap;
    let second = name(&plain) != name(&twisted);
    report.flag("check.group_vs_alpha", first);
    report.flag("check.alpha_vs_alpha_phi", second);
    Ok(first && second)
}

fn graded(report: &mut Report) -> Result<bool> {
    let h = cyclic_group_algebra(3, 9)?;
    let gr = h.associated_graded()?;
    report.push("demo.dim", h.dim());
    report.push("demo.gr.dim", gr.hopf.dim());
    report.push("demo.gr.degrees", list(&gr.degrees));
    let axioms = gr.hopf.check_bialgebra();
    report.checks("demo.gr.check.bialgebra", &axioms);
    let radically = gr.hopf.is_radically_graded()?;
    let cocommutative = gr.hopf.is_cocommutative();
    let primitively = gr.is_primitively_generated();
    report.flag("demo.gr.radically_graded", radically);
    report.flag("demo.gr.cocommutative", cocommutative);
    report.flag("demo.gr.primitively_generated", primitively);
    Ok(h.dim() == gr.hopf.dim() && axioms.all_passed() && radically && cocommutative && primitively)
}
