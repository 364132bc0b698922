//! Named constructors for the algebras, tensors and maps used as fixtures.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::algebra::Algebra;
use crate::error::{Error, Result};
use crate::field::{PrimeField, Scalar};
use crate::hopf::HopfStructure;
use crate::linalg::{sparse_from_dense, Matrix, SparseVec};
use crate::quasihopf::QuasiData;
use crate::tensor::TensorElement;
use crate::truncexp::certify_nilpotent;

fn power_label(var: &str, e: usize) -> String {
    match e {
        0 => "1".to_string(),
        1 => var.to_string(),
        _ => format!("{var}^{e}"),
    }
}

fn monomial_label(vars: &[String], exps: &[usize]) -> String {
    let parts: Vec<String> = vars
        .iter()
        .zip(exps)
        .filter(|(_, &e)| e > 0)
        .map(|(v, &e)| power_label(v, e))
        .collect();
    if parts.is_empty() {
        "1".to_string()
    } else {
        parts.concat()
    }
}

fn variable_names(d: usize) -> Vec<String> {
    if d <= 3 {
        ["x", "y", "z"][..d].iter().map(|s| s.to_string()).collect()
    } else {
        (1..=d).map(|i| format!("x{i}")).collect()
    }
}

fn unit_counit(n: usize) -> Vec<Scalar> {
    let mut c = vec![0; n];
    c[0] = 1;
    c
}

/// `O(α_{p,r}) = k[x]/(x^{p^r})` with `x` primitive.
pub fn make_alpha(p: u32, r: u32) -> Result<HopfStructure> {
    alpha_in(p, r, "x")
}

fn alpha_in(p: u32, r: u32, var: &str) -> Result<HopfStructure> {
    let f = PrimeField::new(p)?;
    if r == 0 {
        return Err(Error::input("α_{p,r} needs r ≥ 1"));
    }
    let n = (p as usize)
        .checked_pow(r)
        .filter(|&n| n <= 1 << 12)
        .ok_or_else(|| Error::resource("p^r is too large"))?;
    let labels = (0..n).map(|k| power_label(var, k)).collect();
    let entries: Vec<_> = (0..n)
        .flat_map(|i| (0..n - i).map(move |j| (i, j, i + j, 1)))
        .collect();
    let alg = Arc::new(Algebra::new(f, labels, entries, unit_counit(n))?);
    let comul = (0..n).flat_map(|m| {
        (0..=m).filter_map(move |k| {
            let c = f.binomial(m as u64, k as u64);
            (c != 0).then_some((m, k, m - k, c))
        })
    });
    HopfStructure::from_entries(alg, comul.collect::<Vec<_>>())
}

/// `O(α_{p,r})^*`, with divided-power comultiplication.
pub fn make_alpha_dual(p: u32, r: u32) -> Result<HopfStructure> {
    make_alpha(p, r)?.dual()
}

/// `O(α_{p,r_1} × … × α_{p,r_n})`, generators `x1, …, xn` when `n > 1`.
pub fn alpha_product(p: u32, rs: &[u32]) -> Result<HopfStructure> {
    let (first, rest) = rs
        .split_first()
        .ok_or_else(|| Error::input("need at least one factor"))?;
    let var = |i: usize| if rs.len() == 1 { "x".to_string() } else { format!("x{}", i + 1) };
    let mut h = alpha_in(p, *first, &var(0))?;
    for (i, &r) in rest.iter().enumerate() {
        h = h.tensor_product(&alpha_in(p, r, &var(i + 1))?)?;
    }
    Ok(h)
}

/// The group algebra `k[ℤ/n]` with grouplike generator `g`.
pub fn cyclic_group_algebra(p: u32, order: usize) -> Result<HopfStructure> {
    let f = PrimeField::new(p)?;
    if order == 0 || order > 1 << 12 {
        return Err(Error::input("group order must be between 1 and 4096"));
    }
    let labels = (0..order).map(|k| power_label("g", k)).collect();
    let entries: Vec<_> = (0..order)
        .flat_map(|i| (0..order).map(move |j| (i, j, (i + j) % order, 1)))
        .collect();
    let alg = Arc::new(Algebra::new(f, labels, entries, vec![1; order])?);
    HopfStructure::from_entries(alg, (0..order).map(|i| (i, i, i, 1)).collect::<Vec<_>>())
}

/// `k[ℤ/p^n]`.
pub fn make_cyclic_group_algebra(p: u32, n: u32) -> Result<HopfStructure> {
    let order = (p as usize)
        .checked_pow(n)
        .ok_or_else(|| Error::resource("p^n is too large"))?;
    cyclic_group_algebra(p, order)
}

/// Functions on `ℤ/n`, spanned by the point indicators `δ_k`.
pub fn cyclic_function_algebra(p: u32, order: usize) -> Result<HopfStructure> {
    let f = PrimeField::new(p)?;
    if order == 0 || order > 1 << 12 {
        return Err(Error::input("group order must be between 1 and 4096"));
    }
    let labels = (0..order).map(|k| format!("d{k}")).collect();
    let entries: Vec<_> = (0..order).map(|i| (i, i, i, 1)).collect();
    let alg = Arc::new(Algebra::new(f, labels, entries, unit_counit(order))?);
    let comul: Vec<_> = (0..order)
        .flat_map(|k| (0..order).map(move |i| (k, i, (k + order - i) % order, 1)))
        .collect();
    HopfStructure::from_entries(alg, comul)
}

/// The restricted enveloping algebra `u(𝔤)` of an abelian `𝔤` with basis
/// `x_1..x_d`, where `p_power[i]` lists the coordinates of `x_i^{[p]}`.
/// Generator `x_a` sits at index `p^{d-1-a}`.
pub fn make_u_abelian(p: u32, dim: usize, p_power: &[Vec<Scalar>]) -> Result<HopfStructure> {
    let f = PrimeField::new(p)?;
    if dim == 0 {
        return Err(Error::input("𝔤 must be nonzero"));
    }
    if p_power.len() != dim || p_power.iter().any(|row| row.len() != dim) {
        return Err(Error::input(format!("p-power map must be a {dim}×{dim} matrix")));
    }
    let pu = p as usize;
    let n = pu
        .checked_pow(dim as u32)
        .filter(|&n| n <= 1 << 12)
        .ok_or_else(|| Error::resource("p^dim is too large"))?;
    let digits = |mut idx: usize| {
        let mut e = vec![0usize; dim];
        for a in (0..dim).rev() {
            e[a] = idx % pu;
            idx /= pu;
        }
        e
    };
    let index = |e: &[usize]| e.iter().fold(0, |acc, &x| acc * pu + x);
    let reduce = |start: BTreeMap<Vec<usize>, Scalar>| -> Vec<Scalar> {
        let mut pending = start;
        let mut out = vec![0; n];
        while let Some((mono, c)) = pending.pop_first() {
            if c == 0 {
                continue;
            }
            match mono.iter().position(|&e| e >= pu) {
                None => {
                    let i = index(&mono);
                    out[i] = f.add(out[i], c);
                }
                Some(a) => {
                    for (b, &coef) in p_power[a].iter().enumerate() {
                        let coef = f.reduce(coef as u64);
                        if coef == 0 {
                            continue;
                        }
                        let mut next = mono.clone();
                        next[a] -= pu;
                        next[b] += 1;
                        let slot = pending.entry(next).or_insert(0);
                        *slot = f.add(*slot, f.mul(c, coef));
                    }
                }
            }
        }
        out
    };
    let mut table = Vec::with_capacity(n * n);
    for i in 0..n {
        let ei = digits(i);
        for j in 0..n {
            let mono: Vec<usize> = ei.iter().zip(digits(j)).map(|(a, b)| a + b).collect();
            table.push(sparse_from_dense(&reduce(BTreeMap::from([(mono, 1)]))));
        }
    }
    let vars = variable_names(dim);
    let labels = (0..n).map(|i| monomial_label(&vars, &digits(i))).collect();
    let counit = unit_counit(n);
    let alg = Algebra::from_table(f, labels, table, counit)
        .map_err(|e| Error::input(format!("inconsistent p-power map: {e}")))?;
    let mut comul = Vec::with_capacity(n);
    for i in 0..n {
        let e = digits(i);
        let mut images: SparseVec = Vec::new();
        for j in 0..n {
            let b = digits(j);
            if b.iter().zip(&e).any(|(x, y)| x > y) {
                continue;
            }
            let rest: Vec<usize> = e.iter().zip(&b).map(|(x, y)| x - y).collect();
            let c = e
                .iter()
                .zip(&b)
                .fold(1, |acc, (&x, &y)| f.mul(acc, f.binomial(x as u64, y as u64)));
            if c != 0 {
                images.push((j * n + index(&rest), c));
            }
        }
        images.sort_unstable();
        comul.push(images);
    }
    let h = HopfStructure::new(Arc::new(alg), comul)?;
    if !h.check_bialgebra().all_passed() {
        return Err(Error::input("p-power map does not give a bialgebra"));
    }
    Ok(h)
}

/// `u(𝔤)` with zero p-power map.
pub fn make_u_abelian_zero(p: u32, dim: usize) -> Result<HopfStructure> {
    make_u_abelian(p, dim, &vec![vec![0; dim]; dim])
}

/// `u(𝔤)^*` for abelian `𝔤` with zero p-power map.
pub fn u_abelian_dual(p: u32, dim: usize) -> Result<HopfStructure> {
    make_u_abelian_zero(p, dim)?.dual()
}

/// Index of the generator `x_a` (or its dual `x_a*`) in the monomial basis.
pub fn generator_index(p: u32, dim: usize, a: usize) -> usize {
    (p as usize).pow((dim - 1 - a) as u32)
}

/// `R_ε = ½(1⊗1 + 1⊗ε + ε⊗1 − ε⊗ε)` for a grouplike involution `ε`.
pub fn r_epsilon(h: &HopfStructure, eps: &[Scalar]) -> Result<TensorElement> {
    let a = h.algebra();
    let f = a.field();
    if f.p() == 2 {
        return Err(Error::unsupported("R_ε divides by 2"));
    }
    if eps.len() != a.dim() || !h.is_grouplike(eps) {
        return Err(Error::input("ε must be grouplike"));
    }
    if a.mul(eps, eps) != a.one() {
        return Err(Error::input("ε must square to 1"));
    }
    let one = a.one();
    let t = |x: &[Scalar], y: &[Scalar]| TensorElement::pure(a, &[x.to_vec(), y.to_vec()]);
    let sum = t(&one, &one)?
        .add(&t(&one, eps)?)?
        .add(&t(eps, &one)?)?
        .sub(&t(eps, eps)?)?;
    Ok(sum.scale(f.inv(2).expect("p odd")))
}

/// `Φ_s = 1 + Σ_{i=1}^{p-1} (s/i) C(p-1, i-1) x⊗x^i⊗x^{p-i}` over
/// `O(α_p)`.
pub fn associator_phi(p: u32, s: Scalar) -> Result<QuasiData> {
    let h = make_alpha(p, 1)?;
    let phi = associator_tensor(&h, s)?;
    QuasiData::new(h, phi, None)
}

pub fn associator_tensor(h: &HopfStructure, s: Scalar) -> Result<TensorElement> {
    let a = h.algebra();
    let f = a.field();
    let p = f.p() as usize;
    if a.dim() != p {
        return Err(Error::input("associator formula lives over O(α_p)"));
    }
    let s = f.reduce(s as u64);
    let mut terms = vec![(vec![0, 0, 0], 1)];
    for i in 1..p {
        let c = f.mul(
            f.mul(s, f.inv(i as Scalar).expect("i < p")),
            f.binomial((p - 1) as u64, (i - 1) as u64),
        );
        if c != 0 {
            terms.push((vec![1, i, p - i], c));
        }
    }
    TensorElement::from_terms(a, 3, &terms)
}

/// The automorphism `x ↦ μx` of `O(α_p)` as images of the basis `x^k`.
pub fn scaling_automorphism(p: u32, mu: Scalar) -> Result<Vec<SparseVec>> {
    let f = PrimeField::new(p)?;
    let mu = f.reduce(mu as u64);
    if mu == 0 {
        return Err(Error::input("μ must be nonzero"));
    }
    Ok((0..p as usize)
        .map(|k| vec![(k, f.pow(mu, k as u64))])
        .collect())
}

/// `E(s̃)` with `s̃ = Σ s_{ab} x_a*⊗x_b*` on `u(𝔤)^*`.
pub fn skew_twist(u_dual: &HopfStructure, s: &[Vec<Scalar>]) -> Result<TensorElement> {
    let a = u_dual.algebra();
    let d = s.len();
    let p = a.p();
    if s.iter().any(|row| row.len() != d) || (p as usize).checked_pow(d as u32) != Some(a.dim()) {
        return Err(Error::input("s must be a square matrix of size dim 𝔤"));
    }
    let f = a.field();
    for i in 0..d {
        for j in 0..d {
            if f.add(f.reduce(s[i][j] as u64), f.reduce(s[j][i] as u64)) != 0 {
                return Err(Error::input("s must be antisymmetric"));
            }
        }
    }
    let w = certify_nilpotent(a)
        .ok_or_else(|| Error::unsupported("base algebra has no nil witness"))?;
    let mut terms = Vec::new();
    for i in 0..d {
        for j in 0..d {
            let c = f.reduce(s[i][j] as u64);
            if c != 0 {
                terms.push((
                    vec![generator_index(p, d, i), generator_index(p, d, j)],
                    c,
                ));
            }
        }
    }
    let st = TensorElement::from_terms(a, 2, &terms)?;
    w.exp(&st)
}

/// Whether the left tensorands of `J_{21}^{-1}J` span the algebra.
pub fn minimality_check(j: &TensorElement) -> Result<bool> {
    let a = j.algebra();
    let d = a.dim();
    let r = j.permute_slots(&[2, 1])?.invert()?.mul(j)?;
    let m = Matrix::from_fn(a.field(), d, d, |row, col| r.coords()[row * d + col]);
    Ok(m.rank() == d)
}

/// Counts grouplike elements by enumerating `p^dim` candidates.
pub fn count_grouplikes(h: &HopfStructure, budget: u64) -> Result<usize> {
    let d = h.dim();
    let p = h.algebra().p() as u64;
    let total = p
        .checked_pow(d as u32)
        .filter(|&t| t <= budget)
        .ok_or_else(|| Error::resource(format!("{p}^{d} candidates exceed the budget {budget}")))?;
    let mut count = 0;
    let mut v = vec![0 as Scalar; d];
    for mut idx in 0..total {
        for x in v.iter_mut().rev() {
            *x = (idx % p) as Scalar;
            idx /= p;
        }
        if h.is_grouplike(&v) {
            count += 1;
        }
    }
    Ok(count)
}
