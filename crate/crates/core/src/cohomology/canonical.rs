//! Explicit cocycles: `ξ(f)`, `β` and the `γ_{ij}` basis of `H³`.

use crate::catalog::alpha_product;
use crate::error::{Error, Result};
use crate::field::Scalar;
use crate::hopf::HopfStructure;
use crate::tensor::TensorElement;

use super::additive::AdditiveCochain;
use super::bridge::CochainBridge;

/// `Σ_{i=1}^{p-1} (1/i) C(p-1, i-1) f^i ⊗ f^{p-i}` as a tensor in `B⊗B`.
pub fn xi_tensor(b: &HopfStructure, f: &[Scalar]) -> Result<TensorElement> {
    let a = b.algebra();
    if f.len() != a.dim() || !b.is_primitive(f) {
        return Err(Error::input("ξ is defined on primitive elements"));
    }
    let field = a.field();
    let p = field.p() as u64;
    let mut out = TensorElement::zero(a, 2)?;
    for i in 1..p {
        let c = field.mul(
            field.inv(i as Scalar).expect("i < p"),
            field.binomial(p - 1, i - 1),
        );
        let term = TensorElement::pure(a, &[a.pow(f, i), a.pow(f, p - i)])?;
        out = out.add(&term.scale(c))?;
    }
    Ok(out)
}

/// `ξ(f)` as a normalized 2-cochain on the dual algebra `B*`.
pub fn xi_map(b: &HopfStructure, f: &[Scalar]) -> Result<AdditiveCochain> {
    let t = xi_tensor(b, f)?;
    CochainBridge::new(b)?.to_cochain(&t)
}

/// `R = O(α_{p,r_1} × … × α_{p,r_n})` together with the cocycles
/// `γ_{ij} = x_i* ⊗ β_j` (`i, j` in order) followed by
/// `x_i*⊗x_j*⊗x_l*` for `i < j < l`, where
/// `β_j = Σ_{l=1}^{N_j-1} x_j^{l*} ⊗ x_j^{(N_j-l)*}`, `N_j = p^{r_j}`.
pub fn canonical_h3_basis(g_spec: &[(u32, u32)]) -> Result<(HopfStructure, Vec<AdditiveCochain>)> {
    let Some(&(p, _)) = g_spec.first() else {
        return Err(Error::input("need at least one factor"));
    };
    if g_spec.iter().any(|&(q, _)| q != p) {
        return Err(Error::input("all factors must share the characteristic"));
    }
    let rs: Vec<u32> = g_spec.iter().map(|&(_, r)| r).collect();
    let h = alpha_product(p, &rs)?;
    let r = h.algebra().clone();
    let sizes: Vec<usize> = rs.iter().map(|&e| (p as usize).pow(e)).collect();
    let n = sizes.len();
    // index of x_j^e in the tensor-product basis
    let monomial = |j: usize, e: usize| -> usize {
        sizes.iter().enumerate().fold(0, |acc, (k, &s)| acc * s + if k == j { e } else { 0 })
    };
    let functional = |j: usize, e: usize| AdditiveCochain::basis_functional(&r, monomial(j, e));
    let beta = |j: usize| -> Result<AdditiveCochain> {
        let mut sum = AdditiveCochain::zero(&r, 2)?;
        for l in 1..sizes[j] {
            let term = AdditiveCochain::product(&r, &[functional(j, l), functional(j, sizes[j] - l)])?;
            sum = sum.add(&term)?;
        }
        Ok(sum)
    };
    let mut out = Vec::new();
    for i in 0..n {
        for j in 0..n {
            let b = beta(j)?;
            let xi = functional(i, 1);
            let m = xi.len();
            let mut coords = Vec::with_capacity(m * b.coords().len());
            for &c in &xi {
                coords.extend(b.coords().iter().map(|&v| r.field().mul(c, v)));
            }
            out.push(AdditiveCochain::new(&r, 3, coords)?);
        }
    }
    for i in 0..n {
        for j in i + 1..n {
            for l in j + 1..n {
                out.push(AdditiveCochain::product(
                    &r,
                    &[functional(i, 1), functional(j, 1), functional(l, 1)],
                )?);
            }
        }
    }
    Ok((h, out))
}
