//! Associators, R-matrices, twists and pseudotwists.

use std::sync::Arc;

use crate::algebra::Algebra;
use crate::error::{Error, Result};
use crate::field::Scalar;
use crate::hopf::HopfStructure;
use crate::linalg::sparse_from_dense;
use crate::report::AxiomReport;
use crate::tensor::TensorElement;

/// A bialgebra together with an associator `Φ ∈ H^{⊗3}` and an optional
/// R-matrix `R ∈ H^{⊗2}`.
#[derive(Clone, Debug)]
pub struct QuasiData {
    pub hopf: HopfStructure,
    pub phi: TensorElement,
    pub r: Option<TensorElement>,
}

impl QuasiData {
    pub fn new(hopf: HopfStructure, phi: TensorElement, r: Option<TensorElement>) -> Result<Self> {
        if phi.arity() != 3 {
            return Err(Error::input("associator must have arity 3"));
        }
        if **phi.algebra() != **hopf.algebra() {
            return Err(Error::input("associator lives over a different algebra"));
        }
        phi.invert()?;
        if let Some(r) = &r {
            if r.arity() != 2 {
                return Err(Error::input("R-matrix must have arity 2"));
            }
            if **r.algebra() != **hopf.algebra() {
                return Err(Error::input("R-matrix lives over a different algebra"));
            }
            r.invert()?;
        }
        Ok(Self { hopf, phi, r })
    }

    /// `Φ = 1⊗1⊗1`, no R-matrix.
    pub fn trivial(hopf: HopfStructure) -> Self {
        let phi = TensorElement::one(hopf.algebra(), 3).expect("arity 3");
        Self { hopf, phi, r: None }
    }

    pub fn with_rmatrix(mut self, r: TensorElement) -> Result<Self> {
        self.r = Some(r);
        Self::new(self.hopf, self.phi, self.r)
    }

    pub fn algebra(&self) -> &Arc<Algebra> {
        self.hopf.algebra()
    }

    fn phi_perm(&self, perm: &[usize]) -> Result<TensorElement> {
        self.phi.permute_slots(perm)
    }

    fn require_r(&self) -> Result<&TensorElement> {
        self.r
            .as_ref()
            .ok_or_else(|| Error::input("no R-matrix is attached"))
    }

    /// Pentagon identity in `H^{⊗4}`.
    pub fn check_pentagon(&self) -> Result<AxiomReport> {
        let h = &self.hopf;
        let phi = &self.phi;
        let lhs = h.apply_comul(phi, 2)?.mul(&h.apply_comul(phi, 0)?)?;
        let rhs = phi
            .insert_unit(0)?
            .mul(&h.apply_comul(phi, 1)?)?
            .mul(&phi.insert_unit(3)?)?;
        let mut report = AxiomReport::new();
        report.compare("pentagon", &lhs, &rhs);
        Ok(report)
    }

    /// The three counit contractions of `Φ` equal `1⊗1`.
    pub fn check_counit_normalization(&self) -> Result<AxiomReport> {
        let one = TensorElement::one(self.algebra(), 2)?;
        let mut report = AxiomReport::new();
        for slot in 0..3 {
            let contracted = self.phi.apply_counit(slot)?;
            report.compare(&format!("counit_normalization.slot{}", slot + 1), &contracted, &one);
        }
        Ok(report)
    }

    /// `Φ (Δ⊗id)Δ(h) Φ^{-1} = (id⊗Δ)Δ(h)` on basis elements.
    pub fn check_quasi_coassoc(&self) -> Result<AxiomReport> {
        let h = &self.hopf;
        let phi_inv = self.phi.invert()?;
        let mut pairs = Vec::with_capacity(h.dim());
        for i in 0..h.dim() {
            let delta = h.comul_basis(i);
            let lhs = self.phi.mul(&h.apply_comul(&delta, 0)?)?.mul(&phi_inv)?;
            let rhs = h.apply_comul(&delta, 1)?;
            pairs.push((lhs, rhs));
        }
        let mut report = AxiomReport::new();
        report.compare_all("quasi_coassociativity", pairs);
        Ok(report)
    }

    /// Quasi-cocommutativity, triangularity and both hexagons.
    pub fn check_rmatrix(&self) -> Result<AxiomReport> {
        let r = self.require_r()?;
        let h = &self.hopf;
        let r_inv = r.invert()?;
        let mut report = AxiomReport::new();

        let mut pairs = Vec::with_capacity(h.dim());
        for i in 0..h.dim() {
            let delta = h.comul_basis(i);
            let lhs = delta.permute_slots(&[2, 1])?;
            let rhs = r.mul(&delta)?.mul(&r_inv)?;
            pairs.push((lhs, rhs));
        }
        report.compare_all("quasi_cocommutativity", pairs);
        report.compare("triangularity", &r_inv, &r.permute_slots(&[2, 1])?);

        let r12 = r.embed(&[0, 1], 3)?;
        let r13 = r.embed(&[0, 2], 3)?;
        let r23 = r.embed(&[1, 2], 3)?;
        let hex1 = self
            .phi_perm(&[3, 1, 2])?
            .mul(&r13)?
            .mul(&self.phi_perm(&[1, 3, 2])?.invert()?)?
            .mul(&r23)?
            .mul(&self.phi)?;
        report.compare("hexagon1", &h.apply_comul(r, 0)?, &hex1);
        let hex2 = self
            .phi_perm(&[2, 3, 1])?
            .invert()?
            .mul(&r13)?
            .mul(&self.phi_perm(&[2, 1, 3])?)?
            .mul(&r12)?
            .mul(&self.phi.invert()?)?;
        report.compare("hexagon2", &h.apply_comul(r, 1)?, &hex2);
        Ok(report)
    }

    /// Quasi Yang-Baxter equation.
    pub fn check_qybe(&self) -> Result<AxiomReport> {
        let r = self.require_r()?;
        let r12 = r.embed(&[0, 1], 3)?;
        let r13 = r.embed(&[0, 2], 3)?;
        let r23 = r.embed(&[1, 2], 3)?;
        let lhs = r12
            .mul(&self.phi_perm(&[3, 1, 2])?)?
            .mul(&r13)?
            .mul(&self.phi_perm(&[1, 3, 2])?.invert()?)?
            .mul(&r23)?
            .mul(&self.phi)?;
        let rhs = self
            .phi_perm(&[3, 2, 1])?
            .mul(&r23)?
            .mul(&self.phi_perm(&[2, 3, 1])?.invert()?)?
            .mul(&r13)?
            .mul(&self.phi_perm(&[2, 1, 3])?)?
            .mul(&r12)?;
        let mut report = AxiomReport::new();
        report.compare("qybe", &lhs, &rhs);
        Ok(report)
    }

    /// Every applicable check.
    pub fn check_all(&self) -> Result<AxiomReport> {
        let mut report = self.check_pentagon()?;
        report.extend(self.check_counit_normalization()?);
        report.extend(self.check_quasi_coassoc()?);
        if self.r.is_some() {
            report.extend(self.check_rmatrix()?);
            report.extend(self.check_qybe()?);
        }
        Ok(report)
    }
}

/// Both counit contractions of `j` equal `1`.
pub fn is_pseudotwist_normalized(j: &TensorElement) -> Result<bool> {
    if j.arity() != 2 {
        return Err(Error::input("a pseudotwist has arity 2"));
    }
    let one = TensorElement::one(j.algebra(), 1)?;
    Ok(j.apply_counit(0)? == one && j.apply_counit(1)? == one)
}

fn require_pseudotwist(j: &TensorElement) -> Result<()> {
    if !is_pseudotwist_normalized(j)? {
        return Err(Error::input(
            "not a pseudotwist: counit contractions differ from 1",
        ));
    }
    Ok(())
}

/// The twist equation `(id⊗Δ)(J)(1⊗J) = (Δ⊗id)(J)(J⊗1)`.
pub fn check_twist(h: &HopfStructure, j: &TensorElement) -> Result<AxiomReport> {
    require_pseudotwist(j)?;
    j.invert()?;
    let lhs = h.apply_comul(j, 1)?.mul(&j.insert_unit(0)?)?;
    let rhs = h.apply_comul(j, 0)?.mul(&j.insert_unit(2)?)?;
    let mut report = AxiomReport::new();
    report.compare("twist", &lhs, &rhs);
    Ok(report)
}

/// Transforms `(Δ, Φ, R)` by a pseudotwist `J`:
/// `Δ^J = J^{-1}ΔJ`, `Φ^J = (1⊗J^{-1})(id⊗Δ)(J^{-1})Φ(Δ⊗id)(J)(J⊗1)`,
/// `R^J = J_{21}^{-1}RJ`.
pub fn pseudotwist_transform(q: &QuasiData, j: &TensorElement) -> Result<QuasiData> {
    require_pseudotwist(j)?;
    let h = &q.hopf;
    let j_inv = j.invert()?;
    let mut comul = Vec::with_capacity(h.dim());
    for i in 0..h.dim() {
        let conj = j_inv.mul(&h.comul_basis(i))?.mul(j)?;
        comul.push(sparse_from_dense(conj.coords()));
    }
    let new_hopf = h.with_comul(comul)?;
    let phi = j_inv
        .insert_unit(0)?
        .mul(&h.apply_comul(&j_inv, 1)?)?
        .mul(&q.phi)?
        .mul(&h.apply_comul(j, 0)?)?
        .mul(&j.insert_unit(2)?)?;
    let r = match &q.r {
        Some(r) => Some(j.permute_slots(&[2, 1])?.invert()?.mul(r)?.mul(j)?),
        None => None,
    };
    Ok(QuasiData {
        hopf: new_hopf,
        phi,
        r,
    })
}

/// Lifts an idempotent modulo the radical by iterating `e ↦ 3e² − 2e³`.
pub fn lift_idempotent(a: &Arc<Algebra>, e0: &[Scalar]) -> Result<Vec<Scalar>> {
    if e0.len() != a.dim() {
        return Err(Error::input("element has wrong dimension"));
    }
    let defect = a.sub(&a.mul(e0, e0), e0);
    let defect_t = TensorElement::from_coords(a, 1, defect)?;
    if !defect_t.is_nilpotent()? {
        return Err(Error::NotIdempotentModRadical);
    }
    let f = a.field();
    let (three, two) = (f.from_i64(3), f.from_i64(2));
    let mut e = e0.to_vec();
    for _ in 0..=usize::BITS {
        let e2 = a.mul(&e, &e);
        if e2 == e {
            return Ok(e);
        }
        let e3 = a.mul(&e2, &e);
        e = a.sub(&a.scale(three, &e2), &a.scale(two, &e3));
    }
    Err(Error::internal("idempotent lifting did not converge"))
}

/// Square root of `1 + h` in `1 + Rad` for nilpotent `h`, using the
/// binomial series with `binom(1/2, i)` reduced mod p.
pub fn sqrt_one_plus_tensor(h: &TensorElement) -> Result<TensorElement> {
    let f = h.algebra().field();
    if f.p() == 2 {
        return Err(Error::unsupported("square roots of unipotent elements need p > 2"));
    }
    if !h.is_nilpotent()? {
        return Err(Error::input("element is not in the radical"));
    }
    let one = TensorElement::one(h.algebra(), h.arity())?;
    let mut sum = one.clone();
    let mut power = one;
    let mut i = 0u64;
    loop {
        i += 1;
        power = power.mul(h)?;
        if power.is_zero() {
            break;
        }
        sum = sum.add(&power.scale(f.binomial_half(i)?))?;
    }
    Ok(sum)
}

pub fn sqrt_one_plus(a: &Arc<Algebra>, h: &[Scalar]) -> Result<Vec<Scalar>> {
    let t = TensorElement::from_coords(a, 1, h.to_vec())?;
    Ok(sqrt_one_plus_tensor(&t)?.into_coords())
}

/// `J = R_{21}^{1/2}` for a unipotent triangular `R` with trivial `Φ`.
/// Then `J_{21}^{-1} R J = 1⊗1`.
pub fn trivialize_rmatrix(q: &QuasiData) -> Result<TensorElement> {
    if q.algebra().p() == 2 {
        return Err(Error::unsupported(
            "R-matrix trivialization by square roots needs p > 2",
        ));
    }
    let r = q.require_r()?;
    if !q.phi.is_one() {
        return Err(Error::input("R-matrix trivialization requires a trivial associator"));
    }
    let one = TensorElement::one(q.algebra(), 2)?;
    let r21 = r.permute_slots(&[2, 1])?;
    let h = r21.sub(&one)?;
    if !h.is_nilpotent()? {
        return Err(Error::input("R-matrix is not unipotent"));
    }
    let j = sqrt_one_plus_tensor(&h)?;
    let check = j.permute_slots(&[2, 1])?.invert()?.mul(r)?.mul(&j)?;
    if !check.is_one() {
        return Err(Error::internal(
            "square root does not trivialize the R-matrix; is R triangular?",
        ));
    }
    Ok(j)
}

/// `t_{312} − t_{132} + t_{123} + t_{231} − t_{213} − t_{321}`.
pub fn alt3(t: &TensorElement) -> Result<TensorElement> {
    if t.arity() != 3 {
        return Err(Error::input("alt3 takes an arity-3 tensor"));
    }
    let mut out = TensorElement::zero(t.algebra(), 3)?;
    for (perm, sign) in [
        ([3, 1, 2], true),
        ([1, 3, 2], false),
        ([1, 2, 3], true),
        ([2, 3, 1], true),
        ([2, 1, 3], false),
        ([3, 2, 1], false),
    ] {
        let term = t.permute_slots(&perm)?;
        out = if sign { out.add(&term)? } else { out.sub(&term)? };
    }
    Ok(out)
}
