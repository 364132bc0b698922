//! Tensors over a Hopf algebra `B` as normalized cochains over `R = B*`.

use std::sync::Arc;

use crate::algebra::Algebra;
use crate::error::{Error, Result};
use crate::field::Scalar;
use crate::hopf::HopfStructure;
use crate::linalg::{Matrix, SparseVec};
use crate::tensor::TensorElement;

use super::additive::{checked_power, AdditiveCochain};

/// Pairing between `I_B^{⊗n}` and normalized `n`-cochains on `R = B*`.
#[derive(Clone, Debug)]
pub struct CochainBridge {
    hopf: HopfStructure,
    dual: Arc<Algebra>,
    // to_ideal[i] = values of the B-basis vector e_i on the ideal basis of R
    to_ideal: Vec<SparseVec>,
    // from_ideal[k] = the element of I_B dual to the k-th ideal basis vector of R
    from_ideal: Vec<SparseVec>,
}

impl CochainBridge {
    pub fn new(hopf: &HopfStructure) -> Result<Self> {
        let dual = hopf.dual()?.algebra().clone();
        let b = hopf.algebra();
        let d = b.dim();
        let f = b.field();
        let ideal = dual.ideal_basis();
        let m = ideal.len();
        let to_ideal = (0..d)
            .map(|i| {
                (0..m)
                    .filter_map(|k| (ideal[k][i] != 0).then_some((k, ideal[k][i])))
                    .collect()
            })
            .collect();
        // rows: ideal pairings then the counit of B
        let mut stacked = Matrix::zeros(f, d, d);
        for (k, beta) in ideal.iter().enumerate() {
            for i in 0..d {
                stacked.set(k, i, beta[i]);
            }
        }
        for i in 0..d {
            stacked.set(m, i, b.counit()[i]);
        }
        let inv = stacked
            .inverse()
            .ok_or_else(|| Error::internal("pairing with the dual is degenerate"))?;
        let from_ideal = (0..m)
            .map(|k| {
                (0..d)
                    .filter_map(|i| {
                        let x = inv.get(i, k);
                        (x != 0).then_some((i, x))
                    })
                    .collect()
            })
            .collect();
        Ok(Self {
            hopf: hopf.clone(),
            dual,
            to_ideal,
            from_ideal,
        })
    }

    pub fn hopf(&self) -> &HopfStructure {
        &self.hopf
    }

    /// The augmented algebra `R = B*` carrying the cochains.
    pub fn dual(&self) -> &Arc<Algebra> {
        &self.dual
    }

    /// Restriction of the functional `⟨t, –⟩` to `I_R^{⊗n}`.
    pub fn to_cochain(&self, t: &TensorElement) -> Result<AdditiveCochain> {
        if **t.algebra() != **self.hopf.algebra() {
            return Err(Error::input("tensor does not live over the bridged Hopf algebra"));
        }
        let d = self.hopf.dim();
        let m = self.dual.augmentation().ideal_dim();
        let coords = slot_map(t.coords(), t.arity(), d, m, &self.to_ideal, self.dual.field())?;
        AdditiveCochain::new(&self.dual, t.arity(), coords)
    }

    /// The unique tensor in `I_B^{⊗n}` inducing the cochain `c`.
    pub fn from_cochain(&self, c: &AdditiveCochain) -> Result<TensorElement> {
        if **c.base() != *self.dual {
            return Err(Error::input("cochain does not live over the dual algebra"));
        }
        let d = self.hopf.dim();
        let m = self.dual.augmentation().ideal_dim();
        let coords = slot_map(c.coords(), c.degree(), m, d, &self.from_ideal, self.dual.field())?;
        TensorElement::from_coords(self.hopf.algebra(), c.degree(), coords)
    }
}

/// Applies the linear map `k^{in_dim} → k^{out_dim}` with column images
/// `images` in every slot of a tensor of arity `n`.
fn slot_map(
    coords: &[Scalar],
    n: usize,
    in_dim: usize,
    out_dim: usize,
    images: &[SparseVec],
    field: crate::field::PrimeField,
) -> Result<Vec<Scalar>> {
    let mut cur = coords.to_vec();
    for slot in 0..n {
        // slots before `slot` already have out_dim, later ones in_dim
        let head = checked_power(out_dim, slot)?;
        let tail = checked_power(in_dim, n - 1 - slot)?;
        let mut next = vec![0; head * out_dim * tail];
        for h in 0..head {
            for i in 0..in_dim {
                for (t, &c) in cur[(h * in_dim + i) * tail..(h * in_dim + i + 1) * tail]
                    .iter()
                    .enumerate()
                {
                    if c == 0 {
                        continue;
                    }
                    for &(o, v) in &images[i] {
                        let k = (h * out_dim + o) * tail + t;
                        next[k] = field.add(next[k], field.mul(c, v));
                    }
                }
            }
        }
        cur = next;
    }
    Ok(cur)
}

/// The cobar differential
/// `dt = 1⊗t + Σ_{i=1}^{n} (-1)^i Δ_i(t) + (-1)^{n+1} t⊗1`.
pub fn cobar_differential(h: &HopfStructure, t: &TensorElement) -> Result<TensorElement> {
    let n = t.arity();
    let mut out = t.insert_unit(0)?;
    for i in 1..=n {
        let term = h.apply_comul(t, i - 1)?;
        out = if i % 2 == 1 { out.sub(&term)? } else { out.add(&term)? };
    }
    let last = t.insert_unit(n)?;
    if n.is_multiple_of(2) {
        out.sub(&last)
    } else {
        out.add(&last)
    }
}
