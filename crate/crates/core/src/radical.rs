//! Radical filtration `A ⊃ I ⊃ I² ⊃ …` of a commutative algebra.

use std::sync::Arc;

use crate::algebra::Algebra;
use crate::error::{Error, Result};
use crate::field::Scalar;
use crate::linalg::{Matrix, Subspace};

#[derive(Clone, Debug)]
pub struct RadicalFiltration {
    algebra: Arc<Algebra>,
    // layers[r] = I^r, layers[0] = A, last entry is zero
    layers: Vec<Subspace>,
}

/// Computes the radical as the kernel of a power of Frobenius. Over GF(p)
/// the map `a ↦ a^p` of a commutative algebra is linear, and `I` is the
/// kernel of its `K`-th power for `p^K ≥ dim`.
pub fn radical(algebra: &Arc<Algebra>) -> Result<RadicalFiltration> {
    if !algebra.is_commutative() {
        return Err(Error::unsupported(
            "radical computation is restricted to commutative algebras",
        ));
    }
    let d = algebra.dim();
    let p = algebra.p() as u64;
    let mut q = p;
    while (q as usize) < d {
        q *= p;
    }
    let images: Vec<Vec<Scalar>> = (0..d)
        .map(|i| algebra.pow(&algebra.basis_vector(i), q))
        .collect();
    let frob = Matrix::from_columns(algebra.field(), d, &images);
    let rad_basis = frob.kernel_basis();

    let field = algebra.field();
    let full = Subspace::spanned_by(field, d, &(0..d).map(|i| algebra.basis_vector(i)).collect::<Vec<_>>());
    let rad = Subspace::spanned_by(field, d, &rad_basis);
    let mut layers = vec![full, rad];
    while layers.last().expect("nonempty").dim() > 0 {
        let prev = layers.last().expect("nonempty").basis();
        let mut next = Subspace::new(field, d);
        for a in &prev {
            for b in &rad_basis {
                next.insert(&algebra.mul(a, b));
            }
        }
        if layers.len() > d + 1 {
            return Err(Error::internal("radical filtration failed to terminate"));
        }
        layers.push(next);
    }
    Ok(RadicalFiltration {
        algebra: algebra.clone(),
        layers,
    })
}

impl RadicalFiltration {
    pub fn algebra(&self) -> &Arc<Algebra> {
        &self.algebra
    }

    /// `I^r`; the zero space for `r` past the nilpotency index.
    pub fn layer(&self, r: usize) -> &Subspace {
        let last = self.layers.len() - 1;
        &self.layers[r.min(last)]
    }

    pub fn layers(&self) -> &[Subspace] {
        &self.layers
    }

    /// Smallest `N` with `I^N = 0`.
    pub fn nilpotency_index(&self) -> usize {
        self.layers.len() - 1
    }

    pub fn radical_dim(&self) -> usize {
        self.layers[1].dim()
    }

    /// Largest `r` with `v ∈ I^r`; `None` for the zero vector.
    pub fn degree(&self, v: &[Scalar]) -> Option<usize> {
        if v.iter().all(|&x| x == 0) {
            return None;
        }
        (0..self.layers.len())
            .rev()
            .find(|&r| self.layers[r].contains(v))
    }

    /// Whether `I^a I^b ⊆ I^{a+b}` for all layers, checked on basis products.
    pub fn is_multiplicative(&self) -> bool {
        let n = self.layers.len();
        for a in 1..n {
            for b in 1..n {
                let target = self.layer(a + b);
                for x in self.layers[a].basis() {
                    for y in self.layers[b].basis() {
                        if !target.contains(&self.algebra.mul(&x, &y)) {
                            return false;
                        }
                    }
                }
            }
        }
        true
    }
}
