//! Additive (bar complex) and multiplicative cohomology, and the
//! degree-by-degree trivialization of associators.

mod additive;
mod bridge;
mod canonical;
mod multiplicative;

pub use additive::{AdditiveCochain, BarComplex, CohomologyReport, DEFAULT_BUDGET};
pub use bridge::{cobar_differential, CochainBridge};
pub use canonical::{canonical_h3_basis, xi_map, xi_tensor};
pub use multiplicative::{
    brute_force_h2_multiplicative, is_multiplicative_coboundary,
    is_multiplicative_coboundary_with_budget, is_multiplicative_cocycle,
    multiplicative_coboundary, trivialize_associator, trivialize_associator_with_budget,
    BruteForceReport, CoboundaryResult, MultiplicativeCochain, SearchSpace, Trivialization,
};

use std::sync::Arc;

use crate::algebra::Algebra;
use crate::error::Result;

/// `H^n(R, k)` with the default budget.
pub fn additive_cohomology(r: &Arc<Algebra>, n: usize) -> Result<CohomologyReport> {
    BarComplex::new(r).cohomology(n)
}
