//! Truncated exponential and logarithm on tensor powers of an augmented
//! commutative algebra in which every element of the augmentation ideal
//! has vanishing p-th power.

use std::sync::Arc;

use crate::algebra::Algebra;
use crate::error::{Error, Result};
use crate::linalg::{sparse_from_dense, SparseVec};
use crate::tensor::TensorElement;

const MAX_REFINEMENTS: usize = 128;

/// Certificate that `x^p = 0` for all `x` in the augmentation ideal.
#[derive(Clone, Debug)]
pub struct NilWitness {
    algebra: Arc<Algebra>,
    // slot maps from stored coordinates to the split basis {1} ∪ I-basis
    split_images: Vec<SparseVec>,
    // multiplication by split basis element k, as images of stored basis
    mult_images: Vec<Vec<SparseVec>>,
}

/// Checks `b^p = 0` on a basis of the augmentation ideal. For commutative
/// algebras this covers the whole ideal since `(x+y)^p = x^p + y^p`.
pub fn certify_nilpotent(a: &Arc<Algebra>) -> Option<NilWitness> {
    if !a.is_commutative() {
        return None;
    }
    let p = a.p() as u64;
    if a.ideal_basis().iter().any(|b| a.pow(b, p).iter().any(|&x| x != 0)) {
        return None;
    }
    let d = a.dim();
    let split_images = (0..d)
        .map(|i| {
            let (e, t) = a.split_augmented(&a.basis_vector(i));
            let mut v = Vec::with_capacity(d);
            v.push(e);
            v.extend(t);
            sparse_from_dense(&v)
        })
        .collect();
    let mut elements = vec![a.one()];
    elements.extend(a.ideal_basis().iter().cloned());
    let mult_images = elements
        .iter()
        .map(|b| {
            (0..d)
                .map(|i| sparse_from_dense(&a.mul(b, &a.basis_vector(i))))
                .collect()
        })
        .collect();
    Some(NilWitness {
        algebra: a.clone(),
        split_images,
        mult_images,
    })
}

impl NilWitness {
    pub fn algebra(&self) -> &Arc<Algebra> {
        &self.algebra
    }

    fn check_algebra(&self, t: &TensorElement) -> Result<()> {
        if **t.algebra() != *self.algebra {
            return Err(Error::input("tensor does not live over the certified algebra"));
        }
        Ok(())
    }

    /// Coordinates of `t` in the basis `{1} ∪ I` in every slot, index 0
    /// standing for the unit.
    fn split(&self, t: &TensorElement) -> Result<TensorElement> {
        t.map_each_slot(&self.split_images)
    }

    /// Number of unit slots of a split basis tensor.
    fn unit_slots(t: &TensorElement, idx: usize) -> usize {
        t.digits(idx).iter().filter(|&&k| k == 0).count()
    }

    fn check_support(&self, t: &TensorElement, max_units: usize, what: &str) -> Result<TensorElement> {
        let split = self.split(t)?;
        if split.support().any(|(idx, _)| Self::unit_slots(&split, idx) > max_units) {
            return Err(Error::input(format!("tensor is not supported on {what}")));
        }
        Ok(split)
    }

    fn product_of_series(&self, split: &TensorElement) -> Result<TensorElement> {
        let f = self.algebra.field();
        let p = f.p();
        let n = split.arity();
        let mut acc = TensorElement::one(&self.algebra, n)?;
        for (idx, c) in split.support() {
            let digits = split.digits(idx);
            let mut term = acc.clone();
            let mut sum = acc.clone();
            for j in 1..p {
                for (slot, &k) in digits.iter().enumerate() {
                    if k != 0 {
                        term = term.expand_slot(slot, 1, &self.mult_images[k])?;
                    }
                }
                let coeff = f.mul(c, f.inv(j).expect("j < p"));
                term = term.scale(coeff);
                if term.is_zero() {
                    break;
                }
                sum = sum.add(&term)?;
            }
            acc = sum;
        }
        Ok(acc)
    }

    /// `E(t)` for `t ∈ I^{⊗n}`, `n ≥ 2`: the product over basis
    /// decomposables `cD` of `Σ_{j<p} (cD)^j/j!`.
    pub fn exp(&self, t: &TensorElement) -> Result<TensorElement> {
        self.check_algebra(t)?;
        if t.arity() < 2 {
            return Err(Error::unsupported("truncated exponential needs arity at least 2"));
        }
        let split = self.check_support(t, 0, "I^{⊗n}")?;
        self.product_of_series(&split)
    }

    /// Extension of `E` to `A_1 + … + A_n` with
    /// `A_i = I^{⊗(i-1)} ⊗ A ⊗ I^{⊗(n-i)}`, `n ≥ 3`.
    pub fn exp_extended(&self, t: &TensorElement) -> Result<TensorElement> {
        self.check_algebra(t)?;
        if t.arity() < 3 {
            return Err(Error::unsupported("extended exponential needs arity at least 3"));
        }
        let split = self.check_support(t, 1, "A_1 + … + A_n")?;
        self.product_of_series(&split)
    }

    fn refine(
        &self,
        s: &TensorElement,
        max_units: usize,
        exp: impl Fn(&TensorElement) -> Result<TensorElement>,
    ) -> Result<TensorElement> {
        let one = TensorElement::one(&self.algebra, s.arity())?;
        let what = if max_units == 0 { "1 + I^{⊗n}" } else { "1 + A_1 + … + A_n" };
        self.check_support(&s.sub(&one)?, max_units, what)?;
        let mut t = TensorElement::zero(&self.algebra, s.arity())?;
        for _ in 0..MAX_REFINEMENTS {
            let residual = s.mul(&exp(&t.neg())?)?.sub(&one)?;
            if residual.is_zero() {
                return Ok(t);
            }
            t = t.add(&residual)?;
        }
        Err(Error::internal("logarithm refinement did not terminate"))
    }

    /// The inverse of [`NilWitness::exp`].
    pub fn log(&self, s: &TensorElement) -> Result<TensorElement> {
        self.check_algebra(s)?;
        if s.arity() < 2 {
            return Err(Error::unsupported("truncated logarithm needs arity at least 2"));
        }
        self.refine(s, 0, |t| self.exp(t))
    }

    /// The inverse of [`NilWitness::exp_extended`].
    pub fn log_extended(&self, s: &TensorElement) -> Result<TensorElement> {
        self.check_algebra(s)?;
        if s.arity() < 3 {
            return Err(Error::unsupported("extended logarithm needs arity at least 3"));
        }
        self.refine(s, 1, |t| self.exp_extended(t))
    }

    /// `Σ_{j<p} T^j/j!` applied to `t` as a whole. Agrees with `E` only
    /// when `t` is a single decomposable.
    pub fn exp_series(&self, t: &TensorElement) -> Result<TensorElement> {
        self.check_algebra(t)?;
        let f = self.algebra.field();
        let mut term = TensorElement::one(&self.algebra, t.arity())?;
        let mut sum = term.clone();
        for j in 1..f.p() {
            term = term.mul(t)?.scale(f.inv(j).expect("j < p"));
            sum = sum.add(&term)?;
        }
        Ok(sum)
    }

    /// `Σ_{j=1}^{p-1} (-1)^{j-1}(s-1)^j/j`, valid on images of
    /// decomposables.
    pub fn log_series(&self, s: &TensorElement) -> Result<TensorElement> {
        self.check_algebra(s)?;
        let f = self.algebra.field();
        let u = s.sub(&TensorElement::one(&self.algebra, s.arity())?)?;
        let mut power = u.clone();
        let mut sum = TensorElement::zero(&self.algebra, s.arity())?;
        for j in 1..f.p() {
            let c = f.inv(j).expect("j < p");
            let c = if j % 2 == 1 { c } else { f.neg(c) };
            sum = sum.add(&power.scale(c))?;
            power = power.mul(&u)?;
        }
        Ok(sum)
    }
}

fn witness_for(t: &TensorElement) -> Result<NilWitness> {
    certify_nilpotent(t.algebra()).ok_or_else(|| {
        Error::unsupported("augmentation ideal is not killed by the p-th power map")
    })
}

pub fn trunc_exp(t: &TensorElement) -> Result<TensorElement> {
    witness_for(t)?.exp(t)
}

pub fn trunc_log(s: &TensorElement) -> Result<TensorElement> {
    witness_for(s)?.log(s)
}

pub fn trunc_exp_extended(t: &TensorElement) -> Result<TensorElement> {
    witness_for(t)?.exp_extended(t)
}

pub fn trunc_log_extended(s: &TensorElement) -> Result<TensorElement> {
    witness_for(s)?.log_extended(s)
}

