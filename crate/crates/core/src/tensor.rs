//! Elements of tensor powers `A^{⊗m}` stored as dense coordinate vectors.
//!
//! The basis tensor `e_{i_1} ⊗ … ⊗ e_{i_m}` sits at the mixed-radix index
//! `Σ i_k dim^{m-1-k}`, so slot 0 is the most significant digit.

use std::fmt;
use std::sync::Arc;

use crate::algebra::{format_terms, Algebra};
use crate::error::{Error, Result};
use crate::field::Scalar;
use crate::linalg::{Matrix, SparseVec};

/// Largest supported arity.
pub const MAX_ARITY: usize = 4;

#[derive(Clone, PartialEq, Eq)]
pub struct TensorElement {
    algebra: Arc<Algebra>,
    arity: usize,
    coords: Vec<Scalar>,
}

impl fmt::Debug for TensorElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "TensorElement[{}]({})", self.arity, self)
    }
}

impl fmt::Display for TensorElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms = self.support().map(|(idx, c)| {
            let label = self
                .digits(idx)
                .iter()
                .map(|&i| self.algebra.label(i))
                .collect::<Vec<_>>()
                .join("⊗");
            (c, label)
        });
        f.write_str(&format_terms(terms))
    }
}

impl TensorElement {
    pub fn zero(algebra: &Arc<Algebra>, arity: usize) -> Result<Self> {
        check_arity(arity)?;
        Ok(Self {
            algebra: algebra.clone(),
            arity,
            coords: vec![0; algebra.dim().pow(arity as u32)],
        })
    }

    /// `1^{⊗m}`.
    pub fn one(algebra: &Arc<Algebra>, arity: usize) -> Result<Self> {
        let unit = algebra.unit().to_vec();
        Self::pure(algebra, &vec![unit; arity])
    }

    pub fn from_coords(algebra: &Arc<Algebra>, arity: usize, coords: Vec<Scalar>) -> Result<Self> {
        check_arity(arity)?;
        if coords.len() != algebra.dim().pow(arity as u32) {
            return Err(Error::input(format!(
                "expected {} coordinates for arity {arity}, got {}",
                algebra.dim().pow(arity as u32),
                coords.len()
            )));
        }
        let p = algebra.p();
        Ok(Self {
            algebra: algebra.clone(),
            arity,
            coords: coords.into_iter().map(|c| c % p).collect(),
        })
    }

    /// Sum of `value · e_{i_1} ⊗ … ⊗ e_{i_m}` over the given terms.
    pub fn from_terms(
        algebra: &Arc<Algebra>,
        arity: usize,
        terms: &[(Vec<usize>, Scalar)],
    ) -> Result<Self> {
        let mut t = Self::zero(algebra, arity)?;
        let f = algebra.field();
        for (idx, v) in terms {
            if idx.len() != arity || idx.iter().any(|&i| i >= algebra.dim()) {
                return Err(Error::input(format!("bad multi-index {idx:?}")));
            }
            let k = t.index_of(idx);
            t.coords[k] = f.add(t.coords[k], v % f.p());
        }
        Ok(t)
    }

    /// `v_1 ⊗ … ⊗ v_m` for elements given in coordinates.
    pub fn pure(algebra: &Arc<Algebra>, factors: &[Vec<Scalar>]) -> Result<Self> {
        let arity = factors.len();
        check_arity(arity)?;
        let f = algebra.field();
        let mut coords = vec![1 % f.p()];
        for v in factors {
            if v.len() != algebra.dim() {
                return Err(Error::input("factor has wrong dimension"));
            }
            let mut next = Vec::with_capacity(coords.len() * v.len());
            for &a in &coords {
                for &b in v {
                    next.push(f.mul(a, b));
                }
            }
            coords = next;
        }
        Ok(Self {
            algebra: algebra.clone(),
            arity,
            coords,
        })
    }

    pub fn algebra(&self) -> &Arc<Algebra> {
        &self.algebra
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn coords(&self) -> &[Scalar] {
        &self.coords
    }

    pub fn into_coords(self) -> Vec<Scalar> {
        self.coords
    }

    pub fn dim(&self) -> usize {
        self.algebra.dim()
    }

    pub fn index_of(&self, digits: &[usize]) -> usize {
        digits.iter().fold(0, |acc, &d| acc * self.dim() + d)
    }

    pub fn digits(&self, mut idx: usize) -> Vec<usize> {
        let d = self.dim();
        let mut out = vec![0; self.arity];
        for k in (0..self.arity).rev() {
            out[k] = idx % d;
            idx /= d;
        }
        out
    }

    /// Nonzero coordinates in index order.
    pub fn support(&self) -> impl Iterator<Item = (usize, Scalar)> + '_ {
        self.coords
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(|(i, &c)| (i, c))
    }

    pub fn nnz(&self) -> usize {
        self.coords.iter().filter(|&&c| c != 0).count()
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|&c| c == 0)
    }

    pub fn is_one(&self) -> bool {
        Self::one(&self.algebra, self.arity).is_ok_and(|one| one.coords == self.coords)
    }

    fn compatible(&self, other: &Self) -> Result<()> {
        if self.arity != other.arity {
            return Err(Error::input(format!(
                "arity mismatch: {} vs {}",
                self.arity, other.arity
            )));
        }
        if !Arc::ptr_eq(&self.algebra, &other.algebra) && *self.algebra != *other.algebra {
            return Err(Error::input("tensor elements live over different algebras"));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.compatible(other)?;
        let f = self.algebra.field();
        Ok(self.with_coords(
            self.coords
                .iter()
                .zip(&other.coords)
                .map(|(&a, &b)| f.add(a, b))
                .collect(),
        ))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.compatible(other)?;
        let f = self.algebra.field();
        Ok(self.with_coords(
            self.coords
                .iter()
                .zip(&other.coords)
                .map(|(&a, &b)| f.sub(a, b))
                .collect(),
        ))
    }

    pub fn scale(&self, c: Scalar) -> Self {
        let f = self.algebra.field();
        self.with_coords(self.coords.iter().map(|&a| f.mul(a, c)).collect())
    }

    pub fn neg(&self) -> Self {
        let f = self.algebra.field();
        self.with_coords(self.coords.iter().map(|&a| f.neg(a)).collect())
    }

    pub(crate) fn with_coords(&self, coords: Vec<Scalar>) -> Self {
        Self {
            algebra: self.algebra.clone(),
            arity: self.arity,
            coords,
        }
    }

    /// Product in `A^{⊗m}`.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.compatible(other)?;
        let alg = &*self.algebra;
        let f = alg.field();
        let p = f.p() as u64;
        let d = alg.dim();
        let m = self.arity;
        let a_terms: Vec<(Vec<usize>, Scalar)> =
            self.support().map(|(i, c)| (self.digits(i), c)).collect();
        let b_terms: Vec<(Vec<usize>, Scalar)> =
            other.support().map(|(i, c)| (other.digits(i), c)).collect();
        let mut acc = vec![0u64; self.coords.len()];
        let mut partial: Vec<(usize, u64)> = Vec::new();
        let mut next: Vec<(usize, u64)> = Vec::new();
        for (ad, ac) in &a_terms {
            for (bd, bc) in &b_terms {
                let c0 = *ac as u64 * *bc as u64 % p;
                if alg.is_monomial() {
                    let mut idx = 0;
                    let mut c = c0;
                    let mut zero = false;
                    for k in 0..m {
                        match alg.basis_product(ad[k], bd[k]).first() {
                            Some(&(e, v)) => {
                                idx = idx * d + e;
                                c = c * v as u64 % p;
                            }
                            None => {
                                zero = true;
                                break;
                            }
                        }
                    }
                    if !zero {
                        acc[idx] += c;
                    }
                    continue;
                }
                partial.clear();
                partial.push((0, c0));
                for k in 0..m {
                    next.clear();
                    let prod = alg.basis_product(ad[k], bd[k]);
                    for &(idx, c) in &partial {
                        for &(e, v) in prod {
                            next.push((idx * d + e, c * v as u64 % p));
                        }
                    }
                    std::mem::swap(&mut partial, &mut next);
                    if partial.is_empty() {
                        break;
                    }
                }
                for &(idx, c) in &partial {
                    acc[idx] += c;
                }
            }
        }
        Ok(self.with_coords(acc.into_iter().map(|v| (v % p) as Scalar).collect()))
    }

    pub fn pow(&self, mut e: u64) -> Result<Self> {
        let mut base = self.clone();
        let mut acc = Self::one(&self.algebra, self.arity)?;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base)?;
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base)?;
            }
        }
        Ok(acc)
    }

    /// Value of `ε^{⊗m}`.
    pub fn total_counit(&self) -> Scalar {
        let f = self.algebra.field();
        let eps = self.algebra.counit();
        self.support().fold(0, |acc, (i, c)| {
            let v = self
                .digits(i)
                .iter()
                .fold(c, |x, &k| f.mul(x, eps[k]));
            f.add(acc, v)
        })
    }

    pub fn is_nilpotent(&self) -> Result<bool> {
        let n = self.coords.len().max(2);
        let mut t = self.clone();
        let mut power = 1usize;
        while power < n {
            t = t.mul(&t)?;
            power *= 2;
            if t.is_zero() {
                return Ok(true);
            }
        }
        Ok(t.is_zero())
    }

    /// Two-sided inverse.
    pub fn invert(&self) -> Result<Self> {
        let f = self.algebra.field();
        let c = self.total_counit();
        if c != 0 {
            // a = c(1 + n); use the geometric series when n is nilpotent
            let cinv = f.inv(c).expect("nonzero");
            let one = Self::one(&self.algebra, self.arity)?;
            let n = self.scale(cinv).sub(&one)?;
            if n.is_nilpotent()? {
                let neg_n = n.neg();
                let mut sum = one.clone();
                let mut term = one;
                loop {
                    term = term.mul(&neg_n)?;
                    if term.is_zero() {
                        break;
                    }
                    sum = sum.add(&term)?;
                }
                return Ok(sum.scale(cinv));
            }
        }
        let l = self.left_mult_matrix()?;
        let one = Self::one(&self.algebra, self.arity)?;
        let x = l.solve(&one.coords)?.ok_or(Error::NotInvertible)?;
        let inv = self.with_coords(x);
        if !inv.mul(self)?.is_one() {
            return Err(Error::NotInvertible);
        }
        Ok(inv)
    }

    pub fn left_mult_matrix(&self) -> Result<Matrix> {
        let n = self.coords.len();
        let f = self.algebra.field();
        let mut m = Matrix::zeros(f, n, n);
        for j in 0..n {
            let mut e = vec![0; n];
            e[j] = 1;
            let col = self.mul(&self.with_coords(e))?;
            for (i, &v) in col.coords.iter().enumerate() {
                if v != 0 {
                    m.set(i, j, v);
                }
            }
        }
        Ok(m)
    }

    /// Replaces slot `slot` by `width` slots, sending `e_i` to the tensor
    /// `images[i]` (sparse over `dim^width`).
    pub fn expand_slot(&self, slot: usize, width: usize, images: &[SparseVec]) -> Result<Self> {
        if slot >= self.arity {
            return Err(Error::input(format!(
                "slot {slot} out of range for arity {}",
                self.arity
            )));
        }
        let new_arity = self.arity - 1 + width;
        check_arity(new_arity)?;
        let f = self.algebra.field();
        let d = self.dim();
        let tail = d.pow((self.arity - 1 - slot) as u32);
        let block = d.pow(width as u32);
        let mut out = vec![0; d.pow(new_arity as u32)];
        for (idx, c) in self.support() {
            let high = idx / (tail * d);
            let i = (idx / tail) % d;
            let low = idx % tail;
            for &(e, v) in &images[i] {
                let k = (high * block + e) * tail + low;
                out[k] = f.add(out[k], f.mul(c, v));
            }
        }
        Ok(Self {
            algebra: self.algebra.clone(),
            arity: new_arity,
            coords: out,
        })
    }

    /// Applies the same linear map `A → A` (columns as sparse images) in
    /// every slot.
    pub fn map_each_slot(&self, images: &[SparseVec]) -> Result<Self> {
        let mut t = self.clone();
        for slot in 0..self.arity {
            t = t.expand_slot(slot, 1, images)?;
        }
        Ok(t)
    }

    /// Inserts `1` as a new slot at position `slot` (`0..=arity`).
    pub fn insert_unit(&self, slot: usize) -> Result<Self> {
        if slot > self.arity {
            return Err(Error::input(format!("insertion slot {slot} out of range")));
        }
        let unit = crate::linalg::sparse_from_dense(self.algebra.unit());
        if self.arity == 0 {
            unreachable!("arity is at least one");
        }
        if slot < self.arity {
            // e_i at `slot` becomes 1 ⊗ e_i
            let images: Vec<SparseVec> = (0..self.dim())
                .map(|i| unit.iter().map(|&(u, v)| (u * self.dim() + i, v)).collect())
                .collect();
            self.expand_slot(slot, 2, &images)
        } else {
            let images: Vec<SparseVec> = (0..self.dim())
                .map(|i| unit.iter().map(|&(u, v)| (i * self.dim() + u, v)).collect())
                .collect();
            self.expand_slot(slot - 1, 2, &images)
        }
    }

    /// Contracts slot `slot` with the counit.
    pub fn apply_counit(&self, slot: usize) -> Result<Self> {
        if self.arity == 1 {
            return Err(Error::input("cannot contract the only slot of an arity-1 tensor"));
        }
        let images: Vec<SparseVec> = self
            .algebra
            .counit()
            .iter()
            .map(|&e| if e == 0 { vec![] } else { vec![(0, e)] })
            .collect();
        self.expand_slot(slot, 0, &images)
    }

    /// `t_{i_1…i_m}`: the original slot-k factor moves to position `perm[k]`
    /// (one-based, as in the subscript notation).
    pub fn permute_slots(&self, perm: &[usize]) -> Result<Self> {
        if perm.len() != self.arity {
            return Err(Error::input("permutation length differs from arity"));
        }
        let mut seen = vec![false; self.arity];
        for &k in perm {
            if k == 0 || k > self.arity || seen[k - 1] {
                return Err(Error::input(format!("{perm:?} is not a permutation")));
            }
            seen[k - 1] = true;
        }
        let mut out = vec![0; self.coords.len()];
        let mut target = vec![0; self.arity];
        for (idx, c) in self.support() {
            for (k, &i) in self.digits(idx).iter().enumerate() {
                target[perm[k] - 1] = i;
            }
            out[self.index_of(&target)] = c;
        }
        Ok(self.with_coords(out))
    }

    /// Places the slots of `self` at `positions` (zero-based, increasing or
    /// not) inside an arity-`arity` tensor with `1` in the other slots.
    /// For example `R_{13} = r.embed(&[0, 2], 3)`.
    pub fn embed(&self, positions: &[usize], arity: usize) -> Result<Self> {
        if positions.len() != self.arity || arity < self.arity {
            return Err(Error::input("bad embedding"));
        }
        let mut t = self.clone();
        // pad with units at the end, then permute into place
        for k in self.arity..arity {
            t = t.insert_unit(k)?;
        }
        let mut perm = vec![0; arity];
        let mut used = vec![false; arity];
        for (k, &pos) in positions.iter().enumerate() {
            if pos >= arity || used[pos] {
                return Err(Error::input("bad embedding positions"));
            }
            perm[k] = pos + 1;
            used[pos] = true;
        }
        let mut free = (0..arity).filter(|&q| !used[q]);
        for slot in perm.iter_mut().skip(self.arity) {
            *slot = free.next().expect("counts agree") + 1;
        }
        t.permute_slots(&perm)
    }

    /// Tensor product `self ⊗ other`.
    pub fn outer(&self, other: &Self) -> Result<Self> {
        if !Arc::ptr_eq(&self.algebra, &other.algebra) && *self.algebra != *other.algebra {
            return Err(Error::input("tensor elements live over different algebras"));
        }
        let arity = self.arity + other.arity;
        check_arity(arity)?;
        let f = self.algebra.field();
        let n = other.coords.len();
        let mut out = vec![0; self.coords.len() * n];
        for (i, a) in self.support() {
            for (j, b) in other.support() {
                out[i * n + j] = f.mul(a, b);
            }
        }
        Ok(Self {
            algebra: self.algebra.clone(),
            arity,
            coords: out,
        })
    }

    /// Reinterprets the coordinates over another algebra of the same
    /// dimension (used when passing between a basis and its dual basis).
    pub fn transport(&self, algebra: &Arc<Algebra>) -> Result<Self> {
        if algebra.dim() != self.dim() || algebra.field() != self.algebra.field() {
            return Err(Error::input("target algebra has a different dimension"));
        }
        Self::from_coords(algebra, self.arity, self.coords.clone())
    }
}

fn check_arity(arity: usize) -> Result<()> {
    if arity == 0 || arity > MAX_ARITY {
        return Err(Error::input(format!(
            "arity must be between 1 and {MAX_ARITY}, got {arity}"
        )));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::PrimeField;

    fn trunc(p: u32, n: usize) -> Arc<Algebra> {
        let f = PrimeField::new(p).unwrap();
        let labels = (0..n)
            .map(|k| match k {
                0 => "1".to_string(),
                1 => "x".to_string(),
                _ => format!("x^{k}"),
            })
            .collect();
        let entries: Vec<_> = (0..n)
            .flat_map(|i| (0..n).map(move |j| (i, j)))
            .filter(|&(i, j)| i + j < n)
            .map(|(i, j)| (i, j, i + j, 1))
            .collect();
        let mut counit = vec![0; n];
        counit[0] = 1;
        Arc::new(Algebra::new(f, labels, entries, counit).unwrap())
    }

    fn t(a: &Arc<Algebra>, terms: &[(&[usize], Scalar)]) -> TensorElement {
        let terms: Vec<_> = terms.iter().map(|(i, c)| (i.to_vec(), *c)).collect();
        TensorElement::from_terms(a, terms[0].0.len(), &terms).unwrap()
    }

    #[test]
    fn multiply_examples() {
        let a = trunc(3, 3);
        let xx = t(&a, &[(&[1, 1], 1)]);
        assert_eq!(xx.mul(&xx).unwrap(), t(&a, &[(&[2, 2], 1)]));
        let x2 = t(&a, &[(&[2, 0], 1)]);
        assert!(xx.mul(&x2).unwrap().is_zero());
        let plus = t(&a, &[(&[0, 0], 1), (&[1, 1], 1)]);
        let minus = t(&a, &[(&[0, 0], 1), (&[1, 1], 2)]);
        assert_eq!(
            plus.mul(&minus).unwrap(),
            t(&a, &[(&[0, 0], 1), (&[2, 2], 2)])
        );
    }

    #[test]
    fn invert_examples() {
        let a = trunc(3, 3);
        let one3 = TensorElement::one(&a, 3).unwrap();
        assert_eq!(one3.invert().unwrap(), one3);
        let plus = t(&a, &[(&[0, 0], 1), (&[1, 1], 1)]);
        assert_eq!(
            plus.invert().unwrap(),
            t(&a, &[(&[0, 0], 1), (&[1, 1], 2), (&[2, 2], 1)])
        );
        let xx = t(&a, &[(&[1, 1], 1)]);
        assert_eq!(xx.invert(), Err(Error::NotInvertible));
    }

    #[test]
    fn slot_maps() {
        let a = trunc(3, 3);
        let xx = t(&a, &[(&[1, 1], 1)]);
        assert_eq!(xx.insert_unit(0).unwrap(), t(&a, &[(&[0, 1, 1], 1)]));
        assert_eq!(xx.insert_unit(2).unwrap(), t(&a, &[(&[1, 1, 0], 1)]));
        let plus = t(&a, &[(&[0, 0], 1), (&[1, 1], 1)]);
        assert_eq!(plus.apply_counit(1).unwrap(), t(&a, &[(&[0], 1)]));
    }

    #[test]
    fn permutation_convention() {
        let a = trunc(5, 4);
        // x ⊗ x^2 ⊗ x^3 under 312: x to slot 3, x^2 to slot 1, x^3 to slot 2
        let xyz = t(&a, &[(&[1, 2, 3], 1)]);
        assert_eq!(xyz.permute_slots(&[3, 1, 2]).unwrap(), t(&a, &[(&[2, 3, 1], 1)]));
        let r = t(&a, &[(&[1, 2], 1)]);
        assert_eq!(r.embed(&[0, 2], 3).unwrap(), t(&a, &[(&[1, 0, 2], 1)]));
        assert_eq!(r.embed(&[2, 0], 3).unwrap(), t(&a, &[(&[2, 0, 1], 1)]));
        assert_eq!(r.embed(&[1, 2], 3).unwrap(), t(&a, &[(&[0, 1, 2], 1)]));
    }

    #[test]
    fn display_uses_labels() {
        let a = trunc(3, 3);
        let v = t(&a, &[(&[0, 0], 1), (&[1, 2], 2)]);
        assert_eq!(v.to_string(), "1⊗1 + 2·x⊗x^2");
    }
}
