use std::fmt;
use std::sync::Arc;

use crate::algebra::{format_terms, Algebra};
use crate::error::{Error, Result};
use crate::field::Scalar;
use crate::hopf::dual_label;
use crate::linalg::{dense_from_sparse, sparse_from_dense, SparseEchelon, SparseMatrix, SparseVec};

/// Default cap on the number of rows of a bar differential.
pub const DEFAULT_BUDGET: usize = 1_000_000;

/// A normalized cochain `f: I^{⊗n} → k`, stored by its values on tuples
/// of ideal basis vectors (first argument most significant).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AdditiveCochain {
    base: Arc<Algebra>,
    degree: usize,
    coords: Vec<Scalar>,
}

impl AdditiveCochain {
    pub fn new(base: &Arc<Algebra>, degree: usize, coords: Vec<Scalar>) -> Result<Self> {
        let m = base.augmentation().ideal_dim();
        let len = checked_power(m, degree)?;
        if coords.len() != len {
            return Err(Error::input(format!(
                "a degree-{degree} cochain has {len} coordinates, got {}",
                coords.len()
            )));
        }
        let p = base.p();
        Ok(Self {
            base: base.clone(),
            degree,
            coords: coords.into_iter().map(|x| x % p).collect(),
        })
    }

    pub fn zero(base: &Arc<Algebra>, degree: usize) -> Result<Self> {
        let len = checked_power(base.augmentation().ideal_dim(), degree)?;
        Self::new(base, degree, vec![0; len])
    }

    /// `f_1 ⊗ … ⊗ f_n` for functionals on `I` given by their values on the
    /// ideal basis.
    pub fn product(base: &Arc<Algebra>, factors: &[Vec<Scalar>]) -> Result<Self> {
        let f = base.field();
        let m = base.augmentation().ideal_dim();
        let mut coords = vec![1 % f.p()];
        for fac in factors {
            if fac.len() != m {
                return Err(Error::input("functional has wrong length"));
            }
            let mut next = Vec::with_capacity(coords.len() * m);
            for &c in &coords {
                next.extend(fac.iter().map(|&x| f.mul(c, x % f.p())));
            }
            coords = next;
        }
        Self::new(base, factors.len(), coords)
    }

    /// The functional `e_i*` restricted to `I`.
    pub fn basis_functional(base: &Algebra, i: usize) -> Vec<Scalar> {
        base.ideal_basis().iter().map(|b| b[i]).collect()
    }

    pub fn base(&self) -> &Arc<Algebra> {
        &self.base
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn coords(&self) -> &[Scalar] {
        &self.coords
    }

    pub fn into_coords(self) -> Vec<Scalar> {
        self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|&x| x == 0)
    }

    fn same_space(&self, other: &Self) -> Result<()> {
        if self.degree != other.degree || *self.base != *other.base {
            return Err(Error::input("cochains live in different spaces"));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.same_space(other)?;
        let f = self.base.field();
        let coords = self.coords.iter().zip(&other.coords).map(|(&a, &b)| f.add(a, b)).collect();
        Ok(Self { coords, ..self.clone() })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.same_space(other)?;
        let f = self.base.field();
        let coords = self.coords.iter().zip(&other.coords).map(|(&a, &b)| f.sub(a, b)).collect();
        Ok(Self { coords, ..self.clone() })
    }

    pub fn scale(&self, c: Scalar) -> Self {
        let f = self.base.field();
        let c = c % f.p();
        Self {
            coords: self.coords.iter().map(|&x| f.mul(c, x)).collect(),
            ..self.clone()
        }
    }

    /// `(df)(a_1..a_{n+1}) = Σ_{i=1}^{n} (-1)^i f(…, a_i a_{i+1}, …)` on
    /// ideal arguments.
    pub fn differential(&self) -> Result<Self> {
        let f = self.base.field();
        let m = self.base.augmentation().ideal_dim();
        let n = self.degree;
        let consts = self.base.ideal_structure_constants();
        let len = checked_power(m, n + 1)?;
        let mut out = vec![0; len];
        if n > 0 {
            for (row, slot) in out.iter_mut().enumerate() {
                let digits = to_digits(row, m, n + 1);
                let mut acc = 0;
                for i in 1..=n {
                    let prod = &consts[digits[i - 1] * m + digits[i]];
                    for &(l, v) in prod {
                        let col = merged_index(&digits, i - 1, l, m);
                        let term = f.mul(v, self.coords[col]);
                        acc = if i % 2 == 1 { f.sub(acc, term) } else { f.add(acc, term) };
                    }
                }
                *slot = acc;
            }
        }
        Self::new(&self.base, n + 1, out)
    }

    pub fn is_cocycle(&self) -> Result<bool> {
        Ok(self.differential()?.is_zero())
    }

    fn slot_labels(&self) -> Vec<String> {
        let a = &self.base;
        if a.ideal_basis_is_standard() {
            a.augmentation()
                .free_cols
                .iter()
                .map(|&i| dual_label(a.label(i)))
                .collect()
        } else {
            (0..a.augmentation().ideal_dim()).map(|k| format!("b{}*", k + 1)).collect()
        }
    }
}

impl fmt::Display for AdditiveCochain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.degree == 0 {
            return write!(f, "{}", self.coords[0]);
        }
        let labels = self.slot_labels();
        let m = labels.len();
        let terms = self.coords.iter().enumerate().filter(|(_, &c)| c != 0).map(|(idx, &c)| {
            let name = to_digits(idx, m, self.degree)
                .iter()
                .map(|&k| labels[k].as_str())
                .collect::<Vec<_>>()
                .join("⊗");
            (c, name)
        });
        write!(f, "{}", format_terms(terms))
    }
}

/// Dimensions and representatives of `H^n(R, k)`.
#[derive(Clone, Debug)]
pub struct CohomologyReport {
    pub degree: usize,
    pub dim_cocycles: usize,
    pub dim_coboundaries: usize,
    pub dim: usize,
    pub representatives: Vec<AdditiveCochain>,
}

/// The normalized bar complex of an augmented algebra with trivial
/// coefficients.
#[derive(Clone, Debug)]
pub struct BarComplex {
    base: Arc<Algebra>,
    budget: usize,
    consts: Vec<SparseVec>,
}

impl BarComplex {
    pub fn new(base: &Arc<Algebra>) -> Self {
        Self::with_budget(base, DEFAULT_BUDGET)
    }

    pub fn with_budget(base: &Arc<Algebra>, budget: usize) -> Self {
        Self {
            base: base.clone(),
            budget,
            consts: base.ideal_structure_constants(),
        }
    }

    pub fn base(&self) -> &Arc<Algebra> {
        &self.base
    }

    pub fn ideal_dim(&self) -> usize {
        self.base.augmentation().ideal_dim()
    }

    fn space_dim(&self, n: usize) -> Result<usize> {
        let d = checked_power(self.ideal_dim(), n)?;
        if d > self.budget {
            return Err(Error::resource(format!(
                "cochain space of dimension {d} exceeds the budget {}",
                self.budget
            )));
        }
        Ok(d)
    }

    /// The matrix of `d: C^n → C^{n+1}`; `d_0 = 0`.
    pub fn differential_matrix(&self, n: usize) -> Result<SparseMatrix> {
        let m = self.ideal_dim();
        let rows = self.space_dim(n + 1)?;
        let cols = self.space_dim(n)?;
        let f = self.base.field();
        let mut triples = Vec::new();
        if n > 0 {
            for row in 0..rows {
                let digits = to_digits(row, m, n + 1);
                for i in 1..=n {
                    for &(l, v) in &self.consts[digits[i - 1] * m + digits[i]] {
                        let v = if i % 2 == 1 { f.neg(v) } else { v };
                        triples.push((row, merged_index(&digits, i - 1, l, m), v));
                    }
                }
            }
        }
        SparseMatrix::from_triples(f, rows, cols, triples)
    }

    /// Columns of `d_{n-1}`, spanning the coboundaries in degree `n`.
    fn coboundary_span(&self, n: usize) -> Result<Vec<SparseVec>> {
        let d = self.differential_matrix(n - 1)?;
        Ok((0..d.cols()).map(|j| d.column(j).clone()).collect())
    }

    pub fn cohomology(&self, n: usize) -> Result<CohomologyReport> {
        if n == 0 {
            return Err(Error::input("cohomology degree must be at least 1"));
        }
        let f = self.base.field();
        let dn = self.differential_matrix(n)?;
        let cocycles = dn.kernel_basis();
        let mut echelon = SparseEchelon::new(f, false);
        for c in self.coboundary_span(n)? {
            echelon.insert(&c);
        }
        let dim_coboundaries = echelon.rank();
        let len = dn.cols();
        let mut representatives = Vec::new();
        for z in &cocycles {
            if echelon.insert(z) == crate::linalg::Insertion::Independent {
                representatives.push(AdditiveCochain::new(&self.base, n, dense_from_sparse(z, len))?);
            }
        }
        Ok(CohomologyReport {
            degree: n,
            dim_cocycles: cocycles.len(),
            dim_coboundaries,
            dim: cocycles.len() - dim_coboundaries,
            representatives,
        })
    }

    fn check_base(&self, c: &AdditiveCochain) -> Result<()> {
        if *c.base != *self.base {
            return Err(Error::input("cochain lives over a different algebra"));
        }
        Ok(())
    }

    /// Some `f` of degree `n-1` with `df = c`, or `None`.
    pub fn solve_coboundary(&self, c: &AdditiveCochain) -> Result<Option<AdditiveCochain>> {
        self.check_base(c)?;
        let n = c.degree;
        if n == 0 {
            return Err(Error::input("degree-0 cochains are never coboundaries"));
        }
        if n == 1 {
            return c.is_zero().then(|| AdditiveCochain::zero(&self.base, 0)).transpose();
        }
        let d = self.differential_matrix(n - 1)?;
        match d.solve(&c.coords)? {
            Some(x) => Ok(Some(AdditiveCochain::new(&self.base, n - 1, x)?)),
            None => Ok(None),
        }
    }

    /// Coordinates of the class of `c` in the basis of representatives of
    /// `report`, or `None` when `c` is not a cocycle.
    pub fn class_coordinates(
        &self,
        c: &AdditiveCochain,
        report: &CohomologyReport,
    ) -> Result<Option<Vec<Scalar>>> {
        self.check_base(c)?;
        if c.degree != report.degree {
            return Err(Error::input("cochain degree does not match the report"));
        }
        if !c.is_cocycle()? {
            return Ok(None);
        }
        let mut columns = self.coboundary_span(c.degree)?;
        let skip = columns.len();
        columns.extend(report.representatives.iter().map(|r| sparse_from_dense(&r.coords)));
        let m = SparseMatrix::from_columns(self.base.field(), c.coords.len(), columns);
        let x = m
            .solve(&c.coords)?
            .ok_or_else(|| Error::internal("representatives do not span the cohomology"))?;
        Ok(Some(x[skip..].to_vec()))
    }

    /// Whether the given cocycles have linearly independent classes.
    pub fn classes_independent(&self, cocycles: &[AdditiveCochain]) -> Result<bool> {
        let Some(first) = cocycles.first() else {
            return Ok(true);
        };
        let n = first.degree;
        let mut echelon = SparseEchelon::new(self.base.field(), false);
        for c in self.coboundary_span(n)? {
            echelon.insert(&c);
        }
        for c in cocycles {
            self.check_base(c)?;
            if c.degree != n || !c.is_cocycle()? {
                return Ok(false);
            }
            if echelon.insert(&sparse_from_dense(&c.coords)) != crate::linalg::Insertion::Independent {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

pub(crate) fn checked_power(m: usize, n: usize) -> Result<usize> {
    m.checked_pow(n as u32)
        .ok_or_else(|| Error::resource("cochain space dimension overflows"))
}

pub(crate) fn to_digits(mut idx: usize, base: usize, len: usize) -> Vec<usize> {
    let mut out = vec![0; len];
    for slot in out.iter_mut().rev() {
        *slot = idx % base;
        idx /= base;
    }
    out
}

/// Index of the tuple obtained by replacing positions `at, at+1` of
/// `digits` with the single entry `l`.
fn merged_index(digits: &[usize], at: usize, l: usize, m: usize) -> usize {
    let mut idx = 0;
    for (k, &x) in digits.iter().enumerate() {
        if k == at + 1 {
            continue;
        }
        idx = idx * m + if k == at { l } else { x };
    }
    idx
}
