//! Finite-dimensional unital algebras given by structure constants.

use std::fmt;

use crate::error::{Error, Result};
use crate::field::{PrimeField, Scalar};
use crate::linalg::{Matrix, SparseVec};

/// An associative unital algebra with a chosen augmentation `ε: A → GF(p)`.
///
/// The product of basis elements `e_i e_j` is stored sparsely at
/// `table[i * dim + j]`.
#[derive(Clone, PartialEq, Eq)]
pub struct Algebra {
    field: PrimeField,
    dim: usize,
    labels: Vec<String>,
    table: Vec<SparseVec>,
    unit: Vec<Scalar>,
    counit: Vec<Scalar>,
    commutative: bool,
    monomial: bool,
    augmentation: Augmentation,
}

/// The splitting `A = k·1 ⊕ I` with `I = ker ε`.
///
/// The basis of `I` is read off the reduced echelon form of `ε`: one vector
/// per non-pivot column, each restricting to a unit vector on those columns.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Augmentation {
    pub ideal_basis: Vec<Vec<Scalar>>,
    pub free_cols: Vec<usize>,
}

impl fmt::Debug for Algebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Algebra")
            .field("p", &self.field.p())
            .field("dim", &self.dim)
            .field("labels", &self.labels)
            .finish()
    }
}

impl Algebra {
    /// Builds an algebra from `(i, j, k, v)` entries meaning `e_i e_j ∋ v e_k`.
    /// The unit is solved for; associativity and the counit are validated.
    pub fn new(
        field: PrimeField,
        labels: Vec<String>,
        entries: impl IntoIterator<Item = (usize, usize, usize, Scalar)>,
        counit: Vec<Scalar>,
    ) -> Result<Self> {
        let dim = labels.len();
        if dim == 0 {
            return Err(Error::input("algebra must have positive dimension"));
        }
        if counit.len() != dim {
            return Err(Error::input(format!(
                "counit has {} entries, expected {dim}",
                counit.len()
            )));
        }
        let mut dense = vec![vec![0 as Scalar; dim]; dim * dim];
        for (i, j, k, v) in entries {
            if i >= dim || j >= dim || k >= dim {
                return Err(Error::input(format!(
                    "structure constant index ({i},{j},{k}) out of range for dim {dim}"
                )));
            }
            let slot = &mut dense[i * dim + j][k];
            *slot = field.add(*slot, v % field.p());
        }
        let table = dense
            .iter()
            .map(|row| {
                row.iter()
                    .enumerate()
                    .filter(|(_, &v)| v != 0)
                    .map(|(k, &v)| (k, v))
                    .collect()
            })
            .collect();
        let counit = counit.into_iter().map(|v| v % field.p()).collect();
        Self::from_table(field, labels, table, counit)
    }

    pub(crate) fn from_table(
        field: PrimeField,
        labels: Vec<String>,
        table: Vec<SparseVec>,
        counit: Vec<Scalar>,
    ) -> Result<Self> {
        let dim = labels.len();
        let unit = solve_unit(field, dim, &table)?;
        let commutative = (0..dim).all(|i| (0..i).all(|j| table[i * dim + j] == table[j * dim + i]));
        let monomial = table.iter().all(|t| t.len() <= 1);
        let augmentation = Augmentation::from_counit(field, &counit)?;
        let alg = Self {
            field,
            dim,
            labels,
            table,
            unit,
            counit,
            commutative,
            monomial,
            augmentation,
        };
        if !alg.is_associative() {
            return Err(Error::input("structure constants are not associative"));
        }
        if !alg.counit_is_homomorphism() {
            return Err(Error::input("counit is not an algebra homomorphism"));
        }
        Ok(alg)
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn p(&self) -> u32 {
        self.field.p()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn unit(&self) -> &[Scalar] {
        &self.unit
    }

    pub fn counit(&self) -> &[Scalar] {
        &self.counit
    }

    pub fn is_commutative(&self) -> bool {
        self.commutative
    }

    /// Every basis product is a multiple of a single basis element.
    pub fn is_monomial(&self) -> bool {
        self.monomial
    }

    pub fn augmentation(&self) -> &Augmentation {
        &self.augmentation
    }

    /// `e_i e_j` as a sparse coordinate vector.
    #[inline]
    pub fn basis_product(&self, i: usize, j: usize) -> &SparseVec {
        &self.table[i * self.dim + j]
    }

    /// All `(i, j, k, v)` structure constants in lexicographic order.
    pub fn structure_constants(&self) -> Vec<(usize, usize, usize, Scalar)> {
        let mut out = Vec::new();
        for i in 0..self.dim {
            for j in 0..self.dim {
                for &(k, v) in self.basis_product(i, j) {
                    out.push((i, j, k, v));
                }
            }
        }
        out
    }

    pub fn basis_vector(&self, i: usize) -> Vec<Scalar> {
        let mut v = vec![0; self.dim];
        v[i] = 1;
        v
    }

    pub fn zero(&self) -> Vec<Scalar> {
        vec![0; self.dim]
    }

    pub fn one(&self) -> Vec<Scalar> {
        self.unit.clone()
    }

    pub fn mul(&self, a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
        let p = self.field.p() as u64;
        let mut acc = vec![0u64; self.dim];
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                if y == 0 {
                    continue;
                }
                let c = x as u64 * y as u64 % p;
                for &(k, v) in self.basis_product(i, j) {
                    acc[k] += c * v as u64 % p;
                }
            }
        }
        acc.into_iter().map(|v| (v % p) as Scalar).collect()
    }

    pub fn pow(&self, a: &[Scalar], mut e: u64) -> Vec<Scalar> {
        let mut base = a.to_vec();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            e >>= 1;
            if e > 0 {
                base = self.mul(&base, &base);
            }
        }
        acc
    }

    pub fn add(&self, a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
        a.iter().zip(b).map(|(&x, &y)| self.field.add(x, y)).collect()
    }

    pub fn sub(&self, a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
        a.iter().zip(b).map(|(&x, &y)| self.field.sub(x, y)).collect()
    }

    pub fn scale(&self, c: Scalar, a: &[Scalar]) -> Vec<Scalar> {
        a.iter().map(|&x| self.field.mul(c, x)).collect()
    }

    pub fn apply_counit(&self, a: &[Scalar]) -> Scalar {
        a.iter()
            .zip(&self.counit)
            .fold(0, |acc, (&x, &e)| self.field.add(acc, self.field.mul(x, e)))
    }

    /// Matrix of `x ↦ a x`.
    pub fn left_mult_matrix(&self, a: &[Scalar]) -> Matrix {
        let mut m = Matrix::zeros(self.field, self.dim, self.dim);
        for j in 0..self.dim {
            let col = self.mul(a, &self.basis_vector(j));
            for (i, v) in col.into_iter().enumerate() {
                m.set(i, j, v);
            }
        }
        m
    }

    pub fn is_associative(&self) -> bool {
        let d = self.dim;
        let f = self.field;
        let combine = |terms: &SparseVec, right: bool, fixed: usize| -> Vec<Scalar> {
            let mut acc = vec![0; d];
            for &(m, v) in terms {
                let prod = if right {
                    self.basis_product(m, fixed)
                } else {
                    self.basis_product(fixed, m)
                };
                for &(k, w) in prod {
                    acc[k] = f.add(acc[k], f.mul(v, w));
                }
            }
            acc
        };
        (0..d).all(|i| {
            (0..d).all(|j| {
                (0..d).all(|k| {
                    combine(self.basis_product(i, j), true, k)
                        == combine(self.basis_product(j, k), false, i)
                })
            })
        })
    }

    pub fn counit_is_homomorphism(&self) -> bool {
        let f = self.field;
        if self.apply_counit(&self.unit) != 1 {
            return false;
        }
        (0..self.dim).all(|i| {
            (0..self.dim).all(|j| {
                let prod = self
                    .basis_product(i, j)
                    .iter()
                    .fold(0, |acc, &(k, v)| f.add(acc, f.mul(v, self.counit[k])));
                prod == f.mul(self.counit[i], self.counit[j])
            })
        })
    }

    /// `A ⊗ B` with basis `a_i ⊗ b_j` at index `i * dim_B + j`.
    pub fn tensor_product(&self, other: &Algebra) -> Result<Algebra> {
        if self.field != other.field {
            return Err(Error::input("tensor factors have different characteristic"));
        }
        let (da, db) = (self.dim, other.dim);
        let f = self.field;
        let mut labels = Vec::with_capacity(da * db);
        for i in 0..da {
            for j in 0..db {
                labels.push(product_label(&self.labels[i], &other.labels[j]));
            }
        }
        let mut table = Vec::with_capacity(da * db * da * db);
        for i1 in 0..da {
            for j1 in 0..db {
                for i2 in 0..da {
                    for j2 in 0..db {
                        let mut entry: SparseVec = Vec::new();
                        for &(ka, va) in self.basis_product(i1, i2) {
                            for &(kb, vb) in other.basis_product(j1, j2) {
                                entry.push((ka * db + kb, f.mul(va, vb)));
                            }
                        }
                        entry.sort_unstable();
                        table.push(entry);
                    }
                }
            }
        }
        let counit = (0..da * db)
            .map(|ij| f.mul(self.counit[ij / db], other.counit[ij % db]))
            .collect();
        Algebra::from_table(f, labels, table, counit)
    }

    /// `A × B` with the counit of the first factor.
    pub fn direct_product(&self, other: &Algebra) -> Result<Algebra> {
        if self.field != other.field {
            return Err(Error::input("factors have different characteristic"));
        }
        let (da, db) = (self.dim, other.dim);
        let labels = self
            .labels
            .iter()
            .map(|l| format!("({l},0)"))
            .chain(other.labels.iter().map(|l| format!("(0,{l})")))
            .collect();
        let mut table = vec![Vec::new(); (da + db) * (da + db)];
        for i in 0..da {
            for j in 0..da {
                table[i * (da + db) + j] = self.basis_product(i, j).clone();
            }
        }
        for i in 0..db {
            for j in 0..db {
                table[(da + i) * (da + db) + da + j] = other
                    .basis_product(i, j)
                    .iter()
                    .map(|&(k, v)| (da + k, v))
                    .collect();
            }
        }
        let mut counit = self.counit.clone();
        counit.extend(std::iter::repeat_n(0, db));
        Algebra::from_table(self.field, labels, table, counit)
    }

    /// Re-expresses the algebra in a new basis given by the columns of
    /// `basis` (coordinates in the old basis).
    pub fn change_basis(&self, basis: &[Vec<Scalar>], labels: Vec<String>) -> Result<Algebra> {
        let d = self.dim;
        if basis.len() != d || labels.len() != d {
            return Err(Error::input("change of basis needs exactly dim vectors"));
        }
        let p_mat = Matrix::from_columns(self.field, d, basis);
        let p_inv = p_mat
            .inverse()
            .ok_or_else(|| Error::input("change of basis is singular"))?;
        let mut table = Vec::with_capacity(d * d);
        for i in 0..d {
            for j in 0..d {
                let prod = self.mul(&basis[i], &basis[j]);
                let coords = p_inv.mul_vec(&prod).expect("square");
                table.push(dense_to_sparse(&coords));
            }
        }
        let counit = basis.iter().map(|b| self.apply_counit(b)).collect();
        Algebra::from_table(self.field, labels, table, counit)
    }

    /// Formats an element in terms of the basis labels.
    pub fn format_element(&self, v: &[Scalar]) -> String {
        format_terms(
            v.iter()
                .enumerate()
                .filter(|(_, &c)| c != 0)
                .map(|(i, &c)| (c, self.labels[i].clone())),
        )
    }
}

impl Augmentation {
    fn from_counit(field: PrimeField, counit: &[Scalar]) -> Result<Self> {
        let row = Matrix::from_fn(field, 1, counit.len(), |_, j| counit[j]);
        let rref = row.rref();
        if rref.pivots.is_empty() {
            return Err(Error::input("counit is identically zero"));
        }
        let pivot = rref.pivots[0];
        let free_cols = (0..counit.len()).filter(|&c| c != pivot).collect();
        Ok(Self {
            ideal_basis: row.kernel_basis(),
            free_cols,
        })
    }

    pub fn ideal_dim(&self) -> usize {
        self.ideal_basis.len()
    }

    /// Coordinates of an element of `I` in the ideal basis.
    pub fn ideal_coords(&self, v: &[Scalar]) -> Vec<Scalar> {
        self.free_cols.iter().map(|&c| v[c]).collect()
    }

    pub fn from_ideal_coords(&self, field: PrimeField, t: &[Scalar]) -> Vec<Scalar> {
        let dim = self.free_cols.len() + 1;
        let mut out = vec![0; dim];
        for (k, &c) in t.iter().enumerate() {
            if c == 0 {
                continue;
            }
            for (o, &b) in out.iter_mut().zip(&self.ideal_basis[k]) {
                *o = field.add(*o, field.mul(c, b));
            }
        }
        out
    }
}

impl Algebra {
    /// Splits `v = ε(v)·1 + i` and returns `(ε(v), ideal coordinates of i)`.
    pub fn split_augmented(&self, v: &[Scalar]) -> (Scalar, Vec<Scalar>) {
        let e = self.apply_counit(v);
        let rest = self.sub(v, &self.scale(e, &self.unit));
        (e, self.augmentation.ideal_coords(&rest))
    }

    /// Inverse of [`Algebra::split_augmented`].
    pub fn join_augmented(&self, e: Scalar, t: &[Scalar]) -> Vec<Scalar> {
        let i = self.augmentation.from_ideal_coords(self.field, t);
        self.add(&self.scale(e, &self.unit), &i)
    }

    /// Ideal basis vectors `b_k` in ordinary coordinates.
    pub fn ideal_basis(&self) -> &[Vec<Scalar>] {
        &self.augmentation.ideal_basis
    }

    /// Products `b_k b_l` expressed in the ideal basis, indexed `k * m + l`.
    pub fn ideal_structure_constants(&self) -> Vec<SparseVec> {
        let basis = self.ideal_basis();
        let mut out = Vec::with_capacity(basis.len() * basis.len());
        for a in basis {
            for b in basis {
                let prod = self.mul(a, b);
                out.push(dense_to_sparse(&self.augmentation.ideal_coords(&prod)));
            }
        }
        out
    }

    /// Whether the ideal basis is a subset of the stored basis, so that
    /// ideal coordinates are plain basis coordinates.
    pub fn ideal_basis_is_standard(&self) -> bool {
        self.ideal_basis()
            .iter()
            .all(|b| b.iter().filter(|&&x| x != 0).count() == 1)
    }
}

fn solve_unit(field: PrimeField, dim: usize, table: &[SparseVec]) -> Result<Vec<Scalar>> {
    // unknown u: sum_i u_i e_i e_j = e_j and sum_i u_i e_j e_i = e_j for all j
    let mut m = Matrix::zeros(field, 2 * dim * dim, dim);
    let mut rhs = vec![0; 2 * dim * dim];
    for j in 0..dim {
        for i in 0..dim {
            for &(k, v) in &table[i * dim + j] {
                m.set(j * dim + k, i, v);
            }
            for &(k, v) in &table[j * dim + i] {
                m.set(dim * dim + j * dim + k, i, v);
            }
        }
        rhs[j * dim + j] = 1;
        rhs[dim * dim + j * dim + j] = 1;
    }
    m.solve(&rhs)?
        .ok_or_else(|| Error::input("structure constants admit no two-sided unit"))
}

pub(crate) fn dense_to_sparse(v: &[Scalar]) -> SparseVec {
    crate::linalg::sparse_from_dense(v)
}

fn product_label(a: &str, b: &str) -> String {
    match (a, b) {
        ("1", _) => b.to_string(),
        (_, "1") => a.to_string(),
        _ => format!("{a}{b}"),
    }
}

/// Joins `coefficient·label` terms with ` + `, writing `0` for no terms.
pub fn format_terms(terms: impl Iterator<Item = (Scalar, String)>) -> String {
    let parts: Vec<String> = terms
        .map(|(c, l)| if c == 1 { l } else { format!("{c}·{l}") })
        .collect();
    if parts.is_empty() {
        "0".to_string()
    } else {
        parts.join(" + ")
    }
}
