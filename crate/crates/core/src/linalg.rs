//! Dense and sparse linear algebra over GF(p).
//!
//! Dense matrices use plain Gaussian elimination with first-nonzero pivots.
//! Sparse matrices are split into connected components of their bipartite
//! row/column graph; each component is eliminated densely when it is small
//! and by a sparse echelon otherwise.

use std::collections::HashMap;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::field::{PrimeField, Scalar};

/// Sparse vector as `(index, value)` pairs, sorted by index, no zero values.
pub type SparseVec = Vec<(usize, Scalar)>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix {
    field: PrimeField,
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

/// Reduced row echelon form with its pivot columns.
#[derive(Clone, Debug)]
pub struct Rref {
    pub matrix: Matrix,
    pub pivots: Vec<usize>,
}

impl Matrix {
    pub fn zeros(field: PrimeField, rows: usize, cols: usize) -> Self {
        Self {
            field,
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(field: PrimeField, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.data[i * n + i] = 1 % field.p();
        }
        m
    }

    /// Builds a matrix from integer rows, reducing each entry mod p.
    pub fn from_rows(field: PrimeField, rows: &[Vec<i64>]) -> Result<Self> {
        let cols = rows.first().map_or(0, |r| r.len());
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::input("ragged rows"));
        }
        let data = rows
            .iter()
            .flat_map(|r| r.iter().map(|&v| field.from_i64(v)))
            .collect();
        Ok(Self {
            field,
            rows: rows.len(),
            cols,
            data,
        })
    }

    pub fn from_fn(
        field: PrimeField,
        rows: usize,
        cols: usize,
        mut f: impl FnMut(usize, usize) -> Scalar,
    ) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j) % field.p());
            }
        }
        Self {
            field,
            rows,
            cols,
            data,
        }
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_columns(field: PrimeField, rows: usize, columns: &[Vec<Scalar>]) -> Self {
        let mut m = Self::zeros(field, rows, columns.len());
        for (j, c) in columns.iter().enumerate() {
            for (i, &v) in c.iter().enumerate() {
                m.data[i * m.cols + j] = v;
            }
        }
        m
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> Scalar {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: Scalar) {
        self.data[i * self.cols + j] = v % self.field.p();
    }

    pub fn row(&self, i: usize) -> &[Scalar] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<Scalar> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&v| v == 0)
    }

    pub fn transpose(&self) -> Matrix {
        Matrix::from_fn(self.field, self.cols, self.rows, |i, j| self.get(j, i))
    }

    pub fn mul(&self, other: &Matrix) -> Result<Matrix> {
        if self.cols != other.rows || self.field != other.field {
            return Err(Error::input(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let f = self.field;
        let mut out = Matrix::zeros(f, self.rows, other.cols);
        for i in 0..self.rows {
            let mut acc = vec![0u64; other.cols];
            for k in 0..self.cols {
                let a = self.get(i, k) as u64;
                if a == 0 {
                    continue;
                }
                for (j, slot) in acc.iter_mut().enumerate() {
                    *slot = (*slot + a * other.get(k, j) as u64) % f.p() as u64;
                }
            }
            for (j, v) in acc.into_iter().enumerate() {
                out.data[i * out.cols + j] = v as Scalar;
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, x: &[Scalar]) -> Result<Vec<Scalar>> {
        if x.len() != self.cols {
            return Err(Error::input(format!(
                "vector of length {} does not match {} columns",
                x.len(),
                self.cols
            )));
        }
        let p = self.field.p() as u64;
        Ok((0..self.rows)
            .map(|i| {
                let s = self
                    .row(i)
                    .iter()
                    .zip(x)
                    .fold(0u64, |acc, (&a, &b)| (acc + a as u64 * b as u64) % p);
                s as Scalar
            })
            .collect())
    }

    /// Reduced row echelon form by Gaussian elimination.
    pub fn rref(&self) -> Rref {
        let f = self.field;
        let p = f.p() as u64;
        let mut m = self.clone();
        let cols = m.cols;
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..cols {
            if r == m.rows {
                break;
            }
            let Some(piv) = (r..m.rows).find(|&i| m.data[i * cols + c] != 0) else {
                continue;
            };
            if piv != r {
                for j in 0..cols {
                    m.data.swap(piv * cols + j, r * cols + j);
                }
            }
            let inv = f.inv(m.data[r * cols + c]).expect("pivot is nonzero") as u64;
            for j in c..cols {
                let v = &mut m.data[r * cols + j];
                *v = ((*v as u64 * inv) % p) as Scalar;
            }
            let (before, rest) = m.data.split_at_mut(r * cols);
            let (pivot_row, after) = rest.split_at_mut(cols);
            let eliminate = |row: &mut [Scalar]| {
                let factor = row[c] as u64;
                if factor == 0 {
                    return;
                }
                for j in c..cols {
                    let b = pivot_row[j] as u64;
                    if b != 0 {
                        row[j] = ((row[j] as u64 + p * p - factor * b) % p) as Scalar;
                    }
                }
            };
            before.chunks_mut(cols).for_each(eliminate);
            after.chunks_mut(cols).for_each(eliminate);
            pivots.push(c);
            r += 1;
        }
        Rref { matrix: m, pivots }
    }

    pub fn rank(&self) -> usize {
        self.rref().pivots.len()
    }

    /// Some `x` with `self * x = rhs`, or `None` when the system is inconsistent.
    pub fn solve(&self, rhs: &[Scalar]) -> Result<Option<Vec<Scalar>>> {
        if rhs.len() != self.rows {
            return Err(Error::input(format!(
                "right-hand side of length {} does not match {} rows",
                rhs.len(),
                self.rows
            )));
        }
        let mut aug = Matrix::zeros(self.field, self.rows, self.cols + 1);
        for i in 0..self.rows {
            aug.data[i * (self.cols + 1)..i * (self.cols + 1) + self.cols]
                .copy_from_slice(self.row(i));
            aug.data[i * (self.cols + 1) + self.cols] = rhs[i] % self.field.p();
        }
        let Rref { matrix, pivots } = aug.rref();
        if pivots.last() == Some(&self.cols) {
            return Ok(None);
        }
        let mut x = vec![0; self.cols];
        for (r, &c) in pivots.iter().enumerate() {
            x[c] = matrix.get(r, self.cols);
        }
        Ok(Some(x))
    }

    /// Basis of the null space. Restricted to the non-pivot columns the basis
    /// vectors are the standard unit vectors, in increasing column order.
    pub fn kernel_basis(&self) -> Vec<Vec<Scalar>> {
        let Rref { matrix, pivots } = self.rref();
        kernel_from_rref(&matrix, &pivots)
    }

    pub fn inverse(&self) -> Option<Matrix> {
        if self.rows != self.cols {
            return None;
        }
        let n = self.rows;
        let mut aug = Matrix::zeros(self.field, n, 2 * n);
        for i in 0..n {
            aug.data[i * 2 * n..i * 2 * n + n].copy_from_slice(self.row(i));
            aug.data[i * 2 * n + n + i] = 1 % self.field.p();
        }
        let Rref { matrix, pivots } = aug.rref();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return None;
        }
        Some(Matrix::from_fn(self.field, n, n, |i, j| matrix.get(i, n + j)))
    }
}

fn kernel_from_rref(matrix: &Matrix, pivots: &[usize]) -> Vec<Vec<Scalar>> {
    let f = matrix.field;
    let cols = matrix.cols;
    let mut is_pivot = vec![false; cols];
    for &c in pivots {
        is_pivot[c] = true;
    }
    (0..cols)
        .filter(|&c| !is_pivot[c])
        .map(|free| {
            let mut v = vec![0; cols];
            v[free] = 1 % f.p();
            for (r, &pc) in pivots.iter().enumerate() {
                v[pc] = f.neg(matrix.get(r, free));
            }
            v
        })
        .collect()
}

pub fn rank(m: &Matrix) -> usize {
    m.rank()
}

pub fn solve_linear(m: &Matrix, rhs: &[Scalar]) -> Result<Option<Vec<Scalar>>> {
    m.solve(rhs)
}

pub fn kernel_basis(m: &Matrix) -> Vec<Vec<Scalar>> {
    m.kernel_basis()
}

/// Incrementally built subspace of `GF(p)^n` kept in echelon form.
#[derive(Clone, Debug)]
pub struct Subspace {
    field: PrimeField,
    ambient: usize,
    // (pivot column, row with a 1 at the pivot and zeros at earlier pivots)
    rows: Vec<(usize, Vec<Scalar>)>,
}

impl Subspace {
    pub fn new(field: PrimeField, ambient: usize) -> Self {
        Self {
            field,
            ambient,
            rows: Vec::new(),
        }
    }

    pub fn spanned_by<'a>(
        field: PrimeField,
        ambient: usize,
        vectors: impl IntoIterator<Item = &'a Vec<Scalar>>,
    ) -> Self {
        let mut s = Self::new(field, ambient);
        for v in vectors {
            s.insert(v);
        }
        s
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    /// Reduces `v` against the echelon rows, returning the remainder.
    pub fn reduce(&self, v: &[Scalar]) -> Vec<Scalar> {
        let f = self.field;
        let mut w = v.to_vec();
        for (c, row) in &self.rows {
            let a = w[*c];
            if a != 0 {
                for (x, &b) in w.iter_mut().zip(row) {
                    if b != 0 {
                        *x = f.sub(*x, f.mul(a, b));
                    }
                }
            }
        }
        w
    }

    pub fn contains(&self, v: &[Scalar]) -> bool {
        self.reduce(v).iter().all(|&x| x == 0)
    }

    /// Adds `v`; returns whether the dimension grew.
    pub fn insert(&mut self, v: &[Scalar]) -> bool {
        let w = self.reduce(v);
        let Some(c) = w.iter().position(|&x| x != 0) else {
            return false;
        };
        let inv = self.field.inv(w[c]).expect("nonzero");
        let w: Vec<Scalar> = w.iter().map(|&x| self.field.mul(x, inv)).collect();
        self.rows.push((c, w));
        true
    }

    /// Echelon basis vectors.
    pub fn basis(&self) -> Vec<Vec<Scalar>> {
        self.rows.iter().map(|(_, r)| r.clone()).collect()
    }

    pub fn is_subspace_of(&self, other: &Subspace) -> bool {
        self.rows.iter().all(|(_, r)| other.contains(r))
    }
}

/// `target -= c * src` on sorted sparse vectors.
pub fn sparse_axpy(field: PrimeField, target: &SparseVec, c: Scalar, src: &SparseVec) -> SparseVec {
    let mut out = Vec::with_capacity(target.len() + src.len());
    let (mut i, mut j) = (0, 0);
    while i < target.len() || j < src.len() {
        let ti = target.get(i).map_or(usize::MAX, |e| e.0);
        let sj = src.get(j).map_or(usize::MAX, |e| e.0);
        if ti < sj {
            out.push(target[i]);
            i += 1;
        } else if sj < ti {
            let v = field.neg(field.mul(c, src[j].1));
            if v != 0 {
                out.push((sj, v));
            }
            j += 1;
        } else {
            let v = field.sub(target[i].1, field.mul(c, src[j].1));
            if v != 0 {
                out.push((ti, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

pub fn sparse_from_dense(v: &[Scalar]) -> SparseVec {
    v.iter()
        .enumerate()
        .filter(|(_, &x)| x != 0)
        .map(|(i, &x)| (i, x))
        .collect()
}

pub fn dense_from_sparse(v: &SparseVec, len: usize) -> Vec<Scalar> {
    let mut out = vec![0; len];
    for &(i, x) in v {
        out[i] = x;
    }
    out
}

/// Outcome of inserting a vector into a [`SparseEchelon`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Insertion {
    Independent,
    /// The vector lies in the span. With tracking enabled the payload is a
    /// relation among insertion ids: it has coefficient 1 at the new id and
    /// sums to zero when applied to the inserted vectors.
    Dependent(Option<SparseVec>),
}

/// Sparse echelon basis keyed by leading index, with optional tracking of
/// each row as a combination of the inserted vectors.
#[derive(Clone, Debug)]
pub struct SparseEchelon {
    field: PrimeField,
    pivots: HashMap<usize, usize>,
    rows: Vec<SparseVec>,
    combos: Option<Vec<SparseVec>>,
    next_id: usize,
}

impl SparseEchelon {
    pub fn new(field: PrimeField, tracking: bool) -> Self {
        Self {
            field,
            pivots: HashMap::new(),
            rows: Vec::new(),
            combos: tracking.then(Vec::new),
            next_id: 0,
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Reduces `v`; returns the remainder and, with tracking, the combination
    /// of inserted vectors that was subtracted.
    pub fn reduce(&self, v: &SparseVec) -> (SparseVec, Option<SparseVec>) {
        let f = self.field;
        let mut w = v.clone();
        let mut used: Option<SparseVec> = self.combos.as_ref().map(|_| Vec::new());
        loop {
            let Some(&(lead, a)) = w.iter().find(|&&(c, _)| self.pivots.get(&c).is_some()) else {
                break;
            };
            let r = self.pivots[&lead];
            w = sparse_axpy(f, &w, a, &self.rows[r]);
            if let (Some(u), Some(combos)) = (used.as_mut(), self.combos.as_ref()) {
                *u = sparse_axpy(f, u, f.neg(a), &combos[r]);
            }
        }
        (w, used)
    }

    pub fn contains(&self, v: &SparseVec) -> bool {
        self.reduce(v).0.is_empty()
    }

    pub fn insert(&mut self, v: &SparseVec) -> Insertion {
        let f = self.field;
        let id = self.next_id;
        self.next_id += 1;
        let (w, used) = self.reduce(v);
        if w.is_empty() {
            return Insertion::Dependent(used.map(|u| sparse_axpy(f, &vec![(id, 1)], 1, &u)));
        }
        let lead = w[0].0;
        let inv = f.inv(w[0].1).expect("nonzero");
        let w: SparseVec = w.iter().map(|&(c, x)| (c, f.mul(x, inv))).collect();
        if let (Some(combos), Some(u)) = (self.combos.as_mut(), used) {
            // row = (v - used) * inv
            let combo = sparse_axpy(f, &vec![(id, 1)], 1, &u);
            combos.push(combo.iter().map(|&(c, x)| (c, f.mul(x, inv))).collect());
        }
        self.pivots.insert(lead, self.rows.len());
        self.rows.push(w);
        Insertion::Independent
    }
}

/// Sparse matrix stored as triples with duplicates summed.
#[derive(Clone, Debug)]
pub struct SparseMatrix {
    field: PrimeField,
    rows: usize,
    cols: usize,
    // per column: sorted (row, value)
    columns: Vec<SparseVec>,
}

/// Dense components are eliminated directly below this many entries.
const DENSE_COMPONENT_LIMIT: usize = 1 << 20;

struct Component {
    rows: Vec<usize>,
    cols: Vec<usize>,
}

impl SparseMatrix {
    pub fn from_triples(
        field: PrimeField,
        rows: usize,
        cols: usize,
        triples: impl IntoIterator<Item = (usize, usize, Scalar)>,
    ) -> Result<Self> {
        let mut acc: Vec<HashMap<usize, Scalar>> = vec![HashMap::new(); cols];
        for (i, j, v) in triples {
            if i >= rows || j >= cols {
                return Err(Error::input(format!("entry ({i},{j}) outside {rows}x{cols}")));
            }
            let e = acc[j].entry(i).or_insert(0);
            *e = field.add(*e, v % field.p());
        }
        let columns = acc
            .into_iter()
            .map(|m| {
                let mut c: SparseVec = m.into_iter().filter(|&(_, v)| v != 0).collect();
                c.sort_unstable();
                c
            })
            .collect();
        Ok(Self {
            field,
            rows,
            cols,
            columns,
        })
    }

    /// Builds a matrix from its sparse columns.
    pub fn from_columns(field: PrimeField, rows: usize, columns: Vec<SparseVec>) -> Self {
        Self {
            field,
            rows,
            cols: columns.len(),
            columns,
        }
    }

    pub fn from_dense(m: &Matrix) -> Self {
        let columns = (0..m.cols()).map(|j| sparse_from_dense(&m.column(j))).collect();
        Self::from_columns(m.field(), m.rows(), columns)
    }

    pub fn to_dense(&self) -> Matrix {
        let mut m = Matrix::zeros(self.field, self.rows, self.cols);
        for (j, c) in self.columns.iter().enumerate() {
            for &(i, v) in c {
                m.set(i, j, v);
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn column(&self, j: usize) -> &SparseVec {
        &self.columns[j]
    }

    pub fn nnz(&self) -> usize {
        self.columns.iter().map(Vec::len).sum()
    }

    fn components(&self) -> Vec<Component> {
        // union-find over rows (0..rows) and columns (rows..rows+cols)
        let n = self.rows + self.cols;
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(parent: &mut [usize], mut x: usize) -> usize {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }
        for (j, c) in self.columns.iter().enumerate() {
            for &(i, _) in c {
                let (a, b) = (find(&mut parent, i), find(&mut parent, self.rows + j));
                if a != b {
                    parent[a] = b;
                }
            }
        }
        let mut index: HashMap<usize, usize> = HashMap::new();
        let mut comps: Vec<Component> = Vec::new();
        for j in 0..self.cols {
            if self.columns[j].is_empty() {
                continue;
            }
            let root = find(&mut parent, self.rows + j);
            let k = *index.entry(root).or_insert_with(|| {
                comps.push(Component {
                    rows: Vec::new(),
                    cols: Vec::new(),
                });
                comps.len() - 1
            });
            comps[k].cols.push(j);
        }
        for i in 0..self.rows {
            let root = find(&mut parent, i);
            if let Some(&k) = index.get(&root) {
                comps[k].rows.push(i);
            }
        }
        comps
    }

    fn component_dense(&self, comp: &Component) -> Matrix {
        let row_pos: HashMap<usize, usize> =
            comp.rows.iter().enumerate().map(|(k, &i)| (i, k)).collect();
        let mut m = Matrix::zeros(self.field, comp.rows.len(), comp.cols.len());
        for (k, &j) in comp.cols.iter().enumerate() {
            for &(i, v) in &self.columns[j] {
                m.set(row_pos[&i], k, v);
            }
        }
        m
    }

    fn is_small(comp: &Component) -> bool {
        comp.rows.len() * comp.cols.len() <= DENSE_COMPONENT_LIMIT
    }

    pub fn rank(&self) -> usize {
        self.components()
            .par_iter()
            .map(|comp| {
                if Self::is_small(comp) {
                    self.component_dense(comp).rank()
                } else {
                    let mut e = SparseEchelon::new(self.field, false);
                    for &j in &comp.cols {
                        e.insert(&self.columns[j]);
                    }
                    e.rank()
                }
            })
            .sum()
    }

    /// Null space basis as sparse vectors over the column indices.
    pub fn kernel_basis(&self) -> Vec<SparseVec> {
        let mut out: Vec<SparseVec> = self
            .columns
            .iter()
            .enumerate()
            .filter(|(_, c)| c.is_empty())
            .map(|(j, _)| vec![(j, 1 % self.field.p())])
            .collect();
        let per_comp: Vec<Vec<SparseVec>> = self
            .components()
            .par_iter()
            .map(|comp| {
                if Self::is_small(comp) {
                    self.component_dense(comp)
                        .kernel_basis()
                        .into_iter()
                        .map(|v| {
                            v.iter()
                                .enumerate()
                                .filter(|(_, &x)| x != 0)
                                .map(|(k, &x)| (comp.cols[k], x))
                                .collect()
                        })
                        .collect()
                } else {
                    let mut e = SparseEchelon::new(self.field, true);
                    let mut ker = Vec::new();
                    for &j in &comp.cols {
                        if let Insertion::Dependent(Some(rel)) = e.insert(&self.columns[j]) {
                            let mut v: SparseVec =
                                rel.into_iter().map(|(id, x)| (comp.cols[id], x)).collect();
                            v.sort_unstable();
                            ker.push(v);
                        }
                    }
                    ker
                }
            })
            .collect();
        out.extend(per_comp.into_iter().flatten());
        out
    }

    /// Some `x` with `self * x = rhs`, or `None` when inconsistent.
    pub fn solve(&self, rhs: &[Scalar]) -> Result<Option<Vec<Scalar>>> {
        if rhs.len() != self.rows {
            return Err(Error::input(format!(
                "right-hand side of length {} does not match {} rows",
                rhs.len(),
                self.rows
            )));
        }
        let comps = self.components();
        let mut covered = vec![false; self.rows];
        for comp in &comps {
            for &i in &comp.rows {
                covered[i] = true;
            }
        }
        if rhs.iter().zip(&covered).any(|(&b, &c)| b % self.field.p() != 0 && !c) {
            return Ok(None);
        }
        let parts: Vec<Option<Vec<(usize, Scalar)>>> = comps
            .par_iter()
            .map(|comp| {
                let b: Vec<Scalar> = comp.rows.iter().map(|&i| rhs[i] % self.field.p()).collect();
                if b.iter().all(|&x| x == 0) {
                    return Some(Vec::new());
                }
                if Self::is_small(comp) {
                    let m = self.component_dense(comp);
                    let x = m.solve(&b).expect("dimensions agree")?;
                    Some(
                        x.into_iter()
                            .enumerate()
                            .map(|(k, v)| (comp.cols[k], v))
                            .collect(),
                    )
                } else {
                    let mut e = SparseEchelon::new(self.field, true);
                    for &j in &comp.cols {
                        e.insert(&self.columns[j]);
                    }
                    let (rem, used) = e.reduce(&sparse_from_dense_rows(rhs, &comp.rows));
                    if !rem.is_empty() {
                        return None;
                    }
                    Some(
                        used.expect("tracking enabled")
                            .into_iter()
                            .map(|(id, v)| (comp.cols[id], v))
                            .collect(),
                    )
                }
            })
            .collect();
        let mut x = vec![0; self.cols];
        for part in parts {
            let Some(part) = part else {
                return Ok(None);
            };
            for (j, v) in part {
                x[j] = v;
            }
        }
        Ok(Some(x))
    }

    pub fn mul_vec(&self, x: &[Scalar]) -> Vec<Scalar> {
        let f = self.field;
        let mut out = vec![0; self.rows];
        for (j, c) in self.columns.iter().enumerate() {
            if x[j] == 0 {
                continue;
            }
            for &(i, v) in c {
                out[i] = f.add(out[i], f.mul(v, x[j]));
            }
        }
        out
    }
}

fn sparse_from_dense_rows(v: &[Scalar], rows: &[usize]) -> SparseVec {
    let mut out: SparseVec = rows
        .iter()
        .filter(|&&i| v[i] != 0)
        .map(|&i| (i, v[i]))
        .collect();
    out.sort_unstable();
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gf(p: u32) -> PrimeField {
        PrimeField::new(p).unwrap()
    }

    #[test]
    fn rank_examples() {
        let f = gf(3);
        assert_eq!(Matrix::zeros(f, 3, 3).rank(), 0);
        assert_eq!(Matrix::identity(f, 3).rank(), 3);
        let m = Matrix::from_rows(f, &[vec![1, 2], vec![2, 4]]).unwrap();
        assert_eq!(m.rank(), 1);
    }

    #[test]
    fn solve_examples() {
        let f = gf(3);
        let id = Matrix::identity(f, 2);
        assert_eq!(id.solve(&[1, 2]).unwrap(), Some(vec![1, 2]));
        let m = Matrix::from_rows(f, &[vec![1, 1]]).unwrap();
        let x = m.solve(&[0]).unwrap().unwrap();
        assert!([[0, 0], [1, 2], [2, 1]].iter().any(|s| s[..] == x[..]));
        let m = Matrix::from_rows(f, &[vec![1], vec![2]]).unwrap();
        assert_eq!(m.solve(&[1, 1]).unwrap(), None);
        assert!(m.solve(&[1]).is_err());
    }

    #[test]
    fn kernel_examples() {
        let f = gf(3);
        assert!(Matrix::identity(f, 2).kernel_basis().is_empty());
        assert_eq!(Matrix::zeros(f, 2, 2).kernel_basis().len(), 2);
        let m = Matrix::from_rows(f, &[vec![1, 2]]).unwrap();
        assert_eq!(m.kernel_basis(), vec![vec![1, 1]]);
    }

    #[test]
    fn inverse_roundtrip() {
        let f = gf(7);
        let m = Matrix::from_rows(f, &[vec![1, 2, 0], vec![0, 1, 3], vec![4, 0, 1]]).unwrap();
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv).unwrap(), Matrix::identity(f, 3));
        let s = Matrix::from_rows(f, &[vec![1, 2], vec![2, 4]]).unwrap();
        assert!(s.inverse().is_none());
    }

    #[test]
    fn subspace_membership() {
        let f = gf(5);
        let s = Subspace::spanned_by(f, 3, &[vec![1, 2, 0], vec![0, 1, 1]]);
        assert_eq!(s.dim(), 2);
        assert!(s.contains(&[1, 3, 1]));
        assert!(!s.contains(&[0, 0, 1]));
    }

    #[test]
    fn sparse_matches_dense() {
        let f = gf(3);
        let m = Matrix::from_rows(
            f,
            &[
                vec![1, 2, 0, 0, 0],
                vec![2, 1, 0, 0, 0],
                vec![0, 0, 1, 1, 0],
                vec![0, 0, 0, 0, 0],
            ],
        )
        .unwrap();
        let s = SparseMatrix::from_dense(&m);
        assert_eq!(s.rank(), m.rank());
        let ker = s.kernel_basis();
        assert_eq!(ker.len(), 5 - m.rank());
        for v in &ker {
            assert!(m.mul_vec(&dense_from_sparse(v, 5)).unwrap().iter().all(|&x| x == 0));
        }
        let x = s.solve(&[1, 2, 1, 0]).unwrap().unwrap();
        assert_eq!(m.mul_vec(&x).unwrap(), vec![1, 2, 1, 0]);
        assert_eq!(s.solve(&[0, 0, 0, 1]).unwrap(), None);
    }

    #[test]
    fn echelon_tracking_gives_relations() {
        let f = gf(5);
        let mut e = SparseEchelon::new(f, true);
        let a: SparseVec = vec![(0, 1), (2, 3)];
        let b: SparseVec = vec![(1, 2), (2, 1)];
        let c = sparse_axpy(f, &sparse_axpy(f, &vec![], 4, &a), 2, &b); // -4a - 2b
        assert_eq!(e.insert(&a), Insertion::Independent);
        assert_eq!(e.insert(&b), Insertion::Independent);
        let Insertion::Dependent(Some(rel)) = e.insert(&c) else {
            panic!("expected dependency");
        };
        let vecs = [a, b, c];
        let mut sum: SparseVec = Vec::new();
        for &(id, x) in &rel {
            sum = sparse_axpy(f, &sum, f.neg(x), &vecs[id]);
        }
        assert!(sum.is_empty());
    }
}
