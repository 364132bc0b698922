//! Bialgebra structures layered on an [`Algebra`].

use std::sync::Arc;

use crate::algebra::{dense_to_sparse, Algebra};
use crate::error::{Error, Result};
use crate::field::Scalar;
use crate::linalg::{sparse_from_dense, Matrix, SparseVec, Subspace};
use crate::radical::{radical, RadicalFiltration};
use crate::report::AxiomReport;
use crate::tensor::TensorElement;

/// Comultiplication `Δ: A → A⊗A` with the counit of the underlying algebra.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HopfStructure {
    algebra: Arc<Algebra>,
    // Δ(e_i) as a sparse vector over dim² (index j*dim + k for e_j ⊗ e_k)
    comul: Vec<SparseVec>,
    cocommutative: bool,
}

/// Slot-wise maps raising or lowering tensor arity.
#[derive(Clone, Copy, Debug)]
pub enum Coface<'a> {
    Comul(&'a HopfStructure),
    Counit,
    InsertUnit,
}

pub fn coface_apply(t: &TensorElement, slot: usize, map: Coface<'_>) -> Result<TensorElement> {
    match map {
        Coface::Comul(h) => h.apply_comul(t, slot),
        Coface::Counit => t.apply_counit(slot),
        Coface::InsertUnit => t.insert_unit(slot),
    }
}

impl HopfStructure {
    pub fn new(algebra: Arc<Algebra>, comul: Vec<SparseVec>) -> Result<Self> {
        let d = algebra.dim();
        if comul.len() != d {
            return Err(Error::input(format!(
                "comultiplication given on {} basis elements, expected {d}",
                comul.len()
            )));
        }
        let p = algebra.p();
        let mut clean = Vec::with_capacity(d);
        for images in comul {
            let mut acc = vec![0 as Scalar; d * d];
            for (idx, v) in images {
                if idx >= d * d {
                    return Err(Error::input(format!("comultiplication index {idx} out of range")));
                }
                acc[idx] = (acc[idx] + v % p) % p;
            }
            clean.push(sparse_from_dense(&acc));
        }
        let cocommutative = clean.iter().all(|c| {
            let mut swapped: SparseVec = c.iter().map(|&(idx, v)| ((idx % d) * d + idx / d, v)).collect();
            swapped.sort_unstable();
            &swapped == c
        });
        Ok(Self {
            algebra,
            comul: clean,
            cocommutative,
        })
    }

    /// From `(i, j, k, v)` entries meaning `Δ(e_i) ∋ v e_j ⊗ e_k`.
    pub fn from_entries(
        algebra: Arc<Algebra>,
        entries: impl IntoIterator<Item = (usize, usize, usize, Scalar)>,
    ) -> Result<Self> {
        let d = algebra.dim();
        let mut comul = vec![Vec::new(); d];
        for (i, j, k, v) in entries {
            if i >= d || j >= d || k >= d {
                return Err(Error::input(format!(
                    "comultiplication index ({i},{j},{k}) out of range for dim {d}"
                )));
            }
            comul[i].push((j * d + k, v));
        }
        Self::new(algebra, comul)
    }

    pub fn algebra(&self) -> &Arc<Algebra> {
        &self.algebra
    }

    pub fn dim(&self) -> usize {
        self.algebra.dim()
    }

    pub fn is_cocommutative(&self) -> bool {
        self.cocommutative
    }

    pub fn comul_images(&self) -> &[SparseVec] {
        &self.comul
    }

    /// All `(i, j, k, v)` comultiplication entries in index order.
    pub fn comul_entries(&self) -> Vec<(usize, usize, usize, Scalar)> {
        let d = self.dim();
        let mut out = Vec::new();
        for (i, c) in self.comul.iter().enumerate() {
            for &(idx, v) in c {
                out.push((i, idx / d, idx % d, v));
            }
        }
        out
    }

    pub fn comul_basis(&self, i: usize) -> TensorElement {
        let d = self.dim();
        let mut coords = vec![0; d * d];
        for &(idx, v) in &self.comul[i] {
            coords[idx] = v;
        }
        TensorElement::from_coords(&self.algebra, 2, coords).expect("arity 2")
    }

    pub fn comul(&self, v: &[Scalar]) -> TensorElement {
        let t = TensorElement::from_coords(&self.algebra, 1, v.to_vec()).expect("arity 1");
        self.apply_comul(&t, 0).expect("arity 1 to 2")
    }

    /// Applies `Δ` in slot `slot`.
    pub fn apply_comul(&self, t: &TensorElement, slot: usize) -> Result<TensorElement> {
        if **t.algebra() != *self.algebra {
            return Err(Error::input("tensor does not live over this Hopf algebra"));
        }
        t.expand_slot(slot, 2, &self.comul)
    }

    pub fn check_bialgebra(&self) -> AxiomReport {
        let a = &self.algebra;
        let d = self.dim();
        let mut report = AxiomReport::new();
        let deltas: Vec<TensorElement> = (0..d).map(|i| self.comul_basis(i)).collect();
        let basis = |i: usize| TensorElement::from_coords(a, 1, a.basis_vector(i)).expect("arity 1");

        report.compare_all(
            "coassociativity",
            (0..d).map(|i| {
                (
                    self.apply_comul(&deltas[i], 0).expect("arity 3"),
                    self.apply_comul(&deltas[i], 1).expect("arity 3"),
                )
            }),
        );
        report.compare_all(
            "counit",
            (0..d).flat_map(|i| {
                let left = deltas[i].apply_counit(0).expect("arity 2");
                let right = deltas[i].apply_counit(1).expect("arity 2");
                [(left, basis(i)), (right, basis(i))]
            }),
        );
        report.compare_all(
            "comul_multiplicative",
            (0..d).flat_map(|i| {
                let deltas = &deltas;
                (0..d).map(move |j| {
                    let prod = a.mul(&a.basis_vector(i), &a.basis_vector(j));
                    (self.comul(&prod), deltas[i].mul(&deltas[j]).expect("same arity"))
                })
            }),
        );
        let one2 = TensorElement::one(a, 2).expect("arity 2");
        report.compare("comul_unit", &self.comul(a.unit()), &one2);
        report.record(
            "counit_multiplicative",
            a.counit_is_homomorphism(),
            None,
        );
        if self.cocommutative {
            report.compare_all(
                "cocommutativity",
                deltas
                    .iter()
                    .map(|t| (t.permute_slots(&[2, 1]).expect("arity 2"), t.clone())),
            );
        }
        report
    }

    /// Basis of `{x : Δx = x⊗1 + 1⊗x}`.
    pub fn primitives(&self) -> Vec<Vec<Scalar>> {
        let a = &self.algebra;
        let d = self.dim();
        let mut cols = Vec::with_capacity(d);
        for i in 0..d {
            let e = a.basis_vector(i);
            let lhs = self.comul_basis(i);
            let t = TensorElement::from_coords(a, 1, e).expect("arity 1");
            let rhs = t
                .insert_unit(1)
                .and_then(|x| x.add(&t.insert_unit(0)?))
                .expect("arity 2");
            cols.push(lhs.sub(&rhs).expect("same arity").into_coords());
        }
        Matrix::from_columns(a.field(), d * d, &cols).kernel_basis()
    }

    pub fn is_primitive(&self, x: &[Scalar]) -> bool {
        let a = &self.algebra;
        let t = TensorElement::from_coords(a, 1, x.to_vec()).expect("arity 1");
        let rhs = t.insert_unit(1).and_then(|l| l.add(&t.insert_unit(0)?));
        rhs.is_ok_and(|r| self.comul(x) == r)
    }

    pub fn is_grouplike(&self, g: &[Scalar]) -> bool {
        let a = &self.algebra;
        if a.apply_counit(g) != 1 {
            return false;
        }
        let gg = TensorElement::pure(a, &[g.to_vec(), g.to_vec()]).expect("arity 2");
        self.comul(g) == gg
    }

    /// The dual bialgebra on the dual basis `e_i*`. Its product is the
    /// transpose of `Δ`, its coproduct the transpose of the product, its
    /// unit the old counit and its counit the old unit.
    pub fn dual(&self) -> Result<HopfStructure> {
        let a = &self.algebra;
        let d = self.dim();
        let mut table = vec![Vec::new(); d * d];
        for (k, c) in self.comul.iter().enumerate() {
            for &(idx, v) in c {
                table[idx].push((k, v));
            }
        }
        for t in &mut table {
            t.sort_unstable();
        }
        let mut comul = vec![Vec::new(); d];
        for i in 0..d {
            for j in 0..d {
                for &(k, v) in a.basis_product(i, j) {
                    comul[k].push((i * d + j, v));
                }
            }
        }
        let labels = a.labels().iter().map(|l| dual_label(l)).collect();
        let dual_alg = Algebra::from_table(a.field(), labels, table, a.unit().to_vec())?;
        HopfStructure::new(Arc::new(dual_alg), comul)
    }

    /// `H ⊗ K` with basis `h_i ⊗ k_j` at index `i * dim_K + j`.
    pub fn tensor_product(&self, other: &HopfStructure) -> Result<HopfStructure> {
        let alg = self.algebra.tensor_product(&other.algebra)?;
        let f = alg.field();
        let (da, db) = (self.dim(), other.dim());
        let n = da * db;
        let mut comul = Vec::with_capacity(n);
        for i in 0..da {
            for j in 0..db {
                let mut images = Vec::new();
                for &(ia, va) in &self.comul[i] {
                    let (i1, i2) = (ia / da, ia % da);
                    for &(jb, vb) in &other.comul[j] {
                        let (j1, j2) = (jb / db, jb % db);
                        images.push(((i1 * db + j1) * n + i2 * db + j2, f.mul(va, vb)));
                    }
                }
                comul.push(images);
            }
        }
        HopfStructure::new(Arc::new(alg), comul)
    }

    /// Same coalgebra data over a different but equal algebra handle.
    pub fn with_comul(&self, comul: Vec<SparseVec>) -> Result<HopfStructure> {
        HopfStructure::new(self.algebra.clone(), comul)
    }

    pub fn radical_filtration(&self) -> Result<RadicalFiltration> {
        radical(&self.algebra)
    }

    /// The associated graded bialgebra of the radical filtration.
    pub fn associated_graded(&self) -> Result<GradedHopf> {
        let filt = self.radical_filtration()?;
        let a = &self.algebra;
        let f = a.field();
        let d = self.dim();
        let (basis, degrees) = adapted_basis(&filt);
        let pmat = Matrix::from_columns(f, d, &basis);
        let pinv = pmat
            .inverse()
            .ok_or_else(|| Error::internal("adapted basis is singular"))?;
        let to_adapted = |v: &[Scalar]| pinv.mul_vec(v).expect("square");

        let mut table = Vec::with_capacity(d * d);
        for i in 0..d {
            for j in 0..d {
                let coords = to_adapted(&a.mul(&basis[i], &basis[j]));
                let target = degrees[i] + degrees[j];
                let mut entry = Vec::new();
                for (k, &v) in coords.iter().enumerate() {
                    if v == 0 {
                        continue;
                    }
                    if degrees[k] < target {
                        return Err(Error::internal("product lowers radical degree"));
                    }
                    if degrees[k] == target {
                        entry.push((k, v));
                    }
                }
                table.push(entry);
            }
        }
        let images: Vec<SparseVec> = (0..d).map(|j| dense_to_sparse(&pinv.column(j))).collect();
        let mut comul = Vec::with_capacity(d);
        for i in 0..d {
            let delta = self.comul(&basis[i]).map_each_slot(&images)?;
            let mut entry = Vec::new();
            for (idx, v) in delta.support() {
                let (j, k) = (idx / d, idx % d);
                let deg = degrees[j] + degrees[k];
                if deg < degrees[i] {
                    return Err(Error::ChevalleyViolation(format!(
                        "comultiplication of a degree-{} element has a component of degree {deg}",
                        degrees[i]
                    )));
                }
                if deg == degrees[i] {
                    entry.push((idx, v));
                }
            }
            comul.push(entry);
        }
        let counit = (0..d)
            .map(|i| if degrees[i] == 0 { a.apply_counit(&basis[i]) } else { 0 })
            .collect();
        let labels = basis
            .iter()
            .map(|b| match standard_index(b) {
                Some(k) if b[k] == 1 => a.label(k).to_string(),
                _ => format!("[{}]", a.format_element(b)),
            })
            .collect();
        let alg = Algebra::from_table(f, labels, table, counit)?;
        let hopf = HopfStructure::new(Arc::new(alg), comul)?;
        Ok(GradedHopf {
            hopf,
            degrees,
            adapted_basis: basis,
        })
    }

    /// Whether the stored basis is adapted to the radical filtration and the
    /// associated graded bialgebra coincides with `self` coordinatewise.
    pub fn is_radically_graded(&self) -> Result<bool> {
        let gr = self.associated_graded()?;
        let standard = gr
            .adapted_basis
            .iter()
            .enumerate()
            .all(|(i, b)| standard_index(b) == Some(i) && b[i] == 1);
        Ok(standard
            && gr.hopf.algebra.structure_constants() == self.algebra.structure_constants()
            && gr.hopf.comul == self.comul)
    }
}

/// `H` with a degree for each basis element such that the product adds
/// degrees and `Δ` preserves total degree.
#[derive(Clone, Debug)]
pub struct GradedHopf {
    pub hopf: HopfStructure,
    pub degrees: Vec<usize>,
    /// Basis of the original algebra the graded basis was lifted from.
    pub adapted_basis: Vec<Vec<Scalar>>,
}

impl GradedHopf {
    /// Degree of a basis tensor in `H^{⊗m}` (sum over slots).
    pub fn tensor_degree(&self, digits: &[usize]) -> usize {
        digits.iter().map(|&i| self.degrees[i]).sum()
    }

    pub fn is_graded(&self) -> bool {
        let a = self.hopf.algebra();
        let d = a.dim();
        let products = (0..d).all(|i| {
            (0..d).all(|j| {
                a.basis_product(i, j)
                    .iter()
                    .all(|&(k, _)| self.degrees[k] == self.degrees[i] + self.degrees[j])
            })
        });
        let coproducts = (0..d).all(|i| {
            self.hopf.comul[i]
                .iter()
                .all(|&(idx, _)| self.degrees[idx / d] + self.degrees[idx % d] == self.degrees[i])
        });
        products && coproducts
    }

    /// Whether the degree-one part consists of primitives and generates.
    pub fn is_primitively_generated(&self) -> bool {
        let a = self.hopf.algebra();
        let deg1: Vec<Vec<Scalar>> = (0..a.dim())
            .filter(|&i| self.degrees[i] == 1)
            .map(|i| a.basis_vector(i))
            .collect();
        let prims = self.hopf.primitives();
        let prim_space = Subspace::spanned_by(a.field(), a.dim(), &prims);
        deg1.iter().all(|v| prim_space.contains(v))
            && generated_subalgebra(a, &prims).dim() == a.dim()
    }
}

/// Subalgebra generated by `gens` together with the unit.
pub fn generated_subalgebra(a: &Algebra, gens: &[Vec<Scalar>]) -> Subspace {
    let mut span = Subspace::new(a.field(), a.dim());
    let mut frontier = vec![a.one()];
    span.insert(a.unit());
    while let Some(v) = frontier.pop() {
        for g in gens {
            let w = a.mul(&v, g);
            if span.insert(&w) {
                frontier.push(w);
            }
        }
    }
    span
}

fn standard_index(v: &[Scalar]) -> Option<usize> {
    let mut nz = v.iter().enumerate().filter(|(_, &x)| x != 0);
    let (k, _) = nz.next()?;
    nz.next().is_none().then_some(k)
}

/// A basis adapted to the filtration, preferring stored basis vectors and
/// the unit in degree zero.
fn adapted_basis(filt: &RadicalFiltration) -> (Vec<Vec<Scalar>>, Vec<usize>) {
    let a = filt.algebra();
    let d = a.dim();
    let n = filt.nilpotency_index();
    let mut current = Subspace::new(a.field(), d);
    let mut chosen: Vec<(Vec<Scalar>, usize)> = Vec::new();
    for r in (0..n).rev() {
        let layer = filt.layer(r);
        let mut candidates: Vec<Vec<Scalar>> = Vec::new();
        if r == 0 {
            candidates.push(a.one());
        }
        candidates.extend((0..d).map(|i| a.basis_vector(i)));
        candidates.extend(layer.basis());
        for c in candidates {
            if current.dim() == layer.dim() {
                break;
            }
            if layer.contains(&c) && current.insert(&c) {
                chosen.push((c, r));
            }
        }
    }
    if chosen.iter().all(|(v, _)| standard_index(v).is_some_and(|k| v[k] == 1)) {
        chosen.sort_by_key(|(v, _)| standard_index(v));
    } else {
        chosen.sort_by_key(|&(_, r)| r);
    }
    chosen.into_iter().unzip()
}

pub(crate) fn dual_label(l: &str) -> String {
    match l.strip_suffix('*') {
        Some(base) => base.to_string(),
        None => format!("{l}*"),
    }
}
