use std::collections::HashSet;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::field::Scalar;
use crate::hopf::HopfStructure;
use crate::quasihopf::{check_twist, pseudotwist_transform, QuasiData};
use crate::tensor::TensorElement;
use crate::truncexp::{certify_nilpotent, NilWitness};

use super::additive::{AdditiveCochain, BarComplex, DEFAULT_BUDGET};
use super::bridge::{cobar_differential, CochainBridge};

/// An invertible tensor all of whose counit contractions are `1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultiplicativeCochain {
    hopf: HopfStructure,
    value: TensorElement,
}

impl MultiplicativeCochain {
    pub fn new(hopf: &HopfStructure, value: TensorElement) -> Result<Self> {
        if **value.algebra() != **hopf.algebra() {
            return Err(Error::input("cochain does not live over the Hopf algebra"));
        }
        let n = value.arity();
        if n == 0 {
            return Err(Error::input("multiplicative cochains have degree at least 1"));
        }
        let normalized = if n == 1 {
            value.total_counit() == 1
        } else {
            let one = TensorElement::one(hopf.algebra(), n - 1)?;
            (0..n).all(|s| value.apply_counit(s).is_ok_and(|c| c == one))
        };
        if !normalized {
            return Err(Error::input("cochain is not counit-normalized"));
        }
        value.invert()?;
        Ok(Self {
            hopf: hopf.clone(),
            value,
        })
    }

    pub fn unit(hopf: &HopfStructure, degree: usize) -> Result<Self> {
        Self::new(hopf, TensorElement::one(hopf.algebra(), degree)?)
    }

    pub fn hopf(&self) -> &HopfStructure {
        &self.hopf
    }

    pub fn degree(&self) -> usize {
        self.value.arity()
    }

    pub fn value(&self) -> &TensorElement {
        &self.value
    }

    pub fn into_value(self) -> TensorElement {
        self.value
    }
}

fn require_abelian(h: &HopfStructure) -> Result<()> {
    if !h.algebra().is_commutative() || !h.is_cocommutative() {
        return Err(Error::unsupported(
            "multiplicative cohomology needs a commutative and cocommutative base",
        ));
    }
    Ok(())
}

/// Twist equation in degree 2, pentagon in degree 3.
pub fn is_multiplicative_cocycle(c: &MultiplicativeCochain) -> Result<bool> {
    match c.degree() {
        2 => Ok(check_twist(&c.hopf, &c.value)?.all_passed()),
        3 => Ok(QuasiData::new(c.hopf.clone(), c.value.clone(), None)?
            .check_pentagon()?
            .all_passed()),
        n => Err(Error::unsupported(format!(
            "multiplicative cocycle test is defined in degrees 2 and 3, not {n}"
        ))),
    }
}

/// `dF = Π_{i=0}^{n+1} ∂_i(F)^{(-1)^i}` with cofaces `∂_0 = 1⊗–`,
/// `∂_i = Δ` in slot `i`, `∂_{n+1} = –⊗1`.
pub fn multiplicative_coboundary(f: &MultiplicativeCochain) -> Result<MultiplicativeCochain> {
    require_abelian(&f.hopf)?;
    let h = &f.hopf;
    let t = &f.value;
    let n = t.arity();
    let mut num = t.insert_unit(0)?;
    let mut den = TensorElement::one(h.algebra(), n + 1)?;
    for i in 1..=n {
        let face = h.apply_comul(t, i - 1)?;
        if i % 2 == 0 {
            num = num.mul(&face)?;
        } else {
            den = den.mul(&face)?;
        }
    }
    let last = t.insert_unit(n)?;
    if (n + 1).is_multiple_of(2) {
        num = num.mul(&last)?;
    } else {
        den = den.mul(&last)?;
    }
    MultiplicativeCochain::new(h, num.mul(&den.invert()?)?)
}

/// Outcome of [`is_multiplicative_coboundary`].
#[derive(Clone, Debug)]
pub enum CoboundaryResult {
    /// `multiplicative_coboundary(witness) = c`.
    Coboundary { witness: MultiplicativeCochain },
    /// `L(c)` is an additive cocycle with nonzero class, given in the
    /// representative basis of the cohomology report of its degree.
    NotCoboundary {
        cocycle: AdditiveCochain,
        class: Vec<Scalar>,
    },
}

fn witness(h: &HopfStructure) -> Result<NilWitness> {
    certify_nilpotent(h.algebra())
        .ok_or_else(|| Error::unsupported("base algebra has no nil witness"))
}

/// Decides whether a multiplicative cocycle of degree `n ≥ 3` is a
/// coboundary by passing to `L(c)`, solving additively and exponentiating.
pub fn is_multiplicative_coboundary(c: &MultiplicativeCochain) -> Result<CoboundaryResult> {
    is_multiplicative_coboundary_with_budget(c, DEFAULT_BUDGET)
}

pub fn is_multiplicative_coboundary_with_budget(
    c: &MultiplicativeCochain,
    budget: usize,
) -> Result<CoboundaryResult> {
    let n = c.degree();
    if n < 3 {
        return Err(Error::unsupported(
            "the logarithm reduction needs degree at least 3",
        ));
    }
    require_abelian(&c.hopf)?;
    let w = witness(&c.hopf)?;
    let phi = w.log(&c.value)?;
    let bridge = CochainBridge::new(&c.hopf)?;
    let cochain = bridge.to_cochain(&phi)?;
    let complex = BarComplex::with_budget(bridge.dual(), budget);
    match complex.solve_coboundary(&cochain)? {
        Some(f) => {
            let big_f = w.exp(&bridge.from_cochain(&f)?)?;
            let witness = MultiplicativeCochain::new(&c.hopf, big_f)?;
            if multiplicative_coboundary(&witness)? != *c {
                return Err(Error::internal("exponentiated primitive does not reproduce the cocycle"));
            }
            Ok(CoboundaryResult::Coboundary { witness })
        }
        None => {
            let report = complex.cohomology(n)?;
            let class = complex
                .class_coordinates(&cochain, &report)?
                .ok_or_else(|| Error::input("not a multiplicative cocycle"))?;
            Ok(CoboundaryResult::NotCoboundary { cocycle: cochain, class })
        }
    }
}

/// Which candidate twists [`brute_force_h2_multiplicative`] enumerates.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SearchSpace {
    /// All of `1 + I⊗I`.
    Full,
    /// `E(s)` for `s` in `P⊗P`, `P` the primitives.
    PrimitiveExponentials,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BruteForceReport {
    pub candidates: u64,
    pub cocycles: usize,
    pub coboundaries: usize,
    pub classes: usize,
    pub gauge_candidates: usize,
    pub all_coboundaries: bool,
}

fn enumerate(p: u64, len: usize, mut idx: u64) -> Vec<Scalar> {
    let mut out = vec![0; len];
    for x in out.iter_mut().rev() {
        *x = (idx % p) as Scalar;
        idx /= p;
    }
    out
}

fn count_within(p: u64, exponent: usize, budget: u64) -> Result<u64> {
    p.checked_pow(exponent as u32)
        .filter(|&t| t <= budget)
        .ok_or_else(|| {
            Error::resource(format!("{p}^{exponent} candidates exceed the budget {budget}"))
        })
}

/// Enumerates twists and gauge transformations `F ∈ 1 + I` exhaustively.
pub fn brute_force_h2_multiplicative(
    b: &HopfStructure,
    space: SearchSpace,
    budget: u64,
) -> Result<BruteForceReport> {
    require_abelian(b)?;
    let a = b.algebra();
    let p = a.p() as u64;
    let ideal = a.ideal_basis().to_vec();
    let m = ideal.len();

    let (gens, exp_witness) = match space {
        SearchSpace::Full => (ideal.clone(), None),
        SearchSpace::PrimitiveExponentials => (b.primitives(), Some(witness(b)?)),
    };
    let q = gens.len();
    let candidates = count_within(p, q * q, budget)?;
    let gauge_count = count_within(p, m, budget)?;

    let pairs: Vec<TensorElement> = gens
        .iter()
        .flat_map(|x| gens.iter().map(move |y| (x, y)))
        .map(|(x, y)| TensorElement::pure(a, &[x.clone(), y.clone()]))
        .collect::<Result<_>>()?;
    let one2 = TensorElement::one(a, 2)?;

    let cocycles: Vec<TensorElement> = (0..candidates)
        .into_par_iter()
        .map(|idx| -> Result<Option<TensorElement>> {
            let c = enumerate(p, q * q, idx);
            let mut s = TensorElement::zero(a, 2)?;
            for (t, &x) in pairs.iter().zip(&c) {
                if x != 0 {
                    s = s.add(&t.scale(x))?;
                }
            }
            let j = match &exp_witness {
                Some(w) => w.exp(&s)?,
                None => one2.add(&s)?,
            };
            if j.invert().is_err() {
                return Ok(None);
            }
            Ok(check_twist(b, &j)?.all_passed().then_some(j))
        })
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .flatten()
        .collect();

    let gauge: HashSet<Vec<Scalar>> = (0..gauge_count)
        .into_par_iter()
        .map(|idx| -> Result<Option<Vec<Scalar>>> {
            let c = enumerate(p, m, idx);
            let mut v = a.one();
            for (basis, &x) in ideal.iter().zip(&c) {
                v = a.add(&v, &a.scale(x, basis));
            }
            let f = TensorElement::from_coords(a, 1, v)?;
            if f.invert().is_err() {
                return Ok(None);
            }
            let df = multiplicative_coboundary(&MultiplicativeCochain::new(b, f)?)?;
            Ok(Some(df.into_value().into_coords()))
        })
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .flatten()
        .collect();

    let coboundaries = cocycles
        .iter()
        .filter(|j| gauge.contains(j.coords()))
        .count();
    let mut reps: Vec<TensorElement> = Vec::new();
    for j in &cocycles {
        let mut known = false;
        for r in &reps {
            if gauge.contains(j.mul(&r.invert()?)?.coords()) {
                known = true;
                break;
            }
        }
        if !known {
            reps.push(j.clone());
        }
    }
    Ok(BruteForceReport {
        candidates,
        cocycles: cocycles.len(),
        coboundaries,
        classes: reps.len(),
        gauge_candidates: gauge.len(),
        all_coboundaries: coboundaries == cocycles.len(),
    })
}

/// Outcome of [`trivialize_associator`].
#[derive(Clone, Debug)]
pub enum Trivialization {
    /// `pseudotwist_transform(q, twist)` has associator `1⊗1⊗1`.
    Trivialized { twist: TensorElement, rounds: usize },
    /// The lowest radical-degree part of the current associator is an
    /// additive cocycle that is not a coboundary.
    Obstructed {
        degree: usize,
        cocycle: TensorElement,
        additive: AdditiveCochain,
        class: Vec<Scalar>,
        rounds: usize,
    },
}

/// Removes the associator degree by degree, pseudotwisting by `1 + f`
/// whenever the lowest-degree part of `Φ − 1` is an additive coboundary `df`.
pub fn trivialize_associator(q: &QuasiData) -> Result<Trivialization> {
    trivialize_associator_with_budget(q, DEFAULT_BUDGET)
}

pub fn trivialize_associator_with_budget(q: &QuasiData, budget: usize) -> Result<Trivialization> {
    let h = &q.hopf;
    require_abelian(h)?;
    if q.r.is_some() {
        return Err(Error::unsupported(
            "associator trivialization does not preserve an R-matrix",
        ));
    }
    MultiplicativeCochain::new(h, q.phi.clone())?;
    if !h.is_radically_graded()? {
        return Err(Error::unsupported(
            "base must coincide with its associated graded Hopf algebra",
        ));
    }
    let gr = h.associated_graded()?;
    let a = h.algebra();
    let zero_deg = (0..a.dim()).filter(|&i| gr.degrees[i] == 0).count();
    if zero_deg != 1 {
        return Err(Error::unsupported("augmentation ideal must be the radical"));
    }
    let bridge = CochainBridge::new(h)?;
    let complex = BarComplex::with_budget(bridge.dual(), budget);
    let one3 = TensorElement::one(a, 3)?;
    let mut twist = TensorElement::one(a, 2)?;
    let mut current = q.clone();
    let mut last_degree = 0;
    let max_rounds = 3 * gr.degrees.iter().max().copied().unwrap_or(0) + 1;
    for round in 0..=max_rounds {
        let psi = current.phi.sub(&one3)?;
        if psi.is_zero() {
            let check = pseudotwist_transform(q, &twist)?;
            if !check.phi.is_one() {
                return Err(Error::internal("accumulated pseudotwist does not trivialize"));
            }
            return Ok(Trivialization::Trivialized { twist, rounds: round });
        }
        let degree = psi
            .support()
            .map(|(idx, _)| gr.tensor_degree(&psi.digits(idx)))
            .min()
            .expect("nonzero");
        if degree <= last_degree {
            return Err(Error::internal("radical degree failed to increase"));
        }
        last_degree = degree;
        let phi = homogeneous_part(&psi, |d| gr.tensor_degree(d) == degree);
        if !cobar_differential(h, &phi)?.is_zero() {
            return Err(Error::internal(
                "lowest-degree part of the associator is not an additive cocycle",
            ));
        }
        let additive = bridge.to_cochain(&phi)?;
        let Some(f) = complex.solve_coboundary(&additive)? else {
            let report = complex.cohomology(3)?;
            let class = complex
                .class_coordinates(&additive, &report)?
                .ok_or_else(|| Error::internal("obstruction is not a cocycle"))?;
            return Ok(Trivialization::Obstructed {
                degree,
                cocycle: phi,
                additive,
                class,
                rounds: round,
            });
        };
        let f = bridge.from_cochain(&f)?;
        let f_hom = homogeneous_part(&f, |d| gr.tensor_degree(d) == degree);
        let f = if cobar_differential(h, &f_hom)? == phi { f_hom } else { f };
        let step = TensorElement::one(a, 2)?.add(&f)?;
        current = pseudotwist_transform(&current, &step)?;
        twist = twist.mul(&step)?;
    }
    Err(Error::internal("associator trivialization did not terminate"))
}

fn homogeneous_part(t: &TensorElement, keep: impl Fn(&[usize]) -> bool) -> TensorElement {
    let mut coords = vec![0; t.coords().len()];
    for (idx, c) in t.support() {
        if keep(&t.digits(idx)) {
            coords[idx] = c;
        }
    }
    TensorElement::from_coords(t.algebra(), t.arity(), coords).expect("same shape")
}
