//! Line-oriented spec documents.
//!
//! ```text
//! # truncated polynomials with the nontrivial associator
//! [field] p=3
//! [preset] name=alpha_phi params=1
//! ```
//!
//! Explicit structures use `[algebra]` with `dim=`, optional `labels=`,
//! `sc i j k v`, `comul i j k v` and `counit v…` lines, followed by optional
//! `[associator]` (`i j k v`) and `[rmatrix]` (`i j v`) sections listing the
//! full tensor.

use std::fmt;

use qhopf_core::catalog;
use qhopf_core::field::is_prime;
use qhopf_core::{Algebra, HopfStructure, PrimeField, QuasiData, Scalar, TensorElement};
use std::sync::Arc;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("{line}:{column}: {message}")]
pub struct SpecError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

impl SpecError {
    fn at(line: usize, column: usize, message: impl Into<String>) -> Self {
        Self {
            line,
            column,
            message: message.into(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Preset {
    Alpha,
    AlphaDual,
    AlphaProduct,
    Cyclic,
    CyclicFunctions,
    UAbelian,
    UAbelianDual,
    AlphaPhi,
    Z2REpsilon,
}

impl Preset {
    pub const ALL: [Preset; 9] = [
        Preset::Alpha,
        Preset::AlphaDual,
        Preset::AlphaProduct,
        Preset::Cyclic,
        Preset::CyclicFunctions,
        Preset::UAbelian,
        Preset::UAbelianDual,
        Preset::AlphaPhi,
        Preset::Z2REpsilon,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Preset::Alpha => "alpha",
            Preset::AlphaDual => "alpha_dual",
            Preset::AlphaProduct => "alpha_product",
            Preset::Cyclic => "cyclic",
            Preset::CyclicFunctions => "cyclic_functions",
            Preset::UAbelian => "u_abelian",
            Preset::UAbelianDual => "u_abelian_dual",
            Preset::AlphaPhi => "alpha_phi",
            Preset::Z2REpsilon => "z2_r_epsilon",
        }
    }

    pub fn from_name(s: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|p| p.name() == s)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExplicitAlgebra {
    pub dim: usize,
    pub labels: Option<Vec<String>>,
    pub structure: Vec<[u64; 4]>,
    pub comul: Vec<[u64; 4]>,
    pub counit: Vec<u64>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Source {
    Preset { preset: Preset, params: Vec<u64> },
    Explicit(ExplicitAlgebra),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpecDocument {
    pub p: u32,
    pub source: Source,
    pub associator: Option<Vec<(Vec<usize>, u64)>>,
    pub rmatrix: Option<Vec<(Vec<usize>, u64)>>,
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Section {
    None,
    Field,
    Preset,
    Algebra,
    Associator,
    RMatrix,
}

struct Token<'a> {
    text: &'a str,
    column: usize,
}

fn tokens(line: &str) -> Vec<Token<'_>> {
    let mut out = Vec::new();
    let mut start = None;
    for (i, ch) in line.char_indices() {
        if ch.is_whitespace() {
            if let Some(s) = start.take() {
                out.push(Token {
                    text: &line[s..i],
                    column: line[..s].chars().count() + 1,
                });
            }
        } else if start.is_none() {
            start = Some(i);
        }
    }
    if let Some(s) = start {
        out.push(Token {
            text: &line[s..],
            column: line[..s].chars().count() + 1,
        });
    }
    out
}

fn int(line: usize, tok: &Token<'_>) -> Result<u64, SpecError> {
    tok.text
        .parse()
        .map_err(|_| SpecError::at(line, tok.column, format!("expected a non-negative integer, found `{}`", tok.text)))
}

// multi-index, value, line, column
type Located = Vec<(Vec<usize>, u64, usize, usize)>;

#[derive(Default)]
struct Partial {
    p: Option<(u32, usize, usize)>,
    preset: Option<(String, usize, usize)>,
    params: Vec<u64>,
    dim: Option<(usize, usize, usize)>,
    labels: Option<Vec<String>>,
    structure: Vec<([u64; 4], usize, usize)>,
    comul: Vec<([u64; 4], usize, usize)>,
    counit: Option<(Vec<u64>, usize)>,
    associator: Option<Located>,
    rmatrix: Option<Located>,
    algebra_line: Option<usize>,
}

fn quad(line: usize, toks: &[Token<'_>], head: &Token<'_>) -> Result<[u64; 4], SpecError> {
    if toks.len() != 4 {
        return Err(SpecError::at(line, head.column, format!("`{}` takes four integers i j k v", head.text)));
    }
    let mut out = [0; 4];
    for (o, t) in out.iter_mut().zip(toks) {
        *o = int(line, t)?;
    }
    Ok(out)
}

fn key_value<'a>(line: usize, tok: &Token<'a>) -> Result<(&'a str, &'a str, usize), SpecError> {
    let (k, v) = tok
        .text
        .split_once('=')
        .ok_or_else(|| SpecError::at(line, tok.column, format!("expected key=value, found `{}`", tok.text)))?;
    Ok((k, v, tok.column + k.chars().count() + 1))
}

pub fn parse_spec(text: &str) -> Result<SpecDocument, SpecError> {
    let mut part = Partial::default();
    let mut section = Section::None;
    let mut last_list_key: Option<&str> = None;
    let mut last_line = 0;
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        last_line = line;
        let content = raw.split('#').next().unwrap_or("");
        let mut toks = tokens(content);
        if toks.is_empty() {
            continue;
        }
        if toks[0].text.starts_with('[') {
            let head = toks.remove(0);
            let name = head
                .text
                .strip_prefix('[')
                .and_then(|s| s.strip_suffix(']'))
                .ok_or_else(|| SpecError::at(line, head.column, "unterminated section header"))?;
            section = match name {
                "field" => Section::Field,
                "preset" => Section::Preset,
                "algebra" => {
                    part.algebra_line = Some(line);
                    Section::Algebra
                }
                "associator" => {
                    part.associator.get_or_insert_with(Vec::new);
                    Section::Associator
                }
                "rmatrix" => {
                    part.rmatrix.get_or_insert_with(Vec::new);
                    Section::RMatrix
                }
                other => {
                    return Err(SpecError::at(line, head.column + 1, format!("unknown section `{other}`")))
                }
            };
            last_list_key = None;
            if toks.is_empty() {
                continue;
            }
        }
        match section {
            Section::None => {
                return Err(SpecError::at(line, toks[0].column, "content before the first section header"))
            }
            Section::Field => {
                for t in &toks {
                    let (k, v, col) = key_value(line, t)?;
                    if k != "p" {
                        return Err(SpecError::at(line, t.column, format!("unknown field key `{k}`")));
                    }
                    let p: u32 = v
                        .parse()
                        .map_err(|_| SpecError::at(line, col, format!("expected an integer, found `{v}`")))?;
                    part.p = Some((p, line, col));
                }
            }
            Section::Preset => {
                for t in &toks {
                    if t.text.contains('=') {
                        let (k, v, col) = key_value(line, t)?;
                        match k {
                            "name" => part.preset = Some((v.to_string(), line, col)),
                            "params" => {
                                last_list_key = Some("params");
                                if !v.is_empty() {
                                    let tok = Token { text: v, column: col };
                                    part.params.push(int(line, &tok)?);
                                }
                            }
                            _ => return Err(SpecError::at(line, t.column, format!("unknown preset key `{k}`"))),
                        }
                    } else if last_list_key == Some("params") {
                        part.params.push(int(line, t)?);
                    } else {
                        return Err(SpecError::at(line, t.column, format!("unexpected `{}`", t.text)));
                    }
                }
            }
            Section::Algebra => {
                let head = &toks[0];
                match head.text {
                    "sc" => part.structure.push((quad(line, &toks[1..], head)?, line, head.column)),
                    "comul" => part.comul.push((quad(line, &toks[1..], head)?, line, head.column)),
                    "counit" => {
                        let vals = toks[1..].iter().map(|t| int(line, t)).collect::<Result<Vec<_>, _>>()?;
                        part.counit = Some((vals, line));
                    }
                    _ => {
                        let (k, v, col) = key_value(line, head)?;
                        match k {
                            "dim" => {
                                let tok = Token { text: v, column: col };
                                part.dim = Some((int(line, &tok)? as usize, line, col));
                                if toks.len() > 1 {
                                    return Err(SpecError::at(line, toks[1].column, "unexpected token after dim"));
                                }
                            }
                            "labels" => {
                                let mut labels = Vec::new();
                                if !v.is_empty() {
                                    labels.push(v.to_string());
                                }
                                labels.extend(toks[1..].iter().map(|t| t.text.to_string()));
                                part.labels = Some(labels);
                            }
                            _ => return Err(SpecError::at(line, head.column, format!("unknown algebra key `{k}`"))),
                        }
                    }
                }
            }
            Section::Associator | Section::RMatrix => {
                let arity = if section == Section::Associator { 3 } else { 2 };
                if toks.len() != arity + 1 {
                    return Err(SpecError::at(
                        line,
                        toks[0].column,
                        format!("expected {arity} indices and a value"),
                    ));
                }
                let idx = toks[..arity]
                    .iter()
                    .map(|t| int(line, t).map(|v| v as usize))
                    .collect::<Result<Vec<_>, _>>()?;
                let v = int(line, &toks[arity])?;
                let target = if arity == 3 { &mut part.associator } else { &mut part.rmatrix };
                target
                    .get_or_insert_with(Vec::new)
                    .push((idx, v, line, toks[0].column));
            }
        }
    }
    finish(part, last_line)
}

fn finish(part: Partial, last_line: usize) -> Result<SpecDocument, SpecError> {
    let (p, pl, pc) = part
        .p
        .ok_or_else(|| SpecError::at(last_line.max(1), 1, "missing [field] p=<prime>"))?;
    if !is_prime(p as u64) {
        return Err(SpecError::at(pl, pc, "characteristic must be prime"));
    }
    let source = match (&part.preset, part.algebra_line) {
        (Some(_), Some(l)) => {
            return Err(SpecError::at(l, 1, "a spec has either [preset] or [algebra], not both"))
        }
        (None, None) => return Err(SpecError::at(last_line.max(1), 1, "missing [preset] or [algebra] section")),
        (Some((name, l, c)), None) => {
            let (name, l, c) = (name.clone(), *l, *c);
            let preset = Preset::from_name(&name)
                .ok_or_else(|| SpecError::at(l, c, format!("unknown preset `{name}`")))?;
            Source::Preset {
                preset,
                params: part.params.clone(),
            }
        }
        (None, Some(l)) => {
            let (dim, dl, dc) = part.dim.ok_or_else(|| SpecError::at(l, 1, "missing dim="))?;
            if dim == 0 {
                return Err(SpecError::at(dl, dc, "dimension must be positive"));
            }
            if let Some(labels) = &part.labels {
                if labels.len() != dim {
                    return Err(SpecError::at(dl, dc, format!("{} labels for dimension {dim}", labels.len())));
                }
            }
            for (q, line, col) in part.structure.iter().chain(&part.comul) {
                if let Some(pos) = q[..3].iter().position(|&i| i as usize >= dim) {
                    return Err(SpecError::at(*line, *col, format!("index {} out of range for dim {dim}", q[pos])));
                }
            }
            let (counit, cl) = part.counit.clone().ok_or_else(|| SpecError::at(l, 1, "missing counit line"))?;
            if counit.len() != dim {
                return Err(SpecError::at(cl, 1, format!("counit has {} entries, expected {dim}", counit.len())));
            }
            Source::Explicit(ExplicitAlgebra {
                dim,
                labels: part.labels.clone(),
                structure: part.structure.iter().map(|(q, _, _)| *q).collect(),
                comul: part.comul.iter().map(|(q, _, _)| *q).collect(),
                counit,
            })
        }
    };
    let strip = |v: Option<Located>| v.map(|v| v.into_iter().map(|(i, c, _, _)| (i, c)).collect());
    let doc = SpecDocument {
        p,
        source,
        associator: strip(part.associator.clone()),
        rmatrix: strip(part.rmatrix.clone()),
    };
    let source_at = match &part.preset {
        Some((_, l, c)) => (*l, *c),
        None => (part.algebra_line.unwrap_or(1), 1),
    };
    let (hopf, _, _) = doc
        .build_source()
        .map_err(|e| SpecError::at(source_at.0, source_at.1, e.to_string()))?;
    let d = hopf.dim();
    for entries in [&part.associator, &part.rmatrix].into_iter().flatten() {
        for (idx, _, line, col) in entries {
            if let Some(&i) = idx.iter().find(|&&i| i >= d) {
                return Err(SpecError::at(*line, *col, format!("index {i} out of range for dim {d}")));
            }
        }
    }
    doc.instantiate_unlocated().map_err(|e| {
        let first = |v: &Option<Located>| v.as_ref().and_then(|e| e.first()).map(|e| (e.2, e.3));
        let (line, col) = first(&part.associator)
            .or_else(|| first(&part.rmatrix))
            .unwrap_or(source_at);
        SpecError::at(line, col, e.to_string())
    })?;
    Ok(doc)
}

fn tensor(a: &Arc<Algebra>, arity: usize, entries: &[(Vec<usize>, u64)]) -> qhopf_core::Result<TensorElement> {
    let p = a.p() as u64;
    let terms: Vec<(Vec<usize>, Scalar)> = entries.iter().map(|(i, v)| (i.clone(), (v % p) as Scalar)).collect();
    TensorElement::from_terms(a, arity, &terms)
}

fn need(params: &[u64], n: usize, what: &str) -> qhopf_core::Result<()> {
    if params.len() != n {
        return Err(qhopf_core::Error::input(format!("preset expects {what}")));
    }
    Ok(())
}

impl SpecDocument {
    /// Builds the quasi-Hopf data described by the document.
    pub fn instantiate(&self) -> Result<QuasiData, SpecError> {
        self.instantiate_unlocated()
            .map_err(|e| SpecError::at(1, 1, e.to_string()))
    }

    #[allow(clippy::type_complexity)]
    fn build_source(&self) -> qhopf_core::Result<(HopfStructure, Option<TensorElement>, Option<TensorElement>)> {
        let p = self.p;
        Ok(match &self.source {
            Source::Preset { preset, params } => {
                let small = |v: u64| u32::try_from(v).map_err(|_| qhopf_core::Error::input("parameter too large"));
                match preset {
                    Preset::Alpha => {
                        need(params, 1, "params=r")?;
                        (catalog::make_alpha(p, small(params[0])?)?, None, None)
                    }
                    Preset::AlphaDual => {
                        need(params, 1, "params=r")?;
                        (catalog::make_alpha_dual(p, small(params[0])?)?, None, None)
                    }
                    Preset::AlphaProduct => {
                        let rs = params.iter().map(|&r| small(r)).collect::<qhopf_core::Result<Vec<_>>>()?;
                        (catalog::alpha_product(p, &rs)?, None, None)
                    }
                    Preset::Cyclic => {
                        need(params, 1, "params=order")?;
                        (catalog::cyclic_group_algebra(p, params[0] as usize)?, None, None)
                    }
                    Preset::CyclicFunctions => {
                        need(params, 1, "params=order")?;
                        (catalog::cyclic_function_algebra(p, params[0] as usize)?, None, None)
                    }
                    Preset::UAbelian => {
                        let Some((&d, rest)) = params.split_first() else {
                            return Err(qhopf_core::Error::input("preset expects params=dim [p-power matrix]"));
                        };
                        let d = d as usize;
                        if d == 0 || d > 12 {
                            return Err(qhopf_core::Error::input("dimension must be between 1 and 12"));
                        }
                        let h = if rest.is_empty() {
                            catalog::make_u_abelian_zero(p, d)?
                        } else if rest.len() == d * d {
                            let rows: Vec<Vec<Scalar>> = rest
                                .chunks(d)
                                .map(|c| c.iter().map(|&v| (v % p as u64) as Scalar).collect())
                                .collect();
                            catalog::make_u_abelian(p, d, &rows)?
                        } else {
                            return Err(qhopf_core::Error::input("p-power matrix must have dim² entries"));
                        };
                        (h, None, None)
                    }
                    Preset::UAbelianDual => {
                        need(params, 1, "params=dim")?;
                        (catalog::u_abelian_dual(p, params[0] as usize)?, None, None)
                    }
                    Preset::AlphaPhi => {
                        need(params, 1, "params=s")?;
                        let s = (params[0] % p as u64) as Scalar;
                        let q = catalog::associator_phi(p, s)?;
                        (q.hopf, Some(q.phi), None)
                    }
                    Preset::Z2REpsilon => {
                        need(params, 0, "no params")?;
                        let h = catalog::cyclic_group_algebra(p, 2)?;
                        let r = catalog::r_epsilon(&h, &[0, 1])?;
                        (h, None, Some(r))
                    }
                }
            }
            Source::Explicit(e) => {
                let f = PrimeField::new(p)?;
                let labels = e
                    .labels
                    .clone()
                    .unwrap_or_else(|| (0..e.dim).map(|i| format!("e{i}")).collect());
                let reduce = |v: u64| (v % p as u64) as Scalar;
                let sc = e.structure.iter().map(|q| (q[0] as usize, q[1] as usize, q[2] as usize, reduce(q[3])));
                let alg = Arc::new(Algebra::new(f, labels, sc, e.counit.iter().map(|&v| reduce(v)).collect())?);
                let comul = e.comul.iter().map(|q| (q[0] as usize, q[1] as usize, q[2] as usize, reduce(q[3])));
                let h = HopfStructure::from_entries(alg, comul.collect::<Vec<_>>())?;
                let report = h.check_bialgebra();
                if let Some(bad) = report.checks.iter().find(|c| !c.passed) {
                    return Err(qhopf_core::Error::input(format!("bialgebra axiom `{}` fails", bad.name)));
                }
                (h, None, None)
            }
        })
    }

    fn instantiate_unlocated(&self) -> qhopf_core::Result<QuasiData> {
        let (hopf, phi, r) = self.build_source()?;
        let a = hopf.algebra().clone();
        let phi = match &self.associator {
            Some(entries) => tensor(&a, 3, entries)?,
            None => phi.unwrap_or(TensorElement::one(&a, 3)?),
        };
        let r = match &self.rmatrix {
            Some(entries) => Some(tensor(&a, 2, entries)?),
            None => r,
        };
        QuasiData::new(hopf, phi, r)
            .map_err(|e| qhopf_core::Error::input(format!("associator or R-matrix: {e}")))
    }

    pub fn preset(p: u32, preset: Preset, params: Vec<u64>) -> Self {
        Self {
            p,
            source: Source::Preset { preset, params },
            associator: None,
            rmatrix: None,
        }
    }
}

fn write_tensor(f: &mut fmt::Formatter<'_>, entries: &[(Vec<usize>, u64)]) -> fmt::Result {
    for (idx, v) in entries {
        for i in idx {
            write!(f, "{i} ")?;
        }
        writeln!(f, "{v}")?;
    }
    Ok(())
}

impl fmt::Display for SpecDocument {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "[field] p={}", self.p)?;
        match &self.source {
            Source::Preset { preset, params } => {
                write!(f, "[preset] name={}", preset.name())?;
                if !params.is_empty() {
                    let ps: Vec<String> = params.iter().map(|v| v.to_string()).collect();
                    write!(f, " params={}", ps.join(" "))?;
                }
                writeln!(f)?;
            }
            Source::Explicit(e) => {
                writeln!(f, "[algebra]")?;
                writeln!(f, "dim={}", e.dim)?;
                if let Some(labels) = &e.labels {
                    writeln!(f, "labels={}", labels.join(" "))?;
                }
                for q in &e.structure {
                    writeln!(f, "sc {} {} {} {}", q[0], q[1], q[2], q[3])?;
                }
                for q in &e.comul {
                    writeln!(f, "comul {} {} {} {}", q[0], q[1], q[2], q[3])?;
                }
                let c: Vec<String> = e.counit.iter().map(|v| v.to_string()).collect();
                writeln!(f, "counit {}", c.join(" "))?;
            }
        }
        if let Some(a) = &self.associator {
            writeln!(f, "[associator]")?;
            write_tensor(f, a)?;
        }
        if let Some(r) = &self.rmatrix {
            writeln!(f, "[rmatrix]")?;
            write_tensor(f, r)?;
        }
        Ok(())
    }
}
