//! JSON file formats and the named registry the CLI loads them into.
//!
//! Complex numbers are `[re, im]`. Tensors use row convention: `mult[i][j][k]`
//! is the coefficient of `e_k` in `e_i e_j`, `star[i][j]` of `e_j` in `e_i*`,
//! `comult[i][j][k]` of `e_j ⊗ e_k` in `Δ(e_i)`, `antipode[i][j]` of `e_j` in
//! `S(e_i)`, `alpha[a][b * dim G + g]` of `e_b ⊗ e_g` in `α(e_a)`, and
//! `act[h][a][b]` of `e_b` in `e_h ▷ e_a`.

mod catalog;

pub use catalog::{aux_catalog, catalog, walk_catalog};

use std::collections::BTreeMap;
use std::path::Path;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use thiserror::Error;

use crate::action::Coaction;
use crate::corep::Corepresentation;
use crate::hopf::{HopfStarAlgebra, StarAlgebra};
use crate::numlin::{CMatrix, CVector, C64};
use crate::oplus::{OplusError, ReciprocalWalk, WalkFile};
use crate::products::ModuleAction;
use crate::twist::Cocycle;

pub type Cx = [f64; 2];

#[derive(Debug, Error)]
pub enum IoError {
    #[error("cannot read {path}: {msg}")]
    Read { path: String, msg: String },
    #[error("malformed JSON in {name}: {msg}")]
    Parse { name: String, msg: String },
    #[error("no {kind} named {name}")]
    Missing { kind: &'static str, name: String },
    #[error("{kind} {name} is defined twice with different contents")]
    Duplicate { kind: &'static str, name: String },
    #[error("no {0} in the loaded files")]
    Empty(&'static str),
    #[error("{name}: {msg}")]
    Shape { name: String, msg: String },
}

fn cx(z: C64) -> Cx {
    [z.re, z.im]
}

fn c64(z: Cx) -> C64 {
    C64::new(z[0], z[1])
}

fn shape(name: &str, msg: impl Into<String>) -> IoError {
    IoError::Shape { name: name.to_string(), msg: msg.into() }
}

fn cube(v: &[Vec<Vec<Cx>>]) -> Vec<Vec<Vec<C64>>> {
    v.iter().map(|r| r.iter().map(|s| s.iter().map(|z| c64(*z)).collect()).collect()).collect()
}

fn square(v: &[Vec<Cx>]) -> Vec<Vec<C64>> {
    v.iter().map(|r| r.iter().map(|z| c64(*z)).collect()).collect()
}

fn rows_of(m: &CMatrix) -> Vec<Vec<Cx>> {
    (0..m.ncols()).map(|c| m.column(c).iter().map(|z| cx(*z)).collect()).collect()
}

fn cols_from(name: &str, rows: &[Vec<Cx>], nrows: usize, ncols: usize) -> Result<CMatrix, IoError> {
    if rows.len() != ncols || rows.iter().any(|r| r.len() != nrows) {
        return Err(shape(name, format!("expected {ncols} rows of length {nrows}")));
    }
    Ok(CMatrix::from_fn(nrows, ncols, |r, c| c64(rows[c][r])))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AlgebraFile {
    pub name: String,
    pub dim: usize,
    pub basis: Vec<String>,
    pub mult: Vec<Vec<Vec<Cx>>>,
    pub unit: Vec<Cx>,
    pub star: Vec<Vec<Cx>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub comult: Option<Vec<Vec<Vec<Cx>>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub counit: Option<Vec<Cx>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub antipode: Option<Vec<Vec<Cx>>>,
}

impl AlgebraFile {
    pub fn from_algebra(name: &str, a: &StarAlgebra) -> Self {
        let d = a.dim();
        let mult = (0..d).map(|i| (0..d).map(|j| (0..d).map(|k| cx(a.mult_table().dense(i, j, k))).collect()).collect()).collect();
        AlgebraFile {
            name: name.to_string(),
            dim: d,
            basis: a.labels().to_vec(),
            mult,
            unit: a.unit().iter().map(|z| cx(*z)).collect(),
            star: rows_of(a.star_matrix()),
            comult: None,
            counit: None,
            antipode: None,
        }
    }

    pub fn from_hopf(h: &HopfStarAlgebra) -> Self {
        let d = h.dim();
        let mut f = Self::from_algebra(h.name(), h.algebra());
        f.comult = Some((0..d).map(|i| (0..d).map(|j| (0..d).map(|k| cx(h.delta_coeff(i, j, k))).collect()).collect()).collect());
        f.counit = Some(h.counit().iter().map(|z| cx(*z)).collect());
        f.antipode = Some(rows_of(h.antipode_matrix()));
        f
    }

    pub fn is_hopf(&self) -> bool {
        self.comult.is_some() && self.counit.is_some() && self.antipode.is_some()
    }

    pub fn to_algebra(&self) -> Result<StarAlgebra, IoError> {
        let d = self.dim;
        if self.basis.len() != d || self.unit.len() != d {
            return Err(shape(&self.name, format!("basis and unit must have length {d}")));
        }
        StarAlgebra::from_dense(self.basis.clone(), &cube(&self.mult), self.unit.iter().map(|z| c64(*z)).collect(), &square(&self.star))
            .map_err(|e| shape(&self.name, e.to_string()))
    }

    pub fn to_hopf(&self) -> Result<HopfStarAlgebra, IoError> {
        let (Some(comult), Some(counit), Some(antipode)) = (&self.comult, &self.counit, &self.antipode) else {
            return Err(shape(&self.name, "missing comult, counit or antipode"));
        };
        HopfStarAlgebra::from_dense(
            self.name.clone(),
            self.to_algebra()?,
            &cube(comult),
            counit.iter().map(|z| c64(*z)).collect(),
            &square(antipode),
        )
        .map_err(|e| shape(&self.name, e.to_string()))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CoactionFile {
    #[serde(default)]
    pub name: Option<String>,
    pub algebra: String,
    pub hopf: String,
    pub alpha: Vec<Vec<Cx>>,
}

impl CoactionFile {
    pub fn from_coaction(name: &str, algebra: &str, hopf: &str, c: &Coaction) -> Self {
        CoactionFile { name: Some(name.into()), algebra: algebra.into(), hopf: hopf.into(), alpha: rows_of(c.alpha_matrix()) }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ModuleFile {
    #[serde(default)]
    pub name: Option<String>,
    pub hopf: String,
    pub algebra: String,
    pub act: Vec<Vec<Vec<Cx>>>,
}

impl ModuleFile {
    pub fn from_module(name: &str, algebra: &str, hopf: &str, m: &ModuleAction) -> Self {
        ModuleFile { name: Some(name.into()), hopf: hopf.into(), algebra: algebra.into(), act: m.act_matrices().iter().map(rows_of).collect() }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CocycleFile {
    #[serde(default)]
    pub name: Option<String>,
    pub hopf: String,
    pub omega: Vec<Vec<Cx>>,
}

impl CocycleFile {
    pub fn from_cocycle(name: &str, hopf: &str, w: &Cocycle) -> Self {
        let o = w.omega();
        CocycleFile {
            name: Some(name.into()),
            hopf: hopf.into(),
            omega: (0..o.nrows()).map(|i| o.row(i).iter().map(|z| cx(*z)).collect()).collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CorepFile {
    #[serde(default)]
    pub name: Option<String>,
    pub hopf: String,
    pub n: usize,
    #[serde(rename = "U")]
    pub u: Vec<Vec<Vec<Cx>>>,
}

impl CorepFile {
    pub fn from_corep(name: &str, hopf: &str, u: &Corepresentation) -> Self {
        let n = u.dim();
        CorepFile {
            name: Some(name.into()),
            hopf: hopf.into(),
            n,
            u: (0..n).map(|i| (0..n).map(|j| u.entry(i, j).iter().map(|z| cx(*z)).collect()).collect()).collect(),
        }
    }
}

/// One input file: any mix of algebras and the objects built on them.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct Document {
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub algebras: Vec<AlgebraFile>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub coactions: Vec<CoactionFile>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub modules: Vec<ModuleFile>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub cocycles: Vec<CocycleFile>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub corepresentations: Vec<CorepFile>,
}

/// SHA-256 of the canonical serialization (sorted keys, no whitespace).
pub fn content_hash(value: &serde_json::Value) -> String {
    let bytes = serde_json::to_vec(value).expect("Value serializes");
    Sha256::digest(&bytes).iter().map(|b| format!("{b:02x}")).collect()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InputHash {
    pub name: String,
    pub hash: String,
}

fn read(path: &Path) -> Result<String, IoError> {
    std::fs::read_to_string(path).map_err(|e| IoError::Read { path: path.display().to_string(), msg: e.to_string() })
}

fn parse_value(name: &str, text: &str) -> Result<serde_json::Value, IoError> {
    serde_json::from_str(text).map_err(|e| IoError::Parse { name: name.into(), msg: e.to_string() })
}

fn from_value<T: serde::de::DeserializeOwned>(name: &str, v: serde_json::Value) -> Result<T, IoError> {
    serde_json::from_value(v).map_err(|e| IoError::Parse { name: name.into(), msg: e.to_string() })
}

/// Reads a walk file and records its hash.
pub fn load_walk(path: &Path) -> Result<(ReciprocalWalk, InputHash), IoError> {
    let name = path.display().to_string();
    let v = parse_value(&name, &read(path)?)?;
    let hash = InputHash { name: name.clone(), hash: content_hash(&v) };
    let file: WalkFile = from_value(&name, v)?;
    let walk = file.into_walk().map_err(|e: OplusError| shape(&name, e.to_string()))?;
    Ok((walk, hash))
}

/// Parses any JSON input, recording its hash.
pub fn load_json<T: serde::de::DeserializeOwned>(path: &Path) -> Result<(T, InputHash), IoError> {
    let name = path.display().to_string();
    let v = parse_value(&name, &read(path)?)?;
    let hash = InputHash { name: name.clone(), hash: content_hash(&v) };
    Ok((from_value(&name, v)?, hash))
}

fn insert_unique<T: PartialEq>(map: &mut Vec<(String, T)>, kind: &'static str, name: String, item: T) -> Result<(), IoError> {
    if let Some((_, old)) = map.iter().find(|(n, _)| *n == name) {
        return if *old == item { Ok(()) } else { Err(IoError::Duplicate { kind, name }) };
    }
    map.push((name, item));
    Ok(())
}

/// Named registry of everything loaded from the input files.
#[derive(Debug, Clone, Default)]
pub struct Workspace {
    algebras: BTreeMap<String, AlgebraFile>,
    algebra_order: Vec<String>,
    coactions: Vec<(String, CoactionFile)>,
    modules: Vec<(String, ModuleFile)>,
    cocycles: Vec<(String, CocycleFile)>,
    coreps: Vec<(String, CorepFile)>,
    pub inputs: Vec<InputHash>,
}

impl Workspace {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn load_path(&mut self, path: &Path) -> Result<(), IoError> {
        let text = read(path)?;
        self.load_str(&path.display().to_string(), &text)
    }

    pub fn load_str(&mut self, name: &str, text: &str) -> Result<(), IoError> {
        let v = parse_value(name, text)?;
        self.inputs.push(InputHash { name: name.into(), hash: content_hash(&v) });
        let doc: Document = from_value(name, v)?;
        self.add(doc)
    }

    pub fn add(&mut self, doc: Document) -> Result<(), IoError> {
        for a in doc.algebras {
            match self.algebras.get(&a.name) {
                Some(old) if *old != a => return Err(IoError::Duplicate { kind: "algebra", name: a.name }),
                Some(_) => {}
                None => {
                    self.algebra_order.push(a.name.clone());
                    self.algebras.insert(a.name.clone(), a);
                }
            }
        }
        let auto = |prefix: &str, i: usize, n: &Option<String>| n.clone().unwrap_or_else(|| format!("{prefix}{i}"));
        for c in doc.coactions {
            let n = auto("coaction", self.coactions.len(), &c.name);
            insert_unique(&mut self.coactions, "coaction", n, c)?;
        }
        for m in doc.modules {
            let n = auto("module", self.modules.len(), &m.name);
            insert_unique(&mut self.modules, "module", n, m)?;
        }
        for w in doc.cocycles {
            let n = auto("cocycle", self.cocycles.len(), &w.name);
            insert_unique(&mut self.cocycles, "cocycle", n, w)?;
        }
        for u in doc.corepresentations {
            let n = auto("corep", self.coreps.len(), &u.name);
            insert_unique(&mut self.coreps, "corepresentation", n, u)?;
        }
        Ok(())
    }

    fn algebra_file(&self, name: &str) -> Result<&AlgebraFile, IoError> {
        self.algebras.get(name).ok_or_else(|| IoError::Missing { kind: "algebra", name: name.into() })
    }

    pub fn algebra(&self, name: &str) -> Result<StarAlgebra, IoError> {
        self.algebra_file(name)?.to_algebra()
    }

    /// The named Hopf algebra, or the first one loaded.
    pub fn hopf(&self, name: Option<&str>) -> Result<HopfStarAlgebra, IoError> {
        match name {
            Some(n) => self.algebra_file(n)?.to_hopf(),
            None => self
                .algebra_order
                .iter()
                .map(|n| &self.algebras[n])
                .find(|a| a.is_hopf())
                .ok_or(IoError::Empty("Hopf algebra"))?
                .to_hopf(),
        }
    }

    fn pick<'a, T>(list: &'a [(String, T)], kind: &'static str, name: Option<&str>) -> Result<(&'a str, &'a T), IoError> {
        let found = match name {
            Some(n) => list.iter().find(|(k, _)| k == n).ok_or_else(|| IoError::Missing { kind, name: n.into() })?,
            None => list.first().ok_or(IoError::Empty(kind))?,
        };
        Ok((found.0.as_str(), &found.1))
    }

    pub fn coaction_names(&self) -> Vec<String> {
        self.coactions.iter().map(|(n, _)| n.clone()).collect()
    }

    pub fn coaction(&self, name: Option<&str>) -> Result<Coaction, IoError> {
        let (n, c) = Self::pick(&self.coactions, "coaction", name)?;
        let a = self.algebra(&c.algebra)?;
        let h = self.hopf(Some(&c.hopf))?;
        let alpha = cols_from(n, &c.alpha, a.dim() * h.dim(), a.dim())?;
        Coaction::new(a, h, alpha).map_err(|e| shape(n, e.to_string()))
    }

    pub fn module(&self, name: Option<&str>) -> Result<ModuleAction, IoError> {
        let (n, m) = Self::pick(&self.modules, "module", name)?;
        let a = self.algebra(&m.algebra)?;
        let h = self.hopf(Some(&m.hopf))?;
        if m.act.len() != h.dim() {
            return Err(shape(n, format!("expected {} action matrices", h.dim())));
        }
        let act = m.act.iter().map(|rows| cols_from(n, rows, a.dim(), a.dim())).collect::<Result<_, _>>()?;
        ModuleAction::new(a, h, act).map_err(|e| shape(n, e.to_string()))
    }

    pub fn cocycle(&self, name: Option<&str>) -> Result<Cocycle, IoError> {
        let (n, w) = Self::pick(&self.cocycles, "cocycle", name)?;
        let h = self.hopf(Some(&w.hopf))?;
        let d = h.dim();
        if w.omega.len() != d || w.omega.iter().any(|r| r.len() != d) {
            return Err(shape(n, format!("omega must be {d}x{d}")));
        }
        let omega = CMatrix::from_fn(d, d, |i, j| c64(w.omega[i][j]));
        Cocycle::new(h, omega).map_err(|e| shape(n, e.to_string()))
    }

    pub fn corep(&self, name: Option<&str>) -> Result<(Corepresentation, HopfStarAlgebra), IoError> {
        let (n, u) = Self::pick(&self.coreps, "corepresentation", name)?;
        let h = self.hopf(Some(&u.hopf))?;
        if u.u.len() != u.n || u.u.iter().any(|r| r.len() != u.n || r.iter().any(|e| e.len() != h.dim())) {
            return Err(shape(n, format!("U must be {0}x{0} arrays of length {1}", u.n, h.dim())));
        }
        let entries = u.u.iter().flat_map(|r| r.iter().map(|e| CVector::from_iterator(e.len(), e.iter().map(|z| c64(*z))))).collect();
        let corep = Corepresentation::new(u.n, entries, None).map_err(|e| shape(n, e.to_string()))?;
        Ok((corep, h))
    }
}

#[cfg(test)]
mod tests;
