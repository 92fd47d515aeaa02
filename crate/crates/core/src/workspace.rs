//! JSON workspaces: a field, an algebra, named modules and complexes over it,
//! and named `S`-side objects resolved once a tilting module is certified.
//!
//! ```json
//! {
//!   "field": {"kind": "prime", "p": 101},
//!   "algebra": {"kind": "bound_quiver", "vertices": ["1", "2"],
//!               "arrows": [{"name": "a", "src": "1", "tgt": "2"}], "relations": []},
//!   "modules": {
//!     "P1": {"kind": "rep", "vertex_dims": {"1": 1, "2": 1}, "arrow_mats": {"a": [[1]]}},
//!     "S1": {"kind": "simple", "vertex": "1"},
//!     "T": {"kind": "sum", "of": ["P1", "S1"]}
//!   },
//!   "complexes": {"C": {"low": -1, "terms": ["P2", "P1"], "differentials": [[[0, 1]]]}},
//!   "smodules": {"E": {"kind": "ext", "of": "S2", "degree": 1}},
//!   "scomplexes": {},
//!   "tilting": {"module": "T", "n": 1}
//! }
//! ```
//!
//! Entries are numbers or strings such as `"-3/4"`. Relations are either a
//! monomial `"a*b"` or a list of `{"coeff": …, "path": [arrows]}` terms.

use std::collections::BTreeMap;
use std::path::Path;

use serde::Deserialize;

use crate::algebra::{bound_quiver_algebra, structure_algebra, AlgebraRef, Arrow, Presentation, Quiver, Relation};
use crate::error::{Error, Result};
use crate::exactla::{Elem, FieldSpec, Matrix};
use crate::homology::BoundedComplex;
use crate::repmod::{injective, projective, regular, representation, simple, sum_module, FdModule, Representation};
use crate::tiltcore::TiltingContext;

#[derive(Clone, Debug, Deserialize)]
#[serde(untagged)]
enum Scalar {
    Int(i64),
    Str(String),
}

type RawMatrix = Vec<Vec<Scalar>>;

#[derive(Clone, Debug, Deserialize)]
#[serde(untagged)]
enum RawRelation {
    Monomial(String),
    Terms(Vec<RawTerm>),
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawTerm {
    #[serde(default)]
    coeff: Option<Scalar>,
    path: Vec<String>,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
enum RawAlgebra {
    BoundQuiver {
        vertices: Vec<String>,
        arrows: Vec<Arrow>,
        #[serde(default)]
        relations: Vec<RawRelation>,
    },
    Structure {
        /// `c[i][j][k]`: coefficient of `b_k` in `b_i b_j`
        structure_constants: Vec<Vec<Vec<Scalar>>>,
        unit: Vec<Scalar>,
    },
}

#[derive(Clone, Debug, Deserialize)]
#[serde(untagged)]
enum Vertex {
    Index(usize),
    Name(String),
}

#[derive(Clone, Debug, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
enum RawModule {
    Rep {
        vertex_dims: BTreeMap<String, usize>,
        #[serde(default)]
        arrow_mats: BTreeMap<String, RawMatrix>,
    },
    Action {
        dim: usize,
        actions: Vec<RawMatrix>,
    },
    Projective {
        vertex: Vertex,
    },
    Injective {
        vertex: Vertex,
    },
    Simple {
        vertex: Vertex,
    },
    Regular,
    Sum {
        of: Vec<String>,
    },
}

#[derive(Clone, Debug, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
enum RawSModule {
    /// `Ext^degree(T, M)` with its right `S`-action
    Ext { of: String, degree: usize },
    /// `H(M) = Hom(T, M)`
    Hom { of: String },
    Projective { vertex: usize },
    Injective { vertex: usize },
    Simple { vertex: usize },
    Regular,
    Sum { of: Vec<String> },
    Action { dim: usize, actions: Vec<RawMatrix> },
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawComplex {
    low: i32,
    terms: Vec<String>,
    #[serde(default)]
    differentials: Vec<RawMatrix>,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TiltingSpec {
    pub module: String,
    pub n: usize,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawWorkspace {
    field: FieldSpec,
    algebra: RawAlgebra,
    #[serde(default)]
    modules: BTreeMap<String, RawModule>,
    #[serde(default)]
    complexes: BTreeMap<String, RawComplex>,
    #[serde(default)]
    smodules: BTreeMap<String, RawSModule>,
    #[serde(default)]
    scomplexes: BTreeMap<String, RawComplex>,
    #[serde(default)]
    tilting: Option<TiltingSpec>,
}

/// A loaded and validated workspace.
#[derive(Clone, Debug)]
pub struct Workspace {
    pub field: FieldSpec,
    pub algebra: AlgebraRef,
    pub modules: BTreeMap<String, FdModule>,
    pub complexes: BTreeMap<String, BoundedComplex>,
    pub tilting: Option<TiltingSpec>,
    smodules: BTreeMap<String, RawSModule>,
    scomplexes: BTreeMap<String, RawComplex>,
}

fn at(loc: &str, e: Error) -> Error {
    Error::Workspace(format!("{loc}: {e}"))
}

fn scalar(f: FieldSpec, s: &Scalar) -> Result<Elem> {
    match s {
        Scalar::Int(v) => Ok(f.from_i64(*v)),
        Scalar::Str(t) => f.parse(t),
    }
}

fn matrix(f: FieldSpec, raw: &RawMatrix, rows: usize, cols: usize) -> Result<Matrix> {
    // a matrix with no columns may be written as [] or as rows of []
    if cols == 0 && raw.is_empty() {
        return Ok(Matrix::zeros(f, rows, 0));
    }
    if raw.len() != rows || raw.iter().any(|r| r.len() != cols) {
        let got_cols = raw.first().map(|r| r.len()).unwrap_or(0);
        return Err(Error::Dimension(format!("expected a {rows}x{cols} matrix, got {}x{got_cols}", raw.len())));
    }
    let mut m = Matrix::zeros(f, rows, cols);
    for (i, r) in raw.iter().enumerate() {
        for (j, x) in r.iter().enumerate() {
            m.set(i, j, scalar(f, x)?);
        }
    }
    Ok(m)
}

fn build_algebra(f: FieldSpec, raw: &RawAlgebra) -> Result<AlgebraRef> {
    match raw {
        RawAlgebra::BoundQuiver { vertices, arrows, relations } => {
            let q = Quiver { vertices: vertices.clone(), arrows: arrows.clone() };
            q.validate()?;
            let rels = relations
                .iter()
                .enumerate()
                .map(|(i, r)| match r {
                    RawRelation::Monomial(p) => {
                        Ok(Relation { terms: vec![(f.one(), p.split('*').map(|s| s.trim().to_string()).collect())] })
                    }
                    RawRelation::Terms(ts) => {
                        let terms = ts
                            .iter()
                            .map(|t| Ok((t.coeff.as_ref().map(|c| scalar(f, c)).transpose()?.unwrap_or_else(|| f.one()), t.path.clone())))
                            .collect::<Result<Vec<_>>>()
                            .map_err(|e| at(&format!("relation {i}"), e))?;
                        Ok(Relation { terms })
                    }
                })
                .collect::<Result<Vec<_>>>()?;
            bound_quiver_algebra(f, &q, &rels)
        }
        RawAlgebra::Structure { structure_constants, unit } => {
            let sc = structure_constants
                .iter()
                .map(|a| a.iter().map(|b| b.iter().map(|x| scalar(f, x)).collect::<Result<Vec<_>>>()).collect::<Result<Vec<_>>>())
                .collect::<Result<Vec<_>>>()?;
            let u = unit.iter().map(|x| scalar(f, x)).collect::<Result<Vec<_>>>()?;
            structure_algebra(f, &sc, &u)
        }
    }
}

fn vertex_index(a: &AlgebraRef, v: &Vertex) -> Result<usize> {
    match v {
        Vertex::Index(i) => Ok(*i),
        Vertex::Name(name) => match a.presentation() {
            Presentation::BoundQuiver { quiver, .. } => {
                quiver.vertex_index(name).ok_or_else(|| Error::NotFound(format!("vertex {name:?}")))
            }
            _ => Err(Error::Precondition(format!("vertex {name:?} given by name, but the algebra has no quiver"))),
        },
    }
}

fn action_module(a: &AlgebraRef, dim: usize, actions: &[RawMatrix]) -> Result<FdModule> {
    if actions.len() != a.dim() {
        return Err(Error::InvalidModule(format!("need {} action matrices, got {}", a.dim(), actions.len())));
    }
    let f = a.field();
    let mats = actions.iter().map(|m| matrix(f, m, dim, dim)).collect::<Result<Vec<_>>>()?;
    FdModule::new(a.clone(), mats)
}

fn build_module(
    a: &AlgebraRef,
    raw: &BTreeMap<String, RawModule>,
    name: &str,
    done: &mut BTreeMap<String, FdModule>,
    stack: &mut Vec<String>,
) -> Result<FdModule> {
    if let Some(m) = done.get(name) {
        return Ok(m.clone());
    }
    let loc = format!("modules.{name}");
    if stack.iter().any(|s| s == name) {
        return Err(Error::Workspace(format!("{loc}: cyclic reference through {}", stack.join(" → "))));
    }
    let spec = raw.get(name).ok_or_else(|| Error::NotFound(format!("module {name:?}")))?;
    stack.push(name.to_string());
    let f = a.field();
    let built = match spec {
        RawModule::Rep { vertex_dims, arrow_mats } => {
            let Presentation::BoundQuiver { quiver, .. } = a.presentation() else {
                return Err(at(&loc, Error::InvalidModule("representations need a bound quiver algebra".into())));
            };
            for v in vertex_dims.keys() {
                if quiver.vertex_index(v).is_none() {
                    return Err(at(&loc, Error::NotFound(format!("vertex {v:?}"))));
                }
            }
            for arr in arrow_mats.keys() {
                if quiver.arrow_index(arr).is_none() {
                    return Err(at(&loc, Error::NotFound(format!("arrow {arr:?}"))));
                }
            }
            let dims: Vec<usize> = quiver.vertices.iter().map(|v| vertex_dims.get(v).copied().unwrap_or(0)).collect();
            let mut mats = Vec::with_capacity(quiver.arrows.len());
            for arr in &quiver.arrows {
                let (s, t) = (quiver.vertex_index(&arr.src).unwrap(), quiver.vertex_index(&arr.tgt).unwrap());
                let m = match arrow_mats.get(&arr.name) {
                    Some(raw) => matrix(f, raw, dims[s], dims[t]).map_err(|e| at(&format!("{loc}.arrow_mats.{}", arr.name), e))?,
                    None if dims[s] == 0 || dims[t] == 0 => Matrix::zeros(f, dims[s], dims[t]),
                    None => return Err(at(&loc, Error::InvalidModule(format!("missing matrix for arrow {:?}", arr.name)))),
                };
                mats.push(m);
            }
            representation(a, &Representation { vertex_dims: dims, arrow_mats: mats })
        }
        RawModule::Action { dim, actions } => action_module(a, *dim, actions),
        RawModule::Projective { vertex } => vertex_index(a, vertex).and_then(|v| projective(a, v)),
        RawModule::Injective { vertex } => vertex_index(a, vertex).and_then(|v| injective(a, v)),
        RawModule::Simple { vertex } => vertex_index(a, vertex).and_then(|v| simple(a, v)),
        RawModule::Regular => Ok(regular(a)),
        RawModule::Sum { of } => {
            let mut parts = Vec::with_capacity(of.len());
            for p in of {
                parts.push(build_module(a, raw, p, done, stack)?);
            }
            sum_module(a, &parts)
        }
    }
    .map_err(|e| match e {
        Error::Workspace(_) => e,
        e => at(&loc, e),
    })?;
    stack.pop();
    done.insert(name.to_string(), built.clone());
    Ok(built)
}

fn build_complex(a: &AlgebraRef, raw: &RawComplex, lookup: &dyn Fn(&str) -> Result<FdModule>) -> Result<BoundedComplex> {
    let f = a.field();
    if raw.terms.is_empty() {
        return Ok(BoundedComplex::zero(a));
    }
    let terms = raw.terms.iter().map(|t| lookup(t)).collect::<Result<Vec<_>>>()?;
    if raw.differentials.len() + 1 != terms.len() {
        return Err(Error::NotAComplex(format!(
            "{} terms need {} differentials, got {}",
            terms.len(),
            terms.len() - 1,
            raw.differentials.len()
        )));
    }
    let diffs = raw
        .differentials
        .iter()
        .enumerate()
        .map(|(k, d)| {
            matrix(f, d, terms[k].dim(), terms[k + 1].dim())
                .map_err(|e| Error::NotAComplex(format!("differential at degree {}: {e}", raw.low + k as i32)))
        })
        .collect::<Result<Vec<_>>>()?;
    BoundedComplex::new(a.clone(), raw.low, terms, diffs)
}

impl Workspace {
    pub fn load(path: impl AsRef<Path>) -> Result<Workspace> {
        let p = path.as_ref();
        let text = std::fs::read_to_string(p).map_err(|e| Error::Workspace(format!("cannot read {}: {e}", p.display())))?;
        Workspace::from_json(&text)
    }

    pub fn from_json(text: &str) -> Result<Workspace> {
        let raw: RawWorkspace = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        raw.field.validate()?;
        let f = raw.field;
        let algebra = build_algebra(f, &raw.algebra).map_err(|e| at("algebra", e))?;
        let mut modules = BTreeMap::new();
        for name in raw.modules.keys() {
            build_module(&algebra, &raw.modules, name, &mut modules, &mut Vec::new())?;
        }
        let mut complexes = BTreeMap::new();
        for (name, c) in &raw.complexes {
            let lookup = |t: &str| modules.get(t).cloned().ok_or_else(|| Error::NotFound(format!("module {t:?}")));
            let built = build_complex(&algebra, c, &lookup).map_err(|e| at(&format!("complexes.{name}"), e))?;
            complexes.insert(name.clone(), built);
        }
        // S-side references are checked now; matrices once S exists
        for (name, s) in &raw.smodules {
            let refs: Vec<&String> = match s {
                RawSModule::Ext { of, .. } | RawSModule::Hom { of } => {
                    if !modules.contains_key(of) {
                        return Err(at(&format!("smodules.{name}"), Error::NotFound(format!("module {of:?}"))));
                    }
                    vec![]
                }
                RawSModule::Sum { of } => of.iter().collect(),
                _ => vec![],
            };
            for r in refs {
                if !raw.smodules.contains_key(r) {
                    return Err(at(&format!("smodules.{name}"), Error::NotFound(format!("S-module {r:?}"))));
                }
            }
        }
        for (name, c) in &raw.scomplexes {
            for t in &c.terms {
                if !raw.smodules.contains_key(t) {
                    return Err(at(&format!("scomplexes.{name}"), Error::NotFound(format!("S-module {t:?}"))));
                }
            }
        }
        if let Some(t) = &raw.tilting {
            if !modules.contains_key(&t.module) {
                return Err(at("tilting", Error::NotFound(format!("module {:?}", t.module))));
            }
        }
        Ok(Workspace { field: f, algebra, modules, complexes, tilting: raw.tilting, smodules: raw.smodules, scomplexes: raw.scomplexes })
    }

    pub fn module(&self, name: &str) -> Result<&FdModule> {
        self.modules.get(name).ok_or_else(|| Error::NotFound(format!("module {name:?}")))
    }

    pub fn complex(&self, name: &str) -> Result<&BoundedComplex> {
        self.complexes.get(name).ok_or_else(|| Error::NotFound(format!("complex {name:?}")))
    }

    pub fn smodule_names(&self) -> Vec<String> {
        self.smodules.keys().cloned().collect()
    }

    pub fn scomplex_names(&self) -> Vec<String> {
        self.scomplexes.keys().cloned().collect()
    }

    /// Resolves a named `S`-module against a certified context.
    pub fn smodule(&self, ctx: &TiltingContext, name: &str) -> Result<FdModule> {
        self.smodule_inner(ctx, name, &mut Vec::new())
    }

    fn smodule_inner(&self, ctx: &TiltingContext, name: &str, stack: &mut Vec<String>) -> Result<FdModule> {
        let loc = format!("smodules.{name}");
        if stack.iter().any(|s| s == name) {
            return Err(Error::Workspace(format!("{loc}: cyclic reference")));
        }
        let spec = self.smodules.get(name).ok_or_else(|| Error::NotFound(format!("S-module {name:?}")))?;
        stack.push(name.to_string());
        let s = &ctx.s;
        let out = match spec {
            RawSModule::Ext { of, degree } => ctx.ext_module(self.module(of)?, *degree),
            RawSModule::Hom { of } => ctx.functor_h(self.module(of)?).map(|h| h.module),
            RawSModule::Projective { vertex } => projective(s, *vertex),
            RawSModule::Injective { vertex } => injective(s, *vertex),
            RawSModule::Simple { vertex } => simple(s, *vertex),
            RawSModule::Regular => Ok(regular(s)),
            RawSModule::Action { dim, actions } => action_module(s, *dim, actions),
            RawSModule::Sum { of } => {
                let mut parts = Vec::new();
                for p in of {
                    parts.push(self.smodule_inner(ctx, p, stack)?);
                }
                sum_module(s, &parts)
            }
        }
        .map_err(|e| match e {
            Error::Workspace(_) => e,
            e => at(&loc, e),
        })?;
        stack.pop();
        Ok(out)
    }

    /// Resolves a named complex of `S`-modules.
    pub fn scomplex(&self, ctx: &TiltingContext, name: &str) -> Result<BoundedComplex> {
        let raw = self.scomplexes.get(name).ok_or_else(|| Error::NotFound(format!("S-complex {name:?}")))?;
        let lookup = |t: &str| self.smodule(ctx, t);
        build_complex(&ctx.s, raw, &lookup).map_err(|e| at(&format!("scomplexes.{name}"), e))
    }

    /// Certifies the module named in the `tilting` entry (or `name`).
    pub fn context(&self, name: Option<&str>, n: Option<usize>) -> Result<TiltingContext> {
        let (m, deg) = match (name, &self.tilting) {
            (Some(m), Some(t)) if m == t.module => (m.to_string(), n.unwrap_or(t.n)),
            (Some(m), _) => (m.to_string(), n.ok_or_else(|| Error::Precondition(format!("no tilting degree given for {m:?}")))?),
            (None, Some(t)) => (t.module.clone(), n.unwrap_or(t.n)),
            (None, None) => return Err(Error::Precondition("no tilting module named".into())),
        };
        TiltingContext::new(self.module(&m)?, deg)
    }
}
