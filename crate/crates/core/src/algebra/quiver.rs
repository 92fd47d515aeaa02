//! Path algebras of quivers modulo admissible relations.
//!
//! Paths compose left to right: `p·q` is "first `p`, then `q`", so right
//! modules are covariant representations.

use std::collections::HashMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::{Algebra, AlgebraRef, Presentation};
use crate::error::{Error, Result};
use crate::exactla::{Elem, FieldSpec, Matrix};

pub const DEFAULT_DEGREE_BOUND: usize = 32;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Arrow {
    pub name: String,
    pub src: String,
    pub tgt: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Quiver {
    pub vertices: Vec<String>,
    pub arrows: Vec<Arrow>,
}

/// A linear combination of parallel paths; each path lists arrow names in
/// traversal order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Relation {
    pub terms: Vec<(Elem, Vec<String>)>,
}

/// A path by vertex and arrow indices; `arrows` empty means the trivial
/// path at `src`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Path {
    pub src: usize,
    pub tgt: usize,
    pub arrows: Vec<usize>,
}

impl Path {
    pub fn len(&self) -> usize {
        self.arrows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.arrows.is_empty()
    }

    fn concat(&self, other: &Path) -> Option<Path> {
        if self.tgt != other.src {
            return None;
        }
        let mut arrows = self.arrows.clone();
        arrows.extend_from_slice(&other.arrows);
        Some(Path { src: self.src, tgt: other.tgt, arrows })
    }

    fn label(&self, q: &Quiver) -> String {
        if self.arrows.is_empty() {
            format!("e{}", q.vertices[self.src])
        } else {
            self.arrows.iter().map(|&a| q.arrows[a].name.as_str()).collect::<Vec<_>>().join("*")
        }
    }
}

impl Quiver {
    pub fn vertex_index(&self, name: &str) -> Option<usize> {
        self.vertices.iter().position(|v| v == name)
    }

    pub fn arrow_index(&self, name: &str) -> Option<usize> {
        self.arrows.iter().position(|a| a.name == name)
    }

    pub fn validate(&self) -> Result<()> {
        for (i, v) in self.vertices.iter().enumerate() {
            if self.vertices[..i].contains(v) {
                return Err(Error::InvalidAlgebra(format!("duplicate vertex {v:?}")));
            }
        }
        for (i, a) in self.arrows.iter().enumerate() {
            if self.arrows[..i].iter().any(|b| b.name == a.name) {
                return Err(Error::InvalidAlgebra(format!("duplicate arrow {:?}", a.name)));
            }
            for end in [&a.src, &a.tgt] {
                if self.vertex_index(end).is_none() {
                    return Err(Error::InvalidAlgebra(format!("arrow {:?} uses undeclared vertex {end:?}", a.name)));
                }
            }
        }
        Ok(())
    }

    fn arrow_src(&self, a: usize) -> usize {
        self.vertex_index(&self.arrows[a].src).unwrap()
    }

    fn arrow_tgt(&self, a: usize) -> usize {
        self.vertex_index(&self.arrows[a].tgt).unwrap()
    }

    /// Resolves a list of arrow names to a path.
    pub fn path(&self, names: &[String]) -> Result<Path> {
        if names.is_empty() {
            return Err(Error::InvalidAlgebra("empty path in relation".into()));
        }
        let mut idx = Vec::with_capacity(names.len());
        for n in names {
            idx.push(self.arrow_index(n).ok_or_else(|| Error::NotFound(format!("arrow {n:?}")))?);
        }
        for w in idx.windows(2) {
            if self.arrow_tgt(w[0]) != self.arrow_src(w[1]) {
                return Err(Error::InvalidAlgebra(format!(
                    "arrows {:?} and {:?} do not compose",
                    self.arrows[w[0]].name, self.arrows[w[1]].name
                )));
            }
        }
        Ok(Path { src: self.arrow_src(idx[0]), tgt: self.arrow_tgt(*idx.last().unwrap()), arrows: idx })
    }

    /// All paths of length exactly `len`.
    fn paths_of_length(&self, len: usize, shorter: &[Path]) -> Vec<Path> {
        if len == 0 {
            return (0..self.vertices.len()).map(|v| Path { src: v, tgt: v, arrows: vec![] }).collect();
        }
        let mut out = Vec::new();
        for p in shorter.iter().filter(|p| p.len() == len - 1) {
            for a in 0..self.arrows.len() {
                if self.arrow_src(a) == p.tgt {
                    let mut arrows = p.arrows.clone();
                    arrows.push(a);
                    out.push(Path { src: p.src, tgt: self.arrow_tgt(a), arrows });
                }
            }
        }
        out
    }
}

/// [`bound_quiver_algebra_with_bound`] with the default degree bound.
pub fn bound_quiver_algebra(field: FieldSpec, quiver: &Quiver, relations: &[Relation]) -> Result<AlgebraRef> {
    bound_quiver_algebra_with_bound(field, quiver, relations, DEFAULT_DEGREE_BOUND)
}

/// The quotient of the path algebra by the ideal generated by `relations`.
///
/// Works degree by degree: at length `L` the ideal's image modulo paths of
/// length `> L` is spanned by the truncations of `u·ρ·w`; once every path of
/// length `L` lies in that span the ideal contains all of them (the relations
/// are admissible) and the non-pivot paths form a basis.
pub fn bound_quiver_algebra_with_bound(
    field: FieldSpec,
    quiver: &Quiver,
    relations: &[Relation],
    degree_bound: usize,
) -> Result<AlgebraRef> {
    field.validate()?;
    quiver.validate()?;
    let mut rels: Vec<Vec<(Elem, Path)>> = Vec::new();
    for (ri, r) in relations.iter().enumerate() {
        let mut terms = Vec::new();
        for (c, names) in &r.terms {
            let p = quiver.path(names)?;
            if p.len() < 2 {
                return Err(Error::InvalidAlgebra(format!("relation {ri} contains a path of length < 2")));
            }
            terms.push((c.clone(), p));
        }
        if let Some((_, p0)) = terms.first() {
            if terms.iter().any(|(_, p)| p.src != p0.src || p.tgt != p0.tgt) {
                return Err(Error::InvalidAlgebra(format!("relation {ri} mixes non-parallel paths")));
            }
        }
        rels.push(terms);
    }

    let mut paths: Vec<Path> = quiver.paths_of_length(0, &[]);
    let mut level = 0;
    loop {
        level += 1;
        if level > degree_bound {
            return Err(Error::InvalidAlgebra(format!(
                "quotient not finite-dimensional or bound too small (degree bound {degree_bound})"
            )));
        }
        let next = quiver.paths_of_length(level, &paths);
        paths.extend(next);
        // longest paths first so that reduction rewrites long paths in
        // terms of short ones
        let mut order: Vec<usize> = (0..paths.len()).collect();
        order.sort_by(|&a, &b| paths[b].len().cmp(&paths[a].len()).then(a.cmp(&b)));
        let col_of: HashMap<&Path, usize> = order.iter().enumerate().map(|(c, &i)| (&paths[i], c)).collect();
        let ideal = ideal_span(field, &rels, &paths, level, &col_of);
        let r = ideal.rref();
        let reduced = r.reduced.row_range(0, r.rank);
        let pivot_set: Vec<bool> = {
            let mut v = vec![false; paths.len()];
            for &p in &r.pivot_cols {
                v[p] = true;
            }
            v
        };
        let top_in_ideal = paths.iter().filter(|p| p.len() == level).all(|p| pivot_set[col_of[p]]);
        if !top_in_ideal {
            continue;
        }
        return Ok(Arc::new(assemble(field, quiver, relations, &paths, &order, &col_of, &reduced, &r.pivot_cols, level)));
    }
}

/// Rows: truncations (to length `≤ level`) of `u·ρ·w`, in column order `col_of`.
fn ideal_span(
    field: FieldSpec,
    rels: &[Vec<(Elem, Path)>],
    paths: &[Path],
    level: usize,
    col_of: &HashMap<&Path, usize>,
) -> Matrix {
    let mut rows: Vec<Vec<(usize, Elem)>> = Vec::new();
    for rel in rels {
        let Some(min_len) = rel.iter().map(|(_, p)| p.len()).min() else { continue };
        if min_len > level {
            continue;
        }
        let (s, t) = (rel[0].1.src, rel[0].1.tgt);
        for u in paths.iter().filter(|u| u.tgt == s && u.len() + min_len <= level) {
            for w in paths.iter().filter(|w| w.src == t && u.len() + min_len + w.len() <= level) {
                let mut row = Vec::new();
                for (c, p) in rel {
                    let full = u.concat(p).and_then(|x| x.concat(w)).unwrap();
                    if full.len() <= level {
                        row.push((col_of[&full], c.clone()));
                    }
                }
                rows.push(row);
            }
        }
    }
    let mut m = Matrix::zeros(field, rows.len(), paths.len());
    for (i, row) in rows.iter().enumerate() {
        for (c, e) in row {
            let cur = m.get(i, *c);
            m.set(i, *c, field.add(&cur, e));
        }
    }
    m
}

#[allow(clippy::too_many_arguments)]
fn assemble(
    field: FieldSpec,
    quiver: &Quiver,
    relations: &[Relation],
    paths: &[Path],
    order: &[usize],
    col_of: &HashMap<&Path, usize>,
    reduced: &Matrix,
    pivots: &[usize],
    level: usize,
) -> Algebra {
    let is_pivot: Vec<Option<usize>> = {
        let mut v = vec![None; paths.len()];
        for (row, &p) in pivots.iter().enumerate() {
            v[p] = Some(row);
        }
        v
    };
    // basis: non-pivot columns, shortest first
    let mut basis_cols: Vec<usize> = (0..paths.len()).filter(|&c| is_pivot[c].is_none()).collect();
    basis_cols.sort_by_key(|&c| (paths[order[c]].len(), order[c]));
    let basis: Vec<Path> = basis_cols.iter().map(|&c| paths[order[c]].clone()).collect();
    let n = basis.len();
    let index_of_col: HashMap<usize, usize> = basis_cols.iter().enumerate().map(|(i, &c)| (c, i)).collect();

    // normal form of a path as coordinates in the basis
    let normal = |p: &Path| -> Matrix {
        let mut out = Matrix::zeros(field, 1, n);
        if p.len() > level {
            return out;
        }
        let c = col_of[p];
        match is_pivot[c] {
            None => out.set(0, index_of_col[&c], field.one()),
            Some(row) => {
                for (&bc, &bi) in &index_of_col {
                    let e = reduced.get(row, bc);
                    if !field.is_zero(&e) {
                        out.set(0, bi, field.neg(&e));
                    }
                }
            }
        }
        out
    };

    let mut right = Vec::with_capacity(n);
    for j in 0..n {
        let mut r = Matrix::zeros(field, n, n);
        for i in 0..n {
            if let Some(p) = basis[i].concat(&basis[j]) {
                r.set_block(i, 0, &normal(&p));
            }
        }
        right.push(r);
    }
    let mut unit = Matrix::zeros(field, 1, n);
    for (i, p) in basis.iter().enumerate() {
        if p.is_empty() {
            unit.set(0, i, field.one());
        }
    }
    let labels = basis.iter().map(|p| p.label(quiver)).collect();
    Algebra::from_parts(
        field,
        labels,
        right,
        unit,
        Presentation::BoundQuiver { quiver: quiver.clone(), relations: relations.to_vec(), paths: basis },
    )
}
