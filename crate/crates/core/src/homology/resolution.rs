//! Projective covers, projective resolutions and Ext.

use std::fmt;

use crate::algebra::AlgebraRef;
use crate::error::{Error, Result};
use crate::exactla::{Matrix, Subspace};
use crate::repmod::{FdModule, ModuleMap};

use super::complex::{quotient_representatives, BoundedComplex};

/// A direct sum `⊕ e_{v_k} A` of indecomposable projectives with known
/// generators, so maps out of it are determined by the images of the `e_{v_k}`.
#[derive(Clone)]
pub struct ProjectiveSum {
    module: FdModule,
    vertices: Vec<usize>,
    offsets: Vec<usize>,
    /// per summand: basis of `e_v A` in algebra coordinates
    embeddings: Vec<Matrix>,
    /// per summand: `e_v` in the module coordinates of the summand
    generators: Vec<Matrix>,
}

impl fmt::Debug for ProjectiveSum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ProjectiveSum(vertices {:?}, dim {})", self.vertices, self.module.dim())
    }
}

impl ProjectiveSum {
    pub fn new(a: &AlgebraRef, vertices: &[usize]) -> Result<ProjectiveSum> {
        let f = a.field();
        let idem = a.primitive_idempotents()?;
        let mut per_vertex: Vec<Option<(Subspace, Matrix)>> = vec![None; idem.len()];
        let mut embeddings = Vec::with_capacity(vertices.len());
        let mut generators = Vec::with_capacity(vertices.len());
        let mut offsets = Vec::with_capacity(vertices.len());
        let mut parts = Vec::with_capacity(vertices.len());
        let reg = a.regular_module();
        let mut off = 0;
        for &v in vertices {
            let e = idem.get(v).ok_or_else(|| Error::NotFound(format!("vertex index {v}")))?;
            let (sub, gen) = per_vertex[v]
                .get_or_insert_with(|| {
                    let sub = Subspace::from_rows(&a.element_left_mult(e));
                    let gen = sub.coords(e);
                    (sub, gen)
                })
                .clone();
            let (p, _) = reg.submodule_of(&sub);
            offsets.push(off);
            off += p.dim();
            embeddings.push(sub.basis().clone());
            generators.push(gen);
            parts.push(p);
        }
        let action: Vec<Matrix> = (0..a.dim())
            .map(|j| Matrix::block_diag(f, &parts.iter().map(|p| p.action(j)).collect::<Vec<_>>()))
            .collect();
        let module = FdModule::new_unchecked(a.clone(), off, action);
        Ok(ProjectiveSum { module, vertices: vertices.to_vec(), offsets, embeddings, generators })
    }

    pub fn module(&self) -> &FdModule {
        &self.module
    }

    pub fn vertices(&self) -> &[usize] {
        &self.vertices
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn summand_dim(&self, k: usize) -> usize {
        self.embeddings[k].rows()
    }

    pub fn offset(&self, k: usize) -> usize {
        self.offsets[k]
    }

    /// Basis of the `k`-th summand `e_v A` in algebra coordinates.
    pub fn embedding(&self, k: usize) -> &Matrix {
        &self.embeddings[k]
    }

    /// The generator `e_{v_k}` as a row in module coordinates.
    pub fn generator(&self, k: usize) -> Matrix {
        let mut g = Matrix::zeros(self.module.field(), 1, self.module.dim());
        g.set_block(0, self.offsets[k], &self.generators[k]);
        g
    }

    /// The element of `A` represented by a row of the `k`-th block.
    pub fn block_as_element(&self, k: usize, row: &Matrix) -> Matrix {
        row.col_range(self.offsets[k], self.offsets[k] + self.summand_dim(k)).mul(&self.embeddings[k])
    }

    /// The map sending the `k`-th generator to `images[k]` (a row in `N`;
    /// only its `e_{v_k}` part matters).
    pub fn map_from_generators(&self, target: &FdModule, images: &[Matrix]) -> ModuleMap {
        let f = self.module.field();
        let mut m = Matrix::zeros(f, self.module.dim(), target.dim());
        for (k, img) in images.iter().enumerate() {
            let y = &self.embeddings[k];
            for r in 0..y.rows() {
                m.set_block(self.offsets[k] + r, 0, &img.mul(&target.action_of(&y.row(r))));
            }
        }
        ModuleMap::new_unchecked(self.module.clone(), target.clone(), m)
    }

    /// `Hom(P, N) ≅ ⊕ N e_{v_k}`, with coordinates given by generator images.
    pub fn hom_to(&self, n: &FdModule) -> Result<ProjHom> {
        let idem = self.module.algebra().primitive_idempotents()?;
        let blocks: Vec<Subspace> =
            self.vertices.iter().map(|&v| Subspace::from_rows(&n.idempotent_part(&idem[v]))).collect();
        Ok(ProjHom { source: self.clone(), target: n.clone(), blocks })
    }
}

/// Maps out of a [`ProjectiveSum`].
#[derive(Clone, Debug)]
pub struct ProjHom {
    source: ProjectiveSum,
    target: FdModule,
    blocks: Vec<Subspace>,
}

impl ProjHom {
    pub fn dim(&self) -> usize {
        self.blocks.iter().map(|b| b.dim()).sum()
    }

    /// The map with the given coordinates.
    pub fn map(&self, coords: &Matrix) -> Matrix {
        let mut images = Vec::with_capacity(self.blocks.len());
        let mut off = 0;
        for b in &self.blocks {
            images.push(coords.col_range(off, off + b.dim()).mul(b.basis()));
            off += b.dim();
        }
        self.source.map_from_generators(&self.target, &images).matrix().clone()
    }

    pub fn basis_map(&self, i: usize) -> Matrix {
        self.map(&Matrix::unit_row(self.target.field(), self.dim(), i))
    }

    /// Coordinates of a map `P → N`.
    pub fn coords(&self, m: &Matrix) -> Matrix {
        let parts: Vec<Matrix> = self
            .blocks
            .iter()
            .enumerate()
            .map(|(k, b)| b.coords(&self.source.generator(k).mul(m)))
            .collect();
        Matrix::hstack(self.target.field(), 1, &parts.iter().collect::<Vec<_>>())
    }
}

/// `P → M` surjective with `P` projective and `top P ≅ top M`.
#[derive(Clone, Debug)]
pub struct ProjectiveCover {
    pub projective: ProjectiveSum,
    pub map: ModuleMap,
}

pub fn projective_cover(m: &FdModule) -> Result<ProjectiveCover> {
    let a = m.algebra();
    let f = m.field();
    let idem = a.primitive_idempotents()?;
    let rad = Subspace::from_rows(&m.radical_rows()?);
    let mut is_piv = vec![false; m.dim()];
    for &p in rad.pivots() {
        is_piv[p] = true;
    }
    let keep: Vec<usize> = (0..m.dim()).filter(|&c| !is_piv[c]).collect();
    let (top, _) = m.quotient(rad.basis());
    let section = Matrix::identity(f, m.dim()).select_rows(&keep);
    let mut vertices = Vec::new();
    let mut images = Vec::new();
    for (v, e) in idem.iter().enumerate() {
        let part = top.idempotent_part(e);
        let lifted = part.mul(&section).mul(&m.action_of(e));
        for r in 0..lifted.rows() {
            vertices.push(v);
            images.push(lifted.row(r));
        }
    }
    let p = ProjectiveSum::new(a, &vertices)?;
    let map = p.map_from_generators(m, &images);
    debug_assert!(map.is_surjective());
    Ok(ProjectiveCover { projective: p, map })
}

/// `… → P_1 → P_0 → M`, built from projective covers of successive kernels.
#[derive(Clone, Debug)]
pub struct ProjResolution {
    pub module: FdModule,
    /// `P_0, P_1, …`
    pub terms: Vec<ProjectiveSum>,
    /// `diffs[i]: P_{i+1} → P_i`
    pub diffs: Vec<Matrix>,
    pub augmentation: ModuleMap,
    /// the last computed kernel vanished
    pub complete: bool,
}

impl ProjResolution {
    /// Projective dimension, when the resolution is complete.
    pub fn length(&self) -> Option<usize> {
        self.complete.then(|| self.terms.len().saturating_sub(1))
    }

    /// The deleted resolution as a complex in degrees `−k..0`.
    pub fn complex(&self) -> BoundedComplex {
        let a = self.module.algebra().clone();
        let k = self.terms.len() as i32 - 1;
        let terms: Vec<FdModule> = self.terms.iter().rev().map(|p| p.module().clone()).collect();
        let diffs: Vec<Matrix> = self.diffs.iter().rev().cloned().collect();
        BoundedComplex::new_unchecked(a, -k.max(0), terms, diffs).expect("shapes agree")
    }

    /// `Ext^i(M, N)` from this resolution; needs `P_{i+1}` unless complete.
    pub fn ext(&self, n: &FdModule, i: usize) -> Result<Ext> {
        let f = n.field();
        if i >= self.terms.len() {
            if self.complete {
                return Ok(Ext { degree: i, dim: 0, cocycles: vec![] });
            }
            return Err(Error::Precondition(format!("resolution too short for Ext^{i}")));
        }
        if i + 1 >= self.terms.len() && !self.complete {
            return Err(Error::Precondition(format!("resolution too short for Ext^{i}")));
        }
        let hom_i = self.terms[i].hom_to(n)?;
        let delta = |j: usize, h: &ProjHom| -> Result<Matrix> {
            // Hom(P_j, N) → Hom(P_{j+1}, N), precomposition with the differential
            let next = self.terms[j + 1].hom_to(n)?;
            let rows: Vec<Matrix> = (0..h.dim()).map(|b| next.coords(&self.diffs[j].mul(&h.basis_map(b)))).collect();
            Ok(Matrix::vstack(f, next.dim(), &rows.iter().collect::<Vec<_>>()))
        };
        let out = if i + 1 < self.terms.len() { delta(i, &hom_i)? } else { Matrix::zeros(f, hom_i.dim(), 0) };
        let cycles = Subspace::from_rows(&out.kernel_basis());
        let bounds = if i == 0 {
            Matrix::zeros(f, 0, hom_i.dim())
        } else {
            let prev = self.terms[i - 1].hom_to(n)?;
            delta(i - 1, &prev)?
        };
        let reps = quotient_representatives(&cycles, &cycles.coords(&bounds)).mul(cycles.basis());
        let cocycles = (0..reps.rows())
            .map(|r| ModuleMap::new_unchecked(self.terms[i].module().clone(), n.clone(), hom_i.map(&reps.row(r))))
            .collect::<Vec<_>>();
        Ok(Ext { degree: i, dim: cocycles.len(), cocycles })
    }
}

/// `Ext^i(M, N)` with cocycles `P_i → N` representing a basis.
#[derive(Clone, Debug)]
pub struct Ext {
    pub degree: usize,
    pub dim: usize,
    pub cocycles: Vec<ModuleMap>,
}

/// At most `max_terms` terms `P_0 … P_{max_terms−1}`.
pub fn proj_resolution(m: &FdModule, max_terms: usize) -> Result<ProjResolution> {
    let cover = projective_cover(m)?;
    let mut terms = vec![cover.projective.clone()];
    let mut diffs = Vec::new();
    let augmentation = cover.map.clone();
    let mut current = cover.map;
    let mut complete = false;
    loop {
        let (k, inc) = current.kernel();
        if k.dim() == 0 {
            complete = true;
            break;
        }
        if terms.len() >= max_terms {
            break;
        }
        let c = projective_cover(&k)?;
        let d = c.map.matrix().mul(inc.matrix());
        let next = ModuleMap::new_unchecked(c.projective.module().clone(), terms.last().unwrap().module().clone(), d.clone());
        diffs.push(d);
        terms.push(c.projective);
        current = next;
    }
    Ok(ProjResolution { module: m.clone(), terms, diffs, augmentation, complete })
}

/// The minimal projective resolution, which must end within `max_len` steps.
pub fn min_proj_resolution(m: &FdModule, max_len: usize) -> Result<ProjResolution> {
    let r = proj_resolution(m, max_len + 1)?;
    if !r.complete {
        return Err(Error::Precondition(format!("projective dimension exceeds {max_len}")));
    }
    Ok(r)
}

/// `None` when the projective dimension exceeds `max_len`.
pub fn projective_dimension(m: &FdModule, max_len: usize) -> Result<Option<usize>> {
    Ok(proj_resolution(m, max_len + 1)?.length())
}

pub fn ext(m: &FdModule, n: &FdModule, i: usize) -> Result<Ext> {
    proj_resolution(m, i + 2)?.ext(n, i)
}
