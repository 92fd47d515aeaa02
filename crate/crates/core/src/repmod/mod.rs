//! Finite-dimensional right modules and their homomorphisms.
//!
//! A module of dimension `d` over an algebra with basis `b_0..b_{n-1}` is
//! given by `d × d` matrices `A(b_j)` acting on row vectors: `m·b_j = m A(b_j)`.
//! A module map `M → N` is a `dim M × dim N` matrix `F` with
//! `A_M(b) F = F A_N(b)`; composition "first `f`, then `g`" is `F·G`.

mod canonical;
mod decompose;
mod hom;

use std::fmt;
use std::sync::Arc;

use crate::algebra::{Algebra, AlgebraRef};
use crate::error::{Error, Result};
use crate::exactla::{Elem, FieldSpec, Matrix, Subspace};

pub use canonical::{canonical_modules, injective, projective, regular, representation, simple, CanonicalModules, Representation};
pub(crate) use decompose::in_add_of;
pub use decompose::{decompose, decompose_with_maps, in_add, is_isomorphic, Decomposition, Summand};
pub use hom::{end_algebra, hom_space, EndAlgebra, HomSpace};

/// A finite-dimensional right module.
#[derive(Clone)]
pub struct FdModule {
    algebra: AlgebraRef,
    dim: usize,
    action: Arc<Vec<Matrix>>,
}

impl fmt::Debug for FdModule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FdModule(dim {} over algebra of dim {})", self.dim, self.algebra.dim())
    }
}

impl PartialEq for FdModule {
    fn eq(&self, other: &Self) -> bool {
        same_algebra(&self.algebra, &other.algebra) && self.dim == other.dim && self.action == other.action
    }
}

pub(crate) fn same_algebra(a: &AlgebraRef, b: &AlgebraRef) -> bool {
    Arc::ptr_eq(a, b) || a.same_structure(b)
}

impl FdModule {
    /// Validated construction from one action matrix per basis element.
    pub fn new(algebra: AlgebraRef, action: Vec<Matrix>) -> Result<FdModule> {
        let dim = action.first().map_or(0, |m| m.rows());
        if action.len() != algebra.dim() {
            return Err(Error::InvalidModule(format!(
                "expected {} action matrices, got {}",
                algebra.dim(),
                action.len()
            )));
        }
        let m = FdModule::new_unchecked(algebra, dim, action);
        m.validate()?;
        Ok(m)
    }

    pub(crate) fn new_unchecked(algebra: AlgebraRef, dim: usize, action: Vec<Matrix>) -> FdModule {
        debug_assert_eq!(action.len(), algebra.dim());
        FdModule { algebra, dim, action: Arc::new(action) }
    }

    pub fn zero(algebra: &AlgebraRef) -> FdModule {
        let f = algebra.field();
        let action = vec![Matrix::zeros(f, 0, 0); algebra.dim()];
        FdModule::new_unchecked(algebra.clone(), 0, action)
    }

    pub fn algebra(&self) -> &AlgebraRef {
        &self.algebra
    }

    pub fn field(&self) -> FieldSpec {
        self.algebra.field()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn is_zero(&self) -> bool {
        self.dim == 0
    }

    /// Action matrix of the basis element `b_j`.
    pub fn action(&self, j: usize) -> &Matrix {
        &self.action[j]
    }

    pub fn actions(&self) -> &[Matrix] {
        &self.action
    }

    /// Action matrix of an arbitrary element (coordinate row).
    pub fn action_of(&self, x: &Matrix) -> Matrix {
        Matrix::combination(self.field(), self.dim, self.dim, &x.row_elems(0), &self.action)
    }

    /// Unitality and multiplicativity of the action, checked exactly.
    pub fn validate(&self) -> Result<()> {
        let a = &self.algebra;
        let f = self.field();
        for (j, m) in self.action.iter().enumerate() {
            if m.rows() != self.dim || m.cols() != self.dim || m.field() != f {
                return Err(Error::InvalidModule(format!("action matrix {j} has the wrong shape or field")));
            }
        }
        if !self.action_of(a.unit()).is_identity() {
            return Err(Error::InvalidModule("the unit does not act as the identity".into()));
        }
        let n = a.dim();
        for i in 0..n {
            for j in 0..n {
                let lhs = self.action[i].mul(&self.action[j]);
                let rhs = self.action_of(&a.right_mult(j).row(i));
                if lhs != rhs {
                    return Err(Error::InvalidModule(format!(
                        "action is not multiplicative on basis pair ({}, {})",
                        a.labels()[i],
                        a.labels()[j]
                    )));
                }
            }
        }
        Ok(())
    }

    /// The submodule spanned by the rows of `rows` (which must be closed under
    /// the action), in the canonical echelon basis, with its inclusion.
    pub fn submodule(&self, rows: &Matrix) -> (FdModule, ModuleMap) {
        let sub = Subspace::from_rows(rows);
        self.submodule_of(&sub)
    }

    pub(crate) fn submodule_of(&self, sub: &Subspace) -> (FdModule, ModuleMap) {
        let basis = sub.basis();
        let action: Vec<Matrix> = self.action.iter().map(|a| sub.coords(&basis.mul(a))).collect();
        let m = FdModule::new_unchecked(self.algebra.clone(), sub.dim(), action);
        let inc = ModuleMap::new_unchecked(m.clone(), self.clone(), basis.clone());
        (m, inc)
    }

    /// The quotient by the submodule spanned by `rows`, with the projection.
    pub fn quotient(&self, rows: &Matrix) -> (FdModule, ModuleMap) {
        let sub = Subspace::from_rows(rows);
        let f = self.field();
        let d = self.dim;
        let mut is_piv = vec![false; d];
        for &p in sub.pivots() {
            is_piv[p] = true;
        }
        let keep: Vec<usize> = (0..d).filter(|&c| !is_piv[c]).collect();
        let proj = sub.reduce(&Matrix::identity(f, d)).select_cols(&keep);
        let section = Matrix::identity(f, d).select_rows(&keep);
        let action: Vec<Matrix> = self.action.iter().map(|a| section.mul(a).mul(&proj)).collect();
        let q = FdModule::new_unchecked(self.algebra.clone(), keep.len(), action);
        let pi = ModuleMap::new_unchecked(self.clone(), q.clone(), proj);
        (q, pi)
    }

    /// `M·rad`, as a row basis.
    pub fn radical_rows(&self) -> Result<Matrix> {
        let f = self.field();
        let rad = self.algebra.radical()?;
        let gens: Vec<Matrix> = if self.algebra.is_bound_quiver() {
            self.algebra.generators()?
        } else {
            (0..rad.dim()).map(|i| rad.basis().row(i)).collect()
        };
        let mut parts = Vec::new();
        for g in &gens {
            parts.push(self.action_of(g));
        }
        let all = Matrix::vstack(f, self.dim, &parts.iter().collect::<Vec<_>>());
        Ok(all.row_space_basis())
    }

    /// Top `M / M·rad` with its projection.
    pub fn top(&self) -> Result<(FdModule, ModuleMap)> {
        Ok(self.quotient(&self.radical_rows()?))
    }

    /// Image of the projection `A(e)` for an idempotent `e`.
    pub fn idempotent_part(&self, e: &Matrix) -> Matrix {
        self.action_of(e).row_space_basis()
    }

    /// Change of basis: the module with action `B A(b) B⁻¹` and the
    /// isomorphism from it to `self` given by `B`.
    pub fn transport(&self, b: &Matrix) -> Result<(FdModule, ModuleMap)> {
        let binv = b.inverse().ok_or_else(|| Error::Dimension("change of basis is not invertible".into()))?;
        let action: Vec<Matrix> = self.action.iter().map(|a| b.mul(a).mul(&binv)).collect();
        let m = FdModule::new_unchecked(self.algebra.clone(), self.dim, action);
        let iso = ModuleMap::new_unchecked(m.clone(), self.clone(), b.clone());
        Ok((m, iso))
    }
}

/// A module homomorphism.
#[derive(Clone, Debug, PartialEq)]
pub struct ModuleMap {
    source: FdModule,
    target: FdModule,
    matrix: Matrix,
}

/// Kernel, image and cokernel of a map, with their structure maps.
#[derive(Clone, Debug)]
pub struct MorphismParts {
    pub kernel: FdModule,
    pub kernel_inclusion: ModuleMap,
    pub image: FdModule,
    pub onto_image: ModuleMap,
    pub image_inclusion: ModuleMap,
    pub cokernel: FdModule,
    pub cokernel_projection: ModuleMap,
}

impl ModuleMap {
    /// Validated construction.
    pub fn new(source: FdModule, target: FdModule, matrix: Matrix) -> Result<ModuleMap> {
        if !same_algebra(source.algebra(), target.algebra()) {
            return Err(Error::AlgebraMismatch);
        }
        if matrix.rows() != source.dim() || matrix.cols() != target.dim() {
            return Err(Error::Dimension(format!(
                "map matrix is {}x{}, modules have dims {} and {}",
                matrix.rows(),
                matrix.cols(),
                source.dim(),
                target.dim()
            )));
        }
        let m = ModuleMap { source, target, matrix };
        m.validate()?;
        Ok(m)
    }

    pub(crate) fn new_unchecked(source: FdModule, target: FdModule, matrix: Matrix) -> ModuleMap {
        debug_assert_eq!(matrix.rows(), source.dim());
        debug_assert_eq!(matrix.cols(), target.dim());
        ModuleMap { source, target, matrix }
    }

    pub fn identity(m: &FdModule) -> ModuleMap {
        ModuleMap::new_unchecked(m.clone(), m.clone(), Matrix::identity(m.field(), m.dim()))
    }

    pub fn zero(source: &FdModule, target: &FdModule) -> ModuleMap {
        let f = source.field();
        ModuleMap::new_unchecked(source.clone(), target.clone(), Matrix::zeros(f, source.dim(), target.dim()))
    }

    pub fn source(&self) -> &FdModule {
        &self.source
    }

    pub fn target(&self) -> &FdModule {
        &self.target
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    /// Intertwining with every basis element, checked exactly.
    pub fn validate(&self) -> Result<()> {
        for j in 0..self.source.algebra().dim() {
            let lhs = self.source.action(j).mul(&self.matrix);
            let rhs = self.matrix.mul(self.target.action(j));
            if lhs != rhs {
                return Err(Error::NotAMap(format!(
                    "fails to commute with basis element {}",
                    self.source.algebra().labels()[j]
                )));
            }
        }
        Ok(())
    }

    /// `self` followed by `then`.
    pub fn then(&self, then: &ModuleMap) -> ModuleMap {
        assert_eq!(self.target.dim(), then.source.dim(), "maps do not compose");
        ModuleMap::new_unchecked(self.source.clone(), then.target.clone(), self.matrix.mul(&then.matrix))
    }

    pub fn add(&self, other: &ModuleMap) -> ModuleMap {
        ModuleMap::new_unchecked(self.source.clone(), self.target.clone(), self.matrix.add(&other.matrix))
    }

    pub fn sub(&self, other: &ModuleMap) -> ModuleMap {
        ModuleMap::new_unchecked(self.source.clone(), self.target.clone(), self.matrix.sub(&other.matrix))
    }

    pub fn scale(&self, s: &Elem) -> ModuleMap {
        ModuleMap::new_unchecked(self.source.clone(), self.target.clone(), self.matrix.scale(s))
    }

    pub fn neg(&self) -> ModuleMap {
        ModuleMap::new_unchecked(self.source.clone(), self.target.clone(), self.matrix.neg())
    }

    pub fn is_zero(&self) -> bool {
        self.matrix.is_zero()
    }

    pub fn rank(&self) -> usize {
        self.matrix.rank()
    }

    pub fn is_injective(&self) -> bool {
        self.rank() == self.source.dim()
    }

    pub fn is_surjective(&self) -> bool {
        self.rank() == self.target.dim()
    }

    pub fn is_isomorphism(&self) -> bool {
        self.source.dim() == self.target.dim() && self.is_injective()
    }

    pub fn kernel(&self) -> (FdModule, ModuleMap) {
        self.source.submodule(&self.matrix.kernel_basis())
    }

    pub fn cokernel(&self) -> (FdModule, ModuleMap) {
        self.target.quotient(&self.matrix)
    }

    pub fn parts(&self) -> MorphismParts {
        let (kernel, kernel_inclusion) = self.kernel();
        let (image, image_inclusion) = self.target.submodule(&self.matrix);
        let sub = Subspace::from_rows(image_inclusion.matrix());
        let onto = ModuleMap::new_unchecked(self.source.clone(), image.clone(), sub.coords(&self.matrix));
        let (cokernel, cokernel_projection) = self.cokernel();
        MorphismParts { kernel, kernel_inclusion, image, onto_image: onto, image_inclusion, cokernel, cokernel_projection }
    }
}

/// A direct sum with its structure maps.
#[derive(Clone, Debug)]
pub struct DirectSum {
    pub module: FdModule,
    pub injections: Vec<ModuleMap>,
    pub projections: Vec<ModuleMap>,
}

/// Block-diagonal direct sum; the empty list gives the zero module.
pub fn direct_sum(algebra: &AlgebraRef, parts: &[FdModule]) -> Result<DirectSum> {
    for p in parts {
        if !same_algebra(p.algebra(), algebra) {
            return Err(Error::AlgebraMismatch);
        }
    }
    let f = algebra.field();
    let dim: usize = parts.iter().map(|p| p.dim()).sum();
    let action: Vec<Matrix> = (0..algebra.dim())
        .map(|j| Matrix::block_diag(f, &parts.iter().map(|p| p.action(j)).collect::<Vec<_>>()))
        .collect();
    let module = FdModule::new_unchecked(algebra.clone(), dim, action);
    let mut injections = Vec::new();
    let mut projections = Vec::new();
    let mut off = 0;
    for p in parts {
        let mut inj = Matrix::zeros(f, p.dim(), dim);
        inj.set_block(0, off, &Matrix::identity(f, p.dim()));
        projections.push(ModuleMap::new_unchecked(module.clone(), p.clone(), inj.transpose()));
        injections.push(ModuleMap::new_unchecked(p.clone(), module.clone(), inj));
        off += p.dim();
    }
    Ok(DirectSum { module, injections, projections })
}

/// Convenience: the direct sum module alone.
pub fn sum_module(algebra: &AlgebraRef, parts: &[FdModule]) -> Result<FdModule> {
    Ok(direct_sum(algebra, parts)?.module)
}

/// Block matrix of a map between direct sums given componentwise:
/// `blocks[i][j]: source_i → target_j`.
pub fn block_map(field: FieldSpec, source_dims: &[usize], target_dims: &[usize], blocks: &[Vec<Matrix>]) -> Matrix {
    let rows: usize = source_dims.iter().sum();
    let cols: usize = target_dims.iter().sum();
    let mut m = Matrix::zeros(field, rows, cols);
    let mut r = 0;
    for (i, &sd) in source_dims.iter().enumerate() {
        let mut c = 0;
        for (j, &td) in target_dims.iter().enumerate() {
            m.set_block(r, c, &blocks[i][j]);
            c += td;
        }
        r += sd;
    }
    m
}

impl Algebra {
    /// The algebra as a right module over itself.
    pub fn regular_module(self: &Arc<Self>) -> FdModule {
        FdModule::new_unchecked(self.clone(), self.dim(), self.right_mults().to_vec())
    }
}
