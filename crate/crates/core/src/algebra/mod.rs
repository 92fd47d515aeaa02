//! Finite-dimensional associative unital algebras.
//!
//! An algebra is stored through its right multiplication matrices: `R_j`
//! has as row `i` the coordinates of `b_i · b_j`. Elements are `1 × dim`
//! row vectors of coordinates.

mod idempotent;
mod quiver;

use std::fmt;
use std::sync::{Arc, OnceLock};

use crate::error::{Error, Result};
use crate::exactla::{Elem, FieldSpec, Matrix, Subspace};

pub(crate) use idempotent::primitive_refinement;
pub use quiver::{bound_quiver_algebra, bound_quiver_algebra_with_bound, Arrow, Path, Quiver, Relation, DEFAULT_DEGREE_BOUND};

pub type AlgebraRef = Arc<Algebra>;

/// How an algebra was presented.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Presentation {
    BoundQuiver {
        quiver: Quiver,
        relations: Vec<Relation>,
        /// basis element `i` is the class of `paths[i]`
        paths: Vec<Path>,
    },
    StructureConstants,
}

pub struct Algebra {
    field: FieldSpec,
    labels: Vec<String>,
    right: Vec<Matrix>,
    unit: Matrix,
    presentation: Presentation,
    left: OnceLock<Vec<Matrix>>,
    idempotents: OnceLock<Result<Vec<Matrix>>>,
    radical: OnceLock<Result<Subspace>>,
    generators: OnceLock<Vec<Matrix>>,
}

impl fmt::Debug for Algebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Algebra<{}>(dim {}, {:?})", self.field, self.dim(), self.labels)
    }
}

impl Algebra {
    pub(crate) fn from_parts(
        field: FieldSpec,
        labels: Vec<String>,
        right: Vec<Matrix>,
        unit: Matrix,
        presentation: Presentation,
    ) -> Algebra {
        Algebra {
            field,
            labels,
            right,
            unit,
            presentation,
            left: OnceLock::new(),
            idempotents: OnceLock::new(),
            radical: OnceLock::new(),
            generators: OnceLock::new(),
        }
    }

    /// The one-dimensional algebra `k`.
    pub fn ground(field: FieldSpec) -> AlgebraRef {
        let a = Algebra::from_parts(
            field,
            vec!["1".into()],
            vec![Matrix::identity(field, 1)],
            Matrix::identity(field, 1),
            Presentation::StructureConstants,
        );
        let _ = a.idempotents.set(Ok(vec![Matrix::identity(field, 1)]));
        let _ = a.radical.set(Ok(Subspace::zero(field, 1)));
        Arc::new(a)
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn dim(&self) -> usize {
        self.right.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn presentation(&self) -> &Presentation {
        &self.presentation
    }

    pub fn is_bound_quiver(&self) -> bool {
        matches!(self.presentation, Presentation::BoundQuiver { .. })
    }

    /// Coordinates of the unit.
    pub fn unit(&self) -> &Matrix {
        &self.unit
    }

    /// Coordinates of the basis element `b_i`.
    pub fn basis_element(&self, i: usize) -> Matrix {
        Matrix::unit_row(self.field, self.dim(), i)
    }

    /// Right multiplication by `b_j`.
    pub fn right_mult(&self, j: usize) -> &Matrix {
        &self.right[j]
    }

    pub fn right_mults(&self) -> &[Matrix] {
        &self.right
    }

    /// Left multiplication by `b_i`: row `k` holds the coordinates of `b_i b_k`.
    pub fn left_mult(&self, i: usize) -> &Matrix {
        &self.left_mults()[i]
    }

    pub fn left_mults(&self) -> &[Matrix] {
        self.left.get_or_init(|| {
            let n = self.dim();
            (0..n)
                .map(|i| Matrix::vstack(self.field, n, &self.right.iter().map(|r| r.row(i)).collect::<Vec<_>>().iter().collect::<Vec<_>>()))
                .collect()
        })
    }

    /// `c[i][j][k]`: coefficient of `b_k` in `b_i b_j`.
    pub fn structure_constants(&self) -> Vec<Vec<Vec<Elem>>> {
        let n = self.dim();
        (0..n).map(|i| (0..n).map(|j| self.right[j].row_elems(i)).collect()).collect()
    }

    /// Product of two elements given as coordinate rows.
    pub fn mul(&self, x: &Matrix, y: &Matrix) -> Matrix {
        x.mul(&self.element_right_mult(y))
    }

    /// Matrix of `x ↦ x·y`.
    pub fn element_right_mult(&self, y: &Matrix) -> Matrix {
        let n = self.dim();
        Matrix::combination(self.field, n, n, &y.row_elems(0), &self.right)
    }

    /// Matrix of `y ↦ x·y`.
    pub fn element_left_mult(&self, x: &Matrix) -> Matrix {
        let n = self.dim();
        Matrix::combination(self.field, n, n, &x.row_elems(0), self.left_mults())
    }

    /// Same field, dimension, unit and multiplication table.
    pub fn same_structure(&self, other: &Algebra) -> bool {
        self.field == other.field && self.unit == other.unit && self.right == other.right
    }

    /// Checks associativity on all basis triples and the unit law.
    pub fn validate(&self) -> Result<()> {
        let n = self.dim();
        let f = self.field;
        if self.unit.rows() != 1 || self.unit.cols() != n {
            return Err(Error::InvalidAlgebra("unit has the wrong length".into()));
        }
        for r in &self.right {
            if r.rows() != n || r.cols() != n || r.field() != f {
                return Err(Error::InvalidAlgebra("structure constants have the wrong shape".into()));
            }
        }
        if !self.element_right_mult(&self.unit).is_identity() {
            let i = (0..n).find(|&i| self.mul(&self.basis_element(i), &self.unit) != self.basis_element(i)).unwrap_or(0);
            return Err(Error::InvalidAlgebra(format!("unit law fails: b_{i} · 1 ≠ b_{i}")));
        }
        for j in 0..n {
            if self.unit.mul(&self.right[j]) != self.basis_element(j) {
                return Err(Error::InvalidAlgebra(format!("unit law fails: 1 · b_{j} ≠ b_{j}")));
            }
        }
        for j in 0..n {
            for k in 0..n {
                let lhs = self.right[j].mul(&self.right[k]);
                let jk = self.right[k].row(j);
                let rhs = self.element_right_mult(&jk);
                if lhs != rhs {
                    let i = (0..n).find(|&i| lhs.row(i) != rhs.row(i)).unwrap();
                    return Err(Error::InvalidAlgebra(format!(
                        "associativity fails on basis triple ({i}, {j}, {k}): (b_{i} b_{j}) b_{k} ≠ b_{i} (b_{j} b_{k})"
                    )));
                }
            }
        }
        Ok(())
    }

    /// Basis (as rows) of the Jacobson radical.
    pub fn radical(&self) -> Result<Subspace> {
        self.radical.get_or_init(|| self.compute_radical()).clone()
    }

    fn compute_radical(&self) -> Result<Subspace> {
        let n = self.dim();
        if let Presentation::BoundQuiver { paths, .. } = &self.presentation {
            let rows: Vec<Matrix> = (0..n).filter(|&i| !paths[i].arrows.is_empty()).map(|i| self.basis_element(i)).collect();
            return Ok(Subspace::from_rows(&Matrix::vstack(self.field, n, &rows.iter().collect::<Vec<_>>())));
        }
        if !self.field.trace_criterion_ok(n) {
            return Err(Error::Unsupported(format!(
                "radical computation unsupported for this field/presentation: {} with algebra dimension {n}",
                self.field
            )));
        }
        // x ∈ rad  <=>  tr(L_{x b_j}) = 0 for all j
        let traces: Vec<Elem> = self.left_mults().iter().map(|l| l.trace()).collect();
        let tr = Matrix::row_vector(self.field, &traces).transpose();
        let gram = Matrix::from_fn(self.field, n, n, |i, j| self.right[j].row(i).mul(&tr).get(0, 0));
        Ok(Subspace::from_rows(&gram.kernel_basis()))
    }

    /// A complete set of orthogonal primitive idempotents summing to 1.
    pub fn primitive_idempotents(&self) -> Result<Vec<Matrix>> {
        self.idempotents.get_or_init(|| self.compute_idempotents()).clone()
    }

    fn compute_idempotents(&self) -> Result<Vec<Matrix>> {
        if let Presentation::BoundQuiver { paths, .. } = &self.presentation {
            return Ok((0..self.dim()).filter(|&i| paths[i].arrows.is_empty()).map(|i| self.basis_element(i)).collect());
        }
        let n = self.dim();
        // End(A_A) is A acting by left multiplication; splitting 1 there
        // splits the regular module.
        let parts = primitive_refinement(self.field, n, self.left_mults(), vec![Matrix::identity(self.field, n)])?;
        Ok(parts.iter().map(|e| self.unit.mul(e)).collect())
    }

    /// Non-idempotent algebra generators: together with the primitive
    /// idempotents they generate the algebra.
    pub fn generators(&self) -> Result<Vec<Matrix>> {
        if let Some(g) = self.generators.get() {
            return Ok(g.clone());
        }
        let g = self.compute_generators()?;
        Ok(self.generators.get_or_init(|| g).clone())
    }

    fn compute_generators(&self) -> Result<Vec<Matrix>> {
        if let Presentation::BoundQuiver { paths, .. } = &self.presentation {
            return Ok((0..self.dim()).filter(|&i| paths[i].arrows.len() == 1).map(|i| self.basis_element(i)).collect());
        }
        let idem = self.primitive_idempotents()?;
        let mut gens: Vec<Matrix> = Vec::new();
        let mut span = self.closure(&idem);
        // pieces e_u b e_v keep the generators inside idempotent blocks
        for u in &idem {
            for v in &idem {
                for k in 0..self.dim() {
                    if span.dim() == self.dim() {
                        return Ok(gens);
                    }
                    let piece = self.mul(&self.mul(u, &self.basis_element(k)), v);
                    if piece.is_zero() || span.contains(&piece) {
                        continue;
                    }
                    gens.push(piece);
                    let all: Vec<Matrix> = idem.iter().chain(gens.iter()).cloned().collect();
                    span = self.closure(&all);
                }
            }
        }
        Ok(gens)
    }

    /// Span of all products of the given elements (including the unit).
    fn closure(&self, elems: &[Matrix]) -> Subspace {
        let n = self.dim();
        let mut rows: Vec<Matrix> = vec![self.unit.clone()];
        rows.extend(elems.iter().cloned());
        let mut span = Subspace::from_rows(&Matrix::vstack(self.field, n, &rows.iter().collect::<Vec<_>>()));
        loop {
            let basis = span.basis().clone();
            let mut more = vec![basis.clone()];
            for g in elems {
                more.push(basis.mul(&self.element_right_mult(g)));
            }
            let next = Subspace::from_rows(&Matrix::vstack(self.field, n, &more.iter().collect::<Vec<_>>()));
            if next.dim() == span.dim() {
                return span;
            }
            span = next;
        }
    }

    /// The opposite algebra, with `b_i ∘ b_j = b_j b_i`.
    pub fn opposite(&self) -> AlgebraRef {
        let a = Algebra::from_parts(
            self.field,
            self.labels.clone(),
            self.left_mults().to_vec(),
            self.unit.clone(),
            Presentation::StructureConstants,
        );
        if let Some(Ok(idem)) = self.idempotents.get() {
            let _ = a.idempotents.set(Ok(idem.clone()));
        }
        if let Some(Ok(rad)) = self.radical.get() {
            let _ = a.radical.set(Ok(rad.clone()));
        }
        Arc::new(a)
    }

    /// Tensor product over the field; basis `b_i ⊗ c_j` at index `i·dim(b) + j`.
    pub fn tensor(a: &Algebra, b: &Algebra) -> Result<AlgebraRef> {
        if a.field != b.field {
            return Err(Error::FieldMismatch);
        }
        let mut right = Vec::with_capacity(a.dim() * b.dim());
        let mut labels = Vec::with_capacity(a.dim() * b.dim());
        for i in 0..a.dim() {
            for j in 0..b.dim() {
                right.push(a.right[i].kron(&b.right[j]));
                labels.push(format!("{}⊗{}", a.labels[i], b.labels[j]));
            }
        }
        let t = Algebra::from_parts(a.field, labels, right, a.unit.kron(&b.unit), Presentation::StructureConstants);
        let ia = a.primitive_idempotents()?;
        let ib = b.primitive_idempotents()?;
        let mut idem = Vec::new();
        for x in &ia {
            for y in &ib {
                idem.push(x.kron(y));
            }
        }
        let _ = t.idempotents.set(Ok(idem));
        let ra = a.radical()?;
        let rb = b.radical()?;
        let full_a = Matrix::identity(a.field, a.dim());
        let full_b = Matrix::identity(b.field, b.dim());
        let rad = Matrix::vstack(a.field, t.dim(), &[&ra.basis().kron(&full_b), &full_a.kron(rb.basis())]);
        let _ = t.radical.set(Ok(Subspace::from_rows(&rad)));
        let mut gens = Vec::new();
        for g in a.generators()? {
            gens.push(g.kron(&b.unit));
        }
        for g in b.generators()? {
            gens.push(a.unit.kron(&g));
        }
        let _ = t.generators.set(gens);
        Ok(Arc::new(t))
    }

    /// `x` is an idempotent of the algebra.
    pub fn is_idempotent(&self, x: &Matrix) -> bool {
        self.mul(x, x) == *x
    }
}

/// Builds an algebra from structure constants `c[i][j][k]` (coefficient of
/// `b_k` in `b_i b_j`) and unit coordinates, validating the algebra laws.
pub fn structure_algebra(field: FieldSpec, structconst: &[Vec<Vec<Elem>>], unit: &[Elem]) -> Result<AlgebraRef> {
    let n = structconst.len();
    if structconst.iter().any(|r| r.len() != n || r.iter().any(|c| c.len() != n)) || unit.len() != n {
        return Err(Error::InvalidAlgebra(format!("structure constants must be {n}×{n}×{n}")));
    }
    let right: Vec<Matrix> = (0..n).map(|j| Matrix::from_fn(field, n, n, |i, k| structconst[i][j][k].clone())).collect();
    let labels = (0..n).map(|i| format!("b{i}")).collect();
    from_right_mults(field, labels, right, Matrix::row_vector(field, unit))
}

/// Validated algebra from right multiplication matrices.
pub(crate) fn from_right_mults(field: FieldSpec, labels: Vec<String>, right: Vec<Matrix>, unit: Matrix) -> Result<AlgebraRef> {
    let a = Algebra::from_parts(field, labels, right, unit, Presentation::StructureConstants);
    a.validate()?;
    Ok(Arc::new(a))
}
