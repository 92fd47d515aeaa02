//! Hom spaces and endomorphism algebras.

use crate::algebra::{self, AlgebraRef};
use crate::error::{Error, Result};
use crate::exactla::{FieldSpec, Matrix, Subspace};

use super::{same_algebra, FdModule, ModuleMap};

/// A basis of `Hom(M, N)`. Basis maps are the echelon basis of the
/// flattened matrices, so coordinates are read off at pivot positions.
#[derive(Clone, Debug)]
pub struct HomSpace {
    source: FdModule,
    target: FdModule,
    span: Subspace,
}

impl HomSpace {
    pub fn source(&self) -> &FdModule {
        &self.source
    }

    pub fn target(&self) -> &FdModule {
        &self.target
    }

    pub fn dim(&self) -> usize {
        self.span.dim()
    }

    /// Matrix of the `i`-th basis map.
    pub fn matrix(&self, i: usize) -> Matrix {
        self.span.basis().unflatten_row(i, self.source.dim(), self.target.dim())
    }

    pub fn matrices(&self) -> Vec<Matrix> {
        (0..self.dim()).map(|i| self.matrix(i)).collect()
    }

    pub fn map(&self, i: usize) -> ModuleMap {
        ModuleMap::new_unchecked(self.source.clone(), self.target.clone(), self.matrix(i))
    }

    pub fn maps(&self) -> Vec<ModuleMap> {
        (0..self.dim()).map(|i| self.map(i)).collect()
    }

    /// Flattened basis, one map per row.
    pub fn flat_basis(&self) -> &Matrix {
        self.span.basis()
    }

    /// Coordinates of a map (given by its matrix) in the basis.
    pub fn coords(&self, m: &Matrix) -> Matrix {
        self.span.coords(&m.flatten())
    }

    /// Coordinates of several maps at once, given as flattened rows.
    pub fn coords_flat(&self, rows: &Matrix) -> Matrix {
        self.span.coords(rows)
    }

    pub fn contains(&self, m: &Matrix) -> bool {
        self.span.contains(&m.flatten())
    }

    /// The map with the given coordinates.
    pub fn combine(&self, coords: &Matrix) -> Matrix {
        coords.mul(self.span.basis()).unflatten_row(0, self.source.dim(), self.target.dim())
    }
}

/// Basis of the space of module maps `M → N`.
///
/// Maps respect the decomposition by the primitive idempotents, so in bases
/// adapted to `M = ⊕ M e_v` and `N = ⊕ N e_v` the unknown matrix is block
/// diagonal and only the remaining algebra generators impose equations.
pub fn hom_space(m: &FdModule, n: &FdModule) -> Result<HomSpace> {
    if !same_algebra(m.algebra(), n.algebra()) {
        return Err(Error::AlgebraMismatch);
    }
    let f = m.field();
    let (dm, dn) = (m.dim(), n.dim());
    if dm == 0 || dn == 0 {
        return Ok(HomSpace { source: m.clone(), target: n.clone(), span: Subspace::zero(f, dm * dn) });
    }
    let a = m.algebra();
    let blocks = match (a.primitive_idempotents(), a.generators()) {
        (Ok(idem), Ok(gens)) => Some((idem, gens)),
        _ => None,
    };
    let flat = match blocks {
        Some((idem, gens)) => solve_blocked(f, m, n, &idem, &gens),
        None => {
            let all: Vec<Matrix> = (0..a.dim()).map(|j| a.basis_element(j)).collect();
            let one = vec![a.unit().clone()];
            solve_blocked(f, m, n, &one, &all)
        }
    };
    Ok(HomSpace { source: m.clone(), target: n.clone(), span: Subspace::from_rows(&flat) })
}

/// Returns the solution maps flattened as rows.
fn solve_blocked(f: FieldSpec, m: &FdModule, n: &FdModule, idem: &[Matrix], gens: &[Matrix]) -> Matrix {
    let (dm, dn) = (m.dim(), n.dim());
    let bm: Vec<Matrix> = idem.iter().map(|e| m.idempotent_part(e)).collect();
    let bn: Vec<Matrix> = idem.iter().map(|e| n.idempotent_part(e)).collect();
    let basis_m = Matrix::vstack(f, dm, &bm.iter().collect::<Vec<_>>());
    let basis_n = Matrix::vstack(f, dn, &bn.iter().collect::<Vec<_>>());
    let inv_m = basis_m.inverse().expect("idempotents decompose the module");
    let inv_n = basis_n.inverse().expect("idempotents decompose the module");

    // unknowns: entries of the diagonal blocks
    let mut unknowns: Vec<(usize, usize)> = Vec::new();
    let (mut ro, mut co) = (0, 0);
    for (x, y) in bm.iter().zip(&bn) {
        for i in 0..x.rows() {
            for j in 0..y.rows() {
                unknowns.push((ro + i, co + j));
            }
        }
        ro += x.rows();
        co += y.rows();
    }
    let u = unknowns.len();
    if u == 0 {
        return Matrix::zeros(f, 0, dm * dn);
    }

    // equation columns: A'_M(g) X − X A'_N(g) at every entry, per generator
    let adapted: Vec<(Matrix, Matrix)> = gens
        .iter()
        .map(|g| (basis_m.mul(&m.action_of(g)).mul(&inv_m), basis_n.mul(&n.action_of(g)).mul(&inv_n)))
        .collect();
    let mut sys = Matrix::zeros(f, u, gens.len() * dm * dn);
    for (k, &(p, q)) in unknowns.iter().enumerate() {
        for (gi, (am, an)) in adapted.iter().enumerate() {
            let base = gi * dm * dn;
            for r in 0..dm {
                if !am.is_entry_zero(r, p) {
                    let col = base + r * dn + q;
                    let cur = sys.get(k, col);
                    sys.set(k, col, f.add(&cur, &am.get(r, p)));
                }
            }
            for c in 0..dn {
                if !an.is_entry_zero(q, c) {
                    let col = base + p * dn + c;
                    let cur = sys.get(k, col);
                    sys.set(k, col, f.sub(&cur, &an.get(q, c)));
                }
            }
        }
    }
    let nonzero: Vec<usize> = (0..sys.cols()).filter(|&c| (0..u).any(|r| !sys.is_entry_zero(r, c))).collect();
    let sys = sys.select_cols(&nonzero);
    let sol = if sys.cols() == 0 { Matrix::identity(f, u) } else { sys.kernel_basis() };

    // back to the original bases: F = B_M⁻¹ X B_N
    let mut rows = Vec::with_capacity(sol.rows());
    for s in 0..sol.rows() {
        let mut x = Matrix::zeros(f, dm, dn);
        for (k, &(p, q)) in unknowns.iter().enumerate() {
            let e = sol.get(s, k);
            if !f.is_zero(&e) {
                x.set(p, q, e);
            }
        }
        rows.push(inv_m.mul(&x).mul(&basis_n).flatten());
    }
    Matrix::vstack(f, dm * dn, &rows.iter().collect::<Vec<_>>())
}

/// `S = End(M)` with basis the echelon basis of `Hom(M, M)`; the product is
/// composition, `s·s' = s ∘ s'` (first `s'`, then `s`).
#[derive(Clone, Debug)]
pub struct EndAlgebra {
    pub algebra: AlgebraRef,
    pub hom: HomSpace,
}

impl EndAlgebra {
    /// Matrix by which basis element `s_i` acts on `M` from the left:
    /// `s_i · m = m Φ_i`.
    pub fn left_action(&self, i: usize) -> Matrix {
        self.hom.matrix(i)
    }

    pub fn left_actions(&self) -> Vec<Matrix> {
        self.hom.matrices()
    }

    /// Matrix of an element of `S` given by coordinates.
    pub fn element_matrix(&self, coords: &Matrix) -> Matrix {
        self.hom.combine(coords)
    }
}

pub fn end_algebra(m: &FdModule) -> Result<EndAlgebra> {
    let hom = hom_space(m, m)?;
    let f = m.field();
    let r = hom.dim();
    let phis = hom.matrices();
    // row i of R_j: coordinates of s_i s_j, whose matrix is Φ_j Φ_i
    let mut right = Vec::with_capacity(r);
    for j in 0..r {
        let rows: Vec<Matrix> = (0..r).map(|i| phis[j].mul(&phis[i]).flatten()).collect();
        let stacked = Matrix::vstack(f, m.dim() * m.dim(), &rows.iter().collect::<Vec<_>>());
        right.push(hom.coords_flat(&stacked));
    }
    let unit = hom.coords(&Matrix::identity(f, m.dim()));
    let labels = (0..r).map(|i| format!("s{i}")).collect();
    let algebra = algebra::from_right_mults(f, labels, right, unit)?;
    Ok(EndAlgebra { algebra, hom })
}

#[cfg(test)]
mod tests {
    use super::super::fixtures::*;
    use super::super::*;
    use super::*;

    /// Oracle: solve the intertwining equations for every basis element with
    /// no block structure.
    fn naive_hom_dim(m: &FdModule, n: &FdModule) -> usize {
        let f = m.field();
        let (dm, dn) = (m.dim(), n.dim());
        let u = dm * dn;
        if u == 0 {
            return 0;
        }
        let a = m.algebra();
        let mut cols = Vec::new();
        for j in 0..a.dim() {
            let mut sys = Matrix::zeros(f, u, u);
            for p in 0..dm {
                for q in 0..dn {
                    let mut e = Matrix::zeros(f, dm, dn);
                    e.set(p, q, f.one());
                    let out = m.action(j).mul(&e).sub(&e.mul(n.action(j))).flatten();
                    sys.set_block(p * dn + q, 0, &out);
                }
            }
            cols.push(sys);
        }
        let all = Matrix::hstack(f, u, &cols.iter().collect::<Vec<_>>());
        all.kernel_basis().rows()
    }

    #[test]
    fn a2_hom_dims() {
        let a = a2();
        let p1 = projective(&a, 0).unwrap();
        let p2 = projective(&a, 1).unwrap();
        let s1 = simple(&a, 0).unwrap();
        assert_eq!(hom_space(&p1, &s1).unwrap().dim(), 1);
        assert_eq!(hom_space(&s1, &p1).unwrap().dim(), 0);
        for x in [&p1, &p2, &s1] {
            for y in [&p1, &p2, &s1] {
                assert_eq!(hom_space(x, y).unwrap().dim(), naive_hom_dim(x, y));
            }
        }
        let id = Matrix::identity(f101(), 2);
        assert!(hom_space(&p1, &p1).unwrap().contains(&id));
    }

    #[test]
    fn hom_additivity_on_n3() {
        let a = n3();
        let c = canonical_modules(&a).unwrap();
        let mut all: Vec<FdModule> = c.projectives.clone();
        all.extend(c.injectives.clone());
        all.extend(c.simples.clone());
        let sum = sum_module(&a, &all).unwrap();
        for n in &all {
            let total: usize = all.iter().map(|m| hom_space(m, n).unwrap().dim()).sum();
            assert_eq!(hom_space(&sum, n).unwrap().dim(), total);
            assert_eq!(total, naive_hom_dim(&sum, n));
        }
    }

    #[test]
    fn end_algebra_dimensions() {
        let a = a2();
        let p1 = projective(&a, 0).unwrap();
        let s1 = simple(&a, 0).unwrap();
        let t = sum_module(&a, &[p1, s1.clone()]).unwrap();
        let e = end_algebra(&t).unwrap();
        assert_eq!(e.algebra.dim(), 3);
        assert_eq!(e.algebra.radical().unwrap().dim(), 1);
        assert_eq!(e.algebra.primitive_idempotents().unwrap().len(), 2);
        assert_eq!(end_algebra(&s1).unwrap().algebra.dim(), 1);

        // FIX-N3: T = S1 ⊕ P1 ⊕ P2 is the sum of the indecomposable
        // injectives; the nine Hom dimensions add up to 5
        let a = n3();
        let t = sum_module(&a, &[simple(&a, 0).unwrap(), projective(&a, 0).unwrap(), projective(&a, 1).unwrap()]).unwrap();
        assert_eq!(naive_hom_dim(&t, &t), 5);
        let e = end_algebra(&t).unwrap();
        assert_eq!(e.algebra.dim(), 5);
        // bimodule law: the left S-action commutes with the right action
        for phi in e.left_actions() {
            for j in 0..a.dim() {
                assert_eq!(phi.mul(t.action(j)), t.action(j).mul(&phi));
            }
        }
    }
}
