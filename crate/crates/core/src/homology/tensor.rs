//! Bimodules, tensor products over the left algebra, and Tor.

use crate::algebra::{Algebra, AlgebraRef};
use crate::error::{Error, Result};
use crate::exactla::{Matrix, Subspace};
use crate::repmod::{end_algebra, same_algebra, EndAlgebra, FdModule, ModuleMap};

use super::complex::BoundedComplex;
use super::resolution::{proj_resolution, ProjResolution, ProjectiveSum};

/// An `(S, R)`-bimodule: a right `R`-module with a commuting left
/// `S`-action, `s_i · t = t Φ_i`.
#[derive(Clone, Debug)]
pub struct Bimodule {
    left: AlgebraRef,
    module: FdModule,
    left_actions: Vec<Matrix>,
}

impl Bimodule {
    pub fn new(left: AlgebraRef, module: FdModule, left_actions: Vec<Matrix>) -> Result<Bimodule> {
        let b = Bimodule { left, module, left_actions };
        b.validate()?;
        Ok(b)
    }

    /// `T` as an `(End T, R)`-bimodule.
    pub fn from_endomorphisms(t: &FdModule) -> Result<(Bimodule, EndAlgebra)> {
        let end = end_algebra(t)?;
        let b = Bimodule { left: end.algebra.clone(), module: t.clone(), left_actions: end.left_actions() };
        Ok((b, end))
    }

    pub fn validate(&self) -> Result<()> {
        let s = &self.left;
        let d = self.module.dim();
        if self.left_actions.len() != s.dim() {
            return Err(Error::InvalidModule("one left action matrix per basis element is required".into()));
        }
        for (i, phi) in self.left_actions.iter().enumerate() {
            if phi.rows() != d || phi.cols() != d {
                return Err(Error::InvalidModule(format!("left action {i} has the wrong shape")));
            }
            ModuleMap::new(self.module.clone(), self.module.clone(), phi.clone())
                .map_err(|_| Error::InvalidModule(format!("left action {i} does not commute with the right action")))?;
        }
        if !self.left_of(s.unit()).is_identity() {
            return Err(Error::InvalidModule("the unit does not act as the identity".into()));
        }
        for i in 0..s.dim() {
            for j in 0..s.dim() {
                // (s_i s_j)·t = s_i·(s_j·t) = t Φ_j Φ_i
                let lhs = self.left_of(&s.right_mult(j).row(i));
                if lhs != self.left_actions[j].mul(&self.left_actions[i]) {
                    return Err(Error::InvalidModule(format!("left action is not multiplicative on ({i}, {j})")));
                }
            }
        }
        Ok(())
    }

    pub fn left(&self) -> &AlgebraRef {
        &self.left
    }

    pub fn right(&self) -> &AlgebraRef {
        self.module.algebra()
    }

    pub fn module(&self) -> &FdModule {
        &self.module
    }

    pub fn left_actions(&self) -> &[Matrix] {
        &self.left_actions
    }

    /// `Φ_x` for an element of `S` given by coordinates.
    pub fn left_of(&self, x: &Matrix) -> Matrix {
        let d = self.module.dim();
        Matrix::combination(self.module.field(), d, d, &x.row_elems(0), &self.left_actions)
    }

    /// `T` as a right module over the enveloping algebra `S^op ⊗ R`.
    pub fn enveloping(&self) -> Result<Enveloping> {
        let lambda = Algebra::tensor(&self.left.opposite(), self.right())?;
        let dr = self.right().dim();
        let action: Vec<Matrix> = (0..lambda.dim())
            .map(|k| self.left_actions[k / dr].mul(self.module.action(k % dr)))
            .collect();
        let module = FdModule::new_unchecked(lambda.clone(), self.module.dim(), action);
        Ok(Enveloping { lambda, left: self.left.clone(), right: self.right().clone(), module })
    }
}

/// The enveloping algebra `Λ = S^op ⊗ R` together with a bimodule viewed
/// as a `Λ`-module; restricts `Λ`-modules back to bimodules.
#[derive(Clone, Debug)]
pub struct Enveloping {
    pub lambda: AlgebraRef,
    pub left: AlgebraRef,
    pub right: AlgebraRef,
    pub module: FdModule,
}

impl Enveloping {
    /// `P` restricted to `R` along `r ↦ 1 ⊗ r`.
    pub fn restrict_right(&self, p: &FdModule) -> FdModule {
        let (ds, dr) = (self.left.dim(), self.right.dim());
        let us = self.left.unit().row_elems(0);
        let f = p.field();
        let action: Vec<Matrix> = (0..dr)
            .map(|j| {
                let mats: Vec<Matrix> = (0..ds).map(|i| p.action(i * dr + j).clone()).collect();
                Matrix::combination(f, p.dim(), p.dim(), &us, &mats)
            })
            .collect();
        FdModule::new_unchecked(self.right.clone(), p.dim(), action)
    }

    /// Left `S`-action on `P`: `s · p = p (s ⊗ 1)`.
    pub fn left_actions(&self, p: &FdModule) -> Vec<Matrix> {
        let (ds, dr) = (self.left.dim(), self.right.dim());
        let ur = self.right.unit().row_elems(0);
        let f = p.field();
        (0..ds)
            .map(|i| {
                let mats: Vec<Matrix> = (0..dr).map(|j| p.action(i * dr + j).clone()).collect();
                Matrix::combination(f, p.dim(), p.dim(), &ur, &mats)
            })
            .collect()
    }

    pub fn bimodule(&self, p: &FdModule) -> Bimodule {
        Bimodule { left: self.left.clone(), module: self.restrict_right(p), left_actions: self.left_actions(p) }
    }
}

/// `N ⊗_S T` as a quotient of `N ⊗_k T`, with the projection.
#[derive(Clone, Debug)]
pub struct Tensor {
    pub module: FdModule,
    /// `N ⊗_k T → N ⊗_S T`
    pub projection: Matrix,
    /// unit rows lifting the quotient basis
    pub section: Matrix,
}

/// `N ⊗_S T` for a right `S`-module `N`.
pub fn tensor_over(n: &FdModule, b: &Bimodule) -> Result<Tensor> {
    if !same_algebra(n.algebra(), &b.left) {
        return Err(Error::AlgebraMismatch);
    }
    let f = n.field();
    let (dn, dt) = (n.dim(), b.module.dim());
    let big: Vec<Matrix> = b.module.actions().iter().map(|a| Matrix::identity(f, dn).kron(a)).collect();
    let free = FdModule::new_unchecked(b.right().clone(), dn * dt, big);
    let id_n = Matrix::identity(f, dn);
    let id_t = Matrix::identity(f, dt);
    let rels: Vec<Matrix> =
        (0..b.left.dim()).map(|i| n.action(i).kron(&id_t).sub(&id_n.kron(&b.left_actions[i]))).collect();
    let rel = Matrix::vstack(f, dn * dt, &rels.iter().collect::<Vec<_>>());
    let sub = Subspace::from_rows(&rel);
    let (module, proj) = free.quotient(sub.basis());
    let mut is_piv = vec![false; dn * dt];
    for &p in sub.pivots() {
        is_piv[p] = true;
    }
    let keep: Vec<usize> = (0..dn * dt).filter(|&c| !is_piv[c]).collect();
    let section = Matrix::identity(f, dn * dt).select_rows(&keep);
    Ok(Tensor { module, projection: proj.matrix().clone(), section })
}

/// `f ⊗ 1: N ⊗_S T → N' ⊗_S T`.
pub fn tensor_map(f: &Matrix, src: &Tensor, tgt: &Tensor, b: &Bimodule) -> Matrix {
    let id_t = Matrix::identity(f.field(), b.module.dim());
    src.section.mul(&f.kron(&id_t)).mul(&tgt.projection)
}

/// Termwise `C ⊗_S T` with differentials `d ⊗ 1`.
pub fn tensor_total_complex(c: &BoundedComplex, b: &Bimodule) -> Result<BoundedComplex> {
    let (lo, hi) = (c.low(), c.high());
    let tensors: Vec<Tensor> = (lo..=hi).map(|i| tensor_over(&c.term(i), b)).collect::<Result<_>>()?;
    let terms = tensors.iter().map(|t| t.module.clone()).collect();
    let diffs = (lo..hi)
        .map(|i| {
            let k = (i - lo) as usize;
            tensor_map(&c.diff_matrix(i), &tensors[k], &tensors[k + 1], b)
        })
        .collect();
    BoundedComplex::new_unchecked(b.right().clone(), lo, terms, diffs)
}

/// `P ⊗_S T = ⊕ e_{v_k} T` for a sum of indecomposable projectives.
#[derive(Clone, Debug)]
pub struct TensoredProjective {
    pub module: FdModule,
    /// per summand: basis of `e_v T` inside `T`
    pub blocks: Vec<Subspace>,
    pub offsets: Vec<usize>,
}

pub fn tensor_projective(p: &ProjectiveSum, b: &Bimodule) -> Result<TensoredProjective> {
    let f = b.module.field();
    let idem = b.left.primitive_idempotents()?;
    let mut blocks = Vec::with_capacity(p.len());
    let mut parts = Vec::with_capacity(p.len());
    let mut offsets = Vec::with_capacity(p.len());
    let mut off = 0;
    for &v in p.vertices() {
        let sub = Subspace::from_rows(&b.left_of(&idem[v]).row_space_basis());
        let (part, _) = b.module.submodule_of(&sub);
        offsets.push(off);
        off += part.dim();
        blocks.push(sub);
        parts.push(part);
    }
    let action: Vec<Matrix> = (0..b.right().dim())
        .map(|j| Matrix::block_diag(f, &parts.iter().map(|q| q.action(j)).collect::<Vec<_>>()))
        .collect();
    let module = FdModule::new_unchecked(b.right().clone(), off, action);
    Ok(TensoredProjective { module, blocks, offsets })
}

/// `d ⊗ 1` for `d: P → Q` between projective sums: the generator of summand
/// `k` maps to `Σ_l y_{kl}`, and `e_v T → e_w T` is `t ↦ y_{kl} · t`.
pub fn tensor_projective_map(
    d: &Matrix,
    p: &ProjectiveSum,
    gp: &TensoredProjective,
    q: &ProjectiveSum,
    gq: &TensoredProjective,
    b: &Bimodule,
) -> Matrix {
    let f = b.module.field();
    let mut out = Matrix::zeros(f, gp.module.dim(), gq.module.dim());
    for k in 0..p.len() {
        let img = p.generator(k).mul(d);
        let src = gp.blocks[k].basis();
        for l in 0..q.len() {
            let y = q.block_as_element(l, &img);
            if y.is_zero() {
                continue;
            }
            let blk = gq.blocks[l].coords(&src.mul(&b.left_of(&y)));
            out.set_block(gp.offsets[k], gq.offsets[l], &blk);
        }
    }
    out
}

/// `G` applied to the deleted resolution, in degrees `−k..0`.
pub fn tensor_resolution(r: &ProjResolution, b: &Bimodule) -> Result<BoundedComplex> {
    let g: Vec<TensoredProjective> = r.terms.iter().map(|p| tensor_projective(p, b)).collect::<Result<_>>()?;
    let k = r.terms.len() as i32 - 1;
    let terms: Vec<FdModule> = g.iter().rev().map(|x| x.module.clone()).collect();
    let diffs: Vec<Matrix> = (0..r.diffs.len())
        .rev()
        .map(|i| tensor_projective_map(&r.diffs[i], &r.terms[i + 1], &g[i + 1], &r.terms[i], &g[i], b))
        .collect();
    BoundedComplex::new_unchecked(b.right().clone(), -k.max(0), terms, diffs)
}

/// `Tor_i^S(N, T)` as a right `R`-module.
pub fn tor(n: &FdModule, b: &Bimodule, i: usize) -> Result<FdModule> {
    if !same_algebra(n.algebra(), &b.left) {
        return Err(Error::AlgebraMismatch);
    }
    let r = proj_resolution(n, i + 2)?;
    tor_from(&r, b, i)
}

pub(crate) fn tor_from(r: &ProjResolution, b: &Bimodule, i: usize) -> Result<FdModule> {
    if i >= r.terms.len() {
        if r.complete {
            return Ok(FdModule::zero(b.right()));
        }
        return Err(Error::Precondition(format!("resolution too short for Tor_{i}")));
    }
    Ok(tensor_resolution(r, b)?.homology(-(i as i32)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::repmod::{canonical_modules, fixtures::*, is_isomorphic, regular, sum_module};

    fn n3_tilting() -> FdModule {
        let a = n3();
        let c = canonical_modules(&a).unwrap();
        sum_module(&a, &[c.simples[0].clone(), c.projectives[0].clone(), c.projectives[1].clone()]).unwrap()
    }

    #[test]
    fn endomorphism_bimodule_is_valid() {
        let (b, _) = Bimodule::from_endomorphisms(&n3_tilting()).unwrap();
        b.validate().unwrap();
        let env = b.enveloping().unwrap();
        env.module.validate().unwrap();
        assert_eq!(env.lambda.dim(), b.left().dim() * b.right().dim());
        assert_eq!(env.restrict_right(&env.module), *b.module());
    }

    #[test]
    fn regular_tensor_is_the_bimodule() {
        let t = n3_tilting();
        let (b, _) = Bimodule::from_endomorphisms(&t).unwrap();
        let s = regular(b.left());
        let g = tensor_over(&s, &b).unwrap();
        assert!(is_isomorphic(&g.module, &t).unwrap().is_some());
    }

    #[test]
    fn projective_fast_path_agrees_with_quotient() {
        let t = n3_tilting();
        let (b, _) = Bimodule::from_endomorphisms(&t).unwrap();
        let s = b.left().clone();
        let nv = s.primitive_idempotents().unwrap().len();
        let verts: Vec<usize> = (0..nv).chain(0..1).collect();
        let p = ProjectiveSum::new(&s, &verts).unwrap();
        let fast = tensor_projective(&p, &b).unwrap();
        let slow = tensor_over(p.module(), &b).unwrap();
        assert!(is_isomorphic(&fast.module, &slow.module).unwrap().is_some());
        let cs = canonical_modules(&s).unwrap();
        for m in cs.simples.iter().chain(&cs.injectives) {
            let r = proj_resolution(m, 4).unwrap();
            let fast = tensor_resolution(&r, &b).unwrap();
            fast.validate().unwrap();
            let slow = tensor_total_complex(&r.complex(), &b).unwrap();
            slow.validate().unwrap();
            for d in fast.low()..=0 {
                assert_eq!(fast.homology(d).dim(), slow.homology(d).dim(), "degree {d}");
            }
            // Tor_0 is the plain tensor product
            let t0 = tensor_over(m, &b).unwrap().module;
            assert!(is_isomorphic(&tor(m, &b, 0).unwrap(), &t0).unwrap().is_some());
        }
    }
}
