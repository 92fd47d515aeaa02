//! `H = Hom_R(T, −)`, `G = − ⊗_S T`, and the counit and unit.

use crate::error::{Error, Result};
use crate::exactla::Matrix;
use crate::homology::{tensor_map, tensor_over, Tensor};
use crate::repmod::{hom_space, same_algebra, FdModule, HomSpace, ModuleMap};

use super::TiltingContext;

/// `H(M)` with the basis of `Hom(T, M)` it is built on.
#[derive(Clone, Debug)]
pub struct HValue {
    pub module: FdModule,
    pub hom: HomSpace,
}

impl TiltingContext {
    /// `Hom_R(T, M)` as a right `S`-module, `f · s = f ∘ s`.
    pub fn functor_h(&self, m: &FdModule) -> Result<HValue> {
        if !same_algebra(m.algebra(), &self.algebra) {
            return Err(Error::AlgebraMismatch);
        }
        let f = m.field();
        let hom = hom_space(&self.t, m)?;
        let basis = hom.matrices();
        let action: Vec<Matrix> = self
            .bimodule
            .left_actions()
            .iter()
            .map(|phi| {
                let rows: Vec<Matrix> = basis.iter().map(|b| hom.coords(&phi.mul(b))).collect();
                Matrix::vstack(f, hom.dim(), &rows.iter().collect::<Vec<_>>())
            })
            .collect();
        Ok(HValue { module: FdModule::new_unchecked(self.s.clone(), hom.dim(), action), hom })
    }

    /// `H(g) = g ∘ −`.
    pub fn functor_h_map(&self, g: &ModuleMap) -> Result<ModuleMap> {
        let hs = self.functor_h(g.source())?;
        let ht = self.functor_h(g.target())?;
        let f = g.source().field();
        let rows: Vec<Matrix> = hs.hom.matrices().iter().map(|b| ht.hom.coords(&b.mul(g.matrix()))).collect();
        let m = Matrix::vstack(f, ht.module.dim(), &rows.iter().collect::<Vec<_>>());
        Ok(ModuleMap::new_unchecked(hs.module, ht.module, m))
    }

    pub fn functor_g(&self, n: &FdModule) -> Result<Tensor> {
        tensor_over(n, &self.bimodule)
    }

    /// `G(f) = f ⊗ 1`.
    pub fn functor_g_map(&self, f: &ModuleMap) -> Result<ModuleMap> {
        let gs = self.functor_g(f.source())?;
        let gt = self.functor_g(f.target())?;
        let m = tensor_map(f.matrix(), &gs, &gt, &self.bimodule);
        Ok(ModuleMap::new_unchecked(gs.module, gt.module, m))
    }

    /// Evaluation `G(H(M)) → M`, `f ⊗ t ↦ f(t)`.
    pub fn counit(&self, m: &FdModule) -> Result<ModuleMap> {
        let h = self.functor_h(m)?;
        let g = self.functor_g(&h.module)?;
        let f = m.field();
        // on N ⊗_k T the basis vector (b, t) goes to row t of F_b
        let mats = h.hom.matrices();
        let free = Matrix::vstack(f, m.dim(), &mats.iter().collect::<Vec<_>>());
        Ok(ModuleMap::new_unchecked(g.module, m.clone(), g.section.mul(&free)))
    }

    /// Coevaluation `N → H(G(N))`, `x ↦ (t ↦ x ⊗ t)`.
    pub fn unit(&self, n: &FdModule) -> Result<ModuleMap> {
        if !same_algebra(n.algebra(), &self.s) {
            return Err(Error::AlgebraMismatch);
        }
        let g = self.functor_g(n)?;
        let hg = self.functor_h(&g.module)?;
        let f = n.field();
        let dt = self.t.dim();
        let rows: Vec<Matrix> = (0..n.dim())
            .map(|x| hg.hom.coords(&g.projection.row_range(x * dt, (x + 1) * dt)))
            .collect();
        let m = Matrix::vstack(f, hg.module.dim(), &rows.iter().collect::<Vec<_>>());
        Ok(ModuleMap::new_unchecked(n.clone(), hg.module, m))
    }
}

#[cfg(test)]
mod tests {
    use super::super::test_contexts::*;
    use crate::repmod::{canonical_modules, hom_space, is_isomorphic, regular, FdModule, ModuleMap};

    #[test]
    fn h_and_g_on_basic_modules() {
        let ctx = a2_ctx();
        let c = canonical_modules(&ctx.algebra).unwrap();
        let ht = ctx.functor_h(&ctx.t).unwrap();
        ht.module.validate().unwrap();
        assert!(is_isomorphic(&ht.module, &regular(&ctx.s)).unwrap().is_some());
        assert_eq!(ctx.functor_h(&c.simples[1]).unwrap().module.dim(), 0);
        assert_eq!(ctx.functor_h(&FdModule::zero(&ctx.algebra)).unwrap().module.dim(), 0);
        let gs = ctx.functor_g(&regular(&ctx.s)).unwrap();
        assert!(is_isomorphic(&gs.module, &ctx.t).unwrap().is_some());
        assert_eq!(ctx.functor_g(&FdModule::zero(&ctx.s)).unwrap().module.dim(), 0);
        let ghp = ctx.functor_g(&ctx.functor_h(&c.projectives[0]).unwrap().module).unwrap();
        assert!(is_isomorphic(&ghp.module, &c.projectives[0]).unwrap().is_some());
    }

    #[test]
    fn counit_and_unit_are_module_maps_with_expected_behaviour() {
        for ctx in [a2_ctx(), n3_ctx()] {
            let c = canonical_modules(&ctx.algebra).unwrap();
            let e = ctx.counit(&ctx.t).unwrap();
            e.validate().unwrap();
            assert!(e.is_isomorphism());
            for m in c.injectives.iter().chain(&c.simples).chain(&c.projectives) {
                ctx.counit(m).unwrap().validate().unwrap();
            }
            let u = ctx.unit(&regular(&ctx.s)).unwrap();
            u.validate().unwrap();
            assert!(u.is_isomorphism());
            let cs = canonical_modules(&ctx.s).unwrap();
            for n in cs.simples.iter().chain(&cs.injectives) {
                ctx.unit(n).unwrap().validate().unwrap();
            }
        }
        let ctx = a2_ctx();
        let c = canonical_modules(&ctx.algebra).unwrap();
        let e = ctx.counit(&c.simples[1]).unwrap();
        assert_eq!(e.source().dim(), 0);
        assert!(!e.is_injective() || e.target().dim() == 0 || e.source().dim() == 0);
    }

    #[test]
    fn functoriality_naturality_and_triangles() {
        let ctx = n3_ctx();
        let c = canonical_modules(&ctx.algebra).unwrap();
        let mods: Vec<FdModule> = c.projectives.iter().chain(&c.injectives).chain(&c.simples).cloned().collect();
        for x in &mods {
            let id = ModuleMap::identity(x);
            assert!(ctx.functor_h_map(&id).unwrap().matrix().is_identity());
            for y in &mods {
                for g in hom_space(x, y).unwrap().maps() {
                    // naturality of the counit: G H(g) then ε_Y = ε_X then g
                    let ghg = ctx.functor_g_map(&ctx.functor_h_map(&g).unwrap()).unwrap();
                    let lhs = ghg.then(&ctx.counit(y).unwrap());
                    let rhs = ctx.counit(x).unwrap().then(&g);
                    assert_eq!(lhs.matrix(), rhs.matrix());
                    for z in &mods {
                        for h in hom_space(y, z).unwrap().maps() {
                            let comp = ctx.functor_h_map(&g.then(&h)).unwrap();
                            let split = ctx.functor_h_map(&g).unwrap().then(&ctx.functor_h_map(&h).unwrap());
                            assert_eq!(comp.matrix(), split.matrix());
                        }
                    }
                }
            }
            // H(M) → HGH(M) → H(M) is the identity
            let hm = ctx.functor_h(x).unwrap().module;
            let tri = ctx.unit(&hm).unwrap().then(&ctx.functor_h_map(&ctx.counit(x).unwrap()).unwrap());
            assert!(tri.matrix().is_identity());
        }
        let cs = canonical_modules(&ctx.s).unwrap();
        for n in cs.simples.iter().chain(&cs.projectives).chain(&cs.injectives) {
            // G(N) → GHG(N) → G(N) is the identity
            let gn = ctx.functor_g(n).unwrap().module;
            let tri = ctx.functor_g_map(&ctx.unit(n).unwrap()).unwrap().then(&ctx.counit(&gn).unwrap());
            assert!(tri.matrix().is_identity());
        }
    }
}
