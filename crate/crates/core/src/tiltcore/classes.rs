//! `T^⊥∞`, the classes `KE_i(T)` and `KT_i(T)`, the checks of the functor
//! lemma, the Miyashita roundtrips and equivalence of tilting modules.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::homology::{hom_total_bicomplex, proj_resolution, tor_from, BoundedComplex};
use crate::repmod::{canonical_modules, is_isomorphic, same_algebra, FdModule};

use super::TiltingContext;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum ClassKind {
    KE,
    KT,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassReport {
    pub kind: ClassKind,
    pub module_dim: usize,
    /// `i` when only the `i`-th witness may be nonzero; `0` for the zero module
    pub index: Option<usize>,
    /// `dim Ext^j(T, M)` or `dim Tor_j(N, T)` for `0 ≤ j ≤ n`
    pub witness_dims: Vec<usize>,
    pub zero_module: bool,
}

fn class_of(kind: ClassKind, module_dim: usize, witness_dims: Vec<usize>) -> ClassReport {
    let nonzero: Vec<usize> = witness_dims.iter().enumerate().filter(|(_, &d)| d != 0).map(|(j, _)| j).collect();
    let zero_module = module_dim == 0;
    let index = match nonzero.as_slice() {
        [] if zero_module => Some(0),
        [i] => Some(*i),
        _ => None,
    };
    ClassReport { kind, module_dim, index, witness_dims, zero_module }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MiyashitaReport {
    pub kind: ClassKind,
    pub index: usize,
    pub input_dim: usize,
    /// `dim Ext^i(T, M)` (or `dim Tor_i(N, T)` for the dual direction)
    pub image_dim: usize,
    /// class of the image on the other side
    pub image_class: ClassReport,
    pub roundtrip_dim: usize,
    pub isomorphic: bool,
    pub verified: bool,
    pub failures: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Lemma13Report {
    pub tor_h_dims: Vec<usize>,
    pub counit_iso: bool,
    pub ext_g_dims: Vec<usize>,
    pub unit_iso: bool,
    pub verified: bool,
    pub failures: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EquivalenceReport {
    pub other_in_perp: bool,
    pub self_in_other_perp: bool,
    pub tested: usize,
    /// indices into the combined test list where membership disagrees
    pub disagreements: Vec<usize>,
    pub equivalent: bool,
    pub failures: Vec<String>,
}

impl TiltingContext {
    fn check_r(&self, m: &FdModule) -> Result<()> {
        if same_algebra(m.algebra(), &self.algebra) {
            Ok(())
        } else {
            Err(Error::AlgebraMismatch)
        }
    }

    fn check_s(&self, m: &FdModule) -> Result<()> {
        if same_algebra(m.algebra(), &self.s) {
            Ok(())
        } else {
            Err(Error::AlgebraMismatch)
        }
    }

    /// `dim Ext^i(T, M)` for `0 ≤ i ≤ n`.
    pub fn ext_dims(&self, m: &FdModule) -> Result<Vec<usize>> {
        self.check_r(m)?;
        (0..=self.n).map(|i| self.proj_res.ext(m, i).map(|e| e.dim)).collect()
    }

    /// `dim Tor_i^S(N, T)` for `0 ≤ i ≤ n`.
    pub fn tor_dims(&self, nmod: &FdModule) -> Result<Vec<usize>> {
        self.check_s(nmod)?;
        let r = proj_resolution(nmod, self.n + 2)?;
        (0..=self.n).map(|i| tor_from(&r, &self.bimodule, i).map(|t| t.dim())).collect()
    }

    /// `Ext^i_R(T, M)` as a right `S`-module, `S` acting on the resolution of `T`.
    pub fn ext_module(&self, m: &FdModule, i: usize) -> Result<FdModule> {
        self.check_r(m)?;
        let c = hom_total_bicomplex(&self.bimodule_res, &BoundedComplex::stalk(m, 0))?;
        Ok(c.homology(i as i32))
    }

    /// `Tor_i^S(N, T)` as a right `R`-module.
    pub fn tor_module(&self, nmod: &FdModule, i: usize) -> Result<FdModule> {
        self.check_s(nmod)?;
        let r = proj_resolution(nmod, i + 2)?;
        tor_from(&r, &self.bimodule, i)
    }

    /// `Ext^i(T, M) = 0` for `1 ≤ i ≤ n`.
    pub fn perp_infty(&self, m: &FdModule) -> Result<bool> {
        Ok(self.ext_dims(m)?.iter().skip(1).all(|&d| d == 0))
    }

    pub fn ke_index(&self, m: &FdModule) -> Result<ClassReport> {
        Ok(class_of(ClassKind::KE, m.dim(), self.ext_dims(m)?))
    }

    pub fn kt_index(&self, nmod: &FdModule) -> Result<ClassReport> {
        Ok(class_of(ClassKind::KT, nmod.dim(), self.tor_dims(nmod)?))
    }

    /// `M ∈ KE_i ↦ Ext^i(T, M) ∈ KT_i ↦ Tor_i(Ext^i(T, M), T) ≅ M`.
    pub fn miyashita_roundtrip(&self, m: &FdModule) -> Result<MiyashitaReport> {
        let class = self.ke_index(m)?;
        let Some(i) = class.index else {
            return Err(Error::Precondition(format!(
                "module lies in no KE_i: Ext dimensions {:?}",
                class.witness_dims
            )));
        };
        let e = self.ext_module(m, i)?;
        let image_class = self.kt_index(&e)?;
        let back = self.tor_module(&e, i)?;
        let isomorphic = is_isomorphic(&back, m)?.is_some();
        let mut failures = Vec::new();
        if image_class.index != Some(i) {
            failures.push(format!("Ext^{i}(T, M) has Tor dimensions {:?}, not in KT_{i}", image_class.witness_dims));
        }
        if !isomorphic {
            failures.push(format!(
                "Tor_{i}(Ext^{i}(T, M), T) has dimension {} and is not isomorphic to M (dimension {})",
                back.dim(),
                m.dim()
            ));
        }
        Ok(MiyashitaReport {
            kind: ClassKind::KE,
            index: i,
            input_dim: m.dim(),
            image_dim: e.dim(),
            image_class,
            roundtrip_dim: back.dim(),
            isomorphic,
            verified: failures.is_empty(),
            failures,
        })
    }

    /// `N ∈ KT_i ↦ Tor_i(N, T) ∈ KE_i ↦ Ext^i(T, Tor_i(N, T)) ≅ N`.
    pub fn miyashita_roundtrip_dual(&self, nmod: &FdModule) -> Result<MiyashitaReport> {
        let class = self.kt_index(nmod)?;
        let Some(i) = class.index else {
            return Err(Error::Precondition(format!(
                "module lies in no KT_i: Tor dimensions {:?}",
                class.witness_dims
            )));
        };
        let t = self.tor_module(nmod, i)?;
        let image_class = self.ke_index(&t)?;
        let back = self.ext_module(&t, i)?;
        let isomorphic = is_isomorphic(&back, nmod)?.is_some();
        let mut failures = Vec::new();
        if image_class.index != Some(i) {
            failures.push(format!("Tor_{i}(N, T) has Ext dimensions {:?}, not in KE_{i}", image_class.witness_dims));
        }
        if !isomorphic {
            failures.push(format!(
                "Ext^{i}(T, Tor_{i}(N, T)) has dimension {} and is not isomorphic to N (dimension {})",
                back.dim(),
                nmod.dim()
            ));
        }
        Ok(MiyashitaReport {
            kind: ClassKind::KT,
            index: i,
            input_dim: nmod.dim(),
            image_dim: t.dim(),
            image_class,
            roundtrip_dim: back.dim(),
            isomorphic,
            verified: failures.is_empty(),
            failures,
        })
    }

    /// For `M ∈ T^⊥∞` and `P` projective over `S`: `Tor_i(H(M), T) = 0`,
    /// `G H(M) ≅ M` via the counit, `Ext^i(T, G(P)) = 0`, `P ≅ H G(P)` via the unit.
    pub fn lemma13_check(&self, m: &FdModule, p: &FdModule) -> Result<Lemma13Report> {
        self.check_r(m)?;
        self.check_s(p)?;
        if !self.perp_infty(m)? {
            return Err(Error::Precondition("M is not in T^⊥∞".into()));
        }
        if !crate::repmod::in_add(p, &self.s.regular_module())? {
            return Err(Error::Precondition("P is not a projective S-module".into()));
        }
        let mut failures = Vec::new();
        let h = self.functor_h(m)?;
        let tor_h_dims: Vec<usize> = self.tor_dims(&h.module)?[1..].to_vec();
        for (k, d) in tor_h_dims.iter().enumerate() {
            if *d != 0 {
                failures.push(format!("(1) Tor_{}(H(M), T) has dimension {d}", k + 1));
            }
        }
        let counit_iso = self.counit(m)?.is_isomorphism();
        if !counit_iso {
            failures.push("(2) the counit G H(M) → M is not an isomorphism".into());
        }
        let g = self.functor_g(p)?;
        let ext_g_dims: Vec<usize> = self.ext_dims(&g.module)?[1..].to_vec();
        for (k, d) in ext_g_dims.iter().enumerate() {
            if *d != 0 {
                failures.push(format!("(3) Ext^{}(T, G(P)) has dimension {d}", k + 1));
            }
        }
        let unit_iso = self.unit(p)?.is_isomorphism();
        if !unit_iso {
            failures.push("(4) the unit P → H G(P) is not an isomorphism".into());
        }
        Ok(Lemma13Report { tor_h_dims, counit_iso, ext_g_dims, unit_iso, verified: failures.is_empty(), failures })
    }
}

/// `T` and `T'` are equivalent when `T^⊥∞ = T'^⊥∞`; checked on both
/// modules and on the test list together with the simples, projectives and
/// injectives.
pub fn equivalence_check(ctx: &TiltingContext, other: &TiltingContext, testset: &[FdModule]) -> Result<EquivalenceReport> {
    if !same_algebra(&ctx.algebra, &other.algebra) {
        return Err(Error::AlgebraMismatch);
    }
    let c = canonical_modules(&ctx.algebra)?;
    let mut mods: Vec<FdModule> = testset.to_vec();
    mods.extend(c.simples.iter().chain(&c.projectives).chain(&c.injectives).cloned());
    let mut failures = Vec::new();
    let other_in_perp = ctx.perp_infty(&other.t)?;
    if !other_in_perp {
        failures.push("T' is not in T^⊥∞".to_string());
    }
    let self_in_other_perp = other.perp_infty(&ctx.t)?;
    if !self_in_other_perp {
        failures.push("T is not in T'^⊥∞".to_string());
    }
    let mut disagreements = Vec::new();
    for (k, m) in mods.iter().enumerate() {
        let a = ctx.perp_infty(m)?;
        let b = other.perp_infty(m)?;
        if a != b {
            disagreements.push(k);
            failures.push(format!("test module {k} (dimension {}): in T^⊥∞ = {a}, in T'^⊥∞ = {b}", m.dim()));
        }
    }
    Ok(EquivalenceReport {
        other_in_perp,
        self_in_other_perp,
        tested: mods.len(),
        disagreements,
        equivalent: failures.is_empty(),
        failures,
    })
}

#[cfg(test)]
mod tests {
    use super::super::test_contexts::*;
    use super::*;
    use crate::repmod::{canonical_modules, regular, sum_module};

    #[test]
    fn perp_and_classes_on_fixtures() {
        let ctx = a2_ctx();
        let c = canonical_modules(&ctx.algebra).unwrap();
        assert!(ctx.perp_infty(&ctx.t).unwrap());
        for i in &c.injectives {
            assert!(ctx.perp_infty(i).unwrap());
        }
        assert!(!ctx.perp_infty(&c.simples[1]).unwrap());
        assert_eq!(ctx.ke_index(&ctx.t).unwrap().index, Some(0));
        let r = ctx.ke_index(&c.simples[1]).unwrap();
        assert_eq!(r.index, Some(1));
        assert_eq!(r.witness_dims, vec![0, 1]);
        let z = ctx.ke_index(&FdModule::zero(&ctx.algebra)).unwrap();
        assert!(z.zero_module && z.index == Some(0));

        let ctx = n3_ctx();
        let c = canonical_modules(&ctx.algebra).unwrap();
        let r = ctx.ke_index(&c.simples[2]).unwrap();
        assert_eq!(r.index, Some(2));
        assert_eq!(r.witness_dims[2], 1);
        assert_eq!(ctx.kt_index(&regular(&ctx.s)).unwrap().index, Some(0));
    }

    #[test]
    fn ext_module_matches_ext_dims() {
        for ctx in [a2_ctx(), n3_ctx()] {
            let c = canonical_modules(&ctx.algebra).unwrap();
            for m in c.simples.iter().chain(&c.projectives).chain(&c.injectives) {
                let dims = ctx.ext_dims(m).unwrap();
                for (i, d) in dims.iter().enumerate() {
                    let e = ctx.ext_module(m, i).unwrap();
                    e.validate().unwrap();
                    assert_eq!(e.dim(), *d);
                }
            }
        }
    }

    #[test]
    fn class_index_is_invariant_under_isomorphism() {
        let ctx = n3_ctx();
        let c = canonical_modules(&ctx.algebra).unwrap();
        for m in c.simples.iter().chain(&c.injectives) {
            // conjugate by a reversing permutation
            let d = m.dim();
            let f = m.field();
            let mut p = crate::exactla::Matrix::zeros(f, d, d);
            for k in 0..d {
                p.set(k, d - 1 - k, f.one());
            }
            let (m2, _) = m.transport(&p).unwrap();
            assert_eq!(ctx.ke_index(m).unwrap(), ctx.ke_index(&m2).unwrap());
        }
    }

    #[test]
    fn miyashita_roundtrips() {
        let ctx = a2_ctx();
        let c = canonical_modules(&ctx.algebra).unwrap();
        let r = ctx.miyashita_roundtrip(&c.simples[1]).unwrap();
        assert!(r.verified, "{:?}", r.failures);
        assert_eq!((r.index, r.image_dim), (1, 1));
        let r = ctx.miyashita_roundtrip(&ctx.t).unwrap();
        assert!(r.verified && r.index == 0 && r.image_dim == ctx.s.dim());

        let ctx = n3_ctx();
        let c = canonical_modules(&ctx.algebra).unwrap();
        let r = ctx.miyashita_roundtrip(&c.simples[2]).unwrap();
        assert!(r.verified, "{:?}", r.failures);
        assert_eq!((r.index, r.image_dim), (2, 1));
        let cs = canonical_modules(&ctx.s).unwrap();
        for nmod in cs.simples.iter().chain(&cs.projectives).chain(&cs.injectives) {
            if ctx.kt_index(nmod).unwrap().index.is_some() {
                let r = ctx.miyashita_roundtrip_dual(nmod).unwrap();
                assert!(r.verified, "{:?}", r.failures);
            }
        }
    }

    #[test]
    fn lemma13_on_fixtures() {
        for ctx in [a2_ctx(), n3_ctx()] {
            let c = canonical_modules(&ctx.algebra).unwrap();
            let cs = canonical_modules(&ctx.s).unwrap();
            let ps: Vec<FdModule> = cs.projectives.iter().cloned().chain([regular(&ctx.s)]).collect();
            let ms: Vec<FdModule> = c.injectives.iter().cloned().chain([ctx.t.clone()]).collect();
            for m in &ms {
                for p in &ps {
                    let r = ctx.lemma13_check(m, p).unwrap();
                    assert!(r.verified, "{:?}", r.failures);
                }
            }
        }
        let ctx = a2_ctx();
        let c = canonical_modules(&ctx.algebra).unwrap();
        assert!(ctx.lemma13_check(&c.simples[1], &regular(&ctx.s)).is_err());
    }

    #[test]
    fn equivalence() {
        let ctx = a2_ctx();
        let r = equivalence_check(&ctx, &ctx, &[]).unwrap();
        assert!(r.equivalent);
        let tt = sum_module(&ctx.algebra, &[ctx.t.clone(), ctx.t.clone()]).unwrap();
        let ctx2 = TiltingContext::new(&tt, 1).unwrap();
        assert!(equivalence_check(&ctx, &ctx2, &[]).unwrap().equivalent);
        let reg = TiltingContext::new(&regular(&ctx.algebra), 1).unwrap();
        let r = equivalence_check(&ctx, &reg, &[]).unwrap();
        assert!(!r.equivalent);
        assert!(!r.disagreements.is_empty());
    }
}
