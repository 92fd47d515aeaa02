//! The resolution of `_S T` obtained by applying `Hom_R(−, T)` to the
//! `add(T)`-coresolution of `R`.

use serde::{Deserialize, Serialize};

use crate::algebra::AlgebraRef;
use crate::error::Result;
use crate::exactla::{Matrix, Subspace};
use crate::homology::{AddCoresolution, BoundedComplex};
use crate::repmod::{hom_space, in_add, EndAlgebra, FdModule, HomSpace};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DaggerReport {
    pub length: usize,
    pub exact: bool,
    pub projective_terms: bool,
    /// `R → End(_S T)` is bijective
    pub double_end_ok: bool,
    pub end_dim: usize,
    pub term_dims: Vec<usize>,
    pub failures: Vec<String>,
}

/// `0 → Hom(T_k, T) → … → Hom(T_0, T) → _S T → 0` as right `S^op`-modules.
#[derive(Clone, Debug)]
pub struct DaggerResolution {
    /// `Hom(T_j, T)` in degree `−j`
    pub complex: BoundedComplex,
    /// the same with `_S T` appended in degree 1
    pub augmented: BoundedComplex,
    /// `_S T` as a right `S^op`-module
    pub left_module: FdModule,
    pub report: DaggerReport,
}

/// `Hom(X, T)` as a right `S^op`-module, `f · s = s ∘ f`.
fn hom_into_t(x: &FdModule, t: &FdModule, phis: &[Matrix], s_op: &AlgebraRef) -> Result<(FdModule, HomSpace)> {
    let h = hom_space(x, t)?;
    let f = t.field();
    let basis = h.matrices();
    let action: Vec<Matrix> = phis
        .iter()
        .map(|phi| {
            let rows: Vec<Matrix> = basis.iter().map(|b| h.coords(&b.mul(phi))).collect();
            Matrix::vstack(f, h.dim(), &rows.iter().collect::<Vec<_>>())
        })
        .collect();
    Ok((FdModule::new_unchecked(s_op.clone(), h.dim(), action), h))
}

pub fn apply_hom_to_coresolution(
    t: &FdModule,
    end: &EndAlgebra,
    s_op: &AlgebraRef,
    cores: &AddCoresolution,
    n: usize,
) -> Result<DaggerResolution> {
    let f = t.field();
    let r = t.algebra();
    let phis = end.left_actions();
    let k = cores.length();
    let mut mods = Vec::with_capacity(k + 1);
    let mut homs = Vec::with_capacity(k + 1);
    for x in &cores.terms {
        let (m, h) = hom_into_t(x, t, &phis, s_op)?;
        mods.push(m);
        homs.push(h);
    }
    // Hom(T_j, T) → Hom(T_{j−1}, T), F ↦ g_j F
    let back = |j: usize| -> Matrix {
        let g = cores.maps[j].matrix();
        let rows: Vec<Matrix> = homs[j].matrices().iter().map(|b| homs[j - 1].coords(&g.mul(b))).collect();
        Matrix::vstack(f, homs[j - 1].dim(), &rows.iter().collect::<Vec<_>>())
    };
    let terms: Vec<FdModule> = mods.iter().rev().cloned().collect();
    let diffs: Vec<Matrix> = (1..=k).rev().map(back).collect();
    let complex = BoundedComplex::new_unchecked(s_op.clone(), -(k as i32), terms.clone(), diffs.clone())?;

    // _S T and the augmentation F ↦ (1 ↦ 1·g_0·F)
    let left_module = FdModule::new_unchecked(s_op.clone(), t.dim(), phis.clone());
    let one_in_t0 = r.unit().mul(cores.maps[0].matrix());
    let aug_rows: Vec<Matrix> = homs[0].matrices().iter().map(|b| one_in_t0.mul(b)).collect();
    let aug = Matrix::vstack(f, t.dim(), &aug_rows.iter().collect::<Vec<_>>());
    let mut aterms = terms;
    aterms.push(left_module.clone());
    let mut adiffs = diffs;
    adiffs.push(aug);
    let augmented = BoundedComplex::new_unchecked(s_op.clone(), -(k as i32), aterms, adiffs)?;

    let mut failures = Vec::new();
    if let Err(e) = augmented.validate() {
        failures.push(format!("not a complex of modules: {e}"));
    }
    let mut exact = true;
    for d in augmented.low()..=augmented.high() {
        let h = augmented.homology(d).dim();
        if h != 0 {
            exact = false;
            failures.push(format!("homology of dimension {h} at spot {d}"));
        }
    }
    let reg = s_op.regular_module();
    let mut projective_terms = true;
    for (j, m) in mods.iter().enumerate() {
        if !in_add(m, &reg)? {
            projective_terms = false;
            failures.push(format!("Hom(T_{j}, T) is not projective"));
        }
    }
    if k > n {
        failures.push(format!("length {k} exceeds {n}"));
    }
    // R → End(_S T), r ↦ right multiplication by r
    let e = hom_space(&left_module, &left_module)?;
    let rights: Vec<Matrix> = (0..r.dim()).map(|j| t.action(j).flatten()).collect();
    let stacked = Matrix::vstack(f, t.dim() * t.dim(), &rights.iter().collect::<Vec<_>>());
    let injective = stacked.rank() == r.dim();
    let inside = Subspace::from_rows(e.flat_basis()).contains(&stacked);
    let double_end_ok = injective && inside && e.dim() == r.dim();
    if !double_end_ok {
        failures.push(format!("R → End(_S T) is not bijective (dim End = {}, dim R = {})", e.dim(), r.dim()));
    }
    let report = DaggerReport {
        length: k,
        exact,
        projective_terms,
        double_end_ok,
        end_dim: e.dim(),
        term_dims: mods.iter().map(|m| m.dim()).collect(),
        failures,
    };
    Ok(DaggerResolution { complex, augmented, left_module, report })
}

#[cfg(test)]
mod tests {
    use super::super::test_contexts::*;

    #[test]
    fn dagger_resolutions_of_fixtures() {
        let ctx = a2_ctx();
        let d = &ctx.dagger;
        assert_eq!(d.report.length, 1);
        assert!(d.report.exact);
        assert_eq!(d.left_module.dim(), 3);
        d.augmented.validate().unwrap();
        let ctx = n3_ctx();
        assert_eq!(ctx.dagger.report.length, 2);
        assert!(ctx.dagger.report.exact && ctx.dagger.report.double_end_ok);
        assert_eq!(ctx.dagger.report.end_dim, 5);
    }
}
