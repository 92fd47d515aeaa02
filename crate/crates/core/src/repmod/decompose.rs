//! Krull–Schmidt decomposition and isomorphism tests.

use crate::algebra::primitive_refinement;
use crate::error::{Error, Result};
use crate::exactla::{Matrix, Subspace};

use super::{hom_space, same_algebra, FdModule, ModuleMap};

/// An indecomposable summand `X` of `M` with `ι: X → M`, `π: M → X`,
/// `ι·π` the idempotent cutting out `X` and `π` after `ι` the identity.
#[derive(Clone, Debug)]
pub struct Summand {
    pub module: FdModule,
    pub inclusion: ModuleMap,
    pub projection: ModuleMap,
}

#[derive(Clone, Debug)]
pub struct Decomposition {
    pub summands: Vec<Summand>,
    /// indices into `summands`, grouped by isomorphism class
    pub classes: Vec<Vec<usize>>,
}

impl Decomposition {
    /// One representative per class with its multiplicity.
    pub fn multiplicities(&self) -> Vec<(FdModule, usize)> {
        self.classes.iter().map(|c| (self.summands[c[0]].module.clone(), c.len())).collect()
    }
}

pub fn decompose(m: &FdModule) -> Result<Vec<(FdModule, usize)>> {
    Ok(decompose_with_maps(m)?.multiplicities())
}

/// Splits `M` along a complete set of primitive idempotents of `End(M)`.
pub fn decompose_with_maps(m: &FdModule) -> Result<Decomposition> {
    let f = m.field();
    let d = m.dim();
    if d == 0 {
        return Ok(Decomposition { summands: vec![], classes: vec![] });
    }
    let end = hom_space(m, m)?.matrices();
    let idem = primitive_refinement(f, d, &end, vec![Matrix::identity(f, d)])?;
    let mut summands = Vec::with_capacity(idem.len());
    for e in &idem {
        let sub = Subspace::from_rows(e);
        let (x, inc) = m.submodule_of(&sub);
        let proj = ModuleMap::new_unchecked(m.clone(), x.clone(), sub.coords(e));
        summands.push(Summand { module: x, inclusion: inc, projection: proj });
    }
    let mut classes: Vec<Vec<usize>> = Vec::new();
    'outer: for i in 0..summands.len() {
        for class in classes.iter_mut() {
            if indecomposables_isomorphic(&summands[class[0]].module, &summands[i].module)?.is_some() {
                class.push(i);
                continue 'outer;
            }
        }
        classes.push(vec![i]);
    }
    Ok(Decomposition { summands, classes })
}

/// For indecomposable `X`, `Y`: an isomorphism `X → Y` if one exists. Since
/// `End(X)` is local, `X ≅ Y` iff some basis pair `f: X → Y`, `g: Y → X`
/// has `g ∘ f` invertible.
pub(crate) fn indecomposables_isomorphic(x: &FdModule, y: &FdModule) -> Result<Option<Matrix>> {
    if x.dim() != y.dim() {
        return Ok(None);
    }
    if x.dim() == 0 {
        return Ok(Some(Matrix::zeros(x.field(), 0, 0)));
    }
    if dimension_vector(x)? != dimension_vector(y)? {
        return Ok(None);
    }
    let fs = hom_space(x, y)?.matrices();
    if fs.is_empty() {
        return Ok(None);
    }
    let gs = hom_space(y, x)?.matrices();
    for fm in &fs {
        if fm.rank() < x.dim() {
            // a non-injective f never completes to an invertible composite
            continue;
        }
        return Ok(Some(fm.clone()));
    }
    for fm in &fs {
        for gm in &gs {
            if fm.mul(gm).rank() == x.dim() {
                return Ok(Some(fm.clone()));
            }
        }
    }
    Ok(None)
}

/// `dim M e_v` for each primitive idempotent.
pub(crate) fn dimension_vector(m: &FdModule) -> Result<Vec<usize>> {
    let idem = m.algebra().primitive_idempotents()?;
    Ok(idem.iter().map(|e| m.action_of(e).rank()).collect())
}

/// An explicit isomorphism `M → N`, or `None` when the modules differ.
pub fn is_isomorphic(m: &FdModule, n: &FdModule) -> Result<Option<ModuleMap>> {
    if !same_algebra(m.algebra(), n.algebra()) {
        return Err(Error::AlgebraMismatch);
    }
    if m.dim() != n.dim() {
        return Ok(None);
    }
    if m == n {
        return Ok(Some(ModuleMap::identity(m)));
    }
    if m.dim() == 0 {
        return Ok(Some(ModuleMap::zero(m, n)));
    }
    if dimension_vector(m)? != dimension_vector(n)? {
        return Ok(None);
    }
    let dm = decompose_with_maps(m)?;
    let dn = decompose_with_maps(n)?;
    if dm.summands.len() != dn.summands.len() {
        return Ok(None);
    }
    let f = m.field();
    let mut used = vec![false; dn.summands.len()];
    let mut total = Matrix::zeros(f, m.dim(), n.dim());
    for x in &dm.summands {
        let mut found = false;
        for (j, y) in dn.summands.iter().enumerate() {
            if used[j] {
                continue;
            }
            if let Some(iso) = indecomposables_isomorphic(&x.module, &y.module)? {
                used[j] = true;
                found = true;
                total = total.add(&x.projection.matrix().mul(&iso).mul(y.inclusion.matrix()));
                break;
            }
        }
        if !found {
            return Ok(None);
        }
    }
    let cert = ModuleMap::new_unchecked(m.clone(), n.clone(), total);
    debug_assert!(cert.is_isomorphism());
    Ok(Some(cert))
}

/// Every indecomposable summand of `m` is isomorphic to a summand of `t`.
pub fn in_add(m: &FdModule, t: &FdModule) -> Result<bool> {
    if m.dim() == 0 {
        return Ok(true);
    }
    let dt = decompose_with_maps(t)?;
    in_add_of(m, &dt)
}

pub(crate) fn in_add_of(m: &FdModule, dt: &Decomposition) -> Result<bool> {
    if m.dim() == 0 {
        return Ok(true);
    }
    let reps: Vec<&FdModule> = dt.classes.iter().map(|c| &dt.summands[c[0]].module).collect();
    for (x, _) in decompose(m)? {
        let mut ok = false;
        for r in &reps {
            if indecomposables_isomorphic(&x, r)?.is_some() {
                ok = true;
                break;
            }
        }
        if !ok {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::super::fixtures::*;
    use super::super::*;
    use super::*;

    #[test]
    fn indecomposable_is_its_own_decomposition() {
        let a = a2();
        let p1 = projective(&a, 0).unwrap();
        let d = decompose(&p1).unwrap();
        assert_eq!(d.len(), 1);
        assert_eq!(d[0].1, 1);
        assert!(is_isomorphic(&d[0].0, &p1).unwrap().is_some());
    }

    #[test]
    fn doubled_module_has_multiplicity_two() {
        let a = n3();
        let p2 = projective(&a, 1).unwrap();
        let mm = sum_module(&a, &[p2.clone(), p2.clone()]).unwrap();
        let d = decompose(&mm).unwrap();
        assert_eq!(d.len(), 1);
        assert_eq!(d[0].1, 2);
    }

    #[test]
    fn regular_module_of_a2() {
        let a = a2();
        let d = decompose_with_maps(&regular(&a)).unwrap();
        assert_eq!(d.classes.len(), 2);
        let p1 = projective(&a, 0).unwrap();
        let p2 = projective(&a, 1).unwrap();
        let mut found = [false, false];
        for (x, mult) in d.multiplicities() {
            assert_eq!(mult, 1);
            for (k, p) in [&p1, &p2].iter().enumerate() {
                if is_isomorphic(&x, p).unwrap().is_some() {
                    found[k] = true;
                }
            }
        }
        assert_eq!(found, [true, true]);
        // ι then π is the identity of each summand
        for s in &d.summands {
            assert!(s.inclusion.then(&s.projection).matrix().is_identity());
            s.inclusion.validate().unwrap();
            s.projection.validate().unwrap();
        }
    }

    #[test]
    fn decompose_is_idempotent_and_iso_is_an_equivalence() {
        let a = n3();
        let c = canonical_modules(&a).unwrap();
        let mut all: Vec<FdModule> = Vec::new();
        all.extend(c.projectives.clone());
        all.extend(c.injectives.clone());
        all.extend(c.simples.clone());
        let t = sum_module(&a, &all).unwrap();
        for (x, _) in decompose(&t).unwrap() {
            let again = decompose(&x).unwrap();
            assert_eq!(again.len(), 1);
            assert_eq!(again[0].1, 1);
        }
        let iso = |x: &FdModule, y: &FdModule| is_isomorphic(x, y).unwrap().is_some();
        for x in &all {
            assert!(iso(x, x));
            for y in &all {
                assert_eq!(iso(x, y), iso(y, x));
                for z in &all {
                    if iso(x, y) && iso(y, z) {
                        assert!(iso(x, z));
                    }
                }
            }
        }
    }

    #[test]
    fn certificates_are_isomorphisms() {
        let a = n3();
        let c = canonical_modules(&a).unwrap();
        let m = sum_module(&a, &[c.projectives[0].clone(), c.simples[2].clone(), c.projectives[1].clone()]).unwrap();
        let n = sum_module(&a, &[c.projectives[1].clone(), c.projectives[0].clone(), c.injectives[2].clone()]).unwrap();
        // I3 = P2 here, so m and n differ: S3 vs P2
        assert!(is_isomorphic(&m, &n).unwrap().is_none());
        let n = sum_module(&a, &[c.simples[2].clone(), c.projectives[1].clone(), c.projectives[0].clone()]).unwrap();
        let cert = is_isomorphic(&m, &n).unwrap().unwrap();
        cert.validate().unwrap();
        assert!(cert.is_isomorphism());
    }

    #[test]
    fn add_membership() {
        let a = a2();
        let p1 = projective(&a, 0).unwrap();
        let p2 = projective(&a, 1).unwrap();
        let s1 = simple(&a, 0).unwrap();
        let t = sum_module(&a, &[p1.clone(), s1.clone()]).unwrap();
        assert!(in_add(&t, &t).unwrap());
        assert!(in_add(&FdModule::zero(&a), &t).unwrap());
        assert!(!in_add(&p2, &t).unwrap());
        let tt = sum_module(&a, &[s1.clone(), p1.clone(), s1]).unwrap();
        assert!(in_add(&tt, &t).unwrap());
    }
}
