//! Left `add(T)`-approximations and `add(T)`-coresolutions.

use crate::error::{Error, Result};
use crate::exactla::Matrix;
use crate::repmod::{decompose_with_maps, end_algebra, hom_space, in_add_of, sum_module, Decomposition, FdModule, ModuleMap};

use super::complex::BoundedComplex;

/// A map `M → X` with `X ∈ add(T)` through which every map to `add(T)` factors.
#[derive(Clone, Debug)]
pub struct Approximation {
    pub target: FdModule,
    pub map: ModuleMap,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ApproximationKind {
    /// `M → T^r` through a whole basis of `Hom(M, T)`
    Full,
    /// left minimal, one copy of each summand per map not factoring
    /// through a radical map of `add(T)`
    Minimal,
}

/// `M → T^r`, `r = dim Hom(M, T)`, with the basis maps as components.
pub fn left_add_approximation(m: &FdModule, t: &FdModule) -> Result<Approximation> {
    let h = hom_space(m, t)?;
    let r = h.dim();
    let target = sum_module(m.algebra(), &vec![t.clone(); r])?;
    let mats = h.matrices();
    let mat = Matrix::hstack(m.field(), m.dim(), &mats.iter().collect::<Vec<_>>());
    let map = ModuleMap::new_unchecked(m.clone(), target.clone(), mat);
    Ok(Approximation { target, map })
}

pub fn minimal_left_add_approximation(m: &FdModule, t: &FdModule) -> Result<Approximation> {
    let dt = decompose_with_maps(t)?;
    minimal_from(m, &dt, &radical_maps(&dt)?)
}

/// For class representatives `X_c`: bases of the radical maps `X_d → X_c`.
fn radical_maps(dt: &Decomposition) -> Result<Vec<Vec<Vec<Matrix>>>> {
    let reps: Vec<&FdModule> = dt.classes.iter().map(|c| &dt.summands[c[0]].module).collect();
    let mut out = Vec::with_capacity(reps.len());
    for (d, xd) in reps.iter().enumerate() {
        let mut row = Vec::with_capacity(reps.len());
        for (c, xc) in reps.iter().enumerate() {
            if c == d {
                let end = end_algebra(xc)?;
                let rad = end.algebra.radical()?;
                row.push((0..rad.dim()).map(|i| end.element_matrix(&rad.basis().row(i))).collect());
            } else {
                row.push(hom_space(xd, xc)?.matrices());
            }
        }
        out.push(row);
    }
    Ok(out)
}

fn minimal_from(m: &FdModule, dt: &Decomposition, rad: &[Vec<Vec<Matrix>>]) -> Result<Approximation> {
    let f = m.field();
    let reps: Vec<&FdModule> = dt.classes.iter().map(|c| &dt.summands[c[0]].module).collect();
    let homs: Vec<Vec<Matrix>> = reps.iter().map(|x| Ok(hom_space(m, x)?.matrices())).collect::<Result<_>>()?;
    let mut parts = Vec::new();
    let mut comps = Vec::new();
    for (c, xc) in reps.iter().enumerate() {
        let width = m.dim() * xc.dim();
        let mut factored = Vec::new();
        for (d, hd) in homs.iter().enumerate() {
            for g in hd {
                for r in &rad[d][c] {
                    factored.push(g.mul(r).flatten());
                }
            }
        }
        let mut span = Matrix::vstack(f, width, &factored.iter().collect::<Vec<_>>()).row_space_basis();
        let mut rank = span.rows();
        for h in &homs[c] {
            let cand = Matrix::vstack(f, width, &[&span, &h.flatten()]);
            let r = cand.rank();
            if r > rank {
                span = cand;
                rank = r;
                parts.push((*xc).clone());
                comps.push(h.clone());
            }
        }
    }
    let target = sum_module(m.algebra(), &parts)?;
    let mat = Matrix::hstack(f, m.dim(), &comps.iter().collect::<Vec<_>>());
    let map = ModuleMap::new_unchecked(m.clone(), target.clone(), mat);
    Ok(Approximation { target, map })
}

/// `0 → M → X_0 → … → X_k → 0` with every `X_i ∈ add(T)`.
#[derive(Clone, Debug)]
pub struct AddCoresolution {
    pub module: FdModule,
    /// `X_0 … X_k`
    pub terms: Vec<FdModule>,
    /// `M → X_0`, then `X_{i−1} → X_i`
    pub maps: Vec<ModuleMap>,
}

impl AddCoresolution {
    pub fn length(&self) -> usize {
        self.terms.len() - 1
    }

    /// The complex `X_0 → … → X_k` in degrees `0..k`.
    pub fn complex(&self) -> BoundedComplex {
        let diffs = self.maps[1..].iter().map(|m| m.matrix().clone()).collect();
        BoundedComplex::new_unchecked(self.module.algebra().clone(), 0, self.terms.clone(), diffs).expect("shapes agree")
    }

    /// The augmented sequence `M → X_0 → … → X_k` in degrees `−1..k`.
    pub fn augmented(&self) -> BoundedComplex {
        let mut terms = vec![self.module.clone()];
        terms.extend(self.terms.iter().cloned());
        let diffs = self.maps.iter().map(|m| m.matrix().clone()).collect();
        BoundedComplex::new_unchecked(self.module.algebra().clone(), -1, terms, diffs).expect("shapes agree")
    }
}

/// Iterated left minimal approximations; fails if some approximation is
/// not injective or more than `n` steps are needed.
pub fn add_coresolution(m: &FdModule, t: &FdModule, n: usize) -> Result<AddCoresolution> {
    add_coresolution_with(m, t, n, ApproximationKind::Minimal)
}

pub fn add_coresolution_with(m: &FdModule, t: &FdModule, n: usize, kind: ApproximationKind) -> Result<AddCoresolution> {
    let dt = decompose_with_maps(t)?;
    let rad = match kind {
        ApproximationKind::Minimal => Some(radical_maps(&dt)?),
        ApproximationKind::Full => None,
    };
    let mut terms = Vec::new();
    let mut maps: Vec<ModuleMap> = Vec::new();
    let mut current = m.clone();
    let mut onto: Option<ModuleMap> = None;
    for i in 0.. {
        if in_add_of(&current, &dt)? {
            let last = match &onto {
                Some(p) => p.clone(),
                None => ModuleMap::identity(&current),
            };
            terms.push(current);
            maps.push(last);
            break;
        }
        if i >= n {
            return Err(Error::Precondition(format!("the add(T)-coresolution needs more than {n} steps")));
        }
        let approx = match &rad {
            Some(r) => minimal_from(&current, &dt, r)?,
            None => left_add_approximation(&current, t)?,
        };
        if !approx.map.is_injective() {
            return Err(Error::Precondition(format!("the approximation at step {i} is not injective")));
        }
        let step = match &onto {
            Some(p) => p.then(&approx.map),
            None => approx.map.clone(),
        };
        maps.push(step);
        terms.push(approx.target.clone());
        let (q, proj) = approx.map.cokernel();
        current = q;
        onto = Some(proj);
    }
    Ok(AddCoresolution { module: m.clone(), terms, maps })
}

#[cfg(test)]
fn factors_through(approx: &Approximation, g: &Matrix, x: &FdModule) -> bool {
    use crate::exactla::Subspace;
    let hs = hom_space(&approx.target, x).unwrap();
    let f = g.field();
    let width = g.rows() * g.cols();
    let rows: Vec<Matrix> = hs.matrices().iter().map(|h| approx.map.matrix().mul(h).flatten()).collect();
    let sub = Subspace::from_rows(&Matrix::vstack(f, width, &rows.iter().collect::<Vec<_>>()));
    sub.contains(&g.flatten())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::repmod::{canonical_modules, fixtures::*, is_isomorphic, regular};

    #[test]
    fn approximations_factor_every_map() {
        let a = n3();
        let c = canonical_modules(&a).unwrap();
        let t = sum_module(&a, &[c.simples[0].clone(), c.projectives[0].clone(), c.projectives[1].clone()]).unwrap();
        for m in c.simples.iter().chain(&c.projectives).chain(std::iter::once(&regular(&a))) {
            for approx in [left_add_approximation(m, &t).unwrap(), minimal_left_add_approximation(m, &t).unwrap()] {
                approx.map.validate().unwrap();
                for h in hom_space(m, &t).unwrap().matrices() {
                    assert!(factors_through(&approx, &h, &t));
                }
            }
        }
        // P3 → P2 is the only map up to scalars
        let p3 = &c.projectives[2];
        let full = left_add_approximation(p3, &t).unwrap();
        assert_eq!(full.target.dim(), t.dim());
        assert!(full.map.is_injective());
        let min = minimal_left_add_approximation(p3, &t).unwrap();
        assert!(is_isomorphic(&min.target, &c.projectives[1]).unwrap().is_some());
    }

    #[test]
    fn coresolutions_of_the_regular_module() {
        let a = a2();
        let c = canonical_modules(&a).unwrap();
        let t = sum_module(&a, &[c.projectives[0].clone(), c.simples[0].clone()]).unwrap();
        let r = regular(&a);
        for kind in [ApproximationKind::Minimal, ApproximationKind::Full] {
            let co = add_coresolution_with(&r, &t, 1, kind).unwrap();
            assert_eq!(co.length(), 1);
            co.augmented().validate().unwrap();
            assert!(co.augmented().is_exact());
        }
        let co = add_coresolution(&r, &t, 1).unwrap();
        let p1p1 = sum_module(&a, &[c.projectives[0].clone(), c.projectives[0].clone()]).unwrap();
        assert!(is_isomorphic(&co.terms[0], &p1p1).unwrap().is_some());
        assert!(is_isomorphic(&co.terms[1], &c.simples[0]).unwrap().is_some());
        assert_eq!(add_coresolution(&t, &t, 0).unwrap().length(), 0);

        let a = n3();
        let c = canonical_modules(&a).unwrap();
        let t = sum_module(&a, &[c.simples[0].clone(), c.projectives[0].clone(), c.projectives[1].clone()]).unwrap();
        let co = add_coresolution(&regular(&a), &t, 2).unwrap();
        assert_eq!(co.length(), 2);
        assert!(co.augmented().is_exact());
        assert!(add_coresolution(&regular(&a), &t, 1).is_err());
    }
}
