//! Bounded cochain complexes and chain maps.

use std::fmt;

use crate::algebra::AlgebraRef;
use crate::error::{Error, Result};
use crate::exactla::{Matrix, Subspace};
use crate::repmod::{direct_sum, same_algebra, FdModule, ModuleMap};

/// A bounded cochain complex `C^low → … → C^high`; terms outside the range
/// are zero. `diffs[k]` is the differential leaving degree `low + k`.
#[derive(Clone)]
pub struct BoundedComplex {
    algebra: AlgebraRef,
    low: i32,
    terms: Vec<FdModule>,
    diffs: Vec<Matrix>,
}

impl fmt::Debug for BoundedComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let dims: Vec<usize> = self.terms.iter().map(|t| t.dim()).collect();
        write!(f, "BoundedComplex(low {}, dims {:?})", self.low, dims)
    }
}

/// Homology at one degree with the maps needed to work with classes.
#[derive(Clone, Debug)]
pub struct Homology {
    pub module: FdModule,
    /// basis of the cocycles, rows in `C^i`
    pub cycles: Subspace,
    /// cocycle coordinates → homology coordinates
    pub to_homology: Matrix,
    /// homology basis lifted to cocycle rows in `C^i`
    pub representatives: Matrix,
}

impl BoundedComplex {
    /// Validated construction; checks shapes, module maps and `d∘d = 0`.
    pub fn new(algebra: AlgebraRef, low: i32, terms: Vec<FdModule>, diffs: Vec<Matrix>) -> Result<BoundedComplex> {
        let c = BoundedComplex::new_unchecked(algebra, low, terms, diffs)?;
        c.validate()?;
        Ok(c)
    }

    pub(crate) fn new_unchecked(algebra: AlgebraRef, low: i32, terms: Vec<FdModule>, diffs: Vec<Matrix>) -> Result<BoundedComplex> {
        if diffs.len() + 1 != terms.len().max(1) {
            return Err(Error::NotAComplex(format!("{} terms need {} differentials, got {}", terms.len(), terms.len().saturating_sub(1), diffs.len())));
        }
        Ok(BoundedComplex { algebra, low, terms, diffs })
    }

    pub fn zero(algebra: &AlgebraRef) -> BoundedComplex {
        BoundedComplex { algebra: algebra.clone(), low: 0, terms: vec![], diffs: vec![] }
    }

    /// `m` placed in degree `degree`.
    pub fn stalk(m: &FdModule, degree: i32) -> BoundedComplex {
        BoundedComplex { algebra: m.algebra().clone(), low: degree, terms: vec![m.clone()], diffs: vec![] }
    }

    /// Builds from a list of maps `d^low, …` between consecutive terms.
    pub fn from_maps(algebra: &AlgebraRef, low: i32, terms: Vec<FdModule>, maps: &[ModuleMap]) -> Result<BoundedComplex> {
        let diffs = maps.iter().map(|m| m.matrix().clone()).collect();
        BoundedComplex::new(algebra.clone(), low, terms, diffs)
    }

    pub fn validate(&self) -> Result<()> {
        for t in &self.terms {
            if !same_algebra(t.algebra(), &self.algebra) {
                return Err(Error::AlgebraMismatch);
            }
        }
        for (k, d) in self.diffs.iter().enumerate() {
            let deg = self.low + k as i32;
            let (s, t) = (&self.terms[k], &self.terms[k + 1]);
            if d.rows() != s.dim() || d.cols() != t.dim() {
                return Err(Error::NotAComplex(format!("differential at degree {deg} has the wrong shape")));
            }
            ModuleMap::new(s.clone(), t.clone(), d.clone())
                .map_err(|e| Error::NotAComplex(format!("differential at degree {deg}: {e}")))?;
        }
        for k in 1..self.diffs.len() {
            if !self.diffs[k - 1].mul(&self.diffs[k]).is_zero() {
                return Err(Error::NotAComplex(format!("d∘d ≠ 0 at degree {}", self.low + k as i32 - 1)));
            }
        }
        Ok(())
    }

    pub fn algebra(&self) -> &AlgebraRef {
        &self.algebra
    }

    pub fn low(&self) -> i32 {
        self.low
    }

    /// Highest stored degree (`low − 1` for the empty complex).
    pub fn high(&self) -> i32 {
        self.low + self.terms.len() as i32 - 1
    }

    pub fn is_empty_range(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn term(&self, i: i32) -> FdModule {
        if i < self.low || i > self.high() {
            FdModule::zero(&self.algebra)
        } else {
            self.terms[(i - self.low) as usize].clone()
        }
    }

    pub fn terms(&self) -> &[FdModule] {
        &self.terms
    }

    pub fn dim(&self, i: i32) -> usize {
        if i < self.low || i > self.high() {
            0
        } else {
            self.terms[(i - self.low) as usize].dim()
        }
    }

    /// Matrix of `d^i: C^i → C^{i+1}`.
    pub fn diff_matrix(&self, i: i32) -> Matrix {
        if i >= self.low && i < self.high() {
            self.diffs[(i - self.low) as usize].clone()
        } else {
            Matrix::zeros(self.algebra.field(), self.dim(i), self.dim(i + 1))
        }
    }

    pub fn diff(&self, i: i32) -> ModuleMap {
        ModuleMap::new_unchecked(self.term(i), self.term(i + 1), self.diff_matrix(i))
    }

    pub fn homology(&self, i: i32) -> FdModule {
        self.homology_data(i).module
    }

    pub fn homology_data(&self, i: i32) -> Homology {
        let c = self.term(i);
        let out = self.diff_matrix(i);
        let inc = self.diff_matrix(i - 1);
        let cycles = Subspace::from_rows(&out.kernel_basis());
        let (z, _) = c.submodule_of(&cycles);
        let bounds = cycles.coords(&inc);
        let (h, proj) = z.quotient(&bounds);
        let representatives = quotient_representatives(&cycles, &bounds).mul(cycles.basis());
        Homology { module: h, cycles, to_homology: proj.matrix().clone(), representatives }
    }

    pub fn homology_dims(&self) -> Vec<(i32, usize)> {
        (self.low..=self.high()).map(|i| (i, self.homology(i).dim())).collect()
    }

    pub fn is_exact(&self) -> bool {
        (self.low..=self.high()).all(|i| self.homology(i).dim() == 0)
    }

    /// `C[k]`: degree `i` holds `C^{i+k}`, differential `(−1)^k d`.
    pub fn shift(&self, k: i32) -> BoundedComplex {
        let diffs = if k % 2 == 0 { self.diffs.clone() } else { self.diffs.iter().map(|d| d.neg()).collect() };
        BoundedComplex { algebra: self.algebra.clone(), low: self.low - k, terms: self.terms.clone(), diffs }
    }

    /// Same complex restricted to degrees `[lo, hi]` (brutal truncation),
    /// padding with zero terms as needed.
    pub fn restrict(&self, lo: i32, hi: i32) -> BoundedComplex {
        if hi < lo {
            return BoundedComplex::zero(&self.algebra);
        }
        let terms: Vec<FdModule> = (lo..=hi).map(|i| self.term(i)).collect();
        let diffs: Vec<Matrix> = (lo..hi).map(|i| self.diff_matrix(i)).collect();
        BoundedComplex { algebra: self.algebra.clone(), low: lo, terms, diffs }
    }

    /// Drops zero terms at both ends.
    pub fn trimmed(&self) -> BoundedComplex {
        let mut lo = self.low;
        let mut hi = self.high();
        while lo <= hi && self.dim(lo) == 0 {
            lo += 1;
        }
        while hi >= lo && self.dim(hi) == 0 {
            hi -= 1;
        }
        self.restrict(lo, hi)
    }

    /// Degreewise direct sum.
    pub fn direct_sum(&self, other: &BoundedComplex) -> Result<BoundedComplex> {
        if self.terms.is_empty() {
            return Ok(other.clone());
        }
        if other.terms.is_empty() {
            return Ok(self.clone());
        }
        let f = self.algebra.field();
        let lo = self.low.min(other.low);
        let hi = self.high().max(other.high());
        let mut terms = Vec::new();
        for i in lo..=hi {
            terms.push(direct_sum(&self.algebra, &[self.term(i), other.term(i)])?.module);
        }
        let diffs = (lo..hi).map(|i| Matrix::block_diag(f, &[&self.diff_matrix(i), &other.diff_matrix(i)])).collect();
        BoundedComplex::new_unchecked(self.algebra.clone(), lo, terms, diffs)
    }
}

/// Rows of `Z` (in `Z`-coordinates) lifting a basis of `Z / B`, where `B` is
/// given by rows in `Z`-coordinates; matches the basis of `FdModule::quotient`.
pub(crate) fn quotient_representatives(z: &Subspace, b: &Matrix) -> Matrix {
    let f = z.basis().field();
    let sub = Subspace::from_rows(b);
    let mut keep = vec![true; z.dim()];
    for &p in sub.pivots() {
        keep[p] = false;
    }
    let kept: Vec<usize> = (0..z.dim()).filter(|&c| keep[c]).collect();
    Matrix::identity(f, z.dim()).select_rows(&kept)
}

/// A degreewise family of module maps commuting with the differentials.
#[derive(Clone, Debug)]
pub struct ChainMap {
    source: BoundedComplex,
    target: BoundedComplex,
    low: i32,
    comps: Vec<Matrix>,
}

impl ChainMap {
    /// `comps[k]` is the component at degree `low + k`; missing degrees are
    /// zero. Validates every square.
    pub fn new(source: BoundedComplex, target: BoundedComplex, low: i32, comps: Vec<Matrix>) -> Result<ChainMap> {
        let m = ChainMap { source, target, low, comps };
        m.validate()?;
        Ok(m)
    }

    pub fn identity(c: &BoundedComplex) -> ChainMap {
        let f = c.algebra.field();
        let comps = (c.low..=c.high()).map(|i| Matrix::identity(f, c.dim(i))).collect();
        ChainMap { source: c.clone(), target: c.clone(), low: c.low, comps }
    }

    pub fn zero(source: &BoundedComplex, target: &BoundedComplex) -> ChainMap {
        ChainMap { source: source.clone(), target: target.clone(), low: 0, comps: vec![] }
    }

    pub fn source(&self) -> &BoundedComplex {
        &self.source
    }

    pub fn target(&self) -> &BoundedComplex {
        &self.target
    }

    pub fn component(&self, i: i32) -> Matrix {
        let k = i - self.low;
        if k >= 0 && (k as usize) < self.comps.len() {
            self.comps[k as usize].clone()
        } else {
            Matrix::zeros(self.source.algebra.field(), self.source.dim(i), self.target.dim(i))
        }
    }

    fn range(&self) -> (i32, i32) {
        (self.source.low.min(self.target.low), self.source.high().max(self.target.high()))
    }

    pub fn validate(&self) -> Result<()> {
        let (lo, hi) = self.range();
        for i in lo..=hi {
            let c = self.component(i);
            if c.rows() != self.source.dim(i) || c.cols() != self.target.dim(i) {
                return Err(Error::Dimension(format!("chain map component at degree {i} has the wrong shape")));
            }
            ModuleMap::new(self.source.term(i), self.target.term(i), c.clone())
                .map_err(|e| Error::NotAMap(format!("component at degree {i}: {e}")))?;
            let lhs = self.source.diff_matrix(i).mul(&self.component(i + 1));
            let rhs = c.mul(&self.target.diff_matrix(i));
            if lhs != rhs {
                return Err(Error::NotAMap(format!("square at degree {i} does not commute")));
            }
        }
        Ok(())
    }

    /// Mapping cone: degree `i` holds `C^{i+1} ⊕ D^i`, differential
    /// `(c, d) ↦ (−d_C c, f(c) + d_D d)`.
    pub fn cone(&self) -> BoundedComplex {
        let (c, d) = (&self.source, &self.target);
        let f = c.algebra.field();
        let lo = (c.low - 1).min(d.low);
        let hi = (c.high() - 1).max(d.high());
        if hi < lo {
            return BoundedComplex::zero(&c.algebra);
        }
        let terms: Vec<FdModule> = (lo..=hi)
            .map(|i| direct_sum(&c.algebra, &[c.term(i + 1), d.term(i)]).expect("same algebra").module)
            .collect();
        let diffs = (lo..hi)
            .map(|i| {
                let top = Matrix::hstack(f, c.dim(i + 1), &[&c.diff_matrix(i + 1).neg(), &self.component(i + 1)]);
                let bottom = Matrix::hstack(f, d.dim(i), &[&Matrix::zeros(f, d.dim(i), c.dim(i + 2)), &d.diff_matrix(i)]);
                Matrix::vstack(f, c.dim(i + 2) + d.dim(i + 1), &[&top, &bottom])
            })
            .collect();
        BoundedComplex { algebra: c.algebra.clone(), low: lo, terms, diffs }
    }

    /// True iff the cone has no homology.
    pub fn is_quasi_isomorphism(&self) -> bool {
        self.cone().is_exact()
    }
}

/// See [`ChainMap::is_quasi_isomorphism`].
pub fn quasi_iso(f: &ChainMap) -> bool {
    f.is_quasi_isomorphism()
}

/// See [`ChainMap::cone`].
pub fn cone(f: &ChainMap) -> BoundedComplex {
    f.cone()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::repmod::{fixtures::*, hom_space, is_isomorphic, projective, simple};

    #[test]
    fn stalk_homology() {
        let a = a2();
        let p1 = projective(&a, 0).unwrap();
        let c = BoundedComplex::stalk(&p1, 0);
        assert_eq!(c.homology(0).dim(), 2);
        assert_eq!(c.homology(1).dim(), 0);
        assert_eq!(c.homology(-1).dim(), 0);
    }

    #[test]
    fn inclusion_complex_has_simple_homology() {
        let a = a2();
        let p1 = projective(&a, 0).unwrap();
        let p2 = projective(&a, 1).unwrap();
        let inc = hom_space(&p2, &p1).unwrap().map(0);
        let c = BoundedComplex::from_maps(&a, -1, vec![p2, p1], &[inc]).unwrap();
        assert_eq!(c.homology(-1).dim(), 0);
        let h0 = c.homology(0);
        assert!(is_isomorphic(&h0, &simple(&a, 0).unwrap()).unwrap().is_some());
        // the same sequence extended by the cokernel is exact
        let s1 = simple(&a, 0).unwrap();
        let proj = hom_space(&c.term(0), &s1).unwrap().map(0);
        let ex = BoundedComplex::from_maps(&a, -1, vec![c.term(-1), c.term(0), s1], &[c.diff(-1), proj]).unwrap();
        assert!(ex.is_exact());
    }

    #[test]
    fn rejects_nonzero_square() {
        let a = a2();
        let p1 = projective(&a, 0).unwrap();
        let id = Matrix::identity(p1.field(), 2);
        let err = BoundedComplex::new(a.clone(), 0, vec![p1.clone(), p1.clone(), p1.clone()], vec![id.clone(), id]).unwrap_err();
        assert!(err.to_string().contains("degree 0"), "{err}");
    }

    #[test]
    fn cones() {
        let a = a2();
        let p1 = projective(&a, 0).unwrap();
        let c = BoundedComplex::stalk(&p1, 0);
        let id = ChainMap::identity(&c);
        assert!(id.cone().is_exact());
        assert!(quasi_iso(&id));
        let z = BoundedComplex::zero(&a);
        let to_zero = ChainMap::zero(&c, &z);
        let k = to_zero.cone();
        // cone(M → 0) is M[1]
        assert_eq!(k.homology(-1).dim(), 2);
        assert!(!quasi_iso(&to_zero));
        let zz = ChainMap::zero(&c, &c);
        assert!(!quasi_iso(&zz));
    }

    #[test]
    fn shift_moves_homology() {
        let a = a2();
        let p1 = projective(&a, 0).unwrap();
        let c = BoundedComplex::stalk(&p1, 0).shift(1);
        assert_eq!(c.homology(-1).dim(), 2);
    }
}
