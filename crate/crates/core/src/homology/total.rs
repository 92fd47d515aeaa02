//! Total Hom complexes.

use crate::algebra::{Algebra, AlgebraRef};
use crate::error::{Error, Result};
use crate::exactla::Matrix;
use crate::repmod::{hom_space, same_algebra, FdModule, HomSpace};

use super::complex::BoundedComplex;

/// A complex of `(S, R)`-bimodules: a complex of right `R`-modules whose
/// terms carry commuting left `S`-actions respected by the differentials.
#[derive(Clone, Debug)]
pub struct BimoduleComplex {
    pub complex: BoundedComplex,
    pub left: AlgebraRef,
    /// per stored degree, one matrix per basis element of `S`
    pub left_actions: Vec<Vec<Matrix>>,
}

impl BimoduleComplex {
    /// A plain complex viewed with the ground field acting on the left.
    pub fn plain(c: &BoundedComplex) -> BimoduleComplex {
        let f = c.algebra().field();
        let left = Algebra::ground(f);
        let left_actions = c.terms().iter().map(|t| vec![Matrix::identity(f, t.dim())]).collect();
        BimoduleComplex { complex: c.clone(), left, left_actions }
    }

    fn left_at(&self, p: i32) -> &[Matrix] {
        &self.left_actions[(p - self.complex.low()) as usize]
    }
}

/// `Hom(P, C)` with `Hom^j = ⊕_p Hom(P^p, C^{p+j})` and
/// `d(f) = d_C ∘ f − (−1)^j f ∘ d_P`, as right `S`-modules via `f·s = f ∘ s`.
pub fn hom_total_bicomplex(p: &BimoduleComplex, c: &BoundedComplex) -> Result<BoundedComplex> {
    let pc = &p.complex;
    if !same_algebra(pc.algebra(), c.algebra()) {
        return Err(Error::AlgebraMismatch);
    }
    let s = &p.left;
    let f = s.field();
    if pc.is_empty_range() || c.is_empty_range() {
        return Ok(BoundedComplex::zero(s));
    }
    let lo = c.low() - pc.high();
    let hi = c.high() - pc.low();
    // spaces[j][k] = Hom(P^{pl+k}, C^{pl+k+j})
    let pl = pc.low();
    let np = (pc.high() - pl + 1) as usize;
    let mut spaces: Vec<Vec<HomSpace>> = Vec::new();
    for j in lo..=hi {
        let mut row = Vec::with_capacity(np);
        for k in 0..np {
            let deg = pl + k as i32;
            row.push(hom_space(&pc.term(deg), &c.term(deg + j))?);
        }
        spaces.push(row);
    }
    let offsets = |row: &[HomSpace]| -> (Vec<usize>, usize) {
        let mut offs = Vec::with_capacity(row.len());
        let mut t = 0;
        for h in row {
            offs.push(t);
            t += h.dim();
        }
        (offs, t)
    };
    let mut terms = Vec::new();
    for row in &spaces {
        let (offs, total) = offsets(row);
        let mut actions = vec![Matrix::zeros(f, total, total); s.dim()];
        for (k, h) in row.iter().enumerate() {
            let l = p.left_at(pl + k as i32);
            for (i, act) in actions.iter_mut().enumerate() {
                let rows: Vec<Matrix> = (0..h.dim()).map(|b| h.coords(&l[i].mul(&h.matrix(b)))).collect();
                let blk = Matrix::vstack(f, h.dim(), &rows.iter().collect::<Vec<_>>());
                act.set_block(offs[k], offs[k], &blk);
            }
        }
        terms.push(FdModule::new_unchecked(s.clone(), total, actions));
    }
    let mut diffs = Vec::new();
    for j in lo..hi {
        let ji = (j - lo) as usize;
        let (src_offs, src_total) = offsets(&spaces[ji]);
        let (tgt_offs, tgt_total) = offsets(&spaces[ji + 1]);
        let sign = if j % 2 == 0 { f.from_i64(-1) } else { f.one() };
        let mut d = Matrix::zeros(f, src_total, tgt_total);
        for k in 0..np {
            let deg = pl + k as i32;
            let h = &spaces[ji][k];
            for b in 0..h.dim() {
                let m = h.matrix(b);
                let row = src_offs[k] + b;
                // d_C ∘ f lands in Hom(P^deg, C^{deg+j+1})
                let dc = c.diff_matrix(deg + j);
                let post = m.mul(&dc);
                if !post.is_zero() {
                    let tgt = &spaces[ji + 1][k];
                    d.set_block(row, tgt_offs[k], &tgt.coords(&post));
                }
                // ∓ f ∘ d_P lands in Hom(P^{deg−1}, C^{deg+j})
                if k > 0 {
                    let pre = pc.diff_matrix(deg - 1).mul(&m);
                    if !pre.is_zero() {
                        let tgt = &spaces[ji + 1][k - 1];
                        let coords = tgt.coords(&pre).scale(&sign);
                        let mut cur = d.block(row, tgt_offs[k - 1], 1, tgt.dim());
                        cur = cur.add(&coords);
                        d.set_block(row, tgt_offs[k - 1], &cur);
                    }
                }
            }
        }
        diffs.push(d);
    }
    BoundedComplex::new_unchecked(s.clone(), lo, terms, diffs)
}

/// `Hom(P, C)` over the ground field.
pub fn hom_total_complex(p: &BoundedComplex, c: &BoundedComplex) -> Result<BoundedComplex> {
    hom_total_bicomplex(&BimoduleComplex::plain(p), c)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::homology::resolution::{ext, proj_resolution};
    use crate::repmod::{canonical_modules, fixtures::*};

    #[test]
    fn hom_from_resolution_computes_ext() {
        let a = n3();
        let c = canonical_modules(&a).unwrap();
        for m in c.simples.iter().chain(&c.injectives) {
            let r = proj_resolution(m, 5).unwrap();
            for n in c.simples.iter().chain(&c.projectives) {
                let h = hom_total_complex(&r.complex(), &BoundedComplex::stalk(n, 0)).unwrap();
                h.validate().unwrap();
                for i in 0..3 {
                    assert_eq!(h.homology(i).dim(), ext(m, n, i as usize).unwrap().dim);
                }
            }
        }
    }

    #[test]
    fn hom_total_is_a_complex_with_shifts() {
        let a = a2();
        let c = canonical_modules(&a).unwrap();
        let r = proj_resolution(&c.simples[0], 3).unwrap();
        let p = r.complex();
        // Hom(P, P) for the two-term resolution; H^0 is End(S1) = k
        let h = hom_total_complex(&p, &p).unwrap();
        h.validate().unwrap();
        assert_eq!(h.homology(0).dim(), 1);
        let sh = hom_total_complex(&p, &p.shift(1)).unwrap();
        sh.validate().unwrap();
        // H^j Hom(P, P[1]) = Ext^{j+1}(S1, S1)
        assert_eq!(sh.homology(-1).dim(), 1);
        assert_eq!(sh.homology(0).dim(), 0);
    }
}
