//! Seeded random bounded complexes for property runs.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::algebra::AlgebraRef;
use crate::error::Result;
use crate::exactla::Matrix;
use crate::homology::BoundedComplex;
use crate::repmod::{canonical_modules, hom_space, is_isomorphic, sum_module, FdModule};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RandomSpec {
    pub max_term_dim: usize,
    pub min_degree: i32,
    pub max_degree: i32,
    pub max_summands: usize,
    pub max_length: usize,
}

impl Default for RandomSpec {
    fn default() -> Self {
        RandomSpec { max_term_dim: 6, min_degree: -3, max_degree: 3, max_summands: 2, max_length: 3 }
    }
}

/// Simples, indecomposable projectives and injectives, up to isomorphism.
fn building_blocks(a: &AlgebraRef) -> Result<Vec<FdModule>> {
    let c = canonical_modules(a)?;
    let mut out: Vec<FdModule> = Vec::new();
    for m in c.simples.iter().chain(&c.projectives).chain(&c.injectives) {
        let mut seen = false;
        for x in &out {
            if is_isomorphic(x, m)?.is_some() {
                seen = true;
                break;
            }
        }
        if !seen {
            out.push(m.clone());
        }
    }
    Ok(out)
}

/// Terms are direct sums of simples, indecomposable projectives and
/// injectives; each differential is a random element of the maps killed by
/// the previous one (the zero map when there is none).
pub fn random_complex(a: &AlgebraRef, spec: &RandomSpec, seed: u64) -> Result<BoundedComplex> {
    let blocks = building_blocks(a)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let f = a.field();
    let low = rng.gen_range(spec.min_degree..=spec.max_degree);
    let room = (spec.max_degree - low) as usize;
    let len = rng.gen_range(1..=spec.max_length.min(room + 1).max(1));
    let mut terms = Vec::with_capacity(len);
    for _ in 0..len {
        let k = rng.gen_range(1..=spec.max_summands);
        let mut parts: Vec<FdModule> = Vec::new();
        let mut dim = 0;
        for _ in 0..k {
            let fits: Vec<&FdModule> = blocks.iter().filter(|b| dim + b.dim() <= spec.max_term_dim).collect();
            if fits.is_empty() {
                break;
            }
            let b = fits[rng.gen_range(0..fits.len())];
            dim += b.dim();
            parts.push(b.clone());
        }
        terms.push(sum_module(a, &parts)?);
    }
    let mut diffs: Vec<Matrix> = Vec::with_capacity(len.saturating_sub(1));
    for k in 0..len.saturating_sub(1) {
        let h = hom_space(&terms[k], &terms[k + 1])?;
        let basis = h.matrices();
        // coefficient vectors c with prev · Σ c_b B_b = 0
        let allowed = match diffs.last() {
            None => Matrix::identity(f, basis.len()),
            Some(prev) => {
                let rows: Vec<Matrix> = basis.iter().map(|b| prev.mul(b).flatten()).collect();
                let width = prev.rows() * terms[k + 1].dim();
                Matrix::vstack(f, width, &rows.iter().collect::<Vec<_>>()).kernel_basis()
            }
        };
        let mut d = Matrix::zeros(f, terms[k].dim(), terms[k + 1].dim());
        for r in 0..allowed.rows() {
            let c = f.from_i64(rng.gen_range(-2..=2));
            let mut coeffs = allowed.row(r);
            coeffs = coeffs.scale(&c);
            d = d.add(&h.combine(&coeffs));
        }
        diffs.push(d);
    }
    BoundedComplex::new(a.clone(), low, terms, diffs)
}

/// `count` complexes with seeds `seed, seed + 1, …`.
pub fn random_suite(a: &AlgebraRef, spec: &RandomSpec, seed: u64, count: usize) -> Result<Vec<BoundedComplex>> {
    (0..count as u64).map(|k| random_complex(a, spec, seed.wrapping_add(k))).collect()
}
