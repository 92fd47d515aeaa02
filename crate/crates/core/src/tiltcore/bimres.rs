//! A resolution of `T` by `(S, R)`-bimodules that are projective over `R`.
//!
//! Over `Λ = S^op ⊗ R` take projective covers `Q_{k−1} → … → Q_0 → T`
//! and stop at the syzygy `Ω^k`. Each `Q_i` is free over `R`, and since
//! `pd T_R = k` the syzygy is `R`-projective, so restricting to `R` gives a
//! projective resolution of `T_R` on which `S` acts by chain maps.

use crate::error::Result;
use crate::exactla::Matrix;
use crate::homology::{projective_cover, Bimodule, BimoduleComplex, BoundedComplex};
use crate::repmod::{FdModule, ModuleMap};

pub fn bimodule_resolution(b: &Bimodule, pd: usize) -> Result<BimoduleComplex> {
    let env = b.enveloping()?;
    // terms over Λ in order Q_0, Q_1, …, then the syzygy; maps[i]: term i+1 → term i
    let mut terms: Vec<FdModule> = Vec::new();
    let mut maps: Vec<Matrix> = Vec::new();
    if pd > 0 {
        let c = projective_cover(&env.module)?;
        let mut current: ModuleMap = c.map.clone();
        terms.push(c.projective.module().clone());
        for step in 1..=pd {
            let (k, inc) = current.kernel();
            if k.dim() == 0 {
                break;
            }
            if step == pd {
                terms.push(k);
                maps.push(inc.matrix().clone());
                break;
            }
            let c = projective_cover(&k)?;
            let d = c.map.matrix().mul(inc.matrix());
            current = ModuleMap::new_unchecked(c.projective.module().clone(), terms.last().unwrap().clone(), d.clone());
            terms.push(c.projective.module().clone());
            maps.push(d);
        }
    } else {
        terms.push(env.module.clone());
    }
    let len = terms.len() as i32 - 1;
    let rterms: Vec<FdModule> = terms.iter().rev().map(|p| env.restrict_right(p)).collect();
    let lefts: Vec<Vec<Matrix>> = terms.iter().rev().map(|p| env.left_actions(p)).collect();
    let diffs: Vec<Matrix> = maps.iter().rev().cloned().collect();
    let complex = BoundedComplex::new_unchecked(b.right().clone(), -len, rterms, diffs)?;
    Ok(BimoduleComplex { complex, left: b.left().clone(), left_actions: lefts })
}
