//! Regular, projective, injective and simple modules, and modules given as
//! quiver representations.

use crate::algebra::{AlgebraRef, Presentation};
use crate::error::{Error, Result};
use crate::exactla::{Matrix, Subspace};

use super::FdModule;

pub fn regular(a: &AlgebraRef) -> FdModule {
    a.regular_module()
}

fn idempotent(a: &AlgebraRef, v: usize) -> Result<Matrix> {
    let idem = a.primitive_idempotents()?;
    idem.get(v).cloned().ok_or_else(|| Error::NotFound(format!("vertex index {v} (algebra has {} idempotents)", idem.len())))
}

/// `e_v A`.
pub fn projective(a: &AlgebraRef, v: usize) -> Result<FdModule> {
    let e = idempotent(a, v)?;
    Ok(regular(a).submodule(&a.element_left_mult(&e)).0)
}

/// `D(A e_v)`, the dual of a left projective.
pub fn injective(a: &AlgebraRef, v: usize) -> Result<FdModule> {
    let e = idempotent(a, v)?;
    let left = Subspace::from_rows(&a.element_right_mult(&e));
    let y = left.basis();
    let action: Vec<Matrix> = a.left_mults().iter().map(|l| left.coords(&y.mul(l)).transpose()).collect();
    Ok(FdModule::new_unchecked(a.clone(), left.dim(), action))
}

/// `P_v / P_v·rad`.
pub fn simple(a: &AlgebraRef, v: usize) -> Result<FdModule> {
    Ok(projective(a, v)?.top()?.0)
}

#[derive(Clone, Debug)]
pub struct CanonicalModules {
    pub regular: FdModule,
    pub projectives: Vec<FdModule>,
    pub injectives: Vec<FdModule>,
    pub simples: Vec<FdModule>,
}

pub fn canonical_modules(a: &AlgebraRef) -> Result<CanonicalModules> {
    let n = a.primitive_idempotents()?.len();
    Ok(CanonicalModules {
        regular: regular(a),
        projectives: (0..n).map(|v| projective(a, v)).collect::<Result<_>>()?,
        injectives: (0..n).map(|v| injective(a, v)).collect::<Result<_>>()?,
        simples: (0..n).map(|v| simple(a, v)).collect::<Result<_>>()?,
    })
}

/// A quiver representation: a space per vertex and a matrix per arrow
/// (`dim(src) × dim(tgt)`, acting on row vectors), indexed as in the quiver.
#[derive(Clone, Debug)]
pub struct Representation {
    pub vertex_dims: Vec<usize>,
    pub arrow_mats: Vec<Matrix>,
}

/// Converts a representation into action matrices along the path basis,
/// checking every relation.
pub fn representation(a: &AlgebraRef, rep: &Representation) -> Result<FdModule> {
    let Presentation::BoundQuiver { quiver, relations, paths } = a.presentation() else {
        return Err(Error::InvalidModule("representations need a bound quiver algebra".into()));
    };
    let f = a.field();
    if rep.vertex_dims.len() != quiver.vertices.len() || rep.arrow_mats.len() != quiver.arrows.len() {
        return Err(Error::InvalidModule("representation does not match the quiver".into()));
    }
    let mut offs = Vec::with_capacity(rep.vertex_dims.len());
    let mut d = 0;
    for &k in &rep.vertex_dims {
        offs.push(d);
        d += k;
    }
    for (i, arr) in quiver.arrows.iter().enumerate() {
        let s = quiver.vertex_index(&arr.src).unwrap();
        let t = quiver.vertex_index(&arr.tgt).unwrap();
        let m = &rep.arrow_mats[i];
        if m.rows() != rep.vertex_dims[s] || m.cols() != rep.vertex_dims[t] || m.field() != f {
            return Err(Error::InvalidModule(format!(
                "arrow {:?} needs a {}x{} matrix, got {}x{}",
                arr.name,
                rep.vertex_dims[s],
                rep.vertex_dims[t],
                m.rows(),
                m.cols()
            )));
        }
    }
    let path_matrix = |src: usize, arrows: &[usize]| -> Matrix {
        let mut acc = Matrix::identity(f, rep.vertex_dims[src]);
        for &x in arrows {
            acc = acc.mul(&rep.arrow_mats[x]);
        }
        acc
    };
    for (ri, rel) in relations.iter().enumerate() {
        let mut total: Option<Matrix> = None;
        for (c, names) in &rel.terms {
            let p = quiver.path(names)?;
            let term = path_matrix(p.src, &p.arrows).scale(c);
            total = Some(match total {
                None => term,
                Some(t) => t.add(&term),
            });
        }
        if total.is_some_and(|t| !t.is_zero()) {
            return Err(Error::InvalidModule(format!("relation {ri} does not act as zero")));
        }
    }
    let action: Vec<Matrix> = paths
        .iter()
        .map(|p| {
            let mut m = Matrix::zeros(f, d, d);
            m.set_block(offs[p.src], offs[p.tgt], &path_matrix(p.src, &p.arrows));
            m
        })
        .collect();
    FdModule::new(a.clone(), action)
}

#[cfg(test)]
mod tests {
    use super::super::fixtures::*;
    use super::super::*;
    use super::*;
    use crate::algebra::structure_algebra;
    use crate::exactla::FieldSpec;

    #[test]
    fn a2_canonical_dims() {
        let a = a2();
        let c = canonical_modules(&a).unwrap();
        let dims = |v: &[FdModule]| v.iter().map(|m| m.dim()).collect::<Vec<_>>();
        assert_eq!(dims(&c.projectives), vec![2, 1]);
        assert_eq!(dims(&c.simples), vec![1, 1]);
        assert_eq!(dims(&c.injectives), vec![1, 2]);
        for m in c.projectives.iter().chain(&c.injectives).chain(&c.simples) {
            m.validate().unwrap();
        }
        // S1 = I1 and I2 = P1
        assert!(is_isomorphic(&c.simples[0], &c.injectives[0]).unwrap().is_some());
        assert!(is_isomorphic(&c.projectives[0], &c.injectives[1]).unwrap().is_some());
    }

    #[test]
    fn n3_canonical_dims() {
        let a = n3();
        let c = canonical_modules(&a).unwrap();
        let dims = |v: &[FdModule]| v.iter().map(|m| m.dim()).collect::<Vec<_>>();
        assert_eq!(dims(&c.projectives), vec![2, 2, 1]);
        assert_eq!(dims(&c.injectives), vec![1, 2, 2]);
        assert_eq!(dims(&c.simples), vec![1, 1, 1]);
    }

    #[test]
    fn semisimple_canonical_modules_coincide() {
        let f = FieldSpec::Rational;
        let mut c = vec![vec![vec![f.zero(); 2]; 2]; 2];
        c[0][0][0] = f.one();
        c[1][1][1] = f.one();
        let a = structure_algebra(f, &c, &[f.one(), f.one()]).unwrap();
        let cm = canonical_modules(&a).unwrap();
        for v in 0..2 {
            assert!(is_isomorphic(&cm.projectives[v], &cm.simples[v]).unwrap().is_some());
            assert!(is_isomorphic(&cm.injectives[v], &cm.simples[v]).unwrap().is_some());
        }
    }

    #[test]
    fn representation_checks_relations() {
        let a = n3();
        let f = f101();
        let one = Matrix::identity(f, 1);
        let bad = Representation { vertex_dims: vec![1, 1, 1], arrow_mats: vec![one.clone(), one.clone()] };
        assert!(representation(&a, &bad).is_err());
        let good = Representation { vertex_dims: vec![1, 1, 0], arrow_mats: vec![one.clone(), Matrix::zeros(f, 1, 0)] };
        let m = representation(&a, &good).unwrap();
        assert!(is_isomorphic(&m, &projective(&a, 0).unwrap()).unwrap().is_some());
    }
}
