//! Splitting idempotents in a unital algebra of matrices acting on row
//! vectors. Used both for the regular representation of an algebra and for
//! endomorphism rings of modules.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::exactla::{roots, FieldSpec, Matrix, Subspace};

/// Rank of the trace form `(x, y) ↦ tr(x y)` on the span of `elems`. In
/// characteristic 0 or above the dimension of the underlying space its
/// kernel is the radical of the algebra they span.
pub(crate) fn trace_gram_rank(field: FieldSpec, elems: &[Matrix]) -> usize {
    let n = elems.len();
    let gram = Matrix::from_fn(field, n, n, |i, j| elems[i].mul(&elems[j]).trace());
    gram.rank()
}

/// Refines orthogonal idempotents `start` (summing to the identity) into a
/// complete set of primitive orthogonal idempotents of the algebra spanned by
/// `basis`, which must contain the identity and be closed under products.
pub(crate) fn primitive_refinement(field: FieldSpec, d: usize, basis: &[Matrix], start: Vec<Matrix>) -> Result<Vec<Matrix>> {
    let mut stack = start;
    let mut out = Vec::new();
    while let Some(e) = stack.pop() {
        let rank_e = e.rank();
        if rank_e == 0 {
            continue;
        }
        if !field.trace_criterion_ok(rank_e) {
            return Err(Error::Unsupported(format!(
                "idempotent splitting needs characteristic 0 or p > {rank_e} (field {field})"
            )));
        }
        let corner = corner_basis(field, d, basis, &e);
        if trace_gram_rank(field, &corner) <= 1 {
            out.push(e);
            continue;
        }
        let x = find_splitting_element(field, d, &corner, &e, rank_e)?;
        let e1 = fitting_projection(field, d, &x);
        let e2 = e.sub(&e1);
        stack.push(e2);
        stack.push(e1);
    }
    out.reverse();
    Ok(out)
}

/// Basis of `e·E·e`.
fn corner_basis(field: FieldSpec, d: usize, basis: &[Matrix], e: &Matrix) -> Vec<Matrix> {
    let rows: Vec<Matrix> = basis.iter().map(|b| e.mul(b).mul(e).flatten()).collect();
    let s = Subspace::from_rows(&Matrix::vstack(field, d * d, &rows.iter().collect::<Vec<_>>()));
    (0..s.dim()).map(|i| s.basis().unflatten_row(i, d, d)).collect()
}

/// `x` in the corner with `0 < rank(x^d) < rank(e)`.
fn splits(x: &Matrix, d: usize, rank_e: usize) -> bool {
    let r = x.pow(d as u64).rank();
    r > 0 && r < rank_e
}

fn find_splitting_element(field: FieldSpec, d: usize, corner: &[Matrix], e: &Matrix, rank_e: usize) -> Result<Matrix> {
    let try_with_shifts = |x: &Matrix| -> Option<Matrix> {
        if splits(x, d, rank_e) {
            return Some(x.clone());
        }
        for lambda in roots(field, &x.char_poly()) {
            let y = x.sub(&e.scale(&lambda));
            if splits(&y, d, rank_e) {
                return Some(y);
            }
        }
        None
    };
    for c in corner {
        if let Some(x) = try_with_shifts(c) {
            return Ok(x);
        }
    }
    for a in corner {
        for b in corner {
            if let Some(x) = try_with_shifts(&a.mul(b)) {
                return Ok(x);
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    for _ in 0..64 {
        let coeffs: Vec<_> = corner.iter().map(|_| field.from_i64(rng.gen_range(-50..=50))).collect();
        let x = Matrix::combination(field, d, d, &coeffs, corner);
        if let Some(x) = try_with_shifts(&x) {
            return Ok(x);
        }
    }
    Err(Error::Unsupported(
        "endomorphism ring is not split over the base field; cannot extract idempotents".into(),
    ))
}

/// Projection onto `Im x^d` along `Ker x^d`.
fn fitting_projection(field: FieldSpec, d: usize, x: &Matrix) -> Matrix {
    let xd = x.pow(d as u64);
    let im = xd.row_space_basis();
    let ker = xd.kernel_basis();
    let b = Matrix::vstack(field, d, &[&im, &ker]);
    let binv = b.inverse().expect("Fitting decomposition spans the space");
    let mut keep = Matrix::zeros(field, d, d);
    for i in 0..im.rows() {
        keep.set(i, i, field.one());
    }
    binv.mul(&keep).mul(&b)
}
