//! Small dense helpers on complex matrices.

use nalgebra::Schur;

use crate::{CMatrix, CVector, C64};

/// Eigenvalues from the complex Schur form. Any 2×2 block left on the
/// diagonal is resolved by the quadratic formula.
pub fn eigenvalues(m: &CMatrix) -> Option<Vec<C64>> {
    let n = m.nrows();
    if n == 0 {
        return Some(Vec::new());
    }
    let schur = Schur::try_new(m.clone(), 1e-15, 10_000)?;
    let (_, t) = schur.unpack();
    let scale = t.norm().max(f64::MIN_POSITIVE);
    let mut out = Vec::with_capacity(n);
    let mut i = 0;
    while i < n {
        if i + 1 < n && t[(i + 1, i)].norm() > 1e-14 * scale {
            let (a, b, c, d) = (t[(i, i)], t[(i, i + 1)], t[(i + 1, i)], t[(i + 1, i + 1)]);
            let tr = a + d;
            let det = a * d - b * c;
            let disc = (tr * tr - det * 4.0).sqrt();
            out.push((tr + disc) / 2.0);
            out.push((tr - disc) / 2.0);
            i += 2;
        } else {
            out.push(t[(i, i)]);
            i += 1;
        }
    }
    Some(out)
}

pub fn kron(a: &CMatrix, b: &CMatrix) -> CMatrix {
    a.kronecker(b)
}

pub fn frobenius(m: &CMatrix) -> f64 {
    m.norm()
}

/// `‖M*M − I‖_F`
pub fn unitarity_residual(m: &CMatrix) -> f64 {
    let n = m.ncols();
    (m.adjoint() * m - CMatrix::identity(n, n)).norm()
}

/// Block-diagonal `a ⊕ b`.
pub fn direct_sum(a: &CMatrix, b: &CMatrix) -> CMatrix {
    let (n, m) = (a.nrows(), b.nrows());
    let mut out = CMatrix::zeros(n + m, n + m);
    out.view_mut((0, 0), (n, n)).copy_from(a);
    out.view_mut((n, n), (m, m)).copy_from(b);
    out
}

/// Permutation `P` with `P (a ⊗ b) Pᵀ = b ⊗ a` for `a` of size `p` and `b` of size `q`.
pub fn commutation(p: usize, q: usize) -> CMatrix {
    let mut out = CMatrix::zeros(p * q, p * q);
    for i in 0..p {
        for j in 0..q {
            out[(j * p + i, i * q + j)] = C64::new(1.0, 0.0);
        }
    }
    out
}

/// Orthonormal basis of `C^n` whose first vectors span the given vectors in
/// order (Gram–Schmidt, dependent vectors skipped), completed with standard
/// basis vectors. Columns of the returned unitary.
pub fn complete_frame(vectors: &[CVector], n: usize) -> CMatrix {
    let mut frame: Vec<CVector> = Vec::with_capacity(n);
    let candidates = vectors.iter().cloned().chain((0..n).map(|k| {
        let mut e = CVector::zeros(n);
        e[k] = C64::new(1.0, 0.0);
        e
    }));
    for v in candidates {
        if frame.len() == n {
            break;
        }
        let norm0 = v.norm();
        if norm0 == 0.0 {
            continue;
        }
        let mut w = v;
        // two passes of modified Gram–Schmidt
        for _ in 0..2 {
            for f in &frame {
                let proj = f.dotc(&w);
                w -= f * proj;
            }
        }
        let norm = w.norm();
        if norm > 1e-10 * norm0.max(1.0) {
            frame.push(w / C64::new(norm, 0.0));
        }
    }
    CMatrix::from_columns(&frame)
}

/// Greedy nearest-neighbour matching distance between two eigenvalue multisets.
pub fn multiset_distance(a: &[C64], b: &[C64]) -> f64 {
    if a.len() != b.len() {
        return f64::INFINITY;
    }
    let mut pool: Vec<C64> = b.to_vec();
    let mut worst: f64 = 0.0;
    for x in a {
        let (idx, d) = pool
            .iter()
            .enumerate()
            .map(|(i, y)| (i, (x - y).norm()))
            .fold((0, f64::INFINITY), |acc, v| if v.1 < acc.1 { v } else { acc });
        worst = worst.max(d);
        pool.swap_remove(idx);
    }
    worst
}

/// Singular values in decreasing order.
pub fn singular_values(m: &CMatrix) -> Vec<f64> {
    let mut s: Vec<f64> = m.clone().svd(false, false).singular_values.iter().copied().collect();
    s.sort_by(|a, b| b.partial_cmp(a).unwrap());
    s
}

pub fn outer(x: &CVector, y: &CVector) -> CMatrix {
    x * y.adjoint()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn commutation_swaps_kronecker_factors() {
        let a = CMatrix::from_fn(2, 2, |i, j| C64::new((i + 2 * j) as f64, 1.0));
        let b = CMatrix::from_fn(3, 3, |i, j| C64::new(i as f64 - j as f64, 0.5 * j as f64));
        let p = commutation(2, 3);
        let lhs = &p * kron(&a, &b) * p.transpose();
        assert!((lhs - kron(&b, &a)).norm() < 1e-14);
    }

    #[test]
    fn frame_completion_is_unitary() {
        let v = CVector::from_vec(vec![C64::new(1.0, 1.0), C64::new(0.0, 2.0), C64::new(-1.0, 0.0)]);
        let w = CVector::from_vec(vec![C64::new(0.0, 1.0), C64::new(1.0, 0.0), C64::new(0.0, 0.0)]);
        let f = complete_frame(&[v.clone(), w], 3);
        assert!(unitarity_residual(&f) < 1e-13);
        let first = f.column(0).into_owned();
        assert!((first * C64::new(v.norm(), 0.0) - v).norm() < 1e-13);
    }

    #[test]
    fn eigenvalues_of_triangular() {
        let m = CMatrix::from_row_slice(
            2,
            2,
            &[
                C64::new(1.0, 0.0),
                C64::new(5.0, 0.0),
                C64::new(0.0, 0.0),
                C64::new(0.0, 2.0),
            ],
        );
        let ev = eigenvalues(&m).unwrap();
        assert!(multiset_distance(&ev, &[C64::new(1.0, 0.0), C64::new(0.0, 2.0)]) < 1e-12);
    }
}
