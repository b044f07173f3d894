//! Dense complex linear algebra for small Hilbert spaces.
//!
//! Matrices are `nalgebra::DMatrix<Complex64>`. Hermitian eigenproblems use a
//! closed form for qubits and nalgebra's symmetric eigensolver otherwise; the
//! result is then put into a canonical form (descending eigenvalues, fixed
//! eigenvector phases, a deterministic basis inside degenerate eigenspaces) so
//! that everything built on top of it is reproducible.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use crate::error::{Error, Result};

pub type ComplexMatrix = DMatrix<Complex64>;
pub type ComplexVector = DVector<Complex64>;

/// Numerical tolerances shared across the crate.
pub mod tolerance {
    /// Hermiticity, max-entry deviation.
    pub const HERMITIAN: f64 = 1e-9;
    /// Unit trace / unit norm.
    pub const TRACE: f64 = 1e-9;
    /// Smallest admissible eigenvalue of a density matrix is `-PSD`.
    pub const PSD: f64 = 1e-9;
    /// Unitarity, max-entry deviation of `U U^dagger` from identity.
    pub const UNITARY: f64 = 1e-8;
    /// Eigen reconstruction, Frobenius norm.
    pub const EIGEN: f64 = 1e-8;
    /// Measurement completeness, Frobenius norm of `sum Omega^dagger Omega - I`.
    pub const COMPLETENESS: f64 = 1e-8;
    /// Outcomes less likely than this cannot be conditioned on.
    pub const PROBABILITY: f64 = 1e-14;
    /// Eigenvalues closer than this (relative to max(1, |lambda|)) are treated as degenerate.
    pub const EIGEN_TIE: f64 = 1e-10;
}

pub const I: Complex64 = Complex64::new(0.0, 1.0);

#[inline]
pub fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

#[inline]
pub fn real(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

pub fn identity(n: usize) -> ComplexMatrix {
    ComplexMatrix::identity(n, n)
}

pub fn zeros(n: usize) -> ComplexMatrix {
    ComplexMatrix::zeros(n, n)
}

pub fn pauli_x() -> ComplexMatrix {
    ComplexMatrix::from_row_slice(2, 2, &[real(0.0), real(1.0), real(1.0), real(0.0)])
}

pub fn pauli_y() -> ComplexMatrix {
    ComplexMatrix::from_row_slice(2, 2, &[real(0.0), -I, I, real(0.0)])
}

pub fn pauli_z() -> ComplexMatrix {
    ComplexMatrix::from_row_slice(2, 2, &[real(1.0), real(0.0), real(0.0), real(-1.0)])
}

pub fn diagonal(values: &[f64]) -> ComplexMatrix {
    let n = values.len();
    let mut m = zeros(n);
    for (i, &v) in values.iter().enumerate() {
        m[(i, i)] = real(v);
    }
    m
}

pub fn commutator(a: &ComplexMatrix, b: &ComplexMatrix) -> ComplexMatrix {
    a * b - b * a
}

pub fn anticommutator(a: &ComplexMatrix, b: &ComplexMatrix) -> ComplexMatrix {
    a * b + b * a
}

/// `|u><v|`
pub fn outer(u: &ComplexVector, v: &ComplexVector) -> ComplexMatrix {
    u * v.adjoint()
}

/// `(A + A^dagger) / 2`
pub fn hermitian_part(a: &ComplexMatrix) -> ComplexMatrix {
    (a + a.adjoint()) * real(0.5)
}

pub fn frobenius(a: &ComplexMatrix) -> f64 {
    a.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

pub fn max_abs(a: &ComplexMatrix) -> f64 {
    a.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

/// `Re Tr[A B]` without forming the product.
pub fn trace_product_re(a: &ComplexMatrix, b: &ComplexMatrix) -> f64 {
    let n = a.nrows();
    let mut acc = 0.0;
    for i in 0..n {
        for j in 0..n {
            acc += (a[(i, j)] * b[(j, i)]).re;
        }
    }
    acc
}

pub fn is_finite(a: &ComplexMatrix) -> bool {
    a.iter().all(|z| z.re.is_finite() && z.im.is_finite())
}

pub fn ensure_square(a: &ComplexMatrix) -> Result<usize> {
    if a.nrows() != a.ncols() {
        return Err(Error::NotSquare {
            rows: a.nrows(),
            cols: a.ncols(),
        });
    }
    Ok(a.nrows())
}

pub fn hermiticity_defect(a: &ComplexMatrix) -> f64 {
    let n = a.nrows();
    let mut worst = 0.0f64;
    for i in 0..n {
        for j in i..n {
            worst = worst.max((a[(i, j)] - a[(j, i)].conj()).norm());
        }
    }
    worst
}

/// Eigendecomposition of a Hermitian matrix in canonical form.
///
/// Eigenvalues are sorted in descending order. Inside an eigenspace whose
/// eigenvalues agree to [`tolerance::EIGEN_TIE`] the basis is rebuilt by
/// pivoted Gram-Schmidt on the projected standard basis vectors, ordered by
/// pivot index. Every eigenvector is phase-fixed so that its first component
/// of magnitude above `1e-10` is real and positive.
#[derive(Clone, Debug)]
pub struct Spectrum {
    pub values: Vec<f64>,
    /// Eigenvectors as columns, in the order of `values`.
    pub vectors: ComplexMatrix,
}

impl Spectrum {
    pub fn dim(&self) -> usize {
        self.values.len()
    }

    pub fn vector(&self, j: usize) -> ComplexVector {
        self.vectors.column(j).into_owned()
    }

    pub fn max(&self) -> f64 {
        self.values[0]
    }

    pub fn min(&self) -> f64 {
        self.values[self.values.len() - 1]
    }

    /// `V f(Lambda) V^dagger`
    pub fn reconstruct_with<F: Fn(f64) -> Complex64>(&self, f: F) -> ComplexMatrix {
        let n = self.dim();
        let mut scaled = self.vectors.clone();
        for j in 0..n {
            let w = f(self.values[j]);
            for i in 0..n {
                scaled[(i, j)] *= w;
            }
        }
        scaled * self.vectors.adjoint()
    }

    pub fn reconstruct(&self) -> ComplexMatrix {
        self.reconstruct_with(real)
    }
}

/// Eigendecomposition of a matrix assumed Hermitian. Only the upper triangle
/// and the real part of the diagonal are trusted for qubits; callers that
/// need validation go through [`crate::state::eig_hermitian`].
pub fn hermitian_spectrum(a: &ComplexMatrix) -> Spectrum {
    let n = a.nrows();
    let (values, vectors) = match n {
        0 => (Vec::new(), zeros(0)),
        1 => (vec![a[(0, 0)].re], identity(1)),
        2 => qubit_eigen(a),
        _ => {
            let eig = nalgebra::SymmetricEigen::new(hermitian_part(a));
            (eig.eigenvalues.iter().copied().collect(), eig.eigenvectors)
        }
    };
    canonicalize(values, vectors)
}

fn qubit_eigen(a: &ComplexMatrix) -> (Vec<f64>, ComplexMatrix) {
    let p = a[(0, 0)].re;
    let q = a[(1, 1)].re;
    let b = (a[(0, 1)] + a[(1, 0)].conj()) * 0.5;
    let mid = 0.5 * (p + q);
    let h = 0.5 * (p - q);
    let r = h.hypot(b.norm());
    if r == 0.0 {
        return (vec![mid, mid], identity(2));
    }
    // Top eigenvector of [[h, b], [b*, -h]]; pick the well-conditioned form.
    let (v0, v1) = if h >= 0.0 {
        (real(h + r), b.conj())
    } else {
        (b, real(r - h))
    };
    let norm = (v0.norm_sqr() + v1.norm_sqr()).sqrt();
    let (v0, v1) = (v0 / norm, v1 / norm);
    let vectors = ComplexMatrix::from_row_slice(2, 2, &[v0, -v1.conj(), v1, v0.conj()]);
    (vec![mid + r, mid - r], vectors)
}

fn canonicalize(values: Vec<f64>, vectors: ComplexMatrix) -> Spectrum {
    let n = values.len();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| values[j].total_cmp(&values[i]));
    let mut sorted_values: Vec<f64> = order.iter().map(|&i| values[i]).collect();
    let mut sorted_vectors = zeros(n);
    for (dst, &src) in order.iter().enumerate() {
        sorted_vectors.set_column(dst, &vectors.column(src));
    }

    let mut start = 0;
    while start < n {
        let mut end = start + 1;
        while end < n && is_tie(sorted_values[end - 1], sorted_values[end]) {
            end += 1;
        }
        if end - start > 1 {
            let block = sorted_vectors.columns(start, end - start).into_owned();
            let projector = &block * block.adjoint();
            let basis = range_basis(&projector, end - start);
            for (k, v) in basis.into_iter().enumerate() {
                sorted_vectors.set_column(start + k, &v);
            }
            // Degenerate eigenvalues share their mean so reconstruction stays symmetric.
            let mean = sorted_values[start..end].iter().sum::<f64>() / (end - start) as f64;
            sorted_values[start..end].iter_mut().for_each(|v| *v = mean);
        }
        start = end;
    }

    for j in 0..n {
        let mut col = sorted_vectors.column(j).into_owned();
        fix_phase(&mut col);
        sorted_vectors.set_column(j, &col);
    }

    Spectrum {
        values: sorted_values,
        vectors: sorted_vectors,
    }
}

fn is_tie(a: f64, b: f64) -> bool {
    (a - b).abs() <= tolerance::EIGEN_TIE * a.abs().max(b.abs()).max(1.0)
}

/// Rotate the global phase so the first component above `1e-10` in magnitude is real positive.
pub fn fix_phase(v: &mut ComplexVector) {
    if let Some(z) = v.iter().find(|z| z.norm() > 1e-10).copied() {
        let phase = z.conj() / z.norm();
        v.iter_mut().for_each(|x| *x *= phase);
    }
}

/// Deterministic orthonormal basis of the range of an orthogonal projector of
/// rank `rank`: pivoted Gram-Schmidt over its columns (the projected standard
/// basis vectors), returned in ascending pivot order.
pub fn range_basis(projector: &ComplexMatrix, rank: usize) -> Vec<ComplexVector> {
    let n = projector.nrows();
    let mut residuals: Vec<ComplexVector> = (0..n).map(|j| projector.column(j).into_owned()).collect();
    let mut picked: Vec<(usize, ComplexVector)> = Vec::with_capacity(rank);
    let mut used = vec![false; n];
    for _ in 0..rank.min(n) {
        let mut best: Option<(usize, f64)> = None;
        for j in 0..n {
            if used[j] {
                continue;
            }
            let norm = residuals[j].norm();
            // Near-equal pivots resolve to the lowest index.
            match best {
                Some((_, b)) if norm <= b * (1.0 + 1e-9) => {}
                _ => best = Some((j, norm)),
            }
        }
        let Some((j, norm)) = best else { break };
        if norm < 1e-12 {
            break;
        }
        used[j] = true;
        let q = &residuals[j] / real(norm);
        for (k, r) in residuals.iter_mut().enumerate() {
            if !used[k] {
                let overlap = q.dotc(r);
                *r -= &q * overlap;
            }
        }
        picked.push((j, q));
    }
    picked.sort_by_key(|(j, _)| *j);
    picked.into_iter().map(|(_, v)| v).collect()
}

/// Deterministic orthonormal basis of the orthogonal complement of the span
/// of the given orthonormal columns.
pub fn complement_basis(columns: &ComplexMatrix) -> Vec<ComplexVector> {
    let n = columns.nrows();
    let rank = columns.ncols();
    let projector = identity(n) - columns * columns.adjoint();
    range_basis(&projector, n - rank)
}

/// Matrix square root of a Hermitian positive semidefinite matrix (negative
/// eigenvalues clipped to zero).
pub fn psd_sqrt(a: &ComplexMatrix) -> ComplexMatrix {
    hermitian_spectrum(a).reconstruct_with(|x| real(x.max(0.0).sqrt()))
}

/// `Omega = U P` with `P = sqrt(Omega^dagger Omega)` and `U` unitary. On the
/// kernel, `U` maps the canonical basis of `ker Omega` onto the canonical
/// basis of `(ran Omega)^perp`, so positive `Omega` yields `U = I`.
pub fn polar_decomposition(omega: &ComplexMatrix) -> (ComplexMatrix, ComplexMatrix) {
    let n = omega.nrows();
    let svd = omega.clone().svd(true, true);
    let w = svd.u.expect("left singular vectors requested");
    let v = svd.v_t.expect("right singular vectors requested").adjoint();
    let s = &svd.singular_values;
    let smax = s.iter().copied().fold(0.0, f64::max);
    let cutoff = 1e-12 * smax.max(f64::MIN_POSITIVE);
    let support: Vec<usize> = (0..n).filter(|&j| s[j] > cutoff).collect();

    let mut w_r = ComplexMatrix::zeros(n, support.len());
    let mut v_r = ComplexMatrix::zeros(n, support.len());
    for (k, &j) in support.iter().enumerate() {
        w_r.set_column(k, &w.column(j));
        v_r.set_column(k, &v.column(j));
    }
    let mut unitary = &w_r * v_r.adjoint();
    let kernel = complement_basis(&v_r);
    let corange = complement_basis(&w_r);
    for (a, b) in corange.iter().zip(kernel.iter()) {
        unitary += outer(a, b);
    }

    let mut positive = zeros(n);
    for (k, &j) in support.iter().enumerate() {
        let col = v_r.column(k).into_owned();
        positive += outer(&col, &col) * real(s[j]);
    }
    (unitary, positive)
}

/// Hermitian eigenvalues of `a` only.
pub fn eigenvalues(a: &ComplexMatrix) -> Vec<f64> {
    hermitian_spectrum(a).values
}
