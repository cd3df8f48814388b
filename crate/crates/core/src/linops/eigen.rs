// Copyright 2026 The nucirc Developers
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

use num_complex::Complex;
use num_traits::Zero;

use super::{adjoint, matmul, ComplexMatrix};
use crate::error::{Error, Result};
use crate::scalar::Real;

const MAX_SWEEPS: usize = 100;

/// Eigendecomposition `a = V diag(values) V^dagger` of a Hermitian matrix,
/// eigenvalues sorted descending and eigenvectors stored as columns.
#[derive(Clone, Debug)]
pub struct Eigh<T: Real> {
    pub values: Vec<T>,
    pub vectors: ComplexMatrix<T>,
}

impl<T: Real> Eigh<T> {
    /// Rebuilds `V f(diag) V^dagger` for a real function of the eigenvalues.
    pub fn reconstruct_with(&self, f: impl Fn(T) -> T) -> ComplexMatrix<T> {
        let n = self.values.len();
        let mut scaled = self.vectors.clone();
        for j in 0..n {
            let fj = f(self.values[j]);
            for i in 0..n {
                scaled[(i, j)] *= fj;
            }
        }
        matmul(&scaled, &adjoint(&self.vectors)).expect("square")
    }

    pub fn reconstruct(&self) -> ComplexMatrix<T> {
        self.reconstruct_with(|x| x)
    }
}

/// Unitary 2x2 rotation acting on columns `p < q` that annihilates the
/// `(p, q)` entry of a Hermitian matrix with the given pivot entries.
#[derive(Clone, Copy)]
pub(super) struct Rotation<T> {
    pub pp: Complex<T>,
    pub pq: Complex<T>,
    pub qp: Complex<T>,
    pub qq: Complex<T>,
}

impl<T: Real> Rotation<T> {
    pub fn annihilating(app: T, aqq: T, apq: Complex<T>) -> Self {
        let r = apq.norm();
        // Phase e^{-i phi} makes the pivot real, then a real Jacobi rotation.
        let phase = apq.conj() / r;
        let theta = (aqq - app) / (T::lit(2.0) * r);
        let t = {
            let mag = T::one() / (theta.abs() + (theta * theta + T::one()).sqrt());
            if theta < T::zero() {
                -mag
            } else {
                mag
            }
        };
        let c = T::one() / (t * t + T::one()).sqrt();
        let s = t * c;
        Rotation {
            pp: Complex::new(c, T::zero()),
            pq: Complex::new(s, T::zero()),
            qp: phase * (-s),
            qq: phase * c,
        }
    }

    /// `m <- m G` on columns `p`, `q`.
    pub fn apply_right(&self, m: &mut ComplexMatrix<T>, p: usize, q: usize) {
        for k in 0..m.rows() {
            let mkp = m[(k, p)];
            let mkq = m[(k, q)];
            m[(k, p)] = mkp * self.pp + mkq * self.qp;
            m[(k, q)] = mkp * self.pq + mkq * self.qq;
        }
    }

    /// `m <- G^dagger m` on rows `p`, `q`.
    pub fn apply_left_adjoint(&self, m: &mut ComplexMatrix<T>, p: usize, q: usize) {
        for k in 0..m.cols() {
            let mpk = m[(p, k)];
            let mqk = m[(q, k)];
            m[(p, k)] = self.pp.conj() * mpk + self.qp.conj() * mqk;
            m[(q, k)] = self.pq.conj() * mpk + self.qq.conj() * mqk;
        }
    }
}

fn off_diagonal_sq<T: Real>(a: &ComplexMatrix<T>) -> T {
    let n = a.rows();
    let mut off = T::zero();
    for i in 0..n {
        for j in (i + 1)..n {
            off += a[(i, j)].norm_sqr();
        }
    }
    off
}

/// Hermitian eigendecomposition by cyclic complex Jacobi rotations.
pub fn eigh<T: Real>(a: &ComplexMatrix<T>) -> Result<Eigh<T>> {
    if !a.is_square() {
        return Err(Error::Shape(format!(
            "eigh needs a square matrix, got {}x{}",
            a.rows(),
            a.cols()
        )));
    }
    let dev = a.hermitian_deviation();
    if dev > T::exact_tol() {
        return Err(Error::NotHermitian(dev.as_f64()));
    }
    let n = a.rows();
    let half = T::lit(0.5);
    let mut work = a.add(&adjoint(a))?.scale_real(half);
    let mut vectors = ComplexMatrix::identity(n);

    let total: T = work.as_slice().iter().map(|z| z.norm_sqr()).sum();
    let stop = total * T::epsilon() * T::epsilon();

    for _ in 0..MAX_SWEEPS {
        if off_diagonal_sq(&work) <= stop {
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = work[(p, q)];
                if apq.norm_sqr() <= stop / T::lit((n * n) as f64) {
                    continue;
                }
                let rot = Rotation::annihilating(work[(p, p)].re, work[(q, q)].re, apq);
                rot.apply_right(&mut work, p, q);
                rot.apply_left_adjoint(&mut work, p, q);
                work[(p, q)] = Complex::zero();
                work[(q, p)] = Complex::zero();
                work[(p, p)] = Complex::new(work[(p, p)].re, T::zero());
                work[(q, q)] = Complex::new(work[(q, q)].re, T::zero());
                rot.apply_right(&mut vectors, p, q);
            }
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| {
        work[(j, j)]
            .re
            .partial_cmp(&work[(i, i)].re)
            .unwrap_or(std::cmp::Ordering::Equal)
    });
    let values = order.iter().map(|&i| work[(i, i)].re).collect();
    let mut sorted = ComplexMatrix::zeros(n, n);
    for (dst, &src) in order.iter().enumerate() {
        for i in 0..n {
            sorted[(i, dst)] = vectors[(i, src)];
        }
    }
    Ok(Eigh {
        values,
        vectors: sorted,
    })
}

/// Principal square root of a Hermitian positive semidefinite matrix.
///
/// Eigenvalues in `[-exact_tol, 0)` are clamped to zero; anything more
/// negative is rejected.
pub fn sqrtm_psd<T: Real>(a: &ComplexMatrix<T>) -> Result<ComplexMatrix<T>> {
    let e = eigh(a)?;
    if let Some(&min) = e.values.last() {
        if min < -T::exact_tol() {
            return Err(Error::NotPsd(min.as_f64()));
        }
    }
    Ok(e.reconstruct_with(|x| x.max(T::zero()).sqrt()))
}

/// Inverse of a Hermitian positive definite matrix through its eigenbasis.
/// Eigenvalues below `inverse_floor` make the matrix count as singular.
pub fn inverse_psd<T: Real>(a: &ComplexMatrix<T>) -> Result<ComplexMatrix<T>> {
    let e = eigh(a)?;
    if let Some(&min) = e.values.last() {
        if min < T::inverse_floor() {
            return Err(Error::Singular(min.as_f64()));
        }
    }
    Ok(e.reconstruct_with(|x| T::one() / x))
}
