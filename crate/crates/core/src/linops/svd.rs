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
use num_traits::{One, Zero};

use super::eigen::Rotation;
use super::{adjoint, ComplexMatrix};
use crate::error::{Error, Result};
use crate::scalar::Real;

const MAX_SWEEPS: usize = 100;

/// Singular value decomposition `a = u * diag(s) * v` with `u`, `v` unitary
/// and `s` sorted descending.
///
/// Note the convention: `v` is the right factor itself, not its adjoint.
#[derive(Clone, Debug)]
pub struct Svd<T: Real> {
    pub u: ComplexMatrix<T>,
    pub s: Vec<T>,
    pub v: ComplexMatrix<T>,
}

impl<T: Real> Svd<T> {
    pub fn reconstruct(&self) -> ComplexMatrix<T> {
        let n = self.s.len();
        let mut us = self.u.clone();
        for j in 0..n {
            for i in 0..n {
                us[(i, j)] *= self.s[j];
            }
        }
        us.matmul(&self.v).expect("square")
    }
}

fn column_dot<T: Real>(m: &ComplexMatrix<T>, p: usize, q: usize) -> Complex<T> {
    (0..m.rows()).fold(Complex::zero(), |acc, k| acc + m[(k, p)].conj() * m[(k, q)])
}

/// One-sided (Hestenes) Jacobi SVD of a square complex matrix.
pub fn svd<T: Real>(a: &ComplexMatrix<T>) -> Result<Svd<T>> {
    if !a.is_square() {
        return Err(Error::Shape(format!(
            "svd needs a square matrix, got {}x{}",
            a.rows(),
            a.cols()
        )));
    }
    let n = a.rows();
    let mut w = a.clone();
    let mut v = ComplexMatrix::identity(n);
    let eps = T::epsilon();

    for _ in 0..MAX_SWEEPS {
        let mut rotated = false;
        for p in 0..n {
            for q in (p + 1)..n {
                let alpha = column_dot(&w, p, p).re;
                let beta = column_dot(&w, q, q).re;
                let gamma = column_dot(&w, p, q);
                let g = gamma.norm();
                if g == T::zero() || g <= eps * (alpha * beta).sqrt() {
                    continue;
                }
                rotated = true;
                let rot = Rotation::annihilating(alpha, beta, gamma);
                rot.apply_right(&mut w, p, q);
                rot.apply_right(&mut v, p, q);
            }
        }
        if !rotated {
            break;
        }
    }

    let norms: Vec<T> = (0..n).map(|j| column_dot(&w, j, j).re.sqrt()).collect();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| {
        norms[j]
            .partial_cmp(&norms[i])
            .unwrap_or(std::cmp::Ordering::Equal)
    });
    let s: Vec<T> = order.iter().map(|&j| norms[j]).collect();
    let s_max = s.first().copied().unwrap_or(T::zero());
    let cutoff = s_max * eps * T::lit(n as f64);

    let mut u = ComplexMatrix::zeros(n, n);
    let mut v_sorted = ComplexMatrix::zeros(n, n);
    let mut filled = vec![false; n];
    for (dst, &src) in order.iter().enumerate() {
        for i in 0..n {
            v_sorted[(i, dst)] = v[(i, src)];
        }
        if s[dst] > cutoff && s[dst] > T::zero() {
            let inv = T::one() / s[dst];
            for i in 0..n {
                u[(i, dst)] = w[(i, src)] * inv;
            }
            filled[dst] = true;
        }
    }
    orthonormalize_columns(&mut u, &filled);

    Ok(Svd {
        u,
        s,
        v: adjoint(&v_sorted),
    })
}

/// Modified Gram-Schmidt over the columns in order. Columns not marked as
/// filled (or that collapse under projection) are completed with the
/// standard basis vector whose residual is largest.
fn orthonormalize_columns<T: Real>(u: &mut ComplexMatrix<T>, filled: &[bool]) {
    let n = u.rows();
    for j in 0..n {
        let mut col: Vec<Complex<T>> = u.column(j);
        let mut norm = T::zero();
        if filled[j] {
            project_out(u, j, &mut col);
            norm = vec_norm(&col);
        }
        if norm < T::lit(0.5) {
            let mut best = (T::zero(), Vec::new());
            for k in 0..n {
                let mut e = vec![Complex::zero(); n];
                e[k] = Complex::one();
                project_out(u, j, &mut e);
                let nk = vec_norm(&e);
                if nk > best.0 {
                    best = (nk, e);
                }
            }
            norm = best.0;
            col = best.1;
        }
        let inv = T::one() / norm;
        for i in 0..n {
            u[(i, j)] = col[i] * inv;
        }
    }
}

/// Removes the components along columns `0..j` of `u`.
fn project_out<T: Real>(u: &ComplexMatrix<T>, j: usize, col: &mut [Complex<T>]) {
    for _ in 0..2 {
        for k in 0..j {
            let proj = (0..col.len()).fold(Complex::zero(), |acc, i| acc + u[(i, k)].conj() * col[i]);
            for (i, x) in col.iter_mut().enumerate() {
                *x -= u[(i, k)] * proj;
            }
        }
    }
}

fn vec_norm<T: Real>(v: &[Complex<T>]) -> T {
    v.iter().map(|z| z.norm_sqr()).sum::<T>().sqrt()
}
