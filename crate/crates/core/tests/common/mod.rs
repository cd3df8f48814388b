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

//! Reference computations for the integration tests. They avoid the
//! library's own kernels: products are naive triple loops and embeddings
//! are built entry by entry from the bit pattern.

#![allow(dead_code)]

use nucirc::synth::GateNetlist;
use nucirc::{Complex, Matrix};
use rand::Rng;

pub type C = Complex<f64>;

pub fn re(x: f64) -> C {
    C::new(x, 0.0)
}

pub fn naive_mul(a: &Matrix, b: &Matrix) -> Matrix {
    assert_eq!(a.cols(), b.rows());
    let mut out = Matrix::zeros(a.rows(), b.cols());
    for i in 0..a.rows() {
        for j in 0..b.cols() {
            let mut acc = C::new(0.0, 0.0);
            for k in 0..a.cols() {
                acc += a[(i, k)] * b[(k, j)];
            }
            out[(i, j)] = acc;
        }
    }
    out
}

pub fn naive_adjoint(a: &Matrix) -> Matrix {
    let mut out = Matrix::zeros(a.cols(), a.rows());
    for i in 0..a.rows() {
        for j in 0..a.cols() {
            out[(j, i)] = a[(i, j)].conj();
        }
    }
    out
}

pub fn max_diff(a: &Matrix, b: &Matrix) -> f64 {
    assert_eq!((a.rows(), a.cols()), (b.rows(), b.cols()));
    let mut worst = 0.0f64;
    for i in 0..a.rows() {
        for j in 0..a.cols() {
            worst = worst.max((a[(i, j)] - b[(i, j)]).norm());
        }
    }
    worst
}

/// Local index of register index `i`: `targets[0]` is the most significant
/// local bit.
fn local_index(i: usize, targets: &[usize]) -> usize {
    targets.iter().fold(0, |acc, &q| acc << 1 | (i >> q & 1))
}

/// Full-register matrix of `op` on `targets`, entry by entry.
pub fn embed(op: &Matrix, targets: &[usize], n: usize) -> Matrix {
    let dim = 1 << n;
    let mask: usize = targets.iter().map(|&q| 1usize << q).sum();
    let mut out = Matrix::zeros(dim, dim);
    for i in 0..dim {
        for j in 0..dim {
            if i & !mask == j & !mask {
                out[(i, j)] = op[(local_index(i, targets), local_index(j, targets))];
            }
        }
    }
    out
}

/// Register operator of a netlist with ancillas projected onto `|0>`.
pub fn netlist_product(net: &GateNetlist<f64>) -> Matrix {
    let n = net.n_qubits();
    let mut acc = Matrix::identity(1 << n);
    for g in &net.gates {
        acc = naive_mul(&embed(g.gate.matrix(), &g.targets, n), &acc);
    }
    let d = 1 << net.n_data;
    let mut out = Matrix::zeros(d, d);
    for i in 0..d {
        for j in 0..d {
            out[(i, j)] = acc[(i, j)];
        }
    }
    out
}

pub fn random_matrix<R: Rng>(rng: &mut R, dim: usize) -> Matrix {
    let data = (0..dim * dim)
        .map(|_| C::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)))
        .collect();
    Matrix::new(dim, dim, data).unwrap()
}

/// Largest singular value by power iteration on `A^dagger A`.
pub fn top_singular_value(a: &Matrix) -> f64 {
    let g = naive_mul(&naive_adjoint(a), a);
    let n = g.rows();
    let mut v: Vec<C> = (0..n).map(|i| C::new(1.0 + i as f64 * 0.37, 0.1 * i as f64)).collect();
    let mut lambda = 0.0;
    for _ in 0..2000 {
        let w: Vec<C> = (0..n).map(|i| (0..n).map(|k| g[(i, k)] * v[k]).sum()).collect();
        let norm = w.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if norm == 0.0 {
            return 0.0;
        }
        lambda = norm;
        v = w.into_iter().map(|z| z / norm).collect();
    }
    lambda.sqrt()
}

pub fn nand_matrix() -> Matrix {
    let s = 1.0 / 3f64.sqrt();
    Matrix::from_real(
        4,
        4,
        &[0., 0., 0., s, 0., 0., 0., 0., s, s, s, 0., 0., 0., 0., 0.],
    )
    .unwrap()
}

pub fn al_matrix() -> Matrix {
    let s = 1.0 / 6f64.sqrt();
    Matrix::from_real(
        4,
        4,
        &[0., -s, s, 0., 0., s, 0., s, 0., -s, s, 0., 0., s, 0., s],
    )
    .unwrap()
}

pub fn al_failure_literal() -> Matrix {
    let s = 1.0 / 6f64.sqrt();
    Matrix::from_real(
        4,
        4,
        &[1., 0., 0., 0., 0., 0., 0., 0., 0., s, 2. * s, 0., 0., -s, 0., 2. * s],
    )
    .unwrap()
}

/// Failure operator of the NAND pair: `(1/3)` times the bordered matrix
/// with `2+a` on the diagonal, `a-1` off it and `3b` in the corner.
pub fn nand_m1_closed(c: f64) -> Matrix {
    let a = (1.0 - c * c).sqrt();
    let b = (1.0 - c * c / 3.0).sqrt();
    let (d, o) = ((2.0 + a) / 3.0, (a - 1.0) / 3.0);
    Matrix::from_real(4, 4, &[d, o, o, 0., o, d, o, 0., o, o, d, 0., 0., 0., 0., b]).unwrap()
}

/// Reversing operator of the NAND pair for reversal strength `q`.
pub fn nand_r0_closed(c: f64, q: f64) -> Matrix {
    let a = (1.0 - c * c).sqrt();
    let b = (1.0 - c * c / 3.0).sqrt();
    let k = q / (3.0 * a);
    let (d, o) = (k * (1.0 + 2.0 * a), k * (1.0 - a));
    Matrix::from_real(4, 4, &[d, o, o, 0., o, d, o, 0., o, o, d, 0., 0., 0., 0., k * 3.0 * a / b]).unwrap()
}
