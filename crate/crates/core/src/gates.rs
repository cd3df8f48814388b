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

//! Gate library.
//!
//! Every gate carries its matrix together with the metadata the measurement
//! layer needs: whether it is unitary, the factor it was divided by to bring
//! its largest singular value to one, and whether it is logically reversible
//! (nonzero determinant).

use std::fmt;

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::linops::{svd, ComplexMatrix};
use crate::scalar::Real;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GateKind {
    Unitary,
    Nonunitary,
}

#[derive(Clone, Debug)]
pub struct GateSpec<T: Real> {
    label: String,
    arity: usize,
    matrix: ComplexMatrix<T>,
    kind: GateKind,
    normalization_scale: T,
    reversible: bool,
}

impl<T: Real> GateSpec<T> {
    /// Wraps a matrix whose largest singular value is already one (or which
    /// is unitary). `scale` is the factor that was divided out to get there.
    fn assemble(label: String, matrix: ComplexMatrix<T>, scale: T) -> Result<Self> {
        let arity = matrix.qubit_count().ok_or_else(|| {
            Error::Shape(format!(
                "gate matrix must be 2^k x 2^k, got {}x{}",
                matrix.rows(),
                matrix.cols()
            ))
        })?;
        if arity == 0 {
            return Err(Error::Shape("gate must act on at least one qubit".into()));
        }
        let kind = if matrix.is_unitary(T::factor_tol()) {
            GateKind::Unitary
        } else {
            GateKind::Nonunitary
        };
        let s = svd(&matrix)?.s;
        let reversible = s.last().is_some_and(|&m| m > T::inverse_floor());
        Ok(GateSpec {
            label,
            arity,
            matrix,
            kind,
            normalization_scale: scale,
            reversible,
        })
    }

    /// Divides `matrix` by its largest singular value.
    pub fn normalized(label: impl Into<String>, matrix: &ComplexMatrix<T>) -> Result<Self> {
        if !matrix.is_square() {
            return Err(Error::Shape(format!(
                "gate matrix must be square, got {}x{}",
                matrix.rows(),
                matrix.cols()
            )));
        }
        let top = svd(matrix)?.s[0];
        if !(top > T::annihilation_tol()) {
            return Err(Error::ZeroMatrix);
        }
        Self::assemble(label.into(), matrix.scale_real(T::one() / top), top)
    }

    /// A unitary gate; rejects matrices that are not unitary within the
    /// factorization tolerance.
    pub fn unitary(label: impl Into<String>, matrix: ComplexMatrix<T>) -> Result<Self> {
        let dev = matrix.unitarity_deviation();
        if dev > T::factor_tol() {
            return Err(Error::InvalidParameter(format!(
                "matrix is not unitary (deviation {:e})",
                dev.as_f64()
            )));
        }
        Self::assemble(label.into(), matrix, T::one())
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn matrix(&self) -> &ComplexMatrix<T> {
        &self.matrix
    }

    pub fn kind(&self) -> GateKind {
        self.kind
    }

    pub fn is_unitary(&self) -> bool {
        self.kind == GateKind::Unitary
    }

    /// Factor the source matrix was divided by to satisfy the unit
    /// largest-singular-value normalization.
    pub fn normalization_scale(&self) -> T {
        self.normalization_scale
    }

    /// `det != 0`: no input state is annihilated.
    pub fn is_reversible(&self) -> bool {
        self.reversible
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = label.into();
        self
    }
}

impl<T: Real> fmt::Display for GateSpec<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label)
    }
}

fn fmt_param<T: Real>(x: T) -> String {
    format!("{}", x.as_f64())
}

fn check_unit_interval<T: Real>(name: &str, a: T, closed: bool) -> Result<()> {
    let ok = a >= T::zero() && if closed { a <= T::one() } else { a < T::one() };
    if ok {
        Ok(())
    } else {
        Err(Error::InvalidParameter(format!(
            "{name} parameter {a} outside [0, 1{}",
            if closed { "]" } else { ")" }
        )))
    }
}

fn n1_matrix<T: Real>(a: T) -> ComplexMatrix<T> {
    ComplexMatrix::from_real_diag(&[T::one(), a])
}

fn u1_matrix<T: Real>(a: T) -> ComplexMatrix<T> {
    let b = (T::one() - a * a).max(T::zero()).sqrt();
    let r = |x: T| Complex::new(x, T::zero());
    ComplexMatrix::new(2, 2, vec![r(a), r(b), r(b), r(-a)]).expect("2x2")
}

/// `diag(1, a)`, the one-qubit nonunitary primitive.
pub fn n1<T: Real>(a: T) -> Result<GateSpec<T>> {
    check_unit_interval("N1", a, false)?;
    GateSpec::assemble(format!("N1({})", fmt_param(a)), n1_matrix(a), T::one())
}

/// `[[a, sqrt(1-a^2)], [sqrt(1-a^2), -a]]`.
pub fn u1<T: Real>(a: T) -> Result<GateSpec<T>> {
    check_unit_interval("U1", a, true)?;
    GateSpec::assemble(format!("U1({})", fmt_param(a)), u1_matrix(a), T::one())
}

pub fn x<T: Real>() -> GateSpec<T> {
    GateSpec::assemble(
        "X".into(),
        ComplexMatrix::from_real(2, 2, &[0., 1., 1., 0.]).expect("2x2"),
        T::one(),
    )
    .expect("valid gate")
}

pub fn h<T: Real>() -> GateSpec<T> {
    let s = std::f64::consts::FRAC_1_SQRT_2;
    GateSpec::assemble(
        "H".into(),
        ComplexMatrix::from_real(2, 2, &[s, s, s, -s]).expect("2x2"),
        T::one(),
    )
    .expect("valid gate")
}

/// Block-diagonal controlled matrix: `base` acts on the low-order qubits
/// when all `n_controls` high-order qubits are 1.
pub fn controlled_matrix<T: Real>(base: &ComplexMatrix<T>, n_controls: usize) -> ComplexMatrix<T> {
    let k = base.rows();
    let dim = k << n_controls;
    let offset = dim - k;
    let mut m = ComplexMatrix::identity(dim);
    for i in 0..k {
        for j in 0..k {
            m[(offset + i, offset + j)] = base[(i, j)];
        }
    }
    m
}

/// `C^k[X]` with `k` controls; `CNOT` when `k = 1`.
pub fn ckx<T: Real>(n_controls: usize) -> Result<GateSpec<T>> {
    if n_controls == 0 {
        return Err(Error::InvalidParameter("control count must be at least 1".into()));
    }
    let label = if n_controls == 1 {
        "CNOT".to_string()
    } else {
        format!("CKX({n_controls})")
    };
    GateSpec::assemble(label, controlled_matrix(x::<T>().matrix(), n_controls), T::one())
}

pub fn cnot<T: Real>() -> GateSpec<T> {
    ckx(1).expect("one control")
}

/// Controlled-`N1(a)`: `diag(1, 1, 1, a)` in `|control target>` order.
pub fn cn1<T: Real>(a: T) -> Result<GateSpec<T>> {
    check_unit_interval("CN1", a, false)?;
    GateSpec::assemble(
        format!("CN1({})", fmt_param(a)),
        controlled_matrix(&n1_matrix(a), 1),
        T::one(),
    )
}

/// `C^k[N1(a)]` with `k >= 1` controls.
pub fn mcn1<T: Real>(a: T, n_controls: usize) -> Result<GateSpec<T>> {
    check_unit_interval("N1", a, false)?;
    if n_controls == 0 {
        return n1(a);
    }
    if n_controls == 1 {
        return cn1(a);
    }
    GateSpec::assemble(
        format!("C{}N1({})", n_controls, fmt_param(a)),
        controlled_matrix(&n1_matrix(a), n_controls),
        T::one(),
    )
}

pub fn cu1<T: Real>(a: T) -> Result<GateSpec<T>> {
    check_unit_interval("CU1", a, true)?;
    GateSpec::assemble(
        format!("CU1({})", fmt_param(a)),
        controlled_matrix(&u1_matrix(a), 1),
        T::one(),
    )
}

/// Diagonal gate `D(d_1, ..., d_{2^n})` with entries in `[0, 1]` and
/// largest entry 1.
pub fn diagonal<T: Real>(d: &[T]) -> Result<GateSpec<T>> {
    if d.is_empty() || !d.len().is_power_of_two() || d.len() < 2 {
        return Err(Error::InvalidParameter(format!(
            "D needs 2^n entries (n >= 1), got {}",
            d.len()
        )));
    }
    if let Some(bad) = d.iter().find(|&&x| !(x >= T::zero() && x <= T::one())) {
        return Err(Error::InvalidParameter(format!("D entry {bad} outside [0, 1]")));
    }
    let top = d.iter().copied().fold(T::zero(), T::max);
    if top < T::one() - T::exact_tol() {
        return Err(Error::InvalidParameter(
            "D needs at least one entry equal to 1".into(),
        ));
    }
    let params: Vec<String> = d.iter().map(|&x| fmt_param(x)).collect();
    GateSpec::assemble(
        format!("D({})", params.join(",")),
        ComplexMatrix::from_real_diag(d),
        T::one(),
    )
}

/// Two-qubit quantum NAND: `N|00> = N|01> = N|10> = |10>/sqrt(3)` and
/// `N|11> = |00>/sqrt(3)`.
pub fn nand<T: Real>() -> GateSpec<T> {
    let s = 1.0 / 3f64.sqrt();
    let m = ComplexMatrix::from_real(
        4,
        4,
        &[0., 0., 0., s, 0., 0., 0., 0., s, s, s, 0., 0., 0., 0., 0.],
    )
    .expect("4x4");
    GateSpec::assemble("NAND".into(), m, T::lit(3f64.sqrt())).expect("valid gate")
}

/// The 4x4 nonunitary gate reproducing the Abrams-Lloyd nonlinear map on
/// `(|00>+|11>)`, `(|01>+|10>)` and `(|00>+|10>)`.
pub fn abrams_lloyd<T: Real>() -> GateSpec<T> {
    let s = 1.0 / 6f64.sqrt();
    let m = ComplexMatrix::from_real(
        4,
        4,
        &[0., -s, s, 0., 0., s, 0., s, 0., -s, s, 0., 0., s, 0., s],
    )
    .expect("4x4");
    GateSpec::assemble("AL".into(), m, T::lit(6f64.sqrt())).expect("valid gate")
}

/// Normalizes an arbitrary square matrix into a gate.
pub fn normalize_gate<T: Real>(matrix: &ComplexMatrix<T>) -> Result<GateSpec<T>> {
    GateSpec::normalized("MAT", matrix)
}

fn parse_params<T: Real>(args: &str) -> Result<Vec<T>> {
    args.split(',')
        .map(|p| {
            p.trim()
                .parse::<f64>()
                .ok()
                .filter(|x| x.is_finite())
                .map(T::lit)
                .ok_or_else(|| Error::InvalidParameter(format!("invalid gate parameter '{p}'")))
        })
        .collect()
}

/// Parses `NAME` or `NAME(p1,p2,...)`.
pub fn split_label(label: &str) -> Result<(&str, Option<&str>)> {
    let label = label.trim();
    match label.find('(') {
        None => Ok((label, None)),
        Some(open) => {
            let args = label[open + 1..]
                .strip_suffix(')')
                .ok_or_else(|| Error::InvalidParameter(format!("unbalanced parentheses in '{label}'")))?;
            Ok((&label[..open], Some(args)))
        }
    }
}

/// Builds a gate from a textual label: `X`, `H`, `CNOT`, `CKX(k)`, `N1(a)`,
/// `U1(a)`, `CN1(a)`, `CU1(a)`, `D(d1,...)`, `NAND`, `AL`.
///
/// `MAT(file)` needs file access and is resolved by the circuit parser.
pub fn standard<T: Real>(label: &str) -> Result<GateSpec<T>> {
    let (name, args) = split_label(label)?;
    let one = |args: Option<&str>| -> Result<T> {
        let p = parse_params::<T>(args.ok_or_else(|| {
            Error::InvalidParameter(format!("{name} needs a parameter"))
        })?)?;
        match p.as_slice() {
            [a] => Ok(*a),
            _ => Err(Error::InvalidParameter(format!("{name} takes one parameter"))),
        }
    };
    let none = |g: GateSpec<T>| -> Result<GateSpec<T>> {
        match args {
            None => Ok(g),
            Some(_) => Err(Error::InvalidParameter(format!("{name} takes no parameters"))),
        }
    };
    match name {
        "X" => none(x()),
        "H" => none(h()),
        "CNOT" => none(cnot()),
        "NAND" => none(nand()),
        "AL" => none(abrams_lloyd()),
        "N1" => n1(one(args)?),
        "U1" => u1(one(args)?),
        "CN1" => cn1(one(args)?),
        "CU1" => cu1(one(args)?),
        "CKX" => {
            let k = args
                .and_then(|a| a.trim().parse::<usize>().ok())
                .ok_or_else(|| Error::InvalidParameter("CKX needs an integer control count".into()))?;
            ckx(k)
        }
        "D" => diagonal(&parse_params::<T>(args.ok_or_else(|| {
            Error::InvalidParameter("D needs diagonal entries".into())
        })?)?),
        _ => Err(Error::InvalidParameter(format!("unknown gate '{label}'"))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linops::matmul;
    use crate::qstate::StateVector;

    type G = GateSpec<f64>;
    type M = ComplexMatrix<f64>;

    fn top_sv(m: &M) -> f64 {
        svd(m).unwrap().s[0]
    }

    #[test]
    fn n1_examples() {
        let p = n1::<f64>(0.0).unwrap();
        assert_eq!(*p.matrix(), M::from_real_diag(&[1., 0.]));
        assert!(!p.is_reversible());
        assert_eq!(*n1::<f64>(0.5).unwrap().matrix(), M::from_real_diag(&[1., 0.5]));
        assert!((top_sv(n1::<f64>(0.9).unwrap().matrix()) - 1.0).abs() < 1e-15);
        assert!(n1::<f64>(1.0).is_err());
        assert!(n1::<f64>(-0.1).is_err());
        assert_eq!(n1::<f64>(0.5).unwrap().kind(), GateKind::Nonunitary);
    }

    #[test]
    fn u1_examples() {
        assert_eq!(*u1::<f64>(1.0).unwrap().matrix(), M::from_real_diag(&[1., -1.]));
        let g = u1::<f64>(0.6).unwrap();
        assert!(g
            .matrix()
            .approx_eq(&M::from_real(2, 2, &[0.6, 0.8, 0.8, -0.6]).unwrap(), 1e-15));
        assert!(g.is_unitary());
        assert_eq!(*u1::<f64>(0.0).unwrap().matrix(), *x::<f64>().matrix());
        assert!(u1::<f64>(1.5).is_err());
    }

    #[test]
    fn standard_gates() {
        let out = StateVector::<f64>::basis(2, 2)
            .unwrap()
            .apply_embedded(cnot::<f64>().matrix(), &[1, 0])
            .unwrap();
        assert_eq!(out.amplitude(3).re, 1.0);

        let cn = standard::<f64>("CN1(0.3)").unwrap();
        assert_eq!(*cn.matrix(), M::from_real_diag(&[1., 1., 1., 0.3]));

        let d = standard::<f64>("D(0,0,0,1)").unwrap();
        assert_eq!(*d.matrix(), M::from_real_diag(&[0., 0., 0., 1.]));

        assert_eq!(standard::<f64>("CKX(2)").unwrap().arity(), 3);
        assert!(standard::<f64>("D(0.5,1.5)").is_err());
        assert!(standard::<f64>("D(0.5,0.5)").is_err());
        assert!(standard::<f64>("FOO").is_err());
        assert!(standard::<f64>("N1").is_err());
        assert!(standard::<f64>("X(1)").is_err());
        assert!(standard::<f64>("CKX(0)").is_err());
    }

    #[test]
    fn nand_examples() {
        let g = nand::<f64>();
        let out = StateVector::basis(2, 1).unwrap().apply_embedded(g.matrix(), &[1, 0]).unwrap();
        assert!((out.amplitude(2).re - 1.0 / 3f64.sqrt()).abs() < 1e-15);
        assert!((out.norm_sq() - 1.0 / 3.0).abs() < 1e-15);

        let wrong = StateVector::<f64>::from_real(2, &[1., -1., 0., 0.]).unwrap();
        assert!(wrong.apply_embedded(g.matrix(), &[1, 0]).unwrap().norm_sq() < 1e-30);
        assert!(!g.is_reversible());
        assert_eq!(g.kind(), GateKind::Nonunitary);
    }

    #[test]
    fn nand_truth_table_from_first_output_qubit() {
        let g = nand::<f64>();
        for (input, expect) in [(0b00, 1), (0b01, 1), (0b10, 1), (0b11, 0)] {
            let out = StateVector::basis(2, input)
                .unwrap()
                .apply_embedded(g.matrix(), &[1, 0])
                .unwrap()
                .normalize()
                .unwrap();
            let idx = (0..4).find(|&i| out.amplitude(i).norm() > 0.5).unwrap();
            assert_eq!(idx >> 1, expect, "input {input:02b}");
            assert_eq!(idx & 1, 0, "second output qubit is |0>");
        }
    }

    #[test]
    fn nand_kernel_is_exactly_two_dimensional() {
        let g = nand::<f64>();
        let s = svd(g.matrix()).unwrap().s;
        assert_eq!(s.iter().filter(|&&x| x < 1e-12).count(), 2);
        for w in [[1., -1., 0., 0.], [0., 1., -1., 0.]] {
            let v = StateVector::<f64>::from_real(2, &w).unwrap();
            assert!(v.apply_embedded(g.matrix(), &[1, 0]).unwrap().norm_sq() < 1e-30);
        }
    }

    #[test]
    fn abrams_lloyd_examples() {
        let g = abrams_lloyd::<f64>();
        let bell = StateVector::<f64>::from_real(2, &[1., 0., 0., 1.]).unwrap();
        let out = bell.apply_embedded(g.matrix(), &[1, 0]).unwrap();
        assert!((out.norm_sq() - 1.0 / 6.0).abs() < 1e-15);
        let r = 1.0 / 12f64.sqrt();
        assert!((out.amplitude(1).re - r).abs() < 1e-15 && (out.amplitude(3).re - r).abs() < 1e-15);

        let s = StateVector::<f64>::from_real(2, &[1., 0., 1., 0.]).unwrap();
        let out = s.apply_embedded(g.matrix(), &[1, 0]).unwrap();
        assert!((out.amplitude(0).re - r).abs() < 1e-15 && (out.amplitude(2).re - r).abs() < 1e-15);

        let out = StateVector::basis(2, 0).unwrap().apply_embedded(g.matrix(), &[1, 0]).unwrap();
        assert_eq!(out.norm_sq(), 0.0);
        assert!(!g.is_reversible());
    }

    #[test]
    fn normalize_gate_examples() {
        let g = normalize_gate(&M::identity(2).scale_real(2.0)).unwrap();
        assert!(g.matrix().approx_eq(&M::identity(2), 1e-15));
        assert!((g.normalization_scale() - 2.0).abs() < 1e-15);
        assert!(g.is_unitary());

        let raw = M::from_real(4, 4, &[0., 0., 0., 1., 0., 0., 0., 0., 1., 1., 1., 0., 0., 0., 0., 0.]).unwrap();
        let g = normalize_gate(&raw).unwrap();
        assert!(g.matrix().approx_eq(nand::<f64>().matrix(), 1e-12));
        assert!((g.normalization_scale() - 3f64.sqrt()).abs() < 1e-12);

        let raw = M::from_real(4, 4, &[0., -1., 1., 0., 0., 1., 0., 1., 0., -1., 1., 0., 0., 1., 0., 1.]).unwrap();
        let g = normalize_gate(&raw).unwrap();
        assert!(g.matrix().approx_eq(abrams_lloyd::<f64>().matrix(), 1e-12));
        assert!((g.normalization_scale() - 6f64.sqrt()).abs() < 1e-12);

        assert!(matches!(normalize_gate(&M::zeros(2, 2)), Err(Error::ZeroMatrix)));
    }

    #[test]
    fn x_conjugation_inverts_n1_parameter() {
        for a in [0.1, 0.5, 0.9] {
            let xm = x::<f64>();
            let conj = matmul(&matmul(xm.matrix(), n1(a).unwrap().matrix()).unwrap(), xm.matrix()).unwrap();
            assert_eq!(conj, M::from_real_diag(&[a, 1.]));
            // a * N1(1/a) written out literally
            let inv = M::from_real_diag(&[1., 1. / a]).scale_real(a);
            assert!(conj.approx_eq(&inv, 1e-15));
        }
    }

    #[test]
    fn every_named_nonunitary_gate_is_normalized() {
        let gates: Vec<G> = vec![
            nand(),
            abrams_lloyd(),
            n1(0.3).unwrap(),
            cn1(0.7).unwrap(),
            mcn1(0.2, 3).unwrap(),
            diagonal(&[0.2, 1.0, 0.4, 0.0]).unwrap(),
        ];
        for g in gates {
            assert!((top_sv(g.matrix()) - 1.0).abs() < 1e-9, "{}", g.label());
        }
    }

    #[test]
    fn single_precision_gates() {
        let g = nand::<f32>();
        assert!((svd(g.matrix()).unwrap().s[0] - 1.0).abs() < 1e-5);
    }
}
