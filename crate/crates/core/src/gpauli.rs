//! Generalized Pauli (Weyl–Heisenberg) algebra on qutrits.
//!
//! A single-qutrit operator is kept in the normal form `X^x Z^z` with
//! `X|j> = |j+1>` and `Z|j> = ω^j |j>`. Every phase produced by reordering
//! follows from the single rule `Z^b X^u = ω^{bu} X^u Z^b`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{QecError, Result};

const HALF_SQRT3: f64 = 0.866_025_403_784_438_6;

/// The three cube roots of unity, indexed by exponent.
pub const OMEGA_POWERS: [Complex64; 3] = [
    Complex64::new(1.0, 0.0),
    Complex64::new(-0.5, HALF_SQRT3),
    Complex64::new(-0.5, -HALF_SQRT3),
];

/// Largest register [`PauliWord::to_matrix`] will expand.
pub const MATRIX_MAX_QUTRITS: usize = 3;

/// Exponent `k` of a phase `ω^k`, always reduced mod 3.
#[derive(
    Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize,
)]
#[serde(into = "u8", try_from = "u8")]
pub struct PhaseExp(u8);

impl PhaseExp {
    pub const ONE: PhaseExp = PhaseExp(0);
    pub const OMEGA: PhaseExp = PhaseExp(1);
    pub const OMEGA2: PhaseExp = PhaseExp(2);

    pub fn new(k: i64) -> Self {
        PhaseExp(k.rem_euclid(3) as u8)
    }

    pub fn get(self) -> u8 {
        self.0
    }

    pub fn is_one(self) -> bool {
        self.0 == 0
    }

    /// Complex conjugate, `ω^k -> ω^{-k}`.
    pub fn conj(self) -> Self {
        -self
    }

    pub fn to_complex(self) -> Complex64 {
        OMEGA_POWERS[self.0 as usize]
    }

    /// Nearest cube root of unity to `z`, with its distance.
    pub fn nearest(z: Complex64) -> (PhaseExp, f64) {
        (0..3)
            .map(|k| (PhaseExp(k), (z - OMEGA_POWERS[k as usize]).norm()))
            .min_by(|a, b| a.1.total_cmp(&b.1))
            .expect("three candidates")
    }
}

impl From<PhaseExp> for u8 {
    fn from(p: PhaseExp) -> u8 {
        p.0
    }
}

impl TryFrom<u8> for PhaseExp {
    type Error = String;
    fn try_from(k: u8) -> std::result::Result<Self, String> {
        if k < 3 {
            Ok(PhaseExp(k))
        } else {
            Err(format!("phase exponent {k} not in 0..3"))
        }
    }
}

impl Add for PhaseExp {
    type Output = PhaseExp;
    fn add(self, rhs: Self) -> Self {
        PhaseExp((self.0 + rhs.0) % 3)
    }
}

impl Sub for PhaseExp {
    type Output = PhaseExp;
    fn sub(self, rhs: Self) -> Self {
        PhaseExp((self.0 + 3 - rhs.0) % 3)
    }
}

impl Neg for PhaseExp {
    type Output = PhaseExp;
    fn neg(self) -> Self {
        PhaseExp((3 - self.0) % 3)
    }
}

impl Mul<u8> for PhaseExp {
    type Output = PhaseExp;
    fn mul(self, rhs: u8) -> Self {
        PhaseExp(((self.0 as u16 * rhs as u16) % 3) as u8)
    }
}

impl fmt::Display for PhaseExp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.0 {
            0 => write!(f, "1"),
            1 => write!(f, "ω"),
            _ => write!(f, "ω²"),
        }
    }
}

/// Single-qutrit operator `X^x Z^z`. Serializes as its label.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct QutritOp {
    x: u8,
    z: u8,
}

impl QutritOp {
    pub const I: QutritOp = QutritOp { x: 0, z: 0 };
    pub const X1: QutritOp = QutritOp { x: 1, z: 0 };
    pub const X2: QutritOp = QutritOp { x: 2, z: 0 };
    pub const Z1: QutritOp = QutritOp { x: 0, z: 1 };
    pub const Z2: QutritOp = QutritOp { x: 0, z: 2 };

    /// The eight non-identity operators, in label order
    /// `X1 X2 Z1 Z2 Y11 Y12 Y21 Y22`.
    pub const NON_IDENTITY: [QutritOp; 8] = [
        QutritOp::X1,
        QutritOp::X2,
        QutritOp::Z1,
        QutritOp::Z2,
        QutritOp { x: 1, z: 1 },
        QutritOp { x: 1, z: 2 },
        QutritOp { x: 2, z: 1 },
        QutritOp { x: 2, z: 2 },
    ];

    pub fn new(x: i64, z: i64) -> Self {
        QutritOp {
            x: x.rem_euclid(3) as u8,
            z: z.rem_euclid(3) as u8,
        }
    }

    pub fn x(self) -> u8 {
        self.x
    }

    pub fn z(self) -> u8 {
        self.z
    }

    pub fn is_identity(self) -> bool {
        self.x == 0 && self.z == 0
    }

    pub fn name(self) -> &'static str {
        match (self.x, self.z) {
            (0, 0) => "I",
            (1, 0) => "X1",
            (2, 0) => "X2",
            (0, 1) => "Z1",
            (0, 2) => "Z2",
            (1, 1) => "Y11",
            (1, 2) => "Y12",
            (2, 1) => "Y21",
            _ => "Y22",
        }
    }
}

impl fmt::Display for QutritOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Parse an operator label such as `X1`, `Z2` or `Y12` (`Y_ij = X_i Z_j`).
pub fn op_from_name(name: &str) -> Result<QutritOp> {
    let op = match name {
        "I" => QutritOp::I,
        "X1" => QutritOp::X1,
        "X2" => QutritOp::X2,
        "Z1" => QutritOp::Z1,
        "Z2" => QutritOp::Z2,
        "Y11" => QutritOp::new(1, 1),
        "Y12" => QutritOp::new(1, 2),
        "Y21" => QutritOp::new(2, 1),
        "Y22" => QutritOp::new(2, 2),
        other => return Err(QecError::UnknownOperator(other.to_string())),
    };
    Ok(op)
}

impl FromStr for QutritOp {
    type Err = QecError;
    fn from_str(s: &str) -> Result<Self> {
        op_from_name(s)
    }
}

/// An n-qutrit generalized Pauli operator `ω^phase ⊗_k X^{x_k} Z^{z_k}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PauliWord {
    phase: PhaseExp,
    ops: Vec<QutritOp>,
}

impl PauliWord {
    pub fn new(ops: Vec<QutritOp>) -> Self {
        PauliWord {
            phase: PhaseExp::ONE,
            ops,
        }
    }

    pub fn with_phase(mut self, phase: PhaseExp) -> Self {
        self.phase = phase;
        self
    }

    pub fn identity(n: usize) -> Self {
        PauliWord::new(vec![QutritOp::I; n])
    }

    /// `op` on qutrit `q`, identity elsewhere.
    pub fn single(n: usize, q: usize, op: QutritOp) -> Self {
        let mut ops = vec![QutritOp::I; n];
        ops[q] = op;
        PauliWord::new(ops)
    }

    /// Word with the given X powers and no Z part.
    pub fn from_x_powers(powers: &[u8]) -> Self {
        PauliWord::new(powers.iter().map(|&p| QutritOp::new(p as i64, 0)).collect())
    }

    /// Word with the given Z powers and no X part.
    pub fn from_z_powers(powers: &[u8]) -> Self {
        PauliWord::new(powers.iter().map(|&p| QutritOp::new(0, p as i64)).collect())
    }

    pub fn len(&self) -> usize {
        self.ops.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ops.is_empty()
    }

    pub fn phase(&self) -> PhaseExp {
        self.phase
    }

    pub fn ops(&self) -> &[QutritOp] {
        &self.ops
    }

    pub fn op(&self, q: usize) -> QutritOp {
        self.ops[q]
    }

    pub fn weight(&self) -> usize {
        self.ops.iter().filter(|o| !o.is_identity()).count()
    }

    pub fn support(&self) -> Vec<usize> {
        (0..self.ops.len())
            .filter(|&q| !self.ops[q].is_identity())
            .collect()
    }

    /// Identity on every qutrit (the global phase is ignored).
    pub fn is_identity(&self) -> bool {
        self.ops.iter().all(|o| o.is_identity())
    }

    /// No Z factor anywhere.
    pub fn is_x_type(&self) -> bool {
        self.ops.iter().all(|o| o.z == 0)
    }

    /// No X factor anywhere.
    pub fn is_z_type(&self) -> bool {
        self.ops.iter().all(|o| o.x == 0)
    }

    pub fn x_powers(&self) -> Vec<u8> {
        self.ops.iter().map(|o| o.x).collect()
    }

    pub fn z_powers(&self) -> Vec<u8> {
        self.ops.iter().map(|o| o.z).collect()
    }

    /// Same operator factors with the global phase dropped.
    pub fn without_phase(&self) -> PauliWord {
        PauliWord::new(self.ops.clone())
    }

    fn check_len(&self, other: &PauliWord) -> Result<()> {
        if self.len() != other.len() {
            return Err(QecError::LengthMismatch {
                left: self.len(),
                right: other.len(),
            });
        }
        Ok(())
    }

    /// Matrix product `self · other`, returned in normal form.
    pub fn multiply(&self, other: &PauliWord) -> Result<PauliWord> {
        self.check_len(other)?;
        let mut phase = self.phase + other.phase;
        let ops = self
            .ops
            .iter()
            .zip(&other.ops)
            .map(|(a, b)| {
                // X^a Z^b · X^u Z^v = ω^{b·u} X^{a+u} Z^{b+v}
                phase = phase + PhaseExp::new(a.z as i64 * b.x as i64);
                QutritOp::new(a.x as i64 + b.x as i64, a.z as i64 + b.z as i64)
            })
            .collect();
        Ok(PauliWord { phase, ops })
    }

    /// `c` such that `self · e = ω^c · e · self`.
    pub fn commutation_phase(&self, e: &PauliWord) -> Result<PhaseExp> {
        self.check_len(e)?;
        let c = self
            .ops
            .iter()
            .zip(&e.ops)
            .map(|(s, e)| s.z as i64 * e.x as i64 - e.z as i64 * s.x as i64)
            .sum::<i64>();
        Ok(PhaseExp::new(c))
    }

    pub fn commutes_with(&self, other: &PauliWord) -> Result<bool> {
        Ok(self.commutation_phase(other)?.is_one())
    }

    pub fn pow(&self, k: u32) -> PauliWord {
        let mut acc = PauliWord::identity(self.len());
        for _ in 0..k {
            acc = acc.multiply(self).expect("same length");
        }
        acc
    }

    /// Exact inverse, including phase.
    pub fn inverse(&self) -> PauliWord {
        // Every generalized Pauli on qutrits satisfies P^3 ∝ I.
        let cube = self.pow(3);
        let sq = self.pow(2);
        let phase = sq.phase - cube.phase;
        sq.with_phase(phase)
    }

    /// Dense `3^n × 3^n` matrix, big-endian in qutrit order.
    pub fn to_matrix(&self) -> Result<DMatrix<Complex64>> {
        let n = self.len();
        if n > MATRIX_MAX_QUTRITS {
            return Err(QecError::TooManyQutrits {
                n,
                max: MATRIX_MAX_QUTRITS,
            });
        }
        let mut m = DMatrix::from_element(1, 1, self.phase.to_complex());
        for op in &self.ops {
            m = m.kronecker(&single_qutrit_matrix(*op));
        }
        Ok(m)
    }
}

/// `X^x Z^z` as a 3×3 matrix.
pub fn single_qutrit_matrix(op: QutritOp) -> DMatrix<Complex64> {
    let mut m = DMatrix::from_element(3, 3, Complex64::new(0.0, 0.0));
    for j in 0..3usize {
        let row = (j + op.x as usize) % 3;
        m[(row, j)] = OMEGA_POWERS[(op.z as usize * j) % 3];
    }
    m
}

impl fmt::Display for PauliWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if !self.phase.is_one() {
            write!(f, "w^{} ", self.phase.get())?;
        }
        for (k, op) in self.ops.iter().enumerate() {
            if k > 0 {
                f.write_str(" ")?;
            }
            f.write_str(op.name())?;
        }
        Ok(())
    }
}

impl FromStr for PauliWord {
    type Err = QecError;

    /// Space-separated labels, qutrit 0 first, with an optional leading `w^k`.
    fn from_str(s: &str) -> Result<Self> {
        let mut phase = PhaseExp::ONE;
        let mut ops = Vec::new();
        for (i, tok) in s.split_whitespace().enumerate() {
            if i == 0 {
                if let Some(k) = tok.strip_prefix("w^") {
                    let k: u8 = k
                        .parse()
                        .map_err(|_| QecError::UnknownOperator(tok.to_string()))?;
                    phase = PhaseExp::new(k as i64);
                    continue;
                }
            }
            ops.push(op_from_name(tok)?);
        }
        Ok(PauliWord { phase, ops })
    }
}

impl Serialize for PauliWord {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl Serialize for QutritOp {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(self.name())
    }
}

impl<'de> Deserialize<'de> for QutritOp {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

impl<'de> Deserialize<'de> for PauliWord {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> PauliWord {
        s.parse().unwrap()
    }

    fn close(a: &DMatrix<Complex64>, b: &DMatrix<Complex64>, tol: f64) -> bool {
        a.shape() == b.shape() && a.iter().zip(b.iter()).all(|(x, y)| (x - y).norm() < tol)
    }

    #[test]
    fn labels_parse_to_normal_form() {
        assert_eq!(op_from_name("X1").unwrap(), QutritOp::new(1, 0));
        assert_eq!(op_from_name("I").unwrap(), QutritOp::new(0, 0));
        assert_eq!(op_from_name("Y12").unwrap(), QutritOp::new(1, 2));
        assert_eq!(
            op_from_name("X3"),
            Err(QecError::UnknownOperator("X3".into()))
        );
        for op in QutritOp::NON_IDENTITY {
            assert_eq!(op_from_name(op.name()).unwrap(), op);
        }
    }

    #[test]
    fn multiplication_examples() {
        // Z X = ω X Z
        let zx = w("Z1").multiply(&w("X1")).unwrap();
        assert_eq!(zx.ops(), &[QutritOp::new(1, 1)]);
        assert_eq!(zx.phase(), PhaseExp::OMEGA);
        let xz = w("X1").multiply(&w("Z1")).unwrap();
        assert_eq!(xz, w("Y11"));
        assert_eq!(w("X1").multiply(&w("X1")).unwrap(), w("X2"));
        assert_eq!(w("Z1").multiply(&w("Z1")).unwrap(), w("Z2"));
        assert!(matches!(
            w("X1 I").multiply(&w("X1")),
            Err(QecError::LengthMismatch { .. })
        ));
    }

    #[test]
    fn commutation_examples() {
        assert_eq!(
            w("X1").commutation_phase(&w("Z1")).unwrap(),
            PhaseExp::OMEGA2
        );
        assert_eq!(
            w("X1").commutation_phase(&w("Z2")).unwrap(),
            PhaseExp::OMEGA
        );
        assert_eq!(
            w("X1 X2").commutation_phase(&w("Z1 Z1")).unwrap(),
            PhaseExp::ONE
        );
    }

    #[test]
    fn pairwise_commutation_lemma_exhaustive() {
        for i in 1..=2u8 {
            for j in 1..=2u8 {
                for k in 1..=2u8 {
                    for l in 1..=2u8 {
                        let xx = PauliWord::from_x_powers(&[i, j]);
                        let zz = PauliWord::from_z_powers(&[k, l]);
                        let commutes = xx.commutes_with(&zz).unwrap();
                        let predicted = (i == j && k != l) || (i != j && k == l);
                        assert_eq!(commutes, predicted, "X{i}⊗X{j} vs Z{k}⊗Z{l}");
                    }
                }
            }
        }
    }

    #[test]
    fn matrices_of_generators() {
        let x = w("X1").to_matrix().unwrap();
        for j in 0..3 {
            assert_eq!(x[((j + 1) % 3, j)], Complex64::new(1.0, 0.0));
        }
        let z = w("Z1").to_matrix().unwrap();
        let diag = DMatrix::from_diagonal(&nalgebra::DVector::from_vec(OMEGA_POWERS.to_vec()));
        assert!(close(&z, &diag, 1e-15));
        let id = w("I I").to_matrix().unwrap();
        assert!(close(&id, &DMatrix::identity(9, 9), 1e-15));
        assert!(matches!(
            w("I I I I").to_matrix(),
            Err(QecError::TooManyQutrits { n: 4, max: 3 })
        ));
    }

    #[test]
    fn inverse_is_exact() {
        for a in QutritOp::NON_IDENTITY {
            for b in QutritOp::NON_IDENTITY {
                let p = PauliWord::new(vec![a, b]).with_phase(PhaseExp::OMEGA);
                let prod = p.multiply(&p.inverse()).unwrap();
                assert_eq!(prod, PauliWord::identity(2));
            }
        }
    }

    #[test]
    fn display_round_trip() {
        let p = w("w^2 Z2 Z1 Y21 I");
        assert_eq!(p.to_string(), "w^2 Z2 Z1 Y21 I");
        assert_eq!(p.to_string().parse::<PauliWord>().unwrap(), p);
        assert_eq!(w("Z2 Z1 Z2 Z1 I I I").to_string(), "Z2 Z1 Z2 Z1 I I I");
    }
}
