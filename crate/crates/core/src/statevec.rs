//! Dense state vectors over at most eight qutrits.
//!
//! Basis indices are big-endian: qutrit 0 is the most significant trit, so
//! the ket string `|1020102>` maps left to right onto qutrits 0..6.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{QecError, Result};
use crate::gpauli::{PauliWord, PhaseExp, OMEGA_POWERS};

pub const MAX_QUTRITS: usize = 8;

/// Tolerance for state equality.
pub const STATE_TOL: f64 = 1e-10;
/// Tolerance for exact algebraic identities.
pub const ALGEBRA_TOL: f64 = 1e-12;

const INV_SQRT3: f64 = 0.577_350_269_189_625_8;

/// Which Chrestenson gate to apply.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Chrestenson {
    /// `Ch1[m][j] = ω^{mj}/√3`
    One,
    /// `Ch2[m][j] = ω^{-mj}/√3`, the inverse of `Ch1`.
    Two,
}

impl Chrestenson {
    pub fn matrix(self) -> [[Complex64; 3]; 3] {
        let sign = match self {
            Chrestenson::One => 1,
            Chrestenson::Two => 2,
        };
        let mut m = [[Complex64::new(0.0, 0.0); 3]; 3];
        for (r, row) in m.iter_mut().enumerate() {
            for (c, cell) in row.iter_mut().enumerate() {
                *cell = OMEGA_POWERS[(sign * r * c) % 3] * INV_SQRT3;
            }
        }
        m
    }
}

/// Outcome of comparing two states modulo a global phase.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PhaseMatch {
    pub equal: bool,
    /// `c` with `b ≈ c·a`, when equal.
    pub phase: Option<Complex64>,
    /// `c` snapped to a cube root of unity, when it is one.
    pub omega_exp: Option<PhaseExp>,
    pub fidelity: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct StateVec {
    n: usize,
    amps: Vec<Complex64>,
}

pub(crate) fn pow3(n: usize) -> usize {
    3usize.pow(n as u32)
}

impl StateVec {
    fn check_n(n: usize) -> Result<()> {
        if n > MAX_QUTRITS {
            return Err(QecError::TooManyQutrits {
                n,
                max: MAX_QUTRITS,
            });
        }
        Ok(())
    }

    pub fn zero(n: usize) -> Result<Self> {
        Self::basis(&vec![0; n])
    }

    pub fn basis(trits: &[u8]) -> Result<Self> {
        let n = trits.len();
        Self::check_n(n)?;
        let mut amps = vec![Complex64::new(0.0, 0.0); pow3(n)];
        amps[trits_to_index(trits)] = Complex64::new(1.0, 0.0);
        Ok(StateVec { n, amps })
    }

    pub fn from_amplitudes(n: usize, amps: Vec<Complex64>) -> Result<Self> {
        Self::check_n(n)?;
        if amps.len() != pow3(n) {
            return Err(QecError::LengthMismatch {
                left: amps.len(),
                right: pow3(n),
            });
        }
        Ok(StateVec { n, amps })
    }

    /// Superposition of basis kets given as trit strings, e.g. `"1020102"`.
    pub fn from_kets(n: usize, kets: &[(&str, Complex64)]) -> Result<Self> {
        Self::check_n(n)?;
        let mut amps = vec![Complex64::new(0.0, 0.0); pow3(n)];
        for (ket, amp) in kets {
            let trits = parse_trits(ket)?;
            if trits.len() != n {
                return Err(QecError::InvalidBasis(ket.to_string()));
            }
            amps[trits_to_index(&trits)] += amp;
        }
        Ok(StateVec { n, amps })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn amps(&self) -> &[Complex64] {
        &self.amps
    }

    pub fn amp(&self, trits: &[u8]) -> Complex64 {
        self.amps[trits_to_index(trits)]
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amps.iter().map(|a| a.norm_sqr()).sum()
    }

    pub fn normalized(mut self) -> Self {
        let norm = self.norm_sqr().sqrt();
        if norm > 0.0 {
            self.amps.iter_mut().for_each(|a| *a /= norm);
        }
        self
    }

    pub fn scaled(&self, c: Complex64) -> Self {
        StateVec {
            n: self.n,
            amps: self.amps.iter().map(|a| a * c).collect(),
        }
    }

    /// `Σ c_k |ψ_k>` over states of a common size (not normalized).
    pub fn linear_combination(terms: &[(Complex64, &StateVec)]) -> Result<Self> {
        let first = terms
            .first()
            .map(|t| t.1)
            .ok_or(QecError::LengthMismatch { left: 0, right: 1 })?;
        let mut amps = vec![Complex64::new(0.0, 0.0); first.amps.len()];
        for (c, s) in terms {
            if s.n != first.n {
                return Err(QecError::LengthMismatch {
                    left: s.n,
                    right: first.n,
                });
            }
            for (acc, a) in amps.iter_mut().zip(&s.amps) {
                *acc += c * a;
            }
        }
        Ok(StateVec { n: first.n, amps })
    }

    /// `⟨self|other⟩`
    pub fn inner(&self, other: &StateVec) -> Complex64 {
        self.amps
            .iter()
            .zip(&other.amps)
            .map(|(a, b)| a.conj() * b)
            .sum()
    }

    pub fn max_abs_diff(&self, other: &StateVec) -> f64 {
        self.amps
            .iter()
            .zip(&other.amps)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    pub fn apply_word(&self, p: &PauliWord) -> Result<StateVec> {
        if p.len() != self.n {
            return Err(QecError::LengthMismatch {
                left: self.n,
                right: p.len(),
            });
        }
        let xs = p.x_powers();
        let zs = p.z_powers();
        let global = p.phase().get() as usize;
        let mut out = vec![Complex64::new(0.0, 0.0); self.amps.len()];
        let mut trits = vec![0u8; self.n];
        let mut shifted = vec![0u8; self.n];
        for (idx, amp) in self.amps.iter().enumerate() {
            if idx > 0 {
                increment_trits(&mut trits);
            }
            if *amp == Complex64::new(0.0, 0.0) {
                continue;
            }
            // (X^u Z^v)|x> = ω^{v·x} |x+u>
            let mut ph = global;
            for q in 0..self.n {
                ph += zs[q] as usize * trits[q] as usize;
                shifted[q] = (trits[q] + xs[q]) % 3;
            }
            out[trits_to_index(&shifted)] = amp * OMEGA_POWERS[ph % 3];
        }
        Ok(StateVec {
            n: self.n,
            amps: out,
        })
    }

    fn check_index(&self, q: usize) -> Result<()> {
        if q >= self.n {
            return Err(QecError::QutritIndex {
                index: q,
                n: self.n,
            });
        }
        Ok(())
    }

    /// Apply a 3×3 unitary on qutrit `q`.
    pub fn apply_single(&self, q: usize, m: &[[Complex64; 3]; 3]) -> Result<StateVec> {
        self.check_index(q)?;
        let stride = pow3(self.n - 1 - q);
        let mut out = self.amps.clone();
        for base in 0..self.amps.len() {
            if !(base / stride).is_multiple_of(3) {
                continue;
            }
            let v = [
                self.amps[base],
                self.amps[base + stride],
                self.amps[base + 2 * stride],
            ];
            for (r, row) in m.iter().enumerate() {
                out[base + r * stride] = row[0] * v[0] + row[1] * v[1] + row[2] * v[2];
            }
        }
        Ok(StateVec {
            n: self.n,
            amps: out,
        })
    }

    pub fn apply_chrestenson(&self, q: usize, which: Chrestenson) -> Result<StateVec> {
        self.apply_single(q, &which.matrix())
    }

    /// Ternary controlled increment: `|x, y> -> |x, x + y mod 3>`.
    pub fn apply_cplus(&self, control: usize, target: usize) -> Result<StateVec> {
        self.check_index(control)?;
        self.check_index(target)?;
        if control == target {
            return Err(QecError::SameQutrit(control));
        }
        let mut out = vec![Complex64::new(0.0, 0.0); self.amps.len()];
        let mut trits = vec![0u8; self.n];
        for (idx, amp) in self.amps.iter().enumerate() {
            if idx > 0 {
                increment_trits(&mut trits);
            }
            let mut t = trits.clone();
            t[target] = (t[target] + t[control]) % 3;
            out[trits_to_index(&t)] = *amp;
        }
        Ok(StateVec {
            n: self.n,
            amps: out,
        })
    }

    /// Probability of each value of qutrit `q` in a computational-basis read.
    pub fn marginal(&self, q: usize) -> Result<[f64; 3]> {
        self.check_index(q)?;
        let stride = pow3(self.n - 1 - q);
        let mut p = [0.0; 3];
        for (idx, a) in self.amps.iter().enumerate() {
            p[(idx / stride) % 3] += a.norm_sqr();
        }
        Ok(p)
    }

    /// `self ⊗ other`, with `self` on the leading qutrits.
    pub fn tensor(&self, other: &StateVec) -> Result<StateVec> {
        let n = self.n + other.n;
        Self::check_n(n)?;
        let mut amps = Vec::with_capacity(pow3(n));
        for a in &self.amps {
            for b in &other.amps {
                amps.push(a * b);
            }
        }
        Ok(StateVec { n, amps })
    }

    /// Nonzero amplitudes as `(basis string, re, im)`, qutrit 0 first.
    pub fn nonzero_terms(&self, tol: f64) -> Vec<(String, f64, f64)> {
        let mut trits = vec![0u8; self.n];
        let mut out = Vec::new();
        for (idx, a) in self.amps.iter().enumerate() {
            if idx > 0 {
                increment_trits(&mut trits);
            }
            if a.norm() > tol {
                let s: String = trits.iter().map(|t| char::from(b'0' + t)).collect();
                out.push((s, a.re, a.im));
            }
        }
        out
    }
}

/// Whether `b = c·a` for a unit-modulus `c`; both inputs must be normalized.
pub fn equal_up_to_global_phase(a: &StateVec, b: &StateVec, tol: f64) -> PhaseMatch {
    if a.n != b.n {
        return PhaseMatch {
            equal: false,
            phase: None,
            omega_exp: None,
            fidelity: 0.0,
        };
    }
    let ov = a.inner(b);
    let fidelity = ov.norm_sqr();
    let equal = ov.norm() >= 1.0 - tol;
    let phase = equal.then(|| ov / ov.norm());
    let omega_exp = phase.and_then(|c| {
        let (k, dist) = PhaseExp::nearest(c);
        (dist < 1e-6).then_some(k)
    });
    PhaseMatch {
        equal,
        phase,
        omega_exp,
        fidelity,
    }
}

pub fn parse_trits(s: &str) -> Result<Vec<u8>> {
    s.chars()
        .map(|c| match c {
            '0' => Ok(0),
            '1' => Ok(1),
            '2' => Ok(2),
            _ => Err(QecError::InvalidBasis(s.to_string())),
        })
        .collect()
}

pub fn trits_to_index(trits: &[u8]) -> usize {
    trits.iter().fold(0, |acc, &t| acc * 3 + t as usize)
}

pub fn index_to_trits(mut idx: usize, n: usize) -> Vec<u8> {
    let mut t = vec![0u8; n];
    for q in (0..n).rev() {
        t[q] = (idx % 3) as u8;
        idx /= 3;
    }
    t
}

/// Advance a big-endian trit counter by one.
fn increment_trits(t: &mut [u8]) {
    for q in (0..t.len()).rev() {
        t[q] += 1;
        if t[q] < 3 {
            return;
        }
        t[q] = 0;
    }
}

#[derive(Serialize, Deserialize)]
struct StateDoc {
    n: usize,
    terms: Vec<(String, f64, f64)>,
}

impl Serialize for StateVec {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        StateDoc {
            n: self.n,
            terms: self.nonzero_terms(1e-14),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for StateVec {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let doc = StateDoc::deserialize(d)?;
        let kets: Vec<(&str, Complex64)> = doc
            .terms
            .iter()
            .map(|(k, re, im)| (k.as_str(), Complex64::new(*re, *im)))
            .collect();
        StateVec::from_kets(doc.n, &kets).map_err(serde::de::Error::custom)
    }
}
