//! Qutrit CSS codes: the 7-qutrit degenerate code and the ternary Steane code.
//!
//! A [`Code`] owns its three logical basis states, its ordered stabilizers and
//! two lookup decoders built at construction time: a phase table keyed by the
//! X-type stabilizer exponents and a bit table keyed by the Z-type ones.

use std::collections::BTreeMap;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{QecError, Result};
use crate::exec::Exec;
use crate::gpauli::{PauliWord, PhaseExp, QutritOp};
use crate::statevec::{equal_up_to_global_phase, StateVec};

/// Tolerance for Knill–Laflamme matrix entries and correction fidelity.
pub const KL_TOL: f64 = 1e-9;

/// Seed for the pseudorandom logical states used by the sweeps.
pub const LOGICAL_STATE_SEED: u64 = 0x7e57_0003;

pub const G1: [usize; 4] = [0, 2, 4, 6];
pub const G2: [usize; 3] = [1, 3, 5];

/// The nine kets of each logical basis state of the 7-qutrit code.
pub const PROPOSED_KETS: [[&str; 9]; 3] = [
    [
        "0000000", "1020102", "2010201", "0102010", "1122112", "2112211", "0201020", "1221122",
        "2211221",
    ],
    [
        "1111111", "2101210", "0121012", "1210121", "2200220", "0220022", "1012101", "2002200",
        "0022002",
    ],
    [
        "2222222", "0212021", "1202120", "2021202", "0011001", "1001100", "2120212", "0110011",
        "1100110",
    ],
];

/// S1, S2 (phase) followed by the default S3..S6 (bit).
pub const PROPOSED_STABILIZERS: [&str; 6] = [
    "X1 I X2 I X1 I X2",
    "I X1 I X2 I X1 I",
    "Z1 Z2 Z1 Z2 I I I",
    "I I I Z1 Z2 Z1 Z2",
    "I Z1 Z2 Z1 Z2 I I",
    "I I Z1 Z2 Z1 Z2 I",
];

/// Pair whose simultaneous bit errors the default S3..S6 register.
pub const DEFAULT_BIT_PAIR: (usize, usize) = (0, 6);

/// Ternary Steane stabilizers with every binary X/Z read as X1/Z1.
///
/// These words do not pairwise commute over qutrits (every X/Z overlap has
/// two or four positions, giving ω^{∓2} or ω^{∓4}). They are kept because
/// gate accounting is usually quoted for exactly this list.
pub const STEANE_LITERAL_STABILIZERS: [&str; 6] = [
    "I I I X1 X1 X1 X1",
    "I X1 X1 I I X1 X1",
    "X1 I X1 I X1 I X1",
    "I I I Z1 Z1 Z1 Z1",
    "I Z1 Z1 I I Z1 Z1",
    "Z1 I Z1 I Z1 I Z1",
];

/// Commuting ternary Steane stabilizers: X rows as above, Z rows with the
/// Hamming supports scaled column-wise by (2,2,1,2,1,1,2) so that every
/// X/Z overlap sums to zero mod 3 and `X1^{⊗7}` stays a logical operator.
pub const STEANE_STABILIZERS: [&str; 6] = [
    "I I I X1 X1 X1 X1",
    "I X1 X1 I I X1 X1",
    "X1 I X1 I X1 I X1",
    "I I I Z2 Z1 Z1 Z2",
    "I Z2 Z1 I I Z1 Z2",
    "Z2 I Z1 I Z1 I Z2",
];

pub fn parse_words(words: &[&str]) -> Vec<PauliWord> {
    words
        .iter()
        .map(|w| w.parse().expect("built-in word parses"))
        .collect()
}

/// Stabilizer eigenvalue exponents, one per stabilizer in code order.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Syndrome {
    exps: Vec<PhaseExp>,
}

impl Syndrome {
    pub fn new(exps: Vec<PhaseExp>) -> Self {
        Syndrome { exps }
    }

    pub fn from_u8(exps: &[u8]) -> Self {
        Syndrome {
            exps: exps.iter().map(|&k| PhaseExp::new(k as i64)).collect(),
        }
    }

    pub fn exps(&self) -> &[PhaseExp] {
        &self.exps
    }

    pub fn to_u8(&self) -> Vec<u8> {
        self.exps.iter().map(|e| e.get()).collect()
    }

    /// Indices of stabilizers whose eigenvalue is not 1.
    pub fn triggered(&self) -> Vec<usize> {
        (0..self.exps.len())
            .filter(|&i| !self.exps[i].is_one())
            .collect()
    }

    pub fn is_trivial(&self) -> bool {
        self.exps.iter().all(|e| e.is_one())
    }

    /// Restriction to the given stabilizer indices.
    pub fn select(&self, idx: &[usize]) -> Vec<u8> {
        idx.iter().map(|&i| self.exps[i].get()).collect()
    }
}

/// Per-code invariant measurements. Residuals are max-abs amplitude errors.
#[derive(Clone, Debug, Serialize)]
pub struct CodeInvariants {
    pub norm_error: f64,
    pub max_overlap: f64,
    /// `[stabilizer][logical]`
    pub stabilizer_residuals: Vec<[f64; 3]>,
    pub commuting: bool,
}

impl CodeInvariants {
    pub fn max_stabilizer_residual(&self) -> f64 {
        self.stabilizer_residuals
            .iter()
            .flatten()
            .copied()
            .fold(0.0, f64::max)
    }

    pub fn hold(&self, tol: f64) -> bool {
        self.norm_error < tol
            && self.max_overlap < tol
            && self.max_stabilizer_residual() < tol
            && self.commuting
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct KlEntry {
    pub m: usize,
    pub n: usize,
    /// `A[i][j] = ⟨i_L| σ_m† σ_n |j_L⟩`
    pub matrix: [[Complex64; 3]; 3],
    pub offdiag_zero: bool,
    pub diag_constant: bool,
}

impl KlEntry {
    pub fn pass(&self) -> bool {
        self.offdiag_zero && self.diag_constant
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct KlReport {
    pub errors: Vec<PauliWord>,
    pub tol: f64,
    pub entries: Vec<KlEntry>,
    pub failures: usize,
    pub pass: bool,
}

impl KlReport {
    pub fn entry(&self, m: usize, n: usize) -> &KlEntry {
        &self.entries[m * self.errors.len() + n]
    }

    pub fn first_failure(&self) -> Option<&KlEntry> {
        self.entries.iter().find(|e| !e.pass())
    }
}

#[derive(Clone, Debug)]
pub struct Code {
    name: String,
    logical: [StateVec; 3],
    stabilizers: Vec<PauliWord>,
    g1: Vec<usize>,
    g2: Vec<usize>,
    registered_pairs: Vec<(usize, usize)>,
    x_type: Vec<usize>,
    z_type: Vec<usize>,
    phase_table: BTreeMap<Vec<u8>, PauliWord>,
    bit_table: BTreeMap<Vec<u8>, PauliWord>,
}

impl Code {
    /// Assemble a CSS code and build its decode tables.
    ///
    /// Invariants are not enforced here; see [`Code::invariants`].
    pub fn new(
        name: impl Into<String>,
        logical: [StateVec; 3],
        stabilizers: Vec<PauliWord>,
        g1: Vec<usize>,
        g2: Vec<usize>,
        registered_pairs: Vec<(usize, usize)>,
    ) -> Result<Code> {
        let n = logical[0].n();
        for s in &logical {
            if s.n() != n {
                return Err(QecError::LengthMismatch {
                    left: s.n(),
                    right: n,
                });
            }
        }
        let mut x_type = Vec::new();
        let mut z_type = Vec::new();
        for (i, s) in stabilizers.iter().enumerate() {
            if s.len() != n {
                return Err(QecError::LengthMismatch {
                    left: s.len(),
                    right: n,
                });
            }
            if s.is_x_type() {
                x_type.push(i);
            } else if s.is_z_type() {
                z_type.push(i);
            } else {
                return Err(QecError::NonCss(i));
            }
        }
        for &(i, j) in &registered_pairs {
            if i == j || i >= n || j >= n {
                return Err(QecError::InvalidPair(i, j));
            }
        }
        let mut code = Code {
            name: name.into(),
            logical,
            stabilizers,
            g1,
            g2,
            registered_pairs,
            x_type,
            z_type,
            phase_table: BTreeMap::new(),
            bit_table: BTreeMap::new(),
        };
        code.phase_table = code.build_phase_table();
        code.bit_table = code.build_bit_table();
        Ok(code)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn n(&self) -> usize {
        self.logical[0].n()
    }

    pub fn logical(&self) -> &[StateVec; 3] {
        &self.logical
    }

    pub fn stabilizers(&self) -> &[PauliWord] {
        &self.stabilizers
    }

    pub fn g1(&self) -> &[usize] {
        &self.g1
    }

    pub fn g2(&self) -> &[usize] {
        &self.g2
    }

    pub fn registered_pairs(&self) -> &[(usize, usize)] {
        &self.registered_pairs
    }

    /// Indices of the X-type (phase-detecting) stabilizers.
    pub fn x_type_indices(&self) -> &[usize] {
        &self.x_type
    }

    /// Indices of the Z-type (bit-detecting) stabilizers.
    pub fn z_type_indices(&self) -> &[usize] {
        &self.z_type
    }

    pub fn phase_table(&self) -> &BTreeMap<Vec<u8>, PauliWord> {
        &self.phase_table
    }

    pub fn bit_table(&self) -> &BTreeMap<Vec<u8>, PauliWord> {
        &self.bit_table
    }

    /// The same phase stabilizers with a replacement set of Z-type words
    /// and the given pair registered in the bit decoder.
    pub fn with_bit_stabilizers(
        &self,
        zset: &[PauliWord],
        pair: Option<(usize, usize)>,
    ) -> Result<Code> {
        let mut stabs: Vec<PauliWord> = self
            .x_type
            .iter()
            .map(|&i| self.stabilizers[i].clone())
            .collect();
        stabs.extend(zset.iter().cloned());
        Code::new(
            self.name.clone(),
            self.logical.clone(),
            stabs,
            self.g1.clone(),
            self.g2.clone(),
            pair.into_iter().collect(),
        )
    }

    fn restricted(&self, e: &PauliWord, idx: &[usize]) -> Vec<u8> {
        idx.iter()
            .map(|&i| {
                self.stabilizers[i]
                    .commutation_phase(e)
                    .expect("sizes checked")
                    .get()
            })
            .collect()
    }

    /// Phase decoder: single Z errors (qutrit ascending, Z1 before Z2), then
    /// weight-2 Z errors for syndromes still missing. First hit wins, which
    /// picks the lowest-index qutrit of every degenerate class.
    fn build_phase_table(&self) -> BTreeMap<Vec<u8>, PauliWord> {
        let n = self.n();
        let mut table = BTreeMap::new();
        table.insert(vec![0; self.x_type.len()], PauliWord::identity(n));
        for e in z_errors_up_to_weight(n, 2) {
            let key = self.restricted(&e, &self.x_type);
            table.entry(key).or_insert_with(|| e.inverse());
        }
        table
    }

    /// Bit decoder: single X errors, then the registered pair errors.
    fn build_bit_table(&self) -> BTreeMap<Vec<u8>, PauliWord> {
        let n = self.n();
        let mut table = BTreeMap::new();
        table.insert(vec![0; self.z_type.len()], PauliWord::identity(n));
        let mut errs = Vec::new();
        for q in 0..n {
            for op in [QutritOp::X1, QutritOp::X2] {
                errs.push(PauliWord::single(n, q, op));
            }
        }
        for &(i, j) in &self.registered_pairs {
            for a in 1..=2 {
                for b in 1..=2 {
                    let mut p = vec![0u8; n];
                    p[i] = a;
                    p[j] = b;
                    errs.push(PauliWord::from_x_powers(&p));
                }
            }
        }
        for e in errs {
            let key = self.restricted(&e, &self.z_type);
            table.entry(key).or_insert_with(|| e.inverse());
        }
        table
    }

    pub fn invariants(&self) -> CodeInvariants {
        let norm_error = self
            .logical
            .iter()
            .map(|s| (s.norm_sqr() - 1.0).abs())
            .fold(0.0, f64::max);
        let mut max_overlap: f64 = 0.0;
        for i in 0..3 {
            for j in (i + 1)..3 {
                max_overlap = max_overlap.max(self.logical[i].inner(&self.logical[j]).norm());
            }
        }
        let stabilizer_residuals = self
            .stabilizers
            .iter()
            .map(|s| {
                let mut r = [0.0; 3];
                for (k, l) in self.logical.iter().enumerate() {
                    r[k] = l.apply_word(s).expect("sizes checked").max_abs_diff(l);
                }
                r
            })
            .collect();
        let commuting = self.stabilizers.iter().all(|a| {
            self.stabilizers
                .iter()
                .all(|b| a.commutes_with(b).expect("sizes checked"))
        });
        CodeInvariants {
            norm_error,
            max_overlap,
            stabilizer_residuals,
            commuting,
        }
    }

    fn check_len(&self, e: &PauliWord) -> Result<()> {
        if e.len() != self.n() {
            return Err(QecError::LengthMismatch {
                left: e.len(),
                right: self.n(),
            });
        }
        Ok(())
    }

    /// Syndrome from commutation phases: `exps[i] = c` with `S_i e = ω^c e S_i`.
    pub fn syndrome_symplectic(&self, e: &PauliWord) -> Result<Syndrome> {
        self.check_len(e)?;
        Ok(Syndrome::new(
            self.stabilizers
                .iter()
                .map(|s| s.commutation_phase(e))
                .collect::<Result<_>>()?,
        ))
    }

    /// Syndrome read off the state: `exps[i] = k` with `S_i|s> = ω^k |s>`.
    pub fn syndrome_statevector(&self, s: &StateVec) -> Result<Syndrome> {
        let mut exps = Vec::with_capacity(self.stabilizers.len());
        for (i, stab) in self.stabilizers.iter().enumerate() {
            let image = s.apply_word(stab)?;
            let (k, _) = PhaseExp::nearest(s.inner(&image));
            let residual = image.max_abs_diff(&s.scaled(k.to_complex()));
            if residual > KL_TOL {
                return Err(QecError::NotAnEigenstate {
                    stabilizer: i,
                    residual,
                });
            }
            exps.push(k);
        }
        Ok(Syndrome::new(exps))
    }

    /// Correction word for a syndrome: phase part from the X-type exponents,
    /// bit part from the Z-type exponents.
    pub fn decode(&self, syn: &Syndrome) -> Result<PauliWord> {
        if syn.exps().len() != self.stabilizers.len() {
            return Err(QecError::LengthMismatch {
                left: syn.exps().len(),
                right: self.stabilizers.len(),
            });
        }
        let unknown = || QecError::UnrecognizedSyndrome(syn.to_u8());
        let phase = self
            .phase_table
            .get(&syn.select(&self.x_type))
            .ok_or_else(unknown)?;
        let bit = self
            .bit_table
            .get(&syn.select(&self.z_type))
            .ok_or_else(unknown)?;
        bit.multiply(phase)
    }

    pub fn correct(&self, s: &StateVec) -> Result<StateVec> {
        let syn = self.syndrome_statevector(s)?;
        s.apply_word(&self.decode(&syn)?)
    }

    /// `M[i][j] = ⟨i_L| p |j_L⟩`
    pub fn logical_action(&self, p: &PauliWord) -> Result<[[Complex64; 3]; 3]> {
        let images = self
            .logical
            .iter()
            .map(|l| l.apply_word(p))
            .collect::<Result<Vec<_>>>()?;
        Ok(std::array::from_fn(|i| {
            std::array::from_fn(|j| self.logical[i].inner(&images[j]))
        }))
    }

    pub fn kl_check(&self, errors: &[PauliWord]) -> Result<KlReport> {
        self.kl_check_with(errors, Exec::default())
    }

    pub fn kl_check_with(&self, errors: &[PauliWord], exec: Exec) -> Result<KlReport> {
        for e in errors {
            self.check_len(e)?;
        }
        let images: Vec<Vec<StateVec>> = exec.map(errors, |e| {
            self.logical
                .iter()
                .map(|l| l.apply_word(e).expect("sizes checked"))
                .collect()
        });
        let rows: Vec<usize> = (0..errors.len()).collect();
        let entries: Vec<KlEntry> = exec
            .map(&rows, |&m| {
                (0..errors.len())
                    .map(|n| {
                        let mut a = [[Complex64::new(0.0, 0.0); 3]; 3];
                        for i in 0..3 {
                            for j in 0..3 {
                                // ⟨i|σ_m† σ_n|j⟩ = ⟨σ_m i|σ_n j⟩
                                a[i][j] = images[m][i].inner(&images[n][j]);
                            }
                        }
                        let offdiag_zero =
                            (0..3).all(|i| (0..3).all(|j| i == j || a[i][j].norm() < KL_TOL));
                        let diag_constant = (a[0][0] - a[1][1]).norm() < KL_TOL
                            && (a[0][0] - a[2][2]).norm() < KL_TOL;
                        KlEntry {
                            m,
                            n,
                            matrix: a,
                            offdiag_zero,
                            diag_constant,
                        }
                    })
                    .collect::<Vec<_>>()
            })
            .into_iter()
            .flatten()
            .collect();
        let failures = entries.iter().filter(|e| !e.pass()).count();
        Ok(KlReport {
            errors: errors.to_vec(),
            tol: KL_TOL,
            entries,
            failures,
            pass: failures == 0,
        })
    }

    /// Group errors acting identically on all three logical states up to one
    /// common global phase. Classes are index lists into `errors`, ordered by
    /// first member.
    pub fn degeneracy_classes(&self, errors: &[PauliWord]) -> Result<Vec<Vec<usize>>> {
        let images = errors
            .iter()
            .map(|e| {
                self.logical
                    .iter()
                    .map(|l| l.apply_word(e))
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        let mut classes: Vec<Vec<usize>> = Vec::new();
        'outer: for k in 0..errors.len() {
            for class in classes.iter_mut() {
                if same_action(&images[class[0]], &images[k]) {
                    class.push(k);
                    continue 'outer;
                }
            }
            classes.push(vec![k]);
        }
        Ok(classes)
    }

    /// Random normalized superpositions of the logical basis, reproducible
    /// from `seed`.
    pub fn random_logical_states(&self, count: usize, seed: u64) -> Vec<StateVec> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        (0..count)
            .map(|_| {
                let coeffs: Vec<Complex64> = (0..3)
                    .map(|_| {
                        Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0))
                    })
                    .collect();
                let terms: Vec<(Complex64, &StateVec)> =
                    coeffs.iter().copied().zip(self.logical.iter()).collect();
                StateVec::linear_combination(&terms)
                    .expect("same size")
                    .normalized()
            })
            .collect()
    }

    pub fn to_doc(&self) -> CodeDoc {
        let render = |t: &BTreeMap<Vec<u8>, PauliWord>| {
            t.iter()
                .map(|(k, v)| {
                    let key: String = k.iter().map(|d| char::from(b'0' + d)).collect();
                    (key, v.to_string())
                })
                .collect()
        };
        CodeDoc {
            schema_version: 1,
            name: self.name.clone(),
            n: self.n(),
            stabilizers: self.stabilizers.clone(),
            x_type: self.x_type.clone(),
            z_type: self.z_type.clone(),
            g1: self.g1.clone(),
            g2: self.g2.clone(),
            registered_pairs: self.registered_pairs.clone(),
            phase_table: render(&self.phase_table),
            bit_table: render(&self.bit_table),
        }
    }
}

fn same_action(a: &[StateVec], b: &[StateVec]) -> bool {
    let mut common: Option<Complex64> = None;
    for (x, y) in a.iter().zip(b) {
        let m = equal_up_to_global_phase(x, y, KL_TOL);
        let Some(c) = m.phase else {
            return false;
        };
        match common {
            None => common = Some(c),
            Some(c0) if (c - c0).norm() < 1e-7 => {}
            Some(_) => return false,
        }
    }
    true
}

/// JSON document for a code: stabilizers as operator strings and decode
/// tables as syndrome-string → correction-string maps.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CodeDoc {
    pub schema_version: u32,
    pub name: String,
    pub n: usize,
    pub stabilizers: Vec<PauliWord>,
    pub x_type: Vec<usize>,
    pub z_type: Vec<usize>,
    pub g1: Vec<usize>,
    pub g2: Vec<usize>,
    pub registered_pairs: Vec<(usize, usize)>,
    pub phase_table: BTreeMap<String, String>,
    pub bit_table: BTreeMap<String, String>,
}

/// Z-type errors of weight 1..=`wmax`, by weight, then support, then powers.
fn z_errors_up_to_weight(n: usize, wmax: usize) -> Vec<PauliWord> {
    use itertools::Itertools;
    let mut out = Vec::new();
    for w in 1..=wmax {
        for support in (0..n).combinations(w) {
            for powers in (0..w).map(|_| 1..=2u8).multi_cartesian_product() {
                let mut p = vec![0u8; n];
                for (q, v) in support.iter().zip(&powers) {
                    p[*q] = *v;
                }
                out.push(PauliWord::from_z_powers(&p));
            }
        }
    }
    out
}

/// The 7-qutrit degenerate CSS code with the default bit stabilizers.
pub fn build_proposed_code() -> Code {
    let amp = Complex64::new(1.0 / 3.0, 0.0);
    let logical = PROPOSED_KETS.map(|kets| {
        let terms: Vec<(&str, Complex64)> = kets.iter().map(|k| (*k, amp)).collect();
        StateVec::from_kets(7, &terms).expect("valid kets")
    });
    Code::new(
        "proposed",
        logical,
        parse_words(&PROPOSED_STABILIZERS),
        G1.to_vec(),
        G2.to_vec(),
        vec![DEFAULT_BIT_PAIR],
    )
    .expect("built-in code is CSS")
}

/// Ternary Steane code (commuting variant, see [`STEANE_STABILIZERS`]).
///
/// `|0_L>` symmetrizes `|0000000>` over the X-type stabilizer group and
/// `|j_L> = (X1^{⊗7})^j |0_L>`.
pub fn build_steane_ternary() -> Code {
    build_css_from_stabilizers("steane", parse_words(&STEANE_STABILIZERS))
        .expect("built-in code is CSS")
}

/// Generic CSS construction by symmetrizing `|0...0>` over the X-type group.
pub fn build_css_from_stabilizers(name: &str, stabilizers: Vec<PauliWord>) -> Result<Code> {
    let n = stabilizers.first().map(|s| s.len()).unwrap_or(0);
    let mut zero = StateVec::zero(n)?;
    for s in stabilizers.iter().filter(|s| s.is_x_type()) {
        let s1 = zero.apply_word(s)?;
        let s2 = s1.apply_word(s)?;
        let one = Complex64::new(1.0, 0.0);
        zero = StateVec::linear_combination(&[(one, &zero), (one, &s1), (one, &s2)])?;
    }
    let zero = zero.normalized();
    let shift = PauliWord::new(vec![QutritOp::X1; n]);
    let one = zero.apply_word(&shift)?;
    let two = one.apply_word(&shift)?;
    Code::new(name, [zero, one, two], stabilizers, vec![], vec![], vec![])
}

/// Two phase stabilizers on the even / odd qutrits of an n-qutrit register,
/// each alternating X1, X2, X1, ... along its positions.
pub fn partition_stabilizers(n: usize) -> Result<(PauliWord, PauliWord)> {
    if n < 3 {
        return Err(QecError::TooFewQutrits { n, min: 3 });
    }
    let mut even = vec![0u8; n];
    let mut odd = vec![0u8; n];
    for q in 0..n {
        let p = if (q / 2) % 2 == 0 { 1 } else { 2 };
        if q % 2 == 0 {
            even[q] = p;
        } else {
            odd[q] = p;
        }
    }
    Ok((
        PauliWord::from_x_powers(&even),
        PauliWord::from_x_powers(&odd),
    ))
}

/// Every single-qutrit non-identity word on `n` qutrits, qutrit-major.
pub fn single_qutrit_errors(n: usize) -> Vec<PauliWord> {
    (0..n)
        .flat_map(|q| {
            QutritOp::NON_IDENTITY
                .iter()
                .map(move |&op| PauliWord::single(n, q, op))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::statevec::STATE_TOL;

    fn w(s: &str) -> PauliWord {
        s.parse().unwrap()
    }

    #[test]
    fn proposed_code_invariants() {
        let code = build_proposed_code();
        assert!((code.logical()[0].amp(&[0; 7]).re - 1.0 / 3.0).abs() < 1e-15);
        let inv = code.invariants();
        assert!(inv.hold(STATE_TOL), "{inv:?}");
        let one = &code.logical()[1];
        assert!(
            one.apply_word(&code.stabilizers()[0])
                .unwrap()
                .max_abs_diff(one)
                < 1e-12
        );
        assert_eq!(code.x_type_indices(), &[0, 1]);
        assert_eq!(code.z_type_indices(), &[2, 3, 4, 5]);
    }

    #[test]
    fn logical_zero_is_orbit_of_all_zero_ket() {
        // Oracle: apply S1^a S2^b to |0000000> for a, b in 0..3.
        let code = build_proposed_code();
        let zero = StateVec::zero(7).unwrap();
        let mut kets = std::collections::BTreeSet::new();
        for a in 0..3 {
            for b in 0..3 {
                let p = code.stabilizers()[0]
                    .pow(a)
                    .multiply(&code.stabilizers()[1].pow(b))
                    .unwrap();
                let s = zero.apply_word(&p).unwrap();
                kets.insert(s.nonzero_terms(1e-12)[0].0.clone());
            }
        }
        let listed: std::collections::BTreeSet<String> =
            PROPOSED_KETS[0].iter().map(|s| s.to_string()).collect();
        assert_eq!(kets, listed);
    }

    #[test]
    fn steane_variant_is_valid_and_literal_is_not() {
        let code = build_steane_ternary();
        let inv = code.invariants();
        assert!(inv.hold(STATE_TOL), "{inv:?}");
        assert!(code.logical()[0].amp(&[0; 7]).re > 0.0);
        let shift = PauliWord::new(vec![QutritOp::X1; 7]);
        for s in code.stabilizers() {
            assert!(s.commutes_with(&shift).unwrap());
        }
        let literal = parse_words(&STEANE_LITERAL_STABILIZERS);
        assert!(!literal[0].commutes_with(&literal[3]).unwrap());
        assert!(!literal[0].commutes_with(&literal[4]).unwrap());
    }

    #[test]
    fn syndrome_examples() {
        let code = build_proposed_code();
        let syn = |s: &str| code.syndrome_symplectic(&w(s)).unwrap().to_u8();
        assert_eq!(&syn("Z1 I I I I I I")[..2], &[2, 0]);
        assert_eq!(&syn("I I I Z2 I I I")[..2], &[0, 2]);
        assert_eq!(&syn("I I I X1 I I I")[2..], &[2, 1, 1, 2]);
        assert_eq!(
            code.syndrome_symplectic(&w("I I I X1 I I I"))
                .unwrap()
                .triggered(),
            vec![2, 3, 4, 5]
        );
        assert!(code.syndrome_symplectic(&w("X1")).is_err());
    }

    #[test]
    fn statevector_syndromes() {
        let code = build_proposed_code();
        let z = &code.logical()[0];
        assert!(code.syndrome_statevector(z).unwrap().is_trivial());
        let e = w("Z1 I I I I I I");
        let s = z.apply_word(&e).unwrap();
        assert_eq!(
            code.syndrome_statevector(&s).unwrap(),
            code.syndrome_symplectic(&e).unwrap()
        );
        let half = Complex64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
        let sup =
            StateVec::linear_combination(&[(half, &code.logical()[0]), (half, &code.logical()[1])])
                .unwrap();
        let x = w("X1 I I I I I I");
        assert_eq!(
            code.syndrome_statevector(&sup.apply_word(&x).unwrap())
                .unwrap(),
            code.syndrome_symplectic(&x).unwrap()
        );
        // Two different-class errors in superposition: not an eigenstate.
        let mixed = StateVec::linear_combination(&[
            (half, &z.apply_word(&w("X1 I I I I I I")).unwrap()),
            (half, &z.apply_word(&w("I I I I I I X1")).unwrap()),
        ])
        .unwrap();
        assert!(matches!(
            code.syndrome_statevector(&mixed),
            Err(QecError::NotAnEigenstate { .. })
        ));
    }

    #[test]
    fn decode_examples() {
        let code = build_proposed_code();
        assert!(code
            .decode(&Syndrome::from_u8(&[0; 6]))
            .unwrap()
            .is_identity());
        assert_eq!(
            code.decode(&Syndrome::from_u8(&[2, 0, 0, 0, 0, 0]))
                .unwrap(),
            w("Z2 I I I I I I")
        );
        assert_eq!(
            code.decode(&Syndrome::from_u8(&[0, 0, 1, 0, 0, 0]))
                .unwrap(),
            w("X2 I I I I I I")
        );
        // (1, 1, 1, 1) on S3..S6 is not produced by any single or registered pair error.
        assert!(matches!(
            code.decode(&Syndrome::from_u8(&[0, 0, 1, 1, 1, 1])),
            Err(QecError::UnrecognizedSyndrome(_))
        ));
    }

    #[test]
    fn correction_restores_codewords() {
        let code = build_proposed_code();
        let psi = &code.random_logical_states(1, 7)[0];
        for e in ["I I I I X1 I I", "Y11 I I I I I I", "I I I I I I I"] {
            let out = code.correct(&psi.apply_word(&w(e)).unwrap()).unwrap();
            let m = equal_up_to_global_phase(psi, &out, KL_TOL);
            assert!(m.fidelity >= 1.0 - KL_TOL, "{e}");
        }
        // The Z1 part on q2 is decoded as Z1 on q0; the two differ by a
        // logical phase, so only each basis state survives individually.
        let e = w("I I Y11 I I I I");
        let out = code.correct(&psi.apply_word(&e).unwrap()).unwrap();
        assert!(equal_up_to_global_phase(psi, &out, KL_TOL).fidelity < 0.99);
        for l in code.logical() {
            let out = code.correct(&l.apply_word(&e).unwrap()).unwrap();
            assert!(equal_up_to_global_phase(l, &out, KL_TOL).equal);
        }
    }

    #[test]
    fn kl_identity_pair() {
        let code = build_proposed_code();
        let r = code.kl_check(&[PauliWord::identity(7)]).unwrap();
        assert!(r.pass);
        let a = r.entry(0, 0).matrix;
        for (i, row) in a.iter().enumerate() {
            assert!((row[i] - Complex64::new(1.0, 0.0)).norm() < 1e-12);
        }
    }

    #[test]
    fn degeneracy_of_z_errors_on_first_group() {
        let code = build_proposed_code();
        let z10 = w("Z1 I I I I I I");
        let z22 = w("I I Z2 I I I I");
        let a = code.logical()[0].apply_word(&z10).unwrap();
        let b = code.logical()[0].apply_word(&z22).unwrap();
        assert!(a.max_abs_diff(&b) < 1e-12);
        // Same on |0_L>, but the relative phases on |1_L>, |2_L> differ.
        let classes = code.degeneracy_classes(&[z10, z22]).unwrap();
        assert_eq!(classes, vec![vec![0], vec![1]]);

        // Z1 on q0 and q4 differ by the stabilizer Z2 ⊗ I ⊗ I ⊗ I ⊗ Z1 ⊗ I ⊗ I.
        let classes = code
            .degeneracy_classes(&[
                w("Z1 I I I I I I"),
                w("I I I I Z1 I I"),
                w("Z2 Z2 Z1 Z2 I I I"),
                w("I Z1 I I I I I"),
            ])
            .unwrap();
        assert_eq!(classes, vec![vec![0, 1, 2], vec![3]]);
    }

    #[test]
    fn partition_examples() {
        let code = build_proposed_code();
        let (s1, s2) = partition_stabilizers(7).unwrap();
        assert_eq!(s1, code.stabilizers()[0]);
        assert_eq!(s2, code.stabilizers()[1]);
        let (a, b) = partition_stabilizers(3).unwrap();
        assert_eq!(a.support(), vec![0, 2]);
        assert_eq!(b.support(), vec![1]);
        assert!(matches!(
            partition_stabilizers(2),
            Err(QecError::TooFewQutrits { n: 2, min: 3 })
        ));
        for n in 3..12 {
            let (a, b) = partition_stabilizers(n).unwrap();
            assert!(a.commutes_with(&b).unwrap());
        }
    }

    #[test]
    fn code_document_serializes() {
        let doc = build_proposed_code().to_doc();
        assert_eq!(doc.stabilizers[0].to_string(), "X1 I X2 I X1 I X2");
        assert_eq!(doc.phase_table["20"], "Z2 I I I I I I");
        assert_eq!(doc.bit_table["1000"], "X2 I I I I I I");
        let json = serde_json::to_string(&doc).unwrap();
        let back: CodeDoc = serde_json::from_str(&json).unwrap();
        assert_eq!(back.stabilizers, doc.stabilizers);
    }

    #[test]
    fn non_css_words_rejected() {
        let code = build_proposed_code();
        let bad = vec![w("Y11 I I I I I I")];
        assert!(matches!(
            code.with_bit_stabilizers(&bad, None),
            Err(QecError::NonCss(2))
        ));
    }
}
