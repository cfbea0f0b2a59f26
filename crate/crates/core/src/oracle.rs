//! Exhaustive verification sweeps over error patterns, low-weight logical
//! operators, g2-pair impossibility witnesses and pair-error syndromes.

use itertools::Itertools;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::code::{single_qutrit_errors, Code, KL_TOL, LOGICAL_STATE_SEED};
use crate::error::{QecError, Result};
use crate::exec::Exec;
use crate::gpauli::{PauliWord, PhaseExp, QutritOp};
use crate::statevec::{equal_up_to_global_phase, StateVec};

/// Largest weight bound accepted by [`find_low_weight_logicals`].
pub const MAX_LOGICAL_SEARCH_WEIGHT: usize = 3;

/// Number of pseudorandom logical states added to the basis states in
/// [`sweep_single_errors`].
pub const RANDOM_STATES: usize = 3;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Outcome {
    /// The correction cancels the error exactly.
    Corrected,
    /// The correction differs from the error's inverse but the product acts
    /// trivially on the code space.
    DegenerateCorrected,
    /// Nonzero, recognized syndrome; the state is not restored.
    LogicalFault,
    /// Zero syndrome; the state is not restored.
    Undetected,
    /// Syndrome missing from the decode tables.
    Unrecognized,
}

impl Outcome {
    pub const ALL: [Outcome; 5] = [
        Outcome::Corrected,
        Outcome::DegenerateCorrected,
        Outcome::LogicalFault,
        Outcome::Undetected,
        Outcome::Unrecognized,
    ];

    pub fn is_success(self) -> bool {
        matches!(self, Outcome::Corrected | Outcome::DegenerateCorrected)
    }

    pub fn label(self) -> &'static str {
        match self {
            Outcome::Corrected => "corrected",
            Outcome::DegenerateCorrected => "degenerate-corrected",
            Outcome::LogicalFault => "logical-fault",
            Outcome::Undetected => "undetected",
            Outcome::Unrecognized => "unrecognized",
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct OutcomeCounts {
    pub corrected: usize,
    pub degenerate_corrected: usize,
    pub logical_fault: usize,
    pub undetected: usize,
    pub unrecognized: usize,
}

impl OutcomeCounts {
    pub fn add(&mut self, o: Outcome) {
        *self.slot(o) += 1;
    }

    fn slot(&mut self, o: Outcome) -> &mut usize {
        match o {
            Outcome::Corrected => &mut self.corrected,
            Outcome::DegenerateCorrected => &mut self.degenerate_corrected,
            Outcome::LogicalFault => &mut self.logical_fault,
            Outcome::Undetected => &mut self.undetected,
            Outcome::Unrecognized => &mut self.unrecognized,
        }
    }

    pub fn get(&self, o: Outcome) -> usize {
        let mut c = *self;
        *c.slot(o)
    }

    pub fn total(&self) -> usize {
        Outcome::ALL.iter().map(|&o| self.get(o)).sum()
    }

    pub fn successes(&self) -> usize {
        self.corrected + self.degenerate_corrected
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PatternResult {
    pub error: PauliWord,
    pub weight: usize,
    pub syndrome: Vec<u8>,
    pub correction: Option<PauliWord>,
    pub outcome: Outcome,
    /// Smallest fidelity between a test state and its corrected image.
    pub min_fidelity: f64,
    /// Every logical basis state is restored up to its own phase, even if
    /// the phases differ between them.
    pub each_basis_restored: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SweepReport {
    pub suite: String,
    pub code: String,
    pub states_per_pattern: usize,
    pub patterns: Vec<PatternResult>,
    pub counts: OutcomeCounts,
    /// `(weight, counts)` in ascending weight.
    pub by_weight: Vec<(usize, OutcomeCounts)>,
}

impl SweepReport {
    fn new(suite: &str, code: &Code, states: usize, patterns: Vec<PatternResult>) -> Self {
        let mut counts = OutcomeCounts::default();
        let mut by_weight: Vec<(usize, OutcomeCounts)> = Vec::new();
        for p in &patterns {
            counts.add(p.outcome);
            match by_weight.iter_mut().find(|(w, _)| *w == p.weight) {
                Some((_, c)) => c.add(p.outcome),
                None => {
                    let mut c = OutcomeCounts::default();
                    c.add(p.outcome);
                    by_weight.push((p.weight, c));
                }
            }
        }
        by_weight.sort_by_key(|(w, _)| *w);
        SweepReport {
            suite: suite.into(),
            code: code.name().into(),
            states_per_pattern: states,
            patterns,
            counts,
            by_weight,
        }
    }

    pub fn all_succeeded(&self) -> bool {
        self.counts.successes() == self.patterns.len()
    }

    pub fn first_failure(&self) -> Option<&PatternResult> {
        self.patterns.iter().find(|p| !p.outcome.is_success())
    }

    pub fn render_markdown(&self) -> String {
        let mut out = format!(
            "{} on `{}`: {} patterns, {} states each\n\n| weight |",
            self.suite,
            self.code,
            self.patterns.len(),
            self.states_per_pattern
        );
        for o in Outcome::ALL {
            out.push_str(&format!(" {} |", o.label()));
        }
        out.push_str("\n|---|");
        out.push_str(&"---|".repeat(Outcome::ALL.len()));
        out.push('\n');
        let rows = self
            .by_weight
            .iter()
            .map(|(w, c)| (w.to_string(), *c))
            .chain(std::iter::once(("all".to_string(), self.counts)));
        for (w, c) in rows {
            out.push_str(&format!("| {w} |"));
            for o in Outcome::ALL {
                out.push_str(&format!(" {} |", c.get(o)));
            }
            out.push('\n');
        }
        out
    }
}

fn classify(
    code: &Code,
    e: &PauliWord,
    states: &[StateVec],
    basis_count: usize,
) -> Result<PatternResult> {
    let syn = code.syndrome_symplectic(e)?;
    let mut result = PatternResult {
        error: e.clone(),
        weight: e.weight(),
        syndrome: syn.to_u8(),
        correction: None,
        outcome: Outcome::Unrecognized,
        min_fidelity: 0.0,
        each_basis_restored: false,
    };
    let c = match code.decode(&syn) {
        Ok(c) => c,
        Err(QecError::UnrecognizedSyndrome(_)) => return Ok(result),
        Err(other) => return Err(other),
    };
    let mut min_fid = f64::INFINITY;
    let mut all_restored = true;
    let mut each = true;
    let mut common: Option<Complex64> = None;
    for (k, s) in states.iter().enumerate() {
        let out = code.correct(&s.apply_word(e)?)?;
        let m = equal_up_to_global_phase(s, &out, KL_TOL);
        min_fid = min_fid.min(m.fidelity);
        if k < basis_count {
            each &= m.equal;
        }
        match (m.phase, common) {
            (None, _) => all_restored = false,
            (Some(p), None) => common = Some(p),
            (Some(p), Some(c0)) => {
                if k < basis_count && (p - c0).norm() > 1e-7 {
                    all_restored = false;
                }
            }
        }
    }
    let exact = c.multiply(e)?.is_identity();
    result.outcome = if all_restored {
        if exact {
            Outcome::Corrected
        } else {
            Outcome::DegenerateCorrected
        }
    } else if syn.is_trivial() {
        Outcome::Undetected
    } else {
        Outcome::LogicalFault
    };
    result.correction = Some(c);
    result.min_fidelity = min_fid;
    result.each_basis_restored = each;
    Ok(result)
}

/// Apply each error to every test state, correct, and classify. The first
/// `basis_count` states are the logical basis; restoration there must hold
/// with one common phase.
pub fn sweep_errors_with(
    code: &Code,
    suite: &str,
    errors: &[PauliWord],
    states: &[StateVec],
    basis_count: usize,
    exec: Exec,
) -> Result<SweepReport> {
    let results = exec.map(errors, |e| classify(code, e, states, basis_count));
    let patterns = results.into_iter().collect::<Result<Vec<_>>>()?;
    Ok(SweepReport::new(suite, code, states.len(), patterns))
}

/// The three logical basis states followed by the fixed-seed random ones.
pub fn test_states(code: &Code) -> Vec<StateVec> {
    let mut states = code.logical().to_vec();
    states.extend(code.random_logical_states(RANDOM_STATES, LOGICAL_STATE_SEED));
    states
}

pub fn sweep_single_errors(code: &Code) -> Result<SweepReport> {
    sweep_single_errors_with(code, Exec::default())
}

/// All 56 single-qutrit errors on the basis states plus three random states.
pub fn sweep_single_errors_with(code: &Code, exec: Exec) -> Result<SweepReport> {
    let errors = single_qutrit_errors(code.n());
    sweep_errors_with(code, "single-errors", &errors, &test_states(code), 3, exec)
}

/// Every pattern in `{I, Z1, Z2}^{⊗n}`, enumerated with qutrit 0 as the most
/// significant digit.
pub fn all_phase_patterns(n: usize) -> Vec<PauliWord> {
    (0..n)
        .map(|_| 0..3u8)
        .multi_cartesian_product()
        .map(|p| PauliWord::from_z_powers(&p))
        .collect()
}

pub fn sweep_phase_patterns(code: &Code) -> Result<SweepReport> {
    sweep_phase_patterns_with(code, Exec::default())
}

/// All `3^n` Z-patterns on the three logical basis states.
pub fn sweep_phase_patterns_with(code: &Code, exec: Exec) -> Result<SweepReport> {
    let errors = all_phase_patterns(code.n());
    sweep_errors_with(code, "phase-patterns", &errors, code.logical(), 3, exec)
}

/// How a zero-syndrome word acts on the logical basis.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum LogicalAction {
    Identity,
    /// `|j_L> → ω^{phases[j]} |j+shift_L>` up to one global phase, with
    /// `phases[0] = 0`.
    Shift {
        shift: u8,
        phases: [PhaseExp; 3],
    },
    /// Not a phased permutation of the logical basis.
    Other,
}

impl LogicalAction {
    pub fn from_matrix(m: &[[Complex64; 3]; 3]) -> LogicalAction {
        for shift in 0..3u8 {
            let s = shift as usize;
            if (0..3).all(|j| (m[(j + s) % 3][j].norm() - 1.0).abs() < 1e-7) {
                let base = m[s][0];
                let mut phases = [PhaseExp::ONE; 3];
                for (j, slot) in phases.iter_mut().enumerate() {
                    let (k, d) = PhaseExp::nearest(m[(j + s) % 3][j] / base);
                    if d > 1e-7 {
                        return LogicalAction::Other;
                    }
                    *slot = k;
                }
                if shift == 0 && phases.iter().all(|p| p.is_one()) {
                    return LogicalAction::Identity;
                }
                return LogicalAction::Shift { shift, phases };
            }
        }
        LogicalAction::Other
    }

    pub fn describe(&self) -> String {
        match self {
            LogicalAction::Identity => "identity".into(),
            LogicalAction::Shift { shift, phases } => {
                let ps: Vec<String> = phases.iter().map(|p| p.to_string()).collect();
                if *shift == 0 {
                    format!("diag({})", ps.join(", "))
                } else {
                    format!("shift +{shift}, phases ({})", ps.join(", "))
                }
            }
            LogicalAction::Other => "other".into(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LogicalOpFinding {
    pub word: PauliWord,
    pub weight: usize,
    pub action: LogicalAction,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LowWeightReport {
    pub code: String,
    pub wmax: usize,
    pub candidates: usize,
    /// Words with all-zero syndrome, including stabilizer-equivalent ones.
    pub zero_syndrome: usize,
    pub findings: Vec<LogicalOpFinding>,
}

impl LowWeightReport {
    pub fn min_weight(&self) -> Option<usize> {
        self.findings.iter().map(|f| f.weight).min()
    }

    pub fn contains(&self, w: &PauliWord) -> bool {
        self.findings.iter().any(|f| &f.word == w)
    }
}

/// All words of weight `1..=wmax` over the eight non-identity operators, by
/// weight, then support, then operators in [`QutritOp::NON_IDENTITY`] order.
pub fn words_up_to_weight(n: usize, wmax: usize) -> Vec<PauliWord> {
    let mut out = Vec::new();
    for w in 1..=wmax {
        for support in (0..n).combinations(w) {
            for ops in (0..w)
                .map(|_| QutritOp::NON_IDENTITY.iter())
                .multi_cartesian_product()
            {
                let mut word = vec![QutritOp::I; n];
                for (q, op) in support.iter().zip(ops) {
                    word[*q] = *op;
                }
                out.push(PauliWord::new(word));
            }
        }
    }
    out
}

pub fn find_low_weight_logicals(code: &Code, wmax: usize) -> Result<LowWeightReport> {
    find_low_weight_logicals_with(code, wmax, Exec::default())
}

/// Zero-syndrome words of weight at most `wmax` whose codespace action is
/// not the identity (up to a global phase).
pub fn find_low_weight_logicals_with(
    code: &Code,
    wmax: usize,
    exec: Exec,
) -> Result<LowWeightReport> {
    if wmax > MAX_LOGICAL_SEARCH_WEIGHT {
        return Err(QecError::WeightBound {
            wmax,
            max: MAX_LOGICAL_SEARCH_WEIGHT,
        });
    }
    let words = words_up_to_weight(code.n(), wmax);
    let hits: Vec<Option<(bool, Option<LogicalOpFinding>)>> = exec.map(&words, |w| {
        let syn = code.syndrome_symplectic(w).expect("sizes match");
        if !syn.is_trivial() {
            return None;
        }
        let action = LogicalAction::from_matrix(&code.logical_action(w).expect("sizes match"));
        let finding = (action != LogicalAction::Identity).then(|| LogicalOpFinding {
            word: w.clone(),
            weight: w.weight(),
            action,
        });
        Some((true, finding))
    });
    let zero_syndrome = hits.iter().flatten().count();
    let findings = hits.into_iter().flatten().filter_map(|(_, f)| f).collect();
    Ok(LowWeightReport {
        code: code.name().into(),
        wmax,
        candidates: words.len(),
        zero_syndrome,
        findings,
    })
}

/// Z-type words commuting with every X-type stabilizer and fixing all three
/// logical states, in [`all_phase_patterns`] order (identity first).
pub fn valid_z_stabilizers(code: &Code) -> Vec<PauliWord> {
    valid_z_stabilizers_with(code, Exec::default())
}

pub fn valid_z_stabilizers_with(code: &Code, exec: Exec) -> Vec<PauliWord> {
    let xs: Vec<&PauliWord> = code
        .x_type_indices()
        .iter()
        .map(|&i| &code.stabilizers()[i])
        .collect();
    let candidates = all_phase_patterns(code.n());
    let keep = exec.map(&candidates, |w| {
        xs.iter().all(|s| s.commutes_with(w).expect("sizes match")) && fixes_code(code, w)
    });
    candidates
        .into_iter()
        .zip(keep)
        .filter_map(|(w, k)| k.then_some(w))
        .collect()
}

/// `w|j_L> = |j_L>` for every logical basis state, within 1e-10.
pub fn fixes_code(code: &Code, w: &PauliWord) -> bool {
    code.logical().iter().all(|l| {
        l.apply_word(w)
            .map(|img| img.max_abs_diff(l) < crate::statevec::STATE_TOL)
            .unwrap_or(false)
    })
}

/// Two bit errors on a g2 pair that no Z-type stabilizer of the code can
/// tell apart.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub pair: (usize, usize),
    pub first: PauliWord,
    pub second: PauliWord,
    /// Number of valid Z-type stabilizers the syndromes were compared on.
    pub stabilizers_checked: usize,
    /// The two errors act identically on the code space (up to a common
    /// phase), so misidentifying them is harmless.
    pub same_codespace_action: bool,
}

pub fn lemma4_search(code: &Code, pair: (usize, usize)) -> Result<Witness> {
    lemma4_search_with(code, pair, Exec::default())
}

/// Search for a pair error on `pair` and a different error (single bit error
/// on the remaining g2 qutrit first, then other pair errors) with identical
/// syndromes under every valid Z-type stabilizer.
pub fn lemma4_search_with(code: &Code, pair: (usize, usize), exec: Exec) -> Result<Witness> {
    let (i, j) = pair;
    let g2 = code.g2();
    if i == j || !g2.contains(&i) || !g2.contains(&j) {
        return Err(QecError::InvalidPair(i, j));
    }
    let n = code.n();
    let valid = valid_z_stabilizers_with(code, exec);
    let syndrome = |e: &PauliWord| -> Vec<u8> {
        valid
            .iter()
            .map(|s| s.commutation_phase(e).expect("sizes match").get())
            .collect()
    };
    let pairs = pair_errors(n, i, j);
    let mut others: Vec<PauliWord> = g2
        .iter()
        .filter(|&&k| k != i && k != j)
        .flat_map(|&k| [QutritOp::X1, QutritOp::X2].map(|op| PauliWord::single(n, k, op)))
        .collect();
    others.extend(pairs.iter().cloned());
    for a in &pairs {
        let sa = syndrome(a);
        for b in others.iter().filter(|b| *b != a) {
            if syndrome(b) == sa {
                let same = code.degeneracy_classes(&[a.clone(), b.clone()])?.len() == 1;
                return Ok(Witness {
                    pair,
                    first: a.clone(),
                    second: b.clone(),
                    stabilizers_checked: valid.len(),
                    same_codespace_action: same,
                });
            }
        }
    }
    Err(QecError::NoWitness(i, j))
}

/// `X_a` on `i` times `X_b` on `j` for `a, b ∈ {1, 2}`, `a` major.
pub fn pair_errors(n: usize, i: usize, j: usize) -> Vec<PauliWord> {
    let mut out = Vec::with_capacity(4);
    for a in 1..=2u8 {
        for b in 1..=2u8 {
            let mut p = vec![0u8; n];
            p[i] = a;
            p[j] = b;
            out.push(PauliWord::from_x_powers(&p));
        }
    }
    out
}

/// Single X1/X2 errors, qutrit-major.
pub fn single_bit_errors(n: usize) -> Vec<PauliWord> {
    (0..n)
        .flat_map(|q| [QutritOp::X1, QutritOp::X2].map(|op| PauliWord::single(n, q, op)))
        .collect()
}

fn zset_syndrome(zset: &[PauliWord], e: &PauliWord) -> Result<Vec<u8>> {
    zset.iter()
        .map(|s| s.commutation_phase(e).map(|c| c.get()))
        .collect()
}

/// Whether `zset` gives the four pair errors on `(i, j)` nonzero syndromes,
/// distinct from each other and from every single bit error.
pub fn pair_error_check(code: &Code, zset: &[PauliWord], pair: (usize, usize)) -> Result<bool> {
    let n = code.n();
    let (i, j) = pair;
    if i == j || i >= n || j >= n {
        return Err(QecError::InvalidPair(i, j));
    }
    for w in zset {
        if w.len() != n {
            return Err(QecError::LengthMismatch {
                left: w.len(),
                right: n,
            });
        }
    }
    let singles = single_bit_errors(n)
        .iter()
        .map(|e| zset_syndrome(zset, e))
        .collect::<Result<Vec<_>>>()?;
    let pairs = pair_errors(n, i, j)
        .iter()
        .map(|e| zset_syndrome(zset, e))
        .collect::<Result<Vec<_>>>()?;
    let nonzero = pairs.iter().all(|s| s.iter().any(|&k| k != 0));
    let distinct = pairs.iter().all_unique();
    let apart = pairs.iter().all(|p| !singles.contains(p));
    Ok(nonzero && distinct && apart)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::code::{build_proposed_code, build_steane_ternary, parse_words};

    #[test]
    fn enumeration_sizes() {
        assert_eq!(words_up_to_weight(7, 2).len(), 1400);
        assert_eq!(words_up_to_weight(7, 3).len(), 1400 + 17920);
        assert_eq!(all_phase_patterns(7).len(), 2187);
    }

    #[test]
    fn identity_error_is_corrected() {
        let code = build_proposed_code();
        let r = sweep_errors_with(
            &code,
            "id",
            &[PauliWord::identity(7)],
            code.logical(),
            3,
            Exec::Sequential,
        )
        .unwrap();
        assert_eq!(r.counts.corrected, 1);
    }

    #[test]
    fn valid_z_words_count() {
        let code = build_proposed_code();
        assert_eq!(valid_z_stabilizers(&code).len(), 81);
    }

    #[test]
    fn pair_check_examples() {
        let code = build_proposed_code();
        let z: Vec<PauliWord> = code
            .z_type_indices()
            .iter()
            .map(|&i| code.stabilizers()[i].clone())
            .collect();
        assert!(pair_error_check(&code, &z, (0, 6)).unwrap());
        assert!(!pair_error_check(&code, &z, (1, 3)).unwrap());
        let appendix = parse_words(&[
            "Z2 Z1 Z2 Z1 I I I",
            "I I I Z2 Z1 Z2 Z1",
            "Z1 I Z1 Z2 I Z2 I",
            "Z1 I I Z2 I Z2 Z1",
        ]);
        assert!(pair_error_check(&code, &appendix, (1, 4)).unwrap());
    }

    #[test]
    fn lemma4_rejects_non_g2() {
        let code = build_proposed_code();
        assert_eq!(
            lemma4_search(&code, (0, 6)),
            Err(QecError::InvalidPair(0, 6))
        );
    }

    #[test]
    fn action_classification() {
        let code = build_steane_ternary();
        let all_x = PauliWord::new(vec![QutritOp::X1; 7]);
        let a = LogicalAction::from_matrix(&code.logical_action(&all_x).unwrap());
        assert!(matches!(a, LogicalAction::Shift { shift: 1, .. }));
        let s = &code.stabilizers()[0];
        let a = LogicalAction::from_matrix(&code.logical_action(s).unwrap());
        assert_eq!(a, LogicalAction::Identity);
    }
}
