//! Syndrome-extraction circuits over C+T and Chrestenson gates, their cost
//! model and a per-ancilla statevector simulation.
//!
//! Layout: data wires `0..n`, then one ancilla per stabilizer in stabilizer
//! order. All X-type stabilizers share one Ch1 at the start and one Ch2 at the
//! end on every data qutrit any of them touches; between those sit their C+T
//! gates. The Z-type C+T gates follow. A factor of power `p` becomes `p`
//! copies of C+T(data → ancilla), data qutrits ascending.
//!
//! Readout convention: the ancilla of stabilizer `S` ends in `|k>` where
//! `S` has eigenvalue `ω^k` on the data, i.e. the trit equals the syndrome
//! exponent with a plus sign, for both stabilizer types.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::code::{parse_words, Code, Syndrome, STEANE_LITERAL_STABILIZERS};
use crate::error::{QecError, Result};
use crate::gpauli::{PauliWord, PhaseExp};
use crate::statevec::{Chrestenson, StateVec};

/// Largest deviation of an ancilla marginal from a basis state.
pub const ANCILLA_TOL: f64 = 1e-9;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "gate", rename_all = "snake_case")]
pub enum Gate {
    CPlusT { control: usize, target: usize },
    Ch1 { q: usize },
    Ch2 { q: usize },
}

impl Gate {
    pub fn wires(&self) -> Vec<usize> {
        match *self {
            Gate::CPlusT { control, target } => vec![control, target],
            Gate::Ch1 { q } | Gate::Ch2 { q } => vec![q],
        }
    }

    pub fn is_chrestenson(&self) -> bool {
        !matches!(self, Gate::CPlusT { .. })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Circuit {
    pub data_wires: usize,
    pub ancilla_wires: usize,
    pub stabilizers: Vec<PauliWord>,
    pub gates: Vec<Gate>,
}

/// Build the extraction circuit for a list of CSS stabilizers.
pub fn build_syndrome_circuit(stabilizers: &[PauliWord]) -> Result<Circuit> {
    let n = stabilizers.first().map(|s| s.len()).unwrap_or(0);
    let mut x_type = Vec::new();
    let mut z_type = Vec::new();
    for (k, s) in stabilizers.iter().enumerate() {
        if s.len() != n {
            return Err(QecError::LengthMismatch {
                left: s.len(),
                right: n,
            });
        }
        if s.is_z_type() {
            z_type.push(k);
        } else if s.is_x_type() {
            x_type.push(k);
        } else {
            return Err(QecError::NonCss(k));
        }
    }
    let touched: Vec<usize> = (0..n)
        .filter(|&q| x_type.iter().any(|&k| stabilizers[k].x_powers()[q] != 0))
        .collect();
    let mut gates = Vec::new();
    let push_cplus = |gates: &mut Vec<Gate>, k: usize, powers: Vec<u8>| {
        for (q, &p) in powers.iter().enumerate() {
            for _ in 0..p {
                gates.push(Gate::CPlusT {
                    control: q,
                    target: n + k,
                });
            }
        }
    };
    gates.extend(touched.iter().map(|&q| Gate::Ch1 { q }));
    for &k in &x_type {
        push_cplus(&mut gates, k, stabilizers[k].x_powers());
    }
    gates.extend(touched.iter().map(|&q| Gate::Ch2 { q }));
    for &k in &z_type {
        push_cplus(&mut gates, k, stabilizers[k].z_powers());
    }
    Ok(Circuit {
        data_wires: n,
        ancilla_wires: stabilizers.len(),
        stabilizers: stabilizers.to_vec(),
        gates,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CostReport {
    pub cplus_count: usize,
    pub chrestenson_count: usize,
    pub total_gates: usize,
    /// Largest number of gates touching one wire.
    pub wire_depth: usize,
    /// Wires attaining `wire_depth`.
    pub deepest_wires: Vec<usize>,
    pub per_wire: Vec<usize>,
    /// Depth after as-soon-as-possible layering; informational only.
    pub scheduled_depth: usize,
}

impl CostReport {
    /// Load and argmax restricted to the data wires.
    pub fn data_depth(&self, data_wires: usize) -> (usize, Vec<usize>) {
        let loads = &self.per_wire[..data_wires.min(self.per_wire.len())];
        let max = loads.iter().copied().max().unwrap_or(0);
        let at = (0..loads.len()).filter(|&q| loads[q] == max).collect();
        (max, at)
    }
}

impl Circuit {
    pub fn wires(&self) -> usize {
        self.data_wires + self.ancilla_wires
    }

    pub fn cost(&self) -> CostReport {
        let mut per_wire = vec![0usize; self.wires()];
        let mut layer = vec![0usize; self.wires()];
        let mut cplus_count = 0;
        for g in &self.gates {
            if !g.is_chrestenson() {
                cplus_count += 1;
            }
            let ws = g.wires();
            let next = ws.iter().map(|&w| layer[w]).max().unwrap_or(0) + 1;
            for w in ws {
                per_wire[w] += 1;
                layer[w] = next;
            }
        }
        let wire_depth = per_wire.iter().copied().max().unwrap_or(0);
        let deepest_wires = if wire_depth == 0 {
            Vec::new()
        } else {
            (0..per_wire.len())
                .filter(|&w| per_wire[w] == wire_depth)
                .collect()
        };
        CostReport {
            cplus_count,
            chrestenson_count: self.gates.len() - cplus_count,
            total_gates: self.gates.len(),
            wire_depth,
            deepest_wires,
            per_wire,
            scheduled_depth: layer.into_iter().max().unwrap_or(0),
        }
    }

    /// Plain-text wire diagram: `C`/`c` for Ch1/Ch2, `o` control, `+` target.
    pub fn diagram(&self) -> String {
        let w = self.wires();
        let mut lines: Vec<String> = (0..w)
            .map(|k| {
                if k < self.data_wires {
                    format!("q{k:<2} ")
                } else {
                    format!("a{:<2} ", k - self.data_wires)
                }
            })
            .collect();
        for g in &self.gates {
            let (lo, hi) = match *g {
                Gate::CPlusT { control, target } => (control.min(target), control.max(target)),
                Gate::Ch1 { q } | Gate::Ch2 { q } => (q, q),
            };
            for (k, line) in lines.iter_mut().enumerate() {
                let sym = match *g {
                    Gate::Ch1 { q } if q == k => 'C',
                    Gate::Ch2 { q } if q == k => 'c',
                    Gate::CPlusT { control, .. } if control == k => 'o',
                    Gate::CPlusT { target, .. } if target == k => '+',
                    _ if k > lo && k < hi => '|',
                    _ => '-',
                };
                let _ = write!(line, "-{sym}");
            }
        }
        let mut out = lines.join("-\n");
        out.push_str("-\n");
        out
    }

    /// Gates visible to one ancilla: all Chrestenson gates plus the C+T
    /// gates targeting it, with the ancilla renumbered to `data_wires`.
    fn ancilla_slice(&self, ancilla: usize) -> Vec<Gate> {
        let wire = self.data_wires + ancilla;
        self.gates
            .iter()
            .filter_map(|g| match *g {
                Gate::CPlusT { control, target } if target == wire => Some(Gate::CPlusT {
                    control,
                    target: self.data_wires,
                }),
                Gate::CPlusT { .. } => None,
                other => Some(other),
            })
            .collect()
    }
}

/// Run the circuit on `data` (ancillas start in `|0>`) and read every
/// ancilla. Each ancilla is simulated on its own `data ⊗ ancilla` register:
/// gates on other ancillas only use the data as control and leave this
/// ancilla's marginal unchanged.
pub fn simulate_extraction(c: &Circuit, data: &StateVec) -> Result<Syndrome> {
    if data.n() != c.data_wires {
        return Err(QecError::LengthMismatch {
            left: data.n(),
            right: c.data_wires,
        });
    }
    let start = data.tensor(&StateVec::zero(1)?)?;
    let mut exps = Vec::with_capacity(c.ancilla_wires);
    for a in 0..c.ancilla_wires {
        let mut s = start.clone();
        for g in c.ancilla_slice(a) {
            s = match g {
                Gate::CPlusT { control, target } => s.apply_cplus(control, target)?,
                Gate::Ch1 { q } => s.apply_chrestenson(q, Chrestenson::One)?,
                Gate::Ch2 { q } => s.apply_chrestenson(q, Chrestenson::Two)?,
            };
        }
        let m = s.marginal(c.data_wires)?;
        let (k, p) =
            m.iter().copied().enumerate().fold(
                (0, f64::MIN),
                |acc, (k, p)| if p > acc.1 { (k, p) } else { acc },
            );
        if p < 1.0 - ANCILLA_TOL {
            return Err(QecError::AncillaNotDefinite {
                ancilla: a,
                max_probability: p,
            });
        }
        exps.push(PhaseExp::new(k as i64));
    }
    Ok(Syndrome::new(exps))
}

/// Circuit for a code's own stabilizers.
pub fn code_circuit(code: &Code) -> Circuit {
    build_syndrome_circuit(code.stabilizers()).expect("codes are CSS")
}

/// Costs of the full circuit and of its Z-type (bit) and X-type (phase)
/// parts built on their own.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SplitCost {
    pub full: CostReport,
    pub bit: CostReport,
    pub phase: CostReport,
    pub data_wires: usize,
}

pub fn split_cost(stabilizers: &[PauliWord]) -> Result<SplitCost> {
    let full = build_syndrome_circuit(stabilizers)?;
    let pick = |f: fn(&PauliWord) -> bool| -> Vec<PauliWord> {
        stabilizers.iter().filter(|s| f(s)).cloned().collect()
    };
    let bit: Vec<PauliWord> = pick(|s| s.is_z_type());
    let phase: Vec<PauliWord> = pick(|s| s.is_x_type() && !s.is_z_type());
    Ok(SplitCost {
        full: full.cost(),
        bit: build_syndrome_circuit(&bit)?.cost(),
        phase: build_syndrome_circuit(&phase)?.cost(),
        data_wires: full.data_wires,
    })
}

/// One column of the gate-cost comparison.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CostColumn {
    pub name: String,
    pub qutrits: usize,
    pub bit_gates: usize,
    pub phase_gates: usize,
    pub total_gates: usize,
    pub depth: usize,
    /// Data wires attaining `depth`; empty for external rows.
    pub deepest: Vec<usize>,
    /// `false` for values copied from the literature rather than computed.
    pub computed: bool,
    pub note: String,
}

/// Published (bit, phase, total, depth) figures per column.
pub const REFERENCE_COSTS: [(&str, usize, usize, usize, usize); 4] = [
    ("9-qutrit QECC", 52, 210, 262, 26),
    ("6-qutrit AQECC", 18, 20, 38, 8),
    ("ternary Steane", 12, 26, 38, 8),
    ("proposed", 24, 24, 48, 10),
];

fn computed_column(name: &str, stabilizers: &[PauliWord], note: &str) -> Result<CostColumn> {
    let sc = split_cost(stabilizers)?;
    let (depth, deepest) = sc.full.data_depth(sc.data_wires);
    Ok(CostColumn {
        name: name.into(),
        qutrits: sc.data_wires,
        bit_gates: sc.bit.total_gates,
        phase_gates: sc.phase.total_gates,
        total_gates: sc.full.total_gates,
        depth,
        deepest,
        computed: true,
        note: note.into(),
    })
}

fn external_column(idx: usize, qutrits: usize) -> CostColumn {
    let (name, bit, phase, total, depth) = REFERENCE_COSTS[idx];
    CostColumn {
        name: name.into(),
        qutrits,
        bit_gates: bit,
        phase_gates: phase,
        total_gates: total,
        depth,
        deepest: Vec::new(),
        computed: false,
        note: "external, not computed".into(),
    }
}

/// Steane column computed from the literal X→X1, Z→Z1 words.
pub fn steane_literal_column() -> CostColumn {
    computed_column(
        "ternary Steane",
        &parse_words(&STEANE_LITERAL_STABILIZERS),
        "literal X→X1, Z→Z1 words",
    )
    .expect("built-in words are CSS")
}

/// Steane column for the commuting stabilizers actually used for decoding.
pub fn steane_commuting_column(code: &Code) -> CostColumn {
    computed_column(
        "ternary Steane (commuting)",
        code.stabilizers(),
        "Z rows carry Z2 factors; not in the published comparison",
    )
    .expect("codes are CSS")
}

pub fn proposed_column(code: &Code) -> CostColumn {
    computed_column("proposed", code.stabilizers(), "").expect("codes are CSS")
}

/// Full comparison: two external columns, then the computed ones.
pub fn table3_report(steane: &Code, proposed: &Code) -> Vec<CostColumn> {
    vec![
        external_column(0, 9),
        external_column(1, 6),
        steane_literal_column(),
        steane_commuting_column(steane),
        proposed_column(proposed),
    ]
}

pub fn render_cost_markdown(cols: &[CostColumn]) -> String {
    let mut out = String::from(
        "| code | qutrits | bit gates | phase gates | total | depth | deepest wires | source |\n\
         |---|---|---|---|---|---|---|---|\n",
    );
    for c in cols {
        let deep: Vec<String> = c.deepest.iter().map(|q| format!("q{q}")).collect();
        let source = if c.computed {
            if c.note.is_empty() {
                "computed".to_string()
            } else {
                format!("computed ({})", c.note)
            }
        } else {
            c.note.clone()
        };
        let _ = writeln!(
            out,
            "| {} | {} | {} | {} | {} | {} | {} | {} |",
            c.name,
            c.qutrits,
            c.bit_gates,
            c.phase_gates,
            c.total_gates,
            c.depth,
            if deep.is_empty() {
                "-".into()
            } else {
                deep.join(" ")
            },
            source
        );
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::code::{build_proposed_code, build_steane_ternary};
    use crate::gpauli::QutritOp;

    #[test]
    fn empty_and_single_gate() {
        let c = build_syndrome_circuit(&[]).unwrap();
        assert!(c.gates.is_empty());
        assert_eq!(c.cost().wire_depth, 0);
        let one: PauliWord = "Z1 I".parse().unwrap();
        let c = build_syndrome_circuit(&[one]).unwrap();
        assert_eq!(c.cost().wire_depth, 1);
        assert_eq!(c.cost().total_gates, 1);
    }

    #[test]
    fn mixed_word_rejected() {
        let w: PauliWord = "X1 Z1".parse().unwrap();
        assert_eq!(build_syndrome_circuit(&[w]), Err(QecError::NonCss(0)));
    }

    #[test]
    fn steane_literal_costs() {
        let sc = split_cost(&parse_words(&STEANE_LITERAL_STABILIZERS)).unwrap();
        assert_eq!((sc.full.cplus_count, sc.full.chrestenson_count), (24, 14));
        assert_eq!(sc.full.data_depth(7), (8, vec![6]));
        assert_eq!((sc.bit.total_gates, sc.phase.total_gates), (12, 26));
    }

    #[test]
    fn proposed_costs() {
        let code = build_proposed_code();
        let sc = split_cost(code.stabilizers()).unwrap();
        assert_eq!(sc.full.total_gates, 48);
        assert_eq!(sc.full.data_depth(7), (10, vec![3]));
        assert_eq!(sc.phase.data_depth(7), (4, vec![2, 3, 6]));
        assert_eq!(sc.bit.data_depth(7), (6, vec![3]));
    }

    #[test]
    fn extraction_matches_symplectic_on_samples() {
        for code in [build_proposed_code(), build_steane_ternary()] {
            let c = code_circuit(&code);
            let zero = &code.logical()[0];
            assert!(simulate_extraction(&c, zero).unwrap().is_trivial());
            for (q, op) in [
                (0, QutritOp::Z1),
                (0, QutritOp::X1),
                (3, QutritOp::new(2, 1)),
            ] {
                let e = PauliWord::single(7, q, op);
                let got = simulate_extraction(&c, &zero.apply_word(&e).unwrap()).unwrap();
                assert_eq!(
                    got,
                    code.syndrome_symplectic(&e).unwrap(),
                    "{}",
                    code.name()
                );
            }
        }
    }

    #[test]
    fn superposed_syndromes_rejected() {
        let code = build_proposed_code();
        let c = code_circuit(&code);
        let zero = &code.logical()[0];
        let a = zero
            .apply_word(&PauliWord::single(7, 0, QutritOp::X1))
            .unwrap();
        let b = zero
            .apply_word(&PauliWord::single(7, 6, QutritOp::X1))
            .unwrap();
        let h = num_complex::Complex64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
        let mix = StateVec::linear_combination(&[(h, &a), (h, &b)]).unwrap();
        assert!(matches!(
            simulate_extraction(&c, &mix),
            Err(QecError::AncillaNotDefinite { .. })
        ));
    }

    #[test]
    fn json_and_diagram_render() {
        let c = code_circuit(&build_proposed_code());
        let j = serde_json::to_string(&c).unwrap();
        assert!(j.starts_with("{\"data_wires\":7,\"ancilla_wires\":6"));
        assert_eq!(j.matches("\"gate\"").count(), 48);
        assert_eq!(c.diagram().lines().count(), 13);
    }
}
