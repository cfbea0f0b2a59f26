//! Bit-error stabilizers S3..S6 registering simultaneous bit errors on a
//! chosen qutrit pair: the greedy minimum-count construction, a predicate
//! validator and an exhaustive search over valid Z-type words.
//!
//! Greedy construction, for a pair `(i, j)` with `i < j`:
//! seed `Z1` at `i` on S3 and at `j` on S4, force identity at `i` on the
//! other three words and at `j` on S3, S5, S6, then fill stabilizers in order
//! S3..S6 and within each the g1 positions before the g2 positions. Every
//! word receives two non-identity positions per group. Positions are taken
//! by smallest count `d` (non-identity entries so far per qutrit); ties
//! prefer positions whose S1/S2 factors differ, then the lowest index. On S6
//! a pair with equal counts and identical support over S3..S5 is broken by
//! replacing the second position with the next smallest-count one. Once a
//! word's positions are fixed its operators are the first Z1/Z2 assignment
//! (Z1 before Z2, ascending position) with two of each, commuting with the
//! phase stabilizers and fixing all logical states.

use std::collections::BTreeMap;

use itertools::Itertools;
use serde::{Deserialize, Serialize};

use crate::code::Code;
use crate::error::{QecError, Result};
use crate::exec::Exec;
use crate::gpauli::{PauliWord, QutritOp};
use crate::oracle::{fixes_code, pair_error_check, single_bit_errors, valid_z_stabilizers_with};

/// Number of bit stabilizers generated.
pub const ZSET_LEN: usize = 4;

/// Four Z-type words, S3..S6.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ZStabSet(pub Vec<PauliWord>);

impl ZStabSet {
    pub fn words(&self) -> &[PauliWord] {
        &self.0
    }

    /// Non-identity entries per qutrit.
    pub fn counts(&self) -> Vec<u8> {
        let n = self.0.first().map(|w| w.len()).unwrap_or(0);
        (0..n)
            .map(|q| self.0.iter().filter(|w| !w.op(q).is_identity()).count() as u8)
            .collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraceStep {
    pub label: String,
    /// 0 for S3 .. 3 for S6.
    pub stabilizer: Option<usize>,
    /// 1 or 2.
    pub group: Option<u8>,
    pub chosen: Vec<usize>,
    pub d: Vec<u8>,
}

/// Ordered construction steps, each with the count tuple after it.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct GenTrace {
    pub steps: Vec<TraceStep>,
}

impl GenTrace {
    fn push(
        &mut self,
        label: &str,
        stab: Option<usize>,
        group: Option<u8>,
        chosen: &[usize],
        d: &[u8],
    ) {
        self.steps.push(TraceStep {
            label: label.into(),
            stabilizer: stab,
            group,
            chosen: chosen.to_vec(),
            d: d.to_vec(),
        });
    }

    /// Count tuple after seeding the pair.
    pub fn after_seed(&self) -> Option<&[u8]> {
        self.steps
            .iter()
            .find(|s| s.label == "seed")
            .map(|s| s.d.as_slice())
    }

    /// Count tuple after the `k`-th position fill (1-based).
    pub fn after_fill(&self, k: usize) -> Option<&[u8]> {
        self.steps
            .iter()
            .filter(|s| s.label == "fill")
            .nth(k.checked_sub(1)?)
            .map(|s| s.d.as_slice())
    }

    pub fn final_d(&self) -> Option<&[u8]> {
        self.steps.last().map(|s| s.d.as_slice())
    }
}

/// Forced position choices keyed by `(stabilizer 0..4, group 1|2)`; groups
/// without an entry use the default rule.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct TieBreak {
    pub forced: BTreeMap<(usize, u8), Vec<usize>>,
}

impl TieBreak {
    pub fn force(mut self, stabilizer: usize, group: u8, positions: &[usize]) -> Self {
        self.forced.insert((stabilizer, group), positions.to_vec());
        self
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Cell {
    Open,
    Identity,
    Picked,
    Op(u8),
}

impl Cell {
    fn non_identity(self) -> bool {
        matches!(self, Cell::Picked | Cell::Op(_))
    }
}

fn check_pair(code: &Code, pair: (usize, usize)) -> Result<(usize, usize)> {
    let (a, b) = pair;
    let n = code.n();
    if a == b || a >= n || b >= n {
        return Err(QecError::InvalidPair(a, b));
    }
    let (i, j) = (a.min(b), a.max(b));
    if code.g2().contains(&i) && code.g2().contains(&j) {
        return Err(QecError::PairUnsupported(i, j));
    }
    Ok((i, j))
}

pub fn generate(code: &Code, pair: (usize, usize)) -> Result<(ZStabSet, GenTrace)> {
    generate_with(code, pair, &TieBreak::default())
}

/// Greedy construction with optional forced position choices. The result
/// always passes [`validate`]; otherwise `GenerationFailed` names the
/// first failing step or predicate.
pub fn generate_with(
    code: &Code,
    pair: (usize, usize),
    ties: &TieBreak,
) -> Result<(ZStabSet, GenTrace)> {
    let (i, j) = check_pair(code, pair)?;
    let n = code.n();
    let fail = |reason: String| QecError::GenerationFailed { i, j, reason };
    let xs: Vec<&PauliWord> = code
        .x_type_indices()
        .iter()
        .map(|&k| &code.stabilizers()[k])
        .collect();
    // X factor of the phase stabilizers at each qutrit.
    let xop: Vec<u8> = (0..n)
        .map(|q| {
            xs.iter()
                .map(|s| s.op(q).x())
                .find(|&x| x != 0)
                .unwrap_or(0)
        })
        .collect();

    let mut grid = vec![vec![Cell::Open; n]; ZSET_LEN];
    let mut d = vec![0u8; n];
    let mut trace = GenTrace::default();
    trace.push("init", None, None, &[], &d);
    grid[0][i] = Cell::Op(1);
    grid[1][j] = Cell::Op(1);
    d[i] += 1;
    d[j] += 1;
    trace.push("seed", None, None, &[i, j], &d);
    for (s, row) in grid.iter_mut().enumerate() {
        if s != 0 {
            row[i] = Cell::Identity;
        }
        if s != 1 {
            row[j] = Cell::Identity;
        }
    }
    trace.push("force-identity", None, None, &[], &d);

    for s in 0..ZSET_LEN {
        for (gidx, group) in [code.g1(), code.g2()].into_iter().enumerate() {
            let gnum = gidx as u8 + 1;
            let occupied: Vec<usize> = group
                .iter()
                .copied()
                .filter(|&q| grid[s][q].non_identity())
                .collect();
            let open: Vec<usize> = group
                .iter()
                .copied()
                .filter(|&q| grid[s][q] == Cell::Open)
                .collect();
            let need = 2usize.saturating_sub(occupied.len());
            let chosen: Vec<usize> = if let Some(f) = ties.forced.get(&(s, gnum)) {
                if f.len() != need || f.iter().any(|q| !open.contains(q)) {
                    return Err(fail(format!(
                        "forced positions {f:?} unavailable on S{} group {gnum}",
                        s + 3
                    )));
                }
                f.clone()
            } else if need == 2 {
                let (k, mut l) = pick_two(&open, &d, &xop)
                    .ok_or_else(|| fail(format!("fewer than two open positions on S{}", s + 3)))?;
                if s == ZSET_LEN - 1 && d[k] == d[l] {
                    let mut tried = vec![l];
                    while (0..s).all(|t| grid[t][k].non_identity() == grid[t][l].non_identity()) {
                        l = open
                            .iter()
                            .copied()
                            .filter(|&q| q != k && !tried.contains(&q))
                            .min_by_key(|&q| (d[q], q))
                            .ok_or_else(|| fail("no replacement position on S6".into()))?;
                        tried.push(l);
                    }
                }
                vec![k, l]
            } else if need == 1 {
                let k = occupied[0];
                let m = open
                    .iter()
                    .map(|&q| d[q])
                    .min()
                    .ok_or_else(|| fail(format!("no open position on S{}", s + 3)))?;
                let cands: Vec<usize> = open.iter().copied().filter(|&q| d[q] == m).collect();
                let l = cands
                    .iter()
                    .copied()
                    .find(|&q| xop[q] != xop[k])
                    .unwrap_or(cands[0]);
                vec![l]
            } else {
                Vec::new()
            };
            for &q in &chosen {
                grid[s][q] = Cell::Picked;
                d[q] += 1;
            }
            trace.push("fill", Some(s), Some(gnum), &chosen, &d);
        }
        let word = assign_operators(code, &grid[s])
            .ok_or_else(|| fail(format!("no operator assignment stabilizes S{}", s + 3)))?;
        for (q, cell) in grid[s].iter_mut().enumerate() {
            *cell = Cell::Op(word.op(q).z());
        }
        trace.push("operators", Some(s), None, &[], &d);
    }

    let words: Vec<PauliWord> = grid
        .iter()
        .map(|row| {
            let p: Vec<u8> = row
                .iter()
                .map(|c| if let Cell::Op(z) = c { *z } else { 0 })
                .collect();
            PauliWord::from_z_powers(&p)
        })
        .collect();
    let set = ZStabSet(words);
    let report = validate(code, &set, (i, j))?;
    if let Some(p) = report.first_failure() {
        return Err(fail(format!("predicate ({p}) fails")));
    }
    Ok((set, trace))
}

/// Two open positions with the two smallest counts; among equal-count
/// candidates prefer different phase-stabilizer factors, then lowest indices.
fn pick_two(open: &[usize], d: &[u8], xop: &[u8]) -> Option<(usize, usize)> {
    if open.len() < 2 {
        return None;
    }
    let mut ds: Vec<u8> = open.iter().map(|&q| d[q]).collect();
    ds.sort_unstable();
    let target = (ds[0], ds[1]);
    let cands: Vec<(usize, usize)> = open
        .iter()
        .copied()
        .tuple_combinations()
        .filter(|&(k, l)| {
            let (a, b) = (d[k].min(d[l]), d[k].max(d[l]));
            (a, b) == target
        })
        .collect();
    cands
        .iter()
        .copied()
        .find(|&(k, l)| xop[k] != xop[l])
        .or_else(|| cands.first().copied())
}

fn assign_operators(code: &Code, row: &[Cell]) -> Option<PauliWord> {
    let picked: Vec<usize> = (0..row.len()).filter(|&q| row[q] == Cell::Picked).collect();
    let base: Vec<u8> = row
        .iter()
        .map(|c| if let Cell::Op(z) = c { *z } else { 0 })
        .collect();
    let xs: Vec<&PauliWord> = code
        .x_type_indices()
        .iter()
        .map(|&k| &code.stabilizers()[k])
        .collect();
    for combo in (0..picked.len()).map(|_| 1..=2u8).multi_cartesian_product() {
        let mut p = base.clone();
        for (&q, &z) in picked.iter().zip(&combo) {
            p[q] = z;
        }
        let w = PauliWord::from_z_powers(&p);
        if has_shape_counts(&w)
            && xs.iter().all(|s| s.commutes_with(&w).unwrap_or(false))
            && fixes_code(code, &w)
        {
            return Some(w);
        }
    }
    None
}

fn has_shape_counts(w: &PauliWord) -> bool {
    let ones = w.ops().iter().filter(|&&o| o == QutritOp::Z1).count();
    let twos = w.ops().iter().filter(|&&o| o == QutritOp::Z2).count();
    ones == 2 && twos == 2 && w.is_z_type()
}

/// Word shape: Z-type, two Z1 and two Z2, two positions in each group.
pub fn is_shaped(code: &Code, w: &PauliWord) -> bool {
    w.len() == code.n()
        && has_shape_counts(w)
        && code
            .g1()
            .iter()
            .filter(|&&q| !w.op(q).is_identity())
            .count()
            == 2
        && code
            .g2()
            .iter()
            .filter(|&&q| !w.op(q).is_identity())
            .count()
            == 2
}

/// Independent verdicts of the six predicates (a)..(f).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValidationReport {
    pub pair: (usize, usize),
    /// (a) four shaped words.
    pub shape: bool,
    /// (b) every word commutes with S1 and S2.
    pub commutes: bool,
    /// (c) every word fixes all three logical states.
    pub stabilizes: bool,
    /// (d) S3 alone acts on `i`, S4 alone on `j`.
    pub isolation: bool,
    /// (e) the 14 single bit-error syndromes are nonzero and distinct.
    pub singles_distinct: bool,
    /// (f) pair errors are separable from each other and from singles.
    pub pair_separable: bool,
}

impl ValidationReport {
    pub fn predicates(&self) -> [(char, bool); 6] {
        [
            ('a', self.shape),
            ('b', self.commutes),
            ('c', self.stabilizes),
            ('d', self.isolation),
            ('e', self.singles_distinct),
            ('f', self.pair_separable),
        ]
    }

    pub fn pass(&self) -> bool {
        self.predicates().iter().all(|(_, ok)| *ok)
    }

    pub fn first_failure(&self) -> Option<char> {
        self.predicates()
            .iter()
            .find(|(_, ok)| !ok)
            .map(|(c, _)| *c)
    }
}

pub fn validate(code: &Code, set: &ZStabSet, pair: (usize, usize)) -> Result<ValidationReport> {
    let (i, j) = pair;
    let n = code.n();
    if i == j || i >= n || j >= n {
        return Err(QecError::InvalidPair(i, j));
    }
    let words = set.words();
    for w in words {
        if w.len() != n {
            return Err(QecError::LengthMismatch {
                left: w.len(),
                right: n,
            });
        }
    }
    let xs: Vec<&PauliWord> = code
        .x_type_indices()
        .iter()
        .map(|&k| &code.stabilizers()[k])
        .collect();
    let shape = words.len() == ZSET_LEN && words.iter().all(|w| is_shaped(code, w));
    let commutes = words
        .iter()
        .all(|w| xs.iter().all(|s| s.commutes_with(w).unwrap_or(false)));
    let stabilizes = words.iter().all(|w| w.is_z_type() && fixes_code(code, w));
    let acts = |w: &PauliWord, q: usize| !w.op(q).is_identity();
    let isolation = words.len() == ZSET_LEN
        && (0..ZSET_LEN).all(|k| acts(&words[k], i) == (k == 0))
        && (0..ZSET_LEN).all(|k| acts(&words[k], j) == (k == 1));
    let syn: Vec<Vec<u8>> = single_bit_errors(n)
        .iter()
        .map(|e| {
            words
                .iter()
                .map(|w| w.commutation_phase(e).map(|c| c.get()))
                .collect()
        })
        .collect::<Result<_>>()?;
    let singles_distinct = syn.iter().all(|s| s.iter().any(|&k| k != 0)) && syn.iter().all_unique();
    let pair_separable = pair_error_check(code, words, pair)?;
    Ok(ValidationReport {
        pair,
        shape,
        commutes,
        stabilizes,
        isolation,
        singles_distinct,
        pair_separable,
    })
}

/// Shaped valid Z-type words in canonical (base-3, qutrit 0 major) order.
pub fn shaped_words(code: &Code, exec: Exec) -> Vec<PauliWord> {
    valid_z_stabilizers_with(code, exec)
        .into_iter()
        .filter(|w| is_shaped(code, w))
        .collect()
}

pub fn exhaustive_fallback(code: &Code, pair: (usize, usize)) -> Result<ZStabSet> {
    exhaustive_fallback_with(code, pair, Exec::default())
}

/// First passing set in canonical order: S3 over shaped words containing
/// `i` but not `j`, S4 containing `j` but not `i`, then S5 before S6 among
/// words avoiding both, each loop in [`shaped_words`] order.
pub fn exhaustive_fallback_with(code: &Code, pair: (usize, usize), exec: Exec) -> Result<ZStabSet> {
    let (i, j) = check_pair(code, pair)?;
    let words = shaped_words(code, exec);
    exhaustive_over(code, &words, (i, j), exec)
}

/// As [`exhaustive_fallback_with`] but over a precomputed word list.
pub fn exhaustive_over(
    code: &Code,
    words: &[PauliWord],
    pair: (usize, usize),
    exec: Exec,
) -> Result<ZStabSet> {
    let (i, j) = check_pair(code, pair)?;
    let acts = |w: &PauliWord, q: usize| !w.op(q).is_identity();
    let s3: Vec<&PauliWord> = words.iter().filter(|w| acts(w, i) && !acts(w, j)).collect();
    let s4: Vec<&PauliWord> = words.iter().filter(|w| acts(w, j) && !acts(w, i)).collect();
    let rest: Vec<&PauliWord> = words
        .iter()
        .filter(|w| !acts(w, i) && !acts(w, j))
        .collect();
    exec.find_map_first(&s3, |a| {
        for b in &s4 {
            for (k, c) in rest.iter().enumerate() {
                for e in &rest[k + 1..] {
                    let set =
                        ZStabSet(vec![(*a).clone(), (*b).clone(), (*c).clone(), (*e).clone()]);
                    if validate(code, &set, (i, j))
                        .map(|r| r.pass())
                        .unwrap_or(false)
                    {
                        return Some(set);
                    }
                }
            }
        }
        None
    })
    .ok_or(QecError::NotFound(i, j))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SetSource {
    Greedy,
    Fallback,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Solution {
    pub pair: (usize, usize),
    pub set: ZStabSet,
    pub source: SetSource,
    pub trace: Option<GenTrace>,
    /// Why the greedy run was not used, when it was attempted and failed.
    pub greedy_error: Option<String>,
    pub validation: ValidationReport,
}

/// Greedy first, exhaustive search if it fails (or always with
/// `force_fallback`).
pub fn solve(
    code: &Code,
    pair: (usize, usize),
    force_fallback: bool,
    exec: Exec,
) -> Result<Solution> {
    let (i, j) = check_pair(code, pair)?;
    let mut greedy_error = None;
    if !force_fallback {
        match generate(code, (i, j)) {
            Ok((set, trace)) => {
                let validation = validate(code, &set, (i, j))?;
                return Ok(Solution {
                    pair: (i, j),
                    set,
                    source: SetSource::Greedy,
                    trace: Some(trace),
                    greedy_error: None,
                    validation,
                });
            }
            Err(e @ QecError::GenerationFailed { .. }) => greedy_error = Some(e.to_string()),
            Err(e) => return Err(e),
        }
    }
    let set = exhaustive_fallback_with(code, (i, j), exec)?;
    let validation = validate(code, &set, (i, j))?;
    Ok(Solution {
        pair: (i, j),
        set,
        source: SetSource::Fallback,
        trace: None,
        greedy_error,
        validation,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum PairStatus {
    /// Both qutrits in g2; refused up front.
    Unsupported,
    Greedy,
    Fallback,
    NotFound,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairSupport {
    pub pair: (usize, usize),
    pub status: PairStatus,
}

/// Status of every unordered pair `i < j`.
pub fn pair_support_summary(code: &Code, exec: Exec) -> Result<Vec<PairSupport>> {
    let n = code.n();
    let words = shaped_words(code, exec);
    let pairs: Vec<(usize, usize)> = (0..n).tuple_combinations().collect();
    exec.map(&pairs, |&pair| {
        let status = match check_pair(code, pair) {
            Err(QecError::PairUnsupported(..)) => return Ok(PairStatus::Unsupported),
            Err(e) => return Err(e),
            Ok(_) => match generate(code, pair) {
                Ok(_) => PairStatus::Greedy,
                Err(QecError::GenerationFailed { .. }) => {
                    match exhaustive_over(code, &words, pair, Exec::Sequential) {
                        Ok(_) => PairStatus::Fallback,
                        Err(QecError::NotFound(..)) => PairStatus::NotFound,
                        Err(e) => return Err(e),
                    }
                }
                Err(e) => return Err(e),
            },
        };
        Ok(status)
    })
    .into_iter()
    .zip(pairs)
    .map(|(s, pair)| s.map(|status| PairSupport { pair, status }))
    .collect()
}
