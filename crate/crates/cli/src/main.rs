use std::fmt::Write as _;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use qutrit_qec::circuit::{
    code_circuit, proposed_column, render_cost_markdown, steane_commuting_column,
    steane_literal_column, table3_report, CostColumn,
};
use qutrit_qec::code::{single_qutrit_errors, Code};
use qutrit_qec::oracle::{
    find_low_weight_logicals, lemma4_search, sweep_phase_patterns, sweep_single_errors, SweepReport,
};
use qutrit_qec::stabgen::{pair_support_summary, solve, PairStatus, Solution};
use qutrit_qec::tables::{
    bit_table, derived_phase_table, render_bit_markdown, render_phase_markdown,
};
use qutrit_qec::{build_proposed_code, build_steane_ternary, Exec, PauliWord, QecError, QutritOp};

const SCHEMA_VERSION: u32 = 1;

/// Exit status when a pair lies entirely in g2.
const EXIT_UNSUPPORTED_PAIR: u8 = 3;

#[derive(Parser, Debug)]
#[command(
    name = "qutrit-qec",
    version,
    about = "Ternary stabilizer code toolkit"
)]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Markdown, global = true)]
    format: Format,
    /// Run sweeps on one thread.
    #[arg(long, global = true)]
    sequential: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print the phase or bit syndrome table.
    Tables {
        #[arg(long, value_enum, default_value_t = CodeId::Proposed)]
        code: CodeId,
        #[arg(long, value_enum, default_value_t = Which::Phase)]
        which: Which,
    },
    /// Run a verification suite.
    Verify {
        #[arg(long, value_enum)]
        suite: Suite,
        #[arg(long, value_enum, default_value_t = CodeId::Proposed)]
        code: CodeId,
        /// Include per-pattern detail.
        #[arg(long)]
        full: bool,
        /// Weight bound for the `logicals` suite.
        #[arg(long, default_value_t = 2)]
        wmax: usize,
    },
    /// Generate bit stabilizers S3..S6 for a qutrit pair.
    Stabgen {
        /// Pair as `i,j`.
        #[arg(long, value_parser = parse_pair)]
        pair: (usize, usize),
        /// Skip the greedy construction and search exhaustively.
        #[arg(long)]
        fallback: bool,
    },
    /// Gate cost and depth of the syndrome-extraction circuits.
    Cost {
        #[arg(long, value_enum, default_value_t = CostCode::All)]
        code: CostCode,
        /// Also print the wire diagram (single codes only).
        #[arg(long)]
        diagram: bool,
    },
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Markdown,
    Json,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum CodeId {
    Proposed,
    Steane,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum CostCode {
    Proposed,
    Steane,
    All,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Which {
    Phase,
    Bit,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Suite {
    Lemma1,
    Stabilize,
    Kl,
    Single,
    PhaseSweep,
    Logicals,
    Lemma4,
    Pairs,
}

fn parse_pair(s: &str) -> std::result::Result<(usize, usize), String> {
    let (a, b) = s
        .split_once(',')
        .ok_or_else(|| format!("expected `i,j`, got `{s}`"))?;
    let parse = |t: &str| {
        t.trim()
            .parse::<usize>()
            .map_err(|_| format!("`{t}` is not a qutrit index"))
    };
    let (i, j) = (parse(a)?, parse(b)?);
    if i > 6 || j > 6 {
        return Err("qutrit indices must lie in 0..=6".into());
    }
    if i == j {
        return Err("the two qutrits must differ".into());
    }
    Ok((i, j))
}

/// What a command produced: rendered text, JSON payload and whether every
/// asserted check held.
struct Report {
    text: String,
    json: Value,
    pass: bool,
}

impl Report {
    fn new(text: String, json: Value, pass: bool) -> Self {
        Report { text, json, pass }
    }
}

fn build(code: CodeId) -> Code {
    match code {
        CodeId::Proposed => build_proposed_code(),
        CodeId::Steane => build_steane_ternary(),
    }
}

fn exps(v: &[u8]) -> String {
    v.iter().map(|k| k.to_string()).collect::<Vec<_>>().join("")
}

fn cmd_tables(code_id: CodeId, which: Which) -> Result<Report> {
    let code = build(code_id);
    if code_id == CodeId::Proposed {
        return Ok(match which {
            Which::Phase => {
                let rows = derived_phase_table(&code)?;
                Report::new(render_phase_markdown(&rows), json!({ "rows": rows }), true)
            }
            Which::Bit => {
                let rows = bit_table(&code)?;
                let pass = rows.iter().all(|r| r.support_match);
                Report::new(render_bit_markdown(&rows), json!({ "rows": rows }), pass)
            }
        });
    }
    // Codes without a published table: list every single error of the
    // relevant type with its syndrome on the detecting stabilizers.
    let (ops, idx) = match which {
        Which::Phase => ([QutritOp::Z1, QutritOp::Z2], code.x_type_indices()),
        Which::Bit => ([QutritOp::X1, QutritOp::X2], code.z_type_indices()),
    };
    let mut text = String::from("| error | syndrome |\n|---|---|\n");
    let mut rows = Vec::new();
    for op in ops {
        for q in 0..code.n() {
            let e = PauliWord::single(code.n(), q, op);
            let s = code.syndrome_symplectic(&e)?.select(idx);
            let _ = writeln!(text, "| {op}^{q} | {} |", exps(&s));
            rows.push(json!({ "op": op, "qutrit": q, "syndrome": s }));
        }
    }
    Ok(Report::new(
        text,
        json!({ "stabilizers": idx, "rows": rows }),
        true,
    ))
}

fn sweep_report(r: &SweepReport, full: bool, asserted: bool) -> Report {
    let mut text = r.render_markdown();
    let pass = !asserted || r.all_succeeded();
    if let Some(p) = r.first_failure() {
        let _ = writeln!(
            text,
            "\nfirst failure: {} (syndrome {}) -> {}",
            p.error,
            exps(&p.syndrome),
            p.outcome.label()
        );
    }
    if !asserted {
        text.push_str("\nreport only\n");
    }
    if full {
        text.push_str(
            "\n| error | syndrome | correction | outcome | min fidelity |\n|---|---|---|---|---|\n",
        );
        for p in &r.patterns {
            let c = p
                .correction
                .as_ref()
                .map(|c| c.to_string())
                .unwrap_or("-".into());
            let _ = writeln!(
                text,
                "| {} | {} | {} | {} | {:.6} |",
                p.error,
                exps(&p.syndrome),
                c,
                p.outcome.label(),
                p.min_fidelity
            );
        }
    }
    let mut j = json!({
        "suite": r.suite,
        "code": r.code,
        "states_per_pattern": r.states_per_pattern,
        "patterns": r.patterns.len(),
        "counts": r.counts,
        "by_weight": r.by_weight,
        "report_only": !asserted,
    });
    if full {
        j["detail"] = json!(r.patterns);
    }
    Report::new(text, j, pass)
}

fn verify_lemma1() -> Report {
    let mut text =
        String::from("| X_i X_j | Z_k Z_l | phase | commute | expected |\n|---|---|---|---|---|\n");
    let mut rows = Vec::new();
    let mut pass = true;
    for i in 1..=2i64 {
        for j in 1..=2i64 {
            for k in 1..=2i64 {
                for l in 1..=2i64 {
                    let x = PauliWord::new(vec![QutritOp::new(i, 0), QutritOp::new(j, 0)]);
                    let z = PauliWord::new(vec![QutritOp::new(0, k), QutritOp::new(0, l)]);
                    let c = x.commutation_phase(&z).expect("same length");
                    let expected = (i == j && k != l) || (i != j && k == l);
                    pass &= c.is_one() == expected;
                    let _ = writeln!(text, "| {x} | {z} | {c} | {} | {expected} |", c.is_one());
                    rows.push(json!({ "x": x, "z": z, "phase": c, "expected_commute": expected }));
                }
            }
        }
    }
    let _ = writeln!(
        text,
        "\n16 combinations, {}",
        if pass { "all as expected" } else { "MISMATCH" }
    );
    Report::new(text, json!({ "rows": rows }), pass)
}

fn verify_stabilize(code: &Code) -> Report {
    let inv = code.invariants();
    let mut text =
        String::from("| stabilizer | residual |0_L> | |1_L> | |2_L> |\n|---|---|---|---|\n");
    for (s, r) in code.stabilizers().iter().zip(&inv.stabilizer_residuals) {
        let _ = writeln!(text, "| {s} | {:.1e} | {:.1e} | {:.1e} |", r[0], r[1], r[2]);
    }
    let pass = inv.hold(qutrit_qec::statevec::STATE_TOL);
    let _ = writeln!(
        text,
        "\nnorm error {:.1e}, max overlap {:.1e}, commuting {}",
        inv.norm_error, inv.max_overlap, inv.commuting
    );
    Report::new(text, json!(inv), pass)
}

fn verify_kl(code: &Code, asserted: bool, full: bool) -> Result<Report> {
    let mut errors = vec![PauliWord::identity(code.n())];
    errors.extend(single_qutrit_errors(code.n()));
    let kl = code.kl_check(&errors)?;
    let mut text = format!(
        "Knill-Laflamme on identity + {} single errors: {} pairs, {} failing\n",
        errors.len() - 1,
        kl.entries.len(),
        kl.failures
    );
    if let Some(f) = kl.first_failure() {
        let _ = writeln!(
            text,
            "first failure: ({}, {}) offdiag_zero={} diag_constant={}",
            errors[f.m], errors[f.n], f.offdiag_zero, f.diag_constant
        );
    }
    if !asserted {
        text.push_str("report only\n");
    }
    let failing: Vec<Value> = kl
        .entries
        .iter()
        .filter(|e| !e.pass())
        .map(|e| json!([errors[e.m], errors[e.n]]))
        .collect();
    if full {
        for f in &failing {
            let _ = writeln!(text, "fails: {} / {}", f[0], f[1]);
        }
    }
    let mut j = json!({
        "errors": errors.len(),
        "pairs": kl.entries.len(),
        "failures": kl.failures,
        "pass": kl.pass,
        "report_only": !asserted,
    });
    if full {
        j["failing_pairs"] = json!(failing);
    }
    Ok(Report::new(text, j, !asserted || kl.pass))
}

fn verify_logicals(code: &Code, code_id: CodeId, wmax: usize, full: bool) -> Result<Report> {
    let r = find_low_weight_logicals(code, wmax)?;
    let mut text = format!(
        "{} candidate words up to weight {}: {} with zero syndrome, {} acting non-trivially\n",
        r.candidates,
        wmax,
        r.zero_syndrome,
        r.findings.len()
    );
    let shown = if full {
        r.findings.len()
    } else {
        r.findings.len().min(12)
    };
    for f in &r.findings[..shown] {
        let _ = writeln!(text, "  w{} {}  {}", f.weight, f.word, f.action.describe());
    }
    if shown < r.findings.len() {
        let _ = writeln!(text, "  ... {} more (use --full)", r.findings.len() - shown);
    }
    let pass = match code_id {
        CodeId::Steane => r.zero_syndrome == 0,
        CodeId::Proposed => {
            let target: PauliWord = "Z1 I Z1 I I I I".parse()?;
            r.findings.iter().all(|f| f.weight > 1) && (wmax < 2 || r.contains(&target))
        }
    };
    Ok(Report::new(text, json!(r), pass))
}

fn verify_lemma4(code: &Code) -> Result<Report> {
    let mut text =
        String::from("| pair | first | second | same codespace action |\n|---|---|---|---|\n");
    let mut out = Vec::new();
    let mut pass = true;
    for pair in [(1, 3), (1, 5), (3, 5)] {
        match lemma4_search(code, pair) {
            Ok(w) => {
                let _ = writeln!(
                    text,
                    "| ({},{}) | {} | {} | {} |",
                    pair.0, pair.1, w.first, w.second, w.same_codespace_action
                );
                out.push(json!(w));
            }
            Err(QecError::NoWitness(i, j)) => {
                pass = false;
                let _ = writeln!(text, "| ({i},{j}) | no witness | | |");
                out.push(json!({ "pair": [i, j], "witness": null }));
            }
            Err(e) => return Err(e.into()),
        }
    }
    let _ = writeln!(
        text,
        "\nsyndromes compared over every valid Z-type stabilizer ({} words)",
        qutrit_qec::oracle::valid_z_stabilizers(code).len()
    );
    Ok(Report::new(text, json!({ "witnesses": out }), pass))
}

fn verify_pairs(code: &Code, exec: Exec) -> Result<Report> {
    let summary = pair_support_summary(code, exec)?;
    let mut text = String::from("| pair | status |\n|---|---|\n");
    for p in &summary {
        let s = match p.status {
            PairStatus::Unsupported => "refused (both in g2)",
            PairStatus::Greedy => "greedy",
            PairStatus::Fallback => "exhaustive search",
            PairStatus::NotFound => "no valid set exists",
        };
        let _ = writeln!(text, "| ({},{}) | {s} |", p.pair.0, p.pair.1);
    }
    let eligible = summary
        .iter()
        .filter(|p| p.status != PairStatus::Unsupported)
        .count();
    let found = summary
        .iter()
        .filter(|p| matches!(p.status, PairStatus::Greedy | PairStatus::Fallback))
        .count();
    let _ = writeln!(text, "\n{found}/{eligible} eligible pairs supported");
    Ok(Report::new(text, json!(summary), found == eligible))
}

fn cmd_verify(
    suite: Suite,
    code_id: CodeId,
    full: bool,
    wmax: usize,
    exec: Exec,
) -> Result<Report> {
    let code = build(code_id);
    let needs_partition = matches!(suite, Suite::Lemma4 | Suite::Pairs);
    if needs_partition && code_id != CodeId::Proposed {
        bail!("suite {suite:?} applies to the proposed code only");
    }
    Ok(match suite {
        Suite::Lemma1 => verify_lemma1(),
        Suite::Stabilize => verify_stabilize(&code),
        Suite::Kl => verify_kl(&code, code_id == CodeId::Steane, full)?,
        Suite::Single => {
            let r = sweep_single_errors(&code)?;
            sweep_report(&r, full, true)
        }
        Suite::PhaseSweep => {
            let r = sweep_phase_patterns(&code)?;
            let mut rep = sweep_report(&r, full, false);
            let each = r.patterns.iter().filter(|p| p.each_basis_restored).count();
            let _ = writeln!(
                rep.text,
                "{each}/{} patterns restore every logical basis state up to its own phase",
                r.patterns.len()
            );
            rep.json["each_basis_restored"] = json!(each);
            rep
        }
        Suite::Logicals => verify_logicals(&code, code_id, wmax, full)?,
        Suite::Lemma4 => verify_lemma4(&code)?,
        Suite::Pairs => verify_pairs(&code, exec)?,
    })
}

fn render_solution(sol: &Solution) -> String {
    let mut text = format!(
        "pair ({},{}) via {:?}\n\n",
        sol.pair.0, sol.pair.1, sol.source
    );
    if let Some(e) = &sol.greedy_error {
        let _ = writeln!(text, "greedy: {e}\n");
    }
    for (k, w) in sol.set.words().iter().enumerate() {
        let _ = writeln!(text, "S{} = {w}", k + 3);
    }
    if let Some(trace) = &sol.trace {
        text.push_str("\n| step | stabilizer | group | chosen | d |\n|---|---|---|---|---|\n");
        for s in &trace.steps {
            let stab = s
                .stabilizer
                .map(|k| format!("S{}", k + 3))
                .unwrap_or("-".into());
            let g = s.group.map(|g| format!("g{g}")).unwrap_or("-".into());
            let _ = writeln!(
                text,
                "| {} | {stab} | {g} | {:?} | {:?} |",
                s.label, s.chosen, s.d
            );
        }
    }
    text.push_str("\n| predicate | pass |\n|---|---|\n");
    for (c, ok) in sol.validation.predicates() {
        let _ = writeln!(text, "| ({c}) | {ok} |");
    }
    text
}

fn cmd_stabgen(pair: (usize, usize), fallback: bool, exec: Exec) -> Result<Report> {
    let code = build_proposed_code();
    let sol = solve(&code, pair, fallback, exec)?;
    let pass = sol.validation.pass();
    Ok(Report::new(render_solution(&sol), json!(sol), pass))
}

fn cmd_cost(which: CostCode, diagram: bool) -> Result<Report> {
    let steane = build_steane_ternary();
    let proposed = build_proposed_code();
    let cols: Vec<CostColumn> = match which {
        CostCode::Steane => vec![steane_literal_column(), steane_commuting_column(&steane)],
        CostCode::Proposed => vec![proposed_column(&proposed)],
        CostCode::All => table3_report(&steane, &proposed),
    };
    let mut text = render_cost_markdown(&cols);
    let mut j = json!({ "columns": cols });
    if diagram {
        let code = match which {
            CostCode::Steane => &steane,
            CostCode::Proposed => &proposed,
            CostCode::All => bail!("--diagram needs a single code"),
        };
        let c = code_circuit(code);
        let _ = write!(text, "\n```\n{}```\n", c.diagram());
        j["circuit"] = json!(c);
    }
    Ok(Report::new(text, j, true))
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Tables { .. } => "tables",
        Command::Verify { .. } => "verify",
        Command::Stabgen { .. } => "stabgen",
        Command::Cost { .. } => "cost",
    }
}

fn run(cli: &Cli) -> Result<Report> {
    let exec = if cli.sequential {
        Exec::Sequential
    } else {
        Exec::Parallel
    };
    match cli.command {
        Command::Tables { code, which } => cmd_tables(code, which),
        Command::Verify {
            suite,
            code,
            full,
            wmax,
        } => cmd_verify(suite, code, full, wmax, exec),
        Command::Stabgen { pair, fallback } => cmd_stabgen(pair, fallback, exec),
        Command::Cost { code, diagram } => cmd_cost(code, diagram),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let report = match run(&cli) {
        Ok(r) => r,
        Err(e) => {
            if let Some(QecError::PairUnsupported(i, j)) = e.downcast_ref::<QecError>() {
                eprintln!(
                    "error: pair ({i},{j}) has both qutrits in g2 = {{1,3,5}}; simultaneous bit \
                     errors there share their syndrome with a single bit error on the third g2 qutrit"
                );
                return ExitCode::from(EXIT_UNSUPPORTED_PAIR);
            }
            if let Some(QecError::WeightBound { .. }) = e.downcast_ref::<QecError>() {
                eprintln!("error: {e}");
                return ExitCode::from(2);
            }
            eprintln!("error: {e:#}");
            return ExitCode::from(1);
        }
    };
    match cli.format {
        Format::Markdown => {
            print!("{}", report.text);
            if !report.pass {
                println!("\nverification FAILED");
            }
        }
        Format::Json => {
            let doc = json!({
                "schema_version": SCHEMA_VERSION,
                "command": command_name(&cli.command),
                "pass": report.pass,
                "result": report.json,
            });
            match serde_json::to_string_pretty(&doc).context("serializing report") {
                Ok(s) => println!("{s}"),
                Err(e) => {
                    eprintln!("error: {e:#}");
                    return ExitCode::from(1);
                }
            }
        }
    }
    if report.pass {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}
