//! Human-readable renderings. Exact values print as `a/b (≈ 0.6667)`.

use std::fmt::Write;

use montyhall_core::matrix::{ReductionStep, ReductionTrace};
use montyhall_core::mixed::Mixed;
use montyhall_core::rational::render_approx;
use montyhall_core::report::{BayesReport, Exact, SimulationReport};
use montyhall_core::solvers::{FullySupportedFamily, NashProfile, SolveResult};
use montyhall_core::PureStrategy;

fn exact(e: &Exact) -> String {
    if e.exact.contains('/') {
        format!("{} (≈ {:.4})", e.exact, e.decimal)
    } else {
        e.exact.clone()
    }
}

fn mixture<S: PureStrategy>(m: &Mixed<S>) -> String {
    m.support()
        .into_iter()
        .map(|s| format!("{s} {}", m.weight(s)))
        .collect::<Vec<_>>()
        .join(", ")
}

fn set<T: ToString>(items: impl IntoIterator<Item = T>) -> String {
    let items: Vec<String> = items.into_iter().map(|i| i.to_string()).collect();
    format!("{{{}}}", items.join(","))
}

pub fn reduction(trace: &ReductionTrace) -> String {
    let mut out = String::new();
    for (i, step) in trace.steps.iter().enumerate() {
        let line = match step {
            ReductionStep::DominatedRow {
                removed,
                justified_by,
            } => format!("remove row {removed}: weakly dominated by {justified_by}"),
            ReductionStep::DuplicateColumn {
                removed,
                justified_by,
            } => format!("remove column {removed}: duplicates {justified_by}"),
        };
        writeln!(out, "step {:>2}  {line}", i + 1).unwrap();
    }
    out.push('\n');
    out.push_str(&trace.reduced.to_table());
    out
}

pub fn zerosum(r: &SolveResult) -> String {
    let mut out = String::new();
    writeln!(out, "value = {}", render_approx(&r.value)).unwrap();
    writeln!(out, "Conie minimax: {}", mixture(&r.conie_minimax)).unwrap();
    writeln!(out, "Monte minimax: {}", mixture(&r.monte_minimax)).unwrap();
    writeln!(
        out,
        "equalizing: {}",
        if r.is_equalizing() { "yes" } else { "no" }
    )
    .unwrap();
    out.push_str("\nConie minimax against each Monte strategy:\n");
    for (col, v) in &r.conie_guarantees {
        writeln!(out, "  {col}  {}", render_approx(v)).unwrap();
    }
    out.push_str("\nEach Conie strategy against Monte minimax:\n");
    for (row, v) in &r.monte_concessions {
        writeln!(out, "  {row}  {}", render_approx(v)).unwrap();
    }
    out
}

pub fn bayes(r: &BayesReport) -> String {
    let mut out = String::new();
    writeln!(out, "prior π = ({})", r.pi.join(", ")).unwrap();
    writeln!(out, "offer bias λ = ({}){}", r.lambda.join(", "), if r.crawl { "  [crawl]" } else { "" }).unwrap();
    writeln!(out, "value = {}", exact(&r.value)).unwrap();
    writeln!(out, "1 − min π = {}", exact(&r.formula_value)).unwrap();
    writeln!(out, "best responses = {}", set(&r.best_responses)).unwrap();
    writeln!(out, "optimal picks = {}", set(&r.optimal_picks)).unwrap();
    writeln!(out, "excluded = {}", set(&r.excluded)).unwrap();
    out.push_str("\nP(switch wins | pick, offer):\n");
    for p in &r.posteriors {
        let value = p.switch_win.as_ref().map_or("unreachable".to_string(), exact);
        writeln!(out, "  {}  {value}", p.info_set).unwrap();
    }
    out
}

fn profile(n: &NashProfile, indent: &str) -> String {
    format!(
        "P: {}\n{indent}Q: {}\n{indent}Conie {}, Monte {}",
        mixture(&n.p),
        mixture(&n.q),
        render_approx(&n.conie_payoff),
        render_approx(&n.monte_payoff)
    )
}

pub fn nash(equilibria: Option<&[NashProfile]>, families: &[FullySupportedFamily]) -> String {
    let mut out = String::new();
    if let Some(found) = equilibria {
        writeln!(out, "{} equilibria from support enumeration:", found.len()).unwrap();
        for (i, n) in found.iter().enumerate() {
            writeln!(out, "{:>3}. {}", i + 1, profile(n, "     ")).unwrap();
        }
        out.push('\n');
    }
    if families.is_empty() {
        out.push_str("no Nash equilibrium with fully supported Q\n");
        return out;
    }
    writeln!(out, "{} families with fully supported Q:", families.len()).unwrap();
    for f in families {
        writeln!(out, "case ({}): {}", f.case, f.prior_condition()).unwrap();
        for v in &f.weight_vertices {
            let v: Vec<String> = v.iter().map(ToString::to_string).collect();
            writeln!(out, "  vertex (1ss, 2ss, 3ss) = ({})", v.join(", ")).unwrap();
        }
        let payoffs: Vec<String> = f.monte_payoffs.iter().map(render_approx).collect();
        writeln!(out, "  weight dimension {}, Monte payoff {}", f.weight_dimension, payoffs.join(" .. ")).unwrap();
        writeln!(out, "  e.g. {}", profile(&f.representative, "        ")).unwrap();
    }
    out
}

pub fn simulation(r: &SimulationReport) -> String {
    let mut out = String::new();
    writeln!(out, "rounds = {}, seed = {}", r.rounds, r.seed).unwrap();
    writeln!(out, "wins = {}", r.wins).unwrap();
    writeln!(out, "win rate = {:.6}", r.win_rate).unwrap();
    writeln!(out, "exact = {}", exact(&r.exact)).unwrap();
    writeln!(
        out,
        "standard error = {:.6}, deviation = {:+.2} SE",
        r.standard_error, r.deviation_in_standard_errors
    )
    .unwrap();
    out.push_str("\ninfo set  visits  switching wins  holding wins\n");
    for t in &r.per_info_set {
        writeln!(
            out,
            "{:<8}  {:>6}  {:>14}  {:>12}",
            t.info_set, t.tally.visits, t.tally.switch_wins, t.tally.hold_wins
        )
        .unwrap();
    }
    out
}
