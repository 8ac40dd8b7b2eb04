//! Acceptance suite. Prints one line per criterion and exits non-zero if
//! any criterion fails.
//!
//! Oracles here work from the published payoff table and first
//! principles, not from the library's own derivations.

use std::collections::BTreeSet;
use std::panic::{self, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use montyhall_core::game::{ConiePure, Door, InfoSet, MontePure, PureStrategy};
use montyhall_core::matrix::{eliminate_dominated, expected_payoff, unlucky_doors, PayoffMatrix};
use montyhall_core::mixed::{MixedConie, MixedMonte};
use montyhall_core::rational::{int, ratio, Rational};
use montyhall_core::simulation::{
    behavioral_to_mixed_conie, behavioral_to_mixed_monte, binomial_standard_error,
    exact_win_probability, host_from_pure, simulate, BehavioralConie,
};
use montyhall_core::solvers::{
    bayes_best_response, enumerate_nash_supports, host_to_mixed, is_minimax_monte, optimal_picks,
    posterior_switch_win, solve_zero_sum, BehavioralHost, HostPayoffMatrix, NashProfile,
};
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// The published payoff table, rows 1ss..3mm, columns 12 13 21 23 31 32.
const TABLE: [(&str, [u8; 6]); 12] = [
    ("1ss", [0, 0, 1, 1, 1, 1]),
    ("1ms", [1, 0, 0, 0, 1, 1]),
    ("1sm", [0, 1, 1, 1, 0, 0]),
    ("1mm", [1, 1, 0, 0, 0, 0]),
    ("2ss", [1, 1, 0, 0, 1, 1]),
    ("2ms", [0, 0, 1, 0, 1, 1]),
    ("2sm", [1, 1, 0, 1, 0, 0]),
    ("2mm", [0, 0, 1, 1, 0, 0]),
    ("3ss", [1, 1, 1, 1, 0, 0]),
    ("3ms", [0, 0, 1, 1, 1, 0]),
    ("3sm", [1, 1, 0, 0, 0, 1]),
    ("3mm", [0, 0, 0, 0, 1, 1]),
];
const COLUMNS: [&str; 6] = ["12", "13", "21", "23", "31", "32"];

fn c(code: &str) -> ConiePure {
    code.parse().unwrap()
}

fn m(code: &str) -> MontePure {
    code.parse().unwrap()
}

fn table_entry(row: ConiePure, col: MontePure) -> u8 {
    let i = TABLE.iter().position(|(r, _)| c(r) == row).unwrap();
    let j = COLUMNS.iter().position(|&k| m(k) == col).unwrap();
    TABLE[i].1[j]
}

/// `p·C·q` evaluated on the published table.
fn table_payoff(p: &MixedConie, q: &MixedMonte) -> Rational {
    let mut total = Rational::zero();
    for &row in ConiePure::all() {
        for &col in MontePure::all() {
            if table_entry(row, col) == 1 {
                total += p.weight(row) * q.weight(col);
            }
        }
    }
    total
}

fn p_star() -> MixedConie {
    MixedConie::uniform_over(&[c("1ss"), c("2ss"), c("3ss")])
}

fn rand_ratio(rng: &mut impl Rng, denom: i64) -> Rational {
    ratio(rng.gen_range(0..=denom), denom)
}

fn rand_open_ratio(rng: &mut impl Rng, denom: i64) -> Rational {
    ratio(rng.gen_range(1..denom), denom)
}

/// A random distribution over `n` outcomes with positive integer weights.
fn rand_distribution(rng: &mut impl Rng, n: usize, positive: bool) -> Vec<Rational> {
    let lo = i64::from(positive);
    loop {
        let raw: Vec<i64> = (0..n).map(|_| rng.gen_range(lo..=9)).collect();
        let total: i64 = raw.iter().sum();
        if total > 0 {
            return raw.into_iter().map(|w| ratio(w, total)).collect();
        }
    }
}

fn matrix_fidelity() -> Result<String, String> {
    let built = PayoffMatrix::build();
    let mut checked = 0;
    for &row in ConiePure::all() {
        for &col in MontePure::all() {
            let (got, want) = (built.entry(row, col), table_entry(row, col));
            if got != want {
                return Err(format!("entry ({row}, {col}) is {got}, expected {want}"));
            }
            checked += 1;
        }
    }
    Ok(format!("{checked} entries match"))
}

fn game_value() -> Result<String, String> {
    let result = solve_zero_sum(&PayoffMatrix::build()).map_err(|e| e.to_string())?;
    if result.value != ratio(2, 3) {
        return Err(format!("value {}", result.value));
    }
    if result.conie_minimax != p_star() {
        return Err(format!("Conie minimax {:?}", result.conie_minimax.to_strings()));
    }
    // Brute force over the always-switch rows and the columns 12, 21, 32
    // of the published table: every mixture with denominator 60.
    let rows = [c("1ss"), c("2ss"), c("3ss")];
    let cols = [m("12"), m("21"), m("32")];
    let grid = |i: usize, j: usize| int(i64::from(table_entry(rows[i], cols[j])));
    let n = 60;
    let mut max_min = Rational::from_integer((-1).into());
    let mut min_max = int(2);
    for a in 0..=n {
        for b in 0..=n - a {
            let w = [ratio(a, n), ratio(b, n), ratio(n - a - b, n)];
            let row_min = (0..3)
                .map(|j| (0..3).map(|i| &w[i] * grid(i, j)).sum::<Rational>())
                .min()
                .unwrap();
            let col_max = (0..3)
                .map(|i| (0..3).map(|j| &w[j] * grid(i, j)).sum::<Rational>())
                .max()
                .unwrap();
            max_min = max_min.max(row_min);
            min_max = min_max.min(col_max);
        }
    }
    if max_min != result.value || min_max != result.value {
        return Err(format!("brute force gives max-min {max_min}, min-max {min_max}"));
    }
    Ok(format!("value {}, brute force max-min = min-max = {max_min}", result.value))
}

fn equalizing_certificate() -> Result<String, String> {
    let p = p_star();
    for &col in MontePure::all() {
        let v = table_payoff(&p, &MixedMonte::pure(col));
        if v != ratio(2, 3) {
            return Err(format!("P* against {col} pays {v}"));
        }
        if expected_payoff(&p, &MixedMonte::pure(col)) != v {
            return Err(format!("library payoff against {col} differs"));
        }
    }
    let result = solve_zero_sum(&PayoffMatrix::build()).map_err(|e| e.to_string())?;
    if !result.is_equalizing() || result.conie_guarantees.len() != 6 {
        return Err("solver certificate is not equalizing".into());
    }
    Ok("P*·C·q = 2/3 for all 6 pure q".into())
}

fn dominance_pipeline() -> Result<String, String> {
    let trace = eliminate_dominated(&PayoffMatrix::build());
    let want = vec![vec![0, 1, 1], vec![1, 0, 1], vec![1, 1, 0]];
    if trace.reduced.entries() != want.as_slice() {
        return Err(format!("reduced to {:?}", trace.reduced.entries()));
    }
    for (removed, by) in [("2ms", "1ss"), ("2mm", "1ss"), ("2sm", "3ss")] {
        if !trace.contains_row_step(c(removed), c(by)) {
            return Err(format!("trace lacks {by} over {removed}"));
        }
    }
    Ok(format!("{} steps to the 3×3 mismatch game", trace.steps.len()))
}

fn unlucky_door_theorem() -> Result<String, String> {
    let built = PayoffMatrix::build();
    for &row in ConiePure::all() {
        // A door is unlucky when both Monte strategies hiding the prize
        // there beat this row.
        let oracle: BTreeSet<Door> = Door::ALL
            .into_iter()
            .filter(|&d| {
                MontePure::all()
                    .iter()
                    .filter(|col| col.theta() == d)
                    .all(|&col| table_entry(row, col) == 0)
            })
            .collect();
        let got = unlucky_doors(row, &built);
        if got.is_empty() {
            return Err(format!("{row} has no unlucky door"));
        }
        if got != oracle {
            return Err(format!("{row}: {got:?} vs table {oracle:?}"));
        }
    }
    let doors = |code: &str| unlucky_doors(c(code), &built).into_iter().map(Door::number).collect::<Vec<_>>();
    if doors("1ms") != [2] || doors("1mm") != [2, 3] {
        return Err(format!("1ms → {:?}, 1mm → {:?}", doors("1ms"), doors("1mm")));
    }
    Ok("all 12 strategies have an unlucky door; 1ms → {2}, 1mm → {2,3}".into())
}

/// Best responses predicted by sorting the prior: relabel doors so that
/// π₁ ≥ π₂ ≥ π₃ and read off the three cases.
fn sorted_prior_prediction(pi: &[Rational]) -> BTreeSet<ConiePure> {
    let mut order: Vec<Door> = Door::ALL.to_vec();
    order.sort_by(|a, b| pi[b.index()].cmp(&pi[a.index()]));
    let [d1, d2, d3] = [order[0], order[1], order[2]];
    let (p1, p2, p3) = (&pi[d1.index()], &pi[d2.index()], &pi[d3.index()]);
    let doors: Vec<Door> = if p2 > p3 {
        vec![d3]
    } else if p1 > p2 {
        vec![d2, d3]
    } else {
        vec![d1, d2, d3]
    };
    doors.into_iter().map(ConiePure::always_switch).collect()
}

fn bayesian_suite() -> Result<String, String> {
    let denom = 12;
    let lambdas = [
        [ratio(1, 2), ratio(1, 2), ratio(1, 2)],
        [ratio(1, 3), ratio(3, 4), ratio(1, 5)],
    ];
    let mut hosts = 0;
    for a in 1..denom {
        for b in 1..denom - a {
            let pi = [ratio(a, denom), ratio(b, denom), ratio(denom - a - b, denom)];
            for lambda in &lambdas {
                let h = BehavioralHost::new(pi.clone(), lambda.clone()).map_err(|e| e.to_string())?;
                let q = host_to_mixed(&h);
                if !q.is_fully_supported() {
                    return Err(format!("host {pi:?} is not fully supported"));
                }
                let result = bayes_best_response(&q);
                let min = pi.iter().min().unwrap();
                if result.value != Rational::one() - min {
                    return Err(format!("π = {pi:?}: value {}", result.value));
                }
                // Pure-strategy oracle on the published table.
                let oracle_value = ConiePure::all()
                    .iter()
                    .map(|&s| table_payoff(&MixedConie::pure(s), &q))
                    .max()
                    .unwrap();
                if oracle_value != result.value {
                    return Err(format!("π = {pi:?}: table best {oracle_value}"));
                }
                let want = sorted_prior_prediction(&pi);
                if result.best_responses != want {
                    return Err(format!("π = {pi:?}: best responses {:?}", result.best_responses));
                }
                hosts += 1;
            }
        }
    }
    let crawl = bayes_best_response(&host_to_mixed(&BehavioralHost::crawl()));
    let want: BTreeSet<ConiePure> = ["1ss", "2ss", "3ss", "1ms", "2ms", "3ms"].map(c).into();
    if crawl.best_responses != want {
        return Err(format!("crawl best responses {:?}", crawl.best_responses));
    }
    Ok(format!("{hosts} hosts plus crawl"))
}

fn monte_minimax() -> Result<String, String> {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let third = ratio(1, 3);
    // Minimax iff no pure Conie strategy beats 2/3 on the published table.
    let table_minimax = |q: &MixedMonte| {
        ConiePure::all()
            .iter()
            .all(|&s| table_payoff(&MixedConie::pure(s), q) <= ratio(2, 3))
    };
    let mut positives = 0;
    for _ in 0..60 {
        let lambda = [rand_ratio(&mut rng, 7), rand_ratio(&mut rng, 9), rand_ratio(&mut rng, 5)];
        let weights: Vec<Rational> = lambda
            .iter()
            .flat_map(|l| [&third * l, &third * (Rational::one() - l)])
            .collect();
        let q = MixedMonte::new(weights).map_err(|e| e.to_string())?;
        if !is_minimax_monte(&q) || !table_minimax(&q) {
            return Err(format!("Q*(λ) {:?} not recognized", q.to_strings()));
        }
        positives += 1;
    }
    let mut negatives = 0;
    while negatives < 60 {
        let q = MixedMonte::new(rand_distribution(&mut rng, 6, false)).map_err(|e| e.to_string())?;
        if q.theta_marginal().iter().all(|p| *p == third) {
            continue;
        }
        if is_minimax_monte(&q) || table_minimax(&q) {
            return Err(format!("non-uniform {:?} accepted", q.to_strings()));
        }
        negatives += 1;
    }
    Ok(format!("{positives} Q*(λ) accepted, {negatives} non-uniform rejected"))
}

fn nash_suite() -> Result<String, String> {
    let q_crawl = MixedMonte::parse("1/3,0,1/3,0,1/3,0").map_err(|e| e.to_string())?;
    // Equilibrium check on the published table, independent of the solver.
    let check = |n: &NashProfile, h: &HostPayoffMatrix| -> Result<(), String> {
        let conie = table_payoff(&n.p, &n.q);
        for &s in ConiePure::all() {
            if table_payoff(&MixedConie::pure(s), &n.q) > conie {
                return Err(format!("{s} beats {:?}", n.p.to_strings()));
            }
        }
        let monte = h.expected(&n.p, &n.q);
        for &t in MontePure::all() {
            if h.expected(&n.p, &MixedMonte::pure(t)) > monte {
                return Err(format!("{t} beats {:?}", n.q.to_strings()));
            }
        }
        if conie < ratio(2, 3) {
            return Err(format!("Conie payoff {conie} below 2/3"));
        }
        Ok(())
    };

    let antagonistic = HostPayoffMatrix::antagonistic();
    let found = enumerate_nash_supports(&antagonistic);
    if !found.iter().any(|n| n.p == p_star() && n.q == q_crawl) {
        return Err("H = −C lacks (P*, Q*(1,1,1))".into());
    }
    for n in &found {
        check(n, &antagonistic)?;
    }
    let mut total = found.len();

    let sympathetic = HostPayoffMatrix::sympathetic();
    let found = enumerate_nash_supports(&sympathetic);
    for &row in ConiePure::all() {
        for &col in MontePure::all() {
            if table_entry(row, col) == 1
                && !found
                    .iter()
                    .any(|n| n.p == MixedConie::pure(row) && n.q == MixedMonte::pure(col))
            {
                return Err(format!("H = C lacks pure profile ({row}, {col})"));
            }
        }
    }
    for n in &found {
        check(n, &sympathetic)?;
    }
    total += found.len();

    let indifferent = HostPayoffMatrix::indifferent();
    let found = enumerate_nash_supports(&indifferent);
    for n in &found {
        check(n, &indifferent)?;
    }
    total += found.len();
    Ok(format!("{total} equilibria over H = −C, C, 0, all paying Conie ≥ 2/3"))
}

fn kuhn_conversion() -> Result<String, String> {
    let mut rng = ChaCha8Rng::seed_from_u64(23);
    let mut profiles = 0;
    for _ in 0..120 {
        let pick = rand_distribution(&mut rng, 3, false);
        let switch: Vec<Rational> = (0..6).map(|_| rand_ratio(&mut rng, 8)).collect();
        let b = BehavioralConie::new(pick.clone(), switch.clone()).map_err(|e| e.to_string())?;
        let h = BehavioralHost::from_vecs(
            rand_distribution(&mut rng, 3, false),
            (0..3).map(|_| rand_ratio(&mut rng, 6)).collect(),
        )
        .map_err(|e| e.to_string())?;

        // Mixed weights built by hand: pick times both local actions.
        let act = |set: InfoSet, switching: bool| {
            let s = &switch[set.index()];
            if switching {
                s.clone()
            } else {
                Rational::one() - s
            }
        };
        let mut by_hand = Vec::new();
        for &s in ConiePure::all() {
            let [small, large] = s.pick().others();
            let w = &pick[s.pick().index()]
                * act(InfoSet::new(s.pick(), small).unwrap(), s.action_for(small).code() == 's')
                * act(InfoSet::new(s.pick(), large).unwrap(), s.action_for(large).code() == 's');
            by_hand.push(w);
        }
        let mixed = behavioral_to_mixed_conie(&b);
        if mixed.weights() != by_hand.as_slice() {
            return Err("mixed weights differ from the product formula".into());
        }
        // Conie side: behavioral play against each pure Monte strategy.
        for &col in MontePure::all() {
            let behavioral = exact_win_probability(&host_from_pure(col), &b);
            let via_mixed = table_payoff(&mixed, &MixedMonte::pure(col));
            if behavioral != via_mixed {
                return Err(format!("against {col}: {behavioral} vs {via_mixed}"));
            }
        }
        // Monte side: the behavioral host against each pure Conie plan.
        let q = behavioral_to_mixed_monte(&h);
        for &row in ConiePure::all() {
            let behavioral = exact_win_probability(&h, &BehavioralConie::from_pure(row));
            let via_mixed = table_payoff(&MixedConie::pure(row), &q);
            if behavioral != via_mixed {
                return Err(format!("host against {row}: {behavioral} vs {via_mixed}"));
            }
        }
        if exact_win_probability(&h, &b) != table_payoff(&mixed, &q) {
            return Err("behavioral pair disagrees with the mixed pair".into());
        }
        profiles += 1;
    }
    Ok(format!("{profiles} random behavioral profiles"))
}

fn simulation_convergence() -> Result<String, String> {
    let rounds = 100_000;
    let third = "1/3,1/3,1/3";
    let fixtures = [
        // Crawl host against uniform always-switch.
        ("1/3,1/3,1/3;1,1,1", format!("{third};1,1,1,1,1,1"), ratio(2, 3)),
        // Skewed prior against switching from the least likely door.
        ("2/5,2/5,1/5;1/3,1/2,3/4", "0,0,1;1,1,1,1,1,1".to_string(), ratio(4, 5)),
        // Even host against a coin-flipping Conie.
        ("1/3,1/3,1/3;1/2,1/2,1/2", format!("{third};1/2,1/2,1/2,1/2,1/2,1/2"), ratio(1, 2)),
    ];
    let mut lines = Vec::new();
    for (i, (host, conie, exact)) in fixtures.iter().enumerate() {
        let h = BehavioralHost::parse(host).map_err(|e| e.to_string())?;
        let b = BehavioralConie::parse(conie).map_err(|e| e.to_string())?;
        if exact_win_probability(&h, &b) != *exact {
            return Err(format!("fixture {i} has exact payoff {}", exact_win_probability(&h, &b)));
        }
        let seed = 2024 + i as u64;
        let stats = simulate(&h, &b, rounds, seed).map_err(|e| e.to_string())?;
        let replay = simulate(&h, &b, rounds, seed).map_err(|e| e.to_string())?;
        if stats != replay {
            return Err(format!("fixture {i} does not replay"));
        }
        let se = binomial_standard_error(exact, rounds);
        let z = (stats.win_rate - montyhall_core::rational::to_f64(exact)) / se;
        if z.abs() > 4.0 {
            return Err(format!("fixture {i}: rate {} is {z:.2} SE from {exact}", stats.win_rate));
        }
        lines.push(format!("{exact}: {:.4} ({z:+.2} SE)", stats.win_rate));
    }
    Ok(lines.join(", "))
}

fn conditional_bound() -> Result<String, String> {
    let mut rng = ChaCha8Rng::seed_from_u64(31);
    let mut hosts = 0;
    for _ in 0..150 {
        let pi = rand_distribution(&mut rng, 3, true);
        let lambda: Vec<Rational> = (0..3).map(|_| rand_open_ratio(&mut rng, 10)).collect();
        let h = BehavioralHost::from_vecs(pi.clone(), lambda.clone()).map_err(|e| e.to_string())?;
        let min = pi.iter().min().unwrap();
        let picks = optimal_picks(&pi);
        let want: Vec<Door> = Door::ALL.into_iter().filter(|d| pi[d.index()] == *min).collect();
        if picks != want {
            return Err(format!("π = {pi:?}: optimal picks {picks:?}"));
        }
        for &x in &picks {
            for y in x.others() {
                let got = posterior_switch_win(&h, x, y).map_err(|e| e.to_string())?;
                // P(θ = y | x, y) = π_y / (π_y + π_x · P(offer y | θ = x)).
                let offer = if x.others()[0] == y {
                    lambda[x.index()].clone()
                } else {
                    Rational::one() - &lambda[x.index()]
                };
                let oracle = &pi[y.index()] / (&pi[y.index()] + &pi[x.index()] * offer);
                if got != oracle {
                    return Err(format!("posterior at *{x}{y}: {got} vs {oracle}"));
                }
                if got < ratio(1, 2) {
                    return Err(format!("π = {pi:?}: switching at *{x}{y} wins only {got}"));
                }
            }
        }
        hosts += 1;
    }
    Ok(format!("{hosts} random hosts"))
}

type Criterion = fn() -> Result<String, String>;

fn main() -> ExitCode {
    let criteria: [(&str, Criterion, Option<Duration>); 11] = [
        ("matrix fidelity", matrix_fidelity, Some(Duration::from_secs(1))),
        ("value of the game", game_value, Some(Duration::from_secs(1))),
        ("equalizing certificate", equalizing_certificate, None),
        ("dominance pipeline", dominance_pipeline, None),
        ("unlucky-door theorem", unlucky_door_theorem, None),
        ("Bayesian suite", bayesian_suite, Some(Duration::from_secs(10))),
        ("Monte minimax characterization", monte_minimax, None),
        ("Nash suite", nash_suite, Some(Duration::from_secs(60))),
        ("Kuhn conversion", kuhn_conversion, None),
        ("simulation convergence", simulation_convergence, Some(Duration::from_secs(10))),
        ("conditional bound", conditional_bound, None),
    ];
    panic::set_hook(Box::new(|_| {}));
    let mut failures = 0;
    for (name, criterion, limit) in criteria {
        let start = Instant::now();
        let outcome = panic::catch_unwind(AssertUnwindSafe(criterion))
            .unwrap_or_else(|_| Err("panicked".into()));
        let elapsed = start.elapsed();
        let outcome = match (outcome, limit) {
            (Ok(_), Some(limit)) if elapsed > limit => {
                Err(format!("took {elapsed:.2?}, limit {limit:?}"))
            }
            (other, _) => other,
        };
        match outcome {
            Ok(detail) => println!("PASS  {name}: {detail} [{elapsed:.2?}]"),
            Err(reason) => {
                failures += 1;
                println!("FAIL  {name}: {reason} [{elapsed:.2?}]");
            }
        }
    }
    println!("{} of 11 criteria passed", 11 - failures);
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
