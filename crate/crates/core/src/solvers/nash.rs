//! General-sum games: Monte has his own 12×6 payoff matrix `H`, Conie
//! keeps the win/lose matrix.

use std::collections::{BTreeMap, BTreeSet};

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::game::{ConiePure, Door, MontePure, PureStrategy};
use crate::linalg;
use crate::matrix::PayoffMatrix;
use crate::mixed::{MixedConie, MixedMonte};
use crate::rational::{self, Rational};
use crate::solvers::bayes::{bayes_best_response, host_to_mixed, BehavioralHost};

/// Monte's payoffs, rows and columns in canonical order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HostPayoffMatrix {
    entries: Vec<Vec<Rational>>,
}

impl HostPayoffMatrix {
    pub fn new(entries: Vec<Vec<Rational>>) -> Result<HostPayoffMatrix> {
        if entries.len() != ConiePure::COUNT || entries.iter().any(|r| r.len() != MontePure::COUNT) {
            return Err(Error::Shape(format!(
                "Monte's payoff matrix must be {}×{}",
                ConiePure::COUNT,
                MontePure::COUNT
            )));
        }
        Ok(HostPayoffMatrix { entries })
    }

    /// `H = scale · C`.
    pub fn scaled_conie(scale: i64) -> HostPayoffMatrix {
        let c = PayoffMatrix::build();
        let entries = c
            .entries()
            .iter()
            .map(|row| row.iter().map(|&v| rational::int(scale * i64::from(v))).collect())
            .collect();
        HostPayoffMatrix { entries }
    }

    /// Antagonistic Monte, `H = −C`.
    pub fn antagonistic() -> HostPayoffMatrix {
        HostPayoffMatrix::scaled_conie(-1)
    }

    /// Sympathetic Monte, `H = C`.
    pub fn sympathetic() -> HostPayoffMatrix {
        HostPayoffMatrix::scaled_conie(1)
    }

    /// Indifferent Monte, `H = 0`.
    pub fn indifferent() -> HostPayoffMatrix {
        HostPayoffMatrix::scaled_conie(0)
    }

    pub fn entries(&self) -> &[Vec<Rational>] {
        &self.entries
    }

    pub fn entry(&self, row: ConiePure, col: MontePure) -> &Rational {
        &self.entries[row.index()][col.index()]
    }

    pub fn row(&self, row: ConiePure) -> &[Rational] {
        &self.entries[row.index()]
    }

    /// `P·H·Qᵀ`.
    pub fn expected(&self, p: &MixedConie, q: &MixedMonte) -> Rational {
        let mut total = Rational::zero();
        for r in p.support() {
            for c in q.support() {
                total += p.weight(r) * q.weight(c) * self.entry(r, c);
            }
        }
        total
    }

    /// Reads either a JSON document (`{"entries": [[..]]}` or a bare
    /// array of rows) or a text table of 12 lines with 6 rationals each.
    /// Text lines may start with the row's strategy code; lines beginning
    /// with `#` or `θ` are skipped.
    pub fn parse(text: &str) -> Result<HostPayoffMatrix> {
        let trimmed = text.trim_start();
        if trimmed.starts_with('{') || trimmed.starts_with('[') {
            HostPayoffMatrix::from_json(text)
        } else {
            HostPayoffMatrix::from_table(text)
        }
    }

    pub fn from_json(text: &str) -> Result<HostPayoffMatrix> {
        #[derive(Deserialize)]
        #[serde(transparent)]
        struct Bare(#[serde(with = "rational::serde_str::grid")] Vec<Vec<Rational>>);

        let located = |e: serde_json::Error| Error::Parse {
            line: e.line(),
            column: e.column(),
            message: e.to_string(),
        };
        // Decode the chosen shape directly so errors keep their positions.
        if text.trim_start().starts_with('{') {
            let doc: HostMatrixDocument = serde_json::from_str(text).map_err(located)?;
            if !doc.rows.is_empty() && doc.rows != ConiePure::all() {
                return Err(Error::Shape("rows must list Conie's strategies in canonical order".into()));
            }
            if !doc.columns.is_empty() && doc.columns != MontePure::all() {
                return Err(Error::Shape(
                    "columns must list Monte's strategies in canonical order".into(),
                ));
            }
            HostPayoffMatrix::new(doc.entries)
        } else {
            let Bare(entries) = serde_json::from_str(text).map_err(located)?;
            HostPayoffMatrix::new(entries)
        }
    }

    pub fn from_table(text: &str) -> Result<HostPayoffMatrix> {
        let mut entries = Vec::new();
        for (no, line) in text.lines().enumerate() {
            let body = line.trim_start();
            if body.is_empty() || body.starts_with('#') || body.starts_with('θ') {
                continue;
            }
            let mut tokens = token_columns(line);
            let row_index = entries.len();
            if let Some((col, first)) = tokens.first().copied() {
                if let Ok(label) = first.parse::<ConiePure>() {
                    if row_index >= ConiePure::COUNT || label != ConiePure::all()[row_index] {
                        return Err(Error::Parse {
                            line: no + 1,
                            column: col,
                            message: format!("unexpected row label {first}"),
                        });
                    }
                    tokens.remove(0);
                }
            }
            let mut row = Vec::new();
            for (col, tok) in &tokens {
                let v = rational::parse(tok).map_err(|e| Error::Parse {
                    line: no + 1,
                    column: *col,
                    message: e.to_string(),
                })?;
                row.push(v);
            }
            if row.len() != MontePure::COUNT {
                return Err(Error::Parse {
                    line: no + 1,
                    column: line.chars().count() + 1,
                    message: format!("expected {} entries, found {}", MontePure::COUNT, row.len()),
                });
            }
            entries.push(row);
        }
        if entries.len() != ConiePure::COUNT {
            return Err(Error::Parse {
                line: text.lines().count() + 1,
                column: 1,
                message: format!("expected {} rows, found {}", ConiePure::COUNT, entries.len()),
            });
        }
        HostPayoffMatrix::new(entries)
    }

    pub fn to_document(&self) -> HostMatrixDocument {
        HostMatrixDocument {
            rows: ConiePure::all().to_vec(),
            columns: MontePure::all().to_vec(),
            entries: self.entries.clone(),
        }
    }

    pub fn to_table(&self) -> String {
        let mut out = String::from("θ,y=");
        for c in MontePure::all() {
            out.push_str(&format!(" {c:>6}"));
        }
        out.push('\n');
        for (label, row) in ConiePure::all().iter().zip(&self.entries) {
            out.push_str(&format!("{label:<4}"));
            for v in row {
                out.push_str(&format!(" {:>6}", v.to_string()));
            }
            out.push('\n');
        }
        out
    }
}

fn token_columns(line: &str) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut start: Option<(usize, usize)> = None;
    for (i, (byte, ch)) in line.char_indices().enumerate() {
        let sep = ch.is_whitespace() || ch == ',';
        match (sep, start) {
            (false, None) => start = Some((i, byte)),
            (true, Some((col, b))) => {
                out.push((col + 1, &line[b..byte]));
                start = None;
            }
            _ => {}
        }
    }
    if let Some((col, b)) = start {
        out.push((col + 1, &line[b..]));
    }
    out
}

/// Structured form of Monte's payoff matrix.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HostMatrixDocument {
    #[serde(default)]
    pub rows: Vec<ConiePure>,
    #[serde(default)]
    pub columns: Vec<MontePure>,
    #[serde(with = "rational::serde_str::grid")]
    pub entries: Vec<Vec<Rational>>,
}

/// Best-response evidence for a candidate equilibrium.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Certificate {
    /// Best payoff Conie could get against `q`.
    pub conie_best: Rational,
    /// Best payoff Monte could get against `p`.
    pub monte_best: Rational,
    pub conie_best_responses: BTreeSet<ConiePure>,
    pub monte_best_responses: BTreeSet<MontePure>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NashProfile {
    pub p: MixedConie,
    pub q: MixedMonte,
    pub conie_payoff: Rational,
    pub monte_payoff: Rational,
    pub certificate: Certificate,
}

/// Monte's best payoff against `p` and the pure strategies attaining it.
pub fn best_response_monte(p: &MixedConie, h: &HostPayoffMatrix) -> (Rational, BTreeSet<MontePure>) {
    let scores: Vec<(MontePure, Rational)> = MontePure::all()
        .iter()
        .map(|&c| {
            let score = p
                .support()
                .into_iter()
                .fold(Rational::zero(), |acc, r| acc + p.weight(r) * h.entry(r, c));
            (c, score)
        })
        .collect();
    let best = scores.iter().map(|(_, s)| s).max().cloned().expect("six columns");
    let set = scores
        .into_iter()
        .filter(|(_, s)| *s == best)
        .map(|(c, _)| c)
        .collect();
    (best, set)
}

/// Checks both best-response conditions and returns the evidence.
pub fn certify(p: &MixedConie, q: &MixedMonte, h: &HostPayoffMatrix) -> (bool, NashProfile) {
    let c = PayoffMatrix::build();
    let bayes = bayes_best_response(q);
    let (monte_best, monte_set) = best_response_monte(p, h);
    let conie_payoff = c.expected(p, q);
    let monte_payoff = h.expected(p, q);
    let ok = conie_payoff == bayes.value && monte_payoff == monte_best;
    let profile = NashProfile {
        p: p.clone(),
        q: q.clone(),
        conie_payoff,
        monte_payoff,
        certificate: Certificate {
            conie_best: bayes.value,
            monte_best,
            conie_best_responses: bayes.best_responses,
            monte_best_responses: monte_set,
        },
    };
    (ok, profile)
}

pub fn is_nash(p: &MixedConie, q: &MixedMonte, h: &HostPayoffMatrix) -> bool {
    certify(p, q, h).0
}

/// Every equilibrium whose supports yield uniquely solvable indifference
/// systems on both sides, sorted in canonical order.
///
/// A support pair `(S, T)` fixes `q` on `T` by making the rows of `S`
/// indifferent under Conie's matrix, and `p` on `S` by making the columns
/// of `T` indifferent under `H`. Each system has `|T| + 1` (resp.
/// `|S| + 1`) unknowns and `|S| + 1` (resp. `|T| + 1`) equations, so both
/// can be uniquely determined only when `|S| = |T|`; other pairs are
/// skipped. Continuous families of equilibria show up through their
/// extreme points.
pub fn enumerate_nash_supports(h: &HostPayoffMatrix) -> Vec<NashProfile> {
    let c = PayoffMatrix::build().to_rational_grid();
    let row_sets: Vec<u16> = (1u16..1 << ConiePure::COUNT).collect();

    let search = |s_mask: &u16| -> Vec<NashProfile> {
        let rows = members(u32::from(*s_mask), ConiePure::COUNT);
        let mut found = Vec::new();
        for t_mask in 1u32..1 << MontePure::COUNT {
            let cols = members(t_mask, MontePure::COUNT);
            if rows.len() != cols.len() {
                continue;
            }
            if let Some(profile) = solve_support(&c, h, &rows, &cols) {
                found.push(profile);
            }
        }
        found
    };

    #[cfg(feature = "parallel")]
    let batches: Vec<Vec<NashProfile>> = {
        use rayon::prelude::*;
        row_sets.par_iter().map(search).collect()
    };
    #[cfg(not(feature = "parallel"))]
    let batches: Vec<Vec<NashProfile>> = row_sets.iter().map(search).collect();

    let mut unique: BTreeMap<(Vec<Rational>, Vec<Rational>), NashProfile> = BTreeMap::new();
    for profile in batches.into_iter().flatten() {
        let key = (profile.p.weights().to_vec(), profile.q.weights().to_vec());
        unique.entry(key).or_insert(profile);
    }
    let mut out: Vec<NashProfile> = unique.into_values().collect();
    out.sort_by(|a, b| {
        let key = |n: &NashProfile| {
            (
                n.p.support().iter().map(|s| s.index()).collect::<Vec<_>>(),
                n.q.support().iter().map(|s| s.index()).collect::<Vec<_>>(),
            )
        };
        key(a)
            .cmp(&key(b))
            .then_with(|| b.p.weights().cmp(a.p.weights()))
            .then_with(|| b.q.weights().cmp(a.q.weights()))
    });
    out
}

fn members(mask: u32, n: usize) -> Vec<usize> {
    (0..n).filter(|i| mask & (1 << i) != 0).collect()
}

/// Weights on `support` (indices into the columns of `payoff`) making each
/// of the rows in `indifferent` pay the same; `None` unless the solution
/// is unique and nonnegative.
fn indifference(
    payoff: impl Fn(usize, usize) -> Rational,
    indifferent: &[usize],
    support: &[usize],
) -> Option<Vec<Rational>> {
    let mut a = Vec::with_capacity(indifferent.len() + 1);
    let mut b = Vec::with_capacity(indifferent.len() + 1);
    for &i in indifferent {
        let mut eq: Vec<Rational> = support.iter().map(|&j| payoff(i, j)).collect();
        eq.push(-Rational::one());
        a.push(eq);
        b.push(Rational::zero());
    }
    let mut norm = vec![Rational::one(); support.len()];
    norm.push(Rational::zero());
    a.push(norm);
    b.push(Rational::one());
    let mut x = linalg::solve(&a, &b).unique()?;
    x.pop();
    if x.iter().any(Signed::is_negative) {
        return None;
    }
    Some(x)
}

fn solve_support(
    c: &[Vec<Rational>],
    h: &HostPayoffMatrix,
    rows: &[usize],
    cols: &[usize],
) -> Option<NashProfile> {
    let q_weights = indifference(|i, j| c[i][j].clone(), rows, cols)?;
    let mut q = vec![Rational::zero(); MontePure::COUNT];
    for (&j, w) in cols.iter().zip(q_weights) {
        q[j] = w;
    }
    let q = MixedMonte::new(q).ok()?;

    let p_weights = indifference(|j, i| h.entries()[i][j].clone(), cols, rows)?;
    let mut p = vec![Rational::zero(); ConiePure::COUNT];
    for (&i, w) in rows.iter().zip(p_weights) {
        p[i] = w;
    }
    let p = MixedConie::new(p).ok()?;

    let (ok, profile) = certify(&p, &q, h);
    ok.then_some(profile)
}

/// A family of equilibria in which Monte's strategy is fully supported.
///
/// Conie then mixes only always-switching strategies `d·ss` over the doors
/// `d` of least prior probability. The family is every `q` whose prize
/// prior has exactly `min_prior_doors` as its minimizers (and all offer
/// biases strictly inside `(0, 1)`), paired with any `p` in the convex
/// hull of `weight_vertices`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FullySupportedFamily {
    /// Number of least-likely doors: 1, 2 or 3.
    pub case: usize,
    pub min_prior_doors: Vec<Door>,
    /// Extreme points of the admissible weights over `1ss, 2ss, 3ss`.
    pub weight_vertices: Vec<[Rational; 3]>,
    /// Dimension of the affine set of constant-mixture weights.
    pub weight_dimension: usize,
    /// Monte's payoff, the constant entry of the mixed row, at each vertex.
    pub monte_payoffs: Vec<Rational>,
    /// A concrete member of the family, certified by [`certify`].
    pub representative: NashProfile,
}

impl FullySupportedFamily {
    /// Prior constraint in words, e.g. `π3 < π1, π2`.
    pub fn prior_condition(&self) -> String {
        let min: Vec<String> = self.min_prior_doors.iter().map(|d| format!("π{d}")).collect();
        let rest: Vec<String> = Door::ALL
            .iter()
            .filter(|d| !self.min_prior_doors.contains(d))
            .map(|d| format!("π{d}"))
            .collect();
        if rest.is_empty() {
            "π1 = π2 = π3 = 1/3".to_string()
        } else {
            format!("{} < {}", min.join(" = "), rest.join(", "))
        }
    }
}

/// All families of equilibria with fully supported `q`, found by solving
/// for weights on the always-switching rows of `H` that make their
/// mixture a constant row.
pub fn fully_supported_equilibria(h: &HostPayoffMatrix) -> Vec<FullySupportedFamily> {
    let switch_rows: Vec<&[Rational]> = Door::ALL
        .iter()
        .map(|&d| h.row(ConiePure::always_switch(d)))
        .collect();
    let mut families = Vec::new();
    for mask in [4u32, 2, 1, 6, 5, 3, 7] {
        let doors = members(mask, 3);
        let weights_system = |support: &[usize]| {
            // unknowns: p_d for d in support, w
            let mut a = Vec::new();
            let mut b = Vec::new();
            for j in 0..MontePure::COUNT {
                let mut eq: Vec<Rational> = support.iter().map(|&d| switch_rows[d][j].clone()).collect();
                eq.push(-Rational::one());
                a.push(eq);
                b.push(Rational::zero());
            }
            let mut norm = vec![Rational::one(); support.len()];
            norm.push(Rational::zero());
            a.push(norm);
            b.push(Rational::one());
            (a, b)
        };

        let mut vertices = Vec::new();
        let mut payoffs = Vec::new();
        for sub in 1u32..8 {
            if sub & !mask != 0 {
                continue;
            }
            let support = members(sub, 3);
            let (a, b) = weights_system(&support);
            let Some(mut x) = linalg::solve(&a, &b).unique() else {
                continue;
            };
            let w = x.pop().expect("constant unknown");
            if x.iter().any(Signed::is_negative) {
                continue;
            }
            let mut p = [Rational::zero(), Rational::zero(), Rational::zero()];
            for (&d, v) in support.iter().zip(x) {
                p[d] = v;
            }
            if !vertices.contains(&p) {
                vertices.push(p);
                payoffs.push(w);
            }
        }
        if vertices.is_empty() {
            continue;
        }
        let (a, b) = weights_system(&doors);
        let weight_dimension = match linalg::solve(&a, &b) {
            linalg::Solution::Underdetermined { free, .. } => free,
            _ => 0,
        };

        let centroid_share = rational::ratio(1, vertices.len() as i64);
        let mut centroid = [Rational::zero(), Rational::zero(), Rational::zero()];
        for v in &vertices {
            for (c, x) in centroid.iter_mut().zip(v) {
                *c += x * &centroid_share;
            }
        }
        let p = MixedConie::from_pairs(
            Door::ALL
                .iter()
                .map(|&d| ConiePure::always_switch(d))
                .zip(centroid.iter()),
        )
        .expect("vertices are distributions");
        let q = host_to_mixed(&representative_host(&doors));
        let (ok, representative) = certify(&p, &q, h);
        debug_assert!(ok, "family representative must be an equilibrium");
        if !ok {
            continue;
        }
        families.push(FullySupportedFamily {
            case: doors.len(),
            min_prior_doors: doors.iter().map(|&d| Door::from_index(d)).collect(),
            weight_vertices: vertices,
            weight_dimension,
            monte_payoffs: payoffs,
            representative,
        });
    }
    families
}

/// A fully supported host whose least likely doors are exactly `doors`.
fn representative_host(doors: &[usize]) -> BehavioralHost {
    let (low, high) = match doors.len() {
        1 => (rational::ratio(1, 5), rational::ratio(2, 5)),
        2 => (rational::ratio(1, 4), rational::ratio(1, 2)),
        _ => (rational::ratio(1, 3), rational::ratio(1, 3)),
    };
    let pi = [0, 1, 2].map(|d| if doors.contains(&d) { low.clone() } else { high.clone() });
    let half = rational::ratio(1, 2);
    BehavioralHost::new(pi, [half.clone(), half.clone(), half]).expect("valid host")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, ratio};

    fn c(code: &str) -> ConiePure {
        code.parse().unwrap()
    }

    fn m(code: &str) -> MontePure {
        code.parse().unwrap()
    }

    fn p_star() -> MixedConie {
        MixedConie::uniform_over(&[c("1ss"), c("2ss"), c("3ss")])
    }

    fn codes<T: ToString>(set: &BTreeSet<T>) -> Vec<String> {
        set.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn monte_best_responses() {
        let (v, set) = best_response_monte(&p_star(), &HostPayoffMatrix::antagonistic());
        assert_eq!(v, ratio(-2, 3));
        assert_eq!(set.len(), 6);
        let (v, set) = best_response_monte(&MixedConie::pure(c("1ss")), &HostPayoffMatrix::sympathetic());
        assert_eq!(v, int(1));
        assert_eq!(codes(&set), ["21", "23", "31", "32"]);
        let (v, set) = best_response_monte(&MixedConie::uniform(), &HostPayoffMatrix::indifferent());
        assert_eq!(v, int(0));
        assert_eq!(set.len(), 6);
    }

    #[test]
    fn nash_checks() {
        let crawl = MixedMonte::parse("1/3,0,1/3,0,1/3,0").unwrap();
        assert!(is_nash(&p_star(), &crawl, &HostPayoffMatrix::antagonistic()));
        assert!(is_nash(
            &MixedConie::pure(c("2ss")),
            &MixedMonte::pure(m("12")),
            &HostPayoffMatrix::sympathetic()
        ));
        assert!(!is_nash(
            &MixedConie::pure(c("1mm")),
            &MixedMonte::pure(m("12")),
            &HostPayoffMatrix::antagonistic()
        ));
    }

    #[test]
    fn parses_tables_and_json() {
        let h = HostPayoffMatrix::antagonistic();
        assert_eq!(HostPayoffMatrix::parse(&h.to_table()).unwrap(), h);
        let json = serde_json::to_string(&h.to_document()).unwrap();
        assert_eq!(HostPayoffMatrix::parse(&json).unwrap(), h);
        let bare = serde_json::to_string(&vec![vec!["0"; 6]; 12]).unwrap();
        assert_eq!(HostPayoffMatrix::parse(&bare).unwrap(), HostPayoffMatrix::indifferent());
    }

    #[test]
    fn parse_errors_carry_positions() {
        let mut lines: Vec<String> = (0..12).map(|_| "0 0 0 0 0 0".to_string()).collect();
        lines[5] = "0 0 1/x 0 0 0".to_string();
        match HostPayoffMatrix::parse(&lines.join("\n")) {
            Err(Error::Parse { line, column, .. }) => assert_eq!((line, column), (6, 5)),
            other => panic!("unexpected {other:?}"),
        }
        match HostPayoffMatrix::parse("{\"entries\": [[\"1/2\", \"oops\"]]}") {
            Err(Error::Parse { line, .. }) => assert_eq!(line, 1),
            other => panic!("unexpected {other:?}"),
        }
        assert!(HostPayoffMatrix::parse("0 0 0 0 0 0\n").is_err());
        assert!(HostPayoffMatrix::parse("2ss 0 0 0 0 0 0\n").is_err());
    }

    #[test]
    fn antagonistic_family_is_the_uniform_mixture() {
        let families = fully_supported_equilibria(&HostPayoffMatrix::antagonistic());
        assert_eq!(families.len(), 1);
        let f = &families[0];
        assert_eq!(f.case, 3);
        assert_eq!(f.weight_vertices, vec![[ratio(1, 3), ratio(1, 3), ratio(1, 3)]]);
        assert_eq!(f.weight_dimension, 0);
        assert_eq!(f.representative.p, p_star());
        assert_eq!(f.representative.conie_payoff, ratio(2, 3));
    }

    #[test]
    fn indifferent_host_admits_every_weight() {
        let families = fully_supported_equilibria(&HostPayoffMatrix::indifferent());
        assert_eq!(families.len(), 7);
        let all = families.iter().find(|f| f.case == 3).unwrap();
        assert_eq!(all.weight_vertices.len(), 3);
        assert_eq!(all.weight_dimension, 2);
    }

    #[test]
    fn sympathetic_host_has_only_the_uniform_family() {
        let families = fully_supported_equilibria(&HostPayoffMatrix::sympathetic());
        assert_eq!(families.len(), 1);
        assert_eq!(families[0].case, 3);
        assert_eq!(families[0].monte_payoffs, vec![ratio(2, 3)]);
    }

    #[test]
    fn no_constant_mixture_means_no_family() {
        let mut entries = vec![vec![int(0); 6]; 12];
        for d in 0..3 {
            entries[4 * d][d] = int(1);
        }
        let h = HostPayoffMatrix::new(entries).unwrap();
        assert!(fully_supported_equilibria(&h).is_empty());
    }
}
