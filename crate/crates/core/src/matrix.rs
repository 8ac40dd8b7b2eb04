//! Conie's payoff matrix and its reduction by dominance.
//!
//! Rows are Conie's pure strategies, columns Monte's; an entry is 1 when
//! Conie wins the prize under that profile. A [`PayoffMatrix`] may be the
//! full 12×6 matrix or a labeled sub-matrix left over after elimination.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::game::{payoff, ConiePure, Door, MontePure, PureStrategy};
use crate::mixed::{MixedConie, MixedMonte};
use crate::rational::{self, Rational};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PayoffMatrix {
    rows: Vec<ConiePure>,
    cols: Vec<MontePure>,
    entries: Vec<Vec<u8>>,
}

impl PayoffMatrix {
    /// The full matrix, derived by playing every pure profile.
    pub fn build() -> PayoffMatrix {
        PayoffMatrix::restricted(ConiePure::all(), MontePure::all())
    }

    /// The sub-matrix on the given labels, in the given order.
    pub fn restricted(rows: &[ConiePure], cols: &[MontePure]) -> PayoffMatrix {
        let entries = rows
            .iter()
            .map(|&r| cols.iter().map(|&c| payoff(c, r)).collect())
            .collect();
        PayoffMatrix {
            rows: rows.to_vec(),
            cols: cols.to_vec(),
            entries,
        }
    }

    pub fn rows(&self) -> &[ConiePure] {
        &self.rows
    }

    pub fn cols(&self) -> &[MontePure] {
        &self.cols
    }

    pub fn entries(&self) -> &[Vec<u8>] {
        &self.entries
    }

    pub fn is_full(&self) -> bool {
        self.rows == ConiePure::all() && self.cols == MontePure::all()
    }

    fn row_pos(&self, s: ConiePure) -> Option<usize> {
        self.rows.iter().position(|&r| r == s)
    }

    /// The row of `s`. Panics if `s` is not a row label.
    pub fn row(&self, s: ConiePure) -> &[u8] {
        let i = self.row_pos(s).unwrap_or_else(|| panic!("{s} is not a row of this matrix"));
        &self.entries[i]
    }

    pub fn entry(&self, row: ConiePure, col: MontePure) -> u8 {
        let j = self
            .cols
            .iter()
            .position(|&c| c == col)
            .unwrap_or_else(|| panic!("{col} is not a column of this matrix"));
        self.row(row)[j]
    }

    /// `P·C·Qᵀ` on the full matrix.
    pub fn expected(&self, p: &MixedConie, q: &MixedMonte) -> Rational {
        let mut total = Rational::zero();
        for (i, &r) in self.rows.iter().enumerate() {
            let pw = p.weight(r);
            if pw.is_zero() {
                continue;
            }
            for (j, &c) in self.cols.iter().enumerate() {
                if self.entries[i][j] == 1 {
                    total += pw * q.weight(c);
                }
            }
        }
        total
    }

    /// Entries as rationals, for arithmetic on reduced games.
    pub fn to_rational_grid(&self) -> Vec<Vec<Rational>> {
        self.entries
            .iter()
            .map(|row| row.iter().map(|&v| rational::int(i64::from(v))).collect())
            .collect()
    }

    /// Whitespace-aligned table with a `θ,y=` header.
    pub fn to_table(&self) -> String {
        let mut out = String::from("θ,y=");
        for c in &self.cols {
            write!(out, " {c:>3}").unwrap();
        }
        out.push('\n');
        for (label, row) in self.rows.iter().zip(&self.entries) {
            write!(out, "{label:<4}").unwrap();
            for v in row {
                write!(out, " {v:>3}").unwrap();
            }
            out.push('\n');
        }
        out
    }

    /// Parses the output of [`PayoffMatrix::to_table`]. Entries must agree
    /// with the game.
    pub fn from_table(text: &str) -> Result<PayoffMatrix> {
        let mut lines = text
            .lines()
            .enumerate()
            .filter(|(_, l)| !l.trim().is_empty());
        let (header_no, header) = lines.next().ok_or_else(|| Error::Parse {
            line: 1,
            column: 1,
            message: "empty table".into(),
        })?;
        let mut cols = Vec::new();
        for (col, token) in tokens(header).skip(1) {
            let label = token.parse::<MontePure>().map_err(|e| Error::Parse {
                line: header_no + 1,
                column: col,
                message: e.to_string(),
            })?;
            cols.push(label);
        }
        let mut rows = Vec::new();
        let mut entries = Vec::new();
        for (no, line) in lines {
            let mut toks = tokens(line);
            let (col, label) = toks.next().expect("non-empty line");
            let label = label.parse::<ConiePure>().map_err(|e| Error::Parse {
                line: no + 1,
                column: col,
                message: e.to_string(),
            })?;
            let mut row = Vec::new();
            for (col, tok) in toks {
                let v = match tok {
                    "0" => 0,
                    "1" => 1,
                    _ => {
                        return Err(Error::Parse {
                            line: no + 1,
                            column: col,
                            message: format!("expected 0 or 1, found {tok:?}"),
                        })
                    }
                };
                row.push(v);
            }
            if row.len() != cols.len() {
                return Err(Error::Parse {
                    line: no + 1,
                    column: line.len() + 1,
                    message: format!("expected {} entries, found {}", cols.len(), row.len()),
                });
            }
            rows.push(label);
            entries.push(row);
        }
        PayoffMatrix::checked(rows, cols, entries)
    }

    fn checked(rows: Vec<ConiePure>, cols: Vec<MontePure>, entries: Vec<Vec<u8>>) -> Result<Self> {
        if entries.len() != rows.len() || entries.iter().any(|r| r.len() != cols.len()) {
            return Err(Error::Shape(format!(
                "expected {}×{} entries",
                rows.len(),
                cols.len()
            )));
        }
        for (name, dup) in [
            ("row", has_duplicates(&rows)),
            ("column", has_duplicates(&cols)),
        ] {
            if dup {
                return Err(Error::Shape(format!("repeated {name} label")));
            }
        }
        let m = PayoffMatrix {
            rows,
            cols,
            entries,
        };
        let expected = PayoffMatrix::restricted(&m.rows, &m.cols);
        for (i, r) in m.rows.iter().enumerate() {
            for (j, c) in m.cols.iter().enumerate() {
                if m.entries[i][j] != expected.entries[i][j] {
                    return Err(Error::Shape(format!(
                        "entry ({r}, {c}) is {} but the game gives {}",
                        m.entries[i][j], expected.entries[i][j]
                    )));
                }
            }
        }
        Ok(m)
    }

    pub fn to_document(&self) -> MatrixDocument {
        MatrixDocument {
            rows: self.rows.clone(),
            columns: self.cols.clone(),
            entries: self.entries.clone(),
        }
    }

    pub fn from_document(doc: MatrixDocument) -> Result<PayoffMatrix> {
        PayoffMatrix::checked(doc.rows, doc.columns, doc.entries)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_document()).expect("matrix serializes")
    }

    pub fn from_json(text: &str) -> Result<PayoffMatrix> {
        let doc: MatrixDocument = serde_json::from_str(text).map_err(|e| Error::Parse {
            line: e.line(),
            column: e.column(),
            message: e.to_string(),
        })?;
        PayoffMatrix::from_document(doc)
    }
}

fn has_duplicates<T: Ord>(items: &[T]) -> bool {
    items.iter().collect::<BTreeSet<_>>().len() != items.len()
}

/// Whitespace-separated tokens with their 1-based character column.
fn tokens(line: &str) -> impl Iterator<Item = (usize, &str)> {
    let mut out = Vec::new();
    let mut start = None;
    for (i, (byte, ch)) in line.char_indices().enumerate() {
        match (ch.is_whitespace(), start) {
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
    out.into_iter()
}

/// Structured (JSON) form of a payoff matrix.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatrixDocument {
    pub rows: Vec<ConiePure>,
    pub columns: Vec<MontePure>,
    pub entries: Vec<Vec<u8>>,
}

/// Exact `P·C·Qᵀ`, playing out every profile in the supports.
pub fn expected_payoff(p: &MixedConie, q: &MixedMonte) -> Rational {
    let mut total = Rational::zero();
    for r in p.support() {
        for c in q.support() {
            if payoff(c, r) == 1 {
                total += p.weight(r) * q.weight(c);
            }
        }
    }
    total
}

/// Whether row `b` is entrywise at least row `a` and differs from it.
pub fn weakly_dominates(b: ConiePure, a: ConiePure, m: &PayoffMatrix) -> bool {
    let (rb, ra) = (m.row(b), m.row(a));
    rb.iter().zip(ra).all(|(x, y)| x >= y) && rb != ra
}

/// Doors `u` such that row `a` is zero in every column hiding the prize
/// behind `u`.
pub fn unlucky_doors(a: ConiePure, m: &PayoffMatrix) -> BTreeSet<Door> {
    let row = m.row(a);
    Door::ALL
        .into_iter()
        .filter(|&u| {
            let mut cols = m.cols.iter().zip(row).filter(|(c, _)| c.theta() == u).peekable();
            cols.peek().is_some() && cols.all(|(_, &v)| v == 0)
        })
        .collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum StepKind {
    DominatedRow,
    DuplicateColumn,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum ReductionStep {
    DominatedRow {
        removed: ConiePure,
        justified_by: ConiePure,
    },
    DuplicateColumn {
        removed: MontePure,
        justified_by: MontePure,
    },
}

impl ReductionStep {
    pub fn kind(&self) -> StepKind {
        match self {
            ReductionStep::DominatedRow { .. } => StepKind::DominatedRow,
            ReductionStep::DuplicateColumn { .. } => StepKind::DuplicateColumn,
        }
    }

    pub fn removed(&self) -> String {
        match self {
            ReductionStep::DominatedRow { removed, .. } => removed.to_string(),
            ReductionStep::DuplicateColumn { removed, .. } => removed.to_string(),
        }
    }

    pub fn justified_by(&self) -> String {
        match self {
            ReductionStep::DominatedRow { justified_by, .. } => justified_by.to_string(),
            ReductionStep::DuplicateColumn { justified_by, .. } => justified_by.to_string(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReductionTrace {
    pub steps: Vec<ReductionStep>,
    pub reduced: PayoffMatrix,
}

impl ReductionTrace {
    pub fn contains_row_step(&self, removed: ConiePure, justified_by: ConiePure) -> bool {
        self.steps.contains(&ReductionStep::DominatedRow {
            removed,
            justified_by,
        })
    }
}

/// Iterated elimination: weakly dominated rows first, then duplicate
/// columns.
///
/// Rows are scanned in canonical order and the first dominated one is
/// removed, justified by the first always-switching survivor that
/// dominates it (or the first dominating survivor if none switches
/// always). Among identical columns the one whose match offer lies
/// closest to the prize door is kept, ties going to the smaller door;
/// this leaves the columns `12 21 32`.
pub fn eliminate_dominated(m: &PayoffMatrix) -> ReductionTrace {
    let mut steps = Vec::new();
    let mut rows = m.rows.clone();
    loop {
        let current = PayoffMatrix::restricted(&rows, &m.cols);
        let found = rows.iter().find_map(|&a| {
            let dominators: Vec<ConiePure> = rows
                .iter()
                .copied()
                .filter(|&b| b != a && weakly_dominates(b, a, &current))
                .collect();
            let justifier = dominators
                .iter()
                .copied()
                .find(|b| b.is_always_switching())
                .or_else(|| dominators.first().copied())?;
            Some((a, justifier))
        });
        let Some((removed, justified_by)) = found else {
            break;
        };
        rows.retain(|&r| r != removed);
        steps.push(ReductionStep::DominatedRow {
            removed,
            justified_by,
        });
    }

    let current = PayoffMatrix::restricted(&rows, &m.cols);
    let column = |c: MontePure| -> Vec<u8> {
        let j = current.cols.iter().position(|&x| x == c).unwrap();
        current.entries.iter().map(|r| r[j]).collect()
    };
    let preference = |c: MontePure| {
        let gap = (i16::from(c.offer_on_match().number()) - i16::from(c.theta().number())).abs();
        (gap, c.offer_on_match(), c.index())
    };
    let mut cols = m.cols.clone();
    let mut i = 0;
    while i < cols.len() {
        let entries = column(cols[i]);
        let group: Vec<MontePure> = cols.iter().copied().filter(|&c| column(c) == entries).collect();
        let keep = *group.iter().min_by_key(|&&c| preference(c)).unwrap();
        for &c in &group {
            if c != keep {
                steps.push(ReductionStep::DuplicateColumn {
                    removed: c,
                    justified_by: keep,
                });
            }
        }
        cols.retain(|c| *c == keep || !group.contains(c));
        i = cols.iter().position(|&c| c == keep).unwrap() + 1;
    }

    ReductionTrace {
        steps,
        reduced: PayoffMatrix::restricted(&rows, &cols),
    }
}

/// Entrywise `m - k`.
pub fn subtract_constant(m: &[Vec<Rational>], k: &Rational) -> Vec<Vec<Rational>> {
    m.iter()
        .map(|row| row.iter().map(|v| v - k).collect())
        .collect()
}
