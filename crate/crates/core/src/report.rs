//! Verification reports and the bounds table.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::Serialize;

use crate::automaton::DirectionClass;
use crate::bounds::{
    dirdet_bound, dirdet_length, general_lower_bound, general_upper_bound, nfa_upper_bound,
};
use crate::dirdet::{build_dirdet_automaton, DirDetParams};
use crate::error::{Error, Result};
use crate::general::{build_core, short_exit_violations, witness_exit_positions, wrap};
use crate::oracle::shortest_accepted;

/// Largest `k + ℓ` accepted by [`verify`].
pub const DIRDET_SUM_LIMIT: u32 = 8;
/// Largest `n` accepted by [`verify`] for the general family.
pub const GENERAL_N_LIMIT: u32 = 7;
/// The short-segment exit property is checked by exhaustive enumeration up to this `n`.
pub const BRUTE_SEGMENT_LIMIT: u32 = 3;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Scope {
    DirDet,
    General,
    All,
}

#[derive(Debug, Clone, Copy)]
pub struct VerifyLimits {
    /// Check every `(k, ℓ)` with `k >= 2` and `k + ℓ <= dirdet_max_sum`.
    pub dirdet_max_sum: u32,
    /// Check the general family for `2 <= n <= general_max_n`.
    pub general_max_n: u32,
    /// Restrict the direction-determinate part to one `(k, ℓ)`.
    pub only_pair: Option<(u32, u32)>,
}

impl Default for VerifyLimits {
    fn default() -> Self {
        Self {
            dirdet_max_sum: 7,
            general_max_n: 6,
            only_pair: None,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct VerifyRow {
    pub description: String,
    pub expected: String,
    pub actual: String,
    pub pass: bool,
}

#[derive(Debug, Clone, Default, Serialize)]
pub struct VerifyReport {
    pub rows: Vec<VerifyRow>,
    pub overall: bool,
}

impl VerifyReport {
    fn push(&mut self, description: String, expected: impl ToString, actual: impl ToString) {
        let (expected, actual) = (expected.to_string(), actual.to_string());
        let pass = expected == actual;
        self.rows.push(VerifyRow {
            description,
            expected,
            actual,
            pass,
        });
    }

    fn check(&mut self, description: String, holds: bool) {
        self.push(description, true, holds);
    }

    pub fn render_text(&self) -> String {
        let w = self
            .rows
            .iter()
            .map(|r| r.description.chars().count())
            .max()
            .unwrap_or(0);
        let mut out = String::new();
        for r in &self.rows {
            let flag = if r.pass { "PASS" } else { "FAIL" };
            let pad = w - r.description.chars().count();
            let _ = writeln!(
                out,
                "{flag}  {}{}  expected {}  actual {}",
                r.description,
                " ".repeat(pad),
                r.expected,
                r.actual
            );
        }
        let _ = writeln!(
            out,
            "overall: {}",
            if self.overall { "PASS" } else { "FAIL" }
        );
        out
    }
}

fn fmt_len(len: Option<usize>) -> String {
    len.map_or_else(|| "none".to_string(), |l| l.to_string())
}

fn verify_dirdet(report: &mut VerifyReport, params: DirDetParams) {
    let (k, l) = (params.k(), params.l());
    let tag = format!("dirdet k={k} l={l}");
    let fw = build_dirdet_automaton(params);
    let result = shortest_accepted(&fw.automaton);
    report.push(
        format!("{tag} shortest length"),
        dirdet_length(k as u64, l as u64),
        fmt_len(result.length()),
    );
    report.check(
        format!("{tag} shortest string is a1..a{}", fw.expected_length),
        result.word.as_ref() == Some(&fw.witness),
    );
    let sizes = match fw.automaton.classify_direction() {
        DirectionClass::Determinate(p) => format!("({}, {})", p.q_plus.len(), p.q_minus.len()),
        DirectionClass::NotDeterminate { state } => format!("mixed at {state}"),
    };
    report.push(
        format!("{tag} partition sizes"),
        format!("({k}, {l})"),
        sizes,
    );
    let n = (k + l) as u64;
    report.check(
        format!("{tag} within C(n, n/2) - 1 = {}", dirdet_bound(n)),
        result
            .length()
            .is_some_and(|len| len as u128 <= dirdet_bound(n)),
    );
}

fn verify_general(report: &mut VerifyReport, n: u32) -> Result<()> {
    let tag = format!("general n={n}");
    let core = build_core(n)?;
    let result = shortest_accepted(&wrap(&core));
    report.push(
        format!("{tag} shortest length"),
        general_lower_bound(n),
        fmt_len(result.length()),
    );
    report.push(
        format!("{tag} witness starts exiting right in 1"),
        core.witness.len(),
        witness_exit_positions(&core),
    );
    if n <= BRUTE_SEGMENT_LIMIT {
        report.push(
            format!("{tag} shorter segments exiting right in 1"),
            0,
            short_exit_violations(&core),
        );
    }
    report.check(
        format!(
            "{tag} within C(2n, n) - 1 = {}",
            general_upper_bound(n as u64)
        ),
        result
            .length()
            .is_some_and(|len| len as u128 <= general_upper_bound(n as u64)),
    );
    Ok(())
}

pub fn verify(scope: Scope, limits: VerifyLimits) -> Result<VerifyReport> {
    if limits.dirdet_max_sum > DIRDET_SUM_LIMIT {
        return Err(Error::InvalidParams(format!(
            "k + l is limited to {DIRDET_SUM_LIMIT}"
        )));
    }
    if limits.general_max_n > GENERAL_N_LIMIT {
        return Err(Error::InvalidParams(format!(
            "n is limited to {GENERAL_N_LIMIT}"
        )));
    }
    let mut report = VerifyReport::default();
    if matches!(scope, Scope::DirDet | Scope::All) {
        match limits.only_pair {
            Some((k, l)) => {
                let params = DirDetParams::new(k, l)?;
                if k + l > DIRDET_SUM_LIMIT {
                    return Err(Error::InvalidParams(format!(
                        "k + l is limited to {DIRDET_SUM_LIMIT}"
                    )));
                }
                verify_dirdet(&mut report, params);
            }
            None => {
                for sum in 2..=limits.dirdet_max_sum {
                    for k in 2..=sum {
                        verify_dirdet(&mut report, DirDetParams::new(k, sum - k)?);
                    }
                }
            }
        }
    }
    if matches!(scope, Scope::General | Scope::All) {
        for n in 2..=limits.general_max_n {
            verify_general(&mut report, n)?;
        }
    }
    report.overall = report.rows.iter().all(|r| r.pass);
    Ok(report)
}

#[derive(Debug, Clone, Serialize)]
pub struct TableRow {
    pub n: u32,
    pub direction_determinate: u128,
    pub lower_bound: u128,
    pub computed: Option<usize>,
    pub upper_bound: u128,
}

pub fn table_rows(n_max: u32, computed: &BTreeMap<u32, usize>) -> Vec<TableRow> {
    (2..=n_max.max(2))
        .map(|n| TableRow {
            n,
            direction_determinate: dirdet_bound(n as u64),
            lower_bound: general_lower_bound(n),
            computed: computed.get(&n).copied(),
            upper_bound: nfa_upper_bound(n as u64),
        })
        .collect()
}

/// Right-aligned text table; the computed column is blank where no search
/// result is known.
pub fn render_table(rows: &[TableRow]) -> String {
    let header = ["n", "dir-det", "lower", "computed", "upper"];
    let body: Vec<[String; 5]> = rows
        .iter()
        .map(|r| {
            [
                r.n.to_string(),
                r.direction_determinate.to_string(),
                r.lower_bound.to_string(),
                r.computed.map(|c| c.to_string()).unwrap_or_default(),
                r.upper_bound.to_string(),
            ]
        })
        .collect();
    let mut widths = header.map(str::len);
    for row in &body {
        for (w, cell) in widths.iter_mut().zip(row) {
            *w = (*w).max(cell.len());
        }
    }
    let mut out = String::new();
    let mut line = |cells: &[String]| {
        let text = cells
            .iter()
            .zip(&widths)
            .enumerate()
            .map(|(i, (c, &w))| {
                if i == 0 {
                    format!("{c:<w$}")
                } else {
                    format!("{c:>w$}")
                }
            })
            .collect::<Vec<_>>()
            .join("  ");
        out.push_str(text.trim_end());
        out.push('\n');
    };
    line(&header.map(String::from));
    for row in &body {
        line(row);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_dirdet_report_passes() {
        let limits = VerifyLimits {
            dirdet_max_sum: 5,
            ..Default::default()
        };
        let report = verify(Scope::DirDet, limits).unwrap();
        assert!(report.overall, "{}", report.render_text());
        let row = report
            .rows
            .iter()
            .find(|r| r.description == "dirdet k=3 l=2 shortest length")
            .unwrap();
        assert_eq!(row.expected, "9");
    }

    #[test]
    fn small_general_report_passes() {
        let limits = VerifyLimits {
            general_max_n: 4,
            ..Default::default()
        };
        let report = verify(Scope::General, limits).unwrap();
        assert!(report.overall, "{}", report.render_text());
        let expected: Vec<_> = report
            .rows
            .iter()
            .filter(|r| r.description.ends_with("shortest length"))
            .map(|r| r.expected.as_str())
            .collect();
        assert_eq!(expected, vec!["2", "5", "11"]);
    }

    #[test]
    fn limits_and_bad_pairs_are_errors() {
        let pair = VerifyLimits {
            only_pair: Some((1, 3)),
            ..Default::default()
        };
        assert!(verify(Scope::DirDet, pair).is_err());
        let big = VerifyLimits {
            general_max_n: 40,
            ..Default::default()
        };
        assert!(verify(Scope::General, big).is_err());
    }

    #[test]
    fn table_with_a_computed_value() {
        let rows = table_rows(3, &BTreeMap::from([(2, 2)]));
        let text = render_table(&rows);
        assert_eq!(
            text,
            "n  dir-det  lower  computed  upper\n2        1      2         2      3\n3        2      5               14\n"
        );
    }
}
