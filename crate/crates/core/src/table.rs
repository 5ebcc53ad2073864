//! Central-case angle tables for three strands and their audit against the
//! published P(3,5,7) tables, which are embedded as data.

use num_rational::Ratio;
use serde::{Deserialize, Serialize};

use crate::angle::{CentralCase, RationalAngle};
use crate::knot::PretzelKnot;
use crate::rep::{central_candidates, enumerate_all, solve_closure_numeric, RepError};
use crate::sphere::{planar_triangle_check, PlanarCheck, Verdict};

/// Published number of non-binary-dihedral classes of P(±3,±5,±7).
pub const PUBLISHED_NON_BD_FIGURE: u64 = 18;

const PLUS_CSV: &str = include_str!("../data/p357_plus.csv");
const MINUS_CSV: &str = include_str!("../data/p357_minus.csv");

/// One printed row: the three angles (as multiples of π), the two planar
/// bounds, and the printed triangle-inequality verdict.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GoldenRow {
    pub angles: [RationalAngle; 3],
    #[serde(with = "crate::sphere::ratio_str")]
    pub abs_diff: Ratio<i64>,
    #[serde(with = "crate::sphere::ratio_str")]
    pub sum: Ratio<i64>,
    pub realizable: bool,
}

fn parse_ratio(s: &str) -> Ratio<i64> {
    let (n, d) = s.split_once('/').unwrap_or((s, "1"));
    Ratio::new(
        n.trim().parse().expect("golden numerator"),
        d.trim().parse().expect("golden denominator"),
    )
}

fn parse_golden(csv: &str) -> Vec<GoldenRow> {
    csv.lines()
        .skip(1)
        .filter(|l| !l.trim().is_empty())
        .map(|line| {
            let f: Vec<&str> = line.split(',').map(str::trim).collect();
            let a = |i: usize| RationalAngle::from_ratio(parse_ratio(f[i]));
            GoldenRow {
                angles: [a(0), a(1), a(2)],
                abs_diff: parse_ratio(f[3]),
                sum: parse_ratio(f[4]),
                realizable: f[5] == "yes",
            }
        })
        .collect()
}

pub fn golden_table(case: CentralCase) -> Vec<GoldenRow> {
    parse_golden(match case {
        CentralCase::PlusOne => PLUS_CSV,
        CentralCase::MinusOne => MINUS_CSV,
    })
}

/// The published tables hold for every sign choice of P(3,5,7).
pub fn has_golden_table(k: &PretzelKnot) -> bool {
    k.params().iter().map(|p| p.abs()).eq([3, 5, 7])
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TableRow {
    pub angles: [RationalAngle; 3],
    pub planar: PlanarCheck,
    pub gram_det: f64,
    pub gram_verdict: Verdict,
}

/// Central-case tuples with all three angles in `(0, π)`, in lexicographic order.
pub fn central_table(k: &PretzelKnot, case: CentralCase) -> Result<Vec<TableRow>, RepError> {
    let mut rows: Vec<TableRow> = central_candidates(k, case)?
        .into_iter()
        .filter(|(t, _)| t.iter().all(|a| !a.is_endpoint()))
        .map(|(t, r)| TableRow {
            angles: [t[0], t[1], t[2]],
            planar: planar_triangle_check(t[0], t[1], t[2]),
            gram_det: r.gram_det,
            gram_verdict: r.verdict,
        })
        .collect();
    rows.sort_by_key(|r| r.angles.map(|a| a.coeff()));
    Ok(rows)
}

/// A printed verdict that disagrees with the Gram determinant criterion.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PaperDiscrepancy {
    pub case: CentralCase,
    pub angles: [RationalAngle; 3],
    pub paper_verdict: bool,
    pub computed_verdict: Verdict,
    pub gram_det: f64,
}

/// `None` when no published table applies to `k`.
pub fn paper_discrepancies(k: &PretzelKnot) -> Option<Vec<PaperDiscrepancy>> {
    if !has_golden_table(k) {
        return None;
    }
    let mut out = Vec::new();
    for case in [CentralCase::PlusOne, CentralCase::MinusOne] {
        let rows = central_table(k, case).ok()?;
        for g in golden_table(case) {
            let row = rows.iter().find(|r| r.angles == g.angles)?;
            if g.realizable != row.gram_verdict.is_feasible() {
                out.push(PaperDiscrepancy {
                    case,
                    angles: g.angles,
                    paper_verdict: g.realizable,
                    computed_verdict: row.gram_verdict,
                    gram_det: row.gram_det,
                });
            }
        }
    }
    Some(out)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AuditRow {
    pub case: CentralCase,
    pub angles: [RationalAngle; 3],
    /// The printed bounds equal the computed ones exactly.
    pub fractions_match: bool,
    pub paper_verdict: bool,
    pub planar_verdict: bool,
    pub gram_det: f64,
    pub gram_verdict: Verdict,
    /// Distinct configurations found by `solve_closure_numeric`.
    pub solver_solutions: usize,
}

impl AuditRow {
    pub fn planar_agrees(&self) -> bool {
        self.paper_verdict == self.planar_verdict
    }

    pub fn gram_agrees(&self) -> bool {
        self.paper_verdict == self.gram_verdict.is_feasible()
    }

    pub fn solver_agrees_with_gram(&self) -> bool {
        (self.solver_solutions > 0) == self.gram_verdict.is_feasible()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AuditReport {
    pub knot: PretzelKnot,
    pub golden_available: bool,
    pub rows: Vec<AuditRow>,
    /// Golden rows missing from the computed table, or vice versa.
    pub missing_rows: usize,
    pub planar_agreements: usize,
    pub gram_agreements: usize,
    pub solver_gram_agreements: usize,
    pub published_non_bd_figure: Option<u64>,
    pub computed_non_bd: Option<usize>,
}

impl AuditReport {
    pub fn planar_disagreements(&self) -> impl Iterator<Item = &AuditRow> {
        self.rows.iter().filter(|r| !r.planar_agrees())
    }

    pub fn gram_disagreements(&self) -> impl Iterator<Item = &AuditRow> {
        self.rows.iter().filter(|r| !r.gram_agrees())
    }
}

/// Compares the published tables with the planar inequality, the Gram
/// determinant and the numeric closure solver.
pub fn audit(k: &PretzelKnot, attempts: usize, seed: u64) -> Result<AuditReport, RepError> {
    let mut report = AuditReport {
        knot: k.clone(),
        golden_available: has_golden_table(k),
        rows: Vec::new(),
        missing_rows: 0,
        planar_agreements: 0,
        gram_agreements: 0,
        solver_gram_agreements: 0,
        published_non_bd_figure: None,
        computed_non_bd: None,
    };
    if !report.golden_available {
        return Ok(report);
    }
    for case in [CentralCase::PlusOne, CentralCase::MinusOne] {
        let rows = central_table(k, case)?;
        let golden = golden_table(case);
        report.missing_rows += rows.len().abs_diff(golden.len());
        for g in golden {
            let Some(row) = rows.iter().find(|r| r.angles == g.angles) else {
                report.missing_rows += 1;
                continue;
            };
            let solver_solutions = solve_closure_numeric(&g.angles, attempts, seed).len();
            report.rows.push(AuditRow {
                case,
                angles: g.angles,
                fractions_match: row.planar.lo == g.abs_diff && row.planar.hi == g.sum,
                paper_verdict: g.realizable,
                planar_verdict: row.planar.holds,
                gram_det: row.gram_det,
                gram_verdict: row.gram_verdict,
                solver_solutions,
            });
        }
    }
    report.planar_agreements = report.rows.iter().filter(|r| r.planar_agrees()).count();
    report.gram_agreements = report.rows.iter().filter(|r| r.gram_agrees()).count();
    report.solver_gram_agreements = report
        .rows
        .iter()
        .filter(|r| r.solver_agrees_with_gram())
        .count();
    report.published_non_bd_figure = Some(PUBLISHED_NON_BD_FIGURE);
    report.computed_non_bd = Some(enumerate_all(k)?.counts.non_bd);
    Ok(report)
}
