//! JSON, CSV and markdown renderings of the reports.

use std::fmt::Write as _;

use knotrep_core::knot::{BridgeEstimate, Determinant};
use knotrep_core::rep::{ClassCase, RepClass, RepSpaceReport};
use knotrep_core::sphere::Verdict;
use knotrep_core::table::{AuditReport, TableRow};
use knotrep_core::tangent::TangentRow;
use knotrep_core::{CentralCase, PretzelKnot, RationalAngle};
use serde::{Deserialize, Serialize};

use crate::Format;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Invariants {
    pub knot: PretzelKnot,
    pub determinant: Determinant,
    pub components: usize,
    pub is_knot: bool,
    /// Doubled Seifert matrix `2V`, three odd parameters only.
    pub seifert_matrix_doubled: Option<[[i64; 2]; 2]>,
    pub signature: Option<i64>,
    pub lin_invariant: Option<i64>,
    pub klassen_bd_count: Option<u64>,
    pub pairwise_coprime: bool,
    pub two_bridge_pathology: bool,
    pub bridge_number_estimate: BridgeEstimate,
}

impl Invariants {
    pub fn of(k: &PretzelKnot) -> Self {
        Invariants {
            knot: k.clone(),
            determinant: k.determinant(),
            components: k.component_count(),
            is_knot: k.is_knot(),
            seifert_matrix_doubled: k.seifert_matrix().ok().map(|v| v.doubled),
            signature: k.signature().ok(),
            lin_invariant: k.lin_invariant().ok(),
            klassen_bd_count: k.klassen_bd_count().ok(),
            pairwise_coprime: k.pairwise_coprime(),
            two_bridge_pathology: k.has_unit_parameter(),
            bridge_number_estimate: k.bridge_number_estimate(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FullReport {
    pub invariants: Invariants,
    pub enumeration: RepSpaceReport,
    pub tangent: Vec<TangentRow>,
    pub audit: Option<AuditReport>,
}

fn json<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("reports serialize");
    s.push('\n');
    s
}

fn csv_string(header: &[&str], rows: &[Vec<String>]) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header).expect("in-memory write");
    for r in rows {
        w.write_record(r).expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8 fields")
}

fn markdown_table(header: &[&str], rows: &[Vec<String>]) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "| {} |", header.join(" | "));
    let _ = writeln!(s, "|{}", "---|".repeat(header.len()));
    for r in rows {
        let _ = writeln!(s, "| {} |", r.join(" | "));
    }
    s
}

fn opt<T: ToString>(v: Option<T>) -> String {
    v.map_or_else(|| "n/a".to_string(), |x| x.to_string())
}

fn yes_no(b: bool) -> String {
    if b { "yes" } else { "no" }.to_string()
}

fn verdict(v: Verdict) -> String {
    match v {
        Verdict::NonDegenerate => "non-degenerate",
        Verdict::Degenerate => "degenerate",
        Verdict::Infeasible => "infeasible",
    }
    .to_string()
}

fn angles(a: &[RationalAngle]) -> String {
    a.iter()
        .map(|x| x.to_string())
        .collect::<Vec<_>>()
        .join(" ")
}

fn case_label(c: &ClassCase) -> (String, String) {
    match c {
        ClassCase::PlusOne => ("+1".into(), String::new()),
        ClassCase::MinusOne => ("-1".into(), String::new()),
        ClassCase::BinaryDihedral { beta } => ("beta".into(), beta.to_string()),
        ClassCase::Abelian => ("abelian".into(), String::new()),
    }
}

pub fn invariants(inv: &Invariants, fmt: Format) -> String {
    let rows: Vec<Vec<String>> = [
        ("knot", inv.knot.to_string()),
        ("determinant", inv.determinant.absolute.to_string()),
        ("determinant_signed", inv.determinant.signed.to_string()),
        ("components", inv.components.to_string()),
        ("signature", opt(inv.signature)),
        ("lin_invariant", opt(inv.lin_invariant)),
        ("klassen_bd_count", opt(inv.klassen_bd_count)),
        ("pairwise_coprime", yes_no(inv.pairwise_coprime)),
        ("two_bridge_pathology", yes_no(inv.two_bridge_pathology)),
        (
            "bridge_number_estimate",
            format!("{:?}", inv.bridge_number_estimate),
        ),
    ]
    .into_iter()
    .map(|(k, v)| vec![k.to_string(), v])
    .collect();
    match fmt {
        Format::Json => json(inv),
        Format::Csv => csv_string(&["quantity", "value"], &rows),
        Format::Markdown => markdown_table(&["quantity", "value"], &rows),
    }
}

const CLASS_HEADER: [&str; 9] = [
    "id",
    "group",
    "case",
    "beta",
    "angles",
    "mirror",
    "mirror_pair_id",
    "orbit",
    "points",
];

fn class_rows(r: &RepSpaceReport) -> Vec<Vec<String>> {
    let groups = [
        ("abelian", &r.abelian_classes),
        ("binary_dihedral", &r.binary_dihedral_classes),
        ("non_binary_dihedral", &r.non_bd_classes),
    ];
    let mut out = Vec::new();
    for (group, classes) in groups {
        for c in classes.iter() {
            out.push(class_row(out.len(), group, c));
        }
    }
    out
}

fn class_row(id: usize, group: &str, c: &RepClass) -> Vec<String> {
    let (case, beta) = case_label(&c.case);
    // adding 0.0 turns −0.0 into 0.0
    let points = c
        .points
        .iter()
        .map(|z| format!("{:.12} {:.12} {:.12}", z.x + 0.0, z.y + 0.0, z.z + 0.0))
        .collect::<Vec<_>>()
        .join("; ");
    vec![
        id.to_string(),
        group.to_string(),
        case,
        beta,
        angles(&c.angles),
        c.mirror
            .map_or_else(String::new, |m| format!("{:+}", m.sign() as i32)),
        c.flags
            .mirror_pair_id
            .map_or_else(String::new, |x| x.to_string()),
        format!("{:?}", c.orbit_type),
        points,
    ]
}

fn counts_markdown(r: &RepSpaceReport) -> String {
    let c = &r.counts;
    let mut s = format!("## {}\n\n", r.knot);
    let _ = writeln!(s, "- abelian classes: {}", c.abelian);
    let _ = writeln!(
        s,
        "- binary dihedral classes: {} ({} from the ±1 cases; expected {})",
        c.binary_dihedral,
        c.binary_dihedral_central,
        opt(c.klassen_expected)
    );
    let exhaustive = if r.non_bd_exhaustive {
        ""
    } else {
        " (not enumerated exactly for this many strands)"
    };
    let _ = writeln!(
        s,
        "- non-binary-dihedral classes: {} in {} mirror pairs{exhaustive}",
        c.non_bd, c.mirror_pairs
    );
    if let Some(p) = c.published_non_bd {
        let _ = writeln!(s, "- published non-binary-dihedral figure: {p}");
    }
    if r.two_bridge_pathology {
        let _ = writeln!(s, "- some |p_i| = 1: the knot is 2-bridge");
    }
    s.push('\n');
    s
}

fn discrepancies_markdown(r: &RepSpaceReport) -> String {
    if r.paper_discrepancies.is_empty() {
        return String::new();
    }
    let rows: Vec<Vec<String>> = r
        .paper_discrepancies
        .iter()
        .map(|d| {
            vec![
                d.case.to_string(),
                angles(&d.angles),
                yes_no(d.paper_verdict),
                verdict(d.computed_verdict),
                format!("{:.6}", d.gram_det),
            ]
        })
        .collect();
    format!(
        "### Published verdicts contradicted by the Gram criterion\n\n{}\n",
        markdown_table(
            &["case", "angles", "printed", "computed", "gram_det"],
            &rows
        )
    )
}

fn samples_markdown(r: &RepSpaceReport) -> String {
    if r.numeric_samples.is_empty() {
        return String::new();
    }
    let rows: Vec<Vec<String>> = r
        .numeric_samples
        .iter()
        .map(|s| {
            vec![
                s.case.to_string(),
                angles(&s.angles),
                format!("{:.1e}", s.residual),
                opt(s.family_dimension),
            ]
        })
        .collect();
    format!(
        "### Numeric non-binary-dihedral samples\n\n{}\n",
        markdown_table(&["case", "angles", "residual", "family_dimension"], &rows)
    )
}

pub fn enumeration(r: &RepSpaceReport, fmt: Format) -> String {
    match fmt {
        Format::Json => json(r),
        Format::Csv => csv_string(&CLASS_HEADER, &class_rows(r)),
        Format::Markdown => {
            let mut s = counts_markdown(r);
            s.push_str(&markdown_table(&CLASS_HEADER, &class_rows(r)));
            s.push('\n');
            s.push_str(&discrepancies_markdown(r));
            s.push_str(&samples_markdown(r));
            s
        }
    }
}

const TABLE_HEADER: [&str; 7] = [
    "a12",
    "a23",
    "a31",
    "abs_diff",
    "sum",
    "delta_inequality",
    "gram_verdict",
];

#[derive(Serialize)]
struct TableDoc<'a> {
    knot: &'a PretzelKnot,
    case: CentralCase,
    rows: &'a [TableRow],
}

pub fn table(k: &PretzelKnot, case: CentralCase, rows: &[TableRow], fmt: Format) -> String {
    let cells: Vec<Vec<String>> = rows
        .iter()
        .map(|r| {
            let mut v: Vec<String> = r.angles.iter().map(|a| a.to_string()).collect();
            v.push(r.planar.lo.to_string());
            v.push(r.planar.hi.to_string());
            v.push(yes_no(r.planar.holds));
            v.push(verdict(r.gram_verdict));
            v
        })
        .collect();
    match fmt {
        Format::Json => json(&TableDoc {
            knot: k,
            case,
            rows,
        }),
        Format::Csv => csv_string(&TABLE_HEADER, &cells),
        Format::Markdown => {
            format!(
                "## {k}, case {case} (angles in units of π)\n\n{}",
                markdown_table(&TABLE_HEADER, &cells)
            )
        }
    }
}

const TANGENT_HEADER: [&str; 9] = [
    "class_id",
    "group",
    "case",
    "angles",
    "z1_dim",
    "b1_dim",
    "h1_dim",
    "min_nonzero_singular",
    "spectral_gap",
];

fn tangent_cells(r: &RepSpaceReport, rows: &[TangentRow]) -> Vec<Vec<String>> {
    let classes = class_rows(r);
    rows.iter()
        .zip(classes)
        .map(|(t, c)| {
            vec![
                t.class_id.to_string(),
                c[1].clone(),
                c[2].clone(),
                c[4].clone(),
                t.z1_dim.to_string(),
                t.b1_dim.to_string(),
                t.h1_dim.to_string(),
                t.min_nonzero_singular
                    .map_or_else(String::new, |x| format!("{x:.6e}")),
                format!("{:.3e}", t.spectral_gap),
            ]
        })
        .collect()
}

#[derive(Serialize)]
struct TangentDoc<'a> {
    knot: &'a PretzelKnot,
    rows: &'a [TangentRow],
}

pub fn tangent(r: &RepSpaceReport, rows: &[TangentRow], fmt: Format) -> String {
    match fmt {
        Format::Json => json(&TangentDoc {
            knot: &r.knot,
            rows,
        }),
        Format::Csv => csv_string(&TANGENT_HEADER, &tangent_cells(r, rows)),
        Format::Markdown => {
            let nonzero = rows.iter().filter(|t| t.h1_dim > 0).count();
            format!(
                "## {}: Zariski tangent spaces\n\n{} classes, {} with nonvanishing H¹\n\n{}",
                r.knot,
                rows.len(),
                nonzero,
                markdown_table(&TANGENT_HEADER, &tangent_cells(r, rows))
            )
        }
    }
}

const AUDIT_HEADER: [&str; 11] = [
    "case",
    "a12",
    "a23",
    "a31",
    "fractions_match",
    "printed",
    "planar",
    "gram_det",
    "gram_verdict",
    "solver_solutions",
    "agreement",
];

fn audit_cells(a: &AuditReport) -> Vec<Vec<String>> {
    a.rows
        .iter()
        .map(|r| {
            let mut v = vec![r.case.to_string()];
            v.extend(r.angles.iter().map(|x| x.to_string()));
            let agreement = match (r.planar_agrees(), r.gram_agrees()) {
                (true, true) => "agree",
                (false, true) => "planar disagrees",
                (true, false) => "gram disagrees",
                (false, false) => "both disagree",
            };
            v.extend([
                yes_no(r.fractions_match),
                yes_no(r.paper_verdict),
                yes_no(r.planar_verdict),
                format!("{:.6}", r.gram_det),
                verdict(r.gram_verdict),
                r.solver_solutions.to_string(),
                agreement.to_string(),
            ]);
            v
        })
        .collect()
}

fn audit_markdown(a: &AuditReport) -> String {
    if !a.golden_available {
        return format!(
            "## {}: audit\n\nNo published table applies to this knot.\n",
            a.knot
        );
    }
    let total = a.rows.len();
    let mut s = format!("## {}: audit against the published tables\n\n", a.knot);
    let _ = writeln!(
        s,
        "- planar triangle inequality agrees with the printed verdict on {}/{total} rows",
        a.planar_agreements
    );
    let _ = writeln!(
        s,
        "- Gram determinant agrees with the printed verdict on {}/{total} rows",
        a.gram_agreements
    );
    let _ = writeln!(
        s,
        "- closure solver agrees with the Gram verdict on {}/{total} rows",
        a.solver_gram_agreements
    );
    let _ = writeln!(
        s,
        "- non-binary-dihedral classes: published {}, computed {}",
        opt(a.published_non_bd_figure),
        opt(a.computed_non_bd)
    );
    if a.missing_rows > 0 {
        let _ = writeln!(
            s,
            "- {} rows differ between the published and computed tables",
            a.missing_rows
        );
    }
    s.push('\n');
    s.push_str(&markdown_table(&AUDIT_HEADER, &audit_cells(a)));
    s
}

pub fn audit(a: &AuditReport, fmt: Format) -> String {
    match fmt {
        Format::Json => json(a),
        Format::Csv => csv_string(&AUDIT_HEADER, &audit_cells(a)),
        Format::Markdown => audit_markdown(a),
    }
}

pub fn full_report(f: &FullReport, fmt: Format) -> String {
    match fmt {
        Format::Json => json(f),
        Format::Csv => {
            // one row per class, tangent columns appended
            let mut header: Vec<&str> = CLASS_HEADER.to_vec();
            header.extend(["z1_dim", "b1_dim", "h1_dim"]);
            let rows: Vec<Vec<String>> = class_rows(&f.enumeration)
                .into_iter()
                .zip(&f.tangent)
                .map(|(mut c, t)| {
                    c.extend([
                        t.z1_dim.to_string(),
                        t.b1_dim.to_string(),
                        t.h1_dim.to_string(),
                    ]);
                    c
                })
                .collect();
            csv_string(&header, &rows)
        }
        Format::Markdown => {
            let mut s = format!("# Report for {}\n\n", f.invariants.knot);
            s.push_str(&invariants(&f.invariants, Format::Markdown));
            s.push('\n');
            s.push_str(&enumeration(&f.enumeration, Format::Markdown));
            s.push_str(&tangent(&f.enumeration, &f.tangent, Format::Markdown));
            if let Some(a) = &f.audit {
                s.push('\n');
                s.push_str(&audit_markdown(a));
            }
            s
        }
    }
}
