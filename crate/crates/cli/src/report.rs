//! Report artifacts: the bit-exact CSV series table and the JSON report.
//!
//! Both artifacts are deterministic functions of the run configuration and
//! the seed: rationals are written exactly as `num/den`, decimals are
//! rendered by [`crate::decimal::decimal`] (round half to even), members
//! appear in family order and checkpoints ascending, and the JSON field
//! order is fixed by struct order. The engine mode and thread count are
//! deliberately absent, so artifacts are byte-identical across engine
//! choices.
//!
//! CSV schema: `l,poly_id,S_num,S_den,S_decimal,count_below_1,count_below_1_2`.

use crate::decimal::decimal;
use crate::parse::rational_text;
use berkstat_core::berkovich::BerkPoint;
use berkstat_core::equidist::{MemberSeries, RunOptions, StatReport, TestFamily, WitnessData};
use berkstat_core::{FieldKind, FieldSpec};
use serde::Serialize;

/// The exact CSV header line.
pub const CSV_HEADER: &str = "l,poly_id,S_num,S_den,S_decimal,count_below_1,count_below_1_2";

/// Renders the series table. Rows are member-major (all checkpoints of the
/// first member, then the second, ...), `poly_id` is the canonical display
/// form of the member.
pub fn series_csv(members: &[MemberSeries], digits: usize) -> String {
    let mut out = String::from(CSV_HEADER);
    out.push('\n');
    for member in members {
        let id = member.poly.to_string();
        for p in &member.series {
            out.push_str(&format!(
                "{},{},{},{},{},{},{}\n",
                p.l,
                id,
                p.s.numer(),
                p.s.denom(),
                decimal(&p.s, digits),
                p.count_below_one,
                p.count_below_half,
            ));
        }
    }
    out
}

#[derive(Serialize)]
struct FieldDoc {
    kind: &'static str,
    p: Option<u64>,
    base: String,
}

#[derive(Serialize)]
struct WitnessDoc {
    relation: String,
    polynomial: String,
    #[serde(rename = "A")]
    discrepancy: String,
    #[serde(rename = "absA")]
    abs_a: String,
    #[serde(rename = "absA_decimal")]
    abs_a_decimal: String,
}

#[derive(Serialize)]
struct RowDoc {
    l: u64,
    #[serde(rename = "S")]
    s: String,
    #[serde(rename = "S_decimal")]
    s_decimal: String,
    count_below_1: u64,
    count_below_1_2: u64,
}

#[derive(Serialize)]
struct MemberDoc {
    poly_id: String,
    series: Vec<RowDoc>,
}

#[derive(Serialize)]
struct ReportDoc {
    field: FieldDoc,
    point: String,
    lmax: u64,
    checkpoints: Vec<u64>,
    seed: u64,
    bound: u64,
    family: Vec<String>,
    nondegenerate: bool,
    relation_basis: Vec<String>,
    witness: Option<WitnessDoc>,
    verdict: String,
    members: Vec<MemberDoc>,
}

fn field_doc(spec: &FieldSpec) -> FieldDoc {
    FieldDoc {
        kind: match spec.kind() {
            FieldKind::TAdic => "t",
            FieldKind::PAdic => "p",
        },
        p: spec.p(),
        base: rational_text(spec.base()),
    }
}

fn witness_doc(w: &WitnessData, digits: usize) -> WitnessDoc {
    WitnessDoc {
        relation: w
            .relation
            .iter()
            .map(i64::to_string)
            .collect::<Vec<_>>()
            .join(","),
        polynomial: w.polynomial.to_string(),
        discrepancy: w.discrepancy.to_string(),
        abs_a: rational_text(&w.discrepancy_abs),
        abs_a_decimal: decimal(&w.discrepancy_abs, digits),
    }
}

fn member_docs(members: &[MemberSeries], digits: usize) -> Vec<MemberDoc> {
    members
        .iter()
        .map(|m| MemberDoc {
            poly_id: m.poly.to_string(),
            series: m
                .series
                .iter()
                .map(|p| RowDoc {
                    l: p.l,
                    s: rational_text(&p.s),
                    s_decimal: decimal(&p.s, digits),
                    count_below_1: p.count_below_one,
                    count_below_1_2: p.count_below_half,
                })
                .collect(),
        })
        .collect()
}

/// Renders the JSON report of a convergence run.
pub fn report_json(
    spec: &FieldSpec,
    point: &BerkPoint,
    options: &RunOptions,
    seed: u64,
    family: &TestFamily,
    report: &StatReport,
    digits: usize,
) -> String {
    let doc = ReportDoc {
        field: field_doc(spec),
        point: point.to_string(),
        lmax: options.lmax,
        checkpoints: options.checkpoints.clone(),
        seed,
        bound: options.bound,
        family: family.members().iter().map(|f| f.to_string()).collect(),
        nondegenerate: report.nondegenerate,
        relation_basis: report.relation_basis.iter().map(|r| r.to_string()).collect(),
        witness: report.witness.as_ref().map(|w| witness_doc(w, digits)),
        verdict: report.verdict.to_string(),
        members: member_docs(&report.members, digits),
    };
    let mut text = serde_json::to_string_pretty(&doc).expect("report serializes");
    text.push('\n');
    text
}
