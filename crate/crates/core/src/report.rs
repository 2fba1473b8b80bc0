//! Theorem-versus-oracle tables and the text, TSV and JSON renderings used by
//! the command-line tool.

use std::fmt;
use std::str::FromStr;

use serde_json::{json, Value};

use crate::constructions::Realized;
use crate::count::{BigCount, SlackReport};
use crate::error::{Error, Result};
use crate::family::is_cross_intersecting;
use crate::grid::Span;
use crate::search::{
    applicable_bound, intersecting_bound, max_cross_sum_with, max_intersecting_with_tau, Bound,
    ConstraintSpec, SearchConfig, SearchReport,
};
use crate::shifting::is_initial;
use crate::transversal::tau;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Theorem {
    /// `τ(F) >= 1`, `τ(G) >= t`: bound `|M^t|`.
    OneT,
    /// `τ(F) = s`, `τ(G) >= t`: bound `|M_s^t|`.
    ExactS,
    /// `τ(F) >= s`, `τ(G) >= t`: bound `|M^t|`.
    AtLeastS,
    /// Initial families, `τ(F) >= 1`, `τ(G) >= t`: bound `|H^t|`.
    InitialT,
    /// Initial families, `τ(F) = s`, `τ(G) >= t`: bound `|H_s^t|`.
    InitialS,
    /// Intersecting `k`-uniform families with `τ >= s`.
    Intersecting,
}

impl Theorem {
    pub const ALL: [Theorem; 6] = [
        Theorem::OneT,
        Theorem::ExactS,
        Theorem::AtLeastS,
        Theorem::InitialT,
        Theorem::InitialS,
        Theorem::Intersecting,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Theorem::OneT => "1t",
            Theorem::ExactS => "st",
            Theorem::AtLeastS => "ss",
            Theorem::InitialT => "ht",
            Theorem::InitialS => "hst",
            Theorem::Intersecting => "intersecting",
        }
    }

    fn spec(self, s: usize, t: usize) -> Option<ConstraintSpec> {
        match self {
            Theorem::OneT => Some(ConstraintSpec::at_least(1, t)),
            Theorem::ExactS => Some(ConstraintSpec::exact_f(s, t)),
            Theorem::AtLeastS => Some(ConstraintSpec::at_least(s, t)),
            Theorem::InitialT => Some(ConstraintSpec::at_least(1, t).initial()),
            Theorem::InitialS => Some(ConstraintSpec::exact_f(s, t).initial()),
            Theorem::Intersecting => None,
        }
    }

    fn uses_s(self) -> bool {
        !matches!(self, Theorem::OneT | Theorem::InitialT)
    }
}

impl fmt::Display for Theorem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Theorem {
    type Err = Error;

    fn from_str(s: &str) -> Result<Theorem> {
        let key = s.to_ascii_lowercase();
        Theorem::ALL
            .into_iter()
            .find(|t| t.name() == key)
            .ok_or_else(|| Error::InvalidParams(format!("unknown theorem `{s}`")))
    }
}

/// Parameter ranges of a table. Unused axes are ignored.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TableRanges {
    pub n: Span,
    pub a: Span,
    pub b: Span,
    pub t: Span,
    pub s: Span,
    pub k: Span,
}

impl Default for TableRanges {
    fn default() -> Self {
        let one = Span::new(1, 1);
        TableRanges {
            n: Span::new(7, 7),
            a: Span::new(4, 4),
            b: Span::new(2, 2),
            t: Span::new(2, 2),
            s: one,
            k: Span::new(3, 3),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail,
    /// The theorem's hypotheses do not hold at this point.
    Skip,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Skip => "SKIP",
        })
    }
}

/// How a row's value was obtained.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Evidence {
    /// Exhaustive search.
    Oracle,
    /// Outside the search guardrail: the extremal construction was built and
    /// checked against the constraints instead.
    Construction,
    None,
}

#[derive(Clone, Debug)]
pub struct TableRow {
    pub theorem: Theorem,
    pub params: Vec<(&'static str, usize)>,
    pub bound: Option<BigCount>,
    pub source: Option<&'static str>,
    pub evidence: Evidence,
    /// Search optimum or construction size.
    pub value: Option<usize>,
    pub matched: Option<bool>,
    /// Whether the optima form exactly the claimed classes, when uniqueness
    /// is claimed and the oracle ran.
    pub unique: Option<bool>,
    pub status: Status,
    pub note: String,
}

impl TableRow {
    pub fn params_string(&self) -> String {
        self.params
            .iter()
            .map(|(k, v)| format!("{k}={v}"))
            .collect::<Vec<_>>()
            .join(",")
    }
}

fn to_usize(v: i64) -> Result<usize> {
    usize::try_from(v).map_err(|_| Error::InvalidParams(format!("negative parameter {v}")))
}

fn from_report(theorem: Theorem, params: Vec<(&'static str, usize)>, r: SearchReport) -> TableRow {
    let ok = r.bound_matched == Some(true) && r.iso_matches_construction != Some(false);
    let note = match (r.bound_matched, r.iso_matches_construction) {
        (Some(false), _) => "optimum differs from bound".to_string(),
        (_, Some(false)) => format!("{} optimal classes", r.iso_class_count.unwrap_or(0)),
        _ => String::new(),
    };
    TableRow {
        theorem,
        params,
        bound: r.bound.value,
        source: r.bound.source,
        evidence: Evidence::Oracle,
        value: r.optimum,
        matched: r.bound_matched,
        unique: r.iso_matches_construction,
        status: if ok { Status::Pass } else { Status::Fail },
        note,
    }
}

/// Checks each extremal construction: size equal to the bound and the
/// constraints satisfied.
fn from_construction(
    theorem: Theorem,
    params: Vec<(&'static str, usize)>,
    bound: Bound,
    spec: Option<ConstraintSpec>,
    s: usize,
) -> Result<TableRow> {
    let value = bound.value.clone().expect("bound present");
    let mut sizes = Vec::new();
    let mut valid = !bound.extremal.is_empty();
    for r in &bound.extremal {
        match (r, spec) {
            (Realized::Pair(p), Some(spec)) => {
                valid &= is_cross_intersecting(p)
                    && spec.f.admits(tau(p.f())?)
                    && spec.g.admits(tau(p.g())?)
                    && (!spec.initial_only || (is_initial(p.f()) && is_initial(p.g())));
                sizes.push(p.total());
            }
            (Realized::Single(f), None) => {
                valid &= f.is_intersecting() && tau(f)? >= s;
                sizes.push(f.len());
            }
            _ => valid = false,
        }
    }
    let matched = !sizes.is_empty() && sizes.iter().all(|&x| BigCount::from(x) == value);
    let note = if bound.extremal.is_empty() {
        "no construction to check".to_string()
    } else if !valid {
        "construction violates the constraints".to_string()
    } else {
        String::new()
    };
    Ok(TableRow {
        theorem,
        params,
        bound: Some(value),
        source: bound.source,
        evidence: Evidence::Construction,
        value: sizes.first().copied(),
        matched: Some(matched),
        unique: None,
        status: if matched && valid {
            Status::Pass
        } else {
            Status::Fail
        },
        note,
    })
}

fn skip(theorem: Theorem, params: Vec<(&'static str, usize)>, note: String) -> TableRow {
    TableRow {
        theorem,
        params,
        bound: None,
        source: None,
        evidence: Evidence::None,
        value: None,
        matched: None,
        unique: None,
        status: Status::Skip,
        note,
    }
}

/// One row: the search when it fits the guardrails, the construction
/// otherwise, and a skip when no bound applies.
pub fn table_row(
    theorem: Theorem,
    point: (usize, usize, usize, usize, usize),
    cfg: &SearchConfig,
) -> Result<TableRow> {
    let (n, a, b, t, s) = point;
    if theorem == Theorem::Intersecting {
        // (n, k, s) travel in the n, a and s slots
        let k = a;
        let params = vec![("n", n), ("k", k), ("s", s)];
        let bound = match intersecting_bound(n, k, s) {
            Ok(b) if b.value.is_some() => b,
            Ok(_) => return Ok(skip(theorem, params, "no closed form".into())),
            Err(e) => return Ok(skip(theorem, params, e.to_string())),
        };
        return match max_intersecting_with_tau(n, k, s, cfg) {
            Ok(r) => Ok(from_report(theorem, params, r)),
            Err(Error::TooLarge(_)) => from_construction(theorem, params, bound, None, s),
            Err(e) => Err(e),
        };
    }
    let spec = theorem.spec(s, t).expect("pair theorem");
    let mut params = vec![("n", n), ("a", a), ("b", b), ("t", t)];
    if theorem.uses_s() {
        params.push(("s", s));
    }
    let bound = match applicable_bound(n, a, b, &spec) {
        Ok(b) if b.value.is_some() => b,
        Ok(_) => return Ok(skip(theorem, params, "hypotheses fail".into())),
        Err(e) => return Ok(skip(theorem, params, e.to_string())),
    };
    match max_cross_sum_with(n, a, b, spec, cfg) {
        Ok(r) => Ok(from_report(theorem, params, r)),
        Err(Error::TooLarge(_)) => from_construction(theorem, params, bound, Some(spec), s),
        Err(e @ (Error::Contradictory(_) | Error::InvalidParams(_))) => {
            Ok(skip(theorem, params, e.to_string()))
        }
        Err(e) => Err(e),
    }
}

/// Every grid point of the ranges, in `n, a, b, t, s` order (`n, k, s` for
/// the intersecting table).
pub fn table(theorem: Theorem, ranges: &TableRanges, cfg: &SearchConfig) -> Result<Vec<TableRow>> {
    let mut rows = Vec::new();
    if theorem == Theorem::Intersecting {
        for n in ranges.n.iter() {
            for k in ranges.k.iter() {
                for s in ranges.s.iter() {
                    let p = (to_usize(n)?, to_usize(k)?, 0, 0, to_usize(s)?);
                    rows.push(table_row(theorem, p, cfg)?);
                }
            }
        }
        return Ok(rows);
    }
    let s_span = if theorem.uses_s() {
        ranges.s
    } else {
        Span::new(1, 1)
    };
    for n in ranges.n.iter() {
        for a in ranges.a.iter() {
            for b in ranges.b.iter() {
                for t in ranges.t.iter() {
                    for s in s_span.iter() {
                        let p = (
                            to_usize(n)?,
                            to_usize(a)?,
                            to_usize(b)?,
                            to_usize(t)?,
                            to_usize(s)?,
                        );
                        rows.push(table_row(theorem, p, cfg)?);
                    }
                }
            }
        }
    }
    Ok(rows)
}

/// Output style for tables.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Text,
    Tsv,
    Json,
}

impl FromStr for Format {
    type Err = Error;

    fn from_str(s: &str) -> Result<Format> {
        match s.to_ascii_lowercase().as_str() {
            "text" => Ok(Format::Text),
            "tsv" => Ok(Format::Tsv),
            "json" => Ok(Format::Json),
            _ => Err(Error::InvalidParams(format!("unknown format `{s}`"))),
        }
    }
}

fn opt<T: ToString>(v: Option<T>) -> String {
    v.map_or_else(|| "-".to_string(), |x| x.to_string())
}

fn render_cells(header: &[&str], rows: &[Vec<String>], format: Format) -> String {
    let mut out = String::new();
    match format {
        Format::Tsv | Format::Json => {
            out.push_str(&header.join("\t"));
            out.push('\n');
            for r in rows {
                out.push_str(&r.join("\t"));
                out.push('\n');
            }
        }
        Format::Text => {
            let mut width: Vec<usize> = header.iter().map(|h| h.len()).collect();
            for r in rows {
                for (w, c) in width.iter_mut().zip(r) {
                    *w = (*w).max(c.len());
                }
            }
            let line = |cells: Vec<&str>| {
                let padded: Vec<String> = cells
                    .iter()
                    .zip(&width)
                    .map(|(c, w)| format!("{c:<w$}"))
                    .collect();
                padded.join("  ").trim_end().to_string() + "\n"
            };
            out.push_str(&line(header.to_vec()));
            for r in rows {
                out.push_str(&line(r.iter().map(String::as_str).collect()));
            }
        }
    }
    out
}

const SLACK_HEADER: [&str; 8] = [
    "check",
    "params",
    "lhs",
    "rhs",
    "slack",
    "equality_predicted",
    "equality_observed",
    "status",
];

pub fn slack_status(r: &SlackReport) -> &'static str {
    if r.passed() {
        "PASS"
    } else {
        "FAIL"
    }
}

fn slack_json(r: &SlackReport) -> Value {
    let params: serde_json::Map<String, Value> = r
        .params
        .iter()
        .map(|(k, v)| (k.to_string(), json!(v)))
        .collect();
    json!({
        "check": r.check,
        "params": params,
        "lhs": r.lhs.to_string(),
        "rhs": r.rhs.to_string(),
        "slack": r.slack.to_string(),
        "equality_predicted": r.equality_predicted,
        "equality_observed": r.equality_observed,
        "status": slack_status(r),
    })
}

pub fn render_slack(reports: &[SlackReport], format: Format) -> String {
    if format == Format::Json {
        let v: Vec<Value> = reports.iter().map(slack_json).collect();
        return serde_json::to_string_pretty(&v).expect("json") + "\n";
    }
    let rows: Vec<Vec<String>> = reports
        .iter()
        .map(|r| {
            vec![
                r.check.to_string(),
                r.params_string(),
                r.lhs.to_string(),
                r.rhs.to_string(),
                r.slack.to_string(),
                opt(r.equality_predicted),
                r.equality_observed.to_string(),
                slack_status(r).to_string(),
            ]
        })
        .collect();
    render_cells(&SLACK_HEADER, &rows, format)
}

const TABLE_HEADER: [&str; 9] = [
    "theorem", "params", "bound", "evidence", "value", "match", "unique", "status", "note",
];

fn evidence_name(e: Evidence) -> &'static str {
    match e {
        Evidence::Oracle => "oracle",
        Evidence::Construction => "construction",
        Evidence::None => "-",
    }
}

fn row_json(r: &TableRow) -> Value {
    let params: serde_json::Map<String, Value> = r
        .params
        .iter()
        .map(|(k, v)| (k.to_string(), json!(v)))
        .collect();
    json!({
        "theorem": r.theorem.name(),
        "params": params,
        "bound": r.bound.as_ref().map(|b| b.to_string()),
        "bound_source": r.source,
        "evidence": evidence_name(r.evidence),
        "value": r.value,
        "match": r.matched,
        "unique": r.unique,
        "status": r.status.to_string(),
        "note": r.note,
    })
}

pub fn render_table(rows: &[TableRow], format: Format) -> String {
    if format == Format::Json {
        let v: Vec<Value> = rows.iter().map(row_json).collect();
        return serde_json::to_string_pretty(&v).expect("json") + "\n";
    }
    let cells: Vec<Vec<String>> = rows
        .iter()
        .map(|r| {
            vec![
                r.theorem.to_string(),
                r.params_string(),
                opt(r.bound.as_ref()),
                evidence_name(r.evidence).to_string(),
                opt(r.value),
                opt(r.matched),
                opt(r.unique),
                r.status.to_string(),
                if r.note.is_empty() {
                    "-".into()
                } else {
                    r.note.clone()
                },
            ]
        })
        .collect();
    render_cells(&TABLE_HEADER, &cells, format)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg() -> SearchConfig {
        SearchConfig::default()
    }

    #[test]
    fn oracle_row() {
        let row = table_row(Theorem::OneT, (7, 4, 2, 2, 1), &cfg()).unwrap();
        assert_eq!(row.evidence, Evidence::Oracle);
        assert_eq!(row.value, Some(27));
        assert_eq!(row.unique, Some(true));
        assert_eq!(row.status, Status::Pass);
    }

    #[test]
    fn construction_row_outside_guardrail() {
        let row = table_row(Theorem::OneT, (9, 4, 2, 3, 1), &cfg()).unwrap();
        assert_eq!(row.evidence, Evidence::Construction);
        assert_eq!(row.status, Status::Pass);
        assert_eq!(
            row.bound.as_ref().map(|b| b.to_string()),
            row.value.map(|v| v.to_string())
        );
    }

    #[test]
    fn skipped_when_hypotheses_fail() {
        // a + 1 < b + t
        let row = table_row(Theorem::OneT, (9, 2, 2, 3, 1), &cfg()).unwrap();
        assert_eq!(row.status, Status::Skip);
    }

    #[test]
    fn intersecting_rows() {
        let ranges = TableRanges {
            n: Span::new(7, 7),
            k: Span::new(3, 3),
            s: Span::new(1, 3),
            ..TableRanges::default()
        };
        let rows = table(Theorem::Intersecting, &ranges, &cfg()).unwrap();
        let values: Vec<_> = rows.iter().map(|r| r.value).collect();
        assert_eq!(values, vec![Some(15), Some(13), Some(10)]);
        assert!(rows.iter().all(|r| r.status == Status::Pass));
    }

    #[test]
    fn renderings() {
        let rows = vec![table_row(Theorem::OneT, (7, 4, 2, 2, 1), &cfg()).unwrap()];
        let tsv = render_table(&rows, Format::Tsv);
        assert_eq!(tsv.lines().count(), 2);
        assert!(tsv
            .lines()
            .nth(1)
            .unwrap()
            .starts_with("1t\tn=7,a=4,b=2,t=2\t27\toracle\t27\ttrue\ttrue\tPASS"));
        let v: Value = serde_json::from_str(&render_table(&rows, Format::Json)).unwrap();
        assert_eq!(v[0]["status"], "PASS");
        let text = render_table(&rows, Format::Text);
        assert!(text.starts_with("theorem"));
    }

    #[test]
    fn theorem_names_roundtrip() {
        for t in Theorem::ALL {
            assert_eq!(t.name().parse::<Theorem>().unwrap(), t);
        }
    }
}
