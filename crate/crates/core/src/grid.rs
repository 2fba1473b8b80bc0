//! Parameter grids for the formula checks and sweeps over them.

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::Deserialize;

use crate::constructions::{construct_hst, construct_ht, construct_mst, construct_mt};
use crate::count::{self, BigCount, SlackReport};
use crate::error::{Error, Result};
use crate::family::CrossPair;

const DEFAULT: &str = include_str!("../grids/default.toml");

/// The grid format this build reads.
pub const GRID_VERSION: u32 = 1;

/// Inclusive integer range `[lo, hi]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Deserialize)]
#[serde(try_from = "[i64; 2]")]
pub struct Span {
    pub lo: i64,
    pub hi: i64,
}

impl TryFrom<[i64; 2]> for Span {
    type Error = String;

    fn try_from([lo, hi]: [i64; 2]) -> std::result::Result<Self, String> {
        if lo > hi {
            return Err(format!("empty range [{lo}, {hi}]"));
        }
        Ok(Span { lo, hi })
    }
}

impl Span {
    pub fn new(lo: i64, hi: i64) -> Span {
        Span { lo, hi }
    }

    pub fn iter(self) -> std::ops::RangeInclusive<i64> {
        self.lo..=self.hi
    }
}

impl FromStr for Span {
    type Err = Error;

    /// `"6"` or `"6..9"` (inclusive).
    fn from_str(s: &str) -> Result<Span> {
        let bad = || Error::InvalidParams(format!("bad range `{s}`, expected `v` or `lo..hi`"));
        let (lo, hi) = match s.split_once("..") {
            Some((lo, hi)) => (
                lo.trim().parse().map_err(|_| bad())?,
                hi.trim().parse().map_err(|_| bad())?,
            ),
            None => {
                let v = s.trim().parse().map_err(|_| bad())?;
                (v, v)
            }
        };
        Span::try_from([lo, hi]).map_err(|_| bad())
    }
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConstructionGrid {
    pub t: Span,
    pub b: Span,
    pub a_offset: Span,
    pub n_offset: Span,
    pub t_max_forms: i64,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct IdentityGrid {
    pub n: Span,
    pub p: Span,
    pub q: Span,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CnieGrid {
    pub n: Span,
    pub k: Span,
    pub i: Span,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Grid3 {
    pub n: Span,
    pub a: Span,
    pub b: Span,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Grid4 {
    pub n: Span,
    pub a: Span,
    pub b: Span,
    pub t: Span,
}

impl Grid4 {
    fn points(&self) -> Vec<(i64, i64, i64, i64)> {
        let mut out = Vec::new();
        for n in self.n.iter() {
            for a in self.a.iter() {
                for b in self.b.iter() {
                    for t in self.t.iter() {
                        out.push((n, a, b, t));
                    }
                }
            }
        }
        out
    }
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Grids {
    pub version: u32,
    pub constructions: ConstructionGrid,
    pub identity: IdentityGrid,
    pub cnie: CnieGrid,
    pub qlecnie2: Grid3,
    pub snsi: Grid4,
    pub icip1: Grid4,
    pub icile: Grid4,
}

impl Grids {
    pub fn parse(text: &str) -> Result<Grids> {
        let grids: Grids = toml::from_str(text).map_err(|e| Error::Grid(e.to_string()))?;
        if grids.version != GRID_VERSION {
            return Err(Error::Grid(format!(
                "version {} not supported (expected {GRID_VERSION})",
                grids.version
            )));
        }
        Ok(grids)
    }

    /// The grids shipped with the crate.
    pub fn shipped() -> Grids {
        Grids::parse(DEFAULT).expect("shipped grid parses")
    }

    /// `(n, a, b, t)` points of the construction grid with `t <= t_max`.
    pub fn construction_points(&self, t_max: i64) -> Vec<(i64, i64, i64, i64)> {
        let c = &self.constructions;
        let mut out = Vec::new();
        for t in c.t.lo..=t_max {
            for b in c.b.iter() {
                for da in c.a_offset.iter() {
                    let a = b + t + da;
                    if a < t.max(1) {
                        continue;
                    }
                    for dn in c.n_offset.iter() {
                        let n = a + b + dn;
                        if n >= t * b {
                            out.push((n, a, b, t));
                        }
                    }
                }
            }
        }
        out
    }
}

/// The checks a sweep can run.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Which {
    Identity,
    Cnie,
    Qlecnie2,
    Snsi,
    Icip1,
    Icile,
    /// Enumerated construction sizes against their closed forms.
    Constructions,
    /// The two closed forms of `|M^t|` against each other.
    MtForms,
}

impl Which {
    pub const ALL: [Which; 8] = [
        Which::Identity,
        Which::Cnie,
        Which::Qlecnie2,
        Which::Snsi,
        Which::Icip1,
        Which::Icile,
        Which::Constructions,
        Which::MtForms,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Which::Identity => "identity",
            Which::Cnie => "cnie",
            Which::Qlecnie2 => "qlecnie2",
            Which::Snsi => "snsi",
            Which::Icip1 => "icip1",
            Which::Icile => "icile",
            Which::Constructions => "constructions",
            Which::MtForms => "mt-forms",
        }
    }
}

impl fmt::Display for Which {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Which {
    type Err = Error;

    fn from_str(s: &str) -> Result<Which> {
        let key = s.to_ascii_lowercase().replace('_', "-");
        Which::ALL
            .into_iter()
            .find(|w| w.name() == key)
            .ok_or_else(|| Error::InvalidParams(format!("unknown check `{s}`")))
    }
}

/// Points failing a check's hypotheses are dropped; any other error aborts.
fn keep(r: Result<SlackReport>) -> Result<Option<SlackReport>> {
    match r {
        Ok(rep) => Ok(Some(rep)),
        Err(Error::InvalidParams(_)) => Ok(None),
        Err(e) => Err(e),
    }
}

fn run<P, F>(points: Vec<P>, check: F) -> Result<Vec<SlackReport>>
where
    P: Send,
    F: Fn(P) -> Result<Vec<SlackReport>> + Sync + Send,
{
    let parts: Vec<Vec<SlackReport>> = points.into_par_iter().map(check).collect::<Result<_>>()?;
    Ok(parts.into_iter().flatten().collect())
}

fn one(r: Result<SlackReport>) -> Result<Vec<SlackReport>> {
    Ok(keep(r)?.into_iter().collect())
}

fn size_report(
    check: &'static str,
    params: Vec<(&'static str, i64)>,
    pair: &CrossPair,
    formula: BigCount,
) -> SlackReport {
    SlackReport::new(
        check,
        params,
        BigCount::from(pair.total()),
        formula,
        Some(true),
    )
}

/// Enumerated `|M^t|`, `|M_s^t|`, `|H^t|`, `|H_s^t|` against the closed forms
/// at one point.
pub fn construction_checks(n: i64, a: i64, b: i64, t: i64) -> Result<Vec<SlackReport>> {
    let (nu, au, bu, tu) = (n as usize, a as usize, b as usize, t as usize);
    let p4 = vec![("n", n), ("a", a), ("b", b), ("t", t)];
    let mut out = vec![
        size_report(
            "mt",
            p4.clone(),
            &construct_mt(nu, au, bu, tu)?,
            count::size_mt(n, a, b, t)?,
        ),
        size_report(
            "ht",
            p4.clone(),
            &construct_ht(nu, au, bu, tu)?,
            count::size_ht(n, a, b, t)?,
        ),
    ];
    for s in 1..=b {
        let mut p5 = p4.clone();
        p5.push(("s", s));
        let su = s as usize;
        out.push(size_report(
            "mst",
            p5.clone(),
            &construct_mst(nu, au, bu, tu, su)?,
            count::bound_st(n, a, b, t, s)?,
        ));
        out.push(size_report(
            "hst",
            p5,
            &construct_hst(nu, au, bu, tu, su)?,
            count::size_hst(n, a, b, t, s)?,
        ));
    }
    Ok(out)
}

/// Runs one check over its grid. Output order follows the grid order.
pub fn sweep(grids: &Grids, which: Which) -> Result<Vec<SlackReport>> {
    match which {
        Which::Identity => {
            let g = &grids.identity;
            let mut pts = Vec::new();
            for n in g.n.iter() {
                for p in g.p.iter().filter(|&p| p <= n) {
                    for q in g.q.iter() {
                        pts.push((n, p, q));
                    }
                }
            }
            run(pts, |(n, p, q)| {
                one(count::check_identity_binomial(n, p, q))
            })
        }
        Which::Cnie => {
            let g = &grids.cnie;
            let mut pts = Vec::new();
            for n in g.n.iter() {
                for k in g.k.iter() {
                    for i in g.i.iter().filter(|&i| n >= k + i - 1) {
                        pts.push((n, k, i));
                    }
                }
            }
            run(pts, |(n, k, i)| one(count::check_cnie(n, k, i)))
        }
        Which::Qlecnie2 => {
            let g = &grids.qlecnie2;
            let mut pts = Vec::new();
            for n in g.n.iter() {
                for a in g.a.iter() {
                    for b in g.b.iter() {
                        pts.push((n, a, b));
                    }
                }
            }
            run(pts, |(n, a, b)| one(count::check_qlecnie2(n, a, b)))
        }
        Which::Snsi => run(grids.snsi.points(), |(n, a, b, t)| {
            one(count::check_snsi(n, a, b, t))
        }),
        Which::Icip1 => {
            let pts = grids
                .icip1
                .points()
                .into_iter()
                .filter(|&(n, a, b, _)| n >= a + b)
                .collect();
            run(pts, |(n, a, b, t)| one(count::check_icip1(n, a, b, t)))
        }
        Which::Icile => run(grids.icile.points(), |(n, a, b, t)| {
            one(count::check_icile(n, a, b, t))
        }),
        Which::Constructions => {
            let pts = grids.construction_points(grids.constructions.t.hi);
            run(pts, |(n, a, b, t)| construction_checks(n, a, b, t))
        }
        Which::MtForms => {
            let pts = grids.construction_points(grids.constructions.t_max_forms);
            run(pts, |(n, a, b, t)| {
                Ok(vec![SlackReport::new(
                    "mt-forms",
                    vec![("n", n), ("a", a), ("b", b), ("t", t)],
                    count::size_mt_partition(n, a, b, t),
                    count::size_mt_alternating(n, a, b, t),
                    Some(true),
                )])
            })
        }
    }
}
