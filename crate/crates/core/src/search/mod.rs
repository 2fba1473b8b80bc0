//! Exhaustive maximization of `|F| + |G|` over cross-intersecting pairs under
//! covering-number constraints, with isomorphism classes of the optima.

mod canon;
mod intersecting;
mod kernel;
mod maximal;

use std::fmt;
use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde_json::{json, Value};

pub use canon::{
    canonical_form, canonical_form_family, canonical_form_realized, CanonicalForm, CANON_MAX_N,
};
pub use intersecting::{intersecting_bound, max_intersecting_with_tau};
pub use maximal::{enumerate_maximal_pairs, enumerate_maximal_pairs_with};

use crate::constructions::{construct_hst, construct_ht, construct_mst, construct_mt, Realized};
use crate::count::{self, BigCount};
use crate::error::{Error, Result};
use crate::family::{CrossPair, Family};
use crate::shifting::for_each_initial_family;
use crate::transversal::tau;
use kernel::{FRule, Problem, Space, TauRange};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum TauConstraint {
    AtLeast(usize),
    Exactly(usize),
}

impl TauConstraint {
    pub fn value(self) -> usize {
        match self {
            TauConstraint::AtLeast(v) | TauConstraint::Exactly(v) => v,
        }
    }

    pub fn admits(self, tau: usize) -> bool {
        match self {
            TauConstraint::AtLeast(v) => tau >= v,
            TauConstraint::Exactly(v) => tau == v,
        }
    }

    fn range(self) -> TauRange {
        match self {
            TauConstraint::AtLeast(v) => TauRange { lo: v, hi: None },
            TauConstraint::Exactly(v) => TauRange { lo: v, hi: Some(v) },
        }
    }
}

impl fmt::Display for TauConstraint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TauConstraint::AtLeast(v) => write!(f, ">={v}"),
            TauConstraint::Exactly(v) => write!(f, "={v}"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct ConstraintSpec {
    pub f: TauConstraint,
    pub g: TauConstraint,
    pub initial_only: bool,
}

impl ConstraintSpec {
    pub fn at_least(s: usize, t: usize) -> Self {
        ConstraintSpec {
            f: TauConstraint::AtLeast(s),
            g: TauConstraint::AtLeast(t),
            initial_only: false,
        }
    }

    pub fn exact_f(s: usize, t: usize) -> Self {
        ConstraintSpec {
            f: TauConstraint::Exactly(s),
            g: TauConstraint::AtLeast(t),
            initial_only: false,
        }
    }

    pub fn initial(self) -> Self {
        ConstraintSpec {
            initial_only: true,
            ..self
        }
    }
}

impl fmt::Display for ConstraintSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "tau(F){} tau(G){}", self.f, self.g)?;
        if self.initial_only {
            f.write_str(" initial")?;
        }
        Ok(())
    }
}

/// Guardrails and execution knobs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchConfig {
    /// Largest `C(n,b)` searched without `force`.
    pub max_b_sets: usize,
    /// Largest `n` for initial-only search without `force`.
    pub max_initial_n: usize,
    /// Largest `C(n,k)` for the intersecting-family search without `force`.
    pub max_intersecting_sets: usize,
    pub witness_cap: usize,
    pub force: bool,
    /// Worker threads; `None` uses the global pool.
    pub threads: Option<usize>,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig {
            max_b_sets: 26,
            max_initial_n: 12,
            max_intersecting_sets: 40,
            witness_cap: 64,
            force: false,
            threads: None,
        }
    }
}

impl SearchConfig {
    pub(crate) fn install<R: Send>(&self, op: impl FnOnce() -> R + Send) -> Result<R> {
        match self.threads {
            None => Ok(op()),
            Some(k) => {
                let pool = rayon::ThreadPoolBuilder::new()
                    .num_threads(k.max(1))
                    .build()
                    .map_err(|e| Error::InvalidParams(format!("thread pool: {e}")))?;
                Ok(pool.install(op))
            }
        }
    }
}

/// What the search was asked.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Query {
    CrossSum {
        n: usize,
        a: usize,
        b: usize,
        spec: ConstraintSpec,
    },
    Intersecting {
        n: usize,
        k: usize,
        s: usize,
    },
}

/// The applicable closed-form bound and extremal construction, if any.
#[derive(Clone, Debug, Default)]
pub struct Bound {
    pub value: Option<BigCount>,
    pub source: Option<&'static str>,
    /// Constructions claimed to be the only optima, up to isomorphism.
    pub extremal: Vec<Realized>,
    pub uniqueness_claimed: bool,
}

#[derive(Clone, Debug)]
pub struct SearchReport {
    pub query: Query,
    /// `None` when no family satisfies the constraints.
    pub optimum: Option<usize>,
    pub bound: Bound,
    pub bound_matched: Option<bool>,
    /// One representative per isomorphism class, in canonical order, capped.
    pub witnesses: Vec<Realized>,
    pub iso_class_count: Option<usize>,
    pub iso_matches_construction: Option<bool>,
    pub nodes: u64,
    pub elapsed: Duration,
}

fn realized_text(r: &Realized) -> Value {
    match r {
        Realized::Single(f) => json!({ "F": f.to_text() }),
        Realized::Pair(p) => json!({ "F": p.f().to_text(), "G": p.g().to_text() }),
    }
}

fn big_json(v: &BigCount) -> Value {
    match u64::try_from(v) {
        Ok(x) => json!(x),
        Err(_) => json!(v.to_string()),
    }
}

impl SearchReport {
    /// Everything except `nodes` and `elapsed_ms`; byte-stable across runs
    /// and thread counts.
    pub fn stable_json(&self) -> Value {
        let (params, constraints) = match &self.query {
            Query::CrossSum { n, a, b, spec } => (
                json!({ "n": n, "a": a, "b": b }),
                json!({
                    "F": spec.f.to_string(),
                    "G": spec.g.to_string(),
                    "initial_only": spec.initial_only,
                }),
            ),
            Query::Intersecting { n, k, s } => (
                json!({ "n": n, "k": k }),
                json!({ "F": TauConstraint::AtLeast(*s).to_string(), "intersecting": true }),
            ),
        };
        json!({
            "params": params,
            "constraints": constraints,
            "optimum": self.optimum,
            "bound": self.bound.value.as_ref().map(big_json),
            "bound_source": self.bound.source,
            "bound_matched": self.bound_matched,
            "iso_class_count": self.iso_class_count,
            "iso_matches_construction": self.iso_matches_construction,
            "witnesses": self.witnesses.iter().map(realized_text).collect::<Vec<_>>(),
        })
    }

    pub fn to_json(&self) -> Value {
        let mut v = self.stable_json();
        v["nodes"] = json!(self.nodes);
        v["elapsed_ms"] = json!(self.elapsed.as_millis() as u64);
        v
    }
}

fn check_params(n: usize, a: usize, b: usize) -> Result<()> {
    if n == 0 || n > crate::family::MAX_N {
        return Err(Error::GroundSetSize(n));
    }
    if a < 1 || b < 1 || a > n || b > n {
        return Err(Error::InvalidParams(format!(
            "need 1 <= a, b <= n, got n={n}, a={a}, b={b}"
        )));
    }
    Ok(())
}

fn check_consistent(n: usize, a: usize, b: usize, spec: &ConstraintSpec) -> Result<()> {
    let s = spec.f.value();
    let t = spec.g.value();
    let why = if s >= 1 && t >= 1 && s > b {
        Some(format!(
            "tau(F) >= {s} but every member of a nonempty G is a {b}-set cover of F"
        ))
    } else if s >= 1 && t >= 1 && t > a {
        Some(format!(
            "tau(G) >= {t} but every member of a nonempty F is an {a}-set cover of G"
        ))
    } else if s > n - a + 1 {
        Some(format!(
            "an {a}-uniform family on {n} points has tau <= {}",
            n - a + 1
        ))
    } else if t > n - b + 1 {
        Some(format!(
            "a {b}-uniform family on {n} points has tau <= {}",
            n - b + 1
        ))
    } else {
        None
    };
    match why {
        Some(msg) => Err(Error::Contradictory(msg)),
        None => Ok(()),
    }
}

/// The closed form the theorems attach to these constraints, when the
/// hypotheses hold. Initial-only bounds also require `τ(G) >= t`.
pub fn applicable_bound(n: usize, a: usize, b: usize, spec: &ConstraintSpec) -> Result<Bound> {
    use TauConstraint::{AtLeast, Exactly};
    let (ni, ai, bi) = (n as i64, a as i64, b as i64);
    let t = spec.g.value();
    let ti = t as i64;
    let base = a + 1 >= b + t && n >= a + b;
    let unique = n > a + b;
    let mut bound = Bound::default();
    if !spec.initial_only {
        let wide = base && n >= b * t;
        match spec.f {
            AtLeast(s) if s >= 1 && t >= 1 => {
                let ok = if s == 1 {
                    (wide && b >= 2) || (t == 2 && a > b && n >= a + b)
                } else {
                    wide && b >= 2 && t >= 2 && s <= b
                };
                if ok {
                    bound.value = Some(count::bound_1t(ni, ai, bi, ti)?);
                    bound.source = Some("|M^t(n,a,b)|");
                    bound.extremal = vec![Realized::Pair(construct_mt(n, a, b, t)?)];
                    bound.uniqueness_claimed = unique && !(a == 2 && b == 2);
                }
            }
            Exactly(s) if s >= 1 && t >= 2 && wide && b >= 2 && s <= b && s + (t - 1) * b <= n => {
                bound.value = Some(count::bound_st(ni, ai, bi, ti, s as i64)?);
                bound.source = Some("|M_s^t(n,a,b)|");
                bound.extremal = vec![Realized::Pair(construct_mst(n, a, b, t, s)?)];
                bound.uniqueness_claimed = unique;
            }
            _ => {}
        }
        return Ok(bound);
    }
    match spec.f {
        AtLeast(s) if s >= 1 && t >= 1 && base && s <= b && (s == 1 || (b >= 2 && t >= 2)) => {
            bound.value = Some(count::size_ht(ni, ai, bi, ti)?);
            bound.source = Some("|H^t(n,a,b)|");
            bound.extremal = vec![Realized::Pair(construct_ht(n, a, b, t)?)];
            bound.uniqueness_claimed = unique;
        }
        Exactly(s) if s >= 1 && t >= 2 && base && s <= b && (s == 1 || b >= 2) => {
            bound.value = Some(count::size_hst(ni, ai, bi, ti, s as i64)?);
            bound.source = Some("|H_s^t(n,a,b)|");
            bound.extremal = vec![Realized::Pair(construct_hst(n, a, b, t, s)?)];
            bound.uniqueness_claimed = unique;
        }
        _ => {}
    }
    Ok(bound)
}

/// Sorts optima into isomorphism classes and fills the report.
pub(crate) fn finish(
    query: Query,
    optimum: Option<usize>,
    optima: Vec<Realized>,
    bound: Bound,
    nodes: u64,
    started: Instant,
    cfg: &SearchConfig,
) -> Result<SearchReport> {
    let n = match &query {
        Query::CrossSum { n, .. } | Query::Intersecting { n, .. } => *n,
    };
    let (witnesses, iso_class_count, classes) = if n <= CANON_MAX_N {
        let mut keyed: Vec<(CanonicalForm, Realized)> = optima
            .into_par_iter()
            .map(|r| canonical_form_realized(&r).map(|c| (c, r)))
            .collect::<Result<_>>()?;
        keyed.sort_by(|x, y| {
            x.0.cmp(&y.0)
                .then_with(|| realized_key(&x.1).cmp(&realized_key(&y.1)))
        });
        keyed.dedup_by(|x, y| x.0 == y.0);
        let count = keyed.len();
        let classes: Vec<CanonicalForm> = keyed.iter().map(|(c, _)| c.clone()).collect();
        let witnesses = keyed
            .into_iter()
            .take(cfg.witness_cap)
            .map(|(_, r)| r)
            .collect();
        (witnesses, Some(count), Some(classes))
    } else {
        let mut optima = optima;
        optima.sort_by_key(realized_key);
        optima.truncate(cfg.witness_cap);
        (optima, None, None)
    };
    let bound_matched = match (&bound.value, optimum) {
        (Some(v), Some(opt)) => Some(*v == BigCount::from(opt)),
        (Some(_), None) => Some(false),
        _ => None,
    };
    let iso_matches_construction = match classes {
        Some(classes) if bound.uniqueness_claimed && !bound.extremal.is_empty() => {
            let mut expected = bound
                .extremal
                .iter()
                .map(canonical_form_realized)
                .collect::<Result<Vec<_>>>()?;
            expected.sort();
            expected.dedup();
            Some(classes == expected)
        }
        _ => None,
    };
    Ok(SearchReport {
        query,
        optimum,
        bound,
        bound_matched,
        witnesses,
        iso_class_count,
        iso_matches_construction,
        nodes,
        elapsed: started.elapsed(),
    })
}

fn realized_key(r: &Realized) -> (Vec<u64>, Vec<u64>) {
    let bits = |f: &Family| f.iter().map(|m| m.bits()).collect::<Vec<_>>();
    match r {
        Realized::Single(f) => (bits(f), Vec::new()),
        Realized::Pair(p) => (bits(p.g()), bits(p.f())),
    }
}

pub fn max_cross_sum(n: usize, a: usize, b: usize, spec: ConstraintSpec) -> Result<SearchReport> {
    max_cross_sum_with(n, a, b, spec, &SearchConfig::default())
}

pub fn max_cross_sum_with(
    n: usize,
    a: usize,
    b: usize,
    spec: ConstraintSpec,
    cfg: &SearchConfig,
) -> Result<SearchReport> {
    check_params(n, a, b)?;
    check_consistent(n, a, b, &spec)?;
    let started = Instant::now();
    let bound = applicable_bound(n, a, b, &spec)?;
    let query = Query::CrossSum { n, a, b, spec };
    let (optimum, optima, nodes) = if spec.initial_only {
        if n > cfg.max_initial_n && !cfg.force {
            return Err(Error::TooLarge(format!(
                "initial-only search needs n <= {}, got n={n}",
                cfg.max_initial_n
            )));
        }
        cfg.install(|| initial_search(n, a, b, &spec))??
    } else {
        let nb = count::binomial(n as i64, b as i64);
        let limit = if cfg.force { 64 } else { cfg.max_b_sets };
        if nb > BigCount::from(limit) {
            return Err(Error::TooLarge(format!(
                "C({n},{b}) = {nb} exceeds the limit of {limit} b-sets"
            )));
        }
        cfg.install(|| full_search(n, a, b, &spec))??
    };
    cfg.install(|| finish(query, optimum, optima, bound, nodes, started, cfg))?
}

type Found = (Option<usize>, Vec<Realized>, u64);

fn full_search(n: usize, a: usize, b: usize, spec: &ConstraintSpec) -> Result<Found> {
    let space = Space::new(n, a, b);
    let g_tau = spec.g.range();
    let g_lower = if g_tau.lo >= 1 {
        space.b_hit_masks(g_tau.lo - 1)
    } else {
        Vec::new()
    };
    let g_upper = g_tau.hi.map(|hi| space.b_hit_masks(hi));
    let f_rule = match spec.f {
        TauConstraint::AtLeast(s) => FRule::Whole {
            lower: if s >= 1 {
                space.a_hit_masks(s - 1)
            } else {
                Vec::new()
            },
        },
        TauConstraint::Exactly(0) => FRule::Empty,
        TauConstraint::Exactly(s) => FRule::Slices {
            lower: space.a_hit_masks(s - 1),
            slices: space.a_hit_masks(s),
        },
    };
    let problem = Problem {
        space: &space,
        g_tau,
        g_lower,
        g_upper,
        f_rule,
    };
    let outcome = kernel::run_anchored(&problem, g_tau.lo == 0);
    let optimum = outcome.best();
    let optima = outcome
        .hits
        .iter()
        .map(|h| {
            let f = Family::uniform(n, a, space.a_family(&h.f))?;
            let g = Family::uniform(n, b, space.b_family(h.g))?;
            Ok(Realized::Pair(CrossPair::new(f, g)?))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok((optimum, optima, outcome.nodes))
}

/// Initial `G` are enumerated as down-sets of the shifting order. For such
/// `G`, `D_a(G)` is initial, and an initial `F` with `τ(F) <= s` is covered by
/// `[1,s]`, so `τ(F) = s` leaves the single candidate `D ∩ {A : A ∩ [1,s] ≠ ∅}`.
fn initial_search(n: usize, a: usize, b: usize, spec: &ConstraintSpec) -> Result<Found> {
    let head = |s: usize| crate::family::SetWord::prefix(s);
    let mut best: Option<usize> = None;
    let mut optima: Vec<Realized> = Vec::new();
    let mut nodes = 0u64;
    let mut failure = None;
    for_each_initial_family(n, b, |members| {
        if failure.is_some() {
            return;
        }
        nodes += 1;
        let step = || -> Result<Option<CrossPair>> {
            let g = Family::uniform(n, b, members.iter().copied())?;
            if !spec.g.admits(tau(&g)?) {
                return Ok(None);
            }
            let d = crate::family::max_companion(&g, a)?;
            let f = match spec.f {
                TauConstraint::AtLeast(s) => {
                    if tau(&d)? < s {
                        return Ok(None);
                    }
                    d
                }
                TauConstraint::Exactly(0) => Family::empty(n, Some(a))?,
                TauConstraint::Exactly(s) => {
                    let slice = d.filter(|m| m.meets(head(s)));
                    if tau(&slice)? != s {
                        return Ok(None);
                    }
                    slice
                }
            };
            debug_assert!(crate::shifting::is_initial(&f));
            Ok(Some(CrossPair::new(f, g)?))
        };
        match step() {
            Err(e) => failure = Some(e),
            Ok(None) => {}
            Ok(Some(pair)) => {
                let value = pair.total();
                if best.is_none_or(|v| value > v) {
                    best = Some(value);
                    optima.clear();
                }
                if best == Some(value) {
                    optima.push(Realized::Pair(pair));
                }
            }
        }
    });
    if let Some(e) = failure {
        return Err(e);
    }
    Ok((best, optima, nodes))
}
