//! Largest intersecting `k`-uniform family with `τ >= s` on a fixed `[n]`.

use std::sync::atomic::{AtomicUsize, Ordering};
use std::time::Instant;

use rayon::prelude::*;

use super::{finish, Bound, Query, SearchConfig, SearchReport};
use crate::constructions::{frankl_g, hilton_milner, star, triangle, Realized};
use crate::count::{self, binomial, BigCount};
use crate::error::{Error, Result};
use crate::family::{k_subsets, Family, SetWord};

/// The closed form and extremal families for `m(n,k,s)`, when known.
pub fn intersecting_bound(n: usize, k: usize, s: usize) -> Result<Bound> {
    let (ni, ki) = (n as i64, k as i64);
    let mut bound = Bound::default();
    match s {
        1 if n >= 2 * k && k >= 2 => {
            bound.value = Some(count::m1(ni, ki));
            bound.source = Some("C(n-1,k-1)");
            bound.extremal = vec![Realized::Single(star(n, k, 1)?)];
            bound.uniqueness_claimed = n > 2 * k;
        }
        2 if n > 2 * k && k >= 2 => {
            bound.value = Some(count::m2(ni, ki));
            bound.source = Some("C(n-1,k-1) - C(n-k-1,k-1) + 1");
            bound.extremal = vec![Realized::Single(hilton_milner(n, k)?)];
            if k == 3 {
                bound.extremal.push(Realized::Single(triangle(n, k)?));
            }
            bound.uniqueness_claimed = true;
        }
        3 if k == 3 && n > 2 * k => {
            bound.value = Some(count::erdos_lovasz(3).0);
            bound.source = Some("floor(k!(e-1)) at k = 3");
        }
        3 if n >= 2 * k && k >= 7 => {
            bound.value = Some(count::bound_cover3(ni, ki));
            bound.source = Some("|G(n,k)|");
            bound.extremal = vec![Realized::Single(frankl_g(n, k)?)];
            bound.uniqueness_claimed = n > 2 * k;
        }
        _ => {}
    }
    Ok(bound)
}

struct Sets {
    list: Vec<SetWord>,
    /// Per set: the sets meeting it.
    compat: Vec<u64>,
    /// Per `T` with `|T| = s-1`: the sets meeting `T`.
    lower: Vec<u64>,
    s: usize,
}

impl Sets {
    fn tau_ok(&self, fam: u64) -> bool {
        self.s == 0 || self.lower.iter().all(|m| fam & !m != 0)
    }
}

struct Walker<'a> {
    sets: &'a Sets,
    best: &'a AtomicUsize,
    hits: Vec<u64>,
    top: usize,
    nodes: u64,
}

impl Walker<'_> {
    fn below(&self, bound: usize) -> bool {
        bound < self.best.load(Ordering::Relaxed)
    }

    fn visit(&mut self, chosen: u64, cand: u64) {
        self.nodes += 1;
        let size = chosen.count_ones() as usize;
        // every extension stays inside chosen ∪ cand, and τ is monotone
        if self.below(size + cand.count_ones() as usize) || !self.sets.tau_ok(chosen | cand) {
            return;
        }
        if self.sets.tau_ok(chosen) && !self.below(size) {
            self.best.fetch_max(size, Ordering::Relaxed);
            if size > self.top {
                self.top = size;
                self.hits.clear();
            }
            if size == self.top {
                self.hits.push(chosen);
            }
        }
        let mut rest = cand;
        while rest != 0 {
            let j = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            let above = if j == 63 { 0 } else { !0u64 << (j + 1) };
            self.visit(chosen | 1 << j, cand & self.sets.compat[j] & above);
        }
    }
}

/// `m(n,k,s)` at this `n` by exhaustive search. Families are anchored at
/// `[1,k]`, which any nonempty family contains after relabeling.
pub fn max_intersecting_with_tau(
    n: usize,
    k: usize,
    s: usize,
    cfg: &SearchConfig,
) -> Result<SearchReport> {
    if n == 0 || n > crate::family::MAX_N {
        return Err(Error::GroundSetSize(n));
    }
    if k < 1 || k > n {
        return Err(Error::InvalidParams(format!(
            "need 1 <= k <= n, got n={n}, k={k}"
        )));
    }
    let total = binomial(n as i64, k as i64);
    let limit = if cfg.force {
        64
    } else {
        cfg.max_intersecting_sets
    };
    if total > BigCount::from(limit) {
        return Err(Error::TooLarge(format!(
            "C({n},{k}) = {total} exceeds the limit of {limit} sets"
        )));
    }
    let started = Instant::now();
    let bound = intersecting_bound(n, k, s)?;
    let list: Vec<SetWord> = k_subsets(n, k).collect();
    let compat = list
        .iter()
        .map(|x| {
            list.iter()
                .enumerate()
                .filter(|(_, y)| x.meets(**y))
                .fold(0u64, |acc, (j, _)| acc | 1 << j)
        })
        .collect();
    let lower = if s >= 1 && s - 1 <= n {
        k_subsets(n, s - 1)
            .map(|t| {
                list.iter()
                    .enumerate()
                    .filter(|(_, y)| y.meets(t))
                    .fold(0u64, |acc, (j, _)| acc | 1 << j)
            })
            .collect()
    } else {
        Vec::new()
    };
    let sets = Sets {
        list,
        compat,
        lower,
        s,
    };
    let nsets = sets.list.len();
    let best = AtomicUsize::new(0);
    let root_cand = sets.compat[0] & !1u64;
    let run = || -> Vec<(Vec<u64>, usize, u64)> {
        (0..nsets.max(1))
            .into_par_iter()
            .map(|j| {
                let mut w = Walker {
                    sets: &sets,
                    best: &best,
                    hits: Vec::new(),
                    top: 0,
                    nodes: 0,
                };
                if j == 0 {
                    // the anchor alone, then each branch below handles one second member
                    w.nodes += 1;
                    if sets.tau_ok(1) {
                        w.best.fetch_max(1, Ordering::Relaxed);
                        w.top = 1;
                        w.hits.push(1);
                    }
                } else if root_cand >> j & 1 == 1 {
                    let above = if j == 63 { 0 } else { !0u64 << (j + 1) };
                    w.visit(1 | 1 << j, root_cand & sets.compat[j] & above);
                }
                (w.hits, w.top, w.nodes)
            })
            .collect()
    };
    let parts = cfg.install(run)?;
    let nodes = parts.iter().map(|p| p.2).sum();
    let top = parts.iter().filter(|p| !p.0.is_empty()).map(|p| p.1).max();
    let mut optimum = top;
    let mut masks: Vec<u64> = parts
        .into_iter()
        .filter(|p| Some(p.1) == top)
        .flat_map(|p| p.0)
        .collect();
    if s == 0 && optimum.is_none() {
        optimum = Some(0);
        masks.push(0);
    }
    let optima = masks
        .into_iter()
        .map(|m| {
            let members = (0..nsets).filter(|j| m >> j & 1 == 1).map(|j| sets.list[j]);
            Family::uniform(n, k, members).map(Realized::Single)
        })
        .collect::<Result<Vec<_>>>()?;
    cfg.install(|| {
        finish(
            Query::Intersecting { n, k, s },
            optimum,
            optima,
            bound,
            nodes,
            started,
            cfg,
        )
    })?
}
