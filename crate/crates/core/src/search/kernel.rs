//! Index-space DFS over `G ⊆ C([n], b)` with `F` derived from `D_a(G)`.
//!
//! Families of `b`-sets are `u64` masks over the `b`-set list; families of
//! `a`-sets are bitsets of `words` limbs over the `a`-set list.

use std::sync::atomic::{AtomicUsize, Ordering};

use rayon::prelude::*;

use crate::family::{k_subsets, SetWord};

pub(crate) fn popcount(x: &[u64]) -> usize {
    x.iter().map(|w| w.count_ones() as usize).sum()
}

/// True when `x` is not contained in any of the `masks` (each `words` limbs).
/// With masks listing "meets `T`" for every `|T| = s-1`, this is `τ(x) >= s`.
pub(crate) fn escapes_all(x: &[u64], masks: &[u64], words: usize) -> bool {
    masks
        .chunks_exact(words)
        .all(|m| x.iter().zip(m).any(|(a, b)| a & !b != 0))
}

fn escapes_all_single(x: u64, masks: &[u64]) -> bool {
    masks.iter().all(|m| x & !m != 0)
}

/// Constraint on one side, as an inclusive range of allowed `τ`.
#[derive(Clone, Copy, Debug)]
pub(crate) struct TauRange {
    pub lo: usize,
    pub hi: Option<usize>,
}

pub(crate) struct Space {
    pub n: usize,
    pub a_sets: Vec<SetWord>,
    pub b_sets: Vec<SetWord>,
    pub words: usize,
    /// Per `b`-set: the `a`-sets meeting it.
    pub meets: Vec<u64>,
    pub full: Vec<u64>,
}

impl Space {
    pub fn new(n: usize, a: usize, b: usize) -> Space {
        let a_sets: Vec<SetWord> = k_subsets(n, a).collect();
        let b_sets: Vec<SetWord> = k_subsets(n, b).collect();
        let words = a_sets.len().div_ceil(64).max(1);
        let mut meets = vec![0u64; b_sets.len() * words];
        for (j, &bs) in b_sets.iter().enumerate() {
            let row = &mut meets[j * words..(j + 1) * words];
            for (i, &a_set) in a_sets.iter().enumerate() {
                if a_set.meets(bs) {
                    row[i / 64] |= 1 << (i % 64);
                }
            }
        }
        let mut full = vec![0u64; words];
        for i in 0..a_sets.len() {
            full[i / 64] |= 1 << (i % 64);
        }
        Space {
            n,
            a_sets,
            b_sets,
            words,
            meets,
            full,
        }
    }

    pub fn meets_row(&self, j: usize) -> &[u64] {
        &self.meets[j * self.words..(j + 1) * self.words]
    }

    /// For every `T` with `|T| = size`, the `a`-sets meeting `T`.
    pub fn a_hit_masks(&self, size: usize) -> Vec<u64> {
        let mut out = Vec::new();
        if size > self.n {
            return out;
        }
        for t in k_subsets(self.n, size) {
            let start = out.len();
            out.resize(start + self.words, 0);
            for (i, &a_set) in self.a_sets.iter().enumerate() {
                if a_set.meets(t) {
                    out[start + i / 64] |= 1 << (i % 64);
                }
            }
        }
        out
    }

    /// For every `T` with `|T| = size`, the `b`-sets meeting `T`.
    pub fn b_hit_masks(&self, size: usize) -> Vec<u64> {
        if size > self.n {
            return Vec::new();
        }
        k_subsets(self.n, size)
            .map(|t| {
                self.b_sets
                    .iter()
                    .enumerate()
                    .filter(|(_, s)| s.meets(t))
                    .fold(0u64, |acc, (j, _)| acc | 1 << j)
            })
            .collect()
    }

    pub fn a_family(&self, bits: &[u64]) -> Vec<SetWord> {
        (0..self.a_sets.len())
            .filter(|&i| bits[i / 64] >> (i % 64) & 1 == 1)
            .map(|i| self.a_sets[i])
            .collect()
    }

    pub fn b_family(&self, mask: u64) -> Vec<SetWord> {
        (0..self.b_sets.len())
            .filter(|&j| mask >> j & 1 == 1)
            .map(|j| self.b_sets[j])
            .collect()
    }
}

/// How `F` is chosen once `D = D_a(G)` is known.
pub(crate) enum FRule {
    /// `F = D`, feasible iff `τ(D) >= s`.
    Whole { lower: Vec<u64> },
    /// `F = ∅`.
    Empty,
    /// `τ(F) = s`: the best `F` is a slice `D ∩ {A : A ∩ T ≠ ∅}`, `|T| = s`,
    /// whose covering number is still `s`.
    Slices { lower: Vec<u64>, slices: Vec<u64> },
}

pub(crate) struct Problem<'a> {
    pub space: &'a Space,
    pub g_tau: TauRange,
    pub g_lower: Vec<u64>,
    pub g_upper: Option<Vec<u64>>,
    pub f_rule: FRule,
}

impl Problem<'_> {
    fn g_ok(&self, g: u64) -> bool {
        if self.g_tau.lo > 0 && !escapes_all_single(g, &self.g_lower) {
            return false;
        }
        match &self.g_upper {
            Some(upper) => !escapes_all_single(g, upper),
            None => true,
        }
    }

    /// `G` can still be extended: its `τ` has not passed the allowed maximum.
    fn g_extendable(&self, g: u64) -> bool {
        match &self.g_upper {
            Some(upper) => !escapes_all_single(g, upper),
            None => true,
        }
    }

    /// `τ(D) >= s` is necessary for every descendant, since `D` only shrinks.
    fn d_viable(&self, d: &[u64]) -> bool {
        match &self.f_rule {
            FRule::Empty => true,
            FRule::Whole { lower } | FRule::Slices { lower, .. } => {
                lower.is_empty() || escapes_all(d, lower, self.space.words)
            }
        }
    }

    /// Best `F` sizes for this `G`, with every optimal `F`.
    fn best_f(&self, d: &[u64], out: &mut Vec<Vec<u64>>) -> Option<usize> {
        out.clear();
        let words = self.space.words;
        match &self.f_rule {
            FRule::Empty => {
                out.push(vec![0; words]);
                Some(0)
            }
            FRule::Whole { lower } => {
                if !lower.is_empty() && !escapes_all(d, lower, words) {
                    return None;
                }
                out.push(d.to_vec());
                Some(popcount(d))
            }
            FRule::Slices { lower, slices } => {
                let mut best = None;
                let mut x = vec![0u64; words];
                for m in slices.chunks_exact(words) {
                    for ((xi, di), mi) in x.iter_mut().zip(d).zip(m) {
                        *xi = di & mi;
                    }
                    let size = popcount(&x);
                    if best.is_some_and(|b| size < b) {
                        continue;
                    }
                    if !lower.is_empty() && !escapes_all(&x, lower, words) {
                        continue;
                    }
                    if best.is_none_or(|b| size > b) {
                        out.clear();
                        best = Some(size);
                    }
                    if !out.contains(&x) {
                        out.push(x.clone());
                    }
                }
                best
            }
        }
    }
}

/// An optimal `(G, F)` in index form.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub(crate) struct Hit {
    pub value: usize,
    pub g: u64,
    pub f: Vec<u64>,
}

#[derive(Default)]
pub(crate) struct Outcome {
    pub hits: Vec<Hit>,
    pub nodes: u64,
}

impl Outcome {
    fn absorb(&mut self, other: Outcome) {
        self.nodes += other.nodes;
        let best = self.best().max(other.best());
        self.hits.retain(|h| Some(h.value) == best);
        self.hits
            .extend(other.hits.into_iter().filter(|h| Some(h.value) == best));
    }

    pub fn best(&self) -> Option<usize> {
        self.hits.iter().map(|h| h.value).max()
    }
}

struct Worker<'p, 'a> {
    problem: &'p Problem<'a>,
    best: &'p AtomicUsize,
    stack: Vec<u64>,
    scratch: Vec<Vec<u64>>,
    out: Outcome,
}

/// `usize::MAX` stands for "nothing feasible yet".
const NONE: usize = usize::MAX;

fn load_best(best: &AtomicUsize) -> Option<usize> {
    match best.load(Ordering::Relaxed) {
        NONE => None,
        v => Some(v),
    }
}

fn raise_best(best: &AtomicUsize, value: usize) {
    let mut cur = best.load(Ordering::Relaxed);
    while cur == NONE || cur < value {
        match best.compare_exchange_weak(cur, value, Ordering::Relaxed, Ordering::Relaxed) {
            Ok(_) => return,
            Err(seen) => cur = seen,
        }
    }
}

impl<'p, 'a> Worker<'p, 'a> {
    fn new(problem: &'p Problem<'a>, best: &'p AtomicUsize) -> Self {
        let words = problem.space.words;
        let depth = problem.space.b_sets.len() + 2;
        Worker {
            problem,
            best,
            stack: vec![0; words * depth],
            scratch: Vec::new(),
            out: Outcome::default(),
        }
    }

    fn below_best(&self, bound: usize) -> bool {
        load_best(self.best).is_some_and(|b| bound < b)
    }

    fn evaluate(&mut self, g: u64, size_g: usize, depth: usize) {
        let words = self.problem.space.words;
        let d = &self.stack[depth * words..(depth + 1) * words];
        if self.below_best(size_g + popcount(d)) || !self.problem.g_ok(g) {
            return;
        }
        let mut found = std::mem::take(&mut self.scratch);
        if let Some(fsize) = self.problem.best_f(d, &mut found) {
            let value = size_g + fsize;
            if !self.below_best(value) {
                raise_best(self.best, value);
                let floor = self.out.best().unwrap_or(0);
                if value > floor {
                    self.out.hits.clear();
                }
                if value >= floor {
                    for f in found.drain(..) {
                        self.out.hits.push(Hit { value, g, f });
                    }
                }
            }
        }
        self.scratch = found;
    }

    /// Writes `D ∩ meets(j)` one level down; false when the child is pruned.
    fn child(&mut self, g: u64, size_g: usize, j: usize, depth: usize) -> bool {
        let space = self.problem.space;
        let words = space.words;
        let (head, tail) = self.stack.split_at_mut((depth + 1) * words);
        let d = &head[depth * words..];
        let nd = &mut tail[..words];
        for ((x, y), z) in nd.iter_mut().zip(d).zip(space.meets_row(j)) {
            *x = y & z;
        }
        let remaining = space.b_sets.len() - j - 1;
        let optimistic = size_g + 1 + remaining + popcount(nd);
        if self.below_best(optimistic) {
            return false;
        }
        let nd = &self.stack[(depth + 1) * words..(depth + 2) * words];
        self.problem.d_viable(nd) && self.problem.g_extendable(g | 1 << j)
    }

    fn dfs(&mut self, g: u64, size_g: usize, next: usize, depth: usize) {
        self.out.nodes += 1;
        self.evaluate(g, size_g, depth);
        for j in next..self.problem.space.b_sets.len() {
            if self.child(g, size_g, j, depth) {
                self.dfs(g | 1 << j, size_g + 1, j + 1, depth + 1);
            }
        }
    }

    fn set_root(&mut self, d: &[u64]) {
        let words = self.problem.space.words;
        self.stack[..words].copy_from_slice(d);
    }
}

/// Every optimal `(G, F)` where `G` is empty or contains `b`-set 0.
///
/// The anchor is harmless for isomorphism classes: any nonempty `G` can be
/// relabeled so that one of its members is `[1, b]`.
pub(crate) fn run_anchored(problem: &Problem<'_>, allow_empty_g: bool) -> Outcome {
    let best = AtomicUsize::new(NONE);
    let space = problem.space;
    let mut total = Outcome::default();
    if allow_empty_g {
        let mut w = Worker::new(problem, &best);
        w.set_root(&space.full);
        w.out.nodes += 1;
        w.evaluate(0, 0, 0);
        total.absorb(w.out);
    }
    let nb = space.b_sets.len();
    if nb == 0 || !problem.g_extendable(1) {
        return total;
    }
    let root_d: Vec<u64> = space.meets_row(0).to_vec();
    if !problem.d_viable(&root_d) {
        return total;
    }
    let mut w = Worker::new(problem, &best);
    w.set_root(&root_d);
    w.out.nodes += 1;
    w.evaluate(1, 1, 0);
    total.absorb(w.out);
    let parts: Vec<Outcome> = (1..nb)
        .into_par_iter()
        .map(|j| {
            let mut w = Worker::new(problem, &best);
            w.set_root(&root_d);
            if w.child(1, 1, j, 0) {
                w.dfs(1 | 1 << j, 2, j + 1, 1);
            }
            w.out
        })
        .collect();
    for part in parts {
        total.absorb(part);
    }
    total
}

/// Every optimal `(G, F)` with no anchoring, sequentially.
#[cfg(test)]
pub(crate) fn run_plain(problem: &Problem<'_>) -> Outcome {
    let best = AtomicUsize::new(NONE);
    let mut w = Worker::new(problem, &best);
    w.set_root(&problem.space.full);
    w.dfs(0, 0, 0, 0);
    w.out
}
