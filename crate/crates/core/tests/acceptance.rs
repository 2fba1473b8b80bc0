//! Acceptance suite: one PASS/FAIL line per criterion. Expected values come
//! from oracles written here, independent of the library code under test.
//!
//! Run alone with `cargo test -p crossfam --test acceptance`.

use std::collections::BTreeSet;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use crossfam::constructions::{
    construct_hst, construct_ht, construct_mst, construct_mt, frankl_g, Realized,
};
use crossfam::count::{self, check_identity_binomial, SlackReport};
use crossfam::family::k_subsets;
use crossfam::grid::{self, Grids, Which};
use crossfam::search::{
    canonical_form, max_cross_sum, max_intersecting_with_tau, ConstraintSpec, SearchConfig,
    SearchReport,
};
use crossfam::shifting::{for_each_initial_family, is_initial, shift_ij};
use crossfam::transversal::tau;
use crossfam::{is_cross_intersecting, max_companion, CrossPair, Family};
use num_bigint::BigInt;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

/// Criteria that are red for a documented reason; see README.
const KNOWN_RED: &[u32] = &[9];

// ---------------------------------------------------------------------------
// independent arithmetic

fn c(n: i64, k: i64) -> i128 {
    if n < 0 || k < 0 || k > n {
        return 0;
    }
    let mut acc: i128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as i128 / (i + 1) as i128;
    }
    acc
}

fn pm(i: i64) -> i128 {
    if i % 2 == 0 {
        1
    } else {
        -1
    }
}

/// `C(n,a) + Σ_{i=1..t} (-1)^i C(t,i) C(n-ib,a) + t`.
fn thm_1t(n: i64, a: i64, b: i64, t: i64) -> i128 {
    c(n, a)
        + (1..=t)
            .map(|i| pm(i) * c(t, i) * c(n - i * b, a))
            .sum::<i128>()
        + t as i128
}

/// `Σ_{i=1..s} (C(n-i,a-1) + Σ_{j=1..t-1} (-1)^j C(t-1,j) C(n-jb-i,a-1)) + C(n-s,b-s) + t-1`.
fn thm_st(n: i64, a: i64, b: i64, t: i64, s: i64) -> i128 {
    let mut total = 0;
    for i in 1..=s {
        total += c(n - i, a - 1);
        for j in 1..t {
            total += pm(j) * c(t - 1, j) * c(n - j * b - i, a - 1);
        }
    }
    total + c(n - s, b - s) + (t - 1) as i128
}

fn thm_ht(n: i64, a: i64, b: i64, t: i64) -> i128 {
    let p = b + t - 1;
    c(n, a) - (0..t).map(|i| c(p, i) * c(n - p, a - i)).sum::<i128>() + c(p, b)
}

fn big(v: i128) -> BigInt {
    BigInt::from(v)
}

// ---------------------------------------------------------------------------
// independent enumeration on u32 masks (element e is bit e-1)

fn sets(n: u32, k: u32) -> Vec<u32> {
    (0u32..1 << n).filter(|m| m.count_ones() == k).collect()
}

fn prefix(m: u32) -> u32 {
    (1u32 << m) - 1
}

fn interval(lo: u32, hi: u32) -> u32 {
    prefix(hi) & !prefix(lo - 1)
}

fn meets_all(x: u32, family: &[u32]) -> bool {
    family.iter().all(|&y| x & y != 0)
}

/// Sizes of M^t, H^t and, for each s, M_s^t and H_s^t, from their
/// definitions.
fn enumerate_sizes(n: u32, a: u32, b: u32, t: u32) -> Vec<(String, u32, usize)> {
    let a_sets = sets(n, a);
    let b_sets = sets(n, b);
    let mut out = Vec::new();
    let blocks: Vec<u32> = (1..=t).map(|i| interval((i - 1) * b + 1, i * b)).collect();
    let f = a_sets.iter().filter(|&&x| meets_all(x, &blocks)).count();
    out.push(("mt".into(), 0, f + blocks.len()));
    let p = b + t - 1;
    let core = prefix(p);
    let g_h: Vec<u32> = b_sets.iter().copied().filter(|&y| y & !core == 0).collect();
    let f_h = a_sets
        .iter()
        .filter(|&&x| (x & core).count_ones() >= t)
        .count();
    out.push(("ht".into(), 0, f_h + g_h.len()));
    for s in 1..=b {
        let head = prefix(s);
        let mut g: Vec<u32> = b_sets
            .iter()
            .copied()
            .filter(|&y| y & head == head)
            .collect();
        g.extend((1..t).map(|i| interval(s + (i - 1) * b + 1, s + i * b)));
        let f = a_sets.iter().filter(|&&x| meets_all(x, &g)).count();
        out.push(("mst".into(), s, f + g.len()));
        let g: BTreeSet<u32> = b_sets
            .iter()
            .copied()
            .filter(|&y| y & head == head || y & !core == 0)
            .collect();
        let f = a_sets
            .iter()
            .filter(|&&x| x & head != 0 && (x & core).count_ones() >= t)
            .count();
        out.push(("hst".into(), s, f + g.len()));
    }
    out
}

/// `τ >= t` for a family given by the members' masks.
fn tau_at_least(members: &[u32], n: u32, t: u32) -> bool {
    t == 0
        || sets(n, t - 1)
            .iter()
            .all(|&cover| !meets_all(cover, members))
}

#[derive(Clone, Copy)]
enum FSide {
    AtLeast(u32),
    Exactly1,
    InitialAtLeast1,
    InitialExactly1,
}

/// Every `G ⊆ C([n], b)` with `τ(G) >= t`: the best `|F| + |G|` and the set of
/// optimal labelled pairs.
fn brute_cross(n: u32, a: u32, b: u32, t: u32, side: FSide) -> (usize, BTreeSet<(u64, u64)>) {
    let a_sets = sets(n, a);
    let b_sets = sets(n, b);
    assert!(a_sets.len() <= 64 && b_sets.len() <= 32);
    let rows: Vec<u64> = b_sets
        .iter()
        .map(|&y| {
            a_sets
                .iter()
                .enumerate()
                .filter(|(_, &x)| x & y != 0)
                .fold(0u64, |acc, (i, _)| acc | 1 << i)
        })
        .collect();
    let full = if a_sets.len() == 64 {
        !0
    } else {
        (1u64 << a_sets.len()) - 1
    };
    let initial_only = matches!(side, FSide::InitialAtLeast1 | FSide::InitialExactly1);
    let a_members = |mask: u64| -> Vec<u32> {
        (0..a_sets.len())
            .filter(|i| mask >> i & 1 == 1)
            .map(|i| a_sets[i])
            .collect()
    };
    let star = |e: u32| -> u64 {
        a_sets
            .iter()
            .enumerate()
            .filter(|(_, &x)| x >> (e - 1) & 1 == 1)
            .fold(0u64, |acc, (i, _)| acc | 1 << i)
    };
    let mut best = 0usize;
    let mut hits = BTreeSet::new();
    for gm in 1u64..1 << b_sets.len() {
        let g: Vec<u32> = (0..b_sets.len())
            .filter(|j| gm >> j & 1 == 1)
            .map(|j| b_sets[j])
            .collect();
        if initial_only && !is_initial_masks(&g, n) {
            continue;
        }
        if !tau_at_least(&g, n, t) {
            continue;
        }
        let d = (0..b_sets.len())
            .filter(|j| gm >> j & 1 == 1)
            .fold(full, |acc, j| acc & rows[j]);
        let candidates: Vec<u64> = match side {
            FSide::AtLeast(s) => {
                if tau_at_least(&a_members(d), n, s) {
                    vec![d]
                } else {
                    vec![]
                }
            }
            FSide::InitialAtLeast1 => {
                if d != 0 {
                    vec![d]
                } else {
                    vec![]
                }
            }
            FSide::Exactly1 => {
                let top = (1..=n)
                    .map(|e| (d & star(e)).count_ones())
                    .max()
                    .unwrap_or(0);
                if top == 0 {
                    vec![]
                } else {
                    (1..=n)
                        .map(|e| d & star(e))
                        .filter(|f| f.count_ones() == top)
                        .collect()
                }
            }
            // an initial family with a common element has 1 in every member
            FSide::InitialExactly1 => {
                let f = d & star(1);
                if f != 0 {
                    vec![f]
                } else {
                    vec![]
                }
            }
        };
        for f in candidates {
            let value = f.count_ones() as usize + g.len();
            if value > best {
                best = value;
                hits.clear();
            }
            if value == best {
                hits.insert((gm, f));
            }
        }
    }
    (best, hits)
}

/// Closed under every `S_ij`, `i < j`.
fn is_initial_masks(family: &[u32], n: u32) -> bool {
    family.iter().all(|&y| {
        (1..=n).all(|j| {
            (1..j).all(|i| {
                let (bi, bj) = (1u32 << (i - 1), 1u32 << (j - 1));
                y & bj == 0 || y & bi != 0 || family.contains(&(y & !bj | bi))
            })
        })
    })
}

/// Labelled copies of a structure on `[n]` with `|Aut| = aut`.
fn orbit(n: i64, aut: i128) -> usize {
    ((1..=n as i128).product::<i128>() / aut) as usize
}

// ---------------------------------------------------------------------------
// reporting

struct Line {
    id: u32,
    pass: bool,
    title: &'static str,
    detail: String,
    elapsed: Duration,
    budget: Duration,
}

fn timed<F: FnOnce() -> (bool, String)>(
    id: u32,
    title: &'static str,
    budget_s: u64,
    body: F,
) -> Line {
    let started = Instant::now();
    let (pass, detail) = body();
    let elapsed = started.elapsed();
    let budget = Duration::from_secs(budget_s);
    Line {
        id,
        pass: pass && elapsed <= budget,
        title,
        detail,
        elapsed,
        budget,
    }
}

fn print(line: &Line) {
    println!(
        "criterion {:>2}  {}  {}: {}  [{:.2}s, budget {}s]",
        line.id,
        if line.pass { "PASS" } else { "FAIL" },
        line.title,
        line.detail,
        line.elapsed.as_secs_f64(),
        line.budget.as_secs()
    );
}

fn pair_of(r: &Realized) -> &CrossPair {
    match r {
        Realized::Pair(p) => p,
        Realized::Single(_) => panic!("expected a pair"),
    }
}

/// Library search against the brute-force oracle and the theorem value.
fn oracle_case(
    (n, a, b, t): (u32, u32, u32, u32),
    spec: ConstraintSpec,
    side: FSide,
    expected: i128,
    construction: Option<(CrossPair, usize)>,
) -> (bool, String) {
    let report: SearchReport = max_cross_sum(n as usize, a as usize, b as usize, spec).unwrap();
    let (brute, hits) = brute_cross(n, a, b, t, side);
    let mut ok = report.optimum == Some(expected as usize) && brute == expected as usize;
    let mut detail = format!(
        "({n},{a},{b}, {spec}) search={:?} brute={brute} theorem={expected}",
        report.optimum.unwrap_or(0)
    );
    if let Some((pair, labelled)) = construction {
        let canon = canonical_form(&pair).unwrap();
        let same_class = report.witnesses.len() == 1
            && canonical_form(pair_of(&report.witnesses[0])).unwrap() == canon;
        ok &= report.iso_class_count == Some(1)
            && report.iso_matches_construction == Some(true)
            && same_class
            && hits.len() == labelled;
        detail += &format!(
            " classes={} labelled_optima={} orbit={labelled}",
            report.iso_class_count.unwrap_or(0),
            hits.len()
        );
    }
    (ok, detail)
}

// ---------------------------------------------------------------------------
// criteria

fn criterion_1(grids: &Grids) -> (bool, String) {
    let points = grids.construction_points(4);
    let mut checked = 0;
    let mut bad = Vec::new();
    for &(n, a, b, t) in &points {
        let (nu, au, bu, tu) = (n as usize, a as usize, b as usize, t as usize);
        for (name, s, size) in enumerate_sizes(n as u32, a as u32, b as u32, t as u32) {
            let si = s as i64;
            let (formula, built) = match name.as_str() {
                "mt" => (
                    count::size_mt(n, a, b, t).unwrap(),
                    construct_mt(nu, au, bu, tu).unwrap().total(),
                ),
                "ht" => (
                    count::size_ht(n, a, b, t).unwrap(),
                    construct_ht(nu, au, bu, tu).unwrap().total(),
                ),
                "mst" => (
                    count::bound_st(n, a, b, t, si).unwrap(),
                    construct_mst(nu, au, bu, tu, s as usize).unwrap().total(),
                ),
                _ => (
                    count::size_hst(n, a, b, t, si).unwrap(),
                    construct_hst(nu, au, bu, tu, s as usize).unwrap().total(),
                ),
            };
            checked += 1;
            if formula != BigInt::from(size) || built != size {
                bad.push(format!("{name}({n},{a},{b},{t},s={s})"));
            }
        }
    }
    let detail = if bad.is_empty() {
        format!("{checked} sizes exact over {} grid points", points.len())
    } else {
        format!("{} of {checked} mismatched, e.g. {}", bad.len(), bad[0])
    };
    (bad.is_empty(), detail)
}

fn criterion_2(grids: &Grids) -> (bool, String) {
    let reports = grid::sweep(grids, Which::MtForms).unwrap();
    let bad = reports.iter().filter(|r| r.lhs != r.rhs).count();
    let t1 = grids
        .construction_points(5)
        .iter()
        .filter(|p| count::size_mt_partition(p.0, p.1, p.2, p.3) != big(thm_1t(p.0, p.1, p.2, p.3)))
        .count();
    (
        bad == 0 && t1 == 0 && !reports.is_empty(),
        format!(
            "{} points, t <= 5: {bad} form mismatches, {t1} differ from the alternating sum",
            reports.len()
        ),
    )
}

fn criterion_3() -> (bool, String) {
    let (a2, d2) = oracle_case(
        (7, 4, 2, 2),
        ConstraintSpec::at_least(1, 2),
        FSide::AtLeast(1),
        thm_1t(7, 4, 2, 2),
        Some((construct_mt(7, 4, 2, 2).unwrap(), orbit(7, 2 * 2 * 2 * 6))),
    );
    let (a3, d3) = oracle_case(
        (7, 4, 2, 3),
        ConstraintSpec::at_least(1, 3),
        FSide::AtLeast(1),
        thm_1t(7, 4, 2, 3),
        Some((construct_mt(7, 4, 2, 3).unwrap(), orbit(7, 6 * 8))),
    );
    (a2 && a3, format!("{d2}; {d3}"))
}

fn criterion_4() -> (bool, String) {
    oracle_case(
        (7, 4, 2, 1),
        ConstraintSpec::at_least(1, 1),
        FSide::AtLeast(1),
        c(7, 4) - c(5, 4) + 1,
        Some((construct_mt(7, 4, 2, 1).unwrap(), orbit(7, 2 * 120))),
    )
}

fn criterion_5() -> (bool, String) {
    oracle_case(
        (7, 4, 2, 2),
        ConstraintSpec::exact_f(1, 2),
        FSide::Exactly1,
        thm_st(7, 4, 2, 2, 1),
        Some((construct_mst(7, 4, 2, 2, 1).unwrap(), orbit(7, 2 * 24))),
    )
}

fn criterion_6() -> (bool, String) {
    oracle_case(
        (7, 4, 2, 2),
        ConstraintSpec::at_least(2, 2),
        FSide::AtLeast(2),
        thm_1t(7, 4, 2, 2),
        Some((construct_mt(7, 4, 2, 2).unwrap(), orbit(7, 48))),
    )
}

fn criterion_7() -> (bool, String) {
    let mut ok = true;
    let mut details = Vec::new();
    let cases = [
        (
            ConstraintSpec::at_least(1, 2).initial(),
            FSide::InitialAtLeast1,
            thm_ht(7, 4, 2, 2),
            construct_ht(7, 4, 2, 2).unwrap(),
        ),
        (
            ConstraintSpec::exact_f(1, 2).initial(),
            FSide::InitialExactly1,
            // H_1^2: a-sets through 1 meeting [2,3], with G = {B ∋ 1} ∪ {23}
            c(6, 3) - c(4, 3) + c(6, 1) + 1,
            construct_hst(7, 4, 2, 2, 1).unwrap(),
        ),
    ];
    for (spec, side, expected, pair) in cases {
        let report = max_cross_sum(7, 4, 2, spec).unwrap();
        let (brute, hits) = brute_cross(7, 4, 2, 2, side);
        let witness_ok = report.witnesses.len() == 1 && pair_of(&report.witnesses[0]) == &pair;
        let case_ok = report.optimum == Some(expected as usize)
            && brute == expected as usize
            && hits.len() == 1
            && witness_ok
            && report.iso_matches_construction == Some(true);
        ok &= case_ok;
        details.push(format!(
            "({spec}) search={} brute={brute} formula={expected} initial_optima={}",
            report.optimum.unwrap_or(0),
            hits.len()
        ));
    }
    (ok, details.join("; "))
}

fn criterion_8() -> (bool, String) {
    let (ok, detail) = oracle_case(
        (6, 4, 2, 2),
        ConstraintSpec::at_least(1, 2),
        FSide::AtLeast(1),
        c(6, 4),
        None,
    );
    (ok, detail + " (uniqueness not asserted)")
}

fn criterion_9(grids: &Grids) -> (bool, String) {
    let mut ok = true;
    let mut parts = Vec::new();
    for which in [
        Which::Icip1,
        Which::Icile,
        Which::Qlecnie2,
        Which::Snsi,
        Which::Cnie,
    ] {
        let reps = grid::sweep(grids, which).unwrap();
        let negative: Vec<&SlackReport> = reps.iter().filter(|r| !r.slack_nonnegative()).collect();
        // equality points are part of the criterion only where it names them
        let equality_checked = matches!(which, Which::Icip1 | Which::Qlecnie2);
        let off: Vec<&SlackReport> = reps.iter().filter(|r| !r.equality_matches()).collect();
        let sub_ok =
            !reps.is_empty() && negative.is_empty() && (!equality_checked || off.is_empty());
        ok &= sub_ok;
        let mut text = format!(
            "{which} {} [{} points, {} negative, {} off the equality clause",
            if sub_ok { "ok" } else { "RED" },
            reps.len(),
            negative.len(),
            off.len()
        );
        if let Some(r) = off.first() {
            text += &format!(", e.g. {} slack={}", r.params_string(), r.slack);
        }
        if !equality_checked && !off.is_empty() {
            text += ", not part of the criterion";
        }
        text.push(']');
        parts.push(text);
    }
    (ok, parts.join("; "))
}

fn intersecting_tau(members: &[u32], n: u32) -> usize {
    (0..=n as usize)
        .find(|&i| !tau_at_least(members, n, i as u32 + 1))
        .unwrap()
}

fn criterion_10() -> (bool, String) {
    let cfg = SearchConfig::default();
    let expected = [
        (1, c(6, 2)),
        (2, c(6, 2) - c(3, 2) + 1),
        (
            3,
            (1..=3)
                .map(|i| (1..=3).product::<i128>() / (1..=i).product::<i128>())
                .sum(),
        ),
    ];
    let mut ok = true;
    let mut parts = Vec::new();
    for (s, value) in expected {
        let r = max_intersecting_with_tau(7, 3, s, &cfg).unwrap();
        let witnesses_ok = r.witnesses.iter().all(|w| match w {
            Realized::Single(f) => {
                let masks: Vec<u32> = f.iter().map(|m| m.bits() as u32).collect();
                f.len() == value as usize
                    && masks.iter().all(|&x| masks.iter().all(|&y| x & y != 0))
                    && intersecting_tau(&masks, 7) >= s
            }
            Realized::Pair(_) => false,
        });
        let case_ok = r.optimum == Some(value as usize) && witnesses_ok && !r.witnesses.is_empty();
        ok &= case_ok;
        parts.push(format!(
            "s={s}: {} (expected {value}, {} classes)",
            r.optimum.unwrap_or(0),
            r.iso_class_count.unwrap_or(0)
        ));
    }
    (ok, parts.join(", "))
}

fn criterion_11() -> (bool, String) {
    let f = frankl_g(15, 7).unwrap();
    let formula = count::bound_cover3(15, 7);
    let direct = c(14, 6) - c(8, 6) - c(7, 6) + c(1, 6) + c(6, 4) + 3;
    let masks: Vec<u32> = f.iter().map(|m| m.bits() as u32).collect();
    let intersecting = f.is_intersecting();
    let tau3 = tau_at_least(&masks, 15, 3);
    let ok = formula == BigInt::from(f.len()) && formula == big(direct) && intersecting && tau3;
    (
        ok,
        format!("|G(15,7)| = {} by enumeration, formula {formula}, intersecting={intersecting}, tau>=3: {tau3}", f.len()),
    )
}

fn random_pair(rng: &mut StdRng) -> CrossPair {
    let n = rng.gen_range(3..=8);
    let a = rng.gen_range(1..n);
    let b = rng.gen_range(1..n);
    let g = Family::uniform(n, b, k_subsets(n, b).filter(|_| rng.gen_bool(0.15))).unwrap();
    let d = max_companion(&g, a).unwrap();
    let f = d.filter(|_| rng.gen_bool(0.6));
    CrossPair::new(f, g).unwrap()
}

fn random_family(rng: &mut StdRng) -> Family {
    let n = rng.gen_range(2..=8);
    let k = rng.gen_range(1..=n);
    let p = rng.gen_range(0.05..0.6);
    Family::uniform(n, k, k_subsets(n, k).filter(|_| rng.gen_bool(p))).unwrap()
}

fn criterion_12() -> (bool, String) {
    let mut rng = StdRng::seed_from_u64(12);
    let mut failures: Vec<&str> = Vec::new();

    let mut shift_ok = true;
    for _ in 0..2000 {
        let p = random_pair(&mut rng);
        let n = p.n();
        let i = rng.gen_range(1..n);
        let j = rng.gen_range(i + 1..=n);
        let f = shift_ij(p.f(), i, j).unwrap();
        let g = shift_ij(p.g(), i, j).unwrap();
        let q = CrossPair::new(f.clone(), g).unwrap();
        shift_ok &= is_cross_intersecting(&q)
            && q.f().len() == p.f().len()
            && q.g().len() == p.g().len()
            && shift_ij(&f, i, j).unwrap() == f;
    }
    if !shift_ok {
        failures.push("shifting");
    }

    let mut initial_ok = true;
    let mut initial_count = 0;
    for n in 2..=8usize {
        for b in 1..=3.min(n) {
            for_each_initial_family(n, b, |members| {
                initial_count += 1;
                let g = Family::uniform(n, b, members.iter().copied()).unwrap();
                let masks: Vec<u32> = members.iter().map(|m| m.bits() as u32).collect();
                initial_ok &= is_initial(&g) && is_initial_masks(&masks, n as u32);
                let t = tau(&g).unwrap();
                if t >= 1 && b + t - 1 <= n {
                    initial_ok &= k_subsets(b + t - 1, b).all(|core| g.contains(core));
                }
            });
        }
    }
    if !initial_ok {
        failures.push("initial containment");
    }

    let mut tau_ok = true;
    let mut lym_ok = true;
    for _ in 0..2000 {
        let f = random_family(&mut rng);
        let sub = f.filter(|_| rng.gen_bool(0.5));
        tau_ok &= tau(&sub).unwrap() <= tau(&f).unwrap();
        let (n, k) = (f.n() as i64, f.uniformity().unwrap() as i64);
        for up in 0..=(n - k).min(3) {
            let shadow = f.upper_shadow((k + up) as usize).unwrap();
            lym_ok &= shadow.len() as i128 * c(n, k) >= f.len() as i128 * c(n, k + up);
        }
    }
    if !tau_ok {
        failures.push("tau monotonicity");
    }
    if !lym_ok {
        failures.push("LYM");
    }

    let mut canon_ok = true;
    for _ in 0..500 {
        let p = random_pair(&mut rng);
        let n = p.n();
        let mut perm: Vec<usize> = (1..=n).collect();
        for x in (1..n).rev() {
            perm.swap(x, rng.gen_range(0..=x));
        }
        canon_ok &=
            canonical_form(&p).unwrap() == canonical_form(&p.relabel(&perm).unwrap()).unwrap();
    }
    if !canon_ok {
        failures.push("canonical form");
    }

    let mut identity_ok = true;
    for _ in 0..10_000 {
        let n = rng.gen_range(0..=60i64);
        let p = rng.gen_range(0..=n);
        let q = rng.gen_range(-2..=n + 2);
        identity_ok &= check_identity_binomial(n, p, q).unwrap().slack == BigInt::from(0);
    }
    if !identity_ok {
        failures.push("binomial identity");
    }

    let detail = if failures.is_empty() {
        format!(
            "shifting x2000, initial containment over {initial_count} initial families, tau monotonicity and LYM x2000, canon x500, identity x10000"
        )
    } else {
        format!("failed: {}", failures.join(", "))
    };
    (failures.is_empty(), detail)
}

fn main() -> ExitCode {
    let grids = Grids::shipped();
    let lines = vec![
        timed(1, "construction sizes equal closed forms", 60, || {
            criterion_1(&grids)
        }),
        timed(2, "two forms of |M^t| agree", 5, || criterion_2(&grids)),
        timed(3, "tau(F)>=1, tau(G)>=t oracle", 300, criterion_3),
        timed(4, "t = 1 oracle", 300, criterion_4),
        timed(5, "tau(F) = 1 oracle", 600, criterion_5),
        timed(6, "tau(F)>=2, tau(G)>=2 oracle", 600, criterion_6),
        timed(7, "initial-families oracle", 120, criterion_7),
        timed(8, "boundary n = a+b", 60, criterion_8),
        timed(9, "inequality sweeps", 10, || criterion_9(&grids)),
        timed(10, "intersecting anchors at (7,3)", 1800, criterion_10),
        timed(11, "|G(15,7)| equals its formula", 30, criterion_11),
        timed(12, "property suites", 60, criterion_12),
    ];
    for line in &lines {
        print(line);
    }
    let red: Vec<u32> = lines.iter().filter(|l| !l.pass).map(|l| l.id).collect();
    let unexpected: Vec<u32> = red
        .iter()
        .copied()
        .filter(|id| !KNOWN_RED.contains(id))
        .collect();
    let passed = lines.len() - red.len();
    println!(
        "acceptance: {passed}/{} PASS; red: {red:?}; documented red: {KNOWN_RED:?}",
        lines.len()
    );
    for id in KNOWN_RED.iter().filter(|id| !red.contains(id)) {
        println!("note: criterion {id} is documented red but passed");
    }
    if unexpected.is_empty() {
        ExitCode::SUCCESS
    } else {
        println!("unexpected FAIL: {unexpected:?}");
        ExitCode::FAILURE
    }
}
