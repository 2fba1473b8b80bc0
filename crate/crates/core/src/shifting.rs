//! The shift `S_ij` and left-compression to initial families.

use crate::error::{Error, Result};
use crate::family::{is_cross_intersecting, k_subsets, CrossPair, Family, SetWord};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ShiftRecord {
    pub i: usize,
    pub j: usize,
    pub moved: usize,
}

/// Effective shifts in application order.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ShiftLog {
    pub records: Vec<ShiftRecord>,
}

impl ShiftLog {
    pub fn total_moved(&self) -> usize {
        self.records.iter().map(|r| r.moved).sum()
    }
}

fn check_indices(n: usize, i: usize, j: usize) -> Result<()> {
    if i < 1 || j > n || i >= j {
        return Err(Error::InvalidParams(format!(
            "shift needs 1 <= i < j <= n, got i={i}, j={j}, n={n}"
        )));
    }
    Ok(())
}

/// Replaces `j` by `i` in each member where that creates no duplicate.
pub fn shift_ij(family: &Family, i: usize, j: usize) -> Result<Family> {
    check_indices(family.n(), i, j)?;
    Ok(apply_shift(family, i, j).0)
}

fn apply_shift(family: &Family, i: usize, j: usize) -> (Family, usize) {
    let mut moved = 0;
    let members: Vec<SetWord> = family
        .iter()
        .map(|m| {
            if m.contains(j) && !m.contains(i) {
                let image = m.without(j).with(i);
                if !family.contains(image) {
                    moved += 1;
                    return image;
                }
            }
            m
        })
        .collect();
    if moved == 0 {
        return (family.clone(), 0);
    }
    let shifted = Family::new(family.n(), members, family.uniformity())
        .expect("shifting keeps members inside [n] and preserves sizes");
    debug_assert_eq!(shifted.len(), family.len());
    (shifted, moved)
}

pub fn is_initial(family: &Family) -> bool {
    family.iter().all(|m| {
        m.elements().all(|j| {
            (1..j)
                .filter(|&i| !m.contains(i))
                .all(|i| family.contains(m.without(j).with(i)))
        })
    })
}

/// Sweeps `(i, j)` lexicographically until a pass changes nothing.
///
/// Each effective shift lowers `Σ_F Σ_{x∈F} x`, so this terminates.
pub fn compress_to_initial(family: &Family) -> (Family, ShiftLog) {
    let n = family.n();
    let mut current = family.clone();
    let mut log = ShiftLog::default();
    loop {
        let mut changed = false;
        for i in 1..n {
            for j in i + 1..=n {
                let (next, moved) = apply_shift(&current, i, j);
                if moved > 0 {
                    log.records.push(ShiftRecord { i, j, moved });
                    current = next;
                    changed = true;
                }
            }
        }
        if !changed {
            return (current, log);
        }
    }
}

/// Outcome of a simultaneous compression run.
#[derive(Clone, Debug)]
pub struct PairCompression {
    pub pair: CrossPair,
    pub log: ShiftLog,
    /// True when the stop predicate ended the run before both sides were initial.
    pub stopped_early: bool,
}

/// Shifts `F` and `G` with the same `(i, j)` until both are initial.
pub fn compress_pair(pair: &CrossPair) -> Result<CrossPair> {
    compress_pair_until(pair, |_| false).map(|c| c.pair)
}

/// As [`compress_pair`], checking `stop` before the run and after every
/// effective shift.
pub fn compress_pair_until<P>(pair: &CrossPair, mut stop: P) -> Result<PairCompression>
where
    P: FnMut(&CrossPair) -> bool,
{
    if !is_cross_intersecting(pair) {
        return Err(Error::NotCrossIntersecting);
    }
    let n = pair.n();
    let mut current = pair.clone();
    let mut log = ShiftLog::default();
    if stop(&current) {
        return Ok(PairCompression {
            pair: current,
            log,
            stopped_early: true,
        });
    }
    loop {
        let mut changed = false;
        for i in 1..n {
            for j in i + 1..=n {
                let (f, moved_f) = apply_shift(current.f(), i, j);
                let (g, moved_g) = apply_shift(current.g(), i, j);
                if moved_f + moved_g == 0 {
                    continue;
                }
                current = CrossPair::new(f, g)?;
                debug_assert!(is_cross_intersecting(&current));
                log.records.push(ShiftRecord {
                    i,
                    j,
                    moved: moved_f + moved_g,
                });
                changed = true;
                if stop(&current) {
                    return Ok(PairCompression {
                        pair: current,
                        log,
                        stopped_early: true,
                    });
                }
            }
        }
        if !changed {
            return Ok(PairCompression {
                pair: current,
                log,
                stopped_early: false,
            });
        }
    }
}

/// Calls `visit` with every initial `k`-uniform family on `[n]`, members in
/// increasing mask order. These are exactly the down-sets of the shifting
/// order, so a member is admissible once all its one-step left shifts are in.
pub fn for_each_initial_family<V>(n: usize, k: usize, mut visit: V)
where
    V: FnMut(&[SetWord]),
{
    let sets: Vec<SetWord> = k_subsets(n, k).collect();
    let preds: Vec<Vec<usize>> = sets
        .iter()
        .map(|&s| {
            let mut p = Vec::new();
            for j in s.elements() {
                for i in (1..j).filter(|&i| !s.contains(i)) {
                    let t = s.without(j).with(i);
                    p.push(sets.binary_search(&t).expect("k-set"));
                }
            }
            p
        })
        .collect();
    let mut included = vec![false; sets.len()];
    let mut chosen = Vec::new();
    walk_down_sets(0, &sets, &preds, &mut included, &mut chosen, &mut visit);
}

fn walk_down_sets<V: FnMut(&[SetWord])>(
    idx: usize,
    sets: &[SetWord],
    preds: &[Vec<usize>],
    included: &mut [bool],
    chosen: &mut Vec<SetWord>,
    visit: &mut V,
) {
    if idx == sets.len() {
        visit(chosen);
        return;
    }
    walk_down_sets(idx + 1, sets, preds, included, chosen, visit);
    if preds[idx].iter().all(|&p| included[p]) {
        included[idx] = true;
        chosen.push(sets[idx]);
        walk_down_sets(idx + 1, sets, preds, included, chosen, visit);
        chosen.pop();
        included[idx] = false;
    }
}

/// Every initial `k`-uniform family on `[n]`.
pub fn initial_families(n: usize, k: usize) -> Result<Vec<Family>> {
    let mut out = Vec::new();
    let mut err = None;
    for_each_initial_family(n, k, |members| {
        match Family::uniform(n, k, members.iter().copied()) {
            Ok(f) => out.push(f),
            Err(e) => err = Some(e),
        }
    });
    match err {
        Some(e) => Err(e),
        None => Ok(out),
    }
}
