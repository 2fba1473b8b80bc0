//! Covering number and transversals.

use crate::error::{Error, Result};
use crate::family::{k_subsets, Family, SetWord};

/// A cover of some family, with its size cached.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TransversalSet {
    pub set: SetWord,
    pub size: usize,
}

pub fn is_cover(family: &Family, t: SetWord) -> bool {
    family.iter().all(|m| m.meets(t))
}

/// `τ(F)`. The empty family has covering number 0.
pub fn tau(family: &Family) -> Result<usize> {
    min_cover(family).map(|t| t.size)
}

/// A minimum cover found by branch-and-bound: branch on the elements of the
/// first unhit member in (size, mask) order.
pub fn min_cover(family: &Family) -> Result<TransversalSet> {
    min_cover_with_stats(family).map(|(t, _)| t)
}

/// As [`min_cover`], also returning the number of search nodes visited.
pub fn min_cover_with_stats(family: &Family) -> Result<(TransversalSet, u64)> {
    if family.has_empty_member() {
        return Err(Error::EmptyMember);
    }
    let mut members: Vec<SetWord> = family.iter().collect();
    members.sort_by_key(|m| (m.len(), m.bits()));
    let mut state = Search {
        members: &members,
        best: SetWord::prefix(family.n()),
        best_size: family.n() + 1,
        nodes: 0,
    };
    state.run(SetWord::EMPTY, 0);
    if members.is_empty() {
        state.best = SetWord::EMPTY;
        state.best_size = 0;
    }
    Ok((
        TransversalSet {
            set: state.best,
            size: state.best_size,
        },
        state.nodes,
    ))
}

struct Search<'a> {
    members: &'a [SetWord],
    best: SetWord,
    best_size: usize,
    nodes: u64,
}

impl Search<'_> {
    fn run(&mut self, chosen: SetWord, size: usize) {
        self.nodes += 1;
        let Some(pos) = self.members.iter().position(|m| !m.meets(chosen)) else {
            if size < self.best_size {
                self.best = chosen;
                self.best_size = size;
            }
            return;
        };
        // greedy packing of pairwise disjoint unhit members: each needs its own element
        let mut packed = SetWord::EMPTY;
        let mut lower = 0;
        for &m in &self.members[pos..] {
            if !m.meets(chosen) && !m.meets(packed) {
                packed = packed.union(m);
                lower += 1;
            }
        }
        if size + lower >= self.best_size {
            return;
        }
        for e in self.members[pos].elements() {
            self.run(chosen.with(e), size + 1);
        }
    }
}

/// `T^(i)(F)`: every cover of size exactly `i`.
pub fn transversals_of_size(family: &Family, i: usize) -> Result<Family> {
    if family.has_empty_member() {
        return Err(Error::EmptyMember);
    }
    let n = family.n();
    if i > n {
        return Err(Error::InvalidParams(format!(
            "cover size {i} exceeds n={n}"
        )));
    }
    let covers = k_subsets(n, i).filter(|&t| is_cover(family, t));
    Family::uniform(n, i, covers)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fam(n: usize, sets: &[&[usize]]) -> Family {
        Family::from_sets(n, sets).unwrap()
    }

    fn brute_tau(f: &Family) -> usize {
        (0u64..1 << f.n())
            .map(SetWord::from_bits)
            .filter(|&t| is_cover(f, t))
            .map(|t| t.len())
            .min()
            .unwrap()
    }

    #[test]
    fn is_cover_examples() {
        let f = fam(4, &[&[1, 2], &[3, 4]]);
        assert!(is_cover(&f, SetWord::from_bits(0b101)));
        assert!(!is_cover(&f, SetWord::from_bits(0b1)));
        assert!(is_cover(&Family::empty(4, None).unwrap(), SetWord::EMPTY));
    }

    #[test]
    fn tau_examples() {
        let disjoint = fam(9, &[&[1, 2, 3], &[4, 5, 6], &[7, 8, 9]]);
        assert_eq!(tau(&disjoint).unwrap(), 3);
        let star = fam(5, &[&[1, 2], &[1, 3], &[1, 4], &[1, 5]]);
        assert_eq!(tau(&star).unwrap(), 1);
        let k4 = Family::complete(4, 2).unwrap();
        assert_eq!(brute_tau(&k4), 3);
        assert_eq!(tau(&k4).unwrap(), 3);
        assert_eq!(tau(&Family::empty(5, Some(2)).unwrap()).unwrap(), 0);
    }

    #[test]
    fn tau_rejects_empty_member() {
        let f = fam(4, &[&[1, 2]]).restrict_trace(SetWord::from_bits(0b11));
        assert_eq!(tau(&f), Err(Error::EmptyMember));
        assert_eq!(transversals_of_size(&f, 1), Err(Error::EmptyMember));
    }

    #[test]
    fn min_cover_is_a_cover() {
        let f = Family::complete(6, 3).unwrap();
        let t = min_cover(&f).unwrap();
        assert!(is_cover(&f, t.set));
        assert_eq!(t.size, t.set.len());
        assert_eq!(t.size, 4);
    }

    #[test]
    fn transversals_examples() {
        let f = fam(4, &[&[1, 2], &[1, 3]]);
        assert_eq!(transversals_of_size(&f, 1).unwrap(), fam(4, &[&[1]]));
        let g = fam(4, &[&[1, 2], &[3, 4]]);
        assert!(transversals_of_size(&g, 1).unwrap().is_empty());
        assert_eq!(
            transversals_of_size(&g, 2).unwrap(),
            fam(4, &[&[1, 3], &[1, 4], &[2, 3], &[2, 4]])
        );
        assert!(transversals_of_size(&g, 5).is_err());
    }
}
