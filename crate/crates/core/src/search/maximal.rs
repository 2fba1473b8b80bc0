//! Maximal cross-intersecting pairs: `F = D_a(G)` and `G = D_b(F)`.

use rayon::prelude::*;

use super::kernel::Space;
use super::{canonical_form_family, SearchConfig, CANON_MAX_N};
use crate::count::{binomial, BigCount};
use crate::error::{Error, Result};
use crate::family::{CrossPair, Family};

struct Closure<'a> {
    space: &'a Space,
    found: Vec<u64>,
    stack: Vec<u64>,
}

impl Closure<'_> {
    /// `G` is closed when no outside `b`-set meets all of `D_a(G)`.
    fn closed(&self, g: u64, d: &[u64]) -> bool {
        (0..self.space.b_sets.len())
            .filter(|j| g >> j & 1 == 0)
            .all(|j| {
                d.iter()
                    .zip(self.space.meets_row(j))
                    .any(|(x, m)| x & !m != 0)
            })
    }

    fn walk(&mut self, g: u64, next: usize, depth: usize) {
        let words = self.space.words;
        let d = self.stack[depth * words..(depth + 1) * words].to_vec();
        if self.closed(g, &d) {
            self.found.push(g);
        }
        for j in next..self.space.b_sets.len() {
            let row = self.space.meets_row(j);
            let child = &mut self.stack[(depth + 1) * words..(depth + 2) * words];
            for ((c, x), m) in child.iter_mut().zip(&d).zip(row) {
                *c = x & m;
            }
            self.walk(g | 1 << j, j + 1, depth + 1);
        }
    }
}

pub fn enumerate_maximal_pairs(n: usize, a: usize, b: usize) -> Result<Vec<CrossPair>> {
    enumerate_maximal_pairs_with(n, a, b, &SearchConfig::default())
}

/// One pair per isomorphism class, ordered by the canonical form of `G`
/// (`F` is determined by `G`, so that form classifies the pair).
pub fn enumerate_maximal_pairs_with(
    n: usize,
    a: usize,
    b: usize,
    cfg: &SearchConfig,
) -> Result<Vec<CrossPair>> {
    super::check_params(n, a, b)?;
    if n > CANON_MAX_N {
        return Err(Error::TooLarge(format!(
            "classifying pairs needs n <= {CANON_MAX_N}, got n={n}"
        )));
    }
    let nb = binomial(n as i64, b as i64);
    let limit = if cfg.force { 64 } else { cfg.max_b_sets };
    if nb > BigCount::from(limit) {
        return Err(Error::TooLarge(format!(
            "C({n},{b}) = {nb} exceeds the limit of {limit} b-sets"
        )));
    }
    let space = Space::new(n, a, b);
    let words = space.words;
    let depth = space.b_sets.len() + 2;
    let new_walker = |root: &[u64]| {
        let mut c = Closure {
            space: &space,
            found: Vec::new(),
            stack: vec![0; words * depth],
        };
        c.stack[..words].copy_from_slice(root);
        c
    };
    let run = || -> Vec<u64> {
        let mut all = Vec::new();
        // G = ∅
        let empty = new_walker(&space.full);
        if empty.closed(0, &space.full) {
            all.push(0);
        }
        // anchored: every nonempty G contains b-set 0 after relabeling
        let anchor = space.meets_row(0).to_vec();
        let anchored = new_walker(&anchor);
        if anchored.closed(1, &anchor) {
            all.push(1);
        }
        let parts: Vec<Vec<u64>> = (1..space.b_sets.len())
            .into_par_iter()
            .map(|j| {
                let mut d = anchor.clone();
                for (x, m) in d.iter_mut().zip(space.meets_row(j)) {
                    *x &= m;
                }
                let mut w = new_walker(&d);
                w.walk(1 | 1 << j, j + 1, 0);
                w.found
            })
            .collect();
        all.extend(parts.into_iter().flatten());
        all
    };
    let masks = cfg.install(run)?;
    let classify = || -> Result<Vec<CrossPair>> {
        let mut keyed = masks
            .par_iter()
            .map(|&g| {
                let g = Family::uniform(n, b, space.b_family(g))?;
                Ok((canonical_form_family(&g)?, g))
            })
            .collect::<Result<Vec<_>>>()?;
        keyed.sort_by(|x, y| x.0.cmp(&y.0));
        keyed.dedup_by(|x, y| x.0 == y.0);
        keyed
            .into_iter()
            .map(|(_, g)| CrossPair::new(crate::family::max_companion(&g, a)?, g))
            .collect()
    };
    cfg.install(classify)?
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{construct_mt, star};
    use crate::family::max_companion;
    use crate::search::canonical_form;

    fn is_fixed_point(p: &CrossPair) -> bool {
        max_companion(p.g(), p.a()).unwrap() == *p.f()
            && max_companion(p.f(), p.b()).unwrap() == *p.g()
    }

    #[test]
    fn every_listed_pair_is_a_fixed_point() {
        for (n, a, b) in [(5, 2, 2), (6, 3, 2), (5, 3, 2)] {
            let pairs = enumerate_maximal_pairs(n, a, b).unwrap();
            assert!(!pairs.is_empty());
            assert!(pairs.iter().all(is_fixed_point));
        }
    }

    #[test]
    fn star_pair_is_maximal() {
        let s = star(6, 3, 1).unwrap();
        let pair = CrossPair::new(s.clone(), s).unwrap();
        assert!(is_fixed_point(&pair));
        let forms: Vec<_> = enumerate_maximal_pairs(6, 3, 3)
            .unwrap()
            .iter()
            .map(|p| canonical_form(p).unwrap())
            .collect();
        assert!(forms.contains(&canonical_form(&pair).unwrap()));
    }

    #[test]
    fn closed_mt_is_listed() {
        let mt = construct_mt(7, 4, 2, 2).unwrap();
        let g = max_companion(mt.f(), 2).unwrap();
        let closed = CrossPair::new(max_companion(&g, 4).unwrap(), g).unwrap();
        assert!(is_fixed_point(&closed));
        let forms: Vec<_> = enumerate_maximal_pairs(7, 4, 2)
            .unwrap()
            .iter()
            .map(|p| canonical_form(p).unwrap())
            .collect();
        assert!(forms.contains(&canonical_form(&closed).unwrap()));
    }

    #[test]
    fn class_count_regression() {
        // classes are distinct and the brute-force fixed-point count agrees
        let pairs = enumerate_maximal_pairs(6, 3, 2).unwrap();
        let mut forms: Vec<_> = pairs.iter().map(|p| canonical_form(p).unwrap()).collect();
        forms.sort();
        forms.dedup();
        assert_eq!(forms.len(), pairs.len());
        assert_eq!(pairs.len(), brute_classes(6, 3, 2));
    }

    fn brute_classes(n: usize, a: usize, b: usize) -> usize {
        use crate::family::k_subsets;
        let list: Vec<_> = k_subsets(n, b).collect();
        let mut forms = Vec::new();
        for m in 0u64..1 << list.len() {
            let g = Family::uniform(
                n,
                b,
                (0..list.len()).filter(|j| m >> j & 1 == 1).map(|j| list[j]),
            )
            .unwrap();
            let f = max_companion(&g, a).unwrap();
            if max_companion(&f, b).unwrap() == g {
                forms.push(canonical_form_family(&g).unwrap());
            }
        }
        forms.sort();
        forms.dedup();
        forms.len()
    }
}
