//! Canonical forms by exhaustive relabeling within refined color classes.

use crate::constructions::Realized;
use crate::error::{Error, Result};
use crate::family::{CrossPair, Family};

/// Largest ground set the permutation sweep accepts.
pub const CANON_MAX_N: usize = 10;

const G_COLOR: u64 = 1 << 63;

/// The lexicographically least sorted code list over all relabelings. Codes
/// are member masks; `G` members carry bit 63 so colors never mix.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CanonicalForm {
    n: usize,
    codes: Vec<u64>,
}

impl CanonicalForm {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn codes(&self) -> &[u64] {
        &self.codes
    }
}

pub fn canonical_form(pair: &CrossPair) -> Result<CanonicalForm> {
    let codes: Vec<u64> = pair
        .f()
        .iter()
        .map(|m| m.bits())
        .chain(pair.g().iter().map(|m| m.bits() | G_COLOR))
        .collect();
    canonize(pair.n(), &codes)
}

pub fn canonical_form_family(family: &Family) -> Result<CanonicalForm> {
    let codes: Vec<u64> = family.iter().map(|m| m.bits()).collect();
    canonize(family.n(), &codes)
}

pub fn canonical_form_realized(r: &Realized) -> Result<CanonicalForm> {
    match r {
        Realized::Single(f) => canonical_form_family(f),
        Realized::Pair(p) => canonical_form(p),
    }
}

/// Relabels one mask through two 5-bit lookup tables.
struct Tables {
    lo: [u64; 32],
    hi: [u64; 32],
}

impl Tables {
    fn build(perm: &[usize]) -> Tables {
        let mut t = Tables {
            lo: [0; 32],
            hi: [0; 32],
        };
        for x in 1usize..32 {
            let bit = x.trailing_zeros() as usize;
            let rest = x & (x - 1);
            t.lo[x] = t.lo[rest] | perm.get(bit).map_or(0, |&p| 1 << p);
            t.hi[x] = t.hi[rest] | perm.get(bit + 5).map_or(0, |&p| 1 << p);
        }
        t
    }

    fn apply(&self, code: u64) -> u64 {
        let bits = code & !G_COLOR;
        (code & G_COLOR) | self.lo[(bits & 31) as usize] | self.hi[(bits >> 5) as usize]
    }
}

/// Element colors from iterated refinement: an element's signature is its
/// color plus, for every member through it, the member's side and the sorted
/// colors of that member. Colors are ranks of signatures, so they are
/// relabeling-invariant.
/// An element's color and the member-color lists of the members through it.
type Signature<'a> = (usize, Vec<&'a (u64, Vec<usize>)>);

fn refine(n: usize, codes: &[u64]) -> Vec<usize> {
    let mut color = vec![0usize; n];
    let mut classes = 1;
    loop {
        let member_colors: Vec<(u64, Vec<usize>)> = codes
            .iter()
            .map(|&c| {
                let mut cs: Vec<usize> = (0..n)
                    .filter(|&e| c >> e & 1 == 1)
                    .map(|e| color[e])
                    .collect();
                cs.sort_unstable();
                (c & G_COLOR, cs)
            })
            .collect();
        let signatures: Vec<Signature<'_>> = (0..n)
            .map(|e| {
                let mut through: Vec<&(u64, Vec<usize>)> = codes
                    .iter()
                    .zip(&member_colors)
                    .filter(|(c, _)| *c >> e & 1 == 1)
                    .map(|(_, mc)| mc)
                    .collect();
                through.sort_unstable();
                (color[e], through)
            })
            .collect();
        let mut distinct: Vec<&Signature<'_>> = signatures.iter().collect();
        distinct.sort_unstable();
        distinct.dedup();
        let next: Vec<usize> = signatures
            .iter()
            .map(|sig| distinct.binary_search(&sig).expect("present"))
            .collect();
        let grew = distinct.len() > classes;
        classes = distinct.len();
        color = next;
        if !grew {
            return color;
        }
    }
}

/// Minimizes over relabelings that send color class `i` onto the `i`-th
/// block of labels. Isomorphic inputs have matching classes, so the minimum
/// is a complete invariant.
fn canonize(n: usize, codes: &[u64]) -> Result<CanonicalForm> {
    if n > CANON_MAX_N {
        return Err(Error::TooLarge(format!(
            "canonical form needs n <= {CANON_MAX_N}, got n={n}"
        )));
    }
    let color = refine(n, codes);
    let classes = color.iter().max().map_or(0, |m| m + 1);
    let blocks: Vec<Vec<usize>> = (0..classes)
        .map(|c| (0..n).filter(|&e| color[e] == c).collect())
        .collect();
    let mut search = Sweep {
        codes,
        best: None,
        scratch: vec![0; codes.len()],
        perm: vec![0; n],
    };
    search.blocks(&blocks, 0, 0);
    Ok(CanonicalForm {
        n,
        codes: search.best.unwrap_or_default(),
    })
}

struct Sweep<'a> {
    codes: &'a [u64],
    best: Option<Vec<u64>>,
    scratch: Vec<u64>,
    perm: Vec<usize>,
}

impl Sweep<'_> {
    fn blocks(&mut self, blocks: &[Vec<usize>], index: usize, offset: usize) {
        let Some(block) = blocks.get(index) else {
            self.consider();
            return;
        };
        // Heap's algorithm over the labels given to this block
        let mut labels: Vec<usize> = (offset..offset + block.len()).collect();
        let mut c = vec![0usize; block.len()];
        self.place(blocks, index, offset, &labels);
        let mut i = 1;
        while i < labels.len() {
            if c[i] < i {
                let k = if i % 2 == 0 { 0 } else { c[i] };
                labels.swap(k, i);
                self.place(blocks, index, offset, &labels);
                c[i] += 1;
                i = 1;
            } else {
                c[i] = 0;
                i += 1;
            }
        }
    }

    fn place(&mut self, blocks: &[Vec<usize>], index: usize, offset: usize, labels: &[usize]) {
        for (&e, &l) in blocks[index].iter().zip(labels) {
            self.perm[e] = l;
        }
        self.blocks(blocks, index + 1, offset + labels.len());
    }

    fn consider(&mut self) {
        let tables = Tables::build(&self.perm);
        for (s, &c) in self.scratch.iter_mut().zip(self.codes) {
            *s = tables.apply(c);
        }
        self.scratch.sort_unstable();
        match &mut self.best {
            Some(best) if self.scratch >= *best => {}
            Some(best) => best.copy_from_slice(&self.scratch),
            None => self.best = Some(self.scratch.clone()),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::construct_mt;

    fn fam(n: usize, sets: &[&[usize]]) -> Family {
        Family::from_sets(n, sets).unwrap()
    }

    #[test]
    fn single_edge_canon() {
        let p1 = CrossPair::new(fam(3, &[&[2, 3]]), Family::empty(3, Some(1)).unwrap()).unwrap();
        let p2 = CrossPair::new(fam(3, &[&[1, 2]]), Family::empty(3, Some(1)).unwrap()).unwrap();
        assert_eq!(canonical_form(&p1).unwrap(), canonical_form(&p2).unwrap());
    }

    #[test]
    fn block_placement_is_irrelevant() {
        let canonical = construct_mt(7, 4, 2, 2).unwrap();
        // blocks {6,7} and {4,5}
        let perm = [6, 7, 4, 5, 1, 2, 3];
        let moved = canonical.relabel(&perm).unwrap();
        assert_eq!(moved.g(), &fam(7, &[&[4, 5], &[6, 7]]));
        assert_eq!(
            canonical_form(&canonical).unwrap(),
            canonical_form(&moved).unwrap()
        );
    }

    #[test]
    fn colors_are_kept_apart() {
        let f = fam(4, &[&[1, 2]]);
        let g = fam(4, &[&[1, 3]]);
        let p = CrossPair::new(f.clone(), g.clone()).unwrap();
        let swapped = CrossPair::new(g, f).unwrap();
        assert_eq!(
            canonical_form(&p).unwrap(),
            canonical_form(&swapped).unwrap()
        );
        let g2 = fam(4, &[&[1, 2], &[1, 3]]);
        let both = CrossPair::new(fam(4, &[&[1, 2]]), g2.clone()).unwrap();
        let other = CrossPair::new(fam(4, &[&[1, 3]]), g2).unwrap();
        assert_eq!(
            canonical_form(&both).unwrap(),
            canonical_form(&other).unwrap()
        );
        let apart = CrossPair::new(fam(4, &[&[1, 2]]), fam(4, &[&[3, 4]])).unwrap();
        assert_ne!(canonical_form(&p).unwrap(), canonical_form(&apart).unwrap());
    }

    #[test]
    fn distinguishes_star_from_triangle() {
        let star = fam(4, &[&[1, 2], &[1, 3], &[1, 4]]);
        let tri = fam(4, &[&[1, 2], &[1, 3], &[2, 3]]);
        assert_ne!(
            canonical_form_family(&star).unwrap(),
            canonical_form_family(&tri).unwrap()
        );
    }

    #[test]
    fn rejects_large_ground_set() {
        let f = Family::empty(11, Some(2)).unwrap();
        assert!(matches!(canonical_form_family(&f), Err(Error::TooLarge(_))));
    }
}
