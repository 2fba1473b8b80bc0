//! Subsets of `[n]` as single machine words and set families over them.
//!
//! Element `e` (1-based) lives in bit `e - 1`. A [`Family`] keeps its members
//! strictly increasing by the mask read as an integer, so equality, hashing and
//! iteration order are all structural.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};

/// Largest supported ground set.
pub const MAX_N: usize = 64;

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct SetWord(u64);

impl SetWord {
    pub const EMPTY: SetWord = SetWord(0);

    #[inline]
    pub const fn from_bits(bits: u64) -> Self {
        SetWord(bits)
    }

    #[inline]
    pub const fn bits(self) -> u64 {
        self.0
    }

    /// Builds a set from 1-based elements, rejecting anything outside `[1, n]`
    /// and repeated elements.
    pub fn from_elements<I>(elements: I, n: usize) -> Result<Self>
    where
        I: IntoIterator,
        I::Item: Into<i64>,
    {
        check_n(n)?;
        let mut bits = 0u64;
        for e in elements {
            let e: i64 = e.into();
            if e < 1 || e > n as i64 {
                return Err(Error::ElementOutOfRange { element: e, n });
            }
            let bit = 1u64 << (e - 1);
            if bits & bit != 0 {
                return Err(Error::DuplicateElement(e as usize));
            }
            bits |= bit;
        }
        Ok(SetWord(bits))
    }

    /// The interval `[lo, hi]`; empty when `lo > hi`.
    pub fn interval(lo: usize, hi: usize) -> Self {
        if lo > hi || hi == 0 {
            return SetWord::EMPTY;
        }
        let lo = lo.max(1);
        SetWord(low_mask(hi) & !low_mask(lo - 1))
    }

    /// `[1, m]`.
    #[inline]
    pub fn prefix(m: usize) -> Self {
        SetWord(low_mask(m))
    }

    #[inline]
    pub fn singleton(e: usize) -> Self {
        debug_assert!((1..=MAX_N).contains(&e));
        SetWord(1u64 << (e - 1))
    }

    #[inline]
    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    #[inline]
    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    #[inline]
    pub fn contains(self, e: usize) -> bool {
        (1..=MAX_N).contains(&e) && self.0 >> (e - 1) & 1 == 1
    }

    #[inline]
    pub fn meets(self, other: SetWord) -> bool {
        self.0 & other.0 != 0
    }

    #[inline]
    pub fn is_subset_of(self, other: SetWord) -> bool {
        self.0 & !other.0 == 0
    }

    #[inline]
    pub fn union(self, other: SetWord) -> SetWord {
        SetWord(self.0 | other.0)
    }

    #[inline]
    pub fn intersection(self, other: SetWord) -> SetWord {
        SetWord(self.0 & other.0)
    }

    #[inline]
    pub fn difference(self, other: SetWord) -> SetWord {
        SetWord(self.0 & !other.0)
    }

    #[inline]
    pub fn with(self, e: usize) -> SetWord {
        SetWord(self.0 | 1u64 << (e - 1))
    }

    #[inline]
    pub fn without(self, e: usize) -> SetWord {
        SetWord(self.0 & !(1u64 << (e - 1)))
    }

    /// Elements in increasing order, 1-based.
    pub fn elements(self) -> Elements {
        Elements(self.0)
    }

    pub fn fits(self, n: usize) -> bool {
        self.0 & !low_mask(n) == 0
    }
}

impl fmt::Debug for SetWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (idx, e) in self.elements().enumerate() {
            if idx > 0 {
                f.write_str(",")?;
            }
            write!(f, "{e}")?;
        }
        f.write_str("}")
    }
}

pub struct Elements(u64);

impl Iterator for Elements {
    type Item = usize;

    #[inline]
    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let tz = self.0.trailing_zeros() as usize;
        self.0 &= self.0 - 1;
        Some(tz + 1)
    }
}

#[inline]
pub(crate) fn low_mask(m: usize) -> u64 {
    if m >= 64 {
        u64::MAX
    } else {
        (1u64 << m) - 1
    }
}

fn check_n(n: usize) -> Result<()> {
    if (1..=MAX_N).contains(&n) {
        Ok(())
    } else {
        Err(Error::GroundSetSize(n))
    }
}

/// All `k`-subsets of `[n]` in increasing mask order (Gosper's hack).
pub fn k_subsets(n: usize, k: usize) -> KSubsets {
    let next = if k > n || n > MAX_N {
        None
    } else {
        Some(low_mask(k) as u128)
    };
    KSubsets {
        limit: 1u128 << n,
        next,
    }
}

pub struct KSubsets {
    limit: u128,
    next: Option<u128>,
}

impl Iterator for KSubsets {
    type Item = SetWord;

    fn next(&mut self) -> Option<SetWord> {
        let cur = self.next?;
        if cur >= self.limit {
            self.next = None;
            return None;
        }
        self.next = if cur == 0 {
            None
        } else {
            let c = cur & cur.wrapping_neg();
            let r = cur + c;
            Some((((r ^ cur) >> 2) / c) | r)
        };
        Some(SetWord(cur as u64))
    }
}

/// A finite family of subsets of `[n]`, optionally `k`-uniform.
#[derive(Clone)]
pub struct Family {
    n: usize,
    members: Vec<SetWord>,
    uniformity: Option<usize>,
}

impl PartialEq for Family {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.members == other.members
    }
}

impl Eq for Family {}

impl std::hash::Hash for Family {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.n.hash(state);
        self.members.hash(state);
    }
}

impl fmt::Debug for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Family(n={}", self.n)?;
        if let Some(k) = self.uniformity {
            write!(f, ", k={k}")?;
        }
        write!(f, ") ")?;
        f.debug_list().entries(self.members.iter()).finish()
    }
}

impl Family {
    /// Validates and canonicalizes. Duplicates collapse; with `uniformity =
    /// Some(k)` every member must have exactly `k` elements.
    pub fn new<I>(n: usize, members: I, uniformity: Option<usize>) -> Result<Self>
    where
        I: IntoIterator<Item = SetWord>,
    {
        check_n(n)?;
        let mut members: Vec<SetWord> = members.into_iter().collect();
        for &m in &members {
            if !m.fits(n) {
                return Err(Error::NotSubset(m.bits()));
            }
            if let Some(k) = uniformity {
                if m.len() != k {
                    return Err(Error::Uniformity {
                        expected: k,
                        found: m.len(),
                    });
                }
            }
        }
        members.sort_unstable();
        members.dedup();
        Ok(Family {
            n,
            members,
            uniformity,
        })
    }

    pub fn uniform<I>(n: usize, k: usize, members: I) -> Result<Self>
    where
        I: IntoIterator<Item = SetWord>,
    {
        Self::new(n, members, Some(k))
    }

    pub fn mixed<I>(n: usize, members: I) -> Result<Self>
    where
        I: IntoIterator<Item = SetWord>,
    {
        Self::new(n, members, None)
    }

    /// Convenience constructor from element lists; uniformity is inferred when
    /// all sets share a size (an empty list gives a mixed empty family).
    pub fn from_sets<S: AsRef<[usize]>>(n: usize, sets: &[S]) -> Result<Self> {
        let members = sets
            .iter()
            .map(|s| SetWord::from_elements(s.as_ref().iter().map(|&e| e as i64), n))
            .collect::<Result<Vec<_>>>()?;
        let k = members.first().map(|m| m.len());
        let uniform = k.filter(|&k| members.iter().all(|m| m.len() == k));
        Self::new(n, members, uniform)
    }

    pub fn empty(n: usize, uniformity: Option<usize>) -> Result<Self> {
        Self::new(n, std::iter::empty(), uniformity)
    }

    /// `C([n], k)`.
    pub fn complete(n: usize, k: usize) -> Result<Self> {
        check_n(n)?;
        Ok(Family {
            n,
            members: k_subsets(n, k).collect(),
            uniformity: Some(k),
        })
    }

    /// Builds from members already known to be sorted, unique and in range.
    pub(crate) fn from_sorted_unchecked(
        n: usize,
        members: Vec<SetWord>,
        uniformity: Option<usize>,
    ) -> Self {
        debug_assert!(members.windows(2).all(|w| w[0] < w[1]));
        debug_assert!(members.iter().all(|m| m.fits(n)));
        Family {
            n,
            members,
            uniformity,
        }
    }

    /// Keeps the members satisfying `keep`, preserving uniformity.
    pub fn filter<P: FnMut(SetWord) -> bool>(&self, mut keep: P) -> Family {
        Family {
            n: self.n,
            members: self.members.iter().copied().filter(|&m| keep(m)).collect(),
            uniformity: self.uniformity,
        }
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn uniformity(&self) -> Option<usize> {
        self.uniformity
    }

    #[inline]
    pub fn members(&self) -> &[SetWord] {
        &self.members
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.members.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn iter(&self) -> std::iter::Copied<std::slice::Iter<'_, SetWord>> {
        self.members.iter().copied()
    }

    pub fn contains(&self, set: SetWord) -> bool {
        self.members.binary_search(&set).is_ok()
    }

    pub fn has_empty_member(&self) -> bool {
        self.members.first() == Some(&SetWord::EMPTY)
    }

    /// Multiset of member sizes: size -> count.
    pub fn size_profile(&self) -> BTreeMap<usize, usize> {
        let mut profile = BTreeMap::new();
        for m in &self.members {
            *profile.entry(m.len()).or_insert(0) += 1;
        }
        profile
    }

    pub fn union(&self, other: &Family) -> Result<Family> {
        if self.n != other.n {
            return Err(Error::InvalidParams(format!(
                "ground sets differ: {} vs {}",
                self.n, other.n
            )));
        }
        let uniformity = match (self.uniformity, other.uniformity) {
            (Some(x), Some(y)) if x == y => Some(x),
            _ => None,
        };
        Family::new(self.n, self.iter().chain(other.iter()), uniformity)
    }

    pub fn is_subfamily_of(&self, other: &Family) -> bool {
        self.iter().all(|m| other.contains(m))
    }

    /// `F(A)`: members containing `A`, with `A` removed.
    pub fn sub_family_link(&self, link: SetWord) -> Family {
        let members = self
            .iter()
            .filter(|m| link.is_subset_of(*m))
            .map(|m| m.difference(link))
            .collect::<Vec<_>>();
        // removing a common subset keeps the order
        Family {
            n: self.n,
            members,
            uniformity: self.uniformity.and_then(|k| k.checked_sub(link.len())),
        }
    }

    /// `F(B̄)`: members disjoint from `B`.
    pub fn sub_family_avoid(&self, avoid: SetWord) -> Family {
        self.filter(|m| !m.meets(avoid))
    }

    /// `F(A, B̄)`: members containing `A` and missing `B`, with `A` removed.
    pub fn sub_family_link_avoid(&self, link: SetWord, avoid: SetWord) -> Result<Family> {
        if link.meets(avoid) {
            return Err(Error::Overlap);
        }
        Ok(self.sub_family_avoid(avoid).sub_family_link(link))
    }

    /// `{F \ T : F ∈ F}`, deduplicated. May contain the empty set.
    pub fn restrict_trace(&self, erase: SetWord) -> Family {
        let mut members: Vec<SetWord> = self.iter().map(|m| m.difference(erase)).collect();
        members.sort_unstable();
        members.dedup();
        Family {
            n: self.n,
            members,
            uniformity: None,
        }
    }

    /// All `target`-subsets of `[n]` containing at least one member.
    pub fn upper_shadow(&self, target: usize) -> Result<Family> {
        let k = self
            .uniformity
            .ok_or_else(|| Error::InvalidParams("upper shadow needs a uniform family".into()))?;
        if target < k || target > self.n {
            return Err(Error::InvalidParams(format!(
                "shadow level {target} outside [{k}, {}]",
                self.n
            )));
        }
        let full = SetWord::prefix(self.n);
        let mut out = Vec::new();
        for m in self.iter() {
            let rest = full.difference(m);
            let free: Vec<usize> = rest.elements().collect();
            for pick in k_subsets(free.len(), target - k) {
                let mut s = m;
                for idx in pick.elements() {
                    s = s.with(free[idx - 1]);
                }
                out.push(s);
            }
        }
        out.sort_unstable();
        out.dedup();
        Ok(Family {
            n: self.n,
            members: out,
            uniformity: Some(target),
        })
    }

    pub fn is_intersecting(&self) -> bool {
        let m = &self.members;
        (0..m.len()).all(|i| (i..m.len()).all(|j| m[i].meets(m[j])))
    }

    /// Applies a relabeling `perm[e - 1] = image of e` (1-based images).
    pub fn relabel(&self, perm: &[usize]) -> Result<Family> {
        if perm.len() != self.n {
            return Err(Error::InvalidParams(
                "permutation length must equal n".into(),
            ));
        }
        let members = self.iter().map(|m| {
            m.elements()
                .fold(SetWord::EMPTY, |acc, e| acc.with(perm[e - 1]))
        });
        Family::new(self.n, members, self.uniformity)
    }

    /// Serializes to the v1 text format.
    pub fn to_text(&self) -> String {
        self.to_text_with_header(None)
    }

    /// Like [`Family::to_text`] with a leading `# ...` comment line.
    pub fn to_text_with_header(&self, header: Option<&str>) -> String {
        let mut out = String::new();
        if let Some(h) = header {
            out.push_str("# ");
            out.push_str(h);
            out.push('\n');
        }
        out.push_str(&format!("n={}\n", self.n));
        if let Some(k) = self.uniformity {
            out.push_str(&format!("k={k}\n"));
        }
        for m in &self.members {
            if m.is_empty() {
                out.push_str("{}");
            } else {
                let parts: Vec<String> = m.elements().map(|e| e.to_string()).collect();
                out.push_str(&parts.join(","));
            }
            out.push('\n');
        }
        out
    }

    /// Parses the v1 text format: `n=<int>`, optional `k=<int>`, then one set
    /// per line. Blank lines and `#` comments are skipped; `{}` is the empty set.
    pub fn from_text(text: &str) -> Result<Family> {
        let mut n: Option<usize> = None;
        let mut k: Option<usize> = None;
        let mut members = Vec::new();
        for (idx, raw) in text.lines().enumerate() {
            let line_no = idx + 1;
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let err = |msg: String| Error::Parse { line: line_no, msg };
            let Some(n_val) = n else {
                let v = line
                    .strip_prefix("n=")
                    .ok_or_else(|| err("expected `n=<int>`".into()))?;
                let v: usize = v.trim().parse().map_err(|e| err(format!("bad n: {e}")))?;
                check_n(v).map_err(|e| err(e.to_string()))?;
                n = Some(v);
                continue;
            };
            if let Some(v) = line.strip_prefix("k=") {
                if k.is_some() || !members.is_empty() {
                    return Err(err("`k=` must directly follow `n=`".into()));
                }
                k = Some(v.trim().parse().map_err(|e| err(format!("bad k: {e}")))?);
                continue;
            }
            let set = if line == "{}" {
                SetWord::EMPTY
            } else {
                let mut prev = 0i64;
                let mut elems = Vec::new();
                for tok in line.split(',') {
                    let e: i64 = tok
                        .trim()
                        .parse()
                        .map_err(|e| err(format!("bad element `{tok}`: {e}")))?;
                    if e <= prev {
                        return Err(err("elements must be strictly increasing".into()));
                    }
                    prev = e;
                    elems.push(e);
                }
                SetWord::from_elements(elems, n_val).map_err(|e| err(e.to_string()))?
            };
            members.push((line_no, set));
        }
        let n = n.ok_or(Error::Parse {
            line: 0,
            msg: "missing `n=` header".into(),
        })?;
        let mut sets: Vec<SetWord> = members.iter().map(|&(_, s)| s).collect();
        sets.sort_unstable();
        if let Some(w) = sets.windows(2).find(|w| w[0] == w[1]) {
            let line = members
                .iter()
                .rev()
                .find(|(_, s)| *s == w[0])
                .map_or(0, |p| p.0);
            return Err(Error::Parse {
                line,
                msg: format!("duplicate member {:?}", w[0]),
            });
        }
        Family::new(n, sets, k)
    }
}

/// `D_a(G)`: every `a`-subset of `[n]` meeting all members of `g`.
pub fn max_companion(g: &Family, a: usize) -> Result<Family> {
    let n = g.n();
    if a < 1 || a > n {
        return Err(Error::InvalidParams(format!("a={a} outside [1, {n}]")));
    }
    let members = k_subsets(n, a)
        .filter(|s| g.iter().all(|m| s.meets(m)))
        .collect();
    Ok(Family::from_sorted_unchecked(n, members, Some(a)))
}

/// An ordered pair `(F, G)` with `F` `a`-uniform and `G` `b`-uniform on `[n]`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct CrossPair {
    n: usize,
    a: usize,
    b: usize,
    f: Family,
    g: Family,
}

impl CrossPair {
    pub fn new(f: Family, g: Family) -> Result<Self> {
        if f.n() != g.n() {
            return Err(Error::InvalidParams(format!(
                "ground sets differ: {} vs {}",
                f.n(),
                g.n()
            )));
        }
        let (Some(a), Some(b)) = (f.uniformity(), g.uniformity()) else {
            return Err(Error::InvalidParams(
                "both sides of a pair must be uniform".into(),
            ));
        };
        if a < 1 || b < 1 {
            return Err(Error::InvalidParams("a and b must be at least 1".into()));
        }
        Ok(CrossPair {
            n: f.n(),
            a,
            b,
            f,
            g,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }
    pub fn a(&self) -> usize {
        self.a
    }
    pub fn b(&self) -> usize {
        self.b
    }
    pub fn f(&self) -> &Family {
        &self.f
    }
    pub fn g(&self) -> &Family {
        &self.g
    }

    pub fn total(&self) -> usize {
        self.f.len() + self.g.len()
    }

    pub fn into_parts(self) -> (Family, Family) {
        (self.f, self.g)
    }

    /// `F ∪ G` as one family (mixed when `a != b`).
    pub fn union(&self) -> Family {
        self.f.union(&self.g).expect("same ground set")
    }

    pub fn relabel(&self, perm: &[usize]) -> Result<CrossPair> {
        CrossPair::new(self.f.relabel(perm)?, self.g.relabel(perm)?)
    }
}

pub fn is_cross_intersecting(pair: &CrossPair) -> bool {
    families_cross_intersect(pair.f(), pair.g())
}

pub(crate) fn families_cross_intersect(f: &Family, g: &Family) -> bool {
    f.iter().all(|x| g.iter().all(|y| x.meets(y)))
}
