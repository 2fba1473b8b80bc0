//! Named extremal families, with disjoint blocks placed as consecutive intervals.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::family::{k_subsets, max_companion, CrossPair, Family, SetWord};

fn invalid(msg: String) -> Error {
    Error::InvalidParams(msg)
}

fn check_ground(n: usize) -> Result<()> {
    if n == 0 || n > crate::family::MAX_N {
        return Err(Error::GroundSetSize(n));
    }
    Ok(())
}

/// All `k`-sets containing `i`.
pub fn star(n: usize, k: usize, i: usize) -> Result<Family> {
    check_ground(n)?;
    if k < 1 || k > n || i < 1 || i > n {
        return Err(invalid(format!(
            "star needs 1 <= k, i <= n, got n={n}, k={k}, i={i}"
        )));
    }
    Family::uniform(n, k, k_subsets(n, k).filter(|m| m.contains(i)))
}

/// `{F : 1 ∈ F, F ∩ [2,k+1] ≠ ∅} ∪ {[2,k+1]}`.
pub fn hilton_milner(n: usize, k: usize) -> Result<Family> {
    check_ground(n)?;
    if k < 2 || n <= 2 * k {
        return Err(invalid(format!(
            "hilton_milner needs n > 2k >= 4, got n={n}, k={k}"
        )));
    }
    let block = SetWord::interval(2, k + 1);
    let members = k_subsets(n, k).filter(|&m| (m.contains(1) && m.meets(block)) || m == block);
    Family::uniform(n, k, members)
}

/// `{F : |F ∩ [3]| >= 2}`, the second extremal family for `τ >= 2` at `k = 3`.
///
/// Requiring `1 ∈ F` as well would leave a subfamily of a star, with `τ = 1`.
pub fn triangle(n: usize, k: usize) -> Result<Family> {
    check_ground(n)?;
    if k < 2 || k > n || n < 3 {
        return Err(invalid(format!(
            "triangle needs 2 <= k <= n, n >= 3, got n={n}, k={k}"
        )));
    }
    let tri = SetWord::prefix(3);
    let members = k_subsets(n, k).filter(|&m| m.intersection(tri).len() >= 2);
    Family::uniform(n, k, members)
}

/// The three non-star members `[2,k+1]`, `{2} ∪ [k+2,2k]`, `{3} ∪ [k+2,2k]`.
fn frankl_blocks(k: usize) -> [SetWord; 3] {
    let tail = SetWord::interval(k + 2, 2 * k);
    [SetWord::interval(2, k + 1), tail.with(2), tail.with(3)]
}

/// `G(n,k)`: the three blocks plus every `k`-set through 1 meeting all of them.
pub fn frankl_g(n: usize, k: usize) -> Result<Family> {
    check_ground(n)?;
    if k < 3 || n < 2 * k {
        return Err(invalid(format!(
            "frankl_g needs n >= 2k, k >= 3, got n={n}, k={k}"
        )));
    }
    let blocks = frankl_blocks(k);
    let members = k_subsets(n, k)
        .filter(|&m| (m.contains(1) && blocks.iter().all(|&b| m.meets(b))) || blocks.contains(&m));
    Family::uniform(n, k, members)
}

fn pair_from_g(g: Family, a: usize) -> Result<CrossPair> {
    let f = max_companion(&g, a)?;
    CrossPair::new(f, g)
}

fn check_sizes(n: usize, a: usize, b: usize) -> Result<()> {
    check_ground(n)?;
    if a < 1 || b < 1 || a > n || b > n {
        return Err(invalid(format!(
            "need 1 <= a, b <= n, got n={n}, a={a}, b={b}"
        )));
    }
    Ok(())
}

/// `M^t(n,a,b)`: `G = {B_1, …, B_t}` with `B_i = [(i-1)b+1, ib]`, `F = D_a(G)`.
pub fn construct_mt(n: usize, a: usize, b: usize, t: usize) -> Result<CrossPair> {
    check_sizes(n, a, b)?;
    if t < 1 || t > a || t * b > n {
        return Err(invalid(format!(
            "M^t needs 1 <= t <= a and tb <= n, got n={n}, a={a}, b={b}, t={t}"
        )));
    }
    let blocks = (1..=t).map(|i| SetWord::interval((i - 1) * b + 1, i * b));
    pair_from_g(Family::uniform(n, b, blocks)?, a)
}

/// `M_s^t(n,a,b)`: `G` is every `b`-set containing `[1,s]` together with the
/// blocks `D_i = [s+(i-1)b+1, s+ib]`, `i < t`; `F = D_a(G)`.
pub fn construct_mst(n: usize, a: usize, b: usize, t: usize, s: usize) -> Result<CrossPair> {
    check_sizes(n, a, b)?;
    if t < 1 || s < 1 || s > b || s + (t - 1) * b > n {
        return Err(invalid(format!(
            "M_s^t needs t >= 1, 1 <= s <= b, s+(t-1)b <= n, got n={n}, a={a}, b={b}, t={t}, s={s}"
        )));
    }
    let head = SetWord::prefix(s);
    let mut members: Vec<SetWord> = k_subsets(n, b).filter(|m| head.is_subset_of(*m)).collect();
    members.extend((1..t).map(|i| SetWord::interval(s + (i - 1) * b + 1, s + i * b)));
    pair_from_g(Family::uniform(n, b, members)?, a)
}

fn check_ht(n: usize, a: usize, b: usize, t: usize) -> Result<()> {
    check_sizes(n, a, b)?;
    if t < 1 || t > a || b + t - 1 > n {
        return Err(invalid(format!(
            "H^t needs 1 <= t <= a and b+t-1 <= n, got n={n}, a={a}, b={b}, t={t}"
        )));
    }
    Ok(())
}

/// `H^t(n,a,b)`: `F = {A : |A ∩ [b+t-1]| >= t}`, `G = C([b+t-1], b)`.
pub fn construct_ht(n: usize, a: usize, b: usize, t: usize) -> Result<CrossPair> {
    check_ht(n, a, b, t)?;
    let core = SetWord::prefix(b + t - 1);
    let f = Family::uniform(
        n,
        a,
        k_subsets(n, a).filter(|m| m.intersection(core).len() >= t),
    )?;
    let g = Family::uniform(n, b, k_subsets(b + t - 1, b))?;
    CrossPair::new(f, g)
}

/// `H_s^t(n,a,b)`: as `H^t` with `F` restricted to sets meeting `[1,s]` and
/// every `b`-set containing `[1,s]` added to `G`.
pub fn construct_hst(n: usize, a: usize, b: usize, t: usize, s: usize) -> Result<CrossPair> {
    check_ht(n, a, b, t)?;
    if s < 1 || s > b {
        return Err(invalid(format!(
            "H_s^t needs 1 <= s <= b, got s={s}, b={b}"
        )));
    }
    let core = SetWord::prefix(b + t - 1);
    let head = SetWord::prefix(s);
    let f = Family::uniform(
        n,
        a,
        k_subsets(n, a).filter(|m| m.meets(head) && m.intersection(core).len() >= t),
    )?;
    let g = Family::uniform(
        n,
        b,
        k_subsets(n, b).filter(|m| head.is_subset_of(*m) || m.is_subset_of(core)),
    )?;
    CrossPair::new(f, g)
}

/// The pair `B' = {B : B ∩ [1,t] ≠ ∅}`, `A' = D_a(B')` that beats `M^t` for
/// large `n` once `a <= b+t-2`.
pub fn star_union_pair(n: usize, a: usize, b: usize, t: usize) -> Result<CrossPair> {
    check_sizes(n, a, b)?;
    if t < 1 || t > n {
        return Err(invalid(format!("need 1 <= t <= n, got t={t}, n={n}")));
    }
    let head = SetWord::prefix(t);
    let g = Family::uniform(n, b, k_subsets(n, b).filter(|m| m.meets(head)))?;
    pair_from_g(g, a)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Tag {
    Star,
    HiltonMilner,
    Triangle,
    FranklG,
    Mt,
    Mst,
    Ht,
    Hst,
    CompleteUniform,
}

impl Tag {
    pub const ALL: [Tag; 9] = [
        Tag::Star,
        Tag::HiltonMilner,
        Tag::Triangle,
        Tag::FranklG,
        Tag::Mt,
        Tag::Mst,
        Tag::Ht,
        Tag::Hst,
        Tag::CompleteUniform,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Tag::Star => "star",
            Tag::HiltonMilner => "hilton-milner",
            Tag::Triangle => "triangle",
            Tag::FranklG => "frankl-g",
            Tag::Mt => "mt",
            Tag::Mst => "mst",
            Tag::Ht => "ht",
            Tag::Hst => "hst",
            Tag::CompleteUniform => "complete",
        }
    }

    pub fn is_pair(self) -> bool {
        matches!(self, Tag::Mt | Tag::Mst | Tag::Ht | Tag::Hst)
    }
}

impl fmt::Display for Tag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Tag {
    type Err = Error;

    /// Case-insensitive; `-` and `_` are ignored, so `Mt`, `hilton_milner`
    /// and `HiltonMilner` all parse.
    fn from_str(s: &str) -> Result<Tag> {
        let squash = |x: &str| {
            x.chars()
                .filter(|c| *c != '-' && *c != '_')
                .flat_map(char::to_lowercase)
                .collect::<String>()
        };
        let wanted = squash(s);
        Tag::ALL
            .into_iter()
            .find(|t| squash(t.name()) == wanted)
            .ok_or_else(|| invalid(format!("unknown construction {s:?}")))
    }
}

/// Parameters shared by all constructions; each uses a subset.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Params {
    pub n: Option<usize>,
    pub a: Option<usize>,
    pub b: Option<usize>,
    pub t: Option<usize>,
    pub s: Option<usize>,
    pub k: Option<usize>,
    pub i: Option<usize>,
}

impl Params {
    fn get(&self, tag: Tag, name: &str, v: Option<usize>) -> Result<usize> {
        v.ok_or_else(|| invalid(format!("{tag} needs parameter {name}")))
    }

    fn listed(&self) -> Vec<(&'static str, usize)> {
        [
            ("n", self.n),
            ("a", self.a),
            ("b", self.b),
            ("t", self.t),
            ("s", self.s),
            ("k", self.k),
            ("i", self.i),
        ]
        .into_iter()
        .filter_map(|(k, v)| v.map(|v| (k, v)))
        .collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Realized {
    Single(Family),
    Pair(CrossPair),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NamedFamily {
    pub tag: Tag,
    pub params: Params,
    pub realized: Realized,
}

impl NamedFamily {
    pub fn build(tag: Tag, params: Params) -> Result<NamedFamily> {
        let p = &params;
        let n = p.get(tag, "n", p.n)?;
        let realized = match tag {
            Tag::Star => Realized::Single(star(n, p.get(tag, "k", p.k)?, p.i.unwrap_or(1))?),
            Tag::HiltonMilner => Realized::Single(hilton_milner(n, p.get(tag, "k", p.k)?)?),
            Tag::Triangle => Realized::Single(triangle(n, p.get(tag, "k", p.k)?)?),
            Tag::FranklG => Realized::Single(frankl_g(n, p.get(tag, "k", p.k)?)?),
            Tag::CompleteUniform => Realized::Single(Family::complete(n, p.get(tag, "k", p.k)?)?),
            _ => {
                let a = p.get(tag, "a", p.a)?;
                let b = p.get(tag, "b", p.b)?;
                let t = p.get(tag, "t", p.t)?;
                Realized::Pair(match tag {
                    Tag::Mt => construct_mt(n, a, b, t)?,
                    Tag::Ht => construct_ht(n, a, b, t)?,
                    Tag::Mst => construct_mst(n, a, b, t, p.get(tag, "s", p.s)?)?,
                    _ => construct_hst(n, a, b, t, p.get(tag, "s", p.s)?)?,
                })
            }
        };
        Ok(NamedFamily {
            tag,
            params,
            realized,
        })
    }

    /// `tag=<name> params=n=7,a=4,...`, used as the family-file header.
    pub fn header(&self) -> String {
        let params = self
            .params
            .listed()
            .iter()
            .map(|(k, v)| format!("{k}={v}"))
            .collect::<Vec<_>>()
            .join(",");
        format!("tag={} params={}", self.tag, params)
    }

    pub fn total(&self) -> usize {
        match &self.realized {
            Realized::Single(f) => f.len(),
            Realized::Pair(p) => p.total(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::family::is_cross_intersecting;
    use crate::shifting::is_initial;
    use crate::transversal::tau;

    fn binom(n: usize, k: usize) -> usize {
        if k > n {
            return 0;
        }
        (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
    }

    #[test]
    fn star_examples() {
        assert_eq!(star(5, 2, 1).unwrap().len(), 4);
        assert_eq!(
            star(4, 4, 1).unwrap(),
            Family::from_sets(4, &[[1, 2, 3, 4]]).unwrap()
        );
        let s = star(6, 3, 2).unwrap();
        assert_eq!(s.len(), 10);
        assert!(s.iter().all(|m| m.contains(2)));
        assert!(star(4, 2, 5).is_err());
        assert!(star(4, 5, 1).is_err());
    }

    #[test]
    fn hilton_milner_examples() {
        let h = hilton_milner(7, 3).unwrap();
        assert_eq!(h.len(), 13);
        assert_eq!(tau(&h).unwrap(), 2);
        assert!(h.is_intersecting());
        assert_eq!(hilton_milner(9, 4).unwrap().len(), 53);
        assert!(hilton_milner(6, 3).is_err());
        assert!(hilton_milner(5, 1).is_err());
    }

    #[test]
    fn triangle_examples() {
        let k = triangle(7, 3).unwrap();
        assert_eq!(k.len(), 13);
        assert_eq!(k.len(), hilton_milner(7, 3).unwrap().len());
        let through_one = k.filter(|m| m.contains(1));
        assert_eq!(through_one.len(), 9);
        assert_eq!(tau(&through_one).unwrap(), 1);
        assert!(k.is_intersecting());
        assert_eq!(tau(&k).unwrap(), 2);
    }

    #[test]
    fn frankl_g_examples() {
        let g = frankl_g(15, 7).unwrap();
        assert_eq!(g.len(), 2986);
        assert!(g.is_intersecting());
        assert_eq!(tau(&g).unwrap(), 3);
        assert_eq!(g.iter().filter(|m| !m.contains(1)).count(), 3);
        assert!(frankl_g(9, 5).is_err());
    }

    #[test]
    fn mt_examples() {
        let p = construct_mt(7, 4, 2, 2).unwrap();
        assert_eq!(p.total(), 27);
        assert_eq!(tau(p.g()).unwrap(), 2);
        assert!(tau(p.f()).unwrap() >= 1);
        assert_eq!(construct_mt(7, 4, 2, 3).unwrap().total(), 23);
        for (n, a, t) in [(7, 4, 2), (8, 3, 3), (6, 5, 1)] {
            assert_eq!(
                construct_mt(n, a, 1, t).unwrap().total(),
                binom(n - t, a - t) + t
            );
        }
        assert!(construct_mt(5, 3, 2, 3).is_err());
    }

    #[test]
    fn mst_examples() {
        let p = construct_mst(7, 4, 2, 2, 1).unwrap();
        assert_eq!((p.f().len(), p.g().len()), (16, 7));
        assert_eq!(p.total(), 23);
        assert_eq!(tau(p.f()).unwrap(), 1);
        assert!(tau(p.g()).unwrap() >= 2);
        assert!(is_cross_intersecting(&p));
        assert!(construct_mst(7, 4, 2, 2, 3).is_err());
        assert!(construct_mst(4, 2, 2, 3, 1).is_err());
    }

    #[test]
    fn ht_examples() {
        let p = construct_ht(7, 4, 2, 2).unwrap();
        assert_eq!((p.f().len(), p.g().len()), (22, 3));
        assert!(is_initial(p.g()) && is_initial(p.f()));
        assert_eq!(tau(p.g()).unwrap(), 2);
    }

    #[test]
    fn hst_examples() {
        let p = construct_hst(7, 4, 2, 2, 1).unwrap();
        assert_eq!((p.f().len(), p.g().len()), (16, 7));
        assert!(is_initial(p.f()) && is_initial(p.g()));
        for (n, a, b, t) in [(7, 4, 2, 2), (9, 5, 3, 2), (8, 4, 2, 3)] {
            assert_eq!(
                construct_hst(n, a, b, t, b).unwrap().total(),
                construct_ht(n, a, b, t).unwrap().total()
            );
        }
    }

    #[test]
    fn every_pair_cross_intersects() {
        for (n, a, b, t) in [(7, 4, 2, 2), (8, 5, 2, 3), (9, 4, 3, 2), (6, 3, 3, 1)] {
            assert!(is_cross_intersecting(&construct_mt(n, a, b, t).unwrap()));
            assert!(is_cross_intersecting(&construct_ht(n, a, b, t).unwrap()));
            for s in 1..=b {
                if s + (t - 1) * b <= n {
                    assert!(is_cross_intersecting(
                        &construct_mst(n, a, b, t, s).unwrap()
                    ));
                }
                assert!(is_cross_intersecting(
                    &construct_hst(n, a, b, t, s).unwrap()
                ));
            }
        }
    }

    #[test]
    fn star_union_beats_mt_for_small_a() {
        // a = 3 <= b+t-2 = 3
        let n = 12;
        let mt = construct_mt(n, 3, 2, 3).unwrap();
        let su = star_union_pair(n, 3, 2, 3).unwrap();
        assert!(is_cross_intersecting(&su));
        assert!(su.total() > mt.total());
    }

    #[test]
    fn named_family_roundtrip() {
        let params = Params {
            n: Some(7),
            a: Some(4),
            b: Some(2),
            t: Some(2),
            ..Params::default()
        };
        let named = NamedFamily::build(Tag::Mt, params).unwrap();
        assert_eq!(named.total(), 27);
        assert_eq!(named.header(), "tag=mt params=n=7,a=4,b=2,t=2");
        assert!(NamedFamily::build(Tag::Mst, params).is_err());
        for tag in Tag::ALL {
            assert_eq!(tag.name().parse::<Tag>().unwrap(), tag);
        }
        assert_eq!("Mt".parse::<Tag>().unwrap(), Tag::Mt);
        assert_eq!("HiltonMilner".parse::<Tag>().unwrap(), Tag::HiltonMilner);
        assert!("nope".parse::<Tag>().is_err());
    }
}
