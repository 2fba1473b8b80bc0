//! Exact evaluation of closed-form sizes, bounds and inequalities.
//!
//! All arithmetic is on arbitrary-precision integers. `C(n, k)` is zero
//! outside `0 <= k <= n`, including for negative `n`; several sums below rely
//! on those terms vanishing.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type BigCount = BigInt;

pub fn binomial(n: i64, k: i64) -> BigCount {
    if n < 0 || k < 0 || k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc *= n - i;
        acc /= i + 1;
    }
    acc
}

fn sign(i: i64) -> i64 {
    if i % 2 == 0 {
        1
    } else {
        -1
    }
}

fn nonneg(what: &str, vals: &[(&str, i64)]) -> Result<()> {
    for (name, v) in vals {
        if *v < 0 {
            return Err(Error::InvalidParams(format!(
                "{what}: {name}={v} is negative"
            )));
        }
    }
    Ok(())
}

fn require(cond: bool, msg: impl FnOnce() -> String) -> Result<()> {
    if cond {
        Ok(())
    } else {
        Err(Error::InvalidParams(msg()))
    }
}

/// `|M^t(n,a,b)|` summed over the partition by `P ⊆ B'`.
pub fn size_mt_partition(n: i64, a: i64, b: i64, t: i64) -> BigCount {
    let mut total = binomial(n - t, a - t);
    for l in 1..=t {
        let top = a - t + l;
        let mut part = binomial(n - t, top);
        for i in 1..=l {
            part += sign(i) * binomial(l, i) * binomial(n - t - i * (b - 1), top);
        }
        total += binomial(t, l) * part;
    }
    total + t
}

/// `C(n,a) + Σ_{i=1..t} (-1)^i C(t,i) C(n-ib,a) + t`.
pub fn size_mt_alternating(n: i64, a: i64, b: i64, t: i64) -> BigCount {
    alternating_core(n, a, b, t) + t
}

fn alternating_core(n: i64, a: i64, b: i64, t: i64) -> BigCount {
    let mut total = binomial(n, a);
    for i in 1..=t {
        total += sign(i) * binomial(t, i) * binomial(n - i * b, a);
    }
    total
}

/// `|M^t(n,a,b)|`, evaluated both ways; disagreement is an error.
pub fn size_mt(n: i64, a: i64, b: i64, t: i64) -> Result<BigCount> {
    nonneg("size_mt", &[("n", n), ("a", a), ("b", b), ("t", t)])?;
    let first = size_mt_partition(n, a, b, t);
    let second = size_mt_alternating(n, a, b, t);
    if first != second {
        return Err(Error::FormMismatch {
            what: format!("|M^t({n},{a},{b},{t})|"),
            first: first.to_string(),
            second: second.to_string(),
        });
    }
    Ok(first)
}

/// `|H^t(n,a,b)|`.
pub fn size_ht(n: i64, a: i64, b: i64, t: i64) -> Result<BigCount> {
    nonneg("size_ht", &[("n", n), ("a", a), ("b", b), ("t", t)])?;
    let p = b + t - 1;
    let mut total = binomial(n, a);
    for i in 0..t {
        total -= binomial(p, i) * binomial(n - p, a - i);
    }
    Ok(total + binomial(p, b))
}

/// `|H_s^t(n,a,b)|`.
///
/// F-part members are grouped by their least element `j` of `[1,s]`; the rest
/// of such a member lies outside `[1,j]` and needs `t-1` further elements of
/// `[j+1, b+t-1]`. The G-part is `{B : [1,s] ⊆ B}` joined with `C([b+t-1], b)`.
pub fn size_hst(n: i64, a: i64, b: i64, t: i64, s: i64) -> Result<BigCount> {
    nonneg(
        "size_hst",
        &[("n", n), ("a", a), ("b", b), ("t", t), ("s", s)],
    )?;
    let p = b + t - 1;
    let mut total = BigInt::zero();
    for j in 1..=s {
        total += binomial(n - j, a - 1);
        for i in 0..=t - 2 {
            total -= binomial(p - j, i) * binomial(n - p, a - 1 - i);
        }
    }
    Ok(total + binomial(n - s, b - s) + binomial(p, b) - binomial(p - s, b - s))
}

/// The maximum of `|F| + |G|` under `τ(F) >= 1`, `τ(G) >= t`. Always equal to
/// [`size_mt`]; the equality is checked on every call.
pub fn bound_1t(n: i64, a: i64, b: i64, t: i64) -> Result<BigCount> {
    nonneg("bound_1t", &[("n", n), ("a", a), ("b", b), ("t", t)])?;
    let bound = alternating_core(n, a, b, t) + t;
    let size = size_mt(n, a, b, t)?;
    if bound != size {
        return Err(Error::FormMismatch {
            what: format!("bound_1t({n},{a},{b},{t}) vs |M^t|"),
            first: bound.to_string(),
            second: size.to_string(),
        });
    }
    Ok(bound)
}

/// The maximum under `τ(F) = s`, `τ(G) >= t`.
pub fn bound_st(n: i64, a: i64, b: i64, t: i64, s: i64) -> Result<BigCount> {
    nonneg(
        "bound_st",
        &[("n", n), ("a", a), ("b", b), ("t", t), ("s", s)],
    )?;
    let mut total = BigInt::zero();
    for i in 1..=s {
        total += binomial(n - i, a - 1);
        for j in 1..t {
            total += sign(j) * binomial(t - 1, j) * binomial(n - j * b - i, a - 1);
        }
    }
    Ok(total + binomial(n - s, b - s) + t - 1)
}

/// `C(n,b) - C(n-a,b) + 1`.
pub fn bound_small_a(n: i64, a: i64, b: i64) -> BigCount {
    binomial(n, b) - binomial(n - a, b) + 1
}

/// `C(n-1,k-1)`: largest intersecting family.
pub fn m1(n: i64, k: i64) -> BigCount {
    binomial(n - 1, k - 1)
}

/// `C(n-1,k-1) - C(n-k-1,k-1) + 1`: largest intersecting family with `τ >= 2`.
pub fn m2(n: i64, k: i64) -> BigCount {
    binomial(n - 1, k - 1) - binomial(n - k - 1, k - 1) + 1
}

/// Largest intersecting family with `τ >= 3` (the size of `G(n,k)`).
pub fn bound_cover3(n: i64, k: i64) -> BigCount {
    binomial(n - 1, k - 1) - binomial(n - k, k - 1) - binomial(n - k - 1, k - 1)
        + binomial(n - 2 * k, k - 1)
        + binomial(n - k - 2, k - 3)
        + 3
}

/// `(⌊k!(e-1)⌋, k^k)`. The floor is `Σ_{i=1..k} k!/i!`: the remaining tail
/// of the series lies strictly between 0 and 1.
pub fn erdos_lovasz(k: u32) -> (BigCount, BigCount) {
    let mut lower = BigInt::zero();
    let mut term = BigInt::one(); // k!/k!
    for i in (1..=k).rev() {
        lower += &term;
        term *= i;
    }
    (lower, BigInt::from(k).pow(k))
}

pub fn fot_lower(k: u32) -> BigCount {
    if k == 0 {
        return BigInt::one();
    }
    if k.is_multiple_of(2) {
        BigInt::from(k / 2 + 1).pow(k - 1)
    } else {
        let e = (k - 1) / 2;
        BigInt::from(k.div_ceil(2) + 1).pow(e) * BigInt::from(k.div_ceil(2)).pow(e)
    }
}

/// A closed form selectable by name.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Formula {
    Mt,
    MtPartition,
    MtAlternating,
    Ht,
    Hst,
    Bound1t,
    BoundSt,
    BoundSmallA,
    M1,
    M2,
    Cover3,
    Binomial,
    /// `⌊k!(e-1)⌋`, the lower end of [`erdos_lovasz`].
    ErdosLovasz,
    FotLower,
}

/// Arguments for [`Formula::eval`]; each formula reads the ones it needs.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct FormulaArgs {
    pub n: Option<i64>,
    pub a: Option<i64>,
    pub b: Option<i64>,
    pub t: Option<i64>,
    pub s: Option<i64>,
    pub k: Option<i64>,
}

impl Formula {
    pub const ALL: [Formula; 14] = [
        Formula::Mt,
        Formula::MtPartition,
        Formula::MtAlternating,
        Formula::Ht,
        Formula::Hst,
        Formula::Bound1t,
        Formula::BoundSt,
        Formula::BoundSmallA,
        Formula::M1,
        Formula::M2,
        Formula::Cover3,
        Formula::Binomial,
        Formula::ErdosLovasz,
        Formula::FotLower,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Formula::Mt => "mt",
            Formula::MtPartition => "mt-partition",
            Formula::MtAlternating => "mt-alternating",
            Formula::Ht => "ht",
            Formula::Hst => "hst",
            Formula::Bound1t => "bound-1t",
            Formula::BoundSt => "bound-st",
            Formula::BoundSmallA => "bound-small-a",
            Formula::M1 => "m1",
            Formula::M2 => "m2",
            Formula::Cover3 => "cover3",
            Formula::Binomial => "binomial",
            Formula::ErdosLovasz => "erdos-lovasz",
            Formula::FotLower => "fot-lower",
        }
    }

    pub fn eval(self, args: &FormulaArgs) -> Result<BigCount> {
        let get = |name: &str, v: Option<i64>| {
            v.ok_or_else(|| Error::InvalidParams(format!("{} needs {name}", self.name())))
        };
        let n = || get("n", args.n);
        let a = || get("a", args.a);
        let b = || get("b", args.b);
        let t = || get("t", args.t);
        let s = || get("s", args.s);
        let k = || get("k", args.k);
        let exp = || {
            k().and_then(|k| {
                u32::try_from(k)
                    .map_err(|_| Error::InvalidParams(format!("k={k} must be nonnegative")))
            })
        };
        Ok(match self {
            Formula::Mt => size_mt(n()?, a()?, b()?, t()?)?,
            Formula::MtPartition => size_mt_partition(n()?, a()?, b()?, t()?),
            Formula::MtAlternating => size_mt_alternating(n()?, a()?, b()?, t()?),
            Formula::Ht => size_ht(n()?, a()?, b()?, t()?)?,
            Formula::Hst => size_hst(n()?, a()?, b()?, t()?, s()?)?,
            Formula::Bound1t => bound_1t(n()?, a()?, b()?, t()?)?,
            Formula::BoundSt => bound_st(n()?, a()?, b()?, t()?, s()?)?,
            Formula::BoundSmallA => bound_small_a(n()?, a()?, b()?),
            Formula::M1 => m1(n()?, k()?),
            Formula::M2 => m2(n()?, k()?),
            Formula::Cover3 => bound_cover3(n()?, k()?),
            Formula::Binomial => binomial(n()?, k()?),
            Formula::ErdosLovasz => erdos_lovasz(exp()?).0,
            Formula::FotLower => fot_lower(exp()?),
        })
    }
}

impl std::str::FromStr for Formula {
    type Err = Error;

    /// Case-insensitive, ignoring `-` and `_`.
    fn from_str(s: &str) -> Result<Formula> {
        let squash = |x: &str| {
            x.chars()
                .filter(|c| *c != '-' && *c != '_')
                .flat_map(char::to_lowercase)
                .collect::<String>()
        };
        let key = squash(s);
        Formula::ALL
            .into_iter()
            .find(|f| squash(f.name()) == key)
            .ok_or_else(|| Error::InvalidParams(format!("unknown formula `{s}`")))
    }
}

/// One evaluated inequality or identity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SlackReport {
    pub check: &'static str,
    pub params: Vec<(&'static str, i64)>,
    pub lhs: BigCount,
    pub rhs: BigCount,
    pub slack: BigCount,
    /// `Some(true)`: equality claimed here; `Some(false)`: strict inequality
    /// claimed; `None`: no claim either way.
    pub equality_predicted: Option<bool>,
    pub equality_observed: bool,
}

impl SlackReport {
    pub fn new(
        check: &'static str,
        params: Vec<(&'static str, i64)>,
        lhs: BigCount,
        rhs: BigCount,
        equality_predicted: Option<bool>,
    ) -> Self {
        let slack = &lhs - &rhs;
        let equality_observed = slack.is_zero();
        SlackReport {
            check,
            params,
            lhs,
            rhs,
            slack,
            equality_predicted,
            equality_observed,
        }
    }

    pub fn slack_nonnegative(&self) -> bool {
        !self.slack.is_negative()
    }

    pub fn equality_matches(&self) -> bool {
        self.equality_predicted
            .is_none_or(|p| p == self.equality_observed)
    }

    pub fn passed(&self) -> bool {
        self.slack_nonnegative() && self.equality_matches()
    }

    pub fn params_string(&self) -> String {
        self.params
            .iter()
            .map(|(k, v)| format!("{k}={v}"))
            .collect::<Vec<_>>()
            .join(",")
    }
}

/// `C(n,q) - C(n-p,q) = Σ_{i=1..p} C(n-i,q-1)`, for `0 <= p <= n`.
pub fn check_identity_binomial(n: i64, p: i64, q: i64) -> Result<SlackReport> {
    require(0 <= p && p <= n, || {
        format!("identity needs 0 <= p <= n, got p={p}, n={n}")
    })?;
    let lhs = binomial(n, q) - binomial(n - p, q);
    let rhs: BigInt = (1..=p).map(|i| binomial(n - i, q - 1)).sum();
    Ok(SlackReport::new(
        "identity",
        vec![("n", n), ("p", p), ("q", q)],
        lhs,
        rhs,
        Some(true),
    ))
}

/// `C(n-i,k) >= ((n-k-(i-1)) / (n-(i-1)))^i C(n,k)`, cross-multiplied by the
/// positive denominator `(n-i+1)^i` so both sides stay integral.
pub fn check_cnie(n: i64, k: i64, i: i64) -> Result<SlackReport> {
    require(n >= 1 && k >= 1 && i >= 0, || {
        format!("cnie needs n,k >= 1 and i >= 0, got ({n},{k},{i})")
    })?;
    let denom = n - i + 1;
    require(denom > 0, || {
        format!("cnie needs n-(i-1) > 0, got ({n},{k},{i})")
    })?;
    let exp = i as u32;
    let lhs = binomial(n - i, k) * BigInt::from(denom).pow(exp);
    let rhs = BigInt::from(n - k - i + 1).pow(exp) * binomial(n, k);
    Ok(SlackReport::new(
        "cnie",
        vec![("n", n), ("k", k), ("i", i)],
        lhs,
        rhs,
        None,
    ))
}

/// `C(n,a) - 2C(n-b,a) + C(n-2b,a) + 2 >= C(n,b)`, equality iff `n = a+b` or
/// `b = 1, a = 3`.
pub fn check_qlecnie2(n: i64, a: i64, b: i64) -> Result<SlackReport> {
    require(b >= 1 && a >= b + 2 && n >= a + b, || {
        format!("qlecnie2 needs b >= 1, a >= b+2, n >= a+b, got ({n},{a},{b})")
    })?;
    let lhs = binomial(n, a) - 2 * binomial(n - b, a) + binomial(n - 2 * b, a) + 2;
    Ok(SlackReport::new(
        "qlecnie2",
        vec![("n", n), ("a", a), ("b", b)],
        lhs,
        binomial(n, b),
        Some(n == a + b || (b == 1 && a == 3)),
    ))
}

/// The case split behind `|G| <= |M^t|` when `F` is empty: at `n = a+b`,
/// `|M^t| = C(a+b,a)`; for `b = 1`, `|M^t(n,a,1)| >= n`; otherwise
/// `C(n,a) + Σ (-1)^i C(t,i) C(n-ib,a) >= C(n,b)`.
pub fn check_snsi(n: i64, a: i64, b: i64, t: i64) -> Result<SlackReport> {
    require(t >= 2 && b >= 1 && a >= b + t && n >= a + b, || {
        format!("snsi needs t >= 2, b >= 1, a >= b+t, n >= a+b, got ({n},{a},{b},{t})")
    })?;
    let params = vec![("n", n), ("a", a), ("b", b), ("t", t)];
    let report = if n == a + b {
        SlackReport::new(
            "snsi",
            params,
            size_mt(n, a, b, t)?,
            binomial(n, a),
            Some(true),
        )
    } else if b == 1 {
        SlackReport::new("snsi", params, size_mt(n, a, b, t)?, BigInt::from(n), None)
    } else {
        SlackReport::new(
            "snsi",
            params,
            alternating_core(n, a, b, t),
            binomial(n, b),
            None,
        )
    };
    Ok(report)
}

/// `|H^t(n,a,b)| <= |M^t(n,a,b)|`, equality claimed iff `n = a+b` or `b = 1`.
pub fn check_icip1(n: i64, a: i64, b: i64, t: i64) -> Result<SlackReport> {
    require(t >= 1 && b >= 1 && a >= t && n >= t * b, || {
        format!("icip1 needs t,b >= 1, a >= t, n >= tb, got ({n},{a},{b},{t})")
    })?;
    Ok(SlackReport::new(
        "icip1",
        vec![("n", n), ("a", a), ("b", b), ("t", t)],
        size_mt(n, a, b, t)?,
        size_ht(n, a, b, t)?,
        Some(n == a + b || b == 1),
    ))
}

/// `|H^t(n,a,b)| > C(n,b)`, claimed strict.
pub fn check_icile(n: i64, a: i64, b: i64, t: i64) -> Result<SlackReport> {
    require(t >= 2 && b >= 1 && a >= b + t && n >= a + b, || {
        format!("icile needs t >= 2, b >= 1, a >= b+t, n >= a+b, got ({n},{a},{b},{t})")
    })?;
    Ok(SlackReport::new(
        "icile",
        vec![("n", n), ("a", a), ("b", b), ("t", t)],
        size_ht(n, a, b, t)?,
        binomial(n, b),
        Some(false),
    ))
}
