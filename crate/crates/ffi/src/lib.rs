//! C ABI over `crossfam`.
//!
//! Families and pairs are opaque heap handles released with their `_free`
//! function. Every call returns an [`XfStatus`]; on failure the message is
//! available from [`xf_last_error`] on the same thread. Strings returned
//! through `char **` out-parameters are owned by the caller and released with
//! [`xf_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use crossfam::constructions::{NamedFamily, Params, Realized, Tag};
use crossfam::count::{Formula, FormulaArgs};
use crossfam::search::{
    max_cross_sum_with, max_intersecting_with_tau, ConstraintSpec, SearchConfig, SearchReport,
    TauConstraint,
};
use crossfam::shifting::{compress_pair, compress_to_initial, is_initial};
use crossfam::transversal::tau;
use crossfam::{is_cross_intersecting, CrossPair, Error, Family, SetWord};

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum XfStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    InvalidArgument = 3,
    Parse = 4,
    TooLarge = 5,
    NotCrossIntersecting = 6,
    Contradictory = 7,
    FormMismatch = 8,
    /// A panic was caught at the boundary.
    Internal = 9,
}

/// Opaque family handle.
pub struct XfFamily {
    inner: Family,
}

/// Opaque cross-intersecting pair handle.
pub struct XfCrossPair {
    inner: CrossPair,
}

/// Covering-number constraints for [`xf_search_cross_sum`].
#[repr(C)]
#[derive(Clone, Copy, Debug)]
pub struct XfConstraint {
    pub f_value: u32,
    /// Nonzero: `τ(F)` must equal `f_value`; zero: at least.
    pub f_exact: u8,
    pub g_value: u32,
    pub g_exact: u8,
    /// Nonzero: only initial families.
    pub initial_only: u8,
}

/// Search options; a null pointer means defaults.
#[repr(C)]
#[derive(Clone, Copy, Debug)]
pub struct XfSearchOptions {
    pub force: u8,
    /// Worker threads; 0 uses the global pool.
    pub threads: u32,
    /// Nonzero: omit `nodes` and `elapsed_ms` from the JSON.
    pub stable: u8,
}

/// Construction parameters; 0 marks a parameter as absent.
#[repr(C)]
#[derive(Clone, Copy, Debug, Default)]
pub struct XfParams {
    pub n: u32,
    pub a: u32,
    pub b: u32,
    pub t: u32,
    pub s: u32,
    pub k: u32,
    pub i: u32,
}

pub const XF_ARG_N: u32 = 1;
pub const XF_ARG_A: u32 = 2;
pub const XF_ARG_B: u32 = 4;
pub const XF_ARG_T: u32 = 8;
pub const XF_ARG_S: u32 = 16;
pub const XF_ARG_K: u32 = 32;

/// Formula arguments; `present` is an OR of `XF_ARG_*` bits.
#[repr(C)]
#[derive(Clone, Copy, Debug, Default)]
pub struct XfCountArgs {
    pub n: i64,
    pub a: i64,
    pub b: i64,
    pub t: i64,
    pub s: i64,
    pub k: i64,
    pub present: u32,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

struct Failure(XfStatus, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let status = match &e {
            Error::Parse { .. } | Error::Grid(_) => XfStatus::Parse,
            Error::TooLarge(_) => XfStatus::TooLarge,
            Error::NotCrossIntersecting => XfStatus::NotCrossIntersecting,
            Error::Contradictory(_) => XfStatus::Contradictory,
            Error::FormMismatch { .. } => XfStatus::FormMismatch,
            _ => XfStatus::InvalidArgument,
        };
        Failure(status, e.to_string())
    }
}

type Outcome = Result<(), Failure>;

fn set_error(msg: Option<String>) {
    LAST_ERROR.with(|slot| {
        *slot.borrow_mut() = msg.map(|m| CString::new(m.replace('\0', " ")).expect("no nul"));
    });
}

/// Runs `body`, records any failure and maps it to a status.
fn guard<F: FnOnce() -> Outcome>(body: F) -> XfStatus {
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(Ok(())) => {
            set_error(None);
            XfStatus::Ok
        }
        Ok(Err(Failure(status, msg))) => {
            set_error(Some(msg));
            status
        }
        Err(_) => {
            set_error(Some("internal panic".into()));
            XfStatus::Internal
        }
    }
}

fn null(what: &str) -> Failure {
    Failure(XfStatus::NullPointer, format!("{what} is null"))
}

unsafe fn deref<'a, T>(p: *const T, what: &str) -> Result<&'a T, Failure> {
    p.as_ref().ok_or_else(|| null(what))
}

unsafe fn out<'a, T>(p: *mut T, what: &str) -> Result<&'a mut T, Failure> {
    p.as_mut().ok_or_else(|| null(what))
}

unsafe fn utf8<'a>(p: *const c_char, what: &str) -> Result<&'a str, Failure> {
    if p.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| Failure(XfStatus::InvalidUtf8, format!("{what} is not UTF-8")))
}

fn owned_string(s: String) -> Result<*mut c_char, Failure> {
    CString::new(s)
        .map(CString::into_raw)
        .map_err(|_| Failure(XfStatus::Internal, "string contains nul".into()))
}

fn boxed_family(f: Family) -> *mut XfFamily {
    Box::into_raw(Box::new(XfFamily { inner: f }))
}

fn boxed_pair(p: CrossPair) -> *mut XfCrossPair {
    Box::into_raw(Box::new(XfCrossPair { inner: p }))
}

/// Message of the last failed call on this thread, or null. Valid until the
/// next call on this thread.
#[no_mangle]
pub extern "C" fn xf_last_error() -> *const c_char {
    LAST_ERROR.with(|slot| slot.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Library version as a static string.
#[no_mangle]
pub extern "C" fn xf_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// # Safety
/// `s` must come from this library or be null.
#[no_mangle]
pub unsafe extern "C" fn xf_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parses the family text format.
///
/// # Safety
/// `text` must be a nul-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn xf_family_from_text(
    text: *const c_char,
    out_family: *mut *mut XfFamily,
) -> XfStatus {
    guard(|| {
        let slot = out(out_family, "out_family")?;
        let f = Family::from_text(utf8(text, "text")?)?;
        *slot = boxed_family(f);
        Ok(())
    })
}

/// Builds a family from member bitmasks (element `e` is bit `e-1`).
/// `k < 0` leaves the family non-uniform.
///
/// # Safety
/// `masks` must point to `len` values (or be null with `len == 0`).
#[no_mangle]
pub unsafe extern "C" fn xf_family_from_masks(
    n: u32,
    k: i32,
    masks: *const u64,
    len: usize,
    out_family: *mut *mut XfFamily,
) -> XfStatus {
    guard(|| {
        let slot = out(out_family, "out_family")?;
        let words: &[u64] = if len == 0 {
            &[]
        } else if masks.is_null() {
            return Err(null("masks"));
        } else {
            std::slice::from_raw_parts(masks, len)
        };
        let n = n as usize;
        let members = words.iter().map(|&m| SetWord::from_bits(m));
        let f = if k < 0 {
            Family::mixed(n, members)?
        } else {
            Family::uniform(n, k as usize, members)?
        };
        *slot = boxed_family(f);
        Ok(())
    })
}

/// # Safety
/// `family` must be a live handle; `out_text` must be writable.
#[no_mangle]
pub unsafe extern "C" fn xf_family_to_text(
    family: *const XfFamily,
    out_text: *mut *mut c_char,
) -> XfStatus {
    guard(|| {
        let slot = out(out_text, "out_text")?;
        *slot = owned_string(deref(family, "family")?.inner.to_text())?;
        Ok(())
    })
}

/// # Safety
/// `family` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn xf_family_len(family: *const XfFamily, out_len: *mut usize) -> XfStatus {
    guard(|| {
        *out(out_len, "out_len")? = deref(family, "family")?.inner.len();
        Ok(())
    })
}

/// # Safety
/// `family` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn xf_family_n(family: *const XfFamily, out_n: *mut u32) -> XfStatus {
    guard(|| {
        *out(out_n, "out_n")? = deref(family, "family")?.inner.n() as u32;
        Ok(())
    })
}

/// Bitmask of member `index` in sorted order.
///
/// # Safety
/// `family` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn xf_family_get(
    family: *const XfFamily,
    index: usize,
    out_mask: *mut u64,
) -> XfStatus {
    guard(|| {
        let f = &deref(family, "family")?.inner;
        let m = f.members().get(index).ok_or_else(|| {
            Failure(
                XfStatus::InvalidArgument,
                format!("index {index} out of range (len {})", f.len()),
            )
        })?;
        *out(out_mask, "out_mask")? = m.bits();
        Ok(())
    })
}

/// # Safety
/// `family` must be null or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn xf_family_free(family: *mut XfFamily) {
    if !family.is_null() {
        drop(Box::from_raw(family));
    }
}

/// Covering number.
///
/// # Safety
/// `family` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn xf_family_tau(family: *const XfFamily, out_tau: *mut usize) -> XfStatus {
    guard(|| {
        let t = tau(&deref(family, "family")?.inner)?;
        *out(out_tau, "out_tau")? = t;
        Ok(())
    })
}

/// # Safety
/// `family` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn xf_family_is_initial(
    family: *const XfFamily,
    out_flag: *mut u8,
) -> XfStatus {
    guard(|| {
        *out(out_flag, "out_flag")? = is_initial(&deref(family, "family")?.inner) as u8;
        Ok(())
    })
}

/// Left-compresses to an initial family; the result is a new handle.
///
/// # Safety
/// `family` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn xf_family_compress(
    family: *const XfFamily,
    out_family: *mut *mut XfFamily,
) -> XfStatus {
    guard(|| {
        let slot = out(out_family, "out_family")?;
        let (f, _) = compress_to_initial(&deref(family, "family")?.inner);
        *slot = boxed_family(f);
        Ok(())
    })
}

/// Pairs two uniform families (copied); fails unless cross-intersecting.
///
/// # Safety
/// `f` and `g` must be live handles.
#[no_mangle]
pub unsafe extern "C" fn xf_pair_new(
    f: *const XfFamily,
    g: *const XfFamily,
    out_pair: *mut *mut XfCrossPair,
) -> XfStatus {
    guard(|| {
        let slot = out(out_pair, "out_pair")?;
        let p = CrossPair::new(deref(f, "f")?.inner.clone(), deref(g, "g")?.inner.clone())?;
        if !is_cross_intersecting(&p) {
            return Err(Error::NotCrossIntersecting.into());
        }
        *slot = boxed_pair(p);
        Ok(())
    })
}

/// Copy of the `F` side.
///
/// # Safety
/// `pair` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn xf_pair_f(
    pair: *const XfCrossPair,
    out_family: *mut *mut XfFamily,
) -> XfStatus {
    guard(|| {
        let slot = out(out_family, "out_family")?;
        *slot = boxed_family(deref(pair, "pair")?.inner.f().clone());
        Ok(())
    })
}

/// Copy of the `G` side.
///
/// # Safety
/// `pair` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn xf_pair_g(
    pair: *const XfCrossPair,
    out_family: *mut *mut XfFamily,
) -> XfStatus {
    guard(|| {
        let slot = out(out_family, "out_family")?;
        *slot = boxed_family(deref(pair, "pair")?.inner.g().clone());
        Ok(())
    })
}

/// `|F| + |G|`.
///
/// # Safety
/// `pair` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn xf_pair_total(
    pair: *const XfCrossPair,
    out_total: *mut usize,
) -> XfStatus {
    guard(|| {
        *out(out_total, "out_total")? = deref(pair, "pair")?.inner.total();
        Ok(())
    })
}

/// Compresses both sides with shared shifts; the result is a new handle.
///
/// # Safety
/// `pair` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn xf_pair_compress(
    pair: *const XfCrossPair,
    out_pair: *mut *mut XfCrossPair,
) -> XfStatus {
    guard(|| {
        let slot = out(out_pair, "out_pair")?;
        *slot = boxed_pair(compress_pair(&deref(pair, "pair")?.inner)?);
        Ok(())
    })
}

/// # Safety
/// `pair` must be null or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn xf_pair_free(pair: *mut XfCrossPair) {
    if !pair.is_null() {
        drop(Box::from_raw(pair));
    }
}

fn params(p: &XfParams) -> Params {
    let opt = |v: u32| (v != 0).then_some(v as usize);
    Params {
        n: opt(p.n),
        a: opt(p.a),
        b: opt(p.b),
        t: opt(p.t),
        s: opt(p.s),
        k: opt(p.k),
        i: opt(p.i),
    }
}

/// Builds a named construction. Single families are returned through
/// `out_family`, pairs through `out_pair`; the other out-pointer is set to
/// null. Either out-pointer may be null if that kind is not expected.
///
/// # Safety
/// `tag` must be a nul-terminated string and `p` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn xf_construct(
    tag: *const c_char,
    p: *const XfParams,
    out_family: *mut *mut XfFamily,
    out_pair: *mut *mut XfCrossPair,
) -> XfStatus {
    guard(|| {
        let tag: Tag = utf8(tag, "tag")?.parse()?;
        let named = NamedFamily::build(tag, params(deref(p, "params")?))?;
        if let Some(slot) = out_family.as_mut() {
            *slot = ptr::null_mut();
        }
        if let Some(slot) = out_pair.as_mut() {
            *slot = ptr::null_mut();
        }
        match named.realized {
            Realized::Single(f) => *out(out_family, "out_family")? = boxed_family(f),
            Realized::Pair(pr) => *out(out_pair, "out_pair")? = boxed_pair(pr),
        }
        Ok(())
    })
}

/// Evaluates a named closed form exactly; the result is a decimal string.
///
/// # Safety
/// `formula` must be a nul-terminated string and `args` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn xf_count(
    formula: *const c_char,
    args: *const XfCountArgs,
    out_decimal: *mut *mut c_char,
) -> XfStatus {
    guard(|| {
        let slot = out(out_decimal, "out_decimal")?;
        let formula: Formula = utf8(formula, "formula")?.parse()?;
        let a = deref(args, "args")?;
        let pick = |bit: u32, v: i64| (a.present & bit != 0).then_some(v);
        let fargs = FormulaArgs {
            n: pick(XF_ARG_N, a.n),
            a: pick(XF_ARG_A, a.a),
            b: pick(XF_ARG_B, a.b),
            t: pick(XF_ARG_T, a.t),
            s: pick(XF_ARG_S, a.s),
            k: pick(XF_ARG_K, a.k),
        };
        *slot = owned_string(formula.eval(&fargs)?.to_string())?;
        Ok(())
    })
}

fn config(opts: Option<&XfSearchOptions>) -> (SearchConfig, bool) {
    let mut cfg = SearchConfig::default();
    let mut stable = false;
    if let Some(o) = opts {
        cfg.force = o.force != 0;
        cfg.threads = (o.threads != 0).then_some(o.threads as usize);
        stable = o.stable != 0;
    }
    (cfg, stable)
}

fn report_json(r: &SearchReport, stable: bool) -> Result<*mut c_char, Failure> {
    let v = if stable { r.stable_json() } else { r.to_json() };
    owned_string(v.to_string())
}

/// Exhaustive search for the largest `|F| + |G|`; writes the JSON report.
///
/// # Safety
/// `spec` must be valid; `opts` may be null.
#[no_mangle]
pub unsafe extern "C" fn xf_search_cross_sum(
    n: u32,
    a: u32,
    b: u32,
    spec: *const XfConstraint,
    opts: *const XfSearchOptions,
    out_json: *mut *mut c_char,
) -> XfStatus {
    guard(|| {
        let slot = out(out_json, "out_json")?;
        let c = deref(spec, "spec")?;
        let side = |v: u32, exact: u8| {
            if exact != 0 {
                TauConstraint::Exactly(v as usize)
            } else {
                TauConstraint::AtLeast(v as usize)
            }
        };
        let spec = ConstraintSpec {
            f: side(c.f_value, c.f_exact),
            g: side(c.g_value, c.g_exact),
            initial_only: c.initial_only != 0,
        };
        let (cfg, stable) = config(opts.as_ref());
        let r = max_cross_sum_with(n as usize, a as usize, b as usize, spec, &cfg)?;
        *slot = report_json(&r, stable)?;
        Ok(())
    })
}

/// Largest intersecting `k`-uniform family on `[n]` with `τ >= s`.
///
/// # Safety
/// `opts` may be null; `out_json` must be writable.
#[no_mangle]
pub unsafe extern "C" fn xf_search_intersecting(
    n: u32,
    k: u32,
    s: u32,
    opts: *const XfSearchOptions,
    out_json: *mut *mut c_char,
) -> XfStatus {
    guard(|| {
        let slot = out(out_json, "out_json")?;
        let (cfg, stable) = config(opts.as_ref());
        let r = max_intersecting_with_tau(n as usize, k as usize, s as usize, &cfg)?;
        *slot = report_json(&r, stable)?;
        Ok(())
    })
}
