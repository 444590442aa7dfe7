//! C ABI for partlab.
//!
//! Every function returns a [`PlStatus`]; results come back through out
//! pointers. Objects are opaque handles released with their `_free` function,
//! strings handed out by the library are released with [`pl_string_free`].
//! On failure [`pl_last_error_message`] describes the error on the calling thread.

use std::cell::RefCell;
use std::ffi::{c_char, c_int, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use partlab::hltree::{search_hl, tstar, verify_hl, HlCertificate, LevelColoring, SearchBudget, SearchOutcome};
use partlab::ordinals::Ordinal;
use partlab::seqtree::FiniteTree;
use partlab::similarity::{h_of_n, SplitReading};
use partlab::walks::{d_color, walk, WalkTrace, WitnessColorings};

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PlStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    ParseError = 3,
    CapExceeded = 4,
    NotFound = 5,
    VerificationFailed = 6,
    Internal = 7,
}

/// An ordinal below ω^ω.
pub struct PlOrdinal(Ordinal);

/// A walk trace.
pub struct PlWalk(WalkTrace);

/// A finite 0/1 tree.
pub struct PlTree(FiniteTree);

/// A coloring of level sets of the full binary tree.
pub struct PlColoring(LevelColoring);

/// Witness colorings for the walk colorings.
pub struct PlWitnesses(WitnessColorings);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

struct Fail(PlStatus, String);

impl Fail {
    fn null(what: &str) -> Self {
        Fail(PlStatus::NullPointer, format!("{what} is null"))
    }

    fn arg(e: impl ToString) -> Self {
        Fail(PlStatus::InvalidArgument, e.to_string())
    }

    fn parse(e: impl ToString) -> Self {
        Fail(PlStatus::ParseError, e.to_string())
    }
}

fn set_error(msg: Option<String>) {
    let c = msg.map(|m| CString::new(m.replace('\0', " ")).expect("no interior nul"));
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

fn guard(f: impl FnOnce() -> Result<(), Fail>) -> PlStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            set_error(None);
            PlStatus::Ok
        }
        Ok(Err(Fail(status, msg))) => {
            set_error(Some(msg));
            status
        }
        Err(p) => {
            let msg = p
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| p.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "panic".into());
            set_error(Some(format!("internal error: {msg}")));
            PlStatus::Internal
        }
    }
}

unsafe fn get<'a, T>(p: *const T, what: &str) -> Result<&'a T, Fail> {
    p.as_ref().ok_or_else(|| Fail::null(what))
}

unsafe fn put<T>(out: *mut T, v: T, what: &str) -> Result<(), Fail> {
    if out.is_null() {
        return Err(Fail::null(what));
    }
    out.write(v);
    Ok(())
}

unsafe fn text<'a>(s: *const c_char, what: &str) -> Result<&'a str, Fail> {
    if s.is_null() {
        return Err(Fail::null(what));
    }
    CStr::from_ptr(s).to_str().map_err(|e| Fail::parse(format!("{what}: {e}")))
}

fn boxed<T>(v: T) -> *mut T {
    Box::into_raw(Box::new(v))
}

fn c_string(s: String) -> Result<*mut c_char, Fail> {
    CString::new(s).map(CString::into_raw).map_err(|e| Fail(PlStatus::Internal, e.to_string()))
}

unsafe fn free<T>(p: *mut T) {
    if !p.is_null() {
        let _ = catch_unwind(AssertUnwindSafe(|| drop(Box::from_raw(p))));
    }
}

/// Message for the last failed call on this thread, or null after a success.
/// The pointer stays valid until the next call into the library on this thread.
#[no_mangle]
pub extern "C" fn pl_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// # Safety
/// `s` is null or a string returned by this library and not yet freed.
#[no_mangle]
pub unsafe extern "C" fn pl_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parse an ordinal such as `w^2+w*3+1`.
///
/// # Safety
/// `text` is a nul-terminated string; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn pl_ordinal_parse(text: *const c_char, out: *mut *mut PlOrdinal) -> PlStatus {
    guard(|| {
        let s = self::text(text, "text")?;
        let o: Ordinal = s.parse().map_err(Fail::parse)?;
        put(out, boxed(PlOrdinal(o)), "out")
    })
}

/// # Safety
/// `o` is a live ordinal handle; `out` is writable. Free the result with [`pl_string_free`].
#[no_mangle]
pub unsafe extern "C" fn pl_ordinal_to_string(o: *const PlOrdinal, out: *mut *mut c_char) -> PlStatus {
    guard(|| {
        let o = get(o, "ordinal")?;
        put(out, c_string(o.0.to_string())?, "out")
    })
}

/// Writes -1, 0 or 1 to `out`.
///
/// # Safety
/// `a` and `b` are live ordinal handles; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn pl_ordinal_compare(a: *const PlOrdinal, b: *const PlOrdinal, out: *mut c_int) -> PlStatus {
    guard(|| {
        let (a, b) = (get(a, "a")?, get(b, "b")?);
        put(out, a.0.cmp(&b.0) as c_int, "out")
    })
}

/// # Safety
/// `o` is null or a handle from this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn pl_ordinal_free(o: *mut PlOrdinal) {
    free(o)
}

/// The walk from `beta` down to `alpha`.
///
/// # Safety
/// `beta` and `alpha` are live ordinal handles; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn pl_walk_new(beta: *const PlOrdinal, alpha: *const PlOrdinal, out: *mut *mut PlWalk) -> PlStatus {
    guard(|| {
        let t = walk(&get(beta, "beta")?.0, &get(alpha, "alpha")?.0).map_err(Fail::arg)?;
        put(out, boxed(PlWalk(t)), "out")
    })
}

/// The index `k` of the last step.
///
/// # Safety
/// `w` is a live walk handle; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn pl_walk_length(w: *const PlWalk, out: *mut usize) -> PlStatus {
    guard(|| put(out, get(w, "walk")?.0.k(), "out"))
}

/// `γ⁺_step` as a new ordinal handle.
///
/// # Safety
/// `w` is a live walk handle; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn pl_walk_gamma_plus(w: *const PlWalk, step: usize, out: *mut *mut PlOrdinal) -> PlStatus {
    guard(|| {
        let t = &get(w, "walk")?.0;
        let g = t.gamma_plus.get(step).ok_or_else(|| Fail::arg(format!("step {step} exceeds k = {}", t.k())))?;
        put(out, boxed(PlOrdinal(g.clone())), "out")
    })
}

/// `γ⁻_step` as a new ordinal handle.
///
/// # Safety
/// `w` is a live walk handle; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn pl_walk_gamma_minus(w: *const PlWalk, step: usize, out: *mut *mut PlOrdinal) -> PlStatus {
    guard(|| {
        let t = &get(w, "walk")?.0;
        let g = t.gamma_minus.get(step).ok_or_else(|| Fail::arg(format!("step {step} exceeds k = {}", t.k())))?;
        put(out, boxed(PlOrdinal(g.clone())), "out")
    })
}

/// # Safety
/// `w` is null or a handle from this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn pl_walk_free(w: *mut PlWalk) {
    free(w)
}

/// Witness colorings from their JSON form.
///
/// # Safety
/// `json` is a nul-terminated string; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn pl_witnesses_from_json(json: *const c_char, out: *mut *mut PlWitnesses) -> PlStatus {
    guard(|| {
        let w = WitnessColorings::from_json(text(json, "json")?).map_err(Fail::parse)?;
        put(out, boxed(PlWitnesses(w)), "out")
    })
}

/// Seeded witness colorings with `colors` colors.
///
/// # Safety
/// `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn pl_witnesses_seeded(seed: u64, colors: u32, out: *mut *mut PlWitnesses) -> PlStatus {
    guard(|| {
        if colors == 0 {
            return Err(Fail::arg("colors must be positive"));
        }
        put(out, boxed(PlWitnesses(WitnessColorings::seeded(seed, colors))), "out")
    })
}

/// # Safety
/// `w` is null or a handle from this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn pl_witnesses_free(w: *mut PlWitnesses) {
    free(w)
}

/// `d` on the strictly decreasing tuple `alphas[0] > … > alphas[len-1]`, `len ≥ 3`.
///
/// # Safety
/// `alphas` points to `len` live ordinal handles; `w` is live; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn pl_d_color(
    alphas: *const *const PlOrdinal,
    len: usize,
    w: *const PlWitnesses,
    out: *mut u32,
) -> PlStatus {
    guard(|| {
        if alphas.is_null() {
            return Err(Fail::null("alphas"));
        }
        let a: Vec<Ordinal> = std::slice::from_raw_parts(alphas, len)
            .iter()
            .map(|&p| get(p, "alpha").map(|o| o.0.clone()))
            .collect::<Result<_, _>>()?;
        let e = d_color(&a, &get(w, "witnesses")?.0).map_err(Fail::arg)?;
        put(out, e.color, "out")
    })
}

/// The census count `h(n)` under the default reading.
///
/// # Safety
/// `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn pl_h_of_n(n: usize, out: *mut u64) -> PlStatus {
    guard(|| put(out, h_of_n(n, SplitReading::default()).map_err(Fail::arg)?, "out"))
}

/// The tree `T*_k`.
///
/// # Safety
/// `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn pl_tstar(k: u32, out: *mut *mut PlTree) -> PlStatus {
    guard(|| put(out, boxed(PlTree(tstar(k).map_err(Fail::arg)?)), "out"))
}

/// # Safety
/// `t` is a live tree handle; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn pl_tree_node_count(t: *const PlTree, out: *mut usize) -> PlStatus {
    guard(|| put(out, get(t, "tree")?.0.node_count(), "out"))
}

/// `{"depth":D,"levels":[[...],...]}`.
///
/// # Safety
/// `t` is a live tree handle; `out` is writable. Free the result with [`pl_string_free`].
#[no_mangle]
pub unsafe extern "C" fn pl_tree_to_json(t: *const PlTree, out: *mut *mut c_char) -> PlStatus {
    guard(|| put(out, c_string(get(t, "tree")?.0.to_json())?, "out"))
}

/// # Safety
/// `t` is null or a handle from this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn pl_tree_free(t: *mut PlTree) {
    free(t)
}

/// A level coloring from its JSON form.
///
/// # Safety
/// `json` is a nul-terminated string; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn pl_coloring_from_json(json: *const c_char, out: *mut *mut PlColoring) -> PlStatus {
    guard(|| {
        let d = LevelColoring::from_json(text(json, "json")?).map_err(Fail::parse)?;
        put(out, boxed(PlColoring(d)), "out")
    })
}

/// A seeded coloring of `arity`-sets of levels `0..=depth`.
///
/// # Safety
/// `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn pl_coloring_seeded(
    seed: u64,
    arity: usize,
    colors: u32,
    depth: usize,
    out: *mut *mut PlColoring,
) -> PlStatus {
    guard(|| {
        let d = LevelColoring::from_seed(seed, arity, colors, depth).map_err(Fail::arg)?;
        put(out, boxed(PlColoring(d)), "out")
    })
}

/// # Safety
/// `d` is null or a handle from this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn pl_coloring_free(d: *mut PlColoring) {
    free(d)
}

/// Search for a certificate with `m` common split levels. On success the
/// certificate JSON is written to `out`; `PL_STATUS_NOT_FOUND` and
/// `PL_STATUS_CAP_EXCEEDED` report the other outcomes. `max_nodes = 0` uses
/// the default budget.
///
/// # Safety
/// `d` is a live coloring handle; `out` is writable. Free the result with [`pl_string_free`].
#[no_mangle]
pub unsafe extern "C" fn pl_hl_search(
    d: *const PlColoring,
    m: usize,
    max_nodes: u64,
    out: *mut *mut c_char,
) -> PlStatus {
    guard(|| {
        let d = &get(d, "coloring")?.0;
        if out.is_null() {
            return Err(Fail::null("out"));
        }
        let budget = if max_nodes == 0 { SearchBudget::default() } else { SearchBudget { nodes: max_nodes } };
        match search_hl(d, m, budget).map_err(Fail::arg)? {
            SearchOutcome::Found(c) => put(out, c_string(c.to_json())?, "out"),
            SearchOutcome::Exhausted => Err(Fail(PlStatus::NotFound, "no certificate exists".into())),
            SearchOutcome::CapExceeded => Err(Fail(PlStatus::CapExceeded, "node budget exhausted".into())),
        }
    })
}

/// Check a certificate against `d`. A failing certificate gives
/// `PL_STATUS_VERIFICATION_FAILED` with the counterexample in the error message.
///
/// # Safety
/// `d` is a live coloring handle; `cert_json` is a nul-terminated string.
#[no_mangle]
pub unsafe extern "C" fn pl_hl_verify(d: *const PlColoring, cert_json: *const c_char) -> PlStatus {
    guard(|| {
        let d = &get(d, "coloring")?.0;
        let c = HlCertificate::from_json(text(cert_json, "cert_json")?).map_err(Fail::parse)?;
        match verify_hl(d, &c).map_err(Fail::arg)?.witness() {
            None => Ok(()),
            Some(f) => Err(Fail(PlStatus::VerificationFailed, serde_json::to_string(f).expect("plain data"))),
        }
    })
}
