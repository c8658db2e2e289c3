//! C ABI over the dpgeom learners.
//!
//! Objects cross the boundary as opaque handles created by `dpg_*_new`,
//! `dpg_*_from_*`, `dpg_learn` or `dpg_arrangement_build` and released with
//! the matching `dpg_*_free`. Every fallible call returns a [`DpgStatus`];
//! on failure `dpg_last_error` returns a description of the most recent
//! error on the calling thread.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use dpgeom::arrangement::{self, Arrangement};
use dpgeom::concepts::{ExampleRef, GridPoint, GridSpec, HypothesisExpr, LabeledSample};
use dpgeom::error::Error;
use dpgeom::formats;
use dpgeom::learners::{self, ConceptClass, LearnOptions, TaskSpec};
use dpgeom::rng::SeedPath;

/// Result codes.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DpgStatus {
    DpgOk = 0,
    DpgNullPointer = 1,
    DpgInvalidArgument = 2,
    DpgKindMismatch = 3,
    DpgResource = 4,
    DpgParse = 5,
    DpgIo = 6,
    DpgUnsatisfiable = 7,
    DpgInternal = 8,
    DpgPanic = 9,
}

/// Concept classes accepted by [`dpg_learn`].
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DpgClass {
    DpgConj = 0,
    DpgDisj = 1,
    DpgConvexKgon = 2,
    DpgKUnionGon = 3,
}

impl From<DpgClass> for ConceptClass {
    fn from(c: DpgClass) -> Self {
        match c {
            DpgClass::DpgConj => ConceptClass::Conj,
            DpgClass::DpgDisj => ConceptClass::Disj,
            DpgClass::DpgConvexKgon => ConceptClass::ConvexKgon,
            DpgClass::DpgKUnionGon => ConceptClass::KUnionGon,
        }
    }
}

/// Labeled sample handle.
pub struct DpgSample {
    inner: LabeledSample,
}

/// Learned hypothesis handle.
pub struct DpgHypothesis {
    inner: HypothesisExpr,
}

/// Dual arrangement handle.
pub struct DpgArrangement {
    inner: Arrangement,
}

/// Parameters of [`dpg_learn`].
#[repr(C)]
#[derive(Debug, Clone, Copy)]
pub struct DpgLearnParams {
    pub class_: DpgClass,
    pub k: usize,
    /// Grid resolution, or the variable count for Boolean classes.
    pub d: u32,
    pub alpha: f64,
    pub beta: f64,
    pub epsilon: f64,
    pub delta: f64,
    pub seed: u64,
    /// Ordered-triple cap for unions of polygons; 0 selects the default.
    pub triple_cap: u64,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).expect("nul bytes removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn status_of(e: &Error) -> DpgStatus {
    match e {
        Error::Parameter(_) => DpgStatus::DpgInvalidArgument,
        Error::Kind(_) => DpgStatus::DpgKindMismatch,
        Error::Resource(_) => DpgStatus::DpgResource,
        Error::Parse(_) => DpgStatus::DpgParse,
        Error::Io { .. } => DpgStatus::DpgIo,
        Error::Unsatisfiable(_) => DpgStatus::DpgUnsatisfiable,
        Error::Internal(_) => DpgStatus::DpgInternal,
    }
}

struct Fail(DpgStatus, String);

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        Fail(status_of(&e), e.to_string())
    }
}

fn null(what: &str) -> Fail {
    Fail(DpgStatus::DpgNullPointer, format!("{what} is null"))
}

fn guard(f: impl FnOnce() -> Result<(), Fail>) -> DpgStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => DpgStatus::DpgOk,
        Ok(Err(Fail(s, m))) => {
            set_error(m);
            s
        }
        Err(_) => {
            set_error("panic inside dpgeom".into());
            DpgStatus::DpgPanic
        }
    }
}

unsafe fn slice<'a, T>(p: *const T, n: usize, what: &str) -> Result<&'a [T], Fail> {
    if n == 0 {
        return Ok(&[]);
    }
    if p.is_null() {
        return Err(null(what));
    }
    Ok(std::slice::from_raw_parts(p, n))
}

unsafe fn cstr<'a>(p: *const c_char, what: &str) -> Result<&'a str, Fail> {
    if p.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(p).to_str().map_err(|_| Fail(DpgStatus::DpgInvalidArgument, format!("{what} is not UTF-8")))
}

unsafe fn out<T>(dst: *mut *mut T, v: T) -> Result<(), Fail> {
    if dst.is_null() {
        return Err(null("output pointer"));
    }
    *dst = Box::into_raw(Box::new(v));
    Ok(())
}

fn labels(raw: &[u8]) -> Result<Vec<bool>, Fail> {
    raw.iter()
        .map(|&l| match l {
            0 => Ok(false),
            1 => Ok(true),
            _ => Err(Fail(DpgStatus::DpgInvalidArgument, "labels must be 0 or 1".into())),
        })
        .collect()
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn dpg_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Copy of the calling thread's last error message, or NULL when there is
/// none. Release it with [`dpg_string_free`].
#[no_mangle]
pub extern "C" fn dpg_last_error() -> *mut c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null_mut(), |c| c.clone().into_raw()))
}

/// # Safety
/// `s` must be NULL or a string returned by this library and not yet freed.
#[no_mangle]
pub unsafe extern "C" fn dpg_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Grid sample of `n` points `(xs[i], ys[i])` with 0/1 `labels`.
///
/// # Safety
/// The three arrays must hold `n` readable elements; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn dpg_sample_new_grid(
    d: u32,
    xs: *const u32,
    ys: *const u32,
    labels_: *const u8,
    n: usize,
    out_sample: *mut *mut DpgSample,
) -> DpgStatus {
    guard(|| {
        let grid = GridSpec::new(d)?;
        let (xs, ys) = (slice(xs, n, "xs")?, slice(ys, n, "ys")?);
        let ls = labels(slice(labels_, n, "labels")?)?;
        let pts = xs.iter().zip(ys).map(|(&x, &y)| GridPoint::new(x, y)).collect();
        out(out_sample, DpgSample { inner: LabeledSample::grid(grid, pts, ls)? })
    })
}

/// Boolean sample of `n` rows; `bits` is row-major with `vars` 0/1 bytes per
/// row.
///
/// # Safety
/// `bits` must hold `n * vars` bytes and `labels` `n` bytes; `out` must be
/// writable.
#[no_mangle]
pub unsafe extern "C" fn dpg_sample_new_bool(
    vars: usize,
    bits: *const u8,
    labels_: *const u8,
    n: usize,
    out_sample: *mut *mut DpgSample,
) -> DpgStatus {
    guard(|| {
        let total = n.checked_mul(vars).ok_or_else(|| Fail(DpgStatus::DpgInvalidArgument, "size overflow".into()))?;
        let raw = slice(bits, total, "bits")?;
        let ls = labels(slice(labels_, n, "labels")?)?;
        let rows = if vars == 0 { vec![Vec::new(); n] } else { raw.chunks(vars).map(|r| r.iter().map(|&b| b != 0).collect()).collect() };
        out(out_sample, DpgSample { inner: LabeledSample::boolean(vars, rows, ls)? })
    })
}

/// Parses a JSON Lines sample (header line, then one example per line).
///
/// # Safety
/// `text` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn dpg_sample_from_jsonl(text: *const c_char, out_sample: *mut *mut DpgSample) -> DpgStatus {
    guard(|| out(out_sample, DpgSample { inner: formats::sample_from_jsonl(cstr(text, "text")?)? }))
}

/// Number of examples; 0 for NULL.
///
/// # Safety
/// `s` must be NULL or a live sample handle.
#[no_mangle]
pub unsafe extern "C" fn dpg_sample_len(s: *const DpgSample) -> usize {
    s.as_ref().map_or(0, |s| s.inner.len())
}

/// # Safety
/// `s` must be NULL or a sample handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn dpg_sample_free(s: *mut DpgSample) {
    if !s.is_null() {
        drop(Box::from_raw(s));
    }
}

/// Runs the private learner.
///
/// # Safety
/// `sample` and `params` must be valid; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn dpg_learn(
    sample: *const DpgSample,
    params: *const DpgLearnParams,
    out_h: *mut *mut DpgHypothesis,
) -> DpgStatus {
    guard(|| {
        let s = sample.as_ref().ok_or_else(|| null("sample"))?;
        let p = params.as_ref().ok_or_else(|| null("params"))?;
        let spec = TaskSpec::new(p.class_.into(), p.k, p.d, p.alpha, p.beta, p.epsilon, p.delta)?;
        let mut opts = LearnOptions::default();
        if p.triple_cap > 0 {
            opts.triple_cap = p.triple_cap;
        }
        let (h, _) = learners::learn_with(&spec, &s.inner, SeedPath::root(p.seed), opts)?;
        out(out_h, DpgHypothesis { inner: h })
    })
}

/// # Safety
/// `h` must be a live hypothesis handle and `result` writable.
#[no_mangle]
pub unsafe extern "C" fn dpg_hypothesis_eval_grid(h: *const DpgHypothesis, x: u32, y: u32, result: *mut bool) -> DpgStatus {
    guard(|| {
        let h = h.as_ref().ok_or_else(|| null("hypothesis"))?;
        let r = result.as_mut().ok_or_else(|| null("result"))?;
        *r = h.inner.eval(ExampleRef::Grid(GridPoint::new(x, y)))?;
        Ok(())
    })
}

/// # Safety
/// `h` must be a live hypothesis handle, `bits` must hold `vars` bytes and
/// `result` must be writable.
#[no_mangle]
pub unsafe extern "C" fn dpg_hypothesis_eval_bool(
    h: *const DpgHypothesis,
    bits: *const u8,
    vars: usize,
    result: *mut bool,
) -> DpgStatus {
    guard(|| {
        let h = h.as_ref().ok_or_else(|| null("hypothesis"))?;
        let row: Vec<bool> = slice(bits, vars, "bits")?.iter().map(|&b| b != 0).collect();
        let r = result.as_mut().ok_or_else(|| null("result"))?;
        *r = h.inner.eval(ExampleRef::Bool(&row))?;
        Ok(())
    })
}

/// Serialises the hypothesis; free the string with [`dpg_string_free`].
///
/// # Safety
/// `h` must be a live hypothesis handle and `json` writable.
#[no_mangle]
pub unsafe extern "C" fn dpg_hypothesis_to_json(h: *const DpgHypothesis, json: *mut *mut c_char) -> DpgStatus {
    guard(|| {
        let h = h.as_ref().ok_or_else(|| null("hypothesis"))?;
        if json.is_null() {
            return Err(null("json"));
        }
        let text = formats::hypothesis_to_json(&h.inner).to_string();
        *json = CString::new(text).expect("json has no nul bytes").into_raw();
        Ok(())
    })
}

/// # Safety
/// `json` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn dpg_hypothesis_from_json(json: *const c_char, out_h: *mut *mut DpgHypothesis) -> DpgStatus {
    guard(|| {
        let v = serde_json_value(cstr(json, "json")?)?;
        out(out_h, DpgHypothesis { inner: formats::hypothesis_from_json(v.get("hypothesis").unwrap_or(&v))? })
    })
}

fn serde_json_value(text: &str) -> Result<serde_json::Value, Fail> {
    serde_json::from_str(text).map_err(|e| Fail(DpgStatus::DpgParse, e.to_string()))
}

/// # Safety
/// `h` must be NULL or a hypothesis handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn dpg_hypothesis_free(h: *mut DpgHypothesis) {
    if !h.is_null() {
        drop(Box::from_raw(h));
    }
}

/// Builds the dual arrangement of a grid sample.
///
/// # Safety
/// `sample` must be a live sample handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn dpg_arrangement_build(sample: *const DpgSample, out_a: *mut *mut DpgArrangement) -> DpgStatus {
    guard(|| {
        let s = sample.as_ref().ok_or_else(|| null("sample"))?;
        let grid = s.inner.domain().grid().ok_or_else(|| Fail(DpgStatus::DpgKindMismatch, "not a grid sample".into()))?;
        out(out_a, DpgArrangement { inner: arrangement::build_arrangement(&s.inner, grid)? })
    })
}

/// Number of faces; 0 for NULL.
///
/// # Safety
/// `a` must be NULL or a live arrangement handle.
#[no_mangle]
pub unsafe extern "C" fn dpg_arrangement_face_count(a: *const DpgArrangement) -> usize {
    a.as_ref().map_or(0, |a| a.inner.face_count())
}

/// # Safety
/// `a` must be NULL or an arrangement handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn dpg_arrangement_free(a: *mut DpgArrangement) {
    if !a.is_null() {
        drop(Box::from_raw(a));
    }
}
