//! C interface to `dibrush`.
//!
//! Graphs cross the boundary as opaque handles; everything else is JSON
//! text. Every call returns a [`DibrushStatus`]; on failure the message is
//! available from [`dibrush_last_error`] until the next call on the same
//! thread. Strings handed out by the library are freed with
//! [`dibrush_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use dibrush::bounds::report;
use dibrush::graph::parse;
use dibrush::solver::{brushing_number_exact, SolveOptions};
use dibrush::strategies::{plan_with, Method};
use dibrush::{run, BrushError, BrushPlan, Digraph};

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DibrushStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    Parse = 3,
    InvalidGraph = 4,
    InvalidPlan = 5,
    InsufficientBrushes = 6,
    TooLarge = 7,
    NotApplicable = 8,
    InvalidArgument = 9,
    Panic = 10,
    Other = 11,
}

/// Opaque graph handle.
pub struct DibrushGraph(Digraph);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let msg = CString::new(msg.replace('\0', " ")).expect("nul bytes removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(msg));
}

struct Failure(DibrushStatus, String);

impl From<BrushError> for Failure {
    fn from(e: BrushError) -> Self {
        let status = match e {
            BrushError::Parse { .. } | BrushError::IndexOutOfRange { .. } => DibrushStatus::Parse,
            BrushError::InvalidGraph(_) | BrushError::InvalidFamilySpec(_) => {
                DibrushStatus::InvalidGraph
            }
            BrushError::InvalidPlan(_) | BrushError::IllegalFlow { .. } => {
                DibrushStatus::InvalidPlan
            }
            BrushError::InsufficientBrushes { .. } => DibrushStatus::InsufficientBrushes,
            BrushError::TooLarge { .. } => DibrushStatus::TooLarge,
            BrushError::MethodNotApplicable { .. } | BrushError::TopoOnlyOnCyclic => {
                DibrushStatus::NotApplicable
            }
            _ => DibrushStatus::Other,
        };
        Failure(status, e.to_string())
    }
}

fn guard(f: impl FnOnce() -> Result<(), Failure>) -> DibrushStatus {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => DibrushStatus::Ok,
        Ok(Err(Failure(status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("internal panic".into());
            DibrushStatus::Panic
        }
    }
}

unsafe fn text<'a>(s: *const c_char) -> Result<&'a str, Failure> {
    if s.is_null() {
        return Err(Failure(DibrushStatus::NullPointer, "null string".into()));
    }
    CStr::from_ptr(s)
        .to_str()
        .map_err(|e| Failure(DibrushStatus::InvalidUtf8, e.to_string()))
}

unsafe fn graph<'a>(g: *const DibrushGraph) -> Result<&'a Digraph, Failure> {
    g.as_ref()
        .map(|h| &h.0)
        .ok_or_else(|| Failure(DibrushStatus::NullPointer, "null graph handle".into()))
}

unsafe fn put_json(out: *mut *mut c_char, value: &impl serde::Serialize) -> Result<(), Failure> {
    if out.is_null() {
        return Err(Failure(
            DibrushStatus::NullPointer,
            "null output pointer".into(),
        ));
    }
    let json =
        serde_json::to_string(value).map_err(|e| Failure(DibrushStatus::Other, e.to_string()))?;
    *out = CString::new(json)
        .expect("JSON has no nul bytes")
        .into_raw();
    Ok(())
}

/// Parses an edge list (`n m` header, then one `u v` pair per line).
///
/// # Safety
/// `edges` must be a nul-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn dibrush_graph_parse(
    edges: *const c_char,
    out: *mut *mut DibrushGraph,
) -> DibrushStatus {
    guard(|| {
        if out.is_null() {
            return Err(Failure(
                DibrushStatus::NullPointer,
                "null output pointer".into(),
            ));
        }
        let g = parse(text(edges)?)?;
        *out = Box::into_raw(Box::new(DibrushGraph(g)));
        Ok(())
    })
}

/// # Safety
/// `g` must come from [`dibrush_graph_parse`] and not be used afterwards.
/// Null is ignored.
#[no_mangle]
pub unsafe extern "C" fn dibrush_graph_free(g: *mut DibrushGraph) {
    if !g.is_null() {
        drop(Box::from_raw(g));
    }
}

/// Vertex count, or 0 for a null handle.
///
/// # Safety
/// `g` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn dibrush_graph_vertex_count(g: *const DibrushGraph) -> usize {
    g.as_ref().map_or(0, |h| h.0.n())
}

/// Arc count, or 0 for a null handle.
///
/// # Safety
/// `g` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn dibrush_graph_arc_count(g: *const DibrushGraph) -> usize {
    g.as_ref().map_or(0, |h| h.0.arc_count())
}

/// Exact brushing number. `cap` bounds the vertex count (0 for the
/// default), `workers` the thread count (0 for one per core). The value is
/// written to `value`; when `json` is not null it receives the full result
/// `{value, witness, stats}`.
///
/// # Safety
/// `g` must be a live handle, `value` a valid pointer, `json` null or valid.
#[no_mangle]
pub unsafe extern "C" fn dibrush_solve(
    g: *const DibrushGraph,
    cap: usize,
    workers: usize,
    topo_only: bool,
    value: *mut u64,
    json: *mut *mut c_char,
) -> DibrushStatus {
    guard(|| {
        let g = graph(g)?;
        if value.is_null() {
            return Err(Failure(
                DibrushStatus::NullPointer,
                "null output pointer".into(),
            ));
        }
        let defaults = SolveOptions::default();
        let opts = SolveOptions {
            topo_only,
            workers,
            cap: if cap == 0 { defaults.cap } else { cap },
        };
        let res = brushing_number_exact(g, &opts)?;
        *value = res.value;
        if !json.is_null() {
            put_json(json, &res)?;
        }
        Ok(())
    })
}

/// Bound report as JSON.
///
/// # Safety
/// `g` must be a live handle and `json` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn dibrush_bounds_json(
    g: *const DibrushGraph,
    json: *mut *mut c_char,
) -> DibrushStatus {
    guard(|| put_json(json, &report(graph(g)?)))
}

/// Plan from a named strategy (`auto`, `tt`, `tt-minus-arc`, `complete`,
/// `rotational`, `tree`, `dag-recursive`, `path-decomp`) as JSON.
///
/// # Safety
/// `g` must be a live handle, `method` a nul-terminated string and `json` a
/// valid pointer.
#[no_mangle]
pub unsafe extern "C" fn dibrush_strategy_json(
    g: *const DibrushGraph,
    method: *const c_char,
    json: *mut *mut c_char,
) -> DibrushStatus {
    guard(|| {
        let g = graph(g)?;
        let method: Method = text(method)?
            .parse()
            .map_err(|e: String| Failure(DibrushStatus::InvalidArgument, e))?;
        put_json(json, &plan_with(g, method)?)
    })
}

/// Runs a plan given as JSON (`{initial, order, flows?}`) and returns the
/// trace as JSON.
///
/// # Safety
/// `g` must be a live handle, `plan` a nul-terminated string and `json` a
/// valid pointer.
#[no_mangle]
pub unsafe extern "C" fn dibrush_simulate_json(
    g: *const DibrushGraph,
    plan: *const c_char,
    json: *mut *mut c_char,
) -> DibrushStatus {
    guard(|| {
        let g = graph(g)?;
        let plan: BrushPlan = serde_json::from_str(text(plan)?)
            .map_err(|e| Failure(DibrushStatus::InvalidPlan, e.to_string()))?;
        put_json(json, &run(g, &plan)?)
    })
}

/// # Safety
/// `s` must be null or a string returned by this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn dibrush_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Message for the last failed call on this thread, or null. The pointer
/// stays valid until the next library call on the same thread.
#[no_mangle]
pub extern "C" fn dibrush_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}
