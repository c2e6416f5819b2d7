//! C ABI over `isf-logconcave`.
//!
//! Graphs and forests cross the boundary as opaque handles created by
//! `isf_graph_new` / `isf_forest_new` and released by the matching `_free`
//! function. Every fallible call returns an [`IsfStatus`]; the message for
//! the most recent failure on the calling thread is available from
//! `isf_last_error_message`. Edge lists are flat `u32` arrays
//! `[i0, j0, i1, j1, ...]` with `i < j`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::ptr;

use isf_logconcave::chromatic::chromatic_polynomial;
use isf_logconcave::cli::{dispatch, Dispatch};
use isf_logconcave::psi::{psi_with, verify_psi_with};
use isf_logconcave::stirling::stirling_row;
use isf_logconcave::subset::{Bracketing, ReversedBracketing, SubsetInjection};
use isf_logconcave::{Error, Forest, OrderedGraph};

/// Result codes shared by every fallible entry point.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum IsfStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidInput = 2,
    CyclicInput = 3,
    NotIncreasing = 4,
    NotInGraph = 5,
    SizeViolation = 6,
    IndexViolation = 7,
    BufferTooSmall = 8,
    Overflow = 9,
}

/// Opaque graph handle.
pub struct IsfGraph(OrderedGraph);

/// Opaque forest handle.
pub struct IsfForest(Forest);

/// Outcome of exhaustively checking psi on `IF_k x IF_l`.
#[repr(C)]
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct IsfPsiSummary {
    pub total_pairs: usize,
    pub injective: bool,
    pub local: bool,
    pub weight_preserving: bool,
    pub increasing: bool,
}

/// Which subset injection psi is built on.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum IsfPhi {
    Bracketing = 0,
    ReversedBracketing = 1,
}

impl IsfPhi {
    fn injection(self) -> &'static dyn SubsetInjection {
        match self {
            IsfPhi::Bracketing => &Bracketing,
            IsfPhi::ReversedBracketing => &ReversedBracketing,
        }
    }
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn fail(status: IsfStatus, msg: impl Into<String>) -> IsfStatus {
    let msg = CString::new(msg.into().replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = msg);
    status
}

fn status_of(err: Error) -> IsfStatus {
    let status = match &err {
        Error::CyclicInput(_) => IsfStatus::CyclicInput,
        Error::NotIncreasing { .. } => IsfStatus::NotIncreasing,
        Error::NotInGraph(_) => IsfStatus::NotInGraph,
        Error::SizeViolation(_) | Error::SizeMismatch(..) => IsfStatus::SizeViolation,
        Error::IndexViolation(_) => IsfStatus::IndexViolation,
        _ => IsfStatus::InvalidInput,
    };
    fail(status, err.to_string())
}

unsafe fn edge_pairs(edges: *const u32, edge_count: usize) -> Option<Vec<(u32, u32)>> {
    if edge_count == 0 {
        return Some(Vec::new());
    }
    if edges.is_null() {
        return None;
    }
    // SAFETY: caller promises 2 * edge_count readable u32 values.
    let flat = unsafe { std::slice::from_raw_parts(edges, 2 * edge_count) };
    Some(flat.chunks_exact(2).map(|p| (p[0], p[1])).collect())
}

/// Message describing the last failure on this thread; empty if none.
/// The pointer stays valid until the next failing call on this thread.
#[no_mangle]
pub extern "C" fn isf_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// # Safety
/// `edges` must point to `2 * edge_count` readable `u32` values (or be NULL
/// when `edge_count == 0`), and `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn isf_graph_new(
    n: u32,
    edges: *const u32,
    edge_count: usize,
    out: *mut *mut IsfGraph,
) -> IsfStatus {
    if out.is_null() {
        return fail(IsfStatus::NullPointer, "out is NULL");
    }
    let Some(pairs) = (unsafe { edge_pairs(edges, edge_count) }) else {
        return fail(IsfStatus::NullPointer, "edges is NULL");
    };
    match OrderedGraph::new(n, pairs) {
        Ok(g) => {
            unsafe { *out = Box::into_raw(Box::new(IsfGraph(g))) };
            IsfStatus::Ok
        }
        Err(e) => status_of(e),
    }
}

#[no_mangle]
pub extern "C" fn isf_graph_complete(n: u32) -> *mut IsfGraph {
    Box::into_raw(Box::new(IsfGraph(OrderedGraph::complete(n))))
}

/// # Safety
/// `g` must come from this library and not be freed twice. NULL is ignored.
#[no_mangle]
pub unsafe extern "C" fn isf_graph_free(g: *mut IsfGraph) {
    if !g.is_null() {
        drop(unsafe { Box::from_raw(g) });
    }
}

/// # Safety
/// Same contract as [`isf_graph_new`].
#[no_mangle]
pub unsafe extern "C" fn isf_forest_new(
    n: u32,
    edges: *const u32,
    edge_count: usize,
    out: *mut *mut IsfForest,
) -> IsfStatus {
    if out.is_null() {
        return fail(IsfStatus::NullPointer, "out is NULL");
    }
    let Some(pairs) = (unsafe { edge_pairs(edges, edge_count) }) else {
        return fail(IsfStatus::NullPointer, "edges is NULL");
    };
    match Forest::new(n, pairs) {
        Ok(f) => {
            unsafe { *out = Box::into_raw(Box::new(IsfForest(f))) };
            IsfStatus::Ok
        }
        Err(e) => status_of(e),
    }
}

/// # Safety
/// `f` must come from this library and not be freed twice. NULL is ignored.
#[no_mangle]
pub unsafe extern "C" fn isf_forest_free(f: *mut IsfForest) {
    if !f.is_null() {
        drop(unsafe { Box::from_raw(f) });
    }
}

/// Number of connected components, or 0 for a NULL handle.
///
/// # Safety
/// `f` must be a live handle or NULL.
#[no_mangle]
pub unsafe extern "C" fn isf_forest_component_count(f: *const IsfForest) -> usize {
    match unsafe { f.as_ref() } {
        Some(f) => f.0.component_count(),
        None => 0,
    }
}

/// # Safety
/// `f` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn isf_forest_is_increasing(f: *const IsfForest, out: *mut bool) -> IsfStatus {
    match (unsafe { f.as_ref() }, out.is_null()) {
        (Some(f), false) => {
            unsafe { *out = f.0.is_increasing() };
            IsfStatus::Ok
        }
        _ => fail(IsfStatus::NullPointer, "NULL argument"),
    }
}

/// Copies the sorted edge list into `buf` (capacity `cap` edges, i.e.
/// `2 * cap` values) and stores the edge count in `out_len`. When `cap` is
/// too small nothing is copied, `out_len` still receives the count and
/// `BufferTooSmall` is returned.
///
/// # Safety
/// `buf` must have room for `2 * cap` values; `f` and `out_len` must be valid.
#[no_mangle]
pub unsafe extern "C" fn isf_forest_edges(
    f: *const IsfForest,
    buf: *mut u32,
    cap: usize,
    out_len: *mut usize,
) -> IsfStatus {
    let (Some(f), false) = (unsafe { f.as_ref() }, out_len.is_null()) else {
        return fail(IsfStatus::NullPointer, "NULL argument");
    };
    let edges = f.0.edges();
    unsafe { *out_len = edges.len() };
    if edges.len() > cap {
        return fail(IsfStatus::BufferTooSmall, format!("need room for {} edges", edges.len()));
    }
    if !edges.is_empty() && buf.is_null() {
        return fail(IsfStatus::NullPointer, "buf is NULL");
    }
    for (k, e) in edges.iter().enumerate() {
        unsafe {
            *buf.add(2 * k) = e.lo();
            *buf.add(2 * k + 1) = e.hi();
        }
    }
    IsfStatus::Ok
}

/// Applies psi to `(a, b)`. On success the two new forests are returned as
/// fresh handles, `out_j` receives the selected vertex and `out_edge` the
/// moved edge as two values.
///
/// # Safety
/// All handles must be live; every out pointer must be valid, `out_edge`
/// with room for 2 values.
#[no_mangle]
pub unsafe extern "C" fn isf_psi(
    g: *const IsfGraph,
    a: *const IsfForest,
    b: *const IsfForest,
    phi: IsfPhi,
    out_a: *mut *mut IsfForest,
    out_b: *mut *mut IsfForest,
    out_j: *mut u32,
    out_edge: *mut u32,
) -> IsfStatus {
    let (Some(g), Some(a), Some(b)) = (unsafe { g.as_ref() }, unsafe { a.as_ref() }, unsafe { b.as_ref() })
    else {
        return fail(IsfStatus::NullPointer, "NULL handle");
    };
    if out_a.is_null() || out_b.is_null() || out_j.is_null() || out_edge.is_null() {
        return fail(IsfStatus::NullPointer, "NULL out pointer");
    }
    match psi_with(phi.injection(), &g.0, &a.0, &b.0) {
        Ok(t) => {
            unsafe {
                *out_j = t.j;
                *out_edge = t.e.lo();
                *out_edge.add(1) = t.e.hi();
                *out_a = Box::into_raw(Box::new(IsfForest(t.a_out)));
                *out_b = Box::into_raw(Box::new(IsfForest(t.b_out)));
            }
            IsfStatus::Ok
        }
        Err(e) => status_of(e),
    }
}

/// # Safety
/// `g` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn isf_verify_psi(
    g: *const IsfGraph,
    k: usize,
    l: usize,
    phi: IsfPhi,
    out: *mut IsfPsiSummary,
) -> IsfStatus {
    let (Some(g), false) = (unsafe { g.as_ref() }, out.is_null()) else {
        return fail(IsfStatus::NullPointer, "NULL argument");
    };
    match verify_psi_with(phi.injection(), &g.0, k, l) {
        Ok(r) => {
            unsafe {
                *out = IsfPsiSummary {
                    total_pairs: r.total_pairs,
                    injective: r.injective,
                    local: r.local,
                    weight_preserving: r.weight_preserving,
                    increasing: r.increasing,
                }
            };
            IsfStatus::Ok
        }
        Err(e) => status_of(e),
    }
}

/// Unsigned Stirling numbers `c(n, 0..=n)` into `buf` (capacity `cap`).
///
/// # Safety
/// `buf` must have room for `cap` values and `out_len` must be valid.
#[no_mangle]
pub unsafe extern "C" fn isf_stirling_row(
    n: u32,
    buf: *mut u64,
    cap: usize,
    out_len: *mut usize,
) -> IsfStatus {
    if out_len.is_null() || (buf.is_null() && cap > 0) {
        return fail(IsfStatus::NullPointer, "NULL argument");
    }
    let row = stirling_row(n).unsigned;
    unsafe { *out_len = row.len() };
    if row.len() > cap {
        return fail(IsfStatus::BufferTooSmall, format!("need room for {} values", row.len()));
    }
    unsafe { ptr::copy_nonoverlapping(row.as_ptr(), buf, row.len()) };
    IsfStatus::Ok
}

/// Chromatic polynomial coefficients (index = degree) into `buf`.
/// Returns `Overflow` if a coefficient does not fit in `i64`.
///
/// # Safety
/// `g` must be live, `buf` must have room for `cap` values, `out_len` valid.
#[no_mangle]
pub unsafe extern "C" fn isf_chromatic_polynomial(
    g: *const IsfGraph,
    buf: *mut i64,
    cap: usize,
    out_len: *mut usize,
) -> IsfStatus {
    let (Some(g), false) = (unsafe { g.as_ref() }, out_len.is_null()) else {
        return fail(IsfStatus::NullPointer, "NULL argument");
    };
    let coeffs: Option<Vec<i64>> =
        chromatic_polynomial(&g.0).coeffs().iter().map(|c| i64::try_from(c).ok()).collect();
    let Some(coeffs) = coeffs else {
        return fail(IsfStatus::Overflow, "coefficient exceeds i64");
    };
    unsafe { *out_len = coeffs.len() };
    if coeffs.len() > cap {
        return fail(IsfStatus::BufferTooSmall, format!("need room for {} values", coeffs.len()));
    }
    if !coeffs.is_empty() && buf.is_null() {
        return fail(IsfStatus::NullPointer, "buf is NULL");
    }
    unsafe { ptr::copy_nonoverlapping(coeffs.as_ptr(), buf, coeffs.len()) };
    IsfStatus::Ok
}

/// Runs one `isf` command line (without the program name) and hands back
/// its JSON report, to be released with `isf_string_free`. Returns the
/// command's exit status: 0 ok, 1 property failed, 2 usage or input error.
///
/// # Safety
/// `argv` must hold `argc` valid NUL-terminated strings; `out_json` must be
/// a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn isf_command_json(
    argv: *const *const c_char,
    argc: usize,
    out_json: *mut *mut c_char,
) -> i32 {
    if out_json.is_null() || (argv.is_null() && argc > 0) {
        fail(IsfStatus::NullPointer, "NULL argument");
        return 2;
    }
    let mut args = vec!["isf".to_owned()];
    for k in 0..argc {
        let p = unsafe { *argv.add(k) };
        if p.is_null() {
            fail(IsfStatus::NullPointer, "NULL argument string");
            return 2;
        }
        args.push(unsafe { CStr::from_ptr(p) }.to_string_lossy().into_owned());
    }
    let (code, text) = match dispatch(args) {
        Dispatch::Text(text) => (0, serde_json::json!({ "text": text }).to_string()),
        Dispatch::Report { code, report } => {
            (code, serde_json::to_string(&report).expect("report serializes"))
        }
    };
    let text = CString::new(text).unwrap_or_default();
    unsafe { *out_json = text.into_raw() };
    code
}

/// # Safety
/// `s` must come from `isf_command_json` and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn isf_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(unsafe { CString::from_raw(s) });
    }
}
