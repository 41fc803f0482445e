//! C ABI over `drgkit`.
//!
//! Graphs are opaque `DrgGraph` handles. Every function returns a
//! `DrgStatus`; on failure the message is available from `drg_last_error`
//! until the next call on the same thread. Strings returned through out
//! parameters are owned by the caller and released with `drg_string_free`.

use std::cell::RefCell;
use std::ffi::{CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use drgkit::pvt::{check_pvt, Verdict};
use drgkit::report::{analyze, AnalyzeOptions, VertexSelector};
use drgkit::{Error, Graph};
use libc::{c_char, c_int, size_t};

/// Opaque graph handle.
pub struct DrgGraph(Graph);

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DrgStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    InvalidArgument = 3,
    Parse = 4,
    NotDistanceRegular = 5,
    FloatMode = 6,
    Analysis = 7,
    Panic = 8,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DrgPvt {
    Pvt = 0,
    NotPvt = 1,
    NecessaryConditionsPass = 2,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn status_of(e: &Error) -> DrgStatus {
    match e {
        Error::Parse(_) | Error::Io(_) | Error::Loop(_) | Error::Asymmetric(..) | Error::DuplicateEdge(..) => {
            DrgStatus::Parse
        }
        Error::InvalidFamily(_) | Error::VertexOutOfRange { .. } | Error::EmptyVertexSet | Error::Precondition(_) => {
            DrgStatus::InvalidArgument
        }
        Error::NotDistanceRegular { .. } | Error::Disconnected => DrgStatus::NotDistanceRegular,
        Error::FloatMode(_) => DrgStatus::FloatMode,
        _ => DrgStatus::Analysis,
    }
}

struct Failure(DrgStatus, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure(status_of(&e), e.to_string())
    }
}

fn guard(f: impl FnOnce() -> Result<(), Failure>) -> DrgStatus {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => DrgStatus::Ok,
        Ok(Err(Failure(status, msg))) => {
            set_error(msg);
            status
        }
        Err(payload) => {
            let msg = payload
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| payload.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "panic".into());
            set_error(format!("internal panic: {msg}"));
            DrgStatus::Panic
        }
    }
}

fn null() -> Failure {
    Failure(DrgStatus::NullPointer, "null pointer argument".into())
}

unsafe fn read_str<'a>(p: *const c_char) -> Result<&'a str, Failure> {
    if p.is_null() {
        return Err(null());
    }
    CStr::from_ptr(p).to_str().map_err(|e| Failure(DrgStatus::InvalidUtf8, e.to_string()))
}

unsafe fn graph<'a>(g: *const DrgGraph) -> Result<&'a Graph, Failure> {
    g.as_ref().map(|h| &h.0).ok_or_else(null)
}

unsafe fn write<T>(out: *mut T, v: T) -> Result<(), Failure> {
    if out.is_null() {
        return Err(null());
    }
    out.write(v);
    Ok(())
}

unsafe fn write_graph(out: *mut *mut DrgGraph, g: Graph) -> Result<(), Failure> {
    write(out, Box::into_raw(Box::new(DrgGraph(g))))
}

unsafe fn write_string(out: *mut *mut c_char, s: String) -> Result<(), Failure> {
    let c = CString::new(s).map_err(|e| Failure(DrgStatus::Analysis, e.to_string()))?;
    write(out, c.into_raw())
}

/// Builds a member of a named family. `params` may be null when
/// `n_params` is 0.
///
/// # Safety
/// `family` must be a NUL-terminated string, `params` must point to
/// `n_params` integers and `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn drg_graph_construct(
    family: *const c_char,
    params: *const i64,
    n_params: size_t,
    out: *mut *mut DrgGraph,
) -> DrgStatus {
    guard(|| {
        let family = read_str(family)?;
        let params = match n_params {
            0 => &[][..],
            _ if params.is_null() => return Err(null()),
            _ => std::slice::from_raw_parts(params, n_params),
        };
        write_graph(out, drgkit::families::construct(family, params)?)
    })
}

/// Parses a graph from its JSON form.
///
/// # Safety
/// `json` must be a NUL-terminated string and `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn drg_graph_from_json(json: *const c_char, out: *mut *mut DrgGraph) -> DrgStatus {
    guard(|| write_graph(out, Graph::from_json(read_str(json)?)?))
}

/// Builds a graph from a row-major `n`×`n` 0/1 matrix.
///
/// # Safety
/// `adjacency` must point to `n * n` bytes and `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn drg_graph_from_adjacency(
    adjacency: *const u8,
    n: size_t,
    out: *mut *mut DrgGraph,
) -> DrgStatus {
    guard(|| {
        if adjacency.is_null() {
            return Err(null());
        }
        let len = n
            .checked_mul(n)
            .ok_or_else(|| Failure(DrgStatus::InvalidArgument, "vertex count overflows".into()))?;
        let flat = std::slice::from_raw_parts(adjacency, len);
        let rows: Vec<Vec<u8>> = flat.chunks(n.max(1)).map(<[u8]>::to_vec).collect();
        write_graph(out, Graph::from_adjacency(&rows, None)?)
    })
}

/// Releases a graph handle. Null is ignored.
///
/// # Safety
/// `g` must come from this library and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn drg_graph_free(g: *mut DrgGraph) {
    if !g.is_null() {
        drop(Box::from_raw(g));
    }
}

/// # Safety
/// `g` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn drg_graph_vertex_count(g: *const DrgGraph, out: *mut size_t) -> DrgStatus {
    guard(|| write(out, graph(g)?.n()))
}

/// # Safety
/// `g` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn drg_graph_to_json(g: *const DrgGraph, out: *mut *mut c_char) -> DrgStatus {
    guard(|| write_string(out, graph(g)?.to_json()))
}

/// Dimension of the Terwilliger algebra with respect to base vertex `x`.
///
/// # Safety
/// `g` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn drg_terwilliger_dim(g: *const DrgGraph, x: size_t, out: *mut size_t) -> DrgStatus {
    guard(|| write(out, drgkit::terwilliger::terwilliger_dim(graph(g)?, x)?))
}

/// # Safety
/// `g` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn drg_check_pvt(g: *const DrgGraph, out: *mut DrgPvt) -> DrgStatus {
    guard(|| {
        let v = match check_pvt(graph(g)?)?.verdict {
            Verdict::Pvt => DrgPvt::Pvt,
            Verdict::NotPvt => DrgPvt::NotPvt,
            Verdict::NecessaryConditionsPass => DrgPvt::NecessaryConditionsPass,
        };
        write(out, v)
    })
}

/// Full analysis report as JSON. `base_vertex` < 0 analyzes every vertex.
///
/// # Safety
/// `g` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn drg_analyze_json(
    g: *const DrgGraph,
    base_vertex: i64,
    allow_float: c_int,
    out: *mut *mut c_char,
) -> DrgStatus {
    guard(|| {
        let opts = AnalyzeOptions {
            vertices: match usize::try_from(base_vertex) {
                Ok(x) => VertexSelector::One(x),
                Err(_) => VertexSelector::All,
            },
            allow_float: allow_float != 0,
        };
        write_string(out, analyze(graph(g)?, &opts)?.to_json())
    })
}

/// Releases a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` must come from this library and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn drg_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Message for the last failed call on this thread, or null. The pointer
/// stays valid until the next call into the library on this thread.
#[no_mangle]
pub extern "C" fn drg_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}
