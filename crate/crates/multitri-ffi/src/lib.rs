//! C interface to the multitri engine.
//!
//! Triangulations cross the boundary as opaque handles. Every function returns
//! an [`MtStatus`]; on failure the message is kept per thread and can be read
//! back with [`mt_last_error`]. Array outputs follow one pattern: the caller
//! passes a buffer and its capacity, the callee always writes the required
//! length, and reports `MT_STATUS_BUFFER_TOO_SMALL` when it does not fit.

use std::cell::RefCell;
use std::os::raw::c_char;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use multitri::error::{Error, Limits};
use multitri::{beam, dyck, flipgraph, ktri, Edge, KTriangulation};

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MtStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidParameter = 2,
    InvalidInput = 3,
    LimitExceeded = 4,
    BufferTooSmall = 5,
    Overflow = 6,
    Panic = 7,
}

/// A k-triangulation of a convex polygon.
pub struct MtTriangulation(KTriangulation);

thread_local! {
    static LAST_ERROR: RefCell<String> = const { RefCell::new(String::new()) };
}

fn fail(status: MtStatus, msg: impl Into<String>) -> MtStatus {
    LAST_ERROR.with(|e| *e.borrow_mut() = msg.into());
    status
}

fn from_error(e: Error) -> MtStatus {
    let status = match e {
        Error::Param(_) => MtStatus::InvalidParameter,
        Error::Invalid(_) => MtStatus::InvalidInput,
        Error::Limit(_) => MtStatus::LimitExceeded,
    };
    fail(status, e.to_string())
}

fn guard(f: impl FnOnce() -> MtStatus) -> MtStatus {
    LAST_ERROR.with(|e| e.borrow_mut().clear());
    catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|_| fail(MtStatus::Panic, "internal panic"))
}

fn limits(max_nodes: usize) -> Limits {
    Limits::new(if max_nodes == 0 { None } else { Some(max_nodes) }, None)
}

/// Copies `data` into `(buf, cap)` and stores the full length in `len`.
unsafe fn write_slice<T: Copy>(data: &[T], buf: *mut T, cap: usize, len: *mut usize) -> MtStatus {
    if len.is_null() {
        return fail(MtStatus::NullPointer, "len is null");
    }
    *len = data.len();
    if data.len() > cap {
        return fail(MtStatus::BufferTooSmall, format!("need {} entries", data.len()));
    }
    if !data.is_empty() {
        if buf.is_null() {
            return fail(MtStatus::NullPointer, "buffer is null");
        }
        ptr::copy_nonoverlapping(data.as_ptr(), buf, data.len());
    }
    MtStatus::Ok
}

fn edge(u: u32, v: u32) -> Result<Edge, MtStatus> {
    if u == v {
        return Err(fail(MtStatus::InvalidInput, "edge endpoints coincide"));
    }
    Ok(Edge::new(u as usize, v as usize))
}

fn flatten_edges(edges: &[Edge]) -> Vec<u32> {
    edges.iter().flat_map(|e| [e.u as u32, e.v as u32]).collect()
}

unsafe fn handle_out(t: KTriangulation, out: *mut *mut MtTriangulation) -> MtStatus {
    *out = Box::into_raw(Box::new(MtTriangulation(t)));
    MtStatus::Ok
}

/// Message of the last failure on this thread, NUL terminated and truncated
/// to `cap`. `len` receives the untruncated byte length.
///
/// # Safety
/// `buf` must point to `cap` writable bytes; `len` must be valid or null.
#[no_mangle]
pub unsafe extern "C" fn mt_last_error(buf: *mut c_char, cap: usize, len: *mut usize) -> MtStatus {
    let msg = LAST_ERROR.with(|e| e.borrow().clone());
    if !len.is_null() {
        *len = msg.len();
    }
    if cap == 0 {
        return MtStatus::Ok;
    }
    if buf.is_null() {
        return MtStatus::NullPointer;
    }
    let n = msg.len().min(cap - 1);
    ptr::copy_nonoverlapping(msg.as_ptr() as *const c_char, buf, n);
    *buf.add(n) = 0;
    MtStatus::Ok
}

/// Builds a triangulation from `num_edges` relevant edges given as pairs.
///
/// # Safety
/// `edges` must hold `2 * num_edges` values; `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn mt_triangulation_new(
    n: usize,
    k: usize,
    edges: *const u32,
    num_edges: usize,
    out: *mut *mut MtTriangulation,
) -> MtStatus {
    guard(|| {
        if out.is_null() || (edges.is_null() && num_edges > 0) {
            return fail(MtStatus::NullPointer, "null argument");
        }
        let raw = if num_edges == 0 { &[][..] } else { std::slice::from_raw_parts(edges, 2 * num_edges) };
        let mut list = Vec::with_capacity(num_edges);
        for p in raw.chunks(2) {
            match edge(p[0], p[1]) {
                Ok(e) => list.push(e),
                Err(s) => return s,
            }
        }
        match KTriangulation::new(n, k, list) {
            Ok(t) => handle_out(t, out),
            Err(e) => from_error(e),
        }
    })
}

/// The minimal triangulation (fans at the first k vertices).
///
/// # Safety
/// `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn mt_triangulation_min(n: usize, k: usize, out: *mut *mut MtTriangulation) -> MtStatus {
    guard(|| {
        if out.is_null() {
            return fail(MtStatus::NullPointer, "out is null");
        }
        match ktri::t_min(n, k) {
            Ok(t) => handle_out(t, out),
            Err(e) => from_error(e),
        }
    })
}

/// # Safety
/// `t` must come from this library and not be freed twice. Null is ignored.
#[no_mangle]
pub unsafe extern "C" fn mt_triangulation_free(t: *mut MtTriangulation) {
    if !t.is_null() {
        drop(Box::from_raw(t));
    }
}

/// # Safety
/// `t`, `n` and `k` must be valid.
#[no_mangle]
pub unsafe extern "C" fn mt_triangulation_size(t: *const MtTriangulation, n: *mut usize, k: *mut usize) -> MtStatus {
    if t.is_null() || n.is_null() || k.is_null() {
        return fail(MtStatus::NullPointer, "null argument");
    }
    *n = (*t).0.n();
    *k = (*t).0.k();
    MtStatus::Ok
}

/// Relevant edges as `u0 v0 u1 v1 ...`; `len` counts values, not edges.
///
/// # Safety
/// `buf` must hold `cap` values.
#[no_mangle]
pub unsafe extern "C" fn mt_triangulation_edges(
    t: *const MtTriangulation,
    buf: *mut u32,
    cap: usize,
    len: *mut usize,
) -> MtStatus {
    guard(|| {
        if t.is_null() {
            return fail(MtStatus::NullPointer, "t is null");
        }
        write_slice(&flatten_edges((*t).0.relevant()), buf, cap, len)
    })
}

/// Flips the relevant edge `[u, v]` into a new handle and reports the
/// inserted edge in `inserted[0..2]`.
///
/// # Safety
/// `t` and `out` must be valid; `inserted` may be null.
#[no_mangle]
pub unsafe extern "C" fn mt_triangulation_flip(
    t: *const MtTriangulation,
    u: u32,
    v: u32,
    out: *mut *mut MtTriangulation,
    inserted: *mut u32,
) -> MtStatus {
    guard(|| {
        if t.is_null() || out.is_null() {
            return fail(MtStatus::NullPointer, "null argument");
        }
        let f = match edge(u, v) {
            Ok(f) => f,
            Err(s) => return s,
        };
        match (*t).0.flip(f) {
            Ok((t2, rec)) => {
                if !inserted.is_null() {
                    *inserted = rec.inserted.u as u32;
                    *inserted.add(1) = rec.inserted.v as u32;
                }
                handle_out(t2, out)
            }
            Err(e) => from_error(e),
        }
    })
}

/// Beam vector, one entry per beam.
///
/// # Safety
/// `buf` must hold `cap` values.
#[no_mangle]
pub unsafe extern "C" fn mt_beam_vector(t: *const MtTriangulation, buf: *mut u64, cap: usize, len: *mut usize) -> MtStatus {
    guard(|| {
        if t.is_null() {
            return fail(MtStatus::NullPointer, "t is null");
        }
        match beam::beam_vector(&(*t).0) {
            Ok(v) => write_slice(&v, buf, cap, len),
            Err(e) => from_error(e),
        }
    })
}

/// Dyck k-path of the star coloring as `N`/`E` words separated by spaces,
/// NUL terminated. `len` excludes the terminator.
///
/// # Safety
/// `buf` must hold `cap` bytes.
#[no_mangle]
pub unsafe extern "C" fn mt_dyck_path(t: *const MtTriangulation, buf: *mut c_char, cap: usize, len: *mut usize) -> MtStatus {
    guard(|| {
        if t.is_null() || len.is_null() {
            return fail(MtStatus::NullPointer, "null argument");
        }
        let d = match dyck::map_d(&(*t).0) {
            Ok(d) => d,
            Err(e) => return from_error(e),
        };
        let s = d.0.iter().map(|p| p.to_string()).collect::<Vec<_>>().join(" ");
        *len = s.len();
        if s.len() + 1 > cap {
            return fail(MtStatus::BufferTooSmall, format!("need {} bytes", s.len() + 1));
        }
        if buf.is_null() {
            return fail(MtStatus::NullPointer, "buffer is null");
        }
        ptr::copy_nonoverlapping(s.as_ptr() as *const c_char, buf, s.len());
        *buf.add(s.len()) = 0;
        MtStatus::Ok
    })
}

/// Number of k-triangulations of the n-gon, if it fits in 64 bits.
///
/// # Safety
/// `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn mt_count(n: usize, k: usize, out: *mut u64) -> MtStatus {
    guard(|| {
        if out.is_null() {
            return fail(MtStatus::NullPointer, "out is null");
        }
        match flipgraph::count_hankel(n, k) {
            Ok(c) => match u64::try_from(c) {
                Ok(c) => {
                    *out = c;
                    MtStatus::Ok
                }
                Err(_) => fail(MtStatus::Overflow, "count exceeds 64 bits"),
            },
            Err(e) => from_error(e),
        }
    })
}

/// Order and diameter of the flip graph. `max_nodes = 0` means unlimited.
///
/// # Safety
/// `nodes` and `diameter` must be valid.
#[no_mangle]
pub unsafe extern "C" fn mt_flip_graph_diameter(
    n: usize,
    k: usize,
    max_nodes: usize,
    nodes: *mut usize,
    diameter: *mut usize,
) -> MtStatus {
    guard(|| {
        if nodes.is_null() || diameter.is_null() {
            return fail(MtStatus::NullPointer, "null argument");
        }
        match flipgraph::build_flip_graph(n, k, &limits(max_nodes)) {
            Ok(g) => {
                *nodes = g.len();
                *diameter = flipgraph::diameter(&g);
                MtStatus::Ok
            }
            Err(e) => from_error(e),
        }
    })
}

/// f-vector of the beam polytope, `f_0` first. `max_nodes = 0` means unlimited.
///
/// # Safety
/// `buf` must hold `cap` values.
#[no_mangle]
pub unsafe extern "C" fn mt_f_vector(n: usize, k: usize, max_nodes: usize, buf: *mut u64, cap: usize, len: *mut usize) -> MtStatus {
    guard(|| match beam::f_vector(n, k, &limits(max_nodes)) {
        Ok(r) => {
            let f: Vec<u64> = r.f.iter().map(|&x| x as u64).collect();
            write_slice(&f, buf, cap, len)
        }
        Err(e) => from_error(e),
    })
}
