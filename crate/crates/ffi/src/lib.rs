//! C ABI over the `greenseq` engine.
//!
//! Objects are opaque handles created by `gs_*_new`/`gs_*_parse` style
//! functions and released with the matching `gs_*_free`. Every fallible call
//! returns a [`GsStatus`]; on failure the message is available from
//! [`gs_last_error_message`] on the same thread. Strings returned to the
//! caller are owned by the caller and must be released with
//! [`gs_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use greenseq::mgs::{default_depth_bound, enumerate_mgs, EnumerationConfig, MgsError};
use greenseq::quiver::{framed, ClusterQuiver, IceQuiver, QuiverError, VertexColor};
use greenseq::type_a::{ext_mutually_vanishes, IntervalModule, TypeAQuiver};
use greenseq::{harness, parse_quiver, QuiverFile, SpectrumReport};

/// Bumped on any incompatible change to this interface.
pub const GS_ABI_VERSION: u32 = 1;

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GsStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    ParseError = 3,
    InvalidQuiver = 4,
    InvalidArgument = 5,
    UnknownShape = 6,
    Overflow = 7,
    Internal = 8,
    Panic = 9,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GsColor {
    Green = 0,
    Red = 1,
}

/// Opaque cluster quiver.
pub struct GsClusterQuiver(ClusterQuiver);

/// Opaque ice quiver.
pub struct GsIceQuiver(IceQuiver);

/// Opaque enumeration result.
pub struct GsSpectrumReport(SpectrumReport);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(message: impl Into<String>) {
    let text = message.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(text).ok());
}

fn fail(status: GsStatus, message: impl Into<String>) -> GsStatus {
    set_error(message);
    status
}

fn quiver_status(e: &QuiverError) -> GsStatus {
    match e {
        QuiverError::Overflow => GsStatus::Overflow,
        QuiverError::NotBicolored(_) => GsStatus::Internal,
        QuiverError::MutationAtFrozen(_) | QuiverError::VertexOutOfRange(_) => {
            GsStatus::InvalidArgument
        }
        _ => GsStatus::InvalidQuiver,
    }
}

fn mgs_status(e: &MgsError) -> GsStatus {
    match e {
        MgsError::Quiver(q) => quiver_status(q),
        MgsError::UnknownQuiverShape => GsStatus::UnknownShape,
        MgsError::CountOverflow => GsStatus::Overflow,
        MgsError::ZeroDepthBound | MgsError::ZeroThreads => GsStatus::InvalidArgument,
        MgsError::Pool(_) => GsStatus::Internal,
    }
}

/// Runs `f`, turning a panic into [`GsStatus::Panic`].
fn guard(f: impl FnOnce() -> GsStatus) -> GsStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(status) => {
            if status == GsStatus::Ok {
                LAST_ERROR.with(|e| *e.borrow_mut() = None);
            }
            status
        }
        Err(payload) => {
            let msg = payload
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| payload.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "panic".into());
            fail(GsStatus::Panic, msg)
        }
    }
}

unsafe fn read_str<'a>(ptr: *const c_char) -> Result<&'a str, GsStatus> {
    if ptr.is_null() {
        return Err(fail(GsStatus::NullPointer, "null string"));
    }
    CStr::from_ptr(ptr)
        .to_str()
        .map_err(|_| fail(GsStatus::InvalidUtf8, "string is not UTF-8"))
}

fn into_c_string(s: String) -> *mut c_char {
    CString::new(s.replace('\0', " "))
        .map(CString::into_raw)
        .unwrap_or(ptr::null_mut())
}

macro_rules! non_null {
    ($($p:expr),+) => {
        $(if $p.is_null() {
            return fail(GsStatus::NullPointer, concat!("null argument `", stringify!($p), "`"));
        })+
    };
}

#[no_mangle]
pub extern "C" fn gs_abi_version() -> u32 {
    GS_ABI_VERSION
}

/// Message of the last failed call on this thread, or null. Valid until the
/// next call into this library on the same thread.
#[no_mangle]
pub extern "C" fn gs_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// # Safety
/// `s` must be null or a string returned by this library.
#[no_mangle]
pub unsafe extern "C" fn gs_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parses the plain-text quiver format; the file must not declare frozen
/// vertices.
///
/// # Safety
/// `text` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn gs_cluster_quiver_parse(
    text: *const c_char,
    out: *mut *mut GsClusterQuiver,
) -> GsStatus {
    guard(|| {
        non_null!(out);
        let text = match read_str(text) {
            Ok(t) => t,
            Err(s) => return s,
        };
        match parse_quiver(text) {
            Ok(QuiverFile::Cluster(q)) => {
                *out = Box::into_raw(Box::new(GsClusterQuiver(q)));
                GsStatus::Ok
            }
            Ok(QuiverFile::Ice(_)) => fail(
                GsStatus::InvalidArgument,
                "expected a cluster quiver, found frozen vertices",
            ),
            Err(e) => fail(GsStatus::ParseError, e.to_string()),
        }
    })
}

/// Builds a cluster quiver on `n` vertices from `arrow_count` pairs
/// `(arrows[2i], arrows[2i+1])` of 0-based indices.
///
/// # Safety
/// `arrows` must point to `2 * arrow_count` values (or be null when
/// `arrow_count` is 0) and `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn gs_cluster_quiver_new(
    n: usize,
    arrows: *const usize,
    arrow_count: usize,
    out: *mut *mut GsClusterQuiver,
) -> GsStatus {
    guard(|| {
        non_null!(out);
        if arrow_count > 0 && arrows.is_null() {
            return fail(GsStatus::NullPointer, "null arrow array");
        }
        let flat: &[usize] = if arrow_count == 0 {
            &[]
        } else {
            std::slice::from_raw_parts(arrows, 2 * arrow_count)
        };
        let pairs: Vec<(usize, usize)> = flat.chunks_exact(2).map(|c| (c[0], c[1])).collect();
        match ClusterQuiver::new(n, &pairs) {
            Ok(q) => {
                *out = Box::into_raw(Box::new(GsClusterQuiver(q)));
                GsStatus::Ok
            }
            Err(e) => fail(quiver_status(&e), e.to_string()),
        }
    })
}

/// `Ã_(n,1)` with vertices `0..=n`.
///
/// # Safety
/// `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn gs_affine_quiver_new(
    n: usize,
    out: *mut *mut GsClusterQuiver,
) -> GsStatus {
    guard(|| {
        non_null!(out);
        match harness::build_affine(n) {
            Ok(q) => {
                *out = Box::into_raw(Box::new(GsClusterQuiver(q)));
                GsStatus::Ok
            }
            Err(e) => fail(GsStatus::InvalidArgument, e.to_string()),
        }
    })
}

/// # Safety
/// `q` must be null or a handle from this library, freed at most once.
#[no_mangle]
pub unsafe extern "C" fn gs_cluster_quiver_free(q: *mut GsClusterQuiver) {
    if !q.is_null() {
        drop(Box::from_raw(q));
    }
}

/// # Safety
/// `q` must be a valid handle.
#[no_mangle]
pub unsafe extern "C" fn gs_cluster_quiver_vertex_count(q: *const GsClusterQuiver) -> usize {
    q.as_ref().map_or(0, |q| q.0.n())
}

/// The framed quiver; frozen copy of vertex `i` at index `n + i`.
///
/// # Safety
/// `q` must be a valid handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn gs_framed(
    q: *const GsClusterQuiver,
    out: *mut *mut GsIceQuiver,
) -> GsStatus {
    guard(|| {
        non_null!(q, out);
        let q = &(*q).0;
        *out = Box::into_raw(Box::new(GsIceQuiver(framed(q).with_base(q.base()))));
        GsStatus::Ok
    })
}

/// # Safety
/// `r` must be null or a handle from this library, freed at most once.
#[no_mangle]
pub unsafe extern "C" fn gs_ice_quiver_free(r: *mut GsIceQuiver) {
    if !r.is_null() {
        drop(Box::from_raw(r));
    }
}

/// # Safety
/// `r` must be a valid handle.
#[no_mangle]
pub unsafe extern "C" fn gs_ice_quiver_size(r: *const GsIceQuiver) -> usize {
    r.as_ref().map_or(0, |r| r.0.size())
}

/// Number of arrows `u -> v` (0-based indices).
///
/// # Safety
/// `r` must be a valid handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn gs_ice_quiver_multiplicity(
    r: *const GsIceQuiver,
    u: usize,
    v: usize,
    out: *mut u32,
) -> GsStatus {
    guard(|| {
        non_null!(r, out);
        let r = &(*r).0;
        if u >= r.size() || v >= r.size() {
            return fail(GsStatus::InvalidArgument, "vertex index out of range");
        }
        *out = r.multiplicity(u, v);
        GsStatus::Ok
    })
}

/// Mutation at the non-frozen vertex index `k`, as a new handle.
///
/// # Safety
/// `r` must be a valid handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn gs_ice_quiver_mutate(
    r: *const GsIceQuiver,
    k: usize,
    out: *mut *mut GsIceQuiver,
) -> GsStatus {
    guard(|| {
        non_null!(r, out);
        match (*r).0.mutate(k) {
            Ok(m) => {
                *out = Box::into_raw(Box::new(GsIceQuiver(m)));
                GsStatus::Ok
            }
            Err(e) => fail(quiver_status(&e), e.to_string()),
        }
    })
}

/// # Safety
/// `r` must be a valid handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn gs_ice_quiver_color(
    r: *const GsIceQuiver,
    v: usize,
    out: *mut GsColor,
) -> GsStatus {
    guard(|| {
        non_null!(r, out);
        match (*r).0.color_of(v) {
            Ok(VertexColor::Green) => {
                *out = GsColor::Green;
                GsStatus::Ok
            }
            Ok(VertexColor::Red) => {
                *out = GsColor::Red;
                GsStatus::Ok
            }
            Err(e) => fail(quiver_status(&e), e.to_string()),
        }
    })
}

/// The ice quiver in the plain-text format; free with [`gs_string_free`].
///
/// # Safety
/// `r` must be a valid handle.
#[no_mangle]
pub unsafe extern "C" fn gs_ice_quiver_to_text(r: *const GsIceQuiver) -> *mut c_char {
    match r.as_ref() {
        Some(r) => into_c_string(greenseq::format::ice_to_text(&r.0)),
        None => ptr::null_mut(),
    }
}

/// The family's maximal green sequence length bound.
///
/// # Safety
/// `q` must be a valid handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn gs_default_depth_bound(
    q: *const GsClusterQuiver,
    out: *mut usize,
) -> GsStatus {
    guard(|| {
        non_null!(q, out);
        match default_depth_bound(&(*q).0) {
            Ok(b) => {
                *out = b;
                GsStatus::Ok
            }
            Err(e) => fail(mgs_status(&e), e.to_string()),
        }
    })
}

/// Enumerates maximal green sequences up to `depth_bound` (0: the family's
/// bound).
///
/// # Safety
/// `q` must be a valid handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn gs_enumerate_mgs(
    q: *const GsClusterQuiver,
    depth_bound: usize,
    threads: usize,
    memoize: bool,
    out: *mut *mut GsSpectrumReport,
) -> GsStatus {
    guard(|| {
        non_null!(q, out);
        let q = &(*q).0;
        let bound = if depth_bound == 0 {
            match default_depth_bound(q) {
                Ok(b) => b,
                Err(e) => return fail(mgs_status(&e), e.to_string()),
            }
        } else {
            depth_bound
        };
        let config = EnumerationConfig::new(bound)
            .memoize(memoize)
            .threads(threads);
        match enumerate_mgs(q, &config, None) {
            Ok(r) => {
                *out = Box::into_raw(Box::new(GsSpectrumReport(r)));
                GsStatus::Ok
            }
            Err(e) => fail(mgs_status(&e), e.to_string()),
        }
    })
}

/// # Safety
/// `r` must be null or a handle from this library, freed at most once.
#[no_mangle]
pub unsafe extern "C" fn gs_spectrum_report_free(r: *mut GsSpectrumReport) {
    if !r.is_null() {
        drop(Box::from_raw(r));
    }
}

/// Copies up to `capacity` lengths in ascending order into `buf` and stores
/// the total number of lengths in `len`.
///
/// # Safety
/// `r` must be a valid handle, `buf` must hold `capacity` values (or be null
/// when `capacity` is 0) and `len` must be valid.
#[no_mangle]
pub unsafe extern "C" fn gs_spectrum_report_lengths(
    r: *const GsSpectrumReport,
    buf: *mut usize,
    capacity: usize,
    len: *mut usize,
) -> GsStatus {
    guard(|| {
        non_null!(r, len);
        if capacity > 0 && buf.is_null() {
            return fail(GsStatus::NullPointer, "null buffer");
        }
        let lengths = &(*r).0.lengths;
        for (i, &l) in lengths.iter().take(capacity).enumerate() {
            *buf.add(i) = l;
        }
        *len = lengths.len();
        GsStatus::Ok
    })
}

/// Number of maximal green sequences of the given length.
///
/// # Safety
/// `r` must be a valid handle.
#[no_mangle]
pub unsafe extern "C" fn gs_spectrum_report_count(
    r: *const GsSpectrumReport,
    length: usize,
) -> u64 {
    r.as_ref()
        .and_then(|r| r.0.counts.get(&length).copied())
        .unwrap_or(0)
}

/// # Safety
/// `r` must be a valid handle.
#[no_mangle]
pub unsafe extern "C" fn gs_spectrum_report_truncated(r: *const GsSpectrumReport) -> bool {
    r.as_ref().is_some_and(|r| r.0.truncated)
}

/// # Safety
/// `r` must be a valid handle.
#[no_mangle]
pub unsafe extern "C" fn gs_spectrum_report_states_visited(r: *const GsSpectrumReport) -> u64 {
    r.as_ref().map_or(0, |r| r.0.states_visited)
}

/// The report as JSON; free with [`gs_string_free`].
///
/// # Safety
/// `r` must be a valid handle.
#[no_mangle]
pub unsafe extern "C" fn gs_spectrum_report_to_json(r: *const GsSpectrumReport) -> *mut c_char {
    match r.as_ref() {
        Some(r) => into_c_string(r.0.to_json()),
        None => ptr::null_mut(),
    }
}

/// Whether `L(i, j)` and `L(k, l)` have no extensions either way over the
/// type-A orientation string (e.g. `"+-+"`).
///
/// # Safety
/// `orientation` must be a NUL-terminated string and `out` valid.
#[no_mangle]
pub unsafe extern "C" fn gs_interval_compatible(
    orientation: *const c_char,
    i: usize,
    j: usize,
    k: usize,
    l: usize,
    out: *mut bool,
) -> GsStatus {
    guard(|| {
        non_null!(out);
        let text = match read_str(orientation) {
            Ok(t) => t,
            Err(s) => return s,
        };
        let q: TypeAQuiver = match text.parse() {
            Ok(q) => q,
            Err(e) => return fail(GsStatus::ParseError, format!("{e}")),
        };
        let (a, b) = match (
            IntervalModule::new(i, j, q.n()),
            IntervalModule::new(k, l, q.n()),
        ) {
            (Ok(a), Ok(b)) => (a, b),
            (Err(e), _) | (_, Err(e)) => return fail(GsStatus::InvalidArgument, e.to_string()),
        };
        *out = ext_mutually_vanishes(&q, a, b);
        GsStatus::Ok
    })
}

/// Sincerity of `tau^{-r} P(i)` over `Ã_(n,1)` for all `i` and `1 <= r <= depth`.
///
/// # Safety
/// `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn gs_affine_sincerity(n: usize, depth: usize, out: *mut bool) -> GsStatus {
    guard(|| {
        non_null!(out);
        match harness::affine_preprojective_sincerity(n, depth) {
            Ok(b) => {
                *out = b;
                GsStatus::Ok
            }
            Err(e) => fail(GsStatus::InvalidArgument, e.to_string()),
        }
    })
}
