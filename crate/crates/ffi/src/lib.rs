//! C ABI over `susylat`.
//!
//! Every function returns a [`SusylatStatus`] and writes results through out
//! pointers. Lattices and ground-state reports are opaque handles released
//! with their `_free` function. After a failure,
//! [`susylat_last_error_message`] describes it (per thread).

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use susylat::groundstates::{exact_ground_states, GroundStateReport};
use susylat::hilbert::{enumerate_sectors_capped, witten_by_enumeration};
use susylat::lattice::{
    build_chain, build_octagon_square, build_square_diagonal_region, build_square_torus, Axis, BoundarySpec,
    LatticeGraph, TorusSpec, Vec2,
};
use susylat::rank::choose_primes;
use susylat::specfile::{parse_shorthand, parse_specs};
use susylat::tilings::enumerate_tilings_with;
use susylat::transfer::witten_transfer_torus;
use susylat::Error;

/// Result codes.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SusylatStatus {
    Ok = 0,
    InvalidArgument = 1,
    Parse = 2,
    Capacity = 3,
    Inconsistent = 4,
    Internal = 5,
    NullPointer = 6,
    Panic = 7,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SusylatBoundary {
    Torus = 0,
    /// Periodic along the first axis, open along the second.
    Cylinder = 1,
    /// Periodic along the second axis, open along the first.
    CylinderOpenFirst = 2,
    Open = 3,
}

impl From<SusylatBoundary> for BoundarySpec {
    fn from(b: SusylatBoundary) -> Self {
        match b {
            SusylatBoundary::Torus => BoundarySpec::Torus,
            SusylatBoundary::Cylinder => BoundarySpec::CYLINDER,
            SusylatBoundary::CylinderOpenFirst => BoundarySpec::Cylinder { open_axis: Axis::First },
            SusylatBoundary::Open => BoundarySpec::Open,
        }
    }
}

/// Opaque lattice handle.
pub struct SusylatLattice {
    graph: LatticeGraph,
}

/// Opaque ground-state report handle.
pub struct SusylatGroundStates {
    report: GroundStateReport,
}

/// Largest Hilbert space the enumeration entry points accept.
pub const SUSYLAT_MAX_DIM: usize = 5_000_000;

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

fn status_of(e: &Error) -> SusylatStatus {
    match e {
        Error::Capacity { .. } => SusylatStatus::Capacity,
        Error::Spec(_) => SusylatStatus::Parse,
        Error::Inconsistent(_) => SusylatStatus::Inconsistent,
        Error::Internal(_) => SusylatStatus::Internal,
        _ => SusylatStatus::InvalidArgument,
    }
}

/// Runs `f`, translating errors and panics into status codes.
fn guard(f: impl FnOnce() -> Result<(), (SusylatStatus, String)>) -> SusylatStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            set_error(String::new());
            SusylatStatus::Ok
        }
        Ok(Err((status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("panic inside susylat".into());
            SusylatStatus::Panic
        }
    }
}

fn lib(e: Error) -> (SusylatStatus, String) {
    (status_of(&e), e.to_string())
}

fn null(what: &str) -> (SusylatStatus, String) {
    (SusylatStatus::NullPointer, format!("{what} is null"))
}

unsafe fn write_out<T>(out: *mut T, value: T, what: &str) -> Result<(), (SusylatStatus, String)> {
    if out.is_null() {
        return Err(null(what));
    }
    out.write(value);
    Ok(())
}

unsafe fn emit_lattice(
    out: *mut *mut SusylatLattice,
    g: Result<LatticeGraph, Error>,
) -> Result<(), (SusylatStatus, String)> {
    if out.is_null() {
        return Err(null("out"));
    }
    let graph = g.map_err(lib)?;
    out.write(Box::into_raw(Box::new(SusylatLattice { graph })));
    Ok(())
}

fn torus(ux: i64, uy: i64, vx: i64, vy: i64) -> Result<TorusSpec, (SusylatStatus, String)> {
    TorusSpec::new(Vec2::new(ux, uy), Vec2::new(vx, vy)).map_err(lib)
}

/// Builds a lattice from command-line shorthand (`rect:5x5`,
/// `octagon:2x2:torus`, ...) or from a TOML spec holding one `[[lattice]]`.
///
/// # Safety
/// `spec` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn susylat_lattice_from_spec(spec: *const c_char, out: *mut *mut SusylatLattice) -> SusylatStatus {
    guard(|| {
        if spec.is_null() {
            return Err(null("spec"));
        }
        let text = CStr::from_ptr(spec)
            .to_str()
            .map_err(|_| (SusylatStatus::Parse, "spec is not UTF-8".to_string()))?;
        let parsed = if text.contains("[[lattice]]") {
            let mut specs = parse_specs(text).map_err(lib)?;
            if specs.len() != 1 {
                return Err((
                    SusylatStatus::Parse,
                    format!("expected exactly one [[lattice]] entry, found {}", specs.len()),
                ));
            }
            specs.remove(0)
        } else {
            parse_shorthand(text).map_err(lib)?
        };
        emit_lattice(out, parsed.build())
    })
}

/// Square-lattice torus with periodicity vectors `u` and `v`.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn susylat_lattice_square_torus(
    ux: i64,
    uy: i64,
    vx: i64,
    vy: i64,
    out: *mut *mut SusylatLattice,
) -> SusylatStatus {
    guard(|| {
        let t = torus(ux, uy, vx, vy)?;
        emit_lattice(out, Ok(build_square_torus(t)))
    })
}

/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn susylat_lattice_chain(n: usize, periodic: bool, out: *mut *mut SusylatLattice) -> SusylatStatus {
    guard(|| emit_lattice(out, build_chain(n, periodic)))
}

/// Square lattice in the diagonal frame, periodic along `(m,-m)` and `(n,n)`
/// as selected by `boundary`.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn susylat_lattice_square_diagonal(
    m: usize,
    n: usize,
    boundary: SusylatBoundary,
    out: *mut *mut SusylatLattice,
) -> SusylatStatus {
    guard(|| emit_lattice(out, build_square_diagonal_region(m, n, boundary.into())))
}

/// Octagon-square lattice of `m x l` plaquettes without defects.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn susylat_lattice_octagon_square(
    m: usize,
    l: usize,
    boundary: SusylatBoundary,
    out: *mut *mut SusylatLattice,
) -> SusylatStatus {
    guard(|| emit_lattice(out, build_octagon_square(m, l, boundary.into(), &[])))
}

/// # Safety
/// `lattice` must come from a `susylat_lattice_*` constructor and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn susylat_lattice_free(lattice: *mut SusylatLattice) {
    if !lattice.is_null() {
        drop(Box::from_raw(lattice));
    }
}

/// # Safety
/// `lattice` must be a live handle or null (which yields 0).
#[no_mangle]
pub unsafe extern "C" fn susylat_lattice_n_sites(lattice: *const SusylatLattice) -> usize {
    lattice.as_ref().map_or(0, |l| l.graph.n_sites())
}

/// # Safety
/// `lattice` must be a live handle or null (which yields 0).
#[no_mangle]
pub unsafe extern "C" fn susylat_lattice_n_edges(lattice: *const SusylatLattice) -> usize {
    lattice.as_ref().map_or(0, |l| l.graph.edges().len())
}

/// Witten index by enumerating the hard-core configurations.
///
/// # Safety
/// `lattice` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn susylat_witten_enumeration(lattice: *const SusylatLattice, out: *mut i64) -> SusylatStatus {
    guard(|| {
        let l = lattice.as_ref().ok_or_else(|| null("lattice"))?;
        let space = enumerate_sectors_capped(&l.graph, SUSYLAT_MAX_DIM).map_err(lib)?;
        write_out(out, witten_by_enumeration(&space), "out")
    })
}

/// Witten index of a square-lattice torus from the transfer matrix.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn susylat_witten_transfer(ux: i64, uy: i64, vx: i64, vy: i64, out: *mut i64) -> SusylatStatus {
    guard(|| {
        let t = torus(ux, uy, vx, vy)?;
        let width = t.hermite().a;
        if width > 24 {
            return Err(lib(Error::capacity("transfer row width", width as u64, 24)));
        }
        write_out(out, witten_transfer_torus(&t), "out")
    })
}

/// Rhombus tilings of a square-lattice torus, split by tile-count parity.
///
/// # Safety
/// `t_b` and `t_f` must be writable.
#[no_mangle]
pub unsafe extern "C" fn susylat_tilings(
    ux: i64,
    uy: i64,
    vx: i64,
    vy: i64,
    max_nodes: u64,
    t_b: *mut u64,
    t_f: *mut u64,
) -> SusylatStatus {
    guard(|| {
        if t_b.is_null() || t_f.is_null() {
            return Err(null("t_b/t_f"));
        }
        let t = torus(ux, uy, vx, vy)?;
        let e = enumerate_tilings_with(t, max_nodes, false).map_err(lib)?;
        t_b.write(e.count.t_b);
        t_f.write(e.count.t_f);
        Ok(())
    })
}

/// `2` when `3 | d`, else `-1`; `d = 0` is rejected.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn susylat_theta(d: i64, out: *mut i64) -> SusylatStatus {
    guard(|| write_out(out, susylat::theorems::theta(d).map_err(lib)?, "out"))
}

/// Exact ground-state counts per fermion sector.
///
/// # Safety
/// `lattice` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn susylat_ground_states(
    lattice: *const SusylatLattice,
    seed: u64,
    out: *mut *mut SusylatGroundStates,
) -> SusylatStatus {
    guard(|| {
        let l = lattice.as_ref().ok_or_else(|| null("lattice"))?;
        if out.is_null() {
            return Err(null("out"));
        }
        let space = enumerate_sectors_capped(&l.graph, SUSYLAT_MAX_DIM).map_err(lib)?;
        let report = exact_ground_states(&l.graph, &space, choose_primes(seed)).map_err(lib)?;
        out.write(Box::into_raw(Box::new(SusylatGroundStates { report })));
        Ok(())
    })
}

/// # Safety
/// `gs` must be a live handle or null (which yields 0).
#[no_mangle]
pub unsafe extern "C" fn susylat_ground_states_n_sectors(gs: *const SusylatGroundStates) -> usize {
    gs.as_ref().map_or(0, |g| g.report.per_sector.len())
}

/// Ground states at fermion number `f` (0 past the last sector).
///
/// # Safety
/// `gs` must be a live handle or null (which yields 0).
#[no_mangle]
pub unsafe extern "C" fn susylat_ground_states_h(gs: *const SusylatGroundStates, f: usize) -> u64 {
    gs.as_ref().map_or(0, |g| g.report.h(f) as u64)
}

/// Hilbert-space dimension at fermion number `f` (0 past the last sector).
///
/// # Safety
/// `gs` must be a live handle or null (which yields 0).
#[no_mangle]
pub unsafe extern "C" fn susylat_ground_states_dim(gs: *const SusylatGroundStates, f: usize) -> u64 {
    gs.as_ref()
        .and_then(|g| g.report.per_sector.get(f))
        .map_or(0, |s| s.dim as u64)
}

/// # Safety
/// `gs` must be a live handle or null (which yields 0).
#[no_mangle]
pub unsafe extern "C" fn susylat_ground_states_total(gs: *const SusylatGroundStates) -> u64 {
    gs.as_ref().map_or(0, |g| g.report.total as u64)
}

/// # Safety
/// `gs` must be a live handle or null (which yields 0).
#[no_mangle]
pub unsafe extern "C" fn susylat_ground_states_witten(gs: *const SusylatGroundStates) -> i64 {
    gs.as_ref().map_or(0, |g| g.report.witten)
}

/// # Safety
/// `gs` must come from `susylat_ground_states` and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn susylat_ground_states_free(gs: *mut SusylatGroundStates) {
    if !gs.is_null() {
        drop(Box::from_raw(gs));
    }
}

/// Message for the last failing call on this thread; empty after a success.
/// Valid until the next call on the same thread.
#[no_mangle]
pub extern "C" fn susylat_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn susylat_version() -> *const c_char {
    static VERSION: &str = concat!(env!("CARGO_PKG_VERSION"), "\0");
    VERSION.as_ptr().cast()
}
