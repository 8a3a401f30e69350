//! C interface to `centro`.
//!
//! Every fallible function returns a [`CentroStatus`] and writes its result
//! through an out pointer. On failure the out pointer is left untouched and
//! [`centro_last_error`] describes what went wrong. Strings handed out by
//! this library must be released with [`centro_string_free`]; handles with
//! their matching `_free` function.
//!
//! Report-producing calls return text in the CLI's `key: value` layout, or
//! one JSON object when `json` is true. A report can come back together
//! with [`CentroStatus::NotApplicable`], in which case it carries a
//! `reason` line.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, UnwindSafe};
use std::ptr;

use centro::commands::{self, status_for};
use centro::format::{parse_graph, parse_matrix, AnyMatrix, KSpec};
use centro::lattice::{count_matchings, LatticeGraph, ScanOrder, SignConvention};
use centro::regions::{aztec_diamond, aztec_pillow, generalized_pillow, is_rotationally_symmetric, Region};
use centro::report::{Report, Status};
use centro::{Error, Matrix};

/// Result codes. The first four match the `centro` CLI exit codes.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CentroStatus {
    Ok = 0,
    InputError = 1,
    NotApplicable = 2,
    Mismatch = 3,
    NullPointer = 4,
    InvalidUtf8 = 5,
    Panic = 6,
}

/// Sign rule used when building a Kasteleyn matrix.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CentroConvention {
    VerticalLowerBlack = 0,
    HorizontalLeftBlack = 1,
}

/// Order in which a symmetric labeling visits vertices.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CentroScan {
    RowMajor = 0,
    ColumnMajor = 1,
}

/// A parsed matrix together with its source text.
pub struct CentroMatrix {
    text: String,
    matrix: AnyMatrix,
}

/// A region of unit squares.
pub struct CentroRegion {
    region: Region,
}

/// A graph on the doubled-coordinate lattice.
pub struct CentroGraph {
    graph: LatticeGraph,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(message: String) {
    let c = CString::new(message.replace('\0', " ")).expect("nul bytes removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn clear_error() {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
}

struct Failure(CentroStatus);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        set_error(e.to_string());
        Failure(code(status_for(&e)))
    }
}

fn code(s: Status) -> CentroStatus {
    match s {
        Status::Success => CentroStatus::Ok,
        Status::InputError => CentroStatus::InputError,
        Status::NotApplicable => CentroStatus::NotApplicable,
        Status::Mismatch => CentroStatus::Mismatch,
    }
}

fn fail(status: CentroStatus, message: &str) -> Failure {
    set_error(message.to_string());
    Failure(status)
}

/// Runs `f`, catching panics and turning its outcome into a status code.
fn guard<F>(f: F) -> CentroStatus
where
    F: FnOnce() -> Result<CentroStatus, Failure> + UnwindSafe,
{
    clear_error();
    match catch_unwind(f) {
        Ok(Ok(s)) => s,
        Ok(Err(Failure(s))) => s,
        Err(_) => {
            set_error("internal panic".into());
            CentroStatus::Panic
        }
    }
}

unsafe fn text<'a>(p: *const c_char, what: &str) -> Result<&'a str, Failure> {
    if p.is_null() {
        return Err(fail(CentroStatus::NullPointer, &format!("{what} is null")));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| fail(CentroStatus::InvalidUtf8, &format!("{what} is not valid UTF-8")))
}

unsafe fn handle<'a, T>(p: *const T, what: &str) -> Result<&'a T, Failure> {
    p.as_ref()
        .ok_or_else(|| fail(CentroStatus::NullPointer, &format!("{what} is null")))
}

fn check_out<T>(out: *mut T) -> Result<(), Failure> {
    if out.is_null() {
        Err(fail(CentroStatus::NullPointer, "output pointer is null"))
    } else {
        Ok(())
    }
}

fn c_string(s: String) -> *mut c_char {
    CString::new(s).expect("reports contain no nul bytes").into_raw()
}

unsafe fn emit(out: *mut *mut c_char, (report, status): (Report, Status), json: bool) -> CentroStatus {
    let s = if json { report.to_json() } else { report.to_text() };
    *out = c_string(s);
    code(status)
}

unsafe fn emit_handle<T>(out: *mut *mut T, value: T) -> CentroStatus {
    *out = Box::into_raw(Box::new(value));
    CentroStatus::Ok
}

/// Message for the last failure on this thread, or null. The pointer stays
/// valid until the next call into this library on the same thread.
#[no_mangle]
pub extern "C" fn centro_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Releases a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` must come from this library and not have been freed already.
#[no_mangle]
pub unsafe extern "C" fn centro_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parses a matrix in the text format (`rows cols [Q|Fp:<p>]` then entries).
///
/// # Safety
/// `source` must be a nul-terminated string and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn centro_matrix_parse(source: *const c_char, out: *mut *mut CentroMatrix) -> CentroStatus {
    guard(|| {
        let source = text(source, "source")?;
        check_out(out)?;
        let matrix = parse_matrix(source)?;
        Ok(emit_handle(
            out,
            CentroMatrix {
                text: source.to_string(),
                matrix,
            },
        ))
    })
}

/// # Safety
/// `m` must come from [`centro_matrix_parse`] and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn centro_matrix_free(m: *mut CentroMatrix) {
    if !m.is_null() {
        drop(Box::from_raw(m));
    }
}

/// Row and column counts.
///
/// # Safety
/// `m` must be a live handle; `rows` and `cols` writable.
#[no_mangle]
pub unsafe extern "C" fn centro_matrix_dims(
    m: *const CentroMatrix,
    rows: *mut usize,
    cols: *mut usize,
) -> CentroStatus {
    guard(|| {
        let m = handle(m, "matrix")?;
        check_out(rows)?;
        check_out(cols)?;
        (*rows, *cols) = m.matrix.dims();
        Ok(CentroStatus::Ok)
    })
}

fn det_string<F: centro::Field>(m: &Matrix<F>) -> Result<String, Failure> {
    Ok(m.det()?.to_string())
}

/// Exact determinant, written as text in the matrix's field.
///
/// # Safety
/// `m` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn centro_matrix_det(m: *const CentroMatrix, out: *mut *mut c_char) -> CentroStatus {
    guard(|| {
        let m = handle(m, "matrix")?;
        check_out(out)?;
        let det = match &m.matrix {
            AnyMatrix::Rational(a) => det_string(a)?,
            AnyMatrix::Prime(a) => det_string(a)?,
            AnyMatrix::GaussianRational(a) => det_string(a)?,
            AnyMatrix::GaussianPrime(a) => det_string(a)?,
        };
        *out = c_string(det);
        Ok(CentroStatus::Ok)
    })
}

/// Classification, determinant and certificate against `k_spec`
/// (`alt:<2k>`, `simple:<file>` or `full:<file>`).
///
/// # Safety
/// `m` must be a live handle, `k_spec` a nul-terminated string and `out`
/// writable.
#[no_mangle]
pub unsafe extern "C" fn centro_matrix_analyze(
    m: *const CentroMatrix,
    k_spec: *const c_char,
    verify_oracle: bool,
    json: bool,
    out: *mut *mut c_char,
) -> CentroStatus {
    guard(|| {
        let m = handle(m, "matrix")?;
        let k: KSpec = text(k_spec, "k_spec")?.parse()?;
        check_out(out)?;
        Ok(emit(out, commands::analyze(&m.text, &k, verify_oracle)?, json))
    })
}

/// Integral `x^2 + y^2` certificate for an integer matrix.
///
/// # Safety
/// As for [`centro_matrix_analyze`].
#[no_mangle]
pub unsafe extern "C" fn centro_matrix_certify(
    m: *const CentroMatrix,
    k_spec: *const c_char,
    json: bool,
    out: *mut *mut c_char,
) -> CentroStatus {
    guard(|| {
        let m = handle(m, "matrix")?;
        let k: KSpec = text(k_spec, "k_spec")?.parse()?;
        check_out(out)?;
        Ok(emit(out, commands::certify(&m.text, &k)?, json))
    })
}

/// Parses a region given as `row <y>: <x1>..<x2>,...` lines.
///
/// # Safety
/// `source` must be a nul-terminated string and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn centro_region_parse(source: *const c_char, out: *mut *mut CentroRegion) -> CentroStatus {
    guard(|| {
        let region: Region = text(source, "source")?.parse()?;
        check_out(out)?;
        Ok(emit_handle(out, CentroRegion { region }))
    })
}

/// Aztec diamond of order `n`.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn centro_region_aztec_diamond(n: u32, out: *mut *mut CentroRegion) -> CentroStatus {
    guard(|| {
        check_out(out)?;
        Ok(emit_handle(
            out,
            CentroRegion {
                region: aztec_diamond(n)?,
            },
        ))
    })
}

/// Aztec pillow of order `n`.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn centro_region_aztec_pillow(n: u32, out: *mut *mut CentroRegion) -> CentroStatus {
    guard(|| {
        check_out(out)?;
        Ok(emit_handle(
            out,
            CentroRegion {
                region: aztec_pillow(n)?,
            },
        ))
    })
}

/// Pillow from comma-separated odd steps and a `<rows>x<width>` band.
/// A null `lower` mirrors `steps` below the band.
///
/// # Safety
/// `steps` and `band` must be nul-terminated strings, `lower` null or a
/// nul-terminated string, and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn centro_region_pillow(
    steps: *const c_char,
    band: *const c_char,
    lower: *const c_char,
    out: *mut *mut CentroRegion,
) -> CentroStatus {
    guard(|| {
        let upper = text(steps, "steps")?.parse()?;
        let band = text(band, "band")?.parse()?;
        let lower = if lower.is_null() {
            None
        } else {
            Some(text(lower, "lower")?.parse()?)
        };
        check_out(out)?;
        let region = generalized_pillow(&upper, band, lower.as_ref())?;
        Ok(emit_handle(out, CentroRegion { region }))
    })
}

/// # Safety
/// `r` must come from a `centro_region_*` constructor and not be used
/// afterwards.
#[no_mangle]
pub unsafe extern "C" fn centro_region_free(r: *mut CentroRegion) {
    if !r.is_null() {
        drop(Box::from_raw(r));
    }
}

/// Number of cells, or 0 for a null handle.
///
/// # Safety
/// `r` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn centro_region_cells(r: *const CentroRegion) -> usize {
    r.as_ref().map_or(0, |r| r.region.len())
}

/// Whether the region is mapped to itself by 180-degree rotation. False for
/// a null handle.
///
/// # Safety
/// `r` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn centro_region_is_symmetric(r: *const CentroRegion) -> bool {
    r.as_ref().is_some_and(|r| is_rotationally_symmetric(&r.region))
}

/// The region in its text format.
///
/// # Safety
/// `r` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn centro_region_to_string(r: *const CentroRegion, out: *mut *mut c_char) -> CentroStatus {
    guard(|| {
        let r = handle(r, "region")?;
        check_out(out)?;
        *out = c_string(r.region.to_string());
        Ok(CentroStatus::Ok)
    })
}

/// Domino tiling count, optionally with a certificate and a brute-force
/// cross-check.
///
/// # Safety
/// `r` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn centro_region_tile_count(
    r: *const CentroRegion,
    certificate: bool,
    verify_oracle: bool,
    json: bool,
    out: *mut *mut c_char,
) -> CentroStatus {
    guard(|| {
        let r = handle(r, "region")?;
        check_out(out)?;
        let report = commands::tile_count(&r.region.to_string(), certificate, verify_oracle)?;
        Ok(emit(out, report, json))
    })
}

/// Parses a graph given as `v x y` and `e x1 y1 x2 y2` lines.
///
/// # Safety
/// `source` must be a nul-terminated string and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn centro_graph_parse(source: *const c_char, out: *mut *mut CentroGraph) -> CentroStatus {
    guard(|| {
        let graph = parse_graph(text(source, "source")?)?;
        check_out(out)?;
        Ok(emit_handle(out, CentroGraph { graph }))
    })
}

/// # Safety
/// `g` must come from [`centro_graph_parse`] and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn centro_graph_free(g: *mut CentroGraph) {
    if !g.is_null() {
        drop(Box::from_raw(g));
    }
}

/// Number of perfect matchings, as decimal text.
///
/// # Safety
/// `g` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn centro_graph_count(g: *const CentroGraph, out: *mut *mut c_char) -> CentroStatus {
    guard(|| {
        let g = handle(g, "graph")?;
        check_out(out)?;
        *out = c_string(count_matchings(&g.graph)?.to_string());
        Ok(CentroStatus::Ok)
    })
}

/// Matching count, certificate and vertex labeling of a symmetric graph.
///
/// # Safety
/// `g` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn centro_graph_certify(
    g: *const CentroGraph,
    convention: CentroConvention,
    scan: CentroScan,
    json: bool,
    out: *mut *mut c_char,
) -> CentroStatus {
    guard(|| {
        let g = handle(g, "graph")?;
        check_out(out)?;
        let convention = match convention {
            CentroConvention::VerticalLowerBlack => SignConvention::VerticalLowerBlack,
            CentroConvention::HorizontalLeftBlack => SignConvention::HorizontalLeftBlack,
        };
        let scan = match scan {
            CentroScan::RowMajor => ScanOrder::RowMajor,
            CentroScan::ColumnMajor => ScanOrder::ColumnMajor,
        };
        let source = centro::format::format_graph(&g.graph);
        Ok(emit(out, commands::match_certify(&source, convention, scan)?, json))
    })
}

/// Writes the decimal integer `n` as a sum of two squares.
///
/// # Safety
/// `n` must be a nul-terminated string and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn centro_sos(n: *const c_char, all: bool, json: bool, out: *mut *mut c_char) -> CentroStatus {
    guard(|| {
        let n = text(n, "n")?;
        check_out(out)?;
        Ok(emit(out, commands::sos(n, all)?, json))
    })
}
