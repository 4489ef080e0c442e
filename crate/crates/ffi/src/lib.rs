//! C interface to `toricsing`.
//!
//! Objects are passed as opaque handles created by `ts_*_new`-style calls and
//! released with the matching `ts_*_free`. Every fallible call returns a
//! [`TsStatus`]; on failure [`ts_last_error`] describes the problem until the
//! next call on the same thread.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use toricsing::algebra::{initial_ideal, is_squarefree, TermOrder};
use toricsing::betti::{betti_report, EdgeMode};
use toricsing::dynkin::{
    ade_graph, closed_form_configuration, default_bound, incidence_matrix, lipman_configuration,
    AdeKind, Configuration,
};
use toricsing::paperdata::{verify_all, Family};
use toricsing::toric::{toric_ideal, ToricIdeal};
use toricsing::{Budget, Error};

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TsStatus {
    Ok = 0,
    Invalid = 1,
    Budget = 2,
    Incoherent = 3,
    Overflow = 4,
    NullPointer = 5,
    BufferTooSmall = 6,
    Panic = 7,
}

/// A point configuration.
pub struct TsConfig(Configuration);

/// A toric ideal with its reduced Gröbner basis.
pub struct TsIdeal(ToricIdeal);

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

fn status_of(e: &Error) -> TsStatus {
    match e {
        Error::Budget { .. } => TsStatus::Budget,
        Error::IncoherentMarking(_) => TsStatus::Incoherent,
        Error::Overflow(_) => TsStatus::Overflow,
        _ => TsStatus::Invalid,
    }
}

fn guard(f: impl FnOnce() -> Result<(), TsStatus>) -> TsStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => TsStatus::Ok,
        Ok(Err(s)) => s,
        Err(_) => {
            set_error("internal panic");
            TsStatus::Panic
        }
    }
}

fn fail(e: Error) -> TsStatus {
    set_error(&e.to_string());
    status_of(&e)
}

fn null() -> TsStatus {
    set_error("null pointer argument");
    TsStatus::NullPointer
}

fn kind_of(k: c_char) -> Result<AdeKind, TsStatus> {
    match k as u8 {
        b'A' | b'a' => Ok(AdeKind::A),
        b'D' | b'd' => Ok(AdeKind::D),
        b'E' | b'e' => Ok(AdeKind::E),
        _ => {
            set_error("kind must be 'A', 'D' or 'E'");
            Err(TsStatus::Invalid)
        }
    }
}

fn budget(steps: u64) -> Budget {
    if steps == 0 {
        Budget::default()
    } else {
        Budget {
            reduction_steps: steps,
            ..Budget::default()
        }
    }
}

/// Message for the last failed call on this thread. Owned by the library and
/// valid until the next call.
#[no_mangle]
pub extern "C" fn ts_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Closed-form configuration of D_n or E_n (A_n falls back to the Hilbert
/// basis).
///
/// # Safety
/// `out` must be a valid pointer to writable storage for one handle.
#[no_mangle]
pub unsafe extern "C" fn ts_config_closed_form(
    kind: c_char,
    n: usize,
    out: *mut *mut TsConfig,
) -> TsStatus {
    guard(|| {
        if out.is_null() {
            return Err(null());
        }
        let k = kind_of(kind)?;
        let c = if k == AdeKind::A {
            let m = incidence_matrix(&ade_graph(k, n).map_err(fail)?);
            lipman_configuration(&m, default_bound(n))
        } else {
            closed_form_configuration(k, n)
        }
        .map_err(fail)?;
        *out = Box::into_raw(Box::new(TsConfig(c)));
        Ok(())
    })
}

/// Hilbert basis configuration of the diagram, searched in a box of the given
/// bound (0 for the default).
///
/// # Safety
/// `out` must be a valid pointer to writable storage for one handle.
#[no_mangle]
pub unsafe extern "C" fn ts_config_lipman(
    kind: c_char,
    n: usize,
    bound: u32,
    out: *mut *mut TsConfig,
) -> TsStatus {
    guard(|| {
        if out.is_null() {
            return Err(null());
        }
        let k = kind_of(kind)?;
        let m = incidence_matrix(&ade_graph(k, n).map_err(fail)?);
        let b = if bound == 0 { default_bound(n) } else { bound };
        let c = lipman_configuration(&m, b).map_err(fail)?;
        *out = Box::into_raw(Box::new(TsConfig(c)));
        Ok(())
    })
}

/// Configuration from `npoints` points of dimension `dim`, stored row-major.
///
/// # Safety
/// `data` must point to `npoints * dim` readable values and `out` to writable
/// storage for one handle.
#[no_mangle]
pub unsafe extern "C" fn ts_config_from_points(
    data: *const i64,
    npoints: usize,
    dim: usize,
    out: *mut *mut TsConfig,
) -> TsStatus {
    guard(|| {
        if data.is_null() || out.is_null() {
            return Err(null());
        }
        let flat = std::slice::from_raw_parts(data, npoints * dim);
        let pts = flat.chunks(dim.max(1)).map(<[i64]>::to_vec).collect();
        let c = Configuration::with_default_names(pts).map_err(fail)?;
        *out = Box::into_raw(Box::new(TsConfig(c)));
        Ok(())
    })
}

/// Number of points, or 0 for a null handle.
///
/// # Safety
/// `cfg` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn ts_config_len(cfg: *const TsConfig) -> usize {
    cfg.as_ref().map_or(0, |c| c.0.len())
}

/// Ambient dimension, or 0 for a null handle.
///
/// # Safety
/// `cfg` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn ts_config_dim(cfg: *const TsConfig) -> usize {
    cfg.as_ref().map_or(0, |c| c.0.n())
}

/// Copy point `index` into `buf`, which holds `cap` values.
///
/// # Safety
/// `cfg` must be a live handle and `buf` must have room for `cap` values.
#[no_mangle]
pub unsafe extern "C" fn ts_config_point(
    cfg: *const TsConfig,
    index: usize,
    buf: *mut i64,
    cap: usize,
) -> TsStatus {
    guard(|| {
        let (Some(c), false) = (cfg.as_ref(), buf.is_null()) else {
            return Err(null());
        };
        let Some(p) = c.0.points().get(index) else {
            set_error("point index out of range");
            return Err(TsStatus::Invalid);
        };
        if cap < p.len() {
            set_error("buffer too small");
            return Err(TsStatus::BufferTooSmall);
        }
        ptr::copy_nonoverlapping(p.as_ptr(), buf, p.len());
        Ok(())
    })
}

/// # Safety
/// `cfg` must be null or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn ts_config_free(cfg: *mut TsConfig) {
    if !cfg.is_null() {
        drop(Box::from_raw(cfg));
    }
}

/// Toric ideal of `cfg` under an order such as `"degrevlex"` or
/// `"lex:3,1,2"`. `steps` bounds the reduction work; 0 selects the default.
///
/// # Safety
/// `cfg` must be a live handle, `order` a NUL-terminated string and `out`
/// writable storage for one handle.
#[no_mangle]
pub unsafe extern "C" fn ts_toric_ideal(
    cfg: *const TsConfig,
    order: *const c_char,
    steps: u64,
    out: *mut *mut TsIdeal,
) -> TsStatus {
    guard(|| {
        let (Some(c), false, false) = (cfg.as_ref(), order.is_null(), out.is_null()) else {
            return Err(null());
        };
        let spec = CStr::from_ptr(order).to_str().map_err(|_| {
            set_error("order is not UTF-8");
            TsStatus::Invalid
        })?;
        let o = TermOrder::parse(spec, c.0.len()).map_err(fail)?;
        let i = toric_ideal(&c.0, &o, &budget(steps)).map_err(fail)?;
        *out = Box::into_raw(Box::new(TsIdeal(i)));
        Ok(())
    })
}

/// Number of reduced Gröbner basis elements, or 0 for a null handle.
///
/// # Safety
/// `ideal` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn ts_ideal_len(ideal: *const TsIdeal) -> usize {
    ideal.as_ref().map_or(0, |i| i.0.gb().len())
}

/// Number of variables, or 0 for a null handle.
///
/// # Safety
/// `ideal` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn ts_ideal_nvars(ideal: *const TsIdeal) -> usize {
    ideal.as_ref().map_or(0, |i| i.0.nvars())
}

/// Exponent vectors of element `index`: lead into `lead`, trail into
/// `trail`, each with room for `cap` values.
///
/// # Safety
/// `ideal` must be a live handle; `lead` and `trail` must each have room for
/// `cap` values.
#[no_mangle]
pub unsafe extern "C" fn ts_ideal_element(
    ideal: *const TsIdeal,
    index: usize,
    lead: *mut u32,
    trail: *mut u32,
    cap: usize,
) -> TsStatus {
    guard(|| {
        let (Some(i), false, false) = (ideal.as_ref(), lead.is_null(), trail.is_null()) else {
            return Err(null());
        };
        let Some(b) = i.0.gb().elements().get(index) else {
            set_error("element index out of range");
            return Err(TsStatus::Invalid);
        };
        let n = i.0.nvars();
        if cap < n {
            set_error("buffer too small");
            return Err(TsStatus::BufferTooSmall);
        }
        ptr::copy_nonoverlapping(b.lead().exps().as_ptr(), lead, n);
        ptr::copy_nonoverlapping(b.trail().exps().as_ptr(), trail, n);
        Ok(())
    })
}

/// Whether the initial ideal is generated by squarefree monomials.
///
/// # Safety
/// `ideal` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn ts_ideal_is_squarefree(ideal: *const TsIdeal, out: *mut bool) -> TsStatus {
    guard(|| {
        let (Some(i), false) = (ideal.as_ref(), out.is_null()) else {
            return Err(null());
        };
        *out = is_squarefree(&initial_ideal(i.0.gb()));
        Ok(())
    })
}

/// Reduced Gröbner basis as JSON. Release with [`ts_string_free`].
///
/// # Safety
/// `ideal` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn ts_ideal_to_json(
    ideal: *const TsIdeal,
    out: *mut *mut c_char,
) -> TsStatus {
    guard(|| {
        let (Some(i), false) = (ideal.as_ref(), out.is_null()) else {
            return Err(null());
        };
        let s = serde_json::to_string(i.0.gb()).expect("serializable");
        *out = CString::new(s).expect("no NUL in JSON").into_raw();
        Ok(())
    })
}

/// Number of minimal generating sets in decimal. Release with
/// [`ts_string_free`].
///
/// # Safety
/// `ideal` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn ts_count_minimal_generating_sets(
    ideal: *const TsIdeal,
    out: *mut *mut c_char,
) -> TsStatus {
    guard(|| {
        let (Some(i), false) = (ideal.as_ref(), out.is_null()) else {
            return Err(null());
        };
        let r = betti_report(&i.0, EdgeMode::Gcd, 0, &Budget::default()).map_err(fail)?;
        *out = CString::new(r.min_gen_set_count.to_string())
            .expect("digits")
            .into_raw();
        Ok(())
    })
}

/// # Safety
/// `ideal` must be null or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn ts_ideal_free(ideal: *mut TsIdeal) {
    if !ideal.is_null() {
        drop(Box::from_raw(ideal));
    }
}

/// Run every check on the printed Gröbner basis of D_n or E_n. `all_pass`
/// receives the overall verdict; `report_json`, if not null, the full
/// report (release with [`ts_string_free`]).
///
/// # Safety
/// `all_pass` must be writable; `report_json` must be null or writable.
#[no_mangle]
pub unsafe extern "C" fn ts_verify(
    kind: c_char,
    n: usize,
    all_pass: *mut bool,
    report_json: *mut *mut c_char,
) -> TsStatus {
    guard(|| {
        if all_pass.is_null() {
            return Err(null());
        }
        let family = Family::of(kind_of(kind)?, n).map_err(fail)?;
        let r = verify_all(family, n, &Budget::default()).map_err(fail)?;
        *all_pass = r.all_pass();
        if !report_json.is_null() {
            let s = serde_json::to_string(&r).expect("serializable");
            *report_json = CString::new(s).expect("no NUL in JSON").into_raw();
        }
        Ok(())
    })
}

/// # Safety
/// `s` must be null or a string returned by this library and not yet freed.
#[no_mangle]
pub unsafe extern "C" fn ts_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}
