//! C interface to liftlab-core.
//!
//! Objects cross the boundary as opaque pointers created by `liftlab_*_new`
//! style constructors and released with the matching `*_free`. Fallible calls
//! return a [`LiftlabStatus`]; the message of the most recent failure on the
//! calling thread is available from [`liftlab_last_error`].

use std::cell::RefCell;
use std::ffi::{c_char, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;
use std::sync::Arc;

use liftlab_core::design::{conjecture_rm1, supports, verify_design, DesignCertificate, DesignStatus};
use liftlab_core::families::{hamming, prm, rm2, simplex, simplex_trace};
use liftlab_core::lifting::lift;
use liftlab_core::{Config, Error, FieldSpec, Gf, LinearCode, Matrix, Strategy, WeightDistribution};
use num_traits::ToPrimitive;

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LiftlabStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    BudgetExceeded = 3,
    Overflow = 4,
    Failed = 5,
    Panic = 6,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LiftlabFamily {
    Simplex = 0,
    SimplexTrace = 1,
    Hamming = 2,
    /// Binary Reed-Muller RM(order, m); `q` must be 2.
    ReedMuller = 3,
    /// Projective Reed-Muller of degree `order`.
    ProjectiveReedMuller = 4,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LiftlabMethod {
    Auto = 0,
    Direct = 1,
    ViaDual = 2,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LiftlabDesignStatus {
    Verified = 0,
    NotADesign = 1,
    CompleteDesign = 2,
}

/// Outcome of a design check. `lambda` is meaningful only when `is_design`.
#[repr(C)]
#[derive(Debug, Clone, Copy)]
pub struct LiftlabCertificate {
    pub t: u64,
    pub v: u64,
    pub k: u64,
    pub b: u64,
    pub lambda: u64,
    pub is_design: bool,
    pub status: LiftlabDesignStatus,
}

fn certificate(cert: &DesignCertificate) -> LiftlabCertificate {
    let status = match cert.status {
        DesignStatus::Verified => LiftlabDesignStatus::Verified,
        DesignStatus::NotADesign => LiftlabDesignStatus::NotADesign,
        DesignStatus::CompleteDesign => LiftlabDesignStatus::CompleteDesign,
    };
    LiftlabCertificate {
        t: cert.t as u64,
        v: cert.v as u64,
        k: cert.k as u64,
        b: cert.b as u64,
        lambda: cert.lambda.unwrap_or(0),
        is_design: cert.lambda.is_some(),
        status,
    }
}

pub struct LiftlabConfig(Config);
pub struct LiftlabField(Arc<FieldSpec>);
pub struct LiftlabCode(LinearCode);
pub struct LiftlabWeights(WeightDistribution);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let msg = CString::new(msg.into().replace('\0', " ")).expect("no interior nul");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(msg));
}

fn fail(status: LiftlabStatus, msg: impl Into<String>) -> LiftlabStatus {
    set_error(msg);
    status
}

fn from_error(e: Error) -> LiftlabStatus {
    let status = if e.is_budget() {
        LiftlabStatus::BudgetExceeded
    } else {
        match e {
            Error::NotPrime(_)
            | Error::ZeroDegree
            | Error::OrderTooLarge { .. }
            | Error::InvalidParameter(_)
            | Error::DimensionMismatch(_)
            | Error::WrongField
            | Error::LengthTooLarge { .. } => LiftlabStatus::InvalidArgument,
            _ => LiftlabStatus::Failed,
        }
    };
    fail(status, e.to_string())
}

fn guard(f: impl FnOnce() -> LiftlabStatus) -> LiftlabStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(s) => s,
        Err(p) => {
            let msg = p
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| p.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "panic".to_string());
            fail(LiftlabStatus::Panic, msg)
        }
    }
}

unsafe fn config_or_env(cfg: *const LiftlabConfig, slot: &mut Option<Config>) -> &Config {
    match cfg.as_ref() {
        Some(c) => &c.0,
        None => slot.insert(Config::from_env()),
    }
}

fn put<T>(out: *mut *mut T, value: T) -> LiftlabStatus {
    unsafe { *out = Box::into_raw(Box::new(value)) };
    LiftlabStatus::Ok
}

macro_rules! require {
    ($($p:expr),+) => {
        $(if $p.is_null() {
            return fail(LiftlabStatus::NullPointer, concat!("null argument: ", stringify!($p)));
        })+
    };
}

/// Message of the last failure on this thread, or NULL. Valid until the next
/// failing call on the same thread.
#[no_mangle]
pub extern "C" fn liftlab_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Releases a string returned by this library.
///
/// # Safety
/// `s` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn liftlab_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// A configuration; zero for `budget` or `subset_budget` keeps the default,
/// zero `workers` uses every available core.
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn liftlab_config_new(
    budget: u64,
    subset_budget: u64,
    workers: u32,
    out: *mut *mut LiftlabConfig,
) -> LiftlabStatus {
    require!(out);
    let mut cfg = Config::from_env();
    if budget > 0 {
        cfg.enumeration_budget = budget;
    }
    if subset_budget > 0 {
        cfg.subset_budget = subset_budget;
    }
    if workers > 0 {
        cfg = cfg.with_workers(workers as usize);
    }
    put(out, LiftlabConfig(cfg))
}

/// # Safety
/// `cfg` must come from [`liftlab_config_new`] or be NULL.
#[no_mangle]
pub unsafe extern "C" fn liftlab_config_free(cfg: *mut LiftlabConfig) {
    if !cfg.is_null() {
        drop(Box::from_raw(cfg));
    }
}

/// The field GF(q).
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn liftlab_field_new(q: u64, out: *mut *mut LiftlabField) -> LiftlabStatus {
    require!(out);
    guard(|| match FieldSpec::from_order(q, Config::default().max_field_order) {
        Ok(f) => put(out, LiftlabField(f)),
        Err(e) => from_error(e),
    })
}

/// # Safety
/// `field` must be a valid handle.
#[no_mangle]
pub unsafe extern "C" fn liftlab_field_order(field: *const LiftlabField) -> u64 {
    field.as_ref().map_or(0, |f| f.0.order() as u64)
}

/// # Safety
/// `field` must be a valid handle.
#[no_mangle]
pub unsafe extern "C" fn liftlab_field_characteristic(field: *const LiftlabField) -> u64 {
    field.as_ref().map_or(0, |f| f.0.characteristic() as u64)
}

/// # Safety
/// `field` must come from [`liftlab_field_new`] or be NULL.
#[no_mangle]
pub unsafe extern "C" fn liftlab_field_free(field: *mut LiftlabField) {
    if !field.is_null() {
        drop(Box::from_raw(field));
    }
}

/// A named code family over GF(q). `order` is the Reed-Muller order or
/// projective degree and is ignored otherwise.
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn liftlab_code_family(
    family: LiftlabFamily,
    q: u64,
    m: u32,
    order: u32,
    out: *mut *mut LiftlabCode,
) -> LiftlabStatus {
    require!(out);
    guard(|| {
        if family == LiftlabFamily::ReedMuller && q != 2 {
            return fail(LiftlabStatus::InvalidArgument, "Reed-Muller codes are binary");
        }
        let field = match FieldSpec::from_order(q, Config::default().max_field_order) {
            Ok(f) => f,
            Err(e) => return from_error(e),
        };
        let code = match family {
            LiftlabFamily::Simplex => simplex(&field, m),
            LiftlabFamily::SimplexTrace => simplex_trace(&field, m),
            LiftlabFamily::Hamming => hamming(&field, m),
            LiftlabFamily::ReedMuller => rm2(order, m),
            LiftlabFamily::ProjectiveReedMuller => prm(&field, m, order),
        };
        match code {
            Ok(c) => put(out, LiftlabCode(c)),
            Err(e) => from_error(e),
        }
    })
}

/// The code spanned by the rows of a `rows x cols` matrix over `field`,
/// entries given row-major as element indices.
///
/// # Safety
/// `data` must point to `rows * cols` values; `field` and `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn liftlab_code_from_generator(
    field: *const LiftlabField,
    rows: usize,
    cols: usize,
    data: *const u32,
    out: *mut *mut LiftlabCode,
) -> LiftlabStatus {
    require!(field, data, out);
    let f = Arc::clone(&(*field).0);
    let Some(len) = rows.checked_mul(cols) else {
        return fail(LiftlabStatus::InvalidArgument, "matrix too large");
    };
    let values = std::slice::from_raw_parts(data, len);
    guard(|| {
        if let Some(&bad) = values.iter().find(|&&x| !f.contains(Gf(x))) {
            return fail(LiftlabStatus::InvalidArgument, format!("{bad} is not an element of GF({})", f.order()));
        }
        let rows: Vec<Vec<Gf>> = values.chunks(cols.max(1)).map(|r| r.iter().map(|&x| Gf(x)).collect()).collect();
        match Matrix::from_rows(f, rows).and_then(|g| LinearCode::from_generator(&g)) {
            Ok(c) => put(out, LiftlabCode(c)),
            Err(e) => from_error(e),
        }
    })
}

/// The extension of `code` to GF(q^degree).
///
/// # Safety
/// `code` and `out` must be valid; `cfg` may be NULL.
#[no_mangle]
pub unsafe extern "C" fn liftlab_code_lift(
    code: *const LiftlabCode,
    degree: u32,
    cfg: *const LiftlabConfig,
    out: *mut *mut LiftlabCode,
) -> LiftlabStatus {
    require!(code, out);
    let mut slot = None;
    let cfg = config_or_env(cfg, &mut slot);
    guard(|| match lift(&(*code).0, degree, cfg) {
        Ok(l) => put(out, LiftlabCode(l.code().clone())),
        Err(e) => from_error(e),
    })
}

/// # Safety
/// `code` must be a valid handle.
#[no_mangle]
pub unsafe extern "C" fn liftlab_code_length(code: *const LiftlabCode) -> usize {
    code.as_ref().map_or(0, |c| c.0.length())
}

/// # Safety
/// `code` must be a valid handle.
#[no_mangle]
pub unsafe extern "C" fn liftlab_code_dimension(code: *const LiftlabCode) -> usize {
    code.as_ref().map_or(0, |c| c.0.dimension())
}

/// # Safety
/// `code` must be a valid handle.
#[no_mangle]
pub unsafe extern "C" fn liftlab_code_field_order(code: *const LiftlabCode) -> u64 {
    code.as_ref().map_or(0, |c| c.0.field().order() as u64)
}

/// # Safety
/// `code` must come from this library or be NULL.
#[no_mangle]
pub unsafe extern "C" fn liftlab_code_free(code: *mut LiftlabCode) {
    if !code.is_null() {
        drop(Box::from_raw(code));
    }
}

/// Exact weight distribution of `code`.
///
/// # Safety
/// `code` and `out` must be valid; `cfg` may be NULL.
#[no_mangle]
pub unsafe extern "C" fn liftlab_code_weights(
    code: *const LiftlabCode,
    method: LiftlabMethod,
    cfg: *const LiftlabConfig,
    out: *mut *mut LiftlabWeights,
) -> LiftlabStatus {
    require!(code, out);
    let mut slot = None;
    let cfg = config_or_env(cfg, &mut slot);
    let strategy = match method {
        LiftlabMethod::Auto => Strategy::Auto,
        LiftlabMethod::Direct => Strategy::Direct,
        LiftlabMethod::ViaDual => Strategy::ViaDual,
    };
    guard(|| match (*code).0.weight_distribution(strategy, cfg) {
        Ok(w) => put(out, LiftlabWeights(w)),
        Err(e) => from_error(e),
    })
}

/// Number of entries, `n + 1`.
///
/// # Safety
/// `w` must be a valid handle.
#[no_mangle]
pub unsafe extern "C" fn liftlab_weights_len(w: *const LiftlabWeights) -> usize {
    w.as_ref().map_or(0, |w| w.0.counts().len())
}

/// `A_i` when it fits in 64 bits.
///
/// # Safety
/// `w` and `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn liftlab_weights_count_u64(w: *const LiftlabWeights, i: usize, out: *mut u64) -> LiftlabStatus {
    require!(w, out);
    let Some(c) = (*w).0.counts().get(i) else {
        return fail(LiftlabStatus::InvalidArgument, format!("weight {i} out of range"));
    };
    match c.to_u64() {
        Some(v) => {
            *out = v;
            LiftlabStatus::Ok
        }
        None => fail(LiftlabStatus::Overflow, format!("A_{i} = {c} does not fit in 64 bits")),
    }
}

/// `A_i` in decimal; release with [`liftlab_string_free`]. NULL when `i` is
/// out of range.
///
/// # Safety
/// `w` must be a valid handle.
#[no_mangle]
pub unsafe extern "C" fn liftlab_weights_count_string(w: *const LiftlabWeights, i: usize) -> *mut c_char {
    let Some(c) = w.as_ref().and_then(|w| w.0.counts().get(i)) else {
        set_error(format!("weight {i} out of range"));
        return ptr::null_mut();
    };
    CString::new(c.to_string()).expect("digits").into_raw()
}

/// The enumerator polynomial, e.g. `1 + 7z^3 + 7z^4 + 1z^7`; release with
/// [`liftlab_string_free`].
///
/// # Safety
/// `w` must be a valid handle.
#[no_mangle]
pub unsafe extern "C" fn liftlab_weights_enumerator(w: *const LiftlabWeights) -> *mut c_char {
    match w.as_ref() {
        Some(w) => CString::new(w.0.to_string()).expect("no nul").into_raw(),
        None => ptr::null_mut(),
    }
}

/// # Safety
/// `w` must come from this library or be NULL.
#[no_mangle]
pub unsafe extern "C" fn liftlab_weights_free(w: *mut LiftlabWeights) {
    if !w.is_null() {
        drop(Box::from_raw(w));
    }
}

/// Checks whether the supports of the weight-`weight` codewords form a
/// `t`-design.
///
/// # Safety
/// `code` and `out` must be valid; `cfg` may be NULL.
#[no_mangle]
pub unsafe extern "C" fn liftlab_design_verify(
    code: *const LiftlabCode,
    weight: usize,
    t: usize,
    cfg: *const LiftlabConfig,
    out: *mut LiftlabCertificate,
) -> LiftlabStatus {
    require!(code, out);
    let mut slot = None;
    let cfg = config_or_env(cfg, &mut slot);
    guard(|| {
        let cert = match supports(&(*code).0, weight, cfg).and_then(|(d, _)| verify_design(&d, t, cfg)) {
            Ok(c) => c,
            Err(e) => return from_error(e),
        };
        *out = certificate(&cert);
        LiftlabStatus::Ok
    })
}

/// Verifies the predicted 3-design in RM(1, m) lifted to GF(4).
///
/// # Safety
/// `agree` and `out` must be valid; `cfg` may be NULL.
#[no_mangle]
pub unsafe extern "C" fn liftlab_conjecture_rm1(
    m: u32,
    cfg: *const LiftlabConfig,
    agree: *mut bool,
    out: *mut LiftlabCertificate,
) -> LiftlabStatus {
    require!(agree, out);
    let mut slot = None;
    let cfg = config_or_env(cfg, &mut slot);
    guard(|| match conjecture_rm1(m, cfg) {
        Ok(r) => {
            *agree = r.agree;
            *out = certificate(&r.certificate);
            LiftlabStatus::Ok
        }
        Err(e) => from_error(e),
    })
}
