//! C ABI over the `gqm` library.
//!
//! Conventions (mirrored in `include/gqm.h`):
//! - Every fallible call returns a `GqmStatus` code and writes its result
//!   through an out pointer, which is left untouched on failure.
//! - `GqmField` is an opaque handle created by `gqm_field_new` or
//!   `gqm_field_from_order` and released with `gqm_field_free`.
//! - Field elements cross the boundary as their integer encodings
//!   (`0 <= enc < q`, enumeration order; `0` is zero, `1` is one).
//! - Strings returned through `char**` are NUL-terminated UTF-8 allocated by
//!   this library; release them with `gqm_string_free`. Strings returned as
//!   `const char*` are static and must not be freed.
//! - Report calls produce the same JSON documents as the CLI's
//!   `--format json`.
//!
//! Panics never unwind across the boundary; they surface as
//! `GQM_ERR_INTERNAL`.

use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::sync::Arc;

use gqm::gf::FieldCtx;
use gqm::report::{self, GqmLhvState};
use gqm::Error;

/// Opaque field handle.
pub struct GqmField {
    ctx: Arc<FieldCtx>,
}

pub const GQM_OK: i32 = 0;
pub const GQM_ERR_NULL_POINTER: i32 = 1;
pub const GQM_ERR_INVALID_ARGUMENT: i32 = 2;
pub const GQM_ERR_DOMAIN: i32 = 3;
pub const GQM_ERR_UTF8: i32 = 4;
pub const GQM_ERR_INTERNAL: i32 = 5;

fn status_of(e: &Error) -> i32 {
    match e {
        Error::InvalidPrime(_)
        | Error::InvalidDegree(_)
        | Error::FieldTooLarge(..)
        | Error::InvalidField(_)
        | Error::InvalidArgs(_)
        | Error::BadIndex { .. }
        | Error::TooLarge(_)
        | Error::BadTable(_)
        | Error::ShapeMismatch(_) => GQM_ERR_INVALID_ARGUMENT,
        Error::FieldMismatch
        | Error::DivisionByZero
        | Error::ZeroVector
        | Error::BadBasis(_)
        | Error::OutcomeNotInObservable
        | Error::DegenerateObservable
        | Error::DuplicateOutcomeValue
        | Error::DegenerateSinglet
        | Error::BadObservable
        | Error::AdditionForbidden => GQM_ERR_DOMAIN,
        Error::InternalInvariantViolation(_) => GQM_ERR_INTERNAL,
    }
}

/// Version of the underlying library, as a static string.
#[no_mangle]
pub extern "C" fn gqm_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr() as *const c_char
}

/// Static description of a status code.
#[no_mangle]
pub extern "C" fn gqm_status_message(status: i32) -> *const c_char {
    let msg: &'static str = match status {
        GQM_OK => "ok\0",
        GQM_ERR_NULL_POINTER => "null pointer argument\0",
        GQM_ERR_INVALID_ARGUMENT => "invalid argument\0",
        GQM_ERR_DOMAIN => "domain error\0",
        GQM_ERR_UTF8 => "invalid UTF-8 in input string\0",
        GQM_ERR_INTERNAL => "internal error\0",
        _ => "unknown status\0",
    };
    msg.as_ptr() as *const c_char
}

/// Release a string allocated by this library. NULL is ignored.
///
/// # Safety
/// `s` must be NULL or a pointer previously returned through a `char**` out
/// parameter of this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn gqm_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

fn write_string(out: *mut *mut c_char, value: String) -> i32 {
    match CString::new(value) {
        Ok(cstr) => {
            unsafe { *out = cstr.into_raw() };
            GQM_OK
        }
        Err(_) => GQM_ERR_INTERNAL,
    }
}

fn guarded(body: impl FnOnce() -> i32) -> i32 {
    catch_unwind(AssertUnwindSafe(body)).unwrap_or(GQM_ERR_INTERNAL)
}

/// Construct GF(p^n). On success writes a handle that must be released with
/// `gqm_field_free`.
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn gqm_field_new(p: u64, n: u32, out: *mut *mut GqmField) -> i32 {
    if out.is_null() {
        return GQM_ERR_NULL_POINTER;
    }
    guarded(|| match FieldCtx::new(p, n) {
        Ok(ctx) => {
            let handle = Box::new(GqmField { ctx: Arc::new(ctx) });
            unsafe { *out = Box::into_raw(handle) };
            GQM_OK
        }
        Err(e) => status_of(&e),
    })
}

/// Construct GF(q) from the prime power q.
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn gqm_field_from_order(q: u64, out: *mut *mut GqmField) -> i32 {
    if out.is_null() {
        return GQM_ERR_NULL_POINTER;
    }
    guarded(|| match FieldCtx::for_order(q) {
        Ok(ctx) => {
            unsafe { *out = Box::into_raw(Box::new(GqmField { ctx })) };
            GQM_OK
        }
        Err(e) => status_of(&e),
    })
}

/// Release a field handle. NULL is ignored.
///
/// # Safety
/// `field` must be NULL or a handle from `gqm_field_new`/
/// `gqm_field_from_order`, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn gqm_field_free(field: *mut GqmField) {
    if !field.is_null() {
        drop(Box::from_raw(field));
    }
}

unsafe fn field_ref<'a>(field: *const GqmField) -> Option<&'a GqmField> {
    field.as_ref()
}

macro_rules! field_getter {
    ($(#[$doc:meta])* $name:ident, $ty:ty, $get:expr) => {
        $(#[$doc])*
        /// # Safety
        /// `field` must be a live handle and `out` a valid pointer.
        #[no_mangle]
        pub unsafe extern "C" fn $name(field: *const GqmField, out: *mut $ty) -> i32 {
            let Some(f) = field_ref(field) else { return GQM_ERR_NULL_POINTER };
            if out.is_null() {
                return GQM_ERR_NULL_POINTER;
            }
            let getter: fn(&GqmField) -> $ty = $get;
            *out = getter(f);
            GQM_OK
        }
    };
}

field_getter!(
    /// The field order q = p^n.
    gqm_field_order, u64, |f| f.ctx.q());
field_getter!(
    /// The characteristic p.
    gqm_field_characteristic, u64, |f| f.ctx.characteristic());
field_getter!(
    /// The extension degree n.
    gqm_field_degree, u32, |f| f.ctx.n());

fn check_enc(f: &GqmField, enc: u64) -> Option<gqm::gf::FieldElement> {
    (enc < f.ctx.q()).then(|| f.ctx.decode(enc))
}

macro_rules! field_binop {
    ($(#[$doc:meta])* $name:ident, $op:ident) => {
        $(#[$doc])*
        /// Operands and result are element encodings.
        ///
        /// # Safety
        /// `field` must be a live handle and `out` a valid pointer.
        #[no_mangle]
        pub unsafe extern "C" fn $name(
            field: *const GqmField,
            a: u64,
            b: u64,
            out: *mut u64,
        ) -> i32 {
            let Some(f) = field_ref(field) else { return GQM_ERR_NULL_POINTER };
            if out.is_null() {
                return GQM_ERR_NULL_POINTER;
            }
            guarded(|| {
                let (Some(ea), Some(eb)) = (check_enc(f, a), check_enc(f, b)) else {
                    return GQM_ERR_INVALID_ARGUMENT;
                };
                match f.ctx.$op(&ea, &eb) {
                    Ok(r) => {
                        unsafe { *out = f.ctx.encode(&r) };
                        GQM_OK
                    }
                    Err(e) => status_of(&e),
                }
            })
        }
    };
}

field_binop!(
    /// a + b.
    gqm_field_add, add);
field_binop!(
    /// a - b.
    gqm_field_sub, sub);
field_binop!(
    /// a * b.
    gqm_field_mul, mul);

/// Additive inverse of a.
///
/// # Safety
/// `field` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn gqm_field_neg(field: *const GqmField, a: u64, out: *mut u64) -> i32 {
    let Some(f) = field_ref(field) else { return GQM_ERR_NULL_POINTER };
    if out.is_null() {
        return GQM_ERR_NULL_POINTER;
    }
    guarded(|| {
        let Some(ea) = check_enc(f, a) else { return GQM_ERR_INVALID_ARGUMENT };
        match f.ctx.neg(&ea) {
            Ok(r) => {
                unsafe { *out = f.ctx.encode(&r) };
                GQM_OK
            }
            Err(e) => status_of(&e),
        }
    })
}

/// Multiplicative inverse of a; fails with GQM_ERR_DOMAIN for a = 0.
///
/// # Safety
/// `field` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn gqm_field_inv(field: *const GqmField, a: u64, out: *mut u64) -> i32 {
    let Some(f) = field_ref(field) else { return GQM_ERR_NULL_POINTER };
    if out.is_null() {
        return GQM_ERR_NULL_POINTER;
    }
    guarded(|| {
        let Some(ea) = check_enc(f, a) else { return GQM_ERR_INVALID_ARGUMENT };
        match f.ctx.inv(&ea) {
            Ok(r) => {
                unsafe { *out = f.ctx.encode(&r) };
                GQM_OK
            }
            Err(e) => status_of(&e),
        }
    })
}

/// a^k, negative exponents via the inverse.
///
/// # Safety
/// `field` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn gqm_field_pow(
    field: *const GqmField,
    a: u64,
    k: i64,
    out: *mut u64,
) -> i32 {
    let Some(f) = field_ref(field) else { return GQM_ERR_NULL_POINTER };
    if out.is_null() {
        return GQM_ERR_NULL_POINTER;
    }
    guarded(|| {
        let Some(ea) = check_enc(f, a) else { return GQM_ERR_INVALID_ARGUMENT };
        match f.ctx.pow(&ea, k) {
            Ok(r) => {
                unsafe { *out = f.ctx.encode(&r) };
                GQM_OK
            }
            Err(e) => status_of(&e),
        }
    })
}

/// Encoding of the multiplicative generator.
///
/// # Safety
/// `field` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn gqm_field_generator(field: *const GqmField, out: *mut u64) -> i32 {
    let Some(f) = field_ref(field) else { return GQM_ERR_NULL_POINTER };
    if out.is_null() {
        return GQM_ERR_NULL_POINTER;
    }
    *out = f.ctx.encode(f.ctx.generator());
    GQM_OK
}

/// Display form of an element ("a+1"); free with `gqm_string_free`.
///
/// # Safety
/// `field` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn gqm_field_element_str(
    field: *const GqmField,
    a: u64,
    out: *mut *mut c_char,
) -> i32 {
    let Some(f) = field_ref(field) else { return GQM_ERR_NULL_POINTER };
    if out.is_null() {
        return GQM_ERR_NULL_POINTER;
    }
    guarded(|| {
        let Some(ea) = check_enc(f, a) else { return GQM_ERR_INVALID_ARGUMENT };
        write_string(out, ea.to_string())
    })
}

fn json_report<T: serde::Serialize>(out: *mut *mut c_char, value: Result<T, Error>) -> i32 {
    match value {
        Ok(v) => match serde_json::to_string_pretty(&v) {
            Ok(s) => write_string(out, s),
            Err(_) => GQM_ERR_INTERNAL,
        },
        Err(e) => status_of(&e),
    }
}

macro_rules! json_entry {
    ($out:ident, $body:expr) => {{
        if $out.is_null() {
            return GQM_ERR_NULL_POINTER;
        }
        guarded(|| json_report($out, $body))
    }};
}

/// Field construction data as JSON; `list_elements` adds the element table.
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn gqm_field_json(
    q: u64,
    list_elements: bool,
    out: *mut *mut c_char,
) -> i32 {
    json_entry!(out, FieldCtx::for_order(q).map(|ctx| report::field_report(&ctx, list_elements)))
}

/// q-analog counts for dimension `n` as JSON.
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn gqm_counts_json(
    q: u64,
    n: u64,
    check_oracle: bool,
    out: *mut *mut c_char,
) -> i32 {
    json_entry!(out, {
        FieldCtx::for_order(q).and_then(|_| report::counts_report(n, q, check_oracle))
    })
}

/// Projective points (and the two-level kets/bras when dim = 2) as JSON.
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn gqm_states_json(q: u64, dim: u32, out: *mut *mut c_char) -> i32 {
    json_entry!(out, {
        FieldCtx::for_order(q).and_then(|ctx| report::states_report(&ctx, dim as usize))
    })
}

/// Single-spin probability table as JSON. Pass `r = s = -1` for the generic
/// pattern rows, or concrete indices for one observable.
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn gqm_probs_json(q: u64, r: i64, s: i64, out: *mut *mut c_char) -> i32 {
    json_entry!(out, {
        let rs = if r >= 0 && s >= 0 { Some((r as u64, s as u64)) } else { None };
        FieldCtx::for_order(q).and_then(|ctx| report::probs_report(&ctx, rs))
    })
}

/// The singlet correlation table as JSON.
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn gqm_table1_json(q: u64, out: *mut *mut c_char) -> i32 {
    json_entry!(out, FieldCtx::for_order(q).and_then(|ctx| report::table1_report(&ctx)))
}

/// CHSH sweep (singlet, or every entangled state) as JSON.
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn gqm_chsh_json(q: u64, all_states: bool, out: *mut *mut c_char) -> i32 {
    json_entry!(out, FieldCtx::for_order(q).and_then(|ctx| report::chsh_report(&ctx, all_states)))
}

/// LHV feasibility of a joint table given in the documented JSON wire form.
///
/// # Safety
/// `table_json` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn gqm_lhv_table_json(
    table_json: *const c_char,
    out: *mut *mut c_char,
) -> i32 {
    if table_json.is_null() || out.is_null() {
        return GQM_ERR_NULL_POINTER;
    }
    let Ok(raw) = CStr::from_ptr(table_json).to_str() else {
        return GQM_ERR_UTF8;
    };
    guarded(|| {
        json_report(out, {
            gqm::lhv::parse_table_json(raw)
                .and_then(|(scenario, table)| report::lhv_report_for_table(scenario, &table))
        })
    })
}

/// LHV feasibility of a field-model state: `state_kind` 0 is the singlet,
/// 1 is the product state with index `product_index`.
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn gqm_lhv_gqm_json(
    q: u64,
    state_kind: i32,
    product_index: u64,
    out: *mut *mut c_char,
) -> i32 {
    json_entry!(out, {
        let which = match state_kind {
            0 => Ok(GqmLhvState::Singlet),
            1 => Ok(GqmLhvState::Product(product_index as usize)),
            k => Err(Error::InvalidArgs(format!("unknown state kind {k}"))),
        };
        which.and_then(|which| {
            FieldCtx::for_order(q).and_then(|ctx| report::lhv_report_from_gqm(&ctx, which))
        })
    })
}

/// The q = 1 limit report for an N-point space as JSON.
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn gqm_fun_json(n: u32, out: *mut *mut c_char) -> i32 {
    json_entry!(out, report::fun_report(n as usize))
}

/// Run every reproduction check that applies at field order q; the JSON
/// carries one status line per check. `all_passed`, when non-NULL, receives
/// the aggregate verdict.
///
/// # Safety
/// `out` must be a valid pointer; `all_passed` may be NULL.
#[no_mangle]
pub unsafe extern "C" fn gqm_verify_all_json(
    q: u64,
    all_passed: *mut bool,
    out: *mut *mut c_char,
) -> i32 {
    if out.is_null() {
        return GQM_ERR_NULL_POINTER;
    }
    guarded(|| match report::verify_all(q) {
        Ok(v) => {
            if !all_passed.is_null() {
                unsafe { *all_passed = v.all_passed };
            }
            json_report(out, Ok::<_, Error>(v))
        }
        Err(e) => status_of(&e),
    })
}
