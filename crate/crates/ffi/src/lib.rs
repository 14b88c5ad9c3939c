//! C ABI over the core library: opaque handles, integer error codes, and
//! JSON strings for structured data. Every returned string is allocated by
//! Rust and must be released with `aniso_string_free`; every handle has a
//! matching `_free` function. All functions are safe to call from any
//! thread; the last error message is thread local.

use std::cell::RefCell;
use std::ffi::{CStr, CString};
use std::os::raw::c_char;

use anisobounds::bounds::{self, BoundQuery};
use anisobounds::brauer;
use anisobounds::csa;
use anisobounds::exactalg::FiniteField;
use anisobounds::glnz::{self, MatrixGroup, MinkowskiOutcome};
use anisobounds::torus::{self, GaloisLattice};

/// Success.
pub const ANISO_OK: i32 = 0;
/// Malformed input: bad JSON, bad parameters, null pointers.
pub const ANISO_ERR_INVALID_ARGUMENT: i32 = 1;
/// The computation refused: cap exceeded, case out of the ledger, overflow.
pub const ANISO_ERR_COMPUTATION: i32 = 2;

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg).unwrap_or_else(|_| CString::new("invalid error text").unwrap());
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn fail(code: i32, msg: impl Into<String>) -> i32 {
    set_error(msg.into());
    code
}

/// Message for the most recent error on this thread, or NULL when the last
/// call succeeded. The pointer stays valid until the next failing call on
/// the same thread; do not free it.
#[no_mangle]
pub extern "C" fn aniso_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| {
        e.borrow()
            .as_ref()
            .map_or(std::ptr::null(), |c| c.as_ptr())
    })
}

/// Release a string allocated by this library.
///
/// # Safety
/// `s` must be a pointer previously returned through an out-parameter of
/// this library, not yet freed; NULL is accepted and ignored.
#[no_mangle]
pub unsafe extern "C" fn aniso_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

unsafe fn read_str<'a>(ptr: *const c_char) -> Result<&'a str, i32> {
    if ptr.is_null() {
        return Err(fail(ANISO_ERR_INVALID_ARGUMENT, "null string pointer"));
    }
    CStr::from_ptr(ptr)
        .to_str()
        .map_err(|e| fail(ANISO_ERR_INVALID_ARGUMENT, format!("invalid utf-8: {e}")))
}

fn give_string(out: *mut *mut c_char, s: String) -> i32 {
    let Ok(c) = CString::new(s) else {
        return fail(ANISO_ERR_COMPUTATION, "output contained a NUL byte");
    };
    unsafe { *out = c.into_raw() };
    ANISO_OK
}

/// Opaque handle to a closed finite subgroup of the integer general linear
/// group.
pub struct AnisoGroup(MatrixGroup);

/// Opaque handle to an integer lattice with a finite group action.
pub struct AnisoLattice(GaloisLattice);

#[derive(serde::Deserialize)]
struct GroupJson {
    #[serde(alias = "rank")]
    n: usize,
    generators: Vec<anisobounds::IntMatrix>,
}

/// Close the generators given as JSON
/// `{"n": 2, "generators": [{"n": 2, "entries": [[0,-1],[1,0]]}]}`
/// and hand back an owned group handle.
///
/// # Safety
/// `json` must be a valid NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn aniso_group_closure_json(
    json: *const c_char,
    cap: usize,
    out: *mut *mut AnisoGroup,
) -> i32 {
    if out.is_null() {
        return fail(ANISO_ERR_INVALID_ARGUMENT, "null out pointer");
    }
    let text = match read_str(json) {
        Ok(t) => t,
        Err(code) => return code,
    };
    let parsed: GroupJson = match serde_json::from_str(text) {
        Ok(p) => p,
        Err(e) => return fail(ANISO_ERR_INVALID_ARGUMENT, e.to_string()),
    };
    let cap = if cap == 0 { glnz::DEFAULT_CLOSURE_CAP } else { cap };
    match glnz::closure(parsed.n, &parsed.generators, cap) {
        Ok(g) => {
            *out = Box::into_raw(Box::new(AnisoGroup(g)));
            ANISO_OK
        }
        Err(e) => fail(ANISO_ERR_COMPUTATION, e.to_string()),
    }
}

/// Number of elements of the group.
///
/// # Safety
/// `group` must be a live handle from `aniso_group_closure_json`.
#[no_mangle]
pub unsafe extern "C" fn aniso_group_order(group: *const AnisoGroup) -> usize {
    if group.is_null() {
        return 0;
    }
    (*group).0.order()
}

/// Injectivity of reduction mod m: writes 1 when injective, 0 when a
/// nontrivial kernel element exists.
///
/// # Safety
/// `group` must be a live handle; `out_injective` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn aniso_group_minkowski_check(
    group: *const AnisoGroup,
    modulus: u64,
    out_injective: *mut i32,
) -> i32 {
    if group.is_null() || out_injective.is_null() {
        return fail(ANISO_ERR_INVALID_ARGUMENT, "null pointer");
    }
    match glnz::minkowski_injection_check(&(*group).0, modulus) {
        Ok(MinkowskiOutcome::Injective) => {
            *out_injective = 1;
            ANISO_OK
        }
        Ok(MinkowskiOutcome::KernelWitness(_)) => {
            *out_injective = 0;
            ANISO_OK
        }
        Err(e) => fail(ANISO_ERR_COMPUTATION, e.to_string()),
    }
}

/// Release a group handle.
///
/// # Safety
/// `group` must come from `aniso_group_closure_json` and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn aniso_group_free(group: *mut AnisoGroup) {
    if !group.is_null() {
        drop(Box::from_raw(group));
    }
}

/// Build a lattice-with-action from JSON
/// `{"rank": 2, "generators": [...]}`.
///
/// # Safety
/// `json` must be a valid NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn aniso_lattice_new_json(
    json: *const c_char,
    out: *mut *mut AnisoLattice,
) -> i32 {
    if out.is_null() {
        return fail(ANISO_ERR_INVALID_ARGUMENT, "null out pointer");
    }
    let text = match read_str(json) {
        Ok(t) => t,
        Err(code) => return code,
    };
    let parsed: GroupJson = match serde_json::from_str(text) {
        Ok(p) => p,
        Err(e) => return fail(ANISO_ERR_INVALID_ARGUMENT, e.to_string()),
    };
    match GaloisLattice::new(parsed.n, &parsed.generators) {
        Ok(l) => {
            *out = Box::into_raw(Box::new(AnisoLattice(l)));
            ANISO_OK
        }
        Err(e) => fail(ANISO_ERR_COMPUTATION, e.to_string()),
    }
}

/// Write 1 when the action has no nonzero fixed vector, else 0.
///
/// # Safety
/// `lattice` must be a live handle; `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn aniso_lattice_is_anisotropic(
    lattice: *const AnisoLattice,
    out: *mut i32,
) -> i32 {
    if lattice.is_null() || out.is_null() {
        return fail(ANISO_ERR_INVALID_ARGUMENT, "null pointer");
    }
    match torus::is_anisotropic(&(*lattice).0) {
        Ok(b) => {
            *out = i32::from(b);
            ANISO_OK
        }
        Err(e) => fail(ANISO_ERR_COMPUTATION, e.to_string()),
    }
}

/// Largest exact order of an invariant torsion class with d <= d_max;
/// writes 0 when only the zero class is invariant.
///
/// # Safety
/// `lattice` must be a live handle; `out_order` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn aniso_lattice_max_exact_order(
    lattice: *const AnisoLattice,
    d_max: u64,
    out_order: *mut u64,
) -> i32 {
    if lattice.is_null() || out_order.is_null() {
        return fail(ANISO_ERR_INVALID_ARGUMENT, "null pointer");
    }
    match torus::torsion_profile(&(*lattice).0, d_max) {
        Ok(profile) => {
            *out_order = profile.max_exact_order.unwrap_or(0);
            ANISO_OK
        }
        Err(e) => fail(ANISO_ERR_COMPUTATION, e.to_string()),
    }
}

/// Release a lattice handle.
///
/// # Safety
/// `lattice` must come from `aniso_lattice_new_json` and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn aniso_lattice_free(lattice: *mut AnisoLattice) {
    if !lattice.is_null() {
        drop(Box::from_raw(lattice));
    }
}

/// Bounded search for the maximal finite subgroup order in rank n (1..=3).
///
/// # Safety
/// `out_order` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn aniso_upsilon_search(
    n: usize,
    entry_bound: i64,
    out_order: *mut u64,
) -> i32 {
    if out_order.is_null() {
        return fail(ANISO_ERR_INVALID_ARGUMENT, "null out pointer");
    }
    if !(1..=3).contains(&n) {
        return fail(ANISO_ERR_INVALID_ARGUMENT, "rank must be 1, 2, or 3");
    }
    match glnz::upsilon_search(n, entry_bound as i128) {
        Ok(r) => {
            *out_order = r.max_order as u64;
            ANISO_OK
        }
        Err(e) => fail(ANISO_ERR_COMPUTATION, e.to_string()),
    }
}

/// Evaluate a ledger query given as JSON, e.g.
/// `{"case": "quadric", "n": 4, "has_point": false, "char": "zero", "perfect": true}`,
/// and hand back the result as a JSON string.
///
/// # Safety
/// `json` must be a valid NUL-terminated string and `out_json` valid.
#[no_mangle]
pub unsafe extern "C" fn aniso_bounds_evaluate_json(
    json: *const c_char,
    out_json: *mut *mut c_char,
) -> i32 {
    if out_json.is_null() {
        return fail(ANISO_ERR_INVALID_ARGUMENT, "null out pointer");
    }
    let text = match read_str(json) {
        Ok(t) => t,
        Err(code) => return code,
    };
    let query: BoundQuery = match serde_json::from_str(text) {
        Ok(q) => q,
        Err(e) => return fail(ANISO_ERR_INVALID_ARGUMENT, e.to_string()),
    };
    match bounds::evaluate(&query) {
        Ok(result) => match serde_json::to_string(&result) {
            Ok(s) => give_string(out_json, s),
            Err(e) => fail(ANISO_ERR_COMPUTATION, e.to_string()),
        },
        Err(e) => fail(ANISO_ERR_COMPUTATION, e.to_string()),
    }
}

/// The full citation-annotated ledger as plain text.
///
/// # Safety
/// `out_text` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn aniso_bounds_table(out_text: *mut *mut c_char) -> i32 {
    if out_text.is_null() {
        return fail(ANISO_ERR_INVALID_ARGUMENT, "null out pointer");
    }
    give_string(out_text, bounds::render_table())
}

/// Verify the defining identities of the characteristic-p algebra; writes 1
/// when every identity holds exactly.
///
/// # Safety
/// `out_ok` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn aniso_weyl_identity_check(p: u64, out_ok: *mut i32) -> i32 {
    if out_ok.is_null() {
        return fail(ANISO_ERR_INVALID_ARGUMENT, "null out pointer");
    }
    if !csa::WEYL_PRIMES.contains(&p) {
        return fail(ANISO_ERR_INVALID_ARGUMENT, "supported primes: 2, 3, 5");
    }
    let r = csa::weyl_identity_check(p);
    let ad = csa::ad_solve(p);
    *out_ok = i32::from(r.residual_is_zero && r.powers_central && ad.nilpotent);
    ANISO_OK
}

/// Characteristic-2 conic criterion for the element written as a polynomial
/// in `w` over F_{2^k}: writes 1 when the local conic has no rational
/// point, 0 when it splits.
///
/// # Safety
/// `elem` must be a valid NUL-terminated string; `out_no_point` valid.
#[no_mangle]
pub unsafe extern "C" fn aniso_conic_char2_class(
    k: usize,
    elem: *const c_char,
    out_no_point: *mut i32,
) -> i32 {
    if out_no_point.is_null() {
        return fail(ANISO_ERR_INVALID_ARGUMENT, "null out pointer");
    }
    let text = match read_str(elem) {
        Ok(t) => t,
        Err(code) => return code,
    };
    let field = match FiniteField::new(2, k) {
        Ok(f) => f,
        Err(e) => return fail(ANISO_ERR_INVALID_ARGUMENT, e.to_string()),
    };
    let a = match field.parse_elem(text) {
        Ok(a) => a,
        Err(e) => return fail(ANISO_ERR_INVALID_ARGUMENT, e.to_string()),
    };
    *out_no_point = i32::from(brauer::conic_char2_class(&field, a) == brauer::ConicClass::NoPoint);
    ANISO_OK
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cstr(s: &str) -> CString {
        CString::new(s).unwrap()
    }

    #[test]
    fn group_roundtrip() {
        let json = cstr(r#"{"n":2,"generators":[{"n":2,"entries":[[0,-1],[1,0]]}]}"#);
        let mut handle: *mut AnisoGroup = std::ptr::null_mut();
        unsafe {
            assert_eq!(aniso_group_closure_json(json.as_ptr(), 0, &mut handle), ANISO_OK);
            assert_eq!(aniso_group_order(handle), 4);
            let mut injective = -1;
            assert_eq!(aniso_group_minkowski_check(handle, 3, &mut injective), ANISO_OK);
            assert_eq!(injective, 1);
            aniso_group_free(handle);
        }
    }

    #[test]
    fn bad_json_reports_error() {
        let json = cstr("{ nope");
        let mut handle: *mut AnisoGroup = std::ptr::null_mut();
        unsafe {
            let code = aniso_group_closure_json(json.as_ptr(), 0, &mut handle);
            assert_eq!(code, ANISO_ERR_INVALID_ARGUMENT);
            let msg = aniso_last_error_message();
            assert!(!msg.is_null());
        }
    }

    #[test]
    fn upsilon_values() {
        let mut order = 0u64;
        unsafe {
            assert_eq!(aniso_upsilon_search(2, 1, &mut order), ANISO_OK);
        }
        assert_eq!(order, 12);
    }

    #[test]
    fn bounds_query_roundtrip() {
        let json = cstr(
            r#"{"case":"quadric","n":4,"has_point":false,"char":"zero","perfect":true}"#,
        );
        let mut out: *mut c_char = std::ptr::null_mut();
        unsafe {
            assert_eq!(aniso_bounds_evaluate_json(json.as_ptr(), &mut out), ANISO_OK);
            let s = CStr::from_ptr(out).to_str().unwrap().to_string();
            aniso_string_free(out);
            let v: serde_json::Value = serde_json::from_str(&s).unwrap();
            assert_eq!(v["bound"], 32);
            assert_eq!(v["kind"], "order");
        }
    }
}
