//! C ABI for `sharpgpt`.
//!
//! Systems and elements are opaque heap handles released with
//! `sg_system_free` / `sg_element_free`. Every fallible call returns an
//! [`SgStatus`]; on failure the message is available from
//! `sg_last_error_message` on the same thread. Output pointers are written
//! only on success.

use std::cell::RefCell;
use std::ffi::{c_char, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;
use std::slice;

use sharpgpt::eja::{self, AlgebraKind, JordanElement};
use sharpgpt::interference::{self, Subset, ValueTable};
use sharpgpt::{adjoint, sampling, Error};

/// Status codes returned by every fallible function.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SgStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    DimensionMismatch = 3,
    KindMismatch = 4,
    NumericalFailure = 5,
    Panic = 6,
}

/// Algebra families of the catalog.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SgKind {
    Classical = 0,
    RealSymmetric = 1,
    ComplexHermitian = 2,
    QuaternionicHermitian = 3,
    SpinFactor = 4,
}

/// A Jordan algebra of the catalog.
pub struct SgSystem {
    kind: AlgebraKind,
}

/// An element of a Jordan algebra in orthonormal coordinates.
pub struct SgElement {
    inner: JordanElement,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).expect("no interior NUL");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn status_of(err: &Error) -> SgStatus {
    match err {
        Error::DimensionMismatch { .. } => SgStatus::DimensionMismatch,
        Error::KindMismatch { .. } => SgStatus::KindMismatch,
        Error::NoConvergence(_) | Error::Singular | Error::ZeroNorm => SgStatus::NumericalFailure,
        _ => SgStatus::InvalidArgument,
    }
}

struct Fail(SgStatus, String);

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        Fail(status_of(&e), e.to_string())
    }
}

fn null(what: &str) -> Fail {
    Fail(SgStatus::NullPointer, format!("{what} is null"))
}

fn guard(f: impl FnOnce() -> Result<(), Fail>) -> SgStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => SgStatus::Ok,
        Ok(Err(Fail(status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("panic inside sharpgpt".into());
            SgStatus::Panic
        }
    }
}

unsafe fn borrow<'a, T>(p: *const T, what: &str) -> Result<&'a T, Fail> {
    p.as_ref().ok_or_else(|| null(what))
}

unsafe fn out_slot<'a, T>(p: *mut T, what: &str) -> Result<&'a mut T, Fail> {
    p.as_mut().ok_or_else(|| null(what))
}

unsafe fn read_slice<'a>(p: *const f64, len: usize, what: &str) -> Result<&'a [f64], Fail> {
    if len == 0 {
        return Ok(&[]);
    }
    if p.is_null() {
        return Err(null(what));
    }
    Ok(slice::from_raw_parts(p, len))
}

unsafe fn write_slice(p: *mut f64, len: usize, values: &[f64], what: &str) -> Result<(), Fail> {
    if len != values.len() {
        return Err(Fail(
            SgStatus::DimensionMismatch,
            format!("{what} holds {len} values, expected {}", values.len()),
        ));
    }
    if len == 0 {
        return Ok(());
    }
    if p.is_null() {
        return Err(null(what));
    }
    slice::from_raw_parts_mut(p, len).copy_from_slice(values);
    Ok(())
}

fn boxed_element(inner: JordanElement) -> *mut SgElement {
    Box::into_raw(Box::new(SgElement { inner }))
}

/// Copies the last error message of this thread into `buf` (NUL-terminated,
/// truncated to `len`). Returns the full message length plus one, or 0 if
/// there is no message.
///
/// # Safety
/// `buf` must be null or valid for `len` bytes.
#[no_mangle]
pub unsafe extern "C" fn sg_last_error_message(buf: *mut c_char, len: usize) -> usize {
    LAST_ERROR.with(|e| {
        let e = e.borrow();
        let Some(msg) = e.as_ref() else { return 0 };
        let bytes = msg.as_bytes_with_nul();
        if !buf.is_null() && len > 0 {
            let n = bytes.len().min(len);
            ptr::copy_nonoverlapping(bytes.as_ptr() as *const c_char, buf, n);
            *buf.add(n - 1) = 0;
        }
        bytes.len()
    })
}

/// Creates the algebra `kind(size)`: `d` for classical, `n` for matrix
/// kinds, `m` for spin factors.
///
/// # Safety
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn sg_system_new(
    kind: SgKind,
    size: usize,
    out: *mut *mut SgSystem,
) -> SgStatus {
    guard(|| {
        let slot = out_slot(out, "out")?;
        let kind = match kind {
            SgKind::Classical => AlgebraKind::classical(size),
            SgKind::RealSymmetric => AlgebraKind::real_symmetric(size),
            SgKind::ComplexHermitian => AlgebraKind::complex_hermitian(size),
            SgKind::QuaternionicHermitian => AlgebraKind::quaternionic_hermitian(size),
            SgKind::SpinFactor => AlgebraKind::spin_factor(size),
        }?;
        *slot = Box::into_raw(Box::new(SgSystem { kind }));
        Ok(())
    })
}

/// # Safety
/// `sys` must be null or a handle from `sg_system_new` not yet freed.
#[no_mangle]
pub unsafe extern "C" fn sg_system_free(sys: *mut SgSystem) {
    if !sys.is_null() {
        drop(Box::from_raw(sys));
    }
}

/// Frame size, or 0 for a null handle.
///
/// # Safety
/// `sys` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn sg_system_rank(sys: *const SgSystem) -> usize {
    sys.as_ref().map_or(0, |s| s.kind.rank())
}

/// Real dimension (coordinate count), or 0 for a null handle.
///
/// # Safety
/// `sys` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn sg_system_dim(sys: *const SgSystem) -> usize {
    sys.as_ref().map_or(0, |s| s.kind.dim())
}

/// Creates an element from `len == dim` coordinates.
///
/// # Safety
/// `coords` must be valid for `len` reads and `out` for writes.
#[no_mangle]
pub unsafe extern "C" fn sg_element_new(
    sys: *const SgSystem,
    coords: *const f64,
    len: usize,
    out: *mut *mut SgElement,
) -> SgStatus {
    guard(|| {
        let sys = borrow(sys, "sys")?;
        let slot = out_slot(out, "out")?;
        let c = read_slice(coords, len, "coords")?;
        *slot = boxed_element(JordanElement::new(sys.kind, c.to_vec())?);
        Ok(())
    })
}

/// The unit element of `sys`.
///
/// # Safety
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn sg_element_unit(
    sys: *const SgSystem,
    out: *mut *mut SgElement,
) -> SgStatus {
    guard(|| {
        let sys = borrow(sys, "sys")?;
        *out_slot(out, "out")? = boxed_element(eja::unit(sys.kind));
        Ok(())
    })
}

/// # Safety
/// `el` must be null or a live element handle.
#[no_mangle]
pub unsafe extern "C" fn sg_element_free(el: *mut SgElement) {
    if !el.is_null() {
        drop(Box::from_raw(el));
    }
}

/// Copies the coordinates into `out`, which must hold exactly `dim` values.
///
/// # Safety
/// `out` must be valid for `len` writes.
#[no_mangle]
pub unsafe extern "C" fn sg_element_coords(
    el: *const SgElement,
    out: *mut f64,
    len: usize,
) -> SgStatus {
    guard(|| {
        let el = borrow(el, "element")?;
        write_slice(out, len, el.inner.coords(), "out")
    })
}

/// `x ∘ y` as a new element.
///
/// # Safety
/// Handles must be live; `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn sg_jordan_product(
    x: *const SgElement,
    y: *const SgElement,
    out: *mut *mut SgElement,
) -> SgStatus {
    guard(|| {
        let (x, y) = (borrow(x, "x")?, borrow(y, "y")?);
        let slot = out_slot(out, "out")?;
        *slot = boxed_element(eja::jordan_product(&x.inner, &y.inner)?);
        Ok(())
    })
}

/// `⟨x, y⟩ = tr(x ∘ y)`.
///
/// # Safety
/// Handles must be live; `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn sg_inner_product(
    x: *const SgElement,
    y: *const SgElement,
    out: *mut f64,
) -> SgStatus {
    guard(|| {
        let (x, y) = (borrow(x, "x")?, borrow(y, "y")?);
        let slot = out_slot(out, "out")?;
        *slot = eja::trace_inner_product(&x.inner, &y.inner)?;
        Ok(())
    })
}

/// Eigenvalues in descending order; `out` must hold exactly `rank` values.
///
/// # Safety
/// `out` must be valid for `len` writes.
#[no_mangle]
pub unsafe extern "C" fn sg_eigenvalues(
    el: *const SgElement,
    out: *mut f64,
    len: usize,
) -> SgStatus {
    guard(|| {
        let el = borrow(el, "element")?;
        let ev = eja::eigenvalues(&el.inner)?;
        write_slice(out, len, &ev, "out")
    })
}

/// Whether every eigenvalue is at least `-tol · max(1, radius)`.
///
/// # Safety
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn sg_cone_contains(
    el: *const SgElement,
    tol: f64,
    out: *mut bool,
) -> SgStatus {
    guard(|| {
        let el = borrow(el, "element")?;
        let slot = out_slot(out, "out")?;
        *slot = eja::cone_contains(&el.inner, tol);
        Ok(())
    })
}

/// Operational norm `Σ|λᵢ|` and dagger norm `√Σλᵢ²`.
///
/// # Safety
/// Output pointers must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn sg_norms(
    el: *const SgElement,
    operational: *mut f64,
    dagger: *mut f64,
) -> SgStatus {
    guard(|| {
        let el = borrow(el, "element")?;
        let (op, dg) = (
            out_slot(operational, "operational")?,
            out_slot(dagger, "dagger")?,
        );
        *op = adjoint::operational_norm(&el.inner)?;
        *dg = adjoint::dagger_norm(&el.inner);
        Ok(())
    })
}

/// `I_n` from `2^n − 1` detection probabilities; `values[mask − 1]` is the
/// probability for the slit subset whose bit `i` marks slit `i + 1`.
///
/// # Safety
/// `values` must be valid for `len` reads and `out` for writes.
#[no_mangle]
pub unsafe extern "C" fn sg_sorkin_i(
    n: usize,
    values: *const f64,
    len: usize,
    out: *mut f64,
) -> SgStatus {
    guard(|| {
        if n == 0 || n > interference::MAX_SLITS {
            return Err(Fail(
                SgStatus::InvalidArgument,
                format!("slit count {n} outside 1..={}", interference::MAX_SLITS),
            ));
        }
        let expected = (1usize << n) - 1;
        if len != expected {
            return Err(Fail(
                SgStatus::DimensionMismatch,
                format!("{n} slits need {expected} values, got {len}"),
            ));
        }
        let v = read_slice(values, len, "values")?;
        let slot = out_slot(out, "out")?;
        let table = ValueTable::from_fn(n, |s: Subset| Ok(v[s.0 as usize - 1]))?;
        *slot = interference::sorkin_i(n, &table)?;
        Ok(())
    })
}

/// `‖D_n‖` on a seeded random frame split into `order` slits.
///
/// # Safety
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn sg_defect_norm(
    sys: *const SgSystem,
    order: usize,
    seed: u64,
    out: *mut f64,
) -> SgStatus {
    guard(|| {
        let sys = borrow(sys, "sys")?;
        let slot = out_slot(out, "out")?;
        let frame = sampling::random_frame(sys.kind, seed);
        let blocks = interference::default_blocks(sys.kind.rank(), order)?;
        *slot = interference::sorkin_defect_norm(&frame, &blocks, order)?;
        Ok(())
    })
}

/// Largest `|I_order|` found by the seeded alternating search.
///
/// # Safety
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn sg_maximize_interference(
    sys: *const SgSystem,
    order: usize,
    trials: usize,
    iters: usize,
    seed: u64,
    out: *mut f64,
) -> SgStatus {
    guard(|| {
        let sys = borrow(sys, "sys")?;
        let slot = out_slot(out, "out")?;
        *slot = interference::maximize_interference(sys.kind, order, trials, iters, seed)?.best;
        Ok(())
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn errors_map_to_status_codes() {
        assert_eq!(status_of(&Error::Singular), SgStatus::NumericalFailure);
        assert_eq!(
            status_of(&Error::DimensionMismatch {
                expected: 2,
                actual: 3
            }),
            SgStatus::DimensionMismatch
        );
        assert_eq!(status_of(&Error::Empty("frame")), SgStatus::InvalidArgument);
    }

    #[test]
    fn panics_become_status() {
        assert_eq!(guard(|| panic!("boom")), SgStatus::Panic);
        let mut buf = [0 as c_char; 8];
        let full = unsafe { sg_last_error_message(buf.as_mut_ptr(), buf.len()) };
        assert_eq!(full, "panic inside sharpgpt".len() + 1);
        let shown = unsafe { std::ffi::CStr::from_ptr(buf.as_ptr()) };
        assert_eq!(shown.to_str().unwrap(), "panic i");
    }
}
