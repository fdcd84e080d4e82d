//! C interface. Objects are opaque handles created by `mo_*_new` and released by the
//! matching `mo_*_free`. Every fallible call returns an [`MoStatus`]; on failure the
//! message is available from [`mo_last_error`] on the same thread.

use moebius_ortho::quadrature::{gram_transformed_pullback, QuadratureScheme};
use moebius_ortho::zeros::find_roots;
use moebius_ortho::{Error, FamilySpec, MoebiusMap, TransformedSequence, C64};
use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MoStatus {
    Ok = 0,
    NullPointer = 1,
    DegenerateMap = 2,
    Pole = 3,
    UnknownFamily = 4,
    InvalidArgument = 5,
    NoConvergence = 6,
    Numerical = 7,
    BufferTooSmall = 8,
    Panic = 9,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MoComplex {
    pub re: f64,
    pub im: f64,
}

impl From<MoComplex> for C64 {
    fn from(z: MoComplex) -> Self {
        C64::new(z.re, z.im)
    }
}

impl From<C64> for MoComplex {
    fn from(z: C64) -> Self {
        MoComplex { re: z.re, im: z.im }
    }
}

/// Opaque Möbius map.
pub struct MoMap {
    inner: MoebiusMap,
}

/// Opaque transformed sequence Q_0..Q_N.
pub struct MoSequence {
    inner: TransformedSequence,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

fn status_of(e: &Error) -> MoStatus {
    match e {
        Error::DegenerateMap { .. } => MoStatus::DegenerateMap,
        Error::PoleEvaluation { .. } => MoStatus::Pole,
        Error::UnknownFamily(_) => MoStatus::UnknownFamily,
        Error::InvalidArgument(_) | Error::InadmissibleParameters(_) | Error::BadHomogenization { .. } => {
            MoStatus::InvalidArgument
        }
        Error::NoConvergence { .. } => MoStatus::NoConvergence,
        _ => MoStatus::Numerical,
    }
}

fn guard<F: FnOnce() -> Result<(), MoStatus>>(f: F) -> MoStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => MoStatus::Ok,
        Ok(Err(s)) => s,
        Err(_) => {
            set_error("internal panic");
            MoStatus::Panic
        }
    }
}

fn fail(e: Error) -> MoStatus {
    set_error(&e.to_string());
    status_of(&e)
}

fn null(what: &str) -> MoStatus {
    set_error(&format!("null pointer: {what}"));
    MoStatus::NullPointer
}

unsafe fn write<T>(out: *mut T, v: T, what: &str) -> Result<(), MoStatus> {
    if out.is_null() {
        return Err(null(what));
    }
    out.write(v);
    Ok(())
}

unsafe fn copy_out(buf: *mut MoComplex, cap: usize, len: *mut usize, v: &[C64]) -> Result<(), MoStatus> {
    write(len, v.len(), "len")?;
    if v.len() > cap {
        set_error(&format!("buffer holds {cap}, need {}", v.len()));
        return Err(MoStatus::BufferTooSmall);
    }
    if !v.is_empty() && buf.is_null() {
        return Err(null("buf"));
    }
    for (k, z) in v.iter().enumerate() {
        buf.add(k).write((*z).into());
    }
    Ok(())
}

/// Message for the last failed call on this thread; empty if none. The pointer stays
/// valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn mo_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// # Safety
/// `out` must be valid for a write.
#[no_mangle]
pub unsafe extern "C" fn mo_map_new(a: MoComplex, b: MoComplex, c: MoComplex, d: MoComplex, out: *mut *mut MoMap) -> MoStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        let m = MoebiusMap::new(a.into(), b.into(), c.into(), d.into()).map_err(fail)?;
        out.write(Box::into_raw(Box::new(MoMap { inner: m })));
        Ok(())
    })
}

/// The Cayley map whose image of the real line is the unit circle.
///
/// # Safety
/// `out` must be valid for a write.
#[no_mangle]
pub unsafe extern "C" fn mo_map_cayley(out: *mut *mut MoMap) -> MoStatus {
    guard(|| {
        let m = Box::into_raw(Box::new(MoMap {
            inner: MoebiusMap::cayley_to_circle(),
        }));
        write(out, m, "out").inspect_err(|_| drop(Box::from_raw(m)))
    })
}

/// # Safety
/// `map` must come from `mo_map_new` or be null; it is invalid afterwards.
#[no_mangle]
pub unsafe extern "C" fn mo_map_free(map: *mut MoMap) {
    if !map.is_null() {
        drop(Box::from_raw(map));
    }
}

/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn mo_map_apply(map: *const MoMap, x: MoComplex, out: *mut MoComplex) -> MoStatus {
    guard(|| {
        let m = map.as_ref().ok_or_else(|| null("map"))?;
        let v = m.inner.eval(x.into()).map_err(fail)?;
        write(out, v.into(), "out")
    })
}

/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn mo_map_inverse(map: *const MoMap, out: *mut *mut MoMap) -> MoStatus {
    guard(|| {
        let m = map.as_ref().ok_or_else(|| null("map"))?;
        if out.is_null() {
            return Err(null("out"));
        }
        out.write(Box::into_raw(Box::new(MoMap { inner: m.inner.inverse() })));
        Ok(())
    })
}

/// Builds Q_0..Q_{n_max} for a named family ("hermite", "laguerre", "genlaguerre",
/// "jacobi", "chebyshev") with `n_params` complex parameters.
///
/// # Safety
/// `family` must be a NUL-terminated string, `params` must hold `n_params` values.
#[no_mangle]
pub unsafe extern "C" fn mo_sequence_new(
    family: *const c_char,
    params: *const MoComplex,
    n_params: usize,
    map: *const MoMap,
    n_max: usize,
    out: *mut *mut MoSequence,
) -> MoStatus {
    guard(|| {
        if family.is_null() {
            return Err(null("family"));
        }
        let m = map.as_ref().ok_or_else(|| null("map"))?;
        if out.is_null() {
            return Err(null("out"));
        }
        let name = CStr::from_ptr(family)
            .to_str()
            .map_err(|_| fail(Error::InvalidArgument("family name is not UTF-8".into())))?;
        let p: Vec<C64> = if n_params == 0 {
            Vec::new()
        } else if params.is_null() {
            return Err(null("params"));
        } else {
            std::slice::from_raw_parts(params, n_params).iter().map(|&z| z.into()).collect()
        };
        let fam = FamilySpec::builtin(name, &p).map_err(fail)?;
        let seq = TransformedSequence::build(&fam, &m.inner, n_max).map_err(fail)?;
        out.write(Box::into_raw(Box::new(MoSequence { inner: seq })));
        Ok(())
    })
}

/// # Safety
/// `seq` must come from `mo_sequence_new` or be null; it is invalid afterwards.
#[no_mangle]
pub unsafe extern "C" fn mo_sequence_free(seq: *mut MoSequence) {
    if !seq.is_null() {
        drop(Box::from_raw(seq));
    }
}

unsafe fn seq_at<'a>(seq: *const MoSequence, n: usize) -> Result<&'a TransformedSequence, MoStatus> {
    let s = &seq.as_ref().ok_or_else(|| null("seq"))?.inner;
    if n > s.n_max() {
        return Err(fail(Error::InvalidArgument(format!("n = {n} exceeds {}", s.n_max()))));
    }
    Ok(s)
}

/// Coefficients of Q_n in increasing degree. `*len` receives the count even when the
/// buffer is too small.
///
/// # Safety
/// `buf` must hold `cap` values; `len` must be valid for a write.
#[no_mangle]
pub unsafe extern "C" fn mo_sequence_coeffs(
    seq: *const MoSequence,
    n: usize,
    buf: *mut MoComplex,
    cap: usize,
    len: *mut usize,
) -> MoStatus {
    guard(|| copy_out(buf, cap, len, seq_at(seq, n)?.q(n).coeffs()))
}

/// Q_n(x).
///
/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn mo_sequence_eval(seq: *const MoSequence, n: usize, x: MoComplex, out: *mut MoComplex) -> MoStatus {
    guard(|| {
        let s = seq_at(seq, n)?;
        write(out, s.eval_q(n, x.into()).into(), "out")
    })
}

/// ω_{m,n}(x) = ω(x)/(cx+d)^{m+n}.
///
/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn mo_sequence_weight(
    seq: *const MoSequence,
    m: usize,
    n: usize,
    x: MoComplex,
    out: *mut MoComplex,
) -> MoStatus {
    guard(|| {
        let s = seq_at(seq, m.max(n))?;
        let v = s.varying_weight(m, n, x.into()).map_err(fail)?;
        write(out, v.into(), "out")
    })
}

/// Gram matrix of R_0..R_N on the image contour; reports the worst off-diagonal ratio and
/// the worst relative diagonal error against the classical norms. `nodes` = 0 keeps the
/// default rule.
///
/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn mo_sequence_gram(
    seq: *const MoSequence,
    nodes: usize,
    max_offdiag: *mut f64,
    max_diag_error: *mut f64,
) -> MoStatus {
    guard(|| {
        let s = seq_at(seq, 0)?;
        let mut scheme = QuadratureScheme::default();
        if nodes > 0 {
            scheme = scheme.with_nodes(nodes);
        }
        let g = gram_transformed_pullback(s, s.n_max(), &scheme).map_err(fail)?;
        write(max_offdiag, g.max_offdiag, "max_offdiag")?;
        write(max_diag_error, g.max_diag_error, "max_diag_error")
    })
}

/// Roots of Q_n; `*len` receives the degree.
///
/// # Safety
/// `buf` must hold `cap` values; `len` must be valid for a write.
#[no_mangle]
pub unsafe extern "C" fn mo_sequence_roots(
    seq: *const MoSequence,
    n: usize,
    buf: *mut MoComplex,
    cap: usize,
    len: *mut usize,
) -> MoStatus {
    guard(|| {
        let q = seq_at(seq, n)?.q(n);
        let roots = if q.degree() >= 1 {
            find_roots(q).map_err(fail)?.roots
        } else {
            Vec::new()
        };
        copy_out(buf, cap, len, &roots)
    })
}
