//! C ABI for `besselwell`.
//!
//! Every fallible function returns a [`BwStatus`]; on failure the message is
//! kept per thread and read back with [`bw_last_error_message`]. Level lists
//! and wavefunction grids live behind opaque handles that the caller frees.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use besselwell::potentials::{Family, PotentialSpec};
use besselwell::scattering::{amplitudes, reflection_transmission, transfer_matrix};
use besselwell::spectra::{levels_for, wavefunction, Condition, EnergyLevel, Parity, ScanOptions, WavefunctionGrid};
use besselwell::Error;

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BwStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    Domain = 3,
    Regime = 4,
    Pole = 5,
    Underflow = 6,
    Overflow = 7,
    Accuracy = 8,
    NoSignChange = 9,
    ScanExhausted = 10,
    Incompatible = 11,
    Resolution = 12,
    OutOfRange = 13,
    Panic = 14,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BwFamily {
    V1 = 1,
    V2 = 2,
    V3 = 3,
    V4 = 4,
    V5 = 5,
    V6 = 6,
}

fn family_of(code: i32) -> Result<Family, Fail> {
    Ok(match code {
        1 => Family::V1,
        2 => Family::V2,
        3 => Family::V3,
        4 => Family::V4,
        5 => Family::V5,
        6 => Family::V6,
        c => return Err(invalid(format!("unknown family code {c}"))),
    })
}

/// Parity filter codes for `bw_spectrum_new`.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BwParity {
    Both = -1,
    Even = 0,
    Odd = 1,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BwCondition {
    JPrimeZero = 0,
    JZero = 1,
    KPrimeZero = 2,
    KZero = 3,
    JNegPrimeZero = 4,
    JNegZero = 5,
    DpsiZeroAtOrigin = 6,
    PsiZeroAtOrigin = 7,
}

impl From<Condition> for BwCondition {
    fn from(c: Condition) -> Self {
        match c {
            Condition::JPrimeZero => BwCondition::JPrimeZero,
            Condition::JZero => BwCondition::JZero,
            Condition::KPrimeZero => BwCondition::KPrimeZero,
            Condition::KZero => BwCondition::KZero,
            Condition::JNegPrimeZero => BwCondition::JNegPrimeZero,
            Condition::JNegZero => BwCondition::JNegZero,
            Condition::DpsiZeroAtOrigin => BwCondition::DpsiZeroAtOrigin,
            Condition::PsiZeroAtOrigin => BwCondition::PsiZeroAtOrigin,
        }
    }
}

fn condition_of(code: i32) -> Result<Condition, String> {
    Ok(match code {
        0 => Condition::JPrimeZero,
        1 => Condition::JZero,
        2 => Condition::KPrimeZero,
        3 => Condition::KZero,
        4 => Condition::JNegPrimeZero,
        5 => Condition::JNegZero,
        6 => Condition::DpsiZeroAtOrigin,
        7 => Condition::PsiZeroAtOrigin,
        c => return Err(format!("unknown condition code {c}")),
    })
}

/// One special energy. `parity` is 0 for even, 1 for odd; `condition`
/// holds a `BwCondition` value.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BwLevel {
    pub energy: f64,
    pub parity: i32,
    pub condition: i32,
    pub residual: f64,
    pub bracket_lo: f64,
    pub bracket_hi: f64,
    pub physical: bool,
}

impl From<&EnergyLevel> for BwLevel {
    fn from(l: &EnergyLevel) -> Self {
        BwLevel {
            energy: l.energy,
            parity: match l.parity {
                Parity::Even => 0,
                Parity::Odd => 1,
            },
            condition: BwCondition::from(l.condition) as i32,
            residual: l.residual,
            bracket_lo: l.bracket.0,
            bracket_hi: l.bracket.1,
            physical: l.is_physical(),
        }
    }
}

impl BwLevel {
    fn to_level(self) -> Result<EnergyLevel, String> {
        let parity = match self.parity {
            0 => Parity::Even,
            1 => Parity::Odd,
            p => return Err(format!("parity must be 0 or 1, got {p}")),
        };
        Ok(EnergyLevel {
            energy: self.energy,
            parity,
            condition: condition_of(self.condition)?,
            residual: self.residual,
            bracket: (self.bracket_lo, self.bracket_hi),
        })
    }
}

#[repr(C)]
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct BwScattering {
    pub a_re: f64,
    pub a_im: f64,
    pub b_re: f64,
    pub b_im: f64,
    pub reflection: f64,
    pub transmission: f64,
}

/// Row-major 2x2 complex matrix.
#[repr(C)]
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct BwMatrix2 {
    pub re: [f64; 4],
    pub im: [f64; 4],
}

/// Opaque list of levels.
pub struct BwSpectrum {
    levels: Vec<EnergyLevel>,
}

/// Opaque sampled wavefunction.
pub struct BwWavefunction {
    grid: WavefunctionGrid,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn status_of(e: &Error) -> BwStatus {
    match e {
        Error::Domain(_) => BwStatus::Domain,
        Error::Regime(_) => BwStatus::Regime,
        Error::Pole { .. } => BwStatus::Pole,
        Error::Underflow(_) => BwStatus::Underflow,
        Error::Overflow(_) => BwStatus::Overflow,
        Error::Accuracy(_) => BwStatus::Accuracy,
        Error::NoSignChange { .. } => BwStatus::NoSignChange,
        Error::ScanExhausted { .. } => BwStatus::ScanExhausted,
        Error::Incompatible(_) => BwStatus::Incompatible,
        Error::Resolution(_) => BwStatus::Resolution,
    }
}

enum Fail {
    Status(BwStatus, String),
    Lib(Error),
}

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        Fail::Lib(e)
    }
}

fn invalid(msg: impl Into<String>) -> Fail {
    Fail::Status(BwStatus::InvalidArgument, msg.into())
}

fn null(name: &str) -> Fail {
    Fail::Status(BwStatus::NullPointer, format!("{name} is null"))
}

/// Runs `f`, records any failure and maps it (and panics) to a status.
fn guard(f: impl FnOnce() -> Result<(), Fail>) -> BwStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            LAST_ERROR.with(|e| *e.borrow_mut() = None);
            BwStatus::Ok
        }
        Ok(Err(Fail::Status(s, msg))) => {
            set_error(msg);
            s
        }
        Ok(Err(Fail::Lib(e))) => {
            set_error(e.to_string());
            status_of(&e)
        }
        Err(_) => {
            set_error("internal panic".into());
            BwStatus::Panic
        }
    }
}

fn spec(family: i32, v0: f64, a: f64) -> Result<PotentialSpec, Fail> {
    if !(v0.is_finite() && v0 > 0.0 && a.is_finite() && a > 0.0) {
        return Err(invalid(format!("v0 and a must be positive, got v0 = {v0}, a = {a}")));
    }
    Ok(PotentialSpec::new(family_of(family)?, v0, a)?)
}

/// Copies the last error message of this thread into `buf` (NUL-terminated,
/// truncated to `len`). Returns the full message length without the NUL,
/// or 0 when the last call succeeded.
///
/// # Safety
/// `buf` must be null or point to `len` writable bytes.
#[no_mangle]
pub unsafe extern "C" fn bw_last_error_message(buf: *mut c_char, len: usize) -> usize {
    LAST_ERROR.with(|e| {
        let e = e.borrow();
        let Some(msg) = e.as_ref() else {
            if !buf.is_null() && len > 0 {
                *buf = 0;
            }
            return 0;
        };
        let bytes = msg.as_bytes();
        if !buf.is_null() && len > 0 {
            let n = bytes.len().min(len - 1);
            ptr::copy_nonoverlapping(bytes.as_ptr().cast::<c_char>(), buf, n);
            *buf.add(n) = 0;
        }
        bytes.len()
    })
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn bw_version() -> *const c_char {
    static VERSION: &CStr = match CStr::from_bytes_with_nul(concat!(env!("CARGO_PKG_VERSION"), "\0").as_bytes()) {
        Ok(s) => s,
        Err(_) => panic!("version string"),
    };
    VERSION.as_ptr()
}

/// Special energies of one family (a `BwFamily` code), sorted ascending.
/// `parity` takes a `BwParity` code. `n_max` = 0 returns
/// every root in the default search range.
///
/// # Safety
/// `out` must be a valid pointer; on success `*out` owns a handle to be
/// released with [`bw_spectrum_free`].
#[no_mangle]
pub unsafe extern "C" fn bw_spectrum_new(
    family: i32,
    v0: f64,
    a: f64,
    parity: i32,
    nonphysical: bool,
    n_max: usize,
    out: *mut *mut BwSpectrum,
) -> BwStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        *out = ptr::null_mut();
        let spec = spec(family, v0, a)?;
        let parity = match parity {
            -1 => None,
            0 => Some(Parity::Even),
            1 => Some(Parity::Odd),
            p => return Err(invalid(format!("parity filter must be -1, 0 or 1, got {p}"))),
        };
        let n = (n_max > 0).then_some(n_max);
        let levels = levels_for(&spec, parity, n, nonphysical, &ScanOptions::default())?;
        *out = Box::into_raw(Box::new(BwSpectrum { levels }));
        Ok(())
    })
}

/// Number of levels; 0 for a null handle.
///
/// # Safety
/// `s` must be null or a live handle from [`bw_spectrum_new`].
#[no_mangle]
pub unsafe extern "C" fn bw_spectrum_len(s: *const BwSpectrum) -> usize {
    s.as_ref().map_or(0, |s| s.levels.len())
}

/// # Safety
/// `s` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn bw_spectrum_get(s: *const BwSpectrum, index: usize, out: *mut BwLevel) -> BwStatus {
    guard(|| {
        let s = s.as_ref().ok_or_else(|| null("spectrum"))?;
        if out.is_null() {
            return Err(null("out"));
        }
        let l = s.levels.get(index).ok_or_else(|| {
            Fail::Status(
                BwStatus::OutOfRange,
                format!("index {index} out of range for {} levels", s.levels.len()),
            )
        })?;
        *out = l.into();
        Ok(())
    })
}

/// # Safety
/// `s` must be null or a handle from [`bw_spectrum_new`] not yet freed.
#[no_mangle]
pub unsafe extern "C" fn bw_spectrum_free(s: *mut BwSpectrum) {
    if !s.is_null() {
        drop(Box::from_raw(s));
    }
}

/// Samples the wavefunction of `level` on `n_points` uniform points.
///
/// # Safety
/// `level` and `out` must be valid pointers; release the handle with
/// [`bw_wavefunction_free`].
#[no_mangle]
#[allow(clippy::too_many_arguments)]
pub unsafe extern "C" fn bw_wavefunction_new(
    family: i32,
    v0: f64,
    a: f64,
    level: *const BwLevel,
    x_min: f64,
    x_max: f64,
    n_points: usize,
    cosmetic_flip: bool,
    out: *mut *mut BwWavefunction,
) -> BwStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        *out = ptr::null_mut();
        let level = level.as_ref().ok_or_else(|| null("level"))?;
        let spec = spec(family, v0, a)?;
        if !(x_min.is_finite() && x_max.is_finite() && x_min < x_max) || n_points < 2 {
            return Err(invalid("need finite x_min < x_max and at least 2 points"));
        }
        let level = level.to_level().map_err(invalid)?;
        let grid = wavefunction(&spec, &level, x_min, x_max, n_points, cosmetic_flip)?;
        *out = Box::into_raw(Box::new(BwWavefunction { grid }));
        Ok(())
    })
}

/// # Safety
/// `w` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn bw_wavefunction_len(w: *const BwWavefunction) -> usize {
    w.as_ref().map_or(0, |w| w.grid.xs.len())
}

/// Copies abscissae and values into caller buffers of `len` doubles each;
/// either buffer may be null. `len` must equal [`bw_wavefunction_len`].
///
/// # Safety
/// `w` must be a live handle; non-null buffers must hold `len` doubles.
#[no_mangle]
pub unsafe extern "C" fn bw_wavefunction_copy(
    w: *const BwWavefunction,
    xs: *mut f64,
    psi: *mut f64,
    len: usize,
) -> BwStatus {
    guard(|| {
        let w = w.as_ref().ok_or_else(|| null("wavefunction"))?;
        let n = w.grid.xs.len();
        if len != n {
            return Err(invalid(format!("buffer length {len} does not match grid length {n}")));
        }
        if !xs.is_null() {
            ptr::copy_nonoverlapping(w.grid.xs.as_ptr(), xs, n);
        }
        if !psi.is_null() {
            ptr::copy_nonoverlapping(w.grid.psi.as_ptr(), psi, n);
        }
        Ok(())
    })
}

/// # Safety
/// `w` must be null or a handle from [`bw_wavefunction_new`] not yet freed.
#[no_mangle]
pub unsafe extern "C" fn bw_wavefunction_free(w: *mut BwWavefunction) {
    if !w.is_null() {
        drop(Box::from_raw(w));
    }
}

/// Amplitudes A, B and R, T for V4 or V2 at one energy.
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn bw_scatter(family: i32, energy: f64, v0: f64, a: f64, out: *mut BwScattering) -> BwStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        let spec = spec(family, v0, a)?;
        if !energy.is_finite() {
            return Err(invalid("energy must be finite"));
        }
        let r = amplitudes(spec.family, energy, v0, a)?;
        let (refl, trans) = reflection_transmission(&r)?;
        *out = BwScattering {
            a_re: r.amp_a.re,
            a_im: r.amp_a.im,
            b_re: r.amp_b.re,
            b_im: r.amp_b.im,
            reflection: refl,
            transmission: trans,
        };
        Ok(())
    })
}

/// Transfer matrix of V4 at one energy.
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn bw_transfer_matrix(energy: f64, v0: f64, a: f64, out: *mut BwMatrix2) -> BwStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        spec(BwFamily::V4 as i32, v0, a)?;
        if !energy.is_finite() {
            return Err(invalid("energy must be finite"));
        }
        let m = transfer_matrix(&amplitudes(Family::V4, energy, v0, a)?);
        let e = [m.m11, m.m12, m.m21, m.m22];
        *out = BwMatrix2 {
            re: e.map(|z| z.re),
            im: e.map(|z| z.im),
        };
        Ok(())
    })
}
