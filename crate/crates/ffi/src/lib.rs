//! C ABI over the intervalfmt library.
//!
//! Intervals are opaque handles created by [`ivf_parse`] or
//! [`ivf_interval_from_bounds`] and released with [`ivf_interval_free`].
//! Every function returns an [`IvfStatus`]; results come back through out
//! pointers. Strings returned through `char**` are NUL-terminated, owned by
//! the caller, and must be released with [`ivf_string_free`].
//!
//! The generated header lives at `include/intervalfmt.h`.

use std::cell::RefCell;
use std::ffi::{CStr, CString};
use std::os::raw::c_char;
use std::panic::{catch_unwind, AssertUnwindSafe};

use intervalfmt::{
    parse, render_interval, select_digits, semantic_interval, uncertainty, BinaryFormat,
    ConventionMode, DecimalInterval, DecimalNumeral, Error, RenderOptions, SelectionPolicy, Style,
};

/// Result of every FFI call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum IvfStatus {
    Ok = 0,
    /// A required pointer argument was NULL.
    NullPointer = 1,
    /// Input text was not valid UTF-8.
    InvalidUtf8 = 2,
    /// Input text failed to parse; see `ivf_last_error_message`.
    Syntax = 3,
    /// The notation is not allowed under the selected convention mode.
    ModeMismatch = 4,
    /// Reconstructed bounds were out of order.
    BoundsReversed = 5,
    /// A value does not fit in the binary format.
    Overflow = 6,
    /// The operation needs bounded interval sides.
    Unbounded = 7,
    /// An argument was outside its valid range.
    InvalidArgument = 8,
    /// An internal error was caught at the FFI boundary.
    Internal = 9,
}

/// Meaning of a bare numeral on input.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum IvfMode {
    Point = 0,
    Physics = 1,
    SingleNumber = 2,
    Clip = 3,
}

/// Output styles for `ivf_format`.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum IvfStyle {
    Factored = 0,
    Plain = 1,
    CenterAngle = 2,
    CenterPlus = 3,
    SingleNumber = 4,
}

/// Opaque interval handle.
pub struct IvfInterval {
    inner: DecimalInterval,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_last_error(message: String) {
    let c = CString::new(message).unwrap_or_else(|_| CString::new("invalid error text").unwrap());
    LAST_ERROR.with(|slot| *slot.borrow_mut() = Some(c));
}

fn status_of(err: &Error) -> IvfStatus {
    match err {
        Error::Syntax { .. } => IvfStatus::Syntax,
        Error::NotationDisallowed { .. } => IvfStatus::ModeMismatch,
        Error::BoundsReversed { .. } => IvfStatus::BoundsReversed,
        Error::Overflow { .. } => IvfStatus::Overflow,
        Error::Unbounded { .. } => IvfStatus::Unbounded,
        Error::InvalidValue { .. } => IvfStatus::InvalidArgument,
    }
}

fn fail(err: Error) -> IvfStatus {
    let status = status_of(&err);
    set_last_error(err.to_string());
    status
}

fn guard(f: impl FnOnce() -> IvfStatus) -> IvfStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(status) => status,
        Err(_) => {
            set_last_error("internal panic caught at the FFI boundary".to_string());
            IvfStatus::Internal
        }
    }
}

fn mode_of(mode: IvfMode) -> ConventionMode {
    match mode {
        IvfMode::Point => ConventionMode::Point,
        IvfMode::Physics => ConventionMode::Physics,
        IvfMode::SingleNumber => ConventionMode::SingleNumber,
        IvfMode::Clip => ConventionMode::Clip,
    }
}

fn style_of(style: IvfStyle) -> Style {
    match style {
        IvfStyle::Factored => Style::Factored,
        IvfStyle::Plain => Style::Plain,
        IvfStyle::CenterAngle => Style::CenterRadiusAngle,
        IvfStyle::CenterPlus => Style::CenterRadiusPlus,
        IvfStyle::SingleNumber => Style::SingleNumber,
    }
}

unsafe fn read_utf8<'a>(ptr: *const c_char) -> Result<&'a str, IvfStatus> {
    if ptr.is_null() {
        return Err(IvfStatus::NullPointer);
    }
    CStr::from_ptr(ptr).to_str().map_err(|_| {
        set_last_error("input is not valid UTF-8".to_string());
        IvfStatus::InvalidUtf8
    })
}

fn give_string(text: String, out: *mut *mut c_char) -> IvfStatus {
    match CString::new(text) {
        Ok(c) => {
            unsafe { *out = c.into_raw() };
            IvfStatus::Ok
        }
        Err(_) => {
            set_last_error("output contained an interior NUL".to_string());
            IvfStatus::Internal
        }
    }
}

/// Parses an interval notation under a convention mode into a new handle.
/// The handle must be freed with `ivf_interval_free`.
///
/// # Safety
/// `text` must be a valid NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn ivf_parse(
    text: *const c_char,
    mode: IvfMode,
    out: *mut *mut IvfInterval,
) -> IvfStatus {
    guard(|| {
        if out.is_null() {
            return IvfStatus::NullPointer;
        }
        let text = match read_utf8(text) {
            Ok(t) => t,
            Err(s) => return s,
        };
        let cmode = mode_of(mode);
        let ast = match parse(text, cmode) {
            Ok(a) => a,
            Err(e) => return fail(e),
        };
        match semantic_interval(&ast, cmode, &BinaryFormat::BINARY64) {
            Ok(interval) => {
                *out = Box::into_raw(Box::new(IvfInterval { inner: interval }));
                IvfStatus::Ok
            }
            Err(e) => fail(e),
        }
    })
}

/// Builds an interval from two decimal bound texts (point convention).
///
/// # Safety
/// Both bound strings must be valid NUL-terminated strings; `out` must be
/// a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn ivf_interval_from_bounds(
    lower: *const c_char,
    upper: *const c_char,
    out: *mut *mut IvfInterval,
) -> IvfStatus {
    guard(|| {
        if out.is_null() {
            return IvfStatus::NullPointer;
        }
        let (lower, upper) = match (read_utf8(lower), read_utf8(upper)) {
            (Ok(l), Ok(u)) => (l, u),
            (Err(s), _) | (_, Err(s)) => return s,
        };
        let l: DecimalNumeral = match lower.trim().parse() {
            Ok(v) => v,
            Err(e) => return fail(e),
        };
        let u: DecimalNumeral = match upper.trim().parse() {
            Ok(v) => v,
            Err(e) => return fail(e),
        };
        match DecimalInterval::new(l, u) {
            Ok(interval) => {
                *out = Box::into_raw(Box::new(IvfInterval { inner: interval }));
                IvfStatus::Ok
            }
            Err(e) => fail(e),
        }
    })
}

/// Releases a handle returned by `ivf_parse` or `ivf_interval_from_bounds`.
/// NULL is accepted and ignored.
///
/// # Safety
/// `ptr` must be NULL or a handle previously returned by this library, and
/// must not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn ivf_interval_free(ptr: *mut IvfInterval) {
    if !ptr.is_null() {
        drop(Box::from_raw(ptr));
    }
}

/// Renders an interval. `digits` selects the bracket digit count: a
/// positive value is used as-is, 0 picks the default (three, capped), and
/// any negative value keeps every available digit. The single-number style
/// ignores `digits`.
///
/// # Safety
/// `handle` must be a live handle and `out` a valid pointer; the returned
/// string must be freed with `ivf_string_free`.
#[no_mangle]
pub unsafe extern "C" fn ivf_format(
    handle: *const IvfInterval,
    style: IvfStyle,
    digits: i32,
    out: *mut *mut c_char,
) -> IvfStatus {
    guard(|| {
        if handle.is_null() || out.is_null() {
            return IvfStatus::NullPointer;
        }
        let interval = &(*handle).inner;
        let k = match digits {
            0 => Some(select_digits(interval, SelectionPolicy::Default).k),
            d if d < 0 => None,
            d => Some(d as usize),
        };
        let result = match style_of(style) {
            s @ (Style::Factored | Style::Plain) => {
                let widened = match k {
                    Some(k) => interval.outward_decimal(k),
                    None => interval.clone(),
                };
                render_interval(&widened, s, &RenderOptions::default())
            }
            s @ (Style::CenterRadiusAngle | Style::CenterRadiusPlus) => {
                let opts = RenderOptions {
                    center_last_position: k.and_then(|k| interval.suffix_position(k)),
                    ..Default::default()
                };
                render_interval(interval, s, &opts)
            }
            s => render_interval(interval, s, &RenderOptions::default()),
        };
        match result {
            Ok(text) => give_string(text, out),
            Err(e) => fail(e),
        }
    })
}

/// Renders the full widening sequence, one row per line.
///
/// # Safety
/// `handle` must be a live handle and `out` a valid pointer; the returned
/// string must be freed with `ivf_string_free`.
#[no_mangle]
pub unsafe extern "C" fn ivf_pyramid(
    handle: *const IvfInterval,
    out: *mut *mut c_char,
) -> IvfStatus {
    guard(|| {
        if handle.is_null() || out.is_null() {
            return IvfStatus::NullPointer;
        }
        let interval = &(*handle).inner;
        let mut rows = Vec::new();
        for row in interval.pyramid() {
            match render_interval(&row, Style::Factored, &RenderOptions::default()) {
                Ok(text) => rows.push(text),
                Err(e) => return fail(e),
            }
        }
        give_string(rows.join("\n"), out)
    })
}

/// Uncertainty of the interval in dits (log10 of the width). Point
/// intervals give negative infinity, unbounded ones positive infinity.
///
/// # Safety
/// `handle` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn ivf_uncertainty(
    handle: *const IvfInterval,
    out: *mut f64,
) -> IvfStatus {
    guard(|| {
        if handle.is_null() || out.is_null() {
            return IvfStatus::NullPointer;
        }
        *out = uncertainty(&(*handle).inner);
        IvfStatus::Ok
    })
}

/// Information yield in dits of the k-th bracket digit.
///
/// # Safety
/// `handle` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn ivf_marginal_yield(
    handle: *const IvfInterval,
    k: u32,
    out: *mut f64,
) -> IvfStatus {
    guard(|| {
        if handle.is_null() || out.is_null() {
            return IvfStatus::NullPointer;
        }
        match intervalfmt::marginal_yield(&(*handle).inner, k as usize) {
            Ok(y) => {
                *out = y;
                IvfStatus::Ok
            }
            Err(e) => fail(e),
        }
    })
}

/// Recommended bracket digit count. A positive `threshold` runs the
/// yield-threshold policy (in dits); zero or below picks the default
/// (three digits, capped at the available count).
///
/// # Safety
/// `handle` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn ivf_select_digits(
    handle: *const IvfInterval,
    threshold: f64,
    out: *mut u32,
) -> IvfStatus {
    guard(|| {
        if handle.is_null() || out.is_null() {
            return IvfStatus::NullPointer;
        }
        let policy = if threshold > 0.0 {
            SelectionPolicy::Threshold(threshold)
        } else {
            SelectionPolicy::Default
        };
        *out = select_digits(&(*handle).inner, policy).k as u32;
        IvfStatus::Ok
    })
}

/// Number of rows `ivf_pyramid` will produce.
///
/// # Safety
/// `handle` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn ivf_pyramid_height(
    handle: *const IvfInterval,
    out: *mut u32,
) -> IvfStatus {
    guard(|| {
        if handle.is_null() || out.is_null() {
            return IvfStatus::NullPointer;
        }
        let interval = &(*handle).inner;
        *out = if interval.is_point() || !interval.is_bounded() {
            1
        } else {
            interval.suffix_capacity().max(1) as u32
        };
        IvfStatus::Ok
    })
}

/// Frees a string returned by this library. NULL is accepted and ignored.
///
/// # Safety
/// `ptr` must be NULL or a string previously returned by this library, and
/// must not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn ivf_string_free(ptr: *mut c_char) {
    if !ptr.is_null() {
        drop(CString::from_raw(ptr));
    }
}

/// Static name of a status code.
#[no_mangle]
pub extern "C" fn ivf_status_name(status: IvfStatus) -> *const c_char {
    let name: &'static [u8] = match status {
        IvfStatus::Ok => b"ok\0",
        IvfStatus::NullPointer => b"null pointer\0",
        IvfStatus::InvalidUtf8 => b"invalid utf-8\0",
        IvfStatus::Syntax => b"syntax error\0",
        IvfStatus::ModeMismatch => b"notation not allowed in mode\0",
        IvfStatus::BoundsReversed => b"bounds reversed\0",
        IvfStatus::Overflow => b"overflow\0",
        IvfStatus::Unbounded => b"unbounded interval\0",
        IvfStatus::InvalidArgument => b"invalid argument\0",
        IvfStatus::Internal => b"internal error\0",
    };
    name.as_ptr() as *const c_char
}

/// Detail text for the most recent error on this thread, or NULL. The
/// caller owns the string and frees it with `ivf_string_free`.
#[no_mangle]
pub extern "C" fn ivf_last_error_message() -> *mut c_char {
    LAST_ERROR.with(|slot| {
        slot.borrow()
            .as_ref()
            .map(|c| c.clone().into_raw())
            .unwrap_or(std::ptr::null_mut())
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(text: &str) -> CString {
        CString::new(text).unwrap()
    }

    unsafe fn parse_ok(text: &str, mode: IvfMode) -> *mut IvfInterval {
        let mut handle: *mut IvfInterval = std::ptr::null_mut();
        let status = ivf_parse(c(text).as_ptr(), mode, &mut handle);
        assert_eq!(status, IvfStatus::Ok);
        assert!(!handle.is_null());
        handle
    }

    unsafe fn take_string(ptr: *mut c_char) -> String {
        assert!(!ptr.is_null());
        let s = CStr::from_ptr(ptr).to_str().unwrap().to_string();
        ivf_string_free(ptr);
        s
    }

    #[test]
    fn parse_format_roundtrip() {
        unsafe {
            let h = parse_ok(
                "[0.6180339887498946804,0.6180339887498950136]",
                IvfMode::Point,
            );
            let mut out: *mut c_char = std::ptr::null_mut();
            assert_eq!(ivf_format(h, IvfStyle::Factored, 3, &mut out), IvfStatus::Ok);
            assert_eq!(take_string(out), "0.61803398874989[468,502]");
            assert_eq!(ivf_format(h, IvfStyle::Factored, -1, &mut out), IvfStatus::Ok);
            assert_eq!(take_string(out), "0.61803398874989[46804,50136]");
            assert_eq!(
                ivf_format(h, IvfStyle::CenterPlus, -1, &mut out),
                IvfStatus::Ok
            );
            assert_eq!(
                take_string(out),
                "0.6180339887498948470 + [-0.0000000000000001666,+0.0000000000000001666]"
            );
            ivf_interval_free(h);
        }
    }

    #[test]
    fn pyramid_and_metrics() {
        unsafe {
            let h = parse_ok("[5.1268427635136,5.1268472635136]", IvfMode::Point);
            let mut rows: *mut c_char = std::ptr::null_mut();
            assert_eq!(ivf_pyramid(h, &mut rows), IvfStatus::Ok);
            let text = take_string(rows);
            assert_eq!(text.lines().count(), 8);
            assert!(text.starts_with("5.12684[27635136,72635136]\n"));
            assert!(text.ends_with("5.12684[2,8]"));

            let mut height = 0u32;
            assert_eq!(ivf_pyramid_height(h, &mut height), IvfStatus::Ok);
            assert_eq!(height, 8);

            let mut u = 0.0f64;
            assert_eq!(ivf_uncertainty(h, &mut u), IvfStatus::Ok);
            assert!((u - (4.5e-6f64).log10()) < 1e-9);

            let mut y = 0.0f64;
            assert_eq!(ivf_marginal_yield(h, 2, &mut y), IvfStatus::Ok);
            assert!((y - (6f64.log10() - 4.6f64.log10())).abs() < 1e-12);

            let mut k = 0u32;
            assert_eq!(ivf_select_digits(h, 0.005, &mut k), IvfStatus::Ok);
            assert_eq!(k, 3);
            ivf_interval_free(h);
        }
    }

    #[test]
    fn from_bounds_and_single_number() {
        unsafe {
            let mut h: *mut IvfInterval = std::ptr::null_mut();
            let status = ivf_interval_from_bounds(
                c("0.12345678").as_ptr(),
                c("0.12356789").as_ptr(),
                &mut h,
            );
            assert_eq!(status, IvfStatus::Ok);
            let mut out: *mut c_char = std::ptr::null_mut();
            assert_eq!(
                ivf_format(h, IvfStyle::SingleNumber, 0, &mut out),
                IvfStatus::Ok
            );
            assert_eq!(take_string(out), "0.1235");
            ivf_interval_free(h);
        }
    }

    #[test]
    fn error_statuses_and_messages() {
        unsafe {
            let mut h: *mut IvfInterval = std::ptr::null_mut();
            assert_eq!(
                ivf_parse(c("not an interval").as_ptr(), IvfMode::Point, &mut h),
                IvfStatus::Syntax
            );
            let msg = ivf_last_error_message();
            assert!(take_string(msg).contains("syntax"));

            assert_eq!(
                ivf_parse(c("0.123*").as_ptr(), IvfMode::Point, &mut h),
                IvfStatus::ModeMismatch
            );
            assert_eq!(
                ivf_parse(c("0.12[9,11]").as_ptr(), IvfMode::Point, &mut h),
                IvfStatus::BoundsReversed
            );
            assert_eq!(
                ivf_parse(std::ptr::null(), IvfMode::Point, &mut h),
                IvfStatus::NullPointer
            );
            assert_eq!(
                ivf_parse(c("[1,2]").as_ptr(), IvfMode::Point, std::ptr::null_mut()),
                IvfStatus::NullPointer
            );

            // Unbounded intervals parse but refuse center-radius rendering.
            let h = parse_ok("[1.5,inf]", IvfMode::Point);
            let mut out: *mut c_char = std::ptr::null_mut();
            assert_eq!(
                ivf_format(h, IvfStyle::CenterPlus, -1, &mut out),
                IvfStatus::Unbounded
            );
            ivf_interval_free(h);

            ivf_interval_free(std::ptr::null_mut());
            ivf_string_free(std::ptr::null_mut());
        }
    }

    #[test]
    fn status_names_are_static() {
        for status in [IvfStatus::Ok, IvfStatus::Syntax, IvfStatus::Internal] {
            let name = ivf_status_name(status);
            assert!(!name.is_null());
            unsafe {
                assert!(!CStr::from_ptr(name).to_str().unwrap().is_empty());
            }
        }
    }
}
