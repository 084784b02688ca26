//! Thin wrappers over `libm` so the rest of the crate reads like ordinary
//! float code without `std`.

pub(crate) use core::f64::consts::{PI, SQRT_2};

#[inline]
pub(crate) fn sqrt(x: f64) -> f64 {
    libm::sqrt(x)
}
#[inline]
pub(crate) fn exp(x: f64) -> f64 {
    libm::exp(x)
}
#[inline]
pub(crate) fn ln(x: f64) -> f64 {
    libm::log(x)
}
#[inline]
pub(crate) fn log1p(x: f64) -> f64 {
    libm::log1p(x)
}
#[inline]
pub(crate) fn sin(x: f64) -> f64 {
    libm::sin(x)
}
#[inline]
pub(crate) fn cos(x: f64) -> f64 {
    libm::cos(x)
}
#[inline]
pub(crate) fn atan2(y: f64, x: f64) -> f64 {
    libm::atan2(y, x)
}
#[inline]
pub(crate) fn sinh(x: f64) -> f64 {
    libm::sinh(x)
}
#[inline]
pub(crate) fn cosh(x: f64) -> f64 {
    libm::cosh(x)
}
#[inline]
pub(crate) fn tanh(x: f64) -> f64 {
    libm::tanh(x)
}
#[inline]
pub(crate) fn asinh(x: f64) -> f64 {
    libm::asinh(x)
}
#[inline]
pub(crate) fn atanh(x: f64) -> f64 {
    libm::atanh(x)
}
#[inline]
pub(crate) fn floor(x: f64) -> f64 {
    libm::floor(x)
}
#[inline]
pub(crate) fn round(x: f64) -> f64 {
    libm::round(x)
}
#[inline]
pub(crate) fn hypot(x: f64, y: f64) -> f64 {
    libm::hypot(x, y)
}
#[inline]
pub(crate) fn acos(x: f64) -> f64 {
    libm::acos(x.clamp(-1.0, 1.0))
}

/// `arccosh` written as `log1p(t + sqrt(t(t+2)))` with `t = x − 1`, which keeps
/// full relative precision for arguments just above one.
#[inline]
pub(crate) fn acosh(x: f64) -> f64 {
    let t = x - 1.0;
    if t <= 0.0 {
        return 0.0;
    }
    log1p(t + sqrt(t * (t + 2.0)))
}
