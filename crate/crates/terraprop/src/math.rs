//! Float math routed through one place so the crate builds without `std`.
//!
//! `core` has no transcendental functions; the `std` build uses the
//! compiler intrinsics and the `no_std` build falls back to `libm`.

#![allow(dead_code)]

macro_rules! unary {
    ($($name:ident => $libm:path,)+) => {
        $(
            #[cfg(feature = "std")]
            #[inline(always)]
            pub(crate) fn $name(x: f64) -> f64 {
                f64::$name(x)
            }

            #[cfg(not(feature = "std"))]
            #[inline(always)]
            pub(crate) fn $name(x: f64) -> f64 {
                $libm(x)
            }
        )+
    };
}

unary! {
    abs => libm::fabs,
    acos => libm::acos,
    cos => libm::cos,
    exp => libm::exp,
    floor => libm::floor,
    ln => libm::log,
    round => libm::round,
    sin => libm::sin,
    sqrt => libm::sqrt,
    tan => libm::tan,
}

#[cfg(feature = "std")]
#[inline(always)]
pub(crate) fn powf(x: f64, y: f64) -> f64 {
    x.powf(y)
}

#[cfg(not(feature = "std"))]
#[inline(always)]
pub(crate) fn powf(x: f64, y: f64) -> f64 {
    libm::pow(x, y)
}

#[inline(always)]
pub(crate) fn to_radians(deg: f64) -> f64 {
    deg * (core::f64::consts::PI / 180.0)
}

#[inline(always)]
pub(crate) fn to_degrees(rad: f64) -> f64 {
    rad * (180.0 / core::f64::consts::PI)
}
