//! Closed-form length bounds and the trigonometric relations used by the
//! cutting procedure.

use crate::error::{Error, Result};
use crate::math::{acosh, asinh, cosh, ln, sin, sinh, sqrt, tanh, PI, SQRT_2};

/// `2·arcsinh 1`, the collar threshold below which simple closed geodesics are
/// pairwise disjoint.
pub fn two_asinh_one() -> f64 {
    2.0 * asinh(1.0)
}

fn check_genus(g: u32) -> Result<()> {
    if g < 2 {
        return Err(Error::InvalidInput("genus must be at least 2"));
    }
    Ok(())
}

fn sin_angle(g: u32) -> f64 {
    sin(PI / (12.0 * f64::from(g) - 6.0))
}

/// Upper bound on the shortest geodesic loop based at any point of a closed
/// genus-`g` surface.
pub fn bavard_bound(g: u32) -> Result<f64> {
    check_genus(g)?;
    Ok(2.0 * acosh(1.0 / (2.0 * sin_angle(g))))
}

/// `R_g = arccosh(1 / (√2 · sin(π/(12g−6))))`.
pub fn r_g(g: u32) -> Result<f64> {
    check_genus(g)?;
    Ok(acosh(1.0 / (SQRT_2 * sin_angle(g))))
}

/// `log(4g−2) + arcsinh 1`, a simpler upper bound for [`r_g`].
pub fn r_g_rough(g: u32) -> Result<f64> {
    check_genus(g)?;
    Ok(ln(4.0 * f64::from(g) - 2.0) + asinh(1.0))
}

/// `4π(g−1) + 4·R_g`.
pub fn bers_bound(g: u32) -> Result<f64> {
    Ok(4.0 * PI * f64::from(g - 1).max(0.0) + 4.0 * r_g(g)?)
}

/// Area of an embedded hyperbolic disk of radius `r`.
pub fn disk_area(r: f64) -> Result<f64> {
    if !(r >= 0.0) || !r.is_finite() {
        return Err(Error::InvalidInput("radius must be nonnegative"));
    }
    Ok(2.0 * PI * (cosh(r) - 1.0))
}

/// `2·log(2g−1 + √(2g(2g−2)))`, the area-comparison bound on embedded disk
/// radii. The inner logarithm alone is the radius whose disk area equals
/// `4π(g−1)`; the bound keeps the factor of two.
pub fn weak_radius_bound(g: u32) -> Result<f64> {
    check_genus(g)?;
    let g = f64::from(g);
    Ok(2.0 * ln(2.0 * g - 1.0 + sqrt(2.0 * g * (2.0 * g - 2.0))))
}

/// Bound on the distance from the base point of a loop of length `loop_len`
/// to the closed geodesic of length `geo_len` in its class.
pub fn loop_to_geodesic_distance_bound(loop_len: f64, geo_len: f64) -> Result<f64> {
    if !(loop_len > 0.0 && geo_len > 0.0) {
        return Err(Error::InvalidInput("lengths must be positive"));
    }
    Ok(acosh(cosh(loop_len / 2.0) / tanh(geo_len / 2.0)))
}

/// Strict tri-rectangle inequality `sinh d · sinh(ℓ/2) < 1`.
pub fn tri_rectangle_check(d: f64, geo_len: f64) -> bool {
    sinh(d) * sinh(geo_len / 2.0) < 1.0
}

/// Right-angled hexagon relation: length of the third boundary of the pants
/// bounded by curves of lengths `l1`, `l2` joined by an orthogonal arc of
/// length `c`.
pub fn hexagon_third_side(l1: f64, l2: f64, c: f64) -> Result<f64> {
    if !(l1 > 0.0 && l2 > 0.0 && c > 0.0) {
        return Err(Error::InvalidInput("lengths must be positive"));
    }
    let (h1, h2) = (l1 / 2.0, l2 / 2.0);
    let rhs = sinh(h1) * sinh(h2) * cosh(c) - cosh(h1) * cosh(h2);
    // equality within rounding is the open boundary case and counts as degenerate
    if !(rhs > 1.0 + 1e-12) {
        return Err(Error::DegeneratePants);
    }
    Ok(2.0 * acosh(rhs))
}

/// Largest `r` with `boundary_len · sinh r ≤ 4π(g−1)`.
pub fn neighborhood_radius_bound(boundary_len: f64, g: u32) -> Result<f64> {
    check_genus(g)?;
    if !(boundary_len > 0.0) {
        return Err(Error::InvalidInput("boundary length must be positive"));
    }
    Ok(asinh(4.0 * PI * f64::from(g - 1) / boundary_len))
}

/// The four headline bounds for one genus.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundTable {
    pub genus: u32,
    pub bavard: f64,
    pub r_g: f64,
    pub r_g_rough: f64,
    pub bers: f64,
}

impl BoundTable {
    pub fn new(genus: u32) -> Result<Self> {
        Ok(Self {
            genus,
            bavard: bavard_bound(genus)?,
            r_g: r_g(genus)?,
            r_g_rough: r_g_rough(genus)?,
            bers: bers_bound(genus)?,
        })
    }
}
