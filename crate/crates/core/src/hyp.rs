//! Geometry of the upper half-plane: points, orientation-preserving
//! isometries as normalized `SL(2, R)` matrices, geodesic lines and segments.
//!
//! All comparisons of isometries are made in `PSL(2, R)`, i.e. up to the sign
//! of the matrix.

use core::ops::Mul;

use crate::error::{Error, Result};
use crate::math::{acosh, asinh, atanh, exp, hypot, ln, sqrt};

/// A point `x + iy` of the upper half-plane.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HPoint {
    pub x: f64,
    pub y: f64,
}

impl HPoint {
    /// The point `i`, used as the reference point of every group.
    pub const I: HPoint = HPoint { x: 0.0, y: 1.0 };

    pub fn new(x: f64, y: f64) -> Result<Self> {
        if !(x.is_finite() && y.is_finite()) || y <= 0.0 {
            return Err(Error::InvalidInput("point must satisfy y > 0"));
        }
        Ok(Self { x, y })
    }

    /// Hyperboloid coordinates `(X0, X1, X2)` with `i ↦ (1, 0, 0)`.
    pub(crate) fn hyperboloid(self) -> [f64; 3] {
        let r2 = self.x * self.x + self.y * self.y;
        [
            (r2 + 1.0) / (2.0 * self.y),
            (r2 - 1.0) / (2.0 * self.y),
            self.x / self.y,
        ]
    }

    /// Klein-model coordinates centred at `i`.
    pub(crate) fn klein(self) -> [f64; 2] {
        let h = self.hyperboloid();
        [h[1] / h[0], h[2] / h[0]]
    }

    pub(crate) fn from_klein(k: [f64; 2]) -> Self {
        let n2 = k[0] * k[0] + k[1] * k[1];
        let x0 = 1.0 / sqrt((1.0 - n2).max(1e-300));
        Self::from_hyperboloid([x0, k[0] * x0, k[1] * x0])
    }

    pub(crate) fn from_hyperboloid(h: [f64; 3]) -> Self {
        // inverse of `hyperboloid`: y = 1 / (X0 − X1), x = X2 · y
        let y = 1.0 / (h[0] - h[1]);
        HPoint { x: h[2] * y, y }
    }

    /// Poincaré-disk coordinates centred at `i`.
    pub fn disk(self) -> [f64; 2] {
        // w = (z − i) / (z + i)
        let (x, y) = (self.x, self.y);
        let den = x * x + (y + 1.0) * (y + 1.0);
        [(x * x + y * y - 1.0) / den, -2.0 * x / den]
    }
}

/// Hyperbolic distance in the half-plane model.
pub fn dist(p: HPoint, q: HPoint) -> f64 {
    let e = hypot(p.x - q.x, p.y - q.y);
    2.0 * asinh(e / (2.0 * sqrt(p.y * q.y)))
}

/// A point of the ideal boundary `R ∪ {∞}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum IdealPoint {
    Real(f64),
    Infinity,
}

impl IdealPoint {
    /// Angle of the point on the boundary circle of the disk centred at `i`.
    pub fn disk_angle(self) -> f64 {
        match self {
            IdealPoint::Infinity => 0.0,
            IdealPoint::Real(t) => {
                // w = (t − i)/(t + i) has argument −2·atan2(1, t) + … ; use the
                // explicit form to stay branch-free.
                let den = t * t + 1.0;
                crate::math::atan2(-2.0 * t / den, (t * t - 1.0) / den)
            }
        }
    }
}

/// Isometry type by trace.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum IsometryKind {
    Identity,
    Elliptic,
    Parabolic,
    Hyperbolic,
}

/// An orientation-preserving isometry `z ↦ (az + b)/(cz + d)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Isometry {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub d: f64,
}

impl Isometry {
    pub const IDENTITY: Isometry = Isometry {
        a: 1.0,
        b: 0.0,
        c: 0.0,
        d: 1.0,
    };

    /// Builds a normalized matrix; rejects non-finite entries and
    /// non-positive determinants.
    pub fn new(a: f64, b: f64, c: f64, d: f64) -> Result<Self> {
        let m = Isometry { a, b, c, d };
        let det = m.det();
        if ![a, b, c, d, det].iter().all(|v| v.is_finite()) || det <= 0.0 {
            return Err(Error::CorruptedMatrix);
        }
        Ok(m.normalized())
    }

    pub fn det(&self) -> f64 {
        self.a * self.d - self.b * self.c
    }

    pub fn trace(&self) -> f64 {
        self.a + self.d
    }

    /// Divides by `√det` and picks the sign making the first nonzero entry
    /// positive.
    #[must_use]
    pub fn normalized(self) -> Self {
        let s = 1.0 / sqrt(self.det());
        let m = Isometry {
            a: self.a * s,
            b: self.b * s,
            c: self.c * s,
            d: self.d * s,
        };
        m.canonical_sign()
    }

    #[must_use]
    pub fn canonical_sign(self) -> Self {
        let lead = [self.a, self.b, self.c, self.d]
            .into_iter()
            .find(|v| *v != 0.0)
            .unwrap_or(1.0);
        if lead < 0.0 {
            self.neg()
        } else {
            self
        }
    }

    fn neg(self) -> Self {
        Isometry {
            a: -self.a,
            b: -self.b,
            c: -self.c,
            d: -self.d,
        }
    }

    pub fn inverse(&self) -> Self {
        Isometry {
            a: self.d,
            b: -self.b,
            c: -self.c,
            d: self.a,
        }
    }

    /// Translation by `t` along the imaginary axis, towards `∞` for `t > 0`.
    pub fn translation(t: f64) -> Self {
        let e = exp(t / 2.0);
        Isometry {
            a: e,
            b: 0.0,
            c: 0.0,
            d: 1.0 / e,
        }
    }

    /// Rotation about `i` by `theta`, counterclockwise in the disk picture.
    pub fn rotation(theta: f64) -> Self {
        let (s, c) = (crate::math::sin(theta / 2.0), crate::math::cos(theta / 2.0));
        Isometry {
            a: c,
            b: -s,
            c: s,
            d: c,
        }
    }

    /// The hyperbolic element with the given repelling and attracting fixed
    /// points and translation length.
    pub fn hyperbolic(line: &GeodesicLine, length: f64) -> Self {
        let n = line.normalizer();
        (n.inverse() * Isometry::translation(length) * n).normalized()
    }

    /// Largest entrywise distance from `other`, minimized over the sign.
    pub fn psl_distance(&self, other: &Isometry) -> f64 {
        let plus = (self.a - other.a)
            .abs()
            .max((self.b - other.b).abs())
            .max((self.c - other.c).abs())
            .max((self.d - other.d).abs());
        let minus = (self.a + other.a)
            .abs()
            .max((self.b + other.b).abs())
            .max((self.c + other.c).abs())
            .max((self.d + other.d).abs());
        plus.min(minus)
    }

    /// Möbius action, rejecting images that leave the half-plane.
    pub fn apply(&self, p: HPoint) -> Result<HPoint> {
        let q = self.act(p);
        if !(q.y > 0.0) || !q.x.is_finite() {
            return Err(Error::CorruptedMatrix);
        }
        Ok(q)
    }

    /// Möbius action without validity checks.
    #[inline]
    pub(crate) fn act(&self, p: HPoint) -> HPoint {
        let (a, b, c, d) = (self.a, self.b, self.c, self.d);
        let re = c * p.x + d;
        let im = c * p.y;
        let den = re * re + im * im;
        let num_re = a * p.x + b;
        let num_im = a * p.y;
        HPoint {
            x: (num_re * re + num_im * im) / den,
            y: (num_im * re - num_re * im) / den,
        }
    }

    pub fn act_ideal(&self, t: IdealPoint) -> IdealPoint {
        match t {
            IdealPoint::Infinity => {
                if self.c == 0.0 {
                    IdealPoint::Infinity
                } else {
                    IdealPoint::Real(self.a / self.c)
                }
            }
            IdealPoint::Real(x) => {
                let den = self.c * x + self.d;
                if den == 0.0 {
                    IdealPoint::Infinity
                } else {
                    IdealPoint::Real((self.a * x + self.b) / den)
                }
            }
        }
    }

    /// Hyperbolic distance from `i` to its image; the quantity every
    /// enumeration is sorted by.
    pub fn displacement_at_i(&self) -> f64 {
        let n = self.a * self.a + self.b * self.b + self.c * self.c + self.d * self.d;
        acosh(n / (2.0 * self.det()))
    }

    pub fn classify(&self, tol: f64) -> IsometryKind {
        let t = self.trace().abs() / sqrt(self.det());
        if t > 2.0 + tol {
            IsometryKind::Hyperbolic
        } else if t < 2.0 - tol {
            IsometryKind::Elliptic
        } else if self.psl_distance(&Isometry::IDENTITY) <= tol.max(1e-12) {
            IsometryKind::Identity
        } else {
            IsometryKind::Parabolic
        }
    }

    /// `2·arccosh(|tr|/2)` for hyperbolic elements.
    pub fn translation_length(&self) -> Result<f64> {
        let t = self.trace().abs() / sqrt(self.det());
        if t <= 2.0 + 1e-9 {
            return Err(Error::NoClosedGeodesic);
        }
        Ok(2.0 * acosh(t / 2.0))
    }

    /// Fixed-point pair on the ideal boundary, oriented from the repelling to
    /// the attracting point.
    pub fn axis(&self) -> Result<GeodesicLine> {
        if self.classify(1e-9) != IsometryKind::Hyperbolic {
            return Err(Error::NoClosedGeodesic);
        }
        let m = self.normalized();
        let (a, b, c, d) = (m.a, m.b, m.c, m.d);
        let disc = sqrt((a + d) * (a + d) - 4.0);
        if c == 0.0 {
            let finite = IdealPoint::Real(b / (d - a));
            return Ok(if a.abs() > d.abs() {
                GeodesicLine::from_ends(finite, IdealPoint::Infinity)
            } else {
                GeodesicLine::from_ends(IdealPoint::Infinity, finite)
            });
        }
        // roots of c z² + (d − a) z − b = 0 without cancellation
        let bb = d - a;
        let sign = if bb >= 0.0 { 1.0 } else { -1.0 };
        let q = -0.5 * (bb + sign * disc);
        let z1 = q / c;
        let z2 = if q != 0.0 { -b / q } else { (a - d) / (2.0 * c) };
        let attracting = |z: f64| (c * z + d).abs() > 1.0;
        let (rep, att) = if attracting(z1) && !attracting(z2) {
            (z2, z1)
        } else if attracting(z2) && !attracting(z1) {
            (z1, z2)
        } else if (c * z1 + d).abs() >= (c * z2 + d).abs() {
            (z2, z1)
        } else {
            (z1, z2)
        };
        Ok(GeodesicLine::from_ends(
            IdealPoint::Real(rep),
            IdealPoint::Real(att),
        ))
    }

    /// Product of a chain of factors, renormalized every 16 factors.
    pub fn product<'a, I: IntoIterator<Item = &'a Isometry>>(factors: I) -> Isometry {
        let mut acc = Isometry::IDENTITY;
        for (k, f) in factors.into_iter().enumerate() {
            acc = acc * *f;
            if k % 16 == 15 {
                acc = acc.normalized();
            }
        }
        acc.normalized()
    }
}

impl Mul for Isometry {
    type Output = Isometry;
    fn mul(self, r: Isometry) -> Isometry {
        Isometry {
            a: self.a * r.a + self.b * r.c,
            b: self.a * r.b + self.b * r.d,
            c: self.c * r.a + self.d * r.c,
            d: self.c * r.b + self.d * r.d,
        }
    }
}

/// An oriented complete geodesic, given by its two ideal endpoints.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GeodesicLine {
    pub endpoint_1: IdealPoint,
    pub endpoint_2: IdealPoint,
}

impl GeodesicLine {
    pub fn new(endpoint_1: IdealPoint, endpoint_2: IdealPoint) -> Result<Self> {
        let ok = match (endpoint_1, endpoint_2) {
            (IdealPoint::Infinity, IdealPoint::Infinity) => false,
            (IdealPoint::Real(a), IdealPoint::Real(b)) => a != b && a.is_finite() && b.is_finite(),
            (IdealPoint::Real(a), _) | (_, IdealPoint::Real(a)) => a.is_finite(),
        };
        if !ok {
            return Err(Error::InvalidInput("geodesic endpoints must be distinct"));
        }
        Ok(Self::from_ends(endpoint_1, endpoint_2))
    }

    pub(crate) fn from_ends(endpoint_1: IdealPoint, endpoint_2: IdealPoint) -> Self {
        Self {
            endpoint_1,
            endpoint_2,
        }
    }

    pub fn reversed(&self) -> Self {
        Self::from_ends(self.endpoint_2, self.endpoint_1)
    }

    /// An isometry taking this line to the imaginary axis, `endpoint_1 ↦ 0`
    /// and `endpoint_2 ↦ ∞`.
    pub fn normalizer(&self) -> Isometry {
        let raw = match (self.endpoint_1, self.endpoint_2) {
            (IdealPoint::Real(p), IdealPoint::Real(q)) => {
                if p > q {
                    Isometry {
                        a: 1.0,
                        b: -p,
                        c: 1.0,
                        d: -q,
                    }
                } else {
                    Isometry {
                        a: 1.0,
                        b: -p,
                        c: -1.0,
                        d: q,
                    }
                }
            }
            (IdealPoint::Real(p), IdealPoint::Infinity) => Isometry {
                a: 1.0,
                b: -p,
                c: 0.0,
                d: 1.0,
            },
            (IdealPoint::Infinity, IdealPoint::Real(q)) => Isometry {
                a: 0.0,
                b: -1.0,
                c: 1.0,
                d: -q,
            },
            (IdealPoint::Infinity, IdealPoint::Infinity) => Isometry::IDENTITY,
        };
        let s = 1.0 / sqrt(raw.det());
        Isometry {
            a: raw.a * s,
            b: raw.b * s,
            c: raw.c * s,
            d: raw.d * s,
        }
    }

    /// A normalizer that additionally sends `marked` (a point on the line) to
    /// `i`.
    pub fn frame(&self, marked: HPoint) -> Isometry {
        let n = self.normalizer();
        let s = n.act(marked).y;
        let k = 1.0 / sqrt(s);
        Isometry {
            a: k,
            b: 0.0,
            c: 0.0,
            d: 1.0 / k,
        } * n
    }

    pub fn image(&self, m: &Isometry) -> GeodesicLine {
        GeodesicLine::from_ends(m.act_ideal(self.endpoint_1), m.act_ideal(self.endpoint_2))
    }

    /// Signed distance, positive on the left of the oriented line.
    pub fn signed_distance(&self, p: HPoint) -> f64 {
        let w = self.normalizer().act(p);
        asinh(-w.x / w.y)
    }

    /// Point at signed arc length `t` from the foot of the perpendicular
    /// dropped from `i` onto the image line… measured from the point that
    /// the normalizer sends to `i`.
    pub(crate) fn point_at(&self, t: f64) -> HPoint {
        self.normalizer().inverse().act(HPoint { x: 0.0, y: exp(t) })
    }

    /// Arc-length coordinate of a point on (or projected to) the line, in the
    /// parameterization of [`GeodesicLine::point_at`].
    pub(crate) fn coordinate(&self, p: HPoint) -> f64 {
        let w = self.normalizer().act(p);
        // foot of the perpendicular from w onto the imaginary axis is i·|w|
        ln(hypot(w.x, w.y))
    }

    /// Orthogonal projection of `p` onto the line.
    pub fn project(&self, p: HPoint) -> HPoint {
        self.point_at(self.coordinate(p))
    }

    /// Same unoriented line, comparing endpoint angles seen from `i`.
    pub fn same_points(&self, other: &GeodesicLine, tol: f64) -> bool {
        let close = |u: IdealPoint, v: IdealPoint| {
            let d = (u.disk_angle() - v.disk_angle()).abs();
            d.min(2.0 * crate::math::PI - d) <= tol
        };
        (close(self.endpoint_1, other.endpoint_1) && close(self.endpoint_2, other.endpoint_2))
            || (close(self.endpoint_1, other.endpoint_2)
                && close(self.endpoint_2, other.endpoint_1))
    }

    /// Same oriented line.
    pub fn same_oriented(&self, other: &GeodesicLine, tol: f64) -> bool {
        let close = |u: IdealPoint, v: IdealPoint| {
            let d = (u.disk_angle() - v.disk_angle()).abs();
            d.min(2.0 * crate::math::PI - d) <= tol
        };
        close(self.endpoint_1, other.endpoint_1) && close(self.endpoint_2, other.endpoint_2)
    }

    /// Whether the two complete lines cross at an interior point.
    pub fn crosses(&self, other: &GeodesicLine) -> bool {
        let n = self.normalizer();
        let side = |t: IdealPoint| match n.act_ideal(t) {
            IdealPoint::Real(x) => x,
            IdealPoint::Infinity => 0.0,
        };
        let (u, v) = (side(other.endpoint_1), side(other.endpoint_2));
        u * v < 0.0
    }
}

/// A geodesic segment between two distinct points.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GeoSegment {
    pub start: HPoint,
    pub end: HPoint,
}

impl GeoSegment {
    pub fn new(start: HPoint, end: HPoint) -> Result<Self> {
        if start == end {
            return Err(Error::InvalidInput("segment endpoints must differ"));
        }
        Ok(Self { start, end })
    }

    pub fn length(&self) -> f64 {
        dist(self.start, self.end)
    }

    /// The point at fraction `s ∈ [0, 1]` of the arc length from `start`.
    pub fn point_at(&self, s: f64) -> HPoint {
        let line = self.line();
        let t0 = line.coordinate(self.start);
        let t1 = line.coordinate(self.end);
        line.point_at(t0 + s * (t1 - t0))
    }

    /// The complete line through the segment, oriented from start to end.
    pub fn line(&self) -> GeodesicLine {
        let (p, q) = (self.start, self.end);
        // below this the circle centre is pure rounding noise
        if (p.x - q.x).abs() <= 1e-12 * (p.x.abs() + q.x.abs() + p.y + q.y) {
            let x = 0.5 * (p.x + q.x);
            return if q.y > p.y {
                GeodesicLine::from_ends(IdealPoint::Real(x), IdealPoint::Infinity)
            } else {
                GeodesicLine::from_ends(IdealPoint::Infinity, IdealPoint::Real(x))
            };
        }
        // circle centre on the real axis equidistant from p and q
        let c = ((q.x * q.x + q.y * q.y) - (p.x * p.x + p.y * p.y)) / (2.0 * (q.x - p.x));
        let r = hypot(p.x - c, p.y);
        if q.x > p.x {
            GeodesicLine::from_ends(IdealPoint::Real(c - r), IdealPoint::Real(c + r))
        } else {
            GeodesicLine::from_ends(IdealPoint::Real(c + r), IdealPoint::Real(c - r))
        }
    }
}

/// Infimum of `dist(p, q)` over `q` on the line.
pub fn point_to_line_distance(p: HPoint, line: &GeodesicLine) -> f64 {
    line.signed_distance(p).abs()
}

/// The unique segment orthogonal to both lines, and its length.
pub fn common_perpendicular(l1: &GeodesicLine, l2: &GeodesicLine) -> Result<(f64, GeoSegment)> {
    let n = l1.normalizer();
    let u = n.act_ideal(l2.endpoint_1);
    let v = n.act_ideal(l2.endpoint_2);
    let (u, v) = match (u, v) {
        (IdealPoint::Real(u), IdealPoint::Real(v)) => (u, v),
        _ => return Err(Error::AsymptoticLines),
    };
    if u == 0.0 || v == 0.0 {
        return Err(Error::AsymptoticLines);
    }
    if u * v < 0.0 {
        return Err(Error::LinesIntersect);
    }
    let sign = if u > 0.0 { 1.0 } else { -1.0 };
    let (lo, hi) = if u.abs() < v.abs() {
        (u.abs(), v.abs())
    } else {
        (v.abs(), u.abs())
    };
    if lo == hi {
        return Err(Error::AsymptoticLines);
    }
    let length = 2.0 * atanh(sqrt(lo / hi));
    let g = sqrt(lo * hi);
    let foot1 = HPoint { x: 0.0, y: g };
    let foot2 = HPoint {
        x: sign * 2.0 * lo * hi / (lo + hi),
        y: g * (hi - lo) / (lo + hi),
    };
    let back = n.inverse();
    Ok((
        length,
        GeoSegment {
            start: back.act(foot1),
            end: back.act(foot2),
        },
    ))
}

/// Whether the segment meets the line; endpoints within `tol` of the line
/// count as crossings.
pub fn segment_crosses_line(s: &GeoSegment, line: &GeodesicLine, tol: f64) -> bool {
    let n = line.normalizer();
    let side = |p: HPoint| {
        let w = n.act(p);
        asinh(-w.x / w.y)
    };
    let (d1, d2) = (side(s.start), side(s.end));
    if d1.abs() <= tol || d2.abs() <= tol {
        return true;
    }
    (d1 < 0.0) != (d2 < 0.0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::math::cosh;
    use core::f64::consts::E;

    fn p(x: f64, y: f64) -> HPoint {
        HPoint::new(x, y).unwrap()
    }

    #[test]
    fn distance_examples() {
        assert!((dist(p(0.0, 1.0), p(0.0, 2.0)) - core::f64::consts::LN_2).abs() < 1e-15);
        assert_eq!(dist(p(0.3, 0.7), p(0.3, 0.7)), 0.0);
        assert!((dist(p(0.0, 1.0), p(1.0, 1.0)) - 0.962_423_650_119_206_9).abs() < 1e-12);
    }

    #[test]
    fn rejects_lower_half_plane() {
        assert!(HPoint::new(0.0, 0.0).is_err());
        assert!(HPoint::new(0.0, -1.0).is_err());
        assert!(HPoint::new(f64::NAN, 1.0).is_err());
    }

    #[test]
    fn apply_examples() {
        let q = Isometry::IDENTITY.apply(p(0.4, 2.0)).unwrap();
        assert_eq!(q, p(0.4, 2.0));
        let s = Isometry::translation(1.0).apply(HPoint::I).unwrap();
        assert!(s.x.abs() < 1e-15 && (s.y - E).abs() < 1e-14);
        let bad = Isometry {
            a: 1.0,
            b: 0.0,
            c: 0.0,
            d: -1.0,
        };
        assert_eq!(bad.apply(HPoint::I), Err(Error::CorruptedMatrix));
    }

    #[test]
    fn classify_examples() {
        assert_eq!(Isometry::IDENTITY.classify(1e-9), IsometryKind::Identity);
        assert_eq!(Isometry::translation(2.0).classify(1e-9), IsometryKind::Hyperbolic);
        assert_eq!(Isometry::rotation(0.5).classify(1e-9), IsometryKind::Elliptic);
        let para = Isometry::new(1.0, 1.0, 0.0, 1.0).unwrap();
        assert_eq!(para.classify(1e-9), IsometryKind::Parabolic);
    }

    #[test]
    fn translation_length_examples() {
        let t = Isometry::translation(2.0).translation_length().unwrap();
        assert!((t - 2.0).abs() < 1e-14);
        assert_eq!(
            Isometry::rotation(1.0).translation_length(),
            Err(Error::NoClosedGeodesic)
        );
    }

    #[test]
    fn axis_of_diagonal_is_imaginary_axis() {
        let ax = Isometry::translation(2.0).axis().unwrap();
        assert_eq!(ax.endpoint_1, IdealPoint::Real(0.0));
        assert_eq!(ax.endpoint_2, IdealPoint::Infinity);
        let g = Isometry::new(2.0, 1.0, 1.0, 1.0).unwrap();
        let conj = g * Isometry::translation(2.0) * g.inverse();
        let ax = conj.axis().unwrap();
        let expect = GeodesicLine::from_ends(IdealPoint::Real(0.0), IdealPoint::Infinity).image(&g);
        assert!(ax.same_oriented(&expect, 1e-12));
    }

    #[test]
    fn point_to_line_examples() {
        let l = GeodesicLine::new(IdealPoint::Real(0.0), IdealPoint::Infinity).unwrap();
        assert!(point_to_line_distance(p(0.0, E), &l) < 1e-15);
        assert!((point_to_line_distance(p(1.0, 1.0), &l) - 0.881_373_587_019_543).abs() < 1e-12);
    }

    #[test]
    fn concentric_semicircles() {
        let r = E * E;
        let l1 = GeodesicLine::new(IdealPoint::Real(-1.0), IdealPoint::Real(1.0)).unwrap();
        let l2 = GeodesicLine::new(IdealPoint::Real(-r), IdealPoint::Real(r)).unwrap();
        let (len, seg) = common_perpendicular(&l1, &l2).unwrap();
        assert!((len - 2.0).abs() < 1e-12);
        assert!(seg.start.x.abs() < 1e-12 && seg.end.x.abs() < 1e-12);
        assert!((seg.start.y - 1.0).abs() < 1e-12 && (seg.end.y - r).abs() < 1e-9);
    }

    #[test]
    fn perpendicular_errors() {
        let l1 = GeodesicLine::new(IdealPoint::Real(-1.0), IdealPoint::Real(1.0)).unwrap();
        let l2 = GeodesicLine::new(IdealPoint::Real(0.0), IdealPoint::Real(3.0)).unwrap();
        assert_eq!(common_perpendicular(&l1, &l2), Err(Error::LinesIntersect));
        let l3 = GeodesicLine::new(IdealPoint::Real(1.0), IdealPoint::Real(3.0)).unwrap();
        assert_eq!(common_perpendicular(&l1, &l3), Err(Error::AsymptoticLines));
    }

    #[test]
    fn segment_crossing_examples() {
        let unit = GeodesicLine::new(IdealPoint::Real(-1.0), IdealPoint::Real(1.0)).unwrap();
        let s = GeoSegment::new(p(0.0, 1.1), p(0.0, 2.0)).unwrap();
        assert!(!segment_crosses_line(&s, &unit, 1e-10));
        let s = GeoSegment::new(p(0.0, 0.5), p(0.0, 2.0)).unwrap();
        assert!(segment_crosses_line(&s, &unit, 1e-10));
        let s = GeoSegment::new(p(0.0, 1.0), p(0.0, 2.0)).unwrap();
        assert!(segment_crosses_line(&s, &unit, 1e-10));
    }

    #[test]
    fn model_conversions_round_trip() {
        let q = p(0.7, 0.3);
        let back = HPoint::from_klein(q.klein());
        assert!(dist(q, back) < 1e-12);
        let h = q.hyperboloid();
        assert!((h[0] - cosh(dist(q, HPoint::I))).abs() < 1e-12);
        let w = q.disk();
        assert!((crate::math::hypot(w[0], w[1]) - crate::math::tanh(dist(q, HPoint::I) / 2.0)).abs() < 1e-12);
    }

    #[test]
    fn line_through_segment_contains_endpoints() {
        let s = GeoSegment::new(p(-0.4, 0.8), p(1.3, 0.2)).unwrap();
        let l = s.line();
        assert!(point_to_line_distance(s.start, &l) < 1e-12);
        assert!(point_to_line_distance(s.end, &l) < 1e-12);
        let mid = s.point_at(0.5);
        assert!((dist(s.start, mid) - dist(mid, s.end)).abs() < 1e-12);
    }

    #[test]
    fn nearly_vertical_segment() {
        let s = GeoSegment::new(p(-1.1984197007222066, 0.6238897628236093), p(-1.198419700722204, 4.513541686350294))
            .unwrap();
        for k in 0..=4 {
            let m = s.point_at(f64::from(k) / 4.0);
            assert!((m.x + 1.1984197007222).abs() < 1e-9);
        }
        assert!(dist(s.point_at(1.0), s.end) < 1e-12);
    }
}
