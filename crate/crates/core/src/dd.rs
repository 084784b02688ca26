//! Double-double matrix products.
//!
//! Holonomies of thin or long surfaces are products of matrices whose
//! entries reach the thousands; their relator and long words lose most of
//! their digits in plain `f64`. Assembly and word evaluation therefore run in
//! ~32-digit arithmetic and only the results are rounded back.

use core::ops::Mul;

use twofloat::TwoFloat;

use crate::hyp::Isometry;

#[derive(Debug, Clone, Copy)]
pub(crate) struct DdMat {
    a: TwoFloat,
    b: TwoFloat,
    c: TwoFloat,
    d: TwoFloat,
}

fn f(x: TwoFloat) -> f64 {
    x.hi() + x.lo()
}

impl DdMat {
    pub(crate) const IDENTITY: DdMat = DdMat {
        a: TwoFloat::from_f64(1.0),
        b: TwoFloat::from_f64(0.0),
        c: TwoFloat::from_f64(0.0),
        d: TwoFloat::from_f64(1.0),
    };

    /// Inverse up to the (near-unit) determinant, which `PSL` ignores.
    pub(crate) fn inverse(&self) -> DdMat {
        DdMat {
            a: self.d,
            b: -self.b,
            c: -self.c,
            d: self.a,
        }
    }

    /// Rounds to a normalized `f64` isometry.
    pub(crate) fn round(&self) -> Isometry {
        Isometry {
            a: f(self.a),
            b: f(self.b),
            c: f(self.c),
            d: f(self.d),
        }
        .normalized()
    }

    /// Entrywise max distance from `±I`, computed before rounding.
    pub(crate) fn distance_from_identity(&self) -> f64 {
        let one = TwoFloat::from_f64(1.0);
        let plus = [self.a - one, self.b, self.c, self.d - one];
        let minus = [self.a + one, self.b, self.c, self.d + one];
        let norm = |v: [TwoFloat; 4]| v.iter().map(|x| f(*x).abs()).fold(0.0, f64::max);
        let r = norm(plus).min(norm(minus));
        if r.is_finite() {
            r
        } else {
            f64::INFINITY
        }
    }

    /// `|tr| / √det`, evaluated before rounding.
    pub(crate) fn normalized_trace(&self) -> f64 {
        let det = f(self.a * self.d - self.b * self.c);
        f(self.a + self.d).abs() / crate::math::sqrt(det)
    }

    pub(crate) fn psl_distance(&self, m: &Isometry) -> f64 {
        let other = DdMat::from(*m);
        let diff = |s: f64| {
            [
                self.a - other.a * s,
                self.b - other.b * s,
                self.c - other.c * s,
                self.d - other.d * s,
            ]
            .iter()
            .map(|x| f(*x).abs())
            .fold(0.0, f64::max)
        };
        diff(1.0).min(diff(-1.0))
    }
}

impl From<Isometry> for DdMat {
    fn from(m: Isometry) -> Self {
        DdMat {
            a: TwoFloat::from_f64(m.a),
            b: TwoFloat::from_f64(m.b),
            c: TwoFloat::from_f64(m.c),
            d: TwoFloat::from_f64(m.d),
        }
    }
}

impl Mul for DdMat {
    type Output = DdMat;
    fn mul(self, r: DdMat) -> DdMat {
        DdMat {
            a: self.a * r.a + self.b * r.c,
            b: self.a * r.b + self.b * r.d,
            c: self.c * r.a + self.d * r.c,
            d: self.c * r.b + self.d * r.d,
        }
    }
}

/// Product of `f64` factors carried out in double-double.
pub(crate) fn product<I: IntoIterator<Item = Isometry>>(factors: I) -> DdMat {
    factors
        .into_iter()
        .fold(DdMat::IDENTITY, |acc, m| acc * DdMat::from(m))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn long_product_keeps_identity() {
        let a = Isometry::translation(9.0);
        let r = Isometry::rotation(0.7);
        let x = r * a * r.inverse();
        let p = product([x, a, x.inverse(), a.inverse(), a, x, a.inverse(), x.inverse()]);
        let c = p * DdMat::from(x) * DdMat::from(x.inverse());
        assert!(c.round().psl_distance(&p.round()) < 1e-6);
        assert!(product([x, x.inverse()]).distance_from_identity() < 1e-12);
    }
}
