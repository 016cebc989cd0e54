//! Isometries of the hyperbolic 3-space as complex unimodular 2×2 matrices
//! acting on the upper half-space C × R_{>0}; trace classification and the
//! eccentricity witness candidate list.

use num_complex::Complex64;
use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum H3Error {
    #[error("matrix determinant is not 1")]
    NotUnimodular,
    #[error("element is not elliptic")]
    NotElliptic,
    #[error("no certified witness found")]
    NoWitness,
}

/// Element of the complex unimodular group acting on H₃.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ComplexSl2 {
    pub a: Complex64,
    pub b: Complex64,
    pub c: Complex64,
    pub d: Complex64,
}

/// A point (z, t) of the half-space model with t > 0.
pub type H3Point = (Complex64, f64);

impl ComplexSl2 {
    pub fn new(a: Complex64, b: Complex64, c: Complex64, d: Complex64) -> Result<Self, H3Error> {
        if (a * d - b * c - Complex64::new(1.0, 0.0)).norm() > 1e-9 {
            return Err(H3Error::NotUnimodular);
        }
        Ok(ComplexSl2 { a, b, c, d })
    }

    pub fn identity() -> Self {
        ComplexSl2 {
            a: Complex64::new(1.0, 0.0),
            b: Complex64::new(0.0, 0.0),
            c: Complex64::new(0.0, 0.0),
            d: Complex64::new(1.0, 0.0),
        }
    }

    pub fn mul(&self, o: &Self) -> Self {
        ComplexSl2 {
            a: self.a * o.a + self.b * o.c,
            b: self.a * o.b + self.b * o.d,
            c: self.c * o.a + self.d * o.c,
            d: self.c * o.b + self.d * o.d,
        }
    }

    pub fn inverse(&self) -> Self {
        ComplexSl2 {
            a: self.d,
            b: -self.b,
            c: -self.c,
            d: self.a,
        }
    }

    pub fn trace(&self) -> Complex64 {
        self.a + self.d
    }

    pub fn is_projective_identity(&self, tol: f64) -> bool {
        let close = |s: f64| {
            (self.a - s).norm() < tol
                && self.b.norm() < tol
                && self.c.norm() < tol
                && (self.d - s).norm() < tol
        };
        close(1.0) || close(-1.0)
    }

    /// Elliptic means the trace is real in (−2, 2), up to the projective
    /// sign; these are exactly the elements with fixed points in H₃.
    pub fn is_elliptic(&self, tol: f64) -> bool {
        let tr = self.trace();
        tr.im.abs() < tol && tr.re.abs() < 2.0 - tol && !self.is_projective_identity(tol)
    }

    /// Quaternionic action on the half-space.
    pub fn apply(&self, p: H3Point) -> H3Point {
        let (z, t) = p;
        let den = (self.c * z + self.d).norm_sqr() + self.c.norm_sqr() * t * t;
        let num = (self.a * z + self.b) * (self.c * z + self.d).conj()
            + self.a * self.c.conj() * t * t;
        (num / den, t / den)
    }

    /// Boundary fixed points in C ∪ {∞}: roots of `cz² + (d−a)z − b`.
    pub fn boundary_fixed(&self) -> Vec<Option<Complex64>> {
        let eps = 1e-12;
        if self.c.norm() < eps {
            let mut out = vec![None];
            if (self.d - self.a).norm() > eps {
                out.push(Some(self.b / (self.d - self.a)));
            }
            return out;
        }
        let disc = (self.d - self.a) * (self.d - self.a)
            + 4.0 * self.b * self.c;
        let r = disc.sqrt();
        vec![
            Some(((self.a - self.d) - r) / (2.0 * self.c)),
            Some(((self.a - self.d) + r) / (2.0 * self.c)),
        ]
    }

    /// Fixed axis of an elliptic element, as a geodesic of H₃.
    pub fn axis(&self) -> Result<H3Axis, H3Error> {
        if !self.is_elliptic(1e-9) {
            return Err(H3Error::NotElliptic);
        }
        let ends = self.boundary_fixed();
        match ends.as_slice() {
            [None, Some(w)] | [Some(w), None] => Ok(H3Axis::Vertical { foot: *w }),
            [Some(p), Some(q)] => Ok(H3Axis::Arc { p: *p, q: *q }),
            _ => Err(H3Error::NotElliptic),
        }
    }
}

/// A geodesic of H₃ in boundary form.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum H3Axis {
    Vertical { foot: Complex64 },
    Arc { p: Complex64, q: Complex64 },
}

impl H3Axis {
    /// Boundary endpoints, `None` encoding ∞.
    fn endpoints(&self) -> [Option<Complex64>; 2] {
        match self {
            H3Axis::Vertical { foot } => [Some(*foot), None],
            H3Axis::Arc { p, q } => [Some(*p), Some(*q)],
        }
    }

    /// Arclength parametrization; t = 0 sits at a canonical interior point.
    pub fn point_at(&self, t: f64) -> H3Point {
        match self {
            H3Axis::Vertical { foot } => (*foot, t.exp()),
            H3Axis::Arc { p, q } => {
                let center = (p + q) / 2.0;
                let radius = (q - p).norm() / 2.0;
                let dir = (q - p) / (q - p).norm();
                let phi = 2.0 * t.exp().atan();
                (center + dir * (radius * phi.cos()), radius * phi.sin())
            }
        }
    }
}

pub fn h3_distance(x: H3Point, y: H3Point) -> f64 {
    let dz = (x.0 - y.0).norm_sqr();
    let dt = (x.1 - y.1) * (x.1 - y.1);
    (1.0 + (dz + dt) / (2.0 * x.1 * y.1)).acosh()
}

fn endpoint_eq(a: Option<Complex64>, b: Option<Complex64>, tol: f64) -> bool {
    match (a, b) {
        (None, None) => true,
        (Some(x), Some(y)) => (x - y).norm() < tol,
        _ => false,
    }
}

/// Relation between two geodesics: identical, asymptotic (one shared
/// endpoint: the distance infimum is 0 but unattained), meeting in H₃, or
/// disjoint at positive distance.
#[derive(Clone, Debug, PartialEq)]
pub enum AxisRelation {
    Same,
    Asymptotic,
    Meet(H3Point),
    Disjoint(f64),
}

pub fn axes_relation(a: &H3Axis, b: &H3Axis, tol: f64) -> AxisRelation {
    let ea = a.endpoints();
    let eb = b.endpoints();
    let mut shared = 0;
    for x in ea.iter() {
        if eb.iter().any(|y| endpoint_eq(*x, *y, tol)) {
            shared += 1;
        }
    }
    if shared == 2 {
        return AxisRelation::Same;
    }
    if shared == 1 {
        return AxisRelation::Asymptotic;
    }
    // Four distinct endpoints: the infimum distance is attained; minimize
    // over both parameters by a coarse grid plus coordinate refinement.
    let (mut ts, mut tt, mut best) = (0.0, 0.0, f64::INFINITY);
    for i in -24..=24 {
        for j in -24..=24 {
            let s = i as f64 * 0.25;
            let t = j as f64 * 0.25;
            let d = h3_distance(a.point_at(s), b.point_at(t));
            if d < best {
                best = d;
                ts = s;
                tt = t;
            }
        }
    }
    let mut span = 0.25;
    for _ in 0..60 {
        let mut improved = false;
        for (ds, dt) in [
            (span, 0.0),
            (-span, 0.0),
            (0.0, span),
            (0.0, -span),
            (span, span),
            (-span, -span),
            (span, -span),
            (-span, span),
        ] {
            let d = h3_distance(a.point_at(ts + ds), b.point_at(tt + dt));
            if d < best {
                best = d;
                ts += ds;
                tt += dt;
                improved = true;
            }
        }
        if !improved {
            span /= 2.0;
        }
        if span < 1e-12 {
            break;
        }
    }
    if best < tol {
        AxisRelation::Meet(a.point_at(ts))
    } else {
        AxisRelation::Disjoint(best)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub enum H3Witness {
    CommonPoint((f64, f64, f64)),
    Witness {
        label: String,
        trace: (f64, f64),
    },
}

/// For two elliptic elements: a common axis point when the axes meet,
/// otherwise the first of `f⁻¹g`, `[g,f]`, `gfgf⁻¹` whose trace certifies an
/// empty fixed set (not real in (−2,2), identity excluded).
pub fn eccentricity_witness_h3(
    f: &ComplexSl2,
    g: &ComplexSl2,
    tol: f64,
) -> Result<H3Witness, H3Error> {
    if !f.is_elliptic(tol) || !g.is_elliptic(tol) {
        return Err(H3Error::NotElliptic);
    }
    let fa = f.axis()?;
    let ga = g.axis()?;
    match axes_relation(&fa, &ga, tol.max(1e-6)) {
        AxisRelation::Same => {
            let p = fa.point_at(0.0);
            return Ok(H3Witness::CommonPoint((p.0.re, p.0.im, p.1)));
        }
        AxisRelation::Meet(p) => {
            return Ok(H3Witness::CommonPoint((p.0.re, p.0.im, p.1)));
        }
        AxisRelation::Asymptotic | AxisRelation::Disjoint(_) => {}
    }
    let candidates = [
        ("f^{-1}g".to_string(), f.inverse().mul(g)),
        (
            "[g,f]".to_string(),
            g.inverse().mul(&f.inverse()).mul(g).mul(f),
        ),
        ("gfgf^{-1}".to_string(), g.mul(f).mul(g).mul(&f.inverse())),
    ];
    for (label, h) in candidates {
        if !h.is_projective_identity(tol) && !h.is_elliptic(tol) {
            let tr = h.trace();
            return Ok(H3Witness::Witness {
                label,
                trace: (tr.re, tr.im),
            });
        }
    }
    Err(H3Error::NoWitness)
}

/// Elliptic rotation by `angle` about the vertical axis over `foot`.
pub fn vertical_rotation(foot: Complex64, angle: f64) -> ComplexSl2 {
    let half = Complex64::new(0.0, angle / 2.0).exp();
    // Conjugate diag(e^{iθ/2}, e^{−iθ/2}) by the translation z ↦ z + foot.
    let a = half;
    let d = half.conj();
    // T M T^{-1} with T = [[1, foot],[0,1]].
    ComplexSl2 {
        a,
        b: foot * (d - a),
        c: Complex64::new(0.0, 0.0),
        d,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::FRAC_PI_2;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn vertical_rotation_is_elliptic_and_fixes_axis() {
        let f = vertical_rotation(c(0.0, 0.0), FRAC_PI_2);
        assert!(f.is_elliptic(1e-9));
        let p = (c(0.0, 0.0), 2.5);
        let q = f.apply(p);
        assert!((q.0 - p.0).norm() < 1e-12 && (q.1 - p.1).abs() < 1e-12);
        assert_eq!(f.axis().unwrap(), H3Axis::Vertical { foot: c(0.0, 0.0) });
    }

    #[test]
    fn same_element_gives_common_point() {
        let f = vertical_rotation(c(0.0, 0.0), FRAC_PI_2);
        match eccentricity_witness_h3(&f, &f, 1e-9).unwrap() {
            H3Witness::CommonPoint(_) => {}
            other => panic!("expected common point, got {other:?}"),
        }
    }

    #[test]
    fn crossing_axes_common_point_is_fixed() {
        // Rotation about the vertical axis at 0, and one about the arc from
        // −1 to 1 (they cross at the apex (0, 1)).
        let f = vertical_rotation(c(0.0, 0.0), 1.0);
        // Elliptic with boundary fixed points ±1: conjugate the vertical
        // rotation by m(z) = (z−1)/(z+1), which sends {−1, 1} to {∞, 0}.
        let s2 = 2.0f64.sqrt();
        let t = ComplexSl2 {
            a: c(1.0 / s2, 0.0),
            b: c(-1.0 / s2, 0.0),
            c: c(1.0 / s2, 0.0),
            d: c(1.0 / s2, 0.0),
        };
        let rot = vertical_rotation(c(0.0, 0.0), 1.3);
        let g = t.inverse().mul(&rot).mul(&t);
        assert!(g.is_elliptic(1e-9));
        match eccentricity_witness_h3(&f, &g, 1e-9).unwrap() {
            H3Witness::CommonPoint((x, y, h)) => {
                let p = (c(x, y), h);
                let fp = f.apply(p);
                let gp = g.apply(p);
                assert!(h3_distance(fp, p) < 1e-4, "f moves the common point");
                assert!(h3_distance(gp, p) < 1e-4, "g moves the common point");
            }
            other => panic!("expected common point, got {other:?}"),
        }
    }

    #[test]
    fn disjoint_vertical_axes_yield_witness() {
        let f = vertical_rotation(c(0.0, 0.0), FRAC_PI_2);
        let g = vertical_rotation(c(1.0, 0.0), FRAC_PI_2);
        match eccentricity_witness_h3(&f, &g, 1e-9).unwrap() {
            H3Witness::Witness { trace, .. } => {
                // Certified non-elliptic: not a real trace inside (−2,2).
                let real_inside = trace.1.abs() < 1e-9 && trace.0.abs() < 2.0 - 1e-9;
                assert!(!real_inside);
            }
            other => panic!("expected witness, got {other:?}"),
        }
    }

    #[test]
    fn non_elliptic_inputs_rejected() {
        let parabolic = ComplexSl2::new(c(1.0, 0.0), c(1.0, 0.0), c(0.0, 0.0), c(1.0, 0.0))
            .unwrap();
        let f = vertical_rotation(c(0.0, 0.0), 1.0);
        assert_eq!(
            eccentricity_witness_h3(&parabolic, &f, 1e-9),
            Err(H3Error::NotElliptic)
        );
    }

    #[test]
    fn axes_relation_detects_asymptotic_pairs() {
        let a = H3Axis::Vertical { foot: c(0.0, 0.0) };
        let b = H3Axis::Vertical { foot: c(1.0, 0.0) };
        assert_eq!(axes_relation(&a, &b, 1e-6), AxisRelation::Asymptotic);
        let arc = H3Axis::Arc {
            p: c(0.0, 0.0),
            q: c(2.0, 0.0),
        };
        assert_eq!(axes_relation(&a, &arc, 1e-6), AxisRelation::Asymptotic);
    }

    #[test]
    fn crossing_arc_and_vertical_meet() {
        let vertical = H3Axis::Vertical { foot: c(0.0, 0.0) };
        let arc = H3Axis::Arc {
            p: c(-1.0, 0.0),
            q: c(1.0, 0.0),
        };
        match axes_relation(&vertical, &arc, 1e-6) {
            AxisRelation::Meet(p) => {
                assert!((p.0).norm() < 1e-3 && (p.1 - 1.0).abs() < 1e-3);
            }
            other => panic!("expected meet, got {other:?}"),
        }
    }

    #[test]
    fn action_preserves_distance() {
        let f = vertical_rotation(c(0.3, -0.2), 0.77);
        let p = (c(0.1, 0.4), 0.9);
        let q = (c(-1.0, 0.2), 2.0);
        let d0 = h3_distance(p, q);
        let d1 = h3_distance(f.apply(p), f.apply(q));
        assert!((d0 - d1).abs() < 1e-9);
    }
}
