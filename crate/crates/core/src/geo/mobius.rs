//! Trace classification of unimodular Möbius elements acting on the upper
//! half-plane, rotations about interior points, and the boundary action.

use serde::Serialize;
use thiserror::Error;

use super::circumcenter::PointMap;

#[derive(Debug, Error, PartialEq)]
pub enum MobiusError {
    #[error("matrix determinant {0} is not 1")]
    NotUnimodular(f64),
}

/// A real 2×2 matrix with determinant 1 acting on H₂ by homography.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Sl2 {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub d: f64,
}

impl Sl2 {
    pub fn new(a: f64, b: f64, c: f64, d: f64) -> Result<Sl2, MobiusError> {
        let det = a * d - b * c;
        if (det - 1.0).abs() > 1e-12 {
            return Err(MobiusError::NotUnimodular(det));
        }
        Ok(Sl2 { a, b, c, d })
    }

    pub fn identity() -> Sl2 {
        Sl2 {
            a: 1.0,
            b: 0.0,
            c: 0.0,
            d: 1.0,
        }
    }

    pub fn mul(&self, o: &Sl2) -> Sl2 {
        Sl2 {
            a: self.a * o.a + self.b * o.c,
            b: self.a * o.b + self.b * o.d,
            c: self.c * o.a + self.d * o.c,
            d: self.c * o.b + self.d * o.d,
        }
    }

    pub fn inverse(&self) -> Sl2 {
        Sl2 {
            a: self.d,
            b: -self.b,
            c: -self.c,
            d: self.a,
        }
    }

    pub fn trace(&self) -> f64 {
        self.a + self.d
    }

    /// Action on z = x + iy with y > 0.
    pub fn apply(&self, z: (f64, f64)) -> (f64, f64) {
        let (x, y) = z;
        let (nr, ni) = (self.a * x + self.b, self.a * y);
        let (dr, di) = (self.c * x + self.d, self.c * y);
        let den = dr * dr + di * di;
        ((nr * dr + ni * di) / den, (ni * dr - nr * di) / den)
    }

    fn is_projective_identity(&self, tol: f64) -> bool {
        let close = |m: &Sl2, s: f64| {
            (m.a - s).abs() < tol && m.b.abs() < tol && m.c.abs() < tol && (m.d - s).abs() < tol
        };
        close(self, 1.0) || close(self, -1.0)
    }
}

impl PointMap for Sl2 {
    fn apply_point(&self, x: &[f64]) -> Vec<f64> {
        let (u, v) = self.apply((x[0], x[1]));
        vec![u, v]
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
pub enum IsometryClass {
    Identity,
    Elliptic,
    Parabolic,
    Hyperbolic,
}

/// A classified positive isometry of H₂.
#[derive(Clone, Debug, Serialize)]
pub struct ClassifiedIsometry {
    pub element: Sl2,
    pub class: IsometryClass,
    pub trace: f64,
    /// Interior fixed point, elliptic case only.
    pub fixed_point: Option<(f64, f64)>,
    /// Boundary fixed points (`None` entries encode the point at infinity).
    pub boundary_fixed: Vec<Option<f64>>,
    /// Rotation angle, elliptic case only.
    pub angle: Option<f64>,
}

/// Classifies by |trace| against 2: elliptic (< 2) elements have the unique
/// interior fixed point given by the root of `cz² + (d−a)z − b = 0` in the
/// upper half-plane; parabolic and hyperbolic elements fix only boundary
/// points.
pub fn classify_h2(m: Sl2, tol: f64) -> ClassifiedIsometry {
    let trace = m.trace();
    if m.is_projective_identity(tol) {
        return ClassifiedIsometry {
            element: m,
            class: IsometryClass::Identity,
            trace,
            fixed_point: None,
            boundary_fixed: Vec::new(),
            angle: None,
        };
    }
    let abs_tr = trace.abs();
    if abs_tr < 2.0 - tol {
        // Elliptic: fixed point ((a−d) + i√(4−tr²)) / (2c).
        let root = (4.0 - trace * trace).sqrt();
        let x = (m.a - m.d) / (2.0 * m.c);
        let y = (root / (2.0 * m.c)).abs();
        // Angle from the derivative at the fixed point: h'(z₀) = (cz₀+d)^{-2}.
        let (dr, di) = (m.c * x + m.d, m.c * y);
        let den = (dr * dr + di * di).powi(2);
        let hp_re = (dr * dr - di * di) / den;
        let hp_im = -2.0 * dr * di / den;
        let angle = -hp_im.atan2(hp_re);
        return ClassifiedIsometry {
            element: m,
            class: IsometryClass::Elliptic,
            trace,
            fixed_point: Some((x, y)),
            boundary_fixed: Vec::new(),
            angle: Some(angle),
        };
    }
    let class = if abs_tr <= 2.0 + tol {
        IsometryClass::Parabolic
    } else {
        IsometryClass::Hyperbolic
    };
    ClassifiedIsometry {
        element: m,
        class,
        trace,
        fixed_point: None,
        boundary_fixed: boundary_fixed_points(m.a, m.b, m.c, m.d, tol),
        angle: None,
    }
}

/// Roots of `cx² + (d−a)x − b = 0` on the boundary circle R ∪ {∞}.
fn boundary_fixed_points(a: f64, b: f64, c: f64, d: f64, tol: f64) -> Vec<Option<f64>> {
    if c.abs() < tol {
        // Fixes ∞; a second finite fixed point unless also d = a.
        let mut out = vec![None];
        if (d - a).abs() > tol {
            out.push(Some(b / (d - a)));
        }
        return out;
    }
    let disc = (d - a) * (d - a) + 4.0 * b * c;
    if disc < -tol {
        return Vec::new();
    }
    let disc = disc.max(0.0);
    let r = disc.sqrt();
    if r < tol {
        return vec![Some((a - d) / (2.0 * c))];
    }
    vec![
        Some(((a - d) - r) / (2.0 * c)),
        Some(((a - d) + r) / (2.0 * c)),
    ]
}

/// Fixed points of a homography with `ad − bc = ±1` acting on R̂.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub enum MobiusFixedPoints {
    /// The identity fixes the whole boundary circle.
    All,
    /// Zero, one or two points; `None` is the point at infinity.
    Points(Vec<Option<f64>>),
}

pub fn mobius_line_fixed_points(a: f64, b: f64, c: f64, d: f64, tol: f64) -> MobiusFixedPoints {
    let det = a * d - b * c;
    // Projective identity: (a,b,c,d) proportional to (1,0,0,1).
    if b.abs() < tol && c.abs() < tol && (a - d).abs() < tol && det > 0.0 {
        return MobiusFixedPoints::All;
    }
    MobiusFixedPoints::Points(boundary_fixed_points(a, b, c, d, tol))
}

/// The rotation of center `i·x` and angle θ:
/// `[[cos(θ/2), −x sin(θ/2)], [x⁻¹ sin(θ/2), cos(θ/2)]]`.
pub fn rotation_about(x_scale: f64, theta: f64) -> Sl2 {
    assert!(x_scale > 0.0);
    let (s, c) = (theta / 2.0).sin_cos();
    Sl2 {
        a: c,
        b: -x_scale * s,
        c: s / x_scale,
        d: c,
    }
}

/// Builds the commutator of a rotation about `i` and one about `i·x` with
/// opposite angles, multiplies the matrices numerically, and checks the
/// closed form `2cos²t + (x + x⁻¹) sin²t` with `t = θ/2`. The value always
/// exceeds 2, so the commutator of distinct-center rotations never has a
/// fixed point.
pub fn commutator_trace_h2(theta: f64, x_scale: f64) -> f64 {
    assert!(x_scale > 0.0 && x_scale != 1.0);
    let t = theta / 2.0;
    let (s, c) = t.sin_cos();
    let f = Sl2 {
        a: c,
        b: -s,
        c: s,
        d: c,
    };
    // h = g̃ f̃⁻¹ g̃⁻¹: the inverse rotation conjugated to the center i·x.
    let h = Sl2 {
        a: c,
        b: x_scale * s,
        c: -s / x_scale,
        d: c,
    };
    let product_trace = f.mul(&h).trace();
    let closed_form = 2.0 * c * c + (x_scale + 1.0 / x_scale) * s * s;
    debug_assert!(
        (product_trace - closed_form).abs() < 1e-9,
        "matrix product {product_trace} vs closed form {closed_form}"
    );
    product_trace
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI};

    const TOL: f64 = 1e-9;

    fn rot(t: f64) -> Sl2 {
        Sl2 {
            a: t.cos(),
            b: -t.sin(),
            c: t.sin(),
            d: t.cos(),
        }
    }

    #[test]
    fn rotation_matrix_is_elliptic_fixing_i() {
        let m = rot(PI / 8.0);
        let cl = classify_h2(m, TOL);
        assert_eq!(cl.class, IsometryClass::Elliptic);
        let (x, y) = cl.fixed_point.unwrap();
        assert!(x.abs() < TOL && (y - 1.0).abs() < TOL);
        // R(π/8) is the rotation of angle π/4 about i.
        assert!((cl.angle.unwrap() - FRAC_PI_4).abs() < 1e-9);
    }

    #[test]
    fn parabolic_translation_matrix() {
        let m = Sl2::new(1.0, 1.0, 0.0, 1.0).unwrap();
        let cl = classify_h2(m, TOL);
        assert_eq!(cl.class, IsometryClass::Parabolic);
        assert!(cl.fixed_point.is_none());
        assert_eq!(cl.boundary_fixed, vec![None]);
    }

    #[test]
    fn hyperbolic_diagonal_matrix() {
        let m = Sl2::new(2.0, 0.0, 0.0, 0.5).unwrap();
        let cl = classify_h2(m, TOL);
        assert_eq!(cl.class, IsometryClass::Hyperbolic);
        assert!(cl.fixed_point.is_none());
    }

    #[test]
    fn unimodularity_enforced() {
        assert!(matches!(
            Sl2::new(2.0, 0.0, 0.0, 1.0),
            Err(MobiusError::NotUnimodular(_))
        ));
    }

    #[test]
    fn rotation_about_scaled_center() {
        let m = rotation_about(2.0, FRAC_PI_2);
        let cl = classify_h2(m, TOL);
        assert_eq!(cl.class, IsometryClass::Elliptic);
        let (x, y) = cl.fixed_point.unwrap();
        assert!(x.abs() < TOL && (y - 2.0).abs() < TOL);
        // Zero angle gives the identity.
        let id = rotation_about(3.0, 0.0);
        assert_eq!(classify_h2(id, TOL).class, IsometryClass::Identity);
        // x = 1 recovers the plain rotation matrix.
        let r = rotation_about(1.0, FRAC_PI_2);
        let expect = rot(FRAC_PI_4);
        assert!((r.a - expect.a).abs() < 1e-12 && (r.b - expect.b).abs() < 1e-12);
    }

    #[test]
    fn elliptic_fixed_point_is_actually_fixed() {
        let m = rotation_about(2.0, 1.234);
        let cl = classify_h2(m, TOL);
        let z = cl.fixed_point.unwrap();
        let w = m.apply(z);
        assert!((w.0 - z.0).abs() < 1e-9 && (w.1 - z.1).abs() < 1e-9);
    }

    #[test]
    fn commutator_trace_examples() {
        let t1 = commutator_trace_h2(FRAC_PI_2, 2.0);
        assert!((t1 - 2.25).abs() < 1e-12);
        let t2 = commutator_trace_h2(PI, 3.0);
        assert!((t2 - 10.0 / 3.0).abs() < 1e-12);
        assert!(t1 > 2.0 && t2 > 2.0);
    }

    #[test]
    fn mobius_fixed_points_of_f() {
        // f: x ↦ 1/(3−x) has matrix [[0,1],[−1,3]]; fixed points (3±√5)/2.
        let pts = mobius_line_fixed_points(0.0, 1.0, -1.0, 3.0, TOL);
        let MobiusFixedPoints::Points(v) = pts else {
            panic!("not identity")
        };
        let mut roots: Vec<f64> = v.into_iter().flatten().collect();
        roots.sort_by(f64::total_cmp);
        let s5 = 5.0f64.sqrt();
        assert!((roots[0] - (3.0 - s5) / 2.0).abs() < 1e-12);
        assert!((roots[1] - (3.0 + s5) / 2.0).abs() < 1e-12);
    }

    #[test]
    fn identity_fixes_all() {
        assert_eq!(
            mobius_line_fixed_points(1.0, 0.0, 0.0, 1.0, TOL),
            MobiusFixedPoints::All
        );
    }

    #[test]
    fn word_fg_has_two_real_fixed_points() {
        // AB has trace 18, so the discriminant is positive.
        let fg = Sl2::new(5.0, 4.0, 16.0, 13.0).unwrap();
        let cl = classify_h2(fg, TOL);
        assert_eq!(cl.class, IsometryClass::Hyperbolic);
        assert_eq!(cl.boundary_fixed.len(), 2);
    }
}
