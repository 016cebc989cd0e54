//! Euclidean and half-space hyperbolic points: distances, geodesics,
//! midpoints, the median inequality, mediators and line projections.

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum GeoError {
    #[error("dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),
    #[error("point is not in the open upper half-space")]
    NotInHalfSpace,
    #[error("equal points have no mediator")]
    EqualPoints,
    #[error("empty point set")]
    EmptySet,
    #[error("set is not invariant under a generator (residual {0})")]
    NotInvariant(f64),
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Space {
    Euclidean,
    Hyperbolic,
}

pub fn euclidean_distance(x: &[f64], y: &[f64]) -> f64 {
    norm(&sub(x, y))
}

pub fn sub(x: &[f64], y: &[f64]) -> Vec<f64> {
    x.iter().zip(y).map(|(a, b)| a - b).collect()
}

pub fn add(x: &[f64], y: &[f64]) -> Vec<f64> {
    x.iter().zip(y).map(|(a, b)| a + b).collect()
}

pub fn scale(x: &[f64], s: f64) -> Vec<f64> {
    x.iter().map(|a| a * s).collect()
}

pub fn dot(x: &[f64], y: &[f64]) -> f64 {
    x.iter().zip(y).map(|(a, b)| a * b).sum()
}

pub fn norm(x: &[f64]) -> f64 {
    dot(x, x).sqrt()
}

/// Geodesic distance in the half-space model:
/// `argcosh(1 + ‖x−y‖² / (2 xₙ yₙ))`.
pub fn hyperbolic_distance(x: &[f64], y: &[f64]) -> Result<f64, GeoError> {
    if x.len() != y.len() {
        return Err(GeoError::DimensionMismatch(x.len(), y.len()));
    }
    let n = x.len();
    let (hx, hy) = (x[n - 1], y[n - 1]);
    if hx <= 0.0 || hy <= 0.0 {
        return Err(GeoError::NotInHalfSpace);
    }
    let d2 = sub(x, y).iter().map(|v| v * v).sum::<f64>();
    Ok((1.0 + d2 / (2.0 * hx * hy)).acosh())
}

pub fn distance(space: Space, x: &[f64], y: &[f64]) -> Result<f64, GeoError> {
    match space {
        Space::Euclidean => {
            if x.len() != y.len() {
                return Err(GeoError::DimensionMismatch(x.len(), y.len()));
            }
            Ok(euclidean_distance(x, y))
        }
        Space::Hyperbolic => hyperbolic_distance(x, y),
    }
}

/// Point at arclength `s` from `x` along the geodesic toward `y`.
///
/// Handles the vertical-line and boundary-circle cases of the half-space
/// model separately; `s` may exceed d(x,y), extrapolating past `y`.
pub fn hyperbolic_interpolate(x: &[f64], y: &[f64], s: f64) -> Vec<f64> {
    let n = x.len();
    let (hx, hy) = (x[n - 1], y[n - 1]);
    let horiz = euclidean_distance(&x[..n - 1], &y[..n - 1]);
    if horiz < 1e-14 * (1.0 + hx.max(hy)) {
        // Vertical geodesic: height moves exponentially in arclength.
        let dir = if hy >= hx { 1.0 } else { -1.0 };
        let mut out = x.to_vec();
        out[n - 1] = hx * (dir * s).exp();
        return out;
    }
    // Reduce to the 2D slice spanned by the horizontal segment.
    let e: Vec<f64> = sub(&y[..n - 1], &x[..n - 1])
        .iter()
        .map(|v| v / horiz)
        .collect();
    let (b, u, v) = (horiz, hx, hy);
    // Half circle through (0,u),(b,v) centered (c,0) radius r.
    let c = (b * b + v * v - u * u) / (2.0 * b);
    let r = (c * c + u * u).sqrt();
    let phi_x = u.atan2(-c);
    let phi_y = v.atan2(b - c);
    let t = |phi: f64| (phi / 2.0).tan().ln();
    let (tx, ty) = (t(phi_x), t(phi_y));
    let dir = if ty >= tx { 1.0 } else { -1.0 };
    let tm = tx + dir * s;
    let phi = 2.0 * tm.exp().atan();
    let (hu, hh) = (c + r * phi.cos(), r * phi.sin());
    let mut out = Vec::with_capacity(n);
    for i in 0..n - 1 {
        out.push(x[i] + hu * e[i]);
    }
    out.push(hh);
    out
}

/// The midpoint of `{x, y}` for the median inequality, with the minimum
/// sampled slack of the inequality recorded.
#[derive(Clone, Debug, Serialize)]
pub struct MedianMidpoint {
    pub point: Vec<f64>,
    pub slack: f64,
}

pub fn euclidean_midpoint(x: &[f64], y: &[f64]) -> Vec<f64> {
    scale(&add(x, y), 0.5)
}

/// Midpoint on the geodesic through x and y, equidistant from both.
pub fn hyperbolic_midpoint(x: &[f64], y: &[f64]) -> Result<Vec<f64>, GeoError> {
    let d = hyperbolic_distance(x, y)?;
    if d == 0.0 {
        return Ok(x.to_vec());
    }
    Ok(hyperbolic_interpolate(x, y, d / 2.0))
}

pub fn midpoint(space: Space, x: &[f64], y: &[f64]) -> Result<Vec<f64>, GeoError> {
    match space {
        Space::Euclidean => {
            if x.len() != y.len() {
                return Err(GeoError::DimensionMismatch(x.len(), y.len()));
            }
            Ok(euclidean_midpoint(x, y))
        }
        Space::Hyperbolic => hyperbolic_midpoint(x, y),
    }
}

/// `½(d(z,x)² + d(z,y)²) − ¼ d(x,y)² − d(z,m)²`; nonnegative in spaces
/// satisfying the median inequality, zero in Euclidean space.
pub fn median_inequality_slack(space: Space, x: &[f64], y: &[f64], z: &[f64]) -> Result<f64, GeoError> {
    let m = midpoint(space, x, y)?;
    let dzx = distance(space, z, x)?;
    let dzy = distance(space, z, y)?;
    let dxy = distance(space, x, y)?;
    let dzm = distance(space, z, &m)?;
    Ok(0.5 * (dzx * dzx + dzy * dzy) - 0.25 * dxy * dxy - dzm * dzm)
}

/// Midpoint audit: records the worst slack of the median inequality over
/// the provided probe points.
pub fn midpoint_with_slack(
    space: Space,
    x: &[f64],
    y: &[f64],
    probes: &[Vec<f64>],
) -> Result<MedianMidpoint, GeoError> {
    let point = midpoint(space, x, y)?;
    let mut slack = f64::INFINITY;
    for z in probes {
        slack = slack.min(median_inequality_slack(space, x, y, z)?);
    }
    if probes.is_empty() {
        slack = 0.0;
    }
    Ok(MedianMidpoint { point, slack })
}

/// The mediator (equidistant set) of two points of the half-space, which is
/// a hyperplane: vertical when the heights agree, otherwise a half-sphere
/// with center on the boundary.
#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Mediator {
    Vertical {
        /// A point of the hyperplane (the Euclidean midpoint).
        foot: Vec<f64>,
        /// Horizontal normal direction.
        normal: Vec<f64>,
    },
    Sphere {
        /// Center in the boundary hyperplane (last coordinate 0).
        center: Vec<f64>,
        radius: f64,
    },
}

pub fn mediator_hn(a: &[f64], b: &[f64]) -> Result<Mediator, GeoError> {
    if a.len() != b.len() {
        return Err(GeoError::DimensionMismatch(a.len(), b.len()));
    }
    if euclidean_distance(a, b) == 0.0 {
        return Err(GeoError::EqualPoints);
    }
    let n = a.len();
    let (an, bn) = (a[n - 1], b[n - 1]);
    if an <= 0.0 || bn <= 0.0 {
        return Err(GeoError::NotInHalfSpace);
    }
    if (an - bn).abs() < 1e-12 * (an + bn) {
        let mut normal = sub(b, a);
        normal[n - 1] = 0.0;
        return Ok(Mediator::Vertical {
            foot: euclidean_midpoint(a, b),
            normal,
        });
    }
    // bₙ‖x−a‖² = aₙ‖x−b‖² expands to a sphere centered on the boundary:
    // center = (bₙ a − aₙ b)/(bₙ − aₙ), r² = ‖center‖² − (bₙ‖a‖² − aₙ‖b‖²)/(bₙ−aₙ).
    let denom = bn - an;
    let center: Vec<f64> = a
        .iter()
        .zip(b)
        .map(|(&ai, &bi)| (bn * ai - an * bi) / denom)
        .collect();
    debug_assert!(center[n - 1].abs() < 1e-9);
    let na = dot(a, a);
    let nb = dot(b, b);
    let r2 = dot(&center, &center) - (bn * na - an * nb) / denom;
    let mut center = center;
    center[n - 1] = 0.0;
    Ok(Mediator::Sphere {
        center,
        radius: r2.max(0.0).sqrt(),
    })
}

/// Sample points on a mediator, for equidistance checks.
pub fn sample_mediator(med: &Mediator, count: usize, seed_dir: &[f64]) -> Vec<Vec<f64>> {
    let mut out = Vec::new();
    match med {
        Mediator::Vertical { foot, normal } => {
            let n = foot.len();
            // Move inside the hyperplane: any direction orthogonal to normal.
            let mut tangent = vec![0.0; n];
            // Gram-Schmidt a seed direction against the normal (horizontal part).
            let mut seed = seed_dir.to_vec();
            seed.resize(n, 0.37);
            let nn = dot(normal, normal);
            if nn > 0.0 {
                let proj = dot(&seed, normal) / nn;
                for i in 0..n {
                    tangent[i] = seed[i] - proj * normal[i];
                }
            }
            tangent[n - 1] = 0.0;
            for k in 0..count {
                let t = (k as f64 + 1.0) / count as f64 - 0.5;
                let mut p = add(foot, &scale(&tangent, t));
                let h = foot[n - 1] * (1.0 + 0.5 * (k as f64 / count as f64));
                p[n - 1] = h;
                out.push(p);
            }
        }
        Mediator::Sphere { center, radius } => {
            let n = center.len();
            for k in 0..count {
                // Angles sweep the upper half of a planar section.
                let phi = std::f64::consts::PI * (k as f64 + 0.5) / (count as f64 + 1.0);
                let mut p = center.clone();
                let mut dir = seed_dir.to_vec();
                dir.resize(n - 1, 0.21);
                let dn = norm(&dir);
                let dir: Vec<f64> = dir.iter().map(|v| v / dn).collect();
                for i in 0..n - 1 {
                    p[i] += radius * phi.cos() * dir[i];
                }
                p[n - 1] = radius * phi.sin();
                out.push(p);
            }
        }
    }
    out
}

/// A geodesic of the hyperbolic plane in boundary form.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum H2Geodesic {
    /// Vertical half-line with the given real foot.
    Vertical { foot: f64 },
    /// Half-circle centered on the boundary.
    Circle { center: f64, radius: f64 },
}

/// Orthogonal projection of a point of H₂ onto a geodesic line.
///
/// For the imaginary axis and x = a+bi the projection is `i√(a²+b²)`; the
/// general case is reduced to it by a boundary-preserving isometry.
pub fn project_to_line_h2(x: (f64, f64), line: H2Geodesic) -> (f64, f64) {
    let (a, b) = x;
    match line {
        H2Geodesic::Vertical { foot } => (foot, ((a - foot).powi(2) + b * b).sqrt()),
        H2Geodesic::Circle { center, radius } => {
            // Möbius map z ↦ (z − c + r)/(−z + c + r) sends the half-circle
            // to the imaginary axis (det 2r > 0 keeps the upper half-plane).
            let (c, r) = (center, radius);
            let m = Mobius2 {
                a: 1.0,
                b: r - c,
                c: -1.0,
                d: c + r,
            };
            let w = m.apply((a, b));
            let proj = (0.0, (w.0 * w.0 + w.1 * w.1).sqrt());
            m.inverse().apply(proj)
        }
    }
}

/// Minimal real Möbius helper for the projection reduction.
#[derive(Clone, Copy, Debug)]
struct Mobius2 {
    a: f64,
    b: f64,
    c: f64,
    d: f64,
}

impl Mobius2 {
    fn apply(&self, z: (f64, f64)) -> (f64, f64) {
        // (az+b)/(cz+d) on z = x+iy.
        let (x, y) = z;
        let (nr, ni) = (self.a * x + self.b, self.a * y);
        let (dr, di) = (self.c * x + self.d, self.c * y);
        let den = dr * dr + di * di;
        ((nr * dr + ni * di) / den, (ni * dr - nr * di) / den)
    }

    fn inverse(&self) -> Mobius2 {
        Mobius2 {
            a: self.d,
            b: -self.b,
            c: -self.c,
            d: self.a,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const EPS: f64 = 1e-12;

    #[test]
    fn vertical_distance_is_log_ratio() {
        let d = hyperbolic_distance(&[0.0, 1.0], &[0.0, 2.0]).unwrap();
        assert!((d - std::f64::consts::LN_2).abs() < EPS);
    }

    #[test]
    fn distance_formula_example() {
        let d = hyperbolic_distance(&[0.0, 1.0], &[3.0, 4.0]).unwrap();
        assert!((d - 3.25f64.acosh()).abs() < EPS);
    }

    #[test]
    fn distance_zero_iff_equal() {
        assert_eq!(hyperbolic_distance(&[1.0, 2.0], &[1.0, 2.0]).unwrap(), 0.0);
        assert!(hyperbolic_distance(&[1.0, 2.0], &[1.0, 2.1]).unwrap() > 0.0);
    }

    #[test]
    fn dimension_mismatch_rejected() {
        assert!(matches!(
            hyperbolic_distance(&[0.0, 1.0], &[0.0, 0.0, 1.0]),
            Err(GeoError::DimensionMismatch(2, 3))
        ));
    }

    #[test]
    fn vertical_midpoint_is_geometric_mean() {
        let m = hyperbolic_midpoint(&[0.0, 1.0], &[0.0, 4.0]).unwrap();
        assert!((m[0] - 0.0).abs() < EPS);
        assert!((m[1] - 2.0).abs() < 1e-9);
    }

    #[test]
    fn symmetric_pair_midpoint_on_circle() {
        let m = hyperbolic_midpoint(&[-1.0, 1.0], &[1.0, 1.0]).unwrap();
        assert!(m[0].abs() < 1e-9);
        assert!((m[1] - 2.0f64.sqrt()).abs() < 1e-9);
    }

    #[test]
    fn midpoint_of_equal_points() {
        let m = hyperbolic_midpoint(&[0.3, 0.7], &[0.3, 0.7]).unwrap();
        assert_eq!(m, vec![0.3, 0.7]);
    }

    #[test]
    fn midpoint_bisects() {
        let x = [0.2, 1.3];
        let y = [2.0, 0.4];
        let m = hyperbolic_midpoint(&x, &y).unwrap();
        let d = hyperbolic_distance(&x, &y).unwrap();
        let dxm = hyperbolic_distance(&x, &m).unwrap();
        let dym = hyperbolic_distance(&y, &m).unwrap();
        assert!((dxm - dym).abs() < 1e-9);
        assert!((dxm - d / 2.0).abs() < 1e-9);
    }

    #[test]
    fn euclidean_slack_is_zero() {
        let s =
            median_inequality_slack(Space::Euclidean, &[0.0, 0.0], &[2.0, 0.0], &[1.0, 1.0])
                .unwrap();
        assert!(s.abs() < 1e-12);
        let s2 =
            median_inequality_slack(Space::Euclidean, &[0.0, 0.0], &[2.0, 0.0], &[1.0, 0.0])
                .unwrap();
        assert!(s2.abs() < 1e-12);
    }

    #[test]
    fn hyperbolic_slack_nonnegative_samples() {
        let triples = [
            ([0.0, 1.0], [1.0, 2.0], [3.0, 0.5]),
            ([0.5, 0.1], [-2.0, 1.0], [0.0, 3.0]),
            ([2.0, 2.0], [2.0, 0.01], [-1.0, 1.0]),
        ];
        for (x, y, z) in triples {
            let s = median_inequality_slack(Space::Hyperbolic, &x, &y, &z).unwrap();
            assert!(s >= -1e-9, "slack {s}");
        }
    }

    #[test]
    fn mediator_vertical_case() {
        let med = mediator_hn(&[-1.0, 1.0], &[1.0, 1.0]).unwrap();
        match med {
            Mediator::Vertical { foot, .. } => assert!(foot[0].abs() < EPS),
            other => panic!("expected vertical, got {other:?}"),
        }
    }

    #[test]
    fn mediator_sphere_case() {
        let med = mediator_hn(&[0.0, 1.0], &[0.0, 4.0]).unwrap();
        match med {
            Mediator::Sphere { center, radius } => {
                assert!(center[0].abs() < EPS);
                assert!((radius - 2.0).abs() < 1e-12);
            }
            other => panic!("expected sphere, got {other:?}"),
        }
    }

    #[test]
    fn mediator_points_equidistant() {
        let a = [0.3, 1.2];
        let b = [-0.5, 2.0];
        let med = mediator_hn(&a, &b).unwrap();
        for p in sample_mediator(&med, 7, &[1.0]) {
            let da = hyperbolic_distance(&p, &a).unwrap();
            let db = hyperbolic_distance(&p, &b).unwrap();
            assert!((da - db).abs() < 1e-9, "da={da} db={db}");
        }
    }

    #[test]
    fn mediator_rejects_equal_points() {
        assert!(matches!(
            mediator_hn(&[0.0, 1.0], &[0.0, 1.0]),
            Err(GeoError::EqualPoints)
        ));
    }

    #[test]
    fn projection_onto_imaginary_axis() {
        let p = project_to_line_h2((3.0, 4.0), H2Geodesic::Vertical { foot: 0.0 });
        assert!((p.0 - 0.0).abs() < EPS && (p.1 - 5.0).abs() < EPS);
        let q = project_to_line_h2((1.0, 1.0), H2Geodesic::Vertical { foot: 0.0 });
        assert!((q.1 - 2.0f64.sqrt()).abs() < EPS);
    }

    #[test]
    fn projection_is_identity_on_the_line() {
        let line = H2Geodesic::Circle {
            center: 0.0,
            radius: 2.0,
        };
        let on_line = (2.0 * (std::f64::consts::FRAC_PI_4).cos(), 2.0 * (std::f64::consts::FRAC_PI_4).sin());
        let p = project_to_line_h2(on_line, line);
        assert!((p.0 - on_line.0).abs() < 1e-9 && (p.1 - on_line.1).abs() < 1e-9);
    }

    #[test]
    fn projection_minimizes_distance() {
        let line = H2Geodesic::Circle {
            center: 1.0,
            radius: 1.5,
        };
        let x = (3.0, 2.0);
        let p = project_to_line_h2(x, line);
        let dp = hyperbolic_distance(&[x.0, x.1], &[p.0, p.1]).unwrap();
        // Sample the line densely; no sampled point may be closer.
        for k in 1..400 {
            let phi = std::f64::consts::PI * k as f64 / 400.0;
            let q = [1.0 + 1.5 * phi.cos(), 1.5 * phi.sin()];
            let dq = hyperbolic_distance(&[x.0, x.1], &q).unwrap();
            assert!(dp <= dq + 1e-9);
        }
    }

    #[test]
    fn interpolate_endpoints() {
        let x = [0.2, 1.0];
        let y = [1.4, 0.3];
        let d = hyperbolic_distance(&x, &y).unwrap();
        let at0 = hyperbolic_interpolate(&x, &y, 0.0);
        let at_d = hyperbolic_interpolate(&x, &y, d);
        assert!(euclidean_distance(&at0, &x) < 1e-9);
        assert!(euclidean_distance(&at_d, &y) < 1e-9);
    }
}
