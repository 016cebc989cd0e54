//! Circumcenters: the unique minimizer of the covering radius of a bounded
//! set. Euclidean sets use an exact smallest-enclosing-ball computation;
//! hyperbolic sets use geodesic descent toward the farthest point.

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::point::{
    add, distance, dot, euclidean_distance, hyperbolic_distance, hyperbolic_interpolate, scale,
    sub, GeoError, Space,
};

#[derive(Clone, Debug, Serialize)]
pub struct CircumcenterResult {
    pub center: Vec<f64>,
    pub radius: f64,
    pub iterations: usize,
    pub residual: f64,
}

/// Covering radius of `points` seen from `x`.
pub fn covering_radius(space: Space, x: &[f64], points: &[Vec<f64>]) -> Result<f64, GeoError> {
    let mut r: f64 = 0.0;
    for p in points {
        r = r.max(distance(space, x, p)?);
    }
    Ok(r)
}

pub fn circumcenter(space: Space, points: &[Vec<f64>]) -> Result<CircumcenterResult, GeoError> {
    match space {
        Space::Euclidean => euclidean_circumcenter(points),
        Space::Hyperbolic => hyperbolic_circumcenter(points, 0),
    }
}

/// Smallest enclosing ball by Welzl's move-to-front recursion with a fixed
/// shuffle seed, so results are deterministic.
pub fn euclidean_circumcenter(points: &[Vec<f64>]) -> Result<CircumcenterResult, GeoError> {
    if points.is_empty() {
        return Err(GeoError::EmptySet);
    }
    let dim = points[0].len();
    for p in points {
        if p.len() != dim {
            return Err(GeoError::DimensionMismatch(dim, p.len()));
        }
    }
    if points.len() == 1 {
        return Ok(CircumcenterResult {
            center: points[0].clone(),
            radius: 0.0,
            iterations: 0,
            residual: 0.0,
        });
    }
    let mut shuffled: Vec<&Vec<f64>> = points.iter().collect();
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    shuffled.shuffle(&mut rng);
    let mut support: Vec<&Vec<f64>> = Vec::new();
    let ball = welzl(&mut shuffled, points.len(), &mut support, dim);
    let radius = covering_radius(Space::Euclidean, &ball.0, points)?;
    Ok(CircumcenterResult {
        center: ball.0,
        radius,
        iterations: 0,
        residual: 0.0,
    })
}

type Ball = (Vec<f64>, f64);

fn welzl<'a>(
    points: &mut Vec<&'a Vec<f64>>,
    n: usize,
    support: &mut Vec<&'a Vec<f64>>,
    dim: usize,
) -> Ball {
    if n == 0 || support.len() == dim + 1 {
        return ball_of_support(support, dim);
    }
    let p = points[n - 1];
    let ball = welzl(points, n - 1, support, dim);
    if euclidean_distance(&ball.0, p) <= ball.1 * (1.0 + 1e-12) + 1e-14 {
        return ball;
    }
    support.push(p);
    let ball = welzl(points, n - 1, support, dim);
    support.pop();
    // Move-to-front keeps the expected recursion shallow.
    let idx = n - 1;
    let moved = points.remove(idx);
    points.insert(0, moved);
    ball
}

/// The smallest ball with every support point on its boundary: the center is
/// the solution of the equidistance system inside the affine hull.
fn ball_of_support(support: &[&Vec<f64>], dim: usize) -> Ball {
    match support.len() {
        0 => (vec![0.0; dim], -1.0),
        1 => (support[0].clone(), 0.0),
        _ => {
            let p0 = support[0];
            let k = support.len() - 1;
            // Gram system: 2 Σ_j λ_j (p_i−p0)·(p_j−p0) = ‖p_i−p0‖².
            let diffs: Vec<Vec<f64>> = support[1..].iter().map(|p| sub(p, p0)).collect();
            let mut a = vec![vec![0.0; k]; k];
            let mut b = vec![0.0; k];
            for i in 0..k {
                for j in 0..k {
                    a[i][j] = 2.0 * dot(&diffs[i], &diffs[j]);
                }
                b[i] = dot(&diffs[i], &diffs[i]);
            }
            match solve_dense(&mut a, &mut b) {
                Some(lambda) => {
                    let mut center = p0.clone();
                    for (l, d) in lambda.iter().zip(&diffs) {
                        center = add(&center, &scale(d, *l));
                    }
                    let r = euclidean_distance(&center, p0);
                    (center, r)
                }
                // Affinely dependent support: degenerate, yields no ball.
                None => (p0.clone(), f64::INFINITY),
            }
        }
    }
}

/// Gaussian elimination with partial pivoting; `None` when near-singular.
fn solve_dense(a: &mut [Vec<f64>], b: &mut [f64]) -> Option<Vec<f64>> {
    let n = b.len();
    for col in 0..n {
        let mut piv = col;
        for r in col + 1..n {
            if a[r][col].abs() > a[piv][col].abs() {
                piv = r;
            }
        }
        if a[piv][col].abs() < 1e-12 {
            return None;
        }
        a.swap(col, piv);
        b.swap(col, piv);
        for r in 0..n {
            if r == col {
                continue;
            }
            let f = a[r][col] / a[col][col];
            if f == 0.0 {
                continue;
            }
            for j in col..n {
                a[r][j] -= f * a[col][j];
            }
            b[r] -= f * b[col];
        }
    }
    Some((0..n).map(|i| b[i] / a[i][i]).collect())
}

/// Geodesic minimax descent: step from the current center toward the
/// farthest point, halving the step on non-improvement, stopping when the
/// improvement falls below 1e−12 or after 10⁵ iterations.
pub fn hyperbolic_circumcenter(
    points: &[Vec<f64>],
    start_index: usize,
) -> Result<CircumcenterResult, GeoError> {
    if points.is_empty() {
        return Err(GeoError::EmptySet);
    }
    let dim = points[0].len();
    for p in points {
        if p.len() != dim {
            return Err(GeoError::DimensionMismatch(dim, p.len()));
        }
        if p[dim - 1] <= 0.0 {
            return Err(GeoError::NotInHalfSpace);
        }
    }
    let mut center = points[start_index % points.len()].clone();
    let mut radius = covering_radius(Space::Hyperbolic, &center, points)?;
    if points.len() == 1 {
        return Ok(CircumcenterResult {
            center,
            radius: 0.0,
            iterations: 0,
            residual: 0.0,
        });
    }
    let mut step = radius / 2.0;
    let mut iterations = 0usize;
    const TOL: f64 = 1e-12;
    const MAX_ITER: usize = 100_000;
    while iterations < MAX_ITER && step > TOL {
        iterations += 1;
        // Farthest point from the current center.
        let mut far = 0usize;
        let mut far_d = -1.0;
        for (i, p) in points.iter().enumerate() {
            let d = hyperbolic_distance(&center, p)?;
            if d > far_d {
                far_d = d;
                far = i;
            }
        }
        let candidate = hyperbolic_interpolate(&center, &points[far], step.min(far_d));
        let cand_radius = covering_radius(Space::Hyperbolic, &candidate, points)?;
        if cand_radius < radius - TOL {
            center = candidate;
            radius = cand_radius;
            step = (step * 2.0).min(radius / 2.0);
        } else {
            step /= 2.0;
        }
    }
    Ok(CircumcenterResult {
        center,
        radius,
        iterations,
        residual: step,
    })
}

/// A map of the ambient space used by the invariant-set fixed-point
/// construction.
pub trait PointMap {
    fn apply_point(&self, x: &[f64]) -> Vec<f64>;
}

/// The circumcenter of a finite invariant set is fixed by every generator:
/// checks invariance (each generator permutes the set within `tol`),
/// computes the center and verifies it moves less than `tol`.
pub fn fixed_point_from_invariant_set(
    space: Space,
    maps: &[&dyn PointMap],
    invariant_set: &[Vec<f64>],
    tol: f64,
) -> Result<Vec<f64>, GeoError> {
    if invariant_set.is_empty() {
        return Err(GeoError::EmptySet);
    }
    for m in maps {
        for p in invariant_set {
            let q = m.apply_point(p);
            let nearest = invariant_set
                .iter()
                .map(|s| distance(space, &q, s))
                .collect::<Result<Vec<_>, _>>()?
                .into_iter()
                .fold(f64::INFINITY, f64::min);
            if nearest > tol {
                return Err(GeoError::NotInvariant(nearest));
            }
        }
    }
    let result = circumcenter(space, invariant_set)?;
    for m in maps {
        let moved = distance(space, &m.apply_point(&result.center), &result.center)?;
        if moved > tol.max(1e-6) {
            return Err(GeoError::NotInvariant(moved));
        }
    }
    Ok(result.center)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn euclidean_two_points() {
        let r = euclidean_circumcenter(&[vec![0.0, 0.0], vec![2.0, 0.0]]).unwrap();
        assert!(euclidean_distance(&r.center, &[1.0, 0.0]) < 1e-9);
        assert!((r.radius - 1.0).abs() < 1e-9);
    }

    #[test]
    fn euclidean_equilateral_triangle() {
        let h = 3.0f64.sqrt();
        let r = euclidean_circumcenter(&[vec![0.0, 0.0], vec![2.0, 0.0], vec![1.0, h]]).unwrap();
        assert!(euclidean_distance(&r.center, &[1.0, 1.0 / h]) < 1e-9);
        assert!((r.radius - 2.0 / h).abs() < 1e-9);
    }

    #[test]
    fn euclidean_single_point() {
        let r = euclidean_circumcenter(&[vec![3.0, 4.0, 5.0]]).unwrap();
        assert_eq!(r.radius, 0.0);
    }

    #[test]
    fn euclidean_empty_set() {
        assert!(matches!(
            euclidean_circumcenter(&[]),
            Err(GeoError::EmptySet)
        ));
    }

    #[test]
    fn euclidean_interior_points_do_not_matter() {
        let mut pts = vec![vec![-1.0, 0.0], vec![1.0, 0.0]];
        for k in 0..20 {
            let t = k as f64 / 40.0;
            pts.push(vec![t - 0.25, 0.1 * t]);
        }
        let r = euclidean_circumcenter(&pts).unwrap();
        assert!(euclidean_distance(&r.center, &[0.0, 0.0]) < 1e-9);
        assert!((r.radius - 1.0).abs() < 1e-9);
    }

    #[test]
    fn hyperbolic_two_point_center_is_midpoint() {
        let r = hyperbolic_circumcenter(&[vec![0.0, 1.0], vec![0.0, 4.0]], 0).unwrap();
        assert!((r.center[0]).abs() < 1e-6);
        assert!((r.center[1] - 2.0).abs() < 1e-6);
        assert!((r.radius - std::f64::consts::LN_2).abs() < 1e-6);
    }

    #[test]
    fn hyperbolic_restart_agreement() {
        let pts = vec![
            vec![0.3, 1.0],
            vec![-1.0, 0.5],
            vec![2.0, 2.0],
            vec![0.0, 0.2],
        ];
        let a = hyperbolic_circumcenter(&pts, 0).unwrap();
        let b = hyperbolic_circumcenter(&pts, 2).unwrap();
        assert!(hyperbolic_distance(&a.center, &b.center).unwrap() < 1e-6);
        assert!((a.radius - b.radius).abs() < 1e-6);
    }

    #[test]
    fn covering_radius_invariants() {
        let pts = vec![vec![0.0, 1.0], vec![1.0, 1.0], vec![0.5, 3.0]];
        let r = hyperbolic_circumcenter(&pts, 0).unwrap();
        for p in &pts {
            let d = hyperbolic_distance(&r.center, p).unwrap();
            assert!(d <= r.radius + 1e-9);
        }
    }

    struct Rot90;
    impl PointMap for Rot90 {
        fn apply_point(&self, x: &[f64]) -> Vec<f64> {
            vec![-x[1], x[0]]
        }
    }

    #[test]
    fn invariant_square_center() {
        let square = vec![
            vec![1.0, 0.0],
            vec![0.0, 1.0],
            vec![-1.0, 0.0],
            vec![0.0, -1.0],
        ];
        let center =
            fixed_point_from_invariant_set(Space::Euclidean, &[&Rot90], &square, 1e-9).unwrap();
        assert!(euclidean_distance(&center, &[0.0, 0.0]) < 1e-9);
    }

    #[test]
    fn invariance_violation_detected() {
        let set = vec![vec![1.0, 0.0], vec![0.0, 1.0]];
        assert!(matches!(
            fixed_point_from_invariant_set(Space::Euclidean, &[&Rot90], &set, 1e-9),
            Err(GeoError::NotInvariant(_))
        ));
    }

    #[test]
    fn single_point_identity_group() {
        struct Id;
        impl PointMap for Id {
            fn apply_point(&self, x: &[f64]) -> Vec<f64> {
                x.to_vec()
            }
        }
        let p = vec![vec![0.7, 0.3]];
        let c = fixed_point_from_invariant_set(Space::Euclidean, &[&Id], &p, 1e-9).unwrap();
        assert!(euclidean_distance(&c, &p[0]) < 1e-12);
    }
}
