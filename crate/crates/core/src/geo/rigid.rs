//! Rigid motions of R^n: fixed subspaces by thresholded elimination, the
//! dimension-3 eccentricity witness, and the commuting-generators recursion.

use serde::Serialize;
use thiserror::Error;

use super::circumcenter::PointMap;
use super::point::{add, dot, euclidean_distance, norm, scale, sub};

#[derive(Debug, Error, PartialEq)]
pub enum RigidError {
    #[error("matrix is not orthogonal within tolerance")]
    NotOrthogonal,
    #[error("not an orientation-preserving rotation")]
    NotRotation,
    #[error("generators do not commute (residual {0})")]
    NotCommuting(f64),
    #[error("generator has an empty fixed set")]
    NotGaf,
    #[error("subspace is not invariant under the isometry (residual {0})")]
    SubspaceNotInvariant(f64),
    #[error("no certified witness found")]
    NoWitness,
}

/// An isometry `x ↦ Rx + t` of R^n with `R` orthogonal.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RigidMotion {
    pub rotation: Vec<Vec<f64>>,
    pub translation: Vec<f64>,
}

/// An affine subspace as (point, orthonormal direction basis).
#[derive(Clone, Debug, Serialize)]
pub struct AffineSubspace {
    pub point: Vec<f64>,
    pub basis: Vec<Vec<f64>>,
}

impl AffineSubspace {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Orthogonal projection of `x` onto the subspace.
    pub fn project(&self, x: &[f64]) -> Vec<f64> {
        let rel = sub(x, &self.point);
        let mut out = self.point.clone();
        for b in &self.basis {
            out = add(&out, &scale(b, dot(&rel, b)));
        }
        out
    }

    pub fn contains(&self, x: &[f64], tol: f64) -> bool {
        euclidean_distance(&self.project(x), x) <= tol
    }
}

impl RigidMotion {
    pub fn new(rotation: Vec<Vec<f64>>, translation: Vec<f64>) -> Result<RigidMotion, RigidError> {
        let n = rotation.len();
        if rotation.iter().any(|r| r.len() != n) || translation.len() != n {
            return Err(RigidError::NotOrthogonal);
        }
        // Columns orthonormal within 1e-10.
        for i in 0..n {
            for j in 0..n {
                let col_dot: f64 = (0..n).map(|r| rotation[r][i] * rotation[r][j]).sum();
                let expect = if i == j { 1.0 } else { 0.0 };
                if (col_dot - expect).abs() > 1e-10 {
                    return Err(RigidError::NotOrthogonal);
                }
            }
        }
        Ok(RigidMotion {
            rotation,
            translation,
        })
    }

    pub fn identity(n: usize) -> RigidMotion {
        let mut rotation = vec![vec![0.0; n]; n];
        for (i, row) in rotation.iter_mut().enumerate() {
            row[i] = 1.0;
        }
        RigidMotion {
            rotation,
            translation: vec![0.0; n],
        }
    }

    pub fn dim(&self) -> usize {
        self.rotation.len()
    }

    pub fn apply(&self, x: &[f64]) -> Vec<f64> {
        let n = self.dim();
        (0..n)
            .map(|i| dot(&self.rotation[i], x) + self.translation[i])
            .collect()
    }

    pub fn compose(&self, other: &RigidMotion) -> RigidMotion {
        let n = self.dim();
        let mut rotation = vec![vec![0.0; n]; n];
        for i in 0..n {
            for j in 0..n {
                rotation[i][j] = (0..n).map(|k| self.rotation[i][k] * other.rotation[k][j]).sum();
            }
        }
        let translation = self.apply(&other.translation);
        RigidMotion {
            rotation,
            translation,
        }
    }

    pub fn inverse(&self) -> RigidMotion {
        let n = self.dim();
        let mut rt = vec![vec![0.0; n]; n];
        for i in 0..n {
            for j in 0..n {
                rt[i][j] = self.rotation[j][i];
            }
        }
        let t: Vec<f64> = (0..n).map(|i| -dot(&rt[i], &self.translation)).collect();
        RigidMotion {
            rotation: rt,
            translation: t,
        }
    }

    pub fn commutator(&self, other: &RigidMotion) -> RigidMotion {
        self.inverse()
            .compose(&other.inverse())
            .compose(self)
            .compose(other)
    }

    pub fn det(&self) -> f64 {
        let n = self.dim();
        let mut m: Vec<Vec<f64>> = self.rotation.clone();
        let mut det = 1.0;
        for col in 0..n {
            let mut piv = col;
            for r in col + 1..n {
                if m[r][col].abs() > m[piv][col].abs() {
                    piv = r;
                }
            }
            if m[piv][col].abs() < 1e-12 {
                return 0.0;
            }
            if piv != col {
                m.swap(piv, col);
                det = -det;
            }
            det *= m[col][col];
            for r in col + 1..n {
                let f = m[r][col] / m[col][col];
                for j in col..n {
                    m[r][j] -= f * m[col][j];
                }
            }
        }
        det
    }

    pub fn is_identity(&self, tol: f64) -> bool {
        let n = self.dim();
        self.translation.iter().all(|t| t.abs() <= tol)
            && (0..n).all(|i| {
                (0..n).all(|j| {
                    let expect = if i == j { 1.0 } else { 0.0 };
                    (self.rotation[i][j] - expect).abs() <= tol
                })
            })
    }

    pub fn max_deviation(&self, other: &RigidMotion) -> f64 {
        let n = self.dim();
        let mut dev: f64 = 0.0;
        for i in 0..n {
            for j in 0..n {
                dev = dev.max((self.rotation[i][j] - other.rotation[i][j]).abs());
            }
            dev = dev.max((self.translation[i] - other.translation[i]).abs());
        }
        dev
    }

    /// Fixed subspace `{x : (I − R)x = t}` by thresholded elimination
    /// (pivots below 1e−9 treated as zero); `None` when empty.
    pub fn fixed_subspace(&self) -> Option<AffineSubspace> {
        let n = self.dim();
        let mut a = vec![vec![0.0; n]; n];
        for i in 0..n {
            for j in 0..n {
                a[i][j] = if i == j { 1.0 } else { 0.0 } - self.rotation[i][j];
            }
        }
        solve_affine(&a, &self.translation)
    }
}

/// Thresholded Gaussian elimination returning the full solution set of
/// `Ax = b` as an affine subspace with orthonormal kernel basis.
pub fn solve_affine(a: &[Vec<f64>], b: &[f64]) -> Option<AffineSubspace> {
    const EPS: f64 = 1e-9;
    let rows = a.len();
    let cols = if rows == 0 { 0 } else { a[0].len() };
    let mut m: Vec<Vec<f64>> = a
        .iter()
        .zip(b)
        .map(|(row, &bi)| {
            let mut r = row.clone();
            r.push(bi);
            r
        })
        .collect();
    let mut pivots: Vec<usize> = Vec::new();
    let mut rank = 0usize;
    for col in 0..cols {
        let mut piv = rank;
        for r in rank..rows {
            if m[r][col].abs() > m[piv][col].abs() {
                piv = r;
            }
        }
        if rank >= rows || m[piv][col].abs() < EPS {
            continue;
        }
        m.swap(rank, piv);
        let pv = m[rank][col];
        for j in col..=cols {
            m[rank][j] /= pv;
        }
        for r in 0..rows {
            if r != rank && m[r][col].abs() > 0.0 {
                let f = m[r][col];
                for j in col..=cols {
                    m[r][j] -= f * m[rank][j];
                }
            }
        }
        pivots.push(col);
        rank += 1;
    }
    // Inconsistent when a zero row has nonzero rhs.
    for r in rank..rows {
        if m[r][cols].abs() > EPS {
            return None;
        }
    }
    let mut point = vec![0.0; cols];
    for (ri, &pc) in pivots.iter().enumerate() {
        point[pc] = m[ri][cols];
    }
    let pivot_set: std::collections::BTreeSet<usize> = pivots.iter().copied().collect();
    let mut basis: Vec<Vec<f64>> = Vec::new();
    for free in 0..cols {
        if pivot_set.contains(&free) {
            continue;
        }
        let mut v = vec![0.0; cols];
        v[free] = 1.0;
        for (ri, &pc) in pivots.iter().enumerate() {
            v[pc] = -m[ri][free];
        }
        // Gram-Schmidt against the collected basis.
        for bvec in &basis {
            let p = dot(&v, bvec);
            v = sub(&v, &scale(bvec, p));
        }
        let nv = norm(&v);
        if nv > EPS {
            basis.push(scale(&v, 1.0 / nv));
        }
    }
    Some(AffineSubspace { point, basis })
}

/// Common fixed set of several rigid motions, as one stacked system.
pub fn common_fixed_subspace(maps: &[RigidMotion]) -> Option<AffineSubspace> {
    let n = maps.first()?.dim();
    let mut a: Vec<Vec<f64>> = Vec::new();
    let mut b: Vec<f64> = Vec::new();
    for g in maps {
        for i in 0..n {
            let mut row = vec![0.0; n];
            for j in 0..n {
                row[j] = if i == j { 1.0 } else { 0.0 } - g.rotation[i][j];
            }
            a.push(row);
            b.push(g.translation[i]);
        }
    }
    solve_affine(&a, &b)
}

impl PointMap for RigidMotion {
    fn apply_point(&self, x: &[f64]) -> Vec<f64> {
        self.apply(x)
    }
}

/// Outcome of the dimension-3 witness search.
#[derive(Clone, Debug, Serialize)]
pub enum R3Witness {
    /// The fixed axes intersect: a common fixed point.
    CommonPoint(Vec<f64>),
    /// An element of ⟨f, g⟩ with (numerically) empty fixed set.
    Witness {
        label: String,
        element: RigidMotion,
    },
}

/// For two orientation-preserving isometries of R³ with nonempty fixed sets:
/// if the fixed axes meet, returns the common point; otherwise returns a
/// product with verified-empty fixed set, checking `[f,g]` and `f⁻¹g`.
/// A generator with empty fixed set is itself returned as the witness.
pub fn eccentricity_witness_r3(
    f: &RigidMotion,
    g: &RigidMotion,
    tol: f64,
) -> Result<R3Witness, RigidError> {
    if f.dim() != 3 || g.dim() != 3 {
        return Err(RigidError::NotRotation);
    }
    for m in [f, g] {
        if (m.det() - 1.0).abs() > 1e-6 {
            return Err(RigidError::NotRotation);
        }
    }
    let fix_f = f.fixed_subspace();
    let fix_g = g.fixed_subspace();
    let (Some(_), Some(_)) = (&fix_f, &fix_g) else {
        let (label, element) = if fix_f.is_none() {
            ("f", f.clone())
        } else {
            ("g", g.clone())
        };
        return Ok(R3Witness::Witness {
            label: label.to_string(),
            element,
        });
    };
    if let Some(common) = common_fixed_subspace(&[f.clone(), g.clone()]) {
        // Double-check the candidate point before declaring intersection.
        let p = common.point.clone();
        if euclidean_distance(&f.apply(&p), &p) <= tol && euclidean_distance(&g.apply(&p), &p) <= tol {
            return Ok(R3Witness::CommonPoint(p));
        }
    }
    let candidates = [("[f,g]", f.commutator(g)), ("f^{-1}g", f.inverse().compose(g))];
    for (label, h) in candidates {
        if h.fixed_subspace().is_none() {
            return Ok(R3Witness::Witness {
                label: label.to_string(),
                element: h,
            });
        }
    }
    Err(RigidError::NoWitness)
}

/// Common fixed point of commuting isometries, each with a nonempty fixed
/// set, by the restriction recursion: pick a nontrivial generator, restrict
/// everything to its fixed subspace (the projections of the generators'
/// fixed points stay fixed), and recurse until all restrictions are trivial.
/// Returns the projection of the origin onto the final subspace.
pub fn abelian_gag_solver(gens: &[RigidMotion], tol: f64) -> Result<Vec<f64>, RigidError> {
    let Some(first) = gens.first() else {
        return Ok(Vec::new());
    };
    let n = first.dim();
    for (i, a) in gens.iter().enumerate() {
        for b in &gens[i + 1..] {
            let dev = a.compose(b).max_deviation(&b.compose(a));
            if dev > tol.max(1e-8) {
                return Err(RigidError::NotCommuting(dev));
            }
        }
    }
    // Current ambient: affine subspace with orthonormal basis, plus the
    // restrictions of the generators to it.
    let mut frame = AffineSubspace {
        point: vec![0.0; n],
        basis: (0..n)
            .map(|i| {
                let mut e = vec![0.0; n];
                e[i] = 1.0;
                e
            })
            .collect(),
    };
    let mut restricted: Vec<RigidMotion> = gens.to_vec();
    loop {
        let k = frame.dim();
        if k == 0 {
            break;
        }
        let Some(pos) = restricted.iter().position(|g| !g.is_identity(1e-9)) else {
            break;
        };
        let g = restricted[pos].clone();
        let Some(fix_in_frame) = g.fixed_subspace() else {
            return Err(RigidError::NotGaf);
        };
        // New frame inside the old one.
        let new_point = frame_to_ambient(&frame, &fix_in_frame.point);
        let new_basis: Vec<Vec<f64>> = fix_in_frame
            .basis
            .iter()
            .map(|v| frame_dir_to_ambient(&frame, v))
            .collect();
        let new_frame = AffineSubspace {
            point: new_point,
            basis: new_basis,
        };
        // Restrict every generator to the new frame.
        let mut next: Vec<RigidMotion> = Vec::with_capacity(restricted.len());
        for h in gens {
            next.push(restrict(h, &new_frame).ok_or(RigidError::NotGaf)?);
        }
        frame = new_frame;
        restricted = next;
        if frame.dim() == k {
            // No progress is impossible for a non-identity isometry.
            break;
        }
    }
    let result = frame.project(&vec![0.0; n]);
    for g in gens {
        let moved = euclidean_distance(&g.apply(&result), &result);
        if moved > tol.max(1e-8) {
            return Err(RigidError::NotGaf);
        }
    }
    Ok(result)
}

fn frame_to_ambient(frame: &AffineSubspace, local: &[f64]) -> Vec<f64> {
    let mut out = frame.point.clone();
    for (c, b) in local.iter().zip(&frame.basis) {
        out = add(&out, &scale(b, *c));
    }
    out
}

fn frame_dir_to_ambient(frame: &AffineSubspace, local: &[f64]) -> Vec<f64> {
    let n = frame.point.len();
    let mut out = vec![0.0; n];
    for (c, b) in local.iter().zip(&frame.basis) {
        out = add(&out, &scale(b, *c));
    }
    out
}

/// Restriction of an isometry to an invariant affine subspace, in the
/// subspace's orthonormal coordinates; `None` if the subspace is not
/// invariant within 1e−7.
fn restrict(g: &RigidMotion, frame: &AffineSubspace) -> Option<RigidMotion> {
    let k = frame.dim();
    let image_of_point = g.apply(&frame.point);
    if !frame.contains(&image_of_point, 1e-7) {
        return None;
    }
    let mut rotation = vec![vec![0.0; k]; k];
    for (j, b) in frame.basis.iter().enumerate() {
        // Image direction of the j-th basis vector.
        let end = g.apply(&add(&frame.point, b));
        let dir = sub(&end, &image_of_point);
        for (i, bi) in frame.basis.iter().enumerate() {
            rotation[i][j] = dot(&dir, bi);
        }
        // Invariance check: the image direction must stay in the frame.
        let mut recon = vec![0.0; frame.point.len()];
        for (i, bi) in frame.basis.iter().enumerate() {
            recon = add(&recon, &scale(bi, rotation[i][j]));
        }
        if euclidean_distance(&recon, &dir) > 1e-7 {
            return None;
        }
    }
    let rel = sub(&image_of_point, &frame.point);
    let translation: Vec<f64> = frame.basis.iter().map(|b| dot(&rel, b)).collect();
    Some(RigidMotion {
        rotation,
        translation,
    })
}

/// One step of the cyclic-quotient construction: projects a fixed point of
/// `epsilon` onto an `epsilon`-invariant subspace; the projection is itself
/// fixed by uniqueness of the orthogonal projection.
pub fn cyclic_quotient_gag(
    epsilon: &RigidMotion,
    fix_h: &AffineSubspace,
    tol: f64,
) -> Result<Vec<f64>, RigidError> {
    // Invariance of the subspace: image of point and of basis directions
    // stay inside.
    let img_point = epsilon.apply(&fix_h.point);
    let mut residual: f64 = euclidean_distance(&fix_h.project(&img_point), &img_point);
    for b in &fix_h.basis {
        let end = epsilon.apply(&add(&fix_h.point, b));
        residual = residual.max(euclidean_distance(&fix_h.project(&end), &end));
    }
    if residual > tol.max(1e-8) {
        return Err(RigidError::SubspaceNotInvariant(residual));
    }
    let x = epsilon.fixed_subspace().ok_or(RigidError::NotGaf)?;
    let projected = fix_h.project(&x.point);
    let moved = euclidean_distance(&epsilon.apply(&projected), &projected);
    if moved > tol.max(1e-8) {
        return Err(RigidError::SubspaceNotInvariant(moved));
    }
    Ok(projected)
}

/// Rotation by `angle` about the axis through `point` with direction `axis`
/// (3D), built from the Rodrigues formula.
pub fn rotation_about_axis(point: &[f64], axis: &[f64], angle: f64) -> RigidMotion {
    let u = scale(axis, 1.0 / norm(axis));
    let (s, c) = angle.sin_cos();
    let mut r = vec![vec![0.0; 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            let kron = if i == j { 1.0 } else { 0.0 };
            r[i][j] = c * kron + (1.0 - c) * u[i] * u[j];
        }
    }
    // + s * cross-product matrix of u
    r[0][1] += -s * u[2];
    r[0][2] += s * u[1];
    r[1][0] += s * u[2];
    r[1][2] += -s * u[0];
    r[2][0] += -s * u[1];
    r[2][1] += s * u[0];
    // conjugate so that `point` is fixed: x ↦ R(x − p) + p.
    let rp: Vec<f64> = (0..3).map(|i| dot(&r[i], point)).collect();
    let translation = sub(point, &rp);
    RigidMotion {
        rotation: r,
        translation,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{FRAC_PI_2, PI};

    #[test]
    fn rotation_fixes_its_axis() {
        let f = rotation_about_axis(&[1.0, 2.0, 0.0], &[0.0, 0.0, 1.0], FRAC_PI_2);
        let fix = f.fixed_subspace().unwrap();
        assert_eq!(fix.dim(), 1);
        assert!(fix.contains(&[1.0, 2.0, 5.0], 1e-9));
        assert!(euclidean_distance(&f.apply(&[1.0, 2.0, 3.0]), &[1.0, 2.0, 3.0]) < 1e-9);
    }

    #[test]
    fn translation_has_empty_fixed_subspace() {
        let t = RigidMotion::new(
            vec![
                vec![1.0, 0.0, 0.0],
                vec![0.0, 1.0, 0.0],
                vec![0.0, 0.0, 1.0],
            ],
            vec![1.0, 0.0, 0.0],
        )
        .unwrap();
        assert!(t.fixed_subspace().is_none());
    }

    #[test]
    fn witness_for_parallel_axes_is_a_translation() {
        let f = rotation_about_axis(&[0.0, 0.0, 0.0], &[0.0, 0.0, 1.0], FRAC_PI_2);
        let g = rotation_about_axis(&[1.0, 0.0, 0.0], &[0.0, 0.0, 1.0], FRAC_PI_2);
        match eccentricity_witness_r3(&f, &g, 1e-9).unwrap() {
            R3Witness::Witness { label, element } => {
                assert_eq!(label, "[f,g]");
                // Pure translation: identity linear part, nonzero shift.
                assert!(element
                    .rotation
                    .iter()
                    .enumerate()
                    .all(|(i, row)| row
                        .iter()
                        .enumerate()
                        .all(|(j, &v)| (v - if i == j { 1.0 } else { 0.0 }).abs() < 1e-10)));
                assert!(norm(&element.translation) > 1e-3);
            }
            other => panic!("expected witness, got {other:?}"),
        }
    }

    #[test]
    fn crossing_axes_give_common_point() {
        let f = rotation_about_axis(&[0.0, 0.0, 0.0], &[0.0, 0.0, 1.0], FRAC_PI_2);
        let g = rotation_about_axis(&[0.0, 0.0, 0.0], &[0.0, 1.0, 0.0], 1.0);
        match eccentricity_witness_r3(&f, &g, 1e-9).unwrap() {
            R3Witness::CommonPoint(p) => {
                assert!(norm(&p) < 1e-9);
            }
            other => panic!("expected common point, got {other:?}"),
        }
    }

    #[test]
    fn equal_rotations_share_their_axis() {
        let f = rotation_about_axis(&[1.0, 1.0, 0.0], &[0.0, 0.0, 1.0], 0.7);
        match eccentricity_witness_r3(&f, &f.clone(), 1e-9).unwrap() {
            R3Witness::CommonPoint(p) => {
                assert!(euclidean_distance(&f.apply(&p), &p) < 1e-9);
            }
            other => panic!("expected common point, got {other:?}"),
        }
    }

    #[test]
    fn improper_motion_rejected() {
        let reflect = RigidMotion::new(
            vec![
                vec![-1.0, 0.0, 0.0],
                vec![0.0, 1.0, 0.0],
                vec![0.0, 0.0, 1.0],
            ],
            vec![0.0; 3],
        )
        .unwrap();
        let f = rotation_about_axis(&[0.0; 3], &[0.0, 0.0, 1.0], 1.0);
        assert!(matches!(
            eccentricity_witness_r3(&reflect, &f, 1e-9),
            Err(RigidError::NotRotation)
        ));
    }

    #[test]
    fn abelian_solver_single_rotation_in_plane() {
        // Rotation by π/2 about (1,2) in R².
        let (s, c) = FRAC_PI_2.sin_cos();
        let rot = vec![vec![c, -s], vec![s, c]];
        let p = [1.0, 2.0];
        let rp: Vec<f64> = (0..2).map(|i| dot(&rot[i], &p)).collect();
        let f = RigidMotion {
            rotation: rot,
            translation: sub(&p, &rp),
        };
        let x = abelian_gag_solver(&[f], 1e-9).unwrap();
        assert!(euclidean_distance(&x, &p) < 1e-8);
    }

    #[test]
    fn abelian_solver_common_axis_rotations() {
        // Two rotations about the same axis {x = 1, y = 2} in R³ commute.
        let f = rotation_about_axis(&[1.0, 2.0, 0.0], &[0.0, 0.0, 1.0], 0.9);
        let g = rotation_about_axis(&[1.0, 2.0, 7.0], &[0.0, 0.0, 1.0], PI);
        let id = RigidMotion::identity(3);
        let x = abelian_gag_solver(&[f.clone(), g.clone(), id], 1e-9).unwrap();
        assert!(euclidean_distance(&f.apply(&x), &x) < 1e-8);
        assert!(euclidean_distance(&g.apply(&x), &x) < 1e-8);
        // Deterministic choice: the projection of the origin onto the axis.
        assert!(euclidean_distance(&x, &[1.0, 2.0, 0.0]) < 1e-8);
    }

    #[test]
    fn abelian_solver_all_identity_returns_origin() {
        let id = RigidMotion::identity(4);
        let x = abelian_gag_solver(&[id.clone(), id], 1e-9).unwrap();
        assert!(norm(&x) < 1e-12);
    }

    #[test]
    fn abelian_solver_rejects_noncommuting() {
        let f = rotation_about_axis(&[0.0; 3], &[0.0, 0.0, 1.0], FRAC_PI_2);
        let g = rotation_about_axis(&[0.0; 3], &[0.0, 1.0, 0.0], FRAC_PI_2);
        assert!(matches!(
            abelian_gag_solver(&[f, g], 1e-9),
            Err(RigidError::NotCommuting(_))
        ));
    }

    #[test]
    fn cyclic_quotient_projection() {
        // Reflection across the plane z = 0; invariant line = x-axis.
        let reflect = RigidMotion::new(
            vec![
                vec![1.0, 0.0, 0.0],
                vec![0.0, 1.0, 0.0],
                vec![0.0, 0.0, -1.0],
            ],
            vec![0.0; 3],
        )
        .unwrap();
        let line = AffineSubspace {
            point: vec![0.0, 0.0, 0.0],
            basis: vec![vec![1.0, 0.0, 0.0]],
        };
        let p = cyclic_quotient_gag(&reflect, &line, 1e-9).unwrap();
        assert!(line.contains(&p, 1e-9));
        assert!(euclidean_distance(&reflect.apply(&p), &p) < 1e-9);
    }

    #[test]
    fn cyclic_quotient_identity_case() {
        let id = RigidMotion::identity(3);
        let line = AffineSubspace {
            point: vec![1.0, 0.0, 0.0],
            basis: vec![vec![0.0, 1.0, 0.0]],
        };
        let p = cyclic_quotient_gag(&id, &line, 1e-9).unwrap();
        assert!(line.contains(&p, 1e-9));
    }

    #[test]
    fn cyclic_quotient_rejects_noninvariant_subspace() {
        let f = rotation_about_axis(&[0.0; 3], &[0.0, 0.0, 1.0], 1.0);
        let line = AffineSubspace {
            point: vec![1.0, 0.0, 0.0],
            basis: vec![vec![0.0, 1.0, 0.0]],
        };
        assert!(matches!(
            cyclic_quotient_gag(&f, &line, 1e-9),
            Err(RigidError::SubspaceNotInvariant(_))
        ));
    }

    #[test]
    fn dimension_lift_preserves_fixed_sets() {
        // F(x, t) = (f(x), t) on the upper half-space keeps Fix f × R_{>0}.
        let f = rotation_about_axis(&[0.5, -0.25, 0.0], &[0.0, 0.0, 1.0], 1.1);
        let fix = f.fixed_subspace().unwrap();
        for t in [0.5, 1.0, 2.5] {
            let x = [fix.point[0], fix.point[1], fix.point[2], t];
            let fx = f.apply(&x[..3]);
            let lifted = [fx[0], fx[1], fx[2], t];
            assert!(euclidean_distance(&lifted, &x) < 1e-9);
        }
    }
}
