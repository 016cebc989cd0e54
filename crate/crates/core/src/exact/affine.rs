//! Affine maps `x ↦ Lx + t` over an exact field and their fixed sets.

use super::matrix::Matrix;
use super::scalar::ExactField;

#[derive(Clone, PartialEq, Debug)]
pub struct AffineMap<T: ExactField> {
    pub linear: Matrix<T>,
    pub translation: Vec<T>,
}

/// Exact fixed set of an affine map over a field: empty, a single point, or
/// an affine subspace (point + direction basis).
#[derive(Clone, PartialEq, Debug)]
pub enum FixedSet<T: ExactField> {
    Empty,
    Point(Vec<T>),
    Subspace { point: Vec<T>, basis: Vec<Vec<T>> },
}

impl<T: ExactField> AffineMap<T> {
    pub fn new(linear: Matrix<T>, translation: Vec<T>) -> AffineMap<T> {
        assert_eq!(linear.rows, linear.cols, "linear part must be square");
        assert_eq!(linear.rows, translation.len());
        AffineMap {
            linear,
            translation,
        }
    }

    pub fn linear_only(linear: Matrix<T>) -> AffineMap<T> {
        let n = linear.rows;
        AffineMap::new(linear, vec![T::zero(); n])
    }

    pub fn identity(n: usize) -> AffineMap<T> {
        AffineMap::new(Matrix::identity(n), vec![T::zero(); n])
    }

    pub fn dim(&self) -> usize {
        self.linear.rows
    }

    pub fn apply(&self, x: &[T]) -> Vec<T> {
        self.linear
            .mul_vec(x)
            .into_iter()
            .zip(&self.translation)
            .map(|(a, t)| a.add(t))
            .collect()
    }

    /// `(L1,t1)∘(L2,t2) = (L1 L2, L1 t2 + t1)`.
    pub fn compose(&self, other: &AffineMap<T>) -> AffineMap<T> {
        let linear = self.linear.mul(&other.linear);
        let translation: Vec<T> = self
            .linear
            .mul_vec(&other.translation)
            .into_iter()
            .zip(&self.translation)
            .map(|(a, t)| a.add(t))
            .collect();
        AffineMap::new(linear, translation)
    }

    pub fn inverse(&self) -> Option<AffineMap<T>> {
        // Solve L y = e_i for each basis vector to build L^{-1}.
        let n = self.dim();
        let mut inv_cols = Vec::with_capacity(n);
        for i in 0..n {
            let mut e = vec![T::zero(); n];
            e[i] = T::one();
            let (x, ker) = self.linear.solve(&e)?;
            if !ker.is_empty() {
                return None;
            }
            inv_cols.push(x);
        }
        let inv = Matrix::from_rows(
            (0..n)
                .map(|r| (0..n).map(|c| inv_cols[c][r].clone()).collect())
                .collect(),
        );
        let t: Vec<T> = inv
            .mul_vec(&self.translation)
            .into_iter()
            .map(|v| v.neg())
            .collect();
        Some(AffineMap::new(inv, t))
    }

    pub fn is_identity(&self) -> bool {
        self.linear == Matrix::identity(self.dim())
            && self.translation.iter().all(|t| t.is_zero())
    }

    /// Exact fixed set: solves `(id − L)x = t`.
    ///
    /// If 1 is not an eigenvalue the unique point is `(id − L)^{-1} t`;
    /// otherwise the solution affine subspace, possibly empty. An empty set
    /// is a value, not an error.
    pub fn fixed_set(&self) -> FixedSet<T> {
        let n = self.dim();
        let id_minus_l = Matrix::identity(n).sub(&self.linear);
        match id_minus_l.solve(&self.translation) {
            None => FixedSet::Empty,
            Some((point, basis)) => {
                if basis.is_empty() {
                    FixedSet::Point(point)
                } else {
                    FixedSet::Subspace { point, basis }
                }
            }
        }
    }

    /// Commutator `[f, g] = f^{-1} g^{-1} f g`.
    pub fn commutator(&self, other: &AffineMap<T>) -> Option<AffineMap<T>> {
        let fi = self.inverse()?;
        let gi = other.inverse()?;
        Some(fi.compose(&gi).compose(self).compose(other))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::scalar::big_rational;
    use num_rational::BigRational;

    type Map = AffineMap<BigRational>;

    fn translation_by_one() -> Map {
        AffineMap::new(
            Matrix::identity(1),
            vec![big_rational(1, 1)],
        )
    }

    #[test]
    fn translation_has_no_fixed_point() {
        assert_eq!(translation_by_one().fixed_set(), FixedSet::Empty);
    }

    #[test]
    fn unique_fixed_point_of_b_plus_translation() {
        let g = AffineMap::new(
            Matrix::from_int_rows(&[vec![-1, -1], vec![5, 4]]),
            vec![big_rational(1, 1), big_rational(0, 1)],
        );
        assert_eq!(
            g.fixed_set(),
            FixedSet::Point(vec![big_rational(3, 1), big_rational(-5, 1)])
        );
    }

    #[test]
    fn identity_fixes_whole_space() {
        let id: Map = AffineMap::identity(3);
        match id.fixed_set() {
            FixedSet::Subspace { basis, .. } => assert_eq!(basis.len(), 3),
            other => panic!("expected whole space, got {other:?}"),
        }
    }

    #[test]
    fn composition_law() {
        let f = AffineMap::new(
            Matrix::from_int_rows(&[vec![0, 1], vec![-1, 3]]),
            vec![big_rational(2, 1), big_rational(-1, 1)],
        );
        let g = AffineMap::new(
            Matrix::from_int_rows(&[vec![-1, -1], vec![5, 4]]),
            vec![big_rational(1, 1), big_rational(0, 1)],
        );
        let x = vec![big_rational(7, 3), big_rational(-2, 5)];
        assert_eq!(f.compose(&g).apply(&x), f.apply(&g.apply(&x)));
    }

    #[test]
    fn inverse_round_trip() {
        let f = AffineMap::new(
            Matrix::from_int_rows(&[vec![0, 1], vec![-1, 3]]),
            vec![big_rational(2, 1), big_rational(-1, 1)],
        );
        let fi = f.inverse().unwrap();
        assert!(f.compose(&fi).is_identity());
        assert!(fi.compose(&f).is_identity());
    }

    #[test]
    fn linear_part_is_a_morphism_on_commutators() {
        // [f⃗, g⃗] = [f, g]⃗ for invertible affine maps.
        let f = AffineMap::new(
            Matrix::from_int_rows(&[vec![2, 1], vec![1, 1]]),
            vec![big_rational(5, 2), big_rational(-3, 1)],
        );
        let g = AffineMap::new(
            Matrix::from_int_rows(&[vec![1, 3], vec![0, 1]]),
            vec![big_rational(-1, 7), big_rational(4, 1)],
        );
        let comm = f.commutator(&g).unwrap();
        let lin_comm = AffineMap::linear_only(f.linear.clone())
            .commutator(&AffineMap::linear_only(g.linear.clone()))
            .unwrap();
        assert_eq!(comm.linear, lin_comm.linear);
    }
}
