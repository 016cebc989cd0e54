//! The commuting transvection pair f(x,y) = (x+y+1, y), g(x,y) = (x+ay, y)
//! with a = √2, audited exactly over Q(√2).

use serde::Serialize;

use super::affine::{AffineMap, FixedSet};
use super::matrix::Matrix;
use super::scalar::{ExactField, QuadRat};

/// The fixed line of `f^m g^n` is horizontal; this is its height
/// `y = −m / (m + n√2)`, computed exactly in Q(√2).
pub fn fixed_line_height(m: i64, n: i64) -> QuadRat {
    assert!((m, n) != (0, 0));
    let num = QuadRat::from_int(-m);
    let den = QuadRat::from_int(m).add(&QuadRat::sqrt_d(2).mul(&QuadRat::from_int(n)));
    num.div(&den)
}

fn word_map(m: i64, n: i64) -> AffineMap<QuadRat> {
    // f^m g^n : (x, y) ↦ (x + (m + n√2) y + m, y).
    let slope = QuadRat::from_int(m).add(&QuadRat::sqrt_d(2).mul(&QuadRat::from_int(n)));
    let linear = Matrix::from_rows(vec![
        vec![QuadRat::from_int(1), slope],
        vec![QuadRat::from_int(0), QuadRat::from_int(1)],
    ]);
    AffineMap::new(linear, vec![QuadRat::from_int(m), QuadRat::from_int(0)])
}

#[derive(Clone, Debug, Serialize)]
pub struct TransvectionReport {
    pub pairs_checked: usize,
    pub disjointness_checked: usize,
    pub violations: usize,
}

/// For all (m,n) ≠ (0,0) with |m|,|n| ≤ range: the exact fixed set of
/// `f^m g^n` is the predicted horizontal line, and two such lines are
/// disjoint whenever `m n' ≠ m' n`.
pub fn transvection_lines_audit(range: i64) -> TransvectionReport {
    let mut pairs: Vec<(i64, i64)> = Vec::new();
    for m in -range..=range {
        for n in -range..=range {
            if (m, n) != (0, 0) {
                pairs.push((m, n));
            }
        }
    }
    let mut violations = 0usize;
    let mut heights = Vec::with_capacity(pairs.len());
    for &(m, n) in &pairs {
        let expected = fixed_line_height(m, n);
        match word_map(m, n).fixed_set() {
            FixedSet::Subspace { point, basis } => {
                // One-dimensional horizontal line at the predicted height.
                let line_ok = basis.len() == 1
                    && basis[0][1].is_zero()
                    && point[1] == expected;
                if !line_ok {
                    violations += 1;
                }
            }
            _ => violations += 1,
        }
        heights.push(expected);
    }
    let mut disjointness_checked = 0usize;
    for i in 0..pairs.len() {
        for j in i + 1..pairs.len() {
            let (m, n) = pairs[i];
            let (mp, np) = pairs[j];
            if m * np != mp * n {
                disjointness_checked += 1;
                if heights[i] == heights[j] {
                    violations += 1;
                }
            }
        }
    }
    TransvectionReport {
        pairs_checked: pairs.len(),
        disjointness_checked,
        violations,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::scalar::big_rational;

    #[test]
    fn basic_line_heights() {
        // (1,0): y = −1; (0,1): y = −0/… wait, y = 0 · no: −0/(0+√2) with m=0.
        assert_eq!(fixed_line_height(1, 0), QuadRat::from_int(-1));
        assert_eq!(fixed_line_height(0, 1), QuadRat::from_int(0));
    }

    #[test]
    fn rationalized_height() {
        // −1/(1+√2) = 1 − √2.
        let h = fixed_line_height(1, 1);
        assert_eq!(
            h,
            QuadRat::new(big_rational(1, 1), big_rational(-1, 1), 2)
        );
    }

    #[test]
    fn generator_lines_disjoint() {
        assert_ne!(fixed_line_height(1, 0), fixed_line_height(0, 1));
    }

    #[test]
    fn audit_small_range_clean() {
        let report = transvection_lines_audit(3);
        assert_eq!(report.violations, 0);
        assert_eq!(report.pairs_checked, 48);
    }

    #[test]
    fn fg_and_gf_commute() {
        let fg = word_map(1, 0).compose(&word_map(0, 1));
        let gf = word_map(0, 1).compose(&word_map(1, 0));
        assert_eq!(fg, gf);
        assert_eq!(fg, word_map(1, 1));
    }
}
