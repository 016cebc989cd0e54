//! The action of `G` on `R × Y` induced from the action of a point
//! stabilizer `H` on `Y`, given a transversal `R` of `H` in `G`.

use super::{generate_group, FiniteGroup, PermError, Permutation};

/// Induced action data: `g(r, y) = (r', h(y))` where `g·r = r'·h` with
/// `r' ∈ R` and `h ∈ H` uniquely determined.
///
/// Pairs `(r_i, y)` are numbered `(i-1)·n + y` with `i` the 1-based index of
/// the representative and `n` the degree of the base group, so the induced
/// action is itself a permutation action.
#[derive(Clone, Debug)]
pub struct InducedAction {
    base: FiniteGroup,
    stabilized_point: usize,
    reps: Vec<Permutation>,
    /// `coset_of[p-1]` = index into `reps` of the representative whose coset
    /// sends the stabilized point to `p`.
    coset_of: Vec<Option<usize>>,
}

impl InducedAction {
    /// Checks that `reps` is a full transversal of the stabilizer of
    /// `stabilized_point` and builds the action.
    pub fn new(
        base: FiniteGroup,
        stabilized_point: usize,
        reps: Vec<Permutation>,
    ) -> Result<Self, PermError> {
        let n = base.degree();
        if stabilized_point == 0 || stabilized_point > n {
            return Err(PermError::NotATransversal);
        }
        // Orbit of the stabilized point under the base group.
        let mut orbit = vec![false; n];
        for g in base.elements() {
            orbit[g.apply(stabilized_point) - 1] = true;
        }
        let orbit_size = orbit.iter().filter(|&&b| b).count();
        if reps.len() != orbit_size {
            return Err(PermError::NotATransversal);
        }
        let mut coset_of: Vec<Option<usize>> = vec![None; n];
        for (i, r) in reps.iter().enumerate() {
            if r.degree() != n || !base.contains(r) {
                return Err(PermError::NotATransversal);
            }
            let p = r.apply(stabilized_point);
            if coset_of[p - 1].is_some() {
                return Err(PermError::NotATransversal);
            }
            coset_of[p - 1] = Some(i);
        }
        Ok(InducedAction {
            base,
            stabilized_point,
            reps,
            coset_of,
        })
    }

    pub fn rep_count(&self) -> usize {
        self.reps.len()
    }

    /// Degree of the induced permutation action on `R × Y`.
    pub fn product_degree(&self) -> usize {
        self.reps.len() * self.base.degree()
    }

    /// The unique `(r', h)` with `g·r = r'·h`, as (index into reps, h).
    fn decompose(&self, g: &Permutation, rep_idx: usize) -> (usize, Permutation) {
        let gr = g.compose(&self.reps[rep_idx]);
        let target = gr.apply(self.stabilized_point);
        let rp_idx = self.coset_of[target - 1].expect("orbit point has a representative");
        let h = self.reps[rp_idx].inverse().compose(&gr);
        debug_assert_eq!(h.apply(self.stabilized_point), self.stabilized_point);
        (rp_idx, h)
    }

    /// The induced permutation of `R × Y` for a base element `g`.
    pub fn induce(&self, g: &Permutation) -> Permutation {
        let n = self.base.degree();
        let mut images = vec![0usize; self.product_degree()];
        for i in 0..self.reps.len() {
            let (ip, h) = self.decompose(g, i);
            for y in 1..=n {
                images[i * n + y - 1] = ip * n + h.apply(y);
            }
        }
        Permutation::from_images(images).expect("induced map is a bijection")
    }

    /// Fixed pairs of the induced permutation, as (1-based rep index, y).
    pub fn fixed_pairs(&self, g: &Permutation) -> Vec<(usize, usize)> {
        let n = self.base.degree();
        self.induce(g)
            .fixed_points()
            .into_iter()
            .map(|p| ((p - 1) / n + 1, (p - 1) % n + 1))
            .collect()
    }

    /// The whole induced group, acting on `R × Y`.
    pub fn induced_group(&self, cap: usize) -> Result<FiniteGroup, PermError> {
        let gens: Vec<Permutation> = self
            .base
            .generators()
            .iter()
            .map(|g| self.induce(g))
            .collect();
        let gens = if gens.is_empty() {
            self.base.elements().iter().map(|g| self.induce(g)).collect()
        } else {
            gens
        };
        generate_group(&gens, cap)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::{classify_action, perm, FiniteGroup, VerdictKind};

    fn s5_with_transversal() -> InducedAction {
        let s5 = FiniteGroup::symmetric(5);
        let reps = vec![
            perm("(15)", 5),
            perm("(25)", 5),
            perm("(35)", 5),
            perm("(45)", 5),
            perm("", 5),
        ];
        InducedAction::new(s5, 5, reps).unwrap()
    }

    #[test]
    fn induced_fix_of_double_transposition() {
        let act = s5_with_transversal();
        assert_eq!(act.fixed_pairs(&perm("(12)(45)", 5)), vec![(3, 5)]);
        assert_eq!(act.fixed_pairs(&perm("(13)(45)", 5)), vec![(2, 5)]);
        assert_eq!(act.fixed_pairs(&perm("(23)(45)", 5)), vec![(1, 5)]);
    }

    #[test]
    fn induced_fix_of_three_cycle() {
        let act = s5_with_transversal();
        let expected = vec![(4, 4), (4, 5), (5, 4), (5, 5)];
        assert_eq!(act.fixed_pairs(&perm("(123)", 5)), expected);
        assert_eq!(act.fixed_pairs(&perm("(132)", 5)), expected);
    }

    #[test]
    fn induced_identity_fixes_everything() {
        let act = s5_with_transversal();
        let id = perm("", 5);
        assert_eq!(act.fixed_pairs(&id).len(), act.product_degree());
    }

    #[test]
    fn induction_is_a_morphism() {
        let act = s5_with_transversal();
        let f = perm("(123)", 5);
        let g = perm("(12)(45)", 5);
        assert_eq!(
            act.induce(&f.compose(&g)),
            act.induce(&f).compose(&act.induce(&g))
        );
    }

    #[test]
    fn induced_step3_group_is_eccentric() {
        // The fixating property is not preserved by induction: K = <(123),(12)(45)>
        // acts eccentrically on R × Y even though the stabilizer action is fixating.
        let s5 = FiniteGroup::symmetric(5);
        let reps = vec![
            perm("(15)", 5),
            perm("(25)", 5),
            perm("(35)", 5),
            perm("(45)", 5),
            perm("", 5),
        ];
        let act = InducedAction::new(s5, 5, reps).unwrap();
        let k = crate::perm::generate_group(&[perm("(123)", 5), perm("(12)(45)", 5)], 100)
            .unwrap();
        let induced_k = crate::perm::generate_group(
            &[act.induce(&perm("(123)", 5)), act.induce(&perm("(12)(45)", 5))],
            1000,
        )
        .unwrap();
        assert_eq!(induced_k.order(), k.order());
        assert_eq!(classify_action(&induced_k).kind, VerdictKind::Eccentric);
    }

    #[test]
    fn rejects_incomplete_transversal() {
        let s5 = FiniteGroup::symmetric(5);
        let reps = vec![perm("(15)", 5), perm("(25)", 5)];
        assert!(matches!(
            InducedAction::new(s5, 5, reps),
            Err(PermError::NotATransversal)
        ));
    }

    #[test]
    fn rejects_duplicate_coset() {
        let s5 = FiniteGroup::symmetric(5);
        let reps = vec![
            perm("(15)", 5),
            perm("(15)(23)", 5), // same coset as (15)
            perm("(35)", 5),
            perm("(45)", 5),
            perm("", 5),
        ];
        assert!(matches!(
            InducedAction::new(s5, 5, reps),
            Err(PermError::NotATransversal)
        ));
    }
}
