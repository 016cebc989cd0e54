//! Finite permutation actions on `{1..n}`: closure from generators,
//! fixed-point classification, subgroup enumeration and the fixating test.

mod induced;
mod subgroups;

pub use induced::InducedAction;
pub use subgroups::{enumerate_subgroups, find_eccentric_subgroup, is_fixating, subgroup_lattice};

use std::collections::BTreeMap;
use std::collections::BTreeSet;
use std::fmt;

use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PermError {
    #[error("malformed cycle notation: {0}")]
    MalformedCycles(String),
    #[error("degree mismatch: {0} vs {1}")]
    DegreeMismatch(usize, usize),
    #[error("closure exceeded cap of {0} elements")]
    CapExceeded(usize),
    #[error("representatives do not form a transversal of the stabilizer")]
    NotATransversal,
}

/// A bijection of `{1..n}` stored as the image table `images[i-1] = p(i)`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    pub fn identity(degree: usize) -> Self {
        Permutation {
            images: (1..=degree).collect(),
        }
    }

    /// Builds a permutation from an image table (1-based values).
    pub fn from_images(images: Vec<usize>) -> Result<Self, PermError> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &v in &images {
            if v == 0 || v > n || seen[v - 1] {
                return Err(PermError::MalformedCycles(format!(
                    "image table {images:?} is not a bijection of 1..={n}"
                )));
            }
            seen[v - 1] = true;
        }
        Ok(Permutation { images })
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn apply(&self, point: usize) -> usize {
        self.images[point - 1]
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &v)| v == i + 1)
    }

    /// `self ∘ other`: apply `other` first, then `self`.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        debug_assert_eq!(self.degree(), other.degree());
        Permutation {
            images: (1..=self.degree())
                .map(|i| self.apply(other.apply(i)))
                .collect(),
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut images = vec![0; self.degree()];
        for (i, &v) in self.images.iter().enumerate() {
            images[v - 1] = i + 1;
        }
        Permutation { images }
    }

    pub fn order(&self) -> usize {
        let mut p = self.clone();
        let mut k = 1;
        while !p.is_identity() {
            p = p.compose(self);
            k += 1;
        }
        k
    }

    pub fn commutes_with(&self, other: &Permutation) -> bool {
        self.compose(other) == other.compose(self)
    }

    /// `Fix p = { x ; p(x) = x }`.
    pub fn fixed_points(&self) -> BTreeSet<usize> {
        self.images
            .iter()
            .enumerate()
            .filter(|(i, &v)| v == i + 1)
            .map(|(i, _)| i + 1)
            .collect()
    }

    /// Disjoint cycle decomposition, skipping fixed points.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 1..=n {
            if seen[start - 1] || self.apply(start) == start {
                seen[start - 1] = true;
                continue;
            }
            let mut cyc = vec![start];
            seen[start - 1] = true;
            let mut x = self.apply(start);
            while x != start {
                seen[x - 1] = true;
                cyc.push(x);
                x = self.apply(x);
            }
            out.push(cyc);
        }
        out
    }

    /// Cycle-notation string, `"id"` for the identity.
    pub fn cycle_string(&self) -> String {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return "id".to_string();
        }
        cycles
            .iter()
            .map(|c| {
                let body = c
                    .iter()
                    .map(|x| x.to_string())
                    .collect::<Vec<_>>()
                    .join(" ");
                format!("({body})")
            })
            .collect::<Vec<_>>()
            .join("")
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.cycle_string())
    }
}

/// Parses whitespace-tolerant disjoint-cycle notation such as `"(1 2 3)(4 5)"`.
///
/// Points not mentioned are fixed; the empty string is the identity. Commas
/// are accepted as separators, and `"id"` denotes the identity. For degrees
/// up to 9 an unseparated digit run like `"(123)"` denotes the points 1, 2,
/// 3; from degree 10 on, points must be separated.
pub fn parse_permutation(text: &str, degree: usize) -> Result<Permutation, PermError> {
    let mut images: Vec<usize> = (1..=degree).collect();
    let mut mentioned = vec![false; degree];
    let trimmed = text.trim();
    if trimmed.is_empty() || trimmed == "id" {
        return Ok(Permutation { images });
    }
    let push_run = |cycle: &mut Vec<usize>, run: &mut String| {
        if run.is_empty() {
            return;
        }
        if degree <= 9 {
            for ch in run.chars() {
                cycle.push(ch.to_digit(10).unwrap() as usize);
            }
        } else {
            cycle.push(run.parse().unwrap());
        }
        run.clear();
    };
    let mut chars = trimmed.chars().peekable();
    while let Some(&ch) = chars.peek() {
        if ch.is_whitespace() {
            chars.next();
            continue;
        }
        if ch != '(' {
            return Err(PermError::MalformedCycles(format!(
                "expected '(' at '{ch}'"
            )));
        }
        chars.next();
        let mut cycle: Vec<usize> = Vec::new();
        let mut cur = String::new();
        let mut closed = false;
        for c in chars.by_ref() {
            if c == ')' {
                closed = true;
                break;
            }
            if c.is_ascii_digit() {
                cur.push(c);
            } else if c.is_whitespace() || c == ',' {
                push_run(&mut cycle, &mut cur);
            } else {
                return Err(PermError::MalformedCycles(format!(
                    "unexpected character '{c}'"
                )));
            }
        }
        if !closed {
            return Err(PermError::MalformedCycles(
                "unbalanced parentheses".to_string(),
            ));
        }
        push_run(&mut cycle, &mut cur);
        if cycle.is_empty() {
            return Err(PermError::MalformedCycles("empty cycle".to_string()));
        }
        for &pt in &cycle {
            if pt == 0 || pt > degree {
                return Err(PermError::MalformedCycles(format!(
                    "point {pt} out of range 1..={degree}"
                )));
            }
            if mentioned[pt - 1] {
                return Err(PermError::MalformedCycles(format!("repeated point {pt}")));
            }
            mentioned[pt - 1] = true;
        }
        for k in 0..cycle.len() {
            images[cycle[k] - 1] = cycle[(k + 1) % cycle.len()];
        }
    }
    Ok(Permutation { images })
}

/// Single-digit-free convenience for tests: parse or panic.
pub fn perm(text: &str, degree: usize) -> Permutation {
    parse_permutation(text, degree).expect("valid cycle notation")
}

/// A finite permutation group: the closure of its generators, canonically sorted.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct FiniteGroup {
    degree: usize,
    elements: Vec<Permutation>,
    generators: Vec<Permutation>,
}

impl FiniteGroup {
    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    /// Elements in canonical (lexicographic image-table) order.
    pub fn elements(&self) -> &[Permutation] {
        &self.elements
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    pub fn contains(&self, p: &Permutation) -> bool {
        self.elements.binary_search(p).is_ok()
    }

    pub fn trivial(degree: usize) -> FiniteGroup {
        FiniteGroup {
            degree,
            elements: vec![Permutation::identity(degree)],
            generators: Vec::new(),
        }
    }

    /// The full symmetric group on `{1..n}`.
    pub fn symmetric(degree: usize) -> FiniteGroup {
        let mut gens = Vec::new();
        if degree >= 2 {
            gens.push(perm("(1 2)", degree));
        }
        if degree >= 3 {
            let cycle: Vec<String> = (1..=degree).map(|i| i.to_string()).collect();
            gens.push(perm(&format!("({})", cycle.join(" ")), degree));
        }
        generate_group(&gens, usize::MAX).expect("symmetric group closure")
    }

    /// The alternating group on `{1..n}`.
    pub fn alternating(degree: usize) -> FiniteGroup {
        let mut gens = Vec::new();
        for i in 3..=degree {
            gens.push(perm(&format!("(1 2 {i})"), degree));
        }
        generate_group(&gens, usize::MAX).expect("alternating group closure")
    }

    /// Is `H` (given by elements) a normal subgroup of `self`?
    pub fn is_normal(&self, h: &FiniteGroup) -> bool {
        self.elements.iter().all(|g| {
            let gi = g.inverse();
            h.elements
                .iter()
                .all(|x| h.contains(&g.compose(x).compose(&gi)))
        })
    }
}

/// Closure of `gens` under composition and inverse; includes the identity.
///
/// Fails with `CapExceeded` as soon as the closure grows past `cap`, so every
/// verdict downstream is exact rather than sampled.
pub fn generate_group(gens: &[Permutation], cap: usize) -> Result<FiniteGroup, PermError> {
    let degree = match gens.first() {
        Some(g) => g.degree(),
        None => {
            return Ok(FiniteGroup {
                degree: 1,
                elements: vec![Permutation::identity(1)],
                generators: Vec::new(),
            })
        }
    };
    for g in gens {
        if g.degree() != degree {
            return Err(PermError::DegreeMismatch(degree, g.degree()));
        }
    }
    let elements = close_under_product(degree, gens, cap)?;
    Ok(FiniteGroup {
        degree,
        elements,
        generators: gens.to_vec(),
    })
}

/// BFS closure; returns the sorted element list.
fn close_under_product(
    degree: usize,
    gens: &[Permutation],
    cap: usize,
) -> Result<Vec<Permutation>, PermError> {
    let mut set: BTreeSet<Permutation> = BTreeSet::new();
    set.insert(Permutation::identity(degree));
    let mut frontier: Vec<Permutation> = vec![Permutation::identity(degree)];
    // Closure under the generators alone suffices for finite groups (inverses
    // arise as powers), which keeps the loop simple.
    while let Some(p) = frontier.pop() {
        for g in gens {
            let q = g.compose(&p);
            if !set.contains(&q) {
                if set.len() + 1 > cap {
                    return Err(PermError::CapExceeded(cap));
                }
                set.insert(q.clone());
                frontier.push(q);
            }
        }
    }
    Ok(set.into_iter().collect())
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
pub enum VerdictKind {
    #[serde(rename = "GAG")]
    Gag,
    #[serde(rename = "ECCENTRIC")]
    Eccentric,
    #[serde(rename = "NOT_GAF")]
    NotGaf,
}

/// Classification of a finite action together with its witnesses.
#[derive(Clone, Debug)]
pub struct ActionVerdict {
    pub kind: VerdictKind,
    /// A domain point fixed by every element, when the action is a GAG.
    pub gag_witness: Option<usize>,
    /// An element with empty fixed set, when the action is not a GAF.
    pub gaf_violator: Option<Permutation>,
    /// Fixed-point set of every group element.
    pub fix_table: BTreeMap<Permutation, BTreeSet<usize>>,
}

/// Decides GAG / ECCENTRIC / NOT_GAF for the action of `g` on `{1..degree}`.
///
/// Ties in the GAG witness are broken toward the smallest domain point.
pub fn classify_action(g: &FiniteGroup) -> ActionVerdict {
    let mut fix_table = BTreeMap::new();
    let mut common: BTreeSet<usize> = (1..=g.degree()).collect();
    let mut violator: Option<Permutation> = None;
    for p in g.elements() {
        let fix = p.fixed_points();
        if fix.is_empty() && violator.is_none() {
            violator = Some(p.clone());
        }
        common = common.intersection(&fix).copied().collect();
        fix_table.insert(p.clone(), fix);
    }
    if let Some(v) = violator {
        return ActionVerdict {
            kind: VerdictKind::NotGaf,
            gag_witness: None,
            gaf_violator: Some(v),
            fix_table,
        };
    }
    match common.iter().next() {
        Some(&w) => ActionVerdict {
            kind: VerdictKind::Gag,
            gag_witness: Some(w),
            gaf_violator: None,
            fix_table,
        },
        None => ActionVerdict {
            kind: VerdictKind::Eccentric,
            gag_witness: None,
            gaf_violator: None,
            fix_table,
        },
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_basic_cycle() {
        let p = parse_permutation("(123)", 5).unwrap();
        assert_eq!(p.images(), &[2, 3, 1, 4, 5]);
    }

    #[test]
    fn parse_empty_is_identity() {
        let p = parse_permutation("", 4).unwrap();
        assert!(p.is_identity());
        assert_eq!(p.degree(), 4);
    }

    #[test]
    fn parse_double_transposition() {
        let p = parse_permutation("(12)(45)", 5).unwrap();
        assert_eq!(p.images(), &[2, 1, 3, 5, 4]);
    }

    #[test]
    fn parse_with_spaces_and_commas() {
        let p = parse_permutation(" (1 2, 3) ( 4 5 ) ", 5).unwrap();
        assert_eq!(p.images(), &[2, 3, 1, 5, 4]);
    }

    #[test]
    fn parse_rejects_repeated_point() {
        assert!(matches!(
            parse_permutation("(12)(13)", 3),
            Err(PermError::MalformedCycles(_))
        ));
    }

    #[test]
    fn parse_rejects_out_of_range() {
        assert!(matches!(
            parse_permutation("(16)", 5),
            Err(PermError::MalformedCycles(_))
        ));
    }

    #[test]
    fn parse_rejects_unbalanced() {
        assert!(matches!(
            parse_permutation("(12", 3),
            Err(PermError::MalformedCycles(_))
        ));
    }

    #[test]
    fn inverse_composes_to_identity() {
        let p = perm("(1 4 2)(3 5)", 6);
        assert!(p.inverse().compose(&p).is_identity());
        assert!(p.compose(&p.inverse()).is_identity());
    }

    #[test]
    fn fixed_points_examples() {
        assert_eq!(
            perm("(12)(45)", 5).fixed_points(),
            BTreeSet::from([3usize])
        );
        assert_eq!(
            Permutation::identity(4).fixed_points(),
            BTreeSet::from([1usize, 2, 3, 4])
        );
        assert_eq!(
            perm("(123)(567)", 7).fixed_points(),
            BTreeSet::from([4usize])
        );
    }

    #[test]
    fn cycle_string_round_trip() {
        let p = perm("(1 2 3)(4 5)", 6);
        assert_eq!(p.cycle_string(), "(1 2 3)(4 5)");
        assert_eq!(Permutation::identity(3).cycle_string(), "id");
    }

    #[test]
    fn generate_involution() {
        let g = generate_group(&[perm("(12)", 2)], 100).unwrap();
        assert_eq!(g.order(), 2);
    }

    #[test]
    fn generate_step3_group_of_order_six() {
        let g = generate_group(&[perm("(123)", 5), perm("(12)(45)", 5)], 100).unwrap();
        assert_eq!(g.order(), 6);
        let expected: BTreeSet<Permutation> = [
            perm("", 5),
            perm("(123)", 5),
            perm("(132)", 5),
            perm("(12)(45)", 5),
            perm("(13)(45)", 5),
            perm("(23)(45)", 5),
        ]
        .into_iter()
        .collect();
        let got: BTreeSet<Permutation> = g.elements().iter().cloned().collect();
        assert_eq!(got, expected);
    }

    #[test]
    fn generate_a7_witness_order_twelve() {
        let g = generate_group(&[perm("(123)(567)", 7), perm("(12)(34)", 7)], 100).unwrap();
        assert_eq!(g.order(), 12);
    }

    #[test]
    fn generate_cap_exceeded() {
        let err = generate_group(&[perm("(123)", 5), perm("(12)(45)", 5)], 3).unwrap_err();
        assert_eq!(err, PermError::CapExceeded(3));
    }

    #[test]
    fn generate_degree_mismatch() {
        let err = generate_group(&[perm("(12)", 2), perm("(12)", 3)], 10).unwrap_err();
        assert!(matches!(err, PermError::DegreeMismatch(2, 3)));
    }

    #[test]
    fn classify_step3_eccentric() {
        let g = generate_group(&[perm("(123)", 5), perm("(12)(45)", 5)], 100).unwrap();
        let v = classify_action(&g);
        assert_eq!(v.kind, VerdictKind::Eccentric);
        assert!(v.gag_witness.is_none());
        assert!(v.gaf_violator.is_none());
    }

    #[test]
    fn classify_step4_eccentric_with_expected_closure() {
        let g = generate_group(&[perm("(12)(34)", 6), perm("(12)(56)", 6)], 100).unwrap();
        assert_eq!(g.order(), 4);
        assert!(g.contains(&perm("(34)(56)", 6)));
        assert_eq!(classify_action(&g).kind, VerdictKind::Eccentric);
    }

    #[test]
    fn classify_single_transposition_gag() {
        let g = generate_group(&[perm("(12)", 3)], 10).unwrap();
        let v = classify_action(&g);
        assert_eq!(v.kind, VerdictKind::Gag);
        assert_eq!(v.gag_witness, Some(3));
    }

    #[test]
    fn classify_not_gaf_reports_violator() {
        let g = generate_group(&[perm("(123)", 3)], 10).unwrap();
        let v = classify_action(&g);
        assert_eq!(v.kind, VerdictKind::NotGaf);
        assert!(v.gaf_violator.unwrap().fixed_points().is_empty());
    }

    #[test]
    fn gag_witness_fixed_by_every_element() {
        let g = generate_group(&[perm("(12)", 4), perm("(34)", 4)], 100).unwrap();
        let v = classify_action(&g);
        assert_eq!(v.kind, VerdictKind::Eccentric);
        let g2 = generate_group(&[perm("(12)", 4)], 100).unwrap();
        let v2 = classify_action(&g2);
        let w = v2.gag_witness.unwrap();
        for p in g2.elements() {
            assert_eq!(p.apply(w), w);
        }
    }

    #[test]
    fn commuting_pair_preserves_fixed_set() {
        // Prop: if fg = gf then g(Fix f) = Fix f.
        let group = FiniteGroup::symmetric(5);
        for f in group.elements() {
            for g in group.elements() {
                if f.commutes_with(g) {
                    let fix_f = f.fixed_points();
                    let image: BTreeSet<usize> = fix_f.iter().map(|&x| g.apply(x)).collect();
                    assert_eq!(image, fix_f, "g={g:?} f={f:?}");
                }
            }
        }
    }

    #[test]
    fn normal_subgroup_fixed_set_invariant() {
        // Prop: for H normal in G, g(Fix H) = Fix H for all g in G.
        let g = FiniteGroup::symmetric(4);
        let subs = enumerate_subgroups(&g, 100_000).unwrap();
        for h in &subs {
            if !g.is_normal(h) {
                continue;
            }
            let mut fix_h: BTreeSet<usize> = (1..=4).collect();
            for p in h.elements() {
                fix_h = fix_h.intersection(&p.fixed_points()).copied().collect();
            }
            for p in g.elements() {
                let image: BTreeSet<usize> = fix_h.iter().map(|&x| p.apply(x)).collect();
                assert_eq!(image, fix_h);
            }
        }
    }
}
