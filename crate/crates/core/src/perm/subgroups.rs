//! Subgroup enumeration by cyclic extension and the fixating decision.

use std::collections::BTreeSet;
use std::collections::{HashMap, HashSet};

use super::{classify_action, FiniteGroup, PermError, Permutation, VerdictKind};

/// All subgroups of a finite group presented by its multiplication table.
///
/// `table[i][j]` is the index of `elements[i] * elements[j]`; index 0 must be
/// the identity. Works by cyclic extension: every subgroup arises as
/// `<H', x>` for some proper subgroup `H'` and single element `x`, so a
/// worklist of known subgroups extended one element at a time reaches all of
/// them. Subgroups are deduplicated by their sorted index lists.
pub fn subgroup_lattice(table: &[Vec<usize>], cap: usize) -> Result<Vec<Vec<usize>>, PermError> {
    subgroup_lattice_bounded(table, cap, usize::MAX)
}

/// Like [`subgroup_lattice`] but discards every subgroup whose order exceeds
/// `max_order`; used by the incremental eccentric-witness search.
fn subgroup_lattice_bounded(
    table: &[Vec<usize>],
    cap: usize,
    max_order: usize,
) -> Result<Vec<Vec<usize>>, PermError> {
    let n = table.len();
    if n > cap {
        return Err(PermError::CapExceeded(cap));
    }
    let order_of: Vec<usize> = (0..n)
        .map(|x| {
            let mut k = 1;
            let mut y = x;
            while y != 0 {
                y = table[y][x];
                k += 1;
            }
            k
        })
        .collect();

    let mut known: BTreeSet<Vec<usize>> = BTreeSet::new();
    known.insert(vec![0]);
    let mut worklist: Vec<Vec<usize>> = vec![vec![0]];
    while let Some(h) = worklist.pop() {
        for x in 1..n {
            if h.binary_search(&x).is_ok() {
                continue;
            }
            // |<H,x>| is a multiple of lcm(|H|, ord x).
            if lcm(h.len(), order_of[x]) > max_order {
                continue;
            }
            if let Some(ext) = close_indices(table, &h, x, max_order) {
                if known.insert(ext.clone()) {
                    worklist.push(ext);
                }
            }
        }
    }
    Ok(known.into_iter().collect())
}

fn lcm(a: usize, b: usize) -> usize {
    a / gcd(a, b) * b
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Closure of `h ∪ {x}` inside the multiplication table, aborting (returning
/// `None`) as soon as the subgroup grows past `max_order`. Membership is a
/// small hash set so an aborted attempt costs O(max_order), not O(|G|).
fn close_indices(
    table: &[Vec<usize>],
    h: &[usize],
    x: usize,
    max_order: usize,
) -> Option<Vec<usize>> {
    let mut member: HashSet<usize> = HashSet::with_capacity(h.len() + 1);
    let mut elems: Vec<usize> = Vec::with_capacity(h.len() + 1);
    for &e in h {
        member.insert(e);
        elems.push(e);
    }
    let mut frontier = vec![x];
    member.insert(x);
    elems.push(x);
    while let Some(a) = frontier.pop() {
        // Multiply against everything already present, both ways.
        let mut i = 0;
        while i < elems.len() {
            let b = elems[i];
            for p in [table[a][b], table[b][a]] {
                if member.insert(p) {
                    if elems.len() + 1 > max_order {
                        return None;
                    }
                    elems.push(p);
                    frontier.push(p);
                }
            }
            i += 1;
        }
    }
    elems.sort_unstable();
    Some(elems)
}

/// Multiplication table of `g` plus the element list in table order
/// (canonical order, identity first).
fn multiplication_table(g: &FiniteGroup) -> (Vec<Permutation>, Vec<Vec<usize>>) {
    let mut elems: Vec<Permutation> = g.elements().to_vec();
    // Identity must sit at index 0.
    let id_pos = elems
        .iter()
        .position(|p| p.is_identity())
        .expect("group contains identity");
    elems.swap(0, id_pos);
    let index: HashMap<&Permutation, usize> = elems.iter().zip(0..).collect();
    let table: Vec<Vec<usize>> = elems
        .iter()
        .map(|a| elems.iter().map(|b| index[&a.compose(b)]).collect())
        .collect();
    (elems, table)
}

fn subgroup_from_indices(g: &FiniteGroup, elems: &[Permutation], idx: &[usize]) -> FiniteGroup {
    let members: Vec<Permutation> = idx.iter().map(|&i| elems[i].clone()).collect();
    super::generate_group(&members, g.order()).expect("subgroup closure within parent")
}

/// Every subgroup of `g`, deduplicated, including the trivial and full ones.
pub fn enumerate_subgroups(g: &FiniteGroup, cap: usize) -> Result<Vec<FiniteGroup>, PermError> {
    if g.order() > cap {
        return Err(PermError::CapExceeded(cap));
    }
    let (elems, table) = multiplication_table(g);
    let lattice = subgroup_lattice(&table, cap)?;
    let mut subs: Vec<FiniteGroup> = lattice
        .iter()
        .map(|idx| subgroup_from_indices(g, &elems, idx))
        .collect();
    subs.sort_by(|a, b| {
        (a.order(), a.elements()).cmp(&(b.order(), b.elements()))
    });
    Ok(subs)
}

/// The first eccentric subgroup of `g` in (order, lexicographic) order, if any.
///
/// For small groups this is a scan of the full subgroup lattice. For larger
/// ones the search enumerates subgroups of bounded order with a doubling
/// bound, so the minimal-order witness is still found without materializing
/// the whole lattice.
pub fn find_eccentric_subgroup(
    g: &FiniteGroup,
    cap: usize,
) -> Result<Option<FiniteGroup>, PermError> {
    if g.order() > cap {
        return Err(PermError::CapExceeded(cap));
    }
    let (elems, table) = multiplication_table(g);
    let full_scan_threshold = 200;
    if g.order() <= full_scan_threshold {
        let lattice = subgroup_lattice(&table, cap)?;
        return Ok(first_eccentric(g, &elems, lattice));
    }
    let mut bound = 16usize;
    loop {
        let lattice = subgroup_lattice_bounded(&table, cap, bound)?;
        if let Some(w) = first_eccentric(g, &elems, lattice) {
            return Ok(Some(w));
        }
        if bound >= g.order() {
            return Ok(None);
        }
        bound = (bound * 2).min(g.order());
    }
}

fn first_eccentric(
    g: &FiniteGroup,
    elems: &[Permutation],
    lattice: Vec<Vec<usize>>,
) -> Option<FiniteGroup> {
    let mut subs: Vec<FiniteGroup> = lattice
        .iter()
        .map(|idx| subgroup_from_indices(g, elems, idx))
        .collect();
    subs.sort_by(|a, b| (a.order(), a.elements()).cmp(&(b.order(), b.elements())));
    subs.into_iter()
        .find(|h| classify_action(h).kind == VerdictKind::Eccentric)
}

/// `true` iff no subgroup of `g` is eccentric; on `false` also returns the
/// first eccentric subgroup under the deterministic order.
pub fn is_fixating(
    g: &FiniteGroup,
    cap: usize,
) -> Result<(bool, Option<FiniteGroup>), PermError> {
    let witness = find_eccentric_subgroup(g, cap)?;
    Ok((witness.is_none(), witness))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::{generate_group, perm};

    /// Independent oracle: the family of all subgroups is the fixpoint of
    /// pairwise joins starting from all cyclic subgroups.
    fn subgroup_family_oracle(g: &FiniteGroup) -> BTreeSet<Vec<Permutation>> {
        let mut family: BTreeSet<Vec<Permutation>> = BTreeSet::new();
        for e in g.elements() {
            let cyc = generate_group(std::slice::from_ref(e), g.order()).unwrap();
            family.insert(cyc.elements().to_vec());
        }
        family.insert(vec![Permutation::identity(g.degree())]);
        loop {
            let snapshot: Vec<Vec<Permutation>> = family.iter().cloned().collect();
            let before = family.len();
            for a in &snapshot {
                for b in &snapshot {
                    let mut gens = a.clone();
                    gens.extend(b.iter().cloned());
                    let join = generate_group(&gens, g.order()).unwrap();
                    family.insert(join.elements().to_vec());
                }
            }
            if family.len() == before {
                break;
            }
        }
        family
    }

    #[test]
    fn s3_has_six_subgroups() {
        let s3 = FiniteGroup::symmetric(3);
        let subs = enumerate_subgroups(&s3, 1000).unwrap();
        assert_eq!(subs.len(), 6);
        let oracle = subgroup_family_oracle(&s3);
        assert_eq!(oracle.len(), 6);
    }

    #[test]
    fn s4_has_thirty_subgroups() {
        let s4 = FiniteGroup::symmetric(4);
        let subs = enumerate_subgroups(&s4, 10_000).unwrap();
        assert_eq!(subs.len(), 30);
        let oracle = subgroup_family_oracle(&s4);
        assert_eq!(oracle.len(), 30);
        let got: BTreeSet<Vec<Permutation>> =
            subs.iter().map(|h| h.elements().to_vec()).collect();
        assert_eq!(got, oracle);
    }

    #[test]
    fn trivial_group_one_subgroup() {
        let t = FiniteGroup::trivial(3);
        assert_eq!(enumerate_subgroups(&t, 10).unwrap().len(), 1);
    }

    #[test]
    fn enumerate_respects_cap() {
        let s4 = FiniteGroup::symmetric(4);
        assert!(matches!(
            enumerate_subgroups(&s4, 10),
            Err(PermError::CapExceeded(10))
        ));
    }

    #[test]
    fn s4_is_fixating() {
        let (fixating, w) = is_fixating(&FiniteGroup::symmetric(4), 10_000).unwrap();
        assert!(fixating);
        assert!(w.is_none());
    }

    #[test]
    fn s5_witness_has_order_six() {
        let (fixating, w) = is_fixating(&FiniteGroup::symmetric(5), 10_000).unwrap();
        assert!(!fixating);
        assert_eq!(w.unwrap().order(), 6);
    }

    #[test]
    fn subgroups_of_fixating_group_are_fixating() {
        for g in [FiniteGroup::symmetric(4), FiniteGroup::alternating(4)] {
            let subs = enumerate_subgroups(&g, 10_000).unwrap();
            for h in subs {
                let (fixating, _) = is_fixating(&h, 10_000).unwrap();
                assert!(fixating, "subgroup {:?} not fixating", h.elements());
            }
        }
    }

    #[test]
    fn fixating_agrees_with_oracle_scan_small_groups() {
        let cases = vec![
            FiniteGroup::symmetric(3),
            FiniteGroup::symmetric(4),
            FiniteGroup::alternating(4),
            generate_group(&[perm("(123)", 5), perm("(12)(45)", 5)], 1000).unwrap(),
            generate_group(&[perm("(12)(34)", 6), perm("(12)(56)", 6)], 1000).unwrap(),
            FiniteGroup::symmetric(5),
        ];
        for g in cases {
            assert!(g.order() <= 200);
            let oracle = subgroup_family_oracle(&g);
            let oracle_fixating = !oracle.iter().any(|els| {
                let h = generate_group(els, g.order()).unwrap();
                classify_action(&h).kind == VerdictKind::Eccentric
            });
            let (fixating, _) = is_fixating(&g, 100_000).unwrap();
            assert_eq!(fixating, oracle_fixating);
        }
    }
}
