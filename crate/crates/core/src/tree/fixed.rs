//! Fixed-point constructions on trees: the midpoint argument, the
//! generator-by-generator induction, the three-element criterion, iterated
//! leaf pruning and bounded orbits.

use std::collections::BTreeSet;
use std::collections::VecDeque;

use super::{GraphIsometry, Tree, TreeError};

/// The fixed vertex of `s` nearest to `x`: the midpoint of the geodesic
/// `[x, s(x)]`, whose displacement distance is always even when `Fix s` is
/// nonempty.
pub fn nearest_fixed_vertex(
    tree: &Tree,
    s: &GraphIsometry,
    x: usize,
) -> Result<usize, TreeError> {
    if s.fixed_vertices().is_empty() {
        return Err(TreeError::NoFixedPoint);
    }
    let path = tree.geodesic(x, s.apply(x))?;
    let d = path.len() - 1;
    if d % 2 != 0 {
        return Err(TreeError::OddDistance);
    }
    let mid = path[d / 2];
    debug_assert_eq!(s.apply(mid), mid);
    Ok(mid)
}

/// A vertex fixed by every generator, built by induction: a fixed vertex of
/// the first generator, then for each next generator the midpoint of the
/// geodesic from the current common fixed vertex to its image.
///
/// A `NotGaf` failure carries an explicit product with empty fixed set,
/// found by scanning products against the closure of the processed prefix.
pub fn tree_global_fixed_point(
    tree: &Tree,
    gens: &[GraphIsometry],
) -> Result<usize, TreeError> {
    let mut x0 = 1usize; // canonical choice when every generator is trivial
    let mut processed: Vec<GraphIsometry> = Vec::new();
    for (idx, s) in gens.iter().enumerate() {
        if s.apply(x0) == x0 {
            processed.push(s.clone());
            continue;
        }
        if idx == 0 || processed.iter().all(|g| g.is_identity()) {
            // Base case: any fixed vertex of the first nontrivial generator.
            match s.fixed_vertices().into_iter().next() {
                Some(v) => x0 = v,
                None => return Err(TreeError::NotGaf(s.describe())),
            }
            processed.push(s.clone());
            continue;
        }
        if s.fixed_vertices().is_empty() {
            return Err(TreeError::NotGaf(s.describe()));
        }
        let path = tree.geodesic(x0, s.apply(x0))?;
        let d = path.len() - 1;
        if d % 2 != 0 {
            return Err(TreeError::NotGaf(s.describe()));
        }
        let z = path[d / 2];
        // The midpoint must be fixed by s and by everything before it;
        // otherwise some product s·t has an empty fixed set and certifies
        // the failure.
        let mut all_fixed = s.apply(z) == z;
        for g in &processed {
            all_fixed = all_fixed && g.apply(z) == z;
        }
        if !all_fixed {
            return Err(find_violating_product(s, &processed));
        }
        x0 = z;
        processed.push(s.clone());
    }
    for g in gens {
        debug_assert_eq!(g.apply(x0), x0);
    }
    Ok(x0)
}

/// Hunts for the product s·t (t in the closure of the processed prefix)
/// with empty fixed set; falls back to naming s itself.
fn find_violating_product(s: &GraphIsometry, processed: &[GraphIsometry]) -> TreeError {
    let cap = 10_000usize;
    let mut closure: Vec<GraphIsometry> = vec![GraphIsometry::identity(s.degree())];
    let mut seen: std::collections::HashSet<Vec<usize>> =
        closure.iter().map(|g| g.images().to_vec()).collect();
    let mut frontier = vec![0usize];
    while let Some(i) = frontier.pop() {
        let base = closure[i].clone();
        for g in processed {
            let next = g.compose(&base);
            if seen.insert(next.images().to_vec()) {
                if closure.len() >= cap {
                    break;
                }
                closure.push(next);
                frontier.push(closure.len() - 1);
            }
        }
    }
    for t in &closure {
        let st = s.compose(t);
        if st.fixed_vertices().is_empty() {
            return TreeError::NotGaf(st.describe());
        }
    }
    TreeError::NotGaf(s.describe())
}

/// If `f`, `g` and `fg` all have fixed vertices then `Fix f ∩ Fix g` is
/// nonempty; returns the smallest common vertex as the certificate.
pub fn gaf_from_three(
    _tree: &Tree,
    f: &GraphIsometry,
    g: &GraphIsometry,
) -> Result<usize, TreeError> {
    let fix_f = f.fixed_vertices();
    if fix_f.is_empty() {
        return Err(TreeError::HypothesisFailed("f".to_string()));
    }
    let fix_g = g.fixed_vertices();
    if fix_g.is_empty() {
        return Err(TreeError::HypothesisFailed("g".to_string()));
    }
    if f.compose(g).fixed_vertices().is_empty() {
        return Err(TreeError::HypothesisFailed("fg".to_string()));
    }
    let common = fix_f
        .intersection(&fix_g)
        .next()
        .copied()
        .expect("fixed sets of f and g meet when f, g, fg all have fixed vertices");
    Ok(common)
}

/// Center of a finite tree by iterated leaf removal: a single vertex or a
/// single edge, invariant under every isometry of the tree.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TreeCenter {
    Vertex(usize),
    Edge(usize, usize),
}

pub fn finite_tree_center(tree: &Tree) -> TreeCenter {
    let n = tree.vertex_count();
    let mut degree: Vec<usize> = (0..=n).map(|v| if v == 0 { 0 } else { tree.degree_of(v) }).collect();
    let mut alive = vec![true; n + 1];
    let mut alive_count = n;
    let mut frontier: VecDeque<usize> = (1..=n).filter(|&v| degree[v] <= 1).collect();
    while alive_count > 2 {
        let mut next: VecDeque<usize> = VecDeque::new();
        let layer: Vec<usize> = frontier.drain(..).collect();
        for &leaf in &layer {
            if !alive[leaf] {
                continue;
            }
            alive[leaf] = false;
            alive_count -= 1;
            for &w in tree.neighbors(leaf) {
                if alive[w] {
                    degree[w] -= 1;
                    if degree[w] <= 1 {
                        next.push_back(w);
                    }
                }
            }
        }
        // Do not prune below two vertices within one layer.
        frontier = next;
        if alive_count <= 2 {
            break;
        }
    }
    let remaining: Vec<usize> = (1..=n).filter(|&v| alive[v]).collect();
    match remaining.as_slice() {
        [v] => TreeCenter::Vertex(*v),
        [a, b] => {
            debug_assert!(tree.has_edge(*a, *b));
            TreeCenter::Edge(*a, *b)
        }
        _ => unreachable!("leaf pruning terminates at one vertex or one edge"),
    }
}

/// Common fixed vertex from a bounded orbit: the convex hull of the orbit
/// is a finite subtree, its center is invariant, and without inversions an
/// edge center has both endpoints fixed.
pub fn bounded_orbit_fixed_point(
    tree: &Tree,
    gens: &[GraphIsometry],
    seed: usize,
    cap: usize,
) -> Result<usize, TreeError> {
    tree.geodesic(seed, seed)?; // range check
    // Orbit of the seed under the generated group.
    let mut orbit: BTreeSet<usize> = BTreeSet::from([seed]);
    let mut frontier = vec![seed];
    while let Some(v) = frontier.pop() {
        for g in gens {
            for image in [g.apply(v), g.inverse().apply(v)] {
                if orbit.insert(image) {
                    if orbit.len() > cap {
                        return Err(TreeError::OrbitUnbounded(cap));
                    }
                    frontier.push(image);
                }
            }
        }
    }
    // Convex hull: union of geodesics from one orbit vertex to the others.
    let base = *orbit.iter().next().unwrap();
    let mut hull: BTreeSet<usize> = BTreeSet::new();
    for &v in &orbit {
        hull.extend(tree.geodesic(base, v)?);
    }
    // Center of the hull as an induced subtree.
    let hull_vec: Vec<usize> = hull.iter().copied().collect();
    let index_of: std::collections::HashMap<usize, usize> = hull_vec
        .iter()
        .enumerate()
        .map(|(i, &v)| (v, i + 1))
        .collect();
    let mut sub_edges = Vec::new();
    for &v in &hull_vec {
        for &w in tree.neighbors(v) {
            if v < w && hull.contains(&w) {
                sub_edges.push((index_of[&v], index_of[&w]));
            }
        }
    }
    let subtree = Tree::new(hull_vec.len(), &sub_edges)?;
    match finite_tree_center(&subtree) {
        TreeCenter::Vertex(v) => Ok(hull_vec[v - 1]),
        TreeCenter::Edge(a, b) => {
            let (a, b) = (hull_vec[a - 1], hull_vec[b - 1]);
            for g in gens {
                if g.apply(a) == b && g.apply(b) == a {
                    return Err(TreeError::InversionDetected(a, b));
                }
            }
            // No generator swaps the edge, so both endpoints are fixed by
            // the whole group; return the smaller.
            Ok(a.min(b))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn reflection(n: usize) -> GraphIsometry {
        GraphIsometry {
            images: (1..=n).map(|i| n + 1 - i).collect(),
        }
    }

    /// Brute-force: all vertices fixed by every generator.
    fn common_fixed(gens: &[GraphIsometry], n: usize) -> BTreeSet<usize> {
        (1..=n)
            .filter(|&v| gens.iter().all(|g| g.apply(v) == v))
            .collect()
    }

    #[test]
    fn reflection_midpoint_on_path() {
        let t = Tree::path(5);
        let s = reflection(5);
        assert_eq!(nearest_fixed_vertex(&t, &s, 1).unwrap(), 3);
        assert_eq!(nearest_fixed_vertex(&t, &s, 3).unwrap(), 3);
    }

    #[test]
    fn fixed_input_returns_itself() {
        let t = Tree::path(5);
        let s = GraphIsometry::identity(5);
        assert_eq!(nearest_fixed_vertex(&t, &s, 4).unwrap(), 4);
    }

    #[test]
    fn spider_leg_rotation_nearest_fixed() {
        // Center 1, legs (2,3), (4,5), (6,7): tips are 3, 5, 7.
        let t = Tree::new(
            7,
            &[(1, 2), (2, 3), (1, 4), (4, 5), (1, 6), (6, 7)],
        )
        .unwrap();
        // Swap legs one and two, fix the third.
        let s = GraphIsometry::new(&t, vec![1, 4, 5, 2, 3, 6, 7]).unwrap();
        // Brute force: distance-minimizing fixed vertex from the tip 3.
        let fix = s.fixed_vertices();
        let best = fix
            .iter()
            .min_by_key(|&&v| t.distance(3, v).unwrap())
            .copied()
            .unwrap();
        assert_eq!(nearest_fixed_vertex(&t, &s, 3).unwrap(), best);
        assert_eq!(best, 1);
    }

    #[test]
    fn no_fixed_point_detected() {
        let t = Tree::path(4);
        let s = reflection(4);
        assert!(s.fixed_vertices().is_empty());
        assert_eq!(
            nearest_fixed_vertex(&t, &s, 1),
            Err(TreeError::NoFixedPoint)
        );
    }

    #[test]
    fn global_fixed_point_single_reflection() {
        let t = Tree::path(5);
        assert_eq!(tree_global_fixed_point(&t, &[reflection(5)]).unwrap(), 3);
    }

    #[test]
    fn global_fixed_point_spider_involutions() {
        let t = Tree::new(7, &[(1, 2), (2, 3), (1, 4), (4, 5), (1, 6), (6, 7)]).unwrap();
        let g1 = GraphIsometry::new(&t, vec![1, 4, 5, 2, 3, 6, 7]).unwrap();
        let g2 = GraphIsometry::new(&t, vec![1, 2, 3, 6, 7, 4, 5]).unwrap();
        let v = tree_global_fixed_point(&t, &[g1.clone(), g2.clone()]).unwrap();
        assert!(common_fixed(&[g1, g2], 7).contains(&v));
    }

    #[test]
    fn global_fixed_point_identity_generators() {
        let t = Tree::path(6);
        let id = GraphIsometry::identity(6);
        assert_eq!(tree_global_fixed_point(&t, &[id.clone(), id]).unwrap(), 1);
    }

    #[test]
    fn global_fixed_point_not_gaf() {
        let t = Tree::path(4);
        let err = tree_global_fixed_point(&t, &[reflection(4)]).unwrap_err();
        assert!(matches!(err, TreeError::NotGaf(_)));
    }

    #[test]
    fn three_element_criterion() {
        let t = Tree::path(5);
        let r = reflection(5);
        assert_eq!(gaf_from_three(&t, &r, &r).unwrap(), 3);
        let id = GraphIsometry::identity(5);
        assert_eq!(gaf_from_three(&t, &r, &id).unwrap(), 3);
    }

    #[test]
    fn three_element_criterion_failure_is_named() {
        let t = Tree::path(4);
        let r = reflection(4);
        let id = GraphIsometry::identity(4);
        assert_eq!(
            gaf_from_three(&t, &r, &id),
            Err(TreeError::HypothesisFailed("f".to_string()))
        );
        assert_eq!(
            gaf_from_three(&t, &id, &r),
            Err(TreeError::HypothesisFailed("g".to_string()))
        );
    }

    #[test]
    fn centers_of_small_trees() {
        assert_eq!(finite_tree_center(&Tree::path(5)), TreeCenter::Vertex(3));
        assert_eq!(finite_tree_center(&Tree::path(4)), TreeCenter::Edge(2, 3));
        assert_eq!(finite_tree_center(&Tree::star(5)), TreeCenter::Vertex(1));
        assert_eq!(finite_tree_center(&Tree::path(1)), TreeCenter::Vertex(1));
        assert_eq!(finite_tree_center(&Tree::path(2)), TreeCenter::Edge(1, 2));
    }

    #[test]
    fn center_invariant_under_automorphisms() {
        let trees = vec![
            Tree::path(7),
            Tree::star(4),
            Tree::new(6, &[(1, 2), (2, 3), (2, 4), (4, 5), (4, 6)]).unwrap(),
        ];
        for t in trees {
            let center = finite_tree_center(&t);
            for auto in t.automorphisms() {
                match center {
                    TreeCenter::Vertex(v) => assert_eq!(auto.apply(v), v),
                    TreeCenter::Edge(a, b) => {
                        let img = BTreeSet::from([auto.apply(a), auto.apply(b)]);
                        assert_eq!(img, BTreeSet::from([a, b]));
                    }
                }
            }
        }
    }

    #[test]
    fn bounded_orbit_identity_returns_seed() {
        let t = Tree::path(5);
        let id = GraphIsometry::identity(5);
        assert_eq!(bounded_orbit_fixed_point(&t, &[id], 4, 100).unwrap(), 4);
    }

    #[test]
    fn bounded_orbit_reflection_center() {
        let t = Tree::path(5);
        assert_eq!(
            bounded_orbit_fixed_point(&t, &[reflection(5)], 1, 100).unwrap(),
            3
        );
    }

    #[test]
    fn bounded_orbit_detects_inversion() {
        let t = Tree::path(2);
        let swap = reflection(2);
        assert_eq!(
            bounded_orbit_fixed_point(&t, &[swap], 1, 100),
            Err(TreeError::InversionDetected(1, 2))
        );
    }
}
