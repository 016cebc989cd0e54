//! Combinatorial trees and cell-colored graphs: distances, geodesics,
//! fixed-point sets of isometries, and the inductive global-fixed-point
//! algorithms.

mod colored;
mod fixed;

pub use colored::{
    colored_fixed_structure, colored_geodesic, colored_global_fixed_point,
    validate_colored_graph, Cell, ColoredGraph, ColoredGraphError, FixedStructure, Parity,
};
pub use fixed::{
    bounded_orbit_fixed_point, finite_tree_center, gaf_from_three, nearest_fixed_vertex,
    tree_global_fixed_point, TreeCenter,
};

use std::collections::BTreeSet;
use std::collections::VecDeque;

use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum TreeError {
    #[error("vertex {0} out of range 1..={1}")]
    OutOfRange(usize, usize),
    #[error("graph is not a tree (must be connected and acyclic)")]
    NotATree,
    #[error("map is not an isometry")]
    NotAnIsometry,
    #[error("isometry has no fixed vertex")]
    NoFixedPoint,
    #[error("odd displacement distance: the isometry has no fixed vertex")]
    OddDistance,
    #[error("group is not a GAF: {0} has empty fixed set")]
    NotGaf(String),
    #[error("hypothesis failed: {0} has no fixed vertex")]
    HypothesisFailed(String),
    #[error("inversion detected on edge {{{0}, {1}}}")]
    InversionDetected(usize, usize),
    #[error("orbit exceeded cap {0}")]
    OrbitUnbounded(usize),
}

/// A finite combinatorial tree on vertices `{1..n}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Tree {
    n: usize,
    adj: Vec<Vec<usize>>,
}

impl Tree {
    /// Validates connectivity, the edge count and acyclicity.
    pub fn new(n: usize, edges: &[(usize, usize)]) -> Result<Tree, TreeError> {
        if n == 0 {
            return Err(TreeError::NotATree);
        }
        if edges.len() != n - 1 {
            return Err(TreeError::NotATree);
        }
        let mut adj = vec![Vec::new(); n + 1];
        for &(a, b) in edges {
            if a == 0 || a > n {
                return Err(TreeError::OutOfRange(a, n));
            }
            if b == 0 || b > n {
                return Err(TreeError::OutOfRange(b, n));
            }
            if a == b {
                return Err(TreeError::NotATree);
            }
            adj[a].push(b);
            adj[b].push(a);
        }
        let tree = Tree { n, adj };
        // Connected with n−1 edges ⇒ acyclic.
        let mut seen = vec![false; n + 1];
        let mut queue = VecDeque::from([1usize]);
        seen[1] = true;
        let mut count = 0;
        while let Some(v) = queue.pop_front() {
            count += 1;
            for &w in &tree.adj[v] {
                if !seen[w] {
                    seen[w] = true;
                    queue.push_back(w);
                }
            }
        }
        if count != n {
            return Err(TreeError::NotATree);
        }
        Ok(tree)
    }

    pub fn path(n: usize) -> Tree {
        let edges: Vec<(usize, usize)> = (1..n).map(|i| (i, i + 1)).collect();
        Tree::new(n, &edges).expect("path is a tree")
    }

    pub fn star(leaves: usize) -> Tree {
        let edges: Vec<(usize, usize)> = (2..=leaves + 1).map(|v| (1, v)).collect();
        Tree::new(leaves + 1, &edges).expect("star is a tree")
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree_of(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.n.saturating_sub(1));
        for v in 1..=self.n {
            for &w in &self.adj[v] {
                if v < w {
                    out.push((v, w));
                }
            }
        }
        out
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        self.adj[a].contains(&b)
    }

    fn check_vertex(&self, v: usize) -> Result<(), TreeError> {
        if v == 0 || v > self.n {
            Err(TreeError::OutOfRange(v, self.n))
        } else {
            Ok(())
        }
    }

    /// The unique injective path from x to y, endpoints included.
    pub fn geodesic(&self, x: usize, y: usize) -> Result<Vec<usize>, TreeError> {
        self.check_vertex(x)?;
        self.check_vertex(y)?;
        let mut parent = vec![0usize; self.n + 1];
        let mut seen = vec![false; self.n + 1];
        let mut queue = VecDeque::from([x]);
        seen[x] = true;
        while let Some(v) = queue.pop_front() {
            if v == y {
                break;
            }
            for &w in &self.adj[v] {
                if !seen[w] {
                    seen[w] = true;
                    parent[w] = v;
                    queue.push_back(w);
                }
            }
        }
        let mut path = vec![y];
        let mut cur = y;
        while cur != x {
            cur = parent[cur];
            path.push(cur);
        }
        path.reverse();
        Ok(path)
    }

    pub fn distance(&self, x: usize, y: usize) -> Result<usize, TreeError> {
        Ok(self.geodesic(x, y)?.len() - 1)
    }

    /// All automorphisms (distance-preserving bijections), by backtracking;
    /// intended for small trees in tests and audits.
    pub fn automorphisms(&self) -> Vec<GraphIsometry> {
        let mut out = Vec::new();
        let degrees: Vec<usize> = (0..=self.n).map(|v| self.adj[v].len()).collect();
        let mut images = vec![0usize; self.n + 1];
        let mut used = vec![false; self.n + 1];
        self.backtrack(1, &mut images, &mut used, &degrees, &mut out);
        out
    }

    fn backtrack(
        &self,
        v: usize,
        images: &mut Vec<usize>,
        used: &mut Vec<bool>,
        degrees: &[usize],
        out: &mut Vec<GraphIsometry>,
    ) {
        if v > self.n {
            out.push(GraphIsometry {
                images: images[1..].to_vec(),
            });
            return;
        }
        for w in 1..=self.n {
            if used[w] || degrees[w] != degrees[v] {
                continue;
            }
            // Adjacency consistency with already-assigned vertices.
            let ok = self.adj[v].iter().all(|&u| {
                if u < v {
                    self.has_edge(images[u], w)
                } else {
                    true
                }
            }) && (1..v).all(|u| !self.has_edge(u, v) || self.has_edge(images[u], w));
            if !ok {
                continue;
            }
            images[v] = w;
            used[w] = true;
            self.backtrack(v + 1, images, used, degrees, out);
            used[w] = false;
            images[v] = 0;
        }
    }
}

/// A distance-preserving vertex bijection, checked on construction.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GraphIsometry {
    images: Vec<usize>,
}

impl GraphIsometry {
    /// Validates that `images` is a bijection preserving adjacency (which on
    /// connected graphs implies preserving all distances).
    pub fn new(tree: &Tree, images: Vec<usize>) -> Result<GraphIsometry, TreeError> {
        Self::new_on(images, tree.vertex_count(), |a, b| tree.has_edge(a, b))
    }

    pub(crate) fn new_on(
        images: Vec<usize>,
        n: usize,
        has_edge: impl Fn(usize, usize) -> bool,
    ) -> Result<GraphIsometry, TreeError> {
        if images.len() != n {
            return Err(TreeError::NotAnIsometry);
        }
        let mut seen = vec![false; n + 1];
        for &w in &images {
            if w == 0 || w > n || seen[w] {
                return Err(TreeError::NotAnIsometry);
            }
            seen[w] = true;
        }
        let iso = GraphIsometry { images };
        for a in 1..=n {
            for b in a + 1..=n {
                if has_edge(a, b) != has_edge(iso.apply(a), iso.apply(b)) {
                    return Err(TreeError::NotAnIsometry);
                }
            }
        }
        Ok(iso)
    }

    pub fn identity(n: usize) -> GraphIsometry {
        GraphIsometry {
            images: (1..=n).collect(),
        }
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn apply(&self, v: usize) -> usize {
        self.images[v - 1]
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn compose(&self, other: &GraphIsometry) -> GraphIsometry {
        GraphIsometry {
            images: (1..=self.degree())
                .map(|v| self.apply(other.apply(v)))
                .collect(),
        }
    }

    pub fn inverse(&self) -> GraphIsometry {
        let mut images = vec![0; self.degree()];
        for (i, &w) in self.images.iter().enumerate() {
            images[w - 1] = i + 1;
        }
        GraphIsometry { images }
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &w)| w == i + 1)
    }

    pub fn fixed_vertices(&self) -> BTreeSet<usize> {
        self.images
            .iter()
            .enumerate()
            .filter(|(i, &w)| w == i + 1)
            .map(|(i, _)| i + 1)
            .collect()
    }

    pub fn describe(&self) -> String {
        crate::perm::Permutation::from_images(self.images.clone())
            .map(|p| p.cycle_string())
            .unwrap_or_else(|_| format!("{:?}", self.images))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn path_distances() {
        let t = Tree::path(5);
        assert_eq!(t.distance(1, 5).unwrap(), 4);
        assert_eq!(t.distance(3, 3).unwrap(), 0);
        assert_eq!(t.geodesic(1, 4).unwrap(), vec![1, 2, 3, 4]);
    }

    #[test]
    fn star_distances() {
        let t = Tree::star(4);
        assert_eq!(t.distance(2, 3).unwrap(), 2);
        assert_eq!(t.geodesic(2, 3).unwrap(), vec![2, 1, 3]);
    }

    #[test]
    fn out_of_range_rejected() {
        let t = Tree::path(3);
        assert!(matches!(t.distance(0, 1), Err(TreeError::OutOfRange(0, 3))));
        assert!(matches!(t.distance(1, 9), Err(TreeError::OutOfRange(9, 3))));
    }

    #[test]
    fn non_trees_rejected() {
        // Cycle on three vertices.
        assert!(Tree::new(3, &[(1, 2), (2, 3), (3, 1)]).is_err());
        // Disconnected forest.
        assert!(Tree::new(4, &[(1, 2), (3, 4), (1, 2)]).is_err());
    }

    #[test]
    fn isometry_validation() {
        let t = Tree::path(5);
        // Reflection i ↦ 6 − i.
        let r = GraphIsometry::new(&t, vec![5, 4, 3, 2, 1]).unwrap();
        assert_eq!(r.fixed_vertices(), BTreeSet::from([3usize]));
        // A non-adjacency-preserving bijection fails.
        assert!(GraphIsometry::new(&t, vec![2, 1, 3, 5, 4]).is_err());
    }

    #[test]
    fn fixed_set_of_tree_isometry_is_connected() {
        // Fix s is a subtree: check on the automorphisms of a small tree.
        let t = Tree::new(7, &[(1, 2), (2, 3), (3, 4), (3, 5), (2, 6), (6, 7)]).unwrap();
        for auto in t.automorphisms() {
            let fix = auto.fixed_vertices();
            if fix.is_empty() {
                continue;
            }
            // Connectivity of the induced subgraph on fix.
            let start = *fix.iter().next().unwrap();
            let mut seen = BTreeSet::from([start]);
            let mut stack = vec![start];
            while let Some(v) = stack.pop() {
                for &w in t.neighbors(v) {
                    if fix.contains(&w) && seen.insert(w) {
                        stack.push(w);
                    }
                }
            }
            assert_eq!(seen, fix);
        }
    }

    #[test]
    fn automorphism_count_of_path() {
        assert_eq!(Tree::path(4).automorphisms().len(), 2);
        assert_eq!(Tree::star(3).automorphisms().len(), 6);
    }
}
