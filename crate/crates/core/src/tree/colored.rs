//! Cell-colored graphs: every elementary cycle monochromatic and every
//! color component complete. Unique geodesics alternate colors, and the
//! tree induction generalizes with cells of at most four vertices handled
//! by the symmetric-group machinery.

use std::collections::BTreeSet;
use std::collections::HashMap;
use std::collections::VecDeque;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use super::{GraphIsometry, TreeError};
use crate::perm::{classify_action, generate_group, Permutation, VerdictKind};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ColoredGraphError {
    #[error("graph is not simple and connected")]
    NotConnected,
    #[error("polychromatic elementary cycle: {0:?}")]
    PolychromaticCycle(Vec<usize>),
    #[error("color component is not complete: {0:?}")]
    IncompleteCell(Vec<usize>),
    #[error("cell with more than four vertices: {0:?}")]
    CellTooLarge(Vec<usize>),
    #[error(transparent)]
    Tree(#[from] TreeError),
    #[error("group is not a GAF: {0} has empty fixed set")]
    NotGaf(String),
}

/// A maximal monochromatic complete component.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cell {
    pub color: usize,
    pub vertices: Vec<usize>,
}

/// A validated cell-colored graph.
#[derive(Clone, Debug)]
pub struct ColoredGraph {
    n: usize,
    adj: Vec<Vec<(usize, usize)>>, // (neighbor, color)
    cells: Vec<Cell>,
    cell_of_edge: HashMap<(usize, usize), usize>,
}

impl ColoredGraph {
    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn cells(&self) -> &[Cell] {
        &self.cells
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        self.adj[a].iter().any(|&(w, _)| w == b)
    }

    pub fn edge_color(&self, a: usize, b: usize) -> Option<usize> {
        self.adj[a].iter().find(|&&(w, _)| w == b).map(|&(_, c)| c)
    }

    pub fn cell_of_edge(&self, a: usize, b: usize) -> Option<usize> {
        self.cell_of_edge
            .get(&(a.min(b), a.max(b)))
            .copied()
    }

    pub fn isometry(&self, images: Vec<usize>) -> Result<GraphIsometry, TreeError> {
        GraphIsometry::new_on(images, self.n, |a, b| self.has_edge(a, b))
    }
}

/// Validates both structural hypotheses and materializes the cells.
///
/// Monochromatic elementary cycles are checked on a fundamental cycle basis
/// of a spanning tree plus a seeded random sample of elementary cycles;
/// completeness is checked exactly per color component.
pub fn validate_colored_graph(
    n: usize,
    edges: &[(usize, usize)],
    colors: &[usize],
) -> Result<ColoredGraph, ColoredGraphError> {
    if n == 0 || edges.len() != colors.len() {
        return Err(ColoredGraphError::NotConnected);
    }
    let mut adj: Vec<Vec<(usize, usize)>> = vec![Vec::new(); n + 1];
    let mut seen_edges: BTreeSet<(usize, usize)> = BTreeSet::new();
    for (&(a, b), &c) in edges.iter().zip(colors) {
        if a == 0 || a > n || b == 0 || b > n || a == b {
            return Err(ColoredGraphError::NotConnected);
        }
        if !seen_edges.insert((a.min(b), a.max(b))) {
            return Err(ColoredGraphError::NotConnected);
        }
        adj[a].push((b, c));
        adj[b].push((a, c));
    }
    // Connectivity and spanning tree.
    let mut parent: Vec<Option<(usize, usize)>> = vec![None; n + 1]; // (parent, color)
    let mut depth = vec![0usize; n + 1];
    let mut seen = vec![false; n + 1];
    let mut order = Vec::new();
    let mut queue = VecDeque::from([1usize]);
    seen[1] = true;
    while let Some(v) = queue.pop_front() {
        order.push(v);
        for &(w, c) in &adj[v] {
            if !seen[w] {
                seen[w] = true;
                parent[w] = Some((v, c));
                depth[w] = depth[v] + 1;
                queue.push_back(w);
            }
        }
    }
    if order.len() != n {
        return Err(ColoredGraphError::NotConnected);
    }
    // Fundamental cycles: each non-tree edge closes one cycle.
    for (&(a, b), &c) in edges.iter().zip(colors) {
        if parent[b].map(|(p, _)| p) == Some(a) || parent[a].map(|(p, _)| p) == Some(b) {
            continue;
        }
        let cycle = fundamental_cycle(a, b, &parent, &depth);
        let mono = cycle_is_monochromatic(&cycle, c, &adj);
        if !mono {
            return Err(ColoredGraphError::PolychromaticCycle(cycle));
        }
    }
    // Complete monochromatic components = the cells.
    let mut cells: Vec<Cell> = Vec::new();
    let mut cell_of_edge: HashMap<(usize, usize), usize> = HashMap::new();
    let mut assigned: BTreeSet<(usize, usize)> = BTreeSet::new();
    for (&(a, b), &c) in edges.iter().zip(colors) {
        let key = (a.min(b), a.max(b));
        if assigned.contains(&key) {
            continue;
        }
        // Flood the color-c component containing this edge.
        let mut comp: BTreeSet<usize> = BTreeSet::from([a, b]);
        let mut stack = vec![a, b];
        while let Some(v) = stack.pop() {
            for &(w, cw) in &adj[v] {
                if cw == c && comp.insert(w) {
                    stack.push(w);
                }
            }
        }
        let comp_vec: Vec<usize> = comp.iter().copied().collect();
        for (i, &u) in comp_vec.iter().enumerate() {
            for &w in &comp_vec[i + 1..] {
                match adj[u].iter().find(|&&(x, _)| x == w) {
                    Some(&(_, cw)) if cw == c => {}
                    _ => return Err(ColoredGraphError::IncompleteCell(comp_vec.clone())),
                }
            }
        }
        let cell_id = cells.len();
        for (i, &u) in comp_vec.iter().enumerate() {
            for &w in &comp_vec[i + 1..] {
                assigned.insert((u.min(w), u.max(w)));
                cell_of_edge.insert((u.min(w), u.max(w)), cell_id);
            }
        }
        cells.push(Cell {
            color: c,
            vertices: comp_vec,
        });
    }
    let graph = ColoredGraph {
        n,
        adj,
        cells,
        cell_of_edge,
    };
    randomized_cycle_spot_check(&graph)?;
    Ok(graph)
}

fn fundamental_cycle(
    a: usize,
    b: usize,
    parent: &[Option<(usize, usize)>],
    depth: &[usize],
) -> Vec<usize> {
    let (mut x, mut y) = (a, b);
    let mut left = vec![x];
    let mut right = vec![y];
    while depth[x] > depth[y] {
        x = parent[x].unwrap().0;
        left.push(x);
    }
    while depth[y] > depth[x] {
        y = parent[y].unwrap().0;
        right.push(y);
    }
    while x != y {
        x = parent[x].unwrap().0;
        y = parent[y].unwrap().0;
        left.push(x);
        right.push(y);
    }
    right.pop();
    right.reverse();
    left.extend(right);
    left
}

fn cycle_is_monochromatic(cycle: &[usize], color: usize, adj: &[Vec<(usize, usize)>]) -> bool {
    let k = cycle.len();
    (0..k).all(|i| {
        let (u, v) = (cycle[i], cycle[(i + 1) % k]);
        adj[u].iter().any(|&(w, c)| w == v && c == color)
    })
}

/// Seeded random injective walks that close into elementary cycles; each
/// sampled cycle must be monochromatic.
fn randomized_cycle_spot_check(g: &ColoredGraph) -> Result<(), ColoredGraphError> {
    let mut rng = ChaCha8Rng::seed_from_u64(0xC0105);
    let samples = 1000;
    for _ in 0..samples {
        let start = rng.gen_range(1..=g.n);
        let mut walk = vec![start];
        let mut on_walk = BTreeSet::from([start]);
        for _ in 0..g.n {
            let v = *walk.last().unwrap();
            let candidates: Vec<(usize, usize)> = g.adj[v]
                .iter()
                .copied()
                .filter(|&(w, _)| !on_walk.contains(&w) || (w == start && walk.len() >= 3))
                .collect();
            if candidates.is_empty() {
                break;
            }
            let (w, _) = candidates[rng.gen_range(0..candidates.len())];
            if w == start && walk.len() >= 3 {
                // Closed an elementary cycle.
                let color = g.edge_color(walk[0], walk[1]).unwrap();
                if !cycle_is_monochromatic(&walk, color, &g.adj) {
                    return Err(ColoredGraphError::PolychromaticCycle(walk));
                }
                break;
            }
            walk.push(w);
            on_walk.insert(w);
        }
    }
    Ok(())
}

/// The unique geodesic between two vertices: the one path in which two
/// consecutive edges never share a color. Found by search over
/// (vertex, incoming-color) states.
pub fn colored_geodesic(
    g: &ColoredGraph,
    x: usize,
    y: usize,
) -> Result<Vec<usize>, TreeError> {
    if x == 0 || x > g.n {
        return Err(TreeError::OutOfRange(x, g.n));
    }
    if y == 0 || y > g.n {
        return Err(TreeError::OutOfRange(y, g.n));
    }
    if x == y {
        return Ok(vec![x]);
    }
    // BFS over states (vertex, color of the incoming edge).
    let mut prev: HashMap<(usize, usize), (usize, usize)> = HashMap::new();
    let mut queue: VecDeque<(usize, usize)> = VecDeque::new();
    for &(w, c) in &g.adj[x] {
        if prev.insert((w, c), (x, usize::MAX)).is_none() {
            queue.push_back((w, c));
        }
    }
    while let Some((v, c)) = queue.pop_front() {
        if v == y {
            // Reconstruct.
            let mut path = vec![v];
            let mut state = (v, c);
            while state.0 != x {
                let p = prev[&state];
                path.push(p.0);
                state = p;
            }
            path.reverse();
            return Ok(path);
        }
        for &(w, cw) in &g.adj[v] {
            if cw == c {
                continue; // consecutive edges must change color
            }
            if let std::collections::hash_map::Entry::Vacant(e) = prev.entry((w, cw)) {
                e.insert((v, c));
                queue.push_back((w, cw));
            }
        }
    }
    unreachable!("validated colored graphs are connected")
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Parity {
    Even,
    Odd,
}

/// Outcome of the displacement analysis of one isometry.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FixedStructure {
    /// Even displacement: the geodesic midpoint is a fixed vertex.
    Vertex { vertex: usize, parity: Parity },
    /// Odd displacement: the cell of the middle edge is stable, with the
    /// middle edge endpoints swapped.
    Cell { cell: usize, parity: Parity },
}

/// Displacement analysis: even distance yields the fixed midpoint, odd
/// distance yields the stable cell through the middle edge.
pub fn colored_fixed_structure(
    g: &ColoredGraph,
    s: &GraphIsometry,
    x: usize,
) -> Result<FixedStructure, ColoredGraphError> {
    let sx = s.apply(x);
    if sx == x {
        return Ok(FixedStructure::Vertex {
            vertex: x,
            parity: Parity::Even,
        });
    }
    let path = colored_geodesic(g, x, sx)?;
    let d = path.len() - 1;
    if d % 2 == 0 {
        let z = path[d / 2];
        if s.apply(z) != z {
            return Err(ColoredGraphError::NotGaf(s.describe()));
        }
        Ok(FixedStructure::Vertex {
            vertex: z,
            parity: Parity::Even,
        })
    } else {
        let a = path[(d - 1) / 2];
        let b = path[(d + 1) / 2];
        let cell = g
            .cell_of_edge(a, b)
            .expect("middle edge lies in a cell");
        // Certify s(Y) = Y and s(a) = b.
        if s.apply(a) != b {
            return Err(ColoredGraphError::NotGaf(s.describe()));
        }
        let verts: BTreeSet<usize> = g.cells[cell].vertices.iter().copied().collect();
        let image: BTreeSet<usize> = verts.iter().map(|&v| s.apply(v)).collect();
        if image != verts {
            return Err(ColoredGraphError::NotGaf(s.describe()));
        }
        Ok(FixedStructure::Cell {
            cell,
            parity: Parity::Odd,
        })
    }
}

/// A vertex fixed by every generator, by the inductive argument: the even
/// case moves the common fixed vertex to the geodesic midpoint; the odd
/// case restricts the group to the stable cell (at most four vertices,
/// where every GAF is a GAG) and takes the common fixed vertex there.
pub fn colored_global_fixed_point(
    g: &ColoredGraph,
    gens: &[GraphIsometry],
) -> Result<usize, ColoredGraphError> {
    for cell in &g.cells {
        if cell.vertices.len() > 4 {
            return Err(ColoredGraphError::CellTooLarge(cell.vertices.clone()));
        }
    }
    let mut x0 = 1usize;
    let mut processed: Vec<GraphIsometry> = Vec::new();
    for s in gens {
        if s.apply(x0) == x0 {
            processed.push(s.clone());
            continue;
        }
        if processed.iter().all(|p| p.is_identity()) {
            match s.fixed_vertices().into_iter().next() {
                Some(v) => {
                    x0 = v;
                    processed.push(s.clone());
                    continue;
                }
                None => {
                    // No fixed vertex: analyze the displacement structure.
                }
            }
        }
        match colored_fixed_structure(g, s, x0)? {
            FixedStructure::Vertex { vertex, .. } => {
                let mut ok = true;
                for p in &processed {
                    ok = ok && p.apply(vertex) == vertex;
                }
                if !ok {
                    return Err(ColoredGraphError::NotGaf(s.describe()));
                }
                x0 = vertex;
            }
            FixedStructure::Cell { cell, .. } => {
                // Restrict everything processed so far plus s to the cell.
                let cell_verts = g.cells[cell].vertices.clone();
                let mut group_gens: Vec<Permutation> = Vec::new();
                for t in processed.iter().chain(std::iter::once(s)) {
                    group_gens.push(restrict_to_cell(t, &cell_verts).ok_or_else(|| {
                        ColoredGraphError::NotGaf(t.describe())
                    })?);
                }
                let small = generate_group(&group_gens, 32).expect("cell group is tiny");
                let verdict = classify_action(&small);
                if verdict.kind != VerdictKind::Gag {
                    // Lift a violator: some word in the restrictions has no
                    // fixed vertex in the cell, and cells of at most four
                    // vertices make every GAF a GAG, so the input group was
                    // not a GAF.
                    return Err(ColoredGraphError::NotGaf(match verdict.gaf_violator {
                        Some(v) => v.cycle_string(),
                        None => s.describe(),
                    }));
                }
                x0 = cell_verts[verdict.gag_witness.unwrap() - 1];
            }
        }
        // The new vertex must be commonly fixed.
        for t in processed.iter().chain(std::iter::once(s)) {
            if t.apply(x0) != x0 {
                return Err(ColoredGraphError::NotGaf(t.describe()));
            }
        }
        processed.push(s.clone());
    }
    Ok(x0)
}

/// Restriction of an isometry to a stable cell, as a permutation of the
/// cell's vertex list; `None` when the cell is not stable.
fn restrict_to_cell(s: &GraphIsometry, cell_verts: &[usize]) -> Option<Permutation> {
    let pos: HashMap<usize, usize> = cell_verts
        .iter()
        .enumerate()
        .map(|(i, &v)| (v, i + 1))
        .collect();
    let mut images = vec![0usize; cell_verts.len()];
    for (i, &v) in cell_verts.iter().enumerate() {
        images[i] = *pos.get(&s.apply(v))?;
    }
    Permutation::from_images(images).ok()
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Two triangles sharing vertex 1: cells {1,2,3} blue and {1,4,5} red.
    fn two_triangles() -> ColoredGraph {
        validate_colored_graph(
            5,
            &[(1, 2), (2, 3), (3, 1), (1, 4), (4, 5), (5, 1)],
            &[0, 0, 0, 1, 1, 1],
        )
        .unwrap()
    }

    #[test]
    fn two_triangles_validate_with_two_cells() {
        let g = two_triangles();
        assert_eq!(g.cells().len(), 2);
    }

    #[test]
    fn alternating_square_rejected() {
        let err = validate_colored_graph(4, &[(1, 2), (2, 3), (3, 4), (4, 1)], &[0, 1, 0, 1])
            .unwrap_err();
        assert!(matches!(err, ColoredGraphError::PolychromaticCycle(_)));
    }

    #[test]
    fn rainbow_path_is_valid_with_singleton_cells() {
        let g = validate_colored_graph(4, &[(1, 2), (2, 3), (3, 4)], &[0, 1, 2]).unwrap();
        assert_eq!(g.cells().len(), 3);
        assert!(g.cells().iter().all(|c| c.vertices.len() == 2));
    }

    #[test]
    fn incomplete_component_rejected() {
        // A path of two same-colored edges is not a complete component.
        let err =
            validate_colored_graph(3, &[(1, 2), (2, 3)], &[0, 0]).unwrap_err();
        assert!(matches!(err, ColoredGraphError::IncompleteCell(_)));
    }

    #[test]
    fn geodesic_through_shared_vertex() {
        let g = two_triangles();
        let path = colored_geodesic(&g, 2, 4).unwrap();
        assert_eq!(path, vec![2, 1, 4]);
        // Agrees with plain BFS distance.
        assert_eq!(path.len() - 1, 2);
    }

    #[test]
    fn geodesic_trivial_cases() {
        let g = two_triangles();
        assert_eq!(colored_geodesic(&g, 3, 3).unwrap(), vec![3]);
        assert_eq!(colored_geodesic(&g, 2, 3).unwrap(), vec![2, 3]);
    }

    #[test]
    fn fixed_structure_even_case() {
        let g = two_triangles();
        let id = GraphIsometry::identity(5);
        assert_eq!(
            colored_fixed_structure(&g, &id, 2).unwrap(),
            FixedStructure::Vertex {
                vertex: 2,
                parity: Parity::Even
            }
        );
    }

    #[test]
    fn fixed_structure_tree_reduction() {
        // All cells of size 2: a path with distinct colors reduces to the
        // tree case.
        let g = validate_colored_graph(
            5,
            &[(1, 2), (2, 3), (3, 4), (4, 5)],
            &[0, 1, 2, 3],
        )
        .unwrap();
        let refl = g.isometry(vec![5, 4, 3, 2, 1]).unwrap();
        assert_eq!(
            colored_fixed_structure(&g, &refl, 1).unwrap(),
            FixedStructure::Vertex {
                vertex: 3,
                parity: Parity::Even
            }
        );
    }

    #[test]
    fn fixed_structure_odd_case_in_k4() {
        // K4, one cell; a transposition moves x at odd distance 1.
        let edges = [(1, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 4)];
        let g = validate_colored_graph(4, &edges, &[0; 6]).unwrap();
        let swap = g.isometry(vec![2, 1, 3, 4]).unwrap();
        match colored_fixed_structure(&g, &swap, 1).unwrap() {
            FixedStructure::Cell { cell, parity } => {
                assert_eq!(parity, Parity::Odd);
                assert_eq!(g.cells()[cell].vertices, vec![1, 2, 3, 4]);
            }
            other => panic!("expected cell, got {other:?}"),
        }
    }

    #[test]
    fn global_fixed_point_two_triangles() {
        let g = two_triangles();
        // Swap the non-shared vertices of each triangle.
        let g1 = g.isometry(vec![1, 3, 2, 4, 5]).unwrap();
        let g2 = g.isometry(vec![1, 2, 3, 5, 4]).unwrap();
        assert_eq!(colored_global_fixed_point(&g, &[g1, g2]).unwrap(), 1);
    }

    #[test]
    fn global_fixed_point_single_generator() {
        let g = two_triangles();
        let g1 = g.isometry(vec![1, 3, 2, 4, 5]).unwrap();
        let v = colored_global_fixed_point(&g, &[g1.clone()]).unwrap();
        assert_eq!(g1.apply(v), v);
    }

    #[test]
    fn k5_cell_rejected() {
        let mut edges = Vec::new();
        for a in 1..=5 {
            for b in a + 1..=5 {
                edges.push((a, b));
            }
        }
        let g = validate_colored_graph(5, &edges, &vec![0; edges.len()]).unwrap();
        let id = GraphIsometry::identity(5);
        assert!(matches!(
            colored_global_fixed_point(&g, &[id]),
            Err(ColoredGraphError::CellTooLarge(_))
        ));
    }

    #[test]
    fn odd_case_resolves_through_cell_group() {
        // K4 with a pendant edge; generators act inside the K4 cell.
        let edges = [(1, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 4), (4, 5)];
        let colors = [0, 0, 0, 0, 0, 0, 1];
        let g = validate_colored_graph(5, &edges, &colors).unwrap();
        // Swap 1,2 and swap 2,3: both fix 4 (and 5).
        let a = g.isometry(vec![2, 1, 3, 4, 5]).unwrap();
        let b = g.isometry(vec![1, 3, 2, 4, 5]).unwrap();
        let v = colored_global_fixed_point(&g, &[a.clone(), b.clone()]).unwrap();
        assert!(a.apply(v) == v && b.apply(v) == v);
    }

    #[test]
    fn tree_case_agreement() {
        // On all-cells-size-2 graphs the colored machinery agrees with the
        // tree one.
        let edges = [(1, 2), (2, 3), (3, 4), (4, 5)];
        let g = validate_colored_graph(5, &edges, &[0, 1, 2, 3]).unwrap();
        let t = super::super::Tree::new(5, &edges).unwrap();
        let refl = g.isometry(vec![5, 4, 3, 2, 1]).unwrap();
        let via_tree = super::super::tree_global_fixed_point(&t, &[refl.clone()]).unwrap();
        let via_colored = colored_global_fixed_point(&g, &[refl]).unwrap();
        assert_eq!(via_tree, via_colored);
        for x in 1..=5 {
            for y in 1..=5 {
                assert_eq!(
                    colored_geodesic(&g, x, y).unwrap().len() - 1,
                    t.distance(x, y).unwrap()
                );
            }
        }
    }
}
