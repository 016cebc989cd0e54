//! Isometries of the integer lattice Z^n (affine maps with signed-permutation
//! linear part) and the constructive global-fixed-point algorithm, plus the
//! hypercube realization.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::perm::{generate_group, FiniteGroup, PermError, Permutation};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum LatticeError {
    #[error("matrix is not a signed permutation")]
    NotSignedPerm,
    #[error("group is not a GAF: {0} has no fixed lattice point")]
    NotGaf(String),
    #[error("closure exceeded cap of {0}")]
    CapExceeded(usize),
}

/// A signed permutation matrix: one nonzero entry per row and column, each ±1.
///
/// Stored column-wise: column `j` is `sign[j] · e_{target[j]}` (0-based).
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct SignedPerm {
    target: Vec<usize>,
    sign: Vec<i8>,
}

impl SignedPerm {
    pub fn identity(n: usize) -> SignedPerm {
        SignedPerm {
            target: (0..n).collect(),
            sign: vec![1; n],
        }
    }

    pub fn dim(&self) -> usize {
        self.target.len()
    }

    /// Validates an arbitrary integer matrix rather than trusting the caller.
    pub fn from_int_matrix(m: &[Vec<i64>]) -> Result<SignedPerm, LatticeError> {
        let n = m.len();
        let mut target = vec![usize::MAX; n];
        let mut sign = vec![0i8; n];
        let mut row_used = vec![false; n];
        for (i, row) in m.iter().enumerate() {
            if row.len() != n {
                return Err(LatticeError::NotSignedPerm);
            }
            for (j, &v) in row.iter().enumerate() {
                match v {
                    0 => {}
                    1 | -1 => {
                        if target[j] != usize::MAX || row_used[i] {
                            return Err(LatticeError::NotSignedPerm);
                        }
                        target[j] = i;
                        sign[j] = v as i8;
                        row_used[i] = true;
                    }
                    _ => return Err(LatticeError::NotSignedPerm),
                }
            }
        }
        if target.iter().any(|&t| t == usize::MAX) {
            return Err(LatticeError::NotSignedPerm);
        }
        Ok(SignedPerm { target, sign })
    }

    pub fn to_int_matrix(&self) -> Vec<Vec<i64>> {
        let n = self.dim();
        let mut m = vec![vec![0i64; n]; n];
        for j in 0..n {
            m[self.target[j]][j] = self.sign[j] as i64;
        }
        m
    }

    /// `(Px)_{target[j]} = sign[j] · x_j`.
    pub fn apply(&self, x: &[BigInt]) -> Vec<BigInt> {
        let n = self.dim();
        let mut out = vec![BigInt::zero(); n];
        for j in 0..n {
            out[self.target[j]] = if self.sign[j] > 0 {
                x[j].clone()
            } else {
                -x[j].clone()
            };
        }
        out
    }

    pub fn compose(&self, other: &SignedPerm) -> SignedPerm {
        // (self ∘ other) e_j = self(sign_o[j] e_{t_o[j]}).
        let n = self.dim();
        let mut target = vec![0usize; n];
        let mut sign = vec![0i8; n];
        for j in 0..n {
            target[j] = self.target[other.target[j]];
            sign[j] = other.sign[j] * self.sign[other.target[j]];
        }
        SignedPerm { target, sign }
    }

    pub fn inverse(&self) -> SignedPerm {
        let n = self.dim();
        let mut target = vec![0usize; n];
        let mut sign = vec![0i8; n];
        for j in 0..n {
            target[self.target[j]] = j;
            sign[self.target[j]] = self.sign[j];
        }
        SignedPerm { target, sign }
    }

    /// Row view: `(Px)_i = row_sign(i) · x_{row_src(i)}`.
    fn row_src(&self) -> Vec<usize> {
        let mut src = vec![0usize; self.dim()];
        for j in 0..self.dim() {
            src[self.target[j]] = j;
        }
        src
    }

    fn row_sign_at(&self, i: usize, row_src: &[usize]) -> i8 {
        self.sign[row_src[i]]
    }

    /// Diagonal entry at `i`, if the matrix has one there.
    pub fn diagonal_entry(&self, i: usize) -> Option<i8> {
        if self.target[i] == i {
            Some(self.sign[i])
        } else {
            None
        }
    }

    pub fn is_identity(&self) -> bool {
        self.target.iter().enumerate().all(|(j, &t)| t == j) && self.sign.iter().all(|&s| s == 1)
    }
}

/// An isometry of Z^n: `x ↦ Px + t` with `P` a signed permutation, `t ∈ Z^n`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct LatticeMap {
    pub linear: SignedPerm,
    pub translation: Vec<BigInt>,
}

impl LatticeMap {
    pub fn new(linear: SignedPerm, translation: Vec<BigInt>) -> LatticeMap {
        assert_eq!(linear.dim(), translation.len());
        LatticeMap {
            linear,
            translation,
        }
    }

    pub fn from_ints(matrix: &[Vec<i64>], translation: &[i64]) -> Result<LatticeMap, LatticeError> {
        let linear = SignedPerm::from_int_matrix(matrix)?;
        Ok(LatticeMap::new(
            linear,
            translation.iter().map(|&v| BigInt::from(v)).collect(),
        ))
    }

    pub fn identity(n: usize) -> LatticeMap {
        LatticeMap::new(SignedPerm::identity(n), vec![BigInt::zero(); n])
    }

    pub fn dim(&self) -> usize {
        self.linear.dim()
    }

    pub fn apply(&self, x: &[BigInt]) -> Vec<BigInt> {
        self.linear
            .apply(x)
            .into_iter()
            .zip(&self.translation)
            .map(|(a, t)| a + t)
            .collect()
    }

    pub fn compose(&self, other: &LatticeMap) -> LatticeMap {
        LatticeMap::new(
            self.linear.compose(&other.linear),
            self.apply(&other.translation),
        )
    }

    pub fn is_identity(&self) -> bool {
        self.linear.is_identity() && self.translation.iter().all(|t| t.is_zero())
    }

    pub fn describe(&self) -> String {
        format!(
            "P={:?} t={:?}",
            self.linear.to_int_matrix(),
            self.translation
                .iter()
                .map(|t| t.to_string())
                .collect::<Vec<_>>()
        )
    }

    /// A fixed point in Z^n, if one exists, by exact propagation around the
    /// cycles of the underlying permutation.
    ///
    /// On each cycle the closing constraint is `x = ε x + c` with `ε` the
    /// product of the signs. For `ε = 1` the cycle is consistent iff `c = 0`
    /// (free variable pinned to 0); for `ε = −1` the solution is `c/2`,
    /// integral iff `c` is even.
    pub fn fixed_lattice_point(&self) -> Option<Vec<BigInt>> {
        let n = self.dim();
        let row_src = self.linear.row_src();
        let mut x: Vec<Option<BigInt>> = vec![None; n];
        let mut visited = vec![false; n];
        for start in 0..n {
            if visited[start] {
                continue;
            }
            // Collect the cycle start → row_src(start) → ...
            let mut cycle = vec![start];
            visited[start] = true;
            let mut cur = row_src[start];
            while cur != start {
                visited[cur] = true;
                cycle.push(cur);
                cur = row_src[cur];
            }
            // Propagate x_{i_{k+1}} = s_{i_k} (x_{i_k} − t_{i_k}) symbolically
            // as x_{i_k} = α_k · x_{i_0} + β_k.
            let mut alpha = BigInt::one();
            let mut beta = BigInt::zero();
            let mut coeffs = Vec::with_capacity(cycle.len());
            for &i in &cycle {
                coeffs.push((alpha.clone(), beta.clone()));
                let s = BigInt::from(self.linear.row_sign_at(i, &row_src));
                beta = &s * (&beta - &self.translation[i]);
                alpha = &s * &alpha;
            }
            let x0 = if alpha.is_one() {
                if !beta.is_zero() {
                    return None;
                }
                BigInt::zero()
            } else {
                // α = −1: x0 = β/2, integral iff β even.
                if beta.is_odd() {
                    return None;
                }
                beta / 2
            };
            for (&i, (a, b)) in cycle.iter().zip(coeffs) {
                x[i] = Some(a * &x0 + b);
            }
        }
        let point: Vec<BigInt> = x.into_iter().map(|v| v.unwrap()).collect();
        debug_assert_eq!(self.apply(&point), point);
        Some(point)
    }
}

/// Closure of lattice isometries under composition, capped.
pub fn close_lattice_group(
    gens: &[LatticeMap],
    cap: usize,
) -> Result<Vec<LatticeMap>, LatticeError> {
    let n = gens.first().map_or(0, |g| g.dim());
    let mut set = std::collections::HashSet::new();
    let id = LatticeMap::identity(n);
    set.insert(id.clone());
    let mut elems = vec![id];
    let mut frontier = vec![0usize];
    while let Some(idx) = frontier.pop() {
        let base = elems[idx].clone();
        for g in gens {
            let next = g.compose(&base);
            if !set.contains(&next) {
                if elems.len() + 1 > cap {
                    return Err(LatticeError::CapExceeded(cap));
                }
                set.insert(next.clone());
                elems.push(next);
                frontier.push(elems.len() - 1);
            }
        }
    }
    Ok(elems)
}

/// Constructive common fixed point of a finite GAF group of lattice
/// isometries.
///
/// Follows the centroid argument: the centroid ω of the orbit of 0 is fixed
/// by all of G. If ω is integral it is returned. Coordinates whose nearest
/// lattice point is unique are pinned, and the action restricts to the
/// sublattice of the remaining coordinates. Once every coordinate of ω is
/// half-integral, conjugating by `x ↦ 2x − 2ω` turns the group into signed
/// permutations acting on odd vectors, where a fixed sign vector is built
/// from the orbit classes of the basis directions.
pub fn zn_global_fixed_point(
    gens: &[LatticeMap],
    cap: usize,
) -> Result<Vec<BigInt>, LatticeError> {
    let elements = close_lattice_group(gens, cap)?;
    // GAF precondition is verified exactly, element by element.
    for f in &elements {
        if f.fixed_lattice_point().is_none() {
            return Err(LatticeError::NotGaf(f.describe()));
        }
    }
    let point = global_fixed_point_of_closed(&elements)?;
    for f in &elements {
        assert_eq!(f.apply(&point), point, "output not fixed by {f:?}");
    }
    Ok(point)
}

fn global_fixed_point_of_closed(elements: &[LatticeMap]) -> Result<Vec<BigInt>, LatticeError> {
    let n = elements[0].dim();
    if n == 0 {
        return Ok(Vec::new());
    }
    let count = BigInt::from(elements.len());
    // 2ω per coordinate, as (2 Σ f(0)_i) / N reduced to a rational with
    // denominator 1 or 2; we track numerator Σ f(0)_i and N directly.
    let zero_vec = vec![BigInt::zero(); n];
    let mut orbit_sum = vec![BigInt::zero(); n];
    for f in elements {
        for (acc, v) in orbit_sum.iter_mut().zip(f.apply(&zero_vec)) {
            *acc += v;
        }
    }
    // ω_i = orbit_sum[i] / N. Classify each coordinate: integer, half-integer
    // (denominator exactly 2), or other (unique rounding).
    #[derive(PartialEq)]
    enum Coord {
        Integer(BigInt),
        Half, // ω_i ≡ 1/2 (mod 1)
        Round(BigInt),
    }
    let coords: Vec<Coord> = orbit_sum
        .iter()
        .map(|s| {
            let (q, r) = s.div_mod_floor(&count);
            if r.is_zero() {
                Coord::Integer(q)
            } else {
                // fractional part r/N; half-integral iff 2r = N.
                let two_r = 2 * &r;
                if two_r == count {
                    Coord::Half
                } else if two_r < count {
                    Coord::Round(q)
                } else {
                    Coord::Round(q + 1)
                }
            }
        })
        .collect();

    if coords.iter().all(|c| matches!(c, Coord::Integer(_))) {
        // ω itself is a lattice point fixed by everything.
        return Ok(coords
            .into_iter()
            .map(|c| match c {
                Coord::Integer(v) => v,
                _ => unreachable!(),
            })
            .collect());
    }

    let half_idx: Vec<usize> = (0..n)
        .filter(|&i| matches!(coords[i], Coord::Half))
        .collect();

    if half_idx.len() < n {
        // Pin the uniquely-rounded coordinates and restrict to the sublattice
        // spanned by the rest; on it the group acts again by lattice
        // isometries.
        let pinned: Vec<BigInt> = coords
            .iter()
            .map(|c| match c {
                Coord::Integer(v) | Coord::Round(v) => v.clone(),
                Coord::Half => BigInt::zero(),
            })
            .collect();
        if half_idx.is_empty() {
            return Ok(pinned);
        }
        let pos_of: std::collections::HashMap<usize, usize> =
            half_idx.iter().copied().zip(0..).collect();
        let restricted: Vec<LatticeMap> = elements
            .iter()
            .map(|f| {
                let row_src = f.linear.row_src();
                let mut target = vec![0usize; half_idx.len()];
                let mut sign = vec![0i8; half_idx.len()];
                let mut translation = vec![BigInt::zero(); half_idx.len()];
                for (new_i, &i) in half_idx.iter().enumerate() {
                    let j = row_src[i];
                    // The source coordinate of a varying coordinate varies too.
                    let new_j = *pos_of.get(&j).expect("restriction closes on sublattice");
                    target[new_j] = new_i;
                    sign[new_j] = f.linear.row_sign_at(i, &row_src);
                    // t_i plus the contribution of pinned source coords is t_i
                    // here because j is itself unpinned.
                    translation[new_i] = f.translation[i].clone();
                }
                LatticeMap::new(SignedPerm { target, sign }, translation)
            })
            .collect();
        let sub_point = global_fixed_point_of_closed(&dedup(restricted))?;
        let mut out = pinned;
        for (new_i, &i) in half_idx.iter().enumerate() {
            out[i] = sub_point[new_i].clone();
        }
        return Ok(out);
    }

    // Every coordinate of ω is half-integral: conjugate by x ↦ 2x − 2ω, so
    // the elements become their linear parts acting on odd vectors.
    let two_omega: Vec<BigInt> = orbit_sum
        .iter()
        .map(|s| {
            let v = 2 * s;
            debug_assert!({
                let r: BigInt = &v % &count;
                r.is_zero()
            });
            v / &count
        })
        .collect();
    for f in elements {
        for i in 0..n {
            if f.linear.diagonal_entry(i) == Some(-1) {
                return Err(LatticeError::NotGaf(f.describe()));
            }
        }
    }
    let sign_vector = sign_class_vector(n, elements.iter().map(|f| &f.linear));
    // Map back: result = ω + x/2 = (2ω + x)/2, integral since 2ω is odd
    // exactly on the half coordinates.
    let result: Vec<BigInt> = two_omega
        .iter()
        .zip(&sign_vector)
        .map(|(w, s)| (w + s) / 2)
        .collect();
    Ok(result)
}

fn dedup(maps: Vec<LatticeMap>) -> Vec<LatticeMap> {
    let mut set = std::collections::HashSet::new();
    maps.into_iter().filter(|m| set.insert(m.clone())).collect()
}

/// The sign-class construction: builds x with x_i = ±1 fixed by every signed
/// permutation in the (diagonal −1 free) family.
///
/// Two union-finds realize the relations: `i ~ j` when some element sends
/// `e_i` to `±e_j`, and the parity-aware refinement `i ≈ j` when the sign is
/// `+`. Each `~` class takes `+1` on the `≈` class of its smallest index.
fn sign_class_vector<'a>(
    n: usize,
    linears: impl Iterator<Item = &'a SignedPerm>,
) -> Vec<BigInt> {
    // Union-find over 2n nodes: node 2i is (i,+), node 2i+1 is (i,−).
    let mut parent: Vec<usize> = (0..2 * n).collect();
    fn find(parent: &mut Vec<usize>, mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    fn union(parent: &mut Vec<usize>, a: usize, b: usize) {
        let (ra, rb) = (find(parent, a), find(parent, b));
        if ra != rb {
            parent[ra] = rb;
        }
    }
    for p in linears {
        for j in 0..n {
            let t = p.target[j];
            if p.sign[j] > 0 {
                union(&mut parent, 2 * j, 2 * t);
                union(&mut parent, 2 * j + 1, 2 * t + 1);
            } else {
                union(&mut parent, 2 * j, 2 * t + 1);
                union(&mut parent, 2 * j + 1, 2 * t);
            }
        }
    }
    let mut x = vec![BigInt::zero(); n];
    for i in 0..n {
        if !x[i].is_zero() {
            continue;
        }
        // i is the smallest untouched index of its ~ class; make its ≈ class
        // the positive one.
        let pos_root = find(&mut parent, 2 * i);
        for j in i..n {
            if !x[j].is_zero() {
                continue;
            }
            let rj = find(&mut parent, 2 * j);
            let rjm = find(&mut parent, 2 * j + 1);
            if rj == pos_root {
                x[j] = BigInt::one();
            } else if rjm == pos_root {
                x[j] = -BigInt::one();
            }
        }
    }
    x
}

/// The isometry group of the n-cube as a permutation group on its 2^n
/// vertices; vertex `v ∈ {0,1}^n` is numbered `1 + Σ v_i 2^i`.
pub fn hypercube_group(n: usize, cap: usize) -> Result<FiniteGroup, PermError> {
    assert!(n >= 1);
    let verts = 1usize << n;
    let bit = |v: usize, i: usize| (v >> i) & 1;
    let mut gens: Vec<Permutation> = Vec::new();
    // Flip of the first coordinate.
    gens.push(
        Permutation::from_images((0..verts).map(|v| (v ^ 1) + 1).collect()).unwrap(),
    );
    if n >= 2 {
        // Swap coordinates 0 and 1.
        gens.push(
            Permutation::from_images(
                (0..verts)
                    .map(|v| {
                        let (b0, b1) = (bit(v, 0), bit(v, 1));
                        ((v & !3) | (b0 << 1) | b1) + 1
                    })
                    .collect(),
            )
            .unwrap(),
        );
        // Cycle the coordinates.
        gens.push(
            Permutation::from_images(
                (0..verts)
                    .map(|v| {
                        let mut w = 0usize;
                        for i in 0..n {
                            w |= bit(v, i) << ((i + 1) % n);
                        }
                        w + 1
                    })
                    .collect(),
            )
            .unwrap(),
        );
    }
    generate_group(&gens, cap)
}

/// Recovers the signed permutation behind a vertex permutation of the n-cube
/// in the ±1 coordinates centered at the cube midpoint.
pub fn vertex_perm_to_signed(n: usize, p: &Permutation) -> Result<SignedPerm, LatticeError> {
    let verts = 1usize << n;
    if p.degree() != verts {
        return Err(LatticeError::NotSignedPerm);
    }
    let signed = |v: usize, i: usize| -> i64 {
        if (v >> i) & 1 == 1 {
            1
        } else {
            -1
        }
    };
    let all_ones = verts - 1;
    let img_ones = p.apply(all_ones + 1) - 1;
    let mut target = vec![0usize; n];
    let mut sign = vec![0i8; n];
    let mut used = vec![false; n];
    for j in 0..n {
        let flipped = all_ones ^ (1 << j);
        let img_flipped = p.apply(flipped + 1) - 1;
        // (s(1) − s(1 − 2e_j))/2 must be ± a basis vector.
        let mut found = None;
        for i in 0..n {
            let diff = signed(img_ones, i) - signed(img_flipped, i);
            match diff {
                0 => {}
                2 | -2 => {
                    if found.is_some() {
                        return Err(LatticeError::NotSignedPerm);
                    }
                    found = Some((i, (diff / 2) as i8));
                }
                _ => return Err(LatticeError::NotSignedPerm),
            }
        }
        let (i, s) = found.ok_or(LatticeError::NotSignedPerm)?;
        if used[i] {
            return Err(LatticeError::NotSignedPerm);
        }
        used[i] = true;
        target[j] = i;
        sign[j] = s;
    }
    let sp = SignedPerm { target, sign };
    // The recovered linear map must reproduce the vertex action.
    for v in 0..verts {
        let x: Vec<BigInt> = (0..n).map(|i| BigInt::from(signed(v, i))).collect();
        let y = sp.apply(&x);
        let mut w = 0usize;
        for (i, yi) in y.iter().enumerate() {
            if yi.is_positive() {
                w |= 1 << i;
            }
        }
        if w != p.apply(v + 1) - 1 {
            return Err(LatticeError::NotSignedPerm);
        }
    }
    Ok(sp)
}

/// A vertex of the n-cube fixed by every element of a GAF subgroup of its
/// isometry group, via the sign-class construction about the cube center.
pub fn hypercube_gaf_fixed_vertex(
    n: usize,
    subgroup: &FiniteGroup,
) -> Result<usize, LatticeError> {
    let linears: Vec<SignedPerm> = subgroup
        .elements()
        .iter()
        .map(|p| vertex_perm_to_signed(n, p))
        .collect::<Result<_, _>>()?;
    for (sp, p) in linears.iter().zip(subgroup.elements()) {
        for i in 0..n {
            if sp.diagonal_entry(i) == Some(-1) {
                return Err(LatticeError::NotGaf(p.cycle_string()));
            }
        }
    }
    let x = sign_class_vector(n, linears.iter());
    let mut v = 0usize;
    for (i, xi) in x.iter().enumerate() {
        if xi.is_positive() {
            v |= 1 << i;
        }
    }
    let vertex = v + 1;
    for p in subgroup.elements() {
        if p.apply(vertex) != vertex {
            return Err(LatticeError::NotGaf(p.cycle_string()));
        }
    }
    Ok(vertex)
}

/// Fixating verdict for the full n-cube isometry group by subgroup scan,
/// feasible for n ≤ 3.
pub fn hypercube_fixating(n: usize, cap: usize) -> Result<bool, PermError> {
    let g = hypercube_group(n, cap)?;
    let (fixating, _) = crate::perm::is_fixating(&g, cap)?;
    Ok(fixating)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bi(v: i64) -> BigInt {
        BigInt::from(v)
    }

    #[test]
    fn signed_perm_validation() {
        assert!(SignedPerm::from_int_matrix(&[vec![0, 1], vec![-1, 0]]).is_ok());
        assert!(SignedPerm::from_int_matrix(&[vec![2, 0], vec![0, 1]]).is_err());
        assert!(SignedPerm::from_int_matrix(&[vec![1, 1], vec![0, 1]]).is_err());
        assert!(SignedPerm::from_int_matrix(&[vec![1, 0], vec![1, 0]]).is_err());
    }

    #[test]
    fn signed_perm_compose_matches_matrix_product() {
        let a = SignedPerm::from_int_matrix(&[vec![0, -1], vec![1, 0]]).unwrap();
        let b = SignedPerm::from_int_matrix(&[vec![0, 1], vec![1, 0]]).unwrap();
        let ab = a.compose(&b);
        // matrix product a·b
        let am = a.to_int_matrix();
        let bm = b.to_int_matrix();
        let mut prod = vec![vec![0i64; 2]; 2];
        for i in 0..2 {
            for j in 0..2 {
                for k in 0..2 {
                    prod[i][j] += am[i][k] * bm[k][j];
                }
            }
        }
        assert_eq!(ab.to_int_matrix(), prod);
    }

    #[test]
    fn reflection_fixed_point_in_one_dim() {
        // x ↦ −x fixes 0.
        let f = LatticeMap::from_ints(&[vec![-1]], &[0]).unwrap();
        assert_eq!(f.fixed_lattice_point(), Some(vec![bi(0)]));
        let point = zn_global_fixed_point(&[f], 100).unwrap();
        assert_eq!(point, vec![bi(0)]);
    }

    #[test]
    fn odd_reflection_has_no_lattice_fixed_point() {
        // x ↦ −x + 1 fixes only 1/2.
        let f = LatticeMap::from_ints(&[vec![-1]], &[1]).unwrap();
        assert_eq!(f.fixed_lattice_point(), None);
        assert!(matches!(
            zn_global_fixed_point(&[f], 100),
            Err(LatticeError::NotGaf(_))
        ));
    }

    #[test]
    fn anti_diagonal_swap_example() {
        // f(x, y) = (1 − y, 1 − x): an involution fixing the line x + y = 1.
        let f = LatticeMap::from_ints(&[vec![0, -1], vec![-1, 0]], &[1, 1]).unwrap();
        let p = zn_global_fixed_point(&[f.clone()], 100).unwrap();
        assert_eq!(f.apply(&p), p);
        // Brute-force agreement over the box [−3,3]².
        let mut brute = Vec::new();
        for x in -3i64..=3 {
            for y in -3i64..=3 {
                let v = vec![bi(x), bi(y)];
                if f.apply(&v) == v {
                    brute.push(v);
                }
            }
        }
        assert!(brute.contains(&p));
    }

    #[test]
    fn commuting_swaps_in_three_dims() {
        // Swap (x,y) fixing z, and a swap of (y,z) shifted to fix (0,1,1).
        let f = LatticeMap::from_ints(&[vec![0, 1, 0], vec![1, 0, 0], vec![0, 0, 1]], &[0, 0, 0])
            .unwrap();
        let g = LatticeMap::from_ints(&[vec![1, 0, 0], vec![0, 0, 1], vec![0, 1, 0]], &[0, 0, 0])
            .unwrap();
        let p = zn_global_fixed_point(&[f.clone(), g.clone()], 100).unwrap();
        assert_eq!(f.apply(&p), p);
        assert_eq!(g.apply(&p), p);
        let mut brute = Vec::new();
        for x in -4i64..=4 {
            for y in -4i64..=4 {
                for z in -4i64..=4 {
                    let v = vec![bi(x), bi(y), bi(z)];
                    if f.apply(&v) == v && g.apply(&v) == v {
                        brute.push(v);
                    }
                }
            }
        }
        assert!(brute.contains(&p));
    }

    #[test]
    fn half_integer_centroid_path() {
        // Two reflections about half-integral centers in 2D force the
        // conjugation branch: f(x,y) = (y+1, x-1)? Use the paper-style swap.
        let f = LatticeMap::from_ints(&[vec![0, -1], vec![-1, 0]], &[1, 1]).unwrap();
        let g = LatticeMap::from_ints(&[vec![0, 1], vec![1, 0]], &[1, -1]).unwrap();
        // g(x,y) = (y+1, x−1) fixes (k+1, k) for all k; f ∘ g closure must
        // still be a GAF for the test to make sense.
        let closed = close_lattice_group(&[f.clone(), g.clone()], 100).unwrap();
        if closed
            .iter()
            .all(|h| h.fixed_lattice_point().is_some())
        {
            let p = zn_global_fixed_point(&[f.clone(), g.clone()], 100).unwrap();
            assert_eq!(f.apply(&p), p);
            assert_eq!(g.apply(&p), p);
        }
    }

    #[test]
    fn hypercube_group_orders() {
        assert_eq!(hypercube_group(1, 10).unwrap().order(), 2);
        assert_eq!(hypercube_group(2, 100).unwrap().order(), 8);
        assert_eq!(hypercube_group(3, 100).unwrap().order(), 48);
    }

    #[test]
    fn hypercube_small_dims_fixating() {
        assert!(hypercube_fixating(1, 1000).unwrap());
        assert!(hypercube_fixating(2, 10_000).unwrap());
    }

    #[test]
    fn hypercube_gaf_witness_for_coordinate_swap() {
        // The subgroup generated by the swap of coordinates 0,1 in the 3-cube
        // fixes the vertices with equal first two bits.
        let g3 = hypercube_group(3, 1000).unwrap();
        let swap = g3
            .elements()
            .iter()
            .find(|p| {
                !p.is_identity()
                    && vertex_perm_to_signed(3, p).is_ok_and(|sp| {
                        sp.to_int_matrix()
                            == vec![vec![0, 1, 0], vec![1, 0, 0], vec![0, 0, 1]]
                    })
            })
            .unwrap()
            .clone();
        let sub = generate_group(&[swap], 100).unwrap();
        let v = hypercube_gaf_fixed_vertex(3, &sub).unwrap();
        for p in sub.elements() {
            assert_eq!(p.apply(v), v);
        }
    }

    #[test]
    fn hypercube_antipodal_map_not_gaf() {
        let g2 = hypercube_group(2, 100).unwrap();
        // The antipodal map v ↦ complement has signed matrix −I.
        let anti = g2
            .elements()
            .iter()
            .find(|p| {
                vertex_perm_to_signed(2, p)
                    .is_ok_and(|sp| sp.to_int_matrix() == vec![vec![-1, 0], vec![0, -1]])
            })
            .unwrap()
            .clone();
        let sub = generate_group(&[anti], 100).unwrap();
        assert!(matches!(
            hypercube_gaf_fixed_vertex(2, &sub),
            Err(LatticeError::NotGaf(_))
        ));
    }
}
