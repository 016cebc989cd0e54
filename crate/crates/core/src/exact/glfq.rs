//! Linear groups over F_q as permutation groups on the nonzero vectors.

use super::fq::{FqElem, FqError, FqField};
use crate::perm::{generate_group, FiniteGroup, PermError, Permutation};

/// Dense d×d matrix over F_q, row major.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct FqMatrix {
    pub dim: usize,
    pub entries: Vec<FqElem>,
}

impl FqMatrix {
    pub fn from_rows(rows: &[Vec<i64>], field: &FqField) -> FqMatrix {
        let dim = rows.len();
        assert!(rows.iter().all(|r| r.len() == dim));
        FqMatrix {
            dim,
            entries: rows
                .iter()
                .flat_map(|r| r.iter().map(|&v| field.from_int(v)))
                .collect(),
        }
    }

    pub fn identity(dim: usize) -> FqMatrix {
        let mut m = FqMatrix {
            dim,
            entries: vec![0; dim * dim],
        };
        for i in 0..dim {
            m.entries[i * dim + i] = 1;
        }
        m
    }

    pub fn at(&self, i: usize, j: usize) -> FqElem {
        self.entries[i * self.dim + j]
    }

    pub fn mul_vec(&self, v: &[FqElem], field: &FqField) -> Vec<FqElem> {
        (0..self.dim)
            .map(|i| {
                let mut acc = field.zero();
                for j in 0..self.dim {
                    acc = field.add(acc, field.mul(self.at(i, j), v[j]));
                }
                acc
            })
            .collect()
    }

    pub fn is_invertible(&self, field: &FqField) -> bool {
        let mut m = self.entries.clone();
        let d = self.dim;
        for col in 0..d {
            let Some(p) = (col..d).find(|&r| m[r * d + col] != 0) else {
                return false;
            };
            if p != col {
                for j in 0..d {
                    m.swap(p * d + j, col * d + j);
                }
            }
            let inv = field.inv(m[col * d + col]);
            for r in 0..d {
                if r == col || m[r * d + col] == 0 {
                    continue;
                }
                let factor = field.mul(m[r * d + col], inv);
                for j in 0..d {
                    let t = field.mul(factor, m[col * d + j]);
                    m[r * d + j] = field.sub(m[r * d + j], t);
                }
            }
        }
        true
    }
}

/// Nonzero vectors of F_q^d in the canonical order: vector number
/// `k ∈ {1..q^d−1}` has digits `k` base q, lowest coordinate first.
pub fn canonical_vectors(d: usize, field: &FqField) -> Vec<Vec<FqElem>> {
    let total = (field.q as u64).pow(d as u32);
    (1..total)
        .map(|code| {
            let mut v = Vec::with_capacity(d);
            let mut c = code;
            for _ in 0..d {
                v.push((c % field.q as u64) as FqElem);
                c /= field.q as u64;
            }
            v
        })
        .collect()
}

/// The permutation of an explicit vector ordering induced by an invertible
/// matrix acting on F_q^d ∖ {0}.
pub fn matrix_to_permutation(
    m: &FqMatrix,
    field: &FqField,
    order: &[Vec<FqElem>],
) -> Result<Permutation, FqError> {
    if !m.is_invertible(field) {
        return Err(FqError::SingularGenerator);
    }
    let index: std::collections::HashMap<&[FqElem], usize> = order
        .iter()
        .enumerate()
        .map(|(i, v)| (v.as_slice(), i + 1))
        .collect();
    let images: Vec<usize> = order
        .iter()
        .map(|v| {
            let w = m.mul_vec(v, field);
            *index.get(w.as_slice()).expect("image stays nonzero")
        })
        .collect();
    Ok(Permutation::from_images(images).expect("invertible matrix acts bijectively"))
}

/// The action of `gens` on the nonzero vectors in canonical order, closed
/// into a permutation group.
pub fn gl_to_permutation_group(
    d: usize,
    q: u32,
    gens: &[FqMatrix],
    cap: usize,
) -> Result<FiniteGroup, GlError> {
    let field = FqField::new(q)?;
    let order = canonical_vectors(d, &field);
    let perms: Vec<Permutation> = gens
        .iter()
        .map(|m| matrix_to_permutation(m, &field, &order))
        .collect::<Result<_, _>>()?;
    Ok(generate_group(&perms, cap)?)
}

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum GlError {
    #[error(transparent)]
    Field(#[from] FqError),
    #[error(transparent)]
    Perm(#[from] PermError),
}

/// The full group GL(d, q) as a permutation group on the q^d − 1 nonzero
/// vectors, generated by row operations and a primitive scaling.
pub fn gl_full_group(d: usize, q: u32, cap: usize) -> Result<FiniteGroup, GlError> {
    let field = FqField::new(q)?;
    let gamma = field.primitive_element();
    let mut gens: Vec<FqMatrix> = Vec::new();
    let mut diag = FqMatrix::identity(d);
    diag.entries[0] = gamma;
    gens.push(diag);
    if d >= 2 {
        // Transvection x1 += x2.
        let mut t = FqMatrix::identity(d);
        t.entries[1] = field.one();
        gens.push(t);
        // Coordinate swap (1 2) and the full cycle.
        let mut swap = FqMatrix::identity(d);
        swap.entries[0] = 0;
        swap.entries[1] = 1;
        swap.entries[d] = 1;
        swap.entries[d + 1] = 0;
        gens.push(swap);
        if d > 2 {
            let mut cyc = FqMatrix {
                dim: d,
                entries: vec![0; d * d],
            };
            for i in 0..d {
                cyc.entries[i * d + (i + 1) % d] = 1;
            }
            gens.push(cyc);
        }
    }
    gl_to_permutation_group(d, q, &gens, cap)
}

/// |GL(d, q)| = ∏_{i<d} (q^d − q^i).
pub fn gl_order(d: usize, q: u64) -> u64 {
    let qd = q.pow(d as u32);
    (0..d as u32).map(|i| qd - q.pow(i)).product()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::{classify_action, is_fixating, perm, VerdictKind};

    #[test]
    fn gl_orders_match_formula() {
        for (d, q) in [(1usize, 2u32), (1, 5), (2, 2), (2, 3), (3, 2)] {
            let g = gl_full_group(d, q, 100_000).unwrap();
            assert_eq!(g.order() as u64, gl_order(d, q as u64), "GL({d},{q})");
        }
    }

    #[test]
    fn e16_generators_become_the_stated_permutations() {
        // Identification: e1↦1, e2↦2, e3↦3, e123↦4, e23↦5, e13↦6, e12↦7.
        let field = FqField::new(2).unwrap();
        // Column convention: f(e1)=e2, f(e2)=e3, f(e3)=e1.
        let f = FqMatrix::from_rows(&[vec![0, 0, 1], vec![1, 0, 0], vec![0, 1, 0]], &field);
        let g = FqMatrix::from_rows(&[vec![1, 0, 0], vec![1, 1, 0], vec![1, 0, 1]], &field);
        let e = |bits: [i64; 3]| -> Vec<FqElem> { bits.iter().map(|&b| b as FqElem).collect() };
        let order = vec![
            e([1, 0, 0]),
            e([0, 1, 0]),
            e([0, 0, 1]),
            e([1, 1, 1]),
            e([0, 1, 1]),
            e([1, 0, 1]),
            e([1, 1, 0]),
        ];
        let pf = matrix_to_permutation(&f, &field, &order).unwrap();
        let pg = matrix_to_permutation(&g, &field, &order).unwrap();
        assert_eq!(pf, perm("(123)(567)", 7));
        assert_eq!(pg, perm("(14)(67)", 7));
        let group = generate_group(&[pf, pg], 1000).unwrap();
        assert_eq!(group.order(), 24);
        assert_eq!(classify_action(&group).kind, VerdictKind::Eccentric);
    }

    #[test]
    fn gl23_family_witness_is_eccentric() {
        let field = FqField::new(3).unwrap();
        let a = FqMatrix::from_rows(&[vec![2, 0], vec![0, 1]], &field);
        let b = FqMatrix::from_rows(&[vec![1, 1], vec![0, 1]], &field);
        let g = gl_to_permutation_group(2, 3, &[a, b], 1000).unwrap();
        assert_eq!(classify_action(&g).kind, VerdictKind::Eccentric);
    }

    #[test]
    fn gl1_and_gl22_fixating() {
        for q in [2u32, 3, 4, 5, 7, 8, 9, 11, 13, 16] {
            let g = gl_full_group(1, q, 1000).unwrap();
            let (fixating, _) = is_fixating(&g, 1000).unwrap();
            assert!(fixating, "GL(1,{q})");
        }
        let g22 = gl_full_group(2, 2, 1000).unwrap();
        assert_eq!(g22.order(), 6);
        let (fixating, _) = is_fixating(&g22, 1000).unwrap();
        assert!(fixating);
    }

    #[test]
    fn singular_generator_rejected() {
        let field = FqField::new(2).unwrap();
        let s = FqMatrix::from_rows(&[vec![1, 1], vec![1, 1]], &field);
        let order = canonical_vectors(2, &field);
        assert_eq!(
            matrix_to_permutation(&s, &field, &order),
            Err(FqError::SingularGenerator)
        );
    }
}
