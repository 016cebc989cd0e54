//! Exact audits of sphere and projective-space isometry groups: Klein
//! witnesses, the 16-subgroup table of the ±diagonal group in SO₄, and the
//! block groups whose projective images are eccentric.

use num_rational::BigRational;
use serde::Serialize;

use crate::exact::matrix::Matrix;
use crate::perm::subgroup_lattice;

type IntMat = Vec<Vec<i64>>;

fn identity(n: usize) -> IntMat {
    let mut m = vec![vec![0i64; n]; n];
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = 1;
    }
    m
}

fn mat_mul(a: &IntMat, b: &IntMat) -> IntMat {
    let n = a.len();
    let mut out = vec![vec![0i64; n]; n];
    for i in 0..n {
        for j in 0..n {
            out[i][j] = (0..n).map(|k| a[i][k] * b[k][j]).sum();
        }
    }
    out
}

fn mat_neg(a: &IntMat) -> IntMat {
    a.iter()
        .map(|row| row.iter().map(|&v| -v).collect())
        .collect()
}

fn diag(entries: &[i64]) -> IntMat {
    let n = entries.len();
    let mut m = vec![vec![0i64; n]; n];
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = entries[i];
    }
    m
}

fn block_diag(blocks: &[&IntMat]) -> IntMat {
    let n: usize = blocks.iter().map(|b| b.len()).sum();
    let mut m = vec![vec![0i64; n]; n];
    let mut off = 0;
    for b in blocks {
        for i in 0..b.len() {
            for j in 0..b.len() {
                m[off + i][off + j] = b[i][j];
            }
        }
        off += b.len();
    }
    m
}

/// Dimension of ker(M − s·I) over the rationals, exactly.
fn eigenspace_dim(m: &IntMat, s: i64) -> usize {
    eigenspace_basis(m, s).len()
}

fn eigenspace_basis(m: &IntMat, s: i64) -> Vec<Vec<BigRational>> {
    let n = m.len();
    let shifted: Vec<Vec<i64>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| m[i][j] - if i == j { s } else { 0 })
                .collect()
        })
        .collect();
    Matrix::<BigRational>::from_int_rows(&shifted).kernel()
}

/// Exact dimension of the intersection of two spanned subspaces:
/// dim U + dim V − rank[U V].
fn intersection_dim(u: &[Vec<BigRational>], v: &[Vec<BigRational>]) -> usize {
    if u.is_empty() || v.is_empty() {
        return 0;
    }
    let n = u[0].len();
    let cols: Vec<Vec<BigRational>> = u.iter().chain(v.iter()).cloned().collect();
    let stacked = Matrix::from_rows(
        (0..n)
            .map(|r| cols.iter().map(|c| c[r].clone()).collect())
            .collect(),
    );
    u.len() + v.len() - stacked.rank()
}

/// Closure of integer matrices under multiplication.
fn close_matrices(gens: &[IntMat], cap: usize) -> Vec<IntMat> {
    let mut elems: Vec<IntMat> = vec![identity(gens[0].len())];
    let mut seen: std::collections::HashSet<IntMat> = elems.iter().cloned().collect();
    let mut frontier = vec![0usize];
    while let Some(i) = frontier.pop() {
        let base = elems[i].clone();
        for g in gens {
            let next = mat_mul(g, &base);
            if seen.insert(next.clone()) {
                assert!(elems.len() < cap, "matrix closure exceeded cap {cap}");
                elems.push(next);
                frontier.push(elems.len() - 1);
            }
        }
    }
    elems
}

#[derive(Clone, Debug, Serialize)]
pub struct KleinAuditEntry {
    pub ambient: String,
    pub group_order: usize,
    /// Every element keeps a nonzero fixed vector.
    pub gaf_on_sphere: bool,
    /// The common fixed space is trivial.
    pub common_fixed_trivial: bool,
}

impl KleinAuditEntry {
    pub fn eccentric(&self) -> bool {
        self.gaf_on_sphere && self.common_fixed_trivial && self.group_order == 4
    }
}

fn audit_klein(ambient: &str, f: IntMat, g: IntMat) -> KleinAuditEntry {
    let elems = close_matrices(&[f, g], 16);
    let gaf = elems
        .iter()
        .all(|m| *m == identity(m.len()) || eigenspace_dim(m, 1) > 0);
    // Common fixed space: intersect all +1 eigenspaces.
    let mut common: Option<Vec<Vec<BigRational>>> = None;
    for m in &elems {
        let e = eigenspace_basis(m, 1);
        common = Some(match common {
            None => e,
            Some(prev) => intersect_spans(&prev, &e),
        });
    }
    KleinAuditEntry {
        ambient: ambient.to_string(),
        group_order: elems.len(),
        gaf_on_sphere: gaf,
        common_fixed_trivial: common.map_or(true, |c| c.is_empty()),
    }
}

/// Basis of U ∩ V via the kernel of [U | −V] coefficients.
fn intersect_spans(u: &[Vec<BigRational>], v: &[Vec<BigRational>]) -> Vec<Vec<BigRational>> {
    use crate::exact::scalar::ExactField;
    if u.is_empty() || v.is_empty() {
        return Vec::new();
    }
    let n = u[0].len();
    let cols: Vec<Vec<BigRational>> = u
        .iter()
        .cloned()
        .chain(v.iter().map(|w| w.iter().map(|x| ExactField::neg(x)).collect()))
        .collect();
    let stacked = Matrix::from_rows(
        (0..n)
            .map(|r| cols.iter().map(|c| c[r].clone()).collect())
            .collect(),
    );
    stacked
        .kernel()
        .into_iter()
        .map(|coeffs| {
            // Combination of the U part gives a vector of the intersection.
            let mut vec = vec![<BigRational as ExactField>::zero(); n];
            for (ci, basis_vec) in coeffs.iter().take(u.len()).zip(u) {
                for (out, b) in vec.iter_mut().zip(basis_vec) {
                    *out = out.add(&ci.mul(b));
                }
            }
            vec
        })
        .filter(|v| v.iter().any(|x| !ExactField::is_zero(x)))
        .collect()
}

/// Klein four-group witnesses: eccentric in O₃, in O_{n+1} for n ≤ 8, in
/// SO₆ and in SO_{2k} for 2k ∈ {8, 10}.
pub fn klein_witness_audit() -> Vec<KleinAuditEntry> {
    let mut out = Vec::new();
    out.push(audit_klein(
        "O_3",
        diag(&[1, -1, -1]),
        diag(&[-1, 1, -1]),
    ));
    for n in 3..=8usize {
        // O_{n+1}: f = diag(1,−1,…,−1), g = diag(−1,1,−1,…,−1).
        let mut fd = vec![-1i64; n + 1];
        fd[0] = 1;
        let mut gd = vec![-1i64; n + 1];
        gd[1] = 1;
        out.push(audit_klein(&format!("O_{}", n + 1), diag(&fd), diag(&gd)));
    }
    let i2 = identity(2);
    let mi2 = mat_neg(&i2);
    out.push(audit_klein(
        "SO_6",
        block_diag(&[&i2, &mi2, &mi2]),
        block_diag(&[&mi2, &i2, &mi2]),
    ));
    for k in [4usize, 5] {
        // SO_{2k}: diag(I₂, −I₂, …) pattern extended by −I₂ / I₂.
        let mut fb: Vec<&IntMat> = vec![&i2];
        let mut gb: Vec<&IntMat> = vec![&mi2, &i2];
        for _ in 1..k {
            fb.push(&mi2);
        }
        for _ in 2..k {
            gb.push(&mi2);
        }
        out.push(audit_klein(
            &format!("SO_{}", 2 * k),
            block_diag(&fb),
            block_diag(&gb),
        ));
    }
    out
}

#[derive(Clone, Debug, Serialize)]
pub struct SubgroupTable {
    pub total: usize,
    pub gag: usize,
    pub not_gaf: usize,
    pub eccentric: usize,
}

/// The sixteen subgroups of G₀ = {±id, ±f₁, ±f₂, ±f₃} ⊂ SO₄ split into
/// eleven GAG and five containing −id (hence not GAF).
pub fn g0_subgroup_audit() -> SubgroupTable {
    let f1 = diag(&[1, 1, -1, -1]);
    let f2 = diag(&[1, -1, 1, -1]);
    let f3 = diag(&[1, -1, -1, 1]);
    let elems = close_matrices(&[f1, f2, f3, mat_neg(&identity(4))], 16);
    assert_eq!(elems.len(), 8);
    // Multiplication table with identity first.
    let mut ordered = elems;
    let id_pos = ordered.iter().position(|m| *m == identity(4)).unwrap();
    ordered.swap(0, id_pos);
    let index: std::collections::HashMap<&IntMat, usize> =
        ordered.iter().zip(0..).collect();
    let table: Vec<Vec<usize>> = ordered
        .iter()
        .map(|a| ordered.iter().map(|b| index[&mat_mul(a, b)]).collect())
        .collect();
    let lattice = subgroup_lattice(&table, 1000).expect("small table");
    let mut gag = 0;
    let mut not_gaf = 0;
    let mut eccentric = 0;
    for subgroup in &lattice {
        let members: Vec<&IntMat> = subgroup.iter().map(|&i| &ordered[i]).collect();
        let is_gaf = members
            .iter()
            .all(|m| **m == identity(4) || eigenspace_dim(m, 1) > 0);
        if !is_gaf {
            not_gaf += 1;
            continue;
        }
        let mut common: Option<Vec<Vec<BigRational>>> = None;
        for m in &members {
            let e = eigenspace_basis(m, 1);
            common = Some(match common {
                None => e,
                Some(prev) => intersect_spans(&prev, &e),
            });
        }
        if common.is_some_and(|c| !c.is_empty()) {
            gag += 1;
        } else {
            eccentric += 1;
        }
    }
    SubgroupTable {
        total: lattice.len(),
        gag,
        not_gaf,
        eccentric,
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ProjectiveAudit {
    pub name: String,
    pub order: usize,
    /// Every element fixes a projective point: some ±1 eigenvector.
    pub projective_gaf: bool,
    /// No single line is preserved (with eigenvalue ±1) by every element.
    pub no_common_line: bool,
}

impl ProjectiveAudit {
    pub fn eccentric(&self) -> bool {
        self.projective_gaf && self.no_common_line
    }
}

/// Exhaustive projective-eccentricity certificate for a closed group of
/// integer orthogonal matrices: every element has a ±1 eigenvector, and no
/// projective point is fixed by all of them.
fn audit_projective(name: &str, elems: &[IntMat]) -> ProjectiveAudit {
    let projective_gaf = elems
        .iter()
        .all(|m| eigenspace_dim(m, 1) > 0 || eigenspace_dim(m, -1) > 0);
    // Strategy 1: some element with both eigenspaces of dimension ≤ 1 gives
    // finitely many candidate lines to test against every element.
    let mut no_common_line = false;
    let mut certified = false;
    for m in elems {
        let plus = eigenspace_basis(m, 1);
        let minus = eigenspace_basis(m, -1);
        if *m == identity(m.len()) || plus.len() > 1 || minus.len() > 1 {
            continue;
        }
        let candidates: Vec<Vec<BigRational>> =
            plus.into_iter().chain(minus.into_iter()).collect();
        let common = candidates
            .iter()
            .any(|v| elems.iter().all(|e| maps_line_to_itself(e, v)));
        no_common_line = !common;
        certified = true;
        break;
    }
    if !certified {
        // Strategy 2: two elements whose eigenspace unions intersect
        // trivially rule out any common line.
        'outer: for (i, a) in elems.iter().enumerate() {
            for b in &elems[i + 1..] {
                let (ap, am) = (eigenspace_basis(a, 1), eigenspace_basis(a, -1));
                let (bp, bm) = (eigenspace_basis(b, 1), eigenspace_basis(b, -1));
                let all_trivial = [(&ap, &bp), (&ap, &bm), (&am, &bp), (&am, &bm)]
                    .iter()
                    .all(|(u, v)| intersection_dim(u, v) == 0);
                if all_trivial {
                    no_common_line = true;
                    certified = true;
                    break 'outer;
                }
            }
        }
    }
    assert!(certified, "projective audit could not certify {name}");
    ProjectiveAudit {
        name: name.to_string(),
        order: elems.len(),
        projective_gaf,
        no_common_line,
    }
}

/// Does the integer matrix map the rational line spanned by v to itself?
fn maps_line_to_itself(m: &IntMat, v: &[BigRational]) -> bool {
    use crate::exact::scalar::ExactField;
    let mv: Vec<BigRational> = (0..m.len())
        .map(|i| {
            let mut acc = <BigRational as ExactField>::zero();
            for (j, x) in v.iter().enumerate() {
                acc = acc.add(&BigRational::from_integer(m[i][j].into()).mul(x));
            }
            acc
        })
        .collect();
    // mv = λ v for λ = ±1 exactly.
    let eq = |s: i64| {
        mv.iter()
            .zip(v)
            .all(|(a, b)| *a == b.mul(&<BigRational as ExactField>::from_int(s)))
    };
    eq(1) || eq(-1)
}

/// The order-32 block group in SO₆ built from I/R blocks whose projective
/// image is eccentric.
pub fn g5_audit() -> ProjectiveAudit {
    let i2 = identity(2);
    let r: IntMat = vec![vec![0, -1], vec![1, 0]];
    let f = block_diag(&[&i2, &r, &r]);
    let g = block_diag(&[&r, &i2, &r]);
    let h = block_diag(&[&r, &r, &i2]);
    let elems = close_matrices(&[f, g, h], 64);
    audit_projective("psi(G5)", &elems)
}

/// The block groups G_n in SO_{n+1} for odd n ≥ 7 (diag patterns of one I
/// block among R blocks); eccentric projectively for every listed n.
pub fn gn_audit(n: usize) -> ProjectiveAudit {
    assert!(n % 2 == 1 && n >= 7);
    let blocks = (n + 1) / 2;
    let i2 = identity(2);
    let r: IntMat = vec![vec![0, -1], vec![1, 0]];
    let gen_with_i_at = |pos: usize| {
        let parts: Vec<&IntMat> = (0..blocks).map(|k| if k == pos { &i2 } else { &r }).collect();
        block_diag(&parts)
    };
    let gens: Vec<IntMat> = (0..3).map(gen_with_i_at).collect();
    let elems = close_matrices(&gens, 4096);
    audit_projective(&format!("psi(G{n})"), &elems)
}

#[derive(Clone, Debug, Serialize)]
pub struct G3Audit {
    pub projective: ProjectiveAudit,
    pub anticommutes: bool,
    pub squares_opposite: bool,
}

/// The order-16 signed-permutation group in O₄ generated by ±f, ±g with
/// f = (1 2 3 4), g = (1 2 −3 −4); fg = −gf and f² = −g², and the
/// projective image is eccentric.
pub fn g3_audit() -> G3Audit {
    let f: IntMat = vec![
        vec![0, 0, 0, 1],
        vec![1, 0, 0, 0],
        vec![0, 1, 0, 0],
        vec![0, 0, 1, 0],
    ];
    let g: IntMat = vec![
        vec![0, 0, 0, -1],
        vec![1, 0, 0, 0],
        vec![0, -1, 0, 0],
        vec![0, 0, 1, 0],
    ];
    let anticommutes = mat_mul(&f, &g) == mat_neg(&mat_mul(&g, &f));
    let squares_opposite = mat_mul(&f, &f) == mat_neg(&mat_mul(&g, &g));
    let elems = close_matrices(&[f.clone(), g.clone(), mat_neg(&identity(4))], 32);
    G3Audit {
        projective: audit_projective("psi(G3)", &elems),
        anticommutes,
        squares_opposite,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn klein_witnesses_all_eccentric() {
        for entry in klein_witness_audit() {
            assert!(entry.eccentric(), "{entry:?}");
        }
    }

    #[test]
    fn g0_table_matches_eleven_five() {
        let t = g0_subgroup_audit();
        assert_eq!(t.total, 16);
        assert_eq!(t.gag, 11);
        assert_eq!(t.not_gaf, 5);
        assert_eq!(t.eccentric, 0);
    }

    #[test]
    fn g5_has_order_32_and_projectively_eccentric() {
        let audit = g5_audit();
        assert_eq!(audit.order, 32);
        assert!(audit.eccentric());
    }

    #[test]
    fn g3_has_order_16_with_stated_relations() {
        let audit = g3_audit();
        assert_eq!(audit.projective.order, 16);
        assert!(audit.anticommutes);
        assert!(audit.squares_opposite);
        assert!(audit.projective.eccentric());
    }

    #[test]
    fn g7_block_group_projectively_eccentric() {
        let audit = gn_audit(7);
        assert!(audit.eccentric());
    }
}
