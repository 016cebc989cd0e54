//! Symbolic certificates for the free rotation pair in SO₄.
//!
//! Matrices are kept in the ring Z[c, s]/(s² − 1 + c²), with c standing for
//! cos θ and s for sin θ, so every identity is verified as an exact
//! polynomial statement and θ is never evaluated numerically.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum So4Error {
    #[error("word must alternate σ-blocks and τ-blocks, starting with σ and ending with τ")]
    BadWordShape,
}

/// Integer polynomial in `c`, dense coefficients lowest-degree first.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Poly(Vec<BigInt>);

impl Poly {
    pub fn zero() -> Poly {
        Poly(Vec::new())
    }

    pub fn constant(v: i64) -> Poly {
        if v == 0 {
            Poly::zero()
        } else {
            Poly(vec![BigInt::from(v)])
        }
    }

    /// The monomial `c`.
    pub fn c() -> Poly {
        Poly(vec![BigInt::zero(), BigInt::one()])
    }

    fn normalize(mut self) -> Poly {
        while self.0.last().is_some_and(|c| c.is_zero()) {
            self.0.pop();
        }
        self
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    /// Degree, with deg 0 = −1 encoded as `None`.
    pub fn degree(&self) -> Option<usize> {
        if self.0.is_empty() {
            None
        } else {
            Some(self.0.len() - 1)
        }
    }

    pub fn add(&self, o: &Poly) -> Poly {
        let n = self.0.len().max(o.0.len());
        let mut out = vec![BigInt::zero(); n];
        for (i, v) in self.0.iter().enumerate() {
            out[i] += v;
        }
        for (i, v) in o.0.iter().enumerate() {
            out[i] += v;
        }
        Poly(out).normalize()
    }

    pub fn sub(&self, o: &Poly) -> Poly {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> Poly {
        Poly(self.0.iter().map(|v| -v).collect())
    }

    pub fn mul(&self, o: &Poly) -> Poly {
        if self.is_zero() || o.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![BigInt::zero(); self.0.len() + o.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            for (j, b) in o.0.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Poly(out).normalize()
    }

    pub fn scale(&self, v: i64) -> Poly {
        Poly(self.0.iter().map(|x| x * v).collect()).normalize()
    }
}

/// One matrix entry `p(c) + s·q(c)`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Entry {
    pub cos_part: Poly,
    pub sin_part: Poly,
}

impl Entry {
    fn zero() -> Entry {
        Entry {
            cos_part: Poly::zero(),
            sin_part: Poly::zero(),
        }
    }

    fn cos(p: Poly) -> Entry {
        Entry {
            cos_part: p,
            sin_part: Poly::zero(),
        }
    }

    fn sin(q: Poly) -> Entry {
        Entry {
            cos_part: Poly::zero(),
            sin_part: q,
        }
    }

    fn add(&self, o: &Entry) -> Entry {
        Entry {
            cos_part: self.cos_part.add(&o.cos_part),
            sin_part: self.sin_part.add(&o.sin_part),
        }
    }

    fn neg(&self) -> Entry {
        Entry {
            cos_part: self.cos_part.neg(),
            sin_part: self.sin_part.neg(),
        }
    }

    /// `(p1 + s q1)(p2 + s q2)` with `s² = 1 − c²`.
    fn mul(&self, o: &Entry) -> Entry {
        let s2 = Poly::constant(1).sub(&Poly::c().mul(&Poly::c()));
        let cos_part = self
            .cos_part
            .mul(&o.cos_part)
            .add(&self.sin_part.mul(&o.sin_part).mul(&s2));
        let sin_part = self
            .cos_part
            .mul(&o.sin_part)
            .add(&self.sin_part.mul(&o.cos_part));
        Entry { cos_part, sin_part }
    }
}

/// 4×4 matrix over Z[c, s]/(s² − 1 + c²).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SymMatrix([[Entry; 4]; 4]);

impl SymMatrix {
    fn identity() -> SymMatrix {
        let mut m = SymMatrix(std::array::from_fn(|_| std::array::from_fn(|_| Entry::zero())));
        for i in 0..4 {
            m.0[i][i] = Entry::cos(Poly::constant(1));
        }
        m
    }

    fn mul(&self, o: &SymMatrix) -> SymMatrix {
        let mut out = SymMatrix(std::array::from_fn(|_| std::array::from_fn(|_| Entry::zero())));
        for i in 0..4 {
            for j in 0..4 {
                let mut acc = Entry::zero();
                for k in 0..4 {
                    acc = acc.add(&self.0[i][k].mul(&o.0[k][j]));
                }
                out.0[i][j] = acc;
            }
        }
        out
    }
}

/// σ^ε: block rotation acting on coordinates (1,2) and (3,4).
fn sigma(eps: i64) -> SymMatrix {
    let c = Entry::cos(Poly::c());
    let s = Entry::sin(Poly::constant(eps.signum()));
    let z = Entry::zero;
    SymMatrix([
        [c.clone(), s.neg(), z(), z()],
        [s.clone(), c.clone(), z(), z()],
        [z(), z(), c.clone(), s.neg()],
        [z(), z(), s.clone(), c.clone()],
    ])
}

/// τ^δ: block rotation acting on coordinates (1,4) and (2,3).
fn tau(delta: i64) -> SymMatrix {
    let c = Entry::cos(Poly::c());
    let s = Entry::sin(Poly::constant(delta.signum()));
    let z = Entry::zero;
    SymMatrix([
        [c.clone(), z(), z(), s.neg()],
        [z(), c.clone(), s.neg(), z()],
        [z(), s.clone(), c.clone(), z()],
        [s.clone(), z(), z(), c.clone()],
    ])
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum So4Gen {
    Sigma,
    Tau,
}

/// Audit record for one alternating word.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct So4Certificate {
    pub word_length: usize,
    pub p_degree: usize,
    pub quadruple_form: bool,
    pub char_poly_matches: bool,
    pub orthogonality_identity: bool,
    pub one_not_an_eigenvalue: bool,
}

impl So4Certificate {
    pub fn holds(&self) -> bool {
        self.quadruple_form
            && self.char_poly_matches
            && self.orthogonality_identity
            && self.one_not_an_eigenvalue
            && self.p_degree == self.word_length
    }
}

/// Multiplies the symbolic matrices of an alternating word
/// `σ^{ε₁m₁}τ^{δ₁k₁}⋯σ^{εₙmₙ}τ^{δₙkₙ}` and certifies:
/// the product has the quadruple form (P, Q, R, S); its characteristic
/// polynomial is `λ⁴ − 4Pλ³ + (4P²+2)λ² − 4Pλ + 1`; `P²+Q²+R²+S² = 1`
/// as polynomials; `deg P` equals the word length; and `4P² − 8P + 4 ≠ 0`,
/// so 1 is not an eigenvalue for transcendental `cos θ`.
pub fn so4_symbolic_audit(word: &[(So4Gen, i64)]) -> Result<So4Certificate, So4Error> {
    if word.is_empty() || word.len() % 2 != 0 {
        return Err(So4Error::BadWordShape);
    }
    for (i, &(gen, e)) in word.iter().enumerate() {
        let expect = if i % 2 == 0 { So4Gen::Sigma } else { So4Gen::Tau };
        if gen != expect || e == 0 {
            return Err(So4Error::BadWordShape);
        }
    }

    let mut m = SymMatrix::identity();
    let mut word_length = 0usize;
    for &(gen, e) in word {
        let letter = match gen {
            So4Gen::Sigma => sigma(e.signum()),
            So4Gen::Tau => tau(e.signum()),
        };
        for _ in 0..e.unsigned_abs() {
            m = m.mul(&letter);
        }
        word_length += e.unsigned_abs() as usize;
    }

    // Expected quadruple pattern built from the first column.
    let p = m.0[0][0].clone();
    let q = m.0[1][0].clone();
    let r = m.0[2][0].clone();
    let s = m.0[3][0].clone();
    let pattern = SymMatrix([
        [p.clone(), q.neg(), r.neg(), s.neg()],
        [q.clone(), p.clone(), s.neg(), r.clone()],
        [r.clone(), s.clone(), p.clone(), q.neg()],
        [s.clone(), r.neg(), q.clone(), p.clone()],
    ]);
    let quadruple_form = m == pattern
        && p.sin_part.is_zero()
        && r.sin_part.is_zero()
        && q.cos_part.is_zero()
        && s.cos_part.is_zero();

    // Characteristic polynomial coefficients via sums of principal minors.
    let e1 = principal_minor_sum(&m, 1);
    let e2 = principal_minor_sum(&m, 2);
    let e3 = principal_minor_sum(&m, 3);
    let e4 = principal_minor_sum(&m, 4);
    let p_poly = p.cos_part.clone();
    let four_p = Entry::cos(p_poly.scale(4));
    let four_p2_plus_2 = Entry::cos(p_poly.mul(&p_poly).scale(4).add(&Poly::constant(2)));
    let char_poly_matches = e1 == four_p
        && e2 == four_p2_plus_2
        && e3 == four_p
        && e4 == Entry::cos(Poly::constant(1));

    // P² + Q² + R² + S² = 1 in the quotient ring.
    let sum_sq = p
        .mul(&p)
        .add(&q.mul(&q))
        .add(&r.mul(&r))
        .add(&s.mul(&s));
    let orthogonality_identity = sum_sq == Entry::cos(Poly::constant(1));

    let p_degree = p_poly.degree().unwrap_or(0);
    // 4P² − 8P + 4 = 4(P − 1)²; nonzero iff P ≠ 1 as a polynomial.
    let p_minus_one = p_poly.sub(&Poly::constant(1));
    let one_not_an_eigenvalue = !p_minus_one.mul(&p_minus_one).scale(4).is_zero();

    Ok(So4Certificate {
        word_length,
        p_degree,
        quadruple_form,
        char_poly_matches,
        orthogonality_identity,
        one_not_an_eigenvalue,
    })
}

/// Sum of the k×k principal minors of a symbolic 4×4 matrix.
fn principal_minor_sum(m: &SymMatrix, k: usize) -> Entry {
    let mut acc = Entry::zero();
    let idx: Vec<usize> = (0..4).collect();
    for subset in combinations(&idx, k) {
        acc = acc.add(&minor_det(m, &subset));
    }
    acc
}

fn combinations(items: &[usize], k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![Vec::new()];
    }
    if items.len() < k {
        return Vec::new();
    }
    let mut out = Vec::new();
    for (i, &first) in items.iter().enumerate() {
        for mut rest in combinations(&items[i + 1..], k - 1) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// Determinant of the principal submatrix on `rows` by cofactor expansion.
fn minor_det(m: &SymMatrix, rows: &[usize]) -> Entry {
    let k = rows.len();
    if k == 1 {
        return m.0[rows[0]][rows[0]].clone();
    }
    let mut acc = Entry::zero();
    for (j, &col) in rows.iter().enumerate() {
        let sub: Vec<usize> = rows[1..].to_vec();
        let sub_cols: Vec<usize> = rows.iter().copied().filter(|&c| c != col).collect();
        let term = m.0[rows[0]][col].mul(&det_rect(m, &sub, &sub_cols));
        acc = if j % 2 == 0 {
            acc.add(&term)
        } else {
            acc.add(&term.neg())
        };
    }
    acc
}

fn det_rect(m: &SymMatrix, rows: &[usize], cols: &[usize]) -> Entry {
    if rows.len() == 1 {
        return m.0[rows[0]][cols[0]].clone();
    }
    let mut acc = Entry::zero();
    for (j, &col) in cols.iter().enumerate() {
        let sub_rows: Vec<usize> = rows[1..].to_vec();
        let sub_cols: Vec<usize> = cols.iter().copied().filter(|&c| c != col).collect();
        let term = m.0[rows[0]][col].mul(&det_rect(m, &sub_rows, &sub_cols));
        acc = if j % 2 == 0 {
            acc.add(&term)
        } else {
            acc.add(&term.neg())
        };
    }
    acc
}

/// Every alternating word (σ-start, τ-end) of total letter length ≤ `max_len`.
pub fn for_each_alternating_word(max_len: usize, mut f: impl FnMut(&[(So4Gen, i64)])) {
    let mut word: Vec<(So4Gen, i64)> = Vec::new();
    descend(&mut word, 0, max_len, &mut f);

    fn descend(
        word: &mut Vec<(So4Gen, i64)>,
        used: usize,
        max_len: usize,
        f: &mut impl FnMut(&[(So4Gen, i64)]),
    ) {
        // A full block pair σ^{±m} τ^{±k} costs at least 2 letters.
        if used + 2 > max_len {
            return;
        }
        for m in 1..=(max_len - used - 1) as i64 {
            for em in [1i64, -1] {
                for k in 1..=(max_len - used) as i64 - m {
                    for dk in [1i64, -1] {
                        word.push((So4Gen::Sigma, em * m));
                        word.push((So4Gen::Tau, dk * k));
                        f(word);
                        let new_used = used + (m + k) as usize;
                        descend(word, new_used, max_len, f);
                        word.pop();
                        word.pop();
                    }
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sigma_tau_short_words() {
        let c = so4_symbolic_audit(&[(So4Gen::Sigma, 1), (So4Gen::Tau, 1)]).unwrap();
        assert!(c.holds());
        assert_eq!(c.p_degree, 2);

        let c = so4_symbolic_audit(&[(So4Gen::Sigma, 1), (So4Gen::Tau, -1)]).unwrap();
        assert!(c.holds());
        assert_eq!(c.p_degree, 2);

        let c = so4_symbolic_audit(&[(So4Gen::Sigma, 2), (So4Gen::Tau, 1)]).unwrap();
        assert!(c.holds());
        assert_eq!(c.p_degree, 3);
    }

    #[test]
    fn rejects_bad_shapes() {
        assert_eq!(
            so4_symbolic_audit(&[(So4Gen::Tau, 1), (So4Gen::Sigma, 1)]),
            Err(So4Error::BadWordShape)
        );
        assert_eq!(
            so4_symbolic_audit(&[(So4Gen::Sigma, 1)]),
            Err(So4Error::BadWordShape)
        );
        assert_eq!(so4_symbolic_audit(&[]), Err(So4Error::BadWordShape));
    }

    #[test]
    fn all_words_up_to_length_four_certify() {
        let mut count = 0;
        for_each_alternating_word(4, |w| {
            let cert = so4_symbolic_audit(w).unwrap();
            assert!(cert.holds(), "failed for {w:?}");
            count += 1;
        });
        assert!(count > 0);
    }
}
