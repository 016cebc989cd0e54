//! Exact trace certificates for the free subgroup of SL(2,Z) generated by
//! the trace-3 matrices A = [[0,1],[-1,3]] and B = [[-1,-1],[5,4]].

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;
use thiserror::Error;

use super::affine::{AffineMap, FixedSet};
use super::matrix::Matrix;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum Sl2zError {
    #[error("matrix is not in T (det 1, trace 3): {0}")]
    NotInT(String),
    #[error("empty word")]
    EmptyWord,
}

/// 2×2 integer matrix with arbitrary-precision entries.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Mat2 {
    pub a: BigInt,
    pub b: BigInt,
    pub c: BigInt,
    pub d: BigInt,
}

impl Mat2 {
    pub fn new(a: i64, b: i64, c: i64, d: i64) -> Mat2 {
        Mat2 {
            a: a.into(),
            b: b.into(),
            c: c.into(),
            d: d.into(),
        }
    }

    pub fn identity() -> Mat2 {
        Mat2::new(1, 0, 0, 1)
    }

    pub fn mul(&self, o: &Mat2) -> Mat2 {
        Mat2 {
            a: &self.a * &o.a + &self.b * &o.c,
            b: &self.a * &o.b + &self.b * &o.d,
            c: &self.c * &o.a + &self.d * &o.c,
            d: &self.c * &o.b + &self.d * &o.d,
        }
    }

    pub fn det(&self) -> BigInt {
        &self.a * &self.d - &self.b * &self.c
    }

    pub fn trace(&self) -> BigInt {
        &self.a + &self.d
    }

    /// Inverse of a determinant-1 matrix.
    pub fn inv_unimodular(&self) -> Mat2 {
        assert!(self.det().is_one());
        Mat2 {
            a: self.d.clone(),
            b: -self.b.clone(),
            c: -self.c.clone(),
            d: self.a.clone(),
        }
    }

    pub fn pow(&self, n: u32) -> Mat2 {
        let mut acc = Mat2::identity();
        for _ in 0..n {
            acc = acc.mul(self);
        }
        acc
    }

    /// Integer power with negative exponents allowed (unimodular only).
    pub fn zpow(&self, n: i64) -> Mat2 {
        if n >= 0 {
            self.pow(n as u32)
        } else {
            self.inv_unimodular().pow((-n) as u32)
        }
    }

    /// Entrywise `self ≫ other`.
    pub fn dominates(&self, o: &Mat2) -> bool {
        self.a >= o.a && self.b >= o.b && self.c >= o.c && self.d >= o.d
    }

    pub fn neg(&self) -> Mat2 {
        Mat2 {
            a: -self.a.clone(),
            b: -self.b.clone(),
            c: -self.c.clone(),
            d: -self.d.clone(),
        }
    }
}

pub fn gen_a() -> Mat2 {
    Mat2::new(0, 1, -1, 3)
}

pub fn gen_b() -> Mat2 {
    Mat2::new(-1, -1, 5, 4)
}

/// One letter of a reduced word: generator id and nonzero exponent.
pub type Letter = (GenId, i64);

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
pub enum GenId {
    A,
    B,
}

/// The sequence α_0 = 0, α_1 = 1, α_n = 3α_{n−1} − α_{n−2}.
pub struct TraceSequence {
    alphas: Vec<BigInt>,
}

impl TraceSequence {
    pub fn up_to(n: usize) -> TraceSequence {
        let mut alphas: Vec<BigInt> = vec![BigInt::zero(), BigInt::one()];
        while alphas.len() <= n {
            let k = alphas.len();
            let next = 3 * &alphas[k - 1] - &alphas[k - 2];
            alphas.push(next);
        }
        TraceSequence { alphas }
    }

    pub fn alpha(&self, n: usize) -> &BigInt {
        &self.alphas[n]
    }
}

#[derive(Clone, Debug)]
pub struct TraceCertificate {
    pub power: Mat2,
    pub alpha_n: BigInt,
    pub trace: BigInt,
}

/// Verifies `M^n = α_n M − α_{n−1} I` by direct multiplication and the trace
/// lower bound `tr M^n = 3α_n − 2α_{n−1} ≥ 2^{n+1} − 1`, for `M` with
/// det 1 and trace 3.
pub fn trace_certificate(m: &Mat2, n: usize) -> Result<TraceCertificate, Sl2zError> {
    if !m.det().is_one() || m.trace() != BigInt::from(3) {
        return Err(Sl2zError::NotInT(format!("{m:?}")));
    }
    assert!(n >= 1);
    let seq = TraceSequence::up_to(n);
    let alpha_n = seq.alpha(n).clone();
    let alpha_prev = seq.alpha(n - 1).clone();
    let power = m.pow(n as u32);
    let combo = Mat2 {
        a: &alpha_n * &m.a - &alpha_prev,
        b: &alpha_n * &m.b,
        c: &alpha_n * &m.c,
        d: &alpha_n * &m.d - &alpha_prev,
    };
    assert_eq!(power, combo, "M^n = α_n M − α_{{n−1}} I fails");
    let trace = power.trace();
    assert_eq!(trace, 3 * &alpha_n - 2 * &alpha_prev);
    let bound = (BigInt::one() << (n + 1)) - 1;
    assert!(trace >= bound, "trace bound 2^{{n+1}}−1 fails at n={n}");
    Ok(TraceCertificate {
        power,
        alpha_n,
        trace,
    })
}

/// Matrix of a reduced word in A and B.
pub fn word_matrix(word: &[Letter]) -> Result<Mat2, Sl2zError> {
    if word.is_empty() {
        return Err(Sl2zError::EmptyWord);
    }
    let mut m = Mat2::identity();
    for &(gen, e) in word {
        assert!(e != 0, "zero exponent in reduced word");
        let base = match gen {
            GenId::A => gen_a(),
            GenId::B => gen_b(),
        };
        m = m.mul(&base.zpow(e));
    }
    Ok(m)
}

#[derive(Clone, Debug)]
pub struct WordTraceReport {
    pub matrix: Mat2,
    pub trace: BigInt,
    pub dominance_checks: usize,
}

/// Exact trace of the word's matrix; asserts `|tr| ≥ 3` and, for every
/// adjacent `A^k B^l` block pair, the dominance `ε(kl)·A^k B^l ≫ diag(5,1)`.
pub fn word_trace_bound(word: &[Letter]) -> Result<WordTraceReport, Sl2zError> {
    let matrix = word_matrix(word)?;
    let trace = matrix.trace();
    assert!(
        trace.abs() >= BigInt::from(3),
        "|trace| ≥ 3 fails for {word:?}"
    );
    let mut dominance_checks = 0;
    let diag51 = Mat2::new(5, 0, 0, 1);
    for pair in word.windows(2) {
        if let [(GenId::A, k), (GenId::B, l)] = pair {
            let prod = gen_a().zpow(*k).mul(&gen_b().zpow(*l));
            let signed = if (k * l) >= 0 { prod } else { prod.neg() };
            assert!(
                signed.dominates(&diag51),
                "ε(kl)A^kB^l ≫ diag(5,1) fails at (k,l)=({k},{l})"
            );
            dominance_checks += 1;
        }
    }
    Ok(WordTraceReport {
        matrix,
        trace,
        dominance_checks,
    })
}

/// Enumerates every reduced block word with at most `max_blocks` alternating
/// blocks and exponents in `[-max_exp, max_exp] \ {0}`, invoking `f` on each.
pub fn for_each_reduced_word(max_blocks: usize, max_exp: i64, mut f: impl FnMut(&[Letter])) {
    let exps: Vec<i64> = (-max_exp..=max_exp).filter(|&e| e != 0).collect();
    let mut word: Vec<Letter> = Vec::new();
    for first in [GenId::A, GenId::B] {
        descend(first, max_blocks, &exps, &mut word, &mut f);
    }

    fn descend(
        gen: GenId,
        remaining: usize,
        exps: &[i64],
        word: &mut Vec<Letter>,
        f: &mut impl FnMut(&[Letter]),
    ) {
        if remaining == 0 {
            return;
        }
        for &e in exps {
            word.push((gen, e));
            f(word);
            let next = match gen {
                GenId::A => GenId::B,
                GenId::B => GenId::A,
            };
            descend(next, remaining - 1, exps, word, f);
            word.pop();
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct FreeAffineAuditReport {
    pub words_checked: usize,
    pub violations: usize,
    pub fix_f: (String, String),
    pub fix_g: (String, String),
}

/// For every reduced letter word of length ≤ `max_len` in `f: x ↦ Ax` and
/// `g: x ↦ Bx + (1,0)`, verifies the linear trace is ≠ 2 (so the word has a
/// unique fixed point) and that the generators' fixed points differ.
pub fn free_affine_eccentric_audit(max_len: usize) -> FreeAffineAuditReport {
    let a = Matrix::<BigRational>::from_int_rows(&[vec![0, 1], vec![-1, 3]]);
    let b = Matrix::<BigRational>::from_int_rows(&[vec![-1, -1], vec![5, 4]]);
    let one = BigRational::from_integer(1.into());
    let zero = BigRational::from_integer(0.into());
    let f = AffineMap::linear_only(a);
    let g = AffineMap::new(b, vec![one.clone(), zero.clone()]);
    let f_inv = f.inverse().unwrap();
    let g_inv = g.inverse().unwrap();

    let fp = |m: &AffineMap<BigRational>| match m.fixed_set() {
        FixedSet::Point(p) => (p[0].to_string(), p[1].to_string()),
        other => panic!("generator fixed set should be a point, got {other:?}"),
    };
    let fix_f = fp(&f);
    let fix_g = fp(&g);
    let mut violations = 0;
    if fix_f == fix_g {
        violations += 1;
    }

    // Depth-first over reduced letter words: letters 0..4 = f, f^{-1}, g, g^{-1}.
    let letters = [f, f_inv, g, g_inv];
    let inverse_of = [1usize, 0, 3, 2];
    let mut words_checked = 0;
    let two = BigRational::from_integer(2.into());
    let mut stack: Vec<(usize, AffineMap<BigRational>)> = letters
        .iter()
        .enumerate()
        .map(|(i, m)| (i, m.clone()))
        .collect();
    let mut depth_stack: Vec<usize> = vec![1; stack.len()];
    while let Some((last, map)) = stack.pop() {
        let depth = depth_stack.pop().unwrap();
        words_checked += 1;
        let tr = map.linear.trace();
        if tr == two {
            violations += 1;
        } else if let FixedSet::Point(_) = map.fixed_set() {
            // unique fixed point as expected
        } else {
            violations += 1;
        }
        if depth < max_len {
            for (i, l) in letters.iter().enumerate() {
                if i == inverse_of[last] {
                    continue;
                }
                stack.push((i, map.compose(l)));
                depth_stack.push(depth + 1);
            }
        }
    }
    FreeAffineAuditReport {
        words_checked,
        violations,
        fix_f,
        fix_g,
    }
}
