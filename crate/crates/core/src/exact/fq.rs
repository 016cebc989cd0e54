//! Finite fields `F_q`, `q = p^k ≤ 2^16`, in direct polynomial representation.
//!
//! Elements are encoded as base-`p` digit strings packed into a `u32`
//! (coefficients of the residue polynomial, lowest degree first), so the
//! arithmetic context lives in [`FqField`] and elements stay `Copy`.

use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum FqError {
    #[error("{0} is not a prime power ≤ 2^16")]
    NotAPrimePower(u32),
    #[error("matrix is singular over F_q")]
    SingularGenerator,
}

pub type FqElem = u32;

#[derive(Clone, Debug)]
pub struct FqField {
    pub p: u32,
    pub k: u32,
    pub q: u32,
    /// Coefficients of the monic irreducible modulus, degree k, lowest first.
    modulus: Vec<u32>,
}

impl FqField {
    pub fn new(q: u32) -> Result<FqField, FqError> {
        if q < 2 || q > 1 << 16 {
            return Err(FqError::NotAPrimePower(q));
        }
        let (p, k) = prime_power(q).ok_or(FqError::NotAPrimePower(q))?;
        let modulus = if k == 1 {
            vec![0, 1]
        } else {
            find_irreducible(p, k)
        };
        Ok(FqField { p, k, q, modulus })
    }

    pub fn zero(&self) -> FqElem {
        0
    }

    pub fn one(&self) -> FqElem {
        1
    }

    /// Embeds an integer via the prime subfield.
    pub fn from_int(&self, v: i64) -> FqElem {
        (v.rem_euclid(self.p as i64)) as u32
    }

    fn decode(&self, x: FqElem) -> Vec<u32> {
        let mut digits = vec![0u32; self.k as usize];
        let mut v = x;
        for d in digits.iter_mut() {
            *d = v % self.p;
            v /= self.p;
        }
        digits
    }

    fn encode(&self, digits: &[u32]) -> FqElem {
        let mut v = 0u32;
        for &d in digits.iter().rev() {
            v = v * self.p + d;
        }
        v
    }

    pub fn add(&self, x: FqElem, y: FqElem) -> FqElem {
        if self.k == 1 {
            return (x + y) % self.p;
        }
        let (a, b) = (self.decode(x), self.decode(y));
        let sum: Vec<u32> = a.iter().zip(&b).map(|(u, v)| (u + v) % self.p).collect();
        self.encode(&sum)
    }

    pub fn neg(&self, x: FqElem) -> FqElem {
        if self.k == 1 {
            return (self.p - x) % self.p;
        }
        let a = self.decode(x);
        let neg: Vec<u32> = a.iter().map(|&u| (self.p - u) % self.p).collect();
        self.encode(&neg)
    }

    pub fn sub(&self, x: FqElem, y: FqElem) -> FqElem {
        self.add(x, self.neg(y))
    }

    pub fn mul(&self, x: FqElem, y: FqElem) -> FqElem {
        if self.k == 1 {
            return ((x as u64 * y as u64) % self.p as u64) as u32;
        }
        let (a, b) = (self.decode(x), self.decode(y));
        let mut prod = vec![0u64; 2 * self.k as usize - 1];
        for (i, &u) in a.iter().enumerate() {
            for (j, &v) in b.iter().enumerate() {
                prod[i + j] += u as u64 * v as u64;
            }
        }
        // Reduce modulo the monic irreducible polynomial.
        let pk = self.p as u64;
        for i in (self.k as usize..prod.len()).rev() {
            let c = prod[i] % pk;
            prod[i] = 0;
            if c == 0 {
                continue;
            }
            for (j, &m) in self.modulus.iter().enumerate().take(self.k as usize) {
                // x^i ≡ -sum m_j x^(i-k+j)
                let idx = i - self.k as usize + j;
                prod[idx] += c * ((self.p - m) as u64 % pk);
            }
        }
        let digits: Vec<u32> = prod[..self.k as usize]
            .iter()
            .map(|&v| (v % pk) as u32)
            .collect();
        self.encode(&digits)
    }

    pub fn inv(&self, x: FqElem) -> FqElem {
        assert!(x != 0, "inverse of zero in F_q");
        // x^(q-2) by square-and-multiply.
        self.pow(x, self.q as u64 - 2)
    }

    pub fn pow(&self, x: FqElem, mut e: u64) -> FqElem {
        let mut base = x;
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// All field elements in the canonical encoding order `0..q`.
    pub fn elements(&self) -> impl Iterator<Item = FqElem> {
        0..self.q
    }

    /// A multiplicative generator of `F_q^*`, found by search.
    pub fn primitive_element(&self) -> FqElem {
        let n = (self.q - 1) as u64;
        let factors = distinct_prime_factors(n);
        'outer: for g in 1..self.q {
            for &f in &factors {
                if self.pow(g, n / f) == self.one() {
                    continue 'outer;
                }
            }
            return g;
        }
        unreachable!("F_q^* is cyclic");
    }
}

fn prime_power(q: u32) -> Option<(u32, u32)> {
    let mut n = q;
    let mut p = 0;
    for cand in 2..=q {
        if n % cand == 0 {
            p = cand;
            break;
        }
    }
    let mut k = 0;
    while n > 1 {
        if n % p != 0 {
            return None;
        }
        n /= p;
        k += 1;
    }
    Some((p, k))
}

fn distinct_prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Searches for a monic irreducible polynomial of degree `k` over `F_p`
/// by trial division against all monic polynomials of degree ≤ k/2.
fn find_irreducible(p: u32, k: u32) -> Vec<u32> {
    let total = (p as u64).pow(k);
    for code in 0..total {
        let mut coeffs = vec![0u32; k as usize + 1];
        let mut v = code;
        for c in coeffs.iter_mut().take(k as usize) {
            *c = (v % p as u64) as u32;
            v /= p as u64;
        }
        coeffs[k as usize] = 1;
        if poly_is_irreducible(&coeffs, p) {
            return coeffs;
        }
    }
    unreachable!("irreducible polynomial of degree {k} exists over F_{p}");
}

fn poly_is_irreducible(f: &[u32], p: u32) -> bool {
    let k = f.len() - 1;
    if k == 1 {
        return true;
    }
    // No roots in F_p (kills linear factors).
    for x in 0..p {
        let mut acc = 0u64;
        for &c in f.iter().rev() {
            acc = (acc * x as u64 + c as u64) % p as u64;
        }
        if acc == 0 {
            return false;
        }
    }
    if k <= 3 {
        return true;
    }
    // Trial division by monic polynomials of degree 2..=k/2.
    for d in 2..=k / 2 {
        let total = (p as u64).pow(d as u32);
        for code in 0..total {
            let mut g = vec![0u32; d + 1];
            let mut v = code;
            for c in g.iter_mut().take(d) {
                *c = (v % p as u64) as u32;
                v /= p as u64;
            }
            g[d] = 1;
            if poly_divides(&g, f, p) {
                return false;
            }
        }
    }
    true
}

fn poly_divides(g: &[u32], f: &[u32], p: u32) -> bool {
    let mut rem: Vec<u64> = f.iter().map(|&c| c as u64).collect();
    let dg = g.len() - 1;
    while rem.len() > dg {
        let lead = *rem.last().unwrap() % p as u64;
        let deg = rem.len() - 1;
        if lead != 0 {
            for (j, &gc) in g.iter().enumerate() {
                let idx = deg - dg + j;
                rem[idx] = (rem[idx] + lead * (p as u64 - gc as u64)) % p as u64;
            }
        }
        rem.pop();
    }
    rem.iter().all(|&c| c % p as u64 == 0)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn f2_and_f3_arithmetic() {
        let f2 = FqField::new(2).unwrap();
        assert_eq!(f2.add(1, 1), 0);
        let f3 = FqField::new(3).unwrap();
        assert_eq!(f3.mul(2, 2), 1);
        assert_eq!(f3.inv(2), 2);
    }

    #[test]
    fn extension_fields_are_fields() {
        for q in [4u32, 8, 9, 16] {
            let f = FqField::new(q).unwrap();
            // Every nonzero element is invertible and x * x^{-1} = 1.
            for x in 1..q {
                assert_eq!(f.mul(x, f.inv(x)), 1, "q={q} x={x}");
            }
            // Associativity spot check over all triples for small q.
            for a in 0..q {
                for b in 0..q {
                    for c in 0..q {
                        assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
                    }
                }
            }
        }
    }

    #[test]
    fn primitive_element_has_full_order() {
        for q in [5u32, 7, 9, 16] {
            let f = FqField::new(q).unwrap();
            let g = f.primitive_element();
            let mut seen = std::collections::HashSet::new();
            let mut x = f.one();
            for _ in 0..q - 1 {
                seen.insert(x);
                x = f.mul(x, g);
            }
            assert_eq!(seen.len(), (q - 1) as usize);
        }
    }

    #[test]
    fn rejects_non_prime_powers() {
        assert!(FqField::new(6).is_err());
        assert!(FqField::new(12).is_err());
        assert!(FqField::new(1).is_err());
    }
}
