//! Dense univariate polynomials over a prime field `F_p`.

use std::fmt;

use serde::{Deserialize, Serialize};

/// Coefficients from the constant term upwards, without trailing zeros.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Poly(Vec<u64>);

impl Poly {
    pub fn zero() -> Self {
        Poly(Vec::new())
    }

    pub fn constant(c: u64) -> Self {
        Poly::from_coeffs(vec![c])
    }

    pub fn from_coeffs(mut coeffs: Vec<u64>) -> Self {
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        Poly(coeffs)
    }

    /// `t^k`
    pub fn monomial(k: usize) -> Self {
        let mut c = vec![0; k + 1];
        c[k] = 1;
        Poly(c)
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    /// Degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    pub fn lead(&self) -> u64 {
        self.0.last().copied().unwrap_or(0)
    }

    pub fn coeff(&self, i: usize) -> u64 {
        self.0.get(i).copied().unwrap_or(0)
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, &c) in self.0.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            if !first {
                write!(f, "+")?;
            }
            first = false;
            match (i, c) {
                (0, c) => write!(f, "{c}")?,
                (1, 1) => write!(f, "t")?,
                (1, c) => write!(f, "{c}t")?,
                (i, 1) => write!(f, "t^{i}")?,
                (i, c) => write!(f, "{c}t^{i}")?,
            }
        }
        Ok(())
    }
}

/// Arithmetic in `F_p[t]` for a fixed prime `p`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PolyField {
    p: u64,
}

impl PolyField {
    pub fn new(p: u64) -> Self {
        PolyField { p }
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    fn mulmod(&self, a: u64, b: u64) -> u64 {
        ((a as u128 * b as u128) % self.p as u128) as u64
    }

    pub fn inv_scalar(&self, a: u64) -> u64 {
        debug_assert!(!a.is_multiple_of(self.p));
        let mut result = 1u64;
        let mut base = a % self.p;
        let mut e = self.p - 2;
        while e > 0 {
            if e & 1 == 1 {
                result = self.mulmod(result, base);
            }
            base = self.mulmod(base, base);
            e >>= 1;
        }
        result
    }

    pub fn reduce(&self, a: &Poly) -> Poly {
        Poly::from_coeffs(a.0.iter().map(|c| c % self.p).collect())
    }

    pub fn add(&self, a: &Poly, b: &Poly) -> Poly {
        let n = a.0.len().max(b.0.len());
        Poly::from_coeffs((0..n).map(|i| (a.coeff(i) + b.coeff(i)) % self.p).collect())
    }

    pub fn neg(&self, a: &Poly) -> Poly {
        Poly::from_coeffs(a.0.iter().map(|&c| (self.p - c) % self.p).collect())
    }

    pub fn sub(&self, a: &Poly, b: &Poly) -> Poly {
        self.add(a, &self.neg(b))
    }

    pub fn scale(&self, a: &Poly, c: u64) -> Poly {
        Poly::from_coeffs(a.0.iter().map(|&x| self.mulmod(x, c)).collect())
    }

    pub fn mul(&self, a: &Poly, b: &Poly) -> Poly {
        if a.is_zero() || b.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![0u64; a.0.len() + b.0.len() - 1];
        for (i, &x) in a.0.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.0.iter().enumerate() {
                out[i + j] = (out[i + j] + self.mulmod(x, y)) % self.p;
            }
        }
        Poly::from_coeffs(out)
    }

    /// Division with remainder; panics on a zero divisor.
    pub fn div_rem(&self, a: &Poly, b: &Poly) -> (Poly, Poly) {
        let db = b.degree().expect("polynomial division by zero");
        let inv = self.inv_scalar(b.lead());
        let mut rem = a.0.clone();
        let Some(da) = a.degree() else {
            return (Poly::zero(), Poly::zero());
        };
        if da < db {
            return (Poly::zero(), a.clone());
        }
        let mut quot = vec![0u64; da - db + 1];
        for k in (0..=da - db).rev() {
            let c = self.mulmod(rem[k + db], inv);
            quot[k] = c;
            if c == 0 {
                continue;
            }
            for (j, &bj) in b.0.iter().enumerate() {
                let sub = self.mulmod(c, bj);
                rem[k + j] = (rem[k + j] + self.p - sub) % self.p;
            }
        }
        (Poly::from_coeffs(quot), Poly::from_coeffs(rem))
    }

    pub fn rem(&self, a: &Poly, b: &Poly) -> Poly {
        self.div_rem(a, b).1
    }

    pub fn monic(&self, a: &Poly) -> Poly {
        if a.is_zero() {
            return Poly::zero();
        }
        self.scale(a, self.inv_scalar(a.lead()))
    }

    pub fn gcd(&self, a: &Poly, b: &Poly) -> Poly {
        let (mut x, mut y) = (a.clone(), b.clone());
        while !y.is_zero() {
            let r = self.rem(&x, &y);
            x = y;
            y = r;
        }
        self.monic(&x)
    }

    /// Returns `(g, s, t)` with `s·a + t·b = g` and `g` monic (or zero).
    pub fn ext_gcd(&self, a: &Poly, b: &Poly) -> (Poly, Poly, Poly) {
        let (mut r0, mut r1) = (a.clone(), b.clone());
        let (mut s0, mut s1) = (Poly::constant(1), Poly::zero());
        let (mut t0, mut t1) = (Poly::zero(), Poly::constant(1));
        while !r1.is_zero() {
            let (q, r) = self.div_rem(&r0, &r1);
            r0 = std::mem::replace(&mut r1, r);
            let s2 = self.sub(&s0, &self.mul(&q, &s1));
            s0 = std::mem::replace(&mut s1, s2);
            let t2 = self.sub(&t0, &self.mul(&q, &t1));
            t0 = std::mem::replace(&mut t1, t2);
        }
        if r0.is_zero() {
            return (r0, s0, t0);
        }
        let inv = self.inv_scalar(r0.lead());
        (self.scale(&r0, inv), self.scale(&s0, inv), self.scale(&t0, inv))
    }

    pub fn pow_mod(&self, base: &Poly, mut e: u128, modulus: &Poly) -> Poly {
        let mut result = self.rem(&Poly::constant(1), modulus);
        let mut b = self.rem(base, modulus);
        while e > 0 {
            if e & 1 == 1 {
                result = self.rem(&self.mul(&result, &b), modulus);
            }
            b = self.rem(&self.mul(&b, &b), modulus);
            e >>= 1;
        }
        result
    }

    pub fn pow(&self, base: &Poly, e: u32) -> Poly {
        (0..e).fold(Poly::constant(1), |acc, _| self.mul(&acc, base))
    }

    pub fn derivative(&self, a: &Poly) -> Poly {
        Poly::from_coeffs(
            a.0.iter()
                .enumerate()
                .skip(1)
                .map(|(i, &c)| self.mulmod(c, i as u64 % self.p))
                .collect(),
        )
    }

    /// Inverse of the Frobenius on a polynomial whose exponents are all multiples of `p`.
    fn pth_root(&self, a: &Poly) -> Poly {
        Poly::from_coeffs(a.0.iter().step_by(self.p as usize).copied().collect())
    }

    /// Squarefree decomposition of a monic polynomial: pairs `(g, k)` with `a = Π g^k`.
    fn squarefree(&self, a: &Poly) -> Vec<(Poly, u32)> {
        let mut out = Vec::new();
        if a.degree().unwrap_or(0) == 0 {
            return out;
        }
        let d = self.derivative(a);
        if d.is_zero() {
            for (g, k) in self.squarefree(&self.pth_root(a)) {
                out.push((g, k * self.p as u32));
            }
            return out;
        }
        let mut c = self.gcd(a, &d);
        let mut w = self.div_rem(a, &c).0;
        let mut i = 1;
        while w.degree().unwrap_or(0) > 0 {
            let y = self.gcd(&w, &c);
            let z = self.div_rem(&w, &y).0;
            if z.degree().unwrap_or(0) > 0 {
                out.push((self.monic(&z), i));
            }
            i += 1;
            c = self.div_rem(&c, &y).0;
            w = y;
        }
        if c.degree().unwrap_or(0) > 0 {
            for (g, k) in self.squarefree(&self.pth_root(&self.monic(&c))) {
                out.push((g, k * self.p as u32));
            }
        }
        out
    }

    /// Distinct-degree factorization of a squarefree monic polynomial.
    fn distinct_degree(&self, a: &Poly) -> Vec<(Poly, usize)> {
        let mut out = Vec::new();
        let mut f = a.clone();
        let x = Poly::monomial(1);
        let mut h = self.rem(&x, &f);
        let mut d = 0;
        while f.degree().unwrap_or(0) >= 2 * (d + 1) {
            d += 1;
            h = self.pow_mod(&h, self.p as u128, &f);
            let g = self.gcd(&self.sub(&h, &x), &f);
            if g.degree().unwrap_or(0) > 0 {
                out.push((g.clone(), d));
                f = self.div_rem(&f, &g).0;
                h = self.rem(&h, &f);
            }
        }
        if f.degree().unwrap_or(0) > 0 {
            let deg = f.degree().unwrap();
            out.push((f, deg));
        }
        out
    }

    /// Candidate splitting polynomials enumerated deterministically by base-`p` digits.
    fn candidate(&self, k: u64, below: usize) -> Poly {
        let mut coeffs = Vec::new();
        let mut k = k;
        while k > 0 && coeffs.len() < below {
            coeffs.push(k % self.p);
            k /= self.p;
        }
        Poly::from_coeffs(coeffs)
    }

    /// Equal-degree splitting of a squarefree monic product of irreducibles of degree `d`.
    fn equal_degree(&self, a: &Poly, d: usize, out: &mut Vec<Poly>) {
        let n = a.degree().unwrap_or(0);
        if n == 0 {
            return;
        }
        if n == d {
            out.push(a.clone());
            return;
        }
        let mut k = self.p;
        loop {
            let cand = self.candidate(k, n);
            k += 1;
            if cand.degree().unwrap_or(0) == 0 {
                continue;
            }
            let split = if self.p == 2 {
                // trace map t + t^2 + ... + t^(2^(d-1))
                let mut acc = self.rem(&cand, a);
                let mut term = acc.clone();
                for _ in 1..d {
                    term = self.rem(&self.mul(&term, &term), a);
                    acc = self.add(&acc, &term);
                }
                acc
            } else {
                let e = (self.p as u128).pow(d as u32).saturating_sub(1) / 2;
                self.sub(&self.pow_mod(&cand, e, a), &Poly::constant(1))
            };
            let g = self.gcd(&split, a);
            let dg = g.degree().unwrap_or(0);
            if dg > 0 && dg < n {
                self.equal_degree(&g, d, out);
                self.equal_degree(&self.div_rem(a, &g).0, d, out);
                return;
            }
        }
    }

    /// Monic irreducible factors with multiplicities, sorted. The input must be nonzero.
    pub fn factor(&self, a: &Poly) -> Vec<(Poly, u32)> {
        assert!(!a.is_zero(), "cannot factor the zero polynomial");
        let a = self.monic(a);
        let mut out: Vec<(Poly, u32)> = Vec::new();
        for (sf, mult) in self.squarefree(&a) {
            for (block, d) in self.distinct_degree(&sf) {
                let mut irr = Vec::new();
                self.equal_degree(&block, d, &mut irr);
                for g in irr {
                    match out.iter_mut().find(|(h, _)| *h == g) {
                        Some(entry) => entry.1 += mult,
                        None => out.push((g, mult)),
                    }
                }
            }
        }
        out.sort();
        out
    }

    pub fn is_irreducible(&self, a: &Poly) -> bool {
        a.degree().unwrap_or(0) >= 1 && {
            let f = self.factor(a);
            f.len() == 1 && f[0].1 == 1
        }
    }

    /// All polynomials of degree `< n`, ordered by their base-`p` encoding.
    pub fn all_below(&self, n: usize) -> impl Iterator<Item = Poly> + '_ {
        let total = (self.p as u128).pow(n as u32);
        (0..total).map(move |mut k| {
            let mut coeffs = Vec::with_capacity(n);
            for _ in 0..n {
                coeffs.push((k % self.p as u128) as u64);
                k /= self.p as u128;
            }
            Poly::from_coeffs(coeffs)
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn brute_factor(f: &PolyField, a: &Poly) -> Vec<(Poly, u32)> {
        // trial division by every monic polynomial in increasing degree
        let mut a = f.monic(a);
        let mut out = Vec::new();
        let mut deg = 1;
        while a.degree().unwrap_or(0) >= 1 {
            let mut found = false;
            for low in f.all_below(deg) {
                let cand = f.add(&Poly::monomial(deg), &low);
                let mut k = 0;
                loop {
                    let (q, r) = f.div_rem(&a, &cand);
                    if !r.is_zero() {
                        break;
                    }
                    a = q;
                    k += 1;
                }
                if k > 0 {
                    out.push((cand, k));
                    found = true;
                }
            }
            if !found || a.degree().unwrap_or(0) < deg {
                deg += 1;
            }
        }
        out.sort();
        out
    }

    #[test]
    fn factor_matches_trial_division() {
        for p in [2u64, 3, 5] {
            let f = PolyField::new(p);
            for k in 1..400u64 {
                let a = f.candidate(k, 7);
                if a.degree().unwrap_or(0) == 0 {
                    continue;
                }
                assert_eq!(f.factor(&a), brute_factor(&f, &a), "p={p} a={a}");
            }
        }
    }

    #[test]
    fn squarefree_powers_of_p() {
        let f = PolyField::new(2);
        // (t+1)^4 (t^2+t+1)^2 t
        let a = f.mul(
            &f.pow(&Poly::from_coeffs(vec![1, 1]), 4),
            &f.mul(&f.pow(&Poly::from_coeffs(vec![1, 1, 1]), 2), &Poly::monomial(1)),
        );
        assert_eq!(
            f.factor(&a),
            vec![
                (Poly::from_coeffs(vec![0, 1]), 1),
                (Poly::from_coeffs(vec![1, 1]), 4),
                (Poly::from_coeffs(vec![1, 1, 1]), 2)
            ]
        );
    }

    #[test]
    fn ext_gcd_identity() {
        let f = PolyField::new(3);
        let a = Poly::from_coeffs(vec![2, 0, 1, 1]);
        let b = Poly::from_coeffs(vec![1, 1, 0, 2]);
        let (g, s, t) = f.ext_gcd(&a, &b);
        assert_eq!(f.add(&f.mul(&s, &a), &f.mul(&t, &b)), g);
        assert_eq!(g.lead(), 1);
    }

    #[test]
    fn display() {
        assert_eq!(Poly::from_coeffs(vec![1, 1, 1]).to_string(), "t^2+t+1");
        assert_eq!(Poly::from_coeffs(vec![0, 2]).to_string(), "2t");
        assert_eq!(Poly::zero().to_string(), "0");
    }
}
