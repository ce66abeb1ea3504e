//! Euclidean domains (ℤ and F_p[t]) and their quotients by a single element.

use std::fmt::Debug;
use std::hash::Hash;

use super::poly::{Poly, PolyField};
use super::{Elem, ElemRing};
use crate::error::{Error, Result};

pub trait Domain: Clone + Debug + Send + Sync + 'static {
    type T: Clone + Eq + Ord + Hash + Debug + Send + Sync;

    fn zero(&self) -> Self::T;
    fn one(&self) -> Self::T;
    fn is_zero(&self, a: &Self::T) -> bool;
    fn add(&self, a: &Self::T, b: &Self::T) -> Self::T;
    fn sub(&self, a: &Self::T, b: &Self::T) -> Self::T;
    fn mul(&self, a: &Self::T, b: &Self::T) -> Self::T;
    fn neg(&self, a: &Self::T) -> Self::T;
    /// Euclidean division; for a nonzero divisor the remainder is the canonical
    /// representative of its class.
    fn div_rem(&self, a: &Self::T, b: &Self::T) -> (Self::T, Self::T);
    fn norm(&self, a: &Self::T) -> u128;
    /// `(n, u)` with `u` a unit and `u·a = n` the associate normal form.
    fn normalize(&self, a: &Self::T) -> (Self::T, Self::T);
    /// Normalized irreducible factors of a nonzero element, sorted.
    fn factor(&self, a: &Self::T) -> Vec<(Self::T, u32)>;
    /// Canonical representatives modulo a nonzero element.
    fn residues(&self, d: &Self::T) -> Vec<Self::T>;
    fn residue_count(&self, d: &Self::T) -> u128;
    fn wrap(&self, a: Self::T) -> Elem;
    fn unwrap<'a>(&self, e: &'a Elem) -> &'a Self::T;
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct IntDomain;

fn checked(v: Option<i128>) -> i128 {
    v.expect("integer overflow in exact arithmetic")
}

impl Domain for IntDomain {
    type T = i128;

    fn zero(&self) -> i128 {
        0
    }
    fn one(&self) -> i128 {
        1
    }
    fn is_zero(&self, a: &i128) -> bool {
        *a == 0
    }
    fn add(&self, a: &i128, b: &i128) -> i128 {
        checked(a.checked_add(*b))
    }
    fn sub(&self, a: &i128, b: &i128) -> i128 {
        checked(a.checked_sub(*b))
    }
    fn mul(&self, a: &i128, b: &i128) -> i128 {
        checked(a.checked_mul(*b))
    }
    fn neg(&self, a: &i128) -> i128 {
        checked(a.checked_neg())
    }
    fn div_rem(&self, a: &i128, b: &i128) -> (i128, i128) {
        (a.div_euclid(*b), a.rem_euclid(*b))
    }
    fn norm(&self, a: &i128) -> u128 {
        a.unsigned_abs()
    }
    fn normalize(&self, a: &i128) -> (i128, i128) {
        if *a < 0 {
            (self.neg(a), -1)
        } else {
            (*a, 1)
        }
    }
    fn factor(&self, a: &i128) -> Vec<(i128, u32)> {
        let mut n = a.unsigned_abs();
        let mut out = Vec::new();
        let mut p = 2u128;
        while p * p <= n {
            let mut e = 0;
            while n.is_multiple_of(p) {
                n /= p;
                e += 1;
            }
            if e > 0 {
                out.push((p as i128, e));
            }
            p += if p == 2 { 1 } else { 2 };
        }
        if n > 1 {
            out.push((n as i128, 1));
        }
        out
    }
    fn residues(&self, d: &i128) -> Vec<i128> {
        (0..d.abs()).collect()
    }
    fn residue_count(&self, d: &i128) -> u128 {
        d.unsigned_abs()
    }
    fn wrap(&self, a: i128) -> Elem {
        Elem::Int(a)
    }
    fn unwrap<'a>(&self, e: &'a Elem) -> &'a i128 {
        match e {
            Elem::Int(a) => a,
            other => panic!("expected an integer, got {other:?}"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PolyDomain(pub PolyField);

impl Domain for PolyDomain {
    type T = Poly;

    fn zero(&self) -> Poly {
        Poly::zero()
    }
    fn one(&self) -> Poly {
        Poly::constant(1)
    }
    fn is_zero(&self, a: &Poly) -> bool {
        a.is_zero()
    }
    fn add(&self, a: &Poly, b: &Poly) -> Poly {
        self.0.add(a, b)
    }
    fn sub(&self, a: &Poly, b: &Poly) -> Poly {
        self.0.sub(a, b)
    }
    fn mul(&self, a: &Poly, b: &Poly) -> Poly {
        self.0.mul(a, b)
    }
    fn neg(&self, a: &Poly) -> Poly {
        self.0.neg(a)
    }
    fn div_rem(&self, a: &Poly, b: &Poly) -> (Poly, Poly) {
        self.0.div_rem(a, b)
    }
    fn norm(&self, a: &Poly) -> u128 {
        a.degree().map_or(0, |d| d as u128 + 1)
    }
    fn normalize(&self, a: &Poly) -> (Poly, Poly) {
        if a.is_zero() {
            return (Poly::zero(), Poly::constant(1));
        }
        let inv = self.0.inv_scalar(a.lead());
        (self.0.scale(a, inv), Poly::constant(inv))
    }
    fn factor(&self, a: &Poly) -> Vec<(Poly, u32)> {
        if a.degree() == Some(0) {
            return Vec::new();
        }
        self.0.factor(a)
    }
    fn residues(&self, d: &Poly) -> Vec<Poly> {
        self.0.all_below(d.degree().unwrap_or(0)).collect()
    }
    fn residue_count(&self, d: &Poly) -> u128 {
        (self.0.p() as u128).pow(d.degree().unwrap_or(0) as u32)
    }
    fn wrap(&self, a: Poly) -> Elem {
        Elem::Poly(a)
    }
    fn unwrap<'a>(&self, e: &'a Elem) -> &'a Poly {
        match e {
            Elem::Poly(a) => a,
            other => panic!("expected a polynomial, got {other:?}"),
        }
    }
}

/// Returns `(g, s, t)` with `s·a + t·b = g`, `g` normalized; `(0, 1, 0)` for two zeros.
pub fn ext_gcd<D: Domain>(d: &D, a: &D::T, b: &D::T) -> (D::T, D::T, D::T) {
    let (mut r0, mut r1) = (a.clone(), b.clone());
    let (mut s0, mut s1) = (d.one(), d.zero());
    let (mut t0, mut t1) = (d.zero(), d.one());
    while !d.is_zero(&r1) {
        let (q, r) = d.div_rem(&r0, &r1);
        r0 = std::mem::replace(&mut r1, r);
        let s2 = d.sub(&s0, &d.mul(&q, &s1));
        s0 = std::mem::replace(&mut s1, s2);
        let t2 = d.sub(&t0, &d.mul(&q, &t1));
        t0 = std::mem::replace(&mut t1, t2);
    }
    let (g, u) = d.normalize(&r0);
    (g, d.mul(&u, &s0), d.mul(&u, &t0))
}

pub fn gcd<D: Domain>(d: &D, a: &D::T, b: &D::T) -> D::T {
    let (mut x, mut y) = (a.clone(), b.clone());
    while !d.is_zero(&y) {
        let r = d.div_rem(&x, &y).1;
        x = y;
        y = r;
    }
    d.normalize(&x).0
}

/// `D/(n)`; a zero modulus denotes the domain itself.
#[derive(Clone, Debug)]
pub struct Quotient<D: Domain> {
    pub dom: D,
    pub n: D::T,
    primes: Vec<D::T>,
}

impl<D: Domain> Quotient<D> {
    pub fn new(dom: D, n: D::T) -> Self {
        let n = dom.normalize(&n).0;
        let primes = if dom.is_zero(&n) {
            Vec::new()
        } else {
            dom.factor(&n).into_iter().map(|(p, _)| p).collect()
        };
        Quotient { dom, n, primes }
    }

    pub fn is_full(&self) -> bool {
        self.dom.is_zero(&self.n)
    }

    fn canon(&self, a: D::T) -> D::T {
        if self.is_full() {
            a
        } else {
            self.dom.div_rem(&a, &self.n).1
        }
    }

    fn u<'a>(&self, e: &'a Elem) -> &'a D::T {
        self.dom.unwrap(e)
    }

    fn w(&self, a: D::T) -> Elem {
        self.dom.wrap(a)
    }

    /// Normalized generator of the ideal `(a)`; zero stands for the zero ideal.
    fn gen(&self, a: &D::T) -> D::T {
        if self.is_full() {
            return self.dom.normalize(a).0;
        }
        let g = gcd(&self.dom, a, &self.n);
        if g == self.n {
            self.dom.zero()
        } else {
            g
        }
    }

    /// A unit `u` with `u·a` equal to the normalized generator of `(a)`.
    fn unit_to(&self, a: &D::T) -> D::T {
        if self.is_full() {
            return self.dom.normalize(a).1;
        }
        let a = self.canon(a.clone());
        if self.dom.is_zero(&a) {
            return self.dom.one();
        }
        let (g, s, _) = ext_gcd(&self.dom, &a, &self.n);
        let m = self.dom.div_rem(&self.n, &g).0;
        // s is prime to n/g; shift it by a multiple of n/g to become prime to n
        let mut c = self.dom.one();
        for p in &self.primes {
            let divides = |x: &D::T| self.dom.is_zero(&self.dom.div_rem(x, p).1);
            if !divides(&m) && !divides(&s) {
                c = self.dom.mul(&c, p);
            }
        }
        self.canon(self.dom.add(&s, &self.dom.mul(&c, &m)))
    }

    fn divides_t(&self, d: &D::T, a: &D::T) -> bool {
        let g = self.gen(d);
        if self.dom.is_zero(&g) {
            self.dom.is_zero(&self.canon(a.clone()))
        } else {
            self.dom.is_zero(&self.dom.div_rem(a, &g).1)
        }
    }

    fn ideal_factors(&self, i: &D::T) -> Vec<(D::T, u32)> {
        if self.dom.is_zero(i) {
            if self.is_full() {
                Vec::new()
            } else {
                self.dom.factor(&self.n)
            }
        } else {
            self.dom.factor(i)
        }
    }

    fn pow(&self, p: &D::T, e: u32) -> D::T {
        (0..e).fold(self.dom.one(), |acc, _| self.dom.mul(&acc, p))
    }
}

impl<D: Domain> ElemRing for Quotient<D> {
    fn zero(&self) -> Elem {
        self.w(self.dom.zero())
    }
    fn one(&self) -> Elem {
        self.w(self.canon(self.dom.one()))
    }
    fn is_zero(&self, a: &Elem) -> bool {
        self.dom.is_zero(self.u(a))
    }
    fn add(&self, a: &Elem, b: &Elem) -> Elem {
        self.w(self.canon(self.dom.add(self.u(a), self.u(b))))
    }
    fn sub(&self, a: &Elem, b: &Elem) -> Elem {
        self.w(self.canon(self.dom.sub(self.u(a), self.u(b))))
    }
    fn mul(&self, a: &Elem, b: &Elem) -> Elem {
        self.w(self.canon(self.dom.mul(self.u(a), self.u(b))))
    }
    fn neg(&self, a: &Elem) -> Elem {
        self.w(self.canon(self.dom.neg(self.u(a))))
    }
    fn canonical(&self, a: &Elem) -> Elem {
        self.w(self.canon(self.u(a).clone()))
    }
    fn is_unit(&self, a: &Elem) -> bool {
        self.gen(self.u(a)) == self.dom.one()
    }
    fn inverse(&self, a: &Elem) -> Option<Elem> {
        if !self.is_unit(a) {
            return None;
        }
        if self.is_full() {
            let (_, u) = self.dom.normalize(self.u(a));
            return Some(self.w(u));
        }
        let (_, s, _) = ext_gcd(&self.dom, self.u(a), &self.n);
        Some(self.w(self.canon(s)))
    }
    fn divides(&self, d: &Elem, a: &Elem) -> bool {
        self.divides_t(self.u(d), self.u(a))
    }
    fn exact_div(&self, a: &Elem, d: &Elem) -> Option<Elem> {
        let (a, d) = (self.u(a), self.u(d));
        if !self.divides_t(d, a) {
            return None;
        }
        if self.dom.is_zero(&self.gen(d)) {
            return Some(self.zero());
        }
        if self.is_full() {
            return Some(self.w(self.dom.div_rem(a, d).0));
        }
        let (g, s, _) = ext_gcd(&self.dom, d, &self.n);
        let q = self.dom.div_rem(a, &g).0;
        Some(self.w(self.canon(self.dom.mul(&s, &q))))
    }
    fn ideal_gen(&self, a: &Elem) -> Elem {
        self.w(self.gen(self.u(a)))
    }
    fn unit_to_gen(&self, a: &Elem) -> Elem {
        self.w(self.unit_to(self.u(a)))
    }
    fn bezout_full(&self, a: &Elem, b: &Elem) -> Result<[Elem; 5]> {
        let (a, b) = (self.u(a), self.u(b));
        if self.dom.is_zero(a) && self.dom.is_zero(b) {
            return Ok([self.zero(), self.one(), self.zero(), self.one(), self.zero()]);
        }
        let (g, s, t) = ext_gcd(&self.dom, a, b);
        let a1 = self.dom.div_rem(a, &g).0;
        let b1 = self.dom.div_rem(b, &g).0;
        Ok([g, s, t, a1, b1].map(|x| self.w(self.canon(x))))
    }
    fn intersect(&self, i: &Elem, j: &Elem) -> Result<Elem> {
        let (i, j) = (self.gen(self.u(i)), self.gen(self.u(j)));
        if self.dom.is_zero(&i) || self.dom.is_zero(&j) {
            return Ok(self.zero());
        }
        let g = gcd(&self.dom, &i, &j);
        let l = self.dom.mul(&self.dom.div_rem(&i, &g).0, &j);
        Ok(self.w(self.gen(&l)))
    }
    fn radical(&self, i: &Elem) -> Result<Elem> {
        let i = self.gen(self.u(i));
        if self.is_full() && self.dom.is_zero(&i) {
            return Ok(self.zero());
        }
        let r = self
            .ideal_factors(&i)
            .iter()
            .fold(self.dom.one(), |acc, (p, _)| self.dom.mul(&acc, p));
        Ok(self.w(self.gen(&r)))
    }
    fn minimal_primes(&self, i: &Elem) -> Result<Vec<Elem>> {
        let i = self.gen(self.u(i));
        if i == self.dom.one() {
            return Ok(Vec::new());
        }
        if self.is_full() && self.dom.is_zero(&i) {
            return Ok(vec![self.zero()]);
        }
        let mut out: Vec<Elem> = self
            .ideal_factors(&i)
            .into_iter()
            .map(|(p, _)| self.w(self.gen(&p)))
            .collect();
        out.sort();
        Ok(out)
    }
    fn primary_split(&self, i: &Elem) -> Result<Vec<(Elem, Elem)>> {
        let i = self.gen(self.u(i));
        if i == self.dom.one() {
            return Ok(Vec::new());
        }
        if self.is_full() && self.dom.is_zero(&i) {
            return Ok(vec![(self.zero(), self.one())]);
        }
        let whole = if self.dom.is_zero(&i) { self.n.clone() } else { i };
        Ok(self
            .dom
            .factor(&whole)
            .into_iter()
            .map(|(p, e)| {
                let pe = self.pow(&p, e);
                let cof = self.dom.div_rem(&whole, &pe).0;
                (self.w(self.gen(&pe)), self.w(self.canon(cof)))
            })
            .collect())
    }
    fn residue_size(&self, i: &Elem) -> Option<u128> {
        let i = self.gen(self.u(i));
        if self.dom.is_zero(&i) {
            if self.is_full() {
                None
            } else {
                Some(self.dom.residue_count(&self.n))
            }
        } else {
            Some(self.dom.residue_count(&i))
        }
    }
    fn residues(&self, i: &Elem) -> Option<Vec<Elem>> {
        let i = self.gen(self.u(i));
        let d = if self.dom.is_zero(&i) {
            if self.is_full() {
                return None;
            }
            self.n.clone()
        } else {
            i
        };
        Some(self.dom.residues(&d).into_iter().map(|x| self.w(x)).collect())
    }
    fn reduce_mod(&self, x: &Elem, i: &Elem) -> Elem {
        let i = self.gen(self.u(i));
        if self.dom.is_zero(&i) {
            self.canonical(x)
        } else {
            self.w(self.dom.div_rem(self.u(x), &i).1)
        }
    }
    fn elements(&self) -> Option<Vec<Elem>> {
        self.residues(&self.zero())
    }
    fn pivot_rank(&self, a: &Elem) -> u128 {
        let g = self.gen(self.u(a));
        if self.dom.is_zero(&g) {
            u128::MAX
        } else {
            self.dom.norm(&g)
        }
    }
    fn is_bezout(&self) -> bool {
        true
    }
    fn gcd_bezout(&self, a: &Elem, b: &Elem) -> Result<(Elem, Elem, Elem)> {
        if self.is_zero(&self.canonical(a)) && self.is_zero(&self.canonical(b)) {
            return Ok((self.zero(), self.zero(), self.zero()));
        }
        let [g0, s, t, _, _] = self.bezout_full(a, b)?;
        let w = self.unit_to_gen(&g0);
        Ok((self.ideal_gen(&g0), self.mul(&w, &s), self.mul(&w, &t)))
    }
}

/// Rejects moduli that are not usable as a quotient.
pub fn check_int_modulus(n: u64) -> Result<()> {
    if n < 2 {
        return Err(Error::InvalidRing(format!("Z/{n} needs n >= 2")));
    }
    Ok(())
}
