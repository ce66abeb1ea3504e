//! Finite local rings given by explicit addition and multiplication tables.

use std::collections::HashMap;

use fixedbitset::FixedBitSet;

use super::{Elem, ElemRing};
use crate::error::{Error, Result};

pub const TABLE_CAP: usize = 256;

#[derive(Clone, Debug)]
pub struct TableRing {
    n: usize,
    add: Vec<u16>,
    mul: Vec<u16>,
    neg: Vec<u16>,
    zero: u16,
    one: u16,
    unit: Vec<bool>,
    principal: Vec<FixedBitSet>,
    gen: Vec<u16>,
    by_set: HashMap<FixedBitSet, u16>,
    bezout: bool,
    maximal: Option<u16>,
}

impl PartialEq for TableRing {
    fn eq(&self, other: &Self) -> bool {
        self.add == other.add && self.mul == other.mul
    }
}

impl Eq for TableRing {}

fn square(name: &str, rows: &[Vec<u64>], n: usize) -> Result<Vec<u16>> {
    if rows.len() != n || rows.iter().any(|r| r.len() != n) {
        return Err(Error::InvalidRing(format!("{name} table must be {n}x{n}")));
    }
    let mut out = Vec::with_capacity(n * n);
    for &v in rows.iter().flatten() {
        if v as usize >= n {
            return Err(Error::InvalidRing(format!("{name} table entry {v} out of range")));
        }
        out.push(v as u16);
    }
    Ok(out)
}

impl TableRing {
    /// Validates the tables and precomputes the principal-ideal structure.
    pub fn new(add: &[Vec<u64>], mul: &[Vec<u64>], units: &[u64]) -> Result<Self> {
        let n = add.len();
        if n == 0 {
            return Err(Error::InvalidRing("empty table".into()));
        }
        if n > TABLE_CAP {
            return Err(Error::TooLarge { what: "table ring", size: n, cap: TABLE_CAP });
        }
        let add = square("addition", add, n)?;
        let mul = square("multiplication", mul, n)?;
        let a = |x: usize, y: usize| add[x * n + y] as usize;
        let m = |x: usize, y: usize| mul[x * n + y] as usize;

        let zero = (0..n)
            .find(|&z| (0..n).all(|x| a(z, x) == x))
            .ok_or_else(|| Error::InvalidRing("no additive identity".into()))?;
        let one = (0..n)
            .find(|&e| (0..n).all(|x| m(e, x) == x))
            .ok_or_else(|| Error::InvalidRing("no multiplicative identity".into()))?;
        if zero == one {
            return Err(Error::InvalidRing("the zero ring is not allowed".into()));
        }
        let mut neg = vec![0u16; n];
        for x in 0..n {
            let y = (0..n)
                .find(|&y| a(x, y) == zero)
                .ok_or_else(|| Error::InvalidRing(format!("element {x} has no additive inverse")))?;
            neg[x] = y as u16;
        }
        for x in 0..n {
            for y in 0..n {
                if a(x, y) != a(y, x) || m(x, y) != m(y, x) {
                    return Err(Error::InvalidRing(format!("tables not commutative at ({x},{y})")));
                }
            }
        }
        for x in 0..n {
            for y in 0..n {
                let (xy_a, xy_m) = (a(x, y), m(x, y));
                for z in 0..n {
                    if a(xy_a, z) != a(x, a(y, z)) {
                        return Err(Error::InvalidRing("addition not associative".into()));
                    }
                    if m(xy_m, z) != m(x, m(y, z)) {
                        return Err(Error::InvalidRing("multiplication not associative".into()));
                    }
                    if m(x, a(y, z)) != a(m(x, y), m(x, z)) {
                        return Err(Error::InvalidRing("multiplication not distributive".into()));
                    }
                }
            }
        }
        let unit: Vec<bool> = (0..n).map(|x| (0..n).any(|y| m(x, y) == one)).collect();
        let mut listed = vec![false; n];
        for &u in units {
            if u as usize >= n {
                return Err(Error::InvalidRing(format!("unit {u} out of range")));
            }
            listed[u as usize] = true;
        }
        if listed != unit {
            return Err(Error::InvalidRing("unit list does not match the multiplication table".into()));
        }
        for x in 0..n {
            for y in 0..n {
                if !unit[x] && !unit[y] && unit[a(x, y)] {
                    return Err(Error::InvalidRing("ring is not local".into()));
                }
            }
        }

        let principal: Vec<FixedBitSet> = (0..n)
            .map(|x| {
                let mut s = FixedBitSet::with_capacity(n);
                for r in 0..n {
                    s.insert(m(r, x));
                }
                s
            })
            .collect();
        let mut by_set: HashMap<FixedBitSet, u16> = HashMap::new();
        for (x, s) in principal.iter().enumerate() {
            by_set.entry(s.clone()).or_insert(x as u16);
        }
        let gen: Vec<u16> = principal.iter().map(|s| by_set[s]).collect();

        let mut distinct: Vec<&FixedBitSet> = by_set.keys().collect();
        distinct.sort_by_key(|s| s.count_ones(..));
        let mut bezout = true;
        'outer: for (i, s) in distinct.iter().enumerate() {
            for t in &distinct[i + 1..] {
                let mut sum = FixedBitSet::with_capacity(n);
                for x in s.ones() {
                    for y in t.ones() {
                        sum.insert(a(x, y));
                    }
                }
                if !by_set.contains_key(&sum) {
                    bezout = false;
                    break 'outer;
                }
            }
        }
        let mut max_set = FixedBitSet::with_capacity(n);
        for x in (0..n).filter(|&x| !unit[x]) {
            max_set.insert(x);
        }
        let maximal = by_set.get(&max_set).copied();

        Ok(TableRing {
            n,
            add,
            mul,
            neg,
            zero: zero as u16,
            one: one as u16,
            unit,
            principal,
            gen,
            by_set,
            bezout,
            maximal,
        })
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn add_table(&self) -> Vec<Vec<u64>> {
        self.add.chunks(self.n).map(|r| r.iter().map(|&v| v as u64).collect()).collect()
    }

    pub fn mul_table(&self) -> Vec<Vec<u64>> {
        self.mul.chunks(self.n).map(|r| r.iter().map(|&v| v as u64).collect()).collect()
    }

    pub fn units(&self) -> Vec<u64> {
        (0..self.n).filter(|&x| self.unit[x]).map(|x| x as u64).collect()
    }

    fn ix(e: &Elem) -> usize {
        match e {
            Elem::Idx(i) => *i as usize,
            other => panic!("expected a table index, got {other:?}"),
        }
    }

    fn a(&self, x: usize, y: usize) -> usize {
        self.add[x * self.n + y] as usize
    }

    fn m(&self, x: usize, y: usize) -> usize {
        self.mul[x * self.n + y] as usize
    }

    fn require_bezout(&self) -> Result<()> {
        if self.bezout {
            Ok(())
        } else {
            Err(Error::UnsupportedRing("table ring has a non-principal two-generated ideal".into()))
        }
    }

    fn maximal(&self) -> Result<usize> {
        self.maximal
            .map(|m| m as usize)
            .ok_or_else(|| Error::UnsupportedRing("maximal ideal is not principal".into()))
    }

    fn is_proper(&self, i: usize) -> bool {
        !self.unit[self.gen[i] as usize]
    }
}

impl ElemRing for TableRing {
    fn zero(&self) -> Elem {
        Elem::Idx(self.zero)
    }
    fn one(&self) -> Elem {
        Elem::Idx(self.one)
    }
    fn is_zero(&self, a: &Elem) -> bool {
        Self::ix(a) == self.zero as usize
    }
    fn add(&self, a: &Elem, b: &Elem) -> Elem {
        Elem::Idx(self.a(Self::ix(a), Self::ix(b)) as u16)
    }
    fn sub(&self, a: &Elem, b: &Elem) -> Elem {
        Elem::Idx(self.a(Self::ix(a), self.neg[Self::ix(b)] as usize) as u16)
    }
    fn mul(&self, a: &Elem, b: &Elem) -> Elem {
        Elem::Idx(self.m(Self::ix(a), Self::ix(b)) as u16)
    }
    fn neg(&self, a: &Elem) -> Elem {
        Elem::Idx(self.neg[Self::ix(a)])
    }
    fn canonical(&self, a: &Elem) -> Elem {
        a.clone()
    }
    fn is_unit(&self, a: &Elem) -> bool {
        self.unit[Self::ix(a)]
    }
    fn inverse(&self, a: &Elem) -> Option<Elem> {
        let a = Self::ix(a);
        (0..self.n).find(|&y| self.m(a, y) == self.one as usize).map(|y| Elem::Idx(y as u16))
    }
    fn divides(&self, d: &Elem, a: &Elem) -> bool {
        self.principal[Self::ix(d)].contains(Self::ix(a))
    }
    fn exact_div(&self, a: &Elem, d: &Elem) -> Option<Elem> {
        let (a, d) = (Self::ix(a), Self::ix(d));
        (0..self.n).find(|&q| self.m(q, d) == a).map(|q| Elem::Idx(q as u16))
    }
    fn ideal_gen(&self, a: &Elem) -> Elem {
        Elem::Idx(self.gen[Self::ix(a)])
    }
    fn unit_to_gen(&self, a: &Elem) -> Elem {
        let x = Self::ix(a);
        let g = self.gen[x] as usize;
        let u = (0..self.n)
            .find(|&u| self.unit[u] && self.m(u, x) == g)
            .expect("associates differ by a unit in a finite ring");
        Elem::Idx(u as u16)
    }
    fn bezout_full(&self, a: &Elem, b: &Elem) -> Result<[Elem; 5]> {
        self.require_bezout()?;
        let one = self.one();
        let zero = self.zero();
        if self.divides(a, b) {
            let b1 = self.exact_div(b, a).expect("divisibility just checked");
            Ok([a.clone(), one.clone(), zero, one, b1])
        } else {
            let a1 = self.exact_div(a, b).expect("ideals of a chain ring are comparable");
            Ok([b.clone(), zero, one.clone(), a1, one])
        }
    }
    fn gcd_bezout(&self, a: &Elem, b: &Elem) -> Result<(Elem, Elem, Elem)> {
        if self.is_zero(a) && self.is_zero(b) {
            return Ok((self.zero(), self.zero(), self.zero()));
        }
        let [g0, s, t, _, _] = self.bezout_full(a, b)?;
        let w = self.unit_to_gen(&g0);
        Ok((self.ideal_gen(&g0), self.mul(&w, &s), self.mul(&w, &t)))
    }
    fn intersect(&self, i: &Elem, j: &Elem) -> Result<Elem> {
        self.require_bezout()?;
        let mut s = self.principal[Self::ix(i)].clone();
        s.intersect_with(&self.principal[Self::ix(j)]);
        self.by_set
            .get(&s)
            .map(|&g| Elem::Idx(g))
            .ok_or_else(|| Error::UnsupportedRing("intersection is not principal".into()))
    }
    fn radical(&self, i: &Elem) -> Result<Elem> {
        if !self.is_proper(Self::ix(i)) {
            return Ok(self.one());
        }
        Ok(Elem::Idx(self.maximal()? as u16))
    }
    fn minimal_primes(&self, i: &Elem) -> Result<Vec<Elem>> {
        if !self.is_proper(Self::ix(i)) {
            return Ok(Vec::new());
        }
        Ok(vec![Elem::Idx(self.maximal()? as u16)])
    }
    fn primary_split(&self, i: &Elem) -> Result<Vec<(Elem, Elem)>> {
        self.require_bezout()?;
        if !self.is_proper(Self::ix(i)) {
            return Ok(Vec::new());
        }
        Ok(vec![(self.ideal_gen(i), self.one())])
    }
    fn residue_size(&self, i: &Elem) -> Option<u128> {
        Some((self.n / self.principal[Self::ix(i)].count_ones(..)) as u128)
    }
    fn residues(&self, i: &Elem) -> Option<Vec<Elem>> {
        let mut out: Vec<Elem> = (0..self.n)
            .map(|x| self.reduce_mod(&Elem::Idx(x as u16), i))
            .collect();
        out.sort();
        out.dedup();
        Some(out)
    }
    fn reduce_mod(&self, x: &Elem, i: &Elem) -> Elem {
        let x = Self::ix(x);
        let best = self.principal[Self::ix(i)].ones().map(|y| self.a(x, y)).min().unwrap_or(x);
        Elem::Idx(best as u16)
    }
    fn elements(&self) -> Option<Vec<Elem>> {
        Some((0..self.n).map(|x| Elem::Idx(x as u16)).collect())
    }
    fn pivot_rank(&self, a: &Elem) -> u128 {
        let a = Self::ix(a);
        if a == self.zero as usize {
            u128::MAX
        } else {
            (self.n - self.principal[a].count_ones(..)) as u128
        }
    }
    fn is_bezout(&self) -> bool {
        self.bezout
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn zmod(n: u64) -> TableRing {
        let add: Vec<Vec<u64>> = (0..n).map(|x| (0..n).map(|y| (x + y) % n).collect()).collect();
        let mul: Vec<Vec<u64>> = (0..n).map(|x| (0..n).map(|y| (x * y) % n).collect()).collect();
        let units: Vec<u64> = (0..n).filter(|&x| (0..n).any(|y| x * y % n == 1 % n)).collect();
        TableRing::new(&add, &mul, &units).unwrap()
    }

    #[test]
    fn chain_ring_is_bezout() {
        let r = zmod(8);
        assert!(r.is_bezout());
        assert_eq!(r.ideal_gen(&Elem::Idx(6)), Elem::Idx(2));
        assert_eq!(r.radical(&Elem::Idx(4)).unwrap(), Elem::Idx(2));
        assert_eq!(r.residue_size(&Elem::Idx(4)), Some(4));
        assert_eq!(r.reduce_mod(&Elem::Idx(7), &Elem::Idx(4)), Elem::Idx(3));
    }

    #[test]
    fn rejects_nonlocal_and_bad_units() {
        let n = 6u64;
        let add: Vec<Vec<u64>> = (0..n).map(|x| (0..n).map(|y| (x + y) % n).collect()).collect();
        let mul: Vec<Vec<u64>> = (0..n).map(|x| (0..n).map(|y| (x * y) % n).collect()).collect();
        assert!(matches!(TableRing::new(&add, &mul, &[1, 5]), Err(Error::InvalidRing(_))));
        assert!(matches!(TableRing::new(&add, &mul, &[1]), Err(Error::InvalidRing(_))));
    }

    #[test]
    fn gcd_bezout_in_chain_ring() {
        let r = zmod(9);
        for a in 0..9u16 {
            for b in 0..9u16 {
                let (ea, eb) = (Elem::Idx(a), Elem::Idx(b));
                let (g, u, v) = r.gcd_bezout(&ea, &eb).unwrap();
                assert_eq!(r.add(&r.mul(&u, &ea), &r.mul(&v, &eb)), g);
                assert!(r.divides(&g, &ea) && r.divides(&g, &eb));
            }
        }
    }
}
