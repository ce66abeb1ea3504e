//! Concrete Bézout rings, their elements, and principal-ideal arithmetic.
//!
//! Ideals are represented by a single normalized generator: the ideal `(a)` is
//! identified with [`ElemRing::ideal_gen`] of `a`, so equal ideals have equal
//! generators and the unit ideal is represented by the ring's one.

pub mod euclid;
pub mod poly;
pub mod table;

use std::fmt;
use std::ops::Deref;
use std::sync::Arc;

use serde::Serialize;

use crate::error::{Error, Result};
use euclid::{IntDomain, PolyDomain, Quotient};
use poly::{Poly, PolyField};
use table::TableRing;

/// A ring element. The variant is fixed by the ring it belongs to.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Elem {
    Int(i128),
    Poly(Poly),
    Tuple(Vec<Elem>),
    Idx(u16),
}

impl fmt::Display for Elem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Elem::Int(a) => write!(f, "{a}"),
            Elem::Poly(p) => write!(f, "{p}"),
            Elem::Idx(i) => write!(f, "{i}"),
            Elem::Tuple(parts) => {
                write!(f, "(")?;
                for (i, p) in parts.iter().enumerate() {
                    if i > 0 {
                        write!(f, ",")?;
                    }
                    write!(f, "{p}")?;
                }
                write!(f, ")")
            }
        }
    }
}

impl Serialize for Elem {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// Element-level operations shared by every ring kind.
///
/// Ideal-valued arguments and results are principal-ideal generators.
pub trait ElemRing: Send + Sync {
    fn zero(&self) -> Elem;
    fn one(&self) -> Elem;
    fn is_zero(&self, a: &Elem) -> bool;
    fn add(&self, a: &Elem, b: &Elem) -> Elem;
    fn sub(&self, a: &Elem, b: &Elem) -> Elem;
    fn mul(&self, a: &Elem, b: &Elem) -> Elem;
    fn neg(&self, a: &Elem) -> Elem;
    /// Canonical representative of a possibly unreduced value.
    fn canonical(&self, a: &Elem) -> Elem;
    fn is_unit(&self, a: &Elem) -> bool;
    fn inverse(&self, a: &Elem) -> Option<Elem>;
    /// `a ∈ (d)`.
    fn divides(&self, d: &Elem, a: &Elem) -> bool;
    /// Some `q` with `q·d = a`.
    fn exact_div(&self, a: &Elem, d: &Elem) -> Option<Elem>;
    fn ideal_gen(&self, a: &Elem) -> Elem;
    /// A unit `u` with `u·a = ideal_gen(a)`.
    fn unit_to_gen(&self, a: &Elem) -> Elem;
    /// `[g, s, t, a', b']` with `s·a + t·b = g`, `a = g·a'`, `b = g·b'` and
    /// `s·a' + t·b' = 1`; the generator `g` is not normalized.
    fn bezout_full(&self, a: &Elem, b: &Elem) -> Result<[Elem; 5]>;
    /// `(g, u, v)` with `u·a + v·b = g` and `(g) = (a) + (b)`, `g` normalized.
    fn gcd_bezout(&self, a: &Elem, b: &Elem) -> Result<(Elem, Elem, Elem)>;
    fn intersect(&self, i: &Elem, j: &Elem) -> Result<Elem>;
    fn radical(&self, i: &Elem) -> Result<Elem>;
    /// Minimal primes over an ideal, sorted; empty for the unit ideal.
    fn minimal_primes(&self, i: &Elem) -> Result<Vec<Elem>>;
    /// Pairwise comaximal ideals `J_k`, each with a single minimal prime, whose
    /// intersection is `I`, paired with an element generating the `R/J_k`
    /// summand inside `R/I`.
    fn primary_split(&self, i: &Elem) -> Result<Vec<(Elem, Elem)>>;
    /// `|R/I|`, or `None` when infinite.
    fn residue_size(&self, i: &Elem) -> Option<u128>;
    /// Canonical representatives of `R/I` when finite.
    fn residues(&self, i: &Elem) -> Option<Vec<Elem>>;
    /// The canonical representative of `x + I`.
    fn reduce_mod(&self, x: &Elem, i: &Elem) -> Elem;
    fn elements(&self) -> Option<Vec<Elem>>;
    /// Heuristic pivot preference for diagonal reduction; smaller is better.
    fn pivot_rank(&self, a: &Elem) -> u128;
    fn is_bezout(&self) -> bool;
}

/// How two ideals sit relative to each other.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Comparison {
    Equal,
    FirstInsideSecond,
    SecondInsideFirst,
    Comaximal,
    Incomparable,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RingDescriptor {
    Integers,
    IntegersMod(u64),
    /// `F_p[t]/(modulus)`; the zero modulus denotes `F_p[t]` itself.
    PolyQuotient { p: u64, modulus: Poly },
    Product(Vec<RingDescriptor>),
    LocalTable { add: Vec<Vec<u64>>, mul: Vec<Vec<u64>>, units: Vec<u64> },
}

fn write_table(f: &mut fmt::Formatter<'_>, rows: &[Vec<u64>]) -> fmt::Result {
    write!(f, "[")?;
    for (i, row) in rows.iter().enumerate() {
        if i > 0 {
            write!(f, ",")?;
        }
        write!(f, "[")?;
        for (j, v) in row.iter().enumerate() {
            if j > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "]")?;
    }
    write!(f, "]")
}

impl fmt::Display for RingDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RingDescriptor::Integers => write!(f, "Z"),
            RingDescriptor::IntegersMod(n) => write!(f, "Z/{n}"),
            RingDescriptor::PolyQuotient { p, modulus } if modulus.is_zero() => write!(f, "GF({p})[t]"),
            RingDescriptor::PolyQuotient { p, modulus } => write!(f, "GF({p})[t]/({modulus})"),
            RingDescriptor::Product(parts) => {
                write!(f, "product(")?;
                for (i, p) in parts.iter().enumerate() {
                    if i > 0 {
                        write!(f, ", ")?;
                    }
                    write!(f, "{p}")?;
                }
                write!(f, ")")
            }
            RingDescriptor::LocalTable { add, mul, units } => {
                write!(f, "localtable{{add=")?;
                write_table(f, add)?;
                write!(f, "; mul=")?;
                write_table(f, mul)?;
                write!(f, "; units=[")?;
                for (i, u) in units.iter().enumerate() {
                    if i > 0 {
                        write!(f, ",")?;
                    }
                    write!(f, "{u}")?;
                }
                write!(f, "]}}")
            }
        }
    }
}

fn is_prime(p: u64) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| !p.is_multiple_of(d))
}

struct RingInner {
    desc: RingDescriptor,
    ops: Box<dyn ElemRing>,
    kind: Kind,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Kind {
    Euclid,
    Product,
    Table,
}

/// A shared handle on a concrete ring instance.
#[derive(Clone)]
pub struct Ring(Arc<RingInner>);

impl Deref for Ring {
    type Target = dyn ElemRing;

    fn deref(&self) -> &Self::Target {
        self.0.ops.as_ref()
    }
}

impl PartialEq for Ring {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0.desc == other.0.desc
    }
}

impl Eq for Ring {}

impl fmt::Debug for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Ring({})", self.0.desc)
    }
}

impl fmt::Display for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0.desc)
    }
}

impl Ring {
    pub fn new(desc: RingDescriptor) -> Result<Ring> {
        let (ops, kind): (Box<dyn ElemRing>, Kind) = match &desc {
            RingDescriptor::Integers => (Box::new(Quotient::new(IntDomain, 0)), Kind::Euclid),
            RingDescriptor::IntegersMod(n) => {
                euclid::check_int_modulus(*n)?;
                (Box::new(Quotient::new(IntDomain, *n as i128)), Kind::Euclid)
            }
            RingDescriptor::PolyQuotient { p, modulus } => {
                if !is_prime(*p) || *p >= 1 << 31 {
                    return Err(Error::InvalidRing(format!("GF({p}) needs a prime below 2^31")));
                }
                if modulus.coeffs().iter().any(|&c| c >= *p) {
                    return Err(Error::InvalidRing("modulus coefficients must lie in [0,p)".into()));
                }
                if !modulus.is_zero() && (modulus.lead() != 1 || modulus.degree() == Some(0)) {
                    return Err(Error::InvalidRing(format!("modulus {modulus} must be monic of positive degree")));
                }
                let dom = PolyDomain(PolyField::new(*p));
                (Box::new(Quotient::new(dom, modulus.clone())), Kind::Euclid)
            }
            RingDescriptor::Product(parts) => {
                if parts.len() < 2 {
                    return Err(Error::InvalidRing("a product needs at least two factors".into()));
                }
                let parts = parts.iter().cloned().map(Ring::new).collect::<Result<Vec<_>>>()?;
                (Box::new(ProductRing { parts }), Kind::Product)
            }
            RingDescriptor::LocalTable { add, mul, units } => {
                (Box::new(TableRing::new(add, mul, units)?), Kind::Table)
            }
        };
        Ok(Ring(Arc::new(RingInner { desc, ops, kind })))
    }

    pub fn integers() -> Ring {
        Ring::new(RingDescriptor::Integers).expect("Z is valid")
    }

    pub fn zmod(n: u64) -> Result<Ring> {
        Ring::new(RingDescriptor::IntegersMod(n))
    }

    pub fn poly(p: u64, modulus: Poly) -> Result<Ring> {
        Ring::new(RingDescriptor::PolyQuotient { p, modulus })
    }

    pub fn product(parts: Vec<RingDescriptor>) -> Result<Ring> {
        Ring::new(RingDescriptor::Product(parts))
    }

    pub fn descriptor(&self) -> &RingDescriptor {
        &self.0.desc
    }

    /// Component rings of a product, or `None`.
    pub fn components(&self) -> Option<Vec<Ring>> {
        match &self.0.desc {
            RingDescriptor::Product(parts) => {
                Some(parts.iter().map(|d| Ring::new(d.clone()).expect("validated")).collect())
            }
            _ => None,
        }
    }

    pub fn is_table(&self) -> bool {
        self.0.kind == Kind::Table
    }

    pub fn size(&self) -> Option<u128> {
        self.residue_size(&self.zero())
    }

    pub fn is_finite(&self) -> bool {
        self.size().is_some()
    }

    pub fn require_bezout(&self) -> Result<()> {
        if self.is_bezout() {
            Ok(())
        } else {
            Err(Error::UnsupportedRing(format!("{} is not a Bézout ring", self)))
        }
    }

    pub fn from_int(&self, v: i128) -> Elem {
        let one = self.one();
        let mut acc = self.zero();
        let mut base = one;
        let mut k = v.unsigned_abs();
        while k > 0 {
            if k & 1 == 1 {
                acc = self.add(&acc, &base);
            }
            base = self.add(&base, &base);
            k >>= 1;
        }
        if v < 0 {
            self.neg(&acc)
        } else {
            acc
        }
    }

    /// `I ⊆ J` for principal ideals.
    pub fn ideal_le(&self, i: &Elem, j: &Elem) -> bool {
        self.divides(j, i)
    }

    pub fn ideal_sum(&self, i: &Elem, j: &Elem) -> Result<Elem> {
        Ok(self.gcd_bezout(i, j)?.0)
    }

    pub fn is_unit_ideal(&self, i: &Elem) -> bool {
        self.is_unit(i)
    }

    pub fn ideal_compare(&self, i: &Elem, j: &Elem) -> Result<Comparison> {
        let (i, j) = (self.ideal_gen(i), self.ideal_gen(j));
        Ok(if i == j {
            Comparison::Equal
        } else if self.ideal_le(&i, &j) {
            Comparison::FirstInsideSecond
        } else if self.ideal_le(&j, &i) {
            Comparison::SecondInsideFirst
        } else if self.is_unit(&self.ideal_sum(&i, &j)?) {
            Comparison::Comaximal
        } else {
            Comparison::Incomparable
        })
    }

    pub fn comaximal(&self, i: &Elem, j: &Elem) -> Result<bool> {
        Ok(self.is_unit(&self.ideal_sum(i, j)?))
    }

    /// Whether `R/I` is an infinite domain summand (a free summand).
    pub fn is_free_ideal(&self, i: &Elem) -> bool {
        self.residue_size(i).is_none()
    }

    pub fn fmt_ideal(&self, i: &Elem) -> String {
        format!("({})", self.ideal_gen(i))
    }
}

/// Finite direct products, handled componentwise.
struct ProductRing {
    parts: Vec<Ring>,
}

fn parts(e: &Elem) -> &[Elem] {
    match e {
        Elem::Tuple(p) => p,
        other => panic!("expected a tuple, got {other:?}"),
    }
}

impl ProductRing {
    fn map1(&self, a: &Elem, f: impl Fn(&Ring, &Elem) -> Elem) -> Elem {
        Elem::Tuple(self.parts.iter().zip(parts(a)).map(|(r, x)| f(r, x)).collect())
    }

    fn map2(&self, a: &Elem, b: &Elem, f: impl Fn(&Ring, &Elem, &Elem) -> Elem) -> Elem {
        Elem::Tuple(
            self.parts
                .iter()
                .zip(parts(a).iter().zip(parts(b)))
                .map(|(r, (x, y))| f(r, x, y))
                .collect(),
        )
    }

    fn try_map2(&self, a: &Elem, b: &Elem, f: impl Fn(&Ring, &Elem, &Elem) -> Result<Elem>) -> Result<Elem> {
        Ok(Elem::Tuple(
            self.parts
                .iter()
                .zip(parts(a).iter().zip(parts(b)))
                .map(|(r, (x, y))| f(r, x, y))
                .collect::<Result<_>>()?,
        ))
    }

    fn embed(&self, c: usize, x: Elem, fill: impl Fn(&Ring) -> Elem) -> Elem {
        Elem::Tuple(
            self.parts
                .iter()
                .enumerate()
                .map(|(k, r)| if k == c { x.clone() } else { fill(r) })
                .collect(),
        )
    }
}

fn cartesian(lists: Vec<Vec<Elem>>) -> Vec<Elem> {
    let mut out: Vec<Vec<Elem>> = vec![Vec::new()];
    for list in lists {
        out = out
            .into_iter()
            .flat_map(|prefix| {
                list.iter().map(move |x| {
                    let mut v = prefix.clone();
                    v.push(x.clone());
                    v
                })
            })
            .collect();
    }
    out.into_iter().map(Elem::Tuple).collect()
}

impl ElemRing for ProductRing {
    fn zero(&self) -> Elem {
        Elem::Tuple(self.parts.iter().map(|r| r.zero()).collect())
    }
    fn one(&self) -> Elem {
        Elem::Tuple(self.parts.iter().map(|r| r.one()).collect())
    }
    fn is_zero(&self, a: &Elem) -> bool {
        self.parts.iter().zip(parts(a)).all(|(r, x)| r.is_zero(x))
    }
    fn add(&self, a: &Elem, b: &Elem) -> Elem {
        self.map2(a, b, |r, x, y| r.add(x, y))
    }
    fn sub(&self, a: &Elem, b: &Elem) -> Elem {
        self.map2(a, b, |r, x, y| r.sub(x, y))
    }
    fn mul(&self, a: &Elem, b: &Elem) -> Elem {
        self.map2(a, b, |r, x, y| r.mul(x, y))
    }
    fn neg(&self, a: &Elem) -> Elem {
        self.map1(a, |r, x| r.neg(x))
    }
    fn canonical(&self, a: &Elem) -> Elem {
        self.map1(a, |r, x| r.canonical(x))
    }
    fn is_unit(&self, a: &Elem) -> bool {
        self.parts.iter().zip(parts(a)).all(|(r, x)| r.is_unit(x))
    }
    fn inverse(&self, a: &Elem) -> Option<Elem> {
        let v = self.parts.iter().zip(parts(a)).map(|(r, x)| r.inverse(x)).collect::<Option<Vec<_>>>()?;
        Some(Elem::Tuple(v))
    }
    fn divides(&self, d: &Elem, a: &Elem) -> bool {
        self.parts.iter().zip(parts(d).iter().zip(parts(a))).all(|(r, (x, y))| r.divides(x, y))
    }
    fn exact_div(&self, a: &Elem, d: &Elem) -> Option<Elem> {
        let v = self
            .parts
            .iter()
            .zip(parts(a).iter().zip(parts(d)))
            .map(|(r, (x, y))| r.exact_div(x, y))
            .collect::<Option<Vec<_>>>()?;
        Some(Elem::Tuple(v))
    }
    fn ideal_gen(&self, a: &Elem) -> Elem {
        self.map1(a, |r, x| r.ideal_gen(x))
    }
    fn unit_to_gen(&self, a: &Elem) -> Elem {
        self.map1(a, |r, x| r.unit_to_gen(x))
    }
    fn bezout_full(&self, a: &Elem, b: &Elem) -> Result<[Elem; 5]> {
        let mut cols: [Vec<Elem>; 5] = Default::default();
        for (r, (x, y)) in self.parts.iter().zip(parts(a).iter().zip(parts(b))) {
            for (col, v) in cols.iter_mut().zip(r.bezout_full(x, y)?) {
                col.push(v);
            }
        }
        Ok(cols.map(Elem::Tuple))
    }
    fn gcd_bezout(&self, a: &Elem, b: &Elem) -> Result<(Elem, Elem, Elem)> {
        let (mut g, mut u, mut v) = (Vec::new(), Vec::new(), Vec::new());
        for (r, (x, y)) in self.parts.iter().zip(parts(a).iter().zip(parts(b))) {
            let (gi, ui, vi) = r.gcd_bezout(x, y)?;
            g.push(gi);
            u.push(ui);
            v.push(vi);
        }
        Ok((Elem::Tuple(g), Elem::Tuple(u), Elem::Tuple(v)))
    }
    fn intersect(&self, i: &Elem, j: &Elem) -> Result<Elem> {
        self.try_map2(i, j, |r, x, y| r.intersect(x, y))
    }
    fn radical(&self, i: &Elem) -> Result<Elem> {
        Ok(Elem::Tuple(
            self.parts.iter().zip(parts(i)).map(|(r, x)| r.radical(x)).collect::<Result<_>>()?,
        ))
    }
    fn minimal_primes(&self, i: &Elem) -> Result<Vec<Elem>> {
        let mut out = Vec::new();
        for (c, (r, x)) in self.parts.iter().zip(parts(i)).enumerate() {
            for q in r.minimal_primes(x)? {
                out.push(self.embed(c, q, |s| s.one()));
            }
        }
        out.sort();
        Ok(out)
    }
    fn primary_split(&self, i: &Elem) -> Result<Vec<(Elem, Elem)>> {
        let mut out = Vec::new();
        for (c, (r, x)) in self.parts.iter().zip(parts(i)).enumerate() {
            for (piece, cof) in r.primary_split(x)? {
                out.push((self.embed(c, piece, |s| s.one()), self.embed(c, cof, |s| s.zero())));
            }
        }
        Ok(out)
    }
    fn residue_size(&self, i: &Elem) -> Option<u128> {
        self.parts.iter().zip(parts(i)).try_fold(1u128, |acc, (r, x)| {
            r.residue_size(x).and_then(|s| acc.checked_mul(s))
        })
    }
    fn residues(&self, i: &Elem) -> Option<Vec<Elem>> {
        let lists = self.parts.iter().zip(parts(i)).map(|(r, x)| r.residues(x)).collect::<Option<Vec<_>>>()?;
        Some(cartesian(lists))
    }
    fn reduce_mod(&self, x: &Elem, i: &Elem) -> Elem {
        self.map2(x, i, |r, a, b| r.reduce_mod(a, b))
    }
    fn elements(&self) -> Option<Vec<Elem>> {
        let lists = self.parts.iter().map(|r| r.elements()).collect::<Option<Vec<_>>>()?;
        Some(cartesian(lists))
    }
    fn pivot_rank(&self, a: &Elem) -> u128 {
        self.parts
            .iter()
            .zip(parts(a))
            .fold(0u128, |acc, (r, x)| acc.saturating_add(r.pivot_rank(x)))
    }
    fn is_bezout(&self) -> bool {
        self.parts.iter().all(|r| r.is_bezout())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn compare_over_z12() {
        let r = Ring::zmod(12).unwrap();
        let e = |v| Elem::Int(v);
        assert_eq!(r.ideal_compare(&e(4), &e(2)).unwrap(), Comparison::FirstInsideSecond);
        assert_eq!(r.ideal_compare(&e(3), &e(4)).unwrap(), Comparison::Comaximal);
        assert_eq!(r.ideal_compare(&e(6), &e(6)).unwrap(), Comparison::Equal);
        assert_eq!(r.ideal_compare(&e(6), &e(4)).unwrap(), Comparison::Incomparable);
    }

    #[test]
    fn product_primes_and_split() {
        let r = Ring::product(vec![RingDescriptor::IntegersMod(4), RingDescriptor::IntegersMod(3)]).unwrap();
        let zero = r.zero();
        let primes = r.minimal_primes(&zero).unwrap();
        assert_eq!(
            primes,
            vec![
                Elem::Tuple(vec![Elem::Int(1), Elem::Int(0)]),
                Elem::Tuple(vec![Elem::Int(2), Elem::Int(1)])
            ]
        );
        assert_eq!(r.size(), Some(12));
        assert_eq!(r.primary_split(&zero).unwrap().len(), 2);
    }

    #[test]
    fn descriptor_display() {
        let d = RingDescriptor::PolyQuotient { p: 2, modulus: Poly::from_coeffs(vec![1, 1, 1]) };
        assert_eq!(d.to_string(), "GF(2)[t]/(t^2+t+1)");
        let d = RingDescriptor::Product(vec![RingDescriptor::Integers, RingDescriptor::IntegersMod(5)]);
        assert_eq!(d.to_string(), "product(Z, Z/5)");
    }

    #[test]
    fn rejects_invalid_descriptors() {
        assert!(Ring::zmod(1).is_err());
        assert!(Ring::poly(4, Poly::monomial(1)).is_err());
        assert!(Ring::poly(2, Poly::from_coeffs(vec![1, 0, 2])).is_err());
        assert!(Ring::product(vec![RingDescriptor::Integers]).is_err());
    }
}
