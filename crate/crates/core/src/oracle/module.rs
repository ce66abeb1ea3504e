use std::collections::HashMap;
use std::sync::Arc;

use fixedbitset::FixedBitSet;

use super::ring::FiniteRing;
use crate::error::{Error, Result};
use crate::module::FpModule;
use crate::ring::Elem;

pub type Set = FixedBitSet;

/// Largest module accepted for element-level work.
pub const ELEMENT_CAP: usize = 65536;
/// Largest `|R|·|M|` action table.
pub const ACTION_CAP: usize = 1 << 24;
/// Largest module stored with an explicit addition table.
pub const TABLE_CAP: usize = 4096;

#[derive(Clone)]
enum AddRule {
    /// Mixed radix digits, first coordinate most significant, each digit with
    /// its own addition table.
    Digits { radix: Vec<usize>, stride: Vec<usize>, tables: Vec<Vec<u32>> },
    Table(Vec<u32>),
}

#[derive(Clone)]
struct Coords {
    residues: Vec<Vec<Elem>>,
    index: Vec<HashMap<Elem, usize>>,
}

/// A finite module with elements `0..len` and a tabulated ring action.
#[derive(Clone)]
pub struct FiniteModule {
    ring: Arc<FiniteRing>,
    size: usize,
    zero: usize,
    add: AddRule,
    act: Vec<u32>,
    coords: Option<Coords>,
}

fn check_size(size: usize, ring: usize) -> Result<()> {
    if size > ELEMENT_CAP {
        return Err(Error::TooLarge { what: "finite module", size, cap: ELEMENT_CAP });
    }
    if size * ring > ACTION_CAP {
        return Err(Error::TooLarge { what: "action table", size: size * ring, cap: ACTION_CAP });
    }
    Ok(())
}

fn strides(radix: &[usize]) -> Vec<usize> {
    let mut stride = vec![1; radix.len()];
    for j in (0..radix.len().saturating_sub(1)).rev() {
        stride[j] = stride[j + 1] * radix[j + 1];
    }
    stride
}

impl FiniteModule {
    /// Tabulates a finite [`FpModule`] in its normal coordinates.
    pub fn from_fp(m: &FpModule, ring: &Arc<FiniteRing>) -> Result<FiniteModule> {
        if m.ring() != ring.ring() {
            return Err(Error::DimensionMismatch("module and finite ring differ".into()));
        }
        let residues = m.coordinate_residues().ok_or(Error::NotFinite)?;
        let size = residues.iter().try_fold(1usize, |acc, r| acc.checked_mul(r.len())).unwrap_or(usize::MAX);
        check_size(size, ring.len())?;
        let r = ring.ring();
        let index: Vec<HashMap<Elem, usize>> =
            residues.iter().map(|l| l.iter().cloned().enumerate().map(|(i, e)| (e, i)).collect()).collect();
        let mut tables = Vec::new();
        let mut digit_act = Vec::new();
        for (j, d) in m.factors().iter().enumerate() {
            let list = &residues[j];
            let k = list.len();
            let mut t = Vec::with_capacity(k * k);
            for a in list {
                for b in list {
                    t.push(index[j][&r.reduce_mod(&r.add(a, b), d)] as u32);
                }
            }
            tables.push(t);
            let mut act = Vec::with_capacity(ring.len() * k);
            for s in 0..ring.len() {
                for a in list {
                    act.push(index[j][&r.reduce_mod(&r.mul(ring.elem(s), a), d)]);
                }
            }
            digit_act.push(act);
        }
        let radix: Vec<usize> = residues.iter().map(|l| l.len()).collect();
        let zero_digits: Vec<usize> =
            m.factors().iter().enumerate().map(|(j, d)| index[j][&r.reduce_mod(&r.zero(), d)]).collect();
        let coords = Coords { residues, index };
        Ok(Self::from_digits(ring, radix, tables, &digit_act, &zero_digits, Some(coords)))
    }

    fn from_digits(
        ring: &Arc<FiniteRing>,
        radix: Vec<usize>,
        tables: Vec<Vec<u32>>,
        digit_act: &[Vec<usize>],
        zero_digits: &[usize],
        coords: Option<Coords>,
    ) -> FiniteModule {
        let stride = strides(&radix);
        let size: usize = radix.iter().product();
        let n = ring.len();
        let mut act = vec![0u32; n * size];
        for s in 0..n {
            for x in 0..size {
                let mut out = 0;
                for j in 0..radix.len() {
                    let d = (x / stride[j]) % radix[j];
                    out += digit_act[j][s * radix[j] + d] * stride[j];
                }
                act[s * size + x] = out as u32;
            }
        }
        let zero = zero_digits.iter().zip(&stride).map(|(d, s)| d * s).sum();
        FiniteModule { ring: ring.clone(), size, zero, add: AddRule::Digits { radix, stride, tables }, act, coords }
    }

    /// `R^m` with coordinates in the ring's element order.
    pub fn free(ring: &Arc<FiniteRing>, m: usize) -> Result<FiniteModule> {
        let n = ring.len();
        let size = (0..m).try_fold(1usize, |acc, _| acc.checked_mul(n)).unwrap_or(usize::MAX);
        check_size(size, n)?;
        let table: Vec<u32> = (0..n * n).map(|i| ring.add(i / n, i % n) as u32).collect();
        let act: Vec<usize> = (0..n * n).map(|i| ring.mul(i / n, i % n)).collect();
        let elems: Vec<Elem> = (0..n).map(|i| ring.elem(i).clone()).collect();
        let index: HashMap<Elem, usize> = elems.iter().cloned().enumerate().map(|(i, e)| (e, i)).collect();
        let coords = Coords { residues: vec![elems; m], index: vec![index; m] };
        Ok(Self::from_digits(
            ring,
            vec![n; m],
            vec![table; m],
            &vec![act; m],
            &vec![ring.zero(); m],
            Some(coords),
        ))
    }

    /// A module from explicit tables: `add[x*len + y]` and `act[r*len + x]`.
    pub fn from_tables(ring: &Arc<FiniteRing>, size: usize, add: Vec<u32>, act: Vec<u32>) -> Result<FiniteModule> {
        if size > TABLE_CAP {
            return Err(Error::TooLarge { what: "tabulated module", size, cap: TABLE_CAP });
        }
        check_size(size, ring.len())?;
        if add.len() != size * size || act.len() != size * ring.len() {
            return Err(Error::InvalidValue("module tables have the wrong shape".into()));
        }
        let zero = (0..size)
            .find(|&z| (0..size).all(|x| add[z * size + x] as usize == x))
            .ok_or_else(|| Error::InvalidValue("addition has no identity".into()))?;
        Ok(FiniteModule { ring: ring.clone(), size, zero, add: AddRule::Table(add), act, coords: None })
    }

    /// Checks the abelian group and module axioms by exhaustion.
    pub fn validate(&self) -> Result<()> {
        let n = self.size;
        let r = &self.ring;
        let bad = |m: &str| Err(Error::InvalidValue(format!("module table: {m}")));
        for x in 0..n {
            if self.act(r.one(), x) != x {
                return bad("one does not act as identity");
            }
            if self.act(r.zero(), x) != self.zero {
                return bad("zero does not annihilate");
            }
            for y in 0..n {
                let xy = self.add(x, y);
                if xy != self.add(y, x) {
                    return bad("addition is not commutative");
                }
                for z in 0..n {
                    if self.add(xy, z) != self.add(x, self.add(y, z)) {
                        return bad("addition is not associative");
                    }
                }
                for s in 0..r.len() {
                    if self.act(s, xy) != self.add(self.act(s, x), self.act(s, y)) {
                        return bad("action is not additive");
                    }
                }
            }
            for s in 0..r.len() {
                for t in 0..r.len() {
                    if self.act(r.add(s, t), x) != self.add(self.act(s, x), self.act(t, x))
                        || self.act(r.mul(s, t), x) != self.act(s, self.act(t, x))
                    {
                        return bad("action is not a ring action");
                    }
                }
            }
        }
        Ok(())
    }

    pub fn ring(&self) -> &Arc<FiniteRing> {
        &self.ring
    }

    pub fn len(&self) -> usize {
        self.size
    }

    pub fn is_empty(&self) -> bool {
        self.size == 0
    }

    pub fn zero(&self) -> usize {
        self.zero
    }

    #[inline]
    pub fn add(&self, a: usize, b: usize) -> usize {
        match &self.add {
            AddRule::Table(t) => t[a * self.size + b] as usize,
            AddRule::Digits { radix, stride, tables } => {
                let mut out = 0;
                for j in 0..radix.len() {
                    let k = radix[j];
                    let (da, db) = ((a / stride[j]) % k, (b / stride[j]) % k);
                    out += tables[j][da * k + db] as usize * stride[j];
                }
                out
            }
        }
    }

    #[inline]
    pub fn act(&self, r: usize, x: usize) -> usize {
        self.act[r * self.size + x] as usize
    }

    pub fn neg(&self, x: usize) -> usize {
        self.act(self.ring.neg(self.ring.one()), x)
    }

    pub fn sub(&self, a: usize, b: usize) -> usize {
        self.add(a, self.neg(b))
    }

    /// Normal coordinates of an element, when the module came from coordinates.
    pub fn coords(&self, x: usize) -> Vec<Elem> {
        let c = self.coords.as_ref().expect("module has no coordinates");
        let mut rest = x;
        let mut out = Vec::with_capacity(c.residues.len());
        for list in c.residues.iter().rev() {
            out.push(list[rest % list.len()].clone());
            rest /= list.len();
        }
        out.reverse();
        out
    }

    pub fn has_coords(&self) -> bool {
        self.coords.is_some()
    }

    /// Element index of reduced normal coordinates.
    pub fn index_of(&self, v: &[Elem]) -> Result<usize> {
        let c = self.coords.as_ref().ok_or_else(|| Error::InvalidValue("module has no coordinates".into()))?;
        if v.len() != c.residues.len() {
            return Err(Error::DimensionMismatch(format!("expected {} coordinates", c.residues.len())));
        }
        let mut out = 0;
        for ((x, idx), list) in v.iter().zip(&c.index).zip(&c.residues) {
            let d = idx.get(x).ok_or_else(|| Error::InvalidValue(format!("{x} is not a reduced coordinate")))?;
            out = out * list.len() + d;
        }
        Ok(out)
    }

    pub fn empty_set(&self) -> Set {
        FixedBitSet::with_capacity(self.size)
    }

    pub fn full(&self) -> Set {
        let mut s = self.empty_set();
        s.insert_range(..);
        s
    }

    pub fn zero_set(&self) -> Set {
        let mut s = self.empty_set();
        s.insert(self.zero);
        s
    }

    pub fn is_zero_set(&self, s: &Set) -> bool {
        s.count_ones(..) == 1
    }

    pub fn cyclic(&self, x: usize) -> Set {
        let mut s = self.empty_set();
        for r in 0..self.ring.len() {
            s.insert(self.act(r, x));
        }
        s
    }

    /// `A + B` for submodules.
    pub fn sum(&self, a: &Set, b: &Set) -> Set {
        let mut s = self.empty_set();
        let bs: Vec<usize> = b.ones().collect();
        for x in a.ones() {
            for &y in &bs {
                s.insert(self.add(x, y));
            }
        }
        s
    }

    /// `S + Rx`.
    pub fn extend(&self, s: &Set, x: usize) -> Set {
        if s.contains(x) {
            return s.clone();
        }
        self.sum(s, &self.cyclic(x))
    }

    pub fn span(&self, gens: &[usize]) -> Set {
        gens.iter().fold(self.zero_set(), |s, &g| self.extend(&s, g))
    }

    pub fn scale_set(&self, r: usize, s: &Set) -> Set {
        let mut out = self.empty_set();
        for x in s.ones() {
            out.insert(self.act(r, x));
        }
        out
    }

    /// `{r : rS = 0}` as a set of ring indices.
    pub fn annihilator(&self, s: &Set) -> Set {
        let mut out = FixedBitSet::with_capacity(self.ring.len());
        let xs: Vec<usize> = s.ones().collect();
        for r in 0..self.ring.len() {
            if xs.iter().all(|&x| self.act(r, x) == self.zero) {
                out.insert(r);
            }
        }
        out
    }

    pub fn element_annihilator(&self, x: usize) -> Set {
        let mut out = FixedBitSet::with_capacity(self.ring.len());
        for r in 0..self.ring.len() {
            if self.act(r, x) == self.zero {
                out.insert(r);
            }
        }
        out
    }

    /// `{r : rN ⊆ K}`, the annihilator of `N/K`.
    pub fn colon(&self, n: &Set, k: &Set) -> Set {
        let mut out = FixedBitSet::with_capacity(self.ring.len());
        let xs: Vec<usize> = n.ones().collect();
        for r in 0..self.ring.len() {
            if xs.iter().all(|&x| k.contains(self.act(r, x))) {
                out.insert(r);
            }
        }
        out
    }

    pub fn is_submodule(&self, s: &Set) -> bool {
        if !s.contains(self.zero) {
            return false;
        }
        let xs: Vec<usize> = s.ones().collect();
        xs.iter().all(|&x| {
            (0..self.ring.len()).all(|r| s.contains(self.act(r, x))) && xs.iter().all(|&y| s.contains(self.add(x, y)))
        })
    }

    fn require_pair(&self, outer: &Set, inner: &Set) -> Result<()> {
        if !inner.is_subset(outer) || !self.is_submodule(outer) || !self.is_submodule(inner) {
            return Err(Error::NotASubmodule);
        }
        Ok(())
    }

    /// `rN ∩ K = rK` for every `r`.
    pub fn is_rd(&self, outer: &Set, inner: &Set) -> bool {
        (0..self.ring.len()).all(|r| {
            let rk = self.scale_set(r, inner);
            outer.ones().all(|x| {
                let y = self.act(r, x);
                !inner.contains(y) || rk.contains(y)
            })
        })
    }

    /// `K` is pure in `N`, decided by the existence of a retraction `N → K`.
    pub fn is_pure(&self, outer: &Set, inner: &Set) -> Result<bool> {
        Ok(super::hom::retraction(self, outer, inner).is_some())
    }

    pub fn is_rd_checked(&self, outer: &Set, inner: &Set) -> Result<bool> {
        self.require_pair(outer, inner)?;
        Ok(self.is_rd(outer, inner))
    }

    pub fn is_pure_checked(&self, outer: &Set, inner: &Set) -> Result<bool> {
        self.require_pair(outer, inner)?;
        self.is_pure(outer, inner)
    }

    /// One representative per coset of `K` in `N`, each the least index of its coset.
    pub fn coset_reps(&self, outer: &Set, inner: &Set) -> Vec<usize> {
        let mut seen = self.empty_set();
        let ks: Vec<usize> = inner.ones().collect();
        let mut reps = Vec::new();
        for x in outer.ones() {
            if seen.contains(x) {
                continue;
            }
            reps.push(x);
            for &k in &ks {
                seen.insert(self.add(x, k));
            }
        }
        reps
    }

    /// The submodule `S` as a module in its own right, with the map back.
    pub fn restrict(&self, s: &Set) -> Result<(FiniteModule, Vec<usize>)> {
        let elems: Vec<usize> = s.ones().collect();
        let pos: HashMap<usize, usize> = elems.iter().enumerate().map(|(i, &x)| (x, i)).collect();
        let n = elems.len();
        let mut add = Vec::with_capacity(n * n);
        for &x in &elems {
            for &y in &elems {
                add.push(*pos.get(&self.add(x, y)).ok_or(Error::NotASubmodule)? as u32);
            }
        }
        let mut act = Vec::with_capacity(self.ring.len() * n);
        for r in 0..self.ring.len() {
            for &x in &elems {
                act.push(*pos.get(&self.act(r, x)).ok_or(Error::NotASubmodule)? as u32);
            }
        }
        Ok((FiniteModule::from_tables(&self.ring, n, add, act)?, elems))
    }

    /// `N/K` as a module, with the class of every element of `N`
    /// (`usize::MAX` outside `N`).
    pub fn quotient(&self, outer: &Set, inner: &Set) -> Result<(FiniteModule, Vec<usize>)> {
        let reps = self.coset_reps(outer, inner);
        let mut class = vec![usize::MAX; self.size];
        let ks: Vec<usize> = inner.ones().collect();
        for (i, &x) in reps.iter().enumerate() {
            for &k in &ks {
                class[self.add(x, k)] = i;
            }
        }
        let n = reps.len();
        let mut add = Vec::with_capacity(n * n);
        for &x in &reps {
            for &y in &reps {
                let c = class[self.add(x, y)];
                if c == usize::MAX {
                    return Err(Error::NotASubmodule);
                }
                add.push(c as u32);
            }
        }
        let mut act = Vec::with_capacity(self.ring.len() * n);
        for r in 0..self.ring.len() {
            for &x in &reps {
                let c = class[self.act(r, x)];
                if c == usize::MAX {
                    return Err(Error::NotASubmodule);
                }
                act.push(c as u32);
            }
        }
        Ok((FiniteModule::from_tables(&self.ring, n, add, act)?, class))
    }

    /// `|{x ∈ N : rx = 0}|` for every `r`, an isomorphism invariant.
    pub fn signature(&self, n: &Set) -> Vec<u32> {
        (0..self.ring.len())
            .map(|r| n.ones().filter(|&x| self.act(r, x) == self.zero).count() as u32)
            .collect()
    }

    /// `R/A` for an ideal given as a set of ring indices.
    pub fn cyclic_quotient(ring: &Arc<FiniteRing>, ideal: &Set) -> Result<FiniteModule> {
        let r1 = FiniteModule::free(ring, 1)?;
        Ok(r1.quotient(&r1.full(), ideal)?.0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::Ring;

    fn z(n: u64) -> Arc<FiniteRing> {
        FiniteRing::from_ring(&Ring::zmod(n).unwrap()).unwrap()
    }

    #[test]
    fn rd_fails_for_socle_of_z4() {
        let fr = z(4);
        let m = FpModule::from_factors(fr.ring(), &[Elem::Int(0)]).unwrap();
        let fm = FiniteModule::from_fp(&m, &fr).unwrap();
        let two = fm.index_of(&[Elem::Int(2)]).unwrap();
        let f = fm.cyclic(two);
        assert_eq!(f.count_ones(..), 2);
        assert!(!fm.is_rd(&fm.full(), &f));
        assert!(!fm.is_pure(&fm.full(), &f).unwrap());
        assert!(fm.is_rd(&fm.full(), &fm.zero_set()));
    }

    #[test]
    fn tables_satisfy_axioms() {
        let fr = z(12);
        let m = FpModule::from_factors(fr.ring(), &[Elem::Int(4), Elem::Int(6)]).unwrap();
        let fm = FiniteModule::from_fp(&m, &fr).unwrap();
        assert_eq!(fm.len(), 24);
        let sub = fm.cyclic(fm.index_of(&[Elem::Int(1), Elem::Int(1)]).unwrap());
        let (q, _) = fm.quotient(&fm.full(), &sub).unwrap();
        assert_eq!(q.len(), 2);
        q.validate().unwrap();
        let (s, _) = fm.restrict(&sub).unwrap();
        s.validate().unwrap();
        assert_eq!(s.len(), 12);
    }

    #[test]
    fn coords_round_trip() {
        let fr = z(12);
        let m = FpModule::from_factors(fr.ring(), &[Elem::Int(4), Elem::Int(6)]).unwrap();
        let fm = FiniteModule::from_fp(&m, &fr).unwrap();
        for x in 0..fm.len() {
            assert_eq!(fm.index_of(&fm.coords(x)).unwrap(), x);
        }
        let elems = m.elements().unwrap();
        for (i, e) in elems.iter().enumerate() {
            assert_eq!(fm.index_of(e).unwrap(), i);
        }
    }
}
