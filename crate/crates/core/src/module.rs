//! Finitely presented modules in invariant-factor coordinates.

use serde::Serialize;

use crate::decompose::{diagonal_reduce, Reduction};
use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::ring::{Elem, Ring};

/// `R^m / (columns of A)`, stored together with its diagonal reduction.
///
/// Elements are kept in normal coordinates: one entry per non-unit invariant
/// factor `d_j`, reduced modulo `d_j`.
#[derive(Clone, Debug)]
pub struct FpModule {
    ring: Ring,
    presentation: Matrix,
    factors: Vec<Elem>,
    positions: Vec<usize>,
    reduction: Reduction,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ModuleReport {
    pub ring: String,
    pub invariant_factors: Vec<String>,
    pub free_rank: usize,
}

impl FpModule {
    pub fn new(ring: &Ring, presentation: Matrix) -> Result<Self> {
        let reduction = diagonal_reduce(ring, &presentation)?;
        let mut factors = Vec::new();
        let mut positions = Vec::new();
        for (i, d) in reduction.diagonal(ring).into_iter().enumerate() {
            if !ring.is_unit(&d) {
                factors.push(d);
                positions.push(i);
            }
        }
        Ok(FpModule { ring: ring.clone(), presentation, factors, positions, reduction })
    }

    /// `⊕ R/(d_i)` presented diagonally.
    pub fn from_factors(ring: &Ring, ideals: &[Elem]) -> Result<Self> {
        let n = ideals.len();
        let mut a = Matrix::zeros(ring, n, n);
        for (i, d) in ideals.iter().enumerate() {
            a[(i, i)] = ring.canonical(d);
        }
        FpModule::new(ring, a)
    }

    pub fn free(ring: &Ring, rank: usize) -> Result<Self> {
        FpModule::new(ring, Matrix::zeros(ring, rank, 0))
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn presentation(&self) -> &Matrix {
        &self.presentation
    }

    pub fn reduction(&self) -> &Reduction {
        &self.reduction
    }

    /// Non-unit invariant factor generators, `d₁ | d₂ | ⋯`.
    pub fn factors(&self) -> &[Elem] {
        &self.factors
    }

    pub fn generator_count(&self) -> usize {
        self.presentation.rows
    }

    pub fn rank(&self) -> usize {
        self.factors.len()
    }

    pub fn is_zero(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn free_rank(&self) -> usize {
        self.factors.iter().filter(|d| self.ring.is_free_ideal(d)).count()
    }

    pub fn size(&self) -> Option<u128> {
        self.factors
            .iter()
            .try_fold(1u128, |acc, d| self.ring.residue_size(d).and_then(|s| acc.checked_mul(s)))
    }

    pub fn is_finite(&self) -> bool {
        self.size().is_some()
    }

    /// `ann(M)`, the last invariant factor; the unit ideal for the zero module.
    pub fn annihilator(&self) -> Elem {
        self.factors.last().cloned().unwrap_or_else(|| self.ring.one())
    }

    pub fn zero(&self) -> Vec<Elem> {
        vec![self.ring.zero(); self.factors.len()]
    }

    pub fn reduce(&self, c: &[Elem]) -> Vec<Elem> {
        c.iter().zip(&self.factors).map(|(x, d)| self.ring.reduce_mod(x, d)).collect()
    }

    pub fn add(&self, a: &[Elem], b: &[Elem]) -> Vec<Elem> {
        let sum: Vec<Elem> = a.iter().zip(b).map(|(x, y)| self.ring.add(x, y)).collect();
        self.reduce(&sum)
    }

    pub fn neg(&self, a: &[Elem]) -> Vec<Elem> {
        let n: Vec<Elem> = a.iter().map(|x| self.ring.neg(x)).collect();
        self.reduce(&n)
    }

    pub fn scale(&self, r: &Elem, a: &[Elem]) -> Vec<Elem> {
        let s: Vec<Elem> = a.iter().map(|x| self.ring.mul(r, x)).collect();
        self.reduce(&s)
    }

    /// Presentation coordinates to normal coordinates.
    pub fn to_normal(&self, x: &[Elem]) -> Result<Vec<Elem>> {
        if x.len() != self.presentation.rows {
            return Err(Error::DimensionMismatch(format!(
                "expected {} coordinates, got {}",
                self.presentation.rows,
                x.len()
            )));
        }
        let y = self.reduction.u.mul_vec(&self.ring, x);
        Ok(self.positions.iter().zip(&self.factors).map(|(&p, d)| self.ring.reduce_mod(&y[p], d)).collect())
    }

    /// Normal coordinates to presentation coordinates.
    pub fn from_normal(&self, c: &[Elem]) -> Vec<Elem> {
        let mut z = vec![self.ring.zero(); self.presentation.rows];
        for (&p, v) in self.positions.iter().zip(c) {
            z[p] = v.clone();
        }
        self.reduction.u_inv.mul_vec(&self.ring, &z)
    }

    /// Residue representatives for each normal coordinate, when finite.
    pub fn coordinate_residues(&self) -> Option<Vec<Vec<Elem>>> {
        self.factors.iter().map(|d| self.ring.residues(d)).collect()
    }

    /// All elements, first coordinate most significant.
    pub fn elements(&self) -> Option<Vec<Vec<Elem>>> {
        let lists = self.coordinate_residues()?;
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
        Some(out)
    }

    fn check_vec(&self, v: &[Elem]) -> Result<()> {
        if v.len() != self.factors.len() {
            return Err(Error::DimensionMismatch(format!(
                "expected {} normal coordinates, got {}",
                self.factors.len(),
                v.len()
            )));
        }
        Ok(())
    }

    pub fn submodule(&self, gens: Vec<Vec<Elem>>) -> Result<Submodule> {
        for g in &gens {
            self.check_vec(g)?;
        }
        let gens = gens.iter().map(|g| self.reduce(g)).collect();
        Ok(Submodule { gens })
    }

    /// Decides `x ∈ N` by diagonal reduction of `[gens | diag(d)]`.
    pub fn contains(&self, n: &Submodule, x: &[Elem]) -> Result<bool> {
        self.check_vec(x)?;
        let r = self.factors.len();
        if r == 0 {
            return Ok(true);
        }
        let mut cols = n.gens.clone();
        for (j, d) in self.factors.iter().enumerate() {
            let mut c = vec![self.ring.zero(); r];
            c[j] = d.clone();
            cols.push(c);
        }
        let b = Matrix::from_cols(&self.ring, r, &cols);
        let red = diagonal_reduce(&self.ring, &b)?;
        let y = red.u.mul_vec(&self.ring, x);
        let diag = red.diagonal(&self.ring);
        Ok(y.iter().zip(&diag).all(|(yi, di)| self.ring.divides(di, yi)))
    }

    /// `M/N` presented by the original relations plus the generators of `N`.
    pub fn quotient(&self, gens: &[Vec<Elem>]) -> Result<FpModule> {
        for g in gens {
            self.check_vec(g)?;
        }
        let extra: Vec<Vec<Elem>> = gens.iter().map(|g| self.from_normal(g)).collect();
        let extra = Matrix::from_cols(&self.ring, self.presentation.rows, &extra);
        FpModule::new(&self.ring, self.presentation.hcat(&extra))
    }

    pub fn direct_sum(&self, other: &FpModule) -> Result<FpModule> {
        if self.ring != other.ring {
            return Err(Error::DimensionMismatch("modules over different rings".into()));
        }
        let (a, b) = (&self.presentation, &other.presentation);
        let mut p = Matrix::zeros(&self.ring, a.rows + b.rows, a.cols + b.cols);
        for i in 0..a.rows {
            for j in 0..a.cols {
                p[(i, j)] = a[(i, j)].clone();
            }
        }
        for i in 0..b.rows {
            for j in 0..b.cols {
                p[(a.rows + i, a.cols + j)] = b[(i, j)].clone();
            }
        }
        FpModule::new(&self.ring, p)
    }

    pub fn report(&self) -> ModuleReport {
        ModuleReport {
            ring: self.ring.to_string(),
            invariant_factors: self
                .factors
                .iter()
                .filter(|d| !self.ring.is_free_ideal(d))
                .map(|d| d.to_string())
                .collect(),
            free_rank: self.free_rank(),
        }
    }
}

/// A submodule given by generators in normal coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Submodule {
    pub gens: Vec<Vec<Elem>>,
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(v: &[i128]) -> Vec<Elem> {
        v.iter().map(|&x| Elem::Int(x)).collect()
    }

    #[test]
    fn z12_example() {
        let r = Ring::zmod(12).unwrap();
        let m = FpModule::from_factors(&r, &ints(&[4, 6])).unwrap();
        assert_eq!(m.factors(), ints(&[2, 0]).as_slice());
        assert_eq!(m.annihilator(), Elem::Int(0));
        assert_eq!(m.size(), Some(24));
        assert_eq!(m.elements().unwrap().len(), 24);
    }

    #[test]
    fn coordinates_round_trip() {
        let r = Ring::zmod(12).unwrap();
        let a = Matrix::from_rows(&r, vec![ints(&[4, 2]), ints(&[6, 8])], 2).unwrap();
        let m = FpModule::new(&r, a).unwrap();
        for c in m.elements().unwrap() {
            let x = m.from_normal(&c);
            assert_eq!(m.to_normal(&x).unwrap(), c);
        }
    }

    #[test]
    fn quotient_of_free_integers() {
        let z = Ring::integers();
        let m = FpModule::free(&z, 2).unwrap();
        let gen = m.to_normal(&ints(&[2, 0])).unwrap();
        let q = m.quotient(&[gen]).unwrap();
        assert_eq!(q.factors(), ints(&[2, 0]).as_slice());
        assert_eq!(q.free_rank(), 1);
        assert_eq!(q.report().invariant_factors, vec!["2".to_string()]);
    }

    #[test]
    fn membership_over_integers() {
        let z = Ring::integers();
        let m = FpModule::from_factors(&z, &ints(&[6, 0])).unwrap();
        let n = m.submodule(vec![ints(&[2, 4])]).unwrap();
        assert!(m.contains(&n, &ints(&[4, 8])).unwrap());
        assert!(m.contains(&n, &ints(&[0, 12])).unwrap());
        assert!(!m.contains(&n, &ints(&[0, 4])).unwrap());
        assert!(!m.contains(&n, &ints(&[1, 2])).unwrap());
    }
}
