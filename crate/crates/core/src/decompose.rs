//! Diagonal reduction, canonical forms, indecomposable refinement, generator
//! counts and pure-generator peeling.

use std::cmp::Reverse;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::module::FpModule;
use crate::oracle::{FiniteModule, FiniteRing};
use crate::ring::{Elem, Ring};

/// `U·A·V = D` with `D` diagonal, `d₁ | d₂ | ⋯`, and both inverses tracked.
#[derive(Clone, Debug, Serialize)]
pub struct Reduction {
    pub u: Matrix,
    pub u_inv: Matrix,
    pub d: Matrix,
    pub v: Matrix,
    pub v_inv: Matrix,
}

impl Reduction {
    /// Diagonal entries padded with zeros to the row count.
    pub fn diagonal(&self, ring: &Ring) -> Vec<Elem> {
        (0..self.d.rows)
            .map(|i| if i < self.d.cols { self.d[(i, i)].clone() } else { ring.zero() })
            .collect()
    }
}

fn find_pivot(ring: &Ring, d: &Matrix, t: usize) -> Option<(usize, usize)> {
    let mut best: Option<(u128, usize, usize)> = None;
    for i in t..d.rows {
        for j in t..d.cols {
            let a = &d[(i, j)];
            if ring.is_zero(a) {
                continue;
            }
            let rank = ring.pivot_rank(a);
            if best.is_none_or(|(b, _, _)| rank < b) {
                best = Some((rank, i, j));
            }
        }
    }
    best.map(|(_, i, j)| (i, j))
}

/// Diagonal reduction over any supported Bézout ring instance.
pub fn diagonal_reduce(ring: &Ring, a: &Matrix) -> Result<Reduction> {
    ring.require_bezout()?;
    let (m, k) = (a.rows, a.cols);
    let mut d = a.clone();
    let mut u = Matrix::identity(ring, m);
    let mut u_inv = Matrix::identity(ring, m);
    let mut v = Matrix::identity(ring, k);
    let mut v_inv = Matrix::identity(ring, k);
    let one = ring.one();

    for t in 0..m.min(k) {
        let Some((pi, pj)) = find_pivot(ring, &d, t) else { break };
        d.swap_rows(t, pi);
        u.swap_rows(t, pi);
        u_inv.swap_cols(t, pi);
        d.swap_cols(t, pj);
        v.swap_cols(t, pj);
        v_inv.swap_rows(t, pj);

        loop {
            for i in t + 1..m {
                let x = d[(i, t)].clone();
                if ring.is_zero(&x) {
                    continue;
                }
                let p = d[(t, t)].clone();
                if let Some(q) = ring.exact_div(&x, &p) {
                    let nq = ring.neg(&q);
                    d.add_row_multiple(ring, i, t, &nq);
                    u.add_row_multiple(ring, i, t, &nq);
                    u_inv.add_col_multiple(ring, t, i, &q);
                } else {
                    let [_, s, tt, p1, x1] = ring.bezout_full(&p, &x)?;
                    let nx1 = ring.neg(&x1);
                    let ntt = ring.neg(&tt);
                    d.mix_rows(ring, t, i, [&s, &tt, &nx1, &p1]);
                    u.mix_rows(ring, t, i, [&s, &tt, &nx1, &p1]);
                    u_inv.mix_cols(ring, t, i, [&p1, &x1, &ntt, &s]);
                }
            }
            for j in t + 1..k {
                let x = d[(t, j)].clone();
                if ring.is_zero(&x) {
                    continue;
                }
                let p = d[(t, t)].clone();
                if let Some(q) = ring.exact_div(&x, &p) {
                    let nq = ring.neg(&q);
                    d.add_col_multiple(ring, j, t, &nq);
                    v.add_col_multiple(ring, j, t, &nq);
                    v_inv.add_row_multiple(ring, t, j, &q);
                } else {
                    let [_, s, tt, p1, x1] = ring.bezout_full(&p, &x)?;
                    let nx1 = ring.neg(&x1);
                    let ntt = ring.neg(&tt);
                    d.mix_cols(ring, t, j, [&s, &tt, &nx1, &p1]);
                    v.mix_cols(ring, t, j, [&s, &tt, &nx1, &p1]);
                    v_inv.mix_rows(ring, t, j, [&p1, &x1, &ntt, &s]);
                }
            }
            if (t + 1..m).any(|i| !ring.is_zero(&d[(i, t)])) {
                continue;
            }
            let p = d[(t, t)].clone();
            let offender = (t + 1..m).find(|&i| (t + 1..k).any(|j| !ring.divides(&p, &d[(i, j)])));
            match offender {
                Some(i) => {
                    d.add_row_multiple(ring, t, i, &one);
                    u.add_row_multiple(ring, t, i, &one);
                    u_inv.add_col_multiple(ring, i, t, &ring.neg(&one));
                }
                None => break,
            }
        }
    }

    for t in 0..m.min(k) {
        let w = ring.unit_to_gen(&d[(t, t)]);
        if w != one {
            let w_inv = ring.inverse(&w).ok_or_else(|| Error::Invariant("normalizing factor is not a unit".into()))?;
            d.scale_row(ring, t, &w);
            u.scale_row(ring, t, &w);
            u_inv.scale_col(ring, t, &w_inv);
        }
    }
    Ok(Reduction { u, u_inv, d, v, v_inv })
}

/// Invariant-factor ideals reindexed so that `I₁ ⊆ I₂ ⊆ ⋯ ⊆ Iₙ ≠ R`.
pub fn canonical_form(m: &FpModule) -> Vec<Elem> {
    m.factors().iter().rev().cloned().collect()
}

/// One indecomposable cyclic summand of a module.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Piece {
    pub ideal: Elem,
    /// Index of the invariant factor it comes from.
    pub factor: usize,
    /// Element of `R/(d_factor)` generating the summand.
    pub cofactor: Elem,
}

fn order_pieces(ring: &Ring, pieces: &mut [Piece]) -> Result<()> {
    let mut keyed = Vec::with_capacity(pieces.len());
    for p in pieces.iter() {
        let size = ring.residue_size(&p.ideal).unwrap_or(u128::MAX);
        keyed.push((ring.radical(&p.ideal)?, Reverse(size), p.clone()));
    }
    keyed.sort_by(|a, b| (&a.0, a.1).cmp(&(&b.0, b.1)));
    for (slot, (_, _, p)) in pieces.iter_mut().zip(keyed) {
        *slot = p;
    }
    Ok(())
}

/// Splits every invariant factor of `m` into pairwise comaximal pieces with a
/// single minimal prime each, ordered by radical and then by descending size.
pub fn refine_pieces(m: &FpModule) -> Result<Vec<Piece>> {
    let ring = m.ring();
    let mut pieces = Vec::new();
    for (idx, d) in m.factors().iter().enumerate() {
        for (ideal, cofactor) in ring.primary_split(d)? {
            pieces.push(Piece { ideal, factor: idx, cofactor });
        }
    }
    order_pieces(ring, &mut pieces)?;
    Ok(pieces)
}

/// Indecomposable refinement of a chain of ideals.
pub fn indecomposable_refine(ring: &Ring, chain: &[Elem]) -> Result<Vec<Elem>> {
    ring.require_bezout()?;
    let mut pieces = Vec::new();
    for (idx, d) in chain.iter().enumerate() {
        for (ideal, cofactor) in ring.primary_split(d)? {
            pieces.push(Piece { ideal, factor: idx, cofactor });
        }
    }
    order_pieces(ring, &mut pieces)?;
    Ok(pieces.into_iter().map(|p| p.ideal).collect())
}

/// Minimal number of generators.
pub fn mu(m: &FpModule) -> usize {
    m.factors().len()
}

/// Result of one peeling step.
#[derive(Clone, Debug)]
pub struct Peel {
    /// The pure generator in normal coordinates of the input module.
    pub generator: Vec<Elem>,
    pub quotient: FpModule,
}

/// Finds `x` with `Rx` pure, `ann(x) = ann(M)` and `μ(M/Rx) = μ(M) − 1` by
/// choosing such a generator in each local factor and gluing them.
pub fn peel_pure_generator(m: &FpModule) -> Result<Peel> {
    if m.is_zero() {
        return Err(Error::ZeroModule);
    }
    let fr = FiniteRing::from_ring(m.ring())?;
    let fm = FiniteModule::from_fp(m, &fr)?;
    let full = fm.full();
    let target_ann = fm.annihilator(&full);
    let mut total = fm.zero();
    for e in fr.primitive_idempotents() {
        let part = fm.scale_set(e, &full);
        if part.count_ones(..) == 1 {
            continue;
        }
        let ann = fm.annihilator(&part);
        let mut found = None;
        for x in part.ones() {
            if fm.element_annihilator(x) != ann {
                continue;
            }
            let rx = fm.cyclic(x);
            if fm.is_pure(&part, &rx)? {
                found = Some(x);
                break;
            }
        }
        let x = found.ok_or_else(|| Error::Invariant("no local pure generator".into()))?;
        total = fm.add(total, x);
    }
    let x = total;
    if fm.element_annihilator(x) != target_ann {
        return Err(Error::Invariant("glued generator has the wrong annihilator".into()));
    }
    let generator = fm.coords(x);
    let quotient = m.quotient(std::slice::from_ref(&generator))?;
    Ok(Peel { generator, quotient })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::poly::Poly;

    fn int_matrix(ring: &Ring, rows: &[&[i128]]) -> Matrix {
        let cols = rows.first().map_or(0, |r| r.len());
        Matrix::from_rows(
            ring,
            rows.iter().map(|r| r.iter().map(|&v| ring.from_int(v)).collect()).collect(),
            cols,
        )
        .unwrap()
    }

    fn check(ring: &Ring, a: &Matrix, red: &Reduction) {
        assert_eq!(red.u.mul(ring, a).mul(ring, &red.v), red.d);
        assert!(red.u.mul(ring, &red.u_inv).is_identity(ring));
        assert!(red.v.mul(ring, &red.v_inv).is_identity(ring));
        let diag = red.diagonal(ring);
        for w in diag.windows(2) {
            assert!(ring.divides(&w[0], &w[1]), "{:?} does not divide {:?}", w[0], w[1]);
        }
    }

    #[test]
    fn integer_example() {
        let z = Ring::integers();
        let a = int_matrix(&z, &[&[2, 4], &[6, 8]]);
        let red = diagonal_reduce(&z, &a).unwrap();
        check(&z, &a, &red);
        assert_eq!(red.diagonal(&z), vec![Elem::Int(2), Elem::Int(4)]);
    }

    #[test]
    fn identity_is_fixed() {
        let z = Ring::integers();
        let a = Matrix::identity(&z, 3);
        let red = diagonal_reduce(&z, &a).unwrap();
        assert!(red.u.is_identity(&z) && red.v.is_identity(&z));
        assert_eq!(red.d, a);
    }

    #[test]
    fn polynomial_example() {
        let r = Ring::poly(2, Poly::zero()).unwrap();
        let t = Elem::Poly(Poly::monomial(1));
        let t2 = Elem::Poly(Poly::monomial(2));
        let a = Matrix::from_rows(&r, vec![vec![t.clone(), t2], vec![r.zero(), t.clone()]], 2).unwrap();
        let red = diagonal_reduce(&r, &a).unwrap();
        check(&r, &a, &red);
        assert_eq!(red.diagonal(&r), vec![t.clone(), t]);
    }

    #[test]
    fn modular_example() {
        let r = Ring::zmod(12).unwrap();
        let a = int_matrix(&r, &[&[4, 0], &[0, 6]]);
        let red = diagonal_reduce(&r, &a).unwrap();
        check(&r, &a, &red);
        assert_eq!(red.diagonal(&r), vec![Elem::Int(2), Elem::Int(0)]);
    }

    #[test]
    fn refine_z12() {
        let r = Ring::zmod(12).unwrap();
        let out = indecomposable_refine(&r, &[Elem::Int(0), Elem::Int(2)]).unwrap();
        assert_eq!(out, vec![Elem::Int(4), Elem::Int(2), Elem::Int(3)]);
        let out = indecomposable_refine(&r, &[Elem::Int(6)]).unwrap();
        assert_eq!(out, vec![Elem::Int(2), Elem::Int(3)]);
    }
}
