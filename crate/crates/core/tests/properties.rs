use proptest::prelude::*;

use purecomp_core::decompose::{canonical_form, diagonal_reduce, mu};
use purecomp_core::matrix::Matrix;
use purecomp_core::parse::{parse_matrix, print_matrix};
use purecomp_core::ring::poly::Poly;
use purecomp_core::series::{normalize_series, peel_series, validate_series};
use purecomp_core::{Elem, FpModule, Ring, RingDescriptor};

fn zmod_case() -> impl Strategy<Value = (u64, Vec<Vec<i128>>)> {
    (2u64..=60, 1usize..=3, 1usize..=3).prop_flat_map(|(n, r, c)| {
        (Just(n), prop::collection::vec(prop::collection::vec(0..n as i128, c), r))
    })
}

fn int_matrix(ring: &Ring, rows: &[Vec<i128>]) -> Matrix {
    Matrix::from_rows(ring, rows.iter().map(|r| r.iter().map(|&v| ring.from_int(v)).collect()).collect(), rows[0].len())
        .unwrap()
}

fn small_poly_ring() -> impl Strategy<Value = Ring> {
    (prop::sample::select(vec![2u64, 3, 5]), prop::collection::vec(0u64..5, 1..=3)).prop_map(|(p, mut low)| {
        for c in &mut low {
            *c %= p;
        }
        low.push(1);
        Ring::poly(p, Poly::from_coeffs(low)).unwrap()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn zmod_ring_axioms(n in 2u64..=200, a in 0i128..200, b in 0i128..200, c in 0i128..200) {
        let r = Ring::zmod(n).unwrap();
        let (a, b, c) = (r.from_int(a), r.from_int(b), r.from_int(c));
        prop_assert_eq!(r.mul(&a, &r.add(&b, &c)), r.add(&r.mul(&a, &b), &r.mul(&a, &c)));
        prop_assert_eq!(r.mul(&r.mul(&a, &b), &c), r.mul(&a, &r.mul(&b, &c)));
        prop_assert!(r.is_zero(&r.add(&a, &r.neg(&a))));
        let [g, s, t, a1, b1] = r.bezout_full(&a, &b).unwrap();
        prop_assert_eq!(r.add(&r.mul(&s, &a), &r.mul(&t, &b)), g.clone());
        prop_assert_eq!(r.mul(&g, &a1), a.clone());
        prop_assert_eq!(r.mul(&g, &b1), b.clone());
        prop_assert_eq!(r.add(&r.mul(&s, &a1), &r.mul(&t, &b1)), r.one());
    }

    #[test]
    fn poly_quotient_ring_axioms(r in small_poly_ring(), seed in any::<u64>()) {
        let elems = r.elements().unwrap();
        let pick = |k: u64| elems[(seed.wrapping_mul(k + 7) % elems.len() as u64) as usize].clone();
        let (a, b, c) = (pick(1), pick(2), pick(3));
        prop_assert_eq!(r.mul(&a, &r.add(&b, &c)), r.add(&r.mul(&a, &b), &r.mul(&a, &c)));
        let (g, u, v) = r.gcd_bezout(&a, &b).unwrap();
        prop_assert_eq!(r.add(&r.mul(&u, &a), &r.mul(&v, &b)), g.clone());
        prop_assert!(r.divides(&g, &a) && r.divides(&g, &b));
        if r.is_unit(&a) {
            let inv = r.inverse(&a).unwrap();
            prop_assert_eq!(r.mul(&a, &inv), r.one());
        }
    }

    #[test]
    fn diagonal_reduction_is_exact((n, rows) in zmod_case()) {
        let r = Ring::zmod(n).unwrap();
        let a = int_matrix(&r, &rows);
        let red = diagonal_reduce(&r, &a).unwrap();
        prop_assert_eq!(red.u.mul(&r, &a).mul(&r, &red.v), red.d.clone());
        prop_assert!(red.u.mul(&r, &red.u_inv).is_identity(&r));
        prop_assert!(red.v.mul(&r, &red.v_inv).is_identity(&r));
        let diag = red.diagonal(&r);
        for w in diag.windows(2) {
            prop_assert!(r.divides(&w[0], &w[1]));
        }
    }

    #[test]
    fn module_size_matches_factors((n, rows) in zmod_case()) {
        let r = Ring::zmod(n).unwrap();
        let m = FpModule::new(&r, int_matrix(&r, &rows)).unwrap();
        let from_factors: u128 = m.factors().iter().map(|d| r.residue_size(d).unwrap()).product();
        prop_assert_eq!(m.size(), Some(from_factors));
        prop_assert_eq!(m.elements().unwrap().len() as u128, from_factors);
    }

    #[test]
    fn canonical_form_ignores_presentation((n, rows) in zmod_case(), k in 0i128..60, i in 0usize..3, j in 0usize..3) {
        let r = Ring::zmod(n).unwrap();
        let a = int_matrix(&r, &rows);
        let mut b = a.clone();
        let (i, j) = (i % b.rows, j % b.rows);
        if i != j {
            b.add_row_multiple(&r, i, j, &r.from_int(k));
        }
        b.swap_rows(0, b.rows - 1);
        let c = b.cols;
        if c > 1 {
            b.add_col_multiple(&r, 0, c - 1, &r.from_int(k + 1));
        }
        let norm = |m: &FpModule| canonical_form(m).iter().map(|d| r.ideal_gen(d)).collect::<Vec<_>>();
        prop_assert_eq!(
            norm(&FpModule::new(&r, a).unwrap()),
            norm(&FpModule::new(&r, b).unwrap())
        );
    }

    #[test]
    fn print_parse_round_trip((n, rows) in zmod_case()) {
        let desc = RingDescriptor::IntegersMod(n);
        let r = Ring::new(desc.clone()).unwrap();
        let a = int_matrix(&r, &rows);
        prop_assert_eq!(parse_matrix(&desc, &print_matrix(&a)).unwrap(), a);
    }

    #[test]
    fn peel_series_is_valid_with_length_mu(n in prop::sample::select(vec![4u64, 6, 8, 9, 12, 18, 24, 36]), f in prop::collection::vec(0i128..40, 1..=3)) {
        let r = Ring::zmod(n).unwrap();
        let ideals: Vec<Elem> = f.iter().map(|&v| r.from_int(v)).collect();
        let m = FpModule::from_factors(&r, &ideals).unwrap();
        let s = peel_series(&m).unwrap();
        validate_series(&s).unwrap();
        prop_assert_eq!(s.len(), mu(&m));
        let t = normalize_series(&s).unwrap();
        validate_series(&t).unwrap();
        prop_assert_eq!(t.len(), s.len());
    }
}
