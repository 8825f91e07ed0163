use num_complex::Complex64;
use num_rational::Ratio;
use proptest::prelude::*;

use submonogenic::clifford::{hermitian_dim, BladeMask, ExactComplex, ExactMv, Point, WittFrame};
use submonogenic::kernels::{CauchyKernel, KernelCoeffs, PlaneWaveParams};
use submonogenic::clifford::HermitianVector;
use submonogenic::special::{gegenbauer, lemma21_i, series_inv_one_minus};
use submonogenic::submonogenic::{decompose_abcd, recompose};

fn exact_mv(n: usize) -> impl Strategy<Value = ExactMv> {
    let dim = hermitian_dim(n);
    prop::collection::vec((0u32..(1 << dim), -3i64..=3, -3i64..=3), 0..8).prop_map(move |terms| {
        let t = terms
            .into_iter()
            .map(|(m, a, b)| (BladeMask(m), ExactComplex::new(Ratio::from_integer(a), Ratio::from_integer(b))));
        ExactMv::from_terms(dim, t).unwrap()
    })
}

fn point(n: usize) -> impl Strategy<Value = Point> {
    (0.05f64..1.5, prop::collection::vec(-1.0f64..1.0, 2 * n)).prop_map(|(x0, x)| Point::new(x0, x).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn product_is_associative(a in exact_mv(2), b in exact_mv(2), c in exact_mv(2)) {
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
    }

    #[test]
    fn hermitian_conjugation_reverses_products(a in exact_mv(2), b in exact_mv(2)) {
        prop_assert_eq!((&a * &b).hermitian_conj(), &b.hermitian_conj() * &a.hermitian_conj());
        prop_assert_eq!(a.hermitian_conj().hermitian_conj(), a);
    }

    #[test]
    fn grade_projections_sum_to_element(a in exact_mv(1)) {
        let mut acc = ExactMv::zero(a.dim());
        for k in 0..=a.dim() {
            acc = &acc + &a.grade_project(k).unwrap();
        }
        prop_assert_eq!(acc, a);
    }

    #[test]
    fn abcd_split_roundtrips(a in exact_mv(2)) {
        let parts = decompose_abcd(&a).unwrap();
        prop_assert_eq!(recompose(&parts, &WittFrame::new(2)), a);
    }

    #[test]
    fn kernel_homogeneity(p in point(2), t in 0.2f64..5.0) {
        let k = CauchyKernel::new(2).unwrap();
        let scaled = p.scaled(t);
        let kt = k.k(&scaled).unwrap().scale_re(t.powi(5));
        let kp = k.k(&p).unwrap();
        prop_assert!(kt.distance(&kp).unwrap() <= 1e-12 * kp.norm());
        let et = k.e(&scaled).unwrap().scale_re(t.powi(4));
        let ep = k.e(&p).unwrap();
        prop_assert!(et.distance(&ep).unwrap() <= 1e-11 * ep.norm());
    }

    #[test]
    fn g_h_series_matches_closed_form_in_overlap(x0 in 0.3f64..3.0, q in 0.1f64..0.3) {
        for n in 1..=3 {
            let c = KernelCoeffs::new(n).unwrap();
            let r = q * x0;
            let (gs, hs) = c.gh_series(x0, r).unwrap();
            let (gd, hd) = c.gh_direct(x0, r).unwrap();
            let scale = 1.0 / r.powi(2 * n as i32);
            prop_assert!((gs - gd).abs() <= 1e-11 * scale && (hs - hd).abs() <= 1e-11 * scale);
        }
    }

    #[test]
    fn gamma_moment_recurrence(nn in 0u32..8, re in -3.0f64..-0.1, im in -2.0f64..2.0) {
        // ∫x^{n+1}e^{αx} = -(n+1)/α ∫x^n e^{αx}
        let a = Complex64::new(re, im);
        let lhs = lemma21_i(nn + 1, a).unwrap();
        let rhs = lemma21_i(nn, a).unwrap() * (-(nn as f64 + 1.0)) / a;
        prop_assert!((lhs - rhs).norm() <= 1e-12 * lhs.norm());
    }

    #[test]
    fn geometric_series_partial_sums(m in 1u32..6, x in -0.8f64..0.8) {
        let s = series_inv_one_minus(m, x).unwrap();
        let exact = (1.0 - x).powi(-(m as i32));
        prop_assert!((s.sum - exact).abs() <= s.tail_bound + 1e-13 * exact);
    }

    #[test]
    fn gegenbauer_at_one(k in 0u32..10, lambda in 0.5f64..3.0) {
        // C_k^λ(1) = Γ(k+2λ)/(k! Γ(2λ))
        let mut expect = 1.0;
        for j in 0..k {
            expect *= (2.0 * lambda + j as f64) / (j as f64 + 1.0);
        }
        prop_assert!((gegenbauer(k, lambda, 1.0) - expect).abs() <= 1e-12 * expect);
    }

    #[test]
    fn plane_wave_constraint_is_enforced(a in 0.1f64..2.0, b in 0.1f64..2.0) {
        let w = HermitianVector::from_real(&[0.6, 0.8]).unwrap();
        let one = Complex64::new(1.0, 0.0);
        let ok = PlaneWaveParams::new(w.clone(), Complex64::new(a, 0.0), Complex64::new(b, 0.0), one, Complex64::new(-a * b, 0.0));
        prop_assert!(ok.is_ok());
        let bad = PlaneWaveParams::new(w, Complex64::new(a, 0.0), Complex64::new(b, 0.0), one, Complex64::new(a * b, 0.0));
        prop_assert!(bad.is_err());
    }
}
