//! Closed-form integrals and series against quadrature oracles, and the
//! Funk–Hecke formula on `S^2` and `S^3`.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde_json::Value;

use super::{Ctx, Outcome};
use crate::quadrature::{adaptive_complex, adaptive_real, exponential_tail, funk_hecke_residual, SphereRule, SphereSizes};
use crate::special::{
    lemma21_i, lemma21_ii_antiderivative, lemma21_ii_antiderivative_derivative, lemma21_ii_integrand, lemma21_iii_lhs,
    lemma21_iii_rhs, lemma22_closed, series_inv_one_minus, series_inv_one_plus_half, Lemma22,
};

const ALPHAS: [Complex64; 3] = [Complex64::new(-1.0, 0.0), Complex64::new(-2.0, 0.0), Complex64::new(-1.0, 0.5)];
const X0_R_GRID: [(f64, f64); 4] = [(1.0, 0.5), (2.0, 1.5), (1.0, 0.3), (3.0, 2.9)];

/// Grid kept at `r/x₀ >= 0.3`: the closed forms cancel to `~ε(x₀/r)^{2n}`.
///
/// `∫_0^π w(θ) (x₀ - ir cos θ)^{-m} dθ`, the `t = cos θ` form of the weighted
/// integrals (regular at the endpoints for every `m >= 2`).
fn theta_oracle(which: Lemma22, m_or_n: u32, x0: f64, r: f64) -> crate::error::Result<(Complex64, f64)> {
    let a = adaptive_complex(
        |th| {
            let (s, c) = th.sin_cos();
            let (pow, w) = match which {
                Lemma22::I => (m_or_n, s.powi(m_or_n as i32 - 2)),
                Lemma22::Ii => (m_or_n, c * s.powi(m_or_n as i32 - 2)),
                Lemma22::Iii => (2 * m_or_n, c * c * s.powi(2 * m_or_n as i32 - 2)),
            };
            Complex64::new(x0, -r * c).powi(-(pow as i32)) * w
        },
        0.0,
        PI,
        1e-15,
        1e-13,
    )?;
    Ok((a.value, a.error_estimate))
}

pub(super) fn run(ctx: &mut Ctx) {
    for (ia, alpha) in ALPHAS.iter().copied().enumerate() {
        let params = [("alpha", Value::from(vec![alpha.re, alpha.im])), ("n", Value::from((0..=5).collect::<Vec<u32>>()))];
        ctx.check(&format!("gamma_moment_a{ia}"), "∫_0^∞ x^n e^{αx} dx = (-1)^{n+1} n!/α^{n+1}", 1e-10, &params, || {
            let mut worst = 0.0f64;
            let mut est = 0.0f64;
            for nn in 0..=5u32 {
                let c = -alpha.re;
                let l = 50.0 / c;
                let quad = adaptive_complex(|x| x.powi(nn as i32) * (alpha * x).exp(), 0.0, l, 1e-15, 1e-14)?;
                let exact = lemma21_i(nn, alpha)?;
                let tail = exponential_tail(nn, c, l);
                worst = worst.max((quad.value - exact).norm() / exact.norm());
                est = est.max((quad.error_estimate + tail) / exact.norm());
            }
            Ok(Outcome::with_estimate(worst, est))
        });
    }

    let xs: Vec<f64> = (0..=20).map(|i| -5.0 + 0.5 * i as f64).collect();
    for nn in 1..=5u32 {
        let params = [("n", Value::from(nn)), ("x", Value::from(vec![-5.0, 5.0]))];
        ctx.check(
            &format!("antiderivative_n{nn}"),
            "P_{2n-2}(x)/(1+x²)^{(2n-1)/2} is an antiderivative of x^{2n-1}/(1+x²)^{(2n+1)/2}",
            1e-10,
            &params,
            || {
                let mut worst = 0.0f64;
                let f0 = lemma21_ii_antiderivative(nn, 0.0)?;
                for &x in &xs {
                    let quad = adaptive_real(|t| lemma21_ii_integrand(nn, t), 0.0, x, 1e-15, 1e-14)?;
                    let diff = lemma21_ii_antiderivative(nn, x)? - f0;
                    worst = worst.max((quad.value - diff).abs());
                    let d = lemma21_ii_antiderivative_derivative(nn, x)?;
                    worst = worst.max((d - lemma21_ii_integrand(nn, x)).abs());
                }
                Ok(Outcome::new(worst))
            },
        );
    }

    let sx = [-0.9, -0.6, 0.5, 0.7, 0.95];
    for nn in 1..=5u32 {
        let params = [("n", Value::from(nn)), ("x", Value::from(sx.to_vec()))];
        ctx.check(
            &format!("series_identity_n{nn}"),
            "alternating series equals its closed form within the tail bound",
            1e-12,
            &params,
            || {
                let mut excess = 0.0f64;
                let mut tail = 0.0f64;
                for &x in &sx {
                    let lhs = lemma21_iii_lhs(nn, x)?;
                    let rhs = lemma21_iii_rhs(nn, x)?;
                    excess = excess.max(((lhs.sum - rhs).abs() - lhs.tail_bound).max(0.0));
                    tail = tail.max(lhs.tail_bound);
                }
                Ok(Outcome::with_estimate(excess, tail))
            },
        );
    }

    let gx = [-0.5, 0.3, 0.6];
    ctx.check(
        "series_inv_one_minus",
        "Σ C(k+m-1,k) x^k = (1-x)^{-m}",
        1e-12,
        &[("m", Value::from((1..=5).collect::<Vec<u32>>())), ("x", Value::from(gx.to_vec()))],
        || {
            let mut excess = 0.0f64;
            for m in 1..=5u32 {
                for &x in &gx {
                    let s = series_inv_one_minus(m, x)?;
                    let exact = (1.0 - x).powi(-(m as i32));
                    excess = excess.max((((s.sum - exact).abs() - s.tail_bound) / exact).max(0.0));
                }
            }
            Ok(Outcome::new(excess))
        },
    );
    ctx.check(
        "series_inv_one_plus_half",
        "Σ (-1)^k (2k+m-1)!!/((2k)!!(m-1)!!) x^k = (1+x)^{-(m+1)/2}",
        1e-12,
        &[("m", Value::from((1..=5).collect::<Vec<u32>>())), ("x", Value::from(gx.to_vec()))],
        || {
            let mut excess = 0.0f64;
            for m in 1..=5u32 {
                for &x in &gx {
                    let s = series_inv_one_plus_half(m, x)?;
                    let exact = (1.0 + x).powf(-(m as f64 + 1.0) / 2.0);
                    excess = excess.max((((s.sum - exact).abs() - s.tail_bound) / exact).max(0.0));
                }
            }
            Ok(Outcome::new(excess))
        },
    );

    let grid: Vec<Value> = X0_R_GRID.iter().map(|(a, b)| Value::from(vec![*a, *b])).collect();
    for (which, label, range, desc) in [
        (Lemma22::I, "weighted_integral_i", 2..=6u32, "∫(1-t²)^{(m-3)/2}(x₀-irt)^{-m}dt closed form"),
        (Lemma22::Ii, "weighted_integral_ii", 2..=6u32, "∫t(1-t²)^{(m-3)/2}(x₀-irt)^{-m}dt closed form"),
        (Lemma22::Iii, "weighted_integral_iii", 1..=4u32, "∫t²(1-t²)^{(2n-3)/2}(x₀-irt)^{-2n}dt closed form"),
    ] {
        for m in range {
            let key = if which == Lemma22::Iii { "n" } else { "m" };
            let params = [(key, Value::from(m)), ("x0_r", Value::from(grid.clone()))];
            ctx.check(&format!("{label}_{key}{m}"), desc, 1e-8, &params, || {
                let mut worst = 0.0f64;
                let mut est = 0.0f64;
                for &(x0, r) in &X0_R_GRID {
                    let exact = lemma22_closed(which, m, x0, r)?;
                    let (quad, e) = theta_oracle(which, m, x0, r)?;
                    let scale = exact.norm().max(1e-300);
                    worst = worst.max((quad - exact).norm() / scale);
                    est = est.max(e / scale);
                }
                Ok(Outcome::with_estimate(worst, est))
            });
        }
    }

    let samples = [(0.5, 1.0), (1.0, 1.0), (1.5, 2.0), (0.3, 4.0), (2.0, 1.5)];
    for p in [3usize, 4] {
        let rule = match SphereRule::product_sized(p, SphereSizes { angular: 48, polar: 32 }) {
            Ok(r) => r,
            Err(e) => {
                ctx.check(&format!("funk_hecke_p{p}"), "sphere rule", 1e-6, &[], || Err(e));
                continue;
            }
        };
        let raw = [0.3, -0.5, 0.8, 0.2];
        let norm = raw[..p].iter().map(|v| v * v).sum::<f64>().sqrt();
        let xi: Vec<f64> = raw[..p].iter().map(|v| v / norm).collect();
        for k in 0..=2u32 {
            let params = [
                ("p", Value::from(p)),
                ("k", Value::from(k)),
                ("r_rho", Value::from(samples.iter().map(|(a, b)| vec![*a, *b]).collect::<Vec<_>>())),
            ];
            let exec = ctx.exec();
            ctx.check(
                &format!("funk_hecke_p{p}_k{k}"),
                "∫ F(<ξ,η>) Y_k(η) dS = σ_{p-1} Y_k(ξ)/C_k(1) ∫ F C_k (1-t²)^{(p-3)/2} dt, F = e^{irρt}",
                1e-6,
                &params,
                || {
                    let y = move |eta: &[f64]| match k {
                        0 => 1.0,
                        1 => eta[0],
                        _ => eta[0] * eta[1],
                    };
                    let mut worst = 0.0f64;
                    for &(r, rho) in &samples {
                        let fh = funk_hecke_residual(
                            |t| Complex64::from_polar(1.0, r * rho * t),
                            k,
                            y,
                            &xi,
                            &rule,
                            exec,
                        )?;
                        worst = worst.max(fh.residual);
                    }
                    Ok(Outcome::new(worst))
                },
            );
        }
    }
}
