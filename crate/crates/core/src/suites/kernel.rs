//! The Cauchy kernel `E`, its `x₀`-derivative `K` and the scalar functions
//! `G`, `H` behind them.

use num_complex::Complex64;
use serde_json::Value;

use super::{jv, random_point, rel, Ctx, Outcome};
use crate::clifford::{Mv, Point};
use crate::error::Result;
use crate::kernels::{lambda_n, CauchyKernel, PlaneWave};
use crate::reconstruction::e_from_k_integral;
use crate::special::double_factorial_f64;
use crate::submonogenic::{apply_d_left, apply_d_right, observed_order, partial, FDConfig, Scheme};

const RANDOM_POINTS: usize = 20;

/// Fourth-order central difference of a scalar function.
fn d5(f: impl Fn(f64) -> Result<f64>, x: f64, h: f64) -> Result<f64> {
    Ok((-f(x + 2.0 * h)? + 8.0 * f(x + h)? - 8.0 * f(x - h)? + f(x - 2.0 * h)?) / (12.0 * h))
}

fn fixed_point(n: usize) -> Point {
    Point { x0: 0.4, x: (0..2 * n).map(|i| 0.1 * (i as f64 + 1.0) * if i % 2 == 0 { 1.0 } else { -1.0 }).collect() }
}

/// `(x₀, r)` samples on both sides of the series switch and at negative `x₀`.
const GH_SAMPLES: [(f64, f64); 5] = [(1.0, 0.5), (1.5, 1.2), (0.8, 0.1), (-0.5, 0.7), (2.0, 0.3)];

pub(super) fn run(ctx: &mut Ctx) {
    for n in ctx.cfg.n_values(&[1, 2]) {
        let kernel = match CauchyKernel::new(n) {
            Ok(k) => k,
            Err(e) => {
                ctx.check(&format!("kernel_setup_n{n}"), "kernel coefficients", 0.0, &[], || Err(e));
                continue;
            }
        };
        let kernel = &kernel;
        // off the singular half-axis: r >= 0.1 or x₀ >= 0.1
        let mut pts = Vec::new();
        while pts.len() < RANDOM_POINTS {
            let p = random_point(ctx.rng(), n, -0.6, 1.0, 0.7);
            if p.r() >= 0.1 || p.x0 >= 0.1 {
                pts.push(p);
            }
        }
        let pts = &pts;
        let cfg = FDConfig::default();
        let params = [("n", Value::from(n)), ("points", Value::from(RANDOM_POINTS))];
        let u: Vec<f64> = (0..2 * n).map(|i| 0.3 + 0.1 * i as f64).collect();

        let e = |q: &Point| kernel.e(q);
        let kf = |q: &Point| kernel.k(q);
        ctx.check(&format!("kernel_left_monogenic_n{n}"), "𝔻E = 0 off the singular set", 1e-6, &params, || {
            let mut w = 0.0f64;
            for p in pts {
                w = w.max(apply_d_left(&e, p, &cfg)?.norm() / e(p)?.norm());
            }
            Ok(Outcome::new(w))
        });
        ctx.check(&format!("kernel_right_monogenic_n{n}"), "E𝔻 = 0 off the singular set", 1e-6, &params, || {
            let mut w = 0.0f64;
            for p in pts {
                w = w.max(apply_d_right(&e, p, &cfg)?.norm() / e(p)?.norm());
            }
            Ok(Outcome::new(w))
        });
        ctx.check(&format!("plane_wave_left_n{n}"), "𝔻P = 0", 1e-6, &params, || {
            let pw = PlaneWave::from_real(&u)?;
            let f = |q: &Point| pw.eval(q);
            let mut w = 0.0f64;
            for p in pts {
                w = w.max(apply_d_left(&f, p, &cfg)?.norm() / f(p)?.norm());
            }
            Ok(Outcome::new(w))
        });
        ctx.check(&format!("plane_wave_right_n{n}"), "P𝔻 = 0", 1e-6, &params, || {
            let pw = PlaneWave::from_real(&u)?;
            let f = |q: &Point| pw.eval(q);
            let mut w = 0.0f64;
            for p in pts {
                w = w.max(apply_d_right(&f, p, &cfg)?.norm() / f(p)?.norm());
            }
            Ok(Outcome::new(w))
        });

        let p0 = fixed_point(n);
        let p0 = &p0;
        for (scheme, label, expected) in [(Scheme::Richardson, "richardson", 4.0), (Scheme::Central2, "central", 2.0)] {
            let op = [("n", Value::from(n)), ("h", Value::from(0.1)), ("expected_order", Value::from(expected)), ("point", jv(&p0.coords()))];
            ctx.check(&format!("fd_order_{label}_kernel_n{n}"), "observed order of 𝔻E under step halving", 0.5, &op, || {
                let o = observed_order(|h| Ok(apply_d_left(&e, p0, &FDConfig::new(h, scheme)?)?.norm()), 0.1)?;
                Ok(Outcome::new((o - expected).abs()))
            });
            ctx.check(&format!("fd_order_{label}_plane_wave_n{n}"), "observed order of 𝔻P under step halving", 0.5, &op, || {
                let pw = PlaneWave::from_real(&u)?;
                let f = |q: &Point| pw.eval(q);
                let o = observed_order(|h| Ok(apply_d_right(&f, p0, &FDConfig::new(h, scheme)?)?.norm()), 0.1)?;
                Ok(Outcome::new((o - expected).abs()))
            });
        }

        let gh_params = [("n", Value::from(n)), ("x0_r", Value::from(GH_SAMPLES.iter().map(|(a, b)| vec![*a, *b]).collect::<Vec<_>>()))];
        let nf = n as f64;
        ctx.check(&format!("dx0_g_n{n}"), "∂x₀G = (2n+1)r²/(x₀²+r²)^{(2n+3)/2}", 1e-8, &gh_params, || {
            let mut w = 0.0f64;
            for &(x0, r) in &GH_SAMPLES {
                let fd = d5(|t| Ok(kernel.coeffs.gh(t, r)?.0), x0, 1e-3)?;
                let exact = (2.0 * nf + 1.0) * r * r / (x0 * x0 + r * r).powf((2.0 * nf + 3.0) / 2.0);
                w = w.max((fd - exact).abs() / exact.abs());
            }
            Ok(Outcome::new(w))
        });
        ctx.check(&format!("dx0_h_n{n}"), "∂x₀H = 2/(x₀²+r²)^{(2n+1)/2}", 1e-8, &gh_params, || {
            let mut w = 0.0f64;
            for &(x0, r) in &GH_SAMPLES {
                let fd = d5(|t| Ok(kernel.coeffs.gh(t, r)?.1), x0, 1e-3)?;
                let exact = 2.0 / (x0 * x0 + r * r).powf((2.0 * nf + 1.0) / 2.0);
                w = w.max((fd - exact).abs() / exact.abs());
            }
            Ok(Outcome::new(w))
        });
        ctx.check(&format!("gh_series_overlap_n{n}"), "series and closed forms of G, H agree for 0.05 <= r/x₀ <= 0.3", 1e-10, &[("n", Value::from(n))], || {
            let c = double_factorial_f64(2 * n as i64)? / double_factorial_f64(2 * n as i64 - 1)?;
            let mut w = 0.0f64;
            for x0 in [0.5, 1.0, 2.0] {
                for k in 0..=10 {
                    let r = x0 * (0.05 + 0.025 * k as f64);
                    let (gs, hs) = kernel.coeffs.gh_series(x0, r)?;
                    let (gd, hd) = kernel.coeffs.gh_direct(x0, r)?;
                    let scale = c / r.powi(2 * n as i32);
                    w = w.max((gs - gd).abs().max((hs - hd).abs()) / scale);
                }
            }
            Ok(Outcome::new(w))
        });
        ctx.check(&format!("h_axis_limit_n{n}"), "H(x₀, 0) = -1/(n x₀^{2n}) and G(x₀, 0) = 0", 1e-14, &[("n", Value::from(n))], || {
            let mut w = 0.0f64;
            for x0 in [0.5, 1.0, 3.0] {
                let (g, h) = kernel.coeffs.gh(x0, 0.0)?;
                let exact = -1.0 / (nf * x0.powi(2 * n as i32));
                w = w.max(((h - exact) / exact).abs()).max(g.abs() * x0.powi(2 * n as i32));
            }
            Ok(Outcome::new(w))
        });

        if n == 1 {
            ctx.check("g_h_identity_n1", "(z†z/r²)G - βH = f₁†f₁ x₀/(x₀²+r²)^{3/2}", 1e-12, &gh_params, || {
                let fr = &kernel.frame;
                let mut w = 0.0f64;
                for &(x0, r) in &GH_SAMPLES {
                    for phi in [0.3, 2.0, 4.5] {
                        let x = [r * f64::cos(phi), r * f64::sin(phi)];
                        let cx: Vec<Complex64> = x.iter().map(|&v| Complex64::new(v, 0.0)).collect();
                        let (z, zd) = Mv::hermitian_split_coords(1, &cx)?;
                        let (_, h) = kernel.coeffs.gh(x0, r)?;
                        let lhs = &(&zd * &z).scale_re(kernel.coeffs.g_over_r2(x0, r)?) - &fr.beta.scale_re(h);
                        let rhs = (&fr.fdag[1] * &fr.f[1]).scale_re(x0 / (x0 * x0 + r * r).powf(1.5));
                        w = w.max(lhs.distance(&rhs)?);
                    }
                }
                Ok(Outcome::new(w))
            });
        }

        ctx.check(&format!("k_matches_dx0_e_n{n}"), "K = ∂x₀E against finite differences", 1e-6, &params, || {
            let mut w = 0.0f64;
            for p in pts {
                w = w.max(rel(&partial(&e, p, 0, &cfg)?, &kernel.k(p)?)?);
            }
            Ok(Outcome::new(w))
        });
        let epts: Vec<Point> = pts.iter().take(5).cloned().collect();
        let epts = &epts;
        ctx.check(&format!("e_from_k_integral_n{n}"), "E(x) = -∫_0^∞ K(x + s e₀) ds", 1e-6, &[("n", Value::from(n)), ("points", Value::from(5))], || {
            let mut w = 0.0f64;
            let mut est = 0.0f64;
            for p in epts {
                let (v, err) = e_from_k_integral(kernel, p)?;
                let ex = kernel.e(p)?;
                w = w.max(rel(&v, &ex)?);
                est = est.max(err / ex.norm());
            }
            Ok(Outcome::with_estimate(w, est))
        });
        ctx.check(&format!("k_homogeneity_n{n}"), "K(tx) = t^{-(2n+1)} K(x)", 1e-12, &[("n", Value::from(n)), ("t", jv(&[0.5, 2.0, 3.7]))], || {
            let mut w = 0.0f64;
            for p in pts {
                let k = kernel.k(p)?;
                for t in [0.5, 2.0, 3.7] {
                    let kt = kernel.k(&p.scaled(t))?.scale_re(t.powi(2 * n as i32 + 1));
                    w = w.max(rel(&kt, &k)?);
                }
            }
            Ok(Outcome::new(w))
        });
        ctx.check(&format!("k_two_sided_monogenic_n{n}"), "𝔻K = 0 and K𝔻 = 0", 1e-6, &params, || {
            let mut w = 0.0f64;
            for p in pts {
                let s = kf(p)?.norm();
                w = w.max(apply_d_left(&kf, p, &cfg)?.norm() / s).max(apply_d_right(&kf, p, &cfg)?.norm() / s);
            }
            Ok(Outcome::new(w))
        });

        let ppts: Vec<&Point> = pts.iter().filter(|p| p.x0 > 0.05).collect();
        let ppts = &ppts;
        ctx.check(&format!("integral_combination_is_kernel_n{n}"), "f₀†f₀I₁ - f₀f₀†I₂ + f₀I₃ + f₀†I₄ = -σ_{2n+1}λ_n E", 1e-12, &params, || {
            let lam = lambda_n(n)?;
            let mut w = 0.0f64;
            for p in ppts.iter() {
                let c = kernel.closed_form_i(p)?;
                let ex = kernel.e(p)?.scale_re(-kernel.sigma() * lam);
                w = w.max(rel(&c.i, &ex)?);
            }
            Ok(Outcome::new(w))
        });
        ctx.check(&format!("integral_regrouping_n{n}"), "-I₂ + f₀I₃ + f₀†I₄ + f₀†f₀(I₁+I₂) equals the combination", 1e-12, &params, || {
            let mut w = 0.0f64;
            for p in ppts.iter() {
                let c = kernel.closed_form_i(p)?;
                w = w.max(rel(&c.regrouped(&kernel.frame), &c.i)?);
            }
            Ok(Outcome::new(w))
        });
    }
}
