//! Plane-wave solutions, their zero-divisor amplitude, fourth-order
//! consequences and the classical integral representation.

use num_complex::Complex64;
use num_rational::Ratio;
use serde_json::Value;

use super::{jv, random_point, rel, Ctx, Outcome};
use crate::clifford::{HermitianVector, Mv, Point};
use crate::error::{Error, Result};
use crate::kernels::{classical_e, classical_representation, zero_divisor_products, Antiholomorphic, PlaneWave, PlaneWaveParams};
use crate::submonogenic::{
    apply_d_left, apply_d_left_full, apply_d_right, biharmonic, partial, system_equivalence_residual, FDConfig,
};

const FD_TOL: f64 = 1e-6;

fn direction(n: usize) -> Vec<f64> {
    let raw: Vec<f64> = (0..2 * n).map(|j| 0.7 - 0.35 * j as f64 + 0.1 * (j * j) as f64).collect();
    let s = raw.iter().map(|v| v * v).sum::<f64>().sqrt();
    raw.iter().map(|v| 0.9 * v / s).collect()
}

fn rational_direction(n: usize) -> (Vec<Ratio<i64>>, Ratio<i64>) {
    let r = |a, b| Ratio::new(a, b);
    match n {
        1 => (vec![r(3, 5), r(-4, 5)], r(1, 1)),
        2 => (vec![r(1, 3), r(2, 3), r(-2, 3), r(0, 1)], r(1, 1)),
        _ => {
            let mut u = vec![r(2, 7), r(3, 7), r(0, 1), r(-6, 7)];
            u.resize(2 * n, r(0, 1));
            (u, r(1, 1))
        }
    }
}

/// Largest `|op f| / |f|` over the points.
fn worst_relative(pts: &[Point], f: impl Fn(&Point) -> Result<Mv>, op: impl Fn(&Point) -> Result<Mv>) -> Result<f64> {
    let mut worst = 0.0f64;
    for p in pts {
        let scale = f(p)?.norm().max(1e-300);
        worst = worst.max(op(p)?.norm() / scale);
    }
    Ok(worst)
}

pub(super) fn run(ctx: &mut Ctx) {
    for n in ctx.cfg.n_values(&[1, 2]) {
        let pts: Vec<Point> = (0..6).map(|_| random_point(ctx.rng(), n, -0.8, 0.8, 0.8)).collect();
        let u = direction(n);
        let params = [("n", Value::from(n)), ("w", jv(&u))];
        let cfg = FDConfig::default();

        ctx.check(&format!("general_wave_left_n{n}"), "𝔻 annihilates e^{α₁θ+α₂θ̄+λz₀+μz̄₀}(f₀f₀†w†w/|w|²-(α₂/μ)f₀†w)", FD_TOL, &params, || {
            let w = HermitianVector::from_real(&u)?;
            let nw2 = w.norm().powi(2);
            let (lambda, mu, a1) = (Complex64::new(0.3, 0.2), Complex64::new(-0.5, 0.1), Complex64::new(0.4, -0.3));
            let a2 = -lambda * mu / (nw2 * a1);
            let pw = PlaneWaveParams::new(w, lambda, mu, a1, a2)?;
            let f = |z0: Complex64, x: &[f64]| pw.eval_full(z0, x);
            let mut worst = 0.0f64;
            for p in &pts {
                let z0 = Complex64::new(p.x0, 0.25 * p.x0 - 0.1);
                let scale = f(z0, &p.x)?.norm().max(1e-300);
                worst = worst.max(apply_d_left_full(&f, z0, &p.x, &cfg)?.norm() / scale);
            }
            Ok(Outcome::new(worst))
        });

        ctx.check(&format!("two_sided_wave_n{n}"), "P = e^{i Im θ - x₀|w|} L(f₀ - ŵ†) is left and right submonogenic", FD_TOL, &params, || {
            let pw = PlaneWave::from_real(&u)?;
            let f = |p: &Point| pw.eval(p);
            let l = worst_relative(&pts, f, |p| apply_d_left(&f, p, &cfg))?;
            let r = worst_relative(&pts, f, |p| apply_d_right(&f, p, &cfg))?;
            Ok(Outcome::new(l.max(r)))
        });

        ctx.check(&format!("growing_wave_left_n{n}"), "e^{i Im θ + x₀|w|} amplitude is left submonogenic", FD_TOL, &params, || {
            let pw = PlaneWaveParams::growing(HermitianVector::from_real(&u)?)?;
            let f = |p: &Point| pw.eval(p);
            Ok(Outcome::new(worst_relative(&pts, f, |p| apply_d_left(&f, p, &cfg))?))
        });

        ctx.check(&format!("decaying_wave_left_n{n}"), "e^{i Im θ - x₀|w|} amplitude is left submonogenic", FD_TOL, &params, || {
            let pw = PlaneWaveParams::decaying(HermitianVector::from_real(&u)?)?;
            let f = |p: &Point| pw.eval(p);
            Ok(Outcome::new(worst_relative(&pts, f, |p| apply_d_left(&f, p, &cfg))?))
        });

        for (label, desc, h) in [
            ("antiholomorphic_conj", "ζ̄ L with ζ = x₀|w| + i Im θ satisfies the system and its four-equation form", 0usize),
            ("antiholomorphic_exp", "e^{-ζ̄} L satisfies the system and its four-equation form", 1),
        ] {
            ctx.check(&format!("{label}_n{n}"), desc, FD_TOL, &params, || {
                let prof = move |z: Complex64| if h == 0 { z.conj() } else { (-z.conj()).exp() };
                let a = Antiholomorphic::new(HermitianVector::from_real(&u)?, prof)?;
                let f = |p: &Point| a.eval(p);
                let mut worst = 0.0f64;
                for p in &pts {
                    let scale = f(p)?.norm().max(1e-300);
                    let s = system_equivalence_residual(&f, p, &cfg)?;
                    worst = worst.max(s.consistency.max(s.max_equation).max(s.direct) / scale);
                }
                Ok(Outcome::new(worst))
            });
        }

        let (ru, rn) = rational_direction(n);
        ctx.check(&format!("zero_divisor_n{n}"), "exact products D·L, L(f₀†w† + f₀f₀†ww†/|w|) and L(f₀-ŵ†)(…) vanish", 0.0, &[("n", Value::from(n)), ("mode", Value::from("exact"))], || {
            let prods = zero_divisor_products(&ru, rn)?;
            let worst = prods.iter().map(|m| m.to_float().norm()).fold(0.0, f64::max);
            Ok(Outcome::new(if prods.iter().all(|m| m.is_zero()) { 0.0 } else { worst.max(f64::MIN_POSITIVE) }))
        });

        ctx.check(&format!("plane_wave_dx0_n{n}"), "∂x₀P = -|w|P against finite differences", 1e-8, &params, || {
            let pw = PlaneWave::from_real(&u)?;
            let f = |p: &Point| pw.eval(p);
            let mut worst = 0.0f64;
            for p in &pts {
                worst = worst.max(rel(&partial(&f, p, 0, &cfg)?, &pw.dx0(p)?)?);
            }
            Ok(Outcome::new(worst))
        });

        ctx.check(&format!("biharmonic_plane_wave_n{n}"), "Δ₂(Δ₂+Δ_{2n})P = 0 (relative to |w|⁴|P|)", 1e-3, &params, || {
            let pw = PlaneWave::from_real(&u)?;
            let f = |p: &Point| pw.eval(p);
            let h = FDConfig::fourth_order().h;
            let w4 = pw.w.norm().powi(4);
            Ok(Outcome::new(worst_relative(&pts, f, |p| Ok(biharmonic(&f, p, h)?.scale_re(1.0 / w4)))?))
        });

        ctx.check(&format!("biharmonic_x0_fourth_n{n}"), "Δ₂(Δ₂+Δ_{2n}) x₀⁴ = 24", 1e-6, &[("n", Value::from(n))], || {
            let dim = crate::clifford::hermitian_dim(n);
            let f = |p: &Point| Ok(Mv::scalar(dim, Complex64::new(p.x0.powi(4), 0.0)));
            let mut worst = 0.0f64;
            for p in &pts {
                let v = biharmonic(&f, p, FDConfig::fourth_order().h)?;
                worst = worst.max(v.distance(&Mv::scalar(dim, Complex64::new(24.0, 0.0)))?);
            }
            Ok(Outcome::new(worst))
        });

        ctx.check(&format!("constraint_rejected_n{n}"), "parameters violating |w|²α₁α₂ = -λμ are rejected", 0.0, &params, || {
            let w = HermitianVector::from_real(&u)?;
            let one = Complex64::new(1.0, 0.0);
            Ok(Outcome::new(match PlaneWaveParams::new(w, one, one, one, one) {
                Err(Error::Parameter(_)) => 0.0,
                _ => 1.0,
            }))
        });
    }

    let cpts = [(1.0, [0.3, 0.4]), (-0.8, [0.2, -0.1]), (0.6, [-0.5, 0.1])];
    let exec = ctx.exec();
    ctx.check(
        "classical_representation_m2",
        "2^{m+1}π^m sgn(x₀) E(x) = ∫ e^{i⟨x,u⟩-|x₀||u|}(1 + i sgn(x₀)u/|u|) dV(u), m = 2",
        1e-4,
        &[("m", Value::from(2)), ("points", Value::from(cpts.iter().map(|(a, x)| vec![*a, x[0], x[1]]).collect::<Vec<_>>()))],
        || {
            let mut worst = 0.0f64;
            let mut tail = 0.0f64;
            for (x0, x) in &cpts {
                let (v, t) = classical_representation(*x0, x, 256, exec)?;
                let e = classical_e(*x0, x)?;
                worst = worst.max(rel(&v, &e)?);
                tail = tail.max(t / e.norm());
            }
            Ok(Outcome::with_estimate(worst, tail))
        },
    );

    ctx.check("classical_kernel_monogenic_m2", "classical kernel E is left and right monogenic", FD_TOL, &[("m", Value::from(2))], || {
        let cfg = FDConfig::default();
        let e = |p: &Point| classical_e(p.x0, &p.x);
        let mut worst = 0.0f64;
        for (x0, x) in &cpts {
            let p = Point::new(*x0, x.to_vec())?;
            let d0 = partial(&e, &p, 0, &cfg)?;
            let (mut l, mut r) = (d0.clone(), d0);
            for j in 0..2 {
                let g = Mv::generator(2, j as u32)?;
                let dj = partial(&e, &p, j + 1, &cfg)?;
                l = &l + &(&g * &dj);
                r = &r + &(&dj * &g);
            }
            let s = e(&p)?.norm();
            worst = worst.max(l.norm().max(r.norm()) / s);
        }
        Ok(Outcome::new(worst))
    });

    ctx.check("classical_kernel_homogeneity_m2", "E(tx) = t^{-m} E(x)", 1e-12, &[("m", Value::from(2)), ("t", jv(&[0.5, 2.0, 3.7]))], || {
        let mut worst = 0.0f64;
        for (x0, x) in &cpts {
            let e = classical_e(*x0, x)?;
            for t in [0.5, 2.0, 3.7] {
                let et = classical_e(t * x0, &[t * x[0], t * x[1]])?;
                worst = worst.max(rel(&et.scale_re(t * t), &e)?);
            }
        }
        Ok(Outcome::new(worst))
    });
}
