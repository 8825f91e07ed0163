//! Plane-wave integrals over `R^{2n}` against their closed forms.

use std::cell::OnceCell;

use num_complex::Complex64;
use serde_json::Value;

use super::{rel, Ctx, Outcome};
use crate::clifford::{Mv, Point, WittFrame};
use crate::error::Result;
use crate::kernels::{CauchyKernel, ClosedFormI};
use crate::quadrature::{planewave_moments, PlaneWaveMoment, PlaneWaveMoments, PlaneWaveQuadrature};

fn points(n: usize) -> Vec<Point> {
    let raw: Vec<(f64, Vec<f64>)> = match n {
        1 => vec![
            (0.5, vec![0.3, -0.2]),
            (1.0, vec![0.4, 0.5]),
            (0.8, vec![-0.1, 0.05]),
            (1.5, vec![1.0, -0.6]),
            (0.35, vec![0.2, 0.1]),
        ],
        2 => vec![(0.7, vec![0.3, -0.2, 0.1, 0.4]), (1.0, vec![0.2, 0.1, -0.3, 0.25])],
        _ => vec![(1.0, (0..2 * n).map(|j| 0.25 * ((j as f64 * 1.7).sin())).collect())],
    };
    raw.into_iter().map(|(x0, x)| Point { x0, x }).collect()
}

fn tolerance(n: usize) -> f64 {
    match n {
        1 => 1e-4,
        2 => 1e-3,
        _ => 1e-2,
    }
}

fn combined(m: &PlaneWaveMoments) -> Mv {
    let fr = WittFrame::<Complex64>::new(m.n);
    let a = &fr.q0 * &m.assemble(PlaneWaveMoment::I1);
    let b = &fr.p0 * &m.assemble(PlaneWaveMoment::I2);
    let c = &fr.f[0] * &m.assemble(PlaneWaveMoment::I3);
    let d = &fr.fdag[0] * &m.assemble(PlaneWaveMoment::I4);
    &(&(&a - &b) + &c) + &d
}

const MOMENTS: [(PlaneWaveMoment, &str, &str); 5] = [
    (PlaneWaveMoment::I0, "i0", "∫ e^{i Im θ - x₀|w|} dV(w) closed form"),
    (PlaneWaveMoment::I1, "i1", "∫ e^{…} w/|w| dV(w) closed form"),
    (PlaneWaveMoment::I2, "i2", "∫ e^{…} w†/|w| dV(w) closed form"),
    (PlaneWaveMoment::I3, "i3", "∫ e^{…} w†w/|w|² dV(w) closed form"),
    (PlaneWaveMoment::I4, "i4", "∫ e^{…} ww†/|w|² dV(w) closed form"),
];

pub(super) fn run(ctx: &mut Ctx) {
    for n in ctx.cfg.n_values(&[1, 2]) {
        let pts = points(n);
        let tol = tolerance(n);
        let mut q = PlaneWaveQuadrature::default_for(n, ctx.cfg.mc_samples, ctx.cfg.seed);
        q.exec = ctx.exec();
        let params = [
            ("n", Value::from(n)),
            ("points", Value::from(pts.iter().map(|p| p.coords()).collect::<Vec<_>>())),
            ("sphere", Value::from(if n <= 2 { "product" } else { "monte-carlo" })),
        ];
        // computed by the first check that needs it, so its runtime carries the quadrature
        let cache: OnceCell<Result<Vec<(PlaneWaveMoments, ClosedFormI)>>> = OnceCell::new();
        let data = || {
            cache.get_or_init(|| {
                let k = CauchyKernel::new(n)?;
                pts.iter().map(|p| Ok((planewave_moments(p, &q)?, k.closed_form_i(p)?))).collect()
            })
        };
        let scale_est = |m: &PlaneWaveMoments, exact: &Mv| m.error_estimate / exact.norm().max(1e-300);

        for (which, label, desc) in MOMENTS {
            ctx.check(&format!("plane_wave_integral_{label}_n{n}"), desc, tol, &params, || {
                let data = data().as_ref().map_err(Clone::clone)?;
                let (mut w, mut est) = (0.0f64, 0.0f64);
                for (m, c) in data {
                    let exact = c.get(which);
                    w = w.max(rel(&m.assemble(which), exact)?);
                    est = est.max(scale_est(m, exact));
                }
                Ok(Outcome::with_estimate(w, est))
            });
        }
        ctx.check(&format!("plane_wave_integral_combined_n{n}"), "f₀†f₀I₁ - f₀f₀†I₂ + f₀I₃ + f₀†I₄ closed form", tol, &params, || {
            let data = data().as_ref().map_err(Clone::clone)?;
            let (mut w, mut est) = (0.0f64, 0.0f64);
            for (m, c) in data {
                w = w.max(rel(&combined(m), &c.i)?);
                est = est.max(scale_est(m, &c.i));
            }
            Ok(Outcome::with_estimate(w, est))
        });
        ctx.check(&format!("moment_sum_rule_n{n}"), "quadrature values satisfy I₃ + I₄ = I₀", 1e-12, &params, || {
            let data = data().as_ref().map_err(Clone::clone)?;
            let mut w = 0.0f64;
            for (m, _) in data {
                let s = &m.assemble(PlaneWaveMoment::I3) + &m.assemble(PlaneWaveMoment::I4);
                w = w.max(rel(&s, &m.assemble(PlaneWaveMoment::I0))?);
            }
            Ok(Outcome::new(w))
        });
    }
}
