//! Reconstruction of `F` on a semi-infinite cylinder, truncated with a
//! tail bound.

use serde_json::Value;

use super::{jv, rel, Ctx, Outcome};
use crate::clifford::{HermitianVector, Point};
use crate::kernels::{CauchyKernel, PlaneWaveParams};
use crate::quadrature::SurfaceResolution;
use crate::reconstruction::{reconstruct_f_cylinder, Cylinder};

const TOL: f64 = 1e-2;

pub(super) fn run(ctx: &mut Ctx) {
    let n = 1;
    let res = SurfaceResolution::default();
    let exec = ctx.exec();
    let kernel = match CauchyKernel::new(n) {
        Ok(k) => k,
        Err(e) => return ctx.check("kernel_setup", "kernel coefficients", 0.0, &[], || Err(e)),
    };
    let kernel = &kernel;
    let w = [0.6, 0.8];
    let cyl = Cylinder { a: 0.5, radius: 1.0, b: -30.0 };
    let targets = [
        ("axis", Point::origin(n)),
        ("interior", Point { x0: 0.2, x: vec![0.3, -0.2] }),
        ("deep", Point { x0: -0.5, x: vec![0.0, 0.5] }),
    ];
    for (label, u) in &targets {
        let params = [
            ("n", Value::from(n)),
            ("a", Value::from(cyl.a)),
            ("radius", Value::from(cyl.radius)),
            ("b", Value::from(cyl.b)),
            ("u", jv(&u.coords())),
            ("w", jv(&w)),
        ];
        ctx.check(&format!("growing_wave_{label}"), "F(u) = -∫_{cap ∪ side} E(x-u) 𝗇 F dS for F decaying as x₀ → -∞", TOL, &params, || {
            let pw = PlaneWaveParams::growing(HermitianVector::from_real(&w)?)?;
            let f = |p: &Point| pw.eval(p);
            let r = reconstruct_f_cylinder(kernel, &f, u, &cyl, 1.0, true, &res, exec)?;
            let exact = f(u)?;
            let s = exact.norm();
            let shift = r.shift_change.unwrap_or(0.0) / s;
            Ok(Outcome::with_estimate(rel(&r.value, &exact)?.max(shift), r.tail_bound / s))
        });
    }
}
