//! Reconstruction of `∂x₀F` from boundary values on balls via `K`.

use num_complex::Complex64;
use serde_json::Value;

use super::{jv, rel, Ctx, Outcome};
use crate::clifford::{Mv, Point};
use crate::kernels::{CauchyKernel, PlaneWave};
use crate::quadrature::SurfaceResolution;
use crate::reconstruction::{local_limit, reconstruct_dx0_ball, small_sphere_limit};
use crate::submonogenic::FDConfig;

const TOL: f64 = 1e-3;
const RADII: [f64; 2] = [0.3, 0.5];

pub(super) fn run(ctx: &mut Ctx) {
    let n = 1;
    let res = SurfaceResolution::default();
    let exec = ctx.exec();
    let kernel = match CauchyKernel::new(n) {
        Ok(k) => k,
        Err(e) => return ctx.check("kernel_setup", "kernel coefficients", 0.0, &[], || Err(e)),
    };
    let kernel = &kernel;
    let u_dir = [0.6, 0.8];
    let center = Point::origin(n);
    let center = &center;
    let targets = [("center", Point::origin(n)), ("off_center", Point { x0: 0.05, x: vec![0.1, -0.05] })];

    for (label, u) in &targets {
        for radius in RADII {
            let params = [("n", Value::from(n)), ("radius", Value::from(radius)), ("u", jv(&u.coords())), ("w", jv(&u_dir))];
            let tag = format!("r{:02}", (radius * 10.0).round() as i64);
            ctx.check(&format!("dx0_plane_wave_{label}_{tag}"), "∂x₀P(u) = ∫_{∂B} K(x-u) 𝗇 P dS", TOL, &params, || {
                let pw = PlaneWave::from_real(&u_dir)?;
                let f = |p: &Point| pw.eval(p);
                let v = reconstruct_dx0_ball(kernel, &f, u, center, radius, &res, exec)?;
                Ok(Outcome::new(rel(&v, &pw.dx0(u)?)?))
            });
        }
        let params = [("n", Value::from(n)), ("radii", jv(&RADII)), ("u", jv(&u.coords()))];
        ctx.check(&format!("radius_invariance_{label}"), "the boundary integral does not depend on the ball radius", TOL, &params, || {
            let pw = PlaneWave::from_real(&u_dir)?;
            let f = |p: &Point| pw.eval(p);
            let a = reconstruct_dx0_ball(kernel, &f, u, center, RADII[0], &res, exec)?;
            let b = reconstruct_dx0_ball(kernel, &f, u, center, RADII[1], &res, exec)?;
            Ok(Outcome::new(rel(&a, &b)?))
        });
    }

    let u = Point { x0: 0.1, x: vec![0.2, -0.1] };
    let u = &u;
    let params = [("n", Value::from(n)), ("eps", Value::from(0.2)), ("u", jv(&u.coords()))];
    ctx.check("small_sphere_limit_plane_wave", "shrinking-sphere integral of K𝗇P tends to ∂x₀P", 1e-6, &params, || {
        let pw = PlaneWave::from_real(&u_dir)?;
        let f = |p: &Point| pw.eval(p);
        let l = small_sphere_limit(kernel, &f, u, 0.2, &res, exec)?;
        Ok(Outcome::new(rel(&l.extrapolated, &pw.dx0(u)?)?))
    });
    ctx.check("small_sphere_limit_general", "shrinking-sphere integral of K𝗇F matches the local first-derivative limit for non-submonogenic F", 1e-6, &params, || {
        let f1 = Mv::witt(n, 1, false)?;
        let f = move |p: &Point| {
            let s = Complex64::new((p.x0 + 0.5 * p.x[0]).sin(), p.x[1] * p.x0);
            Ok(&(&f1 * s) + &Mv::one(4).scale_re(p.x[0] * p.x[1] + p.x0.powi(2)))
        };
        let l = small_sphere_limit(kernel, &f, u, 0.2, &res, exec)?;
        let exact = local_limit(&f, u, &FDConfig::default())?;
        Ok(Outcome::new(rel(&l.extrapolated, &exact)?))
    });
}
