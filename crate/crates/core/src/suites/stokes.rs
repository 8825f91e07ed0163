//! `∫_{∂B} F 𝗇 G dS = ∫_B (F𝔻)G + F(𝔻G) dV` on the unit ball.

use num_complex::Complex64;
use serde_json::Value;

use super::{Ctx, Outcome};
use crate::clifford::{scalar_mv, Mv, Point};
use crate::error::Result;
use crate::kernels::PlaneWave;
use crate::quadrature::{SphereSizes, SurfaceResolution};
use crate::reconstruction::stokes_ball;
use crate::submonogenic::{FDConfig, Field};

const TOL: f64 = 1e-4;

pub(super) fn run(ctx: &mut Ctx) {
    let n = 1;
    let dim = crate::clifford::hermitian_dim(n);
    let res = SurfaceResolution { radial: 16, sphere: SphereSizes { angular: 40, polar: 20 }, ..Default::default() };
    let cfg = FDConfig::default();
    let center = Point::origin(n);
    let exec = ctx.exec();
    let params = [("n", Value::from(n)), ("radius", Value::from(1.0))];

    let run_pair = |f: &dyn Field, g: &dyn Field| -> Result<Outcome> {
        let s = stokes_ball(f, g, &center, 1.0, &res, &cfg, exec)?;
        Ok(Outcome::new(s.residual))
    };

    let one = |_: &Point| Ok(Mv::one(dim));
    let x0 = |p: &Point| Ok(scalar_mv(dim, p.x0));
    ctx.check("constant_pair", "F = G = 1: boundary integral of 𝗇 vanishes", TOL, &params, || run_pair(&one, &one));
    ctx.check("constant_and_x0", "F = 1, G = x₀: boundary term equals vol(B)(f₀ + f₀†)", TOL, &params, || run_pair(&one, &x0));
    ctx.check("plane_wave_pair", "F = P(w₁), G = P(w₂)", TOL, &params, || {
        let p1 = PlaneWave::from_real(&[0.6, 0.8])?;
        let p2 = PlaneWave::from_real(&[-0.3, 0.4])?;
        run_pair(&|p: &Point| p1.eval(p), &|p: &Point| p2.eval(p))
    });
    ctx.check("polynomial_and_plane_wave", "non-submonogenic polynomial F against G = P(w)", TOL, &params, || {
        let f1 = Mv::witt(n, 1, false)?;
        let h = move |p: &Point| Ok(&f1 * Complex64::new(p.x0 * p.x0 + p.x[0] * p.x[1], p.x[1]));
        let pw = PlaneWave::from_real(&[0.6, 0.8])?;
        run_pair(&h, &|p: &Point| pw.eval(p))
    });
}
