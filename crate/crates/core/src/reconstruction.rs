//! Boundary integrals with the normal element
//! `𝗇 = f₀ν₀ + f₀†ν₀ + f₀f₀†ν + f₀†f₀ν†`: the Stokes pairing
//! `∫ F𝗇G dS = 2∫ ((F𝔻)G + F(𝔻G)) dV`, reconstruction of `∂_{x₀}F` on balls
//! through `K`, its small-sphere local limit, and reconstruction of `F` on
//! semi-infinite cylinders through `E`.

use num_complex::Complex64;

use crate::clifford::{hermitian_dim, Mv, Point, WittFrame};
use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::kernels::CauchyKernel;
use crate::quadrature::{
    adaptive_vec, ball_volume_rule, surface_integral, volume_integral, BoundarySurface, SphereRule, SurfaceResolution,
};
use crate::special::sigma;
use crate::submonogenic::{apply_d_left, apply_d_right, jets, Field, FDConfig};

/// `𝗇(ν)` for a unit normal `ν = (ν₀, ν_1, …, ν_{2n})`.
pub fn normal_element(n: usize, nu: &[f64]) -> Result<Mv> {
    if nu.len() != 2 * n + 1 {
        return Err(Error::DimensionMismatch { left: nu.len() as u32, right: 2 * n as u32 + 1 });
    }
    let fr = WittFrame::<Complex64>::new(n);
    normal_from_frame(&fr, nu)
}

fn normal_from_frame(fr: &WittFrame, nu: &[f64]) -> Result<Mv> {
    let n = fr.n;
    let comps: Vec<Complex64> = (0..n).map(|j| Complex64::new(nu[1 + j], nu[1 + n + j])).collect();
    let v = Mv::hermitian_vector(n, &comps)?;
    let head = (&fr.f[0] + &fr.fdag[0]).scale_re(nu[0]);
    Ok(&(&head + &(&fr.p0 * &v)) + &(&fr.q0 * &v.hermitian_conj()))
}

/// Both sides of the Stokes pairing on one domain.
#[derive(Clone, Debug)]
pub struct StokesPairing {
    /// `∫_{∂Ω} F𝗇G dS`
    pub boundary: Mv,
    /// `2∫_Ω ((F𝔻)G + F(𝔻G)) dV`
    pub volume: Mv,
    pub residual: f64,
}

/// Stokes pairing on the ball `|y - c| < R`; `F𝔻` and `𝔻G` by finite
/// differences.
pub fn stokes_ball(
    f: &(impl Field + ?Sized),
    g: &(impl Field + ?Sized),
    center: &Point,
    radius: f64,
    res: &SurfaceResolution,
    cfg: &FDConfig,
    exec: Exec,
) -> Result<StokesPairing> {
    let n = center.n();
    let fr = WittFrame::<Complex64>::new(n);
    let surface = BoundarySurface::Sphere { center: center.clone(), radius }.discretize(n, res)?;
    let boundary = surface_integral(&surface, exec, |x, nu| {
        Ok(&(&f.eval(x)? * &normal_from_frame(&fr, nu)?) * &g.eval(x)?)
    })?;
    let nodes = ball_volume_rule(center, radius, res.radial, res.sphere)?;
    let volume = volume_integral(&nodes, hermitian_dim(n), exec, |y| {
        let fd = &apply_d_right(f, y, cfg)? * &g.eval(y)?;
        let dg = &f.eval(y)? * &apply_d_left(g, y, cfg)?;
        Ok((&fd + &dg).scale_re(2.0))
    })?;
    let residual = boundary.distance(&volume)?;
    Ok(StokesPairing { boundary, volume, residual })
}

/// `∫_S K(x - u) 𝗇(x) F(x) dS(x)`.
pub fn cauchy_k_integral(
    kernel: &CauchyKernel,
    f: &(impl Field + ?Sized),
    u: &Point,
    surface: &BoundarySurface,
    res: &SurfaceResolution,
    exec: Exec,
) -> Result<Mv> {
    let rule = surface.discretize(kernel.n, res)?;
    surface_integral(&rule, exec, |x, nu| {
        let k = kernel.k(&x.sub(u))?;
        Ok(&(&k * &normal_from_frame(&kernel.frame, nu)?) * &f.eval(x)?)
    })
}

/// Reconstruction of `∂_{x₀}F(u)` from data on the sphere `|y - c| = R`.
pub fn reconstruct_dx0_ball(
    kernel: &CauchyKernel,
    f: &(impl Field + ?Sized),
    u: &Point,
    center: &Point,
    radius: f64,
    res: &SurfaceResolution,
    exec: Exec,
) -> Result<Mv> {
    let d = u.sub(center);
    if (d.x0 * d.x0 + d.r() * d.r()).sqrt() >= radius {
        return Err(Error::Domain("reconstruction point must lie inside the ball".into()));
    }
    cauchy_k_integral(kernel, f, u, &BoundarySurface::Sphere { center: center.clone(), radius }, res, exec)
}

/// `(1/(2n+1)) [ (2n f₀†f₀ + 2β(f₀f₀† - f₀†f₀)) ∂_{x₀}F - 2((2n+1) - 2β) f₀∂_zF
/// - 2(1 + 2β) f₀†∂_{z†}F ]` at `u`, the limit of the small-sphere integral
/// of `K𝗇F` for any smooth `F`.
pub fn local_limit(f: &(impl Field + ?Sized), u: &Point, cfg: &FDConfig) -> Result<Mv> {
    let n = u.n();
    let fr = WittFrame::<Complex64>::new(n);
    let dim = hermitian_dim(n);
    let j = jets(f, u, cfg)?;
    let dx0 = j.dz0.scale_re(2.0);
    let dz = (0..n).fold(Mv::zero(dim), |acc, k| &acc + &(&fr.fdag[k + 1] * &j.dz[k]));
    let dzd = (0..n).fold(Mv::zero(dim), |acc, k| &acc + &(&fr.f[k + 1] * &j.dzb[k]));
    let nn = (2 * n + 1) as f64;
    let two_beta = fr.beta.scale_re(2.0);
    let c0 = &fr.q0.scale_re(2.0 * n as f64) + &(&two_beta * &(&fr.p0 - &fr.q0));
    let c1 = &Mv::scalar(dim, Complex64::new(nn, 0.0)) - &two_beta;
    let c2 = &Mv::one(dim) + &two_beta;
    let a = &c0 * &dx0;
    let b = &(&c1 * &fr.f[0]) * &dz;
    let c = &(&c2 * &fr.fdag[0]) * &dzd;
    Ok((&(&a - &b.scale_re(2.0)) - &c.scale_re(2.0)).scale_re(1.0 / nn))
}

/// Small-sphere integrals of `K𝗇F` around `u` and their Richardson
/// extrapolation in `ε²`.
#[derive(Clone, Debug)]
pub struct LocalLimit {
    pub samples: Vec<(f64, Mv)>,
    pub extrapolated: Mv,
}

/// Evaluates the small-sphere integral at `ε, ε/2, ε/4` and extrapolates
/// twice (error terms `ε²`, `ε⁴`).
pub fn small_sphere_limit(
    kernel: &CauchyKernel,
    f: &(impl Field + ?Sized),
    u: &Point,
    eps: f64,
    res: &SurfaceResolution,
    exec: Exec,
) -> Result<LocalLimit> {
    let radii = [eps, eps / 2.0, eps / 4.0];
    let samples = radii
        .iter()
        .map(|&e| {
            let s = BoundarySurface::Sphere { center: u.clone(), radius: e };
            Ok((e, cauchy_k_integral(kernel, f, u, &s, res, exec)?))
        })
        .collect::<Result<Vec<_>>>()?;
    let rich = |coarse: &Mv, fine: &Mv, factor: f64| (&fine.scale_re(factor) - coarse).scale_re(1.0 / (factor - 1.0));
    let r1 = rich(&samples[0].1, &samples[1].1, 4.0);
    let r2 = rich(&samples[1].1, &samples[2].1, 4.0);
    let extrapolated = rich(&r1, &r2, 16.0);
    Ok(LocalLimit { samples, extrapolated })
}

/// Semi-infinite cylinder `{x₀ < a, |x| < R}`, truncated at `x₀ = b`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Cylinder {
    pub a: f64,
    pub radius: f64,
    pub b: f64,
}

/// Result of a cylinder reconstruction.
#[derive(Clone, Debug)]
pub struct CylinderReconstruction {
    pub value: Mv,
    /// Bound on the omitted side part `x₀ < b`, assuming `|F| ~ e^{κ(x₀-b)}`.
    pub tail_bound: f64,
    /// Change of the result when `b` moves to `b - 5/κ`, if requested.
    pub shift_change: Option<f64>,
}

fn cylinder_raw(
    kernel: &CauchyKernel,
    f: &(impl Field + ?Sized),
    u: &Point,
    cyl: &Cylinder,
    res: &SurfaceResolution,
    exec: Exec,
) -> Result<Mv> {
    let n = kernel.n;
    let cap = BoundarySurface::CylinderCap { at: cyl.a, radius: cyl.radius, normal_sign: 1.0 };
    let side = BoundarySurface::CylinderSide { a: cyl.a, radius: cyl.radius, b: cyl.b };
    let integrand = |x: &Point, nu: &[f64]| -> Result<Mv> {
        let e = kernel.e(&x.sub(u))?;
        Ok(&(&e * &normal_from_frame(&kernel.frame, nu)?) * &f.eval(x)?)
    };
    let c = surface_integral(&cap.discretize(n, res)?, exec, integrand)?;
    let s = surface_integral(&side.discretize(n, res)?, exec, integrand)?;
    Ok((&c + &s).scale_re(-1.0))
}

/// Reconstruction `F(u) = -∫_{cap ∪ side} E(x - u) 𝗇 F dS` with the side
/// truncated at `x₀ = b`; `decay_rate` is the exponential rate `κ` of `F` as
/// `x₀ → -∞`.
#[allow(clippy::too_many_arguments)]
pub fn reconstruct_f_cylinder(
    kernel: &CauchyKernel,
    f: &(impl Field + ?Sized),
    u: &Point,
    cyl: &Cylinder,
    decay_rate: f64,
    check_shift: bool,
    res: &SurfaceResolution,
    exec: Exec,
) -> Result<CylinderReconstruction> {
    let n = kernel.n;
    if !(cyl.b < u.x0 && u.x0 < cyl.a) || u.r() >= cyl.radius {
        return Err(Error::Domain("reconstruction point must lie inside the truncated cylinder".into()));
    }
    if !(decay_rate > 0.0) {
        return Err(Error::Parameter(format!("decay rate {decay_rate} must be positive")));
    }
    let value = cylinder_raw(kernel, f, u, cyl, res, exec)?;
    let ring = SphereRule::product_sized(2 * n, res.sphere)?;
    let mut sup = 0.0f64;
    for eta in &ring.nodes {
        let x = Point { x0: cyl.b, x: eta.iter().map(|c| cyl.radius * c).collect() };
        let mut normal = vec![0.0];
        normal.extend(eta.iter().copied());
        let e = kernel.e(&x.sub(u))?;
        let v = &(&e * &normal_from_frame(&kernel.frame, &normal)?) * &f.eval(&x)?;
        sup = sup.max(v.norm());
    }
    let tail_bound = sup * sigma(2 * n as u32)? * cyl.radius.powi(2 * n as i32 - 1) / decay_rate;
    let shift_change = if check_shift {
        let moved = Cylinder { b: cyl.b - 5.0 / decay_rate, ..*cyl };
        Some(cylinder_raw(kernel, f, u, &moved, res, exec)?.distance(&value)?)
    } else {
        None
    };
    Ok(CylinderReconstruction { value, tail_bound, shift_change })
}

/// `-∫_0^∞ K(x₀ + s, x) ds` by adaptive quadrature after `s = t/(1-t)`;
/// returns the value and the quadrature error estimate.
pub fn e_from_k_integral(kernel: &CauchyKernel, p: &Point) -> Result<(Mv, f64)> {
    if p.x0 <= 0.0 && p.r() == 0.0 {
        return Err(Error::Singular("ray through the kernel singularity".into()));
    }
    let dim = hermitian_dim(kernel.n);
    let failed = std::sync::Mutex::new(None);
    let r = adaptive_vec(
        |t| {
            let s = t / (1.0 - t);
            let q = Point { x0: p.x0 + s, x: p.x.clone() };
            match kernel.k(&q) {
                Ok(k) => k.scale_re(-1.0 / ((1.0 - t) * (1.0 - t))).to_dense(),
                Err(e) => {
                    failed.lock().expect("lock").get_or_insert(e);
                    vec![Complex64::new(0.0, 0.0); 1 << dim]
                }
            }
        },
        0.0,
        1.0,
        1e-15,
        1e-12,
    )?;
    if let Some(e) = failed.into_inner().expect("lock") {
        return Err(e);
    }
    Ok((Mv::from_dense(dim, &r.value)?, r.error_estimate))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernels::PlaneWave;

    #[test]
    fn normal_element_examples() {
        let n = 1;
        let fr = WittFrame::<Complex64>::new(n);
        let axis = normal_element(n, &[1.0, 0.0, 0.0]).unwrap();
        assert!(axis.distance(&(&fr.f[0] + &fr.fdag[0])).unwrap() < 1e-15);
        assert!(normal_element(n, &[1.0, 0.0]).is_err());
    }

    #[test]
    fn e_equals_minus_integral_of_k() {
        let kernel = CauchyKernel::new(1).unwrap();
        let p = Point::new(0.4, vec![0.3, -0.2]).unwrap();
        let (v, err) = e_from_k_integral(&kernel, &p).unwrap();
        let e = kernel.e(&p).unwrap();
        assert!(v.distance(&e).unwrap() < 1e-9 * e.norm(), "{err}");
    }

    #[test]
    fn local_limit_of_plane_wave_is_dx0() {
        let pw = PlaneWave::from_real(&[0.6, 0.8]).unwrap();
        let u = Point::new(0.1, vec![0.2, -0.1]).unwrap();
        let f = |p: &Point| pw.eval(p);
        let l = local_limit(&f, &u, &FDConfig::default()).unwrap();
        let d = pw.dx0(&u).unwrap();
        assert!(l.distance(&d).unwrap() < 1e-9 * d.norm());
    }
}
