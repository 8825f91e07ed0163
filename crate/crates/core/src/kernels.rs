//! The submonogenic Cauchy kernel `E`, its `x₀`-derivative `K`, the scalar
//! functions `G` and `H`, plane-wave and antiholomorphic solutions, and the
//! classical monogenic kernel used for the `R^m` representation.

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::{BigRational, Ratio};
use num_traits::{One, ToPrimitive, Zero};

use crate::clifford::{hermitian_dim, BladeMask, ExactComplex, ExactMv, HermitianVector, Mv, Point, WittFrame};
use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::quadrature::{PlaneWaveMoment, RadialRule, SphereRule, SphereSizes};
use crate::special::{double_factorial, sigma};

/// Below this value of `r/x₀` (and for `x₀ > 0`) `G` and `H` are evaluated
/// from their power series in `(r/x₀)²`; the closed forms cancel
/// catastrophically there.
pub const SERIES_SWITCH: f64 = 0.25;

/// Series terms kept beyond the singular part; `(1/16)^40` is far below
/// double precision.
const SERIES_TERMS: usize = 40;

fn big_df(k: i64) -> Result<BigInt> {
    Ok(BigInt::from(double_factorial(k)?))
}

fn big_to_f64(q: &BigRational) -> f64 {
    q.to_f64().unwrap_or(f64::NAN)
}

/// Exact coefficients behind `G` and `H`.
#[derive(Clone, Debug)]
pub struct KernelCoeffs {
    pub n: usize,
    /// `c_j = (2n+1)(2n)!! / ((2j)!! (2n-2j+1)!!)`, `j = 0..=n`.
    pub c: Vec<BigRational>,
    /// `d_j = c_j / n` for `j < n`, `d_n = 2`.
    pub d: Vec<BigRational>,
    /// `(2n)!! / (2n-1)!!`
    pub g_const: BigRational,
    /// `2(2n-2)!! / (2n-1)!!`
    pub h_const: BigRational,
    /// `x₀^{2n} G = Σ_k cg_k s^{k-n}`, `s = (r/x₀)²`; `cg_k = 0` for `k <= n`.
    pub cg: Vec<BigRational>,
    /// `x₀^{2n} H = Σ_k ch_k s^{k-n}`; `ch_k = 0` for `k < n`.
    pub ch: Vec<BigRational>,
    cg_f: Vec<f64>,
    ch_f: Vec<f64>,
}

impl KernelCoeffs {
    pub fn new(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidDimension("kernel needs n >= 1".into()));
        }
        let ni = n as i64;
        let two_n_df = big_df(2 * ni)?;
        let c: Vec<BigRational> = (0..=ni)
            .map(|j| -> Result<BigRational> {
                let num = BigInt::from(2 * ni + 1) * &two_n_df;
                let den = big_df(2 * j)? * big_df(2 * ni - 2 * j + 1)?;
                Ok(BigRational::new(num, den))
            })
            .collect::<Result<_>>()?;
        let d: Vec<BigRational> = (0..=n)
            .map(|j| if j < n { &c[j] / BigRational::from_integer(ni.into()) } else { BigRational::from_integer(2.into()) })
            .collect();
        let g_const = BigRational::new(two_n_df, big_df(2 * ni - 1)?);
        let h_const = BigRational::new(BigInt::from(2) * big_df(2 * ni - 2)?, big_df(2 * ni - 1)?);
        // binomial coefficients of (1+s)^{-(2n+1)/2}
        let a = BigRational::new(BigInt::from(-(2 * ni + 1)), BigInt::from(2));
        let len = n + 1 + SERIES_TERMS;
        let mut b = vec![BigRational::one()];
        for k in 1..len {
            let km1 = BigRational::from_integer(BigInt::from(k as i64 - 1));
            let next = &b[k - 1] * (&a - km1) / BigRational::from_integer(BigInt::from(k as i64));
            b.push(next);
        }
        let conv = |coef: &[BigRational], constant: &BigRational| -> Vec<BigRational> {
            (0..len)
                .map(|k| {
                    let mut s = BigRational::zero();
                    for (j, cj) in coef.iter().enumerate().take(k + 1) {
                        s += cj * &b[k - j];
                    }
                    if k == 0 {
                        s -= constant;
                    }
                    s
                })
                .collect()
        };
        let cg = conv(&c, &g_const);
        let ch = conv(&d, &h_const);
        let cg_f = cg.iter().map(big_to_f64).collect();
        let ch_f = ch.iter().map(big_to_f64).collect();
        Ok(KernelCoeffs { n, c, d, g_const, h_const, cg, ch, cg_f, ch_f })
    }

    fn check_domain(x0: f64, r: f64) -> Result<()> {
        if !x0.is_finite() || !(r >= 0.0) || !r.is_finite() {
            return Err(Error::Domain(format!("G/H at x0 = {x0}, r = {r}")));
        }
        Ok(())
    }

    fn use_series(x0: f64, r: f64) -> bool {
        x0 > 0.0 && r < SERIES_SWITCH * x0
    }

    /// Closed forms `(G, H)`; singular at `r = 0`.
    pub fn gh_direct(&self, x0: f64, r: f64) -> Result<(f64, f64)> {
        Self::check_domain(x0, r)?;
        if r == 0.0 {
            return Err(Error::Singular(format!("closed-form G/H at r = 0 (x0 = {x0})")));
        }
        let n = self.n as i32;
        let rho = (x0 * x0 + r * r).powf((2 * n + 1) as f64 / 2.0);
        let r2n = r.powi(2 * n);
        let poly = |coef: &[BigRational]| -> f64 {
            coef.iter()
                .enumerate()
                .map(|(j, cj)| big_to_f64(cj) * x0.powi(2 * n - 2 * j as i32) * r.powi(2 * j as i32))
                .sum()
        };
        let g = x0 * poly(&self.c) / (r2n * rho) - big_to_f64(&self.g_const) / r2n;
        let h = x0 * poly(&self.d) / (r2n * rho) - big_to_f64(&self.h_const) / r2n;
        Ok((g, h))
    }

    /// Series forms `(G, H)` (valid for `x₀ > 0`, `r < x₀`).
    pub fn gh_series(&self, x0: f64, r: f64) -> Result<(f64, f64)> {
        Self::check_domain(x0, r)?;
        if !(x0 > 0.0 && r < x0) {
            return Err(Error::Domain(format!("G/H series needs 0 <= r < x0 (x0 = {x0}, r = {r})")));
        }
        let s = (r / x0).powi(2);
        let scale = x0.powi(2 * self.n as i32);
        Ok((horner(&self.cg_f[self.n..], s) / scale, horner(&self.ch_f[self.n..], s) / scale))
    }

    /// `(G, H)`, switching to the series near the positive `x₀`-axis.
    pub fn gh(&self, x0: f64, r: f64) -> Result<(f64, f64)> {
        if Self::use_series(x0, r) {
            self.gh_series(x0, r)
        } else {
            self.gh_direct(x0, r)
        }
    }

    /// `G / r²`, finite on the positive `x₀`-axis.
    pub fn g_over_r2(&self, x0: f64, r: f64) -> Result<f64> {
        if Self::use_series(x0, r) {
            let s = (r / x0).powi(2);
            Ok(horner(&self.cg_f[self.n + 1..], s) / x0.powi(2 * self.n as i32 + 2))
        } else {
            let (g, _) = self.gh_direct(x0, r)?;
            Ok(g / (r * r))
        }
    }
}

fn horner(coef: &[f64], s: f64) -> f64 {
    coef.iter().rev().fold(0.0, |acc, c| acc * s + c)
}

/// `λ_n = π (2n-1)!! (2n-3)!! σ_{2n-1}`.
pub fn lambda_n(n: usize) -> Result<f64> {
    if n == 0 {
        return Err(Error::InvalidDimension("λ_n needs n >= 1".into()));
    }
    let ni = n as i64;
    Ok(std::f64::consts::PI
        * double_factorial(2 * ni - 1)? as f64
        * double_factorial(2 * ni - 3)? as f64
        * sigma(2 * n as u32 - 1)?)
}

/// Evaluates `E` and `K` for a fixed `n` with cached coefficients.
#[derive(Clone, Debug)]
pub struct CauchyKernel {
    pub n: usize,
    pub frame: WittFrame,
    pub coeffs: KernelCoeffs,
    sigma: f64,
}

impl CauchyKernel {
    pub fn new(n: usize) -> Result<Self> {
        Ok(CauchyKernel {
            n,
            frame: WittFrame::new(n),
            coeffs: KernelCoeffs::new(n)?,
            sigma: sigma(2 * n as u32 + 1)?,
        })
    }

    fn check(&self, p: &Point) -> Result<()> {
        if p.n() != self.n {
            return Err(Error::InvalidDimension(format!("point in R^{} for kernel with n = {}", 2 * p.n() + 1, self.n)));
        }
        if p.x0 == 0.0 && p.r() == 0.0 {
            return Err(Error::Singular("kernel at the origin".into()));
        }
        Ok(())
    }

    /// `E(x)`. Singular on `{x₀ <= 0, x = 0}`.
    pub fn e(&self, p: &Point) -> Result<Mv> {
        self.check(p)?;
        let n = self.n;
        let fr = &self.frame;
        let r = p.r();
        if !(Self::regular_e(p.x0, r)) {
            return Err(Error::Singular(format!("E on the half-axis x0 = {} <= 0, x = 0", p.x0)));
        }
        let (z, zd) = Mv::hermitian_split_coords(n, &p.x.iter().map(|&v| Complex64::new(v, 0.0)).collect::<Vec<_>>())?;
        let rho = (p.x0 * p.x0 + r * r).powf((2 * n + 1) as f64 / 2.0);
        let (_, h) = self.coeffs.gh(p.x0, r)?;
        let g_r2 = self.coeffs.g_over_r2(p.x0, r)?;
        let zz = (&zd * &z).scale_re(g_r2);
        let bh = fr.beta.scale_re(h);
        let dim = hermitian_dim(n);
        let t0 = zd.scale_re(-1.0 / rho);
        let t1 = &fr.f[0] * &(&bh - &zz);
        let t2 = &fr.fdag[0] * &(&(&Mv::scalar(dim, Complex64::new(-p.x0 / rho, 0.0)) - &bh) + &zz);
        let t3 = &fr.q0 * &(&zd - &z).scale_re(1.0 / rho);
        let e = (&(&(&t0 + &t1) + &t2) + &t3).scale_re(1.0 / self.sigma);
        if !e.is_finite() {
            return Err(Error::NonFinite(format!("E at x0 = {}, r = {r}", p.x0)));
        }
        Ok(e)
    }

    fn regular_e(x0: f64, r: f64) -> bool {
        r > 0.0 || x0 > 0.0
    }

    /// `K(x) = ∂_{x₀}E(x)`. Singular only at the origin.
    pub fn k(&self, p: &Point) -> Result<Mv> {
        self.check(p)?;
        let n = self.n;
        let fr = &self.frame;
        let nn = (2 * n + 1) as f64;
        let x0 = p.x0;
        let r2: f64 = p.x.iter().map(|v| v * v).sum();
        let q = x0 * x0 + r2;
        let r1 = q.powf(nn / 2.0);
        let r3 = q.powf(nn / 2.0 + 1.0);
        let (z, zd) = Mv::hermitian_split_coords(n, &p.x.iter().map(|&v| Complex64::new(v, 0.0)).collect::<Vec<_>>())?;
        let dim = hermitian_dim(n);
        let zz = (&zd * &z).scale_re(nn / r3);
        let b2 = fr.beta.scale_re(2.0 / r1);
        let t0 = zd.scale_re(nn * x0 / r3);
        let t1 = &fr.f[0] * &(&b2 - &zz);
        let s = Mv::scalar(dim, Complex64::new((2.0 * n as f64 * x0 * x0 - r2) / r3, 0.0));
        let t2 = &fr.fdag[0] * &(&(&s - &b2) + &zz);
        let t3 = &fr.q0 * &(&z - &zd).scale_re(nn * x0 / r3);
        let k = (&(&(&t0 + &t1) + &t2) + &t3).scale_re(1.0 / self.sigma);
        if !k.is_finite() {
            return Err(Error::NonFinite(format!("K at x0 = {x0}, r² = {r2}")));
        }
        Ok(k)
    }

    /// Closed forms of the plane-wave integrals at `x₀ > 0`.
    pub fn closed_form_i(&self, p: &Point) -> Result<ClosedFormI> {
        self.check(p)?;
        if !(p.x0 > 0.0) {
            return Err(Error::Domain(format!("plane-wave integrals need x0 > 0, got {}", p.x0)));
        }
        let n = self.n;
        let fr = &self.frame;
        let dim = hermitian_dim(n);
        let r = p.r();
        let lam = lambda_n(n)?;
        let rho = (p.x0 * p.x0 + r * r).powf((2 * n + 1) as f64 / 2.0);
        let (z, zd) = Mv::hermitian_split_coords(n, &p.x.iter().map(|&v| Complex64::new(v, 0.0)).collect::<Vec<_>>())?;
        let (_, h) = self.coeffs.gh(p.x0, r)?;
        let g_r2 = self.coeffs.g_over_r2(p.x0, r)?;
        let i0 = Mv::scalar(dim, Complex64::new(lam * p.x0 / rho, 0.0));
        let i1 = z.scale_re(lam / rho);
        let i2 = zd.scale_re(-lam / rho);
        let i3 = (&(&zd * &z).scale_re(g_r2) - &fr.beta.scale_re(h)).scale_re(lam);
        let i4 = &i0 - &i3;
        let i = &(&(&(&fr.q0 * &i1) - &(&fr.p0 * &i2)) + &(&fr.f[0] * &i3)) + &(&fr.fdag[0] * &i4);
        Ok(ClosedFormI { i0, i1, i2, i3, i4, i })
    }

    /// `σ_{2n+1}` for this kernel.
    pub fn sigma(&self) -> f64 {
        self.sigma
    }
}

/// Closed forms of the plane-wave integrals `I₀..I₄` over `R^{2n}` and their
/// combination `I = f₀†f₀I₁ - f₀f₀†I₂ + f₀I₃ + f₀†I₄ = -σ_{2n+1}λ_n E`.
#[derive(Clone, Debug)]
pub struct ClosedFormI {
    pub i0: Mv,
    pub i1: Mv,
    pub i2: Mv,
    pub i3: Mv,
    pub i4: Mv,
    pub i: Mv,
}

impl ClosedFormI {
    pub fn get(&self, which: PlaneWaveMoment) -> &Mv {
        match which {
            PlaneWaveMoment::I0 => &self.i0,
            PlaneWaveMoment::I1 => &self.i1,
            PlaneWaveMoment::I2 => &self.i2,
            PlaneWaveMoment::I3 => &self.i3,
            PlaneWaveMoment::I4 => &self.i4,
        }
    }

    /// `-I₂ + f₀I₃ + f₀†I₄ + f₀†f₀(I₁ + I₂)`.
    pub fn regrouped(&self, frame: &WittFrame) -> Mv {
        let a = &(&self.i2.scale_re(-1.0) + &(&frame.f[0] * &self.i3)) + &(&frame.fdag[0] * &self.i4);
        &a + &(&frame.q0 * &(&self.i1 + &self.i2))
    }
}

/// `E(x)` for a point in `R^{2n+1}`.
pub fn cauchy_kernel_e(p: &Point) -> Result<Mv> {
    CauchyKernel::new(p.n())?.e(p)
}

/// `K(x) = ∂_{x₀}E(x)`.
pub fn kernel_k(p: &Point) -> Result<Mv> {
    CauchyKernel::new(p.n())?.k(p)
}

/// Parameters of the plane-wave family
/// `e^{α₁θ + α₂θ̄ + λz₀ + μz̄₀}(f₀f₀† w†w/|w|² - (α₂/μ) f₀†w)`,
/// `θ = Σ z_j w̄_j`, subject to `|w|² α₁α₂ = -λμ`.
#[derive(Clone, Debug)]
pub struct PlaneWaveParams {
    pub w: HermitianVector,
    pub lambda: Complex64,
    pub mu: Complex64,
    pub alpha1: Complex64,
    pub alpha2: Complex64,
}

impl PlaneWaveParams {
    pub fn new(w: HermitianVector, lambda: Complex64, mu: Complex64, alpha1: Complex64, alpha2: Complex64) -> Result<Self> {
        let nw = w.norm();
        if !(nw > 0.0) {
            return Err(Error::Parameter("plane wave needs w != 0".into()));
        }
        if mu.norm() == 0.0 {
            return Err(Error::Parameter("plane wave needs μ != 0".into()));
        }
        let defect = nw * nw * alpha1 * alpha2 + lambda * mu;
        let scale = (nw * nw * (alpha1 * alpha2).norm()).max((lambda * mu).norm()).max(1.0);
        if defect.norm() > 1e-12 * scale {
            return Err(Error::Parameter(format!("plane-wave constraint |w|²α₁α₂ = -λμ violated by {defect}")));
        }
        Ok(PlaneWaveParams { w, lambda, mu, alpha1, alpha2 })
    }

    /// `λ = μ = -|w|/2`, `α₁ = 1/2`, `α₂ = -1/2`: exponent `i Im θ - |w|x₀`.
    pub fn decaying(w: HermitianVector) -> Result<Self> {
        let h = Complex64::new(w.norm() / 2.0, 0.0);
        Self::new(w, -h, -h, Complex64::new(0.5, 0.0), Complex64::new(-0.5, 0.0))
    }

    /// `λ = μ = |w|/2`, `α₁ = 1/2`, `α₂ = -1/2`: exponent `i Im θ + |w|x₀`.
    pub fn growing(w: HermitianVector) -> Result<Self> {
        let h = Complex64::new(w.norm() / 2.0, 0.0);
        Self::new(w, h, h, Complex64::new(0.5, 0.0), Complex64::new(-0.5, 0.0))
    }

    fn n(&self) -> usize {
        self.w.n()
    }

    fn exponent(&self, z0: Complex64, x: &[f64]) -> Result<Complex64> {
        let n = self.n();
        if x.len() != 2 * n {
            return Err(Error::DimensionMismatch { left: x.len() as u32, right: 2 * n as u32 });
        }
        let theta: Complex64 = (0..n).map(|j| Complex64::new(x[j], x[n + j]) * self.w.components[j].conj()).sum();
        Ok(self.alpha1 * theta + self.alpha2 * theta.conj() + self.lambda * z0 + self.mu * z0.conj())
    }

    fn amplitude(&self) -> Mv {
        let fr = WittFrame::<Complex64>::new(self.n());
        let w = self.w.to_multivector();
        let nw = self.w.norm();
        let a = &fr.p0 * &(&w.hermitian_conj() * &w).scale_re(1.0 / (nw * nw));
        &a - &(&(&fr.fdag[0] * &w) * (self.alpha2 / self.mu))
    }

    /// Value at `(z₀, x)` on `R^{2n+2}`.
    pub fn eval_full(&self, z0: Complex64, x: &[f64]) -> Result<Mv> {
        Ok(&self.amplitude() * self.exponent(z0, x)?.exp())
    }

    /// Value at a point of the `y₀ = 0` slice.
    pub fn eval(&self, p: &Point) -> Result<Mv> {
        self.eval_full(Complex64::new(p.x0, 0.0), &p.x)
    }
}

/// `L = f₀f₀† w†w/|w|² - f₀† w/|w|`.
pub fn plane_wave_amplitude(w: &HermitianVector) -> Result<Mv> {
    let nw = w.norm();
    if !(nw > 0.0) {
        return Err(Error::Parameter("plane wave needs w != 0".into()));
    }
    let fr = WittFrame::<Complex64>::new(w.n());
    let wm = w.to_multivector();
    let a = &fr.p0 * &(&wm.hermitian_conj() * &wm).scale_re(1.0 / (nw * nw));
    Ok(&a - &(&fr.fdag[0] * &wm).scale_re(1.0 / nw))
}

/// `Im θ = Σ (x_{n+j} u_j - x_j u_{n+j})`.
fn phase(w: &HermitianVector, x: &[f64]) -> f64 {
    let n = w.n();
    (0..n).map(|j| x[n + j] * w.components[j].re - x[j] * w.components[j].im).sum()
}

fn check_len(w: &HermitianVector, p: &Point) -> Result<()> {
    if p.n() != w.n() {
        return Err(Error::DimensionMismatch { left: p.n() as u32, right: w.n() as u32 });
    }
    Ok(())
}

/// The two-sided solution `P = e^{i Im θ - x₀|w|} L (f₀ - w†/|w|)`.
#[derive(Clone, Debug)]
pub struct PlaneWave {
    pub w: HermitianVector,
    amp: Mv,
}

impl PlaneWave {
    pub fn new(w: HermitianVector) -> Result<Self> {
        let nw = w.norm();
        let l = plane_wave_amplitude(&w)?;
        let fr = WittFrame::<Complex64>::new(w.n());
        let right = &fr.f[0] - &w.to_multivector().hermitian_conj().scale_re(1.0 / nw);
        Ok(PlaneWave { amp: &l * &right, w })
    }

    /// From real coordinates `u ∈ R^{2n}`.
    pub fn from_real(u: &[f64]) -> Result<Self> {
        Self::new(HermitianVector::from_real(u)?)
    }

    pub fn eval(&self, p: &Point) -> Result<Mv> {
        check_len(&self.w, p)?;
        let e = Complex64::new(-p.x0 * self.w.norm(), phase(&self.w, &p.x)).exp();
        Ok(&self.amp * e)
    }

    /// `∂_{x₀}P = -|w| P`.
    pub fn dx0(&self, p: &Point) -> Result<Mv> {
        Ok(self.eval(p)?.scale_re(-self.w.norm()))
    }

    /// Exponential factor bound `sup |P|` on `x₀ >= a`.
    pub fn sup_norm_from(&self, a: f64) -> f64 {
        self.amp.norm() * (-a * self.w.norm()).exp()
    }
}

/// `h(x₀|w| + i Im θ) L` for an antiholomorphic-type profile `h`, e.g.
/// `h(ζ) = ζ̄` or `h(ζ) = e^{-ζ̄}`.
pub struct Antiholomorphic<H> {
    pub w: HermitianVector,
    pub h: H,
    amp: Mv,
}

impl<H: Fn(Complex64) -> Complex64 + Sync> Antiholomorphic<H> {
    pub fn new(w: HermitianVector, h: H) -> Result<Self> {
        let amp = plane_wave_amplitude(&w)?;
        Ok(Antiholomorphic { w, h, amp })
    }

    pub fn eval(&self, p: &Point) -> Result<Mv> {
        check_len(&self.w, p)?;
        let zeta = Complex64::new(p.x0 * self.w.norm(), phase(&self.w, &p.x));
        Ok(&self.amp * (self.h)(zeta))
    }
}

/// Exact products behind the zero-divisor property of `L`, for a real
/// direction `u` with rational norm `norm`:
/// `[D·L, L(f₀†w† + f₀f₀† ww†/|w|), L(f₀ - ŵ†)(f₀|w| + f₀†|w| + f₀f₀†w - f₀†f₀w†)]`
/// with `D = f₀ + f₀† + f₀f₀†ŵ - f₀†f₀ŵ†`; all vanish.
pub fn zero_divisor_products(u: &[Ratio<i64>], norm: Ratio<i64>) -> Result<[ExactMv; 3]> {
    if u.is_empty() || !u.len().is_multiple_of(2) {
        return Err(Error::InvalidDimension(format!("direction of length {}", u.len())));
    }
    let sq: Ratio<i64> = u.iter().map(|c| c * c).sum();
    if norm <= Ratio::zero() || norm * norm != sq {
        return Err(Error::Parameter(format!("|u|² = {sq} is not {norm}²")));
    }
    let n = u.len() / 2;
    let fr = WittFrame::<ExactComplex>::new(n);
    let comps: Vec<ExactComplex> = (0..n).map(|j| ExactComplex::new(u[j], u[n + j])).collect();
    let w = ExactMv::hermitian_vector(n, &comps)?;
    let wd = w.hermitian_conj();
    let inv = ExactComplex::new(norm.recip(), Ratio::zero());
    let nm = ExactComplex::new(norm, Ratio::zero());
    let what = w.scale(&inv);
    let whatd = wd.scale(&inv);
    let l = &(&fr.p0 * &(&wd * &w).scale(&(inv * inv))) - &(&fr.fdag[0] * &what);
    let d = &(&(&fr.f[0] + &fr.fdag[0]) + &(&fr.p0 * &what)) - &(&fr.q0 * &whatd);
    let first = &d * &l;
    let second = &l * &(&(&fr.fdag[0] * &wd) + &(&fr.p0 * &(&w * &wd)).scale(&inv));
    let third_r = &(&(&fr.f[0].scale(&nm) + &fr.fdag[0].scale(&nm)) + &(&fr.p0 * &w)) - &(&fr.q0 * &wd);
    let third = &(&l * &(&fr.f[0] - &whatd)) * &third_r;
    Ok([first, second, third])
}

/// Classical monogenic Cauchy kernel on `R^{m+1}` with generators
/// `e_1..e_m` (stored as `0..m`): `(x₀ - Σ x_j e_j) / (σ_{m+1} |x|^{m+1})`.
pub fn classical_e(x0: f64, x: &[f64]) -> Result<Mv> {
    let m = x.len();
    if m == 0 || m > 31 {
        return Err(Error::InvalidDimension(format!("classical kernel in R^{}", m + 1)));
    }
    let q: f64 = x0 * x0 + x.iter().map(|v| v * v).sum::<f64>();
    if q == 0.0 {
        return Err(Error::Singular("classical kernel at the origin".into()));
    }
    let s = 1.0 / (sigma(m as u32 + 1)? * q.powf((m + 1) as f64 / 2.0));
    let terms = std::iter::once((BladeMask::SCALAR, Complex64::new(x0 * s, 0.0)))
        .chain(x.iter().enumerate().map(|(j, &v)| (BladeMask::generator(j as u32), Complex64::new(-v * s, 0.0))));
    Mv::from_terms(m as u32, terms)
}

/// Quadrature value of `∫_{R^m} e^{i⟨x,u⟩ - |x₀||u|}(1 + i sgn(x₀) u/|u|) dV(u)`
/// divided by `2^{m+1} π^m sgn(x₀)`, which equals [`classical_e`]. Returns the
/// value and the radial truncation bound.
pub fn classical_representation(x0: f64, x: &[f64], angular: usize, exec: Exec) -> Result<(Mv, f64)> {
    let m = x.len();
    if x0 == 0.0 || !x0.is_finite() {
        return Err(Error::Domain(format!("representation needs x0 != 0, got {x0}")));
    }
    if m < 2 {
        return Err(Error::InvalidDimension(format!("representation in R^{m}")));
    }
    let a = x0.abs();
    let sg = x0.signum();
    let radial = RadialRule::new(m as u32 - 1, a, 40.0 / a, 30, 20)?;
    let rule = SphereRule::product_sized(m, SphereSizes { angular, polar: angular / 4 + 8 })?;
    let per_node = exec.map(rule.len(), |i| {
        let nu = &rule.nodes[i];
        let t: f64 = x.iter().zip(nu).map(|(a, b)| a * b).sum();
        radial.integrate(|r| Complex64::from_polar(1.0, r * t)) * rule.weights[i]
    });
    let sum = |g: &dyn Fn(usize) -> Complex64| crate::exec::pairwise_sum_c64(&(0..rule.len()).map(g).collect::<Vec<_>>());
    let i = Complex64::new(0.0, 1.0);
    let scale = 1.0 / (2f64.powi(m as i32 + 1) * std::f64::consts::PI.powi(m as i32) * sg);
    let mut terms = vec![(BladeMask::SCALAR, sum(&|k| per_node[k]) * scale)];
    for j in 0..m {
        let v = sum(&|k| per_node[k] * rule.nodes[k][j]) * (i * sg) * scale;
        terms.push((BladeMask::generator(j as u32), v));
    }
    let tail = radial.tail_bound(2.0 * sigma(m as u32)?) * scale.abs();
    Ok((Mv::from_terms(m as u32, terms)?, tail))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn coefficient_examples() {
        let k = KernelCoeffs::new(1).unwrap();
        // n = 1: c = (1, 3) ... c_0 = 3·2/(1·3) = 2, c_1 = 3·2/(2·1) = 3
        assert_eq!(k.c[0], BigRational::from_integer(2.into()));
        assert_eq!(k.c[1], BigRational::from_integer(3.into()));
        assert_eq!(k.d[0], BigRational::from_integer(2.into()));
        assert_eq!(k.d[1], BigRational::from_integer(2.into()));
        assert_eq!(k.g_const, BigRational::from_integer(2.into()));
        assert_eq!(k.h_const, BigRational::from_integer(2.into()));
    }

    #[test]
    fn series_singular_part_cancels_exactly() {
        for n in 1..=6 {
            let k = KernelCoeffs::new(n).unwrap();
            for j in 0..=n {
                assert!(k.cg[j].is_zero(), "n={n} cg[{j}] = {}", k.cg[j]);
            }
            for j in 0..n {
                assert!(k.ch[j].is_zero(), "n={n} ch[{j}] = {}", k.ch[j]);
            }
            assert_eq!(k.ch[n], BigRational::new((-1).into(), (n as i64).into()));
        }
    }

    #[test]
    fn series_and_closed_form_overlap() {
        for n in 1..=4 {
            let k = KernelCoeffs::new(n).unwrap();
            for &t in &[0.05, 0.1, 0.15, 0.2, 0.25, 0.3] {
                let (x0, r) = (1.3, 1.3 * t);
                let (gd, hd) = k.gh_direct(x0, r).unwrap();
                let (gs, hs) = k.gh_series(x0, r).unwrap();
                let scale = big_to_f64(&k.g_const) / r.powi(2 * n as i32);
                assert!((gd - gs).abs() < 1e-12 * scale, "n={n} t={t}: {gd} vs {gs}");
                assert!((hd - hs).abs() < 1e-12 * scale, "n={n} t={t}: {hd} vs {hs}");
            }
        }
    }

    #[test]
    fn lambda_values() {
        assert_relative_eq!(lambda_n(1).unwrap(), 2.0 * std::f64::consts::PI, max_relative = 1e-15);
        // λ₂ = π·3·1·σ₃, σ₃ = 4π
        assert_relative_eq!(lambda_n(2).unwrap(), 12.0 * std::f64::consts::PI.powi(2), max_relative = 1e-15);
    }

    #[test]
    fn e_is_regular_on_positive_axis_and_singular_on_negative() {
        let k = CauchyKernel::new(1).unwrap();
        let e = k.e(&Point::new(0.7, vec![0.0, 0.0]).unwrap()).unwrap();
        assert!(e.is_finite());
        assert!(matches!(k.e(&Point::new(-0.7, vec![0.0, 0.0]).unwrap()), Err(Error::Singular(_))));
        assert!(matches!(k.k(&Point::origin(1)), Err(Error::Singular(_))));
    }

    #[test]
    fn e_continuous_across_series_switch() {
        let k = CauchyKernel::new(2).unwrap();
        let below = k.e(&Point::new(1.0, vec![0.25 * (1.0 - 1e-9), 0.0, 0.0, 0.0]).unwrap()).unwrap();
        let above = k.e(&Point::new(1.0, vec![0.25 * (1.0 + 1e-9), 0.0, 0.0, 0.0]).unwrap()).unwrap();
        assert!(below.distance(&above).unwrap() < 1e-9);
    }

    #[test]
    fn plane_wave_constraint_enforced() {
        let w = HermitianVector::from_real(&[0.6, 0.8]).unwrap();
        let one = Complex64::new(1.0, 0.0);
        assert!(PlaneWaveParams::new(w.clone(), one, one, one, one).is_err());
        assert!(PlaneWaveParams::decaying(w).is_ok());
    }

    #[test]
    fn decaying_params_reproduce_p_without_right_factor() {
        let u = [0.3, -0.5, 0.4, 0.2];
        let w = HermitianVector::from_real(&u).unwrap();
        let params = PlaneWaveParams::decaying(w.clone()).unwrap();
        let pw = PlaneWave::new(w.clone()).unwrap();
        let n = 2;
        let fr = WittFrame::<Complex64>::new(n);
        let right = &fr.f[0] - &w.to_multivector().hermitian_conj().scale_re(1.0 / w.norm());
        let p = Point::new(0.4, vec![0.1, 0.7, -0.3, 0.2]).unwrap();
        let a = &params.eval(&p).unwrap() * &right;
        assert!(a.distance(&pw.eval(&p).unwrap()).unwrap() < 1e-14);
    }

    #[test]
    fn zero_divisor_products_vanish() {
        let r = |a: i64, b: i64| Ratio::new(a, b);
        let u = [r(3, 5), r(0, 1), r(4, 5), r(0, 1)];
        for prod in zero_divisor_products(&u, r(1, 1)).unwrap() {
            assert!(prod.is_zero(), "{prod:?}");
        }
        let u = [r(2, 1), r(1, 1), r(2, 1)];
        assert!(zero_divisor_products(&u, r(3, 1)).is_err());
        let u = [r(1, 1), r(2, 1), r(2, 1), r(0, 1)];
        for prod in zero_divisor_products(&u, r(3, 1)).unwrap() {
            assert!(prod.is_zero());
        }
    }

    #[test]
    fn classical_kernel_examples() {
        let e = classical_e(1.0, &[0.0, 0.0]).unwrap();
        assert_relative_eq!(e.scalar_part().re, 1.0 / (4.0 * std::f64::consts::PI), max_relative = 1e-15);
        assert!(classical_e(0.0, &[0.0, 0.0]).is_err());
    }
}
