//! Finite-difference application of the operator
//! `𝔻 = f₀∂_{z̄₀} + f₀†∂_{z₀} + f₀f₀†∂_{z†} + f₀†f₀∂_z` from the left and from
//! the right, the Hermitian Dirac operators `∂_z = Σ f_j†∂_{z_j}`,
//! `∂_{z†} = Σ f_j∂_{z̄_j}`, the `A + f₀B + f₀†C + f₀†f₀D` splitting and the
//! equivalent four-equation system, and the fourth-order residual
//! `Δ₂(Δ₂ + Δ_{2n})f`.
//!
//! Derivatives are collected into first-order [`Jets`]; the operators are
//! linear combinations of jets, so the same code runs on FD estimates and on
//! exact symbolic jets.

use num_complex::Complex64;

use crate::clifford::{blade_sign, BladeMask, Coeff, Multivector, Mv, Point, WittFrame};
use crate::error::{Error, Result};

/// Finite-difference stencil.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Scheme {
    /// `(f(h) - f(-h)) / 2h`, error `O(h²)`.
    Central2,
    /// Five-point stencil, error `O(h⁴)`.
    Central4,
    /// One Richardson step on `Central2` with `h` and `h/2`, error `O(h⁴)`.
    Richardson,
}

/// Step and stencil for derivative estimates.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FDConfig {
    pub h: f64,
    pub scheme: Scheme,
}

impl Default for FDConfig {
    fn default() -> Self {
        FDConfig { h: 1e-3, scheme: Scheme::Richardson }
    }
}

impl FDConfig {
    pub fn new(h: f64, scheme: Scheme) -> Result<Self> {
        if !(h > 0.0 && h.is_finite()) {
            return Err(Error::Parameter(format!("step h = {h} must be positive")));
        }
        Ok(FDConfig { h, scheme })
    }

    /// Step used by the fourth-order operators.
    pub fn fourth_order() -> Self {
        FDConfig { h: 1e-2, scheme: Scheme::Central2 }
    }

    /// Same stencil with step `h/2`.
    pub fn halved(self) -> Self {
        FDConfig { h: self.h / 2.0, ..self }
    }
}

/// Field on the `y₀`-independent domain `R^{2n+1}`.
pub trait Field: Sync {
    fn eval(&self, p: &Point) -> Result<Mv>;
}

impl<F> Field for F
where
    F: Fn(&Point) -> Result<Mv> + Sync,
{
    fn eval(&self, p: &Point) -> Result<Mv> {
        self(p)
    }
}

/// Field on the full domain `R^{2n+2}`, evaluated at `(z₀, x)`.
pub trait FullField: Sync {
    fn eval_full(&self, z0: Complex64, x: &[f64]) -> Result<Mv>;
}

impl<F> FullField for F
where
    F: Fn(Complex64, &[f64]) -> Result<Mv> + Sync,
{
    fn eval_full(&self, z0: Complex64, x: &[f64]) -> Result<Mv> {
        self(z0, x)
    }
}

/// Derivative of `g` at `t = 0`.
pub fn fd_derivative(g: impl Fn(f64) -> Result<Mv>, cfg: &FDConfig) -> Result<Mv> {
    let c2 = |h: f64| -> Result<Mv> { Ok((g(h)? - g(-h)?).scale_re(0.5 / h)) };
    let d = match cfg.scheme {
        Scheme::Central2 => c2(cfg.h)?,
        Scheme::Central4 => {
            let h = cfg.h;
            let s = &(&g(h)? - &g(-h)?).scale_re(8.0) - &(&g(2.0 * h)? - &g(-2.0 * h)?);
            s.scale_re(1.0 / (12.0 * h))
        }
        Scheme::Richardson => {
            let coarse = c2(cfg.h)?;
            let fine = c2(cfg.h / 2.0)?;
            (&fine.scale_re(4.0) - &coarse).scale_re(1.0 / 3.0)
        }
    };
    if !d.is_finite() {
        return Err(Error::NonFinite("finite-difference derivative".into()));
    }
    Ok(d)
}

/// `∂f/∂y_k` with `y = (x₀, x_1, …, x_{2n})`.
pub fn partial(f: &(impl Field + ?Sized), p: &Point, k: usize, cfg: &FDConfig) -> Result<Mv> {
    let n2 = p.x.len();
    if k > n2 {
        return Err(Error::OutOfRange(format!("coordinate {k} in R^{}", n2 + 1)));
    }
    fd_derivative(
        |t| {
            let mut q = p.clone();
            if k == 0 {
                q.x0 += t;
            } else {
                q.x[k - 1] += t;
            }
            f.eval(&q)
        },
        cfg,
    )
}

/// First-order jets: `∂_{z₀}f`, `∂_{z̄₀}f`, `∂_{z_j}f`, `∂_{z̄_j}f` (`j = 1..n`).
#[derive(Clone, Debug, PartialEq)]
pub struct Jets<T: Coeff = Complex64> {
    pub dz0: Multivector<T>,
    pub dzb0: Multivector<T>,
    pub dz: Vec<Multivector<T>>,
    pub dzb: Vec<Multivector<T>>,
}

impl<T: Coeff> Jets<T> {
    pub fn n(&self) -> usize {
        self.dz.len()
    }

    /// Applies a linear map to every jet component.
    pub fn map(&self, f: impl Fn(&Multivector<T>) -> Multivector<T>) -> Jets<T> {
        Jets {
            dz0: f(&self.dz0),
            dzb0: f(&self.dzb0),
            dz: self.dz.iter().map(&f).collect(),
            dzb: self.dzb.iter().map(&f).collect(),
        }
    }

    fn combine(&self, other: &Jets<T>, f: impl Fn(&Multivector<T>, &Multivector<T>) -> Multivector<T>) -> Jets<T> {
        Jets {
            dz0: f(&self.dz0, &other.dz0),
            dzb0: f(&self.dzb0, &other.dzb0),
            dz: self.dz.iter().zip(&other.dz).map(|(a, b)| f(a, b)).collect(),
            dzb: self.dzb.iter().zip(&other.dzb).map(|(a, b)| f(a, b)).collect(),
        }
    }
}

/// FD jets of a `y₀`-independent field: `∂_{z₀} = ∂_{z̄₀} = ½∂_{x₀}`.
pub fn jets(f: &(impl Field + ?Sized), p: &Point, cfg: &FDConfig) -> Result<Jets> {
    let n = p.n();
    let dx0 = partial(f, p, 0, cfg)?.scale_re(0.5);
    let mut dz = Vec::with_capacity(n);
    let mut dzb = Vec::with_capacity(n);
    let i = Complex64::new(0.0, 1.0);
    for j in 1..=n {
        let dxj = partial(f, p, j, cfg)?;
        let dyj = partial(f, p, n + j, cfg)?;
        let idy = &dyj * i;
        dz.push((&dxj - &idy).scale_re(0.5));
        dzb.push((&dxj + &idy).scale_re(0.5));
    }
    Ok(Jets { dz0: dx0.clone(), dzb0: dx0, dz, dzb })
}

/// FD jets of a full field at `(z₀, x)`.
pub fn jets_full(f: &(impl FullField + ?Sized), z0: Complex64, x: &[f64], cfg: &FDConfig) -> Result<Jets> {
    if !x.len().is_multiple_of(2) {
        return Err(Error::InvalidDimension(format!("odd spatial dimension {}", x.len())));
    }
    let n = x.len() / 2;
    let i = Complex64::new(0.0, 1.0);
    let along0 = |dir: Complex64| fd_derivative(|t| f.eval_full(z0 + dir * t, x), cfg);
    let dx0 = along0(Complex64::new(1.0, 0.0))?;
    let dy0 = along0(i)?;
    let along = |k: usize| {
        fd_derivative(
            |t| {
                let mut y = x.to_vec();
                y[k] += t;
                f.eval_full(z0, &y)
            },
            cfg,
        )
    };
    let mut dz = Vec::with_capacity(n);
    let mut dzb = Vec::with_capacity(n);
    for j in 0..n {
        let dxj = along(j)?;
        let idy = &along(n + j)? * i;
        dz.push((&dxj - &idy).scale_re(0.5));
        dzb.push((&dxj + &idy).scale_re(0.5));
    }
    let idy0 = &dy0 * i;
    Ok(Jets { dz0: (&dx0 - &idy0).scale_re(0.5), dzb0: (&dx0 + &idy0).scale_re(0.5), dz, dzb })
}

/// `𝔻f` from jets, derivatives acting with coefficients on the left.
pub fn d_left_from_jets<T: Coeff>(frame: &WittFrame<T>, j: &Jets<T>) -> Multivector<T> {
    let mut acc = &(&frame.f[0] * &j.dzb0) + &(&frame.fdag[0] * &j.dz0);
    for k in 0..j.n() {
        acc = &acc + &(&(&frame.p0 * &frame.f[k + 1]) * &j.dzb[k]);
        acc = &acc + &(&(&frame.q0 * &frame.fdag[k + 1]) * &j.dz[k]);
    }
    acc
}

/// `f𝔻` from jets, coefficients multiplying from the right.
pub fn d_right_from_jets<T: Coeff>(frame: &WittFrame<T>, j: &Jets<T>) -> Multivector<T> {
    let mut acc = &(&j.dzb0 * &frame.f[0]) + &(&j.dz0 * &frame.fdag[0]);
    for k in 0..j.n() {
        acc = &acc + &(&j.dzb[k] * &(&frame.p0 * &frame.f[k + 1]));
        acc = &acc + &(&j.dz[k] * &(&frame.q0 * &frame.fdag[k + 1]));
    }
    acc
}

/// `∂_z f = Σ f_j† ∂_{z_j} f`.
pub fn dirac_z_from_jets<T: Coeff>(frame: &WittFrame<T>, j: &Jets<T>) -> Multivector<T> {
    (0..j.n()).fold(Multivector::zero(frame.dim()), |acc, k| &acc + &(&frame.fdag[k + 1] * &j.dz[k]))
}

/// `∂_{z†} f = Σ f_j ∂_{z̄_j} f`.
pub fn dirac_zdag_from_jets<T: Coeff>(frame: &WittFrame<T>, j: &Jets<T>) -> Multivector<T> {
    (0..j.n()).fold(Multivector::zero(frame.dim()), |acc, k| &acc + &(&frame.f[k + 1] * &j.dzb[k]))
}

fn frame_for(p: &Point) -> WittFrame {
    WittFrame::new(p.n())
}

/// FD estimate of `𝔻f(p)` in the `y₀`-independent mode.
pub fn apply_d_left(f: &(impl Field + ?Sized), p: &Point, cfg: &FDConfig) -> Result<Mv> {
    Ok(d_left_from_jets(&frame_for(p), &jets(f, p, cfg)?))
}

/// FD estimate of `f𝔻(p)` in the `y₀`-independent mode.
pub fn apply_d_right(f: &(impl Field + ?Sized), p: &Point, cfg: &FDConfig) -> Result<Mv> {
    Ok(d_right_from_jets(&frame_for(p), &jets(f, p, cfg)?))
}

/// FD estimate of `𝔻f` for a field on `R^{2n+2}`.
pub fn apply_d_left_full(f: &(impl FullField + ?Sized), z0: Complex64, x: &[f64], cfg: &FDConfig) -> Result<Mv> {
    let j = jets_full(f, z0, x, cfg)?;
    Ok(d_left_from_jets(&WittFrame::new(j.n()), &j))
}

/// FD estimate of `f𝔻` for a field on `R^{2n+2}`.
pub fn apply_d_right_full(f: &(impl FullField + ?Sized), z0: Complex64, x: &[f64], cfg: &FDConfig) -> Result<Mv> {
    let j = jets_full(f, z0, x, cfg)?;
    Ok(d_right_from_jets(&WittFrame::new(j.n()), &j))
}

pub fn apply_dirac_z(f: &(impl Field + ?Sized), p: &Point, cfg: &FDConfig) -> Result<Mv> {
    Ok(dirac_z_from_jets(&frame_for(p), &jets(f, p, cfg)?))
}

pub fn apply_dirac_zdag(f: &(impl Field + ?Sized), p: &Point, cfg: &FDConfig) -> Result<Mv> {
    Ok(dirac_zdag_from_jets(&frame_for(p), &jets(f, p, cfg)?))
}

/// FD estimate of `Δ_{2n} f` (second central differences in `x_1..x_{2n}`).
pub fn laplacian_x(f: &(impl Field + ?Sized), p: &Point, h: f64) -> Result<Mv> {
    let dim = p.n() * 2;
    let f0 = f.eval(p)?;
    let mut acc = Mv::zero(f0.dim());
    for k in 0..dim {
        let shifted = |t: f64| {
            let mut q = p.clone();
            q.x[k] += t;
            f.eval(&q)
        };
        let second = &(&shifted(h)? + &shifted(-h)?) - &f0.scale_re(2.0);
        acc = &acc + &second.scale_re(1.0 / (h * h));
    }
    Ok(acc)
}

/// Blocks `A, B, C, D` of `v = A + f₀B + f₀†C + f₀†f₀D`, each free of `e₀`
/// and `e_{n+1}`.
#[derive(Clone, Debug, PartialEq)]
pub struct AbcdParts<T: Coeff = Complex64> {
    pub a: Multivector<T>,
    pub b: Multivector<T>,
    pub c: Multivector<T>,
    pub d: Multivector<T>,
}

/// Exact change of basis using `e₀ = f₀ - f₀†`, `e_{n+1} = i(f₀ + f₀†)`.
pub fn decompose_abcd<T: Coeff>(v: &Multivector<T>) -> Result<AbcdParts<T>> {
    let n = v
        .n_pairs()
        .ok_or_else(|| Error::InvalidDimension(format!("{} generators is not of the form 2n+2", v.dim())))?;
    let dim = v.dim();
    let b0 = 1u32;
    let b1 = 1u32 << (n + 1);
    let i = T::imag_unit();
    let mut a = Vec::new();
    let mut b = Vec::new();
    let mut c = Vec::new();
    let mut d = Vec::new();
    for (mask, coef) in v.terms() {
        let front = mask.0 & (b0 | b1);
        let rest = BladeMask(mask.0 & !(b0 | b1));
        // e_mask = s · front · e_rest
        let s = blade_sign(front, rest.0);
        let coef = if s < 0 { -coef.clone() } else { coef.clone() };
        match (front & b0 != 0, front & b1 != 0) {
            (false, false) => a.push((rest, coef)),
            (true, false) => {
                b.push((rest, coef.clone()));
                c.push((rest, -coef));
            }
            (false, true) => {
                let ic = i.clone() * coef;
                b.push((rest, ic.clone()));
                c.push((rest, ic));
            }
            (true, true) => {
                // e₀e_{n+1} = i(f₀f₀† - f₀†f₀) = i(1 - 2f₀†f₀)
                let ic = i.clone() * coef;
                a.push((rest, ic.clone()));
                d.push((rest, -(ic.clone() + ic)));
            }
        }
    }
    Ok(AbcdParts {
        a: Multivector::from_terms(dim, a)?,
        b: Multivector::from_terms(dim, b)?,
        c: Multivector::from_terms(dim, c)?,
        d: Multivector::from_terms(dim, d)?,
    })
}

/// `A + f₀B + f₀†C + f₀†f₀D`.
pub fn recompose<T: Coeff>(parts: &AbcdParts<T>, frame: &WittFrame<T>) -> Multivector<T> {
    &(&(&parts.a + &(&frame.f[0] * &parts.b)) + &(&frame.fdag[0] * &parts.c)) + &(&frame.q0 * &parts.d)
}

/// Residuals of the four equations
/// `∂_{z₀}A = ∂_zC`, `∂_{z₀}B = -∂_z(A+D)`, `∂_{z̄₀}(A+D) = ∂_{z†}B`,
/// `∂_{z†}A = -∂_{z̄₀}C`, returned as left-minus-right, from the jets of `f`.
pub fn four_equation_residuals<T: Coeff>(frame: &WittFrame<T>, j: &Jets<T>) -> Result<[Multivector<T>; 4]> {
    let split = |m: &Multivector<T>| decompose_abcd(m);
    let dz0 = split(&j.dz0)?;
    let dzb0 = split(&j.dzb0)?;
    let dz = j.dz.iter().map(split).collect::<Result<Vec<_>>>()?;
    let dzb = j.dzb.iter().map(split).collect::<Result<Vec<_>>>()?;
    let pick = |sel: &dyn Fn(&AbcdParts<T>) -> Multivector<T>| Jets {
        dz0: sel(&dz0),
        dzb0: sel(&dzb0),
        dz: dz.iter().map(sel).collect(),
        dzb: dzb.iter().map(sel).collect(),
    };
    let ja = pick(&|p| p.a.clone());
    let jb = pick(&|p| p.b.clone());
    let jc = pick(&|p| p.c.clone());
    let jd = pick(&|p| p.d.clone());
    let jad = ja.combine(&jd, |x, y| x + y);
    Ok([
        &ja.dz0 - &dirac_z_from_jets(frame, &jc),
        &jb.dz0 + &dirac_z_from_jets(frame, &jad),
        &jad.dzb0 - &dirac_zdag_from_jets(frame, &jb),
        &dirac_zdag_from_jets(frame, &ja) + &jc.dzb0,
    ])
}

/// `f₀†R₁ + f₀†f₀R₂ + f₀R₃ + f₀f₀†R₄`, which equals `𝔻f`.
pub fn recombine_four<T: Coeff>(frame: &WittFrame<T>, r: &[Multivector<T>; 4]) -> Multivector<T> {
    &(&(&(&frame.fdag[0] * &r[0]) + &(&frame.q0 * &r[1])) + &(&frame.f[0] * &r[2])) + &(&frame.p0 * &r[3])
}

/// Comparison of the four-equation formulation with the direct `𝔻f`.
#[derive(Clone, Debug, PartialEq)]
pub struct SystemEquivalence {
    /// `|recombined four-equation residual - 𝔻f|`.
    pub consistency: f64,
    /// `max_k |R_k|` over the four equations.
    pub max_equation: f64,
    /// `|𝔻f|`.
    pub direct: f64,
}

pub fn system_equivalence_residual(f: &(impl Field + ?Sized), p: &Point, cfg: &FDConfig) -> Result<SystemEquivalence> {
    let frame = frame_for(p);
    let j = jets(f, p, cfg)?;
    let direct = d_left_from_jets(&frame, &j);
    let r = four_equation_residuals(&frame, &j)?;
    let recombined = recombine_four(&frame, &r);
    Ok(SystemEquivalence {
        consistency: recombined.distance(&direct)?,
        max_equation: r.iter().map(|m| m.norm()).fold(0.0, f64::max),
        direct: direct.norm(),
    })
}

/// FD estimate of `Δ₂(Δ₂ + Δ_{2n})f` with `Δ₂ = ∂²_{x₀}` (`y₀`-independent
/// mode), using nested second differences with step `cfg.h`.
pub fn biharmonic_residual(f: &(impl Field + ?Sized), p: &Point, cfg: &FDConfig) -> Result<f64> {
    Ok(biharmonic(f, p, cfg.h)?.norm())
}

/// The multivector `Δ₂(Δ₂ + Δ_{2n})f(p)` behind [`biharmonic_residual`].
pub fn biharmonic(f: &(impl Field + ?Sized), p: &Point, h: f64) -> Result<Mv> {
    let at = |s0: f64, k: Option<usize>, sk: f64| {
        let mut q = p.clone();
        q.x0 += s0;
        if let Some(k) = k {
            q.x[k] += sk;
        }
        f.eval(&q)
    };
    let h4 = h.powi(4);
    // ∂⁴_{x₀}: 1, -4, 6, -4, 1
    let w5 = [1.0, -4.0, 6.0, -4.0, 1.0];
    let mut acc = Mv::zero(f.eval(p)?.dim());
    for (i, w) in w5.iter().enumerate() {
        acc = &acc + &at((i as f64 - 2.0) * h, None, 0.0)?.scale_re(w / h4);
    }
    // ∂²_{x₀}∂²_{x_k}: tensor of 1, -2, 1
    let w3 = [1.0, -2.0, 1.0];
    for k in 0..p.x.len() {
        for (i, wi) in w3.iter().enumerate() {
            for (j, wj) in w3.iter().enumerate() {
                let v = at((i as f64 - 1.0) * h, Some(k), (j as f64 - 1.0) * h)?;
                acc = &acc + &v.scale_re(wi * wj / h4);
            }
        }
    }
    if !acc.is_finite() {
        return Err(Error::NonFinite("fourth-order stencil".into()));
    }
    Ok(acc)
}

/// Observed convergence order `log2(r(h) / r(h/2))` of a residual function.
pub fn observed_order(residual: impl Fn(f64) -> Result<f64>, h: f64) -> Result<f64> {
    let coarse = residual(h)?;
    let fine = residual(h / 2.0)?;
    if !(fine > 0.0) || !coarse.is_finite() {
        return Err(Error::NonFinite(format!("convergence order from residuals {coarse:e}, {fine:e}")));
    }
    Ok((coarse / fine).log2())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::clifford::{hermitian_split, ExactComplex, ExactMv};

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    #[test]
    fn constant_field_has_zero_derivatives() {
        let n = 2;
        let k = Mv::witt(n, 1, false).unwrap();
        let f = |_: &Point| Ok(k.clone());
        let p = Point::new(0.2, vec![0.1, -0.4, 0.3, 0.7]).unwrap();
        let cfg = FDConfig::default();
        assert!(apply_d_left(&f, &p, &cfg).unwrap().is_zero());
        assert!(apply_d_right(&f, &p, &cfg).unwrap().is_zero());
        assert_eq!(biharmonic_residual(&f, &p, &FDConfig::fourth_order()).unwrap(), 0.0);
    }

    #[test]
    fn x0_field_gives_half_f0_plus_f0dag() {
        let n = 1;
        let f = |p: &Point| Ok(Mv::scalar(4, c(p.x0)));
        let p = Point::new(0.3, vec![0.2, 0.5]).unwrap();
        let d = apply_d_left(&f, &p, &FDConfig::default()).unwrap();
        let expect = (&Mv::witt(n, 0, false).unwrap() + &Mv::witt(n, 0, true).unwrap()).scale_re(0.5);
        assert!(d.distance(&expect).unwrap() < 1e-12);
    }

    #[test]
    fn left_and_right_operators_differ() {
        let n = 1;
        let f1 = Mv::witt(n, 1, false).unwrap();
        let f = |p: &Point| Ok(f1.scale_re(p.x0));
        let p = Point::new(0.3, vec![0.2, 0.5]).unwrap();
        let cfg = FDConfig::default();
        let left = apply_d_left(&f, &p, &cfg).unwrap();
        let right = apply_d_right(&f, &p, &cfg).unwrap();
        let e0 = (&Mv::witt(n, 0, false).unwrap() + &Mv::witt(n, 0, true).unwrap()).scale_re(0.5);
        assert!(left.distance(&(&e0 * &f1)).unwrap() < 1e-12);
        assert!(right.distance(&(&f1 * &e0)).unwrap() < 1e-12);
        assert!((&left + &right).norm() < 1e-12 && left.norm() > 0.1);
    }

    #[test]
    fn dirac_of_linear_fields() {
        let n = 2;
        let dim = 6;
        let z1 = |p: &Point| Ok(Mv::scalar(dim, Complex64::new(p.x[0], p.x[2])));
        let z1bar = |p: &Point| Ok(Mv::scalar(dim, Complex64::new(p.x[0], -p.x[2])));
        let p = Point::new(0.0, vec![0.3, 0.1, -0.2, 0.4]).unwrap();
        let cfg = FDConfig::default();
        let a = apply_dirac_z(&z1, &p, &cfg).unwrap();
        assert!(a.distance(&Mv::witt(n, 1, true).unwrap()).unwrap() < 1e-12);
        let b = apply_dirac_zdag(&z1bar, &p, &cfg).unwrap();
        assert!(b.distance(&Mv::witt(n, 1, false).unwrap()).unwrap() < 1e-12);
    }

    #[test]
    fn laplacian_factorization_on_radius_squared() {
        let n = 2;
        let dim = 6;
        let f = |p: &Point| Ok(Mv::scalar(dim, c(p.x.iter().map(|v| v * v).sum())));
        let p = Point::new(0.1, vec![0.3, -0.1, 0.2, 0.5]).unwrap();
        let cfg = FDConfig::default();
        let lap = laplacian_x(&f, &p, 1e-3).unwrap();
        let d_zdag = |q: &Point| apply_dirac_zdag(&f, q, &cfg);
        let d_z = |q: &Point| apply_dirac_z(&f, q, &cfg);
        let a = apply_dirac_z(&d_zdag, &p, &cfg).unwrap();
        let b = apply_dirac_zdag(&d_z, &p, &cfg).unwrap();
        let fact = (&a + &b).scale_re(4.0);
        assert!(lap.distance(&Mv::scalar(dim, c(4.0 * n as f64))).unwrap() < 1e-6);
        assert!(fact.distance(&lap).unwrap() < 1e-6);
    }

    #[test]
    fn abcd_examples() {
        let n = 1;
        let frame = WittFrame::<ExactComplex>::new(n);
        let one = ExactMv::one(4);
        let parts = decompose_abcd(&one).unwrap();
        assert_eq!(parts.a, one);
        assert!(parts.b.is_zero() && parts.c.is_zero() && parts.d.is_zero());
        let parts = decompose_abcd(&frame.f[0]).unwrap();
        assert_eq!(parts.b, one);
        assert!(parts.a.is_zero() && parts.c.is_zero() && parts.d.is_zero());
        let parts = decompose_abcd(&frame.q0).unwrap();
        assert_eq!(parts.d, one);
        assert!(parts.a.is_zero() && parts.b.is_zero() && parts.c.is_zero());
    }

    #[test]
    fn abcd_blocks_are_free_of_distinguished_pair() {
        let n = 2;
        let dim = 6;
        let terms: Vec<(BladeMask, ExactComplex)> = (0..(1u32 << dim))
            .map(|m| (BladeMask(m), ExactComplex::new((((m * 7) % 5) as i64 - 2).into(), (((m * 3) % 4) as i64 - 1).into())))
            .collect();
        let v = ExactMv::from_terms(dim, terms).unwrap();
        let parts = decompose_abcd(&v).unwrap();
        for blk in [&parts.a, &parts.b, &parts.c, &parts.d] {
            assert!(blk.free_of(0) && blk.free_of(n as u32 + 1));
        }
        assert_eq!(recompose(&parts, &WittFrame::new(n)), v);
    }

    #[test]
    fn four_equation_system_matches_direct_operator_exactly() {
        // arbitrary exact jets: the identity is purely algebraic
        let n = 2;
        let dim = 6;
        let frame = WittFrame::<ExactComplex>::new(n);
        let mk = |seed: u32| {
            let terms: Vec<(BladeMask, ExactComplex)> = (0..(1u32 << dim))
                .filter(|m| (m.wrapping_mul(2654435761) ^ seed).is_multiple_of(3))
                .map(|m| {
                    let a = ((m * 31 + seed * 17) % 7) as i64 - 3;
                    let b = ((m * 11 + seed * 5) % 5) as i64 - 2;
                    (BladeMask(m), ExactComplex::new(a.into(), b.into()))
                })
                .collect();
            ExactMv::from_terms(dim, terms).unwrap()
        };
        let j = Jets { dz0: mk(1), dzb0: mk(2), dz: vec![mk(3), mk(4)], dzb: vec![mk(5), mk(6)] };
        let r = four_equation_residuals(&frame, &j).unwrap();
        assert_eq!(recombine_four(&frame, &r), d_left_from_jets(&frame, &j));
    }

    #[test]
    fn fourth_order_of_x0_to_the_fourth() {
        let f = |p: &Point| Ok(Mv::scalar(4, c(p.x0.powi(4))));
        let p = Point::new(0.4, vec![0.1, 0.2]).unwrap();
        let r = biharmonic_residual(&f, &p, &FDConfig::fourth_order()).unwrap();
        assert!((r - 24.0).abs() < 1e-6);
        let g = |p: &Point| Ok(Mv::scalar(4, c(p.x0 * p.x0)));
        assert!(biharmonic_residual(&g, &p, &FDConfig::fourth_order()).unwrap() < 1e-6);
    }

    #[test]
    fn schemes_converge_at_expected_rates() {
        let f = |p: &Point| Ok(Mv::scalar(4, c((1.3 * p.x0).sin())));
        let p = Point::new(0.4, vec![0.0, 0.0]).unwrap();
        let err = |scheme: Scheme, h: f64| -> Result<f64> {
            let d = partial(&f, &p, 0, &FDConfig::new(h, scheme)?)?;
            Ok((d.scalar_part().re - 1.3 * (1.3f64 * 0.4).cos()).abs())
        };
        let o2 = observed_order(|h| err(Scheme::Central2, h), 0.1).unwrap();
        let o4 = observed_order(|h| err(Scheme::Central4, h), 0.1).unwrap();
        let or = observed_order(|h| err(Scheme::Richardson, h), 0.1).unwrap();
        assert!((o2 - 2.0).abs() < 0.1, "{o2}");
        assert!((o4 - 4.0).abs() < 0.2, "{o4}");
        assert!((or - 4.0).abs() < 0.2, "{or}");
    }

    #[test]
    fn hermitian_split_is_consistent_with_jets() {
        // ∂_z of the vector field z - z† equals Σ f_j† f_j ... scalar-free check:
        let n = 1;
        let f = |p: &Point| {
            let (z, _) = hermitian_split(p);
            Ok(z)
        };
        let p = Point::new(0.0, vec![0.3, 0.2]).unwrap();
        let d = apply_dirac_z(&f, &p, &FDConfig::default()).unwrap();
        let frame = WittFrame::<Complex64>::new(n);
        let expect = &frame.fdag[1] * &frame.f[1];
        assert!(d.distance(&expect).unwrap() < 1e-12);
    }
}
