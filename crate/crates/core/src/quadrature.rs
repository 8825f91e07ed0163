//! Quadrature rules: Gauss–Legendre (fixed and panelled), adaptive
//! Gauss–Kronrod, product rules on spheres `S^{p-1}`, radial rules for
//! exponentially decaying integrands, the plane-wave integrals over `R^{2n}`,
//! a Funk–Hecke harness and surface/volume rules for balls and cylinders.

use std::f64::consts::PI;

use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand::Rng;
use rand_distr::StandardNormal;

use crate::clifford::{hermitian_dim, Mv, Point, WittFrame};
use crate::error::{Error, Result};
use crate::exec::{pairwise_sum_c64, pairwise_sum_f64, pairwise_sum_mv, pairwise_sum_vec, Exec};
use crate::special::{gegenbauer, sigma};

/// Upper bound on product-rule node counts before Monte Carlo is required.
pub const MAX_PRODUCT_NODES: usize = 4_000_000;

/// Gauss–Legendre nodes and weights on `[-1, 1]` (Newton iteration on the
/// Legendre recurrence).
pub fn gauss_legendre(k: usize) -> (Vec<f64>, Vec<f64>) {
    if k == 1 {
        return (vec![0.0], vec![2.0]);
    }
    let mut x = vec![0.0; k];
    let mut w = vec![0.0; k];
    for i in 0..k.div_ceil(2) {
        let mut t = (PI * (i as f64 + 0.75) / (k as f64 + 0.5)).cos();
        let mut dp = 1.0;
        for _ in 0..100 {
            let (mut p0, mut p1) = (1.0, t);
            for j in 2..=k {
                let jf = j as f64;
                let p2 = ((2.0 * jf - 1.0) * t * p1 - (jf - 1.0) * p0) / jf;
                p0 = p1;
                p1 = p2;
            }
            dp = k as f64 * (t * p1 - p0) / (t * t - 1.0);
            let dt = p1 / dp;
            t -= dt;
            if dt.abs() < 1e-16 {
                break;
            }
        }
        x[i] = -t;
        x[k - 1 - i] = t;
        let wi = 2.0 / ((1.0 - t * t) * dp * dp);
        w[i] = wi;
        w[k - 1 - i] = wi;
    }
    (x, w)
}

/// Gauss–Legendre rule mapped to `[a, b]`.
pub fn gauss_legendre_interval(k: usize, a: f64, b: f64) -> (Vec<f64>, Vec<f64>) {
    let (x, w) = gauss_legendre(k);
    let half = 0.5 * (b - a);
    let mid = 0.5 * (a + b);
    (x.iter().map(|t| mid + half * t).collect(), w.iter().map(|v| v * half).collect())
}

/// Composite Gauss–Legendre rule over consecutive panels `edges[i]..edges[i+1]`.
pub fn gauss_legendre_panels(edges: &[f64], k: usize) -> (Vec<f64>, Vec<f64>) {
    let mut xs = Vec::with_capacity(k * edges.len());
    let mut ws = Vec::with_capacity(k * edges.len());
    for pair in edges.windows(2) {
        let (x, w) = gauss_legendre_interval(k, pair[0], pair[1]);
        xs.extend(x);
        ws.extend(w);
    }
    (xs, ws)
}

const GK_X: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_4,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_5,
    0.0,
];
const GK_WK: [f64; 8] = [
    0.022_935_322_010_529_22,
    0.063_092_092_629_978_55,
    0.104_790_010_322_250_2,
    0.140_653_259_715_525_9,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_4,
    0.204_432_940_075_298_9,
    0.209_482_141_084_727_8,
];
const GK_WG: [f64; 4] = [
    0.129_484_966_168_869_7,
    0.279_705_391_489_276_7,
    0.381_830_050_505_118_9,
    0.417_959_183_673_469_4,
];

/// Result of an adaptive integration.
#[derive(Clone, Debug, PartialEq)]
pub struct Adaptive<T> {
    pub value: T,
    /// Sum of per-interval `|Kronrod - Gauss|` estimates.
    pub error_estimate: f64,
    pub intervals: usize,
}

fn gk15_vec(f: &impl Fn(f64) -> Vec<Complex64>, a: f64, b: f64) -> (Vec<Complex64>, f64) {
    let half = 0.5 * (b - a);
    let mid = 0.5 * (a + b);
    let center = f(mid);
    let len = center.len();
    let mut kron: Vec<Complex64> = center.iter().map(|c| c * GK_WK[7]).collect();
    let mut gauss: Vec<Complex64> = center.iter().map(|c| c * GK_WG[3]).collect();
    for (i, &x) in GK_X[..7].iter().enumerate() {
        let lo = f(mid - half * x);
        let hi = f(mid + half * x);
        for d in 0..len {
            let s = lo[d] + hi[d];
            kron[d] += s * GK_WK[i];
            if i % 2 == 1 {
                gauss[d] += s * GK_WG[i / 2];
            }
        }
    }
    let mut err = 0.0f64;
    for d in 0..len {
        kron[d] *= half;
        gauss[d] *= half;
        err = err.max((kron[d] - gauss[d]).norm());
    }
    (kron, err)
}

/// Adaptive Gauss–Kronrod (7/15) integration of a vector-valued function on
/// `[a, b]` to `max(abs_tol, rel_tol·|I|)` in the max-norm.
pub fn adaptive_vec(
    f: impl Fn(f64) -> Vec<Complex64>,
    a: f64,
    b: f64,
    abs_tol: f64,
    rel_tol: f64,
) -> Result<Adaptive<Vec<Complex64>>> {
    if !(a.is_finite() && b.is_finite()) {
        return Err(Error::Quadrature("adaptive rule needs a finite interval".into()));
    }
    const MAX_INTERVALS: usize = 20_000;
    let (v0, e0) = gk15_vec(&f, a, b);
    let mut parts = vec![(a, b, v0, e0)];
    loop {
        let len = parts[0].2.len();
        let total: Vec<Complex64> = pairwise_sum_vec(&parts.iter().map(|p| p.2.clone()).collect::<Vec<_>>(), len);
        let err = pairwise_sum_f64(&parts.iter().map(|p| p.3).collect::<Vec<_>>());
        let scale = total.iter().map(|c| c.norm()).fold(0.0, f64::max);
        let tol = abs_tol.max(rel_tol * scale);
        if total.iter().any(|c| !c.re.is_finite() || !c.im.is_finite()) {
            return Err(Error::NonFinite("adaptive quadrature integrand".into()));
        }
        if err <= tol {
            return Ok(Adaptive { value: total, error_estimate: err, intervals: parts.len() });
        }
        if parts.len() >= MAX_INTERVALS {
            return Err(Error::Quadrature(format!(
                "adaptive rule did not converge: error {err:e} > tolerance {tol:e}"
            )));
        }
        // bisect the worst interval; ties broken by position for determinism
        let (worst, _) = parts
            .iter()
            .enumerate()
            .fold((0, -1.0), |acc, (i, p)| if p.3 > acc.1 { (i, p.3) } else { acc });
        let (lo, hi, _, _) = parts.remove(worst);
        let mid = 0.5 * (lo + hi);
        let (vl, el) = gk15_vec(&f, lo, mid);
        let (vr, er) = gk15_vec(&f, mid, hi);
        parts.insert(worst, (mid, hi, vr, er));
        parts.insert(worst, (lo, mid, vl, el));
    }
}

/// Scalar complex version of [`adaptive_vec`].
pub fn adaptive_complex(
    f: impl Fn(f64) -> Complex64,
    a: f64,
    b: f64,
    abs_tol: f64,
    rel_tol: f64,
) -> Result<Adaptive<Complex64>> {
    let r = adaptive_vec(|t| vec![f(t)], a, b, abs_tol, rel_tol)?;
    Ok(Adaptive { value: r.value[0], error_estimate: r.error_estimate, intervals: r.intervals })
}

/// Real version of [`adaptive_vec`].
pub fn adaptive_real(
    f: impl Fn(f64) -> f64,
    a: f64,
    b: f64,
    abs_tol: f64,
    rel_tol: f64,
) -> Result<Adaptive<f64>> {
    let r = adaptive_complex(|t| Complex64::new(f(t), 0.0), a, b, abs_tol, rel_tol)?;
    Ok(Adaptive { value: r.value.re, error_estimate: r.error_estimate, intervals: r.intervals })
}

/// `∫_L^∞ ρ^q e^{-cρ} dρ` for integer `q >= 0`, `c > 0` (exact upper
/// incomplete Gamma); bounds the radial truncation error of integrands
/// dominated by `ρ^q e^{-cρ}`.
pub fn exponential_tail(q: u32, c: f64, l: f64) -> f64 {
    // e^{-cL} Σ_{k=0}^{q} q!/k! L^k / c^{q-k+1}
    let mut term = 1.0 / c.powi(q as i32 + 1); // k = 0 term times q!/0! is accumulated below
    let mut acc = 0.0;
    let mut fact_ratio = (1..=q).map(|v| v as f64).product::<f64>(); // q!/k! at k = 0
    for k in 0..=q {
        acc += fact_ratio * term;
        if k < q {
            fact_ratio /= (k + 1) as f64;
            term *= l * c;
        }
    }
    acc * (-c * l).exp()
}

/// Radial rule: composite Gauss–Legendre on `[0, ρ_max]` for integrands of the
/// form `f(ρ) ρ^q e^{-cρ}`, with the analytic truncation bound.
#[derive(Clone, Debug)]
pub struct RadialRule {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
    pub rho_max: f64,
    pub power: u32,
    pub rate: f64,
}

impl RadialRule {
    /// `panels` equal panels of `per_panel` nodes on `[0, ρ_max]`.
    pub fn new(power: u32, rate: f64, rho_max: f64, panels: usize, per_panel: usize) -> Result<Self> {
        if !(rate > 0.0) || !(rho_max > 0.0) || panels == 0 || per_panel == 0 {
            return Err(Error::Parameter("radial rule needs rate, rho_max, panels > 0".into()));
        }
        let edges: Vec<f64> = (0..=panels).map(|i| rho_max * i as f64 / panels as f64).collect();
        let (nodes, weights) = gauss_legendre_panels(&edges, per_panel);
        Ok(RadialRule { nodes, weights, rho_max, power, rate })
    }

    /// Default rule for decay `e^{-x₀ρ}`: truncation at `ρ_max = 40/x₀`.
    pub fn for_decay(power: u32, x0: f64) -> Result<Self> {
        if !(x0 > 0.0) {
            return Err(Error::Domain(format!("radial decay rate x0 = {x0} must be positive")));
        }
        Self::new(power, x0, 40.0 / x0, 30, 20)
    }

    /// Bound on the omitted `∫_{ρ_max}^∞` part for integrands bounded by
    /// `sup|f| · ρ^q e^{-cρ}`.
    pub fn tail_bound(&self, sup_f: f64) -> f64 {
        sup_f * exponential_tail(self.power, self.rate, self.rho_max)
    }

    /// `Σ w_i ρ_i^q e^{-cρ_i} f(ρ_i)`.
    pub fn integrate(&self, f: impl Fn(f64) -> Complex64) -> Complex64 {
        let terms: Vec<Complex64> = self
            .nodes
            .iter()
            .zip(&self.weights)
            .map(|(&r, &w)| f(r) * (w * r.powi(self.power as i32) * (-self.rate * r).exp()))
            .collect();
        pairwise_sum_c64(&terms)
    }
}

/// Quadrature rule on the unit sphere `S^{p-1} ⊂ R^p`.
#[derive(Clone, Debug)]
pub struct SphereRule {
    pub p: usize,
    pub nodes: Vec<Vec<f64>>,
    pub weights: Vec<f64>,
    /// Polynomial degree integrated exactly, for product rules.
    pub degree: Option<u32>,
    pub monte_carlo: bool,
}

/// Node counts for a product sphere rule.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SphereSizes {
    /// Trapezoid points per azimuthal angle.
    pub angular: usize,
    /// Gauss–Legendre points per polar-type coordinate.
    pub polar: usize,
}

impl SphereSizes {
    /// Sizes exact (up to rounding) for polynomials of degree `degree`.
    pub fn for_degree(degree: u32) -> Self {
        SphereSizes { angular: degree as usize + 1, polar: degree as usize / 2 + 8 }
    }
}

impl SphereRule {
    /// Deterministic product rule of the given polynomial degree.
    pub fn product(p: usize, degree: u32) -> Result<Self> {
        let mut r = Self::product_sized(p, SphereSizes::for_degree(degree))?;
        r.degree = Some(degree);
        Ok(r)
    }

    /// Deterministic product rule with explicit node counts.
    ///
    /// Even `p = 2k`: squared moduli `|ξ_j|²` on the simplex (collapsed
    /// Gauss–Legendre) times a trapezoid rule in each phase of
    /// `ξ_j = ν_j + iν_{k+j}`. Odd `p`: Gauss–Legendre in
    /// `t = ν_0` with weight `(1-t²)^{(p-3)/2}` times the rule on `S^{p-2}`.
    pub fn product_sized(p: usize, sizes: SphereSizes) -> Result<Self> {
        if p < 2 {
            return Err(Error::InvalidDimension(format!("sphere rule in R^{p}")));
        }
        if sizes.angular == 0 || sizes.polar == 0 {
            return Err(Error::Parameter("sphere rule sizes must be positive".into()));
        }
        let (nodes, weights) = if p.is_multiple_of(2) {
            torus_orthant_rule(p / 2, sizes)?
        } else {
            let (inner_nodes, inner_w) = torus_orthant_rule((p - 1) / 2, sizes)?;
            let kt = sizes.polar + (p - 3) / 2;
            if kt * inner_nodes.len() > MAX_PRODUCT_NODES {
                return Err(Error::Quadrature(format!(
                    "product rule on S^{} too large; use the Monte Carlo rule",
                    p - 1
                )));
            }
            let (ts, wt) = gauss_legendre(kt);
            let mut nodes = Vec::with_capacity(kt * inner_nodes.len());
            let mut weights = Vec::with_capacity(kt * inner_nodes.len());
            for (&t, &w) in ts.iter().zip(&wt) {
                let s = (1.0 - t * t).sqrt();
                let wt_t = w * (1.0 - t * t).powi(((p - 3) / 2) as i32);
                for (eta, we) in inner_nodes.iter().zip(&inner_w) {
                    let mut v = Vec::with_capacity(p);
                    v.push(t);
                    v.extend(eta.iter().map(|c| s * c));
                    nodes.push(v);
                    weights.push(wt_t * we);
                }
            }
            (nodes, weights)
        };
        Ok(SphereRule { p, nodes, weights, degree: None, monte_carlo: false })
    }

    /// Monte Carlo rule: normalized Gaussian directions with equal weights
    /// `σ_p / N`.
    pub fn monte_carlo(p: usize, samples: usize, seed: u64) -> Result<Self> {
        if p < 2 || samples < 2 {
            return Err(Error::Parameter(format!("Monte Carlo rule with p = {p}, N = {samples}")));
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let w = sigma(p as u32)? / samples as f64;
        let mut nodes = Vec::with_capacity(samples);
        while nodes.len() < samples {
            let v: Vec<f64> = (0..p).map(|_| rng.sample(StandardNormal)).collect();
            let norm = v.iter().map(|c| c * c).sum::<f64>().sqrt();
            if norm > 1e-12 {
                nodes.push(v.iter().map(|c| c / norm).collect());
            }
        }
        Ok(SphereRule { p, nodes, weights: vec![w; samples], degree: None, monte_carlo: true })
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn total_weight(&self) -> f64 {
        pairwise_sum_f64(&self.weights)
    }

    /// `Σ w_i f(ν_i)`, with the Monte Carlo standard error when applicable.
    pub fn integrate(&self, exec: Exec, f: impl Fn(&[f64]) -> Complex64 + Sync + Send) -> (Complex64, Option<f64>) {
        let vals = exec.map(self.len(), |i| f(&self.nodes[i]));
        let terms: Vec<Complex64> = vals.iter().zip(&self.weights).map(|(v, w)| v * *w).collect();
        let sum = pairwise_sum_c64(&terms);
        let se = self.monte_carlo.then(|| monte_carlo_std_error(&vals, self.total_weight()));
        (sum, se)
    }
}

fn monte_carlo_std_error(vals: &[Complex64], total: f64) -> f64 {
    let n = vals.len() as f64;
    let mean = pairwise_sum_c64(vals) / n;
    let var = pairwise_sum_f64(&vals.iter().map(|v| (v - mean).norm_sqr()).collect::<Vec<_>>()) / (n - 1.0);
    total * (var / n).sqrt()
}

/// Nodes/weights on `S^{2k-1} ⊂ C^k` (layout `[Re ξ, Im ξ]`).
fn torus_orthant_rule(k: usize, sizes: SphereSizes) -> Result<(Vec<Vec<f64>>, Vec<f64>)> {
    let (moduli, mod_w) = orthant_rule(k, sizes.polar);
    let na = sizes.angular;
    let total = moduli.len() * na.pow(k as u32);
    if total > MAX_PRODUCT_NODES {
        return Err(Error::Quadrature(format!(
            "product rule on S^{} with {total} nodes too large; use the Monte Carlo rule",
            2 * k - 1
        )));
    }
    let dphi = 2.0 * PI / na as f64;
    let mut nodes = Vec::with_capacity(total);
    let mut weights = Vec::with_capacity(total);
    for (r, wr) in moduli.iter().zip(&mod_w) {
        let w_base = wr * dphi.powi(k as i32);
        for idx in 0..na.pow(k as u32) {
            let mut v = vec![0.0; 2 * k];
            let mut rem = idx;
            for j in 0..k {
                let phi = dphi * (rem % na) as f64;
                rem /= na;
                v[j] = r[j] * phi.cos();
                v[k + j] = r[j] * phi.sin();
            }
            nodes.push(v);
            weights.push(w_base);
        }
    }
    Ok((nodes, weights))
}

/// Moduli `|ξ_j|` for the rule on `S^{2k-1}`: the squares `|ξ_j|²` are
/// uniform on the standard simplex, integrated with a collapsed
/// Gauss–Legendre rule. Weights include the factor `2^{1-k}`.
fn orthant_rule(k: usize, polar: usize) -> (Vec<Vec<f64>>, Vec<f64>) {
    let (ts, ws) = simplex_rule(k, polar);
    let scale = 0.5f64.powi(k as i32 - 1);
    let moduli = ts.into_iter().map(|t| t.into_iter().map(|v| v.max(0.0).sqrt()).collect()).collect();
    (moduli, ws.into_iter().map(|w| w * scale).collect())
}

/// Points `t` with `Σ t_j = 1`, `t_j >= 0`; weights sum to `1/(k-1)!`.
fn simplex_rule(k: usize, polar: usize) -> (Vec<Vec<f64>>, Vec<f64>) {
    if k == 1 {
        return (vec![vec![1.0]], vec![1.0]);
    }
    let (inner, inner_w) = simplex_rule(k - 1, polar);
    let (us, wu) = gauss_legendre_interval(polar, 0.0, 1.0);
    let mut nodes = Vec::new();
    let mut weights = Vec::new();
    for (&u, &w) in us.iter().zip(&wu) {
        let rest = 1.0 - u;
        let jac = rest.powi(k as i32 - 2);
        for (v, wv) in inner.iter().zip(&inner_w) {
            let mut node = Vec::with_capacity(k);
            node.push(u);
            node.extend(v.iter().map(|x| rest * x));
            nodes.push(node);
            weights.push(w * jac * wv);
        }
    }
    (nodes, weights)
}

/// Exact `∫_{S^{p-1}} Π x_i^{a_i} dS`.
pub fn sphere_monomial_integral(exponents: &[u32]) -> f64 {
    if exponents.iter().any(|a| a % 2 == 1) {
        return 0.0;
    }
    let lg = |x: f64| statrs::function::gamma::ln_gamma(x);
    let total: u32 = exponents.iter().sum();
    let p = exponents.len() as f64;
    let ln = exponents.iter().map(|&a| lg((a as f64 + 1.0) / 2.0)).sum::<f64>() - lg((total as f64 + p) / 2.0);
    2.0 * ln.exp()
}

/// Both sides of the Funk–Hecke formula for one `(F, k, Y, ξ)`.
#[derive(Clone, Debug, PartialEq)]
pub struct FunkHecke {
    pub lhs: Complex64,
    pub rhs: Complex64,
    pub residual: f64,
}

/// `|∫_{S^{p-1}} F(⟨ξ,η⟩) Y_k(η) dS(η) - σ_{p-1} C_k(1)^{-1} Y_k(ξ) ∫ F C_k (1-t²)^{(p-3)/2} dt|`
/// where `C_k = C_k^{(p-2)/2}`; the left side uses `rule`, the right side an
/// adaptive rule in `t = cos θ`.
pub fn funk_hecke_residual(
    f: impl Fn(f64) -> Complex64 + Sync + Send,
    k: u32,
    y: impl Fn(&[f64]) -> f64 + Sync + Send,
    xi: &[f64],
    rule: &SphereRule,
    exec: Exec,
) -> Result<FunkHecke> {
    let p = rule.p;
    if xi.len() != p || p < 3 {
        return Err(Error::InvalidDimension(format!("Funk–Hecke needs p >= 3 and ξ in R^{p}")));
    }
    let (lhs, _) = rule.integrate(exec, |eta| {
        let t: f64 = xi.iter().zip(eta).map(|(a, b)| a * b).sum();
        f(t) * y(eta)
    });
    let lambda = (p as f64 - 2.0) / 2.0;
    let one_d = adaptive_complex(
        |th| {
            let (s, c) = th.sin_cos();
            f(c) * gegenbauer(k, lambda, c) * s.powi(p as i32 - 2)
        },
        0.0,
        PI,
        1e-15,
        1e-13,
    )?;
    let rhs = one_d.value * (sigma(p as u32 - 1)? / gegenbauer(k, lambda, 1.0) * y(xi));
    Ok(FunkHecke { lhs, rhs, residual: (lhs - rhs).norm() })
}

/// Integrand selector for the plane-wave integrals over `R^{2n}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum PlaneWaveMoment {
    /// `F = 1`
    I0,
    /// `F = w/|w|`
    I1,
    /// `F = w†/|w|`
    I2,
    /// `F = w†w/|w|²`
    I3,
    /// `F = ww†/|w|²`
    I4,
}

impl PlaneWaveMoment {
    pub const ALL: [PlaneWaveMoment; 5] = [
        PlaneWaveMoment::I0,
        PlaneWaveMoment::I1,
        PlaneWaveMoment::I2,
        PlaneWaveMoment::I3,
        PlaneWaveMoment::I4,
    ];

    pub fn name(self) -> &'static str {
        match self {
            PlaneWaveMoment::I0 => "I0",
            PlaneWaveMoment::I1 => "I1",
            PlaneWaveMoment::I2 => "I2",
            PlaneWaveMoment::I3 => "I3",
            PlaneWaveMoment::I4 => "I4",
        }
    }
}

/// Settings for [`planewave_moments`].
#[derive(Clone, Debug)]
pub struct PlaneWaveQuadrature {
    pub radial_panels: usize,
    pub radial_per_panel: usize,
    /// Truncation `ρ_max = rho_max_scale / x₀`.
    pub rho_max_scale: f64,
    pub sphere: SphereChoice,
    pub exec: Exec,
}

/// Sphere rule used for the `S^{2n-1}` factor.
#[derive(Clone, Debug)]
pub enum SphereChoice {
    Product(SphereSizes),
    MonteCarlo { samples: usize, seed: u64 },
}

impl PlaneWaveQuadrature {
    /// Deterministic defaults for `n <= 2`; Monte Carlo above.
    pub fn default_for(n: usize, mc_samples: usize, seed: u64) -> Self {
        let sphere = match n {
            1 => SphereChoice::Product(SphereSizes { angular: 256, polar: 1 }),
            2 => SphereChoice::Product(SphereSizes { angular: 96, polar: 48 }),
            _ => SphereChoice::MonteCarlo { samples: mc_samples, seed },
        };
        PlaneWaveQuadrature {
            radial_panels: 30,
            radial_per_panel: 20,
            rho_max_scale: 40.0,
            sphere,
            exec: Exec::default(),
        }
    }
}

/// Scalar moments of the plane-wave integral: with `ξ = w/|w|`,
/// `i0 = ∫ e^{…}`, `m1_j = ∫ e^{…} ξ_j`, `m2_j = ∫ e^{…} ξ̄_j`,
/// `m3_{jk} = ∫ e^{…} ξ̄_j ξ_k`, where `e^{…} = e^{iΣ(x_{n+j}u_j - x_j u_{n+j}) - x₀|w|}`.
#[derive(Clone, Debug)]
pub struct PlaneWaveMoments {
    pub n: usize,
    pub i0: Complex64,
    pub m1: Vec<Complex64>,
    pub m2: Vec<Complex64>,
    pub m3: Vec<Vec<Complex64>>,
    /// Radial truncation bound (times `σ_{2n}`), plus 3 MC standard errors
    /// when the sphere factor is Monte Carlo.
    pub error_estimate: f64,
}

impl PlaneWaveMoments {
    /// Multivector value of the selected integral.
    pub fn assemble(&self, which: PlaneWaveMoment) -> Mv {
        let frame = WittFrame::<Complex64>::new(self.n);
        let dim = hermitian_dim(self.n);
        let mut acc = Mv::zero(dim);
        match which {
            PlaneWaveMoment::I0 => acc = Mv::scalar(dim, self.i0),
            PlaneWaveMoment::I1 => {
                for j in 0..self.n {
                    acc = &acc + &(&frame.f[j + 1] * self.m1[j]);
                }
            }
            PlaneWaveMoment::I2 => {
                for j in 0..self.n {
                    acc = &acc + &(&frame.fdag[j + 1] * self.m2[j]);
                }
            }
            PlaneWaveMoment::I3 => {
                for j in 0..self.n {
                    for k in 0..self.n {
                        acc = &acc + &(&(&frame.fdag[j + 1] * &frame.f[k + 1]) * self.m3[j][k]);
                    }
                }
            }
            PlaneWaveMoment::I4 => {
                // ww† = Σ ξ_j ξ̄_k f_j f_k†, and ∫ ξ_j ξ̄_k = m3_{kj}
                for j in 0..self.n {
                    for k in 0..self.n {
                        acc = &acc + &(&(&frame.f[j + 1] * &frame.fdag[k + 1]) * self.m3[k][j]);
                    }
                }
            }
        }
        acc
    }
}

/// Direct quadrature of the plane-wave integrals at `p` (requires `x₀ > 0`),
/// by polar factorization: radial rule with decay `e^{-x₀ρ}` times a rule on
/// `S^{2n-1}`.
pub fn planewave_moments(p: &Point, q: &PlaneWaveQuadrature) -> Result<PlaneWaveMoments> {
    let n = p.n();
    if n == 0 {
        return Err(Error::InvalidDimension("plane-wave integral needs n >= 1".into()));
    }
    if !(p.x0 > 0.0) {
        return Err(Error::Domain(format!("plane-wave integral diverges for x0 = {}", p.x0)));
    }
    let radial = RadialRule::new(
        (2 * n - 1) as u32,
        p.x0,
        q.rho_max_scale / p.x0,
        q.radial_panels,
        q.radial_per_panel,
    )?;
    let rule = match &q.sphere {
        SphereChoice::Product(s) => SphereRule::product_sized(2 * n, *s)?,
        SphereChoice::MonteCarlo { samples, seed } => SphereRule::monte_carlo(2 * n, *samples, *seed)?,
    };
    let rad_w: Vec<f64> = radial
        .nodes
        .iter()
        .zip(&radial.weights)
        .map(|(&r, &w)| w * r.powi(2 * n as i32 - 1) * (-p.x0 * r).exp())
        .collect();
    // per node: radial sum S(ν) = Σ_i w_i e^{iρ_i s(ν)}, s = Σ (x_{n+j} ν_j - x_j ν_{n+j})
    let per_node = q.exec.map(rule.len(), |i| {
        let nu = &rule.nodes[i];
        let s: f64 = (0..n).map(|j| p.x[n + j] * nu[j] - p.x[j] * nu[n + j]).sum();
        let terms: Vec<Complex64> = radial
            .nodes
            .iter()
            .zip(&rad_w)
            .map(|(&r, &w)| Complex64::from_polar(w, r * s))
            .collect();
        pairwise_sum_c64(&terms) * rule.weights[i]
    });
    let xi = |i: usize, j: usize| Complex64::new(rule.nodes[i][j], rule.nodes[i][n + j]);
    let i0 = pairwise_sum_c64(&per_node);
    let m1: Vec<Complex64> = (0..n)
        .map(|j| pairwise_sum_c64(&(0..rule.len()).map(|i| per_node[i] * xi(i, j)).collect::<Vec<_>>()))
        .collect();
    let m2: Vec<Complex64> = (0..n)
        .map(|j| pairwise_sum_c64(&(0..rule.len()).map(|i| per_node[i] * xi(i, j).conj()).collect::<Vec<_>>()))
        .collect();
    let m3: Vec<Vec<Complex64>> = (0..n)
        .map(|j| {
            (0..n)
                .map(|k| {
                    pairwise_sum_c64(
                        &(0..rule.len()).map(|i| per_node[i] * xi(i, j).conj() * xi(i, k)).collect::<Vec<_>>(),
                    )
                })
                .collect()
        })
        .collect();
    let mut error_estimate = radial.tail_bound(sigma(2 * n as u32)?);
    if rule.monte_carlo {
        let total = rule.total_weight();
        let se = |vals: Vec<Complex64>| monte_carlo_std_error(&vals, total);
        let scaled = |g: &dyn Fn(usize) -> Complex64| -> Vec<Complex64> {
            (0..rule.len()).map(|i| g(i) / rule.weights[i]).collect()
        };
        let mut worst = se(scaled(&|i| per_node[i]));
        for j in 0..n {
            worst = worst.max(se(scaled(&|i| per_node[i] * xi(i, j))));
            for k in 0..n {
                worst = worst.max(se(scaled(&|i| per_node[i] * xi(i, j).conj() * xi(i, k))));
            }
        }
        error_estimate += 3.0 * worst;
    }
    Ok(PlaneWaveMoments { n, i0, m1, m2, m3, error_estimate })
}

/// Direct numerical value of one plane-wave integral with its error estimate.
pub fn integrate_r2n_planewave(p: &Point, which: PlaneWaveMoment, q: &PlaneWaveQuadrature) -> Result<(Mv, f64)> {
    let m = planewave_moments(p, q)?;
    Ok((m.assemble(which), m.error_estimate))
}

/// Surfaces in `R^{2n+1}` with outward unit normals.
#[derive(Clone, Debug, PartialEq)]
pub enum BoundarySurface {
    Sphere { center: Point, radius: f64 },
    /// `|x| = R`, `b < x₀ < a`, normal `(0, x/R)`.
    CylinderSide { a: f64, radius: f64, b: f64 },
    /// Disk `x₀ = at`, `|x| <= R`, normal `(normal_sign, 0)`.
    CylinderCap { at: f64, radius: f64, normal_sign: f64 },
}

/// Node counts for surface discretizations.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SurfaceResolution {
    pub sphere: SphereSizes,
    /// Gauss–Legendre nodes in the radial direction of caps.
    pub radial: usize,
    /// Gauss–Legendre nodes per axial panel of cylinder sides.
    pub axial_per_panel: usize,
    /// Width of the axial panel adjacent to `x₀ = a`.
    pub axial_first_panel: f64,
    /// Growth factor of successive axial panel widths towards `x₀ = b`.
    pub axial_growth: f64,
}

impl Default for SurfaceResolution {
    fn default() -> Self {
        SurfaceResolution {
            sphere: SphereSizes { angular: 80, polar: 40 },
            radial: 24,
            axial_per_panel: 16,
            axial_first_panel: 0.25,
            axial_growth: 1.25,
        }
    }
}

/// One surface node: point, outward unit normal `(ν₀, ν_1, …, ν_{2n})`, weight.
#[derive(Clone, Debug)]
pub struct SurfaceNode {
    pub point: Point,
    pub normal: Vec<f64>,
    pub weight: f64,
}

/// Discretized surface.
#[derive(Clone, Debug)]
pub struct SurfaceRule {
    pub n: usize,
    pub nodes: Vec<SurfaceNode>,
    /// Exact surface measure, for validation.
    pub exact_measure: f64,
}

impl SurfaceRule {
    pub fn total_weight(&self) -> f64 {
        pairwise_sum_f64(&self.nodes.iter().map(|v| v.weight).collect::<Vec<_>>())
    }
}

/// Axial panel edges from `a` down to `b`, widths growing geometrically.
pub fn graded_edges(a: f64, b: f64, first: f64, growth: f64) -> Result<Vec<f64>> {
    if !(a > b) || !(first > 0.0) || !(growth >= 1.0) {
        return Err(Error::Parameter(format!("graded panels on [{b}, {a}]")));
    }
    let mut edges = vec![a];
    let mut w = first;
    let mut x = a;
    while x - w > b + 0.5 * w {
        x -= w;
        edges.push(x);
        w *= growth;
    }
    edges.push(b);
    edges.reverse();
    Ok(edges)
}

impl BoundarySurface {
    pub fn discretize(&self, n: usize, res: &SurfaceResolution) -> Result<SurfaceRule> {
        if n == 0 {
            return Err(Error::InvalidDimension("surfaces need n >= 1".into()));
        }
        let dim = 2 * n;
        match self {
            BoundarySurface::Sphere { center, radius } => {
                if center.n() != n || !(*radius > 0.0) {
                    return Err(Error::Parameter("sphere center/radius mismatch".into()));
                }
                let rule = SphereRule::product_sized(dim + 1, res.sphere)?;
                let scale = radius.powi(dim as i32);
                let nodes = rule
                    .nodes
                    .iter()
                    .zip(&rule.weights)
                    .map(|(nu, w)| SurfaceNode {
                        point: Point {
                            x0: center.x0 + radius * nu[0],
                            x: (0..dim).map(|j| center.x[j] + radius * nu[j + 1]).collect(),
                        },
                        normal: nu.clone(),
                        weight: w * scale,
                    })
                    .collect();
                Ok(SurfaceRule { n, nodes, exact_measure: sigma(dim as u32 + 1)? * scale })
            }
            BoundarySurface::CylinderSide { a, radius, b } => {
                let edges = graded_edges(*a, *b, res.axial_first_panel, res.axial_growth)?;
                let (xs, wx) = gauss_legendre_panels(&edges, res.axial_per_panel);
                let ring = SphereRule::product_sized(dim, res.sphere)?;
                let scale = radius.powi(dim as i32 - 1);
                let mut nodes = Vec::with_capacity(xs.len() * ring.len());
                for (&x0, &w0) in xs.iter().zip(&wx) {
                    for (eta, we) in ring.nodes.iter().zip(&ring.weights) {
                        let mut normal = vec![0.0];
                        normal.extend(eta.iter().copied());
                        nodes.push(SurfaceNode {
                            point: Point { x0, x: eta.iter().map(|c| radius * c).collect() },
                            normal,
                            weight: w0 * we * scale,
                        });
                    }
                }
                Ok(SurfaceRule { n, nodes, exact_measure: (a - b) * sigma(dim as u32)? * scale })
            }
            BoundarySurface::CylinderCap { at, radius, normal_sign } => {
                let (rs, wr) = gauss_legendre_interval(res.radial, 0.0, *radius);
                let ring = SphereRule::product_sized(dim, res.sphere)?;
                let mut normal = vec![normal_sign.signum()];
                normal.extend(std::iter::repeat_n(0.0, dim));
                let mut nodes = Vec::with_capacity(rs.len() * ring.len());
                for (&r, &w) in rs.iter().zip(&wr) {
                    let jac = r.powi(dim as i32 - 1);
                    for (eta, we) in ring.nodes.iter().zip(&ring.weights) {
                        nodes.push(SurfaceNode {
                            point: Point { x0: *at, x: eta.iter().map(|c| r * c).collect() },
                            normal: normal.clone(),
                            weight: w * jac * we,
                        });
                    }
                }
                let measure = sigma(dim as u32)? * radius.powi(dim as i32) / dim as f64;
                Ok(SurfaceRule { n, nodes, exact_measure: measure })
            }
        }
    }
}

/// `Σ w_i g(x_i, ν_i)` over a discretized surface.
pub fn surface_integral(
    rule: &SurfaceRule,
    exec: Exec,
    integrand: impl Fn(&Point, &[f64]) -> Result<Mv> + Sync + Send,
) -> Result<Mv> {
    let vals = exec.try_map(rule.nodes.len(), |i| {
        let node = &rule.nodes[i];
        let v = integrand(&node.point, &node.normal)?;
        if !v.is_finite() {
            return Err(Error::NonFinite(format!("surface integrand at {:?}", node.point.coords())));
        }
        Ok(v.scale_re(node.weight))
    })?;
    Ok(pairwise_sum_mv(&vals, hermitian_dim(rule.n)))
}

/// Volume rule for the ball `|y - c| < R` in `R^{2n+1}`: Gauss–Legendre in the
/// radius with weight `s^{2n}`, times the sphere rule.
pub fn ball_volume_rule(center: &Point, radius: f64, radial: usize, sphere: SphereSizes) -> Result<Vec<(Point, f64)>> {
    let n = center.n();
    let dim = 2 * n + 1;
    let (ss, ws) = gauss_legendre_interval(radial, 0.0, radius);
    let rule = SphereRule::product_sized(dim, sphere)?;
    let mut out = Vec::with_capacity(ss.len() * rule.len());
    for (&s, &w) in ss.iter().zip(&ws) {
        let jac = s.powi(dim as i32 - 1);
        for (nu, wn) in rule.nodes.iter().zip(&rule.weights) {
            out.push((
                Point { x0: center.x0 + s * nu[0], x: (0..2 * n).map(|j| center.x[j] + s * nu[j + 1]).collect() },
                w * jac * wn,
            ));
        }
    }
    Ok(out)
}

/// `Σ w_i g(y_i)` over a volume rule.
pub fn volume_integral(
    nodes: &[(Point, f64)],
    dim: u32,
    exec: Exec,
    integrand: impl Fn(&Point) -> Result<Mv> + Sync + Send,
) -> Result<Mv> {
    let vals = exec.try_map(nodes.len(), |i| {
        let v = integrand(&nodes[i].0)?;
        if !v.is_finite() {
            return Err(Error::NonFinite("volume integrand".into()));
        }
        Ok(v.scale_re(nodes[i].1))
    })?;
    Ok(pairwise_sum_mv(&vals, dim))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn gauss_legendre_exactness() {
        for k in 1..=40 {
            let (x, w) = gauss_legendre(k);
            for d in 0..(2 * k) {
                let s: f64 = x.iter().zip(&w).map(|(t, wt)| wt * t.powi(d as i32)).sum();
                let exact = if d % 2 == 1 { 0.0 } else { 2.0 / (d as f64 + 1.0) };
                assert!((s - exact).abs() < 1e-13, "k={k} d={d}: {s} vs {exact}");
            }
        }
    }

    #[test]
    fn adaptive_handles_peaks() {
        let r = adaptive_real(|t| 1.0 / (1e-4 + t * t), -1.0, 1.0, 1e-14, 1e-12).unwrap();
        let exact = 2.0 / 1e-2 * (1.0f64 / 1e-2).atan();
        assert_relative_eq!(r.value, exact, max_relative = 1e-11);
    }

    #[test]
    fn exponential_tail_matches_quadrature() {
        for q in 0..6 {
            let l = 3.0;
            let c = 1.5;
            let tail = exponential_tail(q, c, l);
            let quad = adaptive_real(|r| r.powi(q as i32) * (-c * r).exp(), l, 80.0, 1e-18, 1e-13).unwrap();
            assert_relative_eq!(tail, quad.value, max_relative = 1e-10);
        }
    }

    #[test]
    fn sphere_rule_examples() {
        let s1 = SphereRule::product(2, 4).unwrap();
        assert_relative_eq!(s1.total_weight(), 2.0 * PI, max_relative = 1e-14);
        let s3 = SphereRule::product(4, 6).unwrap();
        let (v, _) = s3.integrate(Exec::Sequential, |x| Complex64::new(x[0] * x[0], 0.0));
        assert_relative_eq!(v.re, sigma(4).unwrap() / 4.0, max_relative = 1e-12);
        let s2 = SphereRule::product(3, 6).unwrap();
        let (v, _) = s2.integrate(Exec::Sequential, |x| Complex64::new(x[0] * x[1], 0.0));
        assert!(v.norm() < 1e-14);
    }

    #[test]
    fn sphere_rules_are_exact_on_monomials() {
        for p in 2..=6usize {
            let deg = 6;
            let rule = SphereRule::product(p, deg).unwrap();
            assert_relative_eq!(rule.total_weight(), sigma(p as u32).unwrap(), max_relative = 1e-12);
            for node in &rule.nodes {
                let nn: f64 = node.iter().map(|c| c * c).sum();
                assert!((nn - 1.0).abs() < 1e-12);
            }
            let mut exps = vec![0u32; p];
            // enumerate all multi-indices of total degree <= deg
            fn rec(i: usize, left: u32, exps: &mut Vec<u32>, rule: &SphereRule) {
                if i == exps.len() {
                    let (v, _) = rule.integrate(Exec::Sequential, |x| {
                        Complex64::new(x.iter().zip(exps.iter()).map(|(c, e)| c.powi(*e as i32)).product(), 0.0)
                    });
                    let exact = sphere_monomial_integral(exps);
                    assert!((v.re - exact).abs() < 1e-10, "p={} exps={:?}: {} vs {}", rule.p, exps, v.re, exact);
                    return;
                }
                for e in 0..=left {
                    exps[i] = e;
                    rec(i + 1, left - e, exps, rule);
                }
                exps[i] = 0;
            }
            rec(0, deg, &mut exps, &rule);
        }
    }

    #[test]
    fn monte_carlo_rule_weights() {
        let r = SphereRule::monte_carlo(5, 1000, 7).unwrap();
        assert_relative_eq!(r.total_weight(), sigma(5).unwrap(), max_relative = 1e-12);
        let (v, se) = r.integrate(Exec::Sequential, |x| Complex64::new(x[0] * x[0], 0.0));
        let exact = sigma(5).unwrap() / 5.0;
        assert!((v.re - exact).abs() < 4.0 * se.unwrap());
    }

    #[test]
    fn surface_measures() {
        let res = SurfaceResolution::default();
        for n in 1..=2 {
            let sphere = BoundarySurface::Sphere { center: Point::origin(n), radius: 0.7 };
            let side = BoundarySurface::CylinderSide { a: 0.5, radius: 1.3, b: -6.0 };
            let cap = BoundarySurface::CylinderCap { at: 0.5, radius: 1.3, normal_sign: 1.0 };
            for s in [sphere, side, cap] {
                let small = SurfaceResolution { sphere: SphereSizes { angular: 16, polar: 12 }, ..res };
                let rule = s.discretize(n, &small).unwrap();
                assert_relative_eq!(rule.total_weight(), rule.exact_measure, max_relative = 1e-10);
            }
        }
    }

    #[test]
    fn graded_edges_cover_interval() {
        let e = graded_edges(0.5, -30.0, 0.25, 1.25).unwrap();
        assert_eq!(*e.first().unwrap(), -30.0);
        assert_eq!(*e.last().unwrap(), 0.5);
        assert!(e.windows(2).all(|w| w[1] > w[0]));
    }
}
