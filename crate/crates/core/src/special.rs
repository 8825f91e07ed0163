//! Double factorials, half-integer Gamma values, Beta, Gegenbauer
//! polynomials, the binomial-type series and the closed forms of the two
//! integral lemmas the kernel construction rests on.
//!
//! Double factorials follow the standard convention `0!! = (-1)!! = 1`.
//!
//! The closed forms of [`lemma22_closed`] carry the constant
//! [`weight_constant`]`(m)`, i.e. `π` for even `m` and `2` for odd `m`; this is
//! what `B(k + 1/2, (m-1)/2) (2k+m-2)!! / ((2k-1)!! (m-3)!!)` evaluates to
//! under the standard double-factorial convention.

use std::f64::consts::PI;

use num_complex::Complex64;
use num_rational::Ratio;

use crate::error::{Error, Result};

/// `k!!` for `k >= -1`.
pub fn double_factorial(k: i64) -> Result<u128> {
    if k < -1 {
        return Err(Error::Domain(format!("double factorial of {k}")));
    }
    let mut acc: u128 = 1;
    let mut j = k;
    while j > 1 {
        acc = acc
            .checked_mul(j as u128)
            .ok_or_else(|| Error::Domain(format!("{k}!! overflows")))?;
        j -= 2;
    }
    Ok(acc)
}

/// `k!!` as a float, for use inside real-valued formulas.
pub fn double_factorial_f64(k: i64) -> Result<f64> {
    double_factorial(k).map(|v| v as f64)
}

/// `k!` for `k >= 0`.
pub fn factorial(k: u32) -> Result<u128> {
    (1..=k as u128).try_fold(1u128, |acc, j| {
        acc.checked_mul(j).ok_or_else(|| Error::Domain(format!("{k}! overflows")))
    })
}

/// `Γ(k/2)` for a positive integer `k`.
pub fn gamma_half(k: u32) -> Result<f64> {
    if k < 1 {
        return Err(Error::Domain("gamma_half needs k >= 1".into()));
    }
    if k % 2 == 1 {
        let df = double_factorial_f64(k as i64 - 2)?;
        Ok(PI.sqrt() * df / 2f64.powi(((k - 1) / 2) as i32))
    } else {
        Ok(factorial(k / 2 - 1)? as f64)
    }
}

/// `Γ(x)` for real `x > 0`.
pub fn gamma(x: f64) -> Result<f64> {
    if !(x > 0.0) || !x.is_finite() {
        return Err(Error::Domain(format!("gamma at {x}")));
    }
    Ok(statrs::function::gamma::gamma(x))
}

/// `B(x, y) = Γ(x) Γ(y) / Γ(x + y)` for `x, y > 0`.
pub fn beta_fn(x: f64, y: f64) -> Result<f64> {
    if !(x > 0.0 && y > 0.0) {
        return Err(Error::Domain(format!("beta at ({x}, {y})")));
    }
    let ln = statrs::function::gamma::ln_gamma(x) + statrs::function::gamma::ln_gamma(y)
        - statrs::function::gamma::ln_gamma(x + y);
    Ok(ln.exp())
}

/// Surface area `σ_p = 2 π^{p/2} / Γ(p/2)` of the unit sphere `S^{p-1} ⊂ R^p`.
pub fn sigma(p: u32) -> Result<f64> {
    if p < 1 {
        return Err(Error::Domain("sphere dimension p must be >= 1".into()));
    }
    Ok(2.0 * PI.powf(p as f64 / 2.0) / gamma_half(p)?)
}

/// `π` for even `m`, `2` for odd `m`.
pub fn weight_constant(m: u32) -> f64 {
    if m.is_multiple_of(2) {
        PI
    } else {
        2.0
    }
}

/// Gegenbauer polynomial `C_k^λ(t)` by the three-term recurrence.
pub fn gegenbauer(k: u32, lambda: f64, t: f64) -> f64 {
    let mut prev = 1.0;
    if k == 0 {
        return prev;
    }
    let mut cur = 2.0 * lambda * t;
    for j in 2..=k {
        let jf = j as f64;
        let next = (2.0 * (jf + lambda - 1.0) * t * cur - (jf + 2.0 * lambda - 2.0) * prev) / jf;
        prev = cur;
        cur = next;
    }
    cur
}

/// `∫_0^∞ x^nn e^{αx} dx = (-1)^{nn+1} nn! / α^{nn+1}` for `Re α < 0`.
pub fn lemma21_i(nn: u32, alpha: Complex64) -> Result<Complex64> {
    if !(alpha.re < 0.0) {
        return Err(Error::Domain(format!("Re(alpha) = {} must be negative", alpha.re)));
    }
    let sign = if nn.is_multiple_of(2) { -1.0 } else { 1.0 };
    let fact = factorial(nn)? as f64;
    Ok(sign * fact / alpha.powu(nn + 1))
}

/// Coefficient `a_j = -2^{nn-j-1} (nn-1)! / (j! (2nn-2j-1)!!)` of `P_{2nn-2}`.
pub fn coeff_a(nn: u32, j: u32) -> Result<Ratio<i64>> {
    if nn < 1 || j >= nn {
        return Err(Error::OutOfRange(format!("a_j with j = {j}, nn = {nn}")));
    }
    let num = (1i64 << (nn - j - 1)) * factorial(nn - 1)? as i64;
    let den = factorial(j)? as i64 * double_factorial(2 * nn as i64 - 2 * j as i64 - 1)? as i64;
    Ok(Ratio::new(-num, den))
}

fn ratio_f64(r: &Ratio<i64>) -> f64 {
    *r.numer() as f64 / *r.denom() as f64
}

/// `P_{2nn-2}(x) = Σ_j a_j x^{2j}`.
pub fn poly_p(nn: u32, x: f64) -> Result<f64> {
    let mut acc = 0.0;
    for j in (0..nn).rev() {
        acc = acc * x * x + ratio_f64(&coeff_a(nn, j)?);
    }
    Ok(acc)
}

/// `P'_{2nn-2}(x)`.
pub fn poly_p_derivative(nn: u32, x: f64) -> Result<f64> {
    let mut acc = 0.0;
    for j in 1..nn {
        acc += ratio_f64(&coeff_a(nn, j)?) * 2.0 * j as f64 * x.powi(2 * j as i32 - 1);
    }
    Ok(acc)
}

/// Antiderivative `P_{2nn-2}(x) / (1+x²)^{(2nn-1)/2}` of
/// `x^{2nn-1} / (1+x²)^{(2nn+1)/2}`.
pub fn lemma21_ii_antiderivative(nn: u32, x: f64) -> Result<f64> {
    Ok(poly_p(nn, x)? / (1.0 + x * x).powf((2 * nn) as f64 / 2.0 - 0.5))
}

/// `d/dx` of [`lemma21_ii_antiderivative`], evaluated analytically.
pub fn lemma21_ii_antiderivative_derivative(nn: u32, x: f64) -> Result<f64> {
    let q = 1.0 + x * x;
    let e = (2 * nn) as f64 - 1.0;
    Ok(poly_p_derivative(nn, x)? / q.powf(e / 2.0) - e * x * poly_p(nn, x)? / q.powf(e / 2.0 + 1.0))
}

/// Integrand `x^{2nn-1} / (1+x²)^{(2nn+1)/2}` of the antiderivative identity.
pub fn lemma21_ii_integrand(nn: u32, x: f64) -> f64 {
    x.powi(2 * nn as i32 - 1) / (1.0 + x * x).powf(nn as f64 + 0.5)
}

/// Partial sum of a convergent series with its truncation bound.
#[derive(Clone, Debug, PartialEq)]
pub struct SeriesTail {
    pub sum: f64,
    /// Number of terms summed.
    pub terms: usize,
    pub last_term: f64,
    /// Bound on `|sum - partial|`, valid once term ratios are nonincreasing
    /// (alternating series: `|next term|`).
    pub tail_bound: f64,
}

const SERIES_MAX_TERMS: usize = 10_000;

/// Sums `Σ_k t_k` where `t_{k+1} = t_k · ratio(k)`; stops when
/// `|t_k| < 1e-16·|partial|` or after [`SERIES_MAX_TERMS`] terms.
fn sum_ratio_series(first: f64, ratio: impl Fn(usize) -> f64) -> SeriesTail {
    let mut sum = 0.0;
    let mut t = first;
    let mut k = 0;
    let mut last = first;
    while k < SERIES_MAX_TERMS {
        sum += t;
        last = t;
        t *= ratio(k);
        k += 1;
        if t.abs() < 1e-16 * sum.abs() || t == 0.0 {
            break;
        }
    }
    let next = t.abs();
    let q = ratio(k).abs();
    let alternating = ratio(k) < 0.0 && q < 1.0;
    let geometric = if q < 1.0 { next / (1.0 - q) } else { f64::INFINITY };
    let tail_bound = if alternating { next.min(geometric) } else { geometric };
    SeriesTail { sum, terms: k, last_term: last, tail_bound }
}

/// `Σ_k C(k+m-1, k) x^k`, the expansion of `1/(1-x)^m` for `|x| < 1`.
pub fn series_inv_one_minus(m: u32, x: f64) -> Result<SeriesTail> {
    if !(x.abs() < 1.0) || m < 1 {
        return Err(Error::Domain(format!("series 1/(1-x)^m at x = {x}, m = {m}")));
    }
    Ok(sum_ratio_series(1.0, |k| (k as f64 + m as f64) / (k as f64 + 1.0) * x))
}

/// `Σ_k (-1)^k (2k+m-1)!! / ((2k)!! (m-1)!!) x^k`, the expansion of
/// `(1+x)^{-(m+1)/2}` for `|x| < 1`.
pub fn series_inv_one_plus_half(m: u32, x: f64) -> Result<SeriesTail> {
    if !(x.abs() < 1.0) || m < 1 {
        return Err(Error::Domain(format!("series (1+x)^(-(m+1)/2) at x = {x}, m = {m}")));
    }
    Ok(sum_ratio_series(1.0, |k| {
        -(2.0 * k as f64 + m as f64 + 1.0) / (2.0 * k as f64 + 2.0) * x
    }))
}

/// Left side `Σ_k (-1)^k (2k+2nn-1)!! / ((2k)!! (2k+2nn) (2nn-1)!!) x^{2k}`.
pub fn lemma21_iii_lhs(nn: u32, x: f64) -> Result<SeriesTail> {
    if nn < 1 || !(x.abs() < 1.0) || x == 0.0 {
        return Err(Error::Domain(format!("series at x = {x}, nn = {nn}")));
    }
    let n2 = 2.0 * nn as f64;
    let x2 = x * x;
    // u_k (2k+2nn) ratio form: t_k = (-1)^k u_k x^{2k} / (2k + 2nn)
    Ok(sum_ratio_series(1.0 / n2, |k| {
        let kf = k as f64;
        -(2.0 * kf + n2 + 1.0) / (2.0 * kf + 2.0) * (2.0 * kf + n2) / (2.0 * kf + n2 + 2.0) * x2
    }))
}

/// Right side `x^{-2nn} (P_{2nn-2}(x) / (1+x²)^{(2nn-1)/2} + (2nn-2)!!/(2nn-1)!!)`.
pub fn lemma21_iii_rhs(nn: u32, x: f64) -> Result<f64> {
    if nn < 1 || !(x.abs() < 1.0) || x == 0.0 {
        return Err(Error::Domain(format!("closed form at x = {x}, nn = {nn}")));
    }
    let c = double_factorial_f64(2 * nn as i64 - 2)? / double_factorial_f64(2 * nn as i64 - 1)?;
    Ok((lemma21_ii_antiderivative(nn, x)? + c) / x.powi(2 * nn as i32))
}

/// Which of the three integral closed forms to evaluate.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Lemma22 {
    /// `∫_{-1}^1 (1-t²)^{(m-3)/2} (x₀ - irt)^{-m} dt`
    I,
    /// `∫_{-1}^1 t (1-t²)^{(m-3)/2} (x₀ - irt)^{-m} dt`
    Ii,
    /// `∫_{-1}^1 t² (1-t²)^{(2n-3)/2} (x₀ - irt)^{-2n} dt`
    Iii,
}

/// Coefficient `b_j` of the third closed form:
/// `b_n = 2n (2n-3)!!`, `b_j = (2n-2)!! (2n+1)!! / ((2j)!! (2n-2j+1)!!)`.
pub fn coeff_b(n: u32, j: u32) -> Result<Ratio<i64>> {
    if n < 1 || j > n {
        return Err(Error::OutOfRange(format!("b_j with j = {j}, n = {n}")));
    }
    let n = n as i64;
    let j = j as i64;
    if j == n {
        return Ok(Ratio::from_integer(2 * n * double_factorial(2 * n - 3)? as i64));
    }
    let num = double_factorial(2 * n - 2)? as i64 * double_factorial(2 * n + 1)? as i64;
    let den = double_factorial(2 * j)? as i64 * double_factorial(2 * n - 2 * j + 1)? as i64;
    Ok(Ratio::new(num, den))
}

/// Closed form of the selected integral; `m_or_n` is `m` for [`Lemma22::I`]
/// and [`Lemma22::Ii`], `n` for [`Lemma22::Iii`]. Requires `x₀ > r > 0`.
pub fn lemma22_closed(which: Lemma22, m_or_n: u32, x0: f64, r: f64) -> Result<Complex64> {
    if !(r > 0.0 && x0 > r) {
        return Err(Error::Domain(format!("need x0 > r > 0, got x0 = {x0}, r = {r}")));
    }
    let rho2 = x0 * x0 + r * r;
    match which {
        Lemma22::I | Lemma22::Ii => {
            let m = m_or_n;
            if m < 2 {
                return Err(Error::Domain(format!("m = {m} must be >= 2")));
            }
            let k = weight_constant(m) * double_factorial_f64(m as i64 - 3)?
                / double_factorial_f64(m as i64 - 2)?
                / rho2.powf((m as f64 + 1.0) / 2.0);
            Ok(if which == Lemma22::I {
                Complex64::new(k * x0, 0.0)
            } else {
                Complex64::new(0.0, k * r)
            })
        }
        Lemma22::Iii => {
            let n = m_or_n;
            if n < 1 {
                return Err(Error::Domain("n must be >= 1".into()));
            }
            let c = weight_constant(2 * n);
            let mut poly = 0.0;
            for j in 0..=n {
                poly += ratio_f64(&coeff_b(n, j)?)
                    * x0.powi(2 * (n - j) as i32)
                    * r.powi(2 * j as i32);
            }
            let r2n = r.powi(2 * n as i32);
            let v = c * x0 * poly
                / (double_factorial_f64(2 * n as i64 - 2)? * r2n * rho2.powf(n as f64 + 0.5))
                - c / r2n;
            Ok(Complex64::new(v, 0.0))
        }
    }
}

/// Integrand of the selected integral at `t`, for oracle quadratures.
pub fn lemma22_integrand(which: Lemma22, m_or_n: u32, x0: f64, r: f64, t: f64) -> Complex64 {
    let (m, tpow) = match which {
        Lemma22::I => (m_or_n, 0),
        Lemma22::Ii => (m_or_n, 1),
        Lemma22::Iii => (2 * m_or_n, 2),
    };
    let w = (1.0 - t * t).powf((m as f64 - 3.0) / 2.0);
    let den = Complex64::new(x0, -r * t).powu(m);
    t.powi(tpow) * w / den
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn double_factorial_examples() {
        assert_eq!(double_factorial(5).unwrap(), 15);
        assert_eq!(double_factorial(0).unwrap(), 1);
        assert_eq!(double_factorial(-1).unwrap(), 1);
        assert_eq!(double_factorial(8).unwrap(), 384);
        assert!(double_factorial(-2).is_err());
    }

    #[test]
    fn gamma_half_examples() {
        assert_relative_eq!(gamma_half(1).unwrap(), PI.sqrt(), max_relative = 1e-15);
        assert_relative_eq!(gamma_half(3).unwrap(), PI.sqrt() / 2.0, max_relative = 1e-15);
        assert_eq!(gamma_half(6).unwrap(), 2.0);
        assert!(gamma_half(0).is_err());
        for k in 1..30 {
            assert_relative_eq!(
                gamma_half(k).unwrap(),
                statrs::function::gamma::gamma(k as f64 / 2.0),
                max_relative = 1e-12
            );
        }
    }

    #[test]
    fn beta_examples() {
        assert_relative_eq!(beta_fn(1.0, 1.0).unwrap(), 1.0, max_relative = 1e-14);
        assert_relative_eq!(beta_fn(0.5, 0.5).unwrap(), PI, max_relative = 1e-14);
        // B(3/2, 3/2) = π/8
        assert_relative_eq!(beta_fn(1.5, 1.5).unwrap(), PI / 8.0, max_relative = 1e-14);
        assert!(beta_fn(0.0, 1.0).is_err());
    }

    #[test]
    fn sigma_values() {
        assert_relative_eq!(sigma(1).unwrap(), 2.0, max_relative = 1e-15);
        assert_relative_eq!(sigma(2).unwrap(), 2.0 * PI, max_relative = 1e-15);
        assert_relative_eq!(sigma(3).unwrap(), 4.0 * PI, max_relative = 1e-15);
        assert_relative_eq!(sigma(4).unwrap(), 2.0 * PI * PI, max_relative = 1e-15);
    }

    #[test]
    fn gegenbauer_examples() {
        assert_eq!(gegenbauer(0, 0.7, 0.3), 1.0);
        assert_relative_eq!(gegenbauer(1, 1.0, 0.3), 0.6, max_relative = 1e-15);
        assert!(gegenbauer(2, 1.0, 0.5).abs() < 1e-15);
        // λ = 1/2 gives Legendre: P_3(t) = (5t³ - 3t)/2
        let t = 0.37;
        assert_relative_eq!(gegenbauer(3, 0.5, t), (5.0 * t * t * t - 3.0 * t) / 2.0, max_relative = 1e-14);
    }

    #[test]
    fn lemma21_i_examples() {
        let v = lemma21_i(1, Complex64::new(-1.0, 0.0)).unwrap();
        assert_relative_eq!(v.re, 1.0, max_relative = 1e-15);
        let v = lemma21_i(0, Complex64::new(-2.0, 0.0)).unwrap();
        assert_relative_eq!(v.re, 0.5, max_relative = 1e-15);
        assert!(lemma21_i(2, Complex64::new(0.0, 1.0)).is_err());
    }

    #[test]
    fn coeff_a_examples_and_recurrence() {
        assert_eq!(coeff_a(1, 0).unwrap(), Ratio::new(-1, 1));
        for nn in 1..=6u32 {
            for j in 0..nn.saturating_sub(1) {
                let lhs = Ratio::from_integer(2 * (j as i64 + 1)) * coeff_a(nn, j + 1).unwrap();
                let rhs = Ratio::from_integer(2 * nn as i64 - 2 * j as i64 - 1) * coeff_a(nn, j).unwrap();
                assert_eq!(lhs, rhs);
            }
        }
        assert!(coeff_a(2, 2).is_err());
    }

    #[test]
    fn series_tail_is_honest() {
        for &x in &[0.3, 0.9, -0.5] {
            let s = series_inv_one_minus(3, x).unwrap();
            assert!((s.sum - (1.0 - x).powi(-3)).abs() <= s.tail_bound + 1e-12 * s.sum.abs());
            let s = series_inv_one_plus_half(4, x).unwrap();
            assert!((s.sum - (1.0 + x).powf(-2.5)).abs() <= s.tail_bound + 1e-12 * s.sum.abs());
        }
    }

    #[test]
    fn lemma21_iii_small_x_limit() {
        for nn in 1..=4 {
            let v = lemma21_iii_lhs(nn, 1e-3).unwrap().sum;
            assert_relative_eq!(v, 1.0 / (2.0 * nn as f64), max_relative = 1e-5);
        }
        assert!(lemma21_iii_rhs(1, 1.0).is_err());
        assert!(lemma21_iii_rhs(1, 0.0).is_err());
    }

    #[test]
    fn lemma22_example_values() {
        let v = lemma22_closed(Lemma22::I, 3, 1.0, 0.5).unwrap();
        assert_relative_eq!(v.re, 2.0 / 1.25f64.powi(2), max_relative = 1e-14);
        assert!(lemma22_closed(Lemma22::Ii, 4, 1.0, 1e-14).unwrap().norm() < 1e-12);
        assert!(lemma22_closed(Lemma22::I, 3, 0.5, 0.5).is_err());
    }

    #[test]
    fn coeff_b_examples() {
        assert_eq!(coeff_b(1, 1).unwrap(), Ratio::from_integer(2));
        assert_eq!(coeff_b(1, 0).unwrap(), Ratio::from_integer(1));
        assert!(coeff_b(1, 2).is_err());
    }
}
