//! Complex Clifford algebra `C_m` with generators `e_0, ..., e_{m-1}`, `e_k^2 = -1`.
//!
//! Multivectors are stored sparsely as a map from blade bitmask to coefficient.
//! The coefficient type is generic so the same code runs in double precision
//! ([`Complex64`]) and in exact rational arithmetic ([`ExactComplex`]); blade
//! signs are always computed with integer bit counting.
//!
//! For the Hermitian setting the algebra has `m = 2n + 2` generators and the
//! Witt pair `j` (for `j = 0..=n`) is built on `(e_j, e_{j+n+1})`:
//!
//! ```text
//! f_j  =  1/2 (e_j - i e_{j+n+1})
//! f_j† = -1/2 (e_j + i e_{j+n+1})
//! ```
//!
//! `f_0` is the distinguished pair carrying `z_0 = x_0 + i y_0`; the remaining
//! pairs carry `z_j = x_j + i x_{n+j}`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex;
use num_complex::Complex64;
use num_rational::Ratio;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// Largest supported number of generators.
pub const MAX_GENERATORS: u32 = 32;

const FLOAT_DROP: f64 = 8.881_784_197_001_252e-16; // 2^-50

/// Exact Gaussian rational coefficient used by the identity suites.
pub type ExactComplex = Complex<Ratio<i64>>;

/// Double-precision multivector.
pub type Mv = Multivector<Complex64>;

/// Exact-arithmetic multivector.
pub type ExactMv = Multivector<ExactComplex>;

/// Coefficient field for [`Multivector`].
pub trait Coeff:
    Clone
    + PartialEq
    + fmt::Debug
    + Send
    + Sync
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
    /// Relative magnitude below which coefficients are dropped on normalization.
    const DROP_THRESHOLD: Option<f64>;

    fn zero() -> Self;
    fn one() -> Self;
    fn imag_unit() -> Self;
    fn from_ratio(num: i64, den: i64) -> Self;
    fn conj(&self) -> Self;
    fn is_zero(&self) -> bool;
    fn magnitude(&self) -> f64;
    fn to_complex64(&self) -> Complex64;
}

impl Coeff for Complex64 {
    const DROP_THRESHOLD: Option<f64> = Some(FLOAT_DROP);

    fn zero() -> Self {
        Complex64::new(0.0, 0.0)
    }
    fn one() -> Self {
        Complex64::new(1.0, 0.0)
    }
    fn imag_unit() -> Self {
        Complex64::new(0.0, 1.0)
    }
    fn from_ratio(num: i64, den: i64) -> Self {
        Complex64::new(num as f64 / den as f64, 0.0)
    }
    fn conj(&self) -> Self {
        Complex::conj(self)
    }
    fn is_zero(&self) -> bool {
        self.re == 0.0 && self.im == 0.0
    }
    fn magnitude(&self) -> f64 {
        self.norm()
    }
    fn to_complex64(&self) -> Complex64 {
        *self
    }
}

impl Coeff for ExactComplex {
    const DROP_THRESHOLD: Option<f64> = None;

    fn zero() -> Self {
        Complex::new(Ratio::zero(), Ratio::zero())
    }
    fn one() -> Self {
        Complex::new(Ratio::one(), Ratio::zero())
    }
    fn imag_unit() -> Self {
        Complex::new(Ratio::zero(), Ratio::one())
    }
    fn from_ratio(num: i64, den: i64) -> Self {
        Complex::new(Ratio::new(num, den), Ratio::zero())
    }
    fn conj(&self) -> Self {
        Complex::new(self.re, -self.im)
    }
    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }
    fn magnitude(&self) -> f64 {
        self.to_complex64().norm()
    }
    fn to_complex64(&self) -> Complex64 {
        let f = |r: &Ratio<i64>| *r.numer() as f64 / *r.denom() as f64;
        Complex64::new(f(&self.re), f(&self.im))
    }
}

/// Blade `e_A` encoded as a bitmask; bit `k` set means `e_k` is a factor.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct BladeMask(pub u32);

impl BladeMask {
    pub const SCALAR: BladeMask = BladeMask(0);

    pub fn generator(k: u32) -> Self {
        BladeMask(1 << k)
    }

    pub fn grade(self) -> u32 {
        self.0.count_ones()
    }

    pub fn contains(self, k: u32) -> bool {
        self.0 & (1 << k) != 0
    }

    pub fn is_valid(self, dim: u32) -> bool {
        dim >= MAX_GENERATORS || self.0 >> dim == 0
    }
}

impl fmt::Display for BladeMask {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0 == 0 {
            return write!(f, "1");
        }
        let mut first = true;
        for k in 0..32 {
            if self.contains(k) {
                if !first {
                    write!(f, "·")?;
                }
                write!(f, "e{k}")?;
                first = false;
            }
        }
        Ok(())
    }
}

/// Sign of `e_A e_B` relative to `e_{A xor B}`, without range checks.
#[inline]
pub(crate) fn blade_sign(a: u32, b: u32) -> i8 {
    // transpositions needed to bring the product into ascending order
    let mut swaps = 0u32;
    let mut shifted = a >> 1;
    while shifted != 0 {
        swaps += (shifted & b).count_ones();
        shifted >>= 1;
    }
    // every repeated generator contributes e_k^2 = -1
    swaps += (a & b).count_ones();
    if swaps.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// `e_A e_B = sign · e_{A xor B}` in the algebra with `dim` generators.
pub fn blade_product(a: BladeMask, b: BladeMask, dim: u32) -> Result<(i8, BladeMask)> {
    if dim > MAX_GENERATORS {
        return Err(Error::InvalidDimension(format!(
            "{dim} generators exceeds the supported maximum {MAX_GENERATORS}"
        )));
    }
    if !a.is_valid(dim) || !b.is_valid(dim) {
        return Err(Error::InvalidDimension(format!(
            "blade {a} or {b} not valid for {dim} generators"
        )));
    }
    Ok((blade_sign(a.0, b.0), BladeMask(a.0 ^ b.0)))
}

/// Element of `C_m`, stored in canonical sparse form.
#[derive(Clone, PartialEq)]
pub struct Multivector<T: Coeff = Complex64> {
    dim: u32,
    coeffs: BTreeMap<BladeMask, T>,
}

impl<T: Coeff> fmt::Debug for Multivector<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Multivector[C_{}](", self.dim)?;
        let mut first = true;
        for (mask, c) in &self.coeffs {
            if !first {
                write!(f, " + ")?;
            }
            write!(f, "({:?}){}", c, mask)?;
            first = false;
        }
        if first {
            write!(f, "0")?;
        }
        write!(f, ")")
    }
}

impl<T: Coeff> Multivector<T> {
    /// Zero element with `dim` generators.
    pub fn zero(dim: u32) -> Self {
        assert!(dim <= MAX_GENERATORS, "at most {MAX_GENERATORS} generators");
        Multivector { dim, coeffs: BTreeMap::new() }
    }

    /// Zero element of the Hermitian algebra with `n` Witt pairs beyond `f_0`.
    pub fn zero_hermitian(n: usize) -> Self {
        Self::zero(hermitian_dim(n))
    }

    pub fn scalar(dim: u32, c: T) -> Self {
        Self::blade(dim, BladeMask::SCALAR, c)
    }

    pub fn one(dim: u32) -> Self {
        Self::scalar(dim, T::one())
    }

    /// `c · e_A`; panics on an invalid mask.
    pub fn blade(dim: u32, mask: BladeMask, c: T) -> Self {
        assert!(mask.is_valid(dim), "blade {mask} invalid for {dim} generators");
        let mut mv = Self::zero(dim);
        if !c.is_zero() {
            mv.coeffs.insert(mask, c);
        }
        mv
    }

    /// Generator `e_k`.
    pub fn generator(dim: u32, k: u32) -> Result<Self> {
        if k >= dim {
            return Err(Error::OutOfRange(format!("generator e{k} with {dim} generators")));
        }
        Ok(Self::blade(dim, BladeMask::generator(k), T::one()))
    }

    /// Builds a multivector from `(mask, coefficient)` pairs, summing duplicates.
    pub fn from_terms(dim: u32, terms: impl IntoIterator<Item = (BladeMask, T)>) -> Result<Self> {
        let mut mv = Self::zero(dim);
        for (mask, c) in terms {
            if !mask.is_valid(dim) {
                return Err(Error::InvalidDimension(format!(
                    "blade {mask} invalid for {dim} generators"
                )));
            }
            mv.accumulate(mask, c);
        }
        mv.normalize();
        Ok(mv)
    }

    pub fn dim(&self) -> u32 {
        self.dim
    }

    /// `n` such that `dim = 2n + 2`, if the algebra is of Hermitian type.
    pub fn n_pairs(&self) -> Option<usize> {
        if self.dim >= 2 && self.dim.is_multiple_of(2) {
            Some((self.dim as usize - 2) / 2)
        } else {
            None
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeff(&self, mask: BladeMask) -> T {
        self.coeffs.get(&mask).cloned().unwrap_or_else(T::zero)
    }

    pub fn scalar_part(&self) -> T {
        self.coeff(BladeMask::SCALAR)
    }

    pub fn terms(&self) -> impl Iterator<Item = (BladeMask, &T)> {
        self.coeffs.iter().map(|(m, c)| (*m, c))
    }

    fn accumulate(&mut self, mask: BladeMask, c: T) {
        match self.coeffs.get_mut(&mask) {
            Some(v) => *v = v.clone() + c,
            None => {
                self.coeffs.insert(mask, c);
            }
        }
    }

    /// Removes exact zeros and, for float coefficients, entries negligible
    /// relative to the largest coefficient.
    fn normalize(&mut self) {
        match T::DROP_THRESHOLD {
            None => self.coeffs.retain(|_, c| !c.is_zero()),
            Some(rel) => {
                let max = self.coeffs.values().map(|c| c.magnitude()).fold(0.0, f64::max);
                let cut = rel * max;
                self.coeffs.retain(|_, c| !c.is_zero() && c.magnitude() >= cut);
            }
        }
    }

    fn check_dim(&self, other: &Self) -> Result<()> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch { left: self.dim, right: other.dim });
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check_dim(other)?;
        let mut out = self.clone();
        for (m, c) in &other.coeffs {
            out.accumulate(*m, c.clone());
        }
        out.normalize();
        Ok(out)
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.check_dim(other)?;
        let mut out = self.clone();
        for (m, c) in &other.coeffs {
            out.accumulate(*m, -c.clone());
        }
        out.normalize();
        Ok(out)
    }

    /// Clifford product, the bilinear extension of [`blade_product`].
    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.check_dim(other)?;
        let mut out = Self::zero(self.dim);
        for (ma, ca) in &self.coeffs {
            for (mb, cb) in &other.coeffs {
                let prod = ca.clone() * cb.clone();
                let c = if blade_sign(ma.0, mb.0) < 0 { -prod } else { prod };
                out.accumulate(BladeMask(ma.0 ^ mb.0), c);
            }
        }
        out.normalize();
        Ok(out)
    }

    pub fn scale(&self, c: &T) -> Self {
        let mut out = Self::zero(self.dim);
        if c.is_zero() {
            return out;
        }
        for (m, v) in &self.coeffs {
            out.coeffs.insert(*m, v.clone() * c.clone());
        }
        out.normalize();
        out
    }

    /// Grade projection `[a]_k`.
    pub fn grade_project(&self, k: u32) -> Result<Self> {
        if k > self.dim {
            return Err(Error::OutOfRange(format!("grade {k} in algebra with {} generators", self.dim)));
        }
        let mut out = Self::zero(self.dim);
        for (m, c) in &self.coeffs {
            if m.grade() == k {
                out.coeffs.insert(*m, c.clone());
            }
        }
        Ok(out)
    }

    /// Clifford conjugation: `ē_j = -e_j` with reversal of factors; linear
    /// over the complex coefficients.
    pub fn conjugate(&self) -> Self {
        self.map_blades(false)
    }

    /// Hermitian conjugation `c† = ā - i b̄` for `c = a + i b`.
    pub fn hermitian_conj(&self) -> Self {
        self.map_blades(true)
    }

    fn map_blades(&self, conj_coeffs: bool) -> Self {
        let mut out = Self::zero(self.dim);
        for (m, c) in &self.coeffs {
            let k = m.grade();
            // reversal gives (-1)^{k(k-1)/2}, negating each generator (-1)^k
            let negate = (k * (k + 1) / 2) % 2 == 1;
            let c = if conj_coeffs { c.conj() } else { c.clone() };
            out.coeffs.insert(*m, if negate { -c } else { c });
        }
        out
    }

    /// Scalar part of `a b` without forming the full product.
    pub fn scalar_of_product(&self, other: &Self) -> Result<T> {
        self.check_dim(other)?;
        let mut acc = T::zero();
        for (m, c) in &self.coeffs {
            if let Some(d) = other.coeffs.get(m) {
                let prod = c.clone() * d.clone();
                acc = if blade_sign(m.0, m.0) < 0 { acc - prod } else { acc + prod };
            }
        }
        Ok(acc)
    }

    /// `|c| = sqrt([c† c]_0)`.
    pub fn norm(&self) -> f64 {
        let sq = self
            .hermitian_conj()
            .scalar_of_product(self)
            .expect("same dimension")
            .to_complex64();
        sq.re.max(0.0).sqrt()
    }

    /// `|a - b|`.
    pub fn distance(&self, other: &Self) -> Result<f64> {
        Ok(self.try_sub(other)?.norm())
    }

    /// Largest coefficient magnitude.
    pub fn max_abs(&self) -> f64 {
        self.coeffs.values().map(|c| c.magnitude()).fold(0.0, f64::max)
    }

    /// Converts to double precision.
    pub fn to_float(&self) -> Mv {
        let mut out = Mv::zero(self.dim);
        for (m, c) in &self.coeffs {
            out.coeffs.insert(*m, c.to_complex64());
        }
        out.normalize();
        out
    }

    /// True if no blade involves generator `k`.
    pub fn free_of(&self, k: u32) -> bool {
        self.coeffs.keys().all(|m| !m.contains(k))
    }

    /// Witt basis element `f_j` (or `f_j†`) of the algebra with `2n + 2`
    /// generators, `0 <= j <= n`.
    pub fn witt(n: usize, j: usize, dagger: bool) -> Result<Self> {
        if j > n {
            return Err(Error::OutOfRange(format!("Witt index {j} > n = {n}")));
        }
        let dim = hermitian_dim(n);
        let half = T::from_ratio(1, 2);
        let first = BladeMask::generator(j as u32);
        let second = BladeMask::generator((j + n + 1) as u32);
        let i_half = T::imag_unit() * half.clone();
        let terms = if dagger {
            vec![(first, -half), (second, -i_half)]
        } else {
            vec![(first, half), (second, -i_half)]
        };
        Self::from_terms(dim, terms)
    }

    /// `β = Σ_{j=1..n} f_j† f_j`.
    pub fn beta(n: usize) -> Self {
        let mut acc = Self::zero_hermitian(n);
        for j in 1..=n {
            let fj = Self::witt(n, j, false).expect("valid index");
            let fjd = Self::witt(n, j, true).expect("valid index");
            acc = &acc + &(&fjd * &fj);
        }
        acc
    }

    /// `Σ_j c_j f_j` for `j = 1..=n` (the Hermitian vector `Σ (u_j + i u_{n+j}) f_j`).
    pub fn hermitian_vector(n: usize, components: &[T]) -> Result<Self> {
        if components.len() != n {
            return Err(Error::InvalidDimension(format!(
                "{} Hermitian components for n = {n}",
                components.len()
            )));
        }
        let mut acc = Self::zero_hermitian(n);
        for (j, c) in components.iter().enumerate() {
            let fj = Self::witt(n, j + 1, false)?;
            acc = &acc + &fj.scale(c);
        }
        Ok(acc)
    }

    /// Splits real coordinates `x ∈ R^{2n}` into `(z, z†)` with
    /// `z = Σ z_j f_j`, `z_j = x_j + i x_{n+j}`.
    pub fn hermitian_split_coords(n: usize, x: &[T]) -> Result<(Self, Self)> {
        if x.len() != 2 * n {
            return Err(Error::InvalidDimension(format!("{} coordinates for n = {n}", x.len())));
        }
        let comps: Vec<T> = (0..n)
            .map(|j| x[j].clone() + T::imag_unit() * x[n + j].clone())
            .collect();
        let z = Self::hermitian_vector(n, &comps)?;
        let zdag = z.hermitian_conj();
        Ok((z, zdag))
    }

    /// The 1-vector `Σ x_j e_j + x_{n+j} e_{j+n+1}` for `x ∈ R^{2n}`.
    pub fn embed_vector(n: usize, x: &[T]) -> Result<Self> {
        if x.len() != 2 * n {
            return Err(Error::InvalidDimension(format!("{} coordinates for n = {n}", x.len())));
        }
        let dim = hermitian_dim(n);
        let terms = (0..n).flat_map(|j| {
            [
                (BladeMask::generator((j + 1) as u32), x[j].clone()),
                (BladeMask::generator((j + n + 2) as u32), x[n + j].clone()),
            ]
        });
        Self::from_terms(dim, terms)
    }
}

impl Mv {
    pub fn scale_re(&self, s: f64) -> Self {
        self.scale(&Complex64::new(s, 0.0))
    }

    pub fn is_finite(&self) -> bool {
        self.coeffs.values().all(|c| c.re.is_finite() && c.im.is_finite())
    }

    /// Dense coefficient vector of length `2^dim`, indexed by blade mask.
    pub fn to_dense(&self) -> Vec<Complex64> {
        let mut v = vec![Complex64::new(0.0, 0.0); 1usize << self.dim];
        for (m, c) in &self.coeffs {
            v[m.0 as usize] = *c;
        }
        v
    }

    /// Inverse of [`Mv::to_dense`].
    pub fn from_dense(dim: u32, v: &[Complex64]) -> Result<Self> {
        if v.len() != 1usize << dim {
            return Err(Error::InvalidDimension(format!(
                "dense vector of length {} for {dim} generators",
                v.len()
            )));
        }
        let mut out = Mv::zero(dim);
        for (i, c) in v.iter().enumerate() {
            if c.re != 0.0 || c.im != 0.0 {
                out.coeffs.insert(BladeMask(i as u32), *c);
            }
        }
        out.normalize();
        Ok(out)
    }
}

/// Number of generators `2n + 2` of the Hermitian algebra.
pub fn hermitian_dim(n: usize) -> u32 {
    (2 * n + 2) as u32
}

/// Witt elements `f_0, f_0†` and the idempotents `f_0 f_0†`, `f_0† f_0`,
/// cached for repeated use in kernel formulas.
#[derive(Clone, Debug)]
pub struct WittFrame<T: Coeff = Complex64> {
    pub n: usize,
    pub f: Vec<Multivector<T>>,
    pub fdag: Vec<Multivector<T>>,
    /// `f_0 f_0†`
    pub p0: Multivector<T>,
    /// `f_0† f_0`
    pub q0: Multivector<T>,
    pub beta: Multivector<T>,
}

impl<T: Coeff> WittFrame<T> {
    pub fn new(n: usize) -> Self {
        let f: Vec<_> = (0..=n).map(|j| Multivector::witt(n, j, false).expect("index")).collect();
        let fdag: Vec<_> = (0..=n).map(|j| Multivector::witt(n, j, true).expect("index")).collect();
        let p0 = &f[0] * &fdag[0];
        let q0 = &fdag[0] * &f[0];
        WittFrame { n, f, fdag, p0, q0, beta: Multivector::beta(n) }
    }

    pub fn dim(&self) -> u32 {
        hermitian_dim(self.n)
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident, $try:ident) => {
        impl<T: Coeff> $trait<&Multivector<T>> for &Multivector<T> {
            type Output = Multivector<T>;
            fn $method(self, rhs: &Multivector<T>) -> Multivector<T> {
                self.$try(rhs).expect("multivector dimension mismatch")
            }
        }
        impl<T: Coeff> $trait<Multivector<T>> for Multivector<T> {
            type Output = Multivector<T>;
            fn $method(self, rhs: Multivector<T>) -> Multivector<T> {
                (&self).$method(&rhs)
            }
        }
        impl<T: Coeff> $trait<&Multivector<T>> for Multivector<T> {
            type Output = Multivector<T>;
            fn $method(self, rhs: &Multivector<T>) -> Multivector<T> {
                (&self).$method(rhs)
            }
        }
        impl<T: Coeff> $trait<Multivector<T>> for &Multivector<T> {
            type Output = Multivector<T>;
            fn $method(self, rhs: Multivector<T>) -> Multivector<T> {
                self.$method(&rhs)
            }
        }
    };
}

forward_binop!(Add, add, try_add);
forward_binop!(Sub, sub, try_sub);
forward_binop!(Mul, mul, try_mul);

impl<T: Coeff> Neg for &Multivector<T> {
    type Output = Multivector<T>;
    fn neg(self) -> Multivector<T> {
        let mut out = self.clone();
        for v in out.coeffs.values_mut() {
            *v = -v.clone();
        }
        out
    }
}

impl<T: Coeff> Neg for Multivector<T> {
    type Output = Multivector<T>;
    fn neg(self) -> Multivector<T> {
        -&self
    }
}

impl Mul<Complex64> for &Mv {
    type Output = Mv;
    fn mul(self, rhs: Complex64) -> Mv {
        self.scale(&rhs)
    }
}

impl Mul<Complex64> for Mv {
    type Output = Mv;
    fn mul(self, rhs: Complex64) -> Mv {
        self.scale(&rhs)
    }
}

impl Mul<f64> for &Mv {
    type Output = Mv;
    fn mul(self, rhs: f64) -> Mv {
        self.scale_re(rhs)
    }
}

impl Mul<f64> for Mv {
    type Output = Mv;
    fn mul(self, rhs: f64) -> Mv {
        self.scale_re(rhs)
    }
}

/// Point `(x_0, x) ∈ R^{2n+1}` of the `y_0`-independent domain.
#[derive(Clone, Debug, PartialEq)]
pub struct Point {
    pub x0: f64,
    /// `x_1, ..., x_n, x_{n+1}, ..., x_{2n}`
    pub x: Vec<f64>,
}

impl Point {
    pub fn new(x0: f64, x: Vec<f64>) -> Result<Self> {
        if !x.len().is_multiple_of(2) {
            return Err(Error::InvalidDimension(format!("odd spatial dimension {}", x.len())));
        }
        if !x0.is_finite() || x.iter().any(|v| !v.is_finite()) {
            return Err(Error::NonFinite("point coordinates".into()));
        }
        Ok(Point { x0, x })
    }

    /// Builds from the flat coordinate list `[x_0, x_1, ..., x_{2n}]`.
    pub fn from_coords(coords: &[f64]) -> Result<Self> {
        match coords.split_first() {
            Some((x0, rest)) => Point::new(*x0, rest.to_vec()),
            None => Err(Error::InvalidDimension("empty coordinate list".into())),
        }
    }

    pub fn origin(n: usize) -> Self {
        Point { x0: 0.0, x: vec![0.0; 2 * n] }
    }

    pub fn n(&self) -> usize {
        self.x.len() / 2
    }

    pub fn coords(&self) -> Vec<f64> {
        let mut c = Vec::with_capacity(self.x.len() + 1);
        c.push(self.x0);
        c.extend_from_slice(&self.x);
        c
    }

    /// `r = |x|`
    pub fn r(&self) -> f64 {
        self.x.iter().map(|v| v * v).sum::<f64>().sqrt()
    }

    /// `z_j = x_j + i x_{n+j}` for `j = 1..=n`.
    pub fn z_components(&self) -> Vec<Complex64> {
        let n = self.n();
        (0..n).map(|j| Complex64::new(self.x[j], self.x[n + j])).collect()
    }

    pub fn sub(&self, other: &Point) -> Point {
        Point {
            x0: self.x0 - other.x0,
            x: self.x.iter().zip(&other.x).map(|(a, b)| a - b).collect(),
        }
    }

    pub fn add(&self, other: &Point) -> Point {
        Point {
            x0: self.x0 + other.x0,
            x: self.x.iter().zip(&other.x).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn scaled(&self, t: f64) -> Point {
        Point { x0: self.x0 * t, x: self.x.iter().map(|v| v * t).collect() }
    }
}

/// Hermitian vector `w = Σ w_j f_j`, `w_j = u_j + i u_{n+j}`.
#[derive(Clone, Debug, PartialEq)]
pub struct HermitianVector {
    pub components: Vec<Complex64>,
}

impl HermitianVector {
    pub fn new(components: Vec<Complex64>) -> Self {
        HermitianVector { components }
    }

    /// From real coordinates `u ∈ R^{2n}`.
    pub fn from_real(u: &[f64]) -> Result<Self> {
        if !u.len().is_multiple_of(2) {
            return Err(Error::InvalidDimension(format!("odd parameter dimension {}", u.len())));
        }
        let n = u.len() / 2;
        Ok(HermitianVector {
            components: (0..n).map(|j| Complex64::new(u[j], u[n + j])).collect(),
        })
    }

    pub fn n(&self) -> usize {
        self.components.len()
    }

    pub fn norm(&self) -> f64 {
        self.components.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn to_multivector(&self) -> Mv {
        Mv::hermitian_vector(self.n(), &self.components).expect("component count matches n")
    }
}

/// `(z, z†)` for a point; `z - z†` equals the embedded 1-vector of `x`.
pub fn hermitian_split(p: &Point) -> (Mv, Mv) {
    let x: Vec<Complex64> = p.x.iter().map(|v| Complex64::new(*v, 0.0)).collect();
    Mv::hermitian_split_coords(p.n(), &x).expect("even coordinate count")
}

/// `c · 1` in the algebra of `frame`.
pub fn scalar_mv(dim: u32, c: f64) -> Mv {
    Mv::scalar(dim, Complex64::new(c, 0.0))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn e(dim: u32, k: u32) -> ExactMv {
        ExactMv::generator(dim, k).unwrap()
    }

    /// Sign of a product of generator lists by bubble sort, independent of
    /// the bit-counting implementation.
    fn sign_by_sorting(a: &[u32], b: &[u32]) -> (i32, Vec<u32>) {
        let mut word: Vec<u32> = a.iter().chain(b).copied().collect();
        let mut sign = 1i32;
        loop {
            let mut changed = false;
            let mut i = 0;
            while i + 1 < word.len() {
                if word[i] > word[i + 1] {
                    word.swap(i, i + 1);
                    sign = -sign;
                    changed = true;
                } else if word[i] == word[i + 1] {
                    word.drain(i..i + 2);
                    sign = -sign;
                    changed = true;
                    continue;
                }
                i += 1;
            }
            if !changed {
                break;
            }
        }
        (sign, word)
    }

    fn mask_to_list(m: u32) -> Vec<u32> {
        (0..32).filter(|k| m & (1 << k) != 0).collect()
    }

    #[test]
    fn blade_product_examples() {
        let d = 6;
        let (s, m) = blade_product(BladeMask(0b10), BladeMask(0b10), d).unwrap();
        assert_eq!((s, m), (-1, BladeMask::SCALAR));
        let (s, m) = blade_product(BladeMask(0b10), BladeMask(0b100), d).unwrap();
        assert_eq!((s, m), (1, BladeMask(0b110)));
        let (s, m) = blade_product(BladeMask(0b110), BladeMask(0b10), d).unwrap();
        assert_eq!((s, m), (1, BladeMask(0b100)));
    }

    #[test]
    fn blade_product_rejects_out_of_range_masks() {
        assert!(matches!(
            blade_product(BladeMask(1 << 4), BladeMask(1), 4),
            Err(Error::InvalidDimension(_))
        ));
    }

    #[test]
    fn blade_sign_matches_sorting_oracle_exhaustively() {
        let dim = 6;
        for a in 0..(1u32 << dim) {
            for b in 0..(1u32 << dim) {
                let (sign, word) = sign_by_sorting(&mask_to_list(a), &mask_to_list(b));
                let (s, m) = blade_product(BladeMask(a), BladeMask(b), dim).unwrap();
                assert_eq!(s as i32, sign, "a={a:b} b={b:b}");
                assert_eq!(mask_to_list(m.0), word);
            }
        }
    }

    #[test]
    fn product_examples() {
        let d = 4;
        let one = ExactMv::one(d);
        let e1 = e(d, 1);
        assert_eq!(&(&one + &e1) * &(&one - &e1), one.scale(&ExactComplex::from_ratio(2, 1)));
        assert_eq!(&e1 * &one, e1);
        let f1 = ExactMv::witt(1, 1, false).unwrap();
        assert!((&f1 * &f1).is_zero());
    }

    #[test]
    fn dimension_mismatch_is_reported() {
        let a = Mv::one(4);
        let b = Mv::one(6);
        assert!(matches!(a.try_mul(&b), Err(Error::DimensionMismatch { .. })));
    }

    #[test]
    fn grade_projection() {
        let d = 4;
        let one = ExactMv::one(d);
        let e1 = e(d, 1);
        let e12 = &e1 * &e(d, 2);
        let a = &(&one + &e1) + &e12;
        assert_eq!(a.grade_project(1).unwrap(), e1);
        let c = &(&one - &e1) * &(&one + &e1);
        assert_eq!(c.grade_project(0).unwrap(), one.scale(&ExactComplex::from_ratio(2, 1)));
        assert!(e12.grade_project(0).unwrap().is_zero());
        assert!(a.grade_project(5).is_err());
        let total = (0..=d).fold(ExactMv::zero(d), |acc, k| &acc + &a.grade_project(k).unwrap());
        assert_eq!(total, a);
    }

    #[test]
    fn conjugations() {
        let n = 1;
        let d = hermitian_dim(n);
        let e1 = e(d, 1);
        assert_eq!(e1.conjugate(), -&e1);
        let f1 = ExactMv::witt(n, 1, false).unwrap();
        assert_eq!(f1.hermitian_conj(), ExactMv::witt(n, 1, true).unwrap());
        let i1 = ExactMv::scalar(d, ExactComplex::imag_unit());
        assert_eq!(i1.hermitian_conj(), -&i1);
        let e12 = &e1 * &e(d, 2);
        // reversal of a bivector flips it, negation twice preserves
        assert_eq!(e12.conjugate(), -&e12);
    }

    #[test]
    fn norms() {
        let d = 4;
        assert_eq!(Mv::one(d).norm(), 1.0);
        let v = &Mv::one(d) + &Mv::generator(d, 1).unwrap();
        assert!((v.norm() - 2f64.sqrt()).abs() < 1e-15);
        let f1 = Mv::witt(1, 1, false).unwrap();
        assert!((f1.norm() - 0.5f64.sqrt()).abs() < 1e-15);
        assert_eq!(Mv::zero(d).norm(), 0.0);
    }

    #[test]
    fn witt_identities_small() {
        let n = 2;
        let d = hermitian_dim(n);
        let f0 = ExactMv::witt(n, 0, false).unwrap();
        let f0d = ExactMv::witt(n, 0, true).unwrap();
        assert_eq!(&(&f0 * &f0d) + &(&f0d * &f0), ExactMv::one(d));
        let f1 = ExactMv::witt(n, 1, false).unwrap();
        let f2 = ExactMv::witt(n, 2, false).unwrap();
        assert!((&(&f1 * &f2) + &(&f2 * &f1)).is_zero());
        assert!((&f0 * &f0).is_zero());
        assert!(ExactMv::witt(n, 3, false).is_err());
    }

    #[test]
    fn hermitian_split_examples() {
        let n = 2;
        let (z, zd) = hermitian_split(&Point::origin(n));
        assert!(z.is_zero() && zd.is_zero());
        let p = Point::new(0.0, vec![1.0, 0.0, 0.0, 0.0]).unwrap();
        let (z, zd) = hermitian_split(&p);
        assert_eq!(z, Mv::witt(n, 1, false).unwrap());
        assert_eq!(zd, Mv::witt(n, 1, true).unwrap());
        let p = Point::new(0.3, vec![0.25, -1.5, 0.75, 2.0]).unwrap();
        let (z, zd) = hermitian_split(&p);
        let x: Vec<Complex64> = p.x.iter().map(|v| Complex64::new(*v, 0.0)).collect();
        let emb = Mv::embed_vector(n, &x).unwrap();
        assert!((&z - &zd).distance(&emb).unwrap() < 1e-15);
    }
}
