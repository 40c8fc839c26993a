//! Truncated power series over a generic coefficient field.
//!
//! A [`PowerSeries`] of order `N` stores `c_0, ..., c_N` and represents the
//! class of a function modulo `z^(N+1)`.  All operations are exact in the
//! coefficient arithmetic: with rational or Gaussian-rational coefficients
//! the results are exact, with `f64`/`Complex64` they are ordinary floating
//! point recurrences.

use std::fmt::Debug;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_complex::{Complex, Complex64};
use num_rational::BigRational;
use num_traits::{Num, One, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Coefficient field for [`PowerSeries`].
pub trait Scalar: Clone + PartialEq + Debug + Num + Neg<Output = Self> {
    fn from_ratio(num: i64, den: i64) -> Self;

    fn from_int(n: i64) -> Self {
        Self::from_ratio(n, 1)
    }
}

/// Fields that contain `i`.
pub trait ImaginaryUnit: Scalar {
    fn i() -> Self;
}

impl Scalar for f64 {
    fn from_ratio(num: i64, den: i64) -> Self {
        num as f64 / den as f64
    }
}

impl Scalar for Complex64 {
    fn from_ratio(num: i64, den: i64) -> Self {
        Complex64::new(num as f64 / den as f64, 0.0)
    }
}

impl ImaginaryUnit for Complex64 {
    fn i() -> Self {
        Complex64::i()
    }
}

impl Scalar for BigRational {
    fn from_ratio(num: i64, den: i64) -> Self {
        BigRational::new(BigInt::from(num), BigInt::from(den))
    }
}

impl Scalar for Complex<BigRational> {
    fn from_ratio(num: i64, den: i64) -> Self {
        Complex::new(BigRational::from_ratio(num, den), BigRational::zero())
    }
}

impl ImaginaryUnit for Complex<BigRational> {
    fn i() -> Self {
        Complex::new(BigRational::zero(), BigRational::one())
    }
}

/// Nearest `f64` to an exact rational.
pub fn rational_to_f64(q: &BigRational) -> f64 {
    // scale so that both parts fit comfortably before dividing
    let (n, d) = (q.numer(), q.denom());
    let shift = (n.bits() as i64).max(d.bits() as i64) - 900;
    if shift > 0 {
        let (n, d) = (n >> shift as usize, d >> shift as usize);
        if d.is_zero() {
            return if n.is_zero() { 0.0 } else { f64::INFINITY.copysign(n.to_f64().unwrap_or(1.0)) };
        }
        return n.to_f64().unwrap_or(0.0) / d.to_f64().unwrap_or(1.0);
    }
    q.to_f64().unwrap_or_else(|| n.to_f64().unwrap_or(0.0) / d.to_f64().unwrap_or(1.0))
}

/// Converts a Gaussian rational to `Complex64`.
pub fn gaussian_to_c64(z: &Complex<BigRational>) -> Complex64 {
    Complex64::new(rational_to_f64(&z.re), rational_to_f64(&z.im))
}

#[derive(Debug, Clone, PartialEq)]
pub struct PowerSeries<T> {
    coeffs: Vec<T>,
}

/// Complex Taylor jet, the working type of the saddle-point machinery.
pub type PowerSeriesJet = PowerSeries<Complex64>;

impl<T: Scalar> PowerSeries<T> {
    /// Series with the given coefficients `c_0..c_N`.
    pub fn new(coeffs: Vec<T>) -> Self {
        assert!(!coeffs.is_empty(), "a power series needs at least c_0");
        Self { coeffs }
    }

    pub fn from_fn(order: usize, f: impl FnMut(usize) -> T) -> Self {
        Self::new((0..=order).map(f).collect())
    }

    pub fn zero(order: usize) -> Self {
        Self::from_fn(order, |_| T::zero())
    }

    pub fn constant(c: T, order: usize) -> Self {
        let mut s = Self::zero(order);
        s.coeffs[0] = c;
        s
    }

    pub fn one(order: usize) -> Self {
        Self::constant(T::one(), order)
    }

    /// The series `z`.
    pub fn variable(order: usize) -> Self {
        let mut s = Self::zero(order);
        if order >= 1 {
            s.coeffs[1] = T::one();
        }
        s
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, k: usize) -> T {
        self.coeffs.get(k).cloned().unwrap_or_else(T::zero)
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<T> {
        self.coeffs
    }

    /// Same series modulo `z^(order+1)`; pads with zeros when raising the order.
    pub fn truncate(&self, order: usize) -> Self {
        Self::from_fn(order, |k| self.coeff(k))
    }

    pub fn map<U: Scalar>(&self, f: impl Fn(&T) -> U) -> PowerSeries<U> {
        PowerSeries::new(self.coeffs.iter().map(f).collect())
    }

    pub fn scale(&self, c: &T) -> Self {
        Self::new(self.coeffs.iter().map(|a| a.clone() * c.clone()).collect())
    }

    fn common_order(&self, other: &Self) -> usize {
        self.order().min(other.order())
    }

    pub fn add_series(&self, other: &Self) -> Self {
        Self::from_fn(self.common_order(other), |k| {
            self.coeffs[k].clone() + other.coeffs[k].clone()
        })
    }

    pub fn sub_series(&self, other: &Self) -> Self {
        Self::from_fn(self.common_order(other), |k| {
            self.coeffs[k].clone() - other.coeffs[k].clone()
        })
    }

    /// Cauchy product truncated at the smaller order.
    pub fn mul_series(&self, other: &Self) -> Self {
        let n = self.common_order(other);
        let mut out = vec![T::zero(); n + 1];
        for (i, a) in self.coeffs.iter().enumerate().take(n + 1) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate().take(n + 1 - i) {
                out[i + j] = out[i + j].clone() + a.clone() * b.clone();
            }
        }
        Self::new(out)
    }

    fn require_unit(&self, what: &str) -> Result<()> {
        if self.coeffs[0].is_zero() {
            return Err(Error::Series(format!("{what}: constant term is zero")));
        }
        Ok(())
    }

    /// `1 / f`, requires `c_0 != 0`.
    pub fn recip(&self) -> Result<Self> {
        self.require_unit("recip")?;
        let a0 = self.coeffs[0].clone();
        let mut b = vec![T::zero(); self.coeffs.len()];
        b[0] = T::one() / a0.clone();
        for n in 1..b.len() {
            let mut s = T::zero();
            for k in 1..=n {
                s = s + self.coeffs[k].clone() * b[n - k].clone();
            }
            b[n] = -s / a0.clone();
        }
        Ok(Self::new(b))
    }

    pub fn div_series(&self, other: &Self) -> Result<Self> {
        Ok(self.mul_series(&other.recip()?))
    }

    /// `f'`, one order lower.
    pub fn derivative(&self) -> Self {
        if self.order() == 0 {
            return Self::zero(0);
        }
        Self::from_fn(self.order() - 1, |k| {
            self.coeffs[k + 1].clone() * T::from_int(k as i64 + 1)
        })
    }

    /// Antiderivative with constant term `c`, one order higher.
    pub fn integral(&self, c: T) -> Self {
        Self::from_fn(self.order() + 1, |k| {
            if k == 0 {
                c.clone()
            } else {
                self.coeffs[k - 1].clone() / T::from_int(k as i64)
            }
        })
    }

    /// `f / z^k`, requires `c_0 = .. = c_{k-1} = 0`; the order drops by `k`.
    pub fn divide_by_power(&self, k: usize) -> Result<Self> {
        if k > self.order() {
            return Err(Error::Series(format!("cannot divide order {} by z^{k}", self.order())));
        }
        if let Some(j) = (0..k).find(|&j| !self.coeffs[j].is_zero()) {
            return Err(Error::Series(format!("coefficient {j} is nonzero in division by z^{k}")));
        }
        Ok(Self::new(self.coeffs[k..].to_vec()))
    }

    /// `exp(f)` for `c_0 = 0`.
    pub fn exp(&self) -> Result<Self> {
        if !self.coeffs[0].is_zero() {
            return Err(Error::Series("exp needs a zero constant term (use exp_with)".into()));
        }
        Ok(self.exp_with(T::one()))
    }

    /// `exp(f)` given `e0 = exp(c_0)`.
    pub fn exp_with(&self, e0: T) -> Self {
        let mut b = vec![T::zero(); self.coeffs.len()];
        b[0] = e0;
        for n in 1..b.len() {
            let mut s = T::zero();
            for k in 1..=n {
                s = s + T::from_int(k as i64) * self.coeffs[k].clone() * b[n - k].clone();
            }
            b[n] = s / T::from_int(n as i64);
        }
        Self::new(b)
    }

    /// `log(f)` for `c_0 = 1`.
    pub fn ln(&self) -> Result<Self> {
        if !self.coeffs[0].is_one() {
            return Err(Error::Series("ln needs constant term 1 (use ln_with)".into()));
        }
        self.ln_with(T::zero())
    }

    /// `log(f)` given `l0 = log(c_0)`.
    pub fn ln_with(&self, l0: T) -> Result<Self> {
        self.require_unit("ln")?;
        let a0 = self.coeffs[0].clone();
        let mut b = vec![T::zero(); self.coeffs.len()];
        b[0] = l0;
        for n in 1..b.len() {
            let mut s = T::zero();
            for k in 1..n {
                s = s + T::from_int(k as i64) * b[k].clone() * self.coeffs[n - k].clone();
            }
            b[n] = (self.coeffs[n].clone() - s / T::from_int(n as i64)) / a0.clone();
        }
        Ok(Self::new(b))
    }

    /// `f^alpha` for `c_0 = 1`.
    pub fn pow(&self, alpha: T) -> Result<Self> {
        if !self.coeffs[0].is_one() {
            return Err(Error::Series("pow needs constant term 1 (use pow_with)".into()));
        }
        self.pow_with(alpha, T::one())
    }

    /// `f^alpha` given `b0 = c_0^alpha`.
    pub fn pow_with(&self, alpha: T, b0: T) -> Result<Self> {
        self.require_unit("pow")?;
        let a0 = self.coeffs[0].clone();
        let ap1 = alpha + T::one();
        let mut b = vec![T::zero(); self.coeffs.len()];
        b[0] = b0;
        for n in 1..b.len() {
            let mut s = T::zero();
            for k in 1..=n {
                let w = ap1.clone() * T::from_int(k as i64) - T::from_int(n as i64);
                s = s + w * self.coeffs[k].clone() * b[n - k].clone();
            }
            b[n] = s / (T::from_int(n as i64) * a0.clone());
        }
        Ok(Self::new(b))
    }

    /// Principal square root for `c_0 = 1`.
    pub fn sqrt(&self) -> Result<Self> {
        self.pow(T::from_ratio(1, 2))
    }

    /// `sqrt(f)` given a square root `r0` of `c_0`.
    pub fn sqrt_with(&self, r0: T) -> Result<Self> {
        self.pow_with(T::from_ratio(1, 2), r0)
    }

    /// `f(g)` for `g(0) = 0`, at the order of `g`.
    pub fn compose(&self, g: &Self) -> Result<Self> {
        if !g.coeffs[0].is_zero() {
            return Err(Error::Series("compose needs g(0) = 0".into()));
        }
        let n = g.order();
        let mut acc = Self::constant(self.coeff(self.order()), n);
        for k in (0..self.order()).rev() {
            acc = acc.mul_series(g);
            acc.coeffs[0] = acc.coeffs[0].clone() + self.coeffs[k].clone();
        }
        Ok(acc)
    }

    /// Compositional inverse `g` with `f(g(z)) = z`; requires `c_0 = 0`,
    /// `c_1 != 0`.  Newton iteration, doubling the number of correct
    /// coefficients per step.
    pub fn revert(&self) -> Result<Self> {
        let n = self.order();
        if n == 0 || !self.coeffs[0].is_zero() || self.coeffs[1].is_zero() {
            return Err(Error::Series("revert needs c_0 = 0 and c_1 != 0".into()));
        }
        let fp = self.derivative();
        let z = Self::variable(n);
        let mut g = z.scale(&(T::one() / self.coeffs[1].clone()));
        let mut good = 1;
        while good < n {
            let resid = self.compose(&g)?.sub_series(&z);
            let slope = fp.truncate(n).compose(&g)?;
            g = g.sub_series(&resid.div_series(&slope)?);
            good *= 2;
        }
        Ok(g)
    }

    /// Horner evaluation of the truncated polynomial.
    pub fn eval(&self, x: &T) -> T {
        self.coeffs
            .iter()
            .rev()
            .fold(T::zero(), |acc, c| acc * x.clone() + c.clone())
    }
}

impl<T: Scalar> Add for &PowerSeries<T> {
    type Output = PowerSeries<T>;
    fn add(self, rhs: Self) -> PowerSeries<T> {
        self.add_series(rhs)
    }
}

impl<T: Scalar> Sub for &PowerSeries<T> {
    type Output = PowerSeries<T>;
    fn sub(self, rhs: Self) -> PowerSeries<T> {
        self.sub_series(rhs)
    }
}

impl<T: Scalar> Mul for &PowerSeries<T> {
    type Output = PowerSeries<T>;
    fn mul(self, rhs: Self) -> PowerSeries<T> {
        self.mul_series(rhs)
    }
}

impl<T: Scalar> Neg for &PowerSeries<T> {
    type Output = PowerSeries<T>;
    fn neg(self) -> PowerSeries<T> {
        self.map(|c| -c.clone())
    }
}

impl<T: Scalar> Add for PowerSeries<T> {
    type Output = PowerSeries<T>;
    fn add(self, rhs: Self) -> PowerSeries<T> {
        self.add_series(&rhs)
    }
}

impl<T: Scalar> Sub for PowerSeries<T> {
    type Output = PowerSeries<T>;
    fn sub(self, rhs: Self) -> PowerSeries<T> {
        self.sub_series(&rhs)
    }
}

impl<T: Scalar> Mul for PowerSeries<T> {
    type Output = PowerSeries<T>;
    fn mul(self, rhs: Self) -> PowerSeries<T> {
        self.mul_series(&rhs)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::from_ratio(n, d)
    }

    #[test]
    fn exp_of_z_is_factorial_series() {
        let e = PowerSeries::<BigRational>::variable(10).exp().unwrap();
        let mut fact = 1i64;
        for k in 0..=10 {
            if k > 0 {
                fact *= k as i64;
            }
            assert_eq!(e.coeff(k), q(1, fact));
        }
    }

    #[test]
    fn ln_one_plus_z() {
        let f = PowerSeries::new(vec![q(1, 1), q(1, 1), q(0, 1), q(0, 1), q(0, 1), q(0, 1)]);
        let l = f.ln().unwrap();
        for k in 1..=5 {
            let sign = if k % 2 == 1 { 1 } else { -1 };
            assert_eq!(l.coeff(k), q(sign, k as i64));
        }
    }

    #[test]
    fn sqrt_squares_back() {
        let f = PowerSeries::new(vec![q(1, 1), q(3, 7), q(-2, 5), q(1, 9), q(4, 1)]);
        let r = f.sqrt().unwrap();
        assert_eq!(r.mul_series(&r), f);
    }

    #[test]
    fn revert_tan_arctan() {
        // z + z^2 reverted: Catalan numbers with alternating signs
        let f = PowerSeries::new(vec![q(0, 1), q(1, 1), q(1, 1), q(0, 1), q(0, 1), q(0, 1), q(0, 1)]);
        let g = f.revert().unwrap();
        let catalan = [0i64, 1, -1, 2, -5, 14, -42];
        for (k, &c) in catalan.iter().enumerate() {
            assert_eq!(g.coeff(k), q(c, 1));
        }
        assert_eq!(f.compose(&g).unwrap(), PowerSeries::variable(6));
    }

    #[test]
    fn recip_and_divide() {
        let f = PowerSeries::new(vec![q(2, 1), q(1, 1), q(0, 1), q(5, 3)]);
        let r = f.recip().unwrap();
        assert_eq!(f.mul_series(&r), PowerSeries::one(3));
        assert!(PowerSeries::<BigRational>::variable(3).recip().is_err());
        let z3 = PowerSeries::<f64>::new(vec![0.0, 0.0, 1.0, 2.0]);
        assert_eq!(z3.divide_by_power(2).unwrap().coeffs(), &[1.0, 2.0]);
        assert!(z3.divide_by_power(3).is_err());
    }

    #[test]
    fn pow_matches_repeated_product() {
        let f = PowerSeries::new(vec![q(1, 1), q(-1, 2), q(1, 3), q(2, 1)]);
        let cube = f.pow(q(3, 1)).unwrap();
        assert_eq!(cube, f.mul_series(&f).mul_series(&f));
    }

    #[test]
    fn gaussian_conversion() {
        let z = Complex::new(q(1, 3), q(-5, 2));
        let c = gaussian_to_c64(&z);
        assert!((c.re - 1.0 / 3.0).abs() < 1e-16 && c.im == -2.5);
    }
}
