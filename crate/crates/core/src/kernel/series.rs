use super::lin::Module;
use super::rational::Rational;
use crate::error::{EkqError, Result};
use num_traits::One;

/// Truncation order used throughout: coefficients of h^0, h^1, h^2.
pub const ORDER: usize = 3;

/// Power series in h truncated at `order` (terms of degree >= order are discarded).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HSeries<C> {
    coeffs: Vec<C>,
}

impl<C: Module> HSeries<C> {
    pub fn zero(order: usize) -> Self {
        HSeries { coeffs: (0..order).map(|_| C::null()).collect() }
    }

    pub fn constant(c: C, order: usize) -> Self {
        let mut s = Self::zero(order);
        s.coeffs[0] = c;
        s
    }

    pub fn from_coeffs(coeffs: Vec<C>) -> Self {
        assert!(!coeffs.is_empty(), "series needs at least one coefficient");
        HSeries { coeffs }
    }

    pub fn order(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeff(&self, k: usize) -> &C {
        &self.coeffs[k]
    }

    pub fn coeff_mut(&mut self, k: usize) -> &mut C {
        &mut self.coeffs[k]
    }

    pub fn coeffs(&self) -> &[C] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<C> {
        self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_null())
    }

    pub fn add(&self, other: &Self) -> Self {
        self.add_scaled(other, &Rational::one())
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add_scaled(other, &-Rational::one())
    }

    pub fn add_scaled(&self, other: &Self, c: &Rational) -> Self {
        assert_eq!(self.order(), other.order());
        let mut out = self.clone();
        for (a, b) in out.coeffs.iter_mut().zip(&other.coeffs) {
            a.add_scaled(b, c);
        }
        out
    }

    pub fn scale(&self, c: &Rational) -> Self {
        HSeries { coeffs: self.coeffs.iter().map(|x| x.scaled(c)).collect() }
    }

    /// Multiply by h^k, dropping what falls off the end.
    pub fn shift(&self, k: usize) -> Self {
        let n = self.order();
        let mut out = Self::zero(n);
        for i in 0..n.saturating_sub(k) {
            out.coeffs[i + k] = self.coeffs[i].clone();
        }
        out
    }

    pub fn map<D: Module>(&self, mut f: impl FnMut(&C) -> D) -> HSeries<D> {
        HSeries { coeffs: self.coeffs.iter().map(|c| f(c)).collect() }
    }

    /// Extend an h-linear map whose value on each coefficient is itself a series.
    pub fn bind<D: Module>(&self, mut f: impl FnMut(&C) -> Result<HSeries<D>>) -> Result<HSeries<D>> {
        let n = self.order();
        let mut out = HSeries::<D>::zero(n);
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_null() {
                continue;
            }
            let img = f(c)?;
            if img.order() != n {
                return Err(EkqError::Dimension("series orders differ".into()));
            }
            for i in 0..n - k {
                out.coeffs[i + k].add_assign(&img.coeffs[i]);
            }
        }
        Ok(out)
    }

    /// Lowest-order coefficient which is nonzero, if any.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_null())
    }
}

/// Coefficient of h^k in the result is sum over i+j=k of mul(x_i, y_j).
pub fn series_mul<A: Module, B: Module, C: Module>(
    x: &HSeries<A>,
    y: &HSeries<B>,
    mut mul: impl FnMut(&A, &B) -> C,
) -> Result<HSeries<C>> {
    if x.order() != y.order() {
        return Err(EkqError::Dimension(format!("series orders {} and {} differ", x.order(), y.order())));
    }
    let n = x.order();
    let mut out = HSeries::<C>::zero(n);
    for i in 0..n {
        if x.coeffs[i].is_null() {
            continue;
        }
        for j in 0..n - i {
            if y.coeffs[j].is_null() {
                continue;
            }
            let p = mul(&x.coeffs[i], &y.coeffs[j]);
            out.coeffs[i + j].add_assign(&p);
        }
    }
    Ok(out)
}

/// Inverse in a ring whose h^0 coefficient of `x` must equal `one`.
pub fn series_inverse<C: Module>(x: &HSeries<C>, one: &C, mut mul: impl FnMut(&C, &C) -> C) -> Result<HSeries<C>> {
    if &x.coeffs[0] != one {
        return Err(EkqError::Invalid("series inverse needs a unit leading coefficient".into()));
    }
    let n = x.order();
    let mut inv = HSeries::<C>::zero(n);
    inv.coeffs[0] = one.clone();
    // y_k = -sum_{i=1..k} x_i y_{k-i}
    for k in 1..n {
        let mut acc = C::null();
        for i in 1..=k {
            if x.coeffs[i].is_null() || inv.coeffs[k - i].is_null() {
                continue;
            }
            acc.add_assign(&mul(&x.coeffs[i], &inv.coeffs[k - i]));
        }
        inv.coeffs[k] = acc.scaled(&-Rational::one());
    }
    Ok(inv)
}

/// exp(h c) truncated at the order: sum_k h^k c^k / k!.
pub fn series_exp<C: Module>(c: &C, one: &C, order: usize, mut mul: impl FnMut(&C, &C) -> C) -> HSeries<C> {
    let mut out = HSeries::<C>::zero(order);
    let mut pow = one.clone();
    let mut fact = Rational::one();
    for k in 0..order {
        if k > 0 {
            pow = mul(&pow, c);
            fact *= Rational::from_integer(k.into());
        }
        out.coeffs[k] = pow.scaled(&(Rational::one() / &fact));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::rational::{int, rat};

    fn s(a: i64, b: i64, c: i64) -> HSeries<Rational> {
        HSeries::from_coeffs(vec![int(a), int(b), int(c)])
    }

    #[test]
    fn telescoping() {
        let p = series_mul(&s(1, 3, 0), &s(1, -3, 0), |a, b| a * b).unwrap();
        assert_eq!(p, s(1, 0, -9));
    }

    #[test]
    fn geometric_inverse() {
        let inv = series_inverse(&s(1, 2, 0), &int(1), |a, b| a * b).unwrap();
        assert_eq!(inv, s(1, -2, 4));
        let k = HSeries::from_coeffs(vec![int(1), int(0), rat(5, 24)]);
        let inv = series_inverse(&k, &int(1), |a, b| a * b).unwrap();
        assert_eq!(inv, HSeries::from_coeffs(vec![int(1), int(0), rat(-5, 24)]));
        assert!(series_inverse(&s(2, 0, 0), &int(1), |a, b| a * b).is_err());
    }

    #[test]
    fn exp_truncation() {
        let e = series_exp(&int(2), &int(1), 3, |a, b| a * b);
        assert_eq!(e, HSeries::from_coeffs(vec![int(1), int(2), int(2)]));
    }

    #[test]
    fn order_mismatch() {
        let a = HSeries::from_coeffs(vec![int(1), int(1)]);
        assert!(series_mul(&a, &s(1, 0, 0), |x, y| x * y).is_err());
    }
}
