//! Truncated formal power series over a [`Scalar`] field.
//!
//! A series of order `N` stores exactly `N + 1` coefficients `c[0..=N]`.
//! Binary operations truncate to the smaller operand order; nothing is ever
//! padded with implicit zeros.

use crate::error::{Error, Result};
use crate::scalar::Scalar;

#[derive(Debug, Clone, PartialEq)]
pub struct TruncatedSeries<T> {
    coeffs: Vec<T>,
}

impl<T: Scalar> TruncatedSeries<T> {
    /// Panics if `coeffs` is empty; a series always has a constant term slot.
    pub fn from_coeffs(coeffs: Vec<T>) -> Self {
        assert!(!coeffs.is_empty(), "series needs at least one coefficient");
        Self { coeffs }
    }

    pub fn zero(order: usize) -> Self {
        Self::from_coeffs(vec![T::zero(); order + 1])
    }

    pub fn constant(value: T, order: usize) -> Self {
        let mut s = Self::zero(order);
        s.coeffs[0] = value;
        s
    }

    pub fn one(order: usize) -> Self {
        Self::constant(T::one(), order)
    }

    /// `coefficient * z^degree`, truncated at `order`.
    pub fn monomial(coefficient: T, degree: usize, order: usize) -> Self {
        let mut s = Self::zero(order);
        if degree <= order {
            s.coeffs[degree] = coefficient;
        }
        s
    }

    /// Expansion of `1 / (1 - r z)`.
    pub fn geometric(ratio: T, order: usize) -> Self {
        let mut coeffs = Vec::with_capacity(order + 1);
        let mut term = T::one();
        for _ in 0..=order {
            coeffs.push(term.clone());
            term = term * ratio.clone();
        }
        Self::from_coeffs(coeffs)
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<T> {
        self.coeffs
    }

    /// Coefficient of `z^k`; `None` beyond the truncation order.
    pub fn coeff(&self, k: usize) -> Option<&T> {
        self.coeffs.get(k)
    }

    pub fn truncate(&self, order: usize) -> Self {
        let order = order.min(self.order());
        Self::from_coeffs(self.coeffs[..=order].to_vec())
    }

    pub fn map<U: Scalar>(&self, f: impl Fn(&T) -> U) -> TruncatedSeries<U> {
        TruncatedSeries::from_coeffs(self.coeffs.iter().map(f).collect())
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.order().min(other.order());
        Self::from_coeffs(
            (0..=n)
                .map(|k| self.coeffs[k].clone() + other.coeffs[k].clone())
                .collect(),
        )
    }

    pub fn sub(&self, other: &Self) -> Self {
        let n = self.order().min(other.order());
        Self::from_coeffs(
            (0..=n)
                .map(|k| self.coeffs[k].clone() - other.coeffs[k].clone())
                .collect(),
        )
    }

    pub fn neg(&self) -> Self {
        self.map(|c| -c.clone())
    }

    pub fn scale(&self, factor: &T) -> Self {
        self.map(|c| c.clone() * factor.clone())
    }

    /// Cauchy product.
    pub fn mul(&self, other: &Self) -> Self {
        let n = self.order().min(other.order());
        let coeffs = (0..=n)
            .map(|k| {
                (0..=k).fold(T::zero(), |acc, j| {
                    acc + self.coeffs[j].clone() * other.coeffs[k - j].clone()
                })
            })
            .collect();
        Self::from_coeffs(coeffs)
    }

    /// Quotient by forward substitution: `q[k] = (a[k] - sum_{j<k} q[j] b[k-j]) / b[0]`.
    pub fn div(&self, divisor: &Self) -> Result<Self> {
        let b0 = &divisor.coeffs[0];
        if b0.is_negligible() {
            return Err(Error::ZeroConstantTerm);
        }
        let n = self.order().min(divisor.order());
        let mut q: Vec<T> = Vec::with_capacity(n + 1);
        for k in 0..=n {
            let mut acc = self.coeffs[k].clone();
            for (j, qj) in q.iter().enumerate() {
                acc = acc - qj.clone() * divisor.coeffs[k - j].clone();
            }
            q.push(acc / b0.clone());
        }
        Ok(Self::from_coeffs(q))
    }

    /// Termwise derivative. The result has order `N - 1`, except that the
    /// derivative of an order-0 series is the order-0 zero series.
    pub fn derivative(&self) -> Self {
        if self.order() == 0 {
            return Self::zero(0);
        }
        Self::from_coeffs(
            (1..=self.order())
                .map(|k| T::from_int(k as i64) * self.coeffs[k].clone())
                .collect(),
        )
    }

    /// Antiderivative vanishing at the origin; raises the order by one.
    pub fn integrate_from_zero(&self) -> Self {
        let mut coeffs = Vec::with_capacity(self.coeffs.len() + 1);
        coeffs.push(T::zero());
        for (k, c) in self.coeffs.iter().enumerate() {
            coeffs.push(c.clone() / T::from_int(k as i64 + 1));
        }
        Self::from_coeffs(coeffs)
    }

    /// Multiplication by `z`; raises the order by one.
    pub fn mul_by_z(&self) -> Self {
        let mut coeffs = Vec::with_capacity(self.coeffs.len() + 1);
        coeffs.push(T::zero());
        coeffs.extend(self.coeffs.iter().cloned());
        Self::from_coeffs(coeffs)
    }

    /// Exact division by `z`; requires a zero constant term.
    pub fn div_by_z(&self) -> Result<Self> {
        if !self.coeffs[0].is_zero() {
            return Err(Error::NonzeroConstantTerm);
        }
        if self.order() == 0 {
            return Ok(Self::zero(0));
        }
        Ok(Self::from_coeffs(self.coeffs[1..].to_vec()))
    }

    /// `exp(a)` for `a(0) = 0`, from `E' = a' E`:
    /// `n E[n] = sum_{k=1..n} k a[k] E[n-k]`.
    pub fn exp_series(&self) -> Result<Self> {
        if !self.coeffs[0].is_zero() {
            return Err(Error::NonzeroConstantTerm);
        }
        let n = self.order();
        let mut e: Vec<T> = Vec::with_capacity(n + 1);
        e.push(T::one());
        for m in 1..=n {
            let mut acc = T::zero();
            for k in 1..=m {
                acc = acc + T::from_int(k as i64) * self.coeffs[k].clone() * e[m - k].clone();
            }
            e.push(acc / T::from_int(m as i64));
        }
        Ok(Self::from_coeffs(e))
    }

    /// `(1 - z^degree)^(alpha_num / alpha_den)` by the generalized binomial
    /// series, truncated at `order`.
    pub fn pow_binomial(alpha_num: i64, alpha_den: i64, degree: usize, order: usize) -> Self {
        assert!(degree >= 1, "monomial degree must be positive");
        assert!(alpha_den != 0, "zero exponent denominator");
        let alpha = T::from_ratio(alpha_num, alpha_den);
        let mut s = Self::zero(order);
        // (-1)^k binom(alpha, k) = prod_{j<k} (j - alpha) / (j + 1)
        let mut term = T::one();
        let mut k = 0usize;
        while k * degree <= order {
            s.coeffs[k * degree] = term.clone();
            term = term * (T::from_int(k as i64) - alpha.clone()) / T::from_int(k as i64 + 1);
            k += 1;
        }
        s
    }

    /// `f(eps z)` for a scalar `eps`.
    pub fn substitute_scaled(&self, eps: &T) -> Self {
        let mut power = T::one();
        let mut coeffs = Vec::with_capacity(self.coeffs.len());
        for c in &self.coeffs {
            coeffs.push(c.clone() * power.clone());
            power = power * eps.clone();
        }
        Self::from_coeffs(coeffs)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{ratio, Rational};
    use num_complex::Complex64;

    type Q = TruncatedSeries<Rational>;

    fn q(coeffs: &[(i64, i64)]) -> Q {
        Q::from_coeffs(coeffs.iter().map(|&(n, d)| ratio(n, d)).collect())
    }

    fn ints(values: &[i64]) -> Q {
        Q::from_coeffs(values.iter().map(|&n| ratio(n, 1)).collect())
    }

    #[test]
    fn add_examples() {
        let s = ints(&[1, 1]).add(&ints(&[1, -1]));
        assert_eq!(s, ints(&[2, 0]));
        let a = ints(&[3, 1, 4]);
        assert_eq!(a.add(&Q::zero(2)), a);
        // 1/(1-z) + 1/(1+z) = 2 + 2z^2 + 2z^4
        let g = Q::geometric(ratio(1, 1), 4).add(&Q::geometric(ratio(-1, 1), 4));
        assert_eq!(g, ints(&[2, 0, 2, 0, 2]));
    }

    #[test]
    fn add_truncates_to_smaller_order() {
        let s = ints(&[1, 2, 3, 4]).add(&ints(&[1, 1]));
        assert_eq!(s.order(), 1);
        assert_eq!(s, ints(&[2, 3]));
    }

    #[test]
    fn mul_examples() {
        let n = 6;
        let one_minus_z = Q::from_coeffs(
            std::iter::once(ratio(1, 1))
                .chain(std::iter::once(ratio(-1, 1)))
                .chain(std::iter::repeat_n(ratio(0, 1), n - 1))
                .collect(),
        );
        assert_eq!(one_minus_z.mul(&Q::geometric(ratio(1, 1), n)), Q::one(n));

        // (1-z)^{-2} = sum (k+1) z^k, so z (1-z)^{-2} has k at z^k.
        let inv_sq = Q::one(n).div(&Q::pow_binomial(2, 1, 1, n)).unwrap();
        let koebe = Q::monomial(ratio(1, 1), 1, n).mul(&inv_sq);
        let expected: Vec<i64> = (0..=n as i64).collect();
        assert_eq!(koebe, ints(&expected));

        assert_eq!(ints(&[1, 2, 3]).mul(&Q::zero(2)), Q::zero(2));
    }

    #[test]
    fn div_examples() {
        let num = Q::monomial(ratio(1, 1), 3, 9).add(&Q::one(9));
        let den = Q::one(9).sub(&Q::monomial(ratio(1, 1), 3, 9));
        let quotient = num.div(&den).unwrap();
        assert_eq!(quotient, ints(&[1, 0, 0, 2, 0, 0, 2, 0, 0, 2]));

        let a = ints(&[5, -1, 7]);
        assert_eq!(a.div(&Q::one(2)).unwrap(), a);

        let one_minus_z = ints(&[1, -1, 0, 0, 0]);
        assert_eq!(Q::one(4).div(&one_minus_z).unwrap(), ints(&[1, 1, 1, 1, 1]));
    }

    #[test]
    fn div_rejects_vanishing_constant_term() {
        assert_eq!(
            Q::one(3).div(&ints(&[0, 1, 0, 0])),
            Err(Error::ZeroConstantTerm)
        );
        let tiny = TruncatedSeries::from_coeffs(vec![
            Complex64::new(1e-13, 0.0),
            Complex64::new(1.0, 0.0),
        ]);
        let one = TruncatedSeries::<Complex64>::one(1);
        assert_eq!(one.div(&tiny), Err(Error::ZeroConstantTerm));
        let ok = TruncatedSeries::from_coeffs(vec![
            Complex64::new(1e-11, 0.0),
            Complex64::new(1.0, 0.0),
        ]);
        assert!(one.div(&ok).is_ok());
    }

    #[test]
    fn derivative_examples() {
        assert_eq!(ints(&[0, 1, 1]).derivative(), ints(&[1, 2]));
        assert_eq!(ints(&[7]).derivative(), Q::zero(0));
        assert_eq!(ints(&[7, 0, 0]).derivative(), Q::zero(1));
        let koebe = ints(&[0, 1, 2, 3, 4]);
        assert_eq!(koebe.derivative(), ints(&[1, 4, 9, 16]));
    }

    #[test]
    fn integrate_examples() {
        let s = ints(&[1, 0, 0, 2, 0, 0, 2]).integrate_from_zero();
        assert_eq!(
            s,
            q(&[(0, 1), (1, 1), (0, 1), (0, 1), (1, 2), (0, 1), (0, 1), (2, 7)])
        );
        assert_eq!(Q::zero(3).integrate_from_zero(), Q::zero(4));
        assert_eq!(Q::one(0).integrate_from_zero(), ints(&[0, 1]));
    }

    #[test]
    fn exp_examples() {
        assert_eq!(Q::zero(5).exp_series().unwrap(), Q::one(5));

        let e = Q::monomial(ratio(1, 1), 1, 6).exp_series().unwrap();
        let mut fact = 1i64;
        for k in 0..=6usize {
            if k > 0 {
                fact *= k as i64;
            }
            assert_eq!(e.coeffs()[k], ratio(1, fact));
        }

        // -(2/3) log(1 - z^3) = (2/3) sum z^{3k}/k
        let n = 9;
        let mut log_part = Q::zero(n);
        for k in 1..=n / 3 {
            log_part.coeffs[3 * k] = ratio(2, 3 * k as i64);
        }
        let e = log_part.exp_series().unwrap();
        assert_eq!(
            e,
            q(&[
                (1, 1),
                (0, 1),
                (0, 1),
                (2, 3),
                (0, 1),
                (0, 1),
                (5, 9),
                (0, 1),
                (0, 1),
                (40, 81)
            ])
        );
    }

    #[test]
    fn exp_rejects_constant_term() {
        assert_eq!(Q::one(3).exp_series(), Err(Error::NonzeroConstantTerm));
    }

    #[test]
    fn pow_binomial_examples() {
        let s = Q::pow_binomial(-2, 1, 1, 5);
        assert_eq!(s, ints(&[1, 2, 3, 4, 5, 6]));
        let s = Q::pow_binomial(-2, 3, 3, 9);
        assert_eq!(
            s,
            q(&[
                (1, 1),
                (0, 1),
                (0, 1),
                (2, 3),
                (0, 1),
                (0, 1),
                (5, 9),
                (0, 1),
                (0, 1),
                (40, 81)
            ])
        );
        assert_eq!(Q::pow_binomial(0, 1, 2, 4), Q::one(4));
    }

    #[test]
    fn div_by_z_requires_zero_constant() {
        assert_eq!(ints(&[0, 1, 2]).div_by_z().unwrap(), ints(&[1, 2]));
        assert_eq!(ints(&[1, 1]).div_by_z(), Err(Error::NonzeroConstantTerm));
        assert_eq!(ints(&[0, 3]).mul_by_z().div_by_z().unwrap(), ints(&[0, 3]));
    }

    #[test]
    fn substitute_scaled_rotates() {
        let koebe = ints(&[0, 1, 2, 3, 4]);
        assert_eq!(
            koebe.substitute_scaled(&ratio(-1, 1)),
            ints(&[0, -1, 2, -3, 4])
        );
    }
}
