//! From Carathéodory coefficients `c_k` to the Taylor coefficients `a_k` of
//! `f(z) = z + a_2 z^2 + ...` in one of the three classes.
//!
//! The recurrences are the production path. [`ode`] solves the defining
//! differential identities with series algebra instead and is kept as an
//! independent check.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Slack on the classwise coefficient caps.
pub const CAP_SLACK: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum ClassTag {
    /// `Re f'(z) > 0`
    BoundedTurning,
    /// `Re z f'(z) / f(z) > 0`
    Starlike,
    /// `Re (1 + z f''(z) / f'(z)) > 0`
    Convex,
}

impl ClassTag {
    pub const ALL: [ClassTag; 3] = [ClassTag::BoundedTurning, ClassTag::Starlike, ClassTag::Convex];

    /// Cap on `|a_k|`: `2/k`, `k` and `1` respectively.
    pub fn coefficient_cap(self, k: usize) -> f64 {
        match self {
            ClassTag::BoundedTurning => 2.0 / k as f64,
            ClassTag::Starlike => k as f64,
            ClassTag::Convex => 1.0,
        }
    }

    /// Short name used on the command line.
    pub fn cli_name(self) -> &'static str {
        match self {
            ClassTag::BoundedTurning => "r",
            ClassTag::Starlike => "star",
            ClassTag::Convex => "convex",
        }
    }

    pub fn coeffs<T: Scalar>(self, c: &[T], n: usize) -> Result<CoefficientSequence<T>> {
        match self {
            ClassTag::BoundedTurning => coeffs_bounded_turning(c, n),
            ClassTag::Starlike => coeffs_starlike(c, n),
            ClassTag::Convex => coeffs_convex(c, n),
        }
    }
}

impl fmt::Display for ClassTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.cli_name())
    }
}

impl FromStr for ClassTag {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "r" => Ok(ClassTag::BoundedTurning),
            "star" => Ok(ClassTag::Starlike),
            "convex" => Ok(ClassTag::Convex),
            other => Err(format!("unknown class '{other}' (expected r, star or convex)")),
        }
    }
}

/// Normalized coefficients; `a(0) = 0` and `a(1) = 1`.
#[derive(Debug, Clone, PartialEq)]
pub struct CoefficientSequence<T> {
    coeffs: Vec<T>,
    class: ClassTag,
}

impl<T: Scalar> CoefficientSequence<T> {
    /// `coeffs[k]` is `a_k`. Checks normalization and the classwise caps.
    pub fn new(class: ClassTag, coeffs: Vec<T>) -> Result<Self> {
        let s = Self { coeffs, class };
        s.check()?;
        Ok(s)
    }

    /// Skips the cap check. Used for non-member inputs to the functionals.
    pub fn unchecked(class: ClassTag, coeffs: Vec<T>) -> Self {
        Self { coeffs, class }
    }

    pub fn check(&self) -> Result<()> {
        if self.coeffs.len() < 2 || !self.coeffs[0].is_zero() || !self.coeffs[1].is_one() {
            return Err(Error::NotNormalized(format!(
                "expected a_0 = 0 and a_1 = 1, got {:?}",
                &self.coeffs[..self.coeffs.len().min(2)]
            )));
        }
        for (k, a) in self.coeffs.iter().enumerate().skip(2) {
            let cap = self.class.coefficient_cap(k);
            let modulus = a.modulus();
            if !(modulus <= cap + CAP_SLACK) {
                return Err(Error::CapViolated {
                    index: k,
                    modulus,
                    cap,
                });
            }
        }
        Ok(())
    }

    pub fn class(&self) -> ClassTag {
        self.class
    }

    /// `a_k`, or an error when `k` is beyond the stored order.
    pub fn a(&self, k: usize) -> Result<&T> {
        self.coeffs.get(k).ok_or(Error::InsufficientCoefficients {
            needed: k,
            available: self.order(),
        })
    }

    pub fn order(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    pub fn map<U: Scalar>(&self, f: impl Fn(&T) -> U) -> CoefficientSequence<U> {
        CoefficientSequence {
            coeffs: self.coeffs.iter().map(f).collect(),
            class: self.class,
        }
    }
}

fn require(c_len: usize, n: usize) -> Result<()> {
    if n < 1 {
        return Err(Error::InsufficientCoefficients {
            needed: 1,
            available: 0,
        });
    }
    if c_len + 1 < n {
        return Err(Error::InsufficientCoefficients {
            needed: n - 1,
            available: c_len,
        });
    }
    Ok(())
}

fn start<T: Scalar>(n: usize) -> Vec<T> {
    let mut a = vec![T::zero(); n + 1];
    a[1] = T::one();
    a
}

/// `f' = p`: `a_k = c_{k-1} / k`. `c[0]` holds `c_1`.
pub fn coeffs_bounded_turning<T: Scalar>(c: &[T], n: usize) -> Result<CoefficientSequence<T>> {
    require(c.len(), n)?;
    let mut a: Vec<T> = start(n);
    for k in 2..=n {
        a[k] = c[k - 2].clone() / T::from_int(k as i64);
    }
    Ok(CoefficientSequence::unchecked(ClassTag::BoundedTurning, a))
}

/// `z f' = f p`: `(k-1) a_k = sum_{j=1}^{k-1} a_j c_{k-j}`.
pub fn coeffs_starlike<T: Scalar>(c: &[T], n: usize) -> Result<CoefficientSequence<T>> {
    require(c.len(), n)?;
    let mut a: Vec<T> = start(n);
    for k in 2..=n {
        let mut acc = T::zero();
        for j in 1..k {
            acc = acc + a[j].clone() * c[k - j - 1].clone();
        }
        a[k] = acc / T::from_int(k as i64 - 1);
    }
    Ok(CoefficientSequence::unchecked(ClassTag::Starlike, a))
}

/// `(z f')' = f' p`: `k (k-1) a_k = sum_{j=1}^{k-1} j a_j c_{k-j}`.
pub fn coeffs_convex<T: Scalar>(c: &[T], n: usize) -> Result<CoefficientSequence<T>> {
    require(c.len(), n)?;
    let mut a: Vec<T> = start(n);
    for k in 2..=n {
        let mut acc = T::zero();
        for j in 1..k {
            acc = acc + T::from_int(j as i64) * a[j].clone() * c[k - j - 1].clone();
        }
        a[k] = acc / T::from_int((k * (k - 1)) as i64);
    }
    Ok(CoefficientSequence::unchecked(ClassTag::Convex, a))
}

/// Series solutions of the three defining identities.
///
/// * bounded turning: `f = ∫ p`
/// * starlike: `f = z exp(∫ (p - 1)/z)`
/// * convex: `f = ∫ exp(∫ (p - 1)/z)`
pub mod ode {
    use super::*;
    use crate::series::TruncatedSeries;

    /// `p = 1 + c_1 z + ... + c_{n-1} z^{n-1}`.
    pub fn caratheodory_series<T: Scalar>(c: &[T], n: usize) -> Result<TruncatedSeries<T>> {
        require(c.len(), n)?;
        let mut coeffs = Vec::with_capacity(n);
        coeffs.push(T::one());
        coeffs.extend(c.iter().take(n.saturating_sub(1)).cloned());
        Ok(TruncatedSeries::from_coeffs(coeffs))
    }

    fn log_derivative_integral<T: Scalar>(p: &TruncatedSeries<T>) -> Result<TruncatedSeries<T>> {
        let order = p.order();
        Ok(p.sub(&TruncatedSeries::one(order)).div_by_z()?.integrate_from_zero())
    }

    pub fn solve<T: Scalar>(class: ClassTag, c: &[T], n: usize) -> Result<TruncatedSeries<T>> {
        let p = caratheodory_series(c, n)?;
        let f = match class {
            ClassTag::BoundedTurning => p.integrate_from_zero(),
            ClassTag::Starlike => {
                if n < 2 {
                    return Ok(TruncatedSeries::monomial(T::one(), 1, 1));
                }
                log_derivative_integral(&p)?.exp_series()?.mul_by_z()
            }
            ClassTag::Convex => {
                if n < 2 {
                    return Ok(TruncatedSeries::monomial(T::one(), 1, 1));
                }
                log_derivative_integral(&p)?.exp_series()?.integrate_from_zero()
            }
        };
        Ok(f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{ratio, Rational};

    fn q(values: &[i64]) -> Vec<Rational> {
        values.iter().map(|&v| ratio(v, 1)).collect()
    }

    #[test]
    fn bounded_turning_examples() {
        let n = 8;
        let twos = q(&[2; 8]);
        let a = coeffs_bounded_turning(&twos, n).unwrap();
        for k in 2..=n {
            assert_eq!(a.a(k).unwrap(), &ratio(2, k as i64));
        }
        a.check().unwrap();

        let a = coeffs_bounded_turning(&q(&[0, 0, 2, 0, 0, 0, 0]), n).unwrap();
        for k in 2..=n {
            let expected = if k == 4 { ratio(1, 2) } else { ratio(0, 1) };
            assert_eq!(a.a(k).unwrap(), &expected);
        }

        let a = coeffs_bounded_turning(&q(&[0; 7]), n).unwrap();
        assert!(a.coeffs()[2..].iter().all(|v| *v == ratio(0, 1)));
    }

    #[test]
    fn starlike_examples() {
        let n = 9;
        let a = coeffs_starlike(&q(&[2; 8]), n).unwrap();
        for k in 1..=n {
            assert_eq!(a.a(k).unwrap(), &ratio(k as i64, 1));
        }
        let a = coeffs_starlike(&q(&[0; 8]), n).unwrap();
        assert_eq!(a.coeffs()[1..], q(&[1, 0, 0, 0, 0, 0, 0, 0, 0])[..]);

        let a = coeffs_starlike(&q(&[0, 2, 0]), 4).unwrap();
        assert_eq!(a.coeffs(), &q(&[0, 1, 0, 1, 0])[..]);
    }

    #[test]
    fn starlike_matches_low_order_identities() {
        // a2 = c1, 2 a3 = c2 + c1^2, 6 a4 = 2 c3 + 3 c1 c2 + c1^3
        let c = vec![ratio(1, 3), ratio(-5, 7), ratio(3, 4)];
        let a = coeffs_starlike(&c, 4).unwrap();
        let (c1, c2, c3) = (c[0].clone(), c[1].clone(), c[2].clone());
        assert_eq!(a.a(2).unwrap(), &c1);
        assert_eq!(
            a.a(3).unwrap() * ratio(2, 1),
            c2.clone() + c1.clone() * c1.clone()
        );
        assert_eq!(
            a.a(4).unwrap() * ratio(6, 1),
            ratio(2, 1) * c3 + ratio(3, 1) * c1.clone() * c2 + c1.clone() * c1.clone() * c1
        );
    }

    #[test]
    fn convex_examples() {
        let n = 9;
        let a = coeffs_convex(&q(&[2; 8]), n).unwrap();
        for k in 1..=n {
            assert_eq!(a.a(k).unwrap(), &ratio(1, 1));
        }
        let a = coeffs_convex(&q(&[0; 8]), n).unwrap();
        assert!(a.coeffs()[2..].iter().all(|v| *v == ratio(0, 1)));

        let a = coeffs_convex(&q(&[0, 0, 2]), 4).unwrap();
        assert_eq!(a.coeffs(), &[ratio(0, 1), ratio(1, 1), ratio(0, 1), ratio(0, 1), ratio(1, 6)]);
    }

    #[test]
    fn convex_matches_low_order_identities() {
        // 2 a2 = c1, 6 a3 = c2 + c1^2, 24 a4 = 2 c3 + 3 c1 c2 + c1^3
        let c = vec![ratio(-2, 5), ratio(1, 9), ratio(7, 6)];
        let a = coeffs_convex(&c, 4).unwrap();
        let (c1, c2, c3) = (c[0].clone(), c[1].clone(), c[2].clone());
        assert_eq!(a.a(2).unwrap() * ratio(2, 1), c1);
        assert_eq!(
            a.a(3).unwrap() * ratio(6, 1),
            c2.clone() + c1.clone() * c1.clone()
        );
        assert_eq!(
            a.a(4).unwrap() * ratio(24, 1),
            ratio(2, 1) * c3 + ratio(3, 1) * c1.clone() * c2 + c1.clone() * c1.clone() * c1
        );
    }

    #[test]
    fn insufficient_coefficients() {
        let err = coeffs_starlike(&q(&[1, 1]), 5).unwrap_err();
        assert_eq!(
            err,
            Error::InsufficientCoefficients {
                needed: 4,
                available: 2
            }
        );
        assert!(coeffs_convex(&q(&[1, 1, 1, 1]), 5).is_ok());
        assert!(ode::solve(ClassTag::Convex, &q(&[1]), 5).is_err());
    }

    #[test]
    fn cap_and_normalization_checks() {
        let bad = CoefficientSequence::new(ClassTag::Convex, q(&[0, 1, 2]));
        assert!(matches!(bad, Err(Error::CapViolated { index: 2, .. })));
        let unnormalized = CoefficientSequence::new(ClassTag::Convex, q(&[0, 0, 1]));
        assert!(matches!(unnormalized, Err(Error::NotNormalized(_))));
    }

    #[test]
    fn ode_matches_recurrence_exactly() {
        let c = vec![ratio(1, 2), ratio(-1, 3), ratio(2, 5), ratio(0, 1), ratio(3, 7), ratio(-1, 1)];
        for class in ClassTag::ALL {
            let rec = class.coeffs(&c, 7).unwrap();
            let ode = ode::solve(class, &c, 7).unwrap();
            assert_eq!(rec.coeffs(), ode.coeffs(), "{class:?}");
        }
    }

    #[test]
    fn class_names_parse() {
        for class in ClassTag::ALL {
            assert_eq!(class.cli_name().parse::<ClassTag>().unwrap(), class);
        }
        assert!("bogus".parse::<ClassTag>().is_err());
    }
}
