//! Series expansions of the extremal functions for `|a2 a3 - a4|` and the
//! sharpness checks built on them.
//!
//! | class | formula variant | derived variant |
//! |-------|-----------------|-----------------|
//! | bounded turning | `∫ (1 + t^3)/(1 - t^3) dt` | `p = (1 + z^3)/(1 - z^3)` through the recurrence |
//! | starlike | `z / (1 - z)^2` | `c_k = 2` through the recurrence |
//! | convex | `∫ s exp(∫ 2t^3/(1 - t^3) dt) ds` | `∫ (1 - t^3)^(-2/3) dt` |
//!
//! The convex formula variant has `f'(0) = 0`, so it is expanded and
//! reported but cannot be normalized.

use std::f64::consts::PI;
use std::fmt;

use num_complex::Complex64;
use num_traits::{One, Signed};
use serde::Serialize;

use crate::class_maps::{ClassTag, CoefficientSequence};
use crate::error::{Error, Result};
use crate::functionals::FunctionalName;
use crate::report::BoundReport;
use crate::scalar::{ratio, rational_to_f64, Rational, Scalar};
use crate::series::TruncatedSeries;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub enum Variant {
    PaperFormula,
    DerivedFormula,
    /// `f(z) -> conj(eps) f(eps z)` with `eps = exp(i angle)`; starlike only.
    Rotation(f64),
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Variant::PaperFormula => f.write_str("paper"),
            Variant::DerivedFormula => f.write_str("derived"),
            Variant::Rotation(angle) => write!(f, "rotation({angle})"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ExtremalSpec {
    pub class: ClassTag,
    pub variant: Variant,
}

impl ExtremalSpec {
    pub fn new(class: ClassTag, variant: Variant) -> Result<Self> {
        if matches!(variant, Variant::Rotation(_)) && class != ClassTag::Starlike {
            return Err(Error::InvalidParams(
                "rotated extremals are only defined for the starlike class".into(),
            ));
        }
        Ok(Self { class, variant })
    }

    /// Every built-in extremal candidate, including the `z/(1+z)^2` rotation.
    pub fn catalog() -> Vec<ExtremalSpec> {
        let mut out = Vec::new();
        for class in ClassTag::ALL {
            out.push(ExtremalSpec { class, variant: Variant::PaperFormula });
            out.push(ExtremalSpec { class, variant: Variant::DerivedFormula });
        }
        out.push(ExtremalSpec {
            class: ClassTag::Starlike,
            variant: Variant::Rotation(PI),
        });
        out
    }
}

const MIN_ORDER: usize = 5;

fn check_order(n: usize) -> Result<()> {
    if n < MIN_ORDER {
        return Err(Error::InsufficientCoefficients {
            needed: MIN_ORDER,
            available: n,
        });
    }
    Ok(())
}

type Q = TruncatedSeries<Rational>;

fn cube_ratio(order: usize) -> Result<Q> {
    // (1 + z^3) / (1 - z^3)
    let z3 = Q::monomial(ratio(1, 1), 3, order);
    Q::one(order).add(&z3).div(&Q::one(order).sub(&z3))
}

fn cube_caratheodory(n: usize) -> Result<Vec<Rational>> {
    Ok(cube_ratio(n)?.into_coeffs()[1..].to_vec())
}

/// `exp(i angle)` as `+1` or `-1` when the angle is a multiple of pi.
fn rational_unit(angle: f64) -> Option<Rational> {
    let turns = angle / PI;
    let k = turns.round();
    if (turns - k).abs() > 1e-12 {
        return None;
    }
    Some(if (k as i64).rem_euclid(2) == 0 {
        ratio(1, 1)
    } else {
        ratio(-1, 1)
    })
}

/// Raw Taylor coefficients `f(z) = sum a_k z^k` through `z^n`, exact.
pub fn extremal_series(spec: &ExtremalSpec, n: usize) -> Result<Q> {
    check_order(n)?;
    let f = match (spec.class, spec.variant) {
        (ClassTag::BoundedTurning, Variant::PaperFormula) => {
            cube_ratio(n - 1)?.integrate_from_zero()
        }
        (ClassTag::Starlike, Variant::PaperFormula) => {
            let z = Q::monomial(ratio(1, 1), 1, n);
            z.div(&Q::pow_binomial(2, 1, 1, n))?
        }
        (ClassTag::Starlike, Variant::Rotation(angle)) => {
            let eps = rational_unit(angle).ok_or(Error::IrrationalRotation(angle))?;
            let koebe = extremal_series(&ExtremalSpec::new(ClassTag::Starlike, Variant::PaperFormula)?, n)?;
            koebe.substitute_scaled(&eps).scale(&eps.conj())
        }
        (ClassTag::Convex, Variant::PaperFormula) => {
            let z3 = Q::monomial(ratio(1, 1), 3, n - 2);
            let inner = z3
                .scale(&ratio(2, 1))
                .div(&Q::one(n - 2).sub(&z3))?
                .integrate_from_zero();
            inner.exp_series()?.mul_by_z().integrate_from_zero().truncate(n)
        }
        (ClassTag::Convex, Variant::DerivedFormula) => {
            Q::pow_binomial(-2, 3, 3, n - 1).integrate_from_zero()
        }
        (class, Variant::DerivedFormula) => {
            let c = match class {
                ClassTag::BoundedTurning => cube_caratheodory(n)?,
                _ => vec![ratio(2, 1); n],
            };
            Q::from_coeffs(class.coeffs(&c, n)?.coeffs().to_vec())
        }
        (_, Variant::Rotation(_)) => {
            return Err(Error::InvalidParams("rotation needs the starlike class".into()))
        }
    };
    Ok(f)
}

/// Normalized exact coefficients of the extremal function.
pub fn extremal_coeffs(spec: &ExtremalSpec, n: usize) -> Result<CoefficientSequence<Rational>> {
    let f = extremal_series(spec, n)?;
    CoefficientSequence::new(spec.class, f.into_coeffs())
}

/// Floating expansion; supports any rotation angle.
pub fn extremal_series_complex(spec: &ExtremalSpec, n: usize) -> Result<TruncatedSeries<Complex64>> {
    match spec.variant {
        Variant::Rotation(angle) if rational_unit(angle).is_none() => {
            let base = ExtremalSpec::new(spec.class, Variant::PaperFormula)?;
            let koebe = extremal_series(&base, n)?.map(|q| q.to_complex());
            let eps = Complex64::from_polar(1.0, angle);
            Ok(koebe.substitute_scaled(&eps).scale(&eps.conj()))
        }
        _ => Ok(extremal_series(spec, n)?.map(|q| q.to_complex())),
    }
}

/// Exact evaluation of a functional on an extremal expansion.
#[derive(Debug, Clone, PartialEq)]
pub struct SharpnessReport {
    pub spec: ExtremalSpec,
    pub functional: FunctionalName,
    /// `a_0 = 0`, `a_1 = 1` and the classwise caps hold.
    pub normalized: bool,
    /// Functional evaluated on the raw coefficients, normalized or not.
    pub value: Rational,
    pub bound: Option<Rational>,
    /// `|value| == bound` exactly, on a normalized expansion.
    pub attains: bool,
    pub note: Option<String>,
}

impl SharpnessReport {
    pub fn modulus(&self) -> Rational {
        self.value.abs()
    }

    pub fn to_bound_report(&self) -> BoundReport {
        BoundReport::new(
            self.spec.class,
            self.functional,
            format!("extremal:{}", self.spec.variant),
            rational_to_f64(&self.modulus()),
            Vec::new(),
            self.bound.clone(),
            0.0,
        )
    }
}

pub fn sharpness_check(spec: &ExtremalSpec, functional: FunctionalName) -> Result<SharpnessReport> {
    let order = functional.max_index().max(MIN_ORDER);
    let raw = extremal_series(spec, order)?.into_coeffs();
    let normalization = CoefficientSequence::new(spec.class, raw.clone());
    let seq = CoefficientSequence::unchecked(spec.class, raw.clone());
    let value = functional.eval(&seq)?;
    let bound = functional.reference_bound(spec.class);
    let normalized = normalization.is_ok();
    let attains = normalized && bound.as_ref().is_some_and(|b| value.abs() == *b);
    let note = match normalization {
        Err(_) if !raw[1].is_one() => Some(format!(
            "expansion starts {} z + {} z^2: f'(0) = {}, so the function is not normalized",
            crate::scalar::format_rational(&raw[1]),
            crate::scalar::format_rational(&raw[2]),
            crate::scalar::format_rational(&raw[1]),
        )),
        Err(e) => Some(e.to_string()),
        Ok(_) if !attains => bound.as_ref().map(|b| {
            format!(
                "|value| = {} differs from the bound {}",
                crate::scalar::format_rational(&value.abs()),
                crate::scalar::format_rational(b)
            )
        }),
        Ok(_) => None,
    };
    Ok(SharpnessReport {
        spec: *spec,
        functional,
        normalized,
        value,
        bound,
        attains,
        note,
    })
}
