//! Coefficient functionals: Hankel determinants and the three pieces of the
//! cofactor expansion of `H_3(1)`.

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::class_maps::{ClassTag, CoefficientSequence};
use crate::error::{Error, Result};
use crate::scalar::{ratio, Rational, Scalar};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum FunctionalName {
    /// General `H_q(n)`.
    HankelQN,
    /// `H_3(1)`
    H31,
    /// `a3 - a2^2`
    FeketeSzego,
    /// `H_2(2) = a2 a4 - a3^2`
    SecondHankel,
    /// `a2 a3 - a4`
    TA2A3A4,
}

impl FunctionalName {
    /// The four fixed functionals exposed on the command line.
    pub const FIXED: [FunctionalName; 4] = [
        FunctionalName::TA2A3A4,
        FunctionalName::FeketeSzego,
        FunctionalName::SecondHankel,
        FunctionalName::H31,
    ];

    pub fn cli_name(self) -> &'static str {
        match self {
            FunctionalName::HankelQN => "hqn",
            FunctionalName::H31 => "h31",
            FunctionalName::FeketeSzego => "fs",
            FunctionalName::SecondHankel => "h22",
            FunctionalName::TA2A3A4 => "t",
        }
    }

    /// Highest `a_k` the functional reads.
    pub fn max_index(self) -> usize {
        match self {
            FunctionalName::FeketeSzego => 3,
            FunctionalName::SecondHankel | FunctionalName::TA2A3A4 => 4,
            FunctionalName::H31 | FunctionalName::HankelQN => 5,
        }
    }

    /// Evaluates one of the fixed functionals. `HankelQN` is read as `H_3(1)`.
    pub fn eval<T: Scalar>(self, a: &CoefficientSequence<T>) -> Result<T> {
        match self {
            FunctionalName::TA2A3A4 => t_functional(a),
            FunctionalName::FeketeSzego => fekete_szego(a),
            FunctionalName::SecondHankel => second_hankel(a),
            FunctionalName::H31 => h3_expansion(a),
            FunctionalName::HankelQN => hankel_det(a, 3, 1),
        }
    }

    /// Sharp bound of `|functional|` over the class as quoted in the
    /// literature; `H_3(1)` carries the printed triangle-inequality value.
    pub fn reference_bound(self, class: ClassTag) -> Option<Rational> {
        use ClassTag::*;
        use FunctionalName::*;
        let (n, d) = match (self, class) {
            (TA2A3A4, BoundedTurning) => (1, 2),
            (TA2A3A4, Starlike) => (2, 1),
            (TA2A3A4, Convex) => (1, 6),
            (FeketeSzego, BoundedTurning) => (2, 3),
            (FeketeSzego, Starlike) => (1, 1),
            (FeketeSzego, Convex) => (1, 3),
            (SecondHankel, BoundedTurning) => (4, 9),
            (SecondHankel, Starlike) => (1, 1),
            (SecondHankel, Convex) => (1, 8),
            (H31, BoundedTurning) => (993, 1620),
            (H31, Starlike) => (16, 1),
            (H31, Convex) => (15, 24),
            (HankelQN, _) => return None,
        };
        Some(ratio(n, d))
    }
}

impl fmt::Display for FunctionalName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.cli_name())
    }
}

impl FromStr for FunctionalName {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "t" => Ok(FunctionalName::TA2A3A4),
            "fs" => Ok(FunctionalName::FeketeSzego),
            "h22" => Ok(FunctionalName::SecondHankel),
            "h31" => Ok(FunctionalName::H31),
            other => Err(format!(
                "unknown functional '{other}' (expected t, fs, h22 or h31)"
            )),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FunctionalValue {
    pub name: FunctionalName,
    pub value: Complex64,
    pub modulus: f64,
}

impl FunctionalValue {
    pub fn new(name: FunctionalName, value: Complex64) -> Self {
        Self {
            name,
            value,
            modulus: value.norm(),
        }
    }

    pub fn evaluate<T: Scalar>(name: FunctionalName, a: &CoefficientSequence<T>) -> Result<Self> {
        Ok(Self::new(name, name.eval(a)?.to_complex()))
    }
}

/// Determinant of the `q x q` Hankel matrix with entry `(i, j) = a_{n+i+j}`,
/// by cofactor expansion along the first row. `q` is limited to 1..=4.
pub fn hankel_det<T: Scalar>(a: &CoefficientSequence<T>, q: usize, n: usize) -> Result<T> {
    if !(1..=4).contains(&q) {
        return Err(Error::InvalidParams(format!("hankel order q = {q} not in 1..=4")));
    }
    let last = n + 2 * (q - 1);
    a.a(last)?;
    let m: Vec<Vec<T>> = (0..q)
        .map(|i| (0..q).map(|j| a.coeffs()[n + i + j].clone()).collect())
        .collect();
    Ok(cofactor_det(&m))
}

fn cofactor_det<T: Scalar>(m: &[Vec<T>]) -> T {
    match m.len() {
        0 => T::one(),
        1 => m[0][0].clone(),
        n => {
            let mut det = T::zero();
            for col in 0..n {
                let minor: Vec<Vec<T>> = m[1..]
                    .iter()
                    .map(|row| {
                        row.iter()
                            .enumerate()
                            .filter(|&(j, _)| j != col)
                            .map(|(_, v)| v.clone())
                            .collect()
                    })
                    .collect();
                let term = m[0][col].clone() * cofactor_det(&minor);
                det = if col % 2 == 0 { det + term } else { det - term };
            }
            det
        }
    }
}

fn a2_to_a5<T: Scalar>(a: &CoefficientSequence<T>, last: usize) -> Result<Vec<T>> {
    a.a(last)?;
    Ok(a.coeffs()[..=last].to_vec())
}

/// `a3 (a2 a4 - a3^2) - a4 (a4 - a2 a3) + a5 (a3 - a2^2)`
pub fn h3_expansion<T: Scalar>(a: &CoefficientSequence<T>) -> Result<T> {
    let v = a2_to_a5(a, 5)?;
    let (a2, a3, a4, a5) = (&v[2], &v[3], &v[4], &v[5]);
    let h22 = a2.clone() * a4.clone() - a3.clone() * a3.clone();
    let t = a4.clone() - a2.clone() * a3.clone();
    let fs = a3.clone() - a2.clone() * a2.clone();
    Ok(a3.clone() * h22 - a4.clone() * t + a5.clone() * fs)
}

/// `a3 - a2^2`
pub fn fekete_szego<T: Scalar>(a: &CoefficientSequence<T>) -> Result<T> {
    let v = a2_to_a5(a, 3)?;
    Ok(v[3].clone() - v[2].clone() * v[2].clone())
}

/// `a2 a4 - a3^2`
pub fn second_hankel<T: Scalar>(a: &CoefficientSequence<T>) -> Result<T> {
    let v = a2_to_a5(a, 4)?;
    Ok(v[2].clone() * v[4].clone() - v[3].clone() * v[3].clone())
}

/// `a2 a3 - a4`
pub fn t_functional<T: Scalar>(a: &CoefficientSequence<T>) -> Result<T> {
    let v = a2_to_a5(a, 4)?;
    Ok(v[2].clone() * v[3].clone() - v[4].clone())
}

/// Constants fed into the triangle-inequality majorant of `|H_3(1)|`.
#[derive(Debug, Clone, PartialEq)]
pub struct TriangleInputs {
    pub cap_a3: Rational,
    pub cap_a4: Rational,
    pub cap_a5: Rational,
    pub bound_h22: Rational,
    pub bound_t: Rational,
    pub bound_fs: Rational,
}

impl TriangleInputs {
    pub fn new(values: [Rational; 6]) -> Result<Self> {
        if values.iter().any(|v| *v < Rational::zero()) {
            return Err(Error::InvalidParams("triangle inputs must be nonnegative".into()));
        }
        let [cap_a3, cap_a4, cap_a5, bound_h22, bound_t, bound_fs] = values;
        Ok(Self {
            cap_a3,
            cap_a4,
            cap_a5,
            bound_h22,
            bound_t,
            bound_fs,
        })
    }

    /// Literature constants for each class: the coefficient caps, the
    /// second Hankel and Fekete-Szego bounds, and the `|a2 a3 - a4|` bound.
    pub fn for_class(class: ClassTag) -> Self {
        let cap = |k: i64| match class {
            ClassTag::BoundedTurning => ratio(2, k),
            ClassTag::Starlike => ratio(k, 1),
            ClassTag::Convex => ratio(1, 1),
        };
        let bound = |f: FunctionalName| f.reference_bound(class).expect("fixed functional");
        Self {
            cap_a3: cap(3),
            cap_a4: cap(4),
            cap_a5: cap(5),
            bound_h22: bound(FunctionalName::SecondHankel),
            bound_t: bound(FunctionalName::TA2A3A4),
            bound_fs: bound(FunctionalName::FeketeSzego),
        }
    }
}

/// `cap_a3 bound_h22 + cap_a4 bound_t + cap_a5 bound_fs`, exactly.
pub fn triangle_bound(t: &TriangleInputs) -> Rational {
    &t.cap_a3 * &t.bound_h22 + &t.cap_a4 * &t.bound_t + &t.cap_a5 * &t.bound_fs
}

#[cfg(test)]
mod tests {
    use super::*;

    fn seq(values: &[(i64, i64)]) -> CoefficientSequence<Rational> {
        let mut coeffs = vec![ratio(0, 1), ratio(1, 1)];
        coeffs.extend(values.iter().map(|&(n, d)| ratio(n, d)));
        CoefficientSequence::unchecked(ClassTag::Starlike, coeffs)
    }

    fn koebe(n: i64) -> CoefficientSequence<Rational> {
        CoefficientSequence::unchecked(ClassTag::Starlike, (0..=n).map(|k| ratio(k, 1)).collect())
    }

    fn r_extremal() -> CoefficientSequence<Rational> {
        seq(&[(0, 1), (0, 1), (1, 2), (0, 1)])
    }

    fn identity() -> CoefficientSequence<Rational> {
        seq(&[(0, 1); 4])
    }

    #[test]
    fn hankel_det_examples() {
        let k = koebe(7);
        assert_eq!(hankel_det(&k, 1, 4).unwrap(), ratio(4, 1));
        assert_eq!(hankel_det(&k, 3, 1).unwrap(), ratio(0, 1));
        assert_eq!(hankel_det(&k, 2, 2).unwrap(), ratio(-1, 1));
        // 4x4 with Koebe: rows are arithmetic progressions, so singular.
        assert_eq!(hankel_det(&k, 4, 1).unwrap(), ratio(0, 1));
    }

    #[test]
    fn hankel_det_errors() {
        let k = koebe(4);
        assert!(matches!(
            hankel_det(&k, 3, 1),
            Err(Error::InsufficientCoefficients { needed: 5, .. })
        ));
        assert!(hankel_det(&k, 5, 0).is_err());
        assert!(hankel_det(&k, 0, 1).is_err());
    }

    #[test]
    fn h3_expansion_examples() {
        assert_eq!(h3_expansion(&identity()).unwrap(), ratio(0, 1));
        assert_eq!(h3_expansion(&r_extremal()).unwrap(), ratio(-1, 4));
        assert_eq!(h3_expansion(&koebe(5)).unwrap(), ratio(0, 1));
    }

    #[test]
    fn three_functional_examples() {
        let k = koebe(5);
        assert_eq!(t_functional(&k).unwrap(), ratio(2, 1));
        assert_eq!(fekete_szego(&k).unwrap(), ratio(-1, 1));
        assert_eq!(second_hankel(&k).unwrap(), ratio(-1, 1));

        let v = FunctionalValue::evaluate(FunctionalName::TA2A3A4, &r_extremal()).unwrap();
        assert_eq!(v.value, Complex64::new(-0.5, 0.0));
        assert_eq!(v.modulus, 0.5);

        let id = identity();
        for f in [fekete_szego, second_hankel, t_functional] {
            assert_eq!(f(&id).unwrap(), ratio(0, 1));
        }
    }

    #[test]
    fn functionals_report_missing_indices() {
        let short = seq(&[(1, 1), (1, 1)]);
        assert!(fekete_szego(&short).is_ok());
        assert!(t_functional(&short).is_err());
        assert!(h3_expansion(&short).is_err());
    }

    #[test]
    fn triangle_bound_examples() {
        let c = TriangleInputs::new([
            ratio(1, 1),
            ratio(1, 1),
            ratio(1, 1),
            ratio(1, 8),
            ratio(1, 6),
            ratio(1, 3),
        ])
        .unwrap();
        assert_eq!(triangle_bound(&c), ratio(15, 24));
        let s = TriangleInputs::new([
            ratio(3, 1),
            ratio(4, 1),
            ratio(5, 1),
            ratio(1, 1),
            ratio(2, 1),
            ratio(1, 1),
        ])
        .unwrap();
        assert_eq!(triangle_bound(&s), ratio(16, 1));
        let r = TriangleInputs::new([
            ratio(2, 3),
            ratio(1, 2),
            ratio(2, 5),
            ratio(4, 9),
            ratio(1, 2),
            ratio(2, 3),
        ])
        .unwrap();
        // 8/27 + 1/4 + 4/15
        assert_eq!(triangle_bound(&r), ratio(439, 540));
        assert_ne!(triangle_bound(&r), ratio(993, 1620));

        assert_eq!(TriangleInputs::for_class(ClassTag::BoundedTurning), r);
        assert_eq!(TriangleInputs::for_class(ClassTag::Starlike), s);
        assert_eq!(TriangleInputs::for_class(ClassTag::Convex), c);
    }

    #[test]
    fn triangle_inputs_reject_negative() {
        let mut v: [Rational; 6] = std::array::from_fn(|_| ratio(1, 1));
        v[4] = ratio(-1, 2);
        assert!(TriangleInputs::new(v).is_err());
    }

    #[test]
    fn names_parse() {
        for f in FunctionalName::FIXED {
            assert_eq!(f.cli_name().parse::<FunctionalName>().unwrap(), f);
        }
        assert!("h33".parse::<FunctionalName>().is_err());
    }
}
