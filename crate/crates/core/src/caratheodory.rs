//! Coefficients of functions with positive real part in the unit disk.
//!
//! Two generators are provided. [`lz_expand`] is the three-parameter chart
//! for `(c2, c3)` in terms of `c1` and two disk points; [`herglotz_cseq`]
//! produces full sequences `c_k = 2 sum_j w_j e^{i k t_j}` from a finite
//! probability measure on the circle.

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Slack allowed on the closed-disk constraints of [`LZParams`].
pub const PARAM_SLACK: f64 = 1e-12;

/// Tolerance of the membership test in [`validate_cseq`].
pub const MEMBERSHIP_TOL: f64 = 1e-9;

/// Chart parameters `(c1, x, zeta)` with `|c1| <= 2`, `|x| <= 1`, `|zeta| <= 1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LZParams {
    pub c1: Complex64,
    pub x: Complex64,
    pub zeta: Complex64,
}

impl LZParams {
    pub fn new(c1: Complex64, x: Complex64, zeta: Complex64) -> Result<Self> {
        let p = Self { c1, x, zeta };
        p.check()?;
        Ok(p)
    }

    pub fn real(c1: f64, x: f64, zeta: f64) -> Result<Self> {
        Self::new(c1.into(), x.into(), zeta.into())
    }

    pub fn check(&self) -> Result<()> {
        let bad = |name: &str, v: Complex64, cap: f64| {
            Err(Error::InvalidParams(format!(
                "|{name}| = {} exceeds {cap}",
                v.norm()
            )))
        };
        if !(self.c1.norm() <= 2.0 + PARAM_SLACK) {
            return bad("c1", self.c1, 2.0);
        }
        if !(self.x.norm() <= 1.0 + PARAM_SLACK) {
            return bad("x", self.x, 1.0);
        }
        if !(self.zeta.norm() <= 1.0 + PARAM_SLACK) {
            return bad("zeta", self.zeta, 1.0);
        }
        Ok(())
    }
}

/// `(c2, c3)` from the chart:
///
/// ```text
/// 2 c2 = c1^2 + x (4 - |c1|^2)
/// 4 c3 = c1^3 + 2 x c1 (4 - |c1|^2) - x^2 conj(c1) (4 - |c1|^2)
///        + 2 zeta (1 - |x|^2) (4 - |c1|^2)
/// ```
///
/// For real `c1` this is the classical real-axis form with `4 - c1^2`.
/// Complex `c1` uses `|c1|^2` and `conj(c1)`, which keeps `|c2|, |c3| <= 2`.
pub fn lz_expand(p: &LZParams) -> Result<(Complex64, Complex64)> {
    p.check()?;
    Ok(lz_expand_unchecked(p))
}

pub(crate) fn lz_expand_unchecked(p: &LZParams) -> (Complex64, Complex64) {
    let LZParams { c1, x, zeta } = *p;
    let s = 4.0 - c1.norm_sqr();
    let c2 = (c1 * c1 + x * s) * 0.5;
    let c3 = (c1 * c1 * c1 + 2.0 * x * c1 * s - x * x * c1.conj() * s
        + 2.0 * zeta * (1.0 - x.norm_sqr()) * s)
        * 0.25;
    (c2, c3)
}

/// Solves the chart for `(x, zeta)` given `(c1, c2, c3)`. Degenerate
/// directions (`|c1| = 2`, `|x| = 1`) take the free parameter as zero.
/// The returned parameters are not clamped, so callers can test whether
/// they land in the closed disks.
pub fn lz_invert(c1: Complex64, c2: Complex64, c3: Complex64) -> LZParams {
    const DEGENERATE: f64 = 1e-9;
    let s = 4.0 - c1.norm_sqr();
    let x = if s > DEGENERATE {
        (2.0 * c2 - c1 * c1) / s
    } else {
        Complex64::new(0.0, 0.0)
    };
    let w = 1.0 - x.norm_sqr();
    let zeta = if s > DEGENERATE && w > DEGENERATE {
        (4.0 * c3 - c1 * c1 * c1 - 2.0 * x * c1 * s + x * x * c1.conj() * s) / (2.0 * s * w)
    } else {
        Complex64::new(0.0, 0.0)
    };
    LZParams { c1, x, zeta }
}

/// Finite atomic probability measure on the unit circle.
#[derive(Debug, Clone, PartialEq)]
pub struct HerglotzMeasure {
    atoms: Vec<(f64, f64)>,
}

impl HerglotzMeasure {
    /// Atoms are `(weight, angle)` pairs; weights must be nonnegative and sum to one.
    pub fn new(atoms: Vec<(f64, f64)>) -> Result<Self> {
        if atoms.is_empty() {
            return Err(Error::InvalidMeasure("no atoms".into()));
        }
        if let Some(&(w, _)) = atoms.iter().find(|(w, t)| !(*w >= 0.0) || !t.is_finite()) {
            return Err(Error::InvalidMeasure(format!("bad atom weight {w}")));
        }
        let total: f64 = atoms.iter().map(|(w, _)| w).sum();
        if (total - 1.0).abs() > 1e-12 {
            return Err(Error::InvalidMeasure(format!("weights sum to {total}")));
        }
        Ok(Self { atoms })
    }

    /// Normalizes arbitrary nonnegative weights. All-zero weights become uniform.
    pub fn from_unnormalized(weights: &[f64], angles: &[f64]) -> Result<Self> {
        if weights.len() != angles.len() {
            return Err(Error::InvalidMeasure("weights and angles differ in length".into()));
        }
        let total: f64 = weights.iter().map(|w| w.max(0.0)).sum();
        let n = weights.len() as f64;
        let atoms = weights
            .iter()
            .zip(angles)
            .map(|(&w, &t)| {
                let w = if total > 0.0 { w.max(0.0) / total } else { 1.0 / n };
                (w, t)
            })
            .collect();
        Self::new(atoms)
    }

    pub fn atoms(&self) -> &[(f64, f64)] {
        &self.atoms
    }
}

/// Coefficients `c_1, c_2, ...` of a function with positive real part.
/// `CSequence::new` enforces `|c_k| <= 2 + 1e-9`.
#[derive(Debug, Clone, PartialEq)]
pub struct CSequence {
    c: Vec<Complex64>,
}

impl CSequence {
    pub fn new(c: Vec<Complex64>) -> Result<Self> {
        if let Some((k, v)) = c
            .iter()
            .enumerate()
            .find(|(_, v)| !(v.norm() <= 2.0 + MEMBERSHIP_TOL))
        {
            return Err(Error::InvalidParams(format!(
                "|c_{}| = {} exceeds 2",
                k + 1,
                v.norm()
            )));
        }
        Ok(Self { c })
    }

    /// `c_k` for `k >= 1`.
    pub fn get(&self, k: usize) -> Option<Complex64> {
        k.checked_sub(1).and_then(|i| self.c.get(i)).copied()
    }

    pub fn as_slice(&self) -> &[Complex64] {
        &self.c
    }

    pub fn len(&self) -> usize {
        self.c.len()
    }

    pub fn is_empty(&self) -> bool {
        self.c.is_empty()
    }
}

/// `c_k = 2 sum_j w_j exp(i k t_j)` for `k = 1..=n`.
pub fn herglotz_cseq(m: &HerglotzMeasure, n: usize) -> CSequence {
    CSequence {
        c: herglotz_coeffs(m.atoms(), n),
    }
}

pub(crate) fn herglotz_coeffs(atoms: &[(f64, f64)], n: usize) -> Vec<Complex64> {
    let mut out = vec![Complex64::new(0.0, 0.0); n];
    for &(w, t) in atoms {
        let step = Complex64::from_polar(1.0, t);
        let mut phase = step;
        for c in out.iter_mut() {
            *c += 2.0 * w * phase;
            phase *= step;
        }
    }
    out
}

/// Membership test for the first `depth` coefficients: `|c_k| <= 2 + tol`
/// and every leading principal minor of the Hermitian Toeplitz matrix with
/// diagonal 2 and `T[j][k] = c_{k-j}` above it is `>= -tol`.
pub fn validate_cseq(c: &[Complex64], depth: usize) -> bool {
    let depth = depth.min(c.len());
    if c[..depth].iter().any(|v| !(v.norm() <= 2.0 + MEMBERSHIP_TOL)) {
        return false;
    }
    let size = depth + 1;
    let entry = |j: usize, k: usize| -> Complex64 {
        if j == k {
            Complex64::new(2.0, 0.0)
        } else if k > j {
            c[k - j - 1]
        } else {
            c[j - k - 1].conj()
        }
    };
    (1..=size).all(|m| {
        let mut mat: Vec<Vec<Complex64>> =
            (0..m).map(|j| (0..m).map(|k| entry(j, k)).collect()).collect();
        determinant(&mut mat).re >= -MEMBERSHIP_TOL
    })
}

/// Gaussian elimination with partial pivoting; destroys `mat`.
fn determinant(mat: &mut [Vec<Complex64>]) -> Complex64 {
    let n = mat.len();
    let mut det = Complex64::new(1.0, 0.0);
    for col in 0..n {
        let pivot = (col..n)
            .max_by(|&a, &b| mat[a][col].norm().total_cmp(&mat[b][col].norm()))
            .unwrap();
        if mat[pivot][col].norm() == 0.0 {
            return Complex64::new(0.0, 0.0);
        }
        if pivot != col {
            mat.swap(pivot, col);
            det = -det;
        }
        let p = mat[col][col];
        det *= p;
        let (top, rest) = mat.split_at_mut(col + 1);
        let pivot_row = &top[col];
        for row in rest.iter_mut() {
            let factor = row[col] / p;
            for (x, v) in row[col..].iter_mut().zip(&pivot_row[col..]) {
                *x -= factor * v;
            }
        }
    }
    det
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    fn close(a: Complex64, b: Complex64) -> bool {
        (a - b).norm() < 1e-12
    }

    #[test]
    fn lz_expand_examples() {
        for (x, z) in [(0.3, -0.7), (-1.0, 1.0), (0.0, 0.0)] {
            let (c2, c3) = lz_expand(&LZParams::real(2.0, x, z).unwrap()).unwrap();
            assert!(close(c2, c(2.0)) && close(c3, c(2.0)));
        }
        let (c2, c3) = lz_expand(&LZParams::real(0.0, 0.0, 1.0).unwrap()).unwrap();
        assert!(close(c2, c(0.0)) && close(c3, c(2.0)));
        for z in [0.0, 1.0, -0.5] {
            let (c2, c3) = lz_expand(&LZParams::real(0.0, 1.0, z).unwrap()).unwrap();
            assert!(close(c2, c(2.0)) && close(c3, c(0.0)));
        }
    }

    #[test]
    fn lz_rejects_out_of_disk() {
        assert!(matches!(
            LZParams::real(2.1, 0.0, 0.0),
            Err(Error::InvalidParams(_))
        ));
        let bad = LZParams {
            c1: c(0.0),
            x: Complex64::new(0.8, 0.8),
            zeta: c(0.0),
        };
        assert!(lz_expand(&bad).is_err());
        assert!(LZParams::real(0.0, 0.0, f64::NAN).is_err());
    }

    #[test]
    fn herglotz_examples() {
        let one = HerglotzMeasure::new(vec![(1.0, 0.0)]).unwrap();
        assert!(herglotz_cseq(&one, 6).as_slice().iter().all(|&v| close(v, c(2.0))));

        let two = HerglotzMeasure::new(vec![(0.5, 0.0), (0.5, PI)]).unwrap();
        let s = herglotz_cseq(&two, 6);
        for k in 1..=6 {
            let expected = if k % 2 == 0 { 2.0 } else { 0.0 };
            assert!(close(s.get(k).unwrap(), c(expected)), "k={k}");
        }

        let flip = HerglotzMeasure::new(vec![(1.0, PI)]).unwrap();
        let s = herglotz_cseq(&flip, 5);
        for k in 1..=5 {
            let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
            assert!(close(s.get(k).unwrap(), c(2.0 * sign)));
        }
    }

    #[test]
    fn measure_validation() {
        assert!(HerglotzMeasure::new(vec![]).is_err());
        assert!(HerglotzMeasure::new(vec![(0.5, 0.0)]).is_err());
        assert!(HerglotzMeasure::new(vec![(1.5, 0.0), (-0.5, 1.0)]).is_err());
        let m = HerglotzMeasure::from_unnormalized(&[0.0, 0.0], &[0.0, 1.0]).unwrap();
        assert_eq!(m.atoms()[0].0, 0.5);
    }

    #[test]
    fn validate_examples() {
        let m = HerglotzMeasure::new(vec![(0.2, 0.3), (0.5, 2.0), (0.3, -1.2)]).unwrap();
        let s = herglotz_cseq(&m, 8);
        assert!(validate_cseq(s.as_slice(), 8));

        assert!(!validate_cseq(&[c(3.0)], 1));
        assert!(!validate_cseq(&[c(2.0), c(-2.0)], 2));
        assert!(validate_cseq(&[c(2.0), c(2.0)], 2));
        assert!(CSequence::new(vec![c(3.0)]).is_err());
    }

    #[test]
    fn inversion_recovers_parameters() {
        let p = LZParams::new(
            Complex64::new(0.4, -0.9),
            Complex64::new(0.2, 0.5),
            Complex64::new(-0.6, 0.1),
        )
        .unwrap();
        let (c2, c3) = lz_expand(&p).unwrap();
        let back = lz_invert(p.c1, c2, c3);
        assert!((back.x - p.x).norm() < 1e-12);
        assert!((back.zeta - p.zeta).norm() < 1e-12);
    }
}
