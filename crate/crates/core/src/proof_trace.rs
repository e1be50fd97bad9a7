//! The two-variable reductions `F(c, rho)` and `G(c)` behind the three
//! `|a2 a3 - a4|` bounds, evaluated exactly as written, together with a
//! numerical audit of the monotonicity claims and a grid maximizer.

use rayon::prelude::*;
use serde::Serialize;

use crate::class_maps::ClassTag;
use crate::error::{Error, Result};

/// Grid points per axis for [`reduced_max`].
pub const DEFAULT_GRID: usize = 2001;
/// Final compass step of the refinement stage.
pub const REFINE_STEP: f64 = 1e-12;
/// Finite differences smaller than this in the wrong direction are rounding.
pub const MONOTONE_SLACK: f64 = 1e-13;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ReductionCase {
    pub class: ClassTag,
    pub c_range: (f64, f64),
    pub rho_range: (f64, f64),
}

impl ReductionCase {
    /// `c` is restricted to `[-2, 0]` for bounded turning and convex, and
    /// to `[0, 2]` for starlike.
    pub fn for_class(class: ClassTag) -> Self {
        let c_range = match class {
            ClassTag::Starlike => (0.0, 2.0),
            ClassTag::BoundedTurning | ClassTag::Convex => (-2.0, 0.0),
        };
        Self {
            class,
            c_range,
            rho_range: (0.0, 1.0),
        }
    }

    /// The bound the reduction is meant to produce.
    pub fn claimed_max(&self) -> f64 {
        match self.class {
            ClassTag::BoundedTurning => 0.5,
            ClassTag::Starlike => 2.0,
            ClassTag::Convex => 1.0 / 6.0,
        }
    }

    /// Where the maximum is claimed to be attained.
    pub fn claimed_argmax(&self) -> (f64, f64) {
        match self.class {
            ClassTag::Starlike => (2.0, 1.0),
            ClassTag::BoundedTurning | ClassTag::Convex => (0.0, 0.0),
        }
    }

    fn check_c(&self, c: f64) -> Result<()> {
        in_range("c", c, self.c_range)
    }

    fn check_rho(&self, rho: f64) -> Result<()> {
        in_range("rho", rho, self.rho_range)
    }
}

fn in_range(name: &'static str, value: f64, (lo, hi): (f64, f64)) -> Result<()> {
    if value >= lo && value <= hi {
        Ok(())
    } else {
        Err(Error::OutOfRange {
            name,
            value,
            lo,
            hi,
        })
    }
}

/// `F(c, rho)` as printed for the class.
pub fn f_value(case: &ReductionCase, c: f64, rho: f64) -> Result<f64> {
    case.check_c(c)?;
    case.check_rho(rho)?;
    Ok(f_unchecked(case.class, c, rho))
}

fn f_unchecked(class: ClassTag, c: f64, rho: f64) -> f64 {
    let s = 4.0 - c * c;
    match class {
        ClassTag::BoundedTurning => {
            c * c * c / 48.0 + s / 8.0 + c * s * rho / 24.0 + (c - 2.0) * s * rho * rho / 16.0
        }
        ClassTag::Starlike => {
            (3.0 * c * c * c + 2.0 * s + 2.0 * c * s * rho + (c - 2.0) * s * rho * rho) / 12.0
        }
        ClassTag::Convex => s / 24.0 + c * s * rho / 16.0 + (c - 2.0) * s * rho * rho / 48.0,
    }
}

/// `G(c)` as printed for the class.
pub fn g_value(case: &ReductionCase, c: f64) -> Result<f64> {
    case.check_c(c)?;
    Ok(match case.class {
        ClassTag::BoundedTurning => c * c * c / 48.0 + (4.0 - c * c) / 8.0,
        ClassTag::Starlike => (3.0 * c * c * c - 2.0 * c * c + 8.0) / 12.0,
        ClassTag::Convex => (4.0 - c * c) / 24.0,
    })
}

/// `F(c, .)` as the quadratic `[f0, f1, f2]` in `rho`, obtained by
/// collecting terms of the printed formula.
pub fn rho_polynomial(class: ClassTag, c: f64) -> [f64; 3] {
    let s = 4.0 - c * c;
    match class {
        ClassTag::BoundedTurning => [
            c * c * c / 48.0 + s / 8.0,
            c * s / 24.0,
            (c - 2.0) * s / 16.0,
        ],
        ClassTag::Starlike => [
            (3.0 * c * c * c + 2.0 * s) / 12.0,
            2.0 * c * s / 12.0,
            (c - 2.0) * s / 12.0,
        ],
        ClassTag::Convex => [s / 24.0, c * s / 16.0, (c - 2.0) * s / 48.0],
    }
}

/// `dF/drho` from [`rho_polynomial`].
pub fn f_rho_derivative(class: ClassTag, c: f64, rho: f64) -> f64 {
    let [_, f1, f2] = rho_polynomial(class, c);
    f1 + 2.0 * f2 * rho
}

/// Sum of moduli of the terms of `|a2 a3 - a4|` written in the chart with
/// real `c1 = c`, `|x| = rho` and `|zeta| = 1`, before any sign assumption.
pub fn modulus_majorant(class: ClassTag, c: f64, rho: f64) -> f64 {
    let s = 4.0 - c * c;
    let w = 1.0 - rho * rho;
    match class {
        ClassTag::BoundedTurning => {
            (c * c * c / 48.0).abs()
                + (c * s * rho / 24.0).abs()
                + (c * s * rho * rho / 16.0).abs()
                + (s * w / 8.0).abs()
        }
        ClassTag::Starlike => {
            ((3.0 * c * c * c).abs()
                + (2.0 * c * s * rho).abs()
                + (c * s * rho * rho).abs()
                + (2.0 * s * w).abs())
                / 12.0
        }
        ClassTag::Convex => {
            ((3.0 * c * s * rho).abs() + (c * s * rho * rho).abs() + (2.0 * s * w).abs()) / 48.0
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Direction {
    Increasing,
    Decreasing,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MonotoneWitness {
    pub c: f64,
    pub rho: f64,
    /// `F(c, rho + h) - F(c, rho)`
    pub delta: f64,
    /// Analytic `dF/drho` at `(c, rho)`.
    pub derivative: f64,
}

/// One claimed direction over a `c` interval.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MonotoneSegment {
    pub c_interval: (f64, f64),
    /// `false` means the right endpoint is excluded.
    pub include_hi: bool,
    pub claimed: Direction,
    /// The bound depends on this claim.
    pub required: bool,
    pub checked_c: usize,
    pub violation_count: usize,
    /// The first few violations in grid order.
    pub witnesses: Vec<MonotoneWitness>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MonotonicityReport {
    pub class: ClassTag,
    pub resolution: usize,
    pub segments: Vec<MonotoneSegment>,
}

impl MonotonicityReport {
    pub fn required_violations(&self) -> usize {
        self.segments
            .iter()
            .filter(|s| s.required)
            .map(|s| s.violation_count)
            .sum()
    }
}

const MAX_WITNESSES: usize = 8;

/// Checks the sign of forward differences of `F` in `rho` on a
/// `resolution x resolution` grid against the claimed direction.
///
/// Bounded turning and convex are checked on the interior of `[-2, 0]`,
/// claimed decreasing. Starlike has two claims: increasing for
/// `c in [1, 2]` (the one the bound rests on) and decreasing for
/// `c in [0, 1)`.
pub fn monotonicity_report(case: &ReductionCase, resolution: usize) -> Result<MonotonicityReport> {
    if resolution < 2 {
        return Err(Error::InvalidParams("grid resolution must be at least 2".into()));
    }
    let class = case.class;
    let segments = match class {
        ClassTag::BoundedTurning | ClassTag::Convex => {
            let (lo, hi) = case.c_range;
            vec![check_segment(class, lo, hi, false, false, Direction::Decreasing, true, resolution)]
        }
        ClassTag::Starlike => vec![
            check_segment(class, 1.0, 2.0, true, true, Direction::Increasing, true, resolution),
            check_segment(class, 0.0, 1.0, true, false, Direction::Decreasing, false, resolution),
        ],
    };
    Ok(MonotonicityReport {
        class,
        resolution,
        segments,
    })
}

#[allow(clippy::too_many_arguments)]
fn check_segment(
    class: ClassTag,
    lo: f64,
    hi: f64,
    include_lo: bool,
    include_hi: bool,
    claimed: Direction,
    required: bool,
    resolution: usize,
) -> MonotoneSegment {
    let steps = (resolution - 1) as f64;
    let cs: Vec<f64> = (0..resolution)
        .filter(|&i| (include_lo || i != 0) && (include_hi || i != resolution - 1))
        .map(|i| lo + (hi - lo) * i as f64 / steps)
        .collect();
    let per_c: Vec<Vec<MonotoneWitness>> = cs
        .par_iter()
        .map(|&c| {
            let mut found = Vec::new();
            let mut prev = f_unchecked(class, c, 0.0);
            for j in 1..resolution {
                let rho_prev = (j - 1) as f64 / steps;
                let rho = j as f64 / steps;
                let cur = f_unchecked(class, c, rho);
                let delta = cur - prev;
                let wrong = match claimed {
                    Direction::Decreasing => delta > MONOTONE_SLACK,
                    Direction::Increasing => delta < -MONOTONE_SLACK,
                };
                if wrong {
                    found.push(MonotoneWitness {
                        c,
                        rho: rho_prev,
                        delta,
                        derivative: f_rho_derivative(class, c, rho_prev),
                    });
                }
                prev = cur;
            }
            found
        })
        .collect();
    let violation_count = per_c.iter().map(Vec::len).sum();
    let witnesses = per_c.into_iter().flatten().take(MAX_WITNESSES).collect();
    MonotoneSegment {
        c_interval: (lo, hi),
        include_hi,
        claimed,
        required,
        checked_c: cs.len(),
        violation_count,
        witnesses,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ReducedMax {
    pub value: f64,
    pub c: f64,
    pub rho: f64,
}

/// Maximum of the printed `F` over the case's `(c, rho)` box.
pub fn reduced_max(case: &ReductionCase, tol: f64) -> Result<ReducedMax> {
    reduced_max_with_grid(case, tol, DEFAULT_GRID)
}

pub fn reduced_max_with_grid(case: &ReductionCase, tol: f64, grid: usize) -> Result<ReducedMax> {
    let class = case.class;
    maximize_box(case.c_range, case.rho_range, tol, grid, |c, rho| {
        f_unchecked(class, c, rho)
    })
}

/// Maximum of [`modulus_majorant`] over `|c| <= 2`, `rho in [0, 1]`, i.e.
/// without the sign restriction on `c`.
pub fn majorant_max(class: ClassTag, tol: f64) -> Result<ReducedMax> {
    maximize_box((-2.0, 2.0), (0.0, 1.0), tol, DEFAULT_GRID, |c, rho| {
        modulus_majorant(class, c, rho)
    })
}

/// Dense grid scan followed by compass refinement. Ties go to smaller `c`,
/// then smaller `rho`.
fn maximize_box(
    c_range: (f64, f64),
    rho_range: (f64, f64),
    tol: f64,
    grid: usize,
    f: impl Fn(f64, f64) -> f64 + Sync,
) -> Result<ReducedMax> {
    if !(tol > 0.0) {
        return Err(Error::InvalidParams("tol must be positive".into()));
    }
    if grid < 2 {
        return Err(Error::InvalidParams("grid must have at least 2 points".into()));
    }
    let steps = (grid - 1) as f64;
    let at = |(lo, hi): (f64, f64), i: usize| lo + (hi - lo) * i as f64 / steps;
    let better = |a: &ReducedMax, b: &ReducedMax| {
        a.value > b.value || (a.value == b.value && (a.c, a.rho) < (b.c, b.rho))
    };
    let best = (0..grid)
        .into_par_iter()
        .map(|i| {
            let c = at(c_range, i);
            let mut row_best = ReducedMax {
                value: f(c, rho_range.0),
                c,
                rho: rho_range.0,
            };
            for j in 1..grid {
                let rho = at(rho_range, j);
                let cand = ReducedMax {
                    value: f(c, rho),
                    c,
                    rho,
                };
                if better(&cand, &row_best) {
                    row_best = cand;
                }
            }
            row_best
        })
        .reduce_with(|a, b| if better(&b, &a) { b } else { a })
        .expect("grid is non-empty");

    // compass refinement
    let mut cur = best;
    let mut step = [
        (c_range.1 - c_range.0) / steps,
        (rho_range.1 - rho_range.0) / steps,
    ];
    let stop = tol.min(REFINE_STEP);
    while step[0].max(step[1]) >= stop {
        let mut moved = false;
        for (dc, dr) in [(1.0, 0.0), (-1.0, 0.0), (0.0, 1.0), (0.0, -1.0)] {
            let c = (cur.c + dc * step[0]).clamp(c_range.0, c_range.1);
            let rho = (cur.rho + dr * step[1]).clamp(rho_range.0, rho_range.1);
            let value = f(c, rho);
            if value > cur.value {
                cur = ReducedMax { value, c, rho };
                moved = true;
            }
        }
        if !moved {
            step[0] *= 0.5;
            step[1] *= 0.5;
        }
    }
    Ok(cur)
}
