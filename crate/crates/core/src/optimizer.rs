//! Derivative-free global maximization over a box.
//!
//! The search has two stages. A coarse stage evaluates either the full
//! tensor grid (when it fits in the point budget) or a seeded uniform sample
//! of the box. The best `restarts` points then seed a Hooke-Jeeves compass
//! search with step halving. Objective values are computed in parallel but
//! every reduction is ordered, so results depend only on the configuration.

use std::cmp::Ordering;
use std::fmt;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::caratheodory::{herglotz_coeffs, lz_expand_unchecked, LZParams};
use crate::class_maps::ClassTag;
use crate::error::{Error, Result};
use crate::functionals::FunctionalName;
use crate::report::BoundReport;

const TAU: f64 = std::f64::consts::TAU;

/// Coefficient generator searched over.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Model {
    /// `(c1, x, zeta)` chart with each parameter as (modulus, angle).
    Lz,
    /// The same chart restricted to real parameters.
    LzReal,
    /// Atomic measure with the given number of atoms. The first atom sits
    /// at angle 0, which loses nothing since every functional modulus is
    /// rotation invariant.
    Herglotz(usize),
}

impl Model {
    /// Highest `c_k` the model can produce.
    pub fn max_c_index(self) -> Option<usize> {
        match self {
            Model::Lz | Model::LzReal => Some(3),
            Model::Herglotz(_) => None,
        }
    }

    pub fn search_box(self) -> Vec<Axis> {
        match self {
            Model::Lz => vec![
                Axis::new(0.0, 2.0),
                Axis::angle(),
                Axis::new(0.0, 1.0),
                Axis::angle(),
                Axis::new(0.0, 1.0),
                Axis::angle(),
            ],
            Model::LzReal => vec![Axis::new(-2.0, 2.0), Axis::new(-1.0, 1.0), Axis::new(-1.0, 1.0)],
            Model::Herglotz(m) => {
                let mut axes = vec![Axis::new(0.0, 1.0); m];
                axes.extend(std::iter::repeat_n(Axis::angle(), m.saturating_sub(1)));
                axes
            }
        }
    }

    /// Maps a parameter vector to `c_1..=c_n`.
    pub fn decode(self, params: &[f64], n: usize) -> Vec<Complex64> {
        match self {
            Model::Lz | Model::LzReal => {
                let p = if self == Model::Lz {
                    LZParams {
                        c1: Complex64::from_polar(params[0], params[1]),
                        x: Complex64::from_polar(params[2], params[3]),
                        zeta: Complex64::from_polar(params[4], params[5]),
                    }
                } else {
                    LZParams {
                        c1: params[0].into(),
                        x: params[1].into(),
                        zeta: params[2].into(),
                    }
                };
                let (c2, c3) = lz_expand_unchecked(&p);
                let mut c = vec![p.c1, c2, c3];
                c.truncate(n);
                c
            }
            Model::Herglotz(m) => {
                let weights = &params[..m];
                let total: f64 = weights.iter().map(|w| w.max(0.0)).sum();
                let atoms: Vec<(f64, f64)> = (0..m)
                    .map(|j| {
                        let w = if total > 0.0 {
                            weights[j].max(0.0) / total
                        } else {
                            1.0 / m as f64
                        };
                        let angle = if j == 0 { 0.0 } else { params[m + j - 1] };
                        (w, angle)
                    })
                    .collect();
                herglotz_coeffs(&atoms, n)
            }
        }
    }
}

impl fmt::Display for Model {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Model::Lz => f.write_str("lz"),
            Model::LzReal => f.write_str("lz-real"),
            Model::Herglotz(m) => write!(f, "herglotz({m})"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Axis {
    pub lo: f64,
    pub hi: f64,
    /// Wraps around instead of clamping; `hi` is identified with `lo`.
    pub periodic: bool,
}

impl Axis {
    pub fn new(lo: f64, hi: f64) -> Self {
        Self {
            lo,
            hi,
            periodic: false,
        }
    }

    pub fn angle() -> Self {
        Self {
            lo: 0.0,
            hi: TAU,
            periodic: true,
        }
    }

    fn width(&self) -> f64 {
        self.hi - self.lo
    }

    fn grid_point(&self, i: usize, points: usize) -> f64 {
        if self.periodic {
            self.lo + self.width() * i as f64 / points as f64
        } else if points == 1 {
            0.5 * (self.lo + self.hi)
        } else {
            self.lo + self.width() * i as f64 / (points - 1) as f64
        }
    }

    fn grid_step(&self, points: usize) -> f64 {
        if self.periodic {
            self.width() / points as f64
        } else {
            self.width() / (points.max(2) - 1) as f64
        }
    }

    fn place(&self, v: f64) -> f64 {
        if self.periodic {
            self.lo + (v - self.lo).rem_euclid(self.width())
        } else {
            v.clamp(self.lo, self.hi)
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SearchConfig {
    pub model: Model,
    pub grid_points_per_axis: usize,
    pub restarts: usize,
    pub seed: u64,
    pub tol: f64,
    pub max_refine_iters: usize,
    /// Largest coarse stage; beyond it the grid is replaced by a seeded sample.
    pub max_coarse_points: usize,
}

impl Default for SearchConfig {
    fn default() -> Self {
        Self {
            model: Model::Lz,
            grid_points_per_axis: 2001,
            restarts: 16,
            seed: 0,
            tol: 1e-6,
            max_refine_iters: 20_000,
            max_coarse_points: 1 << 16,
        }
    }
}

impl SearchConfig {
    pub fn with_model(model: Model) -> Self {
        Self {
            model,
            ..Self::default()
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.grid_points_per_axis < 3 {
            return Err(Error::InvalidConfig("grid_points_per_axis must be at least 3".into()));
        }
        if let Model::Herglotz(0) = self.model {
            return Err(Error::InvalidConfig("atoms must be at least 1".into()));
        }
        if !(self.tol > 0.0) {
            return Err(Error::InvalidConfig("tol must be positive".into()));
        }
        if self.restarts == 0 {
            return Err(Error::InvalidConfig("restarts must be at least 1".into()));
        }
        if self.max_coarse_points == 0 {
            return Err(Error::InvalidConfig("max_coarse_points must be positive".into()));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SearchOutcome {
    pub best_value: f64,
    pub best_params: Vec<f64>,
    pub coarse_points: usize,
    pub sampled: bool,
}

fn value_of(v: f64) -> f64 {
    if v.is_nan() {
        f64::NEG_INFINITY
    } else {
        v
    }
}

/// Larger value first, then the lexicographically smaller parameter vector.
fn rank(a: (f64, &[f64]), b: (f64, &[f64])) -> Ordering {
    value_of(b.0)
        .total_cmp(&value_of(a.0))
        .then_with(|| {
            a.1.iter()
                .zip(b.1)
                .map(|(x, y)| x.total_cmp(y))
                .find(|o| o.is_ne())
                .unwrap_or(Ordering::Equal)
        })
}

fn coarse_points(axes: &[Axis], config: &SearchConfig) -> (Vec<Vec<f64>>, bool) {
    let g = config.grid_points_per_axis;
    let total = (0..axes.len()).try_fold(1usize, |acc, _| acc.checked_mul(g));
    match total {
        Some(total) if total <= config.max_coarse_points => {
            let points = (0..total)
                .map(|mut idx| {
                    axes.iter()
                        .map(|axis| {
                            let i = idx % g;
                            idx /= g;
                            axis.grid_point(i, g)
                        })
                        .collect()
                })
                .collect();
            (points, false)
        }
        _ => {
            let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
            let points = (0..config.max_coarse_points)
                .map(|_| {
                    axes.iter()
                        .map(|axis| axis.lo + axis.width() * rng.gen::<f64>())
                        .collect()
                })
                .collect();
            (points, true)
        }
    }
}

/// Hooke-Jeeves pattern search from `start`.
fn refine<F>(objective: &F, axes: &[Axis], start: Vec<f64>, steps: Vec<f64>, config: &SearchConfig) -> (f64, Vec<f64>)
where
    F: Fn(&[f64]) -> f64 + Sync,
{
    let eval = |x: &[f64]| value_of(objective(x));
    let explore = |base: &[f64], base_value: f64, steps: &[f64]| -> (f64, Vec<f64>) {
        let mut x = base.to_vec();
        let mut fx = base_value;
        for i in 0..axes.len() {
            for dir in [1.0, -1.0] {
                let mut trial = x.clone();
                trial[i] = axes[i].place(x[i] + dir * steps[i]);
                if trial[i] == x[i] {
                    continue;
                }
                let ft = eval(&trial);
                if ft > fx {
                    x = trial;
                    fx = ft;
                    break;
                }
            }
        }
        (fx, x)
    };

    let mut steps = steps;
    let mut base = start;
    let mut fbase = eval(&base);
    let mut iters = 0;
    while iters < config.max_refine_iters && steps.iter().any(|&s| s >= config.tol) {
        iters += 1;
        let (fx, x) = explore(&base, fbase, &steps);
        if fx > fbase {
            // pattern moves along the successful direction
            let (mut prev, mut cur, mut fcur) = (base, x, fx);
            loop {
                if iters >= config.max_refine_iters {
                    break;
                }
                iters += 1;
                let pattern: Vec<f64> = (0..axes.len())
                    .map(|i| axes[i].place(2.0 * cur[i] - prev[i]))
                    .collect();
                let fpat = eval(&pattern);
                let (fy, y) = explore(&pattern, fpat, &steps);
                if fy > fcur {
                    prev = cur;
                    cur = y;
                    fcur = fy;
                } else {
                    break;
                }
            }
            base = cur;
            fbase = fcur;
        } else {
            for s in steps.iter_mut() {
                *s *= 0.5;
            }
        }
    }
    (fbase, base)
}

/// Maximizes `objective` over `axes`.
pub fn maximize<F>(objective: F, axes: &[Axis], config: &SearchConfig) -> Result<SearchOutcome>
where
    F: Fn(&[f64]) -> f64 + Sync,
{
    config.validate()?;
    if axes.is_empty() {
        let v = value_of(objective(&[]));
        return Ok(SearchOutcome {
            best_value: v,
            best_params: Vec::new(),
            coarse_points: 1,
            sampled: false,
        });
    }
    let (points, sampled) = coarse_points(axes, config);
    let values: Vec<f64> = points.par_iter().map(|p| objective(p)).collect();

    let mut order: Vec<usize> = (0..points.len()).collect();
    order.par_sort_unstable_by(|&a, &b| {
        rank((values[a], &points[a]), (values[b], &points[b])).then(a.cmp(&b))
    });
    let starts: Vec<usize> = order.iter().take(config.restarts).copied().collect();

    let steps: Vec<f64> = if sampled {
        let per_axis = (points.len() as f64).powf(1.0 / axes.len() as f64).max(2.0);
        axes.iter().map(|a| a.width() / per_axis).collect()
    } else {
        axes.iter()
            .map(|a| a.grid_step(config.grid_points_per_axis))
            .collect()
    };

    let refined: Vec<(f64, Vec<f64>)> = starts
        .par_iter()
        .map(|&i| refine(&objective, axes, points[i].clone(), steps.clone(), config))
        .collect();

    let best_coarse = (values[order[0]], points[order[0]].clone());
    let (best_value, best_params) = refined
        .into_iter()
        .chain(std::iter::once(best_coarse))
        .min_by(|a, b| rank((a.0, &a.1), (b.0, &b.1)))
        .expect("at least one candidate");
    Ok(SearchOutcome {
        best_value,
        best_params,
        coarse_points: points.len(),
        sampled,
    })
}

/// `|functional(a)|` for the coefficients generated by `model` at `params`.
pub fn pipeline_value(
    class: ClassTag,
    functional: FunctionalName,
    model: Model,
    params: &[f64],
) -> f64 {
    let n = functional.max_index();
    let c = model.decode(params, n - 1);
    match class.coeffs(&c, n).and_then(|a| functional.eval(&a)) {
        Ok(v) => v.norm(),
        Err(_) => f64::NAN,
    }
}

/// Maximizes `|functional|` over the class with the configured generator
/// and attaches the literature bound.
pub fn audit_class(
    class: ClassTag,
    functional: FunctionalName,
    config: &SearchConfig,
) -> Result<BoundReport> {
    let needed = functional.max_index() - 1;
    if let Some(max) = config.model.max_c_index() {
        if needed > max {
            return Err(Error::ModelInsufficient {
                model: config.model.to_string(),
                needed,
            });
        }
    }
    let model = config.model;
    let axes = model.search_box();
    let outcome = maximize(
        |p: &[f64]| pipeline_value(class, functional, model, p),
        &axes,
        config,
    )?;
    Ok(BoundReport::new(
        class,
        functional,
        model.to_string(),
        outcome.best_value,
        outcome.best_params,
        functional.reference_bound(class),
        config.tol,
    ))
}
