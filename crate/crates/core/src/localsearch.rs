//! Deterministic derivative-free local baseline: compass search.
//!
//! Polls the axes in a fixed order (+x0, -x0, +x1, -x1, ...), moves to the
//! first strict improvement, halves the step pattern after a fully failed
//! poll. Trajectories are bit-reproducible from the start point; the method
//! converges into whatever basin the start point belongs to.

use crate::error::{Error, Result};
use crate::landscape::CostFn;

/// Compass-search parameters, as fractions of each parameter's range.
#[derive(Debug, Clone)]
pub struct PatternConfig {
    /// Initial step per dimension, fraction of range.
    pub initial_step: f64,
    /// Step multiplier after a failed poll.
    pub shrink: f64,
    /// Termination threshold: stop once all steps fall below this fraction
    /// of their range.
    pub min_step: f64,
    /// Evaluation budget.
    pub max_evals: u64,
}

impl Default for PatternConfig {
    fn default() -> Self {
        PatternConfig {
            initial_step: 0.1,
            shrink: 0.5,
            min_step: 1e-6,
            max_evals: 10_000,
        }
    }
}

impl PatternConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.shrink > 0.0 && self.shrink < 1.0) {
            return Err(Error::config("shrink must be in (0, 1)"));
        }
        if self.min_step <= 0.0 || self.initial_step <= 0.0 {
            return Err(Error::config("steps must be > 0"));
        }
        if self.max_evals == 0 {
            return Err(Error::config("max_evals must be >= 1"));
        }
        Ok(())
    }
}

/// Final point, its cost and the evaluations spent.
#[derive(Debug, Clone, PartialEq)]
pub struct PatternOutcome {
    pub x: Vec<f64>,
    pub cost: f64,
    pub evaluations: u64,
}

/// Runs compass search from `x0`. The incumbent cost never increases.
pub fn pattern_search(
    cost: &dyn CostFn,
    x0: &[f64],
    cfg: &PatternConfig,
) -> Result<PatternOutcome> {
    cfg.validate()?;
    if cost.objective_count() != 1 {
        return Err(Error::unsupported(
            "pattern search handles single-objective landscapes only",
        ));
    }
    let bounds = cost.bounds();
    if x0.len() != bounds.len() {
        return Err(Error::LengthMismatch {
            expected: bounds.len(),
            got: x0.len(),
        });
    }
    for (v, &(lo, hi)) in x0.iter().zip(bounds) {
        if *v < lo || *v > hi || !v.is_finite() {
            return Err(Error::domain(format!(
                "start coordinate {v} outside [{lo}, {hi}]"
            )));
        }
    }

    let ranges: Vec<f64> = bounds.iter().map(|&(lo, hi)| hi - lo).collect();
    let mut steps: Vec<f64> = ranges.iter().map(|r| cfg.initial_step * r).collect();
    let mut evals: u64 = 0;
    // Evaluations are keyed by a running counter so white-noise landscapes
    // stay deterministic per trajectory.
    let mut eval = |x: &[f64], evals: &mut u64| -> f64 {
        let v = cost.evaluate(x, 0, *evals)[0];
        *evals += 1;
        v
    };

    let mut x = x0.to_vec();
    let mut fx = eval(&x, &mut evals);
    'outer: while evals < cfg.max_evals {
        let done = steps
            .iter()
            .zip(&ranges)
            .all(|(s, r)| s / r < cfg.min_step);
        if done {
            break;
        }
        let mut improved = false;
        for j in 0..x.len() {
            for dir in [1.0, -1.0] {
                let candidate_j =
                    (x[j] + dir * steps[j]).clamp(bounds[j].0, bounds[j].1);
                if candidate_j == x[j] {
                    continue;
                }
                let mut candidate = x.clone();
                candidate[j] = candidate_j;
                let fc = eval(&candidate, &mut evals);
                if fc < fx {
                    x = candidate;
                    fx = fc;
                    improved = true;
                    break;
                }
                if evals >= cfg.max_evals {
                    break 'outer;
                }
            }
            if improved {
                break;
            }
        }
        if !improved {
            for s in &mut steps {
                *s *= cfg.shrink;
            }
        }
    }
    Ok(PatternOutcome {
        x,
        cost: fx,
        evaluations: evals,
    })
}
