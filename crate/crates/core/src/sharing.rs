//! Resource partitioning: fitness sharing and niche-occupancy accounting.
//!
//! Crowding is measured in decoded parameter space. The niche count of
//! member `i` is `m_i = sum_j sh(d_ij)` with the triangular kernel
//! `sh(d) = 1 - (d / sigma)^alpha` for `d < sigma`, else 0; `m_i >= 1`
//! always since a member is at distance 0 from itself. The shared cost adds
//! a penalty per crowding unit, `cost_i + beta * (m_i - 1)`, which keeps
//! minimization semantics for costs of any sign and is the identity on
//! populations whose members are mutually farther apart than `sigma`.

use crate::error::{Error, Result};
use crate::genome::GenomeSpec;
use crate::landscape::Well;
use crate::population::Population;

/// Fitness-sharing parameters.
///
/// `sigma` is a plain Euclidean distance between decoded parameter vectors;
/// the default 1.5 separates the stock well layouts, whose centers are 4 or
/// more apart.
#[derive(Debug, Clone)]
pub struct SharingConfig {
    pub enabled: bool,
    pub sigma: f64,
    pub alpha: f64,
    /// Cost penalty per crowding unit.
    pub beta: f64,
}

impl Default for SharingConfig {
    fn default() -> Self {
        SharingConfig {
            enabled: false,
            sigma: 1.5,
            alpha: 1.0,
            beta: 0.2,
        }
    }
}

impl SharingConfig {
    pub fn validate(&self) -> Result<()> {
        if self.sigma <= 0.0 || !self.sigma.is_finite() {
            return Err(Error::config("sharing sigma must be > 0"));
        }
        if self.alpha <= 0.0 || !self.alpha.is_finite() {
            return Err(Error::config("sharing alpha must be > 0"));
        }
        if self.beta < 0.0 || !self.beta.is_finite() {
            return Err(Error::config("sharing beta must be >= 0"));
        }
        Ok(())
    }
}

/// Occupant counts per well, nearest-center partition.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NicheReport {
    pub counts: Vec<usize>,
}

fn euclidean(a: &[f64], b: &[f64]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y) * (x - y))
        .sum::<f64>()
        .sqrt()
}

/// Niche counts `m_i` for a set of decoded points.
pub fn niche_counts(points: &[Vec<f64>], cfg: &SharingConfig) -> Vec<f64> {
    let n = points.len();
    let mut m = vec![0.0; n];
    for i in 0..n {
        for j in 0..n {
            let d = euclidean(&points[i], &points[j]);
            if d < cfg.sigma {
                m[i] += 1.0 - (d / cfg.sigma).powf(cfg.alpha);
            }
        }
    }
    m
}

/// Sharing-adjusted scalar costs: `cost_i + beta * (m_i - 1)`.
pub fn shared_cost(
    pop: &Population,
    spec: &GenomeSpec,
    cfg: &SharingConfig,
) -> Result<Vec<f64>> {
    cfg.validate()?;
    let raw = pop.scalar_costs()?;
    let points = pop.decoded(spec)?;
    let m = niche_counts(&points, cfg);
    Ok(raw
        .iter()
        .zip(&m)
        .map(|(c, mi)| c + cfg.beta * (mi - 1.0))
        .collect())
}

/// Counts members by nearest well center; ties go to the lower well index.
pub fn niche_report(
    pop: &Population,
    spec: &GenomeSpec,
    wells: &[Well],
) -> Result<NicheReport> {
    if wells.is_empty() {
        return Err(Error::domain("niche report needs at least one well"));
    }
    let points = pop.decoded(spec)?;
    let mut counts = vec![0usize; wells.len()];
    for p in &points {
        let mut best = 0;
        let mut best_d = f64::INFINITY;
        for (w_idx, w) in wells.iter().enumerate() {
            let d = euclidean(p, &w.center);
            if d < best_d {
                best_d = d;
                best = w_idx;
            }
        }
        counts[best] += 1;
    }
    Ok(NicheReport { counts })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::genome::{GenomeSpec, ParamSpec};
    use crate::population::{Individual, Population};
    use crate::rng::{self, purpose};
    use rand::Rng;

    fn spec2() -> GenomeSpec {
        GenomeSpec::new(vec![
            ParamSpec::new("x", 0.0, 10.0, 16).unwrap(),
            ParamSpec::new("y", 0.0, 10.0, 16).unwrap(),
        ])
        .unwrap()
    }

    fn pop_at(points: &[[f64; 2]], spec: &GenomeSpec) -> Population {
        let members = points
            .iter()
            .map(|p| {
                let mut ind = Individual::new(spec.encode(&p[..]).unwrap(), 0);
                ind.cost = Some(vec![-1.0]);
                ind
            })
            .collect();
        Population::new(members, 0)
    }

    #[test]
    fn dispersed_population_is_identity() {
        let spec = spec2();
        let cfg = SharingConfig {
            enabled: true,
            ..SharingConfig::default()
        };
        let pop = pop_at(&[[0.0, 0.0], [5.0, 0.0], [0.0, 5.0], [9.0, 9.0]], &spec);
        let shared = shared_cost(&pop, &spec, &cfg).unwrap();
        assert_eq!(shared, pop.scalar_costs().unwrap());
    }

    #[test]
    fn coincident_pair_gets_one_beta() {
        let spec = spec2();
        let cfg = SharingConfig {
            enabled: true,
            ..SharingConfig::default()
        };
        let pop = pop_at(&[[4.0, 4.0], [4.0, 4.0], [9.0, 9.0]], &spec);
        let shared = shared_cost(&pop, &spec, &cfg).unwrap();
        assert!((shared[0] - (-1.0 + cfg.beta)).abs() < 1e-12);
        assert!((shared[1] - (-1.0 + cfg.beta)).abs() < 1e-12);
        assert!((shared[2] - (-1.0)).abs() < 1e-12);
    }

    #[test]
    fn niche_counts_match_brute_force() {
        let cfg = SharingConfig::default();
        let mut r = rng::stream(17, &[purpose::INIT]);
        let points: Vec<Vec<f64>> = (0..20)
            .map(|_| vec![r.random_range(0.0..4.0), r.random_range(0.0..4.0)])
            .collect();
        let m = niche_counts(&points, &cfg);
        // Brute-force pairwise recomputation.
        for i in 0..points.len() {
            let mut expected = 0.0;
            for j in 0..points.len() {
                let d: f64 = points[i]
                    .iter()
                    .zip(&points[j])
                    .map(|(a, b)| (a - b) * (a - b))
                    .sum::<f64>()
                    .sqrt();
                if d < cfg.sigma {
                    expected += 1.0 - (d / cfg.sigma).powf(cfg.alpha);
                }
            }
            assert_eq!(m[i], expected);
            assert!(m[i] >= 1.0);
        }
    }

    #[test]
    fn duplicating_a_point_never_decreases_its_count() {
        let cfg = SharingConfig::default();
        let mut r = rng::stream(23, &[purpose::INIT]);
        for _ in 0..50 {
            let mut points: Vec<Vec<f64>> = (0..10)
                .map(|_| vec![r.random_range(0.0..3.0), r.random_range(0.0..3.0)])
                .collect();
            let i = r.random_range(0..points.len());
            let before = niche_counts(&points, &cfg)[i];
            points.push(points[i].clone());
            let after = niche_counts(&points, &cfg)[i];
            assert!(after >= before);
        }
    }

    #[test]
    fn niche_report_all_at_one_center() {
        let spec = spec2();
        let wells = crate::landscape::presets::two_wells();
        let pop = pop_at(&[[3.0, 5.0]; 7], &spec);
        let report = niche_report(&pop, &spec, &wells).unwrap();
        assert_eq!(report.counts, vec![7, 0]);
    }

    #[test]
    fn niche_report_rejects_empty_well_list() {
        let spec = spec2();
        let pop = pop_at(&[[3.0, 5.0]], &spec);
        assert!(niche_report(&pop, &spec, &[]).is_err());
    }

    #[test]
    fn niche_report_counts_follow_cell_areas() {
        // Four centers whose Voronoi cells are the box quadrants, each of
        // area 25: a uniform population splits evenly up to noise.
        let spec = spec2();
        let wells = vec![
            Well::new(vec![2.5, 2.5], 1.0, 1.0),
            Well::new(vec![2.5, 7.5], 1.0, 1.0),
            Well::new(vec![7.5, 2.5], 1.0, 1.0),
            Well::new(vec![7.5, 7.5], 1.0, 1.0),
        ];
        let mut r = rng::stream(5, &[purpose::INIT, 2]);
        let n = 10_000;
        let points: Vec<[f64; 2]> = (0..n)
            .map(|_| [r.random_range(0.0..10.0), r.random_range(0.0..10.0)])
            .collect();
        let pop = pop_at(&points, &spec);
        let report = niche_report(&pop, &spec, &wells).unwrap();
        assert_eq!(report.counts.iter().sum::<usize>(), n);
        for &c in &report.counts {
            let frac = c as f64 / n as f64;
            // 5 sigma of a binomial with p = 0.25.
            assert!((frac - 0.25).abs() < 0.022, "fraction {frac}");
        }
    }

    #[test]
    fn ties_break_toward_lower_index() {
        // 4 bits on [0, 15] decode integers exactly, so the midpoint tie is
        // exact.
        let spec = GenomeSpec::new(vec![
            ParamSpec::new("x", 0.0, 15.0, 4).unwrap(),
            ParamSpec::new("y", 0.0, 15.0, 4).unwrap(),
        ])
        .unwrap();
        let wells = vec![
            Well::new(vec![4.0, 5.0], 1.0, 1.0),
            Well::new(vec![6.0, 5.0], 1.0, 1.0),
        ];
        let pop = pop_at(&[[5.0, 5.0]], &spec);
        let report = niche_report(&pop, &spec, &wells).unwrap();
        assert_eq!(report.counts, vec![1, 0]);
    }
}
