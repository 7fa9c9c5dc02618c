//! Objective functions over the parameter box.
//!
//! The main family is a Gaussian-well mixture: smooth, with basin geometry
//! and minima positions known by construction. On top of it sit an optional
//! sinusoidal noise corrugation and three time-varying regimes (drift,
//! rupture, catastrophe). A couple of analytic benchmark functions round out
//! the set for separability and multi-objective tests.

use crate::error::{Error, Result};
use crate::rng::{self, purpose};
use rand::Rng;
use std::f64::consts::TAU;

/// One Gaussian well: contributes `-depth * exp(-|x - center|^2 / (2 width^2))`.
#[derive(Debug, Clone, PartialEq)]
pub struct Well {
    pub center: Vec<f64>,
    pub depth: f64,
    pub width: f64,
}

impl Well {
    pub fn new(center: Vec<f64>, depth: f64, width: f64) -> Self {
        Well {
            center,
            depth,
            width,
        }
    }
}

/// Mixture value of a well set at `x`.
pub fn wells_eval(wells: &[Well], x: &[f64]) -> f64 {
    let mut total = 0.0;
    for w in wells {
        let sq: f64 = w
            .center
            .iter()
            .zip(x)
            .map(|(c, xi)| (xi - c) * (xi - c))
            .sum();
        total -= w.depth * (-sq / (2.0 * w.width * w.width)).exp();
    }
    total
}

/// How noise perturbs the base value.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NoiseMode {
    /// Deterministic corrugation: `A * prod_j sin(2 pi x_j / lambda + phi_j)`
    /// with phases drawn once per run. The surface itself gains artificial
    /// local minima; repeated evaluations agree.
    Phase,
    /// Per-evaluation jitter uniform in `[-A, A]`, keyed by the evaluation's
    /// noise seed.
    White,
}

/// Noise amplitude and spatial wavelength.
#[derive(Debug, Clone, PartialEq)]
pub struct NoiseConfig {
    pub amplitude: f64,
    pub wavelength: f64,
    pub mode: NoiseMode,
}

impl Default for NoiseConfig {
    fn default() -> Self {
        NoiseConfig {
            amplitude: 0.0,
            wavelength: 0.5,
            mode: NoiseMode::Phase,
        }
    }
}

impl NoiseConfig {
    pub fn validate(&self) -> Result<()> {
        if self.amplitude < 0.0 || !self.amplitude.is_finite() {
            return Err(Error::config("noise amplitude must be >= 0"));
        }
        if self.wavelength <= 0.0 || !self.wavelength.is_finite() {
            return Err(Error::config("noise wavelength must be > 0"));
        }
        Ok(())
    }
}

/// Time behaviour of a well landscape.
#[derive(Debug, Clone, PartialEq)]
pub enum Dynamics {
    Static,
    /// All centers move by `velocity` per generation, reflecting at the box
    /// walls.
    Drift { velocity: Vec<f64> },
    /// Depth ramps on a two-well landscape: well 0 loses `rate` per
    /// generation, well 1 gains it. With equal widths the global basin
    /// switches at `t* = (d0 - d1) / (2 rate)`.
    Rupture { rate: f64 },
    /// Well set is replaced wholesale at `event_time`.
    Catastrophe {
        event_time: u32,
        replacement: Vec<Well>,
    },
}

/// Which objective family a landscape evaluates.
#[derive(Debug, Clone)]
pub enum LandscapeKind {
    /// Gaussian-well mixture with a time regime.
    Wells {
        wells: Vec<Well>,
        dynamics: Dynamics,
    },
    /// `sum x_j^2`, separable convex baseline.
    Sphere,
    /// `(x0 - x1)^2 + 0.1 (x0 + x1 - 4)^2`, a coupled two-parameter
    /// quadratic with minimum at (2, 2).
    CoupledQuadratic,
    /// Bi-objective `(sum x_j^2, sum (x_j - 2)^2)`; for one parameter its
    /// Pareto set is exactly `[0, 2]`.
    TwoQuadratics,
}

/// A time-dependent, optionally noisy, optionally vector-valued objective
/// over a parameter box.
///
/// Evaluation is deterministic given `(x, t, noise_seed)`; the run-fixed
/// noise phases are drawn once at construction from the landscape's noise
/// seed and immutable thereafter.
#[derive(Debug, Clone)]
pub struct Landscape {
    kind: LandscapeKind,
    bounds: Vec<(f64, f64)>,
    noise: NoiseConfig,
    phases: Vec<f64>,
}

impl Landscape {
    pub fn new(
        kind: LandscapeKind,
        bounds: Vec<(f64, f64)>,
        noise: NoiseConfig,
        noise_seed: u64,
    ) -> Result<Self> {
        noise.validate()?;
        if bounds.is_empty() {
            return Err(Error::config("landscape needs at least one dimension"));
        }
        for &(lo, hi) in &bounds {
            if !(lo < hi) {
                return Err(Error::config("landscape bounds must satisfy lo < hi"));
            }
        }
        match &kind {
            LandscapeKind::Wells { wells, dynamics } => {
                if wells.is_empty() {
                    return Err(Error::config("well landscape needs at least one well"));
                }
                for w in wells {
                    validate_well(w, &bounds)?;
                }
                match dynamics {
                    Dynamics::Static => {}
                    Dynamics::Drift { velocity } => {
                        if velocity.len() != bounds.len() {
                            return Err(Error::config(
                                "drift velocity dimension must match the box",
                            ));
                        }
                    }
                    Dynamics::Rupture { rate } => {
                        if wells.len() != 2 {
                            return Err(Error::config(
                                "rupture dynamics needs exactly two wells",
                            ));
                        }
                        if *rate < 0.0 || !rate.is_finite() {
                            return Err(Error::config("rupture rate must be >= 0"));
                        }
                    }
                    Dynamics::Catastrophe {
                        replacement: new_wells,
                        ..
                    } => {
                        if new_wells.is_empty() {
                            return Err(Error::config(
                                "catastrophe needs a non-empty replacement well set",
                            ));
                        }
                        for w in new_wells {
                            validate_well(w, &bounds)?;
                        }
                    }
                }
            }
            LandscapeKind::CoupledQuadratic => {
                if bounds.len() != 2 {
                    return Err(Error::config(
                        "the coupled quadratic is defined over two parameters",
                    ));
                }
            }
            LandscapeKind::Sphere | LandscapeKind::TwoQuadratics => {}
        }
        if matches!(kind, LandscapeKind::TwoQuadratics) && noise.amplitude > 0.0 {
            return Err(Error::unsupported(
                "noise applies to single-objective landscapes only",
            ));
        }
        let mut phase_rng = rng::stream(noise_seed, &[purpose::NOISE_PHASE]);
        let phases = (0..bounds.len())
            .map(|_| phase_rng.random_range(0.0..TAU))
            .collect();
        Ok(Landscape {
            kind,
            bounds,
            noise,
            phases,
        })
    }

    /// Convenience constructor for a noiseless static landscape.
    pub fn noiseless(kind: LandscapeKind, bounds: Vec<(f64, f64)>) -> Result<Self> {
        Landscape::new(kind, bounds, NoiseConfig::default(), 0)
    }

    pub fn kind(&self) -> &LandscapeKind {
        &self.kind
    }

    pub fn noise(&self) -> &NoiseConfig {
        &self.noise
    }

    /// Objective count.
    pub fn objective_count(&self) -> usize {
        match self.kind {
            LandscapeKind::TwoQuadratics => 2,
            _ => 1,
        }
    }

    /// The well set in effect at generation `t`, if this is a well landscape.
    pub fn wells_at(&self, t: u32) -> Option<Vec<Well>> {
        let LandscapeKind::Wells { wells, dynamics } = &self.kind else {
            return None;
        };
        Some(match dynamics {
            Dynamics::Static => wells.clone(),
            Dynamics::Drift { velocity } => wells
                .iter()
                .map(|w| {
                    let center = w
                        .center
                        .iter()
                        .zip(velocity.iter().zip(&self.bounds))
                        .map(|(c, (v, &(lo, hi)))| reflect(c + t as f64 * v, lo, hi))
                        .collect();
                    Well::new(center, w.depth, w.width)
                })
                .collect(),
            Dynamics::Rupture { rate } => {
                let shift = rate * t as f64;
                vec![
                    Well::new(
                        wells[0].center.clone(),
                        (wells[0].depth - shift).max(0.0),
                        wells[0].width,
                    ),
                    Well::new(
                        wells[1].center.clone(),
                        wells[1].depth + shift,
                        wells[1].width,
                    ),
                ]
            }
            Dynamics::Catastrophe {
                event_time,
                replacement,
            } => {
                if t < *event_time {
                    wells.clone()
                } else {
                    replacement.clone()
                }
            }
        })
    }

    /// Fixed-size well roster used for niche accounting over a whole run.
    ///
    /// For static, drift and rupture regimes this is the instantaneous well
    /// set. For catastrophe it is the union of pre- and post-event centers,
    /// so occupancy columns keep their meaning across the event.
    pub fn niche_wells(&self, t: u32) -> Option<Vec<Well>> {
        let LandscapeKind::Wells { wells, dynamics } = &self.kind else {
            return None;
        };
        if let Dynamics::Catastrophe { replacement, .. } = dynamics {
            let mut roster = wells.clone();
            for w in replacement {
                if !roster.iter().any(|r| r.center == w.center) {
                    roster.push(w.clone());
                }
            }
            Some(roster)
        } else {
            self.wells_at(t)
        }
    }

    /// Center of the deepest well at generation `t`.
    pub fn global_center_at(&self, t: u32) -> Option<Vec<f64>> {
        let wells = self.wells_at(t)?;
        wells
            .iter()
            .max_by(|a, b| a.depth.total_cmp(&b.depth))
            .map(|w| w.center.clone())
    }

    /// True when the objective changes with `t`.
    pub fn time_varying(&self) -> bool {
        matches!(
            self.kind,
            LandscapeKind::Wells {
                dynamics: Dynamics::Drift { .. }
                    | Dynamics::Rupture { .. }
                    | Dynamics::Catastrophe { .. },
                ..
            }
        )
    }

    /// True when evaluations carry a noise term.
    pub fn is_noisy(&self) -> bool {
        self.noise.amplitude > 0.0
    }

    /// Checks regime parameters against a run horizon of `g` generations.
    pub fn validate_horizon(&self, g: u32) -> Result<()> {
        if let LandscapeKind::Wells {
            wells,
            dynamics: Dynamics::Rupture { rate },
        } = &self.kind
        {
            if wells[0].depth - rate * g as f64 < 0.0 {
                return Err(Error::config(format!(
                    "rupture ramp drives well 0 depth below zero before generation {g}"
                )));
            }
        }
        Ok(())
    }

    fn base_value(&self, x: &[f64], t: u32) -> f64 {
        match &self.kind {
            LandscapeKind::Wells { .. } => {
                wells_eval(&self.wells_at(t).expect("well landscape"), x)
            }
            LandscapeKind::Sphere => x.iter().map(|v| v * v).sum(),
            LandscapeKind::CoupledQuadratic => {
                let d = x[0] - x[1];
                let s = x[0] + x[1] - 4.0;
                d * d + 0.1 * s * s
            }
            LandscapeKind::TwoQuadratics => unreachable!("vector-valued"),
        }
    }

    fn noise_term(&self, x: &[f64], noise_seed: u64) -> f64 {
        if self.noise.amplitude == 0.0 {
            return 0.0;
        }
        match self.noise.mode {
            NoiseMode::Phase => {
                let mut product = 1.0;
                for (xi, phi) in x.iter().zip(&self.phases) {
                    product *= (TAU * xi / self.noise.wavelength + phi).sin();
                }
                self.noise.amplitude * product
            }
            NoiseMode::White => {
                let mut r = rng::stream(noise_seed, &[purpose::EVAL]);
                self.noise.amplitude * (2.0 * r.random::<f64>() - 1.0)
            }
        }
    }

    /// Objective vector at `x` and generation `t`.
    pub fn evaluate(&self, x: &[f64], t: u32, noise_seed: u64) -> Vec<f64> {
        match &self.kind {
            LandscapeKind::TwoQuadratics => {
                let f0: f64 = x.iter().map(|v| v * v).sum();
                let f1: f64 = x.iter().map(|v| (v - 2.0) * (v - 2.0)).sum();
                vec![f0, f1]
            }
            _ => vec![self.base_value(x, t) + self.noise_term(x, noise_seed)],
        }
    }
}

fn validate_well(w: &Well, bounds: &[(f64, f64)]) -> Result<()> {
    if w.center.len() != bounds.len() {
        return Err(Error::config(
            "well center dimension must match the parameter box",
        ));
    }
    for (c, &(lo, hi)) in w.center.iter().zip(bounds) {
        if *c < lo || *c > hi {
            return Err(Error::config(format!(
                "well center coordinate {c} outside [{lo}, {hi}]"
            )));
        }
    }
    if w.depth <= 0.0 || !w.depth.is_finite() {
        return Err(Error::config("well depth must be > 0"));
    }
    if w.width <= 0.0 || !w.width.is_finite() {
        return Err(Error::config("well width must be > 0"));
    }
    Ok(())
}

/// Folds a coordinate back into `[lo, hi]` by reflection at the walls.
fn reflect(value: f64, lo: f64, hi: f64) -> f64 {
    let span = hi - lo;
    let wrapped = (value - lo).rem_euclid(2.0 * span);
    if wrapped <= span {
        lo + wrapped
    } else {
        lo + 2.0 * span - wrapped
    }
}

/// An objective a run driver can evaluate.
///
/// Implementations must be deterministic in `(x, t, noise_seed)`.
pub trait CostFn {
    /// Number of objectives.
    fn objective_count(&self) -> usize;
    /// Parameter box.
    fn bounds(&self) -> &[(f64, f64)];
    /// Objective vector at `x`, generation `t`.
    fn evaluate(&self, x: &[f64], t: u32, noise_seed: u64) -> Vec<f64>;
    /// Whether values change with `t` (forces per-generation re-evaluation).
    fn time_varying(&self) -> bool {
        false
    }
    /// Whether values carry noise (forces per-generation re-evaluation).
    fn is_noisy(&self) -> bool {
        false
    }
    /// Wells to count niche occupancy against, when meaningful.
    fn niche_wells(&self, _t: u32) -> Option<Vec<Well>> {
        None
    }
    /// Center of the current global optimum, when known analytically.
    fn global_center_at(&self, _t: u32) -> Option<Vec<f64>> {
        None
    }
    /// Regime checks against the run horizon.
    fn validate_horizon(&self, _g: u32) -> Result<()> {
        Ok(())
    }
}

impl CostFn for Landscape {
    fn objective_count(&self) -> usize {
        self.objective_count()
    }

    fn bounds(&self) -> &[(f64, f64)] {
        &self.bounds
    }

    fn evaluate(&self, x: &[f64], t: u32, noise_seed: u64) -> Vec<f64> {
        Landscape::evaluate(self, x, t, noise_seed)
    }

    fn time_varying(&self) -> bool {
        Landscape::time_varying(self)
    }

    fn is_noisy(&self) -> bool {
        Landscape::is_noisy(self)
    }

    fn niche_wells(&self, t: u32) -> Option<Vec<Well>> {
        Landscape::niche_wells(self, t)
    }

    fn global_center_at(&self, t: u32) -> Option<Vec<f64>> {
        Landscape::global_center_at(self, t)
    }

    fn validate_horizon(&self, g: u32) -> Result<()> {
        Landscape::validate_horizon(self, g)
    }
}

/// Stock well sets and schedules used by the experiment configurations.
pub mod presets {
    use super::{Dynamics, Well};

    /// Box for the stock two-parameter landscapes.
    pub const BOX_10: (f64, f64) = (0.0, 10.0);

    /// Four wells on `[0, 10]^2`: one global minimum of depth 4.0 at
    /// (7.5, 7.5) and three locals. All widths 0.9, so wells interact below
    /// 1e-6 at these spacings and each minimum value is its depth within
    /// 1e-6.
    pub fn four_wells() -> Vec<Well> {
        vec![
            Well::new(vec![7.5, 7.5], 4.0, 0.9),
            Well::new(vec![2.0, 2.0], 3.0, 0.9),
            Well::new(vec![2.0, 8.0], 2.5, 0.9),
            Well::new(vec![8.0, 2.0], 2.0, 0.9),
        ]
    }

    /// Two equal wells on `[0, 10]^2`, the resource-sharing testbed.
    pub fn two_wells() -> Vec<Well> {
        vec![
            Well::new(vec![3.0, 5.0], 3.0, 0.9),
            Well::new(vec![7.0, 5.0], 3.0, 0.9),
        ]
    }

    /// Two-well pair for depth-ramp ruptures: A starts dominant at (3, 5),
    /// B starts shallower at (8, 5). With the default rate 0.02 the depths
    /// cross at t* = 50.
    pub fn rupture_wells() -> Vec<Well> {
        vec![
            Well::new(vec![3.0, 5.0], 4.0, 0.9),
            Well::new(vec![8.0, 5.0], 2.0, 0.9),
        ]
    }

    /// Default rupture ramp rate per generation.
    pub const RUPTURE_RATE: f64 = 0.02;

    /// Default drift velocity per generation.
    pub fn drift_velocity() -> Vec<f64> {
        vec![0.02, 0.01]
    }

    /// Default drift schedule over the four-well landscape.
    pub fn drift_dynamics() -> Dynamics {
        Dynamics::Drift {
            velocity: drift_velocity(),
        }
    }

    /// Default catastrophe event time.
    pub const CATASTROPHE_TIME: u32 = 60;

    /// Replacement set after the default catastrophe: the old wells at half
    /// depth plus a broad new global well at (1, 9).
    pub fn catastrophe_replacement() -> Vec<Well> {
        let mut wells: Vec<Well> = four_wells()
            .into_iter()
            .map(|w| Well::new(w.center, w.depth / 2.0, w.width))
            .collect();
        wells.push(Well::new(vec![1.0, 9.0], 4.0, 2.0));
        wells
    }

    /// Default catastrophe schedule over the four-well landscape.
    pub fn catastrophe_dynamics() -> Dynamics {
        Dynamics::Catastrophe {
            event_time: CATASTROPHE_TIME,
            replacement: catastrophe_replacement(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn box2() -> Vec<(f64, f64)> {
        vec![(0.0, 10.0), (0.0, 10.0)]
    }

    fn static_four_wells() -> Landscape {
        Landscape::noiseless(
            LandscapeKind::Wells {
                wells: presets::four_wells(),
                dynamics: Dynamics::Static,
            },
            box2(),
        )
        .unwrap()
    }

    /// Two-stage grid argmin: coarse pass at `coarse` spacing, then a fine
    /// pass at `fine` spacing in a one-coarse-cell window around the coarse
    /// argmin. Valid here because the mixture's gradient is bounded well
    /// below the depth gaps at coarse spacing.
    fn grid_argmin(
        f: &dyn Fn(&[f64]) -> f64,
        bounds: &[(f64, f64)],
        coarse: f64,
        fine: f64,
    ) -> (Vec<f64>, f64) {
        let scan = |lo: &[f64], hi: &[f64], step: f64| -> (Vec<f64>, f64) {
            let nx = ((hi[0] - lo[0]) / step).round() as usize;
            let ny = ((hi[1] - lo[1]) / step).round() as usize;
            let mut best = (vec![lo[0], lo[1]], f64::INFINITY);
            for i in 0..=nx {
                for j in 0..=ny {
                    let x = [lo[0] + i as f64 * step, lo[1] + j as f64 * step];
                    let v = f(&x);
                    if v < best.1 {
                        best = (x.to_vec(), v);
                    }
                }
            }
            best
        };
        let lo: Vec<f64> = bounds.iter().map(|b| b.0).collect();
        let hi: Vec<f64> = bounds.iter().map(|b| b.1).collect();
        let (cx, _) = scan(&lo, &hi, coarse);
        let wlo: Vec<f64> = cx
            .iter()
            .zip(bounds)
            .map(|(c, &(l, _))| (c - 2.0 * coarse).max(l))
            .collect();
        let whi: Vec<f64> = cx
            .iter()
            .zip(bounds)
            .map(|(c, &(_, h))| (c + 2.0 * coarse).min(h))
            .collect();
        scan(&wlo, &whi, fine)
    }

    #[test]
    fn single_well_center_value() {
        let wells = vec![Well::new(vec![3.0, 4.0], 4.0, 0.9)];
        assert_eq!(wells_eval(&wells, &[3.0, 4.0]), -4.0);
    }

    #[test]
    fn far_field_is_negligible() {
        // Gaussian tail: beyond 6 widths the contribution is < 1e-6 of the
        // depth. Check points at >= 6 * 0.9 = 5.4 from every center.
        let wells = vec![
            Well::new(vec![7.5, 7.5], 4.0, 0.9),
            Well::new(vec![8.0, 9.0], 2.0, 0.9),
        ];
        for x in [[0.5, 0.5], [1.0, 0.0], [0.0, 2.0]] {
            let min_dist = wells
                .iter()
                .map(|w| {
                    w.center
                        .iter()
                        .zip(&x)
                        .map(|(c, xi)| (xi - c) * (xi - c))
                        .sum::<f64>()
                        .sqrt()
                })
                .fold(f64::INFINITY, f64::min);
            assert!(min_dist >= 5.4);
            assert!(wells_eval(&wells, &x).abs() < 1e-6 * 4.0);
        }
    }

    #[test]
    fn canonical_instance_minimum_matches_grid_oracle() {
        let ls = static_four_wells();
        let f = |x: &[f64]| ls.evaluate(x, 0, 0)[0];
        let (x, v) = grid_argmin(&f, &box2(), 0.01, 0.001);
        assert!((v - (-4.0)).abs() < 1e-6, "grid minimum {v}");
        assert!((x[0] - 7.5).abs() <= 1e-3 + 1e-9);
        assert!((x[1] - 7.5).abs() <= 1e-3 + 1e-9);
    }

    #[test]
    fn each_canonical_well_value_equals_its_depth() {
        let wells = presets::four_wells();
        for w in &wells {
            let v = wells_eval(&wells, &w.center);
            assert!(
                (v + w.depth).abs() < 1e-6,
                "well at {:?} has value {v}",
                w.center
            );
        }
    }

    #[test]
    fn zero_amplitude_noise_is_identity() {
        let base = static_four_wells();
        let noisy = Landscape::new(
            LandscapeKind::Wells {
                wells: presets::four_wells(),
                dynamics: Dynamics::Static,
            },
            box2(),
            NoiseConfig {
                amplitude: 0.0,
                wavelength: 0.5,
                mode: NoiseMode::Phase,
            },
            1234,
        )
        .unwrap();
        for i in 0..20 {
            let x = [i as f64 * 0.47 % 10.0, (i * 3) as f64 * 0.31 % 10.0];
            assert_eq!(base.evaluate(&x, 0, 7)[0], noisy.evaluate(&x, 0, 7)[0]);
        }
    }

    #[test]
    fn noise_is_bounded_by_amplitude() {
        let base = static_four_wells();
        for mode in [NoiseMode::Phase, NoiseMode::White] {
            let noisy = Landscape::new(
                LandscapeKind::Wells {
                    wells: presets::four_wells(),
                    dynamics: Dynamics::Static,
                },
                box2(),
                NoiseConfig {
                    amplitude: 0.3,
                    wavelength: 0.5,
                    mode,
                },
                99,
            )
            .unwrap();
            for i in 0..300 {
                let x = [(i % 17) as f64 * 0.61 % 10.0, (i % 23) as f64 * 0.43 % 10.0];
                let d = (noisy.evaluate(&x, 0, i as u64)[0]
                    - base.evaluate(&x, 0, i as u64)[0])
                    .abs();
                assert!(d <= 0.3 + 1e-12, "noise excursion {d}");
            }
        }
    }

    #[test]
    fn corrugation_multiplies_local_minima() {
        // Census of strict local minima (8-neighborhood) on a 100x100 grid.
        let census = |ls: &Landscape| -> usize {
            let n = 100;
            let h = 10.0 / n as f64;
            let value = |i: usize, j: usize| {
                ls.evaluate(&[i as f64 * h, j as f64 * h], 0, 0)[0]
            };
            let mut count = 0;
            for i in 1..n {
                for j in 1..n {
                    let v = value(i, j);
                    let mut is_min = true;
                    'nb: for di in -1i64..=1 {
                        for dj in -1i64..=1 {
                            if di == 0 && dj == 0 {
                                continue;
                            }
                            if value((i as i64 + di) as usize, (j as i64 + dj) as usize)
                                <= v
                            {
                                is_min = false;
                                break 'nb;
                            }
                        }
                    }
                    if is_min {
                        count += 1;
                    }
                }
            }
            count
        };
        let base = static_four_wells();
        let noisy = Landscape::new(
            LandscapeKind::Wells {
                wells: presets::four_wells(),
                dynamics: Dynamics::Static,
            },
            box2(),
            NoiseConfig {
                amplitude: 0.3,
                wavelength: 0.5,
                mode: NoiseMode::Phase,
            },
            2024,
        )
        .unwrap();
        assert!(census(&base) <= 4);
        assert!(census(&noisy) > 4, "census = {}", census(&noisy));
    }

    #[test]
    fn zero_velocity_drift_is_static() {
        let drifting = Landscape::noiseless(
            LandscapeKind::Wells {
                wells: presets::four_wells(),
                dynamics: Dynamics::Drift {
                    velocity: vec![0.0, 0.0],
                },
            },
            box2(),
        )
        .unwrap();
        let fixed = static_four_wells();
        for t in [0, 10, 100, 1000] {
            let x = [4.2, 6.6];
            assert_eq!(drifting.evaluate(&x, t, 0), fixed.evaluate(&x, t, 0));
        }
    }

    #[test]
    fn drift_reflects_at_walls() {
        let ls = Landscape::noiseless(
            LandscapeKind::Wells {
                wells: vec![Well::new(vec![9.0, 5.0], 1.0, 0.9)],
                dynamics: Dynamics::Drift {
                    velocity: vec![0.5, 0.0],
                },
            },
            box2(),
        )
        .unwrap();
        // 9.0 + 4 * 0.5 = 11 -> reflected to 9.
        let wells = ls.wells_at(4).unwrap();
        assert!((wells[0].center[0] - 9.0).abs() < 1e-12);
        // 9.0 + 6 * 0.5 = 12 -> reflected to 8.
        let wells = ls.wells_at(6).unwrap();
        assert!((wells[0].center[0] - 8.0).abs() < 1e-12);
        for t in 0..100 {
            let c = ls.wells_at(t).unwrap()[0].center[0];
            assert!((0.0..=10.0).contains(&c));
        }
    }

    #[test]
    fn rupture_depths_cross_at_expected_time() {
        // d_a(t) = 4 - 0.02 t, d_b(t) = 2 + 0.02 t meet at t* = 50.
        let ls = Landscape::noiseless(
            LandscapeKind::Wells {
                wells: presets::rupture_wells(),
                dynamics: Dynamics::Rupture {
                    rate: presets::RUPTURE_RATE,
                },
            },
            box2(),
        )
        .unwrap();
        let at = |t: u32| {
            let w = ls.wells_at(t).unwrap();
            (w[0].depth, w[1].depth)
        };
        let (a, b) = at(50);
        assert!((a - b).abs() < 1e-12);
        let (a, b) = at(49);
        assert!(a > b);
        let (a, b) = at(51);
        assert!(a < b);
        assert_eq!(ls.global_center_at(49).unwrap(), vec![3.0, 5.0]);
        assert_eq!(ls.global_center_at(51).unwrap(), vec![8.0, 5.0]);
    }

    #[test]
    fn rupture_horizon_validation() {
        let ls = Landscape::noiseless(
            LandscapeKind::Wells {
                wells: presets::rupture_wells(),
                dynamics: Dynamics::Rupture { rate: 0.02 },
            },
            box2(),
        )
        .unwrap();
        assert!(ls.validate_horizon(100).is_ok());
        assert!(ls.validate_horizon(500).is_err());
    }

    #[test]
    fn catastrophe_switches_well_sets() {
        let ls = Landscape::noiseless(
            LandscapeKind::Wells {
                wells: presets::four_wells(),
                dynamics: presets::catastrophe_dynamics(),
            },
            box2(),
        )
        .unwrap();
        let x = [7.5, 7.5];
        let before = ls.evaluate(&x, presets::CATASTROPHE_TIME - 1, 0)[0];
        let after = ls.evaluate(&x, presets::CATASTROPHE_TIME, 0)[0];
        assert!((before + 4.0).abs() < 1e-3);
        // After the event the old global is halved.
        assert!(after > before + 1.5);
        // Roster is stable across the event and has one extra center.
        let roster = ls.niche_wells(0).unwrap();
        assert_eq!(roster.len(), 5);
        assert_eq!(
            ls.niche_wells(presets::CATASTROPHE_TIME + 1).unwrap().len(),
            5
        );
    }

    #[test]
    fn two_quadratics_is_bi_objective() {
        let ls = Landscape::noiseless(LandscapeKind::TwoQuadratics, vec![(-1.0, 3.0)])
            .unwrap();
        assert_eq!(ls.objective_count(), 2);
        let v = ls.evaluate(&[1.0], 0, 0);
        assert_eq!(v, vec![1.0, 1.0]);
    }

    #[test]
    fn reflect_folds_into_range() {
        assert!((reflect(11.0, 0.0, 10.0) - 9.0).abs() < 1e-12);
        assert!((reflect(-1.0, 0.0, 10.0) - 1.0).abs() < 1e-12);
        assert!((reflect(21.0, 0.0, 10.0) - 1.0).abs() < 1e-12);
        assert!((reflect(7.0, 0.0, 10.0) - 7.0).abs() < 1e-12);
    }
}
