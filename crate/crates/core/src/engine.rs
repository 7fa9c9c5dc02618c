//! The generational loop: initialize uniformly, evaluate N individuals,
//! breed N offspring, merge, eliminate back to N, repeat.
//!
//! Determinism contract: the trace is a pure function of the run
//! configuration and the cost function's specification. Every random
//! decision draws from a stream derived from `(seed, purpose, generation,
//! slot)` (see [`crate::rng`]), so per-individual evaluation is independent
//! of scheduling order and may be distributed; results must be merged back
//! by slot index, never completion order.

use crate::error::{Error, Result};
use crate::genome::{Chromosome, GenomeSpec};
use crate::landscape::CostFn;
use crate::operators::{
    self, CostOrder, OperatorConfig, ScalarOrder,
};
use crate::pareto::{ParetoArchive, ParetoOrder};
use crate::population::{Individual, Population};
use crate::rng::{self, purpose};
use crate::sharing::{self, SharingConfig};
use crate::trace::{RunTrace, TraceRow};
use rand::Rng;
use rand_distr::{Distribution, Poisson};

/// Minimum best-cost improvement that counts against stagnation windows.
pub const STAGNATION_EPS: f64 = 1e-12;

/// When a run ends, besides exhausting the generation budget.
#[derive(Debug, Clone, PartialEq)]
pub enum StopRule {
    /// Run the full generation budget.
    Budget,
    /// Stop once the best cost reaches the target.
    TargetCost(f64),
    /// Stop after `window` generations without improvement beyond
    /// [`STAGNATION_EPS`].
    Stagnation { window: u32 },
}

impl Default for StopRule {
    fn default() -> Self {
        StopRule::Budget
    }
}

/// Everything a run needs besides the cost function.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub seed: u64,
    /// Population size N.
    pub pop_size: usize,
    /// Generation budget G.
    pub generations: u32,
    pub operators: OperatorConfig,
    pub genome: GenomeSpec,
    pub sharing: SharingConfig,
    pub stop: StopRule,
}

impl RunConfig {
    pub fn new(seed: u64, pop_size: usize, generations: u32, genome: GenomeSpec) -> Self {
        RunConfig {
            seed,
            pop_size,
            generations,
            operators: OperatorConfig::default(),
            genome,
            sharing: SharingConfig::default(),
            stop: StopRule::default(),
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.pop_size < 2 {
            return Err(Error::config("population size must be at least 2"));
        }
        self.operators.validate(self.pop_size)?;
        self.sharing.validate()?;
        if let StopRule::Stagnation { window } = self.stop {
            if window == 0 {
                return Err(Error::config("stagnation window must be >= 1"));
            }
        }
        Ok(())
    }
}

/// Uniform initial population, evaluated at generation 0.
pub fn init_population(cfg: &RunConfig, cost: &dyn CostFn) -> Result<Population> {
    cfg.validate()?;
    let len = cfg.genome.total_bits();
    let mut members = Vec::with_capacity(cfg.pop_size);
    for slot in 0..cfg.pop_size {
        let mut r = rng::stream(cfg.seed, &[purpose::INIT, 0, slot as u64]);
        members.push(Individual::new(Chromosome::random(len, &mut r), 0));
    }
    let mut pop = Population::new(members, 0);
    evaluate_cohort(&mut pop.members, &cfg.genome, cost, 0, 0, cfg.seed)?;
    Ok(pop)
}

fn evaluate_cohort(
    members: &mut [Individual],
    genome: &GenomeSpec,
    cost: &dyn CostFn,
    t: u32,
    slot_base: usize,
    seed: u64,
) -> Result<()> {
    for (i, ind) in members.iter_mut().enumerate() {
        let x = genome.decode(&ind.chromosome)?;
        let noise_seed =
            rng::derive_seed(seed, &[purpose::EVAL, t as u64, (slot_base + i) as u64]);
        ind.cost = Some(cost.evaluate(&x, t, noise_seed));
    }
    Ok(())
}

fn poisson_count(rng: &mut impl Rng, mean: f64) -> u64 {
    if mean <= 0.0 {
        return 0;
    }
    let dist = Poisson::new(mean).expect("validated mean");
    dist.sample(rng) as u64
}

/// Offspring cohort of size N plus the number of mutations applied.
///
/// Pairing, crossover and mutation only; evaluation is the caller's job.
fn breed(
    pop: &Population,
    cfg: &RunConfig,
    order: &dyn CostOrder,
    next_gen: u32,
) -> Result<(Vec<Individual>, u64)> {
    let n = cfg.pop_size;
    let len = cfg.genome.total_bits();
    let q = cfg.operators.tournament_win_prob;
    let mut offspring = Vec::with_capacity(n + 1);
    let pairs = n.div_ceil(2);
    for pair in 0..pairs {
        let mut r = rng::stream(cfg.seed, &[purpose::BREED, next_gen as u64, pair as u64]);
        let a = operators::pick_parent_index(pop, order, q, &mut r)?;
        let b = operators::pick_parent_index(pop, order, q, &mut r)?;
        let pa = &pop.members[a].chromosome;
        let pb = &pop.members[b].chromosome;
        let (c1, c2) = if len >= 2 && r.random_bool(cfg.operators.crossover_prob) {
            let site = r.random_range(1..len);
            operators::crossover(pa, pb, site)?
        } else {
            (pa.clone(), pb.clone())
        };
        offspring.push(Individual::new(c1, next_gen));
        offspring.push(Individual::new(c2, next_gen));
    }
    offspring.truncate(n);

    let mut mrng = rng::stream(cfg.seed, &[purpose::MUTATION, next_gen as u64]);
    let mutations = poisson_count(&mut mrng, cfg.operators.mutations_per_generation);
    for _ in 0..mutations {
        let which = mrng.random_range(0..n);
        let bit = mrng.random_range(0..len);
        offspring[which].chromosome =
            operators::mutate(&offspring[which].chromosome, bit)?;
    }
    Ok((offspring, mutations))
}

/// Mean pairwise range-normalized distance between decoded members.
fn diversity(points: &[Vec<f64>], genome: &GenomeSpec) -> f64 {
    let n = points.len();
    if n < 2 {
        return 0.0;
    }
    let ranges: Vec<f64> = genome.params().iter().map(|p| p.hi - p.lo).collect();
    let dim = ranges.len() as f64;
    let mut total = 0.0;
    for i in 0..n {
        for j in (i + 1)..n {
            let sq: f64 = points[i]
                .iter()
                .zip(&points[j])
                .zip(&ranges)
                .map(|((a, b), r)| {
                    let d = (a - b) / r;
                    d * d
                })
                .sum();
            total += (sq / dim).sqrt();
        }
    }
    total / (n * (n - 1) / 2) as f64
}

/// Drives one run; owns the population, the evaluation accounting and the
/// trace. Use [`run`] unless intermediate populations are needed.
pub struct Runner<'a> {
    cfg: &'a RunConfig,
    cost: &'a dyn CostFn,
    pop: Population,
    evaluations: u64,
    trace: RunTrace,
    archive: Option<ParetoArchive>,
    best_so_far: f64,
    stagnant_for: u32,
    stopped: bool,
}

impl<'a> Runner<'a> {
    pub fn new(cfg: &'a RunConfig, cost: &'a dyn CostFn) -> Result<Self> {
        cfg.validate()?;
        if cost.bounds().len() != cfg.genome.dim() {
            return Err(Error::config(format!(
                "genome has {} parameters but the landscape expects {}",
                cfg.genome.dim(),
                cost.bounds().len()
            )));
        }
        cost.validate_horizon(cfg.generations)?;
        let k = cost.objective_count();
        if k > 1 && cfg.sharing.enabled {
            return Err(Error::unsupported(
                "fitness sharing applies to single-objective runs only",
            ));
        }
        let pop = init_population(cfg, cost)?;
        let mut runner = Runner {
            cfg,
            cost,
            evaluations: pop.len() as u64,
            archive: (k > 1).then(ParetoArchive::new),
            pop,
            trace: RunTrace::default(),
            best_so_far: f64::INFINITY,
            stagnant_for: 0,
            stopped: false,
        };
        runner.absorb_into_archive()?;
        runner.record_row()?;
        Ok(runner)
    }

    pub fn population(&self) -> &Population {
        &self.pop
    }

    pub fn trace(&self) -> &RunTrace {
        &self.trace
    }

    pub fn into_trace(self) -> RunTrace {
        self.trace
    }

    pub fn evaluations(&self) -> u64 {
        self.evaluations
    }

    /// Non-dominated archive of a multi-objective run.
    pub fn archive(&self) -> Option<&ParetoArchive> {
        self.archive.as_ref()
    }

    pub fn generation(&self) -> u32 {
        self.pop.generation
    }

    /// True once the budget or a stop rule has been hit.
    pub fn finished(&self) -> bool {
        self.stopped || self.pop.generation >= self.cfg.generations
    }

    /// Ordering used for pairing and survival at the current state.
    fn selection_order(&self, pop: &Population) -> Result<Box<dyn CostOrder>> {
        if self.cost.objective_count() > 1 {
            Ok(Box::new(ParetoOrder::new(&pop.objective_vectors()?)?))
        } else if self.cfg.sharing.enabled {
            Ok(Box::new(ScalarOrder(sharing::shared_cost(
                pop,
                &self.cfg.genome,
                &self.cfg.sharing,
            )?)))
        } else {
            Ok(Box::new(ScalarOrder(pop.scalar_costs()?)))
        }
    }

    /// Advances one generation.
    pub fn step(&mut self) -> Result<()> {
        if self.finished() {
            return Ok(());
        }
        let n = self.cfg.pop_size;
        let next_gen = self.pop.generation + 1;

        let parent_order = self.selection_order(&self.pop)?;
        let (mut offspring, _mutations) =
            breed(&self.pop, self.cfg, parent_order.as_ref(), next_gen)?;
        drop(parent_order);

        evaluate_cohort(
            &mut offspring,
            &self.cfg.genome,
            self.cost,
            next_gen,
            n,
            self.cfg.seed,
        )?;
        self.evaluations += offspring.len() as u64;

        let mut parents = std::mem::take(&mut self.pop.members);
        // Survival must reflect the current landscape; cached parent costs
        // are valid only when nothing changes between generations.
        if self.cost.time_varying() || self.cost.is_noisy() {
            evaluate_cohort(
                &mut parents,
                &self.cfg.genome,
                self.cost,
                next_gen,
                0,
                self.cfg.seed,
            )?;
            self.evaluations += parents.len() as u64;
        }

        parents.extend(offspring);
        let pool = Population::new(parents, next_gen);
        let pool_order = self.selection_order(&pool)?;
        let mut erng = rng::stream(self.cfg.seed, &[purpose::ELIMINATION, next_gen as u64]);
        self.pop = operators::eliminate_to_size(
            pool,
            n,
            self.cfg.operators.elite_count,
            self.cfg.operators.tournament_win_prob,
            pool_order.as_ref(),
            &mut erng,
        )?;

        self.absorb_into_archive()?;
        self.record_row()?;
        self.apply_stop_rule();
        Ok(())
    }

    /// Runs until the budget or a stop rule ends the run.
    pub fn run_to_end(&mut self) -> Result<()> {
        while !self.finished() {
            self.step()?;
        }
        Ok(())
    }

    fn absorb_into_archive(&mut self) -> Result<()> {
        let Some(archive) = self.archive.as_mut() else {
            return Ok(());
        };
        let points = self.pop.decoded(&self.cfg.genome)?;
        let objectives = self.pop.objective_vectors()?;
        let fronts = crate::pareto::nondominated_sort(&objectives)?;
        for &i in &fronts[0] {
            archive.insert(points[i].clone(), objectives[i].clone())?;
        }
        Ok(())
    }

    fn record_row(&mut self) -> Result<()> {
        // Multi-objective rows report the first objective as a diagnostic;
        // the archive is the real deliverable there.
        let costs: Vec<f64> = self
            .pop
            .objective_vectors()?
            .iter()
            .map(|v| v[0])
            .collect();
        let best_idx = costs
            .iter()
            .enumerate()
            .min_by(|a, b| a.1.total_cmp(b.1))
            .map(|(i, _)| i)
            .expect("non-empty population");
        let mut sorted = costs.clone();
        sorted.sort_by(f64::total_cmp);
        let median = if sorted.len() % 2 == 1 {
            sorted[sorted.len() / 2]
        } else {
            0.5 * (sorted[sorted.len() / 2 - 1] + sorted[sorted.len() / 2])
        };
        let points = self.pop.decoded(&self.cfg.genome)?;
        let niche_counts = match self.cost.niche_wells(self.pop.generation) {
            Some(wells) => Some(
                sharing::niche_report(&self.pop, &self.cfg.genome, &wells)?.counts,
            ),
            None => None,
        };
        self.trace.rows.push(TraceRow {
            generation: self.pop.generation,
            best_cost: costs[best_idx],
            mean_cost: costs.iter().sum::<f64>() / costs.len() as f64,
            median_cost: median,
            best_x: points[best_idx].clone(),
            diversity: diversity(&points, &self.cfg.genome),
            evaluations: self.evaluations,
            niche_counts,
        });
        Ok(())
    }

    fn apply_stop_rule(&mut self) {
        let best = self
            .trace
            .final_row()
            .map(|r| r.best_cost)
            .unwrap_or(f64::INFINITY);
        match self.cfg.stop {
            StopRule::Budget => {}
            StopRule::TargetCost(target) => {
                if best <= target {
                    self.stopped = true;
                }
            }
            StopRule::Stagnation { window } => {
                if best < self.best_so_far - STAGNATION_EPS {
                    self.stagnant_for = 0;
                } else {
                    self.stagnant_for += 1;
                    if self.stagnant_for >= window {
                        self.stopped = true;
                    }
                }
            }
        }
        if best < self.best_so_far {
            self.best_so_far = best;
        }
    }
}

/// Runs the full loop and returns the trace.
pub fn run(cfg: &RunConfig, cost: &dyn CostFn) -> Result<RunTrace> {
    let mut runner = Runner::new(cfg, cost)?;
    runner.run_to_end()?;
    Ok(runner.into_trace())
}
