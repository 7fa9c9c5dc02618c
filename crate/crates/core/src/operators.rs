//! Stochastic genetic operators: single-point crossover, bit-flip mutation,
//! tournament parent picking and tournament survivor elimination.
//!
//! All operators are pure given an explicit generator; callers own the
//! randomness (see [`crate::rng`]).

use crate::error::{Error, Result};
use crate::genome::Chromosome;
use crate::population::{Individual, Population};
use rand::Rng;
use std::cmp::Ordering;

/// Operator parameters of a run.
#[derive(Debug, Clone)]
pub struct OperatorConfig {
    /// Probability that a picked pair is crossed; below it both parents are
    /// cloned unchanged into the offspring pool.
    pub crossover_prob: f64,
    /// Expected number of bit flips per generation over the whole offspring
    /// cohort (Poisson-distributed count, uniformly placed).
    pub mutations_per_generation: f64,
    /// Probability that the better of a drawn pair wins a tournament, both
    /// for pairing and for survival.
    pub tournament_win_prob: f64,
    /// Lowest-cost individuals unconditionally retained at elimination.
    pub elite_count: usize,
}

impl Default for OperatorConfig {
    fn default() -> Self {
        OperatorConfig {
            crossover_prob: 0.9,
            mutations_per_generation: 3.0,
            tournament_win_prob: 0.9,
            elite_count: 1,
        }
    }
}

impl OperatorConfig {
    pub fn validate(&self, pop_size: usize) -> Result<()> {
        if !(0.0..=1.0).contains(&self.crossover_prob) {
            return Err(Error::config("crossover_prob must be in [0, 1]"));
        }
        if !(0.5..=1.0).contains(&self.tournament_win_prob) {
            return Err(Error::config("tournament_win_prob must be in [0.5, 1]"));
        }
        if self.mutations_per_generation < 0.0 || !self.mutations_per_generation.is_finite() {
            return Err(Error::config("mutations_per_generation must be >= 0"));
        }
        if self.elite_count >= pop_size {
            return Err(Error::config(format!(
                "elite_count ({}) must be below population size ({})",
                self.elite_count, pop_size
            )));
        }
        Ok(())
    }
}

/// Comparison view over a cohort: `cmp_members(i, j)` is `Less` when member
/// `i` is strictly preferable to member `j`.
///
/// Scalar runs compare (possibly sharing-adjusted) costs; multi-objective
/// runs compare `(front rank, crowding)`.
pub trait CostOrder {
    fn cmp_members(&self, i: usize, j: usize) -> Ordering;
}

/// Minimization order over plain scalar costs.
pub struct ScalarOrder(pub Vec<f64>);

impl CostOrder for ScalarOrder {
    fn cmp_members(&self, i: usize, j: usize) -> Ordering {
        self.0[i].total_cmp(&self.0[j])
    }
}

/// Single-point crossover at `site`; children swap tails.
///
/// The site lies strictly between the first and last bit, `1 <= site <= L-1`.
pub fn crossover(
    a: &Chromosome,
    b: &Chromosome,
    site: usize,
) -> Result<(Chromosome, Chromosome)> {
    if a.len() != b.len() {
        return Err(Error::LengthMismatch {
            expected: a.len(),
            got: b.len(),
        });
    }
    let len = a.len();
    if len < 2 {
        return Err(Error::domain("crossover needs chromosomes of length >= 2"));
    }
    if site < 1 || site > len - 1 {
        return Err(Error::domain(format!(
            "crossover site {site} outside 1..={}",
            len - 1
        )));
    }
    let child1 = Chromosome::splice(&a.bits()[..site], &b.bits()[site..]);
    let child2 = Chromosome::splice(&b.bits()[..site], &a.bits()[site..]);
    Ok((child1, child2))
}

/// Flips exactly the bit at `index`.
pub fn mutate(c: &Chromosome, index: usize) -> Result<Chromosome> {
    if index >= c.len() {
        return Err(Error::domain(format!(
            "mutation index {index} outside 0..{}",
            c.len()
        )));
    }
    let mut out = c.clone();
    out.toggle(index);
    Ok(out)
}

/// Binary tournament: draws two distinct members uniformly and returns the
/// index of the better one with probability `q`, the other otherwise.
///
/// A single-member population returns that member.
pub fn pick_parent_index(
    pop: &Population,
    order: &dyn CostOrder,
    q: f64,
    rng: &mut impl Rng,
) -> Result<usize> {
    let n = pop.len();
    if n == 0 {
        return Err(Error::domain("cannot pick a parent from an empty population"));
    }
    for (i, ind) in pop.members.iter().enumerate() {
        if !ind.is_evaluated() {
            return Err(Error::state(format!("member {i} is unevaluated")));
        }
    }
    if n == 1 {
        return Ok(0);
    }
    let i = rng.random_range(0..n);
    let j = {
        let r = rng.random_range(0..n - 1);
        if r >= i {
            r + 1
        } else {
            r
        }
    };
    // On a tie the first draw counts as the better one.
    let (better, worse) = match order.cmp_members(i, j) {
        Ordering::Greater => (j, i),
        _ => (i, j),
    };
    Ok(if rng.random_bool(q) { better } else { worse })
}

/// Like [`pick_parent_index`], returning the individual itself.
pub fn pick_parent<'p>(
    pop: &'p Population,
    order: &dyn CostOrder,
    q: f64,
    rng: &mut impl Rng,
) -> Result<&'p Individual> {
    Ok(&pop.members[pick_parent_index(pop, order, q, rng)?])
}

/// Reduces `pool` to exactly `n` members.
///
/// The `elite_count` best members (per `order`) are always retained. Each
/// round draws a uniform pair of non-elite survivors and removes the worse
/// with probability `q`, the better otherwise. Surviving members keep their
/// pool order.
pub fn eliminate_to_size(
    pool: Population,
    n: usize,
    elite_count: usize,
    q: f64,
    order: &dyn CostOrder,
    rng: &mut impl Rng,
) -> Result<Population> {
    let m = pool.len();
    if n > m {
        return Err(Error::domain(format!(
            "cannot keep {n} members out of a pool of {m}"
        )));
    }
    for (i, ind) in pool.members.iter().enumerate() {
        if !ind.is_evaluated() {
            return Err(Error::state(format!("pool member {i} is unevaluated")));
        }
    }
    if elite_count > n {
        return Err(Error::domain(format!(
            "elite_count ({elite_count}) exceeds target size ({n})"
        )));
    }
    if n == m {
        return Ok(pool);
    }

    // Elite indices: the elite_count best, ties broken by pool position.
    let mut ranked: Vec<usize> = (0..m).collect();
    ranked.sort_by(|&a, &b| order.cmp_members(a, b).then(a.cmp(&b)));
    let mut is_elite = vec![false; m];
    for &i in &ranked[..elite_count] {
        is_elite[i] = true;
    }

    let mut alive = vec![true; m];
    let mut candidates: Vec<usize> = (0..m).filter(|&i| !is_elite[i]).collect();
    let mut remaining = m;
    while remaining > n {
        let a_pos = rng.random_range(0..candidates.len());
        let b_pos = {
            let r = rng.random_range(0..candidates.len() - 1);
            if r >= a_pos {
                r + 1
            } else {
                r
            }
        };
        let (better_pos, worse_pos) =
            match order.cmp_members(candidates[a_pos], candidates[b_pos]) {
                Ordering::Greater => (b_pos, a_pos),
                _ => (a_pos, b_pos),
            };
        let victim_pos = if rng.random_bool(q) { worse_pos } else { better_pos };
        alive[candidates[victim_pos]] = false;
        candidates.swap_remove(victim_pos);
        remaining -= 1;
    }

    let members: Vec<Individual> = pool
        .members
        .into_iter()
        .enumerate()
        .filter_map(|(i, ind)| alive[i].then_some(ind))
        .collect();
    Ok(Population::new(members, pool.generation))
}
