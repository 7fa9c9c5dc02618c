//! Multi-objective support: dominance, non-dominated sorting, crowding,
//! weighted scalarization and a non-dominated archive.
//!
//! All objectives are minimized throughout.

use crate::error::{Error, Result};
use crate::landscape::{CostFn, Landscape, Well};
use crate::operators::CostOrder;
use std::cmp::Ordering;

/// True iff `a` is no worse than `b` everywhere and strictly better
/// somewhere.
pub fn dominates(a: &[f64], b: &[f64]) -> Result<bool> {
    if a.len() != b.len() {
        return Err(Error::LengthMismatch {
            expected: a.len(),
            got: b.len(),
        });
    }
    let mut strictly_better = false;
    for (x, y) in a.iter().zip(b) {
        if x > y {
            return Ok(false);
        }
        if x < y {
            strictly_better = true;
        }
    }
    Ok(strictly_better)
}

/// Fast non-dominated sort: front 0 is the maximal non-dominated set, front
/// `r` is non-dominated once fronts below `r` are removed. Every index
/// appears in exactly one front.
pub fn nondominated_sort(points: &[Vec<f64>]) -> Result<Vec<Vec<usize>>> {
    let n = points.len();
    if n == 0 {
        return Err(Error::domain("nondominated_sort needs at least one point"));
    }
    let k = points[0].len();
    for p in points {
        if p.len() != k {
            return Err(Error::LengthMismatch {
                expected: k,
                got: p.len(),
            });
        }
    }

    let mut dominated_by: Vec<Vec<usize>> = vec![Vec::new(); n];
    let mut domination_count = vec![0usize; n];
    let mut current: Vec<usize> = Vec::new();
    for i in 0..n {
        for j in (i + 1)..n {
            if dominates(&points[i], &points[j])? {
                dominated_by[i].push(j);
                domination_count[j] += 1;
            } else if dominates(&points[j], &points[i])? {
                dominated_by[j].push(i);
                domination_count[i] += 1;
            }
        }
        if domination_count[i] == 0 {
            current.push(i);
        }
    }

    let mut fronts = Vec::new();
    while !current.is_empty() {
        let mut next = Vec::new();
        for &p in &current {
            for &q in &dominated_by[p] {
                domination_count[q] -= 1;
                if domination_count[q] == 0 {
                    next.push(q);
                }
            }
        }
        next.sort_unstable();
        fronts.push(std::mem::replace(&mut current, next));
    }
    Ok(fronts)
}

/// Weighted sum `sum_i w_i v_i`; weights must be non-negative and sum to 1.
pub fn scalarize(v: &[f64], w: &[f64]) -> Result<f64> {
    if v.len() != w.len() {
        return Err(Error::LengthMismatch {
            expected: v.len(),
            got: w.len(),
        });
    }
    if w.iter().any(|&x| x < 0.0 || !x.is_finite()) {
        return Err(Error::domain("weights must be non-negative"));
    }
    let total: f64 = w.iter().sum();
    if (total - 1.0).abs() > 1e-9 {
        return Err(Error::domain(format!("weights must sum to 1, got {total}")));
    }
    Ok(v.iter().zip(w).map(|(vi, wi)| vi * wi).sum())
}

/// NSGA-style crowding distances for one front: per objective, the
/// normalized gap between each member's neighbours, summed; boundary members
/// get infinity. Used only for tie-breaking within a front.
pub fn crowding_distances(points: &[Vec<f64>], front: &[usize]) -> Vec<f64> {
    let n = front.len();
    if n == 0 {
        return Vec::new();
    }
    let k = points[front[0]].len();
    let mut crowd = vec![0.0; n];
    if n <= 2 {
        return vec![f64::INFINITY; n];
    }
    for obj in 0..k {
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by(|&a, &b| {
            points[front[a]][obj]
                .total_cmp(&points[front[b]][obj])
                .then(front[a].cmp(&front[b]))
        });
        let lo = points[front[order[0]]][obj];
        let hi = points[front[order[n - 1]]][obj];
        let span = hi - lo;
        crowd[order[0]] = f64::INFINITY;
        crowd[order[n - 1]] = f64::INFINITY;
        if span <= 0.0 {
            continue;
        }
        for w in 1..n - 1 {
            let gap = points[front[order[w + 1]]][obj] - points[front[order[w - 1]]][obj];
            crowd[order[w]] += gap / span;
        }
    }
    crowd
}

/// Lexicographic `(front rank asc, crowding desc)` ordering over a cohort of
/// objective vectors.
pub struct ParetoOrder {
    front_of: Vec<usize>,
    crowding: Vec<f64>,
}

impl ParetoOrder {
    pub fn new(points: &[Vec<f64>]) -> Result<Self> {
        let fronts = nondominated_sort(points)?;
        let mut front_of = vec![0usize; points.len()];
        let mut crowding = vec![0.0; points.len()];
        for (rank, front) in fronts.iter().enumerate() {
            let dists = crowding_distances(points, front);
            for (&idx, d) in front.iter().zip(dists) {
                front_of[idx] = rank;
                crowding[idx] = d;
            }
        }
        Ok(ParetoOrder { front_of, crowding })
    }

    pub fn front_of(&self, i: usize) -> usize {
        self.front_of[i]
    }
}

impl CostOrder for ParetoOrder {
    fn cmp_members(&self, i: usize, j: usize) -> Ordering {
        self.front_of[i]
            .cmp(&self.front_of[j])
            .then_with(|| self.crowding[j].total_cmp(&self.crowding[i]))
    }
}

/// A decoded point with its objective vector.
#[derive(Debug, Clone, PartialEq)]
pub struct FrontPoint {
    pub x: Vec<f64>,
    pub objectives: Vec<f64>,
}

/// Running archive of mutually non-dominated points.
///
/// Inserting keeps the no-dominated-pair invariant by construction: a new
/// point is dropped when an archived point dominates it, and evicts any
/// archived points it dominates. Exact duplicates are stored once.
#[derive(Debug, Clone, Default)]
pub struct ParetoArchive {
    points: Vec<FrontPoint>,
}

impl ParetoArchive {
    pub fn new() -> Self {
        ParetoArchive::default()
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn points(&self) -> &[FrontPoint] {
        &self.points
    }

    pub fn insert(&mut self, x: Vec<f64>, objectives: Vec<f64>) -> Result<()> {
        for p in &self.points {
            if dominates(&p.objectives, &objectives)? {
                return Ok(());
            }
            if p.objectives == objectives && p.x == x {
                return Ok(());
            }
        }
        let mut keep = Vec::with_capacity(self.points.len() + 1);
        for p in std::mem::take(&mut self.points) {
            if !dominates(&objectives, &p.objectives)? {
                keep.push(p);
            }
        }
        keep.push(FrontPoint { x, objectives });
        self.points = keep;
        Ok(())
    }

    /// Members sorted by first objective.
    pub fn sorted_by_first_objective(&self) -> Vec<FrontPoint> {
        let mut out = self.points.clone();
        out.sort_by(|a, b| {
            a.objectives[0]
                .total_cmp(&b.objectives[0])
                .then_with(|| a.x[0].total_cmp(&b.x[0]))
        });
        out
    }
}

/// A fixed-weight scalarization of a multi-objective landscape, seen by the
/// driver as a single-objective cost function.
pub struct Scalarized<'a> {
    inner: &'a Landscape,
    weights: Vec<f64>,
}

impl<'a> Scalarized<'a> {
    pub fn new(inner: &'a Landscape, weights: Vec<f64>) -> Result<Self> {
        if weights.len() != inner.objective_count() {
            return Err(Error::LengthMismatch {
                expected: inner.objective_count(),
                got: weights.len(),
            });
        }
        // Validate through a probe scalarization.
        scalarize(&vec![0.0; weights.len()], &weights)?;
        Ok(Scalarized { inner, weights })
    }
}

impl CostFn for Scalarized<'_> {
    fn objective_count(&self) -> usize {
        1
    }

    fn bounds(&self) -> &[(f64, f64)] {
        CostFn::bounds(self.inner)
    }

    fn evaluate(&self, x: &[f64], t: u32, noise_seed: u64) -> Vec<f64> {
        let v = self.inner.evaluate(x, t, noise_seed);
        vec![scalarize(&v, &self.weights).expect("validated weights")]
    }

    fn time_varying(&self) -> bool {
        self.inner.time_varying()
    }

    fn is_noisy(&self) -> bool {
        self.inner.is_noisy()
    }

    fn niche_wells(&self, t: u32) -> Option<Vec<Well>> {
        self.inner.niche_wells(t)
    }

    fn global_center_at(&self, t: u32) -> Option<Vec<f64>> {
        self.inner.global_center_at(t)
    }

    fn validate_horizon(&self, g: u32) -> Result<()> {
        self.inner.validate_horizon(g)
    }
}
