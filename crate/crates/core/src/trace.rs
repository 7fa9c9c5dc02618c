//! Per-generation run statistics.

/// One recorded generation.
#[derive(Debug, Clone, PartialEq)]
pub struct TraceRow {
    pub generation: u32,
    pub best_cost: f64,
    pub mean_cost: f64,
    pub median_cost: f64,
    /// Decoded parameters of the best member.
    pub best_x: Vec<f64>,
    /// Mean pairwise distance between decoded members, coordinates scaled to
    /// `[0, 1]` by their ranges, normalized by `sqrt(p)` so the value stays
    /// in `[0, 1]`.
    pub diversity: f64,
    /// Objective evaluations performed since the start of the run.
    pub evaluations: u64,
    /// Occupant counts against the run's well roster, when one exists.
    pub niche_counts: Option<Vec<usize>>,
}

/// Statistics stream of a whole run, one row per recorded generation
/// (including generation 0).
#[derive(Debug, Clone, Default, PartialEq)]
pub struct RunTrace {
    pub rows: Vec<TraceRow>,
}

impl RunTrace {
    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn final_row(&self) -> Option<&TraceRow> {
        self.rows.last()
    }

    /// Row with the lowest best_cost; first such row on ties.
    pub fn best_row(&self) -> Option<&TraceRow> {
        self.rows.iter().fold(None, |acc: Option<&TraceRow>, row| {
            match acc {
                Some(best) if best.best_cost <= row.best_cost => Some(best),
                _ => Some(row),
            }
        })
    }

    pub fn total_evaluations(&self) -> u64 {
        self.final_row().map_or(0, |r| r.evaluations)
    }
}
