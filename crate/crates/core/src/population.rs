//! Individuals and generations.

use crate::error::{Error, Result};
use crate::genome::{schema_count, Chromosome, GenomeSpec, Schema};

/// A candidate solution with its cached objective value(s).
#[derive(Debug, Clone)]
pub struct Individual {
    pub chromosome: Chromosome,
    /// Objective vector, `None` until evaluated. Length is the objective
    /// count `k` of the landscape the individual was evaluated on.
    pub cost: Option<Vec<f64>>,
    /// Generation the individual was created in.
    pub born_at: u32,
}

impl Individual {
    pub fn new(chromosome: Chromosome, born_at: u32) -> Self {
        Individual {
            chromosome,
            cost: None,
            born_at,
        }
    }

    pub fn is_evaluated(&self) -> bool {
        self.cost.is_some()
    }

    /// Single-objective cost, if evaluated with `k == 1`.
    pub fn scalar_cost(&self) -> Option<f64> {
        match &self.cost {
            Some(v) if v.len() == 1 => Some(v[0]),
            _ => None,
        }
    }
}

/// A fixed-size generation.
#[derive(Debug, Clone)]
pub struct Population {
    pub members: Vec<Individual>,
    pub generation: u32,
}

impl Population {
    pub fn new(members: Vec<Individual>, generation: u32) -> Self {
        Population {
            members,
            generation,
        }
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    /// Scalar costs of all members; errors if any member is unevaluated or
    /// carries more than one objective.
    pub fn scalar_costs(&self) -> Result<Vec<f64>> {
        self.members
            .iter()
            .enumerate()
            .map(|(i, ind)| {
                ind.scalar_cost().ok_or_else(|| {
                    Error::state(format!("member {i} has no scalar cost"))
                })
            })
            .collect()
    }

    /// Objective vectors of all members; errors if any member is unevaluated.
    pub fn objective_vectors(&self) -> Result<Vec<Vec<f64>>> {
        self.members
            .iter()
            .enumerate()
            .map(|(i, ind)| {
                ind.cost
                    .clone()
                    .ok_or_else(|| Error::state(format!("member {i} is unevaluated")))
            })
            .collect()
    }

    /// Decoded parameter vectors of all members.
    pub fn decoded(&self, spec: &GenomeSpec) -> Result<Vec<Vec<f64>>> {
        self.members
            .iter()
            .map(|ind| spec.decode(&ind.chromosome))
            .collect()
    }

    /// Number of members matching the schema.
    pub fn schema_count(&self, schema: &Schema) -> Result<usize> {
        let chromosomes: Vec<Chromosome> = self
            .members
            .iter()
            .map(|ind| ind.chromosome.clone())
            .collect();
        schema_count(&chromosomes, schema)
    }
}
