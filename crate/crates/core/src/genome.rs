//! Binary genotypes: parameter layout, chromosome encoding/decoding and
//! schema diagnostics.
//!
//! Each parameter occupies a fixed-width big-endian bit field ("gene");
//! genes are concatenated in declaration order into one chromosome. Decoding
//! maps a gene's unsigned integer value linearly onto `[lo, hi]`, so the
//! all-zero gene is `lo` and the all-one gene is `hi`. Encoding quantizes
//! round-to-nearest with ties toward +infinity.

use crate::error::{Error, Result};
use rand::Rng;
use std::fmt;
use std::str::FromStr;

/// Whether a parameter belongs to the object itself or to its environment.
///
/// Extrinsic parameters are the ones a time-varying landscape may act on;
/// the tag is carried through configuration and reports but does not change
/// encoding or search behaviour.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ParamKind {
    Intrinsic,
    Extrinsic,
}

/// One bounded real parameter and its bit width.
#[derive(Debug, Clone)]
pub struct ParamSpec {
    pub name: String,
    pub lo: f64,
    pub hi: f64,
    pub bits: u32,
    pub kind: ParamKind,
}

impl ParamSpec {
    pub fn new(name: impl Into<String>, lo: f64, hi: f64, bits: u32) -> Result<Self> {
        let spec = ParamSpec {
            name: name.into(),
            lo,
            hi,
            bits,
            kind: ParamKind::Intrinsic,
        };
        spec.validate()?;
        Ok(spec)
    }

    pub fn with_kind(mut self, kind: ParamKind) -> Self {
        self.kind = kind;
        self
    }

    fn validate(&self) -> Result<()> {
        if !(self.lo < self.hi) {
            return Err(Error::config(format!(
                "parameter '{}': lo ({}) must be < hi ({})",
                self.name, self.lo, self.hi
            )));
        }
        if self.bits < 1 || self.bits > 32 {
            return Err(Error::config(format!(
                "parameter '{}': bits ({}) must be in 1..=32",
                self.name, self.bits
            )));
        }
        Ok(())
    }

    /// Largest gene code: `2^bits - 1`.
    pub fn levels(&self) -> u64 {
        (1u64 << self.bits) - 1
    }

    /// Width of one quantization step.
    pub fn step(&self) -> f64 {
        (self.hi - self.lo) / self.levels() as f64
    }
}

/// Ordered parameter layout; owns the total chromosome length.
#[derive(Debug, Clone)]
pub struct GenomeSpec {
    params: Vec<ParamSpec>,
    total_bits: usize,
}

impl GenomeSpec {
    pub fn new(params: Vec<ParamSpec>) -> Result<Self> {
        if params.is_empty() {
            return Err(Error::config("genome needs at least one parameter"));
        }
        for p in &params {
            p.validate()?;
        }
        let total_bits = params.iter().map(|p| p.bits as usize).sum();
        Ok(GenomeSpec { params, total_bits })
    }

    pub fn params(&self) -> &[ParamSpec] {
        &self.params
    }

    /// Number of parameters `p`.
    pub fn dim(&self) -> usize {
        self.params.len()
    }

    /// Chromosome length `L`.
    pub fn total_bits(&self) -> usize {
        self.total_bits
    }

    /// Box bounds as `(lo, hi)` pairs in parameter order.
    pub fn bounds(&self) -> Vec<(f64, f64)> {
        self.params.iter().map(|p| (p.lo, p.hi)).collect()
    }

    /// Layout of the spec restricted to the given parameter indices,
    /// in the order given.
    pub fn subset(&self, indices: &[usize]) -> Result<GenomeSpec> {
        let mut params = Vec::with_capacity(indices.len());
        for &i in indices {
            let p = self
                .params
                .get(i)
                .ok_or_else(|| Error::domain(format!("parameter index {i} out of range")))?;
            params.push(p.clone());
        }
        GenomeSpec::new(params)
    }

    /// Maps a conforming chromosome to its parameter vector.
    pub fn decode(&self, c: &Chromosome) -> Result<Vec<f64>> {
        if c.len() != self.total_bits {
            return Err(Error::LengthMismatch {
                expected: self.total_bits,
                got: c.len(),
            });
        }
        let mut x = Vec::with_capacity(self.params.len());
        let mut offset = 0;
        for p in &self.params {
            let mut code: u64 = 0;
            for i in 0..p.bits as usize {
                code = (code << 1) | c.bit(offset + i) as u64;
            }
            offset += p.bits as usize;
            x.push(p.lo + (code as f64 / p.levels() as f64) * (p.hi - p.lo));
        }
        Ok(x)
    }

    /// Nearest-quantization inverse of [`decode`](Self::decode); ties round
    /// toward +infinity.
    pub fn encode(&self, x: &[f64]) -> Result<Chromosome> {
        if x.len() != self.params.len() {
            return Err(Error::LengthMismatch {
                expected: self.params.len(),
                got: x.len(),
            });
        }
        let mut bits = Vec::with_capacity(self.total_bits);
        for (p, &v) in self.params.iter().zip(x) {
            if v < p.lo || v > p.hi || !v.is_finite() {
                return Err(Error::domain(format!(
                    "value {} for parameter '{}' outside [{}, {}]",
                    v, p.name, p.lo, p.hi
                )));
            }
            let levels = p.levels();
            let scaled = (v - p.lo) / (p.hi - p.lo) * levels as f64;
            let code = ((scaled + 0.5).floor() as u64).min(levels);
            for i in (0..p.bits).rev() {
                bits.push((code >> i) & 1 == 1);
            }
        }
        Ok(Chromosome::new(bits))
    }
}

/// A fixed-length bit string.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Chromosome {
    bits: Vec<bool>,
}

impl Chromosome {
    pub fn new(bits: Vec<bool>) -> Self {
        Chromosome { bits }
    }

    pub fn zeros(len: usize) -> Self {
        Chromosome {
            bits: vec![false; len],
        }
    }

    /// Independently uniform bits.
    pub fn random(len: usize, rng: &mut impl Rng) -> Self {
        Chromosome {
            bits: (0..len).map(|_| rng.random::<bool>()).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.bits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }

    pub fn bit(&self, i: usize) -> bool {
        self.bits[i]
    }

    pub fn bits(&self) -> &[bool] {
        &self.bits
    }

    pub(crate) fn toggle(&mut self, i: usize) {
        self.bits[i] = !self.bits[i];
    }

    pub(crate) fn splice(head: &[bool], tail: &[bool]) -> Self {
        let mut bits = Vec::with_capacity(head.len() + tail.len());
        bits.extend_from_slice(head);
        bits.extend_from_slice(tail);
        Chromosome { bits }
    }
}

impl fmt::Debug for Chromosome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Chromosome({self})")
    }
}

impl fmt::Display for Chromosome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &b in &self.bits {
            f.write_str(if b { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl FromStr for Chromosome {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        s.chars()
            .map(|c| match c {
                '0' => Ok(false),
                '1' => Ok(true),
                other => Err(Error::domain(format!("invalid chromosome char '{other}'"))),
            })
            .collect::<Result<Vec<_>>>()
            .map(Chromosome::new)
    }
}

/// A template over `{0, 1, *}` matching a set of chromosomes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Schema {
    pattern: Vec<Option<bool>>,
}

impl Schema {
    pub fn new(pattern: Vec<Option<bool>>) -> Self {
        Schema { pattern }
    }

    pub fn len(&self) -> usize {
        self.pattern.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pattern.is_empty()
    }

    /// Number of fixed positions.
    pub fn order(&self) -> usize {
        self.pattern.iter().filter(|p| p.is_some()).count()
    }

    pub fn pattern(&self) -> &[Option<bool>] {
        &self.pattern
    }

    /// True iff `c` agrees with every fixed position.
    pub fn matches(&self, c: &Chromosome) -> Result<bool> {
        if c.len() != self.pattern.len() {
            return Err(Error::LengthMismatch {
                expected: self.pattern.len(),
                got: c.len(),
            });
        }
        Ok(self
            .pattern
            .iter()
            .zip(c.bits())
            .all(|(p, &b)| p.map_or(true, |fixed| fixed == b)))
    }
}

impl FromStr for Schema {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        s.chars()
            .map(|c| match c {
                '0' => Ok(Some(false)),
                '1' => Ok(Some(true)),
                '*' => Ok(None),
                other => Err(Error::domain(format!("invalid schema char '{other}'"))),
            })
            .collect::<Result<Vec<_>>>()
            .map(Schema::new)
    }
}

/// Number of chromosomes matching the schema.
pub fn schema_count(chromosomes: &[Chromosome], schema: &Schema) -> Result<usize> {
    let mut count = 0;
    for c in chromosomes {
        if schema.matches(c)? {
            count += 1;
        }
    }
    Ok(count)
}
