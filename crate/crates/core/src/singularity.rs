//! Reid-Tai classification of cyclic quotient singularities.
//!
//! A singularity `1/r(b_1, ..., b_m)` is canonical when, for every
//! `1 <= j <= r-1`, the residues of `j*b_i` modulo `r` sum to at least `r`,
//! and terminal when every such sum exceeds `r`. The loop runs over every
//! `j`, including those not coprime to `r`.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::limits::Limits;
use crate::rational::Rational;
use crate::weights::{coordinate_point_types, singular_strata, stratum_quotient_type, well_formed, write_list, Weights};

/// `1/r(b_1, ..., b_m)`: the cyclic group of order `r` acting on affine
/// `m`-space with weights `b_i` (read modulo `r`).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CyclicQuotientSingularity {
    order: u64,
    weights: Vec<u64>,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum SingularityClass {
    NotCanonical,
    CanonicalNotTerminal,
    Terminal,
    Smooth,
}

impl SingularityClass {
    pub fn is_canonical(self) -> bool {
        self >= SingularityClass::CanonicalNotTerminal
    }

    pub fn is_terminal(self) -> bool {
        self >= SingularityClass::Terminal
    }

    pub fn name(self) -> &'static str {
        match self {
            SingularityClass::NotCanonical => "NotCanonical",
            SingularityClass::CanonicalNotTerminal => "CanonicalNotTerminal",
            SingularityClass::Terminal => "Terminal",
            SingularityClass::Smooth => "Smooth",
        }
    }
}

impl fmt::Display for SingularityClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Minimum Reid-Tai sum and the first `j` attaining it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ReidTaiMin {
    pub value: Rational,
    pub at: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Classification {
    pub class: SingularityClass,
    pub min: Option<ReidTaiMin>,
    /// Group elements `j` moving exactly one coordinate. The verdict does
    /// not depend on these; they are listed for the reader.
    pub quasi_reflections: Vec<u64>,
}

impl fmt::Display for Classification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.class)?;
        if let Some(m) = &self.min {
            write!(f, " min={} at j={}", m.value, m.at)?;
        }
        if !self.quasi_reflections.is_empty() {
            write!(f, " quasi-reflections at j=")?;
            write_list(f, &self.quasi_reflections)?;
        }
        Ok(())
    }
}

impl CyclicQuotientSingularity {
    pub fn new(order: u64, weights: Vec<u64>) -> Result<Self> {
        if order == 0 {
            return Err(Error::OutOfRange("quotient order must be positive".into()));
        }
        if weights.is_empty() {
            return Err(Error::OutOfRange("quotient needs at least one weight".into()));
        }
        Ok(CyclicQuotientSingularity { order, weights })
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    pub fn weights(&self) -> &[u64] {
        &self.weights
    }

    /// Weights reduced modulo the order, in the original positions.
    pub fn reduced(&self) -> CyclicQuotientSingularity {
        CyclicQuotientSingularity {
            order: self.order,
            weights: self.weights.iter().map(|b| b % self.order).collect(),
        }
    }

    fn residue_counts(&self) -> BTreeMap<u64, u64> {
        let mut counts = BTreeMap::new();
        for &b in &self.weights {
            *counts.entry(b % self.order).or_insert(0) += 1;
        }
        counts
    }

    fn check_order(&self) -> Result<()> {
        let cap = Limits::current().quotient_order;
        if self.order > cap {
            return Err(Error::Budget(format!(
                "quotient order {} exceeds cap {cap}",
                self.order
            )));
        }
        Ok(())
    }

    /// `r` times the Reid-Tai sum at `j`.
    fn scaled_sum(counts: &BTreeMap<u64, u64>, r: u64, j: u64) -> u128 {
        counts
            .iter()
            .map(|(&res, &c)| (c as u128) * ((j as u128 * res as u128) % r as u128))
            .sum()
    }

    pub fn reid_tai_sum(&self, j: u64) -> Result<Rational> {
        if j == 0 || j >= self.order {
            return Err(Error::OutOfRange(format!(
                "j = {j} outside [1, {}]",
                self.order.saturating_sub(1)
            )));
        }
        let s = Self::scaled_sum(&self.residue_counts(), self.order, j);
        Ok(Rational::new(s, self.order))
    }

    pub fn reid_tai_min(&self) -> Result<ReidTaiMin> {
        if self.order < 2 {
            return Err(Error::OutOfRange("Reid-Tai minimum needs order >= 2".into()));
        }
        self.check_order()?;
        let counts = self.residue_counts();
        let (at, best) = (1..self.order)
            .map(|j| (j, Self::scaled_sum(&counts, self.order, j)))
            .min_by_key(|&(j, s)| (s, j))
            .expect("order >= 2");
        Ok(ReidTaiMin {
            value: Rational::new(best, self.order),
            at,
        })
    }

    /// Stops at the first `j` whose sum falls below 1.
    pub fn is_canonical(&self) -> Result<bool> {
        if self.order == 1 {
            return Ok(true);
        }
        self.check_order()?;
        let counts = self.residue_counts();
        let r = self.order as u128;
        Ok((1..self.order).all(|j| Self::scaled_sum(&counts, self.order, j) >= r))
    }

    pub fn quasi_reflections(&self) -> Vec<u64> {
        let counts = self.residue_counts();
        (1..self.order)
            .filter(|&j| {
                counts
                    .iter()
                    .filter(|(&res, _)| !(j as u128 * res as u128).is_multiple_of(self.order as u128))
                    .map(|(_, &c)| c)
                    .sum::<u64>()
                    == 1
            })
            .collect()
    }

    pub fn classify(&self) -> Result<SingularityClass> {
        Ok(self.classify_detailed()?.class)
    }

    pub fn classify_detailed(&self) -> Result<Classification> {
        if self.order == 1 {
            return Ok(Classification {
                class: SingularityClass::Smooth,
                min: None,
                quasi_reflections: Vec::new(),
            });
        }
        let min = self.reid_tai_min()?;
        let one = Rational::one();
        let class = match min.value.cmp(&one) {
            std::cmp::Ordering::Greater => SingularityClass::Terminal,
            std::cmp::Ordering::Equal => SingularityClass::CanonicalNotTerminal,
            std::cmp::Ordering::Less => SingularityClass::NotCanonical,
        };
        Ok(Classification {
            class,
            min: Some(min),
            quasi_reflections: self.quasi_reflections(),
        })
    }
}

impl fmt::Display for CyclicQuotientSingularity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "1/{}(", self.order)?;
        write_list(f, &self.weights)?;
        f.write_str(")")
    }
}

impl FromStr for CyclicQuotientSingularity {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("expected a literal like 1/6(2,2,3), got {s:?}"));
        let t = s.trim();
        let rest = t.strip_prefix("1/").ok_or_else(bad)?;
        let (order, tail) = rest.split_once('(').ok_or_else(bad)?;
        let body = tail.strip_suffix(')').ok_or_else(bad)?;
        let order = order.trim().parse::<u64>().map_err(|_| bad())?;
        let weights = body
            .split(',')
            .map(|b| b.trim().parse::<u64>().map_err(|_| bad()))
            .collect::<Result<Vec<_>>>()?;
        CyclicQuotientSingularity::new(order, weights)
    }
}

impl Serialize for CyclicQuotientSingularity {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

pub fn reid_tai_sum(s: &CyclicQuotientSingularity, j: u64) -> Result<Rational> {
    s.reid_tai_sum(j)
}

pub fn reid_tai_min(s: &CyclicQuotientSingularity) -> Result<ReidTaiMin> {
    s.reid_tai_min()
}

pub fn classify_quotient(s: &CyclicQuotientSingularity) -> Result<SingularityClass> {
    s.classify()
}

fn require_well_formed(w: &Weights) -> Result<()> {
    if !well_formed(w) {
        return Err(Error::NotWellFormed(w.clone()));
    }
    Ok(())
}

/// Canonicity of `P(w)` decided from its coordinate points alone.
pub fn ambient_canonical(w: &Weights) -> Result<bool> {
    require_well_formed(w)?;
    for (_, q) in coordinate_point_types(w) {
        if !q.is_canonical()? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Canonicity of `P(w)` decided by classifying every singular stratum.
pub fn ambient_canonical_bruteforce(w: &Weights) -> Result<bool> {
    require_well_formed(w)?;
    for stratum in singular_strata(w)? {
        let q = stratum_quotient_type(w, &stratum.subset, stratum.subset[0])?;
        if !q.is_canonical()? {
            return Ok(false);
        }
    }
    Ok(true)
}
