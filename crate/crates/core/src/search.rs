//! Bounded exhaustive search for canonical weighted hypersurfaces of small
//! volume.
//!
//! Weight tuples are enumerated nondecreasing, split across workers by
//! leading weight, and every survivor is produced by the same
//! [`analyze`] pipeline the front end uses.

use num_bigint::BigUint;
use num_traits::Zero;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::hypersurface::{analyze, WeightedHypersurface};
use crate::limits::Limits;
use crate::rational::{serialize_biguints, Rational};
use crate::singularity::SingularityClass;
use crate::weights::{well_formed, Weights};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SearchConfig {
    pub member_dim: usize,
    pub max_weight_sum: u64,
    pub amplitude: i64,
    /// Plurigenera recorded per hit; raised to `vanishing` if smaller.
    pub plurigenera_up_to: u64,
    /// Keep only hits with `P_1 = ... = P_vanishing = 0`.
    pub vanishing: u64,
    /// Worker threads; `None` uses the global pool.
    pub jobs: Option<usize>,
}

impl SearchConfig {
    pub fn new(member_dim: usize, max_weight_sum: u64) -> Self {
        SearchConfig {
            member_dim,
            max_weight_sum,
            amplitude: 1,
            plurigenera_up_to: 0,
            vanishing: 0,
            jobs: None,
        }
    }

    pub fn with_vanishing(mut self, v: u64) -> Self {
        self.vanishing = v;
        self
    }

    pub fn with_plurigenera(mut self, m: u64) -> Self {
        self.plurigenera_up_to = m;
        self
    }

    fn recorded_plurigenera(&self) -> u64 {
        self.plurigenera_up_to.max(self.vanishing)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SearchRecord {
    pub weights: Weights,
    pub degree: u64,
    pub amplitude: i64,
    pub volume: Rational,
    #[serde(serialize_with = "serialize_biguints")]
    pub plurigenera: Vec<BigUint>,
    pub well_formed: bool,
    pub quasi_smooth: bool,
    /// Every singular point of the general member is canonical.
    pub canonical: bool,
    /// Canonicity of the ambient space itself; informational.
    pub ambient_canonical: bool,
    pub member_class: SingularityClass,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SearchOutcome {
    pub config: SearchConfig,
    pub candidates: u64,
    pub records: Vec<SearchRecord>,
}

fn validate(config: &SearchConfig) -> Result<()> {
    if config.member_dim < 2 {
        return Err(Error::Parameter("search needs member dimension >= 2".into()));
    }
    if config.amplitude < 1 {
        return Err(Error::Parameter("search needs amplitude >= 1".into()));
    }
    let cap = Limits::current().search_sum;
    if config.max_weight_sum > cap {
        return Err(Error::Budget(format!(
            "weight sum {} exceeds search cap {cap}",
            config.max_weight_sum
        )));
    }
    Ok(())
}

/// Calls `visit` on every nondecreasing tuple of `len` entries that extends
/// `prefix`, whose entries are at least `floor` and whose total stays within
/// `budget`.
fn for_each_tuple(prefix: &mut Vec<u64>, len: usize, floor: u64, budget: u64, visit: &mut dyn FnMut(&[u64])) {
    if prefix.len() == len {
        visit(prefix);
        return;
    }
    let slots = (len - prefix.len()) as u64;
    let mut a = floor;
    while a * slots <= budget {
        prefix.push(a);
        for_each_tuple(prefix, len, a, budget - a, visit);
        prefix.pop();
        a += 1;
    }
}

/// Analyzes one candidate; `None` when it fails a filter.
pub fn evaluate(weights: &Weights, config: &SearchConfig) -> Result<Option<SearchRecord>> {
    if !well_formed(weights) {
        return Ok(None);
    }
    let degree = weights.sum() + config.amplitude as u64;
    let x = WeightedHypersurface::new(weights.clone(), degree)?;
    if !x.quasi_smooth()? {
        return Ok(None);
    }
    let a = analyze(&x, Some(config.recorded_plurigenera()))?;
    let member_class = match a.member_class {
        Some(c) if c.is_canonical() => c,
        _ => return Ok(None),
    };
    let plurigenera = a.plurigenera.unwrap_or_default();
    if plurigenera[..config.vanishing as usize].iter().any(|p| !p.is_zero()) {
        return Ok(None);
    }
    Ok(Some(SearchRecord {
        weights: a.weights,
        degree,
        amplitude: a.amplitude,
        volume: a.volume.expect("positive amplitude"),
        plurigenera,
        well_formed: a.well_formed,
        quasi_smooth: a.quasi_smooth,
        canonical: true,
        ambient_canonical: a.ambient_canonical.unwrap_or(false),
        member_class,
    }))
}

fn search_leading(lead: u64, config: &SearchConfig) -> Result<(u64, Vec<SearchRecord>)> {
    let len = config.member_dim + 2;
    let mut tuples = Vec::new();
    let mut prefix = vec![lead];
    for_each_tuple(&mut prefix, len, lead, config.max_weight_sum - lead, &mut |t| {
        tuples.push(t.to_vec())
    });
    let mut out = Vec::new();
    for t in &tuples {
        if let Some(rec) = evaluate(&Weights::new(t.clone())?, config)? {
            out.push(rec);
        }
    }
    Ok((tuples.len() as u64, out))
}

pub fn enumerate_candidates(config: &SearchConfig) -> Result<SearchOutcome> {
    validate(config)?;
    let len = config.member_dim as u64 + 2;
    let leads: Vec<u64> = (1..=config.max_weight_sum / len).collect();
    let run = || {
        leads
            .par_iter()
            .map(|&lead| search_leading(lead, config))
            .collect::<Result<Vec<_>>>()
    };
    let parts = match config.jobs {
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n.max(1))
            .build()
            .map_err(|e| Error::Parameter(format!("thread pool: {e}")))?
            .install(run)?,
        None => run()?,
    };
    let candidates = parts.iter().map(|(n, _)| n).sum();
    let mut records: Vec<SearchRecord> = parts.into_iter().flat_map(|(_, r)| r).collect();
    records.sort_by(|x, y| x.volume.cmp(&y.volume).then_with(|| x.weights.cmp(&y.weights)));
    Ok(SearchOutcome {
        config: config.clone(),
        candidates,
        records,
    })
}

/// Smallest-volume record within the searched bound. No claim is made
/// beyond that bound.
pub fn find_min_volume(config: &SearchConfig) -> Result<SearchRecord> {
    enumerate_candidates(config)?
        .records
        .into_iter()
        .next()
        .ok_or_else(|| {
            Error::EmptyResult(format!(
                "no record with dimension {} and weight sum <= {}",
                config.member_dim, config.max_weight_sum
            ))
        })
}
