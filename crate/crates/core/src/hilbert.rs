//! Dimensions of graded pieces of `k[z_0, ..., z_n]` with `deg z_i = a_i`,
//! and the plurigenera they determine.

use std::collections::BTreeSet;

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::hypersurface::WeightedHypersurface;
use crate::limits::Limits;
use crate::weights::Weights;

/// Largest degree the enumerative oracle accepts.
pub const ENUM_MAX_DEGREE: i64 = 200;
/// Longest weight tuple the enumerative oracle accepts.
pub const ENUM_MAX_LEN: usize = 8;

/// `N(0), ..., N(M)` where `N(m)` counts exponent vectors of weighted degree `m`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonomialCountTable {
    weights: Weights,
    counts: Vec<BigUint>,
}

impl MonomialCountTable {
    pub fn build(weights: &Weights, max_degree: u64) -> Result<Self> {
        let cells = (max_degree as u128 + 1) * weights.len() as u128;
        let cap = Limits::current().table_cells;
        if cells > cap as u128 {
            return Err(Error::Budget(format!(
                "monomial table of {cells} cells exceeds cap {cap}"
            )));
        }
        let top = max_degree as usize;
        let mut counts = vec![BigUint::zero(); top + 1];
        counts[0] = BigUint::one();
        // coefficient extraction from prod 1/(1 - t^a), one factor at a time
        for &a in weights.entries() {
            let a = a as usize;
            for m in a..=top {
                let (lo, hi) = counts.split_at_mut(m);
                hi[0] += &lo[m - a];
            }
        }
        Ok(MonomialCountTable {
            weights: weights.clone(),
            counts,
        })
    }

    pub fn weights(&self) -> &Weights {
        &self.weights
    }

    pub fn max_degree(&self) -> u64 {
        self.counts.len() as u64 - 1
    }

    /// `N(m)`; zero for negative `m`. Panics above the table's range.
    pub fn get(&self, m: i64) -> BigUint {
        if m < 0 {
            return BigUint::zero();
        }
        assert!(m as u64 <= self.max_degree(), "degree {m} beyond table");
        self.counts[m as usize].clone()
    }

    pub fn counts(&self) -> &[BigUint] {
        &self.counts
    }
}

pub fn monomial_count(w: &Weights, m: i64) -> Result<BigUint> {
    if m < 0 {
        return Ok(BigUint::zero());
    }
    Ok(MonomialCountTable::build(w, m as u64)?.get(m))
}

fn check_enum_budget(w: &Weights, m: i64) -> Result<()> {
    if m > ENUM_MAX_DEGREE || w.len() > ENUM_MAX_LEN {
        return Err(Error::Budget(format!(
            "enumeration limited to degree <= {ENUM_MAX_DEGREE} and <= {ENUM_MAX_LEN} weights"
        )));
    }
    Ok(())
}

fn visit_monomials(a: &[u64], remaining: u64, exps: &mut Vec<u64>, visit: &mut dyn FnMut(&[u64])) {
    let i = exps.len();
    if i == a.len() {
        if remaining == 0 {
            visit(exps);
        }
        return;
    }
    let mut e = 0;
    while e * a[i] <= remaining {
        exps.push(e);
        visit_monomials(a, remaining - e * a[i], exps, visit);
        exps.pop();
        e += 1;
    }
}

/// Every exponent vector of weighted degree `m`, by explicit enumeration.
pub fn monomials_enum(w: &Weights, m: i64) -> Result<Vec<Vec<u64>>> {
    check_enum_budget(w, m)?;
    let mut out = Vec::new();
    if m >= 0 {
        visit_monomials(w.entries(), m as u64, &mut Vec::new(), &mut |e| out.push(e.to_vec()));
    }
    Ok(out)
}

/// Same contract as [`monomial_count`], computed by enumeration.
pub fn monomial_count_enum(w: &Weights, m: i64) -> Result<BigUint> {
    check_enum_budget(w, m)?;
    let mut n = 0u64;
    if m >= 0 {
        visit_monomials(w.entries(), m as u64, &mut Vec::new(), &mut |_| n += 1);
    }
    Ok(BigUint::from(n))
}

/// Indices of variables dividing at least one monomial of degree `t`.
pub fn variables_present(w: &Weights, t: u64) -> Result<BTreeSet<usize>> {
    let table = MonomialCountTable::build(w, t)?;
    Ok(w.entries()
        .iter()
        .enumerate()
        .filter(|&(_, &a)| a <= t && !table.get((t - a) as i64).is_zero())
        .map(|(i, _)| i)
        .collect())
}

fn positive_amplitude(x: &WeightedHypersurface) -> Result<u64> {
    let alpha = x.amplitude();
    if alpha <= 0 {
        return Err(Error::NonPositiveAmplitude(alpha));
    }
    Ok(alpha as u64)
}

fn plurigenus_from(table: &MonomialCountTable, x: &WeightedHypersurface, m: u64, alpha: u64) -> Result<BigUint> {
    let top = (m * alpha) as i64;
    let lower = top - x.degree() as i64;
    let (hi, lo) = (table.get(top), table.get(lower));
    if hi < lo {
        return Err(Error::Parameter(format!(
            "N({top}) < N({lower}): no degree-{} equation in these weights",
            x.degree()
        )));
    }
    Ok(hi - lo)
}

/// `P_m = N(m*alpha) - N(m*alpha - d)`.
pub fn plurigenus(x: &WeightedHypersurface, m: u64) -> Result<BigUint> {
    if m == 0 {
        return Err(Error::OutOfRange("plurigenus index must be positive".into()));
    }
    let alpha = positive_amplitude(x)?;
    let table = MonomialCountTable::build(x.weights(), m * alpha)?;
    plurigenus_from(&table, x, m, alpha)
}

/// `P_1, ..., P_M`.
pub fn plurigenera_table(x: &WeightedHypersurface, up_to: u64) -> Result<Vec<BigUint>> {
    let alpha = positive_amplitude(x)?;
    let table = MonomialCountTable::build(x.weights(), up_to * alpha)?;
    (1..=up_to)
        .map(|m| plurigenus_from(&table, x, m, alpha))
        .collect()
}

/// Largest `m` with `P_1 = ... = P_m = 0`, scanning while `m*alpha <= 10*d`.
pub fn vanishing_threshold(x: &WeightedHypersurface) -> Result<u64> {
    let alpha = positive_amplitude(x)?;
    let cap = 10 * x.degree();
    let last = cap / alpha;
    let table = MonomialCountTable::build(x.weights(), last * alpha)?;
    for m in 1..=last {
        if !plurigenus_from(&table, x, m, alpha)?.is_zero() {
            return Ok(m - 1);
        }
    }
    Err(Error::EmptyResult(format!(
        "no nonzero plurigenus with m*alpha <= {cap}"
    )))
}
