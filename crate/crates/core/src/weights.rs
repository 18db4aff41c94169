//! Weight tuples of weighted projective spaces and the combinatorics of
//! their singular strata.

use std::fmt;
use std::str::FromStr;

use num_integer::Integer;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::limits::check_subset_len;
use crate::singularity::CyclicQuotientSingularity;

/// The weights `(a_0, ..., a_n)` of `P(a_0, ..., a_n)`, in coordinate order.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct Weights(Vec<u64>);

impl Weights {
    pub fn new(entries: Vec<u64>) -> Result<Weights> {
        if entries.len() < 2 {
            return Err(Error::InvalidWeights(format!(
                "need at least 2 weights, got {}",
                entries.len()
            )));
        }
        if entries.contains(&0) {
            return Err(Error::InvalidWeights("weights must be positive".into()));
        }
        Ok(Weights(entries))
    }

    /// Concatenates `count` copies of each `value`, in block order.
    pub fn from_blocks(blocks: &[(u64, usize)]) -> Result<Weights> {
        Weights::new(
            blocks
                .iter()
                .flat_map(|&(value, count)| std::iter::repeat_n(value, count))
                .collect(),
        )
    }

    pub fn entries(&self) -> &[u64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn get(&self, i: usize) -> u64 {
        self.0[i]
    }

    pub fn sum(&self) -> u64 {
        self.0.iter().sum()
    }

    pub fn min_weight(&self) -> u64 {
        *self.0.iter().min().expect("nonempty")
    }

    /// Distinct weight values, ascending.
    pub fn distinct(&self) -> Vec<u64> {
        let mut v = self.0.clone();
        v.sort_unstable();
        v.dedup();
        v
    }

    pub fn without(&self, index: usize) -> Vec<u64> {
        self.0
            .iter()
            .enumerate()
            .filter(|&(i, _)| i != index)
            .map(|(_, &a)| a)
            .collect()
    }
}

impl fmt::Display for Weights {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_list(f, &self.0)
    }
}

pub(crate) fn write_list(f: &mut fmt::Formatter<'_>, values: &[u64]) -> fmt::Result {
    for (i, a) in values.iter().enumerate() {
        if i > 0 {
            f.write_str(",")?;
        }
        write!(f, "{a}")?;
    }
    Ok(())
}

impl FromStr for Weights {
    type Err = Error;

    fn from_str(s: &str) -> Result<Weights> {
        let entries = s
            .split(',')
            .map(|t| {
                t.trim()
                    .parse::<u64>()
                    .map_err(|_| Error::Parse(format!("bad weight {:?} in {s:?}", t.trim())))
            })
            .collect::<Result<Vec<_>>>()?;
        Weights::new(entries)
    }
}

pub fn gcd_list(values: &[u64]) -> Result<u64> {
    if values.is_empty() {
        return Err(Error::OutOfRange("gcd of an empty list".into()));
    }
    if values.contains(&0) {
        return Err(Error::OutOfRange("gcd_list expects positive values".into()));
    }
    Ok(values.iter().fold(0, |g, &v| g.gcd(&v)))
}

pub fn smallest_residue(x: u64, r: u64) -> Result<u64> {
    if r == 0 {
        return Err(Error::OutOfRange("residue modulo 0".into()));
    }
    Ok(x % r)
}

/// True iff every choice of all weights but one has gcd 1.
pub fn well_formed(w: &Weights) -> bool {
    let a = w.entries();
    let n = a.len();
    let mut prefix = vec![0u64; n + 1];
    for i in 0..n {
        prefix[i + 1] = prefix[i].gcd(&a[i]);
    }
    let mut suffix = 0u64;
    for i in (0..n).rev() {
        if prefix[i].gcd(&suffix) != 1 {
            return false;
        }
        suffix = suffix.gcd(&a[i]);
    }
    true
}

/// A set of coordinate indices whose weights share the factor `gcd > 1`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StratumRecord {
    pub subset: Vec<usize>,
    pub gcd: u64,
}

/// Every nonempty index subset with gcd > 1, ordered by size and then
/// lexicographically.
pub fn singular_strata(w: &Weights) -> Result<Vec<StratumRecord>> {
    check_subset_len(w.len())?;
    let a = w.entries();
    let mut out = Vec::new();
    let mut current = Vec::new();
    for size in 1..=a.len() {
        collect_strata(a, size, 0, 0, &mut current, &mut out);
    }
    Ok(out)
}

fn collect_strata(
    a: &[u64],
    size: usize,
    start: usize,
    g: u64,
    current: &mut Vec<usize>,
    out: &mut Vec<StratumRecord>,
) {
    if current.len() == size {
        out.push(StratumRecord {
            subset: current.clone(),
            gcd: g,
        });
        return;
    }
    let remaining = size - current.len();
    for i in start..=a.len() - remaining {
        let g2 = g.gcd(&a[i]);
        // gcd only shrinks as indices are added
        if g2 == 1 {
            continue;
        }
        current.push(i);
        collect_strata(a, size, i + 1, g2, current, out);
        current.pop();
    }
}

/// The quotient type `1/h_S (a_0, ..., â_k, ..., a_n)` of a point whose
/// nonzero coordinates are exactly `subset`.
pub fn stratum_quotient_type(
    w: &Weights,
    subset: &[usize],
    k: usize,
) -> Result<CyclicQuotientSingularity> {
    if subset.is_empty() {
        return Err(Error::OutOfRange("empty stratum".into()));
    }
    if let Some(&bad) = subset.iter().find(|&&i| i >= w.len()) {
        return Err(Error::OutOfRange(format!(
            "index {bad} out of range for {} weights",
            w.len()
        )));
    }
    if !subset.contains(&k) {
        return Err(Error::IndexNotInSubset {
            index: k,
            subset: subset.to_vec(),
        });
    }
    let h = subset.iter().fold(0u64, |g, &i| g.gcd(&w.get(i)));
    if h == 1 {
        return Err(Error::NoSingularity {
            subset: subset.to_vec(),
        });
    }
    CyclicQuotientSingularity::new(h, w.without(k))
}

/// Quotient types at the coordinate points with nontrivial stabilizer.
pub fn coordinate_point_types(w: &Weights) -> Vec<(usize, CyclicQuotientSingularity)> {
    w.entries()
        .iter()
        .enumerate()
        .filter(|&(_, &a)| a > 1)
        .map(|(k, &a)| {
            (
                k,
                CyclicQuotientSingularity::new(a, w.without(k)).expect("order > 1, len >= 1"),
            )
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(v: &[u64]) -> Weights {
        Weights::new(v.to_vec()).unwrap()
    }

    #[test]
    fn rejects_degenerate_weights() {
        assert!(Weights::new(vec![3]).is_err());
        assert!(Weights::new(vec![]).is_err());
        assert!(Weights::new(vec![1, 0, 2]).is_err());
        assert!("1,-2".parse::<Weights>().is_err());
        assert!("1,,2".parse::<Weights>().is_err());
        assert_eq!("4, 5,6,7,23".parse::<Weights>().unwrap(), w(&[4, 5, 6, 7, 23]));
        assert_eq!(w(&[4, 5, 6, 7, 23]).to_string(), "4,5,6,7,23");
    }

    #[test]
    fn gcd_examples() {
        assert_eq!(gcd_list(&[4, 6]).unwrap(), 2);
        assert_eq!(gcd_list(&[4, 5, 6, 7, 23]).unwrap(), 1);
        assert_eq!(gcd_list(&[6, 10, 15]).unwrap(), 1);
        assert!(gcd_list(&[]).is_err());
    }

    #[test]
    fn residue_examples() {
        assert_eq!(smallest_residue(7, 3).unwrap(), 1);
        assert_eq!(smallest_residue(0, 5).unwrap(), 0);
        assert_eq!(smallest_residue(2 * 6, 5).unwrap(), 2);
        assert!(smallest_residue(3, 0).is_err());
    }

    #[test]
    fn well_formed_examples() {
        assert!(well_formed(&w(&[1, 1, 1])));
        assert!(!well_formed(&w(&[1, 2, 2])));
        assert!(well_formed(&w(&[2, 2, 2, 2, 3, 3, 3, 6])));
        assert!(!well_formed(&w(&[1, 2])));
        assert!(well_formed(&w(&[1, 1])));
    }

    #[test]
    fn strata_examples() {
        assert_eq!(
            singular_strata(&w(&[1, 1, 2])).unwrap(),
            vec![StratumRecord { subset: vec![2], gcd: 2 }]
        );
        assert!(singular_strata(&w(&[1, 1, 1, 1])).unwrap().is_empty());
        let got: Vec<_> = singular_strata(&w(&[4, 5, 6, 7, 23]))
            .unwrap()
            .into_iter()
            .map(|r| (r.subset, r.gcd))
            .collect();
        assert_eq!(
            got,
            vec![
                (vec![0], 4),
                (vec![1], 5),
                (vec![2], 6),
                (vec![3], 7),
                (vec![4], 23),
                (vec![0, 2], 2)
            ]
        );
    }

    #[test]
    fn strata_guard() {
        let big = Weights::new(vec![2; 31]).unwrap();
        assert!(singular_strata(&big).unwrap_err().is_budget());
    }

    #[test]
    fn quotient_type_examples() {
        let q = stratum_quotient_type(&w(&[4, 5, 6, 7, 23]), &[0, 2], 0).unwrap();
        assert_eq!(q.to_string(), "1/2(5,6,7,23)");
        let q = stratum_quotient_type(&w(&[1, 1, 2]), &[2], 2).unwrap();
        assert_eq!(q.to_string(), "1/2(1,1)");
        let q = stratum_quotient_type(&w(&[2, 2, 2, 2, 3, 3, 3, 6]), &[7], 7).unwrap();
        assert_eq!(q.to_string(), "1/6(2,2,2,2,3,3,3)");
    }

    #[test]
    fn quotient_type_errors() {
        let x = w(&[4, 5, 6, 7, 23]);
        assert!(matches!(
            stratum_quotient_type(&x, &[0, 2], 1),
            Err(Error::IndexNotInSubset { .. })
        ));
        assert!(matches!(
            stratum_quotient_type(&x, &[0, 1], 0),
            Err(Error::NoSingularity { .. })
        ));
        assert!(stratum_quotient_type(&x, &[], 0).is_err());
        assert!(stratum_quotient_type(&x, &[9], 9).is_err());
    }

    #[test]
    fn coordinate_points() {
        assert!(coordinate_point_types(&w(&[1, 1, 1, 1])).is_empty());
        let pts: Vec<_> = coordinate_point_types(&w(&[1, 1, 2, 5]))
            .into_iter()
            .map(|(i, q)| (i, q.to_string()))
            .collect();
        assert_eq!(
            pts,
            vec![(2, "1/2(1,1,5)".to_string()), (3, "1/5(1,1,2)".to_string())]
        );
        let pts = coordinate_point_types(&w(&[2, 2, 2, 2, 3, 3, 3]));
        assert_eq!(pts.len(), 7);
        assert!(pts[..4].iter().all(|(_, q)| q.order() == 2));
        assert!(pts[4..].iter().all(|(_, q)| q.order() == 3));
    }
}
