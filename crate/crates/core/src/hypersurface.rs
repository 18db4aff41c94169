//! The general degree-`d` hypersurface `X_d ⊂ P(a_0, ..., a_n)`.
//!
//! Nothing here builds an equation. Statements about the general member are
//! certified by monomial existence: a coordinate point lies on `X_d` exactly
//! when no pure power of its variable has degree `d`, and quasi-smoothness is
//! decided by the subset criterion in [`WeightedHypersurface::quasi_smooth`].

use std::collections::BTreeMap;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::One;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::hilbert::plurigenera_table;
use crate::limits::check_subset_len;
use crate::rational::{serialize_opt_biguints, Rational};
use crate::singularity::{ambient_canonical, Classification, CyclicQuotientSingularity, SingularityClass};
use crate::weights::{stratum_quotient_type, well_formed, Weights};

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct WeightedHypersurface {
    weights: Weights,
    degree: u64,
}

impl WeightedHypersurface {
    pub fn new(weights: Weights, degree: u64) -> Result<Self> {
        if degree == 0 {
            return Err(Error::InvalidWeights("degree must be positive".into()));
        }
        if weights.len() < 3 {
            return Err(Error::InvalidWeights(format!(
                "a hypersurface of dimension >= 1 needs at least 3 weights, got {}",
                weights.len()
            )));
        }
        Ok(WeightedHypersurface { weights, degree })
    }

    pub fn weights(&self) -> &Weights {
        &self.weights
    }

    pub fn degree(&self) -> u64 {
        self.degree
    }

    pub fn dimension(&self) -> usize {
        self.weights.len() - 2
    }

    /// `d - sum(a_i)`; by adjunction `K_X ~ O_X(amplitude)`.
    pub fn amplitude(&self) -> i64 {
        self.degree as i64 - self.weights.sum() as i64
    }

    /// `alpha^dim * d / prod(a_i)`.
    pub fn volume(&self) -> Result<Rational> {
        let alpha = self.amplitude();
        if alpha <= 0 {
            return Err(Error::NonPositiveAmplitude(alpha));
        }
        let dim = self.dimension() as u32;
        let num = num_traits::pow(BigInt::from(alpha), dim as usize) * BigInt::from(self.degree);
        let den = self
            .weights
            .entries()
            .iter()
            .fold(BigInt::one(), |acc, &a| acc * BigInt::from(a));
        Ok(Rational::new(num, den))
    }

    pub fn contains_coordinate_point(&self, i: usize) -> Result<bool> {
        if i >= self.weights.len() {
            return Err(Error::OutOfRange(format!("no coordinate {i}")));
        }
        Ok(!self.degree.is_multiple_of(self.weights.get(i)))
    }

    /// Quasi-smoothness of the general member.
    ///
    /// True when `d` equals some weight, or when every nonempty index set `I`
    /// either carries a degree-`d` monomial in its own variables, or admits
    /// `|I|` monomials `z_I^M * z_e` of degree `d` with distinct `e`.
    ///
    /// Both conditions depend on `I` only through the set of weight values
    /// it uses, and the second is hardest when `I` takes every index with
    /// those values, so only value sets are enumerated.
    pub fn quasi_smooth(&self) -> Result<bool> {
        let a = self.weights.entries();
        let d = self.degree;
        if a.contains(&d) {
            return Ok(true);
        }
        let values = self.weights.distinct();
        check_subset_len(values.len())?;
        let mult: BTreeMap<u64, usize> = a.iter().fold(BTreeMap::new(), |mut m, &v| {
            *m.entry(v).or_insert(0) += 1;
            m
        });
        for mask in 1u64..(1u64 << values.len()) {
            let chosen: Vec<u64> = (0..values.len())
                .filter(|b| mask >> b & 1 == 1)
                .map(|b| values[b])
                .collect();
            let size: usize = chosen.iter().map(|v| mult[v]).sum();
            if !subset_condition(a, d, &chosen, size) {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// The same criterion evaluated on every index subset; exponential in
    /// the number of weights.
    pub fn quasi_smooth_by_subsets(&self) -> Result<bool> {
        let a = self.weights.entries();
        let d = self.degree;
        if a.contains(&d) {
            return Ok(true);
        }
        check_subset_len(a.len())?;
        for mask in 1u64..(1u64 << a.len()) {
            let chosen: Vec<u64> = (0..a.len())
                .filter(|b| mask >> b & 1 == 1)
                .map(|b| a[b])
                .collect();
            if !subset_condition(a, d, &chosen, chosen.len()) {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn singularity_report(&self) -> Result<SingularityReport> {
        self.singularity_report_with_witnesses(&[])
    }

    /// Like [`singularity_report`](Self::singularity_report), with the
    /// variable whose partial derivative is nonzero at a contained coordinate
    /// point supplied as `(point, variable)` pairs.
    pub fn singularity_report_with_witnesses(
        &self,
        witnesses: &[(usize, usize)],
    ) -> Result<SingularityReport> {
        build_report(self, witnesses)
    }
}

/// Whether some exponent vector over `values` has degree `target`, for every
/// `target <= d`.
fn reachable(values: &[u64], d: u64) -> Vec<bool> {
    let d = d as usize;
    let mut reach = vec![false; d + 1];
    reach[0] = true;
    for &v in values {
        let v = v as usize;
        for m in v..=d {
            if reach[m - v] {
                reach[m] = true;
            }
        }
    }
    reach
}

/// Condition (a) or (b) for an index set with weight values `chosen` and
/// `size` members.
fn subset_condition(all: &[u64], d: u64, chosen: &[u64], size: usize) -> bool {
    let reach = reachable(chosen, d);
    if reach[d as usize] {
        return true;
    }
    let distinct_e = all
        .iter()
        .filter(|&&a| a <= d && reach[(d - a) as usize])
        .count();
    distinct_e >= size
}

/// Number of degree-`d` monomials in variables of weights `values`, capped.
fn count_capped(values: &[u64], d: u64, cap: u8) -> u8 {
    let d = d as usize;
    let mut counts = vec![0u8; d + 1];
    counts[0] = 1;
    for &v in values {
        let v = v as usize;
        for m in v..=d {
            counts[m] = counts[m].saturating_add(counts[m - v]).min(cap);
        }
    }
    counts[d]
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PointEntry {
    pub index: usize,
    pub weight: u64,
    pub ambient_type: CyclicQuotientSingularity,
    pub ambient: Classification,
    pub meets_member: bool,
    pub member_type: Option<CyclicQuotientSingularity>,
    pub member: Option<Classification>,
}

/// Points whose nonzero coordinates are exactly the indices of some weight
/// values, at least two indices in all.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StratumEntry {
    pub values: Vec<u64>,
    pub indices: Vec<usize>,
    pub order: u64,
    pub ambient_type: CyclicQuotientSingularity,
    pub ambient: Classification,
    pub meets_member: bool,
    pub member_type: Option<CyclicQuotientSingularity>,
    pub member: Option<Classification>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SingularityReport {
    pub quasi_smooth: bool,
    pub ambient_canonical: Option<bool>,
    pub points: Vec<PointEntry>,
    pub strata: Vec<StratumEntry>,
    /// Worst class among singular points of the member; `None` unless
    /// quasi-smooth.
    pub member_class: Option<SingularityClass>,
}

impl SingularityReport {
    pub fn contained_points(&self) -> impl Iterator<Item = &PointEntry> {
        self.points.iter().filter(|p| p.meets_member)
    }

    pub fn member_canonical(&self) -> bool {
        self.member_class.is_some_and(|c| c.is_canonical())
    }
}

/// Local type of the member at a point with stabilizer of order `h`: drop
/// the orbit direction `orbit` and a variable `witness` whose partial is
/// nonzero there. Only residues matter, and every valid witness has weight
/// congruent to `d` modulo `h`.
fn member_type(x: &WeightedHypersurface, h: u64, orbit: usize, witness: usize) -> Result<CyclicQuotientSingularity> {
    let w: Vec<u64> = x
        .weights
        .entries()
        .iter()
        .enumerate()
        .filter(|&(i, _)| i != orbit && i != witness)
        .map(|(_, &a)| a)
        .collect();
    if w.is_empty() {
        return Err(Error::OutOfRange("member type has no coordinates".into()));
    }
    CyclicQuotientSingularity::new(h, w)
}

fn build_report(x: &WeightedHypersurface, witnesses: &[(usize, usize)]) -> Result<SingularityReport> {
    let a = x.weights.entries();
    let d = x.degree;
    let qs = x.quasi_smooth()?;
    let ambient_ok = if well_formed(&x.weights) {
        Some(ambient_canonical(&x.weights)?)
    } else {
        None
    };
    let given: BTreeMap<usize, usize> = witnesses.iter().copied().collect();

    let mut points = Vec::new();
    for (k, &ak) in a.iter().enumerate().filter(|&(_, &ak)| ak > 1) {
        let ambient_type = CyclicQuotientSingularity::new(ak, x.weights.without(k))?;
        let ambient = ambient_type.classify_detailed()?;
        let meets = !d.is_multiple_of(ak);
        let (mut member_type_k, mut member) = (None, None);
        if meets && qs {
            let witness = match given.get(&k) {
                Some(&e) => {
                    if e >= a.len() || e == k || a[e] > d || !(d - a[e]).is_multiple_of(ak) {
                        return Err(Error::Parameter(format!(
                            "z_{e} is not a witness at coordinate point {k}"
                        )));
                    }
                    Some(e)
                }
                None => (0..a.len()).find(|&e| e != k && a[e] <= d && (d - a[e]).is_multiple_of(ak)),
            };
            if let Some(e) = witness {
                let t = member_type(x, ak, k, e)?;
                member = Some(t.classify_detailed()?);
                member_type_k = Some(t);
            }
        }
        points.push(PointEntry {
            index: k,
            weight: ak,
            ambient_type,
            ambient,
            meets_member: meets,
            member_type: member_type_k,
            member,
        });
    }

    let nonunit: Vec<u64> = x.weights.distinct().into_iter().filter(|&v| v > 1).collect();
    check_subset_len(nonunit.len())?;
    let mut strata = Vec::new();
    for mask in 1u64..(1u64 << nonunit.len()) {
        let values: Vec<u64> = (0..nonunit.len())
            .filter(|b| mask >> b & 1 == 1)
            .map(|b| nonunit[b])
            .collect();
        let h = values.iter().fold(0u64, |g, v| g.gcd(v));
        if h == 1 {
            continue;
        }
        let indices: Vec<usize> = (0..a.len()).filter(|&i| values.contains(&a[i])).collect();
        if indices.len() < 2 {
            continue;
        }
        let ambient_type = stratum_quotient_type(&x.weights, &indices, indices[0])?;
        let ambient = ambient_type.classify_detailed()?;
        let in_stratum: Vec<u64> = indices.iter().map(|&i| a[i]).collect();
        // the closure lies in X, or the restricted equation has two terms
        let meets = count_capped(&in_stratum, d, 2) != 1;
        let (mut mt, mut member) = (None, None);
        if meets && qs {
            let orbit = indices[0];
            if let Some(e) = (0..a.len()).find(|&e| e != orbit && a[e] % h == d % h) {
                let t = member_type(x, h, orbit, e)?;
                member = Some(t.classify_detailed()?);
                mt = Some(t);
            }
        }
        strata.push(StratumEntry {
            values,
            indices,
            order: h,
            ambient_type,
            ambient,
            meets_member: meets,
            member_type: mt,
            member,
        });
    }

    let member_class = if qs {
        let met_classes: Vec<Option<SingularityClass>> = points
            .iter()
            .filter(|p| p.meets_member)
            .map(|p| p.member.as_ref().map(|c| c.class))
            .chain(
                strata
                    .iter()
                    .filter(|s| s.meets_member)
                    .map(|s| s.member.as_ref().map(|c| c.class)),
            )
            .collect();
        met_classes
            .into_iter()
            .try_fold(SingularityClass::Smooth, |acc, c| c.map(|c| acc.min(c)))
    } else {
        None
    };

    Ok(SingularityReport {
        quasi_smooth: qs,
        ambient_canonical: ambient_ok,
        points,
        strata,
        member_class,
    })
}

/// Everything the analysis pipeline reports about one hypersurface.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Analysis {
    pub weights: Weights,
    pub degree: u64,
    pub dimension: usize,
    pub amplitude: i64,
    pub well_formed: bool,
    pub quasi_smooth: bool,
    pub ambient_canonical: Option<bool>,
    pub member_class: Option<SingularityClass>,
    pub volume: Option<Rational>,
    #[serde(serialize_with = "serialize_opt_biguints")]
    pub plurigenera: Option<Vec<BigUint>>,
    pub report: SingularityReport,
}

pub fn analyze(x: &WeightedHypersurface, plurigenera_up_to: Option<u64>) -> Result<Analysis> {
    let report = x.singularity_report()?;
    let positive = x.amplitude() >= 1;
    let volume = if positive { Some(x.volume()?) } else { None };
    let plurigenera = match plurigenera_up_to {
        Some(m) if positive => Some(plurigenera_table(x, m)?),
        _ => None,
    };
    Ok(Analysis {
        weights: x.weights.clone(),
        degree: x.degree,
        dimension: x.dimension(),
        amplitude: x.amplitude(),
        well_formed: well_formed(&x.weights),
        quasi_smooth: report.quasi_smooth,
        ambient_canonical: report.ambient_canonical,
        member_class: report.member_class,
        volume,
        plurigenera,
        report,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use SingularityClass::*;

    fn hs(v: &[u64], d: u64) -> WeightedHypersurface {
        WeightedHypersurface::new(Weights::new(v.to_vec()).unwrap(), d).unwrap()
    }

    #[test]
    fn construction() {
        let w = Weights::new(vec![1, 1]).unwrap();
        assert!(WeightedHypersurface::new(w, 2).is_err());
        let w = Weights::new(vec![1, 1, 1]).unwrap();
        assert!(WeightedHypersurface::new(w, 0).is_err());
    }

    #[test]
    fn amplitudes() {
        assert_eq!(hs(&[2, 2, 2, 2, 3, 3, 3], 18).amplitude(), 1);
        assert_eq!(hs(&[1, 1, 1], 3).amplitude(), 0);
        assert_eq!(hs(&[4, 5, 6, 7, 23], 46).amplitude(), 1);
    }

    #[test]
    fn volumes() {
        assert_eq!(hs(&[4, 5, 6, 7, 23], 46).volume().unwrap(), Rational::new(1, 420));
        assert_eq!(hs(&[2, 2, 2, 2, 3, 3, 3], 18).volume().unwrap(), Rational::new(1, 24));
        assert_eq!(hs(&[1, 1, 1, 1, 5, 2, 3], 15).volume().unwrap(), Rational::new(1, 2));
        // quintic surface: alpha = 1, vol = 5; sextic surface: alpha = 2, vol = 4 * 6
        assert_eq!(hs(&[1, 1, 1, 1], 5).volume().unwrap(), Rational::from_integer(5));
        assert_eq!(hs(&[1, 1, 1, 1], 6).volume().unwrap(), Rational::from_integer(24));
        assert_eq!(hs(&[1, 1, 1], 3).volume(), Err(Error::NonPositiveAmplitude(0)));
    }

    #[test]
    fn coordinate_incidence() {
        let x = hs(&[1, 1, 1, 1, 5, 2, 3], 15);
        assert!(x.contains_coordinate_point(5).unwrap());
        assert!(!x.contains_coordinate_point(4).unwrap());
        assert!(!x.contains_coordinate_point(0).unwrap());
        assert!(x.contains_coordinate_point(7).is_err());
    }

    #[test]
    fn quasi_smoothness() {
        assert!(hs(&[1, 1, 5], 5).quasi_smooth().unwrap());
        assert!(hs(&[1, 1, 1, 1, 5, 2, 3], 15).quasi_smooth().unwrap());
        assert!(!hs(&[1, 3, 3], 2).quasi_smooth().unwrap());
        assert!(hs(&[4, 5, 6, 7, 23], 46).quasi_smooth().unwrap());
        assert!(hs(&[2, 2, 2, 2, 3, 3, 3], 18).quasi_smooth().unwrap());
        // I = {2} in P(1,2,3) at degree 5 is rescued by z_2 z_1
        assert!(hs(&[1, 2, 3], 5).quasi_smooth().unwrap());
        // P(2,3,5) at degree 7: for I = {1}, 7 - a_e is never a multiple of 3
        assert!(!hs(&[2, 3, 5], 7).quasi_smooth().unwrap());
        assert!(!hs(&[3, 3, 4, 5], 11).quasi_smooth().unwrap());
    }

    #[test]
    fn by_subsets_agrees_on_small_grid() {
        let mut checked = 0;
        for a in 1..=5u64 {
            for b in a..=5 {
                for c in b..=6 {
                    for d in 1..=18 {
                        let x = hs(&[a, b, c], d);
                        assert_eq!(x.quasi_smooth().unwrap(), x.quasi_smooth_by_subsets().unwrap(), "{:?}", x);
                        checked += 1;
                    }
                }
            }
        }
        assert!(checked > 500);
    }

    #[test]
    fn report_volume_witness_point() {
        let x = hs(&[1, 1, 1, 1, 5, 2, 3], 15);
        let r = x.singularity_report_with_witnesses(&[(5, 4)]).unwrap();
        let met: Vec<_> = r.contained_points().collect();
        assert_eq!(met.len(), 1);
        assert_eq!(met[0].index, 5);
        assert_eq!(met[0].member_type.as_ref().unwrap().to_string(), "1/2(1,1,1,1,3)");
        assert_eq!(met[0].member.as_ref().unwrap().class, Terminal);
        assert_eq!(r.member_class, Some(Terminal));
        // the generic witness differs in spelling, not in residues
        let g = x.singularity_report().unwrap();
        assert_eq!(g.member_class, Some(Terminal));
        assert!(x.singularity_report_with_witnesses(&[(5, 5)]).is_err());
    }

    #[test]
    fn report_misses_singularities() {
        let r = hs(&[1, 1, 2, 5], 10).singularity_report().unwrap();
        assert_eq!(r.points.len(), 2);
        assert!(r.points.iter().all(|p| !p.meets_member));
        assert!(r.strata.is_empty());
        assert_eq!(r.member_class, Some(Smooth));
        let r = hs(&[1, 1, 1, 1], 7).singularity_report().unwrap();
        assert!(r.points.is_empty() && r.strata.is_empty());
        assert_eq!(r.member_class, Some(Smooth));
    }

    #[test]
    fn report_iano_fletcher() {
        let r = hs(&[4, 5, 6, 7, 23], 46).singularity_report().unwrap();
        assert_eq!(r.ambient_canonical, Some(false));
        let met: Vec<_> = r.contained_points().map(|p| p.index).collect();
        assert_eq!(met, vec![0, 1, 2, 3]);
        let types: Vec<_> = r
            .contained_points()
            .map(|p| p.member_type.as_ref().unwrap().reduced().to_string())
            .collect();
        // residues of (a_i) minus the orbit zero and d mod a_k
        assert_eq!(types, vec!["1/4(1,3,3)", "1/5(4,2,3)", "1/6(5,1,5)", "1/7(5,6,2)"]);
        assert_eq!(r.strata.len(), 1);
        assert_eq!(r.strata[0].values, vec![4, 6]);
        assert!(r.strata[0].meets_member);
        assert_eq!(r.strata[0].member.as_ref().unwrap().class, Terminal);
        assert_eq!(r.member_class, Some(Terminal));
    }

    #[test]
    fn analysis_bundle() {
        let a = analyze(&hs(&[4, 5, 6, 7, 23], 46), Some(4)).unwrap();
        assert_eq!(a.volume, Some(Rational::new(1, 420)));
        assert_eq!(
            a.plurigenera.unwrap(),
            [0u32, 0, 0, 1].iter().map(|&v| BigUint::from(v)).collect::<Vec<_>>()
        );
        let a = analyze(&hs(&[1, 1, 1], 3), Some(2)).unwrap();
        assert!(a.volume.is_none() && a.plurigenera.is_none());
    }
}
