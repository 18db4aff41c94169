//! Constructors and verifiers for the explicit hypersurface families.
//!
//! Each verifier builds the hypersurface and recomputes every numerical
//! claim attached to it (volume, vanishing plurigenera, monomial-absence
//! obstructions, singularity types), returning a [`FamilyReport`] whose
//! checks carry the exact values involved.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::RangeInclusive;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{pow, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::hilbert::{plurigenera_table, vanishing_threshold, variables_present};
use crate::hypersurface::WeightedHypersurface;
use crate::rational::Rational;
use crate::singularity::{ambient_canonical, CyclicQuotientSingularity, SingularityClass};
use crate::weights::{coordinate_point_types, well_formed, Weights};

#[derive(Copy, Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum FamilyId {
    Prop,
    Thm3,
    Thm4,
    Ample,
    Volume,
}

impl fmt::Display for FamilyId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            FamilyId::Prop => "prop",
            FamilyId::Thm3 => "thm3",
            FamilyId::Thm4 => "thm4",
            FamilyId::Ample => "ample",
            FamilyId::Volume => "volume",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FamilyReport {
    pub family: FamilyId,
    pub params: BTreeMap<String, String>,
    pub hypersurface: WeightedHypersurface,
    pub values: BTreeMap<String, String>,
    pub checks: Vec<Check>,
    pub notes: Vec<String>,
}

impl FamilyReport {
    fn new(family: FamilyId, hypersurface: WeightedHypersurface) -> Self {
        FamilyReport {
            family,
            params: BTreeMap::new(),
            hypersurface,
            values: BTreeMap::new(),
            checks: Vec::new(),
            notes: Vec::new(),
        }
    }

    fn param(&mut self, key: &str, value: impl ToString) {
        self.params.insert(key.to_string(), value.to_string());
    }

    fn value(&mut self, key: &str, value: impl ToString) {
        self.values.insert(key.to_string(), value.to_string());
    }

    fn check(&mut self, name: impl Into<String>, passed: bool, detail: impl Into<String>) {
        self.checks.push(Check {
            name: name.into(),
            passed,
            detail: detail.into(),
        });
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failed_checks(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed)
    }

    pub fn label(&self) -> String {
        let params: Vec<String> = self.params.iter().map(|(k, v)| format!("{k}={v}")).collect();
        format!("{} {}", self.family, params.join(" "))
    }
}

fn big_pow(base: u64, exp: u64) -> BigInt {
    pow(BigInt::from(base), exp as usize)
}

/// `X_d ⊂ P(k^(k+2), (k+1)^(2k-1), (k(k+1))^(l))` with `d = (l+3)k(k+1)`.
pub fn prop_hypersurface(k: u64, l: u64) -> Result<WeightedHypersurface> {
    if k < 2 {
        return Err(Error::Parameter(format!("k = {k}: the family needs k >= 2")));
    }
    let weights = Weights::from_blocks(&[
        (k, (k + 2) as usize),
        (k + 1, (2 * k - 1) as usize),
        (k * (k + 1), l as usize),
    ])?;
    WeightedHypersurface::new(weights, (l + 3) * k * (k + 1))
}

/// `(l+3) / (k^(k+1+l) (k+1)^(2k-2+l))`.
pub fn prop_volume_closed_form(k: u64, l: u64) -> Rational {
    Rational::new(
        BigInt::from(l + 3),
        big_pow(k, k + 1 + l) * big_pow(k + 1, 2 * k - 2 + l),
    )
}

fn push_amplitude_one(report: &mut FamilyReport) {
    let alpha = report.hypersurface.amplitude();
    report.check("amplitude = 1", alpha == 1, format!("d - sum(a_i) = {alpha}"));
}

fn push_ambient_canonical(report: &mut FamilyReport) -> Result<()> {
    let w = report.hypersurface.weights().clone();
    let wf = well_formed(&w);
    report.check("well-formed", wf, w.to_string());
    let ok = if wf { ambient_canonical(&w)? } else { false };
    report.check("ambient canonical (coordinate points)", ok, "");
    Ok(())
}

pub fn prop_family(k: u64, l: u64) -> Result<FamilyReport> {
    let x = prop_hypersurface(k, l)?;
    let mut report = FamilyReport::new(FamilyId::Prop, x.clone());
    report.param("k", k);
    report.param("l", l);
    report.value("degree", x.degree());
    push_ambient_canonical(&mut report)?;

    // the three kinds of coordinate point: weight k, k+1 and k(k+1)
    let types = coordinate_point_types(x.weights());
    for order in [k, k + 1, k * (k + 1)] {
        if let Some((_, q)) = types.iter().find(|(_, q)| q.order() == order) {
            let c = q.classify_detailed()?;
            report.check(
                format!("coordinate point 1/{order} canonical"),
                c.class.is_canonical(),
                format!("{} {c}", q.reduced()),
            );
        }
    }

    let multiple = x.weights().entries().iter().all(|a| x.degree() % a == 0);
    report.check("d is a multiple of every weight", multiple, format!("d = {}", x.degree()));
    report.check("quasi-smooth", x.quasi_smooth()?, "");
    push_amplitude_one(&mut report);
    let dim = x.dimension() as u64;
    report.check(
        "dimension = 3k+l-1",
        dim == 3 * k + l - 1,
        format!("dimension {dim}"),
    );
    let vol = x.volume()?;
    let closed = prop_volume_closed_form(k, l);
    report.check(
        "volume = (l+3)/(k^(k+1+l)(k+1)^(2k-2+l))",
        vol == closed,
        format!("{vol} vs {closed}"),
    );
    report.value("volume", &vol);
    Ok(report)
}

/// `3^(n+1) / (n-1)^n`.
pub fn thm3_volume_bound(n: u64) -> Rational {
    Rational::new(big_pow(3, n + 1), big_pow(n - 1, n))
}

pub fn thm3_witness(n: u64) -> Result<FamilyReport> {
    if n < 5 {
        return Err(Error::Parameter(format!("n = {n}: the vanishing family needs n >= 5")));
    }
    let k = (n + 1) / 3;
    let l = n + 1 - 3 * k;
    let x = prop_hypersurface(k, l)?;
    let mut report = FamilyReport::new(FamilyId::Thm3, x.clone());
    report.param("n", n);
    report.param("k", k);
    report.param("l", l);
    report.value("degree", x.degree());
    push_ambient_canonical(&mut report)?;
    push_amplitude_one(&mut report);
    report.check("dimension = n", x.dimension() as u64 == n, format!("{}", x.dimension()));

    let table = plurigenera_table(&x, k)?;
    let vanishing = table[..(k - 1) as usize].iter().all(Zero::is_zero);
    report.check(
        "P_m = 0 for 0 < m < k",
        vanishing,
        format!("P_1..P_{} = {:?}", k - 1, table[..(k - 1) as usize].iter().map(|p| p.to_string()).collect::<Vec<_>>()),
    );
    report.value("P_k", &table[(k - 1) as usize]);
    let threshold = vanishing_threshold(&x)?;
    report.check(
        "vanishing threshold >= k-1",
        threshold + 1 >= k,
        format!("threshold {threshold}"),
    );
    report.value("vanishing_threshold", threshold);

    let vol = x.volume()?;
    let middle = Rational::new(BigInt::from(l + 3), big_pow(k, n + l));
    let bound = thm3_volume_bound(n);
    report.check("vol < (l+3)/k^(n+l)", vol < middle, format!("{vol} < {middle}"));
    report.check(
        "(l+3)/k^(n+l) <= 3^(n+1)/(n-1)^n",
        middle <= bound,
        format!("{middle} <= {bound}"),
    );
    report.check("vol < 3^(n+1)/(n-1)^n", vol < bound, format!("{vol} < {bound}"));
    report.value("volume", &vol);
    report.value("volume_bound", &bound);
    Ok(report)
}

pub fn thm4_witness(n: u64) -> Result<FamilyReport> {
    if n < 7 {
        return Err(Error::Parameter(format!("n = {n}: the non-finiteness family needs n >= 7")));
    }
    let k = (n - 1) / 3;
    let l = n + 1 - 3 * k;
    let x = prop_hypersurface(k, l)?;
    let top = k * (k + 1);
    let mut report = FamilyReport::new(FamilyId::Thm4, x.clone());
    report.param("n", n);
    report.param("k", k);
    report.param("l", l);
    report.value("degree", x.degree());
    push_ambient_canonical(&mut report)?;
    push_amplitude_one(&mut report);

    let top_indices: Vec<usize> = (0..x.weights().len())
        .filter(|&i| x.weights().get(i) == top)
        .collect();
    report.check(
        "l >= 2 variables of weight k(k+1)",
        top_indices.len() as u64 == l && l >= 2,
        format!("indices {top_indices:?}"),
    );
    let mut first_present = None;
    for t in 0..top {
        let present = variables_present(x.weights(), t)?;
        if top_indices.iter().any(|i| present.contains(i)) {
            first_present = Some(t);
            break;
        }
    }
    report.check(
        "weight-k(k+1) variables absent in every degree t < k(k+1)",
        first_present.is_none(),
        match first_present {
            None => format!("checked t = 0..{}", top - 1),
            Some(t) => format!("present at t = {t}"),
        },
    );
    let at_top = variables_present(x.weights(), top)?;
    report.check(
        "weight-k(k+1) variables present at t = k(k+1)",
        top_indices.iter().all(|i| at_top.contains(i)),
        "",
    );
    let lhs = Rational::from_integer(top);
    let rhs = Rational::new(n * (n - 3), 9u64);
    report.check("k(k+1) >= n(n-3)/9", lhs >= rhs, format!("{lhs} >= {rhs}"));
    report.value("obstruction_degree", top);
    report.value("bound", &rhs);
    Ok(report)
}

pub fn ample_hypersurface(n: u64) -> Result<(WeightedHypersurface, u64)> {
    if n < 1 {
        return Err(Error::Parameter("n must be at least 1".into()));
    }
    let (weights, d) = if n.is_multiple_of(2) {
        let d = n + 3;
        (Weights::from_blocks(&[(1, n as usize), (2, 1), (d, 1)])?, d)
    } else {
        let d = n + 2;
        (Weights::from_blocks(&[(1, (n + 1) as usize), (d, 1)])?, d)
    };
    Ok((WeightedHypersurface::new(weights, 2 * d)?, d))
}

pub fn ample_witness(n: u64) -> Result<FamilyReport> {
    let (x, d) = ample_hypersurface(n)?;
    let mut report = FamilyReport::new(FamilyId::Ample, x.clone());
    report.param("n", n);
    report.value("degree", x.degree());
    report.value("obstruction_degree", d);
    if n.is_multiple_of(2) {
        report.check("d = n+3 is odd", d % 2 == 1, format!("d = {d}"));
    }
    report.check("dimension = n", x.dimension() as u64 == n, format!("{}", x.dimension()));
    push_amplitude_one(&mut report);
    report.check("well-formed", well_formed(x.weights()), x.weights().to_string());
    let sr = x.singularity_report()?;
    report.check("quasi-smooth", sr.quasi_smooth, "");
    let missed: Vec<String> = sr
        .points
        .iter()
        .map(|p| format!("z_{} (weight {}) divides 2d: {}", p.index, p.weight, !p.meets_member))
        .collect();
    let all_missed = sr.points.iter().all(|p| !p.meets_member) && sr.strata.iter().all(|s| !s.meets_member);
    report.check("general member misses the ambient singularities", all_missed, missed.join("; "));
    report.check(
        "general member smooth",
        sr.member_class == Some(SingularityClass::Smooth),
        format!("{:?}", sr.member_class),
    );
    let top = x.weights().len() - 1;
    let mut first_present = None;
    for t in 0..d {
        if variables_present(x.weights(), t)?.contains(&top) {
            first_present = Some(t);
            break;
        }
    }
    report.check(
        "top-weight variable absent in every degree t < d",
        first_present.is_none(),
        match first_present {
            None => format!("z_{top} absent for t = 0..{}", d - 1),
            Some(t) => format!("z_{top} present at t = {t}"),
        },
    );
    if n == 1 {
        report
            .notes
            .push("X_6 in P(1,1,3) is a smooth curve of genus 2".into());
    }
    if n % 2 == 1 && n >= 3 {
        report.notes.push(
            "a product Y x C with C of genus 2 is an alternative in odd dimension; not modeled".into(),
        );
    }
    Ok(report)
}

/// Parameters of the assigned-volume construction `X_{rab} ⊂ P(1^(m), a, s, b)`.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VolumeParams {
    pub r: u64,
    pub s: u64,
    pub a: u64,
    pub b: u64,
    pub t: u64,
    /// Number of unit weights.
    pub m: u64,
    pub d: u64,
}

impl VolumeParams {
    /// Ambient dimension, `m + 2`.
    pub fn family_n(&self) -> u64 {
        self.m + 2
    }

    pub fn weights(&self) -> Result<Weights> {
        Weights::from_blocks(&[(1, self.m as usize), (self.a, 1), (self.s, 1), (self.b, 1)])
    }

    pub fn a_index(&self) -> usize {
        self.m as usize
    }

    pub fn s_index(&self) -> usize {
        self.m as usize + 1
    }
}

fn unit_count(r: u64, s: u64, a: u64, b: u64) -> i128 {
    a as i128 * (r as i128 * b as i128 - 1) - s as i128 - b as i128 - 1
}

/// Deterministic parameter choice: `b` the least positive inverse of `r`
/// modulo `s` (stepped by `s` while `rb = 1`), then the least `a` coprime to
/// `s` and `b` leaving at least `max(s, 1)` unit weights.
pub fn volume_parameters(r: u64, s: u64, a: Option<u64>, b: Option<u64>) -> Result<VolumeParams> {
    if r == 0 || s == 0 {
        return Err(Error::Parameter("r and s must be positive".into()));
    }
    if r.gcd(&s) != 1 {
        return Err(Error::Parameter(format!("gcd({r}, {s}) != 1")));
    }
    if let Some(b) = b {
        if b == 0 || (b as u128 * r as u128) % s as u128 != 1 % s as u128 {
            return Err(Error::Parameter(format!("b = {b} does not satisfy b*r = 1 mod {s}")));
        }
    }
    if let Some(a) = a {
        if a == 0 || a.gcd(&s) != 1 {
            return Err(Error::Parameter(format!("a = {a} must be positive and coprime to s = {s}")));
        }
    }
    let need = s.max(1) as i128;
    let b0 = match b {
        Some(b) => b,
        None => (1..=s).find(|&b| (b as u128 * r as u128) % s as u128 == 1 % s as u128).expect("r invertible mod s"),
    };
    let mut b_cur = b0;
    loop {
        let rb = r as u128 * b_cur as u128;
        if rb > 1 {
            let chosen = match a {
                Some(a) if a.gcd(&b_cur) != 1 => None,
                Some(a) => {
                    let m = unit_count(r, s, a, b_cur);
                    if b.is_some() {
                        if m < 1 {
                            return Err(Error::Parameter(format!(
                                "a = {a}, b = {b_cur} leave {m} unit weights; at least 1 needed"
                            )));
                        }
                        Some(a)
                    } else if m >= need {
                        Some(a)
                    } else {
                        None
                    }
                }
                None => {
                    let step = (rb - 1) as i128;
                    let floor = (need + s as i128 + b_cur as i128 + 1 + step - 1) / step;
                    (floor.max(1) as u64..).find(|a| a.gcd(&s) == 1 && a.gcd(&b_cur) == 1)
                }
            };
            if let Some(a) = chosen {
                let m = unit_count(r, s, a, b_cur) as u64;
                return Ok(VolumeParams {
                    r,
                    s,
                    a,
                    b: b_cur,
                    t: ((rb - 1) / s as u128) as u64,
                    m,
                    d: r * a * b_cur,
                });
            }
        }
        if b.is_some() {
            return Err(Error::Parameter(format!(
                "b = {b_cur} admits no valid a (r*b = 1 or gcd(a, b) != 1)"
            )));
        }
        b_cur += s;
    }
}

/// `1/s(1^(m), b)`.
pub fn volume_member_type(m: u64, s: u64, b: u64) -> Result<CyclicQuotientSingularity> {
    let mut w = vec![1; m as usize];
    w.push(b);
    CyclicQuotientSingularity::new(s, w)
}

/// Largest unit count `m < s` at which `1/s(1^(m), b)` is not terminal.
pub fn largest_nonterminal_unit_count(s: u64, b: u64) -> Result<Option<u64>> {
    for m in (1..s).rev() {
        if !volume_member_type(m, s, b)?.classify()?.is_terminal() {
            return Ok(Some(m));
        }
    }
    Ok(None)
}

pub fn volume_witness(r: u64, s: u64, a: Option<u64>, b: Option<u64>) -> Result<FamilyReport> {
    let p = volume_parameters(r, s, a, b)?;
    let x = WeightedHypersurface::new(p.weights()?, p.d)?;
    let mut report = FamilyReport::new(FamilyId::Volume, x.clone());
    for (key, v) in [("r", p.r), ("s", p.s), ("a", p.a), ("b", p.b), ("t", p.t)] {
        report.param(key, v);
    }
    report.value("unit_weights", p.m);
    report.value("family_n", p.family_n());
    report.value("member_dimension", x.dimension());
    report.value("degree", p.d);

    report.check(
        "b*r = t*s + 1",
        p.b as u128 * p.r as u128 == p.t as u128 * p.s as u128 + 1,
        format!("{}*{} = {}*{} + 1", p.b, p.r, p.t, p.s),
    );
    report.check(
        "a, s, b pairwise coprime",
        p.a.gcd(&p.s) == 1 && p.a.gcd(&p.b) == 1 && p.s.gcd(&p.b) == 1,
        format!("a={} s={} b={}", p.a, p.s, p.b),
    );
    report.check(
        "sum of weights = d - 1",
        x.weights().sum() + 1 == p.d,
        format!("{} + 1 vs {}", x.weights().sum(), p.d),
    );
    push_amplitude_one(&mut report);
    report.check("well-formed", well_formed(x.weights()), "");
    report.check(
        "a | d and b | d",
        p.d % p.a == 0 && p.d % p.b == 0,
        format!("d = {}", p.d),
    );
    if p.s > 1 {
        report.check("s does not divide d", p.d % p.s != 0, format!("d mod s = {}", p.d % p.s));
    }
    report.check(
        "witness z_s^(ta) z_a has degree d",
        p.t as u128 * p.a as u128 * p.s as u128 + p.a as u128 == p.d as u128,
        format!("{}*{}*{} + {} = {}", p.t, p.a, p.s, p.a, p.d),
    );

    let sr = x.singularity_report_with_witnesses(&[(p.s_index(), p.a_index())])?;
    report.check("quasi-smooth", sr.quasi_smooth, "");
    let contained: Vec<usize> = sr.contained_points().map(|e| e.index).collect();
    let expected: Vec<usize> = if p.s > 1 { vec![p.s_index()] } else { vec![] };
    report.check(
        "coordinate points on the general member",
        contained == expected,
        format!("{contained:?}"),
    );
    if p.s > 1 {
        let target = volume_member_type(p.m, p.s, p.b)?;
        let got = sr
            .points
            .iter()
            .find(|e| e.index == p.s_index())
            .and_then(|e| e.member_type.clone());
        report.check(
            "member type at P is 1/s(1^(m), b)",
            got.as_ref() == Some(&target),
            got.as_ref().map(|g| g.to_string()).unwrap_or_else(|| "none".into()),
        );
        let class = target.classify_detailed()?;
        report.check("unit weights m >= s", p.m >= p.s, format!("m = {}", p.m));
        report.check("member point terminal", class.class.is_terminal(), class.to_string());
        report.value("member_class", class.class);
        report.check(
            "member terminal everywhere",
            sr.member_class.is_some_and(|c| c.is_terminal()),
            format!("{:?}", sr.member_class),
        );
    } else {
        report.check(
            "general member smooth",
            sr.member_class == Some(SingularityClass::Smooth),
            format!("{:?}", sr.member_class),
        );
    }
    let vol = x.volume()?;
    let target = Rational::new(p.r, p.s);
    let via_params = Rational::new(p.d, p.a as u128 * p.s as u128 * p.b as u128);
    report.check(
        "volume = d/(asb) = r/s",
        vol == target && via_params == target,
        format!("{vol} = {via_params} vs {target}"),
    );
    report.value("volume", &vol);
    Ok(report)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerifyRanges {
    pub prop_k: RangeInclusive<u64>,
    pub prop_l: RangeInclusive<u64>,
    pub thm3_n: RangeInclusive<u64>,
    pub thm4_n: RangeInclusive<u64>,
    pub ample_n: RangeInclusive<u64>,
    pub volumes: Vec<(u64, u64)>,
}

impl Default for VerifyRanges {
    fn default() -> Self {
        VerifyRanges {
            prop_k: 2..=6,
            prop_l: 0..=4,
            thm3_n: 5..=30,
            thm4_n: 7..=30,
            ample_n: 1..=20,
            volumes: vec![(1, 2), (2, 3), (5, 7), (3, 1), (22, 7), (355, 113)],
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AggregateReport {
    pub passed: bool,
    pub reports: Vec<FamilyReport>,
}

#[derive(Clone, Copy)]
enum Job {
    Prop(u64, u64),
    Thm3(u64),
    Thm4(u64),
    Ample(u64),
    Volume(u64, u64),
}

impl Job {
    fn run(self) -> Result<FamilyReport> {
        match self {
            Job::Prop(k, l) => prop_family(k, l),
            Job::Thm3(n) => thm3_witness(n),
            Job::Thm4(n) => thm4_witness(n),
            Job::Ample(n) => ample_witness(n),
            Job::Volume(r, s) => volume_witness(r, s, None, None),
        }
    }
}

/// Runs every family over `ranges`; reports come back in parameter order.
pub fn verify_all(ranges: &VerifyRanges) -> Result<AggregateReport> {
    if !ranges.prop_k.is_empty() && *ranges.prop_k.start() < 2 {
        return Err(Error::Parameter("prop family needs k >= 2".into()));
    }
    if !ranges.thm3_n.is_empty() && *ranges.thm3_n.start() < 5 {
        return Err(Error::Parameter("thm3 family needs n >= 5".into()));
    }
    if !ranges.thm4_n.is_empty() && *ranges.thm4_n.start() < 7 {
        return Err(Error::Parameter("thm4 family needs n >= 7".into()));
    }
    if !ranges.ample_n.is_empty() && *ranges.ample_n.start() < 1 {
        return Err(Error::Parameter("ample family needs n >= 1".into()));
    }
    for &(r, s) in &ranges.volumes {
        if r == 0 || s == 0 || r.gcd(&s) != 1 {
            return Err(Error::Parameter(format!("volume {r}/{s} needs coprime positive r, s")));
        }
    }
    let mut jobs = Vec::new();
    for k in ranges.prop_k.clone() {
        for l in ranges.prop_l.clone() {
            jobs.push(Job::Prop(k, l));
        }
    }
    jobs.extend(ranges.thm3_n.clone().map(Job::Thm3));
    jobs.extend(ranges.thm4_n.clone().map(Job::Thm4));
    jobs.extend(ranges.ample_n.clone().map(Job::Ample));
    jobs.extend(ranges.volumes.iter().map(|&(r, s)| Job::Volume(r, s)));
    let reports = jobs
        .into_par_iter()
        .map(Job::run)
        .collect::<Result<Vec<_>>>()?;
    Ok(AggregateReport {
        passed: reports.iter().all(FamilyReport::passed),
        reports,
    })
}
