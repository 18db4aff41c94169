use std::ops::RangeInclusive;

use serde_json::json;

use wphyp::families::{
    ample_witness, prop_family, thm3_witness, thm4_witness, verify_all, volume_witness, FamilyReport,
    VerifyRanges,
};
use wphyp::hilbert::plurigenera_table;
use wphyp::hypersurface::Analysis;
use wphyp::search::{enumerate_candidates, SearchConfig, SearchRecord};
use wphyp::{analyze, CyclicQuotientSingularity, Limits, Rational, WeightedHypersurface, Weights};

use crate::output::{render_checks, to_value, Failure, OutputDocument, Rendered};
use crate::{Command, FamilyArg};

fn env_u64(name: &str) -> Result<Option<u64>, Failure> {
    match std::env::var(name) {
        Err(_) => Ok(None),
        Ok(v) => v
            .trim()
            .parse()
            .map(Some)
            .map_err(|_| Failure::usage(format!("{name}={v:?} is not a nonnegative integer"))),
    }
}

/// Budget overrides from `WPHYP_TABLE_CELLS`, `WPHYP_SUBSET_CAP`,
/// `WPHYP_QUOTIENT_ORDER` and `WPHYP_SEARCH_SUM`.
pub fn install_limits() -> Result<(), Failure> {
    let mut limits = Limits::default();
    if let Some(v) = env_u64("WPHYP_TABLE_CELLS")? {
        limits.table_cells = v;
    }
    if let Some(v) = env_u64("WPHYP_SUBSET_CAP")? {
        limits.subset_len = v.min(63);
    }
    if let Some(v) = env_u64("WPHYP_QUOTIENT_ORDER")? {
        limits.quotient_order = v;
    }
    if let Some(v) = env_u64("WPHYP_SEARCH_SUM")? {
        limits.search_sum = v;
    }
    limits.install();
    Ok(())
}

fn parse_range(flag: &str, s: &str) -> Result<RangeInclusive<u64>, Failure> {
    let bad = || Failure::usage(format!("--{flag}: expected N or A..B, got {s:?}"));
    let num = |t: &str| t.trim().parse::<u64>().map_err(|_| bad());
    match s.split_once("..") {
        None => {
            let v = num(s)?;
            Ok(v..=v)
        }
        Some((a, b)) => {
            let b = b.strip_prefix('=').unwrap_or(b);
            let (a, b) = (num(a)?, num(b)?);
            if a > b {
                return Err(bad());
            }
            Ok(a..=b)
        }
    }
}

fn parse_fraction(s: &str) -> Result<(u64, u64), Failure> {
    let bad = || Failure::usage(format!("expected a positive fraction r/s, got {s:?}"));
    let (r, q) = s.trim().split_once('/').unwrap_or((s.trim(), "1"));
    let r = r.trim().parse::<u64>().map_err(|_| bad())?;
    let q = q.trim().parse::<u64>().map_err(|_| bad())?;
    if r == 0 || q == 0 {
        return Err(bad());
    }
    Ok((r, q))
}

fn finish(doc: OutputDocument, json: bool, text: String) -> Rendered {
    Rendered {
        passed: doc.passed,
        text: if json { doc.to_json() } else { text },
    }
}

pub fn run(command: Command, json: bool, echo: String) -> Result<Rendered, Failure> {
    match command {
        Command::Analyze { weights, degree, plurigenera, decimal } => {
            let w: Weights = weights.parse()?;
            let x = WeightedHypersurface::new(w, degree)?;
            let a = analyze(&x, plurigenera)?;
            let mut results = to_value(&a);
            if let (Some(k), Some(v)) = (decimal, &a.volume) {
                results["volume_approx"] = json!(v.to_decimal(k));
            }
            let inputs = json!({ "weights": weights, "degree": degree, "plurigenera": plurigenera });
            let text = render_analysis(&a, decimal);
            Ok(finish(OutputDocument::new(echo, inputs, results, vec![]), json, text))
        }
        Command::Plurigenera { weights, degree, up_to } => {
            let w: Weights = weights.parse()?;
            let x = WeightedHypersurface::new(w, degree)?;
            let table = plurigenera_table(&x, up_to)?;
            let strings: Vec<String> = table.iter().map(|p| p.to_string()).collect();
            let mut text = format!("X_{degree} in P({})\n", x.weights());
            for (m, p) in strings.iter().enumerate() {
                text.push_str(&format!("P_{} = {p}\n", m + 1));
            }
            let inputs = json!({ "weights": weights, "degree": degree, "up_to": up_to });
            let results = json!({ "amplitude": x.amplitude(), "plurigenera": strings });
            Ok(finish(OutputDocument::new(echo, inputs, results, vec![]), json, text))
        }
        Command::ReidTai { singularity } => {
            let q: CyclicQuotientSingularity = singularity.parse()?;
            let c = q.classify_detailed()?;
            let text = format!("{q}: {c}\n");
            let inputs = json!({ "singularity": singularity });
            let results = json!({ "singularity": q.to_string(), "classification": to_value(&c) });
            Ok(finish(OutputDocument::new(echo, inputs, results, vec![]), json, text))
        }
        Command::Verify { family, k, l, n, q, all } => {
            let reports = if all {
                verify_all(&VerifyRanges::default())?.reports
            } else {
                verify_family(family.expect("clap enforces --family"), k, l, n, q)?
            };
            let checks = reports
                .iter()
                .flat_map(|r| {
                    r.checks.iter().map(move |c| wphyp::families::Check {
                        name: format!("{}: {}", r.label(), c.name),
                        ..c.clone()
                    })
                })
                .collect();
            let mut text = String::new();
            for r in &reports {
                text.push_str(&render_family(r, None));
            }
            let passed = reports.iter().filter(|r| r.passed()).count();
            text.push_str(&format!("{passed}/{} reports passed\n", reports.len()));
            let inputs = json!({ "all": all, "family": family.map(|f| format!("{f:?}").to_lowercase()) });
            let results = json!({ "reports": to_value(&reports) });
            Ok(finish(OutputDocument::new(echo, inputs, results, checks), json, text))
        }
        Command::ConstructVolume { volume, a, b, decimal } => {
            let (r, s) = parse_fraction(&volume)?;
            let report = volume_witness(r, s, a, b)?;
            let text = render_family(&report, decimal);
            let mut results = to_value(&report);
            if let Some(k) = decimal {
                results["volume_approx"] = json!(Rational::new(r, s).to_decimal(k));
            }
            let inputs = json!({ "volume": volume, "a": a, "b": b });
            Ok(finish(OutputDocument::new(echo, inputs, results, report.checks.clone()), json, text))
        }
        Command::Search { dim, max_sum, vanishing, plurigenera, amplitude, jobs, min, csv } => {
            let jobs = match jobs {
                Some(j) => Some(j),
                None => env_u64("WPHYP_JOBS")?.map(|j| j as usize),
            };
            let config = SearchConfig {
                member_dim: dim,
                max_weight_sum: max_sum,
                amplitude,
                plurigenera_up_to: plurigenera,
                vanishing,
                jobs,
            };
            let mut outcome = enumerate_candidates(&config)?;
            if min {
                if outcome.records.is_empty() {
                    return Err(wphyp::Error::EmptyResult(format!(
                        "no record with dimension {dim} and weight sum <= {max_sum}"
                    ))
                    .into());
                }
                outcome.records.truncate(1);
            }
            let columns = plurigenera.max(vanishing) as usize;
            let text = if csv {
                render_csv(&outcome.records, columns)?
            } else {
                render_search(&outcome.records, outcome.candidates, &config)
            };
            let inputs = to_value(&config);
            let results = json!({
                "bound": format!("nondecreasing weights, {} entries, sum <= {max_sum}", dim + 2),
                "candidates": outcome.candidates,
                "records": to_value(&outcome.records),
            });
            Ok(finish(OutputDocument::new(echo, inputs, results, vec![]), json, text))
        }
    }
}

fn verify_family(
    family: FamilyArg,
    k: Option<String>,
    l: Option<String>,
    n: Option<String>,
    q: Option<String>,
) -> Result<Vec<FamilyReport>, Failure> {
    let need = |flag: &str, v: Option<String>| {
        v.ok_or_else(|| Failure::usage(format!("--{flag} is required for this family")))
            .and_then(|s| parse_range(flag, &s))
    };
    let mut out = Vec::new();
    match family {
        FamilyArg::Prop => {
            let ks = need("k", k)?;
            let ls = parse_range("l", l.as_deref().unwrap_or("0"))?;
            for k in ks {
                for l in ls.clone() {
                    out.push(prop_family(k, l)?);
                }
            }
        }
        FamilyArg::Thm3 => {
            for n in need("n", n)? {
                out.push(thm3_witness(n)?);
            }
        }
        FamilyArg::Thm4 => {
            for n in need("n", n)? {
                out.push(thm4_witness(n)?);
            }
        }
        FamilyArg::Ample => {
            for n in need("n", n)? {
                out.push(ample_witness(n)?);
            }
        }
        FamilyArg::Volume => {
            let list = q.ok_or_else(|| Failure::usage("--q is required for the volume family"))?;
            for item in list.split(',') {
                let (r, s) = parse_fraction(item)?;
                out.push(volume_witness(r, s, None, None)?);
            }
        }
    }
    Ok(out)
}

fn opt_bool(v: Option<bool>) -> String {
    v.map(|b| b.to_string()).unwrap_or_else(|| "n/a".into())
}

fn render_analysis(a: &Analysis, decimal: Option<usize>) -> String {
    let mut out = String::new();
    let mut line = |k: &str, v: String| out.push_str(&format!("{k:<18} {v}\n"));
    line("weights", a.weights.to_string());
    line("degree", a.degree.to_string());
    line("dimension", a.dimension.to_string());
    line("amplitude", a.amplitude.to_string());
    line("well-formed", a.well_formed.to_string());
    line("quasi-smooth", a.quasi_smooth.to_string());
    line("ambient canonical", opt_bool(a.ambient_canonical));
    line(
        "member class",
        a.member_class.map(|c| c.to_string()).unwrap_or_else(|| "n/a".into()),
    );
    match &a.volume {
        Some(v) => {
            line("volume", v.to_string());
            if let Some(k) = decimal {
                line("volume (approx)", v.to_decimal(k));
            }
        }
        None => line("volume", "n/a (amplitude <= 0)".into()),
    }
    if let Some(p) = &a.plurigenera {
        let list: Vec<String> = p.iter().map(|x| x.to_string()).collect();
        line(&format!("P_1..P_{}", p.len()), list.join(" "));
    }
    for p in &a.report.points {
        out.push_str(&format!(
            "point z_{} {}: ambient {}",
            p.index, p.ambient_type, p.ambient
        ));
        match (&p.member_type, &p.member) {
            (Some(t), Some(c)) => out.push_str(&format!("; on X: {t} {c}\n")),
            _ if p.meets_member => out.push_str("; on X: undetermined\n"),
            _ => out.push_str("; not on X\n"),
        }
    }
    for s in &a.report.strata {
        out.push_str(&format!(
            "stratum {:?} {}: ambient {}",
            s.indices, s.ambient_type, s.ambient
        ));
        match (&s.member_type, &s.member) {
            (Some(t), Some(c)) => out.push_str(&format!("; on X: {t} {c}\n")),
            _ if s.meets_member => out.push_str("; on X: undetermined\n"),
            _ => out.push_str("; not on X\n"),
        }
    }
    out
}

fn render_family(r: &FamilyReport, decimal: Option<usize>) -> String {
    let x = &r.hypersurface;
    let status = if r.passed() { "PASS" } else { "FAIL" };
    let mut out = format!(
        "{status} {}: X_{} in P({})\n",
        r.label(),
        x.degree(),
        x.weights()
    );
    for (k, v) in &r.values {
        out.push_str(&format!("  {k} = {v}\n"));
    }
    if let (Some(k), Some(v)) = (decimal, r.values.get("volume")) {
        if let Ok(v) = v.parse::<Rational>() {
            out.push_str(&format!("  volume (approx) = {}\n", v.to_decimal(k)));
        }
    }
    render_checks(&mut out, &r.checks);
    for n in &r.notes {
        out.push_str(&format!("  note: {n}\n"));
    }
    out
}

fn record_flags(r: &SearchRecord) -> String {
    format!(
        "well-formed={} quasi-smooth={} canonical={} ambient-canonical={} class={}",
        r.well_formed, r.quasi_smooth, r.canonical, r.ambient_canonical, r.member_class
    )
}

fn render_search(records: &[SearchRecord], candidates: u64, config: &SearchConfig) -> String {
    let mut out = format!(
        "searched {candidates} nondecreasing tuples of {} weights with sum <= {}; {} records\n",
        config.member_dim + 2,
        config.max_weight_sum,
        records.len()
    );
    for r in records {
        let p: Vec<String> = r.plurigenera.iter().map(|x| x.to_string()).collect();
        out.push_str(&format!(
            "X_{} in P({}) vol {} P=[{}] {}\n",
            r.degree,
            r.weights,
            r.volume,
            p.join(","),
            record_flags(r)
        ));
    }
    out
}

fn render_csv(records: &[SearchRecord], columns: usize) -> Result<String, Failure> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let mut header = vec!["weights".to_string(), "d".into(), "volume".into()];
    header.extend((1..=columns).map(|m| format!("P_{m}")));
    header.push("flags".into());
    let io = |e: csv::Error| Failure { status: 2, message: e.to_string() };
    w.write_record(&header).map_err(io)?;
    for r in records {
        let mut row = vec![r.weights.to_string(), r.degree.to_string(), r.volume.to_string()];
        row.extend(r.plurigenera.iter().map(|p| p.to_string()));
        row.push(record_flags(r));
        w.write_record(&row).map_err(io)?;
    }
    let bytes = w.into_inner().map_err(|e| Failure { status: 2, message: e.to_string() })?;
    Ok(String::from_utf8(bytes).expect("csv is utf-8"))
}

