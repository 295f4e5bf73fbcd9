//! Exhaustive sweep campaigns over prime ranges, cross-law consistency
//! checking, counterexample collection and report serialization.
//!
//! Campaigns may evaluate cases in parallel; the parameter space is
//! enumerated in canonical order up front and results are merged back in
//! that order, so serialized output is byte-identical regardless of the
//! number of worker threads.

use crate::arith::{is_prime, jacobi, prime_stream, PrimeRange, SymbolValue};
use crate::error::{Error, Result};
use crate::laws::{
    eval_burde_chain, eval_burde_eq7, eval_eq1, eval_froehlich_eq9, eval_gosset_eq8, eval_m2_eq3,
    eval_whf_variant, params_from, sign_lemma_report, splitting_chain, Law, LawReport, Params,
    Variant,
};
use crate::quadfield::{check_identity_eq2, symbol_surd};
use crate::represent::whf_triple;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::io::Write;
use std::time::Instant;

/// A case that could not be evaluated. `excluded` marks legitimate data
/// conditions (a degenerate Gosset fraction) that are recorded but do not
/// count against the campaign verdict.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CaseError {
    pub law: Law,
    pub params: Params,
    pub error: String,
    #[serde(skip)]
    pub excluded: bool,
}

/// One line of a campaign's serialized stream.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum CaseRecord {
    Report(LawReport),
    Error(CaseError),
}

impl CaseRecord {
    pub fn law(&self) -> Law {
        match self {
            CaseRecord::Report(r) => r.law,
            CaseRecord::Error(e) => e.law,
        }
    }

    pub fn params(&self) -> &Params {
        match self {
            CaseRecord::Report(r) => &r.params,
            CaseRecord::Error(e) => &e.params,
        }
    }

    pub fn as_report(&self) -> Option<&LawReport> {
        match self {
            CaseRecord::Report(r) => Some(r),
            CaseRecord::Error(_) => None,
        }
    }
}

/// Aggregated result of one sweep campaign.
///
/// `cases_run` counts admissible parameter tuples; a tuple is held when
/// every law evaluated on it holds and no unexpected error occurred.
/// `counterexamples` collects the failing reports and `errors` every
/// evaluation error, excluded or not.
#[derive(Clone, Debug)]
pub struct CampaignReport {
    pub campaign: String,
    pub bounds: BTreeMap<String, i64>,
    pub cases_run: u64,
    pub cases_held: u64,
    pub counterexamples: Vec<LawReport>,
    pub errors: Vec<CaseError>,
    pub edge_cases: u64,
    pub wall_time: f64,
    pub records: Vec<CaseRecord>,
}

impl CampaignReport {
    /// True when the campaign found a counterexample or an unexpected error.
    pub fn has_counterexamples(&self) -> bool {
        !self.counterexamples.is_empty() || self.errors.iter().any(|e| !e.excluded)
    }
}

#[derive(Default)]
struct TupleOutcome {
    records: Vec<CaseRecord>,
    edge: bool,
}

impl TupleOutcome {
    fn push_result(&mut self, law: Law, params: Params, result: Result<LawReport>) {
        match result {
            Ok(report) => self.records.push(CaseRecord::Report(report)),
            Err(e) => self.records.push(CaseRecord::Error(CaseError {
                law,
                params,
                error: e.to_string(),
                excluded: matches!(e, Error::DegenerateFraction { .. }),
            })),
        }
    }

    fn held(&self) -> bool {
        self.records.iter().all(|rec| match rec {
            CaseRecord::Report(r) => r.holds,
            CaseRecord::Error(e) => e.excluded,
        })
    }
}

fn assemble(
    campaign: &str,
    bounds: BTreeMap<String, i64>,
    outcomes: Vec<TupleOutcome>,
    started: Instant,
) -> CampaignReport {
    let mut report = CampaignReport {
        campaign: campaign.to_string(),
        bounds,
        cases_run: outcomes.len() as u64,
        cases_held: 0,
        counterexamples: Vec::new(),
        errors: Vec::new(),
        edge_cases: 0,
        wall_time: 0.0,
        records: Vec::new(),
    };
    for outcome in outcomes {
        if outcome.held() {
            report.cases_held += 1;
        }
        if outcome.edge {
            report.edge_cases += 1;
        }
        for rec in &outcome.records {
            match rec {
                CaseRecord::Report(r) if !r.holds => report.counterexamples.push(r.clone()),
                CaseRecord::Error(e) => report.errors.push(e.clone()),
                _ => {}
            }
        }
        report.records.extend(outcome.records);
    }
    report.wall_time = started.elapsed().as_secs_f64();
    report
}

/// Primes m ≡ 1 mod 4 up to `hi`.
fn one_mod_four_primes(lo: u64, hi: u64) -> Vec<u64> {
    prime_stream(PrimeRange::with_filter(lo, hi, 4, &[1])).collect()
}

fn whf_tuple(m: u64, p: u64, variants: &[Variant]) -> TupleOutcome {
    let mut out = TupleOutcome::default();
    let base_params = params_from(&[("m", m as i64), ("p", p as i64)]);

    out.push_result(Law::Eq1, base_params.clone(), eval_eq1(m, p));
    for &variant in variants {
        if variant == Variant::Eq1 {
            continue; // always evaluated above
        }
        out.push_result(
            variant.law(),
            base_params.clone(),
            eval_whf_variant(m, p, variant),
        );
    }
    out.push_result(
        Law::Split,
        base_params.clone(),
        splitting_chain(m, p).map(|(_, r)| r),
    );
    match whf_triple(m) {
        Ok(t) => {
            out.push_result(Law::Sign, base_params, sign_lemma_report(p, &t));
            out.edge = [t.a, t.b, t.c]
                .iter()
                .any(|&v| v.unsigned_abs() % p == 0);
        }
        Err(e) => out.records.push(CaseRecord::Error(CaseError {
            law: Law::Sign,
            params: base_params,
            error: e.to_string(),
            excluded: false,
        })),
    }
    out
}

/// Sweep of the main theorem: every prime m ≡ 1 mod 4 up to `m_max` against
/// every odd prime p ≤ `p_max` with p ≠ m and (m/p) = +1. Runs the plain
/// law, each requested variant, the splitting chain and the sign lemma;
/// counts the p | ABC edge cases.
pub fn campaign_whf(m_max: u64, p_max: u64, variants: &[Variant]) -> CampaignReport {
    let started = Instant::now();
    let mut vs: Vec<Variant> = variants.to_vec();
    vs.sort();
    vs.dedup();
    let ms = one_mod_four_primes(5, m_max);
    let ps: Vec<u64> = prime_stream(PrimeRange::new(3, p_max)).collect();
    let tuples: Vec<(u64, u64)> = ms
        .iter()
        .flat_map(|&m| {
            ps.iter()
                .filter(move |&&p| p != m && jacobi(m as i64, p) == Ok(SymbolValue::Plus))
                .map(move |&p| (m, p))
        })
        .collect();
    let outcomes: Vec<TupleOutcome> = tuples
        .par_iter()
        .map(|&(m, p)| whf_tuple(m, p, &vs))
        .collect();
    let mut bounds = BTreeMap::new();
    bounds.insert("m_max".to_string(), m_max as i64);
    bounds.insert("p_max".to_string(), p_max as i64);
    for v in &vs {
        bounds.insert(format!("variant_{}", v.law().name().to_ascii_lowercase()), 1);
    }
    assemble("whf", bounds, outcomes, started)
}

fn pair_tuple(p: u64, q: u64) -> TupleOutcome {
    let mut out = TupleOutcome::default();
    let base_params = params_from(&[("p", p as i64), ("q", q as i64)]);

    let eq7 = eval_burde_eq7(p, q);
    let chain = eval_burde_chain(p, q);
    let eq8 = eval_gosset_eq8(p, q);
    let eq9 = eval_froehlich_eq9(p, q);

    // cross-law agreement where the laws state the same quantity
    if let (Ok(eq7r), Ok(eq9r)) = (&eq7, &eq9) {
        if eq7r.lhs != eq9r.lhs {
            out.records.push(CaseRecord::Error(CaseError {
                law: Law::Eq9,
                params: base_params.clone(),
                error: "symbol product disagrees between Burde and Froehlich forms".into(),
                excluded: false,
            }));
        }
    }
    if let (Ok(eq7r), Ok(eq8r)) = (&eq7, &eq8) {
        if eq7r.holds != eq8r.holds {
            out.records.push(CaseRecord::Error(CaseError {
                law: Law::Eq8,
                params: base_params.clone(),
                error: "Gosset and Burde verdicts disagree".into(),
                excluded: false,
            }));
        }
    }
    if let Ok(eq7r) = &eq7 {
        // the rational side is symmetric in p and q
        let num = eq7r.params["a"] * eq7r.params["c"] - eq7r.params["b"] * eq7r.params["d"];
        if jacobi(num, q) != jacobi(num, p) {
            out.records.push(CaseRecord::Error(CaseError {
                law: Law::Eq7,
                params: base_params.clone(),
                error: format!("((ac-bd)/q) != ((ac-bd)/p) for ac-bd = {num}"),
                excluded: false,
            }));
        }
    }

    out.push_result(Law::Eq7, base_params.clone(), eq7);
    out.push_result(Law::Chain, base_params.clone(), chain);
    out.push_result(Law::Eq8, base_params.clone(), eq8);
    out.push_result(Law::Eq9, base_params, eq9);
    out
}

/// Sweep of the pair laws over all ordered pairs of distinct primes
/// p, q ≡ 1 mod 4 up to `bound` with (p/q) = +1. Degenerate Gosset
/// fractions are recorded and excluded from the verdict, never skipped.
pub fn campaign_pairs(bound: u64) -> CampaignReport {
    let started = Instant::now();
    let primes = one_mod_four_primes(5, bound);
    let tuples: Vec<(u64, u64)> = primes
        .iter()
        .flat_map(|&p| {
            primes
                .iter()
                .filter(move |&&q| q != p && jacobi(p as i64, q) == Ok(SymbolValue::Plus))
                .map(move |&q| (p, q))
        })
        .collect();
    let outcomes: Vec<TupleOutcome> = tuples.par_iter().map(|&(p, q)| pair_tuple(p, q)).collect();
    let mut bounds = BTreeMap::new();
    bounds.insert("bound".to_string(), bound as i64);
    assemble("pairs", bounds, outcomes, started)
}

/// Sweep of the m = 2 law over odd primes p ≤ `p_max` with p ≡ ±1 mod 8.
/// The lhs = -1 cases must be exactly those with p ≡ 7 or 9 mod 16.
pub fn campaign_m2(p_max: u64) -> CampaignReport {
    let started = Instant::now();
    let tuples: Vec<u64> = prime_stream(PrimeRange::with_filter(3, p_max, 8, &[1, 7])).collect();
    let outcomes: Vec<TupleOutcome> = tuples
        .par_iter()
        .map(|&p| {
            let mut out = TupleOutcome::default();
            out.push_result(Law::Eq3, params_from(&[("p", p as i64)]), eval_m2_eq3(p));
            out
        })
        .collect();
    let mut bounds = BTreeMap::new();
    bounds.insert("p_max".to_string(), p_max as i64);
    assemble("m2", bounds, outcomes, started)
}

const SAMPLE_LIMIT: u64 = 1 << 31;

/// Uniform random prime m ≡ 1 mod 4 below 2^31, by rejection sampling
/// candidates of the form 4k + 1.
fn sample_prime_1mod4(rng: &mut ChaCha8Rng) -> u64 {
    loop {
        let k = rng.gen_range(1..=(SAMPLE_LIMIT - 2) / 4);
        let m = 4 * k + 1;
        if is_prime(m) {
            return m;
        }
    }
}

const RELATION_PRIMES_PER_SAMPLE: usize = 5;

fn identities_tuple(m: u64) -> TupleOutcome {
    let mut out = TupleOutcome::default();
    let t = match whf_triple(m) {
        Ok(t) => t,
        Err(e) => {
            out.records.push(CaseRecord::Error(CaseError {
                law: Law::Eq2,
                params: params_from(&[("m", m as i64)]),
                error: e.to_string(),
                excluded: false,
            }));
            return out;
        }
    };
    let triple_params = params_from(&[("m", m as i64), ("A", t.a), ("B", t.b), ("C", t.c)]);

    // identity record: the exact product identity plus the triple claims
    let identity_ok = check_identity_eq2(&t);
    let abs_a_ok = t.a.unsigned_abs() % 4 == 1;
    let pos_sum = (t.a.abs() + t.b).rem_euclid(4) == 1;
    let four_div_b = t.b % 4 == 0;
    let bicond_ok = pos_sum == four_div_b && four_div_b == (m % 8 == 1);
    let all_ok = identity_ok && abs_a_ok && bicond_ok;
    out.records.push(CaseRecord::Report(LawReport {
        law: Law::Eq2,
        params: triple_params.clone(),
        lhs: SymbolValue::from_sign(all_ok),
        rhs: SymbolValue::Plus,
        holds: all_ok,
    }));

    // derived symbol relation on the first admissible primes
    let mut found = 0usize;
    for p in prime_stream(PrimeRange::new(3, 1_000_000)) {
        if found == RELATION_PRIMES_PER_SAMPLE {
            break;
        }
        if p == m
            || jacobi(m as i64, p) != Ok(SymbolValue::Plus)
            || [t.a, t.b, t.c].iter().any(|&v| v.unsigned_abs() % p == 0)
        {
            continue;
        }
        found += 1;
        let mut params = triple_params.clone();
        params.insert("p".into(), p as i64);
        let result = symbol_surd(t.a, t.b, m, p).and_then(|lhs| {
            let rhs = jacobi(2, p)? * symbol_surd(t.a, t.c, m, p)?;
            Ok(LawReport {
                law: Law::Eq2,
                params: params.clone(),
                lhs,
                rhs,
                holds: lhs == rhs,
            })
        });
        out.push_result(Law::Eq2, params, result);
    }
    out
}

/// Seeded random-triple campaign: checks the exact product identity, the
/// triple invariants and the derived symbol relation on `sample_count`
/// reproducibly sampled primes m ≡ 1 mod 4.
///
/// Randomness is a ChaCha8 stream keyed by the 64-bit seed, so equal seeds
/// give byte-identical reports.
pub fn campaign_identities(sample_count: u64, seed: u64) -> CampaignReport {
    let started = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let ms: Vec<u64> = (0..sample_count).map(|_| sample_prime_1mod4(&mut rng)).collect();
    let outcomes: Vec<TupleOutcome> = ms.par_iter().map(|&m| identities_tuple(m)).collect();
    let mut bounds = BTreeMap::new();
    bounds.insert("samples".to_string(), sample_count as i64);
    bounds.insert("seed".to_string(), seed as i64);
    assemble("identities", bounds, outcomes, started)
}

/// Output encodings for campaign reports and single law verdicts.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ReportFormat {
    Jsonl,
    Csv,
    Text,
}

impl std::str::FromStr for ReportFormat {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "jsonl" | "json" => Ok(ReportFormat::Jsonl),
            "csv" => Ok(ReportFormat::Csv),
            "text" => Ok(ReportFormat::Text),
            other => Err(Error::UnsupportedFormat(other.to_string())),
        }
    }
}

/// Serialize a campaign report.
///
/// JSONL: one object per case record, schema
/// `{"law", "params", "lhs", "rhs", "holds"}` (error records carry
/// `{"law", "params", "error"}`), integers in decimal, keys in fixed order.
/// CSV: one summary row per (law, m) or (law, p, q) group.
/// TEXT: human summary including wall time; the only format with timing.
pub fn serialize_report(
    report: &CampaignReport,
    format: ReportFormat,
    out: &mut dyn Write,
) -> Result<()> {
    match format {
        ReportFormat::Jsonl => {
            for rec in &report.records {
                let line = serde_json::to_string(rec)
                    .map_err(|e| Error::InternalAssertion(e.to_string()))?;
                writeln!(out, "{line}")?;
            }
        }
        ReportFormat::Csv => {
            writeln!(out, "campaign,law,params,cases_run,cases_held,counterexamples")?;
            for (key, tally) in csv_groups(report) {
                writeln!(
                    out,
                    "{},{},{},{},{},{}",
                    report.campaign, key.0, key.1, tally.0, tally.1, tally.2
                )?;
            }
        }
        ReportFormat::Text => {
            writeln!(out, "campaign: {}", report.campaign)?;
            let bounds = report
                .bounds
                .iter()
                .map(|(k, v)| format!("{k}={v}"))
                .collect::<Vec<_>>()
                .join(" ");
            writeln!(out, "bounds: {bounds}")?;
            writeln!(out, "cases_run: {}", report.cases_run)?;
            writeln!(out, "cases_held: {}", report.cases_held)?;
            writeln!(out, "counterexamples: {}", report.counterexamples.len())?;
            let excluded = report.errors.iter().filter(|e| e.excluded).count();
            writeln!(
                out,
                "errors: {} ({} excluded as degenerate)",
                report.errors.len(),
                excluded
            )?;
            writeln!(out, "edge_cases_p_divides_abc: {}", report.edge_cases)?;
            writeln!(out, "wall_time_secs: {:.3}", report.wall_time)?;
            for rec in &report.records {
                match rec {
                    CaseRecord::Report(r) if !r.holds => writeln!(out, "COUNTEREXAMPLE {r}")?,
                    CaseRecord::Error(e) if !e.excluded => {
                        writeln!(out, "ERROR {}: {}", e.law, e.error)?
                    }
                    CaseRecord::Error(e) => writeln!(out, "EXCLUDED {}: {}", e.law, e.error)?,
                    _ => {}
                }
            }
        }
    }
    Ok(())
}

type CsvKey = (Law, String);
type CsvTally = (u64, u64, u64);

fn csv_groups(report: &CampaignReport) -> Vec<(CsvKey, CsvTally)> {
    let mut groups: BTreeMap<(Law, Vec<i64>, String), CsvTally> = BTreeMap::new();
    for rec in &report.records {
        let params = rec.params();
        let (sort_key, summary) = match rec.law() {
            Law::Eq7 | Law::Eq8 | Law::Eq9 | Law::Chain => {
                let p = params.get("p").copied().unwrap_or(0);
                let q = params.get("q").copied().unwrap_or(0);
                (vec![p, q], format!("p={p};q={q}"))
            }
            Law::Eq3 => {
                let p = params.get("p").copied().unwrap_or(0);
                (vec![p], format!("p={p}"))
            }
            _ => {
                let m = params.get("m").copied().unwrap_or(0);
                (vec![m], format!("m={m}"))
            }
        };
        let entry = groups.entry((rec.law(), sort_key, summary)).or_default();
        entry.0 += 1;
        match rec {
            CaseRecord::Report(r) if r.holds => entry.1 += 1,
            CaseRecord::Report(_) => entry.2 += 1,
            CaseRecord::Error(e) if !e.excluded => entry.2 += 1,
            CaseRecord::Error(_) => {}
        }
    }
    groups
        .into_iter()
        .map(|((law, _, summary), tally)| ((law, summary), tally))
        .collect()
}

/// Run `f` on a dedicated thread pool with `jobs` workers; campaign output
/// does not depend on the worker count.
pub fn run_with_jobs<T: Send>(jobs: usize, f: impl FnOnce() -> T + Send) -> T {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs.max(1))
        .build()
        .expect("thread pool construction");
    pool.install(f)
}
