use std::fmt;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;
use std::time::Instant;

use serde::{Serialize, Serializer};
use serde_json::{json, Value};

use super::{check_generation_with, check_type_b_factorization_with, FactorCertificate, GenerationOptions};
use crate::weights::{descent_ok, ManifestEntry};
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Verdict {
    Pass,
    Fail,
    Error,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Pass => "pass",
            Verdict::Fail => "fail",
            Verdict::Error => "error",
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Outcome of one degree check.
#[derive(Clone, Debug)]
pub struct GenerationReport {
    pub instance: String,
    pub k: u64,
    pub d: u64,
    /// `dim R_k`.
    pub dim: usize,
    /// Rank of the products (type A) or number of split tableaux (type B).
    pub rank: usize,
    /// `(degree, number of zero-weight standard generators)` for each degree up to `d`.
    pub generators_used: Vec<(u64, usize)>,
    pub verdict: Verdict,
    /// Seconds.
    pub elapsed: f64,
    /// Largest degree of a split part actually needed (type B).
    pub max_part_degree: Option<u64>,
    pub witnesses: Option<Vec<FactorCertificate>>,
    pub error: Option<String>,
}

impl GenerationReport {
    pub fn new(instance: impl Into<String>, k: u64, d: u64, dim: usize, rank: usize) -> Self {
        GenerationReport {
            instance: instance.into(),
            k,
            d,
            dim,
            rank,
            generators_used: Vec::new(),
            verdict: if rank == dim { Verdict::Pass } else { Verdict::Fail },
            elapsed: 0.0,
            max_part_degree: None,
            witnesses: None,
            error: None,
        }
    }

    pub fn from_error(instance: impl Into<String>, k: u64, d: u64, err: &Error) -> Self {
        GenerationReport {
            verdict: Verdict::Error,
            error: Some(err.to_string()),
            ..GenerationReport::new(instance, k, d, 0, 0)
        }
    }

    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Pass
    }

    pub fn to_json(&self) -> Value {
        let mut v = json!({
            "instance": self.instance,
            "k": self.k,
            "d": self.d,
            "dim": self.dim,
            "rank": self.rank,
            "verdict": self.verdict.as_str(),
        });
        if let Some(w) = &self.witnesses {
            v["witnesses"] = Value::Array(w.iter().map(FactorCertificate::to_json).collect());
        }
        if let Some(e) = &self.error {
            v["error"] = json!(e);
        }
        v
    }
}

impl Serialize for GenerationReport {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_json().serialize(s)
    }
}

pub fn reports_json(reports: &[GenerationReport]) -> String {
    let v = Value::Array(reports.iter().map(GenerationReport::to_json).collect());
    serde_json::to_string_pretty(&v).expect("plain json")
}

const HEADER: [&str; 6] = ["instance", "k", "d", "dim", "rank", "verdict"];

fn cells(r: &GenerationReport) -> [String; 6] {
    [
        r.instance.clone(),
        r.k.to_string(),
        r.d.to_string(),
        r.dim.to_string(),
        r.rank.to_string(),
        r.verdict.to_string(),
    ]
}

/// Aligned text table, one row per report; errors follow the table.
pub fn format_table(reports: &[GenerationReport]) -> String {
    let rows: Vec<[String; 6]> = reports.iter().map(cells).collect();
    let mut w: Vec<usize> = HEADER.iter().map(|h| h.len()).collect();
    for r in &rows {
        for (i, c) in r.iter().enumerate() {
            w[i] = w[i].max(c.len());
        }
    }
    let line = |cs: Vec<&str>| -> String {
        let parts: Vec<String> = cs
            .iter()
            .enumerate()
            .map(|(i, c)| if i == 0 { format!("{c:<width$}", width = w[i]) } else { format!("{c:>width$}", width = w[i]) })
            .collect();
        parts.join("  ").trim_end().to_string() + "\n"
    };
    let mut out = line(HEADER.to_vec());
    for r in &rows {
        out += &line(r.iter().map(String::as_str).collect());
    }
    for r in reports {
        if let Some(e) = &r.error {
            out += &format!("{}: {e}\n", r.instance);
        }
    }
    out
}

pub fn format_csv(reports: &[GenerationReport]) -> String {
    let mut out = HEADER.join(",") + ",error\n";
    for r in reports {
        let mut cs = cells(r).to_vec();
        let e = r.error.clone().unwrap_or_default().replace('"', "\"\"");
        cs.push(if e.is_empty() { e } else { format!("\"{e}\"") });
        out += &(cs.join(",") + "\n");
    }
    out
}

fn run_entry_inner(e: &ManifestEntry, opts: &GenerationOptions) -> Result<GenerationReport> {
    let inst = e.instance()?;
    if !descent_ok(&inst) {
        return Err(Error::NoDescent(format!(
            "{} with multiple {} does not descend to the quotient",
            inst.label, inst.multiple
        )));
    }
    if inst.is_type_a() {
        check_generation_with(&inst, e.k, e.d, opts)
    } else {
        check_type_b_factorization_with(&inst, e.k, e.d, opts)
    }
}

/// One manifest entry; failures become error reports.
pub fn run_entry(e: &ManifestEntry, opts: &GenerationOptions) -> GenerationReport {
    let start = Instant::now();
    match run_entry_inner(e, opts) {
        Ok(r) => r,
        Err(err) => {
            log::error!("{}: {err}", e.label);
            let mut r = GenerationReport::from_error(e.label.clone(), e.k, e.d, &err);
            r.elapsed = start.elapsed().as_secs_f64();
            r
        }
    }
}

/// Runs every entry on up to `jobs` threads; reports come back in manifest order.
pub fn run_paper_suite(entries: &[ManifestEntry], jobs: usize) -> Vec<GenerationReport> {
    run_suite_with(entries, jobs, &GenerationOptions::default())
}

pub fn run_suite_with(entries: &[ManifestEntry], jobs: usize, opts: &GenerationOptions) -> Vec<GenerationReport> {
    let slots: Vec<Mutex<Option<GenerationReport>>> = entries.iter().map(|_| Mutex::new(None)).collect();
    let next = AtomicUsize::new(0);
    let workers = jobs.max(1).min(entries.len().max(1));
    std::thread::scope(|s| {
        for _ in 0..workers {
            s.spawn(|| loop {
                let i = next.fetch_add(1, Ordering::Relaxed);
                if i >= entries.len() {
                    break;
                }
                let r = run_entry(&entries[i], opts);
                log::info!("{}: {} in {:.2}s", r.instance, r.verdict, r.elapsed);
                *slots[i].lock().expect("no poisoning") = Some(r);
            });
        }
    });
    slots
        .into_iter()
        .map(|m| m.into_inner().expect("no poisoning").expect("every slot filled"))
        .collect()
}
