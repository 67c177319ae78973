//! Machine-readable run reports and their JSON / markdown renderings.

use std::collections::BTreeMap;
use std::fmt::Write;

use serde::{Deserialize, Serialize};

use osserman_core::geometry::Mismatch;
use osserman_core::jordan::{Evaluation, NilpotencyReport, Origin, OssermanVerdict, Status};
use osserman_core::{Causal, Rational, Signature};

use crate::config::{OutputFormat, RunConfig};

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default)]
pub struct Report {
    pub config: Option<RunConfig>,
    pub verdicts: Vec<VerdictRow>,
    pub witnesses: Vec<WitnessRecord>,
    pub signatures: Vec<SignatureRow>,
    pub symmetry: Option<SymmetryRow>,
    pub christoffel: Option<ChristoffelRow>,
    pub realization: Vec<PointRow>,
    pub expectations: Option<Expectations>,
    pub errors: Vec<String>,
    pub timing: Timing,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ObservedPartition {
    pub partition: String,
    pub ranks: Vec<usize>,
    pub count: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerdictRow {
    pub s: usize,
    pub causal: Causal,
    pub status: Status,
    pub partition: Option<String>,
    pub probes: usize,
    pub samples: usize,
    pub sites: usize,
    pub max_nilpotency: usize,
    /// nilpotency order -> number of directions
    pub nilpotency_orders: BTreeMap<usize, usize>,
    pub observed: Vec<ObservedPartition>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessVector {
    pub origin: Origin,
    pub site: usize,
    pub base_point: Option<Vec<Rational>>,
    pub vector: Vec<Rational>,
    pub ranks: Vec<usize>,
    pub partition: String,
    pub nilpotency_order: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessRecord {
    pub causal: Causal,
    pub first: WitnessVector,
    pub second: WitnessVector,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SignatureRow {
    pub site: usize,
    pub base_point: Option<Vec<Rational>>,
    pub negatives: usize,
    pub positives: usize,
    pub zeros: usize,
    pub determinant: Rational,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SymmetryRow {
    pub passed: bool,
    pub total_violations: usize,
    /// First few violations, human readable.
    pub violations: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChristoffelRow {
    pub passed: bool,
    pub mismatches: Vec<[usize; 3]>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PointRow {
    pub point: Vec<Rational>,
    pub passed: bool,
    pub pattern_mismatches: Vec<Mismatch>,
    pub symmetry_violations: usize,
    pub r1_violations: usize,
    pub raised_index_violations: usize,
    pub reduced_formula_mismatches: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Expectations {
    pub profile: String,
    pub met: bool,
    pub failures: Vec<String>,
}

/// Deterministic work counters. Wall-clock time goes to stderr only, so that
/// identical invocations produce identical reports.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default)]
pub struct Timing {
    pub jacobi_evaluations: usize,
    pub curvature_points: usize,
}

pub const MAX_LISTED: usize = 20;

pub fn signature_row(site: usize, base_point: Option<Vec<Rational>>, sig: Signature, det: Rational) -> SignatureRow {
    SignatureRow {
        site,
        base_point,
        negatives: sig.negatives,
        positives: sig.positives,
        zeros: sig.zeros,
        determinant: det,
    }
}

pub fn witness_vector(e: &Evaluation, base_points: &[Option<Vec<Rational>>]) -> WitnessVector {
    WitnessVector {
        origin: e.origin,
        site: e.site,
        base_point: base_points.get(e.site).cloned().flatten(),
        vector: e.vector.clone(),
        ranks: e.ranks.ranks.clone(),
        partition: e.partition.to_string(),
        nilpotency_order: e.nilpotency_order(),
    }
}

pub fn verdict_row(
    s: usize,
    sites: usize,
    verdict: &OssermanVerdict,
    nilpotency: &NilpotencyReport,
    evaluations: &[Evaluation],
) -> VerdictRow {
    let mut orders = BTreeMap::new();
    for &o in &nilpotency.orders {
        *orders.entry(o).or_insert(0) += 1;
    }
    let mut ranks_of = BTreeMap::new();
    for e in evaluations {
        ranks_of.entry(e.partition.clone()).or_insert_with(|| e.ranks.ranks.clone());
    }
    VerdictRow {
        s,
        causal: verdict.causal,
        status: verdict.status,
        partition: verdict.partition.as_ref().map(ToString::to_string),
        probes: verdict.probes,
        samples: verdict.samples,
        sites,
        max_nilpotency: nilpotency.max_order,
        nilpotency_orders: orders,
        observed: verdict
            .observed
            .iter()
            .map(|(p, count)| ObservedPartition {
                partition: p.to_string(),
                ranks: ranks_of.get(p).cloned().unwrap_or_default(),
                count: *count,
            })
            .collect(),
    }
}

impl Report {
    pub fn expectations_met(&self) -> bool {
        self.errors.is_empty() && self.expectations.as_ref().is_none_or(|e| e.met)
    }

    pub fn render(&self, format: OutputFormat) -> String {
        match format {
            OutputFormat::Json => {
                let mut s = serde_json::to_string_pretty(self).expect("report serializes");
                s.push('\n');
                s
            }
            OutputFormat::Markdown => self.markdown(),
        }
    }

    fn markdown(&self) -> String {
        let mut out = String::from("# osserman report\n");
        if let Some(c) = &self.config {
            let family = c.resolved_family();
            let _ = writeln!(
                out,
                "\nfamily `{family}`, s = {}, samples = {}, points = {}, seed = {}, bound = {}",
                c.s, c.samples, c.points, c.seed, c.bound
            );
        }
        let empty = self.verdicts.is_empty()
            && self.signatures.is_empty()
            && self.symmetry.is_none()
            && self.realization.is_empty()
            && self.errors.is_empty();
        if empty {
            out.push_str("\n_No results._\n");
            return out;
        }
        if !self.verdicts.is_empty() {
            out.push_str("\n## Jordan Osserman verdicts\n\n");
            out.push_str("| s | causal | status | partition | max order | probes | samples | sites |\n");
            out.push_str("|---|---|---|---|---|---|---|---|\n");
            for v in &self.verdicts {
                let _ = writeln!(
                    out,
                    "| {} | {} | {} | {} | {} | {} | {} | {} |",
                    v.s,
                    v.causal,
                    v.status,
                    v.partition.as_deref().unwrap_or("-"),
                    v.max_nilpotency,
                    v.probes,
                    v.samples,
                    v.sites
                );
            }
        }
        if !self.witnesses.is_empty() {
            out.push_str("\n## Witnesses\n\n");
            out.push_str("| causal | vector | site | ranks | partition |\n|---|---|---|---|---|\n");
            for w in &self.witnesses {
                for v in [&w.first, &w.second] {
                    let _ = writeln!(
                        out,
                        "| {} | {} | {} | {:?} | {} |",
                        w.causal,
                        join(&v.vector),
                        v.site,
                        v.ranks,
                        v.partition
                    );
                }
            }
        }
        if !self.signatures.is_empty() {
            let ok = |r: &SignatureRow| (r.negatives, r.positives, r.zeros);
            let mut distinct: Vec<(usize, usize, usize)> = self.signatures.iter().map(ok).collect();
            distinct.sort_unstable();
            distinct.dedup();
            let dets: Vec<String> = {
                let mut d: Vec<String> = self.signatures.iter().map(|r| r.determinant.to_string()).collect();
                d.sort();
                d.dedup();
                d
            };
            out.push_str("\n## Signature\n\n");
            for (n, p, z) in distinct {
                let _ = writeln!(out, "- ({n},{p}) with {z} null directions");
            }
            let _ = writeln!(out, "- determinants: {}", dets.join(", "));
            let _ = writeln!(out, "- sites: {}", self.signatures.len());
        }
        if let Some(sym) = &self.symmetry {
            out.push_str("\n## Curvature identities\n\n");
            let _ = writeln!(
                out,
                "{} ({} violations)",
                if sym.passed { "pass" } else { "FAIL" },
                sym.total_violations
            );
            for v in &sym.violations {
                let _ = writeln!(out, "- {v}");
            }
        }
        if let Some(c) = &self.christoffel {
            out.push_str("\n## Christoffel closed form\n\n");
            let _ = writeln!(
                out,
                "{} ({} mismatching symbols)",
                if c.passed { "pass" } else { "FAIL" },
                c.mismatches.len()
            );
        }
        if !self.realization.is_empty() {
            out.push_str("\n## Realization\n\n");
            out.push_str("| point | result | pattern | identities | raised | reduced |\n|---|---|---|---|---|---|\n");
            for p in &self.realization {
                let _ = writeln!(
                    out,
                    "| {} | {} | {} | {} | {} | {} |",
                    join(&p.point),
                    if p.passed { "pass" } else { "FAIL" },
                    p.pattern_mismatches.len(),
                    p.symmetry_violations + p.r1_violations,
                    p.raised_index_violations,
                    p.reduced_formula_mismatches
                );
            }
        }
        if let Some(e) = &self.expectations {
            let _ = writeln!(
                out,
                "\n## Expectations\n\nprofile `{}`: {}",
                e.profile,
                if e.met { "met" } else { "NOT met" }
            );
            for f in &e.failures {
                let _ = writeln!(out, "- {f}");
            }
        }
        if !self.errors.is_empty() {
            out.push_str("\n## Errors\n\n");
            for e in &self.errors {
                let _ = writeln!(out, "- {e}");
            }
        }
        out
    }
}

fn join(v: &[Rational]) -> String {
    let parts: Vec<String> = v.iter().map(ToString::to_string).collect();
    format!("({})", parts.join(","))
}
