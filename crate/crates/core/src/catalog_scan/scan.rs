//! Exhaustive enumeration of slope diagrams for a fixed type of principal
//! isotropy group, filtered through the obstruction pipeline.

use std::collections::BTreeMap;
use std::time::Instant;

use num_integer::Integer;
use rayon::prelude::*;
use serde::Serialize;

use crate::diagram::{canonical_form, Diagram, IsotropySubgroup};
use crate::error::{Error, Result};
use crate::groups::{closure, FiniteSubgroup, SlopeCircle, DEFAULT_CAP};
use crate::obstruct::{run_pipeline_with, ObstructionReport, Overall, PipelineOptions};
use crate::qfield::{GroupElement, Quaternion};

use super::catalog::{recognize, Recognition};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum HType {
    #[serde(rename = "Q")]
    Q,
    #[serde(rename = "Z4Z2")]
    Z4Z2,
    #[serde(rename = "Z2")]
    Z2,
}

impl std::str::FromStr for HType {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "Q" | "Qtype" => Ok(HType::Q),
            "Z4Z2" | "Z4Z2type" => Ok(HType::Z4Z2),
            "Z2" | "Z2type" => Ok(HType::Z2),
            other => Err(Error::UnknownEntry(format!("unknown H type {other}; expected Q, Z4Z2 or Z2"))),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Survivor {
    pub diagram: String,
    pub label: String,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub aliases: Vec<String>,
    pub report: ObstructionReport,
}

#[derive(Clone, Debug, Serialize)]
pub struct Rejection {
    pub diagram: String,
    pub check: String,
    pub reason: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct ScanReport {
    pub bound: i64,
    pub h_type: HType,
    pub candidates_tested: usize,
    pub candidates_skipped: usize,
    pub survivors: Vec<Survivor>,
    pub rejection_counts: BTreeMap<String, usize>,
    pub rejections: Vec<Rejection>,
    pub elapsed_ms: u128,
}

impl ScanReport {
    pub fn unmatched(&self) -> impl Iterator<Item = &Survivor> {
        self.survivors.iter().filter(|s| s.label == "unmatched")
    }

    pub fn labels(&self) -> Vec<String> {
        self.survivors.iter().map(|s| s.label.clone()).collect()
    }
}

fn ge(l: Quaternion, r: Quaternion) -> GroupElement {
    GroupElement::new(l, r)
}

fn coprime_pairs(bound: i64, keep: impl Fn(i64, i64) -> bool) -> Vec<(i64, i64)> {
    (1..=bound)
        .flat_map(|p| (1..=bound).map(move |q| (p, q)))
        .filter(|&(p, q)| p.gcd(&q) == 1 && keep(p, q))
        .collect()
}

fn sign_for(p: i64, q: i64) -> Quaternion {
    if ((q - p) / 2) % 2 == 0 {
        Quaternion::one()
    } else {
        -Quaternion::one()
    }
}

/// Candidate diagrams in enumeration order.
pub fn candidates(bound: i64, h_type: HType) -> Result<Vec<Diagram>> {
    let odd = |p: i64, q: i64| p % 2 != 0 && q % 2 != 0;
    let mut out = Vec::new();
    match h_type {
        HType::Q => {
            let pairs = coprime_pairs(bound, odd);
            for (a, &(pm, qm)) in pairs.iter().enumerate() {
                for &(pp, qp) in &pairs[a..] {
                    let (i, j) = (Quaternion::i(), Quaternion::j());
                    let gens = [
                        ge(i.clone(), &sign_for(pm, qm) * &i),
                        ge(j.clone(), &sign_for(pp, qp) * &j),
                    ];
                    let h = closure(&gens, DEFAULT_CAP)?;
                    out.push(Diagram::circles(SlopeCircle::on_basis(0, pm, qm), SlopeCircle::on_basis(1, pp, qp), h));
                }
            }
        }
        HType::Z4Z2 => {
            let i = Quaternion::i();
            let h = closure(&[ge(i.clone(), i), ge(-Quaternion::one(), Quaternion::one())], DEFAULT_CAP)?;
            for (pm, qm) in coprime_pairs(bound, odd) {
                for (pp, qp) in coprime_pairs(bound, |p, q| (p + q) % 2 != 0) {
                    out.push(Diagram::circles(
                        SlopeCircle::on_basis(0, pm, qm),
                        SlopeCircle::on_basis(1, pp, qp),
                        h.clone(),
                    ));
                }
            }
        }
        HType::Z2 => {
            for (p, q) in coprime_pairs(bound, |_, _| true) {
                let sign = |n: i64| if n % 2 == 0 { Quaternion::one() } else { -Quaternion::one() };
                let h = closure(&[ge(sign(p), sign(q))], DEFAULT_CAP)?;
                out.push(Diagram::new(
                    IsotropySubgroup::DiagS3Dot { finite: h.clone() },
                    IsotropySubgroup::CircleDot { circle: SlopeCircle::on_basis(0, p, q), finite: FiniteSubgroup::trivial() },
                    h,
                ));
            }
        }
    }
    Ok(out)
}

fn label_of(rec: Option<Recognition>) -> (String, Vec<String>) {
    match rec {
        Some(r) => (r.label, r.aliases),
        None => ("unmatched".into(), Vec::new()),
    }
}

/// Sort key for survivors: family letter, then parameter.
fn label_key(label: &str) -> (String, i64) {
    match label.split_once('_') {
        Some((name, n)) => (name.to_string(), n.parse().unwrap_or(i64::MAX)),
        None => (label.to_string(), 0),
    }
}

pub fn scan(bound: i64, h_type: HType, jobs: Option<usize>) -> Result<ScanReport> {
    if bound < 1 {
        return Err(Error::UnknownEntry("bound must be at least 1".into()));
    }
    let start = Instant::now();
    let cands = candidates(bound, h_type)?;
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(n) = jobs {
        builder = builder.num_threads(n.max(1));
    }
    let pool = builder.build().map_err(|e| Error::InternalInconsistency(e.to_string()))?;
    let opts = PipelineOptions { stop_at_first_fail: true };
    let reports: Vec<ObstructionReport> = pool.install(|| cands.par_iter().map(|d| run_pipeline_with(d, opts)).collect());

    let mut rejections = Vec::new();
    let mut rejection_counts = BTreeMap::new();
    let mut kept: Vec<(&Diagram, ObstructionReport)> = Vec::new();
    for (d, r) in cands.iter().zip(reports) {
        match &r.overall {
            Overall::Survives => kept.push((d, r)),
            Overall::Rejected { check, reason } => {
                *rejection_counts.entry(check.clone()).or_insert(0) += 1;
                rejections.push(Rejection { diagram: d.to_string(), check: check.clone(), reason: reason.clone() });
            }
        }
    }

    let classified: Vec<Result<(Diagram, Option<Recognition>, ObstructionReport)>> = pool.install(|| {
        kept.into_par_iter()
            .map(|(d, r)| {
                let canon = canonical_form(d)?;
                let rec = recognize(&canon)?;
                Ok((canon, rec, r))
            })
            .collect()
    });
    let mut by_canon: Vec<(Diagram, Option<Recognition>, ObstructionReport)> = Vec::new();
    for item in classified {
        let (canon, rec, r) = item?;
        if !by_canon.iter().any(|(c, _, _)| *c == canon) {
            by_canon.push((canon, rec, r));
        }
    }
    let mut survivors: Vec<Survivor> = by_canon
        .into_iter()
        .map(|(canon, rec, report)| {
            let (label, aliases) = label_of(rec);
            Survivor { diagram: canon.to_string(), label, aliases, report }
        })
        .collect();
    survivors.sort_by(|a, b| label_key(&a.label).cmp(&label_key(&b.label)).then(a.diagram.cmp(&b.diagram)));

    Ok(ScanReport {
        bound,
        h_type,
        candidates_tested: cands.len(),
        candidates_skipped: 0,
        survivors,
        rejection_counts,
        rejections,
        elapsed_ms: start.elapsed().as_millis(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_q_scan() {
        let r = scan(3, HType::Q, Some(2)).unwrap();
        assert_eq!(r.labels(), vec!["B7".to_string(), "P_1".to_string()]);
        assert!(r.rejections.iter().all(|x| !x.check.is_empty()));
    }
}
