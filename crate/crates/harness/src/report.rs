//! Experiment reports and their CSV and JSON emitters.

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};

use iclaws_core::fractional_bv::ScanPoint;
use iclaws_core::SolutionField;
use serde::Serialize;

use crate::config::ExperimentId;
use crate::Result;

/// One measured quantity and its verdict.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ReportRow {
    pub experiment: String,
    pub case: String,
    pub quantity: String,
    pub value: f64,
    /// Threshold or fitted bound the value is compared against.
    pub bound: Option<f64>,
    pub pass: bool,
    pub seed: u64,
    pub resolution: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DecayRow {
    pub t: f64,
    pub tvs: f64,
    pub bound: f64,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentReport {
    pub id: ExperimentId,
    pub seed: u64,
    pub rows: Vec<ReportRow>,
    /// Fitted constants and slopes, keyed `case/name`.
    pub fitted: BTreeMap<String, f64>,
    pub scans: Vec<(String, Vec<ScanPoint>)>,
    pub decay: Vec<(String, Vec<DecayRow>)>,
}

#[derive(Serialize)]
struct Summary<'a> {
    experiment: &'a str,
    seed: u64,
    pass: bool,
    rows: usize,
    failed: Vec<&'a ReportRow>,
    fitted: &'a BTreeMap<String, f64>,
}

impl ExperimentReport {
    pub fn new(id: ExperimentId, seed: u64) -> Self {
        Self {
            id,
            seed,
            rows: Vec::new(),
            fitted: BTreeMap::new(),
            scans: Vec::new(),
            decay: Vec::new(),
        }
    }

    /// Appends a row and returns its pass flag.
    pub fn push(
        &mut self,
        case: &str,
        quantity: &str,
        value: f64,
        bound: Option<f64>,
        pass: bool,
        resolution: usize,
    ) -> bool {
        self.rows.push(ReportRow {
            experiment: self.id.to_string(),
            case: case.to_string(),
            quantity: quantity.to_string(),
            value,
            bound,
            pass,
            seed: self.seed,
            resolution,
        });
        pass
    }

    /// Row passing when `value <= bound`.
    pub fn at_most(&mut self, case: &str, quantity: &str, value: f64, bound: f64, resolution: usize) -> bool {
        self.push(case, quantity, value, Some(bound), value <= bound, resolution)
    }

    /// Row passing when `value >= bound`.
    pub fn at_least(&mut self, case: &str, quantity: &str, value: f64, bound: f64, resolution: usize) -> bool {
        self.push(case, quantity, value, Some(bound), value >= bound, resolution)
    }

    pub fn fit(&mut self, case: &str, name: &str, value: f64) {
        self.fitted.insert(format!("{case}/{name}"), value);
    }

    pub fn pass(&self) -> bool {
        self.rows.iter().all(|r| r.pass)
    }

    pub fn failed(&self) -> impl Iterator<Item = &ReportRow> {
        self.rows.iter().filter(|r| !r.pass)
    }

    pub fn merge(&mut self, other: ExperimentReport) {
        self.rows.extend(other.rows);
        self.fitted.extend(other.fitted);
        self.scans.extend(other.scans);
        self.decay.extend(other.decay);
    }

    pub fn rows_csv(&self) -> Result<String> {
        let mut w = csv::Writer::from_writer(Vec::new());
        for r in &self.rows {
            w.serialize(r)?;
        }
        Ok(into_string(w))
    }

    pub fn summary_json(&self) -> Result<String> {
        let summary = Summary {
            experiment: self.id.as_str(),
            seed: self.seed,
            pass: self.pass(),
            rows: self.rows.len(),
            failed: self.failed().collect(),
            fitted: &self.fitted,
        };
        Ok(serde_json::to_string_pretty(&summary)?)
    }

    /// Writes `<id>.csv`, `<id>_summary.json` and the per-case scan and
    /// decay tables into `dir`; returns the written paths.
    pub fn write(&self, dir: &Path) -> Result<Vec<PathBuf>> {
        fs::create_dir_all(dir)?;
        let id = self.id.as_str();
        let mut written = Vec::new();
        let mut put = |name: String, text: String| -> Result<()> {
            let path = dir.join(name);
            fs::write(&path, text)?;
            written.push(path);
            Ok(())
        };
        put(format!("{id}.csv"), self.rows_csv()?)?;
        put(format!("{id}_summary.json"), self.summary_json()?)?;
        for (case, scan) in &self.scans {
            put(format!("{id}_{case}_scan.csv"), scan_csv(scan)?)?;
        }
        for (case, rows) in &self.decay {
            let mut w = csv::Writer::from_writer(Vec::new());
            for r in rows {
                w.serialize(r)?;
            }
            put(format!("{id}_{case}_decay.csv"), into_string(w))?;
        }
        Ok(written)
    }
}

fn into_string(w: csv::Writer<Vec<u8>>) -> String {
    String::from_utf8(w.into_inner().expect("in-memory writer")).expect("csv output is utf-8")
}

pub fn scan_csv(scan: &[ScanPoint]) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["n", "s", "tvs"])?;
    for p in scan {
        w.write_record([p.n.to_string(), p.s.to_string(), p.tvs.to_string()])?;
    }
    Ok(into_string(w))
}

/// Profile table `x,u,case,z,tau`; `tau` is empty for direct points.
pub fn profile_csv(field: &SolutionField) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["x", "u", "case", "z", "tau"])?;
    for p in &field.points {
        let tau = p.tau.map(|t| t.to_string()).unwrap_or_default();
        w.write_record([
            p.x.to_string(),
            p.u.to_string(),
            p.case_tag.to_string(),
            p.z.to_string(),
            tau,
        ])?;
    }
    Ok(into_string(w))
}

/// Reads `(x, u)` columns from a CSV with a header containing `x` and `u`.
pub fn read_profile(text: &str) -> Result<(Vec<f64>, Vec<f64>)> {
    let mut r = csv::Reader::from_reader(text.as_bytes());
    let headers = r.headers()?.clone();
    let col = |name: &str| {
        headers
            .iter()
            .position(|h| h.trim() == name)
            .ok_or_else(|| crate::HarnessError::Config(format!("profile CSV has no {name:?} column")))
    };
    let (ix, iu) = (col("x")?, col("u")?);
    let mut xs = Vec::new();
    let mut us = Vec::new();
    for record in r.records() {
        let record = record?;
        let num = |i: usize| -> Result<f64> {
            record[i]
                .trim()
                .parse::<f64>()
                .map_err(|e| crate::HarnessError::Config(format!("bad number {:?}: {e}", &record[i])))
        };
        xs.push(num(ix)?);
        us.push(num(iu)?);
    }
    Ok((xs, us))
}

#[cfg(test)]
mod tests {
    use super::*;
    use iclaws_core::explicit::Evaluator;
    use iclaws_core::{ConvexFlux, InitialData, InterfacePair};

    #[test]
    fn rows_carry_seed_and_resolution() {
        let mut r = ExperimentReport::new(ExperimentId::E5, 11);
        assert!(r.at_most("a", "l1_error", 0.5, 1.0, 512));
        assert!(!r.at_least("a", "ratio", 1.0, 2.0, 1024));
        r.fit("a", "slope", -0.9);
        assert!(!r.pass());
        let csv = r.rows_csv().unwrap();
        let mut lines = csv.lines();
        assert_eq!(
            lines.next().unwrap(),
            "experiment,case,quantity,value,bound,pass,seed,resolution"
        );
        assert_eq!(lines.next().unwrap(), "e5,a,l1_error,0.5,1.0,true,11,512");
        let json: serde_json::Value = serde_json::from_str(&r.summary_json().unwrap()).unwrap();
        assert_eq!(json["pass"], false);
        assert_eq!(json["failed"][0]["quantity"], "ratio");
        assert_eq!(json["fitted"]["a/slope"], -0.9);
    }

    #[test]
    fn profile_round_trip() {
        let h = ConvexFlux::quadratic(0.0, 0.0).unwrap();
        let ev = Evaluator::new(InterfacePair::new(h.clone(), h), &InitialData::riemann(0.0, 1.0)).unwrap();
        let field = ev.sample_profile(1.0, &[-0.5, 0.25, 0.5, 2.0]).unwrap();
        let text = profile_csv(&field).unwrap();
        assert!(text.starts_with("x,u,case,z,tau\n"));
        let (xs, us) = read_profile(&text).unwrap();
        assert_eq!(xs, field.xs());
        assert_eq!(us, field.us());
        assert!(read_profile("a,b\n1,2\n").is_err());
    }
}
