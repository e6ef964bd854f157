//! Machine-readable summaries and their text tables.

use std::fmt::Write as _;

use ftlat_core::exrec::{AlphaMatrix, LocationPolicy, LocationType, SingleFaultReport};
use ftlat_core::threshold::{LatencyReport, ThresholdReport};
use serde::Serialize;

use crate::{SCHEMA_VERSION, TOOL_VERSION};

/// Published thresholds, for side-by-side display.
pub const PUBLISHED_EQUAL_THRESHOLD: f64 = 1.3e-5;
pub const PUBLISHED_WEIGHTED_THRESHOLD: f64 = 2.02e-5;

/// One α entry that differs from the published matrix.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Deviation {
    pub i: usize,
    pub j: usize,
    pub type_i: String,
    pub type_j: String,
    pub published: u64,
    pub regenerated: u64,
    pub difference: i64,
    /// `difference / published`, absent when the published entry is 0.
    pub relative: Option<f64>,
}

pub fn deviations(regenerated: &AlphaMatrix, published: &AlphaMatrix) -> Vec<Deviation> {
    let mut out = Vec::new();
    for i in 1..=7 {
        for j in 1..=i {
            let (p, r) = (published.get(i, j), regenerated.get(i, j));
            if p != r {
                let difference = r as i64 - p as i64;
                out.push(Deviation {
                    i,
                    j,
                    type_i: LocationType::ALPHA[i - 1].name().into(),
                    type_j: LocationType::ALPHA[j - 1].name().into(),
                    published: p,
                    regenerated: r,
                    difference,
                    relative: (p != 0).then(|| difference as f64 / p as f64),
                });
            }
        }
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TypeCount {
    pub number: usize,
    pub name: String,
    pub count: usize,
}

pub fn type_counts(census: &[usize; 7]) -> Vec<TypeCount> {
    LocationType::ALPHA
        .iter()
        .zip(census)
        .map(|(t, &count)| TypeCount { number: t.number(), name: t.name().into(), count })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct MalignantSummary {
    pub schema_version: u32,
    pub tool_version: String,
    pub exrec: String,
    pub policy: LocationPolicy,
    pub locations: Vec<TypeCount>,
    pub location_total: usize,
    pub published_location_total: u64,
    pub single_faults_tried: usize,
    pub single_fault_failures: usize,
    pub pairs_examined: u64,
    pub malignant_pairs: u64,
    pub alpha: Vec<Vec<u64>>,
    pub published_total: u64,
    /// `(regenerated − published) / published` for the total.
    pub relative_total_deviation: f64,
    pub deviations: Vec<Deviation>,
}

impl MalignantSummary {
    pub fn new(
        policy: LocationPolicy,
        census: [usize; 7],
        singles: &SingleFaultReport,
        alpha: &AlphaMatrix,
        published: &AlphaMatrix,
        published_locations: u64,
    ) -> Self {
        let counted = census.iter().sum::<usize>() as u64;
        let total = alpha.total();
        let pt = published.total();
        Self {
            schema_version: SCHEMA_VERSION,
            tool_version: TOOL_VERSION.into(),
            exrec: "cnot".into(),
            policy,
            locations: type_counts(&census),
            location_total: census.iter().sum(),
            published_location_total: published_locations,
            single_faults_tried: singles.faults_tried,
            single_fault_failures: singles.failures.len(),
            pairs_examined: counted * counted.saturating_sub(1) / 2,
            malignant_pairs: total,
            alpha: (0..7).map(|i| alpha.entries[i][..=i].to_vec()).collect(),
            published_total: pt,
            relative_total_deviation: (total as f64 - pt as f64) / pt as f64,
            deviations: deviations(alpha, published),
        }
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "CNOT extended rectangle");
        let _ = writeln!(s, "locations by type:");
        for t in &self.locations {
            let _ = writeln!(s, "  {} {:<10} {:>5}", t.number, t.name, t.count);
        }
        let _ = writeln!(s, "total locations: {} (published {})", self.location_total, self.published_location_total);
        let _ = writeln!(s, "single faults tried: {}", self.single_faults_tried);
        let _ = writeln!(s, "single-fault failures: {}", self.single_fault_failures);
        let _ = writeln!(s, "pairs examined: {}", self.pairs_examined);
        let _ = writeln!(s, "malignant pairs: {}", self.malignant_pairs);
        let _ = writeln!(s, "alpha:");
        for row in &self.alpha {
            let cells: Vec<String> = row.iter().map(|v| format!("{v:>6}")).collect();
            let _ = writeln!(s, "  {}", cells.join(" "));
        }
        let _ = writeln!(
            s,
            "total vs published: {} vs {} ({:+.2}%)",
            self.malignant_pairs,
            self.published_total,
            100.0 * self.relative_total_deviation
        );
        let _ = writeln!(s, "entries differing from the published matrix: {}", self.deviations.len());
        s.push_str(&deviations_text(&self.deviations));
        s
    }
}

pub fn deviations_text(ds: &[Deviation]) -> String {
    let mut s = String::new();
    for d in ds {
        let rel = d.relative.map(|r| format!("{:+.1}%", 100.0 * r)).unwrap_or_else(|| "n/a".into());
        let _ = writeln!(
            s,
            "  a{}{} {:>9}/{:<9} published {:>6} regenerated {:>6} diff {:>+6} ({rel})",
            d.i, d.j, d.type_i, d.type_j, d.published, d.regenerated, d.difference
        );
    }
    s
}

pub fn deviations_csv(ds: &[Deviation]) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["i", "j", "type_i", "type_j", "published", "regenerated", "difference", "relative"])
        .expect("in-memory write");
    for d in ds {
        w.write_record([
            d.i.to_string(),
            d.j.to_string(),
            d.type_i.clone(),
            d.type_j.clone(),
            d.published.to_string(),
            d.regenerated.to_string(),
            d.difference.to_string(),
            d.relative.map(|r| r.to_string()).unwrap_or_default(),
        ])
        .expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("csv is utf-8")
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ThresholdOutput {
    pub schema_version: u32,
    pub tool_version: String,
    #[serde(flatten)]
    pub report: ThresholdReport,
    pub published_threshold_equal: f64,
    pub published_threshold_memory_tenth: f64,
}

impl ThresholdOutput {
    pub fn new(report: ThresholdReport) -> Self {
        Self {
            schema_version: SCHEMA_VERSION,
            tool_version: TOOL_VERSION.into(),
            report,
            published_threshold_equal: PUBLISHED_EQUAL_THRESHOLD,
            published_threshold_memory_tenth: PUBLISHED_WEIGHTED_THRESHOLD,
        }
    }

    pub fn to_text(&self) -> String {
        let r = &self.report;
        let mut s = String::new();
        let _ = writeln!(s, "alpha source: {}", r.alpha_source);
        let _ = writeln!(s, "A (sum of alpha): {}", r.a);
        let _ = writeln!(s, "locations: {}", r.location_count);
        let _ = writeln!(s, "B = C({}, 3): {}", r.location_count, r.b);
        let _ = writeln!(s, "A': {:.3}", r.a_prime);
        let _ = writeln!(
            s,
            "threshold, equal rates: {:.4e} (published {:.1e})",
            r.threshold_equal, self.published_threshold_equal
        );
        let _ = writeln!(s, "weights: {}", r.weights.join(" "));
        let _ = writeln!(s, "A_w: {}", r.a_weighted);
        let _ = writeln!(
            s,
            "threshold, weighted: {:.4e} (published {:.2e} for memory at 1/10)",
            r.threshold_weighted, self.published_threshold_memory_tenth
        );
        let _ = writeln!(s, "solver: {}", r.solver);
        let _ = writeln!(s, "logical rate at physical rate {:e}:", r.physical_rate);
        for l in &r.levels {
            let _ = writeln!(s, "  level {}: {:.4e}", l.level, l.rate);
        }
        s
    }

    pub fn to_csv(&self) -> String {
        let r = &self.report;
        let mut w = csv::Writer::from_writer(Vec::new());
        let rows: Vec<(&str, String)> = vec![
            ("alpha_source", r.alpha_source.clone()),
            ("a", r.a.to_string()),
            ("location_count", r.location_count.to_string()),
            ("b", r.b.to_string()),
            ("a_prime", r.a_prime.to_string()),
            ("threshold_equal", r.threshold_equal.to_string()),
            ("weights", r.weights.join(" ")),
            ("a_weighted", r.a_weighted.to_string()),
            ("threshold_weighted", r.threshold_weighted.to_string()),
            ("published_threshold_equal", self.published_threshold_equal.to_string()),
            ("published_threshold_memory_tenth", self.published_threshold_memory_tenth.to_string()),
        ];
        w.write_record(["quantity", "value"]).expect("in-memory write");
        for (k, v) in rows {
            w.write_record([k, v.as_str()]).expect("in-memory write");
        }
        String::from_utf8(w.into_inner().expect("in-memory flush")).expect("csv is utf-8")
    }
}

/// Latency table plus the ratio at each level up to `levels`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LatencyOutput {
    pub schema_version: u32,
    pub tool_version: String,
    #[serde(flatten)]
    pub report: LatencyReport,
    /// (16/35)^k for k = 0..=levels.
    pub ratios: Vec<f64>,
    /// Logical rates per level when an α source is given.
    pub logical: Option<ThresholdOutput>,
}

impl LatencyOutput {
    pub fn new(report: LatencyReport, logical: Option<ThresholdOutput>) -> Self {
        let r = report.rows[0].nine_qubit as f64 / report.rows[0].seven_qubit as f64;
        let ratios = (0..=report.levels).map(|k| r.powi(k as i32)).collect();
        Self { schema_version: SCHEMA_VERSION, tool_version: TOOL_VERSION.into(), report, ratios, logical }
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "1-Rec latency (time steps)");
        let _ = writeln!(s, "  {:<10} {:>8} {:>8}", "gate", "9-qubit", "7-qubit");
        for row in &self.report.rows {
            let _ = writeln!(s, "  {:<10} {:>8} {:>8}", row.gate, row.nine_qubit, row.seven_qubit);
        }
        let _ = writeln!(s, "CNOT latency ratio per level");
        for (k, r) in self.ratios.iter().enumerate() {
            let _ = writeln!(s, "  level {k}: {}", sig3(*r));
        }
        let _ = writeln!(s, "EC latency blowup at level {}: {}", self.report.levels, self.report.ec_blowup);
        if let Some(t) = &self.logical {
            let r = &t.report;
            let _ = writeln!(
                s,
                "logical rate at physical rate {:e} (threshold {:.4e}, alpha {}):",
                r.physical_rate, r.threshold_equal, r.alpha_source
            );
            for l in &r.levels {
                let _ = writeln!(s, "  level {}: {:.4e}", l.level, l.rate);
            }
        }
        s
    }

    pub fn to_csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(["level", "cnot_ratio"]).expect("in-memory write");
        for (k, r) in self.ratios.iter().enumerate() {
            w.write_record([k.to_string(), r.to_string()]).expect("in-memory write");
        }
        String::from_utf8(w.into_inner().expect("in-memory flush")).expect("csv is utf-8")
    }
}

/// Three significant figures without exponent: 0.457, 0.209, 0.0955.
pub fn sig3(x: f64) -> String {
    if x == 0.0 || !x.is_finite() {
        return format!("{x}");
    }
    let digits = 2 - x.abs().log10().floor() as i32;
    format!("{:.*}", digits.max(0) as usize, x)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn three_significant_figures() {
        assert_eq!(sig3(1.0), "1.00");
        assert_eq!(sig3(16.0 / 35.0), "0.457");
        assert_eq!(sig3((16.0f64 / 35.0).powi(2)), "0.209");
        assert_eq!(sig3((16.0f64 / 35.0).powi(3)), "0.0955");
    }

    #[test]
    fn identical_matrices_have_no_deviations() {
        let m = crate::alpha_io::paper_alpha();
        assert!(deviations(&m, &m).is_empty());
        let mut r = m;
        r.entries[1][0] = 3;
        let d = deviations(&r, &m);
        assert_eq!(d.len(), 1);
        assert_eq!((d[0].i, d[0].j, d[0].difference, d[0].relative), (2, 1, 3, None));
    }
}
