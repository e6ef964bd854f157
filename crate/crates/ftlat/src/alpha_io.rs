//! AlphaMatrix files: a 7-row lower-triangular CSV and a self-describing JSON.

use std::path::Path;

use ftlat_core::exrec::{AlphaMatrix, LocationType};
use serde::{Deserialize, Serialize};

use crate::{Error, SCHEMA_VERSION, TOOL_VERSION};

/// The published matrix, shipped as `data/alpha_paper.csv`.
pub const PAPER_CSV: &str = include_str!("../../../data/alpha_paper.csv");

/// Location count of the CNOT exRec that goes with the published matrix.
pub const PAPER_LOCATIONS: u64 = 791;

pub fn paper_alpha() -> AlphaMatrix {
    from_csv(PAPER_CSV).expect("shipped matrix parses")
}

pub fn type_names() -> Vec<&'static str> {
    LocationType::ALPHA.iter().map(|t| t.name()).collect()
}

pub fn to_csv(m: &AlphaMatrix) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    let mut header = vec!["type"];
    header.extend(type_names());
    w.write_record(&header).expect("in-memory write");
    for (i, t) in LocationType::ALPHA.iter().enumerate() {
        let mut row = vec![t.name().to_string()];
        for j in 0..7 {
            row.push(if j <= i { m.entries[i][j].to_string() } else { String::new() });
        }
        w.write_record(&row).expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("csv is utf-8")
}

pub fn from_csv(text: &str) -> Result<AlphaMatrix, Error> {
    let bad = |msg: String| Error::Alpha(msg);
    let mut r = csv::ReaderBuilder::new().has_headers(true).from_reader(text.as_bytes());
    let header = r.headers().map_err(|e| bad(e.to_string()))?.clone();
    let want: Vec<&str> = std::iter::once("type").chain(type_names()).collect();
    if header.iter().collect::<Vec<_>>() != want {
        return Err(bad(format!("header must be `{}`", want.join(","))));
    }
    let mut m = AlphaMatrix::default();
    let mut rows = 0;
    for (i, rec) in r.records().enumerate() {
        let rec = rec.map_err(|e| bad(e.to_string()))?;
        if i >= 7 {
            return Err(bad("more than 7 rows".into()));
        }
        if rec.get(0) != Some(want[i + 1]) {
            return Err(bad(format!("row {} must be `{}`", i + 1, want[i + 1])));
        }
        for j in 0..7 {
            let cell = rec.get(j + 1).unwrap_or("").trim();
            if j <= i {
                m.entries[i][j] =
                    cell.parse().map_err(|_| bad(format!("row {}, column {}: bad count `{cell}`", i + 1, j + 1)))?;
            } else if !cell.is_empty() {
                return Err(bad(format!("row {}, column {}: upper triangle must be blank", i + 1, j + 1)));
            }
        }
        rows += 1;
    }
    if rows != 7 {
        return Err(bad(format!("expected 7 rows, found {rows}")));
    }
    Ok(m)
}

/// JSON form of a matrix with its provenance.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlphaFile {
    pub schema_version: u32,
    pub tool_version: String,
    pub types: Vec<String>,
    /// Lower triangle, row `i` has `i + 1` entries.
    pub alpha: Vec<Vec<u64>>,
    pub total: u64,
    /// Location count per type, when the matrix came from a sweep.
    pub location_counts: Option<Vec<usize>>,
    pub location_total: Option<usize>,
}

impl AlphaFile {
    pub fn new(m: &AlphaMatrix, census: Option<[usize; 7]>) -> Self {
        Self {
            schema_version: SCHEMA_VERSION,
            tool_version: TOOL_VERSION.into(),
            types: type_names().into_iter().map(String::from).collect(),
            alpha: (0..7).map(|i| m.entries[i][..=i].to_vec()).collect(),
            total: m.total(),
            location_counts: census.map(|c| c.to_vec()),
            location_total: census.map(|c| c.iter().sum()),
        }
    }

    pub fn matrix(&self) -> Result<AlphaMatrix, Error> {
        if self.alpha.len() != 7 || self.alpha.iter().enumerate().any(|(i, r)| r.len() != i + 1) {
            return Err(Error::Alpha("alpha must be a 7-row lower triangle".into()));
        }
        let rows: Vec<&[u64]> = self.alpha.iter().map(Vec::as_slice).collect();
        let m = AlphaMatrix::from_lower(&rows);
        if m.total() != self.total {
            return Err(Error::Alpha(format!("total {} does not match the entries ({})", self.total, m.total())));
        }
        Ok(m)
    }
}

/// Reads a matrix from a `.json` or CSV file, with the location count if the
/// file records one.
pub fn read_alpha(path: &Path) -> Result<(AlphaMatrix, Option<u64>), Error> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Io(path.display().to_string(), e))?;
    if path.extension().is_some_and(|e| e == "json") {
        let f: AlphaFile = serde_json::from_str(&text).map_err(|e| Error::Alpha(e.to_string()))?;
        Ok((f.matrix()?, f.location_total.map(|n| n as u64)))
    } else {
        Ok((from_csv(&text)?, None))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn paper_matrix_round_trips() {
        let m = paper_alpha();
        assert_eq!(m.total(), 75_880);
        assert_eq!(m.get(7, 7), 4465);
        assert_eq!(to_csv(&m), PAPER_CSV);
        let j = AlphaFile::new(&m, None);
        let back: AlphaFile = serde_json::from_str(&serde_json::to_string(&j).unwrap()).unwrap();
        assert_eq!(back.matrix().unwrap(), m);
    }

    #[test]
    fn malformed_csv_is_rejected() {
        let upper = PAPER_CSV.replacen("prep_plus,114,,", "prep_plus,114,1,", 1);
        assert!(from_csv(&upper).is_err());
        let short: String = PAPER_CSV.lines().take(7).map(|l| format!("{l}\n")).collect();
        assert!(from_csv(&short).is_err());
        let neg = PAPER_CSV.replacen("0,160", "-1,160", 1);
        assert!(from_csv(&neg).is_err());
    }
}
