//! The physical qubit grid and schedules of parallel operations on it.

mod builtin;
mod compose;
mod render;
mod track;
mod validate;

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

pub use builtin::{appendix_prep0, builtin, BUILTIN_NAMES};
pub use compose::{compose, ec_pair, one_rec, parallel};
pub use render::render;
pub use track::{Occupancy, StepTrace, Tracker};
pub use validate::{has_ec_structure, validate, Rule, ValidationReport, Violation};

use crate::error::Error;

/// A lattice position, 1-indexed.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Site {
    pub row: u8,
    pub col: u8,
}

impl Site {
    pub const fn new(row: u8, col: u8) -> Self {
        Self { row, col }
    }

    pub fn is_adjacent(self, other: Site) -> bool {
        self.row.abs_diff(other.row) as u16 + self.col.abs_diff(other.col) as u16 == 1
    }

    pub fn translate(self, dr: i16, dc: i16) -> Site {
        Site::new((self.row as i16 + dr) as u8, (self.col as i16 + dc) as u8)
    }

    pub fn transpose(self) -> Site {
        Site::new(self.col, self.row)
    }
}

impl fmt::Display for Site {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.row, self.col)
    }
}

/// A qubit name: data `d<k>` or ancilla `a<k>`, both 1-indexed.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub enum Label {
    Data(u16),
    Ancilla(u16),
}

impl Label {
    pub fn is_data(self) -> bool {
        matches!(self, Label::Data(_))
    }

    pub fn index(self) -> u16 {
        match self {
            Label::Data(k) | Label::Ancilla(k) => k,
        }
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Label::Data(k) => write!(f, "d{k}"),
            Label::Ancilla(k) => write!(f, "a{k}"),
        }
    }
}

impl FromStr for Label {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        let bad = || Error::InvalidOp(alloc::format!("bad qubit label `{s}`"));
        let (head, digits) = s.split_at_checked(1).ok_or_else(bad)?;
        if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
            return Err(bad());
        }
        let k: u16 = digits.parse().map_err(|_| bad())?;
        if k == 0 {
            return Err(bad());
        }
        match head {
            "d" => Ok(Label::Data(k)),
            "a" => Ok(Label::Ancilla(k)),
            _ => Err(bad()),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub enum OpKind {
    PrepX,
    PrepZ,
    Hadamard,
    Cnot,
    Swap,
    MeasX,
    MeasZ,
}

impl OpKind {
    pub const ALL: [OpKind; 7] = [
        OpKind::PrepX,
        OpKind::PrepZ,
        OpKind::Hadamard,
        OpKind::Cnot,
        OpKind::Swap,
        OpKind::MeasX,
        OpKind::MeasZ,
    ];

    pub fn arity(self) -> usize {
        match self {
            OpKind::Cnot | OpKind::Swap => 2,
            _ => 1,
        }
    }

    pub fn is_prep(self) -> bool {
        matches!(self, OpKind::PrepX | OpKind::PrepZ)
    }

    pub fn is_meas(self) -> bool {
        matches!(self, OpKind::MeasX | OpKind::MeasZ)
    }

    /// Mnemonic used by the schedule file format.
    pub fn mnemonic(self) -> &'static str {
        match self {
            OpKind::PrepX => "PX",
            OpKind::PrepZ => "PZ",
            OpKind::Hadamard => "H",
            OpKind::Cnot => "CNOT",
            OpKind::Swap => "SWAP",
            OpKind::MeasX => "MX",
            OpKind::MeasZ => "MZ",
        }
    }

    pub fn from_mnemonic(s: &str) -> Option<Self> {
        OpKind::ALL.into_iter().find(|k| k.mnemonic() == s)
    }
}

/// One operation. Two-site ops list control then target (CNOT) or either
/// order (SWAP). Preparations carry the name of the qubit they create.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct LatticeOp {
    pub kind: OpKind,
    pub a: Site,
    pub b: Option<Site>,
    pub label: Option<Label>,
}

impl LatticeOp {
    pub fn prep_x(at: Site, label: Label) -> Self {
        Self { kind: OpKind::PrepX, a: at, b: None, label: Some(label) }
    }

    pub fn prep_z(at: Site, label: Label) -> Self {
        Self { kind: OpKind::PrepZ, a: at, b: None, label: Some(label) }
    }

    pub fn hadamard(at: Site) -> Self {
        Self { kind: OpKind::Hadamard, a: at, b: None, label: None }
    }

    pub fn meas_x(at: Site) -> Self {
        Self { kind: OpKind::MeasX, a: at, b: None, label: None }
    }

    pub fn meas_z(at: Site) -> Self {
        Self { kind: OpKind::MeasZ, a: at, b: None, label: None }
    }

    pub fn cnot(control: Site, target: Site) -> Self {
        Self { kind: OpKind::Cnot, a: control, b: Some(target), label: None }
    }

    pub fn swap(p: Site, q: Site) -> Self {
        Self { kind: OpKind::Swap, a: p, b: Some(q), label: None }
    }

    pub fn sites(&self) -> impl Iterator<Item = Site> + '_ {
        core::iter::once(self.a).chain(self.b)
    }

    fn map_sites(mut self, f: impl Fn(Site) -> Site) -> Self {
        self.a = f(self.a);
        self.b = self.b.map(f);
        self
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct TimeStep {
    pub ops: Vec<LatticeOp>,
}

impl TimeStep {
    pub fn new(ops: Vec<LatticeOp>) -> Self {
        Self { ops }
    }
}

/// A named set of measured labels whose outcome product is one classical bit.
#[derive(Clone, Debug, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Parity {
    pub name: String,
    pub labels: Vec<Label>,
}

/// A contiguous run of steps that came from one composed part.
#[derive(Clone, Debug, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Segment {
    pub name: String,
    pub start: usize,
    pub end: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Schedule {
    pub name: String,
    pub rows: u8,
    pub cols: u8,
    pub steps: Vec<TimeStep>,
    /// Home site of each data qubit, ordered by data index.
    pub data_home: Vec<(Label, Site)>,
    /// Syndrome bits in groups of four (S1..S4) per extracted block.
    pub syndrome_map: Vec<Parity>,
    /// Acceptance parities that must read +1 for a preparation to be kept.
    pub checks: Vec<Parity>,
    pub segments: Vec<Segment>,
}

/// Home sites of one 3×3 block: rows and columns {2, 4, 6} of a 7×7 tile.
pub fn block_homes(first_data: u16, col_offset: u8) -> Vec<(Label, Site)> {
    (0..9u16)
        .map(|k| {
            let (r, c) = (k / 3, k % 3);
            (Label::Data(first_data + k), Site::new(2 + 2 * r as u8, 2 + 2 * c as u8 + col_offset))
        })
        .collect()
}

impl Schedule {
    pub fn new(name: &str, rows: u8, cols: u8, data_home: Vec<(Label, Site)>) -> Self {
        Self {
            name: name.into(),
            rows,
            cols,
            steps: Vec::new(),
            data_home,
            syndrome_map: Vec::new(),
            checks: Vec::new(),
            segments: Vec::new(),
        }
    }

    /// Number of time steps.
    pub fn latency(&self) -> usize {
        self.steps.len()
    }

    pub fn contains(&self, s: Site) -> bool {
        (1..=self.rows).contains(&s.row) && (1..=self.cols).contains(&s.col)
    }

    pub fn site_index(&self, s: Site) -> usize {
        (s.row as usize - 1) * self.cols as usize + (s.col as usize - 1)
    }

    pub fn site_at(&self, index: usize) -> Site {
        Site::new((index / self.cols as usize) as u8 + 1, (index % self.cols as usize) as u8 + 1)
    }

    pub fn site_count(&self) -> usize {
        self.rows as usize * self.cols as usize
    }

    pub fn home_of(&self, label: Label) -> Option<Site> {
        self.data_home.iter().find(|(l, _)| *l == label).map(|&(_, s)| s)
    }

    /// Data labels this schedule prepares itself (so they start dead).
    pub fn prepared_data(&self) -> Vec<Label> {
        let mut out: Vec<Label> = self
            .steps
            .iter()
            .flat_map(|st| &st.ops)
            .filter(|op| op.kind.is_prep())
            .filter_map(|op| op.label)
            .filter(|l| l.is_data())
            .collect();
        out.sort();
        out.dedup();
        out
    }

    /// Every ancilla label introduced by a preparation.
    pub fn ancilla_labels(&self) -> Vec<Label> {
        let mut out: Vec<Label> = self
            .steps
            .iter()
            .flat_map(|st| &st.ops)
            .filter_map(|op| op.label)
            .filter(|l| !l.is_data())
            .collect();
        out.sort();
        out.dedup();
        out
    }

    /// Moves every site by `(dr, dc)` and grows the grid to `rows × cols`.
    pub fn translate(&self, dr: i16, dc: i16, rows: u8, cols: u8) -> Schedule {
        let mut out = self.clone();
        out.rows = rows;
        out.cols = cols;
        for st in &mut out.steps {
            for op in &mut st.ops {
                *op = op.map_sites(|s| s.translate(dr, dc));
            }
        }
        for (_, s) in &mut out.data_home {
            *s = s.translate(dr, dc);
        }
        out
    }

    /// Mirrors the schedule across the main diagonal.
    pub fn transpose(&self) -> Schedule {
        let mut out = self.clone();
        out.rows = self.cols;
        out.cols = self.rows;
        for st in &mut out.steps {
            for op in &mut st.ops {
                *op = op.map_sites(Site::transpose);
            }
        }
        for (_, s) in &mut out.data_home {
            *s = s.transpose();
        }
        out
    }

    /// Applies `f` to every qubit label, including syndrome and check maps.
    pub fn relabel(&self, f: impl Fn(Label) -> Label) -> Schedule {
        let mut out = self.clone();
        for st in &mut out.steps {
            for op in &mut st.ops {
                op.label = op.label.map(&f);
            }
        }
        for (l, _) in &mut out.data_home {
            *l = f(*l);
        }
        for p in out.syndrome_map.iter_mut().chain(out.checks.iter_mut()) {
            for l in &mut p.labels {
                *l = f(*l);
            }
        }
        out
    }

    /// Shifts data indices by `data` and ancilla indices by `ancilla`.
    pub fn offset_labels(&self, data: u16, ancilla: u16) -> Schedule {
        self.relabel(|l| match l {
            Label::Data(k) => Label::Data(k + data),
            Label::Ancilla(k) => Label::Ancilla(k + ancilla),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;

    #[test]
    fn adjacency_is_four_neighbourhood() {
        let s = Site::new(3, 3);
        assert!(s.is_adjacent(Site::new(3, 4)));
        assert!(s.is_adjacent(Site::new(2, 3)));
        assert!(!s.is_adjacent(Site::new(4, 4)));
        assert!(!s.is_adjacent(s));
        assert!(!s.is_adjacent(Site::new(3, 5)));
    }

    #[test]
    fn label_round_trip() {
        for t in ["d1", "a27", "d18"] {
            assert_eq!(t.parse::<Label>().unwrap().to_string(), t);
        }
        for t in ["", "d", "a0", "x1", "d-1", "dd"] {
            assert!(t.parse::<Label>().is_err(), "{t}");
        }
    }

    #[test]
    fn block_homes_layout() {
        let h = block_homes(1, 0);
        assert_eq!(h[0], (Label::Data(1), Site::new(2, 2)));
        assert_eq!(h[1], (Label::Data(2), Site::new(2, 4)));
        assert_eq!(h[3], (Label::Data(4), Site::new(4, 2)));
        assert_eq!(h[8], (Label::Data(9), Site::new(6, 6)));
    }
}
