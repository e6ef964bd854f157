//! Fault locations, the CNOT extended rectangle and malignant-pair counting.

mod engine;
pub mod naive;

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::ops::Range;

pub use engine::{malignant_matrix, Effect, Engine, SingleFaultReport};

use crate::lattice::{compose, ec_pair, validate, OpKind, Schedule, Site, Tracker};
use crate::propagation::Propagator;

/// Kinds of fault location. Types 1..7 are the ones counted in α; the
/// Hadamard type only appears in schedules outside the CNOT exRec.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub enum LocationType {
    PrepX = 1,
    PrepZ = 2,
    Memory = 3,
    Swap = 4,
    MeasZ = 5,
    MeasX = 6,
    Cnot = 7,
    Hadamard = 8,
}

impl LocationType {
    /// The seven α types in matrix order.
    pub const ALPHA: [LocationType; 7] = [
        LocationType::PrepX,
        LocationType::PrepZ,
        LocationType::Memory,
        LocationType::Swap,
        LocationType::MeasZ,
        LocationType::MeasX,
        LocationType::Cnot,
    ];

    /// 1-based type number.
    pub fn number(self) -> usize {
        self as usize
    }

    pub fn arity(self) -> usize {
        match self {
            LocationType::Swap | LocationType::Cnot => 2,
            _ => 1,
        }
    }

    /// Preparations and measurements fail by a single flip.
    pub fn is_flip(self) -> bool {
        matches!(self, LocationType::PrepX | LocationType::PrepZ | LocationType::MeasX | LocationType::MeasZ)
    }

    pub fn is_meas(self) -> bool {
        matches!(self, LocationType::MeasX | LocationType::MeasZ)
    }

    pub fn name(self) -> &'static str {
        match self {
            LocationType::PrepX => "prep_plus",
            LocationType::PrepZ => "prep_zero",
            LocationType::Memory => "memory",
            LocationType::Swap => "swap",
            LocationType::MeasZ => "meas_z",
            LocationType::MeasX => "meas_x",
            LocationType::Cnot => "cnot",
            LocationType::Hadamard => "hadamard",
        }
    }

    fn of(kind: OpKind) -> Self {
        match kind {
            OpKind::PrepX => LocationType::PrepX,
            OpKind::PrepZ => LocationType::PrepZ,
            OpKind::Hadamard => LocationType::Hadamard,
            OpKind::Cnot => LocationType::Cnot,
            OpKind::Swap => LocationType::Swap,
            OpKind::MeasX => LocationType::MeasX,
            OpKind::MeasZ => LocationType::MeasZ,
        }
    }
}

impl fmt::Display for LocationType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// One place where a fault may strike.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Location {
    pub id: usize,
    pub loc_type: LocationType,
    /// 0-based step index.
    pub step: usize,
    pub sites: (Site, Option<Site>),
    /// Bit 0 for block 1 (columns 1..7), bit 1 for block 2 (columns 8..14).
    pub block: u8,
}

/// Which idle sites count as memory locations.
///
/// By default a site is a memory location in a step iff it holds a live
/// qubit that no operation touches. The two switches also count empty sites
/// inside a composed part: before the site first receives a qubit in that
/// part, and after its last qubit leaves. Such locations never affect the
/// outcome; they only change the census.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct LocationPolicy {
    pub idle_before_live: bool,
    pub idle_after_live: bool,
}

fn block_of(s: Site) -> u8 {
    if s.col <= 7 {
        1
    } else {
        2
    }
}

/// Enumerates locations step by step: operations in schedule order, then
/// memory sites in row-major order.
pub fn locations(s: &Schedule, policy: LocationPolicy) -> Vec<Location> {
    let tr = Tracker::run(s);
    let segments: Vec<Range<usize>> = if s.segments.is_empty() {
        vec![0..s.latency()]
    } else {
        s.segments.iter().map(|g| g.start..g.end).collect()
    };
    let mut extra = vec![vec![false; s.site_count()]; s.latency()];
    if policy.idle_before_live || policy.idle_after_live {
        for seg in &segments {
            for i in 0..s.site_count() {
                let site = s.site_at(i);
                let touched = |t: usize| s.steps[t].ops.iter().any(|op| op.sites().any(|x| x == site));
                let live = |t: usize| tr.states[t].get(site).is_some();
                let active: Vec<usize> = seg.clone().filter(|&t| live(t) || live(t + 1) || touched(t)).collect();
                let (Some(&first), Some(&last)) = (active.first(), active.last()) else { continue };
                for t in seg.clone() {
                    if live(t) || touched(t) {
                        continue;
                    }
                    if (policy.idle_before_live && t < first) || (policy.idle_after_live && t > last) {
                        extra[t][i] = true;
                    }
                }
            }
        }
    }
    let mut out = Vec::new();
    for (t, st) in s.steps.iter().enumerate() {
        let before = &tr.states[t];
        for op in &st.ops {
            if op.kind.is_meas() && before.get(op.a).is_none() {
                continue;
            }
            let block = op.sites().map(block_of).fold(0, |a, b| a | b);
            out.push(Location { id: out.len(), loc_type: LocationType::of(op.kind), step: t, sites: (op.a, op.b), block });
        }
        let idle = &tr.steps[t].idle;
        for i in 0..s.site_count() {
            let site = s.site_at(i);
            if idle.contains(&site) || extra[t][i] {
                out.push(Location { id: out.len(), loc_type: LocationType::Memory, step: t, sites: (site, None), block: block_of(site) });
            }
        }
    }
    out
}

/// Location counts by α type, index 0 = type 1.
pub fn locations_by_type(locs: &[Location]) -> [usize; 7] {
    let mut c = [0; 7];
    for l in locs {
        if let Some(i) = LocationType::ALPHA.iter().position(|&t| t == l.loc_type) {
            c[i] += 1;
        }
    }
    c
}

/// Counts of malignant location pairs by type, lower triangle `i >= j`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct AlphaMatrix {
    pub entries: [[u64; 7]; 7],
}

impl AlphaMatrix {
    /// Builds from rows of the lower triangle (row `i` has `i + 1` entries).
    pub fn from_lower(rows: &[&[u64]]) -> Self {
        let mut m = AlphaMatrix::default();
        for (i, r) in rows.iter().enumerate() {
            for (j, &v) in r.iter().enumerate() {
                m.entries[i][j] = v;
            }
        }
        m
    }

    /// Entry for types `i` and `j` (1-based, either order).
    pub fn get(&self, i: usize, j: usize) -> u64 {
        let (hi, lo) = if i >= j { (i, j) } else { (j, i) };
        self.entries[hi - 1][lo - 1]
    }

    pub fn add(&mut self, i: usize, j: usize, v: u64) {
        let (hi, lo) = if i >= j { (i, j) } else { (j, i) };
        self.entries[hi - 1][lo - 1] += v;
    }

    pub fn total(&self) -> u64 {
        (0..7).flat_map(|i| (0..=i).map(move |j| (i, j))).map(|(i, j)| self.entries[i][j]).sum()
    }

    pub fn merge(&mut self, other: &AlphaMatrix) {
        for i in 0..7 {
            for j in 0..=i {
                self.entries[i][j] += other.entries[i][j];
            }
        }
    }
}

/// The CNOT extended rectangle: error correction on both blocks, the
/// transversal CNOT, then error correction on both blocks again.
#[derive(Clone, Debug)]
pub struct ExRec {
    pub schedule: Schedule,
    pub propagator: Propagator,
    pub policy: LocationPolicy,
    /// Step ranges of the leading ECs, the gate and the trailing ECs.
    pub leading: Range<usize>,
    pub gate: Range<usize>,
    pub trailing: Range<usize>,
    /// Data sites of blocks 1 and 2 at input and output.
    pub boundary: Vec<Site>,
}

impl ExRec {
    pub fn locations(&self) -> &[Location] {
        self.propagator.locations()
    }

    pub fn census(&self) -> [usize; 7] {
        locations_by_type(self.locations())
    }
}

pub fn build_cnot_exrec() -> ExRec {
    build_cnot_exrec_with(LocationPolicy::default())
}

pub fn build_cnot_exrec_with(policy: LocationPolicy) -> ExRec {
    let gate = crate::lattice::builtin("cnot_encoded").expect("cnot_encoded is built in");
    let schedule = compose(&[ec_pair(), gate, ec_pair()], &[(0, 0); 3]).expect("exRec parts fit together");
    debug_assert!(validate(&schedule).ok);
    let propagator = Propagator::with_policy(&schedule, policy).expect("exRec compiles");
    let seg = |i: usize| schedule.segments[i].start..schedule.segments[i].end;
    let boundary = schedule.data_home.iter().map(|&(_, h)| h).collect();
    ExRec {
        leading: seg(0),
        gate: seg(1),
        trailing: seg(2),
        boundary,
        policy,
        propagator,
        schedule,
    }
}

