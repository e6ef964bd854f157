//! Pauli-frame propagation of faults through a schedule.
//!
//! Each site carries an X bit and a Z bit. Operations conjugate the frame,
//! then the faults of that step's locations are applied (faults act after the
//! ideal operation). Measurements record an outcome flip and leave the site
//! empty; preparations reset it.

use alloc::vec;
use alloc::vec::Vec;

use crate::code::{CodeDefinition, Syndrome};
use crate::error::{Error, Result};
use crate::exrec::{locations, Location, LocationPolicy, LocationType};
use crate::lattice::{Label, OpKind, Schedule, Tracker};
use crate::pauli::{Pauli, PauliString};

/// A fault value at one location.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub enum Fault {
    /// Prepared state orthogonal to the intended one, or measurement flipped.
    Flip,
    One(Pauli),
    /// Paulis on the location's first and second site.
    Two(Pauli, Pauli),
}

impl Fault {
    /// Every fault value of a location type: 1 flip, 3 one-qubit Paulis or 15
    /// nontrivial two-qubit Paulis.
    pub fn all(t: LocationType) -> Vec<Fault> {
        match t.arity() {
            2 => {
                let ps = [Pauli::I, Pauli::X, Pauli::Y, Pauli::Z];
                let mut v = Vec::with_capacity(15);
                for &p in &ps {
                    for &q in &ps {
                        if (p, q) != (Pauli::I, Pauli::I) {
                            v.push(Fault::Two(p, q));
                        }
                    }
                }
                v
            }
            _ if t.is_flip() => vec![Fault::Flip],
            _ => Pauli::NONTRIVIAL.iter().map(|&p| Fault::One(p)).collect(),
        }
    }

    fn fits(self, t: LocationType) -> bool {
        match self {
            Fault::Flip => t.is_flip(),
            Fault::One(p) => t.arity() == 1 && !t.is_flip() && p != Pauli::I,
            Fault::Two(p, q) => t.arity() == 2 && (p, q) != (Pauli::I, Pauli::I),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct FaultEvent {
    pub location: usize,
    pub fault: Fault,
}

/// Outcome of one propagation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PropagationResult {
    /// Error on the data qubits at the end, indexed like `Schedule::data_home`.
    pub residual: PauliString,
    /// Outcome flip of each measurement, indexed like `Propagator::measurements`.
    pub flips: Vec<bool>,
}

#[derive(Clone, Copy, Debug)]
enum Op {
    Reset(usize),
    H(usize),
    Cnot(usize, usize),
    Swap(usize, usize),
    MeasX(usize, usize),
    MeasZ(usize, usize),
}

#[derive(Clone, Copy, Debug)]
struct Slot {
    t: LocationType,
    a: usize,
    b: Option<usize>,
    meas: Option<usize>,
}

const X: u8 = 1;
const Z: u8 = 2;

/// A schedule compiled for repeated propagation.
#[derive(Clone, Debug)]
pub struct Propagator {
    sites: usize,
    steps: Vec<Vec<Op>>,
    live_after: Vec<Vec<bool>>,
    locations: Vec<Location>,
    slots: Vec<Slot>,
    by_step: Vec<(usize, usize)>,
    measurements: Vec<(usize, Label, OpKind)>,
    data: Vec<Label>,
    data_start: Vec<Option<usize>>,
    data_end: Vec<Option<usize>>,
    syndrome: Vec<Vec<usize>>,
    checks: Vec<Vec<usize>>,
}

impl Propagator {
    pub fn new(s: &Schedule) -> Result<Self> {
        Self::with_policy(s, LocationPolicy::default())
    }

    pub fn with_policy(s: &Schedule, policy: LocationPolicy) -> Result<Self> {
        let report = crate::lattice::validate(s);
        if let Some(v) = report.violations.iter().find(|v| {
            use crate::lattice::Rule::*;
            matches!(v.rule, OutOfGrid | Arity | Adjacency | Collision)
        }) {
            return Err(Error::InvalidOp(alloc::format!("step {}: {}", v.step, v.description)));
        }
        let tr = Tracker::run(s);
        let measurements = tr.measurements();
        let mut meas_index = vec![Vec::new(); s.latency()];
        for (i, &(t, l, _)) in measurements.iter().enumerate() {
            meas_index[t].push((l, i));
        }
        let idx = |x| s.site_index(x);
        let mut steps = Vec::with_capacity(s.latency());
        for (t, st) in s.steps.iter().enumerate() {
            let before = &tr.states[t];
            let mut ops = Vec::with_capacity(st.ops.len());
            for op in &st.ops {
                let a = idx(op.a);
                let m = || {
                    let l = before.get(op.a).expect("measured site is live");
                    meas_index[t].iter().find(|(m, _)| *m == l).map(|&(_, i)| i).expect("measurement recorded")
                };
                ops.push(match op.kind {
                    OpKind::PrepX | OpKind::PrepZ => Op::Reset(a),
                    OpKind::Hadamard => Op::H(a),
                    OpKind::Cnot => Op::Cnot(a, idx(op.b.expect("two-site op"))),
                    OpKind::Swap => Op::Swap(a, idx(op.b.expect("two-site op"))),
                    OpKind::MeasX if before.get(op.a).is_some() => Op::MeasX(a, m()),
                    OpKind::MeasZ if before.get(op.a).is_some() => Op::MeasZ(a, m()),
                    OpKind::MeasX | OpKind::MeasZ => Op::Reset(a),
                });
            }
            steps.push(ops);
        }
        let live_after: Vec<Vec<bool>> = tr.states[1..]
            .iter()
            .map(|o| o.cells.iter().map(Option::is_some).collect())
            .collect();

        let locations = locations(s, policy);
        let mut slots = Vec::with_capacity(locations.len());
        let mut by_step = vec![(0usize, 0usize); s.latency()];
        for (i, loc) in locations.iter().enumerate() {
            let meas = if loc.loc_type.is_meas() {
                let before = &tr.states[loc.step];
                before
                    .get(loc.sites.0)
                    .and_then(|l| meas_index[loc.step].iter().find(|(m, _)| *m == l).map(|&(_, i)| i))
            } else {
                None
            };
            slots.push(Slot { t: loc.loc_type, a: idx(loc.sites.0), b: loc.sites.1.map(idx), meas });
            let e = &mut by_step[loc.step];
            if e.1 == 0 {
                e.0 = i;
            }
            e.1 = i + 1;
        }

        let data: Vec<Label> = s.data_home.iter().map(|&(l, _)| l).collect();
        let start = &tr.states[0];
        let end = tr.last();
        let data_start = data.iter().map(|&l| start.find(l).map(idx)).collect();
        let data_end = data.iter().map(|&l| end.find(l).map(idx)).collect();
        let lookup = |labels: &[Label]| -> Result<Vec<usize>> {
            labels
                .iter()
                .map(|l| {
                    measurements
                        .iter()
                        .position(|(_, m, _)| m == l)
                        .ok_or_else(|| Error::InvalidOp(alloc::format!("parity refers to unmeasured {l}")))
                })
                .collect()
        };
        let syndrome = s.syndrome_map.iter().map(|p| lookup(&p.labels)).collect::<Result<_>>()?;
        let checks = s.checks.iter().map(|p| lookup(&p.labels)).collect::<Result<_>>()?;
        Ok(Self {
            sites: s.site_count(),
            steps,
            live_after,
            locations,
            slots,
            by_step,
            measurements,
            data,
            data_start,
            data_end,
            syndrome,
            checks,
        })
    }

    pub fn locations(&self) -> &[Location] {
        &self.locations
    }

    /// Measured labels with their step and basis, in flip-vector order.
    pub fn measurements(&self) -> &[(usize, Label, OpKind)] {
        &self.measurements
    }

    pub fn data_labels(&self) -> &[Label] {
        &self.data
    }

    pub fn syndrome_bits(&self) -> usize {
        self.syndrome.len()
    }

    fn check_faults(&self, faults: &[FaultEvent]) -> Result<()> {
        for f in faults {
            let slot = self.slots.get(f.location).ok_or(Error::UnknownLocation(f.location))?;
            if !f.fault.fits(slot.t) {
                return Err(Error::FaultArity(f.location));
            }
        }
        Ok(())
    }

    /// Propagates `faults` with no error on the incoming data.
    pub fn run(&self, faults: &[FaultEvent]) -> Result<PropagationResult> {
        self.run_from(&PauliString::identity(self.data.len()), faults)
    }

    /// Propagates `faults` starting from `entering` on the data qubits.
    pub fn run_from(&self, entering: &PauliString, faults: &[FaultEvent]) -> Result<PropagationResult> {
        if entering.n() != self.data.len() {
            return Err(Error::SizeMismatch(entering.n(), self.data.len()));
        }
        self.check_faults(faults)?;
        let mut frame = vec![0u8; self.sites];
        for (k, site) in self.data_start.iter().enumerate() {
            if let Some(i) = *site {
                let p = entering.get(k);
                frame[i] = (p.x() as u8) * X | (p.z() as u8) * Z;
            }
        }
        let mut flips = vec![false; self.measurements.len()];
        let mut sorted: Vec<FaultEvent> = faults.to_vec();
        sorted.sort_by_key(|f| f.location);
        let mut next = 0;
        for (t, ops) in self.steps.iter().enumerate() {
            for &op in ops {
                apply(&mut frame, &mut flips, op);
            }
            let (lo, hi) = self.by_step[t];
            while next < sorted.len() && sorted[next].location < hi {
                let f = sorted[next];
                debug_assert!(f.location >= lo);
                self.inject(&mut frame, &mut flips, t, f);
                next += 1;
            }
        }
        let mut residual = PauliString::identity(self.data.len());
        for (k, site) in self.data_end.iter().enumerate() {
            if let Some(i) = *site {
                residual.set(k, Pauli::from_bits(frame[i] & X != 0, frame[i] & Z != 0));
            }
        }
        Ok(PropagationResult { residual, flips })
    }

    fn inject(&self, frame: &mut [u8], flips: &mut [bool], t: usize, f: FaultEvent) {
        let slot = self.slots[f.location];
        let live = &self.live_after[t];
        let put = |frame: &mut [u8], i: usize, p: Pauli| {
            if live[i] {
                frame[i] ^= (p.x() as u8) * X | (p.z() as u8) * Z;
            }
        };
        match (f.fault, slot.t) {
            (Fault::Flip, LocationType::PrepX) => put(frame, slot.a, Pauli::Z),
            (Fault::Flip, LocationType::PrepZ) => put(frame, slot.a, Pauli::X),
            (Fault::Flip, _) => {
                if let Some(m) = slot.meas {
                    flips[m] ^= true;
                }
            }
            (Fault::One(p), _) => put(frame, slot.a, p),
            (Fault::Two(p, q), _) => {
                put(frame, slot.a, p);
                if let Some(b) = slot.b {
                    put(frame, b, q);
                }
            }
        }
    }

    /// Syndrome of each group of four syndrome bits.
    pub fn extract_syndromes(&self, r: &PropagationResult) -> Result<Vec<Syndrome>> {
        if self.syndrome.is_empty() {
            return Err(Error::MissingSyndromeMap);
        }
        let bits: Vec<bool> = self
            .syndrome
            .iter()
            .map(|ms| ms.iter().fold(false, |acc, &m| acc ^ r.flips[m]))
            .collect();
        Ok(bits
            .chunks(4)
            .map(|c| Syndrome(c.iter().enumerate().fold(0u8, |acc, (k, &b)| acc | (b as u8) << k)))
            .collect())
    }

    /// Parity of every acceptance check; true means the check reads −1.
    pub fn check_outcomes(&self, r: &PropagationResult) -> Vec<bool> {
        self.checks.iter().map(|ms| ms.iter().fold(false, |acc, &m| acc ^ r.flips[m])).collect()
    }
}

fn apply(frame: &mut [u8], flips: &mut [bool], op: Op) {
    match op {
        Op::Reset(a) => frame[a] = 0,
        Op::H(a) => {
            let v = frame[a];
            frame[a] = (v & X) << 1 | (v & Z) >> 1;
        }
        Op::Cnot(c, t) => {
            frame[t] ^= frame[c] & X;
            frame[c] ^= frame[t] & Z;
        }
        Op::Swap(a, b) => frame.swap(a, b),
        Op::MeasX(a, m) => {
            flips[m] ^= frame[a] & Z != 0;
            frame[a] = 0;
        }
        Op::MeasZ(a, m) => {
            flips[m] ^= frame[a] & X != 0;
            frame[a] = 0;
        }
    }
}

/// Propagates `faults` through `s` from clean inputs.
pub fn propagate(s: &Schedule, faults: &[FaultEvent]) -> Result<PropagationResult> {
    Propagator::new(s)?.run(faults)
}

/// Syndrome of the first block extracted by `s`.
pub fn extract_syndrome(s: &Schedule, r: &PropagationResult) -> Result<Syndrome> {
    let p = Propagator::new(s)?;
    Ok(p.extract_syndromes(r)?[0])
}

/// Residual after the Pauli-frame correction implied by the extracted
/// syndrome of a single-block error-correction schedule.
pub fn apply_frame_correction(s: &Schedule, r: &PropagationResult, code: &CodeDefinition) -> Result<PauliString> {
    let syn = extract_syndrome(s, r)?;
    r.residual.multiply(&code.decode(syn))
}
