//! Reference malignancy check, written for obviousness rather than speed.
//!
//! It walks the exRec schedule op by op with a map from site to (label,
//! error), applies the leading-EC correction physically before the gate and
//! the trailing-EC correction at the end, then decodes each output block
//! with the code-level API.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use super::{ExRec, Location, LocationType};
use crate::code::{CodeDefinition, LogicalClass, Syndrome};
use crate::lattice::{Label, OpKind, Site};
use crate::pauli::{Pauli, PauliString};
use crate::propagation::Fault;

#[derive(Clone, Copy, Default)]
struct Err2 {
    x: bool,
    z: bool,
}

struct Sim<'a> {
    x: &'a ExRec,
    qubits: BTreeMap<Site, (Label, Err2)>,
    outcomes: BTreeMap<Label, bool>,
    measured: BTreeMap<(usize, Site), Label>,
}

impl<'a> Sim<'a> {
    fn new(x: &'a ExRec) -> Self {
        let mut qubits = BTreeMap::new();
        for &(l, h) in &x.schedule.data_home {
            qubits.insert(h, (l, Err2::default()));
        }
        Self { x, qubits, outcomes: BTreeMap::new(), measured: BTreeMap::new() }
    }

    fn op(&mut self, t: usize, kind: OpKind, a: Site, b: Option<Site>, label: Option<Label>) {
        match kind {
            OpKind::PrepX | OpKind::PrepZ => {
                self.qubits.insert(a, (label.expect("prep has a label"), Err2::default()));
            }
            OpKind::Hadamard => {
                if let Some((_, e)) = self.qubits.get_mut(&a) {
                    core::mem::swap(&mut e.x, &mut e.z);
                }
            }
            OpKind::Cnot => {
                let b = b.expect("cnot target");
                let c = self.qubits[&a].1;
                let t = self.qubits[&b].1;
                self.qubits.get_mut(&b).unwrap().1.x ^= c.x;
                self.qubits.get_mut(&a).unwrap().1.z ^= t.z;
            }
            OpKind::Swap => {
                let b = b.expect("swap partner");
                let p = self.qubits.remove(&a);
                let q = self.qubits.remove(&b);
                if let Some(p) = p {
                    self.qubits.insert(b, p);
                }
                if let Some(q) = q {
                    self.qubits.insert(a, q);
                }
            }
            OpKind::MeasX | OpKind::MeasZ => {
                if let Some((l, e)) = self.qubits.remove(&a) {
                    let flip = if kind == OpKind::MeasX { e.z } else { e.x };
                    self.outcomes.insert(l, flip);
                    self.measured.insert((t, a), l);
                }
            }
        }
    }

    fn pauli_at(&mut self, s: Site, p: Pauli) {
        if let Some((_, e)) = self.qubits.get_mut(&s) {
            e.x ^= p.x();
            e.z ^= p.z();
        }
    }

    fn fault(&mut self, loc: &Location, f: Fault) {
        match (f, loc.loc_type) {
            (Fault::Flip, LocationType::PrepX) => self.pauli_at(loc.sites.0, Pauli::Z),
            (Fault::Flip, LocationType::PrepZ) => self.pauli_at(loc.sites.0, Pauli::X),
            (Fault::Flip, _) => {
                if let Some(l) = self.measured.get(&(loc.step, loc.sites.0)) {
                    *self.outcomes.get_mut(l).unwrap() ^= true;
                }
            }
            (Fault::One(p), _) => self.pauli_at(loc.sites.0, p),
            (Fault::Two(p, q), _) => {
                self.pauli_at(loc.sites.0, p);
                if let Some(b) = loc.sites.1 {
                    self.pauli_at(b, q);
                }
            }
        }
    }

    fn run_steps(&mut self, steps: core::ops::Range<usize>, faults: &[(Location, Fault)]) {
        for t in steps {
            let st = self.x.schedule.steps[t].clone();
            for op in &st.ops {
                self.op(t, op.kind, op.a, op.b, op.label);
            }
            for (loc, f) in faults {
                if loc.step == t {
                    self.fault(loc, *f);
                }
            }
        }
    }

    fn syndromes(&self, groups: core::ops::Range<usize>) -> Vec<Syndrome> {
        let bits: Vec<bool> = self.x.schedule.syndrome_map[groups.start * 4..groups.end * 4]
            .iter()
            .map(|p| p.labels.iter().fold(false, |acc, l| acc ^ self.outcomes[l]))
            .collect();
        bits.chunks(4)
            .map(|c| Syndrome(c.iter().enumerate().fold(0, |a, (k, &b)| a | (b as u8) << k)))
            .collect()
    }

    fn block(&self, first: u16) -> PauliString {
        let mut p = PauliString::identity(9);
        for (l, e) in self.qubits.values() {
            if let Label::Data(k) = *l {
                if (first..first + 9).contains(&k) {
                    p.set((k - first) as usize, Pauli::from_bits(e.x, e.z));
                }
            }
        }
        p
    }

    fn correct(&mut self, first: u16, c: &PauliString) {
        let sites: Vec<(Site, u16)> = self
            .qubits
            .iter()
            .filter_map(|(&s, &(l, _))| match l {
                Label::Data(k) if (first..first + 9).contains(&k) => Some((s, k - first)),
                _ => None,
            })
            .collect();
        for (s, k) in sites {
            self.pauli_at(s, c.get(k as usize));
        }
    }
}

/// Logical classes of the two output blocks after running `faults`.
pub fn output_classes(x: &ExRec, faults: &[(Location, Fault)]) -> (LogicalClass, LogicalClass) {
    let code = CodeDefinition::bacon_shor();
    let mut sim = Sim::new(x);
    sim.run_steps(x.leading.clone(), faults);
    let lead = sim.syndromes(0..2);
    sim.correct(1, &code.decode(lead[0]));
    sim.correct(10, &code.decode(lead[1]));
    sim.run_steps(x.gate.start..x.trailing.end, faults);
    let trail = sim.syndromes(2..4);
    sim.correct(1, &code.decode(trail[0]));
    sim.correct(10, &code.decode(trail[1]));
    let classify = |e: PauliString| {
        let s = code.syndrome_of(&e).expect("9-qubit block");
        let r = e.multiply(&code.decode(s)).expect("same size");
        code.logical_class(&r).expect("decoded residual is syndrome-free")
    };
    (classify(sim.block(1)), classify(sim.block(10)))
}

/// Reference decision: some fault assignment at exactly these locations
/// makes an output block fail.
pub fn is_malignant(x: &ExRec, ids: &[usize]) -> bool {
    let locs: Vec<Location> = ids.iter().map(|&i| x.locations()[i]).collect();
    let sets: Vec<Vec<Fault>> = locs.iter().map(|l| Fault::all(l.loc_type)).collect();
    let mut idx = alloc::vec![0usize; locs.len()];
    loop {
        let faults: Vec<(Location, Fault)> = locs.iter().zip(&idx).zip(&sets).map(|((l, &k), s)| (*l, s[k])).collect();
        if output_classes(x, &faults) != (LogicalClass::I, LogicalClass::I) {
            return true;
        }
        let mut d = 0;
        loop {
            if d == idx.len() {
                return false;
            }
            idx[d] += 1;
            if idx[d] < sets[d].len() {
                break;
            }
            idx[d] = 0;
            d += 1;
        }
    }
}
