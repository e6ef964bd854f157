//! Test-only stabilizer tableau simulator and a driver that runs schedules
//! on it with real measurement randomness.

#![allow(dead_code)]

use std::collections::BTreeMap;

use ftlat_core::lattice::{Label, OpKind, Schedule, Site};
use ftlat_core::{Pauli, PauliString};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

/// Aaronson-Gottesman tableau over up to 128 qubits.
#[derive(Clone)]
pub struct Tableau {
    n: usize,
    x: Vec<u128>,
    z: Vec<u128>,
    r: Vec<bool>,
}

fn bit(v: u128, a: usize) -> bool {
    v >> a & 1 == 1
}

impl Tableau {
    /// All qubits in |0>.
    pub fn new(n: usize) -> Self {
        assert!(n <= 128);
        let mut x = vec![0; 2 * n + 1];
        let mut z = vec![0; 2 * n + 1];
        for i in 0..n {
            x[i] = 1 << i;
            z[n + i] = 1 << i;
        }
        Self { n, x, z, r: vec![false; 2 * n + 1] }
    }

    pub fn h(&mut self, a: usize) {
        for i in 0..2 * self.n {
            let (xa, za) = (bit(self.x[i], a), bit(self.z[i], a));
            self.r[i] ^= xa && za;
            if xa != za {
                self.x[i] ^= 1 << a;
                self.z[i] ^= 1 << a;
            }
        }
    }

    pub fn cnot(&mut self, a: usize, b: usize) {
        for i in 0..2 * self.n {
            let (xa, za, xb, zb) = (bit(self.x[i], a), bit(self.z[i], a), bit(self.x[i], b), bit(self.z[i], b));
            self.r[i] ^= xa && zb && !(xb ^ za);
            if xa {
                self.x[i] ^= 1 << b;
            }
            if zb {
                self.z[i] ^= 1 << a;
            }
        }
    }

    pub fn swap(&mut self, a: usize, b: usize) {
        for i in 0..2 * self.n {
            for v in [&mut self.x[i], &mut self.z[i]] {
                if bit(*v, a) != bit(*v, b) {
                    *v ^= 1 << a | 1 << b;
                }
            }
        }
    }

    pub fn pauli(&mut self, a: usize, p: Pauli) {
        for i in 0..2 * self.n {
            if (p.x() && bit(self.z[i], a)) ^ (p.z() && bit(self.x[i], a)) {
                self.r[i] ^= true;
            }
        }
    }

    fn rowsum(&mut self, h: usize, i: usize) {
        let mut sum: i32 = 2 * self.r[h] as i32 + 2 * self.r[i] as i32;
        for q in 0..self.n {
            let (x1, z1) = (bit(self.x[i], q) as i32, bit(self.z[i], q) as i32);
            let (x2, z2) = (bit(self.x[h], q) as i32, bit(self.z[h], q) as i32);
            sum += match (x1, z1) {
                (0, 0) => 0,
                (1, 1) => z2 - x2,
                (1, 0) => z2 * (2 * x2 - 1),
                _ => x2 * (1 - 2 * z2),
            };
        }
        self.r[h] = sum.rem_euclid(4) == 2;
        self.x[h] ^= self.x[i];
        self.z[h] ^= self.z[i];
    }

    /// Z measurement: (outcome, whether it was determined).
    pub fn measure(&mut self, a: usize, rng: &mut ChaCha8Rng) -> (bool, bool) {
        let n = self.n;
        if let Some(p) = (n..2 * n).find(|&p| bit(self.x[p], a)) {
            for i in 0..2 * n {
                if i != p && bit(self.x[i], a) {
                    self.rowsum(i, p);
                }
            }
            self.x[p - n] = self.x[p];
            self.z[p - n] = self.z[p];
            self.r[p - n] = self.r[p];
            self.x[p] = 0;
            self.z[p] = 1 << a;
            let out = rng.gen::<bool>();
            self.r[p] = out;
            (out, false)
        } else {
            let s = 2 * n;
            self.x[s] = 0;
            self.z[s] = 0;
            self.r[s] = false;
            for i in 0..n {
                if bit(self.x[i], a) {
                    self.rowsum(s, i + n);
                }
            }
            (self.r[s], true)
        }
    }

    pub fn reset(&mut self, a: usize, rng: &mut ChaCha8Rng) {
        if self.measure(a, rng).0 {
            self.pauli(a, Pauli::X);
        }
    }

    /// Sign of a CSS-type Pauli (each factor X or Z) if it stabilises the
    /// state: Some(false) for +1, Some(true) for -1, None if not a stabiliser.
    pub fn stabilizer_sign(&self, support: &[(usize, Pauli)], rng: &mut ChaCha8Rng) -> Option<bool> {
        let mut t = self.clone();
        for &(q, p) in support {
            match p {
                Pauli::X => t.h(q),
                Pauli::Z => {}
                _ => panic!("only X and Z factors"),
            }
        }
        let (&(first, _), rest) = support.split_first()?;
        for &(q, _) in rest {
            t.cnot(q, first);
        }
        let (out, det) = t.measure(first, rng);
        det.then_some(out)
    }
}

/// Runs a schedule on a tableau whose qubits are the grid sites.
pub struct Runner<'a> {
    pub s: &'a Schedule,
    pub t: Tableau,
    pub at: BTreeMap<Site, Label>,
    pub outcomes: BTreeMap<Label, bool>,
    pub rng: ChaCha8Rng,
}

impl<'a> Runner<'a> {
    pub fn new(s: &'a Schedule, seed: u64) -> Self {
        use rand::SeedableRng;
        let at = s.data_home.iter().map(|&(l, h)| (h, l)).collect();
        Self { s, t: Tableau::new(s.site_count()), at, outcomes: BTreeMap::new(), rng: ChaCha8Rng::seed_from_u64(seed) }
    }

    fn q(&self, site: Site) -> usize {
        self.s.site_index(site)
    }

    /// Qubit holding data label `k` (1-based) right now.
    pub fn data_qubit(&self, k: u16) -> usize {
        let site = self.at.iter().find(|(_, &l)| l == Label::Data(k)).map(|(&s, _)| s).expect("data label present");
        self.q(site)
    }

    /// Ideal logical |0> (or |+>) on the nine data qubits `first..first+9`,
    /// built from three column (or row) cat states.
    pub fn encode(&mut self, first: u16, plus: bool) {
        for g in 0..3u16 {
            let members: Vec<u16> = (0..3).map(|j| if plus { g * 3 + j } else { j * 3 + g }).collect();
            let qs: Vec<usize> = members.iter().map(|&m| self.data_qubit(first + m)).collect();
            // Qubits start in |0>; make (|000>+|111>) then rotate for |0>-type.
            self.t.h(qs[0]);
            self.t.cnot(qs[0], qs[1]);
            self.t.cnot(qs[0], qs[2]);
            if !plus {
                for &q in &qs {
                    self.t.h(q);
                }
            }
        }
    }

    pub fn apply_data(&mut self, first: u16, e: &PauliString) {
        for k in 0..e.n() {
            let p = e.get(k);
            if p != Pauli::I {
                let q = self.data_qubit(first + k as u16);
                if p.x() {
                    self.t.pauli(q, Pauli::X);
                }
                if p.z() {
                    self.t.pauli(q, Pauli::Z);
                }
            }
        }
    }

    pub fn step(&mut self, t: usize) {
        let ops = self.s.steps[t].ops.clone();
        for op in ops {
            let a = self.q(op.a);
            match op.kind {
                OpKind::PrepZ | OpKind::PrepX => {
                    self.t.reset(a, &mut self.rng);
                    if op.kind == OpKind::PrepX {
                        self.t.h(a);
                    }
                    self.at.insert(op.a, op.label.unwrap());
                }
                OpKind::Hadamard => self.t.h(a),
                OpKind::Cnot => self.t.cnot(a, self.q(op.b.unwrap())),
                OpKind::Swap => {
                    let b = op.b.unwrap();
                    self.t.swap(a, self.q(b));
                    let (la, lb) = (self.at.remove(&op.a), self.at.remove(&b));
                    if let Some(l) = la {
                        self.at.insert(b, l);
                    }
                    if let Some(l) = lb {
                        self.at.insert(op.a, l);
                    }
                }
                OpKind::MeasX | OpKind::MeasZ => {
                    if op.kind == OpKind::MeasX {
                        self.t.h(a);
                    }
                    let (out, _) = self.t.measure(a, &mut self.rng);
                    if let Some(l) = self.at.remove(&op.a) {
                        self.outcomes.insert(l, out);
                    }
                    // Return the site to |0> so later preparations start clean.
                    self.t.reset(a, &mut self.rng);
                }
            }
        }
    }

    pub fn run(&mut self) {
        for t in 0..self.s.latency() {
            self.step(t);
        }
    }

    pub fn parity(&self, labels: &[Label]) -> bool {
        labels.iter().fold(false, |acc, l| acc ^ self.outcomes[l])
    }

    /// Syndromes in groups of four from the schedule's syndrome map.
    pub fn syndromes(&self) -> Vec<u8> {
        let bits: Vec<bool> = self.s.syndrome_map.iter().map(|p| self.parity(&p.labels)).collect();
        bits.chunks(4).map(|c| c.iter().enumerate().fold(0u8, |a, (k, &b)| a | (b as u8) << k)).collect()
    }

    pub fn checks(&self) -> Vec<bool> {
        self.s.checks.iter().map(|p| self.parity(&p.labels)).collect()
    }

    /// Sign of a 9-qubit Pauli on data block `first` as a stabiliser.
    pub fn sign_on_block(&mut self, first: u16, p: &PauliString) -> Option<bool> {
        let support: Vec<(usize, Pauli)> = p.support().into_iter().map(|k| (self.data_qubit(first + k as u16), p.get(k))).collect();
        self.t.stabilizer_sign(&support, &mut self.rng)
    }
}

/// A fault applied on the tableau right after the ops of its step.
pub fn inject(r: &mut Runner, before: &BTreeMap<Site, Label>, loc: &ftlat_core::exrec::Location, f: ftlat_core::propagation::Fault) {
    use ftlat_core::exrec::LocationType;
    use ftlat_core::propagation::Fault;
    let put = |r: &mut Runner, site: Site, p: Pauli| {
        if r.at.contains_key(&site) {
            let q = r.q(site);
            if p.x() {
                r.t.pauli(q, Pauli::X);
            }
            if p.z() {
                r.t.pauli(q, Pauli::Z);
            }
        }
    };
    match (f, loc.loc_type) {
        (Fault::Flip, LocationType::PrepX) => put(r, loc.sites.0, Pauli::Z),
        (Fault::Flip, LocationType::PrepZ) => put(r, loc.sites.0, Pauli::X),
        (Fault::Flip, _) => {
            let l = before[&loc.sites.0];
            *r.outcomes.get_mut(&l).unwrap() ^= true;
        }
        (Fault::One(p), _) => put(r, loc.sites.0, p),
        (Fault::Two(p, q), _) => {
            put(r, loc.sites.0, p);
            put(r, loc.sites.1.unwrap(), q);
        }
    }
}

/// Runs the whole schedule with faults injected after their steps.
pub fn run_with_faults(r: &mut Runner, faults: &[(ftlat_core::exrec::Location, ftlat_core::propagation::Fault)]) {
    for t in 0..r.s.latency() {
        let before = r.at.clone();
        r.step(t);
        for (loc, f) in faults {
            if loc.step == t {
                inject(r, &before, loc, *f);
            }
        }
    }
}
