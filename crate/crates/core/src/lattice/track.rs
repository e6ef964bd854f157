//! Follows which named qubit sits on which site through a schedule.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use super::{Label, OpKind, Schedule, Site};
use super::validate::Rule;

/// Site contents at one instant, indexed like `Schedule::site_index`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Occupancy {
    pub rows: u8,
    pub cols: u8,
    pub cells: Vec<Option<Label>>,
}

impl Occupancy {
    fn index(&self, s: Site) -> usize {
        (s.row as usize - 1) * self.cols as usize + (s.col as usize - 1)
    }

    pub fn get(&self, s: Site) -> Option<Label> {
        self.cells[self.index(s)]
    }

    fn put(&mut self, s: Site, l: Option<Label>) {
        let i = self.index(s);
        self.cells[i] = l;
    }

    pub fn find(&self, l: Label) -> Option<Site> {
        self.cells.iter().position(|&c| c == Some(l)).map(|i| {
            Site::new((i / self.cols as usize) as u8 + 1, (i % self.cols as usize) as u8 + 1)
        })
    }

    pub fn live(&self) -> impl Iterator<Item = (Site, Label)> + '_ {
        self.cells.iter().enumerate().filter_map(|(i, c)| {
            c.map(|l| (Site::new((i / self.cols as usize) as u8 + 1, (i % self.cols as usize) as u8 + 1), l))
        })
    }
}

/// What happened during one step.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct StepTrace {
    /// Measured qubits: site, label (if the site was live) and basis.
    pub measured: Vec<(Site, Option<Label>, OpKind)>,
    /// Sites that held a live qubit before the step and were not touched.
    pub idle: Vec<Site>,
    /// Sites holding a live qubit before the step.
    pub live_before: Vec<Site>,
    pub issues: Vec<(Rule, String)>,
}

/// Occupancy before the first step and after every step.
#[derive(Clone, Debug)]
pub struct Tracker {
    pub states: Vec<Occupancy>,
    pub steps: Vec<StepTrace>,
}

impl Tracker {
    pub fn run(s: &Schedule) -> Tracker {
        let mut occ = Occupancy {
            rows: s.rows,
            cols: s.cols,
            cells: vec![None; s.site_count()],
        };
        let prepared = s.prepared_data();
        for &(l, h) in &s.data_home {
            if s.contains(h) && !prepared.contains(&l) {
                occ.put(h, Some(l));
            }
        }
        let mut states = vec![occ.clone()];
        let mut steps = Vec::with_capacity(s.steps.len());
        for st in &s.steps {
            let mut tr = StepTrace::default();
            let mut touched = vec![false; s.site_count()];
            for op in &st.ops {
                for site in op.sites() {
                    if s.contains(site) {
                        touched[s.site_index(site)] = true;
                    }
                }
            }
            for (site, _) in occ.live() {
                tr.live_before.push(site);
                if !touched[s.site_index(site)] {
                    tr.idle.push(site);
                }
            }
            for op in &st.ops {
                if !op.sites().all(|x| s.contains(x)) {
                    continue;
                }
                match op.kind {
                    OpKind::PrepX | OpKind::PrepZ => {
                        if let Some(old) = occ.get(op.a) {
                            tr.issues.push((Rule::PrepOnLive, format!("prep at {} over live {old}", op.a)));
                        }
                        match op.label {
                            Some(l) => {
                                if let Some(at) = occ.find(l) {
                                    tr.issues.push((Rule::DuplicateLabel, format!("{l} prepared at {} while live at {at}", op.a)));
                                }
                                occ.put(op.a, Some(l));
                            }
                            None => tr.issues.push((Rule::MissingLabel, format!("prep at {} has no label", op.a))),
                        }
                    }
                    OpKind::Hadamard => {
                        if occ.get(op.a).is_none() {
                            tr.issues.push((Rule::GateOnDead, format!("H on empty site {}", op.a)));
                        }
                    }
                    OpKind::Cnot => {
                        let b = op.b.unwrap_or(op.a);
                        for x in [op.a, b] {
                            if occ.get(x).is_none() {
                                tr.issues.push((Rule::GateOnDead, format!("CNOT {}->{} touches empty site {x}", op.a, b)));
                            }
                        }
                    }
                    OpKind::Swap => {
                        let b = op.b.unwrap_or(op.a);
                        let (p, q) = (occ.get(op.a), occ.get(b));
                        if p.is_none() && q.is_none() {
                            tr.issues.push((Rule::GateOnDead, format!("SWAP {}<->{} of two empty sites", op.a, b)));
                        }
                        occ.put(op.a, q);
                        occ.put(b, p);
                    }
                    OpKind::MeasX | OpKind::MeasZ => {
                        let l = occ.get(op.a);
                        if l.is_none() {
                            tr.issues.push((Rule::MeasureDead, format!("measurement of empty site {}", op.a)));
                        }
                        tr.measured.push((op.a, l, op.kind));
                        occ.put(op.a, None);
                    }
                }
            }
            states.push(occ.clone());
            steps.push(tr);
        }
        Tracker { states, steps }
    }

    pub fn last(&self) -> &Occupancy {
        self.states.last().expect("tracker always holds the initial state")
    }

    /// Every measured label with its step (0-based) and basis, in schedule order.
    pub fn measurements(&self) -> Vec<(usize, Label, OpKind)> {
        let mut out = Vec::new();
        for (t, tr) in self.steps.iter().enumerate() {
            for &(_, l, k) in &tr.measured {
                if let Some(l) = l {
                    out.push((t, l, k));
                }
            }
        }
        out
    }
}
