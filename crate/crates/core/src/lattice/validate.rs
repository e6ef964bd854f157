//! Locality, collision and lifetime rules for schedules.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use super::track::Tracker;
use super::{OpKind, Schedule};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub enum Rule {
    OutOfGrid,
    Arity,
    Adjacency,
    Collision,
    PrepOnLive,
    MissingLabel,
    DuplicateLabel,
    MeasureDead,
    GateOnDead,
    DataHome,
    AncillaUnmeasured,
    UnknownParityLabel,
}

impl Rule {
    pub fn id(self) -> &'static str {
        match self {
            Rule::OutOfGrid => "out-of-grid",
            Rule::Arity => "arity",
            Rule::Adjacency => "adjacency",
            Rule::Collision => "collision",
            Rule::PrepOnLive => "prep-on-live",
            Rule::MissingLabel => "missing-label",
            Rule::DuplicateLabel => "duplicate-label",
            Rule::MeasureDead => "measure-dead",
            Rule::GateOnDead => "gate-on-dead",
            Rule::DataHome => "data-home",
            Rule::AncillaUnmeasured => "ancilla-unmeasured",
            Rule::UnknownParityLabel => "unknown-parity-label",
        }
    }
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

/// A rule broken at a step (1-based; 0 marks whole-schedule rules).
#[derive(Clone, Debug, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Violation {
    pub step: usize,
    pub rule: Rule,
    pub description: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct ValidationReport {
    pub ok: bool,
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn has(&self, rule: Rule) -> bool {
        self.violations.iter().any(|v| v.rule == rule)
    }
}

fn push(v: &mut Vec<Violation>, step: usize, rule: Rule, description: String) {
    v.push(Violation { step, rule, description });
}

pub fn validate(s: &Schedule) -> ValidationReport {
    let mut v = Vec::new();

    for (t, st) in s.steps.iter().enumerate() {
        let step = t + 1;
        let mut seen = BTreeSet::new();
        for op in &st.ops {
            if op.b.is_some() != (op.kind.arity() == 2) {
                push(&mut v, step, Rule::Arity, format!("{} with wrong number of sites", op.kind.mnemonic()));
            }
            for x in op.sites() {
                if !s.contains(x) {
                    push(&mut v, step, Rule::OutOfGrid, format!("site {x} outside {}x{} grid", s.rows, s.cols));
                } else if !seen.insert(x) {
                    push(&mut v, step, Rule::Collision, format!("site {x} used twice"));
                }
            }
            if let Some(b) = op.b {
                if !op.a.is_adjacent(b) {
                    push(&mut v, step, Rule::Adjacency, format!("{} between non-adjacent {} and {b}", op.kind.mnemonic(), op.a));
                }
            }
        }
    }

    for (_, h) in &s.data_home {
        if !s.contains(*h) {
            push(&mut v, 0, Rule::OutOfGrid, format!("data home {h} outside grid"));
        }
    }
    if v.iter().any(|x| x.rule == Rule::OutOfGrid) {
        return ValidationReport { ok: false, violations: v };
    }

    let tr = Tracker::run(s);
    for (t, st) in tr.steps.iter().enumerate() {
        for (rule, d) in &st.issues {
            push(&mut v, t + 1, *rule, d.clone());
        }
    }

    let end = tr.last();
    let measured: BTreeSet<_> = tr.measurements().into_iter().map(|(_, l, _)| l).collect();
    let expected: BTreeSet<_> = s
        .data_home
        .iter()
        .filter(|(l, _)| !measured.contains(l))
        .map(|&(_, h)| h)
        .collect();
    let actual: BTreeSet<_> = end.live().filter(|(_, l)| l.is_data()).map(|(x, _)| x).collect();
    for h in expected.difference(&actual) {
        push(&mut v, 0, Rule::DataHome, format!("home {h} holds no data qubit at the end"));
    }
    for h in actual.difference(&expected) {
        let l = end.get(*h).map(|l| format!("{l}")).unwrap_or_default();
        push(&mut v, 0, Rule::DataHome, format!("data qubit {l} ends off-home at {h}"));
    }
    for (x, l) in end.live().filter(|(_, l)| !l.is_data()) {
        push(&mut v, 0, Rule::AncillaUnmeasured, format!("{l} still live at {x}"));
    }
    for p in s.syndrome_map.iter().chain(&s.checks) {
        for l in &p.labels {
            if !measured.contains(l) {
                push(&mut v, 0, Rule::UnknownParityLabel, format!("{} refers to unmeasured {l}", p.name));
            }
        }
    }

    ValidationReport { ok: v.is_empty(), violations: v }
}

/// True iff the schedule contains, in order, a preparation step, an
/// ancilla-ancilla entangling step, a data-ancilla step and a measurement step.
pub fn has_ec_structure(s: &Schedule) -> bool {
    let tr = Tracker::run(s);
    let mut phase = 0;
    for (t, st) in s.steps.iter().enumerate() {
        let before = &tr.states[t];
        let mut kinds = [false; 4];
        for op in &st.ops {
            match op.kind {
                OpKind::PrepX | OpKind::PrepZ => kinds[0] = true,
                OpKind::Cnot => {
                    let b = op.b.unwrap_or(op.a);
                    match (before.get(op.a), before.get(b)) {
                        (Some(p), Some(q)) if !p.is_data() && !q.is_data() => kinds[1] = true,
                        (Some(p), Some(q)) if p.is_data() != q.is_data() => kinds[2] = true,
                        _ => {}
                    }
                }
                OpKind::MeasX | OpKind::MeasZ => kinds[3] = true,
                _ => {}
            }
        }
        if phase < 4 && kinds[phase] {
            phase += 1;
        }
    }
    phase == 4
}
