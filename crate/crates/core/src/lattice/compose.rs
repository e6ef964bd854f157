//! Sequential and side-by-side composition of schedules.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use super::track::Tracker;
use super::{Label, Schedule, Segment, TimeStep};
use crate::error::{Error, Result};

fn renumber(s: &mut Schedule) {
    for (i, p) in s.syndrome_map.iter_mut().enumerate() {
        p.name = format!("s{}", i + 1);
    }
    for (i, p) in s.checks.iter_mut().enumerate() {
        p.name = format!("c{}", i + 1);
    }
}

fn max_index(s: &Schedule, data: bool) -> u16 {
    let from_ops = s
        .steps
        .iter()
        .flat_map(|st| &st.ops)
        .filter_map(|op| op.label)
        .filter(|l| l.is_data() == data)
        .map(Label::index);
    let from_homes = s.data_home.iter().map(|(l, _)| *l).filter(|l| l.is_data() == data).map(Label::index);
    from_ops.chain(from_homes).max().unwrap_or(0)
}

fn own_segments(s: &Schedule) -> Vec<Segment> {
    if s.segments.is_empty() {
        alloc::vec![Segment { name: s.name.clone(), start: 0, end: s.latency() }]
    } else {
        s.segments.clone()
    }
}

/// Runs `parts` one after another, each first moved by its `(row, col)`
/// offset. Qubits handed over at a seam keep the name they had in the
/// earlier part; every later part gets fresh ancilla names.
pub fn compose(parts: &[Schedule], offsets: &[(i16, i16)]) -> Result<Schedule> {
    if parts.is_empty() {
        return Err(Error::SeamMismatch(String::from("nothing to compose")));
    }
    if offsets.len() != parts.len() {
        return Err(Error::SeamMismatch(format!("{} parts but {} offsets", parts.len(), offsets.len())));
    }
    let rows = parts.iter().zip(offsets).map(|(p, o)| (p.rows as i16 + o.0) as u8).max().unwrap_or(0);
    let cols = parts.iter().zip(offsets).map(|(p, o)| (p.cols as i16 + o.1) as u8).max().unwrap_or(0);
    let placed: Vec<Schedule> = parts.iter().zip(offsets).map(|(p, &(dr, dc))| p.translate(dr, dc, rows, cols)).collect();

    let mut out = placed[0].clone();
    out.name = parts.iter().map(|p| p.name.as_str()).collect::<Vec<_>>().join("+");
    out.segments = own_segments(&placed[0]);

    for p in &placed[1..] {
        let end = Tracker::run(&out);
        let end = end.last();
        let prepared = p.prepared_data();
        let mut names: BTreeMap<Label, Label> = BTreeMap::new();
        let mut claimed = Vec::new();
        for &(l, h) in &p.data_home {
            if prepared.contains(&l) {
                continue;
            }
            match end.get(h) {
                Some(held) if held.is_data() => {
                    names.insert(l, held);
                    claimed.push(h);
                }
                Some(held) => {
                    return Err(Error::SeamMismatch(format!("{} expects {l} at {h} but {held} is there", p.name)));
                }
                None => return Err(Error::SeamMismatch(format!("{} expects {l} at {h} but the site is empty", p.name))),
            }
        }
        for (site, l) in end.live() {
            if !claimed.contains(&site) {
                return Err(Error::SeamMismatch(format!("{l} at {site} is not taken over by {}", p.name)));
            }
        }
        let data_base = max_index(&out, true);
        let anc_base = max_index(&out, false);
        let renamed = p.relabel(|l| match l {
            Label::Data(k) => names.get(&l).copied().unwrap_or(Label::Data(k + data_base)),
            Label::Ancilla(k) => Label::Ancilla(k + anc_base),
        });
        let start = out.latency();
        for seg in own_segments(&renamed) {
            out.segments.push(Segment { name: seg.name, start: seg.start + start, end: seg.end + start });
        }
        for (l, h) in &renamed.data_home {
            if !out.data_home.iter().any(|(m, _)| m == l) {
                out.data_home.push((*l, *h));
            }
        }
        out.steps.extend(renamed.steps);
        out.syndrome_map.extend(renamed.syndrome_map);
        out.checks.extend(renamed.checks);
    }
    renumber(&mut out);
    Ok(out)
}

/// Runs two schedules on the same grid at the same time. Names must already
/// be disjoint.
pub fn parallel(a: &Schedule, b: &Schedule) -> Result<Schedule> {
    if (a.rows, a.cols) != (b.rows, b.cols) {
        return Err(Error::SeamMismatch(format!(
            "grids differ: {}x{} vs {}x{}",
            a.rows, a.cols, b.rows, b.cols
        )));
    }
    let names = |s: &Schedule| {
        let mut v: Vec<Label> = s.data_home.iter().map(|(l, _)| *l).collect();
        v.extend(s.ancilla_labels());
        v
    };
    let nb = names(b);
    if let Some(l) = names(a).into_iter().find(|l| nb.contains(l)) {
        return Err(Error::SeamMismatch(format!("{l} used by both {} and {}", a.name, b.name)));
    }
    let mut out = a.clone();
    out.name = format!("{}|{}", a.name, b.name);
    let n = a.latency().max(b.latency());
    out.steps.resize(n, TimeStep::default());
    for (t, st) in b.steps.iter().enumerate() {
        out.steps[t].ops.extend(st.ops.iter().copied());
    }
    out.data_home.extend(b.data_home.iter().copied());
    out.syndrome_map.extend(b.syndrome_map.iter().cloned());
    out.checks.extend(b.checks.iter().cloned());
    out.segments = alloc::vec![Segment { name: out.name.clone(), start: 0, end: n }];
    renumber(&mut out);
    Ok(out)
}

/// Error correction on both blocks of a 7×14 grid: block 2 holds d10..d18
/// and its ancillas are numbered after block 1's.
pub fn ec_pair() -> Schedule {
    let ec = super::builtin("ec").expect("ec is built in");
    let left = ec.translate(0, 0, 7, 14);
    let anc = max_index(&ec, false);
    let right = ec.translate(0, 7, 7, 14).offset_labels(9, anc);
    let mut out = parallel(&left, &right).expect("the two halves are disjoint");
    out.name = String::from("ec_pair");
    out.segments = alloc::vec![Segment { name: out.name.clone(), start: 0, end: out.latency() }];
    out
}

/// The gate-plus-error-correction unit for `gate`: one of `cnot`, `swap`,
/// `prep0`, `prep_plus`, `hadamard`, `meas`.
pub fn one_rec(gate: &str) -> Result<Schedule> {
    let b = super::builtin;
    let ec = b("ec")?;
    let s = match gate {
        "cnot" => compose(&[b("cnot_encoded")?, ec_pair()], &[(0, 0), (0, 0)])?,
        "swap" => compose(&[b("swap_encoded")?, ec_pair()], &[(0, 0), (0, 0)])?,
        "prep0" => compose(&[b("prep0")?, ec], &[(0, 0), (0, 0)])?,
        "prep_plus" => compose(&[b("prep_plus")?, ec], &[(0, 0), (0, 0)])?,
        "hadamard" => compose(&[b("hadamard_encoded")?, ec], &[(0, 0), (0, 0)])?,
        "meas" => b("meas_transversal")?,
        _ => return Err(Error::UnknownBuiltin(format!("1-rec {gate}"))),
    };
    Ok(s)
}
