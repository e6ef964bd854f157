//! Text pictures of a schedule step in the style of the EC appendix grids.
//!
//! Each site is a cell eight characters wide. Cells touched by a preparation
//! or measurement show `P_X(a1)`/`M_Z(a1)`; other cells show the qubit that
//! occupies the site after the step, or `O` for an empty site. Arrows between
//! cells mark CNOTs (pointing from control to target) and SWAPs (double).

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use super::track::Tracker;
use super::{OpKind, Schedule};
use crate::error::{Error, Result};

const CELL: usize = 8;
const GAP: usize = 3;

fn pad(out: &mut String, text: &str, width: usize) {
    out.push_str(text);
    for _ in text.chars().count()..width {
        out.push(' ');
    }
}

/// Renders the state after `step` (0 is the initial layout).
pub fn render(s: &Schedule, step: usize) -> Result<String> {
    if step > s.latency() {
        return Err(Error::StepOutOfRange { step, max: s.latency() });
    }
    let tr = Tracker::run(s);
    let occ = &tr.states[step];
    let (rows, cols) = (s.rows as usize, s.cols as usize);
    let mut cells: Vec<String> = (0..rows * cols)
        .map(|i| match occ.cells[i] {
            Some(l) => format!("{l}"),
            None => String::from("O"),
        })
        .collect();
    let mut horiz = vec![' '; rows * cols];
    let mut vert = vec![' '; rows * cols];
    if step > 0 {
        let before = &tr.states[step - 1];
        for op in &s.steps[step - 1].ops {
            if !op.sites().all(|x| s.contains(x)) {
                continue;
            }
            let i = s.site_index(op.a);
            let name = |l: Option<super::Label>| l.map(|l| format!("{l}")).unwrap_or_else(|| String::from("?"));
            match op.kind {
                OpKind::PrepX => cells[i] = format!("P_X({})", name(op.label)),
                OpKind::PrepZ => cells[i] = format!("P_Z({})", name(op.label)),
                OpKind::MeasX => cells[i] = format!("M_X({})", name(before.get(op.a))),
                OpKind::MeasZ => cells[i] = format!("M_Z({})", name(before.get(op.a))),
                OpKind::Hadamard => cells[i] = format!("H({})", name(occ.get(op.a))),
                OpKind::Cnot | OpKind::Swap => {
                    let Some(b) = op.b else { continue };
                    if !op.a.is_adjacent(b) {
                        continue;
                    }
                    let swap = op.kind == OpKind::Swap;
                    let (first, second) = if op.a < b { (op.a, b) } else { (b, op.a) };
                    let forward = op.a == first;
                    let j = s.site_index(first);
                    if first.row == second.row {
                        horiz[j] = if swap { '⇔' } else if forward { '→' } else { '←' };
                    } else {
                        vert[j] = if swap { '⇕' } else if forward { '↓' } else { '↑' };
                    }
                }
            }
        }
    }
    let mut out = format!("Time step: {step}\n");
    for r in 0..rows {
        let mut line = String::new();
        for c in 0..cols {
            pad(&mut line, &cells[r * cols + c], CELL);
            if c + 1 < cols {
                let h = horiz[r * cols + c];
                if h == ' ' {
                    pad(&mut line, "", GAP);
                } else {
                    line.push(' ');
                    line.push(h);
                    line.push(' ');
                }
            }
        }
        out.push_str(line.trim_end());
        out.push('\n');
        if r + 1 < rows {
            let mut line = String::new();
            for c in 0..cols {
                let v = vert[r * cols + c];
                let mut t = String::new();
                t.push(v);
                pad(&mut line, &t, CELL + GAP);
            }
            out.push_str(line.trim_end());
            out.push('\n');
        }
    }
    Ok(out)
}
