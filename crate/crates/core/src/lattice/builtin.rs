//! The built-in schedules: error correction, encoded preparations and the
//! encoded gates.

use alloc::format;
use alloc::string::ToString;
use alloc::vec;
use alloc::vec::Vec;

use super::{block_homes, Label, LatticeOp, Parity, Schedule, Site, TimeStep};
use crate::error::{Error, Result};

pub const BUILTIN_NAMES: [&str; 7] = [
    "ec",
    "prep0",
    "prep_plus",
    "cnot_encoded",
    "swap_encoded",
    "hadamard_encoded",
    "meas_transversal",
];

pub fn builtin(name: &str) -> Result<Schedule> {
    match name {
        "ec" => Ok(ec()),
        "prep0" => Ok(prep0()),
        "prep_plus" => Ok(prep_plus()),
        "cnot_encoded" => Ok(cnot_encoded()),
        "swap_encoded" => Ok(swap_encoded()),
        "hadamard_encoded" => Ok(hadamard_encoded()),
        "meas_transversal" => Ok(meas_transversal()),
        _ => Err(Error::UnknownBuiltin(name.to_string())),
    }
}

fn s(r: u8, c: u8) -> Site {
    Site::new(r, c)
}
fn a(k: u16) -> Label {
    Label::Ancilla(k)
}
fn d(k: u16) -> Label {
    Label::Data(k)
}
fn px(r: u8, c: u8, l: Label) -> LatticeOp {
    LatticeOp::prep_x(s(r, c), l)
}
fn pz(r: u8, c: u8, l: Label) -> LatticeOp {
    LatticeOp::prep_z(s(r, c), l)
}
fn cx(r1: u8, c1: u8, r2: u8, c2: u8) -> LatticeOp {
    LatticeOp::cnot(s(r1, c1), s(r2, c2))
}
fn sw(r1: u8, c1: u8, r2: u8, c2: u8) -> LatticeOp {
    LatticeOp::swap(s(r1, c1), s(r2, c2))
}
fn mx(r: u8, c: u8) -> LatticeOp {
    LatticeOp::meas_x(s(r, c))
}
fn mz(r: u8, c: u8) -> LatticeOp {
    LatticeOp::meas_z(s(r, c))
}

fn parity(name: &str, labels: &[u16]) -> Parity {
    Parity { name: name.into(), labels: labels.iter().map(|&k| a(k)).collect() }
}

/// Syndrome extraction in seven steps. Ancillas a1..a9 form three row cats
/// read out in Z (they see X errors, giving S3 and S4); a10..a18 form three
/// column cats in the Hadamard basis read out in X (giving S1 and S2).
fn ec() -> Schedule {
    let mut sch = Schedule::new("ec", 7, 7, block_homes(1, 0));
    sch.steps = vec![
        TimeStep::new(vec![
            pz(1, 3, a(1)),
            px(1, 4, a(2)),
            pz(3, 3, a(4)),
            px(3, 4, a(5)),
            px(3, 7, a(16)),
            pz(4, 1, a(11)),
            pz(4, 7, a(17)),
            px(5, 1, a(12)),
            pz(5, 3, a(14)),
            px(6, 3, a(15)),
            px(7, 4, a(8)),
            pz(7, 5, a(9)),
        ]),
        TimeStep::new(vec![
            cx(1, 4, 1, 3),
            pz(1, 5, a(3)),
            px(3, 1, a(10)),
            cx(3, 4, 3, 3),
            pz(3, 5, a(6)),
            cx(3, 7, 4, 7),
            cx(5, 1, 4, 1),
            px(4, 3, a(13)),
            cx(6, 3, 5, 3),
            px(5, 7, a(18)),
            pz(7, 3, a(7)),
            cx(7, 4, 7, 5),
        ]),
        TimeStep::new(vec![
            sw(1, 3, 1, 2),
            cx(1, 4, 1, 5),
            sw(3, 7, 2, 7),
            sw(3, 3, 3, 2),
            cx(3, 4, 3, 5),
            cx(3, 1, 4, 1),
            cx(4, 3, 5, 3),
            cx(5, 7, 4, 7),
            sw(5, 1, 6, 1),
            cx(6, 3, 6, 4),
            cx(7, 4, 7, 3),
            sw(7, 5, 7, 6),
        ]),
        TimeStep::new(vec![
            sw(1, 5, 1, 6),
            cx(2, 2, 1, 2),
            cx(2, 4, 1, 4),
            cx(2, 7, 2, 6),
            sw(3, 1, 2, 1),
            sw(3, 5, 3, 6),
            cx(4, 2, 3, 2),
            sw(4, 3, 3, 3),
            cx(4, 4, 3, 4),
            cx(4, 7, 4, 6),
            sw(5, 3, 5, 4),
            sw(5, 7, 6, 7),
            cx(6, 1, 6, 2),
            mx(6, 3),
            cx(6, 4, 7, 4),
            cx(6, 6, 7, 6),
            sw(7, 3, 7, 2),
        ]),
        TimeStep::new(vec![
            cx(2, 6, 1, 6),
            mz(1, 2),
            mz(1, 4),
            cx(2, 1, 2, 2),
            sw(3, 3, 2, 3),
            mx(2, 7),
            mz(3, 2),
            mz(3, 4),
            cx(4, 6, 3, 6),
            cx(4, 1, 4, 2),
            mx(4, 7),
            cx(5, 4, 4, 4),
            mx(6, 1),
            cx(6, 7, 6, 6),
            cx(6, 2, 7, 2),
            mz(7, 4),
            mz(7, 6),
        ]),
        TimeStep::new(vec![
            mz(1, 6),
            mx(2, 1),
            cx(2, 3, 2, 4),
            mz(3, 6),
            mx(4, 1),
            mx(5, 4),
            mx(6, 7),
            mz(7, 2),
        ]),
        TimeStep::new(vec![mx(2, 3)]),
    ];
    sch.syndrome_map = vec![
        parity("s1", &[10, 11, 13, 14, 16, 17]),
        parity("s2", &[11, 12, 14, 15, 17, 18]),
        parity("s3", &[1, 2, 4, 5, 7, 8]),
        parity("s4", &[2, 3, 5, 6, 8, 9]),
    ];
    sch
}

/// Code index `k` (1..9, row-major on the code grid) of the qubit one copy of
/// which sits in lattice column `2 + 2*(col-1)` or its right neighbour.
///
/// The verified preparation uses four copies of each column cat: A = a1..a9,
/// B = a10..a18, C = a19..a27 and the data D = d1..d9. Copy index `k` of A is
/// `a_k`, of B `a_{k+9}`, of C `a_{k+18}`.
///
/// `corrected` selects the roles that produce the encoded |0⟩ (Hadamard-basis
/// column cats); without it the preparation bases and the direction of the
/// two cat-building CNOT layers are exactly as drawn in the appendix grids,
/// which produce the Hadamard-rotated state.
fn verified_prep(name: &str, corrected: bool) -> Schedule {
    let mut sch = Schedule::new(name, 7, 7, block_homes(1, 0));
    let cols = 2..=7u8;
    // Lattice row r holds code row `(r-1) % 3 + 1` of some copy; for the even
    // column pair member (cols 2,4,6) and the odd one (cols 3,5,7).
    let row_labels = |r: u8| -> Vec<Label> {
        cols.clone()
            .map(|c| {
                let code_col = (c as u16 - 2) / 2; // 0..2
                let even = c % 2 == 0;
                let (code_row, first, second): (u16, fn(u16) -> Label, fn(u16) -> Label) = match r {
                    1 => (0, a, b_copy),
                    2 => (1, a, b_copy),
                    3 => (2, a, b_copy),
                    4 => (0, d, c_copy),
                    5 => (1, d, c_copy),
                    _ => (2, d, c_copy),
                };
                let k = code_row * 3 + code_col + 1;
                if even {
                    first(k)
                } else {
                    second(k)
                }
            })
            .collect()
    };
    let prep_row = |r: u8, x: bool| -> Vec<LatticeOp> {
        cols.clone()
            .zip(row_labels(r))
            .map(|(c, l)| if x { px(r, c, l) } else { pz(r, c, l) })
            .collect()
    };
    let vertical = |from: u8, to: u8| -> Vec<LatticeOp> { cols.clone().map(|c| cx(from, c, to, c)).collect() };

    let (ends_x, mid_x) = if corrected { (true, false) } else { (false, true) };
    let mut s1 = prep_row(2, mid_x);
    s1.extend(prep_row(3, ends_x));
    s1.extend(prep_row(4, ends_x));
    s1.extend(prep_row(5, mid_x));

    let mut s2 = prep_row(1, ends_x);
    let mut s3 = Vec::new();
    if corrected {
        s2.extend(vertical(3, 2));
        s2.extend(vertical(4, 5));
        s3.extend(vertical(1, 2));
    } else {
        s2.extend(vertical(2, 3));
        s2.extend(vertical(5, 4));
        s3.extend(vertical(2, 1));
    }
    s2.extend(prep_row(6, ends_x));
    for c in [2u8, 4, 6] {
        s3.push(cx(3, c + 1, 3, c));
    }
    for c in [2u8, 4, 6] {
        s3.push(cx(4, c, 4, c + 1));
    }
    if corrected {
        s3.extend(vertical(6, 5));
    } else {
        s3.extend(vertical(5, 6));
    }

    let mut s4 = Vec::new();
    for r in [1u8, 2] {
        for c in [2u8, 4, 6] {
            s4.push(cx(r, c + 1, r, c));
        }
    }
    for c in [2u8, 4, 6] {
        s4.push(mz(3, c));
    }
    for c in [3u8, 5, 7] {
        s4.push(mz(4, c));
    }
    for r in [5u8, 6] {
        for c in [2u8, 4, 6] {
            s4.push(cx(r, c, r, c + 1));
        }
    }

    let mut s5 = Vec::new();
    for r in [1u8, 2] {
        for c in [2u8, 4, 6] {
            s5.push(mz(r, c));
        }
    }
    s5.extend(cols.clone().map(|c| sw(3, c, 4, c)));
    for r in [5u8, 6] {
        for c in [3u8, 5, 7] {
            s5.push(mz(r, c));
        }
    }

    let mut s6: Vec<LatticeOp> = cols.clone().map(|c| sw(2, c, 3, c)).collect();
    s6.extend(cols.clone().map(|c| sw(4, c, 5, c)));

    let mut s7 = Vec::new();
    for (r1, r2) in [(1u8, 2u8), (3, 4), (5, 6)] {
        for c in [3u8, 5, 7] {
            s7.push(sw(r1, c, r2, c));
        }
    }

    let mut s8 = Vec::new();
    let mut s9 = Vec::new();
    for r in [2u8, 4, 6] {
        for c in [2u8, 4, 6] {
            s8.push(cx(r, c + 1, r, c));
            s9.push(mx(r, c + 1));
        }
    }

    sch.steps = [s1, s2, s3, s4, s5, s6, s7, s8, s9].into_iter().map(TimeStep::new).collect();
    sch.checks = if corrected {
        let mut v = vec![
            parity("c1", &[1, 4, 7]),
            parity("c2", &[2, 5, 8]),
            parity("c3", &[3, 6, 9]),
            parity("c4", &[19, 22, 25]),
            parity("c5", &[20, 23, 26]),
            parity("c6", &[21, 24, 27]),
        ];
        let pairs: [[u16; 2]; 6] = [[10, 13], [13, 16], [11, 14], [14, 17], [12, 15], [15, 18]];
        for (i, p) in pairs.iter().enumerate() {
            v.push(parity(&format!("c{}", 7 + i), p));
        }
        v
    } else {
        Vec::new()
    };
    sch
}

fn b_copy(k: u16) -> Label {
    a(k + 9)
}

fn c_copy(k: u16) -> Label {
    a(k + 18)
}

/// Verified encoded |0⟩ in nine steps.
fn prep0() -> Schedule {
    verified_prep("prep0", true)
}

/// The preparation exactly as drawn in the appendix grids.
pub fn appendix_prep0() -> Schedule {
    verified_prep("prep0_appendix", false)
}

/// Encoded |+⟩: the appendix preparation mirrored across the diagonal, so
/// the computational-basis column cats become row cats.
fn prep_plus() -> Schedule {
    let transpose_code = |k: u16| {
        let (r, c) = ((k - 1) / 3, (k - 1) % 3);
        c * 3 + r + 1
    };
    let mut sch = appendix_prep0().transpose().relabel(|l| match l {
        Label::Data(k) => Label::Data(transpose_code(k)),
        other => other,
    });
    sch.name = "prep_plus".into();
    sch.data_home = block_homes(1, 0);
    let mut v = Vec::new();
    let pairs: [[u16; 2]; 12] = [
        [1, 4],
        [4, 7],
        [2, 5],
        [5, 8],
        [3, 6],
        [6, 9],
        [19, 22],
        [22, 25],
        [20, 23],
        [23, 26],
        [21, 24],
        [24, 27],
    ];
    for (i, p) in pairs.iter().enumerate() {
        v.push(parity(&format!("c{}", i + 1), p));
    }
    for (i, t) in [[10u16, 13, 16], [11, 14, 17], [12, 15, 18]].iter().enumerate() {
        v.push(parity(&format!("c{}", 13 + i), t));
    }
    sch.checks = v;
    sch
}

/// The 16-site ring through rows and columns 2..6, clockwise from (2,2).
fn ring() -> Vec<Site> {
    let mut v = Vec::new();
    for c in 2..=6 {
        v.push(s(2, c));
    }
    for r in 3..=6 {
        v.push(s(r, 6));
    }
    for c in (2..=5).rev() {
        v.push(s(6, c));
    }
    for r in (3..=5).rev() {
        v.push(s(r, 2));
    }
    v
}

/// Transversal Hadamard, then a quarter turn of the 3×3 array: every qubit
/// but the centre steps four sites clockwise around the ring.
fn hadamard_encoded() -> Schedule {
    let mut sch = Schedule::new("hadamard_encoded", 7, 7, block_homes(1, 0));
    sch.steps.push(TimeStep::new(sch.data_home.iter().map(|&(_, h)| LatticeOp::hadamard(h)).collect()));
    let ring = ring();
    for t in 0..4 {
        let ops = (0..8).map(|j| {
            let i = 2 * j + t;
            LatticeOp::swap(ring[i % 16], ring[(i + 1) % 16])
        });
        sch.steps.push(TimeStep::new(ops.collect()));
    }
    sch
}

/// Two blocks side by side on a 7×14 grid.
fn two_block(name: &str) -> Schedule {
    let mut homes = block_homes(1, 0);
    homes.extend(block_homes(10, 7));
    Schedule::new(name, 7, 14, homes)
}

/// Transversal CNOT from block 1 (control) to block 2: block 1 rises one row
/// and slides right, block 2 slides left along its own rows, so code rows
/// interleave and each pair of partners ends vertically adjacent.
fn cnot_encoded() -> Schedule {
    let mut sch = two_block("cnot_encoded");
    let mut moves: Vec<Vec<LatticeOp>> = Vec::new();
    // Step 1: block 1 up, block 2 one column left.
    let mut m = Vec::new();
    for r in [2u8, 4, 6] {
        for c in [2u8, 4, 6] {
            m.push(sw(r, c, r - 1, c));
        }
        for c in [9u8, 11, 13] {
            m.push(sw(r, c, r, c - 1));
        }
    }
    moves.push(m);
    // Steps 2-4: block 1 right on rows 1,3,5; block 2 left on rows 2,4,6.
    for t in 0..3u8 {
        let mut m = Vec::new();
        for r in [1u8, 3, 5] {
            for c in [2u8, 4, 6] {
                m.push(sw(r, c + t, r, c + t + 1));
            }
        }
        for r in [2u8, 4, 6] {
            for c in [8u8, 10, 12] {
                m.push(sw(r, c - t, r, c - t - 1));
            }
        }
        moves.push(m);
    }
    for m in &moves {
        sch.steps.push(TimeStep::new(m.clone()));
    }
    let mut gate = Vec::new();
    for r in [1u8, 3, 5] {
        for c in [5u8, 7, 9] {
            gate.push(cx(r, c, r + 1, c));
        }
    }
    sch.steps.push(TimeStep::new(gate));
    for m in moves.iter().rev() {
        sch.steps.push(TimeStep::new(m.clone()));
    }
    sch
}

/// Block exchange: along each data row block 1 walks right and block 2 left;
/// where two data qubits meet they swap with each other.
fn swap_encoded() -> Schedule {
    let mut sch = two_block("swap_encoded");
    for t in 0..7u8 {
        let mut ops = Vec::new();
        for r in [2u8, 4, 6] {
            let left: Vec<u8> = [2u8, 4, 6].iter().map(|c| c + t).collect();
            let right: Vec<u8> = [9u8, 11, 13].iter().map(|c| c - t).collect();
            for &x in &left {
                ops.push(sw(r, x, r, x + 1));
            }
            for &y in &right {
                if !left.contains(&(y - 1)) {
                    ops.push(sw(r, y - 1, r, y));
                }
            }
        }
        sch.steps.push(TimeStep::new(ops));
    }
    sch
}

/// Logical Z readout: every data qubit measured in Z.
fn meas_transversal() -> Schedule {
    let mut sch = Schedule::new("meas_transversal", 7, 7, block_homes(1, 0));
    sch.steps.push(TimeStep::new(sch.data_home.iter().map(|&(_, h)| LatticeOp::meas_z(h)).collect()));
    sch
}
