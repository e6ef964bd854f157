//! Fast malignancy decisions from precomputed, linear fault effects.
//!
//! Propagation is linear over GF(2), so every fault is summarised by the
//! 28 bits the decision depends on:
//!
//! | bits   | content                                            |
//! |--------|----------------------------------------------------|
//! | 0..8   | leading syndromes, block 1 then block 2            |
//! | 8..16  | trailing syndromes, block 1 then block 2           |
//! | 16..22 | block 1 output: syndrome (4) and logical bits (2)  |
//! | 22..28 | block 2 output: syndrome (4) and logical bits (2)  |
//!
//! The effect of a fault pair is the XOR of the two summaries. Leading
//! corrections and their images under the gate and trailing ECs, the
//! trailing corrections, and the final ideal decoding are table lookups.

use alloc::vec::Vec;
use core::ops::Range;

use super::{AlphaMatrix, ExRec, LocationType};
use crate::code::{class_bits, decode_bits, syndrome_bits, LogicalClass};
use crate::error::Result;
use crate::lattice::one_rec;
use crate::pauli::PauliString;
use crate::propagation::{Fault, FaultEvent, PropagationResult, Propagator};

/// Packed summary of one fault's consequences.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Effect(pub u32);

impl Effect {
    pub fn leading(self) -> u8 {
        self.0 as u8
    }

    pub fn trailing(self) -> u8 {
        (self.0 >> 8) as u8
    }

    pub fn output(self) -> u16 {
        (self.0 >> 16) as u16 & 0xFFF
    }
}

/// Output summary of one 9-qubit block: syndrome in bits 0..4, then whether
/// it anticommutes with Z_L (bit 4) and with X_L (bit 5).
fn block_summary(x: u64, z: u64) -> u32 {
    let (lx, lz) = class_bits(x, z).bits();
    syndrome_bits(x, z).bits() as u32 | (lx as u32) << 4 | (lz as u32) << 5
}

fn output_summary(r: &PauliString) -> u32 {
    let (x, z) = (r.x_bits(), r.z_bits());
    block_summary(x & 0x1FF, z & 0x1FF) | block_summary(x >> 9 & 0x1FF, z >> 9 & 0x1FF) << 6
}

fn pack_syndromes(p: &Propagator, r: &PropagationResult) -> Result<u32> {
    let s = p.extract_syndromes(r)?;
    Ok(s.iter().enumerate().fold(0u32, |acc, (k, syn)| acc | (syn.bits() as u32) << (4 * k)))
}

/// Correction for an 8-bit pair of block syndromes as an 18-qubit Pauli.
fn correction(pair: u8) -> PauliString {
    let (x1, z1) = decode_bits(crate::code::Syndrome(pair & 0xF));
    let (x2, z2) = decode_bits(crate::code::Syndrome(pair >> 4));
    PauliString::from_bits(18, x1 | x2 << 9, z1 | z2 << 9)
}

/// Single-fault sweep result.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SingleFaultReport {
    pub faults_tried: usize,
    /// (location id, fault) pairs that alone cause a logical failure.
    pub failures: Vec<(usize, Fault)>,
}

#[derive(Clone, Debug)]
pub struct Engine {
    types: Vec<LocationType>,
    effects: Vec<Vec<(Fault, Effect)>>,
    distinct: Vec<Vec<u32>>,
    lead: [u32; 256],
    trail: [u32; 256],
    fails: [bool; 64],
}

impl Engine {
    pub fn new(x: &ExRec) -> Result<Self> {
        let p = &x.propagator;
        let mut effects = Vec::with_capacity(p.locations().len());
        let mut distinct = Vec::with_capacity(p.locations().len());
        for loc in p.locations() {
            let mut v = Vec::new();
            for f in Fault::all(loc.loc_type) {
                let r = p.run(&[FaultEvent { location: loc.id, fault: f }])?;
                let e = pack_syndromes(p, &r)? | output_summary(&r.residual) << 16;
                v.push((f, Effect(e)));
            }
            let mut d: Vec<u32> = v.iter().map(|&(_, e)| e.0).collect();
            d.sort_unstable();
            d.dedup();
            effects.push(v);
            distinct.push(d);
        }

        // Image of each leading correction under the gate and trailing ECs.
        let tail = one_rec("cnot")?;
        let tail = Propagator::new(&tail)?;
        let mut lead = [0u32; 256];
        for (pair, slot) in lead.iter_mut().enumerate() {
            let r = tail.run_from(&correction(pair as u8), &[])?;
            *slot = pack_syndromes(&tail, &r)? << 8 | output_summary(&r.residual) << 16;
        }
        let mut trail = [0u32; 256];
        for (pair, slot) in trail.iter_mut().enumerate() {
            *slot = output_summary(&correction(pair as u8));
        }
        let mut fails = [false; 64];
        for (b, slot) in fails.iter_mut().enumerate() {
            let syn = crate::code::Syndrome(b as u8 & 0xF);
            let (cx, cz) = decode_bits(syn);
            let (dx, dz) = class_bits(cx, cz).bits();
            let lx = (b >> 4 & 1 == 1) ^ dx;
            let lz = (b >> 5 & 1 == 1) ^ dz;
            *slot = LogicalClass::from_bits(lx, lz) != LogicalClass::I;
        }
        Ok(Self {
            types: p.locations().iter().map(|l| l.loc_type).collect(),
            effects,
            distinct,
            lead,
            trail,
            fails,
        })
    }

    pub fn len(&self) -> usize {
        self.types.len()
    }

    pub fn is_empty(&self) -> bool {
        self.types.is_empty()
    }

    pub fn effects(&self, location: usize) -> &[(Fault, Effect)] {
        &self.effects[location]
    }

    /// Trailing corrections, output classes and the ideal decoding for the
    /// combined effect of clean-input faults.
    #[inline]
    pub fn fails(&self, e: u32) -> bool {
        let e = e ^ self.lead[(e & 0xFF) as usize];
        let out = (e >> 16) ^ self.trail[(e >> 8 & 0xFF) as usize];
        self.fails[(out & 63) as usize] || self.fails[(out >> 6 & 63) as usize]
    }

    pub fn single_faults(&self) -> SingleFaultReport {
        let mut r = SingleFaultReport::default();
        for (id, v) in self.effects.iter().enumerate() {
            for &(f, e) in v {
                r.faults_tried += 1;
                if self.fails(e.0) {
                    r.failures.push((id, f));
                }
            }
        }
        r
    }

    /// True iff some fault at `i` together with some fault at `j` fails.
    pub fn is_malignant(&self, i: usize, j: usize) -> bool {
        if i == j {
            return self.distinct[i].iter().any(|&e| self.fails(e));
        }
        let (a, b) = (&self.distinct[i], &self.distinct[j]);
        a.iter().any(|&ea| b.iter().any(|&eb| self.fails(ea ^ eb)))
    }

    /// A failing fault assignment for the pair, if any.
    pub fn witness(&self, i: usize, j: usize) -> Option<(Fault, Fault)> {
        for &(fa, ea) in &self.effects[i] {
            for &(fb, eb) in &self.effects[j] {
                if self.fails(ea.0 ^ eb.0) {
                    return Some((fa, fb));
                }
            }
        }
        None
    }

    /// α contributions of all pairs `(i, j)` with `j < i` and `i` in `rows`.
    pub fn alpha_rows(&self, rows: Range<usize>) -> AlphaMatrix {
        let mut m = AlphaMatrix::default();
        for i in rows {
            let ti = self.types[i];
            if ti == LocationType::Hadamard {
                continue;
            }
            for j in 0..i {
                let tj = self.types[j];
                if tj != LocationType::Hadamard && self.is_malignant(i, j) {
                    m.add(ti.number(), tj.number(), 1);
                }
            }
        }
        m
    }

    pub fn malignant_matrix(&self) -> AlphaMatrix {
        self.alpha_rows(0..self.len())
    }
}

/// α for the exRec, single-threaded.
pub fn malignant_matrix(x: &ExRec) -> Result<AlphaMatrix> {
    Ok(Engine::new(x)?.malignant_matrix())
}
