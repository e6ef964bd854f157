//! The Bacon-Shor [[9,1,3]] subsystem code and its gauge-aware decoder.
//!
//! Qubits are numbered 1..9 row by row on a 3×3 grid. Internally qubit `k`
//! is bit `k - 1` of a 9-bit mask.

use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Result};
use crate::gf2::Basis;
use crate::pauli::PauliString;

pub const N: usize = 9;

const fn mask(qubits: &[u8]) -> u64 {
    let mut m = 0u64;
    let mut i = 0;
    while i < qubits.len() {
        m |= 1 << (qubits[i] - 1);
        i += 1;
    }
    m
}

/// X support of S1 and S2 (the two X-type stabilizers).
pub const STAB_X: [u64; 2] = [mask(&[1, 2, 3, 4, 5, 6]), mask(&[4, 5, 6, 7, 8, 9])];
/// Z support of S3 and S4 (the two Z-type stabilizers).
pub const STAB_Z: [u64; 2] = [mask(&[1, 2, 4, 5, 7, 8]), mask(&[2, 3, 5, 6, 8, 9])];
pub const LOGICAL_X: u64 = mask(&[1, 2, 3]);
pub const LOGICAL_Z: u64 = mask(&[1, 4, 7]);
/// X-type gauge generators: vertical neighbours in each column.
pub const GAUGE_X: [u64; 6] = [
    mask(&[1, 4]),
    mask(&[4, 7]),
    mask(&[2, 5]),
    mask(&[5, 8]),
    mask(&[3, 6]),
    mask(&[6, 9]),
];
/// Z-type gauge generators: horizontal neighbours in each row.
pub const GAUGE_Z: [u64; 6] = [
    mask(&[1, 2]),
    mask(&[2, 3]),
    mask(&[4, 5]),
    mask(&[5, 6]),
    mask(&[7, 8]),
    mask(&[8, 9]),
];

/// Eigenvalues of S1..S4. Bit `k` set means generator `k + 1` reads −1.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Syndrome(pub u8);

impl Syndrome {
    pub const TRIVIAL: Syndrome = Syndrome(0);

    pub fn from_signs(signs: [i8; 4]) -> Self {
        let mut bits = 0;
        for (k, &s) in signs.iter().enumerate() {
            if s < 0 {
                bits |= 1 << k;
            }
        }
        Syndrome(bits)
    }

    /// +1 or −1 for generator `k` in 1..=4.
    pub fn sign(self, k: usize) -> i8 {
        assert!((1..=4).contains(&k), "syndrome index {k} out of range");
        if self.0 >> (k - 1) & 1 == 1 {
            -1
        } else {
            1
        }
    }

    pub fn signs(self) -> [i8; 4] {
        [self.sign(1), self.sign(2), self.sign(3), self.sign(4)]
    }

    pub fn is_trivial(self) -> bool {
        self.0 & 0xF == 0
    }

    pub fn bits(self) -> u8 {
        self.0 & 0xF
    }
}

impl fmt::Display for Syndrome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = self.signs();
        write!(f, "({:+},{:+},{:+},{:+})", s[0], s[1], s[2], s[3])
    }
}

/// Logical coset of a syndrome-free residual.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub enum LogicalClass {
    I,
    X,
    Z,
    Y,
}

impl LogicalClass {
    pub fn from_bits(x: bool, z: bool) -> Self {
        match (x, z) {
            (false, false) => LogicalClass::I,
            (true, false) => LogicalClass::X,
            (false, true) => LogicalClass::Z,
            (true, true) => LogicalClass::Y,
        }
    }

    /// (has logical X component, has logical Z component).
    pub fn bits(self) -> (bool, bool) {
        match self {
            LogicalClass::I => (false, false),
            LogicalClass::X => (true, false),
            LogicalClass::Z => (false, true),
            LogicalClass::Y => (true, true),
        }
    }
}

impl fmt::Display for LogicalClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            LogicalClass::I => "I",
            LogicalClass::X => "X",
            LogicalClass::Z => "Z",
            LogicalClass::Y => "Y",
        })
    }
}

/// The Bacon-Shor code: stabilizers, logicals, gauge group and grid layout.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CodeDefinition {
    pub n: usize,
    pub stabilizer_generators: Vec<PauliString>,
    pub logical_x: PauliString,
    pub logical_z: PauliString,
    pub gauge_generators: Vec<PauliString>,
    /// `data_index_map[k - 1]` is the (row, col) of qubit `k`, both 1..=3.
    pub data_index_map: [(u8, u8); N],
    span: Basis,
}

impl CodeDefinition {
    pub fn bacon_shor() -> Self {
        let x = |m: u64| PauliString::from_bits(N, m, 0);
        let z = |m: u64| PauliString::from_bits(N, 0, m);
        let stabilizer_generators = alloc::vec![x(STAB_X[0]), x(STAB_X[1]), z(STAB_Z[0]), z(STAB_Z[1])];
        let gauge_generators: Vec<PauliString> = GAUGE_X
            .iter()
            .map(|&m| x(m))
            .chain(GAUGE_Z.iter().map(|&m| z(m)))
            .collect();
        let span = Basis::from_vectors(
            stabilizer_generators
                .iter()
                .chain(&gauge_generators)
                .map(PauliString::symplectic),
        );
        let mut data_index_map = [(0, 0); N];
        for (k, cell) in data_index_map.iter_mut().enumerate() {
            *cell = (k as u8 / 3 + 1, k as u8 % 3 + 1);
        }
        Self {
            n: N,
            stabilizer_generators,
            logical_x: x(LOGICAL_X),
            logical_z: z(LOGICAL_Z),
            gauge_generators,
            data_index_map,
            span,
        }
    }

    fn check(&self, p: &PauliString) -> Result<()> {
        if p.n() == self.n {
            Ok(())
        } else {
            Err(Error::SizeMismatch(p.n(), self.n))
        }
    }

    pub fn syndrome_of(&self, error: &PauliString) -> Result<Syndrome> {
        self.check(error)?;
        Ok(syndrome_bits(error.x_bits(), error.z_bits()))
    }

    /// Canonical correction: X on the top qubit of the flagged column and Z on
    /// the left qubit of the flagged row.
    pub fn decode(&self, s: Syndrome) -> PauliString {
        let (x, z) = decode_bits(s);
        PauliString::from_bits(N, x, z)
    }

    /// Class of a residual with trivial syndrome, modulo stabilizers and gauge.
    pub fn logical_class(&self, residual: &PauliString) -> Result<LogicalClass> {
        if !self.syndrome_of(residual)?.is_trivial() {
            return Err(Error::NontrivialSyndrome);
        }
        if self.span.contains(residual.symplectic()) {
            return Ok(LogicalClass::I);
        }
        let class = class_bits(residual.x_bits(), residual.z_bits());
        debug_assert_ne!(class, LogicalClass::I, "centralizer element outside gauge span with trivial commutators");
        Ok(class)
    }

    /// True iff `p` lies in the group generated by stabilizers and gauge operators.
    pub fn in_gauge_group(&self, p: &PauliString) -> Result<bool> {
        self.check(p)?;
        Ok(self.span.contains(p.symplectic()))
    }

    /// Stabilizer generators of the encoded |0⟩: S1..S4, Z_L and the X gauge
    /// fixed by the three column cat states.
    pub fn encoded_zero_stabilizers(&self) -> Vec<PauliString> {
        let mut out = self.stabilizer_generators.clone();
        out.push(self.logical_z.clone());
        out.extend(GAUGE_X[..4].iter().map(|&m| PauliString::from_bits(N, m, 0)));
        out
    }

    /// Stabilizer generators of the encoded |+⟩: S1..S4, X_L and the Z gauge
    /// fixed by the three row cat states.
    pub fn encoded_plus_stabilizers(&self) -> Vec<PauliString> {
        let mut out = self.stabilizer_generators.clone();
        out.push(self.logical_x.clone());
        out.extend(GAUGE_Z[..4].iter().map(|&m| PauliString::from_bits(N, 0, m)));
        out
    }
}

fn parity(v: u64) -> u8 {
    (v.count_ones() & 1) as u8
}

/// Syndrome of packed 9-bit masks.
pub fn syndrome_bits(x: u64, z: u64) -> Syndrome {
    Syndrome(
        parity(z & STAB_X[0])
            | parity(z & STAB_X[1]) << 1
            | parity(x & STAB_Z[0]) << 2
            | parity(x & STAB_Z[1]) << 3,
    )
}

/// Packed canonical correction `(x_mask, z_mask)` for a syndrome.
pub fn decode_bits(s: Syndrome) -> (u64, u64) {
    let col_top = |a: u8, b: u8| match (a, b) {
        (1, 0) => mask(&[1]),
        (1, 1) => mask(&[2]),
        (0, 1) => mask(&[3]),
        _ => 0,
    };
    let row_left = |a: u8, b: u8| match (a, b) {
        (1, 0) => mask(&[1]),
        (1, 1) => mask(&[4]),
        (0, 1) => mask(&[7]),
        _ => 0,
    };
    let b = s.bits();
    (col_top(b >> 2 & 1, b >> 3 & 1), row_left(b & 1, b >> 1 & 1))
}

/// Logical class read off the commutators with the bare logicals. Valid for
/// syndrome-free residuals: gauge operators commute with both logicals.
pub fn class_bits(x: u64, z: u64) -> LogicalClass {
    LogicalClass::from_bits(parity(x & LOGICAL_Z) == 1, parity(z & LOGICAL_X) == 1)
}

/// Residual class after ideal decoding of packed masks.
pub fn ideal_decode_class(x: u64, z: u64) -> LogicalClass {
    let (cx, cz) = decode_bits(syndrome_bits(x, z));
    class_bits(x ^ cx, z ^ cz)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pauli::Pauli;

    fn p(s: &str) -> PauliString {
        PauliString::parse(9, s).unwrap()
    }

    #[test]
    fn group_relations() {
        let c = CodeDefinition::bacon_shor();
        for a in &c.stabilizer_generators {
            for b in &c.stabilizer_generators {
                assert!(a.commutes(b).unwrap());
            }
            for g in &c.gauge_generators {
                assert!(a.commutes(g).unwrap());
            }
            assert!(a.commutes(&c.logical_x).unwrap());
            assert!(a.commutes(&c.logical_z).unwrap());
        }
        for g in &c.gauge_generators {
            assert!(g.commutes(&c.logical_x).unwrap());
            assert!(g.commutes(&c.logical_z).unwrap());
        }
        assert!(!c.logical_x.commutes(&c.logical_z).unwrap());
    }

    #[test]
    fn syndrome_examples() {
        let c = CodeDefinition::bacon_shor();
        assert_eq!(c.syndrome_of(&p("I")).unwrap().signs(), [1, 1, 1, 1]);
        assert_eq!(c.syndrome_of(&p("X1")).unwrap().signs(), [1, 1, -1, 1]);
        assert_eq!(c.syndrome_of(&p("Z2")).unwrap().signs(), [-1, 1, 1, 1]);
        assert!(c.syndrome_of(&PauliString::identity(4)).is_err());
    }

    #[test]
    fn decode_examples() {
        let c = CodeDefinition::bacon_shor();
        assert!(c.decode(Syndrome::TRIVIAL).is_identity());
        assert_eq!(c.decode(Syndrome::from_signs([1, 1, -1, 1])), p("X1"));
        assert_eq!(c.decode(Syndrome::from_signs([-1, -1, -1, -1])), p("X2.Z4"));
    }

    #[test]
    fn class_examples() {
        let c = CodeDefinition::bacon_shor();
        assert_eq!(c.logical_class(&p("X1.X4")).unwrap(), LogicalClass::I);
        assert_eq!(c.logical_class(&p("X1.X2.X3")).unwrap(), LogicalClass::X);
        let zg = p("Z1.Z4.Z7").multiply(&p("Z1.Z2")).unwrap().multiply(&p("Z2.Z3")).unwrap();
        assert_eq!(c.logical_class(&zg).unwrap(), LogicalClass::Z);
        assert_eq!(c.logical_class(&p("X1")), Err(Error::NontrivialSyndrome));
    }

    #[test]
    fn gauge_span_rank() {
        let c = CodeDefinition::bacon_shor();
        assert_eq!(c.span.rank(), 12);
    }

    #[test]
    fn weight_one_errors_are_corrected() {
        let c = CodeDefinition::bacon_shor();
        for q in 0..9 {
            for pa in Pauli::NONTRIVIAL {
                let e = PauliString::single(9, q, pa);
                let r = e.multiply(&c.decode(c.syndrome_of(&e).unwrap())).unwrap();
                assert!(c.syndrome_of(&r).unwrap().is_trivial());
                assert_eq!(c.logical_class(&r).unwrap(), LogicalClass::I, "{e}");
            }
        }
    }

    #[test]
    fn encoded_states_are_full_rank_and_abelian() {
        let c = CodeDefinition::bacon_shor();
        for gens in [c.encoded_zero_stabilizers(), c.encoded_plus_stabilizers()] {
            assert_eq!(gens.len(), 9);
            assert_eq!(crate::gf2::rank(gens.iter().map(PauliString::symplectic)), 9);
            for a in &gens {
                for b in &gens {
                    assert!(a.commutes(b).unwrap());
                }
            }
        }
    }
}
