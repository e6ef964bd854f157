//! Phaseless Pauli operators on `n` qubits.

use alloc::string::ToString;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use crate::error::{Error, Result};

/// A single-qubit Pauli, up to phase.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub enum Pauli {
    I,
    X,
    Y,
    Z,
}

impl Pauli {
    pub const NONTRIVIAL: [Pauli; 3] = [Pauli::X, Pauli::Y, Pauli::Z];

    pub fn from_bits(x: bool, z: bool) -> Self {
        match (x, z) {
            (false, false) => Pauli::I,
            (true, false) => Pauli::X,
            (true, true) => Pauli::Y,
            (false, true) => Pauli::Z,
        }
    }

    pub fn x(self) -> bool {
        matches!(self, Pauli::X | Pauli::Y)
    }

    pub fn z(self) -> bool {
        matches!(self, Pauli::Z | Pauli::Y)
    }

    pub fn symbol(self) -> char {
        match self {
            Pauli::I => 'I',
            Pauli::X => 'X',
            Pauli::Y => 'Y',
            Pauli::Z => 'Z',
        }
    }

    pub fn from_symbol(c: char) -> Option<Self> {
        match c {
            'I' => Some(Pauli::I),
            'X' => Some(Pauli::X),
            'Y' => Some(Pauli::Y),
            'Z' => Some(Pauli::Z),
            _ => None,
        }
    }
}

/// An `n`-qubit Pauli operator stored as X and Z bit masks. Y is both bits.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PauliString {
    n: usize,
    x: Vec<u64>,
    z: Vec<u64>,
}

fn words(n: usize) -> usize {
    n.div_ceil(64)
}

impl PauliString {
    pub fn identity(n: usize) -> Self {
        Self {
            n,
            x: vec![0; words(n)],
            z: vec![0; words(n)],
        }
    }

    /// A Pauli acting as `p` on qubit `q` (0-based) and trivially elsewhere.
    pub fn single(n: usize, q: usize, p: Pauli) -> Self {
        let mut s = Self::identity(n);
        s.set(q, p);
        s
    }

    /// Builds from the low `n` bits of packed masks (only for `n <= 64`).
    pub fn from_bits(n: usize, x: u64, z: u64) -> Self {
        assert!(n <= 64, "packed masks hold at most 64 qubits");
        let keep = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
        let mut s = Self::identity(n);
        if n > 0 {
            s.x[0] = x & keep;
            s.z[0] = z & keep;
        }
        s
    }

    /// Packed low word of the X mask.
    pub fn x_bits(&self) -> u64 {
        self.x.first().copied().unwrap_or(0)
    }

    /// Packed low word of the Z mask.
    pub fn z_bits(&self) -> u64 {
        self.z.first().copied().unwrap_or(0)
    }

    /// Symplectic vector `x | z << n` for `n <= 32`.
    pub fn symplectic(&self) -> u64 {
        assert!(self.n <= 32, "symplectic packing holds at most 32 qubits");
        self.x_bits() | (self.z_bits() << self.n)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, q: usize) -> Pauli {
        assert!(q < self.n, "qubit {q} out of range for {} qubits", self.n);
        let (w, b) = (q / 64, q % 64);
        Pauli::from_bits(self.x[w] >> b & 1 == 1, self.z[w] >> b & 1 == 1)
    }

    pub fn set(&mut self, q: usize, p: Pauli) {
        assert!(q < self.n, "qubit {q} out of range for {} qubits", self.n);
        let (w, m) = (q / 64, 1u64 << (q % 64));
        self.x[w] = if p.x() { self.x[w] | m } else { self.x[w] & !m };
        self.z[w] = if p.z() { self.z[w] | m } else { self.z[w] & !m };
    }

    pub fn is_identity(&self) -> bool {
        self.x.iter().chain(&self.z).all(|&w| w == 0)
    }

    pub fn weight(&self) -> usize {
        self.x
            .iter()
            .zip(&self.z)
            .map(|(x, z)| (x | z).count_ones() as usize)
            .sum()
    }

    /// Qubits with a nontrivial factor, ascending.
    pub fn support(&self) -> Vec<usize> {
        (0..self.n).filter(|&q| self.get(q) != Pauli::I).collect()
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.n == other.n {
            Ok(())
        } else {
            Err(Error::SizeMismatch(self.n, other.n))
        }
    }

    /// Product up to phase: XOR of the masks.
    pub fn multiply(&self, other: &Self) -> Result<Self> {
        let mut out = self.clone();
        out.mul_assign(other)?;
        Ok(out)
    }

    pub fn mul_assign(&mut self, other: &Self) -> Result<()> {
        self.check(other)?;
        for (a, b) in self.x.iter_mut().zip(&other.x) {
            *a ^= b;
        }
        for (a, b) in self.z.iter_mut().zip(&other.z) {
            *a ^= b;
        }
        Ok(())
    }

    /// True iff the symplectic inner product vanishes.
    pub fn commutes(&self, other: &Self) -> Result<bool> {
        self.check(other)?;
        let mut parity = 0u32;
        for w in 0..self.x.len() {
            parity ^= ((self.x[w] & other.z[w]) ^ (self.z[w] & other.x[w])).count_ones() & 1;
        }
        Ok(parity == 0)
    }

    /// Parses the dotted literal form, e.g. `X1.Z5.Y9` or `I` (1-indexed).
    pub fn parse(n: usize, text: &str) -> Result<Self> {
        let bad = || Error::PauliLiteral(text.to_string());
        let text = text.trim();
        let mut s = Self::identity(n);
        if text == "I" {
            return Ok(s);
        }
        if text.is_empty() {
            return Err(bad());
        }
        for token in text.split('.') {
            let mut chars = token.chars();
            let p = chars.next().and_then(Pauli::from_symbol).ok_or_else(bad)?;
            if p == Pauli::I {
                return Err(bad());
            }
            let digits = chars.as_str();
            if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
                return Err(bad());
            }
            let q: usize = digits.parse().map_err(|_| bad())?;
            if q == 0 || q > n || s.get(q - 1) != Pauli::I {
                return Err(bad());
            }
            s.set(q - 1, p);
        }
        Ok(s)
    }
}

impl fmt::Display for PauliString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for q in 0..self.n {
            let p = self.get(q);
            if p != Pauli::I {
                if !first {
                    f.write_str(".")?;
                }
                write!(f, "{}{}", p.symbol(), q + 1)?;
                first = false;
            }
        }
        if first {
            f.write_str("I")?;
        }
        Ok(())
    }
}

impl fmt::Debug for PauliString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PauliString({}; {})", self.n, self)
    }
}

/// Parses a literal whose size is the largest index mentioned.
impl FromStr for PauliString {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        let n = text
            .split('.')
            .filter_map(|t| t.get(1..).and_then(|d| d.parse::<usize>().ok()))
            .max()
            .unwrap_or(0);
        Self::parse(n, text)
    }
}
