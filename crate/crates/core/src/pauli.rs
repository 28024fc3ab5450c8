//! Phased Pauli operators `i^delta * X^x * Z^z` on up to [`MAX_QUBITS`] qubits.
//!
//! Qubit 1 is bit 0 of both masks. All `X` factors are written to the left of
//! all `Z` factors, so `Y` on a single qubit is `i^1 * X Z`.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// Largest qubit count supported by the bit-mask representation.
pub const MAX_QUBITS: usize = 16;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PhasedPauli {
    n: usize,
    x: u32,
    z: u32,
    delta: u8,
}

impl PhasedPauli {
    /// Builds a Pauli from raw masks. Bits above `n` must be clear.
    pub fn new(n: usize, x: u32, z: u32, delta: u8) -> Result<Self> {
        check_n(n)?;
        let mask = full_mask(n);
        if x & !mask != 0 || z & !mask != 0 {
            return Err(Error::InvalidGate(format!("bit masks x={x:#b} z={z:#b} exceed {n} qubits")));
        }
        Ok(Self { n, x, z, delta: delta & 3 })
    }

    pub fn identity(n: usize) -> Self {
        Self { n, x: 0, z: 0, delta: 0 }
    }

    /// `X` on qubit `q` (1-based).
    pub fn x_on(n: usize, q: usize) -> Self {
        debug_assert!(q >= 1 && q <= n);
        Self { n, x: 1 << (q - 1), z: 0, delta: 0 }
    }

    /// `Z` on qubit `q` (1-based).
    pub fn z_on(n: usize, q: usize) -> Self {
        debug_assert!(q >= 1 && q <= n);
        Self { n, x: 0, z: 1 << (q - 1), delta: 0 }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn x_bits(&self) -> u32 {
        self.x
    }

    pub fn z_bits(&self) -> u32 {
        self.z
    }

    pub fn delta(&self) -> u8 {
        self.delta
    }

    pub fn x_at(&self, q: usize) -> bool {
        self.x >> (q - 1) & 1 == 1
    }

    pub fn z_at(&self, q: usize) -> bool {
        self.z >> (q - 1) & 1 == 1
    }

    /// Multiplies by the scalar `i^k`.
    pub fn times_i_pow(self, k: u8) -> Self {
        Self { delta: (self.delta + k) & 3, ..self }
    }

    /// True when the operator is Hermitian: `delta = sum_j x_j z_j (mod 2)`.
    pub fn is_hermitian(&self) -> bool {
        (self.delta as u32 & 1) == (self.x & self.z).count_ones() & 1
    }

    pub fn is_identity_up_to_phase(&self) -> bool {
        self.x == 0 && self.z == 0
    }

    /// Support of the operator, as a mask over qubits.
    pub fn support(&self) -> u32 {
        self.x | self.z
    }

    /// Equality in the projective Pauli group: phases are ignored.
    pub fn eq_projective(&self, other: &Self) -> bool {
        self.n == other.n && self.x == other.x && self.z == other.z
    }

    /// Same operator with the supplied qubit count, provided the support fits.
    pub fn with_n(self, n: usize) -> Result<Self> {
        Self::new(n, self.x, self.z, self.delta)
    }
}

fn check_n(n: usize) -> Result<()> {
    if n == 0 || n > MAX_QUBITS {
        return Err(Error::UnsupportedN { n, reason: format!("qubit count must lie in 1..={MAX_QUBITS}") });
    }
    Ok(())
}

pub(crate) fn full_mask(n: usize) -> u32 {
    if n >= 32 {
        u32::MAX
    } else {
        (1u32 << n) - 1
    }
}

fn check_same(a: &PhasedPauli, b: &PhasedPauli) -> Result<()> {
    if a.n != b.n {
        return Err(Error::Dimension { expected: a.n, found: b.n });
    }
    Ok(())
}

/// Product `a * b`. Moving `Z^{a.z}` past `X^{b.x}` costs `(-1)^{a.z . b.x}`.
pub fn pauli_mul(a: &PhasedPauli, b: &PhasedPauli) -> Result<PhasedPauli> {
    check_same(a, b)?;
    Ok(mul_unchecked(a, b))
}

#[inline]
pub(crate) fn mul_unchecked(a: &PhasedPauli, b: &PhasedPauli) -> PhasedPauli {
    let sign = ((a.z & b.x).count_ones() & 1) as u8;
    PhasedPauli { n: a.n, x: a.x ^ b.x, z: a.z ^ b.z, delta: (a.delta + b.delta + 2 * sign) & 3 }
}

/// Symplectic inner product is zero.
pub fn commutes(a: &PhasedPauli, b: &PhasedPauli) -> Result<bool> {
    check_same(a, b)?;
    Ok(commutes_unchecked(a, b))
}

#[inline]
pub(crate) fn commutes_unchecked(a: &PhasedPauli, b: &PhasedPauli) -> bool {
    ((a.x & b.z).count_ones() + (a.z & b.x).count_ones()) & 1 == 0
}

impl fmt::Display for PhasedPauli {
    /// Text form `i^d · s1 s2 ... sn` with letters written without separators.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "i^{} · ", self.delta)?;
        for q in 1..=self.n {
            let c = match (self.x_at(q), self.z_at(q)) {
                (false, false) => 'I',
                (true, false) => 'X',
                (false, true) => 'Z',
                (true, true) => 'Y',
            };
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

impl FromStr for PhasedPauli {
    type Err = Error;

    /// Accepts `i^d · XZIY`, `i^d * X Z I Y`, or a bare letter string (phase 0).
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let (delta, body) = match s.strip_prefix("i^") {
            Some(rest) => {
                let end = rest.find(|c: char| !c.is_ascii_digit()).unwrap_or(rest.len());
                let d: u32 = rest[..end].parse().map_err(|_| Error::Parse(format!("bad phase exponent in {s:?}")))?;
                let body = rest[end..].trim_start();
                let body = body
                    .strip_prefix('·')
                    .or_else(|| body.strip_prefix('*'))
                    .ok_or_else(|| Error::Parse(format!("expected '·' after phase in {s:?}")))?;
                ((d % 4) as u8, body)
            }
            None => (0, s),
        };
        let letters: Vec<char> = body.chars().filter(|c| !c.is_whitespace()).collect();
        let n = letters.len();
        check_n(n).map_err(|_| Error::Parse(format!("bad qubit count {n} in {s:?}")))?;
        let (mut x, mut z) = (0u32, 0u32);
        for (j, c) in letters.iter().enumerate() {
            match c {
                'I' => {}
                'X' => x |= 1 << j,
                'Z' => z |= 1 << j,
                'Y' => {
                    x |= 1 << j;
                    z |= 1 << j;
                }
                other => return Err(Error::Parse(format!("bad Pauli letter {other:?}"))),
            }
        }
        Ok(PhasedPauli { n, x, z, delta })
    }
}
