//! Projective Clifford elements stored as the images of `X_1..X_n, Z_1..Z_n`
//! under conjugation.
//!
//! Products follow circuit order: `compose(f, t)` is "apply `f`, then `t`", and
//! `conjugate(P, compose(f, t)) == conjugate(conjugate(P, f), t)`. A word
//! `w1 w2 ...` lifts to the matrix product `U_{w1} U_{w2} ...`, and the
//! tableau records `P -> U^{-1} P U`.

use std::fmt;
use std::str::FromStr;

use rand::Rng;

use crate::error::{Error, Result};
use crate::pauli::{commutes_unchecked, mul_unchecked, PhasedPauli, MAX_QUBITS};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CliffordTableau {
    n: usize,
    /// `rows[i]` is the image of `X_{i+1}`, `rows[n + i]` the image of `Z_{i+1}`.
    rows: Vec<PhasedPauli>,
}

/// One letter of a generator word. Qubits are 1-based.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Letter {
    H(usize),
    S(usize),
    /// Controlled-Z between two distinct qubits; symmetric in its arguments.
    Cz(usize, usize),
}

/// Named Clifford elements that can be built directly.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum GeneratorKind {
    H,
    S,
    Cz,
    /// `s^2`
    Z,
    /// `h s^2 h`
    X,
    /// `h_t cz(c,t) h_t`
    Cx,
    /// `(cz(i,j) h_j h_i)^3`
    Swap,
    /// `h_2 cz s_2^2 h_2 h_1 s_1^2 h_2 cz h_2`, relabelled onto the two given qubits
    M,
    /// `h s h s^3 h`
    GConj,
}

fn check_qubit(q: usize, n: usize) -> Result<()> {
    if q == 0 || q > n {
        return Err(Error::QubitIndex { index: q, n });
    }
    Ok(())
}

fn check_n(n: usize) -> Result<()> {
    if n == 0 || n > MAX_QUBITS {
        return Err(Error::UnsupportedN { n, reason: format!("qubit count must lie in 1..={MAX_QUBITS}") });
    }
    Ok(())
}

impl CliffordTableau {
    pub fn identity(n: usize) -> Self {
        assert!((1..=MAX_QUBITS).contains(&n), "qubit count {n} out of range");
        let mut rows = Vec::with_capacity(2 * n);
        rows.extend((1..=n).map(|q| PhasedPauli::x_on(n, q)));
        rows.extend((1..=n).map(|q| PhasedPauli::z_on(n, q)));
        Self { n, rows }
    }

    /// Builds a tableau from the images of `X_i` and `Z_i`, validating every
    /// invariant.
    pub fn from_images(im_x: Vec<PhasedPauli>, im_z: Vec<PhasedPauli>) -> Result<Self> {
        let n = im_x.len();
        check_n(n)?;
        if im_z.len() != n {
            return Err(Error::Dimension { expected: n, found: im_z.len() });
        }
        for r in im_x.iter().chain(im_z.iter()) {
            if r.n() != n {
                return Err(Error::Dimension { expected: n, found: r.n() });
            }
        }
        let mut rows = im_x;
        rows.extend(im_z);
        let t = Self { n, rows };
        t.validate()?;
        Ok(t)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Image of `X_q` (1-based).
    pub fn im_x(&self, q: usize) -> PhasedPauli {
        self.rows[q - 1]
    }

    /// Image of `Z_q` (1-based).
    pub fn im_z(&self, q: usize) -> PhasedPauli {
        self.rows[self.n + q - 1]
    }

    pub fn rows(&self) -> &[PhasedPauli] {
        &self.rows
    }

    /// Checks the Hermitian-row and symplectic conditions.
    pub fn validate(&self) -> Result<()> {
        let n = self.n;
        for (i, r) in self.rows.iter().enumerate() {
            if !r.is_hermitian() {
                return Err(Error::InvalidTableau(format!("row {i} ({r}) is not Hermitian")));
            }
        }
        for i in 0..2 * n {
            for j in i + 1..2 * n {
                let should_anticommute = j == i + n;
                let c = commutes_unchecked(&self.rows[i], &self.rows[j]);
                if c == should_anticommute {
                    return Err(Error::InvalidTableau(format!("rows {i} and {j} break the symplectic condition")));
                }
            }
        }
        // The commutation pattern above already forces the F2 matrix to be
        // invertible: a dependent row would commute with every other row.
        Ok(())
    }

    #[inline]
    fn debug_validate(&self) {
        #[cfg(debug_assertions)]
        if let Err(e) = self.validate() {
            panic!("tableau invariant violated: {e}");
        }
    }

    /// Single letter as a tableau on `n` qubits.
    pub fn letter(letter: Letter, n: usize) -> Result<Self> {
        let mut t = Self::identity(n);
        t.apply_letter(letter)?;
        Ok(t)
    }

    /// Right-multiplies by one generator letter in place (`self <- self * letter`).
    pub fn apply_letter(&mut self, letter: Letter) -> Result<()> {
        match letter {
            Letter::H(q) => {
                check_qubit(q, self.n)?;
                let b = 1u32 << (q - 1);
                for r in &mut self.rows {
                    *r = conj_h(*r, b);
                }
            }
            Letter::S(q) => {
                check_qubit(q, self.n)?;
                let b = 1u32 << (q - 1);
                for r in &mut self.rows {
                    *r = conj_s(*r, b);
                }
            }
            Letter::Cz(a, c) => {
                check_qubit(a, self.n)?;
                check_qubit(c, self.n)?;
                if a == c {
                    return Err(Error::InvalidGate(format!("cz needs distinct qubits, got {a}:{c}")));
                }
                let (ba, bc) = (1u32 << (a - 1), 1u32 << (c - 1));
                for r in &mut self.rows {
                    *r = conj_cz(*r, ba, bc);
                }
            }
        }
        Ok(())
    }

    pub fn is_pauli(&self) -> bool {
        let n = self.n;
        (0..n).all(|i| {
            let (rx, rz) = (self.rows[i], self.rows[n + i]);
            rx.x_bits() == 1 << i && rx.z_bits() == 0 && rz.z_bits() == 1 << i && rz.x_bits() == 0
        })
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity(self.n)
    }

    /// `g^{-1} self g`
    pub fn conjugated_by(&self, g: &CliffordTableau) -> Result<Self> {
        compose(&compose(&inverse(g), self)?, g)
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut out = Self::identity(self.n);
        for _ in 0..k {
            out = compose_unchecked(&out, self);
        }
        out
    }

    /// Fixed-width packed encoding. Each row is `x_1..x_n z_1..z_n d_1 d_0`,
    /// written most significant bit first and padded to whole bytes; rows are
    /// emitted in the order `X_1..X_n, Z_1..Z_n`.
    pub fn canonical_key(&self) -> Vec<u8> {
        let n = self.n;
        let row_bits = 2 * n + 2;
        let row_bytes = row_bits.div_ceil(8);
        let mut out = vec![0u8; row_bytes * 2 * n];
        for (ri, r) in self.rows.iter().enumerate() {
            let base = ri * row_bytes * 8;
            let mut put = |pos: usize, bit: bool| {
                if bit {
                    let p = base + pos;
                    out[p / 8] |= 0x80 >> (p % 8);
                }
            };
            for q in 0..n {
                put(q, r.x_bits() >> q & 1 == 1);
                put(n + q, r.z_bits() >> q & 1 == 1);
            }
            put(2 * n, r.delta() & 2 != 0);
            put(2 * n + 1, r.delta() & 1 != 0);
        }
        out
    }

    /// Inverse of [`canonical_key`](Self::canonical_key). Validates the result.
    pub fn from_canonical_key(n: usize, key: &[u8]) -> Result<Self> {
        check_n(n)?;
        let row_bytes = (2 * n + 2).div_ceil(8);
        if key.len() != row_bytes * 2 * n {
            return Err(Error::Parse(format!("key of {} bytes does not match n={n}", key.len())));
        }
        let get = |p: usize| key[p / 8] & (0x80 >> (p % 8)) != 0;
        let mut rows = Vec::with_capacity(2 * n);
        for ri in 0..2 * n {
            let base = ri * row_bytes * 8;
            let (mut x, mut z) = (0u32, 0u32);
            for q in 0..n {
                x |= (get(base + q) as u32) << q;
                z |= (get(base + n + q) as u32) << q;
            }
            let d = (get(base + 2 * n) as u8) << 1 | get(base + 2 * n + 1) as u8;
            for p in 2 * n + 2..row_bytes * 8 {
                if get(base + p) {
                    return Err(Error::Parse("padding bits set in key".into()));
                }
            }
            rows.push(PhasedPauli::new(n, x, z, d)?);
        }
        let t = Self { n, rows };
        t.validate()?;
        Ok(t)
    }

    /// Copy acting on `m >= n` qubits, trivially on qubits `n+1..m`.
    pub fn embed(&self, m: usize) -> Result<Self> {
        if m < self.n {
            return Err(Error::Dimension { expected: self.n, found: m });
        }
        let mut t = Self::identity(m);
        for q in 1..=self.n {
            t.rows[q - 1] = self.im_x(q).with_n(m)?;
            t.rows[m + q - 1] = self.im_z(q).with_n(m)?;
        }
        Ok(t)
    }

    /// One row per line in Pauli text form, `X` images first.
    pub fn dump(&self) -> String {
        let mut s = String::new();
        for r in &self.rows {
            s.push_str(&r.to_string());
            s.push('\n');
        }
        s
    }

    pub fn parse_dump(text: &str) -> Result<Self> {
        let rows: Vec<PhasedPauli> =
            text.lines().map(str::trim).filter(|l| !l.is_empty()).map(str::parse).collect::<Result<_>>()?;
        if !rows.len().is_multiple_of(2) {
            return Err(Error::Parse(format!("odd number of rows ({})", rows.len())));
        }
        let n = rows.len() / 2;
        let im_z = rows[n..].to_vec();
        let mut im_x = rows;
        im_x.truncate(n);
        Self::from_images(im_x, im_z)
    }
}

#[inline]
fn conj_h(r: PhasedPauli, b: u32) -> PhasedPauli {
    let (x, z) = (r.x_bits(), r.z_bits());
    let both = (x & z & b != 0) as u8;
    let nx = (x & !b) | if z & b != 0 { b } else { 0 };
    let nz = (z & !b) | if x & b != 0 { b } else { 0 };
    make(r.n(), nx, nz, r.delta() + 2 * both)
}

#[inline]
fn conj_s(r: PhasedPauli, b: u32) -> PhasedPauli {
    if r.x_bits() & b == 0 {
        return r;
    }
    make(r.n(), r.x_bits(), r.z_bits() ^ b, r.delta() + 3)
}

#[inline]
fn conj_cz(r: PhasedPauli, ba: u32, bc: u32) -> PhasedPauli {
    let (x, mut z) = (r.x_bits(), r.z_bits());
    let xa = x & ba != 0;
    let xc = x & bc != 0;
    if xa {
        z ^= bc;
    }
    if xc {
        z ^= ba;
    }
    make(r.n(), x, z, r.delta() + 2 * (xa && xc) as u8)
}

#[inline]
fn make(n: usize, x: u32, z: u32, d: u8) -> PhasedPauli {
    PhasedPauli::new(n, x, z, d & 3).expect("masks stay within n qubits")
}

/// Image of `p` under `f`.
pub fn conjugate(p: &PhasedPauli, f: &CliffordTableau) -> Result<PhasedPauli> {
    if p.n() != f.n {
        return Err(Error::Dimension { expected: f.n, found: p.n() });
    }
    Ok(conjugate_unchecked(p, f))
}

#[inline]
pub(crate) fn conjugate_unchecked(p: &PhasedPauli, f: &CliffordTableau) -> PhasedPauli {
    let n = f.n;
    let mut acc = PhasedPauli::identity(n).times_i_pow(p.delta());
    let (x, z) = (p.x_bits(), p.z_bits());
    for q in 0..n {
        if x >> q & 1 == 1 {
            acc = mul_unchecked(&acc, &f.rows[q]);
        }
    }
    for q in 0..n {
        if z >> q & 1 == 1 {
            acc = mul_unchecked(&acc, &f.rows[n + q]);
        }
    }
    acc
}

/// Circuit-order product: `f` first, then `t`.
pub fn compose(f: &CliffordTableau, t: &CliffordTableau) -> Result<CliffordTableau> {
    if f.n != t.n {
        return Err(Error::Dimension { expected: f.n, found: t.n });
    }
    Ok(compose_unchecked(f, t))
}

pub(crate) fn compose_unchecked(f: &CliffordTableau, t: &CliffordTableau) -> CliffordTableau {
    let rows = f.rows.iter().map(|r| conjugate_unchecked(r, t)).collect();
    let out = CliffordTableau { n: f.n, rows };
    out.debug_validate();
    out
}

pub fn inverse(f: &CliffordTableau) -> CliffordTableau {
    let n = f.n;
    // Preimage of v: X_j coefficient is <v, im Z_j>, Z_j coefficient is <v, im X_j>.
    let preimage = |v: &PhasedPauli| -> PhasedPauli {
        let (mut x, mut z) = (0u32, 0u32);
        for j in 0..n {
            if !commutes_unchecked(v, &f.rows[n + j]) {
                x |= 1 << j;
            }
            if !commutes_unchecked(v, &f.rows[j]) {
                z |= 1 << j;
            }
        }
        make(n, x, z, ((x & z).count_ones() & 1) as u8)
    };
    let mut rows = Vec::with_capacity(2 * n);
    for i in 0..2 * n {
        let target = if i < n { PhasedPauli::x_on(n, i + 1) } else { PhasedPauli::z_on(n, i - n + 1) };
        let mut row = preimage(&target);
        let img = conjugate_unchecked(&row, f);
        debug_assert!(img.eq_projective(&target));
        if img.delta() != 0 {
            debug_assert_eq!(img.delta(), 2);
            row = row.times_i_pow(2);
        }
        rows.push(row);
    }
    let out = CliffordTableau { n, rows };
    out.debug_validate();
    out
}

pub fn is_pauli(f: &CliffordTableau) -> bool {
    f.is_pauli()
}

pub fn canonical_key(f: &CliffordTableau) -> Vec<u8> {
    f.canonical_key()
}

/// Tableau of a named element. `qubits` lists the qubits the element acts on
/// (one for `h, s, z, x, g_conj`; two for `cz, cx, swap, M`).
pub fn generator(kind: GeneratorKind, qubits: &[usize], n: usize) -> Result<CliffordTableau> {
    check_n(n)?;
    let arity = match kind {
        GeneratorKind::H | GeneratorKind::S | GeneratorKind::Z | GeneratorKind::X | GeneratorKind::GConj => 1,
        _ => 2,
    };
    if qubits.len() != arity {
        return Err(Error::InvalidGate(format!("{kind:?} takes {arity} qubit(s), got {}", qubits.len())));
    }
    for &q in qubits {
        check_qubit(q, n)?;
    }
    if arity == 2 && qubits[0] == qubits[1] {
        return Err(Error::InvalidGate(format!("{kind:?} needs distinct qubits")));
    }
    let q = qubits[0];
    let letters: Vec<Letter> = match kind {
        GeneratorKind::H => vec![Letter::H(q)],
        GeneratorKind::S => vec![Letter::S(q)],
        GeneratorKind::Cz => vec![Letter::Cz(q, qubits[1])],
        GeneratorKind::Z => vec![Letter::S(q); 2],
        GeneratorKind::X => vec![Letter::H(q), Letter::S(q), Letter::S(q), Letter::H(q)],
        GeneratorKind::Cx => {
            let t = qubits[1];
            vec![Letter::H(t), Letter::Cz(q, t), Letter::H(t)]
        }
        GeneratorKind::Swap => {
            let j = qubits[1];
            [Letter::Cz(q, j), Letter::H(j), Letter::H(q)].repeat(3)
        }
        GeneratorKind::M => {
            let (a, b) = (q, qubits[1]);
            vec![
                Letter::H(b),
                Letter::Cz(a, b),
                Letter::S(b),
                Letter::S(b),
                Letter::H(b),
                Letter::H(a),
                Letter::S(a),
                Letter::S(a),
                Letter::H(b),
                Letter::Cz(a, b),
                Letter::H(b),
            ]
        }
        GeneratorKind::GConj => {
            vec![Letter::H(q), Letter::S(q), Letter::H(q), Letter::S(q), Letter::S(q), Letter::S(q), Letter::H(q)]
        }
    };
    word_eval(&GeneratorWord { n, letters })
}

/// The standard generating set `h_1..h_n, s_1..s_n, cz_1..cz_{n-1}` with names.
pub fn standard_generators(n: usize) -> Vec<(String, CliffordTableau)> {
    let mut out = Vec::with_capacity(3 * n - 1);
    for q in 1..=n {
        out.push((format!("h{q}"), CliffordTableau::letter(Letter::H(q), n).unwrap()));
    }
    for q in 1..=n {
        out.push((format!("s{q}"), CliffordTableau::letter(Letter::S(q), n).unwrap()));
    }
    for q in 1..n {
        out.push((format!("cz{q}"), CliffordTableau::letter(Letter::Cz(q, q + 1), n).unwrap()));
    }
    out
}

/// A word over `h_i, s_i, cz(i,j)`, read left to right in circuit order.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GeneratorWord {
    pub n: usize,
    pub letters: Vec<Letter>,
}

impl GeneratorWord {
    pub fn new(n: usize, letters: Vec<Letter>) -> Result<Self> {
        check_n(n)?;
        let w = Self { n, letters };
        w.check()?;
        Ok(w)
    }

    pub fn empty(n: usize) -> Self {
        Self { n, letters: Vec::new() }
    }

    fn check(&self) -> Result<()> {
        for l in &self.letters {
            match *l {
                Letter::H(q) | Letter::S(q) => check_qubit(q, self.n)?,
                Letter::Cz(a, b) => {
                    check_qubit(a, self.n)?;
                    check_qubit(b, self.n)?;
                    if a == b {
                        return Err(Error::InvalidGate(format!("cz{a}:{b} repeats a qubit")));
                    }
                }
            }
        }
        Ok(())
    }

    /// Parses whitespace-separated letters such as `h3 s1 cz1:2` (`cz1` is
    /// shorthand for `cz1:2`).
    pub fn parse(n: usize, text: &str) -> Result<Self> {
        let letters = text.split_whitespace().map(parse_letter).collect::<Result<Vec<_>>>()?;
        Self::new(n, letters)
    }

    pub fn concat(&self, other: &Self) -> Self {
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        Self { n: self.n.max(other.n), letters }
    }

    pub fn pow(&self, k: usize) -> Self {
        Self { n: self.n, letters: self.letters.repeat(k) }
    }

    /// Word for the inverse element (`s^{-1}` is written `s s s`).
    pub fn inverse(&self) -> Self {
        let mut letters = Vec::with_capacity(self.letters.len());
        for l in self.letters.iter().rev() {
            match l {
                Letter::S(_) => letters.extend([*l; 3]),
                _ => letters.push(*l),
            }
        }
        Self { n: self.n, letters }
    }

    pub fn with_n(&self, n: usize) -> Result<Self> {
        Self::new(n, self.letters.clone())
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }
}

fn parse_letter(tok: &str) -> Result<Letter> {
    let bad = || Error::Parse(format!("bad word letter {tok:?}"));
    let num = |s: &str| s.parse::<usize>().map_err(|_| bad());
    if let Some(rest) = tok.strip_prefix("cz") {
        return match rest.split_once(':') {
            Some((a, b)) => Ok(Letter::Cz(num(a)?, num(b)?)),
            None => {
                let a = num(rest)?;
                Ok(Letter::Cz(a, a + 1))
            }
        };
    }
    if let Some(rest) = tok.strip_prefix('h') {
        return Ok(Letter::H(num(rest)?));
    }
    if let Some(rest) = tok.strip_prefix('s') {
        return Ok(Letter::S(num(rest)?));
    }
    Err(bad())
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Letter::H(q) => write!(f, "h{q}"),
            Letter::S(q) => write!(f, "s{q}"),
            Letter::Cz(a, b) => write!(f, "cz{a}:{b}"),
        }
    }
}

impl fmt::Display for GeneratorWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, l) in self.letters.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{l}")?;
        }
        Ok(())
    }
}

impl FromStr for Letter {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        parse_letter(s)
    }
}

/// Parses a word file: one word per line, `#` starts a comment, blank lines
/// are skipped.
pub fn parse_word_file(n: usize, text: &str) -> Result<Vec<GeneratorWord>> {
    text.lines()
        .map(|l| l.split('#').next().unwrap_or("").trim())
        .filter(|l| !l.is_empty())
        .map(|l| GeneratorWord::parse(n, l))
        .collect()
}

/// Evaluates a word left to right.
pub fn word_eval(w: &GeneratorWord) -> Result<CliffordTableau> {
    check_n(w.n)?;
    let mut t = CliffordTableau::identity(w.n);
    for &l in &w.letters {
        t.apply_letter(l)?;
    }
    t.debug_validate();
    Ok(t)
}

/// Uniformly random letter over the standard generators.
pub fn random_letter<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Letter {
    let choices = if n == 1 { 2 } else { 3 };
    let q = rng.gen_range(1..=n);
    match rng.gen_range(0..choices) {
        0 => Letter::H(q),
        1 => Letter::S(q),
        _ => {
            let a = rng.gen_range(1..n);
            Letter::Cz(a, a + 1)
        }
    }
}

pub fn random_word<R: Rng + ?Sized>(n: usize, len: usize, rng: &mut R) -> GeneratorWord {
    GeneratorWord { n, letters: (0..len).map(|_| random_letter(n, rng)).collect() }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pauli::full_mask;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;
    use std::collections::{HashSet, VecDeque};

    fn w(n: usize, s: &str) -> CliffordTableau {
        word_eval(&GeneratorWord::parse(n, s).unwrap()).unwrap()
    }

    fn pp(s: &str) -> PhasedPauli {
        s.parse().unwrap()
    }

    #[test]
    fn identity_rows() {
        let t = CliffordTableau::identity(1);
        assert_eq!(t.im_x(1), PhasedPauli::x_on(1, 1));
        assert_eq!(t.im_z(1), PhasedPauli::z_on(1, 1));
        assert!(t.is_pauli());
    }

    #[test]
    fn primitive_generators() {
        let s = generator(GeneratorKind::S, &[1], 1).unwrap();
        assert_eq!(s.im_x(1), pp("i^3 · Y"));
        assert_eq!(s.im_z(1), pp("Z"));
        let z = generator(GeneratorKind::Z, &[1], 1).unwrap();
        assert_eq!(z.im_x(1), pp("i^2 · X"));
        assert_eq!(z.im_z(1), pp("Z"));
        let h = generator(GeneratorKind::H, &[1], 1).unwrap();
        assert_eq!(conjugate(&pp("X"), &h).unwrap(), pp("Z"));
        assert_eq!(conjugate(&pp("Z"), &h).unwrap(), pp("X"));
        let cz = generator(GeneratorKind::Cz, &[1, 2], 2).unwrap();
        assert_eq!(cz.im_x(1), pp("XZ"));
        assert_eq!(cz.im_x(2), pp("ZX"));
        assert_eq!(cz, generator(GeneratorKind::Cz, &[2, 1], 2).unwrap());
    }

    #[test]
    fn letter_fast_paths_match_generic_composition() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for n in 1..=4 {
            for _ in 0..50 {
                let f = word_eval(&random_word(n, 30, &mut rng)).unwrap();
                let l = random_letter(n, &mut rng);
                let mut fast = f.clone();
                fast.apply_letter(l).unwrap();
                let slow = compose(&f, &CliffordTableau::letter(l, n).unwrap()).unwrap();
                assert_eq!(fast, slow);
            }
        }
    }

    #[test]
    fn generator_errors() {
        assert_eq!(generator(GeneratorKind::H, &[3], 2), Err(Error::QubitIndex { index: 3, n: 2 }));
        assert!(generator(GeneratorKind::Cz, &[1, 1], 2).is_err());
        assert!(generator(GeneratorKind::Cz, &[1], 2).is_err());
        assert!(GeneratorWord::parse(2, "h0").is_err());
        assert!(GeneratorWord::parse(2, "q1").is_err());
    }

    #[test]
    fn swap_identity() {
        let lhs = w(2, "cz1:2 h2 h1 cz1:2 h2 h1 cz1:2 h2 h1");
        let swap = generator(GeneratorKind::Swap, &[1, 2], 2).unwrap();
        assert_eq!(lhs, swap);
        assert_eq!(swap.im_x(1), pp("IX"));
        assert_eq!(swap.im_z(2), pp("ZI"));
    }

    #[test]
    fn compose_examples() {
        let h = w(1, "h1");
        assert!(compose(&h, &h).unwrap().is_identity());
        assert!(w(1, "s1 h1 s1 h1 s1 h1").is_identity());
        let lhs = w(2, "s1");
        let rhs = w(2, "h2 s2 h2 s2 cz1 h2 s2 h2 cz1 h2 cz1");
        assert_eq!(lhs, rhs);
        assert!(compose(&CliffordTableau::identity(1), &CliffordTableau::identity(2)).is_err());
    }

    #[test]
    fn inverse_examples() {
        assert!(inverse(&CliffordTableau::identity(3)).is_identity());
        let h = w(1, "h1");
        assert_eq!(inverse(&h), h);
        assert_eq!(inverse(&w(1, "s1")), w(1, "s1 s1 s1"));
    }

    #[test]
    fn conjugate_examples() {
        let h = w(1, "h1");
        assert_eq!(conjugate(&pp("X"), &h).unwrap(), pp("Z"));
        assert_eq!(conjugate(&pp("Z"), &h).unwrap(), pp("X"));
        assert_eq!(w(1, "h1 s1 s1 h1"), generator(GeneratorKind::X, &[1], 1).unwrap());
        assert_eq!(conjugate(&pp("X"), &w(1, "s1")).unwrap(), pp("i^3 · Y"));
        assert!(conjugate(&pp("XX"), &h).is_err());
    }

    #[test]
    fn m_relation() {
        let m = generator(GeneratorKind::M, &[1, 2], 2).unwrap();
        let h1 = w(2, "h1");
        let lhs = compose(&compose(&h1, &m).unwrap(), &h1).unwrap();
        assert_eq!(lhs, m.pow(3));
    }

    #[test]
    fn is_pauli_examples() {
        assert!(generator(GeneratorKind::Z, &[1], 3).unwrap().is_pauli());
        assert!(generator(GeneratorKind::X, &[2], 3).unwrap().is_pauli());
        assert!(!w(1, "h1").is_pauli());
        assert!(!w(1, "s1").is_pauli());
    }

    fn bfs_group(n: usize) -> HashSet<CliffordTableau> {
        let gens: Vec<_> = standard_generators(n).into_iter().map(|(_, t)| t).collect();
        let id = CliffordTableau::identity(n);
        let mut seen = HashSet::from([id.clone()]);
        let mut q = VecDeque::from([id]);
        while let Some(t) = q.pop_front() {
            for g in &gens {
                let u = compose(&t, g).unwrap();
                if seen.insert(u.clone()) {
                    q.push_back(u);
                }
            }
        }
        seen
    }

    #[test]
    fn closure_sizes() {
        assert_eq!(bfs_group(1).len(), 24);
        assert_eq!(bfs_group(2).len(), 11520);
    }

    #[test]
    fn canonical_key_is_injective_on_small_groups() {
        for n in 1..=2 {
            let g = bfs_group(n);
            let keys: HashSet<Vec<u8>> = g.iter().map(canonical_key).collect();
            assert_eq!(keys.len(), g.len());
            for t in &g {
                assert_eq!(&CliffordTableau::from_canonical_key(n, &t.canonical_key()).unwrap(), t);
            }
        }
    }

    #[test]
    fn canonical_key_layout() {
        // X_1 row: x=1 z=0 d=00 -> 1000_0000; Z_1 row: 0100_0000.
        assert_eq!(CliffordTableau::identity(1).canonical_key(), vec![0x80, 0x40]);
        // n=4: 10 bits per row, 2 bytes per row.
        assert_eq!(CliffordTableau::identity(4).canonical_key().len(), 16);
        assert!(CliffordTableau::from_canonical_key(1, &[0x81, 0x40]).is_err());
    }

    #[test]
    fn identity_key_is_not_least_under_row_packing() {
        let least = bfs_group(1).iter().map(canonical_key).min().unwrap();
        assert_eq!(least, w(1, "h1").canonical_key());
        assert!(least < CliffordTableau::identity(1).canonical_key());
    }

    #[test]
    fn dump_round_trip() {
        let t = w(3, "h1 s2 cz1:3 s3 h2");
        assert_eq!(CliffordTableau::parse_dump(&t.dump()).unwrap(), t);
    }

    #[test]
    fn word_file_format() {
        let words = parse_word_file(3, "# demo\nh3 s1 cz1:2\n\ns2 # trailing\n").unwrap();
        assert_eq!(words.len(), 2);
        assert_eq!(words[0].to_string(), "h3 s1 cz1:2");
        assert_eq!(words[1].letters, vec![Letter::S(2)]);
    }

    #[test]
    fn word_inverse_evaluates_to_inverse() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for n in 1..=4 {
            let wd = random_word(n, 40, &mut rng);
            let t = word_eval(&wd).unwrap();
            assert_eq!(word_eval(&wd.inverse()).unwrap(), inverse(&t));
        }
    }

    /// Adjacent-transposition words for every permutation of 1..n, with the
    /// composed permutation (left to right).
    fn perms_with_words(n: usize) -> Vec<(Vec<usize>, Vec<usize>)> {
        let id: Vec<usize> = (1..=n).collect();
        let mut seen = HashSet::from([id.clone()]);
        let mut out = vec![(id.clone(), vec![])];
        let mut q = VecDeque::from([(id, vec![])]);
        while let Some((p, word)) = q.pop_front() {
            for i in 1..n {
                // p' = p then (i, i+1): image of k is t(p(k)).
                let np: Vec<usize> = p
                    .iter()
                    .map(|&v| {
                        if v == i {
                            i + 1
                        } else if v == i + 1 {
                            i
                        } else {
                            v
                        }
                    })
                    .collect();
                if seen.insert(np.clone()) {
                    let mut nw: Vec<usize> = word.clone();
                    nw.push(i);
                    out.push((np.clone(), nw.clone()));
                    q.push_back((np, nw));
                }
            }
        }
        out
    }

    #[test]
    fn swap_relabelling_action() {
        for n in 2..=4 {
            for (p, word) in perms_with_words(n) {
                let mut sigma = CliffordTableau::identity(n);
                for i in word {
                    sigma = compose(&sigma, &generator(GeneratorKind::Swap, &[i, i + 1], n).unwrap()).unwrap();
                }
                for i in 1..=n {
                    let pi = p[i - 1];
                    let h = CliffordTableau::letter(Letter::H(i), n).unwrap();
                    assert_eq!(h.conjugated_by(&sigma).unwrap(), CliffordTableau::letter(Letter::H(pi), n).unwrap());
                    let s = CliffordTableau::letter(Letter::S(i), n).unwrap();
                    assert_eq!(s.conjugated_by(&sigma).unwrap(), CliffordTableau::letter(Letter::S(pi), n).unwrap());
                    for j in 1..=n {
                        if i != j {
                            let cz = CliffordTableau::letter(Letter::Cz(i, j), n).unwrap();
                            let pj = p[j - 1];
                            assert_eq!(
                                cz.conjugated_by(&sigma).unwrap(),
                                CliffordTableau::letter(Letter::Cz(pi, pj), n).unwrap()
                            );
                        }
                    }
                }
            }
        }
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn arb_tableau() -> impl Strategy<Value = CliffordTableau> {
            (1usize..=4, any::<u64>()).prop_map(|(n, seed)| {
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                word_eval(&random_word(n, 60, &mut rng)).unwrap()
            })
        }

        proptest! {
            #[test]
            fn identity_and_inverse_laws(t in arb_tableau()) {
                let id = CliffordTableau::identity(t.n());
                prop_assert_eq!(compose(&id, &t).unwrap(), t.clone());
                prop_assert_eq!(compose(&t, &id).unwrap(), t.clone());
                prop_assert!(compose(&t, &inverse(&t)).unwrap().is_identity());
                prop_assert!(compose(&inverse(&t), &t).unwrap().is_identity());
            }

            #[test]
            fn conjugation_is_an_automorphism(t in arb_tableau(), a in any::<u32>(), b in any::<u32>(), d in 0u8..4) {
                let n = t.n();
                let m = full_mask(n);
                let p = PhasedPauli::new(n, a & m, (a >> 16) & m, d).unwrap();
                let q = PhasedPauli::new(n, b & m, (b >> 16) & m, 0).unwrap();
                let pq = crate::pauli::pauli_mul(&p, &q).unwrap();
                let lhs = conjugate(&pq, &t).unwrap();
                let rhs = crate::pauli::pauli_mul(&conjugate(&p, &t).unwrap(), &conjugate(&q, &t).unwrap()).unwrap();
                prop_assert_eq!(lhs, rhs);
            }

            #[test]
            fn compose_acts_in_circuit_order(f in arb_tableau(), seed in any::<u64>()) {
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                let t = word_eval(&random_word(f.n(), 30, &mut rng)).unwrap();
                let ft = compose(&f, &t).unwrap();
                for q in 1..=f.n() {
                    let p = PhasedPauli::x_on(f.n(), q);
                    prop_assert_eq!(conjugate(&p, &ft).unwrap(), conjugate(&conjugate(&p, &f).unwrap(), &t).unwrap());
                }
            }

            #[test]
            fn key_round_trip(t in arb_tableau()) {
                prop_assert_eq!(CliffordTableau::from_canonical_key(t.n(), &t.canonical_key()).unwrap(), t);
            }
        }
    }
}
