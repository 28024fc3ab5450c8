//! Dense complex matrices for `n <= 3`, used to pin the phase conventions of
//! the tableau layer. Nothing on a production path depends on this module.
//!
//! Qubit 1 is the most significant tensor factor. `S = diag(1, w^2)` with
//! `w = e^{i pi/4}`, so `w^2 = i`.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::pauli::PhasedPauli;
use crate::tableau::{conjugate, word_eval, GeneratorWord, Letter};

pub const MAX_ORACLE_QUBITS: usize = 3;
pub const TOLERANCE: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq)]
pub struct UnitaryMatrix {
    n: usize,
    dim: usize,
    /// Row-major entries.
    data: Vec<Complex64>,
}

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn omega_pow(k: u32) -> Complex64 {
    Complex64::from_polar(1.0, std::f64::consts::FRAC_PI_4 * k as f64)
}

fn check_capacity(n: usize) -> Result<()> {
    if n == 0 || n > MAX_ORACLE_QUBITS {
        return Err(Error::Capacity { what: format!("matrix oracle on {n} qubits"), limit: MAX_ORACLE_QUBITS });
    }
    Ok(())
}

impl UnitaryMatrix {
    pub fn identity(n: usize) -> Result<Self> {
        check_capacity(n)?;
        let dim = 1 << n;
        let mut data = vec![c(0.0, 0.0); dim * dim];
        for i in 0..dim {
            data[i * dim + i] = c(1.0, 0.0);
        }
        Ok(Self { n, dim, data })
    }

    /// Matrix on `n = log2(dim)` qubits from row-major entries.
    pub fn from_rows(rows: &[&[Complex64]]) -> Result<Self> {
        let dim = rows.len();
        if !dim.is_power_of_two() || rows.iter().any(|r| r.len() != dim) {
            return Err(Error::InvalidGate("matrix must be square with power-of-two size".into()));
        }
        let n = dim.trailing_zeros() as usize;
        check_capacity(n)?;
        Ok(Self { n, dim, data: rows.iter().flat_map(|r| r.iter().copied()).collect() })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, r: usize, col: usize) -> Complex64 {
        self.data[r * self.dim + col]
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.dim != other.dim {
            return Err(Error::Dimension { expected: self.n, found: other.n });
        }
        let d = self.dim;
        let mut data = vec![c(0.0, 0.0); d * d];
        for i in 0..d {
            for k in 0..d {
                let a = self.data[i * d + k];
                if a == c(0.0, 0.0) {
                    continue;
                }
                for j in 0..d {
                    data[i * d + j] += a * other.data[k * d + j];
                }
            }
        }
        Ok(Self { n: self.n, dim: d, data })
    }

    pub fn adjoint(&self) -> Self {
        let d = self.dim;
        let mut data = vec![c(0.0, 0.0); d * d];
        for i in 0..d {
            for j in 0..d {
                data[j * d + i] = self.data[i * d + j].conj();
            }
        }
        Self { n: self.n, dim: d, data }
    }

    pub fn scale(&self, s: Complex64) -> Self {
        Self { n: self.n, dim: self.dim, data: self.data.iter().map(|v| v * s).collect() }
    }

    pub fn approx_eq(&self, other: &Self) -> bool {
        self.dim == other.dim && self.data.iter().zip(&other.data).all(|(a, b)| (a - b).norm() <= TOLERANCE)
    }

    pub fn is_unitary(&self) -> bool {
        self.mul(&self.adjoint()).map(|p| p.approx_eq(&Self::identity(self.n).expect("same n"))).unwrap_or(false)
    }

    /// Embeds a one-qubit gate on qubit `q`.
    fn single(n: usize, q: usize, g: [[Complex64; 2]; 2]) -> Self {
        let dim = 1 << n;
        let shift = n - q;
        let mut data = vec![c(0.0, 0.0); dim * dim];
        for r in 0..dim {
            for col in 0..dim {
                if (r ^ col) & !(1 << shift) != 0 {
                    continue;
                }
                data[r * dim + col] = g[(r >> shift) & 1][(col >> shift) & 1];
            }
        }
        Self { n, dim, data }
    }

    fn cz(n: usize, a: usize, b: usize) -> Self {
        let dim = 1 << n;
        let (sa, sb) = (n - a, n - b);
        let mut data = vec![c(0.0, 0.0); dim * dim];
        for i in 0..dim {
            let both = (i >> sa) & 1 == 1 && (i >> sb) & 1 == 1;
            data[i * dim + i] = c(if both { -1.0 } else { 1.0 }, 0.0);
        }
        Self { n, dim, data }
    }

    fn of_letter(n: usize, l: Letter) -> Self {
        let r = std::f64::consts::FRAC_1_SQRT_2;
        match l {
            Letter::H(q) => Self::single(n, q, [[c(r, 0.0), c(r, 0.0)], [c(r, 0.0), c(-r, 0.0)]]),
            Letter::S(q) => Self::single(n, q, [[c(1.0, 0.0), c(0.0, 0.0)], [c(0.0, 0.0), omega_pow(2)]]),
            Letter::Cz(a, b) => Self::cz(n, a, b),
        }
    }
}

/// `U_{w1} U_{w2} ...` in word order.
pub fn matrix_of_word(w: &GeneratorWord) -> Result<UnitaryMatrix> {
    check_capacity(w.n)?;
    let mut m = UnitaryMatrix::identity(w.n)?;
    for &l in &w.letters {
        // Validates indices through the tableau path's rules.
        crate::tableau::CliffordTableau::letter(l, w.n)?;
        m = m.mul(&UnitaryMatrix::of_letter(w.n, l))?;
    }
    Ok(m)
}

/// `i^delta X^x Z^z` as a matrix.
pub fn matrix_of_pauli(p: &PhasedPauli) -> Result<UnitaryMatrix> {
    let n = p.n();
    check_capacity(n)?;
    let x = [[c(0.0, 0.0), c(1.0, 0.0)], [c(1.0, 0.0), c(0.0, 0.0)]];
    let z = [[c(1.0, 0.0), c(0.0, 0.0)], [c(0.0, 0.0), c(-1.0, 0.0)]];
    let mut m = UnitaryMatrix::identity(n)?;
    for q in 1..=n {
        if p.x_at(q) {
            m = m.mul(&UnitaryMatrix::single(n, q, x))?;
        }
    }
    for q in 1..=n {
        if p.z_at(q) {
            m = m.mul(&UnitaryMatrix::single(n, q, z))?;
        }
    }
    Ok(m.scale(omega_pow(2 * p.delta() as u32)))
}

/// True iff `a = w^k b` for some `k` in `0..8`.
pub fn equal_up_to_phase(a: &UnitaryMatrix, b: &UnitaryMatrix) -> Result<bool> {
    if a.dim != b.dim {
        return Err(Error::Dimension { expected: a.n, found: b.n });
    }
    Ok((0..8).any(|k| a.approx_eq(&b.scale(omega_pow(k)))))
}

/// Outcome of comparing tableau conjugation against matrix conjugation.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct OracleReport {
    pub checked: usize,
    pub mismatches: Vec<String>,
}

impl OracleReport {
    pub fn passed(&self) -> bool {
        self.mismatches.is_empty()
    }

    pub fn merge(&mut self, other: OracleReport) {
        self.checked += other.checked;
        self.mismatches.extend(other.mismatches);
    }
}

/// For every `P` in `{X_i, Z_i}`, compares `conjugate(P, word_eval(w))` with
/// `U_w^{-1} P U_w`, phase included.
pub fn check_tableau(w: &GeneratorWord) -> Result<OracleReport> {
    let u = matrix_of_word(w)?;
    let u_inv = u.adjoint();
    let t = word_eval(w)?;
    let mut report = OracleReport::default();
    for q in 1..=w.n {
        for p in [PhasedPauli::x_on(w.n, q), PhasedPauli::z_on(w.n, q)] {
            report.checked += 1;
            let image = conjugate(&p, &t)?;
            let expected = u_inv.mul(&matrix_of_pauli(&p)?)?.mul(&u)?;
            if !matrix_of_pauli(&image)?.approx_eq(&expected) {
                report.mismatches.push(format!("word [{w}]: image of {p} is {image} in the tableau"));
            }
        }
    }
    Ok(report)
}

/// The gate matrices as printed in the usual gate table.
pub mod literal {
    use super::*;

    pub fn z() -> UnitaryMatrix {
        m2([[1.0, 0.0], [0.0, -1.0]])
    }

    pub fn x() -> UnitaryMatrix {
        m2([[0.0, 1.0], [1.0, 0.0]])
    }

    pub fn h() -> UnitaryMatrix {
        let r = std::f64::consts::FRAC_1_SQRT_2;
        m2([[r, r], [r, -r]])
    }

    pub fn s() -> UnitaryMatrix {
        UnitaryMatrix::from_rows(&[&[c(1.0, 0.0), c(0.0, 0.0)], &[c(0.0, 0.0), omega_pow(2)]]).expect("2x2")
    }

    pub fn cz() -> UnitaryMatrix {
        perm4(&[0, 1, 2, 3], &[1.0, 1.0, 1.0, -1.0])
    }

    pub fn cx() -> UnitaryMatrix {
        perm4(&[0, 1, 3, 2], &[1.0; 4])
    }

    pub fn swap() -> UnitaryMatrix {
        perm4(&[0, 2, 1, 3], &[1.0; 4])
    }

    fn m2(v: [[f64; 2]; 2]) -> UnitaryMatrix {
        UnitaryMatrix::from_rows(&[&[c(v[0][0], 0.0), c(v[0][1], 0.0)], &[c(v[1][0], 0.0), c(v[1][1], 0.0)]])
            .expect("2x2")
    }

    /// Row `r` has `signs[r]` in column `cols[r]`.
    fn perm4(cols: &[usize; 4], signs: &[f64; 4]) -> UnitaryMatrix {
        let mut rows = vec![[c(0.0, 0.0); 4]; 4];
        for r in 0..4 {
            rows[r][cols[r]] = c(signs[r], 0.0);
        }
        let refs: Vec<&[Complex64]> = rows.iter().map(|r| r.as_slice()).collect();
        UnitaryMatrix::from_rows(&refs).expect("4x4")
    }
}

/// Result of testing the two readings of the controlled-X identity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CxReport {
    /// `h_2 z_1 h_2` equals CX up to phase.
    pub z_reading_matches: bool,
    /// `h_2 cz_1 h_2` equals CX up to phase.
    pub cz_reading_matches: bool,
}

impl CxReport {
    pub fn describe(&self) -> String {
        format!("h2 z1 h2 == CX: {}; h2 cz1 h2 == CX: {}", self.z_reading_matches, self.cz_reading_matches)
    }
}

/// Evaluates both candidate words for CX against the literal matrix.
pub fn cx_discrepancy() -> CxReport {
    let cx = literal::cx();
    let z_reading = matrix_of_word(&GeneratorWord::parse(2, "h2 s1 s1 h2").unwrap()).unwrap();
    let cz_reading = matrix_of_word(&GeneratorWord::parse(2, "h2 cz1:2 h2").unwrap()).unwrap();
    CxReport {
        z_reading_matches: equal_up_to_phase(&z_reading, &cx).unwrap(),
        cz_reading_matches: equal_up_to_phase(&cz_reading, &cx).unwrap(),
    }
}

/// Exhaustive check of every word of length `<= max_len` over `{h1, s1}`.
pub fn check_all_single_qubit_words(max_len: usize) -> Result<OracleReport> {
    let mut report = OracleReport::default();
    let mut frontier = vec![Vec::<Letter>::new()];
    for _ in 0..=max_len {
        let mut next = Vec::new();
        for letters in frontier {
            report.merge(check_tableau(&GeneratorWord::new(1, letters.clone())?)?);
            for l in [Letter::H(1), Letter::S(1)] {
                let mut nl = letters.clone();
                nl.push(l);
                next.push(nl);
            }
        }
        frontier = next;
    }
    Ok(report)
}

/// Checks `count` random words of length `len` on `n` qubits.
pub fn check_random_words(n: usize, count: usize, len: usize, seed: u64) -> Result<OracleReport> {
    use rand::SeedableRng;
    check_capacity(n)?;
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let mut report = OracleReport::default();
    for _ in 0..count {
        let w = crate::tableau::random_word(n, len, &mut rng);
        report.merge(check_tableau(&w)?);
    }
    Ok(report)
}

/// Checks every standard generator on `n` qubits.
pub fn check_generators(n: usize) -> Result<OracleReport> {
    let mut report = OracleReport::default();
    let mut letters: Vec<Letter> = (1..=n).flat_map(|q| [Letter::H(q), Letter::S(q)]).collect();
    for a in 1..=n {
        for b in 1..=n {
            if a != b {
                letters.push(Letter::Cz(a, b));
            }
        }
    }
    for l in letters {
        report.merge(check_tableau(&GeneratorWord::new(n, vec![l])?)?);
    }
    Ok(report)
}
