//! Normal forms `L^(n) M^(n) ... L^(1) M^(1)` built from the basic gates A–E,
//! synthesis by per-level lookup, and the gate rewriting identities.
//!
//! Two-qubit basic gates act on qubits `(q, q+1)`; local wire 1 is the lower
//! index. The level-`k` block acts on qubits `1..k`. Its L part is A on qubit
//! `l`, then B on `(l-1,l)`, ..., `(1,2)`, then C on qubit 1; its M part is D
//! on `(1,2)`, ..., `(k-1,k)`, then E on qubit `k`.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

use crate::error::{Error, Result};
use crate::pauli::PhasedPauli;
use crate::report::{Check, Report};
use crate::tableau::{
    compose_unchecked, conjugate_unchecked, inverse, word_eval, CliffordTableau, GeneratorWord, Letter,
};

/// Largest level for which a lookup table may be built.
pub const MAX_LEVEL: usize = 5;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Family {
    A,
    B,
    C,
    D,
    E,
}

impl Family {
    pub fn size(self) -> u8 {
        match self {
            Family::A => 3,
            Family::B | Family::D | Family::E => 4,
            Family::C => 2,
        }
    }

    pub fn is_two_qubit(self) -> bool {
        matches!(self, Family::B | Family::D)
    }

    /// Defining word on local wires 1 (and 2).
    fn local_word(self, index: u8) -> &'static str {
        match (self, index) {
            (Family::A, 1) | (Family::C, 1) | (Family::E, 1) => "",
            (Family::A, 2) => "h1",
            (Family::A, 3) => "h1 s1 h1",
            (Family::B, 1) => "h2 cz1 h1 h2 cz1 h1 h2 cz1",
            (Family::B, 2) => "cz1 h1 h2 cz1",
            (Family::B, 3) => "h1 s1 cz1 h1 h2 cz1",
            (Family::B, 4) => "h1 cz1 h1 h2 cz1",
            (Family::C, 2) => "h1 s1 s1 h1",
            (Family::D, 1) => "cz1 h1 h2 cz1 h1 h2 cz1 h2",
            (Family::D, 2) => "h1 cz1 h1 h2 cz1 h2",
            (Family::D, 3) => "h1 h2 s2 cz1 h1 h2 cz1 h2",
            (Family::D, 4) => "h1 h2 cz1 h1 h2 cz1 h2",
            (Family::E, 2) => "s1",
            (Family::E, 3) => "s1 s1",
            (Family::E, 4) => "s1 s1 s1",
            _ => unreachable!("index checked by BasicGate::new"),
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = match self {
            Family::A => 'A',
            Family::B => 'B',
            Family::C => 'C',
            Family::D => 'D',
            Family::E => 'E',
        };
        write!(f, "{c}")
    }
}

/// A basic gate placed on qubit `qubit` (and `qubit + 1` for B and D).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct BasicGate {
    pub family: Family,
    pub index: u8,
    pub qubit: usize,
}

impl BasicGate {
    pub fn new(family: Family, index: u8, qubit: usize) -> Result<Self> {
        if index == 0 || index > family.size() {
            return Err(Error::InvalidGate(format!("{family}{index} does not exist")));
        }
        if qubit == 0 {
            return Err(Error::QubitIndex { index: 0, n: 0 });
        }
        Ok(Self { family, index, qubit })
    }

    /// Highest qubit touched.
    pub fn top(&self) -> usize {
        self.qubit + self.family.is_two_qubit() as usize
    }

    pub fn letters(&self) -> Vec<Letter> {
        let shift = self.qubit - 1;
        GeneratorWord::parse(2, self.family.local_word(self.index))
            .expect("basic gate words are well formed")
            .letters
            .into_iter()
            .map(|l| match l {
                Letter::H(q) => Letter::H(q + shift),
                Letter::S(q) => Letter::S(q + shift),
                Letter::Cz(a, b) => Letter::Cz(a + shift, b + shift),
            })
            .collect()
    }

    pub fn word(&self, n: usize) -> Result<GeneratorWord> {
        if self.top() > n {
            return Err(Error::QubitIndex { index: self.top(), n });
        }
        GeneratorWord::new(n, self.letters())
    }
}

pub fn basic_gate_tableau(g: BasicGate, n: usize) -> Result<CliffordTableau> {
    word_eval(&g.word(n)?)
}

/// Parameters of one level `k`: the L part `(l, a, b, c)` and the M part `(d, e)`.
/// `b` lists B indices in circuit order, pair `(l-1,l)` first; `d` lists D
/// indices in circuit order, pair `(1,2)` first.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LevelParams {
    pub k: usize,
    pub l: usize,
    pub a: u8,
    pub b: Vec<u8>,
    pub c: u8,
    pub d: Vec<u8>,
    pub e: u8,
}

impl LevelParams {
    pub fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(Error::InvalidGate(m));
        if self.k == 0 || self.l == 0 || self.l > self.k {
            return bad(format!("level {} with layer {}", self.k, self.l));
        }
        if self.b.len() != self.l - 1 || self.d.len() != self.k - 1 {
            return bad(format!("level {} layer {} needs {} B and {} D gates", self.k, self.l, self.l - 1, self.k - 1));
        }
        let in_range = |v: u8, f: Family| v >= 1 && v <= f.size();
        if !in_range(self.a, Family::A)
            || !in_range(self.c, Family::C)
            || !in_range(self.e, Family::E)
            || !self.b.iter().all(|&v| in_range(v, Family::B))
            || !self.d.iter().all(|&v| in_range(v, Family::D))
        {
            return bad(format!("gate index out of range in level {}", self.k));
        }
        Ok(())
    }

    /// Basic gates of the block in circuit order.
    pub fn gates(&self) -> Vec<BasicGate> {
        let mut g = Vec::with_capacity(self.l + self.k + 1);
        g.push(BasicGate { family: Family::A, index: self.a, qubit: self.l });
        for (i, &bi) in self.b.iter().enumerate() {
            g.push(BasicGate { family: Family::B, index: bi, qubit: self.l - 1 - i });
        }
        g.push(BasicGate { family: Family::C, index: self.c, qubit: 1 });
        for (i, &di) in self.d.iter().enumerate() {
            g.push(BasicGate { family: Family::D, index: di, qubit: i + 1 });
        }
        g.push(BasicGate { family: Family::E, index: self.e, qubit: self.k });
        g
    }

    pub fn letters(&self) -> Vec<Letter> {
        self.gates().iter().flat_map(BasicGate::letters).collect()
    }

    /// The block of the identity: `l = k` and every index 1 (each `B1`
    /// cancels against the matching `D1`).
    pub fn trivial(k: usize) -> Self {
        Self { k, l: k, a: 1, b: vec![1; k - 1], c: 1, d: vec![1; k - 1], e: 1 }
    }
}

fn fmt_list(v: &[u8]) -> String {
    let items: Vec<String> = v.iter().map(u8::to_string).collect();
    format!("[{}]", items.join(","))
}

impl fmt::Display for LevelParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "L{k}: l={} A{} B{} C{} | M{k}: D{} E{}",
            self.l,
            self.a,
            fmt_list(&self.b),
            self.c,
            fmt_list(&self.d),
            self.e,
            k = self.k
        )
    }
}

impl FromStr for LevelParams {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("bad normal-form level {s:?}"));
        let (lpart, mpart) = s.split_once('|').ok_or_else(bad)?;
        let lt: Vec<&str> = lpart.split_whitespace().collect();
        let mt: Vec<&str> = mpart.split_whitespace().collect();
        if lt.len() != 5 || mt.len() != 3 {
            return Err(bad());
        }
        let num = |t: &str, prefix: &str| -> Result<usize> {
            t.strip_prefix(prefix).and_then(|r| r.parse().ok()).ok_or_else(bad)
        };
        let list = |t: &str, prefix: &str| -> Result<Vec<u8>> {
            let body = t
                .strip_prefix(prefix)
                .and_then(|r| r.strip_prefix('['))
                .and_then(|r| r.strip_suffix(']'))
                .ok_or_else(bad)?;
            if body.is_empty() {
                return Ok(Vec::new());
            }
            body.split(',').map(|v| v.parse().map_err(|_| bad())).collect()
        };
        let k = num(lt[0].strip_suffix(':').ok_or_else(bad)?, "L")?;
        if num(mt[0].strip_suffix(':').ok_or_else(bad)?, "M")? != k {
            return Err(bad());
        }
        let p = Self {
            k,
            l: num(lt[1], "l=")?,
            a: num(lt[2], "A")? as u8,
            b: list(lt[3], "B")?,
            c: num(lt[4], "C")? as u8,
            d: list(mt[1], "D")?,
            e: num(mt[2], "E")? as u8,
        };
        p.validate()?;
        Ok(p)
    }
}

/// Levels `k = n, n-1, ..., 1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct NormalFormParams {
    pub n: usize,
    pub levels: Vec<LevelParams>,
}

impl NormalFormParams {
    pub fn validate(&self) -> Result<()> {
        if self.levels.len() != self.n {
            return Err(Error::InvalidGate(format!("{} levels for n={}", self.levels.len(), self.n)));
        }
        for (i, lv) in self.levels.iter().enumerate() {
            if lv.k != self.n - i {
                return Err(Error::InvalidGate(format!("level {} out of order", lv.k)));
            }
            lv.validate()?;
        }
        Ok(())
    }

    pub fn word(&self) -> Result<GeneratorWord> {
        self.validate()?;
        GeneratorWord::new(self.n, self.levels.iter().flat_map(LevelParams::letters).collect())
    }

    pub fn trivial(n: usize) -> Self {
        Self { n, levels: (1..=n).rev().map(LevelParams::trivial).collect() }
    }
}

impl fmt::Display for NormalFormParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, lv) in self.levels.iter().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            write!(f, "{lv}")?;
        }
        Ok(())
    }
}

impl FromStr for NormalFormParams {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let levels: Vec<LevelParams> =
            s.lines().filter(|l| !l.trim().is_empty()).map(str::parse).collect::<Result<_>>()?;
        let p = Self { n: levels.first().map_or(0, |l| l.k), levels };
        p.validate()?;
        Ok(p)
    }
}

pub fn nf_to_tableau(p: &NormalFormParams) -> Result<CliffordTableau> {
    word_eval(&p.word()?)
}

fn pow4(e: usize) -> usize {
    1 << (2 * e)
}

/// Number of L parts at level `k`: `2(4^k - 1)`.
pub fn l_count(k: usize) -> usize {
    2 * (pow4(k) - 1)
}

/// Number of M parts at level `k`: `4^k`.
pub fn m_count(k: usize) -> usize {
    pow4(k)
}

fn digits(mut v: usize, len: usize) -> Vec<u8> {
    let mut out = vec![0u8; len];
    for d in out.iter_mut() {
        *d = (v % 4) as u8 + 1;
        v /= 4;
    }
    out
}

/// Decodes an L-part index in `0..l_count(k)` into `(l, a, b, c)`.
fn decode_l(k: usize, mut idx: usize) -> (usize, u8, Vec<u8>, u8) {
    for l in 1..=k {
        let count = 6 * pow4(l - 1);
        if idx < count {
            let c = (idx % 2) as u8 + 1;
            idx /= 2;
            let a = (idx % 3) as u8 + 1;
            idx /= 3;
            return (l, a, digits(idx, l - 1), c);
        }
        idx -= count;
    }
    panic!("L index out of range for level {k}");
}

fn decode_m(k: usize, idx: usize) -> (Vec<u8>, u8) {
    ((digits(idx / 4, k - 1)), (idx % 4) as u8 + 1)
}

/// Level parameters for the combined index `li * m_count(k) + mi`.
pub fn level_params_from_index(k: usize, idx: usize) -> LevelParams {
    let (l, a, b, c) = decode_l(k, idx / m_count(k));
    let (d, e) = decode_m(k, idx % m_count(k));
    LevelParams { k, l, a, b, c, d, e }
}

/// Every normal form on `n` qubits, in index order. Only sensible for small `n`.
pub fn all_params(n: usize) -> impl Iterator<Item = NormalFormParams> {
    let sizes: Vec<usize> = (1..=n).rev().map(|k| l_count(k) * m_count(k)).collect();
    let total: usize = sizes.iter().product();
    (0..total).map(move |mut idx| {
        let mut levels = Vec::with_capacity(n);
        for (i, &s) in sizes.iter().enumerate().rev() {
            levels.push((i, level_params_from_index(n - i, idx % s)));
            idx /= s;
        }
        levels.sort_by_key(|(i, _)| *i);
        NormalFormParams { n, levels: levels.into_iter().map(|(_, l)| l).collect() }
    })
}

fn pack(p: &PhasedPauli) -> u64 {
    p.x_bits() as u64 | (p.z_bits() as u64) << 16 | (p.delta() as u64) << 32
}

fn pack_pair(p: &PhasedPauli, q: &PhasedPauli) -> u128 {
    pack(p) as u128 | (pack(q) as u128) << 64
}

/// Lookup for one level: the images of `X_k` and `Z_k` under `(LM)^{-1}`,
/// mapped to the combined block index.
#[derive(Debug)]
pub struct LevelTable {
    k: usize,
    map: HashMap<u128, u32>,
}

impl LevelTable {
    pub fn k(&self) -> usize {
        self.k
    }

    pub fn len(&self) -> usize {
        self.map.len()
    }

    pub fn is_empty(&self) -> bool {
        self.map.is_empty()
    }

    pub fn get(&self, x_image: &PhasedPauli, z_image: &PhasedPauli) -> Option<LevelParams> {
        self.map.get(&pack_pair(x_image, z_image)).map(|&i| level_params_from_index(self.k, i as usize))
    }

    /// All keys, as `(image of X_k, image of Z_k)`.
    pub fn keys(&self) -> impl Iterator<Item = (PhasedPauli, PhasedPauli)> + '_ {
        let k = self.k;
        let unpack = move |v: u64| {
            PhasedPauli::new(k, (v & 0xffff) as u32, (v >> 16 & 0xffff) as u32, (v >> 32) as u8)
                .expect("stored key is valid")
        };
        self.map.keys().map(move |&key| (unpack(key as u64), unpack((key >> 64) as u64)))
    }
}

fn block_tableau(lv: &LevelParams) -> CliffordTableau {
    word_eval(&GeneratorWord { n: lv.k, letters: lv.letters() }).expect("level words are well formed")
}

/// Enumerates every level-`k` block and indexes it. Fails if two blocks share
/// a key, which would mean a basic gate word is wrong.
pub fn build_level_lookup(k: usize) -> Result<LevelTable> {
    if k == 0 || k > MAX_LEVEL {
        return Err(Error::UnsupportedN { n: k, reason: format!("level tables are limited to 1..={MAX_LEVEL}") });
    }
    let xk = PhasedPauli::x_on(k, k);
    let zk = PhasedPauli::z_on(k, k);
    let l_inv: Vec<CliffordTableau> = (0..l_count(k))
        .map(|i| {
            let (l, a, b, c) = decode_l(k, i);
            let lv = LevelParams { k, l, a, b, c, d: vec![1; k - 1], e: 1 };
            let letters: Vec<Letter> = lv.gates()[..l + 1].iter().flat_map(BasicGate::letters).collect();
            inverse(&word_eval(&GeneratorWord { n: k, letters }).expect("valid"))
        })
        .collect();
    let m_images: Vec<(PhasedPauli, PhasedPauli)> = (0..m_count(k))
        .map(|i| {
            let (d, e) = decode_m(k, i);
            let lv = LevelParams { k, l: 1, a: 1, b: Vec::new(), c: 1, d, e };
            let letters: Vec<Letter> = lv.gates()[2..].iter().flat_map(BasicGate::letters).collect();
            let minv = inverse(&word_eval(&GeneratorWord { n: k, letters }).expect("valid"));
            (conjugate_unchecked(&xk, &minv), conjugate_unchecked(&zk, &minv))
        })
        .collect();
    let mut map = HashMap::with_capacity(l_count(k) * m_count(k));
    for (li, linv) in l_inv.iter().enumerate() {
        for (mi, (px, pz)) in m_images.iter().enumerate() {
            let key = pack_pair(&conjugate_unchecked(px, linv), &conjugate_unchecked(pz, linv));
            let idx = (li * m_count(k) + mi) as u32;
            if let Some(prev) = map.insert(key, idx) {
                return Err(Error::IndexCorruption(format!(
                    "level {k} blocks {} and {} share a lookup key",
                    level_params_from_index(k, prev as usize),
                    level_params_from_index(k, idx as usize)
                )));
            }
        }
    }
    Ok(LevelTable { k, map })
}

static TABLES: [OnceLock<LevelTable>; MAX_LEVEL] = [const { OnceLock::new() }; MAX_LEVEL];

/// Cached table for level `k`, built on first use.
pub fn level_table(k: usize) -> Result<&'static LevelTable> {
    if k == 0 || k > MAX_LEVEL {
        return Err(Error::UnsupportedN { n: k, reason: format!("level tables are limited to 1..={MAX_LEVEL}") });
    }
    if let Some(t) = TABLES[k - 1].get() {
        return Ok(t);
    }
    let t = build_level_lookup(k)?;
    Ok(TABLES[k - 1].get_or_init(|| t))
}

/// Normal form of `f`.
pub fn synthesize(f: &CliffordTableau) -> Result<NormalFormParams> {
    f.validate()?;
    let n = f.n();
    let mut residual = f.clone();
    let mut levels = Vec::with_capacity(n);
    for k in (1..=n).rev() {
        let table = level_table(k)?;
        let rinv = inverse(&residual);
        let px = conjugate_unchecked(&PhasedPauli::x_on(n, k), &rinv);
        let pz = conjugate_unchecked(&PhasedPauli::z_on(n, k), &rinv);
        let lv = table
            .get(&px, &pz)
            .ok_or_else(|| Error::IndexCorruption(format!("no level-{k} block matches the residual")))?;
        let block = block_tableau(&lv).embed(n)?;
        residual = compose_unchecked(&inverse(&block), &residual);
        if residual.im_x(k) != PhasedPauli::x_on(n, k) || residual.im_z(k) != PhasedPauli::z_on(n, k) {
            return Err(Error::IndexCorruption(format!("residual still acts on qubit {k}")));
        }
        levels.push(lv);
    }
    if !residual.is_identity() {
        return Err(Error::IndexCorruption("non-trivial residual after the last level".into()));
    }
    Ok(NormalFormParams { n, levels })
}

/// Expands a word mixing generator letters (`h1`, `s2`, `cz1`), Paulis
/// (`x1` = `h1 s1 s1 h1`, `z1` = `s1 s1`) and basic gates (`B3`, `D4@2`,
/// `E2@3`; position defaults to qubit 1).
pub fn expand_gate_word(n: usize, text: &str) -> Result<GeneratorWord> {
    let mut letters = Vec::new();
    for tok in text.split_whitespace() {
        let first = tok.chars().next().unwrap_or(' ');
        if first.is_ascii_uppercase() {
            let family = match first {
                'A' => Family::A,
                'B' => Family::B,
                'C' => Family::C,
                'D' => Family::D,
                'E' => Family::E,
                _ => return Err(Error::Parse(format!("unknown basic gate {tok:?}"))),
            };
            let (idx, pos) = tok[1..].split_once('@').unwrap_or((&tok[1..], "1"));
            let parse = |s: &str| s.parse::<usize>().map_err(|_| Error::Parse(format!("bad token {tok:?}")));
            letters.extend(BasicGate::new(family, parse(idx)? as u8, parse(pos)?)?.word(n)?.letters);
        } else if let Some(q) = tok.strip_prefix('x') {
            letters.extend(GeneratorWord::parse(n, &format!("h{q} s{q} s{q} h{q}"))?.letters);
        } else if let Some(q) = tok.strip_prefix('z') {
            letters.extend(GeneratorWord::parse(n, &format!("s{q} s{q}"))?.letters);
        } else {
            letters.push(tok.parse()?);
        }
    }
    GeneratorWord::new(n, letters)
}

fn identity_check(name: String, n: usize, lhs: &str, rhs: &str) -> Check {
    let eval = |s: &str| expand_gate_word(n, s).and_then(|w| word_eval(&w));
    let ok = match (eval(lhs), eval(rhs)) {
        (Ok(a), Ok(b)) => a == b,
        _ => false,
    };
    Check::holds(name, ok)
}

/// Checks every gate rewriting identity used by the centraliser arguments.
pub fn verify_rewrite_identities() -> Report {
    let mut r = Report::default();
    let mut eq = |name: String, lhs: &str, rhs: &str| r.push(identity_check(name, 2, lhs, rhs));

    // Layer-1 obstruction for s_1^2.
    for i in 1..=2 {
        for j in 1..=4 {
            eq(format!("z1.l1.A1C{i}D{j}"), &format!("z1 A1 C{i} D{j}"), &format!("A1 C{i} D{j} z2"));
        }
    }
    for i in 1..=4 {
        let u = if i == 1 { "" } else { "h1 z1 h1" };
        eq(format!("z1.l1.A2C1D{i}"), &format!("z1 A2 C1 D{i}"), &format!("A2 C1 D{i} {u} h2 z2 h2"));
        eq(format!("z1.l1.A2C2D{i}"), &format!("z1 A2 C2 D{i}"), &format!("A2 C1 D{i}"));
    }
    for t in 1..=2 {
        eq(format!("z1.l1.A3C{t}"), &format!("z1 A3 C{t}"), &format!("A3 C{} z1", 3 - t));
    }

    // s_1^2 and h_1 s_1^2 h_1 through B.
    let z_b = ["B1 h2 z2 h2", "B2 x1 z2", "B3 x1 h2 z2 h2 z2", "B4 h2 z2 h2"];
    let x_b = ["B1 z2", "B2 h2 z2 h2", "B3 x1 z2", "B4 x1 z2"];
    // s_2^2 and h_2 s_2^2 h_2 through D.
    let z_d = ["D1 h1 z1 h1", "D2 z1 z2", "D3 h1 z1 h1 z1 z2", "D4 h1 z1 h1"];
    let x_d = ["D1 z1", "D2 h1 z1 h1", "D3 z1 z2", "D4 z1 z2"];
    for i in 0..4 {
        let g = i + 1;
        eq(format!("z.sB.B{g}"), &format!("z1 B{g}"), z_b[i]);
        eq(format!("z.hsshB.B{g}"), &format!("h1 z1 h1 B{g}"), x_b[i]);
        eq(format!("z.sD.D{g}"), &format!("z2 D{g}"), z_d[i]);
        eq(format!("z.hsshD.D{g}"), &format!("h2 z2 h2 D{g}"), x_d[i]);
    }

    // s_1 and h_1 s_1 h_1 through B; s_2 and h_2 s_2 h_2 through D.
    let s_b = ["B1 h2 s2 h2", "B3 x1 s2 s2 s2 h2 s2", "B2 s2 h2 s2", "B4 h2 s2 h2"];
    let hsh_b = ["B1 s2", "B2 h2 s2 h2", "B4 x1 z2", "B3"];
    let s_d = ["D1 h1 s1 h1", "D3 s1 s1 s1 h1 s1 z2", "D2 s1 h1 s1", "D4 h1 s1 h1"];
    let hsh_d = ["D1 s1", "D2 h1 s1 h1", "D4 z1 z2", "D3"];
    for i in 0..4 {
        let g = i + 1;
        eq(format!("s.sB.B{g}"), &format!("s1 B{g}"), s_b[i]);
        eq(format!("s.hshB.B{g}"), &format!("h1 s1 h1 B{g}"), hsh_b[i]);
        eq(format!("s.sD.D{g}"), &format!("s2 D{g}"), s_d[i]);
        eq(format!("s.hshD.D{g}"), &format!("h2 s2 h2 D{g}"), hsh_d[i]);
    }

    // Conditions on the top gates of L^(n), and the Num_1 conditions.
    for (tag, p, hp) in [("z", "z1", "h1 z1 h1"), ("s", "s1", "h1 s1 h1")] {
        for b in [1, 4] {
            for c in 1..=2 {
                eq(format!("{tag}.top.B{b}C{c}D2"), &format!("{p} B{b} C{c} D2"), &format!("B{b} C{c} D2 {hp}"));
                eq(format!("{tag}.top.B{b}C{c}D1"), &format!("{p} B{b} C{c} D1"), &format!("B{b} C{c} D1 {p}"));
            }
        }
        for c in 1..=2 {
            for (b, d, tail) in [(1, 1, hp), (1, 4, hp), (2, 1, p), (2, 2, hp)] {
                eq(
                    format!("{tag}.num1.B{b}C{c}D{d}"),
                    &format!("{hp} B{b} C{c} D{d}"),
                    &format!("B{b} C{c} D{d} {tail}"),
                );
            }
        }
    }

    // Two-point centraliser conditions.
    for c in 1..=2 {
        eq(format!("pair.s.B1C{c}D1"), &format!("s1 B1 C{c} D1"), &format!("B1 C{c} D1 s1"));
        eq(format!("pair.hsh.B1C{c}D1"), &format!("h1 s1 h1 B1 C{c} D1"), &format!("B1 C{c} D1 h1 s1 h1"));
    }

    // Worked three-qubit rewriting chain.
    let chain = [
        "s1 B1 C2 D3 D4@2 E2@3 B4 C1 D2 E4@2 A1 C2 E3",
        "B1 C2 h2 s2 h2 D3 D4@2 E2@3 B4 C1 D2 E4@2 A1 C2 E3",
        "B1 C2 D4 z1 z2 D4@2 E2@3 B4 C1 D2 E4@2 A1 C2 E3",
        "B1 C2 D4 D4@2 E4@3 B4 C1 h2 z2 h2 D2 E4@2 A1 C2 E3",
        "B1 C2 D4 D4@2 E4@3 B4 C1 D2 h1 z1 h1 E4@2 A1 C2 E3",
        "B1 C2 D4 D4@2 E4@3 B4 C1 D2 E4@2 A1 C1 E3",
    ];
    for i in 1..chain.len() {
        r.push(identity_check(format!("chain.step{i}"), 3, chain[i - 1], chain[i]));
    }
    r.push(identity_check("chain.ends".into(), 3, chain[0], chain[chain.len() - 1]));
    r
}
