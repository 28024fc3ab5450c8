//! Finite presentations of `C_n`, `IN_n` and `IN_n / P_n`, with relator checks
//! in the tableau model, coset enumeration, and the centraliser theorem
//! checks.
//!
//! Symbols are written `h1`, `s2`, `cz1` (for `Λ_1`) and `g`. A relator is a
//! word over symbols and their formal inverses, written `s1^-1`.

mod coset_enum;
mod theorems;

use std::fmt;
use std::str::FromStr;

pub use coset_enum::{todd_coxeter, CosetOutcome, DEFAULT_MAX_COSETS};
pub use theorems::{num_counts, verify_theorems, NumCounts, MAX_THEOREM_N};

use crate::error::{Error, Result};
use crate::report::{Check, Report};
use crate::tableau::{compose_unchecked, inverse, is_pauli, word_eval, CliffordTableau, GeneratorWord};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PresentationKind {
    Cn,
    INn,
    INnModPn,
}

impl fmt::Display for PresentationKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            PresentationKind::Cn => "Cn",
            PresentationKind::INn => "INn",
            PresentationKind::INnModPn => "INnModPn",
        })
    }
}

/// One letter: a generator index and whether it is inverted.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Sym {
    pub gen: usize,
    pub inv: bool,
}

impl Sym {
    fn inverse(self) -> Self {
        Self { gen: self.gen, inv: !self.inv }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Relator {
    /// Source rule and instance, such as `R8[j=1]`.
    pub label: String,
    pub word: Vec<Sym>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Presentation {
    pub kind: Option<PresentationKind>,
    pub n: usize,
    pub symbols: Vec<String>,
    pub relators: Vec<Relator>,
    /// Set for the one-qubit variants, which the source theorems do not cover.
    pub extrapolated: bool,
}

/// Cancels adjacent inverse pairs.
pub fn free_reduce(word: &[Sym]) -> Vec<Sym> {
    let mut out: Vec<Sym> = Vec::with_capacity(word.len());
    for &s in word {
        if out.last() == Some(&s.inverse()) {
            out.pop();
        } else {
            out.push(s);
        }
    }
    out
}

/// Builds relators from text such as `h1 s1 s1 h1 cz1` for one side of an
/// equation.
struct Builder<'a> {
    symbols: &'a [String],
    relators: Vec<Relator>,
}

impl Builder<'_> {
    fn word(&self, text: &str) -> Vec<Sym> {
        text.split_whitespace()
            .map(|t| {
                let (name, inv) = match t.strip_suffix("^-1") {
                    Some(base) => (base, true),
                    None => (t, false),
                };
                let gen = self
                    .symbols
                    .iter()
                    .position(|s| s == name)
                    .unwrap_or_else(|| panic!("builtin relator uses undeclared symbol {name}"));
                Sym { gen, inv }
            })
            .collect()
    }

    /// Relator `lhs * rhs^{-1}`.
    fn eq(&mut self, label: String, lhs: &str, rhs: &str) {
        let mut w = self.word(lhs);
        w.extend(self.word(rhs).into_iter().rev().map(Sym::inverse));
        self.relators.push(Relator { label, word: free_reduce(&w) });
    }

    fn one(&mut self, label: String, w: &str) {
        self.eq(label, w, "");
    }
}

fn rep(w: &str, times: usize) -> String {
    vec![w; times].join(" ")
}

// Relator families shared by the three presentations. `h_lo` is the first
// `h` index present; ranges are inclusive `(lo, hi)` pairs.

fn commutations(b: &mut Builder, tag: &str, n: usize, h_lo: usize) {
    for i in h_lo..=n {
        for j in i + 1..=n {
            b.eq(format!("{tag}[h{i},h{j}]"), &format!("h{i} h{j}"), &format!("h{j} h{i}"));
        }
    }
    for i in 1..=n {
        for j in i + 1..=n {
            b.eq(format!("{tag}[s{i},s{j}]"), &format!("s{i} s{j}"), &format!("s{j} s{i}"));
        }
    }
    for i in 1..n {
        for j in i + 1..n {
            b.eq(format!("{tag}[cz{i},cz{j}]"), &format!("cz{i} cz{j}"), &format!("cz{j} cz{i}"));
        }
    }
}

fn cz_s(b: &mut Builder, tag: &str, n: usize) {
    for j in 1..n {
        for i in 1..=n {
            b.eq(format!("{tag}[j={j},i={i}]"), &format!("cz{j} s{i}"), &format!("s{i} cz{j}"));
        }
    }
}

fn cz_h(b: &mut Builder, tag: &str, n: usize, h_lo: usize) {
    for j in 1..n {
        for i in h_lo..=n {
            if i != j && i != j + 1 {
                b.eq(format!("{tag}[j={j},i={i}]"), &format!("cz{j} h{i}"), &format!("h{i} cz{j}"));
            }
        }
    }
}

fn r8(b: &mut Builder, tag: &str, (lo, hi): (usize, usize)) {
    for j in lo..=hi {
        let k = j + 1;
        b.eq(
            format!("{tag}[j={j}]"),
            &format!("h{j} s{j} s{j} h{j} cz{j}"),
            &format!("cz{j} h{j} s{k} s{k} s{j} s{j} h{j}"),
        );
    }
}

fn r9(b: &mut Builder, tag: &str, n: usize) {
    for j in 1..n {
        let k = j + 1;
        b.eq(
            format!("{tag}[j={j}]"),
            &format!("h{k} s{k} s{k} h{k} cz{j}"),
            &format!("cz{j} h{k} s{k} s{k} s{j} s{j} h{k}"),
        );
    }
}

fn r10(b: &mut Builder, tag: &str, (lo, hi): (usize, usize)) {
    for j in lo..=hi {
        let k = j + 1;
        b.eq(format!("{tag}[j={j}]"), &format!("cz{j} h{j} cz{j}"), &format!("s{j} h{j} cz{j} s{k} s{j} h{j} s{j}"));
    }
}

fn r11(b: &mut Builder, tag: &str, n: usize) {
    for j in 1..n {
        let k = j + 1;
        b.eq(format!("{tag}[j={j}]"), &format!("cz{j} h{k} cz{j}"), &format!("s{k} h{k} cz{j} s{k} s{j} h{k} s{k}"));
    }
}

fn r12(b: &mut Builder, tag: &str, (lo, hi): (usize, usize)) {
    for j in lo..=hi {
        let (k, m) = (j + 1, j + 2);
        let (a, c) = (format!("cz{j}"), format!("cz{k}"));
        b.eq(
            format!("{tag}[j={j}]"),
            &format!("{a} h{k} h{j} {a} h{m} h{k} {c} h{m} h{k} {a} h{k} h{j} {a}"),
            &format!("{c} h{m} h{k} {c} h{k} h{j} {a} h{k} h{j} {c} h{m} h{k} {c}"),
        );
    }
}

fn r13(b: &mut Builder, tag: &str, (lo, hi): (usize, usize)) {
    for j in lo..=hi {
        let k = j + 1;
        b.one(format!("{tag}[j={j}]"), &rep(&format!("cz{j} h{k} h{j} cz{j} h{k} h{j} cz{k}"), 3));
    }
}

fn r14(b: &mut Builder, tag: &str, n: usize) {
    for j in 1..=n.saturating_sub(2) {
        let (k, m) = (j + 1, j + 2);
        b.one(format!("{tag}[j={j}]"), &rep(&format!("cz{k} h{m} h{k} cz{k} h{m} h{k} cz{j}"), 3));
    }
}

fn local_orders(b: &mut Builder, n: usize, h_lo: usize, s_order: bool) {
    for i in h_lo..=n {
        b.one(format!("R1[h{i}]"), &format!("h{i} h{i}"));
    }
    if s_order {
        for i in 1..=n {
            b.one(format!("R1[s{i}]"), &rep(&format!("s{i}"), 4));
        }
    }
    for j in 1..n {
        b.one(format!("R1[cz{j}]"), &format!("cz{j} cz{j}"));
    }
}

fn single_qubit(b: &mut Builder, n: usize, h_lo: usize, full: bool) {
    for i in h_lo..=n {
        b.one(format!("R2[i={i}]"), &rep(&format!("s{i} h{i}"), 3));
    }
    if full {
        for i in h_lo..=n {
            b.one(format!("R3[i={i}]"), &rep(&format!("s{i} s{i} s{i} h{i} s{i} h{i}"), 3));
        }
        for i in h_lo..=n {
            b.one(format!("R4[i={i}]"), &rep(&format!("s{i} s{i} h{i} s{i} s{i} h{i}"), 2));
        }
    }
}

fn symbols(n: usize, with_g: bool, h_lo: usize) -> Vec<String> {
    let mut s = Vec::new();
    if with_g {
        s.push("g".to_string());
    }
    s.extend((h_lo..=n).map(|i| format!("h{i}")));
    s.extend((1..=n).map(|i| format!("s{i}")));
    s.extend((1..n).map(|j| format!("cz{j}")));
    s
}

fn cn(n: usize) -> Presentation {
    let syms = symbols(n, false, 1);
    let mut b = Builder { symbols: &syms, relators: Vec::new() };
    local_orders(&mut b, n, 1, true);
    single_qubit(&mut b, n, 1, true);
    if n >= 2 {
        commutations(&mut b, "R5", n, 1);
        cz_s(&mut b, "R6", n);
        cz_h(&mut b, "R7", n, 1);
        r8(&mut b, "R8", (1, n - 1));
        r9(&mut b, "R9", n);
        r10(&mut b, "R10", (1, n - 1));
        r11(&mut b, "R11", n);
    }
    if n >= 3 {
        r12(&mut b, "R12", (1, n - 2));
        r13(&mut b, "R13", (1, n - 2));
        r14(&mut b, "R14", n);
    }
    let relators = b.relators;
    Presentation { kind: Some(PresentationKind::Cn), n, symbols: syms, relators, extrapolated: n == 1 }
}

fn inn(n: usize) -> Presentation {
    let syms = symbols(n, true, 2);
    let mut b = Builder { symbols: &syms, relators: Vec::new() };
    b.one("Q1".into(), "g g");
    for i in 2..=n {
        b.eq(format!("Q2[i={i}]"), &format!("g h{i} g"), &format!("h{i}"));
    }
    b.eq("Q3[j=1]".into(), "g s1 g", "s1 s1 s1");
    for j in 2..=n {
        b.eq(format!("Q3[j={j}]"), &format!("g s{j} g"), &format!("s{j}"));
    }
    if n >= 2 {
        b.eq("Q4[k=1]".into(), "g cz1 g", "cz1 s2 s2");
    }
    for k in 2..n {
        b.eq(format!("Q4[k={k}]"), &format!("g cz{k} g"), &format!("cz{k}"));
    }
    local_orders(&mut b, n, 2, true);
    single_qubit(&mut b, n, 2, true);
    if n >= 2 {
        commutations(&mut b, "R5", n, 2);
        cz_s(&mut b, "R6", n);
        cz_h(&mut b, "R7", n, 2);
        r8(&mut b, "R8", (2, n - 1));
        r9(&mut b, "R9", n);
        r10(&mut b, "R10", (2, n - 1));
        r11(&mut b, "R11", n);
    }
    if n >= 3 {
        r12(&mut b, "R12", (2, n - 2));
        r13(&mut b, "R13", (2, n - 2));
        r14(&mut b, "R14", n);
    }
    let relators = b.relators;
    Presentation { kind: Some(PresentationKind::INn), n, symbols: syms, relators, extrapolated: n == 1 }
}

fn inn_mod_pn(n: usize) -> Presentation {
    let syms = symbols(n, true, 2);
    let mut b = Builder { symbols: &syms, relators: Vec::new() };
    b.one("P1[s1g]".into(), "s1 g");
    for j in 1..=n {
        b.one(format!("P1[s{j}^2]"), &format!("s{j} s{j}"));
    }
    b.one("Q1".into(), "g g");
    for name in syms.iter().skip(1) {
        b.eq(format!("Q2[{name}]"), &format!("g {name}"), &format!("{name} g"));
    }
    for i in 2..=n {
        b.one(format!("R1[h{i}]"), &format!("h{i} h{i}"));
    }
    for j in 1..n {
        b.one(format!("R1[cz{j}]"), &format!("cz{j} cz{j}"));
    }
    single_qubit(&mut b, n, 2, false);
    if n >= 2 {
        commutations(&mut b, "R3", n, 2);
        cz_s(&mut b, "R4", n);
        cz_h(&mut b, "R5", n, 2);
        r10(&mut b, "R6", (2, n - 1));
        r11(&mut b, "R7", n);
    }
    if n >= 3 {
        r12(&mut b, "R8", (2, n - 2));
        r13(&mut b, "R9", (2, n - 2));
        r14(&mut b, "R10", n);
    }
    let relators = b.relators;
    Presentation { kind: Some(PresentationKind::INnModPn), n, symbols: syms, relators, extrapolated: n == 1 }
}

/// Builtin presentation. `n = 1` gives the one-qubit variants, which are
/// extrapolations and flagged as such.
pub fn builtin_presentation(kind: PresentationKind, n: usize) -> Result<Presentation> {
    if n == 0 || n > crate::pauli::MAX_QUBITS {
        return Err(Error::UnsupportedN { n, reason: "presentations need 1 <= n <= 16".into() });
    }
    Ok(match kind {
        PresentationKind::Cn => cn(n),
        PresentationKind::INn => inn(n),
        PresentationKind::INnModPn => inn_mod_pn(n),
    })
}

impl Presentation {
    pub fn word_text(&self, w: &[Sym]) -> String {
        w.iter()
            .map(|s| if s.inv { format!("{}^-1", self.symbols[s.gen]) } else { self.symbols[s.gen].clone() })
            .collect::<Vec<_>>()
            .join(" ")
    }

    /// Parses a word over this presentation's symbols.
    pub fn parse_word(&self, text: &str) -> Result<Vec<Sym>> {
        text.split_whitespace()
            .map(|t| {
                let (name, inv) = match t.strip_suffix("^-1") {
                    Some(base) => (base, true),
                    None => (t, false),
                };
                let gen = self
                    .symbols
                    .iter()
                    .position(|s| s == name)
                    .ok_or_else(|| Error::Parse(format!("undeclared symbol {name:?}")))?;
                Ok(Sym { gen, inv })
            })
            .collect()
    }
}

/// `gen ...` line followed by one `rel ...` line per relator.
impl fmt::Display for Presentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "gen {}", self.symbols.join(" "))?;
        for r in &self.relators {
            writeln!(f, "rel {}", self.word_text(&r.word))?;
        }
        Ok(())
    }
}

/// Accepts statements separated by newlines or `;`. Parsed presentations
/// carry no kind; relator labels are their 1-based positions.
impl FromStr for Presentation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut p = Presentation { kind: None, n: 0, symbols: Vec::new(), relators: Vec::new(), extrapolated: false };
        let mut seen_gen = false;
        for stmt in s.split(['\n', ';']).map(str::trim).filter(|t| !t.is_empty()) {
            if let Some(rest) = stmt.strip_prefix("gen") {
                if seen_gen {
                    return Err(Error::Parse("more than one gen statement".into()));
                }
                seen_gen = true;
                p.symbols = rest.split_whitespace().map(String::from).collect();
                if p.symbols.iter().any(|s| s.ends_with("^-1")) {
                    return Err(Error::Parse("generator names cannot end in ^-1".into()));
                }
            } else if let Some(rest) = stmt.strip_prefix("rel") {
                if !seen_gen {
                    return Err(Error::Parse("rel before gen".into()));
                }
                let word = free_reduce(&p.parse_word(rest)?);
                let label = (p.relators.len() + 1).to_string();
                p.relators.push(Relator { label, word });
            } else {
                return Err(Error::Parse(format!("unknown statement {stmt:?}")));
            }
        }
        if !seen_gen {
            return Err(Error::Parse("missing gen statement".into()));
        }
        Ok(p)
    }
}

/// `g = h1 s1 h1 s1^3 h1`, the image of the extra symbol of `IN_n`.
pub fn g_word(n: usize) -> GeneratorWord {
    GeneratorWord::parse(n, "h1 s1 h1 s1 s1 s1 h1").expect("valid")
}

/// Tableau of a builtin symbol on `n` qubits.
pub fn symbol_tableau(name: &str, n: usize) -> Result<CliffordTableau> {
    if name == "g" {
        return word_eval(&g_word(n));
    }
    word_eval(&GeneratorWord::parse(n, name)?)
}

fn evaluate(p: &Presentation, images: &[(CliffordTableau, CliffordTableau)], w: &[Sym]) -> CliffordTableau {
    let mut t = CliffordTableau::identity(p.n);
    for s in w {
        let (g, ginv) = &images[s.gen];
        t = compose_unchecked(&t, if s.inv { ginv } else { g });
    }
    t
}

/// Evaluates every relator in the tableau model: it must be the identity
/// (`Cn`, `INn`) or a Pauli (`INnModPn`).
pub fn verify_relators(kind: PresentationKind, n: usize) -> Result<Report> {
    let p = builtin_presentation(kind, n)?;
    let images: Vec<(CliffordTableau, CliffordTableau)> = p
        .symbols
        .iter()
        .map(|s| {
            symbol_tableau(s, n).map(|t| {
                let i = inverse(&t);
                (t, i)
            })
        })
        .collect::<Result<_>>()?;
    let mut r = Report::default();
    for rel in &p.relators {
        let t = evaluate(&p, &images, &rel.word);
        let (ok, target) = match kind {
            PresentationKind::INnModPn => (is_pauli(&t), "pauli"),
            _ => (t.is_identity(), "identity"),
        };
        let got = if ok {
            target
        } else if is_pauli(&t) {
            "pauli"
        } else {
            "other"
        };
        r.push(Check::equal(format!("{kind}.n{n}.{}", rel.label), got, target));
    }
    Ok(r)
}
