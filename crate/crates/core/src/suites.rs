//! Named verification suites, as run by `cliffperm verify`.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::matrix_oracle::{
    check_all_single_qubit_words, check_generators, check_random_words, cx_discrepancy, OracleReport,
};
use crate::normal_form::{
    all_params, l_count, level_table, m_count, nf_to_tableau, synthesize, verify_rewrite_identities, MAX_LEVEL,
};
use crate::orders::{clifford_order, inertia_order, normal_form_count, pauli_order};
use crate::presentations::{
    builtin_presentation, todd_coxeter, verify_relators, verify_theorems, CosetOutcome, PresentationKind, MAX_THEOREM_N,
};
use crate::report::{Check, Report};
use crate::tableau::{random_word, word_eval};

/// Largest `n` accepted by `verify`.
pub const MAX_VERIFY_N: usize = 4;
/// Largest `n` for exhaustive sub-checks.
pub const MAX_EXHAUSTIVE_N: usize = 2;
/// Largest `n` for the matrix oracle suite.
pub const MAX_ORACLE_N: usize = 3;
/// Largest `n` whose presentations are coset-enumerated.
pub const MAX_ENUMERATION_N: usize = 2;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    Relations,
    Centralizers,
    NormalForm,
    Rewrite,
    Oracle,
    All,
}

impl Suite {
    pub const NAMES: [&'static str; 6] = ["relations", "centralizers", "normalform", "rewrite", "oracle", "all"];

    /// Largest `n` the suite accepts.
    pub fn max_n(self) -> usize {
        match self {
            Suite::Oracle => MAX_ORACLE_N,
            Suite::Centralizers => MAX_THEOREM_N.min(MAX_VERIFY_N),
            _ => MAX_VERIFY_N,
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let i = [Suite::Relations, Suite::Centralizers, Suite::NormalForm, Suite::Rewrite, Suite::Oracle, Suite::All]
            .iter()
            .position(|s| s == self)
            .unwrap();
        f.write_str(Self::NAMES[i])
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "relations" => Suite::Relations,
            "centralizers" => Suite::Centralizers,
            "normalform" => Suite::NormalForm,
            "rewrite" => Suite::Rewrite,
            "oracle" => Suite::Oracle,
            "all" => Suite::All,
            _ => return Err(Error::Parse(format!("unknown suite {s:?}"))),
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SuiteConfig {
    pub n: usize,
    pub max_cosets: usize,
    pub seed: u64,
}

/// Order of the group a builtin presentation is meant to present.
pub fn expected_order(kind: PresentationKind, n: usize) -> BigUint {
    match kind {
        PresentationKind::Cn => clifford_order(n),
        PresentationKind::INn => inertia_order(n),
        PresentationKind::INnModPn => inertia_order(n) / pauli_order(n),
    }
}

const KINDS: [PresentationKind; 3] = [PresentationKind::Cn, PresentationKind::INn, PresentationKind::INnModPn];

/// Relator evaluation for every builtin presentation, plus coset enumeration
/// for small `n`.
pub fn relations(cfg: &SuiteConfig) -> Result<Report> {
    let n = cfg.n;
    let mut r = Report::default();
    for kind in KINDS {
        r.extend(verify_relators(kind, n)?);
    }
    if n <= MAX_ENUMERATION_N {
        for kind in KINDS {
            let p = builtin_presentation(kind, n)?;
            let count = match todd_coxeter(&p, &[], cfg.max_cosets) {
                CosetOutcome::Complete(c) => c,
                CosetOutcome::Inconclusive { limit } => {
                    return Err(Error::Capacity { what: format!("coset enumeration of {kind} at n={n}"), limit })
                }
            };
            let suffix = if p.extrapolated { ".extrapolated" } else { "" };
            r.push(Check::equal(format!("{kind}.n{n}.coset_order{suffix}"), count, expected_order(kind, n)));
        }
    }
    Ok(r)
}

/// Centraliser, inertia and embedding checks.
pub fn centralizers(cfg: &SuiteConfig) -> Result<Report> {
    verify_theorems(cfg.n)
}

/// Count arithmetic, level tables, exhaustive bijectivity and random
/// synthesis round trips.
pub fn normal_form(cfg: &SuiteConfig, round_trips: usize) -> Result<Report> {
    let n = cfg.n;
    let mut r = Report::default();
    for m in 1..=n.max(6) {
        let count: BigUint = (1..=m).map(|k| BigUint::from(l_count(k) * m_count(k))).product();
        r.push(Check::equal(format!("nf.count.n{m}"), &count, clifford_order(m)));
        r.push(Check::equal(format!("nf.count_formula.n{m}"), normal_form_count(m), clifford_order(m)));
    }
    for k in 1..=n.min(3) {
        let t = level_table(k)?;
        r.push(Check::equal(format!("nf.level_table.k{k}"), t.len(), l_count(k) * m_count(k)));
    }
    if n <= MAX_EXHAUSTIVE_N {
        let mut keys = std::collections::HashSet::new();
        let mut round = true;
        for p in all_params(n) {
            let t = nf_to_tableau(&p)?;
            round &= synthesize(&t)? == p;
            keys.insert(t.canonical_key());
        }
        r.push(Check::equal(format!("nf.bijective.n{n}.images"), keys.len(), clifford_order(n)));
        r.push(Check::holds(format!("nf.bijective.n{n}.synthesize_inverts"), round));
    }
    if n <= MAX_LEVEL {
        let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
        let mut ok = 0usize;
        for _ in 0..round_trips {
            let f = word_eval(&random_word(n, 20 * n, &mut rng))?;
            let p = synthesize(&f)?;
            ok += (nf_to_tableau(&p)? == f) as usize;
        }
        r.push(Check::equal(format!("nf.round_trip.n{n}"), ok, round_trips));
    }
    Ok(r)
}

/// Every rewriting identity used by the normal-form construction.
pub fn rewrite(_cfg: &SuiteConfig) -> Result<Report> {
    Ok(verify_rewrite_identities())
}

fn oracle_check(name: String, o: &OracleReport) -> Check {
    Check::equal(
        name,
        format!("{}/{}", o.checked - o.mismatches.len(), o.checked),
        format!("{}/{}", o.checked, o.checked),
    )
}

/// Tableau conjugation against literal matrix conjugation.
pub fn oracle(cfg: &SuiteConfig) -> Result<Report> {
    let n = cfg.n;
    if n > MAX_ORACLE_N {
        return Err(Error::UnsupportedN { n, reason: format!("oracle suite supports n <= {MAX_ORACLE_N}") });
    }
    let mut r = Report::default();
    r.push(oracle_check(format!("oracle.generators.n{n}"), &check_generators(n)?));
    let count = if n <= 2 { 1000 } else { 100 };
    r.push(oracle_check(format!("oracle.random_words.n{n}"), &check_random_words(n, count, 12, cfg.seed)?));
    if n == 1 {
        r.push(oracle_check("oracle.exhaustive_len8.n1".into(), &check_all_single_qubit_words(8)?));
    }
    let cx = cx_discrepancy();
    r.push(Check::equal("oracle.cx.literal_reading_is_cx", cx.z_reading_matches, false));
    r.push(Check::equal("oracle.cx.cz_reading_is_cx", cx.cz_reading_matches, true));
    Ok(r)
}

/// Runs `suite`. For [`Suite::All`], sub-suites whose limit is below `n` are
/// skipped and named in the returned list.
pub fn run(suite: Suite, cfg: &SuiteConfig) -> Result<(Report, Vec<Suite>)> {
    if cfg.n == 0 || cfg.n > suite.max_n() {
        return Err(Error::UnsupportedN { n: cfg.n, reason: format!("suite {suite} supports 1..={}", suite.max_n()) });
    }
    let single = |s: Suite| -> Result<Report> {
        match s {
            Suite::Relations => relations(cfg),
            Suite::Centralizers => centralizers(cfg),
            Suite::NormalForm => normal_form(cfg, 1000),
            Suite::Rewrite => rewrite(cfg),
            Suite::Oracle => oracle(cfg),
            Suite::All => unreachable!(),
        }
    };
    if suite != Suite::All {
        return Ok((single(suite)?, Vec::new()));
    }
    let mut report = Report::default();
    let mut skipped = Vec::new();
    for s in [Suite::Oracle, Suite::Rewrite, Suite::NormalForm, Suite::Relations, Suite::Centralizers] {
        if cfg.n > s.max_n() {
            skipped.push(s);
        } else {
            report.extend(single(s)?);
        }
    }
    Ok((report, skipped))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_names_round_trip() {
        for name in Suite::NAMES {
            assert_eq!(name.parse::<Suite>().unwrap().to_string(), name);
        }
        assert!("everything".parse::<Suite>().is_err());
    }

    #[test]
    fn all_passes_at_n1() {
        let cfg = SuiteConfig { n: 1, max_cosets: 1_000_000, seed: 0 };
        let (r, skipped) = run(Suite::All, &cfg).unwrap();
        let bad: Vec<String> = r.failures().map(ToString::to_string).collect();
        assert!(bad.is_empty(), "{bad:?}");
        assert!(skipped.is_empty());
        assert!(r.get("INn.n1.coset_order.extrapolated").is_some());
    }

    #[test]
    fn limits() {
        let cfg = SuiteConfig { n: 4, max_cosets: 1_000_000, seed: 0 };
        assert!(matches!(run(Suite::Oracle, &cfg), Err(Error::UnsupportedN { .. })));
        let cfg = SuiteConfig { n: 5, ..cfg };
        assert!(run(Suite::Rewrite, &cfg).is_err());
    }

    #[test]
    fn tiny_coset_cap_is_capacity_error() {
        let cfg = SuiteConfig { n: 1, max_cosets: 3, seed: 0 };
        assert!(matches!(relations(&cfg), Err(Error::Capacity { .. })));
    }
}
