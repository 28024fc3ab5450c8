//! Conjugation action of `C_n` on the conjugacy class of `s_1`.
//!
//! Points are the class elements sorted by canonical key and numbered from 1
//! in text. `g` acts by `v -> g^{-1} v g`, so images compose left to right.

use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use crate::error::{Error, Result};
use crate::group_algorithms::Permutation;
use crate::tableau::{compose_unchecked, inverse, standard_generators, CliffordTableau, Letter};

pub const DEFAULT_GUARD: usize = 1_000_000;
pub const CACHE_ENV: &str = "CLIFFPERM_CACHE_DIR";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExportFormat {
    Cycles,
    Arrays,
}

impl std::str::FromStr for ExportFormat {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "cycles" => Ok(Self::Cycles),
            "arrays" => Ok(Self::Arrays),
            _ => Err(Error::Parse(format!("unknown format {s:?} (expected cycles or arrays)"))),
        }
    }
}

#[derive(Debug, Clone)]
pub struct ClassIndex {
    n: usize,
    seed: CliffordTableau,
    elements: Vec<CliffordTableau>,
    lookup: HashMap<Vec<u8>, usize>,
}

/// `g^{-1} t g` for every standard generator `g`, in generator order.
fn generator_conjugators(n: usize) -> Vec<(CliffordTableau, CliffordTableau)> {
    standard_generators(n).into_iter().map(|(_, g)| (inverse(&g), g)).collect()
}

/// BFS closure of `{seed}` under conjugation by the standard generators.
pub fn enumerate_class(seed: &CliffordTableau, guard: usize) -> Result<ClassIndex> {
    seed.validate()?;
    let n = seed.n();
    let conj = generator_conjugators(n);
    let mut seen: HashSet<Vec<u8>> = HashSet::from([seed.canonical_key()]);
    let mut found = vec![seed.clone()];
    let mut queue = VecDeque::from([seed.clone()]);
    while let Some(t) = queue.pop_front() {
        for (ginv, g) in &conj {
            let c = compose_unchecked(&compose_unchecked(ginv, &t), g);
            if seen.insert(c.canonical_key()) {
                if found.len() >= guard {
                    return Err(Error::Capacity {
                        what: format!("conjugacy class enumeration at n={n}"),
                        limit: guard,
                    });
                }
                found.push(c.clone());
                queue.push_back(c);
            }
        }
    }
    Ok(ClassIndex::from_elements(seed.clone(), found))
}

/// Class of `s_1` on `n` qubits.
pub fn phase_class(n: usize, guard: usize) -> Result<ClassIndex> {
    enumerate_class(&CliffordTableau::letter(Letter::S(1), n)?, guard)
}

impl ClassIndex {
    fn from_elements(seed: CliffordTableau, mut elements: Vec<CliffordTableau>) -> Self {
        elements.sort_by_cached_key(CliffordTableau::canonical_key);
        let lookup = elements.iter().enumerate().map(|(i, e)| (e.canonical_key(), i)).collect();
        Self { n: seed.n(), seed, elements, lookup }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn seed(&self) -> &CliffordTableau {
        &self.seed
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[CliffordTableau] {
        &self.elements
    }

    /// 0-based point of `t`, if it lies in the class.
    pub fn point_of(&self, t: &CliffordTableau) -> Option<usize> {
        if t.n() != self.n {
            return None;
        }
        self.lookup.get(&t.canonical_key()).copied()
    }

    /// Permutation induced by `g` on the class.
    pub fn permutation_of(&self, g: &CliffordTableau) -> Result<Permutation> {
        if g.n() != self.n {
            return Err(Error::Dimension { expected: self.n, found: g.n() });
        }
        let ginv = inverse(g);
        let mut images = Vec::with_capacity(self.elements.len());
        for v in &self.elements {
            let c = compose_unchecked(&compose_unchecked(&ginv, v), g);
            let p = self.point_of(&c).ok_or_else(|| {
                Error::IndexCorruption("conjugate of a class element is missing from the index".into())
            })?;
            images.push(p as u32);
        }
        Permutation::from_images(images)
            .map_err(|e| Error::IndexCorruption(format!("conjugation image is not a bijection: {e}")))
    }

    /// Images of the standard generators, named, in generator order.
    pub fn generator_permutations(&self) -> Result<Vec<(String, Permutation)>> {
        standard_generators(self.n).into_iter().map(|(name, g)| Ok((name, self.permutation_of(&g)?))).collect()
    }

    /// One line per generator.
    pub fn export_generators(&self, format: ExportFormat) -> Result<String> {
        let mut out = String::new();
        for (_, p) in self.generator_permutations()? {
            match format {
                ExportFormat::Cycles => out.push_str(&p.to_cycle_string()),
                ExportFormat::Arrays => out.push_str(&p.to_array_string()),
            }
            out.push('\n');
        }
        Ok(out)
    }

    /// Line-oriented `key value` description of the labelling.
    pub fn manifest(&self) -> String {
        let mut s = String::new();
        let names: Vec<String> = standard_generators(self.n).into_iter().map(|(n, _)| n).collect();
        let _ = writeln!(s, "n {}", self.n);
        let _ = writeln!(s, "degree {}", self.len());
        let _ = writeln!(s, "seed {}", hex::encode(self.seed.canonical_key()));
        let _ = writeln!(s, "generators {}", names.join(" "));
        for (i, e) in self.elements.iter().enumerate() {
            let _ = writeln!(s, "point {} {}", i + 1, hex::encode(e.canonical_key()));
        }
        s
    }

    /// Cache file text: a header line, then one hex key per point.
    pub fn to_cache_text(&self) -> String {
        let mut s = format!(
            "cliffperm-class v1 n={} size={} seed={}\n",
            self.n,
            self.len(),
            hex::encode(self.seed.canonical_key())
        );
        for e in &self.elements {
            s.push_str(&hex::encode(e.canonical_key()));
            s.push('\n');
        }
        s
    }

    /// Parses cache text and checks order, distinctness, and closure.
    pub fn from_cache_text(text: &str) -> Result<Self> {
        let corrupt = |m: &str| Error::IndexCorruption(format!("class cache: {m}"));
        let mut lines = text.lines();
        let header = lines.next().ok_or_else(|| corrupt("empty file"))?;
        let fields: Vec<&str> = header.split_whitespace().collect();
        if fields.len() != 5 || fields[0] != "cliffperm-class" || fields[1] != "v1" {
            return Err(corrupt("bad header"));
        }
        let field =
            |i: usize, name: &str| fields[i].strip_prefix(name).ok_or_else(|| corrupt(&format!("missing {name}")));
        let n: usize = field(2, "n=")?.parse().map_err(|_| corrupt("bad n"))?;
        let size: usize = field(3, "size=")?.parse().map_err(|_| corrupt("bad size"))?;
        let decode = |h: &str| -> Result<CliffordTableau> {
            let bytes = hex::decode(h).map_err(|_| corrupt("bad hex"))?;
            CliffordTableau::from_canonical_key(n, &bytes).map_err(|e| corrupt(&e.to_string()))
        };
        let seed = decode(field(4, "seed=")?)?;
        let elements: Vec<CliffordTableau> =
            lines.filter(|l| !l.trim().is_empty()).map(|l| decode(l.trim())).collect::<Result<_>>()?;
        if elements.len() != size {
            return Err(corrupt("size does not match entry count"));
        }
        let keys: Vec<Vec<u8>> = elements.iter().map(CliffordTableau::canonical_key).collect();
        if keys.windows(2).any(|w| w[0] >= w[1]) {
            return Err(corrupt("keys not strictly ascending"));
        }
        let idx = Self::from_elements(seed, elements);
        if idx.point_of(&idx.seed).is_none() {
            return Err(corrupt("seed not in class"));
        }
        for (ginv, g) in generator_conjugators(n) {
            for v in &idx.elements {
                if idx.point_of(&compose_unchecked(&compose_unchecked(&ginv, v), &g)).is_none() {
                    return Err(corrupt("not closed under conjugation"));
                }
            }
        }
        Ok(idx)
    }

    /// Builds the class, reading and writing a cache file under `dir`.
    pub fn load_or_build(seed: &CliffordTableau, guard: usize, dir: &Path) -> Result<Self> {
        let path = cache_path(dir, seed);
        if path.exists() {
            let idx = Self::from_cache_text(&std::fs::read_to_string(&path)?)?;
            if idx.seed != *seed {
                return Err(Error::IndexCorruption(format!("{} holds a different seed", path.display())));
            }
            return Ok(idx);
        }
        let idx = enumerate_class(seed, guard)?;
        std::fs::create_dir_all(dir)?;
        std::fs::write(&path, idx.to_cache_text())?;
        Ok(idx)
    }
}

fn cache_path(dir: &Path, seed: &CliffordTableau) -> PathBuf {
    dir.join(format!("class-n{}-{}.txt", seed.n(), hex::encode(seed.canonical_key())))
}

/// Class of `s_1`, cached when `CLIFFPERM_CACHE_DIR` is set.
pub fn phase_class_cached(n: usize, guard: usize) -> Result<ClassIndex> {
    let seed = CliffordTableau::letter(Letter::S(1), n)?;
    match std::env::var_os(CACHE_ENV) {
        Some(dir) if !dir.is_empty() => ClassIndex::load_or_build(&seed, guard, Path::new(&dir)),
        _ => enumerate_class(&seed, guard),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group_algorithms::order_of;
    use crate::tableau::{compose, generator, is_pauli, random_word, word_eval, GeneratorKind};
    use proptest::prelude::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn class_sizes() {
        for (n, size) in [(1, 6), (2, 30), (3, 126), (4, 510)] {
            assert_eq!(phase_class(n, DEFAULT_GUARD).unwrap().len(), size);
        }
        let z1 = generator(GeneratorKind::Z, &[1], 2).unwrap();
        assert_eq!(enumerate_class(&z1, DEFAULT_GUARD).unwrap().len(), 15);
    }

    #[test]
    fn guard_is_enforced() {
        let err = phase_class(3, 100).unwrap_err();
        assert!(matches!(err, Error::Capacity { limit: 100, .. }));
    }

    #[test]
    fn elements_sorted_and_square_to_paulis() {
        let idx = phase_class(2, DEFAULT_GUARD).unwrap();
        let keys: Vec<_> = idx.elements().iter().map(CliffordTableau::canonical_key).collect();
        assert!(keys.windows(2).all(|w| w[0] < w[1]));
        for v in idx.elements() {
            assert!(is_pauli(&compose(v, v).unwrap()));
        }
    }

    #[test]
    fn simple_images() {
        let idx = phase_class(2, DEFAULT_GUARD).unwrap();
        assert!(idx.permutation_of(&CliffordTableau::identity(2)).unwrap().is_identity());
        let s1 = CliffordTableau::letter(Letter::S(1), 2).unwrap();
        let p = idx.point_of(&s1).unwrap();
        assert_eq!(idx.permutation_of(&s1).unwrap().apply(p), p);
        let h1 = idx.permutation_of(&CliffordTableau::letter(Letter::H(1), 2).unwrap()).unwrap();
        assert!(h1.then(&h1).is_identity());
        assert!(idx.permutation_of(&CliffordTableau::identity(3)).is_err());
    }

    #[test]
    fn image_orders_are_faithful() {
        for (n, order) in [(1, "24"), (2, "11520")] {
            let idx = phase_class(n, DEFAULT_GUARD).unwrap();
            let gens: Vec<Permutation> = idx.generator_permutations().unwrap().into_iter().map(|(_, p)| p).collect();
            assert_eq!(order_of(&gens, idx.len()).to_string(), order);
        }
    }

    #[test]
    fn export_and_round_trip() {
        let idx = phase_class(1, DEFAULT_GUARD).unwrap();
        let text = idx.export_generators(ExportFormat::Cycles).unwrap();
        assert_eq!(text.lines().count(), 2);
        let arrays = idx.export_generators(ExportFormat::Arrays).unwrap();
        for ((c, a), (_, p)) in text.lines().zip(arrays.lines()).zip(idx.generator_permutations().unwrap()) {
            assert_eq!(Permutation::parse_cycles(6, c).unwrap(), p);
            assert_eq!(Permutation::parse_array(a).unwrap(), p);
        }
        assert_eq!(text, phase_class(1, DEFAULT_GUARD).unwrap().export_generators(ExportFormat::Cycles).unwrap());
    }

    #[test]
    fn cache_round_trip_and_corruption() {
        let idx = phase_class(2, DEFAULT_GUARD).unwrap();
        let text = idx.to_cache_text();
        let back = ClassIndex::from_cache_text(&text).unwrap();
        assert_eq!(back.elements(), idx.elements());

        let mut lines: Vec<&str> = text.lines().collect();
        lines.pop();
        let truncated = lines.join("\n");
        assert!(matches!(ClassIndex::from_cache_text(&truncated), Err(Error::IndexCorruption(_))));
        let header_fixed = truncated.replace("size=30", "size=29");
        assert!(matches!(ClassIndex::from_cache_text(&header_fixed), Err(Error::IndexCorruption(_))));

        let dir = std::env::temp_dir().join(format!("cliffperm-test-{}", std::process::id()));
        let s1 = CliffordTableau::letter(Letter::S(1), 2).unwrap();
        let a = ClassIndex::load_or_build(&s1, DEFAULT_GUARD, &dir).unwrap();
        let b = ClassIndex::load_or_build(&s1, DEFAULT_GUARD, &dir).unwrap();
        assert_eq!(a.elements(), b.elements());
        std::fs::remove_dir_all(&dir).ok();
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(8))]

        #[test]
        fn homomorphism(seed in any::<u64>(), n in 1usize..=4) {
            let idx = phase_class(n, DEFAULT_GUARD).unwrap();
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            for _ in 0..25 {
                let f = word_eval(&random_word(n, 12, &mut rng)).unwrap();
                let g = word_eval(&random_word(n, 12, &mut rng)).unwrap();
                let fg = idx.permutation_of(&compose(&f, &g).unwrap()).unwrap();
                let pf = idx.permutation_of(&f).unwrap();
                let pg = idx.permutation_of(&g).unwrap();
                prop_assert_eq!(fg, pf.then(&pg));
            }
        }
    }
}
