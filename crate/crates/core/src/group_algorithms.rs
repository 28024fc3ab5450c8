//! Permutations and exact permutation-group algorithms.
//!
//! Permutations compose left to right: `p.then(&q)` sends `x` to `q(p(x))`,
//! matching circuit order and GAP's convention. Points are 0-based in memory
//! and 1-based in every text form.

use std::collections::VecDeque;
use std::fmt;

use num_bigint::BigUint;

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<u32>,
}

impl Permutation {
    pub fn identity(degree: usize) -> Self {
        Self { images: (0..degree as u32).collect() }
    }

    /// From 0-based images; must be a bijection.
    pub fn from_images(images: Vec<u32>) -> Result<Self> {
        let mut seen = vec![false; images.len()];
        for &i in &images {
            let i = i as usize;
            if i >= images.len() || std::mem::replace(&mut seen[i], true) {
                return Err(Error::Parse(format!("images do not form a bijection on {} points", images.len())));
            }
        }
        Ok(Self { images })
    }

    /// From 1-based images.
    pub fn from_images_one_based(images: &[usize]) -> Result<Self> {
        let zero: Vec<u32> = images
            .iter()
            .map(|&i| if i == 0 { Err(Error::Parse("point 0 in 1-based images".into())) } else { Ok((i - 1) as u32) })
            .collect::<Result<_>>()?;
        Self::from_images(zero)
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    /// Image of a 0-based point.
    #[inline]
    pub fn apply(&self, p: usize) -> usize {
        self.images[p] as usize
    }

    pub fn images(&self) -> &[u32] {
        &self.images
    }

    /// `self` first, then `other`.
    pub fn then(&self, other: &Self) -> Self {
        debug_assert_eq!(self.degree(), other.degree());
        Self { images: self.images.iter().map(|&i| other.images[i as usize]).collect() }
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0u32; self.images.len()];
        for (i, &j) in self.images.iter().enumerate() {
            inv[j as usize] = i as u32;
        }
        Self { images: inv }
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &j)| i as u32 == j)
    }

    /// `g^{-1} self g`
    pub fn conjugate_by(&self, g: &Self) -> Self {
        g.inverse().then(self).then(g)
    }

    pub fn pow(&self, k: usize) -> Self {
        let mut out = Self::identity(self.degree());
        for _ in 0..k {
            out = out.then(self);
        }
        out
    }

    /// Smallest moved point, if any.
    pub fn first_moved(&self) -> Option<usize> {
        self.images.iter().enumerate().find(|&(i, &j)| i as u32 != j).map(|(i, _)| i)
    }

    /// Disjoint cycles of length at least two, each starting at its smallest
    /// point, ordered by that point. 0-based.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.degree()];
        let mut out = Vec::new();
        for start in 0..self.degree() {
            if seen[start] || self.apply(start) == start {
                continue;
            }
            let mut cyc = vec![start];
            seen[start] = true;
            let mut p = self.apply(start);
            while p != start {
                seen[p] = true;
                cyc.push(p);
                p = self.apply(p);
            }
            out.push(cyc);
        }
        out
    }

    pub fn order(&self) -> BigUint {
        use num_integer_lcm as lcm;
        self.cycles().iter().fold(BigUint::from(1u8), |acc, c| lcm(&acc, &BigUint::from(c.len())))
    }

    /// 1-based disjoint cycle notation, `()` for the identity.
    pub fn to_cycle_string(&self) -> String {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return "()".to_string();
        }
        let mut s = String::new();
        for c in cycles {
            s.push('(');
            for (i, p) in c.iter().enumerate() {
                if i > 0 {
                    s.push(',');
                }
                s.push_str(&(p + 1).to_string());
            }
            s.push(')');
        }
        s
    }

    /// Space-separated 1-based images.
    pub fn to_array_string(&self) -> String {
        self.images.iter().map(|i| (i + 1).to_string()).collect::<Vec<_>>().join(" ")
    }

    /// Parses 1-based cycle notation such as `(1,5,3)(2,7)`.
    pub fn parse_cycles(degree: usize, text: &str) -> Result<Self> {
        let mut images: Vec<u32> = (0..degree as u32).collect();
        let mut touched = vec![false; degree];
        let body: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        let mut rest = body.as_str();
        if rest == "()" {
            return Ok(Self { images });
        }
        while !rest.is_empty() {
            let inner = rest
                .strip_prefix('(')
                .and_then(|r| r.split_once(')'))
                .ok_or_else(|| Error::Parse(format!("malformed cycle string {text:?}")))?;
            let points: Vec<usize> = inner
                .0
                .split(',')
                .map(|t| match t.parse::<usize>() {
                    Ok(p) if p >= 1 && p <= degree => Ok(p - 1),
                    _ => Err(Error::Parse(format!("bad point {t:?} for degree {degree}"))),
                })
                .collect::<Result<_>>()?;
            for (i, &p) in points.iter().enumerate() {
                if std::mem::replace(&mut touched[p], true) {
                    return Err(Error::Parse(format!("point {} repeated in {text:?}", p + 1)));
                }
                images[p] = points[(i + 1) % points.len()] as u32;
            }
            rest = inner.1;
        }
        Ok(Self { images })
    }

    pub fn parse_array(text: &str) -> Result<Self> {
        let imgs: Vec<usize> = text
            .split_whitespace()
            .map(|t| t.parse::<usize>().map_err(|_| Error::Parse(format!("bad image {t:?}"))))
            .collect::<Result<_>>()?;
        Self::from_images_one_based(&imgs)
    }

    /// Acts as `self` on the first block of points and as `other` on the next.
    pub fn direct_sum(&self, other: &Self) -> Self {
        let shift = self.degree() as u32;
        let mut images = self.images.clone();
        images.extend(other.images.iter().map(|i| i + shift));
        Self { images }
    }
}

fn num_integer_lcm(a: &BigUint, b: &BigUint) -> BigUint {
    use num_bigint::BigUint as B;
    fn gcd(mut a: B, mut b: B) -> B {
        while b != B::from(0u8) {
            let r = &a % &b;
            a = b;
            b = r;
        }
        a
    }
    let g = gcd(a.clone(), b.clone());
    a / g * b
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_cycle_string())
    }
}

/// Orbit of `point` under the group generated by `gens`, in BFS order.
pub fn orbit(gens: &[Permutation], degree: usize, point: usize) -> Vec<usize> {
    let mut seen = vec![false; degree];
    seen[point] = true;
    let mut out = vec![point];
    let mut q = VecDeque::from([point]);
    while let Some(p) = q.pop_front() {
        for g in gens {
            let r = g.apply(p);
            if !seen[r] {
                seen[r] = true;
                out.push(r);
                q.push_back(r);
            }
        }
    }
    out
}

const ROOT: u32 = u32::MAX - 1;
const ABSENT: u32 = u32::MAX;

/// One level of the stabiliser chain.
#[derive(Debug, Clone)]
struct Level {
    base_point: usize,
    /// Strong generators fixing every earlier base point.
    gens: Vec<Permutation>,
    gen_invs: Vec<Permutation>,
    orbit: Vec<usize>,
    /// For each point: `ABSENT`, `ROOT`, or the index of the generator that
    /// first reached it from its BFS parent.
    schreier: Vec<u32>,
}

impl Level {
    fn new(base_point: usize, degree: usize, gens: Vec<Permutation>) -> Self {
        let mut l = Self {
            base_point,
            gen_invs: gens.iter().map(Permutation::inverse).collect(),
            gens,
            orbit: Vec::new(),
            schreier: vec![ABSENT; degree],
        };
        l.rebuild_orbit();
        l
    }

    fn add_gen(&mut self, g: Permutation) {
        self.gen_invs.push(g.inverse());
        self.gens.push(g);
        self.rebuild_orbit();
    }

    fn rebuild_orbit(&mut self) {
        self.schreier.iter_mut().for_each(|v| *v = ABSENT);
        self.schreier[self.base_point] = ROOT;
        self.orbit.clear();
        self.orbit.push(self.base_point);
        let mut head = 0;
        while head < self.orbit.len() {
            let p = self.orbit[head];
            head += 1;
            for (k, g) in self.gens.iter().enumerate() {
                let r = g.apply(p);
                if self.schreier[r] == ABSENT {
                    self.schreier[r] = k as u32;
                    self.orbit.push(r);
                }
            }
        }
    }

    fn contains(&self, p: usize) -> bool {
        self.schreier[p] != ABSENT
    }

    /// `g * u_p^{-1}` where `u_p` maps the base point to `p`.
    fn strip_rep(&self, mut g: Permutation, mut p: usize) -> Permutation {
        while self.schreier[p] != ROOT {
            let k = self.schreier[p] as usize;
            g = g.then(&self.gen_invs[k]);
            p = self.gen_invs[k].apply(p);
        }
        g
    }

    /// Coset representative `u_p`.
    fn rep(&self, p: usize) -> Permutation {
        let degree = self.schreier.len();
        self.strip_rep(Permutation::identity(degree), p).inverse()
    }
}

/// Base and strong generating set.
#[derive(Debug, Clone)]
pub struct Bsgs {
    degree: usize,
    levels: Vec<Level>,
}

impl Bsgs {
    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn base(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.base_point).collect()
    }

    /// Distinct strong generators, in the order they entered the chain.
    pub fn strong_generators(&self) -> Vec<Permutation> {
        let mut out: Vec<Permutation> = Vec::new();
        for l in &self.levels {
            for g in &l.gens {
                if !out.contains(g) {
                    out.push(g.clone());
                }
            }
        }
        out
    }

    /// Basic orbit lengths (transversal sizes).
    pub fn transversal_sizes(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.orbit.len()).collect()
    }

    /// Coset representative mapping the `level`th base point to `point`.
    pub fn transversal_element(&self, level: usize, point: usize) -> Option<Permutation> {
        let l = self.levels.get(level)?;
        l.contains(point).then(|| l.rep(point))
    }

    /// Generators of the subgroup fixing the first `depth` base points.
    pub fn stabilizer_generators(&self, depth: usize) -> Vec<Permutation> {
        self.levels.get(depth).map(|l| l.gens.clone()).unwrap_or_default()
    }

    /// Sifts `g` through levels `from..`; returns the residue and the level
    /// where sifting stopped (`levels.len()` when it went all the way).
    fn strip_from(&self, mut g: Permutation, from: usize) -> (Permutation, usize) {
        for (i, l) in self.levels.iter().enumerate().skip(from) {
            let p = g.apply(l.base_point);
            if !l.contains(p) {
                return (g, i);
            }
            g = l.strip_rep(g, p);
        }
        (g, self.levels.len())
    }
}

/// Deterministic Schreier–Sims.
pub fn schreier_sims(gens: &[Permutation], degree: usize) -> Bsgs {
    schreier_sims_with_base(gens, degree, &[])
}

/// Schreier–Sims with a prescribed base prefix.
pub fn schreier_sims_with_base(gens: &[Permutation], degree: usize, base_prefix: &[usize]) -> Bsgs {
    let mut strong: Vec<Permutation> = Vec::new();
    for g in gens {
        assert_eq!(g.degree(), degree, "generator degree mismatch");
        if !g.is_identity() && !strong.contains(g) {
            strong.push(g.clone());
        }
    }
    let mut base: Vec<usize> = base_prefix.to_vec();
    for g in &strong {
        if base.iter().all(|&b| g.apply(b) == b) {
            base.push(g.first_moved().expect("non-identity"));
        }
    }
    let mut bsgs = Bsgs { degree, levels: Vec::with_capacity(base.len()) };
    for (i, &b) in base.iter().enumerate() {
        let level_gens: Vec<Permutation> =
            strong.iter().filter(|g| base[..i].iter().all(|&p| g.apply(p) == p)).cloned().collect();
        bsgs.levels.push(Level::new(b, degree, level_gens));
    }

    let mut i = bsgs.levels.len() as isize - 1;
    'main: while i >= 0 {
        let lvl = i as usize;
        let orbit = bsgs.levels[lvl].orbit.clone();
        let ngens = bsgs.levels[lvl].gens.len();
        for &beta in &orbit {
            let u_beta = bsgs.levels[lvl].rep(beta);
            for k in 0..ngens {
                let s = &bsgs.levels[lvl].gens[k];
                let image = s.apply(beta);
                let h = bsgs.levels[lvl].strip_rep(u_beta.then(s), image);
                if h.is_identity() {
                    continue;
                }
                let (y, j) = bsgs.strip_from(h, lvl + 1);
                let top = bsgs.levels.len();
                if j < top || !y.is_identity() {
                    if j == top {
                        let b = y.first_moved().expect("non-identity residue");
                        bsgs.levels.push(Level::new(b, degree, Vec::new()));
                    }
                    for l in lvl + 1..=j {
                        bsgs.levels[l].add_gen(y.clone());
                    }
                    i = j as isize;
                    continue 'main;
                }
            }
        }
        i -= 1;
    }
    bsgs
}

pub fn group_order(b: &Bsgs) -> BigUint {
    b.levels.iter().fold(BigUint::from(1u8), |acc, l| acc * BigUint::from(l.orbit.len()))
}

pub fn membership(p: &Permutation, b: &Bsgs) -> bool {
    if p.degree() != b.degree {
        return false;
    }
    let (y, j) = b.strip_from(p.clone(), 0);
    j == b.levels.len() && y.is_identity()
}

/// Generators of the pointwise stabiliser of `points` (0-based) in `<gens>`.
pub fn stabilizer(gens: &[Permutation], degree: usize, points: &[usize]) -> Vec<Permutation> {
    let b = schreier_sims_with_base(gens, degree, points);
    b.stabilizer_generators(points.len())
}

/// True iff `<sub_gens>` is normalised by every element of `group_gens`.
pub fn is_normal(sub_gens: &[Permutation], group_gens: &[Permutation], degree: usize) -> bool {
    let b = schreier_sims(sub_gens, degree);
    group_gens.iter().all(|g| sub_gens.iter().all(|u| membership(&u.conjugate_by(g), &b)))
}

/// Order of `<gens>`.
pub fn order_of(gens: &[Permutation], degree: usize) -> BigUint {
    group_order(&schreier_sims(gens, degree))
}
