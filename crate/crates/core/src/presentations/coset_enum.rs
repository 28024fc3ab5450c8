//! HLT coset enumeration with coincidence processing.

use super::{free_reduce, Presentation, Sym};

pub const DEFAULT_MAX_COSETS: usize = 1_000_000;

const NONE: u32 = u32::MAX;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CosetOutcome {
    /// Enumeration closed with this many cosets.
    Complete(usize),
    /// The table reached `limit` rows before closing.
    Inconclusive { limit: usize },
}

impl CosetOutcome {
    pub fn count(self) -> Option<usize> {
        match self {
            CosetOutcome::Complete(c) => Some(c),
            CosetOutcome::Inconclusive { .. } => None,
        }
    }
}

struct Table {
    cols: usize,
    rows: Vec<u32>,
    parent: Vec<u32>,
    queue: Vec<u32>,
    max: usize,
}

struct Overflow;

impl Table {
    fn new(ngens: usize, max: usize) -> Self {
        let cols = 2 * ngens;
        Self { cols, rows: vec![NONE; cols], parent: vec![0], queue: Vec::new(), max }
    }

    fn len(&self) -> usize {
        self.parent.len()
    }

    #[inline]
    fn get(&self, c: u32, x: usize) -> u32 {
        self.rows[c as usize * self.cols + x]
    }

    #[inline]
    fn set(&mut self, c: u32, x: usize, v: u32) {
        self.rows[c as usize * self.cols + x] = v;
    }

    fn alive(&self, c: u32) -> bool {
        self.parent[c as usize] == c
    }

    fn define(&mut self, c: u32, x: usize) -> Result<u32, Overflow> {
        if self.len() >= self.max {
            return Err(Overflow);
        }
        let d = self.len() as u32;
        self.parent.push(d);
        self.rows.extend(std::iter::repeat_n(NONE, self.cols));
        self.set(c, x, d);
        self.set(d, x ^ 1, c);
        Ok(d)
    }

    fn rep(&mut self, c: u32) -> u32 {
        let mut r = c;
        while self.parent[r as usize] != r {
            r = self.parent[r as usize];
        }
        let mut c = c;
        while self.parent[c as usize] != r {
            let next = self.parent[c as usize];
            self.parent[c as usize] = r;
            c = next;
        }
        r
    }

    fn merge(&mut self, a: u32, b: u32) {
        let (a, b) = (self.rep(a), self.rep(b));
        if a == b {
            return;
        }
        let (keep, drop) = (a.min(b), a.max(b));
        self.parent[drop as usize] = keep;
        self.queue.push(drop);
    }

    fn coincidence(&mut self, a: u32, b: u32) {
        self.merge(a, b);
        let mut i = 0;
        while i < self.queue.len() {
            let g = self.queue[i];
            i += 1;
            for x in 0..self.cols {
                let d = self.get(g, x);
                if d == NONE {
                    continue;
                }
                self.set(g, x, NONE);
                if self.get(d, x ^ 1) == g {
                    self.set(d, x ^ 1, NONE);
                }
                let (mu, nu) = (self.rep(g), self.rep(d));
                let mx = self.get(mu, x);
                if mx != NONE {
                    self.merge(nu, mx);
                } else {
                    let nx = self.get(nu, x ^ 1);
                    if nx != NONE {
                        self.merge(mu, nx);
                    } else {
                        self.set(mu, x, nu);
                        self.set(nu, x ^ 1, mu);
                    }
                }
            }
        }
        self.queue.clear();
    }

    /// Traces `w` from `c` in both directions, defining cosets to close it.
    fn scan_and_fill(&mut self, c: u32, w: &[usize]) -> Result<(), Overflow> {
        if w.is_empty() {
            return Ok(());
        }
        let (mut f, mut b) = (c, c);
        let (mut i, mut j) = (0isize, w.len() as isize - 1);
        loop {
            while i <= j && self.get(f, w[i as usize]) != NONE {
                f = self.get(f, w[i as usize]);
                i += 1;
            }
            if i > j {
                if f != b {
                    self.coincidence(f, b);
                }
                return Ok(());
            }
            while j >= i && self.get(b, w[j as usize] ^ 1) != NONE {
                b = self.get(b, w[j as usize] ^ 1);
                j -= 1;
            }
            if j < i {
                self.coincidence(f, b);
                return Ok(());
            }
            if i == j {
                let x = w[i as usize];
                self.set(f, x, b);
                self.set(b, x ^ 1, f);
                return Ok(());
            }
            self.define(f, w[i as usize])?;
        }
    }
}

fn columns(w: &[Sym]) -> Vec<usize> {
    free_reduce(w).iter().map(|s| 2 * s.gen + s.inv as usize).collect()
}

/// Index of `<subgroup>` in the presented group; with no subgroup words this
/// is the group order.
pub fn todd_coxeter(p: &Presentation, subgroup: &[Vec<Sym>], max_cosets: usize) -> CosetOutcome {
    let mut rels: Vec<Vec<usize>> = p.relators.iter().map(|r| columns(&r.word)).filter(|w| !w.is_empty()).collect();
    rels.sort_by_key(Vec::len);
    let mut t = Table::new(p.symbols.len(), max_cosets.max(1));
    let overflow = CosetOutcome::Inconclusive { limit: max_cosets };
    for w in subgroup {
        if t.scan_and_fill(0, &columns(w)).is_err() {
            return overflow;
        }
    }
    let mut c = 0u32;
    while (c as usize) < t.len() {
        for r in &rels {
            if !t.alive(c) {
                break;
            }
            if t.scan_and_fill(c, r).is_err() {
                return overflow;
            }
        }
        if t.alive(c) {
            for x in 0..t.cols {
                if t.get(c, x) == NONE && t.define(c, x).is_err() {
                    return overflow;
                }
            }
        }
        c += 1;
    }
    CosetOutcome::Complete((0..t.len() as u32).filter(|&c| t.alive(c)).count())
}
