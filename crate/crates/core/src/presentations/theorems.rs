//! Centraliser, inertia-subgroup and embedding checks, realised as
//! permutation-group computations on the class of `s_1` (and of `z_1`).

use std::collections::{HashSet, VecDeque};

use num_bigint::BigUint;

use crate::error::{Error, Result};
use crate::group_algorithms::{
    group_order, is_normal, membership, orbit, order_of, schreier_sims, schreier_sims_with_base, Bsgs, Permutation,
};
use crate::normal_form::{all_params, expand_gate_word, nf_to_tableau};
use crate::orders::{class_size, clifford_order, inertia_order, phase_centralizer_order};
use crate::perm_rep::{enumerate_class, phase_class_cached, ClassIndex, DEFAULT_GUARD};
use crate::report::{Check, Report};
use crate::tableau::{compose, generator, standard_generators, word_eval, CliffordTableau, GeneratorKind};

/// Largest `n` accepted by [`verify_theorems`].
pub const MAX_THEOREM_N: usize = 4;

fn el(n: usize, text: &str) -> CliffordTableau {
    word_eval(&expand_gate_word(n, text).expect("builtin word")).expect("valid word")
}

fn m_gate(n: usize) -> CliffordTableau {
    generator(GeneratorKind::M, &[1, 2], n).expect("n >= 2")
}

fn names(prefix: &str, range: std::ops::RangeInclusive<usize>) -> Vec<String> {
    range.map(|i| format!("{prefix}{i}")).collect()
}

/// Conjugation action on the class of `s_1`, optionally followed by the class
/// of `z_1` on the next block of points.
struct Action {
    v: ClassIndex,
    z: Option<ClassIndex>,
}

impl Action {
    fn degree(&self) -> usize {
        self.v.len() + self.z.as_ref().map_or(0, ClassIndex::len)
    }

    fn perm(&self, t: &CliffordTableau) -> Permutation {
        let p = self.v.permutation_of(t).expect("index is closed");
        match &self.z {
            Some(z) => p.direct_sum(&z.permutation_of(t).expect("index is closed")),
            None => p,
        }
    }

    fn perms(&self, ts: &[CliffordTableau]) -> Vec<Permutation> {
        ts.iter().map(|t| self.perm(t)).collect()
    }

    fn v_point(&self, t: &CliffordTableau) -> usize {
        self.v.point_of(t).expect("element of the class")
    }

    fn z_point(&self, t: &CliffordTableau) -> usize {
        self.v.len() + self.z.as_ref().and_then(|z| z.point_of(t)).expect("element of the z class")
    }
}

fn gens_of(n: usize, words: &[String]) -> Vec<CliffordTableau> {
    words.iter().map(|w| el(n, w)).collect()
}

/// `IN_n` generating set as listed for the inertia subgroup.
fn inertia_generators(n: usize) -> Vec<CliffordTableau> {
    match n {
        1 => vec![el(1, "h1"), el(1, "s1 s1 s1 h1 s1 h1 s1")],
        2 => {
            let mut g = gens_of(2, &["h1".into(), "h2".into(), "s2".into(), "h1 s1 s1 h1".into()]);
            g.push(m_gate(2));
            g
        }
        _ => {
            let mut words = names("h", 1..=n);
            words.extend(names("s", 2..=n));
            let mut g = gens_of(n, &words);
            g.push(m_gate(n));
            g.extend(gens_of(n, &names("cz", 2..=n - 1)));
            g
        }
    }
}

/// `F_n`, the index-two subgroup of `IN_n`.
fn f_generators(n: usize) -> Vec<CliffordTableau> {
    match n {
        1 => vec![el(1, "s1 s1 s1 h1 s1 h1 s1")],
        2 => {
            let mut g = gens_of(2, &["h2".into(), "s2".into(), "h1 s1 s1 h1".into()]);
            g.push(m_gate(2));
            g
        }
        _ => {
            let mut words = names("h", 2..=n);
            words.extend(names("s", 2..=n));
            let mut g = gens_of(n, &words);
            g.push(m_gate(n));
            g.extend(gens_of(n, &names("cz", 2..=n - 1)));
            g
        }
    }
}

/// Generators listed for the centraliser of `s_1` (with `s_1` kept when
/// `with_s1`).
fn cent_s1_generators(n: usize, with_s1: bool) -> Vec<CliffordTableau> {
    if n == 1 {
        return vec![el(1, "s1")];
    }
    let mut words = names("h", 2..=n);
    words.extend(names("s", if with_s1 { 1 } else { 2 }..=n));
    words.extend(names("cz", 1..=n - 1));
    gens_of(n, &words)
}

const G_WORD: &str = "h1 s1 h1 s1 s1 s1 h1";

/// Generators listed for the centraliser of `s_1^2`.
fn cent_z1_generators(n: usize) -> Vec<CliffordTableau> {
    let mut g = vec![el(n, G_WORD)];
    g.extend(cent_s1_generators(n, true));
    g
}

/// Generators listed for the centraliser of `{s_1, h_1 s_1 h_1}`.
fn two_point_generators(n: usize) -> Vec<CliffordTableau> {
    if n == 1 {
        return Vec::new();
    }
    let mut words = names("h", 2..=n);
    words.extend(names("s", 2..=n));
    words.extend(names("cz", 2..=n - 1));
    gens_of(n, &words)
}

fn all_in(elements: &[Permutation], b: &Bsgs) -> bool {
    elements.iter().all(|p| membership(p, b))
}

/// Same subgroup: equal orders and each generating set inside the other.
fn same_group(a: &[Permutation], b: &[Permutation], degree: usize) -> bool {
    let (ba, bb) = (schreier_sims(a, degree), schreier_sims(b, degree));
    group_order(&ba) == group_order(&bb) && all_in(a, &bb) && all_in(b, &ba)
}

/// Brute-force commutation counts over all of `C_m`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct NumCounts {
    /// `#{u : h1 s1 h1 u = u s1}`
    pub s_num1: usize,
    /// `#{u : s1 u = u s1}`
    pub s_num2: usize,
    /// `#{u : h1 s1^2 h1 u = u s1^2}`
    pub z_num1: usize,
    /// `#{u : s1^2 u = u s1^2}`
    pub z_num2: usize,
}

/// Counts over every element of `C_m`, enumerated through normal forms.
pub fn num_counts(m: usize) -> Result<NumCounts> {
    if m == 0 || m > 2 {
        return Err(Error::UnsupportedN { n: m, reason: "exhaustive counts are limited to m <= 2".into() });
    }
    let (s, hsh, z, hzh) = (el(m, "s1"), el(m, "h1 s1 h1"), el(m, "z1"), el(m, "h1 z1 h1"));
    let mut c = NumCounts { s_num1: 0, s_num2: 0, z_num1: 0, z_num2: 0 };
    for p in all_params(m) {
        let u = nf_to_tableau(&p)?;
        let us = compose(&u, &s)?;
        let uz = compose(&u, &z)?;
        c.s_num1 += (compose(&hsh, &u)? == us) as usize;
        c.s_num2 += (compose(&s, &u)? == us) as usize;
        c.z_num1 += (compose(&hzh, &u)? == uz) as usize;
        c.z_num2 += (compose(&z, &u)? == uz) as usize;
    }
    Ok(c)
}

/// Size of `C_n` by breadth-first closure of the generator tableaus.
fn bfs_order(n: usize) -> usize {
    let gens: Vec<CliffordTableau> = standard_generators(n).into_iter().map(|(_, g)| g).collect();
    let id = CliffordTableau::identity(n);
    let mut seen = HashSet::from([id.canonical_key()]);
    let mut q = VecDeque::from([id]);
    while let Some(t) = q.pop_front() {
        for g in &gens {
            let c = compose(&t, g).expect("same n");
            if seen.insert(c.canonical_key()) {
                q.push_back(c);
            }
        }
    }
    seen.len()
}

fn big(v: usize) -> BigUint {
    BigUint::from(v)
}

/// Runs every centraliser and embedding check for `n` qubits.
pub fn verify_theorems(n: usize) -> Result<Report> {
    if n == 0 || n > MAX_THEOREM_N {
        return Err(Error::UnsupportedN { n, reason: format!("theorem checks support 1..={MAX_THEOREM_N}") });
    }
    let v = phase_class_cached(n, DEFAULT_GUARD)?;
    let z = enumerate_class(&el(n, "z1"), DEFAULT_GUARD)?;
    let act = Action { v, z: Some(z) };
    let deg = act.degree();
    let cn_gens: Vec<CliffordTableau> = standard_generators(n).into_iter().map(|(_, g)| g).collect();
    let cn = act.perms(&cn_gens);
    let mut r = Report::default();
    let tag = |s: &str| format!("n{n}.{s}");

    // (g) Faithful embedding and class size.
    let v_only = Action { v: act.v.clone(), z: None };
    let v_gens = v_only.perms(&cn_gens);
    r.push(Check::equal(tag("g.class_size"), act.v.len(), class_size(n)));
    r.push(Check::equal(tag("g.image_order"), order_of(&v_gens, act.v.len()), clifford_order(n)));
    if n <= 2 {
        r.push(Check::equal(tag("g.tableau_bfs_order"), bfs_order(n), clifford_order(n)));
    }

    // (a) Centraliser of s1^2 as the stabiliser of the z1 point.
    let z1 = el(n, "z1");
    let z_pt = act.z_point(&z1);
    r.push(Check::equal(tag("a.z1_orbit"), orbit(&cn, deg, z_pt).len(), (1usize << (2 * n)) - 1));
    let cent_z = schreier_sims_with_base(&cn, deg, &[z_pt]);
    let cent_z_gens = cent_z.stabilizer_generators(1);
    let cent_z_b = schreier_sims(&cent_z_gens, deg);
    r.push(Check::equal(tag("a.stabilizer_order"), group_order(&cent_z_b), inertia_order(n)));
    let listed = act.perms(&cent_z1_generators(n));
    r.push(Check::equal(tag("a.listed_order"), order_of(&listed, deg), inertia_order(n)));
    r.push(Check::holds(tag("a.listed_in_stabilizer"), all_in(&listed, &cent_z_b)));
    let in_gens = inertia_generators(n);
    r.push(Check::equal(tag("a.inertia_order"), order_of(&act.perms(&in_gens), deg), inertia_order(n)));
    let c = el(n, "s1 s1 s1 h1");
    let conj: Vec<CliffordTableau> = in_gens.iter().map(|g| g.conjugated_by(&c)).collect::<Result<_>>()?;
    r.push(Check::holds(tag("a.conjugated_inertia_in_stabilizer"), all_in(&act.perms(&conj), &cent_z_b)));

    // (b) Redundant generator.
    if n >= 3 {
        let mut sub = gens_of(n, &["h1".into(), "h2".into(), "h3".into()]);
        sub.push(m_gate(n));
        sub.push(el(n, "cz2"));
        let b = schreier_sims(&v_only.perms(&sub), v_only.degree());
        r.push(Check::holds(tag("b.h1s1s1h1_redundant"), membership(&v_only.perm(&el(n, "h1 z1 h1")), &b)));
    }

    // (c) Change of basis.
    if n >= 3 {
        let mut lhs = gens_of(n, &["h2".into(), "h3".into(), "s2".into(), "s3".into()]);
        let rhs_extra = gens_of(n, &["cz1".into(), "cz2".into()]);
        let mut rhs = lhs.clone();
        rhs.extend(rhs_extra);
        lhs.push(m_gate(n).conjugated_by(&c)?);
        lhs.push(el(n, "cz2").conjugated_by(&el(n, "h1"))?);
        r.push(Check::holds(
            tag("c.change_of_basis"),
            same_group(&v_only.perms(&lhs), &v_only.perms(&rhs), v_only.degree()),
        ));
    }

    // (d) Centraliser of s1 as a point stabiliser.
    let s1_pt = act.v_point(&el(n, "s1"));
    let cent_s = schreier_sims_with_base(&v_gens, v_only.degree(), &[s1_pt]);
    let cent_s_gens = cent_s.stabilizer_generators(1);
    let cent_s_b = schreier_sims(&cent_s_gens, v_only.degree());
    r.push(Check::equal(
        tag("d.stabilizer_order"),
        order_of(&cent_s_gens, v_only.degree()),
        phase_centralizer_order(n),
    ));
    let listed = v_only.perms(&cent_s1_generators(n, true));
    r.push(Check::holds(tag("d.listed_equals_stabilizer"), same_group(&listed, &cent_s_gens, v_only.degree())));
    if n >= 2 {
        let eq4 = el(n, "h2 s2 h2 s2 cz1 h2 s2 h2 cz1 h2 cz1");
        r.push(Check::holds(tag("d.s1_word"), eq4 == el(n, "s1")));
        let without = v_only.perms(&cent_s1_generators(n, false));
        r.push(Check::holds(tag("d.s1_omissible"), same_group(&without, &listed, v_only.degree())));
    }

    // (e) F_n is normal of index two in IN_n.
    let f = v_only.perms(&f_generators(n));
    let inp = v_only.perms(&in_gens);
    r.push(Check::equal(tag("e.f_order"), order_of(&f, v_only.degree()), phase_centralizer_order(n)));
    r.push(Check::holds(tag("e.f_normal"), is_normal(&f, &inp, v_only.degree())));
    let fb = schreier_sims(&f, v_only.degree());
    r.push(Check::holds(tag("e.h1_not_in_f"), !membership(&v_only.perm(&el(n, "h1")), &fb)));
    if n >= 2 {
        let m = m_gate(n);
        let lhs = compose(&compose(&el(n, "h1"), &m)?, &el(n, "h1"))?;
        r.push(Check::holds(tag("e.h1_m_h1_is_m_cubed"), lhs == m.pow(3)));
    }
    // F_2 is not conjugate to Cent(s_1) inside C_2, so n = 2 is skipped.
    if n != 2 {
        let conj_f: Vec<CliffordTableau> =
            f_generators(n).iter().map(|g| g.conjugated_by(&c)).collect::<Result<_>>()?;
        r.push(Check::holds(
            tag("e.conjugated_f_is_centralizer"),
            same_group(&v_only.perms(&conj_f), &cent_s_gens, v_only.degree()),
        ));
    }

    // (f) Two-point stabiliser and the iterated chain.
    let mut chain_points = Vec::new();
    for k in 1..=n {
        chain_points.push(act.v_point(&el(n, &format!("s{k}"))));
        chain_points.push(act.v_point(&el(n, &format!("h{k} s{k} h{k}"))));
        let st = crate::group_algorithms::stabilizer(&v_gens, v_only.degree(), &chain_points);
        let expected = if k == n { big(1) } else { clifford_order(n - k) };
        r.push(Check::equal(tag(&format!("f.chain{k}_order")), order_of(&st, v_only.degree()), expected));
        if k == 1 {
            let listed = v_only.perms(&two_point_generators(n));
            r.push(Check::holds(tag("f.listed_equals_stabilizer"), same_group(&listed, &st, v_only.degree())));
        }
    }

    // (h) The semidirect decomposition.
    let g = el(n, G_WORD);
    r.push(Check::holds(tag("h.g_squared"), compose(&g, &g)?.is_identity()));
    r.push(Check::holds(tag("h.g_outside_cent_s1"), !membership(&v_only.perm(&g), &cent_s_b)));
    r.push(Check::holds(tag("h.g_in_cent_z1"), membership(&act.perm(&g), &cent_z_b)));
    let gconj = |t: &CliffordTableau| compose(&compose(&g, t).expect("n"), &g).expect("n");
    r.push(Check::holds(tag("h.phi_s1"), gconj(&el(n, "s1")) == el(n, "s1 s1 s1")));
    let mut fixed = true;
    for name in names("h", 2..=n).into_iter().chain(names("s", 2..=n)).chain(names("cz", 2..=n.max(2) - 1)) {
        let t = el(n, &name);
        fixed &= gconj(&t) == t;
    }
    if n >= 2 {
        r.push(Check::holds(tag("h.phi_cz1"), gconj(&el(n, "cz1")) == el(n, "cz1 z2")));
    }
    r.push(Check::holds(tag("h.phi_fixes_rest"), fixed));

    // (i) Brute-force counts.
    for m in 1..=n.min(2) {
        let c = num_counts(m)?;
        r.push(Check::equal(format!("n{n}.i.m{m}.s_num1"), c.s_num1, phase_centralizer_order(m)));
        r.push(Check::equal(format!("n{n}.i.m{m}.s_num2"), c.s_num2, phase_centralizer_order(m)));
        r.push(Check::equal(format!("n{n}.i.m{m}.z_num1"), c.z_num1, inertia_order(m)));
        r.push(Check::equal(format!("n{n}.i.m{m}.z_num2"), c.z_num2, inertia_order(m)));
    }
    Ok(r)
}
