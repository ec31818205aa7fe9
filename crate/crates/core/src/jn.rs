//! The recursively constrained subgroup `J_n` of tree automorphisms, its
//! homomorphisms `psi` (to a cyclic 2-group) and `delta` (to a dihedral
//! 2-group), the generators of the automaton group, and enumeration of `J_n`.
//!
//! For a section at level `m` (a subtree with `2^m` leaves), `psi` lives in
//! `Z / 2^(m/2)` and `delta` in the dihedral group of order `2^(m/2 + 1)`,
//! with `m/2` rounded down. Division by `p + q` is multiplication by its
//! inverse modulo the current power of two, which exists because `p + q` is
//! odd.

use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::alphabet::Alphabet;
use crate::error::{Error, Result};
use crate::tree::{format_path, node_path, TreeAut};

/// An element of `Z / 2^exp`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Residue {
    value: u64,
    exp: u32,
}

#[inline]
fn mask(exp: u32) -> u64 {
    if exp >= 64 {
        u64::MAX
    } else {
        (1u64 << exp) - 1
    }
}

/// Inverse of an odd number modulo `2^exp` (Newton iteration on 2-adic
/// precision: each round doubles the number of correct bits).
pub fn inverse_mod_pow2(odd: i64, exp: u32) -> u64 {
    assert!(odd % 2 != 0, "{odd} has no inverse modulo a power of two");
    let x = odd as u64;
    let mut inv = x; // correct to 3 bits for odd x
    for _ in 0..5 {
        inv = inv.wrapping_mul(2u64.wrapping_sub(x.wrapping_mul(inv)));
    }
    inv & mask(exp)
}

impl Residue {
    /// Reduces a signed integer modulo `2^exp`.
    pub fn new(value: i64, exp: u32) -> Self {
        Residue { value: (value as u64) & mask(exp), exp }
    }

    pub fn zero(exp: u32) -> Self {
        Residue { value: 0, exp }
    }

    pub fn value(&self) -> u64 {
        self.value
    }

    pub fn exp(&self) -> u32 {
        self.exp
    }

    pub fn modulus(&self) -> u128 {
        1u128 << self.exp
    }

    fn check(&self, other: &Residue) -> Result<()> {
        if self.exp != other.exp {
            return Err(Error::ModulusMismatch { left: self.exp, right: other.exp });
        }
        Ok(())
    }

    pub fn add(&self, other: &Residue) -> Result<Residue> {
        self.check(other)?;
        Ok(self.add_unchecked(other))
    }

    fn add_unchecked(&self, other: &Residue) -> Residue {
        Residue { value: self.value.wrapping_add(other.value) & mask(self.exp), exp: self.exp }
    }

    fn sub_unchecked(&self, other: &Residue) -> Residue {
        Residue { value: self.value.wrapping_sub(other.value) & mask(self.exp), exp: self.exp }
    }

    pub fn neg(&self) -> Residue {
        Residue { value: self.value.wrapping_neg() & mask(self.exp), exp: self.exp }
    }

    /// Multiplication by an integer.
    pub fn scale(&self, k: i64) -> Residue {
        Residue { value: self.value.wrapping_mul(k as u64) & mask(self.exp), exp: self.exp }
    }

    /// Reinterprets the canonical representative modulo `2^exp`.
    pub fn with_exp(&self, exp: u32) -> Residue {
        Residue { value: self.value & mask(exp), exp }
    }

    pub fn is_odd(&self) -> bool {
        self.value & 1 == 1
    }
}

impl fmt::Display for Residue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} mod {}", self.value, self.modulus())
    }
}

/// An element `(f, x)` of the dihedral group of order `2^(exp + 1)`, with
/// product `(f1, x1)(f2, x2) = (f1 + f2, x1 + (-1)^f1 x2)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct DihedralElem {
    pub f: bool,
    pub x: Residue,
}

impl DihedralElem {
    pub fn new(f: bool, x: Residue) -> Self {
        DihedralElem { f, x }
    }

    pub fn identity(exp: u32) -> Self {
        DihedralElem { f: false, x: Residue::zero(exp) }
    }

    pub fn exp(&self) -> u32 {
        self.x.exp
    }
}

impl fmt::Display for DihedralElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", u8::from(self.f), self.x)
    }
}

pub fn dihedral_mul(d1: &DihedralElem, d2: &DihedralElem) -> Result<DihedralElem> {
    d1.x.check(&d2.x)?;
    let x2 = if d1.f { d2.x.neg() } else { d2.x };
    Ok(DihedralElem { f: d1.f ^ d2.f, x: d1.x.add_unchecked(&x2) })
}

/// The involution `(f, x) -> (f, [f = 1](p + q)(p - q) - x)` relating the
/// invariants of sibling sections.
pub fn phi(a: &Alphabet, d: &DihedralElem) -> DihedralElem {
    let shift = if d.f { Residue::new(a.sum_pq() * a.diff_pq(), d.x.exp) } else { Residue::zero(d.x.exp) };
    DihedralElem { f: d.f, x: shift.sub_unchecked(&d.x) }
}

/// Exponent of the `psi` codomain at level `m`.
pub fn level_exp(m: u32) -> u32 {
    m / 2
}

/// Why an element fails the membership test, and where.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    /// Path from the root to the offending section.
    pub path: String,
    /// Level of the offending section.
    pub level: u32,
    pub kind: ViolationKind,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ViolationKind {
    /// A level-2 section whose two children differ.
    SectionsDiffer,
    /// `delta(left)` differs from `phi(delta(right))`.
    DeltaMismatch { left: DihedralElem, required: DihedralElem },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.kind {
            ViolationKind::SectionsDiffer => {
                write!(f, "at {} (level {}): left and right sections differ", self.path, self.level)
            }
            ViolationKind::DeltaMismatch { left, required } => write!(
                f,
                "at {} (level {}): delta of left section is {left}, but phi(delta(right)) is {required}",
                self.path, self.level
            ),
        }
    }
}

/// `psi` and `delta` of every section of a member, keyed by heap index.
#[derive(Clone, Debug)]
pub struct Invariants {
    n: u32,
    psi: Vec<Residue>,
    delta: Vec<DihedralElem>,
}

impl Invariants {
    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn psi(&self) -> Residue {
        self.psi[1]
    }

    pub fn delta(&self) -> DihedralElem {
        self.delta[1]
    }

    /// `psi` of the section at a heap node.
    pub fn psi_at(&self, node: usize) -> Residue {
        self.psi[node]
    }

    pub fn delta_at(&self, node: usize) -> DihedralElem {
        self.delta[node]
    }
}

/// Computes `psi` and `delta` for every section bottom-up, checking the
/// membership condition at each internal level.
///
/// Each section is visited once, so this doubles as the memo table for the
/// recursive definitions: `O(2^n)` for the whole portrait.
pub fn invariants(a: &Alphabet, g: &TreeAut) -> Result<Invariants> {
    let n = g.n();
    let size = 1usize << n;
    let pq = a.sum_pq();
    let correction = pq * a.diff_pq();
    let mut psi = vec![Residue::zero(0); size];
    let mut delta = vec![DihedralElem::identity(0); size];
    let mut failed = vec![false; size];
    let mut first: Option<(usize, Violation)> = None;

    for u in (1..size).rev() {
        let depth = usize::BITS - 1 - u.leading_zeros();
        let m = n - depth;
        let f = g.flip(u);
        if m == 1 {
            delta[u] = DihedralElem::new(f, Residue::zero(0));
            continue;
        }
        let (l, r) = (2 * u, 2 * u + 1);
        if failed[l] || failed[r] {
            failed[u] = true;
            continue;
        }
        let required = phi(a, &delta[r]);
        if delta[l] != required {
            failed[u] = true;
            let kind = if m == 2 {
                ViolationKind::SectionsDiffer
            } else {
                ViolationKind::DeltaMismatch { left: delta[l], required }
            };
            let v = Violation { path: format_path(&node_path(u)), level: m, kind };
            // keep the violation closest to the root, leftmost on ties
            if first.as_ref().is_none_or(|(node, _)| u < *node) {
                first = Some((u, v));
            }
            continue;
        }
        let e = level_exp(m);
        if m == 2 {
            psi[u] = Residue::new(i64::from(g.flip(l)), 1);
            delta[u] = DihedralElem::new(f, psi[u]);
        } else if m % 2 == 1 {
            let inv = inverse_mod_pow2(pq, e) as i64;
            psi[u] = psi[l].add_unchecked(&psi[r]).scale(inv);
            delta[u] = DihedralElem::new(f, psi[l].sub_unchecked(&psi[r]));
        } else {
            let (ll, rl) = (2 * l, 2 * r);
            let inv2 = inverse_mod_pow2(pq * pq, e) as i64;
            let doubled = Residue::new(2 * (psi[ll].value + psi[rl].value) as i64, e);
            let shift = if g.flip(l) { Residue::new(correction, e) } else { Residue::zero(e) };
            psi[u] = doubled.sub_unchecked(&shift).scale(inv2);
            let twice_right = Residue::new(2 * psi[r].value as i64, e);
            delta[u] = DihedralElem::new(f, psi[u].scale(pq).sub_unchecked(&twice_right));
        }
        debug_assert_eq!(psi[u].exp, e);
    }
    if failed[1] {
        let (_, violation) = first.expect("a failure always records a violation below it");
        return Err(Error::NotAMember { n, violation });
    }
    Ok(Invariants { n, psi, delta })
}

pub fn is_member(a: &Alphabet, g: &TreeAut) -> bool {
    invariants(a, g).is_ok()
}

pub fn psi(a: &Alphabet, g: &TreeAut) -> Result<Residue> {
    Ok(invariants(a, g)?.psi())
}

pub fn delta(a: &Alphabet, g: &TreeAut) -> Result<DihedralElem> {
    Ok(invariants(a, g)?.delta())
}

/// `[p]_k` and `[q]_k` for `k = 1..=n`.
fn generator_tower(a: &Alphabet, n: u32) -> Vec<(TreeAut, TreeAut)> {
    assert!(n >= 1);
    let mut tower = vec![(TreeAut::root_flip(1), TreeAut::root_flip(1))];
    for _ in 2..=n {
        let (gp, gq) = tower.last().unwrap();
        let (p, q) = (u64::from(a.p()), u64::from(a.q()));
        let next_p = TreeAut::from_parts(true, &gp.pow(p), &gq.pow(p)).unwrap();
        let next_q = TreeAut::from_parts(true, &gp.pow(q), &gq.pow(q)).unwrap();
        tower.push((next_p, next_q));
    }
    tower
}

/// `[p]_n = (1, [p]_{n-1}^p, [q]_{n-1}^p)`, the automaton's action on input `p`.
pub fn gen_p(a: &Alphabet, n: u32) -> TreeAut {
    generator_tower(a, n).pop().unwrap().0
}

/// `[q]_n = (1, [p]_{n-1}^q, [q]_{n-1}^q)`.
pub fn gen_q(a: &Alphabet, n: u32) -> TreeAut {
    generator_tower(a, n).pop().unwrap().1
}

/// Both generators at once.
pub fn generators(a: &Alphabet, n: u32) -> (TreeAut, TreeAut) {
    generator_tower(a, n).pop().unwrap()
}

/// `y_n = (0, [p]_{n-1}, [q]_{n-1})`; the identity for `n = 1`.
pub fn gen_y(a: &Alphabet, n: u32) -> TreeAut {
    if n == 1 {
        return TreeAut::identity(1);
    }
    let (p, q) = generator_tower(a, n - 1).pop().unwrap();
    TreeAut::from_parts(false, &p, &q).unwrap()
}

/// The root flip.
pub fn gen_f(n: u32) -> TreeAut {
    TreeAut::root_flip(n)
}

/// `log2 |J_n| = ceil((2^n + 3n) / 6)`.
pub fn jn_order_exponent(n: u32) -> u64 {
    assert!((1..=100).contains(&n));
    let num = (1u128 << n) + 3 * u128::from(n);
    num.div_ceil(6) as u64
}

/// Default largest `n` for [`enumerate_jn`].
pub const ENUMERATION_CAP: u32 = 6;
/// Largest `n` enumeration accepts even with a raised cap (`|J_7| = 2^25`).
pub const ENUMERATION_HARD_CAP: u32 = 7;

/// Every member of `J_n`, each exactly once, for `n <= ENUMERATION_CAP`.
pub fn enumerate_jn(a: &Alphabet, n: u32) -> Result<JnEnumeration> {
    enumerate_jn_with_cap(a, n, ENUMERATION_CAP)
}

/// As [`enumerate_jn`] with a caller-chosen cap, itself bounded by
/// [`ENUMERATION_HARD_CAP`].
///
/// Levels below `n` are materialized and bucketed by `delta`. An element is
/// a free root flip, a free left section, and a right section whose `delta`
/// is `phi(delta(left))`; that bucket is a coset of `ker(delta)`.
pub fn enumerate_jn_with_cap(a: &Alphabet, n: u32, cap: u32) -> Result<JnEnumeration> {
    let cap = cap.min(ENUMERATION_HARD_CAP);
    if n == 0 {
        return Err(Error::TooSmall { n, min: 1 });
    }
    if n > cap {
        return Err(Error::CapExceeded { what: "enumeration depth n", value: u64::from(n), cap: u64::from(cap) });
    }
    if n == 1 {
        return Ok(JnEnumeration::base());
    }
    let mut level: Vec<(TreeAut, DihedralElem)> = vec![
        (TreeAut::identity(1), DihedralElem::identity(0)),
        (TreeAut::root_flip(1), DihedralElem::new(true, Residue::zero(0))),
    ];
    for _ in 2..n {
        let next: Vec<TreeAut> = JnEnumeration::over(a, &level).collect();
        level = next
            .into_iter()
            .map(|g| {
                let d = delta(a, &g).expect("constructed elements are members");
                (g, d)
            })
            .collect();
    }
    Ok(JnEnumeration::over(a, &level))
}

/// Lazy stream over one level of the enumeration.
pub struct JnEnumeration {
    lower: Vec<TreeAut>,
    /// For each lower element, the indices of admissible right sections.
    partners: Vec<std::rc::Rc<Vec<usize>>>,
    flip: u8,
    left: usize,
    right: usize,
    base: Option<std::vec::IntoIter<TreeAut>>,
    remaining: usize,
}

impl JnEnumeration {
    fn base() -> Self {
        JnEnumeration {
            lower: Vec::new(),
            partners: Vec::new(),
            flip: 2,
            left: 0,
            right: 0,
            base: Some(vec![TreeAut::identity(1), TreeAut::root_flip(1)].into_iter()),
            remaining: 2,
        }
    }

    fn over(a: &Alphabet, lower: &[(TreeAut, DihedralElem)]) -> Self {
        let mut buckets: HashMap<DihedralElem, Vec<usize>> = HashMap::new();
        for (i, (_, d)) in lower.iter().enumerate() {
            buckets.entry(*d).or_default().push(i);
        }
        let shared: HashMap<DihedralElem, std::rc::Rc<Vec<usize>>> =
            buckets.into_iter().map(|(k, v)| (k, std::rc::Rc::new(v))).collect();
        let empty = std::rc::Rc::new(Vec::new());
        let partners: Vec<_> =
            lower.iter().map(|(_, d)| shared.get(&phi(a, d)).cloned().unwrap_or_else(|| empty.clone())).collect();
        let per_flip: usize = partners.iter().map(|p| p.len()).sum();
        JnEnumeration {
            lower: lower.iter().map(|(g, _)| g.clone()).collect(),
            partners,
            flip: 0,
            left: 0,
            right: 0,
            base: None,
            remaining: 2 * per_flip,
        }
    }
}

impl Iterator for JnEnumeration {
    type Item = TreeAut;

    fn next(&mut self) -> Option<TreeAut> {
        if let Some(base) = self.base.as_mut() {
            let g = base.next();
            if g.is_some() {
                self.remaining -= 1;
            }
            return g;
        }
        while self.flip < 2 {
            if self.left >= self.lower.len() {
                self.flip += 1;
                self.left = 0;
                self.right = 0;
                continue;
            }
            let partners = &self.partners[self.left];
            if self.right >= partners.len() {
                self.left += 1;
                self.right = 0;
                continue;
            }
            let r = partners[self.right];
            self.right += 1;
            self.remaining -= 1;
            let g = TreeAut::from_parts(self.flip == 1, &self.lower[self.left], &self.lower[r])
                .expect("sections share a depth");
            return Some(g);
        }
        None
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        (self.remaining, Some(self.remaining))
    }
}

impl ExactSizeIterator for JnEnumeration {}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::alphabet::Digit;
    use crate::tree::tests::random_aut;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn alpha(p: u32, q: u32) -> Alphabet {
        Alphabet::new(p, q).unwrap()
    }

    fn random_word_element(a: &Alphabet, n: u32, rng: &mut impl Rng) -> TreeAut {
        let (gp, gq) = generators(a, n);
        let len = rng.gen_range(0..40);
        let mut g = TreeAut::identity(n);
        for _ in 0..len {
            g = g.mul(if rng.gen() { &gp } else { &gq }).unwrap();
        }
        g
    }

    #[test]
    fn inverse_mod_pow2_is_an_inverse() {
        for odd in [1i64, 3, 5, 7, 9, 25, -3, -7] {
            for exp in 0..20 {
                let inv = inverse_mod_pow2(odd, exp);
                assert_eq!(Residue::new(odd, exp).scale(inv as i64), Residue::new(1, exp));
            }
        }
    }

    #[test]
    fn dihedral_products() {
        let e = 3;
        let r = |v| Residue::new(v, e);
        let d = |f, v| DihedralElem::new(f, r(v));
        assert_eq!(dihedral_mul(&d(false, 2), &d(false, 5)).unwrap(), d(false, 7));
        assert_eq!(dihedral_mul(&d(true, 0), &d(true, 0)).unwrap(), d(false, 0));
        assert_eq!(dihedral_mul(&d(true, 3), &d(false, 2)).unwrap(), d(true, 1));
        let other = DihedralElem::identity(2);
        assert_eq!(dihedral_mul(&d(true, 3), &other), Err(Error::ModulusMismatch { left: 3, right: 2 }));
    }

    #[test]
    fn phi_examples_and_involution() {
        let a = alpha(1, 2);
        // (1, 2) -> (1, 3 * (-1) - 2) = (1, -5) = (1, 3) mod 8
        let d = DihedralElem::new(true, Residue::new(2, 3));
        assert_eq!(phi(&a, &d), DihedralElem::new(true, Residue::new(3, 3)));
        for b in [alpha(1, 2), alpha(2, 3), alpha(4, 7)] {
            for f in [false, true] {
                for x in 0..16 {
                    let d = DihedralElem::new(f, Residue::new(x, 4));
                    assert_eq!(phi(&b, &phi(&b, &d)), d);
                    if !f {
                        assert_eq!(phi(&b, &d).x, Residue::new(-x, 4));
                    }
                }
            }
        }
    }

    #[test]
    fn order_formula() {
        let table = [1u64, 2, 3, 5, 8, 14, 25, 47, 90, 176, 347, 689];
        for (i, &e) in table.iter().enumerate() {
            assert_eq!(jn_order_exponent(i as u32 + 1), e);
        }
        // recursion |J_n| = 2 |J_{n-1}|^2 / |D_{2^(floor((n-1)/2)+1)}|
        for n in 2..=40u32 {
            let prev = jn_order_exponent(n - 1);
            assert_eq!(jn_order_exponent(n), 1 + 2 * prev - u64::from((n - 1) / 2 + 1));
        }
    }

    #[test]
    fn identity_is_a_member_with_trivial_invariants() {
        for a in [alpha(1, 2), alpha(2, 3)] {
            for n in 1..=10 {
                let inv = invariants(&a, &TreeAut::identity(n)).unwrap();
                assert_eq!(inv.psi(), Residue::zero(level_exp(n)));
                assert_eq!(inv.delta(), DihedralElem::identity(level_exp(n)));
            }
        }
    }

    #[test]
    fn generator_invariants() {
        for a in [alpha(1, 2), alpha(2, 3), alpha(3, 2), alpha(1, 4)] {
            let (p, q) = (i64::from(a.p()), i64::from(a.q()));
            for n in 1..=10 {
                let e = level_exp(n);
                let y = invariants(&a, &gen_y(&a, n)).unwrap();
                let gp = invariants(&a, &gen_p(&a, n)).unwrap();
                let gq = invariants(&a, &gen_q(&a, n)).unwrap();
                assert_eq!(y.psi(), Residue::new(1, e), "psi(y_{n})");
                assert_eq!(gp.psi(), Residue::new(p, e));
                assert_eq!(gq.psi(), Residue::new(q, e));
                assert_eq!(y.delta(), DihedralElem::new(false, Residue::new(p - q, e)));
                assert_eq!(gp.delta(), DihedralElem::new(true, Residue::new(p * (p - q), e)));
                assert_eq!(gq.delta(), DihedralElem::new(true, Residue::new(q * (p - q), e)));
            }
        }
    }

    #[test]
    fn generators_factor_through_y_and_f() {
        for a in [alpha(1, 2), alpha(2, 3), alpha(5, 2)] {
            for n in 1..=8 {
                let y = gen_y(&a, n);
                let f = gen_f(n);
                assert_eq!(y.pow(u64::from(a.p())).mul(&f).unwrap(), gen_p(&a, n));
                assert_eq!(y.pow(u64::from(a.q())).mul(&f).unwrap(), gen_q(&a, n));
            }
        }
        assert_eq!(gen_p(&alpha(1, 2), 1), TreeAut::root_flip(1));
        assert_eq!(gen_q(&alpha(1, 2), 1), TreeAut::root_flip(1));
    }

    #[test]
    fn generator_matches_automaton_symbol() {
        let a = alpha(1, 2);
        let table = crate::automaton::build_table(&a, 3).unwrap();
        assert_eq!(gen_p(&a, 3).to_permutation(), table.permutation(Digit::P));
        assert_eq!(gen_q(&a, 3).to_permutation(), table.permutation(Digit::Q));
    }

    #[test]
    fn psi_rejects_non_members() {
        let a = alpha(1, 2);
        // left and right level-2 sections differ in their root flip
        let g = TreeAut::from_flips(3, &[false, true, false, false, false, false, false]).unwrap();
        let err = psi(&a, &g).unwrap_err();
        match err {
            Error::NotAMember { n: 3, violation } => {
                assert_eq!(violation.path, "root");
                assert!(matches!(violation.kind, ViolationKind::DeltaMismatch { .. }));
            }
            other => panic!("unexpected {other:?}"),
        }
        // a level-2 section with differing children, below the root
        let h = TreeAut::from_flips(3, &[false, false, false, true, false, false, false]).unwrap();
        match delta(&a, &h).unwrap_err() {
            Error::NotAMember { violation, .. } => {
                assert_eq!(violation.path, "L");
                assert_eq!(violation.kind, ViolationKind::SectionsDiffer);
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn enumeration_counts() {
        for a in [alpha(1, 2), alpha(2, 3)] {
            for n in 1..=6u32 {
                let it = enumerate_jn(&a, n).unwrap();
                let expected = 1usize << jn_order_exponent(n);
                assert_eq!(it.len(), expected);
                let all: Vec<TreeAut> = it.collect();
                assert_eq!(all.len(), expected);
                if n <= 5 {
                    let distinct: std::collections::HashSet<_> = all.iter().collect();
                    assert_eq!(distinct.len(), expected);
                    assert!(all.iter().all(|g| is_member(&a, g)));
                }
            }
        }
        assert!(matches!(enumerate_jn(&alpha(1, 2), 7), Err(Error::CapExceeded { .. })));
        assert!(matches!(enumerate_jn_with_cap(&alpha(1, 2), 8, 10), Err(Error::CapExceeded { .. })));
    }

    #[test]
    fn membership_by_brute_force_at_n4() {
        // every portrait of Aut(T_5) with 15 bits: members number exactly 2^5
        let a = alpha(1, 2);
        let mut count = 0;
        for m in 0u32..1 << 15 {
            let flips: Vec<bool> = (0..15).map(|i| (m >> i) & 1 == 1).collect();
            if is_member(&a, &TreeAut::from_flips(4, &flips).unwrap()) {
                count += 1;
            }
        }
        assert_eq!(count, 32);
    }

    #[test]
    fn section_congruences_on_enumerated_members() {
        for a in [alpha(1, 2), alpha(2, 3)] {
            let pq = a.sum_pq();
            let corr = pq * a.diff_pq();
            for n in 3..=6u32 {
                for g in enumerate_jn(&a, n).unwrap() {
                    let inv = invariants(&a, &g).unwrap();
                    let (l, r) = (2, 3);
                    // psi_n = (psi(L) + psi(R)) / (p + q) mod 2^floor((n-1)/2)
                    let e = (n - 1) / 2;
                    let lhs = inv.psi().with_exp(e);
                    let sum = inv.psi_at(l).value() + inv.psi_at(r).value();
                    let rhs = Residue::new(sum as i64, e).scale(inverse_mod_pow2(pq, e) as i64);
                    assert_eq!(lhs, rhs);
                    // parity bridge
                    assert_eq!(inv.psi().is_odd() as u64, sum & 1);
                    if n % 2 == 0 {
                        // sibling relation one level down, with equal child flips
                        assert_eq!(g.flip(l), g.flip(r));
                        let e2 = level_exp(n - 2);
                        let p = |node: usize| inv.psi_at(node).value() as i64;
                        let left = Residue::new(p(4) - p(5), e2);
                        let shift = if g.flip(l) { corr } else { 0 };
                        let right = Residue::new(p(7) - p(6) + shift, e2);
                        assert_eq!(left, right);
                    }
                }
            }
        }
    }

    #[test]
    fn delta_is_surjective() {
        for a in [alpha(1, 2), alpha(2, 3)] {
            for n in 1..=6u32 {
                let image: std::collections::HashSet<DihedralElem> =
                    enumerate_jn(&a, n).unwrap().map(|g| delta(&a, &g).unwrap()).collect();
                assert_eq!(image.len(), 2 << level_exp(n));
            }
        }
    }

    #[test]
    fn homomorphisms_and_closure_on_random_words() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for a in [alpha(1, 2), alpha(2, 3)] {
            for n in 1..=9u32 {
                for _ in 0..60 {
                    let g = random_word_element(&a, n, &mut rng);
                    let h = random_word_element(&a, n, &mut rng);
                    let gh = g.mul(&h).unwrap();
                    let (ig, ih, igh) =
                        (invariants(&a, &g).unwrap(), invariants(&a, &h).unwrap(), invariants(&a, &gh).unwrap());
                    assert_eq!(igh.psi(), ig.psi().add(&ih.psi()).unwrap());
                    assert_eq!(igh.delta(), dihedral_mul(&ig.delta(), &ih.delta()).unwrap());
                    assert!(is_member(&a, &g.inverse()));
                }
            }
        }
    }

    #[test]
    fn random_portraits_are_rarely_members() {
        // sanity: the predicate is not vacuous
        let mut rng = ChaCha8Rng::seed_from_u64(12);
        let a = alpha(1, 2);
        let members = (0..200).filter(|_| is_member(&a, &random_aut(&mut rng, 6))).count();
        assert!(members < 5);
    }
}
