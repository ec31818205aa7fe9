//! Base and strong generating sets with Schreier-vector transversals, and
//! the deterministic Schreier–Sims construction for arbitrary permutations.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::perm::Perm;

/// Marks a point outside the level's orbit.
const UNSEEN: i32 = -1;
/// Marks the level's base point.
const ROOT: i32 = -2;

/// One level of a stabilizer chain.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Level {
    pub(crate) point: u32,
    /// Indices into the strong generating set of the generators that fix
    /// every earlier base point.
    pub(crate) gens: Vec<u32>,
    /// The orbit of `point`, in discovery order.
    pub(crate) orbit: Vec<u32>,
    /// Schreier vector: for each orbit point other than the base point, the
    /// generator that reached it from its predecessor.
    pub(crate) label: Vec<i32>,
}

impl Level {
    fn new(point: u32, degree: usize) -> Self {
        let mut label = vec![UNSEEN; degree];
        label[point as usize] = ROOT;
        Level { point, gens: Vec::new(), orbit: vec![point], label }
    }

    pub fn point(&self) -> u32 {
        self.point
    }

    pub fn orbit(&self) -> &[u32] {
        &self.orbit
    }

    pub fn orbit_size(&self) -> usize {
        self.orbit.len()
    }

    pub fn generator_indices(&self) -> &[u32] {
        &self.gens
    }

    pub fn contains(&self, x: u32) -> bool {
        self.label[x as usize] != UNSEEN
    }
}

/// A base, a strong generating set, and one transversal per base point.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Bsgs {
    degree: usize,
    generators: Vec<Perm>,
    #[serde(skip)]
    inverses: Vec<Perm>,
    levels: Vec<Level>,
}

impl Bsgs {
    pub(crate) fn empty(degree: usize) -> Self {
        Bsgs { degree, generators: Vec::new(), inverses: Vec::new(), levels: Vec::new() }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn base(&self) -> Vec<u32> {
        self.levels.iter().map(|l| l.point).collect()
    }

    pub fn strong_generators(&self) -> &[Perm] {
        &self.generators
    }

    pub fn levels(&self) -> &[Level] {
        &self.levels
    }

    pub fn orbit_sizes(&self) -> Vec<u64> {
        self.levels.iter().map(|l| l.orbit.len() as u64).collect()
    }

    /// Rebuilds the inverse cache, e.g. after deserializing.
    pub fn restore(mut self) -> Self {
        self.inverses = self.generators.iter().map(Perm::inverse).collect();
        self
    }

    pub(crate) fn push_generator(&mut self, g: Perm) -> u32 {
        self.inverses.push(g.inverse());
        self.generators.push(g);
        (self.generators.len() - 1) as u32
    }

    pub(crate) fn push_level(&mut self, point: u32) -> usize {
        self.levels.push(Level::new(point, self.degree));
        self.levels.len() - 1
    }

    pub(crate) fn level_mut(&mut self, i: usize) -> &mut Level {
        &mut self.levels[i]
    }

    /// Adds every image of the current orbit under generator `k` at level
    /// `i`, recording `k` as the Schreier label. Used when the new orbit is
    /// known to be the union of the old one and its image.
    pub(crate) fn double_orbit(&mut self, i: usize, k: u32) {
        let g = &self.generators[k as usize];
        let level = &mut self.levels[i];
        level.gens.push(k);
        let old = level.orbit.len();
        for idx in 0..old {
            let x = g.apply(level.orbit[idx]);
            if level.label[x as usize] == UNSEEN {
                level.label[x as usize] = k as i32;
                level.orbit.push(x);
            }
        }
    }

    /// Recomputes the orbit of level `i` from its generators.
    fn recompute_orbit(&mut self, i: usize) {
        let degree = self.degree;
        let Bsgs { generators, levels, .. } = self;
        let level = &mut levels[i];
        level.label = vec![UNSEEN; degree];
        level.label[level.point as usize] = ROOT;
        level.orbit = vec![level.point];
        let mut head = 0;
        while head < level.orbit.len() {
            let x = level.orbit[head];
            head += 1;
            for &k in &level.gens {
                let y = generators[k as usize].apply(x);
                if level.label[y as usize] == UNSEEN {
                    level.label[y as usize] = k as i32;
                    level.orbit.push(y);
                }
            }
        }
    }

    /// Multiplies `g` on the right by the inverse of the coset
    /// representative of level `i` sending the base point to its image
    /// under `g`. Returns false, leaving `g` alone, when that image is
    /// outside the orbit.
    pub(crate) fn strip_level(&self, i: usize, g: &mut Perm) -> bool {
        let level = &self.levels[i];
        let mut x = g.apply(level.point);
        if level.label[x as usize] == UNSEEN {
            return false;
        }
        while x != level.point {
            let k = level.label[x as usize] as usize;
            let inv = &self.inverses[k];
            g.then_assign(inv);
            x = inv.apply(x);
        }
        true
    }

    /// The coset representative of level `i` mapping its base point to `x`.
    fn coset_rep(&self, i: usize, mut x: u32) -> Perm {
        let level = &self.levels[i];
        let mut labels = Vec::new();
        while x != level.point {
            let k = level.label[x as usize] as usize;
            labels.push(k);
            x = self.inverses[k].apply(x);
        }
        let mut u = Perm::identity(self.degree);
        for &k in labels.iter().rev() {
            u.then_assign(&self.generators[k]);
        }
        u
    }

    /// Sifts from level `start`; returns the residue and the level where
    /// sifting stopped (`levels().len()` if it passed every level).
    pub(crate) fn sift_from(&self, mut g: Perm, start: usize) -> (Perm, usize) {
        for i in start..self.levels.len() {
            if !self.strip_level(i, &mut g) {
                return (g, i);
            }
        }
        let depth = self.levels.len();
        (g, depth)
    }

    /// The residue of `g` after sifting through the whole chain; the
    /// identity exactly when `g` lies in the group.
    pub fn sift(&self, g: &Perm) -> Result<Perm> {
        if g.degree() != self.degree {
            return Err(Error::DomainMismatch { left: self.degree, right: g.degree() });
        }
        Ok(self.sift_from(g.clone(), 0).0)
    }

    pub fn contains(&self, g: &Perm) -> Result<bool> {
        Ok(self.sift(g)?.is_identity())
    }

    /// Structural self-test: every strong generator sifts to the identity,
    /// each level's generators fix the earlier base points, and each
    /// Schreier vector is consistent with its orbit.
    pub fn self_check(&self) -> bool {
        let base = self.base();
        for (i, level) in self.levels.iter().enumerate() {
            for &k in &level.gens {
                let g = &self.generators[k as usize];
                if base[..i].iter().any(|&b| g.apply(b) != b) {
                    return false;
                }
            }
            let in_orbit = level.label.iter().filter(|&&l| l != UNSEEN).count();
            if in_orbit != level.orbit.len() {
                return false;
            }
            for &x in &level.orbit {
                if self.coset_rep(i, x).apply(level.point) != x {
                    return false;
                }
            }
        }
        self.generators.iter().all(|g| self.sift_from(g.clone(), 0).0.is_identity())
    }
}

/// Deterministic Schreier–Sims. Base points are taken in natural order: a
/// new base point is the smallest point moved by the element that forced it.
pub fn build_bsgs_classic(gens: &[Perm]) -> Result<Bsgs> {
    let degree = common_degree(gens)?;
    let mut b = Bsgs::empty(degree);
    for g in gens {
        if !g.is_identity() && !b.generators.contains(g) {
            b.push_generator(g.clone());
        }
    }
    // initial base: every generator moves some base point
    for k in 0..b.generators.len() {
        let g = b.generators[k].clone();
        if b.levels.iter().all(|l| g.apply(l.point) == l.point) {
            b.push_level(g.first_moved_point().expect("identity generators were dropped"));
        }
    }
    let base = b.base();
    for i in 0..b.levels.len() {
        b.levels[i].gens = (0..b.generators.len() as u32)
            .filter(|&k| base[..i].iter().all(|&p| b.generators[k as usize].apply(p) == p))
            .collect();
        b.recompute_orbit(i);
    }

    let mut i = b.levels.len();
    while i > 0 {
        let li = i - 1;
        match first_failing_schreier_generator(&b, li) {
            None => i -= 1,
            Some((residue, j)) => {
                if j == b.levels.len() {
                    b.push_level(residue.first_moved_point().expect("residue is not the identity"));
                }
                let k = b.push_generator(residue);
                for l in li + 1..=j {
                    b.levels[l].gens.push(k);
                    b.recompute_orbit(l);
                }
                i = j + 1;
            }
        }
    }
    Ok(b)
}

/// Finds a Schreier generator of level `li` that does not sift through the
/// levels below it.
fn first_failing_schreier_generator(b: &Bsgs, li: usize) -> Option<(Perm, usize)> {
    let level = &b.levels[li];
    for &x in &level.orbit {
        let ux = b.coset_rep(li, x);
        for &k in &level.gens {
            let mut h = ux.then_unchecked(&b.generators[k as usize]);
            let stripped = b.strip_level(li, &mut h);
            debug_assert!(stripped, "orbit is closed under its generators");
            if h.is_identity() {
                continue;
            }
            let (residue, j) = b.sift_from(h, li + 1);
            if !residue.is_identity() {
                return Some((residue, j));
            }
        }
    }
    None
}

pub(crate) fn common_degree(gens: &[Perm]) -> Result<usize> {
    let degree = gens.first().map_or(0, Perm::degree);
    for g in gens {
        if g.degree() != degree {
            return Err(Error::DomainMismatch { left: degree, right: g.degree() });
        }
    }
    Ok(degree)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn order_log2(b: &Bsgs) -> f64 {
        b.orbit_sizes().iter().map(|&s| (s as f64).log2()).sum()
    }

    fn order(b: &Bsgs) -> u64 {
        b.orbit_sizes().iter().product()
    }

    #[test]
    fn trivial_and_cyclic() {
        let id = Perm::identity(8);
        let b = build_bsgs_classic(std::slice::from_ref(&id)).unwrap();
        assert_eq!(order(&b), 1);
        assert!(b.contains(&id).unwrap());
        let c = Perm::from_cycles(8, &[&[0, 1, 2, 3]]).unwrap();
        let b = build_bsgs_classic(std::slice::from_ref(&c)).unwrap();
        assert_eq!(order_log2(&b), 2.0);
        assert!(b.self_check());
        assert!(b.contains(&c.then(&c).unwrap()).unwrap());
        assert!(!b.contains(&Perm::from_cycles(8, &[&[0, 1]]).unwrap()).unwrap());
    }

    #[test]
    fn symmetric_and_alternating() {
        let s = Perm::from_cycles(6, &[&[0, 1, 2, 3, 4, 5]]).unwrap();
        let t = Perm::from_cycles(6, &[&[0, 1]]).unwrap();
        let b = build_bsgs_classic(&[s, t]).unwrap();
        assert_eq!(order(&b), 720);
        assert!(b.self_check());
        let a = build_bsgs_classic(&[
            Perm::from_cycles(5, &[&[0, 1, 2]]).unwrap(),
            Perm::from_cycles(5, &[&[2, 3, 4]]).unwrap(),
        ])
        .unwrap();
        assert_eq!(order(&a), 60);
        assert!(!a.contains(&Perm::from_cycles(5, &[&[0, 1]]).unwrap()).unwrap());
    }

    #[test]
    fn known_orders() {
        // dihedral group of the square
        let r = Perm::from_cycles(4, &[&[0, 1, 2, 3]]).unwrap();
        let m = Perm::from_cycles(4, &[&[1, 3]]).unwrap();
        assert_eq!(order(&build_bsgs_classic(&[r, m]).unwrap()), 8);
        // Mathieu group M11 on 11 points
        let a = Perm::from_cycles(11, &[&[0, 1, 2, 3, 4, 5, 6, 7, 8, 9, 10]]).unwrap();
        let b = Perm::from_cycles(11, &[&[2, 6, 10, 7], &[3, 9, 4, 5]]).unwrap();
        let m11 = build_bsgs_classic(&[a, b]).unwrap();
        assert_eq!(order(&m11), 7920);
        assert!(m11.self_check());
    }

    #[test]
    fn mismatched_degrees() {
        let err = build_bsgs_classic(&[Perm::identity(3), Perm::identity(4)]).unwrap_err();
        assert_eq!(err, Error::DomainMismatch { left: 3, right: 4 });
        let b = build_bsgs_classic(&[Perm::identity(3)]).unwrap();
        assert!(b.sift(&Perm::identity(4)).is_err());
    }

    #[test]
    fn serialization_is_deterministic() {
        let s = Perm::from_cycles(6, &[&[0, 1, 2, 3, 4, 5]]).unwrap();
        let t = Perm::from_cycles(6, &[&[0, 1]]).unwrap();
        let one = build_bsgs_classic(&[s.clone(), t.clone()]).unwrap();
        let two = build_bsgs_classic(&[s, t]).unwrap();
        assert_eq!(serde_json::to_string(&one).unwrap(), serde_json::to_string(&two).unwrap());
        let back: Bsgs = serde_json::from_str::<Bsgs>(&serde_json::to_string(&one).unwrap()).unwrap().restore();
        assert_eq!(back, one);
    }
}
