//! Order and stabilizer chains for groups of tree automorphisms.
//!
//! Such a group is a 2-group filtered by level stabilizers, and each layer of
//! the filtration embeds in a vector space over `F_2` (the flips at one
//! depth). Gaussian elimination on portraits, closed under squares and
//! commutators, yields a sequence `b_1, ..., b_k` in which every element has
//! a unique normal form `b_1^e_1 ... b_k^e_k` with `e_i` in `{0, 1}`, so the
//! order is `2^k`. Each tail `<b_i, ..., b_k>` has index 2 in the next one
//! up, which lets a leaf-based stabilizer chain be grown one element at a
//! time without Schreier generators.

use std::collections::VecDeque;

use super::bsgs::Bsgs;
use crate::perm::Perm;
use crate::tree::TreeAut;

/// An echelon basis of a subgroup of `Aut(T)`, keyed by the first flipped
/// node (in breadth-first order) of each element.
pub(crate) struct PcSequence {
    n: u32,
    elems: Vec<TreeAut>,
    inverses: Vec<TreeAut>,
    /// Index into `elems` of the element whose first flip is at each node.
    by_pivot: Vec<u32>,
}

const NONE: u32 = u32::MAX;

/// Scratch buffers for repeated products.
struct Scratch {
    tmp: TreeAut,
    image: Vec<u32>,
}

impl PcSequence {
    fn new(n: u32) -> Self {
        PcSequence { n, elems: Vec::new(), inverses: Vec::new(), by_pivot: vec![NONE; 1 << n] }
    }

    #[cfg(test)]
    pub(crate) fn len(&self) -> usize {
        self.elems.len()
    }

    /// Elements ordered by pivot, shallowest first.
    pub(crate) fn sorted(&self) -> Vec<&TreeAut> {
        self.by_pivot.iter().filter(|&&i| i != NONE).map(|&i| &self.elems[i as usize]).collect()
    }

    /// Reduces `g` against the basis; the identity means `g` is in the span.
    fn reduce(&self, g: &mut TreeAut, s: &mut Scratch) {
        while let Some(pivot) = g.first_flip() {
            let i = self.by_pivot[pivot];
            if i == NONE {
                return;
            }
            g.mul_into(&self.inverses[i as usize], &mut s.tmp, &mut s.image);
            std::mem::swap(g, &mut s.tmp);
        }
    }

    fn insert(&mut self, g: TreeAut) -> usize {
        let pivot = g.first_flip().expect("only non-identity residues are inserted");
        debug_assert_eq!(self.by_pivot[pivot], NONE);
        self.by_pivot[pivot] = self.elems.len() as u32;
        self.inverses.push(g.inverse());
        self.elems.push(g);
        self.elems.len() - 1
    }

    /// Whether `g` lies in the subgroup the basis spans.
    #[cfg(test)]
    pub(crate) fn contains(&self, g: &TreeAut) -> bool {
        let mut g = g.clone();
        let mut s = Scratch { tmp: TreeAut::identity(self.n), image: Vec::new() };
        self.reduce(&mut g, &mut s);
        g.is_identity()
    }
}

/// Closes the generators under the operations that make the echelon basis
/// a polycyclic sequence: every square and every commutator of basis
/// elements must reduce to the identity.
pub(crate) fn pc_closure(n: u32, gens: &[TreeAut]) -> PcSequence {
    let mut pc = PcSequence::new(n);
    let mut s = Scratch { tmp: TreeAut::identity(n), image: Vec::new() };
    let mut a = TreeAut::identity(n);
    let mut queue: VecDeque<TreeAut> = gens.iter().cloned().collect();
    while let Some(mut g) = queue.pop_front() {
        pc.reduce(&mut g, &mut s);
        if g.is_identity() {
            continue;
        }
        let k = pc.insert(g);
        let (new, new_inv) = (&pc.elems[k], &pc.inverses[k]);
        queue.push_back(new.mul_unchecked(new));
        for i in 0..k {
            // [b_i, new] = b_i^-1 new^-1 b_i new
            pc.inverses[i].mul_into(new_inv, &mut a, &mut s.image);
            a.mul_into(&pc.elems[i], &mut s.tmp, &mut s.image);
            s.tmp.mul_into(new, &mut a, &mut s.image);
            if !a.is_identity() {
                queue.push_back(a.clone());
            }
        }
    }
    pc
}

/// Grows a stabilizer chain from a polycyclic sequence, deepest element
/// first. Each insertion extends a group by a normal subgroup of index 2, so
/// the element's residue either doubles exactly one orbit or, having passed
/// every level, opens a new level with an orbit of size 2.
pub(crate) fn chain_from_pc(pc: &PcSequence) -> Bsgs {
    let degree = 1usize << pc.n;
    let mut b = Bsgs::empty(degree);
    for g in pc.sorted().into_iter().rev() {
        let (residue, j) = b.sift_from(g.to_permutation(), 0);
        debug_assert!(!residue.is_identity(), "a polycyclic sequence has no redundant element");
        if j == b.levels().len() {
            let point = residue.first_moved_point().expect("residue is not the identity");
            let image = residue.apply(point);
            let k = b.push_generator(residue);
            let i = b.push_level(point);
            let level = b.level_mut(i);
            level.gens.push(k);
            level.orbit.push(image);
            level.label[image as usize] = k as i32;
            for l in 0..i {
                b.level_mut(l).gens.push(k);
            }
        } else {
            let k = b.push_generator(residue);
            for l in 0..j {
                b.level_mut(l).gens.push(k);
            }
            b.double_orbit(j, k);
        }
    }
    b
}

/// Stabilizer chain for tree-preserving generators of equal depth.
pub(crate) fn build_bsgs_tree(gens: &[TreeAut]) -> Bsgs {
    let n = gens[0].n();
    let pc = pc_closure(n, gens);
    chain_from_pc(&pc)
}

/// Every permutation must preserve the binary tree on its `2^n` points.
pub(crate) fn as_tree_auts(gens: &[Perm]) -> Option<Vec<TreeAut>> {
    if gens.is_empty() {
        return None;
    }
    gens.iter().map(TreeAut::from_permutation).collect()
}
