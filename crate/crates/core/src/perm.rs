//! Permutations of `0..degree`.
//!
//! Composition is left to right: `a.then(&b)` first applies `a`, then `b`.
//! This matches how input words drive the automaton (the first symbol acts
//! first) and how tree automorphisms multiply.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Perm {
    images: Vec<u32>,
}

/// Cycle type as `length -> multiplicity`.
pub type CycleType = BTreeMap<usize, usize>;

impl Perm {
    pub fn identity(degree: usize) -> Self {
        Perm { images: (0..degree as u32).collect() }
    }

    /// Validates that `images` is a bijection of `0..images.len()`.
    pub fn from_images(images: Vec<u32>) -> Result<Self> {
        let mut seen = vec![false; images.len()];
        for (i, &x) in images.iter().enumerate() {
            let x = x as usize;
            if x >= images.len() {
                return Err(Error::InvalidPermutation(format!(
                    "image {x} of point {i} is outside the domain of size {}",
                    images.len()
                )));
            }
            if std::mem::replace(&mut seen[x], true) {
                return Err(Error::InvalidPermutation(format!("point {x} is hit twice")));
            }
        }
        Ok(Perm { images })
    }

    pub(crate) fn from_images_unchecked(images: Vec<u32>) -> Self {
        debug_assert!(Perm::from_images(images.clone()).is_ok());
        Perm { images }
    }

    /// Builds a permutation from disjoint cycles; unmentioned points are fixed.
    pub fn from_cycles(degree: usize, cycles: &[&[u32]]) -> Result<Self> {
        let mut images: Vec<u32> = (0..degree as u32).collect();
        for cycle in cycles {
            for (i, &x) in cycle.iter().enumerate() {
                let next = cycle[(i + 1) % cycle.len()];
                if x as usize >= degree || next as usize >= degree {
                    return Err(Error::InvalidPermutation(format!("point out of range in cycle {cycle:?}")));
                }
                images[x as usize] = next;
            }
        }
        Perm::from_images(images)
    }

    #[inline]
    pub fn degree(&self) -> usize {
        self.images.len()
    }

    #[inline]
    pub fn images(&self) -> &[u32] {
        &self.images
    }

    #[inline]
    pub fn apply(&self, point: u32) -> u32 {
        self.images[point as usize]
    }

    /// `self` followed by `other`.
    pub fn then(&self, other: &Perm) -> Result<Perm> {
        if self.degree() != other.degree() {
            return Err(Error::DomainMismatch { left: self.degree(), right: other.degree() });
        }
        Ok(self.then_unchecked(other))
    }

    #[inline]
    pub(crate) fn then_unchecked(&self, other: &Perm) -> Perm {
        let o = &other.images;
        Perm { images: self.images.iter().map(|&x| o[x as usize]).collect() }
    }

    /// In-place `self = self.then(other)`.
    #[inline]
    pub(crate) fn then_assign(&mut self, other: &Perm) {
        let o = &other.images;
        for x in self.images.iter_mut() {
            *x = o[*x as usize];
        }
    }

    pub fn inverse(&self) -> Perm {
        let mut inv = vec![0u32; self.degree()];
        for (i, &x) in self.images.iter().enumerate() {
            inv[x as usize] = i as u32;
        }
        Perm { images: inv }
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| i as u32 == x)
    }

    pub fn first_moved_point(&self) -> Option<u32> {
        self.images.iter().enumerate().find(|(i, &x)| *i as u32 != x).map(|(i, _)| i as u32)
    }

    /// Disjoint cycles, each starting at its smallest point, in order of that
    /// point. Fixed points are included as 1-cycles.
    pub fn cycles(&self) -> Vec<Vec<u32>> {
        let mut visited = vec![false; self.degree()];
        let mut out = Vec::new();
        for start in 0..self.degree() {
            if visited[start] {
                continue;
            }
            let mut cycle = Vec::new();
            let mut x = start;
            while !visited[x] {
                visited[x] = true;
                cycle.push(x as u32);
                x = self.images[x] as usize;
            }
            out.push(cycle);
        }
        out
    }

    /// Cycle lengths with multiplicities, fixed points included.
    pub fn cycle_type(&self) -> CycleType {
        let mut visited = vec![false; self.degree()];
        let mut out = CycleType::new();
        for start in 0..self.degree() {
            if visited[start] {
                continue;
            }
            let mut len = 0;
            let mut x = start;
            while !visited[x] {
                visited[x] = true;
                len += 1;
                x = self.images[x] as usize;
            }
            *out.entry(len).or_insert(0) += 1;
        }
        out
    }

    /// Sign parity: true when the permutation is odd.
    pub fn is_odd(&self) -> bool {
        let transpositions: usize = self.cycle_type().iter().map(|(len, m)| (len - 1) * m).sum();
        transpositions % 2 == 1
    }
}

impl fmt::Debug for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let nontrivial: Vec<_> = self.cycles().into_iter().filter(|c| c.len() > 1).collect();
        if nontrivial.is_empty() {
            return write!(f, "Perm[{}](id)", self.degree());
        }
        write!(f, "Perm[{}]", self.degree())?;
        for c in nontrivial {
            let parts: Vec<String> = c.iter().map(|x| x.to_string()).collect();
            write!(f, "({})", parts.join(" "))?;
        }
        Ok(())
    }
}

/// Renders a cycle type as `4^2 1^1`, longest cycles first.
pub fn format_cycle_type(ct: &CycleType) -> String {
    ct.iter().rev().map(|(len, m)| format!("{len}^{m}")).collect::<Vec<_>>().join(" ")
}
