//! Automorphisms of the binary tree with `2^n` leaves, stored as portraits.
//!
//! A portrait holds one flip bit per internal node, heap-indexed: node 1 is
//! the root and node `i` has children `2i` (left, bit 0) and `2i + 1`
//! (right, bit 1). An element reads as the triple `(f, L, R)` of its root
//! flip and the sections at its two children, and multiplies by
//!
//! ```text
//! (f, A, B)(g, C, D) = (f + g, AC, BD)   if f = 0
//!                      (f + g, AD, BC)   if f = 1
//! ```
//!
//! That rule is a right action: `gh` applies `g` first, then `h`, so
//! `to_permutation(g.mul(h)) == to_permutation(g).then(to_permutation(h))`.

use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::perm::Perm;

/// Largest supported depth parameter.
pub const MAX_DEPTH: u32 = 26;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct TreeAut {
    n: u32,
    /// Bit `i` is the flip at heap node `i`; bit 0 is unused.
    bits: Vec<u64>,
}

fn words_for(n: u32) -> usize {
    (1usize << n).div_ceil(64)
}

#[inline]
fn depth_of(node: usize) -> u32 {
    usize::BITS - 1 - node.leading_zeros()
}

impl TreeAut {
    /// The identity of the tree with `2^n` leaves.
    pub fn identity(n: u32) -> Self {
        assert!((1..=MAX_DEPTH).contains(&n), "depth parameter {n} outside 1..={MAX_DEPTH}");
        TreeAut { n, bits: vec![0; words_for(n)] }
    }

    /// The element flipping only the root.
    pub fn root_flip(n: u32) -> Self {
        let mut g = TreeAut::identity(n);
        g.set_flip(1, true);
        g
    }

    /// Builds `(f, left, right)`.
    pub fn from_parts(f: bool, left: &TreeAut, right: &TreeAut) -> Result<Self> {
        if left.n != right.n {
            return Err(Error::DepthMismatch { left: left.n, right: right.n });
        }
        let mut g = TreeAut::identity(left.n + 1);
        g.set_flip(1, f);
        for (side, child) in [(0usize, left), (1usize, right)] {
            for node in child.ones() {
                let d = depth_of(node);
                let offset = node - (1 << d);
                g.set_flip(((2 + side) << d) + offset, true);
            }
        }
        Ok(g)
    }

    /// Builds an element from its flip bits listed in heap order
    /// (`bits[0]` is the root).
    pub fn from_flips(n: u32, flips: &[bool]) -> Result<Self> {
        let expected = (1usize << n) - 1;
        if flips.len() != expected {
            return Err(Error::MalformedPortrait(format!(
                "expected {expected} flip bits for n = {n}, got {}",
                flips.len()
            )));
        }
        let mut g = TreeAut::identity(n);
        for (i, &b) in flips.iter().enumerate() {
            g.set_flip(i + 1, b);
        }
        Ok(g)
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn leaves(&self) -> usize {
        1 << self.n
    }

    /// Number of internal nodes, `2^n - 1`.
    pub fn internal_nodes(&self) -> usize {
        (1 << self.n) - 1
    }

    #[inline]
    pub fn flip(&self, node: usize) -> bool {
        debug_assert!(node >= 1 && node < self.leaves());
        (self.bits[node >> 6] >> (node & 63)) & 1 == 1
    }

    #[inline]
    pub(crate) fn set_flip(&mut self, node: usize, value: bool) {
        let mask = 1u64 << (node & 63);
        if value {
            self.bits[node >> 6] |= mask;
        } else {
            self.bits[node >> 6] &= !mask;
        }
    }

    pub fn is_identity(&self) -> bool {
        self.bits.iter().all(|&w| w == 0)
    }

    /// Heap indices of all nodes with flip bit set, ascending.
    pub fn ones(&self) -> impl Iterator<Item = usize> + '_ {
        self.bits.iter().enumerate().flat_map(|(wi, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    return None;
                }
                let b = w.trailing_zeros() as usize;
                w &= w - 1;
                Some(wi * 64 + b)
            })
        })
    }

    /// Lowest heap index with flip bit set. Its depth is the first tree
    /// level on which the element acts non-trivially.
    pub fn first_flip(&self) -> Option<usize> {
        self.bits.iter().enumerate().find(|(_, &w)| w != 0).map(|(i, &w)| i * 64 + w.trailing_zeros() as usize)
    }

    /// Root view `(f, L, R)` without copying.
    pub fn view(&self) -> Node<'_> {
        Node { aut: self, index: 1, n: self.n }
    }

    pub fn g_f(&self) -> bool {
        self.flip(1)
    }

    pub fn g_l(&self) -> Option<Node<'_>> {
        self.view().left()
    }

    pub fn g_r(&self) -> Option<Node<'_>> {
        self.view().right()
    }

    fn check_same(&self, other: &TreeAut) -> Result<()> {
        if self.n != other.n {
            return Err(Error::DepthMismatch { left: self.n, right: other.n });
        }
        Ok(())
    }

    /// Product `self * other` under the wreath rule.
    pub fn mul(&self, other: &TreeAut) -> Result<TreeAut> {
        self.check_same(other)?;
        Ok(self.mul_unchecked(other))
    }

    pub(crate) fn mul_unchecked(&self, other: &TreeAut) -> TreeAut {
        let mut out = TreeAut { n: self.n, bits: vec![0; self.bits.len()] };
        let mut image = Vec::new();
        self.mul_into(other, &mut out, &mut image);
        out
    }

    /// `(gh)` has flip `g(u) + h(u^g)` at node `u`, where `u^g` is the node
    /// `g` moves `u` to.
    ///
    /// Levels of at least 64 nodes are handled a word at a time: reading
    /// `h` at `u^g` across a whole level is a sequence of half-block swaps,
    /// one per flipped node above the level, shallowest first.
    pub(crate) fn mul_into(&self, other: &TreeAut, out: &mut TreeAut, image: &mut Vec<u32>) {
        let small = self.leaves().min(64);
        image.clear();
        image.resize(small, 0);
        out.bits[0] = 0;
        for u in 1..small {
            let iu = if u == 1 {
                1
            } else {
                let parent = u >> 1;
                (image[parent] << 1) | ((u & 1) as u32 ^ u32::from(self.flip(parent)))
            };
            image[u] = iu;
            if self.flip(u) ^ other.flip(iu as usize) {
                out.bits[0] |= 1u64 << u;
            }
        }
        // g fixes every node down to the depth of its first flip
        let top = self.first_flip().map_or(self.n, depth_of);
        for k in 6..self.n {
            let lo = (1usize << k) / 64;
            let hi = lo * 2;
            out.bits[lo..hi].copy_from_slice(&other.bits[lo..hi]);
            for j in top..k {
                self.swap_halves(j, k, &mut out.bits[lo..hi]);
            }
            for w in lo..hi {
                out.bits[w] ^= self.bits[w];
            }
        }
    }

    /// Within `level` (the words of tree level `k`), swaps the two halves of
    /// the block below every flipped node at depth `j < k`.
    fn swap_halves(&self, j: u32, k: u32, level: &mut [u64]) {
        let half = 1usize << (k - j - 1);
        let first = 1usize << j;
        let count = first;
        if half >= 64 {
            let hw = half / 64;
            for t in self.ones_in(first, count) {
                let base = 2 * hw * t;
                let (a, b) = level[base..base + 2 * hw].split_at_mut(hw);
                a.swap_with_slice(b);
            }
            return;
        }
        // several blocks per word: a masked delta swap
        let per_word = 64 / (2 * half);
        let low = (1u64 << half) - 1;
        for (w, word) in level.iter_mut().enumerate() {
            let mut flips = self.bits_at(first + w * per_word, per_word);
            if flips == 0 {
                continue;
            }
            let mut mask = 0u64;
            while flips != 0 {
                let i = flips.trailing_zeros() as usize;
                mask |= low << (2 * half * i);
                flips &= flips - 1;
            }
            let x = ((*word >> half) ^ *word) & mask;
            *word ^= x ^ (x << half);
        }
    }

    /// `len <= 64` consecutive flip bits starting at heap node `start`.
    #[inline]
    fn bits_at(&self, start: usize, len: usize) -> u64 {
        let (w, b) = (start / 64, start % 64);
        let mut v = self.bits[w] >> b;
        if b + len > 64 {
            v |= self.bits[w + 1] << (64 - b);
        }
        if len < 64 {
            v &= (1u64 << len) - 1;
        }
        v
    }

    /// Offsets `t` in `0..count` with the flip at node `start + t` set.
    fn ones_in(&self, start: usize, count: usize) -> impl Iterator<Item = usize> + '_ {
        (0..count.div_ceil(64)).flat_map(move |c| {
            let len = (count - 64 * c).min(64);
            let mut w = self.bits_at(start + 64 * c, len);
            std::iter::from_fn(move || {
                if w == 0 {
                    return None;
                }
                let b = w.trailing_zeros() as usize;
                w &= w - 1;
                Some(64 * c + b)
            })
        })
    }

    pub fn inverse(&self) -> TreeAut {
        let internal = self.leaves();
        let mut out = TreeAut::identity(self.n);
        let mut image = vec![0u32; internal];
        for u in 1..internal {
            let iu = if u == 1 {
                1
            } else {
                let parent = u >> 1;
                ((image[parent]) << 1) | ((u & 1) as u32 ^ u32::from(self.flip(parent)))
            };
            image[u] = iu;
            if self.flip(u) {
                out.set_flip(iu as usize, true);
            }
        }
        out
    }

    pub fn pow(&self, mut e: u64) -> TreeAut {
        let mut base = self.clone();
        let mut acc = TreeAut::identity(self.n);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul_unchecked(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul_unchecked(&base);
            }
        }
        acc
    }

    /// Commutator `g^-1 h^-1 g h`.
    pub fn commutator(&self, other: &TreeAut) -> Result<TreeAut> {
        self.check_same(other)?;
        Ok(self.inverse().mul_unchecked(&other.inverse()).mul_unchecked(self).mul_unchecked(other))
    }

    /// Image of a leaf. Walking from the root, each node's flip complements
    /// the outgoing direction bit; the walk continues into the child named
    /// by the incoming bit, whose section acts on the rest of the path.
    pub fn act_on_leaf(&self, leaf: u64) -> Result<u64> {
        let leaves = self.leaves() as u64;
        if leaf >= leaves {
            return Err(Error::LeafOutOfRange { leaf, leaves });
        }
        Ok(self.act_unchecked(leaf))
    }

    #[inline]
    fn act_unchecked(&self, leaf: u64) -> u64 {
        let mut node = 1usize;
        let mut out = 0u64;
        for d in (0..self.n).rev() {
            let b = (leaf >> d) & 1;
            out = (out << 1) | (b ^ u64::from(self.flip(node)));
            node = 2 * node + b as usize;
        }
        out
    }

    pub fn to_permutation(&self) -> Perm {
        // level by level: image of every node, then leaves are the last level
        let leaves = self.leaves();
        let mut image = vec![0u32; 2 * leaves];
        image[1] = 1;
        for u in 2..2 * leaves {
            let parent = u >> 1;
            image[u] = (image[parent] << 1) | ((u & 1) as u32 ^ u32::from(self.flip(parent)));
        }
        Perm::from_images_unchecked(image[leaves..].iter().map(|&x| x - leaves as u32).collect())
    }

    /// Recovers the portrait of a permutation of `2^n` leaves, if the
    /// permutation preserves the tree.
    pub fn from_permutation(perm: &Perm) -> Option<TreeAut> {
        let leaves = perm.degree();
        if leaves < 2 || !leaves.is_power_of_two() {
            return None;
        }
        let n = leaves.trailing_zeros();
        if n > MAX_DEPTH {
            return None;
        }
        let mut g = TreeAut::identity(n);
        for node in 1..leaves {
            let d = depth_of(node);
            // leftmost leaf below `node`
            let leaf = ((node - (1 << d)) as u64) << (n - d);
            let img = u64::from(perm.apply(leaf as u32));
            let out_bit = (img >> (n - 1 - d)) & 1;
            if out_bit == 1 {
                g.set_flip(node, true);
            }
        }
        let candidate = g.to_permutation();
        (candidate == *perm).then_some(g)
    }

    /// The section at the node reached by `path` (false = left), as an
    /// element of depth `n - path.len()`. Every node passed on the way down
    /// must have flip bit 0.
    pub fn restrict(&self, path: &[bool]) -> Result<TreeAut> {
        if path.len() >= self.n as usize {
            return Err(Error::PathTooLong { len: path.len(), n: self.n });
        }
        let mut node = 1usize;
        for (i, &b) in path.iter().enumerate() {
            if self.flip(node) {
                return Err(Error::SwappedPrefix { path: format_path(&path[..i]) });
            }
            node = 2 * node + usize::from(b);
        }
        Ok(Node { aut: self, index: node, n: self.n - path.len() as u32 }.to_owned())
    }

    /// `n:hex`, the portrait bits in heap order packed most significant bit
    /// first and zero-padded to whole bytes.
    pub fn to_hex(&self) -> String {
        let count = self.internal_nodes();
        let mut bytes = vec![0u8; count.div_ceil(8)];
        for node in self.ones() {
            let k = node - 1;
            bytes[k / 8] |= 0x80 >> (k % 8);
        }
        let mut s = format!("{}:", self.n);
        for b in bytes {
            s.push_str(&format!("{b:02x}"));
        }
        s
    }

    pub fn from_hex(text: &str) -> Result<TreeAut> {
        let bad = |msg: String| Error::MalformedPortrait(msg);
        let (n_str, hex) = text.trim().split_once(':').ok_or_else(|| bad("expected `n:hex`".into()))?;
        let n: u32 = n_str.parse().map_err(|_| bad(format!("bad depth parameter `{n_str}`")))?;
        if !(1..=MAX_DEPTH).contains(&n) {
            return Err(bad(format!("depth parameter {n} outside 1..={MAX_DEPTH}")));
        }
        let count = (1usize << n) - 1;
        let want = 2 * count.div_ceil(8);
        if hex.len() != want {
            return Err(bad(format!("expected {want} hex digits for n = {n}, got {}", hex.len())));
        }
        let mut g = TreeAut::identity(n);
        for (i, chunk) in hex.as_bytes().chunks(2).enumerate() {
            let s = std::str::from_utf8(chunk).map_err(|_| bad("non-ascii input".into()))?;
            let byte = u8::from_str_radix(s, 16).map_err(|_| bad(format!("bad hex byte `{s}`")))?;
            for j in 0..8 {
                if byte & (0x80 >> j) != 0 {
                    let k = i * 8 + j;
                    if k >= count {
                        return Err(bad("padding bits must be zero".into()));
                    }
                    g.set_flip(k + 1, true);
                }
            }
        }
        Ok(g)
    }
}

/// Renders a direction path as `L`/`R` letters; the empty path is `root`.
pub fn format_path(path: &[bool]) -> String {
    if path.is_empty() {
        return "root".to_string();
    }
    path.iter().map(|&b| if b { 'R' } else { 'L' }).collect()
}

/// Heap index to direction path.
pub fn node_path(node: usize) -> Vec<bool> {
    let d = depth_of(node);
    (0..d).rev().map(|i| (node >> i) & 1 == 1).collect()
}

impl fmt::Debug for TreeAut {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "TreeAut({})", self.to_hex())
    }
}

impl Serialize for TreeAut {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_hex())
    }
}

impl<'de> Deserialize<'de> for TreeAut {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        TreeAut::from_hex(&s).map_err(serde::de::Error::custom)
    }
}

/// A borrowed subtree of a portrait: the section at one node.
#[derive(Clone, Copy)]
pub struct Node<'a> {
    aut: &'a TreeAut,
    index: usize,
    n: u32,
}

impl<'a> Node<'a> {
    /// Depth parameter of the section.
    pub fn n(&self) -> u32 {
        self.n
    }

    /// Heap index in the parent portrait.
    pub fn index(&self) -> usize {
        self.index
    }

    pub fn flip(&self) -> bool {
        self.aut.flip(self.index)
    }

    pub fn left(&self) -> Option<Node<'a>> {
        (self.n > 1).then(|| Node { aut: self.aut, index: 2 * self.index, n: self.n - 1 })
    }

    pub fn right(&self) -> Option<Node<'a>> {
        (self.n > 1).then(|| Node { aut: self.aut, index: 2 * self.index + 1, n: self.n - 1 })
    }

    pub fn to_owned(&self) -> TreeAut {
        let mut g = TreeAut::identity(self.n);
        for j in 0..self.n {
            let first = self.index << j;
            for t in 0..1usize << j {
                if self.aut.flip(first + t) {
                    g.set_flip((1 << j) + t, true);
                }
            }
        }
        g
    }
}
