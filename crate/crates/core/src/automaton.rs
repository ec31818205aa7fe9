//! The permutation automaton driving `n`-fold run-length decoding.
//!
//! A state is a word `x_1 .. x_n` of start letters, one per decoding level.
//! Reading a symbol `s` flips `x_1` (one run was consumed at the top level)
//! and feeds the `value(s)` copies of `x_1` it decoded into the automaton on
//! `x_2 .. x_n`. Digit `i` of the image therefore depends only on digits
//! `1..=i` of the state, so states are leaves of a binary tree with `x_1`
//! at the root: leaf index bit `n - i` is the bit of `x_i` (`p` = 0).

use std::fmt::Write as _;

use crate::alphabet::{Alphabet, Digit};
use crate::error::{Error, Result};
use crate::perm::Perm;

/// Largest `n` for which [`build_table`] tabulates the automaton.
pub const TABLE_CAP: u32 = 20;

/// An automaton state: the start letter of each decoding level.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct State {
    digits: Vec<Digit>,
}

impl State {
    pub fn new(digits: Vec<Digit>) -> Self {
        State { digits }
    }

    pub fn parse(a: &Alphabet, values: &[u64]) -> Result<Self> {
        Ok(State { digits: a.digits(values)? })
    }

    /// Decodes a leaf index of the depth-`n` tree; `x_1` is the top bit.
    pub fn from_leaf(n: u32, leaf: u64) -> Self {
        assert!(n < 64, "leaf indices are limited to 63 levels");
        let digits = (0..n).map(|i| Digit::from_bit((leaf >> (n - 1 - i)) & 1 == 1)).collect();
        State { digits }
    }

    pub fn leaf_index(&self) -> u64 {
        assert!(self.digits.len() < 64, "leaf indices are limited to 63 levels");
        self.digits.iter().fold(0u64, |acc, d| (acc << 1) | u64::from(d.bit()))
    }

    pub fn n(&self) -> usize {
        self.digits.len()
    }

    pub fn digits(&self) -> &[Digit] {
        &self.digits
    }

    pub fn into_digits(self) -> Vec<Digit> {
        self.digits
    }
}

fn advance(a: &Alphabet, digits: &mut [Digit], s: Digit) {
    if let Some((first, rest)) = digits.split_first_mut() {
        let head = *first;
        *first = head.opp();
        for _ in 0..a.value(s) {
            advance(a, rest, head);
        }
    }
}

fn retreat(a: &Alphabet, digits: &mut [Digit], s: Digit) {
    if let Some((first, rest)) = digits.split_first_mut() {
        let head = first.opp();
        *first = head;
        for _ in 0..a.value(s) {
            retreat(a, rest, head);
        }
    }
}

/// Image of a state under one input symbol.
///
/// Cost is `O(max(p, q)^n)`: each level replays its decoded run one letter
/// at a time into the level below. Use [`build_table`] for whole-automaton
/// work.
pub fn step(a: &Alphabet, x: &State, s: Digit) -> State {
    let mut digits = x.digits.clone();
    advance(a, &mut digits, s);
    State { digits }
}

/// Left fold of [`step`] over a word.
pub fn step_word(a: &Alphabet, x: &State, word: &[Digit]) -> State {
    let mut digits = x.digits.clone();
    for &s in word {
        advance(a, &mut digits, s);
    }
    State { digits }
}

/// The unique state that [`step`] sends to `y` on symbol `s`.
pub fn inverse_step(a: &Alphabet, y: &State, s: Digit) -> State {
    let mut digits = y.digits.clone();
    retreat(a, &mut digits, s);
    State { digits }
}

/// The full transition table over all `2^n` leaf-encoded states.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TransitionTable {
    alphabet: Alphabet,
    n: u32,
    /// `next[bit(s)][leaf]`
    next: [Vec<u32>; 2],
}

/// Tabulates the automaton on `n` digits, `1 <= n <= TABLE_CAP`.
///
/// Built level by level: the table on `k` digits is read off the table on
/// `k - 1` digits by flipping the top digit and iterating the smaller table
/// `value(s)` times on the tail. Total cost `O(2^n * max(p, q))`.
pub fn build_table(a: &Alphabet, n: u32) -> Result<TransitionTable> {
    build_table_capped(a, n, TABLE_CAP)
}

pub fn build_table_capped(a: &Alphabet, n: u32, cap: u32) -> Result<TransitionTable> {
    if n == 0 {
        return Err(Error::TooSmall { n, min: 1 });
    }
    if n > cap {
        return Err(Error::CapExceeded { what: "automaton depth n", value: u64::from(n), cap: u64::from(cap) });
    }
    // depth 1: the single digit always flips
    let mut next: [Vec<u32>; 2] = [vec![1, 0], vec![1, 0]];
    for k in 2..=n {
        let half = 1u32 << (k - 1);
        let mut level: [Vec<u32>; 2] = [vec![0; 2 * half as usize], vec![0; 2 * half as usize]];
        for (bit, table) in level.iter_mut().enumerate() {
            let reps = a.value(Digit::from_bit(bit == 1));
            for idx in 0..2 * half {
                let head = idx >= half;
                let sub = &next[usize::from(head)];
                let mut tail = idx & (half - 1);
                for _ in 0..reps {
                    tail = sub[tail as usize];
                }
                table[idx as usize] = if head { tail } else { half | tail };
            }
        }
        next = level;
    }
    Ok(TransitionTable { alphabet: *a, n, next })
}

impl TransitionTable {
    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn states(&self) -> usize {
        1usize << self.n
    }

    #[inline]
    pub fn next_leaf(&self, leaf: u32, s: Digit) -> u32 {
        self.next[usize::from(s.bit())][leaf as usize]
    }

    pub fn next(&self, x: &State, s: Digit) -> State {
        State::from_leaf(self.n, u64::from(self.next_leaf(x.leaf_index() as u32, s)))
    }

    /// The bijection of leaf indices induced by symbol `s`.
    pub fn permutation(&self, s: Digit) -> Perm {
        Perm::from_images_unchecked(self.next[usize::from(s.bit())].clone())
    }

    /// Permutation induced by a word, composed left to right.
    pub fn word_permutation(&self, word: &[Digit]) -> Perm {
        let mut perm = Perm::identity(self.states());
        for &s in word {
            perm.then_assign(&self.permutation(s));
        }
        perm
    }

    /// Graphviz rendering: one node per state named by its digit string,
    /// one edge per (state, symbol) labelled by the symbol's value.
    pub fn to_dot(&self) -> String {
        let a = &self.alphabet;
        let name = |leaf: u32| a.format_word(State::from_leaf(self.n, u64::from(leaf)).digits());
        let mut out = String::new();
        let _ = writeln!(out, "digraph \"A_{}^{{{},{}}}\" {{", self.n, a.p(), a.q());
        let _ = writeln!(out, "  node [shape=box];");
        for leaf in 0..self.states() as u32 {
            let _ = writeln!(out, "  \"{}\";", name(leaf));
        }
        for leaf in 0..self.states() as u32 {
            for s in [Digit::P, Digit::Q] {
                let _ = writeln!(
                    out,
                    "  \"{}\" -> \"{}\" [label=\"{}\"];",
                    name(leaf),
                    name(self.next_leaf(leaf, s)),
                    a.value(s)
                );
            }
        }
        out.push_str("}\n");
        out
    }
}

/// Permutation of leaf indices induced by symbol `s` on `n` digits.
pub fn symbol_permutation(a: &Alphabet, n: u32, s: Digit) -> Result<Perm> {
    Ok(build_table(a, n)?.permutation(s))
}
