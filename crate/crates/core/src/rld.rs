//! Run-length decoding over a two-letter alphabet, iterated decoding, and
//! the block decomposition of an iterated decoding along an automaton walk.

use serde::{Deserialize, Serialize};

use crate::alphabet::{Alphabet, Digit};
use crate::automaton::{self, State};
use crate::error::{Error, Result};

/// A finite sequence of positive run lengths. May be empty.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<u64>", into = "Vec<u64>")]
pub struct LenSeq(Vec<u64>);

impl LenSeq {
    pub fn new(items: Vec<u64>) -> Result<Self> {
        if let Some(index) = items.iter().position(|&x| x == 0) {
            return Err(Error::ZeroRunLength { index });
        }
        Ok(LenSeq(items))
    }

    /// Run lengths given by the values of a word.
    pub fn from_digits(a: &Alphabet, digits: &[Digit]) -> Self {
        LenSeq(digits.iter().map(|&d| u64::from(a.value(d))).collect())
    }

    pub fn as_slice(&self) -> &[u64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn total(&self) -> u64 {
        self.0.iter().sum()
    }
}

impl TryFrom<Vec<u64>> for LenSeq {
    type Error = Error;

    fn try_from(v: Vec<u64>) -> Result<Self> {
        LenSeq::new(v)
    }
}

impl From<LenSeq> for Vec<u64> {
    fn from(s: LenSeq) -> Self {
        s.0
    }
}

fn decode_runs(start: Digit, runs: impl IntoIterator<Item = u64>, out: &mut Vec<Digit>) {
    let mut letter = start;
    for len in runs {
        out.extend(std::iter::repeat_n(letter, len as usize));
        letter = letter.opp();
    }
}

/// Single run-length decoding: runs of the given lengths, alternating
/// letters, beginning with `start`.
pub fn rld(_a: &Alphabet, start: Digit, lengths: &LenSeq) -> Vec<Digit> {
    let mut out = Vec::with_capacity(lengths.total() as usize);
    decode_runs(start, lengths.as_slice().iter().copied(), &mut out);
    out
}

/// Every intermediate level of an iterated decoding. Entry `i` is the
/// decoding with start letter `starts[i]` of entry `i - 1` (of `lengths` for
/// the first entry). Empty `starts` gives no levels.
pub fn rld_levels(a: &Alphabet, starts: &[Digit], lengths: &LenSeq) -> Vec<Vec<Digit>> {
    let mut levels: Vec<Vec<Digit>> = Vec::with_capacity(starts.len());
    for (i, &start) in starts.iter().enumerate() {
        let next = match levels.last() {
            None => rld(a, start, lengths),
            Some(prev) => {
                let total: u64 = prev.iter().map(|&d| u64::from(a.value(d))).sum();
                let mut out = Vec::with_capacity(total as usize);
                decode_runs(start, prev.iter().map(|&d| u64::from(a.value(d))), &mut out);
                out
            }
        };
        debug_assert_eq!(levels.len(), i);
        levels.push(next);
    }
    levels
}

/// The `n`-fold iterated decoding, `n = starts.len() >= 1`.
pub fn rld_n(a: &Alphabet, starts: &[Digit], lengths: &LenSeq) -> Result<Vec<Digit>> {
    if starts.is_empty() {
        return Err(Error::EmptySequence);
    }
    Ok(rld_levels(a, starts, lengths).pop().unwrap_or_default())
}

/// One step of the block decomposition: the automaton state the block
/// starts from, and the letters the block emits.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Block {
    pub state: State,
    pub output: Vec<Digit>,
}

/// Splits the iterated decoding of a word into one block per input symbol.
///
/// The first block starts at `starts`; each later block starts at the
/// automaton image of the previous state under the previous symbol. The
/// concatenated outputs equal `rld_n(starts, word)`.
pub fn emit_blocks(a: &Alphabet, starts: &State, word: &[Digit]) -> Vec<Block> {
    let mut blocks = Vec::with_capacity(word.len());
    let mut state = starts.clone();
    for &s in word {
        let output = rld_n(a, state.digits(), &LenSeq::from_digits(a, &[s])).expect("states have at least one digit");
        let next = automaton::step(a, &state, s);
        blocks.push(Block { state, output });
        state = next;
    }
    blocks
}

#[cfg(test)]
mod tests {
    use super::*;

    fn alpha(p: u32, q: u32) -> Alphabet {
        Alphabet::new(p, q).unwrap()
    }

    fn digits(a: &Alphabet, v: &[u64]) -> Vec<Digit> {
        a.digits(v).unwrap()
    }

    fn lens(v: &[u64]) -> LenSeq {
        LenSeq::new(v.to_vec()).unwrap()
    }

    #[test]
    fn single_decoding_example() {
        let a = alpha(3, 4);
        let out = rld(&a, a.digit(4).unwrap(), &lens(&[3, 2, 5, 1]));
        assert_eq!(a.values(&out), vec![4, 4, 4, 3, 3, 4, 4, 4, 4, 4, 3]);
        // the commonly quoted 12-letter form has a third run of six
        let six = rld(&a, a.digit(4).unwrap(), &lens(&[3, 2, 6, 1]));
        assert_eq!(a.values(&six), vec![4, 4, 4, 3, 3, 4, 4, 4, 4, 4, 4, 3]);
    }

    #[test]
    fn empty_lengths_decode_to_nothing() {
        let a = alpha(1, 2);
        assert!(rld(&a, Digit::P, &LenSeq::default()).is_empty());
        assert!(rld(&a, Digit::Q, &LenSeq::default()).is_empty());
        let levels = rld_levels(&a, &[Digit::P, Digit::Q], &LenSeq::default());
        assert_eq!(levels, vec![Vec::<Digit>::new(), Vec::new()]);
    }

    #[test]
    fn two_run_expansion() {
        let a = alpha(1, 2);
        let out = rld(&a, a.digit(2).unwrap(), &lens(&[1, 2]));
        assert_eq!(a.values(&out), vec![2, 1, 1]);
        let b = alpha(3, 2);
        let out = rld(&b, b.digit(2).unwrap(), &lens(&[1, 2]));
        assert_eq!(b.values(&out), vec![2, 3, 3]);
    }

    #[test]
    fn arbitrary_positive_run_lengths_are_allowed() {
        let a = alpha(1, 2);
        let out = rld(&a, Digit::P, &lens(&[7, 1]));
        assert_eq!(a.values(&out), vec![1, 1, 1, 1, 1, 1, 1, 2]);
        assert_eq!(LenSeq::new(vec![1, 0]), Err(Error::ZeroRunLength { index: 1 }));
    }

    #[test]
    fn three_fold_decoding_levels() {
        let a = alpha(3, 2);
        let levels = rld_levels(&a, &digits(&a, &[2, 3, 2]), &lens(&[1, 2]));
        let vals: Vec<Vec<u32>> = levels.iter().map(|l| a.values(l)).collect();
        assert_eq!(
            vals,
            vec![
                vec![2, 3, 3],
                vec![3, 3, 2, 2, 2, 3, 3, 3],
                vec![2, 2, 2, 3, 3, 3, 2, 2, 3, 3, 2, 2, 3, 3, 3, 2, 2, 2, 3, 3, 3],
            ]
        );
        let top = rld_n(&a, &digits(&a, &[2, 3, 2]), &lens(&[1, 2])).unwrap();
        assert_eq!(&top, levels.last().unwrap());
    }

    #[test]
    fn odd_alphabet_bottom_row() {
        // {1, 3} has equal parity; decoding itself does not care.
        let a = Alphabet::relaxed(1, 3);
        let out = rld_n(&a, &digits(&a, &[3, 1, 3]), &lens(&[1, 3, 1, 1])).unwrap();
        assert_eq!(a.values(&out), vec![3, 1, 3, 1, 1, 1, 3, 1, 1, 1, 3, 1, 3, 1, 1, 1]);
    }

    #[test]
    fn one_fold_is_plain_decoding() {
        let a = alpha(2, 3);
        let s = lens(&[2, 3, 3, 1]);
        assert_eq!(rld_n(&a, &[Digit::Q], &s).unwrap(), rld(&a, Digit::Q, &s));
        assert_eq!(rld_levels(&a, &[Digit::Q], &s), vec![rld(&a, Digit::Q, &s)]);
        assert_eq!(rld_n(&a, &[], &s), Err(Error::EmptySequence));
    }

    #[test]
    fn blocks_of_the_worked_example() {
        let a = alpha(1, 2);
        let start = State::new(digits(&a, &[2, 1, 2]));
        let word = digits(&a, &[1, 2, 1, 2]);
        let blocks = emit_blocks(&a, &start, &word);
        let states: Vec<String> = blocks.iter().map(|b| a.format_word(b.state.digits())).collect();
        assert_eq!(states, vec!["212", "122", "222", "112"]);
        let joined: Vec<Digit> = blocks.iter().flat_map(|b| b.output.iter().copied()).collect();
        let whole = rld_n(&a, start.digits(), &LenSeq::from_digits(&a, &word)).unwrap();
        assert_eq!(joined, whole);
        assert_eq!(a.values(&whole), vec![2, 1, 2, 2, 1, 2, 2, 1, 1, 2, 1, 1]);
    }

    #[test]
    fn single_symbol_gives_one_block() {
        let a = alpha(2, 3);
        let start = State::new(digits(&a, &[3, 2]));
        let blocks = emit_blocks(&a, &start, &[Digit::Q]);
        assert_eq!(blocks.len(), 1);
        assert_eq!(blocks[0].output, rld_n(&a, start.digits(), &LenSeq::from_digits(&a, &[Digit::Q])).unwrap());
    }
}
