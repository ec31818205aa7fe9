//! Cycle structure of the automaton's action on a whole input word, the
//! maximal-orbit criterion for odd `n`, and exhaustive sweeps over words.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::alphabet::{Alphabet, Digit};
use crate::automaton::{build_table, TransitionTable, TABLE_CAP};
use crate::budget::WorkBudget;
use crate::error::{Error, Result};
use crate::jn::psi;
use crate::perm::{format_cycle_type, CycleType, Perm};
use crate::tree::TreeAut;

/// The longest possible cycle, `2^ceil(n/2)`.
pub fn max_orbit_len(n: u32) -> u64 {
    1 << n.div_ceil(2)
}

/// `|word|` odd and the sum of its letters odd.
pub fn theorem3_predicate(a: &Alphabet, word: &[Digit]) -> bool {
    word.len() % 2 == 1 && a.sum(word) % 2 == 1
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrbitReport {
    pub word: Vec<u32>,
    pub n: u32,
    /// Cycle length to multiplicity, fixed points included.
    pub cycle_type: CycleType,
    pub max_len: u64,
    /// Number of cycles of length `max_len`.
    pub max_count: usize,
    pub predicate: bool,
}

impl OrbitReport {
    fn new(a: &Alphabet, n: u32, word: &[Digit], perm: &Perm) -> Self {
        let cycle_type = perm.cycle_type();
        let max_len = max_orbit_len(n);
        let max_count = cycle_type.get(&(max_len as usize)).copied().unwrap_or(0);
        OrbitReport { word: a.values(word), n, cycle_type, max_len, max_count, predicate: theorem3_predicate(a, word) }
    }

    /// Every cycle length is a power of two.
    pub fn lengths_are_powers_of_two(&self) -> bool {
        self.cycle_type.keys().all(|l| l.is_power_of_two())
    }

    /// No cycle is longer than `max_len`.
    pub fn within_bound(&self) -> bool {
        self.cycle_type.keys().all(|&l| l as u64 <= self.max_len)
    }

    /// For odd `n`: two maximal cycles when the predicate holds, none
    /// otherwise. `None` for even `n`, where nothing is claimed.
    pub fn agrees(&self) -> Option<bool> {
        (self.n % 2 == 1).then_some({
            if self.predicate {
                self.max_count == 2
            } else {
                self.max_count == 0
            }
        })
    }

    pub fn cycle_type_string(&self) -> String {
        format_cycle_type(&self.cycle_type)
    }
}

/// Cycle decomposition of the permutation a word induces on all `2^n`
/// states.
pub fn cycle_structure(a: &Alphabet, n: u32, word: &[Digit]) -> Result<OrbitReport> {
    if word.is_empty() {
        return Err(Error::EmptyWord);
    }
    let table = build_table(a, n)?;
    Ok(OrbitReport::new(a, n, word, &table.word_permutation(word)))
}

/// One word of a sweep.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweepRow {
    pub word: String,
    pub length: usize,
    pub sum_odd: bool,
    pub max_count: usize,
    pub predicate: bool,
    /// `None` for even `n`.
    pub agree: Option<bool>,
    pub powers_of_two: bool,
    pub within_bound: bool,
}

impl SweepRow {
    fn new(a: &Alphabet, word: &[Digit], report: &OrbitReport) -> Self {
        SweepRow {
            word: a.format_word(word),
            length: word.len(),
            sum_odd: a.sum(word) % 2 == 1,
            max_count: report.max_count,
            predicate: report.predicate,
            agree: report.agrees(),
            powers_of_two: report.lengths_are_powers_of_two(),
            within_bound: report.within_bound(),
        }
    }

    /// Breaks a proven law or the criterion.
    pub fn is_counterexample(&self) -> bool {
        !self.powers_of_two || !self.within_bound || self.agree == Some(false)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweepReport {
    pub p: u32,
    pub q: u32,
    pub n: u32,
    pub max_word_len: usize,
    pub words_checked: u64,
    /// Whether the maximal-orbit criterion was asserted (odd `n` only).
    pub asserted: bool,
    pub counterexamples: Vec<SweepRow>,
    /// Every word, shortest first, then in letter order with `p` before `q`.
    pub rows: Vec<SweepRow>,
}

impl SweepReport {
    pub fn passed(&self) -> bool {
        self.counterexamples.is_empty()
    }
}

/// Largest word length a sweep accepts; the sweep visits `2^(len+1) - 2`
/// words.
pub const SWEEP_WORD_CAP: usize = 24;

/// Checks the maximal-orbit criterion on every nonempty word of length at
/// most `max_word_len`, for odd `n >= 3`. Charges `2^n` units per word to
/// the budget before starting.
pub fn verify_theorem3(a: &Alphabet, n: u32, max_word_len: usize, budget: &WorkBudget) -> Result<SweepReport> {
    if n.is_multiple_of(2) {
        return Err(Error::EvenN { n });
    }
    if n < 3 {
        return Err(Error::TooSmall { n, min: 3 });
    }
    sweep(a, n, max_word_len, budget, true)
}

/// Tabulates maximal-orbit counts against the predicate for any `n`,
/// without asserting the criterion. Laws that hold for every `n` are still
/// checked.
pub fn tabulate_orbits(a: &Alphabet, n: u32, max_word_len: usize, budget: &WorkBudget) -> Result<SweepReport> {
    sweep(a, n, max_word_len, budget, false)
}

fn sweep(a: &Alphabet, n: u32, max_word_len: usize, budget: &WorkBudget, asserted: bool) -> Result<SweepReport> {
    if max_word_len > SWEEP_WORD_CAP {
        return Err(Error::CapExceeded {
            what: "sweep word length",
            value: max_word_len as u64,
            cap: SWEEP_WORD_CAP as u64,
        });
    }
    if n > TABLE_CAP {
        return Err(Error::CapExceeded { what: "automaton depth n", value: u64::from(n), cap: u64::from(TABLE_CAP) });
    }
    let words = (1u64 << (max_word_len + 1)) - 2;
    budget.charge(words.saturating_mul(1 << n))?;
    let table = build_table(a, n)?;
    let symbols = [table.permutation(Digit::P), table.permutation(Digit::Q)];

    // words up to `split` letters are handled directly; longer ones are
    // grouped by their first `split` letters, one task per group
    let split = max_word_len.min(6);
    let mut rows = Vec::new();
    let direct = if max_word_len == split { split } else { split - 1 };
    for len in 1..=direct {
        for w in words_of_len(len) {
            rows.push(row_for(a, n, &table, &w));
        }
    }
    if max_word_len > split {
        // prefixes of length `split` are expanded in parallel
        let prefixes: Vec<Vec<Digit>> = words_of_len(split).collect();
        let longer: Vec<Vec<(Vec<Digit>, SweepRow)>> = prefixes
            .par_iter()
            .map(|prefix| {
                let mut out = vec![(prefix.clone(), row_for(a, n, &table, prefix))];
                let mut word = prefix.clone();
                let start = table.word_permutation(prefix);
                descend(a, n, &symbols, &mut word, &start, max_word_len, &mut out);
                out
            })
            .collect();
        let mut longer: Vec<(Vec<Digit>, SweepRow)> = longer.into_iter().flatten().collect();
        longer.sort_by(|(x, _), (y, _)| x.len().cmp(&y.len()).then_with(|| x.cmp(y)));
        rows.extend(longer.into_iter().map(|(_, r)| r));
    }
    Ok(finish(a, n, max_word_len, asserted, rows))
}

/// Runs the sweep checks on an explicit list of words, such as a random
/// sample. The criterion is asserted only for odd `n >= 3`. Charges `2^n`
/// units per letter.
pub fn check_words(a: &Alphabet, n: u32, words: &[Vec<Digit>], budget: &WorkBudget) -> Result<SweepReport> {
    if words.iter().any(Vec::is_empty) {
        return Err(Error::EmptyWord);
    }
    if n > TABLE_CAP {
        return Err(Error::CapExceeded { what: "automaton depth n", value: u64::from(n), cap: u64::from(TABLE_CAP) });
    }
    let letters: u64 = words.iter().map(|w| w.len() as u64).sum();
    budget.charge(letters.saturating_mul(1 << n))?;
    let table = build_table(a, n)?;
    let rows: Vec<SweepRow> = words.par_iter().map(|w| row_for(a, n, &table, w)).collect();
    let max_word_len = words.iter().map(Vec::len).max().unwrap_or(0);
    Ok(finish(a, n, max_word_len, n % 2 == 1 && n >= 3, rows))
}

fn finish(a: &Alphabet, n: u32, max_word_len: usize, asserted: bool, mut rows: Vec<SweepRow>) -> SweepReport {
    if !asserted {
        for r in rows.iter_mut() {
            r.agree = None;
        }
    }
    let counterexamples = rows.iter().filter(|r| r.is_counterexample()).cloned().collect();
    SweepReport {
        p: a.p(),
        q: a.q(),
        n,
        max_word_len,
        words_checked: rows.len() as u64,
        asserted,
        counterexamples,
        rows,
    }
}

fn row_for(a: &Alphabet, n: u32, table: &TransitionTable, word: &[Digit]) -> SweepRow {
    SweepRow::new(a, word, &OrbitReport::new(a, n, word, &table.word_permutation(word)))
}

fn descend(
    a: &Alphabet,
    n: u32,
    symbols: &[Perm; 2],
    word: &mut Vec<Digit>,
    perm: &Perm,
    max_len: usize,
    out: &mut Vec<(Vec<Digit>, SweepRow)>,
) {
    if word.len() == max_len {
        return;
    }
    for (bit, s) in [Digit::P, Digit::Q].into_iter().enumerate() {
        let next = perm.then_unchecked(&symbols[bit]);
        word.push(s);
        out.push((word.clone(), SweepRow::new(a, word, &OrbitReport::new(a, n, word, &next))));
        descend(a, n, symbols, word, &next, max_len, out);
        word.pop();
    }
}

/// All words of one length, `p` before `q` letter by letter.
fn words_of_len(len: usize) -> impl Iterator<Item = Vec<Digit>> {
    (0u64..1 << len).map(move |m| (0..len).map(|i| Digit::from_bit((m >> (len - 1 - i)) & 1 == 1)).collect())
}

/// The group form of the criterion: `psi(g)` odd and a root flip. Only
/// stated for odd `n`.
pub fn group_level_criterion(a: &Alphabet, g: &TreeAut) -> Result<bool> {
    if g.n().is_multiple_of(2) {
        return Err(Error::EvenN { n: g.n() });
    }
    let value = psi(a, g)?;
    Ok(value.is_odd() && g.g_f())
}

/// How the cycles of `g` relate to those of `g^2` on the four subtrees two
/// levels down.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SquareSplitReport {
    pub n: u32,
    /// `g^2` flips neither the root nor either child.
    pub top_flips_clear: bool,
    pub cycle_type: CycleType,
    /// Combined cycle type of the four restrictions of `g^2`.
    pub restricted_cycle_type: CycleType,
    /// `cycle_type` with every cycle of length `2^v > 1` replaced by two of
    /// length `2^(v-1)`.
    pub expected_cycle_type: CycleType,
    pub holds: bool,
}

/// For a member `g` of `J_n`, `n >= 3`: `g^2` fixes the top two levels, and
/// its four depth-2 restrictions carry exactly the halved cycles of `g`.
pub fn square_split_check(a: &Alphabet, g: &TreeAut) -> Result<SquareSplitReport> {
    let n = g.n();
    if n < 3 {
        return Err(Error::TooSmall { n, min: 3 });
    }
    psi(a, g)?;
    let square = g.mul(g)?;
    let top_flips_clear = !(square.flip(1) || square.flip(2) || square.flip(3));
    let cycle_type = g.to_permutation().cycle_type();
    let mut expected = CycleType::new();
    for (&len, &m) in &cycle_type {
        if len == 1 {
            *expected.entry(1).or_insert(0) += m;
        } else {
            *expected.entry(len / 2).or_insert(0) += 2 * m;
        }
    }
    let mut restricted = CycleType::new();
    if top_flips_clear {
        for path in [[false, false], [false, true], [true, false], [true, true]] {
            let part = square.restrict(&path)?;
            for (len, m) in part.to_permutation().cycle_type() {
                *restricted.entry(len).or_insert(0) += m;
            }
        }
    }
    let holds = top_flips_clear && restricted == expected;
    Ok(SquareSplitReport {
        n,
        top_flips_clear,
        cycle_type,
        restricted_cycle_type: restricted,
        expected_cycle_type: expected,
        holds,
    })
}
