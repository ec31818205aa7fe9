//! Permutation-group orders and membership: stabilizer chains, the order of
//! the automaton group, and the comparison against the order of `J_n`.

mod bsgs;
mod conjecture;
mod pcgs;

use serde::{Deserialize, Serialize};

pub use bsgs::{build_bsgs_classic, Bsgs, Level};
pub use conjecture::{verify_conjecture, ConjectureReport, ConjectureRow, CONTAINMENT_LIMIT};

use crate::alphabet::{Alphabet, Digit};
use crate::automaton::build_table;
use crate::error::{Error, Result};
use crate::perm::Perm;

/// Largest `n` accepted by [`kn_order_exponent`] and [`verify_conjecture`].
pub const KN_CAP: u32 = 14;

/// Group order as a power of two.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrderExponent {
    /// `log2` of the order when `exact`; otherwise its ceiling.
    pub exp: u64,
    /// Every orbit in the chain had power-of-two size.
    pub exact: bool,
    /// Orbit sizes of the chain, attached when some size is not a power of
    /// two.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub factors: Vec<u64>,
}

/// Builds a stabilizer chain for the group generated by `gens`.
///
/// Generators that all preserve the binary tree on `2^n` points go through
/// the 2-group route in [`pcgs`]; anything else uses deterministic
/// Schreier–Sims.
pub fn build_bsgs(gens: &[Perm]) -> Result<Bsgs> {
    bsgs::common_degree(gens)?;
    match pcgs::as_tree_auts(gens) {
        Some(trees) => Ok(pcgs::build_bsgs_tree(&trees)),
        None => build_bsgs_classic(gens),
    }
}

pub fn sift(b: &Bsgs, g: &Perm) -> Result<Perm> {
    b.sift(g)
}

pub fn order_exponent(b: &Bsgs) -> OrderExponent {
    let sizes = b.orbit_sizes();
    if sizes.iter().all(|s| s.is_power_of_two()) {
        let exp = sizes.iter().map(|s| u64::from(s.trailing_zeros())).sum();
        return OrderExponent { exp, exact: true, factors: Vec::new() };
    }
    let log: f64 = sizes.iter().map(|&s| (s as f64).log2()).sum();
    OrderExponent { exp: log.ceil() as u64, exact: false, factors: sizes }
}

/// Order of the group generated by the automaton's two symbol permutations.
pub fn kn_order_exponent(a: &Alphabet, n: u32) -> Result<OrderExponent> {
    Ok(order_exponent(&kn_bsgs(a, n)?))
}

/// Stabilizer chain of the automaton group at depth `n`.
pub fn kn_bsgs(a: &Alphabet, n: u32) -> Result<Bsgs> {
    if n > KN_CAP {
        return Err(Error::CapExceeded { what: "group depth n", value: u64::from(n), cap: u64::from(KN_CAP) });
    }
    let table = build_table(a, n)?;
    build_bsgs(&[table.permutation(Digit::P), table.permutation(Digit::Q)])
}
