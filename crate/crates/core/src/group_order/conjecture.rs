//! Side-by-side comparison of the automaton group's order with the order of
//! `J_n`, plus a containment check where `J_n` is small enough to list.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{kn_bsgs, order_exponent, KN_CAP};
use crate::alphabet::Alphabet;
use crate::error::{Error, Result};
use crate::jn::{enumerate_jn, generators, is_member, jn_order_exponent};

/// Largest `n` at which every element of `J_n` is sifted through the chain.
pub const CONTAINMENT_LIMIT: u32 = 6;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConjectureRow {
    pub n: u32,
    pub k_exponent: u64,
    pub j_formula_exponent: u64,
    pub equal: bool,
    pub containment_checked: bool,
    /// Every element of `J_n` lies in the automaton group and both
    /// generators lie in `J_n`. Meaningful only when checked.
    pub containment_ok: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConjectureReport {
    pub p: u32,
    pub q: u32,
    pub rows: Vec<ConjectureRow>,
}

impl ConjectureReport {
    /// Every order matched and every containment check that ran passed.
    pub fn all_agree(&self) -> bool {
        self.rows.iter().all(|r| r.equal && (!r.containment_checked || r.containment_ok))
    }

    pub fn exponents(&self) -> Vec<u64> {
        self.rows.iter().map(|r| r.k_exponent).collect()
    }
}

fn row(a: &Alphabet, n: u32) -> Result<ConjectureRow> {
    let chain = kn_bsgs(a, n)?;
    let k = order_exponent(&chain);
    let j = jn_order_exponent(n);
    let containment_checked = n <= CONTAINMENT_LIMIT;
    let containment_ok = containment_checked && {
        let (gp, gq) = generators(a, n);
        is_member(a, &gp)
            && is_member(a, &gq)
            && enumerate_jn(a, n)?.all(|g| chain.contains(&g.to_permutation()).unwrap_or(false))
    };
    Ok(ConjectureRow {
        n,
        k_exponent: k.exp,
        j_formula_exponent: j,
        equal: k.exact && k.exp == j,
        containment_checked,
        containment_ok,
    })
}

/// Rows for `n = 1..=n_max`, computed in parallel and returned in order.
pub fn verify_conjecture(a: &Alphabet, n_max: u32) -> Result<ConjectureReport> {
    if n_max > KN_CAP {
        return Err(Error::CapExceeded { what: "n_max", value: u64::from(n_max), cap: u64::from(KN_CAP) });
    }
    // largest first so the slow cells start early
    let mut rows: Vec<ConjectureRow> =
        (1..=n_max).rev().collect::<Vec<_>>().into_par_iter().map(|n| row(a, n)).collect::<Result<_>>()?;
    rows.sort_by_key(|r| r.n);
    Ok(ConjectureReport { p: a.p(), q: a.q(), rows })
}
