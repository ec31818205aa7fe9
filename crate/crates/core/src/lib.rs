//! Iterated run-length decoding over two-letter alphabets, the automaton that
//! drives it, and the group of tree automorphisms that automaton generates.

pub mod alphabet;
pub mod automaton;
pub mod budget;
pub mod error;
pub mod group_order;
pub mod jn;
pub mod orbits;
pub mod perm;
pub mod rld;
pub mod tree;

pub use alphabet::{Alphabet, Digit};
pub use automaton::{State, TransitionTable};
pub use budget::WorkBudget;
pub use error::{Error, Result};
pub use group_order::{Bsgs, OrderExponent};
pub use jn::{DihedralElem, Residue};
pub use orbits::OrbitReport;
pub use perm::{CycleType, Perm};
pub use rld::LenSeq;
pub use tree::TreeAut;
