pub mod automaton;
pub mod decode;
pub mod member;
pub mod orbits;
pub mod order;
pub mod sweep;
