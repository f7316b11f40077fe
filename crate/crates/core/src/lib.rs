//! Finite semigroup toolkit: action pairs of monoids on semigroups,
//! semidirect and wreath products, left restriction structure, and
//! machine-checked monoid presentations.

pub mod actionpair;
pub mod fmonoid;
pub mod freelrm;
pub mod indalg;
pub mod presentations;
pub mod ptrans;
pub mod wreath;
