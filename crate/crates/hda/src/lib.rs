//! Higher-dimensional group theory at desk scale: groupoids, crossed modules,
//! double groupoids with connections, and the combinatorics around them.

pub mod cell;
pub mod colimit;
pub mod double;
pub mod equivalence;
pub mod coset;
pub mod finite;
pub mod fox;
pub mod groupoid;
pub mod presentation;
pub mod rewrite;
pub mod ring;
pub mod word;
pub mod xmod;
