//! Free groups, automorphisms of F_{n,k}, the symbolic generators of the Torelli
//! kernel, its substitution system, twisted bilinear maps and the group extensions
//! they define.

pub mod fgword;
pub mod fgmap;
pub mod glsemi;
pub mod symgen;
pub mod lpres;
pub mod sample;
pub mod twisted;
pub mod extend;

pub use fgmap::{Endo, MapError, NamedAut};
pub use fgword::{Basis, Gen, Letter, Word, WordError};
