//! Exact and numerical machinery for Lie foliations built by suspension:
//! Lie algebra invariants and cohomology, arithmetic orthogonal groups over
//! rings of integers, density and spectral-gap diagnostics on compact
//! orthogonal groups, and first group cohomology via Fox calculus.

pub mod exactnum;
pub mod liealg;
pub mod qform;
pub mod dynamics;
pub mod groupcoh;
pub mod suspension;
