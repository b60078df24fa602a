//! Exact homological algebra for FI-modules over a field.
//!
//! FI-modules are presented as graded modules over `A = k[t]` in the
//! category of symmetric group sequences: a representation of `S_n` in each
//! degree of a finite window, together with the `S_n`-equivariant step maps
//! given by multiplication by `t`. On top of that presentation the crate
//! computes Tor through the Koszul complex, Castelnuovo-Mumford regularity,
//! local cohomology through a shift recursion, and the invariant ν attached
//! to good ideals of `k[S_2]` and `k[S_3]`.
//!
//! The crate is `no_std` and only needs `alloc`.

#![cfg_attr(not(any(feature = "std", test)), no_std)]

extern crate alloc;

pub mod algebra;
pub mod complex;
pub mod error;
pub mod field;
pub mod fimod;
pub mod ideal;
pub mod koszul;
pub mod linalg;
pub mod loccoh;
pub mod perm;
pub mod rep;
pub mod verify;

pub use error::{Error, Result};
pub use field::{Field, PrimeField, Rationals};
pub use fimod::{FIModule, FIMorphism, MaxDeg};
pub use linalg::Matrix;
pub use perm::Permutation;
pub use rep::SnRep;
