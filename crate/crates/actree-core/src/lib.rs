//! Exact spectral analysis and continuous-time quantum walks on asymptotic
//! Cayley trees.
//!
//! An *asymptotic Cayley tree* is a finite connected core graph with a number
//! of semi-infinite (q-1)-ary planted trees grafted onto selected core
//! vertices, so that far from the core the graph looks like the Cayley tree
//! T_q. This crate computes, exactly where the mathematics is exact:
//!
//! * walk generating functions Q_{u,v}(z) = Σ p_n(u,v) z^n in the closed
//!   field of functions A(z) + Ã(z)·√(q² − 4(q−1)z²) with rational A, Ã
//!   ([`exact`], [`generating`]);
//! * the full spectral resolution of the transition operator K = AD⁻¹:
//!   the absolutely continuous band [−a/q, a/q] with a = 2√(q−1), exterior
//!   eigenvalues found as residue-confirmed poles of resolvent elements, and
//!   embedded eigenvalues from core eigenfunctions that vanish on the graft
//!   set ([`spectrum`]);
//! * amplitudes A_t(u,v) of the continuous-time quantum walk e^{itK} by
//!   spectrally exact quadrature over the band plus point-mass sums, with
//!   trapping probabilities, decay-exponent fits and ballistic front
//!   profiles ([`ctqw`]).
//!
//! The crate is `no_std`-compatible (with `alloc`): disable the default
//! `std` feature and enable `libm` to route float math through libm.

#![cfg_attr(not(feature = "std"), no_std)]
#![deny(unsafe_code)]

extern crate alloc;

pub mod ctqw;
pub mod error;
pub mod exact;
pub mod generating;
pub mod graph;
pub mod spectrum;

pub use error::{Error, Result};
