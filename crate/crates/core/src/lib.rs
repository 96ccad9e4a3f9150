//! Exact-arithmetic counting of rank-2 tame ℓ-adic local systems on curves
//! over finite fields.
//!
//! The crate evaluates, for every k ≥ 1, the number of irreducible rank-2
//! local systems with prescribed tame local monodromies fixed by the k-th
//! Frobenius power.  Two independent closed formulas (a six-case one and a
//! twelve-case one obtained after base change) are implemented and
//! cross-checked; at genus 0 the dominant Higgs-bundle term is computed by
//! direct enumeration of graded parabolic Higgs bundles on the projective
//! line.  All periodic ingredients can be certified as Lefschetz-type
//! functions (integer combinations of root-of-unity powers) by exact
//! cyclotomic arithmetic.
//!
//! Everything is exact: integers are arbitrary precision, intermediate
//! correction terms are exact rationals, and the only floating-point code is
//! the validation-only Weil bound check on zeta numerators.

pub mod counting;
pub mod curve;
pub mod higgs;
pub mod lefschetz;
pub mod numtheory;
pub mod ramification;
