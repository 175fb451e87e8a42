//! Linear-programming certificates for Gaussian energy optimality on
//! rectangular tori.
//!
//! The toolkit revolves around one family of facts: on the torus
//! R²/(Z x 2βZ), the 4-point configuration consisting of two stacked
//! period-β rows offset like a centered rectangular lattice minimizes
//! Gaussian pair energy for every width exactly when β ≥ 1/√3, and the
//! proof is a two-variable linear-programming certificate built from
//! one-dimensional theta functions. The crate computes those theta
//! functions and their Chebyshev-variable derivatives ([`theta`]),
//! manipulates the lattices and point configurations involved
//! ([`lattice`]), evaluates and minimizes periodic Gaussian energy
//! ([`energy`]), constructs and certifies the magic-function
//! certificate at given parameters ([`magic`]), reproduces the
//! closed-form inequality ledgers behind the general-parameter proof
//! ([`bounds`]), and runs randomized searches for competing
//! configurations and packings ([`search`]).
//!
//! Everything numerically delicate runs on [`xf::Xf`], an
//! extended-exponent float: the certificate at large Gaussian width
//! multiplies values like e^{-1250} where f64 would silently flush to
//! zero and vacuously "verify" 0 ≤ 0.

pub mod bounds;
pub mod energy;
pub mod lattice;
pub mod magic;
pub mod search;
pub mod theta;
pub mod xf;
