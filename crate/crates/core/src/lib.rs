//! Decoding binary cyclic codes with general error locator polynomials.
//!
//! A general error locator is a polynomial whose coefficients are fixed
//! expressions in the syndromes; evaluating it on the syndromes of a received
//! word and finding its roots locates every correctable error at once.

pub mod catalog;
pub mod code;
pub mod decode;
pub mod density;
pub mod expr;
pub mod gf2m;
pub mod par;
pub mod synth;

pub use code::CodeSpec;
pub use gf2m::{Field, Gf};
pub use par::Execution;
