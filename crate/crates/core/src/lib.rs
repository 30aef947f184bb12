//! Symbolic linear systems solved through spanning-forest sums of a
//! Laplacian multidigraph, with graphical certificates that the solution is
//! nonnegative.

pub mod blocksys;
pub mod cli;
pub mod crn;
pub mod error;
pub mod forests;
pub mod linsys;
pub mod matrix;
pub mod multigraph;
pub mod pgraph;
pub mod symring;
pub mod testgen;

pub use error::Error;

#[cfg(doctest)]
mod guide {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/polynomials.md")]
    mod polynomials {}
    #[doc = include_str!("../../../book/src/graphs.md")]
    mod graphs {}
    #[doc = include_str!("../../../book/src/forests.md")]
    mod forests {}
    #[doc = include_str!("../../../book/src/solving.md")]
    mod solving {}
    #[doc = include_str!("../../../book/src/certificates.md")]
    mod certificates {}
    #[doc = include_str!("../../../book/src/blocks.md")]
    mod blocks {}
    #[doc = include_str!("../../../book/src/networks.md")]
    mod networks {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}
