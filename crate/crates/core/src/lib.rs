//! Exact curvature analysis of finite weighted graphs.
//!
//! Graphs carry exact rational vertex measures and edge weights. Around a
//! root the vertex set splits into spheres `S_r`; from that the crate
//! computes inner/outer curvatures `k_±`, their sphere averages, the
//! associated birth-death chain, Ollivier-Ricci curvatures (as an exact
//! linear program with an integer witness), and sphere curvatures. The
//! [`comparison`] module evaluates volume-growth comparison statements on
//! concrete instances and reports every radius it looked at.
//!
//! ```
//! use curvegraph::chains::make_figure1;
//! use curvegraph::curvature::ollivier_pair;
//! use curvegraph::rational::int;
//!
//! let g = make_figure1();
//! let k = ollivier_pair(&g, "x", "y").unwrap();
//! assert_eq!(k.value, int(-1));
//! ```

pub mod chains;
pub mod comparison;
pub mod curvature;
pub mod error;
pub mod generate;
pub mod graph;
pub mod io;
pub mod oracle;
pub mod rational;
pub mod spheres;
pub mod verify;

pub use error::{Error, Result};
pub use graph::{GraphFunction, VertexId, WeightedGraph};
pub use rational::Rational;

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/graphs.md")]
    mod graphs {}
    #[doc = include_str!("../../../book/src/curvatures.md")]
    mod curvatures {}
    #[doc = include_str!("../../../book/src/chains.md")]
    mod chains {}
    #[doc = include_str!("../../../book/src/ollivier.md")]
    mod ollivier {}
    #[doc = include_str!("../../../book/src/comparison.md")]
    mod comparison {}
    #[doc = include_str!("../../../book/src/verification.md")]
    mod verification {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}
