//! Cluster algebras attached to bipartite graphs, representations of
//! decorated quivers over finite fields, quiver Grassmannian point counts
//! and truncated q-characters.

pub mod cluster;
pub mod error;
pub mod fp;
pub mod graph;
pub mod laurent;
pub mod graded;
pub mod grassmannian;
pub mod qchar;
pub mod quiver;
pub mod rep;
pub mod rng;
pub mod sigma;
pub mod verify;

pub use cluster::{enumerate_clusters, ClusterEnumeration, PrincipalSeed, Seed, VarNaming};
pub use error::{Error, Result};
pub use graph::{library, library_bipartite, BipartiteGraph, Graph};
pub use laurent::{LaurentPoly, Monomial};
pub use quiver::{build_decorated, build_sigma_quiver, build_x_quiver, build_z_quiver, ExchangeMatrix, Quiver, Vertex};
