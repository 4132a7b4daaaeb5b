//! Multigraph representation and connectivity primitives.

pub mod connectivity;
pub mod contractible;
pub mod cuts;
pub mod cycles;
pub mod matching;
pub mod multigraph;

pub use connectivity::{bridges, cut_vertices, decompose, is_2ec_spanning, is_two_edge_connected, BlockDecomposition};
pub use contractible::{find_contractible_certificate, ContractibleCertificate, Justification};
pub use cuts::{find_vertex_cut, residual_components, vertex_cuts, CutCertificate, CutKind};
pub use cycles::{find_cycle_through_edges, hamiltonian_path_between, shortest_cycle_through};
pub use matching::max_matching_across;
pub use multigraph::{ContractionMap, Edge, EdgeId, EdgeSubset, MultiGraph, Vertex};
