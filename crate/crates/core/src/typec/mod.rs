//! The type-C_n generalized cluster algebra and its polygon model.

pub mod algebra;
pub mod basis;
pub mod polygon;
pub mod triangulation;

pub use algebra::{initial_seed, relation_instances, RelTerm, Relation, RelationFamily, TypeC};
pub use basis::{
    basis_b, chebyshev_eval, chebyshev_s, cluster_monomials, lambda_cluster_monomials, phi, psi,
    small_degree, small_monomials, u_matrix, BasisElement, ClusterMonomial, SmallMonomial, URow,
};
pub use polygon::{all_orbits, crossing, parse_vertex, vertex_count, vertex_label, Orbit};
pub use triangulation::{flip_closure, CSTriangulation};
