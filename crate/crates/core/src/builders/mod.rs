//! Constructors for complexes and morphisms: Koszul and Taylor complexes,
//! chain maps and their lifting, mapping cones, and the three-row diagram that
//! trades a complex with two homology levels for a pair of complexes with one
//! each.

mod chain_map;
mod cone;
mod diagram;
mod resolutions;

pub use chain_map::{extend_chain_map, lift_morphism, ChainMap};
pub use cone::{mapping_cone, MappingCone};
pub use diagram::{big_diagram, cokernel_resolution, BigDiagram};
pub use resolutions::{koszul, koszul_d_contraction, taylor_from_monomials, taylor_resolution};
