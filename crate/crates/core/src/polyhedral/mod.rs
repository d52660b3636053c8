//! Cones, polyhedra and Newton polyhedra.

pub mod cone;
pub mod dd;
pub mod newton_polyhedron;
pub mod polyhedron;

pub use cone::{dual_cone, face_lattice, Cone, Face};
pub use dd::facet_normals_brute_force;
pub use newton_polyhedron::{newton_polyhedron, CompactFace, CompactFaceSet, NewtonPolyhedron};
pub use polyhedron::{Halfspace, PolyFace, Polyhedron};
