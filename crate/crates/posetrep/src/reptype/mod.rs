//! Representation-type classification of incidence algebras: Tits-form
//! graph classes, certificates, searches, derived invariants.

pub mod certificate;
pub mod graph;
pub mod invariants;
pub mod search;

pub use certificate::{validate_certificate, Certificate, FlipMove, PosetData, Verdict};
pub use graph::{graph_class, AffineShape, DynkinShape, Graph, GraphClass};
pub use invariants::{cartan_matrix, coxeter_matrix, coxeter_polynomial};
pub use search::{
    classify, contraction_cert, finite_cert, four_regular_cert, hereditary_wild_cert,
    report_invariants, square_cycle_cert, star_cert, tame_cube_cert, ClassifyReport,
};
