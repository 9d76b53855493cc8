//! Stabilizer codes over prime fields and their graphical representation.
//!
//! The crate converts a weighted graph with input and output vertices into
//! the stabilizer of the code it spans, and converts any self-orthogonal
//! symplectic code back into such a graph together with a transcript of the
//! local symplectic moves that relate the two. A dense state-vector oracle
//! checks the quantum side numerically on small instances.

pub mod catalog;
pub mod enumerator;
pub mod error;
pub mod gfp;
pub mod graphcode;
pub mod matfp;
pub mod random;
pub mod statevec;
pub mod symplectic;

pub use enumerator::{
    gf4_rank, macwilliams_dual, min_distance, to_gf4, to_gf4_matrix, weight_distribution, Gf4,
    WeightEnumerator, DEFAULT_BUDGET,
};
pub use error::{Error, Result};
pub use gfp::{flatten_vector, trace_gram, ExtField, ExtensionBasis, FpElem, Prime};
pub use graphcode::{
    bilinear_form, flatten_graph, graph_to_stabilizer, quad_form, stabilizer_to_graph,
    verify_roundtrip, GraphCode, GraphConversion, GraphStabilizer, PhasedStabilizerGen,
    RoundTripReport,
};
pub use matfp::{kernel_basis, parity_check, row_basis, row_space_equal, rref, FpMatrix, Rref};
pub use statevec::{
    apply_error, build_code_state, build_extension_code_state, check_projector, check_stabilizer,
    gram_matrix, StateVector, DEFAULT_ORACLE_BUDGET,
};
pub use symplectic::{
    apply_transcript, invert_transcript, self_dual_embed, standard_form, symp_dual, symp_inner,
    symplectic_weight, IsometryTranscript, Move, SymplecticCode, SymplecticVector,
};
