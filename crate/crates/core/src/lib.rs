//! Borel-fixed ideals on Hilbert schemes: enumeration, rational deformations,
//! deformation graphs and segment certificates.

pub mod borel;
pub mod deform;
pub mod enumerate;
pub mod error;
pub mod graphs;
pub mod hilbert;
pub mod linalg;
pub mod monomial;
pub mod order;
pub mod segment;

pub use borel::{parse_ideal, BorelIdeal, BorelSet, IdealRecord, Stratum};
pub use deform::{
    all_deformations, compatible, compose, decreasing_family, flatness_report, is_borel_consistent, to_deformation,
    verify_flat, Composition, DecMoveFamily, Deformation, DeformationRecord, FlatnessReport,
};
pub use enumerate::enumerate_ideals;
pub use error::{Error, Result};
pub use graphs::{
    analyze, deformation_graph, incidence_graph, to_dot, to_json, Analysis, DeformGraph, Edge, EdgeKind, Vertex,
    Witness, DEFAULT_SUBSET_CAP,
};
pub use hilbert::HilbertPolynomial;
pub use monomial::Monomial;
pub use order::{TermOrder, Weights};
pub use segment::{find_segment_order, verify_certificate, SegmentCertificate};
