//! Mod-2 intersection theory of the mirror quintic, and the topology of
//! real Calabi-Yau threefolds twisted by a section.
//!
//! The pipeline, from the ground up:
//!
//! 1. [`lattice`] enumerates the boundary lattice points of the dilated
//!    4-simplex `P = 5Δ⁴` (centred so the origin is its unique interior
//!    lattice point) and builds a unimodular staircase triangulation of `∂P`.
//! 2. [`fan`] takes the cones over the triangulation and certifies the
//!    resulting complete simplicial fan smooth.
//! 3. [`intersection`] computes integer quadruple intersection numbers of the
//!    toric divisors, restricts to the anticanonical hypersurface and reduces
//!    mod 2, producing the symmetric triple table over the 105 divisors that
//!    meet the hypersurface.
//! 4. [`gf2`] is a small dense linear algebra kernel over the two-element
//!    field (rank, kernel, affine solve) with deterministic pivoting.
//! 5. [`twist`] assembles the squaring pairing `Q[d1][d2] = T(d1,d1,d2)` and
//!    the trilinear action matrix, solves `D² + DL = 0` for twist classes
//!    `L`, cross-validates solutions against the local parity configurations,
//!    and classifies face patterns.
//! 6. [`betti`] evaluates the exact-sequence Betti calculators for the
//!    untwisted, twisted and K3 cases.
//! 7. [`finite`] verifies the finite GF(2) identities underlying the twisted
//!    squaring formula exhaustively on small coordinate spaces.
//!
//! Everything is exact integer / GF(2) arithmetic; there is no floating
//! point anywhere in the computational core. All outputs are deterministic,
//! independent of thread count.
//!
//! With the default `parallel` feature the heavy inner loops use rayon;
//! `--no-default-features` builds a purely sequential crate with the same
//! results. `*_seq` entry points stay available either way so the two code
//! paths can be benchmarked against each other.

pub mod betti;
pub mod fan;
pub mod finite;
pub mod gf2;
pub mod ids;
pub mod intersection;
pub mod lattice;
pub mod report;
pub mod rng;
pub mod svg;
pub mod twist;

mod par;

pub use betti::{betti_report, BettiError, BettiReport, Classification, HodgeInput, ReportKind};
pub use fan::{build_fan, FanError, SimplicialFan};
pub use gf2::{BitMatrix, BitVec, Gf2Error};
pub use ids::DivisorId;
pub use intersection::{
    build_triple_table, verify_prop42, IntersectionError, Prop42Report, TripleTable,
};
pub use lattice::{
    enumerate_boundary_points, standard_triangulation, Geometry, LatticePoint, PointSet,
    Triangulation, TriangulationVariant,
};
pub use report::CheckItem;
pub use svg::face_svg;
pub use twist::{
    build_pairings, face_patterns, local_validate, solve_m2_twists, twisted_matrix, twisted_rank,
    CaseReport, ClassificationError, FacePatternReport, PairingMatrices, TwistClass, TwistCoset,
    TwistError,
};

/// Builds the full geometric stack (points, triangulation, certified fan)
/// for one triangulation variant.
pub fn build_geometry(variant: TriangulationVariant) -> Result<Geometry, FanError> {
    let points = enumerate_boundary_points();
    let triangulation = standard_triangulation(&points, variant);
    let fan = build_fan(&points, &triangulation)?;
    Ok(Geometry {
        points,
        triangulation,
        fan,
    })
}
