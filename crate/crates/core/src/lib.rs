//! Exact construction of Nakajima polytopes and the binomial equations of the
//! toric local complete intersection singularities they support.
//!
//! Starting from an admissible free-parameter matrix the crate computes the
//! polytope vertices, the generators and Hilbert basis of the dual cone, the
//! `d - 1` binomials cutting out the singularity in `C^{2d-1}`, and the
//! minimal embedding obtained by eliminating redundant variables. The
//! [`oracle`] module re-derives every object by brute force.

pub mod corpus;
pub mod dual_cone;
pub mod error;
pub mod ideal;
pub mod linalg;
pub mod lp;
pub mod oracle;
pub mod params;
pub mod polytope;

pub use dual_cone::{
    basic_cones, dual_generators, elimination_plan, BasicCone, DualGenerators, EliminationPlan,
};
pub use error::{Error, Result};
pub use ideal::{
    binomial_generators, dominating_basis, lambda_mu, minimal_presentation, relation_matrices,
    render, unimodular_factors, Binomial, Format, IdealPresentation, LambdaMuTable, RelationMatrix,
};
pub use linalg::{det, is_dominating, is_mixed, mat_mul, IntMatrix};
pub use params::{validate_structure, EpsilonChoice, FreeParamMatrix, InputDocument};
pub use polytope::{
    extreme_points, h_description, is_admissible, is_basic_simplex, vertex_family, vertex_point,
    Admissibility, VertexFamily,
};

/// Builds the complete presentation (generators plus minimal embedding) for
/// an admissible matrix.
pub fn full_presentation(m: &FreeParamMatrix) -> Result<IdealPresentation> {
    if let Admissibility::Violation(v) = is_admissible(m) {
        return Err(Error::Inadmissible {
            level: v.level,
            epsilon: v.epsilon.bits().to_vec(),
            pairing: v.pairing,
        });
    }
    let plan = elimination_plan(m);
    minimal_presentation(m, &plan)
}
