mod classify;
mod pipeline;
mod recover;

pub use classify::{classify, Classification, FixedLocus, Kind};
pub use pipeline::{
    compose, full_pipeline, group_closed, is_identity, is_involutive, locus_json, merge_fields, number_json, recover, Mode, Symmetry,
    SymmetryReport,
};
pub use recover::{
    check_orthogonal, cross, det3, dot, identity3, image_direction, mat_mul, mat_vec, recover_c, solve_b, solve_q, transpose,
    verify_symmetry, Mat3, Vec3N,
};
