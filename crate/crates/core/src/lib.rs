//! Integer double circles on a grid of side `O(n^{3/2})`, built in `O(n)`
//! time, together with Jarnik polygons, two quadratic-size reference
//! constructions, and exact verification.
//!
//! ```
//! use double_circle::{build_double_circle, is_double_circle, grid_size};
//!
//! let set = build_double_circle(6).unwrap();
//! assert_eq!(set.len(), 12);
//! assert!(is_double_circle(&set).unwrap().passed);
//! assert!(grid_size(&set) > 0);
//! ```

pub mod cli;
pub mod constructions;
pub mod error;
pub mod lattice;
pub mod sequences;
pub mod verification;

pub use constructions::{
    build_double_circle, double_circle_steps, jarnik_counts, jarnik_polygon, jarnik_vectors, naive_symmetric,
    naive_vectors, quadratic_baseline, translate_to_grid, JarnikSummary, PointSet, Role,
};
pub use error::{Error, Result};
pub use lattice::{
    build_gcd_table, gcd_lookup, is_visible, segment_lattice_points, turn2, turn3, GcdTable, LatticeVector, TurnValue,
};
pub use sequences::{
    accumulate, alt, generate_visible_vectors, radial_sort_bucket, radial_sort_compare, scale, visible_vectors,
    L1Shell, VectorSequence,
};
pub use verification::{
    check_lemma4, convex_hull, grid_size, is_double_circle, is_double_circle_exhaustive, pick_counts, Condition,
    PickCounts, VerificationReport,
};
