//! Fixed-point localization: vertex classes, signed contributions, partition
//! functions, and their cohomological, insertion-free and `y = t4` images.

pub mod class;
pub mod cohom;
pub mod contribution;
pub mod dimred;
pub mod partition_function;

pub use class::{g_fixed_part, tautological_pair, vertex_class, vertex_class_for, vertex_class_unreduced, virtual_tangent, Twist};
pub use cohom::{
    cohomological_leading, cohomological_map, insertion_free_contribution, m_degree, m_leading,
    validate_cohomological_leading, CohomFraction, LinearForm,
};
pub use contribution::{contribution, profile_of, Contribution, SignRule};
pub use dimred::{dimensional_reduce, reduced_class, Reduced};
pub use partition_function::{
    collect_contributions, dt_partition_function, effective_action, series_names, series_nvars, Contributions,
};
