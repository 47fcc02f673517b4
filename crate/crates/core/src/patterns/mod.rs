//! Pattern censuses, the exact admissibility oracle and entropy reports.

mod census;
mod entropy;
mod oracle;
mod shape;

pub use census::{
    census, census_translates, complement_census, translate_range, CensusMode, ComplementReport,
    Occurrence, PatternCensus,
};
pub use entropy::{entropy_table, per_site_log2, EntropyInput, EntropyReport, EntropyRow};
pub use oracle::{
    admissible_count, admissible_count_capped, admissible_patterns, subset_closure_check,
    subset_closure_check_patterns, AdmissibilityOracle, ClosureViolation, OracleCount,
    DEFAULT_ORACLE_CAP,
};
pub use shape::{Pattern, Shape, MAX_SHAPE_SIZE};
