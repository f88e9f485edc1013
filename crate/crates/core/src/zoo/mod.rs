//! Example function families, range collapse and the set-system dichotomy.

mod collapse;
mod dichotomy;
mod families;

pub use collapse::{range_collapse, RangeCollapse};
pub use dichotomy::{dichotomy, system_polynomial, verify_dichotomy, Dichotomy};
pub use families::{
    and_or_closed_form, first_zero_gap_tree, generate, generate_table, projective_lines, redundant_indexing_closed_form,
    FamilySpec,
};
