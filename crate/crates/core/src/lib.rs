//! Exact covering numbers of finite permutation groups.

pub mod analysis;
pub mod bitset;
pub mod catalog;
pub mod cover;
pub mod elements;
pub mod error;
pub mod group;
pub mod lattice;
pub mod perm;
pub mod subgroup;

pub use analysis::{
    count_symmetric_order_elements, has_klein_quotient, is_sigma_elementary, paper_table_report, sigma,
    solvable_elementary_check, structural_audit, tomkinson_sigma, ElementaryVerdict, TableReport, TomkinsonResult,
};
pub use bitset::Bitset;
pub use catalog::{catalog_sweep, parse_group_file, CatalogGroup, GroupKind, GroupSpec};
pub use cover::{
    solve_group, verify_cover, Certificate, CoverCheck, CoverMember, OptimalCount, SearchStats, SigmaResult,
    SigmaValue, SolveOptions,
};
pub use elements::{ElemId, ElementTable, DEFAULT_CAP};
pub use error::{CycleParseError, Error, Result};
pub use group::PermGroup;
pub use perm::{parse_cycles, Permutation};
pub use subgroup::SubgroupSet;
