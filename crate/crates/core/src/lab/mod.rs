//! Seeded experiment harnesses: orbit scans, fixed-set verification,
//! target-set verification and named verification suites.

pub mod fixset;
pub mod sampler;
pub mod scan;
pub mod target;
pub mod verify;

pub use fixset::{retraction_check, verify_fix_structure_g2, verify_fix_structure_tetra, FixClass, FixSetReport};
pub use sampler::{MapSampler, Recipe, SampledMap};
pub use scan::{scan_weak_wolff_denjoy, ScanConfig, ScanSummary};
pub use target::{verify_target_structure, TargetReport};
