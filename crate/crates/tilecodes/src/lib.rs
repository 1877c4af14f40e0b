//! Subsystem codes from Pauli measurements, and an exhaustive scanner for
//! 2-body codes on periodic Archimedean-tiling lattices.
//!
//! The pipeline, bottom to top:
//!
//! - [`pauli`]: phase-free Pauli products as bit masks, with word-parallel
//!   products, commutation checks, and weights.
//! - [`codegen`]: the subsystem code (stabilizers, gauge pairs, logical
//!   pairs) generated by an arbitrary measurement list.
//! - [`optimize`]: minimum-weight undetectable-error search over disjoint
//!   pseudo-generators, and the logical-qubit optimization loop that makes
//!   the code's distance profile dominance-maximal.
//! - [`lattice`]: the nine scanned Archimedean tilings, their periodic
//!   lattices at integer radius, ray labelings with per-vertex-class
//!   canonicalization, and symmetry-based deduplication.
//! - [`scan`]: walker-partitioned exhaustive scans with line-delimited
//!   records, plus summary tables.
//! - [`reference`]: brute-force oracles used to cross-check everything else.

pub mod codegen;
pub mod lattice;
pub mod optimize;
pub mod pauli;
pub mod reference;
pub mod scan;

pub use codegen::{compute_subsystem_code, ConjugalPair, SubsystemCode};
pub use lattice::{PeriodicLattice, Tiling};
pub use optimize::{optimize_logical_qubits, DistanceProfile, OptimizeOutcome};
pub use pauli::{Letter, PauliOperator};
pub use scan::{run_scan, ScanConfig, ScanRecord};

/// Errors shared across the crate.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("operator size mismatch: {left} vs {right} qubits")]
    SizeMismatch { left: usize, right: usize },

    #[error("qubit index {index} out of range for {num_qubits} qubits")]
    QubitOutOfRange { index: usize, num_qubits: usize },

    #[error("invalid Pauli character {found:?} at position {position}")]
    BadPauliChar { position: usize, found: char },

    #[error("line {line}: invalid Pauli character {found:?} at position {position}")]
    BadOperatorLine {
        line: usize,
        position: usize,
        found: char,
    },

    #[error("line {line}: operator has {found} qubits, expected {expected}")]
    RaggedOperatorList {
        line: usize,
        expected: usize,
        found: usize,
    },

    #[error("empty measurement set: qubit count is ambiguous")]
    EmptyMeasurementSet,

    #[error("weight minimizer exhausted the search space without a match")]
    MinimizerExhausted,

    #[error("code has no logical qubits")]
    NoLogicalQubits,

    #[error("oracle instance too large: {num_qubits} qubits, {pairs} pairs")]
    OracleTooLarge { num_qubits: usize, pairs: usize },

    #[error("unknown tiling {0:?}")]
    UnknownTiling(String),

    #[error("invalid radius {radius} for {tiling}: {reason}")]
    InvalidRadius {
        tiling: String,
        radius: u32,
        reason: String,
    },

    #[error("tiling data for {name:?} is invalid: {reason}")]
    InvalidTilingData { name: String, reason: String },

    #[error("invalid labeling string {text:?}: {reason}")]
    BadLabeling { text: String, reason: String },

    #[error("invalid scan config: {0}")]
    BadScanConfig(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error("record parse error on line {line}: {source}")]
    BadRecordLine {
        line: usize,
        #[source]
        source: serde_json::Error,
    },
}
