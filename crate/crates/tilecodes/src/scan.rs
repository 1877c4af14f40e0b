//! Exhaustive scans over symmetry-reduced labelings.
//!
//! A scan walks the canonical labelings of one tiling in ordinal order,
//! skips the ones a point symmetry maps to something smaller, converts each
//! survivor into 2-body edge measurements on the radius-r lattice, computes
//! and optimizes the subsystem code, and logs one line-delimited JSON record
//! whenever some logical qubit reaches the minimum distance. Walkers
//! partition the work by `ordinal % walkers == walker_id`; merging walker
//! shards in ordinal order reproduces the single-walker output byte for
//! byte.

use crate::codegen::compute_subsystem_code_sized;
use crate::lattice::{PeriodicLattice, Tiling};
use crate::optimize::{optimize_logical_qubits, DistanceProfile, OptimizeOutcome};
use crate::Error;
use serde::{Deserialize, Serialize};
use std::io::{BufRead, Write};

/// Parameters of one scan walker.
#[derive(Debug, Clone)]
pub struct ScanConfig {
    pub tiling: String,
    pub radius: u32,
    /// A labeling is logged iff some logical qubit has at least this distance.
    pub min_distance: usize,
    pub walkers: u32,
    pub walker_id: u32,
    /// Abandon a labeling once the error-weight lower bound passes this,
    /// logging a `distance >= bound` sentinel instead of a full profile.
    pub cutoff: Option<usize>,
}

impl ScanConfig {
    pub fn new(tiling: &str, radius: u32) -> Self {
        ScanConfig {
            tiling: tiling.to_string(),
            radius,
            min_distance: 3,
            walkers: 1,
            walker_id: 0,
            cutoff: None,
        }
    }

    fn validate(&self) -> Result<(), Error> {
        if self.walkers == 0 || self.walker_id >= self.walkers {
            return Err(Error::BadScanConfig(format!(
                "walker id {} not below walker count {}",
                self.walker_id, self.walkers
            )));
        }
        if self.min_distance < 1 {
            return Err(Error::BadScanConfig("min_distance must be at least 1".into()));
        }
        Ok(())
    }
}

/// One logged code. Serialized as a single JSON line with this exact field
/// order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScanRecord {
    pub tiling: String,
    pub radius: u32,
    pub num_qubits: usize,
    pub ordinal: u64,
    pub labeling: String,
    pub n_stab: usize,
    pub n_gauge: usize,
    pub n_logical: usize,
    /// Sorted distance profile; empty for truncated records.
    pub distances: Vec<usize>,
    /// Present when the max-distance cutoff fired: every remaining candidate
    /// error had at least this weight.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub truncated_at: Option<usize>,
}

impl ScanRecord {
    /// Logical-qubit count per distance, as (distance, count) pairs.
    pub fn distance_counts(&self) -> Vec<(usize, usize)> {
        DistanceProfile::new(self.distances.clone()).counts()
    }

    pub fn to_line(&self) -> String {
        serde_json::to_string(self).expect("record serializes")
    }
}

/// End-of-run counters.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ScanStats {
    /// Labelings this walker examined (its residue class of the enumeration).
    pub examined: u64,
    /// Skipped because a symmetry image was smaller.
    pub redundant: u64,
    /// Codes actually built and optimized.
    pub scanned: u64,
    /// Records emitted.
    pub logged: u64,
}

/// Runs one walker, feeding each record to `sink` as it is produced.
pub fn run_scan(
    config: &ScanConfig,
    mut sink: impl FnMut(&ScanRecord) -> Result<(), Error>,
) -> Result<ScanStats, Error> {
    config.validate()?;
    let tiling = Tiling::builtin(&config.tiling)?;
    let lattice = PeriodicLattice::build(tiling, config.radius)?;
    let mut stats = ScanStats::default();

    let total = tiling.total_labelings();
    let mut ordinal = u64::from(config.walker_id);
    while ordinal < total {
        let labeling = tiling.labeling(ordinal)?;
        stats.examined += 1;
        if !tiling.is_orbit_representative(&labeling) {
            stats.redundant += 1;
            ordinal += u64::from(config.walkers);
            continue;
        }
        stats.scanned += 1;
        let measurements = lattice.measurements(&labeling);
        let code = compute_subsystem_code_sized(&measurements, lattice.num_vertices);
        debug_assert_eq!(
            code.stabilizers.len() + code.gauge_pairs.len() + code.logical_pairs.len(),
            lattice.num_vertices
        );
        let outcome = optimize_logical_qubits(&code, config.cutoff)?;
        let record = match outcome {
            OptimizeOutcome::Optimized { profile, .. } => {
                if profile.max().is_some_and(|d| d >= config.min_distance) {
                    Some(ScanRecord {
                        tiling: tiling.name.clone(),
                        radius: config.radius,
                        num_qubits: lattice.num_vertices,
                        ordinal,
                        labeling: tiling.format_labeling(&labeling),
                        n_stab: code.stabilizers.len(),
                        n_gauge: code.gauge_pairs.len(),
                        n_logical: code.logical_pairs.len(),
                        distances: profile.distances().to_vec(),
                        truncated_at: None,
                    })
                } else {
                    None
                }
            }
            OptimizeOutcome::Truncated { lower_bound } => {
                // some logical qubit has distance >= lower_bound > cutoff
                if lower_bound >= config.min_distance {
                    Some(ScanRecord {
                        tiling: tiling.name.clone(),
                        radius: config.radius,
                        num_qubits: lattice.num_vertices,
                        ordinal,
                        labeling: tiling.format_labeling(&labeling),
                        n_stab: code.stabilizers.len(),
                        n_gauge: code.gauge_pairs.len(),
                        n_logical: code.logical_pairs.len(),
                        distances: Vec::new(),
                        truncated_at: Some(lower_bound),
                    })
                } else {
                    None
                }
            }
        };
        if let Some(record) = record {
            stats.logged += 1;
            sink(&record)?;
        }
        ordinal += u64::from(config.walkers);
    }
    Ok(stats)
}

/// Runs one walker and collects its records.
pub fn collect_scan(config: &ScanConfig) -> Result<(Vec<ScanRecord>, ScanStats), Error> {
    let mut records = Vec::new();
    let stats = run_scan(config, |r| {
        records.push(r.clone());
        Ok(())
    })?;
    Ok((records, stats))
}

/// Runs one walker, writing one JSON line per record, flushed per record.
pub fn run_scan_to_writer(
    config: &ScanConfig,
    mut out: impl Write,
) -> Result<ScanStats, Error> {
    run_scan(config, |record| {
        writeln!(out, "{}", record.to_line())?;
        out.flush()?;
        Ok(())
    })
}

/// Parses a record file (one JSON record per line).
pub fn read_records(reader: impl BufRead) -> Result<Vec<ScanRecord>, Error> {
    let mut out = Vec::new();
    for (i, line) in reader.lines().enumerate() {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        let record: ScanRecord =
            serde_json::from_str(&line).map_err(|source| Error::BadRecordLine {
                line: i + 1,
                source,
            })?;
        out.push(record);
    }
    Ok(out)
}

/// Merges walker shards into the single-walker record order (by ordinal).
pub fn merge_records(mut records: Vec<ScanRecord>) -> Vec<ScanRecord> {
    records.sort_by_key(|r| (r.tiling.clone(), r.radius, r.ordinal));
    records
}

/// One summary row: how many logged codes share a radius, distance, and
/// per-distance logical-qubit count.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SummaryRow {
    pub tiling: String,
    pub radius: u32,
    pub num_qubits: usize,
    /// `Some(d)` or `None` for truncated (distance >= cutoff) records.
    pub distance: Option<usize>,
    pub logical_qubits: usize,
    pub multiplicity: usize,
}

/// Groups records by (radius, distance, logical-qubit count); each record
/// contributes one row per distinct distance in its profile, the textual
/// stand-in for one plot polygon.
pub fn summarize(records: &[ScanRecord]) -> Vec<SummaryRow> {
    let mut rows: Vec<SummaryRow> = Vec::new();
    let mut bump = |tiling: &str, radius, num_qubits, distance, logical_qubits| {
        for row in rows.iter_mut() {
            if row.tiling == tiling
                && row.radius == radius
                && row.num_qubits == num_qubits
                && row.distance == distance
                && row.logical_qubits == logical_qubits
            {
                row.multiplicity += 1;
                return;
            }
        }
        rows.push(SummaryRow {
            tiling: tiling.to_string(),
            radius,
            num_qubits,
            distance,
            logical_qubits,
            multiplicity: 1,
        });
    };
    for r in records {
        if let Some(bound) = r.truncated_at {
            bump(&r.tiling, r.radius, r.num_qubits, None, bound);
            continue;
        }
        for (d, count) in r.distance_counts() {
            bump(&r.tiling, r.radius, r.num_qubits, Some(d), count);
        }
    }
    rows.sort_by(|a, b| {
        (&a.tiling, a.radius, a.distance, a.logical_qubits).cmp(&(
            &b.tiling,
            b.radius,
            b.distance,
            b.logical_qubits,
        ))
    });
    rows
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quadrille_radius_one_smoke() {
        let mut config = ScanConfig::new("quadrille", 1);
        config.min_distance = 1;
        let (records, stats) = collect_scan(&config).unwrap();
        assert_eq!(stats.examined, 14);
        assert_eq!(stats.scanned, 10);
        assert_eq!(stats.redundant, 4);
        assert!(!records.is_empty());
    }

    #[test]
    fn record_line_round_trip() {
        let record = ScanRecord {
            tiling: "quadrille".into(),
            radius: 2,
            num_qubits: 16,
            ordinal: 6,
            labeling: "XYXY".into(),
            n_stab: 6,
            n_gauge: 9,
            n_logical: 1,
            distances: vec![4],
            truncated_at: None,
        };
        let line = record.to_line();
        assert!(line.starts_with("{\"tiling\":\"quadrille\",\"radius\":2,"));
        assert!(!line.contains("truncated_at"));
        let back = read_records(line.as_bytes()).unwrap();
        assert_eq!(back, vec![record]);
    }

    #[test]
    fn bad_walker_config_rejected() {
        let mut config = ScanConfig::new("quadrille", 1);
        config.walker_id = 1;
        assert!(run_scan(&config, |_| Ok(())).is_err());
        config.walkers = 0;
        config.walker_id = 0;
        assert!(run_scan(&config, |_| Ok(())).is_err());
    }

    #[test]
    fn unknown_tiling_rejected_before_work() {
        let config = ScanConfig::new("nonsense", 1);
        assert!(matches!(
            run_scan(&config, |_| Ok(())),
            Err(Error::UnknownTiling(_))
        ));
    }

    #[test]
    fn summary_groups_records() {
        let mk = |ordinal, distances: Vec<usize>| ScanRecord {
            tiling: "quadrille".into(),
            radius: 2,
            num_qubits: 16,
            ordinal,
            labeling: "XYXY".into(),
            n_stab: 6,
            n_gauge: 9,
            n_logical: distances.len(),
            distances,
            truncated_at: None,
        };
        assert!(summarize(&[]).is_empty());
        let rows = summarize(&[mk(1, vec![4]), mk(2, vec![4]), mk(3, vec![3, 4, 4])]);
        assert_eq!(
            rows.iter()
                .map(|r| (r.distance, r.logical_qubits, r.multiplicity))
                .collect::<Vec<_>>(),
            vec![(Some(3), 1, 1), (Some(4), 1, 2), (Some(4), 2, 1)]
        );
    }
}
