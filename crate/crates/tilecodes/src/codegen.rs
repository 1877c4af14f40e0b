//! Construction of the subsystem code generated by a measurement sequence.
//!
//! Feeding an arbitrary list of Pauli measurements through
//! [`compute_subsystem_code`] splits the group they generate into independent
//! stabilizer generators, gauge conjugal pairs, and logical conjugal pairs,
//! with `|S| + |G| + |L| = n` always.

use crate::pauli::{Letter, PauliOperator};
use crate::Error;

/// Two anti-commuting operators that commute with everything else in their code.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConjugalPair {
    pub first: PauliOperator,
    pub second: PauliOperator,
}

impl ConjugalPair {
    pub fn new(first: PauliOperator, second: PauliOperator) -> Self {
        ConjugalPair { first, second }
    }

    pub fn members(&self) -> [&PauliOperator; 2] {
        [&self.first, &self.second]
    }
}

/// Pivot bookkeeping from the elimination: entry `i` names the single-qubit
/// operator (`indices[i]`, X or Z per `letters[i]`) that anti-commutes with
/// row `i` of the eliminated sequence and with no other row.
#[derive(Clone, Debug, Default)]
pub struct EliminationTrace {
    pub indices: Vec<usize>,
    pub letters: Vec<Letter>,
}

impl EliminationTrace {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn contains_qubit(&self, qubit: usize) -> bool {
        self.indices.contains(&qubit)
    }

    fn contains(&self, qubit: usize, letter: Letter) -> bool {
        self.indices
            .iter()
            .zip(&self.letters)
            .any(|(&q, &l)| q == qubit && l == letter)
    }
}

/// The stabilizer/gauge/logical decomposition of a measurement group.
#[derive(Clone, Debug)]
pub struct SubsystemCode {
    pub num_qubits: usize,
    pub stabilizers: Vec<PauliOperator>,
    pub gauge_pairs: Vec<ConjugalPair>,
    pub logical_pairs: Vec<ConjugalPair>,
}

impl SubsystemCode {
    /// All operators of the code in a fixed order: stabilizers, then gauge
    /// pair members, then logical pair members.
    pub fn all_operators(&self) -> Vec<&PauliOperator> {
        let mut out: Vec<&PauliOperator> = self.stabilizers.iter().collect();
        for p in &self.gauge_pairs {
            out.extend(p.members());
        }
        for p in &self.logical_pairs {
            out.extend(p.members());
        }
        out
    }

    /// Stabilizers plus gauge members; generates the same group as the input
    /// measurements.
    pub fn measurement_generators(&self) -> Vec<&PauliOperator> {
        let mut out: Vec<&PauliOperator> = self.stabilizers.iter().collect();
        for p in &self.gauge_pairs {
            out.extend(p.members());
        }
        out
    }
}

/// Reduces `ops[start..]` against the already-eliminated prefix, deletes
/// dependent rows, and assigns each surviving row a fresh pivot recorded in
/// `trace`. Earlier rows are back-substituted so every row is the unique one
/// anti-commuting with its pivot operator.
///
/// Rows before `start` must already be eliminated consistently with `trace`,
/// and all rows must commute with each other.
pub fn gaussian_eliminate(
    ops: &mut Vec<PauliOperator>,
    start: usize,
    trace: &mut EliminationTrace,
) {
    let num_qubits = match ops.first() {
        Some(op) => op.num_qubits(),
        None => return,
    };
    let mut i = start;
    while i < ops.len() {
        let mut s = ops[i].clone();
        for j in 0..i {
            let piv =
                PauliOperator::single_qubit(trace.letters[j], trace.indices[j], num_qubits)
                    .expect("trace indices in range");
            if s.anti_unchecked(&piv) {
                let row = ops[j].clone();
                s.multiply_assign(&row);
            }
        }
        if s.is_identity() {
            ops.remove(i);
            continue;
        }
        let mut pivot = None;
        'scan: for q in 0..num_qubits {
            if trace.contains_qubit(q) {
                continue;
            }
            for letter in [Letter::X, Letter::Z] {
                let candidate = PauliOperator::single_qubit(letter, q, num_qubits).unwrap();
                if s.anti_unchecked(&candidate) {
                    pivot = Some((q, letter, candidate));
                    break 'scan;
                }
            }
        }
        let (q, letter, piv_op) =
            pivot.expect("a non-identity operator anti-commutes with some X_q or Z_q");
        for j in 0..i {
            if ops[j].anti_unchecked(&piv_op) {
                let row = s.clone();
                ops[j].multiply_assign(&row);
            }
        }
        trace.indices.push(q);
        trace.letters.push(letter);
        ops[i] = s;
        i += 1;
    }
}

/// Variant used for pseudo-generator extraction: the pivot search does not
/// skip qubits already holding a pivot of the *other* letter, so up to two
/// rows may share a pivot qubit. Input rows need not commute.
pub(crate) fn eliminate_noncommuting(
    ops: &mut Vec<PauliOperator>,
    trace: &mut EliminationTrace,
) {
    let num_qubits = match ops.first() {
        Some(op) => op.num_qubits(),
        None => return,
    };
    let mut i = 0;
    while i < ops.len() {
        let mut s = ops[i].clone();
        for j in 0..i {
            let piv =
                PauliOperator::single_qubit(trace.letters[j], trace.indices[j], num_qubits)
                    .unwrap();
            if s.anti_unchecked(&piv) {
                let row = ops[j].clone();
                s.multiply_assign(&row);
            }
        }
        if s.is_identity() {
            ops.remove(i);
            continue;
        }
        let mut pivot = None;
        'scan: for q in 0..num_qubits {
            for letter in [Letter::X, Letter::Z] {
                if trace.contains(q, letter) {
                    continue;
                }
                let candidate = PauliOperator::single_qubit(letter, q, num_qubits).unwrap();
                if s.anti_unchecked(&candidate) {
                    pivot = Some((q, letter, candidate));
                    break 'scan;
                }
            }
        }
        let (q, letter, piv_op) = pivot.expect("reduced non-identity row has a free witness");
        for j in 0..i {
            if ops[j].anti_unchecked(&piv_op) {
                let row = s.clone();
                ops[j].multiply_assign(&row);
            }
        }
        trace.indices.push(q);
        trace.letters.push(letter);
        ops[i] = s;
        i += 1;
    }
}

/// Computes the subsystem code generated by `measurements`.
///
/// Duplicates, dependencies, and arbitrary commutation structure are allowed.
/// An incoming operator that anti-commutes with a current stabilizer converts
/// that stabilizer into a gauge pair; remaining stabilizers are repaired by
/// multiplication. Logical pairs are then read off one per non-pivot qubit.
pub fn compute_subsystem_code(measurements: &[PauliOperator]) -> Result<SubsystemCode, Error> {
    let num_qubits = match measurements.first() {
        Some(op) => op.num_qubits(),
        None => return Err(Error::EmptyMeasurementSet),
    };
    for op in measurements {
        if op.num_qubits() != num_qubits {
            return Err(Error::SizeMismatch {
                left: num_qubits,
                right: op.num_qubits(),
            });
        }
    }
    Ok(compute_subsystem_code_sized(measurements, num_qubits))
}

/// Like [`compute_subsystem_code`] but with the qubit count given explicitly,
/// so an empty measurement list is meaningful.
pub fn compute_subsystem_code_sized(
    measurements: &[PauliOperator],
    num_qubits: usize,
) -> SubsystemCode {
    let mut stabs: Vec<PauliOperator> = Vec::new();
    let mut gauge: Vec<ConjugalPair> = Vec::new();

    for m in measurements {
        debug_assert_eq!(m.num_qubits(), num_qubits);
        let mut o = m.clone();
        for pair in &gauge {
            if o.anti_unchecked(&pair.first) {
                o.multiply_assign(&pair.second);
            }
            if o.anti_unchecked(&pair.second) {
                o.multiply_assign(&pair.first);
            }
        }
        if o.is_identity() {
            continue;
        }
        let hit = stabs.iter().position(|s| o.anti_unchecked(s));
        match hit {
            None => stabs.push(o),
            Some(k) => {
                let s = stabs.remove(k);
                for s2 in stabs.iter_mut() {
                    if s2.anti_unchecked(&o) {
                        s2.multiply_assign(&s);
                    }
                }
                gauge.push(ConjugalPair::new(o, s));
            }
        }
    }

    let mut trace = EliminationTrace::new();
    gaussian_eliminate(&mut stabs, 0, &mut trace);
    let n_stab = stabs.len();

    // Eliminate one member of each gauge pair on top of the stabilizers; the
    // combined rows give the pivot structure the logical loop reads from.
    let mut rows = stabs.clone();
    rows.extend(gauge.iter().map(|p| p.first.clone()));
    gaussian_eliminate(&mut rows, n_stab, &mut trace);
    debug_assert_eq!(rows.len(), n_stab + gauge.len());

    let mut logical = Vec::new();
    for qubit in 0..num_qubits {
        if trace.contains_qubit(qubit) {
            continue;
        }
        let mut lx = PauliOperator::single_qubit(Letter::X, qubit, num_qubits).unwrap();
        let mut lz = PauliOperator::single_qubit(Letter::Z, qubit, num_qubits).unwrap();
        for ((&q, &letter), row) in trace.indices.iter().zip(&trace.letters).zip(&rows) {
            let u = PauliOperator::single_qubit(letter, q, num_qubits).unwrap();
            if lx.anti_unchecked(row) {
                lx.multiply_assign(&u);
            }
            if lz.anti_unchecked(row) {
                lz.multiply_assign(&u);
            }
        }
        for pair in &gauge {
            if lx.anti_unchecked(&pair.second) {
                lx.multiply_assign(&pair.first);
            }
            if lz.anti_unchecked(&pair.second) {
                lz.multiply_assign(&pair.first);
            }
        }
        logical.push(ConjugalPair::new(lx, lz));
    }

    SubsystemCode {
        num_qubits,
        stabilizers: stabs,
        gauge_pairs: gauge,
        logical_pairs: logical,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::reference;

    fn p(s: &str) -> PauliOperator {
        PauliOperator::parse(s).unwrap()
    }

    #[test]
    fn elimination_drops_duplicates() {
        let mut ops = vec![p("ZZ"), p("ZZ")];
        let mut trace = EliminationTrace::new();
        gaussian_eliminate(&mut ops, 0, &mut trace);
        assert_eq!(ops.len(), 1);
        assert_eq!(trace.indices.len(), 1);
    }

    #[test]
    fn elimination_spans_same_group() {
        // hand-checkable 2-qubit case: <ZZ, ZI> contains IZ
        let mut ops = vec![p("ZZ"), p("ZI")];
        let mut trace = EliminationTrace::new();
        gaussian_eliminate(&mut ops, 0, &mut trace);
        assert_eq!(ops.len(), 2);
        assert!(reference::group_equal(&ops, &[p("ZZ"), p("ZI")]).unwrap());
        assert!(reference::in_span(&p("IZ"), &ops));
        // pivot uniqueness
        for (i, (&q, &l)) in trace.indices.iter().zip(&trace.letters).enumerate() {
            let piv = PauliOperator::single_qubit(l, q, 2).unwrap();
            for (j, row) in ops.iter().enumerate() {
                assert_eq!(row.anti(&piv).unwrap(), i == j);
            }
        }
    }

    #[test]
    fn elimination_empty_is_noop() {
        let mut ops: Vec<PauliOperator> = Vec::new();
        let mut trace = EliminationTrace::new();
        gaussian_eliminate(&mut ops, 0, &mut trace);
        assert!(ops.is_empty());
    }

    #[test]
    fn no_measurements_gives_bare_qubits() {
        let code = compute_subsystem_code_sized(&[], 2);
        assert!(code.stabilizers.is_empty());
        assert!(code.gauge_pairs.is_empty());
        assert_eq!(code.logical_pairs.len(), 2);
        assert_eq!(code.logical_pairs[0].first, p("XI"));
        assert_eq!(code.logical_pairs[0].second, p("ZI"));
        assert_eq!(code.logical_pairs[1].first, p("IX"));
        assert_eq!(code.logical_pairs[1].second, p("IZ"));
    }

    #[test]
    fn anticommuting_pair_becomes_gauge() {
        let code = compute_subsystem_code(&[p("X"), p("Z")]).unwrap();
        assert_eq!(code.stabilizers.len(), 0);
        assert_eq!(code.gauge_pairs.len(), 1);
        assert_eq!(code.logical_pairs.len(), 0);
    }

    #[test]
    fn single_stabilizer_leaves_logical() {
        let code = compute_subsystem_code(&[p("ZZ")]).unwrap();
        assert_eq!(
            (code.stabilizers.len(), code.gauge_pairs.len(), code.logical_pairs.len()),
            (1, 0, 1)
        );
    }

    #[test]
    fn compass_two_by_two() {
        let meas = [p("XXII"), p("IIXX"), p("ZIZI"), p("IZIZ")];
        let code = compute_subsystem_code(&meas).unwrap();
        assert_eq!(
            (code.stabilizers.len(), code.gauge_pairs.len(), code.logical_pairs.len()),
            (2, 1, 1)
        );
        assert_eq!(reference::brute_force_distance(&code).unwrap(), 2);
    }

    #[test]
    fn mixed_sizes_rejected() {
        assert!(compute_subsystem_code(&[p("XX"), p("X")]).is_err());
    }
}
