//! Independent brute-force verifiers.
//!
//! Everything here is deliberately naive: exhaustive GF(2) linear algebra and
//! weight-ascending operator enumeration, kept separate from the optimized
//! search path so the two can check each other. These run in tests and in the
//! acceptance suite, and back `codeinfo --verify`.

use crate::codegen::{ConjugalPair, SubsystemCode};
use crate::optimize::DistanceProfile;
use crate::pauli::{Letter, PauliOperator};
use crate::Error;

/// A generator list with its GF(2) row-echelon basis, for exact membership
/// tests.
#[derive(Clone, Debug)]
pub struct GroupSpan {
    num_qubits: usize,
    basis: Vec<Vec<u64>>,
}

impl GroupSpan {
    pub fn new(generators: &[PauliOperator]) -> Self {
        let num_qubits = generators.first().map_or(0, |o| o.num_qubits());
        let mut span = GroupSpan {
            num_qubits,
            basis: Vec::new(),
        };
        for g in generators {
            span.insert(g);
        }
        span
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    /// Adds a generator; returns true if it enlarged the span.
    pub fn insert(&mut self, op: &PauliOperator) -> bool {
        debug_assert_eq!(op.num_qubits(), self.num_qubits);
        match self.reduce(op.symplectic_row()) {
            None => false,
            Some(row) => {
                self.basis.push(row);
                self.basis.sort_unstable_by(|a, b| b.cmp(a));
                true
            }
        }
    }

    pub fn contains(&self, op: &PauliOperator) -> bool {
        self.reduce(op.symplectic_row()).is_none()
    }

    fn reduce(&self, mut row: Vec<u64>) -> Option<Vec<u64>> {
        for b in &self.basis {
            let candidate: Vec<u64> = row.iter().zip(b).map(|(a, c)| a ^ c).collect();
            if candidate < row {
                row = candidate;
            }
        }
        if row.iter().all(|&w| w == 0) {
            None
        } else {
            Some(row)
        }
    }
}

/// True when the operator lies in the span of `generators`.
pub fn in_span(op: &PauliOperator, generators: &[PauliOperator]) -> bool {
    GroupSpan::new(generators).contains(op)
}

/// True when both generator lists span the same group.
pub fn group_equal(a: &[PauliOperator], b: &[PauliOperator]) -> Result<bool, Error> {
    if let (Some(x), Some(y)) = (a.first(), b.first()) {
        if x.num_qubits() != y.num_qubits() {
            return Err(Error::SizeMismatch {
                left: x.num_qubits(),
                right: y.num_qubits(),
            });
        }
    }
    let span_a = GroupSpan::new(a);
    let span_b = GroupSpan::new(b);
    Ok(a.iter().all(|o| span_b.contains(o)) && b.iter().all(|o| span_a.contains(o)))
}

/// Enumerates all non-identity operators on `num_qubits` qubits in
/// weight-ascending order (supports in combination order, letters X, Y, Z
/// per site).
pub fn operators_by_weight(num_qubits: usize) -> impl Iterator<Item = PauliOperator> {
    WeightAscending::new(num_qubits)
}

struct WeightAscending {
    num_qubits: usize,
    weight: usize,
    support: Vec<usize>,
    letters: Vec<u8>,
    done: bool,
}

impl WeightAscending {
    fn new(num_qubits: usize) -> Self {
        WeightAscending {
            num_qubits,
            weight: 0,
            support: Vec::new(),
            letters: Vec::new(),
            done: num_qubits == 0,
        }
    }

    fn emit(&self) -> PauliOperator {
        let mut op = PauliOperator::identity(self.num_qubits);
        for (&q, &l) in self.support.iter().zip(&self.letters) {
            let letter = [Letter::X, Letter::Y, Letter::Z][l as usize];
            op.apply_letter(letter, q);
        }
        op
    }

    fn advance(&mut self) {
        // letters first (odometer), then the support combination, then weight
        for k in (0..self.letters.len()).rev() {
            if self.letters[k] < 2 {
                self.letters[k] += 1;
                return;
            }
            self.letters[k] = 0;
        }
        let r = self.support.len();
        let mut i = r;
        while i > 0 {
            i -= 1;
            if self.support[i] < self.num_qubits - (r - i) {
                self.support[i] += 1;
                for j in i + 1..r {
                    self.support[j] = self.support[j - 1] + 1;
                }
                return;
            }
        }
        self.weight += 1;
        if self.weight > self.num_qubits {
            self.done = true;
            return;
        }
        self.support = (0..self.weight).collect();
        self.letters = vec![0; self.weight];
    }
}

impl Iterator for WeightAscending {
    type Item = PauliOperator;

    fn next(&mut self) -> Option<PauliOperator> {
        loop {
            if self.done {
                return None;
            }
            if self.weight == 0 {
                self.advance();
                continue;
            }
            let op = self.emit();
            self.advance();
            return Some(op);
        }
    }
}

/// Minimum weight over all operators commuting with every stabilizer and
/// anti-commuting with at least one logical member. Exhaustive and
/// weight-ascending, so the first hit is the answer.
pub fn brute_force_distance(code: &SubsystemCode) -> Result<usize, Error> {
    if code.logical_pairs.is_empty() {
        return Err(Error::NoLogicalQubits);
    }
    for op in operators_by_weight(code.num_qubits) {
        if code.stabilizers.iter().any(|s| op.anti_unchecked(s)) {
            continue;
        }
        if code
            .logical_pairs
            .iter()
            .any(|p| op.anti_unchecked(&p.first) || op.anti_unchecked(&p.second))
        {
            return Ok(op.weight());
        }
    }
    unreachable!("a logical member is its partner's own undetectable error")
}

/// Minimum weight of an undetectable error acting on `target` specifically.
pub fn brute_force_error_weight(
    stabilizers: &[PauliOperator],
    target: &PauliOperator,
) -> Option<usize> {
    for op in operators_by_weight(target.num_qubits()) {
        if stabilizers.iter().any(|s| op.anti_unchecked(s)) {
            continue;
        }
        if op.anti_unchecked(target) {
            return Some(op.weight());
        }
    }
    None
}

/// Exhaustive optimal profile over every recombination of the logical pairs:
/// enumerates all choices of conjugal pairs generating the same group modulo
/// the stabilizer-plus-gauge span and returns the dominance-maximal sorted
/// distance sequence. Only tractable for small codes; rejects more than 3
/// pairs or more than 6 qubits.
pub fn brute_force_optimal_profile(code: &SubsystemCode) -> Result<DistanceProfile, Error> {
    let k = code.logical_pairs.len();
    if k > 3 || code.num_qubits > 6 {
        return Err(Error::OracleTooLarge {
            num_qubits: code.num_qubits,
            pairs: k,
        });
    }
    if k == 0 {
        return Ok(DistanceProfile::new(Vec::new()));
    }

    // Elements of <logical members> modulo <stabilizers + gauge members>:
    // distances only depend on that coset, so quotient representatives are
    // enough to enumerate recombinations.
    let fixed: Vec<PauliOperator> = code
        .measurement_generators()
        .into_iter()
        .cloned()
        .collect();
    let members: Vec<PauliOperator> = code
        .logical_pairs
        .iter()
        .flat_map(|p| [p.first.clone(), p.second.clone()])
        .collect();
    let m = members.len();
    let mut cosets: Vec<(PauliOperator, u32)> = Vec::new();
    'outer: for bits in 1u32..(1 << m) {
        let mut op = PauliOperator::identity(code.num_qubits);
        for (i, member) in members.iter().enumerate() {
            if bits & (1 << i) != 0 {
                op.multiply_assign(member);
            }
        }
        let mut span = GroupSpan::new(&fixed);
        span.insert(&op);
        for (seen, _) in &cosets {
            if span.contains(seen) {
                continue 'outer;
            }
        }
        cosets.push((op, bits));
    }

    let omega: Vec<usize> = cosets
        .iter()
        .map(|(op, _)| {
            brute_force_error_weight(&code.stabilizers, op)
                .expect("anti-commuting partner exists in the centralizer")
        })
        .collect();
    let anti = |a: &PauliOperator, b: &PauliOperator| a.anti_unchecked(b);

    let mut best: Option<Vec<usize>> = None;
    enumerate_choices(
        &cosets,
        &omega,
        &anti,
        &mut Vec::new(),
        &mut vec![false; cosets.len()],
        k,
        &mut best,
    );
    let best = best.expect("the original pairs themselves form a choice");
    Ok(DistanceProfile::new(best))
}

/// Recursively picks `k` disjoint conjugal pairs from the coset list and
/// keeps the lexicographically largest sorted distance sequence.
#[allow(clippy::too_many_arguments)]
fn enumerate_choices(
    cosets: &[(PauliOperator, u32)],
    omega: &[usize],
    anti: &dyn Fn(&PauliOperator, &PauliOperator) -> bool,
    picked: &mut Vec<(usize, usize)>,
    used_bits: &mut Vec<bool>,
    k: usize,
    best: &mut Option<Vec<usize>>,
) {
    if picked.len() == k {
        // independence: the 2k chosen coset masks must be GF(2) independent
        let mut masks: Vec<u32> = Vec::with_capacity(2 * k);
        for &(a, b) in picked.iter() {
            masks.push(cosets[a].1);
            masks.push(cosets[b].1);
        }
        let mut basis: Vec<u32> = Vec::new();
        for mut v in masks {
            for b in &basis {
                v = v.min(v ^ b);
            }
            if v == 0 {
                return;
            }
            basis.push(v);
            basis.sort_unstable_by(|a, b| b.cmp(a));
        }
        let mut profile: Vec<usize> = picked
            .iter()
            .map(|&(a, b)| omega[a].min(omega[b]))
            .collect();
        profile.sort_unstable();
        let better = match best {
            None => true,
            Some(cur) => profile.iter().rev().gt(cur.iter().rev()),
        };
        if better {
            *best = Some(profile);
        }
        return;
    }
    for a in 0..cosets.len() {
        for b in a + 1..cosets.len() {
            if !anti(&cosets[a].0, &cosets[b].0) {
                continue;
            }
            // both must commute with every operator already picked
            let ok = picked.iter().all(|&(x, y)| {
                !anti(&cosets[a].0, &cosets[x].0)
                    && !anti(&cosets[a].0, &cosets[y].0)
                    && !anti(&cosets[b].0, &cosets[x].0)
                    && !anti(&cosets[b].0, &cosets[y].0)
            });
            if !ok {
                continue;
            }
            picked.push((a, b));
            enumerate_choices(cosets, omega, anti, picked, used_bits, k, best);
            picked.pop();
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::codegen::compute_subsystem_code;

    fn p(s: &str) -> PauliOperator {
        PauliOperator::parse(s).unwrap()
    }

    #[test]
    fn group_equality() {
        assert!(group_equal(&[p("ZZ"), p("ZI")], &[p("IZ"), p("ZI")]).unwrap());
        assert!(!group_equal(&[p("XX")], &[p("ZZ")]).unwrap());
        assert!(group_equal(&[], &[]).unwrap());
    }

    #[test]
    fn weight_ascending_enumeration() {
        let all: Vec<PauliOperator> = operators_by_weight(2).collect();
        assert_eq!(all.len(), 15);
        let weights: Vec<usize> = all.iter().map(|o| o.weight()).collect();
        let mut sorted = weights.clone();
        sorted.sort_unstable();
        assert_eq!(weights, sorted);
        assert_eq!(all[0], p("XI"));
    }

    #[test]
    fn distance_of_repetition_like_code() {
        let code = compute_subsystem_code(&[p("ZZ")]).unwrap();
        assert_eq!(brute_force_distance(&code).unwrap(), 1);
    }

    #[test]
    fn distance_of_compass() {
        let meas = [p("XXII"), p("IIXX"), p("ZIZI"), p("IZIZ")];
        let code = compute_subsystem_code(&meas).unwrap();
        assert_eq!(brute_force_distance(&code).unwrap(), 2);
    }

    #[test]
    fn distance_rejects_empty_logical() {
        let code = compute_subsystem_code(&[p("X"), p("Z")]).unwrap();
        assert!(brute_force_distance(&code).is_err());
    }

    #[test]
    fn optimal_profile_trivial_pairs() {
        let code = crate::codegen::compute_subsystem_code_sized(&[], 2);
        let profile = brute_force_optimal_profile(&code).unwrap();
        assert_eq!(profile.distances(), &[1, 1]);
    }

    #[test]
    fn optimal_profile_compass() {
        let meas = [p("XXII"), p("IIXX"), p("ZIZI"), p("IZIZ")];
        let code = compute_subsystem_code(&meas).unwrap();
        let profile = brute_force_optimal_profile(&code).unwrap();
        assert_eq!(profile.distances(), &[2]);
    }

    #[test]
    fn optimal_profile_rejects_large() {
        let code = crate::codegen::compute_subsystem_code_sized(&[], 7);
        assert!(brute_force_optimal_profile(&code).is_err());
    }
}
