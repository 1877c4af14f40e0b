//! Distance machinery: disjoint pseudo-generators, the bounded minimum-weight
//! undetectable-error search, and the logical-qubit optimization loop.
//!
//! The search space for undetectable errors is the centralizer of the
//! stabilizers, generated here not by plain operators but by *pseudo-
//! generators*: sets of one or two operators, each witnessed by a single-qubit
//! X or Z that anti-commutes with that member alone. Disjointness of the
//! witnesses gives the key enumeration bound: any product drawn from `r`
//! distinct pseudo-generators has weight at least `r`, so a search by
//! increasing `r` can stop as soon as the best hit is no heavier than `r`.

use crate::codegen::{ConjugalPair, SubsystemCode};
use crate::pauli::{Letter, PauliOperator};
use crate::Error;

/// One or two operators sharing a witness qubit. Each member anti-commutes
/// with its own witness single-qubit operator and with no other witness in
/// the containing set.
#[derive(Clone, Debug)]
pub struct PseudoGenerator {
    pub witness_qubit: usize,
    /// Members with their witness letters; two members always carry distinct
    /// letters on the same qubit.
    pub members: Vec<(PauliOperator, Letter)>,
}

impl PseudoGenerator {
    /// The non-identity elements of the group generated by the members, in
    /// the fixed order first, second, first·second.
    pub fn elements(&self) -> Vec<PauliOperator> {
        match self.members.as_slice() {
            [(a, _)] => vec![a.clone()],
            [(a, _), (b, _)] => {
                let ab = a.multiply(b).expect("members share size");
                vec![a.clone(), b.clone(), ab]
            }
            _ => unreachable!("pseudo-generator has 1 or 2 members"),
        }
    }
}

/// A disjoint pseudo-generator set spanning a search space.
#[derive(Clone, Debug)]
pub struct PseudoGeneratorSet {
    pub num_qubits: usize,
    pub generators: Vec<PseudoGenerator>,
}

impl PseudoGeneratorSet {
    pub fn len(&self) -> usize {
        self.generators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }
}

/// Computes a disjoint pseudo-generator set generating the same group as
/// `ops`. Identity and dependent inputs are dropped; the result has at most
/// `ops.len()` generators, and exactly `num_qubits` of them when `ops`
/// generates the centralizer of a commuting set.
pub fn compute_pseudogenerators(
    ops: &[PauliOperator],
    num_qubits: usize,
) -> PseudoGeneratorSet {
    let mut rows: Vec<PauliOperator> = ops.to_vec();
    let mut trace = crate::codegen::EliminationTrace::new();
    crate::codegen::eliminate_noncommuting(&mut rows, &mut trace);
    let mut generators = Vec::new();
    for q in 0..num_qubits {
        let members: Vec<(PauliOperator, Letter)> = rows
            .iter()
            .zip(trace.indices.iter().zip(&trace.letters))
            .filter(|(_, (&wq, _))| wq == q)
            .map(|(op, (_, &l))| (op.clone(), l))
            .collect();
        if !members.is_empty() {
            debug_assert!(members.len() <= 2);
            generators.push(PseudoGenerator {
                witness_qubit: q,
                members,
            });
        }
    }
    PseudoGeneratorSet {
        num_qubits,
        generators,
    }
}

/// Streams the pseudo-product of the chosen generators: every product formed
/// by picking one non-identity element from each. An empty choice streams
/// nothing.
pub fn pseudo_product(chosen: &[&PseudoGenerator]) -> Vec<PauliOperator> {
    if chosen.is_empty() {
        return Vec::new();
    }
    let elem_sets: Vec<Vec<PauliOperator>> = chosen.iter().map(|g| g.elements()).collect();
    let mut out = Vec::new();
    let mut idx = vec![0usize; chosen.len()];
    loop {
        let mut prod = elem_sets[0][idx[0]].clone();
        for k in 1..chosen.len() {
            prod.multiply_assign(&elem_sets[k][idx[k]]);
        }
        out.push(prod);
        if !step_odometer(&mut idx, &elem_sets) {
            return out;
        }
    }
}

fn step_odometer(idx: &mut [usize], elem_sets: &[Vec<PauliOperator>]) -> bool {
    for k in (0..idx.len()).rev() {
        idx[k] += 1;
        if idx[k] < elem_sets[k].len() {
            return true;
        }
        idx[k] = 0;
    }
    false
}

/// Result of a bounded minimum-weight search.
#[derive(Clone, Debug)]
pub enum SearchResult<T> {
    /// The minimum-weight matching operator, with the query's tag.
    Found { minimizer: PauliOperator, aux: T },
    /// The search was abandoned: every matching operator has weight at least
    /// `lower_bound`, which exceeds the caller's cutoff.
    Truncated { lower_bound: usize },
}

/// Finds a minimum-weight operator of the generated group matched by `query`,
/// enumerating pseudo-products of `r` generators for increasing `r` and
/// stopping once the best hit weighs no more than `r`. Candidates at or above
/// the current best weight are never queried.
///
/// Ties break to the first hit in enumeration order: generator combinations
/// in lexicographic index order, factor elements in first/second/product
/// order with the last chosen generator cycling fastest.
///
/// With `cutoff = Some(c)`, the search is abandoned as soon as the lower
/// bound `r` passes `c` without a hit at or below `c`.
///
/// Errors with [`Error::MinimizerExhausted`] when no group element matches,
/// which is a contract violation by the caller.
pub fn find_weight_minimizer<T>(
    mut query: impl FnMut(&PauliOperator) -> Option<T>,
    pgens: &PseudoGeneratorSet,
    cutoff: Option<usize>,
) -> Result<SearchResult<T>, Error> {
    let n_gens = pgens.generators.len();
    let mut best: Option<(PauliOperator, T)> = None;
    let mut best_weight = usize::MAX;
    let mut r = 1;
    while best_weight > r && r <= n_gens {
        if let Some(c) = cutoff {
            if r > c {
                return Ok(SearchResult::Truncated { lower_bound: r });
            }
        }
        let mut combo: Vec<usize> = (0..r).collect();
        loop {
            scan_combination(pgens, &combo, &mut best, &mut best_weight, &mut query);
            if best_weight == r {
                break;
            }
            if !next_combination(&mut combo, n_gens) {
                break;
            }
        }
        if best_weight <= r {
            break;
        }
        r += 1;
    }
    match best {
        Some((minimizer, aux)) => Ok(SearchResult::Found { minimizer, aux }),
        None => Err(Error::MinimizerExhausted),
    }
}

/// Enumerates the pseudo-product of one combination, maintaining the running
/// product incrementally (two XORs per odometer step).
fn scan_combination<T>(
    pgens: &PseudoGeneratorSet,
    combo: &[usize],
    best: &mut Option<(PauliOperator, T)>,
    best_weight: &mut usize,
    query: &mut impl FnMut(&PauliOperator) -> Option<T>,
) {
    let r = combo.len();
    let elem_sets: Vec<Vec<PauliOperator>> = combo
        .iter()
        .map(|&i| pgens.generators[i].elements())
        .collect();
    let mut idx = vec![0usize; r];
    let mut current = elem_sets[0][0].clone();
    for set in elem_sets.iter().skip(1) {
        current.multiply_assign(&set[0]);
    }
    loop {
        if current.weight() < *best_weight {
            if let Some(aux) = query(&current) {
                *best_weight = current.weight();
                *best = Some((current.clone(), aux));
                if *best_weight == r {
                    return;
                }
            }
        }
        // odometer step, last position fastest; patch the product in place
        let mut advanced = false;
        for k in (0..r).rev() {
            let old = idx[k];
            idx[k] += 1;
            if idx[k] < elem_sets[k].len() {
                current.multiply_assign(&elem_sets[k][old]);
                current.multiply_assign(&elem_sets[k][idx[k]]);
                advanced = true;
                break;
            }
            idx[k] = 0;
            current.multiply_assign(&elem_sets[k][old]);
            current.multiply_assign(&elem_sets[k][0]);
        }
        if !advanced {
            return;
        }
    }
}

fn next_combination(combo: &mut [usize], n: usize) -> bool {
    let r = combo.len();
    let mut i = r;
    while i > 0 {
        i -= 1;
        if combo[i] < n - (r - i) {
            combo[i] += 1;
            for j in i + 1..r {
                combo[j] = combo[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

/// Per-pair minimum undetectable-error weights, sorted non-decreasing.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DistanceProfile(Vec<usize>);

impl DistanceProfile {
    pub fn new(mut distances: Vec<usize>) -> Self {
        distances.sort_unstable();
        DistanceProfile(distances)
    }

    pub fn distances(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn min(&self) -> Option<usize> {
        self.0.first().copied()
    }

    pub fn max(&self) -> Option<usize> {
        self.0.last().copied()
    }

    /// How many logical qubits have each distance, as (distance, count) pairs.
    pub fn counts(&self) -> Vec<(usize, usize)> {
        let mut out: Vec<(usize, usize)> = Vec::new();
        for &d in &self.0 {
            match out.last_mut() {
                Some((d2, c)) if *d2 == d => *c += 1,
                _ => out.push((d, 1)),
            }
        }
        out
    }
}

/// Result of the optimization loop.
#[derive(Clone, Debug)]
pub enum OptimizeOutcome {
    Optimized {
        code: SubsystemCode,
        profile: DistanceProfile,
    },
    /// Abandoned by the max-distance cutoff: some logical qubit has distance
    /// at least `lower_bound`.
    Truncated { lower_bound: usize },
}

/// Replaces the code's logical pairs with an optimal choice of qubits: the
/// same generated group, recombined so that the sorted distance sequence
/// dominates every alternative. Stabilizers and gauge pairs are unchanged.
///
/// The search space is built once from the stabilizers, gauge members, and
/// logical members, whose span is the centralizer of the stabilizer group.
pub fn optimize_logical_qubits(
    code: &SubsystemCode,
    cutoff: Option<usize>,
) -> Result<OptimizeOutcome, Error> {
    if code.logical_pairs.is_empty() {
        return Ok(OptimizeOutcome::Optimized {
            code: code.clone(),
            profile: DistanceProfile::new(Vec::new()),
        });
    }
    let n = code.num_qubits;
    let all: Vec<PauliOperator> = code.all_operators().into_iter().cloned().collect();
    let pgens = compute_pseudogenerators(&all, n);

    let mut chosen: Vec<ConjugalPair> = Vec::new();
    // true while the pair's second member has not yet been used to contain an error
    let mut exposed: Vec<bool> = Vec::new();
    let mut unopt: Vec<ConjugalPair> = code.logical_pairs.clone();

    while !unopt.is_empty() {
        let result = {
            let chosen_ref = &chosen;
            let exposed_ref = &exposed;
            let unopt_ref = &unopt;
            find_weight_minimizer(
                |o| {
                    for (i, pair) in chosen_ref.iter().enumerate() {
                        if exposed_ref[i] && o.anti_unchecked(&pair.second) {
                            return Some(Hit::Exposed(i));
                        }
                    }
                    for (j, pair) in unopt_ref.iter().enumerate() {
                        if o.anti_unchecked(&pair.first) || o.anti_unchecked(&pair.second) {
                            return Some(Hit::Unoptimized(j));
                        }
                    }
                    None
                },
                &pgens,
                cutoff,
            )?
        };
        let (e, hit) = match result {
            SearchResult::Truncated { lower_bound } => {
                return Ok(OptimizeOutcome::Truncated { lower_bound })
            }
            SearchResult::Found { minimizer, aux } => (minimizer, aux),
        };
        match hit {
            Hit::Exposed(k) => {
                // The error lands on an already-chosen pair's exposed second
                // member: use that member to contain it and retire the flag.
                let o = chosen[k].second.clone();
                exposed[k] = false;
                for i in k + 1..chosen.len() {
                    if exposed[i] && e.anti_unchecked(&chosen[i].second) {
                        let lx = chosen[i].first.clone();
                        chosen[k].first.multiply_assign(&lx);
                        chosen[i].second.multiply_assign(&o);
                    }
                }
                fix_pairs(&mut unopt, &e, &mut chosen[k].first, &o);
                if e.anti_unchecked(&chosen[k].first) {
                    chosen[k].first.multiply_assign(&o);
                }
            }
            Hit::Unoptimized(j) => {
                // Promote the hit pair, oriented so the error acts on the
                // first member, then fix the rest of the unoptimized set.
                let mut pair = unopt.remove(j);
                if !e.anti_unchecked(&pair.first) {
                    std::mem::swap(&mut pair.first, &mut pair.second);
                }
                let o = pair.first.clone();
                fix_pairs(&mut unopt, &e, &mut pair.second, &o);
                if e.anti_unchecked(&pair.second) {
                    pair.second.multiply_assign(&o);
                }
                chosen.push(pair);
                exposed.push(true);
            }
        }
    }

    // Distances are read off the final representatives; the loop's invariants
    // make this sequence non-decreasing already, but the profile sorts anyway.
    let mut distances = Vec::with_capacity(chosen.len());
    for pair in &chosen {
        let result = find_weight_minimizer(
            |o| {
                (o.anti_unchecked(&pair.first) || o.anti_unchecked(&pair.second)).then_some(())
            },
            &pgens,
            cutoff,
        )?;
        match result {
            SearchResult::Truncated { lower_bound } => {
                return Ok(OptimizeOutcome::Truncated { lower_bound })
            }
            SearchResult::Found { minimizer, .. } => distances.push(minimizer.weight()),
        }
    }

    Ok(OptimizeOutcome::Optimized {
        code: SubsystemCode {
            num_qubits: n,
            stabilizers: code.stabilizers.clone(),
            gauge_pairs: code.gauge_pairs.clone(),
            logical_pairs: chosen,
        },
        profile: DistanceProfile::new(distances),
    })
}

enum Hit {
    Exposed(usize),
    Unoptimized(usize),
}

/// Fixes every pair in `pairs` hit by `e`: the hit member is multiplied by
/// `fixer` (which `e` acts on), and the accumulator absorbs the partner so
/// conjugality with the fixer's pair survives.
fn fix_pairs(
    pairs: &mut [ConjugalPair],
    e: &PauliOperator,
    accumulator: &mut PauliOperator,
    fixer: &PauliOperator,
) {
    for p in pairs.iter_mut() {
        let hit_first = e.anti_unchecked(&p.first);
        let hit_second = e.anti_unchecked(&p.second);
        if hit_second {
            let partner = p.first.clone();
            accumulator.multiply_assign(&partner);
            p.second.multiply_assign(fixer);
        }
        if hit_first {
            let partner = p.second.clone();
            accumulator.multiply_assign(&partner);
            p.first.multiply_assign(fixer);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::codegen::compute_subsystem_code;
    use crate::pauli::PauliOperator;

    fn p(s: &str) -> PauliOperator {
        PauliOperator::parse(s).unwrap()
    }

    #[test]
    fn pseudogenerators_of_full_group() {
        // {X_i, Z_i} for all i: one generator per qubit, each with 2 members
        let n = 5;
        let mut ops = Vec::new();
        for i in 0..n {
            ops.push(PauliOperator::single_qubit(Letter::X, i, n).unwrap());
        }
        for i in 0..n {
            ops.push(PauliOperator::single_qubit(Letter::Z, i, n).unwrap());
        }
        let pg = compute_pseudogenerators(&ops, n);
        assert_eq!(pg.len(), n);
        assert!(pg.generators.iter().all(|g| g.members.len() == 2));
    }

    #[test]
    fn duplicate_collapses() {
        let pg = compute_pseudogenerators(&[p("ZZ"), p("ZZ")], 2);
        assert_eq!(pg.len(), 1);
        assert_eq!(pg.generators[0].members.len(), 1);
    }

    #[test]
    fn pseudo_product_single_qubit_group() {
        let pg = compute_pseudogenerators(&[p("X"), p("Z")], 1);
        assert_eq!(pg.len(), 1);
        let elems = pseudo_product(&[&pg.generators[0]]);
        assert_eq!(elems, vec![p("X"), p("Z"), p("Y")]);
    }

    #[test]
    fn pseudo_product_two_generators() {
        let pg = compute_pseudogenerators(&[p("XI"), p("ZI"), p("IX")], 2);
        assert_eq!(pg.len(), 2);
        let gens: Vec<&PseudoGenerator> = pg.generators.iter().collect();
        let elems = pseudo_product(&gens);
        assert_eq!(elems.len(), 3);
        assert!(elems.iter().all(|o| o.weight() >= 2));
        assert!(pseudo_product(&[]).is_empty());
    }

    #[test]
    fn minimizer_finds_weight_one() {
        // S = {ZZ}, logical pair (XX, ZI): Z_0 the lightest error
        let code = compute_subsystem_code(&[p("ZZ")]).unwrap();
        let ops: Vec<PauliOperator> = code.all_operators().into_iter().cloned().collect();
        let pg = compute_pseudogenerators(&ops, 2);
        let pairs = code.logical_pairs.clone();
        let result = find_weight_minimizer(
            |o| {
                pairs
                    .iter()
                    .any(|pr| o.anti_unchecked(&pr.first) || o.anti_unchecked(&pr.second))
                    .then_some(())
            },
            &pg,
            None,
        )
        .unwrap();
        match result {
            SearchResult::Found { minimizer, .. } => assert_eq!(minimizer.weight(), 1),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn minimizer_trivial_single_generator() {
        let pg = compute_pseudogenerators(&[p("X")], 1);
        let result = find_weight_minimizer(|_| Some(()), &pg, None).unwrap();
        match result {
            SearchResult::Found { minimizer, .. } => assert_eq!(minimizer, p("X")),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn minimizer_exhaustion_is_an_error() {
        let pg = compute_pseudogenerators(&[p("X")], 1);
        let r = find_weight_minimizer(|_| None::<()>, &pg, None);
        assert!(matches!(r, Err(Error::MinimizerExhausted)));
    }

    #[test]
    fn minimizer_cutoff_truncates() {
        // only weight-2 matches exist but cutoff is 1
        let pg = compute_pseudogenerators(&[p("XI"), p("ZI"), p("IX"), p("IZ")], 2);
        let r = find_weight_minimizer(|o| (o.weight() >= 2).then_some(()), &pg, Some(1)).unwrap();
        assert!(matches!(r, SearchResult::Truncated { lower_bound: 2 }));
    }

    #[test]
    fn optimize_empty_code() {
        let code = compute_subsystem_code(&[p("X"), p("Z")]).unwrap();
        match optimize_logical_qubits(&code, None).unwrap() {
            OptimizeOutcome::Optimized { profile, .. } => assert!(profile.is_empty()),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn optimize_compass() {
        let meas = [p("XXII"), p("IIXX"), p("ZIZI"), p("IZIZ")];
        let code = compute_subsystem_code(&meas).unwrap();
        match optimize_logical_qubits(&code, None).unwrap() {
            OptimizeOutcome::Optimized { profile, code } => {
                assert_eq!(profile.distances(), &[2]);
                assert_eq!(code.logical_pairs.len(), 1);
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn profile_counts() {
        let p = DistanceProfile::new(vec![4, 3, 4, 4]);
        assert_eq!(p.distances(), &[3, 4, 4, 4]);
        assert_eq!(p.counts(), vec![(3, 1), (4, 3)]);
        assert_eq!(p.min(), Some(3));
        assert_eq!(p.max(), Some(4));
    }
}
