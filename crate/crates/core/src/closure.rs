//! Lie closure of a set of Pauli strings under the commutator.
//!
//! The basis is grown in rounds. Each round takes the elements added by the
//! previous round and commutes every one of them with all earlier elements,
//! so every unordered pair is evaluated exactly once. The pair sweep only
//! reads the seen-set and may run on the rayon pool; insertion is serial and
//! in index order, so the discovered set and its order are the same for both
//! execution modes.

use rustc_hash::FxHashSet;
use serde::Serialize;
use thiserror::Error;

use crate::catalog::GeneratorSet;
use crate::pauli::{PauliError, PauliString};

/// Default cap on the basis size.
pub const DEFAULT_LIMIT: usize = 1 << 20;

/// Largest qubit count for which the seen-set is a dense `4^n` bitmap.
const DENSE_SEEN_MAX_QUBITS: usize = 13;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ClosureError {
    #[error("closure exceeded the limit of {limit} basis elements (reached {partial})")]
    LimitExceeded { limit: usize, partial: usize },
    #[error("no generators given")]
    NoGenerators,
    #[error(transparent)]
    Pauli(#[from] PauliError),
    #[error("closure check failed: [{a}, {b}] = {c} is missing from the basis")]
    NotClosed { a: PauliString, b: PauliString, c: PauliString },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Execution {
    /// Pair sweeps on the rayon pool. Without the `parallel` feature this
    /// runs sequentially.
    #[default]
    Parallel,
    Sequential,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ClosureOptions {
    pub limit: usize,
    pub execution: Execution,
    /// Re-check every pair of the final basis.
    pub verify: bool,
}

impl Default for ClosureOptions {
    fn default() -> Self {
        ClosureOptions { limit: DEFAULT_LIMIT, execution: Execution::default(), verify: false }
    }
}

impl ClosureOptions {
    pub fn with_limit(mut self, limit: usize) -> Self {
        self.limit = limit;
        self
    }

    pub fn with_execution(mut self, execution: Execution) -> Self {
        self.execution = execution;
        self
    }

    pub fn verified(mut self) -> Self {
        self.verify = true;
        self
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
pub struct ClosureStats {
    pub rounds: usize,
    pub pair_evaluations: u64,
}

/// A commutator-closed set of phase-free Pauli strings.
#[derive(Debug, Clone)]
pub struct ClosureResult {
    n: usize,
    basis: Vec<PauliString>,
    keys: FxHashSet<(u64, u64)>,
    pub generator_count: usize,
    pub stats: ClosureStats,
}

impl PartialEq for ClosureResult {
    fn eq(&self, other: &Self) -> bool {
        closure_equal(self, other)
    }
}

impl ClosureResult {
    fn from_sorted(n: usize, basis: Vec<PauliString>, generator_count: usize, stats: ClosureStats) -> Self {
        let keys = basis.iter().map(PauliString::key).collect();
        ClosureResult { n, basis, keys, generator_count, stats }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dimension(&self) -> usize {
        self.basis.len()
    }

    /// Basis in ascending string order.
    pub fn basis(&self) -> &[PauliString] {
        &self.basis
    }

    /// Canonical membership; the identity is never a member.
    pub fn contains(&self, p: &PauliString) -> bool {
        p.n() == self.n && self.keys.contains(&p.key())
    }

    pub fn is_subset_of(&self, other: &ClosureResult) -> bool {
        self.n == other.n && self.basis.iter().all(|p| other.contains(p))
    }

    /// The members satisfying `keep`, required to be closed again.
    pub fn filtered<F>(&self, keep: F) -> Result<ClosureResult, ClosureError>
    where
        F: Fn(&PauliString) -> bool,
    {
        let basis: Vec<PauliString> = self.basis.iter().copied().filter(|p| keep(p)).collect();
        let r = ClosureResult::from_sorted(self.n, basis, 0, ClosureStats::default());
        r.check_closed()?;
        Ok(r)
    }

    /// Every nonzero commutator of two members is a member.
    pub fn check_closed(&self) -> Result<(), ClosureError> {
        for (i, a) in self.basis.iter().enumerate() {
            for b in &self.basis[..i] {
                if a.anticommutes_unchecked(b) {
                    let c = a.mul_unchecked(b).canonical();
                    if !self.keys.contains(&c.key()) {
                        return Err(ClosureError::NotClosed { a: *a, b: *b, c });
                    }
                }
            }
        }
        Ok(())
    }
}

/// Canonical set equality.
pub fn closure_equal(r1: &ClosureResult, r2: &ClosureResult) -> bool {
    r1.n == r2.n && r1.basis == r2.basis
}

enum Seen {
    Dense { n: usize, bits: Vec<u64> },
    Hashed(FxHashSet<(u64, u64)>),
}

impl Seen {
    fn new(n: usize) -> Seen {
        if n <= DENSE_SEEN_MAX_QUBITS {
            Seen::Dense { n, bits: vec![0; (1usize << (2 * n)).div_ceil(64)] }
        } else {
            Seen::Hashed(FxHashSet::default())
        }
    }

    #[inline]
    fn contains(&self, p: &PauliString) -> bool {
        match self {
            Seen::Dense { n, bits } => {
                let k = (p.x_bits() | p.z_bits() << n) as usize;
                bits[k >> 6] >> (k & 63) & 1 == 1
            }
            Seen::Hashed(set) => set.contains(&p.key()),
        }
    }

    /// Returns true if `p` was not present.
    fn insert(&mut self, p: &PauliString) -> bool {
        match self {
            Seen::Dense { n, bits } => {
                let k = (p.x_bits() | p.z_bits() << *n) as usize;
                let w = &mut bits[k >> 6];
                let fresh = *w >> (k & 63) & 1 == 0;
                *w |= 1 << (k & 63);
                fresh
            }
            Seen::Hashed(set) => set.insert(p.key()),
        }
    }
}

/// New commutators of element `i` with elements `0..i` not yet seen.
fn sweep_one(elems: &[PauliString], seen: &Seen, i: usize) -> Vec<PauliString> {
    let a = elems[i];
    let mut out = Vec::new();
    for b in &elems[..i] {
        if a.anticommutes_unchecked(b) {
            let c = a.mul_unchecked(b).canonical();
            if !seen.contains(&c) {
                out.push(c);
            }
        }
    }
    out
}

fn sweep_round(elems: &[PauliString], seen: &Seen, start: usize, execution: Execution) -> Vec<Vec<PauliString>> {
    #[cfg(feature = "parallel")]
    if execution == Execution::Parallel {
        use rayon::prelude::*;
        return (start..elems.len()).into_par_iter().map(|i| sweep_one(elems, seen, i)).collect();
    }
    let _ = execution;
    (start..elems.len()).map(|i| sweep_one(elems, seen, i)).collect()
}

/// Closure of raw Pauli strings. Phases are dropped and the identity is
/// ignored.
pub fn lie_closure_of(gens: &[PauliString], opts: &ClosureOptions) -> Result<ClosureResult, ClosureError> {
    let first = gens.first().ok_or(ClosureError::NoGenerators)?;
    let n = first.n();
    for g in gens {
        if g.n() != n {
            return Err(PauliError::LengthMismatch { left: n, right: g.n() }.into());
        }
    }
    let mut seen = Seen::new(n);
    let mut elems: Vec<PauliString> = Vec::new();
    for g in gens {
        let c = g.canonical();
        if !c.is_identity() && seen.insert(&c) {
            elems.push(c);
        }
    }
    let generator_count = elems.len();
    if generator_count > opts.limit {
        return Err(ClosureError::LimitExceeded { limit: opts.limit, partial: generator_count });
    }
    let mut stats = ClosureStats::default();
    let mut start = 0;
    while start < elems.len() {
        let end = elems.len();
        stats.rounds += 1;
        // Element i is paired with 0..i.
        stats.pair_evaluations += ((start + end - 1) as u64 * (end - start) as u64) / 2;
        let found = sweep_round(&elems, &seen, start, opts.execution);
        for c in found.into_iter().flatten() {
            if seen.insert(&c) {
                elems.push(c);
                if elems.len() > opts.limit {
                    return Err(ClosureError::LimitExceeded { limit: opts.limit, partial: elems.len() });
                }
            }
        }
        start = end;
    }
    elems.sort_unstable();
    let result = ClosureResult::from_sorted(n, elems, generator_count, stats);
    if opts.verify {
        result.check_closed()?;
    }
    Ok(result)
}

pub fn lie_closure(gens: &GeneratorSet, opts: &ClosureOptions) -> Result<ClosureResult, ClosureError> {
    lie_closure_of(&gens.members, opts)
}
