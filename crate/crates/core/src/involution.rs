//! The involution `θ(g) = -Q gᵀ Q` with `Q = Y^l ⊗ X^m` and its fixed points.
//!
//! On a Pauli basis element `iσ` the involution is a sign:
//! `θ(iσ) = ±iσ`, where the sign is the transpose sign of `σ` times
//! `+1` if `σ` commutes with `Q` and `-1` otherwise, negated once more.

use serde::Serialize;
use thiserror::Error;

use crate::catalog::AlgebraLabel;
use crate::classifier::{simple_dim, Summand};
use crate::closure::{ClosureError, ClosureResult};
use crate::pauli::{Letter, PauliError, PauliString};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum InvolutionError {
    #[error("l and m must both be positive, got ({l}, {m})")]
    NonPositive { l: usize, m: usize },
    #[error("upper bounds are tabulated for a4 and a14 only, got {0}")]
    UnsupportedLabel(AlgebraLabel),
    #[error("closure is on {got} qubits but the involution acts on {expected}")]
    SizeMismatch { expected: usize, got: usize },
    #[error("rotation sequence needs {needed}")]
    RotationPrecondition { needed: &'static str },
    #[error(transparent)]
    Pauli(#[from] PauliError),
    #[error(transparent)]
    Closure(#[from] ClosureError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Theta {
    pub l: usize,
    pub m: usize,
    pub q: PauliString,
}

pub fn make_theta(l: usize, m: usize) -> Result<Theta, InvolutionError> {
    if l == 0 || m == 0 {
        return Err(InvolutionError::NonPositive { l, m });
    }
    let q = block_string(&[(Letter::Y, l), (Letter::X, m)])?;
    Ok(Theta { l, m, q })
}

/// Concatenate runs of letters into one string.
fn block_string(runs: &[(Letter, usize)]) -> Result<PauliString, PauliError> {
    let letters: Vec<Letter> = runs.iter().flat_map(|&(c, k)| std::iter::repeat_n(c, k)).collect();
    PauliString::from_letters(&letters)
}

impl Theta {
    pub fn n(&self) -> usize {
        self.l + self.m
    }

    /// `θ(iσ) = iσ`.
    pub fn is_fixed(&self, sigma: &PauliString) -> Result<bool, InvolutionError> {
        let commutes = self.q.commutes(sigma)?;
        let sign = sigma.transpose_sign() * if commutes { 1 } else { -1 };
        Ok(sign == -1)
    }

    /// The fixed members of a closure, which again form a closed set.
    pub fn fixed_subset(&self, r: &ClosureResult) -> Result<ClosureResult, InvolutionError> {
        if r.n() != self.n() {
            return Err(InvolutionError::SizeMismatch { expected: self.n(), got: r.n() });
        }
        Ok(r.filtered(|p| self.is_fixed(p).unwrap_or(false))?)
    }
}

/// Structure of `(a_k^{K_n})^θ` for `k ∈ {4, 14}`.
pub fn upper_bound_summands(label: AlgebraLabel, l: usize, m: usize) -> Result<Vec<Summand>, InvolutionError> {
    if l == 0 || m == 0 {
        return Err(InvolutionError::NonPositive { l, m });
    }
    let n = l + m;
    let p = |e: usize| 1u64 << e;
    let (lo, mo) = (l % 2 == 1, m % 2 == 1);
    match label {
        AlgebraLabel::A14 => Ok(match (lo, mo) {
            (true, true) => vec![Summand::sp(p(n - 2), 2)],
            (false, false) => vec![Summand::so(p(n - 1), 2)],
            _ => vec![Summand::su(p(n - 1), 1)],
        }),
        AlgebraLabel::A4 => Ok(match (lo, mo) {
            (true, true) => vec![Summand::su(p(n - 2), 2)],
            (false, false) => vec![Summand::so(p(n - 2), 4)],
            _ => vec![Summand::so(p(n - 1), 1)],
        }),
        other => Err(InvolutionError::UnsupportedLabel(other)),
    }
}

pub fn upper_bound_dim(label: AlgebraLabel, l: usize, m: usize) -> Result<u64, InvolutionError> {
    Ok(upper_bound_summands(label, l, m)?.iter().map(|s| s.multiplicity * simple_dim(s)).sum())
}

/// `U q Uᵀ` for `U = R_0 R_1 ... R_k`, `R_j = e^{iπ/4·a_j}`; the rightmost
/// rotation acts first.
pub fn congruence_sequence(rotations: &[PauliString], q: &PauliString) -> Result<PauliString, PauliError> {
    rotations.iter().rev().try_fold(*q, |acc, a| a.quarter_congruence(&acc))
}

/// `e^{iπ/4 X⊗Z^{n-1}} e^{-iπ/4 X_1}`.
pub fn rotations_a14(l: usize, m: usize) -> Result<Vec<PauliString>, InvolutionError> {
    let n = l + m;
    let xz = block_string(&[(Letter::X, 1), (Letter::Z, n - 1)])?;
    let minus_x1 = PauliString::from_sites(n, &[(0, Letter::X)])?.times_i_pow(2);
    Ok(vec![xz, minus_x1])
}

/// `e^{iπ/4 X_2} e^{iπ/4 I⊗X⊗Z^{n-2}} e^{iπ/4 Y⊗X^{n-1}}`, for `l, m` even.
pub fn rotations_a4_even(l: usize, m: usize) -> Result<Vec<PauliString>, InvolutionError> {
    if l % 2 == 1 || m % 2 == 1 {
        return Err(InvolutionError::RotationPrecondition { needed: "l and m even" });
    }
    let n = l + m;
    Ok(vec![
        PauliString::from_sites(n, &[(1, Letter::X)])?,
        block_string(&[(Letter::I, 1), (Letter::X, 1), (Letter::Z, n - 2)])?,
        block_string(&[(Letter::Y, 1), (Letter::X, n - 1)])?,
    ])
}

/// `e^{iπ/4 Z⊗Y^{n-1}} e^{iπ/4 Y⊗X^{n-1}}`, for `l` even and `m` odd.
pub fn rotations_a4_odd(l: usize, m: usize) -> Result<Vec<PauliString>, InvolutionError> {
    if l % 2 == 1 || m.is_multiple_of(2) {
        return Err(InvolutionError::RotationPrecondition { needed: "l even and m odd" });
    }
    let n = l + m;
    Ok(vec![
        block_string(&[(Letter::Z, 1), (Letter::Y, n - 1)])?,
        block_string(&[(Letter::Y, 1), (Letter::X, n - 1)])?,
    ])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::place_on_graph;
    use crate::closure::{lie_closure, ClosureOptions};
    use crate::graph::InteractionGraph;

    fn p(s: &str) -> PauliString {
        s.parse().unwrap()
    }

    #[test]
    fn make_theta_examples() {
        assert_eq!(make_theta(1, 1).unwrap().q, p("YX"));
        assert_eq!(make_theta(2, 1).unwrap().q, p("YYX"));
        assert_eq!(make_theta(0, 1), Err(InvolutionError::NonPositive { l: 0, m: 1 }));
    }

    #[test]
    fn fixed_examples() {
        let t = make_theta(1, 1).unwrap();
        for s in ["XX", "YY", "ZI", "IZ", "XY", "YX"] {
            assert!(t.is_fixed(&p(s)).unwrap(), "{s}");
        }
        let t = make_theta(2, 1).unwrap();
        assert!(!t.is_fixed(&p("IIX")).unwrap());
        assert!(t.is_fixed(&p("ZII")).unwrap());
        assert!(t.is_fixed(&p("XX")).is_err());
    }

    #[test]
    fn upper_bound_examples() {
        assert_eq!(upper_bound_dim(AlgebraLabel::A14, 1, 2).unwrap(), 15);
        assert_eq!(upper_bound_dim(AlgebraLabel::A4, 1, 1).unwrap(), 0);
        assert_eq!(upper_bound_dim(AlgebraLabel::A4, 2, 2).unwrap(), 24);
        assert_eq!(upper_bound_dim(AlgebraLabel::A14, 2, 2).unwrap(), 56);
        assert!(upper_bound_dim(AlgebraLabel::A2, 2, 2).is_err());
    }

    #[test]
    fn fixed_subset_of_k4() {
        let r = lie_closure(
            &place_on_graph(AlgebraLabel::A14, &InteractionGraph::complete(4)).unwrap(),
            &ClosureOptions::default(),
        )
        .unwrap();
        let t = make_theta(2, 2).unwrap();
        let fixed = t.fixed_subset(&r).unwrap();
        assert_eq!(fixed.dimension(), 56);
        let kb = place_on_graph(AlgebraLabel::A14, &InteractionGraph::complete_bipartite(2, 2)).unwrap();
        for g in &kb.members {
            assert!(fixed.contains(g));
        }
        assert!(make_theta(1, 2).unwrap().fixed_subset(&r).is_err());
    }

    #[test]
    fn a14_rotation_images() {
        for (l, m) in [(1, 3), (2, 2), (3, 3), (2, 4), (1, 1)] {
            let q = make_theta(l, m).unwrap().q;
            let bar = congruence_sequence(&rotations_a14(l, m).unwrap(), &q).unwrap();
            let want = block_string(&[(Letter::Z, 1), (Letter::X, l - 1), (Letter::Y, m)]).unwrap();
            assert!(bar.canonical_eq(&want), "({l},{m}): {bar}");
        }
        for (l, m) in [(1, 2), (2, 3), (3, 2)] {
            let q = make_theta(l, m).unwrap().q;
            let bar = congruence_sequence(&rotations_a14(l, m).unwrap(), &q).unwrap();
            assert!(bar.canonical_eq(&q));
        }
    }

    #[test]
    fn a4_rotation_images() {
        for (l, m) in [(2, 2), (2, 4), (4, 2)] {
            let q = make_theta(l, m).unwrap().q;
            let bar = congruence_sequence(&rotations_a4_even(l, m).unwrap(), &q).unwrap();
            let want = block_string(&[(Letter::I, 1), (Letter::Z, l - 1), (Letter::I, m)]).unwrap();
            assert!(bar.canonical_eq(&want), "({l},{m}): {bar}");
        }
        for (l, m) in [(2, 1), (2, 3), (4, 1)] {
            let q = make_theta(l, m).unwrap().q;
            let bar = congruence_sequence(&rotations_a4_odd(l, m).unwrap(), &q).unwrap();
            let want = block_string(&[(Letter::I, 1), (Letter::Z, l - 1), (Letter::I, m)]).unwrap();
            assert!(bar.canonical_eq(&want), "({l},{m}): {bar}");
        }
        assert!(rotations_a4_even(1, 3).is_err());
        assert!(rotations_a4_odd(1, 2).is_err());
    }
}
