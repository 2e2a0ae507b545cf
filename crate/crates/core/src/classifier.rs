//! Closed-form structure of the DLA for a label placed on a graph.

use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::catalog::{place_on_graph, AlgebraKind, AlgebraLabel, CatalogError};
use crate::closure::{lie_closure, ClosureError, ClosureOptions};
use crate::graph::{Family as GraphFamily, GraphError, InteractionGraph};

/// Dimensions are exact in `u64` up to this many vertices.
pub const MAX_CLASSIFY_VERTICES: usize = 31;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ClassifyError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Catalog(#[from] CatalogError),
    #[error(transparent)]
    Closure(#[from] ClosureError),
    #[error("complete-graph table needs n >= 3, got {0}")]
    TooFewVertices(usize),
    #[error("complete-graph table covers a-type labels only, got {0}")]
    NotAType(AlgebraLabel),
    #[error("{0} has no graph normal form (its DLA depends only on counts)")]
    NoNormalForm(AlgebraLabel),
    #[error("{n} vertices exceed the classification limit of {max}")]
    TooManyVertices { n: usize, max: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Family {
    U1,
    Su,
    So,
    Sp,
    /// Dimension known from the closure oracle, structure not identified.
    /// `size` holds the dimension.
    Unidentified,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Summand {
    pub family: Family,
    pub size: u64,
    pub multiplicity: u64,
}

impl Summand {
    pub fn u1(multiplicity: u64) -> Self {
        Summand { family: Family::U1, size: 1, multiplicity }
    }

    pub fn su(size: u64, multiplicity: u64) -> Self {
        Summand { family: Family::Su, size, multiplicity }
    }

    pub fn so(size: u64, multiplicity: u64) -> Self {
        Summand { family: Family::So, size, multiplicity }
    }

    pub fn sp(size: u64, multiplicity: u64) -> Self {
        Summand { family: Family::Sp, size, multiplicity }
    }

    pub fn dim(&self) -> u64 {
        self.multiplicity * simple_dim(self)
    }
}

impl fmt::Display for Summand {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let base = match self.family {
            Family::U1 => "u(1)".to_string(),
            Family::Su => format!("su({})", self.size),
            Family::So => format!("so({})", self.size),
            Family::Sp => format!("sp({})", self.size),
            Family::Unidentified => format!("?[dim {}]", self.size),
        };
        if self.multiplicity == 1 {
            write!(f, "{base}")
        } else {
            write!(f, "{base}^{}", self.multiplicity)
        }
    }
}

/// Dimension of one copy: `su(N) = N²-1`, `so(N) = N(N-1)/2`,
/// `sp(N) = N(2N+1)`, `u(1) = 1`.
pub fn simple_dim(s: &Summand) -> u64 {
    let n = s.size;
    match s.family {
        Family::U1 => 1,
        Family::Su => n * n - 1,
        Family::So => n * (n - 1) / 2,
        Family::Sp => n * (2 * n + 1),
        Family::Unidentified => n,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Scope {
    Theorem1,
    #[serde(rename = "AppendixB_complete")]
    AppendixBComplete,
    DirectSum,
    OracleFallback,
    OutOfScope,
}

impl fmt::Display for Scope {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Scope::Theorem1 => "Theorem1",
            Scope::AppendixBComplete => "AppendixB_complete",
            Scope::DirectSum => "DirectSum",
            Scope::OracleFallback => "OracleFallback",
            Scope::OutOfScope => "OutOfScope",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Classification {
    pub algebra: AlgebraLabel,
    pub n: usize,
    pub edges: usize,
    pub connected: bool,
    pub bipartite: Option<(usize, usize)>,
    pub scope: Scope,
    pub summands: Vec<Summand>,
    pub total_dim: u64,
}

impl Classification {
    fn new(label: AlgebraLabel, g: &InteractionGraph, scope: Scope, summands: Vec<Summand>) -> Self {
        let summands = merge(summands);
        let total_dim = summands.iter().map(Summand::dim).sum();
        Classification {
            algebra: label,
            n: g.vertex_count(),
            edges: g.edge_count(),
            connected: g.is_connected(),
            bipartite: g.bipartition().map(|b| (b.left_size, b.right_size)),
            scope,
            summands,
            total_dim,
        }
    }

    pub fn is_in_scope(&self) -> bool {
        self.scope != Scope::OutOfScope
    }

    /// `su(4)^2 + u(1)` style rendering; `0` for the zero algebra.
    pub fn structure(&self) -> String {
        if self.summands.is_empty() {
            return "0".into();
        }
        self.summands.iter().map(|s| s.to_string()).collect::<Vec<_>>().join(" + ")
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "algebra": self.algebra.to_string(),
            "n": self.n,
            "E": self.edges,
            "connected": self.connected,
            "bipartite": self.bipartite.map(|(l, m)| serde_json::json!({"l": l, "m": m})),
            "scope": self.scope.to_string(),
            "summands": self.summands,
            "dim": self.total_dim,
        })
    }
}

/// Combine equal summands, keeping first-appearance order.
fn merge(summands: Vec<Summand>) -> Vec<Summand> {
    let mut out: Vec<Summand> = Vec::new();
    for s in summands {
        if s.multiplicity == 0 {
            continue;
        }
        match out.iter_mut().find(|o| o.family == s.family && o.size == s.size) {
            Some(o) => o.multiplicity += s.multiplicity,
            None => out.push(s),
        }
    }
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum NormalForm {
    CompleteGraph(usize),
    CompleteBipartite(usize, usize),
    LineOrCycle,
    TooSmall,
}

/// The graph a connected `G` is `k`-equivalent to.
pub fn normal_form(g: &InteractionGraph, label: AlgebraLabel) -> Result<NormalForm, ClassifyError> {
    if !g.is_connected() {
        return Err(GraphError::Disconnected.into());
    }
    let n = g.vertex_count();
    match label {
        AlgebraLabel::A7 | AlgebraLabel::A16 | AlgebraLabel::A20 | AlgebraLabel::A22 => {
            Ok(if n >= 3 { NormalForm::CompleteGraph(n) } else { NormalForm::TooSmall })
        }
        AlgebraLabel::A2 | AlgebraLabel::A4 | AlgebraLabel::A6 | AlgebraLabel::A14 => {
            if n < 3 {
                Ok(NormalForm::TooSmall)
            } else if g.max_degree() <= 2 {
                Ok(NormalForm::LineOrCycle)
            } else {
                match g.bipartition() {
                    None => Ok(NormalForm::CompleteGraph(n)),
                    Some(bp) => Ok(NormalForm::CompleteBipartite(bp.left_size, bp.right_size)),
                }
            }
        }
        other => Err(ClassifyError::NoNormalForm(other)),
    }
}

fn pow2(e: usize) -> u64 {
    1u64 << e
}

/// The complete-graph results for `n >= 3`.
pub fn complete_graph_summands(n: usize, label: AlgebraLabel) -> Result<Vec<Summand>, ClassifyError> {
    if label.kind() != AlgebraKind::A {
        return Err(ClassifyError::NotAType(label));
    }
    if n < 3 {
        return Err(ClassifyError::TooFewVertices(n));
    }
    check_size(n)?;
    let odd = n % 2 == 1;
    Ok(match label {
        AlgebraLabel::A0 => vec![Summand::u1((n * (n - 1) / 2) as u64)],
        AlgebraLabel::A2 => vec![Summand::so(pow2(n - 1), 2)],
        AlgebraLabel::A4 | AlgebraLabel::A7 => {
            if odd {
                vec![Summand::su(pow2(n - 1), 1)]
            } else {
                vec![Summand::su(pow2(n - 2), 4)]
            }
        }
        AlgebraLabel::A6 | AlgebraLabel::A20 | AlgebraLabel::A14 => vec![Summand::su(pow2(n - 1), 2)],
        AlgebraLabel::A16 => vec![Summand::so(pow2(n), 1)],
        AlgebraLabel::A22 => vec![Summand::su(pow2(n), 1)],
        _ => unreachable!("all a-type labels covered"),
    })
}

pub fn complete_graph_table(n: usize, label: AlgebraLabel) -> Result<Classification, ClassifyError> {
    let summands = complete_graph_summands(n, label)?;
    Ok(Classification::new(label, &InteractionGraph::complete(n), Scope::AppendixBComplete, summands))
}

/// The bipartite (`K_{l,m}`-equivalent) results for `k = 2, 4, 6, 14`.
fn bipartite_summands(l: usize, m: usize, label: AlgebraLabel) -> Vec<Summand> {
    let n = l + m;
    let (lo, mo) = (l % 2 == 1, m % 2 == 1);
    match label {
        AlgebraLabel::A2 | AlgebraLabel::A4 => match (lo, mo) {
            (true, true) => vec![Summand::su(pow2(n - 2), 2)],
            (false, false) => vec![Summand::so(pow2(n - 2), 4)],
            _ => vec![Summand::so(pow2(n - 1), 1)],
        },
        AlgebraLabel::A6 | AlgebraLabel::A7 => {
            if n % 2 == 1 {
                vec![Summand::su(pow2(n - 1), 1)]
            } else {
                vec![Summand::su(pow2(n - 2), 4)]
            }
        }
        AlgebraLabel::A14 => match (lo, mo) {
            (true, true) => vec![Summand::sp(pow2(n - 2), 2)],
            (false, false) => vec![Summand::so(pow2(n - 1), 2)],
            _ => vec![Summand::su(pow2(n - 1), 1)],
        },
        _ => unreachable!("bipartite split only for a2, a4, a6, a14"),
    }
}

/// Growth of the dimension with `n` on in-scope graphs.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Growth {
    Linear,
    Quadratic,
    Exponential,
}

pub fn growth(label: AlgebraLabel) -> Growth {
    match label {
        AlgebraLabel::B0 | AlgebraLabel::B3 => Growth::Linear,
        AlgebraLabel::A0 | AlgebraLabel::B1 => Growth::Quadratic,
        _ => Growth::Exponential,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct ClassifyOptions {
    /// Fall back to the closure oracle outside the closed-form range.
    pub oracle: bool,
    pub closure: ClosureOptions,
}

impl ClassifyOptions {
    pub fn with_oracle() -> Self {
        ClassifyOptions { oracle: true, ..Default::default() }
    }
}

fn check_size(n: usize) -> Result<(), ClassifyError> {
    if n > MAX_CLASSIFY_VERTICES {
        Err(ClassifyError::TooManyVertices { n, max: MAX_CLASSIFY_VERTICES })
    } else {
        Ok(())
    }
}

/// Closed-form classification without the oracle.
pub fn classify(g: &InteractionGraph, label: AlgebraLabel) -> Result<Classification, ClassifyError> {
    classify_with(g, label, &ClassifyOptions::default())
}

pub fn classify_with(
    g: &InteractionGraph,
    label: AlgebraLabel,
    opts: &ClassifyOptions,
) -> Result<Classification, ClassifyError> {
    let n = g.vertex_count();
    check_size(n)?;
    if n == 0 {
        return Err(CatalogError::EmptyGraph.into());
    }
    let e = g.edge_count() as u64;
    let counted = match label {
        AlgebraLabel::A0 => Some(vec![Summand::u1(e)]),
        AlgebraLabel::B0 => Some(vec![Summand::u1(n as u64)]),
        AlgebraLabel::B1 => Some(vec![Summand::u1(n as u64 + e)]),
        AlgebraLabel::B3 => Some(vec![Summand::su(2, n as u64)]),
        _ => None,
    };
    if let Some(summands) = counted {
        let scope = if g.is_connected() { Scope::Theorem1 } else { Scope::DirectSum };
        return Ok(Classification::new(label, g, scope, summands));
    }
    let comps = g.connected_components();
    if comps.len() == 1 {
        let (scope, summands) = classify_connected(g, label, opts)?;
        return Ok(Classification::new(label, g, scope, summands));
    }
    let mut all = Vec::new();
    let mut out_of_scope = false;
    for comp in comps {
        let sub = g.induced(&comp);
        let (scope, summands) = classify_connected(&sub, label, opts)?;
        out_of_scope |= scope == Scope::OutOfScope;
        all.extend(summands);
    }
    if out_of_scope {
        return Ok(Classification::new(label, g, Scope::OutOfScope, Vec::new()));
    }
    Ok(Classification::new(label, g, Scope::DirectSum, all))
}

/// Classification of a connected graph for a label outside `a0`, `b*`.
fn classify_connected(
    g: &InteractionGraph,
    label: AlgebraLabel,
    opts: &ClassifyOptions,
) -> Result<(Scope, Vec<Summand>), ClassifyError> {
    if g.edge_count() == 0 {
        // An isolated vertex carries no 2-local generator.
        return Ok((Scope::Theorem1, Vec::new()));
    }
    if let GraphFamily::Complete(k) = g.recognize()? {
        return Ok((Scope::AppendixBComplete, complete_graph_summands(k, label)?));
    }
    match normal_form(g, label)? {
        NormalForm::CompleteGraph(k) => {
            let scope = if g.max_degree() > 2 { Scope::Theorem1 } else { Scope::AppendixBComplete };
            Ok((scope, complete_graph_summands(k, label)?))
        }
        NormalForm::CompleteBipartite(l, m) => Ok((Scope::Theorem1, bipartite_summands(l, m, label))),
        NormalForm::LineOrCycle | NormalForm::TooSmall => {
            if opts.oracle {
                let r = lie_closure(&place_on_graph(label, g)?, &opts.closure)?;
                let dim = r.dimension() as u64;
                Ok((Scope::OracleFallback, vec![Summand { family: Family::Unidentified, size: dim, multiplicity: 1 }]))
            } else {
                Ok((Scope::OutOfScope, Vec::new()))
            }
        }
    }
}
