//! The symmetric 2-local generator sets and their placement on graphs.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use crate::graph::InteractionGraph;
use crate::pauli::{Letter, PauliError, PauliString};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CatalogError {
    #[error("unknown algebra label {0:?}")]
    UnknownLabel(String),
    #[error("{0} is not one of the symmetric labels")]
    NonSymmetric(String),
    #[error("no alternative generators are catalogued for {0}")]
    NoAlternative(AlgebraLabel),
    #[error("{0} needs at least one edge")]
    NoEdges(AlgebraLabel),
    #[error("graph has no vertices")]
    EmptyGraph,
    #[error(transparent)]
    Pauli(#[from] PauliError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum AlgebraKind {
    A,
    B,
}

/// One of the twelve symmetric labels `a0..a22`, `b0`, `b1`, `b3`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AlgebraLabel {
    kind: AlgebraKind,
    index: u8,
}

const A_INDICES: [u8; 9] = [0, 2, 4, 6, 7, 14, 16, 20, 22];
const B_INDICES: [u8; 3] = [0, 1, 3];

impl AlgebraLabel {
    pub const A0: AlgebraLabel = AlgebraLabel { kind: AlgebraKind::A, index: 0 };
    pub const A2: AlgebraLabel = AlgebraLabel { kind: AlgebraKind::A, index: 2 };
    pub const A4: AlgebraLabel = AlgebraLabel { kind: AlgebraKind::A, index: 4 };
    pub const A6: AlgebraLabel = AlgebraLabel { kind: AlgebraKind::A, index: 6 };
    pub const A7: AlgebraLabel = AlgebraLabel { kind: AlgebraKind::A, index: 7 };
    pub const A14: AlgebraLabel = AlgebraLabel { kind: AlgebraKind::A, index: 14 };
    pub const A16: AlgebraLabel = AlgebraLabel { kind: AlgebraKind::A, index: 16 };
    pub const A20: AlgebraLabel = AlgebraLabel { kind: AlgebraKind::A, index: 20 };
    pub const A22: AlgebraLabel = AlgebraLabel { kind: AlgebraKind::A, index: 22 };
    pub const B0: AlgebraLabel = AlgebraLabel { kind: AlgebraKind::B, index: 0 };
    pub const B1: AlgebraLabel = AlgebraLabel { kind: AlgebraKind::B, index: 1 };
    pub const B3: AlgebraLabel = AlgebraLabel { kind: AlgebraKind::B, index: 3 };

    pub const ALL: [AlgebraLabel; 12] = [
        Self::A0,
        Self::A2,
        Self::A4,
        Self::A6,
        Self::A7,
        Self::A14,
        Self::A16,
        Self::A20,
        Self::A22,
        Self::B0,
        Self::B1,
        Self::B3,
    ];

    pub const A_TYPES: [AlgebraLabel; 9] = [
        Self::A0,
        Self::A2,
        Self::A4,
        Self::A6,
        Self::A7,
        Self::A14,
        Self::A16,
        Self::A20,
        Self::A22,
    ];

    pub fn new(kind: AlgebraKind, index: u8) -> Result<Self, CatalogError> {
        let allowed: &[u8] = match kind {
            AlgebraKind::A => &A_INDICES,
            AlgebraKind::B => &B_INDICES,
        };
        let label = AlgebraLabel { kind, index };
        if allowed.contains(&index) {
            Ok(label)
        } else if (kind == AlgebraKind::A && index <= 22) || (kind == AlgebraKind::B && index <= 4) {
            Err(CatalogError::NonSymmetric(label.to_string()))
        } else {
            Err(CatalogError::UnknownLabel(label.to_string()))
        }
    }

    pub fn kind(&self) -> AlgebraKind {
        self.kind
    }

    pub fn index(&self) -> u8 {
        self.index
    }

    pub fn is_a_type(&self) -> bool {
        self.kind == AlgebraKind::A
    }
}

impl fmt::Display for AlgebraLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let k = match self.kind {
            AlgebraKind::A => 'a',
            AlgebraKind::B => 'b',
        };
        write!(f, "{k}{}", self.index)
    }
}

impl FromStr for AlgebraLabel {
    type Err = CatalogError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let unknown = || CatalogError::UnknownLabel(s.to_string());
        let t = s.trim();
        let mut chars = t.chars();
        let kind = match chars.next().map(|c| c.to_ascii_lowercase()) {
            Some('a') => AlgebraKind::A,
            Some('b') => AlgebraKind::B,
            _ => return Err(unknown()),
        };
        let rest = chars.as_str();
        if rest.is_empty() || !rest.bytes().all(|b| b.is_ascii_digit()) {
            return Err(unknown());
        }
        let index: u8 = rest.parse().map_err(|_| unknown())?;
        AlgebraLabel::new(kind, index)
    }
}

impl Serialize for AlgebraLabel {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for AlgebraLabel {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// A 2-local edge template `p ⊗ q` or a 1-local vertex template.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Template {
    Edge(Letter, Letter),
    Vertex(Letter),
}

impl Template {
    fn edge(s: &str) -> Template {
        let mut c = s.chars().map(|c| Letter::from_char(c).expect("catalog letter"));
        Template::Edge(c.next().unwrap(), c.next().unwrap())
    }
}

impl fmt::Display for Template {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Template::Edge(p, q) => write!(f, "{p}{q}"),
            Template::Vertex(p) => write!(f, "{p}"),
        }
    }
}

fn edges(list: &[&str]) -> Vec<Template> {
    list.iter().map(|s| Template::edge(s)).collect()
}

/// Primary generating templates for `label`.
///
/// The 1-local b-type generators `XI, IX` are represented once as a vertex
/// template.
pub fn catalog(label: AlgebraLabel) -> Vec<Template> {
    use Letter::*;
    match (label.kind, label.index) {
        (AlgebraKind::A, 0) => edges(&["XX"]),
        (AlgebraKind::A, 2) => edges(&["XY", "YX"]),
        (AlgebraKind::A, 4) => edges(&["XX", "YY"]),
        (AlgebraKind::A, 6) => edges(&["XX", "YZ", "ZY"]),
        (AlgebraKind::A, 7) => edges(&["XX", "YY", "ZZ"]),
        (AlgebraKind::A, 14) => edges(&["XX", "YY", "XY", "YX"]),
        (AlgebraKind::A, 16) => edges(&["XY", "YX", "YZ", "ZY"]),
        (AlgebraKind::A, 20) => edges(&["XX", "YY", "YZ", "ZY"]),
        (AlgebraKind::A, 22) => edges(&["XX", "XY", "YX", "XZ", "ZX"]),
        (AlgebraKind::B, 0) => vec![Template::Vertex(X)],
        (AlgebraKind::B, 1) => vec![Template::edge("XX"), Template::Vertex(X)],
        (AlgebraKind::B, 3) => vec![Template::Vertex(X), Template::Vertex(Y)],
        _ => unreachable!("labels are validated on construction"),
    }
}

/// Equivalent generating templates, where catalogued.
pub fn alternative_generators(label: AlgebraLabel) -> Result<Vec<Vec<Template>>, CatalogError> {
    match label {
        AlgebraLabel::A14 => Ok(vec![vec![Template::edge("XX"), Template::Vertex(Letter::Z)]]),
        AlgebraLabel::A6 => Ok(vec![edges(&["XY", "YX", "ZZ"])]),
        other => Err(CatalogError::NoAlternative(other)),
    }
}

/// A label placed on a graph, materialised as Pauli strings.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeneratorSet {
    pub label: AlgebraLabel,
    pub graph: InteractionGraph,
    pub templates: Vec<Template>,
    pub members: Vec<PauliString>,
}

impl GeneratorSet {
    pub fn n(&self) -> usize {
        self.graph.vertex_count()
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }
}

pub fn place_on_graph(label: AlgebraLabel, graph: &InteractionGraph) -> Result<GeneratorSet, CatalogError> {
    place_templates(label, &catalog(label), graph)
}

/// Place arbitrary templates: every edge in order gets each edge template in
/// both orientations, then every vertex gets each vertex template.
pub fn place_templates(
    label: AlgebraLabel,
    templates: &[Template],
    graph: &InteractionGraph,
) -> Result<GeneratorSet, CatalogError> {
    let n = graph.vertex_count();
    if n == 0 {
        return Err(CatalogError::EmptyGraph);
    }
    let has_edge_templates = templates.iter().any(|t| matches!(t, Template::Edge(..)));
    if label.is_a_type() && graph.edge_count() == 0 {
        return Err(CatalogError::NoEdges(label));
    }
    let mut members: Vec<PauliString> = Vec::new();
    let mut push = |p: PauliString| {
        if !p.is_identity() && !members.contains(&p) {
            members.push(p);
        }
    };
    if has_edge_templates {
        for (u, v) in graph.edges() {
            for t in templates {
                if let Template::Edge(p, q) = *t {
                    push(PauliString::from_sites(n, &[(u, p), (v, q)])?);
                    push(PauliString::from_sites(n, &[(u, q), (v, p)])?);
                }
            }
        }
    }
    for vertex in 0..n {
        for t in templates {
            if let Template::Vertex(p) = *t {
                push(PauliString::from_sites(n, &[(vertex, p)])?);
            }
        }
    }
    Ok(GeneratorSet { label, graph: graph.clone(), templates: templates.to_vec(), members })
}

/// Placement of the `index`-th alternative template set.
pub fn place_alternative(
    label: AlgebraLabel,
    index: usize,
    graph: &InteractionGraph,
) -> Result<GeneratorSet, CatalogError> {
    let alts = alternative_generators(label)?;
    let templates = alts.get(index).ok_or(CatalogError::NoAlternative(label))?;
    place_templates(label, templates, graph)
}
