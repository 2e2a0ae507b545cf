//! Undirected interaction graphs on qubit vertices.

use std::collections::{BTreeSet, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("edge ({u}, {v}) has an endpoint outside 0..{n}")]
    EndpointOutOfRange { u: usize, v: usize, n: usize },
    #[error("self-loop on vertex {0}")]
    SelfLoop(usize),
    #[error("graph is not connected")]
    Disconnected,
    #[error("graph parse error on line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("unknown graph shortcut {0:?}")]
    UnknownShortcut(String),
    #[error("graph enumeration is limited to at most {max} vertices, got {n}")]
    EnumerationTooLarge { n: usize, max: usize },
}

/// Simple undirected graph on vertices `0..vertex_count`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct InteractionGraph {
    n: usize,
    edges: BTreeSet<(usize, usize)>,
}

/// Two-colouring of a bipartite graph.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Bipartition {
    /// Size of the class containing vertex 0.
    pub left_size: usize,
    pub right_size: usize,
    /// `true` for vertices in the class of vertex 0 (per component: the
    /// smallest vertex of each component is "left").
    pub color: Vec<bool>,
}

impl Bipartition {
    pub fn left_mask(&self) -> u64 {
        self.color
            .iter()
            .enumerate()
            .filter(|(_, &c)| c)
            .fold(0, |m, (v, _)| m | 1 << v)
    }

    pub fn right_mask(&self) -> u64 {
        self.color
            .iter()
            .enumerate()
            .filter(|(_, &c)| !c)
            .fold(0, |m, (v, _)| m | 1 << v)
    }

    pub fn parities_odd(&self) -> (bool, bool) {
        (self.left_size % 2 == 1, self.right_size % 2 == 1)
    }
}

/// Named graph families.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Family {
    Line(usize),
    Cycle(usize),
    Complete(usize),
    /// Reported with `l <= m`.
    CompleteBipartite(usize, usize),
    Other,
}

impl InteractionGraph {
    /// Build a graph; duplicate edges (in either orientation) collapse.
    pub fn new<I>(n: usize, edges: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut set = BTreeSet::new();
        for (u, v) in edges {
            if u >= n || v >= n {
                return Err(GraphError::EndpointOutOfRange { u, v, n });
            }
            if u == v {
                return Err(GraphError::SelfLoop(u));
            }
            set.insert((u.min(v), u.max(v)));
        }
        Ok(InteractionGraph { n, edges: set })
    }

    pub fn empty(n: usize) -> Self {
        InteractionGraph { n, edges: BTreeSet::new() }
    }

    pub fn line(n: usize) -> Self {
        Self::new(n, (1..n).map(|i| (i - 1, i))).expect("valid line")
    }

    pub fn cycle(n: usize) -> Self {
        assert!(n >= 3, "cycles need at least 3 vertices");
        Self::new(n, (0..n).map(|i| (i, (i + 1) % n))).expect("valid cycle")
    }

    pub fn complete(n: usize) -> Self {
        let edges = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)));
        Self::new(n, edges).expect("valid complete graph")
    }

    /// `K_{l,m}` with the first `l` vertices on one side.
    pub fn complete_bipartite(l: usize, m: usize) -> Self {
        let edges = (0..l).flat_map(|u| (l..l + m).map(move |v| (u, v)));
        Self::new(l + m, edges).expect("valid complete bipartite graph")
    }

    /// The five-vertex tree with one branch vertex (vertex 1 has degree 3).
    pub fn sigma() -> Self {
        Self::new(5, [(0, 1), (1, 2), (1, 4), (2, 3)]).expect("valid sigma")
    }

    /// Triangle `1-2-3` with pendant vertex 0 attached to vertex 1.
    pub fn omega() -> Self {
        Self::new(4, [(0, 1), (1, 2), (2, 3), (1, 3)]).expect("valid omega")
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Edges as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.edges.iter().copied()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.edges.contains(&(u.min(v), u.max(v)))
    }

    pub fn with_edge(&self, u: usize, v: usize) -> Result<Self, GraphError> {
        Self::new(self.n, self.edges().chain([(u, v)]))
    }

    pub fn adjacency(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.n];
        for (u, v) in self.edges() {
            adj[u].push(v);
            adj[v].push(u);
        }
        adj
    }

    pub fn degrees(&self) -> Vec<usize> {
        let mut deg = vec![0; self.n];
        for (u, v) in self.edges() {
            deg[u] += 1;
            deg[v] += 1;
        }
        deg
    }

    pub fn max_degree(&self) -> usize {
        self.degrees().into_iter().max().unwrap_or(0)
    }

    /// Components as sorted vertex lists, ordered by smallest vertex.
    pub fn connected_components(&self) -> Vec<Vec<usize>> {
        let adj = self.adjacency();
        let mut seen = vec![false; self.n];
        let mut out = Vec::new();
        for start in 0..self.n {
            if seen[start] {
                continue;
            }
            seen[start] = true;
            let mut comp = vec![start];
            let mut queue = VecDeque::from([start]);
            while let Some(u) = queue.pop_front() {
                for &w in &adj[u] {
                    if !seen[w] {
                        seen[w] = true;
                        comp.push(w);
                        queue.push_back(w);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    /// Connected means exactly one component; the empty graph on zero
    /// vertices is not connected.
    pub fn is_connected(&self) -> bool {
        self.n > 0 && self.connected_components().len() == 1
    }

    /// BFS two-colouring; `None` iff some component has an odd cycle.
    pub fn bipartition(&self) -> Option<Bipartition> {
        let adj = self.adjacency();
        let mut side: Vec<Option<bool>> = vec![None; self.n];
        for start in 0..self.n {
            if side[start].is_some() {
                continue;
            }
            side[start] = Some(true);
            let mut queue = VecDeque::from([start]);
            while let Some(u) = queue.pop_front() {
                let su = side[u].unwrap();
                for &w in &adj[u] {
                    match side[w] {
                        None => {
                            side[w] = Some(!su);
                            queue.push_back(w);
                        }
                        Some(sw) if sw == su => return None,
                        Some(_) => {}
                    }
                }
            }
        }
        let color: Vec<bool> = side.into_iter().map(|s| s.unwrap()).collect();
        let left = color.iter().filter(|&&c| c).count();
        Some(Bipartition { left_size: left, right_size: self.n - left, color })
    }

    pub fn is_bipartite(&self) -> bool {
        self.bipartition().is_some()
    }

    /// Recognise the named families on a connected graph.
    ///
    /// Precedence: complete (`n >= 3`), line, cycle, complete bipartite.
    pub fn recognize(&self) -> Result<Family, GraphError> {
        if !self.is_connected() {
            return Err(GraphError::Disconnected);
        }
        let n = self.n;
        let e = self.edge_count();
        let maxd = self.max_degree();
        if n >= 3 && e == n * (n - 1) / 2 {
            return Ok(Family::Complete(n));
        }
        if e + 1 == n && maxd <= 2 {
            return Ok(Family::Line(n));
        }
        if e == n && maxd == 2 && self.degrees().iter().all(|&d| d == 2) {
            return Ok(Family::Cycle(n));
        }
        if let Some(bp) = self.bipartition() {
            if bp.left_size * bp.right_size == e {
                let (l, m) = (bp.left_size, bp.right_size);
                return Ok(Family::CompleteBipartite(l.min(m), l.max(m)));
            }
        }
        Ok(Family::Other)
    }

    /// Subgraph induced on `vertices`, relabelled `0..len` in the given order.
    pub fn induced(&self, vertices: &[usize]) -> InteractionGraph {
        let mut index = vec![usize::MAX; self.n];
        for (i, &v) in vertices.iter().enumerate() {
            index[v] = i;
        }
        let edges = self
            .edges()
            .filter(|&(u, v)| index[u] != usize::MAX && index[v] != usize::MAX)
            .map(|(u, v)| (index[u], index[v]));
        InteractionGraph::new(vertices.len(), edges).expect("induced subgraph is valid")
    }

    /// Image of the graph under `v -> perm[v]`.
    pub fn relabel(&self, perm: &[usize]) -> Result<InteractionGraph, GraphError> {
        assert_eq!(perm.len(), self.n, "permutation length must equal vertex count");
        InteractionGraph::new(self.n, self.edges().map(|(u, v)| (perm[u], perm[v])))
    }

    /// Every edge of `self` is an edge of `other` (same vertex labels).
    pub fn is_subgraph_of(&self, other: &InteractionGraph) -> bool {
        self.n == other.n && self.edges.is_subset(&other.edges)
    }

    /// Parse either the edge-list text format or the JSON form.
    pub fn parse(text: &str) -> Result<Self, GraphError> {
        if text.trim_start().starts_with('{') {
            Self::parse_json(text)
        } else {
            Self::parse_edge_list(text)
        }
    }

    /// `n <count>` header, then one `u v` pair per line; `#` starts a comment.
    pub fn parse_edge_list(text: &str) -> Result<Self, GraphError> {
        let mut n: Option<usize> = None;
        let mut edges = Vec::new();
        for (idx, raw) in text.lines().enumerate() {
            let line_no = idx + 1;
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let fields: Vec<&str> = line.split_whitespace().collect();
            let perr = |message: String| GraphError::Parse { line: line_no, message };
            match n {
                None => {
                    if fields.len() != 2 || fields[0] != "n" {
                        return Err(perr("expected header `n <count>`".into()));
                    }
                    n = Some(fields[1].parse().map_err(|_| perr(format!("bad vertex count {:?}", fields[1])))?);
                }
                Some(_) => {
                    if fields.len() != 2 {
                        return Err(perr("expected `u v`".into()));
                    }
                    let u = fields[0].parse().map_err(|_| perr(format!("bad vertex {:?}", fields[0])))?;
                    let v = fields[1].parse().map_err(|_| perr(format!("bad vertex {:?}", fields[1])))?;
                    edges.push((u, v));
                }
            }
        }
        let n = n.ok_or(GraphError::Parse { line: 0, message: "missing `n <count>` header".into() })?;
        Self::new(n, edges)
    }

    pub fn parse_json(text: &str) -> Result<Self, GraphError> {
        let file: GraphFile = serde_json::from_str(text).map_err(|e| GraphError::Parse {
            line: e.line(),
            message: e.to_string(),
        })?;
        Self::new(file.n, file.edges.into_iter().map(|[u, v]| (u, v)))
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(GraphFile { n: self.n, edges: self.edges().map(|(u, v)| [u, v]).collect() })
            .expect("graph serialises")
    }

    pub fn to_edge_list(&self) -> String {
        let mut s = format!("n {}\n", self.n);
        for (u, v) in self.edges() {
            s.push_str(&format!("{u} {v}\n"));
        }
        s
    }

    /// Inline family shortcuts: `K:5`, `Kb:2,3`, `L:4`, `C:6`, `Sigma`, `Omega`.
    pub fn from_shortcut(spec: &str) -> Result<Self, GraphError> {
        let bad = || GraphError::UnknownShortcut(spec.to_string());
        let spec = spec.trim();
        match spec {
            "Sigma" | "sigma" => return Ok(Self::sigma()),
            "Omega" | "omega" => return Ok(Self::omega()),
            _ => {}
        }
        let (kind, args) = spec.split_once(':').ok_or_else(bad)?;
        let nums: Vec<usize> = args
            .split(',')
            .map(|a| a.trim().parse::<usize>())
            .collect::<Result<_, _>>()
            .map_err(|_| bad())?;
        match (kind, nums.as_slice()) {
            ("K", [n]) if *n >= 1 => Ok(Self::complete(*n)),
            ("Kb", [l, m]) if *l >= 1 && *m >= 1 => Ok(Self::complete_bipartite(*l, *m)),
            ("L", [n]) if *n >= 1 => Ok(Self::line(*n)),
            ("C", [n]) if *n >= 3 => Ok(Self::cycle(*n)),
            _ => Err(bad()),
        }
    }
}

#[derive(Serialize, Deserialize)]
struct GraphFile {
    n: usize,
    edges: Vec<[usize; 2]>,
}

impl fmt::Debug for InteractionGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, edges={:?})", self.n, self.edges)
    }
}

/// Largest vertex count accepted by [`enumerate_connected`].
pub const MAX_ENUMERATION_VERTICES: usize = 6;

fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut perm: Vec<usize> = (0..n).collect();
    fn rec(k: usize, perm: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if k == perm.len() {
            out.push(perm.clone());
            return;
        }
        for i in k..perm.len() {
            perm.swap(k, i);
            rec(k + 1, perm, out);
            perm.swap(k, i);
        }
    }
    rec(0, &mut perm, &mut out);
    out
}

/// One representative per isomorphism class of connected graphs on `n`
/// vertices, in a deterministic order.
///
/// Canonical form is the lexicographically smallest edge bitmask over all
/// vertex permutations, which is only practical for small `n`.
pub fn enumerate_connected(n: usize) -> Result<Vec<InteractionGraph>, GraphError> {
    if n > MAX_ENUMERATION_VERTICES {
        return Err(GraphError::EnumerationTooLarge { n, max: MAX_ENUMERATION_VERTICES });
    }
    if n == 0 {
        return Ok(Vec::new());
    }
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
    let mut pair_index = vec![vec![0usize; n]; n];
    for (k, &(u, v)) in pairs.iter().enumerate() {
        pair_index[u][v] = k;
        pair_index[v][u] = k;
    }
    // Each permutation as a lookup table from pair bit to permuted pair bit.
    let maps: Vec<Vec<usize>> = permutations(n)
        .into_iter()
        .map(|p| pairs.iter().map(|&(u, v)| pair_index[p[u]][p[v]]).collect())
        .collect();
    let mut reps = BTreeSet::new();
    for mask in 0u32..(1u32 << pairs.len()) {
        if (mask.count_ones() as usize) + 1 < n {
            continue;
        }
        let canon = maps
            .iter()
            .map(|map| {
                map.iter()
                    .enumerate()
                    .filter(|&(k, _)| mask >> k & 1 == 1)
                    .fold(0u32, |acc, (_, &t)| acc | 1 << t)
            })
            .min()
            .unwrap();
        if canon != mask {
            continue;
        }
        let g = InteractionGraph::new(
            n,
            pairs.iter().enumerate().filter(|&(k, _)| mask >> k & 1 == 1).map(|(_, &e)| e),
        )?;
        if g.is_connected() {
            reps.insert((g.edge_count(), mask));
        }
    }
    Ok(reps
        .into_iter()
        .map(|(_, mask)| {
            InteractionGraph::new(
                n,
                pairs.iter().enumerate().filter(|&(k, _)| mask >> k & 1 == 1).map(|(_, &e)| e),
            )
            .expect("valid")
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn build_examples() {
        let s = InteractionGraph::sigma();
        assert_eq!(s.vertex_count(), 5);
        assert_eq!(s.edge_count(), 4);
        let o = InteractionGraph::omega();
        assert_eq!(o.edge_count(), 4);
        let e = InteractionGraph::new(3, []).unwrap();
        assert_eq!(e.edge_count(), 0);
        assert_eq!(e.connected_components().len(), 3);
    }

    #[test]
    fn build_rejects_bad_edges() {
        assert_eq!(
            InteractionGraph::new(3, [(0, 3)]),
            Err(GraphError::EndpointOutOfRange { u: 0, v: 3, n: 3 })
        );
        assert_eq!(InteractionGraph::new(3, [(1, 1)]), Err(GraphError::SelfLoop(1)));
        let g = InteractionGraph::new(3, [(0, 1), (1, 0), (0, 1)]).unwrap();
        assert_eq!(g.edge_count(), 1);
    }

    #[test]
    fn components() {
        assert_eq!(InteractionGraph::sigma().connected_components(), vec![vec![0, 1, 2, 3, 4]]);
        let two = InteractionGraph::new(4, [(0, 1), (2, 3)]).unwrap();
        assert_eq!(two.connected_components(), vec![vec![0, 1], vec![2, 3]]);
        assert_eq!(InteractionGraph::empty(2).connected_components(), vec![vec![0], vec![1]]);
    }

    #[test]
    fn bipartition_examples() {
        let bp = InteractionGraph::sigma().bipartition().unwrap();
        let mut sizes = [bp.left_size, bp.right_size];
        sizes.sort();
        assert_eq!(sizes, [2, 3]);
        assert!(InteractionGraph::omega().bipartition().is_none());
        let single = InteractionGraph::empty(1).bipartition().unwrap();
        assert_eq!((single.left_size, single.right_size), (1, 0));
        assert!(bp.color[0]);
    }

    #[test]
    fn recognize_examples() {
        assert_eq!(InteractionGraph::line(4).recognize().unwrap(), Family::Line(4));
        assert_eq!(
            InteractionGraph::complete_bipartite(2, 3).recognize().unwrap(),
            Family::CompleteBipartite(2, 3)
        );
        assert_eq!(InteractionGraph::sigma().recognize().unwrap(), Family::Other);
        assert_eq!(InteractionGraph::cycle(6).recognize().unwrap(), Family::Cycle(6));
        assert_eq!(InteractionGraph::complete(3).recognize().unwrap(), Family::Complete(3));
        assert_eq!(InteractionGraph::complete(2).recognize().unwrap(), Family::Line(2));
        assert_eq!(
            InteractionGraph::empty(2).recognize(),
            Err(GraphError::Disconnected)
        );
    }

    #[test]
    fn max_degree_examples() {
        assert_eq!(InteractionGraph::sigma().max_degree(), 3);
        assert_eq!(InteractionGraph::cycle(6).max_degree(), 2);
        assert_eq!(InteractionGraph::complete(4).max_degree(), 3);
    }

    #[test]
    fn parse_formats() {
        let text = "# sigma\nn 5\n0 1\n1 2 # hub\n1 4\n2 3\n";
        assert_eq!(InteractionGraph::parse(text).unwrap(), InteractionGraph::sigma());
        let json = r#"{"n": 5, "edges": [[0,1],[1,2],[1,4],[2,3]]}"#;
        assert_eq!(InteractionGraph::parse(json).unwrap(), InteractionGraph::sigma());
        assert!(matches!(InteractionGraph::parse("0 1\n"), Err(GraphError::Parse { line: 1, .. })));
        assert!(matches!(InteractionGraph::parse("n 2\n0 x\n"), Err(GraphError::Parse { line: 2, .. })));
        let g = InteractionGraph::omega();
        assert_eq!(InteractionGraph::parse(&g.to_edge_list()).unwrap(), g);
    }

    #[test]
    fn shortcuts() {
        assert_eq!(InteractionGraph::from_shortcut("K:5").unwrap(), InteractionGraph::complete(5));
        assert_eq!(
            InteractionGraph::from_shortcut("Kb:2,3").unwrap(),
            InteractionGraph::complete_bipartite(2, 3)
        );
        assert_eq!(InteractionGraph::from_shortcut("L:4").unwrap(), InteractionGraph::line(4));
        assert_eq!(InteractionGraph::from_shortcut("C:6").unwrap(), InteractionGraph::cycle(6));
        assert_eq!(InteractionGraph::from_shortcut("Sigma").unwrap(), InteractionGraph::sigma());
        assert!(InteractionGraph::from_shortcut("C:2").is_err());
        assert!(InteractionGraph::from_shortcut("Q:3").is_err());
    }

    #[test]
    fn enumeration_counts() {
        // Connected graphs up to isomorphism: 1, 1, 2, 6, 21, 112.
        let counts: Vec<usize> = (1..=6).map(|n| enumerate_connected(n).unwrap().len()).collect();
        assert_eq!(counts, vec![1, 1, 2, 6, 21, 112]);
        assert!(enumerate_connected(7).is_err());
    }
}
