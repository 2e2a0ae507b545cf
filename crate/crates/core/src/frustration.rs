//! Frustration graphs and coloured-graph reachability.
//!
//! A colouring is a subset of generators standing for their product.
//! Toggling a vertex with an odd number of coloured neighbours multiplies the
//! product by that generator, which is a nonzero commutator, so every
//! colouring reachable from a singleton is a DLA element.

use std::collections::VecDeque;
use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::pauli::{PauliError, PauliString};

/// Colourings are packed into a `u64`.
pub const MAX_GENERATORS: usize = 64;
/// Default cap on the generator count for breadth-first search.
pub const DEFAULT_SEARCH_CAP: usize = 24;
/// Largest cap accepted as an override.
pub const MAX_SEARCH_CAP: usize = 30;
/// Largest kernel dimension enumerated by [`FrustrationGraph::colorings_for_target`].
pub const MAX_KERNEL_DIM: usize = 20;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FrustrationError {
    #[error("frustration graph needs at least one generator")]
    NoGenerators,
    #[error("{count} generators exceed the maximum of {max}")]
    TooManyGenerators { count: usize, max: usize },
    #[error("search over 2^{count} colourings exceeds the cap 2^{cap}")]
    SearchTooLarge { count: usize, cap: usize },
    #[error("target has {dim} independent colourings (2^{dim}), above the cap 2^{max}")]
    KernelTooLarge { dim: usize, max: usize },
    #[error("vertex {vertex} has an even number of coloured neighbours")]
    IllegalToggle { vertex: usize },
    #[error("vertex {vertex} is out of range for {count} generators")]
    VertexOutOfRange { vertex: usize, count: usize },
    #[error(transparent)]
    Pauli(#[from] PauliError),
}

/// A subset of generator indices.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize)]
pub struct Coloring(pub u64);

impl Coloring {
    pub fn empty() -> Self {
        Coloring(0)
    }

    pub fn singleton(i: usize) -> Self {
        Coloring(1 << i)
    }

    pub fn from_indices(indices: &[usize]) -> Self {
        Coloring(indices.iter().fold(0, |m, &i| m | 1 << i))
    }

    pub fn contains(&self, i: usize) -> bool {
        self.0 >> i & 1 == 1
    }

    pub fn len(&self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(&self) -> bool {
        self.0 == 0
    }

    pub fn indices(&self) -> Vec<usize> {
        (0..64).filter(|&i| self.contains(i)).collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Action {
    Add,
    Remove,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TraceStep {
    pub vertex: usize,
    pub action: Action,
}

/// Start from a single coloured generator, then toggle vertices in order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Trace {
    pub start: usize,
    pub steps: Vec<TraceStep>,
}

impl Trace {
    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    /// Colouring after replaying every step, or the first illegal step.
    pub fn replay(&self, fg: &FrustrationGraph) -> Result<Coloring, FrustrationError> {
        fg.check_vertex(self.start)?;
        let mut c = Coloring::singleton(self.start);
        for step in &self.steps {
            let expect_add = !c.contains(step.vertex);
            if expect_add != (step.action == Action::Add) {
                return Err(FrustrationError::IllegalToggle { vertex: step.vertex });
            }
            c = fg.toggle(c, step.vertex)?;
        }
        Ok(c)
    }

    pub fn validates(&self, fg: &FrustrationGraph, target: Coloring) -> bool {
        self.replay(fg).map(|c| c == target).unwrap_or(false)
    }

    /// One line per move, e.g. `toggle g3 (add)  ->  XIIYI`.
    pub fn render(&self, fg: &FrustrationGraph) -> String {
        let mut out = String::new();
        let mut c = Coloring::singleton(self.start);
        out.push_str(&format!(
            "start  g{} = {}\n",
            self.start,
            fg.generators()[self.start].letter_string()
        ));
        for step in &self.steps {
            c = Coloring(c.0 ^ 1 << step.vertex);
            let action = match step.action {
                Action::Add => "add",
                Action::Remove => "remove",
            };
            out.push_str(&format!(
                "toggle g{} ({action})  ->  {}\n",
                step.vertex,
                fg.product_of(c).letter_string()
            ));
        }
        out
    }
}

/// Generators as vertices, edges between anticommuting pairs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FrustrationGraph {
    gens: Vec<PauliString>,
    adj: Vec<u64>,
}

impl FrustrationGraph {
    pub fn build(gens: &[PauliString]) -> Result<Self, FrustrationError> {
        let first = gens.first().ok_or(FrustrationError::NoGenerators)?;
        if gens.len() > MAX_GENERATORS {
            return Err(FrustrationError::TooManyGenerators { count: gens.len(), max: MAX_GENERATORS });
        }
        let mut adj = vec![0u64; gens.len()];
        for (i, a) in gens.iter().enumerate() {
            if a.n() != first.n() {
                return Err(PauliError::LengthMismatch { left: first.n(), right: a.n() }.into());
            }
            for (j, b) in gens.iter().enumerate().take(i) {
                if !a.commutes(b)? {
                    adj[i] |= 1 << j;
                    adj[j] |= 1 << i;
                }
            }
        }
        let gens = gens.iter().map(|g| g.canonical()).collect();
        Ok(FrustrationGraph { gens, adj })
    }

    pub fn generators(&self) -> &[PauliString] {
        &self.gens
    }

    pub fn len(&self) -> usize {
        self.gens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn n(&self) -> usize {
        self.gens[0].n()
    }

    pub fn adjacent(&self, i: usize, j: usize) -> bool {
        self.adj[i] >> j & 1 == 1
    }

    pub fn neighbors(&self, i: usize) -> Vec<usize> {
        Coloring(self.adj[i]).indices()
    }

    /// Edges `(i, j)` with `i < j`.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        (0..self.len())
            .flat_map(|i| (i + 1..self.len()).filter(move |&j| self.adjacent(i, j)).map(move |j| (i, j)))
            .collect()
    }

    fn check_vertex(&self, vertex: usize) -> Result<(), FrustrationError> {
        if vertex < self.len() {
            Ok(())
        } else {
            Err(FrustrationError::VertexOutOfRange { vertex, count: self.len() })
        }
    }

    /// Canonical product of the coloured generators.
    pub fn product_of(&self, c: Coloring) -> PauliString {
        let mut acc = PauliString::identity(self.n()).expect("n already validated");
        for i in c.indices() {
            if i < self.len() {
                acc = acc.mul_unchecked(&self.gens[i]);
            }
        }
        acc.canonical()
    }

    #[inline]
    fn legal(&self, c: u64, i: usize) -> bool {
        (self.adj[i] & c).count_ones() & 1 == 1
    }

    /// Flip vertex `i`; legal only with an odd number of coloured neighbours.
    pub fn toggle(&self, c: Coloring, i: usize) -> Result<Coloring, FrustrationError> {
        self.check_vertex(i)?;
        if self.legal(c.0, i) {
            Ok(Coloring(c.0 ^ 1 << i))
        } else {
            Err(FrustrationError::IllegalToggle { vertex: i })
        }
    }

    /// Every colouring whose product is canonically `target`.
    ///
    /// Solved over GF(2) on the packed `(x, z)` vectors: one particular
    /// solution plus every element of the kernel.
    pub fn colorings_for_target(&self, target: &PauliString) -> Result<Vec<Coloring>, FrustrationError> {
        if target.n() != self.n() {
            return Err(PauliError::LengthMismatch { left: self.n(), right: target.n() }.into());
        }
        let vec_of = |p: &PauliString| (p.x_bits() as u128) | (p.z_bits() as u128) << 64;
        // Reduced rows keyed by pivot bit, each with the generator combination it stands for.
        let mut rows: Vec<(u128, u64)> = Vec::new();
        let mut kernel: Vec<u64> = Vec::new();
        let reduce = |rows: &[(u128, u64)], mut v: u128, mut combo: u64| {
            for &(r, rc) in rows {
                let pivot = 1u128 << (127 - r.leading_zeros());
                if v & pivot != 0 {
                    v ^= r;
                    combo ^= rc;
                }
            }
            (v, combo)
        };
        for (i, g) in self.gens.iter().enumerate() {
            let (v, combo) = reduce(&rows, vec_of(g), 1 << i);
            if v == 0 {
                kernel.push(combo);
            } else {
                let pos = rows
                    .iter()
                    .position(|&(r, _)| r.leading_zeros() > v.leading_zeros())
                    .unwrap_or(rows.len());
                rows.insert(pos, (v, combo));
            }
        }
        let (residue, particular) = reduce(&rows, vec_of(target), 0);
        if residue != 0 {
            return Ok(Vec::new());
        }
        if kernel.len() > MAX_KERNEL_DIM {
            return Err(FrustrationError::KernelTooLarge { dim: kernel.len(), max: MAX_KERNEL_DIM });
        }
        let mut out: Vec<Coloring> = (0u64..1 << kernel.len())
            .map(|mask| {
                let k = kernel
                    .iter()
                    .enumerate()
                    .filter(|&(b, _)| mask >> b & 1 == 1)
                    .fold(0, |acc, (_, &kv)| acc ^ kv);
                Coloring(particular ^ k)
            })
            .collect();
        out.sort_by_key(|c| (c.len(), c.0));
        Ok(out)
    }

    /// Shortest trace from any singleton to `target`.
    pub fn reachable(&self, target: Coloring, cap: usize) -> Result<Option<Trace>, FrustrationError> {
        self.reachable_any(&[target], cap).map(|r| r.map(|(_, t)| t))
    }

    /// Breadth-first search from all singletons until any target is met.
    pub fn reachable_any(
        &self,
        targets: &[Coloring],
        cap: usize,
    ) -> Result<Option<(Coloring, Trace)>, FrustrationError> {
        let m = self.len();
        let cap = cap.min(MAX_SEARCH_CAP);
        if m > cap {
            return Err(FrustrationError::SearchTooLarge { count: m, cap });
        }
        let full = if m == 64 { u64::MAX } else { (1u64 << m) - 1 };
        let targets: Vec<u64> = targets.iter().map(|c| c.0).filter(|&t| t != 0 && t & !full == 0).collect();
        if targets.is_empty() {
            return Ok(None);
        }
        let mut is_target = vec![false; 1 << m];
        for &t in &targets {
            is_target[t as usize] = true;
        }
        // parent[c]: 0 unvisited, START for a singleton, otherwise toggled vertex + 1.
        const START: u8 = u8::MAX;
        let mut parent = vec![0u8; 1 << m];
        let mut queue: VecDeque<u32> = VecDeque::new();
        for i in 0..m {
            parent[1 << i] = START;
            queue.push_back(1 << i);
        }
        let mut found = None;
        while let Some(c) = queue.pop_front() {
            if is_target[c as usize] {
                found = Some(c);
                break;
            }
            for i in 0..m {
                if self.legal(c as u64, i) {
                    let next = c ^ 1 << i;
                    if parent[next as usize] == 0 {
                        parent[next as usize] = i as u8 + 1;
                        queue.push_back(next);
                    }
                }
            }
        }
        let Some(end) = found else { return Ok(None) };
        let mut steps = Vec::new();
        let mut c = end;
        while parent[c as usize] != START {
            let v = (parent[c as usize] - 1) as usize;
            let prev = c ^ 1 << v;
            let action = if c >> v & 1 == 1 { Action::Add } else { Action::Remove };
            steps.push(TraceStep { vertex: v, action });
            c = prev;
        }
        steps.reverse();
        let trace = Trace { start: c.trailing_zeros() as usize, steps };
        Ok(Some((Coloring(end as u64), trace)))
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "vertices": self.gens.iter().map(|g| g.letter_string()).collect::<Vec<_>>(),
            "edges": self.edges(),
        })
    }
}

impl fmt::Display for FrustrationGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, g) in self.gens.iter().enumerate() {
            let nb: Vec<String> = self.neighbors(i).iter().map(|j| format!("g{j}")).collect();
            writeln!(f, "g{i} {}: {}", g.letter_string(), nb.join(" "))?;
        }
        Ok(())
    }
}

/// Outcome of a membership query.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Membership {
    pub member: bool,
    pub coloring: Option<Coloring>,
    pub trace: Option<Trace>,
    /// Number of colourings whose product is the target.
    pub candidates: usize,
}

/// Decide `target ∈ Lie⟨gens⟩` by colouring reachability.
pub fn member_via_frustration(
    gens: &[PauliString],
    target: &PauliString,
    cap: usize,
) -> Result<(FrustrationGraph, Membership), FrustrationError> {
    let fg = FrustrationGraph::build(gens)?;
    let m = fg.membership(target, cap)?;
    Ok((fg, m))
}

impl FrustrationGraph {
    pub fn membership(&self, target: &PauliString, cap: usize) -> Result<Membership, FrustrationError> {
        let cap = cap.min(MAX_SEARCH_CAP);
        if self.len() > cap {
            return Err(FrustrationError::SearchTooLarge { count: self.len(), cap });
        }
        let colorings = self.colorings_for_target(&target.canonical())?;
        let candidates = colorings.len();
        if target.is_identity() || colorings.is_empty() {
            return Ok(Membership { member: false, coloring: None, trace: None, candidates });
        }
        match self.reachable_any(&colorings, cap)? {
            Some((c, t)) => Ok(Membership { member: true, coloring: Some(c), trace: Some(t), candidates }),
            None => Ok(Membership { member: false, coloring: None, trace: None, candidates }),
        }
    }
}
