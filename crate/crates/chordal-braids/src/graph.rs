//! Finite simple graphs, chordality recognition, perfect elimination
//! orderings, maximal simplices, and the `S⁰` neighborhood construction.
//!
//! Vertices carry a stable total order (insertion order). That order is used
//! for canonical edge storage, deterministic tie-breaking when choosing
//! simplicial vertices, and canonical ordering of simplices, so all outputs
//! are reproducible.

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),
    #[error("duplicate vertex `{0}`")]
    DuplicateVertex(String),
    #[error("self-loop at vertex `{0}`")]
    SelfLoop(String),
    #[error("graph is not chordal")]
    NotChordal,
    #[error("vertex set {{{0}}} is not a simplex")]
    NotASimplex(String),
    #[error("vertex `{0}` is not simplicial")]
    NotSimplicial(String),
    #[error("sequence is not a valid perfect elimination ordering")]
    InvalidPeo,
    #[error("cannot parse graph: {0}")]
    Parse(String),
}

/// A finite simple undirected graph over labeled vertices.
#[derive(Debug, Clone)]
pub struct Graph {
    labels: Vec<String>,
    index: HashMap<String, usize>,
    adj: Vec<BTreeSet<usize>>,
}

impl PartialEq for Graph {
    fn eq(&self, other: &Self) -> bool {
        self.labels == other.labels && self.adj == other.adj
    }
}
impl Eq for Graph {}

/// A perfect elimination ordering: each vertex is simplicial in the subgraph
/// induced on itself and its successors.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Peo {
    order: Vec<String>,
}

impl Peo {
    pub(crate) fn from_order_unchecked(order: Vec<String>) -> Peo {
        Peo { order }
    }

    pub fn order(&self) -> &[String] {
        &self.order
    }

    pub fn len(&self) -> usize {
        self.order.len()
    }

    pub fn is_empty(&self) -> bool {
        self.order.is_empty()
    }
}

impl fmt::Display for Peo {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]", self.order.join(", "))
    }
}

/// A vertex subset inducing a complete subgraph, stored in vertex order.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Simplex {
    members: Vec<String>,
}

impl Simplex {
    pub fn members(&self) -> &[String] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, v: &str) -> bool {
        self.members.iter().any(|m| m == v)
    }

    pub fn is_subset_of(&self, other: &Simplex) -> bool {
        self.members.iter().all(|m| other.contains(m))
    }

    /// Intersection, in the shared vertex order.
    pub fn intersect(&self, other: &Simplex) -> Vec<String> {
        self.members
            .iter()
            .filter(|m| other.contains(m))
            .cloned()
            .collect()
    }
}

impl fmt::Display for Simplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{}}}", self.members.join(", "))
    }
}

#[derive(Serialize, Deserialize)]
struct GraphJson {
    vertices: Vec<String>,
    edges: Vec<(String, String)>,
}

impl Graph {
    /// Graph with the given vertices and no edges.
    pub fn new<I, S>(vertices: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let labels: Vec<String> = vertices.into_iter().map(Into::into).collect();
        let mut index = HashMap::with_capacity(labels.len());
        for (i, l) in labels.iter().enumerate() {
            if index.insert(l.clone(), i).is_some() {
                return Err(GraphError::DuplicateVertex(l.clone()));
            }
        }
        let adj = vec![BTreeSet::new(); labels.len()];
        Ok(Graph { labels, index, adj })
    }

    /// Canonical construction from vertex and edge lists. Duplicate edges
    /// collapse; self-loops and undeclared endpoints are rejected.
    pub fn from_edges<I, S, E, A, B>(vertices: I, edges: E) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
        E: IntoIterator<Item = (A, B)>,
        A: AsRef<str>,
        B: AsRef<str>,
    {
        let mut g = Graph::new(vertices)?;
        for (u, v) in edges {
            g.add_edge(u.as_ref(), v.as_ref())?;
        }
        Ok(g)
    }

    fn add_edge(&mut self, u: &str, v: &str) -> Result<(), GraphError> {
        let ui = self.idx(u)?;
        let vi = self.idx(v)?;
        if ui == vi {
            return Err(GraphError::SelfLoop(u.to_string()));
        }
        self.adj[ui].insert(vi);
        self.adj[vi].insert(ui);
        Ok(())
    }

    fn idx(&self, v: &str) -> Result<usize, GraphError> {
        self.index
            .get(v)
            .copied()
            .ok_or_else(|| GraphError::UnknownVertex(v.to_string()))
    }

    fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn vertex_count(&self) -> usize {
        self.labels.len()
    }

    pub fn vertices(&self) -> impl Iterator<Item = &str> {
        self.labels.iter().map(String::as_str)
    }

    pub fn contains_vertex(&self, v: &str) -> bool {
        self.index.contains_key(v)
    }

    /// Position of `v` in the insertion order.
    pub fn vertex_rank(&self, v: &str) -> Result<usize, GraphError> {
        self.idx(v)
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(BTreeSet::len).sum::<usize>() / 2
    }

    /// Edges as canonical pairs (lower-ranked endpoint first), in order.
    pub fn edges(&self) -> Vec<(String, String)> {
        let mut out = Vec::with_capacity(self.edge_count());
        for u in 0..self.labels.len() {
            for &v in &self.adj[u] {
                if u < v {
                    out.push((self.labels[u].clone(), self.labels[v].clone()));
                }
            }
        }
        out
    }

    pub fn has_edge(&self, u: &str, v: &str) -> Result<bool, GraphError> {
        let ui = self.idx(u)?;
        let vi = self.idx(v)?;
        Ok(self.adj[ui].contains(&vi))
    }

    /// Neighbors of `v` in vertex order.
    pub fn neighbors(&self, v: &str) -> Result<Vec<String>, GraphError> {
        let vi = self.idx(v)?;
        Ok(self.adj[vi].iter().map(|&u| self.labels[u].clone()).collect())
    }

    fn is_clique_indices(&self, members: &[usize]) -> bool {
        for (k, &u) in members.iter().enumerate() {
            for &v in &members[k + 1..] {
                if !self.adj[u].contains(&v) {
                    return false;
                }
            }
        }
        true
    }

    /// Validate that `members` induces a complete subgraph.
    pub fn simplex<I, S>(&self, members: I) -> Result<Simplex, GraphError>
    where
        I: IntoIterator<Item = S>,
        S: AsRef<str>,
    {
        let mut idxs = BTreeSet::new();
        for m in members {
            idxs.insert(self.idx(m.as_ref())?);
        }
        let idxs: Vec<usize> = idxs.into_iter().collect();
        if !self.is_clique_indices(&idxs) {
            return Err(GraphError::NotASimplex(
                idxs.iter().map(|&i| self.label(i)).collect::<Vec<_>>().join(", "),
            ));
        }
        Ok(Simplex {
            members: idxs.into_iter().map(|i| self.labels[i].clone()).collect(),
        })
    }

    /// True iff the neighborhood of `v` is a simplex.
    pub fn is_simplicial(&self, v: &str) -> Result<bool, GraphError> {
        let vi = self.idx(v)?;
        let nbrs: Vec<usize> = self.adj[vi].iter().copied().collect();
        Ok(self.is_clique_indices(&nbrs))
    }

    /// Lexicographic breadth-first search visit order, ties broken by vertex
    /// order. Quadratic, which is plenty at the scales this library targets.
    fn lex_bfs(&self) -> Vec<usize> {
        let n = self.labels.len();
        let mut labels: Vec<Vec<usize>> = vec![Vec::new(); n];
        let mut visited = vec![false; n];
        let mut order = Vec::with_capacity(n);
        for step in 0..n {
            let mut best: Option<usize> = None;
            for u in 0..n {
                if visited[u] {
                    continue;
                }
                match best {
                    None => best = Some(u),
                    Some(b) => {
                        if labels[u] > labels[b] {
                            best = Some(u);
                        }
                    }
                }
            }
            let u = best.expect("unvisited vertex exists");
            visited[u] = true;
            order.push(u);
            for &w in &self.adj[u] {
                if !visited[w] {
                    labels[w].push(n - step);
                }
            }
        }
        order
    }

    /// Independent verifier: each vertex must be simplicial in the subgraph
    /// induced on itself and its successors.
    pub fn is_valid_peo(&self, order: &[String]) -> bool {
        if order.len() != self.labels.len() {
            return false;
        }
        let mut idxs = Vec::with_capacity(order.len());
        let mut seen = BTreeSet::new();
        for v in order {
            match self.index.get(v.as_str()) {
                Some(&i) if seen.insert(i) => idxs.push(i),
                _ => return false,
            }
        }
        let mut position = vec![0usize; self.labels.len()];
        for (p, &i) in idxs.iter().enumerate() {
            position[i] = p;
        }
        for (p, &v) in idxs.iter().enumerate() {
            let later: Vec<usize> = self.adj[v]
                .iter()
                .copied()
                .filter(|&u| position[u] > p)
                .collect();
            if !self.is_clique_indices(&later) {
                return false;
            }
        }
        true
    }

    /// Chordality test: lexicographic BFS reversed gives a candidate
    /// elimination order, which is then verified. See
    /// [`Graph::is_chordal_by_cycle_inspection`] for the brute-force route
    /// used to cross-check this implementation.
    pub fn is_chordal(&self) -> bool {
        self.find_peo().is_ok()
    }

    /// Brute-force chordality oracle: a graph is chordal iff no vertex
    /// subset induces a cycle of length >= 4. Exponential in the vertex
    /// count; intended for cross-checks at desk scale.
    pub fn is_chordal_by_cycle_inspection(&self) -> bool {
        let n = self.labels.len();
        assert!(n <= 20, "cycle inspection oracle is exponential; n too large");
        for mask in 0u32..(1u32 << n) {
            if (mask.count_ones() as usize) < 4 {
                continue;
            }
            let subset: Vec<usize> = (0..n).filter(|&i| mask & (1 << i) != 0).collect();
            if self.induces_cycle(&subset) {
                return false;
            }
        }
        true
    }

    fn induces_cycle(&self, subset: &[usize]) -> bool {
        let k = subset.len();
        let in_subset: BTreeSet<usize> = subset.iter().copied().collect();
        let mut edge_count = 0;
        for &u in subset {
            let deg = self.adj[u].iter().filter(|v| in_subset.contains(v)).count();
            if deg != 2 {
                return false;
            }
            edge_count += deg;
        }
        if edge_count / 2 != k {
            return false;
        }
        // all degrees 2 and |E| = |V|: a cycle iff connected
        let mut seen = BTreeSet::new();
        let mut stack = vec![subset[0]];
        seen.insert(subset[0]);
        while let Some(u) = stack.pop() {
            for &w in &self.adj[u] {
                if in_subset.contains(&w) && seen.insert(w) {
                    stack.push(w);
                }
            }
        }
        seen.len() == k
    }

    /// A perfect elimination ordering, or `NotChordal`.
    pub fn find_peo(&self) -> Result<Peo, GraphError> {
        let order = self.lex_bfs();
        let candidate: Vec<String> = order
            .into_iter()
            .rev()
            .map(|i| self.labels[i].clone())
            .collect();
        if self.is_valid_peo(&candidate) {
            Ok(Peo { order: candidate })
        } else {
            Err(GraphError::NotChordal)
        }
    }

    /// A PEO built by greedy simplicial elimination with a caller-chosen
    /// tie-break. Used as an independently constructed second ordering.
    pub fn find_peo_greedy(&self, prefer_high_rank: bool) -> Result<Peo, GraphError> {
        if !self.is_chordal() {
            return Err(GraphError::NotChordal);
        }
        let mut remaining: Vec<String> = self.labels.clone();
        let mut order = Vec::with_capacity(self.labels.len());
        while !remaining.is_empty() {
            let sub = self.induced(remaining.iter().map(String::as_str))?;
            let mut pick: Option<String> = None;
            for v in sub.vertices() {
                if sub.is_simplicial(v)? {
                    pick = Some(v.to_string());
                    if !prefer_high_rank {
                        break;
                    }
                }
            }
            let v = pick.expect("chordal graph has a simplicial vertex");
            remaining.retain(|u| *u != v);
            order.push(v);
        }
        debug_assert!(self.is_valid_peo(&order));
        Ok(Peo { order })
    }

    /// A PEO whose last `|s|` entries are exactly the members of `s`.
    /// Exists for every simplex of a chordal graph.
    pub fn peo_with_suffix(&self, s: &Simplex) -> Result<Peo, GraphError> {
        // re-validate against this graph
        let s = self.simplex(s.members().iter())?;
        if !self.is_chordal() {
            return Err(GraphError::NotChordal);
        }
        let mut remaining: Vec<String> = self.labels.clone();
        let mut order = Vec::with_capacity(self.labels.len());
        loop {
            let outside: Vec<&String> =
                remaining.iter().filter(|v| !s.contains(v)).collect();
            if outside.is_empty() {
                break;
            }
            let sub = self.induced(remaining.iter().map(String::as_str))?;
            let mut pick: Option<String> = None;
            for v in outside {
                if sub.is_simplicial(v)? {
                    pick = Some(v.clone());
                    break;
                }
            }
            // a chordal graph always has a simplicial vertex outside any simplex
            let v = pick.expect("simplicial vertex outside the simplex");
            remaining.retain(|u| *u != v);
            order.push(v);
        }
        order.extend(s.members().iter().cloned());
        debug_assert!(self.is_valid_peo(&order));
        Ok(Peo { order })
    }

    /// All inclusion-maximal simplices, canonically ordered. Computed from a
    /// PEO: the candidate clique at `v` is `v` together with its
    /// later neighbors; non-maximal candidates are pruned.
    pub fn maximal_simplices(&self) -> Result<Vec<Simplex>, GraphError> {
        let peo = self.find_peo()?;
        let mut position = HashMap::new();
        for (p, v) in peo.order().iter().enumerate() {
            position.insert(v.clone(), p);
        }
        let mut candidates: Vec<Vec<usize>> = Vec::new();
        for (p, v) in peo.order().iter().enumerate() {
            let vi = self.idx(v)?;
            let mut clique: Vec<usize> = self.adj[vi]
                .iter()
                .copied()
                .filter(|&u| position[&self.labels[u]] > p)
                .collect();
            clique.push(vi);
            clique.sort_unstable();
            candidates.push(clique);
        }
        let mut maximal: Vec<Vec<usize>> = Vec::new();
        for c in &candidates {
            let contained = candidates
                .iter()
                .any(|d| d.len() > c.len() && c.iter().all(|x| d.contains(x)));
            if !contained && !maximal.contains(c) {
                maximal.push(c.clone());
            }
        }
        maximal.sort();
        debug_assert!(maximal.len() <= self.labels.len().max(1));
        Ok(maximal
            .into_iter()
            .map(|c| Simplex {
                members: c.into_iter().map(|i| self.labels[i].clone()).collect(),
            })
            .collect())
    }

    /// For a simplicial vertex `v`: the unique maximal simplex
    /// `S = N(v) ∪ {v}` containing it, together with
    /// `S⁰ = {s ∈ S | N(s) ⊆ S}`. Always `v ∈ S⁰`.
    pub fn s_zero(&self, v: &str) -> Result<(Simplex, Vec<String>), GraphError> {
        if !self.is_simplicial(v)? {
            return Err(GraphError::NotSimplicial(v.to_string()));
        }
        let vi = self.idx(v)?;
        let mut s_idx: Vec<usize> = self.adj[vi].iter().copied().collect();
        s_idx.push(vi);
        s_idx.sort_unstable();
        let s_set: BTreeSet<usize> = s_idx.iter().copied().collect();
        let s0: Vec<String> = s_idx
            .iter()
            .copied()
            .filter(|&u| self.adj[u].iter().all(|w| s_set.contains(w)))
            .map(|u| self.labels[u].clone())
            .collect();
        debug_assert!(s0.iter().any(|u| u == v));
        let simplex = Simplex {
            members: s_idx.into_iter().map(|i| self.labels[i].clone()).collect(),
        };
        Ok((simplex, s0))
    }

    /// Induced subgraph on `subset`, keeping the ambient vertex order.
    pub fn induced<'a, I>(&self, subset: I) -> Result<Graph, GraphError>
    where
        I: IntoIterator<Item = &'a str>,
    {
        let mut keep = BTreeSet::new();
        for v in subset {
            keep.insert(self.idx(v)?);
        }
        let labels: Vec<String> = keep.iter().map(|&i| self.labels[i].clone()).collect();
        let mut g = Graph::new(labels)?;
        for &u in &keep {
            for &v in &self.adj[u] {
                if u < v && keep.contains(&v) {
                    g.add_edge(&self.labels[u], &self.labels[v])?;
                }
            }
        }
        Ok(g)
    }

    pub fn delete_vertex(&self, v: &str) -> Result<Graph, GraphError> {
        self.idx(v)?;
        self.induced(self.labels.iter().map(String::as_str).filter(|u| *u != v))
    }

    pub fn from_json_str(text: &str) -> Result<Graph, GraphError> {
        let parsed: GraphJson =
            serde_json::from_str(text).map_err(|e| GraphError::Parse(e.to_string()))?;
        Graph::from_edges(parsed.vertices, parsed.edges)
    }

    pub fn to_json_string(&self) -> String {
        let shadow = GraphJson {
            vertices: self.labels.clone(),
            edges: self.edges(),
        };
        serde_json::to_string(&shadow).expect("graph serializes")
    }

    /// Edge-list text: one `u v` pair per line, `#` starts a comment, an
    /// optional `vertices: ...` header pins the vertex order, single tokens
    /// declare isolated vertices. Without a header, vertices are inferred in
    /// first-appearance order.
    pub fn from_edge_list_text(text: &str) -> Result<Graph, GraphError> {
        let mut declared: Option<Vec<String>> = None;
        let mut seen: Vec<String> = Vec::new();
        let mut edges: Vec<(String, String)> = Vec::new();
        let mut singles: Vec<String> = Vec::new();
        for raw in text.lines() {
            let line = match raw.find('#') {
                Some(p) => &raw[..p],
                None => raw,
            }
            .trim();
            if line.is_empty() {
                continue;
            }
            if let Some(rest) = line
                .strip_prefix("vertices:")
                .or_else(|| line.strip_prefix("vertices "))
            {
                declared = Some(rest.split_whitespace().map(str::to_string).collect());
                continue;
            }
            let toks: Vec<&str> = line.split_whitespace().collect();
            match toks.as_slice() {
                [v] => singles.push(v.to_string()),
                [u, v] => edges.push((u.to_string(), v.to_string())),
                _ => {
                    return Err(GraphError::Parse(format!(
                        "expected `u v` pair, got `{line}`"
                    )))
                }
            }
        }
        let vertices = match declared {
            Some(vs) => vs,
            None => {
                for v in singles
                    .iter()
                    .cloned()
                    .chain(edges.iter().flat_map(|(u, v)| [u.clone(), v.clone()]))
                {
                    if !seen.contains(&v) {
                        seen.push(v);
                    }
                }
                seen
            }
        };
        let g = Graph::from_edges(vertices, edges)?;
        for v in singles {
            g.idx(&v)?;
        }
        Ok(g)
    }

    pub fn to_dot(&self) -> String {
        let mut out = String::from("graph G {\n");
        for v in &self.labels {
            out.push_str(&format!("  \"{v}\";\n"));
        }
        for (u, v) in self.edges() {
            out.push_str(&format!("  \"{u}\" -- \"{v}\";\n"));
        }
        out.push_str("}\n");
        out
    }

    /// DOT rendering of the maximal-simplex intersection diagram: one node
    /// per maximal simplex, edges labeled by the intersection.
    pub fn maximal_simplex_diagram_dot(&self) -> Result<String, GraphError> {
        let cliques = self.maximal_simplices()?;
        let mut out = String::from("graph cliques {\n");
        for (i, c) in cliques.iter().enumerate() {
            out.push_str(&format!("  c{i} [label=\"{c}\"];\n"));
        }
        for i in 0..cliques.len() {
            for j in i + 1..cliques.len() {
                let meet = cliques[i].intersect(&cliques[j]);
                if !meet.is_empty() {
                    out.push_str(&format!(
                        "  c{i} -- c{j} [label=\"{{{}}}\"];\n",
                        meet.join(", ")
                    ));
                }
            }
        }
        out.push_str("}\n");
        Ok(out)
    }
}
