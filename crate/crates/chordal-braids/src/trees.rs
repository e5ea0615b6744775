//! Rooted trees and their comparability graphs.
//!
//! The comparability graph `G_T` joins two vertices of a rooted tree
//! whenever one is an ancestor of the other. Such graphs are chordal, their
//! maximal simplices are the root paths of the leaves, and the group
//! `Γ(G_T)` is an iterated semidirect product whose free ranks are the
//! vertex heights. The specializations live here; the general machinery is
//! in [`crate::graph`] and [`crate::gamma`].

use std::collections::HashMap;

use serde_json::{json, Value};
use thiserror::Error;

use crate::gamma::{GammaError, LimitElement};
use crate::graph::{Graph, GraphError, Peo, Simplex};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TreeError {
    #[error("invalid tree: {0}")]
    Invalid(String),
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),
    #[error("cannot parse tree: {0}")]
    Parse(String),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Gamma(#[from] GammaError),
}

type Result<T> = std::result::Result<T, TreeError>;

/// A finite rooted tree given by a parent map.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RootedTree {
    vertices: Vec<String>,
    root: String,
    parent: HashMap<String, String>,
}

impl RootedTree {
    /// Build from a vertex list (fixing the order), the root, and the
    /// parent of every non-root vertex. The parent map must be acyclic and
    /// reach the root from every vertex.
    pub fn new<I, S>(vertices: I, root: &str, parent: &[(S, S)]) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: AsRef<str>,
    {
        let vertices: Vec<String> = vertices.into_iter().map(|s| s.as_ref().to_string()).collect();
        for (i, v) in vertices.iter().enumerate() {
            if vertices[..i].contains(v) {
                return Err(TreeError::Invalid(format!("duplicate vertex `{v}`")));
            }
        }
        if !vertices.iter().any(|v| v == root) {
            return Err(TreeError::UnknownVertex(root.to_string()));
        }
        let mut map = HashMap::new();
        for (child, par) in parent {
            let child = child.as_ref();
            let par = par.as_ref();
            for v in [child, par] {
                if !vertices.iter().any(|u| u == v) {
                    return Err(TreeError::UnknownVertex(v.to_string()));
                }
            }
            if child == root {
                return Err(TreeError::Invalid("the root has no parent".into()));
            }
            if map.insert(child.to_string(), par.to_string()).is_some() {
                return Err(TreeError::Invalid(format!("vertex `{child}` has two parents")));
            }
        }
        let tree = RootedTree {
            vertices,
            root: root.to_string(),
            parent: map,
        };
        for v in &tree.vertices {
            tree.chain_to_root(v)?;
        }
        Ok(tree)
    }

    pub fn vertices(&self) -> impl Iterator<Item = &str> {
        self.vertices.iter().map(String::as_str)
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn root(&self) -> &str {
        &self.root
    }

    pub fn parent(&self, v: &str) -> Option<&str> {
        self.parent.get(v).map(String::as_str)
    }

    pub fn children(&self, v: &str) -> Vec<&str> {
        self.vertices
            .iter()
            .filter(|c| self.parent.get(*c).map(String::as_str) == Some(v))
            .map(String::as_str)
            .collect()
    }

    pub fn leaves(&self) -> Vec<&str> {
        self.vertices
            .iter()
            .filter(|v| self.children(v).is_empty())
            .map(String::as_str)
            .collect()
    }

    /// The root path `T_v`: the vertex together with all its ancestors, in
    /// vertex order. Errors on cycles or parents that miss the root.
    pub fn chain_to_root(&self, v: &str) -> Result<Vec<String>> {
        if !self.vertices.iter().any(|u| u == v) {
            return Err(TreeError::UnknownVertex(v.to_string()));
        }
        let mut chain = vec![v.to_string()];
        let mut cur = v;
        while cur != self.root {
            cur = self.parent.get(cur).map(String::as_str).ok_or_else(|| {
                TreeError::Invalid(format!("vertex `{cur}` cannot reach the root"))
            })?;
            if chain.iter().any(|u| u == cur) {
                return Err(TreeError::Invalid("parent map has a cycle".into()));
            }
            chain.push(cur.to_string());
        }
        let rank = |u: &String| self.vertices.iter().position(|w| w == u).unwrap();
        chain.sort_by_key(rank);
        Ok(chain)
    }

    /// Number of edges on the root path: the root has height 0.
    pub fn height(&self, v: &str) -> Result<usize> {
        Ok(self.chain_to_root(v)?.len() - 1)
    }

    /// Edges between every pair of comparable vertices. The result is
    /// always chordal.
    pub fn comparability_graph(&self) -> Graph {
        let mut edges = Vec::new();
        for v in &self.vertices {
            let chain = self.chain_to_root(v).expect("validated at construction");
            for u in &chain {
                if u != v {
                    edges.push((u.clone(), v.clone()));
                }
            }
        }
        Graph::from_edges(self.vertices.clone(), edges).expect("tree vertices are distinct")
    }

    /// The maximal simplices of the comparability graph are exactly the
    /// root paths of the leaves.
    pub fn maximal_simplices_via_leaves(&self) -> Result<Vec<Simplex>> {
        let g = self.comparability_graph();
        let mut out = Vec::new();
        for leaf in self.leaves() {
            let chain = self.chain_to_root(leaf)?;
            out.push(g.simplex(chain.iter())?);
        }
        out.sort();
        Ok(out)
    }

    /// For each height `1..=n(T)`, the vertices at that height.
    pub fn semidirect_profile(&self) -> Result<Vec<(usize, Vec<String>)>> {
        let mut per_height: Vec<Vec<String>> = Vec::new();
        for v in &self.vertices {
            let h = self.height(v)?;
            if h == 0 {
                continue;
            }
            if per_height.len() < h {
                per_height.resize(h, Vec::new());
            }
            per_height[h - 1].push(v.clone());
        }
        Ok(per_height
            .into_iter()
            .enumerate()
            .map(|(i, vs)| (i + 1, vs))
            .collect())
    }

    /// A PEO of the comparability graph that removes a deepest remaining
    /// leaf at each step, ties broken by vertex order. When a vertex is
    /// eliminated all its descendants are gone, so its remaining neighbors
    /// are exactly its ancestors.
    pub fn leaves_first_peo(&self) -> Result<Peo> {
        let mut remaining: Vec<String> = self.vertices.clone();
        let mut order = Vec::with_capacity(self.vertices.len());
        while !remaining.is_empty() {
            let mut best: Option<(&String, usize)> = None;
            for v in &remaining {
                let is_leaf = !remaining
                    .iter()
                    .any(|c| self.parent.get(c).map(String::as_str) == Some(v.as_str()));
                if !is_leaf {
                    continue;
                }
                let h = self.height(v)?;
                match best {
                    Some((_, bh)) if bh >= h => {}
                    _ => best = Some((v, h)),
                }
            }
            let v = best.expect("a nonempty tree has a leaf").0.clone();
            remaining.retain(|u| *u != v);
            order.push(v);
        }
        let g = self.comparability_graph();
        if !g.is_valid_peo(&order) {
            return Err(TreeError::Invalid(
                "leaves-first order failed PEO verification".into(),
            ));
        }
        Ok(Peo::from_order_unchecked(order))
    }

    /// Does the projection of `elt` to `P(T_w)` depend only on the
    /// normal-form layers at vertices on the root path of `w`? Checked by
    /// zeroing every other layer and comparing projections.
    pub fn projection_kills_layers(&self, elt: &LimitElement, w: &str) -> Result<bool> {
        let g = self.comparability_graph();
        if *elt.graph() != g {
            return Err(TreeError::Gamma(GammaError::GraphMismatch));
        }
        let chain = self.chain_to_root(w)?;
        let peo = self.leaves_first_peo()?;
        let nf = elt.normal_form(&peo)?;
        let zeroed: Vec<_> = peo
            .order()
            .iter()
            .zip(nf.layers())
            .map(|(v, layer)| {
                if chain.iter().any(|u| u == v) {
                    layer.clone()
                } else {
                    crate::freegroup::FreeWord::identity(layer.alphabet())
                }
            })
            .collect();
        let zeroed_nf = crate::gamma::GammaNormalForm::from_layers(&g, &peo, zeroed)?;
        let stripped = LimitElement::from_normal_form(&zeroed_nf)?;
        let target = g.simplex(chain.iter())?;
        let lhs = elt.project(&target)?;
        let rhs = stripped.project(&target)?;
        Ok(lhs.equal(&rhs).map_err(GammaError::from)?)
    }

    /// Tree JSON: `{"root": r, "parent": {child: parent, ...}}` with an
    /// optional `"vertices"` list pinning the vertex order.
    pub fn from_json_str(text: &str) -> Result<RootedTree> {
        let value: Value =
            serde_json::from_str(text).map_err(|e| TreeError::Parse(e.to_string()))?;
        let root = value
            .get("root")
            .and_then(Value::as_str)
            .ok_or_else(|| TreeError::Parse("missing root".into()))?;
        let parent_obj = value
            .get("parent")
            .and_then(Value::as_object)
            .ok_or_else(|| TreeError::Parse("missing parent map".into()))?;
        let mut parent: Vec<(String, String)> = Vec::new();
        for (child, par) in parent_obj {
            let par = par
                .as_str()
                .ok_or_else(|| TreeError::Parse("parents must be strings".into()))?;
            parent.push((child.clone(), par.to_string()));
        }
        parent.sort();
        let vertices: Vec<String> = match value.get("vertices").and_then(Value::as_array) {
            Some(arr) => arr
                .iter()
                .map(|v| {
                    v.as_str()
                        .map(str::to_string)
                        .ok_or_else(|| TreeError::Parse("vertices must be strings".into()))
                })
                .collect::<Result<_>>()?,
            None => {
                let mut vs = vec![root.to_string()];
                for (c, p) in &parent {
                    for v in [p, c] {
                        if !vs.contains(v) {
                            vs.push(v.clone());
                        }
                    }
                }
                vs
            }
        };
        RootedTree::new(vertices, root, &parent)
    }

    pub fn to_json(&self) -> Value {
        let mut parent = serde_json::Map::new();
        for v in &self.vertices {
            if let Some(p) = self.parent.get(v) {
                parent.insert(v.clone(), Value::String(p.clone()));
            }
        }
        json!({
            "root": self.root,
            "vertices": self.vertices,
            "parent": Value::Object(parent),
        })
    }

    /// Newick-style input: `(a(c),b)r;` is the tree with root `r`, children
    /// `a` and `b`, and `c` below `a`. Inside the parentheses a node is a
    /// name optionally followed by its own parenthesized children; the root
    /// name follows the outer group.
    pub fn from_newick(text: &str) -> Result<RootedTree> {
        let text = text.trim().trim_end_matches(';').trim();
        let (children_src, root) = match text.rfind(')') {
            Some(close) => {
                if !text.starts_with('(') {
                    return Err(TreeError::Parse("expected leading `(`".into()));
                }
                (&text[1..close], text[close + 1..].trim())
            }
            None => ("", text),
        };
        check_newick_name(root)?;
        let mut vertices = vec![root.to_string()];
        let mut parent: Vec<(String, String)> = Vec::new();
        parse_children(children_src, root, &mut vertices, &mut parent)?;
        RootedTree::new(vertices, root, &parent)
    }
}

fn check_newick_name(name: &str) -> Result<()> {
    if name.is_empty() || name.contains(['(', ')', ',', ';']) || name.contains(char::is_whitespace)
    {
        return Err(TreeError::Parse(format!("bad vertex name `{name}`")));
    }
    Ok(())
}

fn parse_children(
    src: &str,
    parent_name: &str,
    vertices: &mut Vec<String>,
    parent: &mut Vec<(String, String)>,
) -> Result<()> {
    let src = src.trim();
    if src.is_empty() {
        return Ok(());
    }
    // split on commas at depth zero
    let mut depth = 0usize;
    let mut start = 0usize;
    let mut parts: Vec<&str> = Vec::new();
    for (i, ch) in src.char_indices() {
        match ch {
            '(' => depth += 1,
            ')' => {
                depth = depth
                    .checked_sub(1)
                    .ok_or_else(|| TreeError::Parse("unbalanced parentheses".into()))?
            }
            ',' if depth == 0 => {
                parts.push(&src[start..i]);
                start = i + 1;
            }
            _ => {}
        }
    }
    if depth != 0 {
        return Err(TreeError::Parse("unbalanced parentheses".into()));
    }
    parts.push(&src[start..]);
    for part in parts {
        let part = part.trim();
        let (name, inner) = match part.find('(') {
            Some(open) => {
                if !part.ends_with(')') {
                    return Err(TreeError::Parse(format!("bad subtree `{part}`")));
                }
                (part[..open].trim(), &part[open + 1..part.len() - 1])
            }
            None => (part, ""),
        };
        check_newick_name(name)?;
        vertices.push(name.to_string());
        parent.push((name.to_string(), parent_name.to_string()));
        parse_children(inner, name, vertices, parent)?;
    }
    Ok(())
}
