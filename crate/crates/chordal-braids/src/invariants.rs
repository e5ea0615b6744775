//! Numerical invariants of the chordal graphical arrangement.
//!
//! Along a PEO, each elimination step fibers the arrangement complement over
//! the smaller one with fiber a plane minus `N_i` points, where `N_i`
//! counts the later neighbors of the eliminated vertex. The product
//! formulas below for the chromatic polynomial `∏(q − N_i)`, the Poincaré
//! polynomial `∏(1 + N_i t)`, and the region count `∏(1 + N_i)` are stated
//! by this artifact and validated against brute-force oracles; the test
//! suite refuses to pass when a formula and its oracle diverge.

use std::fmt;

use serde_json::{json, Value};
use thiserror::Error;

use crate::gamma::{edge_symbol, GammaError, LimitElement};
use crate::graph::{Graph, GraphError, Peo};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum InvariantError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Gamma(#[from] GammaError),
    #[error("ordering is not a valid PEO of this graph")]
    InvalidPeo,
    #[error("input too large for brute force: {0}")]
    TooLarge(String),
}

type Result<T> = std::result::Result<T, InvariantError>;

/// Later-neighbor counts along a PEO. Their sum is the edge count.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExponentVector {
    peo: Peo,
    exps: Vec<usize>,
}

impl ExponentVector {
    pub fn peo(&self) -> &Peo {
        &self.peo
    }

    pub fn exponents(&self) -> &[usize] {
        &self.exps
    }

    pub fn sum(&self) -> usize {
        self.exps.iter().sum()
    }
}

/// A univariate polynomial with exact integer coefficients,
/// `coeffs[k]` holding the coefficient of the degree-`k` term.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntPolynomial {
    coeffs: Vec<i64>,
}

impl IntPolynomial {
    pub fn zero() -> Self {
        IntPolynomial { coeffs: vec![] }
    }

    pub fn constant(c: i64) -> Self {
        IntPolynomial { coeffs: vec![c] }.trimmed()
    }

    /// `c0 + c1 x + c2 x² + …`, trailing zeros trimmed.
    pub fn from_coeffs(coeffs: Vec<i64>) -> Self {
        IntPolynomial { coeffs }.trimmed()
    }

    fn trimmed(mut self) -> Self {
        while self.coeffs.last() == Some(&0) {
            self.coeffs.pop();
        }
        self
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn mul(&self, other: &IntPolynomial) -> IntPolynomial {
        if self.coeffs.is_empty() || other.coeffs.is_empty() {
            return IntPolynomial::zero();
        }
        let mut coeffs = vec![0i64; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        IntPolynomial { coeffs }.trimmed()
    }

    pub fn eval(&self, x: i64) -> i64 {
        self.coeffs.iter().rev().fold(0i64, |acc, &c| acc * x + c)
    }

    /// Render with the given variable name, highest degree first.
    pub fn display_with(&self, var: &str) -> String {
        if self.coeffs.is_empty() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (k, &c) in self.coeffs.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            let lead = out.is_empty();
            let sign = if c < 0 { "-" } else { "+" };
            if !lead {
                out.push_str(&format!(" {sign} "));
            } else if c < 0 {
                out.push('-');
            }
            let mag = c.unsigned_abs();
            let body = match k {
                0 => mag.to_string(),
                _ if mag == 1 => format!("{var}{}", power_suffix(k)),
                _ => format!("{mag}{var}{}", power_suffix(k)),
            };
            out.push_str(&body);
        }
        if out.is_empty() {
            out.push('0');
        }
        out
    }

    pub fn to_json(&self) -> Value {
        json!(self.coeffs)
    }
}

fn power_suffix(k: usize) -> String {
    if k == 1 {
        String::new()
    } else {
        format!("^{k}")
    }
}

impl fmt::Display for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.display_with("q"))
    }
}

/// Later-neighbor counts `N_i` along `peo`.
pub fn exponents(g: &Graph, peo: &Peo) -> Result<ExponentVector> {
    if !g.is_valid_peo(peo.order()) {
        return Err(InvariantError::InvalidPeo);
    }
    let order = peo.order();
    let mut exps = Vec::with_capacity(order.len());
    for (i, v) in order.iter().enumerate() {
        let later = &order[i + 1..];
        let count = g
            .neighbors(v)?
            .iter()
            .filter(|u| later.iter().any(|w| w == *u))
            .count();
        exps.push(count);
    }
    debug_assert_eq!(exps.iter().sum::<usize>(), g.edge_count());
    Ok(ExponentVector {
        peo: peo.clone(),
        exps,
    })
}

/// The chromatic polynomial `∏_i (q − N_i)` of a chordal graph. The PEO
/// used does not matter; the coloring-count oracle agrees at every small
/// `q`.
pub fn chromatic_polynomial(g: &Graph) -> Result<IntPolynomial> {
    let peo = g.find_peo()?;
    let exps = exponents(g, &peo)?;
    let mut poly = IntPolynomial::constant(1);
    for &n in exps.exponents() {
        poly = poly.mul(&IntPolynomial::from_coeffs(vec![-(n as i64), 1]));
    }
    Ok(poly)
}

/// Exact number of proper `q`-colorings by backtracking enumeration.
pub fn brute_force_coloring_count(g: &Graph, q: u32) -> Result<u64> {
    if g.vertex_count() > 12 {
        return Err(InvariantError::TooLarge(format!(
            "{} vertices (limit 12)",
            g.vertex_count()
        )));
    }
    let n = g.vertex_count();
    let vertices: Vec<String> = g.vertices().map(str::to_string).collect();
    let mut adj_earlier: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (i, v) in vertices.iter().enumerate() {
        for u in g.neighbors(v)? {
            let j = vertices.iter().position(|w| *w == u).unwrap();
            if j < i {
                adj_earlier[i].push(j);
            }
        }
    }
    fn count(colors: &mut Vec<u32>, adj_earlier: &[Vec<usize>], q: u32, i: usize) -> u64 {
        if i == adj_earlier.len() {
            return 1;
        }
        let mut total = 0;
        'next: for c in 0..q {
            for &j in &adj_earlier[i] {
                if colors[j] == c {
                    continue 'next;
                }
            }
            colors[i] = c;
            total += count(colors, adj_earlier, q, i + 1);
        }
        total
    }
    Ok(count(&mut vec![0; n], &adj_earlier, q, 0))
}

/// The Poincaré polynomial `∏_i (1 + N_i t)` of the arrangement complement.
pub fn poincare_polynomial(g: &Graph) -> Result<IntPolynomial> {
    let peo = g.find_peo()?;
    let exps = exponents(g, &peo)?;
    let mut poly = IntPolynomial::constant(1);
    for &n in exps.exponents() {
        poly = poly.mul(&IntPolynomial::from_coeffs(vec![1, n as i64]));
    }
    Ok(poly)
}

/// Number of chambers of the real arrangement: `∏(1 + N_i)`, which equals
/// the count of acyclic orientations.
pub fn region_count(g: &Graph) -> Result<u64> {
    Ok(poincare_polynomial(g)?.eval(1) as u64)
}

/// Exact count of acyclic orientations over all `2^|E|` orientations.
pub fn brute_force_acyclic_orientations(g: &Graph) -> Result<u64> {
    let edges = g.edges();
    if edges.len() > 20 {
        return Err(InvariantError::TooLarge(format!(
            "{} edges (limit 20)",
            edges.len()
        )));
    }
    let n = g.vertex_count();
    let vertices: Vec<String> = g.vertices().map(str::to_string).collect();
    let pos = |v: &str| vertices.iter().position(|w| w == v).unwrap();
    let edge_idx: Vec<(usize, usize)> = edges.iter().map(|(u, v)| (pos(u), pos(v))).collect();
    let mut count = 0u64;
    for mask in 0u32..(1u32 << edge_idx.len()) {
        let mut out: Vec<Vec<usize>> = vec![Vec::new(); n];
        for (k, &(u, v)) in edge_idx.iter().enumerate() {
            if mask & (1 << k) != 0 {
                out[u].push(v);
            } else {
                out[v].push(u);
            }
        }
        if is_acyclic(&out) {
            count += 1;
        }
    }
    Ok(count)
}

fn is_acyclic(out: &[Vec<usize>]) -> bool {
    // 0 unseen, 1 in progress, 2 done
    let mut state = vec![0u8; out.len()];
    fn dfs(u: usize, out: &[Vec<usize>], state: &mut [u8]) -> bool {
        state[u] = 1;
        for &v in &out[u] {
            match state[v] {
                0 => {
                    if !dfs(v, out, state) {
                        return false;
                    }
                }
                1 => return false,
                _ => {}
            }
        }
        state[u] = 2;
        true
    }
    for u in 0..out.len() {
        if state[u] == 0 && !dfs(u, out, &mut state) {
            return false;
        }
    }
    true
}

/// Exponent sums per edge generator, read off the normal form. This is the
/// image in the free abelian group on the edges and does not depend on the
/// PEO.
pub fn abelianization(elt: &LimitElement) -> Result<Vec<((String, String), i64)>> {
    let g = elt.graph().clone();
    let peo = g.find_peo()?;
    let nf = elt.normal_form(&peo)?;
    let word = nf.as_edge_word()?;
    let mut out = Vec::new();
    for (u, v) in g.edges() {
        let sym = edge_symbol(&g, &u, &v)?;
        out.push(((u, v), word.exponent_sum(&sym)));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::freegroup::FreeWord;
    use crate::gamma::edge_alphabet;

    fn p3() -> Graph {
        Graph::from_edges(["a", "b", "c"], [("a", "b"), ("b", "c")]).unwrap()
    }

    fn k(n: usize) -> Graph {
        let labels: Vec<String> = (0..n).map(|i| format!("v{i}")).collect();
        let mut edges = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                edges.push((labels[i].clone(), labels[j].clone()));
            }
        }
        Graph::from_edges(labels, edges).unwrap()
    }

    #[test]
    fn exponent_examples() {
        let kg = k(4);
        let peo = kg.find_peo().unwrap();
        assert_eq!(exponents(&kg, &peo).unwrap().exponents(), &[3, 2, 1, 0]);

        let g = p3();
        let peo = Peo::from_order_unchecked(vec!["a".into(), "c".into(), "b".into()]);
        assert_eq!(exponents(&g, &peo).unwrap().exponents(), &[1, 1, 0]);

        let edgeless = Graph::new(["a", "b", "c"]).unwrap();
        let peo = edgeless.find_peo().unwrap();
        let exps = exponents(&edgeless, &peo).unwrap();
        assert_eq!(exps.exponents(), &[0, 0, 0]);
        assert_eq!(exps.sum(), 0);

        // an invalid ordering is rejected
        let c4 = Graph::from_edges(
            ["a", "b", "c", "d"],
            [("a", "b"), ("b", "c"), ("c", "d"), ("d", "a")],
        )
        .unwrap();
        let bad = Peo::from_order_unchecked(vec!["a".into(), "b".into(), "c".into(), "d".into()]);
        assert!(matches!(
            exponents(&c4, &bad),
            Err(InvariantError::InvalidPeo)
        ));
    }

    #[test]
    fn chromatic_matches_coloring_oracle() {
        // expected values computed by the brute-force oracle
        for g in [k(3), p3(), Graph::new(["a", "b"]).unwrap()] {
            let poly = chromatic_polynomial(&g).unwrap();
            for q in 0..=4 {
                assert_eq!(
                    poly.eval(q as i64),
                    brute_force_coloring_count(&g, q).unwrap() as i64,
                    "q = {q}"
                );
            }
        }
        // closed forms
        assert_eq!(
            chromatic_polynomial(&k(3)).unwrap(),
            IntPolynomial::from_coeffs(vec![0, 2, -3, 1]) // q(q-1)(q-2)
        );
        assert_eq!(
            chromatic_polynomial(&p3()).unwrap(),
            IntPolynomial::from_coeffs(vec![0, 1, -2, 1]) // q(q-1)^2
        );
        let edgeless = Graph::new(["a", "b", "c"]).unwrap();
        assert_eq!(
            chromatic_polynomial(&edgeless).unwrap(),
            IntPolynomial::from_coeffs(vec![0, 0, 0, 1]) // q^3
        );
    }

    #[test]
    fn chromatic_is_peo_invariant() {
        let g = Graph::from_edges(
            ["a", "b", "c", "d"],
            [("a", "b"), ("a", "c"), ("b", "c"), ("b", "d"), ("c", "d")],
        )
        .unwrap();
        let p1 = g.find_peo().unwrap();
        let p2 = g.peo_with_suffix(&g.simplex(["b", "c"]).unwrap()).unwrap();
        assert_ne!(p1.order(), p2.order());
        let via = |peo: &Peo| {
            exponents(&g, peo)
                .unwrap()
                .exponents()
                .iter()
                .fold(IntPolynomial::constant(1), |acc, &n| {
                    acc.mul(&IntPolynomial::from_coeffs(vec![-(n as i64), 1]))
                })
        };
        assert_eq!(via(&p1), via(&p2));
    }

    #[test]
    fn coloring_count_examples() {
        assert_eq!(brute_force_coloring_count(&k(3), 2).unwrap(), 0);
        assert_eq!(brute_force_coloring_count(&p3(), 2).unwrap(), 2);
        assert_eq!(brute_force_coloring_count(&p3(), 0).unwrap(), 0);
        let empty = Graph::new(Vec::<String>::new()).unwrap();
        assert_eq!(brute_force_coloring_count(&empty, 0).unwrap(), 1);
        assert!(matches!(
            brute_force_coloring_count(&k(13), 2),
            Err(InvariantError::TooLarge(_))
        ));
    }

    #[test]
    fn poincare_and_regions() {
        // K3: (1+t)(1+2t), six chambers, matching the orientation oracle
        let kg = k(3);
        assert_eq!(
            poincare_polynomial(&kg).unwrap(),
            IntPolynomial::from_coeffs(vec![1, 3, 2])
        );
        assert_eq!(region_count(&kg).unwrap(), 6);
        assert_eq!(brute_force_acyclic_orientations(&kg).unwrap(), 6);

        let g = p3();
        assert_eq!(
            poincare_polynomial(&g).unwrap(),
            IntPolynomial::from_coeffs(vec![1, 2, 1])
        );
        assert_eq!(region_count(&g).unwrap(), 4);
        assert_eq!(brute_force_acyclic_orientations(&g).unwrap(), 4);

        let edgeless = Graph::new(["a", "b"]).unwrap();
        assert_eq!(
            poincare_polynomial(&edgeless).unwrap(),
            IntPolynomial::constant(1)
        );
        assert_eq!(region_count(&edgeless).unwrap(), 1);

        let single_edge = Graph::from_edges(["a", "b"], [("a", "b")]).unwrap();
        assert_eq!(brute_force_acyclic_orientations(&single_edge).unwrap(), 2);
    }

    #[test]
    fn regions_equal_chromatic_at_minus_one() {
        for g in [k(3), k(4), p3()] {
            let chi = chromatic_polynomial(&g).unwrap();
            assert_eq!(chi.eval(-1).unsigned_abs(), region_count(&g).unwrap());
        }
    }

    #[test]
    fn abelianization_examples() {
        let g = p3();
        let gen = LimitElement::edge_generator(&g, "a", "b").unwrap();
        let ab = abelianization(&gen).unwrap();
        assert_eq!(
            ab,
            vec![
                (("a".to_string(), "b".to_string()), 1),
                (("b".to_string(), "c".to_string()), 0),
            ]
        );

        // commutators die in the abelianization
        let x = LimitElement::edge_generator(&g, "a", "b").unwrap();
        let y = LimitElement::edge_generator(&g, "b", "c").unwrap();
        let comm = x
            .mul(&y)
            .unwrap()
            .mul(&x.inverse())
            .unwrap()
            .mul(&y.inverse())
            .unwrap();
        assert!(abelianization(&comm).unwrap().iter().all(|(_, e)| *e == 0));

        // exponent sums
        let word = FreeWord::parse(&edge_alphabet(&g), "E[a,b]^2 E[b,c]^-1").unwrap();
        let elt = LimitElement::from_edge_word(&g, &word).unwrap();
        let ab = abelianization(&elt).unwrap();
        assert_eq!(ab[0].1, 2);
        assert_eq!(ab[1].1, -1);
    }

    #[test]
    fn layer_ranks_match_exponents() {
        let g = Graph::from_edges(
            ["a", "b", "c", "d"],
            [("a", "b"), ("a", "c"), ("b", "c"), ("b", "d"), ("c", "d")],
        )
        .unwrap();
        let peo = g.find_peo().unwrap();
        let exps = exponents(&g, &peo).unwrap();
        let nf = LimitElement::identity(&g)
            .unwrap()
            .normal_form(&peo)
            .unwrap();
        assert_eq!(nf.layer_ranks(), exps.exponents());
    }

    #[test]
    fn kernel_abelianization_is_supported_at_the_vertex() {
        // a kernel element at v only involves edges incident to v
        let g = Graph::from_edges(
            ["a", "b", "c"],
            [("a", "b"), ("b", "c"), ("a", "c")],
        )
        .unwrap();
        let e_ab = LimitElement::edge_generator(&g, "a", "b").unwrap();
        let e_ac = LimitElement::edge_generator(&g, "a", "c").unwrap();
        // conjugate of a generator at a: still in the kernel at a
        let elt = e_ac
            .mul(&e_ab)
            .unwrap()
            .mul(&e_ac.inverse())
            .unwrap();
        assert!(elt
            .delete_simplicial_vertex("a")
            .unwrap()
            .is_identity());
        for ((u, v), e) in abelianization(&elt).unwrap() {
            if e != 0 {
                assert!(u == "a" || v == "a", "edge {{{u},{v}}} not incident to a");
            }
        }
    }

    #[test]
    fn polynomial_display() {
        let chi = chromatic_polynomial(&k(3)).unwrap();
        assert_eq!(chi.to_string(), "q^3 - 3q^2 + 2q");
        assert_eq!(
            poincare_polynomial(&k(3)).unwrap().display_with("t"),
            "2t^2 + 3t + 1"
        );
        assert_eq!(IntPolynomial::zero().to_string(), "0");
        assert_eq!(IntPolynomial::constant(-5).to_string(), "-5");
    }
}
