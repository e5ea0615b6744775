//! Seeded verification suites.
//!
//! Each suite checks one family of claims against an independent oracle or
//! a defining identity, over exhaustive small cases plus seeded random
//! cases. The `selftest` command and the acceptance test target both run
//! these; all randomness flows from the caller's seed, so runs are
//! reproducible.

use std::time::Instant;

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use crate::freegroup::FreeWord;
use crate::gamma::{edge_alphabet, GammaError, LimitElement};
use crate::graph::{Graph, Peo};
use crate::invariants;
use crate::purebraid::{self, BraidWord, IndexSet};
use crate::trees::RootedTree;

/// Outcome of one suite.
#[derive(Debug, Clone)]
pub struct SuiteReport {
    /// stable machine name, `criterion-N-...`
    pub name: &'static str,
    /// what was checked
    pub description: &'static str,
    pub cases: usize,
    pub failures: Vec<String>,
    pub seconds: f64,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn summary_line(&self) -> String {
        let verdict = if self.passed() { "PASS" } else { "FAIL" };
        let mut line = format!(
            "{}: {} ({} cases, {} failures, {:.1}s)",
            self.name,
            verdict,
            self.cases,
            self.failures.len(),
            self.seconds
        );
        if let Some(first) = self.failures.first() {
            line.push_str(&format!("\n    first failure: {first}"));
        }
        line
    }
}

/// Suite configuration: the seed drives every random choice; `cases`
/// overrides the per-suite default counts when set.
#[derive(Debug, Clone, Copy)]
pub struct Config {
    pub seed: u64,
    pub cases: Option<usize>,
}

impl Default for Config {
    fn default() -> Self {
        Config {
            seed: 0xC0FFEE,
            cases: None,
        }
    }
}

impl Config {
    fn count(&self, default: usize) -> usize {
        self.cases.unwrap_or(default)
    }
}

fn report(
    name: &'static str,
    description: &'static str,
    cases: usize,
    failures: Vec<String>,
    start: Instant,
) -> SuiteReport {
    SuiteReport {
        name,
        description,
        cases,
        failures,
        seconds: start.elapsed().as_secs_f64(),
    }
}

fn push_failure(failures: &mut Vec<String>, msg: String) {
    if failures.len() < 8 {
        failures.push(msg);
    }
}

// ---------------------------------------------------------------------------
// random object generators

pub fn random_graph(rng: &mut StdRng, n: usize, p: f64) -> Graph {
    let labels: Vec<String> = (0..n).map(|i| format!("v{i}")).collect();
    let mut edges = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if rng.gen_bool(p) {
                edges.push((labels[i].clone(), labels[j].clone()));
            }
        }
    }
    Graph::from_edges(labels, edges).expect("generated labels are distinct")
}

/// Random chordal graph: draw a random graph, then run the elimination game
/// along a random order, cliquing the later neighborhood of each vertex.
/// The order becomes a PEO of the filled graph.
#[allow(clippy::needless_range_loop)] // symmetric matrix writes
pub fn random_chordal_graph(rng: &mut StdRng, n: usize, p: f64) -> Graph {
    let labels: Vec<String> = (0..n).map(|i| format!("v{i}")).collect();
    let mut adj = vec![vec![false; n]; n];
    for i in 0..n {
        for j in i + 1..n {
            if rng.gen_bool(p) {
                adj[i][j] = true;
                adj[j][i] = true;
            }
        }
    }
    let mut order: Vec<usize> = (0..n).collect();
    for i in (1..n).rev() {
        let j = rng.gen_range(0..=i);
        order.swap(i, j);
    }
    let mut position = vec![0; n];
    for (p, &v) in order.iter().enumerate() {
        position[v] = p;
    }
    for &v in &order {
        let later: Vec<usize> = (0..n)
            .filter(|&u| adj[v][u] && position[u] > position[v])
            .collect();
        for (a, &x) in later.iter().enumerate() {
            for &y in &later[a + 1..] {
                adj[x][y] = true;
                adj[y][x] = true;
            }
        }
    }
    let mut edges = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if adj[i][j] {
                edges.push((labels[i].clone(), labels[j].clone()));
            }
        }
    }
    Graph::from_edges(labels, edges).expect("generated labels are distinct")
}

pub fn random_braid_word(rng: &mut StdRng, index: &IndexSet, max_len: usize) -> BraidWord {
    let n = index.len();
    let len = if n < 2 { 0 } else { rng.gen_range(0..=max_len) };
    let mut pairs = Vec::with_capacity(len);
    for _ in 0..len {
        let i = rng.gen_range(0..n);
        let mut j = rng.gen_range(0..n - 1);
        if j >= i {
            j += 1;
        }
        let sign = if rng.gen_bool(0.5) { 1 } else { -1 };
        pairs.push((index.label(i).to_string(), index.label(j).to_string(), sign));
    }
    BraidWord::from_pairs(index, pairs.iter().map(|(a, b, e)| (a.as_str(), b.as_str(), *e)))
        .expect("pairs drawn from the index set")
}

pub fn random_gamma_element(rng: &mut StdRng, g: &Graph, max_len: usize) -> LimitElement {
    let edges = g.edges();
    if edges.is_empty() {
        return LimitElement::identity(g).expect("chordal input");
    }
    let alphabet = edge_alphabet(g);
    let len = rng.gen_range(0..=max_len);
    let letters: Vec<(String, i64)> = (0..len)
        .map(|_| {
            let (u, v) = &edges[rng.gen_range(0..edges.len())];
            let sign = if rng.gen_bool(0.5) { 1 } else { -1 };
            (format!("E[{u},{v}]"), sign)
        })
        .collect();
    let word = FreeWord::from_letters(&alphabet, letters.iter().map(|(s, e)| (s.as_str(), *e)))
        .expect("symbols are edges");
    LimitElement::from_edge_word(g, &word).expect("chordal input")
}

pub fn random_tree(rng: &mut StdRng, n: usize) -> RootedTree {
    let labels: Vec<String> = (0..n).map(|i| format!("t{i}")).collect();
    let mut parent = Vec::new();
    for i in 1..n {
        let p = rng.gen_range(0..i);
        parent.push((labels[i].clone(), labels[p].clone()));
    }
    RootedTree::new(labels.clone(), &labels[0], &parent).expect("parents precede children")
}

fn all_graphs_on(n: usize) -> impl Iterator<Item = Graph> {
    let labels: Vec<String> = (0..n).map(|i| format!("v{i}")).collect();
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|i| ((i + 1)..n).map(move |j| (i, j)))
        .collect();
    let total = 1u64 << pairs.len();
    (0..total).map(move |mask| {
        let edges: Vec<(String, String)> = pairs
            .iter()
            .enumerate()
            .filter(|(k, _)| mask & (1 << k) != 0)
            .map(|(_, &(i, j))| (labels[i].clone(), labels[j].clone()))
            .collect();
        Graph::from_edges(labels.clone(), edges).expect("distinct labels")
    })
}

// ---------------------------------------------------------------------------
// suites

/// Criterion 1: the LexBFS chordality test agrees with exhaustive
/// induced-cycle inspection, on all graphs with up to 6 vertices and on
/// random graphs with 7 or 8 vertices.
pub fn suite_chordality_oracle(config: Config) -> SuiteReport {
    let start = Instant::now();
    let mut cases = 0;
    let mut failures = Vec::new();
    for n in 0..=6 {
        for g in all_graphs_on(n) {
            cases += 1;
            if g.is_chordal() != g.is_chordal_by_cycle_inspection() {
                push_failure(
                    &mut failures,
                    format!("disagreement on {}", g.to_json_string()),
                );
            }
        }
    }
    let mut rng = StdRng::seed_from_u64(config.seed ^ 0x01);
    for _ in 0..config.count(500) {
        let n = rng.gen_range(7..=8);
        let p = rng.gen_range(0.15..0.85);
        let g = random_graph(&mut rng, n, p);
        cases += 1;
        if g.is_chordal() != g.is_chordal_by_cycle_inspection() {
            push_failure(
                &mut failures,
                format!("disagreement on {}", g.to_json_string()),
            );
        }
    }
    report(
        "criterion-1-chordality-oracle",
        "LexBFS chordality matches exhaustive cycle-chord inspection",
        cases,
        failures,
        start,
    )
}

/// Criterion 2: the chromatic product formula matches brute-force coloring
/// counts for q = 0..5 and is identical across two distinct PEOs.
pub fn suite_chromatic_agreement(config: Config) -> SuiteReport {
    let start = Instant::now();
    let mut rng = StdRng::seed_from_u64(config.seed ^ 0x02);
    let mut failures = Vec::new();
    let cases = config.count(200);
    for _ in 0..cases {
        let n = rng.gen_range(1..=8);
        let p = rng.gen_range(0.2..0.8);
        let g = random_chordal_graph(&mut rng, n, p);
        let chi = match invariants::chromatic_polynomial(&g) {
            Ok(c) => c,
            Err(e) => {
                push_failure(&mut failures, format!("chromatic failed: {e}"));
                continue;
            }
        };
        for q in 0..=5u32 {
            let brute = invariants::brute_force_coloring_count(&g, q).expect("within guard");
            if chi.eval(q as i64) != brute as i64 {
                push_failure(
                    &mut failures,
                    format!(
                        "χ({q}) = {} but oracle counts {} on {}",
                        chi.eval(q as i64),
                        brute,
                        g.to_json_string()
                    ),
                );
            }
        }
        // a second, independently constructed PEO gives the same polynomial
        let peo2 = g.find_peo_greedy(true).expect("chordal by construction");
        let exps2 = invariants::exponents(&g, &peo2).expect("valid PEO");
        let chi2 = exps2.exponents().iter().fold(
            invariants::IntPolynomial::constant(1),
            |acc, &k| acc.mul(&invariants::IntPolynomial::from_coeffs(vec![-(k as i64), 1])),
        );
        if chi != chi2 {
            push_failure(
                &mut failures,
                format!("PEO-dependent chromatic polynomial on {}", g.to_json_string()),
            );
        }
    }
    report(
        "criterion-2-chromatic-agreement",
        "∏(q − N_i) equals brute-force coloring counts and is PEO-invariant",
        cases,
        failures,
        start,
    )
}

/// Criterion 3: `∏(1 + N_i)` equals the brute-force count of acyclic
/// orientations.
pub fn suite_region_count(config: Config) -> SuiteReport {
    let start = Instant::now();
    let mut rng = StdRng::seed_from_u64(config.seed ^ 0x03);
    let mut failures = Vec::new();
    let cases = config.count(100);
    for _ in 0..cases {
        let g = loop {
            let n = rng.gen_range(1..=7);
            let p = rng.gen_range(0.2..0.7);
            let g = random_chordal_graph(&mut rng, n, p);
            if g.edge_count() <= 12 {
                break g;
            }
        };
        let formula = invariants::region_count(&g).expect("chordal by construction");
        let brute = invariants::brute_force_acyclic_orientations(&g).expect("within guard");
        if formula != brute {
            push_failure(
                &mut failures,
                format!(
                    "regions {formula} vs {brute} acyclic orientations on {}",
                    g.to_json_string()
                ),
            );
        }
    }
    report(
        "criterion-3-region-count",
        "∏(1 + N_i) equals the acyclic-orientation count",
        cases,
        failures,
        start,
    )
}

/// Criterion 4: strand forgetting is functorial and is split by inclusion.
pub fn suite_braid_functoriality(config: Config) -> SuiteReport {
    let start = Instant::now();
    let mut rng = StdRng::seed_from_u64(config.seed ^ 0x04);
    let mut failures = Vec::new();
    let cases = config.count(500);
    for _ in 0..cases {
        let n = rng.gen_range(1..=4);
        let index = IndexSet::strands(n);
        let keep_j: Vec<&str> = index.labels().filter(|_| rng.gen_bool(0.7)).collect();
        let j = index.subset(keep_j).expect("subset of index");
        let keep_k: Vec<&str> = j.labels().filter(|_| rng.gen_bool(0.7)).collect();
        let k = j.subset(keep_k).expect("subset of j");
        let w = random_braid_word(&mut rng, &index, 12);

        let two_step = w
            .forget(&j)
            .and_then(|wj| wj.forget(&k))
            .expect("ordered subsets");
        let one_step = w.forget(&k).expect("ordered subset");
        match two_step.equal(&one_step) {
            Ok(true) => {}
            _ => push_failure(&mut failures, format!("forget∘forget ≠ forget on {w}")),
        }

        let wj = w.forget(&j).expect("ordered subset");
        let back = wj
            .include(&index)
            .and_then(|wi| wi.forget(&j))
            .expect("ordered subsets");
        if back != wj {
            push_failure(&mut failures, format!("forget∘include ≠ id on {wj}"));
        }
    }
    report(
        "criterion-4-braid-functoriality",
        "forget∘forget = forget and forget∘include = id",
        cases,
        failures,
        start,
    )
}

/// Criterion 5: combing round-trips through reassembly, and comb equality
/// agrees with the Artin-action oracle.
pub fn suite_comb_round_trip(config: Config) -> SuiteReport {
    let start = Instant::now();
    let mut rng = StdRng::seed_from_u64(config.seed ^ 0x05);
    let mut failures = Vec::new();
    let round_trips = config.count(1000);
    for _ in 0..round_trips {
        let n = rng.gen_range(2..=4);
        let index = IndexSet::strands(n);
        let w = random_braid_word(&mut rng, &index, 12);
        match purebraid::comb(&w).and_then(|c| purebraid::uncomb(&c)) {
            Ok(back) => match back.equal(&w) {
                Ok(true) => {}
                _ => push_failure(&mut failures, format!("uncomb(comb(w)) ≠ w for {w}")),
            },
            Err(e) => push_failure(&mut failures, format!("comb failed on {w}: {e}")),
        }
    }
    let pairs = config.count(500);
    for _ in 0..pairs {
        let n = rng.gen_range(2..=4);
        let index = IndexSet::strands(n);
        let u = random_braid_word(&mut rng, &index, 10);
        let v = if rng.gen_bool(0.3) {
            // braid-equal by construction: insert a cancelling pad
            let pad = random_braid_word(&mut rng, &index, 5);
            pad.mul(&pad.inverse())
                .and_then(|p| p.mul(&u))
                .expect("same index")
        } else {
            random_braid_word(&mut rng, &index, 10)
        };
        let via_comb = purebraid::equal_via_comb(&u, &v).expect("same index");
        let via_artin = u.equal(&v).expect("same index");
        if via_comb != via_artin {
            push_failure(
                &mut failures,
                format!("comb equality {via_comb} vs Artin {via_artin} on {u} vs {v}"),
            );
        }
    }
    report(
        "criterion-5-comb-round-trip",
        "uncomb∘comb = id and comb equality matches the Artin oracle",
        round_trips + pairs,
        failures,
        start,
    )
}

/// Criterion 6: the split tower at each simplicial vertex is exact:
/// `γ = lift(kernel part) · section(delete(γ))`, and kernel coordinates
/// exist precisely when the deletion is trivial.
pub fn suite_tower_exactness(config: Config) -> SuiteReport {
    let start = Instant::now();
    let mut rng = StdRng::seed_from_u64(config.seed ^ 0x06);
    let mut failures = Vec::new();
    let cases = config.count(300);
    for _ in 0..cases {
        let n = rng.gen_range(2..=7);
        let p = rng.gen_range(0.25..0.75);
        let g = random_chordal_graph(&mut rng, n, p);
        let gamma = random_gamma_element(&mut rng, &g, 10);
        let simplicial: Vec<String> = g
            .vertices()
            .filter(|v| g.is_simplicial(v).unwrap_or(false))
            .map(str::to_string)
            .collect();
        for v in &simplicial {
            let delta = match gamma.delete_simplicial_vertex(v) {
                Ok(d) => d,
                Err(e) => {
                    push_failure(&mut failures, format!("delete failed at {v}: {e}"));
                    continue;
                }
            };
            let section = match LimitElement::section(&delta, &g, v) {
                Ok(s) => s,
                Err(e) => {
                    push_failure(&mut failures, format!("section failed at {v}: {e}"));
                    continue;
                }
            };
            let kappa = gamma
                .mul(&section.inverse())
                .expect("same graph");
            let kernel = match kappa.kernel_word(v) {
                Ok(k) => k,
                Err(e) => {
                    push_failure(&mut failures, format!("kernel_word failed at {v}: {e}"));
                    continue;
                }
            };
            let ambient = edge_alphabet(&g);
            let lift_word =
                FreeWord::from_letters(&ambient, kernel.letters().collect::<Vec<_>>())
                    .expect("kernel symbols are ambient edges");
            let lifted =
                LimitElement::from_edge_word(&g, &lift_word).expect("chordal by construction");
            let reassembled = lifted.mul(&section).expect("same graph");
            match reassembled.equal(&gamma) {
                Ok(true) => {}
                _ => push_failure(
                    &mut failures,
                    format!("tower reassembly failed at {v} on {}", g.to_json_string()),
                ),
            }
            // kernel_word succeeds iff the deletion is trivial
            let in_kernel = delta.is_identity();
            match gamma.kernel_word(v) {
                Ok(_) if !in_kernel => push_failure(
                    &mut failures,
                    format!("kernel_word accepted a non-kernel element at {v}"),
                ),
                Err(GammaError::NotInKernel(_)) if in_kernel => push_failure(
                    &mut failures,
                    format!("kernel_word rejected a kernel element at {v}"),
                ),
                Ok(_) | Err(GammaError::NotInKernel(_)) => {}
                Err(e) => push_failure(&mut failures, format!("kernel_word error at {v}: {e}")),
            }
        }
    }
    report(
        "criterion-6-tower-exactness",
        "γ = lift(kernel) · section(delete γ) at every simplicial vertex",
        cases,
        failures,
        start,
    )
}

/// Criterion 7: normal forms round-trip, normal-form equality coincides
/// with componentwise equality, and the pull-back square accepts genuine
/// elements while rejecting corrupted tuples.
pub fn suite_main_theorem(config: Config) -> SuiteReport {
    let start = Instant::now();
    let mut rng = StdRng::seed_from_u64(config.seed ^ 0x07);
    let mut failures = Vec::new();
    let pair_cases = config.count(300);
    for _ in 0..pair_cases {
        let n = rng.gen_range(2..=6);
        let p = rng.gen_range(0.3..0.8);
        let g = random_chordal_graph(&mut rng, n, p);
        let peo = g.find_peo().expect("chordal by construction");
        let x = random_gamma_element(&mut rng, &g, 8);
        let y = if rng.gen_bool(0.35) {
            let pad = random_gamma_element(&mut rng, &g, 4);
            pad.mul(&pad.inverse()).and_then(|p| p.mul(&x)).expect("same graph")
        } else {
            random_gamma_element(&mut rng, &g, 8)
        };
        let nf_x = match x.normal_form(&peo) {
            Ok(nf) => nf,
            Err(e) => {
                push_failure(&mut failures, format!("normal form failed: {e}"));
                continue;
            }
        };
        let back = LimitElement::from_normal_form(&nf_x).expect("layers lift");
        match back.equal(&x) {
            Ok(true) => {}
            _ => push_failure(&mut failures, "normal form reassembly differs".to_string()),
        }
        if x.normal_form(&peo).expect("repeatable") != nf_x {
            push_failure(&mut failures, "normal form is not deterministic".to_string());
        }
        let nf_back = back.normal_form(&peo).expect("valid PEO");
        if nf_back != nf_x {
            push_failure(&mut failures, "round trip changed the layers".to_string());
        }
        let nf_y = y.normal_form(&peo).expect("valid PEO");
        let tuple_eq = x.equal(&y).expect("same graph");
        if tuple_eq != (nf_x == nf_y) {
            push_failure(
                &mut failures,
                format!("normal-form equality {} vs tuple equality {tuple_eq}", nf_x == nf_y),
            );
        }
        // pull-back square holds at every simplicial vertex
        for v in g.vertices() {
            if g.is_simplicial(v).expect("known vertex") {
                match x.verify_pullback_square(v) {
                    Ok(true) => {}
                    _ => push_failure(
                        &mut failures,
                        format!("pull-back square failed at {v} on a genuine element"),
                    ),
                }
            }
        }
    }
    // corrupted tuples must be rejected
    let corrupted_cases = config.count(100);
    let mut done = 0;
    while done < corrupted_cases {
        let n = rng.gen_range(3..=6);
        let p = rng.gen_range(0.3..0.8);
        let g = random_chordal_graph(&mut rng, n, p);
        let Some((v, x_lab, y_lab)) = corruption_site(&g) else {
            continue;
        };
        done += 1;
        let base = random_gamma_element(&mut rng, &g, 6);
        let (s, _) = g.s_zero(&v).expect("v is simplicial");
        let mut pairs: Vec<_> = base
            .components()
            .map(|(c, w)| (c.clone(), w.clone()))
            .collect();
        for (c, w) in &mut pairs {
            if *c == s {
                let extra = BraidWord::generator(
                    &IndexSet::new(c.members().iter().cloned()).expect("distinct members"),
                    &x_lab,
                    &y_lab,
                )
                .expect("edge inside the simplex");
                *w = w.mul(&extra).expect("same index");
            }
        }
        let corrupted = LimitElement::from_components(&g, pairs).expect("valid indexing");
        if corrupted.is_compatible().expect("checkable") {
            push_failure(
                &mut failures,
                format!("corrupted tuple stayed compatible on {}", g.to_json_string()),
            );
        }
        match corrupted.verify_pullback_square(&v) {
            Ok(false) => {}
            _ => push_failure(
                &mut failures,
                format!(
                    "pull-back square missed a corrupted tuple at {v} on {}",
                    g.to_json_string()
                ),
            ),
        }
    }
    report(
        "criterion-7-main-theorem",
        "normal forms round-trip, equality matches, pull-back square verifies",
        pair_cases + corrupted_cases,
        failures,
        start,
    )
}

/// A place to corrupt detectably: a simplicial vertex `v` whose maximal
/// simplex `S` shares an edge with another maximal simplex.
fn corruption_site(g: &Graph) -> Option<(String, String, String)> {
    let cliques = g.maximal_simplices().ok()?;
    for v in g.vertices() {
        if !g.is_simplicial(v).ok()? {
            continue;
        }
        let (s, _) = g.s_zero(v).ok()?;
        for m in &cliques {
            if *m == s {
                continue;
            }
            let meet = s.intersect(m);
            if meet.len() >= 2 {
                return Some((v.to_string(), meet[0].clone(), meet[1].clone()));
            }
        }
    }
    None
}

/// Criterion 8: over a complete graph the whole structure collapses to a
/// single pure braid group, and the two normal forms coincide layer by
/// layer.
pub fn suite_complete_graph_degeneration(config: Config) -> SuiteReport {
    let start = Instant::now();
    let mut rng = StdRng::seed_from_u64(config.seed ^ 0x08);
    let mut failures = Vec::new();
    let cases = config.count(200);
    for _ in 0..cases {
        let n = rng.gen_range(2..=4);
        let labels: Vec<String> = (1..=n).map(|i| i.to_string()).collect();
        let mut edges = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                edges.push((labels[i].clone(), labels[j].clone()));
            }
        }
        let g = Graph::from_edges(labels.clone(), edges).expect("distinct labels");
        let index = IndexSet::strands(n);

        let a = random_gamma_element(&mut rng, &g, 8);
        let b = random_gamma_element(&mut rng, &g, 8);
        let clique = g.simplex(labels.iter()).expect("complete graph");
        let pa = a.project(&clique).expect("maximal simplex");
        let pb = b.project(&clique).expect("maximal simplex");

        let prod = a.mul(&b).expect("same graph").project(&clique).expect("maximal");
        match prod.equal(&pa.mul(&pb).expect("same index")) {
            Ok(true) => {}
            _ => push_failure(&mut failures, "projection is not multiplicative".to_string()),
        }
        match (
            a.equal(&b).expect("same graph"),
            pa.equal(&pb).expect("same index"),
        ) {
            (x, y) if x == y => {}
            _ => push_failure(&mut failures, "equality differs through projection".to_string()),
        }

        // the two canonical coordinate systems split the tower on opposite
        // sides, so layers agree only up to conjugation in the kernel;
        // their abelianizations must coincide, and both must decide
        // equality the same way
        let peo = Peo::from_order_unchecked(labels.iter().rev().cloned().collect());
        let nf = a.normal_form(&peo).expect("any order is a PEO");
        let combed = purebraid::comb(&pa).expect("combing is total");
        for (k, label) in labels.iter().enumerate().skip(1) {
            let gamma_layer = nf.layer(label).expect("layer per vertex");
            let comb_layer = combed.layer(label).expect("layer per strand");
            for t in &labels[..k] {
                let e_sym = format!("E[{t},{label}]");
                let a_sym = format!("A[{t},{label}]");
                if gamma_layer.exponent_sum(&e_sym) != comb_layer.exponent_sum(&a_sym) {
                    push_failure(
                        &mut failures,
                        format!("abelianized layer at strand {label} differs from combing"),
                    );
                }
            }
        }
        let nf_eq = nf == b.normal_form(&peo).expect("any order is a PEO");
        let comb_eq = purebraid::equal_via_comb(&pa, &pb).expect("same index");
        if nf_eq != comb_eq {
            push_failure(
                &mut failures,
                "normal-form equality differs from comb equality".to_string(),
            );
        }
        let _ = index;
    }
    report(
        "criterion-8-complete-graph",
        "Γ(K_n) operations agree with P(n) operations",
        cases,
        failures,
        start,
    )
}

/// Criterion 9: comparability graphs of rooted trees are chordal, their
/// maximal simplices are the leaf chains, normal-form ranks equal vertex
/// heights, and projections only see the layers below the target vertex.
pub fn suite_rooted_trees(config: Config) -> SuiteReport {
    let start = Instant::now();
    let mut rng = StdRng::seed_from_u64(config.seed ^ 0x09);
    let mut failures = Vec::new();
    let cases = config.count(100);
    for _ in 0..cases {
        let n = rng.gen_range(1..=9);
        let t = random_tree(&mut rng, n);
        let g = t.comparability_graph();
        if !g.is_chordal() {
            push_failure(
                &mut failures,
                format!("comparability graph not chordal: {}", g.to_json_string()),
            );
            continue;
        }
        let via_leaves = t.maximal_simplices_via_leaves().expect("valid tree");
        let generic = g.maximal_simplices().expect("chordal");
        if via_leaves != generic {
            push_failure(
                &mut failures,
                format!("leaf cliques differ from enumeration on {}", g.to_json_string()),
            );
        }
        let peo = t.leaves_first_peo().expect("valid tree");
        let elt = random_gamma_element(&mut rng, &g, 6);
        let nf = elt.normal_form(&peo).expect("valid PEO");
        for (v, rank) in peo.order().iter().zip(nf.layer_ranks()) {
            let h = t.height(v).expect("known vertex");
            if rank != h {
                push_failure(
                    &mut failures,
                    format!("layer rank {rank} ≠ height {h} at {v}"),
                );
            }
        }
        for w in t.vertices() {
            match t.projection_kills_layers(&elt, w) {
                Ok(true) => {}
                _ => push_failure(
                    &mut failures,
                    format!("projection at {w} saw layers outside its chain"),
                ),
            }
        }
    }
    report(
        "criterion-9-rooted-trees",
        "tree specialization: chordality, leaf cliques, heights, projections",
        cases,
        failures,
        start,
    )
}

/// Run every suite in order.
pub fn run_all(config: Config) -> Vec<SuiteReport> {
    vec![
        suite_chordality_oracle(config),
        suite_chromatic_agreement(config),
        suite_region_count(config),
        suite_braid_functoriality(config),
        suite_comb_round_trip(config),
        suite_tower_exactness(config),
        suite_main_theorem(config),
        suite_complete_graph_degeneration(config),
        suite_rooted_trees(config),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small(seed: u64) -> Config {
        Config {
            seed,
            cases: Some(8),
        }
    }

    #[test]
    fn generators_are_deterministic() {
        let g1 = random_chordal_graph(&mut StdRng::seed_from_u64(5), 6, 0.5);
        let g2 = random_chordal_graph(&mut StdRng::seed_from_u64(5), 6, 0.5);
        assert_eq!(g1, g2);
        assert!(g1.is_chordal());
    }

    #[test]
    fn random_chordal_graphs_are_chordal() {
        let mut rng = StdRng::seed_from_u64(11);
        for _ in 0..50 {
            let n = rng.gen_range(0..=8);
            let p = rng.gen_range(0.1..0.9);
            let g = random_chordal_graph(&mut rng, n, p);
            assert!(g.is_chordal());
            assert!(g.is_chordal_by_cycle_inspection());
        }
    }

    #[test]
    fn corruption_site_finds_shared_edges() {
        let g = Graph::from_edges(
            ["x", "y", "z", "w"],
            [("x", "y"), ("y", "z"), ("x", "z"), ("y", "w"), ("z", "w")],
        )
        .unwrap();
        let (v, a, b) = corruption_site(&g).unwrap();
        assert!(g.is_simplicial(&v).unwrap());
        assert!(g.has_edge(&a, &b).unwrap());
    }

    #[test]
    fn suites_pass_at_reduced_size() {
        for s in run_all(small(0xFEED)) {
            assert!(s.passed(), "{}", s.summary_line());
        }
    }
}
