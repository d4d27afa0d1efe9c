//! Exhaustive ground truth for small orders: enumerate every connected labeled
//! graph with given `(n, e)`, and explore the graph of single-slide moves
//! between them.

use std::collections::{HashMap, VecDeque};
use std::fmt::Write as _;

use itertools::Itertools;
use rand::seq::SliceRandom;
use rand::Rng;
use rayon::prelude::*;

use crate::error::{precondition, Result};
use crate::graph::{Edge, Graph};

/// Largest order [`enumerate_connected`] accepts.
pub const MAX_ENUMERATION_ORDER: usize = 7;
/// Largest order [`reachability_census`] accepts.
pub const MAX_CENSUS_ORDER: usize = 5;

/// Every connected simple graph on `0..n` with `e` edges, in lexicographic
/// order of sorted edge lists.
pub fn enumerate_connected(n: usize, e: usize) -> Result<Vec<Graph>> {
    if n > MAX_ENUMERATION_ORDER {
        return Err(precondition(format!(
            "enumeration is capped at {MAX_ENUMERATION_ORDER} vertices, got {n}"
        )));
    }
    let pairs: Vec<Edge> = (0..n).tuple_combinations().collect();
    if e > pairs.len() {
        return Ok(Vec::new());
    }
    Ok(pairs
        .into_iter()
        .combinations(e)
        .map(|edges| Graph::from_edges(n, edges).expect("distinct pairs"))
        .filter(Graph::is_connected)
        .collect())
}

/// All graphs one slide away from `g`, deduplicated, in lexicographic order.
pub fn slide_neighbors(g: &Graph) -> Vec<Graph> {
    let mut out: Vec<Graph> = Vec::new();
    for (a, b) in g.edges() {
        for (pivot, from) in [(a, b), (b, a)] {
            for to in g.neighbors(from) {
                if to == pivot || g.has_edge(pivot, to) {
                    continue;
                }
                let mut h = g.clone();
                h.remove_edge(pivot, from).expect("edge present");
                h.insert_edge(pivot, to).expect("pair absent");
                out.push(h);
            }
        }
    }
    out.sort_by_key(Graph::key);
    out.dedup();
    out
}

/// Single-slide reachability among the connected graphs with `(n, e)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SlideClass {
    pub n: usize,
    pub e: usize,
    /// Canonical keys, in enumeration order.
    pub members: Vec<Vec<Edge>>,
    /// `reachability[i]` lists member indices one slide away from member `i`.
    pub reachability: Vec<Vec<usize>>,
}

impl SlideClass {
    pub fn build(n: usize, e: usize) -> Result<Self> {
        let graphs = enumerate_connected(n, e)?;
        let members: Vec<Vec<Edge>> = graphs.iter().map(Graph::key).collect();
        let index: HashMap<&[Edge], usize> = members
            .iter()
            .enumerate()
            .map(|(i, k)| (k.as_slice(), i))
            .collect();
        let reachability = graphs
            .iter()
            .map(|g| {
                slide_neighbors(g)
                    .iter()
                    .map(|h| index[h.key().as_slice()])
                    .collect()
            })
            .collect();
        Ok(Self {
            n,
            e,
            members,
            reachability,
        })
    }

    /// BFS slide distances from member `start` (`usize::MAX` if unreachable).
    pub fn distances_from(&self, start: usize) -> Vec<usize> {
        let mut dist = vec![usize::MAX; self.members.len()];
        dist[start] = 0;
        let mut queue = VecDeque::from([start]);
        while let Some(i) = queue.pop_front() {
            for &j in &self.reachability[i] {
                if dist[j] == usize::MAX {
                    dist[j] = dist[i] + 1;
                    queue.push_back(j);
                }
            }
        }
        dist
    }

    pub fn index_of(&self, g: &Graph) -> Option<usize> {
        let key = g.key();
        self.members.iter().position(|m| *m == key)
    }
}

/// One row of the census table.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CensusRow {
    pub n: usize,
    pub e: usize,
    pub members: usize,
    pub classes: usize,
    /// Largest slide distance between two members of the same class.
    pub diameter: usize,
}

/// Counts slide-equivalence classes among connected graphs with `(n, e)`.
pub fn reachability_census(n: usize, e: usize) -> Result<CensusRow> {
    if n > MAX_CENSUS_ORDER {
        return Err(precondition(format!(
            "census is capped at {MAX_CENSUS_ORDER} vertices, got {n}"
        )));
    }
    let class = SlideClass::build(n, e)?;
    let m = class.members.len();
    // Per-start eccentricity and the smallest member it reaches; both are
    // order independent, so the parallel result is deterministic.
    let per_start: Vec<(usize, usize)> = (0..m)
        .into_par_iter()
        .map(|s| {
            let dist = class.distances_from(s);
            let reach = dist.iter().filter(|&&d| d != usize::MAX);
            let ecc = reach.clone().copied().max().unwrap_or(0);
            let root = dist.iter().position(|&d| d != usize::MAX).unwrap_or(s);
            (ecc, root)
        })
        .collect();
    let mut roots: Vec<usize> = per_start.iter().map(|&(_, r)| r).collect();
    roots.sort_unstable();
    roots.dedup();
    Ok(CensusRow {
        n,
        e,
        members: m,
        classes: roots.len(),
        diameter: per_start.iter().map(|&(ecc, _)| ecc).max().unwrap_or(0),
    })
}

/// Census over every valid `(n, e)` with `1 <= n <= max_n`.
pub fn census_table(max_n: usize) -> Result<Vec<CensusRow>> {
    let mut rows = Vec::new();
    for n in 1..=max_n {
        for e in n - 1..=n * (n - 1) / 2 {
            rows.push(reachability_census(n, e)?);
        }
    }
    Ok(rows)
}

/// Plain-text table with columns `n e members classes diameter`.
pub fn format_census(rows: &[CensusRow]) -> String {
    let mut out = format!(
        "{:>3} {:>3} {:>8} {:>8} {:>9}\n",
        "n", "e", "members", "classes", "diameter"
    );
    for r in rows {
        writeln!(
            out,
            "{:>3} {:>3} {:>8} {:>8} {:>9}",
            r.n, r.e, r.members, r.classes, r.diameter
        )
        .unwrap();
    }
    out
}

/// A random connected simple graph with `n` vertices and `e` edges: a random
/// recursive tree plus uniformly chosen extra edges.
pub fn random_connected(n: usize, e: usize, rng: &mut impl Rng) -> Result<Graph> {
    if n == 0 || e + 1 < n || e > n * (n - 1) / 2 {
        return Err(precondition(format!(
            "no connected simple graph with n = {n}, e = {e}"
        )));
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(rng);
    let mut g = Graph::empty(n);
    for i in 1..n {
        let parent = order[rng.random_range(0..i)];
        g.insert_edge(order[i], parent).expect("tree edge is new");
    }
    let mut rest: Vec<Edge> = (0..n)
        .tuple_combinations()
        .filter(|&(u, v)| !g.has_edge(u, v))
        .collect();
    rest.shuffle(rng);
    for (u, v) in rest.into_iter().take(e + 1 - n) {
        g.insert_edge(u, v).expect("non-edge");
    }
    debug_assert_eq!(g.edge_count(), e);
    Ok(g)
}
