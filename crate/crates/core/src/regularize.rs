//! Energy and degree regularization.
//!
//! The energy of a graph is the sum of its squared degrees. A single step moves
//! one unit of degree from a maximum-degree vertex `x` to a minimum-degree
//! vertex `y`, which lowers the energy by exactly `2 (d(x) - d(y) - 1)`.
//! Steps repeat until all degrees are within one of each other.

use std::collections::BTreeSet;

use crate::error::{invariant, precondition, GraphError, Result};
use crate::graph::Graph;
use crate::moves::{Move, MoveScript, Tape};
use crate::slides::shuffle;
use crate::Vertex;

/// The almost-regular degree shape for `n` vertices and `e` edges:
/// `2e = n k + r` with `0 <= r < n`; `r` vertices of degree `k + 1` and
/// `n - r` of degree `k`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DegreeTarget {
    pub n: usize,
    pub k: usize,
    pub r: usize,
}

impl DegreeTarget {
    /// Degree multiset in non-increasing order.
    pub fn multiset(&self) -> Vec<usize> {
        let mut v = vec![self.k + 1; self.r];
        v.extend(std::iter::repeat_n(self.k, self.n - self.r));
        v
    }

    pub fn energy(&self) -> u64 {
        let (k, r, n) = (self.k as u64, self.r as u64, self.n as u64);
        r * (k + 1) * (k + 1) + (n - r) * k * k
    }
}

/// Target shape for a connected simple graph with `n` vertices and `e` edges.
pub fn almost_regular_target(n: usize, e: usize) -> Result<DegreeTarget> {
    if n == 0 {
        return Err(precondition("need at least one vertex"));
    }
    if e + 1 < n || e > n * (n - 1) / 2 {
        return Err(precondition(format!(
            "{e} edges is outside the connected simple range [{}, {}] for {n} vertices",
            n - 1,
            n * (n - 1) / 2
        )));
    }
    Ok(DegreeTarget {
        n,
        k: 2 * e / n,
        r: 2 * e % n,
    })
}

/// All degrees within one of each other.
pub fn is_almost_regular(g: &Graph) -> bool {
    let d = g.degrees();
    match (d.iter().min(), d.iter().max()) {
        (Some(lo), Some(hi)) => hi - lo <= 1,
        _ => true,
    }
}

/// One energy-lowering step of [`regularize`]. Degrees are measured before the step.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RegularizeStep {
    pub high: Vertex,
    pub low: Vertex,
    pub high_degree: usize,
    pub low_degree: usize,
    /// Vertex whose edge was carried from `high` to `low`.
    pub donor: Vertex,
    pub slides: usize,
    pub energy_before: u64,
    pub energy_after: u64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Regularization {
    pub script: MoveScript,
    pub steps: Vec<RegularizeStep>,
}

/// Slides carrying `g` to an almost-regular graph.
///
/// Each step takes `x` of maximum degree and `y` of minimum degree (smallest
/// id on ties). If `x ~ y`, a neighbour `a` of `x` that is not adjacent to `y`
/// slides its edge along `xy`. Otherwise such an `a` off the BFS shortest path
/// from `x` to `y` is shuffled along that path from `x` to `y`.
pub fn regularize(g: &Graph) -> Result<Regularization> {
    if !g.is_connected() {
        return Err(GraphError::Disconnected.into());
    }
    let n = g.n();
    let mut tape = Tape::new(g.clone());
    let mut steps = Vec::new();
    loop {
        let graph = &tape.graph;
        let Some(x) = (0..n).max_by_key(|&v| (graph.degree(v), std::cmp::Reverse(v))) else {
            break;
        };
        let y = (0..n)
            .min_by_key(|&v| (graph.degree(v), v))
            .expect("non-empty");
        let (dx, dy) = (graph.degree(x), graph.degree(y));
        if dx < dy + 2 {
            break;
        }
        let energy_before = graph.energy();
        let start = tape.script.len();
        let donor = if graph.has_edge(x, y) {
            let a = graph
                .neighbors(x)
                .find(|&a| a != y && !graph.has_edge(a, y))
                .ok_or_else(|| invariant(format!("no donor next to {x} for adjacent {y}")))?;
            tape.play(Move::slide(a, x, y))?;
            a
        } else {
            let sigma = graph
                .shortest_path(x, y, None)
                .ok_or_else(|| invariant("connected graph without x-y path"))?;
            let on_path: BTreeSet<Vertex> = sigma.vertices().iter().copied().collect();
            let a = graph
                .neighbors(x)
                .find(|&a| !on_path.contains(&a) && !graph.has_edge(a, y))
                .ok_or_else(|| invariant(format!("no donor next to {x} off the path to {y}")))?;
            let script = shuffle(graph, a, &sigma, 0, sigma.len() - 1)?;
            tape.play_all(&script)?;
            a
        };
        let energy_after = tape.graph.energy();
        let slides = tape.script.len() - start;
        let expected_drop = 2 * (dx - dy - 1) as u64;
        if energy_before - energy_after != expected_drop {
            return Err(invariant(format!(
                "energy dropped by {} instead of {expected_drop}",
                energy_before - energy_after
            )));
        }
        if slides > n {
            return Err(invariant(format!(
                "step used {slides} slides on {n} vertices"
            )));
        }
        steps.push(RegularizeStep {
            high: x,
            low: y,
            high_degree: dx,
            low_degree: dy,
            donor,
            slides,
            energy_before,
            energy_after,
        });
    }
    Ok(Regularization {
        script: tape.script,
        steps,
    })
}

/// Brute force: every positive degree multiset of length `n` summing to `2e`
/// with minimum sum of squares, in non-increasing order. The lone vertex
/// gets `[0]`.
pub fn minimal_energy_oracle(n: usize, e: usize) -> Result<BTreeSet<Vec<usize>>> {
    if n == 0 || n > MAX_ORACLE_ORDER {
        return Err(precondition(format!(
            "oracle supports 1..={MAX_ORACLE_ORDER} vertices, got {n}"
        )));
    }
    let total = 2 * e;
    if n == 1 && e == 0 {
        return Ok(BTreeSet::from([vec![0]]));
    }
    if total < n {
        return Ok(BTreeSet::new());
    }
    let mut best = u64::MAX;
    let mut found = BTreeSet::new();
    let mut parts = Vec::with_capacity(n);
    partitions(total, n, total, &mut parts, &mut |p| {
        let energy: u64 = p.iter().map(|&d| (d * d) as u64).sum();
        if energy < best {
            best = energy;
            found.clear();
        }
        if energy == best {
            found.insert(p.to_vec());
        }
    });
    Ok(found)
}

/// Largest order accepted by [`minimal_energy_oracle`].
pub const MAX_ORACLE_ORDER: usize = 10;

/// Enumerates non-increasing sequences of `slots` positive parts, each at
/// most `cap`, summing to `remaining`.
fn partitions(
    remaining: usize,
    slots: usize,
    cap: usize,
    prefix: &mut Vec<usize>,
    visit: &mut impl FnMut(&[usize]),
) {
    if slots == 0 {
        if remaining == 0 {
            visit(prefix);
        }
        return;
    }
    if remaining < slots {
        return;
    }
    let hi = cap.min(remaining - (slots - 1));
    for part in (1..=hi).rev() {
        if part * slots < remaining {
            break;
        }
        prefix.push(part);
        partitions(remaining - part, slots - 1, part, prefix, visit);
        prefix.pop();
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::moves::{replay, CheckLevel};

    #[test]
    fn targets() {
        let t = almost_regular_target(9, 16).unwrap();
        assert_eq!((t.k, t.r), (3, 5));
        assert_eq!(t.multiset(), vec![4, 4, 4, 4, 4, 3, 3, 3, 3]);
        assert_eq!(t.energy(), 116);
        let t = almost_regular_target(5, 10).unwrap();
        assert_eq!((t.k, t.r), (4, 0));
        let t = almost_regular_target(4, 3).unwrap();
        assert_eq!(t.multiset(), vec![2, 2, 1, 1]);
        assert!(almost_regular_target(4, 2).is_err());
        assert!(almost_regular_target(4, 7).is_err());
        assert!(almost_regular_target(0, 0).is_err());
    }

    #[test]
    fn cycle_is_already_regular() {
        let r = regularize(&Graph::cycle(6)).unwrap();
        assert!(r.script.is_empty() && r.steps.is_empty());
    }

    #[test]
    fn star_regularizes() {
        let star = Graph::star(5);
        assert_eq!(star.energy(), 20);
        let r = regularize(&star).unwrap();
        let out = replay(&star, &r.script, CheckLevel::Full).unwrap();
        let mut d = out.degrees();
        d.sort_unstable_by(|a, b| b.cmp(a));
        assert_eq!(d, vec![2, 2, 2, 1, 1]);
        assert_eq!(out.energy(), 14);
        for s in &r.steps {
            assert_eq!(
                s.energy_before - s.energy_after,
                2 * (s.high_degree - s.low_degree - 1) as u64
            );
        }
        assert!(regularize(&Graph::from_edges(4, [(0, 1), (2, 3)]).unwrap()).is_err());
    }

    #[test]
    fn oracle_small_cases() {
        let o = minimal_energy_oracle(3, 3).unwrap();
        assert_eq!(o, BTreeSet::from([vec![2, 2, 2]]));
        let o = minimal_energy_oracle(4, 3).unwrap();
        assert_eq!(o, BTreeSet::from([vec![2, 2, 1, 1]]));
        let o = minimal_energy_oracle(9, 16).unwrap();
        assert_eq!(o, BTreeSet::from([vec![4, 4, 4, 4, 4, 3, 3, 3, 3]]));
        assert!(minimal_energy_oracle(11, 12).is_err());
    }

    #[test]
    fn partitions_count_matches_known_values() {
        // Partitions of 10 into exactly 3 parts: 8.
        let mut count = 0;
        partitions(10, 3, 10, &mut Vec::new(), &mut |_| count += 1);
        assert_eq!(count, 8);
    }
}
