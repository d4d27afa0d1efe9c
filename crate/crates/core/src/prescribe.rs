//! Transforming one connected graph into a prescribed one by slides.
//!
//! [`transform`] recurses on the number of vertices. At each level it picks a
//! minimum-degree vertex `y*` of the target, raises the degree of its preimage
//! `x*` to `n - 1`, lowers it back to `d(y*)` while keeping the graph
//! connected, matches the neighbourhood exactly by interchanges, and then
//! makes both `G - x*` and `S - y*` connected before recursing on them. Slides
//! done on the target side are undone at the end, translated through the
//! bijection.

use std::collections::BTreeSet;

use crate::error::{invariant, precondition, GraphError, Result};
use crate::graph::{normalize, Edge, Graph, VertexBijection};
use crate::moves::{replay, CheckLevel, Move, MoveScript, Tape};
use crate::slides::{interchange_on, relocate};
use crate::Vertex;

/// Slides turning the tree `t` into the star centred at `x`.
///
/// Each round takes the smallest leaf not adjacent to `x` and slides its edge
/// along the tree path towards `x`.
pub fn raise_degree_in_tree(t: &Graph, x: Vertex) -> Result<MoveScript> {
    t.check_vertex(x)?;
    if !t.is_tree() {
        return Err(precondition("input is not a tree"));
    }
    let mut tape = Tape::new(t.clone());
    while let Some(round) = next_tree_round(&tape.graph, x) {
        for m in round {
            tape.play(m)?;
        }
    }
    Ok(tape.script)
}

/// Slides of one round of tree degree-raising, or `None` once `x` is the centre.
fn next_tree_round(tree: &Graph, x: Vertex) -> Option<Vec<Move>> {
    let n = tree.n();
    if tree.degree(x) + 1 >= n {
        return None;
    }
    let leaf = (0..n)
        .find(|&y| y != x && tree.degree(y) == 1 && !tree.has_edge(x, y))
        .expect("a tree that is not a star at x has a leaf at distance >= 2 from x");
    let anchor = tree.neighbors(leaf).next().expect("leaf has a neighbour");
    let walk = tree
        .shortest_path(anchor, x, None)
        .expect("trees are connected");
    Some(
        walk.vertices()
            .windows(2)
            .map(|w| Move::slide(leaf, w[0], w[1]))
            .collect(),
    )
}

/// Slides giving `x` degree `n - 1` in the connected graph `g`.
///
/// A BFS spanning tree rooted at `x` is evolved towards the star at `x`; each
/// tree slide is copied into `g` unless `g` already has the target edge. The
/// tree stays a subgraph of `g` throughout.
pub fn raise_degree(g: &Graph, x: Vertex) -> Result<MoveScript> {
    g.check_vertex(x)?;
    let mut tape = Tape::new(g.clone());
    raise_degree_on(&mut tape, x)?;
    Ok(tape.script)
}

pub(crate) fn raise_degree_on(tape: &mut Tape, x: Vertex) -> Result<()> {
    let n = tape.graph.n();
    if tape.graph.degree(x) + 1 >= n {
        return Ok(());
    }
    let tree_edges = tape.graph.spanning_tree(x)?;
    let mut tree = Graph::from_edges(n, tree_edges).expect("tree edges are simple");
    while tape.graph.degree(x) + 1 < n {
        let round = next_tree_round(&tree, x)
            .ok_or_else(|| invariant("tree is a star but graph degree is short"))?;
        for m in round {
            tree.apply_in_place(&m)
                .map_err(|r| invariant(format!("tree slide {m} rejected: {r}")))?;
            let Move::Slide { pivot, to, .. } = m else {
                unreachable!()
            };
            if !tape.graph.has_edge(pivot, to) {
                tape.play(m)?;
            }
            if tape.graph.degree(x) + 1 >= n {
                break;
            }
        }
    }
    Ok(())
}

/// What one recursion level of [`transform`] did. Vertex ids are the original
/// ids of the input graphs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LevelTrace {
    /// Vertices at this level.
    pub order: usize,
    /// Minimum-degree vertex of the target chosen at this level.
    pub target: Vertex,
    /// Its preimage in the source graph.
    pub preimage: Vertex,
    /// Degree of `target`.
    pub min_degree: usize,
    /// Moves played on the source side at this level (before recursion).
    pub source_moves: usize,
    /// Slides applied to the target so that removing `target` leaves it connected.
    pub target_repair: MoveScript,
}

/// A certified transformation: `script` replays from the source graph to a
/// graph isomorphic to the target under the bijection.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TransformPlan {
    pub script: MoveScript,
    pub trace: Vec<LevelTrace>,
}

/// Slides turning `gamma` into a graph `G*` with `psi: G* -> sigma` an isomorphism.
pub fn transform(gamma: &Graph, sigma: &Graph, psi: &VertexBijection) -> Result<TransformPlan> {
    let n = gamma.n();
    if sigma.n() != n || psi.len() != n {
        return Err(GraphError::SizeMismatch(format!(
            "source has {n} vertices, target {}, bijection {}",
            sigma.n(),
            psi.len()
        ))
        .into());
    }
    if gamma.edge_count() != sigma.edge_count() {
        return Err(GraphError::SizeMismatch(format!(
            "source has {} edges, target {}",
            gamma.edge_count(),
            sigma.edge_count()
        ))
        .into());
    }
    if !gamma.is_connected() || !sigma.is_connected() {
        return Err(GraphError::Disconnected.into());
    }
    let ids: Vec<Vertex> = (0..n).collect();
    let mut trace = Vec::new();
    let script = solve(gamma, sigma, psi.as_slice(), &ids, &ids, &mut trace)?;
    let end = replay(gamma, &script, CheckLevel::Fast)?;
    if !end.is_isomorphic_under(sigma, psi)? {
        return Err(invariant("transform script does not reach the target"));
    }
    Ok(TransformPlan { script, trace })
}

/// One recursion level. `psi[v]` is the target vertex of source vertex `v`;
/// `g_ids`/`s_ids` translate local ids to the caller's original ids.
fn solve(
    g: &Graph,
    s: &Graph,
    psi: &[Vertex],
    g_ids: &[Vertex],
    s_ids: &[Vertex],
    trace: &mut Vec<LevelTrace>,
) -> Result<MoveScript> {
    let n = g.n();
    if n <= 2 {
        return Ok(MoveScript::new());
    }
    let mut psi_inv = vec![0; n];
    for (v, &w) in psi.iter().enumerate() {
        psi_inv[w] = v;
    }
    let y_star = (0..n).min_by_key(|&v| (s.degree(v), v)).expect("n > 2");
    let d1 = s.degree(y_star);
    let x_star = psi_inv[y_star];

    let mut tape = Tape::new(g.clone());
    raise_degree_on(&mut tape, x_star)?;
    reduce_degree(&mut tape, x_star, d1)?;

    let wanted: BTreeSet<Vertex> = s.neighbors(y_star).map(|w| psi_inv[w]).collect();
    match_neighborhood(&mut tape, x_star, &wanted)?;
    connect_complement(&mut tape, x_star)?;

    let mut s_tape = Tape::new(s.clone());
    connect_complement(&mut s_tape, y_star)?;

    let g_keep: Vec<Vertex> = (0..n).filter(|&v| v != x_star).collect();
    let s_keep: Vec<Vertex> = (0..n).filter(|&v| v != y_star).collect();
    let g_sub = tape.graph.induced(&g_keep);
    let s_sub = s_tape.graph.induced(&s_keep);
    let mut s_index = vec![usize::MAX; n];
    for (i, &w) in s_keep.iter().enumerate() {
        s_index[w] = i;
    }
    let psi_sub: Vec<Vertex> = g_keep.iter().map(|&v| s_index[psi[v]]).collect();
    let sub_g_ids: Vec<Vertex> = g_keep.iter().map(|&v| g_ids[v]).collect();
    let sub_s_ids: Vec<Vertex> = s_keep.iter().map(|&w| s_ids[w]).collect();

    trace.push(LevelTrace {
        order: n,
        target: s_ids[y_star],
        preimage: g_ids[x_star],
        min_degree: d1,
        source_moves: tape.script.len(),
        target_repair: s_tape.script.relabel(|w| s_ids[w]),
    });

    let inner = solve(&g_sub, &s_sub, &psi_sub, &sub_g_ids, &sub_s_ids, trace)?;
    tape.play_all(&inner.relabel(|v| g_keep[v]))?;

    let undo = s_tape
        .script
        .inverse()
        .ok_or_else(|| invariant("target repair contains a non-slide"))?
        .relabel(|w| psi_inv[w]);
    tape.play_all(&undo)?;

    let level_psi = VertexBijection::new(psi.to_vec())?;
    if !tape.graph.is_isomorphic_under(s, &level_psi)? {
        return Err(invariant(format!(
            "level with {n} vertices does not reach its target"
        )));
    }
    Ok(tape.script)
}

/// Lowers `d(x)` to `target` by relocating edges at `x` into `G - x`.
fn reduce_degree(tape: &mut Tape, x: Vertex, target: usize) -> Result<()> {
    while tape.graph.degree(x) > target {
        let comps = tape.graph.connected_components(Some(x));
        let (moved, onto): (Edge, Edge) = if comps.len() >= 2 {
            let first = &comps.groups[0];
            let w = tape
                .graph
                .neighbors(x)
                .find(|v| first.binary_search(v).is_ok())
                .ok_or_else(|| invariant("component not attached to the removed vertex"))?;
            ((x, w), (first[0], comps.groups[1][0]))
        } else {
            let only = &comps.groups[0];
            let pair = tape.graph.first_non_adjacent_pair(only).ok_or_else(|| {
                invariant(format!(
                    "complement of {x} is complete while its degree exceeds {target}"
                ))
            })?;
            let w = tape
                .graph
                .neighbors(x)
                .find(|&w| tape.graph.is_connected_after((x, w), pair))
                .ok_or_else(|| invariant("no edge at x can be relocated"))?;
            ((x, w), pair)
        };
        relocate(tape, moved, onto)?;
    }
    Ok(())
}

/// Interchanges vertices until `N(x) == wanted`.
fn match_neighborhood(tape: &mut Tape, x: Vertex, wanted: &BTreeSet<Vertex>) -> Result<()> {
    loop {
        let have = tape.graph.neighbor_set(x).clone();
        let extra = have.difference(wanted).next().copied();
        let missing = wanted.difference(&have).next().copied();
        let (a, b) = match (extra, missing) {
            (None, None) => return Ok(()),
            (Some(a), Some(b)) => (a, b),
            _ => return Err(invariant("neighbourhood sizes differ before matching")),
        };
        let before = have.symmetric_difference(wanted).count();
        interchange_on(tape, a, b)?;
        let after = tape
            .graph
            .neighbor_set(x)
            .symmetric_difference(wanted)
            .count();
        if after + 2 != before {
            return Err(invariant(format!(
                "interchange of {a} and {b} did not shrink the mismatch"
            )));
        }
    }
}

/// Joins the components of `G - x` by relocating cycle edges, without
/// touching edges at `x`.
fn connect_complement(tape: &mut Tape, x: Vertex) -> Result<()> {
    let before: BTreeSet<Vertex> = tape.graph.neighbor_set(x).clone();
    loop {
        let comps = tape.graph.connected_components(Some(x));
        if comps.len() <= 1 {
            break;
        }
        let (i, back) = comps
            .groups
            .iter()
            .enumerate()
            .find_map(|(i, grp)| first_back_edge(&tape.graph, grp, x).map(|e| (i, e)))
            .ok_or_else(|| {
                invariant(format!(
                    "{} components remain after removing {x} and all are trees",
                    comps.len()
                ))
            })?;
        let other = if i == 0 { 1 } else { 0 };
        let (p, q) = normalize(back.0, back.1);
        relocate(tape, (p, q), (p, comps.groups[other][0]))?;
    }
    if *tape.graph.neighbor_set(x) != before {
        return Err(invariant(format!(
            "connecting G - {x} changed the neighbours of {x}"
        )));
    }
    Ok(())
}

/// First non-tree edge met by an ascending-order DFS of `group` (which must
/// be a connected component of `G - excluded`), if the component has a cycle.
fn first_back_edge(g: &Graph, group: &[Vertex], excluded: Vertex) -> Option<Edge> {
    let root = group[0];
    let mut parent = vec![usize::MAX; g.n()];
    let mut visited = vec![false; g.n()];
    visited[root] = true;
    parent[root] = root;
    // Stack of (vertex, neighbours still to scan).
    let mut stack: Vec<(Vertex, Vec<Vertex>)> = vec![(root, nbrs_desc(g, root, excluded))];
    while let Some((v, rest)) = stack.last_mut() {
        let v = *v;
        let Some(w) = rest.pop() else {
            stack.pop();
            continue;
        };
        if !visited[w] {
            visited[w] = true;
            parent[w] = v;
            stack.push((w, nbrs_desc(g, w, excluded)));
        } else if parent[v] != w {
            return Some(normalize(v, w));
        }
    }
    None
}

fn nbrs_desc(g: &Graph, v: Vertex, excluded: Vertex) -> Vec<Vertex> {
    g.neighbors(v).filter(|&w| w != excluded).rev().collect()
}
