//! Growing and shrinking a connected graph without changing `n - e`.

use crate::error::{invariant, precondition, GraphError, Result};
use crate::graph::{Edge, Graph, VertexBijection};
use crate::moves::{replay, CheckLevel, Move, MoveScript, Tape};
use crate::prescribe::transform;
use crate::slides::relocate;

/// Pendants hung on vertex 0 until the graph has `target_n` vertices.
pub fn expand_to_order(g: &Graph, target_n: usize) -> Result<MoveScript> {
    if !g.is_connected() || g.n() == 0 {
        return Err(GraphError::Disconnected.into());
    }
    if target_n < g.n() {
        return Err(precondition(format!(
            "cannot expand {} vertices down to {target_n}",
            g.n()
        )));
    }
    Ok((g.n()..target_n)
        .map(|new| Move::AddPendant { anchor: 0, new })
        .collect())
}

/// The two equivalent ways of inserting a vertex next to edge `{z, x}`:
/// subdividing it, or hanging a pendant on `x` and sliding `zx` onto it.
pub fn pendant_subdivide_equivalence(g: &Graph, edge: Edge) -> Result<(MoveScript, MoveScript)> {
    let (z, x) = edge;
    g.check_vertex(z)?;
    g.check_vertex(x)?;
    if !g.has_edge(z, x) {
        return Err(GraphError::MissingEdge(z, x).into());
    }
    let y = g.n();
    let subdivide = MoveScript::from(vec![Move::Subdivide { x, z, new: y }]);
    let pendant = MoveScript::from(vec![
        Move::AddPendant { anchor: x, new: y },
        Move::slide(z, x, y),
    ]);
    Ok((subdivide, pendant))
}

/// Largest edge count for which a graph on `n` vertices can lose a vertex and
/// an edge and stay connected and simple.
pub fn collapse_edge_bound(n: usize) -> usize {
    if n < 2 {
        return 0;
    }
    (n - 1) * (n - 2) / 2 + 1
}

/// Removes vertex 0 repeatedly until `target_n` vertices remain.
///
/// Before each removal the victim's degree is brought down to one by
/// relocating its edges into the rest of the graph: first joining separate
/// components of `G - victim`, otherwise onto the smallest non-adjacent pair.
pub fn collapse_to_order(g: &Graph, target_n: usize) -> Result<MoveScript> {
    if !g.is_connected() || g.n() == 0 {
        return Err(GraphError::Disconnected.into());
    }
    if target_n == 0 || target_n > g.n() {
        return Err(precondition(format!(
            "cannot collapse {} vertices to {target_n}",
            g.n()
        )));
    }
    let mut tape = Tape::new(g.clone());
    while tape.graph.n() > target_n {
        let n = tape.graph.n();
        let e = tape.graph.edge_count();
        if e > collapse_edge_bound(n) {
            return Err(precondition(format!(
                "{e} edges on {n} vertices exceeds {} so no vertex can be removed",
                collapse_edge_bound(n)
            )));
        }
        let victim = 0;
        while tape.graph.degree(victim) > 1 {
            let comps = tape.graph.connected_components(Some(victim));
            let (w, onto) = if comps.len() >= 2 {
                let first = &comps.groups[0];
                let w = tape
                    .graph
                    .neighbors(victim)
                    .find(|v| first.binary_search(v).is_ok())
                    .ok_or_else(|| invariant("component not attached to the victim"))?;
                (w, (first[0], comps.groups[1][0]))
            } else {
                let pair = tape
                    .graph
                    .first_non_adjacent_pair(&comps.groups[0])
                    .ok_or_else(|| invariant("rest of the graph is complete"))?;
                let w = tape
                    .graph
                    .neighbors(victim)
                    .next()
                    .expect("degree above one");
                (w, pair)
            };
            relocate(&mut tape, (victim, w), onto)?;
        }
        let anchor = tape
            .graph
            .neighbors(victim)
            .next()
            .ok_or_else(|| invariant("victim isolated"))?;
        tape.play(Move::RemoveLeaf {
            leaf: victim,
            anchor,
        })?;
    }
    Ok(tape.script)
}

/// Resizes `gamma` to the order of `sigma` and slides it onto `sigma`.
///
/// Returns the script (valid on `gamma`) and the bijection from the final
/// graph's ids to `sigma`'s; the bijection is the identity.
pub fn transform_euler(gamma: &Graph, sigma: &Graph) -> Result<(MoveScript, VertexBijection)> {
    if !gamma.is_connected() || !sigma.is_connected() {
        return Err(GraphError::Disconnected.into());
    }
    if gamma.euler_characteristic() != sigma.euler_characteristic() {
        return Err(precondition(format!(
            "euler characteristics differ: {} vs {}",
            gamma.euler_characteristic(),
            sigma.euler_characteristic()
        )));
    }
    let mut script = if gamma.n() <= sigma.n() {
        expand_to_order(gamma, sigma.n())?
    } else {
        collapse_to_order(gamma, sigma.n())?
    };
    let resized = replay(gamma, &script, CheckLevel::Full)?;
    let psi = VertexBijection::identity(sigma.n());
    script.append(transform(&resized, sigma, &psi)?.script);
    let end = replay(gamma, &script, CheckLevel::Full)?;
    if !end.is_isomorphic_under(sigma, &psi)? {
        return Err(invariant("euler transform does not reach the target"));
    }
    Ok((script, psi))
}
