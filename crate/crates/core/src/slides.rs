//! Composite slide moves: slides along paths, shuffles, connectivity-
//! preserving edge relocation and vertex interchange.
//!
//! Every public operation returns a [`MoveScript`] of slides only. Composite
//! operations are built on a [`Tape`], so each emitted slide is applied to the
//! state it was computed for and rejected immediately if the construction is
//! wrong.

use crate::error::{invariant, precondition, GraphError, Result};
use crate::graph::{normalize, Edge, Graph, Path};
use crate::moves::{Move, MoveScript, Tape};
use crate::Vertex;

/// Slides `{y, s_1}` to `{y, s_k}` one step at a time along `p`.
///
/// Requires `y` off the path, `y ~ s_1` and `y` not adjacent to any later
/// path vertex.
pub fn slide_along_path(g: &Graph, y: Vertex, p: &Path) -> Result<MoveScript> {
    g.check_vertex(y)?;
    let s = p.vertices();
    if let Some(i) = p.position(y) {
        return Err(precondition(format!(
            "pivot {y} lies on the path at index {i}"
        )));
    }
    if !g.has_edge(y, s[0]) {
        return Err(precondition(format!(
            "pivot {y} is not adjacent to path index 0"
        )));
    }
    if let Some(i) = (1..s.len()).find(|&i| g.has_edge(y, s[i])) {
        return Err(precondition(format!(
            "pivot {y} is already adjacent to path index {i}"
        )));
    }
    for (i, w) in s.windows(2).enumerate() {
        if !g.has_edge(w[0], w[1]) {
            return Err(precondition(format!(
                "path indices {i} and {} are not adjacent",
                i + 1
            )));
        }
    }
    Ok(s.windows(2).map(|w| Move::slide(y, w[0], w[1])).collect())
}

/// Moves `y`'s adjacency from path position `i` to position `j` (0-based),
/// keeping every other adjacency of `y` to the path unchanged.
///
/// `y`'s adjacencies to path vertices are tokens. Repeatedly take the highest
/// occupied position below the current target, slide that token up to the
/// target, and make its old position the next target, until the token at
/// `i` has moved.
pub fn shuffle(g: &Graph, y: Vertex, p: &Path, i: usize, j: usize) -> Result<MoveScript> {
    g.check_vertex(y)?;
    let k = p.len();
    if i >= k || j >= k {
        return Err(precondition(format!(
            "shuffle positions {i}, {j} outside path of {k} vertices"
        )));
    }
    if p.contains(y) {
        return Err(precondition(format!("pivot {y} lies on the path")));
    }
    if !g.has_edge(y, p.vertices()[i]) {
        return Err(precondition(format!(
            "pivot {y} is not adjacent to path index {i}"
        )));
    }
    if g.has_edge(y, p.vertices()[j]) {
        return Err(precondition(format!(
            "pivot {y} is already adjacent to path index {j}"
        )));
    }
    for (q, w) in p.vertices().windows(2).enumerate() {
        if !g.has_edge(w[0], w[1]) {
            return Err(precondition(format!(
                "path indices {q} and {} are not adjacent",
                q + 1
            )));
        }
    }
    if i > j {
        return shuffle(g, y, &p.reversed(), k - 1 - i, k - 1 - j);
    }
    let s = p.vertices();
    let mut occupied: Vec<bool> = s.iter().map(|&v| g.has_edge(y, v)).collect();
    let mut script = MoveScript::new();
    let mut target = j;
    loop {
        let t = (i..target)
            .rev()
            .find(|&t| occupied[t])
            .expect("position i stays occupied until its token moves");
        for q in t..target {
            script.push(Move::slide(y, s[q], s[q + 1]));
        }
        occupied[t] = false;
        occupied[target] = true;
        if t == i {
            break;
        }
        target = t;
    }
    Ok(script)
}

/// Paths that carry an edge `{u, v}` to a new position `{x, y}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TransferPaths {
    /// Shortest path from `x` to `u` avoiding the edge `{u, v}`.
    pub x_path: Path,
    /// Shortest path from `y` to `v` avoiding the edge `{u, v}`.
    pub y_path: Path,
    /// The endpoint labels after any swap, `(u, v)` or `(v, u)`.
    pub labels: Edge,
}

fn check_relocation(g: &Graph, uv: Edge, xy: Edge) -> Result<()> {
    let ((u, v), (x, y)) = (uv, xy);
    for w in [u, v, x, y] {
        g.check_vertex(w)?;
    }
    if !g.is_connected() {
        return Err(GraphError::Disconnected.into());
    }
    if !g.has_edge(u, v) {
        return Err(GraphError::MissingEdge(u, v).into());
    }
    if x == y {
        return Err(precondition(format!("target pair {{{x}, {y}}} is a loop")));
    }
    Ok(())
}

/// Finds paths from `x` to one endpoint of `uv` and from `y` to the other,
/// neither using the edge `uv`.
///
/// When `g - uv` is disconnected the pairing is forced by components. When it
/// is connected both pairings exist and the one with the smaller total length
/// is taken, preferring `(u, v)` on ties.
pub fn find_transfer_paths(g: &Graph, uv: Edge, x: Vertex, y: Vertex) -> Result<TransferPaths> {
    check_relocation(g, uv, (x, y))?;
    let (u, v) = uv;
    if g.has_edge(x, y) && normalize(x, y) != normalize(u, v) {
        return Err(precondition(format!("{x} and {y} are already adjacent")));
    }
    if !g.is_connected_after(uv, (x, y)) && normalize(x, y) != normalize(u, v) {
        return Err(precondition(format!(
            "moving {{{u}, {v}}} to {{{x}, {y}}} disconnects the graph"
        )));
    }
    let pairing = |a: Vertex, b: Vertex| {
        let xp = g.shortest_path(x, a, Some(uv))?;
        let yp = g.shortest_path(y, b, Some(uv))?;
        Some((xp, yp, (a, b)))
    };
    let straight = pairing(u, v);
    let swapped = pairing(v, u);
    let best = match (straight, swapped) {
        (Some(a), Some(b)) => {
            if b.0.len() + b.1.len() < a.0.len() + a.1.len() {
                b
            } else {
                a
            }
        }
        (Some(a), None) | (None, Some(a)) => a,
        (None, None) => return Err(invariant("no transfer paths despite connectivity")),
    };
    Ok(TransferPaths {
        x_path: best.0,
        y_path: best.1,
        labels: best.2,
    })
}

/// Slide script replacing edge `uv` by `xy`, provided the result is connected.
///
/// Applying the script changes exactly those two edges; every intermediate
/// graph is connected and simple since it is reached by slides.
pub fn move_edge(g: &Graph, uv: Edge, xy: Edge) -> Result<MoveScript> {
    check_relocation(g, uv, xy)?;
    let ((u, v), (x, y)) = (uv, xy);
    if normalize(u, v) == normalize(x, y) {
        return Err(precondition("source and target edge coincide"));
    }
    if g.has_edge(x, y) {
        return Err(precondition(format!("{x} and {y} are already adjacent")));
    }
    if !g.is_connected_after(uv, xy) {
        return Err(precondition(format!(
            "moving {{{u}, {v}}} to {{{x}, {y}}} disconnects the graph"
        )));
    }
    let mut tape = Tape::new(g.clone());
    relocate(&mut tape, uv, xy)?;
    Ok(tape.script)
}

/// Relocation on a tape. Callers guarantee the move preconditions.
pub(crate) fn relocate(tape: &mut Tape, uv: Edge, xy: Edge) -> Result<()> {
    let ((u, v), (x, y)) = (uv, xy);
    if x == u || x == v {
        return relocate_shared(tape, uv, x, y);
    }
    if y == u || y == v {
        return relocate_shared(tape, uv, y, x);
    }
    // Disjoint endpoints: split into two moves that each share an endpoint.
    let TransferPaths { labels: (u, v), .. } = find_transfer_paths(&tape.graph, uv, x, y)?;
    let g = &tape.graph;
    if !g.has_edge(x, v) {
        // x reaches u without uv, so uv -> xv keeps the graph connected.
        relocate_shared(tape, (u, v), v, x)?;
        relocate_shared(tape, (x, v), x, y)
    } else if g.is_connected_after((x, v), (x, y)) {
        relocate_shared(tape, (x, v), x, y)?;
        relocate_shared(tape, (u, v), v, x)
    } else {
        // xv is a bridge that xy does not repair. Then y is not adjacent to u
        // (otherwise x-v-u-y-x would be a cycle), and y reaches v without uv,
        // so go through yu instead.
        if g.has_edge(y, u) {
            return Err(invariant(format!("expected {y} not adjacent to {u}")));
        }
        relocate_shared(tape, (u, v), u, y)?;
        relocate_shared(tape, (y, u), y, x)
    }
}

/// Relocation where `x` is an endpoint of `uv`: replace `uv` by `{x, y}`.
fn relocate_shared(tape: &mut Tape, uv: Edge, x: Vertex, y: Vertex) -> Result<()> {
    debug_assert!(x == uv.0 || x == uv.1);
    if !tape.graph.is_connected_after(uv, (x, y)) {
        return Err(invariant(format!(
            "intermediate relocation {uv:?} -> ({x}, {y}) would disconnect"
        )));
    }
    let TransferPaths {
        x_path: sigma,
        y_path: tau,
        labels: (u, v),
    } = find_transfer_paths(&tape.graph, uv, x, y)?;
    let script = if x == u {
        // sigma is trivial; tau runs from y to v.
        match tau.position(u) {
            None => shuffle(&tape.graph, u, &tau, tau.len() - 1, 0)?,
            Some(i) => {
                // v drops down tau to y, then y climbs from v down to u = x.
                let first = slide_along_path(&tape.graph, v, &tau.slice(0, i).reversed())?;
                tape.play_all(&first)?;
                let second =
                    slide_along_path(&tape.graph, y, &tau.slice(i, tau.len() - 1).reversed())?;
                return tape.play_all(&second);
            }
        }
    } else {
        // x == v: sigma runs from x to u, tau from y to x.
        if let Some(i) = tau.position(u) {
            slide_along_path(&tape.graph, v, &tau.slice(0, i).reversed())?
        } else if let Some(i) = sigma.position(y) {
            let tail = sigma.slice(i, sigma.len() - 1);
            shuffle(&tape.graph, v, &tail, tail.len() - 1, 0)?
        } else if !tape.graph.has_edge(u, y) {
            let first = shuffle(&tape.graph, u, &tau, tau.len() - 1, 0)?;
            tape.play_all(&first)?;
            let back = sigma.reversed();
            let second = shuffle(&tape.graph, y, &back, 0, back.len() - 1)?;
            tape.play_all(&second)?;
            return Ok(());
        } else {
            // u ~ y already: first turn uy into xy, then uv into uy.
            let back = sigma.reversed();
            let first = shuffle(&tape.graph, y, &back, 0, back.len() - 1)?;
            tape.play_all(&first)?;
            let second = shuffle(&tape.graph, u, &tau, tau.len() - 1, 0)?;
            tape.play_all(&second)?;
            return Ok(());
        }
    };
    tape.play_all(&script)
}

/// Slide script that swaps the neighbourhoods of `a` and `b`.
///
/// Afterwards every `c` outside `{a, b}` is adjacent to `a` iff it was
/// adjacent to `b` before, and vice versa. The edge `{a, b}` (if any) and all
/// edges not touching `a` or `b` are unchanged.
pub fn interchange(g: &Graph, a: Vertex, b: Vertex) -> Result<MoveScript> {
    g.check_vertex(a)?;
    g.check_vertex(b)?;
    if a == b {
        return Err(precondition("interchange needs two distinct vertices"));
    }
    if !g.is_connected() {
        return Err(GraphError::Disconnected.into());
    }
    let mut tape = Tape::new(g.clone());
    interchange_on(&mut tape, a, b)?;
    let expected = swapped_neighborhoods(g, a, b);
    if tape.graph != expected {
        return Err(invariant(format!(
            "interchange of {a} and {b} did not swap neighbourhoods"
        )));
    }
    Ok(tape.script)
}

/// The graph obtained by exchanging the neighbourhoods of `a` and `b` directly.
pub fn swapped_neighborhoods(g: &Graph, a: Vertex, b: Vertex) -> Graph {
    let swap = |w: Vertex| {
        if w == a {
            b
        } else if w == b {
            a
        } else {
            w
        }
    };
    Graph::from_edges(g.n(), g.edges().map(|(u, v)| (swap(u), swap(v))))
        .expect("relabeling keeps the graph simple")
}

pub(crate) fn interchange_on(tape: &mut Tape, a: Vertex, b: Vertex) -> Result<()> {
    let n = tape.graph.n();
    if tape.graph.has_edge(a, b) {
        for z in (0..n).filter(|&z| z != a && z != b) {
            let (za, zb) = (tape.graph.has_edge(z, a), tape.graph.has_edge(z, b));
            if za && !zb {
                tape.play(Move::slide(z, a, b))?;
            } else if zb && !za {
                tape.play(Move::slide(z, b, a))?;
            }
        }
        return Ok(());
    }
    let sigma = tape
        .graph
        .shortest_path(a, b, None)
        .ok_or_else(|| invariant("interchange on a disconnected graph"))?;
    let last = sigma.len() - 1;
    for z in (0..n).filter(|&z| !sigma.contains(z)) {
        let (za, zb) = (tape.graph.has_edge(z, a), tape.graph.has_edge(z, b));
        let script = if za && !zb {
            shuffle(&tape.graph, z, &sigma, 0, last)?
        } else if zb && !za {
            shuffle(&tape.graph, z, &sigma, last, 0)?
        } else {
            continue;
        };
        tape.play_all(&script)?;
    }
    if sigma.len() >= 4 {
        // Only the path's second and second-to-last vertices remain; they
        // trade places through the temporary edge ab.
        let s2 = sigma.vertices()[1];
        let s_pen = sigma.vertices()[last - 1];
        relocate(tape, (a, s2), (a, b))?;
        relocate(tape, (s_pen, b), (s_pen, a))?;
        relocate(tape, (b, a), (b, s2))?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::moves::apply_script;

    fn g(n: usize, edges: &[Edge]) -> Graph {
        Graph::from_edges(n, edges.iter().copied()).unwrap()
    }

    fn path(g: &Graph, v: &[Vertex]) -> Path {
        Path::new_in(g, v.to_vec()).unwrap()
    }

    #[test]
    fn slide_along_two_steps() {
        let graph = g(4, &[(0, 1), (1, 2), (0, 3)]);
        let s = slide_along_path(&graph, 3, &path(&graph, &[0, 1, 2])).unwrap();
        assert_eq!(s.moves(), &[Move::slide(3, 0, 1), Move::slide(3, 1, 2)]);
        assert_eq!(
            apply_script(&graph, &s).unwrap().key(),
            vec![(0, 1), (1, 2), (2, 3)]
        );
    }

    #[test]
    fn slide_along_trivial_path() {
        let graph = Graph::path(2);
        assert!(slide_along_path(&graph, 1, &path(&graph, &[0]))
            .unwrap()
            .is_empty());
    }

    #[test]
    fn slide_along_rejects_shortcut() {
        let graph = g(4, &[(0, 1), (1, 2), (0, 3), (1, 3)]);
        let err = slide_along_path(&graph, 3, &path(&graph, &[0, 1, 2])).unwrap_err();
        assert!(err.to_string().contains("index 1"));
    }

    #[test]
    fn shuffle_single_token_is_path_slide() {
        let graph = g(4, &[(0, 1), (1, 2), (3, 0)]);
        let p = path(&graph, &[0, 1, 2]);
        assert_eq!(
            shuffle(&graph, 3, &p, 0, 2).unwrap(),
            slide_along_path(&graph, 3, &p).unwrap()
        );
    }

    #[test]
    fn shuffle_cascades_from_the_top() {
        let graph = g(4, &[(0, 1), (1, 2), (3, 0), (3, 1)]);
        let p = path(&graph, &[0, 1, 2]);
        let s = shuffle(&graph, 3, &p, 0, 2).unwrap();
        assert_eq!(s.moves(), &[Move::slide(3, 1, 2), Move::slide(3, 0, 1)]);
        let out = apply_script(&graph, &s).unwrap();
        assert!(!out.has_edge(3, 0) && out.has_edge(3, 1) && out.has_edge(3, 2));
    }

    #[test]
    fn shuffle_downwards_and_invalid() {
        let graph = g(5, &[(0, 1), (1, 2), (2, 3), (4, 3), (4, 1)]);
        let p = path(&graph, &[0, 1, 2, 3]);
        let out = apply_script(&graph, &shuffle(&graph, 4, &p, 3, 0).unwrap()).unwrap();
        assert_eq!(
            out.neighbors(4).collect::<Vec<_>>(),
            vec![0, 1],
            "token at 3 moved to 0, token at 1 untouched"
        );
        assert!(shuffle(&graph, 4, &p, 1, 1).is_err());
        assert!(shuffle(&graph, 4, &p, 0, 2).is_err());
    }

    #[test]
    fn transfer_paths_examples() {
        let c4 = Graph::cycle(4);
        let t = find_transfer_paths(&c4, (0, 1), 0, 1).unwrap();
        assert_eq!(
            (t.x_path.vertices(), t.y_path.vertices(), t.labels),
            (&[0][..], &[1][..], (0, 1))
        );

        let split = g(4, &[(0, 1), (2, 3)]);
        assert!(find_transfer_paths(&split, (0, 1), 1, 2).is_err());

        let c5 = Graph::cycle(5);
        let t = find_transfer_paths(&c5, (0, 1), 2, 4).unwrap();
        assert_eq!(t.x_path.vertices(), &[2, 1]);
        assert_eq!(t.y_path.vertices(), &[4, 0]);
        assert_eq!(t.labels, (1, 0));
    }

    #[test]
    fn transfer_paths_match_exhaustive_search_on_c5() {
        // Every uv-avoiding simple path from 2 to {0,1} and from 4 to {0,1}.
        let c5 = Graph::cycle(5);
        let avoid = (0, 1);
        let mut best: Option<(usize, Edge)> = None;
        for (a, b) in [(0, 1), (1, 0)] {
            let lx = all_paths(&c5, 2, a, avoid)
                .into_iter()
                .map(|p| p.len())
                .min();
            let ly = all_paths(&c5, 4, b, avoid)
                .into_iter()
                .map(|p| p.len())
                .min();
            if let (Some(lx), Some(ly)) = (lx, ly) {
                if best.is_none_or(|(t, _)| lx + ly < t) {
                    best = Some((lx + ly, (a, b)));
                }
            }
        }
        assert_eq!(
            best.unwrap().1,
            find_transfer_paths(&c5, avoid, 2, 4).unwrap().labels
        );
    }

    fn all_paths(g: &Graph, a: Vertex, b: Vertex, avoid: Edge) -> Vec<Vec<Vertex>> {
        fn go(
            g: &Graph,
            cur: &mut Vec<Vertex>,
            b: Vertex,
            avoid: Edge,
            out: &mut Vec<Vec<Vertex>>,
        ) {
            let last = *cur.last().unwrap();
            if last == b {
                out.push(cur.clone());
                return;
            }
            for w in g.neighbors(last) {
                if cur.contains(&w) || normalize(last, w) == avoid {
                    continue;
                }
                cur.push(w);
                go(g, cur, b, avoid, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        go(g, &mut vec![a], b, avoid, &mut out);
        out
    }

    #[test]
    fn move_edge_shared_endpoint_single_slide() {
        let c4 = Graph::cycle(4);
        let s = move_edge(&c4, (0, 1), (0, 2)).unwrap();
        assert_eq!(s.moves(), &[Move::slide(0, 1, 2)]);
    }

    #[test]
    fn move_edge_disjoint_on_c5() {
        let c5 = Graph::cycle(5);
        let s = move_edge(&c5, (0, 1), (2, 4)).unwrap();
        assert!(s.is_slides_only());
        let out = apply_script(&c5, &s).unwrap();
        assert_eq!(out.key(), vec![(0, 4), (1, 2), (2, 3), (2, 4), (3, 4)]);
    }

    #[test]
    fn move_edge_bridge_case_uses_other_route() {
        // y-a-x-v plus triangle v,u,w; xv is a bridge.
        let (y, a, x, v, u, w) = (0, 1, 2, 3, 4, 5);
        let graph = g(6, &[(y, a), (a, x), (x, v), (v, u), (u, w), (w, v)]);
        let s = move_edge(&graph, (u, v), (x, y)).unwrap();
        let out = apply_script(&graph, &s).unwrap();
        let mut expected = graph.clone();
        expected.remove_edge(u, v).unwrap();
        expected.insert_edge(x, y).unwrap();
        assert_eq!(out, expected);
    }

    #[test]
    fn move_edge_errors() {
        let k4 = Graph::complete(4);
        for (x, y) in [(0, 1), (2, 3)] {
            assert!(move_edge(&k4, (0, 1), (x, y)).is_err());
        }
        let p4 = Graph::path(4);
        assert!(
            move_edge(&p4, (2, 3), (0, 2)).is_err(),
            "would isolate vertex 3"
        );
        assert!(move_edge(&p4, (0, 2), (0, 3)).is_err(), "missing edge");
    }

    #[test]
    fn interchange_examples() {
        let c4 = Graph::cycle(4);
        assert!(interchange(&c4, 0, 2).unwrap().is_empty());

        let p3 = Graph::path(3);
        let s = interchange(&p3, 0, 1).unwrap();
        assert_eq!(s.moves(), &[Move::slide(2, 1, 0)]);
        assert_eq!(apply_script(&p3, &s).unwrap().key(), vec![(0, 1), (0, 2)]);

        let p4 = Graph::path(4);
        let s = interchange(&p4, 0, 3).unwrap();
        assert_eq!(
            apply_script(&p4, &s).unwrap().key(),
            vec![(0, 2), (1, 2), (1, 3)]
        );
    }

    #[test]
    fn interchange_twice_restores() {
        let graph = g(6, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (1, 5), (0, 2)]);
        for (a, b) in [(0, 4), (1, 3), (0, 5), (2, 5)] {
            let once = apply_script(&graph, &interchange(&graph, a, b).unwrap()).unwrap();
            let twice = apply_script(&once, &interchange(&once, a, b).unwrap()).unwrap();
            assert_eq!(twice, graph);
        }
    }
}
