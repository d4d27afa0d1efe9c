//! Primitive rewrites and replayable move scripts.

use std::fmt;

use crate::error::{MoveRejected, Rejection};
use crate::graph::Graph;
use crate::Vertex;

/// One primitive rewrite. Field names follow the roles in each operation;
/// the `.moves` line for each variant lists arguments in declaration order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Move {
    /// Replace edge `{pivot, from}` by `{pivot, to}` along the edge `{from, to}`.
    Slide {
        pivot: Vertex,
        from: Vertex,
        to: Vertex,
    },
    /// Add vertex `new` (must equal the current `n`) joined to `anchor`.
    AddPendant { anchor: Vertex, new: Vertex },
    /// Replace edge `{x, z}` by the path `x - new - z`.
    Subdivide { x: Vertex, z: Vertex, new: Vertex },
    /// Delete the degree-1 vertex `leaf` whose only neighbour is `anchor`.
    RemoveLeaf { leaf: Vertex, anchor: Vertex },
    /// Delete the degree-2 vertex `mid` with neighbours `x`, `z` and join `x` to `z`.
    Smooth { mid: Vertex, x: Vertex, z: Vertex },
}

impl Move {
    pub fn slide(pivot: Vertex, from: Vertex, to: Vertex) -> Self {
        Move::Slide { pivot, from, to }
    }

    pub fn is_slide(&self) -> bool {
        matches!(self, Move::Slide { .. })
    }

    /// Change in vertex count caused by this move.
    pub fn order_delta(&self) -> isize {
        match self {
            Move::Slide { .. } => 0,
            Move::AddPendant { .. } | Move::Subdivide { .. } => 1,
            Move::RemoveLeaf { .. } | Move::Smooth { .. } => -1,
        }
    }

    /// Inverse of a slide. Other moves change the vertex set and have no
    /// inverse inside this vocabulary without extra bookkeeping.
    pub fn inverse_slide(&self) -> Option<Move> {
        match *self {
            Move::Slide { pivot, from, to } => Some(Move::slide(pivot, to, from)),
            _ => None,
        }
    }

    /// Renames every vertex argument through `f`.
    pub fn relabel(&self, f: impl Fn(Vertex) -> Vertex) -> Move {
        match *self {
            Move::Slide { pivot, from, to } => Move::slide(f(pivot), f(from), f(to)),
            Move::AddPendant { anchor, new } => Move::AddPendant {
                anchor: f(anchor),
                new: f(new),
            },
            Move::Subdivide { x, z, new } => Move::Subdivide {
                x: f(x),
                z: f(z),
                new: f(new),
            },
            Move::RemoveLeaf { leaf, anchor } => Move::RemoveLeaf {
                leaf: f(leaf),
                anchor: f(anchor),
            },
            Move::Smooth { mid, x, z } => Move::Smooth {
                mid: f(mid),
                x: f(x),
                z: f(z),
            },
        }
    }
}

impl fmt::Display for Move {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Move::Slide { pivot, from, to } => write!(f, "S {pivot} {from} {to}"),
            Move::AddPendant { anchor, new } => write!(f, "AP {anchor} {new}"),
            Move::Subdivide { x, z, new } => write!(f, "SD {x} {z} {new}"),
            Move::RemoveLeaf { leaf, anchor } => write!(f, "RL {leaf} {anchor}"),
            Move::Smooth { mid, x, z } => write!(f, "SM {mid} {x} {z}"),
        }
    }
}

/// Ordered certificate of moves.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct MoveScript {
    moves: Vec<Move>,
}

impl MoveScript {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn moves(&self) -> &[Move] {
        &self.moves
    }

    pub fn len(&self) -> usize {
        self.moves.len()
    }

    pub fn is_empty(&self) -> bool {
        self.moves.is_empty()
    }

    pub fn push(&mut self, m: Move) {
        self.moves.push(m);
    }

    pub fn append(&mut self, other: MoveScript) {
        self.moves.extend(other.moves);
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Move> {
        self.moves.iter()
    }

    pub fn is_slides_only(&self) -> bool {
        self.moves.iter().all(Move::is_slide)
    }

    /// Reversed script of inverse slides. `None` if any move is not a slide.
    pub fn inverse(&self) -> Option<MoveScript> {
        self.moves
            .iter()
            .rev()
            .map(Move::inverse_slide)
            .collect::<Option<Vec<_>>>()
            .map(MoveScript::from)
    }

    pub fn relabel(&self, f: impl Fn(Vertex) -> Vertex) -> MoveScript {
        self.moves.iter().map(|m| m.relabel(&f)).collect()
    }
}

impl From<Vec<Move>> for MoveScript {
    fn from(moves: Vec<Move>) -> Self {
        Self { moves }
    }
}

impl FromIterator<Move> for MoveScript {
    fn from_iter<I: IntoIterator<Item = Move>>(iter: I) -> Self {
        Self {
            moves: iter.into_iter().collect(),
        }
    }
}

impl Extend<Move> for MoveScript {
    fn extend<I: IntoIterator<Item = Move>>(&mut self, iter: I) {
        self.moves.extend(iter);
    }
}

impl<'a> IntoIterator for &'a MoveScript {
    type Item = &'a Move;
    type IntoIter = std::slice::Iter<'a, Move>;

    fn into_iter(self) -> Self::IntoIter {
        self.moves.iter()
    }
}

impl Graph {
    /// Applies `m` in place. The graph is untouched when the move is rejected.
    pub fn apply_in_place(&mut self, m: &Move) -> Result<(), Rejection> {
        let n = self.n();
        let exists = |v: Vertex| {
            if v < n {
                Ok(())
            } else {
                Err(Rejection::OutOfRange(v))
            }
        };
        let adjacent = |g: &Graph, a, b| {
            if g.has_edge(a, b) {
                Ok(())
            } else {
                Err(Rejection::NotAdjacent(a, b))
            }
        };
        let apart = |g: &Graph, a, b| {
            if g.has_edge(a, b) {
                Err(Rejection::AlreadyAdjacent(a, b))
            } else {
                Ok(())
            }
        };
        match *m {
            Move::Slide { pivot, from, to } => {
                exists(pivot)?;
                exists(from)?;
                exists(to)?;
                if pivot == from || from == to || pivot == to {
                    return Err(Rejection::NotDistinct);
                }
                adjacent(self, pivot, from)?;
                adjacent(self, from, to)?;
                apart(self, pivot, to)?;
                self.remove_edge(pivot, from).expect("checked");
                self.insert_edge(pivot, to).expect("checked");
            }
            Move::AddPendant { anchor, new } => {
                exists(anchor)?;
                if new != n {
                    return Err(Rejection::WrongNewVertex {
                        expected: n,
                        got: new,
                    });
                }
                self.push_vertex();
                self.insert_edge(anchor, new).expect("checked");
            }
            Move::Subdivide { x, z, new } => {
                exists(x)?;
                exists(z)?;
                if new != n {
                    return Err(Rejection::WrongNewVertex {
                        expected: n,
                        got: new,
                    });
                }
                if x == z {
                    return Err(Rejection::NotDistinct);
                }
                adjacent(self, x, z)?;
                self.push_vertex();
                self.remove_edge(x, z).expect("checked");
                self.insert_edge(x, new).expect("checked");
                self.insert_edge(new, z).expect("checked");
            }
            Move::RemoveLeaf { leaf, anchor } => {
                exists(leaf)?;
                exists(anchor)?;
                if leaf == anchor {
                    return Err(Rejection::NotDistinct);
                }
                if self.degree(leaf) != 1 {
                    return Err(Rejection::WrongDegree {
                        vertex: leaf,
                        expected: 1,
                        actual: self.degree(leaf),
                    });
                }
                adjacent(self, leaf, anchor)?;
                self.delete_vertex(leaf);
            }
            Move::Smooth { mid, x, z } => {
                exists(mid)?;
                exists(x)?;
                exists(z)?;
                if mid == x || mid == z || x == z {
                    return Err(Rejection::NotDistinct);
                }
                if self.degree(mid) != 2 {
                    return Err(Rejection::WrongDegree {
                        vertex: mid,
                        expected: 2,
                        actual: self.degree(mid),
                    });
                }
                if !(self.has_edge(mid, x) && self.has_edge(mid, z)) {
                    return Err(Rejection::WrongNeighbors(mid));
                }
                apart(self, x, z)?;
                self.insert_edge(x, z).expect("checked");
                self.delete_vertex(mid);
            }
        }
        self.debug_check();
        Ok(())
    }
}

/// Applies a single move, returning the new graph.
pub fn apply_move(g: &Graph, m: &Move) -> Result<Graph, MoveRejected> {
    let mut out = g.clone();
    out.apply_in_place(m).map_err(|reason| MoveRejected {
        index: 0,
        mv: *m,
        reason,
    })?;
    Ok(out)
}

/// Left fold of [`apply_move`]; the error carries the failing index.
pub fn apply_script(g: &Graph, s: &MoveScript) -> Result<Graph, MoveRejected> {
    replay(g, s, CheckLevel::Fast)
}

/// How much to verify while replaying a script.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum CheckLevel {
    /// Move preconditions only.
    #[default]
    Fast,
    /// Additionally: connectivity, the edge-count bounds of connected simple
    /// graphs, unchanged Euler characteristic and the curvature identity
    /// after every move.
    Full,
}

pub fn replay(g: &Graph, s: &MoveScript, level: CheckLevel) -> Result<Graph, MoveRejected> {
    replay_inspect(g, s, level, |_, _| {})
}

/// Replays `s`, handing every intermediate state (after move `i`) to `observe`.
pub fn replay_inspect(
    g: &Graph,
    s: &MoveScript,
    level: CheckLevel,
    mut observe: impl FnMut(usize, &Graph),
) -> Result<Graph, MoveRejected> {
    let mut cur = g.clone();
    let chi = cur.euler_characteristic();
    for (index, m) in s.iter().enumerate() {
        let reject = |reason| MoveRejected {
            index,
            mv: *m,
            reason,
        };
        cur.apply_in_place(m).map_err(reject)?;
        if level == CheckLevel::Full {
            full_check(&cur, chi).map_err(reject)?;
        }
        observe(index, &cur);
    }
    Ok(cur)
}

fn full_check(g: &Graph, chi: i64) -> Result<(), Rejection> {
    let (n, e) = (g.n(), g.edge_count());
    if !g.is_connected() {
        return Err(Rejection::Disconnected);
    }
    if n >= 1 && (e + 1 < n || e > n * (n - 1) / 2) {
        return Err(Rejection::EdgeBounds { n, e });
    }
    let stats = g.stats();
    if stats.chi != chi {
        return Err(Rejection::EulerDrift {
            before: chi,
            after: stats.chi,
        });
    }
    if stats.curvature_sum != 2 * stats.chi {
        return Err(Rejection::CurvatureMismatch {
            curvature_sum: stats.curvature_sum,
            chi: stats.chi,
        });
    }
    Ok(())
}

/// A graph together with the script that produced it. Algorithms append
/// moves through [`Tape::play`] so every emitted move is checked against the
/// state it is meant for.
#[derive(Debug, Clone)]
pub(crate) struct Tape {
    pub graph: Graph,
    pub script: MoveScript,
}

impl Tape {
    pub fn new(graph: Graph) -> Self {
        Self {
            graph,
            script: MoveScript::new(),
        }
    }

    pub fn play(&mut self, m: Move) -> crate::Result<()> {
        self.graph.apply_in_place(&m).map_err(|reason| {
            crate::error::invariant(format!("generated move {m} rejected: {reason}"))
        })?;
        self.script.push(m);
        Ok(())
    }

    pub fn play_all(&mut self, s: &MoveScript) -> crate::Result<()> {
        s.iter().try_for_each(|&m| self.play(m))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn slide_on_path() {
        let p3 = Graph::path(3);
        let out = apply_move(&p3, &Move::slide(0, 1, 2)).unwrap();
        assert_eq!(out.key(), vec![(0, 2), (1, 2)]);
    }

    #[test]
    fn slide_rejected_when_target_adjacent() {
        let k3 = Graph::complete(3);
        let err = apply_move(&k3, &Move::slide(0, 1, 2)).unwrap_err();
        assert_eq!(err.reason, Rejection::AlreadyAdjacent(0, 2));
    }

    #[test]
    fn subdivide_edge() {
        let p2 = Graph::path(2);
        let out = apply_move(&p2, &Move::Subdivide { x: 0, z: 1, new: 2 }).unwrap();
        assert_eq!(out.key(), vec![(0, 2), (1, 2)]);
        let bad = apply_move(&p2, &Move::Subdivide { x: 0, z: 1, new: 3 }).unwrap_err();
        assert!(matches!(
            bad.reason,
            Rejection::WrongNewVertex {
                expected: 2,
                got: 3
            }
        ));
    }

    #[test]
    fn add_pendant_and_remove_leaf() {
        let p2 = Graph::path(2);
        let grown = apply_move(&p2, &Move::AddPendant { anchor: 0, new: 2 }).unwrap();
        assert_eq!(grown.key(), vec![(0, 1), (0, 2)]);
        let shrunk = apply_move(&grown, &Move::RemoveLeaf { leaf: 1, anchor: 0 }).unwrap();
        assert_eq!(shrunk.key(), vec![(0, 1)]);
        assert!(apply_move(&grown, &Move::RemoveLeaf { leaf: 0, anchor: 1 }).is_err());
    }

    #[test]
    fn smooth_requires_non_adjacent_ends() {
        let p3 = Graph::path(3);
        let out = apply_move(&p3, &Move::Smooth { mid: 1, x: 0, z: 2 }).unwrap();
        assert_eq!(out.key(), vec![(0, 1)]);
        let k3 = Graph::complete(3);
        let err = apply_move(&k3, &Move::Smooth { mid: 1, x: 0, z: 2 }).unwrap_err();
        assert_eq!(err.reason, Rejection::AlreadyAdjacent(0, 2));
    }

    #[test]
    fn script_fold() {
        let p3 = Graph::path(3);
        assert_eq!(apply_script(&p3, &MoveScript::new()).unwrap(), p3);
        let there_and_back = MoveScript::from(vec![Move::slide(0, 1, 2), Move::slide(0, 2, 1)]);
        assert_eq!(apply_script(&p3, &there_and_back).unwrap(), p3);
        let bad = MoveScript::from(vec![Move::slide(0, 1, 2), Move::slide(0, 1, 2)]);
        assert_eq!(apply_script(&p3, &bad).unwrap_err().index, 1);
    }

    #[test]
    fn full_replay_flags_smooth_into_triangle() {
        let k3 = Graph::complete(3);
        let s = MoveScript::from(vec![Move::Smooth { mid: 1, x: 0, z: 2 }]);
        assert!(replay(&k3, &s, CheckLevel::Full).is_err());
        assert_eq!(
            replay(&k3, &MoveScript::new(), CheckLevel::Full).unwrap(),
            k3
        );
    }

    #[test]
    fn inverse_reverses_order() {
        let s = MoveScript::from(vec![Move::slide(0, 1, 2), Move::slide(3, 4, 5)]);
        let inv = s.inverse().unwrap();
        assert_eq!(inv.moves(), &[Move::slide(3, 5, 4), Move::slide(0, 2, 1)]);
        let mixed = MoveScript::from(vec![Move::AddPendant { anchor: 0, new: 1 }]);
        assert!(mixed.inverse().is_none());
    }
}
