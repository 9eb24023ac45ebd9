//! Flag-like Pachner moves and a seeded random walk over them.
//!
//! Five local retriangulations connect any two flag-like triangulations of
//! the same curve-surface pair:
//!
//! * `flip22` — replace the shared edge of two triangles by the opposite
//!   diagonal of their quadrilateral (never on a curve edge, and never
//!   creating an edge between two on-curve vertices);
//! * `subdivide13` / `merge31` — add an interior off-curve vertex to a
//!   triangle / remove an off-curve vertex of degree three;
//! * `split24` / `merge42` — insert a vertex into a curve edge, splitting
//!   its two flanking triangles / remove an on-curve vertex of degree four.
//!
//! All of them preserve flag-likeness, the Euler characteristic and the
//! curve. New off-curve vertices always rank last in the off-curve order;
//! any ordering is admissible for the invariant, and appending keeps the
//! records invertible.
//!
//! The complexes here are honest simplicial complexes (no parallel edges,
//! no repeated faces), which restricts applicability: a flip whose target
//! diagonal already exists, or a merge that would duplicate a simplex, is
//! rejected. The random walk simply draws from the enumerated applicable
//! moves, so rejected shapes never come up.

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

use crate::complex::{ComplexParts, CurveSurfaceComplex, Triangle, UEdge, VertexId};
use crate::frobenius_data::BasisKind;

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug, Hash)]
pub enum MoveKind {
    Flip22,
    Subdivide13,
    Merge31,
    Split24,
    Merge42,
}

impl fmt::Display for MoveKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            MoveKind::Flip22 => "flip22",
            MoveKind::Subdivide13 => "subdivide13",
            MoveKind::Merge31 => "merge31",
            MoveKind::Split24 => "split24",
            MoveKind::Merge42 => "merge42",
        };
        f.write_str(s)
    }
}

/// A move together with its target simplex.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum MoveAction {
    Flip22(UEdge),
    Subdivide13(Triangle),
    Merge31(VertexId),
    Split24(UEdge),
    Merge42(VertexId),
}

impl MoveAction {
    pub fn kind(&self) -> MoveKind {
        match self {
            MoveAction::Flip22(_) => MoveKind::Flip22,
            MoveAction::Subdivide13(_) => MoveKind::Subdivide13,
            MoveAction::Merge31(_) => MoveKind::Merge31,
            MoveAction::Split24(_) => MoveKind::Split24,
            MoveAction::Merge42(_) => MoveKind::Merge42,
        }
    }
}

impl fmt::Display for MoveAction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MoveAction::Flip22(e) => write!(f, "flip22 {e}"),
            MoveAction::Subdivide13(t) => write!(f, "subdivide13 {t}"),
            MoveAction::Merge31(v) => write!(f, "merge31 {v}"),
            MoveAction::Split24(e) => write!(f, "split24 {e}"),
            MoveAction::Merge42(v) => write!(f, "merge42 {v}"),
        }
    }
}

/// One applied move, with enough data to invert it.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct MoveRecord {
    pub kind: MoveKind,
    pub action: MoveAction,
    pub added_vertices: Vec<VertexId>,
    pub removed_vertices: Vec<VertexId>,
    pub added_edges: Vec<UEdge>,
    pub removed_edges: Vec<UEdge>,
    pub added_triangles: Vec<Triangle>,
    pub removed_triangles: Vec<Triangle>,
}

impl MoveRecord {
    /// The action that undoes this move. Applying it restores a complex
    /// isomorphic to the original (merge-then-resubdivide may pick a fresh
    /// vertex id).
    pub fn inverse(&self) -> MoveAction {
        match (&self.kind, &self.action) {
            (MoveKind::Flip22, _) => MoveAction::Flip22(self.added_edges[0]),
            (MoveKind::Subdivide13, _) => MoveAction::Merge31(self.added_vertices[0]),
            (MoveKind::Merge31, _) => MoveAction::Subdivide13(self.added_triangles[0]),
            (MoveKind::Split24, _) => MoveAction::Merge42(self.added_vertices[0]),
            (MoveKind::Merge42, _) => MoveAction::Split24(self.added_edges[0]),
        }
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum MoveError {
    #[error("edge {edge} not flippable: {reason}")]
    NotFlippable { edge: UEdge, reason: FlipObstruction },
    #[error("cannot merge at {vertex}: {reason}")]
    NotMergeable { vertex: VertexId, reason: MergeObstruction },
    #[error("edge {edge} not splittable: {reason}")]
    NotSplittable { edge: UEdge, reason: SplitObstruction },
    #[error("no such edge {0}")]
    NoSuchEdge(UEdge),
    #[error("no such triangle {0}")]
    NoSuchTriangle(Triangle),
    #[error("no such vertex {0}")]
    NoSuchVertex(VertexId),
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum FlipObstruction {
    #[error("curve edges cannot be flipped")]
    CurveEdge,
    #[error("the two adjacent triangles do not form a quadrilateral with 4 distinct vertices")]
    DegenerateQuad,
    #[error("the opposite diagonal already exists")]
    DiagonalExists,
    #[error("the opposite diagonal would join two on-curve vertices off the curve")]
    FlagViolation,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum MergeObstruction {
    #[error("vertex lies on the curve")]
    OnCurve,
    #[error("vertex does not lie on the curve")]
    OffCurve,
    #[error("vertex has degree {0}, expected {1}")]
    WrongDegree(usize, usize),
    #[error("merging would duplicate the triangle {0}")]
    DuplicateTriangle(Triangle),
    #[error("merging would duplicate the edge {0}")]
    DuplicateEdge(UEdge),
    #[error("merging would create the triangle {0} lying entirely on the curve")]
    CurveTriangle(Triangle),
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SplitObstruction {
    #[error("edge is not a curve edge")]
    NotCurveEdge,
}

/// Applies a move, returning the new complex and an invertible record.
pub fn apply_move(
    cx: &CurveSurfaceComplex,
    action: MoveAction,
) -> Result<(CurveSurfaceComplex, MoveRecord), MoveError> {
    match action {
        MoveAction::Flip22(e) => flip22(cx, e),
        MoveAction::Subdivide13(t) => subdivide13(cx, t),
        MoveAction::Merge31(v) => merge31(cx, v),
        MoveAction::Split24(e) => split24(cx, e),
        MoveAction::Merge42(v) => merge42(cx, v),
    }
}

/// The two triangles flanking an edge, rotated so the first one contains
/// the directed edge (a, b) and the second (b, a).
fn flanking(
    cx: &CurveSurfaceComplex,
    e: UEdge,
) -> Result<((usize, VertexId), (usize, VertexId)), MoveError> {
    let tris = cx.triangles_at_edge(e);
    if tris.len() != 2 {
        return Err(MoveError::NoSuchEdge(e));
    }
    let (a, b) = e.endpoints();
    let mut forward = None;
    let mut backward = None;
    for &idx in tris {
        let tri = cx.triangles()[idx];
        let verts = tri.vertices();
        for (i, (u, v)) in tri.directed_edges().into_iter().enumerate() {
            if (u, v) == (a, b) {
                forward = Some((idx, verts[(i + 2) % 3]));
            } else if (u, v) == (b, a) {
                backward = Some((idx, verts[(i + 2) % 3]));
            }
        }
    }
    match (forward, backward) {
        (Some(f), Some(bk)) => Ok((f, bk)),
        _ => Err(MoveError::NoSuchEdge(e)),
    }
}

fn rebuild(
    cx: &CurveSurfaceComplex,
    mutate: impl FnOnce(&mut ComplexParts),
) -> CurveSurfaceComplex {
    let mut parts = cx.parts();
    mutate(&mut parts);
    parts.build().expect("move produced a structurally valid complex")
}

fn remove_triangle(parts: &mut ComplexParts, tri: Triangle) {
    let set = tri.vertex_set().map(|v| v.0);
    let pos = parts
        .triangles
        .iter()
        .position(|t| {
            let mut s = *t;
            s.sort_unstable();
            s == set
        })
        .expect("triangle present");
    parts.triangles.swap_remove(pos);
}

/// 2-2 flip: replaces the edge shared by two triangles with the opposite
/// diagonal of their quadrilateral. The edge must not lie on the curve, the
/// diagonal must not already exist, and the diagonal must not join two
/// on-curve vertices (that edge would meet the curve in two points).
pub fn flip22(
    cx: &CurveSurfaceComplex,
    edge: UEdge,
) -> Result<(CurveSurfaceComplex, MoveRecord), MoveError> {
    let data = *cx.edge_data(edge).ok_or(MoveError::NoSuchEdge(edge))?;
    if data.kind == BasisKind::C {
        return Err(MoveError::NotFlippable { edge, reason: FlipObstruction::CurveEdge });
    }
    let ((fwd_idx, x), (bwd_idx, y)) = flanking(cx, edge)?;
    if x == y {
        return Err(MoveError::NotFlippable { edge, reason: FlipObstruction::DegenerateQuad });
    }
    if cx.edge_data(UEdge::new(x, y)).is_some() {
        return Err(MoveError::NotFlippable { edge, reason: FlipObstruction::DiagonalExists });
    }
    if cx.is_on_curve(x) && cx.is_on_curve(y) {
        return Err(MoveError::NotFlippable { edge, reason: FlipObstruction::FlagViolation });
    }
    let (a, b) = edge.endpoints();
    let old_fwd = cx.triangles()[fwd_idx];
    let old_bwd = cx.triangles()[bwd_idx];
    // Quad boundary (CCW): a -> b via x-side? The forward triangle is
    // (a, b, x), the backward (b, a, y); the new CCW triangles around the
    // diagonal are (x, a, y) and (y, b, x).
    let new1 = Triangle::new(x, a, y);
    let new2 = Triangle::new(y, b, x);
    let next = rebuild(cx, |parts| {
        remove_triangle(parts, old_fwd);
        remove_triangle(parts, old_bwd);
        parts.triangles.push(new1.vertices().map(|v| v.0));
        parts.triangles.push(new2.vertices().map(|v| v.0));
    });
    let record = MoveRecord {
        kind: MoveKind::Flip22,
        action: MoveAction::Flip22(edge),
        added_vertices: vec![],
        removed_vertices: vec![],
        added_edges: vec![UEdge::new(x, y)],
        removed_edges: vec![edge],
        added_triangles: vec![new1, new2],
        removed_triangles: vec![old_fwd, old_bwd],
    };
    Ok((next, record))
}

/// 1-3 subdivision: a fresh off-curve vertex inside the triangle, joined to
/// its three corners. Edges to on-curve corners are B-edges, to off-curve
/// corners A-edges; the fresh vertex ranks last.
pub fn subdivide13(
    cx: &CurveSurfaceComplex,
    triangle: Triangle,
) -> Result<(CurveSurfaceComplex, MoveRecord), MoveError> {
    if !cx.triangles().contains(&triangle) {
        return Err(MoveError::NoSuchTriangle(triangle));
    }
    let w = VertexId(cx.next_vertex_id());
    let [v0, v1, v2] = triangle.vertices();
    let new_tris =
        [Triangle::new(v0, v1, w), Triangle::new(v1, v2, w), Triangle::new(v2, v0, w)];
    let next = rebuild(cx, |parts| {
        remove_triangle(parts, triangle);
        parts.vertices.push((w.0, false));
        parts.off_curve_order.push(w.0);
        for t in &new_tris {
            parts.triangles.push(t.vertices().map(|v| v.0));
        }
    });
    let record = MoveRecord {
        kind: MoveKind::Subdivide13,
        action: MoveAction::Subdivide13(triangle),
        added_vertices: vec![w],
        removed_vertices: vec![],
        added_edges: vec![UEdge::new(v0, w), UEdge::new(v1, w), UEdge::new(v2, w)],
        removed_edges: vec![],
        added_triangles: new_tris.to_vec(),
        removed_triangles: vec![triangle],
    };
    Ok((next, record))
}

/// Link of a vertex as a directed cycle, starting from its smallest
/// neighbor. Requires the star to be a single cycle (valid surface).
fn link_cycle(cx: &CurveSurfaceComplex, v: VertexId) -> Vec<VertexId> {
    let mut succ = BTreeMap::new();
    for &idx in cx.triangles_at_vertex(v) {
        let [a, b, c] = cx.triangles()[idx].vertices();
        let (x, y) = if a == v {
            (b, c)
        } else if b == v {
            (c, a)
        } else {
            (a, b)
        };
        succ.insert(x, y);
    }
    let start = *succ.keys().next().expect("vertex has neighbors");
    let mut cycle = vec![start];
    let mut cur = succ[&start];
    while cur != start {
        cycle.push(cur);
        cur = succ[&cur];
    }
    cycle
}

/// 3-1 merge: removes an off-curve vertex of degree exactly three, fusing
/// its star into a single triangle.
pub fn merge31(
    cx: &CurveSurfaceComplex,
    vertex: VertexId,
) -> Result<(CurveSurfaceComplex, MoveRecord), MoveError> {
    if !cx.vertex_ids().any(|v| v == vertex) {
        return Err(MoveError::NoSuchVertex(vertex));
    }
    if cx.is_on_curve(vertex) {
        return Err(MoveError::NotMergeable { vertex, reason: MergeObstruction::OnCurve });
    }
    let degree = cx.vertex_degree(vertex);
    if degree != 3 {
        return Err(MoveError::NotMergeable {
            vertex,
            reason: MergeObstruction::WrongDegree(degree, 3),
        });
    }
    let cycle = link_cycle(cx, vertex);
    debug_assert_eq!(cycle.len(), 3);
    let merged = Triangle::new(cycle[0], cycle[1], cycle[2]);
    if cx.triangles().iter().any(|t| t.vertex_set() == merged.vertex_set()) {
        return Err(MoveError::NotMergeable {
            vertex,
            reason: MergeObstruction::DuplicateTriangle(merged),
        });
    }
    // The merged triangle must not meet the curve in its whole boundary.
    if cycle.iter().all(|w| cx.is_on_curve(*w)) {
        return Err(MoveError::NotMergeable {
            vertex,
            reason: MergeObstruction::CurveTriangle(merged),
        });
    }
    let removed_tris: Vec<Triangle> =
        cx.triangles_at_vertex(vertex).iter().map(|&i| cx.triangles()[i]).collect();
    let next = rebuild(cx, |parts| {
        for t in &removed_tris {
            remove_triangle(parts, *t);
        }
        parts.triangles.push(merged.vertices().map(|v| v.0));
        parts.vertices.retain(|(v, _)| *v != vertex.0);
        parts.off_curve_order.retain(|v| *v != vertex.0);
    });
    let record = MoveRecord {
        kind: MoveKind::Merge31,
        action: MoveAction::Merge31(vertex),
        added_vertices: vec![],
        removed_vertices: vec![vertex],
        added_edges: vec![],
        removed_edges: cycle.iter().map(|&n| UEdge::new(vertex, n)).collect(),
        added_triangles: vec![merged],
        removed_triangles: removed_tris,
    };
    Ok((next, record))
}

/// 2-4 split: inserts a fresh on-curve vertex into a curve edge, replacing
/// the edge by two curve edges and splitting both flanking triangles.
pub fn split24(
    cx: &CurveSurfaceComplex,
    curve_edge: UEdge,
) -> Result<(CurveSurfaceComplex, MoveRecord), MoveError> {
    let data = *cx.edge_data(curve_edge).ok_or(MoveError::NoSuchEdge(curve_edge))?;
    if data.kind != BasisKind::C {
        return Err(MoveError::NotSplittable {
            edge: curve_edge,
            reason: SplitObstruction::NotCurveEdge,
        });
    }
    let (p1, p2) = (data.tail, data.head);
    // Forward triangle contains p1 -> p2, backward contains p2 -> p1.
    let ((fwd_idx, x), (bwd_idx, y)) = {
        let tris = cx.triangles_at_edge(curve_edge);
        debug_assert_eq!(tris.len(), 2);
        let mut fwd = None;
        let mut bwd = None;
        for &idx in tris {
            let tri = cx.triangles()[idx];
            let verts = tri.vertices();
            for (i, (u, v)) in tri.directed_edges().into_iter().enumerate() {
                if (u, v) == (p1, p2) {
                    fwd = Some((idx, verts[(i + 2) % 3]));
                } else if (u, v) == (p2, p1) {
                    bwd = Some((idx, verts[(i + 2) % 3]));
                }
            }
        }
        (fwd.expect("valid complex"), bwd.expect("valid complex"))
    };
    let w = VertexId(cx.next_vertex_id());
    let old_fwd = cx.triangles()[fwd_idx];
    let old_bwd = cx.triangles()[bwd_idx];
    let new_tris = [
        Triangle::new(p1, w, x),
        Triangle::new(w, p2, x),
        Triangle::new(p2, w, y),
        Triangle::new(w, p1, y),
    ];
    let next = rebuild(cx, |parts| {
        remove_triangle(parts, old_fwd);
        remove_triangle(parts, old_bwd);
        for t in &new_tris {
            parts.triangles.push(t.vertices().map(|v| v.0));
        }
        parts.vertices.push((w.0, true));
        for cycle in parts.curve_cycles.iter_mut() {
            let n = cycle.len();
            if let Some(i) = (0..n)
                .find(|&i| cycle[i] == p1.0 && cycle[(i + 1) % n] == p2.0)
            {
                cycle.insert(i + 1, w.0);
                break;
            }
        }
    });
    let record = MoveRecord {
        kind: MoveKind::Split24,
        action: MoveAction::Split24(curve_edge),
        added_vertices: vec![w],
        removed_vertices: vec![],
        added_edges: vec![
            UEdge::new(p1, w),
            UEdge::new(w, p2),
            UEdge::new(w, x),
            UEdge::new(w, y),
        ],
        removed_edges: vec![curve_edge],
        added_triangles: new_tris.to_vec(),
        removed_triangles: vec![old_fwd, old_bwd],
    };
    Ok((next, record))
}

/// 4-2 merge: removes an on-curve vertex of degree exactly four, fusing its
/// two curve edges into one. The flag-like link of such a vertex alternates
/// curve neighbors and off-curve neighbors.
pub fn merge42(
    cx: &CurveSurfaceComplex,
    vertex: VertexId,
) -> Result<(CurveSurfaceComplex, MoveRecord), MoveError> {
    if !cx.vertex_ids().any(|v| v == vertex) {
        return Err(MoveError::NoSuchVertex(vertex));
    }
    if !cx.is_on_curve(vertex) {
        return Err(MoveError::NotMergeable { vertex, reason: MergeObstruction::OffCurve });
    }
    let degree = cx.vertex_degree(vertex);
    if degree != 4 {
        return Err(MoveError::NotMergeable {
            vertex,
            reason: MergeObstruction::WrongDegree(degree, 4),
        });
    }
    let p1 = cx.curve_predecessor(vertex).expect("on-curve vertex has a predecessor");
    let p2 = cx.curve_successor(vertex).expect("on-curve vertex has a successor");
    if p1 == p2 || cx.edge_data(UEdge::new(p1, p2)).is_some() {
        return Err(MoveError::NotMergeable {
            vertex,
            reason: MergeObstruction::DuplicateEdge(if p1 == p2 {
                UEdge::new(p1, vertex)
            } else {
                UEdge::new(p1, p2)
            }),
        });
    }
    // Link cycle alternates (p1, ?, p2, ?); rotate it to start at p1.
    let mut cycle = link_cycle(cx, vertex);
    let pos = cycle.iter().position(|&v| v == p1).expect("p1 in link");
    cycle.rotate_left(pos);
    debug_assert_eq!(cycle.len(), 4);
    debug_assert_eq!(cycle[2], p2, "flag-like link alternates curve neighbors");
    let (x, y) = (cycle[1], cycle[3]);
    let new1 = Triangle::new(p1, x, p2);
    let new2 = Triangle::new(p2, y, p1);
    for t in [new1, new2] {
        if cx.triangles().iter().any(|u| u.vertex_set() == t.vertex_set()) {
            return Err(MoveError::NotMergeable {
                vertex,
                reason: MergeObstruction::DuplicateTriangle(t),
            });
        }
    }
    let removed_tris: Vec<Triangle> =
        cx.triangles_at_vertex(vertex).iter().map(|&i| cx.triangles()[i]).collect();
    let next = rebuild(cx, |parts| {
        for t in &removed_tris {
            remove_triangle(parts, *t);
        }
        parts.triangles.push(new1.vertices().map(|v| v.0));
        parts.triangles.push(new2.vertices().map(|v| v.0));
        parts.vertices.retain(|(v, _)| *v != vertex.0);
        for cycle in parts.curve_cycles.iter_mut() {
            cycle.retain(|v| *v != vertex.0);
        }
    });
    let record = MoveRecord {
        kind: MoveKind::Merge42,
        action: MoveAction::Merge42(vertex),
        added_vertices: vec![],
        removed_vertices: vec![vertex],
        added_edges: vec![UEdge::new(p1, p2)],
        removed_edges: vec![
            UEdge::new(p1, vertex),
            UEdge::new(vertex, p2),
            UEdge::new(vertex, x),
            UEdge::new(vertex, y),
        ],
        added_triangles: vec![new1, new2],
        removed_triangles: removed_tris,
    };
    Ok((next, record))
}

/// Every applicable move, in a fixed deterministic order: flips by edge,
/// then (when growth is allowed) subdivisions by triangle and curve splits
/// by edge, then merges by vertex.
pub fn enumerate_moves(cx: &CurveSurfaceComplex, allow_growth: bool) -> Vec<MoveAction> {
    let mut out = Vec::new();
    for (e, data) in cx.edges() {
        if data.kind == BasisKind::C {
            continue;
        }
        if let Ok(((_, x), (_, y))) = flanking(cx, *e) {
            if x != y
                && cx.edge_data(UEdge::new(x, y)).is_none()
                && !(cx.is_on_curve(x) && cx.is_on_curve(y))
            {
                out.push(MoveAction::Flip22(*e));
            }
        }
    }
    if allow_growth {
        for t in cx.triangles() {
            out.push(MoveAction::Subdivide13(*t));
        }
        for (e, data) in cx.edges() {
            if data.kind == BasisKind::C {
                out.push(MoveAction::Split24(*e));
            }
        }
    }
    for v in cx.vertex_ids() {
        if !cx.is_on_curve(v) && cx.vertex_degree(v) == 3 {
            let cycle = link_cycle(cx, v);
            let merged = Triangle::new(cycle[0], cycle[1], cycle[2]);
            if !cx.triangles().iter().any(|t| t.vertex_set() == merged.vertex_set())
                && !cycle.iter().all(|w| cx.is_on_curve(*w))
            {
                out.push(MoveAction::Merge31(v));
            }
        }
    }
    for v in cx.vertex_ids() {
        if cx.is_on_curve(v) && cx.vertex_degree(v) == 4 {
            let p1 = cx.curve_predecessor(v).unwrap();
            let p2 = cx.curve_successor(v).unwrap();
            if p1 != p2 && cx.edge_data(UEdge::new(p1, p2)).is_none() {
                let mut cycle = link_cycle(cx, v);
                let pos = cycle.iter().position(|&w| w == p1).unwrap();
                cycle.rotate_left(pos);
                let candidates =
                    [Triangle::new(p1, cycle[1], p2), Triangle::new(p2, cycle[3], p1)];
                if candidates.iter().all(|t| {
                    !cx.triangles().iter().any(|u| u.vertex_set() == t.vertex_set())
                }) {
                    out.push(MoveAction::Merge42(v));
                }
            }
        }
    }
    out
}

/// A 64-bit linear congruential generator with Knuth's MMIX constants:
/// `state <- state * 6364136223846793005 + 1442695040888963407`. The raw
/// state is the output word. Deterministic across platforms; used for every
/// pseudo-random draw in this crate so runs are reproducible from the seed.
#[derive(Clone, Debug)]
pub struct Lcg64 {
    state: u64,
}

impl Lcg64 {
    pub const MULTIPLIER: u64 = 6364136223846793005;
    pub const INCREMENT: u64 = 1442695040888963407;

    pub fn new(seed: u64) -> Self {
        Lcg64 { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self
            .state
            .wrapping_mul(Self::MULTIPLIER)
            .wrapping_add(Self::INCREMENT);
        self.state
    }

    /// Uniform draw from `0..n` by modulo; the bias is irrelevant at the
    /// desk-scale menu sizes drawn here.
    pub fn below(&mut self, n: usize) -> usize {
        assert!(n > 0);
        (self.next_u64() % n as u64) as usize
    }

    /// In-place Fisher-Yates shuffle.
    pub fn shuffle<T>(&mut self, xs: &mut [T]) {
        for i in (1..xs.len()).rev() {
            let j = self.below(i + 1);
            xs.swap(i, j);
        }
    }
}

/// Configuration of [`random_walk`]: growth moves are excluded from the
/// menu once the edge count exceeds `max_edges`.
#[derive(Clone, Copy, Debug)]
pub struct WalkConfig {
    pub max_edges: usize,
}

impl WalkConfig {
    /// Default bound: two dozen edges above the starting size.
    pub fn for_complex(cx: &CurveSurfaceComplex) -> Self {
        WalkConfig { max_edges: cx.n_edges() + 24 }
    }
}

/// Deterministic random walk: at every step one move is drawn uniformly
/// from the enumerated applicable moves and applied. Every intermediate
/// complex is validated.
pub fn random_walk(
    cx: &CurveSurfaceComplex,
    seed: u64,
    steps: u32,
    config: WalkConfig,
) -> (CurveSurfaceComplex, Vec<MoveRecord>) {
    let mut rng = Lcg64::new(seed);
    let mut current = cx.clone();
    let mut records = Vec::with_capacity(steps as usize);
    for _ in 0..steps {
        let allow_growth = current.n_edges() <= config.max_edges;
        let mut menu = enumerate_moves(&current, allow_growth);
        if menu.is_empty() {
            menu = enumerate_moves(&current, true);
        }
        let action = menu[rng.below(menu.len())];
        let (next, record) =
            apply_move(&current, action).expect("enumerated moves are applicable");
        assert!(next.is_flaglike(), "move {action} broke the complex");
        records.push(record);
        current = next;
    }
    (current, records)
}
