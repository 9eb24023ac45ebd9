//! Oriented triangulated surfaces with an embedded oriented curve.
//!
//! A complex is given by its vertices (each marked on or off the curve), a
//! total order on the off-curve vertices, oriented triangles (vertex triples
//! up to cyclic rotation, counterclockwise = surface orientation), and the
//! curve as a list of cyclically ordered vertex cycles.
//!
//! Everything else is derived. Edges come in three kinds by how many
//! endpoints lie on the curve — A (none), B (one), C (both, lying on the
//! curve) — and each edge gets a direction: C-edges follow the curve
//! orientation, B-edges point away from the curve, A-edges point from the
//! lower-ranked to the higher-ranked off-curve endpoint. A triangle then has
//! either two boundary edges agreeing with its induced orientation (sign +)
//! or one (sign −), which together with its on-curve vertex count selects
//! one of the six coefficient tensors and fixes the argument order.
//!
//! A triangulation is *flag-like* when every simplex meets the curve in
//! nothing or in a single closed face. Operationally: no triangle has all
//! three vertices on the curve, and every edge whose endpoints are both on
//! the curve is itself a curve edge.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;

use thiserror::Error;

use crate::frobenius_data::{BasisKind, CoeffTag};

/// A vertex identifier. Ids need not be contiguous.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug, Hash)]
pub struct VertexId(pub u32);

impl fmt::Display for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// An unordered edge, stored with the smaller vertex first.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug, Hash)]
pub struct UEdge(VertexId, VertexId);

impl UEdge {
    pub fn new(a: VertexId, b: VertexId) -> Self {
        assert_ne!(a, b, "degenerate edge");
        if a < b {
            UEdge(a, b)
        } else {
            UEdge(b, a)
        }
    }

    pub fn endpoints(&self) -> (VertexId, VertexId) {
        (self.0, self.1)
    }

    pub fn contains(&self, v: VertexId) -> bool {
        self.0 == v || self.1 == v
    }

    pub fn other(&self, v: VertexId) -> VertexId {
        if self.0 == v {
            self.1
        } else {
            self.0
        }
    }
}

impl fmt::Display for UEdge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}-{}", self.0, self.1)
    }
}

/// An oriented triangle: a vertex triple up to cyclic rotation, stored with
/// the lowest vertex id first. Reflections are distinct (orientation).
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug, Hash)]
pub struct Triangle([VertexId; 3]);

impl Triangle {
    pub fn new(a: VertexId, b: VertexId, c: VertexId) -> Self {
        assert!(a != b && b != c && a != c, "degenerate triangle");
        let v = [a, b, c];
        let min = (0..3).min_by_key(|&i| v[i]).unwrap();
        Triangle([v[min], v[(min + 1) % 3], v[(min + 2) % 3]])
    }

    pub fn from_ids(t: [u32; 3]) -> Self {
        Triangle::new(VertexId(t[0]), VertexId(t[1]), VertexId(t[2]))
    }

    pub fn vertices(&self) -> [VertexId; 3] {
        self.0
    }

    /// Boundary edges in the induced orientation.
    pub fn directed_edges(&self) -> [(VertexId, VertexId); 3] {
        let [a, b, c] = self.0;
        [(a, b), (b, c), (c, a)]
    }

    pub fn uedges(&self) -> [UEdge; 3] {
        let [a, b, c] = self.0;
        [UEdge::new(a, b), UEdge::new(b, c), UEdge::new(c, a)]
    }

    pub fn contains(&self, v: VertexId) -> bool {
        self.0.contains(&v)
    }

    /// Vertex set, sorted — two triangles with equal sets are the same
    /// simplex regardless of orientation.
    pub fn vertex_set(&self) -> [VertexId; 3] {
        let mut v = self.0;
        v.sort();
        v
    }
}

impl fmt::Display for Triangle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{})", self.0[0], self.0[1], self.0[2])
    }
}

/// Derived per-edge data: the kind and the direction `tail -> head`.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct EdgeData {
    pub kind: BasisKind,
    pub tail: VertexId,
    pub head: VertexId,
}

/// Whether two or one of a triangle's edges agree with its induced
/// boundary orientation.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Hash)]
pub enum Sign {
    Plus,
    Minus,
}

/// Classification of a triangle: on-curve vertex count, sign, and the
/// coefficient tensor it invokes.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct TriangleClass {
    pub on_curve_vertices: u8,
    pub sign: Sign,
    pub tag: CoeffTag,
}

/// Which order the two superscript arguments of a barred coefficient take.
///
/// `Paper` lists the two disagreeing edges head-to-tail along their own
/// directions (they always form a directed path); this is the convention
/// under which the invariance equations hold, and the only one that
/// typechecks for the mixed-kind tensors b̄ and c̄. `ForwardEncounter` is a
/// deliberately wrong test-only variant that lists them in boundary
/// traversal order instead — it only changes triangles of class ā (where
/// both superscripts have kind A), and exists so the test-suite can
/// demonstrate that move-invariance fuzzing discriminates the convention.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Default)]
pub enum BarredOrder {
    #[default]
    Paper,
    ForwardEncounter,
}

/// Structually broken input that cannot even be interpreted as a complex.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum BuildError {
    #[error("vertex {0} referenced but not declared")]
    UnknownVertex(u32),
    #[error("duplicate vertex id {0}")]
    DuplicateVertex(u32),
    #[error("triangle {0:?} has a repeated vertex")]
    DegenerateTriangle([u32; 3]),
    #[error("two triangles share the vertex set {0:?}")]
    DuplicateTriangle([u32; 3]),
    #[error("off_curve_order must list each off-curve vertex exactly once")]
    BadOffCurveOrder,
    #[error("curve cycle {0:?} is too short (need at least 3 vertices)")]
    CurveCycleTooShort(Vec<u32>),
    #[error("vertex {0} appears twice among the curve cycles")]
    RepeatedCurveVertex(u32),
    #[error("vertex {0} lies in a curve cycle but is not marked on-curve")]
    CycleVertexOffCurve(u32),
    #[error("vertex {0} is marked on-curve but lies in no curve cycle")]
    OnCurveVertexNotInCycle(u32),
}

/// A defect of a built complex: not a closed oriented surface, curve not a
/// subcomplex, or a flag-likeness failure. Violations are data, not errors;
/// a complex carrying them can still be inspected and subdivided.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    /// Edge not shared by exactly two triangles.
    EdgeFaceCount { edge: UEdge, count: usize },
    /// Edge traversed in the same direction by both of its triangles.
    EdgeOrientationClash { edge: UEdge },
    /// The link of a vertex is not a single cycle.
    VertexLinkBroken { vertex: VertexId },
    /// A consecutive pair of a curve cycle is not an edge of the surface.
    CurveEdgeMissing { tail: VertexId, head: VertexId },
    /// An edge joins two on-curve vertices without lying on the curve.
    FlagLikeEdge { edge: UEdge },
    /// A triangle has all three vertices on the curve.
    FlagLikeTriangle { triangle: Triangle },
    /// A triangle whose boundary agrees with 0 or 3 of its edge directions.
    OrientationContradiction { triangle: Triangle },
}

impl Violation {
    /// Flag-likeness failures, as opposed to surface/curve defects.
    pub fn is_flag_violation(&self) -> bool {
        matches!(self, Violation::FlagLikeEdge { .. } | Violation::FlagLikeTriangle { .. })
    }
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::EdgeFaceCount { edge, count } => {
                write!(f, "edge {edge} lies in {count} triangles (expected 2)")
            }
            Violation::EdgeOrientationClash { edge } => {
                write!(f, "edge {edge} is traversed twice in the same direction")
            }
            Violation::VertexLinkBroken { vertex } => {
                write!(f, "link of vertex {vertex} is not a single cycle")
            }
            Violation::CurveEdgeMissing { tail, head } => {
                write!(f, "curve edge {tail}->{head} is not an edge of the surface")
            }
            Violation::FlagLikeEdge { edge } => {
                write!(f, "edge {edge} joins two on-curve vertices but is not on the curve")
            }
            Violation::FlagLikeTriangle { triangle } => {
                write!(f, "triangle {triangle} meets the curve in its whole boundary")
            }
            Violation::OrientationContradiction { triangle } => {
                write!(f, "triangle {triangle} agrees with 0 or 3 of its edge directions")
            }
        }
    }
}

/// Error of [`CurveSurfaceComplex::classify_triangle`].
#[derive(Debug, Error, PartialEq, Eq)]
pub enum ClassifyError {
    #[error("triangle {0} not in complex")]
    NoSuchTriangle(Triangle),
    #[error("triangle {0} agrees with 0 or 3 of its edge directions")]
    OrientationContradiction(Triangle),
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SubdivideError {
    #[error("complex is not a closed oriented surface with curve subcomplex: {0}")]
    InvalidSurface(String),
}

#[derive(Debug, Error, PartialEq, Eq)]
#[error("unknown seed complex {0:?}")]
pub struct UnknownSeed(pub String);

/// Raw, serde-friendly description of a complex.
#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub struct ComplexParts {
    /// `[id, on_curve]` pairs.
    pub vertices: Vec<(u32, bool)>,
    /// Off-curve vertex ids, earliest rank first.
    pub off_curve_order: Vec<u32>,
    /// Oriented vertex triples, counterclockwise.
    pub triangles: Vec<[u32; 3]>,
    /// Cyclically ordered on-curve vertex lists.
    pub curve_cycles: Vec<Vec<u32>>,
}

impl ComplexParts {
    pub fn build(self) -> Result<CurveSurfaceComplex, BuildError> {
        CurveSurfaceComplex::new(self)
    }
}

/// An oriented triangulated curve-surface pair with derived edge data.
/// Immutable: the moves and subdivision return new complexes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CurveSurfaceComplex {
    on_curve: BTreeMap<VertexId, bool>,
    off_curve_order: Vec<VertexId>,
    triangles: Vec<Triangle>,
    curve_cycles: Vec<Vec<VertexId>>,
    edges: BTreeMap<UEdge, EdgeData>,
    rank: BTreeMap<VertexId, usize>,
    curve_next: BTreeMap<VertexId, VertexId>,
    edge_triangles: BTreeMap<UEdge, Vec<usize>>,
    vertex_triangles: BTreeMap<VertexId, Vec<usize>>,
}

impl CurveSurfaceComplex {
    pub fn new(parts: ComplexParts) -> Result<Self, BuildError> {
        let mut on_curve = BTreeMap::new();
        for (id, oc) in &parts.vertices {
            if on_curve.insert(VertexId(*id), *oc).is_some() {
                return Err(BuildError::DuplicateVertex(*id));
            }
        }

        // Curve cycles: disjoint, simple, on-curve, length >= 3, covering
        // all on-curve vertices.
        let mut in_cycle = BTreeSet::new();
        let mut curve_next = BTreeMap::new();
        let mut curve_cycles = Vec::new();
        for cycle in &parts.curve_cycles {
            if cycle.len() < 3 {
                return Err(BuildError::CurveCycleTooShort(cycle.clone()));
            }
            let vs: Vec<VertexId> = cycle.iter().map(|&v| VertexId(v)).collect();
            for v in &vs {
                match on_curve.get(v) {
                    None => return Err(BuildError::UnknownVertex(v.0)),
                    Some(false) => return Err(BuildError::CycleVertexOffCurve(v.0)),
                    Some(true) => {}
                }
                if !in_cycle.insert(*v) {
                    return Err(BuildError::RepeatedCurveVertex(v.0));
                }
            }
            for i in 0..vs.len() {
                curve_next.insert(vs[i], vs[(i + 1) % vs.len()]);
            }
            curve_cycles.push(canonical_cycle(vs));
        }
        curve_cycles.sort();
        for (v, oc) in &on_curve {
            if *oc && !in_cycle.contains(v) {
                return Err(BuildError::OnCurveVertexNotInCycle(v.0));
            }
        }

        // Off-curve order: a permutation of the off-curve vertices.
        let mut rank = BTreeMap::new();
        for (i, id) in parts.off_curve_order.iter().enumerate() {
            let v = VertexId(*id);
            match on_curve.get(&v) {
                None => return Err(BuildError::UnknownVertex(*id)),
                Some(true) => return Err(BuildError::BadOffCurveOrder),
                Some(false) => {}
            }
            if rank.insert(v, i).is_some() {
                return Err(BuildError::BadOffCurveOrder);
            }
        }
        let off_count = on_curve.values().filter(|oc| !**oc).count();
        if rank.len() != off_count {
            return Err(BuildError::BadOffCurveOrder);
        }
        let off_curve_order: Vec<VertexId> =
            parts.off_curve_order.iter().map(|&v| VertexId(v)).collect();

        // Triangles: distinct vertex sets, known vertices.
        let mut triangles = Vec::new();
        let mut seen_sets = BTreeSet::new();
        for t in &parts.triangles {
            if t[0] == t[1] || t[1] == t[2] || t[0] == t[2] {
                return Err(BuildError::DegenerateTriangle(*t));
            }
            for v in t {
                if !on_curve.contains_key(&VertexId(*v)) {
                    return Err(BuildError::UnknownVertex(*v));
                }
            }
            let tri = Triangle::from_ids(*t);
            if !seen_sets.insert(tri.vertex_set()) {
                return Err(BuildError::DuplicateTriangle(*t));
            }
            triangles.push(tri);
        }
        triangles.sort();

        let mut cx = CurveSurfaceComplex {
            on_curve,
            off_curve_order,
            triangles,
            curve_cycles,
            edges: BTreeMap::new(),
            rank,
            curve_next,
            edge_triangles: BTreeMap::new(),
            vertex_triangles: BTreeMap::new(),
        };
        cx.derive();
        Ok(cx)
    }

    fn derive(&mut self) {
        self.edges.clear();
        self.edge_triangles.clear();
        self.vertex_triangles.clear();
        for (idx, tri) in self.triangles.iter().enumerate() {
            for e in tri.uedges() {
                self.edge_triangles.entry(e).or_default().push(idx);
            }
            for v in tri.vertices() {
                self.vertex_triangles.entry(v).or_default().push(idx);
            }
        }
        let keys: Vec<UEdge> = self.edge_triangles.keys().copied().collect();
        for e in keys {
            let (a, b) = e.endpoints();
            let data = match (self.is_on_curve(a), self.is_on_curve(b)) {
                (false, false) => {
                    // A-edge: earlier rank to later rank.
                    let (tail, head) = if self.rank[&a] < self.rank[&b] { (a, b) } else { (b, a) };
                    EdgeData { kind: BasisKind::A, tail, head }
                }
                (true, false) => EdgeData { kind: BasisKind::B, tail: a, head: b },
                (false, true) => EdgeData { kind: BasisKind::B, tail: b, head: a },
                (true, true) => {
                    if self.curve_next.get(&a) == Some(&b) {
                        EdgeData { kind: BasisKind::C, tail: a, head: b }
                    } else if self.curve_next.get(&b) == Some(&a) {
                        EdgeData { kind: BasisKind::C, tail: b, head: a }
                    } else {
                        // Flag-likeness violation; direction is a placeholder
                        // so the complex can still be inspected.
                        EdgeData { kind: BasisKind::C, tail: a, head: b }
                    }
                }
            };
            self.edges.insert(e, data);
        }
    }

    pub fn parts(&self) -> ComplexParts {
        ComplexParts {
            vertices: self.on_curve.iter().map(|(v, oc)| (v.0, *oc)).collect(),
            off_curve_order: self.off_curve_order.iter().map(|v| v.0).collect(),
            triangles: self.triangles.iter().map(|t| t.vertices().map(|v| v.0)).collect(),
            curve_cycles: self
                .curve_cycles
                .iter()
                .map(|c| c.iter().map(|v| v.0).collect())
                .collect(),
        }
    }

    pub fn vertex_ids(&self) -> impl Iterator<Item = VertexId> + '_ {
        self.on_curve.keys().copied()
    }

    pub fn is_on_curve(&self, v: VertexId) -> bool {
        *self.on_curve.get(&v).expect("vertex in complex")
    }

    pub fn n_vertices(&self) -> usize {
        self.on_curve.len()
    }

    pub fn n_on_curve_vertices(&self) -> usize {
        self.on_curve.values().filter(|oc| **oc).count()
    }

    pub fn n_off_curve_vertices(&self) -> usize {
        self.on_curve.len() - self.n_on_curve_vertices()
    }

    pub fn n_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn n_triangles(&self) -> usize {
        self.triangles.len()
    }

    pub fn triangles(&self) -> &[Triangle] {
        &self.triangles
    }

    pub fn edges(&self) -> &BTreeMap<UEdge, EdgeData> {
        &self.edges
    }

    pub fn edge_data(&self, e: UEdge) -> Option<&EdgeData> {
        self.edges.get(&e)
    }

    pub fn off_curve_order(&self) -> &[VertexId] {
        &self.off_curve_order
    }

    pub fn curve_cycles(&self) -> &[Vec<VertexId>] {
        &self.curve_cycles
    }

    pub fn curve_successor(&self, v: VertexId) -> Option<VertexId> {
        self.curve_next.get(&v).copied()
    }

    pub fn curve_predecessor(&self, v: VertexId) -> Option<VertexId> {
        self.curve_next.iter().find(|(_, n)| **n == v).map(|(p, _)| *p)
    }

    /// Triangle indices incident to an edge.
    pub fn triangles_at_edge(&self, e: UEdge) -> &[usize] {
        self.edge_triangles.get(&e).map(|v| v.as_slice()).unwrap_or(&[])
    }

    /// Triangle indices incident to a vertex.
    pub fn triangles_at_vertex(&self, v: VertexId) -> &[usize] {
        self.vertex_triangles.get(&v).map(|v| v.as_slice()).unwrap_or(&[])
    }

    pub fn vertex_degree(&self, v: VertexId) -> usize {
        self.edges.keys().filter(|e| e.contains(v)).count()
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.n_vertices() as i64 - self.n_edges() as i64 + self.n_triangles() as i64
    }

    pub fn curve_components(&self) -> usize {
        self.curve_cycles.len()
    }

    /// Fresh id, one past the largest in use.
    pub fn next_vertex_id(&self) -> u32 {
        self.on_curve.keys().map(|v| v.0).max().map_or(0, |m| m + 1)
    }

    /// All defects. Empty result = closed oriented surface, curve a
    /// disjoint union of embedded cycles, and the triangulation flag-like.
    pub fn validate(&self) -> Vec<Violation> {
        let mut out = Vec::new();

        // Every edge in exactly two triangles with opposite induced
        // orientations.
        for (e, tris) in &self.edge_triangles {
            if tris.len() != 2 {
                out.push(Violation::EdgeFaceCount { edge: *e, count: tris.len() });
                continue;
            }
            let dir = |idx: usize| -> (VertexId, VertexId) {
                self.triangles[idx]
                    .directed_edges()
                    .into_iter()
                    .find(|(u, v)| UEdge::new(*u, *v) == *e)
                    .unwrap()
            };
            if dir(tris[0]) == dir(tris[1]) {
                out.push(Violation::EdgeOrientationClash { edge: *e });
            }
        }

        // Vertex links are single cycles.
        for v in self.vertex_ids() {
            let tris = self.triangles_at_vertex(v);
            if tris.is_empty() {
                out.push(Violation::VertexLinkBroken { vertex: v });
                continue;
            }
            let mut succ = BTreeMap::new();
            let mut broken = false;
            for &idx in tris {
                let [a, b, c] = self.triangles[idx].vertices();
                let (x, y) = if a == v {
                    (b, c)
                } else if b == v {
                    (c, a)
                } else {
                    (a, b)
                };
                if succ.insert(x, y).is_some() {
                    broken = true;
                }
            }
            if !broken {
                // Walk the successor map: one cycle covering every neighbor.
                let start = *succ.keys().next().unwrap();
                let mut cur = start;
                let mut steps = 0;
                loop {
                    match succ.get(&cur) {
                        Some(&n) => {
                            cur = n;
                            steps += 1;
                        }
                        None => {
                            broken = true;
                            break;
                        }
                    }
                    if cur == start || steps > succ.len() {
                        break;
                    }
                }
                if cur != start || steps != succ.len() {
                    broken = true;
                }
            }
            if broken {
                out.push(Violation::VertexLinkBroken { vertex: v });
            }
        }

        // Curve edges must exist as edges of the surface.
        for (tail, head) in self.curve_next.iter() {
            if !self.edges.contains_key(&UEdge::new(*tail, *head)) {
                out.push(Violation::CurveEdgeMissing { tail: *tail, head: *head });
            }
        }

        // Flag-likeness.
        let mut flag_edges = BTreeSet::new();
        for (e, _) in self.edges.iter() {
            let (a, b) = e.endpoints();
            if self.is_on_curve(a) && self.is_on_curve(b) {
                let on_curve =
                    self.curve_next.get(&a) == Some(&b) || self.curve_next.get(&b) == Some(&a);
                if !on_curve {
                    flag_edges.insert(*e);
                    out.push(Violation::FlagLikeEdge { edge: *e });
                }
            }
        }
        for tri in &self.triangles {
            if tri.vertices().iter().all(|v| self.is_on_curve(*v)) {
                out.push(Violation::FlagLikeTriangle { triangle: *tri });
            }
        }

        // Orientation conventions must leave each triangle with 1 or 2
        // agreeing edges. The guarantee only holds where flag-likeness
        // does: a triangle that is itself a flag violation (or leans on a
        // flag-violating edge, whose direction is a mere placeholder) is
        // already reported above and skipped here.
        for tri in &self.triangles {
            if tri.vertices().iter().all(|v| self.is_on_curve(*v))
                || tri.uedges().iter().any(|e| flag_edges.contains(e))
            {
                continue;
            }
            let agreeing = self.agreement_count(tri);
            if agreeing == 0 || agreeing == 3 {
                out.push(Violation::OrientationContradiction { triangle: *tri });
            }
        }

        out
    }

    /// True when the complex only has flag-likeness defects, if any.
    pub fn is_closed_surface(&self) -> bool {
        self.validate().iter().all(|v| v.is_flag_violation())
    }

    pub fn is_flaglike(&self) -> bool {
        self.validate().is_empty()
    }

    fn agreement_count(&self, tri: &Triangle) -> usize {
        tri.directed_edges()
            .into_iter()
            .filter(|(u, v)| {
                let e = UEdge::new(*u, *v);
                self.edges[&e].tail == *u
            })
            .count()
    }

    /// Classifies a triangle and returns its edges in coefficient-argument
    /// order, under the standard convention.
    pub fn classify_triangle(
        &self,
        tri: &Triangle,
    ) -> Result<(TriangleClass, [UEdge; 3]), ClassifyError> {
        self.classify_triangle_with(tri, BarredOrder::Paper)
    }

    /// As [`classify_triangle`](Self::classify_triangle), with an explicit
    /// barred-argument convention (the wrong one exists for falsification
    /// tests only).
    pub fn classify_triangle_with(
        &self,
        tri: &Triangle,
        order: BarredOrder,
    ) -> Result<(TriangleClass, [UEdge; 3]), ClassifyError> {
        if self.triangles.binary_search(tri).is_err() {
            return Err(ClassifyError::NoSuchTriangle(*tri));
        }
        let directed = tri.directed_edges();
        let agrees: Vec<bool> = directed
            .iter()
            .map(|(u, v)| self.edges[&UEdge::new(*u, *v)].tail == *u)
            .collect();
        let k = tri.vertices().iter().filter(|v| self.is_on_curve(**v)).count() as u8;
        let ue = |i: usize| UEdge::new(directed[i].0, directed[i].1);
        match agrees.iter().filter(|a| **a).count() {
            2 => {
                // Subscripts: the two agreeing edges in the order the
                // boundary traverses them starting after the disagreeing
                // one; superscript: the disagreeing edge.
                let d = agrees.iter().position(|a| !a).unwrap();
                let tag = match k {
                    0 => CoeffTag::Mult,
                    1 => CoeffTag::Act,
                    _ => CoeffTag::DefAct,
                };
                let class = TriangleClass { on_curve_vertices: k, sign: Sign::Plus, tag };
                Ok((class, [ue((d + 1) % 3), ue((d + 2) % 3), ue(d)]))
            }
            1 => {
                // Subscript: the agreeing edge. Superscripts: the two
                // disagreeing edges head-to-tail along their own
                // directions, i.e. the reverse of boundary encounter order.
                let g = agrees.iter().position(|a| *a).unwrap();
                let tag = match k {
                    0 => CoeffTag::Comult,
                    1 => CoeffTag::Coact,
                    _ => CoeffTag::DefCoact,
                };
                let class = TriangleClass { on_curve_vertices: k, sign: Sign::Minus, tag };
                let mut args = [ue(g), ue((g + 2) % 3), ue((g + 1) % 3)];
                if order == BarredOrder::ForwardEncounter && tag == CoeffTag::Comult {
                    args.swap(1, 2);
                }
                Ok((class, args))
            }
            _ => Err(ClassifyError::OrientationContradiction(*tri)),
        }
    }

    /// Counts triangles per class: `counts[k][0]` is |T₂^{k,+}| and
    /// `counts[k][1]` is |T₂^{k,-}|.
    pub fn class_counts(&self) -> Result<[[usize; 2]; 3], ClassifyError> {
        let mut counts = [[0usize; 2]; 3];
        for tri in &self.triangles {
            let (class, _) = self.classify_triangle(tri)?;
            let s = match class.sign {
                Sign::Plus => 0,
                Sign::Minus => 1,
            };
            counts[class.on_curve_vertices as usize][s] += 1;
        }
        Ok(counts)
    }

    /// Same complex with a different off-curve vertex order (A-edge
    /// directions are re-derived). The normalized invariant must not
    /// depend on this choice.
    pub fn with_off_curve_order(&self, order: Vec<u32>) -> Result<Self, BuildError> {
        let mut parts = self.parts();
        parts.off_curve_order = order;
        parts.build()
    }

    /// Standard barycentric subdivision. New vertices on midpoints of curve
    /// edges join the curve; all other new vertices are appended off-curve,
    /// edge midpoints first (in edge order) and face barycenters after (in
    /// triangle order). The result of subdividing any closed oriented
    /// surface with curve subcomplex is flag-like.
    pub fn barycentric_subdivide(&self) -> Result<Self, SubdivideError> {
        let surface_defects: Vec<Violation> =
            self.validate().into_iter().filter(|v| !v.is_flag_violation()).collect();
        if !surface_defects.is_empty() {
            return Err(SubdivideError::InvalidSurface(surface_defects[0].to_string()));
        }

        let mut next_id = self.next_vertex_id();
        let mut vertices: Vec<(u32, bool)> =
            self.on_curve.iter().map(|(v, oc)| (v.0, *oc)).collect();
        let mut off_order: Vec<u32> = self.off_curve_order.iter().map(|v| v.0).collect();

        let is_curve_edge = |e: &UEdge| -> bool {
            let (a, b) = e.endpoints();
            self.curve_next.get(&a) == Some(&b) || self.curve_next.get(&b) == Some(&a)
        };

        // Midpoints, in edge order.
        let mut midpoint = BTreeMap::new();
        let mut off_midpoints = Vec::new();
        for e in self.edges.keys() {
            let id = next_id;
            next_id += 1;
            let on = is_curve_edge(e);
            vertices.push((id, on));
            if !on {
                off_midpoints.push(id);
            }
            midpoint.insert(*e, VertexId(id));
        }
        off_order.extend(off_midpoints);

        // Barycenters, in triangle order.
        let mut barycenter = Vec::with_capacity(self.triangles.len());
        for _ in &self.triangles {
            let id = next_id;
            next_id += 1;
            vertices.push((id, false));
            off_order.push(id);
            barycenter.push(VertexId(id));
        }

        let mut triangles = Vec::with_capacity(6 * self.triangles.len());
        for (idx, tri) in self.triangles.iter().enumerate() {
            let [v0, v1, v2] = tri.vertices();
            let b = barycenter[idx];
            for (x, y) in [(v0, v1), (v1, v2), (v2, v0)] {
                let m = midpoint[&UEdge::new(x, y)];
                triangles.push([x.0, m.0, b.0]);
                triangles.push([m.0, y.0, b.0]);
            }
        }

        let curve_cycles = self
            .curve_cycles
            .iter()
            .map(|cycle| {
                let mut out = Vec::with_capacity(2 * cycle.len());
                for i in 0..cycle.len() {
                    let v = cycle[i];
                    let w = cycle[(i + 1) % cycle.len()];
                    out.push(v.0);
                    out.push(midpoint[&UEdge::new(v, w)].0);
                }
                out
            })
            .collect();

        let parts = ComplexParts {
            vertices,
            off_curve_order: off_order,
            triangles,
            curve_cycles,
        };
        let cx = parts.build().expect("subdivision of a valid surface builds");
        debug_assert!(cx.is_flaglike(), "barycentric subdivision must be flag-like");
        Ok(cx)
    }
}

fn canonical_cycle(mut vs: Vec<VertexId>) -> Vec<VertexId> {
    let min = vs.iter().enumerate().min_by_key(|(_, v)| **v).map(|(i, _)| i).unwrap();
    vs.rotate_left(min);
    vs
}

/// Named starting complexes.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum SeedName {
    PlainSphere,
    PlainTorus,
    SphereEquator,
    TorusMeridian,
}

impl SeedName {
    pub const ALL: [SeedName; 4] = [
        SeedName::PlainSphere,
        SeedName::PlainTorus,
        SeedName::SphereEquator,
        SeedName::TorusMeridian,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            SeedName::PlainSphere => "plain_sphere",
            SeedName::PlainTorus => "plain_torus",
            SeedName::SphereEquator => "sphere_equator",
            SeedName::TorusMeridian => "torus_meridian",
        }
    }
}

impl std::str::FromStr for SeedName {
    type Err = UnknownSeed;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "plain_sphere" => Ok(SeedName::PlainSphere),
            "plain_torus" => Ok(SeedName::PlainTorus),
            "sphere_equator" => Ok(SeedName::SphereEquator),
            "torus_meridian" => Ok(SeedName::TorusMeridian),
            other => Err(UnknownSeed(other.to_owned())),
        }
    }
}

impl fmt::Display for SeedName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Builds a validated flag-like starting complex.
///
/// * `plain_sphere` — the tetrahedron boundary, no curve.
/// * `plain_torus` — the standard 7-vertex triangulated torus, no curve.
/// * `sphere_equator` — barycentric subdivision of the tetrahedron with the
///   3-cycle (0,1,2) as curve (the unsubdivided pair is not flag-like).
/// * `torus_meridian` — barycentric subdivision of the 7-vertex torus with
///   the essential Hamiltonian cycle (0,1,...,6) as curve.
pub fn seed_complex(name: SeedName) -> CurveSurfaceComplex {
    match name {
        SeedName::PlainSphere => tetrahedron(false),
        SeedName::PlainTorus => seven_vertex_torus(false),
        SeedName::SphereEquator => tetrahedron(true)
            .barycentric_subdivide()
            .expect("tetrahedron with curve is a valid surface"),
        SeedName::TorusMeridian => seven_vertex_torus(true)
            .barycentric_subdivide()
            .expect("7-vertex torus with curve is a valid surface"),
    }
}

fn tetrahedron(with_curve: bool) -> CurveSurfaceComplex {
    let on = with_curve;
    let parts = ComplexParts {
        vertices: vec![(0, on), (1, on), (2, on), (3, false)],
        off_curve_order: if with_curve { vec![3] } else { vec![0, 1, 2, 3] },
        triangles: vec![[0, 1, 2], [0, 2, 3], [0, 3, 1], [1, 3, 2]],
        curve_cycles: if with_curve { vec![vec![0, 1, 2]] } else { vec![] },
    };
    parts.build().expect("tetrahedron builds")
}

fn seven_vertex_torus(with_curve: bool) -> CurveSurfaceComplex {
    let on = with_curve;
    let mut triangles = Vec::new();
    for i in 0u32..7 {
        let a = i;
        let b = (i + 1) % 7;
        let c = (i + 3) % 7;
        let d = (i + 2) % 7;
        triangles.push([a, b, c]);
        triangles.push([a, c, d]);
    }
    let parts = ComplexParts {
        vertices: (0..7).map(|i| (i, on)).collect(),
        off_curve_order: if with_curve { vec![] } else { (0..7).collect() },
        triangles,
        curve_cycles: if with_curve { vec![(0..7).collect()] } else { vec![] },
    };
    parts.build().expect("7-vertex torus builds")
}

/// Small auxiliary complexes used by the test-suite and benchmarks.
pub mod fixtures {
    use super::*;

    /// The octahedron: a 6-vertex sphere, no curve.
    pub fn octahedron() -> CurveSurfaceComplex {
        let parts = ComplexParts {
            vertices: (0..6).map(|i| (i, false)).collect(),
            off_curve_order: (0..6).collect(),
            triangles: vec![
                [0, 1, 2],
                [0, 2, 3],
                [0, 3, 4],
                [0, 4, 1],
                [5, 2, 1],
                [5, 3, 2],
                [5, 4, 3],
                [5, 1, 4],
            ],
            curve_cycles: vec![],
        };
        parts.build().expect("octahedron builds")
    }

    /// Bipyramid over an n-gon with the equator as curve: the smallest
    /// flag-like curve-bearing spheres (n ≥ 3). Vertices 0..n form the
    /// equator cycle; n and n+1 are the poles.
    pub fn bipyramid_equator(n: u32) -> CurveSurfaceComplex {
        assert!(n >= 3);
        let north = n;
        let south = n + 1;
        let mut triangles = Vec::new();
        for i in 0..n {
            let j = (i + 1) % n;
            triangles.push([i, j, north]);
            triangles.push([j, i, south]);
        }
        let mut vertices: Vec<(u32, bool)> = (0..n).map(|i| (i, true)).collect();
        vertices.push((north, false));
        vertices.push((south, false));
        let parts = ComplexParts {
            vertices,
            off_curve_order: vec![north, south],
            triangles,
            curve_cycles: vec![(0..n).collect()],
        };
        let cx = parts.build().expect("bipyramid builds");
        debug_assert!(cx.is_flaglike());
        cx
    }

    /// An r×c grid torus (r, c ≥ 3), each square split along a diagonal.
    /// An independently constructed torus triangulation for cross-checks.
    pub fn grid_torus(r: u32, c: u32) -> CurveSurfaceComplex {
        assert!(r >= 3 && c >= 3);
        let v = |i: u32, j: u32| (i % r) * c + (j % c);
        let mut triangles = Vec::new();
        for i in 0..r {
            for j in 0..c {
                let a = v(i, j);
                let b = v(i, j + 1);
                let d = v(i + 1, j + 1);
                let cc = v(i + 1, j);
                triangles.push([a, b, d]);
                triangles.push([a, d, cc]);
            }
        }
        let parts = ComplexParts {
            vertices: (0..r * c).map(|i| (i, false)).collect(),
            off_curve_order: (0..r * c).collect(),
            triangles,
            curve_cycles: vec![],
        };
        parts.build().expect("grid torus builds")
    }
}

/// Canonical-relabeling isomorphism of connected complexes: an id
/// bijection preserving oriented triangles, on-curve flags, the curve
/// successor relation and the relative off-curve rank order.
pub fn canonically_isomorphic(x: &CurveSurfaceComplex, y: &CurveSurfaceComplex) -> bool {
    if x.n_vertices() != y.n_vertices()
        || x.n_edges() != y.n_edges()
        || x.n_triangles() != y.n_triangles()
    {
        return false;
    }
    canonical_signature(x) == canonical_signature(y)
}

type Signature = Vec<u32>;

fn canonical_signature(cx: &CurveSurfaceComplex) -> Signature {
    let mut best: Option<Signature> = None;
    for tri in cx.triangles() {
        for (u, v) in tri.directed_edges() {
            let sig = signature_from(cx, u, v);
            if best.as_ref().is_none_or(|b| sig < *b) {
                best = Some(sig);
            }
        }
    }
    best.expect("non-empty complex")
}

/// Deterministic BFS relabeling rooted at the directed edge (u, v), then a
/// flat encoding of the relabeled complex.
fn signature_from(cx: &CurveSurfaceComplex, u: VertexId, v: VertexId) -> Signature {
    let mut label: BTreeMap<VertexId, u32> = BTreeMap::new();
    let mut order: Vec<VertexId> = Vec::new();
    let assign = |w: VertexId, label: &mut BTreeMap<VertexId, u32>, order: &mut Vec<VertexId>| {
        if !label.contains_key(&w) {
            label.insert(w, order.len() as u32);
            order.push(w);
        }
    };
    assign(u, &mut label, &mut order);
    assign(v, &mut label, &mut order);

    let tri_with = |a: VertexId, b: VertexId| -> Option<usize> {
        cx.triangles_at_edge(UEdge::new(a, b))
            .iter()
            .copied()
            .find(|&idx| cx.triangles()[idx].directed_edges().contains(&(a, b)))
    };

    let root = tri_with(u, v).expect("directed edge lies in a triangle");
    let mut visited = vec![false; cx.n_triangles()];
    let mut queue = VecDeque::new();
    visited[root] = true;
    queue.push_back((root, (u, v)));
    let mut tri_encoding: Vec<u32> = Vec::new();
    while let Some((idx, (a, b))) = queue.pop_front() {
        // Third vertex of the triangle in the rotation starting a, b.
        let verts = cx.triangles()[idx].vertices();
        let pos = verts.iter().position(|&w| w == a).unwrap();
        debug_assert_eq!(verts[(pos + 1) % 3], b);
        let w = verts[(pos + 2) % 3];
        assign(w, &mut label, &mut order);
        tri_encoding.extend([label[&a], label[&b], label[&w]]);
        for (x, y) in [(b, w), (w, a)] {
            if let Some(n) = tri_with(y, x) {
                if !visited[n] {
                    visited[n] = true;
                    queue.push_back((n, (y, x)));
                }
            }
        }
    }
    if visited.iter().any(|v| !v) {
        // Disconnected; encode unreachable part as a sentinel so signatures
        // of disconnected complexes never collide with connected ones.
        tri_encoding.push(u32::MAX);
    }

    let mut sig = tri_encoding;
    // On-curve flags in label order.
    for w in &order {
        sig.push(u32::from(cx.is_on_curve(*w)));
    }
    // Curve successor pairs, sorted.
    let mut succ: Vec<[u32; 2]> = order
        .iter()
        .filter_map(|w| cx.curve_successor(*w).map(|n| [label[w], label[&n]]))
        .collect();
    succ.sort();
    for [a, b] in succ {
        sig.extend([a, b]);
    }
    // Relative off-curve rank order as a label sequence.
    for w in cx.off_curve_order() {
        sig.push(label[w]);
    }
    sig
}
