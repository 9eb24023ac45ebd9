//! The state-sum and its normalization.
//!
//! A coloring assigns a basis index to every edge, respecting edge kinds
//! (A-edges take A-basis indices and so on). Each triangle contributes the
//! entry of its class's coefficient tensor at its argument-ordered edge
//! labels, and the unnormalized state-sum is the sum over all colorings of
//! the product of these local weights.
//!
//! Two evaluation routes compute it exactly:
//!
//! * [`evaluate_bruteforce`] enumerates colorings edge by edge, pruning a
//!   branch as soon as some fully-colored triangle has weight zero. It is
//!   the reference oracle, guarded by a cap on the total coloring count.
//! * [`evaluate_contraction`] builds one rank-3 tensor per triangle and
//!   contracts pairs greedily, always picking the pair whose result has the
//!   fewest entries (ties broken by lowest triangle index). Intermediate
//!   sizes are guarded by an entry budget. Exact arithmetic makes the
//!   result independent of the order, so the two routes agree exactly.
//!
//! Multiplying by ρ^(−#off-curve vertices)·λ^(−#on-curve vertices) yields
//! the normalized invariant, which is independent of the triangulation and
//! of the off-curve vertex ordering whenever the system passes its checks.

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

use crate::complex::{BarredOrder, ClassifyError, CurveSurfaceComplex, Triangle, UEdge};
use crate::frobenius_data::{check_system, CheckId, CoeffTag, SystemData};
use crate::scalar::Scalar;

/// A kind-respecting assignment of basis indices to edges.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Coloring(pub BTreeMap<UEdge, usize>);

/// Resource limits and the argument-order convention for evaluation.
#[derive(Clone, Debug)]
pub struct EvalConfig {
    /// Brute force refuses when the total coloring count exceeds this.
    pub max_colorings: u128,
    /// Contraction refuses to allocate an intermediate with more entries.
    pub max_tensor_entries: usize,
    /// Argument-order convention (the non-default value exists only to let
    /// the tests demonstrate that fuzzing detects the wrong convention).
    pub barred_order: BarredOrder,
}

impl Default for EvalConfig {
    fn default() -> Self {
        EvalConfig {
            max_colorings: 100_000_000,
            max_tensor_entries: 1 << 26,
            barred_order: BarredOrder::Paper,
        }
    }
}

/// Which evaluation route to take.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Default)]
pub enum Method {
    /// Contraction, falling back to brute force on memory-budget refusal.
    #[default]
    Auto,
    Brute,
    Contract,
}

impl std::str::FromStr for Method {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "auto" => Ok(Method::Auto),
            "brute" => Ok(Method::Brute),
            "contract" => Ok(Method::Contract),
            other => Err(format!("unknown method {other:?} (auto|brute|contract)")),
        }
    }
}

#[derive(Debug, Error)]
pub enum EvalError {
    #[error("complex is invalid: {0}")]
    InvalidComplex(String),
    #[error("system fails validation; first failed check: {0}")]
    InvalidSystem(CheckId),
    #[error("{0}")]
    Classify(#[from] ClassifyError),
    #[error("coloring space too large for brute force: {colorings} > cap {cap}")]
    TooLarge { colorings: u128, cap: u128 },
    #[error("contraction intermediate would hold {entries} entries, over the budget {cap}")]
    OutOfMemoryBudget { entries: u128, cap: usize },
    #[error("normalization constant {0} unavailable")]
    MissingNormalization(&'static str),
}

/// The computed invariant: the raw sum, the two vertex counts entering the
/// normalization, and the normalized value
/// ρ^(−n_off_vertices)·λ^(−n_on_vertices)·unnormalized.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InvariantValue {
    pub unnormalized: Scalar,
    pub n_off_vertices: usize,
    pub n_on_vertices: usize,
    pub normalized: Scalar,
}

impl fmt::Display for InvariantValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "unnormalized {} over {} off-curve and {} on-curve vertices, normalized {}",
            self.unnormalized, self.n_off_vertices, self.n_on_vertices, self.normalized
        )
    }
}

/// One triangle's tensor assignment: its class tag and the edges in
/// coefficient-argument order.
#[derive(Clone, Debug)]
struct TrianglePlan {
    tag: CoeffTag,
    arg_edges: [UEdge; 3],
}

fn plan_triangles(
    system: &SystemData,
    cx: &CurveSurfaceComplex,
    order: BarredOrder,
) -> Result<Vec<TrianglePlan>, EvalError> {
    let mut plans = Vec::with_capacity(cx.n_triangles());
    for tri in cx.triangles() {
        let (class, arg_edges) = cx.classify_triangle_with(tri, order)?;
        let sig = class.tag.signature();
        for (slot, e) in arg_edges.iter().enumerate() {
            let kind = cx.edges()[e].kind;
            // Holds on every flag-like complex; a mismatch means the
            // complex was not validated.
            assert_eq!(
                kind, sig[slot],
                "edge {e} of kind {kind:?} in slot {slot} of {tag}",
                tag = class.tag
            );
            let _ = system;
        }
        plans.push(TrianglePlan { tag: class.tag, arg_edges });
    }
    Ok(plans)
}

fn edge_dims(system: &SystemData, cx: &CurveSurfaceComplex) -> Vec<(UEdge, usize)> {
    cx.edges()
        .iter()
        .map(|(e, d)| (*e, system.dim(d.kind)))
        .collect()
}

/// The weight a single triangle contributes under a coloring: the entry of
/// its coefficient tensor at its argument-ordered edge labels.
pub fn local_weight(
    system: &SystemData,
    cx: &CurveSurfaceComplex,
    triangle: &Triangle,
    coloring: &Coloring,
) -> Result<Scalar, EvalError> {
    let (class, args) = cx.classify_triangle(triangle)?;
    let idx = args.map(|e| coloring.0[&e]);
    Ok(system.tensor(class.tag).get(idx[0], idx[1], idx[2]).clone())
}

/// Sums the local-weight product over every kind-respecting coloring.
/// Exact; refuses (with [`EvalError::TooLarge`]) when the coloring count
/// exceeds the configured cap.
pub fn evaluate_bruteforce(
    system: &SystemData,
    cx: &CurveSurfaceComplex,
    config: &EvalConfig,
) -> Result<Scalar, EvalError> {
    let plans = plan_triangles(system, cx, config.barred_order)?;
    let edges = edge_dims(system, cx);
    let mut total: u128 = 1;
    for (_, d) in &edges {
        total = total.saturating_mul(*d as u128);
        if total > config.max_colorings {
            return Err(EvalError::TooLarge { colorings: total, cap: config.max_colorings });
        }
    }

    let pos_of: BTreeMap<UEdge, usize> =
        edges.iter().enumerate().map(|(i, (e, _))| (*e, i)).collect();
    // A triangle's weight is decided once its last edge (in enumeration
    // order) is colored; group triangles by that depth so branches die as
    // early as possible.
    let mut ready_at: Vec<Vec<(usize, [usize; 3])>> = vec![Vec::new(); edges.len() + 1];
    for (t, plan) in plans.iter().enumerate() {
        let positions = plan.arg_edges.map(|e| pos_of[&e]);
        let depth = *positions.iter().max().unwrap() + 1;
        ready_at[depth].push((t, positions));
    }

    struct Enumerator<'a> {
        dims: Vec<usize>,
        colors: Vec<usize>,
        ready_at: &'a [Vec<(usize, [usize; 3])>],
        plans: &'a [TrianglePlan],
        system: &'a SystemData,
        total: Scalar,
    }

    impl Enumerator<'_> {
        fn go(&mut self, depth: usize, partial: Scalar) {
            if depth == self.dims.len() {
                self.total += partial;
                return;
            }
            for v in 0..self.dims[depth] {
                self.colors[depth] = v;
                let mut w = partial.clone();
                let mut dead = false;
                for (t, positions) in &self.ready_at[depth + 1] {
                    let idx = positions.map(|p| self.colors[p]);
                    let val = self.system.tensor(self.plans[*t].tag).get(idx[0], idx[1], idx[2]);
                    if val.is_zero() {
                        dead = true;
                        break;
                    }
                    w *= val;
                }
                if !dead {
                    self.go(depth + 1, w);
                }
            }
        }
    }

    let dims: Vec<usize> = edges.iter().map(|(_, d)| *d).collect();
    let mut en = Enumerator {
        colors: vec![0; dims.len()],
        dims,
        ready_at: &ready_at,
        plans: &plans,
        system,
        total: Scalar::zero(),
    };
    en.go(0, Scalar::one());
    Ok(en.total)
}

/// A dense tensor over a list of edge indices, used while contracting.
#[derive(Clone, Debug)]
struct NetTensor {
    indices: Vec<UEdge>,
    dims: Vec<usize>,
    data: Vec<Scalar>,
    /// Lowest triangle index merged into this tensor; greedy tie-breaker.
    min_tri: usize,
}

impl NetTensor {
    fn from_plan(system: &SystemData, plan: &TrianglePlan, min_tri: usize) -> NetTensor {
        let t = system.tensor(plan.tag);
        let [d0, d1, d2] = t.dims();
        let mut data = Vec::with_capacity(d0 * d1 * d2);
        for i in 0..d0 {
            for j in 0..d1 {
                for k in 0..d2 {
                    data.push(t.get(i, j, k).clone());
                }
            }
        }
        NetTensor {
            indices: plan.arg_edges.to_vec(),
            dims: vec![d0, d1, d2],
            data,
            min_tri,
        }
    }
}

fn contracted_entry_count(a: &NetTensor, b: &NetTensor) -> u128 {
    let mut n: u128 = 1;
    for (e, d) in a.indices.iter().zip(&a.dims) {
        if !b.indices.contains(e) {
            n = n.saturating_mul(*d as u128);
        }
    }
    for (e, d) in b.indices.iter().zip(&b.dims) {
        if !a.indices.contains(e) {
            n = n.saturating_mul(*d as u128);
        }
    }
    n
}

/// Contracts two tensors over all indices they share (an outer product if
/// they share none).
fn contract_pair(a: &NetTensor, b: &NetTensor, cap: usize) -> Result<NetTensor, EvalError> {
    let entries = contracted_entry_count(a, b);
    if entries > cap as u128 {
        return Err(EvalError::OutOfMemoryBudget { entries, cap });
    }

    let shared: Vec<UEdge> =
        a.indices.iter().copied().filter(|e| b.indices.contains(e)).collect();
    let mut free: Vec<(UEdge, usize)> = Vec::new();
    for (e, d) in a.indices.iter().zip(&a.dims) {
        if !shared.contains(e) {
            free.push((*e, *d));
        }
    }
    for (e, d) in b.indices.iter().zip(&b.dims) {
        if !shared.contains(e) {
            free.push((*e, *d));
        }
    }
    let shared_dims: Vec<usize> = shared
        .iter()
        .map(|e| a.dims[a.indices.iter().position(|x| x == e).unwrap()])
        .collect();

    // For each operand: where each of its indices lives (free slot or
    // shared slot), turned into strides over the two odometers.
    let locate = |t: &NetTensor| -> (Vec<usize>, Vec<usize>) {
        let mut free_stride = vec![0usize; free.len()];
        let mut shared_stride = vec![0usize; shared.len()];
        let mut stride = 1usize;
        for (i, e) in t.indices.iter().enumerate().rev() {
            if let Some(s) = shared.iter().position(|x| x == e) {
                shared_stride[s] += stride;
            } else {
                let f = free.iter().position(|(x, _)| x == e).unwrap();
                free_stride[f] += stride;
            }
            stride *= t.dims[i];
        }
        (free_stride, shared_stride)
    };
    let (a_free, a_shared) = locate(a);
    let (b_free, b_shared) = locate(b);

    let n_out = free.iter().map(|(_, d)| *d).product::<usize>().max(1);
    let mut data = vec![Scalar::zero(); n_out];
    let mut free_idx = vec![0usize; free.len()];
    for slot in data.iter_mut() {
        let a_base: usize = free_idx.iter().zip(&a_free).map(|(i, s)| i * s).sum();
        let b_base: usize = free_idx.iter().zip(&b_free).map(|(i, s)| i * s).sum();
        let mut shared_idx = vec![0usize; shared.len()];
        let mut acc = Scalar::zero();
        loop {
            let a_off: usize = shared_idx.iter().zip(&a_shared).map(|(i, s)| i * s).sum();
            let b_off: usize = shared_idx.iter().zip(&b_shared).map(|(i, s)| i * s).sum();
            let av = &a.data[a_base + a_off];
            if !av.is_zero() {
                let bv = &b.data[b_base + b_off];
                if !bv.is_zero() {
                    acc += av * bv;
                }
            }
            // Odometer over shared indices.
            let mut pos = shared_idx.len();
            loop {
                if pos == 0 {
                    break;
                }
                pos -= 1;
                shared_idx[pos] += 1;
                if shared_idx[pos] < shared_dims[pos] {
                    break;
                }
                shared_idx[pos] = 0;
            }
            if shared_idx.iter().all(|i| *i == 0) {
                break;
            }
        }
        *slot = acc;
        // Odometer over free indices.
        let mut pos = free_idx.len();
        loop {
            if pos == 0 {
                break;
            }
            pos -= 1;
            free_idx[pos] += 1;
            if free_idx[pos] < free[pos].1 {
                break;
            }
            free_idx[pos] = 0;
        }
    }

    Ok(NetTensor {
        indices: free.iter().map(|(e, _)| *e).collect(),
        dims: free.iter().map(|(_, d)| *d).collect(),
        data,
        min_tri: a.min_tri.min(b.min_tri),
    })
}

fn finish_contraction(mut tensors: Vec<NetTensor>, cap: usize, greedy: bool) -> Result<Scalar, EvalError> {
    while tensors.len() > 1 {
        let (i, j) = if greedy {
            // Pair minimizing the result entry count; ties to the lowest
            // triangle indices.
            let mut best: Option<(u128, usize, usize, usize, usize)> = None;
            for i in 0..tensors.len() {
                for j in (i + 1)..tensors.len() {
                    let cost = contracted_entry_count(&tensors[i], &tensors[j]);
                    let lo = tensors[i].min_tri.min(tensors[j].min_tri);
                    let hi = tensors[i].min_tri.max(tensors[j].min_tri);
                    let key = (cost, lo, hi, i, j);
                    if best.map_or(true, |b| key < b) {
                        best = Some(key);
                    }
                }
            }
            let (_, _, _, i, j) = best.expect("at least two tensors");
            (i, j)
        } else {
            // Reference order: strictly left to right by triangle index.
            (0, 1)
        };
        let b = tensors.remove(j);
        let a = tensors.remove(i);
        let merged = contract_pair(&a, &b, cap)?;
        if greedy {
            tensors.push(merged);
        } else {
            tensors.insert(0, merged);
        }
    }
    let last = tensors.pop().expect("non-empty network");
    debug_assert!(last.indices.is_empty(), "closed surface contracts to a scalar");
    Ok(last.data.into_iter().next().unwrap())
}

fn network(
    system: &SystemData,
    cx: &CurveSurfaceComplex,
    config: &EvalConfig,
) -> Result<Vec<NetTensor>, EvalError> {
    let plans = plan_triangles(system, cx, config.barred_order)?;
    Ok(plans
        .iter()
        .enumerate()
        .map(|(i, p)| NetTensor::from_plan(system, p, i))
        .collect())
}

/// Evaluates the state-sum by greedy pairwise tensor contraction. Exactly
/// equal to [`evaluate_bruteforce`] wherever both are feasible.
pub fn evaluate_contraction(
    system: &SystemData,
    cx: &CurveSurfaceComplex,
    config: &EvalConfig,
) -> Result<Scalar, EvalError> {
    let tensors = network(system, cx, config)?;
    finish_contraction(tensors, config.max_tensor_entries, true)
}

/// Contraction in plain left-to-right triangle order; a second route used
/// to spot-check that the contraction order cannot affect the value.
pub fn evaluate_contraction_naive(
    system: &SystemData,
    cx: &CurveSurfaceComplex,
    config: &EvalConfig,
) -> Result<Scalar, EvalError> {
    let tensors = network(system, cx, config)?;
    finish_contraction(tensors, config.max_tensor_entries, false)
}

fn unnormalized_by_method(
    system: &SystemData,
    cx: &CurveSurfaceComplex,
    method: Method,
    config: &EvalConfig,
) -> Result<Scalar, EvalError> {
    match method {
        Method::Brute => evaluate_bruteforce(system, cx, config),
        Method::Contract => evaluate_contraction(system, cx, config),
        Method::Auto => match evaluate_contraction(system, cx, config) {
            Ok(v) => Ok(v),
            Err(EvalError::OutOfMemoryBudget { .. }) => evaluate_bruteforce(system, cx, config),
            Err(e) => Err(e),
        },
    }
}

/// Full pipeline: validates the system and the complex, evaluates the
/// unnormalized sum, and applies the normalization
/// ρ^(−|off-curve vertices|)·λ^(−|on-curve vertices|).
pub fn normalized_invariant(
    system: &SystemData,
    cx: &CurveSurfaceComplex,
    method: Method,
    config: &EvalConfig,
) -> Result<InvariantValue, EvalError> {
    let violations = cx.validate();
    if !violations.is_empty() {
        return Err(EvalError::InvalidComplex(violations[0].to_string()));
    }
    if !system.is_valid() {
        let first = check_system(system)
            .into_iter()
            .find(|r| !r.passed)
            .expect("invalid system has a failed check");
        return Err(EvalError::InvalidSystem(first.id));
    }
    raw_invariant(system, cx, method, config)
}

/// As [`normalized_invariant`] but without re-running the system checks —
/// for callers that deliberately evaluate with a nonstandard convention or
/// known-valid system.
pub fn raw_invariant(
    system: &SystemData,
    cx: &CurveSurfaceComplex,
    method: Method,
    config: &EvalConfig,
) -> Result<InvariantValue, EvalError> {
    let unnormalized = unnormalized_by_method(system, cx, method, config)?;
    let n_off = cx.n_off_curve_vertices();
    let n_on = cx.n_on_curve_vertices();
    let mut normalized = unnormalized.clone();
    if n_off > 0 {
        let rho = system.rho().ok_or(EvalError::MissingNormalization("ρ"))?;
        normalized *= rho.pow(-(n_off as i64));
    }
    if n_on > 0 {
        let lambda = system.lambda().ok_or(EvalError::MissingNormalization("λ"))?;
        normalized *= lambda.pow(-(n_on as i64));
    }
    Ok(InvariantValue { unnormalized, n_off_vertices: n_off, n_on_vertices: n_on, normalized })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::{fixtures, seed_complex, SeedName, Triangle};
    use crate::examples::{group_algebra, gset_system, regular_module, trivial_defect_system, GroupTable};
    use crate::moves::{self, MoveAction};

    fn z2_closed() -> SystemData {
        let g = GroupTable::cyclic(2);
        let a = group_algebra(&g);
        let b = regular_module(&a);
        trivial_defect_system(a, b).unwrap()
    }

    fn z2_full() -> SystemData {
        let g = GroupTable::cyclic(2);
        gset_system(&g, &g, &crate::examples::regular_gset(&g, &g, &[0, 1])).unwrap()
    }

    fn dim1_system() -> SystemData {
        let g = GroupTable::cyclic(1);
        let a = group_algebra(&g);
        let b = regular_module(&a);
        trivial_defect_system(a, b).unwrap()
    }

    #[test]
    fn trivial_system_gives_one() {
        let sys = dim1_system();
        let cfg = EvalConfig::default();
        for cx in [seed_complex(SeedName::PlainSphere), seed_complex(SeedName::SphereEquator)] {
            let v = normalized_invariant(&sys, &cx, Method::Auto, &cfg).unwrap();
            assert_eq!(v.unnormalized, Scalar::one());
            assert_eq!(v.normalized, Scalar::one());
        }
    }

    #[test]
    fn local_weights_of_group_algebra() {
        let sys = z2_closed();
        let cx = seed_complex(SeedName::PlainSphere);
        // Triangle (0,1,2) classifies as (0,+) with arguments
        // (0-1, 1-2; 0-2): weight a[x][y][z] = [x·y = z] in K[ℤ/2].
        let tri = Triangle::from_ids([0, 1, 2]);
        let e01 = UEdge::new(crate::complex::VertexId(0), crate::complex::VertexId(1));
        let e12 = UEdge::new(crate::complex::VertexId(1), crate::complex::VertexId(2));
        let e02 = UEdge::new(crate::complex::VertexId(0), crate::complex::VertexId(2));
        let mut coloring = Coloring(BTreeMap::new());
        for e in cx.edges().keys() {
            coloring.0.insert(*e, 0);
        }
        coloring.0.insert(e01, 1);
        coloring.0.insert(e12, 1);
        coloring.0.insert(e02, 0);
        assert_eq!(local_weight(&sys, &cx, &tri, &coloring).unwrap(), Scalar::one());
        coloring.0.insert(e02, 1);
        assert_eq!(local_weight(&sys, &cx, &tri, &coloring).unwrap(), Scalar::zero());
    }

    #[test]
    fn sphere_and_torus_values_for_z2() {
        let sys = z2_closed();
        let cfg = EvalConfig::default();
        let sphere = normalized_invariant(
            &sys,
            &seed_complex(SeedName::PlainSphere),
            Method::Brute,
            &cfg,
        )
        .unwrap();
        assert_eq!(sphere.unnormalized, Scalar::from_int(8));
        assert_eq!(sphere.normalized, Scalar::from_fraction(1, 2));

        let torus = normalized_invariant(
            &sys,
            &seed_complex(SeedName::PlainTorus),
            Method::Brute,
            &cfg,
        )
        .unwrap();
        assert_eq!(torus.normalized, Scalar::from_int(2));
    }

    #[test]
    fn contraction_matches_bruteforce() {
        let cfg = EvalConfig::default();
        for sys in [z2_closed(), z2_full(), dim1_system()] {
            for cx in [
                seed_complex(SeedName::PlainSphere),
                fixtures::octahedron(),
                fixtures::bipyramid_equator(3),
                fixtures::bipyramid_equator(4),
            ] {
                let brute = evaluate_bruteforce(&sys, &cx, &cfg).unwrap();
                let contract = evaluate_contraction(&sys, &cx, &cfg).unwrap();
                let naive = evaluate_contraction_naive(&sys, &cx, &cfg).unwrap();
                assert_eq!(brute, contract);
                assert_eq!(brute, naive);
            }
        }
    }

    #[test]
    fn moves_scale_unnormalized_exactly() {
        let sys = z2_full();
        let cfg = EvalConfig::default();
        let cx = fixtures::bipyramid_equator(3);
        let base = normalized_invariant(&sys, &cx, Method::Auto, &cfg).unwrap();
        let rho = sys.rho().unwrap().clone();
        let lambda = sys.lambda().unwrap().clone();

        let (sub, _) = moves::subdivide13(&cx, cx.triangles()[0]).unwrap();
        let v = normalized_invariant(&sys, &sub, Method::Auto, &cfg).unwrap();
        assert_eq!(v.unnormalized, base.unnormalized.clone() * rho);
        assert_eq!(v.normalized, base.normalized);

        let curve_edge = *sys
            .lambda()
            .map(|_| {
                cx.edges()
                    .iter()
                    .find(|(_, d)| d.kind == crate::frobenius_data::BasisKind::C)
                    .map(|(e, _)| e)
                    .unwrap()
            })
            .unwrap();
        let (split, _) = moves::split24(&cx, curve_edge).unwrap();
        let v = normalized_invariant(&sys, &split, Method::Auto, &cfg).unwrap();
        assert_eq!(v.unnormalized, base.unnormalized.clone() * lambda);
        assert_eq!(v.normalized, base.normalized);

        for action in moves::enumerate_moves(&cx, false) {
            if let MoveAction::Flip22(e) = action {
                let (flipped, _) = moves::flip22(&cx, e).unwrap();
                let v = normalized_invariant(&sys, &flipped, Method::Auto, &cfg).unwrap();
                assert_eq!(v.unnormalized, base.unnormalized);
            }
        }
    }

    #[test]
    fn ordering_of_off_curve_vertices_is_immaterial() {
        let sys = z2_full();
        let cfg = EvalConfig::default();
        let cx = seed_complex(SeedName::SphereEquator);
        let base = normalized_invariant(&sys, &cx, Method::Contract, &cfg).unwrap();
        let mut order: Vec<u32> = cx.off_curve_order().iter().map(|v| v.0).collect();
        order.reverse();
        let permuted = cx.with_off_curve_order(order).unwrap();
        let v = normalized_invariant(&sys, &permuted, Method::Contract, &cfg).unwrap();
        assert_eq!(v.normalized, base.normalized);
    }

    #[test]
    fn brute_force_cap_is_enforced() {
        let sys = z2_closed();
        let cfg = EvalConfig { max_colorings: 8, ..EvalConfig::default() };
        let err = evaluate_bruteforce(&sys, &seed_complex(SeedName::PlainSphere), &cfg)
            .unwrap_err();
        assert!(matches!(err, EvalError::TooLarge { .. }));
    }

    #[test]
    fn memory_budget_is_enforced() {
        let sys = z2_closed();
        let cfg = EvalConfig { max_tensor_entries: 2, ..EvalConfig::default() };
        let err = evaluate_contraction(&sys, &seed_complex(SeedName::PlainSphere), &cfg)
            .unwrap_err();
        assert!(matches!(err, EvalError::OutOfMemoryBudget { .. }));
        // Auto falls back to brute force and still answers.
        let v = unnormalized_by_method(&sys, &seed_complex(SeedName::PlainSphere), Method::Auto, &cfg)
            .unwrap();
        assert_eq!(v, Scalar::from_int(8));
    }

    #[test]
    fn invalid_system_is_rejected() {
        let sys = z2_closed();
        let bad = sys.perturbed(CoeffTag::Mult, (0, 0, 0), Scalar::one());
        let cfg = EvalConfig::default();
        let err = normalized_invariant(&bad, &seed_complex(SeedName::PlainSphere), Method::Auto, &cfg)
            .unwrap_err();
        assert!(matches!(err, EvalError::InvalidSystem(_)));
    }
}
