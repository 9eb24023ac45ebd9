//! Empirical certification of triangulation independence.
//!
//! A fuzz run walks a flag-like complex through a seeded pseudo-random
//! sequence of applicable moves and recomputes the normalized invariant at
//! checkpoints. For a system passing its checks the value is exactly
//! constant; any mismatch is reported with the move trace that produced
//! it, so a failure is replayable from the seed alone.

use std::collections::BTreeMap;

use crate::complex::CurveSurfaceComplex;
use crate::frobenius_data::SystemData;
use crate::moves::{self, Lcg64, MoveAction, MoveKind, WalkConfig};
use crate::scalar::Scalar;
use crate::statesum::{self, EvalConfig, EvalError, InvariantValue, Method};

#[derive(Clone, Debug)]
pub struct FuzzConfig {
    pub seed: u64,
    pub steps: u32,
    /// Recompute the invariant every this many steps (and at the end).
    pub checkpoint_every: u32,
    /// Growth moves are excluded once the edge count exceeds this;
    /// `None` picks the walk default (starting edges + 24).
    pub max_edges: Option<usize>,
    pub eval: EvalConfig,
}

impl Default for FuzzConfig {
    fn default() -> Self {
        FuzzConfig {
            seed: 1,
            steps: 200,
            checkpoint_every: 25,
            max_edges: None,
            eval: EvalConfig::default(),
        }
    }
}

/// A checkpoint value and whether it matched the initial one.
#[derive(Clone, Debug)]
pub struct Checkpoint {
    pub step: u32,
    pub normalized: Scalar,
    pub matches: bool,
}

/// First mismatch, with the full move trace up to it.
#[derive(Clone, Debug)]
pub struct FuzzMismatch {
    pub step: u32,
    pub expected: Scalar,
    pub actual: Scalar,
    pub trace: Vec<MoveAction>,
}

#[derive(Clone, Debug)]
pub struct FuzzReport {
    pub seed: u64,
    pub steps_requested: u32,
    pub steps_run: u32,
    pub initial: InvariantValue,
    pub checkpoints: Vec<Checkpoint>,
    pub histogram: BTreeMap<MoveKind, u32>,
    pub mismatch: Option<FuzzMismatch>,
}

impl FuzzReport {
    pub fn passed(&self) -> bool {
        self.mismatch.is_none()
    }
}

/// Walks `steps` moves from `cx`, recomputing the normalized invariant at
/// every checkpoint and comparing it exactly with the starting value.
/// Stops at the first mismatch. The walk draws from the same generator as
/// [`moves::random_walk`], so a reported seed reproduces the trace.
pub fn run_fuzz(
    system: &SystemData,
    cx: &CurveSurfaceComplex,
    config: &FuzzConfig,
) -> Result<FuzzReport, EvalError> {
    let initial = statesum::normalized_invariant(system, cx, Method::Auto, &config.eval)?;
    run_fuzz_against(system, cx, config, initial)
}

/// As [`run_fuzz`], but trusts the caller's initial value and skips the
/// system validity gate. This is the entry point for the convention
/// falsification harness, which deliberately evaluates with a wrong
/// argument order that no valid system could satisfy.
pub fn run_fuzz_against(
    system: &SystemData,
    cx: &CurveSurfaceComplex,
    config: &FuzzConfig,
    initial: InvariantValue,
) -> Result<FuzzReport, EvalError> {
    let walk = WalkConfig {
        max_edges: config.max_edges.unwrap_or_else(|| WalkConfig::for_complex(cx).max_edges),
    };
    let mut rng = Lcg64::new(config.seed);
    let mut current = cx.clone();
    let mut trace: Vec<MoveAction> = Vec::new();
    let mut histogram = BTreeMap::new();
    let mut checkpoints = Vec::new();
    let mut mismatch = None;
    let mut steps_run = 0;

    let checkpoint_due = |step: u32| {
        config.checkpoint_every > 0 && step % config.checkpoint_every == 0
    };

    for step in 1..=config.steps {
        let allow_growth = current.n_edges() <= walk.max_edges;
        let mut menu = moves::enumerate_moves(&current, allow_growth);
        if menu.is_empty() {
            menu = moves::enumerate_moves(&current, true);
        }
        let action = menu[rng.below(menu.len())];
        let (next, record) =
            moves::apply_move(&current, action).expect("enumerated moves are applicable");
        debug_assert!(next.is_flaglike());
        *histogram.entry(record.kind).or_insert(0) += 1;
        trace.push(action);
        current = next;
        steps_run = step;

        if checkpoint_due(step) || step == config.steps {
            let value =
                statesum::raw_invariant(system, &current, Method::Auto, &config.eval)?;
            let matches = value.normalized == initial.normalized;
            checkpoints.push(Checkpoint {
                step,
                normalized: value.normalized.clone(),
                matches,
            });
            if !matches {
                mismatch = Some(FuzzMismatch {
                    step,
                    expected: initial.normalized.clone(),
                    actual: value.normalized,
                    trace: trace.clone(),
                });
                break;
            }
        }
    }

    Ok(FuzzReport {
        seed: config.seed,
        steps_requested: config.steps,
        steps_run,
        initial,
        checkpoints,
        histogram,
        mismatch,
    })
}
