//! The 35 scalar invariance equations, as data.
//!
//! Each equation is a pair of sums of products of coefficient-tensor
//! entries. Sides are written as factor lists over named indices; an index
//! is either *free* (the equation is asserted for every value) or *bound*
//! on one side (summed over its basis). Ids 2–17 come from the 2-2 flips
//! and are plain equalities. Ids 18–35 come from the 1-3 subdivisions:
//! the subdivided side (rhs) equals ρ times the plain coefficient (lhs).
//! Id 36 comes from the 2-4 curve-edge split and carries λ instead.
//!
//! Argument placement follows the storage conventions of the six tensors
//! (see the module docs): for an unbarred symbol x_{ij}^k the entry is
//! `x[i][j][k]`, for a barred symbol x̄_i^{jk} it is `x[i][j][k]` as well —
//! subscript first, then superscripts left to right.

use super::{BasisKind, CheckId, CheckResult, CoeffTag, SystemData, Witness};
use crate::scalar::Scalar;

#[derive(Clone, Copy, Debug)]
pub(crate) struct Fac {
    pub tag: CoeffTag,
    pub args: [&'static str; 3],
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum Norm {
    One,
    Rho,
    Lambda,
}

pub(crate) struct EqSpec {
    pub id: u8,
    pub free: &'static [(&'static str, BasisKind)],
    pub lhs_bound: &'static [(&'static str, BasisKind)],
    pub rhs_bound: &'static [(&'static str, BasisKind)],
    pub lhs: &'static [Fac],
    pub rhs: &'static [Fac],
    pub norm: Norm,
}

const fn f(tag: CoeffTag, a: &'static str, b: &'static str, c: &'static str) -> Fac {
    Fac { tag, args: [a, b, c] }
}

use BasisKind::{A, B, C};
use CoeffTag::{Act, Coact, Comult, DefAct, DefCoact, Mult};

const QRST_A: &[(&str, BasisKind)] = &[("q", A), ("r", A), ("s", A), ("t", A)];
const QRST_B: &[(&str, BasisKind)] = &[("q", B), ("r", B), ("s", A), ("t", A)];
const QRST_C: &[(&str, BasisKind)] = &[("q", B), ("r", C), ("s", B), ("t", A)];
const RST_A: &[(&str, BasisKind)] = &[("r", A), ("s", A), ("t", A)];
const RST_B: &[(&str, BasisKind)] = &[("r", B), ("s", A), ("t", B)];
const RST_C: &[(&str, BasisKind)] = &[("r", C), ("s", B), ("t", B)];
const QRST_2B: &[(&str, BasisKind)] = &[("q", B), ("r", B), ("s", B), ("t", B)];

const U_A: &[(&str, BasisKind)] = &[("u", A)];
const V_A: &[(&str, BasisKind)] = &[("v", A)];
const U_B: &[(&str, BasisKind)] = &[("u", B)];
const V_B: &[(&str, BasisKind)] = &[("v", B)];
const NONE: &[(&str, BasisKind)] = &[];
const STR_AAA: &[(&str, BasisKind)] = &[("sg", A), ("ta", A), ("rh", A)];
const STR_BAA: &[(&str, BasisKind)] = &[("sg", B), ("ta", A), ("rh", A)];
const STR_BBA: &[(&str, BasisKind)] = &[("sg", B), ("ta", B), ("rh", A)];
const F_C: &[(&str, BasisKind)] = &[("fc", C)];
const GHJK: &[(&str, BasisKind)] = &[("g", B), ("h", C), ("j", B), ("k", C)];

pub(crate) static EQUATIONS: [EqSpec; 35] = [
    // 2-2 flips on a quadrilateral away from the curve: associativity,
    // coassociativity, the two Frobenius relations and their flipped mates.
    EqSpec { id: 2, free: QRST_A, lhs_bound: U_A, rhs_bound: V_A, norm: Norm::One,
        lhs: &[f(Mult, "q", "u", "r"), f(Mult, "t", "s", "u")],
        rhs: &[f(Mult, "v", "s", "r"), f(Mult, "q", "t", "v")] },
    EqSpec { id: 3, free: QRST_A, lhs_bound: U_A, rhs_bound: V_A, norm: Norm::One,
        lhs: &[f(Comult, "q", "r", "u"), f(Comult, "u", "s", "t")],
        rhs: &[f(Comult, "v", "r", "s"), f(Comult, "q", "v", "t")] },
    EqSpec { id: 4, free: QRST_A, lhs_bound: U_A, rhs_bound: V_A, norm: Norm::One,
        lhs: &[f(Mult, "q", "u", "r"), f(Comult, "t", "u", "s")],
        rhs: &[f(Comult, "v", "r", "s"), f(Mult, "q", "t", "v")] },
    EqSpec { id: 5, free: QRST_A, lhs_bound: U_A, rhs_bound: V_A, norm: Norm::One,
        lhs: &[f(Comult, "q", "r", "u"), f(Mult, "u", "t", "s")],
        rhs: &[f(Comult, "v", "r", "s"), f(Mult, "q", "t", "v")] },
    EqSpec { id: 6, free: QRST_A, lhs_bound: U_A, rhs_bound: V_A, norm: Norm::One,
        lhs: &[f(Comult, "q", "r", "u"), f(Mult, "s", "u", "t")],
        rhs: &[f(Mult, "v", "s", "r"), f(Comult, "q", "v", "t")] },
    EqSpec { id: 7, free: QRST_A, lhs_bound: U_A, rhs_bound: V_A, norm: Norm::One,
        lhs: &[f(Mult, "q", "u", "r"), f(Comult, "s", "t", "u")],
        rhs: &[f(Mult, "v", "s", "r"), f(Comult, "q", "v", "t")] },
    // 2-2 flips on a quadrilateral with one corner on the curve: the module
    // and comodule axioms for B and their mixed Frobenius mates.
    EqSpec { id: 8, free: QRST_B, lhs_bound: U_A, rhs_bound: V_B, norm: Norm::One,
        lhs: &[f(Act, "q", "u", "r"), f(Mult, "t", "s", "u")],
        rhs: &[f(Act, "v", "s", "r"), f(Act, "q", "t", "v")] },
    EqSpec { id: 9, free: QRST_B, lhs_bound: U_A, rhs_bound: V_B, norm: Norm::One,
        lhs: &[f(Coact, "q", "r", "u"), f(Comult, "u", "s", "t")],
        rhs: &[f(Coact, "v", "r", "s"), f(Coact, "q", "v", "t")] },
    EqSpec { id: 10, free: QRST_B, lhs_bound: U_A, rhs_bound: V_B, norm: Norm::One,
        lhs: &[f(Act, "q", "u", "r"), f(Comult, "t", "u", "s")],
        rhs: &[f(Coact, "v", "r", "s"), f(Act, "q", "t", "v")] },
    EqSpec { id: 11, free: QRST_B, lhs_bound: U_A, rhs_bound: V_B, norm: Norm::One,
        lhs: &[f(Coact, "q", "r", "u"), f(Mult, "u", "t", "s")],
        rhs: &[f(Coact, "v", "r", "s"), f(Act, "q", "t", "v")] },
    EqSpec { id: 12, free: QRST_B, lhs_bound: U_A, rhs_bound: V_B, norm: Norm::One,
        lhs: &[f(Coact, "q", "r", "u"), f(Mult, "s", "u", "t")],
        rhs: &[f(Act, "v", "s", "r"), f(Coact, "q", "v", "t")] },
    EqSpec { id: 13, free: QRST_B, lhs_bound: U_A, rhs_bound: V_B, norm: Norm::One,
        lhs: &[f(Act, "q", "u", "r"), f(Comult, "s", "t", "u")],
        rhs: &[f(Act, "v", "s", "r"), f(Coact, "q", "v", "t")] },
    // 2-2 flips on a quadrilateral with a curve edge: commutation of the
    // C-"action"/"coaction" with the A-action/coaction.
    EqSpec { id: 14, free: QRST_C, lhs_bound: U_B, rhs_bound: V_B, norm: Norm::One,
        lhs: &[f(DefAct, "r", "q", "u"), f(Act, "u", "t", "s")],
        rhs: &[f(DefAct, "r", "v", "s"), f(Act, "q", "t", "v")] },
    EqSpec { id: 15, free: QRST_C, lhs_bound: U_B, rhs_bound: V_B, norm: Norm::One,
        lhs: &[f(DefCoact, "q", "r", "u"), f(Coact, "u", "s", "t")],
        rhs: &[f(DefCoact, "v", "r", "s"), f(Coact, "q", "v", "t")] },
    EqSpec { id: 16, free: QRST_C, lhs_bound: V_B, rhs_bound: U_B, norm: Norm::One,
        lhs: &[f(DefCoact, "q", "r", "v"), f(Act, "v", "t", "s")],
        rhs: &[f(DefCoact, "u", "r", "s"), f(Act, "q", "t", "u")] },
    EqSpec { id: 17, free: QRST_C, lhs_bound: U_B, rhs_bound: V_B, norm: Norm::One,
        lhs: &[f(DefAct, "r", "q", "u"), f(Coact, "u", "s", "t")],
        rhs: &[f(DefAct, "r", "v", "s"), f(Coact, "q", "v", "t")] },
    // 1-3 subdivision of a triangle away from the curve. The subdivided
    // side sums to ρ times the plain coefficient; one equation per class of
    // the outer triangle and rank placement of the new interior vertex.
    EqSpec { id: 18, free: RST_A, lhs_bound: NONE, rhs_bound: STR_AAA, norm: Norm::Rho,
        lhs: &[f(Mult, "t", "s", "r")],
        rhs: &[f(Comult, "sg", "r", "ta"), f(Mult, "s", "ta", "rh"), f(Mult, "t", "rh", "sg")] },
    EqSpec { id: 19, free: RST_A, lhs_bound: NONE, rhs_bound: STR_AAA, norm: Norm::Rho,
        lhs: &[f(Mult, "t", "s", "r")],
        rhs: &[f(Mult, "sg", "ta", "r"), f(Mult, "rh", "s", "ta"), f(Comult, "t", "sg", "rh")] },
    EqSpec { id: 20, free: RST_A, lhs_bound: NONE, rhs_bound: STR_AAA, norm: Norm::Rho,
        lhs: &[f(Mult, "t", "s", "r")],
        rhs: &[f(Mult, "t", "rh", "sg"), f(Comult, "s", "rh", "ta"), f(Mult, "sg", "ta", "r")] },
    EqSpec { id: 21, free: RST_A, lhs_bound: NONE, rhs_bound: STR_AAA, norm: Norm::Rho,
        lhs: &[f(Mult, "t", "s", "r")],
        rhs: &[f(Mult, "sg", "t", "rh"), f(Mult, "rh", "s", "ta"), f(Comult, "ta", "sg", "r")] },
    EqSpec { id: 22, free: RST_A, lhs_bound: NONE, rhs_bound: STR_AAA, norm: Norm::Rho,
        lhs: &[f(Comult, "t", "r", "s")],
        rhs: &[f(Comult, "sg", "r", "ta"), f(Comult, "ta", "s", "rh"), f(Mult, "t", "rh", "sg")] },
    EqSpec { id: 23, free: RST_A, lhs_bound: NONE, rhs_bound: STR_AAA, norm: Norm::Rho,
        lhs: &[f(Comult, "t", "r", "s")],
        rhs: &[f(Comult, "ta", "sg", "r"), f(Comult, "rh", "ta", "s"), f(Mult, "sg", "t", "rh")] },
    EqSpec { id: 24, free: RST_A, lhs_bound: NONE, rhs_bound: STR_AAA, norm: Norm::Rho,
        lhs: &[f(Comult, "t", "r", "s")],
        rhs: &[f(Mult, "sg", "ta", "r"), f(Comult, "rh", "ta", "s"), f(Comult, "t", "sg", "rh")] },
    EqSpec { id: 25, free: RST_A, lhs_bound: NONE, rhs_bound: STR_AAA, norm: Norm::Rho,
        lhs: &[f(Comult, "t", "r", "s")],
        rhs: &[f(Comult, "sg", "r", "ta"), f(Mult, "ta", "rh", "s"), f(Comult, "t", "sg", "rh")] },
    // 1-3 subdivision of a triangle with one corner on the curve.
    EqSpec { id: 26, free: RST_B, lhs_bound: NONE, rhs_bound: STR_BAA, norm: Norm::Rho,
        lhs: &[f(Coact, "t", "r", "s")],
        rhs: &[f(Coact, "sg", "r", "ta"), f(Comult, "ta", "s", "rh"), f(Act, "t", "rh", "sg")] },
    EqSpec { id: 27, free: RST_B, lhs_bound: NONE, rhs_bound: STR_BAA, norm: Norm::Rho,
        lhs: &[f(Coact, "t", "r", "s")],
        rhs: &[f(Act, "sg", "ta", "r"), f(Comult, "rh", "ta", "s"), f(Coact, "t", "sg", "rh")] },
    EqSpec { id: 28, free: RST_B, lhs_bound: NONE, rhs_bound: STR_BAA, norm: Norm::Rho,
        lhs: &[f(Coact, "t", "r", "s")],
        rhs: &[f(Coact, "sg", "r", "ta"), f(Mult, "ta", "rh", "s"), f(Coact, "t", "sg", "rh")] },
    EqSpec { id: 29, free: RST_B, lhs_bound: NONE, rhs_bound: STR_BAA, norm: Norm::Rho,
        lhs: &[f(Act, "t", "s", "r")],
        rhs: &[f(Coact, "sg", "r", "ta"), f(Mult, "s", "ta", "rh"), f(Act, "t", "rh", "sg")] },
    EqSpec { id: 30, free: RST_B, lhs_bound: NONE, rhs_bound: STR_BAA, norm: Norm::Rho,
        lhs: &[f(Act, "t", "s", "r")],
        rhs: &[f(Act, "sg", "ta", "r"), f(Mult, "rh", "s", "ta"), f(Coact, "t", "sg", "rh")] },
    EqSpec { id: 31, free: RST_B, lhs_bound: NONE, rhs_bound: STR_BAA, norm: Norm::Rho,
        lhs: &[f(Act, "t", "s", "r")],
        rhs: &[f(Act, "t", "rh", "sg"), f(Comult, "s", "rh", "ta"), f(Act, "sg", "ta", "r")] },
    // 1-3 subdivision of a triangle with a curve edge.
    EqSpec { id: 32, free: RST_C, lhs_bound: NONE, rhs_bound: STR_BBA, norm: Norm::Rho,
        lhs: &[f(DefCoact, "t", "r", "s")],
        rhs: &[f(DefCoact, "sg", "r", "ta"), f(Coact, "ta", "s", "rh"), f(Act, "t", "rh", "sg")] },
    EqSpec { id: 33, free: RST_C, lhs_bound: NONE, rhs_bound: STR_BBA, norm: Norm::Rho,
        lhs: &[f(DefAct, "r", "t", "s")],
        rhs: &[f(DefAct, "r", "sg", "ta"), f(Coact, "ta", "s", "rh"), f(Act, "t", "rh", "sg")] },
    EqSpec { id: 34, free: RST_C, lhs_bound: NONE, rhs_bound: STR_BBA, norm: Norm::Rho,
        lhs: &[f(DefCoact, "t", "r", "s")],
        rhs: &[f(DefCoact, "sg", "r", "ta"), f(Act, "ta", "rh", "s"), f(Coact, "t", "sg", "rh")] },
    EqSpec { id: 35, free: RST_C, lhs_bound: NONE, rhs_bound: STR_BBA, norm: Norm::Rho,
        lhs: &[f(DefAct, "r", "t", "s")],
        rhs: &[f(DefAct, "r", "sg", "ta"), f(Act, "ta", "rh", "s"), f(Coact, "t", "sg", "rh")] },
    // The 2-4 split of a curve edge; the split side carries λ.
    EqSpec { id: 36, free: QRST_2B, lhs_bound: F_C, rhs_bound: GHJK, norm: Norm::Lambda,
        lhs: &[f(DefAct, "fc", "r", "q"), f(DefCoact, "t", "fc", "s")],
        rhs: &[
            f(DefAct, "k", "r", "g"),
            f(DefCoact, "j", "k", "s"),
            f(DefCoact, "t", "h", "j"),
            f(DefAct, "h", "g", "q"),
        ] },
];

pub(crate) fn spec_for(id: u8) -> Option<&'static EqSpec> {
    if !(2..=36).contains(&id) {
        return None;
    }
    let spec = &EQUATIONS[(id - 2) as usize];
    debug_assert_eq!(spec.id, id);
    Some(spec)
}

/// Looks a variable up in the two active assignment slices.
fn resolve(name: &str, free: &[(&'static str, usize)], bound: &[(&'static str, usize)]) -> usize {
    for (n, v) in bound.iter().chain(free.iter()) {
        if *n == name {
            return *v;
        }
    }
    unreachable!("unbound variable {name} in equation table");
}

/// Sums a factor list over all assignments of the bound variables.
fn eval_side(
    system: &SystemData,
    factors: &[Fac],
    free: &[(&'static str, usize)],
    bound_vars: &[(&'static str, BasisKind)],
) -> Scalar {
    let dims: Vec<usize> = bound_vars.iter().map(|(_, k)| system.dim(*k)).collect();
    let mut bound: Vec<(&'static str, usize)> =
        bound_vars.iter().map(|(n, _)| (*n, 0usize)).collect();
    let mut sum = Scalar::zero();
    'outer: loop {
        let mut term = Scalar::one();
        let mut zero = false;
        for fac in factors {
            let t = system.tensor(fac.tag);
            let i = resolve(fac.args[0], free, &bound);
            let j = resolve(fac.args[1], free, &bound);
            let k = resolve(fac.args[2], free, &bound);
            let v = t.get(i, j, k);
            if v.is_zero() {
                zero = true;
                break;
            }
            term *= v;
        }
        if !zero {
            sum += term;
        }
        // Odometer over the bound variables, last one fastest.
        let mut pos = bound.len();
        loop {
            if pos == 0 {
                break 'outer;
            }
            pos -= 1;
            bound[pos].1 += 1;
            if bound[pos].1 < dims[pos] {
                break;
            }
            bound[pos].1 = 0;
        }
    }
    sum
}

pub(crate) fn eval_spec(system: &SystemData, spec: &EqSpec) -> CheckResult {
    let id = CheckId::Equation(spec.id);
    let norm = match spec.norm {
        Norm::One => Some(Scalar::one()),
        Norm::Rho => system.rho().cloned(),
        Norm::Lambda => system.lambda().cloned(),
    };
    let Some(norm) = norm else {
        let which = if spec.norm == Norm::Rho { "ρ" } else { "λ" };
        return CheckResult {
            id,
            passed: false,
            witness: None,
            detail: Some(format!("normalization constant {which} unavailable")),
        };
    };
    let dims: Vec<usize> = spec.free.iter().map(|(_, k)| system.dim(*k)).collect();
    let mut free: Vec<(&'static str, usize)> =
        spec.free.iter().map(|(n, _)| (*n, 0usize)).collect();
    'outer: loop {
        let lhs = eval_side(system, spec.lhs, &free, spec.lhs_bound) * norm.clone();
        let rhs = eval_side(system, spec.rhs, &free, spec.rhs_bound);
        if lhs != rhs {
            return CheckResult {
                id,
                passed: false,
                witness: Some(Witness { assignment: free.clone(), lhs, rhs }),
                detail: None,
            };
        }
        let mut pos = free.len();
        loop {
            if pos == 0 {
                break 'outer;
            }
            pos -= 1;
            free[pos].1 += 1;
            if free[pos].1 < dims[pos] {
                break;
            }
            free[pos].1 = 0;
        }
    }
    CheckResult { id, passed: true, witness: None, detail: None }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Every argument slot of every factor must carry an index of the kind
    /// the tensor signature demands at that slot.
    #[test]
    fn equation_table_typechecks() {
        for spec in &EQUATIONS {
            let mut kinds: Vec<(&str, BasisKind)> = spec.free.to_vec();
            kinds.extend_from_slice(spec.lhs_bound);
            kinds.extend_from_slice(spec.rhs_bound);
            let kind_of = |name: &str| -> BasisKind {
                kinds
                    .iter()
                    .find(|(n, _)| *n == name)
                    .unwrap_or_else(|| panic!("eq {}: unbound variable {name}", spec.id))
                    .1
            };
            for (side, bound) in [(spec.lhs, spec.lhs_bound), (spec.rhs, spec.rhs_bound)] {
                for fac in side {
                    let sig = fac.tag.signature();
                    for (slot, arg) in fac.args.iter().enumerate() {
                        assert_eq!(
                            kind_of(arg),
                            sig[slot],
                            "eq {}: tensor {} slot {} got index {} of wrong kind",
                            spec.id,
                            fac.tag,
                            slot,
                            arg
                        );
                    }
                }
                // Bound variables of a side must actually occur on it.
                for (name, _) in bound {
                    assert!(
                        side.iter().any(|fac| fac.args.contains(name)),
                        "eq {}: bound variable {name} unused",
                        spec.id
                    );
                }
            }
        }
    }

    #[test]
    fn ids_are_2_to_36() {
        for (i, spec) in EQUATIONS.iter().enumerate() {
            assert_eq!(spec.id as usize, i + 2);
        }
        assert!(spec_for(1).is_none());
        assert!(spec_for(37).is_none());
        assert_eq!(spec_for(36).unwrap().id, 36);
    }
}
