//! Algebraic initial data and its equational checks.
//!
//! The input of the whole construction is a triple of based vector spaces
//! (A, B, C) over ℚ together with six structure-constant tensors:
//!
//! * `a[s][t][u]` — multiplication on A, `s·t = Σ_u a[s][t][u] u`,
//! * `ā[t][r][s]` — comultiplication on A, `δ(t) = Σ_{r,s} ā[t][r][s] r⊗s`,
//! * `b[q][s][r]` — right action of A on B,
//! * `b̄[t][r][s]` — right coaction of A on B (`B → B⊗A`),
//! * `c[r][q][u]` — left action of C on B,
//! * `c̄[t][r][s]` — left coaction of C on B (`B → C⊗B`),
//!
//! plus a unit and counit for A (and optionally a full Frobenius-algebra
//! structure on C). Such a datum yields a triangulation-independent
//! state-sum exactly when 35 scalar equations hold: fourteen from 2-2
//! flips, twenty from 1-3 subdivisions (up to the loop constant ρ of A),
//! and one from the 2-4 curve-edge split (up to the loop constant λ of C).
//! [`check_system`] evaluates all of them, plus the unit/counit laws,
//! symmetry of the pairing ε(xy), projective specialness of A, the module
//! loop identity on B, and — when C carries algebra structure — the
//! Frobenius-algebra and (co)action laws of C.
//!
//! Failures are data, not errors: every check returns a [`CheckResult`]
//! carrying the first violating index tuple, so a perturbed or simply
//! wrong datum can be diagnosed from the report.

pub(crate) mod equations;

use std::fmt;
use std::sync::OnceLock;

use thiserror::Error;

use crate::scalar::Scalar;
use crate::tensor::Tensor3;

/// The three color classes: edge labels come from the basis of A, B or C.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug, Hash)]
pub enum BasisKind {
    A,
    B,
    C,
}

/// Names one of the six coefficient tensors.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug, Hash)]
pub enum CoeffTag {
    /// `a` — multiplication on A.
    Mult,
    /// `ā` — comultiplication on A.
    Comult,
    /// `b` — action of A on B.
    Act,
    /// `b̄` — coaction of A on B.
    Coact,
    /// `c` — action of C on B.
    DefAct,
    /// `c̄` — coaction of C on B.
    DefCoact,
}

impl CoeffTag {
    pub const ALL: [CoeffTag; 6] = [
        CoeffTag::Mult,
        CoeffTag::Comult,
        CoeffTag::Act,
        CoeffTag::Coact,
        CoeffTag::DefAct,
        CoeffTag::DefCoact,
    ];

    /// Basis kinds of the three tensor slots, in storage order.
    pub fn signature(self) -> [BasisKind; 3] {
        use BasisKind::*;
        match self {
            CoeffTag::Mult => [A, A, A],
            CoeffTag::Comult => [A, A, A],
            CoeffTag::Act => [B, A, B],
            CoeffTag::Coact => [B, B, A],
            CoeffTag::DefAct => [C, B, B],
            CoeffTag::DefCoact => [B, C, B],
        }
    }

    /// Whether the tensor is one of the barred (comultiplication-like) three.
    pub fn is_barred(self) -> bool {
        matches!(self, CoeffTag::Comult | CoeffTag::Coact | CoeffTag::DefCoact)
    }
}

impl fmt::Display for CoeffTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            CoeffTag::Mult => "a",
            CoeffTag::Comult => "ā",
            CoeffTag::Act => "b",
            CoeffTag::Coact => "b̄",
            CoeffTag::DefAct => "c",
            CoeffTag::DefCoact => "c̄",
        };
        f.write_str(s)
    }
}

/// Construction-time failures: inconsistent dimensions or missing pieces.
///
/// Equational failures are *not* errors — they surface as failed
/// [`CheckResult`]s so that broken data can still be loaded and diagnosed.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum DataError {
    #[error("empty basis for {0:?}")]
    EmptyBasis(BasisKind),
    #[error("duplicate basis label {label:?} in {kind:?}")]
    DuplicateBasisLabel { kind: BasisKind, label: String },
    #[error("{what} has dims {got:?}, expected {expected:?}")]
    DimensionMismatch {
        what: &'static str,
        got: [usize; 3],
        expected: [usize; 3],
    },
    #[error("{what} has length {got}, expected {expected}")]
    VectorLength {
        what: &'static str,
        got: usize,
        expected: usize,
    },
    #[error("defect loop constant λ must be supplied when C has no algebra structure")]
    MissingLoopConstant,
    #[error("supplied loop constant {supplied} disagrees with computed {computed}")]
    LoopConstantMismatch { supplied: Scalar, computed: Scalar },
    #[error("supplied loop constant is zero")]
    ZeroLoopConstant,
}

/// Failures of [`compute_loop_constant`].
#[derive(Debug, Error, PartialEq, Eq)]
pub enum LoopConstantError {
    #[error("μ∘δ is not a scalar multiple of the identity")]
    NotProjectivelySpecial,
    #[error("μ∘δ is identically zero")]
    ZeroLoopConstant,
}

/// Errors of [`check_equation`] itself (not of the data it checks).
#[derive(Debug, Error, PartialEq, Eq)]
pub enum CheckError {
    #[error("unknown equation id {0} (valid ids are 2..=36)")]
    UnknownEquationId(u8),
    #[error("tensor {tag} has dims {got:?}, expected {expected:?}")]
    DimensionMismatch {
        tag: CoeffTag,
        got: [usize; 3],
        expected: [usize; 3],
    },
}

/// A unital counital algebra structure given by structure constants.
#[derive(Clone, PartialEq, Eq, Debug)]
pub(crate) struct AlgebraStructure {
    pub(crate) mult: Tensor3,
    pub(crate) comult: Tensor3,
    pub(crate) unit: Vec<Scalar>,
    pub(crate) counit: Vec<Scalar>,
}

/// The algebra A: basis, multiplication, comultiplication, unit, counit.
///
/// The loop constant ρ (the scalar with μ∘δ = ρ·Id, when one exists) is
/// computed once at construction and cached; data that is not projectively
/// special still constructs, with `loop_constant() == None`, and fails the
/// corresponding check instead.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct AlgebraData {
    basis: Vec<String>,
    structure: AlgebraStructure,
    loop_constant: Option<Scalar>,
}

impl AlgebraData {
    pub fn new(
        basis: Vec<String>,
        mult: Tensor3,
        comult: Tensor3,
        unit: Vec<Scalar>,
        counit: Vec<Scalar>,
    ) -> Result<Self, DataError> {
        validate_basis(BasisKind::A, &basis)?;
        let n = basis.len();
        expect_dims("mult tensor a", &mult, [n, n, n])?;
        expect_dims("comult tensor ā", &comult, [n, n, n])?;
        expect_len("unit vector", &unit, n)?;
        expect_len("counit covector", &counit, n)?;
        let structure = AlgebraStructure { mult, comult, unit, counit };
        let loop_constant = loop_scalar(&structure.mult, &structure.comult);
        Ok(AlgebraData { basis, structure, loop_constant })
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[String] {
        &self.basis
    }

    pub fn mult(&self) -> &Tensor3 {
        &self.structure.mult
    }

    pub fn comult(&self) -> &Tensor3 {
        &self.structure.comult
    }

    pub fn unit(&self) -> &[Scalar] {
        &self.structure.unit
    }

    pub fn counit(&self) -> &[Scalar] {
        &self.structure.counit
    }

    /// ρ, when μ∘δ = ρ·Id with ρ ≠ 0.
    pub fn loop_constant(&self) -> Option<&Scalar> {
        self.loop_constant.as_ref()
    }
}

/// The right Frobenius module B over A.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ModuleData {
    basis: Vec<String>,
    act: Tensor3,
    coact: Tensor3,
}

impl ModuleData {
    pub fn new(
        basis: Vec<String>,
        act: Tensor3,
        coact: Tensor3,
        algebra_dim: usize,
    ) -> Result<Self, DataError> {
        validate_basis(BasisKind::B, &basis)?;
        let m = basis.len();
        expect_dims("action tensor b", &act, [m, algebra_dim, m])?;
        expect_dims("coaction tensor b̄", &coact, [m, m, algebra_dim])?;
        Ok(ModuleData { basis, act, coact })
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[String] {
        &self.basis
    }

    pub fn act(&self) -> &Tensor3 {
        &self.act
    }

    pub fn coact(&self) -> &Tensor3 {
        &self.coact
    }
}

/// The defect datum C: an "action" and "coaction" on B, optionally a full
/// algebra structure on C, and the loop constant λ.
///
/// When the algebra structure is present, λ is computed from it (and any
/// explicitly supplied value must agree). When it is absent, λ must be
/// supplied — the normalization needs it, and equation 36 checks it.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct DefectData {
    basis: Vec<String>,
    act: Tensor3,
    coact: Tensor3,
    algebra: Option<AlgebraStructure>,
    loop_constant: Option<Scalar>,
}

impl DefectData {
    pub fn new(
        basis: Vec<String>,
        act: Tensor3,
        coact: Tensor3,
        module_dim: usize,
        algebra: Option<(Tensor3, Tensor3, Vec<Scalar>, Vec<Scalar>)>,
        explicit_loop: Option<Scalar>,
    ) -> Result<Self, DataError> {
        validate_basis(BasisKind::C, &basis)?;
        let k = basis.len();
        expect_dims("defect action tensor c", &act, [k, module_dim, module_dim])?;
        expect_dims("defect coaction tensor c̄", &coact, [module_dim, k, module_dim])?;
        let algebra = match algebra {
            None => None,
            Some((mult, comult, unit, counit)) => {
                expect_dims("defect mult", &mult, [k, k, k])?;
                expect_dims("defect comult", &comult, [k, k, k])?;
                expect_len("defect unit", &unit, k)?;
                expect_len("defect counit", &counit, k)?;
                Some(AlgebraStructure { mult, comult, unit, counit })
            }
        };
        let loop_constant = match (&algebra, explicit_loop) {
            (Some(s), supplied) => {
                let computed = loop_scalar(&s.mult, &s.comult);
                if let (Some(c), Some(sup)) = (&computed, &supplied) {
                    if c != sup {
                        return Err(DataError::LoopConstantMismatch {
                            supplied: sup.clone(),
                            computed: c.clone(),
                        });
                    }
                }
                computed
            }
            (None, Some(l)) => {
                if l.is_zero() {
                    return Err(DataError::ZeroLoopConstant);
                }
                Some(l)
            }
            (None, None) => return Err(DataError::MissingLoopConstant),
        };
        Ok(DefectData { basis, act, coact, algebra, loop_constant })
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[String] {
        &self.basis
    }

    pub fn act(&self) -> &Tensor3 {
        &self.act
    }

    pub fn coact(&self) -> &Tensor3 {
        &self.coact
    }

    pub fn has_algebra(&self) -> bool {
        self.algebra.is_some()
    }

    pub fn mult(&self) -> Option<&Tensor3> {
        self.algebra.as_ref().map(|s| &s.mult)
    }

    pub fn comult(&self) -> Option<&Tensor3> {
        self.algebra.as_ref().map(|s| &s.comult)
    }

    pub fn unit(&self) -> Option<&[Scalar]> {
        self.algebra.as_ref().map(|s| s.unit.as_slice())
    }

    pub fn counit(&self) -> Option<&[Scalar]> {
        self.algebra.as_ref().map(|s| s.counit.as_slice())
    }

    /// λ, when available (always present on validly constructed data unless
    /// C carries a non-special algebra structure).
    pub fn loop_constant(&self) -> Option<&Scalar> {
        self.loop_constant.as_ref()
    }
}

/// The full initial datum (A, B, C). Immutable after construction.
#[derive(Debug)]
pub struct SystemData {
    algebra: AlgebraData,
    module: ModuleData,
    defect: DefectData,
    valid: OnceLock<bool>,
}

impl Clone for SystemData {
    fn clone(&self) -> Self {
        let valid = OnceLock::new();
        if let Some(v) = self.valid.get() {
            let _ = valid.set(*v);
        }
        SystemData {
            algebra: self.algebra.clone(),
            module: self.module.clone(),
            defect: self.defect.clone(),
            valid,
        }
    }
}

impl SystemData {
    pub fn new(
        algebra: AlgebraData,
        module: ModuleData,
        defect: DefectData,
    ) -> Result<Self, DataError> {
        // Cross dimensions were fixed at part construction; re-verify the
        // links between the parts.
        let n = algebra.dim();
        let m = module.dim();
        let k = defect.dim();
        expect_dims("action tensor b", module.act(), [m, n, m])?;
        expect_dims("coaction tensor b̄", module.coact(), [m, m, n])?;
        expect_dims("defect action tensor c", defect.act(), [k, m, m])?;
        expect_dims("defect coaction tensor c̄", defect.coact(), [m, k, m])?;
        Ok(SystemData { algebra, module, defect, valid: OnceLock::new() })
    }

    pub fn algebra(&self) -> &AlgebraData {
        &self.algebra
    }

    pub fn module(&self) -> &ModuleData {
        &self.module
    }

    pub fn defect(&self) -> &DefectData {
        &self.defect
    }

    pub fn dim(&self, kind: BasisKind) -> usize {
        match kind {
            BasisKind::A => self.algebra.dim(),
            BasisKind::B => self.module.dim(),
            BasisKind::C => self.defect.dim(),
        }
    }

    pub fn basis(&self, kind: BasisKind) -> &[String] {
        match kind {
            BasisKind::A => self.algebra.basis(),
            BasisKind::B => self.module.basis(),
            BasisKind::C => self.defect.basis(),
        }
    }

    pub fn tensor(&self, tag: CoeffTag) -> &Tensor3 {
        match tag {
            CoeffTag::Mult => self.algebra.mult(),
            CoeffTag::Comult => self.algebra.comult(),
            CoeffTag::Act => self.module.act(),
            CoeffTag::Coact => self.module.coact(),
            CoeffTag::DefAct => self.defect.act(),
            CoeffTag::DefCoact => self.defect.coact(),
        }
    }

    /// ρ of A, if projectively special.
    pub fn rho(&self) -> Option<&Scalar> {
        self.algebra.loop_constant()
    }

    /// λ of C, if available.
    pub fn lambda(&self) -> Option<&Scalar> {
        self.defect.loop_constant()
    }

    /// Whether every check of [`check_system`] passes. Cached.
    pub fn is_valid(&self) -> bool {
        *self
            .valid
            .get_or_init(|| check_system(self).iter().all(|r| r.passed))
    }

    /// Copy of the system with one structure-constant entry changed by
    /// `delta`. Used by the negative-control tests: a valid system must
    /// stop passing the checks after any single nonzero entry moves.
    pub fn perturbed(&self, tag: CoeffTag, index: (usize, usize, usize), delta: Scalar) -> Self {
        let mut algebra = self.algebra.clone();
        let mut module = self.module.clone();
        let mut defect = self.defect.clone();
        let bump = |t: &mut Tensor3| {
            let v = t.get(index.0, index.1, index.2).clone() + delta.clone();
            t.set(index.0, index.1, index.2, v);
        };
        match tag {
            CoeffTag::Mult => bump(&mut algebra.structure.mult),
            CoeffTag::Comult => bump(&mut algebra.structure.comult),
            CoeffTag::Act => bump(&mut module.act),
            CoeffTag::Coact => bump(&mut module.coact),
            CoeffTag::DefAct => bump(&mut defect.act),
            CoeffTag::DefCoact => bump(&mut defect.coact),
        }
        // Loop constants may change or disappear under perturbation.
        algebra.loop_constant = loop_scalar(algebra.mult(), algebra.comult());
        SystemData {
            algebra,
            module,
            defect,
            valid: OnceLock::new(),
        }
    }
}

/// Identifies one check in a system report.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug, Hash)]
pub enum CheckId {
    /// One of the 35 scalar invariance equations, ids 2..=36.
    Equation(u8),
    UnitLaw,
    CounitLaw,
    Symmetry,
    AlgebraLoop,
    ModuleLoop,
    ActionUnital,
    CoactionCounital,
    DefectAssoc,
    DefectCoassoc,
    DefectFrobeniusLeft,
    DefectFrobeniusRight,
    DefectUnitLaw,
    DefectCounitLaw,
    DefectLoop,
    DefectActionAlgebra,
    DefectActionUnital,
    DefectCoactionCoalgebra,
    DefectCoactionCounital,
}

impl fmt::Display for CheckId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CheckId::Equation(n) => write!(f, "eq {n}"),
            CheckId::UnitLaw => write!(f, "unit law"),
            CheckId::CounitLaw => write!(f, "counit law"),
            CheckId::Symmetry => write!(f, "symmetry of ε(xy)"),
            CheckId::AlgebraLoop => write!(f, "projective specialness of A"),
            CheckId::ModuleLoop => write!(f, "module loop identity"),
            CheckId::ActionUnital => write!(f, "unital action on B"),
            CheckId::CoactionCounital => write!(f, "counital coaction on B"),
            CheckId::DefectAssoc => write!(f, "associativity of C"),
            CheckId::DefectCoassoc => write!(f, "coassociativity of C"),
            CheckId::DefectFrobeniusLeft => write!(f, "Frobenius relation of C (left)"),
            CheckId::DefectFrobeniusRight => write!(f, "Frobenius relation of C (right)"),
            CheckId::DefectUnitLaw => write!(f, "unit law of C"),
            CheckId::DefectCounitLaw => write!(f, "counit law of C"),
            CheckId::DefectLoop => write!(f, "projective specialness of C"),
            CheckId::DefectActionAlgebra => write!(f, "C-action associativity over C"),
            CheckId::DefectActionUnital => write!(f, "unital C-action"),
            CheckId::DefectCoactionCoalgebra => write!(f, "C-coaction coassociativity over C"),
            CheckId::DefectCoactionCounital => write!(f, "counital C-coaction"),
        }
    }
}

/// The first violating free-index assignment of a failed check, with the
/// two side values (left side already scaled by the normalization factor,
/// ρ or λ, where the equation carries one).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Witness {
    pub assignment: Vec<(&'static str, usize)>,
    pub lhs: Scalar,
    pub rhs: Scalar,
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, (name, v)) in self.assignment.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{name}={v}")?;
        }
        write!(f, "): lhs={}, rhs={}", self.lhs, self.rhs)
    }
}

/// Outcome of a single check. `passed` is true exactly when the checker
/// exhausted every free-index tuple without finding a violation.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CheckResult {
    pub id: CheckId,
    pub passed: bool,
    pub witness: Option<Witness>,
    pub detail: Option<String>,
}

impl CheckResult {
    fn pass(id: CheckId) -> Self {
        CheckResult { id, passed: true, witness: None, detail: None }
    }

    fn fail(id: CheckId, witness: Witness) -> Self {
        CheckResult { id, passed: false, witness: Some(witness), detail: None }
    }

    fn fail_with_detail(id: CheckId, detail: String) -> Self {
        CheckResult { id, passed: false, witness: None, detail: Some(detail) }
    }
}

impl fmt::Display for CheckResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.id, if self.passed { "pass" } else { "FAIL" })?;
        if let Some(w) = &self.witness {
            write!(f, " at {w}")?;
        }
        if let Some(d) = &self.detail {
            write!(f, " ({d})")?;
        }
        Ok(())
    }
}

fn validate_basis(kind: BasisKind, basis: &[String]) -> Result<(), DataError> {
    if basis.is_empty() {
        return Err(DataError::EmptyBasis(kind));
    }
    let mut seen = std::collections::BTreeSet::new();
    for label in basis {
        if !seen.insert(label) {
            return Err(DataError::DuplicateBasisLabel { kind, label: label.clone() });
        }
    }
    Ok(())
}

fn expect_dims(what: &'static str, t: &Tensor3, expected: [usize; 3]) -> Result<(), DataError> {
    if t.dims() != expected {
        return Err(DataError::DimensionMismatch { what, got: t.dims(), expected });
    }
    Ok(())
}

fn expect_len(what: &'static str, v: &[Scalar], expected: usize) -> Result<(), DataError> {
    if v.len() != expected {
        return Err(DataError::VectorLength { what, got: v.len(), expected });
    }
    Ok(())
}

/// The endomorphism μ∘δ as a matrix `e[t][u]` (for an algebra), or
/// μ_B∘δ_B (for a module, with `mult = b`, `comult = b̄`).
fn loop_endomorphism(mult: &Tensor3, comult: &Tensor3) -> Vec<Vec<Scalar>> {
    let n = comult.dims()[0];
    let d1 = comult.dims()[1];
    let d2 = comult.dims()[2];
    let out_dim = mult.dims()[2];
    let mut e = vec![vec![Scalar::zero(); out_dim]; n];
    for t in 0..n {
        for r in 0..d1 {
            for s in 0..d2 {
                let c = comult.get(t, r, s);
                if c.is_zero() {
                    continue;
                }
                for u in 0..out_dim {
                    let m = mult.get(r, s, u);
                    if m.is_zero() {
                        continue;
                    }
                    e[t][u] += c * m;
                }
            }
        }
    }
    e
}

fn scalar_multiple_of_identity(e: &[Vec<Scalar>]) -> Option<Scalar> {
    let n = e.len();
    let candidate = e[0][0].clone();
    for (t, row) in e.iter().enumerate() {
        if row.len() != n {
            return None;
        }
        for (u, v) in row.iter().enumerate() {
            let expect = if t == u { &candidate } else { &Scalar::zero() };
            if v != expect {
                return None;
            }
        }
    }
    Some(candidate)
}

fn loop_scalar(mult: &Tensor3, comult: &Tensor3) -> Option<Scalar> {
    let e = loop_endomorphism(mult, comult);
    match scalar_multiple_of_identity(&e) {
        Some(s) if !s.is_zero() => Some(s),
        _ => None,
    }
}

/// Computes ρ with μ∘δ = ρ·Id, or reports why there is no such nonzero ρ.
///
/// Note the composition order: the comultiplication is applied first and
/// the multiplication second, the reading under which the group algebra of
/// G has loop constant |G|.
pub fn compute_loop_constant(algebra: &AlgebraData) -> Result<Scalar, LoopConstantError> {
    let e = loop_endomorphism(algebra.mult(), algebra.comult());
    match scalar_multiple_of_identity(&e) {
        None => Err(LoopConstantError::NotProjectivelySpecial),
        Some(s) if s.is_zero() => Err(LoopConstantError::ZeroLoopConstant),
        Some(s) => Ok(s),
    }
}

/// Checks ε(xy) = ε(yx) over all basis pairs.
pub fn check_symmetric(algebra: &AlgebraData) -> CheckResult {
    let n = algebra.dim();
    let pair = |x: usize, y: usize| -> Scalar {
        let mut acc = Scalar::zero();
        for u in 0..n {
            let m = algebra.mult().get(x, y, u);
            if !m.is_zero() {
                acc += m * &algebra.counit()[u];
            }
        }
        acc
    };
    for x in 0..n {
        for y in 0..n {
            let lhs = pair(x, y);
            let rhs = pair(y, x);
            if lhs != rhs {
                return CheckResult::fail(
                    CheckId::Symmetry,
                    Witness { assignment: vec![("x", x), ("y", y)], lhs, rhs },
                );
            }
        }
    }
    CheckResult::pass(CheckId::Symmetry)
}

/// Checks μ_B∘δ_B = ρ·Id_B against the ρ of the ambient algebra.
pub fn verify_module_loop(system: &SystemData) -> CheckResult {
    let Some(rho) = system.rho() else {
        return CheckResult::fail_with_detail(
            CheckId::ModuleLoop,
            "loop constant ρ of A unavailable (A is not projectively special)".to_owned(),
        );
    };
    let e = loop_endomorphism(system.module.act(), system.module.coact());
    let m = system.module.dim();
    for t in 0..m {
        for u in 0..m {
            let expect = if t == u { rho.clone() } else { Scalar::zero() };
            if e[t][u] != expect {
                return CheckResult::fail(
                    CheckId::ModuleLoop,
                    Witness {
                        assignment: vec![("t", t), ("u", u)],
                        lhs: e[t][u].clone(),
                        rhs: expect,
                    },
                );
            }
        }
    }
    CheckResult::pass(CheckId::ModuleLoop)
}

fn check_structure_unit_law(id: CheckId, s: &AlgebraStructure) -> CheckResult {
    let n = s.unit.len();
    for x in 0..n {
        for u in 0..n {
            let mut left = Scalar::zero();
            let mut right = Scalar::zero();
            for i in 0..n {
                if !s.unit[i].is_zero() {
                    left += &s.unit[i] * s.mult.get(i, x, u);
                    right += &s.unit[i] * s.mult.get(x, i, u);
                }
            }
            let expect = kronecker(x, u);
            if left != expect {
                return CheckResult::fail(
                    id,
                    Witness { assignment: vec![("x", x), ("u", u)], lhs: left, rhs: expect },
                );
            }
            if right != expect {
                return CheckResult::fail(
                    id,
                    Witness { assignment: vec![("x", x), ("u", u)], lhs: right, rhs: expect },
                );
            }
        }
    }
    CheckResult::pass(id)
}

fn check_structure_counit_law(id: CheckId, s: &AlgebraStructure) -> CheckResult {
    let n = s.counit.len();
    for t in 0..n {
        for u in 0..n {
            // (ε⊗id)∘δ = id and (id⊗ε)∘δ = id, coefficient of u in δ(t).
            let mut left = Scalar::zero();
            let mut right = Scalar::zero();
            for i in 0..n {
                if !s.counit[i].is_zero() {
                    left += &s.counit[i] * s.comult.get(t, i, u);
                    right += &s.counit[i] * s.comult.get(t, u, i);
                }
            }
            let expect = kronecker(t, u);
            if left != expect {
                return CheckResult::fail(
                    id,
                    Witness { assignment: vec![("t", t), ("u", u)], lhs: left, rhs: expect },
                );
            }
            if right != expect {
                return CheckResult::fail(
                    id,
                    Witness { assignment: vec![("t", t), ("u", u)], lhs: right, rhs: expect },
                );
            }
        }
    }
    CheckResult::pass(id)
}

fn kronecker(i: usize, j: usize) -> Scalar {
    if i == j {
        Scalar::one()
    } else {
        Scalar::zero()
    }
}

fn check_algebra_loop(system: &SystemData) -> CheckResult {
    match compute_loop_constant(system.algebra()) {
        Ok(_) => CheckResult::pass(CheckId::AlgebraLoop),
        Err(e) => CheckResult::fail_with_detail(CheckId::AlgebraLoop, e.to_string()),
    }
}

fn check_action_unital(system: &SystemData) -> CheckResult {
    let m = system.module.dim();
    let n = system.algebra.dim();
    let unit = system.algebra.unit();
    for x in 0..m {
        for u in 0..m {
            let mut acc = Scalar::zero();
            for s in 0..n {
                if !unit[s].is_zero() {
                    acc += &unit[s] * system.module.act().get(x, s, u);
                }
            }
            let expect = kronecker(x, u);
            if acc != expect {
                return CheckResult::fail(
                    CheckId::ActionUnital,
                    Witness { assignment: vec![("x", x), ("u", u)], lhs: acc, rhs: expect },
                );
            }
        }
    }
    CheckResult::pass(CheckId::ActionUnital)
}

fn check_coaction_counital(system: &SystemData) -> CheckResult {
    let m = system.module.dim();
    let n = system.algebra.dim();
    let counit = system.algebra.counit();
    for t in 0..m {
        for r in 0..m {
            let mut acc = Scalar::zero();
            for s in 0..n {
                if !counit[s].is_zero() {
                    acc += &counit[s] * system.module.coact().get(t, r, s);
                }
            }
            let expect = kronecker(t, r);
            if acc != expect {
                return CheckResult::fail(
                    CheckId::CoactionCounital,
                    Witness { assignment: vec![("t", t), ("r", r)], lhs: acc, rhs: expect },
                );
            }
        }
    }
    CheckResult::pass(CheckId::CoactionCounital)
}

fn check_structure_assoc(id: CheckId, mult: &Tensor3) -> CheckResult {
    let n = mult.dims()[0];
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                for w in 0..n {
                    let mut lhs = Scalar::zero();
                    let mut rhs = Scalar::zero();
                    for m in 0..n {
                        lhs += mult.get(x, y, m) * mult.get(m, z, w);
                        rhs += mult.get(y, z, m) * mult.get(x, m, w);
                    }
                    if lhs != rhs {
                        return CheckResult::fail(
                            id,
                            Witness {
                                assignment: vec![("x", x), ("y", y), ("z", z), ("w", w)],
                                lhs,
                                rhs,
                            },
                        );
                    }
                }
            }
        }
    }
    CheckResult::pass(id)
}

fn check_structure_coassoc(id: CheckId, comult: &Tensor3) -> CheckResult {
    let n = comult.dims()[0];
    for t in 0..n {
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    // Coefficient of x⊗y⊗z in (δ⊗id)δ(t) and (id⊗δ)δ(t).
                    let mut lhs = Scalar::zero();
                    let mut rhs = Scalar::zero();
                    for m in 0..n {
                        lhs += comult.get(t, m, z) * comult.get(m, x, y);
                        rhs += comult.get(t, x, m) * comult.get(m, y, z);
                    }
                    if lhs != rhs {
                        return CheckResult::fail(
                            id,
                            Witness {
                                assignment: vec![("t", t), ("x", x), ("y", y), ("z", z)],
                                lhs,
                                rhs,
                            },
                        );
                    }
                }
            }
        }
    }
    CheckResult::pass(id)
}

fn check_structure_frobenius(id: CheckId, mult: &Tensor3, comult: &Tensor3, left: bool) -> CheckResult {
    let n = mult.dims()[0];
    for q in 0..n {
        for t in 0..n {
            for r in 0..n {
                for s in 0..n {
                    // Coefficient of r⊗s in δ(q·t) versus its two Frobenius
                    // rewritings: (μ⊗id)(q⊗δ(t)) on the left and
                    // (id⊗μ)(δ(q)⊗t) on the right.
                    let mut dm = Scalar::zero();
                    let mut other = Scalar::zero();
                    for u in 0..n {
                        dm += mult.get(q, t, u) * comult.get(u, r, s);
                        if left {
                            other += mult.get(q, u, r) * comult.get(t, u, s);
                        } else {
                            other += comult.get(q, r, u) * mult.get(u, t, s);
                        }
                    }
                    if other != dm {
                        return CheckResult::fail(
                            id,
                            Witness {
                                assignment: vec![("q", q), ("t", t), ("r", r), ("s", s)],
                                lhs: other,
                                rhs: dm,
                            },
                        );
                    }
                }
            }
        }
    }
    CheckResult::pass(id)
}

fn check_defect_loop(system: &SystemData) -> CheckResult {
    let Some(s) = &system.defect.algebra else {
        return CheckResult::fail_with_detail(
            CheckId::DefectLoop,
            "C carries no algebra structure".to_owned(),
        );
    };
    let e = loop_endomorphism(&s.mult, &s.comult);
    match scalar_multiple_of_identity(&e) {
        Some(l) if !l.is_zero() => CheckResult::pass(CheckId::DefectLoop),
        Some(_) => {
            CheckResult::fail_with_detail(CheckId::DefectLoop, "loop scalar of C is zero".to_owned())
        }
        None => CheckResult::fail_with_detail(
            CheckId::DefectLoop,
            "μ_C∘δ_C is not a scalar multiple of the identity".to_owned(),
        ),
    }
}

fn check_defect_action_algebra(system: &SystemData) -> CheckResult {
    let id = CheckId::DefectActionAlgebra;
    let Some(s) = &system.defect.algebra else {
        return CheckResult::fail_with_detail(id, "C carries no algebra structure".to_owned());
    };
    let k = system.defect.dim();
    let m = system.module.dim();
    let c = system.defect.act();
    for y in 0..k {
        for z in 0..k {
            for x in 0..m {
                for u in 0..m {
                    // m(μ_C(y⊗z)⊗x) = m(y⊗m(z⊗x)), coefficient of u.
                    let mut lhs = Scalar::zero();
                    for w in 0..k {
                        lhs += s.mult.get(y, z, w) * c.get(w, x, u);
                    }
                    let mut rhs = Scalar::zero();
                    for v in 0..m {
                        rhs += c.get(z, x, v) * c.get(y, v, u);
                    }
                    if lhs != rhs {
                        return CheckResult::fail(
                            id,
                            Witness {
                                assignment: vec![("y", y), ("z", z), ("x", x), ("u", u)],
                                lhs,
                                rhs,
                            },
                        );
                    }
                }
            }
        }
    }
    CheckResult::pass(id)
}

fn check_defect_action_unital(system: &SystemData) -> CheckResult {
    let id = CheckId::DefectActionUnital;
    let Some(s) = &system.defect.algebra else {
        return CheckResult::fail_with_detail(id, "C carries no algebra structure".to_owned());
    };
    let k = system.defect.dim();
    let m = system.module.dim();
    for x in 0..m {
        for u in 0..m {
            let mut acc = Scalar::zero();
            for w in 0..k {
                if !s.unit[w].is_zero() {
                    acc += &s.unit[w] * system.defect.act().get(w, x, u);
                }
            }
            let expect = kronecker(x, u);
            if acc != expect {
                return CheckResult::fail(
                    id,
                    Witness { assignment: vec![("x", x), ("u", u)], lhs: acc, rhs: expect },
                );
            }
        }
    }
    CheckResult::pass(id)
}

fn check_defect_coaction_coalgebra(system: &SystemData) -> CheckResult {
    let id = CheckId::DefectCoactionCoalgebra;
    let Some(s) = &system.defect.algebra else {
        return CheckResult::fail_with_detail(id, "C carries no algebra structure".to_owned());
    };
    let k = system.defect.dim();
    let m = system.module.dim();
    let cbar = system.defect.coact();
    for x in 0..m {
        for y in 0..k {
            for z in 0..k {
                for u in 0..m {
                    // (δ_C⊗id)∘d = (id⊗d)∘d, coefficient of y⊗z⊗u in d-image of x.
                    let mut lhs = Scalar::zero();
                    for w in 0..k {
                        lhs += cbar.get(x, w, u) * s.comult.get(w, y, z);
                    }
                    let mut rhs = Scalar::zero();
                    for v in 0..m {
                        rhs += cbar.get(x, y, v) * cbar.get(v, z, u);
                    }
                    if lhs != rhs {
                        return CheckResult::fail(
                            id,
                            Witness {
                                assignment: vec![("x", x), ("y", y), ("z", z), ("u", u)],
                                lhs,
                                rhs,
                            },
                        );
                    }
                }
            }
        }
    }
    CheckResult::pass(id)
}

fn check_defect_coaction_counital(system: &SystemData) -> CheckResult {
    let id = CheckId::DefectCoactionCounital;
    let Some(s) = &system.defect.algebra else {
        return CheckResult::fail_with_detail(id, "C carries no algebra structure".to_owned());
    };
    let k = system.defect.dim();
    let m = system.module.dim();
    for x in 0..m {
        for u in 0..m {
            let mut acc = Scalar::zero();
            for w in 0..k {
                if !s.counit[w].is_zero() {
                    acc += &s.counit[w] * system.defect.coact().get(x, w, u);
                }
            }
            let expect = kronecker(x, u);
            if acc != expect {
                return CheckResult::fail(
                    id,
                    Witness { assignment: vec![("x", x), ("u", u)], lhs: acc, rhs: expect },
                );
            }
        }
    }
    CheckResult::pass(id)
}

/// Evaluates one of the 35 scalar invariance equations, ids 2..=36.
///
/// The 2-2 flip equations (2–17) are plain equalities. The 1-3 equations
/// (18–35) hold with a factor ρ on the single-coefficient side (the
/// subdivided side sums to ρ times the plain coefficient), and equation 36
/// holds with a factor λ. Both sides are evaluated for every assignment of
/// the free indices, in lexicographic order, summing bound indices over the
/// appropriate basis; the first violation is reported as a witness.
pub fn check_equation(system: &SystemData, equation_id: u8) -> Result<CheckResult, CheckError> {
    let spec = equations::spec_for(equation_id)
        .ok_or(CheckError::UnknownEquationId(equation_id))?;
    // Defensive dimension recheck; SystemData construction already enforces
    // these, so failures here indicate memory corruption or a bad caller.
    for tag in CoeffTag::ALL {
        let expected = tag.signature().map(|k| system.dim(k));
        let got = system.tensor(tag).dims();
        if got != expected {
            return Err(CheckError::DimensionMismatch { tag, got, expected });
        }
    }
    Ok(equations::eval_spec(system, spec))
}

/// Runs every equation and named law. A system is *valid* when every
/// result passes.
pub fn check_system(system: &SystemData) -> Vec<CheckResult> {
    let mut out = Vec::with_capacity(48);
    for id in 2..=36u8 {
        out.push(check_equation(system, id).expect("equation ids 2..=36 exist"));
    }
    out.push(check_structure_unit_law(CheckId::UnitLaw, &system.algebra.structure));
    out.push(check_structure_counit_law(CheckId::CounitLaw, &system.algebra.structure));
    out.push(check_symmetric(system.algebra()));
    out.push(check_algebra_loop(system));
    out.push(verify_module_loop(system));
    out.push(check_action_unital(system));
    out.push(check_coaction_counital(system));
    if let Some(s) = &system.defect.algebra {
        out.push(check_structure_assoc(CheckId::DefectAssoc, &s.mult));
        out.push(check_structure_coassoc(CheckId::DefectCoassoc, &s.comult));
        out.push(check_structure_frobenius(CheckId::DefectFrobeniusLeft, &s.mult, &s.comult, true));
        out.push(check_structure_frobenius(
            CheckId::DefectFrobeniusRight,
            &s.mult,
            &s.comult,
            false,
        ));
        out.push(check_structure_unit_law(CheckId::DefectUnitLaw, s));
        out.push(check_structure_counit_law(CheckId::DefectCounitLaw, s));
        out.push(check_defect_loop(system));
        out.push(check_defect_action_algebra(system));
        out.push(check_defect_action_unital(system));
        out.push(check_defect_coaction_coalgebra(system));
        out.push(check_defect_coaction_counital(system));
    }
    out
}
