//! JSON file formats.
//!
//! All files are UTF-8 JSON with deterministic field order; tensor entry
//! lists are sorted lexicographically on save, so save∘load is stable
//! modulo the ordering of the input's entries.
//!
//! System files carry three sections:
//!
//! ```json
//! {
//!   "algebra": { "basis": ["e","g"], "mult": [[0,0,0,1], ...],
//!                "comult": [...], "unit": [1,0], "counit": [1,0],
//!                "loop_constant": 2 },
//!   "module":  { "basis": [...], "act": [...], "coact": [...] },
//!   "defect":  { "basis": [...], "act": [...], "coact": [...],
//!                "mult": [...], "comult": [...], "unit": [...],
//!                "counit": [...], "loop_constant": 1 }
//! }
//! ```
//!
//! A tensor is a zero-omitted entry list `[i, j, k, value]`; scalars are
//! JSON integers or decimal-free fraction strings `"p/q"`. The defect's
//! `mult`/`comult`/`unit`/`counit` are optional — when they are absent,
//! `loop_constant` is required. The `loop_constant` of the algebra is a
//! cache: it is recomputed on load and a mismatch rejects the file.
//!
//! Complex files list `vertices` as `[id, on_curve]` pairs, the
//! `off_curve_order`, oriented `triangles`, and `curve_cycles`.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::complex::{BuildError, ComplexParts, CurveSurfaceComplex};
use crate::frobenius_data::{AlgebraData, DataError, DefectData, ModuleData, SystemData};
use crate::scalar::{ParseScalarError, Scalar};
use crate::statesum::InvariantValue;
use crate::tensor::{Tensor3, TensorError};

#[derive(Debug, Error)]
pub enum IoError {
    #[error("malformed JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("bad scalar literal: {0}")]
    Scalar(#[from] ParseScalarError),
    #[error("bad tensor entry list: {0}")]
    Tensor(#[from] TensorError),
    #[error("inconsistent data: {0}")]
    Data(#[from] DataError),
    #[error("invalid complex: {0}")]
    Complex(#[from] BuildError),
    #[error("stored loop constant {stored} disagrees with computed {computed}")]
    LoopConstantMismatch { stored: Scalar, computed: Scalar },
    #[error("bad table: {0}")]
    Table(#[from] crate::examples::TableError),
    #[error("unknown element label {0:?}")]
    UnknownLabel(String),
    #[error("io: {0}")]
    File(#[from] std::io::Error),
}

/// A scalar as it appears in files: an integer or a `"p/q"` string.
#[derive(Serialize, Deserialize, Clone, Debug)]
#[serde(untagged)]
pub enum ScalarRepr {
    Int(i64),
    Str(String),
}

impl ScalarRepr {
    fn to_scalar(&self) -> Result<Scalar, ParseScalarError> {
        match self {
            ScalarRepr::Int(n) => Ok(Scalar::from_int(*n)),
            ScalarRepr::Str(s) => s.parse(),
        }
    }

    fn from_scalar(s: &Scalar) -> ScalarRepr {
        match s.to_i64() {
            Some(n) => ScalarRepr::Int(n),
            None => ScalarRepr::Str(s.to_string()),
        }
    }
}

type Entry = (usize, usize, usize, ScalarRepr);

fn tensor_to_entries(t: &Tensor3) -> Vec<Entry> {
    t.entries()
        .into_iter()
        .map(|(i, j, k, v)| (i, j, k, ScalarRepr::from_scalar(&v)))
        .collect()
}

fn tensor_from_entries(dims: [usize; 3], entries: &[Entry]) -> Result<Tensor3, IoError> {
    let mut resolved = Vec::with_capacity(entries.len());
    for (i, j, k, v) in entries {
        resolved.push((*i, *j, *k, v.to_scalar()?));
    }
    Ok(Tensor3::from_entries(dims, resolved)?)
}

fn vector_to_repr(v: &[Scalar]) -> Vec<ScalarRepr> {
    v.iter().map(ScalarRepr::from_scalar).collect()
}

fn vector_from_repr(v: &[ScalarRepr]) -> Result<Vec<Scalar>, IoError> {
    v.iter().map(|r| Ok(r.to_scalar()?)).collect()
}

#[derive(Serialize, Deserialize, Debug)]
struct AlgebraFile {
    basis: Vec<String>,
    mult: Vec<Entry>,
    comult: Vec<Entry>,
    unit: Vec<ScalarRepr>,
    counit: Vec<ScalarRepr>,
    #[serde(skip_serializing_if = "Option::is_none")]
    loop_constant: Option<ScalarRepr>,
}

#[derive(Serialize, Deserialize, Debug)]
struct ModuleFile {
    basis: Vec<String>,
    act: Vec<Entry>,
    coact: Vec<Entry>,
}

#[derive(Serialize, Deserialize, Debug)]
struct DefectFile {
    basis: Vec<String>,
    act: Vec<Entry>,
    coact: Vec<Entry>,
    #[serde(skip_serializing_if = "Option::is_none")]
    mult: Option<Vec<Entry>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    comult: Option<Vec<Entry>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    unit: Option<Vec<ScalarRepr>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    counit: Option<Vec<ScalarRepr>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    loop_constant: Option<ScalarRepr>,
}

#[derive(Serialize, Deserialize, Debug)]
struct SystemFile {
    algebra: AlgebraFile,
    module: ModuleFile,
    defect: DefectFile,
}

pub fn system_to_json(system: &SystemData) -> String {
    let a = system.algebra();
    let m = system.module();
    let d = system.defect();
    let file = SystemFile {
        algebra: AlgebraFile {
            basis: a.basis().to_vec(),
            mult: tensor_to_entries(a.mult()),
            comult: tensor_to_entries(a.comult()),
            unit: vector_to_repr(a.unit()),
            counit: vector_to_repr(a.counit()),
            loop_constant: a.loop_constant().map(ScalarRepr::from_scalar),
        },
        module: ModuleFile {
            basis: m.basis().to_vec(),
            act: tensor_to_entries(m.act()),
            coact: tensor_to_entries(m.coact()),
        },
        defect: DefectFile {
            basis: d.basis().to_vec(),
            act: tensor_to_entries(d.act()),
            coact: tensor_to_entries(d.coact()),
            mult: d.mult().map(tensor_to_entries),
            comult: d.comult().map(tensor_to_entries),
            unit: d.unit().map(vector_to_repr),
            counit: d.counit().map(vector_to_repr),
            loop_constant: d.loop_constant().map(ScalarRepr::from_scalar),
        },
    };
    let mut s = serde_json::to_string_pretty(&file).expect("system serializes");
    s.push('\n');
    s
}

pub fn system_from_json(text: &str) -> Result<SystemData, IoError> {
    let file: SystemFile = serde_json::from_str(text)?;
    let n = file.algebra.basis.len();
    let m = file.module.basis.len();
    let k = file.defect.basis.len();
    let algebra = AlgebraData::new(
        file.algebra.basis,
        tensor_from_entries([n, n, n], &file.algebra.mult)?,
        tensor_from_entries([n, n, n], &file.algebra.comult)?,
        vector_from_repr(&file.algebra.unit)?,
        vector_from_repr(&file.algebra.counit)?,
    )?;
    if let Some(stored) = &file.algebra.loop_constant {
        let stored = stored.to_scalar()?;
        match algebra.loop_constant() {
            Some(computed) if *computed == stored => {}
            Some(computed) => {
                return Err(IoError::LoopConstantMismatch {
                    stored,
                    computed: computed.clone(),
                })
            }
            None => {
                return Err(IoError::LoopConstantMismatch {
                    stored,
                    computed: Scalar::zero(),
                })
            }
        }
    }
    let module = ModuleData::new(
        file.module.basis,
        tensor_from_entries([m, n, m], &file.module.act)?,
        tensor_from_entries([m, m, n], &file.module.coact)?,
        n,
    )?;
    let structure = match (&file.defect.mult, &file.defect.comult, &file.defect.unit, &file.defect.counit)
    {
        (Some(mult), Some(comult), Some(unit), Some(counit)) => Some((
            tensor_from_entries([k, k, k], mult)?,
            tensor_from_entries([k, k, k], comult)?,
            vector_from_repr(unit)?,
            vector_from_repr(counit)?,
        )),
        _ => None,
    };
    let explicit_loop = match &file.defect.loop_constant {
        Some(r) => Some(r.to_scalar()?),
        None => None,
    };
    let defect = DefectData::new(
        file.defect.basis,
        tensor_from_entries([k, m, m], &file.defect.act)?,
        tensor_from_entries([m, k, m], &file.defect.coact)?,
        m,
        structure,
        explicit_loop,
    )?;
    Ok(SystemData::new(algebra, module, defect)?)
}

pub fn complex_to_json(cx: &CurveSurfaceComplex) -> String {
    let mut s = serde_json::to_string_pretty(&cx.parts()).expect("complex serializes");
    s.push('\n');
    s
}

pub fn complex_from_json(text: &str) -> Result<CurveSurfaceComplex, IoError> {
    let parts: ComplexParts = serde_json::from_str(text)?;
    Ok(parts.build()?)
}

/// The result record emitted by the invariant computation.
#[derive(Serialize, Deserialize, Debug)]
pub struct InvariantRecord {
    pub unnormalized: String,
    pub n_off_vertices: usize,
    pub n_on_vertices: usize,
    pub normalized: String,
}

pub fn invariant_to_json(v: &InvariantValue) -> String {
    let record = InvariantRecord {
        unnormalized: v.unnormalized.to_string(),
        n_off_vertices: v.n_off_vertices,
        n_on_vertices: v.n_on_vertices,
        normalized: v.normalized.to_string(),
    };
    let mut s = serde_json::to_string_pretty(&record).expect("record serializes");
    s.push('\n');
    s
}

/// Group table file: labels plus a multiplication table of labels.
#[derive(Serialize, Deserialize, Debug)]
pub struct GroupTableFile {
    pub elements: Vec<String>,
    pub table: Vec<Vec<String>>,
}

pub fn group_table_from_json(text: &str) -> Result<crate::examples::GroupTable, IoError> {
    let file: GroupTableFile = serde_json::from_str(text)?;
    let index = |l: &str| -> Result<usize, IoError> {
        file.elements
            .iter()
            .position(|e| e == l)
            .ok_or_else(|| IoError::UnknownLabel(l.to_owned()))
    };
    let mut table = Vec::with_capacity(file.table.len());
    for row in &file.table {
        let mut r = Vec::with_capacity(row.len());
        for l in row {
            r.push(index(l)?);
        }
        table.push(r);
    }
    Ok(crate::examples::GroupTable::new(file.elements, table)?)
}

pub fn action_table_from_json(
    text: &str,
    g: &crate::examples::GroupTable,
    h: &crate::examples::GroupTable,
) -> Result<crate::examples::ActionTable, IoError> {
    let file: ActionTableFile = serde_json::from_str(text)?;
    let index = |l: &str| -> Result<usize, IoError> {
        file.points
            .iter()
            .position(|e| e == l)
            .ok_or_else(|| IoError::UnknownLabel(l.to_owned()))
    };
    let resolve = |rows: &[Vec<String>]| -> Result<Vec<Vec<usize>>, IoError> {
        rows.iter()
            .map(|row| row.iter().map(|l| index(l)).collect())
            .collect()
    };
    Ok(crate::examples::ActionTable::new(
        file.points.clone(),
        resolve(&file.right)?,
        resolve(&file.left)?,
        g,
        h,
    )?)
}

/// Action table file: point labels plus right (X×G) and left (H×X) tables
/// of point labels.
#[derive(Serialize, Deserialize, Debug)]
pub struct ActionTableFile {
    pub points: Vec<String>,
    pub right: Vec<Vec<String>>,
    pub left: Vec<Vec<String>>,
}

/// Cocycle tables for the twisted construction.
#[derive(Serialize, Deserialize, Debug)]
pub struct CocycleFile {
    pub alpha: Vec<Vec<ScalarRepr>>,
    pub beta: Vec<Vec<ScalarRepr>>,
    pub gamma: Vec<Vec<ScalarRepr>>,
}

pub fn scalar_table(table: &[Vec<ScalarRepr>]) -> Result<Vec<Vec<Scalar>>, IoError> {
    table
        .iter()
        .map(|row| row.iter().map(|r| Ok(r.to_scalar()?)).collect())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::examples::{bundled_systems, group_algebra, regular_module, trivial_defect_system, GroupTable};
    use proptest::prelude::*;

    #[test]
    fn system_round_trip_is_stable() {
        for (name, sys) in bundled_systems() {
            let json = system_to_json(&sys);
            let back = system_from_json(&json).unwrap_or_else(|e| panic!("{name}: {e}"));
            let json2 = system_to_json(&back);
            assert_eq!(json, json2, "{name}");
            use crate::frobenius_data::CoeffTag;
            for tag in CoeffTag::ALL {
                assert_eq!(sys.tensor(tag), back.tensor(tag), "{name} {tag}");
            }
            assert_eq!(sys.rho(), back.rho());
            assert_eq!(sys.lambda(), back.lambda());
        }
    }

    #[test]
    fn complex_round_trip_is_stable() {
        for name in crate::complex::SeedName::ALL {
            let cx = crate::complex::seed_complex(name);
            let json = complex_to_json(&cx);
            let back = complex_from_json(&json).unwrap();
            assert_eq!(cx, back);
            assert_eq!(json, complex_to_json(&back));
        }
    }

    #[test]
    fn loop_constant_mismatch_rejects() {
        let g = GroupTable::cyclic(2);
        let a = group_algebra(&g);
        let sys = trivial_defect_system(a.clone(), regular_module(&a)).unwrap();
        let json = system_to_json(&sys);
        let tampered = json.replace("\"loop_constant\": 2", "\"loop_constant\": 3");
        assert_ne!(json, tampered);
        assert!(matches!(
            system_from_json(&tampered),
            Err(IoError::LoopConstantMismatch { .. })
        ));
    }

    #[test]
    fn malformed_files_are_rejected() {
        assert!(system_from_json("{").is_err());
        assert!(system_from_json("{}").is_err());
        assert!(complex_from_json("[1,2,3]").is_err());
    }

    proptest! {
        /// Scalars survive the file representation exactly.
        #[test]
        fn scalar_repr_round_trips(num in -1000i64..1000, den in 1i64..200) {
            let s = Scalar::from_fraction(num, den);
            let repr = ScalarRepr::from_scalar(&s);
            prop_assert_eq!(repr.to_scalar().unwrap(), s);
        }
    }
}
