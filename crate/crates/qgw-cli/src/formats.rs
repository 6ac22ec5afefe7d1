//! File formats: JSON instance files, witness files, and reports.
//!
//! Matrices are row-major nested arrays with complex entries as [re, im];
//! output goes through the canonical writer so identical objects always
//! serialize to identical bytes.

use crate::jcanon::JVal;
use num_complex::Complex64;
use qgw_core::abcgraphs::{hyp_build, AbcParams, HypParams};
use qgw_core::classical::ClassicalGraph;
use qgw_core::numlin::{CMatrix, Tolerance};
use qgw_core::qgraph::QuantumGraph;
use qgw_core::superop::SuperOp;
use qgw_core::witness::{
    CliqueWitness, ColouringWitness, ComponentWitness, IndependenceWitness, Param,
    ParamEstimate, ParameterReport, Witness,
};
use qgw_core::{classical_embedding, Error};
use serde_json::Value;

/// A CLI failure carrying the process exit code: 1 for input problems,
/// 2 for semantic failures, 3 for internal inconsistencies.
#[derive(Debug)]
pub struct Failure {
    pub code: i32,
    pub message: String,
}

impl Failure {
    pub fn input(message: impl Into<String>) -> Self {
        Self { code: 1, message: message.into() }
    }

    pub fn semantic(message: impl Into<String>) -> Self {
        Self { code: 2, message: message.into() }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match &e {
            Error::Input(_) | Error::Budget(_) | Error::Singular(_) | Error::State(_) => 1,
            Error::NotAProjector { .. } | Error::InvalidGraph(_) | Error::MalformedBlock { .. } => 2,
            Error::Internal(_) => 3,
        };
        Self { code, message: e.to_string() }
    }
}

pub type CliResult<T> = Result<T, Failure>;

#[derive(Clone, Debug)]
pub enum Instance {
    Abc(AbcParams),
    Hyp { abc: AbcParams },
    Classical { graph: ClassicalGraph, abc: AbcParams },
    Projector(SuperOp),
}

impl Instance {
    pub fn n(&self) -> usize {
        match self {
            Instance::Abc(p) => p.n(),
            Instance::Hyp { abc } => abc.n(),
            Instance::Classical { abc, .. } => abc.n(),
            Instance::Projector(s) => s.n(),
        }
    }

    pub fn abc(&self) -> Option<&AbcParams> {
        match self {
            Instance::Abc(p) => Some(p),
            Instance::Hyp { abc } => Some(abc),
            Instance::Classical { abc, .. } => Some(abc),
            Instance::Projector(_) => None,
        }
    }

    pub fn to_graph(&self, tol: Tolerance) -> CliResult<QuantumGraph> {
        match self {
            Instance::Projector(s) => Ok(QuantumGraph::from_projector(s.clone(), tol)?),
            other => {
                let p = other.abc().expect("non-projector instances carry parameters");
                Ok(p.build(tol)?)
            }
        }
    }
}

// ---------- parsing ----------

fn as_obj(v: &Value) -> CliResult<&serde_json::Map<String, Value>> {
    v.as_object().ok_or_else(|| Failure::input("expected a JSON object"))
}

fn get<'a>(obj: &'a serde_json::Map<String, Value>, key: &str) -> CliResult<&'a Value> {
    obj.get(key).ok_or_else(|| Failure::input(format!("missing field '{key}'")))
}

fn as_usize(v: &Value, what: &str) -> CliResult<usize> {
    v.as_u64()
        .map(|x| x as usize)
        .ok_or_else(|| Failure::input(format!("{what} must be a nonnegative integer")))
}

fn as_f64(v: &Value, what: &str) -> CliResult<f64> {
    v.as_f64().ok_or_else(|| Failure::input(format!("{what} must be a number")))
}

fn parse_complex(v: &Value, what: &str) -> CliResult<Complex64> {
    if let Some(x) = v.as_f64() {
        return Ok(Complex64::new(x, 0.0));
    }
    let arr = v
        .as_array()
        .filter(|a| a.len() == 2)
        .ok_or_else(|| Failure::input(format!("{what} must be [re, im] or a plain number")))?;
    Ok(Complex64::new(as_f64(&arr[0], what)?, as_f64(&arr[1], what)?))
}

pub fn parse_matrix(v: &Value, rows: usize, cols: usize, what: &str) -> CliResult<CMatrix> {
    let outer = v
        .as_array()
        .ok_or_else(|| Failure::input(format!("{what} must be a nested array")))?;
    if outer.len() != rows {
        return Err(Failure::input(format!(
            "{what}: expected {rows} rows, found {}",
            outer.len()
        )));
    }
    let mut data = Vec::with_capacity(rows * cols);
    for (i, row) in outer.iter().enumerate() {
        let row = row
            .as_array()
            .ok_or_else(|| Failure::input(format!("{what}: row {i} is not an array")))?;
        if row.len() != cols {
            return Err(Failure::input(format!(
                "{what}: row {i} has {} entries, expected {cols}",
                row.len()
            )));
        }
        for (j, entry) in row.iter().enumerate() {
            data.push(parse_complex(entry, &format!("{what}[{i}][{j}]"))?);
        }
    }
    CMatrix::from_vec(rows, cols, data).map_err(Failure::from)
}

pub fn parse_instance(text: &str) -> CliResult<Instance> {
    let v: Value = serde_json::from_str(text)
        .map_err(|e| Failure::input(format!("JSON parse error: {e}")))?;
    let obj = as_obj(&v)?;
    let kind = get(obj, "kind")?
        .as_str()
        .ok_or_else(|| Failure::input("'kind' must be a string"))?;
    let n = as_usize(get(obj, "n")?, "n")?;
    if n == 0 {
        return Err(Failure::input("n must be at least 1"));
    }
    match kind {
        "abc" => {
            let a = parse_matrix(get(obj, "a")?, n, n, "a")?;
            let b = parse_matrix(get(obj, "b")?, n, n, "b")?;
            let c = parse_matrix(get(obj, "c")?, n, n, "c")?;
            Ok(Instance::Abc(AbcParams::new(a, b, c)?))
        }
        "hyp" => {
            let params = HypParams {
                n,
                a: as_f64(get(obj, "a")?, "a")?,
                a_prime: as_f64(get(obj, "a_prime")?, "a_prime")?,
                b: as_f64(get(obj, "b")?, "b")?,
                c: as_f64(get(obj, "c")?, "c")?,
            };
            let abc = hyp_build(&params)?;
            Ok(Instance::Hyp { abc })
        }
        "classical" => {
            let edges_v = get(obj, "edges")?
                .as_array()
                .ok_or_else(|| Failure::input("'edges' must be an array"))?;
            let mut edges = Vec::new();
            for e in edges_v {
                let pair = e
                    .as_array()
                    .filter(|p| p.len() == 2)
                    .ok_or_else(|| Failure::input("each edge must be a [u, v] pair"))?;
                edges.push((as_usize(&pair[0], "edge endpoint")?, as_usize(&pair[1], "edge endpoint")?));
            }
            let graph = ClassicalGraph::from_edges(n, &edges)?;
            let abc = classical_embedding(&graph);
            Ok(Instance::Classical { graph, abc })
        }
        "projector" => {
            let m = parse_matrix(get(obj, "matrix")?, n * n, n * n, "matrix")?;
            Ok(Instance::Projector(SuperOp::from_matrix(m)?))
        }
        other => Err(Failure::input(format!(
            "unknown instance kind '{other}' (expected abc, hyp, classical, or projector)"
        ))),
    }
}

// ---------- serialization ----------

pub fn matrix_to_json(m: &CMatrix) -> JVal {
    JVal::Arr(
        (0..m.rows())
            .map(|i| JVal::Arr((0..m.cols()).map(|j| JVal::complex(m[(i, j)])).collect()))
            .collect(),
    )
}

pub fn abc_to_json(p: &AbcParams) -> JVal {
    JVal::obj(vec![
        ("kind", JVal::Str("abc".into())),
        ("n", JVal::Int(p.n() as i64)),
        ("a", matrix_to_json(p.a())),
        ("b", matrix_to_json(p.b())),
        ("c", matrix_to_json(p.c())),
    ])
}

pub fn hyp_to_json(h: &HypParams) -> JVal {
    JVal::obj(vec![
        ("kind", JVal::Str("hyp".into())),
        ("n", JVal::Int(h.n as i64)),
        ("a", JVal::Float(h.a)),
        ("a_prime", JVal::Float(h.a_prime)),
        ("b", JVal::Float(h.b)),
        ("c", JVal::Float(h.c)),
    ])
}

pub fn classical_to_json(g: &ClassicalGraph) -> JVal {
    JVal::obj(vec![
        ("kind", JVal::Str("classical".into())),
        ("n", JVal::Int(g.n() as i64)),
        (
            "edges",
            JVal::Arr(
                g.edges()
                    .iter()
                    .map(|&(u, v)| JVal::Arr(vec![JVal::Int(u as i64), JVal::Int(v as i64)]))
                    .collect(),
            ),
        ),
    ])
}

pub fn param_name(p: Param) -> &'static str {
    match p {
        Param::Components => "components",
        Param::Chromatic => "chromatic",
        Param::Independence => "independence",
        Param::Clique => "clique",
    }
}

pub fn witness_to_json(n: usize, w: &Witness) -> JVal {
    match w {
        Witness::Components(cw) => JVal::obj(vec![
            ("kind", JVal::Str("components".into())),
            ("n", JVal::Int(n as i64)),
            ("projectors", JVal::Arr(cw.projectors.iter().map(matrix_to_json).collect())),
        ]),
        Witness::Colouring(cw) => JVal::obj(vec![
            ("kind", JVal::Str("colouring".into())),
            ("n", JVal::Int(n as i64)),
            ("projectors", JVal::Arr(cw.projectors.iter().map(matrix_to_json).collect())),
        ]),
        Witness::Independent(iw) => JVal::obj(vec![
            ("kind", JVal::Str("independent".into())),
            ("n", JVal::Int(n as i64)),
            ("projector", matrix_to_json(&iw.projector)),
        ]),
        Witness::Clique(cw) => JVal::obj(vec![
            ("kind", JVal::Str("clique".into())),
            ("n", JVal::Int(n as i64)),
            ("k", JVal::Int(cw.k() as i64)),
            ("isometry", matrix_to_json(&cw.isometry)),
        ]),
    }
}

pub fn parse_witness(text: &str) -> CliResult<(usize, Witness)> {
    let v: Value = serde_json::from_str(text)
        .map_err(|e| Failure::input(format!("JSON parse error: {e}")))?;
    let obj = as_obj(&v)?;
    let kind = get(obj, "kind")?
        .as_str()
        .ok_or_else(|| Failure::input("'kind' must be a string"))?;
    let n = as_usize(get(obj, "n")?, "n")?;
    let parse_projector_list = |key: &str| -> CliResult<Vec<CMatrix>> {
        let arr = get(obj, key)?
            .as_array()
            .ok_or_else(|| Failure::input(format!("'{key}' must be an array")))?;
        arr.iter()
            .enumerate()
            .map(|(i, m)| parse_matrix(m, n, n, &format!("{key}[{i}]")))
            .collect()
    };
    let w = match kind {
        "components" => Witness::Components(ComponentWitness {
            projectors: parse_projector_list("projectors")?,
        }),
        "colouring" => Witness::Colouring(ColouringWitness {
            projectors: parse_projector_list("projectors")?,
        }),
        "independent" => Witness::Independent(IndependenceWitness {
            projector: parse_matrix(get(obj, "projector")?, n, n, "projector")?,
        }),
        "clique" => {
            let k = as_usize(get(obj, "k")?, "k")?;
            Witness::Clique(CliqueWitness {
                isometry: parse_matrix(get(obj, "isometry")?, n, k, "isometry")?,
            })
        }
        other => return Err(Failure::input(format!("unknown witness kind '{other}'"))),
    };
    Ok((n, w))
}

pub fn estimate_to_json(est: &ParamEstimate) -> JVal {
    match est {
        ParamEstimate::Exact { value, provenance } => JVal::obj(vec![
            ("status", JVal::Str("exact".into())),
            ("value", JVal::Int(*value as i64)),
            ("provenance", JVal::Str(provenance.clone())),
        ]),
        ParamEstimate::Bounded { lo, hi, provenance } => {
            let mut pairs = vec![
                ("status", JVal::Str("bounded".into())),
                ("lo", JVal::Int(*lo as i64)),
                ("provenance", JVal::Str(provenance.clone())),
            ];
            if let Some(hi) = hi {
                pairs.push(("hi", JVal::Int(*hi as i64)));
            }
            JVal::obj(pairs)
        }
        ParamEstimate::NotColourable { provenance } => JVal::obj(vec![
            ("status", JVal::Str("not_colourable".into())),
            ("provenance", JVal::Str(provenance.clone())),
        ]),
        ParamEstimate::Unknown => JVal::obj(vec![("status", JVal::Str("unknown".into()))]),
    }
}

pub fn family_name(f: qgw_core::witness::FamilyKind) -> &'static str {
    use qgw_core::witness::FamilyKind as F;
    match f {
        F::Empty => "empty",
        F::ClassicalOnly => "classical_only",
        F::SubspaceOnly => "subspace_only",
        F::ClassicalWithSubspace => "classical_with_subspace",
        F::StrangeOnly => "strange_only",
        F::General => "general",
    }
}

/// Report serialization; `witness_files` pairs each embedded witness with
/// the file name it was written to, when emission was requested.
pub fn report_to_json(
    n: usize,
    report: &ParameterReport,
    witness_files: &[(Param, String)],
) -> JVal {
    let witnesses = report
        .witnesses
        .iter()
        .map(|(p, w)| {
            let mut pairs = vec![
                ("parameter", JVal::Str(param_name(*p).into())),
                ("witness", witness_to_json(n, w)),
            ];
            if let Some((_, file)) = witness_files.iter().find(|(fp, _)| fp == p) {
                pairs.push(("file", JVal::Str(file.clone())));
            }
            JVal::obj(pairs)
        })
        .collect();
    JVal::obj(vec![
        ("kind", JVal::Str("report".into())),
        ("n", JVal::Int(n as i64)),
        ("family", JVal::Str(family_name(report.family).into())),
        ("components", estimate_to_json(&report.components)),
        ("chromatic", estimate_to_json(&report.chromatic)),
        ("independence", estimate_to_json(&report.independence)),
        ("clique", estimate_to_json(&report.clique)),
        ("witnesses", JVal::Arr(witnesses)),
        (
            "assumptions",
            JVal::Arr(report.assumptions.iter().map(|s| JVal::Str(s.clone())).collect()),
        ),
    ])
}
