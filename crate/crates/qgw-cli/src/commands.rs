//! Implementations of the CLI subcommands. Every command returns the JSON
//! document to print plus the process exit code.

use crate::formats::{
    abc_to_json, classical_to_json, estimate_to_json, family_name, hyp_to_json, param_name,
    parse_instance, parse_witness, report_to_json, witness_to_json, CliResult, Failure, Instance,
};
use crate::jcanon::JVal;
use qgw_core::abcgraphs::{canonical, hyp_build, hyp_enumerate, random_abc, CanonicalKind,
    HypParams, RandomProfile};
use qgw_core::classical::ClassicalGraph;
use qgw_core::constructions;
use qgw_core::numlin::Tolerance;
use qgw_core::witness::{
    bounds_table, canonical_report, check_clique, check_colouring, check_components,
    check_independent_set, random_clique_search, search_coordinate_colouring,
    search_coordinate_components, search_coordinate_independent, FamilyKind, Param,
    ParamEstimate, ParameterReport, SearchBudget, Witness, MAX_COORD_SEARCH_N,
};
use std::fs;
use std::path::Path;

pub struct Outcome {
    pub document: JVal,
    pub exit: i32,
}

impl Outcome {
    fn ok(document: JVal) -> Self {
        Self { document, exit: 0 }
    }
}

fn read_file(path: &Path) -> CliResult<String> {
    fs::read_to_string(path)
        .map_err(|e| Failure::input(format!("cannot read {}: {e}", path.display())))
}

fn load_instance(path: &Path) -> CliResult<Instance> {
    parse_instance(&read_file(path)?)
}

/// The classical graph carried by the off-diagonal 0/1 pattern of A.
fn classical_from_instance(inst: &Instance, tol: Tolerance) -> CliResult<ClassicalGraph> {
    match inst {
        Instance::Classical { graph, .. } => Ok(graph.clone()),
        other => {
            let p = other
                .abc()
                .ok_or_else(|| Failure::input("a parametric instance is required"))?;
            let n = p.n();
            let mut g = ClassicalGraph::empty(n);
            for i in 0..n {
                for j in (i + 1)..n {
                    let a = p.a()[(i, j)];
                    if (a - num_complex::Complex64::ONE).norm() <= tol.eps {
                        g.add_edge(i, j).map_err(Failure::from)?;
                    } else if a.norm() > tol.eps {
                        return Err(Failure::input(format!(
                            "A[{i}][{j}] = {a} is neither 0 nor 1; no classical graph"
                        )));
                    }
                }
            }
            Ok(g)
        }
    }
}

// ---------- build ----------

pub fn build_canonical(kind: CanonicalKind, n: usize) -> CliResult<Outcome> {
    let params = canonical(kind, n)?;
    Ok(Outcome::ok(abc_to_json(&params)))
}

pub fn build_hyp(h: HypParams) -> CliResult<Outcome> {
    hyp_build(&h)?; // shape check
    Ok(Outcome::ok(hyp_to_json(&h)))
}

pub fn build_hyp_enumeration(n: usize) -> CliResult<Outcome> {
    let entries = hyp_enumerate(n)?
        .into_iter()
        .map(|e| {
            let mut obj = match hyp_to_json(&e.params) {
                JVal::Obj(m) => m,
                _ => unreachable!(),
            };
            obj.insert("loopless".into(), JVal::Bool(e.loopless));
            JVal::Obj(obj)
        })
        .collect();
    Ok(Outcome::ok(JVal::obj(vec![
        ("kind", JVal::Str("hyp_enumeration".into())),
        ("n", JVal::Int(n as i64)),
        ("entries", JVal::Arr(entries)),
    ])))
}

pub fn build_abc_from_file(path: &Path) -> CliResult<Outcome> {
    let inst = load_instance(path)?;
    match inst {
        Instance::Abc(_) | Instance::Hyp { .. } | Instance::Classical { .. } => {
            let p = inst.abc().expect("parametric");
            Ok(Outcome::ok(abc_to_json(p)))
        }
        Instance::Projector(_) => {
            Err(Failure::input("'build abc' expects a parametric instance file"))
        }
    }
}

pub fn build_classical(n: usize, edges: &str) -> CliResult<Outcome> {
    let parsed = parse_edge_list(edges)?;
    let g = ClassicalGraph::from_edges(n, &parsed)?;
    Ok(Outcome::ok(classical_to_json(&g)))
}

pub fn build_reflexive(path: &Path, tol: Tolerance) -> CliResult<Outcome> {
    let inst = load_instance(path)?;
    let g = classical_from_instance(&inst, tol)?;
    Ok(Outcome::ok(abc_to_json(&constructions::reflexive_params(&g))))
}

pub fn build_subspace(n: usize) -> CliResult<Outcome> {
    if n < 2 {
        return Err(Failure::input("subspace instances need n >= 2"));
    }
    use num_complex::Complex64;
    use qgw_core::numlin::CMatrix;
    let b = CMatrix::identity(n).sub(&CMatrix::ones(n).scale(Complex64::new(1.0 / n as f64, 0.0)));
    let diag = CMatrix::from_diag(&b.diag_vector());
    let p = qgw_core::AbcParams::new(diag.clone(), b, diag)?;
    Ok(Outcome::ok(abc_to_json(&p)))
}

pub fn build_random(
    n: usize,
    seed: u64,
    classical_prob: f64,
    strange_prob: f64,
    b_rank: usize,
    loopless: bool,
) -> CliResult<Outcome> {
    let p = random_abc(
        n,
        seed,
        &RandomProfile {
            classical_edge_prob: classical_prob,
            strange_edge_prob: strange_prob,
            b_rank,
            loopless,
        },
    )?;
    Ok(Outcome::ok(abc_to_json(&p)))
}

pub fn parse_edge_list(text: &str) -> CliResult<Vec<(usize, usize)>> {
    if text.trim().is_empty() {
        return Ok(vec![]);
    }
    text.split(',')
        .map(|pair| {
            let mut it = pair.trim().split('-');
            let u = it
                .next()
                .and_then(|s| s.trim().parse::<usize>().ok())
                .ok_or_else(|| Failure::input(format!("bad edge '{pair}', expected u-v")))?;
            let v = it
                .next()
                .and_then(|s| s.trim().parse::<usize>().ok())
                .ok_or_else(|| Failure::input(format!("bad edge '{pair}', expected u-v")))?;
            if it.next().is_some() {
                return Err(Failure::input(format!("bad edge '{pair}', expected u-v")));
            }
            Ok((u, v))
        })
        .collect()
}

pub fn parse_index_list(text: &str) -> CliResult<Vec<usize>> {
    text.split(',')
        .map(|s| {
            s.trim()
                .parse::<usize>()
                .map_err(|_| Failure::input(format!("bad index '{s}'")))
        })
        .collect()
}

pub fn parse_partition(text: &str) -> CliResult<Vec<Vec<usize>>> {
    text.split('|').map(parse_index_list).collect()
}

// ---------- validate ----------

pub fn cmd_validate(path: &Path, tol: Tolerance) -> CliResult<Outcome> {
    let inst = load_instance(path)?;
    let (quantum_graph, undirected, loopless, reasons) = match &inst {
        Instance::Projector(s) => {
            match qgw_core::QuantumGraph::from_projector(s.clone(), tol) {
                Ok(g) => (true, g.is_undirected(tol), g.is_loopless(tol), vec![]),
                Err(e) => (false, false, false, vec![e.to_string()]),
            }
        }
        other => {
            let p = other.abc().expect("parametric");
            let r = p.validate(tol);
            (r.quantum_graph, r.undirected, r.loopless, r.reasons)
        }
    };
    let document = JVal::obj(vec![
        ("kind", JVal::Str("validation".into())),
        ("n", JVal::Int(inst.n() as i64)),
        ("quantum_graph", JVal::Bool(quantum_graph)),
        ("undirected", JVal::Bool(undirected)),
        ("loopless", JVal::Bool(loopless)),
        ("reasons", JVal::Arr(reasons.into_iter().map(JVal::Str).collect())),
    ]);
    Ok(Outcome { document, exit: if quantum_graph { 0 } else { 2 } })
}

// ---------- analyze ----------

fn generic_report(
    graph: &qgw_core::QuantumGraph,
    tol: Tolerance,
    budget: &SearchBudget,
) -> CliResult<ParameterReport> {
    let n = graph.n();
    let mut witnesses = Vec::new();
    let searchable = n <= MAX_COORD_SEARCH_N;

    let components = if searchable {
        let w = search_coordinate_components(graph, n, tol)?;
        let k = w.projectors.len();
        witnesses.push((Param::Components, Witness::Components(w)));
        ParamEstimate::bounded(k, Some(n), "coordinate search lower bound")
    } else {
        ParamEstimate::Unknown
    };

    let nonempty = graph.dim_s() > 0;
    let chromatic = if !nonempty {
        let w = qgw_core::witness::ColouringWitness {
            projectors: vec![qgw_core::CMatrix::identity(n)],
        };
        if !check_colouring(graph, &w, tol)? {
            return Err(Failure {
                code: 3,
                message: "trivial colouring rejected on an empty operator space".into(),
            });
        }
        witnesses.push((Param::Chromatic, Witness::Colouring(w)));
        ParamEstimate::exact(1, "empty operator space")
    } else if searchable {
        let mut found = None;
        for k in 2..=n {
            if let Some(w) = search_coordinate_colouring(graph, k, tol)? {
                found = Some((k, w));
                break;
            }
        }
        match found {
            Some((k, w)) => {
                witnesses.push((Param::Chromatic, Witness::Colouring(w)));
                ParamEstimate::bounded(2, Some(k), "coordinate colouring upper bound")
            }
            None => ParamEstimate::bounded(2, None, "no coordinate colouring exists"),
        }
    } else {
        ParamEstimate::Unknown
    };

    let independence = if searchable {
        match search_coordinate_independent(graph, tol)? {
            Some(w) => {
                let k = w.k(tol)?;
                witnesses.push((Param::Independence, Witness::Independent(w)));
                ParamEstimate::bounded(k, Some(n), "coordinate independent set lower bound")
            }
            None => ParamEstimate::bounded(1, Some(n), "rank-1 projectors are independent"),
        }
    } else {
        ParamEstimate::Unknown
    };

    let mut clique = ParamEstimate::bounded(1, Some(n), "every graph has a 1-clique");
    for k in (1..=n).rev() {
        if let Some(w) = random_clique_search(graph, k, budget.trials, budget.seed, tol)? {
            witnesses.push((Param::Clique, Witness::Clique(w)));
            clique = ParamEstimate::bounded(k, Some(n), "randomized clique lower bound");
            break;
        }
    }

    Ok(ParameterReport {
        family: FamilyKind::General,
        components,
        chromatic,
        independence,
        clique,
        witnesses,
        assumptions: vec!["generic operator space: searches provide bounds only".into()],
    })
}

pub fn cmd_analyze(
    path: &Path,
    tol: Tolerance,
    budget: &SearchBudget,
    emit_witnesses: Option<&Path>,
) -> CliResult<Outcome> {
    let inst = load_instance(path)?;
    let n = inst.n();
    let report = match inst.abc() {
        Some(p) => bounds_table(p, tol, budget)?,
        None => {
            let graph = inst.to_graph(tol)?;
            generic_report(&graph, tol, budget)?
        }
    };
    let mut witness_files = Vec::new();
    if let Some(dir) = emit_witnesses {
        fs::create_dir_all(dir)
            .map_err(|e| Failure::input(format!("cannot create {}: {e}", dir.display())))?;
        for (param, w) in &report.witnesses {
            let name = format!("{}.json", param_name(*param));
            let path = dir.join(&name);
            fs::write(&path, witness_to_json(n, w).render() + "\n")
                .map_err(|e| Failure::input(format!("cannot write {}: {e}", path.display())))?;
            witness_files.push((*param, name));
        }
    }
    Ok(Outcome::ok(report_to_json(n, &report, &witness_files)))
}

// ---------- strange ----------

pub enum StrangeFormat {
    Dot,
    Json,
}

pub fn cmd_strange(path: &Path, format: StrangeFormat, tol: Tolerance) -> CliResult<Outcome> {
    let inst = load_instance(path)?;
    let p = inst
        .abc()
        .ok_or_else(|| Failure::input("strange graphs are defined for parametric instances"))?;
    let report = p.validate(tol);
    if !report.undirected {
        return Err(Failure::semantic(format!(
            "directed instance has no strange graph: {}",
            report.reasons.join("; ")
        )));
    }
    let sg = p.to_strange_graph(tol)?;
    match format {
        StrangeFormat::Json => {
            let classical = sg
                .classical_edges()
                .map(|(u, v)| JVal::Arr(vec![JVal::Int(u as i64), JVal::Int(v as i64)]))
                .collect();
            let strange = sg
                .strange_edges()
                .map(|((u, v), t)| {
                    JVal::obj(vec![
                        ("u", JVal::Int(u as i64)),
                        ("v", JVal::Int(v as i64)),
                        ("theta", JVal::Float(t)),
                    ])
                })
                .collect();
            Ok(Outcome::ok(JVal::obj(vec![
                ("kind", JVal::Str("strange_graph".into())),
                ("n", JVal::Int(sg.n() as i64)),
                ("classical_edges", JVal::Arr(classical)),
                ("strange_edges", JVal::Arr(strange)),
            ])))
        }
        StrangeFormat::Dot => {
            let mut dot = String::from("graph strange {\n");
            for v in 0..sg.n() {
                dot.push_str(&format!("  {v};\n"));
            }
            for (u, v) in sg.classical_edges() {
                dot.push_str(&format!("  {u} -- {v};\n"));
            }
            for ((u, v), t) in sg.strange_edges() {
                dot.push_str(&format!(
                    "  {u} -- {v} [style=dashed, label=\"\u{03b8}={t:.4}\"];\n"
                ));
            }
            dot.push('}');
            Ok(Outcome::ok(JVal::Str(dot)))
        }
    }
}

// ---------- witness ----------

pub struct ConstructArgs<'a> {
    pub kind: &'a str,
    pub parts: Option<&'a str>,
    pub classes: Option<&'a str>,
    pub subset: Option<&'a str>,
    pub clique: Option<&'a str>,
    pub k: Option<usize>,
    pub seed: u64,
    pub trials: usize,
}

pub fn cmd_witness_construct(
    graph_path: &Path,
    args: &ConstructArgs<'_>,
    tol: Tolerance,
) -> CliResult<Outcome> {
    let inst = load_instance(graph_path)?;
    let n = inst.n();
    let witness: Witness = match args.kind {
        "icpovm" => Witness::Clique(constructions::clique_icpovm(n)?),
        "bipartite" => Witness::Clique(constructions::clique_bipartite(n)?),
        "complete-minus-one" => Witness::Clique(constructions::clique_complete_minus_one(n)?),
        "symasym" => Witness::Clique(constructions::clique_symasym(n)?),
        "classical-clique" | "reflexive-clique" => {
            let clique = parse_index_list(args.clique.ok_or_else(|| {
                Failure::input("--clique is required for classical clique witnesses")
            })?)?;
            let g = classical_from_instance(&inst, tol)?;
            if args.kind == "classical-clique" {
                Witness::Clique(constructions::clique_from_classical(&g, &clique)?)
            } else {
                Witness::Clique(constructions::clique_reflexive_variant(&g, &clique)?)
            }
        }
        "components" => {
            let parts = parse_partition(args.parts.ok_or_else(|| {
                Failure::input("--parts is required for component witnesses")
            })?)?;
            Witness::Components(constructions::components_from_classical(n, &parts)?)
        }
        "strange-components" => {
            let p = inst
                .abc()
                .ok_or_else(|| Failure::input("parametric instance required"))?;
            let comps = p.to_strange_graph(tol)?.components();
            Witness::Components(constructions::components_from_classical(n, &comps)?)
        }
        "gasym2" => {
            if n != 2 {
                return Err(Failure::input("gasym2 requires n = 2"));
            }
            Witness::Components(constructions::gasym_n2_components())
        }
        "pi-matching-lift" => {
            Witness::Components(constructions::strange_pi_matching_witness(n)?)
        }
        "colouring" => {
            let classes = parse_partition(args.classes.ok_or_else(|| {
                Failure::input("--classes is required for colouring witnesses")
            })?)?;
            Witness::Colouring(constructions::colouring_from_classical(n, &classes)?)
        }
        "fourier-colouring" => Witness::Colouring(constructions::fourier_colouring(n)),
        "independent" => {
            let subset = parse_index_list(args.subset.ok_or_else(|| {
                Failure::input("--subset is required for independent-set witnesses")
            })?)?;
            Witness::Independent(constructions::independent_from_classical(n, &subset)?)
        }
        "random-clique" => {
            let k = args
                .k
                .ok_or_else(|| Failure::input("--k is required for random clique search"))?;
            let graph = inst.to_graph(tol)?;
            match random_clique_search(&graph, k, args.trials, args.seed, tol)? {
                Some(w) => Witness::Clique(w),
                None => {
                    return Err(Failure::semantic(format!(
                        "no {k}-clique found in {} trials",
                        args.trials
                    )))
                }
            }
        }
        other => {
            return Err(Failure::input(format!("unknown witness construction '{other}'")));
        }
    };
    Ok(Outcome::ok(witness_to_json(n, &witness)))
}

pub fn cmd_witness_check(
    graph_path: &Path,
    witness_path: &Path,
    tol: Tolerance,
) -> CliResult<Outcome> {
    let inst = load_instance(graph_path)?;
    let (wn, witness) = parse_witness(&read_file(witness_path)?)?;
    if wn != inst.n() {
        return Err(Failure::input(format!(
            "witness is for n = {wn}, graph has n = {}",
            inst.n()
        )));
    }
    let graph = inst.to_graph(tol)?;
    let (kind, accepted) = match &witness {
        Witness::Components(w) => ("components", check_components(&graph, w, tol)?),
        Witness::Colouring(w) => ("colouring", check_colouring(&graph, w, tol)?),
        Witness::Independent(w) => ("independent", check_independent_set(&graph, w, tol)?),
        Witness::Clique(w) => ("clique", check_clique(&graph, w, tol)?),
    };
    let document = JVal::obj(vec![
        ("kind", JVal::Str("witness_check".into())),
        ("witness_kind", JVal::Str(kind.into())),
        ("accepted", JVal::Bool(accepted)),
    ]);
    Ok(Outcome { document, exit: if accepted { 0 } else { 2 } })
}

// ---------- table ----------

pub enum TableFormat {
    Json,
    Markdown,
}

fn estimate_cell(est: &ParamEstimate) -> String {
    match est {
        ParamEstimate::Exact { value, .. } => value.to_string(),
        ParamEstimate::Bounded { lo, hi: Some(hi), .. } => format!("{lo}..{hi}"),
        ParamEstimate::Bounded { lo, hi: None, .. } => format!(">={lo}"),
        ParamEstimate::NotColourable { .. } => "not colourable".into(),
        ParamEstimate::Unknown => "?".into(),
    }
}

pub fn cmd_table(n: usize, format: TableFormat, tol: Tolerance) -> CliResult<Outcome> {
    if !(2..=8).contains(&n) {
        return Err(Failure::input("table supports 2 <= n <= 8"));
    }
    let kinds = [
        CanonicalKind::Empty,
        CanonicalKind::Complete,
        CanonicalKind::Sym,
        CanonicalKind::Asym,
    ];
    let mut rows = Vec::new();
    for kind in kinds {
        let report = canonical_report(kind, n, tol)?;
        let edges = canonical(kind, n)?.build(tol)?.edge_count();
        rows.push((kind, edges, report));
    }
    match format {
        TableFormat::Json => {
            let json_rows = rows
                .iter()
                .map(|(kind, edges, report)| {
                    JVal::obj(vec![
                        ("graph", JVal::Str(kind.as_str().into())),
                        ("edges", JVal::Int(*edges as i64)),
                        ("components", estimate_to_json(&report.components)),
                        ("chromatic", estimate_to_json(&report.chromatic)),
                        ("independence", estimate_to_json(&report.independence)),
                        ("clique", estimate_to_json(&report.clique)),
                        ("family", JVal::Str(family_name(report.family).into())),
                    ])
                })
                .collect();
            Ok(Outcome::ok(JVal::obj(vec![
                ("kind", JVal::Str("table".into())),
                ("n", JVal::Int(n as i64)),
                ("rows", JVal::Arr(json_rows)),
            ])))
        }
        TableFormat::Markdown => {
            let mut md = String::new();
            md.push_str(&format!("Canonical quantum graphs on M_{n}\n\n"));
            md.push_str("| graph | edges | components | chromatic | independence | clique |\n");
            md.push_str("|-------|-------|------------|-----------|--------------|--------|\n");
            for (kind, edges, report) in &rows {
                md.push_str(&format!(
                    "| {} | {} | {} | {} | {} | {} |\n",
                    kind.as_str(),
                    edges,
                    estimate_cell(&report.components),
                    estimate_cell(&report.chromatic),
                    estimate_cell(&report.independence),
                    estimate_cell(&report.clique),
                ));
            }
            Ok(Outcome::ok(JVal::Str(md)))
        }
    }
}

// ---------- shared emit ----------

pub fn emit(outcome: &Outcome, out: Option<&Path>) -> CliResult<i32> {
    let text = match &outcome.document {
        JVal::Str(plain) => plain.clone(),
        doc => doc.render(),
    };
    match out {
        Some(path) => fs::write(path, text + "\n")
            .map_err(|e| Failure::input(format!("cannot write {}: {e}", path.display())))?,
        None => println!("{text}"),
    }
    Ok(outcome.exit)
}

/// Entry point for instance construction shared by the `build` variants:
/// serialize and write, then propagate the exit code.
pub fn finish_build(outcome: CliResult<Outcome>, out: Option<&Path>) -> CliResult<i32> {
    emit(&outcome?, out)
}
