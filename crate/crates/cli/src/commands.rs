use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::io::Read;
use std::path::{Path, PathBuf};

use serde::Serialize;

use curvegraph::chains::{
    associated_bdc_of, bdc_as_graph, is_model_of, make_example_gprime, make_figure1, make_mirror_model,
    make_ollivier_matching_chain, make_unweighted_chain, BirthDeathChain,
};
use curvegraph::comparison::{
    asymptotic_constant, stronger_average_growth, stronger_curvature_growth, stronger_outside_finite,
    volume_comparison, GrowthRelation, TheoremReport,
};
use curvegraph::curvature::{bdc_sphere_curvature, ollivier_pair, ollivier_pair_at, sphere_curvatures, CurvatureProfile, OllivierResult};
use curvegraph::io::{self, Document};
use curvegraph::rational::{self, Rational};
use curvegraph::spheres::RootedDecomposition;
use curvegraph::{Error, VertexId, WeightedGraph};

use crate::{Command, CompareArgs, Example, Format, GenArgs};

pub struct Output {
    pub text: String,
    /// `false` makes the process exit with status 1 after printing.
    pub success: bool,
}

impl Output {
    fn ok(text: String) -> Self {
        Output { text, success: true }
    }
}

pub enum Failure {
    Usage(String),
    Domain { kind: String, message: String },
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Domain { kind: e.kind().to_string(), message: e.to_string() }
    }
}

type Result<T> = std::result::Result<T, Failure>;

pub fn run(command: Command) -> Result<Output> {
    match command {
        Command::Validate { file } => {
            let input = Input::read(file.as_deref())?;
            Ok(Output::ok(io::document_to_json(&input.document()?) + "\n"))
        }
        Command::Curvature { file, root, radius } => curvature(&Input::read(file.as_deref())?.graph()?, &root, radius),
        Command::Ollivier { file, pair, all_adjacent } => {
            ollivier(&Input::read(file.as_deref())?.graph()?, pair, all_adjacent)
        }
        Command::SphereCurv { file, root } => sphere_curv(&Input::read(file.as_deref())?.graph()?, &root),
        Command::Bdc { file, root } => {
            let g = Input::read(file.as_deref())?.graph()?;
            let d = RootedDecomposition::new(&g, &root)?;
            Ok(Output::ok(io::chain_to_json(&associated_bdc_of(&g, &d)) + "\n"))
        }
        Command::Gen(args) => generate(args),
        Command::Compare(args) => compare(args),
        Command::Verify { seed, instances } => {
            let suite = curvegraph::verify::run_suite(seed, instances as usize);
            Ok(Output { text: suite.render(), success: suite.passed() })
        }
    }
}

struct Input {
    name: String,
    text: String,
}

impl Input {
    fn read(path: Option<&Path>) -> Result<Self> {
        match path {
            None => Self::stdin(),
            Some(p) if p == Path::new("-") => Self::stdin(),
            Some(p) => {
                let name = p.display().to_string();
                let text = std::fs::read_to_string(p)
                    .map_err(|e| Failure::Domain { kind: "Io".into(), message: format!("{name}: {e}") })?;
                Ok(Input { name, text })
            }
        }
    }

    fn stdin() -> Result<Self> {
        let mut text = String::new();
        std::io::stdin()
            .read_to_string(&mut text)
            .map_err(|e| Failure::Domain { kind: "Io".into(), message: format!("<stdin>: {e}") })?;
        Ok(Input { name: "<stdin>".into(), text })
    }

    fn document(&self) -> Result<Document> {
        io::parse_document(&self.text).map_err(|e| Failure::Domain {
            kind: e.kind().to_string(),
            message: format!("{}: {e}", self.name),
        })
    }

    /// Chains are read as path graphs rooted at `0`.
    fn graph(&self) -> Result<WeightedGraph> {
        Ok(match self.document()? {
            Document::Graph(g) => g,
            Document::Chain(c) => bdc_as_graph(&c),
        })
    }
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

fn opt(r: Option<&Rational>) -> String {
    r.map(rational::fmt).unwrap_or_default()
}

fn curvature(g: &WeightedGraph, root: &str, radius: Option<usize>) -> Result<Output> {
    let d = RootedDecomposition::new(g, root)?;
    if let Some(r) = radius {
        d.check_radius(r)?;
    }
    let profile = CurvatureProfile::new(g, &d);
    let mut out = String::from("r,vertex,k_minus,k_plus,avg_minus,avg_plus,m_Sr\n");
    for v in profile.vertices.iter().filter(|v| radius.is_none_or(|r| r == v.radius)) {
        let at = &profile.radii[v.radius];
        let _ = writeln!(
            out,
            "{},{},{},{},{},{},{}",
            v.radius,
            csv_field(v.vertex.as_str()),
            rational::fmt(&v.k_minus),
            opt(v.k_plus.as_ref()),
            rational::fmt(&at.avg_k_minus),
            opt(at.avg_k_plus.as_ref()),
            rational::fmt(&at.sphere_volume),
        );
    }
    Ok(Output::ok(out))
}

#[derive(Serialize)]
struct PairOut<'a> {
    x: &'a VertexId,
    y: &'a VertexId,
    distance: usize,
    value: String,
    witness: BTreeMap<&'a VertexId, String>,
}

impl<'a> From<&'a OllivierResult> for PairOut<'a> {
    fn from(r: &'a OllivierResult) -> Self {
        PairOut {
            x: &r.x,
            y: &r.y,
            distance: r.distance,
            value: rational::fmt(&r.value),
            witness: r.witness.iter().map(|(k, v)| (k, format!("{v}/1"))).collect(),
        }
    }
}

fn ollivier(g: &WeightedGraph, pair: Option<(String, String)>, all_adjacent: bool) -> Result<Output> {
    let json = if all_adjacent {
        let results = g.edges().map(|(i, j, _)| ollivier_pair_at(g, i, j)).collect::<curvegraph::Result<Vec<_>>>()?;
        let out: Vec<PairOut> = results.iter().map(PairOut::from).collect();
        serde_json::to_string_pretty(&out)
    } else {
        let (x, y) = pair.expect("clap requires --pair without --all-adjacent");
        let result = ollivier_pair(g, &x, &y)?;
        serde_json::to_string_pretty(&PairOut::from(&result))
    };
    Ok(Output::ok(json.expect("serializable") + "\n"))
}

fn sphere_curv(g: &WeightedGraph, root: &str) -> Result<Output> {
    let d = RootedDecomposition::new(g, root)?;
    let chain = associated_bdc_of(g, &d);
    let ks = sphere_curvatures(g, &d, d.horizon())?;
    let mut out = String::from("r,k,k_assoc\n");
    for (idx, k) in ks.iter().enumerate() {
        let r = idx + 1;
        let assoc = if r < chain.horizon() { Some(bdc_sphere_curvature(&chain, r)?) } else { None };
        let _ = writeln!(out, "{r},{},{}", rational::fmt(k), opt(assoc.as_ref()));
    }
    Ok(Output::ok(out))
}

fn require<T>(value: Option<T>, flag: &str, example: &str) -> Result<T> {
    value.ok_or_else(|| Failure::Usage(format!("`gen {example}` needs {flag}")))
}

fn reject(present: bool, flag: &str, example: &str) -> Result<()> {
    if present {
        Err(Failure::Usage(format!("{flag} does not apply to `gen {example}`")))
    } else {
        Ok(())
    }
}

fn horizon(n: Option<usize>, example: &str) -> Result<usize> {
    match require(n, "--n", example)? {
        0 => Err(Failure::Usage(format!("`gen {example}` needs --n of at least 1"))),
        n => Ok(n),
    }
}

fn generate(args: GenArgs) -> Result<Output> {
    let GenArgs { example, n, of, seq } = args;
    let text = match example {
        Example::Chain | Example::Gprime => {
            let name = if matches!(example, Example::Chain) { "chain" } else { "gprime" };
            reject(of.is_some(), "--of", name)?;
            reject(seq.is_some(), "--seq", name)?;
            let n = horizon(n, name)?;
            let chain = if matches!(example, Example::Chain) { make_unweighted_chain(n) } else { make_example_gprime(n) };
            io::chain_to_json(&chain)
        }
        Example::Figure1 => {
            reject(n.is_some(), "--n", "figure1")?;
            reject(of.is_some(), "--of", "figure1")?;
            reject(seq.is_some(), "--seq", "figure1")?;
            io::graph_to_json(&make_figure1())
        }
        Example::Mirror => {
            reject(seq.is_some(), "--seq", "mirror")?;
            let source = mirror_source(&require(of, "--of", "mirror")?, n)?;
            io::graph_to_json(&make_mirror_model(&source))
        }
        Example::OllivierMatch => {
            reject(n.is_some(), "--n", "ollivier-match")?;
            reject(of.is_some(), "--of", "ollivier-match")?;
            let seq = require(seq, "--seq", "ollivier-match")?;
            let a = seq.split(',').map(|s| rational::parse(s.trim())).collect::<curvegraph::Result<Vec<_>>>()?;
            io::chain_to_json(&make_ollivier_matching_chain(&a)?)
        }
    };
    Ok(Output::ok(text + "\n"))
}

fn mirror_source(of: &str, n: Option<usize>) -> Result<BirthDeathChain> {
    match of {
        "chain" => Ok(make_unweighted_chain(horizon(n, "mirror --of chain")?)),
        "gprime" => Ok(make_example_gprime(horizon(n, "mirror --of gprime")?)),
        path => {
            reject(n.is_some(), "--n", "mirror --of <file>")?;
            let input = Input::read(Some(Path::new(path)))?;
            match input.document()? {
                Document::Chain(c) => Ok(c),
                Document::Graph(_) => Err(Failure::Domain {
                    kind: "InvalidChain".into(),
                    message: format!("{path}: mirror needs a chain file, got a graph"),
                }),
            }
        }
    }
}

#[derive(Serialize)]
struct ConstantOut {
    #[serde(rename = "C", skip_serializing_if = "Option::is_none")]
    c: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    report: Option<TheoremReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    skipped: Option<String>,
}

#[derive(Serialize)]
struct Orientation {
    first: String,
    second: String,
    second_is_model: bool,
    stronger_curvature: GrowthRelation,
    stronger_average: GrowthRelation,
    #[serde(skip_serializing_if = "Option::is_none")]
    outside_finite: Option<GrowthRelation>,
    volume: TheoremReport,
    #[serde(skip_serializing_if = "Option::is_none")]
    constant: Option<ConstantOut>,
}

#[derive(Serialize)]
struct CompareOut {
    forward: Orientation,
    reverse: Orientation,
}

struct Rooted<'a> {
    name: &'a str,
    graph: &'a WeightedGraph,
    root: &'a str,
}

fn orient(first: &Rooted, second: &Rooted, outside: Option<usize>, constant: bool) -> Result<Orientation> {
    let d2 = RootedDecomposition::new(second.graph, second.root)?;
    let model = associated_bdc_of(second.graph, &d2);
    let outside_finite =
        outside.map(|r| stronger_outside_finite(first.graph, first.root, second.graph, second.root, r)).transpose()?;
    let constant = match (&outside_finite, outside) {
        (Some(rel), Some(r)) if constant => Some(if rel.holds {
            let (c, report) = asymptotic_constant(first.graph, first.root, second.graph, second.root, r)?;
            ConstantOut { c: Some(rational::fmt(&c)), report: Some(report), skipped: None }
        } else {
            ConstantOut { c: None, report: None, skipped: Some("outside-finite relation fails".into()) }
        }),
        _ => None,
    };
    Ok(Orientation {
        first: first.name.to_string(),
        second: second.name.to_string(),
        second_is_model: is_model_of(second.graph, &d2).is_model,
        stronger_curvature: stronger_curvature_growth(first.graph, first.root, &model)?,
        stronger_average: stronger_average_growth(first.graph, first.root, second.graph, second.root)?,
        outside_finite,
        volume: volume_comparison(first.graph, first.root, second.graph, second.root)?,
        constant,
    })
}

fn compare(args: CompareArgs) -> Result<Output> {
    let CompareArgs { files, against, root1, root2, outside, constant, format } = args;
    let (first, second): (Option<PathBuf>, PathBuf) = match (files.len(), against) {
        (0, Some(b)) => (None, b),
        (1, Some(b)) => (Some(files[0].clone()), b),
        (2, None) => (Some(files[0].clone()), files[1].clone()),
        (_, Some(_)) => return Err(Failure::Usage("--against takes the place of the second file".into())),
        (_, None) => return Err(Failure::Usage("compare needs two inputs (a second file or --against)".into())),
    };
    let is_stdin = |p: Option<&Path>| p.is_none_or(|p| p == Path::new("-"));
    if is_stdin(first.as_deref()) && is_stdin(Some(&second)) {
        return Err(Failure::Usage("only one input can come from standard input".into()));
    }
    let (in1, in2) = (Input::read(first.as_deref())?, Input::read(Some(&second))?);
    let (g1, g2) = (in1.graph()?, in2.graph()?);
    let a = Rooted { name: &in1.name, graph: &g1, root: &root1 };
    let b = Rooted { name: &in2.name, graph: &g2, root: &root2 };
    let outside = outside.map(|r| r as usize);
    let out = CompareOut { forward: orient(&a, &b, outside, constant)?, reverse: orient(&b, &a, outside, constant)? };
    let text = match format {
        Format::Json => serde_json::to_string_pretty(&out).expect("serializable") + "\n",
        Format::Text => render_compare(&out),
    };
    Ok(Output::ok(text))
}

fn verdict(rel: &GrowthRelation) -> String {
    match &rel.first_violation {
        None => format!("holds on radii {}..={}", rel.range.from, rel.range.to),
        Some(v) => format!("fails, {v}"),
    }
}

fn render_compare(out: &CompareOut) -> String {
    let mut s = String::new();
    for (label, o) in [("forward", &out.forward), ("reverse", &out.reverse)] {
        let _ = writeln!(s, "{label}: {} against {}", o.first, o.second);
        let _ = writeln!(s, "  second is a model: {}", o.second_is_model);
        let _ = writeln!(s, "  stronger curvature growth: {}", verdict(&o.stronger_curvature));
        let _ = writeln!(s, "  stronger average curvature growth: {}", verdict(&o.stronger_average));
        if let Some(rel) = &o.outside_finite {
            let _ = writeln!(s, "  outside the finite set (R={}): {}", rel.threshold, verdict(rel));
        }
        for line in o.volume.to_string().lines() {
            let _ = writeln!(s, "  {line}");
        }
        match &o.constant {
            Some(ConstantOut { c: Some(c), .. }) => {
                let _ = writeln!(s, "  C = {c}");
            }
            Some(ConstantOut { skipped: Some(why), .. }) => {
                let _ = writeln!(s, "  C not computed: {why}");
            }
            _ => {}
        }
    }
    s
}
