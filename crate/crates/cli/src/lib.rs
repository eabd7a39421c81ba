//! Command-line front end: argument parsing, file handling and reports.
//!
//! [`run`] never exits the process; it returns the exit code together with the
//! text destined for stdout and stderr so that every verb can be tested in-process.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use lagrel::diagram::axioms::check_all;
use lagrel::diagram::lov::{f64_unitarity_defects, lov_relation_exact, lov_symplectic_exact, lov_symplectic_f64, lov_to_diagram, LovCircuit};
use lagrel::diagram::protocols::{demo_teleportation, import_graph_state};
use lagrel::diagram::render::{to_dot, to_tikz};
use lagrel::diagram::synth::synthesize_normal_form;
use lagrel::io::{json_error, parse_rational, parse_rmatrix};
use lagrel::lagrangian::is_symplectic;
use lagrel::{interpret, interpret_gaa, Calculus, Diagram, Error, LagRel, Matrix, RelationRecord, C};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FALSE: i32 = 1;
pub const EXIT_ERROR: i32 = 2;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Backend {
    Exact,
    Float,
}

impl Backend {
    /// Reads the `LAGREL_BACKEND` value; unset means exact.
    pub fn from_env_value(v: Option<&str>) -> Result<Self, Error> {
        match v.map(str::trim) {
            None | Some("") | Some("exact") => Ok(Backend::Exact),
            Some("float") => Ok(Backend::Float),
            Some(other) => Err(Error::Parse(format!("LAGREL_BACKEND must be exact or float, got {other}"))),
        }
    }
}

#[derive(Debug, Default, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

#[derive(Parser, Debug)]
#[command(name = "lagrel", version, about = "Exact affine Lagrangian relations and Gaussian diagrams")]
struct Cli {
    #[command(subcommand)]
    verb: Verb,
}

#[derive(Args, Debug)]
struct CalcArg {
    /// One of gaa, gsa, gga, gqga.
    #[arg(long, default_value = "gqga")]
    calculus: String,
}

#[derive(Subcommand, Debug)]
enum Verb {
    /// Interpret a diagram and print its canonical relation record.
    Interpret {
        file: PathBuf,
        #[command(flatten)]
        calc: CalcArg,
        /// Also write the record to this path.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Print the canonical AP form of a diagram or relation.
    Canon {
        file: PathBuf,
        #[command(flatten)]
        calc: CalcArg,
    },
    /// Decide semantic equality of two diagrams or relations.
    Eq {
        left: PathBuf,
        right: PathBuf,
        #[command(flatten)]
        calc: CalcArg,
    },
    /// Check fragment membership and the semantic property of the calculus.
    Check {
        file: PathBuf,
        #[command(flatten)]
        calc: CalcArg,
    },
    /// Run the axiom soundness suite.
    Axioms {
        /// A calculus name or `all`.
        #[arg(long, default_value = "all")]
        calculus: String,
        #[arg(long, default_value_t = 5)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Build the diagram of the graph state with phase matrix U + iV.
    ImportGraph {
        /// Real symmetric matrix literal such as `0,1;1,0`.
        #[arg(long, allow_hyphen_values = true)]
        u: String,
        /// Real symmetric positive definite matrix literal.
        #[arg(long, allow_hyphen_values = true)]
        v: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Interpret a linear-optical circuit.
    Lov {
        file: PathBuf,
        /// Write the qumode diagram to this path (exact backend only).
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run continuous-variable teleportation and print the channel.
    DemoTeleport {
        #[arg(long, default_value = "0")]
        epsilon: String,
        /// Measured position difference.
        #[arg(long, default_value = "0", allow_hyphen_values = true)]
        a: String,
        /// Measured momentum sum.
        #[arg(long, default_value = "0", allow_hyphen_values = true)]
        b: String,
    },
    /// Render a diagram for Graphviz or TikZ.
    Export {
        file: PathBuf,
        #[arg(long, conflicts_with = "tikz", required_unless_present = "tikz")]
        dot: bool,
        #[arg(long)]
        tikz: bool,
        /// Output path; defaults to the input with a `.dot` or `.tex` extension.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

/// Runs with the backend taken from the `LAGREL_BACKEND` environment variable.
pub fn run<I, S>(argv: I) -> Outcome
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let env = std::env::var("LAGREL_BACKEND").ok();
    run_with(argv, env.as_deref())
}

/// Runs with an explicit `LAGREL_BACKEND` value.
pub fn run_with<I, S>(argv: I, backend: Option<&str>) -> Outcome
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                Outcome { code: EXIT_ERROR, stderr: text, ..Default::default() }
            } else {
                Outcome { code: EXIT_OK, stdout: text, ..Default::default() }
            };
        }
    };
    let result = Backend::from_env_value(backend).map_err(Failure::from).and_then(|b| dispatch(cli.verb, b));
    match result {
        Ok((code, stdout)) => Outcome { code, stdout, stderr: String::new() },
        Err(f) => Outcome { code: EXIT_ERROR, stdout: String::new(), stderr: format!("error: {f}\n") },
    }
}

#[derive(Debug)]
enum Failure {
    Core(Error),
    Io(PathBuf, std::io::Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Core(e)
    }
}

impl std::fmt::Display for Failure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Failure::Core(e) => write!(f, "{e}"),
            Failure::Io(p, e) => write!(f, "IoError: {}: {e}", p.display()),
        }
    }
}

type Report = Result<(i32, String), Failure>;

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Io(path.to_path_buf(), e))
}

fn write(path: &Path, text: &str) -> Result<(), Failure> {
    fs::write(path, text).map_err(|e| Failure::Io(path.to_path_buf(), e))
}

fn in_file(path: &Path, e: Error) -> Failure {
    match e {
        Error::Parse(m) => Failure::Core(Error::Parse(format!("{}: {m}", path.display()))),
        other => Failure::Core(other),
    }
}

fn exact_only(backend: Backend, verb: &str) -> Result<(), Failure> {
    match backend {
        Backend::Exact => Ok(()),
        Backend::Float => Err(Error::BackendMismatch(format!("{verb} is an exact decision procedure")).into()),
    }
}

enum Input {
    Diagram(Diagram),
    Relation(LagRel),
}

fn is_relation_file(path: &Path) -> bool {
    path.file_name().and_then(|n| n.to_str()).is_some_and(|n| n.ends_with(".relation.json"))
}

fn load(path: &Path) -> Result<Input, Failure> {
    let text = read(path)?;
    if is_relation_file(path) {
        let rec = RelationRecord::from_json(&text).map_err(|e| in_file(path, e))?;
        Ok(Input::Relation(rec.to_relation()?))
    } else {
        Ok(Input::Diagram(Diagram::from_json(&text).map_err(|e| in_file(path, e))?))
    }
}

fn semantics(input: Input, calculus: Calculus) -> Result<LagRel, Failure> {
    match input {
        Input::Relation(r) => Ok(r),
        Input::Diagram(d) => Ok(interpret(&d, calculus)?),
    }
}

fn calculus(s: &str) -> Result<Calculus, Failure> {
    Ok(Calculus::parse(s)?)
}

/// Canonical text of a relation: the AP form of its name, or `empty`.
fn canonical(rel: &LagRel) -> Result<String, Failure> {
    if rel.is_empty() {
        return Ok("empty".into());
    }
    Ok(rel.name().ap_form()?.to_string())
}

/// The augmented generator matrix `[S | a]`, one constraint per line.
fn generator_matrix(rel: &LagRel) -> String {
    let mut s = String::new();
    let (n, m) = (rel.n_in(), rel.n_out());
    let _ = writeln!(s, "{n} -> {m}, columns z_in({n}) x_in({n}) z_out({m}) x_out({m}) | rhs");
    match rel.relation().system() {
        None => s.push_str("empty\n"),
        Some((mat, rhs)) => {
            let cells: Vec<Vec<String>> = mat.row_vecs().iter().map(|r| r.iter().map(|x| x.to_string()).collect()).collect();
            let width = cells.iter().flatten().map(|c| c.len()).max().unwrap_or(1);
            for (row, a) in cells.iter().zip(rhs) {
                let body: Vec<String> = row.iter().map(|c| format!("{c:>width$}")).collect();
                let _ = writeln!(s, "[ {} | {a} ]", body.join(" "));
            }
        }
    }
    s
}

fn dispatch(verb: Verb, backend: Backend) -> Report {
    match verb {
        Verb::Interpret { file, calc, out } => {
            exact_only(backend, "interpret")?;
            let calc = calculus(&calc.calculus)?;
            let input = load(&file)?;
            if calc == Calculus::Gaa {
                let Input::Diagram(d) = input else {
                    return Err(Error::BackendMismatch("the affine reading needs a diagram".into()).into());
                };
                return Ok((EXIT_OK, format!("{}\n", interpret_gaa(&d)?)));
            }
            let rec = RelationRecord::of(&semantics(input, calc)?).to_json();
            if let Some(out) = out {
                write(&out, &rec)?;
            }
            Ok((EXIT_OK, rec))
        }
        Verb::Canon { file, calc } => {
            exact_only(backend, "canon")?;
            let rel = semantics(load(&file)?, calculus(&calc.calculus)?)?;
            Ok((EXIT_OK, format!("{}\n{}", canonical(&rel)?, generator_matrix(&rel))))
        }
        Verb::Eq { left, right, calc } => {
            exact_only(backend, "eq")?;
            let calc = calculus(&calc.calculus)?;
            let (l, r) = (semantics(load(&left)?, calc)?, semantics(load(&right)?, calc)?);
            let verdict = if l == r { "EQUAL" } else { "DISTINCT" };
            let text = format!("{verdict}\nleft:  {}\nright: {}\n", canonical(&l)?, canonical(&r)?);
            Ok((if l == r { EXIT_OK } else { EXIT_FALSE }, text))
        }
        Verb::Check { file, calc } => {
            exact_only(backend, "check")?;
            let calc = calculus(&calc.calculus)?;
            let input = load(&file)?;
            let mut text = String::new();
            let mut ok = true;
            if let Input::Diagram(d) = &input {
                let frag = d.check_fragment(calc);
                ok &= frag.is_ok();
                let _ = writeln!(text, "fragment {}: {}", calc.name(), frag.map(|_| "yes".to_string()).unwrap_or_else(|e| format!("no ({e})")));
                if !ok {
                    return Ok((EXIT_FALSE, text));
                }
            }
            let rel = semantics(input, calc)?;
            let (property, holds) = match calc {
                Calculus::Gaa => ("real", rel.has_real_point() || rel.is_empty()),
                Calculus::Gsa => ("lagrangian", true),
                Calculus::Gga => ("quasi-real", rel.is_quasi_real()?),
                Calculus::Gqga => ("positive", rel.is_positive()?),
            };
            ok &= holds;
            let _ = writeln!(text, "{property}: {}", if holds { "yes" } else { "no" });
            Ok((if ok { EXIT_OK } else { EXIT_FALSE }, text))
        }
        Verb::Axioms { calculus: which, samples, seed } => {
            exact_only(backend, "axioms")?;
            let calcs = if which == "all" { Calculus::all().to_vec() } else { vec![calculus(&which)?] };
            let mut text = String::new();
            let mut failures = 0;
            let _ = writeln!(text, "{:<6} {:<36} {:>7}  result", "calc", "axiom", "samples");
            for c in calcs {
                for r in check_all(c, samples, seed)? {
                    let res = match &r.counterexample {
                        None => "PASS".to_string(),
                        Some(p) => {
                            failures += 1;
                            format!("FAIL {p:?}")
                        }
                    };
                    let _ = writeln!(text, "{:<6} {:<36} {:>7}  {res}", c.name(), r.name, r.samples);
                }
            }
            let _ = writeln!(text, "{failures} failing");
            Ok((if failures == 0 { EXIT_OK } else { EXIT_FALSE }, text))
        }
        Verb::ImportGraph { u, v, out } => {
            exact_only(backend, "import-graph")?;
            let d = import_graph_state(&parse_rmatrix(&u)?, &parse_rmatrix(&v)?)?;
            let json = d.to_json();
            if let Some(out) = out {
                write(&out, &json)?;
            }
            Ok((EXIT_OK, json))
        }
        Verb::Lov { file, out } => {
            let text = read(&file)?;
            let circuit: LovCircuit = serde_json::from_str(&text).map_err(|e| in_file(&file, json_error(e)))?;
            match backend {
                Backend::Exact => lov_exact(&circuit, out.as_deref()),
                Backend::Float => {
                    if out.is_some() {
                        return Err(Error::BackendMismatch("diagrams need exact angles".into()).into());
                    }
                    let s = lov_symplectic_f64(&circuit)?;
                    let (sym, orth) = f64_unitarity_defects(&s);
                    let mut r = String::from("symplectic matrix (float)\n");
                    for row in &s {
                        let cells: Vec<String> = row.iter().map(|x| format!("{x:>10.6}")).collect();
                        let _ = writeln!(r, "[ {} ]", cells.join(" "));
                    }
                    let _ = writeln!(r, "max |S^T Omega S - Omega| = {sym:.3e}\nmax |S^T S - I| = {orth:.3e}");
                    Ok((EXIT_OK, r))
                }
            }
        }
        Verb::DemoTeleport { epsilon, a, b } => {
            exact_only(backend, "demo-teleport")?;
            let (eps, a, b) = (parse_rational(&epsilon)?, parse_rational(&a)?, parse_rational(&b)?);
            let t = demo_teleportation(&eps, &a, &b)?;
            let mut text = format!("teleportation channel, epsilon = {epsilon}, outcome a = {a}, b = {b}\n");
            text.push_str(&generator_matrix(&t.channel));
            let _ = writeln!(text, "identity: {}", if t.channel == LagRel::identity(1) { "yes" } else { "no" });
            let _ = writeln!(text, "diagram path equals direct path: {}", if t.channel == t.direct { "yes" } else { "no" });
            if t.channel != t.direct {
                return Err(Error::InternalDisagreement("diagram and relational teleportation differ".into()).into());
            }
            Ok((EXIT_OK, text))
        }
        Verb::Export { file, dot, tikz: _, out } => {
            let d = match load(&file)? {
                Input::Diagram(d) => d,
                Input::Relation(r) => synthesize_normal_form(&r, Calculus::Gqga)?,
            };
            d.validate()?;
            let (body, ext) = if dot { (to_dot(&d), "dot") } else { (to_tikz(&d), "tex") };
            let target = out.unwrap_or_else(|| default_render_path(&file, ext));
            write(&target, &body)?;
            Ok((EXIT_OK, format!("wrote {}\n", target.display())))
        }
    }
}

fn default_render_path(input: &Path, ext: &str) -> PathBuf {
    let name = input.file_name().and_then(|n| n.to_str()).unwrap_or("diagram");
    let stem = name.strip_suffix(".diagram.json").or_else(|| name.strip_suffix(".relation.json")).or_else(|| name.strip_suffix(".json")).unwrap_or(name);
    input.with_file_name(format!("{stem}.{ext}"))
}

fn lov_exact(circuit: &LovCircuit, out: Option<&Path>) -> Report {
    let s: Matrix<C> = lov_symplectic_exact(circuit)?;
    let rel = lov_relation_exact(circuit)?;
    let d = lov_to_diagram(circuit)?;
    let via_diagram = interpret(&d, Calculus::Gqga)?;
    if via_diagram != rel {
        return Err(Error::InternalDisagreement("LOv diagram and matrix semantics differ".into()).into());
    }
    let orthogonal = s.transpose().mul(&s)? == Matrix::identity(s.rows());
    let mut text = String::from("symplectic matrix (exact)\n");
    for row in s.row_vecs() {
        let cells: Vec<String> = row.iter().map(|x| x.to_string()).collect();
        let _ = writeln!(text, "[ {} ]", cells.join(" "));
    }
    let _ = writeln!(text, "symplectic: {}", if is_symplectic(&s) { "yes" } else { "no" });
    let _ = writeln!(text, "orthogonal: {}", if orthogonal { "yes" } else { "no" });
    if let Some(out) = out {
        write(out, &d.to_json())?;
    }
    Ok((EXIT_OK, text))
}
