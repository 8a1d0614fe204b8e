//! Batch front end. Every command reads one instance file (or `-` for stdin)
//! and writes one JSON document, or a plain-text rendering with `--pretty`.
//!
//! Exit status: 0 success, 1 a law failed, 2 bad input, 3 instance too large.

use std::ffi::OsString;
use std::io::Read;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use num_traits::One;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::fock::{self, Polynomial, CANON_CAP};
use crate::graphs::{self, BlockGraph};
use crate::laws;
use crate::lincomb::{LinComb, ToJson};
use crate::rational::{fmt_q, parse_q, Q};
use crate::setcomp::{self, SetComposition};
use crate::topology::{self, QuasiPoset};

pub const SCHEMA: &str = "hopfspecies/1";

/// Largest ground size accepted by `check`.
pub const CHECK_CAP: usize = 5;

#[derive(Parser, Debug)]
#[command(name = "hopfspecies", version, about = "Exact computations with set compositions, graphs and finite topologies")]
pub struct Cli {
    /// Human-readable output instead of JSON.
    #[arg(long, global = true)]
    pub pretty: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Chromatic polynomial P_chr_q of a graph.
    Chromatic {
        #[arg(long, default_value = "1", value_parser = rat, allow_hyphen_values = true)]
        q: Q,
        file: PathBuf,
    },
    /// Ehrhart polynomial P_ehr_q of a quasi-poset.
    Ehrhart {
        #[arg(long, default_value = "1", value_parser = rat, allow_hyphen_values = true)]
        q: Q,
        file: PathBuf,
    },
    /// φ_chr_q or φ_ehr_q as a combination of set compositions.
    Phi {
        which: Which,
        #[arg(long, default_value = "1", value_parser = rat, allow_hyphen_values = true)]
        q: Q,
        file: PathBuf,
    },
    /// Block sizes of φ_chr_q (graphs) or φ_ehr_q (quasi-posets), as integer compositions.
    Qsym {
        #[arg(long, default_value = "1", value_parser = rat, allow_hyphen_values = true)]
        q: Q,
        file: PathBuf,
    },
    /// Packed words of φ_chr_q or φ_ehr_q, after relabeling the ground set as 1..n.
    Wqsym {
        #[arg(long, default_value = "1", value_parser = rat, allow_hyphen_values = true)]
        q: Q,
        file: PathBuf,
    },
    /// Internal coproduct δ.
    Delta { file: PathBuf },
    /// The Γ automorphism, or its inverse.
    Gamma {
        #[arg(long)]
        inverse: bool,
        file: PathBuf,
    },
    /// Run the identity suite on every ground set of size at most N.
    Check {
        #[arg(long, default_value_t = 3)]
        max_size: usize,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum Which {
    Chr,
    Ehr,
}

fn rat(s: &str) -> std::result::Result<Q, String> {
    parse_q(s).map_err(|e| e.to_string())
}

#[derive(Clone, Debug)]
pub enum Instance {
    Graph(BlockGraph),
    QuasiPoset(QuasiPoset),
    SetComp(SetComposition),
}

impl Instance {
    pub fn kind(&self) -> &'static str {
        match self {
            Instance::Graph(_) => "graph",
            Instance::QuasiPoset(_) => "quasiposet",
            Instance::SetComp(_) => "setcomp",
        }
    }

    fn size(&self) -> usize {
        match self {
            Instance::Graph(g) => g.blocks().len(),
            Instance::QuasiPoset(t) => t.cl(),
            Instance::SetComp(c) => c.len(),
        }
    }

    fn to_json(&self) -> Value {
        match self {
            Instance::Graph(g) => g.to_json(),
            Instance::QuasiPoset(t) => t.to_json(),
            Instance::SetComp(c) => c.to_json(),
        }
    }
}

/// Detects the encoding from its shape: `blocks` is a graph, `classes` a
/// quasi-poset, a bare array a set composition.
pub fn parse_instance(bytes: &[u8]) -> Result<Instance> {
    let v: Value = serde_json::from_slice(bytes).map_err(|e| Error::Parse(format!("invalid JSON: {e}")))?;
    let inst = match &v {
        Value::Object(o) if o.contains_key("blocks") => Instance::Graph(BlockGraph::from_json(&v)?),
        Value::Object(o) if o.contains_key("classes") => Instance::QuasiPoset(QuasiPoset::from_json(&v)?),
        Value::Array(_) => Instance::SetComp(SetComposition::from_json(&v)?),
        _ => {
            return Err(Error::Parse(
                "expected a graph {\"blocks\",\"edges\"}, a quasi-poset {\"classes\",\"covers\"} or a set composition array"
                    .into(),
            ))
        }
    };
    if inst.size() > CANON_CAP {
        return Err(Error::Capacity(format!(
            "{} has {} blocks or classes, at most {CANON_CAP} supported",
            inst.kind(),
            inst.size()
        )));
    }
    Ok(inst)
}

fn load(path: &PathBuf) -> Result<Instance> {
    let mut bytes = Vec::new();
    if path.as_os_str() == "-" {
        std::io::stdin().read_to_end(&mut bytes).map_err(|e| Error::Parse(format!("stdin: {e}")))?;
    } else {
        bytes = std::fs::read(path).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
    }
    parse_instance(&bytes)
}

fn wrong_kind(cmd: &str, inst: &Instance, want: &str) -> Error {
    Error::Domain(format!("{cmd} expects a {want}, got a {}", inst.kind()))
}

/// Relabels the ground set as `1..n`, numerically when every label is an
/// integer and lexicographically otherwise.
pub fn standardize(c: &SetComposition) -> SetComposition {
    let mut labels: Vec<String> = c.ground().into_iter().collect();
    if labels.iter().all(|l| l.parse::<u64>().is_ok()) {
        labels.sort_by_key(|l| l.parse::<u64>().unwrap());
    }
    let rank = |l: &String| (labels.iter().position(|m| m == l).unwrap() + 1).to_string();
    SetComposition::new(c.blocks().iter().map(|b| b.iter().map(rank).collect()).collect())
        .expect("relabeling keeps blocks disjoint")
}

fn phi_of(inst: &Instance, q: &Q, cmd: &str) -> Result<LinComb<SetComposition>> {
    match inst {
        Instance::Graph(g) => Ok(graphs::phi_chr_q(g, q)),
        Instance::QuasiPoset(t) => Ok(topology::phi_ehr_q(t, q)),
        Instance::SetComp(c) if q.is_one() => Ok(LinComb::basis(c.clone())),
        Instance::SetComp(_) => Err(Error::Domain(format!("{cmd}: --q applies to graphs and quasi-posets only"))),
    }
}

/// Output of one command: the JSON document and its plain-text rendering.
pub struct Output {
    pub doc: Value,
    pub text: String,
    pub status: i32,
}

fn doc(command: &str, body: Value) -> Value {
    let mut d = json!({ "schema": SCHEMA, "command": command });
    if let (Value::Object(m), Value::Object(b)) = (&mut d, body) {
        m.extend(b);
    }
    d
}

fn render_pairs<A: std::fmt::Display + Ord + Clone, B: std::fmt::Display + Ord + Clone>(x: &LinComb<(A, B)>) -> String {
    if x.is_empty() {
        return "0".into();
    }
    x.iter()
        .map(|((a, b), c)| if c.is_one() { format!("{a} ⊗ {b}") } else { format!("{} {a} ⊗ {b}", fmt_q(c)) })
        .collect::<Vec<_>>()
        .join("\n")
}

fn poly_output(cmd: &str, inst: &Instance, q: &Q, p: Polynomial) -> Output {
    Output {
        doc: doc(cmd, json!({ "q": fmt_q(q), "input": inst.to_json(), "polynomial": p.to_json() })),
        text: p.to_string(),
        status: 0,
    }
}

/// Runs one parsed command.
pub fn execute(cmd: &Command) -> Result<Output> {
    match cmd {
        Command::Chromatic { q, file } => match load(file)? {
            Instance::Graph(g) => Ok(poly_output("chromatic", &Instance::Graph(g.clone()), q, fock::chromatic_polynomial(&g, q))),
            other => Err(wrong_kind("chromatic", &other, "graph")),
        },
        Command::Ehrhart { q, file } => match load(file)? {
            Instance::QuasiPoset(t) => {
                Ok(poly_output("ehrhart", &Instance::QuasiPoset(t.clone()), q, fock::ehrhart_polynomial(&t, q)))
            }
            other => Err(wrong_kind("ehrhart", &other, "quasi-poset")),
        },
        Command::Phi { which, q, file } => {
            let inst = load(file)?;
            let r = match (which, &inst) {
                (Which::Chr, Instance::Graph(g)) => graphs::phi_chr_q(g, q),
                (Which::Ehr, Instance::QuasiPoset(t)) => topology::phi_ehr_q(t, q),
                (Which::Chr, _) => return Err(wrong_kind("phi chr", &inst, "graph")),
                (Which::Ehr, _) => return Err(wrong_kind("phi ehr", &inst, "quasi-poset")),
            };
            let name = match which {
                Which::Chr => "chr",
                Which::Ehr => "ehr",
            };
            Ok(Output {
                doc: doc("phi", json!({ "which": name, "q": fmt_q(q), "input": inst.to_json(), "result": r.to_json() })),
                text: r.to_string(),
                status: 0,
            })
        }
        Command::Qsym { q, file } => {
            let inst = load(file)?;
            let r = fock::khat_encode_lc(&phi_of(&inst, q, "qsym")?);
            Ok(Output {
                doc: doc("qsym", json!({ "q": fmt_q(q), "input": inst.to_json(), "result": r.to_json() })),
                text: r.to_string(),
                status: 0,
            })
        }
        Command::Wqsym { q, file } => {
            let inst = load(file)?;
            let std = phi_of(&inst, q, "wqsym")?.map_keys(standardize);
            let r = fock::k_encode_lc(&std)?;
            Ok(Output {
                doc: doc("wqsym", json!({ "q": fmt_q(q), "input": inst.to_json(), "result": r.to_json() })),
                text: r.to_string(),
                status: 0,
            })
        }
        Command::Delta { file } => {
            let inst = load(file)?;
            let (json, text) = match &inst {
                Instance::Graph(g) => {
                    let d = graphs::internal_delta(g);
                    (d.to_json(), render_pairs(&d))
                }
                Instance::QuasiPoset(t) => {
                    let d = topology::internal_delta(t);
                    (d.to_json(), render_pairs(&d))
                }
                Instance::SetComp(c) => {
                    let d = setcomp::internal_delta(c);
                    (d.to_json(), render_pairs(&d))
                }
            };
            Ok(Output {
                doc: doc("delta", json!({ "kind": inst.kind(), "input": inst.to_json(), "result": json })),
                text,
                status: 0,
            })
        }
        Command::Gamma { inverse, file } => {
            let inst = load(file)?;
            let (json, text) = match &inst {
                Instance::Graph(g) => {
                    let r = if *inverse { graphs::gamma_inv(g) } else { graphs::gamma(g) };
                    (r.to_json(), r.to_string())
                }
                Instance::QuasiPoset(t) => {
                    let r = if *inverse { topology::gamma_top_inv(t) } else { topology::gamma_top(t) };
                    (r.to_json(), r.to_string())
                }
                Instance::SetComp(_) => return Err(wrong_kind("gamma", &inst, "graph or quasi-poset")),
            };
            Ok(Output {
                doc: doc("gamma", json!({ "inverse": inverse, "input": inst.to_json(), "result": json })),
                text,
                status: 0,
            })
        }
        Command::Check { max_size } => {
            if *max_size > CHECK_CAP {
                return Err(Error::Capacity(format!("--max-size {max_size}, at most {CHECK_CAP} supported")));
            }
            Ok(check(*max_size))
        }
    }
}

fn check(max: usize) -> Output {
    let reports = laws::run_all(max);
    let passed = reports.iter().all(|r| r.passed());
    let laws: Vec<Value> = reports
        .iter()
        .map(|r| {
            let mut v = json!({
                "name": r.name,
                "passed": r.passed(),
                "checked": r.checked,
                "elapsed_ms": r.elapsed_ms as u64,
            });
            if let Some(f) = &r.failure {
                v["counterexample"] = json!(f);
            }
            v
        })
        .collect();
    let mut text: Vec<String> = reports
        .iter()
        .map(|r| {
            let head = format!("{} {} ({} instances, {} ms)", if r.passed() { "PASS" } else { "FAIL" }, r.name, r.checked, r.elapsed_ms);
            match &r.failure {
                Some(f) => format!("{head}\n    {f}"),
                None => head,
            }
        })
        .collect();
    let failed = reports.iter().filter(|r| !r.passed()).count();
    text.push(format!("{} laws, {failed} failed", reports.len()));
    Output {
        doc: doc("check", json!({ "max_size": max, "passed": passed, "laws": laws })),
        text: text.join("\n"),
        status: if passed { 0 } else { 1 },
    }
}

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Capacity(_) => 3,
        _ => 2,
    }
}

/// Parses `args`, runs the command and prints the result. Returns the exit status.
pub fn main_with<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    match execute(&cli.command) {
        Ok(out) => {
            if cli.pretty {
                println!("{}", out.text);
            } else {
                println!("{}", out.doc);
            }
            out.status
        }
        Err(e) => {
            eprintln!("error: {e}");
            exit_code(&e)
        }
    }
}
