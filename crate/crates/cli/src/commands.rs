use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use knotzeta::alexander::{
    alexander_minor, alexander_polynomial, alexander_polynomial_divided, knot_determinant,
};
use knotzeta::arborescence::{enumerate_arborescences, tree_polynomial};
use knotzeta::arc_graph::{alexander_spec, ArcGraph};
use knotzeta::corpus::{self, CorpusEntry};
use knotzeta::knot_model::{parse_pd, wirtinger, ArcId, KnotDiagram, Tangle};
use knotzeta::laurent::{
    canonical_json, canonicalize, int_coeff_map, parse_rational, QPoly, Quotient,
};
use knotzeta::twisted::{
    dihedral_rep, fox_colorings, twisted_alexander_polynomial, verify_representation,
    Representation, RepresentationJson,
};
use knotzeta::verify::{
    render_reports, run_suite, zeta_check, Status, Suite, VerifyOptions, ZetaCheck, ZetaParams,
};
use knotzeta::Error;

/// Exact Alexander and twisted Alexander invariants of knot diagrams.
///
/// A diagram argument is a file path, a built-in corpus name such as
/// `trefoil`, or an inline crossing list such as "X+ 3 1 2 / X+ 1 2 3 / X+ 2 3 1".
#[derive(Debug, Parser)]
#[command(name = "knotzeta", version)]
pub struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum ConventionArg {
    Minor,
    /// The minor divided by `t - 1`.
    #[value(name = "eq10")]
    DividedByTMinusOne,
}

#[derive(Debug, Subcommand)]
enum Cmd {
    /// Canonical Alexander polynomial and determinant.
    Alexander {
        diagram: String,
        /// Arc whose row and column are deleted (default: the last arc).
        #[arg(long)]
        cut: Option<usize>,
        #[arg(long, value_enum, default_value = "minor")]
        convention: ConventionArg,
        /// Also report the removed unit and the arc count.
        #[arg(long)]
        json: bool,
    },
    /// Knot determinant `|Delta(-1)|`.
    Det {
        diagram: String,
        /// Also count arborescences rooted at this arc (signed sum).
        #[arg(long)]
        root: Option<usize>,
        #[arg(long)]
        json: bool,
    },
    /// Twisted Alexander polynomial as a reduced fraction over a prime field.
    Twisted {
        diagram: String,
        /// Representation file (JSON).
        #[arg(long, conflicts_with = "dihedral")]
        rep: Option<PathBuf>,
        /// Dihedral representation from a nonconstant Fox p-coloring.
        #[arg(long)]
        dihedral: Option<u64>,
        /// Deleted block column (default: first admissible).
        #[arg(long)]
        cut: Option<usize>,
        /// Also print the representation used.
        #[arg(long)]
        json: bool,
    },
    /// Arborescence sum of the arc graph with Alexander weights.
    TreePoly {
        diagram: String,
        /// Root arc of the uncut graph (default 1).
        #[arg(long, conflicts_with = "cut")]
        root: Option<usize>,
        /// Comma-separated arcs to cut; roots become all endpoint halves.
        #[arg(long, value_delimiter = ',')]
        cut: Option<Vec<usize>>,
        /// Also dump every arborescence as an edge list.
        #[arg(long)]
        json: bool,
    },
    /// One zeta-function identity on one diagram.
    Zeta {
        diagram: String,
        /// Second factor for `--check composition` (default: the same diagram).
        other: Option<String>,
        #[arg(long)]
        check: String,
        #[arg(long)]
        cut: Option<usize>,
        #[arg(long = "max-len")]
        max_len: Option<usize>,
        #[arg(long = "t")]
        t: Option<String>,
        #[arg(long = "n")]
        n: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        json: bool,
    },
    /// Run a verification suite over the corpus plus any given diagrams.
    Verify {
        /// matrix-tree, triple, zeta, path-sum, composition, cable, twisted or all.
        suite: String,
        diagrams: Vec<String>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long = "max-len")]
        max_len: Option<usize>,
        #[arg(long = "t")]
        t: Option<String>,
        #[arg(long = "n")]
        n: Option<usize>,
        /// One JSON report per line instead of PASS/FAIL lines.
        #[arg(long)]
        json: bool,
    },
}

/// A failed command: the error object and its exit code.
#[derive(Debug)]
pub struct Failure {
    kind: &'static str,
    message: String,
    code: u8,
}

impl Failure {
    pub fn usage(message: &str) -> Self {
        Failure {
            kind: "usage",
            message: message.to_string(),
            code: 2,
        }
    }

    pub fn exit_code(&self) -> u8 {
        self.code
    }

    /// One line of JSON on standard error.
    pub fn report(&self) {
        let line = json!({ "error": { "kind": self.kind, "message": self.message } });
        let _ = writeln!(std::io::stderr(), "{line}");
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let kind = match &e {
            Error::Syntax { .. } => "syntax",
            Error::EmptyDiagram => "empty_diagram",
            Error::ArcNumbering(_) => "arc_numbering",
            Error::DanglingArc(_) => "dangling_arc",
            Error::NonClosedComponent(_) => "non_closed_component",
            Error::UnknownArc(_) => "unknown_arc",
            Error::DuplicateEdge { .. } => "duplicate_edge",
            Error::Dimension(_) => "dimension",
            Error::DivisionByZero => "division_by_zero",
            Error::NotPrime(_) => "not_prime",
            Error::Precondition(_) => "precondition",
            Error::EnumerationCap(_) => "enumeration_cap",
            Error::NotARepresentation(_) => "not_a_representation",
            Error::Io(_) => "io",
            Error::Internal(_) => "internal",
        };
        let code = if matches!(e, Error::Internal(_)) {
            3
        } else {
            2
        };
        Failure {
            kind,
            message: e.to_string(),
            code,
        }
    }
}

type CmdResult<T> = std::result::Result<T, Failure>;

fn print(v: &Value) {
    println!("{v}");
}

fn looks_inline(s: &str) -> bool {
    let t = s.trim_start();
    t.starts_with('X') || t.starts_with("O ") || t.contains('/') && t.contains(' ')
}

/// Resolves a diagram argument: existing file, corpus name, or inline text.
fn load(arg: &str) -> CmdResult<(String, KnotDiagram)> {
    let path = Path::new(arg);
    if path.is_file() {
        let text = std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{arg}: {e}")))?;
        let name = path
            .file_name()
            .map_or(arg.to_string(), |n| n.to_string_lossy().into_owned());
        return Ok((name, parse_pd(&text)?));
    }
    if let Some(e) = corpus::lookup(arg)? {
        return Ok((e.name, e.diagram));
    }
    if looks_inline(arg) {
        return Ok((arg.to_string(), parse_pd(arg)?));
    }
    Err(Error::Io(format!("{arg}: no such file or corpus entry")).into())
}

fn arc(d: &KnotDiagram, a: usize) -> CmdResult<ArcId> {
    if a == 0 || a > d.n_arcs() {
        return Err(Error::UnknownArc(a).into());
    }
    Ok(ArcId(a))
}

fn rational(s: &Option<String>) -> CmdResult<Option<num_rational::BigRational>> {
    s.as_deref()
        .map(parse_rational)
        .transpose()
        .map_err(Failure::from)
}

pub fn run(cli: Cli) -> CmdResult<u8> {
    match cli.cmd {
        Cmd::Alexander {
            diagram,
            cut,
            convention,
            json,
        } => {
            let (_, d) = load(&diagram)?;
            let det = knot_determinant(&d)?;
            let out = match convention {
                ConventionArg::Minor => {
                    let delta = match cut {
                        None => alexander_polynomial(&d)?,
                        Some(a) => {
                            let a = arc(&d, a)?;
                            if !d.is_knot() {
                                return Err(Error::Precondition(
                                    "Alexander polynomial needs a single-component diagram".into(),
                                )
                                .into());
                            }
                            canonicalize(&alexander_minor(&d, a, a)?, ())
                        }
                    };
                    if json {
                        json!({ "poly": int_coeff_map(&delta.poly), "det": det, "unit": canonical_json(&delta)["unit"], "arcs": d.n_arcs() })
                    } else {
                        json!({ "poly": int_coeff_map(&delta.poly), "det": det })
                    }
                }
                ConventionArg::DividedByTMinusOne => {
                    let q = alexander_polynomial_divided(&d)?;
                    let (num, den): (QPoly, QPoly) = q.parts(());
                    json!({
                        "num": int_coeff_map(&num),
                        "den": int_coeff_map(&den),
                        "exact": matches!(q, Quotient::Exact(_)),
                        "det": det,
                    })
                }
            };
            print(&out);
            Ok(0)
        }
        Cmd::Det {
            diagram,
            root,
            json: _,
        } => {
            let (_, d) = load(&diagram)?;
            let det = knot_determinant(&d)?;
            match root {
                None => print(&json!({ "det": det })),
                Some(r) => {
                    let signed = knotzeta::arborescence::determinant_via_trees(&d, arc(&d, r)?)?;
                    if signed.unsigned_abs() != det {
                        return Err(Error::Internal(format!(
                            "arborescence count {signed} disagrees with determinant {det}"
                        ))
                        .into());
                    }
                    print(&json!({ "det": det, "trees": signed }));
                }
            }
            Ok(0)
        }
        Cmd::Twisted {
            diagram,
            rep,
            dihedral,
            cut,
            json,
        } => {
            let (_, d) = load(&diagram)?;
            let rho = match (rep, dihedral) {
                (Some(path), _) => {
                    let text = std::fs::read_to_string(&path)
                        .map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
                    let j: RepresentationJson = serde_json::from_str(&text)
                        .map_err(|e| Error::Precondition(format!("representation JSON: {e}")))?;
                    let rho = Representation::from_json(&j, d.n_arcs())?;
                    verify_representation(&wirtinger(&d), &rho)?;
                    rho
                }
                (None, Some(p)) => {
                    let c = fox_colorings(&d, p)?.nonconstant().ok_or_else(|| {
                        Error::Precondition(format!(
                            "no nonconstant {p}-coloring: {p} does not divide the determinant"
                        ))
                    })?;
                    dihedral_rep(&d, p, &c)?
                }
                (None, None) => {
                    return Err(Failure::usage(
                        "twisted needs --rep <file> or --dihedral <p>",
                    ))
                }
            };
            let k = cut.map(|a| arc(&d, a)).transpose()?;
            let tw = twisted_alexander_polynomial(&d, &rho, k)?;
            let (num, den) = tw.canonical();
            let mut out = json!({
                "field": rho.field().modulus(),
                "dim": rho.dim(),
                "column": tw.column.0,
                "num": canonical_json(&num),
                "den": canonical_json(&den),
                "exact": tw.quotient.is_polynomial(),
            });
            if json {
                out["rep"] = serde_json::to_value(rho.to_json()).expect("serializable");
            }
            print(&out);
            Ok(0)
        }
        Cmd::TreePoly {
            diagram,
            root,
            cut,
            json,
        } => {
            let (_, d) = load(&diagram)?;
            let spec = alexander_spec();
            let (g, roots, label) = match cut {
                Some(arcs) => {
                    let arcs: Vec<ArcId> =
                        arcs.iter().map(|&a| arc(&d, a)).collect::<CmdResult<_>>()?;
                    let t = Tangle::cut(&d, &arcs)?;
                    let roots: Vec<usize> = t.endpoints().iter().map(|a| a.index()).collect();
                    (ArcGraph::build(&t)?, roots, "cut")
                }
                None => {
                    let r = arc(&d, root.unwrap_or(1))?;
                    (ArcGraph::from_diagram(&d)?, vec![r.index()], "root")
                }
            };
            let poly = tree_polynomial(&g, &spec, &roots)?;
            let trees = enumerate_arborescences(&g, &roots)?;
            let mut out = json!({
                "roots": roots.iter().map(|r| r + 1).collect::<Vec<_>>(),
                "mode": label,
                "poly": int_coeff_map(&poly),
                "count": trees.len(),
            });
            if json {
                out["trees"] = trees
                    .iter()
                    .map(|t| {
                        t.edges
                            .iter()
                            .map(|e| json!([e.from + 1, e.to + 1, e.label.to_string()]))
                            .collect()
                    })
                    .collect::<Vec<Value>>()
                    .into();
            }
            print(&out);
            Ok(0)
        }
        Cmd::Zeta {
            diagram,
            other,
            check,
            cut,
            max_len,
            t,
            n,
            seed,
            json: _,
        } => {
            let check: ZetaCheck = check.parse()?;
            let (_, d) = load(&diagram)?;
            let other = other.as_deref().map(load).transpose()?.map(|(_, d)| d);
            let params = ZetaParams {
                cut: cut.map(ArcId),
                max_len,
                t: rational(&t)?,
                n,
                seed,
            };
            let report = zeta_check(check, &d, other.as_ref(), &params)?;
            print(&serde_json::to_value(&report).expect("serializable"));
            Ok(if report.status == Status::Fail { 3 } else { 0 })
        }
        Cmd::Verify {
            suite,
            diagrams,
            seed,
            max_len,
            t,
            n,
            json,
        } => {
            let suite: Suite = suite.parse()?;
            let mut entries: Vec<CorpusEntry> = corpus::corpus()?;
            for arg in &diagrams {
                let (name, d) = load(arg)?;
                if !entries.iter().any(|e| e.name == name && e.diagram == d) {
                    entries.push(CorpusEntry { name, diagram: d });
                }
            }
            let mut opts = VerifyOptions {
                seed,
                t: rational(&t)?,
                n,
                ..VerifyOptions::default()
            };
            if let Some(m) = max_len {
                opts.max_len = m;
            }
            let start = Instant::now();
            let reports = run_suite(suite, &entries, &opts);
            let elapsed = start.elapsed();
            if json {
                print!("{}", render_reports(&reports));
            } else {
                for r in &reports {
                    let tag = match r.status {
                        Status::Pass => "PASS",
                        Status::Fail => "FAIL",
                        Status::Skipped => "SKIP",
                    };
                    match &r.reason {
                        Some(why) => println!("{tag} {} ({why})", r.check),
                        None => println!("{tag} {}", r.check),
                    }
                }
            }
            let count = |s: Status| reports.iter().filter(|r| r.status == s).count();
            let _ = writeln!(
                std::io::stderr(),
                "{} checks: {} pass, {} fail, {} skipped in {:.2}s",
                reports.len(),
                count(Status::Pass),
                count(Status::Fail),
                count(Status::Skipped),
                elapsed.as_secs_f64()
            );
            Ok(if count(Status::Fail) == 0 { 0 } else { 3 })
        }
    }
}
