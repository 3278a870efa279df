// Licensed under the Apache License, Version 2.0 (the "License"); you may
// not use this file except in compliance with the License. You may obtain
// a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS, WITHOUT
// WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied. See the
// License for the specific language governing permissions and limitations
// under the License.

//! `amalgam` command-line tool.
//!
//! Exit codes: 0 ok, 1 verification failure, 2 precondition violation,
//! 3 infeasible parameters, 4 malformed input.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use amalgam::document::{DecompositionDocument, Document, GraphDocument, TraceDocument};
use amalgam::export::to_dot;
use amalgam::gen::{random_detachment_instance, rng_for, InstanceLimits};
use amalgam::verify::is_gdd;
use amalgam::{
    detach_all, gdd_feasible, ham_decompose_gdd, ham_decompose_lambda_kn, verify_detachment,
    verify_ham_decomposition, ColoredMultigraph, Error, Feasibility, GddParams, HamDecomposition,
};

#[derive(Parser)]
#[command(name = "amalgam", version, about = "Fair multigraph detachments and Hamiltonian decompositions")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Detach every vertex of a graph document into η copies.
    Detach {
        input: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
        /// Write the step trace here.
        #[arg(long)]
        trace: Option<PathBuf>,
        /// Also write the detached graph as DOT.
        #[arg(long)]
        dot: Option<PathBuf>,
    },
    /// Hamiltonian decomposition of λK_n or of a complete multipartite multigraph.
    Ham {
        #[command(flatten)]
        params: HamArgs,
        #[arg(short, long)]
        output: Option<PathBuf>,
        #[arg(long)]
        dot: Option<PathBuf>,
    },
    /// Verify a detachment (amalgamated document, then detached document) or
    /// a decomposition document.
    Verify {
        first: PathBuf,
        second: Option<PathBuf>,
    },
    /// Detach and verify random instances.
    Fuzz {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 500)]
        count: u64,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        /// Write each instance and its detachment here.
        #[arg(long)]
        out_dir: Option<PathBuf>,
    },
    /// Convert a document to DOT.
    Export {
        input: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

#[derive(Args)]
struct HamArgs {
    /// λK_n: number of vertices.
    #[arg(long, conflicts_with_all = ["parts", "size", "sizes"], requires = "lambda")]
    n: Option<usize>,
    #[arg(long)]
    lambda: Option<u64>,
    /// Number of equal parts (with --size).
    #[arg(long, requires = "size")]
    parts: Option<usize>,
    #[arg(long)]
    size: Option<u64>,
    /// Comma-separated part sizes.
    #[arg(long, value_delimiter = ',', conflicts_with_all = ["parts", "size"])]
    sizes: Option<Vec<u64>>,
    #[arg(long, default_value_t = 0)]
    l1: u64,
    #[arg(long, default_value_t = 0)]
    l2: u64,
}

/// A failure with its exit code.
struct Failure {
    code: u8,
    message: String,
}

type CmdResult = Result<(), Failure>;

fn failure(code: u8, message: impl Into<String>) -> Failure {
    Failure {
        code,
        message: message.into(),
    }
}

fn from_engine(e: Error) -> Failure {
    let code = match e {
        Error::EtaGuard { .. } | Error::EtaTooSmall { .. } | Error::EtaZero(_) => 2,
        Error::Infeasible(_) => 3,
        Error::InvalidArgument(_) => 2,
        Error::Structural(_) => 4,
        _ => 1,
    };
    failure(code, e.to_string())
}

fn read_doc(path: &Path) -> Result<Document, Failure> {
    let text = fs::read_to_string(path)
        .map_err(|e| failure(4, format!("cannot read {}: {e}", path.display())))?;
    Document::parse(&text).map_err(|e| failure(4, format!("{}: {e}", path.display())))
}

fn graph_doc(path: &Path) -> Result<GraphDocument, Failure> {
    match read_doc(path)? {
        Document::Graph(g) => Ok(g),
        _ => Err(failure(4, format!("{} is not a graph document", path.display()))),
    }
}

fn write_out(path: Option<&Path>, text: &str) -> CmdResult {
    match path {
        Some(p) => fs::write(p, text).map_err(|e| failure(4, format!("cannot write {}: {e}", p.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn malformed(e: impl std::fmt::Display) -> Failure {
    failure(4, e.to_string())
}

fn cmd_detach(input: &Path, output: Option<&Path>, trace: Option<&Path>, dot: Option<&Path>) -> CmdResult {
    let doc = graph_doc(input)?;
    let h = doc.to_colored().map_err(malformed)?;
    let Some(records) = &doc.eta else {
        return Err(failure(2, "the document carries no amalgamation numbers (eta)"));
    };
    if let Some(r) = records.iter().find(|r| r.eta == 0) {
        return Err(from_engine(Error::EtaZero(amalgam::VertexId(r.v))));
    }
    let eta = doc.eta_spec().map_err(malformed)?.expect("eta present");
    let d = detach_all(&h, &eta).map_err(from_engine)?;
    let out = Document::Graph(GraphDocument::from_colored(&d.graph, None, Some(&d.map)));
    write_out(output, &out.to_text())?;
    if let Some(t) = trace {
        write_out(Some(t), &Document::Trace(TraceDocument::new(&d.trace)).to_text())?;
    }
    if let Some(p) = dot {
        write_out(Some(p), &to_dot(&d.graph))?;
    }
    Ok(())
}

fn ham_params(a: &HamArgs) -> Result<Option<GddParams>, Failure> {
    if a.n.is_some() {
        return Ok(None);
    }
    let sizes = match (&a.sizes, a.parts, a.size) {
        (Some(s), _, _) => s.clone(),
        (None, Some(p), Some(size)) => vec![size; p],
        _ => return Err(failure(2, "give --n and --lambda, --parts and --size, or --sizes")),
    };
    GddParams::new(sizes, a.l1, a.l2).map(Some).map_err(from_engine)
}

fn cmd_ham(args: &HamArgs, output: Option<&Path>, dot: Option<&Path>) -> CmdResult {
    let (d, doc) = match ham_params(args)? {
        None => {
            let (n, lambda) = (args.n.expect("checked"), args.lambda.expect("required by clap"));
            let d = ham_decompose_lambda_kn(n, lambda).map_err(from_engine)?;
            let doc = DecompositionDocument::new(&d, None, None);
            (d, doc)
        }
        Some(params) => {
            if let Feasibility::Infeasible(i) = gdd_feasible(&params) {
                return Err(failure(3, format!("infeasible: {i}")));
            }
            let (d, parts) = ham_decompose_gdd(&params).map_err(from_engine)?;
            let doc = DecompositionDocument::new(&d, Some(&params), Some(&parts));
            (d, doc)
        }
    };
    write_out(output, &Document::Decomposition(doc).to_text())?;
    if let Some(p) = dot {
        write_out(Some(p), &to_dot(&cycles_as_colors(&d)))?;
    }
    Ok(())
}

fn cycles_as_colors(d: &HamDecomposition) -> ColoredMultigraph {
    let n = d.host.vertex_count();
    let mut cg = ColoredMultigraph::new(n, d.cycles.len().max(1));
    for (j, c) in d.cycles.iter().enumerate() {
        for i in 0..c.len() {
            cg.layer_mut(j).add_edges(c[i], c[(i + 1) % c.len()], 1);
        }
    }
    cg
}

fn cmd_verify(first: &Path, second: Option<&Path>) -> CmdResult {
    match (read_doc(first)?, second) {
        (Document::Decomposition(doc), None) => {
            let d = doc.decomposition().map_err(malformed)?;
            verify_ham_decomposition(&d.host, &d).map_err(|w| failure(1, format!("cycles FAIL {w}")))?;
            println!("cycles        ok ({} spanning cycles)", d.cycles.len());
            if let Some((params, parts)) = doc.gdd().map_err(malformed)? {
                if !is_gdd(&d.host, &params, &parts) {
                    return Err(failure(1, "multipartite FAIL host does not match the parameters"));
                }
                println!("multipartite  ok");
                if let Feasibility::Feasible { k } = gdd_feasible(&params) {
                    if k != d.cycles.len() as u64 {
                        return Err(failure(1, format!("count FAIL {} cycles, expected {k}", d.cycles.len())));
                    }
                }
            }
            Ok(())
        }
        (Document::Graph(hdoc), Some(second)) => {
            let gdoc = graph_doc(second)?;
            let h = hdoc.to_colored().map_err(malformed)?;
            let g = gdoc.to_colored().map_err(malformed)?;
            let eta = hdoc
                .eta_spec()
                .map_err(malformed)?
                .ok_or_else(|| failure(4, format!("{} carries no eta", first.display())))?;
            let psi = gdoc
                .detachment_map(h.vertex_count())
                .map_err(malformed)?
                .ok_or_else(|| failure(4, format!("{} carries no psi", second.display())))?;
            let report = verify_detachment(&h, &eta, &psi, &g).map_err(|e| failure(4, e.to_string()))?;
            print!("{report}");
            match report.first_failure() {
                None => Ok(()),
                Some(w) => Err(failure(1, format!("first failure: {w}"))),
            }
        }
        (Document::Graph(_), None) => Err(failure(4, "a detachment needs two documents: amalgamated, then detached")),
        _ => Err(failure(4, "unsupported document combination")),
    }
}

fn cmd_fuzz(seed: u64, count: u64, jobs: usize, out_dir: Option<&Path>) -> CmdResult {
    let limits = InstanceLimits::default();
    let jobs = jobs.max(1);
    let run_one = |i: u64| -> (String, String, Option<String>) {
        let (h, eta) = random_detachment_instance(&mut rng_for(seed, i), &limits);
        let input = Document::Graph(GraphDocument::from_colored(&h, Some(&eta), None)).to_text();
        let outcome = detach_all(&h, &eta).map_err(|e| e.to_string()).and_then(|d| {
            let report = verify_detachment(&h, &eta, &d.map, &d.graph).map_err(|e| e.to_string())?;
            match report.first_failure() {
                Some(w) => Err(w.to_string()),
                None => Ok(Document::Graph(GraphDocument::from_colored(&d.graph, None, Some(&d.map))).to_text()),
            }
        });
        match outcome {
            Ok(out) => (input, out, None),
            Err(e) => (input, String::new(), Some(e)),
        }
    };
    let mut results: Vec<(u64, (String, String, Option<String>))> = std::thread::scope(|s| {
        let handles: Vec<_> = (0..jobs as u64)
            .map(|t| {
                let run_one = &run_one;
                s.spawn(move || {
                    (t..count)
                        .step_by(jobs)
                        .map(|i| (i, run_one(i)))
                        .collect::<Vec<_>>()
                })
            })
            .collect();
        handles
            .into_iter()
            .flat_map(|h| h.join().expect("fuzz worker panicked"))
            .collect()
    });
    results.sort_by_key(|r| r.0);

    if let Some(dir) = out_dir {
        fs::create_dir_all(dir).map_err(|e| failure(4, format!("cannot create {}: {e}", dir.display())))?;
        for (i, (input, out, _)) in &results {
            write_out(Some(&dir.join(format!("instance-{i:05}.json"))), input)?;
            if !out.is_empty() {
                write_out(Some(&dir.join(format!("detached-{i:05}.json"))), out)?;
            }
        }
    }
    let failures: Vec<_> = results.iter().filter_map(|(i, r)| r.2.as_ref().map(|e| (i, e))).collect();
    println!("fuzz: seed {seed}, {count} instances, {} failure(s)", failures.len());
    match failures.first() {
        None => Ok(()),
        Some((i, e)) => Err(failure(1, format!("instance {i}: {e}"))),
    }
}

fn cmd_export(input: &Path, output: Option<&Path>) -> CmdResult {
    let dot = match read_doc(input)? {
        Document::Graph(g) => to_dot(&g.to_colored().map_err(malformed)?),
        Document::Decomposition(d) => to_dot(&cycles_as_colors(&d.decomposition().map_err(malformed)?)),
        Document::Trace(_) => return Err(failure(4, "trace documents have no graph to export")),
    };
    write_out(output, &dot)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Detach { input, output, trace, dot } => {
            cmd_detach(input, output.as_deref(), trace.as_deref(), dot.as_deref())
        }
        Command::Ham { params, output, dot } => cmd_ham(params, output.as_deref(), dot.as_deref()),
        Command::Verify { first, second } => cmd_verify(first, second.as_deref()),
        Command::Fuzz { seed, count, jobs, out_dir } => cmd_fuzz(*seed, *count, *jobs, out_dir.as_deref()),
        Command::Export { input, output } => cmd_export(input, output.as_deref()),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("amalgam: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
