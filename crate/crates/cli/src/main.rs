use std::fmt::Write as _;
use std::io::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use borel_core::{
    all_deformations, analyze, deformation_graph, find_segment_order, flatness_report, incidence_graph, to_deformation,
    to_dot, to_json, BorelIdeal, DeformGraph, Deformation, Error, HilbertPolynomial, TermOrder, DEFAULT_SUBSET_CAP,
};
use clap::{Parser, Subcommand, ValueEnum};
use num::BigRational;
use num::One;

/// Borel-fixed ideals on Hilbert schemes of projective space.
#[derive(Parser)]
#[command(name = "borel", version)]
struct Cli {
    /// Write the result to this file instead of standard output.
    #[arg(long, global = true)]
    output: Option<PathBuf>,
    /// Print JSON instead of text (graph commands use --out).
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// List the Borel-fixed ideals with Hilbert polynomial HP in P^N.
    Enumerate {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        hp: HilbertPolynomial,
    },
    /// The deformation of an ideal for a term order, or `endpoint`.
    Deform {
        #[arg(long)]
        ideal: String,
        /// deglex | degrevlex | weights=w0,w1,...,wn
        #[arg(long, default_value = "deglex")]
        order: TermOrder,
        /// Ambient dimension, if larger than the highest variable index.
        #[arg(long)]
        n: Option<usize>,
    },
    /// Every ideal reachable from an ideal by one deformation.
    DeformAll {
        #[arg(long)]
        ideal: String,
        #[arg(long)]
        n: Option<usize>,
    },
    /// Deformation graph of a Hilbert scheme for a term order.
    Graph {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        hp: HilbertPolynomial,
        #[arg(long, default_value = "deglex")]
        order: TermOrder,
        #[arg(long, value_enum, default_value_t = Format::Summary)]
        out: Format,
    },
    /// Incidence graph of a Hilbert scheme, with composed deformations.
    Incidence {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        hp: HilbertPolynomial,
        /// Largest number of deformations composed at once.
        #[arg(long, default_value_t = DEFAULT_SUBSET_CAP)]
        cap: usize,
        #[arg(long, value_enum, default_value_t = Format::Summary)]
        out: Format,
    },
    /// Weights of a matrix order for which the ideal is a segment, or `infeasible`.
    Segment {
        #[arg(long)]
        ideal: String,
        #[arg(long)]
        n: Option<usize>,
    },
    /// Checks flatness of every deformation of an ideal by exact rank.
    VerifyFlat {
        #[arg(long)]
        ideal: String,
        #[arg(long)]
        n: Option<usize>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Dot,
    Json,
    Summary,
}

fn json<T: serde::Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("serialization cannot fail") + "\n"
}

fn describe(d: &Deformation) -> String {
    let family: Vec<String> = d.family.compositions.iter().map(ToString::to_string).collect();
    let mut out = String::new();
    let _ = writeln!(out, "source: {}", d.source.saturate());
    let _ = writeln!(out, "target: {}", d.target.saturate());
    let _ = writeln!(out, "stratum: {}", d.stratum);
    let _ = writeln!(out, "alpha: {}", d.alpha);
    let _ = writeln!(out, "beta: {}", d.beta);
    let _ = writeln!(out, "family: {}", family.join(", "));
    out
}

fn summary(g: &DeformGraph) -> String {
    let a = analyze(g);
    let show = |v: Option<usize>| v.map_or("none".to_string(), |v| v.to_string());
    let mut out = String::new();
    let _ = writeln!(out, "vertices: {}", g.vertices.len());
    for v in &g.vertices {
        let _ = writeln!(out, "  {} {}", v.index, v.label);
    }
    let _ = writeln!(out, "edges: {}", g.edges.len());
    let arrow = if g.directed { "->" } else { "--" };
    for e in &g.edges {
        let kind = serde_json::to_value(e.kind).expect("edge kind serializes");
        let _ = writeln!(
            out,
            "  {} {arrow} {} {}",
            e.source,
            e.target,
            kind.as_str().unwrap_or_default()
        );
    }
    let endpoints: Vec<String> = a.endpoints.iter().map(ToString::to_string).collect();
    if g.directed {
        let _ = writeln!(out, "endpoints: {}", endpoints.join(" "));
    }
    let _ = writeln!(out, "components: {}", a.components);
    let _ = writeln!(out, "tree: {}", a.is_tree);
    let _ = writeln!(out, "root: {}", show(a.root));
    let _ = writeln!(out, "height: {}", show(a.height));
    out
}

fn render(g: &DeformGraph, format: Format) -> String {
    match format {
        Format::Dot => to_dot(g),
        Format::Json => to_json(g) + "\n",
        Format::Summary => summary(g),
    }
}

fn run(cli: &Cli) -> borel_core::Result<String> {
    let parse = |text: &str, n: Option<usize>| BorelIdeal::parse(text, n);
    Ok(match &cli.command {
        Command::Enumerate { n, hp } => {
            let sets = borel_core::enumerate_ideals(*n, hp)?;
            let ideals: Vec<BorelIdeal> = sets.iter().map(|b| b.saturate()).collect();
            if cli.json {
                let records = ideals
                    .iter()
                    .map(BorelIdeal::record)
                    .collect::<borel_core::Result<Vec<_>>>()?;
                json(&records)
            } else {
                ideals.iter().map(|i| format!("{i}\n")).collect()
            }
        }
        Command::Deform { ideal, order, n } => {
            let ideal = parse(ideal, *n)?;
            match to_deformation(ideal.stratum(), order)? {
                None if cli.json => json(&"endpoint"),
                None => "endpoint\n".to_string(),
                Some(d) if cli.json => json(&d.record()),
                Some(d) => describe(&d),
            }
        }
        Command::DeformAll { ideal, n } => {
            let ideal = parse(ideal, *n)?;
            let defs = all_deformations(ideal.stratum())?;
            if cli.json {
                json(&defs.iter().map(Deformation::record).collect::<Vec<_>>())
            } else {
                let mut out = format!("deformations: {}\n", defs.len());
                for d in &defs {
                    out.push('\n');
                    out += &describe(d);
                }
                out
            }
        }
        Command::Graph { n, hp, order, out } => render(&deformation_graph(*n, hp, order)?, *out),
        Command::Incidence { n, hp, cap, out } => {
            if *cap < 2 {
                return Err(Error::InvalidArgument(format!("cap must be at least 2, got {cap}")));
            }
            render(&incidence_graph(*n, hp, *cap)?, *out)
        }
        Command::Segment { ideal, n } => {
            let ideal = parse(ideal, *n)?;
            match find_segment_order(ideal.stratum())? {
                None if cli.json => json(&"infeasible"),
                None => "infeasible\n".to_string(),
                Some(cert) if cli.json => json(&cert),
                Some(cert) => {
                    let order = cert.order()?;
                    let TermOrder::WeightMatrix(weights) = &order else {
                        unreachable!("certificates define weight orders")
                    };
                    let shown: Vec<String> = cert.weights.iter().map(ToString::to_string).collect();
                    let mut out = format!("omega = [{}]\n", shown.join(", "));
                    for row in weights.matrix() {
                        let row: Vec<String> = row.iter().map(ToString::to_string).collect();
                        let _ = writeln!(out, "  {}", row.join(" "));
                    }
                    let _ = writeln!(out, "verified: {}", cert.verified);
                    out
                }
            }
        }
        Command::VerifyFlat { ideal, n } => {
            let ideal = parse(ideal, *n)?;
            let defs = all_deformations(ideal.stratum())?;
            let mut out = String::new();
            let mut records = Vec::new();
            for d in &defs {
                let report = flatness_report(d, &BigRational::one())?;
                if !report.is_flat() {
                    return Err(Error::Invariant(format!(
                        "deformation to {} is not flat: expected {}, got {}/{}/{}",
                        d.target.saturate(),
                        report.expected,
                        report.source,
                        report.target,
                        report.mixed
                    )));
                }
                let _ = writeln!(out, "{} flat (dimension {})", d.target.saturate(), report.expected);
                let mut record = d.record();
                record.flat = Some(true);
                records.push(record);
            }
            if cli.json {
                json(&records)
            } else {
                format!("deformations: {}\n{out}", defs.len())
            }
        }
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let text = match run(&cli) {
        Ok(text) => text,
        Err(e) => {
            eprintln!("error: {e}");
            return match e {
                Error::Invariant(_) => ExitCode::from(3),
                _ => ExitCode::from(2),
            };
        }
    };
    let written = match &cli.output {
        Some(path) => std::fs::write(path, text),
        None => std::io::stdout().lock().write_all(text.as_bytes()),
    };
    match written {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
