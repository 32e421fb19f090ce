use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use simplichrom::chromatic::{chi_polynomial, verify_identity_part1, verify_identity_part2};
use simplichrom::graph::{anti_ramsey_count, ramsey_probe, ForbiddenFamily, ForbiddenPattern, Graph, DEFAULT_BUDGET};
use simplichrom::hodge::{
    delta_entries, hodge_dims_from_delta, primitive_sum_rule, verify_compressed_chain,
    verify_lattice_coh,
};
use simplichrom::polytope::{
    check_boundary_triangulation, check_full_triangulation, count_points, delta_vector, ehrhart_polynomial,
    is_compressed, is_unimodular, polar_dual, verify_hstar_eq_h, verify_reciprocity,
};
use simplichrom::{LatticePolytope, PropertyIWitness, Region, SimplicialComplex, Triangulation};

mod suite;

#[derive(Parser)]
#[command(name = "simplichrom", version, about = "Simplicial chromatic polynomials, anti-Ramsey counts and Ehrhart data")]
struct Cli {
    /// Print a JSON envelope instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Exit with status 2 when a verification fails.
    #[arg(long, global = true)]
    strict: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Chromatic polynomial of a complex, or its value at T.
    Chi {
        #[arg(long)]
        complex: PathBuf,
        #[arg(long)]
        eval: Option<u64>,
    },
    /// f-vector and h-polynomial.
    Hvec {
        #[arg(long)]
        complex: PathBuf,
    },
    /// Minimal nonfaces.
    Nonfaces {
        #[arg(long)]
        complex: PathBuf,
    },
    #[command(subcommand)]
    Graph(GraphCommand),
    Polytope {
        action: PolytopeAction,
        #[arg(long)]
        polytope: PathBuf,
        #[arg(long, default_value_t = 1)]
        m: u64,
        #[arg(long)]
        interior: bool,
    },
    #[command(subcommand)]
    Tri(TriCommand),
    /// Hodge-filtration dimensions from the δ-vector of a Newton polytope.
    Hodge {
        #[arg(long)]
        polytope: PathBuf,
    },
    Verify {
        identity: Identity,
        #[arg(long)]
        bundle: PathBuf,
    },
    /// Run every shipped fixture check.
    Suite,
}

#[derive(Subcommand)]
enum GraphCommand {
    /// Edge colorings with at most T colors and no monochromatic forbidden copy.
    AntiRamsey {
        #[arg(long)]
        graph: PathBuf,
        #[command(flatten)]
        forbid: Forbid,
        #[arg(long)]
        colors: u64,
    },
    /// Smallest n such that every T-coloring of K_n has a monochromatic copy.
    Ramsey {
        #[command(flatten)]
        forbid: Forbid,
        #[arg(long)]
        colors: u64,
        #[arg(long)]
        max_n: usize,
    },
}

#[derive(Args)]
struct Forbid {
    /// clique:I, cycle:L, path:L or subgraph:@FILE; repeatable.
    #[arg(long = "forbid", required = true)]
    specs: Vec<String>,
}

#[derive(Subcommand)]
enum TriCommand {
    /// Validate a triangulation of a polytope or of its boundary.
    Check {
        #[arg(long)]
        polytope: PathBuf,
        #[arg(long)]
        tri: PathBuf,
        #[arg(long)]
        boundary: bool,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum PolytopeAction {
    Ehrhart,
    Delta,
    Dual,
    Count,
}

#[derive(Clone, Copy, ValueEnum)]
enum Identity {
    Part1,
    Part2,
    CompressedChain,
    LatticeCoh,
    Reciprocity,
}

/// Inputs for `verify`. Without a complex, the apex augmentation of the
/// triangulation's complex is used.
#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct Bundle {
    complex: Option<SimplicialComplex>,
    witness: Option<PropertyIWitness>,
    polytope: Option<LatticePolytope>,
    triangulation: Option<Triangulation>,
    m_max: Option<u64>,
}

impl Bundle {
    fn polytope(&self) -> Result<&LatticePolytope> {
        self.polytope.as_ref().ok_or_else(|| anyhow!("bundle has no \"polytope\""))
    }

    fn triangulation(&self) -> Result<&Triangulation> {
        self.triangulation.as_ref().ok_or_else(|| anyhow!("bundle has no \"triangulation\""))
    }

    fn complex_and_witness(&self) -> Result<(SimplicialComplex, PropertyIWitness)> {
        match (&self.complex, &self.witness) {
            (Some(c), Some(w)) => Ok((c.clone(), w.clone())),
            (Some(_), None) => bail!("bundle has a \"complex\" but no \"witness\""),
            (None, Some(_)) => bail!("bundle has a \"witness\" but no \"complex\""),
            (None, None) => {
                let aug = self.triangulation()?.complex()?.apex_augment()?;
                Ok((aug.complex, aug.witness))
            }
        }
    }
}

/// What a command produced: a JSON result, its text rendering, and any
/// verification reports.
pub(crate) struct Outcome {
    command: String,
    result: Value,
    text: String,
    reports: Vec<Value>,
    failed: bool,
}

impl Outcome {
    fn new(command: &str, result: impl Serialize, text: String) -> Result<Self> {
        Ok(Outcome {
            command: command.to_string(),
            result: serde_json::to_value(result)?,
            text,
            reports: Vec::new(),
            failed: false,
        })
    }

    fn report(mut self, report: impl Serialize, pass: bool) -> Result<Self> {
        self.reports.push(serde_json::to_value(report)?);
        self.failed |= !pass;
        Ok(self)
    }
}

pub(crate) fn parse_json<T: DeserializeOwned>(text: &str, origin: &str) -> Result<T> {
    let de = &mut serde_json::Deserializer::from_str(text);
    serde_path_to_error::deserialize(de).map_err(|e| {
        let path = e.path().to_string();
        anyhow!("{origin}: at `{path}`: {}", e.into_inner())
    })
}

fn load<T: DeserializeOwned>(path: &Path) -> Result<T> {
    let text = fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))?;
    parse_json(&text, &path.display().to_string())
}

fn parse_pattern(spec: &str) -> Result<ForbiddenPattern> {
    if let Some(file) = spec.strip_prefix("subgraph:@") {
        let h: Graph = load(Path::new(file))?;
        return Ok(ForbiddenPattern::Subgraph(h));
    }
    Ok(spec.parse()?)
}

fn family(forbid: &Forbid) -> Result<ForbiddenFamily> {
    let patterns = forbid.specs.iter().map(|s| parse_pattern(s)).collect::<Result<Vec<_>>>()?;
    Ok(ForbiddenFamily::new(patterns)?)
}

fn bracketed<T: ToString>(xs: &[T]) -> String {
    format!("[{}]", xs.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(","))
}

fn lines(report: &simplichrom::VerificationReport) -> String {
    let mut out = format!(
        "{}\n  lhs = {}\n  rhs = {}\n  hypotheses: {}\n  pass: {}",
        report.identity, report.lhs, report.rhs, report.hypotheses_ok, report.pass
    );
    for note in &report.notes {
        out.push_str(&format!("\n  note: {note}"));
    }
    out
}

fn run(cli: &Cli) -> Result<Outcome> {
    match &cli.command {
        Command::Chi { complex, eval } => {
            let s: SimplicialComplex = load(complex)?;
            let chi = chi_polynomial(&s)?;
            match eval {
                Some(t) => {
                    let v = chi.eval(*t);
                    Outcome::new("chi", json!({"t": t, "value": v.to_string()}), v.to_string())
                }
                None => Outcome::new("chi", &chi, chi.polynomial.to_string()),
            }
        }
        Command::Hvec { complex } => {
            let s: SimplicialComplex = load(complex)?;
            let f = s.f_vector()?;
            let h = s.h_polynomial()?;
            let text = format!("f = {}\nh = {}", bracketed(&f), bracketed(h.coefficients()));
            Outcome::new("hvec", json!({"f": f, "h": h, "dim": s.dim()?}), text)
        }
        Command::Nonfaces { complex } => {
            let s: SimplicialComplex = load(complex)?;
            let nf: Vec<Vec<usize>> = s.minimal_nonfaces().iter().map(|v| v.to_vec()).collect();
            let text = nf.iter().map(|v| bracketed(v)).collect::<Vec<_>>().join("\n");
            Outcome::new("nonfaces", &nf, text)
        }
        Command::Graph(GraphCommand::AntiRamsey { graph, forbid, colors }) => {
            let g: Graph = load(graph)?;
            let count = anti_ramsey_count(&g, &family(forbid)?, *colors)?;
            Outcome::new("graph anti-ramsey", json!({"colors": colors, "count": count.to_string()}), count.to_string())
        }
        Command::Graph(GraphCommand::Ramsey { forbid, colors, max_n }) => {
            let fam = family(forbid)?;
            let [pattern] = fam.patterns.as_slice() else {
                bail!("ramsey takes exactly one --forbid pattern");
            };
            let probe = ramsey_probe(pattern, *colors, *max_n, DEFAULT_BUDGET)?;
            let text = probe.threshold.map_or("not_found".to_string(), |n| n.to_string());
            Outcome::new("graph ramsey", &probe, text)
        }
        Command::Polytope {
            action,
            polytope,
            m,
            interior,
        } => {
            let p: LatticePolytope = load(polytope)?;
            match action {
                PolytopeAction::Ehrhart => {
                    let e = ehrhart_polynomial(&p)?;
                    Outcome::new("polytope ehrhart", json!({"dim": p.dim(), "ehrhart": e}), e.to_string())
                }
                PolytopeAction::Delta => {
                    let d = delta_entries(&delta_vector(&p)?, p.dim());
                    let shown: Vec<String> = d.iter().map(|x| x.to_string()).collect();
                    Outcome::new("polytope delta", json!({"dim": p.dim(), "delta": shown}), bracketed(&d))
                }
                PolytopeAction::Dual => {
                    let dual = polar_dual(&p)?;
                    let verts: Vec<String> = dual
                        .dual_vertices
                        .iter()
                        .map(|v| format!("({})", v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")))
                        .collect();
                    let text = format!(
                        "vertices: {}\nin_cstar: {}\nround_trip: {}",
                        verts.join(" "),
                        dual.in_cstar,
                        dual.round_trip
                    );
                    let ok = dual.round_trip;
                    Outcome::new("polytope dual", &dual, text)?.report(json!({"round_trip": ok}), ok)
                }
                PolytopeAction::Count => {
                    let region = if *interior { Region::Interior } else { Region::Closed };
                    let c = count_points(&p, *m, region)?;
                    Outcome::new("polytope count", json!({"m": m, "region": region, "count": c}), c.to_string())
                }
            }
        }
        Command::Tri(TriCommand::Check { polytope, tri, boundary }) => {
            let p: LatticePolytope = load(polytope)?;
            let t: Triangulation = load(tri)?;
            if *boundary {
                check_boundary_triangulation(&p, &t)?;
                let compressed = is_compressed(&p, &t)?;
                let text = format!(
                    "valid boundary triangulation\ncompressed (vertex set = boundary lattice points): {}\nh = {}\ndelta = {}\nh = delta: {}\ndelta >= h: {}",
                    compressed.definition_check,
                    compressed.h,
                    compressed.delta,
                    compressed.h_equals_delta,
                    compressed.delta_dominates_h
                );
                let ok = compressed.delta_dominates_h;
                Outcome::new("tri check", &compressed, text)?.report(json!({"delta_dominates_h": ok}), ok)
            } else {
                check_full_triangulation(&p, &t)?;
                let unimodular = is_unimodular(&t)?;
                let mut text = format!("valid triangulation\nunimodular: {unimodular}");
                let hstar = if unimodular { Some(verify_hstar_eq_h(&p, &t)?) } else { None };
                if let Some(h) = &hstar {
                    text.push_str(&format!("\nh* = {}\nh = {}\nh* = h: {}", h.delta, h.h, h.equal));
                }
                let ok = hstar.as_ref().is_none_or(|h| h.equal);
                Outcome::new("tri check", json!({"unimodular": unimodular, "hstar": hstar}), text)?
                    .report(json!({"hstar_equals_h": ok}), ok)
            }
        }
        Command::Hodge { polytope } => {
            let p: LatticePolytope = load(polytope)?;
            let delta = delta_entries(&delta_vector(&p)?, p.dim());
            let dims = hodge_dims_from_delta(&delta, p.ambient_dim())?;
            let sum_rule = primitive_sum_rule(&dims, &delta);
            let text = format!(
                "N = {}\nfull = {}\nprimitive = {}\nsum rule: {sum_rule}",
                dims.n,
                bracketed(&dims.full),
                bracketed(&dims.primitive)
            );
            Outcome::new("hodge", &dims, text)?.report(json!({"primitive_sum_rule": sum_rule}), sum_rule)
        }
        Command::Verify { identity, bundle } => {
            let b: Bundle = load(bundle)?;
            verify(*identity, &b)
        }
        Command::Suite => suite::run(),
    }
}

fn verify(identity: Identity, b: &Bundle) -> Result<Outcome> {
    match identity {
        Identity::Part1 => {
            let s = b.complex.clone().ok_or_else(|| anyhow!("bundle has no \"complex\""))?;
            let rep = verify_identity_part1(&s)?;
            let pass = rep.pass;
            Outcome::new("verify part1", &rep, lines(&rep))?.report(&rep, pass)
        }
        Identity::Part2 => {
            let (s, w) = b.complex_and_witness()?;
            let rep = verify_identity_part2(&s, &w)?;
            let pass = rep.pass;
            Outcome::new("verify part2", &rep, lines(&rep))?.report(&rep, pass)
        }
        Identity::CompressedChain => {
            let (s, w) = b.complex_and_witness()?;
            let rep = verify_compressed_chain(&s, &w, b.polytope()?, b.triangulation()?)?;
            let mut text: Vec<String> = rep.steps.iter().map(lines).collect();
            text.push(format!("displayed form (reported only):\n{}", lines(&rep.displayed_form)));
            text.push(format!("derivation form (reported only):\n{}", lines(&rep.derivation_form)));
            text.extend(rep.notes.iter().map(|n| format!("note: {n}")));
            text.push(format!("chain pass: {}", rep.pass));
            let mut out = Outcome::new("verify compressed-chain", &rep, text.join("\n"))?;
            for step in &rep.steps {
                out = out.report(step, step.pass)?;
            }
            out.report(&rep.displayed_form, true)?.report(&rep.derivation_form, true)
        }
        Identity::LatticeCoh => {
            let (s, w) = b.complex_and_witness()?;
            let rep = verify_lattice_coh(&s, &w, b.polytope()?, b.triangulation()?)?;
            let mut text = vec![lines(&rep.identity)];
            text.push(format!(
                "series to order {}: {}\ninterior counts: {}\nseries match: {}",
                simplichrom::hodge::SERIES_ORDER,
                bracketed(&rep.series),
                bracketed(&rep.interior_counts),
                rep.series_ok
            ));
            text.extend(rep.notes.iter().map(|n| format!("note: {n}")));
            let pass = rep.pass;
            Outcome::new("verify lattice-coh", &rep, text.join("\n"))?.report(&rep.identity, pass)
        }
        Identity::Reciprocity => {
            let p = b.polytope()?;
            let rep = verify_reciprocity(p, b.m_max.unwrap_or(5))?;
            let mut text: Vec<String> = rep
                .rows
                .iter()
                .map(|r| format!("m = {}: (-1)^r E(-m) = {}, interior = {}, {}", r.m, r.polynomial_side, r.interior_count, r.holds))
                .collect();
            text.push(lines(&rep.series));
            let pass = rep.pass;
            Outcome::new("verify reciprocity", &rep, text.join("\n"))?.report(&rep.series, pass)
        }
    }
}

#[derive(Serialize)]
struct Envelope<'a> {
    command: &'a str,
    result: &'a Value,
    reports: &'a [Value],
}

/// Writes to stdout; a closed pipe is not an error.
fn emit(text: &str) {
    let mut out = std::io::stdout().lock();
    let _ = writeln!(out, "{text}").and_then(|_| out.flush());
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(&cli) {
        Ok(out) => {
            if cli.json {
                let envelope = Envelope {
                    command: &out.command,
                    result: &out.result,
                    reports: &out.reports,
                };
                emit(&serde_json::to_string_pretty(&envelope).expect("JSON values serialize"));
            } else {
                emit(&out.text);
            }
            if cli.strict && out.failed {
                ExitCode::from(2)
            } else {
                ExitCode::SUCCESS
            }
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}
