//! `apdensity`: command-line front end for exact density computations.
//!
//! Exit codes: 0 success, 2 usage error, 3 verification failure, 4 internal
//! error. Reports are JSON with an input echo, the Haar normalization in
//! force, certification flags, and the runtime. With a fixed `--seed` the
//! report is byte-identical across runs except for the `runtime_ms` field.

use std::collections::BTreeSet;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use serde_json::json;

use aperiodic_density::boxes::BoxUnion;
use aperiodic_density::cutproject::{
    almost_periods, density_formula_check, model_set_patch, CPScheme, IntervalUnion, Window,
};
use aperiodic_density::density::{density_report, ShiftSpec};
use aperiodic_density::folner::{ratio_at, BoundaryKind, FolnerSeq};
use aperiodic_density::io;
use aperiodic_density::lattice::{lattice_density, siegel_fundamental_domain, Lattice};
use aperiodic_density::points::PointSet;
use aperiodic_density::rat::{parse_rat, Rat};
use aperiodic_density::sets::{GSet, PMeasure};
use aperiodic_density::verify::run_suite;
use aperiodic_density::zphi::QPhi;
use aperiodic_density::{Error, GroupCtx};

#[derive(Parser)]
#[command(name = "apdensity", version, about = "Exact densities, boundaries and model sets")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Enumerate a model-set patch and write it in the point-set format.
    GenModelset(GenModelset),
    /// Averaged and Beurling densities of a comb along a Følner sequence.
    Density(Density),
    /// Empirical model-set density against the window-measure targets.
    DensityFormula(DensityFormula),
    /// Apply a boundary operator to a set.
    Boundary(Boundary),
    /// Boundary ratios along a Følner sequence, as CSV.
    FolnerRatio(FolnerRatio),
    /// Lattice covolume, fundamental domain, or density.
    Lattice(LatticeCmd),
    /// Almost periods of a model set.
    AlmostPeriods(AlmostPeriods),
    /// Run a verification suite.
    Verify(Verify),
}

#[derive(Args)]
struct SchemeArgs {
    /// Scheme: `fib` or `int-cyclic`.
    #[arg(long)]
    scheme: String,
    /// Modulus for `int-cyclic`.
    #[arg(long, default_value_t = 5)]
    modulus: i64,
    /// Window: interval endpoints (pairs) for `fib` — rationals, decimal
    /// literals, or `a+b*phi` — or residues for `int-cyclic`.
    #[arg(long, num_args = 1.., required = true, allow_negative_numbers = true)]
    window: Vec<String>,
}

impl SchemeArgs {
    fn build(&self) -> Result<(CPScheme, Window), Error> {
        match self.scheme.as_str() {
            "fib" => {
                if self.window.len() % 2 != 0 {
                    return Err(Error::Parse("fib window needs endpoint pairs".into()));
                }
                let mut parts = Vec::new();
                for pair in self.window.chunks(2) {
                    parts.push((parse_phi(&pair[0])?, parse_phi(&pair[1])?));
                }
                Ok((CPScheme::FibonacciZphi, Window::Intervals(IntervalUnion::new(parts))))
            }
            "int-cyclic" => {
                let scheme = CPScheme::int_cyclic(self.modulus)?;
                let residues: BTreeSet<i64> = self
                    .window
                    .iter()
                    .map(|s| {
                        s.parse::<i64>()
                            .map_err(|_| Error::Parse(format!("bad residue `{s}`")))
                    })
                    .collect::<Result<_, _>>()?;
                Ok((scheme, Window::residues(self.modulus, residues)))
            }
            other => Err(Error::Parse(format!("unknown scheme `{other}`"))),
        }
    }
}

#[derive(Args)]
struct GenModelset {
    #[command(flatten)]
    scheme: SchemeArgs,
    /// Physical region `[lo, hi)`.
    #[arg(long, num_args = 2, required = true, allow_negative_numbers = true)]
    range: Vec<String>,
    /// Output file (stdout when omitted).
    #[arg(long)]
    out: Option<String>,
}

#[derive(Args)]
struct Density {
    /// Point-set file carrying the comb.
    #[arg(long)]
    measure: String,
    /// Sequence: `cubes` (dimension from the file) or `heisenberg`.
    #[arg(long, default_value = "cubes")]
    seq: String,
    /// Sequence index.
    #[arg(long)]
    n: u64,
    /// Declared period lattice `p1,p2,…` for the exact Periodic reduction.
    #[arg(long)]
    period: Option<String>,
    /// Number of grid shifts per axis when no period is declared.
    #[arg(long, default_value_t = 8)]
    shift_grid: i64,
}

#[derive(Args)]
struct DensityFormula {
    #[command(flatten)]
    scheme: SchemeArgs,
    /// Sequence index (interval length).
    #[arg(long)]
    n: u64,
    /// Enclosure width exponent: targets are within 10^-k.
    #[arg(long, default_value_t = 9)]
    precision: u32,
}

#[derive(Args)]
struct Boundary {
    /// Operator: `folner`, `strong`, or `van-hove`.
    #[arg(long)]
    kind: String,
    /// File with K (point-set or box format, with header).
    #[arg(long)]
    k: String,
    /// File with A (same format family as K).
    #[arg(long)]
    a: String,
    /// Output file (stdout when omitted).
    #[arg(long)]
    out: Option<String>,
}

#[derive(Args)]
struct FolnerRatio {
    /// Sequence: `cubes-z:<d>`, `cubes-r:<d>`, `heisenberg`, or `comb:<eps>`.
    #[arg(long)]
    seq: String,
    /// File with K.
    #[arg(long)]
    k: String,
    /// Operator: `folner`, `strong`, or `van-hove`.
    #[arg(long, default_value = "strong")]
    kind: String,
    /// Indices, comma-separated.
    #[arg(long)]
    ns: String,
    /// Thicken the sequence by the symmetric set in this file first.
    #[arg(long)]
    thicken: Option<String>,
}

#[derive(Args)]
struct LatticeCmd {
    /// Ambient group: `Z<d>` or `H3`.
    #[arg(long)]
    group: String,
    /// Row-major basis entries for integer sublattices, e.g. "2 0 0 3".
    #[arg(long)]
    basis: Option<String>,
    /// Index n of the Heisenberg lattice Γ_n.
    #[arg(long)]
    gamma_n: Option<i64>,
    /// Operation: `covol`, `fd`, `density`, or `siegel`.
    #[arg(long)]
    op: String,
    /// Sequence index for `density`.
    #[arg(long, default_value_t = 12)]
    n: u64,
    /// Point-set file with U for `siegel`.
    #[arg(long)]
    u: Option<String>,
}

#[derive(Args)]
struct AlmostPeriods {
    #[command(flatten)]
    scheme: SchemeArgs,
    /// Bound ε on the symmetric-difference density, as a rational.
    #[arg(long)]
    eps: String,
    /// Physical region `[lo, hi)` to search for periods.
    #[arg(long, num_args = 2, required = true, allow_negative_numbers = true)]
    range: Vec<String>,
    /// Enclosure width exponent.
    #[arg(long, default_value_t = 9)]
    precision: u32,
}

#[derive(Args)]
struct Verify {
    /// One of the named suites, or `all`.
    #[arg(long)]
    suite: String,
    #[arg(long, default_value_t = 100)]
    cases: u64,
    #[arg(long, default_value_t = 1)]
    seed: u64,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            let code = match e {
                Error::Parse(_) | Error::InvalidElement(_) | Error::Unsupported(_) => 2u8,
                _ => 4u8,
            };
            ExitCode::from(code)
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode, Error> {
    let start = Instant::now();
    match cli.command {
        Command::GenModelset(cmd) => {
            let (scheme, window) = cmd.scheme.build()?;
            let (lo, hi) = (parse_rat_arg(&cmd.range[0])?, parse_rat_arg(&cmd.range[1])?);
            let (region, kind, dim) = match scheme {
                CPScheme::IntCyclic { .. } => {
                    let (l, h) = (floor_i64(&lo), floor_i64(&hi));
                    (GSet::Points(PointSet::int_box(&[l], &[h])), "Z1", 1)
                }
                CPScheme::FibonacciZphi => (
                    GSet::Boxes(BoxUnion::interval(lo, hi)),
                    // lattice coordinates (m, n) meaning the real number m+n·φ
                    "FibLattice",
                    2,
                ),
            };
            let patch = model_set_patch(&scheme, &window, &region)?;
            let text = io::write_points(kind, dim, patch.as_points()?);
            emit(&cmd.out, &text)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Density(cmd) => {
            let content = std::fs::read_to_string(&cmd.measure)?;
            let (header, pts) = io::read_points(&content)?;
            let ctx = parse_group(&header.kind, header.dim)?;
            let seq = match cmd.seq.as_str() {
                "cubes" => FolnerSeq::CubesZd { d: ctx.dim() },
                "heisenberg" => FolnerSeq::HeisenbergBoxes,
                other => return Err(Error::Parse(format!("unknown sequence `{other}`"))),
            };
            let nu = PMeasure::comb(pts);
            let shifts = match &cmd.period {
                Some(p) => ShiftSpec::Periodic(
                    p.split(',')
                        .map(|t| t.trim().parse::<i64>().map_err(|_| Error::Parse(format!("bad period `{t}`"))))
                        .collect::<Result<_, _>>()?,
                ),
                None => {
                    let d = ctx.dim();
                    let g = cmd.shift_grid;
                    let grid = PointSet::int_box(&vec![0; d], &vec![g; d]);
                    ShiftSpec::Explicit(grid.elems().collect())
                }
            };
            let report = density_report(&ctx, &nu, &seq, cmd.n, &shifts)?;
            let out = json!({
                "input": {"measure": cmd.measure, "seq": report.seq_tag, "n": report.n,
                          "period": cmd.period},
                "haar": ctx.haar_norm(),
                "d_minus": report.d_minus.to_string(),
                "d_plus": report.d_plus.to_string(),
                "b_minus": report.b_minus.to_string(),
                "b_plus": report.b_plus.to_string(),
                "flags": {"d": report.flag_d.as_str(),
                          "b_minus": report.flag_b_minus.as_str(),
                          "b_plus": report.flag_b_plus.as_str()},
                "runtime_ms": start.elapsed().as_millis() as u64,
            });
            println!("{}", serde_json::to_string_pretty(&out).unwrap());
            Ok(ExitCode::SUCCESS)
        }
        Command::DensityFormula(cmd) => {
            let (scheme, window) = cmd.scheme.build()?;
            let seq = match scheme {
                CPScheme::IntCyclic { .. } => FolnerSeq::CubesZd { d: 1 },
                CPScheme::FibonacciZphi => FolnerSeq::CubesRd { d: 1 },
            };
            let width = aperiodic_density::rat::pow10_inv(cmd.precision);
            let check = density_formula_check(&scheme, &window, &seq, cmd.n, &width)?;
            let exactness = matches!(scheme, CPScheme::IntCyclic { .. });
            let out = json!({
                "input": {"scheme": cmd.scheme.scheme, "window": cmd.scheme.window, "n": cmd.n},
                "haar": seq.ctx().haar_norm(),
                "empirical": check.empirical.to_string(),
                "target_lo": check.target_lo.to_string(),
                "target_hi": check.target_hi.to_string(),
                "flags": {"targets": if exactness { "exact" } else { "enclosure" }},
                "n": cmd.n,
                "runtime_ms": start.elapsed().as_millis() as u64,
            });
            println!("{}", serde_json::to_string_pretty(&out).unwrap());
            Ok(ExitCode::SUCCESS)
        }
        Command::Boundary(cmd) => {
            let kind = parse_boundary_kind(&cmd.kind)?;
            let (ctx, k) = read_gset(&cmd.k)?;
            let (_, a) = read_gset(&cmd.a)?;
            let result = kind.compute(&ctx, &k, &a)?;
            let text = io::write_gset(&ctx.kind_name(), ctx.dim(), &result);
            emit(&cmd.out, &text)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::FolnerRatio(cmd) => {
            let seq = parse_seq(&cmd.seq)?;
            let seq = match &cmd.thicken {
                Some(path) => {
                    let (_, l) = read_gset(path)?;
                    aperiodic_density::folner::thicken(&seq, &l)?
                }
                None => seq,
            };
            let (_, k) = read_gset(&cmd.k)?;
            let kind = parse_boundary_kind(&cmd.kind)?;
            println!("n,ratio");
            for tok in cmd.ns.split(',') {
                let n: u64 = tok
                    .trim()
                    .parse()
                    .map_err(|_| Error::Parse(format!("bad index `{tok}`")))?;
                let r = ratio_at(&seq, n, &k, kind)?;
                println!("{n},{r}");
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Lattice(cmd) => {
            let lat = build_lattice(&cmd)?;
            match cmd.op.as_str() {
                "covol" => println!("{}", lat.covolume()?),
                "fd" => {
                    let fd = lat.canonical_domain();
                    let ctx = lat.ambient();
                    print!("{}", io::write_points(&ctx.kind_name(), ctx.dim(), &fd));
                }
                "density" => {
                    let seq = match lat {
                        Lattice::HeisenbergGamma { .. } => FolnerSeq::HeisenbergBoxes,
                        _ => FolnerSeq::CubesZd { d: lat.ambient().dim() },
                    };
                    println!("{}", lattice_density(&lat, &seq, cmd.n)?);
                }
                "siegel" => {
                    let path = cmd
                        .u
                        .as_ref()
                        .ok_or_else(|| Error::Parse("siegel needs --u".into()))?;
                    let (_, u) = read_gset(path)?;
                    let fd = siegel_fundamental_domain(&lat, &u)?;
                    let ctx = lat.ambient();
                    print!("{}", io::write_points(&ctx.kind_name(), ctx.dim(), &fd.cells));
                }
                other => return Err(Error::Parse(format!("unknown op `{other}`"))),
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::AlmostPeriods(cmd) => {
            let (scheme, window) = cmd.scheme.build()?;
            let eps = parse_rat_arg(&cmd.eps)?;
            let (lo, hi) = (parse_rat_arg(&cmd.range[0])?, parse_rat_arg(&cmd.range[1])?);
            let region = match scheme {
                CPScheme::IntCyclic { .. } => {
                    GSet::Points(PointSet::int_box(&[floor_i64(&lo)], &[floor_i64(&hi)]))
                }
                CPScheme::FibonacciZphi => GSet::Boxes(BoxUnion::interval(lo, hi)),
            };
            let width = aperiodic_density::rat::pow10_inv(cmd.precision);
            let ap = almost_periods(&scheme, &window, &eps, &region, &width)?;
            let out = json!({
                "input": {"scheme": cmd.scheme.scheme, "window": cmd.scheme.window,
                          "eps": eps.to_string(), "range": cmd.range},
                "haar": match scheme { CPScheme::IntCyclic{..} => "counting", _ => "lebesgue" },
                "u": describe_window(&ap.u),
                "period_count": ap.periods.as_points()?.len(),
                "bound": ap.bound.to_string(),
                "steps": ap.steps,
                "flags": {"bound": "certified-upper-bound"},
                "runtime_ms": start.elapsed().as_millis() as u64,
            });
            println!("{}", serde_json::to_string_pretty(&out).unwrap());
            Ok(ExitCode::SUCCESS)
        }
        Command::Verify(cmd) => {
            let suites: Vec<&str> = if cmd.suite == "all" {
                aperiodic_density::verify::SUITES.to_vec()
            } else {
                vec![cmd.suite.as_str()]
            };
            let mut all_ok = true;
            let mut reports = Vec::new();
            for name in suites {
                let r = run_suite(name, cmd.cases, cmd.seed)?;
                all_ok &= r.ok();
                reports.push(json!({
                    "suite": r.suite,
                    "statement": r.statement,
                    "cases": r.cases,
                    "passed": r.passed,
                    "seed": r.seed,
                    "ok": r.ok(),
                    "first_failure": r.first_failure,
                }));
            }
            let out = json!({
                "input": {"suite": cmd.suite, "cases": cmd.cases, "seed": cmd.seed},
                "reports": reports,
                "runtime_ms": start.elapsed().as_millis() as u64,
            });
            println!("{}", serde_json::to_string_pretty(&out).unwrap());
            Ok(if all_ok { ExitCode::SUCCESS } else { ExitCode::from(3) })
        }
    }
}

fn emit(out: &Option<String>, text: &str) -> Result<(), Error> {
    match out {
        Some(path) => std::fs::write(path, text)?,
        None => print!("{text}"),
    }
    Ok(())
}

fn parse_phi(s: &str) -> Result<QPhi, Error> {
    let s = s.trim().replace(' ', "");
    if let Some(head) = s.strip_suffix("*phi") {
        // `a+b*phi` or `b*phi` with integer a, b
        let split = head[1..].rfind(['+', '-']).map(|p| p + 1);
        let (a_str, b_str) = match split {
            Some(pos) => (&head[..pos], &head[pos..]),
            None => ("0", head),
        };
        let a: i64 = a_str
            .parse()
            .map_err(|_| Error::Parse(format!("bad φ-linear endpoint `{s}`")))?;
        let b: i64 = b_str
            .trim_start_matches('+')
            .parse()
            .map_err(|_| Error::Parse(format!("bad φ-linear endpoint `{s}`")))?;
        Ok(QPhi::from_int(a, b))
    } else {
        Ok(QPhi::from_rat(parse_rat_arg(&s)?))
    }
}

fn parse_rat_arg(s: &str) -> Result<Rat, Error> {
    parse_rat(s).ok_or_else(|| Error::Parse(format!("bad rational `{s}`")))
}

fn floor_i64(r: &Rat) -> i64 {
    use num_traits::ToPrimitive;
    aperiodic_density::rat::floor_int(r).to_i64().expect("desk-scale value")
}

fn parse_group(kind: &str, dim: usize) -> Result<GroupCtx, Error> {
    match kind {
        k if k.starts_with('Z') => Ok(GroupCtx::int_lattice(dim)),
        "H3Z" | "H3" => Ok(GroupCtx::heisenberg()),
        k if k.starts_with('R') => Ok(GroupCtx::real_boxes(dim)),
        other => Err(Error::Parse(format!("unknown group kind `{other}`"))),
    }
}

fn parse_boundary_kind(s: &str) -> Result<BoundaryKind, Error> {
    match s {
        "folner" => Ok(BoundaryKind::Folner),
        "strong" => Ok(BoundaryKind::Strong),
        "van-hove" | "vanhove" => Ok(BoundaryKind::VanHove),
        other => Err(Error::Parse(format!("unknown boundary kind `{other}`"))),
    }
}

fn parse_seq(s: &str) -> Result<FolnerSeq, Error> {
    let (name, arg) = match s.split_once(':') {
        Some((n, a)) => (n, Some(a)),
        None => (s, None),
    };
    match name {
        "cubes-z" => Ok(FolnerSeq::CubesZd {
            d: arg.unwrap_or("1").parse().map_err(|_| Error::Parse("bad dimension".into()))?,
        }),
        "cubes-r" => Ok(FolnerSeq::CubesRd {
            d: arg.unwrap_or("1").parse().map_err(|_| Error::Parse("bad dimension".into()))?,
        }),
        "heisenberg" => Ok(FolnerSeq::HeisenbergBoxes),
        "comb" => Ok(FolnerSeq::CombR1 {
            eps: parse_rat_arg(arg.unwrap_or("1/10"))?,
        }),
        other => Err(Error::Parse(format!("unknown sequence `{other}`"))),
    }
}

/// Read either a point-set or a box-union file, dispatching on the header.
fn read_gset(path: &str) -> Result<(GroupCtx, GSet), Error> {
    let content = std::fs::read_to_string(path)?;
    let first = content
        .lines()
        .next()
        .ok_or_else(|| Error::Parse("empty file".into()))?;
    if first.contains("group=R") {
        let (header, bu) = io::read_boxes(&content)?;
        Ok((parse_group(&header.kind, header.dim)?, GSet::Boxes(bu)))
    } else {
        let (header, pts) = io::read_points(&content)?;
        Ok((parse_group(&header.kind, header.dim)?, GSet::Points(pts)))
    }
}

fn build_lattice(cmd: &LatticeCmd) -> Result<Lattice, Error> {
    match cmd.group.as_str() {
        "H3" | "H3Z" => Lattice::heisenberg_gamma(
            cmd.gamma_n
                .ok_or_else(|| Error::Parse("H3 lattices need --gamma-n".into()))?,
        ),
        g if g.starts_with('Z') => {
            let d: usize = g[1..]
                .parse()
                .map_err(|_| Error::Parse(format!("unknown group `{g}`")))?;
            let basis_str = cmd
                .basis
                .as_ref()
                .ok_or_else(|| Error::Parse("integer lattices need --basis".into()))?;
            let entries: Vec<i64> = basis_str
                .split_whitespace()
                .map(|t| t.parse().map_err(|_| Error::Parse(format!("bad basis entry `{t}`"))))
                .collect::<Result<_, _>>()?;
            if entries.len() != d * d {
                return Err(Error::Parse(format!("expected {} basis entries", d * d)));
            }
            let basis: Vec<Vec<i64>> = entries.chunks(d).map(|row| row.to_vec()).collect();
            Lattice::int_sublattice(basis)
        }
        other => Err(Error::Parse(format!("unknown group `{other}`"))),
    }
}

fn describe_window(w: &Window) -> serde_json::Value {
    match w {
        Window::Residues { modulus, set } => json!({
            "kind": "residues", "modulus": modulus,
            "set": set.iter().collect::<Vec<_>>(),
        }),
        Window::Intervals(u) => json!({
            "kind": "intervals",
            "parts": u
                .parts()
                .iter()
                .map(|(a, b)| format!("[{a}, {b})"))
                .collect::<Vec<_>>(),
        }),
    }
}
