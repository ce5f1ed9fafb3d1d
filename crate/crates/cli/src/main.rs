mod render;
mod report;
mod verify;

use std::io::Read;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Deserialize;

use fplpp::bijection::Bijection;
use fplpp::dynamics::{flip_closure, hfpl_complement, wieland_gyration};
use fplpp::geometry::{all_triples, classify, fixed_edges, ArchGeometry};
use fplpp::grid::{enumerate_fpl, is_type_abc, link_pattern, FplGrid, DEFAULT_ORACLE_BOUND};
use fplpp::partitions::{enumerate_pp, macdonald_q, macmahon, pp_to_tiling, Honeycomb, PlanePartition, DEFAULT_PP_BOUND};

use report::RunReport;

#[derive(Debug, thiserror::Error)]
enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Failed(String),
    #[error(transparent)]
    Core(#[from] fplpp::Error),
    #[error("{path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
}

impl CliError {
    fn exit_code(&self) -> u8 {
        use fplpp::Error as E;
        match self {
            CliError::Usage(_) => 2,
            CliError::Core(E::Parse(_) | E::BoundExceeded { .. } | E::InvalidTriple(_) | E::InvalidPartition(_)) => 2,
            CliError::Io { .. } => 2,
            _ => 1,
        }
    }
}

type CliResult<T> = Result<T, CliError>;

#[derive(Parser, Debug)]
#[command(name = "fplpp", version, about = "Fully packed loops of three-bundle type and boxed plane partitions")]
struct Cli {
    /// Write the run report as JSON to this file.
    #[arg(long, global = true)]
    json_out: Option<PathBuf>,
    /// Worker threads for checks over many placements.
    #[arg(long, global = true, default_value_t = 1)]
    parallel: usize,
    /// Largest grid size for exhaustive enumeration.
    #[arg(long, global = true, default_value_t = DEFAULT_ORACLE_BOUND)]
    oracle_bound: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Number of plane partitions in an a x b x c box.
    Count {
        a: usize,
        b: usize,
        c: usize,
        /// Print the generating polynomial by number of boxes instead.
        #[arg(long)]
        q: bool,
    },
    /// Run every check for all placements with a+b+c <= N_MAX.
    Verify { n_max: usize },
    /// List configurations or partitions as JSON lines.
    Enumerate {
        #[command(subcommand)]
        what: EnumerateWhat,
    },
    /// Apply the bijection to a JSON file ("-" for stdin).
    Biject {
        #[arg(value_enum)]
        direction: Direction,
        input: String,
        /// Grid size, needed for partition input.
        #[arg(long)]
        n: Option<usize>,
        /// Three bundle centers `p,q,r`, needed for partition input.
        #[arg(long, value_parser = parse_centers)]
        centers: Option<[usize; 3]>,
        /// Apply the inverse to the result and compare.
        #[arg(long)]
        round_trip: bool,
    },
    /// Draw a configuration, region or partition.
    Render {
        input: String,
        #[arg(long, value_enum, default_value_t = Format::Ascii)]
        format: Format,
        #[arg(long, value_enum, default_value_t = Layer::Fpl)]
        layer: Layer,
        /// Output file; stdout when absent.
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Apply gyration to a configuration.
    Gyrate {
        input: String,
        #[arg(long, default_value_t = 1)]
        steps: usize,
    },
}

#[derive(Subcommand, Debug)]
enum EnumerateWhat {
    /// Configurations on the n x n grid, or the flip closure of one placement.
    Fpl {
        n: usize,
        #[arg(long, default_value_t = 0)]
        parity: u8,
        #[arg(long, value_parser = parse_centers)]
        centers: Option<[usize; 3]>,
    },
    /// Plane partitions in a box.
    Pp { a: usize, b: usize, c: usize },
    /// Placements of three bundle centers on the n x n grid.
    Triples { n: usize },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Direction {
    FplToPp,
    PpToFpl,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Ascii,
    Svg,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Layer {
    Fpl,
    Fixed,
    Dominos,
    Hexagon,
    Pp,
    Hfpl,
}

/// Placement of the three centers, as read by `render`.
#[derive(Deserialize)]
struct GeometryJson {
    n: usize,
    centers: [usize; 3],
}

fn parse_centers(s: &str) -> Result<[usize; 3], String> {
    let v: Vec<usize> = s
        .split(',')
        .map(|t| t.trim().parse::<usize>().map_err(|e| format!("{t:?}: {e}")))
        .collect::<Result<_, _>>()?;
    v.try_into().map_err(|_| "expected three comma-separated positions".to_string())
}

fn read_input(path: &str) -> CliResult<String> {
    let mut s = String::new();
    let res = if path == "-" {
        std::io::stdin().read_to_string(&mut s).map(|_| ())
    } else {
        std::fs::read_to_string(path).map(|t| s = t)
    };
    res.map_err(|source| CliError::Io {
        path: path.to_string(),
        source,
    })?;
    Ok(s)
}

fn write_file(path: &Path, text: &str) -> CliResult<()> {
    std::fs::write(path, text).map_err(|source| CliError::Io {
        path: path.display().to_string(),
        source,
    })
}

fn geometry(n: Option<usize>, centers: Option<[usize; 3]>) -> CliResult<ArchGeometry> {
    let (Some(n), Some(c)) = (n, centers) else {
        return Err(CliError::Usage("--n and --centers are required".into()));
    };
    Ok(classify(n, c)?)
}

fn geometry_of(g: &FplGrid) -> CliResult<ArchGeometry> {
    let tb = is_type_abc(&link_pattern(g)?)
        .ok_or_else(|| CliError::Failed("configuration is not of three-bundle type".into()))?;
    Ok(classify(g.n(), tb.bundles.map(|b| b.center))?)
}

fn run(cli: Cli, report: &mut RunReport) -> CliResult<String> {
    match cli.command {
        Command::Count { a, b, c, q } => {
            report.param("box", [a, b, c]);
            let text = if q {
                let p = macdonald_q(a, b, c);
                report.count("boxes", p.eval_at_one().to_string());
                p.to_string()
            } else {
                let m = macmahon(a, b, c);
                report.count("boxes", m.to_string());
                m.to_string()
            };
            Ok(text + "\n")
        }
        Command::Verify { n_max } => {
            report.param("n_max", n_max);
            if n_max > cli.oracle_bound {
                return Err(fplpp::Error::BoundExceeded {
                    what: "n_max",
                    value: n_max,
                    bound: cli.oracle_bound,
                }
                .into());
            }
            verify::run(n_max, report)?;
            let mut text = String::new();
            for c in &report.checks {
                let mark = if c.passed { "pass" } else { "FAIL" };
                text.push_str(&format!("{mark}  {}: {}\n", c.name, c.detail));
            }
            if report.all_passed() {
                Ok(text)
            } else {
                print!("{text}");
                Err(CliError::Failed("some checks failed".into()))
            }
        }
        Command::Enumerate { what } => enumerate(what, cli.oracle_bound, report),
        Command::Biject {
            direction,
            input,
            n,
            centers,
            round_trip,
        } => {
            let text = read_input(&input)?;
            match direction {
                Direction::FplToPp => {
                    let g = FplGrid::from_json_str(&text)?;
                    let bij = Bijection::new(geometry_of(&g)?)?;
                    let pp = bij.fpl_to_pp(&g)?;
                    if round_trip {
                        let same = bij.pp_to_fpl(&pp)? == g;
                        report.check("round trip", same, "");
                        if !same {
                            return Err(CliError::Failed("round trip changed the configuration".into()));
                        }
                    }
                    Ok(pp.to_json_string() + "\n")
                }
                Direction::PpToFpl => {
                    let pp = PlanePartition::from_json_str(&text)?;
                    let bij = Bijection::new(geometry(n, centers)?)?;
                    let g = bij.pp_to_fpl(&pp)?;
                    if round_trip {
                        let same = bij.fpl_to_pp(&g)? == pp;
                        report.check("round trip", same, "");
                        if !same {
                            return Err(CliError::Failed("round trip changed the partition".into()));
                        }
                    }
                    Ok(g.to_json_string() + "\n")
                }
            }
        }
        Command::Render {
            input,
            format,
            layer,
            output,
        } => {
            let text = read_input(&input)?;
            report.param("layer", format!("{layer:?}").to_lowercase());
            let picture = render(&text, format, layer)?;
            match output {
                Some(path) => {
                    write_file(&path, &picture)?;
                    Ok(String::new())
                }
                None => Ok(picture),
            }
        }
        Command::Gyrate { input, steps } => {
            let mut g = FplGrid::from_json_str(&read_input(&input)?)?;
            let before = link_pattern(&g)?;
            for _ in 0..steps {
                g = wieland_gyration(&g)?;
            }
            let rotated = link_pattern(&g)? == before.rotated(steps as isize);
            report.param("steps", steps);
            report.check("pattern rotated", rotated, "");
            Ok(g.to_json_string() + "\n")
        }
    }
}

fn enumerate(what: EnumerateWhat, bound: usize, report: &mut RunReport) -> CliResult<String> {
    let mut out = String::new();
    match what {
        EnumerateWhat::Fpl { n, parity, centers } => {
            let grids = match centers {
                Some(c) => flip_closure(&classify(n, c)?, bound)?,
                None => enumerate_fpl(n, parity, bound)?,
            };
            report.count("configurations", grids.len());
            for g in grids {
                out.push_str(&g.to_json_string());
                out.push('\n');
            }
        }
        EnumerateWhat::Pp { a, b, c } => {
            let mut k = 0;
            for pp in enumerate_pp(a, b, c, DEFAULT_PP_BOUND)? {
                out.push_str(&pp.to_json_string());
                out.push('\n');
                k += 1;
            }
            report.count("partitions", k);
        }
        EnumerateWhat::Triples { n } => {
            let triples = all_triples(n);
            report.count("placements", triples.len());
            for t in triples {
                let geo = classify(n, t)?;
                let line = serde_json::json!({
                    "n": n,
                    "centers": t,
                    "abc": [geo.a, geo.b, geo.c],
                    "case": geo.case.roman(),
                });
                out.push_str(&line.to_string());
                out.push('\n');
            }
        }
    }
    Ok(out)
}

fn render(text: &str, format: Format, layer: Layer) -> CliResult<String> {
    let parse_err = |e: serde_json::Error| fplpp::Error::Parse(e.to_string());
    let svg = format == Format::Svg;
    match layer {
        Layer::Fpl => {
            let g = FplGrid::from_json_str(text)?;
            Ok(if svg { render::grid_svg(&g, None) } else { render::grid_ascii(&g, None) })
        }
        Layer::Fixed | Layer::Dominos => {
            let j: GeometryJson = serde_json::from_str(text).map_err(parse_err)?;
            let geo = classify(j.n, j.centers)?;
            let fixed = fixed_edges(&geo)?;
            let bij;
            let region = if layer == Layer::Dominos {
                bij = Bijection::new(geo)?;
                Some(&bij.region)
            } else {
                None
            };
            Ok(if svg {
                render::grid_svg(&fixed, region)
            } else {
                render::grid_ascii(&fixed, region)
            })
        }
        Layer::Hexagon | Layer::Pp | Layer::Hfpl => {
            let pp = PlanePartition::from_json_str(text)?;
            let (a, b, c) = pp.dims();
            let h = Honeycomb::new(a, b, c);
            let d = pp_to_tiling(&pp, &h)?;
            Ok(match (layer, svg) {
                (Layer::Hexagon, true) => render::dimers_svg(&h, &d),
                (Layer::Hexagon, false) => render::tiling_ascii(&h, &d),
                (Layer::Pp, true) => render::tiling_svg(&h, &d),
                (Layer::Pp, false) => render::pp_ascii(&pp),
                (_, true) => render::hfpl_svg(&h, &hfpl_complement(&d)),
                (_, false) => render::hfpl_ascii(&h, &hfpl_complement(&d)),
            })
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let json_out = cli.json_out.clone();
    let threads = cli.parallel.max(1);
    let name = format!("{:?}", cli.command)
        .split([' ', '{', '('])
        .next()
        .unwrap_or_default()
        .to_lowercase();
    let mut report = RunReport::new(&name);
    let pool = match rayon::ThreadPoolBuilder::new().num_threads(threads).build() {
        Ok(p) => p,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    let result = pool.install(|| run(cli, &mut report));
    let code = match &result {
        Ok(text) => {
            print!("{text}");
            0
        }
        Err(e) => {
            report.check("run", false, e.to_string());
            eprintln!("error: {e}");
            e.exit_code()
        }
    };
    if let Some(path) = json_out {
        if let Err(e) = write_file(&path, &report.to_json()) {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    ExitCode::from(code)
}
