//! tileforge: a workbench for translational tilings and spectral sets.
//!
//! Subcommands wrap the library operations one-to-one; inputs and
//! outputs are the plain-text set formats of [`tileforge_cli::formats`].
//! Everything is seedless and deterministic: identical invocations
//! produce identical bytes. Exit codes: 0 success, 1 domain outcomes
//! (NotFound, false verdicts, search errors), 2 usage/parse errors.

use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use tileforge_cli::error::{CliError, CliResult};
use tileforge_cli::formats::{
    self, default_budget, emit, format_bridgespec, format_value, parse_group,
    parse_rational_vector, SetValue,
};
use tileforge_cli::render;
use tileforge_core::bridges;
use tileforge_core::cubes;
use tileforge_core::lattice::{connected_components, Connectivity, LatticeSet};
use tileforge_core::spectral;
use tileforge_core::torus::{self, Search};

#[derive(Parser)]
#[command(
    name = "tileforge",
    version,
    about = "Workbench for translational tilings, spectral sets and connectification operators"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    Moore,
    Axis,
}

impl From<Mode> for Connectivity {
    fn from(m: Mode) -> Self {
        match m {
            Mode::Moore => Connectivity::Moore,
            Mode::Axis => Connectivity::Axis,
        }
    }
}

#[derive(Subcommand)]
enum Cmd {
    /// Connected components of a lattice set, one line per component.
    Components {
        input: PathBuf,
        #[arg(long, value_enum, default_value_t = Mode::Moore)]
        mode: Mode,
    },
    /// The 2n-point snake sequence, in order, one point per line.
    Snake { n: usize },
    /// Discrete folded bridge of a lattice set (connected lift in d+2).
    Bridge {
        input: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
        /// Also write the offset spec for `gproduct`.
        #[arg(long)]
        spec_out: Option<PathBuf>,
    },
    /// Generalized product (F x {0}^k) + X for an explicit offset spec.
    Gproduct {
        input: PathBuf,
        #[arg(long)]
        spec: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Torus tiling search and verification.
    Tile {
        #[command(subcommand)]
        action: TileAction,
    },
    /// Stabilizer subgroup (periods) of a translate set on a torus.
    Periods {
        input: PathBuf,
        #[arg(long)]
        group: String,
    },
    /// Exact Fourier zero set of a set on a torus.
    Zeros {
        input: PathBuf,
        #[arg(long)]
        group: String,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Search for a spectrum (orthogonal exponential basis frequencies).
    Spectrum {
        input: PathBuf,
        #[arg(long)]
        group: String,
        #[arg(long)]
        budget: Option<u64>,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Check that a frequency set is orthogonal for a set on a torus.
    Orthocheck {
        input: PathBuf,
        lambda: PathBuf,
        #[arg(long)]
        group: String,
    },
    /// Product spectrum Lambda x Sigma.
    Prodspec {
        first: PathBuf,
        second: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Keep the dominant integer coset per 1/n-coset of a rational set.
    Cosetfilter {
        input: PathBuf,
        #[arg(long)]
        u: String,
        #[arg(long)]
        n: u32,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Stacking: m sheared copies of omega x \[0,1\], one dimension up.
    Stack {
        input: PathBuf,
        #[arg(long)]
        v: String,
        #[arg(long)]
        copies: usize,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Continuous folded bridge of a cube set (connected lift in d+2).
    Rbridge {
        input: PathBuf,
        /// Force the interpolation refinement K instead of searching.
        #[arg(long)]
        k: Option<u32>,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Spiral bridge: iterated stacking until connected; prints the
    /// round log as TSV.
    Spiral {
        input: PathBuf,
        #[arg(long, default_value_t = 64)]
        max_rounds: u32,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Number of unit cubes (exact volume).
    Volume { input: PathBuf },
    /// Refine a cube set into lattice cells at its denominator scale.
    Tolattice {
        input: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Render a plane slice as SVG.
    Render {
        input: PathBuf,
        /// Plane axes, e.g. "0,1".
        #[arg(long)]
        plane: String,
        /// Fixed values for the other coordinates, e.g. "2=0,3=1/2".
        #[arg(long)]
        slice: Option<String>,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum TileAction {
    /// Search for a tiling complement on the torus.
    Find {
        input: PathBuf,
        #[arg(long)]
        group: String,
        #[arg(long)]
        budget: Option<u64>,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Verify that translates tile the torus; prints true/false.
    Verify {
        input: PathBuf,
        translates: PathBuf,
        #[arg(long)]
        group: String,
    },
}

fn parse_plane(text: &str) -> CliResult<(usize, usize)> {
    let parts: Vec<&str> = text.split(',').collect();
    if parts.len() != 2 {
        return Err(CliError::Usage(format!("plane must be 'i,j', got {text:?}")));
    }
    let parse = |s: &str| {
        s.trim()
            .parse::<usize>()
            .map_err(|_| CliError::Usage(format!("bad plane axis {s:?}")))
    };
    Ok((parse(parts[0])?, parse(parts[1])?))
}

fn parse_slice(text: &str) -> CliResult<render::Slice> {
    let mut out = Vec::new();
    for part in text.split(',') {
        let part = part.trim();
        if part.is_empty() {
            continue;
        }
        let (idx, val) = part
            .split_once('=')
            .ok_or_else(|| CliError::Usage(format!("slice entry {part:?} must be 'i=value'")))?;
        let i: usize = idx
            .trim()
            .parse()
            .map_err(|_| CliError::Usage(format!("bad slice coordinate {idx:?}")))?;
        let v = parse_rational_vector(val.trim())?;
        out.push((i, v.coord(0)));
    }
    Ok(out)
}

fn format_point_line(p: &tileforge_core::Point) -> String {
    p.0.iter()
        .map(|c| c.to_string())
        .collect::<Vec<_>>()
        .join(" ")
}

fn lattice_out(set: LatticeSet, output: &Option<PathBuf>) -> CliResult<i32> {
    emit(&format_value(&SetValue::Lattice(set)), output)?;
    Ok(0)
}

fn spiral_log_tsv(log: &[cubes::SpiralRound]) -> String {
    let mut out = String::from("round\tdim\tD\tn\tm\tD_after\tcomponents\n");
    for r in log {
        let after = r
            .dist_after
            .map_or_else(|| "-".to_string(), |d| format!("{d:.6}"));
        writeln!(
            out,
            "{}\t{}\t{:.6}\t{}\t{}\t{}\t{}",
            r.round, r.dim, r.dist, r.n, r.copies, after, r.components_after
        )
        .unwrap();
    }
    out
}

fn run(cli: Cli) -> CliResult<i32> {
    match cli.cmd {
        Cmd::Components { input, mode } => {
            let set = formats::load_lattice(&input)?;
            let comps = connected_components(&set, mode.into())?;
            let mut out = String::new();
            for c in comps {
                let line: Vec<String> = c
                    .points()
                    .iter()
                    .map(|p| {
                        p.0.iter()
                            .map(|x| x.to_string())
                            .collect::<Vec<_>>()
                            .join(",")
                    })
                    .collect();
                writeln!(out, "{}", line.join(" ")).unwrap();
            }
            print!("{out}");
            Ok(0)
        }
        Cmd::Snake { n } => {
            let seq = bridges::snake_sequence(n)?;
            let mut out = String::new();
            for p in seq {
                writeln!(out, "{}", format_point_line(&p)).unwrap();
            }
            print!("{out}");
            Ok(0)
        }
        Cmd::Bridge {
            input,
            output,
            spec_out,
        } => {
            let set = formats::load_lattice(&input)?;
            let fb = bridges::folded_bridge(&set)?;
            if let Some(path) = spec_out {
                std::fs::write(&path, format_bridgespec(&fb.spec)).map_err(|source| {
                    CliError::Io {
                        path: path.clone(),
                        source,
                    }
                })?;
            }
            eprintln!(
                "n={} |F'|={} offset={}",
                fb.path_len,
                fb.set.len(),
                format_point_line(&fb.offset)
            );
            lattice_out(fb.set, &output)
        }
        Cmd::Gproduct {
            input,
            spec,
            output,
        } => {
            let set = formats::load_lattice(&input)?;
            let spec = formats::load_bridgespec(&spec)?;
            lattice_out(bridges::generalized_product(&set, &spec)?, &output)
        }
        Cmd::Tile { action } => match action {
            TileAction::Find {
                input,
                group,
                budget,
                output,
            } => {
                let set = formats::load_lattice(&input)?;
                let g = parse_group(&group)?;
                let budget = budget.unwrap_or_else(default_budget);
                match torus::find_tiling(&set, &g, budget)? {
                    Search::Found(w) => lattice_out(w.translates, &output),
                    Search::NotFound => Err(CliError::NotFound(format!(
                        "no tiling of {g} by the {}-point tile (exhaustive)",
                        set.len()
                    ))),
                    Search::BudgetExhausted => Err(CliError::NotFound(format!(
                        "search budget {budget} exhausted without a verdict"
                    ))),
                }
            }
            TileAction::Verify {
                input,
                translates,
                group,
            } => {
                let f = formats::load_lattice(&input)?;
                let a = formats::load_lattice(&translates)?;
                let g = parse_group(&group)?;
                let ok = torus::verify_tiling(&f, &a, &g)?;
                println!("{ok}");
                Ok(if ok { 0 } else { 1 })
            }
        },
        Cmd::Periods { input, group } => {
            let a = formats::load_lattice(&input)?;
            let g = parse_group(&group)?;
            let sub = torus::tiling_periods(&a, &g)?;
            let mut out = String::new();
            writeln!(out, "order {}", sub.order).unwrap();
            for gen in &sub.generators {
                writeln!(out, "{}", format_point_line(gen)).unwrap();
            }
            print!("{out}");
            Ok(0)
        }
        Cmd::Zeros {
            input,
            group,
            output,
        } => {
            let f = formats::load_lattice(&input)?;
            let g = parse_group(&group)?;
            lattice_out(spectral::zero_set(&f, &g)?, &output)
        }
        Cmd::Spectrum {
            input,
            group,
            budget,
            output,
        } => {
            let f = formats::load_lattice(&input)?;
            let g = parse_group(&group)?;
            let budget = budget.unwrap_or_else(default_budget);
            match spectral::find_spectrum(&f, &g, budget)? {
                Search::Found(w) => lattice_out(w.frequencies, &output),
                Search::NotFound => Err(CliError::NotFound(format!(
                    "no spectrum of size {} in the dual of {g} (exhaustive)",
                    f.len()
                ))),
                Search::BudgetExhausted => Err(CliError::NotFound(format!(
                    "search budget {budget} exhausted without a verdict"
                ))),
            }
        }
        Cmd::Orthocheck {
            input,
            lambda,
            group,
        } => {
            let f = formats::load_lattice(&input)?;
            let l = formats::load_lattice(&lambda)?;
            let g = parse_group(&group)?;
            let ok = spectral::verify_orthogonal_set(&f, &g, &l)?;
            println!("{ok}");
            Ok(if ok { 0 } else { 1 })
        }
        Cmd::Prodspec {
            first,
            second,
            output,
        } => {
            let a = formats::load_lattice(&first)?;
            let b = formats::load_lattice(&second)?;
            lattice_out(spectral::product_spectrum(&a, &b), &output)
        }
        Cmd::Cosetfilter {
            input,
            u,
            n,
            output,
        } => {
            let pts = formats::load_rationals(&input)?;
            let u = parse_rational_vector(&u)?;
            let kept = spectral::coset_filter(&pts, &u, n)?;
            emit(&format_value(&SetValue::Rationals(kept)), &output)?;
            Ok(0)
        }
        Cmd::Stack {
            input,
            v,
            copies,
            output,
        } => {
            let omega = formats::load_cubes(&input)?;
            let v = parse_rational_vector(&v)?;
            let stacked = cubes::stacking(&omega, &v, copies)?;
            emit(&format_value(&SetValue::Cubes(stacked)), &output)?;
            Ok(0)
        }
        Cmd::Rbridge { input, k, output } => {
            let omega = formats::load_cubes(&input)?;
            let rb = cubes::real_folded_bridge(&omega, k)?;
            eprintln!("K={} n={} volume={}", rb.k, rb.path_len, rb.set.volume());
            emit(&format_value(&SetValue::Cubes(rb.set)), &output)?;
            Ok(0)
        }
        Cmd::Spiral {
            input,
            max_rounds,
            output,
        } => {
            let omega = formats::load_cubes(&input)?;
            match cubes::spiral_bridge(&omega, max_rounds) {
                Ok(sb) => {
                    print!("{}", spiral_log_tsv(&sb.log));
                    if let Some(path) = output {
                        formats::save(&SetValue::Cubes(sb.set), &path)?;
                    }
                    Ok(0)
                }
                Err(tileforge_core::Error::RoundLimit { limit, log }) => {
                    print!("{}", spiral_log_tsv(&log));
                    Err(CliError::NotFound(format!(
                        "still disconnected after {limit} rounds"
                    )))
                }
                Err(e) => Err(e.into()),
            }
        }
        Cmd::Volume { input } => {
            let omega = formats::load_cubes(&input)?;
            println!("{}", omega.volume());
            Ok(0)
        }
        Cmd::Tolattice { input, output } => {
            let omega = formats::load_cubes(&input)?;
            lattice_out(cubes::to_lattice(&omega), &output)
        }
        Cmd::Render {
            input,
            plane,
            slice,
            output,
        } => {
            let value = formats::load(&input)?;
            let plane = parse_plane(&plane)?;
            let slice = match slice {
                Some(s) => parse_slice(&s)?,
                None => Vec::new(),
            };
            let svg = render::render_svg(&value, plane, &slice)?;
            emit(&svg, &output)?;
            Ok(0)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code as u8),
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(err.exit_code() as u8)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use tileforge_core::rational::Rat;

    #[test]
    fn plane_and_slice_parsing() {
        assert_eq!(parse_plane("0,1").unwrap(), (0, 1));
        assert!(parse_plane("0").is_err());
        let s = parse_slice("2=0,3=1/2").unwrap();
        assert_eq!(s.len(), 2);
        assert_eq!(s[0], (2, Rat::from_integer(0)));
        assert_eq!(s[1], (3, Rat::new(1, 2)));
        assert!(parse_slice("2:0").is_err());
    }
}
