//! Plain-text set files.
//!
//! Every file starts with a header `<kind> <version> …`; rows follow one
//! point per line as space-separated integers. Saving is canonical
//! (sorted rows, minimal shared denominator), so equal values produce
//! byte-identical files.
//!
//! ```text
//! latset 1 <dim>              points of Z^dim
//! cubeset 1 <dim> <denom>     scaled lower cube corners
//! ratset 1 <dim> <denom>      scaled rational vectors
//! bridgespec 1 <d> <k> <n>    n path rows (d ints), then n shape rows (k ints)
//! ```

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use num_integer::Integer;

use tileforge_core::bridges::BridgeSpec;
use tileforge_core::cubes::CubeSet;
use tileforge_core::lattice::{LatticeSet, Point};
use tileforge_core::rational::RationalVector;

use crate::error::{CliError, CliResult};

/// Any value a set file can hold.
#[derive(Debug, Clone)]
pub enum SetValue {
    Lattice(LatticeSet),
    Cubes(CubeSet),
    Rationals(Vec<RationalVector>),
}

impl SetValue {
    pub fn kind(&self) -> &'static str {
        match self {
            SetValue::Lattice(_) => "latset",
            SetValue::Cubes(_) => "cubeset",
            SetValue::Rationals(_) => "ratset",
        }
    }
}

fn parse_err(path: &Path, line: usize, msg: impl Into<String>) -> CliError {
    CliError::Parse {
        path: path.to_path_buf(),
        line,
        msg: msg.into(),
    }
}

fn validation_err(path: &Path, msg: impl Into<String>) -> CliError {
    CliError::Validation {
        path: path.to_path_buf(),
        msg: msg.into(),
    }
}

fn parse_row(path: &Path, lineno: usize, line: &str, arity: usize) -> CliResult<Vec<i64>> {
    let fields: Vec<&str> = line.split_whitespace().collect();
    if fields.len() != arity {
        return Err(parse_err(
            path,
            lineno,
            format!("expected {arity} integers, found {}", fields.len()),
        ));
    }
    fields
        .iter()
        .map(|f| {
            f.parse::<i64>()
                .map_err(|_| parse_err(path, lineno, format!("invalid integer {f:?}")))
        })
        .collect()
}

/// Parses the text of a set file.
pub fn parse(path: &Path, text: &str) -> CliResult<SetValue> {
    let mut lines = text.lines().enumerate();
    let (_, header) = lines
        .next()
        .ok_or_else(|| parse_err(path, 1, "empty file"))?;
    let fields: Vec<&str> = header.split_whitespace().collect();
    if fields.len() < 2 || fields[1] != "1" {
        return Err(parse_err(path, 1, "header must be '<kind> 1 ...'"));
    }
    let usize_field = |idx: usize, name: &str| -> CliResult<usize> {
        fields
            .get(idx)
            .and_then(|f| f.parse::<usize>().ok())
            .filter(|&v| v >= 1)
            .ok_or_else(|| parse_err(path, 1, format!("bad or missing {name}")))
    };

    match fields[0] {
        "latset" => {
            if fields.len() != 3 {
                return Err(parse_err(path, 1, "header must be 'latset 1 <dim>'"));
            }
            let dim = usize_field(2, "dimension")?;
            let mut rows = Vec::new();
            for (i, line) in lines {
                if line.trim().is_empty() {
                    continue;
                }
                let row = parse_row(path, i + 1, line, dim)?;
                rows.push(Point(row));
            }
            let count = rows.len();
            let set = LatticeSet::new(dim, rows).map_err(|e| validation_err(path, e.to_string()))?;
            if set.len() != count {
                return Err(validation_err(path, "duplicate rows"));
            }
            Ok(SetValue::Lattice(set))
        }
        "cubeset" => {
            if fields.len() != 4 {
                return Err(parse_err(path, 1, "header must be 'cubeset 1 <dim> <denom>'"));
            }
            let dim = usize_field(2, "dimension")?;
            let denom = usize_field(3, "denominator")? as i64;
            let mut rows = Vec::new();
            for (i, line) in lines {
                if line.trim().is_empty() {
                    continue;
                }
                rows.push(Point(parse_row(path, i + 1, line, dim)?));
            }
            let count = rows.len();
            let set = CubeSet::new(dim, denom, rows)
                .map_err(|e| validation_err(path, e.to_string()))?;
            if set.volume() as usize != count {
                return Err(validation_err(path, "duplicate rows"));
            }
            Ok(SetValue::Cubes(set))
        }
        "ratset" => {
            if fields.len() != 4 {
                return Err(parse_err(path, 1, "header must be 'ratset 1 <dim> <denom>'"));
            }
            let dim = usize_field(2, "dimension")?;
            let denom = usize_field(3, "denominator")? as i64;
            let mut vecs = Vec::new();
            for (i, line) in lines {
                if line.trim().is_empty() {
                    continue;
                }
                let row = parse_row(path, i + 1, line, dim)?;
                vecs.push(
                    RationalVector::new(row, denom)
                        .map_err(|e| validation_err(path, e.to_string()))?,
                );
            }
            let count = vecs.len();
            vecs.sort();
            vecs.dedup();
            if vecs.len() != count {
                return Err(validation_err(path, "duplicate rows"));
            }
            Ok(SetValue::Rationals(vecs))
        }
        other => Err(parse_err(path, 1, format!("unknown kind {other:?}"))),
    }
}

/// Loads a set file from disk.
pub fn load(path: &Path) -> CliResult<SetValue> {
    let text = std::fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    parse(path, &text)
}

pub fn load_lattice(path: &Path) -> CliResult<LatticeSet> {
    match load(path)? {
        SetValue::Lattice(s) => Ok(s),
        other => Err(validation_err(
            path,
            format!("expected a latset file, found {}", other.kind()),
        )),
    }
}

pub fn load_cubes(path: &Path) -> CliResult<CubeSet> {
    match load(path)? {
        SetValue::Cubes(s) => Ok(s),
        other => Err(validation_err(
            path,
            format!("expected a cubeset file, found {}", other.kind()),
        )),
    }
}

pub fn load_rationals(path: &Path) -> CliResult<Vec<RationalVector>> {
    match load(path)? {
        SetValue::Rationals(v) => Ok(v),
        other => Err(validation_err(
            path,
            format!("expected a ratset file, found {}", other.kind()),
        )),
    }
}

/// Canonical text form of a value.
pub fn format_value(value: &SetValue) -> String {
    let mut out = String::new();
    match value {
        SetValue::Lattice(set) => {
            writeln!(out, "latset 1 {}", set.dim()).unwrap();
            for p in set.points() {
                writeln!(out, "{}", join_coords(&p.0)).unwrap();
            }
        }
        SetValue::Cubes(set) => {
            writeln!(out, "cubeset 1 {} {}", set.dim(), set.denom()).unwrap();
            for c in set.corners() {
                writeln!(out, "{}", join_coords(&c.0)).unwrap();
            }
        }
        SetValue::Rationals(vecs) => {
            let mut vecs = vecs.clone();
            vecs.sort();
            vecs.dedup();
            let dim = vecs.first().map_or(1, |v| v.dim());
            let denom = vecs
                .iter()
                .fold(1i64, |acc, v| acc.lcm(&v.denominator()));
            writeln!(out, "ratset 1 {dim} {denom}").unwrap();
            for v in &vecs {
                let f = denom / v.denominator();
                let nums: Vec<i64> = v.numerators().iter().map(|&n| n * f).collect();
                writeln!(out, "{}", join_coords(&nums)).unwrap();
            }
        }
    }
    out
}

fn join_coords(coords: &[i64]) -> String {
    coords
        .iter()
        .map(|c| c.to_string())
        .collect::<Vec<_>>()
        .join(" ")
}

/// Writes a value to disk in canonical form.
pub fn save(value: &SetValue, path: &Path) -> CliResult<()> {
    std::fs::write(path, format_value(value)).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })
}

/// Canonical text form of a bridge spec.
pub fn format_bridgespec(spec: &BridgeSpec) -> String {
    let mut out = String::new();
    writeln!(
        out,
        "bridgespec 1 {} {} {}",
        spec.path_dim(),
        spec.shape_dim(),
        spec.len()
    )
    .unwrap();
    for v in &spec.path {
        writeln!(out, "{}", join_coords(&v.0)).unwrap();
    }
    for s in &spec.shape {
        writeln!(out, "{}", join_coords(&s.0)).unwrap();
    }
    out
}

/// Loads a bridge spec file.
pub fn load_bridgespec(path: &Path) -> CliResult<BridgeSpec> {
    let text = std::fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    let lines: Vec<(usize, &str)> = text
        .lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty())
        .collect();
    let Some(&(_, header)) = lines.first() else {
        return Err(parse_err(path, 1, "empty file"));
    };
    let fields: Vec<&str> = header.split_whitespace().collect();
    if fields.len() != 5 || fields[0] != "bridgespec" || fields[1] != "1" {
        return Err(parse_err(path, 1, "header must be 'bridgespec 1 <d> <k> <n>'"));
    }
    let nums: Vec<usize> = fields[2..]
        .iter()
        .map(|f| {
            f.parse::<usize>()
                .ok()
                .filter(|&v| v >= 1)
                .ok_or_else(|| parse_err(path, 1, "bad header field"))
        })
        .collect::<CliResult<Vec<_>>>()?;
    let (d, k, n) = (nums[0], nums[1], nums[2]);
    if lines.len() != 1 + 2 * n {
        return Err(parse_err(
            path,
            lines.last().map_or(1, |(i, _)| i + 1),
            format!("expected {} rows after the header", 2 * n),
        ));
    }
    let mut path_rows = Vec::with_capacity(n);
    for &(i, line) in &lines[1..1 + n] {
        path_rows.push(Point(parse_row(path, i + 1, line, d)?));
    }
    let mut shape_rows = Vec::with_capacity(n);
    for &(i, line) in &lines[1 + n..] {
        shape_rows.push(Point(parse_row(path, i + 1, line, k)?));
    }
    BridgeSpec::new(path_rows, shape_rows).map_err(|e| validation_err(path, e.to_string()))
}

/// Writes a bridge spec to disk.
pub fn save_bridgespec(spec: &BridgeSpec, path: &Path) -> CliResult<()> {
    std::fs::write(path, format_bridgespec(spec)).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })
}

/// Parses a group flag like "6x4x2".
pub fn parse_group(text: &str) -> CliResult<tileforge_core::torus::FiniteAbelianGroup> {
    let moduli: Vec<i64> = text
        .split('x')
        .map(|f| {
            f.trim()
                .parse::<i64>()
                .ok()
                .filter(|&n| n >= 1)
                .ok_or_else(|| CliError::Usage(format!("bad group modulus {f:?} in {text:?}")))
        })
        .collect::<CliResult<Vec<_>>>()?;
    tileforge_core::torus::FiniteAbelianGroup::new(moduli).map_err(CliError::from)
}

/// Parses a rational vector flag like "1/2,-3,5/4".
pub fn parse_rational_vector(text: &str) -> CliResult<RationalVector> {
    let mut rats = Vec::new();
    for part in text.split(',') {
        let part = part.trim();
        let (num, den) = match part.split_once('/') {
            Some((n, d)) => (n, d),
            None => (part, "1"),
        };
        let n: i64 = num
            .parse()
            .map_err(|_| CliError::Usage(format!("bad rational {part:?}")))?;
        let d: i64 = den
            .parse()
            .ok()
            .filter(|&d| d > 0)
            .ok_or_else(|| CliError::Usage(format!("bad rational {part:?}")))?;
        rats.push(tileforge_core::rational::Rat::new(n as i128, d as i128));
    }
    RationalVector::from_rats(&rats).map_err(CliError::from)
}

/// The default search budget: TILEFORGE_BUDGET_DEFAULT or 1_000_000.
pub fn default_budget() -> u64 {
    std::env::var("TILEFORGE_BUDGET_DEFAULT")
        .ok()
        .and_then(|v| v.parse().ok())
        .unwrap_or(1_000_000)
}

pub type OutPath = Option<PathBuf>;

/// Prints to stdout or writes to `out` when given.
pub fn emit(text: &str, out: &OutPath) -> CliResult<()> {
    match out {
        Some(path) => std::fs::write(path, text).map_err(|source| CliError::Io {
            path: path.clone(),
            source,
        }),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::path::Path;

    #[test]
    fn latset_round_trip() {
        let text = "latset 1 1\n0\n3\n";
        let v = parse(Path::new("t"), text).unwrap();
        match &v {
            SetValue::Lattice(s) => assert_eq!(*s, LatticeSet::from_i64s(&[0, 3])),
            _ => panic!("wrong kind"),
        }
        assert_eq!(format_value(&v), text);
    }

    #[test]
    fn arity_error_carries_line() {
        let err = parse(Path::new("t"), "latset 1 1\n0 1\n").unwrap_err();
        match err {
            CliError::Parse { line, .. } => assert_eq!(line, 2),
            other => panic!("expected parse error, got {other}"),
        }
    }

    #[test]
    fn duplicate_rows_rejected() {
        assert!(parse(Path::new("t"), "latset 1 1\n0\n0\n").is_err());
        assert!(parse(Path::new("t"), "cubeset 1 1 1\n2\n2\n").is_err());
    }

    #[test]
    fn cubeset_invariant_enforced() {
        let bad = "cubeset 1 2 2\n0 0\n1 0\n";
        assert!(parse(Path::new("t"), bad).is_err());
        let good = "cubeset 1 2 2\n0 0\n2 0\n";
        assert!(parse(Path::new("t"), good).is_ok());
    }

    #[test]
    fn ratset_canonical_save() {
        let v = SetValue::Rationals(vec![
            RationalVector::new(vec![1], 2).unwrap(),
            RationalVector::new(vec![-2], 3).unwrap(),
        ]);
        let text = format_value(&v);
        assert_eq!(text, "ratset 1 1 6\n-4\n3\n");
        let back = parse(Path::new("t"), &text).unwrap();
        match back {
            SetValue::Rationals(w) => {
                assert_eq!(w.len(), 2);
                assert!(w.contains(&RationalVector::new(vec![1], 2).unwrap()));
            }
            _ => panic!("wrong kind"),
        }
    }

    #[test]
    fn group_and_vector_flags() {
        let g = parse_group("6x4x2").unwrap();
        assert_eq!(g.order(), 48);
        assert!(parse_group("6xx").is_err());
        let v = parse_rational_vector("1/2,-3").unwrap();
        assert_eq!(v.numerators(), &[1, -6]);
        assert_eq!(v.denominator(), 2);
        assert!(parse_rational_vector("1/0").is_err());
    }
}
