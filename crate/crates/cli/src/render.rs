//! Deterministic SVG rendering of lattice and cube sets.
//!
//! One axis-aligned unit square per cell/cube intersecting the requested
//! plane slice, 20 px per unit, y pointing up. Equal inputs yield
//! byte-identical output.

use std::fmt::Write as _;

use num_traits::ToPrimitive;

use tileforge_core::rational::Rat;

use crate::error::{CliError, CliResult};
use crate::formats::SetValue;

const UNIT: f64 = 20.0;

/// A slice assignment: fixed rational value for one coordinate.
pub type Slice = Vec<(usize, Rat)>;

/// Renders the plane projection of `value` restricted to `slice`.
pub fn render_svg(value: &SetValue, plane: (usize, usize), slice: &Slice) -> CliResult<String> {
    let dim = match value {
        SetValue::Lattice(s) => s.dim(),
        SetValue::Cubes(s) => s.dim(),
        SetValue::Rationals(_) => {
            return Err(CliError::Render("rational sets have no renderer".into()))
        }
    };
    let (px, py) = plane;
    if px == py || px >= dim || py >= dim {
        return Err(CliError::Render(format!(
            "plane ({px},{py}) invalid for dimension {dim}"
        )));
    }
    for &(i, _) in slice {
        if i >= dim {
            return Err(CliError::Render(format!(
                "slice coordinate {i} out of range for dimension {dim}"
            )));
        }
        if i == px || i == py {
            return Err(CliError::Render(format!(
                "slice coordinate {i} is a plane axis"
            )));
        }
    }
    let mut fixed: Vec<Option<Rat>> = vec![None; dim];
    for &(i, v) in slice {
        if fixed[i].replace(v).is_some() {
            return Err(CliError::Render(format!("slice assigns coordinate {i} twice")));
        }
    }
    for (i, value) in fixed.iter().enumerate() {
        if i != px && i != py && value.is_none() {
            return Err(CliError::Render(format!(
                "coordinate {i} needs a slice value"
            )));
        }
    }

    // Collect unit squares as exact lower corners in the plane.
    let mut squares: Vec<(Rat, Rat)> = Vec::new();
    match value {
        SetValue::Lattice(set) => {
            for p in set.points() {
                let hit = (0..dim).all(|i| match &fixed[i] {
                    Some(v) => *v == Rat::from_integer(p.0[i] as i128),
                    None => true,
                });
                if hit {
                    squares.push((
                        Rat::from_integer(p.0[px] as i128),
                        Rat::from_integer(p.0[py] as i128),
                    ));
                }
            }
        }
        SetValue::Cubes(set) => {
            let l = set.denom() as i128;
            for c in set.corners() {
                let hit = (0..dim).all(|i| match &fixed[i] {
                    Some(v) => {
                        let lo = Rat::new(c.0[i] as i128, l);
                        lo <= *v && *v <= lo + Rat::from_integer(1)
                    }
                    None => true,
                });
                if hit {
                    squares.push((Rat::new(c.0[px] as i128, l), Rat::new(c.0[py] as i128, l)));
                }
            }
        }
        SetValue::Rationals(_) => unreachable!("rejected above"),
    }
    squares.sort();
    squares.dedup();

    let mut out = String::new();
    out.push_str("<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n");
    if squares.is_empty() {
        out.push_str(
            "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" viewBox=\"0 0 40 40\">\n</svg>\n",
        );
        return Ok(out);
    }

    let min_x = squares.iter().map(|(x, _)| *x).min().unwrap();
    let max_x = squares.iter().map(|(x, _)| *x).max().unwrap() + Rat::from_integer(1);
    let min_y = squares.iter().map(|(_, y)| *y).min().unwrap();
    let max_y = squares.iter().map(|(_, y)| *y).max().unwrap() + Rat::from_integer(1);
    let width = (max_x - min_x).to_f64().unwrap() * UNIT + 2.0 * UNIT;
    let height = (max_y - min_y).to_f64().unwrap() * UNIT + 2.0 * UNIT;
    writeln!(
        out,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" viewBox=\"0 0 {} {}\">",
        fmt_px(width),
        fmt_px(height)
    )
    .unwrap();
    for (x, y) in &squares {
        let sx = (*x - min_x).to_f64().unwrap() * UNIT + UNIT;
        // SVG y grows downward; flip so the square [y, y+1] sits right.
        let sy = (max_y - *y - Rat::from_integer(1)).to_f64().unwrap() * UNIT + UNIT;
        writeln!(
            out,
            "<rect x=\"{}\" y=\"{}\" width=\"20\" height=\"20\" fill=\"#a6bddb\" stroke=\"#2b2b2b\" stroke-width=\"1\"/>",
            fmt_px(sx),
            fmt_px(sy)
        )
        .unwrap();
    }
    out.push_str("</svg>\n");
    Ok(out)
}

fn fmt_px(v: f64) -> String {
    let s = format!("{v:.3}");
    let s = s.trim_end_matches('0').trim_end_matches('.');
    if s.is_empty() || s == "-" {
        "0".to_string()
    } else {
        s.to_string()
    }
}
