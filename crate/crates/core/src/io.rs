//! CSV serialization for maps, designs and field dumps.
//!
//! Distances are SI metres, chemical potentials are eV; headers carry the
//! units. Floats are written in shortest round-trip exponent form, so equal
//! inputs always produce byte-identical files.

use num_complex::Complex64;
use std::fmt::Write as _;
use std::path::Path;

use crate::cell::TransmissionMap;
use crate::error::{Error, Result};
use crate::pipeline::FieldProfile;
use crate::synthesis::CellDesign;

pub const MAP_HEADER: &str = "mu_in_eV,mu_out_eV,re_S21,im_S21";
pub const DESIGN_HEADER: &str =
    "cell_index,x_m,mu_in_eV,mu_out_eV,re_H,im_H,re_S21,im_S21,residual";
pub const FIELD_HEADER: &str = "x_m,re_f,im_f";

/// Rows in mu_in-major order: all mu_out values for the first mu_in, etc.
pub fn map_to_csv(map: &TransmissionMap) -> String {
    let mut out = String::with_capacity(map.s21.len() * 48);
    out.push_str(MAP_HEADER);
    out.push('\n');
    for (i, &mi) in map.mu_in.iter().enumerate() {
        for (j, &mo) in map.mu_out.iter().enumerate() {
            let s = map.at(i, j);
            let _ = writeln!(out, "{mi:e},{mo:e},{:e},{:e}", s.re, s.im);
        }
    }
    out
}

pub fn map_from_csv(text: &str) -> Result<TransmissionMap> {
    let mut lines = text.lines().enumerate();
    match lines.next() {
        Some((_, header)) if header.trim() == MAP_HEADER => {}
        Some((_, header)) => {
            return Err(Error::Parse {
                line: 1,
                msg: format!("expected header '{MAP_HEADER}', got '{header}'"),
            })
        }
        None => {
            return Err(Error::Parse {
                line: 1,
                msg: "empty file".into(),
            })
        }
    }

    let mut mu_in: Vec<f64> = Vec::new();
    let mut mu_out: Vec<f64> = Vec::new();
    let mut s21: Vec<Complex64> = Vec::new();
    for (idx, line) in lines {
        let line_no = idx + 1;
        if line.trim().is_empty() {
            continue;
        }
        let fields = parse_floats(line, line_no, 4)?;
        let (mi, mo) = (fields[0], fields[1]);
        if mu_in.last() != Some(&mi) {
            if mu_in.contains(&mi) {
                return Err(Error::Parse {
                    line: line_no,
                    msg: format!("mu_in {mi} revisited out of order"),
                });
            }
            mu_in.push(mi);
        }
        if mu_in.len() == 1 {
            mu_out.push(mo);
        } else {
            let j = s21.len() % mu_out.len();
            if mu_out.get(j) != Some(&mo) {
                return Err(Error::Parse {
                    line: line_no,
                    msg: format!("mu_out {mo} breaks the grid structure"),
                });
            }
        }
        s21.push(Complex64::new(fields[2], fields[3]));
    }
    if mu_in.len() < 2 || mu_out.len() < 2 {
        return Err(Error::Parse {
            line: 1,
            msg: "map needs at least a 2x2 grid".into(),
        });
    }
    if s21.len() != mu_in.len() * mu_out.len() {
        return Err(Error::Parse {
            line: s21.len() + 1,
            msg: format!(
                "expected {} rows for a {}x{} grid, got {}",
                mu_in.len() * mu_out.len(),
                mu_in.len(),
                mu_out.len(),
                s21.len()
            ),
        });
    }
    if !is_strictly_increasing(&mu_in) || !is_strictly_increasing(&mu_out) {
        return Err(Error::Parse {
            line: 2,
            msg: "grid axes must be strictly increasing".into(),
        });
    }
    Ok(TransmissionMap { mu_in, mu_out, s21 })
}

pub fn designs_to_csv(designs: &[CellDesign]) -> String {
    let mut out = String::with_capacity(designs.len() * 96);
    out.push_str(DESIGN_HEADER);
    out.push('\n');
    for d in designs {
        let _ = writeln!(
            out,
            "{},{:e},{:e},{:e},{:e},{:e},{:e},{:e},{:e}",
            d.cell_index,
            d.x,
            d.mu_in_ev,
            d.mu_out_ev,
            d.target.re,
            d.target.im,
            d.achieved.re,
            d.achieved.im,
            d.residual
        );
    }
    out
}

pub fn designs_from_csv(text: &str) -> Result<Vec<CellDesign>> {
    let mut lines = text.lines().enumerate();
    match lines.next() {
        Some((_, header)) if header.trim() == DESIGN_HEADER => {}
        _ => {
            return Err(Error::Parse {
                line: 1,
                msg: format!("expected header '{DESIGN_HEADER}'"),
            })
        }
    }
    let mut designs = Vec::new();
    for (idx, line) in lines {
        let line_no = idx + 1;
        if line.trim().is_empty() {
            continue;
        }
        let fields = parse_floats(line, line_no, 9)?;
        designs.push(CellDesign {
            cell_index: fields[0] as usize,
            x: fields[1],
            mu_in_ev: fields[2],
            mu_out_ev: fields[3],
            target: Complex64::new(fields[4], fields[5]),
            achieved: Complex64::new(fields[6], fields[7]),
            residual: fields[8],
        });
    }
    Ok(designs)
}

pub fn field_to_csv(field: &FieldProfile) -> String {
    let mut out = String::with_capacity(field.samples.len() * 48);
    out.push_str(FIELD_HEADER);
    out.push('\n');
    for (x, s) in field.positions().iter().zip(&field.samples) {
        let _ = writeln!(out, "{x:e},{:e},{:e}", s.re, s.im);
    }
    out
}

fn parse_floats(line: &str, line_no: usize, expected: usize) -> Result<Vec<f64>> {
    let fields: Vec<&str> = line.split(',').collect();
    if fields.len() != expected {
        return Err(Error::Parse {
            line: line_no,
            msg: format!("expected {expected} fields, got {}", fields.len()),
        });
    }
    fields
        .iter()
        .map(|f| {
            f.trim().parse::<f64>().map_err(|e| Error::Parse {
                line: line_no,
                msg: format!("'{f}': {e}"),
            })
        })
        .collect()
}

fn is_strictly_increasing(v: &[f64]) -> bool {
    v.windows(2).all(|w| w[0] < w[1])
}

pub fn write_text(path: &Path, text: &str) -> Result<()> {
    std::fs::write(path, text).map_err(|e| Error::io(path, e))
}

pub fn read_text(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::io(path, e))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small_map() -> TransmissionMap {
        TransmissionMap {
            mu_in: vec![0.2, 0.3],
            mu_out: vec![0.4, 0.5],
            s21: vec![
                Complex64::new(0.1, -0.2),
                Complex64::new(0.3, 0.4),
                Complex64::new(-0.5, 0.6),
                Complex64::new(0.7, -0.8),
            ],
        }
    }

    #[test]
    fn map_roundtrip() {
        let map = small_map();
        let text = map_to_csv(&map);
        let back = map_from_csv(&text).unwrap();
        assert_eq!(map, back);
    }

    #[test]
    fn corrupted_map_names_the_line() {
        let mut text = map_to_csv(&small_map());
        text = text.replace("3e-1,4e-1", "3e-1,oops");
        let err = map_from_csv(&text).unwrap_err();
        match err {
            Error::Parse { line, .. } => assert_eq!(line, 3),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn map_csv_is_deterministic() {
        let map = small_map();
        assert_eq!(map_to_csv(&map), map_to_csv(&map));
    }
}
