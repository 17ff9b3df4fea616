//! On-disk formats.
//!
//! Every file is plain CSV preceded by `# key = value` comment lines that
//! record how the data was produced (couplings, grid, seed, tool
//! version…).  Floats are written with 17 significant digits, so a
//! write/read cycle reproduces every f64 bit for bit.

use std::fs::File;
use std::io::{BufRead, BufReader, BufWriter, Write};
use std::path::Path;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::field::FieldState;
use crate::flow::FlowSample;
use crate::grid::Grid2D;
use crate::radial::{RadialProfile, Termination};

/// Header metadata as ordered key/value pairs.
pub type Meta = Vec<(String, String)>;

pub fn meta_get<'a>(meta: &'a Meta, key: &str) -> Option<&'a str> {
    meta.iter().find(|(k, _)| k == key).map(|(_, v)| v.as_str())
}

fn require<'a>(meta: &'a Meta, key: &str) -> Result<&'a str> {
    meta_get(meta, key).ok_or_else(|| Error::Domain(format!("file header is missing '{key}'")))
}

fn require_f64(meta: &Meta, key: &str) -> Result<f64> {
    let raw = require(meta, key)?;
    raw.parse().map_err(|_| Error::Domain(format!("header key '{key}' is not a number: '{raw}'")))
}

fn require_usize(meta: &Meta, key: &str) -> Result<usize> {
    let raw = require(meta, key)?;
    raw.parse().map_err(|_| Error::Domain(format!("header key '{key}' is not an integer: '{raw}'")))
}

fn write_meta(f: &mut impl Write, format: &str, meta: &Meta) -> Result<()> {
    writeln!(f, "# format = {format}")?;
    for (k, v) in meta {
        writeln!(f, "# {k} = {v}")?;
    }
    Ok(())
}

/// Split a file into header metadata and (line-numbered) data rows; the
/// first non-comment line must equal `columns`.
fn read_rows(path: &Path, format: &str, columns: &str) -> Result<(Meta, Vec<(usize, Vec<f64>)>)> {
    let reader = BufReader::new(File::open(path)?);
    let mut meta = Meta::new();
    let mut rows = Vec::new();
    let mut saw_columns = false;
    let n_cols = columns.split(',').count();
    for (idx, line) in reader.lines().enumerate() {
        let line_no = idx + 1;
        let line = line?;
        let trimmed = line.trim();
        if trimmed.is_empty() {
            continue;
        }
        if let Some(rest) = trimmed.strip_prefix('#') {
            if let Some((k, v)) = rest.split_once('=') {
                meta.push((k.trim().to_string(), v.trim().to_string()));
            }
            continue;
        }
        if !saw_columns {
            if trimmed != columns {
                return Err(Error::Parse {
                    line: line_no,
                    msg: format!("expected column header '{columns}', found '{trimmed}'"),
                });
            }
            saw_columns = true;
            continue;
        }
        let mut row = Vec::with_capacity(n_cols);
        for piece in trimmed.split(',') {
            row.push(piece.trim().parse::<f64>().map_err(|_| Error::Parse {
                line: line_no,
                msg: format!("not a number: '{piece}'"),
            })?);
        }
        if row.len() != n_cols {
            return Err(Error::Parse {
                line: line_no,
                msg: format!("expected {n_cols} columns, found {}", row.len()),
            });
        }
        rows.push((line_no, row));
    }
    match meta_get(&meta, "format") {
        Some(found) if found == format => {}
        Some(found) => {
            return Err(Error::Domain(format!("file is '{found}', expected '{format}'")))
        }
        None => return Err(Error::Domain(format!("file lacks a format header (expected '{format}')"))),
    }
    if !saw_columns {
        return Err(Error::Parse { line: 0, msg: format!("no column header '{columns}' found") });
    }
    Ok((meta, rows))
}

pub fn write_profile(path: &Path, profile: &RadialProfile, meta: &Meta) -> Result<()> {
    let mut f = BufWriter::new(File::create(path)?);
    write_meta(&mut f, "radial-profile", meta)?;
    writeln!(f, "# termination = {}", profile.termination.label())?;
    writeln!(f, "# samples = {}", profile.r.len())?;
    writeln!(f, "r,u,a,du,da")?;
    for k in 0..profile.r.len() {
        writeln!(
            f,
            "{:.16e},{:.16e},{:.16e},{:.16e},{:.16e}",
            profile.r[k], profile.u[k], profile.a[k], profile.du[k], profile.da[k]
        )?;
    }
    Ok(())
}

pub fn read_profile(path: &Path) -> Result<(RadialProfile, Meta)> {
    let (meta, rows) = read_rows(path, "radial-profile", "r,u,a,du,da")?;
    let termination = Termination::from_label(require(&meta, "termination")?)?;
    let n = rows.len();
    let mut cols = vec![Vec::with_capacity(n); 5];
    for (_, row) in &rows {
        for (c, col) in cols.iter_mut().enumerate() {
            col.push(row[c]);
        }
    }
    let da = cols.pop().unwrap();
    let du = cols.pop().unwrap();
    let a = cols.pop().unwrap();
    let u = cols.pop().unwrap();
    let r = cols.pop().unwrap();
    let profile = RadialProfile::new(r, u, a, du, da, termination)?;
    Ok((profile, meta))
}

pub fn write_snapshot(path: &Path, state: &FieldState, meta: &Meta) -> Result<()> {
    let g = &state.grid;
    let mut f = BufWriter::new(File::create(path)?);
    write_meta(&mut f, "field-snapshot", meta)?;
    writeln!(f, "# nx = {}", g.nx)?;
    writeln!(f, "# ny = {}", g.ny)?;
    writeln!(f, "# x_min = {:.16e}", g.x_min)?;
    writeln!(f, "# x_max = {:.16e}", g.x_max)?;
    writeln!(f, "# y_min = {:.16e}", g.y_min)?;
    writeln!(f, "# y_max = {:.16e}", g.y_max)?;
    writeln!(f, "x,y,re_omega,im_omega,a1,a2")?;
    for iy in 0..g.ny {
        for ix in 0..g.nx {
            let k = g.idx(ix, iy);
            writeln!(
                f,
                "{:.16e},{:.16e},{:.16e},{:.16e},{:.16e},{:.16e}",
                g.x(ix),
                g.y(iy),
                state.omega[k].re,
                state.omega[k].im,
                state.a1[k],
                state.a2[k]
            )?;
        }
    }
    Ok(())
}

pub fn read_snapshot(path: &Path) -> Result<(FieldState, Meta)> {
    let (meta, rows) = read_rows(path, "field-snapshot", "x,y,re_omega,im_omega,a1,a2")?;
    let grid = Grid2D::new(
        require_usize(&meta, "nx")?,
        require_usize(&meta, "ny")?,
        require_f64(&meta, "x_min")?,
        require_f64(&meta, "x_max")?,
        require_f64(&meta, "y_min")?,
        require_f64(&meta, "y_max")?,
    )?;
    if rows.len() != grid.n_nodes() {
        return Err(Error::Shape(format!(
            "snapshot holds {} rows but the declared grid has {} nodes",
            rows.len(),
            grid.n_nodes()
        )));
    }
    let mut omega = Vec::with_capacity(rows.len());
    let mut a1 = Vec::with_capacity(rows.len());
    let mut a2 = Vec::with_capacity(rows.len());
    for (_, row) in &rows {
        omega.push(Complex64::new(row[2], row[3]));
        a1.push(row[4]);
        a2.push(row[5]);
    }
    let state = FieldState::new(grid, omega, a1, a2)?;
    Ok((state, meta))
}

pub fn write_history(path: &Path, history: &[FlowSample], meta: &Meta) -> Result<()> {
    let mut f = BufWriter::new(File::create(path)?);
    write_meta(&mut f, "flow-history", meta)?;
    writeln!(f, "iter,energy,grad_norm,step")?;
    for s in history {
        writeln!(f, "{},{:.16e},{:.16e},{:.16e}", s.iter, s.energy, s.grad_norm, s.step)?;
    }
    Ok(())
}
