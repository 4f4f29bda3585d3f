//! Grid file formats.
//!
//! Binary container (all integers and floats little-endian):
//!
//! ```text
//! offset  size  field
//! 0       8     magic "MFNGRID\0"
//! 8       4     format version (u32, currently 1)
//! 12      4     kind (u32): 1 charfun model, 2 density, 3 charfun empirical
//! 16      4     meta_len (u32)
//! 20      M     meta: UTF-8 JSON, kind-specific
//! 20+M    4     n_rows (u32)
//! ..      4     n_cols (u32)
//! ..      8     row axis step (f64); nodes are (i - n/2) * step
//! ..      8     col axis step (f64)
//! ..      ...   payload: kinds 1,3: rows*cols complex values as
//!               interleaved re,im f64 pairs, row-major; kind 2:
//!               rows*cols f64, row-major
//! ```
//!
//! CSV exports carry their metadata in `# key=value` comment lines and print
//! all floats with 17 significant digits so files round-trip losslessly.

use std::io::{Read, Write};
use std::path::Path;

use num_complex::Complex64;

use crate::density::{DensityGrid, DensityMeta};
use crate::empirical::{EmpiricalCharFun, EmpiricalMeta, SampleSeries};
use crate::error::{Error, Result};
use crate::grid::GridAxis;
use crate::product::{CharFunGrid, CharFunMeta, DecayProfile};

const MAGIC: &[u8; 8] = b"MFNGRID\0";
const VERSION: u32 = 1;

pub const KIND_CHARFUN: u32 = 1;
pub const KIND_DENSITY: u32 = 2;
pub const KIND_EMPIRICAL: u32 = 3;

/// Full round-trip decimal formatting (17 significant digits).
pub fn fmt_f64(x: f64) -> String {
    format!("{x:.16e}")
}

fn write_header<W: Write>(w: &mut W, kind: u32, meta_json: &str) -> Result<()> {
    w.write_all(MAGIC)?;
    w.write_all(&VERSION.to_le_bytes())?;
    w.write_all(&kind.to_le_bytes())?;
    let meta = meta_json.as_bytes();
    w.write_all(&(meta.len() as u32).to_le_bytes())?;
    w.write_all(meta)?;
    Ok(())
}

fn write_axes_and_complex<W: Write>(
    w: &mut W,
    rows: &GridAxis,
    cols: &GridAxis,
    values: &[Complex64],
) -> Result<()> {
    w.write_all(&(rows.len() as u32).to_le_bytes())?;
    w.write_all(&(cols.len() as u32).to_le_bytes())?;
    w.write_all(&rows.step().to_le_bytes())?;
    w.write_all(&cols.step().to_le_bytes())?;
    let mut buf = Vec::with_capacity(values.len() * 16);
    for z in values {
        buf.extend_from_slice(&z.re.to_le_bytes());
        buf.extend_from_slice(&z.im.to_le_bytes());
    }
    w.write_all(&buf)?;
    Ok(())
}

struct RawGrid {
    kind: u32,
    meta: String,
    rows: GridAxis,
    cols: GridAxis,
    payload: Vec<f64>,
}

fn read_raw(path: &Path) -> Result<RawGrid> {
    let mut file = std::fs::File::open(path)?;
    let mut data = Vec::new();
    file.read_to_end(&mut data)?;
    let need = |n: usize, at: usize| -> Result<()> {
        if data.len() < at + n {
            Err(Error::Format(format!("{}: truncated at byte {at}", path.display())))
        } else {
            Ok(())
        }
    };
    need(20, 0)?;
    if &data[..8] != MAGIC {
        return Err(Error::Format(format!("{}: bad magic", path.display())));
    }
    let u32_at = |at: usize| u32::from_le_bytes(data[at..at + 4].try_into().unwrap());
    let version = u32_at(8);
    if version != VERSION {
        return Err(Error::Format(format!(
            "{}: unsupported format version {version}",
            path.display()
        )));
    }
    let kind = u32_at(12);
    let meta_len = u32_at(16) as usize;
    need(meta_len, 20)?;
    let meta = String::from_utf8(data[20..20 + meta_len].to_vec())
        .map_err(|_| Error::Format(format!("{}: metadata is not UTF-8", path.display())))?;
    let mut at = 20 + meta_len;
    need(24, at)?;
    let rows_n = u32_at(at) as usize;
    let cols_n = u32_at(at + 4) as usize;
    let row_step = f64::from_le_bytes(data[at + 8..at + 16].try_into().unwrap());
    let col_step = f64::from_le_bytes(data[at + 16..at + 24].try_into().unwrap());
    at += 24;
    let per_value = if kind == KIND_DENSITY { 1 } else { 2 };
    let count = rows_n
        .checked_mul(cols_n)
        .and_then(|c| c.checked_mul(per_value))
        .ok_or_else(|| Error::Format(format!("{}: implausible dimensions", path.display())))?;
    need(count * 8, at)?;
    let mut payload = Vec::with_capacity(count);
    for k in 0..count {
        let o = at + 8 * k;
        payload.push(f64::from_le_bytes(data[o..o + 8].try_into().unwrap()));
    }
    Ok(RawGrid {
        kind,
        meta,
        rows: GridAxis::new(rows_n, row_step)?,
        cols: GridAxis::new(cols_n, col_step)?,
        payload,
    })
}

fn complex_payload(payload: Vec<f64>) -> Vec<Complex64> {
    payload.chunks_exact(2).map(|c| Complex64::new(c[0], c[1])).collect()
}

pub fn write_charfun_binary(path: &Path, grid: &CharFunGrid) -> Result<()> {
    let mut w = std::io::BufWriter::new(std::fs::File::create(path)?);
    write_header(&mut w, KIND_CHARFUN, &serde_json::to_string(&grid.meta)?)?;
    write_axes_and_complex(&mut w, &grid.u_axis, &grid.v_axis, &grid.values)?;
    Ok(())
}

pub fn read_charfun_binary(path: &Path) -> Result<CharFunGrid> {
    let raw = read_raw(path)?;
    if raw.kind != KIND_CHARFUN {
        return Err(Error::Format(format!(
            "{}: expected a charfun grid (kind 1), found kind {}",
            path.display(),
            raw.kind
        )));
    }
    let meta: CharFunMeta = serde_json::from_str(&raw.meta)?;
    Ok(CharFunGrid {
        u_axis: raw.rows,
        v_axis: raw.cols,
        values: complex_payload(raw.payload),
        meta,
    })
}

pub fn write_density_binary(path: &Path, grid: &DensityGrid) -> Result<()> {
    let mut w = std::io::BufWriter::new(std::fs::File::create(path)?);
    write_header(&mut w, KIND_DENSITY, &serde_json::to_string(&grid.meta)?)?;
    w.write_all(&(grid.x_axis.len() as u32).to_le_bytes())?;
    w.write_all(&(grid.y_axis.len() as u32).to_le_bytes())?;
    w.write_all(&grid.x_axis.step().to_le_bytes())?;
    w.write_all(&grid.y_axis.step().to_le_bytes())?;
    let mut buf = Vec::with_capacity(grid.values.len() * 8);
    for v in &grid.values {
        buf.extend_from_slice(&v.to_le_bytes());
    }
    w.write_all(&buf)?;
    Ok(())
}

pub fn read_density_binary(path: &Path) -> Result<DensityGrid> {
    let raw = read_raw(path)?;
    if raw.kind != KIND_DENSITY {
        return Err(Error::Format(format!(
            "{}: expected a density grid (kind 2), found kind {}",
            path.display(),
            raw.kind
        )));
    }
    let meta: DensityMeta = serde_json::from_str(&raw.meta)?;
    Ok(DensityGrid { x_axis: raw.rows, y_axis: raw.cols, values: raw.payload, meta })
}

pub fn write_empirical_binary(path: &Path, grid: &EmpiricalCharFun) -> Result<()> {
    let mut w = std::io::BufWriter::new(std::fs::File::create(path)?);
    write_header(&mut w, KIND_EMPIRICAL, &serde_json::to_string(&grid.meta)?)?;
    write_axes_and_complex(&mut w, &grid.u_axis, &grid.v_axis, &grid.values)?;
    Ok(())
}

pub fn read_empirical_binary(path: &Path) -> Result<EmpiricalCharFun> {
    let raw = read_raw(path)?;
    if raw.kind != KIND_EMPIRICAL {
        return Err(Error::Format(format!(
            "{}: expected an empirical grid (kind 3), found kind {}",
            path.display(),
            raw.kind
        )));
    }
    let meta: EmpiricalMeta = serde_json::from_str(&raw.meta)?;
    Ok(EmpiricalCharFun {
        u_axis: raw.rows,
        v_axis: raw.cols,
        values: complex_payload(raw.payload),
        meta,
    })
}

pub fn charfun_csv<W: Write>(w: &mut W, grid: &CharFunGrid) -> Result<()> {
    writeln!(
        w,
        "# sigma={} prime_cutoff={} quad_prime_cutoff={} tail_tol={} flavor={}",
        fmt_f64(grid.meta.sigma),
        grid.meta.prime_cutoff,
        grid.meta.quad_prime_cutoff,
        fmt_f64(grid.meta.tail_tol),
        grid.meta.flavor
    )?;
    writeln!(w, "u,v,re_m,im_m")?;
    for i in 0..grid.u_axis.len() {
        let u = grid.u_axis.node(i);
        for j in 0..grid.v_axis.len() {
            let z = grid.value_at(i, j);
            writeln!(
                w,
                "{},{},{},{}",
                fmt_f64(u),
                fmt_f64(grid.v_axis.node(j)),
                fmt_f64(z.re),
                fmt_f64(z.im)
            )?;
        }
    }
    Ok(())
}

pub fn density_csv<W: Write>(w: &mut W, grid: &DensityGrid) -> Result<()> {
    writeln!(
        w,
        "# sigma={} flavor={} normalization_residual={} max_imag={} boundary_max={}",
        fmt_f64(grid.meta.sigma),
        grid.meta.flavor,
        fmt_f64(grid.meta.normalization_residual),
        fmt_f64(grid.meta.max_imag),
        fmt_f64(grid.meta.boundary_max)
    )?;
    writeln!(w, "x,y,M")?;
    for a in 0..grid.x_axis.len() {
        let x = grid.x_axis.node(a);
        for b in 0..grid.y_axis.len() {
            writeln!(
                w,
                "{},{},{}",
                fmt_f64(x),
                fmt_f64(grid.y_axis.node(b)),
                fmt_f64(grid.value_at(a, b))
            )?;
        }
    }
    Ok(())
}

pub fn samples_csv<W: Write>(w: &mut W, samples: &SampleSeries) -> Result<()> {
    let c = &samples.config;
    writeln!(
        w,
        "# sigma={} T={} x={} mode={} seed={} jitter={} flavor={}",
        fmt_f64(c.sigma),
        fmt_f64(c.t_max),
        fmt_f64(c.x),
        c.mode.as_str(),
        c.seed,
        c.jitter,
        samples.flavor
    )?;
    writeln!(w, "t,re,im")?;
    for (t, v) in samples.t_values.iter().zip(&samples.values) {
        writeln!(w, "{},{},{}", fmt_f64(*t), fmt_f64(v.re), fmt_f64(v.im))?;
    }
    Ok(())
}

pub fn decay_csv<W: Write>(w: &mut W, profile: &DecayProfile, sigma: f64) -> Result<()> {
    writeln!(
        w,
        "# sigma={} fitted_exponent={} conclusive={}",
        fmt_f64(sigma),
        profile.fitted_exponent.map(fmt_f64).unwrap_or_else(|| "nan".into()),
        profile.conclusive
    )?;
    writeln!(w, "r_lo,r_hi,count,max_abs")?;
    for s in &profile.shells {
        writeln!(
            w,
            "{},{},{},{}",
            fmt_f64(s.r_lo),
            fmt_f64(s.r_hi),
            s.count,
            fmt_f64(s.max_abs)
        )?;
    }
    Ok(())
}
