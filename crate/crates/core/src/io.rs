//! Flat-file emitters: CSV tables, a four-panel SVG figure and atomic
//! writes.

use std::fmt::Write as _;
use std::io;
use std::path::Path;

use thiserror::Error;

use crate::analytic::AnalyticLevel;
use crate::model::Parity;

/// Formats like C's `%.12g`.
pub fn fmt_g12(x: f64) -> String {
    fmt_g(x, 12)
}

pub fn fmt_g(x: f64, precision: usize) -> String {
    if x.is_nan() {
        return "nan".into();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    if x == 0.0 {
        return if x.is_sign_negative() {
            "-0".into()
        } else {
            "0".into()
        };
    }
    let p = precision.max(1);
    let sci = format!("{:.*e}", p - 1, x);
    let (mant, exp) = sci.split_once('e').expect("exponent");
    let exp: i32 = exp.parse().expect("exponent digits");
    if exp < -4 || exp >= p as i32 {
        let mant = strip_zeros(mant);
        let sign = if exp < 0 { '-' } else { '+' };
        format!("{mant}e{sign}{:02}", exp.abs())
    } else {
        let decimals = (p as i32 - 1 - exp).max(0) as usize;
        strip_zeros(&format!("{:.*}", decimals, x)).to_string()
    }
}

fn strip_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

pub const SPECTRUM_HEADER: &str = "g,parity,index,energy";
pub const CLAIMED_HEADER: &str = "g,subspectrum,n,branch,energy";
pub const SUMMARY_HEADER: &str = "g,max_distance";

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpectrumRow {
    pub g: f64,
    pub parity: Parity,
    pub index: usize,
    pub energy: f64,
}

pub fn spectrum_csv(rows: &[SpectrumRow]) -> String {
    let mut s = String::with_capacity(rows.len() * 32);
    s.push_str(SPECTRUM_HEADER);
    s.push('\n');
    for r in rows {
        let _ = writeln!(
            s,
            "{},{},{},{}",
            fmt_g12(r.g),
            r.parity,
            r.index,
            fmt_g12(r.energy)
        );
    }
    s
}

#[derive(Debug, Error, PartialEq)]
pub enum CsvError {
    #[error("missing or wrong header, expected `{expected}`")]
    Header { expected: &'static str },
    #[error("line {line}: {msg}")]
    Row { line: usize, msg: String },
}

pub fn parse_spectrum_csv(text: &str) -> Result<Vec<SpectrumRow>, CsvError> {
    let mut lines = text.lines();
    if lines.next() != Some(SPECTRUM_HEADER) {
        return Err(CsvError::Header {
            expected: SPECTRUM_HEADER,
        });
    }
    let mut out = Vec::new();
    for (i, line) in lines.enumerate() {
        if line.is_empty() {
            continue;
        }
        let bad = |msg: &str| CsvError::Row {
            line: i + 2,
            msg: msg.to_string(),
        };
        let f: Vec<&str> = line.split(',').collect();
        if f.len() != 4 {
            return Err(bad("expected 4 fields"));
        }
        let g = f[0].parse().map_err(|_| bad("bad g"))?;
        let parity = match f[1] {
            "+1" => Parity::Plus,
            "-1" => Parity::Minus,
            _ => return Err(bad("bad parity")),
        };
        let index = f[2].parse().map_err(|_| bad("bad index"))?;
        let energy = f[3].parse().map_err(|_| bad("bad energy"))?;
        out.push(SpectrumRow {
            g,
            parity,
            index,
            energy,
        });
    }
    Ok(out)
}

pub fn claimed_csv(rows: &[(f64, AnalyticLevel)]) -> String {
    let mut s = String::new();
    s.push_str(CLAIMED_HEADER);
    s.push('\n');
    for (g, l) in rows {
        let branch = l
            .branch
            .map(|b| b.to_string())
            .unwrap_or_else(|| "0".into());
        let _ = writeln!(
            s,
            "{},{},{},{},{}",
            fmt_g12(*g),
            l.subspectrum,
            l.n,
            branch,
            fmt_g12(l.energy)
        );
    }
    s
}

pub fn summary_csv(rows: &[(f64, f64)]) -> String {
    let mut s = String::new();
    s.push_str(SUMMARY_HEADER);
    s.push('\n');
    for (g, d) in rows {
        let _ = writeln!(s, "{},{}", fmt_g12(*g), fmt_g12(*d));
    }
    s
}

/// Writes through a temporary file in the target directory and renames it
/// into place, so a failed run never leaves a partial file.
pub fn write_atomic(path: &Path, contents: &str) -> io::Result<()> {
    let dir = match path.parent() {
        Some(d) if !d.as_os_str().is_empty() => d,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
    io::Write::write_all(&mut tmp, contents.as_bytes())?;
    tmp.persist(path).map_err(|e| e.error)?;
    Ok(())
}

pub const PANEL_WIDTH: f64 = 800.0;
pub const PANEL_HEIGHT: f64 = 600.0;

pub const RED: &str = "#d62728";
pub const BLUE: &str = "#1f77b4";

#[derive(Debug, Clone, PartialEq)]
pub struct Series {
    pub color: &'static str,
    pub points: Vec<(f64, f64)>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Panel {
    pub title: String,
    pub x_range: (f64, f64),
    pub y_range: (f64, f64),
    pub series: Vec<Series>,
}

const MARGIN_L: f64 = 80.0;
const MARGIN_R: f64 = 20.0;
const MARGIN_T: f64 = 40.0;
const MARGIN_B: f64 = 60.0;

fn ticks(lo: f64, hi: f64) -> Vec<f64> {
    let span = hi - lo;
    if !(span > 0.0) {
        return vec![lo];
    }
    let raw = span / 5.0;
    let mag = 10f64.powf(raw.log10().floor());
    let step = [1.0, 2.0, 5.0, 10.0]
        .iter()
        .map(|m| m * mag)
        .find(|s| span / s <= 6.0)
        .unwrap_or(10.0 * mag);
    let first = (lo / step).ceil() as i64;
    let last = (hi / step).floor() as i64;
    (first..=last).map(|i| i as f64 * step).collect()
}

fn panel_svg(out: &mut String, id: &str, offset: (f64, f64), p: &Panel) {
    let pw = PANEL_WIDTH - MARGIN_L - MARGIN_R;
    let ph = PANEL_HEIGHT - MARGIN_T - MARGIN_B;
    let (x0, x1) = p.x_range;
    let (y0, y1) = p.y_range;
    let sx = |x: f64| MARGIN_L + (x - x0) / (x1 - x0) * pw;
    let sy = |y: f64| MARGIN_T + (y1 - y) / (y1 - y0) * ph;

    let _ = writeln!(
        out,
        r#"<g class="panel" id="panel-{id}" transform="translate({},{})">"#,
        offset.0, offset.1
    );
    let _ = writeln!(
        out,
        r#"<clipPath id="clip-{id}"><rect x="{MARGIN_L}" y="{MARGIN_T}" width="{pw}" height="{ph}"/></clipPath>"#
    );
    let _ = writeln!(
        out,
        r#"<rect x="{MARGIN_L}" y="{MARGIN_T}" width="{pw}" height="{ph}" fill="none" stroke="black"/>"#
    );
    for t in ticks(x0, x1) {
        let x = sx(t);
        let _ = writeln!(
            out,
            r#"<line x1="{x:.2}" y1="{:.2}" x2="{x:.2}" y2="{:.2}" stroke="black"/><text x="{x:.2}" y="{:.2}" text-anchor="middle" font-size="14">{}</text>"#,
            MARGIN_T + ph,
            MARGIN_T + ph + 6.0,
            MARGIN_T + ph + 22.0,
            fmt_g(t, 6)
        );
    }
    for t in ticks(y0, y1) {
        let y = sy(t);
        let _ = writeln!(
            out,
            r#"<line x1="{:.2}" y1="{y:.2}" x2="{MARGIN_L}" y2="{y:.2}" stroke="black"/><text x="{:.2}" y="{:.2}" text-anchor="end" font-size="14">{}</text>"#,
            MARGIN_L - 6.0,
            MARGIN_L - 10.0,
            y + 5.0,
            fmt_g(t, 6)
        );
    }
    let _ = writeln!(
        out,
        r#"<text class="xlabel" x="{:.2}" y="{:.2}" text-anchor="middle" font-size="18">g/ω</text>"#,
        MARGIN_L + pw / 2.0,
        PANEL_HEIGHT - 12.0
    );
    let _ = writeln!(
        out,
        r#"<text class="ylabel" x="20" y="{:.2}" text-anchor="middle" font-size="18" transform="rotate(-90 20 {:.2})">E/ω</text>"#,
        MARGIN_T + ph / 2.0,
        MARGIN_T + ph / 2.0
    );
    let _ = writeln!(
        out,
        r#"<text class="title" x="{:.2}" y="26" text-anchor="middle" font-size="18">{}</text>"#,
        MARGIN_L + pw / 2.0,
        p.title
    );
    let _ = writeln!(out, r#"<g clip-path="url(#clip-{id})">"#);
    for s in &p.series {
        if s.points.len() < 2 {
            continue;
        }
        let mut d = String::new();
        for (i, (x, y)) in s.points.iter().enumerate() {
            let _ = write!(
                d,
                "{}{:.2},{:.2}",
                if i == 0 { "M" } else { " L" },
                sx(*x),
                sy(*y)
            );
        }
        let _ = writeln!(
            out,
            r#"<path d="{d}" fill="none" stroke="{}" stroke-width="1.5"/>"#,
            s.color
        );
    }
    out.push_str("</g>\n</g>\n");
}

/// Lays panels out `cols` per row, each in its own 800×600 frame.
pub fn figure_svg(panels: &[Panel], cols: usize) -> String {
    let cols = cols.clamp(1, panels.len().max(1));
    let rows = panels.len().div_ceil(cols).max(1);
    let w = PANEL_WIDTH * cols as f64;
    let h = PANEL_HEIGHT * rows as f64;
    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{w}" height="{h}" viewBox="0 0 {w} {h}">"#
    );
    let _ = writeln!(out, r#"<rect width="{w}" height="{h}" fill="white"/>"#);
    for (i, p) in panels.iter().enumerate() {
        let id = (b'a' + i as u8) as char;
        let offset = (
            (i % cols) as f64 * PANEL_WIDTH,
            (i / cols) as f64 * PANEL_HEIGHT,
        );
        panel_svg(&mut out, &id.to_string(), offset, p);
    }
    out.push_str("</svg>\n");
    out
}
