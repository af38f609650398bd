//! Text formats: P1 CIF subset, XYZ clouds, 1-periodic sequences, 1D periodic sequences with radii,
//! backbone TSV, fixed-precision number formatting and PPM barcodes.

use std::fmt::Write as _;

use crate::backbone::{Backbone, BriMatrix, Residue};
use crate::clouds::PointCloud;
use crate::density1d::PeriodicSequence1D;
use crate::error::{GeoError, Result};
use crate::periodic::{cell_basis, PeriodicSet};
use crate::seq1p::OnePeriodicSequence;

/// Significant digits written by [`fmt_num`].
pub const SIGNIFICANT_DIGITS: usize = 12;

/// Shortest decimal with at most 12 significant digits, '.' separator, scientific outside `[1e-5, 1e12)`.
pub fn fmt_num(x: f64) -> String {
    if x.is_nan() {
        return "nan".into();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    if x == 0.0 {
        return "0".into();
    }
    let sci = format!("{:.*e}", SIGNIFICANT_DIGITS - 1, x);
    let (mantissa, exp) = sci.split_once('e').expect("scientific format");
    let exp: i32 = exp.parse().expect("integer exponent");
    if (-5..SIGNIFICANT_DIGITS as i32).contains(&exp) {
        let rounded: f64 = sci.parse().expect("round trip");
        let decimals = (SIGNIFICANT_DIGITS as i32 - 1 - exp).max(0) as usize;
        trim_zeros(&format!("{rounded:.decimals$}"))
    } else {
        format!("{}e{exp}", trim_zeros(mantissa))
    }
}

fn trim_zeros(s: &str) -> String {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.').to_string()
    } else {
        s.to_string()
    }
}

fn parse_err(line: usize, msg: impl Into<String>) -> GeoError {
    GeoError::Parse { line, msg: msg.into() }
}

/// Parses a number, dropping a trailing standard uncertainty such as `5.431(2)`.
fn number(token: &str, line: usize) -> Result<f64> {
    let t = token.split('(').next().unwrap_or(token);
    let x: f64 = t.parse().map_err(|_| parse_err(line, format!("expected a number, found '{token}'")))?;
    if !x.is_finite() {
        return Err(parse_err(line, format!("non-finite number '{token}'")));
    }
    Ok(x)
}

/// Non-empty lines without `#` comments, numbered from 1.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().filter_map(|(i, l)| {
        let l = l.split('#').next().unwrap_or("").trim();
        (!l.is_empty()).then_some((i + 1, l))
    })
}

/// Unit cell and fractional atom sites of a P1 structure.
#[derive(Clone, Debug, PartialEq)]
pub struct CifLite {
    pub id: String,
    /// `a, b, c` in Angstrom and `alpha, beta, gamma` in degrees.
    pub cell: [f64; 6],
    pub atoms: Vec<(String, [f64; 3])>,
}

const CELL_TAGS: [&str; 6] = [
    "_cell_length_a",
    "_cell_length_b",
    "_cell_length_c",
    "_cell_angle_alpha",
    "_cell_angle_beta",
    "_cell_angle_gamma",
];

const SPACE_GROUP_TAGS: [&str; 3] = ["_symmetry_space_group_name_h-m", "_space_group_name_h-m_alt", "_space_group_name_h-m"];

/// Splits a CIF line into tokens, keeping quoted strings together.
fn cif_tokens(line: &str) -> Vec<String> {
    let mut out = Vec::new();
    let mut chars = line.chars().peekable();
    while let Some(&c) = chars.peek() {
        if c.is_whitespace() {
            chars.next();
        } else if c == '\'' || c == '"' {
            chars.next();
            let token: String = chars.by_ref().take_while(|&d| d != c).collect();
            out.push(token);
        } else {
            let mut token = String::new();
            while let Some(&d) = chars.peek() {
                if d.is_whitespace() {
                    break;
                }
                token.push(d);
                chars.next();
            }
            out.push(token);
        }
    }
    out
}

impl CifLite {
    pub fn parse(text: &str) -> Result<Self> {
        let lines: Vec<(usize, &str)> = content_lines(text).collect();
        let mut id = String::new();
        let mut cell = [f64::NAN; 6];
        let mut atoms = Vec::new();
        let mut i = 0;
        while i < lines.len() {
            let (ln, line) = lines[i];
            let lower = line.to_ascii_lowercase();
            if let Some(name) = line.strip_prefix("data_") {
                id = name.trim().to_string();
                i += 1;
            } else if lower == "loop_" {
                i += 1;
                let mut tags = Vec::new();
                while i < lines.len() && lines[i].1.starts_with('_') {
                    tags.push(lines[i].1.to_ascii_lowercase());
                    i += 1;
                }
                let mut rows = Vec::new();
                while i < lines.len() {
                    let l = lines[i].1;
                    if l.starts_with('_') || l.eq_ignore_ascii_case("loop_") || l.starts_with("data_") {
                        break;
                    }
                    rows.push((lines[i].0, cif_tokens(l)));
                    i += 1;
                }
                if tags.iter().any(|t| t.starts_with("_atom_site_")) {
                    atoms.extend(atom_loop(&tags, &rows, ln)?);
                } else if tags.iter().any(|t| t.contains("equiv_pos_as_xyz") || t.contains("symop_operation_xyz")) {
                    let col = tags
                        .iter()
                        .position(|t| t.contains("_xyz"))
                        .expect("matched tag");
                    for (rl, row) in &rows {
                        let op: String = row.get(col).map_or(String::new(), |s| s.replace(' ', "").to_ascii_lowercase());
                        if op != "x,y,z" && op != "+x,+y,+z" {
                            return Err(parse_err(*rl, format!("symmetry operation '{op}': expand the structure to P1")));
                        }
                    }
                }
            } else if line.starts_with('_') {
                let tokens = cif_tokens(line);
                let tag = tokens[0].to_ascii_lowercase();
                let value = tokens.get(1).cloned().unwrap_or_default();
                if let Some(k) = CELL_TAGS.iter().position(|t| *t == tag) {
                    cell[k] = number(&value, ln)?;
                } else if SPACE_GROUP_TAGS.contains(&tag.as_str()) {
                    let sg = value.replace(' ', "").to_ascii_uppercase();
                    if sg != "P1" {
                        return Err(parse_err(ln, format!("space group '{value}': expand the structure to P1")));
                    }
                }
                i += 1;
            } else {
                i += 1;
            }
        }
        for (k, tag) in CELL_TAGS.iter().enumerate() {
            if cell[k].is_nan() {
                return Err(parse_err(0, format!("missing {tag}")));
            }
        }
        for (k, tag) in CELL_TAGS.iter().enumerate().skip(3) {
            if !(cell[k] > 0.0 && cell[k] < 180.0) {
                return Err(GeoError::OutOfRange(format!("{tag} = {} is outside (0, 180)", cell[k])));
            }
        }
        if atoms.is_empty() {
            return Err(parse_err(0, "missing _atom_site loop"));
        }
        Ok(CifLite { id, cell, atoms })
    }

    pub fn to_periodic_set(&self) -> Result<PeriodicSet> {
        let [a, b, c, alpha, beta, gamma] = self.cell;
        let basis = cell_basis(a, b, c, alpha, beta, gamma)?;
        let fractional = self.atoms.iter().map(|(_, f)| f.to_vec()).collect();
        PeriodicSet::from_fractional(basis, fractional)?.with_labels(self.atoms.iter().map(|(l, _)| l.clone()).collect())
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "data_{}", if self.id.is_empty() { "structure" } else { &self.id });
        let _ = writeln!(s, "_symmetry_space_group_name_H-M 'P 1'");
        for (tag, x) in CELL_TAGS.iter().zip(self.cell) {
            let _ = writeln!(s, "{tag} {}", fmt_num(x));
        }
        s.push_str("loop_\n_atom_site_label\n_atom_site_fract_x\n_atom_site_fract_y\n_atom_site_fract_z\n");
        for (label, f) in &self.atoms {
            let _ = writeln!(s, "{label} {} {} {}", fmt_num(f[0]), fmt_num(f[1]), fmt_num(f[2]));
        }
        s
    }
}

fn atom_loop(tags: &[String], rows: &[(usize, Vec<String>)], loop_line: usize) -> Result<Vec<(String, [f64; 3])>> {
    let find = |name: &str| tags.iter().position(|t| t == name);
    let label = find("_atom_site_label").or_else(|| find("_atom_site_type_symbol"));
    let coords = ["_atom_site_fract_x", "_atom_site_fract_y", "_atom_site_fract_z"].map(find);
    if coords.iter().any(Option::is_none) {
        return Err(parse_err(loop_line, "atom loop needs _atom_site_fract_x/y/z"));
    }
    let occupancy = find("_atom_site_occupancy");
    let mut atoms = Vec::with_capacity(rows.len());
    for (ln, row) in rows {
        if row.len() != tags.len() {
            return Err(parse_err(*ln, format!("expected {} fields, found {}", tags.len(), row.len())));
        }
        if let Some(o) = occupancy {
            let occ = number(&row[o], *ln)?;
            if (occ - 1.0).abs() > 1e-9 {
                return Err(parse_err(*ln, format!("occupancy {occ} is not 1")));
            }
        }
        let f = coords.map(|c| number(&row[c.expect("checked")], *ln));
        let name = label.map_or_else(|| format!("X{}", atoms.len() + 1), |l| row[l].clone());
        atoms.push((name, [f[0].clone()?, f[1].clone()?, f[2].clone()?]));
    }
    Ok(atoms)
}

/// Periodic set from a P1 CIF subset with Cartesian motif coordinates.
pub fn parse_cif_lite(text: &str) -> Result<PeriodicSet> {
    CifLite::parse(text)?.to_periodic_set()
}

/// Labelled points from an XYZ file; rows may carry any number of coordinates.
#[derive(Clone, Debug, PartialEq)]
pub struct XyzCloud {
    pub comment: String,
    pub labels: Vec<String>,
    pub points: Vec<Vec<f64>>,
}

impl XyzCloud {
    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = text.lines().enumerate();
        let (_, header) = lines.next().ok_or_else(|| parse_err(1, "missing atom count"))?;
        let count: usize = header.trim().parse().map_err(|_| parse_err(1, format!("bad atom count '{}'", header.trim())))?;
        let comment = lines.next().map_or(String::new(), |(_, l)| l.trim().to_string());
        let mut labels = Vec::with_capacity(count);
        let mut points = Vec::with_capacity(count);
        for (i, line) in lines {
            let tokens: Vec<&str> = line.split_whitespace().collect();
            if tokens.is_empty() {
                continue;
            }
            if tokens.len() < 2 {
                return Err(parse_err(i + 1, "expected a label and coordinates"));
            }
            labels.push(tokens[0].to_string());
            points.push(tokens[1..].iter().map(|t| number(t, i + 1)).collect::<Result<Vec<f64>>>()?);
        }
        if points.len() != count {
            return Err(parse_err(1, format!("header announces {count} rows, found {}", points.len())));
        }
        Ok(XyzCloud { comment, labels, points })
    }

    pub fn to_cloud(&self) -> Result<PointCloud> {
        PointCloud::with_labels(self.points.clone(), self.labels.clone())
    }

    pub fn to_text(&self) -> String {
        let mut s = format!("{}\n{}\n", self.points.len(), self.comment);
        for (label, p) in self.labels.iter().zip(&self.points) {
            let coords: Vec<String> = p.iter().map(|&x| fmt_num(x)).collect();
            let _ = writeln!(s, "{label} {}", coords.join(" "));
        }
        s
    }
}

pub fn parse_xyz(text: &str) -> Result<PointCloud> {
    XyzCloud::parse(text)?.to_cloud()
}

/// Rows of numbers after a leading period line.
fn period_and_rows(text: &str) -> Result<(f64, Vec<(usize, Vec<f64>)>)> {
    let mut lines = content_lines(text);
    let (ln, first) = lines.next().ok_or_else(|| parse_err(1, "missing period"))?;
    let period = number(first, ln)?;
    let rows = lines
        .map(|(ln, l)| Ok((ln, l.split(|c: char| c.is_whitespace() || c == ',').filter(|t| !t.is_empty()).map(|t| number(t, ln)).collect::<Result<Vec<f64>>>()?)))
        .collect::<Result<Vec<_>>>()?;
    Ok((period, rows))
}

/// 1-periodic sequence: period on the first line, then `time value...` per point.
pub fn parse_seq1p(text: &str) -> Result<OnePeriodicSequence> {
    let (period, rows) = period_and_rows(text)?;
    OnePeriodicSequence::new(period, rows.into_iter().map(|(_, r)| r).collect())
}

pub fn write_seq1p(s: &OnePeriodicSequence) -> String {
    let mut out = format!("{}\n", fmt_num(s.period()));
    for (t, v) in s.times().iter().zip(s.values()) {
        let fields: Vec<String> = std::iter::once(*t).chain(v.iter().copied()).map(fmt_num).collect();
        let _ = writeln!(out, "{}", fields.join(" "));
    }
    out
}

/// Periodic sequence in the line: period on the first line, then `centre [radius]` per interval.
pub fn parse_density1d(text: &str) -> Result<PeriodicSequence1D> {
    let (period, rows) = period_and_rows(text)?;
    let mut centres = Vec::with_capacity(rows.len());
    let mut radii = Vec::with_capacity(rows.len());
    for (ln, r) in rows {
        match r.as_slice() {
            [c] => {
                centres.push(*c);
                radii.push(0.0);
            }
            [c, radius] => {
                centres.push(*c);
                radii.push(*radius);
            }
            _ => return Err(parse_err(ln, "expected a centre and an optional radius")),
        }
    }
    PeriodicSequence1D::new(period, centres, radii)
}

pub fn write_density1d(s: &PeriodicSequence1D) -> String {
    let mut out = format!("{}\n", fmt_num(s.period()));
    for (c, r) in s.centres().iter().zip(s.radii()) {
        let _ = writeln!(out, "{} {}", fmt_num(*c), fmt_num(*r));
    }
    out
}

/// Header written by [`write_backbone_tsv`].
pub const BACKBONE_HEADER: &str = "residue\tNx\tNy\tNz\tAx\tAy\tAz\tCx\tCy\tCz";

/// Backbone from tab-separated rows `residue_index Nx Ny Nz Ax Ay Az Cx Cy Cz` with consecutive indices.
pub fn parse_backbone_tsv(text: &str) -> Result<Backbone> {
    let mut residues = Vec::new();
    let mut last: Option<i64> = None;
    for (ln, line) in content_lines(text) {
        let fields: Vec<&str> = line.split('\t').map(str::trim).filter(|f| !f.is_empty()).collect();
        if residues.is_empty() && last.is_none() && fields.first().is_some_and(|f| f.parse::<f64>().is_err()) {
            continue;
        }
        if fields.len() != 10 {
            return Err(parse_err(ln, format!("expected 10 tab-separated fields, found {}", fields.len())));
        }
        let index: i64 = fields[0].parse().map_err(|_| parse_err(ln, format!("bad residue index '{}'", fields[0])))?;
        if let Some(prev) = last {
            if index != prev + 1 {
                return Err(parse_err(ln, format!("residue index {index} does not follow {prev}")));
            }
        }
        last = Some(index);
        let x: Vec<f64> = fields[1..].iter().map(|f| number(f, ln)).collect::<Result<_>>()?;
        residues.push(Residue { n: [x[0], x[1], x[2]], a: [x[3], x[4], x[5]], c: [x[6], x[7], x[8]] });
    }
    Backbone::new(residues)
}

pub fn write_backbone_tsv(b: &Backbone) -> String {
    let mut out = format!("{BACKBONE_HEADER}\n");
    for (i, r) in b.residues().iter().enumerate() {
        let fields: Vec<String> = r.n.iter().chain(&r.a).chain(&r.c).map(|&x| fmt_num(x)).collect();
        let _ = writeln!(out, "{}\t{}", i + 1, fields.join("\t"));
    }
    out
}

/// Binary PPM barcode: one bar each for the N, A and C columns of rows 2..m, with every
/// coordinate min-max scaled to 0..255 independently.
pub fn barcode_ppm(b: &BriMatrix, bar_height: usize) -> Result<Vec<u8>> {
    if b.len() < 2 {
        return Err(GeoError::Empty("barcode needs at least two residues"));
    }
    if bar_height == 0 {
        return Err(GeoError::OutOfRange("bar height must be positive".into()));
    }
    let rows = &b.rows()[1..];
    let width = rows.len();
    let scaled: Vec<[u8; 9]> = {
        let mut lo = [f64::INFINITY; 9];
        let mut hi = [f64::NEG_INFINITY; 9];
        for r in rows {
            for c in 0..9 {
                lo[c] = lo[c].min(r[c]);
                hi[c] = hi[c].max(r[c]);
            }
        }
        rows.iter()
            .map(|r| {
                let mut px = [0u8; 9];
                for c in 0..9 {
                    let span = hi[c] - lo[c];
                    px[c] = if span > 0.0 { ((r[c] - lo[c]) / span * 255.0).round() as u8 } else { 128 };
                }
                px
            })
            .collect()
    };
    let mut out = format!("P6\n{width} {}\n255\n", 3 * bar_height).into_bytes();
    for atom in 0..3 {
        for _ in 0..bar_height {
            for px in &scaled {
                out.extend_from_slice(&px[3 * atom..3 * atom + 3]);
            }
        }
    }
    Ok(out)
}
