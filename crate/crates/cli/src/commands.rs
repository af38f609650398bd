use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use geoinv::backbone::{self, Backbone, BriMatrix};
use geoinv::clouds::{self, PointCloud};
use geoinv::density1d::{self, PeriodicSequence1D};
use geoinv::io;
use geoinv::lattice2d::{self, Basis2D, Longitude, PointGroup};
use geoinv::periodic::{self, DedupParams, PeriodicSet, DEFAULT_K};
use geoinv::rows::{RowMetric, WeightedRowMatrix};
use geoinv::seq1p::{self, OrderedSequence, OnePeriodicSequence, DEFAULT_LCM_CAP};
use geoinv::simplexwise::{self, Comparison};

use crate::output::{emit, Cell, Table};
use crate::{
    selftest, usage, BackboneCmd, Cli, CloudCmd, Command, DensityCmd, Global, LatticeCmd, LatticeInput, PeriodicCmd,
    SecondLattice, SeqCmd, SimplexCmd,
};

pub fn run(cli: &Cli) -> Result<()> {
    let g = &cli.global;
    if !(g.tol >= 0.0 && g.tol.is_finite()) {
        return Err(usage(format!("--tol must be a non-negative number, got {}", g.tol)));
    }
    let table = match &cli.command {
        Command::Cloud(c) => cloud(c, g)?,
        Command::Simplex(c) => simplex(c, g)?,
        Command::Lattice(c) => lattice(c, g)?,
        Command::Periodic(c) => periodic_cmd(c, g)?,
        Command::Density(c) => density(c, g)?,
        Command::Seq1(c) => seq(c, g)?,
        Command::Backbone(c) => backbone_cmd(c)?,
        Command::Selftest { seed, trials } => {
            let (table, failures) = selftest::run(*seed, *trials)?;
            emit(table.render(g.format).as_bytes(), g.output.as_deref())?;
            if failures > 0 {
                bail!("{failures} self-test checks failed");
            }
            return Ok(());
        }
    };
    emit(table.render(g.format).as_bytes(), g.output.as_deref())
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn load<T>(path: &Path, parse: impl Fn(&str) -> geoinv::error::Result<T>) -> Result<T> {
    parse(&read(path)?).with_context(|| format!("in {}", path.display()))
}

fn vector_table(name: &str, values: &[f64]) -> Table {
    let mut t = Table::new(&["index", name]);
    for (i, &v) in values.iter().enumerate() {
        t.push(vec![(i + 1).into(), v.into()]);
    }
    t
}

fn rows_table(m: &WeightedRowMatrix) -> Table {
    let mut t = Table::numbered(&["weight"], "d", m.k());
    for r in m.rows() {
        let mut row = vec![Cell::from(r.weight)];
        row.extend(r.values.iter().map(|&x| Cell::from(x)));
        t.push(row);
    }
    t
}

fn single(headers: &[&str], row: Vec<Cell>) -> Table {
    let mut t = Table::new(headers);
    t.push(row);
    t
}

fn joined(values: &[f64]) -> String {
    values.iter().map(|&x| io::fmt_num(x)).collect::<Vec<_>>().join(" ")
}

fn cloud(cmd: &CloudCmd, g: &Global) -> Result<Table> {
    let pdd_k = |c: &[&PointCloud]| g.k.unwrap_or_else(|| c.iter().map(|c| c.len()).min().unwrap_or(1).saturating_sub(1));
    Ok(match cmd {
        CloudCmd::Srd { file } => vector_table("srd", &clouds::srd(&load(file, io::parse_xyz)?)),
        CloudCmd::Spd { file } => vector_table("spd", &clouds::spd(&load(file, io::parse_xyz)?)?),
        CloudCmd::Pdd { file } => {
            let c = load(file, io::parse_xyz)?;
            rows_table(&clouds::pdd(&c, pdd_k(&[&c]), g.tol)?)
        }
        CloudCmd::Compare { first, second } => {
            let (a, b) = (load(first, io::parse_xyz)?, load(second, io::parse_xyz)?);
            let k = pdd_k(&[&a, &b]);
            let d = clouds::pdd_dist(&clouds::pdd(&a, k, g.tol)?, &clouds::pdd(&b, k, g.tol)?, RowMetric::Minkowski(g.q))?;
            single(&["k", "pdd_emd"], vec![k.into(), d.into()])
        }
    })
}

fn simplex(cmd: &SimplexCmd, g: &Global) -> Result<Table> {
    Ok(match cmd {
        SimplexCmd::Sdd { file, h } => {
            let s = simplexwise::sdd(&load(file, io::parse_xyz)?, *h)?;
            let mut t = Table::new(&["entry", "multiplicity", "base", "columns"]);
            for (i, (rdd, count)) in s.entries().iter().enumerate() {
                let cols: Vec<String> = rdd.columns().iter().map(|c| joined(c)).collect();
                t.push(vec![(i + 1).into(), (*count).into(), joined(rdd.base_distances()).into(), cols.join(";").into()]);
            }
            t
        }
        SimplexCmd::Scd { file } => {
            let s = simplexwise::scd(&load(file, io::parse_xyz)?)?;
            let mut t = Table::new(&["entry", "multiplicity", "base", "columns"]);
            for (i, (dist, count)) in s.entries().iter().enumerate() {
                let cols: Vec<String> = dist
                    .columns()
                    .iter()
                    .map(|c| format!("{} {} {}", joined(&c.distances), c.sign, io::fmt_num(c.strength)))
                    .collect();
                t.push(vec![(i + 1).into(), (*count).into(), joined(dist.base_distances()).into(), cols.join(";").into()]);
            }
            t
        }
        SimplexCmd::Compare { first, second, h, mode } => {
            let (a, b) = (load(first, io::parse_xyz)?, load(second, io::parse_xyz)?);
            let sdd = simplexwise::sdd_dist(&simplexwise::sdd(&a, *h)?, &simplexwise::sdd(&b, *h)?, *mode, g.q)?;
            let scd = simplexwise::scd(&a)
                .and_then(|x| simplexwise::scd_dist(&x, &simplexwise::scd(&b)?, *mode))
                .ok();
            let label = if *mode == Comparison::Lac { "lac" } else { "emd" };
            single(&["mode", "sdd", "scd"], vec![label.into(), sdd.into(), scd.into()])
        }
    })
}

fn basis_from(basis: &Option<Vec<f64>>, cell: &Option<Vec<f64>>, flag: &str) -> Result<Basis2D> {
    match (basis, cell) {
        (Some(b), _) => Ok(Basis2D::new([b[0], b[1]], [b[2], b[3]])?),
        (None, Some(c)) => Ok(Basis2D::from_cell(c[0], c[1], c[2])?),
        (None, None) => Err(usage(format!("a lattice is required: pass --{flag} X1 Y1 X2 Y2 or --cell{} A B GAMMA", &flag[5..]))),
    }
}

fn lattice_of(input: &LatticeInput) -> Result<Basis2D> {
    basis_from(&input.basis, &input.cell, "basis")
}

fn longitude(l: Longitude) -> Cell {
    l.degrees().into()
}

fn lattice(cmd: &LatticeCmd, g: &Global) -> Result<Table> {
    Ok(match cmd {
        LatticeCmd::Reduce(input) => {
            let sb = lattice2d::reduce(&lattice_of(input)?)?;
            let mut t = Table::new(&["vector", "x", "y"]);
            for (i, v) in sb.vectors.iter().enumerate() {
                t.push(vec![format!("v{i}").into(), v[0].into(), v[1].into()]);
            }
            t
        }
        LatticeCmd::Invariant(input) => {
            let ri = lattice2d::basis_invariant(&lattice_of(input)?)?;
            let pi = lattice2d::projected_invariant(&ri)?;
            let pos = lattice2d::slm(&pi);
            let [r12, r01, r02] = ri.triple();
            single(
                &["r12", "r01", "r02", "sign", "x", "y", "latitude", "longitude"],
                vec![r12.into(), r01.into(), r02.into(), ri.sign().into(), pi.x.into(), pi.y.into(), pos.latitude.into(), longitude(pos.longitude)],
            )
        }
        LatticeCmd::Metric { first, second } => {
            let SecondLattice { basis2, cell2 } = second;
            let a = lattice2d::basis_invariant(&lattice_of(first)?)?;
            let b = lattice2d::basis_invariant(&basis_from(basis2, cell2, "basis2")?)?;
            let (pa, pb) = (lattice2d::projected_invariant(&a)?, lattice2d::projected_invariant(&b)?);
            single(
                &["rm", "pm", "rm_oriented", "pm_oriented"],
                vec![
                    lattice2d::rm(&a, &b, g.q, false)?.into(),
                    lattice2d::pm(&pa, &pb, g.q, false)?.into(),
                    lattice2d::rm(&a, &b, g.q, true)?.into(),
                    lattice2d::pm(&pa, &pb, g.q, true)?.into(),
                ],
            )
        }
        LatticeCmd::Chiral { lattice, group } => {
            let ri = lattice2d::basis_invariant(&lattice_of(lattice)?)?;
            let pi = lattice2d::projected_invariant(&ri)?;
            let groups = group.map_or(vec![PointGroup::D2, PointGroup::D4, PointGroup::D6], |g| vec![g]);
            let mut t = Table::new(&["group", "rc", "pc"]);
            for grp in groups {
                let rc = lattice2d::rc(&ri, grp, g.q).ok();
                let pc = lattice2d::pc(&pi, grp, g.q).ok();
                if rc.is_none() && pc.is_none() && group.is_some() {
                    bail!("chiral distances for {grp:?} are not available with q={}", g.q);
                }
                t.push(vec![format!("{grp:?}").into(), rc.into(), pc.into()]);
            }
            t
        }
        LatticeCmd::Map(input) => {
            let ri = lattice2d::basis_invariant(&lattice_of(input)?)?;
            let pos = lattice2d::slm(&lattice2d::projected_invariant(&ri)?);
            single(&["latitude", "longitude"], vec![pos.latitude.into(), longitude(pos.longitude)])
        }
        LatticeCmd::Design { x, y, size, sign } => {
            let b = lattice2d::inverse_design(*x, *y, *size, *sign)?;
            single(&["v1x", "v1y", "v2x", "v2y"], vec![b.v1[0].into(), b.v1[1].into(), b.v2[0].into(), b.v2[1].into()])
        }
    })
}

/// CIF files of a directory in file-name order, identified by their file stems.
fn load_dir(dir: &Path) -> Result<Vec<(String, PeriodicSet)>> {
    let mut paths: Vec<PathBuf> = std::fs::read_dir(dir)
        .with_context(|| format!("reading directory {}", dir.display()))?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|e| e.eq_ignore_ascii_case("cif")))
        .collect();
    paths.sort();
    if paths.is_empty() {
        bail!("no .cif files in {}", dir.display());
    }
    paths
        .iter()
        .map(|p| {
            let id = p.file_stem().map_or_else(String::new, |s| s.to_string_lossy().into_owned());
            Ok((id, load(p, io::parse_cif_lite)?))
        })
        .collect()
}

fn periodic_cmd(cmd: &PeriodicCmd, g: &Global) -> Result<Table> {
    let k = g.k.unwrap_or(DEFAULT_K);
    if k == 0 {
        return Err(usage("--k must be positive"));
    }
    Ok(match cmd {
        PeriodicCmd::Pdd { file } => rows_table(&periodic::pdd_periodic(&load(file, io::parse_cif_lite)?, k, g.tol)?),
        PeriodicCmd::Amd { file } => vector_table("amd", &periodic::amd(&load(file, io::parse_cif_lite)?, k)?),
        PeriodicCmd::Ada { file } => vector_table("ada", &periodic::ada(&load(file, io::parse_cif_lite)?, k)?),
        PeriodicCmd::Ppc { file } => single(&["ppc"], vec![periodic::ppc(&load(file, io::parse_cif_lite)?).into()]),
        PeriodicCmd::Compare { first, second } => {
            let (a, b) = (load(first, io::parse_cif_lite)?, load(second, io::parse_cif_lite)?);
            let linf = |x: Vec<f64>, y: Vec<f64>| x.iter().zip(&y).fold(0.0, |m: f64, (p, q)| m.max((p - q).abs()));
            let ada = linf(periodic::ada(&a, k)?, periodic::ada(&b, k)?);
            let amd = linf(periodic::amd(&a, k)?, periodic::amd(&b, k)?);
            let pda = periodic::pda_dist(&a, &b, k, g.q)?;
            single(&["ada_linf", "amd_linf", "pda_emd"], vec![ada.into(), amd.into(), pda.into()])
        }
        PeriodicCmd::Dedup { dir, threshold } => {
            if !(*threshold >= 0.0) {
                return Err(usage("--threshold must be non-negative"));
            }
            let data = load_dir(dir)?;
            let params = DedupParams { k, ada_threshold: *threshold, confirm_threshold: *threshold };
            let mut t = Table::new(&["id1", "id2", "ada_linf", "pda_emd"]);
            for p in periodic::dedup(&data, params)? {
                t.push(vec![p.id1.into(), p.id2.into(), p.ada_linf.into(), p.pda_emd.into()]);
            }
            t
        }
        PeriodicCmd::Novelty { file, dir } => {
            let set = load(file, io::parse_cif_lite)?;
            let data = load_dir(dir)?;
            let (d, id) = periodic::lnd(&set, &data, k, g.q)?;
            single(&["nearest", "distance"], vec![id.into(), d.into()])
        }
    })
}

fn density(cmd: &DensityCmd, g: &Global) -> Result<Table> {
    let k = g.k.unwrap_or(0);
    Ok(match cmd {
        DensityCmd::Psi { file, samples } => {
            let f = density1d::psi(&load(file, io::parse_density1d)?, k)?;
            let mut t = Table::new(&["t", "value"]);
            match samples {
                None => {
                    for &(x, y) in f.corners() {
                        t.push(vec![x.into(), y.into()]);
                    }
                }
                Some(n) => {
                    let end = f.corners().last().map_or(0.0, |c| c.0);
                    let n = (*n).max(2);
                    for i in 0..n {
                        let x = end * i as f64 / (n - 1) as f64;
                        t.push(vec![x.into(), f.eval(x).into()]);
                    }
                }
            }
            t
        }
        DensityCmd::Rho { file } => {
            single(&["k", "rho"], vec![k.into(), density1d::rho(&load(file, io::parse_density1d)?, k)?.into()])
        }
        DensityCmd::Compare { first, second } => {
            let (a, b) = (load(first, io::parse_density1d)?, load(second, io::parse_density1d)?);
            compare_densities(&a, &b, g)?
        }
    })
}

fn compare_densities(a: &PeriodicSequence1D, b: &PeriodicSequence1D, g: &Global) -> Result<Table> {
    let last = g.k.unwrap_or(a.len().max(b.len()));
    let mut t = Table::new(&["k", "max_difference", "equal"]);
    for k in 0..=last {
        let d = density1d::psi(a, k)?.max_difference(&density1d::psi(b, k)?);
        t.push(vec![k.into(), d.into(), (d <= g.tol).into()]);
    }
    Ok(t)
}

fn seq(cmd: &SeqCmd, g: &Global) -> Result<Table> {
    Ok(match cmd {
        SeqCmd::Cdm { file, signs } => {
            let points = load(file, io::XyzCloud::parse)?.points;
            let s = OrderedSequence::new(points).with_context(|| format!("in {}", file.display()))?;
            let m = s.len();
            let mut t = Table::numbered(&["row"], "j", m);
            let mut push = |label: String, values: Vec<Cell>| {
                let mut row = vec![Cell::from(label)];
                row.extend(values);
                t.push(row);
            };
            for (i, r) in seq1p::cdm(&s).iter().enumerate() {
                push((i + 1).to_string(), r.iter().map(|&x| x.into()).collect());
            }
            if *signs {
                let c = seq1p::cds(&s)?;
                push("sign".into(), c.signs.iter().map(|&x| x.into()).collect());
                push("strength".into(), c.strengths.iter().map(|&x| x.into()).collect());
            }
            t
        }
        SeqCmd::Metric { first, second, group, equivalence } => {
            let a: OnePeriodicSequence = load(first, io::parse_seq1p)?;
            let b: OnePeriodicSequence = load(second, io::parse_seq1p)?;
            let r = seq1p::seq_match(&a, &b, g.q, *group, *equivalence, DEFAULT_LCM_CAP)?;
            single(
                &["value", "shift", "reversed", "time_part", "value_part"],
                vec![r.value.into(), r.shift.into(), r.reversed.into(), r.time_part.into(), r.value_part.into()],
            )
        }
    })
}

fn bri_table(b: &BriMatrix) -> Table {
    let mut t = Table::numbered(&["residue"], "c", 9);
    for (i, r) in b.rows().iter().enumerate() {
        let mut row = vec![Cell::from(i + 1)];
        row.extend(r.iter().map(|&x| Cell::from(x)));
        t.push(row);
    }
    t
}

/// Rows written by `backbone bri`: an optional header, then a residue index and nine values.
fn parse_bri_csv(text: &str) -> geoinv::error::Result<BriMatrix> {
    let mut rows = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let fields: Vec<&str> = line.split(',').map(str::trim).collect();
        if line.trim().is_empty() || (rows.is_empty() && fields[0].parse::<f64>().is_err()) {
            continue;
        }
        let parse_err = |msg: String| geoinv::error::GeoError::Parse { line: i + 1, msg };
        if fields.len() != 10 {
            return Err(parse_err(format!("expected 10 fields, found {}", fields.len())));
        }
        let mut row = [0.0; 9];
        for (slot, f) in row.iter_mut().zip(&fields[1..]) {
            *slot = f.parse().map_err(|_| parse_err(format!("bad number '{f}'")))?;
        }
        rows.push(row);
    }
    BriMatrix::from_rows(rows)
}

fn backbone_cmd(cmd: &BackboneCmd) -> Result<Table> {
    let chain = |p: &Path| -> Result<Backbone> { load(p, io::parse_backbone_tsv) };
    Ok(match cmd {
        BackboneCmd::Bri { file, barcode, bar_height } => {
            let b = backbone::bri(&chain(file)?);
            if let Some(path) = barcode {
                emit(&io::barcode_ppm(&b, *bar_height)?, Some(path))?;
            }
            bri_table(&b)
        }
        BackboneCmd::Brain { file } => {
            let avg = backbone::brain(&backbone::bri(&chain(file)?))?;
            let mut t = Table::numbered(&[], "c", 9);
            t.push(avg.iter().map(|&x| x.into()).collect());
            t
        }
        BackboneCmd::Compare { first, second } => {
            let (a, b) = (backbone::bri(&chain(first)?), backbone::bri(&chain(second)?));
            let brain = if a.len() >= 2 && b.len() >= 2 { Some(backbone::brain_dist(&a, &b)?) } else { None };
            single(&["bri_dist", "brain_dist"], vec![backbone::bri_dist(&a, &b)?.into(), brain.into()])
        }
        BackboneCmd::Reconstruct { file } => {
            let s = backbone::reconstruct(&load(file, parse_bri_csv)?)?;
            let mut t = Table::new(&["residue", "Nx", "Ny", "Nz", "Ax", "Ay", "Az", "Cx", "Cy", "Cz"]);
            for (i, r) in s.residues().iter().enumerate() {
                let mut row = vec![Cell::from(i + 1)];
                row.extend(r.n.iter().chain(&r.a).chain(&r.c).map(|&x| Cell::from(x)));
                t.push(row);
            }
            t
        }
    })
}
