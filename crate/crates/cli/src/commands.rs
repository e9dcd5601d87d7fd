use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use serde::Serialize;
use tangleroof::curve::{roof_curve, write_csv, CurveRow};
use tangleroof::oracle::{verify_family, OracleOptions, VerifyFlag, VerifyOptions};
use tangleroof::roof::thresholds;
use tangleroof::state::JsonAmplitude;
use tangleroof::{
    family_density, optimal_decomposition, p_one_unconstrained, roof_value, three_tangle,
    FamilyParams, PureState3Q, RoofRegion,
};

use crate::format::significant15;

/// Residual bound checked before a decomposition is written.
const MAX_RESIDUAL: f64 = 1e-12;

fn open_output(out: Option<&Path>) -> Result<Box<dyn Write>> {
    Ok(match out {
        Some(path) => Box::new(io::BufWriter::new(
            fs::File::create(path).with_context(|| format!("cannot create {}", path.display()))?,
        )),
        None => Box::new(io::stdout().lock()),
    })
}

pub fn tangle(state_file: &Path) -> Result<()> {
    let text = fs::read_to_string(state_file)
        .with_context(|| format!("cannot read {}", state_file.display()))?;
    let state = PureState3Q::from_json(&text)
        .with_context(|| format!("invalid state file {}", state_file.display()))?;
    println!("{}", significant15(three_tangle(&state)));
    Ok(())
}

#[derive(Debug, Serialize)]
pub struct FamilySummary {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub d: f64,
    pub f: f64,
    /// `None` when `a b = 0`.
    pub s: Option<f64>,
    pub tau_ghz: f64,
    pub p0: f64,
    pub p1: f64,
}

impl FamilySummary {
    pub fn of(fam: &FamilyParams) -> Self {
        let th = thresholds(fam);
        Self {
            a: fam.a(),
            b: fam.b(),
            c: fam.c(),
            d: fam.d(),
            f: fam.f(),
            s: fam.s(),
            tau_ghz: fam.tau_ghz(),
            p0: th.p0,
            p1: th.p1,
        }
    }

    fn lines(&self) -> String {
        let s = self.s.map_or("inf".to_string(), |s| format!("{s:?}"));
        format!(
            "p0 = {:?}\np1 = {:?}\ns = {s}\ntau_ghz = {:?}\n",
            self.p0, self.p1, self.tau_ghz
        )
    }
}

pub fn roof(fam: &FamilyParams, grid: usize, phi_grid: usize, out: Option<&Path>) -> Result<Vec<CurveRow>> {
    let rows = roof_curve(fam, grid, phi_grid)?;
    let summary = FamilySummary::of(fam).lines();
    if out.is_some() {
        print!("{summary}");
    } else {
        // Keep stdout clean for the CSV.
        eprint!("{summary}");
    }
    let mut sink = open_output(out)?;
    write_csv(&mut sink, &rows)?;
    sink.flush()?;
    Ok(rows)
}

#[derive(Debug, Serialize)]
struct VerifyParams {
    #[serde(flatten)]
    family: FamilySummary,
    p_grid: usize,
    sizes: Vec<usize>,
    restarts: usize,
    seed: u64,
    tol: f64,
}

#[derive(Debug, Serialize)]
struct VerifyRow {
    p: f64,
    region: &'static str,
    analytic: f64,
    oracle: f64,
    char_min: f64,
    gap: f64,
    flag: VerifyFlag,
}

#[derive(Debug, Serialize)]
struct VerifySummary {
    max_gap: f64,
    falsified: bool,
    loose: usize,
}

#[derive(Debug, Serialize)]
struct VerifyDocument {
    params: VerifyParams,
    rows: Vec<VerifyRow>,
    summary: VerifySummary,
}

/// Returns whether any point was falsified.
pub fn verify(
    fam: &FamilyParams,
    p_grid: usize,
    sizes: Vec<usize>,
    restarts: usize,
    seed: u64,
    tol: f64,
    out: Option<&Path>,
) -> Result<bool> {
    let opts = VerifyOptions {
        p_grid,
        tol_gap: tol,
        oracle: OracleOptions {
            sizes: sizes.clone(),
            restarts,
            seed,
            ..Default::default()
        },
        ..Default::default()
    };
    let reports = verify_family(fam, &opts)?;
    let rows: Vec<VerifyRow> = reports
        .iter()
        .map(|r| VerifyRow {
            p: r.p,
            region: r.region.label(),
            analytic: r.analytic,
            oracle: r.oracle,
            char_min: r.char_min,
            gap: r.gap,
            flag: r.flag,
        })
        .collect();
    let falsified = reports.iter().any(|r| r.flag == VerifyFlag::Falsified);
    let doc = VerifyDocument {
        params: VerifyParams {
            family: FamilySummary::of(fam),
            p_grid,
            sizes,
            restarts,
            seed,
            tol,
        },
        summary: VerifySummary {
            max_gap: reports.iter().map(|r| r.gap.abs()).fold(0.0, f64::max),
            falsified,
            loose: reports.iter().filter(|r| r.flag == VerifyFlag::Loose).count(),
        },
        rows,
    };
    let mut sink = open_output(out)?;
    serde_json::to_writer_pretty(&mut sink, &doc)?;
    writeln!(sink)?;
    sink.flush()?;
    Ok(falsified)
}

#[derive(Debug, Serialize)]
struct MemberJson {
    weight: f64,
    tangle: f64,
    amplitudes: Vec<JsonAmplitude>,
}

#[derive(Debug, Serialize)]
struct DecompositionDocument {
    params: FamilySummary,
    p: f64,
    region: &'static str,
    degenerate: bool,
    weights: Vec<f64>,
    members: Vec<MemberJson>,
    residual: f64,
    average_tangle: f64,
    roof_value: f64,
}

pub fn decomposition(fam: &FamilyParams, p: f64, out: Option<&Path>) -> Result<()> {
    let opt = optimal_decomposition(fam, p)?;
    let residual = opt.decomposition.residual(&family_density(fam, p)?);
    if !(residual <= MAX_RESIDUAL) {
        bail!("decomposition residual {residual:e} exceeds {MAX_RESIDUAL:e}");
    }
    let members = opt
        .decomposition
        .members()
        .iter()
        .map(|m| MemberJson {
            weight: m.weight,
            tangle: three_tangle(&m.state),
            amplitudes: m.state.to_json_amplitudes(),
        })
        .collect();
    let doc = DecompositionDocument {
        params: FamilySummary::of(fam),
        p,
        region: opt.region.label(),
        degenerate: opt.degenerate,
        weights: opt.decomposition.weights(),
        members,
        residual,
        average_tangle: opt.decomposition.average_tangle(),
        roof_value: roof_value(fam, p)?,
    };
    let mut sink = open_output(out)?;
    serde_json::to_writer_pretty(&mut sink, &doc)?;
    writeln!(sink)?;
    sink.flush()?;
    Ok(())
}

pub const FIGURE1_TAU_GHZ: f64 = 0.0396;
pub const FIGURE1_PANELS: [(&str, f64); 2] = [("figure1a.csv", 7.0), ("figure1b.csv", 2.3)];

pub fn figure1(out_dir: &Path, grid: usize, phi_grid: usize) -> Result<Vec<PathBuf>> {
    fs::create_dir_all(out_dir)
        .with_context(|| format!("cannot create {}", out_dir.display()))?;
    let mut written = Vec::new();
    for (name, s) in FIGURE1_PANELS {
        let fam = tangleroof::solve_coefficients(s, FIGURE1_TAU_GHZ)?;
        let th = thresholds(&fam);
        let path = out_dir.join(name);
        let rows = roof_curve(&fam, grid, phi_grid)?;
        let mut sink = open_output(Some(&path))?;
        write_csv(&mut sink, &rows)?;
        sink.flush()?;
        let char_rows = rows
            .iter()
            .filter(|r| r.region == RoofRegion::CharacteristicCurve)
            .count();
        println!(
            "{name}: s = {s:?}, tau_ghz = {FIGURE1_TAU_GHZ:?}, p0 = {:?}, p1_noabs = {:?}, p1 = {:?}, CHAR rows = {char_rows}",
            th.p0,
            p_one_unconstrained(s)?,
            th.p1
        );
        written.push(path);
    }
    Ok(written)
}
