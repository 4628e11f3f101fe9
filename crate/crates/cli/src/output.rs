//! Trajectory CSV files and the gnuplot script for the figure panels.
//!
//! A CSV starts with `#` comment lines echoing every parameter, then the
//! header `time_ps,fidelity,trace,purity,min_eig` and one row per step.
//! `min_eig` is only computed every few steps and left empty elsewhere.
//! Numbers carry 12 significant digits.

use std::io::{self, Read, Write};

use tridot::gate::{gate_time, FidelityTrajectory, GateScenario, Panel, Preset};

pub const COLUMNS: [&str; 5] = ["time_ps", "fidelity", "trace", "purity", "min_eig"];

/// Eigenvalues this close to zero are printed as 0.
pub const MIN_EIG_SNAP: f64 = 1e-14;

/// `x` rounded to 12 significant digits, printed in shortest form.
pub fn sig12(x: f64) -> String {
    if x == 0.0 || !x.is_finite() {
        return if x == 0.0 { "0".into() } else { x.to_string() };
    }
    let rounded: f64 = format!("{x:.11e}").parse().expect("valid float");
    if (1e-4..1e15).contains(&rounded.abs()) {
        rounded.to_string()
    } else {
        format!("{rounded:e}")
    }
}

/// Comment lines describing a scenario.
pub fn scenario_echo(s: &GateScenario) -> Vec<String> {
    let tg = gate_time(&s.params, &s.setup).map_or(f64::NAN, |t| t);
    vec![
        format!("scenario = {}", s.label),
        format!("configuration = {}", s.setup.configuration),
        format!("transition = {}", s.setup.transition),
        format!("noise = {}", s.mode),
        format!("temperature_K = {}", s.params.temperature),
        format!("t_max_ps = {}", s.t_max),
        format!("dt_ps = {}", s.dt),
        format!("alpha = {}", s.setup.alpha),
        format!("omega_l_meV = {}", s.setup.omega_l),
        format!("d_nm = {}", s.setup.d),
        format!("gate_time_ps = {tg}"),
    ]
}

pub fn write_trajectory<W: Write>(
    mut w: W,
    comments: &[String],
    traj: &FidelityTrajectory,
) -> io::Result<()> {
    for c in comments {
        writeln!(w, "# {c}")?;
    }
    writeln!(w, "{}", COLUMNS.join(","))?;
    for k in 0..traj.len() {
        let min_eig = traj.min_eigenvalue[k]
            .map(|e| sig12(if e.abs() < MIN_EIG_SNAP { 0.0 } else { e }))
            .unwrap_or_default();
        writeln!(
            w,
            "{},{},{},{},{min_eig}",
            sig12(traj.times[k]),
            sig12(traj.fidelity[k]),
            sig12(traj.trace[k]),
            sig12(traj.purity[k]),
        )?;
    }
    w.flush()
}

/// Columns of a trajectory CSV read back from disk.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct CsvTrajectory {
    pub comments: Vec<String>,
    pub times: Vec<f64>,
    pub fidelity: Vec<f64>,
    pub trace: Vec<f64>,
    pub purity: Vec<f64>,
    pub min_eig: Vec<Option<f64>>,
}

#[derive(Debug, thiserror::Error)]
pub enum CsvReadError {
    #[error(transparent)]
    Io(#[from] io::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
    #[error("unexpected header {0:?}")]
    Header(Vec<String>),
    #[error("row {row}: {source}")]
    Number {
        row: usize,
        source: std::num::ParseFloatError,
    },
}

pub fn read_trajectory<R: Read>(mut r: R) -> Result<CsvTrajectory, CsvReadError> {
    let mut text = String::new();
    r.read_to_string(&mut text)?;
    let mut out = CsvTrajectory {
        comments: text
            .lines()
            .filter_map(|l| l.strip_prefix("# ").map(str::to_owned))
            .collect(),
        ..Default::default()
    };
    let mut reader = csv::ReaderBuilder::new()
        .comment(Some(b'#'))
        .from_reader(text.as_bytes());
    let header: Vec<String> = reader.headers()?.iter().map(str::to_owned).collect();
    if header != COLUMNS {
        return Err(CsvReadError::Header(header));
    }
    for (row, record) in reader.records().enumerate() {
        let record = record?;
        let num = |i: usize| record[i].parse::<f64>().map_err(|source| CsvReadError::Number { row, source });
        out.times.push(num(0)?);
        out.fidelity.push(num(1)?);
        out.trace.push(num(2)?);
        out.purity.push(num(3)?);
        out.min_eig.push(if record[4].is_empty() { None } else { Some(num(4)?) });
    }
    Ok(out)
}

fn panel_title(panel: Panel) -> &'static str {
    match panel {
        Panel::A => "(a) ring, high-level transition",
        Panel::B => "(b) line, high-level transition",
        Panel::C => "(c) line, low-level transition",
    }
}

/// A gnuplot script drawing the three panels from the CSVs next to it.
pub fn fig2_script(presets: &[Preset]) -> String {
    let mut s = String::from(
        "# gnuplot script: run `gnuplot fig2.gp` in this directory.\n\
         set datafile separator ','\n\
         set datafile commentschars '#'\n\
         set key autotitle columnheader bottom right\n\
         set terminal pngcairo size 1500,450\n\
         set output 'fig2.png'\n\
         set multiplot layout 1,3\n\
         set xlabel 'delay time (ps)'\n\
         set ylabel 'fidelity'\n\
         set yrange [0.5:1.02]\n",
    );
    let colours = ["black", "red", "blue", "dark-green", "magenta"];
    for panel in Panel::ALL {
        let curves: Vec<&Preset> = presets.iter().filter(|p| p.panel == panel).collect();
        s.push_str(&format!("set title '{}'\n", panel_title(panel)));
        let lines: Vec<String> = curves
            .iter()
            .zip(colours)
            .map(|(p, c)| {
                let sc = &p.scenario;
                let title = match sc.mode {
                    tridot::dynamics::NoiseMode::None => "no noise".to_owned(),
                    tridot::dynamics::NoiseMode::SpontaneousOnly => "spontaneous only".to_owned(),
                    tridot::dynamics::NoiseMode::Full => format!("T = {} K", sc.temperature()),
                };
                format!("'{}.csv' using 1:2 with lines lc rgb '{c}' title '{title}'", p.stem())
            })
            .collect();
        s.push_str(&format!("plot {}\n", lines.join(", \\\n     ")));
    }
    s.push_str("unset multiplot\n");
    s
}
