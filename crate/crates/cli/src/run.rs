//! Mode orchestration: fan grid points out to the worker pool, then write
//! tables and plots in grid order.

use std::path::{Path, PathBuf};

use rayon::prelude::*;

use bosezeno_core::discrete::MeasurementPlan;
use bosezeno_core::frame::SampleGrid;
use bosezeno_core::meanfield::{self, MeanFieldState, RelaxationConfig};
use bosezeno_core::{exact, readout, tmin};

use crate::config::{format_float, Mode, RunConfig};
use crate::error::CliError;
use crate::plot::{LinePlot, Series};
use crate::table::{Cell, ResultTable};

pub const DISCRETE_COLUMNS: &[&str] = &[
    "n",
    "success_probability",
    "lower_bound",
    "bound_vacuous",
    "max_delta_r",
];
pub const MEANFIELD_COLUMNS: &[&str] = &["t", "jz", "re_jplus", "im_jplus", "p_a"];
pub const EXACT_COLUMNS: &[&str] = &["t", "jz", "re_jplus", "im_jplus", "p_a", "purity"];
pub const READOUT_COLUMNS: &[&str] = &["N", "target_pe", "required_p"];
pub const TMIN_COLUMNS: &[&str] = &[
    "N",
    "T_min",
    "p_final",
    "certificate_lo",
    "certificate_hi",
    "required_p",
    "method",
    "exact_p_final",
];
pub const SWEEP_COLUMNS: &[&str] = &["N", "gamma_x", "gamma_z", "p_final"];

/// Column schema of every CSV a mode emits.
pub fn columns(mode: Mode) -> &'static [&'static str] {
    match mode {
        Mode::Discrete => DISCRETE_COLUMNS,
        Mode::Meanfield => MEANFIELD_COLUMNS,
        Mode::Exact => EXACT_COLUMNS,
        Mode::Readout => READOUT_COLUMNS,
        Mode::Tmin => TMIN_COLUMNS,
        Mode::Sweep => SWEEP_COLUMNS,
    }
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct RunReport {
    /// Every file written, in a fixed order.
    pub files: Vec<PathBuf>,
    /// One-line result summary, when the mode has one.
    pub summary: Option<String>,
}

/// Runs `config` on a pool of `workers` threads (all cores when `None`).
pub fn run_with_workers(config: &RunConfig, workers: Option<usize>) -> Result<RunReport, CliError> {
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(k) = workers {
        builder = builder.num_threads(k.max(1));
    }
    let pool = builder
        .build()
        .map_err(|e| CliError::io(&config.output_dir, std::io::Error::other(e)))?;
    pool.install(|| run(config))
}

/// Runs `config` on the current rayon pool.
pub fn run(config: &RunConfig) -> Result<RunReport, CliError> {
    let dir = &config.output_dir;
    std::fs::create_dir_all(dir).map_err(|e| CliError::io(dir, e))?;
    let mut out = Output {
        dir,
        config,
        report: RunReport::default(),
    };
    match config.mode {
        Mode::Discrete => discrete(&mut out)?,
        Mode::Meanfield => meanfield_mode(&mut out)?,
        Mode::Exact => exact_mode(&mut out)?,
        Mode::Readout => readout_mode(&mut out)?,
        Mode::Tmin => tmin_mode(&mut out)?,
        Mode::Sweep => sweep(&mut out)?,
    }
    Ok(out.report)
}

struct Output<'a> {
    dir: &'a Path,
    config: &'a RunConfig,
    report: RunReport,
}

impl Output<'_> {
    fn table(&mut self, name: &str, table: &ResultTable) -> Result<(), CliError> {
        let path = self.dir.join(name);
        table.write(&path, self.config)?;
        self.report.files.push(path);
        Ok(())
    }

    fn text(&mut self, name: &str, text: &str) -> Result<(), CliError> {
        let path = self.dir.join(name);
        std::fs::write(&path, text).map_err(|e| CliError::io(&path, e))?;
        self.report.files.push(path);
        Ok(())
    }
}

fn label(x: f64) -> String {
    format!("{x}")
}

fn relaxation_params(table: ResultTable, bosons: u32, r: &RelaxationConfig) -> ResultTable {
    table
        .param("N", bosons.to_string())
        .param("gamma_x", format_float(r.gamma_x()))
        .param("gamma_z", format_float(r.gamma_z()))
}

fn series_name(bosons: u32, r: &RelaxationConfig) -> String {
    format!(
        "N={bosons} gx={} gz={}",
        label(r.gamma_x()),
        label(r.gamma_z())
    )
}

fn file_stem(mode: Mode, bosons: u32, r: &RelaxationConfig) -> String {
    format!(
        "{mode}_N{bosons}_gx{}_gz{}",
        label(r.gamma_x()),
        label(r.gamma_z())
    )
}

fn grid_points(config: &RunConfig) -> Vec<(u32, RelaxationConfig)> {
    let relax = config.relaxations();
    config
        .bosons
        .iter()
        .flat_map(|&n| relax.iter().map(move |r| (n, *r)))
        .collect()
}

fn discrete(out: &mut Output) -> Result<(), CliError> {
    let config = out.config;
    let schedule = config.schedule();
    let mut plot = LinePlot {
        title: "Discrete Zeno measurement: success probability".into(),
        x_label: "measurements n".into(),
        y_label: "success probability".into(),
        log_x: true,
        markers: true,
        ..LinePlot::default()
    };
    for &bosons in &config.bosons {
        let rows = config
            .measurements
            .par_iter()
            .map(|&n| {
                let plan = MeasurementPlan::new(n, bosons, schedule)?;
                Ok((n, plan.success(), plan.lower_bound()))
            })
            .collect::<Result<Vec<_>, bosezeno_core::Error>>()?;
        let mut table =
            ResultTable::new(Mode::Discrete, DISCRETE_COLUMNS).param("N", bosons.to_string());
        for (n, success, bound) in &rows {
            table.push(vec![
                (*n).into(),
                success.probability.into(),
                bound.value.into(),
                bound.vacuous.into(),
                success.max_delta_r.into(),
            ]);
        }
        out.table(&format!("discrete_N{bosons}.csv"), &table)?;
        plot.series.push(Series {
            label: format!("N={bosons}"),
            points: rows
                .iter()
                .map(|(n, s, _)| (*n as f64, s.probability))
                .collect(),
        });
    }
    out.text("discrete.svg", &plot.render())
}

fn trajectory_plot(title: &str) -> LinePlot {
    LinePlot {
        title: title.into(),
        x_label: "t".into(),
        y_label: "p_a".into(),
        ..LinePlot::default()
    }
}

fn meanfield_mode(out: &mut Output) -> Result<(), CliError> {
    let config = out.config;
    let schedule = config.schedule();
    let solver = config.solver();
    let grid = SampleGrid::Uniform(config.samples);
    let points = grid_points(config);
    let records = points
        .par_iter()
        .map(|(n, r)| {
            meanfield::integrate(&MeanFieldState::ground(*n), r, &schedule, *n, grid, &solver)
        })
        .collect::<Result<Vec<_>, _>>()?;
    let mut plot = trajectory_plot("Mean-field lab probability p_a(t)");
    for ((n, r), record) in points.iter().zip(&records) {
        let mut table =
            relaxation_params(ResultTable::new(Mode::Meanfield, MEANFIELD_COLUMNS), *n, r);
        for s in &record.samples {
            table.push(vec![
                s.t.into(),
                s.jz.into(),
                s.jplus.re.into(),
                s.jplus.im.into(),
                s.p_a.into(),
            ]);
        }
        out.table(
            &format!("{}.csv", file_stem(Mode::Meanfield, *n, r)),
            &table,
        )?;
        plot.series.push(Series {
            label: series_name(*n, r),
            points: record.samples.iter().map(|s| (s.t, s.p_a)).collect(),
        });
    }
    out.text("meanfield.svg", &plot.render())
}

fn exact_mode(out: &mut Output) -> Result<(), CliError> {
    let config = out.config;
    // fail fast on capacity before any integration starts
    for &n in &config.bosons {
        exact::DickeDensityMatrix::ground(n)?;
    }
    let schedule = config.schedule();
    let solver = config.solver();
    let grid = SampleGrid::Uniform(config.samples);
    let points = grid_points(config);
    let runs = points
        .par_iter()
        .map(|(n, r)| exact::trajectory(r, &schedule, *n, grid, &solver))
        .collect::<Result<Vec<_>, _>>()?;
    let mut plot = trajectory_plot("Exact lab probability p_a(t)");
    for ((n, r), samples) in points.iter().zip(&runs) {
        let mut table = relaxation_params(ResultTable::new(Mode::Exact, EXACT_COLUMNS), *n, r);
        for s in samples {
            table.push(vec![
                s.t.into(),
                s.jz.into(),
                s.jplus.re.into(),
                s.jplus.im.into(),
                s.p_a.into(),
                s.purity.into(),
            ]);
        }
        out.table(&format!("{}.csv", file_stem(Mode::Exact, *n, r)), &table)?;
        plot.series.push(Series {
            label: series_name(*n, r),
            points: samples.iter().map(|s| (s.t, s.p_a)).collect(),
        });
    }
    out.text("exact.svg", &plot.render())
}

fn readout_mode(out: &mut Output) -> Result<(), CliError> {
    let config = out.config;
    let mut table = ResultTable::new(Mode::Readout, READOUT_COLUMNS);
    let mut points = Vec::new();
    for &n in &config.bosons {
        let p = readout::required_p(n, config.target_pe)?;
        table.push(vec![n.into(), config.target_pe.into(), p.into()]);
        points.push((f64::from(n), p - 0.5));
    }
    out.table("readout.csv", &table)?;
    let plot = LinePlot {
        title: format!(
            "Required per-boson margin for P_e <= {}",
            label(config.target_pe)
        ),
        x_label: "N".into(),
        y_label: "required_p - 1/2".into(),
        log_x: true,
        log_y: true,
        markers: true,
        series: vec![Series {
            label: "required_p - 1/2".into(),
            points,
        }],
    };
    out.text("readout.svg", &plot.render())
}

fn tmin_mode(out: &mut Output) -> Result<(), CliError> {
    let config = out.config;
    let relax = config.relaxations()[0];
    let search = config.tmin_search();
    let result = search.solve_grid(&config.bosons, &relax, &config.schedule(), config.target_pe)?;
    let mut table = ResultTable::new(Mode::Tmin, TMIN_COLUMNS)
        .param("gamma_x", format_float(relax.gamma_x()))
        .param("gamma_z", format_float(relax.gamma_z()));
    for e in &result.entries {
        table.push(vec![
            e.bosons.into(),
            e.t_min.into(),
            e.p_final.into(),
            e.certificate_lo.into(),
            e.certificate_hi.into(),
            e.required_p.into(),
            Cell::Text(e.method.as_str()),
            e.exact_p_final.into(),
        ]);
    }
    out.table("tmin.csv", &table)?;
    let plot = LinePlot {
        title: format!("Minimum sweep time for P_e <= {}", label(config.target_pe)),
        x_label: "N".into(),
        y_label: "T_min".into(),
        log_x: true,
        log_y: true,
        markers: true,
        series: vec![Series {
            label: format!(
                "gx={} gz={}",
                label(relax.gamma_x()),
                label(relax.gamma_z())
            ),
            points: result
                .entries
                .iter()
                .map(|e| (f64::from(e.bosons), e.t_min))
                .collect(),
        }],
    };
    out.text("tmin.svg", &plot.render())?;
    let fit = tmin::fit_exponent(&result.entries)?;
    let summary = format!(
        "slope = {:.4} +/- {:.4} (least squares over the top {} of {} entries, N = {}..{}); T_min non-increasing in N: {}",
        fit.slope,
        fit.residual,
        fit.points,
        result.entries.len(),
        result.entries[result.entries.len() - fit.points].bosons,
        result.entries[result.entries.len() - 1].bosons,
        if result.is_monotone() { "yes" } else { "no" },
    );
    out.text("tmin_summary.txt", &format!("{summary}\n"))?;
    out.report.summary = Some(summary);
    Ok(())
}

fn sweep(out: &mut Output) -> Result<(), CliError> {
    let config = out.config;
    let schedule = config.schedule();
    let solver = config.solver();
    let points = grid_points(config);
    let finals = points
        .par_iter()
        .map(|(n, r)| meanfield::final_probability(r, &schedule, *n, &solver))
        .collect::<Result<Vec<_>, _>>()?;
    let mut table = ResultTable::new(Mode::Sweep, SWEEP_COLUMNS);
    for ((n, r), p) in points.iter().zip(&finals) {
        table.push(vec![
            (*n).into(),
            r.gamma_x().into(),
            r.gamma_z().into(),
            (*p).into(),
        ]);
    }
    out.table("sweep.csv", &table)?;
    let mut plot = LinePlot {
        title: "Final lab probability against longitudinal relaxation".into(),
        x_label: "gamma_x".into(),
        y_label: "p_a(T/2)".into(),
        log_x: config.gamma_x.iter().all(|g| *g > 0.0),
        markers: true,
        ..LinePlot::default()
    };
    for &n in &config.bosons {
        for &gz in &config.gamma_z {
            plot.series.push(Series {
                label: format!("N={n} gz={}", label(gz)),
                points: points
                    .iter()
                    .zip(&finals)
                    .filter(|((m, r), _)| *m == n && r.gamma_z() == gz)
                    .map(|((_, r), p)| (r.gamma_x(), *p))
                    .collect(),
            });
        }
    }
    out.text("sweep.svg", &plot.render())
}
