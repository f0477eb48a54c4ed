//! Command-line front end: configure a quench scenario, run the requested
//! computations, and emit CSV trajectories or analysis reports.

use clap::{Args, Parser, Subcommand};
use std::path::PathBuf;
use std::process::ExitCode;

use ringquench::analysis::{self, DEFAULT_KAPPA};
use ringquench::error::Error;
use ringquench::io::{read_csv, write_csv, CsvTable, Method, RunConfig, TimeUnit};
use ringquench::lattice::{derive_params, IdealModelParams, LatticeConfig};
use ringquench::run::{exact_quench_series, ideal_quench_series, QuenchSeries};
use ringquench::series::{time_grid, TimeSeries};
use ringquench::truncated::{build_truncated, evolve_truncated, m_window_bounds};
use ringquench::{ideal, Result};

#[derive(Parser)]
#[command(name = "ringquench", version, about = "Quench dynamics of a Bloch state against a sudden site defect on a tight-binding ring")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct ScenarioArgs {
    /// Number of lattice sites N
    #[arg(long)]
    n: Option<usize>,
    /// Initial Bloch index k_i
    #[arg(long)]
    k: Option<i64>,
    /// Defect strength U (hopping = 1)
    #[arg(long)]
    u: Option<f64>,
    /// Defect site j
    #[arg(long, default_value_t = 0)]
    site: usize,
}

impl ScenarioArgs {
    fn resolve(&self, base: Option<LatticeConfig>) -> Result<LatticeConfig> {
        let (n, k, u, site) = match base {
            Some(b) => (
                self.n.unwrap_or(b.n_sites),
                self.k.unwrap_or(b.k_init),
                self.u.unwrap_or(b.defect_strength),
                if self.site != 0 { self.site } else { b.defect_site },
            ),
            None => (
                self.n.ok_or_else(|| Error::InvalidConfig("--n is required".into()))?,
                self.k.ok_or_else(|| Error::InvalidConfig("--k is required".into()))?,
                self.u.ok_or_else(|| Error::InvalidConfig("--u is required".into()))?,
                self.site,
            ),
        };
        LatticeConfig::new(n, k, u, site)
    }
}

#[derive(Subcommand)]
enum Command {
    /// Run the quench and write P_i, P_r, P_R (and side populations) per method
    Quench {
        #[command(flatten)]
        scenario: ScenarioArgs,
        /// JSON run configuration; flags override file values
        #[arg(long)]
        config: Option<PathBuf>,
        /// Time horizon in revival periods T (see --absolute)
        #[arg(long)]
        periods: Option<f64>,
        /// Interpret the horizon as absolute time instead of periods
        #[arg(long)]
        absolute: bool,
        /// Samples per revival period
        #[arg(long)]
        samples_per_period: Option<usize>,
        /// Comma-separated subset of exact,truncated,ideal
        #[arg(long, value_delimiter = ',')]
        methods: Vec<Method>,
        /// Truncation window M for the truncated method
        #[arg(long)]
        m: Option<usize>,
        /// Output CSV path
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Evolve the truncated equal-spacing model and write psi_0 and S
    Truncated {
        /// Truncation window M
        #[arg(long)]
        m: usize,
        /// Coupling-to-spacing ratio g/Δ (with Δ = 1); alternative to --n/--k/--u
        #[arg(long)]
        g_over_delta: Option<f64>,
        #[command(flatten)]
        scenario: ScenarioArgs,
        #[arg(long, default_value_t = 2.0)]
        periods: f64,
        #[arg(long, default_value_t = 400)]
        samples_per_period: usize,
        #[arg(long)]
        out: PathBuf,
    },
    /// Evaluate the closed-form solution on a time grid
    Ideal {
        #[command(flatten)]
        scenario: ScenarioArgs,
        #[arg(long, default_value_t = 6.0)]
        periods: f64,
        #[arg(long, default_value_t = 100)]
        samples_per_period: usize,
        #[arg(long)]
        out: PathBuf,
    },
    /// Compare a column of two CSV files (max and rms error)
    Compare {
        #[arg(long)]
        a: PathBuf,
        #[arg(long)]
        b: PathBuf,
        /// Column to compare (default: every shared non-time column)
        #[arg(long)]
        col: Option<String>,
    },
    /// Detect cusps in a CSV column and report times, spacings, and tips
    Cusps {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        col: String,
        /// Threshold multiplier on the median second difference
        #[arg(long, default_value_t = DEFAULT_KAPPA)]
        kappa: f64,
        #[command(flatten)]
        scenario: ScenarioArgs,
    },
    /// Check the partial sums of sin^2(n a)/(n a)^2 against pi/a
    IdentityCheck {
        #[arg(long)]
        alpha: f64,
        #[arg(long, default_value_t = 1_000_000)]
        nmax: usize,
    },
    /// Report the admissible truncation window [m_min, m_max] for a scenario
    MWindow {
        #[command(flatten)]
        scenario: ScenarioArgs,
        #[arg(long, default_value_t = 0.02)]
        accuracy: f64,
    },
    /// Reproduce the bundled reference parameter sets (1, 2, 4, 5, 6, 7)
    Figures {
        #[arg(long)]
        which: String,
        #[arg(long, default_value = ".")]
        outdir: PathBuf,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            // help/version are not errors
            use clap::error::ErrorKind::*;
            let _ = e.print();
            return match e.kind() {
                DisplayHelp | DisplayVersion => ExitCode::SUCCESS,
                _ => ExitCode::from(1),
            };
        }
    };
    match dispatch(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            let code = match e {
                Error::Eigensolver(_) | Error::NormDrift { .. } | Error::Numerical(_) => 2,
                _ => 1,
            };
            ExitCode::from(code)
        }
    }
}

fn dispatch(cmd: Command) -> Result<()> {
    match cmd {
        Command::Quench {
            scenario,
            config,
            periods,
            absolute,
            samples_per_period,
            methods,
            m,
            out,
        } => {
            let base = config.as_deref().map(RunConfig::from_json_file).transpose()?;
            let cfg = scenario.resolve(base.as_ref().map(|b| b.scenario))?;
            let rc = RunConfig {
                scenario: cfg,
                t_max: periods
                    .or(base.as_ref().map(|b| b.t_max))
                    .ok_or_else(|| Error::InvalidConfig("--periods (or a config file) is required".into()))?,
                t_max_unit: if absolute {
                    TimeUnit::Absolute
                } else {
                    base.as_ref().map(|b| b.t_max_unit).unwrap_or(TimeUnit::Periods)
                },
                samples_per_period: samples_per_period
                    .or(base.as_ref().map(|b| b.samples_per_period))
                    .unwrap_or(100),
                methods: if methods.is_empty() {
                    base.as_ref().map(|b| b.methods.clone()).unwrap_or_default()
                } else {
                    methods
                },
                truncation_m: m.or(base.as_ref().and_then(|b| b.truncation_m)),
                output: out
                    .as_ref()
                    .map(|p| p.display().to_string())
                    .or(base.as_ref().map(|b| b.output.clone()))
                    .ok_or_else(|| Error::InvalidConfig("--out (or a config file) is required".into()))?,
            };
            rc.validate()?;
            run_quench(&rc)
        }
        Command::Truncated { m, g_over_delta, scenario, periods, samples_per_period, out } => {
            let (params, meta_src): (IdealModelParams, Vec<(String, String)>) = match g_over_delta {
                Some(r) => (
                    IdealModelParams::from_g_delta(r, 1.0)?,
                    vec![("g_over_delta".into(), format!("{r:.16e}"))],
                ),
                None => {
                    let cfg = scenario.resolve(None)?;
                    let p = derive_params(&cfg)?;
                    (p, vec![
                        ("n_sites".into(), cfg.n_sites.to_string()),
                        ("k_init".into(), cfg.k_init.to_string()),
                        ("defect_strength".into(), format!("{:.16e}", cfg.defect_strength)),
                    ])
                }
            };
            run_truncated(&params, m, periods, samples_per_period, &out, meta_src)
        }
        Command::Ideal { scenario, periods, samples_per_period, out } => {
            let cfg = scenario.resolve(None)?;
            let params = derive_params(&cfg)?;
            let samples = ((periods * samples_per_period as f64).round() as usize).max(1) + 1;
            let times = time_grid(periods * params.heisenberg_time, samples);
            let qs = ideal_quench_series(&params, &times, &[1, 2, 3]);
            let mut table = base_table(&times, &params);
            push_meta_scenario(&mut table, &cfg, &params);
            table.push_meta("method", "ideal");
            push_quench_columns(&mut table, &qs, "");
            write_csv(&out, &table)?;
            println!("wrote {} rows to {}", table.n_rows(), out.display());
            Ok(())
        }
        Command::Compare { a, b, col } => {
            let ta = read_csv(&a)?;
            let tb = read_csv(&b)?;
            let times_a = ta
                .column("t")
                .ok_or_else(|| Error::Parse(format!("{}: missing t column", a.display())))?;
            let times_b = tb
                .column("t")
                .ok_or_else(|| Error::Parse(format!("{}: missing t column", b.display())))?;
            let cols: Vec<String> = match col {
                Some(c) => vec![c],
                None => ta
                    .columns
                    .iter()
                    .map(|(n, _)| n.clone())
                    .filter(|n| n != "t" && n != "t_over_T" && tb.column(n).is_some())
                    .collect(),
            };
            if cols.is_empty() {
                return Err(Error::Parse("no shared columns to compare".into()));
            }
            for c in cols {
                let va = ta
                    .column(&c)
                    .ok_or_else(|| Error::Parse(format!("{}: missing column {c}", a.display())))?;
                let vb = tb
                    .column(&c)
                    .ok_or_else(|| Error::Parse(format!("{}: missing column {c}", b.display())))?;
                let sa = TimeSeries::new(times_a.to_vec(), va.to_vec(), c.clone())?;
                let sb = TimeSeries::new(times_b.to_vec(), vb.to_vec(), c.clone())?;
                let rep = analysis::compare_series(&sa, &sb)?;
                println!("{c}: max_abs_error = {:.6e}, rms_error = {:.6e}", rep.max_abs_error, rep.rms_error);
            }
            Ok(())
        }
        Command::Cusps { input, col, kappa, scenario } => {
            let table = read_csv(&input)?;
            let times = table
                .column("t")
                .ok_or_else(|| Error::Parse(format!("{}: missing t column", input.display())))?;
            let values = table
                .column(&col)
                .ok_or_else(|| Error::Parse(format!("{}: missing column {col}", input.display())))?;
            let params = params_from_metadata(&table)
                .or_else(|_| scenario.resolve(None).and_then(|c| derive_params(&c)))
                .map_err(|_| {
                    Error::InvalidConfig(
                        "scenario not found in file metadata; pass --n/--k/--u".into(),
                    )
                })?;
            let series = TimeSeries::new(times.to_vec(), values.to_vec(), col.clone())?;
            let rep = analysis::detect_cusps(&series, &params, kappa)?;
            println!("# expected period T = {:.6}", params.heisenberg_time);
            println!("cusp_time,spacing_to_next,tip_value");
            for (i, (&t, &v)) in rep.cusp_times.iter().zip(&rep.tip_values).enumerate() {
                let spacing = rep.spacings.get(i).map_or(String::from(""), |s| format!("{s:.6}"));
                println!("{t:.6},{spacing},{v:.6}");
            }
            if rep.is_empty() {
                println!("# no cusps detected");
            }
            Ok(())
        }
        Command::IdentityCheck { alpha, nmax } => {
            if !(alpha > 0.0 && alpha < std::f64::consts::PI) {
                return Err(Error::InvalidConfig(format!(
                    "alpha must lie in (0, pi), got {alpha}"
                )));
            }
            let partial = ideal::sinc_sum_identity(alpha, nmax);
            let exact = std::f64::consts::PI / alpha;
            let tail = 2.0 / (alpha * alpha * nmax as f64);
            println!("partial_sum = {partial:.12}");
            println!("pi/alpha    = {exact:.12}");
            println!("difference  = {:.3e} (tail bound {:.3e})", exact - partial, tail);
            Ok(())
        }
        Command::MWindow { scenario, accuracy } => {
            let cfg = scenario.resolve(None)?;
            let w = m_window_bounds(&cfg, accuracy)?;
            println!("m_min = {} (accuracy {accuracy})", w.m_min);
            println!("m_max = {}", w.m_max);
            Ok(())
        }
        Command::Figures { which, outdir } => run_figures(&which, &outdir),
    }
}

fn base_table(times: &[f64], params: &IdealModelParams) -> CsvTable {
    let mut table = CsvTable::default();
    table.columns.push(("t".into(), times.to_vec()));
    table.columns.push((
        "t_over_T".into(),
        times.iter().map(|t| t / params.heisenberg_time).collect(),
    ));
    table
}

fn push_meta_scenario(table: &mut CsvTable, cfg: &LatticeConfig, params: &IdealModelParams) {
    table.push_meta("n_sites", cfg.n_sites);
    table.push_meta("k_init", cfg.k_init);
    table.push_meta("defect_strength", format!("{:.16e}", cfg.defect_strength));
    table.push_meta("defect_site", cfg.defect_site);
    push_meta_params(table, params);
}

fn push_meta_params(table: &mut CsvTable, params: &IdealModelParams) {
    table.push_meta("g", format!("{:.16e}", params.g));
    table.push_meta("delta", format!("{:.16e}", params.delta));
    table.push_meta("T", format!("{:.16e}", params.heisenberg_time));
    table.push_meta("theta", format!("{:.16e}", params.theta));
    table.push_meta("omega", format!("{:.16e}", params.omega));
}

fn push_quench_columns(table: &mut CsvTable, qs: &QuenchSeries, suffix: &str) {
    table.columns.push((format!("P_i{suffix}"), qs.p_i.clone()));
    table.columns.push((format!("P_r{suffix}"), qs.p_r.clone()));
    table.columns.push((format!("P_R{suffix}"), qs.p_right.clone()));
    for (n, v) in &qs.p_n {
        table.columns.push((format!("P_{n}{suffix}"), v.clone()));
    }
}

fn run_quench(rc: &RunConfig) -> Result<()> {
    let params = derive_params(&rc.scenario)?;
    let t_max = match rc.t_max_unit {
        TimeUnit::Periods => rc.t_max * params.heisenberg_time,
        TimeUnit::Absolute => rc.t_max,
    };
    let n_periods = t_max / params.heisenberg_time;
    let samples = ((n_periods * rc.samples_per_period as f64).round() as usize).max(1) + 1;
    let times = time_grid(t_max, samples);
    let side: Vec<i64> = vec![1, 2, 3];

    let mut table = base_table(&times, &params);
    for (k, v) in rc.metadata() {
        table.push_meta(k, v);
    }
    push_meta_params(&mut table, &params);

    for method in &rc.methods {
        match method {
            Method::Exact => {
                let qs = exact_quench_series(&rc.scenario, &times, &side)?;
                push_quench_columns(&mut table, &qs, "_exact");
            }
            Method::Ideal => {
                let qs = ideal_quench_series(&params, &times, &side);
                push_quench_columns(&mut table, &qs, "_ideal");
            }
            Method::Truncated => {
                let m = rc.truncation_m.ok_or_else(|| {
                    Error::InvalidConfig("the truncated method needs --m".into())
                })?;
                let model = build_truncated(&params, m)?;
                let traj = evolve_truncated(&model, t_max, samples)?;
                let psi0 = traj.psi0();
                let one = num_complex::Complex64::new(1.0, 0.0);
                table.columns.push((
                    "P_i_truncated".into(),
                    psi0.iter().map(|p| (one + p).norm_sqr() / 4.0).collect(),
                ));
                table.columns.push((
                    "P_r_truncated".into(),
                    psi0.iter().map(|p| (one - p).norm_sqr() / 4.0).collect(),
                ));
            }
        }
    }
    let out = PathBuf::from(&rc.output);
    write_csv(&out, &table)?;
    println!("wrote {} rows to {}", table.n_rows(), out.display());
    Ok(())
}

fn run_truncated(
    params: &IdealModelParams,
    m: usize,
    periods: f64,
    samples_per_period: usize,
    out: &PathBuf,
    extra_meta: Vec<(String, String)>,
) -> Result<()> {
    let samples = ((periods * samples_per_period as f64).round() as usize).max(1) + 1;
    let t_max = periods * params.heisenberg_time;
    let model = build_truncated(params, m)?;
    let traj = evolve_truncated(&model, t_max, samples)?;
    let mut table = base_table(&traj.times, params);
    for (k, v) in extra_meta {
        table.push_meta(k, v);
    }
    table.push_meta("truncation_m", m);
    push_meta_params(&mut table, params);
    let psi0 = traj.psi0();
    table.columns.push(("re_psi0".into(), psi0.iter().map(|c| c.re).collect()));
    table.columns.push(("im_psi0".into(), psi0.iter().map(|c| c.im).collect()));
    table.columns.push(("abs2_psi0".into(), psi0.iter().map(|c| c.norm_sqr()).collect()));
    table.columns.push(("re_S".into(), traj.s_values.iter().map(|c| c.re).collect()));
    table.columns.push(("im_S".into(), traj.s_values.iter().map(|c| c.im).collect()));
    // closed-form reference on the same grid
    let ideal_psi0: Vec<_> = traj.times.iter().map(|&t| ideal::psi0_closed_form(params, t)).collect();
    table.columns.push(("re_psi0_ideal".into(), ideal_psi0.iter().map(|c| c.re).collect()));
    table.columns.push(("im_psi0_ideal".into(), ideal_psi0.iter().map(|c| c.im).collect()));
    write_csv(out, &table)?;
    println!("wrote {} rows to {}", table.n_rows(), out.display());
    Ok(())
}

fn params_from_metadata(table: &CsvTable) -> Result<IdealModelParams> {
    let n: usize = meta_parse(table, "n_sites")?;
    let k: i64 = meta_parse(table, "k_init")?;
    let u: f64 = meta_parse(table, "defect_strength")?;
    let site: usize = meta_parse(table, "defect_site").unwrap_or(0);
    derive_params(&LatticeConfig::new(n, k, u, site)?)
}

fn meta_parse<T: std::str::FromStr>(table: &CsvTable, key: &str) -> Result<T> {
    table
        .metadata_value(key)
        .ok_or_else(|| Error::Parse(format!("metadata key {key} missing")))?
        .parse()
        .map_err(|_| Error::Parse(format!("metadata key {key} unparsable")))
}

fn run_figures(which: &str, outdir: &PathBuf) -> Result<()> {
    std::fs::create_dir_all(outdir)?;
    let quench = |n: usize, k: i64, u: f64, periods: f64, spp: usize, name: &str| -> Result<()> {
        let rc = RunConfig {
            scenario: LatticeConfig::new(n, k, u, 0)?,
            t_max: periods,
            t_max_unit: TimeUnit::Periods,
            samples_per_period: spp,
            methods: vec![Method::Exact, Method::Ideal],
            truncation_m: None,
            output: outdir.join(name).display().to_string(),
        };
        run_quench(&rc)
    };
    match which {
        "1" | "2" | "6" => {
            // the three reference scenarios, exact + closed form
            quench(401, 80, 1.5, 6.0, 100, "fig_a_401_80_1.5.csv")?;
            quench(301, 75, 2.0, 6.0, 100, "fig_b_301_75_2.csv")?;
            quench(201, 50, 12.0, 6.0, 100, "fig_c_201_50_12.csv")?;
        }
        "4" => {
            // S and psi0 for M = 10, g/delta = 0.125
            let p = IdealModelParams::from_g_delta(0.125, 1.0)?;
            run_truncated(&p, 10, 3.0, 800, &outdir.join("fig_s_m10.csv"), vec![])?;
        }
        "5" => {
            // convergence study: M in {5, 10, 20}, g/delta = 0.5
            let p = IdealModelParams::from_g_delta(0.5, 1.0)?;
            for m in [5usize, 10, 20] {
                run_truncated(&p, m, 1.0, 400, &outdir.join(format!("fig_conv_m{m}.csv")), vec![])?;
            }
        }
        "7" => {
            // right movers for the (201, 50, 12) scenario
            quench(201, 50, 12.0, 6.0, 200, "fig_rightmovers_201_50_12.csv")?;
        }
        other => {
            return Err(Error::InvalidConfig(format!(
                "unknown figure bundle {other:?}; available: 1, 2, 4, 5, 6, 7"
            )))
        }
    }
    Ok(())
}
