use std::time::Instant;

use clap::Args;
use mvsurf::surface::GridSpec;
use mvsurf::zerohunt::{
    alpha_sweep, boundary_value_scan_with, level_grid_export, locate_extraneous_zero, parse_rows, sign_changes,
    table1_reproduce, theta_d_sweep, HuntConfig, Verdict, Window,
};
use serde::Serialize;
use serde_json::json;

use crate::output::{num, Report, Table};
use crate::parse;
use crate::{CmdResult, Env, Failure};

#[derive(Debug, Args, Serialize)]
pub struct ConfigArgs {
    #[arg(long, default_value = "3")]
    pub alpha: String,
    /// Number of points (even).
    #[arg(long, default_value_t = 6)]
    pub n: usize,
    #[arg(long, default_value = "0.51")]
    pub theta: String,
    #[arg(long, default_value = "10")]
    pub d: String,
}

impl ConfigArgs {
    fn config(&self, env: &Env) -> Result<HuntConfig, Failure> {
        if self.n > mvsurf::zerohunt::DESK_SCALE_MAX_N && !env.long_running {
            return Err(Failure::Usage(format!(
                "n = {} exceeds {}; pass --long-running to allow it",
                self.n,
                mvsurf::zerohunt::DESK_SCALE_MAX_N
            )));
        }
        Ok(HuntConfig::parse(env.ctx, &self.alpha, self.n, &self.theta, &self.d)?)
    }
}

#[derive(Debug, Args, Serialize)]
pub struct HuntArgs {
    #[command(flatten)]
    pub config: ConfigArgs,
    /// Required ratio of |K_A(1,0)| to the residual at the prescribed zeros.
    #[arg(long, default_value_t = mvsurf::zerohunt::DEFAULT_MARGIN)]
    pub margin: f64,
}

pub fn zerohunt(env: &Env, args: &HuntArgs) -> CmdResult {
    let cfg = args.config.config(env)?;
    let mut result = boundary_value_scan_with(&cfg, args.margin)?;
    let location = if result.verdict == Verdict::ExtraneousZeroFound {
        let loc = locate_extraneous_zero(&result)?;
        result.located_zero = Some(loc.x0.clone());
        Some(json!({
            "x0": num(&loc.x0),
            "kernel_value": loc.kernel_value.to_string_digits(6),
            "imag_defect": loc.imag_defect.to_string_digits(6),
            "distance_to_zero_set": loc.distance_to_zero_set.to_string_digits(6),
            "weighted_kernel_value": loc.weighted_kernel_value.to_string_digits(6),
        }))
    } else {
        None
    };
    let doc = json!({
        "config": cfg.to_doc(),
        "result": result.to_doc(),
        "location": location,
    });
    Ok(Report::object(doc))
}

#[derive(Debug, Args, Serialize)]
pub struct Table1Args {
    /// 1-based rows, e.g. `1-4`, `5` or `all`.
    #[arg(long, default_value = "1-5")]
    pub rows: String,
}

pub fn table1(env: &Env, args: &Table1Args) -> CmdResult {
    let rows = parse_rows(&args.rows)?;
    let report = table1_reproduce(env.ctx, &rows, env.long_running)?;
    let mut table = Table::new(&[
        "row",
        "alpha",
        "n",
        "theta",
        "d",
        "verdict",
        "boundary_value",
        "zero_residual",
        "located_zero",
        "status",
    ]);
    let mut passed = true;
    let mut timings = std::collections::BTreeMap::new();
    for r in &report.rows {
        let status = if r.skipped {
            "skipped (long-running)".to_string()
        } else if let Some(e) = &r.error {
            format!("error: {e}")
        } else {
            "ok".to_string()
        };
        if !r.skipped {
            passed &= r.verdict() == Some(Verdict::ExtraneousZeroFound);
            timings.insert(format!("row{}", r.row), r.seconds);
        }
        let res = r.result.as_ref();
        table.push([
            r.row.to_string(),
            r.config.alpha.clone(),
            r.config.n.to_string(),
            r.config.theta.clone(),
            r.config.d.clone(),
            r.verdict().map(|v| v.as_str().to_string()).unwrap_or_default(),
            res.map(|x| x.boundary_value.clone()).unwrap_or_default(),
            res.map(|x| x.zero_residual.clone()).unwrap_or_default(),
            res.and_then(|x| x.located_zero.clone()).unwrap_or_default(),
            status,
        ]);
    }
    let mut out = Report::new(serde_json::to_value(&report).map_err(|e| Failure::Usage(e.to_string()))?, table);
    out.timings = timings;
    Ok(out.with_check(passed))
}

#[derive(Debug, Args, Serialize)]
pub struct SweepArgs {
    #[command(flatten)]
    pub config: ConfigArgs,
    /// Comma-separated alphas.
    #[arg(long, conflicts_with = "alpha_range")]
    pub alphas: Option<String>,
    /// `lo:hi:count`.
    #[arg(long)]
    pub alpha_range: Option<String>,
    /// Comma-separated thetas for a (theta, d) grid at fixed alpha.
    #[arg(long, requires = "ds")]
    pub thetas: Option<String>,
    #[arg(long, requires = "thetas")]
    pub ds: Option<String>,
}

pub fn sweep(env: &Env, args: &SweepArgs) -> CmdResult {
    let cfg = args.config.config(env)?;
    if let (Some(thetas), Some(ds)) = (&args.thetas, &args.ds) {
        let thetas = parse::reals(env.ctx, thetas)?;
        let ds = parse::reals(env.ctx, ds)?;
        let pts = theta_d_sweep(env.ctx, &cfg.alpha, cfg.n, &thetas, &ds)?;
        let mut table = Table::new(&["theta", "d", "boundary_value", "zero_residual", "verdict"]);
        for p in &pts {
            table.push([
                p.theta.clone(),
                p.d.clone(),
                p.boundary_value.clone(),
                p.zero_residual.clone(),
                p.verdict.as_str().into(),
            ]);
        }
        let doc = json!({ "alpha": cfg.alpha.to_shortest_string(), "n": cfg.n, "points": pts });
        return Ok(Report::new(doc, table));
    }
    let alphas = match (&args.alphas, &args.alpha_range) {
        (Some(list), _) => parse::reals(env.ctx, list)?,
        (None, Some(range)) => parse::range(env.ctx, range)?,
        (None, None) => return Err(Failure::Usage("sweep needs --alphas, --alpha-range or --thetas/--ds".into())),
    };
    let pts = alpha_sweep(&cfg, &alphas)?;
    let mut table = Table::new(&["alpha", "boundary_value", "zero_residual", "verdict"]);
    for p in &pts {
        table.push([p.alpha.clone(), p.boundary_value.clone(), p.zero_residual.clone(), p.verdict.as_str().into()]);
    }
    let changes: Vec<_> = sign_changes(&pts).into_iter().map(|(a, b)| json!([a, b])).collect();
    let doc = json!({ "config": cfg.to_doc(), "points": pts, "sign_changes": changes });
    Ok(Report::new(doc, table))
}

#[derive(Debug, Args, Serialize)]
pub struct LevelArgs {
    #[command(flatten)]
    pub config: ConfigArgs,
    /// `x0,x1,y0,y1`, inside the closed disk.
    #[arg(long, default_value = "0.9,0.9999,-0.01,0.01")]
    pub window: String,
}

pub fn levelgrid(env: &Env, args: &LevelArgs) -> CmdResult {
    let cfg = args.config.config(env)?;
    let window = Window::parse(&args.window)?;
    let spec = env.grid.clone().unwrap_or(GridSpec::new(101, 101)?);
    let start = Instant::now();
    let grid = level_grid_export(&cfg, &window, spec.nx, spec.ny)?;
    let mut table = Table::new(&["x", "y", "value"]);
    for (z, v) in grid.points.iter().zip(&grid.values) {
        table.push([z.re.to_string_digits(17), z.im.to_string_digits(17), v.to_string_digits(17)]);
    }
    let values: Vec<_> = grid
        .points
        .iter()
        .zip(&grid.values)
        .map(|(z, v)| json!([z.re.to_string_digits(17), z.im.to_string_digits(17), v.to_string_digits(17)]))
        .collect();
    let doc = json!({ "config": cfg.to_doc(), "nx": grid.nx, "ny": grid.ny, "values": values });
    let mut out = Report::new(doc, table);
    out.timings.insert("grid".into(), start.elapsed().as_secs_f64());
    Ok(out)
}
