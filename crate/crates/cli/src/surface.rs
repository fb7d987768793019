use clap::{Args, ValueEnum};
use mvsurf::hp::HpComplex;
use mvsurf::quadrature::{build_disk_rule, PotentialRule};
use mvsurf::surface::{
    boundary_normal_derivative, brioschi_curvature, curvature_density, curvature_isothermal,
    grid_isothermal_curvature, parse_family, verify_mpot_system, CurvatureData, ExtremalWeight,
    GridSpec, MetricGrid, MpotOptions,
};
use serde::Serialize;
use serde_json::json;

use crate::output::{num, Report, Table};
use crate::parse;
use crate::{CmdResult, Env, Failure};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Task {
    /// `α*` and whether the curvature hypothesis is certified.
    Margin,
    /// `ω₁` with `-2Δ log ω₁ = μ`.
    Omega1,
    /// The extremal weight `ω₀ = |K(z,0)|² ω₁ / K(0,0)`.
    Omega0,
    /// `-2Δ log ω₁` by differences, against `μ`.
    Curvature,
    /// `Φ₀ = ∫ G ω₀`.
    Potential,
    /// `∂Φ₀/∂n` at boundary points.
    Normal,
    /// Defects of the boundary value system for `Φ₀`.
    Verify,
    /// Curvature of the Poincaré metric by Brioschi and by the isothermal formula.
    Poincare,
}

#[derive(Debug, Args, Serialize)]
pub struct SurfaceArgs {
    #[arg(long, value_enum, default_value_t = Task::Verify)]
    pub task: Task,
    /// `zero`, `rez[:s]`, `dilated:r,alpha`, `hyperbolic:alpha` or `toy:re,im,theta`.
    #[arg(long, default_value = "zero")]
    pub mu: String,
    /// Evaluation points `re,im;...`; boundary points for `normal`.
    #[arg(long, default_value = "0,0;0.3,0.2;-0.5,0.4")]
    pub at: String,
    /// Degree of the polynomial kernel when no closed form exists.
    #[arg(long, default_value_t = 12)]
    pub degree: usize,
    /// Only grid nodes with |z| at most this are checked.
    #[arg(long, default_value_t = 0.8)]
    pub radius: f64,
    /// Potential rule `radial,log,angles`.
    #[arg(long, default_value = "40,40,32")]
    pub potential_rule: String,
    /// Disk rule for weights and normal derivatives.
    #[arg(long, default_value = "40x64")]
    pub disk_rule: String,
    /// Required bounds on the interior, boundary value and normal derivative defects.
    #[arg(long, default_value = "1e-6,1e-8,1e-6")]
    pub tolerances: String,
}

fn potential_rule(env: &Env, text: &str) -> Result<PotentialRule, Failure> {
    let v: Vec<usize> = text
        .split(',')
        .map(|p| p.trim().parse::<usize>())
        .collect::<Result<_, _>>()
        .map_err(|_| Failure::Usage(format!("potential rule {text:?}: expected radial,log,angles")))?;
    match v[..] {
        [m, l, a] => Ok(PotentialRule::new(env.ctx, m, l, a)?),
        _ => Err(Failure::Usage(format!("potential rule {text:?}: expected three counts"))),
    }
}

pub fn surface(env: &Env, args: &SurfaceArgs) -> CmdResult {
    let ctx = env.ctx;
    let mu = CurvatureData::new(ctx, parse_family(ctx, &args.mu)?)?;
    let prule = potential_rule(env, &args.potential_rule)?;
    let (m_r, n_t) = parse::rule_shape(&args.disk_rule)?;
    let drule = build_disk_rule(ctx, m_r, n_t)?;
    let at = || parse::points(ctx, &args.at);
    let margin = json!({
        "mu": args.mu,
        "alpha_margin": num(mu.alpha_margin()),
        "certified": mu.certifies_main_hypothesis(),
    });
    match args.task {
        Task::Margin => Ok(Report::object(margin)),
        Task::Omega1 => {
            let omega1 = mvsurf::surface::Omega1::new(&mu, &prule)?;
            let mut table = Table::new(&["x", "y", "omega1"]);
            for z in at()? {
                table.push([z.re.to_decimal_string(), z.im.to_decimal_string(), omega1.value(&z)?.to_decimal_string()]);
            }
            Ok(points_report(margin, table))
        }
        Task::Omega0 => {
            let w0 = ExtremalWeight::from_curvature(&mu, &prule, &drule, args.degree)?;
            let mut table = Table::new(&["x", "y", "omega0", "kernel_re", "kernel_im"]);
            for z in at()? {
                let k = w0.kernel_at(&z)?;
                table.push([
                    z.re.to_decimal_string(),
                    z.im.to_decimal_string(),
                    w0.value(&z)?.to_decimal_string(),
                    k.re.to_decimal_string(),
                    k.im.to_decimal_string(),
                ]);
            }
            let mut doc = margin;
            doc["k00"] = num(w0.k00());
            doc["kernel_zeros_in_disk"] = json!(w0.kernel_zero_count(512)?);
            Ok(points_report(doc, table))
        }
        Task::Curvature => {
            if !mu.is_integrable() {
                return Err(Failure::Usage(format!("{} has no pointwise density to recover", args.mu)));
            }
            // recover μ from the quadrature ω₁ even where a closed form exists
            let omega1 = mvsurf::surface::Omega1::by_quadrature(&mu, &prule)?;
            let mut table = Table::new(&["x", "y", "recovered", "mu", "error", "kappa"]);
            for z in at()? {
                let rec = curvature_density(|p: &HpComplex| omega1.value(p), &z)?;
                let exact = mu.mu(&z)?;
                let kappa = curvature_isothermal(|p: &HpComplex| omega1.value(p), &z)?;
                table.push([
                    z.re.to_decimal_string(),
                    z.im.to_decimal_string(),
                    rec.to_string_digits(20),
                    exact.to_string_digits(20),
                    (&rec - &exact).abs().to_string_digits(6),
                    kappa.to_string_digits(20),
                ]);
            }
            Ok(points_report(margin, table))
        }
        Task::Potential => {
            let w0 = ExtremalWeight::from_curvature(&mu, &prule, &drule, args.degree)?;
            let weight = w0.as_weight();
            let mut table = Table::new(&["x", "y", "phi0"]);
            // one preparation shared by all points
            let phi = prule.prepare(move |z: &HpComplex| weight(z))?;
            for z in at()? {
                table.push([z.re.to_decimal_string(), z.im.to_decimal_string(), phi.potential(&z)?.to_decimal_string()]);
            }
            Ok(points_report(margin, table))
        }
        Task::Normal => {
            let w0 = ExtremalWeight::from_curvature(&mu, &prule, &drule, args.degree)?;
            let mut table = Table::new(&["x", "y", "normal_derivative"]);
            for z in at()? {
                let zeta = if z.on_circle() { z } else { z.scale(&z.abs().recip()) };
                let d = boundary_normal_derivative(|p| w0.value(p), &drule, &zeta)?;
                table.push([zeta.re.to_decimal_string(), zeta.im.to_decimal_string(), d.to_decimal_string()]);
            }
            Ok(points_report(margin, table))
        }
        Task::Verify => {
            let tol = parse::reals(ctx, &args.tolerances)?;
            if tol.len() != 3 {
                return Err(Failure::Usage("--tolerances takes three values".into()));
            }
            let w0 = ExtremalWeight::from_curvature(&mu, &prule, &drule, args.degree)?;
            let grid = env.grid.clone().unwrap_or(GridSpec::new(9, 9)?);
            let options = MpotOptions {
                interior_radius: args.radius,
                ..MpotOptions::default()
            };
            let r = verify_mpot_system(&w0, &mu, &grid, &prule, &drule, &options)?;
            let passed = r.interior() <= tol[0].to_f64()
                && r.boundary_value() <= tol[1].to_f64()
                && r.normal_derivative() <= tol[2].to_f64();
            let mut doc = margin;
            doc["report"] = serde_json::to_value(&r).map_err(|e| Failure::Usage(e.to_string()))?;
            doc["passed"] = json!(passed);
            Ok(Report::object(doc).with_check(passed))
        }
        Task::Poincare => {
            let spec = env.grid.clone().unwrap_or_default();
            let omega = |z: &HpComplex| Ok((1.0 - z.norm_sqr()).square().recip() * 4.0);
            let grid = MetricGrid::isothermal(ctx, spec.clone(), omega)?;
            let mut worst_b = ctx.zero();
            let mut worst_i = ctx.zero();
            let mut nodes = 0usize;
            for (i, j, _) in spec.nodes_within(ctx, args.radius.min(0.5)) {
                if !grid.is_interior(i, j, 2) {
                    continue;
                }
                worst_b = worst_b.max_of((brioschi_curvature(&grid, i, j)? + 1.0).abs());
                worst_i = worst_i.max_of((grid_isothermal_curvature(&grid, i, j)? + 1.0).abs());
                nodes += 1;
            }
            let mut hp_worst = ctx.zero();
            for z in at()? {
                hp_worst = hp_worst.max_of((curvature_isothermal(omega, &z)? + 1.0).abs());
            }
            let passed = worst_b <= 1e-6 && worst_i <= 1e-6 && hp_worst <= 1e-6;
            let doc = json!({
                "grid": format!("{}x{}", spec.nx, spec.ny),
                "nodes": nodes,
                "brioschi_max_error": worst_b.to_string_digits(6),
                "grid_isothermal_max_error": worst_i.to_string_digits(6),
                "pointwise_isothermal_max_error": hp_worst.to_string_digits(6),
                "passed": passed,
            });
            Ok(Report::object(doc).with_check(passed))
        }
    }
}

fn points_report(mut doc: serde_json::Value, table: Table) -> Report {
    doc["points"] = json!(table
        .rows
        .iter()
        .map(|r| table.header.iter().cloned().zip(r.iter().map(|v| json!(v))).collect::<serde_json::Map<_, _>>())
        .collect::<Vec<_>>());
    Report::new(doc, table)
}
