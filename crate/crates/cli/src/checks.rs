use clap::{Args, ValueEnum};
use mvsurf::green::{gamma1_bounds, h1_harmonic, poisson_kernel, write_grid_csv, GreenKind};
use mvsurf::hp::{HpComplex, Precision, Real};
use mvsurf::kernels::{extremal_function, WeightSpec};
use mvsurf::quadrature::{build_disk_rule, mvp_battery, HarmonicTest};
use mvsurf::surface::GridSpec;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::json;

use crate::output::{cnum, num, Report, Table};
use crate::parse;
use crate::{CmdResult, Env, Failure};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum MvpWeight {
    /// `(α+1)(1-|z|²)^α`.
    Standard,
    /// `|φ_λ|² ω_α` for the extremal function at `λ`.
    Extremal,
    /// `Λ_ω · 2(1-|z|²)` for `ω = ω_α |B_A|²`.
    Lambda,
    /// `|K(z,0)|² ω / K(0,0)` for the one-point power weight.
    Toy,
}

#[derive(Debug, Args, Serialize)]
pub struct MvpArgs {
    #[arg(long, value_enum, default_value_t = MvpWeight::Standard)]
    pub weight: MvpWeight,
    #[arg(long, default_value = "1")]
    pub alpha: String,
    /// `re,im` for the extremal and toy weights.
    #[arg(long, default_value = "0.5,0")]
    pub lambda: String,
    #[arg(long, default_value = "-1.5", allow_hyphen_values = true)]
    pub theta: String,
    /// Zero set for the `lambda` weight, `re,im[,mult];...`.
    #[arg(long, default_value = "0.3,0.2;-0.4,0.1")]
    pub zeros: String,
    /// Disk rule `radialxangular`.
    #[arg(long, default_value = "200x400")]
    pub rule: String,
    /// Poisson kernels added to the six polynomial tests.
    #[arg(long, default_value_t = 0)]
    pub poisson: usize,
    #[arg(long, default_value_t = 1e-8)]
    pub tolerance: f64,
}

pub fn mvp(env: &Env, args: &MvpArgs) -> CmdResult {
    let ctx = env.ctx;
    let (m_r, n_t) = parse::rule_shape(&args.rule)?;
    let rule = build_disk_rule(ctx, m_r, n_t)?;
    let alpha = ctx.parse_real(&args.alpha)?;
    let tests = if args.poisson == 0 {
        HarmonicTest::polynomial_set()
    } else {
        HarmonicTest::full_set(ctx, args.poisson)
    };
    let defects = match args.weight {
        MvpWeight::Standard => {
            let w = WeightSpec::standard(alpha)?;
            mvp_battery(&rule, |z| w.value(z), &tests)?
        }
        MvpWeight::Extremal => {
            let lambda = parse::point(ctx, &args.lambda)?;
            let w = WeightSpec::standard(alpha.clone())?;
            mvp_battery(&rule, |z| Ok(extremal_function(z, &lambda, &alpha)?.norm_sqr() * w.value(z)?), &tests)?
        }
        MvpWeight::Lambda => {
            let zeros = parse::zeros(ctx, alpha, Some(&args.zeros))?;
            let w = WeightSpec::zero_weighted(&zeros)?;
            mvp_battery(&rule, |z| w.extremal_density(z), &tests)?
        }
        MvpWeight::Toy => {
            let lambda = parse::point(ctx, &args.lambda)?;
            let w = WeightSpec::toy(lambda, ctx.parse_real(&args.theta)?)?;
            mvp_battery(&rule, |z| w.extremal_density(z), &tests)?
        }
    };
    let worst = defects.iter().cloned().fold(ctx.zero(), Real::max_of);
    let passed = worst <= args.tolerance;
    let mut table = Table::new(&["test", "defect"]);
    let mut rows = Vec::new();
    for (t, d) in tests.iter().zip(&defects) {
        table.push([t.to_string(), d.to_string_digits(6)]);
        rows.push(json!({ "test": t.to_string(), "defect": d.to_string_digits(6) }));
    }
    let doc = json!({
        "weight": args.weight,
        "rule": args.rule,
        "defects": rows,
        "max_defect": worst.to_string_digits(6),
        "tolerance": args.tolerance.to_string(),
        "passed": passed,
    });
    Ok(Report::new(doc, table).with_check(passed))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum GreenMode {
    /// Evaluate at the given pairs.
    Eval,
    /// Random interior pairs: `Γ₁ ≥ 0` and the two-sided bounds.
    Sweep,
    /// `x,y,value` CSV over the `--grid` nodes in the disk, for fixed `w`.
    Grid,
}

#[derive(Debug, Args, Serialize)]
pub struct GreenArgs {
    #[arg(long, value_enum, default_value_t = GreenMode::Eval)]
    pub mode: GreenMode,
    /// `g`, `gamma` or `gamma1` for eval and grid.
    #[arg(long, default_value = "gamma1")]
    pub kind: String,
    /// First arguments `re,im;...`.
    #[arg(long, default_value = "0.3,0.1")]
    pub z: String,
    #[arg(long, default_value = "0.4,0")]
    pub w: String,
    /// Pairs drawn in the sweep.
    #[arg(long, default_value_t = 10_000)]
    pub pairs: usize,
}

fn random_point(ctx: Precision, rng: &mut ChaCha8Rng) -> HpComplex {
    loop {
        let (x, y): (f64, f64) = (rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
        if x * x + y * y < 0.98 {
            return ctx.complex(x, y);
        }
    }
}

pub fn green(env: &Env, args: &GreenArgs) -> CmdResult {
    let ctx = env.ctx;
    let kind: GreenKind = args.kind.parse()?;
    match args.mode {
        GreenMode::Eval => {
            let w = parse::point(ctx, &args.w)?;
            let mut table = Table::new(&["z_re", "z_im", "value", "lower", "upper", "h1", "poisson_at_w"]);
            let mut rows = Vec::new();
            for z in parse::points(ctx, &args.z)? {
                let v = kind.eval(&z, &w)?;
                let (lo, hi) = gamma1_bounds(&z, &w)?;
                let h1 = h1_harmonic(&z, &w)?;
                // P(z, ζ) at the boundary direction of w, when w ≠ 0
                let p = if w.is_zero() { None } else { Some(poisson_kernel(&z, &w.scale(&w.abs().recip()))?) };
                table.push([
                    z.re.to_decimal_string(),
                    z.im.to_decimal_string(),
                    v.to_decimal_string(),
                    lo.to_decimal_string(),
                    hi.to_decimal_string(),
                    h1.to_decimal_string(),
                    p.as_ref().map(Real::to_decimal_string).unwrap_or_default(),
                ]);
                rows.push(json!({
                    "z": cnum(&z),
                    "value": num(&v),
                    "gamma1_bounds": [num(&lo), num(&hi)],
                    "h1": num(&h1),
                    "poisson": p.as_ref().map(num),
                }));
            }
            Ok(Report::new(json!({ "kind": args.kind, "w": cnum(&w), "values": rows }), table))
        }
        GreenMode::Sweep => {
            let mut rng = ChaCha8Rng::seed_from_u64(env.seed);
            let mut violations = Vec::new();
            for k in 0..args.pairs {
                let z = random_point(ctx, &mut rng);
                let w = random_point(ctx, &mut rng);
                let g1 = mvsurf::green::weighted_gamma1(&z, &w)?;
                let (lo, hi) = gamma1_bounds(&z, &w)?;
                if g1.is_negative() || g1 < lo || g1 > hi {
                    violations.push(json!({
                        "pair": k,
                        "z": cnum(&z),
                        "w": cnum(&w),
                        "gamma1": num(&g1),
                        "lower": num(&lo),
                        "upper": num(&hi),
                    }));
                }
            }
            let passed = violations.is_empty();
            let doc = json!({
                "pairs": args.pairs,
                "seed": env.seed,
                "violations": violations,
                "passed": passed,
            });
            Ok(Report::object(doc).with_check(passed))
        }
        GreenMode::Grid => {
            let w = parse::point(ctx, &args.w)?;
            let spec = env.grid.clone().unwrap_or(GridSpec::new(101, 101)?);
            // the CSV is the artifact itself; buffer it so it goes through the manifest path
            let mut buf = Vec::new();
            let count = write_grid_csv(&mut buf, kind, &w, spec.nx, spec.ny)?;
            let text = String::from_utf8(buf).map_err(|e| Failure::Usage(e.to_string()))?;
            let mut table = Table::new(&["x", "y", "value"]);
            for line in text.lines().skip(1) {
                table.push(line.split(',').map(String::from));
            }
            let doc = json!({ "kind": args.kind, "w": cnum(&w), "nodes": count, "rows": table.rows });
            Ok(Report::new(doc, table))
        }
    }
}
