use clap::{Args, ValueEnum};
use mvsurf::hp::{HpComplex, Real};
use mvsurf::kernels::{
    bergman_kernel, has_disk_zero, kernel_linear_system, kernel_recursive, kernel_with_multiplicity, toy_kernel,
    toy_weight, toy_zero, weighted_kernel_from_zero_kernel,
};
use mvsurf::zerohunt::bisect;
use serde::Serialize;
use serde_json::json;

use crate::output::{cnum, num, Report, Table};
use crate::parse;
use crate::{CmdResult, Env, Failure};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    /// Every method that applies to the zero set.
    All,
    /// `1/(1 - z w̄)^{α+2}`, ignoring the zeros.
    Standard,
    Recursive,
    /// Coefficient form; needs simple zeros and `w = 0`.
    Linear,
    Multiplicity,
    /// Kernel of `ω_α |B_A|²`.
    Weighted,
}

#[derive(Debug, Args, Serialize)]
pub struct KernelArgs {
    #[arg(long, default_value = "1")]
    pub alpha: String,
    /// Zero set `re,im[,mult];...`.
    #[arg(long)]
    pub zeros: Option<String>,
    /// Evaluation points `re,im;...`.
    #[arg(long)]
    pub at: String,
    /// Second argument of the kernel.
    #[arg(long, default_value = "0,0")]
    pub w: String,
    #[arg(long, value_enum, default_value_t = Method::All)]
    pub method: Method,
}

pub fn kernel(env: &Env, args: &KernelArgs) -> CmdResult {
    let ctx = env.ctx;
    let alpha = ctx.parse_real(&args.alpha)?;
    let zeros = parse::zeros(ctx, alpha.clone(), args.zeros.as_deref())?;
    let at = parse::points(ctx, &args.at)?;
    let w = parse::point(ctx, &args.w)?;
    let methods: Vec<Method> = match args.method {
        Method::All => {
            let mut m = vec![Method::Standard, Method::Recursive, Method::Multiplicity];
            if zeros.is_simple() && w.is_zero() {
                m.push(Method::Linear);
            }
            if !zeros.is_empty() {
                m.push(Method::Weighted);
            }
            m
        }
        m => vec![m],
    };
    let linear = if methods.contains(&Method::Linear) {
        if !w.is_zero() {
            return Err(Failure::Usage("the coefficient form evaluates K_A(z, 0) only; use --w 0".into()));
        }
        Some(kernel_linear_system(&zeros)?)
    } else {
        None
    };
    let mut table = Table::new(&["z_re", "z_im", "method", "re", "im"]);
    let mut values = Vec::new();
    for z in &at {
        for &m in &methods {
            let v: HpComplex = match m {
                Method::Standard => bergman_kernel(z, &w, &alpha)?,
                Method::Recursive => kernel_recursive(&zeros, z, &w)?,
                Method::Multiplicity => kernel_with_multiplicity(&zeros, z, &w)?,
                Method::Linear => linear.as_ref().expect("built above").eval(z)?,
                Method::Weighted => weighted_kernel_from_zero_kernel(&zeros, z, &w)?,
                Method::All => unreachable!("expanded above"),
            };
            let name = serde_json::to_value(m).ok().and_then(|v| v.as_str().map(String::from)).unwrap_or_default();
            table.push([z.re.to_decimal_string(), z.im.to_decimal_string(), name.clone(), v.re.to_decimal_string(), v.im.to_decimal_string()]);
            values.push(json!({ "z": cnum(z), "method": name, "value": cnum(&v) }));
        }
    }
    let mut doc = json!({ "alpha": args.alpha, "w": cnum(&w), "values": values });
    if let Some(rep) = &linear {
        doc["zero_residual"] = json!(rep.zero_residual().to_string_digits(6));
    }
    Ok(Report::new(doc, table))
}

#[derive(Debug, Args, Serialize)]
pub struct ToyArgs {
    /// Point mass location `re,im`.
    #[arg(long, default_value = "0.9,0")]
    pub lambda: String,
    #[arg(long, default_value = "-1.5", allow_hyphen_values = true)]
    pub theta: String,
    /// Extra evaluation points `re,im;...` for the kernel and weight.
    #[arg(long)]
    pub at: Option<String>,
}

pub fn toy(env: &Env, args: &ToyArgs) -> CmdResult {
    let ctx = env.ctx;
    let lambda = parse::point(ctx, &args.lambda)?;
    let theta = ctx.parse_real(&args.theta)?;
    let predicate = has_disk_zero(&lambda, &theta);
    let bound: Real = -2.0 / (lambda.abs() + 1.0);
    let closed = toy_zero(&lambda, &theta)?;

    // K(·, 0) is real on the ray through λ, so the zero can be bisected there
    let bisected = match (&closed, lambda.is_zero()) {
        (Some(_), false) => {
            let dir = lambda.scale(&lambda.abs().recip());
            let f = |t: &Real| Ok(toy_kernel(&dir.scale(t), &lambda, &theta)?.re);
            let t = bisect(f, &ctx.zero(), &ctx.one(), &ctx.epsilon())?;
            Some(dir.scale(&t))
        }
        _ => None,
    };
    let mut doc = json!({
        "lambda": cnum(&lambda),
        "theta": args.theta,
        "has_disk_zero": predicate,
        "interval": [ "-2", num(&bound) ],
        "closed_form_zero": closed.as_ref().map(cnum),
        "bisected_zero": bisected.as_ref().map(cnum),
        "agreement": match (&closed, &bisected) {
            (Some(a), Some(b)) => json!((a - b).abs().to_string_digits(6)),
            _ => json!(null),
        },
    });
    if let Some(text) = &args.at {
        let mut rows = Vec::new();
        for z in parse::points(ctx, text)? {
            rows.push(json!({
                "z": cnum(&z),
                "kernel": cnum(&toy_kernel(&z, &lambda, &theta)?),
                "weight": num(&toy_weight(&z, &lambda, &theta)?),
            }));
        }
        doc["points"] = json!(rows);
    }
    Ok(Report::object(doc))
}
