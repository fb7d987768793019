use std::io::Write;
use std::time::Instant;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::hp::{HpComplex, Precision, Real};

use super::config::{generate_configuration, HuntConfig, HuntConfigDoc};
use super::scan::{boundary_value_scan, hunt, HuntResultDoc, Verdict};

/// Rows with more points than this run only when long-running work is allowed.
pub const DESK_SCALE_MAX_N: usize = 78;

/// One row of the reference table: `(α, n, θ, d)` as decimal text.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TableRow {
    pub alpha: &'static str,
    pub n: usize,
    pub theta: &'static str,
    pub d: &'static str,
}

pub const TABLE1: [TableRow; 13] = [
    TableRow { alpha: "3", n: 6, theta: "0.51", d: "10" },
    TableRow { alpha: "2.5", n: 8, theta: "0.48", d: "8" },
    TableRow { alpha: "2", n: 14, theta: "0.351", d: "3" },
    TableRow { alpha: "1.6", n: 26, theta: "0.265", d: "2.1" },
    TableRow { alpha: "1.25", n: 78, theta: "0.176", d: "1.52" },
    TableRow { alpha: "1.118", n: 230, theta: "0.104", d: "1.22" },
    TableRow { alpha: "1.1072", n: 272, theta: "0.092", d: "1.183" },
    TableRow { alpha: "1.097", n: 340, theta: "0.07725", d: "1.141" },
    TableRow { alpha: "1.065", n: 550, theta: "0.07", d: "1.13" },
    TableRow { alpha: "1.053", n: 770, theta: "0.0556", d: "1.09" },
    TableRow { alpha: "1.046", n: 944, theta: "0.0497", d: "1.078" },
    TableRow { alpha: "1.043", n: 1090, theta: "0.0445", d: "1.067" },
    TableRow { alpha: "1.04", n: 1500, theta: "0.033", d: "1.045" },
];

impl TableRow {
    pub fn config(&self, ctx: Precision) -> Result<HuntConfig> {
        HuntConfig::parse(ctx, self.alpha, self.n, self.theta, self.d)
    }

    pub fn is_long_running(&self) -> bool {
        self.n > DESK_SCALE_MAX_N
    }
}

/// Parses a 1-based row selection such as `1-4`, `5`, `1,3,5-6` or `all`.
pub fn parse_rows(text: &str) -> Result<Vec<usize>> {
    let bad = || Error::Parse(format!("row selection {text:?}: expected e.g. 1-4,6 within 1..=13"));
    if text.trim() == "all" {
        return Ok((1..=TABLE1.len()).collect());
    }
    let mut rows = Vec::new();
    for part in text.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        let (a, b) = part.split_once('-').unwrap_or((part, part));
        let a: usize = a.trim().parse().map_err(|_| bad())?;
        let b: usize = b.trim().parse().map_err(|_| bad())?;
        if a == 0 || b < a || b > TABLE1.len() {
            return Err(bad());
        }
        rows.extend(a..=b);
    }
    if rows.is_empty() {
        return Err(bad());
    }
    rows.dedup();
    Ok(rows)
}

#[derive(Clone, Debug, Serialize)]
pub struct RowReport {
    /// 1-based index into the table.
    pub row: usize,
    pub config: HuntConfigDoc,
    /// Absent when the row was skipped or failed.
    pub result: Option<HuntResultDoc>,
    pub skipped: bool,
    pub error: Option<String>,
    /// Wall time, kept out of the serialized report so reruns compare equal.
    #[serde(skip)]
    pub seconds: f64,
}

impl RowReport {
    pub fn verdict(&self) -> Option<Verdict> {
        self.result.as_ref().map(|r| r.verdict)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Table1Report {
    pub digits: u32,
    pub margin: f64,
    pub rows: Vec<RowReport>,
}

/// Runs the hunt on the selected rows (1-based). Rows above
/// [`DESK_SCALE_MAX_N`] are skipped unless `long_running` is set; per-row
/// failures are recorded rather than returned.
pub fn table1_reproduce(ctx: Precision, rows: &[usize], long_running: bool) -> Result<Table1Report> {
    let mut out = Vec::with_capacity(rows.len());
    for &row in rows {
        let spec = TABLE1
            .get(row.wrapping_sub(1))
            .ok_or_else(|| Error::InvalidInput(format!("no table row {row}")))?;
        let cfg = spec.config(ctx)?;
        if spec.is_long_running() && !long_running {
            out.push(RowReport {
                row,
                config: cfg.to_doc(),
                result: None,
                skipped: true,
                error: None,
                seconds: 0.0,
            });
            continue;
        }
        let start = Instant::now();
        let report = match hunt(&cfg) {
            Ok((r, _)) => RowReport {
                row,
                config: cfg.to_doc(),
                result: Some(r.to_doc()),
                skipped: false,
                error: None,
                seconds: 0.0,
            },
            Err(e) => RowReport {
                row,
                config: cfg.to_doc(),
                result: None,
                skipped: false,
                error: Some(e.to_string()),
                seconds: 0.0,
            },
        };
        out.push(RowReport {
            seconds: start.elapsed().as_secs_f64(),
            ..report
        });
    }
    Ok(Table1Report {
        digits: ctx.digits(),
        margin: super::scan::DEFAULT_MARGIN,
        rows: out,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct SweepPoint {
    pub alpha: String,
    pub boundary_value: String,
    pub zero_residual: String,
    pub verdict: Verdict,
}

/// `K_A(1, 0)` as a function of `α` with `(n, θ, d)` fixed; points run in
/// parallel, each on its own thread.
pub fn alpha_sweep(template: &HuntConfig, alphas: &[Real]) -> Result<Vec<SweepPoint>> {
    let configs = alphas
        .iter()
        .map(|a| template.with_alpha(a.clone()))
        .collect::<Result<Vec<_>>>()?;
    parallel_map(&configs, |cfg| {
        let r = boundary_value_scan(cfg)?;
        Ok(SweepPoint {
            alpha: cfg.alpha.to_shortest_string(),
            boundary_value: r.boundary_value.to_decimal_string(),
            zero_residual: r.zero_residual.to_string_digits(6),
            verdict: r.verdict,
        })
    })
}

/// Consecutive sweep points whose boundary values differ in sign.
pub fn sign_changes(points: &[SweepPoint]) -> Vec<(String, String)> {
    points
        .windows(2)
        .filter(|w| w[0].boundary_value.starts_with('-') != w[1].boundary_value.starts_with('-'))
        .map(|w| (w[0].alpha.clone(), w[1].alpha.clone()))
        .collect()
}

#[derive(Clone, Debug, Serialize)]
pub struct ConfigPoint {
    pub theta: String,
    pub d: String,
    pub boundary_value: String,
    pub zero_residual: String,
    pub verdict: Verdict,
}

/// Grid sweep over `(θ, d)` at fixed `(α, n)`.
pub fn theta_d_sweep(ctx: Precision, alpha: &Real, n: usize, thetas: &[Real], ds: &[Real]) -> Result<Vec<ConfigPoint>> {
    let mut configs = Vec::with_capacity(thetas.len() * ds.len());
    for t in thetas {
        for d in ds {
            configs.push(HuntConfig::new(ctx, alpha.clone(), n, t.clone(), d.clone())?);
        }
    }
    parallel_map(&configs, |cfg| {
        let r = boundary_value_scan(cfg)?;
        Ok(ConfigPoint {
            theta: cfg.theta.to_shortest_string(),
            d: cfg.d.to_shortest_string(),
            boundary_value: r.boundary_value.to_decimal_string(),
            zero_residual: r.zero_residual.to_string_digits(6),
            verdict: r.verdict,
        })
    })
}

fn parallel_map<T, U, F>(items: &[T], f: F) -> Result<Vec<U>>
where
    T: Sync,
    U: Send,
    F: Fn(&T) -> Result<U> + Sync,
{
    let workers = std::thread::available_parallelism().map(|n| n.get()).unwrap_or(1).max(1);
    let chunk = items.len().div_ceil(workers).max(1);
    std::thread::scope(|s| {
        let handles: Vec<_> = items
            .chunks(chunk)
            .map(|part| s.spawn(|| part.iter().map(&f).collect::<Result<Vec<U>>>()))
            .collect();
        let mut out = Vec::with_capacity(items.len());
        for h in handles {
            out.extend(h.join().expect("sweep worker panicked")?);
        }
        Ok(out)
    })
}

/// Axis-aligned rectangle `[x0, x1] × [y0, y1]`.
#[derive(Clone, Debug)]
pub struct Window {
    pub x0: f64,
    pub x1: f64,
    pub y0: f64,
    pub y1: f64,
}

impl Window {
    /// Parses `x0,x1,y0,y1`.
    pub fn parse(text: &str) -> Result<Window> {
        let v: Vec<f64> = text
            .split(',')
            .map(|p| p.trim().parse::<f64>())
            .collect::<std::result::Result<_, _>>()
            .map_err(|_| Error::Parse(format!("window {text:?}: expected x0,x1,y0,y1")))?;
        match v[..] {
            [x0, x1, y0, y1] if x0 < x1 && y0 < y1 => Ok(Window { x0, x1, y0, y1 }),
            _ => Err(Error::Parse(format!("window {text:?}: expected x0 < x1 and y0 < y1"))),
        }
    }
}

/// `|K_A(z, 0)|` on a rectangular grid, rows of constant `y`.
#[derive(Clone, Debug)]
pub struct LevelGrid {
    pub nx: usize,
    pub ny: usize,
    pub points: Vec<HpComplex>,
    pub values: Vec<Real>,
}

impl LevelGrid {
    /// `x,y,value` lines with a header.
    pub fn write_csv<W: Write>(&self, out: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record(["x", "y", "value"])?;
        for (z, v) in self.points.iter().zip(&self.values) {
            w.write_record([z.re.to_string_digits(17), z.im.to_string_digits(17), v.to_string_digits(17)])?;
        }
        w.flush()?;
        Ok(())
    }
}

/// Samples `|K_A(z, 0)|` on an `nx × ny` grid over `window`, which must lie
/// in the closed disk.
pub fn level_grid_export(cfg: &HuntConfig, window: &Window, nx: usize, ny: usize) -> Result<LevelGrid> {
    if nx < 2 || ny < 2 {
        return Err(Error::InvalidInput(format!("level grid needs at least 2x2 nodes, got {nx}x{ny}")));
    }
    let zeros = generate_configuration(cfg)?;
    let rep = crate::kernels::kernel_linear_system(&zeros)?;
    let ctx = cfg.ctx;
    let mut points = Vec::with_capacity(nx * ny);
    for j in 0..ny {
        let y = ctx.real(window.y0) + ctx.real(window.y1 - window.y0) * ctx.ratio(j as i64, ny as i64 - 1);
        for i in 0..nx {
            let x = ctx.real(window.x0) + ctx.real(window.x1 - window.x0) * ctx.ratio(i as i64, nx as i64 - 1);
            let z = HpComplex::new(x, y.clone());
            if !z.in_closed_disk() {
                return Err(Error::Domain(format!("window node {z:.8} lies outside the closed disk")));
            }
            points.push(z);
        }
    }
    let values = parallel_map(&points, |z| Ok(rep.eval(z)?.abs()))?;
    Ok(LevelGrid { nx, ny, points, values })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::zerohunt::scan::locate_extraneous_zero;

    fn ctx() -> Precision {
        Precision::default()
    }

    #[test]
    fn row_selection() {
        assert_eq!(parse_rows("1-4").unwrap(), vec![1, 2, 3, 4]);
        assert_eq!(parse_rows("2,5").unwrap(), vec![2, 5]);
        assert_eq!(parse_rows("all").unwrap().len(), 13);
        assert!(parse_rows("0-2").is_err());
        assert!(parse_rows("12-14").is_err());
        assert!(parse_rows("x").is_err());
    }

    #[test]
    fn long_rows_are_skipped_by_default() {
        let report = table1_reproduce(ctx(), &[1, 13], false).unwrap();
        assert_eq!(report.rows[0].verdict(), Some(Verdict::ExtraneousZeroFound));
        assert!(report.rows[1].skipped);
        assert!(TABLE1[4].n == 78 && !TABLE1[4].is_long_running());
    }

    #[test]
    fn sweep_around_first_row() {
        let c = ctx();
        let cfg = TABLE1[0].config(c).unwrap();
        let alphas: Vec<Real> = ["2.5", "3", "3.5"].iter().map(|a| c.parse_real(a).unwrap()).collect();
        let pts = alpha_sweep(&cfg, &alphas).unwrap();
        assert_eq!(pts.len(), 3);
        // the configuration tuned for α = 3 loses its zero between 2.5 and 3
        let verdicts: Vec<Verdict> = pts.iter().map(|p| p.verdict).collect();
        assert_eq!(verdicts, [Verdict::NoneFound, Verdict::ExtraneousZeroFound, Verdict::ExtraneousZeroFound]);
        assert_eq!(sign_changes(&pts), vec![("2.5".to_string(), "3".to_string())]);
        for (p, a) in pts.iter().zip(&alphas) {
            let zeros = generate_configuration(&cfg.with_alpha(a.clone()).unwrap()).unwrap();
            let rec = crate::kernels::kernel_recursive(&zeros, &c.cone(), &c.czero()).unwrap();
            let swept = c.parse_real(&p.boundary_value).unwrap();
            assert!((swept - &rec.re).abs() < 1e-30);
        }

        let empty = HuntConfig::parse(c, "3", 0, "0.51", "10").unwrap();
        for p in alpha_sweep(&empty, &alphas).unwrap() {
            assert_eq!(c.parse_real(&p.boundary_value).unwrap(), c.one());
        }
    }

    #[test]
    fn level_grid_minima() {
        let c = ctx();
        let cfg = TABLE1[0].config(c).unwrap();
        let grid = level_grid_export(&cfg, &Window { x0: -0.5, x1: 0.5, y0: -0.5, y1: 0.5 }, 3, 3).unwrap();
        // the centre node is z = 0, where K_A(0, 0) = 1 - Σ c_j
        let zeros = generate_configuration(&cfg).unwrap();
        let rep = crate::kernels::kernel_linear_system(&zeros).unwrap();
        let sum = rep.coeffs().iter().fold(c.czero(), |acc, x| acc + x);
        assert!((grid.values[4].clone() - (1.0 - sum).abs()).abs() < 1e-35);
        for p in zeros.points() {
            assert!(rep.eval(&p.location).unwrap().abs() <= *rep.zero_residual());
        }
        let result = boundary_value_scan(&cfg).unwrap();
        let loc = locate_extraneous_zero(&result).unwrap();
        assert!(loc.kernel_value <= &result.zero_residual * 1e3);
        let mut buf = Vec::new();
        grid.write_csv(&mut buf).unwrap();
        assert_eq!(String::from_utf8(buf).unwrap().lines().count(), 10);
        assert!(level_grid_export(&cfg, &Window { x0: 0.5, x1: 1.0, y0: 0.5, y1: 1.0 }, 2, 2).is_err());
    }
}
