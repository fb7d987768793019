//! Cartesian grids over `[-1, 1]²`, sampled fields, metric fields and the
//! difference operators on them.

use std::io::{Read, Write};

use crate::error::{Error, Result};
use crate::hp::{HpComplex, Precision, Real};

/// Uniform `nx × ny` node layout over `[-1, 1]²`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GridSpec {
    pub nx: usize,
    pub ny: usize,
}

impl Default for GridSpec {
    fn default() -> Self {
        GridSpec { nx: 257, ny: 257 }
    }
}

impl GridSpec {
    pub fn new(nx: usize, ny: usize) -> Result<GridSpec> {
        if nx < 2 || ny < 2 {
            return Err(Error::InvalidInput(format!("grid needs at least 2x2 nodes, got {nx}x{ny}")));
        }
        Ok(GridSpec { nx, ny })
    }

    /// Parses `MxN`.
    pub fn parse(text: &str) -> Result<GridSpec> {
        let (m, n) = text
            .split_once(['x', 'X'])
            .ok_or_else(|| Error::Parse(format!("grid must look like 101x101, got {text:?}")))?;
        let m = m.trim().parse().map_err(|_| Error::Parse(format!("bad grid width {m:?}")))?;
        let n = n.trim().parse().map_err(|_| Error::Parse(format!("bad grid height {n:?}")))?;
        GridSpec::new(m, n)
    }

    pub fn len(&self) -> usize {
        self.nx * self.ny
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn hx(&self, ctx: Precision) -> Real {
        ctx.ratio(2, self.nx as i64 - 1)
    }

    pub fn hy(&self, ctx: Precision) -> Real {
        ctx.ratio(2, self.ny as i64 - 1)
    }

    pub fn node(&self, ctx: Precision, i: usize, j: usize) -> HpComplex {
        let x = ctx.ratio(2 * i as i64, self.nx as i64 - 1) - 1.0;
        let y = ctx.ratio(2 * j as i64, self.ny as i64 - 1) - 1.0;
        HpComplex::new(x, y)
    }

    fn index(&self, i: usize, j: usize) -> usize {
        j * self.nx + i
    }

    /// Nodes with `|z| <= radius`, row-major.
    pub fn nodes_within(&self, ctx: Precision, radius: f64) -> Vec<(usize, usize, HpComplex)> {
        let r2 = radius * radius;
        let mut out = Vec::new();
        for j in 0..self.ny {
            for i in 0..self.nx {
                let z = self.node(ctx, i, j);
                if z.norm_sqr() <= r2 {
                    out.push((i, j, z));
                }
            }
        }
        out
    }
}

/// Real field on a grid, bilinearly interpolated between nodes.
#[derive(Clone, Debug)]
pub struct GridField {
    spec: GridSpec,
    values: Vec<Real>,
}

impl GridField {
    pub fn new(spec: GridSpec, values: Vec<Real>) -> Result<GridField> {
        if values.len() != spec.len() {
            return Err(Error::InvalidInput(format!(
                "{}x{} grid needs {} values, got {}",
                spec.nx,
                spec.ny,
                spec.len(),
                values.len()
            )));
        }
        Ok(GridField { spec, values })
    }

    /// Samples `f` at every node; nodes outside the closed disk get `outside`.
    pub fn sample<F>(ctx: Precision, spec: GridSpec, f: F, outside: f64) -> Result<GridField>
    where
        F: Fn(&HpComplex) -> Result<Real>,
    {
        let mut values = Vec::with_capacity(spec.len());
        for j in 0..spec.ny {
            for i in 0..spec.nx {
                let z = spec.node(ctx, i, j);
                values.push(if z.in_closed_disk() { f(&z)? } else { ctx.real(outside) });
            }
        }
        GridField::new(spec, values)
    }

    pub fn spec(&self) -> GridSpec {
        self.spec
    }

    pub fn at(&self, i: usize, j: usize) -> &Real {
        &self.values[self.spec.index(i, j)]
    }

    pub fn values(&self) -> &[Real] {
        &self.values
    }

    pub fn value(&self, z: &HpComplex) -> Result<Real> {
        let locate = |t: &Real, n: usize| -> Result<(usize, Real)> {
            if t < &-1.0 || t > &1.0 {
                return Err(Error::Domain(format!("{t:.8} is outside the grid")));
            }
            let s = (t + 1.0) * ((n - 1) as f64 / 2.0);
            let i = (s.to_f64().floor().max(0.0) as usize).min(n - 2);
            let frac = s - i as f64;
            Ok((i, frac))
        };
        let (i, fx) = locate(&z.re, self.spec.nx)?;
        let (j, fy) = locate(&z.im, self.spec.ny)?;
        let gx = 1.0 - &fx;
        let gy = 1.0 - &fy;
        let bottom = self.at(i, j) * &gx + self.at(i + 1, j) * &fx;
        let top = self.at(i, j + 1) * &gx + self.at(i + 1, j + 1) * &fx;
        Ok(bottom * gy + top * fy)
    }

    /// `x,y,value` rows, values as decimal strings.
    pub fn write_csv<W: Write>(&self, ctx: Precision, out: W) -> Result<()> {
        let mut writer = csv::Writer::from_writer(out);
        writer.write_record(["x", "y", "value"])?;
        for j in 0..self.spec.ny {
            for i in 0..self.spec.nx {
                let z = self.spec.node(ctx, i, j);
                writer.write_record([
                    z.re.to_decimal_string(),
                    z.im.to_decimal_string(),
                    self.at(i, j).to_decimal_string(),
                ])?;
            }
        }
        writer.flush()?;
        Ok(())
    }

    /// Reads `x,y,value` rows covering a full uniform grid in any order.
    pub fn read_csv<R: Read>(ctx: Precision, input: R) -> Result<GridField> {
        let mut rows = Vec::new();
        let mut reader = csv::Reader::from_reader(input);
        for record in reader.records() {
            let record = record?;
            if record.len() != 3 {
                return Err(Error::Parse(format!("expected x,y,value, got {} columns", record.len())));
            }
            let x = ctx.parse_real(record[0].trim())?;
            let y = ctx.parse_real(record[1].trim())?;
            let v = ctx.parse_real(record[2].trim())?;
            rows.push((x, y, v));
        }
        let count_distinct = |coord: &dyn Fn(&(Real, Real, Real)) -> f64| {
            let mut c: Vec<f64> = rows.iter().map(coord).collect();
            c.sort_by(|a, b| a.total_cmp(b));
            c.dedup_by(|a, b| (*a - *b).abs() < 1e-12);
            c.len()
        };
        let nx = count_distinct(&|r| r.0.to_f64());
        let ny = count_distinct(&|r| r.1.to_f64());
        let spec = GridSpec::new(nx, ny)?;
        if rows.len() != spec.len() {
            return Err(Error::Parse(format!(
                "{} rows do not fill a {nx}x{ny} grid",
                rows.len()
            )));
        }
        let mut values: Vec<Option<Real>> = vec![None; spec.len()];
        for (x, y, v) in rows {
            let i = ((x.to_f64() + 1.0) * (nx - 1) as f64 / 2.0).round() as usize;
            let j = ((y.to_f64() + 1.0) * (ny - 1) as f64 / 2.0).round() as usize;
            let slot = values
                .get_mut(spec.index(i.min(nx - 1), j.min(ny - 1)))
                .expect("index within grid");
            if slot.replace(v).is_some() {
                return Err(Error::Parse(format!("duplicate grid node near ({x:.6}, {y:.6})")));
            }
        }
        let values = values
            .into_iter()
            .map(|v| v.ok_or_else(|| Error::Parse("grid has a missing node".into())))
            .collect::<Result<_>>()?;
        GridField::new(spec, values)
    }
}

/// Metric `a dx² + b dy² + 2c dxdy` sampled on a grid.
#[derive(Clone, Debug)]
pub struct MetricGrid {
    ctx: Precision,
    a: GridField,
    b: GridField,
    c: GridField,
}

impl MetricGrid {
    /// Samples a general metric; nodes outside the disk are left at the
    /// Euclidean metric and masked out.
    pub fn general<A, B, C>(ctx: Precision, spec: GridSpec, a: A, b: B, c: C) -> Result<MetricGrid>
    where
        A: Fn(&HpComplex) -> Result<Real>,
        B: Fn(&HpComplex) -> Result<Real>,
        C: Fn(&HpComplex) -> Result<Real>,
    {
        let grid = MetricGrid {
            ctx,
            a: GridField::sample(ctx, spec, &a, 1.0)?,
            b: GridField::sample(ctx, spec, &b, 1.0)?,
            c: GridField::sample(ctx, spec, &c, 0.0)?,
        };
        for (i, j, z) in spec.nodes_within(ctx, 1.0) {
            let (a, b, c) = (grid.a.at(i, j), grid.b.at(i, j), grid.c.at(i, j));
            if !z.in_open_disk() {
                continue;
            }
            if !a.is_positive() || !b.is_positive() || !(a * b - c.square()).is_positive() {
                return Err(Error::NonPositive(format!("metric is not positive definite at {z:.6}")));
            }
        }
        Ok(grid)
    }

    /// `ω |dz|²`.
    pub fn isothermal<W>(ctx: Precision, spec: GridSpec, omega: W) -> Result<MetricGrid>
    where
        W: Fn(&HpComplex) -> Result<Real>,
    {
        let a = GridField::sample(ctx, spec, &omega, 1.0)?;
        let c = GridField::new(spec, vec![ctx.zero(); spec.len()])?;
        for (i, j, z) in spec.nodes_within(ctx, 1.0) {
            if z.in_open_disk() && !a.at(i, j).is_positive() {
                return Err(Error::NonPositive(format!("omega is not positive at {z:.6}")));
            }
        }
        Ok(MetricGrid { ctx, b: a.clone(), a, c })
    }

    pub fn spec(&self) -> GridSpec {
        self.a.spec
    }

    pub fn a(&self) -> &GridField {
        &self.a
    }

    pub fn b(&self) -> &GridField {
        &self.b
    }

    pub fn c(&self) -> &GridField {
        &self.c
    }

    /// Whether the `(2r+1)²` block around `(i, j)` lies in the open disk.
    pub fn is_interior(&self, i: usize, j: usize, reach: usize) -> bool {
        let spec = self.spec();
        if i < reach || j < reach || i + reach >= spec.nx || j + reach >= spec.ny {
            return false;
        }
        [(i - reach, j - reach), (i + reach, j - reach), (i - reach, j + reach), (i + reach, j + reach)]
            .iter()
            .all(|&(p, q)| spec.node(self.ctx, p, q).in_open_disk())
    }

    fn require_interior(&self, i: usize, j: usize, reach: usize) -> Result<()> {
        if self.is_interior(i, j, reach) {
            Ok(())
        } else {
            Err(Error::Stencil(format!(
                "node ({i}, {j}) lacks {reach} interior neighbours in each direction"
            )))
        }
    }
}

/// Fourth-order centered partials of a grid field at `(i, j)`.
struct Partials {
    x: Real,
    y: Real,
    xx: Real,
    yy: Real,
    xy: Real,
}

const D1: [f64; 5] = [1.0, -8.0, 0.0, 8.0, -1.0];
const D2: [f64; 5] = [-1.0, 16.0, -30.0, 16.0, -1.0];

fn field_partials(f: &GridField, i: usize, j: usize, hx: &Real, hy: &Real) -> Partials {
    partials(|di, dj| f.at((i as i64 + di) as usize, (j as i64 + dj) as usize).clone(), hx, hy)
}

/// `at(di, dj)` is the field at offset `(di, dj)`, `|di|, |dj| <= 2`.
fn partials<F: Fn(i64, i64) -> Real>(at: F, hx: &Real, hy: &Real) -> Partials {
    let zero = hx.zero_like();
    let (mut x, mut y, mut xx, mut yy, mut xy) =
        (zero.clone(), zero.clone(), zero.clone(), zero.clone(), zero);
    for (k, (c1, c2)) in D1.iter().zip(D2.iter()).enumerate() {
        let o = k as i64 - 2;
        x += at(o, 0) * *c1;
        y += at(0, o) * *c1;
        xx += at(o, 0) * *c2;
        yy += at(0, o) * *c2;
        for (l, c1y) in D1.iter().enumerate() {
            if *c1 != 0.0 && *c1y != 0.0 {
                xy += at(o, l as i64 - 2) * (c1 * c1y);
            }
        }
    }
    let hx12 = hx * 12.0;
    let hy12 = hy * 12.0;
    Partials {
        x: x / &hx12,
        y: y / &hy12,
        xx: xx / (&hx12 * hx),
        yy: yy / (&hy12 * hy),
        xy: xy / (hx12 * hy12),
    }
}

fn det3(m: [[&Real; 3]; 3]) -> Real {
    m[0][0] * &(m[1][1] * m[2][2] - m[1][2] * m[2][1]) - m[0][1] * &(m[1][0] * m[2][2] - m[1][2] * m[2][0])
        + m[0][2] * &(m[1][0] * m[2][1] - m[1][1] * m[2][0])
}

/// Gaussian curvature of the grid metric at an interior node by Brioschi's
/// formula, all partials by fourth-order centered differences.
pub fn brioschi_curvature(grid: &MetricGrid, i: usize, j: usize) -> Result<Real> {
    grid.require_interior(i, j, 2)?;
    let ctx = grid.ctx;
    let (hx, hy) = (grid.spec().hx(ctx), grid.spec().hy(ctx));
    let (a, b, c) = (grid.a.at(i, j), grid.b.at(i, j), grid.c.at(i, j));
    let pa = field_partials(&grid.a, i, j, &hx, &hy);
    let pb = field_partials(&grid.b, i, j, &hx, &hy);
    let pc = field_partials(&grid.c, i, j, &hx, &hy);

    let corner = -(&pa.yy / 2.0) - &pb.xx / 2.0 + &pc.xy;
    let half_ax = &pa.x / 2.0;
    let m13 = &pc.x - &pa.y / 2.0;
    let m21 = &pc.y - &pb.x / 2.0;
    let half_by = &pb.y / 2.0;
    let first = det3([[&corner, &half_ax, &m13], [&m21, a, c], [&half_by, c, b]]);

    let zero = ctx.zero();
    let half_ay = &pa.y / 2.0;
    let half_bx = &pb.x / 2.0;
    let second = det3([[&zero, &half_ay, &half_bx], [&half_ay, a, c], [&half_bx, c, b]]);

    let g = a * b - c.square();
    Ok((first - second) / g.square())
}

/// `κ = -(2/ω) Δ log ω` for the isothermal part `a` of the grid,
/// fourth-order differences.
pub fn grid_isothermal_curvature(grid: &MetricGrid, i: usize, j: usize) -> Result<Real> {
    grid.require_interior(i, j, 2)?;
    let ctx = grid.ctx;
    let spec = grid.spec();
    let log = |di: i64, dj: i64| grid.a.at((i as i64 + di) as usize, (j as i64 + dj) as usize).ln();
    let p = partials(log, &spec.hx(ctx), &spec.hy(ctx));
    let lap = (p.xx + p.yy) / 4.0;
    Ok(-(lap * 2.0) / grid.a.at(i, j))
}

/// `𝚫f = (1/(4√g)) {∂_x[(b ∂_x f - c ∂_y f)/√g] + ∂_y[(-c ∂_x f + a ∂_y f)/√g]}`,
/// `g = ab - c²`, by nested second-order centered differences.
pub fn laplace_beltrami_apply(grid: &MetricGrid, f: &GridField, i: usize, j: usize) -> Result<Real> {
    if f.spec() != grid.spec() {
        return Err(Error::InvalidInput("field and metric live on different grids".into()));
    }
    grid.require_interior(i, j, 2)?;
    let ctx = grid.ctx;
    let (hx, hy) = (grid.spec().hx(ctx), grid.spec().hy(ctx));
    let flux = |p: usize, q: usize| -> (Real, Real) {
        let fx = (f.at(p + 1, q) - f.at(p - 1, q)) / (&hx * 2.0);
        let fy = (f.at(p, q + 1) - f.at(p, q - 1)) / (&hy * 2.0);
        let (a, b, c) = (grid.a.at(p, q), grid.b.at(p, q), grid.c.at(p, q));
        let root = (a * b - c.square()).sqrt();
        let px = (b * &fx - c * &fy) / &root;
        let py = (a * &fy - c * &fx) / &root;
        (px, py)
    };
    let (east, _) = flux(i + 1, j);
    let (west, _) = flux(i - 1, j);
    let (_, north) = flux(i, j + 1);
    let (_, south) = flux(i, j - 1);
    let div = (east - west) / (&hx * 2.0) + (north - south) / (&hy * 2.0);
    let (a, b, c) = (grid.a.at(i, j), grid.b.at(i, j), grid.c.at(i, j));
    let root = (a * b - c.square()).sqrt();
    Ok(div / (root * 4.0))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx() -> Precision {
        Precision::default()
    }

    fn centre(spec: GridSpec) -> (usize, usize) {
        (spec.nx / 2, spec.ny / 2)
    }

    #[test]
    fn parse_grid() {
        assert_eq!(GridSpec::parse("101x51").unwrap(), GridSpec { nx: 101, ny: 51 });
        assert!(GridSpec::parse("101").is_err());
        assert!(GridSpec::parse("1x5").is_err());
    }

    #[test]
    fn euclidean_metric_is_flat() {
        let c = ctx();
        let spec = GridSpec::new(33, 33).unwrap();
        let grid = MetricGrid::general(c, spec, |z| Ok(z.re.one_like()), |z| Ok(z.re.one_like()), |z| Ok(z.re.zero_like()))
            .unwrap();
        let (i, j) = centre(spec);
        assert!(brioschi_curvature(&grid, i, j).unwrap().is_zero());
        assert!(matches!(brioschi_curvature(&grid, 0, j), Err(Error::Stencil(_))));
    }

    #[test]
    fn poincare_metric_has_curvature_minus_one() {
        let c = ctx();
        let spec = GridSpec::default();
        let poincare = |z: &HpComplex| Ok((1.0 - z.norm_sqr()).square().recip() * 4.0);
        let grid = MetricGrid::isothermal(c, spec, poincare).unwrap();
        for (i, j, _) in spec.nodes_within(c, 0.5).into_iter().step_by(97) {
            let k = brioschi_curvature(&grid, i, j).unwrap();
            assert!((&k + 1.0).abs() < 1e-6, "{k}");
            let k2 = grid_isothermal_curvature(&grid, i, j).unwrap();
            assert!((k2 + 1.0).abs() < 1e-6);
        }
    }

    #[test]
    fn brioschi_matches_isothermal_form() {
        let c = ctx();
        let spec = GridSpec::new(129, 129).unwrap();
        let omega = |z: &HpComplex| Ok((&z.re * 0.3 + z.im.square() * 0.2 + 1.0).exp());
        let grid = MetricGrid::isothermal(c, spec, omega).unwrap();
        let (i, j) = (70, 50);
        let a = brioschi_curvature(&grid, i, j).unwrap();
        let b = grid_isothermal_curvature(&grid, i, j).unwrap();
        assert!((a - b).abs() < 1e-6);
    }

    #[test]
    fn laplace_beltrami_examples() {
        let c = ctx();
        let spec = GridSpec::new(65, 65).unwrap();
        let (i, j) = (40, 30);
        let flat = MetricGrid::isothermal(c, spec, |z| Ok(z.re.one_like())).unwrap();
        let r2 = GridField::sample(c, spec, |z| Ok(z.norm_sqr()), 0.0).unwrap();
        assert!((laplace_beltrami_apply(&flat, &r2, i, j).unwrap() - 1.0).abs() < 1e-30);

        // harmonic f, isothermal metric: 𝚫f = Δf/ω, which vanishes up to O(h²)
        let omega = |z: &HpComplex| Ok(z.norm_sqr() + 1.0);
        let curved = MetricGrid::isothermal(c, spec, omega).unwrap();
        let harmonic = GridField::sample(c, spec, |z| Ok(z.powi(3).re), 0.0).unwrap();
        assert!(laplace_beltrami_apply(&curved, &harmonic, i, j).unwrap().abs() < 1e-2);

        // a = 2, b = 1: 𝚫x² = (1/(4√2)) ∂_x(√2/2 · 2x) = 1/4
        let general = MetricGrid::general(
            c,
            spec,
            |z| Ok(z.re.one_like() * 2.0),
            |z| Ok(z.re.one_like()),
            |z| Ok(z.re.zero_like()),
        )
        .unwrap();
        let x2 = GridField::sample(c, spec, |z| Ok(z.re.square()), 0.0).unwrap();
        assert!((laplace_beltrami_apply(&general, &x2, i, j).unwrap() - 0.25).abs() < 1e-30);
    }

    #[test]
    fn non_positive_metric_rejected() {
        let c = ctx();
        let spec = GridSpec::new(9, 9).unwrap();
        let bad = MetricGrid::general(c, spec, |z| Ok(z.re.one_like()), |z| Ok(z.re.one_like()), |z| Ok(z.re.one_like()));
        assert!(matches!(bad, Err(Error::NonPositive(_))));
    }

    #[test]
    fn csv_round_trip_and_interpolation() {
        let c = ctx();
        let spec = GridSpec::new(5, 7).unwrap();
        let field = GridField::sample(c, spec, |z| Ok(&z.re * 2.0 - &z.im + 0.5), 0.0).unwrap();
        let mut buf = Vec::new();
        field.write_csv(c, &mut buf).unwrap();
        let back = GridField::read_csv(c, buf.as_slice()).unwrap();
        assert_eq!(back.spec(), spec);
        for (a, b) in field.values().iter().zip(back.values()) {
            assert!((a - b).abs() < 1e-38);
        }
        // bilinear interpolation reproduces affine functions
        let z = c.complex(0.13, -0.41);
        let v = back.value(&z).unwrap();
        assert!((v - (&z.re * 2.0 - &z.im + 0.5)).abs() < 1e-38);
    }
}
