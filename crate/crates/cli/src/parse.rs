use mvsurf::hp::{HpComplex, Precision, Real};
use mvsurf::kernels::{ZeroPoint, ZeroSet};
use mvsurf::{Error, Result};

/// `re,im`; a lone number is real.
pub fn point(ctx: Precision, text: &str) -> Result<HpComplex> {
    let parts: Vec<&str> = text.split(',').map(str::trim).collect();
    match parts[..] {
        [re] => ctx.parse_complex(re, "0"),
        [re, im] => ctx.parse_complex(re, im),
        _ => Err(Error::Parse(format!("point {text:?}: expected re,im"))),
    }
}

/// `re,im;re,im;...`.
pub fn points(ctx: Precision, text: &str) -> Result<Vec<HpComplex>> {
    text.split(';')
        .map(str::trim)
        .filter(|p| !p.is_empty())
        .map(|p| point(ctx, p))
        .collect()
}

/// `re,im[,mult];...` with multiplicities defaulting to one.
pub fn zeros(ctx: Precision, alpha: Real, text: Option<&str>) -> Result<ZeroSet> {
    let Some(text) = text else {
        return ZeroSet::empty(alpha);
    };
    let mut pts = Vec::new();
    for item in text.split(';').map(str::trim).filter(|p| !p.is_empty()) {
        let parts: Vec<&str> = item.split(',').map(str::trim).collect();
        let (location, multiplicity) = match parts[..] {
            [re, im] => (ctx.parse_complex(re, im)?, 1),
            [re, im, m] => (
                ctx.parse_complex(re, im)?,
                m.parse().map_err(|_| Error::Parse(format!("multiplicity {m:?} is not a positive integer")))?,
            ),
            _ => return Err(Error::Parse(format!("zero {item:?}: expected re,im[,mult]"))),
        };
        pts.push(ZeroPoint { location, multiplicity });
    }
    ZeroSet::new(alpha, pts)
}

/// Comma-separated decimals.
pub fn reals(ctx: Precision, text: &str) -> Result<Vec<Real>> {
    text.split(',')
        .map(str::trim)
        .filter(|p| !p.is_empty())
        .map(|p| ctx.parse_real(p))
        .collect()
}

/// `lo:hi:count`, endpoints included.
pub fn range(ctx: Precision, text: &str) -> Result<Vec<Real>> {
    let parts: Vec<&str> = text.split(':').map(str::trim).collect();
    let [lo, hi, count] = parts[..] else {
        return Err(Error::Parse(format!("range {text:?}: expected lo:hi:count")));
    };
    let count: usize = count
        .parse()
        .ok()
        .filter(|c| *c >= 2)
        .ok_or_else(|| Error::Parse(format!("range {text:?}: count must be an integer >= 2")))?;
    let (lo, hi) = (ctx.parse_real(lo)?, ctx.parse_real(hi)?);
    let step = (&hi - &lo) / ((count - 1) as f64);
    Ok((0..count).map(|k| &lo + &(&step * (k as f64))).collect())
}

/// `MRxNT` for a disk rule.
pub fn rule_shape(text: &str) -> Result<(usize, usize)> {
    let bad = || Error::Parse(format!("rule {text:?}: expected <radial>x<angular>"));
    let (a, b) = text.split_once(['x', 'X']).ok_or_else(bad)?;
    Ok((a.trim().parse().map_err(|_| bad())?, b.trim().parse().map_err(|_| bad())?))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_points_and_zeros() {
        let c = Precision::default();
        let p = points(c, "0.5,0.25; -0.1,0").unwrap();
        assert_eq!(p.len(), 2);
        assert_eq!(p[0], c.parse_complex("0.5", "0.25").unwrap());
        assert_eq!(point(c, "0.3").unwrap(), c.parse_complex("0.3", "0").unwrap());
        let z = zeros(c, c.one(), Some("0.3,0.1;0.2,-0.4,2")).unwrap();
        assert_eq!(z.total_count(), 3);
        assert!(zeros(c, c.one(), Some("0.3")).is_err());
        assert!(zeros(c, c.one(), None).unwrap().is_empty());
    }

    #[test]
    fn parses_ranges() {
        let c = Precision::default();
        let r = range(c, "1:2:3").unwrap();
        assert_eq!(r[1], c.parse_real("1.5").unwrap());
        assert!(range(c, "1:2:1").is_err());
        assert_eq!(rule_shape("200x400").unwrap(), (200, 400));
        assert!(rule_shape("200").is_err());
        assert_eq!(reals(c, "1, 2.5").unwrap().len(), 2);
    }
}
