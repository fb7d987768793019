use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hp::{HpComplex, Precision, Real};

/// A prescribed zero with its multiplicity.
#[derive(Clone, Debug, PartialEq)]
pub struct ZeroPoint {
    pub location: HpComplex,
    pub multiplicity: u32,
}

/// Finite zero set `A` in the open disk, tied to the Bergman parameter `α`.
///
/// Locations may repeat; kernels that support multiplicities treat every
/// repetition as one more order of vanishing.
#[derive(Clone, Debug)]
pub struct ZeroSet {
    alpha: Real,
    points: Vec<ZeroPoint>,
}

impl ZeroSet {
    pub fn new(alpha: Real, points: Vec<ZeroPoint>) -> Result<Self> {
        if !(alpha > -1.0) {
            return Err(Error::InvalidInput(format!("alpha must exceed -1, got {alpha:.10}")));
        }
        for (k, p) in points.iter().enumerate() {
            if p.multiplicity == 0 {
                return Err(Error::InvalidInput(format!("point {k} has multiplicity 0")));
            }
            if !p.location.in_open_disk() {
                return Err(Error::InvalidInput(format!(
                    "point {k} = {:.12} is not in the open unit disk",
                    p.location
                )));
            }
        }
        Ok(ZeroSet { alpha, points })
    }

    pub fn empty(alpha: Real) -> Result<Self> {
        ZeroSet::new(alpha, Vec::new())
    }

    /// All multiplicities one.
    pub fn simple(alpha: Real, locations: Vec<HpComplex>) -> Result<Self> {
        let points = locations
            .into_iter()
            .map(|location| ZeroPoint {
                location,
                multiplicity: 1,
            })
            .collect();
        ZeroSet::new(alpha, points)
    }

    pub fn alpha(&self) -> &Real {
        &self.alpha
    }

    pub fn points(&self) -> &[ZeroPoint] {
        &self.points
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// `n = Σ multiplicities`.
    pub fn total_count(&self) -> usize {
        self.points.iter().map(|p| p.multiplicity as usize).sum()
    }

    pub fn is_simple(&self) -> bool {
        self.points.iter().all(|p| p.multiplicity == 1)
    }

    /// Simple and pairwise distinct.
    pub fn has_distinct_simple_points(&self) -> bool {
        self.is_simple()
            && self.points.iter().enumerate().all(|(i, p)| {
                self.points[..i].iter().all(|q| q.location != p.location)
            })
    }

    /// Locations repeated according to multiplicity, in input order.
    pub fn expanded(&self) -> Vec<HpComplex> {
        self.points
            .iter()
            .flat_map(|p| std::iter::repeat(p.location.clone()).take(p.multiplicity as usize))
            .collect()
    }

    /// Whether the multiset is closed under complex conjugation (exact
    /// comparison of the stored values).
    pub fn is_conjugate_symmetric(&self) -> bool {
        let count = |z: &HpComplex| -> u64 {
            self.points
                .iter()
                .filter(|q| q.location == *z)
                .map(|q| u64::from(q.multiplicity))
                .sum()
        };
        self.points.iter().all(|p| count(&p.location) == count(&p.location.conj()))
    }

    pub fn conjugated(&self) -> ZeroSet {
        ZeroSet {
            alpha: self.alpha.clone(),
            points: self
                .points
                .iter()
                .map(|p| ZeroPoint {
                    location: p.location.conj(),
                    multiplicity: p.multiplicity,
                })
                .collect(),
        }
    }

    pub fn permuted(&self, order: &[usize]) -> Result<ZeroSet> {
        let mut seen = vec![false; self.points.len()];
        if order.len() != self.points.len() {
            return Err(Error::InvalidInput("permutation length mismatch".into()));
        }
        for &i in order {
            if i >= seen.len() || std::mem::replace(&mut seen[i], true) {
                return Err(Error::InvalidInput("not a permutation".into()));
            }
        }
        Ok(ZeroSet {
            alpha: self.alpha.clone(),
            points: order.iter().map(|&i| self.points[i].clone()).collect(),
        })
    }

    pub fn to_json(&self) -> Result<String> {
        let doc = ZeroSetDoc {
            alpha: self.alpha.to_decimal_string(),
            points: self
                .points
                .iter()
                .map(|p| PointDoc {
                    re: p.location.re.to_decimal_string(),
                    im: p.location.im.to_decimal_string(),
                    mult: p.multiplicity,
                })
                .collect(),
        };
        Ok(serde_json::to_string_pretty(&doc)?)
    }

    pub fn from_json(ctx: Precision, text: &str) -> Result<ZeroSet> {
        let doc: ZeroSetDoc = serde_json::from_str(text)?;
        ZeroSet::from_doc(ctx, &doc)
    }

    pub fn from_doc(ctx: Precision, doc: &ZeroSetDoc) -> Result<ZeroSet> {
        let alpha = ctx.parse_real(&doc.alpha)?;
        let points = doc
            .points
            .iter()
            .map(|p| {
                Ok(ZeroPoint {
                    location: ctx.parse_complex(&p.re, &p.im)?,
                    multiplicity: p.mult,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        ZeroSet::new(alpha, points)
    }
}

/// JSON exchange form: every number is a decimal string.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ZeroSetDoc {
    pub alpha: String,
    pub points: Vec<PointDoc>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PointDoc {
    pub re: String,
    pub im: String,
    pub mult: u32,
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx() -> Precision {
        Precision::default()
    }

    #[test]
    fn rejects_points_outside_the_disk() {
        let c = ctx();
        assert!(ZeroSet::simple(c.one(), vec![c.complex(0.6, 0.8)]).is_err());
        assert!(ZeroSet::simple(c.one(), vec![c.complex(0.6, 0.7)]).is_ok());
        assert!(ZeroSet::simple(c.int(-1), vec![]).is_err());
        let zero_mult = ZeroPoint {
            location: c.czero(),
            multiplicity: 0,
        };
        assert!(ZeroSet::new(c.one(), vec![zero_mult]).is_err());
    }

    #[test]
    fn symmetry_flag() {
        let c = ctx();
        let a = c.complex(0.3, 0.4);
        let sym = ZeroSet::simple(c.one(), vec![a.clone(), a.conj(), c.complex(0.5, 0.0)]).unwrap();
        assert!(sym.is_conjugate_symmetric());
        let asym = ZeroSet::simple(c.one(), vec![a.clone()]).unwrap();
        assert!(!asym.is_conjugate_symmetric());
        assert!(asym.conjugated().points()[0].location == a.conj());
    }

    #[test]
    fn counts_and_expansion() {
        let c = ctx();
        let z = ZeroSet::new(
            c.int(2),
            vec![
                ZeroPoint { location: c.complex(0.1, 0.0), multiplicity: 3 },
                ZeroPoint { location: c.complex(0.0, 0.2), multiplicity: 1 },
            ],
        )
        .unwrap();
        assert_eq!(z.total_count(), 4);
        assert_eq!(z.expanded().len(), 4);
        assert!(!z.is_simple());
    }

    #[test]
    fn json_round_trip() {
        let c = ctx();
        let z = ZeroSet::new(
            c.parse_real("2.5").unwrap(),
            vec![ZeroPoint { location: HpComplex::new(c.ratio(1, 3), c.ratio(-1, 7)), multiplicity: 2 }],
        )
        .unwrap();
        let text = z.to_json().unwrap();
        assert!(text.contains("\"mult\": 2"));
        let back = ZeroSet::from_json(c, &text).unwrap();
        assert_eq!(back.alpha(), z.alpha());
        assert_eq!(back.points(), z.points());
    }
}
