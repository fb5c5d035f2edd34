use num_complex::Complex64 as C64;
use serde::{Deserialize, Serialize};

use super::curve::{Orientation, SmoothCurve};
use super::marked::MarkedDomain;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CurveFile {
    /// `[k, re, im]` triples.
    pub coeffs: Vec<(i64, f64, f64)>,
    #[serde(default)]
    pub hole: bool,
}

/// On-disk domain description.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct DomainFile {
    pub curves: Vec<CurveFile>,
    pub a: [f64; 2],
    pub b: [f64; 2],
}

impl DomainFile {
    pub fn parse(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Input(e.to_string()))
    }

    pub fn to_domain(&self) -> Result<MarkedDomain> {
        let mut outer = None;
        let mut holes = Vec::new();
        for c in &self.curves {
            let coeffs = c.coeffs.iter().map(|&(k, re, im)| (k, C64::new(re, im))).collect();
            if c.hole {
                holes.push(SmoothCurve::new(coeffs, Orientation::Negative)?);
            } else if outer.is_none() {
                outer = Some(SmoothCurve::new(coeffs, Orientation::Positive)?);
            } else {
                return Err(Error::InvalidDomain("more than one outer curve".into()));
            }
        }
        let outer = outer.ok_or_else(|| Error::InvalidDomain("no outer curve".into()))?;
        MarkedDomain::new(outer, holes, C64::new(self.a[0], self.a[1]), C64::new(self.b[0], self.b[1]))
    }

    pub fn from_domain(d: &MarkedDomain) -> Self {
        let curves = d
            .curves()
            .iter()
            .map(|c| CurveFile {
                coeffs: c.coeffs().iter().map(|&(k, v)| (k, v.re, v.im)).collect(),
                hole: c.orientation() == Orientation::Negative,
            })
            .collect();
        Self { curves, a: [d.a().re, d.a().im], b: [d.b().re, d.b().im] }
    }
}

pub fn parse_domain(text: &str) -> Result<MarkedDomain> {
    DomainFile::parse(text)?.to_domain()
}
