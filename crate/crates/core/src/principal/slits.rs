use std::f64::consts::TAU;

use serde::Serialize;

use super::maps::{ConformalSlitMap, SlitKind};
use super::pair::PrincipalPair;
use crate::error::{Error, Result};
use crate::fourier::TrigInterpolant;

/// Newton tolerance in θ for the endpoint preimages.
pub const ENDPOINT_TOL: f64 = 1e-12;

/// Arc `{r e^{iθ} : θ₁ ≤ θ ≤ θ₂}` covered by the image of one boundary curve
/// under `P`.
#[derive(Debug, Clone, Serialize)]
pub struct CircularSlit {
    pub radius: f64,
    pub theta1: f64,
    pub theta2: f64,
    /// Boundary parameters of the endpoints `θ₁`, `θ₂` (extrema of arg P).
    pub preimages: [f64; 2],
}

/// Segment `{r e^{iθ} : r₁ ≤ r ≤ r₂}` covered by the image of one boundary
/// curve under `Q`.
#[derive(Debug, Clone, Serialize)]
pub struct RadialSlit {
    pub angle: f64,
    pub r1: f64,
    pub r2: f64,
    /// Boundary parameters of the endpoints `r₁`, `r₂` (extrema of log|Q|).
    pub preimages: [f64; 2],
}

#[derive(Debug, Clone, Default, Serialize)]
pub struct SlitData {
    pub circular: Vec<CircularSlit>,
    pub radial: Vec<RadialSlit>,
}

/// Extrema of a periodic trace given by `values` and its θ-derivative
/// `slope`, as `(θ at min, min, θ at max, max)`.
fn extrema(values: &[f64], slope: &[f64], curve: usize) -> Result<(f64, f64, f64, f64)> {
    let f = TrigInterpolant::new(values);
    let roots = TrigInterpolant::new(slope).roots(8 * slope.len(), ENDPOINT_TOL);
    if roots.len() != 2 {
        return Err(Error::ExtremaCount { curve, expected: 2, found: roots.len() });
    }
    let (v0, v1) = (f.eval(roots[0]), f.eval(roots[1]));
    let out = if v0 <= v1 { (roots[0], v0, roots[1], v1) } else { (roots[1], v1, roots[0], v0) };
    if out.3 - out.1 < 1e-9 {
        return Err(Error::DegenerateSlit { curve });
    }
    Ok(out)
}

fn wrap_angle(a: f64) -> f64 {
    let w = a.rem_euclid(TAU);
    if w > std::f64::consts::PI {
        w - TAU
    } else {
        w
    }
}

/// Slit geometry of a circular or radial map read from its boundary trace.
pub fn extract_slit_data(map: &ConformalSlitMap, pair: &PrincipalPair) -> Result<SlitData> {
    let trace = map.boundary_trace();
    let mut data = SlitData::default();
    for (j, cg) in pair.grid.curves.iter().enumerate() {
        let logs = &trace.log_w[j];
        let dtheta: Vec<_> = trace.dlog_w[j].iter().zip(&cg.dz).map(|(d, dz)| d * dz).collect();
        match map.kind {
            SlitKind::Circular => {
                let args: Vec<f64> = logs.iter().map(|l| l.im).collect();
                let slope: Vec<f64> = dtheta.iter().map(|d| d.im).collect();
                let (t1, a1, t2, a2) = extrema(&args, &slope, j)?;
                if a2 - a1 >= TAU {
                    return Err(Error::DegenerateSlit { curve: j });
                }
                let radius = (logs.iter().map(|l| l.re).sum::<f64>() / logs.len() as f64).exp();
                let shift = wrap_angle(a1) - a1;
                data.circular.push(CircularSlit {
                    radius,
                    theta1: a1 + shift,
                    theta2: a2 + shift,
                    preimages: [t1, t2],
                });
            }
            SlitKind::Radial => {
                let moduli: Vec<f64> = logs.iter().map(|l| l.re).collect();
                let slope: Vec<f64> = dtheta.iter().map(|d| d.re).collect();
                let (t1, l1, t2, l2) = extrema(&moduli, &slope, j)?;
                let angle = wrap_angle(logs.iter().map(|l| l.im).sum::<f64>() / logs.len() as f64);
                data.radial.push(RadialSlit { angle, r1: l1.exp(), r2: l2.exp(), preimages: [t1, t2] });
            }
            SlitKind::CombinedH => {
                return Err(Error::Input("slit data needs a circular or radial map".into()));
            }
        }
    }
    Ok(data)
}

/// Both slit families of a pair.
pub fn slit_data(pair: &PrincipalPair) -> Result<SlitData> {
    let circ = extract_slit_data(&super::build_slit_map(pair, SlitKind::Circular), pair)?;
    let rad = extract_slit_data(&super::build_slit_map(pair, SlitKind::Radial), pair)?;
    Ok(SlitData { circular: circ.circular, radial: rad.radial })
}

/// True when the four parameters alternate around the circle:
/// exactly one of `b` lies on the counterclockwise arc from `a[0]` to `a[1]`.
pub fn interleaved(a: [f64; 2], b: [f64; 2]) -> bool {
    let on_arc = |x: f64| (x - a[0]).rem_euclid(TAU) < (a[1] - a[0]).rem_euclid(TAU);
    on_arc(b[0]) != on_arc(b[1])
}
