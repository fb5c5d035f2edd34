//! Spectral operations on periodic samples at equispaced angles
//! `θ_m = 2πm/N`.

use num_complex::Complex64 as C64;
use rustfft::FftPlanner;

/// Integer wavenumber of FFT bin `j` for length `n`. The Nyquist bin maps to
/// `n/2` and is treated as having zero derivative.
fn wavenumber(j: usize, n: usize) -> i64 {
    if j <= n / 2 {
        j as i64
    } else {
        j as i64 - n as i64
    }
}

/// Normalized forward transform: `c_k = (1/N) Σ f_m e^{-ikθ_m}`.
pub fn coefficients(values: &[C64]) -> Vec<C64> {
    let n = values.len();
    let mut buf = values.to_vec();
    FftPlanner::new().plan_fft_forward(n).process(&mut buf);
    let scale = 1.0 / n as f64;
    buf.iter_mut().for_each(|c| *c *= scale);
    buf
}

/// Inverse of [`coefficients`].
pub fn synthesize(coeffs: &[C64]) -> Vec<C64> {
    let mut buf = coeffs.to_vec();
    FftPlanner::new().plan_fft_inverse(buf.len()).process(&mut buf);
    buf
}

fn apply_multiplier(values: &[C64], mult: impl Fn(i64, usize) -> C64) -> Vec<C64> {
    let n = values.len();
    let mut c = coefficients(values);
    for (j, cj) in c.iter_mut().enumerate() {
        *cj *= mult(wavenumber(j, n), j);
    }
    synthesize(&c)
}

/// d/dθ of complex periodic samples.
pub fn derivative(values: &[C64]) -> Vec<C64> {
    let n = values.len();
    apply_multiplier(values, |k, j| {
        if n % 2 == 0 && j == n / 2 {
            C64::new(0.0, 0.0)
        } else {
            C64::new(0.0, k as f64)
        }
    })
}

/// d/dθ of real periodic samples.
pub fn derivative_real(values: &[f64]) -> Vec<f64> {
    let v: Vec<C64> = values.iter().map(|&x| C64::new(x, 0.0)).collect();
    derivative(&v).into_iter().map(|c| c.re).collect()
}

/// Periodic antiderivative with zero mean. The mean of the input is dropped.
pub fn antiderivative_real(values: &[f64]) -> Vec<f64> {
    let n = values.len();
    let v: Vec<C64> = values.iter().map(|&x| C64::new(x, 0.0)).collect();
    apply_multiplier(&v, |k, j| {
        if k == 0 || (n % 2 == 0 && j == n / 2) {
            C64::new(0.0, 0.0)
        } else {
            C64::new(0.0, -1.0 / k as f64)
        }
    })
    .into_iter()
    .map(|c| c.re)
    .collect()
}

/// Trigonometric interpolant of real periodic samples.
#[derive(Debug, Clone)]
pub struct TrigInterpolant {
    /// `(k, c_k)` pairs, Nyquist term split symmetrically.
    terms: Vec<(f64, C64)>,
}

impl TrigInterpolant {
    pub fn new(values: &[f64]) -> Self {
        let n = values.len();
        let v: Vec<C64> = values.iter().map(|&x| C64::new(x, 0.0)).collect();
        let c = coefficients(&v);
        let mut terms = Vec::with_capacity(n + 1);
        for (j, &cj) in c.iter().enumerate() {
            if n % 2 == 0 && j == n / 2 {
                terms.push((j as f64, cj * 0.5));
                terms.push((-(j as f64), cj * 0.5));
            } else {
                terms.push((wavenumber(j, n) as f64, cj));
            }
        }
        Self { terms }
    }

    /// Value and first two derivatives at `theta`.
    pub fn eval3(&self, theta: f64) -> (f64, f64, f64) {
        let (mut f, mut d1, mut d2) = (0.0, 0.0, 0.0);
        for &(k, c) in &self.terms {
            let e = c * C64::from_polar(1.0, k * theta);
            f += e.re;
            d1 += (e * C64::new(0.0, k)).re;
            d2 -= k * k * e.re;
        }
        (f, d1, d2)
    }

    pub fn eval(&self, theta: f64) -> f64 {
        self.eval3(theta).0
    }

    /// Simple roots in `[0, 2π)`, bracketed on a grid of `samples` points and
    /// polished by Newton iteration to `tol` in θ.
    pub fn roots(&self, samples: usize, tol: f64) -> Vec<f64> {
        let two_pi = std::f64::consts::TAU;
        let h = two_pi / samples as f64;
        let vals: Vec<f64> = (0..samples).map(|m| self.eval(m as f64 * h)).collect();
        let mut out = Vec::new();
        for m in 0..samples {
            let (f0, f1) = (vals[m], vals[(m + 1) % samples]);
            if f0 == 0.0 {
                out.push(m as f64 * h);
                continue;
            }
            if f0 * f1 >= 0.0 {
                continue;
            }
            let (mut lo, mut hi) = (m as f64 * h, (m + 1) as f64 * h);
            let mut x = lo - f0 * h / (f1 - f0);
            for _ in 0..60 {
                let (f, d, _) = self.eval3(x);
                if f * f0 > 0.0 {
                    lo = x;
                } else {
                    hi = x;
                }
                let mut next = if d != 0.0 { x - f / d } else { 0.5 * (lo + hi) };
                if !(next > lo && next < hi) {
                    next = 0.5 * (lo + hi);
                }
                let step = (next - x).abs();
                x = next;
                if step < tol {
                    break;
                }
            }
            out.push(x.rem_euclid(two_pi));
        }
        out.sort_by(f64::total_cmp);
        out
    }
}

/// Unwrap a sequence of angles so consecutive samples differ by less than π.
pub fn unwrap(angles: &[f64]) -> Vec<f64> {
    let mut out = Vec::with_capacity(angles.len());
    let mut offset = 0.0;
    for (m, &a) in angles.iter().enumerate() {
        if m > 0 {
            let prev = angles[m - 1];
            let d = a - prev;
            offset -= std::f64::consts::TAU * (d / std::f64::consts::TAU).round();
        }
        out.push(a + offset);
    }
    out
}

pub fn nodes(n: usize) -> Vec<f64> {
    (0..n)
        .map(|m| std::f64::consts::TAU * m as f64 / n as f64)
        .collect()
}
