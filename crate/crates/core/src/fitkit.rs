//! Time series, peak extraction, and log-linear envelope fits.
//!
//! The charged-battery observables oscillate under an exponentially decaying
//! envelope. The envelope is reconstructed by picking strict local maxima,
//! refining each by quadratic interpolation, and fitting a least-squares line
//! through (t, ln y).

use crate::error::{Error, Result};

/// Peaks below this fraction of the series maximum are ignored.
const PEAK_FLOOR: f64 = 1e-6;

/// Uniform time grid, t_i = i * t_end / (n_points - 1).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TimeGrid {
    pub t_end: f64,
    pub n_points: usize,
}

impl TimeGrid {
    pub fn new(t_end: f64, n_points: usize) -> Result<Self> {
        if t_end <= 0.0 || !t_end.is_finite() {
            return Err(Error::InvalidParams(format!(
                "grid end must be positive, got {t_end}"
            )));
        }
        if n_points < 2 {
            return Err(Error::InvalidParams(format!(
                "grid needs at least 2 points, got {n_points}"
            )));
        }
        Ok(Self { t_end, n_points })
    }

    pub fn step(&self) -> f64 {
        self.t_end / (self.n_points - 1) as f64
    }

    pub fn times(&self) -> Vec<f64> {
        let h = self.step();
        (0..self.n_points).map(|i| i as f64 * h).collect()
    }
}

/// Uniformly sampled real observable against dimensionless time.
#[derive(Debug, Clone, PartialEq)]
pub struct TimeSeries {
    t: Vec<f64>,
    y: Vec<f64>,
}

impl TimeSeries {
    /// Validates a strictly increasing, uniform grid.
    pub fn new(t: Vec<f64>, y: Vec<f64>) -> Result<Self> {
        if t.len() != y.len() {
            return Err(Error::Dimension(format!(
                "time and value lengths differ: {} vs {}",
                t.len(),
                y.len()
            )));
        }
        if t.len() < 2 {
            return Err(Error::InvalidParams("series needs at least 2 samples".into()));
        }
        let h = t[1] - t[0];
        if h <= 0.0 {
            return Err(Error::InvalidParams("grid must be strictly increasing".into()));
        }
        let span = t[t.len() - 1] - t[0];
        let tol = 1e-12 * span.abs().max(1.0);
        for w in t.windows(2) {
            let d = w[1] - w[0];
            if d <= 0.0 || (d - h).abs() > tol {
                return Err(Error::InvalidParams(format!(
                    "grid spacing not uniform: {d} vs {h}"
                )));
            }
        }
        Ok(Self { t, y })
    }

    pub fn from_grid(grid: &TimeGrid, y: Vec<f64>) -> Result<Self> {
        Self::new(grid.times(), y)
    }

    pub fn t(&self) -> &[f64] {
        &self.t
    }

    pub fn y(&self) -> &[f64] {
        &self.y
    }

    pub fn len(&self) -> usize {
        self.t.len()
    }

    pub fn is_empty(&self) -> bool {
        self.t.is_empty()
    }

    pub fn step(&self) -> f64 {
        self.t[1] - self.t[0]
    }

    pub fn max_y(&self) -> f64 {
        self.y.iter().copied().fold(f64::NEG_INFINITY, f64::max)
    }
}

/// An exponential-envelope fit, y ~ amplitude * exp(-rate * t) through the
/// series' refined peaks.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DecayFit {
    /// Decay constant (positive for decaying envelopes).
    pub rate: f64,
    pub amplitude: f64,
    /// Root-mean-square residual of ln y around the fitted line.
    pub residual: f64,
    pub peaks_used: usize,
}

/// Strict local maxima of the series, refined by a quadratic through the
/// three bracketing samples. Peaks below `PEAK_FLOOR` of the series maximum
/// are dropped. Fewer than three peaks is an error: the series does not
/// oscillate enough to define an envelope.
pub fn envelope_peaks(s: &TimeSeries) -> Result<Vec<(f64, f64)>> {
    if s.len() < 3 {
        return Err(Error::InsufficientOscillation {
            found: 0,
            need: 3,
        });
    }
    let floor = PEAK_FLOOR * s.max_y().abs();
    let (t, y) = (s.t(), s.y());
    let mut peaks = Vec::new();
    for i in 1..s.len() - 1 {
        if y[i] > y[i - 1] && y[i] > y[i + 1] && y[i] > floor {
            peaks.push(refine_quadratic(
                (t[i - 1], y[i - 1]),
                (t[i], y[i]),
                (t[i + 1], y[i + 1]),
            ));
        }
    }
    if peaks.len() < 3 {
        return Err(Error::InsufficientOscillation {
            found: peaks.len(),
            need: 3,
        });
    }
    Ok(peaks)
}

/// Vertex of the parabola through three uniformly spaced samples.
fn refine_quadratic(lo: (f64, f64), mid: (f64, f64), hi: (f64, f64)) -> (f64, f64) {
    let denom = lo.1 - 2.0 * mid.1 + hi.1;
    if denom.abs() < f64::MIN_POSITIVE {
        return mid;
    }
    let delta = 0.5 * (lo.1 - hi.1) / denom;
    let h = mid.0 - lo.0;
    let t = mid.0 + delta * h;
    let y = mid.1 - 0.25 * (lo.1 - hi.1) * delta;
    (t, y)
}

/// Least-squares line through (t_k, ln y_k); rate is the negated slope.
/// All peaks must be positive.
pub fn fit_exponential(peaks: &[(f64, f64)]) -> Result<DecayFit> {
    if peaks.len() < 3 {
        return Err(Error::InsufficientOscillation {
            found: peaks.len(),
            need: 3,
        });
    }
    for &(t, y) in peaks {
        if y <= 0.0 {
            return Err(Error::NonPositivePeak { t, value: y });
        }
    }
    let n = peaks.len() as f64;
    let (mut st, mut sl, mut stt, mut stl) = (0.0, 0.0, 0.0, 0.0);
    for &(t, y) in peaks {
        let l = y.ln();
        st += t;
        sl += l;
        stt += t * t;
        stl += t * l;
    }
    let denom = n * stt - st * st;
    if denom.abs() < f64::MIN_POSITIVE {
        return Err(Error::InvalidParams(
            "degenerate peak times in envelope fit".into(),
        ));
    }
    let slope = (n * stl - st * sl) / denom;
    let intercept = (sl - slope * st) / n;
    let residual = (peaks
        .iter()
        .map(|&(t, y)| {
            let r = y.ln() - (intercept + slope * t);
            r * r
        })
        .sum::<f64>()
        / n)
        .sqrt();
    Ok(DecayFit {
        rate: -slope,
        amplitude: intercept.exp(),
        residual,
        peaks_used: peaks.len(),
    })
}

/// Full pipeline: peaks, transient guard, log-linear fit.
///
/// The first peak is excluded when it falls inside the first oscillation
/// period (estimated from the median peak spacing), unless dropping it would
/// leave fewer than three peaks.
pub fn fit_envelope(s: &TimeSeries) -> Result<DecayFit> {
    let mut peaks = envelope_peaks(s)?;
    if peaks.len() > 3 {
        let mut gaps: Vec<f64> = peaks.windows(2).map(|w| w[1].0 - w[0].0).collect();
        gaps.sort_by(f64::total_cmp);
        let median = gaps[gaps.len() / 2];
        if peaks[0].0 < median {
            peaks.remove(0);
        }
    }
    fit_exponential(&peaks)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn grid(t_end: f64, n: usize) -> TimeGrid {
        TimeGrid::new(t_end, n).unwrap()
    }

    fn sample(g: &TimeGrid, f: impl Fn(f64) -> f64) -> TimeSeries {
        let ys = g.times().into_iter().map(f).collect();
        TimeSeries::from_grid(g, ys).unwrap()
    }

    #[test]
    fn grid_uniformity_enforced() {
        assert!(TimeSeries::new(vec![0.0, 1.0, 2.5], vec![0.0; 3]).is_err());
        assert!(TimeSeries::new(vec![0.0, 1.0, 0.5], vec![0.0; 3]).is_err());
        assert!(TimeSeries::new(vec![0.0, 1.0, 2.0], vec![0.0; 3]).is_ok());
    }

    #[test]
    fn rectified_cosine_peaks_near_unity() {
        let g = grid(20.0, 4001);
        let s = sample(&g, |t| t.cos().abs());
        let peaks = envelope_peaks(&s).unwrap();
        assert!(peaks.len() >= 5);
        for (k, &(t, y)) in peaks.iter().enumerate() {
            // t = 0 is a boundary sample, so the first interior peak is at pi.
            let expect_t = (k + 1) as f64 * std::f64::consts::PI;
            assert!((t - expect_t).abs() < 0.02, "peak {k} at {t}, expect {expect_t}");
            // The cusp of |cos| is not a parabola; refinement is only O(h).
            assert!((y - 1.0).abs() < 5e-3);
        }
    }

    #[test]
    fn monotone_series_reports_insufficient_oscillation() {
        let g = grid(10.0, 200);
        let s = sample(&g, |t| (-0.3 * t).exp());
        assert!(matches!(
            envelope_peaks(&s),
            Err(Error::InsufficientOscillation { .. })
        ));
    }

    #[test]
    fn damped_oscillation_peak_values_track_envelope() {
        let g = grid(120.0, 24001);
        let s = sample(&g, |t| (-0.05 * t).exp() * (0.5 * t).cos().powi(2));
        let peaks = envelope_peaks(&s).unwrap();
        // The decay drags each maximum slightly off the cosine crest; the
        // exact peak-to-envelope ratio is 1/(1 + (r/2w)^2) = 0.9975.
        let ratio = 1.0 / (1.0 + (0.05f64 / 1.0).powi(2));
        for &(t, y) in &peaks {
            let env = (-0.05 * t).exp();
            assert!(
                (y / env - ratio).abs() < 1e-3,
                "peak at {t}: ratio {} vs {ratio}",
                y / env
            );
        }
    }

    #[test]
    fn synthetic_decay_rate_recovered() {
        let g = grid(150.0, 30001);
        let s = sample(&g, |t| (-0.05 * t).exp() * (0.5 * t).cos().powi(2));
        let fit = fit_envelope(&s).unwrap();
        assert!((fit.rate - 0.05).abs() < 1e-3, "rate {}", fit.rate);
        assert!(fit.peaks_used >= 3);
    }

    #[test]
    fn constant_peaks_give_zero_rate() {
        let peaks: Vec<(f64, f64)> = (0..8).map(|k| (k as f64 * 3.0 + 1.0, 2.0)).collect();
        let fit = fit_exponential(&peaks).unwrap();
        assert!(fit.rate.abs() < 1e-9);
        assert!((fit.amplitude - 2.0).abs() < 1e-9);
        assert!(fit.residual < 1e-12);
    }

    #[test]
    fn exact_exponential_fit_has_tiny_residual() {
        let peaks: Vec<(f64, f64)> = (1..10)
            .map(|k| {
                let t = k as f64 * 2.0;
                (t, 3.0 * (-0.07 * t).exp())
            })
            .collect();
        let fit = fit_exponential(&peaks).unwrap();
        assert!((fit.rate - 0.07).abs() < 1e-12);
        assert!((fit.amplitude - 3.0).abs() < 1e-12);
        assert!(fit.residual < 1e-12);
    }

    #[test]
    fn non_positive_peak_rejected() {
        let peaks = vec![(0.0, 1.0), (1.0, 0.0), (2.0, 0.5)];
        assert!(matches!(
            fit_exponential(&peaks),
            Err(Error::NonPositivePeak { .. })
        ));
    }

    #[test]
    fn fit_invariant_under_shift_and_scale() {
        let base: Vec<(f64, f64)> = (1..12)
            .map(|k| {
                let t = k as f64 * 1.7;
                (t, (-0.04 * t).exp() * (1.0 + 0.02 * (k as f64).sin()))
            })
            .collect();
        let fit = fit_exponential(&base).unwrap();
        let shifted: Vec<(f64, f64)> = base
            .iter()
            .map(|&(t, y)| (t + 100.0, y * (-0.04f64 * 100.0).exp()))
            .collect();
        let fit_shift = fit_exponential(&shifted).unwrap();
        assert!((fit.rate - fit_shift.rate).abs() < 1e-10);
        let scaled: Vec<(f64, f64)> = base.iter().map(|&(t, y)| (t, 7.5 * y)).collect();
        let fit_scale = fit_exponential(&scaled).unwrap();
        assert!((fit.rate - fit_scale.rate).abs() < 1e-12);
    }

    #[test]
    fn halving_step_moves_rate_less_than_a_percent() {
        let f = |t: f64| (-0.02 * t).exp() * (0.9 * t).sin().powi(2);
        let coarse = sample(&grid(200.0, 8001), f);
        let fine = sample(&grid(200.0, 16001), f);
        let rc = fit_envelope(&coarse).unwrap().rate;
        let rf = fit_envelope(&fine).unwrap().rate;
        assert!((rc - rf).abs() < 0.01 * rf.abs());
    }
}
