//! Power-law fits of tracked null-component maxima against `1 + s`.

use mbi_core::MbiError;
use statrs::distribution::{ContinuousCDF, StudentsT};

use crate::diagnostics::profiles::ShellProfile;

/// Minimum number of usable time samples for a fit.
pub const MIN_FIT_SAMPLES: usize = 5;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum NullComponent {
    UAlpha,
    Alpha,
    Rho,
    Sigma,
}

impl NullComponent {
    pub const ALL: [NullComponent; 4] = [NullComponent::UAlpha, NullComponent::Alpha, NullComponent::Rho, NullComponent::Sigma];

    pub fn label(&self) -> &'static str {
        match self {
            NullComponent::UAlpha => "ualpha",
            NullComponent::Alpha => "alpha",
            NullComponent::Rho => "rho",
            NullComponent::Sigma => "sigma",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|c| c.label() == s)
    }

    pub fn values<'a>(&self, profile: &'a ShellProfile) -> &'a [f64] {
        match self {
            NullComponent::UAlpha => &profile.ualpha,
            NullComponent::Alpha => &profile.alpha,
            NullComponent::Rho => &profile.rho,
            NullComponent::Sigma => &profile.sigma,
        }
    }
}

/// How the shell followed in time is chosen. Both follow `r = t + q0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Tracking {
    /// Largest value over shells with `|r - (t + q0)| <= half_width`.
    WaveZone { q0: f64, half_width: f64 },
    /// Value at `r = t + q0`, linearly interpolated between neighbouring shells.
    FixedQ { q0: f64 },
}

impl Tracking {
    pub fn q0(&self) -> f64 {
        match self {
            Tracking::WaveZone { q0, .. } | Tracking::FixedQ { q0 } => *q0,
        }
    }

    /// The tracked value at time `t`, or `None` when the tracked radius leaves the shells.
    pub fn sample(&self, t: f64, radii: &[f64], values: &[f64]) -> Option<f64> {
        let target = t + self.q0();
        match *self {
            Tracking::WaveZone { half_width, .. } => {
                if radii.last().map_or(true, |&r| target - half_width > r) {
                    return None;
                }
                radii
                    .iter()
                    .zip(values)
                    .filter(|(r, _)| (**r - target).abs() <= half_width)
                    .map(|(_, v)| *v)
                    .reduce(f64::max)
            }
            Tracking::FixedQ { .. } => {
                let k = radii.iter().position(|&r| r >= target)?;
                if radii[k] == target {
                    return Some(values[k]);
                }
                if k == 0 {
                    return None;
                }
                let w = (target - radii[k - 1]) / (radii[k] - radii[k - 1]);
                Some((1.0 - w) * values[k - 1] + w * values[k])
            }
        }
    }
}

/// Least-squares slope of `log v` against `log(1 + s)` with `s = r + t = 2t + q0`.
#[derive(Debug, Clone, PartialEq)]
pub struct DecayFit {
    pub exponent: f64,
    /// Standard error of the slope.
    pub std_error: f64,
    /// Two-sided 95% interval from the Student t quantile.
    pub ci95: (f64, f64),
    pub samples: usize,
    pub log_one_plus_s: Vec<f64>,
    pub log_value: Vec<f64>,
}

/// Fits the decay exponent of `component` along `tracking` over `(t, profile)` samples.
pub fn decay_fit(
    samples: &[(f64, &ShellProfile)],
    component: NullComponent,
    tracking: Tracking,
) -> mbi_core::Result<DecayFit> {
    let mut xs = Vec::new();
    let mut ys = Vec::new();
    for (t, profile) in samples {
        let Some(v) = tracking.sample(*t, &profile.radii, component.values(profile)) else { continue };
        if !(v > 0.0 && v.is_finite()) {
            continue;
        }
        let s = 2.0 * t + tracking.q0();
        xs.push((1.0 + s).ln());
        ys.push(v.ln());
    }
    if xs.len() < MIN_FIT_SAMPLES {
        return Err(MbiError::InsufficientData { needed: MIN_FIT_SAMPLES, available: xs.len() });
    }
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let sxx: f64 = xs.iter().map(|x| (x - mx).powi(2)).sum();
    let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let sse: f64 = xs.iter().zip(&ys).map(|(x, y)| (y - intercept - slope * x).powi(2)).sum();
    let std_error = (sse / (n - 2.0) / sxx).sqrt();
    let q = student_t_975(xs.len() - 2);
    Ok(DecayFit {
        exponent: slope,
        std_error,
        ci95: (slope - q * std_error, slope + q * std_error),
        samples: xs.len(),
        log_one_plus_s: xs,
        log_value: ys,
    })
}

/// 97.5% quantile of Student's t distribution with `dof` degrees of freedom.
fn student_t_975(dof: usize) -> f64 {
    match StudentsT::new(0.0, 1.0, dof as f64) {
        Ok(dist) => dist.inverse_cdf(0.975),
        Err(_) => f64::INFINITY,
    }
}
