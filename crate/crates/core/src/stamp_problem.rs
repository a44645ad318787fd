//! Stamp profiles, their sine coefficients, contact pressure and force.
//!
//! A profile is the prescribed normal displacement `v_h(x)` of the face
//! `y = h`. Positive depth means `v_h > 0`. Stresses follow the usual
//! elasticity convention (tension positive).

use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::params::Geometry;
use crate::quadrature::{sine_transform, QuadratureSpec};
use crate::strip_solution::SeriesField;

/// Prescribed stamp displacement on `0 <= x <= l`.
#[derive(Debug, Clone, PartialEq)]
pub enum BoundaryProfile {
    /// `amplitude * sin(mode * pi * x / l)`.
    SingleMode { mode: usize, amplitude: f64 },
    /// `depth * (1 + cos(pi (x - center) / half_width)) / 2` on the support.
    RaisedCosine {
        center: f64,
        half_width: f64,
        depth: f64,
    },
    /// `depth * (1 - ((x - center) / half_width)^2)` on the support.
    ParabolicBump {
        center: f64,
        half_width: f64,
        depth: f64,
    },
    /// `depth` on `[center - half_width, center + half_width]`, zero elsewhere.
    FlatStamp {
        center: f64,
        half_width: f64,
        depth: f64,
    },
    /// Piecewise-linear interpolation of samples; `xs` strictly increasing
    /// from 0 to `l`.
    Tabulated { xs: Vec<f64>, vs: Vec<f64> },
}

/// Physical displacements and stresses at one point.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct FieldSample {
    pub x: f64,
    pub y: f64,
    pub u: f64,
    pub v: f64,
    pub sigma_x: f64,
    pub sigma_y: f64,
    pub tau_xy: f64,
}

/// Tolerance on `|v_h(0)|` and `|v_h(l)|`.
pub const EDGE_TOLERANCE: f64 = 1e-12;

impl BoundaryProfile {
    pub fn single_mode(mode: usize, amplitude: f64) -> Self {
        BoundaryProfile::SingleMode { mode, amplitude }
    }

    pub fn raised_cosine(center: f64, half_width: f64, depth: f64) -> Self {
        BoundaryProfile::RaisedCosine {
            center,
            half_width,
            depth,
        }
    }

    pub fn parabolic_bump(center: f64, half_width: f64, depth: f64) -> Self {
        BoundaryProfile::ParabolicBump {
            center,
            half_width,
            depth,
        }
    }

    pub fn flat_stamp(center: f64, half_width: f64, depth: f64) -> Self {
        BoundaryProfile::FlatStamp {
            center,
            half_width,
            depth,
        }
    }

    /// `v_h(x)` for a plate of length `l`.
    pub fn value(&self, x: f64, l: f64) -> f64 {
        match *self {
            BoundaryProfile::SingleMode { mode, amplitude } => {
                amplitude * crate::strip_solution::sincos_pi(mode as f64 * x / l).0
            }
            BoundaryProfile::RaisedCosine {
                center,
                half_width,
                depth,
            } => {
                let s = (x - center) / half_width;
                if s.abs() <= 1.0 {
                    depth * 0.5 * (1.0 + (PI * s).cos())
                } else {
                    0.0
                }
            }
            BoundaryProfile::ParabolicBump {
                center,
                half_width,
                depth,
            } => {
                let s = (x - center) / half_width;
                if s.abs() <= 1.0 {
                    depth * (1.0 - s * s)
                } else {
                    0.0
                }
            }
            BoundaryProfile::FlatStamp {
                center,
                half_width,
                depth,
            } => {
                if (x - center).abs() <= half_width {
                    depth
                } else {
                    0.0
                }
            }
            BoundaryProfile::Tabulated { ref xs, ref vs } => interpolate(xs, vs, x),
        }
    }

    /// Points where the profile or a low derivative is not smooth.
    pub fn breakpoints(&self) -> Vec<f64> {
        match self {
            BoundaryProfile::SingleMode { .. } => Vec::new(),
            BoundaryProfile::RaisedCosine {
                center, half_width, ..
            }
            | BoundaryProfile::ParabolicBump {
                center, half_width, ..
            }
            | BoundaryProfile::FlatStamp {
                center, half_width, ..
            } => vec![center - half_width, center + half_width],
            BoundaryProfile::Tabulated { xs, .. } => xs.clone(),
        }
    }

    /// Exact `(2/l) int_0^l v_h(x) sin(n pi x / l) dx` where one is known.
    pub fn closed_form_coefficient(&self, n: usize, l: f64) -> Option<f64> {
        let k = n as f64 * PI / l;
        match *self {
            BoundaryProfile::SingleMode { mode, amplitude } => {
                Some(if mode == n { amplitude } else { 0.0 })
            }
            BoundaryProfile::FlatStamp {
                center,
                half_width,
                depth,
            } => {
                let (a, b) = (center - half_width, center + half_width);
                Some(2.0 * depth / (n as f64 * PI) * ((k * a).cos() - (k * b).cos()))
            }
            BoundaryProfile::ParabolicBump {
                center,
                half_width,
                depth,
            } => {
                let kw = k * half_width;
                Some(
                    8.0 * depth * (k * center).sin() / (l * half_width * half_width * k.powi(3))
                        * (kw.sin() - kw * kw.cos()),
                )
            }
            _ => None,
        }
    }

    /// Checks parameters and the edge conditions `v_h(0) = v_h(l) = 0`.
    pub fn validate(&self, geom: &Geometry) -> Result<()> {
        let l = geom.length();
        let finite = |name: &str, v: f64| {
            if v.is_finite() {
                Ok(())
            } else {
                Err(Error::Profile(format!("{name} must be finite, got {v}")))
            }
        };
        match self {
            BoundaryProfile::SingleMode { mode, amplitude } => {
                if *mode == 0 {
                    return Err(Error::Profile("single-mode index must be >= 1".into()));
                }
                finite("amplitude", *amplitude)?;
            }
            BoundaryProfile::RaisedCosine {
                center,
                half_width,
                depth,
            }
            | BoundaryProfile::ParabolicBump {
                center,
                half_width,
                depth,
            }
            | BoundaryProfile::FlatStamp {
                center,
                half_width,
                depth,
            } => {
                finite("center", *center)?;
                finite("half_width", *half_width)?;
                finite("depth", *depth)?;
                if !(*half_width > 0.0) {
                    return Err(Error::Profile(format!(
                        "half_width must be positive, got {half_width}"
                    )));
                }
            }
            BoundaryProfile::Tabulated { xs, vs } => {
                if xs.len() != vs.len() || xs.len() < 2 {
                    return Err(Error::Profile(
                        "tabulated profile needs at least two (x, v) pairs of equal length".into(),
                    ));
                }
                if xs.iter().chain(vs).any(|v| !v.is_finite()) {
                    return Err(Error::Profile("tabulated samples must be finite".into()));
                }
                if xs.windows(2).any(|w| w[1] <= w[0]) {
                    return Err(Error::Profile("tabulated x must be strictly increasing".into()));
                }
                let tol = 1e-12 * l;
                if xs[0].abs() > tol || (xs[xs.len() - 1] - l).abs() > tol {
                    return Err(Error::Profile(format!("tabulated x must span [0, {l}]")));
                }
            }
        }
        let (v0, vl) = (self.value(0.0, l), self.value(l, l));
        if v0.abs() > EDGE_TOLERANCE {
            return Err(Error::BoundaryCompatibility(format!(
                "condition V_h(0) = 0 violated: stamp displacement at x = 0 is {v0}"
            )));
        }
        if vl.abs() > EDGE_TOLERANCE {
            return Err(Error::BoundaryCompatibility(format!(
                "condition V_h(l) = 0 violated: stamp displacement at x = l is {vl}"
            )));
        }
        Ok(())
    }
}

fn interpolate(xs: &[f64], vs: &[f64], x: f64) -> f64 {
    let i = xs.partition_point(|&t| t <= x);
    if i == 0 {
        return vs[0];
    }
    if i >= xs.len() {
        return vs[vs.len() - 1];
    }
    let (x0, x1) = (xs[i - 1], xs[i]);
    let w = (x - x0) / (x1 - x0);
    vs[i - 1] + w * (vs[i] - vs[i - 1])
}

/// `c_n` for `n = 1..=n_modes` by closed form when known, else Simpson
/// with `spec`. No edge validation.
pub(crate) fn profile_transform(
    profile: &BoundaryProfile,
    l: f64,
    n_modes: usize,
    spec: QuadratureSpec,
) -> Vec<f64> {
    let breaks = profile.breakpoints();
    (1..=n_modes)
        .map(|n| {
            profile
                .closed_form_coefficient(n, l)
                .unwrap_or_else(|| sine_transform(|x| profile.value(x, l), l, n, &breaks, spec))
        })
        .collect()
}

/// Sine coefficients `c_1..c_N` of the stamp displacement.
pub fn sine_coefficients(
    profile: &BoundaryProfile,
    geom: &Geometry,
    n_modes: usize,
) -> Result<Vec<f64>> {
    check_modes(n_modes)?;
    profile.validate(geom)?;
    let c = profile_transform(profile, geom.length(), n_modes, QuadratureSpec::for_modes(n_modes));
    finite_coefficients(c)
}

/// Sine coefficients by quadrature only, ignoring any closed form.
pub fn sine_coefficients_quadrature(
    profile: &BoundaryProfile,
    geom: &Geometry,
    n_modes: usize,
    spec: QuadratureSpec,
) -> Result<Vec<f64>> {
    check_modes(n_modes)?;
    profile.validate(geom)?;
    let l = geom.length();
    let breaks = profile.breakpoints();
    let c = (1..=n_modes)
        .map(|n| sine_transform(|x| profile.value(x, l), l, n, &breaks, spec))
        .collect();
    finite_coefficients(c)
}

fn check_modes(n_modes: usize) -> Result<()> {
    if n_modes == 0 {
        return Err(Error::Domain("truncation N must be >= 1".into()));
    }
    Ok(())
}

fn finite_coefficients(c: Vec<f64>) -> Result<Vec<f64>> {
    match c.iter().find(|v| !v.is_finite()) {
        Some(&value) => Err(Error::NonFinite {
            what: "stamp sine coefficient",
            value,
        }),
        None => Ok(c),
    }
}

/// `sum_n c_n sin(n pi x / l)`.
pub fn sine_reconstruction(coeffs: &[f64], l: f64, x: f64) -> f64 {
    coeffs
        .iter()
        .enumerate()
        .map(|(i, c)| c * crate::strip_solution::sincos_pi((i + 1) as f64 * x / l).0)
        .sum()
}

/// Normal stress `sigma_y(x, h)` under the stamp.
pub fn contact_pressure(sf: &SeriesField, x: f64) -> Result<f64> {
    Ok(sf.evaluate_fields(x, sf.geometry().height())?.sigma_y)
}

/// Resultant `int_0^l sigma_y(x, h) dx` per unit thickness, summed term by
/// term. Even modes integrate to zero.
pub fn total_force(sf: &SeriesField) -> f64 {
    let l = sf.geometry().length();
    sf.modes()
        .iter()
        .filter(|m| m.mode.n() % 2 == 1)
        .map(|m| m.coefficient * m.fields.eval(1.0).sigma_y * 2.0 * l / (m.mode.n() as f64 * PI))
        .sum()
}
