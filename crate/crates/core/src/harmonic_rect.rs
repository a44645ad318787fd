//! Dirichlet problem for Laplace's equation on the rectangle.
//!
//! With `f1..f4` given on the left, right, bottom and top edges, the
//! solution is the sum of four series
//!
//! ```text
//! A_n sh(n pi (l - x)/h) sin(n pi y/h) / sh(n pi l/h)
//! B_n sh(n pi x/h)       sin(n pi y/h) / sh(n pi l/h)
//! C_n sin(n pi x/l) sh(n pi (h - y)/l) / sh(n pi h/l)
//! D_n sin(n pi x/l) sh(n pi y/l)       / sh(n pi h/l)
//! ```
//!
//! The stored coefficients are the raw sine transforms of the edge data, so
//! they stay O(1); the hyperbolic ratios are applied at evaluation time.

use std::sync::Arc;

use crate::error::{Edge, Error, Result};
use crate::modal_calculus::sh_sh;
use crate::params::Geometry;
use crate::quadrature::{sine_transform, QuadratureSpec};
use crate::stamp_problem::BoundaryProfile;
use crate::strip_solution::sincos_pi;

/// A function on one edge, parametrized by the coordinate along it.
pub trait EdgeFunction: Send + Sync {
    fn value(&self, t: f64) -> f64;

    /// Exact `(2/len) int_0^len f(t) sin(n pi t/len) dt`, when known.
    fn sine_transform(&self, _n: usize, _len: f64) -> Option<f64> {
        None
    }

    /// Kinks or jumps inside the edge, to split the quadrature.
    fn breakpoints(&self) -> Vec<f64> {
        Vec::new()
    }
}

/// `f = 0`.
#[derive(Debug, Clone, Copy, Default)]
pub struct ZeroEdge;

impl EdgeFunction for ZeroEdge {
    fn value(&self, _t: f64) -> f64 {
        0.0
    }

    fn sine_transform(&self, _n: usize, _len: f64) -> Option<f64> {
        Some(0.0)
    }
}

/// `f(t) = end_value * t / len`: zero at the start of the edge.
#[derive(Debug, Clone, Copy)]
pub struct LinearEdge {
    pub len: f64,
    pub end_value: f64,
}

impl EdgeFunction for LinearEdge {
    fn value(&self, t: f64) -> f64 {
        self.end_value * t / self.len
    }

    fn sine_transform(&self, n: usize, _len: f64) -> Option<f64> {
        let sign = if n.is_multiple_of(2) { -1.0 } else { 1.0 };
        Some(self.end_value * 2.0 * sign / (n as f64 * std::f64::consts::PI))
    }
}

/// `f(t) = amplitude * sin(mode pi t / len)`.
#[derive(Debug, Clone, Copy)]
pub struct SineEdge {
    pub mode: usize,
    pub amplitude: f64,
    pub len: f64,
}

impl EdgeFunction for SineEdge {
    fn value(&self, t: f64) -> f64 {
        self.amplitude * sincos_pi(self.mode as f64 * t / self.len).0
    }

    fn sine_transform(&self, n: usize, len: f64) -> Option<f64> {
        (len == self.len).then_some(if n == self.mode { self.amplitude } else { 0.0 })
    }
}

/// Any closure, integrated by quadrature.
pub struct FnEdge<F>(pub F);

impl<F: Fn(f64) -> f64 + Send + Sync> EdgeFunction for FnEdge<F> {
    fn value(&self, t: f64) -> f64 {
        (self.0)(t)
    }
}

/// A stamp profile used as top-edge data.
#[derive(Debug, Clone)]
pub struct ProfileEdge {
    pub profile: BoundaryProfile,
    pub len: f64,
}

impl EdgeFunction for ProfileEdge {
    fn value(&self, t: f64) -> f64 {
        self.profile.value(t, self.len)
    }

    fn sine_transform(&self, n: usize, len: f64) -> Option<f64> {
        self.profile.closed_form_coefficient(n, len)
    }

    fn breakpoints(&self) -> Vec<f64> {
        self.profile.breakpoints()
    }
}

/// Edge data `f1(y)` at `x = 0`, `f2(y)` at `x = l`, `f3(x)` at `y = 0`,
/// `f4(x)` at `y = h`.
#[derive(Clone)]
pub struct DirichletData {
    pub left: Arc<dyn EdgeFunction>,
    pub right: Arc<dyn EdgeFunction>,
    pub bottom: Arc<dyn EdgeFunction>,
    pub top: Arc<dyn EdgeFunction>,
}

impl DirichletData {
    pub fn new(
        left: impl EdgeFunction + 'static,
        right: impl EdgeFunction + 'static,
        bottom: impl EdgeFunction + 'static,
        top: impl EdgeFunction + 'static,
    ) -> Self {
        DirichletData {
            left: Arc::new(left),
            right: Arc::new(right),
            bottom: Arc::new(bottom),
            top: Arc::new(top),
        }
    }

    pub fn zero() -> Self {
        DirichletData::new(ZeroEdge, ZeroEdge, ZeroEdge, ZeroEdge)
    }

    /// Only the top edge is nonzero.
    pub fn top_only(top: impl EdgeFunction + 'static) -> Self {
        DirichletData::new(ZeroEdge, ZeroEdge, ZeroEdge, top)
    }

    /// Boundary value at a point of the closed rectangle's boundary. Corners
    /// take the left/right edge value.
    pub fn boundary_value(&self, geom: &Geometry, x: f64, y: f64) -> f64 {
        if x <= 0.0 {
            self.left.value(y)
        } else if x >= geom.length() {
            self.right.value(y)
        } else if y <= 0.0 {
            self.bottom.value(x)
        } else {
            self.top.value(x)
        }
    }
}

/// Truncated four-series harmonic function.
#[derive(Debug, Clone, PartialEq)]
pub struct HarmonicSeries {
    a: Vec<f64>,
    b: Vec<f64>,
    c: Vec<f64>,
    d: Vec<f64>,
    geom: Geometry,
}

impl HarmonicSeries {
    pub fn from_coefficients(
        a: Vec<f64>,
        b: Vec<f64>,
        c: Vec<f64>,
        d: Vec<f64>,
        geom: Geometry,
    ) -> Result<Self> {
        let n = a.len();
        if n == 0 || b.len() != n || c.len() != n || d.len() != n {
            return Err(Error::Domain(
                "harmonic series needs four coefficient arrays of equal length >= 1".into(),
            ));
        }
        Ok(HarmonicSeries { a, b, c, d, geom })
    }

    /// Raw transform of the left-edge data.
    pub fn a(&self) -> &[f64] {
        &self.a
    }
    /// Raw transform of the right-edge data.
    pub fn b(&self) -> &[f64] {
        &self.b
    }
    /// Raw transform of the bottom-edge data.
    pub fn c(&self) -> &[f64] {
        &self.c
    }
    /// Raw transform of the top-edge data.
    pub fn d(&self) -> &[f64] {
        &self.d
    }

    pub fn truncation(&self) -> usize {
        self.a.len()
    }

    pub fn geometry(&self) -> &Geometry {
        &self.geom
    }

    fn sum(&self, x: f64, y: f64) -> f64 {
        let (l, h) = (self.geom.length(), self.geom.height());
        let pi = std::f64::consts::PI;
        let mut acc = 0.0;
        for i in 0..self.a.len() {
            let n = (i + 1) as f64;
            let (ay, by) = (self.a[i], self.b[i]);
            if ay != 0.0 || by != 0.0 {
                let s = sincos_pi(n * y / h).0;
                let w = n * pi * l / h;
                acc += s * (ay * sh_sh(n * pi * (l - x) / h, w) + by * sh_sh(n * pi * x / h, w));
            }
            let (cx, dx) = (self.c[i], self.d[i]);
            if cx != 0.0 || dx != 0.0 {
                let s = sincos_pi(n * x / l).0;
                let w = n * pi * h / l;
                acc += s * (cx * sh_sh(n * pi * (h - y) / l, w) + dx * sh_sh(n * pi * y / l, w));
            }
        }
        acc
    }
}

fn edge_transforms(
    f: &dyn EdgeFunction,
    edge: Edge,
    len: f64,
    n_modes: usize,
    quad: QuadratureSpec,
) -> Result<Vec<f64>> {
    let breaks = f.breakpoints();
    (1..=n_modes)
        .map(|n| {
            let v = f
                .sine_transform(n, len)
                .unwrap_or_else(|| sine_transform(|t| f.value(t), len, n, &breaks, quad));
            if v.is_finite() {
                Ok(v)
            } else {
                Err(Error::Quadrature { edge, mode: n })
            }
        })
        .collect()
}

/// Raw sine transforms of the four edge functions.
pub fn solve_dirichlet(
    data: &DirichletData,
    geom: &Geometry,
    n_modes: usize,
    quad: QuadratureSpec,
) -> Result<HarmonicSeries> {
    if n_modes == 0 {
        return Err(Error::Domain("truncation N must be >= 1".into()));
    }
    let (l, h) = (geom.length(), geom.height());
    Ok(HarmonicSeries {
        a: edge_transforms(data.left.as_ref(), Edge::Left, h, n_modes, quad)?,
        b: edge_transforms(data.right.as_ref(), Edge::Right, h, n_modes, quad)?,
        c: edge_transforms(data.bottom.as_ref(), Edge::Bottom, l, n_modes, quad)?,
        d: edge_transforms(data.top.as_ref(), Edge::Top, l, n_modes, quad)?,
        geom: *geom,
    })
}

/// Truncated series value at `(x, y)`.
pub fn evaluate_harmonic(series: &HarmonicSeries, x: f64, y: f64) -> Result<f64> {
    series.geom.check_point(x, y)?;
    Ok(series.sum(x, y))
}

/// Edge data of the first building block: `(y/h) v0` and `(y/h) vl` on the
/// sides, zero on the bottom, the stamp profile on top.
pub fn stamp_block_coefficients(
    vh0: f64,
    vhl: f64,
    profile: &BoundaryProfile,
    geom: &Geometry,
    n_modes: usize,
) -> Result<HarmonicSeries> {
    let h = geom.height();
    let data = DirichletData::new(
        LinearEdge { len: h, end_value: vh0 },
        LinearEdge { len: h, end_value: vhl },
        ZeroEdge,
        ProfileEdge {
            profile: profile.clone(),
            len: geom.length(),
        },
    );
    solve_dirichlet(&data, geom, n_modes, QuadratureSpec::for_modes(n_modes))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quadrature::sine_transform as quad_transform;
    use std::f64::consts::PI;

    fn geom() -> Geometry {
        Geometry::new(2.0, 1.0).unwrap()
    }

    #[test]
    fn top_sine_is_single_d_coefficient() {
        let g = geom();
        let data = DirichletData::top_only(FnEdge(|x: f64| (PI * x / 2.0).sin()));
        let s = solve_dirichlet(&data, &g, 6, QuadratureSpec::for_modes(6)).unwrap();
        assert!((s.d()[0] - 1.0).abs() < 1e-10);
        for i in 1..6 {
            assert!(s.d()[i].abs() < 1e-12);
        }
        assert!(s.a().iter().chain(s.b()).chain(s.c()).all(|&v| v == 0.0));
    }

    #[test]
    fn single_mode_exact_solution() {
        let g = geom();
        let data = DirichletData::top_only(SineEdge {
            mode: 1,
            amplitude: 1.0,
            len: 2.0,
        });
        let s = solve_dirichlet(&data, &g, 4, QuadratureSpec::for_modes(4)).unwrap();
        for &(x, y) in &[(0.3, 0.2), (1.0, 0.5), (1.7, 0.9), (1.0, 1.0)] {
            let want = (PI * x / 2.0).sin() * (PI * y / 2.0).sinh() / (PI / 2.0).sinh();
            assert!((evaluate_harmonic(&s, x, y).unwrap() - want).abs() < 1e-14);
        }
    }

    #[test]
    fn linear_edge_transform() {
        let e = LinearEdge {
            len: 1.0,
            end_value: 1.0,
        };
        assert!((e.sine_transform(1, 1.0).unwrap() - 0.636_619_772_367_581_4).abs() < 1e-15);
        for n in 1..=4 {
            let q = quad_transform(|t| e.value(t), 1.0, n, &[], QuadratureSpec::with_panels(4096));
            assert!((q - e.sine_transform(n, 1.0).unwrap()).abs() < 1e-10, "n={n}");
        }
    }

    #[test]
    fn zero_data() {
        let g = geom();
        let s = solve_dirichlet(&DirichletData::zero(), &g, 8, QuadratureSpec::for_modes(8)).unwrap();
        assert_eq!(evaluate_harmonic(&s, 0.0, 0.0).unwrap(), 0.0);
        assert_eq!(evaluate_harmonic(&s, 1.1, 0.4).unwrap(), 0.0);
    }

    #[test]
    fn stamp_block_without_edge_values() {
        let g = geom();
        let p = BoundaryProfile::raised_cosine(1.0, 0.4, 0.01);
        let s = stamp_block_coefficients(0.0, 0.0, &p, &g, 64).unwrap();
        assert!(s.a().iter().chain(s.b()).chain(s.c()).all(|&v| v == 0.0));
        let c = crate::stamp_problem::sine_coefficients(&p, &g, 64).unwrap();
        for (a, b) in s.d().iter().zip(&c) {
            assert!((a - b).abs() <= 1e-12);
        }
    }

    #[test]
    fn non_finite_edge_names_edge() {
        let g = geom();
        let data = DirichletData::new(ZeroEdge, FnEdge(|_| f64::NAN), ZeroEdge, ZeroEdge);
        match solve_dirichlet(&data, &g, 2, QuadratureSpec::for_modes(2)) {
            Err(Error::Quadrature { edge, mode }) => {
                assert_eq!(edge, Edge::Right);
                assert_eq!(mode, 1);
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn bottom_of_series_vanishes_without_bottom_data() {
        let g = geom();
        let data = DirichletData::new(
            LinearEdge { len: 1.0, end_value: 0.5 },
            LinearEdge { len: 1.0, end_value: -0.2 },
            ZeroEdge,
            SineEdge { mode: 3, amplitude: 1.0, len: 2.0 },
        );
        let s = solve_dirichlet(&data, &g, 32, QuadratureSpec::for_modes(32)).unwrap();
        for i in 0..=10 {
            let x = 0.2 * i as f64;
            assert!(evaluate_harmonic(&s, x, 0.0).unwrap().abs() < 1e-15);
        }
    }
}
