//! Composite Simpson quadrature for sine transforms.

/// Panel budget for composite Simpson over a full edge.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct QuadratureSpec {
    /// Total panels across the interval; rounded up to even per piece.
    pub panels: usize,
}

impl QuadratureSpec {
    /// `8 N` panels, so mode `N` is sampled at least 16 times per period.
    pub fn for_modes(n: usize) -> Self {
        QuadratureSpec {
            panels: (8 * n.max(1)).max(2),
        }
    }

    pub fn with_panels(panels: usize) -> Self {
        QuadratureSpec {
            panels: panels.max(2),
        }
    }
}

/// Composite Simpson rule on `[a, b]` with `panels` (forced even, >= 2).
pub fn simpson<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, panels: usize) -> f64 {
    let m = {
        let m = panels.max(2);
        m + (m % 2)
    };
    let step = (b - a) / m as f64;
    let mut odd = 0.0;
    let mut even = 0.0;
    for i in 1..m {
        let v = f(a + i as f64 * step);
        if i % 2 == 1 {
            odd += v;
        } else {
            even += v;
        }
    }
    step / 3.0 * (f(a) + f(b) + 4.0 * odd + 2.0 * even)
}

fn simpson_nudged<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, nudge: f64, panels: usize) -> f64 {
    let m = panels + (panels % 2);
    let step = (b - a) / m as f64;
    let mut acc = f(a + nudge) + f(b - nudge);
    for i in 1..m {
        let w = if i % 2 == 1 { 4.0 } else { 2.0 };
        acc += w * f(a + i as f64 * step);
    }
    step / 3.0 * acc
}

/// Simpson on `[a, b]` split at `breaks` (points outside `(a, b)` ignored).
/// The panel budget is shared out in proportion to piece length. Piece
/// endpoints are sampled a hair inside the piece so a jump at a break is seen
/// from the correct side.
pub fn simpson_piecewise<F: Fn(f64) -> f64>(
    f: F,
    a: f64,
    b: f64,
    breaks: &[f64],
    spec: QuadratureSpec,
) -> f64 {
    let mut knots: Vec<f64> = Vec::with_capacity(breaks.len() + 2);
    knots.push(a);
    let mut inner: Vec<f64> = breaks.iter().copied().filter(|&t| t > a && t < b).collect();
    inner.sort_by(|p, q| p.total_cmp(q));
    inner.dedup();
    knots.extend(inner);
    knots.push(b);

    let width = b - a;
    knots
        .windows(2)
        .map(|w| {
            let share = ((spec.panels as f64) * (w[1] - w[0]) / width).ceil() as usize;
            let nudge = (w[1] - w[0]) * 1e-13;
            simpson_nudged(&f, w[0], w[1], nudge, share.max(2))
        })
        .sum()
}

/// `(2 / len) * integral_0^len f(t) sin(n pi t / len) dt` by piecewise Simpson.
pub fn sine_transform<F: Fn(f64) -> f64>(
    f: F,
    len: f64,
    n: usize,
    breaks: &[f64],
    spec: QuadratureSpec,
) -> f64 {
    let k = n as f64 * std::f64::consts::PI / len;
    2.0 / len * simpson_piecewise(|t| f(t) * (k * t).sin(), 0.0, len, breaks, spec)
}
