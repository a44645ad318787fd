//! Independent checks: a five-point finite-difference Laplace solver,
//! discrete residual meters for harmonicity, equilibrium and Hooke's law,
//! and the three-path discrepancy report.

use std::fmt;

use nalgebra::DMatrix;
use nalgebra_sparse::factorization::CscCholesky;
use nalgebra_sparse::{CooMatrix, CscMatrix};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::harmonic_rect::DirichletData;
use crate::modal_calculus::{
    vlasov_operator, vlasov_operator_as_printed, Component, ModeIndex, OperatorId,
};
use crate::params::{Geometry, Material};
use crate::stamp_problem::FieldSample;
use crate::strip_solution::{
    calibrate_closed_form, closed_shear_bracket, eta_samples, fit_closed_scale,
    mode_fields_blocks, mode_fields_blocks_with, mode_fields_closed_with, mode_fields_initial,
    ModeFieldCoeffs, SeriesField, ShearForm, StripForm,
};

/// Uniform grid with `nx` by `ny` interior nodes; spacing `l/(nx+1)`,
/// `h/(ny+1)`. Node arrays include the boundary.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GridSpec {
    nx: usize,
    ny: usize,
}

impl GridSpec {
    pub fn new(nx: usize, ny: usize) -> Result<Self> {
        if nx < 3 || ny < 3 {
            return Err(Error::Domain(format!(
                "grid needs at least 3 interior points per direction, got {nx} x {ny}"
            )));
        }
        Ok(GridSpec { nx, ny })
    }

    pub fn nx(&self) -> usize {
        self.nx
    }

    pub fn ny(&self) -> usize {
        self.ny
    }

    pub fn dx(&self, geom: &Geometry) -> f64 {
        geom.length() / (self.nx + 1) as f64
    }

    pub fn dy(&self, geom: &Geometry) -> f64 {
        geom.height() / (self.ny + 1) as f64
    }

    /// `nx + 2` node abscissae from 0 to `l`.
    pub fn xs(&self, geom: &Geometry) -> Vec<f64> {
        nodes(geom.length(), self.nx + 1)
    }

    /// `ny + 2` node ordinates from 0 to `h`.
    pub fn ys(&self, geom: &Geometry) -> Vec<f64> {
        nodes(geom.height(), self.ny + 1)
    }

    /// Grid with half the spacing.
    pub fn refined(&self) -> GridSpec {
        GridSpec {
            nx: 2 * self.nx + 1,
            ny: 2 * self.ny + 1,
        }
    }
}

fn nodes(len: f64, cells: usize) -> Vec<f64> {
    (0..=cells)
        .map(|i| if i == cells { len } else { len * i as f64 / cells as f64 })
        .collect()
}

/// Summary of a residual over interior nodes.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ResidualReport {
    pub max_abs: f64,
    /// Root mean square.
    pub l2: f64,
    /// `ln(r_coarse / r_fine) / ln(d_coarse / d_fine)` on `max_abs`; set
    /// only by [`ResidualReport::with_refinement`].
    pub observed_order: Option<f64>,
    /// `(x, y)` of the largest residual.
    pub location: (f64, f64),
}

impl ResidualReport {
    fn from_values(values: impl Iterator<Item = ((f64, f64), f64)>) -> Self {
        let mut max_abs = 0.0f64;
        let mut location = (f64::NAN, f64::NAN);
        let mut sum2 = 0.0;
        let mut count = 0usize;
        for (at, r) in values {
            let a = r.abs();
            if a > max_abs || count == 0 {
                max_abs = a;
                location = at;
            }
            sum2 += r * r;
            count += 1;
        }
        ResidualReport {
            max_abs,
            l2: (sum2 / count.max(1) as f64).sqrt(),
            observed_order: None,
            location,
        }
    }

    /// This report (on the fine grid) with the order observed against
    /// `coarse`, given the two spacings.
    pub fn with_refinement(mut self, coarse: &ResidualReport, d_coarse: f64, d_fine: f64) -> Self {
        self.observed_order = Some((coarse.max_abs / self.max_abs).ln() / (d_coarse / d_fine).ln());
        self
    }
}

impl fmt::Display for ResidualReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "max {:.6e} at ({:.4}, {:.4}), rms {:.6e}",
            self.max_abs, self.location.0, self.location.1, self.l2
        )?;
        if let Some(p) = self.observed_order {
            write!(f, ", order {p:.3}")?;
        }
        Ok(())
    }
}

/// Values on every node of a grid, row-major with `y` outer.
#[derive(Debug, Clone, PartialEq)]
pub struct GridValues {
    pub xs: Vec<f64>,
    pub ys: Vec<f64>,
    pub values: Vec<f64>,
}

impl GridValues {
    pub fn at(&self, i: usize, j: usize) -> f64 {
        self.values[j * self.xs.len() + i]
    }
}

/// Algebraic residual bound for [`fd_laplace_solve`].
pub const FD_TOLERANCE: f64 = 1e-11;

/// Five-point discrete Laplace solution with the given boundary data,
/// by sparse Cholesky.
pub fn fd_laplace_solve(
    data: &DirichletData,
    geom: &Geometry,
    grid: GridSpec,
) -> Result<GridValues> {
    let (nx, ny) = (grid.nx, grid.ny);
    let xs = grid.xs(geom);
    let ys = grid.ys(geom);
    let (cx, cy) = (1.0 / grid.dx(geom).powi(2), 1.0 / grid.dy(geom).powi(2));
    let diag = 2.0 * (cx + cy);
    let idx = |i: usize, j: usize| (j - 1) * nx + (i - 1);
    let n = nx * ny;

    let mut full = vec![0.0; xs.len() * ys.len()];
    for (j, &y) in ys.iter().enumerate() {
        for (i, &x) in xs.iter().enumerate() {
            if i == 0 || j == 0 || i == nx + 1 || j == ny + 1 {
                full[j * xs.len() + i] = data.boundary_value(geom, x, y);
            }
        }
    }
    if let Some(&value) = full.iter().find(|v| !v.is_finite()) {
        return Err(Error::NonFinite {
            what: "finite-difference boundary data",
            value,
        });
    }

    let mut coo = CooMatrix::new(n, n);
    let mut rhs = DMatrix::<f64>::zeros(n, 1);
    for j in 1..=ny {
        for i in 1..=nx {
            let p = idx(i, j);
            coo.push(p, p, diag);
            for (ii, jj, c) in [(i - 1, j, cx), (i + 1, j, cx), (i, j - 1, cy), (i, j + 1, cy)] {
                if ii == 0 || jj == 0 || ii == nx + 1 || jj == ny + 1 {
                    rhs[p] += c * full[jj * xs.len() + ii];
                } else {
                    coo.push(p, idx(ii, jj), -c);
                }
            }
        }
    }
    let a = CscMatrix::from(&coo);
    let chol = CscCholesky::factor(&a).map_err(|_| Error::Solver {
        residual: f64::NAN,
        tolerance: FD_TOLERANCE,
    })?;
    let sol = chol.solve(&rhs);

    for j in 1..=ny {
        for i in 1..=nx {
            full[j * xs.len() + i] = sol[idx(i, j)];
        }
    }
    // residual of the assembled system, relative to its magnitude
    let w = xs.len();
    let mut worst = 0.0f64;
    let mut scale = 0.0f64;
    for j in 1..=ny {
        for i in 1..=nx {
            let at = |ii: usize, jj: usize| full[jj * w + ii];
            let r = diag * at(i, j)
                - cx * (at(i - 1, j) + at(i + 1, j))
                - cy * (at(i, j - 1) + at(i, j + 1));
            worst = worst.max(r.abs());
            scale = scale.max(diag * at(i, j).abs());
        }
    }
    let residual = if scale > 0.0 { worst / scale } else { worst };
    if !(residual <= FD_TOLERANCE) {
        return Err(Error::Solver {
            residual,
            tolerance: FD_TOLERANCE,
        });
    }
    Ok(GridValues {
        xs,
        ys,
        values: full,
    })
}

fn sample_scalar<F>(field: &F, xs: &[f64], ys: &[f64]) -> Vec<f64>
where
    F: Fn(f64, f64) -> f64 + Sync,
{
    ys.par_iter()
        .flat_map_iter(|&y| xs.iter().map(move |&x| field(x, y)))
        .collect()
}

/// Five-point Laplacian of `field` at the interior nodes.
pub fn laplacian_residual<F>(field: F, geom: &Geometry, grid: GridSpec) -> ResidualReport
where
    F: Fn(f64, f64) -> f64 + Sync,
{
    let xs = grid.xs(geom);
    let ys = grid.ys(geom);
    let vals = sample_scalar(&field, &xs, &ys);
    let w = xs.len();
    let (cx, cy) = (1.0 / grid.dx(geom).powi(2), 1.0 / grid.dy(geom).powi(2));
    let at = |i: usize, j: usize| vals[j * w + i];
    ResidualReport::from_values(interior(grid).map(|(i, j)| {
        let r = cx * (at(i - 1, j) - 2.0 * at(i, j) + at(i + 1, j))
            + cy * (at(i, j - 1) - 2.0 * at(i, j) + at(i, j + 1));
        ((xs[i], ys[j]), r)
    }))
}

/// Laplacian residual on `grid` and on its refinement, the latter carrying
/// the observed order.
pub fn laplacian_convergence<F>(
    field: F,
    geom: &Geometry,
    coarse: GridSpec,
    fine: GridSpec,
) -> (ResidualReport, ResidualReport)
where
    F: Fn(f64, f64) -> f64 + Sync,
{
    let rc = laplacian_residual(&field, geom, coarse);
    let rf = laplacian_residual(&field, geom, fine).with_refinement(
        &rc,
        coarse.dx(geom),
        fine.dx(geom),
    );
    (rc, rf)
}

fn interior(grid: GridSpec) -> impl Iterator<Item = (usize, usize)> {
    (1..=grid.ny).flat_map(move |j| (1..=grid.nx).map(move |i| (i, j)))
}

/// Anything that can produce displacement and stress samples on a grid.
pub trait FieldSource: Sync {
    fn geometry(&self) -> &Geometry;
    fn material(&self) -> &Material;
    /// Row-major (y outer) samples.
    fn sample_grid(&self, xs: &[f64], ys: &[f64]) -> Result<Vec<FieldSample>>;
}

impl FieldSource for SeriesField {
    fn geometry(&self) -> &Geometry {
        SeriesField::geometry(self)
    }

    fn material(&self) -> &Material {
        SeriesField::material(self)
    }

    fn sample_grid(&self, xs: &[f64], ys: &[f64]) -> Result<Vec<FieldSample>> {
        self.evaluate_grid(xs, ys)
    }
}

/// A field with its stresses scaled, for negative controls.
pub struct Corrupted<'a, S: FieldSource> {
    pub inner: &'a S,
    pub sigma_x_scale: f64,
    pub sigma_y_scale: f64,
    pub tau_xy_scale: f64,
}

impl<'a, S: FieldSource> Corrupted<'a, S> {
    /// Scales only `sigma_x`.
    pub fn sigma_x(inner: &'a S, scale: f64) -> Self {
        Corrupted {
            inner,
            sigma_x_scale: scale,
            sigma_y_scale: 1.0,
            tau_xy_scale: 1.0,
        }
    }
}

impl<S: FieldSource> FieldSource for Corrupted<'_, S> {
    fn geometry(&self) -> &Geometry {
        self.inner.geometry()
    }

    fn material(&self) -> &Material {
        self.inner.material()
    }

    fn sample_grid(&self, xs: &[f64], ys: &[f64]) -> Result<Vec<FieldSample>> {
        let mut s = self.inner.sample_grid(xs, ys)?;
        for p in &mut s {
            p.sigma_x *= self.sigma_x_scale;
            p.sigma_y *= self.sigma_y_scale;
            p.tau_xy *= self.tau_xy_scale;
        }
        Ok(s)
    }
}

struct Sampled {
    xs: Vec<f64>,
    ys: Vec<f64>,
    samples: Vec<FieldSample>,
    dx: f64,
    dy: f64,
}

impl Sampled {
    fn new<S: FieldSource + ?Sized>(src: &S, grid: GridSpec) -> Result<Self> {
        let g = *src.geometry();
        let xs = grid.xs(&g);
        let ys = grid.ys(&g);
        let samples = src.sample_grid(&xs, &ys)?;
        Ok(Sampled {
            dx: grid.dx(&g),
            dy: grid.dy(&g),
            xs,
            ys,
            samples,
        })
    }

    fn at(&self, i: usize, j: usize) -> &FieldSample {
        &self.samples[j * self.xs.len() + i]
    }

    fn ddx(&self, i: usize, j: usize, f: fn(&FieldSample) -> f64) -> f64 {
        (f(self.at(i + 1, j)) - f(self.at(i - 1, j))) / (2.0 * self.dx)
    }

    fn ddy(&self, i: usize, j: usize, f: fn(&FieldSample) -> f64) -> f64 {
        (f(self.at(i, j + 1)) - f(self.at(i, j - 1))) / (2.0 * self.dy)
    }

    fn report(&self, grid: GridSpec, r: impl Fn(usize, usize) -> f64) -> ResidualReport {
        ResidualReport::from_values(interior(grid).map(|(i, j)| ((self.xs[i], self.ys[j]), r(i, j))))
    }
}

/// Central-difference residuals of `d sigma_x/dx + d tau_xy/dy` and
/// `d tau_xy/dx + d sigma_y/dy` at interior nodes.
pub fn equilibrium_residual<S: FieldSource + ?Sized>(
    src: &S,
    grid: GridSpec,
) -> Result<(ResidualReport, ResidualReport)> {
    let s = Sampled::new(src, grid)?;
    let first = s.report(grid, |i, j| s.ddx(i, j, |p| p.sigma_x) + s.ddy(i, j, |p| p.tau_xy));
    let second = s.report(grid, |i, j| s.ddx(i, j, |p| p.tau_xy) + s.ddy(i, j, |p| p.sigma_y));
    Ok((first, second))
}

/// Residuals of the plane-strain Hooke relations for `sigma_x`, `sigma_y`
/// and `tau_xy`, with strains from central differences of `u`, `v`.
pub fn constitutive_residual<S: FieldSource + ?Sized>(
    src: &S,
    grid: GridSpec,
) -> Result<[ResidualReport; 3]> {
    let mat = *src.material();
    constitutive_residual_with(src, grid, &mat)
}

/// As [`constitutive_residual`], checking against `mat` instead of the
/// field's own material.
pub fn constitutive_residual_with<S: FieldSource + ?Sized>(
    src: &S,
    grid: GridSpec,
    mat: &Material,
) -> Result<[ResidualReport; 3]> {
    let s = Sampled::new(src, grid)?;
    let lam = mat.lame_lambda();
    let g = mat.shear_modulus();
    let strains = |i, j| {
        let ex = s.ddx(i, j, |p| p.u);
        let ey = s.ddy(i, j, |p| p.v);
        let gxy = s.ddy(i, j, |p| p.u) + s.ddx(i, j, |p| p.v);
        (ex, ey, gxy)
    };
    let rx = s.report(grid, |i, j| {
        let (ex, ey, _) = strains(i, j);
        s.at(i, j).sigma_x - (lam * (ex + ey) + 2.0 * g * ex)
    });
    let ry = s.report(grid, |i, j| {
        let (ex, ey, _) = strains(i, j);
        s.at(i, j).sigma_y - (lam * (ex + ey) + 2.0 * g * ey)
    });
    let rxy = s.report(grid, |i, j| s.at(i, j).tau_xy - g * strains(i, j).2);
    Ok([rx, ry, rxy])
}

/// Largest stress magnitude over the grid nodes.
pub fn stress_scale<S: FieldSource + ?Sized>(src: &S, grid: GridSpec) -> Result<f64> {
    let s = Sampled::new(src, grid)?;
    Ok(s.samples.iter().fold(0.0f64, |m, p| {
        m.max(p.sigma_x.abs()).max(p.sigma_y.abs()).max(p.tau_xy.abs())
    }))
}

/// Equilibrium and constitutive residuals on two grids, with observed orders
/// on the fine-grid reports: `[eq_x, eq_y, hooke_x, hooke_y, hooke_xy]`.
pub fn physics_convergence<S: FieldSource + ?Sized>(
    src: &S,
    coarse: GridSpec,
    fine: GridSpec,
) -> Result<PhysicsConvergence> {
    let g = *src.geometry();
    let (dc, df) = (coarse.dx(&g), fine.dx(&g));
    let collect = |grid| -> Result<[ResidualReport; 5]> {
        let (e1, e2) = equilibrium_residual(src, grid)?;
        let [c1, c2, c3] = constitutive_residual(src, grid)?;
        Ok([e1, e2, c1, c2, c3])
    };
    let c = collect(coarse)?;
    let f = collect(fine)?;
    let fine_reports = std::array::from_fn(|i| f[i].with_refinement(&c[i], dc, df));
    Ok(PhysicsConvergence {
        coarse: c,
        fine: fine_reports,
    })
}

/// Result of [`physics_convergence`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhysicsConvergence {
    pub coarse: [ResidualReport; 5],
    pub fine: [ResidualReport; 5],
}

impl PhysicsConvergence {
    pub const NAMES: [&'static str; 5] = [
        "equilibrium_x",
        "equilibrium_y",
        "hooke_sigma_x",
        "hooke_sigma_y",
        "hooke_tau_xy",
    ];

    pub fn min_order(&self) -> f64 {
        self.fine
            .iter()
            .filter_map(|r| r.observed_order)
            .fold(f64::INFINITY, f64::min)
    }
}

/// Largest relative disagreement of all five profiles of `a` and `b` over
/// the standard `eta` samples, each field scaled by `b`'s max over `eta`.
pub fn profile_difference(a: &ModeFieldCoeffs, b: &ModeFieldCoeffs) -> f64 {
    let pa: Vec<[f64; 5]> = eta_samples().map(|e| a.eval(e).to_array()).collect();
    let pb: Vec<[f64; 5]> = eta_samples().map(|e| b.eval(e).to_array()).collect();
    (0..5)
        .map(|f| {
            let scale = pb.iter().fold(0.0f64, |m, v| m.max(v[f].abs()));
            let diff = pa
                .iter()
                .zip(&pb)
                .fold(0.0f64, |m, (x, y)| m.max((x[f] - y[f]).abs()));
            if scale > 0.0 {
                diff / scale
            } else {
                diff
            }
        })
        .fold(0.0, f64::max)
}

/// Derivative-free plane-strain check on one mode:
/// `sigma_x - nu/(1-nu) sigma_y - 2G/(1-nu) eps_x`, where
/// `eps_x = -k U / G` on the sine amplitude. Relative to the stress scale.
pub fn mode_hooke_defect(fields: &ModeFieldCoeffs, mat: &Material) -> f64 {
    let nu = mat.poisson();
    let q = 1.0 - nu;
    let k = fields.mode().k();
    let mut worst = 0.0f64;
    let mut scale = 0.0f64;
    for eta in eta_samples() {
        let p = fields.eval(eta);
        let r = p.sigma_x - nu / q * p.sigma_y + 2.0 * k * p.u / q;
        worst = worst.max(r.abs());
        scale = scale.max(p.sigma_x.abs()).max(p.sigma_y.abs());
    }
    worst / scale
}

/// One mode's entry in the [`DiscrepancyReport`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModeDiscrepancy {
    pub n: usize,
    pub beta: f64,
    pub a_vs_b: f64,
    pub c_vs_b: f64,
    /// Fitted `delta_n / c_n` for this mode.
    pub rho: f64,
    /// Printed shear bracket at `eta = 1`, unnormalized.
    pub printed_shear_top: f64,
    /// Its expected value `sh(beta)(ch(beta) - sh(beta)) = sh(beta) e^{-beta}`.
    pub printed_shear_expected: f64,
    pub corrected_shear_top: f64,
    /// Hooke defect of the typeset strip coefficients.
    pub printed_strip_hooke: f64,
    /// Hooke defect of path B.
    pub strip_hooke: f64,
}

/// Typeset operator-table entry that differs from the consistent one.
#[derive(Debug, Clone, PartialEq)]
pub struct TableDeviation {
    pub operator: String,
    /// Max relative difference over `eta` for mode 1.
    pub deviation: f64,
}

/// Path agreement, calibration and typo diagnostics over a range of modes.
#[derive(Debug, Clone, PartialEq)]
pub struct DiscrepancyReport {
    pub rho: f64,
    pub shear_modulus: f64,
    pub calibration_residual: f64,
    pub modes: Vec<ModeDiscrepancy>,
    pub table: Vec<TableDeviation>,
}

/// Path A vs B bound beyond which the report refuses to proceed.
pub const PATH_DIVERGENCE_LIMIT: f64 = 1e-8;

/// Runs paths A, B and C on modes `1..=n_modes`.
pub fn discrepancy_report(
    geom: &Geometry,
    mat: &Material,
    n_modes: usize,
) -> Result<DiscrepancyReport> {
    let cal = calibrate_closed_form(geom, mat)?;
    let modes = (1..=n_modes.max(1))
        .into_par_iter()
        .map(|n| -> Result<ModeDiscrepancy> {
            let mode = ModeIndex::new(n, geom)?;
            let b = mode_fields_blocks(&mode, geom, mat);
            let a = mode_fields_initial(&mode, geom, mat).map_err(|e| e.in_mode(n))?;
            let c = mode_fields_closed_with(&mode, geom, mat, cal.rho, ShearForm::Corrected);
            let a_vs_b = profile_difference(&a, &b);
            if !(a_vs_b <= PATH_DIVERGENCE_LIMIT) {
                return Err(Error::PathDivergence { n, diff: a_vs_b });
            }
            let beta = mode.beta();
            let printed = mode_fields_blocks_with(&mode, geom, mat, StripForm::AsPrinted);
            Ok(ModeDiscrepancy {
                n,
                beta,
                a_vs_b,
                c_vs_b: profile_difference(&c, &b),
                rho: fit_closed_scale(&mode, geom, mat).rho,
                printed_shear_top: closed_shear_bracket(beta, 1.0, ShearForm::AsPrinted),
                // ch - sh = e^{-beta}
                printed_shear_expected: beta.sinh() * (-beta).exp(),
                corrected_shear_top: closed_shear_bracket(beta, 1.0, ShearForm::Corrected),
                printed_strip_hooke: mode_hooke_defect(&printed, mat),
                strip_hooke: mode_hooke_defect(&b, mat),
            })
        })
        .collect::<Result<Vec<_>>>()?;

    let mode1 = ModeIndex::new(1, geom)?;
    let h = geom.height();
    let table = [
        OperatorId::L(Component::U, Component::X),
        OperatorId::L(Component::Y, Component::V),
    ]
    .iter()
    .map(|&op| -> Result<TableDeviation> {
        let mut diff = 0.0f64;
        let mut scale = 0.0f64;
        for eta in eta_samples() {
            let good = vlasov_operator(op, &mode1, eta * h, geom, mat)?.multiplier;
            let typed = vlasov_operator_as_printed(op, &mode1, eta * h, geom, mat)?.multiplier;
            diff = diff.max((good - typed).abs());
            scale = scale.max(good.abs());
        }
        Ok(TableDeviation {
            operator: op.label(),
            deviation: diff / scale,
        })
    })
    .collect::<Result<Vec<_>>>()?;

    Ok(DiscrepancyReport {
        rho: cal.rho,
        shear_modulus: mat.shear_modulus(),
        calibration_residual: cal.residual,
        modes,
        table,
    })
}

impl DiscrepancyReport {
    pub fn max_a_vs_b(&self) -> f64 {
        self.modes.iter().map(|m| m.a_vs_b).fold(0.0, f64::max)
    }

    pub fn max_c_vs_b(&self) -> f64 {
        self.modes.iter().map(|m| m.c_vs_b).fold(0.0, f64::max)
    }

    /// Max relative spread of the per-mode fitted scale around `rho`.
    pub fn rho_spread(&self) -> f64 {
        self.modes
            .iter()
            .map(|m| (m.rho / self.rho - 1.0).abs())
            .fold(0.0, f64::max)
    }

    /// Worst relative miss of the printed shear deviation against
    /// `sh(beta)(ch(beta) - sh(beta))`.
    pub fn printed_shear_mismatch(&self) -> f64 {
        self.modes
            .iter()
            .map(|m| (m.printed_shear_top - m.printed_shear_expected).abs() / m.printed_shear_expected)
            .fold(0.0, f64::max)
    }

    pub fn max_corrected_shear_top(&self) -> f64 {
        self.modes.iter().map(|m| m.corrected_shear_top.abs()).fold(0.0, f64::max)
    }

    /// `key=value` lines.
    pub fn summary_lines(&self) -> Vec<(String, String)> {
        let e = |v: f64| format!("{v:.16e}");
        let printed_hooke = self.modes.iter().map(|m| m.printed_strip_hooke).fold(0.0, f64::max);
        let hooke = self.modes.iter().map(|m| m.strip_hooke).fold(0.0, f64::max);
        let mut out = vec![
            ("discrepancy_modes".to_string(), self.modes.len().to_string()),
            ("delta_over_c".into(), e(self.rho)),
            ("delta_over_c_per_shear_modulus".into(), e(self.rho / self.shear_modulus)),
            ("delta_calibration_residual".into(), e(self.calibration_residual)),
            ("delta_over_c_spread".into(), e(self.rho_spread())),
            ("path_a_vs_b_max".into(), e(self.max_a_vs_b())),
            ("path_c_vs_b_max".into(), e(self.max_c_vs_b())),
            ("printed_shear_top_mismatch".into(), e(self.printed_shear_mismatch())),
            ("corrected_shear_top_max".into(), e(self.max_corrected_shear_top())),
            ("printed_strip_hooke_defect".into(), e(printed_hooke)),
            ("strip_hooke_defect".into(), e(hooke)),
        ];
        for t in &self.table {
            out.push((format!("printed_table_{}_deviation", t.operator), e(t.deviation)));
        }
        out
    }
}

impl fmt::Display for DiscrepancyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Path discrepancy report ({} modes)", self.modes.len())?;
        writeln!(
            f,
            "  closed-form amplitude: delta_n = {:.16e} c_n ({:.16e} G), fit residual {:.3e}, spread over modes {:.3e}",
            self.rho,
            self.rho / self.shear_modulus,
            self.calibration_residual,
            self.rho_spread()
        )?;
        writeln!(f, "  max |A - B| (relative): {:.3e}", self.max_a_vs_b())?;
        writeln!(f, "  max |C - B| (relative): {:.3e}", self.max_c_vs_b())?;
        writeln!(
            f,
            "  typeset shear X(eta = 1): matches sh(b)(ch(b) - sh(b)) to {:.3e}; corrected form max {:.3e}",
            self.printed_shear_mismatch(),
            self.max_corrected_shear_top()
        )?;
        for t in &self.table {
            writeln!(f, "  typeset {} deviates by {:.3e} (relative, mode 1)", t.operator, t.deviation)?;
        }
        writeln!(f, "  {:>4} {:>12} {:>11} {:>11} {:>13} {:>13}", "n", "beta", "A-B", "C-B", "hooke", "typeset hooke")?;
        for m in &self.modes {
            writeln!(
                f,
                "  {:>4} {:>12.6} {:>11.3e} {:>11.3e} {:>13.3e} {:>13.3e}",
                m.n, m.beta, m.a_vs_b, m.c_vs_b, m.strip_hooke, m.printed_strip_hooke
            )?;
        }
        Ok(())
    }
}
