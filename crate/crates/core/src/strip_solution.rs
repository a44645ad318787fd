//! Per-mode strip fields and their assembly into truncated series.
//!
//! The strip `0 <= y <= h` carries `V(x, 0) = 0`, `X(x, 0) = 0`,
//! `V(x, h) = V_h(x)` and `X(x, h) = 0`. For a unit sine coefficient of the
//! physical stamp displacement `v_h` every mode has five profiles in
//! `eta = y / h`: `U = G u` and `X = tau_xy` with cosine parity, `V = G v`,
//! `Y = sigma_y` and `sigma_x` with sine parity.
//!
//! Three routes produce the profiles:
//!
//! * path A solves the 4x4 initial-function system per mode and applies the
//!   operator table;
//! * path B combines the harmonic building blocks (normative);
//! * path C evaluates the closed modal form, with the scale of its amplitude
//!   `delta_n` fitted once against path B.

use nalgebra::{Matrix4, Vector4};

use crate::error::{Error, Result};
use crate::modal_calculus::{
    block_multiplier, ch_sh, coth_minus, sh_sh, table_multiplier, Block, Component, ModeIndex,
    OperatorId, Parity, TableForm,
};
use crate::params::{Geometry, Material};
use crate::stamp_problem::FieldSample;

/// Which route computes the per-mode profiles.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SolutionPath {
    /// Initial-function system solved with the operator table.
    A,
    /// Building-block combination.
    B,
    /// Closed modal form.
    C,
}

impl SolutionPath {
    pub const ALL: [SolutionPath; 3] = [SolutionPath::A, SolutionPath::B, SolutionPath::C];
}

impl std::fmt::Display for SolutionPath {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            SolutionPath::A => "A",
            SolutionPath::B => "B",
            SolutionPath::C => "C",
        };
        f.write_str(s)
    }
}

/// Coefficient set for the building-block route.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StripForm {
    /// Plane-strain coefficients: prefactors `1/(2(1-nu))` and `G/(1-nu)`,
    /// `2(1-nu)` on the `B10` term of `V`, `1-2nu` on the `B11` term of `U`,
    /// and a leading minus on `U`.
    PlaneStrain,
    /// The typeset coefficients `(1+nu)/2`, `2/(1+nu)`, `(1-nu)/(1+nu)` and
    /// `E/2`. They meet the four boundary conditions but not Hooke's law in
    /// plane strain; retained for the discrepancy report.
    AsPrinted,
}

/// Shear profile of the closed form.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ShearForm {
    /// `ch(b) sh(b eta) - eta sh(b) ch(b eta)`, vanishing at `eta = 1`.
    Corrected,
    /// `ch(b) sh(b eta) - eta sh(b) sh(b eta)` as typeset.
    AsPrinted,
}

/// One mode's five profiles at a given `eta`. `u` and `v` are the scaled
/// displacements `G u`, `G v`.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct ProfileValues {
    pub u: f64,
    pub v: f64,
    pub sigma_x: f64,
    pub sigma_y: f64,
    pub tau_xy: f64,
}

impl ProfileValues {
    /// Order used by [`ProfileValues::to_array`].
    pub const NAMES: [&'static str; 5] = ["U", "V", "sigma_x", "sigma_y", "tau_xy"];
    pub const PARITY: [Parity; 5] = [
        Parity::Cosine,
        Parity::Sine,
        Parity::Sine,
        Parity::Sine,
        Parity::Cosine,
    ];

    pub fn to_array(self) -> [f64; 5] {
        [self.u, self.v, self.sigma_x, self.sigma_y, self.tau_xy]
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
enum Repr {
    Blocks(StripForm),
    /// Initial-function amplitudes `[U0, V0, Y0, X0]` times `e^{k h}`,
    /// as leading and trailing parts.
    Initial([f64; 4], [f64; 4]),
    Closed { rho: f64, shear: ShearForm },
}

/// Evaluable per-mode profiles, normalized to a unit sine coefficient of
/// the physical stamp displacement.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModeFieldCoeffs {
    mode: ModeIndex,
    geom: Geometry,
    mat: Material,
    repr: Repr,
}

impl ModeFieldCoeffs {
    pub fn mode(&self) -> &ModeIndex {
        &self.mode
    }

    pub fn path(&self) -> SolutionPath {
        match self.repr {
            Repr::Initial(..) => SolutionPath::A,
            Repr::Blocks(_) => SolutionPath::B,
            Repr::Closed { .. } => SolutionPath::C,
        }
    }

    /// Scaled initial-function amplitudes of path A.
    pub fn initial_amplitudes(&self) -> Option<[f64; 4]> {
        match self.repr {
            Repr::Initial(a, _) => Some(a),
            _ => None,
        }
    }

    /// Profiles at `eta = y / h`, `0 <= eta <= 1`.
    pub fn eval(&self, eta: f64) -> ProfileValues {
        match self.repr {
            Repr::Blocks(form) => self.eval_blocks(form, eta),
            Repr::Initial(head, tail) => self.eval_initial(&head, &tail, eta),
            Repr::Closed { rho, shear } => self.eval_closed(rho, shear, eta),
        }
    }

    fn eval_blocks(&self, form: StripForm, eta: f64) -> ProfileValues {
        let h = self.geom.height();
        let y = eta * h;
        let k = self.mode.k();
        let nu = self.mat.poisson();
        let g = self.mat.shear_modulus();
        let q = 1.0 - nu;

        let (pu, cu, pv, cv, ps) = match form {
            StripForm::PlaneStrain => (-g / (2.0 * q), -(1.0 - 2.0 * nu), g / (2.0 * q), 2.0 * q, g / q),
            StripForm::AsPrinted => (
                g * (1.0 + nu) / 2.0,
                -(1.0 - nu) / (1.0 + nu),
                g * (1.0 + nu) / 2.0,
                2.0 / (1.0 + nu),
                self.mat.young() / 2.0,
            ),
        };

        let b = |blk: Block| block_multiplier(blk, k, y, h).multiplier;
        // composing with B13 at y = h: a cos(h a)/sin(h a) -> k coth(k h), even
        let b13_top = block_multiplier(Block::B13, k, h, h).multiplier;
        let (b10, b11, b12, b13) = (b(Block::B10), b(Block::B11), b(Block::B12), b(Block::B13));
        let (b14, b16, b17) = (b(Block::B14), b(Block::B16), b(Block::B17));

        ProfileValues {
            u: pu * (y * b12 + cu * b11 + h * b16),
            v: pv * (cv * b10 - y * b13 + h * b10 * b13_top),
            sigma_y: ps * (b13 + y * b14 + h * b17),
            // B15 = k B13 per mode; grouped so the two terms cancel exactly at y = h
            tau_xy: ps * (h * (b12 * b13_top) - y * (k * b13)),
            sigma_x: ps * (b13 - y * b14 - h * b17),
        }
    }

    fn eval_initial(&self, head: &[f64; 4], tail: &[f64; 4], eta: f64) -> ProfileValues {
        let y = eta * self.geom.height();
        let k = self.mode.k();
        let shift = self.mode.beta();
        let nu = self.mat.poisson();
        let row = |op: fn(Component) -> OperatorId, out: Parity| -> f64 {
            compensated_dot(Component::ALL.iter().enumerate().flat_map(|(j, &c)| {
                let mv = table_multiplier(op(c), k, y, nu, shift, TableForm::Consistent)
                    .on_input(c.parity());
                debug_assert_eq!(mv.parity, out);
                [(mv.multiplier, head[j]), (mv.multiplier, tail[j])]
            }))
        };
        ProfileValues {
            u: row(|c| OperatorId::L(Component::U, c), Parity::Cosine),
            v: row(|c| OperatorId::L(Component::V, c), Parity::Sine),
            sigma_y: row(|c| OperatorId::L(Component::Y, c), Parity::Sine),
            tau_xy: row(|c| OperatorId::L(Component::X, c), Parity::Cosine),
            sigma_x: row(OperatorId::A, Parity::Sine),
        }
    }

    fn eval_closed(&self, rho: f64, shear: ShearForm, eta: f64) -> ProfileValues {
        let h = self.geom.height();
        let b = self.mode.beta();
        let nu = self.mat.poisson();
        let q = 1.0 - nu;
        // sh(b eta)/sh(b), ch(b eta)/sh(b), coth(b): the sh^2(b) of Delta_n
        // is divided out of every bracket
        let rs = sh_sh(b * eta, b);
        let rc = ch_sh(b * eta, b);
        let coth = ch_sh(b, b);
        let disp = rho / (2.0 * q);
        let stress = rho * b / (h * q);
        let shear_bracket = match shear {
            ShearForm::Corrected => coth * rs - eta * rc,
            ShearForm::AsPrinted => rs * coth_minus(eta, b),
        };
        ProfileValues {
            u: -disp * ((1.0 - 2.0 * nu - b * coth) * rc + b * eta * rs),
            v: disp * ((2.0 * q + b * coth) * rs - b * eta * rc),
            sigma_y: stress * ((1.0 + b * coth) * rc - b * eta * rs),
            tau_xy: stress * b * shear_bracket,
            sigma_x: stress * ((1.0 - b * coth) * rc + b * eta * rs),
        }
    }
}

/// Path B with the plane-strain coefficients.
pub fn mode_fields_blocks(mode: &ModeIndex, geom: &Geometry, mat: &Material) -> ModeFieldCoeffs {
    mode_fields_blocks_with(mode, geom, mat, StripForm::PlaneStrain)
}

pub fn mode_fields_blocks_with(
    mode: &ModeIndex,
    geom: &Geometry,
    mat: &Material,
    form: StripForm,
) -> ModeFieldCoeffs {
    ModeFieldCoeffs {
        mode: *mode,
        geom: *geom,
        mat: *mat,
        repr: Repr::Blocks(form),
    }
}

/// Condition-number ceiling for the per-mode initial-function system.
pub const MAX_CONDITION: f64 = 1e12;

/// The solved per-mode initial-function system (path A).
#[derive(Debug, Clone)]
pub struct InitialSystem {
    /// Rows `V(0), X(0), V(h), X(h)`; columns `U0, V0, Y0, X0`. The last two
    /// rows and all unknowns carry the factor `e^{-k h}` / `e^{k h}`.
    pub matrix: Matrix4<f64>,
    pub rhs: Vector4<f64>,
    /// Scaled amplitudes `[U0, V0, Y0, X0] e^{k h}`.
    pub solution: Vector4<f64>,
    /// Low-order parts left by iterative refinement; the amplitudes are
    /// `solution + solution_tail`.
    pub solution_tail: Vector4<f64>,
    /// 2-norm condition number after row and column equilibration.
    pub condition: f64,
    /// `max |M z - b| / max |b|`.
    pub residual: f64,
}

/// Builds and solves the boundary system for one mode.
pub fn initial_function_system(
    mode: &ModeIndex,
    geom: &Geometry,
    mat: &Material,
) -> Result<InitialSystem> {
    let k = mode.k();
    let h = geom.height();
    let nu = mat.poisson();
    let shift = mode.beta();

    let rows = [
        (Component::V, 0.0, 0.0),
        (Component::X, 0.0, 0.0),
        (Component::V, h, shift),
        (Component::X, h, shift),
    ];
    let mut m = Matrix4::<f64>::zeros();
    for (i, &(field, y, s)) in rows.iter().enumerate() {
        for (j, &init) in Component::ALL.iter().enumerate() {
            let mv = table_multiplier(OperatorId::L(field, init), k, y, nu, s, TableForm::Consistent)
                .on_input(init.parity());
            debug_assert_eq!(mv.parity, field.parity());
            m[(i, j)] = mv.multiplier;
        }
    }
    // V(x, h) = G v_h per unit physical coefficient
    let rhs = Vector4::new(0.0, 0.0, mat.shear_modulus(), 0.0);

    let degenerate = |reason: String| Error::ModeDegeneracy {
        n: mode.n(),
        beta: mode.beta(),
        reason,
    };

    let mut scaled = m;
    let mut row_scale = [1.0; 4];
    for (i, rs) in row_scale.iter_mut().enumerate() {
        let mx = scaled.row(i).amax();
        if !(mx > 0.0) || !mx.is_finite() {
            return Err(degenerate(format!("row {i} is zero or non-finite")));
        }
        *rs = 1.0 / mx;
        scaled.row_mut(i).scale_mut(*rs);
    }
    let mut col_scale = [1.0; 4];
    for (j, cs) in col_scale.iter_mut().enumerate() {
        let mx = scaled.column(j).amax();
        if !(mx > 0.0) {
            return Err(degenerate(format!("column {j} is zero")));
        }
        *cs = 1.0 / mx;
        scaled.column_mut(j).scale_mut(*cs);
    }

    let sv = scaled.singular_values();
    let condition = sv.max() / sv.min();
    if !(condition <= MAX_CONDITION) {
        return Err(degenerate(format!("condition number {condition:e} exceeds {MAX_CONDITION:e}")));
    }

    let lu = scaled.lu();
    let correction = |r: &Vector4<f64>| {
        let b = Vector4::from_fn(|i, _| r[i] * row_scale[i]);
        lu.solve(&b)
            .map(|z| Vector4::from_fn(|j, _| z[j] * col_scale[j]))
            .ok_or_else(|| degenerate("LU factorization is singular".into()))
    };
    // The amplitudes reach k h times the profile scale and cancel in the
    // shear row, so they are refined and kept as unevaluated pairs.
    let mut solution = correction(&rhs)?;
    let mut solution_tail = Vector4::zeros();
    let residual_of = |hi: &Vector4<f64>, lo: &Vector4<f64>| {
        Vector4::from_fn(|i, _| {
            let terms = (0..4)
                .flat_map(|j| [(m[(i, j)], -hi[j]), (m[(i, j)], -lo[j])])
                .chain([(rhs[i], 1.0)]);
            compensated_dot(terms)
        })
    };
    for _ in 0..REFINEMENT_STEPS {
        let d = correction(&residual_of(&solution, &solution_tail))?;
        for j in 0..4 {
            let (hi, lo) = two_sum(solution[j], solution_tail[j] + d[j]);
            solution[j] = hi;
            solution_tail[j] = lo;
        }
    }
    let residual = residual_of(&solution, &solution_tail).amax() / rhs.amax();
    if !(residual <= 1e-10) {
        return Err(degenerate(format!("solve residual {residual:e}")));
    }
    Ok(InitialSystem {
        matrix: m,
        rhs,
        solution,
        solution_tail,
        condition,
        residual,
    })
}

const REFINEMENT_STEPS: usize = 2;

fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    (s, (a - (s - bb)) + (b - bb))
}

/// Sum of products with error-free transformations, accurate to about
/// twice the working precision.
fn compensated_dot(terms: impl IntoIterator<Item = (f64, f64)>) -> f64 {
    let (mut sum, mut err) = (0.0, 0.0);
    for (x, y) in terms {
        let p = x * y;
        let pe = x.mul_add(y, -p);
        let (s, se) = two_sum(sum, p);
        sum = s;
        err += se + pe;
    }
    sum + err
}

/// Path A profiles.
pub fn mode_fields_initial(
    mode: &ModeIndex,
    geom: &Geometry,
    mat: &Material,
) -> Result<ModeFieldCoeffs> {
    let sys = initial_function_system(mode, geom, mat)?;
    let (s, t) = (sys.solution, sys.solution_tail);
    Ok(ModeFieldCoeffs {
        mode: *mode,
        geom: *geom,
        mat: *mat,
        repr: Repr::Initial([s[0], s[1], s[2], s[3]], [t[0], t[1], t[2], t[3]]),
    })
}

/// Fitted scale between the closed-form amplitude and the stamp coefficient:
/// `delta_n = rho c_n`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Calibration {
    pub rho: f64,
    /// `max |V_B - rho V_C| / max |V_B|` over the fit samples.
    pub residual: f64,
}

/// Sample count in `eta` for calibration and path comparison.
pub const ETA_SAMPLES: usize = 11;

pub fn eta_samples() -> impl Iterator<Item = f64> {
    (0..ETA_SAMPLES).map(|i| i as f64 / (ETA_SAMPLES - 1) as f64)
}

/// Least-squares fit of path C's `V` profile (unit amplitude) to path B's.
pub fn fit_closed_scale(mode: &ModeIndex, geom: &Geometry, mat: &Material) -> Calibration {
    let b = mode_fields_blocks(mode, geom, mat);
    let c = mode_fields_closed_with(mode, geom, mat, 1.0, ShearForm::Corrected);
    let pairs: Vec<(f64, f64)> = eta_samples().map(|e| (b.eval(e).v, c.eval(e).v)).collect();
    let num: f64 = pairs.iter().map(|(vb, vc)| vb * vc).sum();
    let den: f64 = pairs.iter().map(|(_, vc)| vc * vc).sum();
    let rho = num / den;
    let scale = pairs.iter().fold(0.0f64, |m, (vb, _)| m.max(vb.abs()));
    let residual = pairs
        .iter()
        .fold(0.0f64, |m, (vb, vc)| m.max((vb - rho * vc).abs()))
        / scale;
    Calibration { rho, residual }
}

/// Calibrates `rho` on mode 1; fails if the fit residual exceeds `1e-10`.
pub fn calibrate_closed_form(geom: &Geometry, mat: &Material) -> Result<Calibration> {
    let mode = ModeIndex::new(1, geom)?;
    let cal = fit_closed_scale(&mode, geom, mat);
    if !(cal.residual <= 1e-10) {
        return Err(Error::Calibration(cal.residual));
    }
    Ok(cal)
}

/// Path C with a given amplitude scale and shear variant.
pub fn mode_fields_closed_with(
    mode: &ModeIndex,
    geom: &Geometry,
    mat: &Material,
    rho: f64,
    shear: ShearForm,
) -> ModeFieldCoeffs {
    ModeFieldCoeffs {
        mode: *mode,
        geom: *geom,
        mat: *mat,
        repr: Repr::Closed { rho, shear },
    }
}

/// Path C: calibrated amplitude, corrected shear.
pub fn mode_fields_closed(
    mode: &ModeIndex,
    geom: &Geometry,
    mat: &Material,
) -> Result<ModeFieldCoeffs> {
    let cal = calibrate_closed_form(geom, mat)?;
    Ok(mode_fields_closed_with(mode, geom, mat, cal.rho, ShearForm::Corrected))
}

/// `Delta_n / sh^2(beta_n) = 1 - nu`; the full value for moderate beta.
pub fn closed_form_delta(mode: &ModeIndex, mat: &Material) -> f64 {
    (1.0 - mat.poisson()) * mode.beta().sinh().powi(2)
}

/// Shear bracket of the closed form at `eta`, without the `sh^2(beta)`
/// normalization. The printed variant at `eta = 1` gives
/// `sh(beta)(ch(beta) - sh(beta))`; the corrected one gives 0.
pub fn closed_shear_bracket(beta: f64, eta: f64, shear: ShearForm) -> f64 {
    match shear {
        ShearForm::Corrected => {
            let normalized = ch_sh(beta, beta) * sh_sh(beta * eta, beta) - eta * ch_sh(beta * eta, beta);
            if normalized == 0.0 {
                0.0
            } else {
                normalized * beta.sinh().powi(2)
            }
        }
        ShearForm::AsPrinted => {
            // sh(b eta) (ch(b) - eta sh(b)), with ch - eta sh split into exponentials
            let grow = if eta < 1.0 { (1.0 - eta) * beta.exp() } else { 0.0 };
            (beta * eta).sinh() * 0.5 * (grow + (1.0 + eta) * (-beta).exp())
        }
    }
}

/// One mode of an assembled series.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeriesMode {
    pub mode: ModeIndex,
    /// Sine coefficient `c_n` of the physical stamp displacement.
    pub coefficient: f64,
    pub fields: ModeFieldCoeffs,
}

/// Truncated modal solution, evaluable anywhere on the plate.
#[derive(Debug, Clone)]
pub struct SeriesField {
    modes: Vec<SeriesMode>,
    material: Material,
    geometry: Geometry,
    path: SolutionPath,
}

/// Per-mode profiles for `path`; path C uses `cal`.
pub fn mode_fields(
    path: SolutionPath,
    mode: &ModeIndex,
    geom: &Geometry,
    mat: &Material,
    cal: &Calibration,
) -> Result<ModeFieldCoeffs> {
    Ok(match path {
        SolutionPath::A => mode_fields_initial(mode, geom, mat)?,
        SolutionPath::B => mode_fields_blocks(mode, geom, mat),
        SolutionPath::C => mode_fields_closed_with(mode, geom, mat, cal.rho, ShearForm::Corrected),
    })
}

/// Pairs `coeffs[n - 1]` with mode `n`'s profiles from `path`.
pub fn assemble_series(
    coeffs: &[f64],
    geom: &Geometry,
    mat: &Material,
    path: SolutionPath,
) -> Result<SeriesField> {
    if coeffs.is_empty() {
        return Err(Error::Domain("series needs at least one mode".into()));
    }
    let cal = match path {
        SolutionPath::C => calibrate_closed_form(geom, mat)?,
        _ => Calibration {
            rho: mat.shear_modulus(),
            residual: 0.0,
        },
    };
    let modes = coeffs
        .iter()
        .enumerate()
        .map(|(i, &c)| {
            let n = i + 1;
            let mode = ModeIndex::new(n, geom)?;
            let fields = mode_fields(path, &mode, geom, mat, &cal).map_err(|e| e.in_mode(n))?;
            Ok(SeriesMode {
                mode,
                coefficient: c,
                fields,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(SeriesField {
        modes,
        material: *mat,
        geometry: *geom,
        path,
    })
}

/// Builds a series from explicit per-mode fields (e.g. the printed strip form).
pub fn series_from_fields(
    coeffs: &[f64],
    fields: Vec<ModeFieldCoeffs>,
    geom: &Geometry,
    mat: &Material,
) -> Result<SeriesField> {
    if coeffs.len() != fields.len() || coeffs.is_empty() {
        return Err(Error::Domain("coefficient and mode counts differ".into()));
    }
    let mut modes = Vec::with_capacity(coeffs.len());
    let mut path = SolutionPath::B;
    for (i, (&c, f)) in coeffs.iter().zip(fields).enumerate() {
        if f.mode.n() != i + 1 {
            return Err(Error::Domain("mode indices must run 1..N".into()));
        }
        path = f.path();
        modes.push(SeriesMode {
            mode: f.mode,
            coefficient: c,
            fields: f,
        });
    }
    Ok(SeriesField {
        modes,
        material: *mat,
        geometry: *geom,
        path,
    })
}

/// `sin(pi t)` and `cos(pi t)` with exact zeros at integers and half-integers.
pub(crate) fn sincos_pi(t: f64) -> (f64, f64) {
    let r = t - 2.0 * (t / 2.0).round(); // [-1, 1]
    let (sign, r) = if r < 0.0 { (-1.0, -r) } else { (1.0, r) };
    // sin is even about 1/2 on [0, 1]; cos is odd about 1/2
    let (s, c) = if r > 0.5 {
        let m = 1.0 - r;
        let (s, c) = (std::f64::consts::PI * m).sin_cos();
        (s, -c)
    } else {
        (std::f64::consts::PI * r).sin_cos()
    };
    let c = if r == 0.5 { 0.0 } else { c };
    (sign * s, c)
}

impl SeriesField {
    pub fn modes(&self) -> &[SeriesMode] {
        &self.modes
    }

    pub fn truncation(&self) -> usize {
        self.modes.len()
    }

    pub fn material(&self) -> &Material {
        &self.material
    }

    pub fn geometry(&self) -> &Geometry {
        &self.geometry
    }

    pub fn path(&self) -> SolutionPath {
        self.path
    }

    /// Profiles of every mode at one height, scaled by its coefficient.
    pub(crate) fn row_profiles(&self, y: f64) -> Vec<ProfileValues> {
        let eta = (y / self.geometry.height()).clamp(0.0, 1.0);
        self.modes
            .iter()
            .map(|m| {
                let p = m.fields.eval(eta);
                let c = m.coefficient;
                ProfileValues {
                    u: c * p.u,
                    v: c * p.v,
                    sigma_x: c * p.sigma_x,
                    sigma_y: c * p.sigma_y,
                    tau_xy: c * p.tau_xy,
                }
            })
            .collect()
    }

    /// Sums precomputed row profiles at `x`.
    pub(crate) fn sum_row(&self, row: &[ProfileValues], x: f64, y: f64) -> FieldSample {
        let t = x / self.geometry.length();
        let mut acc = ProfileValues::default();
        for (m, p) in self.modes.iter().zip(row) {
            let (s, c) = sincos_pi(m.mode.n() as f64 * t);
            acc.u += p.u * c;
            acc.v += p.v * s;
            acc.sigma_x += p.sigma_x * s;
            acc.sigma_y += p.sigma_y * s;
            acc.tau_xy += p.tau_xy * c;
        }
        let g = self.material.shear_modulus();
        FieldSample {
            x,
            y,
            u: acc.u / g,
            v: acc.v / g,
            sigma_x: acc.sigma_x,
            sigma_y: acc.sigma_y,
            tau_xy: acc.tau_xy,
        }
    }

    /// Physical displacements and stresses at `(x, y)`.
    pub fn evaluate_fields(&self, x: f64, y: f64) -> Result<FieldSample> {
        self.geometry.check_point(x, y)?;
        let row = self.row_profiles(y);
        Ok(self.sum_row(&row, x, y))
    }

    /// Row-major (y outer, x inner) samples on a tensor grid.
    pub fn evaluate_grid(&self, xs: &[f64], ys: &[f64]) -> Result<Vec<FieldSample>> {
        use rayon::prelude::*;
        for &x in xs {
            self.geometry.check_point(x, 0.0)?;
        }
        for &y in ys {
            self.geometry.check_point(0.0, y)?;
        }
        let rows: Vec<Vec<FieldSample>> = ys
            .par_iter()
            .map(|&y| {
                let row = self.row_profiles(y);
                xs.iter().map(|&x| self.sum_row(&row, x, y)).collect()
            })
            .collect();
        Ok(rows.into_iter().flatten().collect())
    }
}
