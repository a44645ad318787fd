//! Acceptance suite: one PASS/FAIL line per criterion, non-zero exit on any
//! failure. Desk-scale setup: l = 2, h = 1, E = 1, nu = 0.3, N = 64.

use std::f64::consts::PI;
use std::path::Path;
use std::process::{Command, ExitCode};

use flatstamp::cli_io::OutputBundle;
use flatstamp::harmonic_rect::{
    evaluate_harmonic, solve_dirichlet, DirichletData, FnEdge, SineEdge, ZeroEdge,
};
use flatstamp::modal_calculus::{building_block, Block};
use flatstamp::quadrature::{simpson, QuadratureSpec};
use flatstamp::stamp_problem::{
    contact_pressure, sine_coefficients, sine_coefficients_quadrature, sine_reconstruction,
    total_force,
};
use flatstamp::strip_solution::{
    assemble_series, calibrate_closed_form, eta_samples, mode_fields_blocks, mode_fields_closed_with,
    mode_fields_initial, ShearForm, SolutionPath,
};
use flatstamp::verification::{
    discrepancy_report, equilibrium_residual, fd_laplace_solve, laplacian_convergence,
    physics_convergence, profile_difference, stress_scale, Corrupted, GridSpec,
    PhysicsConvergence,
};
use flatstamp::{BoundaryProfile, Geometry, Material, ModeIndex, SeriesField};

const MODES: usize = 64;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn setup() -> (Geometry, Material) {
    (Geometry::new(2.0, 1.0).unwrap(), Material::new(1.0, 0.3).unwrap())
}

fn raised_cosine() -> BoundaryProfile {
    BoundaryProfile::raised_cosine(1.0, 0.4, 0.01)
}

fn stamp_field() -> SeriesField {
    let (geom, mat) = setup();
    let coeffs = sine_coefficients(&raised_cosine(), &geom, MODES).unwrap();
    assemble_series(&coeffs, &geom, &mat, SolutionPath::B).unwrap()
}

fn check(ok: bool, detail: String) -> Outcome {
    if ok {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn path_equivalence() -> Outcome {
    let (geom, mat) = setup();
    let cal = calibrate_closed_form(&geom, &mat).map_err(|e| e.to_string())?;
    let mut worst = (0.0f64, 0usize, "");
    for n in 1..=MODES {
        let mode = ModeIndex::new(n, &geom).unwrap();
        let a = mode_fields_initial(&mode, &geom, &mat).map_err(|e| e.to_string())?;
        let b = mode_fields_blocks(&mode, &geom, &mat);
        let c = mode_fields_closed_with(&mode, &geom, &mat, cal.rho, ShearForm::Corrected);
        for (pair, d) in [
            ("A-B", profile_difference(&a, &b)),
            ("C-B", profile_difference(&c, &b)),
            ("A-C", profile_difference(&a, &c)),
        ] {
            if d > worst.0 {
                worst = (d, n, pair);
            }
        }
    }
    check(
        worst.0 <= 1e-10,
        format!("max relative difference {:.3e} ({} at n={})", worst.0, worst.2, worst.1),
    )
}

fn boundary_conditions() -> Outcome {
    let (geom, mat) = setup();
    let mut per_mode = 0.0f64;
    for n in 1..=MODES {
        let f = mode_fields_blocks(&ModeIndex::new(n, &geom).unwrap(), &geom, &mat);
        let profiles: Vec<_> = eta_samples().map(|e| f.eval(e)).collect();
        let scale_v = profiles.iter().fold(0.0f64, |m, p| m.max(p.v.abs()));
        let scale_x = profiles.iter().fold(0.0f64, |m, p| m.max(p.tau_xy.abs()));
        let (bottom, top) = (f.eval(0.0), f.eval(1.0));
        per_mode = per_mode
            .max(bottom.v.abs() / scale_v)
            .max(bottom.tau_xy.abs() / scale_x)
            .max(top.tau_xy.abs() / scale_x);
    }

    let sf = stamp_field();
    let (l, h) = (geom.length(), geom.height());
    let mut lateral = 0.0f64;
    for j in 0..=40 {
        let y = h * j as f64 / 40.0;
        for x in [0.0, l] {
            let s = sf.evaluate_fields(x, y).unwrap();
            lateral = lateral.max(s.v.abs()).max(s.sigma_y.abs()).max(s.sigma_x.abs());
        }
    }

    let coeffs = sine_coefficients(&raised_cosine(), &geom, MODES).unwrap();
    let mut top = 0.0f64;
    for i in 0..=400 {
        let x = l * i as f64 / 400.0;
        let v = sf.evaluate_fields(x, h).unwrap().v;
        top = top.max((v - sine_reconstruction(&coeffs, l, x)).abs());
    }
    check(
        per_mode <= 1e-12 && lateral <= 1e-15 && top <= 1e-9,
        format!("per-mode {per_mode:.3e}, lateral {lateral:.3e}, top reconstruction {top:.3e}"),
    )
}

fn physics_residuals() -> Outcome {
    let sf = stamp_field();
    let coarse = GridSpec::new(41, 41).unwrap();
    let fine = GridSpec::new(81, 81).unwrap();
    let pc = physics_convergence(&sf, coarse, fine).map_err(|e| e.to_string())?;
    let orders: Vec<String> = PhysicsConvergence::NAMES
        .iter()
        .zip(&pc.fine)
        .map(|(name, r)| format!("{name} {:.3}", r.observed_order.unwrap_or(f64::NAN)))
        .collect();

    let scale = stress_scale(&sf, fine).unwrap();
    let controls = [
        Corrupted::sigma_x(&sf, 1.01),
        Corrupted { inner: &sf, sigma_x_scale: 1.0, sigma_y_scale: 1.01, tau_xy_scale: 1.0 },
        Corrupted { inner: &sf, sigma_x_scale: 1.0, sigma_y_scale: 1.0, tau_xy_scale: 1.01 },
    ];
    let weakest_control = controls
        .iter()
        .map(|c| {
            let (e1, e2) = equilibrium_residual(c, fine).unwrap();
            e1.max_abs.max(e2.max_abs)
        })
        .fold(f64::INFINITY, f64::min);
    let detail = format!(
        "orders [{}], weakest corrupted residual {:.3e} vs 1e-3 x scale {:.3e}",
        orders.join(", "),
        weakest_control,
        1e-3 * scale
    );
    check(pc.min_order() >= 1.9 && weakest_control > 1e-3 * scale, detail)
}

fn harmonic_layer() -> Outcome {
    let (geom, _) = setup();
    let (l, h) = (geom.length(), geom.height());
    // exact halving of the spacing; the largest residual sits on the top
    // interior row, which moves towards y = h as the grid is refined
    let (coarse, fine) = (GridSpec::new(39, 39).unwrap(), GridSpec::new(79, 79).unwrap());

    let mut block_order = f64::INFINITY;
    for (blk, n) in Block::ALL.into_iter().flat_map(|b| [(b, 1), (b, 2)]) {
        let mode = ModeIndex::new(n, &geom).unwrap();
        let field = |x: f64, y: f64| {
            let m = building_block(blk, &mode, y, &geom).unwrap();
            m.multiplier * m.parity.eval(mode.k() * x)
        };
        let (_, rf) = laplacian_convergence(field, &geom, coarse, fine);
        block_order = block_order.min(rf.observed_order.unwrap());
    }

    let data = DirichletData::new(
        FnEdge(move |y: f64| 0.5 * (2.0 * PI * y / h).sin()),
        ZeroEdge,
        FnEdge(move |x: f64| (PI * x / l).sin().powi(3)),
        SineEdge { mode: 1, amplitude: 1.0, len: l },
    );
    let series = solve_dirichlet(&data, &geom, 16, QuadratureSpec::with_panels(4096))
        .map_err(|e| e.to_string())?;
    let fd_error = |grid: GridSpec| -> f64 {
        let fd = fd_laplace_solve(&data, &geom, grid).unwrap();
        let mut e = 0.0f64;
        for (j, &y) in fd.ys.iter().enumerate() {
            for (i, &x) in fd.xs.iter().enumerate() {
                e = e.max((fd.at(i, j) - evaluate_harmonic(&series, x, y).unwrap()).abs());
            }
        }
        e
    };
    let (ec, ef) = (fd_error(coarse), fd_error(fine));
    let fd_order = (ec / ef).ln() / (coarse.dx(&geom) / fine.dx(&geom)).ln();

    let single = solve_dirichlet(
        &DirichletData::top_only(SineEdge { mode: 1, amplitude: 1.0, len: l }),
        &geom,
        1,
        QuadratureSpec::for_modes(1),
    )
    .map_err(|e| e.to_string())?;
    let mut exact = 0.0f64;
    for j in 0..=20 {
        for i in 0..=40 {
            let (x, y) = (l * i as f64 / 40.0, h * j as f64 / 20.0);
            let want = (PI * x / l).sin() * (PI * y / l).sinh() / (PI * h / l).sinh();
            exact = exact.max((evaluate_harmonic(&single, x, y).unwrap() - want).abs());
        }
    }
    check(
        block_order >= 1.9 && fd_order >= 1.9 && exact <= 1e-9,
        format!(
            "block Laplacian order min {block_order:.3}, Dirichlet vs FD order {fd_order:.3} \
             (errors {ec:.3e} -> {ef:.3e}), single mode {exact:.3e}"
        ),
    )
}

fn typo_regression() -> Outcome {
    let (geom, mat) = setup();
    let report = discrepancy_report(&geom, &mat, MODES).map_err(|e| e.to_string())?;
    let mismatch = report.printed_shear_mismatch();
    let corrected = report.max_corrected_shear_top();
    check(
        mismatch <= 1e-12 && corrected == 0.0,
        format!("printed deviation relative miss {mismatch:.3e}, corrected max {corrected:e}"),
    )
}

fn fourier_layer() -> Outcome {
    let (geom, _) = setup();
    let profile = BoundaryProfile::flat_stamp(1.0, 0.4, 0.01);
    let closed = sine_coefficients(&profile, &geom, MODES).unwrap();
    let quad = sine_coefficients_quadrature(&profile, &geom, MODES, QuadratureSpec::with_panels(32768))
        .unwrap();
    let scale = closed.iter().fold(0.0f64, |m, c| m.max(c.abs()));
    let diff = closed
        .iter()
        .zip(&quad)
        .fold(0.0f64, |m, (a, b)| m.max((a - b).abs()))
        / scale;
    check(diff <= 1e-10, format!("max relative difference {diff:.3e} over n <= {MODES}"))
}

fn force_consistency() -> Outcome {
    let sf = stamp_field();
    let l = sf.geometry().length();
    let analytic = total_force(&sf);
    let numeric = simpson(|x| contact_pressure(&sf, x).unwrap(), 0.0, l, 8192);
    let rel = (analytic - numeric).abs() / analytic.abs();
    check(rel <= 1e-8, format!("force {analytic:.12e} vs quadrature {numeric:.12e}, relative {rel:.3e}"))
}

fn determinism() -> Outcome {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let config = dir.path().join("run.toml");
    std::fs::write(
        &config,
        r#"
[geometry]
l = 2.0
h = 1.0
[material]
E = 1.0
nu = 0.3
[stamp]
kind = "raised_cosine"
center = 1.0
half_width = 0.4
depth = 0.01
[solver]
modes = 64
path = "all"
[output]
grid = [21, 21]
verify = true
"#,
    )
    .map_err(|e| e.to_string())?;
    let run = |out: &Path| -> Result<(), String> {
        let status = Command::new(env!("CARGO_BIN_EXE_flatstamp"))
            .arg("--config")
            .arg(&config)
            .arg("--output")
            .arg(out)
            .output()
            .map_err(|e| e.to_string())?;
        if status.status.success() {
            Ok(())
        } else {
            Err(String::from_utf8_lossy(&status.stderr).into_owned())
        }
    };
    let (first, second) = (dir.path().join("first"), dir.path().join("second"));
    run(&first)?;
    run(&second)?;
    let differing: Vec<&str> = OutputBundle::FILES
        .iter()
        .copied()
        .filter(|name| std::fs::read(first.join(name)).ok() != std::fs::read(second.join(name)).ok())
        .collect();
    check(
        differing.is_empty(),
        if differing.is_empty() {
            format!("{} files identical across two runs", OutputBundle::FILES.len())
        } else {
            format!("differing files: {}", differing.join(", "))
        },
    )
}

fn main() -> ExitCode {
    let criteria: [Criterion; 8] = [
        ("three-path equivalence", path_equivalence),
        ("boundary conditions", boundary_conditions),
        ("physics residuals", physics_residuals),
        ("harmonic layer", harmonic_layer),
        ("typo detection regression", typo_regression),
        ("fourier layer", fourier_layer),
        ("force consistency", force_consistency),
        ("determinism", determinism),
    ];
    let mut failed = 0;
    for (i, (name, criterion)) in criteria.iter().enumerate() {
        match criterion() {
            Ok(detail) => println!("criterion {} ({name}): PASS {detail}", i + 1),
            Err(detail) => {
                failed += 1;
                println!("criterion {} ({name}): FAIL {detail}", i + 1);
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{failed} criterion(s) failed");
        ExitCode::FAILURE
    }
}
