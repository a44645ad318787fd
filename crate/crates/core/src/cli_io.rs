//! Run configuration, batch execution and output files.
//!
//! A configuration is a TOML document with the sections `geometry`,
//! `material`, `stamp`, `solver` and `output`:
//!
//! ```toml
//! [geometry]
//! l = 2.0
//! h = 1.0
//!
//! [material]
//! E = 1.0
//! nu = 0.3
//!
//! [stamp]
//! kind = "raised_cosine"   # single_mode | raised_cosine | parabolic_bump | flat_stamp | tabulated
//! center = 1.0
//! half_width = 0.4
//! depth = 0.01
//!
//! [solver]
//! modes = 64
//! path = "B"               # A | B | C | all
//!
//! [output]
//! grid = [41, 41]          # interior nodes in x and y
//! verify = false
//! directory = "out"        # optional
//! ```
//!
//! `single_mode` takes `mode` and `amplitude`; `flat_stamp` also accepts
//! its ends `a`, `b` in place of `center`, `half_width`; `tabulated` takes
//! arrays `x` and `v`.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use thiserror::Error;
use toml::{Table, Value};

use crate::error::Error;
use crate::params::{Geometry, Material};
use crate::quadrature::simpson;
use crate::stamp_problem::{
    contact_pressure, sine_coefficients, sine_reconstruction, total_force, BoundaryProfile,
    FieldSample,
};
use crate::strip_solution::{assemble_series, SeriesField, SolutionPath};
use crate::verification::{discrepancy_report, physics_convergence, GridSpec, PhysicsConvergence};

/// Header of `fields.csv`.
pub const FIELDS_HEADER: &str = "x,y,u,v,sigma_x,sigma_y,tau_xy";
/// Header of `pressure.csv`.
pub const PRESSURE_HEADER: &str = "x,sigma_y_at_h";

/// Problems with the configuration text or its values.
#[derive(Debug, Error)]
pub enum ConfigError {
    #[error("config is not valid TOML: {0}")]
    Syntax(String),
    #[error("unknown section [{0}]")]
    UnknownSection(String),
    #[error("unknown key `{key}` in [{section}]")]
    UnknownKey { section: String, key: String },
    #[error("missing required key `{key}` in [{section}]")]
    MissingKey { section: String, key: String },
    #[error("invalid value for `{key}` in [{section}]: {reason}")]
    InvalidValue {
        section: String,
        key: String,
        reason: String,
    },
    #[error(transparent)]
    Material(Error),
    #[error(transparent)]
    Geometry(Error),
    #[error(transparent)]
    Profile(Error),
    #[error(transparent)]
    BoundaryCompatibility(Error),
}

/// Anything that stops a run, grouped by exit status.
#[derive(Debug, Error)]
pub enum RunError {
    #[error("configuration error: {0}")]
    Config(#[from] ConfigError),
    #[error("numerical failure: {0}")]
    Numerical(#[from] Error),
    #[error("i/o error on {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

impl RunError {
    /// 2 for configuration, 3 for numerical, 4 for i/o failures.
    pub fn exit_code(&self) -> i32 {
        match self {
            RunError::Config(_) => 2,
            RunError::Numerical(_) => 3,
            RunError::Io { .. } => 4,
        }
    }
}

/// Which paths to run. `All` reports path B's fields and compares A and C
/// against it.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PathSelection {
    One(SolutionPath),
    All,
}

impl PathSelection {
    pub fn primary(self) -> SolutionPath {
        match self {
            PathSelection::One(p) => p,
            PathSelection::All => SolutionPath::B,
        }
    }
}

impl std::str::FromStr for PathSelection {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "A" | "a" => Ok(PathSelection::One(SolutionPath::A)),
            "B" | "b" => Ok(PathSelection::One(SolutionPath::B)),
            "C" | "c" => Ok(PathSelection::One(SolutionPath::C)),
            "all" | "ALL" => Ok(PathSelection::All),
            other => Err(format!("expected A, B, C or all, got `{other}`")),
        }
    }
}

impl std::fmt::Display for PathSelection {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            PathSelection::One(p) => write!(f, "{p}"),
            PathSelection::All => f.write_str("all"),
        }
    }
}

/// A validated run.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub geometry: Geometry,
    pub material: Material,
    pub profile: BoundaryProfile,
    pub modes: usize,
    pub grid: GridSpec,
    pub path: PathSelection,
    pub output_dir: Option<PathBuf>,
    pub verify: bool,
}

struct Section<'a> {
    name: &'static str,
    table: &'a Table,
}

impl<'a> Section<'a> {
    fn get(&self, key: &str) -> Option<&'a Value> {
        self.table.get(key)
    }

    fn missing(&self, key: &str) -> ConfigError {
        ConfigError::MissingKey {
            section: self.name.into(),
            key: key.into(),
        }
    }

    fn invalid(&self, key: &str, reason: impl Into<String>) -> ConfigError {
        ConfigError::InvalidValue {
            section: self.name.into(),
            key: key.into(),
            reason: reason.into(),
        }
    }

    fn allow_only(&self, keys: &[&str]) -> Result<(), ConfigError> {
        match self.table.keys().find(|k| !keys.contains(&k.as_str())) {
            Some(k) => Err(ConfigError::UnknownKey {
                section: self.name.into(),
                key: k.clone(),
            }),
            None => Ok(()),
        }
    }

    fn number(&self, key: &str) -> Result<f64, ConfigError> {
        self.opt_number(key)?.ok_or_else(|| self.missing(key))
    }

    fn opt_number(&self, key: &str) -> Result<Option<f64>, ConfigError> {
        match self.get(key) {
            None => Ok(None),
            Some(v) => as_f64(v)
                .filter(|x| x.is_finite())
                .map(Some)
                .ok_or_else(|| self.invalid(key, format!("expected a finite number, got {v}"))),
        }
    }

    fn count(&self, key: &str) -> Result<Option<usize>, ConfigError> {
        match self.get(key) {
            None => Ok(None),
            Some(Value::Integer(i)) if *i >= 1 => Ok(Some(*i as usize)),
            Some(v) => Err(self.invalid(key, format!("expected a positive integer, got {v}"))),
        }
    }

    fn string(&self, key: &str) -> Result<Option<&'a str>, ConfigError> {
        match self.get(key) {
            None => Ok(None),
            Some(Value::String(s)) => Ok(Some(s)),
            Some(v) => Err(self.invalid(key, format!("expected a string, got {v}"))),
        }
    }

    fn numbers(&self, key: &str) -> Result<Vec<f64>, ConfigError> {
        match self.get(key) {
            None => Err(self.missing(key)),
            Some(Value::Array(items)) => items
                .iter()
                .map(|v| as_f64(v).filter(|x| x.is_finite()))
                .collect::<Option<Vec<_>>>()
                .ok_or_else(|| self.invalid(key, "expected an array of finite numbers")),
            Some(v) => Err(self.invalid(key, format!("expected an array, got {v}"))),
        }
    }
}

fn as_f64(v: &Value) -> Option<f64> {
    match v {
        Value::Float(f) => Some(*f),
        Value::Integer(i) => Some(*i as f64),
        _ => None,
    }
}

const SECTIONS: [&str; 5] = ["geometry", "material", "stamp", "solver", "output"];

fn section<'a>(root: &'a Table, name: &'static str, empty: &'a Table) -> Result<Section<'a>, ConfigError> {
    match root.get(name) {
        None => Ok(Section { name, table: empty }),
        Some(Value::Table(t)) => Ok(Section { name, table: t }),
        Some(_) => Err(ConfigError::InvalidValue {
            section: name.into(),
            key: name.into(),
            reason: "expected a section".into(),
        }),
    }
}

/// Parses and validates a configuration document.
pub fn parse_config(text: &str) -> Result<RunConfig, ConfigError> {
    let root: Table = toml::from_str(text).map_err(|e| ConfigError::Syntax(e.to_string()))?;
    if let Some(k) = root.keys().find(|k| !SECTIONS.contains(&k.as_str())) {
        return Err(ConfigError::UnknownSection(k.clone()));
    }
    let empty = Table::new();

    let geo = section(&root, "geometry", &empty)?;
    geo.allow_only(&["l", "h"])?;
    let geometry =
        Geometry::new(geo.number("l")?, geo.number("h")?).map_err(ConfigError::Geometry)?;

    let mat = section(&root, "material", &empty)?;
    mat.allow_only(&["E", "nu"])?;
    let material =
        Material::new(mat.number("E")?, mat.number("nu")?).map_err(ConfigError::Material)?;

    let profile = parse_stamp(&section(&root, "stamp", &empty)?)?;
    profile.validate(&geometry).map_err(|e| match e {
        Error::BoundaryCompatibility(_) => ConfigError::BoundaryCompatibility(e),
        other => ConfigError::Profile(other),
    })?;

    let solver = section(&root, "solver", &empty)?;
    solver.allow_only(&["modes", "path"])?;
    let modes = solver.count("modes")?.ok_or_else(|| solver.missing("modes"))?;
    let path = match solver.string("path")? {
        None => PathSelection::One(SolutionPath::B),
        Some(s) => s.parse().map_err(|r: String| solver.invalid("path", r))?,
    };

    let out = section(&root, "output", &empty)?;
    out.allow_only(&["grid", "verify", "directory"])?;
    let grid = match out.get("grid") {
        None => return Err(out.missing("grid")),
        Some(Value::Array(a)) if a.len() == 2 => {
            let dims: Option<Vec<usize>> = a
                .iter()
                .map(|v| v.as_integer().filter(|&i| i >= 3).map(|i| i as usize))
                .collect();
            let dims = dims.ok_or_else(|| out.invalid("grid", "expected two integers >= 3"))?;
            GridSpec::new(dims[0], dims[1]).map_err(|e| out.invalid("grid", e.to_string()))?
        }
        Some(v) => return Err(out.invalid("grid", format!("expected [nx, ny], got {v}"))),
    };
    let verify = match out.get("verify") {
        None => false,
        Some(Value::Boolean(b)) => *b,
        Some(v) => return Err(out.invalid("verify", format!("expected true or false, got {v}"))),
    };
    let output_dir = out.string("directory")?.map(PathBuf::from);

    Ok(RunConfig {
        geometry,
        material,
        profile,
        modes,
        grid,
        path,
        output_dir,
        verify,
    })
}

fn parse_stamp(s: &Section<'_>) -> Result<BoundaryProfile, ConfigError> {
    let kind = s.string("kind")?.ok_or_else(|| s.missing("kind"))?;
    let bump = |s: &Section<'_>| -> Result<(f64, f64, f64), ConfigError> {
        Ok((s.number("center")?, s.number("half_width")?, s.number("depth")?))
    };
    Ok(match kind {
        "single_mode" => {
            s.allow_only(&["kind", "mode", "amplitude"])?;
            let mode = s.count("mode")?.ok_or_else(|| s.missing("mode"))?;
            BoundaryProfile::single_mode(mode, s.number("amplitude")?)
        }
        "raised_cosine" => {
            s.allow_only(&["kind", "center", "half_width", "depth"])?;
            let (c, w, d) = bump(s)?;
            BoundaryProfile::raised_cosine(c, w, d)
        }
        "parabolic_bump" => {
            s.allow_only(&["kind", "center", "half_width", "depth"])?;
            let (c, w, d) = bump(s)?;
            BoundaryProfile::parabolic_bump(c, w, d)
        }
        "flat_stamp" => {
            s.allow_only(&["kind", "center", "half_width", "a", "b", "depth"])?;
            match (s.opt_number("a")?, s.opt_number("b")?) {
                (Some(a), Some(b)) => {
                    if s.get("center").is_some() || s.get("half_width").is_some() {
                        return Err(s.invalid("a", "give either a, b or center, half_width"));
                    }
                    if !(b > a) {
                        return Err(s.invalid("b", format!("stamp end b = {b} must exceed a = {a}")));
                    }
                    BoundaryProfile::flat_stamp(0.5 * (a + b), 0.5 * (b - a), s.number("depth")?)
                }
                (None, None) => {
                    let (c, w, d) = bump(s)?;
                    BoundaryProfile::flat_stamp(c, w, d)
                }
                (Some(_), None) => return Err(s.missing("b")),
                (None, Some(_)) => return Err(s.missing("a")),
            }
        }
        "tabulated" => {
            s.allow_only(&["kind", "x", "v"])?;
            BoundaryProfile::Tabulated {
                xs: s.numbers("x")?,
                vs: s.numbers("v")?,
            }
        }
        other => {
            return Err(s.invalid(
                "kind",
                format!(
                    "unknown stamp kind `{other}` (single_mode, raised_cosine, parabolic_bump, flat_stamp, tabulated)"
                ),
            ))
        }
    })
}

/// Reads and parses a configuration file.
pub fn load_config(path: &Path) -> Result<RunConfig, RunError> {
    let text = std::fs::read_to_string(path).map_err(|source| RunError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    Ok(parse_config(&text)?)
}

/// Text artifacts of one run.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OutputBundle {
    /// `fields.csv`
    pub fields: String,
    /// `pressure.csv`
    pub pressure: String,
    /// `report.txt`
    pub report: String,
    /// `summary.txt`, one `key=value` per line.
    pub summary: String,
}

impl OutputBundle {
    pub const FILES: [&'static str; 4] = ["fields.csv", "pressure.csv", "report.txt", "summary.txt"];

    /// Writes the four files into `dir`, creating it if needed.
    pub fn write_to(&self, dir: &Path) -> Result<(), RunError> {
        let io = |path: &Path| {
            let path = path.to_path_buf();
            move |source| RunError::Io { path, source }
        };
        std::fs::create_dir_all(dir).map_err(io(dir))?;
        for (name, body) in Self::FILES.iter().zip([&self.fields, &self.pressure, &self.report, &self.summary]) {
            let p = dir.join(name);
            std::fs::write(&p, body).map_err(io(&p))?;
        }
        Ok(())
    }
}

fn num(v: f64) -> String {
    // adding 0.0 turns -0.0 into 0.0
    format!("{:.16e}", v + 0.0)
}

/// Largest pointwise difference between two assembled fields on the grid,
/// relative to the largest magnitude of each quantity in `reference`.
fn field_difference(a: &[FieldSample], reference: &[FieldSample]) -> f64 {
    let get = |p: &FieldSample| [p.u, p.v, p.sigma_x, p.sigma_y, p.tau_xy];
    (0..5)
        .map(|f| {
            let scale = reference.iter().fold(0.0f64, |m, p| m.max(get(p)[f].abs()));
            let diff = a
                .iter()
                .zip(reference)
                .fold(0.0f64, |m, (p, q)| m.max((get(p)[f] - get(q)[f]).abs()));
            if scale > 0.0 {
                diff / scale
            } else {
                diff
            }
        })
        .fold(0.0, f64::max)
}

/// Solves, samples and (optionally) verifies one configuration.
pub fn run(config: &RunConfig) -> Result<OutputBundle, Error> {
    let geom = &config.geometry;
    let mat = &config.material;
    let coeffs = sine_coefficients(&config.profile, geom, config.modes)?;
    let path = config.path.primary();
    let sf = assemble_series(&coeffs, geom, mat, path)?;

    let xs = config.grid.xs(geom);
    let ys = config.grid.ys(geom);
    let samples = sf.evaluate_grid(&xs, &ys)?;

    let mut fields = String::with_capacity(samples.len() * 170);
    fields.push_str(FIELDS_HEADER);
    fields.push('\n');
    for p in &samples {
        let row = [p.x, p.y, p.u, p.v, p.sigma_x, p.sigma_y, p.tau_xy].map(num);
        fields.push_str(&row.join(","));
        fields.push('\n');
    }

    let top = geom.height();
    let top_row = &samples[samples.len() - xs.len()..];
    let mut pressure = String::from(PRESSURE_HEADER);
    pressure.push('\n');
    for p in top_row {
        debug_assert_eq!(p.y, top);
        let _ = writeln!(pressure, "{},{}", num(p.x), num(p.sigma_y));
    }

    let force = total_force(&sf);
    let max_v = samples.iter().fold(0.0f64, |m, p| m.max(p.v.abs()));
    let max_sy = samples.iter().fold(0.0f64, |m, p| m.max(p.sigma_y.abs()));

    let mut summary: BTreeMap<&'static str, String> = BTreeMap::new();
    summary.insert("total_force", num(force));
    summary.insert("max_abs_v", num(max_v));
    summary.insert("max_abs_sigma_y", num(max_sy));
    summary.insert("modes", config.modes.to_string());
    summary.insert("path", config.path.to_string());
    summary.insert("grid_nx", config.grid.nx().to_string());
    summary.insert("grid_ny", config.grid.ny().to_string());

    let mut report = String::new();
    let _ = writeln!(report, "flatstamp run");
    let _ = writeln!(
        report,
        "  plate l = {}, h = {}; E = {}, nu = {} (G = {})",
        geom.length(),
        geom.height(),
        mat.young(),
        mat.poisson(),
        mat.shear_modulus()
    );
    let _ = writeln!(report, "  stamp {:?}", config.profile);
    let _ = writeln!(report, "  modes N = {}, path {}", config.modes, config.path);
    let _ = writeln!(report, "  grid {} x {} interior nodes", config.grid.nx(), config.grid.ny());
    let _ = writeln!(report, "  total force per unit thickness {}", num(force));
    let _ = writeln!(report, "  max |v| {}, max |sigma_y| {}", num(max_v), num(max_sy));

    let mut extra: Vec<(String, String)> = Vec::new();

    if config.path == PathSelection::All || config.verify {
        let mut worst = 0.0f64;
        for other in [SolutionPath::A, SolutionPath::C] {
            let alt = assemble_series(&coeffs, geom, mat, other)?.evaluate_grid(&xs, &ys)?;
            let d = field_difference(&alt, &samples);
            let _ = writeln!(report, "  assembled path {other} vs {path}: max relative difference {d:.3e}");
            extra.push((format!("assembled_path_{other}_vs_{path}"), num(d)));
            worst = worst.max(d);
        }
        extra.push(("path_equivalence_max_diff".into(), num(worst)));
    }

    if config.verify {
        verify_into(config, &sf, &coeffs, &mut report, &mut extra)?;
    }

    let mut summary_text = String::new();
    for (k, v) in summary.iter() {
        let _ = writeln!(summary_text, "{k}={v}");
    }
    for (k, v) in &extra {
        let _ = writeln!(summary_text, "{k}={v}");
    }

    Ok(OutputBundle {
        fields,
        pressure,
        report,
        summary: summary_text,
    })
}

fn verify_into(
    config: &RunConfig,
    sf: &SeriesField,
    coeffs: &[f64],
    report: &mut String,
    extra: &mut Vec<(String, String)>,
) -> Result<(), Error> {
    let geom = &config.geometry;
    let mat = &config.material;

    let disc = discrepancy_report(geom, mat, config.modes)?;
    let _ = writeln!(report);
    let _ = write!(report, "{disc}");
    extra.extend(disc.summary_lines());

    let coarse = config.grid;
    let fine = coarse.refined();
    let pc: PhysicsConvergence = physics_convergence(sf, coarse, fine)?;
    let _ = writeln!(report);
    let _ = writeln!(
        report,
        "Physics residuals, grids {}x{} -> {}x{}",
        coarse.nx(),
        coarse.ny(),
        fine.nx(),
        fine.ny()
    );
    for (name, r) in PhysicsConvergence::NAMES.iter().zip(&pc.fine) {
        let _ = writeln!(report, "  {name}: {r}");
        extra.push((format!("{name}_max"), num(r.max_abs)));
        extra.push((format!("{name}_order"), num(r.observed_order.unwrap_or(f64::NAN))));
    }
    let eq_order = pc.fine[0]
        .observed_order
        .unwrap_or(f64::NAN)
        .min(pc.fine[1].observed_order.unwrap_or(f64::NAN));
    extra.push(("equilibrium_observed_order".into(), num(eq_order)));

    let l = geom.length();
    let h = geom.height();
    let xs = coarse.xs(geom);
    let mut repro = 0.0f64;
    for &x in &xs {
        let v = sf.evaluate_fields(x, h)?.v;
        repro = repro.max((v - sine_reconstruction(coeffs, l, x)).abs());
    }
    let _ = writeln!(report, "  top-face v vs sine reconstruction: {repro:.3e}");
    extra.push(("boundary_reproduction_max".into(), num(repro)));

    let force = total_force(sf);
    let panels = 16 * config.modes.max(8);
    let quad = simpson(|x| contact_pressure(sf, x).unwrap_or(f64::NAN), 0.0, l, panels);
    let rel = if force != 0.0 { (quad - force).abs() / force.abs() } else { quad.abs() };
    let _ = writeln!(report, "  force: analytic vs quadrature of contact pressure, relative {rel:.3e}");
    extra.push(("force_consistency".into(), num(rel)));
    Ok(())
}
