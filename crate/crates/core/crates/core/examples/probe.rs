use flatstamp::stamp_problem::*;
use flatstamp::strip_solution::*;
use flatstamp::verification::*;
use flatstamp::*;
fn main() {
    let g = Geometry::new(2.0, 1.0).unwrap();
    let m = Material::new(1.0, 0.3).unwrap();
    let p = BoundaryProfile::raised_cosine(1.0, 0.4, 0.01);
    for n in [64usize, 32, 16, 8] {
        let c = sine_coefficients(&p, &g, n).unwrap();
        let sf = assemble_series(&c, &g, &m, SolutionPath::B).unwrap();
        let pc = physics_convergence(&sf, GridSpec::new(41,41).unwrap(), GridSpec::new(81,81).unwrap()).unwrap();
        println!("N={n}");
        for (name, r) in PhysicsConvergence::NAMES.iter().zip(&pc.fine) { println!("  {name}: {r}  coarse {:.3e}", pc.coarse.iter().next().unwrap().max_abs); }
        let cor = Corrupted::sigma_x(&sf, 1.01);
        let (e1, _) = equilibrium_residual(&cor, GridSpec::new(81,81).unwrap()).unwrap();
        let sc = stress_scale(&sf, GridSpec::new(81,81).unwrap()).unwrap();
        println!("  corrupted eq1 {:.3e} scale {:.3e}", e1.max_abs, sc);
    }
}
