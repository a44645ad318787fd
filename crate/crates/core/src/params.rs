//! Elastic constants and plate geometry.

use crate::error::{Error, Result};

/// Isotropic elastic constants for plane strain.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Material {
    e: f64,
    nu: f64,
}

impl Material {
    /// `E > 0` and `0 <= nu < 0.5`.
    pub fn new(e: f64, nu: f64) -> Result<Self> {
        if !(e.is_finite() && e > 0.0) {
            return Err(Error::Material(format!("Young's modulus must be positive, got {e}")));
        }
        if !nu.is_finite() || nu < 0.0 {
            return Err(Error::Material(format!("Poisson ratio must be >= 0, got {nu}")));
        }
        if nu >= 0.5 {
            return Err(Error::Material(format!(
                "Poisson ratio {nu} >= 0.5 is incompressible and not supported"
            )));
        }
        Ok(Material { e, nu })
    }

    pub fn young(&self) -> f64 {
        self.e
    }

    pub fn poisson(&self) -> f64 {
        self.nu
    }

    /// Shear modulus `E / (2(1 + nu))`.
    pub fn shear_modulus(&self) -> f64 {
        self.e / (2.0 * (1.0 + self.nu))
    }

    /// Lamé's first parameter `E nu / ((1 + nu)(1 - 2 nu))`.
    pub fn lame_lambda(&self) -> f64 {
        self.e * self.nu / ((1.0 + self.nu) * (1.0 - 2.0 * self.nu))
    }

    /// Returns a copy with a different Poisson ratio (used by negative controls).
    pub fn with_poisson(&self, nu: f64) -> Result<Self> {
        Material::new(self.e, nu)
    }
}

/// Plate of length `l` (along x) and height `h` (along y).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Geometry {
    l: f64,
    h: f64,
}

impl Geometry {
    pub fn new(l: f64, h: f64) -> Result<Self> {
        if !(l.is_finite() && l > 0.0) {
            return Err(Error::Geometry(format!("length l must be positive, got {l}")));
        }
        if !(h.is_finite() && h > 0.0) {
            return Err(Error::Geometry(format!("height h must be positive, got {h}")));
        }
        Ok(Geometry { l, h })
    }

    pub fn length(&self) -> f64 {
        self.l
    }

    pub fn height(&self) -> f64 {
        self.h
    }

    pub(crate) fn check_point(&self, x: f64, y: f64) -> Result<()> {
        // A little slack so grid nodes computed as i * dx land inside.
        let tol = 1e-12 * self.l.max(self.h);
        if !(x >= -tol && x <= self.l + tol && y >= -tol && y <= self.h + tol) {
            return Err(Error::Domain(format!(
                "point ({x}, {y}) outside [0, {}] x [0, {}]",
                self.l, self.h
            )));
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn derived_constants() {
        let m = Material::new(1.0, 0.3).unwrap();
        assert!((m.shear_modulus() - 1.0 / 2.6).abs() < 1e-16);
        assert!((m.lame_lambda() - 0.3 / (1.3 * 0.4)).abs() < 1e-15);
        // lambda + 2G = E(1 - nu)/((1 + nu)(1 - 2nu))
        let p = m.lame_lambda() + 2.0 * m.shear_modulus();
        assert!((p - 0.7 / (1.3 * 0.4)).abs() < 1e-15);
    }

    #[test]
    fn rejects_bad_material() {
        assert!(matches!(Material::new(1.0, 0.5), Err(Error::Material(_))));
        assert!(matches!(Material::new(1.0, -0.1), Err(Error::Material(_))));
        assert!(matches!(Material::new(0.0, 0.3), Err(Error::Material(_))));
        assert!(Material::new(1.0, 0.0).is_ok());
    }

    #[test]
    fn rejects_bad_geometry() {
        assert!(Geometry::new(0.0, 1.0).is_err());
        assert!(Geometry::new(1.0, -1.0).is_err());
        assert!(Geometry::new(f64::NAN, 1.0).is_err());
    }
}
