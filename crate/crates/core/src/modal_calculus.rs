//! Symbolic operators of the initial-function method evaluated on one Fourier
//! mode.
//!
//! An operator is a function `F(alpha)` of `alpha = d/dx`. On a mode
//! `sin(k x)` the substitution `alpha -> i k` gives
//!
//! ```text
//! F(alpha) sin(kx) = Re F(ik) sin(kx) + Im F(ik) cos(kx)
//! ```
//!
//! Every operator used here is either even in `alpha` (real `F(ik)`, the
//! parity is kept) or odd (imaginary `F(ik)`, the parity flips). In
//! particular `cos(alpha y) sin(kx) = ch(ky) sin(kx)` and
//! `sin(alpha y) sin(kx) = sh(ky) cos(kx)`. Applied to `cos(kx)` an even
//! operator gives the same multiplier and an odd one gives the negated
//! multiplier with the parity flipped to `sin`.
//!
//! All multipliers are closed forms; hyperbolic ratios go through
//! [`stable_ratio`] so nothing overflows for large mode numbers.

use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::params::{Geometry, Material};

/// x-dependence of a modal quantity.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Parity {
    Sine,
    Cosine,
}

impl Parity {
    pub fn flip(self) -> Parity {
        match self {
            Parity::Sine => Parity::Cosine,
            Parity::Cosine => Parity::Sine,
        }
    }

    /// `sin(kx)` or `cos(kx)`.
    pub fn eval(self, kx: f64) -> f64 {
        match self {
            Parity::Sine => kx.sin(),
            Parity::Cosine => kx.cos(),
        }
    }
}

/// Fourier mode `n` on a plate: `k = n pi / l`, `beta = k h`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModeIndex {
    n: usize,
    k: f64,
    beta: f64,
}

impl ModeIndex {
    pub fn new(n: usize, geom: &Geometry) -> Result<Self> {
        if n == 0 {
            return Err(Error::Domain("mode number must be >= 1".into()));
        }
        let k = n as f64 * PI / geom.length();
        Ok(ModeIndex {
            n,
            k,
            beta: k * geom.height(),
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Wavenumber `n pi / l`.
    pub fn k(&self) -> f64 {
        self.k
    }

    /// Dimensionless `n pi h / l`.
    pub fn beta(&self) -> f64 {
        self.beta
    }
}

/// Per-mode result of an operator applied to `sin(kx)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModalValue {
    pub multiplier: f64,
    pub parity: Parity,
}

impl ModalValue {
    /// Same operator applied to an input of the given parity. Odd operators
    /// acting on `cos(kx)` pick up a minus sign.
    pub fn on_input(self, input: Parity) -> ModalValue {
        let odd = self.parity == Parity::Cosine;
        match (input, odd) {
            (Parity::Sine, _) => self,
            (Parity::Cosine, false) => ModalValue {
                multiplier: self.multiplier,
                parity: Parity::Cosine,
            },
            (Parity::Cosine, true) => ModalValue {
                multiplier: -self.multiplier,
                parity: Parity::Sine,
            },
        }
    }
}

/// The four Vlasov quantities: `U = G u`, `V = G v`, `Y = sigma_y`, `X = tau_xy`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Component {
    U,
    V,
    Y,
    X,
}

impl Component {
    pub const ALL: [Component; 4] = [Component::U, Component::V, Component::Y, Component::X];

    /// x-parity of this quantity in the stamp problem (`V_h` expanded in sines).
    pub fn parity(self) -> Parity {
        match self {
            Component::U | Component::X => Parity::Cosine,
            Component::V | Component::Y => Parity::Sine,
        }
    }
}

/// The harmonic building blocks `B10 .. B17` applied to `V_h`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Block {
    /// `sin(y a) / sin(h a)`
    B10,
    /// `cos(y a) / sin(h a)`
    B11,
    /// `a sin(y a) / sin(h a)`
    B12,
    /// `a cos(y a) / sin(h a)`
    B13,
    /// `a^2 sin(y a) / sin(h a)`
    B14,
    /// `a^2 cos(y a) / sin(h a)`
    B15,
    /// `a cos(h a) cos(y a) / sin^2(h a)`
    B16,
    /// `a^2 cos(h a) cos(y a) / sin^2(h a)`
    B17,
}

impl Block {
    pub const ALL: [Block; 8] = [
        Block::B10,
        Block::B11,
        Block::B12,
        Block::B13,
        Block::B14,
        Block::B15,
        Block::B16,
        Block::B17,
    ];
}

/// Every operator the solver knows: the sixteen `L` operators, the four
/// `A` operators for `sigma_x`, and the eight building blocks.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum OperatorId {
    /// `L(field, initial)`, e.g. `L(U, Y)` is `L_UY`.
    L(Component, Component),
    /// `A(initial)`: contribution of an initial function to `sigma_x`.
    A(Component),
    Block(Block),
}

impl OperatorId {
    /// All 28 operators.
    pub fn all() -> Vec<OperatorId> {
        let mut v = Vec::with_capacity(28);
        for f in Component::ALL {
            for i in Component::ALL {
                v.push(OperatorId::L(f, i));
            }
        }
        v.extend(Component::ALL.map(OperatorId::A));
        v.extend(Block::ALL.map(OperatorId::Block));
        v
    }

    /// Odd operators flip the x-parity.
    pub fn is_odd(self) -> bool {
        use Component::*;
        match self {
            OperatorId::L(f, i) => f.parity() != i.parity(),
            // sigma_x has sine parity like V and Y
            OperatorId::A(i) => matches!(i, U | X),
            OperatorId::Block(b) => matches!(b, Block::B11 | Block::B12 | Block::B15 | Block::B16),
        }
    }

    pub fn label(self) -> String {
        fn c(x: Component) -> char {
            match x {
                Component::U => 'U',
                Component::V => 'V',
                Component::Y => 'Y',
                Component::X => 'X',
            }
        }
        match self {
            OperatorId::L(f, i) => format!("L_{}{}", c(f), c(i)),
            OperatorId::A(i) => format!("A_{}", c(i)),
            OperatorId::Block(b) => format!("{b:?}"),
        }
    }

    /// Evaluates any operator; building blocks ignore `mat`.
    pub fn evaluate(
        self,
        mode: &ModeIndex,
        y: f64,
        geom: &Geometry,
        mat: &Material,
    ) -> Result<ModalValue> {
        match self {
            OperatorId::Block(b) => building_block(b, mode, y, geom),
            op => vlasov_operator(op, mode, y, geom, mat),
        }
    }
}

/// Which hyperbolic ratio [`stable_ratio`] computes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RatioKind {
    /// `sh(a) / sh(b)`
    ShSh,
    /// `ch(a) / sh(b)`
    ChSh,
    /// `ch(a) ch(b) / sh(b)^2`
    ChChShSh,
}

/// Hyperbolic ratios in exponential form; `sh(x)` is never formed.
pub fn stable_ratio(kind: RatioKind, a: f64, b: f64) -> Result<f64> {
    if !(b > 0.0) || !a.is_finite() || !b.is_finite() {
        return Err(Error::SingularRatio(b));
    }
    Ok(match kind {
        RatioKind::ShSh => sh_sh(a, b),
        RatioKind::ChSh => ch_sh(a, b),
        RatioKind::ChChShSh => chch_shsh(a, b),
    })
}

// sh(a)/sh(b) = e^{|a|-b} (1 - e^{-2|a|}) / (1 - e^{-2b}), odd in a.
#[inline]
pub(crate) fn sh_sh(a: f64, b: f64) -> f64 {
    let m = a.abs();
    let r = (m - b).exp() * (-(-2.0 * m).exp_m1()) / (-(-2.0 * b).exp_m1());
    r.copysign(a)
}

#[inline]
pub(crate) fn ch_sh(a: f64, b: f64) -> f64 {
    let m = a.abs();
    (m - b).exp() * (1.0 + (-2.0 * m).exp()) / (-(-2.0 * b).exp_m1())
}

#[inline]
pub(crate) fn chch_shsh(a: f64, b: f64) -> f64 {
    ch_sh(a, b) * ch_sh(b, b)
}

/// `(ch(b) - eta sh(b)) / sh(b)` without cancellation for large `b`.
#[inline]
pub(crate) fn coth_minus(eta: f64, b: f64) -> f64 {
    ((1.0 - eta) + (1.0 + eta) * (-2.0 * b).exp()) / (-(-2.0 * b).exp_m1())
}

/// `e^{-shift} sh(a)` and `e^{-shift} ch(a)`.
#[inline]
fn sh_ch_scaled(a: f64, shift: f64) -> (f64, f64) {
    let p = (a - shift).exp();
    let m = (-a - shift).exp();
    (0.5 * (p - m), 0.5 * (p + m))
}

/// Per-mode multiplier of a building block (input `sin(kx)`), infallible core.
pub(crate) fn block_multiplier(block: Block, k: f64, y: f64, h: f64) -> ModalValue {
    let (ky, kh) = (k * y, k * h);
    let (m, p) = match block {
        Block::B10 => (sh_sh(ky, kh), Parity::Sine),
        Block::B11 => (-ch_sh(ky, kh), Parity::Cosine),
        Block::B12 => (k * sh_sh(ky, kh), Parity::Cosine),
        Block::B13 => (k * ch_sh(ky, kh), Parity::Sine),
        Block::B14 => (-k * k * sh_sh(ky, kh), Parity::Sine),
        Block::B15 => (k * k * ch_sh(ky, kh), Parity::Cosine),
        Block::B16 => (-k * chch_shsh(ky, kh), Parity::Cosine),
        Block::B17 => (k * k * chch_shsh(ky, kh), Parity::Sine),
    };
    ModalValue {
        multiplier: m,
        parity: p,
    }
}

/// Building block `block` on mode `sin(kx)` at height `y`.
pub fn building_block(
    block: Block,
    mode: &ModeIndex,
    y: f64,
    geom: &Geometry,
) -> Result<ModalValue> {
    check_y(y, geom)?;
    Ok(block_multiplier(block, mode.k(), y, geom.height()))
}

/// Which printing of the operator table to use.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TableForm {
    /// Entries that satisfy equilibrium and Hooke's law column by column.
    Consistent,
    /// As typeset: `L_UX` with `- y cos(a y)/(4(1-nu))` and `L_YV` with the
    /// opposite overall sign. Kept for the discrepancy report.
    AsPrinted,
}

/// Operator-table multiplier times `e^{-shift}`, input `sin(kx)`.
///
/// With `q = 1 - nu`, `t = k y`, `s = sh(ky)`, `c = ch(ky)`:
///
/// | op | multiplier | parity |
/// |----|-----------|--------|
/// | L_UU, L_XX | `c + t s/(2q)` | even |
/// | L_UV, L_YX | `-((1-2nu) s + t c)/(2q)` | odd |
/// | L_UY, L_VX | `-y s/(4q)` | odd |
/// | L_UX | `((3-4nu) s/k + y c)/(4q)` | even |
/// | L_VU, L_XY | `((1-2nu) s - t c)/(2q)` | odd |
/// | L_VV, L_YY | `c - t s/(2q)` | even |
/// | L_VY | `((3-4nu) s/k - y c)/(4q)` | even |
/// | L_YU, L_XV | `-k t s/q` | odd |
/// | L_YV | `k (s - t c)/q` | even |
/// | L_XU, A_V | `k (s + t c)/q` | even |
/// | A_U | `k (2c + t s)/q` | odd |
/// | A_Y | `nu c/q + t s/(2q)` | even |
/// | A_X | `(t c + (3-2nu) s)/(2q)` | odd |
pub(crate) fn table_multiplier(
    op: OperatorId,
    k: f64,
    y: f64,
    nu: f64,
    shift: f64,
    form: TableForm,
) -> ModalValue {
    use Component::*;
    let q = 1.0 - nu;
    let t = k * y;
    let (s, c) = sh_ch_scaled(t, shift);
    let m = match op {
        OperatorId::L(U, U) | OperatorId::L(X, X) => c + t * s / (2.0 * q),
        OperatorId::L(U, V) | OperatorId::L(Y, X) => -((1.0 - 2.0 * nu) * s + t * c) / (2.0 * q),
        OperatorId::L(U, Y) | OperatorId::L(V, X) => -y * s / (4.0 * q),
        OperatorId::L(U, X) => match form {
            TableForm::Consistent => ((3.0 - 4.0 * nu) * s / k + y * c) / (4.0 * q),
            TableForm::AsPrinted => ((3.0 - 4.0 * nu) * s / k - y * c) / (4.0 * q),
        },
        OperatorId::L(V, U) | OperatorId::L(X, Y) => ((1.0 - 2.0 * nu) * s - t * c) / (2.0 * q),
        OperatorId::L(V, V) | OperatorId::L(Y, Y) => c - t * s / (2.0 * q),
        OperatorId::L(V, Y) => ((3.0 - 4.0 * nu) * s / k - y * c) / (4.0 * q),
        OperatorId::L(Y, U) | OperatorId::L(X, V) => -k * t * s / q,
        OperatorId::L(Y, V) => match form {
            TableForm::Consistent => k * (s - t * c) / q,
            TableForm::AsPrinted => k * (t * c - s) / q,
        },
        OperatorId::L(X, U) | OperatorId::A(V) => k * (s + t * c) / q,
        OperatorId::A(U) => k * (2.0 * c + t * s) / q,
        OperatorId::A(Y) => nu * c / q + t * s / (2.0 * q),
        OperatorId::A(X) => (t * c + (3.0 - 2.0 * nu) * s) / (2.0 * q),
        OperatorId::Block(_) => unreachable!("building blocks are not table operators"),
    };
    let parity = if op.is_odd() { Parity::Cosine } else { Parity::Sine };
    ModalValue {
        multiplier: m,
        parity,
    }
}

/// Operator-table entry on mode `sin(kx)` at height `y`.
pub fn vlasov_operator(
    op: OperatorId,
    mode: &ModeIndex,
    y: f64,
    geom: &Geometry,
    mat: &Material,
) -> Result<ModalValue> {
    vlasov_operator_scaled(op, mode, y, geom, mat, 0.0)
}

/// As [`vlasov_operator`], multiplied by `e^{-shift}`. A shift of `k h`
/// keeps every entry bounded on `0 <= y <= h` for any mode number.
pub fn vlasov_operator_scaled(
    op: OperatorId,
    mode: &ModeIndex,
    y: f64,
    geom: &Geometry,
    mat: &Material,
    shift: f64,
) -> Result<ModalValue> {
    if let OperatorId::Block(_) = op {
        return Err(Error::Domain(format!("{} is not an operator-table entry", op.label())));
    }
    check_y(y, geom)?;
    let v = table_multiplier(op, mode.k(), y, mat.poisson(), shift, TableForm::Consistent);
    if !v.multiplier.is_finite() {
        return Err(Error::NonFinite {
            what: "operator multiplier (use a shift for large k y)",
            value: v.multiplier,
        });
    }
    Ok(v)
}

/// The typeset form of a table entry, for the discrepancy report.
pub fn vlasov_operator_as_printed(
    op: OperatorId,
    mode: &ModeIndex,
    y: f64,
    geom: &Geometry,
    mat: &Material,
) -> Result<ModalValue> {
    if let OperatorId::Block(_) = op {
        return Err(Error::Domain(format!("{} is not an operator-table entry", op.label())));
    }
    check_y(y, geom)?;
    Ok(table_multiplier(op, mode.k(), y, mat.poisson(), 0.0, TableForm::AsPrinted))
}

fn check_y(y: f64, geom: &Geometry) -> Result<()> {
    let h = geom.height();
    if !(y >= 0.0 && y <= h * (1.0 + 1e-14)) {
        return Err(Error::Domain(format!("y = {y} outside [0, {h}]")));
    }
    Ok(())
}
