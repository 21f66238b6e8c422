//! Traits tying systems and potentials to the estimators.

use crate::error::{Error, Result};
use crate::point::Point;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SpaceKind {
    Torus { dim: usize },
    Shift { alphabet: usize },
}

impl std::fmt::Display for SpaceKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            SpaceKind::Torus { dim } => write!(f, "T^{dim}"),
            SpaceKind::Shift { alphabet } => write!(f, "shift({alphabet})"),
        }
    }
}

pub trait DynamicalSystem: Sync {
    fn space(&self) -> SpaceKind;

    /// Stable identifier echoed into reports and manifests.
    fn id(&self) -> String;

    fn validate_point(&self, x: &Point) -> Result<()>;

    fn forward(&self, x: &Point) -> Result<Point>;

    /// One-step preimages in canonical order: coset index on the torus,
    /// symbol order on shifts. Downstream determinism (thread-count
    /// independence of tree reductions) rests on this order being fixed.
    fn preimages(&self, x: &Point) -> Result<Vec<Point>>;

    /// Upper bound for the preimage count of any single point.
    fn max_degree(&self) -> usize;

    /// How many solutions fⁿ(y) = y has, without enumerating them.
    fn count_fixed_points(&self, n: usize) -> Result<f64>;

    /// All solutions of fⁿ(y) = y, in canonical order. Refuses counts above
    /// `cap` unless `force`.
    fn fixed_points(&self, n: usize, cap: u64, force: bool) -> Result<Vec<Point>>;
}

pub trait Potential: Sync {
    fn space(&self) -> SpaceKind;

    fn id(&self) -> String;

    fn eval(&self, x: &Point) -> Result<f64>;

    /// The common value when the potential is constant, None otherwise. Lets
    /// pressure estimates fall back to exact fixed-point counts and samplers
    /// pick the Haar shortcut on the torus.
    fn constant_value(&self) -> Option<f64>;

    fn is_constant(&self) -> bool {
        self.constant_value().is_some()
    }
}

pub fn check_compatible(sys: &dyn DynamicalSystem, phi: &dyn Potential) -> Result<()> {
    if sys.space() != phi.space() {
        return Err(Error::PhaseSpaceMismatch(format!(
            "system on {} but potential on {}",
            sys.space(),
            phi.space()
        )));
    }
    Ok(())
}

/// Forward orbit x, f(x), …, f^{n−1}(x).
pub fn orbit(sys: &dyn DynamicalSystem, x: &Point, n: usize) -> Result<Vec<Point>> {
    let mut out = Vec::with_capacity(n);
    let mut cur = x.clone();
    for _ in 0..n {
        let next = sys.forward(&cur)?;
        out.push(cur);
        cur = next;
    }
    Ok(out)
}

/// S_nφ(x) = φ(x) + φ(fx) + … + φ(f^{n−1}x).
pub fn birkhoff_sum(
    sys: &dyn DynamicalSystem,
    phi: &dyn Potential,
    x: &Point,
    n: usize,
) -> Result<f64> {
    let mut sum = 0.0;
    let mut cur = x.clone();
    for i in 0..n {
        sum += phi.eval(&cur)?;
        if i + 1 < n {
            cur = sys.forward(&cur)?;
        }
    }
    Ok(sum)
}
