//! Preimage-tree expansion of the n-step empirical approximations
//!
//!   μ_n^x = (1/n) Σ_{y ∈ f^{−n}x} w_y Σ_{i<n} δ_{f^i y},
//!   w_y = e^{S_nφ(y)} / Σ_z e^{S_nφ(z)}.
//!
//! Every tree node below the root carries one atom. For a node v at level ℓ
//! with ancestor potential prefix P(v) (levels 1..ℓ−1) and subtree weight
//! log R(v) = φ(v) + logsumexp over children, the atom weight is
//! exp(P(v) + log R(v) − log Z − log n). Leaves reduce to log W = S_nφ and
//! Z is the sum over the root's branches, so a single depth-first pass
//! computes everything in log space.
//!
//! Branches of the root run in parallel; inside a branch the walk is
//! sequential and results merge in branch order, so output is identical for
//! any thread count.

use rayon::prelude::*;

use crate::dynamics::{check_compatible, DynamicalSystem, Potential};
use crate::error::{Error, Result};
use crate::measure::AtomicMeasure;
use crate::point::Point;

#[derive(Clone, Copy, Debug)]
pub struct TreeOptions {
    /// Refuse expansions whose predicted leaf count exceeds this.
    pub leaf_cap: u64,
    /// Expand anyway.
    pub force: bool,
}

impl Default for TreeOptions {
    fn default() -> TreeOptions {
        TreeOptions {
            leaf_cap: 10_000_000,
            force: false,
        }
    }
}

pub(crate) fn logsumexp(xs: &[f64]) -> f64 {
    let m = xs.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    if m == f64::NEG_INFINITY || !m.is_finite() {
        return m;
    }
    m + xs.iter().map(|x| (x - m).exp()).sum::<f64>().ln()
}

fn check_cap(sys: &dyn DynamicalSystem, n: usize, opts: &TreeOptions) -> Result<()> {
    let predicted = (sys.max_degree() as f64).powi(n as i32);
    if !opts.force && predicted > opts.leaf_cap as f64 {
        return Err(Error::ResourceCap {
            requested: predicted,
            cap: opts.leaf_cap,
        });
    }
    Ok(())
}

/// Depth-first pass under one root branch. `prefix` is the potential sum over
/// strict ancestors of `point` below the root. Pushes (point, level, log W)
/// for every node visited and returns log R of `point`.
fn descend(
    sys: &dyn DynamicalSystem,
    phi: &dyn Potential,
    point: Point,
    level: usize,
    n: usize,
    prefix: f64,
    out: &mut Vec<(Point, usize, f64)>,
) -> Result<f64> {
    let phi_v = phi.eval(&point)?;
    if level == n {
        out.push((point, level, prefix + phi_v));
        return Ok(phi_v);
    }
    let children = sys.preimages(&point)?;
    let mut logrs = Vec::with_capacity(children.len());
    for c in children {
        logrs.push(descend(sys, phi, c, level + 1, n, prefix + phi_v, out)?);
    }
    let logr = phi_v + logsumexp(&logrs);
    out.push((point, level, prefix + logr));
    Ok(logr)
}

fn expand(
    sys: &dyn DynamicalSystem,
    phi: &dyn Potential,
    x: &Point,
    n: usize,
    opts: &TreeOptions,
) -> Result<(Vec<(Point, usize, f64)>, f64)> {
    check_compatible(sys, phi)?;
    sys.validate_point(x)?;
    if n == 0 {
        return Err(Error::InvalidMeasure(
            "preimage depth must be at least 1".into(),
        ));
    }
    check_cap(sys, n, opts)?;
    let branches = sys.preimages(x)?;
    if branches.is_empty() {
        return Err(Error::InvalidMeasure(format!("{x} has no preimages")));
    }
    let per_branch: Vec<(Vec<(Point, usize, f64)>, f64)> = branches
        .into_par_iter()
        .map(|b| {
            let mut out = Vec::new();
            let logr = descend(sys, phi, b, 1, n, 0.0, &mut out)?;
            Ok((out, logr))
        })
        .collect::<Result<_>>()?;
    let branch_logrs: Vec<f64> = per_branch.iter().map(|(_, r)| *r).collect();
    let logz = logsumexp(&branch_logrs);
    if !logz.is_finite() {
        return Err(Error::InvalidMeasure(format!(
            "degenerate partition sum {logz}"
        )));
    }
    let mut nodes = Vec::new();
    for (out, _) in per_branch {
        nodes.extend(out);
    }
    Ok((nodes, logz))
}

/// The measure μ_n^x itself. Atoms of equal points (shared forward orbits,
/// overlapping levels) are merged; the result is exactly normalized by
/// construction up to rounding.
pub fn weighted_preimage_measure(
    sys: &dyn DynamicalSystem,
    phi: &dyn Potential,
    x: &Point,
    n: usize,
    opts: &TreeOptions,
) -> Result<AtomicMeasure> {
    let (nodes, logz) = expand(sys, phi, x, n, opts)?;
    let log_n = (n as f64).ln();
    let atoms: Vec<(Point, f64)> = nodes
        .into_iter()
        .map(|(p, _, logw)| (p, (logw - logz - log_n).exp()))
        .collect();
    AtomicMeasure::new(atoms)
}

/// Leaves of the depth-n tree with their normalized weights w_y, in the
/// deterministic depth-first order induced by the system's preimage order.
pub fn preimage_leaf_weights(
    sys: &dyn DynamicalSystem,
    phi: &dyn Potential,
    x: &Point,
    n: usize,
    opts: &TreeOptions,
) -> Result<Vec<(Point, f64)>> {
    let (nodes, logz) = expand(sys, phi, x, n, opts)?;
    Ok(nodes
        .into_iter()
        .filter(|(_, level, _)| *level == n)
        .map(|(p, _, logw)| (p, (logw - logz).exp()))
        .collect())
}
