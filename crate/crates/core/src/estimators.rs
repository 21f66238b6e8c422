//! Convergence estimators built on the preimage tree and the periodic-point
//! enumeration: measures supported on Fix(fⁿ), pressure estimates, Birkhoff
//! deviations, and the averaged statistics behind the convergence reports.

use std::f64::consts::TAU;

use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::dynamics::{
    birkhoff_sum, check_compatible, orbit, DynamicalSystem, Potential, SpaceKind,
};
use crate::error::{Error, Result};
use crate::measure::{weak_star_distance, AtomicMeasure, Pairing, TestDictionary, TestFunction};
use crate::point::Point;
use crate::rat::Rat;
use crate::tree::{logsumexp, weighted_preimage_measure, TreeOptions};

/// Measure on Fix(fⁿ) with weights proportional to e^{S_nφ}.
pub fn periodic_point_measure(
    sys: &dyn DynamicalSystem,
    phi: &dyn Potential,
    n: usize,
    cap: u64,
    force: bool,
) -> Result<AtomicMeasure> {
    check_compatible(sys, phi)?;
    if n == 0 {
        return Err(Error::InvalidMeasure("period must be at least 1".into()));
    }
    let points = sys.fixed_points(n, cap, force)?;
    if points.is_empty() {
        return Err(Error::InvalidMeasure(format!("no period-{n} points")));
    }
    let logw: Vec<f64> = points
        .iter()
        .map(|y| birkhoff_sum(sys, phi, y, n))
        .collect::<Result<_>>()?;
    let logz = logsumexp(&logw);
    AtomicMeasure::new(
        points
            .into_iter()
            .zip(logw)
            .map(|(p, lw)| (p, (lw - logz).exp()))
            .collect(),
    )
}

/// (1/n)·log Σ_{Fix(fⁿ)} e^{S_nφ}. Constant potentials reduce to the exact
/// fixed-point count, so no enumeration happens and caps never trigger.
pub fn pressure_estimate(
    sys: &dyn DynamicalSystem,
    phi: &dyn Potential,
    n: usize,
    cap: u64,
    force: bool,
) -> Result<f64> {
    check_compatible(sys, phi)?;
    if n == 0 {
        return Err(Error::InvalidMeasure("period must be at least 1".into()));
    }
    if let Some(c) = phi.constant_value() {
        let count = sys.count_fixed_points(n)?;
        if count < 1.0 {
            return Err(Error::InvalidMeasure(format!("no period-{n} points")));
        }
        return Ok(c + count.ln() / n as f64);
    }
    let points = sys.fixed_points(n, cap, force)?;
    if points.is_empty() {
        return Err(Error::InvalidMeasure(format!("no period-{n} points")));
    }
    let logw: Vec<f64> = points
        .iter()
        .map(|y| birkhoff_sum(sys, phi, y, n))
        .collect::<Result<_>>()?;
    Ok(logsumexp(&logw) / n as f64)
}

/// Signed deviation (1/n)·Σ_{i<n} g(f^i y) − I, where I is the reference mean
/// of g supplied by an oracle.
pub fn birkhoff_deviation(
    sys: &dyn DynamicalSystem,
    oracle_value: f64,
    g: &TestFunction,
    y: &Point,
    n: usize,
) -> Result<f64> {
    if n == 0 {
        return Err(Error::InvalidMeasure(
            "deviation needs at least one step".into(),
        ));
    }
    sys.validate_point(y)?;
    let mut sum = 0.0;
    for p in orbit(sys, y, n)? {
        sum += g.eval(&p)?;
    }
    Ok(sum / n as f64 - oracle_value)
}

/// (1/N)·Σ_j |μ_n^{x_j}(g) − I| over the given sample points.
pub fn l1_convergence_statistic(
    sys: &dyn DynamicalSystem,
    phi: &dyn Potential,
    g: &TestFunction,
    oracle_value: f64,
    samples: &[Point],
    n: usize,
    opts: &TreeOptions,
) -> Result<f64> {
    if samples.is_empty() {
        return Err(Error::InvalidMeasure(
            "statistic needs at least one sample".into(),
        ));
    }
    let errs: Vec<f64> = samples
        .par_iter()
        .map(|x| {
            let mu = weighted_preimage_measure(sys, phi, x, n, opts)?;
            Ok((mu.integrate(g)? - oracle_value).abs())
        })
        .collect::<Result<_>>()?;
    Ok(errs.iter().sum::<f64>() / errs.len() as f64)
}

/// Largest Fourier modulus max |c_k(μ)| over 0 < |k|∞ ≤ radius. One
/// representative per ±k pair suffices since the moduli agree.
pub fn max_fourier_modulus(mu: &AtomicMeasure, dim: usize, radius: i64) -> Result<f64> {
    if radius < 1 {
        return Err(Error::Parse("frequency radius must be at least 1".into()));
    }
    let atoms: Vec<(Vec<f64>, f64)> = mu
        .atoms()
        .iter()
        .map(|(p, w)| match p.coords_f64() {
            Some(c) if c.len() == dim => Ok((c, *w)),
            Some(c) => Err(Error::DimensionMismatch {
                expected: dim,
                got: c.len(),
            }),
            None => Err(Error::InvalidMeasure(
                "fourier modulus needs torus atoms".into(),
            )),
        })
        .collect::<Result<_>>()?;
    let mut best = 0.0f64;
    let mut k = vec![-radius; dim];
    loop {
        if k.iter().any(|&v| v != 0) && k.iter().find(|&&v| v != 0) > Some(&0) {
            let (mut re, mut im) = (0.0f64, 0.0f64);
            for (c, w) in &atoms {
                let dot: f64 = c.iter().zip(&k).map(|(x, &f)| x * f as f64).sum();
                let (s, co) = (-TAU * dot).sin_cos();
                re += w * co;
                im += w * s;
            }
            best = best.max(re.hypot(im));
        }
        let mut i = 0;
        loop {
            if i == dim {
                return Ok(best);
            }
            k[i] += 1;
            if k[i] <= radius {
                break;
            }
            k[i] = -radius;
            i += 1;
        }
    }
}

/// Per-n weak-* distances of μ_n^z from the oracle over a dictionary.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ConvergenceReport {
    pub system_id: String,
    pub g_id: String,
    pub sampling: String,
    pub samples: usize,
    /// (n, statistic) rows with strictly increasing n.
    pub rows: Vec<(usize, f64)>,
    pub tolerance: Option<f64>,
    /// Whether the minimum over the rows beat the tolerance. Certifies that a
    /// good n exists in the list, nothing about monotonicity.
    pub achieved: Option<bool>,
}

impl ConvergenceReport {
    pub fn validate(&self) -> Result<()> {
        if self.rows.is_empty() {
            return Err(Error::Parse("report has no rows".into()));
        }
        for pair in self.rows.windows(2) {
            if pair[1].0 <= pair[0].0 {
                return Err(Error::Parse(format!(
                    "depths must increase strictly, got {} then {}",
                    pair[0].0, pair[1].0
                )));
            }
        }
        if let Some((n, v)) = self.rows.iter().find(|(_, v)| !v.is_finite()) {
            return Err(Error::Parse(format!("statistic at n={n} is {v}")));
        }
        Ok(())
    }

    pub fn min_value(&self) -> f64 {
        self.rows
            .iter()
            .map(|(_, v)| *v)
            .fold(f64::INFINITY, f64::min)
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("n,statistic,g_id,samples\n");
        for (n, v) in &self.rows {
            out.push_str(&format!("{n},{v},{},{}\n", self.g_id, self.samples));
        }
        out
    }

    pub fn to_json(&self) -> Result<String> {
        serde_json::to_string_pretty(self).map_err(|e| Error::Parse(e.to_string()))
    }
}

/// weak_star_distance(μ_n^z, oracle, dict) for each n in the list.
pub fn pointwise_sequence(
    sys: &dyn DynamicalSystem,
    phi: &dyn Potential,
    z: &Point,
    oracle: &dyn Pairing,
    dict: &TestDictionary,
    n_list: &[usize],
    tolerance: Option<f64>,
    opts: &TreeOptions,
) -> Result<ConvergenceReport> {
    if n_list.is_empty() {
        return Err(Error::Parse("depth list is empty".into()));
    }
    for pair in n_list.windows(2) {
        if pair[1] <= pair[0] {
            return Err(Error::Parse("depth list must increase strictly".into()));
        }
    }
    let values: Vec<f64> = n_list
        .par_iter()
        .map(|&n| {
            let mu = weighted_preimage_measure(sys, phi, z, n, opts)?;
            weak_star_distance(&mu, oracle, dict)
        })
        .collect::<Result<_>>()?;
    let rows: Vec<(usize, f64)> = n_list.iter().copied().zip(values).collect();
    let report = ConvergenceReport {
        system_id: sys.id(),
        g_id: dict.label().to_string(),
        sampling: format!("fixed({z})"),
        samples: 1,
        achieved: tolerance.map(|t| rows.iter().any(|(_, v)| *v < t)),
        rows,
        tolerance,
    };
    report.validate()?;
    Ok(report)
}

/// How starting points are drawn for the averaged statistics.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum PointSampler {
    /// Exact rationals with denominator 2^denom_bits, coordinatewise uniform.
    /// Matches the equilibrium state only when it is Haar (constant φ).
    UniformRationalTorus { denom_bits: u32 },
    /// Draws from the periodic-point measure at the given depth.
    PeriodicGibbs { depth: usize },
    /// A user-supplied list, consumed from the front.
    Fixed { points: Vec<Point> },
}

impl PointSampler {
    pub fn label(&self) -> String {
        match self {
            PointSampler::UniformRationalTorus { denom_bits } => {
                format!("uniform_rational(bits={denom_bits})")
            }
            PointSampler::PeriodicGibbs { depth } => format!("periodic_gibbs(depth={depth})"),
            PointSampler::Fixed { points } => format!("fixed({} points)", points.len()),
        }
    }

    pub fn sample(
        &self,
        sys: &dyn DynamicalSystem,
        phi: &dyn Potential,
        count: usize,
        seed: u64,
        opts: &TreeOptions,
    ) -> Result<Vec<Point>> {
        if count == 0 {
            return Err(Error::InvalidMeasure(
                "sample count must be at least 1".into(),
            ));
        }
        match self {
            PointSampler::UniformRationalTorus { denom_bits } => {
                if *denom_bits == 0 || *denom_bits > 32 {
                    return Err(Error::Parse(format!(
                        "denominator bits {denom_bits} outside 1..=32"
                    )));
                }
                let SpaceKind::Torus { dim } = sys.space() else {
                    return Err(Error::PhaseSpaceMismatch(
                        "uniform rational sampling needs a torus system".into(),
                    ));
                };
                let den = 1u64 << denom_bits;
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                Ok((0..count)
                    .map(|_| {
                        let coords = (0..dim)
                            .map(|_| {
                                Rat::new(BigInt::from(rng.gen_range(0..den)), BigInt::from(den))
                            })
                            .collect();
                        Point::torus(coords)
                    })
                    .collect())
            }
            PointSampler::PeriodicGibbs { depth } => {
                let nu = periodic_point_measure(sys, phi, *depth, opts.leaf_cap, opts.force)?;
                let mut cumulative = Vec::with_capacity(nu.len());
                let mut acc = 0.0;
                for (_, w) in nu.atoms() {
                    acc += w;
                    cumulative.push(acc);
                }
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                Ok((0..count)
                    .map(|_| {
                        let u = rng.gen::<f64>();
                        let idx = cumulative.partition_point(|c| *c <= u).min(nu.len() - 1);
                        nu.atoms()[idx].0.clone()
                    })
                    .collect())
            }
            PointSampler::Fixed { points } => {
                if points.len() < count {
                    return Err(Error::InvalidPoint(format!(
                        "fixed sampler holds {} points, {count} requested",
                        points.len()
                    )));
                }
                let chosen = &points[..count];
                for p in chosen {
                    sys.validate_point(p)?;
                }
                Ok(chosen.to_vec())
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::measure::{CharacterPart, WeightScheme};
    use crate::oracle::{HaarOracle, MarkovOracle};
    use crate::shift::{LocallyConstantPotential, ShiftSystem};
    use crate::torus::{TorusEndomorphism, TrigScalar};
    use crate::tree::preimage_leaf_weights;

    fn full2() -> ShiftSystem {
        ShiftSystem::full_shift(2).unwrap()
    }

    fn beta_pot(sys: &ShiftSystem) -> LocallyConstantPotential {
        let beta = 3.0f64.ln();
        LocallyConstantPotential::from_fn(sys, 1, |w| if w[0] == 1 { beta } else { 0.0 }).unwrap()
    }

    fn cat_map() -> TorusEndomorphism {
        TorusEndomorphism::linear(&[vec![2, 1], vec![1, 1]]).unwrap()
    }

    #[test]
    fn single_step_tree_splits_evenly() {
        let sys = full2();
        let phi = LocallyConstantPotential::zero(&sys);
        let x = Point::periodic(&[0]).unwrap();
        let mu = weighted_preimage_measure(&sys, &phi, &x, 1, &TreeOptions::default()).unwrap();
        assert_eq!(mu.len(), 2);
        assert_eq!(mu.weight_at(&Point::periodic(&[0]).unwrap()), 0.5);
        assert_eq!(mu.weight_at(&Point::shift(vec![1], vec![0]).unwrap()), 0.5);
    }

    #[test]
    fn invertible_torus_collapses_to_the_backward_orbit() {
        let sys = cat_map();
        let phi = TrigScalar::new(2, 0.0, vec![(vec![1, 0], 0.3, 0.0)]).unwrap();
        let x = Point::torus(vec![
            crate::rat::rat_from_i64(1, 7),
            crate::rat::rat_from_i64(2, 7),
        ]);
        let mu = weighted_preimage_measure(&sys, &phi, &x, 4, &TreeOptions::default()).unwrap();
        assert_eq!(mu.len(), 4);
        for (_, w) in mu.atoms() {
            assert!((w - 0.25).abs() < 1e-12);
        }
    }

    #[test]
    fn two_step_beta_leaf_carries_the_squared_row_weight() {
        let sys = full2();
        let phi = beta_pot(&sys);
        let x = Point::periodic(&[0]).unwrap();
        let leaves = preimage_leaf_weights(&sys, &phi, &x, 2, &TreeOptions::default()).unwrap();
        let mut seen = 0;
        for (leaf, w) in leaves {
            if leaf.prefix(2).unwrap() == vec![1, 1] {
                assert!((w - 0.5625).abs() < 1e-12);
                seen += 1;
            }
        }
        assert_eq!(seen, 1);
    }

    #[test]
    fn periodic_measure_is_uniform_on_five_points() {
        let sys = cat_map();
        let phi = TrigScalar::zero(2);
        let nu = periodic_point_measure(&sys, &phi, 2, 1_000_000, false).unwrap();
        assert_eq!(nu.len(), 5);
        for (_, w) in nu.atoms() {
            assert!((w - 0.2).abs() < 1e-14);
        }
        assert!(nu.weight_at(&Point::torus_i64(&[(0, 1), (0, 1)])) > 0.19);
    }

    #[test]
    fn periodic_measure_uniform_on_eight_circular_words() {
        let sys = full2();
        let phi = LocallyConstantPotential::zero(&sys);
        let nu = periodic_point_measure(&sys, &phi, 3, 1_000_000, false).unwrap();
        assert_eq!(nu.len(), 8);
        for (_, w) in nu.atoms() {
            assert!((w - 0.125).abs() < 1e-14);
        }
    }

    #[test]
    fn expanding_matrix_with_unit_cofixed_determinant() {
        let sys = TorusEndomorphism::linear(&[vec![0, -2], vec![1, 4]]).unwrap();
        let phi = TrigScalar::zero(2);
        let nu = periodic_point_measure(&sys, &phi, 1, 1_000_000, false).unwrap();
        assert_eq!(nu.len(), 1);
        assert_eq!(nu.weight_at(&Point::torus_i64(&[(0, 1), (0, 1)])), 1.0);
    }

    #[test]
    fn pressure_of_the_full_shift_is_log_two() {
        let sys = full2();
        let phi = LocallyConstantPotential::zero(&sys);
        for n in 1..=6 {
            let p = pressure_estimate(&sys, &phi, n, 1_000_000, false).unwrap();
            assert!((p - 2.0f64.ln()).abs() < 1e-12);
        }
    }

    #[test]
    fn pressure_from_exact_counts() {
        let sys = TorusEndomorphism::linear(&[vec![0, -2], vec![1, 4]]).unwrap();
        let phi = TrigScalar::zero(2);
        let p = pressure_estimate(&sys, &phi, 3, 1_000_000, false).unwrap();
        assert!((p - 31.0f64.ln() / 3.0).abs() < 1e-12);
    }

    #[test]
    fn golden_mean_pressure_converges_by_depth_twenty() {
        let sys = ShiftSystem::golden_mean();
        let phi = LocallyConstantPotential::zero(&sys);
        let p = pressure_estimate(&sys, &phi, 20, 1_000_000, false).unwrap();
        let target = ((1.0 + 5.0f64.sqrt()) / 2.0).ln();
        assert!((p - target).abs() < 0.02);
    }

    #[test]
    fn nonconstant_pressure_matches_the_factorized_value() {
        let sys = full2();
        let phi = beta_pot(&sys);
        for n in 1..=8 {
            let p = pressure_estimate(&sys, &phi, n, 1_000_000, false).unwrap();
            assert!((p - 4.0f64.ln()).abs() < 1e-12, "n={n}: {p}");
        }
    }

    #[test]
    fn nonconstant_pressure_matches_a_transfer_trace() {
        let sys = ShiftSystem::golden_mean();
        let phi =
            LocallyConstantPotential::from_fn(&sys, 2, |w| 0.4 * w[0] as f64 - 0.9 * w[1] as f64)
                .unwrap();
        let mut m = [[0.0f64; 2]; 2];
        for a in 0..2usize {
            for b in 0..2usize {
                if sys.allowed(a as u8, b as u8) {
                    m[a][b] = (0.4 * a as f64 - 0.9 * b as f64).exp();
                }
            }
        }
        let n = 7;
        let mut acc = [[1.0, 0.0], [0.0, 1.0]];
        for _ in 0..n {
            let mut next = [[0.0; 2]; 2];
            for i in 0..2 {
                for j in 0..2 {
                    for k in 0..2 {
                        next[i][j] += acc[i][k] * m[k][j];
                    }
                }
            }
            acc = next;
        }
        let trace = acc[0][0] + acc[1][1];
        let p = pressure_estimate(&sys, &phi, n, 1_000_000, false).unwrap();
        assert!((p - trace.ln() / n as f64).abs() < 1e-10);
    }

    #[test]
    fn deviation_vanishes_on_balanced_orbits() {
        let sys = full2();
        let y = Point::periodic(&[0, 1]).unwrap();
        let g = TestFunction::cylinder(vec![0]);
        let d10 = birkhoff_deviation(&sys, 0.5, &g, &y, 10).unwrap();
        assert!(d10.abs() < 1e-15);
        let d7 = birkhoff_deviation(&sys, 0.5, &g, &y, 7).unwrap();
        assert!((d7 - (4.0 / 7.0 - 0.5)).abs() < 1e-15);
    }

    #[test]
    fn deviation_of_a_character_at_the_origin() {
        let sys = cat_map();
        let g = TestFunction::character(vec![1, 0], CharacterPart::Re);
        let y = Point::torus_i64(&[(0, 1), (0, 1)]);
        for n in [1, 3, 9] {
            let d = birkhoff_deviation(&sys, 0.0, &g, &y, n).unwrap();
            assert!((d - 1.0).abs() < 1e-15);
        }
    }

    #[test]
    fn l1_statistic_vanishes_when_the_tree_mean_is_exact() {
        let sys = full2();
        let phi = LocallyConstantPotential::zero(&sys);
        let g = TestFunction::cylinder(vec![0]);
        let samples = vec![Point::periodic(&[0]).unwrap()];
        let v = l1_convergence_statistic(&sys, &phi, &g, 0.5, &samples, 1, &TreeOptions::default())
            .unwrap();
        assert!(v.abs() < 1e-15);
    }

    #[test]
    fn l1_statistic_with_constant_g_is_zero() {
        let sys = full2();
        let phi = beta_pot(&sys);
        let g = TestFunction::constant();
        let samples = vec![
            Point::periodic(&[0]).unwrap(),
            Point::periodic(&[1]).unwrap(),
            Point::periodic(&[0, 1]).unwrap(),
        ];
        let v = l1_convergence_statistic(&sys, &phi, &g, 1.0, &samples, 3, &TreeOptions::default())
            .unwrap();
        assert!(v.abs() < 1e-12);
    }

    #[test]
    fn pointwise_distances_decrease_on_the_full_shift() {
        let sys = full2();
        let phi = LocallyConstantPotential::zero(&sys);
        let oracle = MarkovOracle::new(&sys, &phi).unwrap();
        let dict = TestDictionary::cylinders(sys.words_up_to(2), WeightScheme::Uniform).unwrap();
        let z = Point::periodic(&[0]).unwrap();
        let report = pointwise_sequence(
            &sys,
            &phi,
            &z,
            &oracle,
            &dict,
            &[4, 8, 12],
            Some(0.1),
            &TreeOptions::default(),
        )
        .unwrap();
        assert_eq!(report.rows.len(), 3);
        assert!(report.rows[1].1 < report.rows[0].1);
        assert!(report.rows[2].1 < report.rows[1].1);
        assert_eq!(report.achieved, Some(true));
    }

    #[test]
    fn pointwise_on_a_fixed_point_stabilizes_at_its_discrepancy() {
        let sys = cat_map();
        let phi = TrigScalar::zero(2);
        let oracle = HaarOracle::new(2);
        let dict = TestDictionary::torus_characters(2, 1, WeightScheme::Uniform).unwrap();
        let z = Point::torus_i64(&[(0, 1), (0, 1)]);
        let report = pointwise_sequence(
            &sys,
            &phi,
            &z,
            &oracle,
            &dict,
            &[1, 2, 3],
            Some(0.5),
            &TreeOptions::default(),
        )
        .unwrap();
        for (_, v) in &report.rows {
            assert!((v - 1.0).abs() < 1e-15);
        }
        assert_eq!(report.achieved, Some(false));
    }

    #[test]
    fn pointwise_with_only_the_constant_function_is_zero() {
        let sys = cat_map();
        let phi = TrigScalar::zero(2);
        let oracle = HaarOracle::new(2);
        let dict = TestDictionary::constant();
        let z = Point::torus(vec![
            crate::rat::rat_from_i64(1, 3),
            crate::rat::rat_from_i64(1, 5),
        ]);
        let report = pointwise_sequence(
            &sys,
            &phi,
            &z,
            &oracle,
            &dict,
            &[2, 4],
            None,
            &TreeOptions::default(),
        )
        .unwrap();
        for (_, v) in &report.rows {
            assert!(v.abs() < 1e-12);
        }
        assert_eq!(report.achieved, None);
    }

    #[test]
    fn report_csv_shape_is_stable() {
        let report = ConvergenceReport {
            system_id: "sys".into(),
            g_id: "cylinders(L=2;Uniform)".into(),
            sampling: "fixed(x)".into(),
            samples: 1,
            rows: vec![(4, 0.5), (8, 0.25)],
            tolerance: None,
            achieved: None,
        };
        assert_eq!(
            report.to_csv(),
            "n,statistic,g_id,samples\n4,0.5,cylinders(L=2;Uniform),1\n8,0.25,cylinders(L=2;Uniform),1\n"
        );
        let back: ConvergenceReport = serde_json::from_str(&report.to_json().unwrap()).unwrap();
        assert_eq!(back.rows, report.rows);
    }

    #[test]
    fn strictly_increasing_depths_are_enforced() {
        let sys = full2();
        let phi = LocallyConstantPotential::zero(&sys);
        let oracle = MarkovOracle::new(&sys, &phi).unwrap();
        let dict = TestDictionary::cylinders(sys.words_up_to(1), WeightScheme::Uniform).unwrap();
        let z = Point::periodic(&[0]).unwrap();
        let r = pointwise_sequence(
            &sys,
            &phi,
            &z,
            &oracle,
            &dict,
            &[4, 4],
            None,
            &TreeOptions::default(),
        );
        assert!(r.is_err());
    }

    #[test]
    fn fourier_box_maximum_detects_point_masses_and_flat_grids() {
        let delta = AtomicMeasure::point_mass(Point::torus_i64(&[(0, 1)]));
        assert!((max_fourier_modulus(&delta, 1, 3).unwrap() - 1.0).abs() < 1e-15);
        let grid: Vec<Point> = (0..5)
            .map(|j| Point::torus(vec![crate::rat::rat_from_i64(j, 5)]))
            .collect();
        let uniform = AtomicMeasure::uniform(grid).unwrap();
        assert!(max_fourier_modulus(&uniform, 1, 3).unwrap() < 1e-14);
    }

    #[test]
    fn uniform_rational_sampler_is_seed_deterministic() {
        let sys = cat_map();
        let phi = TrigScalar::zero(2);
        let sampler = PointSampler::UniformRationalTorus { denom_bits: 24 };
        let a = sampler
            .sample(&sys, &phi, 8, 7, &TreeOptions::default())
            .unwrap();
        let b = sampler
            .sample(&sys, &phi, 8, 7, &TreeOptions::default())
            .unwrap();
        assert_eq!(a, b);
        let c = sampler
            .sample(&sys, &phi, 8, 8, &TreeOptions::default())
            .unwrap();
        assert_ne!(a, c);
        for p in &a {
            sys.validate_point(p).unwrap();
        }
    }

    #[test]
    fn periodic_gibbs_sampler_draws_actual_periodic_points() {
        let sys = ShiftSystem::golden_mean();
        let phi = LocallyConstantPotential::zero(&sys);
        let sampler = PointSampler::PeriodicGibbs { depth: 5 };
        let pts = sampler
            .sample(&sys, &phi, 10, 42, &TreeOptions::default())
            .unwrap();
        for p in &pts {
            sys.validate_point(p).unwrap();
            let mut cur = p.clone();
            for _ in 0..5 {
                cur = sys.forward(&cur).unwrap();
            }
            assert_eq!(&cur, p);
        }
    }

    #[test]
    fn fixed_sampler_consumes_from_the_front() {
        let sys = full2();
        let phi = LocallyConstantPotential::zero(&sys);
        let pts = vec![
            Point::periodic(&[0]).unwrap(),
            Point::periodic(&[1]).unwrap(),
            Point::periodic(&[0, 1]).unwrap(),
        ];
        let sampler = PointSampler::Fixed {
            points: pts.clone(),
        };
        let two = sampler
            .sample(&sys, &phi, 2, 0, &TreeOptions::default())
            .unwrap();
        assert_eq!(two, pts[..2].to_vec());
        assert!(sampler
            .sample(&sys, &phi, 4, 0, &TreeOptions::default())
            .is_err());
    }
}
