//! Toral endomorphisms x ↦ Ax + εp(x) mod 1.
//!
//! The unperturbed map is handled with exact rational arithmetic throughout:
//! preimages and periodic points come from coset enumeration through the
//! Smith normal form, so deep preimage trees carry no floating-point drift.
//! Perturbed maps switch to binary64 and certify every preimage/periodic
//! branch by Newton continuation from the linear solution, reporting failure
//! instead of silently merging or losing branches.

use nalgebra::{Complex, DMatrix, DVector};
use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};
use rayon::prelude::*;

use crate::dynamics::{DynamicalSystem, Potential, SpaceKind};
use crate::error::{Error, Result};
use crate::intmat::{smith, CosetIter, IMat, SmithDecomposition};
use crate::point::{Point, TorusCoords};
use crate::rat::{frac, rat_to_f64, Rat};

/// Eigenvalue moduli closer to 1 than this classify the map as
/// non-hyperbolic. Integer matrices have algebraic eigenvalues, so a smaller
/// margin would only chase binary64 noise.
pub const HYPERBOLIC_MARGIN: f64 = 1e-9;

/// Newton iteration budget per branch.
const NEWTON_MAX_ITERS: usize = 50;
/// Convergence threshold for the lifted residual (all quantities O(1)).
const NEWTON_RESIDUAL_TOL: f64 = 1e-12;
/// Certification: a returned point must map back onto its target this close.
const MAP_BACK_TOL: f64 = 1e-10;
/// Two branches closer than this (sup metric on the torus) are a collision.
const COLLISION_TOL: f64 = 1e-8;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum HyperbolicityClass {
    Expanding,
    HyperbolicInvertible,
    HyperbolicNoninvertible,
    NotHyperbolic,
}

#[derive(Clone, Debug)]
pub struct HyperbolicityReport {
    pub eigenvalues: Vec<Complex<f64>>,
    pub class: HyperbolicityClass,
    /// Σ log|λ| over |λ| > 1.
    pub entropy: f64,
}

/// Eigenvalue classification of an integer matrix acting on the torus.
pub fn classify(rows: &[Vec<i64>]) -> Result<HyperbolicityReport> {
    let a = IMat::from_rows(rows)?;
    let det = a.det()?;
    if det == 0 {
        return Err(Error::SingularMatrix);
    }
    let m = a.m;
    let fm = DMatrix::<f64>::from_fn(m, m, |i, j| a[(i, j)] as f64);
    let mut eigenvalues: Vec<Complex<f64>> = fm.complex_eigenvalues().iter().copied().collect();
    eigenvalues.sort_by(|p, q| p.re.total_cmp(&q.re).then(p.im.total_cmp(&q.im)));

    let moduli: Vec<f64> = eigenvalues.iter().map(|l| l.norm()).collect();
    let class = if moduli.iter().any(|&r| (r - 1.0).abs() <= HYPERBOLIC_MARGIN) {
        HyperbolicityClass::NotHyperbolic
    } else if moduli.iter().all(|&r| r > 1.0) {
        HyperbolicityClass::Expanding
    } else if det.abs() == 1 {
        HyperbolicityClass::HyperbolicInvertible
    } else {
        HyperbolicityClass::HyperbolicNoninvertible
    };
    let entropy = moduli.iter().filter(|&&r| r > 1.0).map(|r| r.ln()).sum();
    Ok(HyperbolicityReport {
        eigenvalues,
        class,
        entropy,
    })
}

/// One trigonometric term of a vector-valued perturbation: the i-th map
/// component gains cos[i]·cos(2π k·x) + sin[i]·sin(2π k·x).
#[derive(Clone, Debug, serde::Serialize, serde::Deserialize)]
pub struct TrigTerm {
    pub freq: Vec<i64>,
    pub cos: Vec<f64>,
    pub sin: Vec<f64>,
}

/// Trig-polynomial perturbation εp(x) of the linear map.
#[derive(Clone, Debug, serde::Serialize, serde::Deserialize)]
pub struct Perturbation {
    pub epsilon: f64,
    pub terms: Vec<TrigTerm>,
}

impl Perturbation {
    fn validate(&self, dim: usize) -> Result<()> {
        if !self.epsilon.is_finite() || self.epsilon < 0.0 {
            return Err(Error::InvalidSystem(format!(
                "epsilon {} must be >= 0",
                self.epsilon
            )));
        }
        for t in &self.terms {
            for v in [&t.freq] {
                if v.len() != dim {
                    return Err(Error::DimensionMismatch {
                        expected: dim,
                        got: v.len(),
                    });
                }
            }
            for v in [&t.cos, &t.sin] {
                if v.len() != dim {
                    return Err(Error::DimensionMismatch {
                        expected: dim,
                        got: v.len(),
                    });
                }
                if v.iter().any(|c| !c.is_finite()) {
                    return Err(Error::InvalidSystem(
                        "non-finite perturbation coefficient".into(),
                    ));
                }
            }
        }
        Ok(())
    }

    /// εp(x). The argument is reduced mod 1 before the trig evaluation so
    /// lifted orbits with large integer parts lose no precision.
    fn eval(&self, x: &[f64]) -> Vec<f64> {
        let dim = x.len();
        let mut out = vec![0.0; dim];
        for t in &self.terms {
            let phase = TAU * dot_mod1(&t.freq, x);
            let (s, c) = phase.sin_cos();
            for i in 0..dim {
                out[i] += self.epsilon * (t.cos[i] * c + t.sin[i] * s);
            }
        }
        out
    }

    /// Jacobian of εp at x.
    fn jacobian(&self, x: &[f64]) -> DMatrix<f64> {
        let dim = x.len();
        let mut out = DMatrix::<f64>::zeros(dim, dim);
        for t in &self.terms {
            let phase = TAU * dot_mod1(&t.freq, x);
            let (s, c) = phase.sin_cos();
            for i in 0..dim {
                let deriv = -t.cos[i] * s + t.sin[i] * c;
                for j in 0..dim {
                    out[(i, j)] += self.epsilon * TAU * t.freq[j] as f64 * deriv;
                }
            }
        }
        out
    }

    /// Crude upper bound on sup‖εDp‖∞, reported in certification failures.
    pub fn c1_bound(&self) -> f64 {
        let mut sum = 0.0;
        for t in &self.terms {
            let amp = t
                .cos
                .iter()
                .chain(&t.sin)
                .fold(0.0f64, |m, c| m.max(c.abs()));
            let k1: f64 = t.freq.iter().map(|k| k.abs() as f64).sum();
            sum += 2.0 * amp * TAU * k1;
        }
        self.epsilon * sum
    }
}

const TAU: f64 = std::f64::consts::TAU;

fn dot_mod1(freq: &[i64], x: &[f64]) -> f64 {
    let dot: f64 = freq
        .iter()
        .zip(x)
        .map(|(&k, &v)| k as f64 * v.rem_euclid(1.0))
        .sum();
    dot.rem_euclid(1.0)
}

/// f(x) = Ax + εp(x) mod 1 on T^m.
pub struct TorusEndomorphism {
    matrix: IMat,
    dim: usize,
    snf: SmithDecomposition,
    diag: Vec<i128>,
    abs_det: i128,
    report: HyperbolicityReport,
    perturbation: Option<Perturbation>,
}

impl TorusEndomorphism {
    pub fn new(rows: &[Vec<i64>], perturbation: Option<Perturbation>) -> Result<Self> {
        let report = classify(rows)?;
        if report.class == HyperbolicityClass::NotHyperbolic {
            let moduli: Vec<String> = report
                .eigenvalues
                .iter()
                .map(|l| format!("{:.6}", l.norm()))
                .collect();
            return Err(Error::NotHyperbolic(format!(
                "eigenvalue moduli [{}] touch the unit circle",
                moduli.join(", ")
            )));
        }
        let matrix = IMat::from_rows(rows)?;
        let dim = matrix.m;
        let abs_det = matrix.det()?.abs();
        let snf = smith(&matrix)?;
        let perturbation = match perturbation {
            Some(p) => {
                p.validate(dim)?;
                // ε = 0 is the linear map; keep the exact pipeline for it.
                if p.epsilon == 0.0 {
                    None
                } else {
                    Some(p)
                }
            }
            None => None,
        };
        let diag = snf.diag();
        Ok(TorusEndomorphism {
            matrix,
            dim,
            snf,
            diag,
            abs_det,
            report,
            perturbation,
        })
    }

    pub fn linear(rows: &[Vec<i64>]) -> Result<Self> {
        Self::new(rows, None)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn matrix(&self) -> &IMat {
        &self.matrix
    }

    pub fn report(&self) -> &HyperbolicityReport {
        &self.report
    }

    pub fn degree(&self) -> i128 {
        self.abs_det
    }

    pub fn is_perturbed(&self) -> bool {
        self.perturbation.is_some()
    }

    fn coords_of(&self, x: &Point) -> Result<Vec<f64>> {
        self.validate_point(x)?;
        Ok(x.coords_f64().unwrap())
    }

    /// F(y) = Ay + εp(y) on the universal cover (no mod-1 reduction).
    fn lift(&self, y: &[f64]) -> Vec<f64> {
        let mut out = self.matrix.mul_f64_vec(y);
        if let Some(p) = &self.perturbation {
            for (o, d) in out.iter_mut().zip(p.eval(y)) {
                *o += d;
            }
        }
        out
    }

    fn lift_jacobian(&self, y: &[f64]) -> DMatrix<f64> {
        let mut j = DMatrix::<f64>::from_fn(self.dim, self.dim, |r, c| self.matrix[(r, c)] as f64);
        if let Some(p) = &self.perturbation {
            j += p.jacobian(y);
        }
        j
    }

    /// Exact linear preimages A⁻¹(x + k) mod 1, k over coset representatives
    /// of Z^m/AZ^m, in coset order.
    fn linear_preimages_exact(&self, coords: &[Rat]) -> Vec<Point> {
        self.linear_preimages_i128(coords)
            .unwrap_or_else(|| self.linear_preimages_bigrat(coords))
    }

    /// Machine-word kernel for the common case of small denominators. Every
    /// step is checked; any overflow abandons the attempt and the caller
    /// reruns with arbitrary precision. Both paths produce identical
    /// canonical points.
    fn linear_preimages_i128(&self, coords: &[Rat]) -> Option<Vec<Point>> {
        use num_integer::Integer;
        let mut q: i128 = 1;
        let mut parts = Vec::with_capacity(self.dim);
        for c in coords {
            let n = i128::try_from(c.numer()).ok()?;
            let d = i128::try_from(c.denom()).ok()?;
            parts.push((n, d));
            q = q.checked_mul(d / q.gcd(&d))?;
        }
        let p: Vec<i128> = parts
            .iter()
            .map(|(n, d)| n.checked_mul(q / d))
            .collect::<Option<_>>()?;
        let w = mul_i128_vec(&self.snf.u_inv, &p)?;
        let mut dd: i128 = 1;
        for &d in &self.diag {
            dd = dd.checked_mul(d)?;
        }
        let den = q.checked_mul(dd)?;
        let mut out = Vec::new();
        for c in CosetIter::new(&self.diag) {
            let t: Vec<i128> = w
                .iter()
                .zip(&c)
                .zip(&self.diag)
                .map(|((wj, &cj), &dj)| wj.checked_add(q.checked_mul(cj)?)?.checked_mul(dd / dj))
                .collect::<Option<_>>()?;
            let y = mul_i128_vec(&self.snf.v_inv, &t)?;
            let point = Point::torus(
                y.iter()
                    .map(|&n| Rat::new(BigInt::from(n.rem_euclid(den)), BigInt::from(den)))
                    .collect(),
            );
            out.push(point);
        }
        Some(out)
    }

    fn linear_preimages_bigrat(&self, coords: &[Rat]) -> Vec<Point> {
        let w = self.snf.u_inv.mul_rat_vec(coords);
        CosetIter::new(&self.diag)
            .map(|c| {
                let z: Vec<Rat> = w
                    .iter()
                    .zip(&c)
                    .zip(&self.diag)
                    .map(|((wi, &ci), &di)| {
                        (wi + Rat::from_integer(BigInt::from(ci)))
                            / Rat::from_integer(BigInt::from(di))
                    })
                    .collect();
                Point::torus(self.snf.v_inv.mul_rat_vec(&z))
            })
            .collect()
    }

    fn linear_preimages_f64(&self, coords: &[f64]) -> Vec<Vec<f64>> {
        let w = self.snf.u_inv.mul_f64_vec(coords);
        CosetIter::new(&self.diag)
            .map(|c| {
                let z: Vec<f64> = w
                    .iter()
                    .zip(&c)
                    .zip(&self.diag)
                    .map(|((wi, &ci), &di)| (wi + ci as f64) / di as f64)
                    .collect();
                self.snf.v_inv.mul_f64_vec(&z)
            })
            .collect()
    }

    /// Newton branch continuation: solve Ay + εp(y) = x + k from the linear
    /// seed of the same branch.
    fn newton_preimage(&self, x: &[f64], seed: &[f64]) -> Result<Vec<f64>> {
        let ax = self.matrix.mul_f64_vec(seed);
        let k: Vec<f64> = ax.iter().zip(x).map(|(a, t)| (a - t).round()).collect();
        let target: Vec<f64> = x.iter().zip(&k).map(|(t, ki)| t + ki).collect();
        self.newton_solve(seed, |y| {
            let g: Vec<f64> = self
                .lift(y)
                .iter()
                .zip(&target)
                .map(|(f, t)| f - t)
                .collect();
            (g, self.lift_jacobian(y))
        })
    }

    /// Damped Newton iteration on G(y) = 0; `eval` returns (G, dG).
    fn newton_solve(
        &self,
        seed: &[f64],
        eval: impl Fn(&[f64]) -> (Vec<f64>, DMatrix<f64>),
    ) -> Result<Vec<f64>> {
        let mut y = DVector::<f64>::from_column_slice(seed);
        let (g0, mut jac) = eval(y.as_slice());
        let mut g = DVector::<f64>::from_vec(g0);
        for _ in 0..NEWTON_MAX_ITERS {
            if g.amax() <= NEWTON_RESIDUAL_TOL {
                return Ok(y.as_slice().to_vec());
            }
            let step = jac.clone().lu().solve(&g).ok_or_else(|| {
                Error::EpsilonTooLarge(format!(
                    "singular Jacobian along a branch (C1 bound {:.3e})",
                    self.perturbation
                        .as_ref()
                        .map_or(0.0, Perturbation::c1_bound)
                ))
            })?;
            let mut scale = 1.0;
            loop {
                let trial = &y - scale * &step;
                let (gt, jt) = eval(trial.as_slice());
                let gt = DVector::from_vec(gt);
                if gt.amax() < g.amax() || scale < 1.0 / 64.0 {
                    y = trial;
                    g = gt;
                    jac = jt;
                    break;
                }
                scale /= 2.0;
            }
        }
        if g.amax() <= NEWTON_RESIDUAL_TOL {
            return Ok(y.as_slice().to_vec());
        }
        Err(Error::EpsilonTooLarge(format!(
            "Newton did not converge in {NEWTON_MAX_ITERS} iterations (residual {:.3e}, C1 bound {:.3e})",
            g.amax(),
            self.perturbation.as_ref().map_or(0.0, Perturbation::c1_bound)
        )))
    }

    /// Solve fⁿ(y) = y by Newton on the multi-shooting system
    /// F(y_i) = y_{i+1} + k_i (indices mod n), one unknown per orbit step.
    /// Keeping every unknown in [0,1) avoids the precision loss of iterating
    /// the expanding lift n times.
    fn newton_periodic(
        &self,
        n: usize,
        seed_orbit: &[Vec<f64>],
        k: &[Vec<f64>],
    ) -> Result<Vec<f64>> {
        let m = self.dim;
        let dim = n * m;
        let mut y = DVector::<f64>::zeros(dim);
        for (i, s) in seed_orbit.iter().enumerate() {
            for j in 0..m {
                y[i * m + j] = s[j];
            }
        }
        let eval = |yv: &DVector<f64>| {
            let mut g = DVector::<f64>::zeros(dim);
            let mut jac = DMatrix::<f64>::zeros(dim, dim);
            for i in 0..n {
                let yi = yv.as_slice()[i * m..(i + 1) * m].to_vec();
                let next = (i + 1) % n;
                let fy = self.lift(&yi);
                let dj = self.lift_jacobian(&yi);
                for r in 0..m {
                    g[i * m + r] = fy[r] - yv[next * m + r] - k[i][r];
                    for c in 0..m {
                        jac[(i * m + r, i * m + c)] = dj[(r, c)];
                    }
                    jac[(i * m + r, next * m + r)] += -1.0;
                }
            }
            (g, jac)
        };
        let (mut g, mut jac) = eval(&y);
        for _ in 0..NEWTON_MAX_ITERS {
            if g.amax() <= NEWTON_RESIDUAL_TOL {
                return Ok(y.as_slice()[0..m].to_vec());
            }
            let step = jac.clone().lu().solve(&g).ok_or_else(|| {
                Error::EpsilonTooLarge("singular Jacobian in periodic refinement".into())
            })?;
            let mut scale = 1.0;
            loop {
                let trial = &y - scale * &step;
                let (gt, jt) = eval(&trial);
                if gt.amax() < g.amax() || scale < 1.0 / 64.0 {
                    y = trial;
                    g = gt;
                    jac = jt;
                    break;
                }
                scale /= 2.0;
            }
        }
        if g.amax() <= NEWTON_RESIDUAL_TOL {
            return Ok(y.as_slice()[0..m].to_vec());
        }
        Err(Error::EpsilonTooLarge(format!(
            "periodic Newton did not converge (residual {:.3e})",
            g.amax()
        )))
    }

    /// Exact fixed points of the linear map Aⁿ, as (point, coset index) with
    /// the Smith data of Aⁿ − I.
    fn linear_periodic_points(&self, n: usize) -> Result<(Vec<Point>, SmithDecomposition)> {
        let b = self.matrix.pow(n as u32)?.sub_identity();
        if b.det()? == 0 {
            return Err(Error::NotHyperbolic(format!("A^{n} - I is singular")));
        }
        let s = smith(&b)?;
        let diag = s.diag();
        let cosets: Vec<Vec<i128>> = CosetIter::new(&diag).collect();
        let points: Vec<Point> = cosets
            .par_iter()
            .map(|c| {
                let z: Vec<Rat> = c
                    .iter()
                    .zip(&diag)
                    .map(|(&ci, &di)| Rat::new(BigInt::from(ci), BigInt::from(di)))
                    .collect();
                Point::torus(s.v_inv.mul_rat_vec(&z))
            })
            .collect();
        Ok((points, s))
    }

    fn check_distinct(&self, points: &[Vec<f64>], what: &str) -> Result<()> {
        for i in 0..points.len() {
            for j in i + 1..points.len() {
                if torus_dist(&points[i], &points[j]) < COLLISION_TOL {
                    return Err(Error::EpsilonTooLarge(format!(
                        "{what} branches {i} and {j} collided within {COLLISION_TOL:.0e}"
                    )));
                }
            }
        }
        Ok(())
    }
}

fn mul_i128_vec(mat: &crate::intmat::IMat, v: &[i128]) -> Option<Vec<i128>> {
    (0..mat.m)
        .map(|i| {
            let mut acc: i128 = 0;
            for (j, &vj) in v.iter().enumerate() {
                acc = acc.checked_add(mat[(i, j)].checked_mul(vj)?)?;
            }
            Some(acc)
        })
        .collect()
}

/// Sup distance on the torus.
pub fn torus_dist(a: &[f64], b: &[f64]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| {
            let d = (x - y).rem_euclid(1.0);
            d.min(1.0 - d)
        })
        .fold(0.0, f64::max)
}

impl DynamicalSystem for TorusEndomorphism {
    fn space(&self) -> SpaceKind {
        SpaceKind::Torus { dim: self.dim }
    }

    fn id(&self) -> String {
        let rows: Vec<String> = (0..self.dim)
            .map(|i| {
                let row: Vec<String> = (0..self.dim)
                    .map(|j| self.matrix[(i, j)].to_string())
                    .collect();
                format!("[{}]", row.join(","))
            })
            .collect();
        match &self.perturbation {
            None => format!("torus[{}]", rows.join(",")),
            Some(p) => format!(
                "torus[{}]+eps{}({} terms)",
                rows.join(","),
                p.epsilon,
                p.terms.len()
            ),
        }
    }

    fn validate_point(&self, x: &Point) -> Result<()> {
        match x.torus_dim() {
            Some(d) if d == self.dim => Ok(()),
            Some(d) => Err(Error::DimensionMismatch {
                expected: self.dim,
                got: d,
            }),
            None => Err(Error::PhaseSpaceMismatch(
                "shift point fed to a torus map".into(),
            )),
        }
    }

    fn forward(&self, x: &Point) -> Result<Point> {
        self.validate_point(x)?;
        match (x, &self.perturbation) {
            (Point::Torus(TorusCoords::Exact(c)), None) => {
                Ok(Point::torus(self.matrix.mul_rat_vec(c)))
            }
            _ => {
                let c = self.coords_of(x)?;
                Point::torus_f64(self.lift(&c))
            }
        }
    }

    fn preimages(&self, x: &Point) -> Result<Vec<Point>> {
        self.validate_point(x)?;
        match (&self.perturbation, x) {
            (None, Point::Torus(TorusCoords::Exact(c))) => Ok(self.linear_preimages_exact(c)),
            (None, _) => {
                let c = self.coords_of(x)?;
                self.linear_preimages_f64(&c)
                    .into_iter()
                    .map(Point::torus_f64)
                    .collect()
            }
            (Some(_), _) => {
                let c = self.coords_of(x)?;
                let seeds = self.linear_preimages_f64(&c);
                let roots: Vec<Vec<f64>> = seeds
                    .iter()
                    .map(|s| self.newton_preimage(&c, s))
                    .collect::<Result<_>>()?;
                let reduced: Vec<Vec<f64>> = roots
                    .iter()
                    .map(|y| y.iter().map(|v| v.rem_euclid(1.0)).collect())
                    .collect();
                for y in &reduced {
                    let fy = self.lift(y);
                    if torus_dist(&fy, &c) > MAP_BACK_TOL {
                        return Err(Error::EpsilonTooLarge(format!(
                            "branch maps back {:.3e} away from its target",
                            torus_dist(&fy, &c)
                        )));
                    }
                }
                self.check_distinct(&reduced, "preimage")?;
                reduced.into_iter().map(Point::torus_f64).collect()
            }
        }
    }

    fn max_degree(&self) -> usize {
        self.abs_det.min(usize::MAX as i128) as usize
    }

    fn count_fixed_points(&self, n: usize) -> Result<f64> {
        let b = self.matrix.pow(n as u32)?.sub_identity();
        Ok(b.det()?.abs() as f64)
    }

    fn fixed_points(&self, n: usize, cap: u64, force: bool) -> Result<Vec<Point>> {
        if n == 0 {
            return Err(Error::InvalidSystem("period must be >= 1".into()));
        }
        let count = self.count_fixed_points(n)?;
        if count > cap as f64 && !force {
            return Err(Error::ResourceCap {
                requested: count,
                cap,
            });
        }
        let (linear, _) = self.linear_periodic_points(n)?;
        match &self.perturbation {
            None => Ok(linear),
            Some(_) => {
                let refined: Vec<Vec<f64>> = linear
                    .par_iter()
                    .map(|z| {
                        // Exact seed orbit and the integer lift constants
                        // k_i = A·z_i − z_{i+1} of each step.
                        let mut orbit_exact = Vec::with_capacity(n);
                        let mut cur = z.exact_coords().unwrap().to_vec();
                        for _ in 0..n {
                            let next: Vec<Rat> =
                                self.matrix.mul_rat_vec(&cur).iter().map(frac).collect();
                            orbit_exact.push(cur);
                            cur = next;
                        }
                        let mut ks = Vec::with_capacity(n);
                        for i in 0..n {
                            let az = self.matrix.mul_rat_vec(&orbit_exact[i]);
                            let nxt = &orbit_exact[(i + 1) % n];
                            let k: Vec<f64> = az
                                .iter()
                                .zip(nxt)
                                .map(|(a, b)| {
                                    let d = a - b;
                                    debug_assert!(
                                        d.denom().abs() == BigInt::from(1) || d.is_zero()
                                    );
                                    d.to_f64().unwrap_or(0.0)
                                })
                                .collect();
                            ks.push(k);
                        }
                        let seeds: Vec<Vec<f64>> = orbit_exact
                            .iter()
                            .map(|c| c.iter().map(rat_to_f64).collect())
                            .collect();
                        self.newton_periodic(n, &seeds, &ks)
                    })
                    .collect::<Result<_>>()?;
                let reduced: Vec<Vec<f64>> = refined
                    .iter()
                    .map(|y| y.iter().map(|v| v.rem_euclid(1.0)).collect())
                    .collect();
                for y in &reduced {
                    let mut cur = y.clone();
                    for _ in 0..n {
                        cur = self.lift(&cur).iter().map(|v| v.rem_euclid(1.0)).collect();
                    }
                    if torus_dist(&cur, y) > MAP_BACK_TOL {
                        return Err(Error::EpsilonTooLarge(format!(
                            "refined periodic point drifts {:.3e} after {n} steps",
                            torus_dist(&cur, y)
                        )));
                    }
                }
                self.check_distinct(&reduced, "periodic")?;
                reduced.into_iter().map(Point::torus_f64).collect()
            }
        }
    }
}

/// Scalar trig polynomial φ(x) = c + Σ a_t cos(2π k_t·x) + b_t sin(2π k_t·x).
pub struct TrigScalar {
    dim: usize,
    constant: f64,
    terms: Vec<(Vec<i64>, f64, f64)>,
}

impl TrigScalar {
    pub fn new(dim: usize, constant: f64, terms: Vec<(Vec<i64>, f64, f64)>) -> Result<Self> {
        if !constant.is_finite() {
            return Err(Error::InvalidPotential("non-finite constant".into()));
        }
        for (k, a, b) in &terms {
            if k.len() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    got: k.len(),
                });
            }
            if !a.is_finite() || !b.is_finite() {
                return Err(Error::InvalidPotential("non-finite coefficient".into()));
            }
        }
        Ok(TrigScalar {
            dim,
            constant,
            terms,
        })
    }

    pub fn zero(dim: usize) -> Self {
        TrigScalar {
            dim,
            constant: 0.0,
            terms: Vec::new(),
        }
    }

    pub fn constant_value(dim: usize, c: f64) -> Result<Self> {
        Self::new(dim, c, Vec::new())
    }

    /// A copy shifted by the constant c (φ + c).
    pub fn shifted(&self, c: f64) -> Self {
        TrigScalar {
            dim: self.dim,
            constant: self.constant + c,
            terms: self.terms.clone(),
        }
    }
}

impl Potential for TrigScalar {
    fn space(&self) -> SpaceKind {
        SpaceKind::Torus { dim: self.dim }
    }

    fn id(&self) -> String {
        if self.terms.is_empty() {
            format!("const({})", self.constant)
        } else {
            format!("trig(c={},{} terms)", self.constant, self.terms.len())
        }
    }

    fn eval(&self, x: &Point) -> Result<f64> {
        let mut out = self.constant;
        if self.terms.is_empty() {
            // Still enforce the phase-space contract for constant potentials.
            if x.torus_dim() != Some(self.dim) {
                return Err(Error::PhaseSpaceMismatch(
                    "torus potential on foreign point".into(),
                ));
            }
            return Ok(out);
        }
        match x {
            Point::Torus(TorusCoords::Exact(c)) if c.len() == self.dim => {
                for (k, a, b) in &self.terms {
                    // k·x mod 1 exactly, then one rounding into binary64.
                    let mut acc = Rat::from_integer(BigInt::from(0));
                    for (ki, xi) in k.iter().zip(c) {
                        acc += xi * Rat::from_integer(BigInt::from(*ki));
                    }
                    let t = TAU * rat_to_f64(&frac(&acc));
                    out += a * t.cos() + b * t.sin();
                }
                Ok(out)
            }
            Point::Torus(TorusCoords::Approx(c)) if c.len() == self.dim => {
                let coords: Vec<f64> = c.iter().map(|k| k.0).collect();
                for (k, a, b) in &self.terms {
                    let t = TAU * dot_mod1(k, &coords);
                    out += a * t.cos() + b * t.sin();
                }
                Ok(out)
            }
            _ => Err(Error::PhaseSpaceMismatch(
                "torus potential on foreign point".into(),
            )),
        }
    }

    fn constant_value(&self) -> Option<f64> {
        self.terms.is_empty().then_some(self.constant)
    }
}
