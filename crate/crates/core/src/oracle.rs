//! Exact reference measures: the Markov realization of the equilibrium state
//! on a subshift, and Haar on the torus.
//!
//! The Markov oracle works over block states of length q = max(r−1, 1), so a
//! potential of any finite range reduces to a single Perron eigenproblem.
//! Cylinder measures, pressure, Bowen-ball ratios, and the natural-extension
//! lift are all read off the eigendata.

use crate::dynamics::{DynamicalSystem, Potential, SpaceKind};
use crate::error::{Error, Result};
use crate::measure::{CharacterPart, Pairing, TestFunction};
use crate::point::{Point, Word};
use crate::shift::{AnchoredWord, LocallyConstantPotential, ShiftSystem};

/// Relative tolerance of the power iteration for the Perron eigendata.
const PERRON_TOL: f64 = 1e-14;
const PERRON_MAX_ITERS: usize = 200_000;
/// Refuse recoded state spaces beyond this size.
const MAX_STATES: usize = 10_000;

pub struct MarkovOracle {
    system: ShiftSystem,
    potential: LocallyConstantPotential,
    /// Block length of the states.
    q: usize,
    states: Vec<Word>,
    transfer: Vec<Vec<f64>>,
    lambda: f64,
    left: Vec<f64>,
    right: Vec<f64>,
}

impl MarkovOracle {
    pub fn new(system: &ShiftSystem, potential: &LocallyConstantPotential) -> Result<MarkovOracle> {
        if potential.space()
            != (SpaceKind::Shift {
                alphabet: system.alphabet(),
            })
        {
            return Err(Error::PhaseSpaceMismatch(format!(
                "potential on {} does not match system {}",
                potential.space(),
                system.id()
            )));
        }
        let r = potential.range();
        let q = r.saturating_sub(1).max(1);
        let states = system.words(q);
        if states.len() > MAX_STATES {
            return Err(Error::InvalidSystem(format!(
                "recoded state space has {} blocks (max {MAX_STATES})",
                states.len()
            )));
        }
        let n = states.len();
        let mut transfer = vec![vec![0.0; n]; n];
        for (i, u) in states.iter().enumerate() {
            for (j, v) in states.iter().enumerate() {
                let linked = if q == 1 {
                    system.allowed(u[0], v[0])
                } else {
                    u[1..] == v[..q - 1]
                };
                if linked {
                    let mut w = u.clone();
                    w.push(v[q - 1]);
                    transfer[i][j] = potential.value(&w[0..r])?.exp();
                }
            }
        }
        let (lambda, right) = perron(&transfer)?;
        let transposed: Vec<Vec<f64>> = (0..n)
            .map(|i| (0..n).map(|j| transfer[j][i]).collect())
            .collect();
        let (lambda_left, mut left) = perron(&transposed)?;
        if (lambda - lambda_left).abs() > 1e-10 * lambda {
            return Err(Error::InvalidSystem(format!(
                "left/right Perron values disagree: {lambda} vs {lambda_left}"
            )));
        }
        let dot: f64 = left.iter().zip(&right).map(|(l, r)| l * r).sum();
        for l in &mut left {
            *l /= dot;
        }
        Ok(MarkovOracle {
            system: system.clone(),
            potential: potential.clone(),
            q,
            states,
            transfer,
            lambda,
            left,
            right,
        })
    }

    pub fn system(&self) -> &ShiftSystem {
        &self.system
    }

    pub fn lambda(&self) -> f64 {
        self.lambda
    }

    /// P(φ) = log λ.
    pub fn pressure(&self) -> f64 {
        self.lambda.ln()
    }

    pub fn left(&self) -> &[f64] {
        &self.left
    }

    pub fn right(&self) -> &[f64] {
        &self.right
    }

    fn state_index(&self, w: &[u8]) -> Option<usize> {
        self.states.binary_search_by(|s| s.as_slice().cmp(w)).ok()
    }

    /// μ[w]: exact equilibrium measure of the cylinder set [w]. Illegal words
    /// index the empty set and get 0.
    pub fn cylinder(&self, w: &[u8]) -> f64 {
        if w.is_empty() {
            return 1.0;
        }
        if !self.system.legal_word(w) {
            return 0.0;
        }
        if w.len() < self.q {
            return self
                .states
                .iter()
                .enumerate()
                .filter(|(_, u)| u.starts_with(w))
                .map(|(i, _)| self.left[i] * self.right[i])
                .sum();
        }
        let first = self
            .state_index(&w[0..self.q])
            .expect("legal word has a state");
        let mut acc =
            self.left[first] * self.right[self.state_index(&w[w.len() - self.q..]).unwrap()];
        for i in 0..w.len() - self.q {
            let a = self.state_index(&w[i..i + self.q]).unwrap();
            let b = self.state_index(&w[i + 1..i + 1 + self.q]).unwrap();
            acc *= self.transfer[a][b] / self.lambda;
        }
        acc
    }

    /// S_nφ read off the symbol sequence.
    pub fn birkhoff_on_prefix(&self, y: &Point, n: usize) -> Result<f64> {
        let r = self.potential.range();
        let Some(prefix) = y.prefix(n + r - 1) else {
            return Err(Error::PhaseSpaceMismatch(
                "torus point in a shift oracle".into(),
            ));
        };
        let mut sum = 0.0;
        for i in 0..n {
            sum += self.potential.value(&prefix[i..i + r])?;
        }
        Ok(sum)
    }

    /// μ[y₀…y_{n−1}]·e^{nP − S_nφ(y)}, the Bowen-ball Gibbs ratio at cylinder
    /// scale.
    pub fn gibbs_ratio(&self, y: &Point, n: usize) -> Result<f64> {
        self.system.validate_point(y)?;
        let word = y.prefix(n).unwrap();
        let s_n = self.birkhoff_on_prefix(y, n)?;
        Ok(self.cylinder(&word) * (n as f64 * self.pressure() - s_n).exp())
    }

    /// Both routes to the natural-extension measure of an anchored cylinder:
    /// the direct stationary value, and the projected-preimage route
    /// μ(π(f̂⁻ⁿ Ê)) for n = 0..=n_max. The route value truncates the past
    /// while n < depth and is a genuine sum over length-(n−depth) prefix
    /// extensions afterwards, which is where it must stabilize.
    pub fn lifted_cylinder_measure(&self, anchored: &AnchoredWord, n_max: usize) -> LiftedCylinder {
        let word = anchored.word();
        let j = anchored.depth();
        let direct = self.cylinder(&word);
        let mut route = Vec::with_capacity(n_max + 1);
        for n in 0..=n_max {
            if n < j {
                route.push(self.cylinder(&word[j - n..]));
            } else {
                let d = n - j;
                if d == 0 {
                    route.push(self.cylinder(&word));
                } else {
                    let mut sum = 0.0;
                    for u in self.system.words(d) {
                        let mut uw = u.clone();
                        uw.extend_from_slice(&word);
                        sum += self.cylinder(&uw);
                    }
                    route.push(sum);
                }
            }
        }
        let max_difference = route
            .iter()
            .enumerate()
            .filter(|(n, _)| *n >= j)
            .map(|(_, v)| (v - direct).abs())
            .fold(0.0, f64::max);
        LiftedCylinder {
            anchored: anchored.clone(),
            direct,
            route,
            anchor_depth: j,
            max_difference,
        }
    }
}

impl Pairing for MarkovOracle {
    fn pair(&self, g: &TestFunction) -> Result<f64> {
        match g {
            TestFunction::Constant => Ok(1.0),
            TestFunction::Cylinder { word } => Ok(self.cylinder(word)),
            other => Err(Error::UnsupportedPairing(format!(
                "{} against the Markov oracle",
                other.id()
            ))),
        }
    }
}

/// Result of the two-route natural-extension computation.
#[derive(Clone, Debug)]
pub struct LiftedCylinder {
    pub anchored: AnchoredWord,
    /// Stationary two-sided value (anchor position is immaterial).
    pub direct: f64,
    /// μ(π(f̂⁻ⁿ Ê)) for n = 0, 1, …
    pub route: Vec<f64>,
    pub anchor_depth: usize,
    /// max |route[n] − direct| over n ≥ anchor_depth.
    pub max_difference: f64,
}

/// Power iteration for the dominant eigenpair of a primitive nonnegative
/// matrix.
fn perron(m: &[Vec<f64>]) -> Result<(f64, Vec<f64>)> {
    let n = m.len();
    let mut v = vec![1.0 / n as f64; n];
    let mut lambda = 0.0;
    for _ in 0..PERRON_MAX_ITERS {
        let mut next = vec![0.0; n];
        for i in 0..n {
            let mut acc = 0.0;
            for j in 0..n {
                acc += m[i][j] * v[j];
            }
            next[i] = acc;
        }
        let norm: f64 = next.iter().sum();
        if norm <= 0.0 || !norm.is_finite() {
            return Err(Error::InvalidSystem("power iteration collapsed".into()));
        }
        for x in &mut next {
            *x /= norm;
        }
        let delta = next
            .iter()
            .zip(&v)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max);
        let lambda_changed = (norm - lambda).abs() > PERRON_TOL * norm;
        v = next;
        lambda = norm;
        if delta <= PERRON_TOL && !lambda_changed {
            if v.iter().any(|&x| x <= 0.0) {
                return Err(Error::InvalidSystem(
                    "Perron vector has a nonpositive component".into(),
                ));
            }
            return Ok((lambda, v));
        }
    }
    Err(Error::InvalidSystem(
        "power iteration did not converge".into(),
    ))
}

/// Haar (Lebesgue) measure on T^m: the equilibrium state of constant
/// potentials on linear toral maps.
pub struct HaarOracle {
    dim: usize,
}

impl HaarOracle {
    pub fn new(dim: usize) -> HaarOracle {
        HaarOracle { dim }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }
}

impl Pairing for HaarOracle {
    fn pair(&self, g: &TestFunction) -> Result<f64> {
        match g {
            TestFunction::Constant => Ok(1.0),
            TestFunction::Character { freq, part } => {
                if freq.len() != self.dim {
                    return Err(Error::DimensionMismatch {
                        expected: self.dim,
                        got: freq.len(),
                    });
                }
                if freq.iter().all(|&k| k == 0) {
                    Ok(match part {
                        CharacterPart::Re => 1.0,
                        CharacterPart::Im => 0.0,
                    })
                } else {
                    Ok(0.0)
                }
            }
            other => Err(Error::UnsupportedPairing(format!(
                "{} against the Haar oracle",
                other.id()
            ))),
        }
    }
}

/// Identification string for report rows.
pub fn oracle_label(markov: Option<&MarkovOracle>) -> String {
    match markov {
        Some(o) => format!("markov(lambda={:.12})", o.lambda()),
        None => "haar".into(),
    }
}
