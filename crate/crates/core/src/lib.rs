//! Numerical approximation of equilibrium states for expanding dynamics.
//!
//! Two computable system families are provided: hyperbolic toral
//! endomorphisms (optionally perturbed by trigonometric polynomials) and
//! one-sided subshifts of finite type. Approximating measures are built from
//! weighted preimage trees and periodic-point sums; exact transfer-matrix and
//! Haar oracles supply the reference values that the convergence estimators
//! report against.

pub mod dynamics;
pub mod error;
pub mod estimators;
pub mod intmat;
pub mod measure;
pub mod oracle;
pub mod point;
pub mod rat;
pub mod shift;
pub mod torus;
pub mod tree;

pub use dynamics::{birkhoff_sum, orbit, DynamicalSystem, Potential, SpaceKind};
pub use error::{Error, Result};
pub use estimators::{
    birkhoff_deviation, l1_convergence_statistic, max_fourier_modulus, periodic_point_measure,
    pointwise_sequence, pressure_estimate, ConvergenceReport, PointSampler,
};
pub use measure::{
    weak_star_distance, AtomicMeasure, CharacterPart, Pairing, TestDictionary, TestFunction,
    WeightScheme,
};
pub use oracle::{HaarOracle, LiftedCylinder, MarkovOracle};
pub use point::{word_from_string, word_to_string, Point, Word};
pub use shift::{AnchoredWord, LocallyConstantPotential, ShiftSystem};
pub use torus::{
    classify, HyperbolicityClass, HyperbolicityReport, Perturbation, TorusEndomorphism, TrigScalar,
    TrigTerm,
};
pub use tree::{preimage_leaf_weights, weighted_preimage_measure, TreeOptions};
