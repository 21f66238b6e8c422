//! Fixtures shared by the benches: the systems and potentials whose hot
//! paths dominate acceptance-scale runs.

use gibbstate::{LocallyConstantPotential, ShiftSystem, TorusEndomorphism, TrigScalar};

pub fn folded_torus() -> TorusEndomorphism {
    TorusEndomorphism::linear(&[vec![0, -2], vec![1, 4]]).unwrap()
}

pub fn zero_torus_potential() -> TrigScalar {
    TrigScalar::zero(2)
}

pub fn cosine_potential() -> TrigScalar {
    TrigScalar::new(2, 0.0, vec![(vec![1, 0], 0.3, 0.1)]).unwrap()
}

pub fn full_two_shift() -> ShiftSystem {
    ShiftSystem::full_shift(2).unwrap()
}

pub fn beta_potential(sys: &ShiftSystem) -> LocallyConstantPotential {
    LocallyConstantPotential::from_fn(sys, 1, |w| if w[0] == 1 { 3.0f64.ln() } else { 0.0 })
        .unwrap()
}

pub fn golden_pair() -> (ShiftSystem, LocallyConstantPotential) {
    let sys = ShiftSystem::golden_mean();
    let phi = LocallyConstantPotential::from_fn(&sys, 2, |w| 0.4 * w[0] as f64 - 0.7 * w[1] as f64)
        .unwrap();
    (sys, phi)
}
