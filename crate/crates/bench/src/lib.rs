//! Models shared by the benchmarks.

use occupation_core::{ClaimDistribution, LevyModel};

pub fn exp_claims() -> LevyModel {
    LevyModel::cramer_lundberg(1.0, 1.0, ClaimDistribution::exponential(2.0).unwrap()).unwrap()
}

pub fn jump_diffusion() -> LevyModel {
    LevyModel::jump_diffusion(1.0, 1.0, 1.0, ClaimDistribution::exponential(2.0).unwrap()).unwrap()
}

pub fn erlang_claims() -> LevyModel {
    LevyModel::cramer_lundberg(2.0, 1.0, ClaimDistribution::erlang(3, 3.0).unwrap()).unwrap()
}
