use std::sync::Arc;

use super::class::CycleClass;
use super::hom::HomMatrix;
use super::instance::ChowInstance;
use super::ChowError;

fn coords(blocks: &[std::ops::Range<usize>]) -> Vec<usize> {
    blocks.iter().flat_map(|r| r.clone()).collect()
}

/// `β ∘ α = (pr_13)_*(pr_12^*(α) · pr_23^*(β))` for `α` on `A^{a+b}` and `β` on `A^{b+c}`.
pub fn corr_compose(alpha: &CycleClass, beta: &CycleClass, b: usize) -> Result<CycleClass, ChowError> {
    if alpha.m < b || beta.m < b {
        return Err(ChowError::Mismatch(format!(
            "middle factor A^{b} does not fit classes on A^{} and A^{}",
            alpha.m, beta.m
        )));
    }
    let (a, c) = (alpha.m - b, beta.m - b);
    let t = a + b + c;
    let pr12 = HomMatrix::projection(t, &(0..a + b).collect::<Vec<_>>());
    let pr23 = HomMatrix::projection(t, &(a..t).collect::<Vec<_>>());
    let pr13 = HomMatrix::projection(t, &coords(&[0..a, a + b..t]));
    alpha
        .pullback(&pr12)?
        .product(&beta.pullback(&pr23)?)?
        .pushforward(&pr13)
}

/// `σ^*(α)` for `α` on `A^{a+b}`, giving a class on `A^{b+a}`.
pub fn corr_transpose(alpha: &CycleClass, a: usize) -> Result<CycleClass, ChowError> {
    if alpha.m < a {
        return Err(ChowError::Mismatch(format!("A^{a} is not a factor of A^{}", alpha.m)));
    }
    alpha.pullback(&HomMatrix::block_swap(alpha.m - a, a))
}

/// `ρ^*(α ⊗ α')` on `(X×X') × (Y×Y')` for `α` on `X×Y = A^{a+b}`, `α'` on `X'×Y' = A^{a'+b'}`.
pub fn corr_tensor(alpha: &CycleClass, a: usize, alpha2: &CycleClass, a2: usize) -> Result<CycleClass, ChowError> {
    let (b, b2) = (alpha.m - a, alpha2.m - a2);
    let t = a + b + a2 + b2;
    // ρ: X X' Y Y' → X Y X' Y'
    let rho = HomMatrix::projection(t, &coords(&[0..a, a + a2..a + a2 + b, a..a + a2, a + a2 + b..t]));
    alpha.external_tensor(alpha2)?.pullback(&rho)
}

/// Image of `x ∈ C(A^a)` under `α ∈ C(A^{a+b})`, regarding `x` as a class on `S × A^a`.
pub fn corr_apply(alpha: &CycleClass, x: &CycleClass) -> Result<CycleClass, ChowError> {
    corr_compose(x, alpha, x.m)
}

/// Both triangular identities for the duality built from `Δ_*(1)` on `A^m`.
pub fn duality_check(inst: &Arc<ChowInstance>, m: usize) -> Result<Vec<(String, bool)>, ChowError> {
    let delta = CycleClass::diagonal(inst, m)?;
    // η ∈ C(S × X²) and ε ∈ C(X² × S) are both Δ_*(1)
    let eta = &delta;
    let eps = &delta;
    let one_eta = corr_tensor(&delta, m, eta, 0)?;
    let eps_one = corr_tensor(eps, 2 * m, &delta, m)?;
    let first = corr_compose(&one_eta, &eps_one, 3 * m)?;
    let eta_one = corr_tensor(eta, 0, &delta, m)?;
    let one_eps = corr_tensor(&delta, m, eps, 2 * m)?;
    let second = corr_compose(&eta_one, &one_eps, 3 * m)?;
    Ok(vec![
        ("(ε⊗1)∘(1⊗η) = 1".to_string(), first == delta),
        ("(1⊗ε)∘(η⊗1) = 1".to_string(), second == delta),
    ])
}
