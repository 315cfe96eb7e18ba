//! Realized random systems along a noise path, and their forward/backward
//! compositions.
//!
//! A `CocycleContext` pins one base system, one perturbation family, one
//! sampled path and one noise level, with every realized time slice validated
//! against the expansion floor `λ = (λ₀+1)/2` at construction. Composition
//! conventions follow the cocycle
//!
//! ```text
//! E^(n)(ω,x) = E(θ^{n-1}ω) ∘ … ∘ E(ω)(x)
//! τ^(n)(ω,x) = Σ_{i<n} τ(θ^i ω, E^(i)(ω,x))
//! ```
//!
//! and the backward cocycle `G^(n)(ω) = G(ω) ∘ G(θω) ∘ … ∘ G(θ^{n-1}ω)`
//! inverting it.

use crate::dynamics::{SkewProductSystem, INVERT_TOL};
use crate::noise::{NoisePath, PerturbationFamily};
use crate::{Error, Result};

/// One base system + family + path + ε, with realized slices cached per index.
#[derive(Debug, Clone)]
pub struct CocycleContext {
    base: SkewProductSystem,
    family: PerturbationFamily,
    path: NoisePath,
    epsilon: f64,
    lambda: f64,
    realized: Vec<SkewProductSystem>,
}

impl CocycleContext {
    pub fn new(
        base: SkewProductSystem,
        family: PerturbationFamily,
        path: NoisePath,
        epsilon: f64,
    ) -> Result<Self> {
        if epsilon < 0.0 {
            return Err(Error::InvalidParameter("ε must be ≥ 0".into()));
        }
        if epsilon > 0.0 && path.dim() != family.dim() {
            return Err(Error::InvalidParameter(format!(
                "path dimension {} does not match family dimension {}",
                path.dim(),
                family.dim()
            )));
        }
        let lambda = (base.lambda_floor() + 1.0) / 2.0;
        let (lo, hi) = path.window();
        let mut realized = Vec::new();
        if epsilon > 0.0 {
            realized.reserve((hi - lo + 1) as usize);
            for j in lo..=hi {
                realized.push(family.realize(&base, &path, j, epsilon, lambda)?);
            }
        }
        Ok(Self {
            base,
            family,
            path,
            epsilon,
            lambda,
            realized,
        })
    }

    /// Unperturbed context: every time slice is the base system and the
    /// window is unbounded (the constant map needs no independence).
    pub fn deterministic(base: SkewProductSystem) -> Self {
        Self::new(base, PerturbationFamily::empty(), NoisePath::sample(0, 1, 0).unwrap(), 0.0)
            .expect("deterministic context is always valid")
    }

    pub fn base(&self) -> &SkewProductSystem {
        &self.base
    }

    pub fn family(&self) -> &PerturbationFamily {
        &self.family
    }

    pub fn path(&self) -> &NoisePath {
        &self.path
    }

    pub fn epsilon(&self) -> f64 {
        self.epsilon
    }

    /// The expansion floor `λ = (λ₀+1)/2` every realized slice satisfies.
    pub fn lambda(&self) -> f64 {
        self.lambda
    }

    /// `k` of the base (and every realized) system.
    pub fn k(&self) -> u32 {
        self.base.k()
    }

    /// Canonical derivative bound `C_τ = sup|τ₀'| + 1`, valid for every
    /// realized slice provided `ε·Σ sup|v_i'| ≤ 1`.
    pub fn c_tau(&self) -> f64 {
        self.base.tau().deriv_sup_on_grid() + 1.0
    }

    /// Whether `C_τ` indeed dominates every realized `sup|τ_ε'|`.
    pub fn c_tau_is_valid(&self) -> bool {
        let slack: f64 = self
            .family
            .ceiling_basis
            .iter()
            .map(|v| v.deriv_sup_bound())
            .sum();
        self.epsilon * slack <= 1.0 + 1e-12
    }

    /// Realized system at time index `j`.
    pub fn sys(&self, j: i64) -> Result<&SkewProductSystem> {
        if self.epsilon == 0.0 {
            return Ok(&self.base);
        }
        let (lo, hi) = self.path.window();
        if j < lo || j > hi {
            return Err(Error::WindowExhausted { index: j, lo, hi });
        }
        Ok(&self.realized[(j - lo) as usize])
    }

    /// `(E^(n)(ω_j, x), τ^(n)(ω_j, x), dE^(n)/dx)`; `n = 0` is the identity.
    pub fn compose_forward(&self, j: i64, n: usize, x: f64) -> Result<(f64, f64, f64)> {
        let mut cur = x;
        let mut tau_acc = 0.0;
        let mut deriv = 1.0;
        for i in 0..n {
            let sys = self.sys(j + i as i64)?;
            tau_acc += sys.tau_value(cur);
            let (e, de) = sys.lift(cur);
            deriv *= de;
            cur = e;
        }
        Ok((cur, tau_acc, deriv))
    }

    /// `(G^(n)(ω_j, x), dG^(n)/dx)` with `E^(n)(ω_j, G^(n)(ω_j,x)) = x`;
    /// inverts the steps at indices `j+n-1` down to `j`.
    pub fn compose_backward(&self, j: i64, n: usize, x: f64) -> Result<(f64, f64)> {
        let mut cur = x;
        let mut deriv = 1.0;
        for i in (0..n).rev() {
            let sys = self.sys(j + i as i64)?;
            cur = sys.invert(cur, INVERT_TOL)?;
            deriv /= sys.lift_slope(cur);
        }
        Ok((cur, deriv))
    }

    /// Time-`n` skew product on the torus:
    /// `(x,s) ↦ (E^(n) mod 1, s + τ^(n)/2π mod 1)`.
    pub fn skew_apply(&self, j: i64, n: usize, point: (f64, f64)) -> Result<(f64, f64)> {
        let (e, tau, _) = self.compose_forward(j, n, point.0)?;
        Ok((
            e.rem_euclid(1.0),
            (point.1 + tau / std::f64::consts::TAU).rem_euclid(1.0),
        ))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::noise::NoisePath;
    use approx::assert_abs_diff_eq;

    fn noisy_ctx(eps: f64, seed: u64) -> CocycleContext {
        let base = SkewProductSystem::doubling_cosine();
        let fam = PerturbationFamily::standard();
        let path = NoisePath::sample(seed, 64, fam.dim()).unwrap();
        CocycleContext::new(base, fam, path, eps).unwrap()
    }

    #[test]
    fn zero_steps_are_identities() {
        let ctx = noisy_ctx(0.05, 11);
        let (e, t, d) = ctx.compose_forward(0, 0, 0.37).unwrap();
        assert_eq!((e, t, d), (0.37, 0.0, 1.0));
        let (g, dg) = ctx.compose_backward(0, 0, 0.37).unwrap();
        assert_eq!((g, dg), (0.37, 1.0));
        assert_eq!(ctx.skew_apply(0, 0, (0.2, 0.9)).unwrap(), (0.2, 0.9));
    }

    #[test]
    fn deterministic_hand_composition() {
        // ε=0, linear k=2, τ=cos(2πx), n=2 at x=0: E=0, τ-sum = 2, dE = 4
        let ctx = CocycleContext::deterministic(SkewProductSystem::doubling_cosine());
        let (e, t, d) = ctx.compose_forward(0, 2, 0.0).unwrap();
        assert_abs_diff_eq!(e, 0.0, epsilon = 1e-14);
        assert_abs_diff_eq!(t, 2.0, epsilon = 1e-14);
        assert_abs_diff_eq!(d, 4.0, epsilon = 1e-14);
    }

    #[test]
    fn forward_cocycle_splice() {
        let ctx = noisy_ctx(0.04, 5);
        for (n, m) in [(1usize, 1usize), (2, 3), (4, 2)] {
            for t in 0..12 {
                let x = t as f64 * 0.083;
                let (whole, tau_whole, d_whole) =
                    ctx.compose_forward(0, n + m, x).unwrap();
                let (mid, tau_m, d_m) = ctx.compose_forward(0, m, x).unwrap();
                let (spliced, tau_n, d_n) =
                    ctx.compose_forward(m as i64, n, mid).unwrap();
                assert_abs_diff_eq!(whole, spliced, epsilon = 1e-12 * (1.0 + whole.abs()));
                assert_abs_diff_eq!(tau_whole, tau_m + tau_n, epsilon = 1e-12);
                assert_abs_diff_eq!(d_whole, d_m * d_n, epsilon = 1e-10 * d_whole.abs());
            }
        }
    }

    #[test]
    fn backward_inverts_forward() {
        let ctx = noisy_ctx(0.05, 23);
        for n in [1usize, 3, 6] {
            for t in 0..20 {
                let x = t as f64 * 0.31 - 2.0;
                let (g, dg) = ctx.compose_backward(0, n, x).unwrap();
                let (e, _, de) = ctx.compose_forward(0, n, g).unwrap();
                assert!((e - x).abs() <= 1e-10, "round trip {e} vs {x}");
                // dG is the reciprocal of dE along the fiber
                assert_abs_diff_eq!(dg * de, 1.0, epsilon = 1e-9);
                assert!(dg > 0.0 && dg <= ctx.lambda().powi(-(n as i32)) + 1e-12);
            }
        }
    }

    #[test]
    fn backward_derivative_matches_finite_difference() {
        let ctx = noisy_ctx(0.03, 7);
        let h = 1e-6;
        for t in 0..10 {
            let x = t as f64 * 0.21;
            let (_, dg) = ctx.compose_backward(0, 5, x).unwrap();
            let (gp, _) = ctx.compose_backward(0, 5, x + h).unwrap();
            let (gm, _) = ctx.compose_backward(0, 5, x - h).unwrap();
            let fd = (gp - gm) / (2.0 * h);
            assert!((dg - fd).abs() <= 1e-6 * dg.abs().max(1e-12),
                "product rule {dg} vs fd {fd}");
        }
    }

    #[test]
    fn deterministic_backward_contraction_bound() {
        let ctx = CocycleContext::deterministic(SkewProductSystem::doubling_cosine());
        for n in 1..=8usize {
            for t in 0..100 {
                let x = t as f64 / 100.0;
                let (_, dg) = ctx.compose_backward(0, n, x).unwrap();
                assert!(dg <= 2.0_f64.powi(-(n as i32)) + 1e-13);
            }
        }
    }

    #[test]
    fn theta_shift_matches_index_shift() {
        let base = SkewProductSystem::doubling_cosine();
        let fam = PerturbationFamily::standard();
        let path = NoisePath::sample(40, 32, fam.dim()).unwrap();
        let a = CocycleContext::new(base.clone(), fam.clone(), path.shifted(1), 0.08).unwrap();
        let b = CocycleContext::new(base, fam, path, 0.08).unwrap();
        for j in -4..=4 {
            let sa = a.sys(j).unwrap();
            let sb = b.sys(j + 1).unwrap();
            assert_eq!(sa.g().periodic_part(), sb.g().periodic_part());
            assert_eq!(sa.tau(), sb.tau());
        }
    }

    #[test]
    fn skew_cocycle_on_torus() {
        let ctx = noisy_ctx(0.06, 99);
        // Θ-cocycle: f^(n+m)(ω) = f^(n)(θ^m ω) ∘ f^(m)(ω)
        for (n, m) in [(2usize, 2usize), (3, 1)] {
            for t in 0..8 {
                let z = (t as f64 * 0.119, t as f64 * 0.057);
                let whole = ctx.skew_apply(0, n + m, z).unwrap();
                let mid = ctx.skew_apply(0, m, z).unwrap();
                let spliced = ctx.skew_apply(m as i64, n, mid).unwrap();
                let d0 = (whole.0 - spliced.0).rem_euclid(1.0).min((spliced.0 - whole.0).rem_euclid(1.0));
                let d1 = (whole.1 - spliced.1).rem_euclid(1.0).min((spliced.1 - whole.1).rem_euclid(1.0));
                assert!(d0 < 1e-12 && d1 < 1e-12);
            }
        }
    }

    #[test]
    fn single_step_skew_value() {
        // ε=0, doubling+cosine at (0,0), n=1 → (0, 1/2π)
        let ctx = CocycleContext::deterministic(SkewProductSystem::doubling_cosine());
        let (x, s) = ctx.skew_apply(0, 1, (0.0, 0.0)).unwrap();
        assert_abs_diff_eq!(x, 0.0, epsilon = 1e-14);
        assert_abs_diff_eq!(s, 1.0 / std::f64::consts::TAU, epsilon = 1e-14);
    }

    #[test]
    fn realized_slices_respect_floor_for_small_epsilon() {
        let base = SkewProductSystem::doubling_cosine();
        let fam = PerturbationFamily::standard();
        let eps0 = crate::noise::epsilon_floor(&fam, &base, 1.5, 50, 1.0);
        for seed in 0..20u64 {
            let path = NoisePath::sample(seed, 50, fam.dim()).unwrap();
            let ctx = CocycleContext::new(base.clone(), fam.clone(), path, eps0 / 2.0);
            let ctx = ctx.expect("half the floor must realize everywhere");
            for j in -50..=50 {
                assert!(ctx.sys(j).unwrap().lambda_floor() >= ctx.lambda() - 1e-12);
            }
        }
    }
}
