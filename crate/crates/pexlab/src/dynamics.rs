//! Circle diffeomorphisms, expanding lifts, and skew products.
//!
//! Maps live on the real line as lifts: a circle diffeomorphism is
//! `g(x) = x + p(x)` with `p` a trig polynomial, so `g(x+1) = g(x)+1` holds
//! exactly by construction, and the expanding lift is `E(x) = k·g(x)` with
//! `E(x+1) = E(x)+k`. Degenerate inputs (`min g' ≤ 0`, `min E' ≤ 1`) are
//! rejected at construction.

use serde::{Deserialize, Serialize};

use crate::trig::TrigPolynomial;
use crate::{Error, Result};

/// Default tolerance for branch inversion residuals.
pub const INVERT_TOL: f64 = 1e-12;
const INVERT_CAP: usize = 200;

/// Orientation-preserving circle diffeomorphism `g(x) = x + p(x)`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CircleDiffeo {
    periodic: TrigPolynomial,
    min_slope: f64,
    sup_periodic: f64,
}

impl CircleDiffeo {
    pub fn new(periodic: TrigPolynomial) -> Result<Self> {
        let min_slope = 1.0 + {
            // min of p' on the grid; p' is smooth and band-limited, the 8192
            // grid resolves every harmonic we admit
            let mut m = f64::INFINITY;
            for t in 0..8192 {
                m = m.min(periodic.deriv(t as f64 / 8192.0));
            }
            m
        };
        if min_slope <= 0.0 {
            return Err(Error::NotDiffeo { min_slope });
        }
        let sup_periodic = periodic.sup_bound();
        Ok(Self {
            periodic,
            min_slope,
            sup_periodic,
        })
    }

    pub fn identity() -> Self {
        Self::new(TrigPolynomial::zero()).expect("identity is a diffeomorphism")
    }

    pub fn periodic_part(&self) -> &TrigPolynomial {
        &self.periodic
    }

    pub fn min_slope(&self) -> f64 {
        self.min_slope
    }

    /// Lift value `g(x) = x + p(x)`.
    pub fn eval(&self, x: f64) -> f64 {
        x + self.periodic.eval(x)
    }

    /// Lift slope `g'(x) = 1 + p'(x)`.
    pub fn deriv(&self, x: f64) -> f64 {
        1.0 + self.periodic.deriv(x)
    }

    /// Inverse lift `g⁻¹(z)` by bisection-seeded Newton.
    pub fn invert(&self, z: f64, tol: f64) -> Result<f64> {
        // x = z - p(x) brackets the root within sup|p| of z
        let lo = z - self.sup_periodic - 1e-9;
        let hi = z + self.sup_periodic + 1e-9;
        solve_increasing(|x| (self.eval(x), self.deriv(x)), z, lo, hi, tol)
    }
}

/// Partially expanding skew product data: `f(x,s) = (k·g(x) mod 1, s + τ(x)/2π mod 1)`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SkewProductSystem {
    k: u32,
    g: CircleDiffeo,
    tau: TrigPolynomial,
    lambda_floor: f64,
}

impl SkewProductSystem {
    pub fn new(k: u32, g: CircleDiffeo, tau: TrigPolynomial) -> Result<Self> {
        if k < 2 {
            return Err(Error::InvalidParameter(format!("k = {k} must be ≥ 2")));
        }
        let lambda_floor = k as f64 * g.min_slope();
        if lambda_floor <= 1.0 {
            return Err(Error::NotExpanding {
                min_slope: lambda_floor,
            });
        }
        Ok(Self {
            k,
            g,
            tau,
            lambda_floor,
        })
    }

    /// `k = 2`, `g = id`, `τ(x) = cos(2πx)`: the standard nonlinear-ceiling
    /// doubling example used throughout the test batteries.
    pub fn doubling_cosine() -> Self {
        Self::new(
            2,
            CircleDiffeo::identity(),
            TrigPolynomial::cosine(1, 1.0).unwrap(),
        )
        .unwrap()
    }

    /// `k = 2`, `g = id`, constant ceiling: the totally captive example.
    pub fn doubling_constant(c: f64) -> Self {
        Self::new(2, CircleDiffeo::identity(), TrigPolynomial::constant(c)).unwrap()
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn g(&self) -> &CircleDiffeo {
        &self.g
    }

    pub fn tau(&self) -> &TrigPolynomial {
        &self.tau
    }

    /// `min_x E'(x)`, the expansion floor λ₀ of this realized map.
    pub fn lambda_floor(&self) -> f64 {
        self.lambda_floor
    }

    /// Expanding lift `E(x) = k·g(x)` and its slope.
    pub fn lift(&self, x: f64) -> (f64, f64) {
        (self.k as f64 * self.g.eval(x), self.k as f64 * self.g.deriv(x))
    }

    pub fn lift_value(&self, x: f64) -> f64 {
        self.k as f64 * self.g.eval(x)
    }

    pub fn lift_slope(&self, x: f64) -> f64 {
        self.k as f64 * self.g.deriv(x)
    }

    pub fn tau_value(&self, x: f64) -> f64 {
        self.tau.eval(x)
    }

    pub fn tau_deriv(&self, x: f64) -> f64 {
        self.tau.deriv(x)
    }

    /// Global inverse of the lift: `G(y)` with `E(G(y)) = y`, `G(y+k) = G(y)+1`.
    pub fn invert(&self, y: f64, tol: f64) -> Result<f64> {
        self.g.invert(y / self.k as f64, tol)
    }

    /// Branch preimage `x_j = g⁻¹((y+j)/k)` for `0 ≤ j < k`; maps `[0,1) → [0,1)`.
    pub fn branch_preimage(&self, j: u32, y: f64) -> Result<f64> {
        debug_assert!(j < self.k);
        self.g
            .invert((y + j as f64) / self.k as f64, INVERT_TOL)
    }

    /// Whether the expanding part is linear (`g = id` up to coefficient zero).
    pub fn is_linear(&self) -> bool {
        self.g.periodic_part().is_zero()
    }
}

/// Safeguarded Newton for a strictly increasing function: find `x` with
/// `f(x) = target` inside `[lo, hi]`, falling back to bisection whenever a
/// Newton step leaves the bracket.
fn solve_increasing(
    f: impl Fn(f64) -> (f64, f64),
    target: f64,
    mut lo: f64,
    mut hi: f64,
    tol: f64,
) -> Result<f64> {
    let mut x = 0.5 * (lo + hi);
    let mut residual = f64::INFINITY;
    for _ in 0..INVERT_CAP {
        let (v, dv) = f(x);
        residual = v - target;
        if residual.abs() <= tol {
            return Ok(x);
        }
        if residual > 0.0 {
            hi = x;
        } else {
            lo = x;
        }
        let step = residual / dv;
        let newton = x - step;
        x = if dv > 0.0 && newton > lo && newton < hi {
            newton
        } else {
            0.5 * (lo + hi)
        };
    }
    Err(Error::InversionDiverged {
        residual: residual.abs(),
        iters: INVERT_CAP,
    })
}
