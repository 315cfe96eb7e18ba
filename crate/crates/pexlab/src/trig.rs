//! Real trigonometric polynomials on the unit circle.
//!
//! All smooth data in the model (the periodic part of the expanding lift and
//! the ceiling function) is represented exactly as a finite trigonometric
//! polynomial, so periodicity and derivatives are closed-form and no
//! interpolation error enters downstream quadrature.

use serde::{Deserialize, Serialize};

use crate::{Error, Result};

use std::f64::consts::TAU;

/// `p(x) = c0 + Σ_j a_j cos(2πjx) + b_j sin(2πjx)`, indices `j = 1..=degree`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize, Default)]
pub struct TrigPolynomial {
    pub constant: f64,
    #[serde(default)]
    pub cos: Vec<f64>,
    #[serde(default)]
    pub sin: Vec<f64>,
}

impl TrigPolynomial {
    pub fn constant(c: f64) -> Self {
        Self {
            constant: c,
            cos: Vec::new(),
            sin: Vec::new(),
        }
    }

    pub fn zero() -> Self {
        Self::constant(0.0)
    }

    /// `cos(2πhx)` scaled by `amp`.
    pub fn cosine(h: usize, amp: f64) -> Result<Self> {
        if h == 0 {
            return Err(Error::InvalidParameter("harmonic must be ≥ 1".into()));
        }
        let mut cos = vec![0.0; h];
        cos[h - 1] = amp;
        Ok(Self {
            constant: 0.0,
            cos,
            sin: Vec::new(),
        })
    }

    /// `sin(2πhx)` scaled by `amp`.
    pub fn sine(h: usize, amp: f64) -> Result<Self> {
        if h == 0 {
            return Err(Error::InvalidParameter("harmonic must be ≥ 1".into()));
        }
        let mut sin = vec![0.0; h];
        sin[h - 1] = amp;
        Ok(Self {
            constant: 0.0,
            cos: Vec::new(),
            sin,
        })
    }

    pub fn degree(&self) -> usize {
        self.cos.len().max(self.sin.len())
    }

    pub fn eval(&self, x: f64) -> f64 {
        let mut v = self.constant;
        for (j, &a) in self.cos.iter().enumerate() {
            if a != 0.0 {
                v += a * (TAU * (j + 1) as f64 * x).cos();
            }
        }
        for (j, &b) in self.sin.iter().enumerate() {
            if b != 0.0 {
                v += b * (TAU * (j + 1) as f64 * x).sin();
            }
        }
        v
    }

    /// Term-by-term derivative value `p'(x)`.
    pub fn deriv(&self, x: f64) -> f64 {
        let mut v = 0.0;
        for (j, &a) in self.cos.iter().enumerate() {
            if a != 0.0 {
                let w = TAU * (j + 1) as f64;
                v -= a * w * (w * x).sin();
            }
        }
        for (j, &b) in self.sin.iter().enumerate() {
            if b != 0.0 {
                let w = TAU * (j + 1) as f64;
                v += b * w * (w * x).cos();
            }
        }
        v
    }

    /// `r`-th derivative value, via the phase-shift closed form
    /// `d^r/dx^r cos(wx) = w^r cos(wx + rπ/2)`.
    pub fn deriv_order(&self, x: f64, r: u32) -> f64 {
        if r == 0 {
            return self.eval(x);
        }
        let shift = r as f64 * std::f64::consts::FRAC_PI_2;
        let mut v = 0.0;
        for (j, &a) in self.cos.iter().enumerate() {
            if a != 0.0 {
                let w = TAU * (j + 1) as f64;
                v += a * w.powi(r as i32) * (w * x + shift).cos();
            }
        }
        for (j, &b) in self.sin.iter().enumerate() {
            if b != 0.0 {
                let w = TAU * (j + 1) as f64;
                v += b * w.powi(r as i32) * (w * x + shift).sin();
            }
        }
        v
    }

    /// Rigorous coefficient bound for `sup |p^{(r)}|`.
    pub fn deriv_order_sup_bound(&self, r: u32) -> f64 {
        if r == 0 {
            return self.sup_bound();
        }
        let mut v = 0.0;
        for (j, &a) in self.cos.iter().enumerate() {
            v += a.abs() * (TAU * (j + 1) as f64).powi(r as i32);
        }
        for (j, &b) in self.sin.iter().enumerate() {
            v += b.abs() * (TAU * (j + 1) as f64).powi(r as i32);
        }
        v
    }

    /// `self + scale · other`, coefficient-wise (exact).
    pub fn add_scaled(&self, other: &Self, scale: f64) -> Self {
        let deg = self.degree().max(other.degree());
        let mut cos = vec![0.0; deg];
        let mut sin = vec![0.0; deg];
        for (j, c) in cos.iter_mut().enumerate() {
            *c = self.cos.get(j).copied().unwrap_or(0.0)
                + scale * other.cos.get(j).copied().unwrap_or(0.0);
        }
        for (j, s) in sin.iter_mut().enumerate() {
            *s = self.sin.get(j).copied().unwrap_or(0.0)
                + scale * other.sin.get(j).copied().unwrap_or(0.0);
        }
        Self {
            constant: self.constant + scale * other.constant,
            cos,
            sin,
        }
    }

    /// Rigorous coefficient bound for `sup |p|`.
    pub fn sup_bound(&self) -> f64 {
        self.constant.abs()
            + self.cos.iter().map(|a| a.abs()).sum::<f64>()
            + self.sin.iter().map(|b| b.abs()).sum::<f64>()
    }

    /// Rigorous coefficient bound for `sup |p'|`.
    pub fn deriv_sup_bound(&self) -> f64 {
        let mut v = 0.0;
        for (j, &a) in self.cos.iter().enumerate() {
            v += a.abs() * TAU * (j + 1) as f64;
        }
        for (j, &b) in self.sin.iter().enumerate() {
            v += b.abs() * TAU * (j + 1) as f64;
        }
        v
    }

    /// Grid maximum of `|p|` over one period (8192 samples).
    pub fn sup_on_grid(&self) -> f64 {
        grid_max(|x| self.eval(x).abs())
    }

    /// Grid maximum of `|p'|` over one period (8192 samples).
    pub fn deriv_sup_on_grid(&self) -> f64 {
        grid_max(|x| self.deriv(x).abs())
    }

    /// Grid minimum of `p` over one period (8192 samples).
    pub fn min_on_grid(&self) -> f64 {
        -grid_max(|x| -self.eval(x))
    }

    pub fn is_zero(&self) -> bool {
        self.constant == 0.0
            && self.cos.iter().all(|&a| a == 0.0)
            && self.sin.iter().all(|&b| b == 0.0)
    }
}

fn grid_max(f: impl Fn(f64) -> f64) -> f64 {
    const N: usize = 8192;
    let mut m = f64::NEG_INFINITY;
    for t in 0..N {
        m = m.max(f(t as f64 / N as f64));
    }
    m
}
