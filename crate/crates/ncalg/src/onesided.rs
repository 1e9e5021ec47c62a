//! One-sided polynomials in the Cohn/Lam convention: all coefficients
//! written on the left, `f = Σ aᵢ xⁱ`, multiplied formally as if `x` were
//! central.
//!
//! This is a diagnostic companion to [`crate::poly`]: the formal product
//! here is *not* compatible with evaluation (the value of a product is not
//! the product of values), which is exactly why two-sided coefficient
//! chains are used for the real arithmetic. The classic witness: `a` is not
//! a root of the formal product `(x−a)(x−b)` unless `a` and `b` commute.

use crate::algebra::{AlgebraSpec, Element};
use crate::poly::{NcPolynomial, PolyError};
use std::sync::Arc;

/// `coeffs[d]` is the left coefficient of `x^d`.
#[derive(Clone, Debug)]
pub struct OneSidedPoly {
    algebra: Arc<AlgebraSpec>,
    coeffs: Vec<Element>,
}

impl PartialEq for OneSidedPoly {
    fn eq(&self, other: &Self) -> bool {
        self.algebra.same_structure(&other.algebra) && self.coeffs == other.coeffs
    }
}

impl OneSidedPoly {
    pub fn new(algebra: &Arc<AlgebraSpec>, coeffs: Vec<Element>) -> Result<Self, PolyError> {
        let probe = Element::zero(algebra);
        for c in &coeffs {
            if !probe.same_algebra(c) {
                return Err(PolyError::Algebra(
                    crate::algebra::AlgebraError::AlgebraMismatch,
                ));
            }
        }
        Ok(OneSidedPoly {
            algebra: Arc::clone(algebra),
            coeffs,
        })
    }

    /// `x − a`
    pub fn x_minus(a: &Element) -> Result<Self, PolyError> {
        let one = Element::unit(a.algebra()).map_err(|_| PolyError::NoUnit)?;
        OneSidedPoly::new(a.algebra(), vec![-a, one])
    }

    pub fn coeffs(&self) -> &[Element] {
        &self.coeffs
    }

    /// Collapse a two-sided polynomial into one-sided form by moving every
    /// coefficient left across the variable: `a₀xa₁x…xa_k ↦ (a₀a₁…a_k)xᵏ`.
    /// Lossy in general; this is the coercion Lam's convention forces.
    pub fn collapse(p: &NcPolynomial) -> Result<Self, PolyError> {
        let algebra = Arc::clone(p.algebra());
        let mut coeffs: Vec<Element> = Vec::new();
        for m in p.monomials() {
            let deg = m.degree();
            while coeffs.len() <= deg {
                coeffs.push(Element::zero(&algebra));
            }
            let mut prod = m.coeffs()[0].clone();
            for c in &m.coeffs()[1..] {
                prod = prod.mul(c)?;
            }
            coeffs[deg] = &coeffs[deg] + &prod;
        }
        OneSidedPoly::new(&algebra, coeffs)
    }

    /// Formal product: plain coefficient convolution, `cᵢ = Σ aⱼ b_{i−j}`.
    pub fn formal_mul(&self, other: &OneSidedPoly) -> Result<OneSidedPoly, PolyError> {
        if !self.algebra.same_structure(&other.algebra) {
            return Err(PolyError::Algebra(
                crate::algebra::AlgebraError::AlgebraMismatch,
            ));
        }
        if self.coeffs.is_empty() || other.coeffs.is_empty() {
            return OneSidedPoly::new(&self.algebra, vec![]);
        }
        let mut out = vec![Element::zero(&self.algebra); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] = &out[i + j] + &a.mul(b)?;
            }
        }
        OneSidedPoly::new(&self.algebra, out)
    }

    /// `Σ aᵢ · x0ⁱ`
    pub fn eval(&self, x0: &Element) -> Result<Element, PolyError> {
        let mut acc = Element::zero(&self.algebra);
        let mut power = Element::unit(&self.algebra).map_err(|_| PolyError::NoUnit)?;
        for c in &self.coeffs {
            acc = &acc + &c.mul(&power)?;
            power = power.mul(x0)?;
        }
        Ok(acc)
    }
}
