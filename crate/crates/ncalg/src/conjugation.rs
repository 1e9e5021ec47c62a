//! Detection of algebras with conjugation and the induced scalar/vector
//! split: `re`, `im`, conjugate, and the quaternion/complex norm.
//!
//! The structure-constant criterion used here: the algebra is unital with
//! unit `e_0`, and for all `k, l ≥ 1` the vector part of `e_k e_l` is
//! antisymmetric, `C^p_{kl} = −C^p_{lk}` for `p ≥ 1`. Under that condition
//! the square of an imaginary element is a scalar, which is exactly what the
//! square-root solver needs.

use crate::algebra::{AlgebraSpec, Element};
use crate::scalar::Scalar;
use std::fmt;
use std::sync::Arc;

#[derive(Debug, Clone, PartialEq)]
pub enum ConjugationError {
    MissingUnit,
    NotConjugationAlgebra,
    /// `norm_sq` is only defined for the quaternion and complex algebras.
    UnsupportedAlgebra,
    AlgebraMismatch,
}

impl fmt::Display for ConjugationError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ConjugationError::MissingUnit => write!(f, "algebra does not declare a unit"),
            ConjugationError::NotConjugationAlgebra => {
                write!(f, "algebra is not an algebra with conjugation")
            }
            ConjugationError::UnsupportedAlgebra => {
                write!(f, "norm_sq is only defined for the quaternion and complex algebras")
            }
            ConjugationError::AlgebraMismatch => {
                write!(f, "element does not belong to the analyzed algebra")
            }
        }
    }
}

impl std::error::Error for ConjugationError {}

/// First structure-constant condition that failed, if any.
#[derive(Debug, Clone, PartialEq)]
pub enum Violation {
    /// Unit axiom broken at `C^p` of a product with `e_k`.
    UnitAxiom { k: usize, p: usize },
    /// `C^p_{kl} ≠ −C^p_{lk}` for the named `p, k, l ≥ 1`.
    VectorPartSymmetric { p: usize, k: usize, l: usize },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::UnitAxiom { k, p } => {
                write!(f, "unit axiom fails at (k,p)=({k},{p})")
            }
            Violation::VectorPartSymmetric { p, k, l } => write!(
                f,
                "vector part of e_k e_l not antisymmetric at (p,k,l)=({p},{k},{l})"
            ),
        }
    }
}

/// Result of analyzing an algebra for conjugation structure.
#[derive(Debug, Clone)]
pub struct ConjugationProfile {
    algebra: Arc<AlgebraSpec>,
    pub is_unital: bool,
    pub is_conjugation_algebra: bool,
    pub violation: Option<Violation>,
}

/// Analyze the structure constants. Requires a declared unit at index 0.
pub fn analyze(algebra: &Arc<AlgebraSpec>) -> Result<ConjugationProfile, ConjugationError> {
    if algebra.unit_index() != Some(0) {
        return Err(ConjugationError::MissingUnit);
    }
    let mut profile = ConjugationProfile {
        algebra: Arc::clone(algebra),
        is_unital: true,
        is_conjugation_algebra: true,
        violation: None,
    };
    if let Err(crate::algebra::AlgebraError::UnitAxiom { k, p, .. }) = algebra.check_unit_axioms()
    {
        profile.is_unital = false;
        profile.is_conjugation_algebra = false;
        profile.violation = Some(Violation::UnitAxiom { k, p });
        return Ok(profile);
    }
    let n = algebra.dim();
    for k in 1..n {
        for l in 1..n {
            for p in 1..n {
                let fwd = algebra.constant(k, l, p);
                let bwd = algebra.constant(l, k, p);
                if *fwd != bwd.neg() {
                    profile.is_conjugation_algebra = false;
                    profile.violation = Some(Violation::VectorPartSymmetric { p, k, l });
                    return Ok(profile);
                }
            }
        }
    }
    Ok(profile)
}

impl ConjugationProfile {
    pub fn algebra(&self) -> &Arc<AlgebraSpec> {
        &self.algebra
    }

    fn require_conjugation(&self, x: &Element) -> Result<(), ConjugationError> {
        if !self.is_conjugation_algebra {
            return Err(ConjugationError::NotConjugationAlgebra);
        }
        if !self.algebra.same_structure(x.algebra()) {
            return Err(ConjugationError::AlgebraMismatch);
        }
        Ok(())
    }

    /// Scalar part `x⁰ e_0`.
    pub fn re(&self, x: &Element) -> Result<Element, ConjugationError> {
        self.require_conjugation(x)?;
        let mut coords = vec![Scalar::zero(); self.algebra.dim()];
        coords[0] = x.coord(0).clone();
        Ok(Element::new(x.algebra(), coords).expect("length matches dim"))
    }

    /// Vector part `x − re(x)`.
    pub fn im(&self, x: &Element) -> Result<Element, ConjugationError> {
        Ok(&x.clone() - &self.re(x)?)
    }

    /// Conjugate `re(x) − im(x)`.
    pub fn conj(&self, x: &Element) -> Result<Element, ConjugationError> {
        self.require_conjugation(x)?;
        let coords = x
            .coords()
            .iter()
            .enumerate()
            .map(|(i, c)| if i == 0 { c.clone() } else { c.neg() })
            .collect();
        Ok(Element::new(x.algebra(), coords).expect("length matches dim"))
    }

    /// Squared norm `Σ_i (x^i)²` for the quaternion or complex algebra;
    /// equals the scalar coordinate of `x·conj(x)`.
    pub fn norm_sq(&self, x: &Element) -> Result<Scalar, ConjugationError> {
        self.require_conjugation(x)?;
        if !(self.algebra.is_quaternion() || self.algebra.is_complex()) {
            return Err(ConjugationError::UnsupportedAlgebra);
        }
        let mut acc = Scalar::zero();
        for c in x.coords() {
            acc = acc.add(&c.mul(c));
        }
        Ok(acc)
    }
}
