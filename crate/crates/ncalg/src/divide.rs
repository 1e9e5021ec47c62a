//! Division of a polynomial by a linear divisor.
//!
//! The monic algorithm peels the rightmost variable of each monomial:
//!
//! ```text
//! a₀x…a_{k−1}xa_k = [a₀x…xa_{k−1}]·(x−c)·a_k + [a₀x…x(a_{k−1}·c·a_k)]
//! ```
//!
//! accumulating (prefix, right-factor) quotient pairs until only a constant
//! remainder survives. A general divisor `p₁∘x + p₀` is reduced to the monic
//! case by finding a degree-1 tensor `q` with `q * p₁ = 1⊗1` (so that
//! `Σ u_j·d(x)·w_j = x − c` holds exactly at the tensor level) and
//! post-composing the quotient with the factors of `q`.

use crate::algebra::Element;
use crate::linalg::{solve_linear, LinearSolution, Matrix};
use crate::poly::{CoeffTensor, Monomial, NcPolynomial, PolyError};
use crate::scalar::Scalar;
use std::collections::BTreeMap;
use std::sync::Arc;

/// A linear divisor: either the monic `x − c` or the general `p₁∘x + p₀`
/// with a degree-1 coefficient tensor `p₁`.
#[derive(Clone, Debug)]
pub enum LinearDivisor {
    Monic { c: Element },
    General { p0: Element, p1: CoeffTensor },
}

impl LinearDivisor {
    /// The divisor as a polynomial (needs a unit for the monic variable).
    pub fn to_polynomial(&self) -> Result<NcPolynomial, PolyError> {
        match self {
            LinearDivisor::Monic { c } => NcPolynomial::x_minus(c),
            LinearDivisor::General { p0, p1 } => {
                let alg = Arc::clone(p0.algebra());
                let n = alg.dim();
                let mut monomials = vec![Monomial::constant(p0.clone())];
                for s in 0..n {
                    for t in 0..n {
                        let w = p1.get(&[s, t]);
                        if w.is_zero() {
                            continue;
                        }
                        let left = Element::basis(&alg, s)?.scale(w);
                        let right = Element::basis(&alg, t)?;
                        monomials.push(Monomial::new(vec![left, right])?);
                    }
                }
                NcPolynomial::from_monomials(&alg, monomials)
            }
        }
    }
}

/// Operator quotient plus constant remainder:
/// `Σ prefixᵢ(x)·d(x)·rightᵢ + remainder` recomposes the dividend exactly.
#[derive(Clone, Debug)]
pub struct DivisionResult {
    pub quotient: Vec<(Monomial, Element)>,
    pub remainder: Element,
}

impl DivisionResult {
    /// Rebuild `Σ prefixᵢ(x)·d(x)·rightᵢ + remainder` as a polynomial.
    pub fn recompose(&self, divisor: &LinearDivisor) -> Result<NcPolynomial, PolyError> {
        let d = divisor.to_polynomial()?;
        let mut acc = NcPolynomial::constant(self.remainder.clone());
        for (prefix, right) in &self.quotient {
            let prefix_poly =
                NcPolynomial::from_monomials(prefix.algebra(), vec![prefix.clone()])?;
            let term = prefix_poly
                .mul(&d)?
                .mul(&NcPolynomial::constant(right.clone()))?;
            acc = acc.add(&term)?;
        }
        Ok(acc)
    }
}

/// Divide `r` by a linear divisor.
pub fn divide_linear(
    r: &NcPolynomial,
    divisor: &LinearDivisor,
) -> Result<DivisionResult, PolyError> {
    match divisor {
        LinearDivisor::Monic { c } => {
            if !Element::zero(r.algebra()).same_algebra(c) {
                return Err(PolyError::Algebra(
                    crate::algebra::AlgebraError::AlgebraMismatch,
                ));
            }
            divide_monic(r, c)
        }
        LinearDivisor::General { p0, p1 } => divide_general(r, p0, p1),
    }
}

fn divide_monic(r: &NcPolynomial, c: &Element) -> Result<DivisionResult, PolyError> {
    let algebra = Arc::clone(r.algebra());
    let mut pool: BTreeMap<usize, Vec<Monomial>> = BTreeMap::new();
    for m in r.monomials() {
        pool.entry(m.degree()).or_default().push(m.clone());
    }

    let mut quotient = Vec::new();
    while let Some((&top, _)) = pool.iter().next_back() {
        if top == 0 {
            break;
        }
        let monomials = pool.remove(&top).expect("key just observed");
        for m in monomials {
            let coeffs = m.coeffs();
            let prefix = Monomial::new(coeffs[..top].to_vec())?;
            let right = coeffs[top].clone();
            if !prefix.is_zero() && !right.is_zero() {
                quotient.push((prefix, right.clone()));
            }
            // a_{k−1} · c · a_k closes the peeled slot one degree down.
            let mut corr = coeffs[..top].to_vec();
            let closed = coeffs[top - 1].mul(c)?.mul(&right)?;
            corr[top - 1] = closed;
            let corr = Monomial::new(corr)?;
            if !corr.is_zero() {
                pool.entry(top - 1).or_default().push(corr);
            }
        }
    }

    let mut remainder = Element::zero(&algebra);
    for m in pool.remove(&0).unwrap_or_default() {
        remainder = &remainder + &m.coeffs()[0];
    }
    Ok(DivisionResult {
        quotient,
        remainder,
    })
}

fn divide_general(
    r: &NcPolynomial,
    p0: &Element,
    p1: &CoeffTensor,
) -> Result<DivisionResult, PolyError> {
    let algebra = Arc::clone(r.algebra());
    let n = algebra.dim();
    if p1.degree() != 1 || p1.dim() != n {
        return Err(PolyError::DivisorNotLinear);
    }
    if p1.is_zero() {
        return Err(PolyError::DivisorNotLinear);
    }
    if !Element::zero(&algebra).same_algebra(p0) {
        return Err(PolyError::Algebra(
            crate::algebra::AlgebraError::AlgebraMismatch,
        ));
    }
    if algebra.unit_index() != Some(0) {
        return Err(PolyError::NoUnit);
    }

    // Regular action of p₁ on A: v ↦ Σ_{s,t} T[s,t] e_s v e_t.
    let mut op = Matrix::zeros(n, n);
    for s in 0..n {
        for t in 0..n {
            let w = p1.get(&[s, t]);
            if w.is_zero() {
                continue;
            }
            for q in 0..n {
                // coords of e_s e_q e_t, scaled by T[s,t], land in column q
                for m in 0..n {
                    let csq = algebra.constant(s, q, m);
                    if csq.is_zero() {
                        continue;
                    }
                    for p in 0..n {
                        let cmt = algebra.constant(m, t, p);
                        if cmt.is_zero() {
                            continue;
                        }
                        let v = op.at(p, q).add(&w.mul(csq).mul(cmt));
                        op.set(p, q, v);
                    }
                }
            }
        }
    }
    let zero_rhs = vec![Scalar::zero(); n];
    match solve_linear(&op, &zero_rhs, 0.0) {
        LinearSolution::Solution { kernel, .. } if kernel.is_empty() => {}
        _ => return Err(PolyError::DivisorNotInvertible),
    }

    // Solve q * p₁ = 1⊗1 over the tensor square:
    // M[(a,b),(u,w)] = Σ_{s,t} T[s,t] C^a_{us} C^b_{tw}.
    let nn = n * n;
    let mut m2 = Matrix::zeros(nn, nn);
    for s in 0..n {
        for t in 0..n {
            let wgt = p1.get(&[s, t]);
            if wgt.is_zero() {
                continue;
            }
            for u in 0..n {
                for a in 0..n {
                    let cus = algebra.constant(u, s, a);
                    if cus.is_zero() {
                        continue;
                    }
                    for w in 0..n {
                        for b in 0..n {
                            let ctw = algebra.constant(t, w, b);
                            if ctw.is_zero() {
                                continue;
                            }
                            let v = m2
                                .at(a * n + b, u * n + w)
                                .add(&wgt.mul(cus).mul(ctw));
                            m2.set(a * n + b, u * n + w, v);
                        }
                    }
                }
            }
        }
    }
    let mut rhs = vec![Scalar::zero(); nn];
    rhs[0] = Scalar::one(); // the tensor 1⊗1 over unit index 0
    let q_tensor = match solve_linear(&m2, &rhs, 0.0) {
        LinearSolution::Solution { particular, .. } => particular,
        LinearSolution::Inconsistent => return Err(PolyError::DivisorNotRepresentable),
    };

    // Pairs (e_u, w_u) with w_u = Σ_w Q[u,w] e_w.
    let mut pairs: Vec<(Element, Element)> = Vec::new();
    for u in 0..n {
        let coords: Vec<Scalar> = (0..n).map(|w| q_tensor[u * n + w].clone()).collect();
        let w_u = Element::new(&algebra, coords)?;
        if w_u.is_zero() {
            continue;
        }
        pairs.push((Element::basis(&algebra, u)?, w_u));
    }

    // Σ_j u_j·d(x)·w_j = x − c exactly, with c = −Σ_j u_j p₀ w_j.
    let mut c = Element::zero(&algebra);
    for (u, w) in &pairs {
        c = &c - &u.mul(p0)?.mul(w)?;
    }

    let monic = divide_monic(r, &c)?;
    let mut quotient = Vec::new();
    for (prefix, right) in &monic.quotient {
        for (u, w) in &pairs {
            let new_prefix = prefix.scale_right(u)?;
            let new_right = w.mul(right)?;
            if !new_prefix.is_zero() && !new_right.is_zero() {
                quotient.push((new_prefix, new_right));
            }
        }
    }
    Ok(DivisionResult {
        quotient,
        remainder: monic.remainder,
    })
}
