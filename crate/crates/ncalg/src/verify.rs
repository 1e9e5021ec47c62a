//! Seeded randomized identity suite over an algebra.
//!
//! Each check draws random elements (small exact rationals) and verifies an
//! algebraic identity bit-exactly. The suite backs the CLI's
//! `verify-identities` subcommand and the integration tests.

use crate::algebra::{AlgebraSpec, Element};
use crate::onesided::OneSidedPoly;
use crate::poly::{
    expand_cube, expand_prod, expand_square, identity_b2_minus_a2, viete_expand, NcPolynomial,
    PolyError,
};
use crate::scalar::Scalar;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::sync::Arc;

/// Outcome of one named check over N samples.
#[derive(Clone, Debug)]
pub struct CheckReport {
    pub name: &'static str,
    pub passed: usize,
    pub failed: usize,
}

impl CheckReport {
    pub fn ok(&self) -> bool {
        self.failed == 0
    }
}

/// Draw an element with small rational coordinates.
pub fn random_element(algebra: &Arc<AlgebraSpec>, rng: &mut ChaCha8Rng) -> Element {
    let coords = (0..algebra.dim())
        .map(|_| Scalar::from_ratio(rng.random_range(-8..=8), rng.random_range(1..=3)))
        .collect();
    Element::new(algebra, coords).expect("length matches dim")
}

fn random_monomial(
    algebra: &Arc<AlgebraSpec>,
    rng: &mut ChaCha8Rng,
    max_degree: usize,
) -> Result<crate::poly::Monomial, PolyError> {
    let degree = rng.random_range(0..=max_degree);
    let coeffs = (0..=degree).map(|_| random_element(algebra, rng)).collect();
    crate::poly::Monomial::new(coeffs)
}

/// Draw a polynomial with up to three random monomials of degree ≤ 2.
pub fn random_poly(
    algebra: &Arc<AlgebraSpec>,
    rng: &mut ChaCha8Rng,
) -> Result<NcPolynomial, PolyError> {
    let count = rng.random_range(1..=3);
    let monomials = (0..count)
        .map(|_| random_monomial(algebra, rng, 2))
        .collect::<Result<Vec<_>, _>>()?;
    NcPolynomial::from_monomials(algebra, monomials)
}

/// Run the full identity suite: expansion identities against `poly_mul`,
/// the factored difference of squares, the Viète template, evaluation
/// compatibility of the merge product, and the one-sided (formal) product
/// incompatibility witness.
pub fn run_identity_suite(
    algebra: &Arc<AlgebraSpec>,
    samples: usize,
    seed: u64,
) -> Result<Vec<CheckReport>, PolyError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let x = NcPolynomial::variable(algebra)?;

    let mut square = CheckReport {
        name: "expand-square-matches-poly-mul",
        passed: 0,
        failed: 0,
    };
    let mut cube = CheckReport {
        name: "expand-cube-matches-poly-mul",
        passed: 0,
        failed: 0,
    };
    let mut prod = CheckReport {
        name: "expand-prod-matches-poly-mul",
        passed: 0,
        failed: 0,
    };
    let mut b2a2 = CheckReport {
        name: "b2-minus-a2-factored-identity",
        passed: 0,
        failed: 0,
    };
    let mut viete = CheckReport {
        name: "viete-template-monic-and-vanishing",
        passed: 0,
        failed: 0,
    };
    let mut eval_mult = CheckReport {
        name: "merge-product-eval-compatible",
        passed: 0,
        failed: 0,
    };
    let mut lam = CheckReport {
        name: "one-sided-product-eval-incompatible",
        passed: 0,
        failed: 0,
    };

    for _ in 0..samples {
        let a = random_element(algebra, &mut rng);
        let b = random_element(algebra, &mut rng);

        let x_plus_a = x.add(&NcPolynomial::constant(a.clone()))?;
        let x_plus_b = x.add(&NcPolynomial::constant(b.clone()))?;

        tally(
            &mut square,
            expand_square(&a)?.canonical_eq(&x_plus_a.mul(&x_plus_a)?)?,
        );
        tally(
            &mut cube,
            expand_cube(&a)?
                .canonical_eq(&x_plus_a.mul(&x_plus_a)?.mul(&x_plus_a)?)?,
        );
        tally(
            &mut prod,
            expand_prod(&a, &b)?.canonical_eq(&x_plus_a.mul(&x_plus_b)?)?,
        );

        let (lhs, rhs) = identity_b2_minus_a2(&a, &b)?;
        tally(&mut b2a2, lhs == rhs);

        let c = random_element(algebra, &mut rng);
        let v = viete_expand(&c, &a, &b)?;
        let lead = v.canonical_tensor(2)?;
        let mut monic_tensor = crate::poly::CoeffTensor::zero(algebra.dim(), 2)?;
        monic_tensor.set_flat(0, Scalar::one());
        let vanishes = v.eval(&a)?.is_zero() && v.eval(&b)?.is_zero();
        tally(&mut viete, lead == monic_tensor && vanishes);

        // The merge product is compatible with evaluation at every point
        // (not only central ones): eval(pq, x0) = eval(p,x0)·eval(q,x0).
        let p = random_poly(algebra, &mut rng)?;
        let q = random_poly(algebra, &mut rng)?;
        let x0 = random_element(algebra, &mut rng);
        let lhs = p.mul(&q)?.eval(&x0)?;
        let rhs = p.eval(&x0)?.mul(&q.eval(&x0)?)?;
        tally(&mut eval_mult, lhs == rhs);

        // The one-sided formal product is not: a is a root of (x−a), yet
        // the formal product (x−a)⋆(x−b) evaluates to ab − ba at a.
        let f = OneSidedPoly::x_minus(&a)?;
        let g = OneSidedPoly::x_minus(&b)?;
        let fg = f.formal_mul(&g)?;
        let formal_at_a = fg.eval(&a)?;
        let pointwise = f.eval(&a)?.mul(&g.eval(&a)?)?;
        let commutator = a.commutator(&b)?;
        let witness_holds = if commutator.is_zero() {
            // Commuting draw: the formal product is honest here.
            formal_at_a == pointwise
        } else {
            formal_at_a != pointwise && formal_at_a == commutator
        };
        tally(&mut lam, witness_holds);
    }

    Ok(vec![square, cube, prod, b2a2, viete, eval_mult, lam])
}

fn tally(report: &mut CheckReport, ok: bool) {
    if ok {
        report.passed += 1;
    } else {
        report.failed += 1;
    }
}
