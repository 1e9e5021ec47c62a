//! Acceptance suite: ten numbered end-to-end checks, one test per
//! criterion, each printing a PASS/FAIL line (run with `--nocapture` to see
//! them on success).
//!
//! Criterion 9 is split: the identity suite holds bit-exactly, but its last
//! clause — see `criterion_09b_two_sided_lam_witness_as_required` — demands
//! an inequality at a specific witness that provably cannot hold for the
//! merge product, and is kept as a faithful, honestly failing check.

use ncalg::divide::{divide_linear, LinearDivisor};
use ncalg::poly::{Monomial, NcPolynomial};
use ncalg::scalar::{Backend, Scalar};
use ncalg::solve::{
    newton_root_scan, shifted_square, sqrt_quaternion, square_residual_coords, sylvester_linear,
    RootSet, ScanConfig,
};
use ncalg::verify::{random_element, run_identity_suite};
use ncalg::{AlgebraSpec, Element, OneSidedPoly};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::sync::Arc;

fn report(id: &str, ok: bool, detail: &str) {
    let status = if ok { "PASS" } else { "FAIL" };
    println!("acceptance {id}: {status} — {detail}");
    assert!(ok, "acceptance {id} failed: {detail}");
}

fn h() -> Arc<AlgebraSpec> {
    AlgebraSpec::quaternion()
}

fn elem(alg: &Arc<AlgebraSpec>, c: &[i64]) -> Element {
    Element::from_ints(alg, c).unwrap()
}

fn basis(alg: &Arc<AlgebraSpec>, idx: usize) -> Element {
    Element::basis(alg, idx).unwrap()
}

/// `jx − xj − 1` and friends.
fn commutator_minus_one(alg: &Arc<AlgebraSpec>, idx: usize) -> NcPolynomial {
    let e = basis(alg, idx);
    let x = NcPolynomial::variable(alg).unwrap();
    NcPolynomial::constant(e.clone())
        .mul(&x)
        .unwrap()
        .sub(&x.mul(&NcPolynomial::constant(e)).unwrap())
        .unwrap()
        .sub(&NcPolynomial::constant(Element::unit(alg).unwrap()))
        .unwrap()
}

#[test]
fn criterion_01_quaternion_table_and_associativity() {
    let h = h();
    let i = basis(&h, 1);
    let j = basis(&h, 2);
    let k = basis(&h, 3);
    let minus_one = elem(&h, &[-1, 0, 0, 0]);
    let table_ok = i.mul(&j).unwrap() == k
        && j.mul(&k).unwrap() == i
        && k.mul(&i).unwrap() == j
        && i.mul(&i).unwrap() == minus_one
        && j.mul(&j).unwrap() == minus_one
        && k.mul(&k).unwrap() == minus_one;
    let assoc_ok = h.check_associativity().is_ok();
    report(
        "01",
        table_ok && assoc_ok,
        "ij=k, jk=i, ki=j, i²=j²=k²=−1 and exhaustive basis-triple associativity (exact)",
    );
}

#[test]
fn criterion_02_sqrt_minus_one_is_pure_imaginary_unit_sphere() {
    let h = h();
    let a = elem(&h, &[-1, 0, 0, 0]);
    let set = sqrt_quaternion(&a).unwrap();
    let mut ok = false;
    if let RootSet::Sphere { ref center, ref radius } = set {
        ok = center.is_zero() && *radius == Scalar::one();
    }
    let samples = set.samples(1000, 2024);
    let mut exact = samples.len() == 1000;
    for x in &samples {
        // Rational parametrization: every sample is exactly a root.
        exact &= x.coords().iter().all(|s| s.as_rational().is_some());
        exact &= square_residual_coords(&h, x.coords(), a.coords())
            .unwrap()
            .iter()
            .all(Scalar::is_zero);
        exact &= x.coord(0).is_zero();
    }
    report(
        "02",
        ok && exact,
        "sqrt(−1) is the unit sphere of pure imaginaries; 1000 rational samples have residual 0",
    );
}

#[test]
fn criterion_03_shifted_square_of_one_has_exactly_two_roots() {
    let h = h();
    let one = elem(&h, &[1, 0, 0, 0]);
    let set = shifted_square(&one).unwrap();
    let mut exact_ok = false;
    if let RootSet::Finite(ref roots) = set {
        let vals: Vec<&Element> = roots.iter().map(|(r, _)| r).collect();
        exact_ok = vals.len() == 2
            && vals.iter().any(|r| r.is_zero())
            && vals.iter().any(|r| **r == elem(&h, &[-2, 0, 0, 0]));
    }

    // Scan x² + 2x with 1024 starts: every cluster sits on 0 or −2.
    let x = NcPolynomial::variable(&h).unwrap();
    let p = x
        .mul(&x)
        .unwrap()
        .add(&NcPolynomial::constant(elem(&h, &[2, 0, 0, 0])).mul(&x).unwrap())
        .unwrap();
    let cfg = ScanConfig {
        starts: 1024,
        seed: 3,
        ..ScanConfig::default()
    };
    let clusters = newton_root_scan(&p, &cfg).unwrap();
    let targets = [[0.0, 0.0, 0.0, 0.0], [-2.0, 0.0, 0.0, 0.0]];
    let all_on_targets = clusters.iter().all(|(r, _)| {
        targets.iter().any(|t| {
            r.coords()
                .iter()
                .zip(t)
                .map(|(c, ti)| (c.to_f64() - ti).powi(2))
                .sum::<f64>()
                .sqrt()
                < 1e-6
        })
    });
    let both_found = targets.iter().all(|t| {
        clusters.iter().any(|(r, _)| {
            r.coords()
                .iter()
                .zip(t)
                .map(|(c, ti)| (c.to_f64() - ti).powi(2))
                .sum::<f64>()
                .sqrt()
                < 1e-6
        })
    });
    report(
        "03",
        exact_ok && all_on_targets && both_found && clusters.len() == 2,
        "(1+x)² = 1 has exactly {0, −2}; 1024-start scan finds no cluster elsewhere",
    );
}

#[test]
fn criterion_04_sqrt_of_i_matches_analytic_oracle() {
    let h = h();
    let a = basis(&h, 1);
    let set = sqrt_quaternion(&a).unwrap();
    let RootSet::Finite(roots) = set else {
        report("04", false, "sqrt(i) did not return a finite pair");
        return;
    };
    // Oracle: y = (a⁰ + |a|)/2 = 1/2, so x⁰ = x¹ = √(1/2).
    let expect = 0.5_f64.sqrt();
    let mut ok = roots.len() == 2;
    let positive = roots
        .iter()
        .find(|(r, _)| r.coord(0).to_f64() > 0.0)
        .map(|(r, _)| r.clone());
    if let Some(r) = positive {
        ok &= (r.coord(0).to_f64() - expect).abs() < 1e-12
            && (r.coord(1).to_f64() - expect).abs() < 1e-12
            && r.coord(2).to_f64().abs() < 1e-12
            && r.coord(3).to_f64().abs() < 1e-12;
        // Closed under negation.
        ok &= roots.iter().any(|(s, _)| *s == -&r);
    } else {
        ok = false;
    }
    for (r, _) in &roots {
        let sq = r.mul(r).unwrap();
        ok &= (&sq - &a).coord_norm_f64() < 1e-12;
    }
    report(
        "04",
        ok,
        "sqrt(i) = ±(√2/2)(1+i) to 1e−12, squares back to i, closed under negation",
    );
}

#[test]
fn criterion_05_sylvester_jx_minus_xj_equals_one_is_empty() {
    let h = h();
    let set = sylvester_linear(&basis(&h, 2), &Element::unit(&h).unwrap()).unwrap();
    report(
        "05",
        matches!(set, RootSet::Empty),
        "ax − xa = 1 with a = j reports Empty from the exact linear solve",
    );
}

#[test]
fn criterion_06_one_root_quadratic() {
    let h = h();
    let i = basis(&h, 1);
    let p = commutator_minus_one(&h, 2)
        .mul(&NcPolynomial::x_minus(&i).unwrap())
        .unwrap();
    let exact_root = p.eval(&i).unwrap().is_zero();
    let cfg = ScanConfig {
        starts: 1024,
        seed: 6,
        ..ScanConfig::default()
    };
    let clusters = newton_root_scan(&p, &cfg).unwrap();
    let one_cluster_at_i = clusters.len() == 1
        && clusters[0]
            .0
            .coords()
            .iter()
            .zip([0.0, 1.0, 0.0, 0.0])
            .map(|(c, t)| (c.to_f64() - t).powi(2))
            .sum::<f64>()
            .sqrt()
            < 1e-6;
    report(
        "06",
        exact_root && one_cluster_at_i,
        "(jx−xj−1)(x−i) vanishes exactly at i; 1024-start scan finds exactly one cluster (at i)",
    );
}

#[test]
fn criterion_07_zero_root_quadratic() {
    let h = h();
    let p = commutator_minus_one(&h, 2)
        .mul(&commutator_minus_one(&h, 3))
        .unwrap();
    let cfg = ScanConfig {
        starts: 1024,
        seed: 7,
        ..ScanConfig::default()
    };
    let clusters = newton_root_scan(&p, &cfg).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(777);
    let mut never_zero = true;
    for _ in 0..10_000 {
        let x = random_element(&h, &mut rng);
        never_zero &= !p.eval(&x).unwrap().is_zero();
    }
    report(
        "07",
        clusters.is_empty() && never_zero,
        "(jx−xj−1)(kx−xk−1): empty 1024-start scan and no zero among 10⁴ random rational points",
    );
}

#[test]
fn criterion_08_division_recomposition() {
    let h = h();
    let i = basis(&h, 1);
    let j = basis(&h, 2);
    let r = NcPolynomial::x_minus(&i)
        .unwrap()
        .mul(&NcPolynomial::x_minus(&j).unwrap())
        .unwrap();
    let divisor = LinearDivisor::Monic { c: i.clone() };
    let result = divide_linear(&r, &divisor).unwrap();
    let showcase_ok = result.remainder.is_zero()
        && result
            .recompose(&divisor)
            .unwrap()
            .canonical_eq(&r)
            .unwrap();

    let mut rng = ChaCha8Rng::seed_from_u64(888);
    let mut random_ok = true;
    for _ in 0..100 {
        let count = rng.random_range(1..=4);
        let monomials: Vec<Monomial> = (0..count)
            .map(|_| {
                let degree = rng.random_range(0..=3usize);
                let coeffs = (0..=degree).map(|_| random_element(&h, &mut rng)).collect();
                Monomial::new(coeffs).unwrap()
            })
            .collect();
        let dividend = NcPolynomial::from_monomials(&h, monomials).unwrap();
        let divisor = LinearDivisor::Monic {
            c: random_element(&h, &mut rng),
        };
        let result = divide_linear(&dividend, &divisor).unwrap();
        random_ok &= result
            .recompose(&divisor)
            .unwrap()
            .canonical_eq(&dividend)
            .unwrap();
    }
    report(
        "08",
        showcase_ok && random_ok,
        "(x−i)(x−j) ÷ (x−i) has remainder 0; 100 random degree-≤3 divisions recompose exactly",
    );
}

#[test]
fn criterion_09a_identity_suite_over_1000_samples() {
    let h = h();
    let reports = run_identity_suite(&h, 1000, 2024).unwrap();
    let mut ok = true;
    let mut detail = String::new();
    for r in &reports {
        // The required inequality of the original clause is checked
        // separately in 09b; here every suite identity must be bit-exact.
        if !r.ok() {
            ok = false;
            detail.push_str(&format!(" {}:{}-failures", r.name, r.failed));
        }
    }
    report(
        "09a",
        ok,
        &format!(
            "1000-sample identity suite exact (expansions, b²−a², Viète, product/eval compatibility, one-sided witness){detail}"
        ),
    );
}

#[test]
fn criterion_09b_two_sided_lam_witness_as_required() {
    // Required: for p = jx−xj−1, q = x−i, x0 = j, the merge-product
    // composite pq must satisfy eval(pq, x0) ≠ eval(p, x0)·eval(q, x0).
    //
    // The genuine incompatibility lives in the one-sided (Cohn/Lam
    // convention) formal product, which the suite demonstrates above and
    // which is asserted here first.
    let h = h();
    let i = basis(&h, 1);
    let j = basis(&h, 2);
    let k = basis(&h, 3);
    let f = OneSidedPoly::x_minus(&j).unwrap();
    let g = OneSidedPoly::x_minus(&k).unwrap();
    let fg = f.formal_mul(&g).unwrap();
    let formal_breaks = fg.eval(&j).unwrap()
        != f.eval(&j).unwrap().mul(&g.eval(&j).unwrap()).unwrap();
    assert!(formal_breaks, "one-sided formal product witness must break");

    let p = commutator_minus_one(&h, 2);
    let q = NcPolynomial::x_minus(&i).unwrap();
    let lhs = p.mul(&q).unwrap().eval(&j).unwrap();
    let rhs = p.eval(&j).unwrap().mul(&q.eval(&j).unwrap()).unwrap();
    let as_required = lhs != rhs;
    report(
        "09b",
        as_required,
        &format!(
            "required eval(pq,j) ≠ eval(p,j)·eval(q,j) at the stated witness; got {lhs} on both \
             sides — evaluation commutes with the merge product by associativity \
             (eval((a₀x…a_m)(b₀x…b_l)) = eval(a₀x…a_m)·eval(b₀x…b_l) termwise), so this \
             inequality cannot hold; the product that genuinely breaks evaluation is the \
             one-sided formal product (see onesided.rs), witnessed by (x−j)(x−k) at j"
        ),
    );
}

#[test]
fn criterion_10_sqrt_vs_scanner_cross_validation() {
    let h = h();
    let mut rng = ChaCha8Rng::seed_from_u64(1010);
    let mut ok = true;
    for trial in 0..100 {
        let coords: Vec<Scalar> = (0..4)
            .map(|_| Scalar::from_f64(rng.random_range(-2.0..=2.0)))
            .collect();
        let a = Element::new(&h, coords).unwrap();
        let RootSet::Finite(analytic) = sqrt_quaternion(&a).unwrap() else {
            // Float draws are never exactly real-nonpositive.
            ok = false;
            continue;
        };
        let x = NcPolynomial::variable(&h).unwrap();
        let p = x
            .mul(&x)
            .unwrap()
            .sub(&NcPolynomial::constant(a.to_backend(Backend::Float)))
            .unwrap();
        let cfg = ScanConfig {
            starts: 64,
            seed: 10_000 + trial,
            ..ScanConfig::default()
        };
        let clusters = newton_root_scan(&p, &cfg).unwrap();
        let dist = |x: &Element, y: &Element| -> f64 {
            x.coords()
                .iter()
                .zip(y.coords())
                .map(|(a, b)| (a.to_f64() - b.to_f64()).powi(2))
                .sum::<f64>()
                .sqrt()
        };
        let pairwise = analytic.len() == clusters.len()
            && analytic
                .iter()
                .all(|(r, _)| clusters.iter().any(|(c, _)| dist(r, c) < 1e-8))
            && clusters
                .iter()
                .all(|(c, _)| analytic.iter().any(|(r, _)| dist(r, c) < 1e-8));
        ok &= pairwise;
    }
    report(
        "10",
        ok,
        "100 random a ∈ H: analytic sqrt roots and scanner clusters agree pairwise within 1e−8",
    );
}
