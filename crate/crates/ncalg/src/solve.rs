//! Equation solvers: square roots with full case classification, the
//! shifted-square equation `(a+x)² = a²`, the linear Sylvester equation
//! `ax − xa = b`, and a multistart Newton scanner for polynomial roots.

use crate::algebra::{AlgebraError, AlgebraSpec, Element};
use crate::conjugation::ConjugationProfile;
use crate::linalg::{
    least_squares_residual, ridge_solve_f64, solve_f64, solve_linear, LinearSolution, Matrix,
};
use crate::poly::{NcPolynomial, PolyError};
use crate::scalar::Scalar;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::fmt;

#[derive(Debug, Clone, PartialEq)]
pub enum SolveError {
    NotConjugationAlgebra,
    /// Solver is specialized to the quaternion (or complex) algebra.
    UnsupportedAlgebra,
    /// The imaginary-part quadratic form is not `−Σ(x^k)²`; the infinite
    /// root family would not be a sphere, so it is reported instead of
    /// guessed at.
    ImaginaryFormNotReducible,
    BadConfig(String),
    Algebra(AlgebraError),
    Poly(PolyError),
}

impl fmt::Display for SolveError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SolveError::NotConjugationAlgebra => {
                write!(f, "algebra is not an algebra with conjugation")
            }
            SolveError::UnsupportedAlgebra => {
                write!(f, "solver requires the builtin quaternion algebra")
            }
            SolveError::ImaginaryFormNotReducible => write!(
                f,
                "imaginary quadratic form is not negative-definite diagonal; \
                 the root family is not representable as a sphere"
            ),
            SolveError::BadConfig(msg) => write!(f, "invalid scan config: {msg}"),
            SolveError::Algebra(e) => write!(f, "{e}"),
            SolveError::Poly(e) => write!(f, "{e}"),
        }
    }
}

impl std::error::Error for SolveError {}

impl From<AlgebraError> for SolveError {
    fn from(e: AlgebraError) -> Self {
        SolveError::Algebra(e)
    }
}

impl From<PolyError> for SolveError {
    fn from(e: PolyError) -> Self {
        SolveError::Poly(e)
    }
}

/// Classified solution set of an equation.
#[derive(Clone, Debug)]
pub enum RootSet {
    /// Finitely many roots with multiplicities.
    Finite(Vec<(Element, u32)>),
    /// `{ center + radius·u : u a unit imaginary direction }` — scalar part
    /// fixed, imaginary norm fixed.
    Sphere {
        center: Element,
        radius: Scalar,
    },
    /// `particular + span(basis)`.
    Affine {
        particular: Element,
        basis: Vec<Element>,
    },
    Empty,
}

impl RootSet {
    /// Deterministic members of the set, seeded. Finite sets return their
    /// roots; spheres are sampled by rational stereographic parametrization
    /// (exact when the radius is rational) or trigonometrically on the
    /// float backend; affine families return lattice combinations.
    pub fn samples(&self, count: usize, seed: u64) -> Vec<Element> {
        match self {
            RootSet::Empty => vec![],
            RootSet::Finite(roots) => roots.iter().take(count).map(|(r, _)| r.clone()).collect(),
            RootSet::Affine { particular, basis } => {
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                (0..count)
                    .map(|_| {
                        let mut x = particular.clone();
                        for b in basis {
                            let w = Scalar::from_ratio(rng.random_range(-9..=9), 1);
                            x = &x + &b.scale(&w);
                        }
                        x
                    })
                    .collect()
            }
            RootSet::Sphere { center, radius } => {
                sphere_samples(center, radius, count, seed)
            }
        }
    }
}

/// Points `center + radius·u` with `u` an exact unit vector in the
/// imaginary coordinate hyperplane, via inverse stereographic projection of
/// rational parameters. Falls back to float trigonometry when the radius is
/// not rational.
fn sphere_samples(center: &Element, radius: &Scalar, count: usize, seed: u64) -> Vec<Element> {
    let algebra = center.algebra();
    let n = algebra.dim();
    let m = n - 1; // imaginary dimension
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(count);
    let rational = matches!(radius, Scalar::Rational(_));
    while out.len() < count {
        let mut unit = vec![Scalar::zero(); n];
        if rational {
            // u = (2v, 1 − |v|²) / (1 + |v|²) for rational parameters v.
            let v: Vec<Scalar> = (0..m - 1)
                .map(|_| Scalar::from_ratio(rng.random_range(-12..=12), rng.random_range(1..=12)))
                .collect();
            let mut norm_sq = Scalar::zero();
            for c in &v {
                norm_sq = norm_sq.add(&c.mul(c));
            }
            let denom = Scalar::one().add(&norm_sq);
            for (t, c) in v.iter().enumerate() {
                unit[1 + t] = Scalar::from_int(2).mul(c).div(&denom);
            }
            unit[n - 1] = Scalar::one().sub(&norm_sq).div(&denom);
        } else {
            // Normalized Gaussian direction.
            let dir: Vec<f64> = (0..m)
                .map(|_| {
                    let u1: f64 = rng.random::<f64>().max(1e-12);
                    let u2: f64 = rng.random();
                    (-2.0 * u1.ln()).sqrt() * (std::f64::consts::TAU * u2).cos()
                })
                .collect();
            let norm = dir.iter().map(|d| d * d).sum::<f64>().sqrt();
            if norm < 1e-9 {
                continue;
            }
            for (t, d) in dir.iter().enumerate() {
                unit[1 + t] = Scalar::from_f64(d / norm);
            }
        }
        let offset = Element::new(algebra, unit)
            .expect("length matches dim")
            .scale(radius);
        out.push(center + &offset);
    }
    out
}

/// Coordinate residual of `x² = a`:
/// `residual^p = Σ_{k,l} C^p_{kl} x^k x^l − a^p`.
pub fn square_residual_coords(
    spec: &AlgebraSpec,
    x_coords: &[Scalar],
    a_coords: &[Scalar],
) -> Result<Vec<Scalar>, AlgebraError> {
    let n = spec.dim();
    if x_coords.len() != n {
        return Err(AlgebraError::DimMismatch {
            expected: n,
            got: x_coords.len(),
        });
    }
    if a_coords.len() != n {
        return Err(AlgebraError::DimMismatch {
            expected: n,
            got: a_coords.len(),
        });
    }
    let sq = spec.mul_coords(x_coords, x_coords);
    Ok(sq
        .iter()
        .zip(a_coords)
        .map(|(s, a)| s.sub(a))
        .collect())
}

/// Coordinate residual of the bracket form of the shifted-square equation:
/// `residual^p = Σ_{k,l} C^p_{kl} ((2a+x)^k x^l + x^k (2a+x)^l)`, zero iff
/// `(2a+x)x + x(2a+x) = 0`, i.e. iff `x² + ax + xa = 0`. This is the
/// structure-constant form of the statement that the product of `2a+x` and
/// `x` is anti-commutative.
pub fn shifted_square_residual_coords(
    spec: &AlgebraSpec,
    a_coords: &[Scalar],
    x_coords: &[Scalar],
) -> Result<Vec<Scalar>, AlgebraError> {
    let n = spec.dim();
    if x_coords.len() != n || a_coords.len() != n {
        return Err(AlgebraError::DimMismatch {
            expected: n,
            got: if x_coords.len() != n {
                x_coords.len()
            } else {
                a_coords.len()
            },
        });
    }
    let shifted: Vec<Scalar> = a_coords
        .iter()
        .zip(x_coords)
        .map(|(a, x)| Scalar::from_int(2).mul(a).add(x))
        .collect();
    let fwd = spec.mul_coords(&shifted, x_coords);
    let bwd = spec.mul_coords(x_coords, &shifted);
    Ok(fwd.iter().zip(&bwd).map(|(f, b)| f.add(b)).collect())
}

/// Square roots in an algebra with conjugation: the `x⁰ ≠ 0` branch reduces
/// to a real quadratic in `y = (x⁰)²`; the `x⁰ = 0` branch (reachable only
/// for scalar `a`) is the sphere `|x_im|² = −a⁰`.
pub fn sqrt_conjugation(
    profile: &ConjugationProfile,
    a: &Element,
) -> Result<RootSet, SolveError> {
    if !profile.is_conjugation_algebra {
        return Err(SolveError::NotConjugationAlgebra);
    }
    let algebra = profile.algebra();
    if !algebra.same_structure(a.algebra()) {
        return Err(SolveError::Algebra(AlgebraError::AlgebraMismatch));
    }
    let n = algebra.dim();
    let a0 = a.coord(0).clone();
    let imaginary_is_zero = (1..n).all(|k| a.coord(k).is_zero());

    if a.is_zero() {
        return Ok(RootSet::Finite(vec![(Element::zero(algebra), 2)]));
    }

    let mut finite: Vec<(Element, u32)> = Vec::new();

    // x⁰ ≠ 0 branch: x^k = a^k / (2x⁰), scalar part gives
    // y² − a⁰y − Q/4 = 0 with Q = −Σ_{k,l≥1} C⁰_{kl} a^k a^l.
    let mut q_value = Scalar::zero();
    for k in 1..n {
        if a.coord(k).is_zero() {
            continue;
        }
        for l in 1..n {
            let c = algebra.constant(k, l, 0);
            if c.is_zero() {
                continue;
            }
            q_value = q_value.sub(&c.mul(a.coord(k)).mul(a.coord(l)));
        }
    }
    let discriminant = a0.mul(&a0).add(&q_value);
    if !discriminant.is_negative() {
        let sqrt_d = discriminant.sqrt().expect("nonnegative");
        let half = Scalar::from_ratio(1, 2);
        for sign in [1i64, -1] {
            let y = a0.add(&sqrt_d.mul(&Scalar::from_int(sign))).mul(&half);
            if y.partial_cmp(&Scalar::zero()) != Some(std::cmp::Ordering::Greater) {
                continue;
            }
            let x0 = y.sqrt().expect("positive");
            let two_x0 = Scalar::from_int(2).mul(&x0);
            let mut coords = vec![Scalar::zero(); n];
            coords[0] = x0.clone();
            for k in 1..n {
                coords[k] = a.coord(k).div(&two_x0);
            }
            let root = Element::new(algebra, coords)?;
            let neg = -&root;
            if !finite.iter().any(|(r, _)| *r == root) {
                finite.push((root, 1));
            }
            if !finite.iter().any(|(r, _)| *r == neg) {
                finite.push((neg, 1));
            }
        }
    }

    // x⁰ = 0 branch: Σ C⁰_{kl} x^k x^l = a⁰ over imaginary x; reachable
    // only when im(a) = 0.
    if imaginary_is_zero && a0.is_negative() {
        for k in 1..n {
            for l in 1..n {
                let expected = if k == l {
                    Scalar::from_int(-1)
                } else {
                    Scalar::zero()
                };
                if *algebra.constant(k, l, 0) != expected {
                    return Err(SolveError::ImaginaryFormNotReducible);
                }
            }
        }
        let radius = a0.neg().sqrt().expect("positive");
        if n > 2 {
            return Ok(RootSet::Sphere {
                center: Element::zero(algebra),
                radius,
            });
        }
        // One imaginary dimension: the "sphere" degenerates to two points.
        let mut coords = vec![Scalar::zero(); n];
        coords[1] = radius;
        let root = Element::new(algebra, coords)?;
        let neg = -&root;
        finite.push((root, 1));
        finite.push((neg, 1));
    }

    if finite.is_empty() {
        Ok(RootSet::Empty)
    } else {
        sort_roots(&mut finite);
        Ok(RootSet::Finite(finite))
    }
}

/// Square roots in the quaternion algebra, by the three-way case analysis:
/// `a = 0` gives the double root 0; real negative `a` gives the sphere of
/// pure imaginaries of norm `√(−a⁰)`; anything else gives an exact pair
/// `{x, −x}` with `x⁰ = √y`, `y = (a⁰ + |a|)/2`, `x^k = a^k/(2x⁰)`.
pub fn sqrt_quaternion(a: &Element) -> Result<RootSet, SolveError> {
    if !a.algebra().is_quaternion() {
        return Err(SolveError::UnsupportedAlgebra);
    }
    let profile = crate::conjugation::analyze(a.algebra())
        .expect("quaternions are a conjugation algebra");
    sqrt_conjugation(&profile, a)
}

/// Roots of `(a+x)² = a²`, equivalently `x² + ax + xa = 0`, computed by
/// translating the square roots of `a²`: `{s − a : s² = a²}`. Always
/// contains `0` and `−2a`.
pub fn shifted_square(a: &Element) -> Result<RootSet, SolveError> {
    if !a.algebra().is_quaternion() {
        return Err(SolveError::UnsupportedAlgebra);
    }
    let a_sq = a.mul(a)?;
    match sqrt_quaternion(&a_sq)? {
        RootSet::Finite(roots) => {
            let mut shifted: Vec<(Element, u32)> = roots
                .into_iter()
                .map(|(s, m)| (&s - a, m))
                .collect();
            sort_roots(&mut shifted);
            Ok(RootSet::Finite(shifted))
        }
        RootSet::Sphere { center, radius } => Ok(RootSet::Sphere {
            center: &center - a,
            radius,
        }),
        other => Ok(other),
    }
}

/// Solve `ax − xa = b` exactly: the commutator map is linear in `x`, so
/// Gaussian elimination over the basis yields either an affine solution
/// family or a certificate of inconsistency.
pub fn sylvester_linear(a: &Element, b: &Element) -> Result<RootSet, SolveError> {
    if !a.same_algebra(b) {
        return Err(SolveError::Algebra(AlgebraError::AlgebraMismatch));
    }
    let algebra = a.algebra();
    let n = algebra.dim();
    let mut m = Matrix::zeros(n, n);
    for q in 0..n {
        for p in 0..n {
            let mut acc = Scalar::zero();
            for k in 0..n {
                if a.coord(k).is_zero() {
                    continue;
                }
                let diff = algebra.constant(k, q, p).sub(algebra.constant(q, k, p));
                if !diff.is_zero() {
                    acc = acc.add(&a.coord(k).mul(&diff));
                }
            }
            m.set(p, q, acc);
        }
    }
    let all_rational = a
        .coords()
        .iter()
        .chain(b.coords())
        .all(|s| matches!(s, Scalar::Rational(_)));
    let eps = if all_rational { 0.0 } else { 1e-12 };
    match solve_linear(&m, b.coords(), eps) {
        LinearSolution::Inconsistent => Ok(RootSet::Empty),
        LinearSolution::Solution { particular, kernel } => Ok(RootSet::Affine {
            particular: Element::new(algebra, particular)?,
            basis: kernel
                .into_iter()
                .map(|v| Element::new(algebra, v))
                .collect::<Result<_, _>>()?,
        }),
    }
}

/// Exact least-squares residual of the Sylvester system, used to certify
/// that an `Empty` answer is bounded away from solvability.
pub fn sylvester_lstsq_residual_norm(a: &Element, b: &Element) -> Result<f64, SolveError> {
    if !a.same_algebra(b) {
        return Err(SolveError::Algebra(AlgebraError::AlgebraMismatch));
    }
    let algebra = a.algebra();
    let n = algebra.dim();
    let mut m = Matrix::zeros(n, n);
    for q in 0..n {
        let eq = Element::basis(algebra, q)?;
        let col = &a.mul(&eq)? - &eq.mul(a)?;
        for p in 0..n {
            m.set(p, q, col.coord(p).clone());
        }
    }
    let residual = least_squares_residual(&m, b.coords());
    Ok(residual
        .iter()
        .map(|s| {
            let x = s.to_f64();
            x * x
        })
        .sum::<f64>()
        .sqrt())
}

/// Configuration for the multistart Newton scanner.
#[derive(Clone, Debug)]
pub struct ScanConfig {
    pub starts: usize,
    pub seed: u64,
    pub newton_max_iters: usize,
    pub residual_tol: f64,
    pub dedup_radius: f64,
    /// Starts are drawn uniformly from `[−search_box, search_box]ⁿ`.
    pub search_box: f64,
}

impl Default for ScanConfig {
    fn default() -> Self {
        ScanConfig {
            starts: 512,
            seed: 0,
            newton_max_iters: 50,
            residual_tol: 1e-10,
            dedup_radius: 1e-6,
            search_box: 4.0,
        }
    }
}

impl ScanConfig {
    fn validate(&self) -> Result<(), SolveError> {
        if self.residual_tol <= 0.0 {
            return Err(SolveError::BadConfig("residual_tol must be > 0".into()));
        }
        if self.dedup_radius <= 0.0 {
            return Err(SolveError::BadConfig("dedup_radius must be > 0".into()));
        }
        if self.starts == 0 {
            return Err(SolveError::BadConfig("starts must be >= 1".into()));
        }
        if !self.search_box.is_finite() || self.search_box <= 0.0 {
            return Err(SolveError::BadConfig("search_box must be > 0".into()));
        }
        Ok(())
    }
}

/// Flattened float form of a polynomial for the scanner's hot loop:
/// one coordinate vector per coefficient slot per monomial.
struct FloatPoly {
    n: usize,
    constants: Vec<f64>,
    monos: Vec<Vec<Vec<f64>>>,
}

impl FloatPoly {
    fn new(p: &NcPolynomial) -> FloatPoly {
        let n = p.algebra().dim();
        let constants = p.algebra().constants_to_f64();
        let monos = p
            .monomials()
            .map(|m| {
                m.coeffs()
                    .iter()
                    .map(|e| e.coords().iter().map(Scalar::to_f64).collect())
                    .collect()
            })
            .collect();
        FloatPoly {
            n,
            constants,
            monos,
        }
    }

    fn mul(&self, x: &[f64], y: &[f64], out: &mut [f64]) {
        let n = self.n;
        out.fill(0.0);
        for k in 0..n {
            if x[k] == 0.0 {
                continue;
            }
            for l in 0..n {
                let xy = x[k] * y[l];
                if xy == 0.0 {
                    continue;
                }
                let base = k * n * n + l * n;
                for p in 0..n {
                    out[p] += self.constants[base + p] * xy;
                }
            }
        }
    }

    /// Value and Jacobian of the coordinate map at `x`.
    fn eval_with_jacobian(&self, x: &[f64]) -> (Vec<f64>, Vec<f64>) {
        let n = self.n;
        let mut value = vec![0.0; n];
        let mut jac = vec![0.0; n * n]; // row p, column q
        let mut tmp = vec![0.0; n];
        let mut tmp2 = vec![0.0; n];
        for chain in &self.monos {
            let k = chain.len() - 1;
            // prefixes[t] = a₀·x·a₁·…·x·a_t, suffixes[t] = a_t·x·…·x·a_k
            let mut prefixes: Vec<Vec<f64>> = Vec::with_capacity(k + 1);
            prefixes.push(chain[0].clone());
            for t in 1..=k {
                self.mul(prefixes.last().unwrap(), x, &mut tmp);
                self.mul(&tmp, &chain[t], &mut tmp2);
                prefixes.push(tmp2.clone());
            }
            for (p, v) in value.iter_mut().zip(prefixes.last().unwrap()) {
                *p += v;
            }
            if k == 0 {
                continue;
            }
            let mut suffixes: Vec<Vec<f64>> = vec![Vec::new(); k + 1];
            suffixes[k] = chain[k].clone();
            for t in (0..k).rev() {
                self.mul(&chain[t], x, &mut tmp);
                self.mul(&tmp, &suffixes[t + 1], &mut tmp2);
                suffixes[t] = tmp2.clone();
            }
            // Replacing the variable at position pos (1-based among k slots)
            // contributes prefixes[pos−1] · e_q · suffixes[pos].
            for pos in 1..=k {
                for q in 0..n {
                    let mut basis = vec![0.0; n];
                    basis[q] = 1.0;
                    self.mul(&prefixes[pos - 1], &basis, &mut tmp);
                    self.mul(&tmp, &suffixes[pos], &mut tmp2);
                    for p in 0..n {
                        jac[p * n + q] += tmp2[p];
                    }
                }
            }
        }
        (value, jac)
    }

}

/// Multistart Newton on the coordinate residual of `eval(p, x)`.
/// Deterministic for a fixed seed: starts come from a seeded ChaCha stream,
/// iteration is sequential, and results are sorted by coordinates before
/// dedup. Singular Jacobians fall back to a ridge-regularized step.
pub fn newton_root_scan(
    p: &NcPolynomial,
    cfg: &ScanConfig,
) -> Result<Vec<(Element, f64)>, SolveError> {
    cfg.validate()?;
    let n = p.algebra().dim();
    let fp = FloatPoly::new(p);
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut converged: Vec<(Vec<f64>, f64)> = Vec::new();

    for _ in 0..cfg.starts {
        let mut x: Vec<f64> = (0..n)
            .map(|_| rng.random_range(-cfg.search_box..=cfg.search_box))
            .collect();
        let mut best: Option<(Vec<f64>, f64)> = None;
        for _ in 0..cfg.newton_max_iters {
            let (value, jac) = fp.eval_with_jacobian(&x);
            let norm = value.iter().map(|v| v * v).sum::<f64>().sqrt();
            if best.as_ref().is_none_or(|(_, b)| norm < *b) {
                best = Some((x.clone(), norm));
            }
            if norm <= cfg.residual_tol * 1e-2 {
                break;
            }
            let neg_value: Vec<f64> = value.iter().map(|v| -v).collect();
            let mut step = neg_value.clone();
            let mut jac_copy = jac.clone();
            if !solve_f64(&mut jac_copy, n, &mut step) {
                step = ridge_solve_f64(&jac, n, &neg_value, 1e-10);
            }
            for (xi, s) in x.iter_mut().zip(&step) {
                *xi += s;
            }
            if x.iter().any(|v| !v.is_finite() || v.abs() > 1e8) {
                break;
            }
        }
        if let Some((pt, norm)) = best {
            if norm <= cfg.residual_tol {
                converged.push((pt, norm));
            }
        }
    }

    converged.sort_by(|a, b| {
        a.0.partial_cmp(&b.0)
            .unwrap_or(std::cmp::Ordering::Equal)
            .then(a.1.total_cmp(&b.1))
    });
    let mut clusters: Vec<(Vec<f64>, f64)> = Vec::new();
    for (pt, norm) in converged {
        let mut merged = false;
        for (rep, rep_norm) in clusters.iter_mut() {
            let dist = rep
                .iter()
                .zip(&pt)
                .map(|(a, b)| (a - b) * (a - b))
                .sum::<f64>()
                .sqrt();
            if dist <= cfg.dedup_radius {
                if norm < *rep_norm {
                    *rep = pt.clone();
                    *rep_norm = norm;
                }
                merged = true;
                break;
            }
        }
        if !merged {
            clusters.push((pt, norm));
        }
    }
    clusters.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap_or(std::cmp::Ordering::Equal));

    clusters
        .into_iter()
        .map(|(pt, norm)| {
            let coords = pt.into_iter().map(Scalar::from_f64).collect();
            Ok((Element::new(p.algebra(), coords)?, norm))
        })
        .collect()
}

fn sort_roots(roots: &mut [(Element, u32)]) {
    roots.sort_by(|a, b| {
        let ka: Vec<f64> = a.0.coords().iter().map(Scalar::to_f64).collect();
        let kb: Vec<f64> = b.0.coords().iter().map(Scalar::to_f64).collect();
        ka.partial_cmp(&kb).unwrap_or(std::cmp::Ordering::Equal)
    });
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::conjugation::analyze;
    use std::sync::Arc;

    fn h() -> Arc<AlgebraSpec> {
        AlgebraSpec::quaternion()
    }

    fn elem(alg: &Arc<AlgebraSpec>, c: &[i64]) -> Element {
        Element::from_ints(alg, c).unwrap()
    }

    #[test]
    fn square_residual_examples() {
        let h = h();
        let zero = vec![Scalar::zero(); 4];
        assert!(square_residual_coords(&h, &zero, &zero)
            .unwrap()
            .iter()
            .all(Scalar::is_zero));

        // x = i, a = −1
        let i = elem(&h, &[0, 1, 0, 0]);
        let minus_one = elem(&h, &[-1, 0, 0, 0]);
        assert!(square_residual_coords(&h, i.coords(), minus_one.coords())
            .unwrap()
            .iter()
            .all(Scalar::is_zero));

        // x = 1 + i, a = 2i
        let x = elem(&h, &[1, 1, 0, 0]);
        let a = elem(&h, &[0, 2, 0, 0]);
        assert!(square_residual_coords(&h, x.coords(), a.coords())
            .unwrap()
            .iter()
            .all(Scalar::is_zero));

        assert!(square_residual_coords(&h, &zero[..3], &zero).is_err());
    }

    #[test]
    fn shifted_square_residual_examples() {
        let h = h();
        // x = 0 for any a
        let a = elem(&h, &[3, -1, 2, 5]);
        let zero = Element::zero(&h);
        assert!(
            shifted_square_residual_coords(&h, a.coords(), zero.coords())
                .unwrap()
                .iter()
                .all(Scalar::is_zero)
        );

        // a = i, x = j − i
        let i = elem(&h, &[0, 1, 0, 0]);
        let x = elem(&h, &[0, -1, 1, 0]);
        assert!(shifted_square_residual_coords(&h, i.coords(), x.coords())
            .unwrap()
            .iter()
            .all(Scalar::is_zero));

        // a = 1, x = −2
        let one = elem(&h, &[1, 0, 0, 0]);
        let minus_two = elem(&h, &[-2, 0, 0, 0]);
        assert!(
            shifted_square_residual_coords(&h, one.coords(), minus_two.coords())
                .unwrap()
                .iter()
                .all(Scalar::is_zero)
        );

        // a = 1, x = 1 is NOT a root: the equation is x² + 2x = 0.
        assert!(!shifted_square_residual_coords(&h, one.coords(), one.coords())
            .unwrap()
            .iter()
            .all(Scalar::is_zero));
    }

    #[test]
    fn sqrt_of_minus_one_is_unit_sphere() {
        let h = h();
        let a = elem(&h, &[-1, 0, 0, 0]);
        match sqrt_quaternion(&a).unwrap() {
            RootSet::Sphere { center, radius } => {
                assert!(center.is_zero());
                assert_eq!(radius, Scalar::one());
            }
            other => panic!("expected sphere, got {other:?}"),
        }
    }

    #[test]
    fn sqrt_of_positive_real() {
        let h = h();
        let a = elem(&h, &[4, 0, 0, 0]);
        match sqrt_quaternion(&a).unwrap() {
            RootSet::Finite(roots) => {
                let vals: Vec<Element> = roots.iter().map(|(r, _)| r.clone()).collect();
                assert!(vals.contains(&elem(&h, &[2, 0, 0, 0])));
                assert!(vals.contains(&elem(&h, &[-2, 0, 0, 0])));
                assert_eq!(vals.len(), 2);
            }
            other => panic!("expected finite pair, got {other:?}"),
        }
    }

    #[test]
    fn sqrt_of_zero_has_multiplicity_two() {
        let h = h();
        match sqrt_quaternion(&Element::zero(&h)).unwrap() {
            RootSet::Finite(roots) => {
                assert_eq!(roots.len(), 1);
                assert!(roots[0].0.is_zero());
                assert_eq!(roots[0].1, 2);
            }
            other => panic!("expected finite, got {other:?}"),
        }
    }

    #[test]
    fn sqrt_of_i_matches_analytic_form() {
        let h = h();
        let a = elem(&h, &[0, 1, 0, 0]);
        match sqrt_quaternion(&a).unwrap() {
            RootSet::Finite(roots) => {
                assert_eq!(roots.len(), 2);
                let expect = 0.5_f64.sqrt();
                let found = roots
                    .iter()
                    .any(|(r, _)| {
                        (r.coord(0).to_f64() - expect).abs() < 1e-12
                            && (r.coord(1).to_f64() - expect).abs() < 1e-12
                    });
                assert!(found, "missing +(√2/2)(1+i): {roots:?}");
                // Closed under negation.
                let (r0, _) = &roots[0];
                assert!(roots.iter().any(|(r, _)| *r == -r0));
                // Roots square back to a.
                for (r, _) in &roots {
                    let res = square_residual_coords(&h, r.coords(), a.coords()).unwrap();
                    for s in res {
                        assert!(s.to_f64().abs() < 1e-12);
                    }
                }
            }
            other => panic!("expected finite pair, got {other:?}"),
        }
    }

    #[test]
    fn sqrt_of_3_plus_4i_is_exact() {
        let h = h();
        let a = elem(&h, &[3, 4, 0, 0]);
        match sqrt_quaternion(&a).unwrap() {
            RootSet::Finite(roots) => {
                let vals: Vec<Element> = roots.iter().map(|(r, _)| r.clone()).collect();
                assert!(vals.contains(&elem(&h, &[2, 1, 0, 0])));
                assert!(vals.contains(&elem(&h, &[-2, -1, 0, 0])));
                // Exact rationals: the residual is exactly zero.
                for r in &vals {
                    assert!(square_residual_coords(&h, r.coords(), a.coords())
                        .unwrap()
                        .iter()
                        .all(Scalar::is_zero));
                }
            }
            other => panic!("expected finite pair, got {other:?}"),
        }
    }

    #[test]
    fn sqrt_in_complex_field() {
        let c = AlgebraSpec::complex();
        let profile = analyze(&c).unwrap();
        // sqrt(−1) = ±i, via the degenerate one-dimensional "sphere".
        let minus_one = Element::from_ints(&c, &[-1, 0]).unwrap();
        match sqrt_conjugation(&profile, &minus_one).unwrap() {
            RootSet::Finite(roots) => {
                let vals: Vec<Element> = roots.iter().map(|(r, _)| r.clone()).collect();
                assert!(vals.contains(&Element::from_ints(&c, &[0, 1]).unwrap()));
                assert!(vals.contains(&Element::from_ints(&c, &[0, -1]).unwrap()));
            }
            other => panic!("expected ±i, got {other:?}"),
        }
        // sqrt(i) = ±(√2/2)(1+i).
        let i = Element::from_ints(&c, &[0, 1]).unwrap();
        match sqrt_conjugation(&profile, &i).unwrap() {
            RootSet::Finite(roots) => {
                assert_eq!(roots.len(), 2);
                let expect = 0.5_f64.sqrt();
                assert!(roots.iter().any(|(r, _)| {
                    (r.coord(0).to_f64() - expect).abs() < 1e-12
                        && (r.coord(1).to_f64() - expect).abs() < 1e-12
                }));
            }
            other => panic!("expected finite pair, got {other:?}"),
        }
    }

    #[test]
    fn shifted_square_cases() {
        let h = h();
        // a = 1 → {0, −2}
        let one = elem(&h, &[1, 0, 0, 0]);
        match shifted_square(&one).unwrap() {
            RootSet::Finite(roots) => {
                let vals: Vec<Element> = roots.iter().map(|(r, _)| r.clone()).collect();
                assert_eq!(vals.len(), 2);
                assert!(vals.contains(&Element::zero(&h)));
                assert!(vals.contains(&elem(&h, &[-2, 0, 0, 0])));
            }
            other => panic!("expected two roots, got {other:?}"),
        }
        // a = 0 → double root 0
        match shifted_square(&Element::zero(&h)).unwrap() {
            RootSet::Finite(roots) => {
                assert_eq!(roots, vec![(Element::zero(&h), 2)]);
            }
            other => panic!("expected double zero, got {other:?}"),
        }
        // a = i → sphere centered at −i with radius 1; members satisfy
        // x² + ix + xi = 0.
        let i = elem(&h, &[0, 1, 0, 0]);
        match shifted_square(&i).unwrap() {
            RootSet::Sphere { center, radius } => {
                assert_eq!(center, elem(&h, &[0, -1, 0, 0]));
                assert_eq!(radius, Scalar::one());
                let set = RootSet::Sphere { center, radius };
                for x in set.samples(25, 7) {
                    let res =
                        shifted_square_residual_coords(&h, i.coords(), x.coords()).unwrap();
                    assert!(res.iter().all(Scalar::is_zero), "nonzero residual at {x}");
                }
            }
            other => panic!("expected sphere, got {other:?}"),
        }
    }

    #[test]
    fn sylvester_no_solution_for_unit_rhs() {
        let h = h();
        let j = elem(&h, &[0, 0, 1, 0]);
        let one = elem(&h, &[1, 0, 0, 0]);
        assert!(matches!(
            sylvester_linear(&j, &one).unwrap(),
            RootSet::Empty
        ));
        // And the float least-squares residual is bounded away from zero.
        let lstsq = sylvester_lstsq_residual_norm(&j, &one).unwrap();
        assert!(lstsq > 1e-6, "lstsq residual {lstsq}");
    }

    #[test]
    fn sylvester_affine_solution() {
        let h = h();
        let i = elem(&h, &[0, 1, 0, 0]);
        let b = elem(&h, &[0, 0, 0, 2]); // 2k
        match sylvester_linear(&i, &b).unwrap() {
            RootSet::Affine { particular, basis } => {
                // residual check: i·x − x·i = 2k exactly
                let res = &(&i.mul(&particular).unwrap() - &particular.mul(&i).unwrap()) - &b;
                assert!(res.is_zero());
                // kernel is the centralizer of i: span{1, i}
                assert_eq!(basis.len(), 2);
                for v in &basis {
                    assert!(i.commutator(v).unwrap().is_zero());
                }
            }
            other => panic!("expected affine family, got {other:?}"),
        }
    }

    #[test]
    fn sylvester_degenerate_all_space() {
        let h = h();
        let zero = Element::zero(&h);
        match sylvester_linear(&zero, &zero).unwrap() {
            RootSet::Affine { particular, basis } => {
                assert!(particular.is_zero());
                assert_eq!(basis.len(), 4);
            }
            other => panic!("expected full space, got {other:?}"),
        }
    }

    #[test]
    fn scan_finds_exact_pair() {
        let h = h();
        let a = elem(&h, &[3, 4, 0, 0]);
        let x = NcPolynomial::variable(&h).unwrap();
        let p = x
            .mul(&x)
            .unwrap()
            .sub(&NcPolynomial::constant(a))
            .unwrap();
        let cfg = ScanConfig {
            starts: 64,
            seed: 42,
            ..ScanConfig::default()
        };
        let found = newton_root_scan(&p, &cfg).unwrap();
        assert_eq!(found.len(), 2, "{found:?}");
        let expect = [[2.0, 1.0, 0.0, 0.0], [-2.0, -1.0, 0.0, 0.0]];
        for target in expect {
            assert!(found.iter().any(|(r, _)| {
                r.coords()
                    .iter()
                    .zip(&target)
                    .all(|(c, t)| (c.to_f64() - t).abs() < 1e-8)
            }));
        }
    }

    #[test]
    fn scan_is_deterministic() {
        let h = h();
        let x = NcPolynomial::variable(&h).unwrap();
        let one = NcPolynomial::constant(Element::unit(&h).unwrap());
        let p = x.mul(&x).unwrap().add(&one).unwrap();
        let cfg = ScanConfig {
            starts: 32,
            seed: 5,
            ..ScanConfig::default()
        };
        let a = newton_root_scan(&p, &cfg).unwrap();
        let b = newton_root_scan(&p, &cfg).unwrap();
        assert_eq!(a.len(), b.len());
        for ((ra, na), (rb, nb)) in a.iter().zip(&b) {
            assert_eq!(ra, rb);
            assert_eq!(na, nb);
        }
    }

    #[test]
    fn scan_config_validation() {
        let h = h();
        let p = NcPolynomial::variable(&h).unwrap();
        let cfg = ScanConfig {
            residual_tol: 0.0,
            ..ScanConfig::default()
        };
        assert!(matches!(
            newton_root_scan(&p, &cfg),
            Err(SolveError::BadConfig(_))
        ));
    }

    #[test]
    fn rational_sphere_samples_are_exact() {
        let h = h();
        let set = RootSet::Sphere {
            center: Element::zero(&h),
            radius: Scalar::from_int(3),
        };
        let samples = set.samples(50, 11);
        assert_eq!(samples.len(), 50);
        let a = elem(&h, &[-9, 0, 0, 0]);
        for x in samples {
            // All-rational coordinates and exactly zero residual for x² = −9.
            assert!(x.coords().iter().all(|s| s.as_rational().is_some()));
            let res = square_residual_coords(&h, x.coords(), a.coords()).unwrap();
            assert!(res.iter().all(Scalar::is_zero));
        }
    }
}
