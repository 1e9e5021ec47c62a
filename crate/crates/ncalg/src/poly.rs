//! Noncommutative polynomials with two-sided coefficients.
//!
//! A degree-k monomial is a chain `a₀·x·a₁·x·…·x·a_k` of k variable slots
//! interleaved with k+1 algebra coefficients. A polynomial is a formal sum
//! of such monomials; its canonical form per degree is the dense coefficient
//! tensor `T[i₀,…,i_k]` over the basis, and polynomial equality is defined
//! as degreewise tensor equality.
//!
//! The tensor of a degree-k monomial is the outer product of the coordinate
//! vectors of its coefficients; dense storage caps the canonical degree at
//! `n^(k+1) ≤ 16384` scalars (k ≤ 6 for n = 4). Higher degrees keep only
//! the monomial-list form and cannot be compared canonically.

use crate::algebra::{AlgebraError, AlgebraSpec, Element};
use crate::scalar::Scalar;
use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

/// Hard ceiling on the number of scalars in one canonical tensor.
pub const MAX_TENSOR_SCALARS: usize = 16384;

/// Largest degree whose canonical tensor fits under the cap for the given
/// dimension.
pub fn max_canonical_degree(dim: usize) -> usize {
    if dim <= 1 {
        return 32;
    }
    let mut size = dim;
    let mut degree = 0;
    while size * dim <= MAX_TENSOR_SCALARS {
        size *= dim;
        degree += 1;
    }
    degree
}

#[derive(Debug, Clone, PartialEq)]
pub enum PolyError {
    Algebra(AlgebraError),
    /// A monomial needs at least one coefficient.
    EmptyMonomial,
    /// The operation needs a unital algebra (the variable `x` is `1·x·1`).
    NoUnit,
    /// Canonical tensor would exceed the dense-storage cap.
    DegreeTooLarge { degree: usize, max: usize },
    /// Division expects a divisor of degree exactly 1.
    DivisorNotLinear,
    /// The degree-1 coefficient of the divisor is singular as an operator.
    DivisorNotInvertible,
    /// The operator inverse exists but is not representable as a degree-1
    /// tensor over this algebra.
    DivisorNotRepresentable,
}

impl fmt::Display for PolyError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PolyError::Algebra(e) => write!(f, "{e}"),
            PolyError::EmptyMonomial => write!(f, "monomial needs at least one coefficient"),
            PolyError::NoUnit => write!(f, "operation requires a unital algebra"),
            PolyError::DegreeTooLarge { degree, max } => write!(
                f,
                "degree {degree} exceeds canonical tensor cap (max degree {max})"
            ),
            PolyError::DivisorNotLinear => write!(f, "divisor must have degree exactly 1"),
            PolyError::DivisorNotInvertible => {
                write!(f, "divisor leading tensor is not invertible as an operator")
            }
            PolyError::DivisorNotRepresentable => write!(
                f,
                "divisor leading tensor has an operator inverse that is not representable \
                 as a degree-1 tensor over this algebra"
            ),
        }
    }
}

impl std::error::Error for PolyError {}

impl From<AlgebraError> for PolyError {
    fn from(e: AlgebraError) -> Self {
        PolyError::Algebra(e)
    }
}

/// A chain `a₀·x·a₁·x·…·x·a_k`; `coeffs.len() == degree + 1`.
#[derive(Clone, PartialEq)]
pub struct Monomial {
    coeffs: Vec<Element>,
}

impl Monomial {
    pub fn new(coeffs: Vec<Element>) -> Result<Monomial, PolyError> {
        let Some(first) = coeffs.first() else {
            return Err(PolyError::EmptyMonomial);
        };
        for c in &coeffs[1..] {
            if !first.same_algebra(c) {
                return Err(PolyError::Algebra(AlgebraError::AlgebraMismatch));
            }
        }
        Ok(Monomial { coeffs })
    }

    /// The degree-0 monomial: a bare element.
    pub fn constant(value: Element) -> Monomial {
        Monomial {
            coeffs: vec![value],
        }
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[Element] {
        &self.coeffs
    }

    pub fn algebra(&self) -> &Arc<AlgebraSpec> {
        self.coeffs[0].algebra()
    }

    /// True when some coefficient is zero, which kills the whole chain.
    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().any(Element::is_zero)
    }

    /// Merge product:
    /// `(a₀x…xa_m)(b₀x…xb_l) = a₀x…x(a_m b₀)x…xb_l`.
    pub fn mul(&self, other: &Monomial) -> Result<Monomial, PolyError> {
        let mut coeffs = Vec::with_capacity(self.coeffs.len() + other.coeffs.len() - 1);
        coeffs.extend_from_slice(&self.coeffs[..self.coeffs.len() - 1]);
        coeffs.push(
            self.coeffs
                .last()
                .expect("nonempty")
                .mul(&other.coeffs[0])?,
        );
        coeffs.extend_from_slice(&other.coeffs[1..]);
        Ok(Monomial { coeffs })
    }

    /// Right-multiply the trailing coefficient by a constant.
    pub fn scale_right(&self, value: &Element) -> Result<Monomial, PolyError> {
        let mut coeffs = self.coeffs.clone();
        let last = coeffs.last_mut().expect("nonempty");
        *last = last.mul(value)?;
        Ok(Monomial { coeffs })
    }

    /// Substitute `x0` for every variable slot, multiplying left to right.
    pub fn eval(&self, x0: &Element) -> Result<Element, PolyError> {
        let mut acc = self.coeffs[0].clone();
        for c in &self.coeffs[1..] {
            acc = acc.mul(x0)?.mul(c)?;
        }
        Ok(acc)
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (idx, c) in self.coeffs.iter().enumerate() {
            if idx > 0 {
                write!(f, "*x*")?;
            }
            write!(f, "({c})")?;
        }
        Ok(())
    }
}

/// Dense canonical tensor of one homogeneous degree:
/// `T[i₀,…,i_k]` is the weight of `e_{i₀}·x·e_{i₁}·x·…·x·e_{i_k}`.
#[derive(Clone, Debug)]
pub struct CoeffTensor {
    degree: usize,
    dim: usize,
    data: Vec<Scalar>,
}

impl CoeffTensor {
    pub fn zero(dim: usize, degree: usize) -> Result<CoeffTensor, PolyError> {
        let max = max_canonical_degree(dim);
        if degree > max {
            return Err(PolyError::DegreeTooLarge { degree, max });
        }
        let len = dim.checked_pow(degree as u32 + 1).expect("within cap");
        Ok(CoeffTensor {
            degree,
            dim,
            data: vec![Scalar::zero(); len],
        })
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn data(&self) -> &[Scalar] {
        &self.data
    }

    /// Flat index of `[i₀,…,i_k]` (row-major, i₀ slowest).
    pub fn flat_index(&self, indices: &[usize]) -> usize {
        debug_assert_eq!(indices.len(), self.degree + 1);
        indices.iter().fold(0, |acc, &i| acc * self.dim + i)
    }

    pub fn get(&self, indices: &[usize]) -> &Scalar {
        &self.data[self.flat_index(indices)]
    }

    pub fn set_flat(&mut self, idx: usize, v: Scalar) {
        self.data[idx] = v;
    }

    /// Add the outer product of the monomial's coefficient coordinates.
    pub fn accumulate(&mut self, mono: &Monomial) {
        debug_assert_eq!(mono.degree(), self.degree);
        // Build the outer product incrementally, one coefficient at a time.
        let mut acc: Vec<Scalar> = mono.coeffs()[0].coords().to_vec();
        for c in &mono.coeffs()[1..] {
            let next_len = acc.len() * self.dim;
            let mut next = Vec::with_capacity(next_len);
            for a in &acc {
                if a.is_zero() {
                    next.extend(std::iter::repeat_with(Scalar::zero).take(self.dim));
                    continue;
                }
                for b in c.coords() {
                    next.push(a.mul(b));
                }
            }
            acc = next;
        }
        for (slot, v) in self.data.iter_mut().zip(acc) {
            if !v.is_zero() {
                *slot = slot.add(&v);
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Scalar::is_zero)
    }
}

impl PartialEq for CoeffTensor {
    fn eq(&self, other: &Self) -> bool {
        self.degree == other.degree && self.dim == other.dim && self.data == other.data
    }
}

/// A polynomial over an algebra: monomials grouped by degree plus the
/// eagerly computed canonical tensor of each degree (where it fits).
#[derive(Clone)]
pub struct NcPolynomial {
    algebra: Arc<AlgebraSpec>,
    monos: BTreeMap<usize, Vec<Monomial>>,
    tensors: BTreeMap<usize, Option<CoeffTensor>>,
}

impl NcPolynomial {
    pub fn zero(algebra: &Arc<AlgebraSpec>) -> NcPolynomial {
        NcPolynomial {
            algebra: Arc::clone(algebra),
            monos: BTreeMap::new(),
            tensors: BTreeMap::new(),
        }
    }

    pub fn constant(value: Element) -> NcPolynomial {
        let algebra = Arc::clone(value.algebra());
        NcPolynomial::build(algebra, vec![Monomial::constant(value)])
    }

    /// The variable `x`, i.e. the chain `1·x·1`. Needs a unit.
    pub fn variable(algebra: &Arc<AlgebraSpec>) -> Result<NcPolynomial, PolyError> {
        let one = Element::unit(algebra).map_err(|_| PolyError::NoUnit)?;
        Ok(NcPolynomial::build(
            Arc::clone(algebra),
            vec![Monomial::new(vec![one.clone(), one]).expect("nonempty")],
        ))
    }

    /// The monic linear polynomial `x − c`.
    pub fn x_minus(c: &Element) -> Result<NcPolynomial, PolyError> {
        let x = NcPolynomial::variable(c.algebra())?;
        x.sub(&NcPolynomial::constant(c.clone()))
    }

    pub fn from_monomials(
        algebra: &Arc<AlgebraSpec>,
        monomials: Vec<Monomial>,
    ) -> Result<NcPolynomial, PolyError> {
        for m in &monomials {
            if !m.coeffs()[0].same_algebra(&Element::zero(algebra)) {
                return Err(PolyError::Algebra(AlgebraError::AlgebraMismatch));
            }
        }
        Ok(NcPolynomial::build(Arc::clone(algebra), monomials))
    }

    fn build(algebra: Arc<AlgebraSpec>, monomials: Vec<Monomial>) -> NcPolynomial {
        let mut monos: BTreeMap<usize, Vec<Monomial>> = BTreeMap::new();
        for m in monomials {
            monos.entry(m.degree()).or_default().push(m);
        }
        let dim = algebra.dim();
        let max = max_canonical_degree(dim);
        let mut tensors = BTreeMap::new();
        for (&deg, ms) in &monos {
            if deg > max {
                tensors.insert(deg, None);
                continue;
            }
            let mut t = CoeffTensor::zero(dim, deg).expect("degree within cap");
            for m in ms {
                t.accumulate(m);
            }
            tensors.insert(deg, Some(t));
        }
        NcPolynomial {
            algebra,
            monos,
            tensors,
        }
    }

    pub fn algebra(&self) -> &Arc<AlgebraSpec> {
        &self.algebra
    }

    /// Monomials of one degree (raw form, not canonicalized).
    pub fn monomials_of_degree(&self, degree: usize) -> &[Monomial] {
        self.monos.get(&degree).map(Vec::as_slice).unwrap_or(&[])
    }

    /// All monomials, ascending by degree.
    pub fn monomials(&self) -> impl Iterator<Item = &Monomial> {
        self.monos.values().flatten()
    }

    /// Max degree with a nonzero canonical tensor; degrees beyond the cap
    /// count as nonzero when they hold any monomial. The zero polynomial
    /// has degree 0.
    pub fn degree(&self) -> usize {
        self.tensors
            .iter()
            .filter(|(_, t)| t.as_ref().is_none_or(|t| !t.is_zero()))
            .map(|(&d, _)| d)
            .max()
            .unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.tensors
            .values()
            .all(|t| t.as_ref().is_some_and(CoeffTensor::is_zero))
    }

    /// Canonical tensor at the given degree (a zero tensor when the degree
    /// is absent). Errors above the dense cap.
    pub fn canonical_tensor(&self, degree: usize) -> Result<CoeffTensor, PolyError> {
        match self.tensors.get(&degree) {
            Some(Some(t)) => Ok(t.clone()),
            Some(None) => Err(PolyError::DegreeTooLarge {
                degree,
                max: max_canonical_degree(self.algebra.dim()),
            }),
            None => CoeffTensor::zero(self.algebra.dim(), degree),
        }
    }

    /// Degreewise canonical-tensor equality. Errors if either side holds
    /// monomials above the dense cap.
    pub fn canonical_eq(&self, other: &NcPolynomial) -> Result<bool, PolyError> {
        if !self.algebra.same_structure(&other.algebra) {
            return Err(PolyError::Algebra(AlgebraError::AlgebraMismatch));
        }
        let degrees: std::collections::BTreeSet<usize> = self
            .tensors
            .keys()
            .chain(other.tensors.keys())
            .copied()
            .collect();
        for d in degrees {
            if self.canonical_tensor(d)? != other.canonical_tensor(d)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    fn require_same_algebra(&self, other: &NcPolynomial) -> Result<(), PolyError> {
        if self.algebra.same_structure(&other.algebra) {
            Ok(())
        } else {
            Err(PolyError::Algebra(AlgebraError::AlgebraMismatch))
        }
    }

    pub fn add(&self, other: &NcPolynomial) -> Result<NcPolynomial, PolyError> {
        self.require_same_algebra(other)?;
        let monomials = self.monomials().chain(other.monomials()).cloned().collect();
        Ok(NcPolynomial::build(Arc::clone(&self.algebra), monomials))
    }

    pub fn neg(&self) -> NcPolynomial {
        let monomials = self
            .monomials()
            .map(|m| {
                let mut coeffs = m.coeffs().to_vec();
                coeffs[0] = -&coeffs[0];
                Monomial::new(coeffs).expect("nonempty")
            })
            .collect();
        NcPolynomial::build(Arc::clone(&self.algebra), monomials)
    }

    pub fn sub(&self, other: &NcPolynomial) -> Result<NcPolynomial, PolyError> {
        self.add(&other.neg())
    }

    /// Bilinear extension of the monomial merge product.
    pub fn mul(&self, other: &NcPolynomial) -> Result<NcPolynomial, PolyError> {
        self.require_same_algebra(other)?;
        let mut monomials = Vec::new();
        for a in self.monomials() {
            for b in other.monomials() {
                monomials.push(a.mul(b)?);
            }
        }
        Ok(NcPolynomial::build(Arc::clone(&self.algebra), monomials))
    }

    /// Convert every coefficient to the given scalar backend.
    pub fn to_backend(&self, backend: crate::scalar::Backend) -> NcPolynomial {
        let monomials = self
            .monomials()
            .map(|m| {
                Monomial::new(m.coeffs().iter().map(|e| e.to_backend(backend)).collect())
                    .expect("nonempty")
            })
            .collect();
        NcPolynomial::build(Arc::clone(&self.algebra), monomials)
    }

    /// Evaluate every monomial chain at `x0` and sum.
    pub fn eval(&self, x0: &Element) -> Result<Element, PolyError> {
        if !Element::zero(&self.algebra).same_algebra(x0) {
            return Err(PolyError::Algebra(AlgebraError::AlgebraMismatch));
        }
        let mut acc = Element::zero(&self.algebra);
        for m in self.monomials() {
            acc = &acc + &m.eval(x0)?;
        }
        Ok(acc)
    }
}

impl fmt::Debug for NcPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for m in self.monomials() {
            if !first {
                write!(f, " + ")?;
            }
            write!(f, "{m:?}")?;
            first = false;
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

/// `(x+a)² = x² + ax + xa + a²`, built from its four explicit monomials.
pub fn expand_square(a: &Element) -> Result<NcPolynomial, PolyError> {
    let alg = a.algebra();
    let one = Element::unit(alg).map_err(|_| PolyError::NoUnit)?;
    let a_sq = a.mul(a)?;
    let monomials = vec![
        Monomial::new(vec![one.clone(), one.clone(), one.clone()])?,
        Monomial::new(vec![a.clone(), one.clone()])?,
        Monomial::new(vec![one.clone(), a.clone()])?,
        Monomial::constant(a_sq),
    ];
    NcPolynomial::from_monomials(alg, monomials)
}

/// `(x+a)³` as its eight explicit monomials.
pub fn expand_cube(a: &Element) -> Result<NcPolynomial, PolyError> {
    let alg = a.algebra();
    let one = Element::unit(alg).map_err(|_| PolyError::NoUnit)?;
    let a2 = a.mul(a)?;
    let a3 = a2.mul(a)?;
    let monomials = vec![
        Monomial::new(vec![one.clone(), one.clone(), one.clone(), one.clone()])?,
        Monomial::new(vec![a.clone(), one.clone(), one.clone()])?,
        Monomial::new(vec![one.clone(), a.clone(), one.clone()])?,
        Monomial::new(vec![one.clone(), one.clone(), a.clone()])?,
        Monomial::new(vec![a2.clone(), one.clone()])?,
        Monomial::new(vec![a.clone(), a.clone()])?,
        Monomial::new(vec![one.clone(), a2.clone()])?,
        Monomial::constant(a3),
    ];
    NcPolynomial::from_monomials(alg, monomials)
}

/// `(x+a)(x+b) = x² + xb + ax + ab`.
pub fn expand_prod(a: &Element, b: &Element) -> Result<NcPolynomial, PolyError> {
    let alg = a.algebra();
    let one = Element::unit(alg).map_err(|_| PolyError::NoUnit)?;
    let ab = a.mul(b)?;
    let monomials = vec![
        Monomial::new(vec![one.clone(), one.clone(), one.clone()])?,
        Monomial::new(vec![one.clone(), b.clone()])?,
        Monomial::new(vec![a.clone(), one.clone()])?,
        Monomial::constant(ab),
    ];
    NcPolynomial::from_monomials(alg, monomials)
}

/// Both sides of the factored difference of squares:
/// `lhs = b² − a²`, `rhs = (b−a)·b + a·(b−a)`. The two agree identically.
pub fn identity_b2_minus_a2(
    a: &Element,
    b: &Element,
) -> Result<(Element, Element), PolyError> {
    let lhs = &b.mul(b)? - &a.mul(a)?;
    let diff = b - a;
    let rhs = &diff.mul(b)? + &a.mul(&diff)?;
    Ok((lhs, rhs))
}

/// The probe polynomial `p(x) = (x−b)(x−a) + (x−a)(x−c)`; `p(a) = 0` by
/// construction.
pub fn build_question_poly(
    a: &Element,
    b: &Element,
    c: &Element,
) -> Result<NcPolynomial, PolyError> {
    let xa = NcPolynomial::x_minus(a)?;
    let xb = NcPolynomial::x_minus(b)?;
    let xc = NcPolynomial::x_minus(c)?;
    xb.mul(&xa)?.add(&xa.mul(&xc)?)
}

/// Monic Viète template `c(x−x1)(x−x2) + d(x−x2)(x−x1)` with `d = 1 − c`.
/// The result is monic of degree 2 and vanishes at both `x1` and `x2`.
pub fn viete_expand(
    c: &Element,
    x1: &Element,
    x2: &Element,
) -> Result<NcPolynomial, PolyError> {
    let one = Element::unit(c.algebra()).map_err(|_| PolyError::NoUnit)?;
    let d = &one - c;
    let f1 = NcPolynomial::x_minus(x1)?;
    let f2 = NcPolynomial::x_minus(x2)?;
    let left = NcPolynomial::constant(c.clone()).mul(&f1.mul(&f2)?)?;
    let right = NcPolynomial::constant(d).mul(&f2.mul(&f1)?)?;
    left.add(&right)
}
