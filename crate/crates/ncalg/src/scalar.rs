//! Dual-backend scalars: exact arbitrary-precision rationals or `f64`.
//!
//! The rational backend keeps every identity bit-exact; the float backend
//! feeds the numeric root scanner. Mixing backends promotes to float.

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{FromPrimitive, One, Signed, ToPrimitive, Zero};
use std::cmp::Ordering;
use std::fmt;

/// Which numeric backend a scalar (or a whole computation) lives on.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Backend {
    Rational,
    Float,
}

/// A scalar of the coefficient ring: an exact rational or a binary float64.
///
/// Rationals are kept fully reduced with positive denominator (enforced by
/// `BigRational`). Arithmetic between a rational and a float promotes the
/// rational to `f64`.
#[derive(Clone)]
pub enum Scalar {
    Rational(BigRational),
    Float(f64),
}

impl Scalar {
    pub fn zero() -> Self {
        Scalar::Rational(BigRational::zero())
    }

    pub fn one() -> Self {
        Scalar::Rational(BigRational::one())
    }

    pub fn from_int(n: i64) -> Self {
        Scalar::Rational(BigRational::from_integer(BigInt::from(n)))
    }

    /// Exact fraction `numer/denom`. Panics if `denom == 0`.
    pub fn from_ratio(numer: i64, denom: i64) -> Self {
        Scalar::Rational(BigRational::new(BigInt::from(numer), BigInt::from(denom)))
    }

    pub fn from_f64(x: f64) -> Self {
        Scalar::Float(x)
    }

    pub fn backend(&self) -> Backend {
        match self {
            Scalar::Rational(_) => Backend::Rational,
            Scalar::Float(_) => Backend::Float,
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rational(r) => r.is_zero(),
            Scalar::Float(x) => *x == 0.0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Rational(r) => r.is_one(),
            Scalar::Float(x) => *x == 1.0,
        }
    }

    pub fn is_negative(&self) -> bool {
        match self {
            Scalar::Rational(r) => r.is_negative(),
            Scalar::Float(x) => *x < 0.0,
        }
    }

    pub fn to_f64(&self) -> f64 {
        match self {
            Scalar::Rational(r) => rational_to_f64(r),
            Scalar::Float(x) => *x,
        }
    }

    /// Convert to the requested backend. Rational -> float is lossy;
    /// float -> rational is exact (every finite `f64` is dyadic).
    pub fn to_backend(&self, backend: Backend) -> Scalar {
        match (self, backend) {
            (Scalar::Rational(_), Backend::Rational) | (Scalar::Float(_), Backend::Float) => {
                self.clone()
            }
            (Scalar::Rational(r), Backend::Float) => Scalar::Float(rational_to_f64(r)),
            (Scalar::Float(x), Backend::Rational) => Scalar::Rational(
                BigRational::from_f64(*x).expect("finite float converts to rational"),
            ),
        }
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        match self {
            Scalar::Rational(r) => Some(r),
            Scalar::Float(_) => None,
        }
    }

    /// Best-effort square root: `None` for negative values; an exact
    /// rational when the operand is a rational perfect square; otherwise
    /// an `f64` square root.
    pub fn sqrt(&self) -> Option<Scalar> {
        if self.is_negative() {
            return None;
        }
        match self {
            Scalar::Rational(r) => match rational_sqrt(r) {
                Some(root) => Some(Scalar::Rational(root)),
                None => Some(Scalar::Float(rational_to_f64(r).sqrt())),
            },
            Scalar::Float(x) => Some(Scalar::Float(x.sqrt())),
        }
    }

    /// `|self - other| <= tol`, evaluated in `f64`.
    pub fn approx_eq(&self, other: &Scalar, tol: f64) -> bool {
        (self.to_f64() - other.to_f64()).abs() <= tol
    }

    pub fn abs(&self) -> Scalar {
        match self {
            Scalar::Rational(r) => Scalar::Rational(r.abs()),
            Scalar::Float(x) => Scalar::Float(x.abs()),
        }
    }

    fn binop(
        &self,
        other: &Scalar,
        rat: impl Fn(&BigRational, &BigRational) -> BigRational,
        flt: impl Fn(f64, f64) -> f64,
    ) -> Scalar {
        match (self, other) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(rat(a, b)),
            _ => Scalar::Float(flt(self.to_f64(), other.to_f64())),
        }
    }

    pub fn add(&self, other: &Scalar) -> Scalar {
        self.binop(other, |a, b| a + b, |a, b| a + b)
    }

    pub fn sub(&self, other: &Scalar) -> Scalar {
        self.binop(other, |a, b| a - b, |a, b| a - b)
    }

    pub fn mul(&self, other: &Scalar) -> Scalar {
        self.binop(other, |a, b| a * b, |a, b| a * b)
    }

    /// Division. Panics on a zero rational divisor; float division follows
    /// IEEE semantics.
    pub fn div(&self, other: &Scalar) -> Scalar {
        self.binop(other, |a, b| a / b, |a, b| a / b)
    }

    pub fn neg(&self) -> Scalar {
        match self {
            Scalar::Rational(r) => Scalar::Rational(-r),
            Scalar::Float(x) => Scalar::Float(-x),
        }
    }

    /// Parse a scalar literal: an integer (`-3`), a fraction (`2/5`), or a
    /// decimal/scientific float (`0.75`, `1e-3`). Integers and fractions
    /// load as exact rationals.
    pub fn parse(text: &str) -> Result<Scalar, String> {
        let t = text.trim();
        if t.is_empty() {
            return Err("empty scalar literal".into());
        }
        if let Some((num, den)) = t.split_once('/') {
            let n: BigInt = num
                .trim()
                .parse()
                .map_err(|_| format!("bad numerator in '{t}'"))?;
            let d: BigInt = den
                .trim()
                .parse()
                .map_err(|_| format!("bad denominator in '{t}'"))?;
            if d.is_zero() {
                return Err(format!("zero denominator in '{t}'"));
            }
            return Ok(Scalar::Rational(BigRational::new(n, d)));
        }
        if let Ok(n) = t.parse::<BigInt>() {
            return Ok(Scalar::Rational(BigRational::from_integer(n)));
        }
        t.parse::<f64>()
            .map(Scalar::Float)
            .map_err(|_| format!("unrecognized scalar literal '{t}'"))
    }

    /// Read a scalar out of a JSON value: integer numbers load as exact
    /// rationals, `"p/q"` strings as fractions, other numbers as floats.
    pub fn from_json(value: &serde_json::Value) -> Result<Scalar, String> {
        match value {
            serde_json::Value::Number(n) => {
                if let Some(i) = n.as_i64() {
                    Ok(Scalar::from_int(i))
                } else if let Some(x) = n.as_f64() {
                    Ok(Scalar::Float(x))
                } else {
                    Err(format!("unrepresentable number {n}"))
                }
            }
            serde_json::Value::String(s) => Scalar::parse(s),
            other => Err(format!("expected number or \"p/q\" string, got {other}")),
        }
    }

    /// Render as JSON: integral rationals become JSON integers, other
    /// rationals `"p/q"` strings, floats JSON numbers.
    pub fn to_json(&self) -> serde_json::Value {
        match self {
            Scalar::Rational(r) => {
                if r.is_integer() {
                    match r.numer().to_i64() {
                        Some(i) => serde_json::json!(i),
                        None => serde_json::json!(r.numer().to_string()),
                    }
                } else {
                    serde_json::json!(format!("{}/{}", r.numer(), r.denom()))
                }
            }
            Scalar::Float(x) => serde_json::json!(x),
        }
    }
}

/// Mathematical equality across backends: a float equals a rational iff its
/// exact dyadic value does.
impl PartialEq for Scalar {
    fn eq(&self, other: &Self) -> bool {
        match (self, other) {
            (Scalar::Rational(a), Scalar::Rational(b)) => a == b,
            (Scalar::Float(a), Scalar::Float(b)) => a == b,
            (Scalar::Rational(a), Scalar::Float(b)) | (Scalar::Float(b), Scalar::Rational(a)) => {
                match BigRational::from_f64(*b) {
                    Some(bq) => *a == bq,
                    None => false,
                }
            }
        }
    }
}

impl PartialOrd for Scalar {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        match (self, other) {
            (Scalar::Rational(a), Scalar::Rational(b)) => a.partial_cmp(b),
            _ => self.to_f64().partial_cmp(&other.to_f64()),
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rational(r) => write!(f, "{r}"),
            Scalar::Float(x) => write!(f, "{x}"),
        }
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

fn rational_to_f64(r: &BigRational) -> f64 {
    r.to_f64().unwrap_or_else(|| {
        // Fall back through string formatting for magnitudes outside f64.
        if r.is_negative() {
            f64::NEG_INFINITY
        } else {
            f64::INFINITY
        }
    })
}

/// Exact square root of a nonnegative rational, when numerator and
/// denominator are both perfect squares.
fn rational_sqrt(r: &BigRational) -> Option<BigRational> {
    if r.is_negative() {
        return None;
    }
    let numer = r.numer().to_biguint()?;
    let denom = r.denom().to_biguint()?;
    let sn = perfect_sqrt(&numer)?;
    let sd = perfect_sqrt(&denom)?;
    Some(BigRational::new(sn.into(), sd.into()))
}

fn perfect_sqrt(n: &BigUint) -> Option<BigUint> {
    let root = n.sqrt();
    if &root * &root == *n {
        Some(root)
    } else {
        None
    }
}
