//! Finite-dimensional algebras given by structure constants, and exact
//! element arithmetic over them.
//!
//! An algebra is described by its dimension `n`, basis labels, and the
//! `n³` structure constants `C^p_{kl}` with `e_k e_l = Σ_p C^p_{kl} e_p`.
//! Constants are stored flat with index `(k, l, p)`, so
//! `constants[k*n*n + l*n + p] = C^p_{kl}`.

use crate::scalar::{Backend, Scalar};
use std::fmt;
use std::sync::Arc;

#[derive(Debug, Clone, PartialEq)]
pub enum AlgebraError {
    /// The constants array (or a coordinate vector) has the wrong shape.
    Shape { detail: String },
    /// `C^p_{uk}` or `C^p_{ku}` fails the unit axiom at the named indices.
    UnitAxiom { k: usize, p: usize, left_factor_is_unit: bool },
    /// Associativity fails on the basis triple `(i, j, k)` at coordinate `p`.
    NotAssociative { i: usize, j: usize, k: usize, p: usize },
    /// Two operands live over different algebras.
    AlgebraMismatch,
    DimMismatch { expected: usize, got: usize },
    NoUnit,
    BadIndex { index: usize, dim: usize },
    /// The JSON document is malformed.
    Document(String),
}

impl fmt::Display for AlgebraError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AlgebraError::Shape { detail } => write!(f, "shape mismatch: {detail}"),
            AlgebraError::UnitAxiom {
                k,
                p,
                left_factor_is_unit,
            } => {
                let side = if *left_factor_is_unit { "e_u e_k" } else { "e_k e_u" };
                write!(
                    f,
                    "unit axiom violated: coordinate p={p} of {side} with k={k} is not delta"
                )
            }
            AlgebraError::NotAssociative { i, j, k, p } => write!(
                f,
                "associativity violated on basis triple (i,j,k)=({i},{j},{k}) at coordinate p={p}"
            ),
            AlgebraError::AlgebraMismatch => write!(f, "operands belong to different algebras"),
            AlgebraError::DimMismatch { expected, got } => {
                write!(f, "expected {expected} coordinates, got {got}")
            }
            AlgebraError::NoUnit => write!(f, "algebra does not declare a unit"),
            AlgebraError::BadIndex { index, dim } => {
                write!(f, "basis index {index} out of range for dimension {dim}")
            }
            AlgebraError::Document(msg) => write!(f, "invalid algebra document: {msg}"),
        }
    }
}

impl std::error::Error for AlgebraError {}

/// A finite-dimensional algebra presented by structure constants.
#[derive(Debug, Clone)]
pub struct AlgebraSpec {
    name: String,
    dim: usize,
    basis: Vec<String>,
    unit_index: Option<usize>,
    associative: bool,
    constants: Vec<Scalar>,
}

impl AlgebraSpec {
    /// The quaternion algebra H over the rationals: basis 1, i, j, k with
    /// i² = j² = k² = −1, ij = k = −ji, jk = i = −kj, ki = j = −ik.
    pub fn quaternion() -> Arc<AlgebraSpec> {
        let n = 4;
        let mut c = vec![Scalar::zero(); n * n * n];
        let mut put = |k: usize, l: usize, p: usize, v: i64| {
            c[k * n * n + l * n + p] = Scalar::from_int(v);
        };
        for t in 0..n {
            put(0, t, t, 1);
            if t != 0 {
                put(t, 0, t, 1);
            }
        }
        put(1, 1, 0, -1);
        put(1, 2, 3, 1);
        put(1, 3, 2, -1);
        put(2, 1, 3, -1);
        put(2, 2, 0, -1);
        put(2, 3, 1, 1);
        put(3, 1, 2, 1);
        put(3, 2, 1, -1);
        put(3, 3, 0, -1);
        Arc::new(AlgebraSpec {
            name: "quaternion".into(),
            dim: n,
            basis: vec!["1".into(), "i".into(), "j".into(), "k".into()],
            unit_index: Some(0),
            associative: true,
            constants: c,
        })
    }

    /// The complex field C as a 2-dimensional real algebra: basis 1, i with
    /// i² = −1.
    pub fn complex() -> Arc<AlgebraSpec> {
        let n = 2;
        let mut c = vec![Scalar::zero(); n * n * n];
        let mut put = |k: usize, l: usize, p: usize, v: i64| {
            c[k * n * n + l * n + p] = Scalar::from_int(v);
        };
        put(0, 0, 0, 1);
        put(0, 1, 1, 1);
        put(1, 0, 1, 1);
        put(1, 1, 0, -1);
        Arc::new(AlgebraSpec {
            name: "complex".into(),
            dim: n,
            basis: vec!["1".into(), "i".into()],
            unit_index: Some(0),
            associative: true,
            constants: c,
        })
    }

    /// Build a spec from raw parts, running the unit-axiom check when a unit
    /// is declared and the exhaustive associativity check when flagged.
    pub fn new(
        name: String,
        dim: usize,
        basis: Vec<String>,
        unit_index: Option<usize>,
        associative: bool,
        constants: Vec<Scalar>,
    ) -> Result<Arc<AlgebraSpec>, AlgebraError> {
        if dim == 0 {
            return Err(AlgebraError::Shape {
                detail: "dimension must be positive".into(),
            });
        }
        if basis.len() != dim {
            return Err(AlgebraError::Shape {
                detail: format!("{} basis labels for dimension {dim}", basis.len()),
            });
        }
        if constants.len() != dim * dim * dim {
            return Err(AlgebraError::Shape {
                detail: format!(
                    "constants hold {} scalars, expected {}^3 = {}",
                    constants.len(),
                    dim,
                    dim * dim * dim
                ),
            });
        }
        if let Some(u) = unit_index {
            if u != 0 {
                return Err(AlgebraError::Shape {
                    detail: format!("unit index must be 0 when declared, got {u}"),
                });
            }
        }
        let spec = AlgebraSpec {
            name,
            dim,
            basis,
            unit_index,
            associative,
            constants,
        };
        if spec.unit_index.is_some() {
            spec.check_unit_axioms()?;
        }
        if spec.associative {
            spec.check_associativity()?;
        }
        Ok(Arc::new(spec))
    }

    /// Parse and validate the JSON algebra document
    /// `{"name", "dim", "basis", "unit", "associative", "constants"}` with
    /// `constants[k][l][p] = C^p_{kl}`.
    pub fn from_json(text: &str) -> Result<Arc<AlgebraSpec>, AlgebraError> {
        let doc: serde_json::Value =
            serde_json::from_str(text).map_err(|e| AlgebraError::Document(e.to_string()))?;
        let obj = doc
            .as_object()
            .ok_or_else(|| AlgebraError::Document("top level must be an object".into()))?;

        let name = obj
            .get("name")
            .and_then(|v| v.as_str())
            .unwrap_or("unnamed")
            .to_string();
        let dim = obj
            .get("dim")
            .and_then(|v| v.as_u64())
            .ok_or_else(|| AlgebraError::Document("missing positive integer field 'dim'".into()))?
            as usize;
        let basis: Vec<String> = match obj.get("basis") {
            Some(serde_json::Value::Array(items)) => items
                .iter()
                .map(|v| {
                    v.as_str()
                        .map(str::to_string)
                        .ok_or_else(|| AlgebraError::Document("basis labels must be strings".into()))
                })
                .collect::<Result<_, _>>()?,
            None => (0..dim).map(|i| format!("e{i}")).collect(),
            Some(_) => {
                return Err(AlgebraError::Document("'basis' must be an array".into()));
            }
        };
        let unit_index = match obj.get("unit") {
            None | Some(serde_json::Value::Null) => None,
            Some(v) => Some(v.as_u64().ok_or_else(|| {
                AlgebraError::Document("'unit' must be an integer or null".into())
            })? as usize),
        };
        let associative = obj
            .get("associative")
            .and_then(|v| v.as_bool())
            .unwrap_or(false);

        let outer = obj
            .get("constants")
            .and_then(|v| v.as_array())
            .ok_or_else(|| AlgebraError::Document("missing 'constants' array".into()))?;
        if outer.len() != dim {
            return Err(AlgebraError::Shape {
                detail: format!("constants has {} rows, expected dim {}", outer.len(), dim),
            });
        }
        let mut constants = vec![Scalar::zero(); dim * dim * dim];
        for (k, row) in outer.iter().enumerate() {
            let row = row.as_array().ok_or_else(|| AlgebraError::Shape {
                detail: format!("constants[{k}] is not an array"),
            })?;
            if row.len() != dim {
                return Err(AlgebraError::Shape {
                    detail: format!("constants[{k}] has {} entries, expected {dim}", row.len()),
                });
            }
            for (l, cell) in row.iter().enumerate() {
                let cell = cell.as_array().ok_or_else(|| AlgebraError::Shape {
                    detail: format!("constants[{k}][{l}] is not an array"),
                })?;
                if cell.len() != dim {
                    return Err(AlgebraError::Shape {
                        detail: format!(
                            "constants[{k}][{l}] has {} entries, expected {dim}",
                            cell.len()
                        ),
                    });
                }
                for (p, v) in cell.iter().enumerate() {
                    constants[k * dim * dim + l * dim + p] = Scalar::from_json(v)
                        .map_err(|e| AlgebraError::Document(format!(
                            "constants[{k}][{l}][{p}]: {e}"
                        )))?;
                }
            }
        }

        AlgebraSpec::new(name, dim, basis, unit_index, associative, constants)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn basis_labels(&self) -> &[String] {
        &self.basis
    }

    pub fn unit_index(&self) -> Option<usize> {
        self.unit_index
    }

    pub fn is_associative_flagged(&self) -> bool {
        self.associative
    }

    /// `C^p_{kl}`
    pub fn constant(&self, k: usize, l: usize, p: usize) -> &Scalar {
        &self.constants[k * self.dim * self.dim + l * self.dim + p]
    }

    /// Verify `C^p_{uk} = C^p_{ku} = δ^p_k` for the declared unit.
    pub fn check_unit_axioms(&self) -> Result<(), AlgebraError> {
        let u = self.unit_index.ok_or(AlgebraError::NoUnit)?;
        for k in 0..self.dim {
            for p in 0..self.dim {
                let delta = if p == k { Scalar::one() } else { Scalar::zero() };
                if *self.constant(u, k, p) != delta {
                    return Err(AlgebraError::UnitAxiom {
                        k,
                        p,
                        left_factor_is_unit: true,
                    });
                }
                if *self.constant(k, u, p) != delta {
                    return Err(AlgebraError::UnitAxiom {
                        k,
                        p,
                        left_factor_is_unit: false,
                    });
                }
            }
        }
        Ok(())
    }

    /// Exhaustive associativity over all basis triples:
    /// `Σ_q C^q_{ij} C^p_{qk} = Σ_q C^q_{jk} C^p_{iq}` for all `i,j,k,p`.
    pub fn check_associativity(&self) -> Result<(), AlgebraError> {
        let n = self.dim;
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    for p in 0..n {
                        let mut lhs = Scalar::zero();
                        let mut rhs = Scalar::zero();
                        for q in 0..n {
                            lhs = lhs.add(&self.constant(i, j, q).mul(self.constant(q, k, p)));
                            rhs = rhs.add(&self.constant(j, k, q).mul(self.constant(i, q, p)));
                        }
                        if lhs != rhs {
                            return Err(AlgebraError::NotAssociative { i, j, k, p });
                        }
                    }
                }
            }
        }
        Ok(())
    }

    /// Structural identity: same dimension, unit, and constants. Elements
    /// over structurally identical specs are freely combinable.
    pub fn same_structure(&self, other: &AlgebraSpec) -> bool {
        self.dim == other.dim
            && self.unit_index == other.unit_index
            && self.constants == other.constants
    }

    pub fn is_quaternion(&self) -> bool {
        self.same_structure(&AlgebraSpec::quaternion())
    }

    pub fn is_complex(&self) -> bool {
        self.same_structure(&AlgebraSpec::complex())
    }

    /// Coordinates of the product: `(xy)^p = Σ_{k,l} C^p_{kl} x^k y^l`.
    pub fn mul_coords(&self, x: &[Scalar], y: &[Scalar]) -> Vec<Scalar> {
        let n = self.dim;
        let mut out = vec![Scalar::zero(); n];
        for k in 0..n {
            if x[k].is_zero() {
                continue;
            }
            for l in 0..n {
                if y[l].is_zero() {
                    continue;
                }
                let xy = x[k].mul(&y[l]);
                for p in 0..n {
                    let c = self.constant(k, l, p);
                    if !c.is_zero() {
                        out[p] = out[p].add(&c.mul(&xy));
                    }
                }
            }
        }
        out
    }

    /// Structure constants converted to the given backend (for the float
    /// scanner fast path).
    pub fn constants_to_f64(&self) -> Vec<f64> {
        self.constants.iter().map(Scalar::to_f64).collect()
    }
}

/// An element of an algebra: a coordinate vector over its basis.
#[derive(Clone)]
pub struct Element {
    algebra: Arc<AlgebraSpec>,
    coords: Vec<Scalar>,
}

impl Element {
    pub fn new(algebra: &Arc<AlgebraSpec>, coords: Vec<Scalar>) -> Result<Element, AlgebraError> {
        if coords.len() != algebra.dim() {
            return Err(AlgebraError::DimMismatch {
                expected: algebra.dim(),
                got: coords.len(),
            });
        }
        Ok(Element {
            algebra: Arc::clone(algebra),
            coords,
        })
    }

    pub fn zero(algebra: &Arc<AlgebraSpec>) -> Element {
        Element {
            algebra: Arc::clone(algebra),
            coords: vec![Scalar::zero(); algebra.dim()],
        }
    }

    pub fn basis(algebra: &Arc<AlgebraSpec>, index: usize) -> Result<Element, AlgebraError> {
        if index >= algebra.dim() {
            return Err(AlgebraError::BadIndex {
                index,
                dim: algebra.dim(),
            });
        }
        let mut coords = vec![Scalar::zero(); algebra.dim()];
        coords[index] = Scalar::one();
        Ok(Element {
            algebra: Arc::clone(algebra),
            coords,
        })
    }

    /// The unit element; errors when the algebra declares no unit.
    pub fn unit(algebra: &Arc<AlgebraSpec>) -> Result<Element, AlgebraError> {
        let u = algebra.unit_index().ok_or(AlgebraError::NoUnit)?;
        Element::basis(algebra, u)
    }

    /// The scalar `s` embedded as `s·e_unit`.
    pub fn from_scalar(algebra: &Arc<AlgebraSpec>, s: Scalar) -> Result<Element, AlgebraError> {
        let u = algebra.unit_index().ok_or(AlgebraError::NoUnit)?;
        let mut coords = vec![Scalar::zero(); algebra.dim()];
        coords[u] = s;
        Ok(Element {
            algebra: Arc::clone(algebra),
            coords,
        })
    }

    pub fn from_ints(algebra: &Arc<AlgebraSpec>, coords: &[i64]) -> Result<Element, AlgebraError> {
        Element::new(algebra, coords.iter().map(|&c| Scalar::from_int(c)).collect())
    }

    pub fn algebra(&self) -> &Arc<AlgebraSpec> {
        &self.algebra
    }

    pub fn coords(&self) -> &[Scalar] {
        &self.coords
    }

    pub fn coord(&self, i: usize) -> &Scalar {
        &self.coords[i]
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Scalar::is_zero)
    }

    pub fn same_algebra(&self, other: &Element) -> bool {
        Arc::ptr_eq(&self.algebra, &other.algebra)
            || self.algebra.same_structure(&other.algebra)
    }

    fn require_same_algebra(&self, other: &Element) -> Result<(), AlgebraError> {
        if self.same_algebra(other) {
            Ok(())
        } else {
            Err(AlgebraError::AlgebraMismatch)
        }
    }

    /// Product via the structure constants.
    pub fn mul(&self, other: &Element) -> Result<Element, AlgebraError> {
        self.require_same_algebra(other)?;
        Ok(Element {
            algebra: Arc::clone(&self.algebra),
            coords: self.algebra.mul_coords(&self.coords, &other.coords),
        })
    }

    /// Coordinatewise weighted sum of elements over one algebra.
    pub fn linear_combine(terms: &[(Scalar, &Element)]) -> Result<Element, AlgebraError> {
        let Some((_, first)) = terms.first() else {
            return Err(AlgebraError::Shape {
                detail: "linear_combine needs at least one term".into(),
            });
        };
        let algebra = Arc::clone(first.algebra());
        let mut coords = vec![Scalar::zero(); algebra.dim()];
        for (weight, elem) in terms {
            first.require_same_algebra(elem)?;
            for (acc, c) in coords.iter_mut().zip(elem.coords()) {
                *acc = acc.add(&weight.mul(c));
            }
        }
        Ok(Element { algebra, coords })
    }

    /// `[x, y] = xy − yx`
    pub fn commutator(&self, other: &Element) -> Result<Element, AlgebraError> {
        Ok(&self.mul(other)? - &other.mul(self)?)
    }

    /// `(x, y, z) = (xy)z − x(yz)`
    pub fn associator(&self, y: &Element, z: &Element) -> Result<Element, AlgebraError> {
        Ok(&self.mul(y)?.mul(z)? - &self.mul(&y.mul(z)?)?)
    }

    pub fn scale(&self, s: &Scalar) -> Element {
        Element {
            algebra: Arc::clone(&self.algebra),
            coords: self.coords.iter().map(|c| s.mul(c)).collect(),
        }
    }

    pub fn to_backend(&self, backend: Backend) -> Element {
        Element {
            algebra: Arc::clone(&self.algebra),
            coords: self.coords.iter().map(|c| c.to_backend(backend)).collect(),
        }
    }

    /// Euclidean norm of the coordinate vector in `f64`.
    pub fn coord_norm_f64(&self) -> f64 {
        self.coords
            .iter()
            .map(|c| {
                let x = c.to_f64();
                x * x
            })
            .sum::<f64>()
            .sqrt()
    }

    pub fn approx_eq(&self, other: &Element, tol: f64) -> bool {
        self.same_algebra(other)
            && self
                .coords
                .iter()
                .zip(other.coords())
                .all(|(a, b)| a.approx_eq(b, tol))
    }
}

impl PartialEq for Element {
    fn eq(&self, other: &Self) -> bool {
        self.same_algebra(other) && self.coords == other.coords
    }
}

impl fmt::Debug for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Renders as a basis word, e.g. `1+2i-3k`; the zero element prints `0`.
impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let unit = self.algebra.unit_index();
        let mut printed = false;
        for (idx, c) in self.coords.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let label = &self.algebra.basis_labels()[idx];
            let is_unit_coord = unit == Some(idx);
            if printed && !c.is_negative() {
                write!(f, "+")?;
            }
            if is_unit_coord {
                write!(f, "{c}")?;
            } else if c.is_one() {
                write!(f, "{label}")?;
            } else if *c == Scalar::from_int(-1) {
                write!(f, "-{label}")?;
            } else {
                write!(f, "{c}{label}")?;
            }
            printed = true;
        }
        if !printed {
            write!(f, "0")?;
        }
        Ok(())
    }
}

macro_rules! element_binop {
    ($trait:ident, $method:ident, $op:ident) => {
        impl std::ops::$trait for &Element {
            type Output = Element;
            fn $method(self, rhs: &Element) -> Element {
                assert!(self.same_algebra(rhs), "elements over different algebras");
                Element {
                    algebra: Arc::clone(&self.algebra),
                    coords: self
                        .coords
                        .iter()
                        .zip(rhs.coords())
                        .map(|(a, b)| a.$op(b))
                        .collect(),
                }
            }
        }
    };
}

element_binop!(Add, add, add);
element_binop!(Sub, sub, sub);

impl std::ops::Neg for &Element {
    type Output = Element;
    fn neg(self) -> Element {
        Element {
            algebra: Arc::clone(&self.algebra),
            coords: self.coords.iter().map(Scalar::neg).collect(),
        }
    }
}
