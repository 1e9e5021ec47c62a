//! `ncalg` — command-line front end for the noncommutative-algebra kernel.
//!
//! Every successful invocation prints one JSON document
//! `{"command": ..., "result": ...}` and exits 0. Domain errors print
//! `{"command": ..., "error": ...}` and exit 1; expression parse errors
//! exit 2.

use clap::{Parser, Subcommand, ValueEnum};
use ncalg::divide::{divide_linear, LinearDivisor};
use ncalg::poly::{expand_cube, expand_prod, expand_square, Monomial, NcPolynomial};
use ncalg::scalar::{Backend, Scalar};
use ncalg::solve::{
    newton_root_scan, shifted_square, sqrt_quaternion, sylvester_linear, RootSet, ScanConfig,
};
use ncalg::{AlgebraSpec, Element};
use serde_json::{json, Value};
use std::process::ExitCode;
use std::sync::Arc;

#[derive(Parser)]
#[command(name = "ncalg", version, about = "Quadratic equations and noncommutative polynomials over structure-constant algebras")]
struct Cli {
    /// Builtin algebra name (quaternion, complex) or path to a JSON spec.
    #[arg(long, global = true, default_value = "quaternion")]
    algebra: String,

    /// Scalar backend. Defaults to rational (exact); scan-roots runs on
    /// floats regardless.
    #[arg(long, global = true, value_enum, default_value_t = BackendArg::Rational)]
    backend: BackendArg,

    /// Seed for anything randomized (scanner starts, sphere samples).
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,

    /// Append N deterministic members to root-set output.
    #[arg(long, global = true, default_value_t = 0)]
    samples: usize,

    /// Residual tolerance for the scanner.
    #[arg(long, global = true, default_value_t = 1e-10)]
    tol: f64,

    /// Emit JSON (the default and only output mode).
    #[arg(long, global = true, default_value_t = true)]
    json: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum BackendArg {
    Rational,
    Float,
}

#[derive(Subcommand)]
enum Command {
    /// Multiply two elements.
    Mul {
        #[arg(allow_hyphen_values = true)]
        x: String,
        #[arg(allow_hyphen_values = true)]
        y: String,
    },
    /// Evaluate a polynomial at an element.
    Eval {
        #[arg(allow_hyphen_values = true)]
        poly: String,
        #[arg(allow_hyphen_values = true)]
        at: String,
    },
    /// Expand an identity template or an arbitrary polynomial expression.
    Expand {
        #[command(subcommand)]
        what: ExpandWhat,
    },
    /// Divide a polynomial by a linear divisor.
    Divide {
        #[arg(allow_hyphen_values = true)]
        poly: String,
        /// Linear divisor, e.g. "x-i" or "i*x+j".
        #[arg(long = "by", allow_hyphen_values = true)]
        by: String,
    },
    /// Solve x² = a with full root-set classification.
    SolveSqrt {
        #[arg(long, allow_hyphen_values = true)]
        a: String,
    },
    /// Solve (a+x)² = a², i.e. x² + ax + xa = 0.
    SolveShifted {
        #[arg(long, allow_hyphen_values = true)]
        a: String,
    },
    /// Solve the Sylvester equation ax − xa = b exactly.
    SolveSylvester {
        #[arg(long, allow_hyphen_values = true)]
        a: String,
        #[arg(long, allow_hyphen_values = true)]
        b: String,
    },
    /// Multistart Newton scan for roots of a polynomial.
    ScanRoots {
        #[arg(allow_hyphen_values = true)]
        poly: String,
        #[arg(long, default_value_t = 512)]
        starts: usize,
        #[arg(long = "box", default_value_t = 4.0)]
        search_box: f64,
        #[arg(long, default_value_t = 1e-6)]
        dedup: f64,
        #[arg(long, default_value_t = 50)]
        max_iters: usize,
    },
    /// Report whether the algebra carries a conjugation structure.
    CheckConjugation,
    /// Run the randomized identity suite and report pass/fail counts.
    VerifyIdentities {
        #[arg(long, default_value_t = 200)]
        count: usize,
    },
}

#[derive(Subcommand)]
enum ExpandWhat {
    /// (x+a)²
    Square {
        #[arg(allow_hyphen_values = true)]
        a: String,
    },
    /// (x+a)³
    Cube {
        #[arg(allow_hyphen_values = true)]
        a: String,
    },
    /// (x+a)(x+b)
    Prod {
        #[arg(allow_hyphen_values = true)]
        a: String,
        #[arg(allow_hyphen_values = true)]
        b: String,
    },
    /// Any polynomial expression, canonicalized to its monomial list.
    Expr {
        #[arg(allow_hyphen_values = true)]
        poly: String,
    },
}

enum CliError {
    /// Expression or document syntax: exit 2.
    Parse(String),
    /// Everything else: exit 1.
    Domain(String),
}

impl From<ncalg::ParseError> for CliError {
    fn from(e: ncalg::ParseError) -> Self {
        CliError::Parse(e.to_string())
    }
}

macro_rules! domain_from {
    ($($ty:ty),*) => {
        $(impl From<$ty> for CliError {
            fn from(e: $ty) -> Self {
                CliError::Domain(e.to_string())
            }
        })*
    };
}

domain_from!(
    ncalg::AlgebraError,
    ncalg::PolyError,
    ncalg::SolveError,
    ncalg::ConjugationError
);

fn scalar_json(s: &Scalar) -> Value {
    s.to_json()
}

fn element_json(e: &Element) -> Value {
    Value::Array(e.coords().iter().map(scalar_json).collect())
}

fn monomial_json(m: &Monomial) -> Value {
    Value::Array(m.coeffs().iter().map(element_json).collect())
}

fn poly_json(p: &NcPolynomial) -> Value {
    Value::Array(p.monomials().map(monomial_json).collect())
}

fn rootset_json(set: &RootSet, samples: usize, seed: u64) -> Value {
    let mut v = match set {
        RootSet::Empty => json!({"variant": "empty"}),
        RootSet::Finite(roots) => json!({
            "variant": "finite",
            "roots": roots.iter().map(|(r, m)| json!({
                "root": element_json(r),
                "multiplicity": m,
            })).collect::<Vec<_>>(),
        }),
        RootSet::Sphere { center, radius } => json!({
            "variant": "sphere",
            "center": element_json(center),
            "radius": scalar_json(radius),
        }),
        RootSet::Affine { particular, basis } => json!({
            "variant": "affine",
            "particular": element_json(particular),
            "basis": basis.iter().map(element_json).collect::<Vec<_>>(),
        }),
    };
    if samples > 0 {
        v["samples"] = Value::Array(
            set.samples(samples, seed)
                .iter()
                .map(element_json)
                .collect(),
        );
    }
    v
}

fn load_algebra(source: &str) -> Result<Arc<AlgebraSpec>, CliError> {
    match source {
        "quaternion" => Ok(AlgebraSpec::quaternion()),
        "complex" => Ok(AlgebraSpec::complex()),
        path => {
            let text = std::fs::read_to_string(path).map_err(|e| {
                CliError::Domain(format!("cannot read algebra spec '{path}': {e}"))
            })?;
            Ok(AlgebraSpec::from_json(&text)?)
        }
    }
}

fn run(cli: &Cli) -> Result<Value, CliError> {
    let algebra = load_algebra(&cli.algebra)?;
    let backend = match cli.backend {
        BackendArg::Rational => Backend::Rational,
        BackendArg::Float => Backend::Float,
    };
    let element = |text: &str| -> Result<Element, CliError> {
        let e = ncalg::parse_element(text, &algebra)?;
        Ok(match backend {
            Backend::Rational => e,
            Backend::Float => e.to_backend(Backend::Float),
        })
    };
    let polynomial = |text: &str| -> Result<NcPolynomial, CliError> {
        let p = ncalg::parse_polynomial(text, &algebra)?;
        Ok(match backend {
            Backend::Rational => p,
            Backend::Float => p.to_backend(Backend::Float),
        })
    };

    match &cli.command {
        Command::Mul { x, y } => {
            let product = element(x)?.mul(&element(y)?)?;
            Ok(element_json(&product.to_backend(backend)))
        }
        Command::Eval { poly, at } => {
            let value = polynomial(poly)?.eval(&element(at)?)?;
            Ok(element_json(&value.to_backend(backend)))
        }
        Command::Expand { what } => {
            let p = match what {
                ExpandWhat::Square { a } => expand_square(&element(a)?)?,
                ExpandWhat::Cube { a } => expand_cube(&element(a)?)?,
                ExpandWhat::Prod { a, b } => expand_prod(&element(a)?, &element(b)?)?,
                ExpandWhat::Expr { poly } => polynomial(poly)?,
            };
            let p = p.to_backend(backend);
            Ok(json!({"degree": p.degree(), "monomials": poly_json(&p)}))
        }
        Command::Divide { poly, by } => {
            let dividend = polynomial(poly)?;
            let divisor_poly = polynomial(by)?;
            let divisor = divisor_from_poly(&divisor_poly)?;
            let result = divide_linear(&dividend, &divisor)?;
            let recomposed = result.recompose(&divisor)?;
            let exact = recomposed.canonical_eq(&dividend)?;
            Ok(json!({
                "quotient": result.quotient.iter().map(|(prefix, right)| json!({
                    "prefix": monomial_json(prefix),
                    "right": element_json(right),
                })).collect::<Vec<_>>(),
                "remainder": element_json(&result.remainder),
                "recomposition_exact": exact,
            }))
        }
        Command::SolveSqrt { a } => {
            let set = sqrt_quaternion_or_conjugation(&algebra, &element(a)?)?;
            Ok(rootset_json(&set, cli.samples, cli.seed))
        }
        Command::SolveShifted { a } => {
            let set = shifted_square(&element(a)?)?;
            Ok(rootset_json(&set, cli.samples, cli.seed))
        }
        Command::SolveSylvester { a, b } => {
            let set = sylvester_linear(&element(a)?, &element(b)?)?;
            Ok(rootset_json(&set, cli.samples, cli.seed))
        }
        Command::ScanRoots {
            poly,
            starts,
            search_box,
            dedup,
            max_iters,
        } => {
            let p = polynomial(poly)?.to_backend(Backend::Float);
            let cfg = ScanConfig {
                starts: *starts,
                seed: cli.seed,
                newton_max_iters: *max_iters,
                residual_tol: cli.tol,
                dedup_radius: *dedup,
                search_box: *search_box,
            };
            let found = newton_root_scan(&p, &cfg)?;
            Ok(json!({
                "roots": found.iter().map(|(r, res)| json!({
                    "root": element_json(r),
                    "residual": res,
                })).collect::<Vec<_>>(),
            }))
        }
        Command::CheckConjugation => {
            let profile = ncalg::analyze(&algebra)?;
            Ok(json!({
                "is_unital": profile.is_unital,
                "is_conjugation_algebra": profile.is_conjugation_algebra,
                "violation": profile.violation.as_ref().map(|v| v.to_string()),
            }))
        }
        Command::VerifyIdentities { count } => {
            let reports = ncalg::run_identity_suite(&algebra, *count, cli.seed)?;
            let all_passed = reports.iter().all(|r| r.ok());
            let checks: Vec<Value> = reports
                .iter()
                .map(|r| {
                    json!({"name": r.name, "passed": r.passed, "failed": r.failed})
                })
                .collect();
            if !all_passed {
                return Err(CliError::Domain(
                    serde_json::to_string(&json!({"checks": checks})).unwrap_or_default(),
                ));
            }
            Ok(json!({
                "samples": count,
                "seed": cli.seed,
                "checks": checks,
                "all_passed": all_passed,
            }))
        }
    }
}

/// Route x² = a through the quaternion fast path or the general
/// conjugation-algebra solver.
fn sqrt_quaternion_or_conjugation(
    algebra: &Arc<AlgebraSpec>,
    a: &Element,
) -> Result<RootSet, CliError> {
    if algebra.is_quaternion() {
        Ok(sqrt_quaternion(a)?)
    } else {
        let profile = ncalg::analyze(algebra)?;
        Ok(ncalg::sqrt_conjugation(&profile, a)?)
    }
}

/// Interpret a degree-1 polynomial as a divisor: monic `x − c` when the
/// leading tensor is the unit pattern, general `p₁∘x + p₀` otherwise.
fn divisor_from_poly(p: &NcPolynomial) -> Result<LinearDivisor, CliError> {
    if p.degree() != 1 {
        return Err(CliError::Domain(
            "divisor must have degree exactly 1".into(),
        ));
    }
    let algebra = p.algebra();
    let n = algebra.dim();
    let p1 = p.canonical_tensor(1)?;
    let mut p0 = Element::zero(algebra);
    for m in p.monomials_of_degree(0) {
        p0 = &p0 + &m.coeffs()[0];
    }
    let mut is_monic = true;
    for s in 0..n {
        for t in 0..n {
            let expected = if s == 0 && t == 0 {
                Scalar::one()
            } else {
                Scalar::zero()
            };
            if *p1.get(&[s, t]) != expected {
                is_monic = false;
            }
        }
    }
    if is_monic && algebra.unit_index() == Some(0) {
        Ok(LinearDivisor::Monic { c: -&p0 })
    } else {
        Ok(LinearDivisor::General { p0, p1 })
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let name = command_name(&cli.command);
    match run(&cli) {
        Ok(result) => {
            println!("{}", json!({"command": name, "result": result}));
            ExitCode::SUCCESS
        }
        Err(CliError::Domain(msg)) => {
            println!("{}", json!({"command": name, "error": msg}));
            ExitCode::from(1)
        }
        Err(CliError::Parse(msg)) => {
            println!("{}", json!({"command": name, "error": msg}));
            ExitCode::from(2)
        }
    }
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Mul { .. } => "mul",
        Command::Eval { .. } => "eval",
        Command::Expand { .. } => "expand",
        Command::Divide { .. } => "divide",
        Command::SolveSqrt { .. } => "solve-sqrt",
        Command::SolveShifted { .. } => "solve-shifted",
        Command::SolveSylvester { .. } => "solve-sylvester",
        Command::ScanRoots { .. } => "scan-roots",
        Command::CheckConjugation => "check-conjugation",
        Command::VerifyIdentities { .. } => "verify-identities",
    }
}
