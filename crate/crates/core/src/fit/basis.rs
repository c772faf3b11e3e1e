//! Basis functions: eigenvalue functions of commuting operators evaluated on
//! a quartet.
//!
//! Built-in functions are monomials over the factors `n`, `l`, `j`, `m`,
//! `l(l+1)` and `j(j+1)`, written as e.g. `n`, `n^2`, `n*l`, `j(j+1)` or
//! `1` for the constant. All factors are dyadic rationals, so monomials of
//! moderate degree evaluate exactly in `f64`.

use std::collections::HashSet;
use std::fmt;
use std::sync::Arc;

use crate::quartet::Quartet;

use super::FitError;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Factor {
    N,
    L,
    J,
    M,
    /// `l(l+1)`
    LCasimir,
    /// `j(j+1)`
    JCasimir,
}

impl Factor {
    fn parse(token: &str) -> Option<Factor> {
        match token {
            "n" => Some(Factor::N),
            "l" => Some(Factor::L),
            "j" => Some(Factor::J),
            "m" => Some(Factor::M),
            "l(l+1)" => Some(Factor::LCasimir),
            "j(j+1)" => Some(Factor::JCasimir),
            _ => None,
        }
    }

    fn eval(&self, q: &Quartet) -> f64 {
        let l = q.l() as f64;
        match self {
            Factor::N => q.n() as f64,
            Factor::L => l,
            Factor::J => q.j(),
            Factor::M => q.m(),
            Factor::LCasimir => l * (l + 1.0),
            Factor::JCasimir => q.j() * (q.j() + 1.0),
        }
    }
}

type CustomFn = Arc<dyn Fn(&Quartet) -> f64 + Send + Sync>;

#[derive(Clone)]
enum Evaluator {
    /// Product of factors raised to powers; empty means the constant 1.
    Monomial(Vec<(Factor, u32)>),
    Custom(CustomFn),
}

#[derive(Clone)]
pub struct BasisFunction {
    name: String,
    evaluator: Evaluator,
}

impl fmt::Debug for BasisFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_tuple("BasisFunction").field(&self.name).finish()
    }
}

impl PartialEq for BasisFunction {
    fn eq(&self, other: &Self) -> bool {
        self.name == other.name
    }
}

impl BasisFunction {
    /// Parses a monomial such as `n*l`, `m^2` or `j(j+1)`.
    pub fn parse(expr: &str) -> Result<Self, FitError> {
        let name: String = expr.chars().filter(|c| !c.is_whitespace()).collect();
        let bad = |why: &str| FitError::InvalidBasis(format!("cannot parse basis function {expr:?}: {why}"));
        if name.is_empty() {
            return Err(bad("empty"));
        }
        let mut factors = Vec::new();
        if name != "1" {
            for token in name.split('*') {
                let (base, power) = match token.rsplit_once('^') {
                    Some((base, p)) => (base, p.parse::<u32>().map_err(|_| bad("power must be a non-negative integer"))?),
                    None => (token, 1),
                };
                let factor = Factor::parse(base).ok_or_else(|| bad("unknown factor"))?;
                factors.push((factor, power));
            }
        }
        Ok(BasisFunction { name, evaluator: Evaluator::Monomial(factors) })
    }

    /// A user-supplied evaluator. Models using one cannot be reloaded from JSON.
    pub fn custom(name: impl Into<String>, f: impl Fn(&Quartet) -> f64 + Send + Sync + 'static) -> Self {
        BasisFunction { name: name.into(), evaluator: Evaluator::Custom(Arc::new(f)) }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn is_custom(&self) -> bool {
        matches!(self.evaluator, Evaluator::Custom(_))
    }

    pub fn eval(&self, q: &Quartet) -> f64 {
        match &self.evaluator {
            Evaluator::Monomial(factors) => factors.iter().map(|(f, p)| f.eval(q).powi(*p as i32)).product(),
            Evaluator::Custom(f) => f(q),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct IntegrityBasis {
    functions: Vec<BasisFunction>,
}

/// Names of the default basis: the constant, then seven non-constant functions.
pub const DEFAULT_BASIS: [&str; 8] = ["1", "n", "l(l+1)", "j(j+1)", "m", "n^2", "m^2", "n*l"];

impl IntegrityBasis {
    pub fn new(functions: Vec<BasisFunction>) -> Result<Self, FitError> {
        if functions.is_empty() {
            return Err(FitError::InvalidBasis("a basis needs at least one function".into()));
        }
        let mut seen = HashSet::new();
        for f in &functions {
            if !seen.insert(f.name()) {
                return Err(FitError::InvalidBasis(format!("duplicate basis function name {:?}", f.name())));
            }
        }
        Ok(IntegrityBasis { functions })
    }

    /// Builds a basis from monomial expressions.
    pub fn parse<S: AsRef<str>>(exprs: &[S]) -> Result<Self, FitError> {
        let functions = exprs.iter().map(|e| BasisFunction::parse(e.as_ref())).collect::<Result<_, _>>()?;
        IntegrityBasis::new(functions)
    }

    /// Comma-separated list, e.g. `1,n,n^2`.
    pub fn parse_list(list: &str) -> Result<Self, FitError> {
        let exprs: Vec<&str> = list.split(',').map(str::trim).filter(|s| !s.is_empty()).collect();
        IntegrityBasis::parse(&exprs)
    }

    pub fn functions(&self) -> &[BasisFunction] {
        &self.functions
    }

    pub fn names(&self) -> Vec<String> {
        self.functions.iter().map(|f| f.name().to_string()).collect()
    }

    pub fn len(&self) -> usize {
        self.functions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.functions.is_empty()
    }

    pub fn evaluate(&self, q: &Quartet) -> Vec<f64> {
        self.functions.iter().map(|f| f.eval(q)).collect()
    }
}

impl Default for IntegrityBasis {
    fn default() -> Self {
        default_basis()
    }
}

/// `{1, n, l(l+1), j(j+1), m, n², m², n·l}`.
pub fn default_basis() -> IntegrityBasis {
    IntegrityBasis::parse(&DEFAULT_BASIS).expect("default basis parses")
}
