//! Benchmark objectives with domains, attribute tags and published minima.
//!
//! Functions are looked up by lowercase snake-case name through a
//! [`Registry`]. Evaluators are defined on all of R^n; the domain box only
//! describes where optimizers should search.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

use crate::error::{Error, Result};

pub mod defs;

/// Characteristic tags used for grouping and filtering.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Attribute {
    Multimodal,
    Unimodal,
    Separable,
    NonSeparable,
    Differentiable,
    NonDifferentiable,
    Continuous,
    NonContinuous,
    /// Part of the high-dimensional (20D/50D) experiment set.
    Scalable,
}

impl Attribute {
    pub const ALL: [Attribute; 9] = [
        Attribute::Multimodal,
        Attribute::Unimodal,
        Attribute::Separable,
        Attribute::NonSeparable,
        Attribute::Differentiable,
        Attribute::NonDifferentiable,
        Attribute::Continuous,
        Attribute::NonContinuous,
        Attribute::Scalable,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Attribute::Multimodal => "multimodal",
            Attribute::Unimodal => "unimodal",
            Attribute::Separable => "separable",
            Attribute::NonSeparable => "non-separable",
            Attribute::Differentiable => "differentiable",
            Attribute::NonDifferentiable => "non-differentiable",
            Attribute::Continuous => "continuous",
            Attribute::NonContinuous => "non-continuous",
            Attribute::Scalable => "scalable",
        }
    }
}

impl fmt::Display for Attribute {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Attribute {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Attribute::ALL
            .into_iter()
            .find(|a| a.as_str() == s)
            .ok_or_else(|| Error::config(format!("unknown attribute tag `{s}`")))
    }
}

/// Which input lengths a function accepts.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DimClass {
    /// Only defined on the plane.
    Fixed2D,
    /// Accepts any dimension `n >= 1`.
    NDimensional,
}

/// Published global optimum, possibly depending on the dimension.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Optimum {
    /// Two-dimensional function with explicit minimizers.
    Planar {
        value: f64,
        points: &'static [[f64; 2]],
    },
    /// Value `value + per_dim * n`, attained at the constant vector `coord`.
    Uniform {
        value: f64,
        per_dim: f64,
        coord: Option<f64>,
    },
    /// Cyclic pairwise expansion of a planar kernel. The plane value applies at
    /// `n = 2`; for other `n` the optimum is `n * value` at the constant vector
    /// `cyclic_coord` when the kernel minimizer is replicable, else unknown.
    Expanded {
        value: f64,
        points: &'static [[f64; 2]],
        cyclic_coord: Option<f64>,
    },
    /// Only qualitative information is published.
    Unknown,
}

/// Known optimum instantiated at a concrete dimension.
#[derive(Debug, Clone, PartialEq)]
pub struct KnownMinimum {
    pub value: Option<f64>,
    pub minimizers: Vec<Vec<f64>>,
}

/// Search box `[lower, upper]^dimension`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DomainBox {
    pub lower: f64,
    pub upper: f64,
    pub dimension: usize,
}

impl DomainBox {
    pub fn new(lower: f64, upper: f64, dimension: usize) -> Result<Self> {
        if !(lower.is_finite() && upper.is_finite() && lower < upper) {
            return Err(Error::config(format!(
                "bounds must satisfy lower < upper, got ({lower}, {upper})"
            )));
        }
        if dimension == 0 {
            return Err(Error::config("dimension must be at least 1"));
        }
        Ok(Self {
            lower,
            upper,
            dimension,
        })
    }

    pub fn width(&self) -> f64 {
        self.upper - self.lower
    }

    pub fn contains(&self, x: &[f64]) -> bool {
        x.len() == self.dimension && x.iter().all(|v| (self.lower..=self.upper).contains(v))
    }

    pub fn clip(&self, x: &mut [f64]) {
        for v in x {
            *v = v.clamp(self.lower, self.upper);
        }
    }
}

/// A named objective together with its metadata.
#[derive(Debug, Clone)]
pub struct BenchmarkFunction {
    name: &'static str,
    evaluator: fn(&[f64]) -> f64,
    domain: (f64, f64),
    dim_class: DimClass,
    attributes: &'static [Attribute],
    optimum: Optimum,
}

impl BenchmarkFunction {
    pub const fn new(
        name: &'static str,
        evaluator: fn(&[f64]) -> f64,
        domain: (f64, f64),
        dim_class: DimClass,
        attributes: &'static [Attribute],
        optimum: Optimum,
    ) -> Self {
        Self {
            name,
            evaluator,
            domain,
            dim_class,
            attributes,
            optimum,
        }
    }

    pub fn name(&self) -> &'static str {
        self.name
    }

    pub fn domain(&self) -> (f64, f64) {
        self.domain
    }

    pub fn dim_class(&self) -> DimClass {
        self.dim_class
    }

    pub fn attributes(&self) -> &'static [Attribute] {
        self.attributes
    }

    pub fn optimum(&self) -> Optimum {
        self.optimum
    }

    pub fn has(&self, attr: Attribute) -> bool {
        self.attributes.contains(&attr)
    }

    /// Member of the high-dimensional experiment set.
    pub fn is_scalable(&self) -> bool {
        self.has(Attribute::Scalable)
    }

    pub fn check_dimension(&self, dimension: usize) -> Result<()> {
        let ok = match self.dim_class {
            DimClass::Fixed2D => dimension == 2,
            DimClass::NDimensional => dimension >= 1,
        };
        if ok {
            Ok(())
        } else {
            Err(Error::Dimension {
                name: self.name.to_string(),
                got: dimension,
            })
        }
    }

    /// Search box for this function at `dimension`.
    pub fn domain_box(&self, dimension: usize) -> Result<DomainBox> {
        self.check_dimension(dimension)?;
        DomainBox::new(self.domain.0, self.domain.1, dimension)
    }

    /// Checked evaluation: validates the dimension and rejects non-finite
    /// coordinates.
    pub fn evaluate(&self, x: &[f64]) -> Result<f64> {
        self.check_dimension(x.len())?;
        if let Some((index, &value)) = x.iter().enumerate().find(|(_, v)| !v.is_finite()) {
            return Err(Error::NonFiniteInput { index, value });
        }
        Ok((self.evaluator)(x))
    }

    /// Raw evaluator for optimizer inner loops. Panics if a fixed-2D function
    /// receives fewer than two coordinates.
    pub fn objective(&self) -> fn(&[f64]) -> f64 {
        self.evaluator
    }

    pub fn known_minimum(&self, dimension: usize) -> Result<KnownMinimum> {
        self.check_dimension(dimension)?;
        let planar = |points: &[[f64; 2]]| points.iter().map(|p| p.to_vec()).collect();
        let km = match self.optimum {
            Optimum::Planar { value, points } => KnownMinimum {
                value: Some(value),
                minimizers: planar(points),
            },
            Optimum::Uniform {
                value,
                per_dim,
                coord,
            } => KnownMinimum {
                value: Some(value + per_dim * dimension as f64),
                minimizers: coord.map(|c| vec![c; dimension]).into_iter().collect(),
            },
            Optimum::Expanded { value, points, .. } if dimension == 2 => KnownMinimum {
                value: Some(value),
                minimizers: planar(points),
            },
            Optimum::Expanded {
                value,
                cyclic_coord: Some(c),
                ..
            } => KnownMinimum {
                value: Some(value * dimension as f64),
                minimizers: vec![vec![c; dimension]],
            },
            Optimum::Expanded { .. } | Optimum::Unknown => KnownMinimum {
                value: None,
                minimizers: Vec::new(),
            },
        };
        Ok(km)
    }
}

/// Immutable collection of benchmark functions, sorted by name.
#[derive(Debug, Clone)]
pub struct Registry {
    functions: Vec<BenchmarkFunction>,
}

impl Registry {
    /// The 24 shipped benchmark functions.
    pub fn standard() -> &'static Registry {
        static STANDARD: OnceLock<Registry> = OnceLock::new();
        STANDARD.get_or_init(|| Registry::from_functions(defs::standard()))
    }

    pub fn from_functions(mut functions: Vec<BenchmarkFunction>) -> Self {
        functions.sort_by_key(|f| f.name);
        Self { functions }
    }

    pub fn len(&self) -> usize {
        self.functions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.functions.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &BenchmarkFunction> {
        self.functions.iter()
    }

    pub fn get(&self, name: &str) -> Result<&BenchmarkFunction> {
        self.functions
            .binary_search_by(|f| f.name.cmp(name))
            .map(|i| &self.functions[i])
            .map_err(|_| Error::UnknownFunction(name.to_string()))
    }

    pub fn evaluate(&self, name: &str, x: &[f64]) -> Result<f64> {
        self.get(name)?.evaluate(x)
    }

    pub fn known_minimum(&self, name: &str, dimension: usize) -> Result<KnownMinimum> {
        self.get(name)?.known_minimum(dimension)
    }

    /// Name-sorted functions whose tags are a superset of `filter`. Tags that
    /// do not exist match nothing.
    pub fn list_functions<S: AsRef<str>>(&self, filter: &[S]) -> Vec<&BenchmarkFunction> {
        let wanted: BTreeSet<&str> = filter.iter().map(AsRef::as_ref).collect();
        self.functions
            .iter()
            .filter(|f| {
                wanted
                    .iter()
                    .all(|tag| f.attributes.iter().any(|a| a.as_str() == *tag))
            })
            .collect()
    }

    /// Evaluate every function at its published two-dimensional minimizers.
    pub fn validate(&self, tolerance: f64) -> ValidationReport {
        let entries = self
            .functions
            .iter()
            .map(|f| {
                let km = f
                    .known_minimum(2)
                    .expect("every registered function accepts dimension 2");
                let status = match (km.value, km.minimizers.is_empty()) {
                    (Some(value), false) => {
                        let (residual, point) = km
                            .minimizers
                            .iter()
                            .map(|m| (((f.evaluator)(m) - value).abs(), m.clone()))
                            .fold((f64::NEG_INFINITY, Vec::new()), |acc, cur| {
                                if cur.0 > acc.0 || cur.0.is_nan() {
                                    cur
                                } else {
                                    acc
                                }
                            });
                        ValidationStatus::Checked {
                            expected: value,
                            residual,
                            worst_point: point,
                        }
                    }
                    _ => ValidationStatus::ValueOnly,
                };
                ValidationEntry {
                    name: f.name,
                    status,
                }
            })
            .collect();
        ValidationReport { tolerance, entries }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum ValidationStatus {
    Checked {
        expected: f64,
        /// Largest `|f(m) - expected|` over the published minimizers.
        residual: f64,
        worst_point: Vec<f64>,
    },
    /// No minimizer published, nothing to evaluate.
    ValueOnly,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ValidationEntry {
    pub name: &'static str,
    pub status: ValidationStatus,
}

impl ValidationEntry {
    pub fn residual(&self) -> Option<f64> {
        match self.status {
            ValidationStatus::Checked { residual, .. } => Some(residual),
            ValidationStatus::ValueOnly => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ValidationReport {
    pub tolerance: f64,
    pub entries: Vec<ValidationEntry>,
}

impl ValidationReport {
    pub fn failures(&self) -> impl Iterator<Item = &ValidationEntry> {
        self.entries
            .iter()
            .filter(|e| e.residual().is_some_and(|r| !(r <= self.tolerance)))
    }

    pub fn passed(&self) -> bool {
        self.failures().next().is_none()
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{:<22} {:>14} {:>12}  status", "function", "expected", "residual")?;
        for e in &self.entries {
            match &e.status {
                ValidationStatus::Checked {
                    expected, residual, ..
                } => {
                    let verdict = if *residual <= self.tolerance { "ok" } else { "FAIL" };
                    writeln!(
                        f,
                        "{:<22} {:>14.6} {:>12.3e}  {verdict}",
                        e.name, expected, residual
                    )?;
                }
                ValidationStatus::ValueOnly => {
                    writeln!(f, "{:<22} {:>14} {:>12}  value-only, skipped", e.name, "-", "-")?;
                }
            }
        }
        write!(f, "tolerance {:e}", self.tolerance)
    }
}
