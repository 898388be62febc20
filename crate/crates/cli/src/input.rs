//! JSON input documents and catalog entries, resolved to a common workspace.
//!
//! ```json
//! {
//!   "ring": {"vars": ["x", "y", "z"], "relations": ["x*y - z^3 + 1"]},
//!   "derivations": [{"name": "d1", "images": {"y": "3*x*z^2", "z": "x^2"}}],
//!   "grading": {"modulus": 3, "weights": {"x": 1, "y": -1, "z": 2}},
//!   "generators": {"x": "x", "y": "y"},
//!   "points": [["1", "7", "2"]]
//! }
//! ```
//!
//! Omitted derivation images are zero. Point coordinates are integers or
//! `"p/q"` strings.

use std::collections::BTreeMap;
use std::path::Path;

use lndkit_core::catalog::{self, CatalogEntry};
use lndkit_core::flexgeo::Point;
use lndkit_core::invariants::GeneratorFamily;
use lndkit_core::lnd::{Derivation, WeightGrading};
use lndkit_core::{Algebra, AlgebraElement, FPAlgebra, Polynomial, Presentation, Rational, Vars};
use serde::Deserialize;
use serde_json::Value;

use crate::expr::{parse_expression, parse_rational};
use crate::CliError;

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InputDocument {
    pub ring: RingSpec,
    #[serde(default)]
    pub derivations: Vec<DerivationSpec>,
    pub grading: Option<GradingSpec>,
    pub generators: Option<serde_json::Map<String, Value>>,
    #[serde(default)]
    pub points: Vec<Vec<Value>>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RingSpec {
    pub vars: Vec<String>,
    #[serde(default)]
    pub relations: Vec<String>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DerivationSpec {
    pub name: String,
    #[serde(default)]
    pub images: BTreeMap<String, String>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GradingSpec {
    pub modulus: u32,
    pub weights: BTreeMap<String, i64>,
}

/// Everything a subcommand may draw on, whatever its source.
pub struct Workspace {
    /// `entry:<name>` or `file:<path>`.
    pub source: String,
    pub algebra: Algebra,
    pub derivations: Vec<Derivation>,
    pub grading: Option<WeightGrading>,
    pub generators: Option<GeneratorFamily>,
    pub points: Vec<Point>,
    pub warnings: Vec<String>,
    pub entry: Option<CatalogEntry>,
}

fn parse_in(what: &str, text: &str, vars: &Vars) -> Result<Polynomial, CliError> {
    parse_expression(text, vars).map_err(|e| CliError::Parse {
        context: what.to_string(),
        error: e,
    })
}

pub fn rational_value(v: &Value) -> Result<Rational, CliError> {
    let parsed = match v {
        Value::Number(n) => n.as_i64().map(|i| Rational::from_integer(i.into())),
        Value::String(s) => parse_rational(s),
        _ => None,
    };
    parsed.ok_or_else(|| CliError::Input(format!("not a rational number: {v}")))
}

impl Workspace {
    pub fn from_entry(name: &str, cap: u32) -> Result<Self, CliError> {
        let entry = catalog::lookup(name)?;
        let derivations = entry
            .derivations
            .iter()
            .map(|d| d.clone().certify(cap))
            .collect();
        Ok(Workspace {
            source: format!("entry:{}", entry.name),
            algebra: entry.algebra.clone(),
            derivations,
            grading: entry.grading.clone(),
            generators: entry.generators.clone(),
            points: Vec::new(),
            warnings: entry.warnings.clone(),
            entry: Some(entry),
        })
    }

    pub fn from_file(path: &Path, cap: u32) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Input(format!("cannot read {}: {e}", path.display())))?;
        let doc: InputDocument = serde_json::from_str(&text)
            .map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
        Self::from_document(doc, format!("file:{}", path.display()), cap)
    }

    pub fn from_document(doc: InputDocument, source: String, cap: u32) -> Result<Self, CliError> {
        let vars = Vars::new(&doc.ring.vars)?;
        let relations = doc
            .ring
            .relations
            .iter()
            .enumerate()
            .map(|(i, r)| parse_in(&format!("ring.relations[{i}]"), r, &vars))
            .collect::<Result<Vec<_>, _>>()?;
        let algebra = FPAlgebra::new(Presentation::new(vars.clone(), relations)?)?;

        let mut derivations = Vec::new();
        for spec in &doc.derivations {
            let mut pairs = Vec::new();
            for (var, text) in &spec.images {
                let p = parse_in(&format!("derivations.{}.images.{var}", spec.name), text, &vars)?;
                pairs.push((var.as_str(), p));
            }
            if derivations.iter().any(|d: &Derivation| d.name() == spec.name) {
                return Err(CliError::Input(format!("derivation {} defined twice", spec.name)));
            }
            derivations.push(Derivation::from_pairs(&algebra, spec.name.clone(), &pairs)?.certify(cap));
        }

        let grading = match &doc.grading {
            None => None,
            Some(g) => {
                let mut weights = vec![0i64; vars.len()];
                for (var, w) in &g.weights {
                    let i = vars
                        .index_of(var)
                        .ok_or_else(|| CliError::Input(format!("grading weight for unknown variable {var}")))?;
                    weights[i] = *w;
                }
                if g.weights.len() != vars.len() {
                    return Err(CliError::Input("grading must give a weight to every variable".into()));
                }
                Some(WeightGrading::new(g.modulus, &weights)?)
            }
        };

        let generators = match &doc.generators {
            None => None,
            Some(map) => {
                let mut fam = GeneratorFamily::new(&algebra);
                for (name, v) in map {
                    let text = v
                        .as_str()
                        .ok_or_else(|| CliError::Input(format!("generator {name} must be an expression string")))?;
                    let p = parse_in(&format!("generators.{name}"), text, &vars)?;
                    fam = fam.with(name.clone(), algebra.normal_form(&p)?);
                }
                Some(fam)
            }
        };

        let points = doc
            .points
            .iter()
            .map(|coords| {
                let coords = coords.iter().map(rational_value).collect::<Result<Vec<_>, _>>()?;
                Ok(Point::new(&algebra, coords)?)
            })
            .collect::<Result<Vec<_>, CliError>>()?;

        Ok(Workspace {
            source,
            algebra,
            derivations,
            grading,
            generators,
            points,
            warnings: Vec::new(),
            entry: None,
        })
    }

    pub fn derivation(&self, name: &str) -> Result<&Derivation, CliError> {
        self.derivations.iter().find(|d| d.name() == name).ok_or_else(|| {
            let known: Vec<&str> = self.derivations.iter().map(|d| d.name()).collect();
            CliError::Usage(format!("no derivation named {name}; known: {}", known.join(", ")))
        })
    }

    /// The named derivations, or all of them when `names` is empty.
    pub fn select(&self, names: &[String]) -> Result<Vec<Derivation>, CliError> {
        if names.is_empty() {
            return Ok(self.derivations.clone());
        }
        names.iter().map(|n| self.derivation(n).cloned()).collect()
    }

    /// Parses an expression over the workspace variables, or looks up a
    /// generator name prefixed with `@` (e.g. `@y`).
    pub fn element(&self, what: &str, text: &str) -> Result<AlgebraElement, CliError> {
        if let Some(name) = text.trim().strip_prefix('@') {
            return self
                .generators
                .as_ref()
                .and_then(|g| g.get(name))
                .cloned()
                .ok_or_else(|| CliError::Usage(format!("no generator named {name}")));
        }
        let p = parse_in(what, text, self.algebra.vars())?;
        Ok(self.algebra.normal_form(&p)?)
    }
}
