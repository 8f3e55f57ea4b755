//! The manifest document: a JSON object whose expression values are strings
//! in the expression grammar.
//!
//! ```json
//! {
//!   "dimension": 3,
//!   "coordinates": ["x1", "x2", "x3"],
//!   "frame": [["exp(-x3)", "0", "0"], ["0", "exp(-x3)", "0"], ["0", "0", "1"]],
//!   "contact": { "phi": [["0", "1", "0"], ["-1", "0", "0"], ["0", "0", "0"]], "reeb": 3, "n": 1 },
//!   "fields": { "V": { "coordinate": ["x1", "x2", "1"] } },
//!   "soliton": { "preset": "STAR_KAPPA_RBS_1_9", "field": "V", "kappa": "symbolic", "theta": "1/2" },
//!   "checks": ["3.1", "4.1"]
//! }
//! ```
//!
//! `frame[i][a]` is the coefficient of `d/dx_a` in `E_i`. `phi[j]` lists the
//! frame components of `phi(E_j)`. `reeb` is a 1-based frame index. A field
//! is either a plain list of frame components or `{"coordinate": [...]}`.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::contact::ContactError;
use crate::frame::GeometryError;
use crate::scalar::Scalar;
use crate::soliton::{ParamValue, SolitonConvention, SolitonError, THEOREM_IDS};
use crate::symscalar::{parse_expr, SymError, SymbolTable};
use crate::{AlmostContactData, Expr, FrameManifold, Rational, SolitonInstance};

#[derive(Debug, Error)]
pub enum ManifestError {
    #[error("syntax error at line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("{path}: {source}")]
    Expression { path: String, source: SymError },
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("unknown preset {0}")]
    UnknownPreset(String),
    #[error("unknown check {0}")]
    UnknownCheck(String),
    #[error("unknown field {0}")]
    UnknownField(String),
    #[error("frame is not invertible")]
    NonInvertibleFrame,
    #[error("{0}")]
    Invalid(String),
    #[error(transparent)]
    Geometry(GeometryError),
    #[error(transparent)]
    Contact(#[from] ContactError),
    #[error(transparent)]
    Soliton(#[from] SolitonError),
}

impl From<GeometryError> for ManifestError {
    fn from(e: GeometryError) -> Self {
        match e {
            GeometryError::NonInvertibleFrame => ManifestError::NonInvertibleFrame,
            GeometryError::DimensionMismatch(s) => ManifestError::DimensionMismatch(s),
            other => ManifestError::Geometry(other),
        }
    }
}

#[derive(Debug, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
struct RawManifest {
    dimension: usize,
    coordinates: Vec<String>,
    frame: Vec<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    metric: Option<Vec<Vec<RawNumber>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    inverse_frame: Option<Vec<Vec<String>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    contact: Option<RawContact>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    fields: BTreeMap<String, RawField>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    soliton: Option<RawSoliton>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    checks: Vec<String>,
}

#[derive(Debug, Deserialize, Serialize)]
#[serde(untagged)]
enum RawNumber {
    Int(i64),
    Text(String),
}

#[derive(Debug, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
struct RawContact {
    phi: Vec<Vec<String>>,
    reeb: usize,
    n: usize,
}

#[derive(Debug, Deserialize, Serialize)]
#[serde(untagged)]
enum RawField {
    Frame(Vec<String>),
    Coordinate(RawCoordinate),
}

#[derive(Debug, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
struct RawCoordinate {
    coordinate: Vec<String>,
}

#[derive(Debug, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
struct RawSoliton {
    preset: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    field: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    kappa: Option<RawNumber>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    theta: Option<RawNumber>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    omega: Option<RawNumber>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    rho: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    potential: Option<String>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Basis {
    Frame,
    Coordinate,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FieldSpec {
    pub basis: Basis,
    pub components: Vec<Expr>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ContactSpec {
    pub phi: Vec<Vec<Expr>>,
    /// 1-based frame index of the Reeb field.
    pub reeb: usize,
    pub n: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SolitonSpec {
    pub preset: String,
    pub field: Option<String>,
    pub kappa: Option<ParamValue<Rational>>,
    pub theta: ParamValue<Rational>,
    pub omega: ParamValue<Rational>,
    pub rho: Option<String>,
    pub potential: Option<Expr>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Manifest {
    pub dimension: usize,
    pub coordinates: Vec<String>,
    pub frame: Vec<Vec<Expr>>,
    pub metric: Option<Vec<Vec<Rational>>>,
    pub inverse_frame: Option<Vec<Vec<Expr>>>,
    pub contact: Option<ContactSpec>,
    pub fields: BTreeMap<String, FieldSpec>,
    pub soliton: Option<SolitonSpec>,
    pub checks: Vec<String>,
}

/// A manifest turned into engine objects.
#[derive(Clone, Debug)]
pub struct Loaded {
    pub manifold: FrameManifold,
    pub contact: Option<AlmostContactData>,
    /// Frame components of every named field.
    pub fields: BTreeMap<String, Vec<Expr>>,
}

fn parse_param(raw: &Option<RawNumber>, path: &str) -> Result<ParamValue<Rational>, ManifestError> {
    match raw {
        None => Ok(ParamValue::Symbolic),
        Some(RawNumber::Int(n)) => Ok(ParamValue::Value(Rational::from_int(*n))),
        Some(RawNumber::Text(s)) if s == "symbolic" => Ok(ParamValue::Symbolic),
        Some(RawNumber::Text(s)) => Rational::parse_literal(s.trim())
            .map(ParamValue::Value)
            .ok_or_else(|| ManifestError::Invalid(format!("{path}: expected a rational or \"symbolic\", got {s:?}"))),
    }
}

fn param_text(p: &ParamValue<Rational>) -> RawNumber {
    match p {
        ParamValue::Value(c) => RawNumber::Text(c.to_string()),
        ParamValue::Symbolic => RawNumber::Text("symbolic".into()),
    }
}

struct Ctx<'a> {
    table: &'a SymbolTable,
}

impl Ctx<'_> {
    fn expr(&self, text: &str, path: impl FnOnce() -> String) -> Result<Expr, ManifestError> {
        parse_expr(text, self.table).map_err(|source| ManifestError::Expression {
            path: path(),
            source,
        })
    }

    fn vector(&self, row: &[String], dim: usize, path: &str) -> Result<Vec<Expr>, ManifestError> {
        if row.len() != dim {
            return Err(ManifestError::DimensionMismatch(format!(
                "{path} has {} entries, expected {dim}",
                row.len()
            )));
        }
        row.iter()
            .enumerate()
            .map(|(i, s)| self.expr(s, || format!("{path}[{i}]")))
            .collect()
    }

    fn matrix(&self, rows: &[Vec<String>], dim: usize, path: &str) -> Result<Vec<Vec<Expr>>, ManifestError> {
        if rows.len() != dim {
            return Err(ManifestError::DimensionMismatch(format!(
                "{path} has {} rows, expected {dim}",
                rows.len()
            )));
        }
        rows.iter()
            .enumerate()
            .map(|(i, r)| self.vector(r, dim, &format!("{path}[{i}]")))
            .collect()
    }
}

fn strings(rows: &[Vec<Expr>]) -> Vec<Vec<String>> {
    rows.iter().map(|r| r.iter().map(Expr::to_string).collect()).collect()
}

impl Manifest {
    pub fn parse(text: &str) -> Result<Self, ManifestError> {
        let raw: RawManifest = serde_json::from_str(text).map_err(|e| ManifestError::Syntax {
            line: e.line(),
            column: e.column(),
            message: e.to_string(),
        })?;
        let m = Self::from_raw(raw)?;
        m.load()?;
        Ok(m)
    }

    fn from_raw(raw: RawManifest) -> Result<Self, ManifestError> {
        let dim = raw.dimension;
        if raw.coordinates.len() != dim {
            return Err(ManifestError::DimensionMismatch(format!(
                "{} coordinates for dimension {dim}",
                raw.coordinates.len()
            )));
        }
        let table = SymbolTable::new(&raw.coordinates);
        let ctx = Ctx { table: &table };
        let frame = ctx.matrix(&raw.frame, dim, "frame")?;
        let inverse_frame = raw
            .inverse_frame
            .as_ref()
            .map(|m| ctx.matrix(m, dim, "inverse_frame"))
            .transpose()?;
        let metric = raw
            .metric
            .as_ref()
            .map(|rows| {
                if rows.len() != dim || rows.iter().any(|r| r.len() != dim) {
                    return Err(ManifestError::DimensionMismatch(format!("metric must be {dim}x{dim}")));
                }
                rows.iter()
                    .enumerate()
                    .map(|(i, r)| {
                        r.iter()
                            .enumerate()
                            .map(|(j, x)| match x {
                                RawNumber::Int(n) => Ok(Rational::from_int(*n)),
                                RawNumber::Text(s) => Rational::parse_literal(s.trim()).ok_or_else(|| {
                                    ManifestError::Invalid(format!("metric[{i}][{j}]: not a rational: {s:?}"))
                                }),
                            })
                            .collect()
                    })
                    .collect()
            })
            .transpose()?;
        let contact = raw
            .contact
            .as_ref()
            .map(|c| {
                if c.reeb == 0 || c.reeb > dim {
                    return Err(ManifestError::Invalid(format!(
                        "contact.reeb must be a frame index in 1..={dim}"
                    )));
                }
                Ok(ContactSpec {
                    phi: ctx.matrix(&c.phi, dim, "contact.phi")?,
                    reeb: c.reeb,
                    n: c.n,
                })
            })
            .transpose()?;
        let fields = raw
            .fields
            .iter()
            .map(|(name, f)| {
                let path = format!("fields.{name}");
                let spec = match f {
                    RawField::Frame(v) => FieldSpec {
                        basis: Basis::Frame,
                        components: ctx.vector(v, dim, &path)?,
                    },
                    RawField::Coordinate(RawCoordinate { coordinate }) => FieldSpec {
                        basis: Basis::Coordinate,
                        components: ctx.vector(coordinate, dim, &format!("{path}.coordinate"))?,
                    },
                };
                Ok((name.clone(), spec))
            })
            .collect::<Result<BTreeMap<_, _>, ManifestError>>()?;
        let soliton = raw
            .soliton
            .as_ref()
            .map(|s| {
                let conv = SolitonConvention::<Rational>::preset(&s.preset)
                    .ok_or_else(|| ManifestError::UnknownPreset(s.preset.clone()))?;
                for name in s.field.iter().chain(&s.rho) {
                    if !fields.contains_key(name) {
                        return Err(ManifestError::UnknownField(name.clone()));
                    }
                }
                let kappa = s.kappa.as_ref().map(|_| parse_param(&s.kappa, "soliton.kappa")).transpose()?;
                if kappa.is_some() && !conv.kappa_on_lie {
                    return Err(SolitonError::KappaNotAllowed(conv.id).into());
                }
                Ok(SolitonSpec {
                    preset: s.preset.clone(),
                    field: s.field.clone(),
                    kappa,
                    theta: parse_param(&s.theta, "soliton.theta")?,
                    omega: parse_param(&s.omega, "soliton.omega")?,
                    rho: s.rho.clone(),
                    potential: s
                        .potential
                        .as_ref()
                        .map(|p| ctx.expr(p, || "soliton.potential".into()))
                        .transpose()?,
                })
            })
            .transpose()?;
        for c in &raw.checks {
            if !THEOREM_IDS.contains(&c.as_str()) {
                return Err(ManifestError::UnknownCheck(c.clone()));
            }
        }
        Ok(Manifest {
            dimension: dim,
            coordinates: raw.coordinates,
            frame,
            metric,
            inverse_frame,
            contact,
            fields,
            soliton,
            checks: raw.checks,
        })
    }

    fn to_raw(&self) -> RawManifest {
        RawManifest {
            dimension: self.dimension,
            coordinates: self.coordinates.clone(),
            frame: strings(&self.frame),
            metric: self.metric.as_ref().map(|m| {
                m.iter()
                    .map(|r| r.iter().map(|c| RawNumber::Text(c.to_string())).collect())
                    .collect()
            }),
            inverse_frame: self.inverse_frame.as_deref().map(strings),
            contact: self.contact.as_ref().map(|c| RawContact {
                phi: strings(&c.phi),
                reeb: c.reeb,
                n: c.n,
            }),
            fields: self
                .fields
                .iter()
                .map(|(k, f)| {
                    let comps = f.components.iter().map(Expr::to_string).collect();
                    let raw = match f.basis {
                        Basis::Frame => RawField::Frame(comps),
                        Basis::Coordinate => RawField::Coordinate(RawCoordinate { coordinate: comps }),
                    };
                    (k.clone(), raw)
                })
                .collect(),
            soliton: self.soliton.as_ref().map(|s| RawSoliton {
                preset: s.preset.clone(),
                field: s.field.clone(),
                kappa: s.kappa.as_ref().map(param_text),
                theta: Some(param_text(&s.theta)),
                omega: Some(param_text(&s.omega)),
                rho: s.rho.clone(),
                potential: s.potential.as_ref().map(Expr::to_string),
            }),
            checks: self.checks.clone(),
        }
    }

    /// Pretty-printed JSON that parses back to an equal manifest.
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_raw()).expect("manifest serializes")
    }

    pub fn load(&self) -> Result<Loaded, ManifestError> {
        let table = SymbolTable::new(&self.coordinates);
        let manifold = FrameManifold::from_frame(
            table.coordinates().to_vec(),
            self.frame.clone(),
            self.metric.clone(),
            self.inverse_frame.clone(),
        )?;
        let contact = self
            .contact
            .as_ref()
            .map(|c| {
                let zeta = crate::contact::basis(self.dimension, c.reeb - 1);
                AlmostContactData::new(&manifold, c.phi.clone(), zeta, c.n)
            })
            .transpose()?;
        let fields = self
            .fields
            .iter()
            .map(|(name, f)| {
                let comps = match f.basis {
                    Basis::Frame => f.components.clone(),
                    Basis::Coordinate => manifold.coordinate_to_frame(&f.components)?,
                };
                Ok((name.clone(), comps))
            })
            .collect::<Result<_, ManifestError>>()?;
        Ok(Loaded {
            manifold,
            contact,
            fields,
        })
    }

    /// The soliton instance, with the preset optionally overridden and
    /// parameters rebound. Without a soliton block a preset override starts
    /// from all-symbolic parameters.
    pub fn instance(
        &self,
        loaded: &Loaded,
        preset: Option<&str>,
        binds: &BTreeMap<String, Rational>,
    ) -> Result<Option<SolitonInstance>, ManifestError> {
        let spec = self.soliton.clone();
        let Some(id) = preset.map(str::to_string).or_else(|| spec.as_ref().map(|s| s.preset.clone())) else {
            return Ok(None);
        };
        let conv = SolitonConvention::<Rational>::preset(&id).ok_or(ManifestError::UnknownPreset(id))?;
        let field = self.soliton_field(loaded)?;
        let mut kappa = spec.as_ref().and_then(|s| s.kappa.clone());
        if !conv.kappa_on_lie {
            kappa = None;
        }
        let mut theta = spec.as_ref().map_or(ParamValue::Symbolic, |s| s.theta.clone());
        let mut omega = spec.as_ref().map_or(ParamValue::Symbolic, |s| s.omega.clone());
        for (k, v) in binds {
            let v = ParamValue::Value(v.clone());
            match k.as_str() {
                "kappa" => kappa = Some(v),
                "theta" => theta = v,
                "omega" => omega = v,
                other => return Err(ManifestError::Invalid(format!("cannot bind {other}"))),
            }
        }
        Ok(Some(SolitonInstance::new(conv, field, kappa, theta, omega)?))
    }

    /// The named soliton field, else `V`, else the Reeb field.
    pub fn soliton_field(&self, loaded: &Loaded) -> Result<Vec<Expr>, ManifestError> {
        let name = self.soliton.as_ref().and_then(|s| s.field.clone());
        if let Some(name) = name {
            return loaded.fields.get(&name).cloned().ok_or(ManifestError::UnknownField(name));
        }
        if let Some(v) = loaded.fields.get("V") {
            return Ok(v.clone());
        }
        match &loaded.contact {
            Some(a) => Ok(a.zeta().to_vec()),
            None => Err(ManifestError::Invalid("no soliton field".into())),
        }
    }

    pub fn rho(&self, loaded: &Loaded) -> Option<Vec<Expr>> {
        let name = self.soliton.as_ref()?.rho.as_ref()?;
        loaded.fields.get(name).cloned()
    }

    pub fn potential(&self) -> Option<Expr> {
        self.soliton.as_ref()?.potential.clone()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const FLAT: &str = r#"{
        "dimension": 2,
        "coordinates": ["x", "y"],
        "frame": [["1", "0"], ["0", "1"]],
        "fields": { "r": { "coordinate": ["x", "y"] }, "e": ["1", "0"] }
    }"#;

    #[test]
    fn parses_and_round_trips() {
        let m = Manifest::parse(FLAT).unwrap();
        assert_eq!(m.fields.len(), 2);
        assert_eq!(Manifest::parse(&m.to_json()).unwrap(), m);
    }

    #[test]
    fn unknown_keys_are_rejected_with_position() {
        let text = FLAT.replacen("\"dimension\"", "\"dimensions\"", 1);
        match Manifest::parse(&text) {
            Err(ManifestError::Syntax { line, .. }) => assert_eq!(line, 2),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn expression_errors_carry_their_path() {
        let text = FLAT.replacen(r#"["1", "0"], ["0", "1"]"#, r#"["1", "0"], ["0", "exp(x*y)"]"#, 1);
        match Manifest::parse(&text) {
            Err(ManifestError::Expression { path, .. }) => assert_eq!(path, "frame[1][1]"),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn singular_frame_is_rejected() {
        let text = FLAT.replacen(r#"["1", "0"], ["0", "1"]"#, r#"["1", "0"], ["1", "0"]"#, 1);
        assert!(matches!(Manifest::parse(&text), Err(ManifestError::NonInvertibleFrame)));
    }
}
