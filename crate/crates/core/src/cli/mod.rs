//! Manifests, the built-in corpus, command dispatch and reports.

mod manifest;
pub mod report;

use std::collections::BTreeMap;
use std::str::FromStr;

use serde_json::{json, Map, Value};

pub use manifest::{Basis, ContactSpec, FieldSpec, Loaded, Manifest, ManifestError, SolitonSpec};

use crate::contact::{identity_suite, is_symmetric, star_ricci_formula, star_scalar};
use crate::frame::checks;
use crate::soliton::{
    classify_regime, classify_torse_forming, conformal_killing, eta_einstein, soliton_residual,
    omega_symbol, solve_omega_reeb, solve_omega_trace, specialize_theta, theorem_check, theta_symbol,
    CheckOutcome, Geometry, ParamValue, SolitonConvention, SolitonError, TensorKind, TheoremInputs,
    TorseOutcome, THEOREM_IDS,
};
use crate::{Expr, Rational, SolitonInstance};

pub const BUILTINS: &[&str] = &["kenmotsu5", "kenmotsu3", "euclidean3"];

pub fn builtin(name: &str) -> Result<Manifest, ManifestError> {
    let text = match name {
        "kenmotsu5" => include_str!("../../manifests/kenmotsu5.json"),
        "kenmotsu3" => include_str!("../../manifests/kenmotsu3.json"),
        "euclidean3" => include_str!("../../manifests/euclidean3.json"),
        other => return Err(ManifestError::Invalid(format!("unknown builtin {other}"))),
    };
    Manifest::parse(text)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Command {
    Verify,
    Curvature,
    Soliton,
    Classify(String),
    Theorems,
    All,
}

impl FromStr for Command {
    type Err = String;

    /// `classify` takes its field name after a space: `classify V`.
    fn from_str(s: &str) -> Result<Self, String> {
        let mut words = s.split_whitespace();
        let cmd = match words.next() {
            Some("verify") => Command::Verify,
            Some("curvature") => Command::Curvature,
            Some("soliton") => Command::Soliton,
            Some("theorems") => Command::Theorems,
            Some("all") => Command::All,
            Some("classify") => {
                let field = words.next().ok_or("classify needs a field name")?;
                Command::Classify(field.to_string())
            }
            _ => return Err(format!("unknown command {s:?}")),
        };
        match words.next() {
            None => Ok(cmd),
            Some(extra) => Err(format!("unexpected argument {extra:?}")),
        }
    }
}

#[derive(Clone, Debug, Default)]
pub struct Options {
    pub preset: Option<String>,
    /// Keys are `kappa`, `theta` or `omega`.
    pub binds: BTreeMap<String, Rational>,
}

/// Accepts `kappa=1/2`, `κ=1/2`, `theta=...`, `θ=...`, `omega=...`, `Ω=...`.
pub fn parse_bind(s: &str) -> Result<(String, Rational), String> {
    let (k, v) = s.split_once('=').ok_or_else(|| format!("expected NAME=p/q, got {s:?}"))?;
    let key = match k.trim() {
        "kappa" | "κ" => "kappa",
        "theta" | "θ" => "theta",
        "omega" | "Omega" | "Ω" => "omega",
        other => return Err(format!("unknown parameter {other:?}")),
    };
    let value = <Rational as crate::Scalar>::parse_literal(v.trim())
        .ok_or_else(|| format!("not a rational: {v:?}"))?;
    Ok((key.to_string(), value))
}

/// A finished run: the structured document plus the reasons, if any, for a
/// nonzero exit.
#[derive(Clone, Debug)]
pub struct Report {
    pub document: Value,
    pub failures: Vec<String>,
}

impl Report {
    pub fn exit_code(&self) -> i32 {
        if self.failures.is_empty() {
            0
        } else {
            1
        }
    }

    pub fn structured(&self) -> String {
        let mut s = serde_json::to_string_pretty(&self.document).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn text(&self) -> String {
        report::render_text(&self.document)
    }

    pub fn section(&self, name: &str) -> Option<&Value> {
        self.document.get(name)
    }
}

struct Run<'a> {
    manifest: &'a Manifest,
    loaded: Loaded,
    geometry: Geometry<Rational>,
    instance: Option<SolitonInstance>,
    doc: Map<String, Value>,
    failures: Vec<String>,
}

pub fn run(command: &Command, manifest: &Manifest, opts: &Options) -> Result<Report, ManifestError> {
    let loaded = manifest.load()?;
    let instance = manifest.instance(&loaded, opts.preset.as_deref(), &opts.binds)?;
    if let Command::Classify(name) = command {
        if name != "zeta" && !loaded.fields.contains_key(name) {
            return Err(ManifestError::UnknownField(name.clone()));
        }
    }
    let geometry = Geometry::new(loaded.manifold.clone(), loaded.contact.clone());
    let mut r = Run {
        manifest,
        loaded,
        geometry,
        instance,
        doc: Map::new(),
        failures: Vec::new(),
    };
    r.doc.insert("manifold".into(), r.manifold_section());
    match command {
        Command::Verify => r.verify(),
        Command::Curvature => r.curvature(),
        Command::Soliton => r.soliton(),
        Command::Classify(f) => r.classify(Some(f)),
        Command::Theorems => r.theorems(),
        Command::All => {
            r.verify();
            r.curvature();
            r.soliton();
            r.classify(None);
            r.theorems();
        }
    }
    let status = json!({
        "exit_code": if r.failures.is_empty() { 0 } else { 1 },
        "failures": r.failures,
    });
    r.doc.insert("status".into(), status);
    Ok(Report {
        document: Value::Object(r.doc),
        failures: r.failures,
    })
}

impl Run<'_> {
    fn fail(&mut self, why: impl Into<String>) {
        self.failures.push(why.into());
    }

    fn manifold_section(&self) -> Value {
        let m = &self.geometry.manifold;
        json!({
            "dimension": m.dim(),
            "coordinates": self.manifest.coordinates,
            "frame": self.manifest.frame.iter().map(|r| report::vector(r)).collect::<Vec<_>>(),
            "contact": self.geometry.contact.is_some(),
            "kenmotsu": self.geometry.is_kenmotsu(),
            "fields": self.loaded.fields.iter().map(|(k, v)| (k.clone(), Value::String(report::combination(v)))).collect::<Map<_, _>>(),
        })
    }

    fn verify(&mut self) {
        let g = &self.geometry;
        let invariants = checks::all(&g.manifold, &g.curvature);
        let inv = json!({
            "holds": invariants.is_empty(),
            "violations": invariants.iter().map(|v| json!({
                "check": v.check,
                "index": v.index.iter().map(|i| i + 1).collect::<Vec<_>>(),
                "value": report::expr(&v.residual),
            })).collect::<Vec<_>>(),
        });
        if !invariants.is_empty() {
            self.failures.push("frame invariants violated".into());
        }
        self.doc.insert("invariants".into(), inv);

        let (Some(a), Some(s)) = (g.contact.as_ref(), g.structure.as_ref()) else {
            self.doc
                .insert("structure".into(), report::not_applicable("no almost-contact structure"));
            self.doc
                .insert("identities".into(), report::not_applicable("no almost-contact structure"));
            return;
        };
        let mut failures = Vec::new();
        for ax in s.axioms.iter().filter(|x| !x.holds()) {
            if !matches!(ax.id, "2.4" | "2.5") {
                failures.push(format!("almost-contact axiom {} fails", ax.id));
            }
        }
        self.doc.insert("structure".into(), report::structure(s));
        let suite = identity_suite(&g.manifold, a, &g.curvature);
        if !suite.informational {
            for id in suite.identities.iter().filter(|x| !x.holds()) {
                failures.push(format!("Kenmotsu identity {} fails", id.id));
            }
        }
        self.doc.insert("identities".into(), report::identities(&suite));
        self.failures.extend(failures);
    }

    fn curvature(&mut self) {
        let g = &self.geometry;
        let m = &g.manifold;
        let dim = m.dim();
        let c = m.structure_functions();
        let mut brackets = Vec::new();
        for i in 0..dim {
            for j in 0..dim {
                let b = c.bracket(i, j);
                if b.iter().any(|x| !x.is_zero()) {
                    brackets.push(json!({
                        "bracket": format!("[e{}, e{}]", i + 1, j + 1),
                        "value": report::combination(&b),
                    }));
                }
            }
        }
        let mut connection = Vec::new();
        for i in 0..dim {
            for j in 0..dim {
                connection.push(json!({
                    "term": format!("nabla_e{} e{}", i + 1, j + 1),
                    "value": report::combination(&g.curvature.connection.covariant(i, j)),
                }));
            }
        }
        let mut riemann = Vec::new();
        for i in 0..dim {
            for j in 0..dim {
                for k in 0..dim {
                    let v: Vec<Expr> = (0..dim).map(|l| g.curvature.riemann.get(&[i, j, k, l]).clone()).collect();
                    if i < j && v.iter().any(|x| !x.is_zero()) {
                        riemann.push(json!({
                            "term": format!("R(e{}, e{}) e{}", i + 1, j + 1, k + 1),
                            "value": report::combination(&v),
                        }));
                    }
                }
            }
        }
        let mut section = json!({
            "structure_functions": brackets,
            "connection": connection,
            "riemann": riemann,
            "ricci": report::matrix(&g.curvature.ricci),
            "scalar": report::expr(&g.curvature.scalar),
        });
        let mut failed = None;
        if let (Some(a), Some(direct)) = (g.contact.as_ref(), g.star_ricci.as_ref()) {
            let formula = star_ricci_formula(m, a, &g.curvature.ricci);
            let ss = star_scalar(m, a, direct, &g.curvature.scalar);
            let agree = &formula == direct;
            section["star_ricci"] = json!({
                "direct": report::matrix(direct),
                "formula": report::matrix(&formula),
                "agree": agree,
                "symmetric": is_symmetric(direct),
            });
            section["star_scalar"] = json!({
                "trace": report::expr(&ss.trace),
                "shifted_scalar": report::expr(&ss.shifted_scalar),
                "consistent": ss.consistent(),
            });
            if g.is_kenmotsu() && !(agree && ss.consistent()) {
                failed = Some("*-Ricci routes disagree on a Kenmotsu manifold");
            }
        }
        if let Some(f) = failed {
            self.fail(f);
        }
        self.doc.insert("curvature".into(), section);
    }

    fn soliton(&mut self) {
        let Some(inst) = self.instance.clone() else {
            self.doc.insert("soliton".into(), report::not_applicable("no soliton preset"));
            return;
        };
        let section = match self.soliton_section(&inst) {
            Ok(v) => v,
            Err(e) => {
                self.fail(format!("soliton: {e}"));
                report::error(e)
            }
        };
        self.doc.insert("soliton".into(), section);
    }

    fn soliton_section(&mut self, inst: &SolitonInstance) -> Result<Value, SolitonError> {
        let g = &self.geometry;
        let conv = inst.convention();
        let field = inst.field();
        let lie = g.lie_derivative(field)?;
        let div = g.manifold.divergence(&g.curvature.connection, field);
        let residual = soliton_residual(g, inst)?;
        let mut v = json!({
            "preset": conv.id,
            "printed": conv.printed,
            "residual_formula": conv.residual_formula(),
            "parameter_map": conv.parameter_map,
            "field": report::combination(field),
            "kappa": report::expr(&inst.kappa()),
            "theta": report::expr(&inst.theta()),
            "omega": report::expr(&inst.omega()),
            "lie_derivative": report::matrix(&lie),
            "lie_trace": report::expr(&g.manifold.trace(&lie)),
            "divergence": report::expr(&div),
            "residual": report::matrix(&residual),
        });
        match solve_omega_trace(g, inst) {
            Ok(omega) => {
                let at = soliton_residual(g, &inst.with_omega(ParamValue::Symbolic))?
                    .map(|e| e.substitute(&omega_symbol(), &omega).expect("parameter substitution"));
                let regime = classify_regime(&omega, &BTreeMap::new())?;
                v["omega_trace"] = report::expr(&omega);
                v["regime"] = json!(regime);
                v["residual_at_omega_trace"] = report::residual(&at);
                v["solves_soliton_equation"] = json!(at.is_zero());
                if omega.symbols().contains(&theta_symbol()) {
                    let mut specs = Vec::new();
                    for t in [0, 1, 2] {
                        let s = specialize_theta(&omega, Rational::from_integer(t.into()))?;
                        specs.push(json!({
                            "theta": t,
                            "omega": report::expr(&s.omega),
                            "steady_kappa": s.steady_kappa.as_ref().map(report::expr),
                            "regime": classify_regime(&s.omega, &BTreeMap::new())?,
                        }));
                    }
                    v["theta_specializations"] = Value::Array(specs);
                }
            }
            Err(e) => {
                v["omega_trace"] = report::error(&e);
                self.failures.push(format!("soliton trace solve: {e}"));
            }
        }
        if g.is_kenmotsu() {
            v["omega_reeb"] = report::expr(&solve_omega_reeb(g, inst)?);
        }
        let mut by_preset = Vec::new();
        for p in SolitonConvention::<Rational>::presets() {
            if p.tensor == TensorKind::StarRicci && g.contact.is_none() {
                continue;
            }
            let kappa = if p.kappa_on_lie { inst.kappa_binding().cloned() } else { None };
            let other = SolitonInstance::new(
                p.clone(),
                field.to_vec(),
                kappa,
                param_of(&inst.theta()),
                ParamValue::Symbolic,
            )?;
            let omega = match solve_omega_trace(g, &other) {
                Ok(o) => report::expr(&o),
                Err(e) => report::error(e),
            };
            by_preset.push(json!({ "preset": p.id, "omega_trace": omega }));
        }
        v["omega_trace_by_preset"] = Value::Array(by_preset);
        Ok(v)
    }

    fn classify(&mut self, only: Option<&str>) {
        let g = &self.geometry;
        let mut names: Vec<(String, Vec<Expr>)> = self
            .loaded
            .fields
            .iter()
            .map(|(k, v)| (k.clone(), v.clone()))
            .collect();
        if let Some(a) = &g.contact {
            names.push(("zeta".into(), a.zeta().to_vec()));
        }
        let mut out = Map::new();
        let mut failures = Vec::new();
        for (name, v) in names {
            if only.map_or(false, |o| o != name) {
                continue;
            }
            let torse = match classify_torse_forming(g, &v) {
                Ok(t) => {
                    if let TorseOutcome::Certified(c) = &t {
                        if !c.verify(g, &v) {
                            failures.push(format!("torse-forming certificate for {name} does not verify"));
                        }
                    }
                    report::torse(&t)
                }
                Err(e) => report::error(e),
            };
            let conformal = match conformal_killing(g, &v) {
                Ok(c) => report::conformal(&c),
                Err(e) => report::error(e),
            };
            out.insert(name, json!({ "torse_forming": torse, "conformal_killing": conformal }));
        }
        let mut section = json!({ "fields": out });
        if let Some(a) = &g.contact {
            let ricci = eta_einstein(&g.manifold, a.eta(), &g.curvature.ricci);
            section["eta_einstein"] = match ricci {
                Ok(c) => report::eta_einstein(&c),
                Err(e) => report::error(e),
            };
        }
        self.failures.extend(failures);
        self.doc.insert("certificates".into(), section);
    }

    fn theorems(&mut self) {
        let Some(inst) = self.instance.clone() else {
            self.doc.insert("theorems".into(), report::not_applicable("no soliton preset"));
            return;
        };
        let ids: Vec<String> = if self.manifest.checks.is_empty() {
            THEOREM_IDS.iter().map(|s| s.to_string()).collect()
        } else {
            self.manifest.checks.clone()
        };
        let inputs = TheoremInputs {
            instance: inst,
            rho: self.manifest.rho(&self.loaded),
            potential: self.manifest.potential(),
        };
        let mut out = Vec::new();
        let mut counts = BTreeMap::new();
        for id in &ids {
            match theorem_check(&self.geometry, id, &inputs) {
                Ok(r) => {
                    if r.hard_failure() {
                        self.fail(format!("theorem check {id}: internal consistency comparison failed"));
                    }
                    *counts.entry(outcome_name(r.outcome)).or_insert(0) += 1;
                    out.push(report::theorem(&r));
                }
                Err(e) => {
                    self.fail(format!("theorem check {id}: {e}"));
                    out.push(json!({ "id": id, "error": e.to_string() }));
                }
            }
        }
        self.doc
            .insert("theorems".into(), json!({ "summary": counts, "checks": out }));
    }
}

fn outcome_name(o: CheckOutcome) -> &'static str {
    match o {
        CheckOutcome::Match => "MATCH",
        CheckOutcome::Mismatch => "MISMATCH",
        CheckOutcome::NotApplicable => "NOT_APPLICABLE",
    }
}

fn param_of(e: &Expr) -> ParamValue<Rational> {
    match e.as_constant() {
        Some(c) => ParamValue::Value(c),
        None => ParamValue::Symbolic,
    }
}
