//! Soliton residuals under an explicit convention registry, Ω solvers,
//! vector field certificates and theorem checks.

mod certificates;
mod convention;
mod theorems;

use std::collections::BTreeMap;

use serde::Serialize;
use thiserror::Error;

use crate::contact::{self, AlmostContactData, StructureReport};
use crate::frame::{Curvature, FrameManifold, TensorField};
use crate::scalar::Scalar;
use crate::symscalar::{Expr, SymError, Symbol};

pub use certificates::{
    classify_torse_forming, conformal_killing, eta_einstein, ConformalClass, ConformalKilling,
    EtaEinstein, TorseForming, TorseOutcome, TorseSubtype,
};
pub use convention::{SolitonConvention, TensorKind};
pub use theorems::{theorem_check, CheckOutcome, CheckReport, Comparison, TheoremInputs, THEOREM_IDS};

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum SolitonError {
    #[error("the manifold carries no almost-contact structure")]
    MissingContact,
    #[error("the structure is not Kenmotsu")]
    NotKenmotsu,
    #[error("the trace equation does not involve Omega")]
    DegenerateTrace,
    #[error("inconclusive: {0}")]
    Inconclusive(String),
    #[error("the vector field is identically zero")]
    ZeroField,
    #[error("{0} is bound to zero but appears as a divisor")]
    DivisionByZeroParameter(&'static str),
    #[error("preset {0} has no kappa slot")]
    KappaNotAllowed(String),
    #[error("unknown preset {0}")]
    UnknownPreset(String),
    #[error("unknown check {0}")]
    UnknownCheck(String),
    #[error("field has {got} components, expected {want}")]
    Shape { got: usize, want: usize },
    #[error(transparent)]
    Sym(#[from] SymError),
}

pub fn kappa_symbol() -> Symbol {
    Symbol::parameter("kappa")
}

pub fn theta_symbol() -> Symbol {
    Symbol::parameter("theta")
}

pub fn omega_symbol() -> Symbol {
    Symbol::parameter("Omega")
}

/// A soliton parameter: a fixed rational or left symbolic.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ParamValue<C> {
    Value(C),
    Symbolic,
}

impl<C: Scalar> ParamValue<C> {
    fn expr(&self, s: Symbol) -> Expr<C> {
        match self {
            ParamValue::Value(c) => Expr::constant(c.clone()),
            ParamValue::Symbolic => Expr::symbol(&s),
        }
    }
}

/// A convention together with a vector field (frame components) and
/// parameter bindings.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SolitonInstance<C> {
    convention: SolitonConvention<C>,
    field: Vec<Expr<C>>,
    kappa: Option<ParamValue<C>>,
    theta: ParamValue<C>,
    omega: ParamValue<C>,
}

impl<C: Scalar> SolitonInstance<C> {
    /// `kappa` must be `None` for conventions without a kappa slot. When the
    /// convention has one and `kappa` is `None`, it stays symbolic.
    pub fn new(
        convention: SolitonConvention<C>,
        field: Vec<Expr<C>>,
        kappa: Option<ParamValue<C>>,
        theta: ParamValue<C>,
        omega: ParamValue<C>,
    ) -> Result<Self, SolitonError> {
        if kappa.is_some() && !convention.kappa_on_lie {
            return Err(SolitonError::KappaNotAllowed(convention.id.clone()));
        }
        Ok(SolitonInstance {
            convention,
            field,
            kappa,
            theta,
            omega,
        })
    }

    pub fn convention(&self) -> &SolitonConvention<C> {
        &self.convention
    }

    pub fn field(&self) -> &[Expr<C>] {
        &self.field
    }

    pub fn with_field(&self, field: Vec<Expr<C>>) -> Self {
        SolitonInstance {
            field,
            ..self.clone()
        }
    }

    pub fn with_omega(&self, omega: ParamValue<C>) -> Self {
        SolitonInstance {
            omega,
            ..self.clone()
        }
    }

    /// The factor in front of `L_V h`, sign excluded: kappa, or one when the
    /// convention has no kappa slot.
    pub fn kappa(&self) -> Expr<C> {
        if !self.convention.kappa_on_lie {
            return Expr::one();
        }
        self.kappa
            .as_ref()
            .unwrap_or(&ParamValue::Symbolic)
            .expr(kappa_symbol())
    }

    pub fn kappa_binding(&self) -> Option<&ParamValue<C>> {
        self.kappa.as_ref()
    }

    pub fn theta(&self) -> Expr<C> {
        self.theta.expr(theta_symbol())
    }

    pub fn omega(&self) -> Expr<C> {
        self.omega.expr(omega_symbol())
    }
}

/// A manifold with everything the soliton layer reads from it, computed once.
#[derive(Clone, Debug)]
pub struct Geometry<C> {
    pub manifold: FrameManifold<C>,
    pub curvature: Curvature<C>,
    pub contact: Option<AlmostContactData<C>>,
    pub structure: Option<StructureReport<C>>,
    /// `T*`, from its trace definition.
    pub star_ricci: Option<TensorField<C>>,
}

impl<C: Scalar> Geometry<C> {
    pub fn new(manifold: FrameManifold<C>, contact: Option<AlmostContactData<C>>) -> Self {
        let curvature = Curvature::compute(&manifold);
        let structure = contact
            .as_ref()
            .map(|a| contact::verify_structure(&manifold, a, &curvature));
        let star_ricci = contact
            .as_ref()
            .map(|a| contact::star_ricci_direct(a, &curvature));
        Geometry {
            manifold,
            curvature,
            contact,
            structure,
            star_ricci,
        }
    }

    pub fn is_kenmotsu(&self) -> bool {
        self.structure.as_ref().map_or(false, |s| s.kenmotsu)
    }

    pub fn contact(&self) -> Result<&AlmostContactData<C>, SolitonError> {
        self.contact.as_ref().ok_or(SolitonError::MissingContact)
    }

    pub fn n(&self) -> Result<usize, SolitonError> {
        Ok(self.contact()?.n())
    }

    pub fn tensor(&self, kind: TensorKind) -> Result<&TensorField<C>, SolitonError> {
        match kind {
            TensorKind::Ricci => Ok(&self.curvature.ricci),
            TensorKind::StarRicci => self.star_ricci.as_ref().ok_or(SolitonError::MissingContact),
        }
    }

    /// Trace of the tensor the convention uses: `R`, or `R*` computed as the
    /// trace of `T*`.
    pub fn tensor_scalar(&self, kind: TensorKind) -> Result<Expr<C>, SolitonError> {
        match kind {
            TensorKind::Ricci => Ok(self.curvature.scalar.clone()),
            TensorKind::StarRicci => Ok(self.manifold.trace(self.tensor(kind)?)),
        }
    }

    pub fn lie_derivative(&self, v: &[Expr<C>]) -> Result<TensorField<C>, SolitonError> {
        self.check_field(v)?;
        Ok(self.manifold.lie_derivative_metric(&self.curvature.connection, v))
    }

    fn check_field(&self, v: &[Expr<C>]) -> Result<(), SolitonError> {
        let want = self.manifold.dim();
        if v.len() != want {
            return Err(SolitonError::Shape { got: v.len(), want });
        }
        Ok(())
    }
}

fn sign<C: Scalar>(s: i8) -> Expr<C> {
    Expr::int(s as i64)
}

/// The scalar multiplying `h` in the residual.
fn metric_coefficient<C: Scalar>(
    conv: &SolitonConvention<C>,
    omega: &Expr<C>,
    theta: &Expr<C>,
    scalar: &Expr<C>,
) -> Expr<C> {
    &omega.scale(&conv.omega_coeff) + &(theta * scalar).scale(&conv.theta_scalar_coeff)
}

/// The soliton residual as a bilinear form; zero exactly when the instance
/// solves its equation.
pub fn soliton_residual<C: Scalar>(
    g: &Geometry<C>,
    inst: &SolitonInstance<C>,
) -> Result<TensorField<C>, SolitonError> {
    let conv = &inst.convention;
    let lie = g.lie_derivative(&inst.field)?;
    let tensor = g.tensor(conv.tensor)?;
    let scalar = g.tensor_scalar(conv.tensor)?;
    let lie_factor = &sign::<C>(conv.sign_lie) * &inst.kappa();
    let tensor_factor = sign::<C>(conv.sign_tensor * 2);
    let metric = metric_coefficient(conv, &inst.omega(), &inst.theta(), &scalar);
    Ok(lie
        .scale(&lie_factor)
        .add(&tensor.scale(&tensor_factor))
        .add(&g.manifold.metric_tensor().scale(&metric)))
}

/// Solves `a * Omega + b = 0` for Omega.
fn solve_for_omega<C: Scalar>(eq: &Expr<C>) -> Result<Expr<C>, SolitonError> {
    let (a, b) = eq.linear_in(&omega_symbol())?;
    if a.is_zero() {
        return Err(SolitonError::DegenerateTrace);
    }
    (-b).exact_div(&a)
        .map_err(|e| SolitonError::Inconclusive(format!("Omega = -b/a not in the algebra: {e}")))
}

/// Ω from the trace of the residual. Any binding of Ω in the instance is
/// ignored.
pub fn solve_omega_trace<C: Scalar>(
    g: &Geometry<C>,
    inst: &SolitonInstance<C>,
) -> Result<Expr<C>, SolitonError> {
    let free = inst.with_omega(ParamValue::Symbolic);
    let residual = soliton_residual(g, &free)?;
    solve_for_omega(&g.manifold.trace(&residual))
}

/// Ω from contracting the residual with `V = P = Q = zeta`.
pub fn solve_omega_reeb<C: Scalar>(
    g: &Geometry<C>,
    inst: &SolitonInstance<C>,
) -> Result<Expr<C>, SolitonError> {
    if !g.is_kenmotsu() {
        return Err(SolitonError::NotKenmotsu);
    }
    let zeta = g.contact()?.zeta().to_vec();
    let free = inst.with_field(zeta.clone()).with_omega(ParamValue::Symbolic);
    let residual = soliton_residual(g, &free)?;
    solve_for_omega(&contact::bilinear(&residual, &zeta, &zeta))
}

/// Ω for a torse-forming field, using `tr L_rho h = 2 m psi + 2 theta(rho)`
/// in the trace equation.
pub fn solve_omega_torse_forming<C: Scalar>(
    g: &Geometry<C>,
    inst: &SolitonInstance<C>,
    cert: &TorseForming<C>,
) -> Result<Expr<C>, SolitonError> {
    let conv = &inst.convention;
    let m = g.manifold.dim() as i64;
    let lie_trace = &cert.psi.scale(&C::from_int(2 * m)) + &cert.theta_of_field.scale(&C::from_int(2));
    let scalar = g.tensor_scalar(conv.tensor)?;
    let eq = &(&(&sign::<C>(conv.sign_lie) * &inst.kappa()) * &lie_trace)
        + &(&scalar.scale(&C::from_int(2 * conv.sign_tensor as i64))
            + &metric_coefficient(conv, &omega_symbol_expr(), &inst.theta(), &scalar)
                .scale(&C::from_int(m)));
    solve_for_omega(&eq)
}

fn omega_symbol_expr<C: Scalar>() -> Expr<C> {
    Expr::symbol(&omega_symbol())
}

/// Sign reading of Ω: positive is contracting, zero steady, negative growing.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Regime {
    Contracting,
    Steady,
    Growing,
    /// Ω still depends on unbound symbols or coordinates.
    Undetermined,
}

pub fn classify_regime<C: Scalar>(
    omega: &Expr<C>,
    bindings: &BTreeMap<Symbol, Expr<C>>,
) -> Result<Regime, SolitonError> {
    let bound = omega.substitute_all(bindings.iter())?;
    Ok(match bound.as_constant() {
        Some(c) if c.is_positive() => Regime::Contracting,
        Some(c) if c.is_zero() => Regime::Steady,
        Some(_) => Regime::Growing,
        None => Regime::Undetermined,
    })
}

/// Ω with theta fixed, plus the kappa at which it vanishes when that is a
/// single rational value.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Specialization<C> {
    pub theta: C,
    pub omega: Expr<C>,
    pub steady_kappa: Option<Expr<C>>,
}

pub fn specialize_theta<C: Scalar>(omega: &Expr<C>, theta: C) -> Result<Specialization<C>, SolitonError> {
    let value = omega.substitute(&theta_symbol(), &Expr::constant(theta.clone()))?;
    let (a, b) = value.linear_in(&kappa_symbol())?;
    let steady_kappa = if a.is_zero() {
        None
    } else {
        (-b).exact_div(&a).ok().filter(|k| k.symbols().is_empty())
    };
    Ok(Specialization {
        theta,
        omega: value,
        steady_kappa,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;

    type Q = BigRational;

    fn flat3() -> Geometry<Q> {
        let chart = vec![
            Symbol::coordinate("x1"),
            Symbol::coordinate("x2"),
            Symbol::coordinate("x3"),
        ];
        let frame = (0..3)
            .map(|i| (0..3).map(|j| Expr::int((i == j) as i64)).collect())
            .collect();
        Geometry::new(FrameManifold::from_frame(chart, frame, None, None).unwrap(), None)
    }

    #[test]
    fn kappa_rejected_without_slot() {
        let conv = SolitonConvention::<Q>::preset("RICCI_1_2").unwrap();
        let err = SolitonInstance::new(
            conv,
            vec![],
            Some(ParamValue::Value(Q::from_integer(2.into()))),
            ParamValue::Symbolic,
            ParamValue::Symbolic,
        );
        assert_eq!(err.unwrap_err(), SolitonError::KappaNotAllowed("RICCI_1_2".into()));
    }

    #[test]
    fn flat_killing_field_is_steady_ricci_soliton() {
        let g = flat3();
        let conv = SolitonConvention::<Q>::preset("RICCI_1_2").unwrap();
        let v = vec![Expr::int(1), Expr::zero(), Expr::zero()];
        let inst =
            SolitonInstance::new(conv, v, None, ParamValue::Symbolic, ParamValue::Symbolic).unwrap();
        assert!(solve_omega_trace(&g, &inst).unwrap().is_zero());
        let star = SolitonConvention::<Q>::preset("STAR_1_7").unwrap();
        let inst = SolitonInstance::new(star, vec![], None, ParamValue::Symbolic, ParamValue::Symbolic)
            .unwrap();
        assert_eq!(soliton_residual(&g, &inst.with_field(vec![Expr::zero(); 3])), Err(SolitonError::MissingContact));
    }

    #[test]
    fn degenerate_trace_is_reported() {
        let g = flat3();
        let mut conv = SolitonConvention::<Q>::preset("RICCI_1_2").unwrap();
        conv.omega_coeff = Q::from_integer(0.into());
        let inst = SolitonInstance::new(
            conv,
            vec![Expr::zero(); 3],
            None,
            ParamValue::Symbolic,
            ParamValue::Symbolic,
        )
        .unwrap();
        assert_eq!(solve_omega_trace(&g, &inst), Err(SolitonError::DegenerateTrace));
    }

    #[test]
    fn regime_follows_sign() {
        let q = |n: i64| Q::from_integer(n.into());
        let theta = theta_symbol();
        let omega: Expr<Q> = Expr::symbol(&theta).scale(&q(2));
        let mut b = BTreeMap::new();
        assert_eq!(classify_regime(&omega, &b).unwrap(), Regime::Undetermined);
        for (t, want) in [(1, Regime::Contracting), (0, Regime::Steady), (-1, Regime::Growing)] {
            b.insert(theta.clone(), Expr::int(t));
            assert_eq!(classify_regime(&omega, &b).unwrap(), want);
        }
    }

    #[test]
    fn steady_kappa_is_solved() {
        let k: Expr<Q> = Expr::symbol(&kappa_symbol());
        let t: Expr<Q> = Expr::symbol(&theta_symbol());
        // (8 kappa - 4 + 10 theta) / 5 at theta = 1 vanishes at kappa = -3/4.
        let omega = (&(&k.scale(&Q::from_integer(8.into())) - &Expr::int(4)) + &t.scale(&Q::from_integer(10.into())))
            .scale(&Q::new(1.into(), 5.into()));
        let s = specialize_theta(&omega, Q::from_integer(1.into())).unwrap();
        assert_eq!(s.steady_kappa, Some(Expr::constant(Q::new((-3).into(), 4.into()))));
    }
}
