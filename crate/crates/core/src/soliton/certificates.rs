//! Certificates for special vector fields and eta-Einstein forms, each found
//! by an exact linear solve and re-checkable against its defining equation.

use serde::Serialize;

use super::{Geometry, SolitonError};
use crate::frame::{FrameManifold, TensorField};
use crate::scalar::Scalar;
use crate::symscalar::{solve_linear, Expr, LinearEquation, LinearSolution, Symbol};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum TorseSubtype {
    Parallel,
    Concurrent,
    Concircular,
    Recurrent,
    Torqued,
    TorseForming,
}

/// `nabla_P V = psi P + theta(P) V`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TorseForming<C> {
    pub psi: Expr<C>,
    /// Frame components of the 1-form.
    pub theta: Vec<Expr<C>>,
    /// `theta(V)`.
    pub theta_of_field: Expr<C>,
    pub subtype: TorseSubtype,
}

impl<C: Scalar> TorseForming<C> {
    /// Every label that applies, most specific first.
    pub fn flags(&self) -> Vec<TorseSubtype> {
        let form_zero = self.theta.iter().all(Expr::is_zero);
        let mut out = Vec::new();
        if form_zero && self.psi.is_zero() {
            out.push(TorseSubtype::Parallel);
        }
        if form_zero && self.psi.is_one() {
            out.push(TorseSubtype::Concurrent);
        }
        if form_zero {
            out.push(TorseSubtype::Concircular);
        }
        if self.psi.is_zero() {
            out.push(TorseSubtype::Recurrent);
        }
        if self.theta_of_field.is_zero() {
            out.push(TorseSubtype::Torqued);
        }
        out.push(TorseSubtype::TorseForming);
        out
    }

    /// Re-evaluates `nabla_i V - psi E_i - theta_i V` on every frame vector.
    pub fn verify(&self, g: &Geometry<C>, v: &[Expr<C>]) -> bool {
        let dim = g.manifold.dim();
        (0..dim).all(|i| {
            let d = g.manifold.covariant_derivative(&g.curvature.connection, i, v);
            (0..dim).all(|k| {
                let mut r = &d[k] - &(&self.theta[i] * &v[k]);
                if i == k {
                    r = &r - &self.psi;
                }
                r.is_zero()
            })
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TorseOutcome<C> {
    Certified(TorseForming<C>),
    NotTorseForming,
}

fn unknown(name: &str) -> Symbol {
    Symbol::parameter(&format!("{name}#"))
}

fn solve<C: Scalar>(
    eqs: Vec<LinearEquation<C>>,
    unknowns: &[Symbol],
) -> Result<Option<Vec<Expr<C>>>, SolitonError> {
    match solve_linear(&eqs, unknowns) {
        LinearSolution::Unique(map) => Ok(Some(unknowns.iter().map(|u| map[u].clone()).collect())),
        LinearSolution::Inconsistent => Ok(None),
        LinearSolution::Underdetermined => {
            Err(SolitonError::Inconclusive("system is underdetermined".into()))
        }
        LinearSolution::Inconclusive(why) => Err(SolitonError::Inconclusive(why)),
    }
}

pub fn classify_torse_forming<C: Scalar>(
    g: &Geometry<C>,
    v: &[Expr<C>],
) -> Result<TorseOutcome<C>, SolitonError> {
    g.check_field(v)?;
    if v.iter().all(Expr::is_zero) {
        return Err(SolitonError::ZeroField);
    }
    let dim = g.manifold.dim();
    let mut unknowns = vec![unknown("psi")];
    unknowns.extend((0..dim).map(|i| unknown(&format!("theta_{i}"))));
    let mut eqs = Vec::with_capacity(dim * dim);
    for i in 0..dim {
        let d = g.manifold.covariant_derivative(&g.curvature.connection, i, v);
        for k in 0..dim {
            let mut coeffs = vec![Expr::zero(); dim + 1];
            if i == k {
                coeffs[0] = Expr::one();
            }
            coeffs[i + 1] = v[k].clone();
            eqs.push(LinearEquation::new(coeffs, d[k].clone()));
        }
    }
    let Some(mut sol) = solve(eqs, &unknowns)? else {
        return Ok(TorseOutcome::NotTorseForming);
    };
    let theta = sol.split_off(1);
    let psi = sol.pop().expect("psi");
    let theta_of_field = theta.iter().zip(v).map(|(a, b)| a * b).sum();
    let mut cert = TorseForming {
        psi,
        theta,
        theta_of_field,
        subtype: TorseSubtype::TorseForming,
    };
    cert.subtype = cert.flags()[0];
    Ok(TorseOutcome::Certified(cert))
}

/// `T = alpha h + beta eta (x) eta`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EtaEinstein<C> {
    pub alpha: Expr<C>,
    pub beta: Expr<C>,
}

/// Decomposes a symmetric bilinear form along `h` and `eta (x) eta`; `None`
/// when no such decomposition exists.
pub fn eta_einstein<C: Scalar>(
    m: &FrameManifold<C>,
    eta: &[Expr<C>],
    tensor: &TensorField<C>,
) -> Result<Option<EtaEinstein<C>>, SolitonError> {
    let dim = m.dim();
    let h = m.metric();
    let unknowns = [unknown("alpha"), unknown("beta")];
    let mut eqs = Vec::new();
    for i in 0..dim {
        for j in 0..dim {
            let coeffs = vec![Expr::constant(h[i][j].clone()), &eta[i] * &eta[j]];
            eqs.push(LinearEquation::new(coeffs, tensor.get(&[i, j]).clone()));
        }
    }
    Ok(solve(eqs, &unknowns)?.map(|mut s| {
        let beta = s.pop().expect("beta");
        let alpha = s.pop().expect("alpha");
        EtaEinstein { alpha, beta }
    }))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ConformalClass {
    Killing,
    /// Constant factor whose vanishing depends on parameter values.
    Homothetic,
    ProperHomothetic,
    Proper,
    None,
}

/// `L_V h = 2 lambda h`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConformalKilling<C> {
    pub lambda: Option<Expr<C>>,
    pub class: ConformalClass,
}

pub fn conformal_killing<C: Scalar>(
    g: &Geometry<C>,
    v: &[Expr<C>],
) -> Result<ConformalKilling<C>, SolitonError> {
    let lie = g.lie_derivative(v)?;
    let dim = g.manifold.dim();
    let h = g.manifold.metric();
    let unknowns = [unknown("lambda")];
    let mut eqs = Vec::new();
    for i in 0..dim {
        for j in 0..dim {
            let c = Expr::constant(h[i][j].clone() * C::from_int(2));
            eqs.push(LinearEquation::new(vec![c], lie.get(&[i, j]).clone()));
        }
    }
    let Some(mut s) = solve(eqs, &unknowns)? else {
        return Ok(ConformalKilling {
            lambda: None,
            class: ConformalClass::None,
        });
    };
    let lambda = s.pop().expect("lambda");
    let class = if lambda.is_zero() {
        ConformalClass::Killing
    } else if lambda.as_constant().is_some() {
        ConformalClass::ProperHomothetic
    } else if lambda.is_spatially_constant() {
        ConformalClass::Homothetic
    } else {
        ConformalClass::Proper
    };
    Ok(ConformalKilling {
        lambda: Some(lambda),
        class,
    })
}
