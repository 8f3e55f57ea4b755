//! Almost-contact metric structures on a frame manifold: axiom verification,
//! the Kenmotsu identity suite and the *-Ricci tensor.

use thiserror::Error;

use crate::frame::{Curvature, FrameManifold, TensorField};
use crate::scalar::Scalar;
use crate::symscalar::Expr;

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum ContactError {
    #[error("dimension {dim} is not 2n+1 with n = {n}")]
    OddDimension { dim: usize, n: usize },
    #[error("{0} has the wrong shape")]
    Shape(&'static str),
}

/// `(phi, zeta, eta)` over a frame manifold of dimension `2n + 1`.
///
/// `phi[j]` holds the frame components of `phi(E_j)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlmostContactData<C> {
    phi: Vec<Vec<Expr<C>>>,
    zeta: Vec<Expr<C>>,
    eta: Vec<Expr<C>>,
    n: usize,
}

impl<C: Scalar> AlmostContactData<C> {
    /// `eta` is taken as the metric dual of `zeta`.
    pub fn new(
        m: &FrameManifold<C>,
        phi: Vec<Vec<Expr<C>>>,
        zeta: Vec<Expr<C>>,
        n: usize,
    ) -> Result<Self, ContactError> {
        if zeta.len() != m.dim() {
            return Err(ContactError::Shape("zeta"));
        }
        let eta = m.lower(&zeta);
        Self::with_eta(m, phi, zeta, eta, n)
    }

    pub fn with_eta(
        m: &FrameManifold<C>,
        phi: Vec<Vec<Expr<C>>>,
        zeta: Vec<Expr<C>>,
        eta: Vec<Expr<C>>,
        n: usize,
    ) -> Result<Self, ContactError> {
        let dim = m.dim();
        if dim != 2 * n + 1 {
            return Err(ContactError::OddDimension { dim, n });
        }
        if phi.len() != dim || phi.iter().any(|r| r.len() != dim) {
            return Err(ContactError::Shape("phi"));
        }
        if zeta.len() != dim {
            return Err(ContactError::Shape("zeta"));
        }
        if eta.len() != dim {
            return Err(ContactError::Shape("eta"));
        }
        Ok(AlmostContactData { phi, zeta, eta, n })
    }

    pub fn phi(&self) -> &[Vec<Expr<C>>] {
        &self.phi
    }

    pub fn zeta(&self) -> &[Expr<C>] {
        &self.zeta
    }

    pub fn eta(&self) -> &[Expr<C>] {
        &self.eta
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.zeta.len()
    }

    pub fn apply_phi(&self, v: &[Expr<C>]) -> Vec<Expr<C>> {
        let mut out = vec![Expr::zero(); v.len()];
        for (j, vj) in v.iter().enumerate().filter(|(_, e)| !e.is_zero()) {
            for (slot, p) in out.iter_mut().zip(&self.phi[j]) {
                if !p.is_zero() {
                    *slot = &*slot + &(vj * p);
                }
            }
        }
        out
    }

    pub fn eta_of(&self, v: &[Expr<C>]) -> Expr<C> {
        self.eta.iter().zip(v).map(|(a, b)| a * b).sum()
    }

    /// `eta (x) eta` as a bilinear form.
    pub fn eta_eta(&self) -> TensorField<C> {
        TensorField::from_fn(0, 2, self.dim(), |i| &self.eta[i[0]] * &self.eta[i[1]])
    }
}

pub(crate) fn basis<C: Scalar>(dim: usize, i: usize) -> Vec<Expr<C>> {
    (0..dim).map(|k| if k == i { Expr::one() } else { Expr::zero() }).collect()
}

fn axpy<C: Scalar>(acc: &mut [Expr<C>], k: &Expr<C>, v: &[Expr<C>]) {
    if k.is_zero() {
        return;
    }
    for (a, x) in acc.iter_mut().zip(v) {
        if !x.is_zero() {
            *a = &*a + &(k * x);
        }
    }
}

pub(crate) fn bilinear<C: Scalar>(b: &TensorField<C>, u: &[Expr<C>], v: &[Expr<C>]) -> Expr<C> {
    let mut acc = Expr::zero();
    for (i, ui) in u.iter().enumerate().filter(|(_, e)| !e.is_zero()) {
        for (j, vj) in v.iter().enumerate().filter(|(_, e)| !e.is_zero()) {
            acc = &acc + &(&(ui * vj) * b.get(&[i, j]));
        }
    }
    acc
}

/// Residual of one structure axiom or identity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AxiomCheck<C> {
    pub id: &'static str,
    pub statement: &'static str,
    pub residual: TensorField<C>,
}

impl<C: Scalar> AxiomCheck<C> {
    pub fn holds(&self) -> bool {
        self.residual.is_zero()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StructureReport<C> {
    pub axioms: Vec<AxiomCheck<C>>,
    /// The sign variant `(nabla_P phi)Q = h(phi P, Q) zeta - eta(Q) phi P`.
    pub alternate_phi_derivative: AxiomCheck<C>,
    pub kenmotsu: bool,
}

impl<C: Scalar> StructureReport<C> {
    pub fn get(&self, id: &str) -> Option<&AxiomCheck<C>> {
        self.axioms
            .iter()
            .chain(std::iter::once(&self.alternate_phi_derivative))
            .find(|a| a.id == id)
    }

    pub fn almost_contact(&self) -> bool {
        self.axioms
            .iter()
            .filter(|a| a.id.starts_with("2.1") || ["2.2", "2.3", "2.4"].contains(&a.id))
            .all(AxiomCheck::holds)
    }
}

/// `(nabla_{E_i} phi) E_j` in frame components.
fn phi_derivative<C: Scalar>(
    m: &FrameManifold<C>,
    a: &AlmostContactData<C>,
    curv: &Curvature<C>,
    i: usize,
    j: usize,
) -> Vec<Expr<C>> {
    let conn = &curv.connection;
    let first = m.covariant_derivative(conn, i, &a.phi[j]);
    let second = a.apply_phi(&conn.covariant(i, j));
    first.iter().zip(&second).map(|(x, y)| x - y).collect()
}

/// Checks the almost-contact axioms and the two Kenmotsu conditions on the
/// frame basis. Failures are reported through nonzero residuals.
pub fn verify_structure<C: Scalar>(
    m: &FrameManifold<C>,
    a: &AlmostContactData<C>,
    curv: &Curvature<C>,
) -> StructureReport<C> {
    let dim = m.dim();
    let h = |i: usize, j: usize| Expr::constant(m.metric()[i][j].clone());
    let phi_e: Vec<Vec<Expr<C>>> = a.phi.clone();
    let e = |i: usize| basis::<C>(dim, i);

    let mut axioms = Vec::new();
    axioms.push(AxiomCheck {
        id: "2.1a",
        statement: "phi^2 P = -P + eta(P) zeta",
        residual: TensorField::from_fn(1, 1, dim, |x| {
            let (j, k) = (x[0], x[1]);
            let sq = a.apply_phi(&phi_e[j]);
            let id = if j == k { Expr::one() } else { Expr::zero() };
            &(&sq[k] + &id) - &(&a.eta[j] * &a.zeta[k])
        }),
    });
    axioms.push(AxiomCheck {
        id: "2.1b",
        statement: "eta(zeta) = 1",
        residual: TensorField::from_fn(0, 0, dim, |_| &a.eta_of(&a.zeta) - &Expr::one()),
    });
    axioms.push(AxiomCheck {
        id: "2.1c",
        statement: "eta o phi = 0",
        residual: TensorField::from_fn(0, 1, dim, |x| a.eta_of(&phi_e[x[0]])),
    });
    axioms.push(AxiomCheck {
        id: "2.1d",
        statement: "phi zeta = 0",
        residual: TensorField::vector(a.apply_phi(&a.zeta)),
    });
    axioms.push(AxiomCheck {
        id: "2.2",
        statement: "h(phi P, phi Q) = h(P, Q) - eta(P) eta(Q)",
        residual: TensorField::from_fn(0, 2, dim, |x| {
            let (i, j) = (x[0], x[1]);
            &(&m.inner(&phi_e[i], &phi_e[j]) - &h(i, j)) + &(&a.eta[i] * &a.eta[j])
        }),
    });
    axioms.push(AxiomCheck {
        id: "2.3",
        statement: "h(P, phi Q) = -h(phi P, Q)",
        residual: TensorField::from_fn(0, 2, dim, |x| {
            let (i, j) = (x[0], x[1]);
            &m.inner(&e(i), &phi_e[j]) + &m.inner(&phi_e[i], &e(j))
        }),
    });
    axioms.push(AxiomCheck {
        id: "2.4",
        statement: "h(P, zeta) = eta(P)",
        residual: TensorField::from_fn(0, 1, dim, |x| &m.inner(&e(x[0]), &a.zeta) - &a.eta[x[0]]),
    });

    let derivs: Vec<Vec<Vec<Expr<C>>>> = (0..dim)
        .map(|i| (0..dim).map(|j| phi_derivative(m, a, curv, i, j)).collect())
        .collect();
    axioms.push(AxiomCheck {
        id: "2.5",
        statement: "(nabla_P phi) Q = -h(P, phi Q) zeta - eta(Q) phi P",
        residual: TensorField::from_fn(1, 2, dim, |x| {
            let (i, j, k) = (x[0], x[1], x[2]);
            let hp = m.inner(&e(i), &phi_e[j]);
            &(&derivs[i][j][k] + &(&hp * &a.zeta[k])) + &(&a.eta[j] * &phi_e[i][k])
        }),
    });
    let alternate = AxiomCheck {
        id: "2.5-alt",
        statement: "(nabla_P phi) Q = h(phi P, Q) zeta - eta(Q) phi P",
        residual: TensorField::from_fn(1, 2, dim, |x| {
            let (i, j, k) = (x[0], x[1], x[2]);
            let hp = m.inner(&phi_e[i], &e(j));
            &(&derivs[i][j][k] - &(&hp * &a.zeta[k])) + &(&a.eta[j] * &phi_e[i][k])
        }),
    };
    axioms.push(AxiomCheck {
        id: "2.6",
        statement: "nabla_P zeta = P - eta(P) zeta",
        residual: TensorField::from_fn(1, 1, dim, |x| {
            let (i, k) = (x[0], x[1]);
            let d = m.covariant_derivative(&curv.connection, i, &a.zeta);
            let id = if i == k { Expr::one() } else { Expr::zero() };
            &(&d[k] - &id) + &(&a.eta[i] * &a.zeta[k])
        }),
    });

    let kenmotsu = axioms.iter().all(AxiomCheck::holds);
    StructureReport {
        axioms,
        alternate_phi_derivative: alternate,
        kenmotsu,
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdentitySuite<C> {
    /// Set when the structure is not Kenmotsu; the residuals are then
    /// informational rather than theorems.
    pub informational: bool,
    pub identities: Vec<AxiomCheck<C>>,
}

impl<C: Scalar> IdentitySuite<C> {
    pub fn all_hold(&self) -> bool {
        self.identities.iter().all(AxiomCheck::holds)
    }

    pub fn get(&self, id: &str) -> Option<&AxiomCheck<C>> {
        self.identities.iter().find(|a| a.id == id)
    }
}

/// `(L_V h)(E_i, E_j) = V(h_ij) - h([V, E_i], E_j) - h(E_i, [V, E_j])`,
/// evaluated from brackets only (no connection).
pub fn lie_derivative_from_brackets<C: Scalar>(m: &FrameManifold<C>, v: &[Expr<C>]) -> TensorField<C> {
    let dim = m.dim();
    let c = m.structure_functions();
    let brackets: Vec<Vec<Expr<C>>> = (0..dim)
        .map(|i| {
            (0..dim)
                .map(|l| {
                    let mut acc = -m.apply(i, &v[l]);
                    for (k, vk) in v.iter().enumerate() {
                        acc = &acc + &(vk * c.get(k, i, l));
                    }
                    acc
                })
                .collect()
        })
        .collect();
    TensorField::from_fn(0, 2, dim, |x| {
        let (i, j) = (x[0], x[1]);
        let e_i = basis::<C>(dim, i);
        let e_j = basis::<C>(dim, j);
        -(&m.inner(&brackets[i], &e_j) + &m.inner(&e_i, &brackets[j]))
    })
}

/// Residuals of the standard Kenmotsu curvature identities on every frame
/// pair or triple.
pub fn identity_suite<C: Scalar>(
    m: &FrameManifold<C>,
    a: &AlmostContactData<C>,
    curv: &Curvature<C>,
) -> IdentitySuite<C> {
    let dim = m.dim();
    let n2 = Expr::int(2 * a.n as i64);
    let h = |i: usize, j: usize| Expr::constant(m.metric()[i][j].clone());
    let e = |i: usize| basis::<C>(dim, i);
    let eta = &a.eta;
    let zeta = &a.zeta;
    let mut ids = Vec::new();

    ids.push(AxiomCheck {
        id: "2.7",
        statement: "eta(R(P,Q)W) = h(P,W) eta(Q) - h(Q,W) eta(P)",
        residual: TensorField::from_fn(0, 3, dim, |x| {
            let (i, j, k) = (x[0], x[1], x[2]);
            let r = curv.apply_riemann(&e(i), &e(j), &e(k));
            &(&a.eta_of(&r) - &(&h(i, k) * &eta[j])) + &(&h(j, k) * &eta[i])
        }),
    });
    ids.push(AxiomCheck {
        id: "2.8",
        statement: "R(P,Q) zeta = eta(P) Q - eta(Q) P",
        residual: TensorField::from_fn(1, 2, dim, |x| {
            let (i, j, l) = (x[0], x[1], x[2]);
            let r = curv.apply_riemann(&e(i), &e(j), zeta);
            let mut expect = vec![Expr::zero(); dim];
            axpy(&mut expect, &eta[i], &e(j));
            axpy(&mut expect, &-&eta[j], &e(i));
            &r[l] - &expect[l]
        }),
    });
    ids.push(AxiomCheck {
        id: "2.9",
        statement: "R(P,zeta) Q = h(P,Q) zeta - eta(Q) P",
        residual: TensorField::from_fn(1, 2, dim, |x| {
            let (i, j, l) = (x[0], x[1], x[2]);
            let r = curv.apply_riemann(&e(i), zeta, &e(j));
            let mut expect = vec![Expr::zero(); dim];
            axpy(&mut expect, &h(i, j), zeta);
            axpy(&mut expect, &-&eta[j], &e(i));
            &r[l] - &expect[l]
        }),
    });
    ids.push(AxiomCheck {
        id: "2.10",
        statement: "Ric(P, zeta) = -2n eta(P)",
        residual: TensorField::from_fn(0, 1, dim, |x| {
            &bilinear(&curv.ricci, &e(x[0]), zeta) + &(&n2 * &eta[x[0]])
        }),
    });
    ids.push(AxiomCheck {
        id: "2.11",
        statement: "Ric(phi P, phi Q) = Ric(P,Q) + 2n eta(P) eta(Q)",
        residual: TensorField::from_fn(0, 2, dim, |x| {
            let (i, j) = (x[0], x[1]);
            let lhs = bilinear(&curv.ricci, &a.phi[i], &a.phi[j]);
            &(&lhs - curv.ricci.get(&[i, j])) - &(&n2 * &(&eta[i] * &eta[j]))
        }),
    });
    ids.push(AxiomCheck {
        id: "2.12",
        statement: "(nabla_P eta) Q = h(P,Q) - eta(P) eta(Q)",
        residual: TensorField::from_fn(0, 2, dim, |x| {
            let (i, j) = (x[0], x[1]);
            let mut d = m.apply(i, &eta[j]);
            for (k, ek) in eta.iter().enumerate() {
                d = &d - &(curv.connection.get(i, j, k) * ek);
            }
            &(&d - &h(i, j)) + &(&eta[i] * &eta[j])
        }),
    });
    let lie_conn = m.lie_derivative_metric(&curv.connection, zeta);
    let lie_brackets = lie_derivative_from_brackets(m, zeta);
    ids.push(AxiomCheck {
        id: "2.13",
        statement: "(L_zeta h)(P,Q) = h(nabla_P zeta, Q) + h(P, nabla_Q zeta)",
        residual: lie_brackets.sub(&lie_conn),
    });
    let expected = m.metric_tensor().sub(&a.eta_eta()).scale(&Expr::int(2));
    ids.push(AxiomCheck {
        id: "2.14",
        statement: "(L_zeta h)(P,Q) = 2[h(P,Q) - eta(P) eta(Q)]",
        residual: lie_conn.sub(&expected),
    });

    IdentitySuite {
        informational: !verify_structure(m, a, curv).kenmotsu,
        identities: ids,
    }
}

/// `T*(P,Q) = 1/2 trace(Z -> phi(R(P, phi Q) Z))`.
pub fn star_ricci_direct<C: Scalar>(a: &AlmostContactData<C>, curv: &Curvature<C>) -> TensorField<C> {
    let dim = a.dim();
    let half = C::one() / C::from_int(2);
    TensorField::from_fn(0, 2, dim, |x| {
        let (i, j) = (x[0], x[1]);
        let e_i = basis::<C>(dim, i);
        let mut tr = Expr::zero();
        for k in 0..dim {
            let r = curv.apply_riemann(&e_i, &a.phi[j], &basis(dim, k));
            tr = &tr + &a.apply_phi(&r)[k];
        }
        tr.scale(&half)
    })
}

/// `T* = Ric + (2n - 1) h + eta (x) eta`, valid on Kenmotsu manifolds.
pub fn star_ricci_formula<C: Scalar>(
    m: &FrameManifold<C>,
    a: &AlmostContactData<C>,
    ricci: &TensorField<C>,
) -> TensorField<C> {
    let k = Expr::int(2 * a.n as i64 - 1);
    ricci.add(&m.metric_tensor().scale(&k)).add(&a.eta_eta())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StarScalar<C> {
    /// `trace(T*)`.
    pub trace: Expr<C>,
    /// `R + 4 n^2`.
    pub shifted_scalar: Expr<C>,
}

impl<C: Scalar> StarScalar<C> {
    pub fn consistent(&self) -> bool {
        self.trace == self.shifted_scalar
    }
}

pub fn star_scalar<C: Scalar>(
    m: &FrameManifold<C>,
    a: &AlmostContactData<C>,
    star_ricci: &TensorField<C>,
    scalar: &Expr<C>,
) -> StarScalar<C> {
    let n = a.n as i64;
    StarScalar {
        trace: m.trace(star_ricci),
        shifted_scalar: scalar + &Expr::int(4 * n * n),
    }
}

pub fn is_symmetric<C: Scalar>(b: &TensorField<C>) -> bool {
    crate::frame::checks::ricci_symmetric(b).is_empty()
}
