//! Exact structural invariants of frame geometry. Each check returns the
//! list of nonzero residuals; an empty list means the identity holds.

use super::{Connection, FrameManifold, TensorField};
use crate::scalar::Scalar;
use crate::symscalar::Expr;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation<C> {
    pub check: &'static str,
    pub index: Vec<usize>,
    pub residual: Expr<C>,
}

fn collect<C: Scalar>(
    check: &'static str,
    arity: usize,
    dim: usize,
    mut residual: impl FnMut(&[usize]) -> Expr<C>,
) -> Vec<Violation<C>> {
    super::multi_indices(arity, dim)
        .filter_map(|idx| {
            let r = residual(&idx);
            (!r.is_zero()).then(|| Violation {
                check,
                index: idx,
                residual: r,
            })
        })
        .collect()
}

/// `c_ij^k + c_ji^k = 0`.
pub fn antisymmetry<C: Scalar>(m: &FrameManifold<C>) -> Vec<Violation<C>> {
    let c = m.structure_functions();
    collect("antisymmetry", 3, m.dim(), |i| c.get(i[0], i[1], i[2]) + c.get(i[1], i[0], i[2]))
}

/// Cyclic sum of `[[E_i, E_j], E_k]`, expanded through the structure functions
/// with the Leibniz rule.
pub fn jacobi<C: Scalar>(m: &FrameManifold<C>) -> Vec<Violation<C>> {
    let c = m.structure_functions();
    let dim = m.dim();
    let nested = |i: usize, j: usize, k: usize, p: usize| -> Expr<C> {
        let mut acc = -m.apply(k, c.get(i, j, p));
        for l in 0..dim {
            acc = &acc + &(c.get(i, j, l) * c.get(l, k, p));
        }
        acc
    };
    collect("jacobi", 4, dim, |x| {
        let (i, j, k, p) = (x[0], x[1], x[2], x[3]);
        &(&nested(i, j, k, p) + &nested(j, k, i, p)) + &nested(k, i, j, p)
    })
}

/// `nabla_i E_j - nabla_j E_i - [E_i, E_j] = 0`.
pub fn torsion_free<C: Scalar>(m: &FrameManifold<C>, conn: &Connection<C>) -> Vec<Violation<C>> {
    let c = m.structure_functions();
    collect("torsion", 3, m.dim(), |x| {
        let (i, j, k) = (x[0], x[1], x[2]);
        &(conn.get(i, j, k) - conn.get(j, i, k)) - c.get(i, j, k)
    })
}

/// `h(nabla_i E_j, E_k) + h(E_j, nabla_i E_k) = E_i(h_jk)`; the right side
/// vanishes for constant frame metrics.
pub fn metric_compatible<C: Scalar>(m: &FrameManifold<C>, conn: &Connection<C>) -> Vec<Violation<C>> {
    let h = m.metric();
    let dim = m.dim();
    collect("metric-compatibility", 3, dim, |x| {
        let (i, j, k) = (x[0], x[1], x[2]);
        (0..dim)
            .map(|l| &conn.get(i, j, l).scale(&h[l][k]) + &conn.get(i, k, l).scale(&h[j][l]))
            .sum()
    })
}

fn lowered<C: Scalar>(m: &FrameManifold<C>, riemann: &TensorField<C>) -> TensorField<C> {
    let h = m.metric();
    let dim = m.dim();
    TensorField::from_fn(0, 4, dim, |x| {
        (0..dim)
            .map(|p| riemann.get(&[x[0], x[1], x[2], p]).scale(&h[p][x[3]]))
            .sum()
    })
}

/// `R_ijkl = -R_jikl = -R_ijlk = R_klij` with `R_ijkl = h(R(E_i,E_j)E_k, E_l)`,
/// plus the first Bianchi identity on the `(1,3)` tensor.
pub fn curvature_symmetries<C: Scalar>(
    m: &FrameManifold<C>,
    riemann: &TensorField<C>,
) -> Vec<Violation<C>> {
    let low = lowered(m, riemann);
    let dim = m.dim();
    let g = |i: usize, j: usize, k: usize, l: usize| low.get(&[i, j, k, l]).clone();
    let mut out = collect("skew-first-pair", 4, dim, |x| {
        &g(x[0], x[1], x[2], x[3]) + &g(x[1], x[0], x[2], x[3])
    });
    out.extend(collect("skew-last-pair", 4, dim, |x| {
        &g(x[0], x[1], x[2], x[3]) + &g(x[0], x[1], x[3], x[2])
    }));
    out.extend(collect("pair-exchange", 4, dim, |x| {
        &g(x[0], x[1], x[2], x[3]) - &g(x[2], x[3], x[0], x[1])
    }));
    out.extend(collect("first-bianchi", 4, dim, |x| {
        let (i, j, k, l) = (x[0], x[1], x[2], x[3]);
        &(riemann.get(&[i, j, k, l]) + riemann.get(&[j, k, i, l])) + riemann.get(&[k, i, j, l])
    }));
    out
}

pub fn ricci_symmetric<C: Scalar>(ricci: &TensorField<C>) -> Vec<Violation<C>> {
    collect("ricci-symmetry", 2, ricci.dim(), |x| {
        ricci.get(&[x[0], x[1]]) - ricci.get(&[x[1], x[0]])
    })
}

/// `2 div V = trace(L_V h)`.
pub fn divergence_matches_lie_trace<C: Scalar>(
    m: &FrameManifold<C>,
    conn: &Connection<C>,
    v: &[Expr<C>],
) -> Vec<Violation<C>> {
    let lie = m.lie_derivative_metric(conn, v);
    let r = &m.divergence(conn, v).scale(&C::from_int(2)) - &m.trace(&lie);
    collect("divergence-trace", 0, m.dim(), |_| r.clone())
}

/// Every structural invariant that must hold on any constructed manifold.
pub fn all<C: Scalar>(m: &FrameManifold<C>, curvature: &super::Curvature<C>) -> Vec<Violation<C>> {
    let mut out = antisymmetry(m);
    out.extend(jacobi(m));
    out.extend(torsion_free(m, &curvature.connection));
    out.extend(metric_compatible(m, &curvature.connection));
    out.extend(curvature_symmetries(m, &curvature.riemann));
    out.extend(ricci_symmetric(&curvature.ricci));
    out
}
