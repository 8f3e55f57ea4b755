//! Manifolds presented by a moving frame.
//!
//! A [`FrameManifold`] is a chart plus `m` vector fields
//! `E_i = sum_a frame[i][a] d/dx_a` and a constant frame metric
//! `h_ij = h(E_i, E_j)`. All curvature data reduce to the structure functions
//! `[E_i, E_j] = sum_k c_ij^k E_k`.
//!
//! Sign conventions:
//!
//! * `R(X,Y)Z = nabla_X nabla_Y Z - nabla_Y nabla_X Z - nabla_[X,Y] Z`
//! * `Ric(X,Y) = trace(Z -> R(Z,X)Y)`
//!
//! Traces use the inverse frame metric, so for an orthonormal frame with
//! signs `eps_i` they reduce to `sum_i eps_i h(., E_i)`.

pub mod checks;
mod tensor;

pub use tensor::{multi_indices, TensorField};

use thiserror::Error;

use crate::scalar::Scalar;
use crate::symscalar::{Expr, SymError, Symbol};

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum GeometryError {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("frame is not invertible inside the expression algebra")]
    NonInvertibleFrame,
    #[error("supplied inverse frame does not invert the frame")]
    BadInverseFrame,
    #[error("invalid metric: {0}")]
    BadMetric(String),
    #[error("structure functions violate {0}")]
    InvalidStructure(String),
    #[error(transparent)]
    Sym(#[from] SymError),
}

/// `c[i][j][k]` with `[E_i, E_j] = sum_k c[i][j][k] E_k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StructureFunctions<C> {
    dim: usize,
    c: Vec<Expr<C>>,
}

impl<C: Scalar> StructureFunctions<C> {
    pub fn from_fn(dim: usize, mut f: impl FnMut(usize, usize, usize) -> Expr<C>) -> Self {
        let mut c = Vec::with_capacity(dim * dim * dim);
        for i in 0..dim {
            for j in 0..dim {
                for k in 0..dim {
                    c.push(f(i, j, k));
                }
            }
        }
        StructureFunctions { dim, c }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, i: usize, j: usize, k: usize) -> &Expr<C> {
        &self.c[(i * self.dim + j) * self.dim + k]
    }

    /// Frame components of `[E_i, E_j]`.
    pub fn bracket(&self, i: usize, j: usize) -> Vec<Expr<C>> {
        (0..self.dim).map(|k| self.get(i, j, k).clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.c.iter().all(Expr::is_zero)
    }
}

/// `gamma[i][j][k]` with `nabla_{E_i} E_j = sum_k gamma[i][j][k] E_k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Connection<C> {
    dim: usize,
    gamma: Vec<Expr<C>>,
}

impl<C: Scalar> Connection<C> {
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, i: usize, j: usize, k: usize) -> &Expr<C> {
        &self.gamma[(i * self.dim + j) * self.dim + k]
    }

    /// Frame components of `nabla_{E_i} E_j`.
    pub fn covariant(&self, i: usize, j: usize) -> Vec<Expr<C>> {
        (0..self.dim).map(|k| self.get(i, j, k).clone()).collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FrameManifold<C> {
    dim: usize,
    chart: Vec<Symbol>,
    frame: Option<Vec<Vec<Expr<C>>>>,
    inverse_frame: Option<Vec<Vec<Expr<C>>>>,
    metric: Vec<Vec<C>>,
    metric_inverse: Vec<Vec<C>>,
    structure: StructureFunctions<C>,
}

impl<C: Scalar> FrameManifold<C> {
    /// Frame over a chart. `frame[i]` holds the coordinate components of `E_i`.
    /// Without `inverse_frame` the inverse is computed by elimination with
    /// unit pivots (single terms free of power factors).
    pub fn from_frame(
        chart: Vec<Symbol>,
        frame: Vec<Vec<Expr<C>>>,
        metric: Option<Vec<Vec<C>>>,
        inverse_frame: Option<Vec<Vec<Expr<C>>>>,
    ) -> Result<Self, GeometryError> {
        let dim = chart.len();
        if dim == 0 {
            return Err(GeometryError::DimensionMismatch("empty chart".into()));
        }
        if let Some(s) = chart.iter().find(|s| !s.is_coordinate()) {
            return Err(SymError::NotACoordinate(s.name().to_string()).into());
        }
        check_square(&frame, dim, "frame")?;
        let (metric, metric_inverse) = prepare_metric(metric, dim)?;
        let inverse = match inverse_frame {
            Some(g) => {
                check_square(&g, dim, "inverse frame")?;
                if !is_identity(&mat_mul(&frame, &g)) {
                    return Err(GeometryError::BadInverseFrame);
                }
                g
            }
            None => invert_frame(&frame).ok_or(GeometryError::NonInvertibleFrame)?,
        };

        let mut m = FrameManifold {
            dim,
            chart,
            frame: Some(frame),
            inverse_frame: Some(inverse),
            metric,
            metric_inverse,
            structure: StructureFunctions { dim, c: Vec::new() },
        };
        m.structure = m.brackets_from_frame()?;
        Ok(m)
    }

    /// Abstract frame given only by its structure functions. There is no
    /// chart, so every symbol is a parameter and frame derivatives vanish;
    /// antisymmetry and the Jacobi identity are validated here.
    pub fn from_structure(
        structure: StructureFunctions<C>,
        metric: Option<Vec<Vec<C>>>,
    ) -> Result<Self, GeometryError> {
        let dim = structure.dim();
        if dim == 0 {
            return Err(GeometryError::DimensionMismatch("empty frame".into()));
        }
        if structure.c.iter().any(|e| !e.is_spatially_constant()) {
            return Err(GeometryError::InvalidStructure(
                "coordinate dependence without a chart".into(),
            ));
        }
        let (metric, metric_inverse) = prepare_metric(metric, dim)?;
        let m = FrameManifold {
            dim,
            chart: Vec::new(),
            frame: None,
            inverse_frame: None,
            metric,
            metric_inverse,
            structure,
        };
        if let Some(v) = checks::antisymmetry(&m).first() {
            return Err(GeometryError::InvalidStructure(format!("antisymmetry at {:?}", v.index)));
        }
        if let Some(v) = checks::jacobi(&m).first() {
            return Err(GeometryError::InvalidStructure(format!(
                "the Jacobi identity at {:?}",
                v.index
            )));
        }
        Ok(m)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn chart(&self) -> &[Symbol] {
        &self.chart
    }

    pub fn frame(&self) -> Option<&[Vec<Expr<C>>]> {
        self.frame.as_deref()
    }

    /// `inverse[a][i]` with `d/dx_a = sum_i inverse[a][i] E_i`.
    pub fn inverse_frame(&self) -> Option<&[Vec<Expr<C>>]> {
        self.inverse_frame.as_deref()
    }

    pub fn is_abstract(&self) -> bool {
        self.frame.is_none()
    }

    pub fn metric(&self) -> &[Vec<C>] {
        &self.metric
    }

    pub fn metric_inverse(&self) -> &[Vec<C>] {
        &self.metric_inverse
    }

    /// `E_i(f)`.
    pub fn apply(&self, i: usize, f: &Expr<C>) -> Expr<C> {
        let Some(frame) = &self.frame else {
            return Expr::zero();
        };
        frame[i]
            .iter()
            .zip(&self.chart)
            .filter(|(coef, _)| !coef.is_zero())
            .map(|(coef, x)| coef * &f.partial(x).expect("chart symbols are coordinates"))
            .sum()
    }

    /// Frame components of a field given in coordinate components.
    pub fn coordinate_to_frame(&self, v: &[Expr<C>]) -> Result<Vec<Expr<C>>, GeometryError> {
        let inv = self
            .inverse_frame
            .as_ref()
            .ok_or_else(|| GeometryError::DimensionMismatch("abstract frame has no chart".into()))?;
        if v.len() != self.dim {
            return Err(GeometryError::DimensionMismatch(format!(
                "field has {} components, chart has {}",
                v.len(),
                self.dim
            )));
        }
        Ok((0..self.dim)
            .map(|i| (0..self.dim).map(|a| &v[a] * &inv[a][i]).sum())
            .collect())
    }

    /// `h(u, v)` for frame components.
    pub fn inner(&self, u: &[Expr<C>], v: &[Expr<C>]) -> Expr<C> {
        let mut acc = Expr::zero();
        for i in 0..self.dim {
            for j in 0..self.dim {
                let h = &self.metric[i][j];
                if !h.is_zero() && !u[i].is_zero() && !v[j].is_zero() {
                    acc = &acc + &(&u[i] * &v[j]).scale(h);
                }
            }
        }
        acc
    }

    /// The 1-form `h(v, .)`.
    pub fn lower(&self, v: &[Expr<C>]) -> Vec<Expr<C>> {
        (0..self.dim)
            .map(|j| (0..self.dim).map(|i| v[i].scale(&self.metric[i][j])).sum())
            .collect()
    }

    /// Metric trace of a bilinear form.
    pub fn trace(&self, b: &TensorField<C>) -> Expr<C> {
        assert_eq!(b.valence(), (0, 2), "trace needs a bilinear form");
        let mut acc = Expr::zero();
        for i in 0..self.dim {
            for j in 0..self.dim {
                acc = &acc + &b.get(&[i, j]).scale(&self.metric_inverse[i][j]);
            }
        }
        acc
    }

    /// The frame metric as a bilinear form.
    pub fn metric_tensor(&self) -> TensorField<C> {
        TensorField::from_fn(0, 2, self.dim, |i| Expr::constant(self.metric[i[0]][i[1]].clone()))
    }

    fn brackets_from_frame(&self) -> Result<StructureFunctions<C>, GeometryError> {
        let frame = self.frame.as_ref().expect("chart frame");
        let inv = self.inverse_frame.as_ref().expect("inverse frame");
        let m = self.dim;
        let mut c = Vec::with_capacity(m * m * m);
        for i in 0..m {
            for j in 0..m {
                // coordinate components of [E_i, E_j]
                let b: Vec<Expr<C>> = (0..m)
                    .map(|a| &self.apply(i, &frame[j][a]) - &self.apply(j, &frame[i][a]))
                    .collect();
                for k in 0..m {
                    c.push((0..m).map(|a| &b[a] * &inv[a][k]).sum());
                }
            }
        }
        Ok(StructureFunctions { dim: m, c })
    }

    pub fn structure_functions(&self) -> &StructureFunctions<C> {
        &self.structure
    }

    /// Levi-Civita connection from the Koszul formula. With a constant frame
    /// metric the derivative terms drop out:
    /// `2 h(nabla_i E_j, E_k) = -h(E_i,[E_j,E_k]) - h(E_j,[E_i,E_k]) + h(E_k,[E_i,E_j])`.
    pub fn koszul_connection(&self) -> Connection<C> {
        let m = self.dim;
        let c = &self.structure;
        let half = C::one() / C::from_int(2);
        // h(E_a, [E_b, E_c])
        let hb = |a: usize, b: usize, cc: usize| -> Expr<C> {
            (0..m).map(|l| c.get(b, cc, l).scale(&self.metric[a][l])).sum()
        };
        let mut lowered = vec![Expr::zero(); m * m * m];
        for i in 0..m {
            for j in 0..m {
                for k in 0..m {
                    let v = &(&hb(k, i, j) - &hb(i, j, k)) - &hb(j, i, k);
                    lowered[(i * m + j) * m + k] = v.scale(&half);
                }
            }
        }
        let mut gamma = Vec::with_capacity(m * m * m);
        for i in 0..m {
            for j in 0..m {
                for p in 0..m {
                    gamma.push(
                        (0..m)
                            .map(|k| lowered[(i * m + j) * m + k].scale(&self.metric_inverse[p][k]))
                            .sum(),
                    );
                }
            }
        }
        Connection { dim: m, gamma }
    }

    /// Frame components of `nabla_{E_i} V`.
    pub fn covariant_derivative(&self, conn: &Connection<C>, i: usize, v: &[Expr<C>]) -> Vec<Expr<C>> {
        (0..self.dim)
            .map(|k| {
                let mut acc = self.apply(i, &v[k]);
                for (j, vj) in v.iter().enumerate() {
                    if !vj.is_zero() {
                        acc = &acc + &(vj * conn.get(i, j, k));
                    }
                }
                acc
            })
            .collect()
    }

    /// Curvature `(1,3)` tensor, index order `[i, j, k, l]` for the
    /// `E_l`-component of `R(E_i, E_j) E_k`.
    pub fn riemann(&self, conn: &Connection<C>) -> TensorField<C> {
        let m = self.dim;
        let c = &self.structure;
        TensorField::from_fn(1, 3, m, |idx| {
            let (i, j, k, l) = (idx[0], idx[1], idx[2], idx[3]);
            let mut acc = &self.apply(i, conn.get(j, k, l)) - &self.apply(j, conn.get(i, k, l));
            for p in 0..m {
                acc = &acc + &(conn.get(j, k, p) * conn.get(i, p, l));
                acc = &acc - &(conn.get(i, k, p) * conn.get(j, p, l));
                acc = &acc - &(c.get(i, j, p) * conn.get(p, k, l));
            }
            acc
        })
    }

    /// `Ric(E_i, E_j) = sum_a [E_a-component of R(E_a, E_i) E_j]`.
    pub fn ricci(&self, riemann: &TensorField<C>) -> TensorField<C> {
        TensorField::from_fn(0, 2, self.dim, |idx| {
            (0..self.dim)
                .map(|a| riemann.get(&[a, idx[0], idx[1], a]).clone())
                .sum()
        })
    }

    pub fn scalar_curvature(&self, ricci: &TensorField<C>) -> Expr<C> {
        self.trace(ricci)
    }

    /// `(L_V h)(E_i, E_j) = h(nabla_i V, E_j) + h(E_i, nabla_j V)`.
    pub fn lie_derivative_metric(&self, conn: &Connection<C>, v: &[Expr<C>]) -> TensorField<C> {
        let lowered: Vec<Vec<Expr<C>>> = (0..self.dim)
            .map(|i| self.lower(&self.covariant_derivative(conn, i, v)))
            .collect();
        TensorField::from_fn(0, 2, self.dim, |idx| {
            &lowered[idx[0]][idx[1]] + &lowered[idx[1]][idx[0]]
        })
    }

    pub fn divergence(&self, conn: &Connection<C>, v: &[Expr<C>]) -> Expr<C> {
        (0..self.dim)
            .map(|k| self.covariant_derivative(conn, k, v)[k].clone())
            .sum()
    }

    pub fn gradient(&self, f: &Expr<C>) -> Vec<Expr<C>> {
        let df: Vec<Expr<C>> = (0..self.dim).map(|i| self.apply(i, f)).collect();
        (0..self.dim)
            .map(|j| {
                (0..self.dim)
                    .map(|i| df[i].scale(&self.metric_inverse[i][j]))
                    .sum()
            })
            .collect()
    }

    pub fn laplacian(&self, conn: &Connection<C>, f: &Expr<C>) -> Expr<C> {
        self.divergence(conn, &self.gradient(f))
    }
}

/// The connection and curvature quantities of one manifold, computed once.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Curvature<C> {
    pub connection: Connection<C>,
    pub riemann: TensorField<C>,
    pub ricci: TensorField<C>,
    pub scalar: Expr<C>,
}

impl<C: Scalar> Curvature<C> {
    pub fn compute(m: &FrameManifold<C>) -> Self {
        let connection = m.koszul_connection();
        let riemann = m.riemann(&connection);
        let ricci = m.ricci(&riemann);
        let scalar = m.scalar_curvature(&ricci);
        Curvature {
            connection,
            riemann,
            ricci,
            scalar,
        }
    }

    /// Frame components of `R(u, v) w`.
    pub fn apply_riemann(&self, u: &[Expr<C>], v: &[Expr<C>], w: &[Expr<C>]) -> Vec<Expr<C>> {
        let m = u.len();
        let mut out = vec![Expr::zero(); m];
        for i in (0..m).filter(|&i| !u[i].is_zero()) {
            for j in (0..m).filter(|&j| !v[j].is_zero()) {
                let uv = &u[i] * &v[j];
                for k in (0..m).filter(|&k| !w[k].is_zero()) {
                    let coef = &uv * &w[k];
                    for (l, slot) in out.iter_mut().enumerate() {
                        let r = self.riemann.get(&[i, j, k, l]);
                        if !r.is_zero() {
                            *slot = &*slot + &(&coef * r);
                        }
                    }
                }
            }
        }
        out
    }
}

fn check_square<T>(rows: &[Vec<T>], dim: usize, what: &str) -> Result<(), GeometryError> {
    if rows.len() != dim || rows.iter().any(|r| r.len() != dim) {
        return Err(GeometryError::DimensionMismatch(format!(
            "{what} must be {dim}x{dim}"
        )));
    }
    Ok(())
}

fn prepare_metric<C: Scalar>(
    metric: Option<Vec<Vec<C>>>,
    dim: usize,
) -> Result<(Vec<Vec<C>>, Vec<Vec<C>>), GeometryError> {
    let metric = metric.unwrap_or_else(|| {
        (0..dim)
            .map(|i| (0..dim).map(|j| if i == j { C::one() } else { C::zero() }).collect())
            .collect()
    });
    check_square(&metric, dim, "metric")?;
    for i in 0..dim {
        for j in 0..i {
            if metric[i][j] != metric[j][i] {
                return Err(GeometryError::BadMetric(format!("not symmetric at ({i}, {j})")));
            }
        }
    }
    let inverse = invert_constant(&metric)
        .ok_or_else(|| GeometryError::BadMetric("degenerate".into()))?;
    Ok((metric, inverse))
}

/// Gauss-Jordan over the coefficient field.
pub(crate) fn invert_constant<C: Scalar>(a: &[Vec<C>]) -> Option<Vec<Vec<C>>> {
    let n = a.len();
    let mut aug: Vec<Vec<C>> = a
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { C::one() } else { C::zero() }));
            r
        })
        .collect();
    for col in 0..n {
        let p = (col..n).find(|&r| !aug[r][col].is_zero())?;
        aug.swap(col, p);
        let pv = aug[col][col].clone();
        for e in aug[col].iter_mut() {
            *e = e.clone() / pv.clone();
        }
        for r in 0..n {
            if r != col && !aug[r][col].is_zero() {
                let f = aug[r][col].clone();
                for k in 0..2 * n {
                    let v = aug[col][k].clone() * f.clone();
                    aug[r][k] = aug[r][k].clone() - v;
                }
            }
        }
    }
    Some(aug.into_iter().map(|r| r[n..].to_vec()).collect())
}

fn invert_frame<C: Scalar>(f: &[Vec<Expr<C>>]) -> Option<Vec<Vec<Expr<C>>>> {
    let n = f.len();
    let mut aug: Vec<Vec<Expr<C>>> = f
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { Expr::one() } else { Expr::zero() }));
            r
        })
        .collect();
    for col in 0..n {
        let p = (col..n).find(|&r| {
            aug[r][col]
                .as_single_term()
                .map_or(false, |t| t.is_unit())
        })?;
        aug.swap(col, p);
        let t = aug[col][col].as_single_term().unwrap();
        for e in aug[col].iter_mut() {
            *e = e.divide_by_term(&t).ok()?;
        }
        let pivot_row = aug[col].clone();
        for r in 0..n {
            if r != col && !aug[r][col].is_zero() {
                let factor = aug[r][col].clone();
                for (e, p) in aug[r].iter_mut().zip(&pivot_row) {
                    *e = &*e - &(&factor * p);
                }
            }
        }
    }
    Some(aug.into_iter().map(|r| r[n..].to_vec()).collect())
}

fn mat_mul<C: Scalar>(a: &[Vec<Expr<C>>], b: &[Vec<Expr<C>>]) -> Vec<Vec<Expr<C>>> {
    let n = a.len();
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| (0..n).map(|k| &a[i][k] * &b[k][j]).sum())
                .collect()
        })
        .collect()
}

fn is_identity<C: Scalar>(a: &[Vec<Expr<C>>]) -> bool {
    a.iter().enumerate().all(|(i, row)| {
        row.iter()
            .enumerate()
            .all(|(j, e)| if i == j { e.is_one() } else { e.is_zero() })
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symscalar::{parse_expr, SymbolTable};
    use num_rational::BigRational;

    type E = Expr<BigRational>;

    fn build(coords: &[&str], rows: &[&[&str]]) -> FrameManifold<BigRational> {
        let table = SymbolTable::new(coords);
        let frame = rows
            .iter()
            .map(|r| r.iter().map(|s| parse_expr(s, &table).unwrap()).collect())
            .collect();
        FrameManifold::from_frame(table.coordinates().to_vec(), frame, None, None).unwrap()
    }

    fn euclid3() -> FrameManifold<BigRational> {
        build(
            &["x1", "x2", "x3"],
            &[&["1", "0", "0"], &["0", "1", "0"], &["0", "0", "1"]],
        )
    }

    fn kenmotsu3() -> FrameManifold<BigRational> {
        build(
            &["x1", "x2", "x3"],
            &[
                &["exp(-x3)", "0", "0"],
                &["0", "exp(-x3)", "0"],
                &["0", "0", "1"],
            ],
        )
    }

    #[test]
    fn flat_frame_is_flat() {
        let m = euclid3();
        assert!(m.structure_functions().is_zero());
        let curv = Curvature::compute(&m);
        assert!(curv.riemann.is_zero());
        assert!(curv.ricci.is_zero());
        assert!(curv.scalar.is_zero());
        let f = parse_expr("7", &SymbolTable::new(&["x1", "x2", "x3"])).unwrap();
        assert!(m.gradient(&f).iter().all(E::is_zero));
        assert!(m.laplacian(&curv.connection, &f).is_zero());
    }

    #[test]
    fn warped_3d_has_constant_negative_curvature() {
        let m = kenmotsu3();
        // [E1, E3] = E1
        assert!(m.structure_functions().get(0, 2, 0).is_one());
        let curv = Curvature::compute(&m);
        assert_eq!(curv.scalar, E::int(-6));
    }

    #[test]
    fn non_unit_pivot_is_rejected() {
        let table = SymbolTable::new(&["x1", "x2"]);
        let frame = vec![
            vec![parse_expr("x1", &table).unwrap(), E::zero()],
            vec![E::zero(), E::one()],
        ];
        assert_eq!(
            FrameManifold::from_frame(table.coordinates().to_vec(), frame, None, None),
            Err(GeometryError::NonInvertibleFrame)
        );
    }

    #[test]
    fn metric_validation() {
        let table = SymbolTable::new(&["x1", "x2"]);
        let frame = vec![vec![E::one(), E::zero()], vec![E::zero(), E::one()]];
        let q = |n: i64| BigRational::from_integer(n.into());
        let asym = vec![vec![q(1), q(1)], vec![q(0), q(1)]];
        assert!(matches!(
            FrameManifold::from_frame(table.coordinates().to_vec(), frame.clone(), Some(asym), None),
            Err(GeometryError::BadMetric(_))
        ));
        let degenerate = vec![vec![q(1), q(1)], vec![q(1), q(1)]];
        assert!(matches!(
            FrameManifold::from_frame(table.coordinates().to_vec(), frame, Some(degenerate), None),
            Err(GeometryError::BadMetric(_))
        ));
    }

    #[test]
    fn abstract_structure_requires_jacobi() {
        // so(3)-like constants that violate Jacobi after one sign change
        let good = StructureFunctions::<BigRational>::from_fn(3, |i, j, k| {
            let eps = match (i, j, k) {
                (0, 1, 2) | (1, 2, 0) | (2, 0, 1) => 1,
                (1, 0, 2) | (2, 1, 0) | (0, 2, 1) => -1,
                _ => 0,
            };
            E::int(eps)
        });
        assert!(FrameManifold::from_structure(good, None).is_ok());
        // [E1,E2] = E1, [E2,E3] = E2, [E1,E3] = 0 breaks Jacobi
        let bad = StructureFunctions::<BigRational>::from_fn(3, |i, j, k| match (i, j, k) {
            (0, 1, 0) | (1, 2, 1) => E::one(),
            (1, 0, 0) | (2, 1, 1) => E::int(-1),
            _ => E::zero(),
        });
        assert!(matches!(
            FrameManifold::from_structure(bad, None),
            Err(GeometryError::InvalidStructure(_))
        ));
    }
}
