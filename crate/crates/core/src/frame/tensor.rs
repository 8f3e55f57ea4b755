use crate::scalar::Scalar;
use crate::symscalar::Expr;

/// Dense frame-component array of a `(p, q)` tensor field.
///
/// Components are stored row-major over `p + q` frame indices. Index order
/// is fixed by whoever produces the field; the conventions used in this
/// crate are:
///
/// * vectors `[k]`, 1-forms `[i]`, bilinear forms `[i, j]`;
/// * the curvature tensor `[i, j, k, l]` = `E_l`-component of `R(E_i, E_j) E_k`;
/// * (1,1) fields `[j, i]` = `E_i`-component of the image of `E_j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TensorField<C> {
    contravariant: usize,
    covariant: usize,
    dim: usize,
    components: Vec<Expr<C>>,
}

impl<C: Scalar> TensorField<C> {
    pub fn zeros(contravariant: usize, covariant: usize, dim: usize) -> Self {
        let len = dim.pow((contravariant + covariant) as u32);
        TensorField {
            contravariant,
            covariant,
            dim,
            components: vec![Expr::zero(); len],
        }
    }

    pub fn from_fn(
        contravariant: usize,
        covariant: usize,
        dim: usize,
        mut f: impl FnMut(&[usize]) -> Expr<C>,
    ) -> Self {
        let rank = contravariant + covariant;
        let components = multi_indices(rank, dim).map(|idx| f(&idx)).collect();
        TensorField {
            contravariant,
            covariant,
            dim,
            components,
        }
    }

    pub fn vector(components: Vec<Expr<C>>) -> Self {
        TensorField {
            contravariant: 1,
            covariant: 0,
            dim: components.len(),
            components,
        }
    }

    pub fn covector(components: Vec<Expr<C>>) -> Self {
        TensorField {
            contravariant: 0,
            covariant: 1,
            dim: components.len(),
            components,
        }
    }

    pub fn valence(&self) -> (usize, usize) {
        (self.contravariant, self.covariant)
    }

    pub fn rank(&self) -> usize {
        self.contravariant + self.covariant
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn components(&self) -> &[Expr<C>] {
        &self.components
    }

    fn offset(&self, idx: &[usize]) -> usize {
        assert_eq!(idx.len(), self.rank(), "index arity");
        idx.iter().fold(0, |acc, &i| {
            assert!(i < self.dim, "index {i} out of range for dimension {}", self.dim);
            acc * self.dim + i
        })
    }

    pub fn get(&self, idx: &[usize]) -> &Expr<C> {
        &self.components[self.offset(idx)]
    }

    pub fn set(&mut self, idx: &[usize], value: Expr<C>) {
        let o = self.offset(idx);
        self.components[o] = value;
    }

    pub fn is_zero(&self) -> bool {
        self.components.iter().all(Expr::is_zero)
    }

    /// `(index, value)` for every nonzero component, in index order.
    pub fn nonzero(&self) -> Vec<(Vec<usize>, Expr<C>)> {
        multi_indices(self.rank(), self.dim)
            .zip(&self.components)
            .filter(|(_, e)| !e.is_zero())
            .map(|(i, e)| (i, e.clone()))
            .collect()
    }

    pub fn map(&self, f: impl Fn(&Expr<C>) -> Expr<C>) -> Self {
        TensorField {
            components: self.components.iter().map(f).collect(),
            ..self.clone()
        }
    }

    pub fn zip_with(&self, other: &Self, f: impl Fn(&Expr<C>, &Expr<C>) -> Expr<C>) -> Self {
        assert_eq!(self.valence(), other.valence(), "valence mismatch");
        assert_eq!(self.dim, other.dim, "dimension mismatch");
        TensorField {
            components: self
                .components
                .iter()
                .zip(&other.components)
                .map(|(a, b)| f(a, b))
                .collect(),
            ..self.clone()
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.zip_with(other, |a, b| a - b)
    }

    pub fn scale(&self, k: &Expr<C>) -> Self {
        self.map(|e| e * k)
    }
}

/// All multi-indices of the given arity, row-major.
pub fn multi_indices(rank: usize, dim: usize) -> impl Iterator<Item = Vec<usize>> {
    let total = dim.pow(rank as u32);
    (0..total).map(move |mut flat| {
        let mut idx = vec![0; rank];
        for slot in idx.iter_mut().rev() {
            *slot = flat % dim;
            flat /= dim;
        }
        idx
    })
}
