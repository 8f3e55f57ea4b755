#![allow(dead_code)]

use kenmotsu::cli::{self, Loaded};
use kenmotsu::soliton::{Geometry, ParamValue, SolitonConvention};
use kenmotsu::{Expr, FrameManifold, Rational, SolitonInstance, Symbol, SymbolTable};
use proptest::prelude::*;

pub fn q(n: i64) -> Rational {
    Rational::from_integer(n.into())
}

pub fn qq(a: i64, b: i64) -> Rational {
    Rational::new(a.into(), b.into())
}

pub fn k(n: i64) -> Expr {
    Expr::int(n)
}

/// Parses with `x1..x5` as coordinates.
pub fn ex(text: &str) -> Expr {
    let table = SymbolTable::new(&["x1", "x2", "x3", "x4", "x5"]);
    kenmotsu::symscalar::parse_expr(text, &table).unwrap()
}

pub fn sym(name: &str) -> Expr {
    Expr::symbol(&Symbol::parameter(name))
}

pub fn loaded(name: &str) -> Loaded {
    cli::builtin(name).unwrap().load().unwrap()
}

pub fn geometry(name: &str) -> (Geometry<Rational>, Loaded) {
    let l = loaded(name);
    (Geometry::new(l.manifold.clone(), l.contact.clone()), l)
}

pub fn unit(dim: usize, i: usize) -> Vec<Expr> {
    (0..dim).map(|k| if k == i { Expr::one() } else { Expr::zero() }).collect()
}

pub fn instance(preset: &str, field: Vec<Expr>) -> SolitonInstance {
    let conv = SolitonConvention::<Rational>::preset(preset).unwrap();
    let kappa = conv.kappa_on_lie.then_some(ParamValue::Symbolic);
    SolitonInstance::new(conv, field, kappa, ParamValue::Symbolic, ParamValue::Symbolic).unwrap()
}

/// A diagonal frame `E_a = c_a exp(sum_b k_ab x_b) d/dx_a` with a constant
/// diagonal metric.
#[derive(Clone, Debug)]
pub struct DiagonalFrame {
    pub scale: Vec<i64>,
    pub rates: Vec<Vec<i64>>,
    pub metric: Vec<i64>,
}

impl DiagonalFrame {
    pub fn dim(&self) -> usize {
        self.scale.len()
    }

    pub fn build(&self) -> FrameManifold {
        let dim = self.dim();
        let chart: Vec<Symbol> = (1..=dim).map(|i| Symbol::coordinate(&format!("x{i}"))).collect();
        let frame = (0..dim)
            .map(|a| {
                (0..dim)
                    .map(|b| {
                        if a != b {
                            return Expr::zero();
                        }
                        let mut e = Expr::int(self.scale[a]);
                        for (c, &r) in self.rates[a].iter().enumerate() {
                            e = &e * &Expr::exp_of(&chart[c], q(r)).unwrap();
                        }
                        e
                    })
                    .collect()
            })
            .collect();
        let metric = (0..dim)
            .map(|i| (0..dim).map(|j| if i == j { q(self.metric[i]) } else { q(0) }).collect())
            .collect();
        FrameManifold::from_frame(chart, frame, Some(metric), None).unwrap()
    }
}

pub fn diagonal_frame() -> impl Strategy<Value = DiagonalFrame> {
    (2usize..=5).prop_flat_map(|dim| {
        (
            prop::collection::vec(prop_oneof![-2i64..=-1, 1i64..=3], dim),
            prop::collection::vec(prop::collection::vec(-2i64..=2, dim), dim),
            prop::collection::vec(1i64..=3, dim),
        )
            .prop_map(|(scale, rates, metric)| DiagonalFrame { scale, rates, metric })
    })
}

/// Random expressions in `x1, x2` and the parameter `kappa`.
pub fn expr_strategy() -> impl Strategy<Value = Expr> {
    let term = (-4i64..=4, 1i64..=3, 0u32..3, 0u32..3, 0u32..2, -2i64..=2, -1i64..=1).prop_map(
        |(n, d, p1, p2, pk, a1, a2)| {
            let x1 = Symbol::coordinate("x1");
            let x2 = Symbol::coordinate("x2");
            let kappa = Symbol::parameter("kappa");
            let c = Expr::constant(qq(n, d));
            let e = &(&(&c * &Expr::symbol(&x1).pow(p1)) * &Expr::symbol(&x2).pow(p2))
                * &Expr::symbol(&kappa).pow(pk);
            &(&e * &Expr::exp_of(&x1, q(a1)).unwrap()) * &Expr::exp_of(&x2, q(a2)).unwrap()
        },
    );
    prop::collection::vec(term, 0..4).prop_map(|ts| ts.into_iter().sum())
}

/// Curvature of constant sectional curvature `c` in an orthonormal frame:
/// `R(e_i, e_j) e_k = c (delta_jk e_i - delta_ik e_j)`.
pub fn constant_curvature(c: i64, i: usize, j: usize, kk: usize, l: usize) -> Expr {
    let d = |a: usize, b: usize| (a == b) as i64;
    Expr::int(c * (d(j, kk) * d(i, l) - d(i, kk) * d(j, l)))
}
