use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use super::SymError;
use crate::scalar::Scalar;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum SymbolKind {
    Coordinate,
    Parameter,
}

/// A named variable. Coordinates can be differentiated against; parameters
/// are constants for every partial derivative.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Symbol {
    name: Arc<str>,
    kind: SymbolKind,
}

impl Symbol {
    pub fn coordinate(name: &str) -> Self {
        Symbol {
            name: Arc::from(name),
            kind: SymbolKind::Coordinate,
        }
    }

    pub fn parameter(name: &str) -> Self {
        Symbol {
            name: Arc::from(name),
            kind: SymbolKind::Parameter,
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn kind(&self) -> SymbolKind {
        self.kind
    }

    pub fn is_coordinate(&self) -> bool {
        self.kind == SymbolKind::Coordinate
    }
}

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name)
    }
}

/// The non-coefficient part of a term: a power product of symbols times
/// `exp(sum k_x * x)` over coordinates.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial<C> {
    powers: BTreeMap<Symbol, u32>,
    expo: BTreeMap<Symbol, C>,
}

impl<C: Scalar> Default for Monomial<C> {
    fn default() -> Self {
        Monomial {
            powers: BTreeMap::new(),
            expo: BTreeMap::new(),
        }
    }
}

impl<C: Scalar> Monomial<C> {
    pub fn is_one(&self) -> bool {
        self.powers.is_empty() && self.expo.is_empty()
    }

    pub fn powers(&self) -> &BTreeMap<Symbol, u32> {
        &self.powers
    }

    pub fn expo(&self) -> &BTreeMap<Symbol, C> {
        &self.expo
    }

    fn mul(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (s, p) in &other.powers {
            *out.powers.entry(s.clone()).or_insert(0) += p;
        }
        for (s, k) in &other.expo {
            let entry = out.expo.entry(s.clone()).or_insert_with(C::zero);
            *entry = entry.clone() + k.clone();
        }
        out.expo.retain(|_, k| !k.is_zero());
        out
    }

    fn div(&self, other: &Self) -> Option<Self> {
        let mut out = self.clone();
        for (s, p) in &other.powers {
            let have = out.powers.get(s).copied().unwrap_or(0);
            if have < *p {
                return None;
            }
            if have == *p {
                out.powers.remove(s);
            } else {
                out.powers.insert(s.clone(), have - p);
            }
        }
        for (s, k) in &other.expo {
            let entry = out.expo.entry(s.clone()).or_insert_with(C::zero);
            *entry = entry.clone() - k.clone();
        }
        out.expo.retain(|_, k| !k.is_zero());
        Some(out)
    }

    fn symbols(&self) -> impl Iterator<Item = &Symbol> {
        self.powers.keys().chain(self.expo.keys())
    }
}

/// A single `coeff * powers * exp(..)` term with nonzero coefficient.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Term<C> {
    coeff: C,
    monomial: Monomial<C>,
}

impl<C: Scalar> Term<C> {
    /// Builds a term; zero powers and zero frequencies are dropped.
    ///
    /// Frequencies keyed on parameters are rejected: `exp` only accepts
    /// linear forms in coordinates.
    pub fn new(
        coeff: C,
        powers: impl IntoIterator<Item = (Symbol, u32)>,
        expo: impl IntoIterator<Item = (Symbol, C)>,
    ) -> Result<Self, SymError> {
        if coeff.is_zero() {
            return Err(SymError::ZeroTerm);
        }
        let powers: BTreeMap<_, _> = powers.into_iter().filter(|(_, p)| *p != 0).collect();
        let mut map = BTreeMap::new();
        for (s, k) in expo {
            if !s.is_coordinate() {
                return Err(SymError::NotACoordinate(s.name().to_string()));
            }
            if !k.is_zero() {
                map.insert(s, k);
            }
        }
        Ok(Term {
            coeff,
            monomial: Monomial { powers, expo: map },
        })
    }

    pub fn constant(coeff: C) -> Result<Self, SymError> {
        Self::new(coeff, [], [])
    }

    pub fn coeff(&self) -> &C {
        &self.coeff
    }

    pub fn monomial(&self) -> &Monomial<C> {
        &self.monomial
    }

    pub fn powers(&self) -> &BTreeMap<Symbol, u32> {
        &self.monomial.powers
    }

    pub fn expo(&self) -> &BTreeMap<Symbol, C> {
        &self.monomial.expo
    }

    /// A term is a unit of the algebra iff it carries no power factors.
    pub fn is_unit(&self) -> bool {
        self.monomial.powers.is_empty()
    }
}

/// Canonical exact expression: a finite sum of terms with distinct monomials.
///
/// The backing map keeps terms sorted by monomial and never stores a zero
/// coefficient, so structural equality is mathematical equality.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Expr<C> {
    terms: BTreeMap<Monomial<C>, C>,
}

impl<C: Scalar> Default for Expr<C> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<C: Scalar> Expr<C> {
    pub fn zero() -> Self {
        Expr {
            terms: BTreeMap::new(),
        }
    }

    pub fn one() -> Self {
        Self::constant(C::one())
    }

    pub fn constant(c: C) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Monomial::default(), c);
        }
        Expr { terms }
    }

    pub fn int(n: i64) -> Self {
        Self::constant(C::from_int(n))
    }

    pub fn symbol(s: &Symbol) -> Self {
        let mono = Monomial {
            powers: BTreeMap::from([(s.clone(), 1)]),
            expo: BTreeMap::new(),
        };
        Expr {
            terms: BTreeMap::from([(mono, C::one())]),
        }
    }

    /// `exp(k * x)` for a coordinate `x`.
    pub fn exp_of(x: &Symbol, k: C) -> Result<Self, SymError> {
        Ok(Self::from_term(Term::new(C::one(), [], [(x.clone(), k)])?))
    }

    pub fn from_term(t: Term<C>) -> Self {
        Expr {
            terms: BTreeMap::from([(t.monomial, t.coeff)]),
        }
    }

    /// Canonicalizes an arbitrary list of terms: like monomials merge and
    /// cancelled terms vanish.
    pub fn from_terms(terms: impl IntoIterator<Item = Term<C>>) -> Self {
        let mut out = Self::zero();
        for t in terms {
            out.add_term(t.monomial, t.coeff);
        }
        out
    }

    fn add_term(&mut self, mono: Monomial<C>, coeff: C) {
        if coeff.is_zero() {
            return;
        }
        match self.terms.get_mut(&mono) {
            Some(c) => {
                *c = c.clone() + coeff;
                if c.is_zero() {
                    self.terms.remove(&mono);
                }
            }
            None => {
                self.terms.insert(mono, coeff);
            }
        }
    }

    pub fn terms(&self) -> impl ExactSizeIterator<Item = Term<C>> + '_ {
        self.terms.iter().map(|(m, c)| Term {
            coeff: c.clone(),
            monomial: m.clone(),
        })
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    /// Re-runs canonicalization on this expression's own terms.
    pub fn normalize(&self) -> Self {
        Self::from_terms(self.terms())
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.as_constant().map_or(false, |c| c.is_one())
    }

    /// The value of a constant expression (no symbols at all).
    pub fn as_constant(&self) -> Option<C> {
        match self.terms.len() {
            0 => Some(C::zero()),
            1 => {
                let (m, c) = self.terms.iter().next().unwrap();
                m.is_one().then(|| c.clone())
            }
            _ => None,
        }
    }

    pub fn as_single_term(&self) -> Option<Term<C>> {
        (self.terms.len() == 1).then(|| self.terms().next().unwrap())
    }

    pub fn symbols(&self) -> BTreeSet<Symbol> {
        self.terms
            .keys()
            .flat_map(|m| m.symbols().cloned())
            .collect()
    }

    /// True when no coordinate occurs, i.e. the value is the same at every
    /// point of the manifold (parameters are allowed).
    pub fn is_spatially_constant(&self) -> bool {
        self.symbols().iter().all(|s| !s.is_coordinate())
    }

    pub fn scale(&self, k: &C) -> Self {
        if k.is_zero() {
            return Self::zero();
        }
        Expr {
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), c.clone() * k.clone()))
                .collect(),
        }
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Exact partial derivative with respect to a coordinate.
    pub fn partial(&self, x: &Symbol) -> Result<Self, SymError> {
        if !x.is_coordinate() {
            return Err(SymError::NotACoordinate(x.name().to_string()));
        }
        let mut out = Self::zero();
        for (mono, c) in &self.terms {
            // exponential factor: d/dx exp(kx) = k exp(kx)
            if let Some(k) = mono.expo.get(x) {
                out.add_term(mono.clone(), c.clone() * k.clone());
            }
            if let Some(&p) = mono.powers.get(x) {
                let mut m = mono.clone();
                if p == 1 {
                    m.powers.remove(x);
                } else {
                    m.powers.insert(x.clone(), p - 1);
                }
                out.add_term(m, c.clone() * C::from_int(p as i64));
            }
        }
        Ok(out)
    }

    /// Divides every term by `t`; fails if a power would go negative.
    pub fn divide_by_term(&self, t: &Term<C>) -> Result<Self, SymError> {
        if t.coeff.is_zero() {
            return Err(SymError::DivisionByZero);
        }
        let mut out = Self::zero();
        for (mono, c) in &self.terms {
            let m = mono.div(&t.monomial).ok_or(SymError::NonDivisible)?;
            out.add_term(m, c.clone() / t.coeff.clone());
        }
        Ok(out)
    }

    /// Exact quotient `self / divisor` when it exists inside the algebra.
    ///
    /// Single-term divisors go through [`Expr::divide_by_term`]; otherwise a
    /// leading-term division under a dense lexicographic order is attempted
    /// and must leave a zero remainder.
    pub fn exact_div(&self, divisor: &Self) -> Result<Self, SymError> {
        if divisor.is_zero() {
            return Err(SymError::DivisionByZero);
        }
        if let Some(t) = divisor.as_single_term() {
            return self.divide_by_term(&t);
        }
        if self.is_zero() {
            return Ok(Self::zero());
        }
        let order = DenseOrder::new(self, divisor);
        let lead_div = order.leading(divisor);
        let mut rem = self.clone();
        let mut quotient = Self::zero();
        for _ in 0..DIVISION_STEP_LIMIT {
            if rem.is_zero() {
                return Ok(quotient);
            }
            let lead = order.leading(&rem);
            let q_mono = lead.monomial.div(&lead_div.monomial).ok_or(SymError::NonDivisible)?;
            let q = Term {
                coeff: lead.coeff.clone() / lead_div.coeff.clone(),
                monomial: q_mono,
            };
            let step = Self::from_term(q.clone());
            rem = &rem - &(&step * divisor);
            quotient.add_term(q.monomial, q.coeff);
        }
        Err(SymError::NonDivisible)
    }

    /// Replaces a parameter by an expression.
    pub fn substitute(&self, param: &Symbol, value: &Self) -> Result<Self, SymError> {
        if param.is_coordinate() {
            return Err(SymError::CoordinateSubstitution(param.name().to_string()));
        }
        let mut out = Self::zero();
        for (mono, c) in &self.terms {
            let mut m = mono.clone();
            match m.powers.remove(param) {
                None => out.add_term(m, c.clone()),
                Some(p) => {
                    let rest = Expr {
                        terms: BTreeMap::from([(m, c.clone())]),
                    };
                    out = &out + &(&rest * &value.pow(p));
                }
            }
        }
        Ok(out)
    }

    pub fn substitute_all<'a>(
        &self,
        bindings: impl IntoIterator<Item = (&'a Symbol, &'a Self)>,
    ) -> Result<Self, SymError>
    where
        C: 'a,
    {
        let mut out = self.clone();
        for (s, v) in bindings {
            out = out.substitute(s, v)?;
        }
        Ok(out)
    }

    /// Splits `self = a * s + b` with `a`, `b` free of `s`.
    pub fn linear_in(&self, s: &Symbol) -> Result<(Self, Self), SymError> {
        let mut a = Self::zero();
        let mut b = Self::zero();
        for (mono, c) in &self.terms {
            match mono.powers.get(s).copied() {
                None if mono.expo.contains_key(s) => {
                    return Err(SymError::NonLinear(s.name().to_string()))
                }
                None => b.add_term(mono.clone(), c.clone()),
                Some(1) => {
                    if mono.expo.contains_key(s) {
                        return Err(SymError::NonLinear(s.name().to_string()));
                    }
                    let mut m = mono.clone();
                    m.powers.remove(s);
                    a.add_term(m, c.clone());
                }
                Some(_) => return Err(SymError::NonLinear(s.name().to_string())),
            }
        }
        Ok((a, b))
    }

    /// Highest power of `s` in any term.
    pub fn degree_in(&self, s: &Symbol) -> u32 {
        self.terms
            .keys()
            .filter_map(|m| m.powers.get(s).copied())
            .max()
            .unwrap_or(0)
    }
}

const DIVISION_STEP_LIMIT: usize = 512;

/// Lexicographic order on dense exponent vectors over a fixed symbol list.
/// Compatible with multiplication, which the division loop relies on.
struct DenseOrder {
    symbols: Vec<Symbol>,
}

impl DenseOrder {
    fn new<C: Scalar>(a: &Expr<C>, b: &Expr<C>) -> Self {
        let mut set = a.symbols();
        set.extend(b.symbols());
        DenseOrder {
            symbols: set.into_iter().collect(),
        }
    }

    fn compare<C: Scalar>(&self, x: &Monomial<C>, y: &Monomial<C>) -> Ordering {
        for s in &self.symbols {
            let px = x.powers.get(s).copied().unwrap_or(0);
            let py = y.powers.get(s).copied().unwrap_or(0);
            match px.cmp(&py) {
                Ordering::Equal => {}
                o => return o,
            }
        }
        for s in &self.symbols {
            let kx = x.expo.get(s).cloned().unwrap_or_else(C::zero);
            let ky = y.expo.get(s).cloned().unwrap_or_else(C::zero);
            match kx.cmp(&ky) {
                Ordering::Equal => {}
                o => return o,
            }
        }
        Ordering::Equal
    }

    fn leading<C: Scalar>(&self, e: &Expr<C>) -> Term<C> {
        e.terms()
            .max_by(|a, b| self.compare(&a.monomial, &b.monomial))
            .expect("leading term of nonzero expression")
    }
}

impl<C: Scalar> Add for &Expr<C> {
    type Output = Expr<C>;
    fn add(self, rhs: &Expr<C>) -> Expr<C> {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl<C: Scalar> Add for Expr<C> {
    type Output = Expr<C>;
    fn add(self, rhs: Expr<C>) -> Expr<C> {
        &self + &rhs
    }
}

impl<C: Scalar> Neg for &Expr<C> {
    type Output = Expr<C>;
    fn neg(self) -> Expr<C> {
        Expr {
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), -c.clone()))
                .collect(),
        }
    }
}

impl<C: Scalar> Neg for Expr<C> {
    type Output = Expr<C>;
    fn neg(self) -> Expr<C> {
        -&self
    }
}

impl<C: Scalar> Sub for &Expr<C> {
    type Output = Expr<C>;
    fn sub(self, rhs: &Expr<C>) -> Expr<C> {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -c.clone());
        }
        out
    }
}

impl<C: Scalar> Sub for Expr<C> {
    type Output = Expr<C>;
    fn sub(self, rhs: Expr<C>) -> Expr<C> {
        &self - &rhs
    }
}

impl<C: Scalar> Mul for &Expr<C> {
    type Output = Expr<C>;
    fn mul(self, rhs: &Expr<C>) -> Expr<C> {
        let mut out = Expr::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                out.add_term(ma.mul(mb), ca.clone() * cb.clone());
            }
        }
        out
    }
}

impl<C: Scalar> Mul for Expr<C> {
    type Output = Expr<C>;
    fn mul(self, rhs: Expr<C>) -> Expr<C> {
        &self * &rhs
    }
}

impl<C: Scalar> std::iter::Sum for Expr<C> {
    fn sum<I: Iterator<Item = Expr<C>>>(iter: I) -> Self {
        let mut out = Expr::zero();
        for e in iter {
            for (m, c) in e.terms {
                out.add_term(m, c);
            }
        }
        out
    }
}

fn write_monomial<C: Scalar>(f: &mut fmt::Formatter<'_>, m: &Monomial<C>) -> fmt::Result {
    let mut first = true;
    for (s, p) in &m.powers {
        if !first {
            f.write_str("*")?;
        }
        first = false;
        if *p == 1 {
            write!(f, "{s}")?;
        } else {
            write!(f, "{s}^{p}")?;
        }
    }
    if !m.expo.is_empty() {
        if !first {
            f.write_str("*")?;
        }
        let arg: Expr<C> = Expr::from_terms(m.expo.iter().map(|(x, k)| Term {
            coeff: k.clone(),
            monomial: Monomial {
                powers: BTreeMap::from([(x.clone(), 1)]),
                expo: BTreeMap::new(),
            },
        }));
        write!(f, "exp({arg})")?;
    }
    Ok(())
}

/// Serializes in the expression grammar accepted by [`super::parse_expr`].
impl<C: Scalar> fmt::Display for Expr<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (idx, (mono, c)) in self.terms.iter().enumerate() {
            let negative = c.is_negative();
            let mag = c.abs();
            if idx == 0 {
                if negative {
                    f.write_str("-")?;
                }
            } else if negative {
                f.write_str(" - ")?;
            } else {
                f.write_str(" + ")?;
            }
            if mono.is_one() {
                write!(f, "{mag}")?;
            } else {
                if !mag.is_one() {
                    write!(f, "{mag}*")?;
                }
                write_monomial(f, mono)?;
            }
        }
        Ok(())
    }
}

impl<C: Scalar> fmt::Display for Term<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        Expr::from_term(self.clone()).fmt(f)
    }
}
