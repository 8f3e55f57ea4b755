//! Exact frame calculus for almost-contact metric manifolds.
//!
//! The crate is organised bottom-up:
//!
//! * [`symscalar`]: canonical exact expressions (rationals, coordinate and
//!   parameter monomials, exponentials of linear forms).
//! * [`frame`]: manifolds presented by a moving frame over a chart; brackets,
//!   Levi-Civita connection, curvature, traces and derivative operators.
//! * [`contact`]: almost-contact structure checks, Kenmotsu identities and the
//!   *-Ricci tensor.
//! * [`soliton`]: soliton residuals under an explicit convention registry,
//!   Ω solvers, vector field certificates and theorem checks.
//! * [`cli`]: manifests, the built-in corpus, command dispatch and reports.
//!
//! Everything is generic over an exact coefficient field ([`Scalar`]); the
//! aliases below fix it to arbitrary precision rationals.

pub mod cli;
pub mod contact;
pub mod frame;
pub mod scalar;
pub mod soliton;
pub mod symscalar;

pub use scalar::Scalar;

pub type Rational = num_rational::BigRational;

pub type Expr = symscalar::Expr<Rational>;
pub type Term = symscalar::Term<Rational>;
pub type LinearSolution = symscalar::LinearSolution<Rational>;
pub type FrameManifold = frame::FrameManifold<Rational>;
pub type TensorField = frame::TensorField<Rational>;
pub type Connection = frame::Connection<Rational>;
pub type StructureFunctions = frame::StructureFunctions<Rational>;
pub type Curvature = frame::Curvature<Rational>;
pub type AlmostContactData = contact::AlmostContactData<Rational>;
pub type StructureReport = contact::StructureReport<Rational>;
pub type SolitonConvention = soliton::SolitonConvention<Rational>;
pub type SolitonInstance = soliton::SolitonInstance<Rational>;

pub use symscalar::{Symbol, SymbolKind, SymbolTable};
