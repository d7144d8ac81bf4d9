//! Distribution models: discrete joints and marginals, CDF- and PDF-backed
//! continuous joints, mixed joints with one discrete coordinate, Lebesgue
//! mixtures, and the Cantor staircase approximant.

pub mod cantor;
pub mod continuous;
pub mod discrete;
pub mod mixed;
pub mod mixture;

pub use cantor::CantorCdf;
pub use continuous::{
    canonical_pdf_1d, canonical_pdf_2d, ContinuousJoint, KinkHint, DEFAULT_KINK_TOL,
    DEFAULT_STEP_1D, DEFAULT_STEP_2D, EPS_POS,
};
pub use discrete::{marginals, DiscreteJoint, MarginalPmf};
pub use mixed::{beta_bernoulli_joint, MixedJoint, MixedLevel};
pub use mixture::LebesgueMixture;
