//! Pipe dreams, marked and bumpless vertical-less pipe dreams, and
//! Grothendieck polynomials computed from them.

pub mod bvpd;
pub mod diagram;
pub mod error;
pub mod mvpd;
pub mod permutation;
pub mod pipedream;
pub mod polynomial;
mod search;
pub mod support;
pub mod sweep;

pub use bvpd::{enumerate_bvpd, top_grothendieck_via_bvpd};
pub use diagram::{Cell, Diagram, DiagramKind, Side, Tile, TraceResult};
pub use error::{Error, Result};
pub use mvpd::{MvpdSet, Upgrade};
pub use permutation::{Code, CodeRole, Permutation};
pub use pipedream::{Limits, PipeDreamIndex};
pub use polynomial::{Monomial, Polynomial};
pub use support::{construct_up, Certificate, Conj13Mode, DroopSite, SupportReport};
pub use sweep::{CheckKind, SweepOptions, SweepReport};
