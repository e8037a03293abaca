//! Reduced energies, critical points and verification oracles for
//! r-harmonic equivariant maps into hyperspheres and Clifford tori.
//!
//! ```
//! use rharmonic::critical_points::solve_hypersphere;
//!
//! let report = solve_hypersphere(4).unwrap();
//! assert!((report.parameter - 0.5).abs() < 1e-12);
//! ```

pub mod critical_points;
pub mod error;
pub mod fd_oracle;
pub mod reduced_energy;
pub mod section_calculus;
pub mod verify;

pub use critical_points::{
    build_p, discriminant_condition, root_solve, solve_clifford, solve_hypersphere,
    CubicPolynomial, SolutionKind, SolutionReport,
};
pub use error::{Error, Result};
pub use fd_oracle::OracleReport;
pub use reduced_energy::{CliffordConfig, DerivOrder, EnergyValue, HypersphereConfig};
pub use verify::Suite;

// The guide's snippets and the README run as doctests, one module per chapter.
#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/reduced-energy.md")]
    mod reduced_energy {}
    #[doc = include_str!("../../../book/src/hyperspheres.md")]
    mod hyperspheres {}
    #[doc = include_str!("../../../book/src/clifford.md")]
    mod clifford {}
    #[doc = include_str!("../../../book/src/section-calculus.md")]
    mod section_calculus {}
    #[doc = include_str!("../../../book/src/verification.md")]
    mod verification {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
    #[doc = include_str!("../../../README.md")]
    mod readme {}
}
