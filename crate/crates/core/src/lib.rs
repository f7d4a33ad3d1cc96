//! Quantum Cramér–Rao bounds for estimating a gravitational potential with
//! single-layer and layered optical lattice clocks.
//!
//! - [`operator`]: closed-form 2×2 complex operator algebra.
//! - [`clock`]: the clock Hamiltonian, evolved single-layer state and the
//!   layer-averaged state with its Dirichlet visibility.
//! - [`estimation`]: SLD solver, Fisher information, Cramér–Rao bounds,
//!   divergence and optimum interrogation times.
//! - [`measurement`]: the continuous phase POVM, its sampler, estimators
//!   and Monte Carlo runs.
//! - [`atoms`]: clock species and their optimal interrogation times.
//! - [`report`], [`config`], [`cli`]: CSV/SVG output, config files and the
//!   `gravclock` command line.
//!
//! ```
//! use gravclock::{clock::ClockConfig, estimation::qfi_multilayer};
//!
//! // five layers, A = 1, Aα/2 = π/10
//! let cfg = ClockConfig::dimensionless(1.0, std::f64::consts::PI / 5.0, 1.0, 2, 1).unwrap();
//! let d = cfg.visibility().value();
//! assert!((qfi_multilayer(&cfg) - d * d).abs() < 1e-15);
//! ```

pub mod atoms;
pub mod cli;
pub mod clock;
pub mod config;
pub mod error;
pub mod estimation;
pub mod measurement;
pub mod operator;
pub mod optimize;
pub mod report;

pub use clock::{ClockConfig, PhysicalConstants, Visibility};
pub use error::{Error, Result};
pub use operator::{Complex, DensityOperator, Operator2, SpectralDecomposition};
