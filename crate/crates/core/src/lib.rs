//! Discrete-time coined quantum walks of one and several particles.
//!
//! - [`coin`]: coin matrices, single-particle coin states and the
//!   Hadamard eigenbasis.
//! - [`line`]: the Hadamard walk on the line, one step being `S (I ⊗ C)`
//!   with `L` moving to `x - 1` and `R` to `x + 1`.
//! - [`multiparticle`]: joint distributions of `M` non-interacting walkers
//!   with separable, Bell, bosonic or fermionic coin states, and the
//!   probability that all walkers sit on the same side of the origin.
//! - [`asymptotics`]: weak limits of the rescaled position `X_t / t`.
//! - [`delta`]: two walkers interacting through a coin that differs on the
//!   diagonal `x = y`, viewed as one walker on the plane.
//! - [`fourier`]: momentum-space propagation of the planar walk.
//! - [`experiment`]: configuration parsing, experiment runners and the
//!   CSV / JSON report formats behind the `qwalk` binary.
//!
//! ```
//! use qwalk::{coin::CoinMatrix, line, CoinState1};
//!
//! let walk = line::evolve(&CoinState1::left(), 2, &CoinMatrix::hadamard());
//! let (p_minus, p_plus) = walk.side_probabilities();
//! assert!((p_minus - 0.75).abs() < 1e-12);
//! assert!((p_plus - 0.25).abs() < 1e-12);
//! ```

pub mod asymptotics;
pub mod coin;
pub mod delta;
pub mod error;
pub mod experiment;
pub mod fourier;
pub mod line;
pub mod multiparticle;

pub use coin::{CoinMatrix, CoinState1, HadamardCoords};
pub use delta::{DeltaEvolutionSpec, ShiftModel, WalkState2D};
pub use error::{Error, Result};
pub use line::{Chirality, WalkState1D};
pub use multiparticle::{CoinKind, InitialCoinSpec, JointAccessor, Sign};
