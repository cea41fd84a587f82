//! Numerical toolkit for open-system quantum dynamics.
//!
//! Two complementary pictures are implemented on top of a small dense
//! complex linear-algebra kernel:
//!
//! * **Channels and dilations** ([`channel`], [`dilation`]): Kraus/operator-sum
//!   maps, Choi matrices and the channel-state duality, natural and affine
//!   (Bloch) representations, the positivity hierarchy, and the
//!   unitary-universe dilation with the swap construction that turns
//!   initially correlated system-environment dynamics into a completely
//!   positive map.
//! * **Measurement chains** ([`chain`], [`weak`]): sequences of generalized
//!   measurements, branch probability vectors, the measurement transfer
//!   matrix linking successive steps, its state-(in)dependence diagnostics,
//!   and the weak-measurement generalization with complex transition
//!   probabilities and weak values.
//!
//! All types are immutable values and all operations are pure functions, so
//! everything is safe to use concurrently without synchronization.
//!
//! ```
//! use qdyn::dilation::{depolarizing_example, swap_convert, InitialCondition};
//!
//! // a Bell-correlated pair evolving under exp(-i 0.7 X(x)X): the swap
//! // construction turns it into a CPTP channel, here the fully
//! // depolarizing qubit channel
//! let (model, expected) = depolarizing_example(0.7);
//! let InitialCondition::Correlated { joint } = model.initial() else { unreachable!() };
//! let (sigma_s, channel) = swap_convert(joint, (2, 2), model.unitary()).unwrap();
//!
//! assert!(channel.is_trace_preserving());
//! let dist = channel.choi().unwrap().dist(&expected.choi().unwrap()).unwrap();
//! assert!(dist < 1e-9);
//! // the channel maps its reduced input to the maximally mixed state
//! let out = channel.apply(&sigma_s).unwrap();
//! assert!((out.purity() - 0.5).abs() < 1e-12);
//! ```

pub mod chain;
pub mod channel;
pub mod dilation;
pub mod error;
pub mod linalg;
pub mod rng;
pub mod states;
pub mod weak;

pub use error::{Error, Result};
pub use linalg::{ComplexMatrix, ComplexVector, HermitianEig};
pub use states::{BlochVector, DensityMatrix, Observable, OperatorBasis};

pub use chain::{Measurement, MeasurementChain, ProbabilityVector, TransferMatrix};
pub use channel::{AffineRep, ChoiMatrix, HermitianMapRep, KrausChannel, MapClass};
pub use dilation::{InitialCondition, SwappedUniverse, UniverseModel};
pub use weak::{WeakTransferMatrix, WeakValue};

pub use num_complex::Complex64;
