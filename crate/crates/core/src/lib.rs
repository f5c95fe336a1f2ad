//! Radix-2 Stockham FFT with interchangeable butterfly kernels.
//!
//! The crate pairs four butterfly strategies (standard 10-operation,
//! Linzer-Feig, cosine and dual-select 6-FMA factorizations) with an emulated
//! FP16/FP32/FP64 arithmetic layer whose fused multiply-add rounds exactly
//! once. On top sit error-bound formulas, seeded error measurements against a
//! direct DFT and self-checks used by the command-line tool.
//!
//! ```
//! use dualfft::{make_plan, ComplexSample, Precision, Strategy};
//!
//! let plan = make_plan(8, Strategy::DualSelect, Precision::Fp16).unwrap();
//! let x = vec![ComplexSample::new(1.0, 0.0); 8];
//! let spectrum = plan.forward(&x).unwrap();
//! assert_eq!(spectrum[0], ComplexSample::new(8.0, 0.0));
//! ```

pub mod analysis;
pub mod butterfly;
pub mod error;
pub mod fft;
pub mod fmt;
pub mod precision;
pub mod rng;
pub mod twiddle;

pub use analysis::{
    cumulative_bound, measure_error, per_butterfly_bound, relative_l2_error, reproduce_table1,
    reproduce_table2, BoundReport, ErrorReport, Metric,
};
pub use butterfly::ComplexSample;
pub use error::{Error, Result};
pub use fft::{dft_oracle, make_plan, FftPlan};
pub use precision::{round_to, ArithmeticContext, OpCounter, Precision};
pub use twiddle::{table_stats, RatioStats, Strategy, TwiddleEntry, TwiddlePath, TwiddleTable};
