//! Summability transforms for conjugate Fourier series.
//!
//! The crate measures how fast two-weight averaging schemes drive the
//! conjugate partial sums of a periodic signal toward its conjugate function,
//! and provides the supporting machinery end to end:
//!
//! - [`weights`]: weight-sequence algebra — convolution tables, head/rest
//!   bounded-variation classification, regularity checks;
//! - [`fourier`]: expansions, conjugate partial sums, and the conjugate
//!   function as a principal-value cotangent integral with cutoff
//!   extrapolation;
//! - [`signals`]: the built-in signal registry (`cosk`, `sawtooth`, `square`,
//!   `weierstrass`, `constant`);
//! - [`means`]: generalized two-weight means, shifted almost means, and the
//!   almost transform of conjugate series, with the classical Cesaro, Riesz,
//!   Norlund, and harmonic specializations;
//! - [`lipnorms`]: L_r / sup norms and empirical Lipschitz-class membership;
//! - [`verify`]: condition integrals and log-log convergence-rate
//!   experiments against the claimed exponent 1/r - alpha;
//! - [`cli`]: the flat-text config runner behind the `summability` binary.
//!
//! Start with the `examples/` directory: each example exercises one of the
//! capabilities above and prints a small report.
//!
//! ```
//! use summability::prelude::*;
//!
//! // (C,1) almost-mean of the conjugate series of cos x approaches sin x.
//! let expansion = signals::cosk(1).expansion(64, 256)?;
//! let method = classic_method(ClassicMethod::Cesaro(1.0))?.almost(0);
//! let value = almost_generalized_norlund(&expansion, &method, 48, 1.0)?;
//! assert!((value - 1.0_f64.sin()).abs() < 0.1);
//! # summability::Result::Ok(())
//! ```

pub mod cli;
pub mod error;
pub mod fourier;
pub mod lipnorms;
pub mod means;
pub mod quadrature;
pub mod signals;
pub mod verify;
pub mod weights;

pub use error::{Error, Result};

/// Common imports for downstream code and the examples.
pub mod prelude {
    pub use crate::error::{Error, Result};
    pub use crate::fourier::{
        conjugate_function_pv, fourier_coefficients, psi_difference, random_expansion,
        FourierExpansion, PrincipalValueSpec, PvEstimate, Refinement,
    };
    pub use crate::lipnorms::{
        default_t_samples, lip_membership_estimate, norm, LipClassSpec, LipReport,
    };
    pub use crate::means::{
        almost_generalized_norlund, almost_mean, classic_method, conjugate_kernel,
        generalized_norlund, ClassicMethod, ConjugateTransform, KernelSpec, MethodSpec, Mode,
    };
    pub use crate::signals;
    pub use crate::signals::Signal;
    pub use crate::verify::{
        condition_integrals, corollary_suite, rate_experiment, CondIntegralSpec, FitNormalizer,
        RateConfig, RateReport,
    };
    pub use crate::weights::{
        build_convolution, check_proof_bounds, check_regularity, classify_variation,
        classify_variation_with_k, sequence_from_expr, ConvolutionTable, VariationClass,
        VariationReport, WeightSequence,
    };
}
