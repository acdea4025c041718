//! Desk-scale simulator of ensemble search in diagonal spin Liouville space.
//!
//! An ensemble computer processes every member of a mixed state at once and
//! measures expectation values instead of single shots. This crate models
//! that computation exactly: states are weighted multisets of basis
//! configurations over an (ancilla, data) spin register, oracles are
//! reversible XOR constructions over classical functions, and a measurement
//! returns the exact integer sum of ±1 signs across all members.
//!
//! On top of that it implements two search algorithms — the log-N bit-by-bit
//! search driven by a flip oracle and the one-application search driven by a
//! value-copying oracle — plus chosen-ciphertext attack drivers for toy RSA
//! and McEliece instances, and the measurement-noise model that determines
//! how many repeated trials a given readout error budget demands.
//!
//! ```
//! use spinsearch_core::oracle::make_copy_oracle;
//! use spinsearch_core::search::{one_query_search, EngineConfig};
//!
//! let oracle = make_copy_oracle(0b001, 3).unwrap();
//! let result = one_query_search(&oracle, &EngineConfig::default()).unwrap();
//! assert_eq!(result.found, 0b001);
//! assert_eq!(result.queries_used, 1);
//! let values: Vec<i64> = result.intensities.iter().map(|r| r.value).collect();
//! assert_eq!(values, vec![-8, -8, -6]);
//! ```
//!
//! The simulator is honest about cost: `queries_used` counts oracle
//! applications in the ensemble model, while `domain_points_evaluated`
//! counts the classical function evaluations actually performed, which scale
//! with the domain size.

pub mod crypto;
pub mod liouville;
pub mod noise;
pub mod oracle;
pub mod search;

pub use crypto::{
    attack, brute_force_decrypt, enumerate_error_vectors, mceliece_encrypt, rsa_encrypt,
    AttackReport, CryptoError, ErrorIndexDomain, McElieceEncryptor, McElieceKey,
    RandomizedEncryptor, RsaKey,
};
pub use liouville::{
    conditional_data_mixture, decode_sign, measure_intensity, mixed_sum_evaluate,
    trace_formula_eval, uniform_data_mixture, BasisConfig, IntensityReading, LiouvilleError,
    MixedState, Mixture, RegisterLayout, SpinValue,
};
pub use noise::{
    crossover, crossover_csv, grover_queries, noisy_measure, required_trials,
    required_trials_for, success_curve, success_curve_csv, CrossoverRecord, NoiseError,
    NoiseModel, NoisyReading, SuccessPoint,
};
pub use oracle::{
    make_copy_oracle, make_crypto_oracle, make_flip_oracle, OracleError, PermutationOracle,
};
pub use search::{
    bruschweiler_search, one_query_search, pad_domain, run_engine, EngineConfig, EngineMode,
    PaddedDomain, SearchError, SearchResult,
};
