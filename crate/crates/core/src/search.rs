//! Ensemble search over an exhaustive evaluation engine.
//!
//! Two algorithms are provided. [`bruschweiler_search`] drives a one-ancilla
//! flip oracle: query `i` prepares the half mixture with data bit `i` pinned
//! to α, applies the oracle once and decodes the readout sign, so `d` queries
//! recover a `d`-bit target. [`one_query_search`] drives a value-copying
//! oracle (`a = d`): a single application of the oracle against the uniform
//! mixture writes the target's bits onto the ancillas, and one measurement
//! per ancilla reads them back.
//!
//! Both report two costs: `queries_used` counts oracle applications in the
//! ensemble model (1 vs `d`), while `domain_points_evaluated` counts the
//! classical function evaluations this simulator actually performs, which is
//! always on the order of the domain size. The two are deliberately kept
//! separate.
//!
//! Because several marked elements can decode to a bit pattern equal to none
//! of them, every search re-evaluates the oracle's predicate at the assembled
//! answer and fails loudly (`VerificationFailed`) instead of returning an
//! unmarked element. The same check accepts the all-zero answer only when the
//! predicate really holds at zero, resolving the copy oracle's zero-target
//! blind spot.

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::liouville::{
    decode_sign, measure_intensity, IntensityReading, LiouvilleError, Mixture, SpinValue,
};
use crate::oracle::{OracleError, PermutationOracle};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SearchError {
    #[error("one-query search needs a value-copying oracle (ancillas = data bits), got {ancillas}a+{data}d")]
    CopyShapeRequired { ancillas: u32, data: u32 },
    #[error("bit-by-bit search needs a single-ancilla oracle, got {0} ancillas")]
    FlipShapeRequired(u32),
    #[error(
        "assembled answer {found:#x} does not satisfy the oracle predicate; \
         the oracle marked zero elements or several"
    )]
    VerificationFailed {
        found: u64,
        intensities: Vec<IntensityReading>,
    },
    #[error(transparent)]
    State(#[from] LiouvilleError),
    #[error(transparent)]
    Oracle(#[from] OracleError),
}

/// How the engine walks the mixture.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum EngineMode {
    /// Materialize the component map and apply the oracle to it. Limited to
    /// small data widths by `materialize_cap`.
    Materialized,
    /// Stream the implicit mixture in index partitions, evaluating the
    /// classical function once per domain point. Works at any width.
    Streaming,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct EngineConfig {
    pub mode: EngineMode,
    /// Number of disjoint index ranges the domain is split into. Workers own
    /// one range each; results are identical for every partition count.
    pub partition_count: usize,
    /// Largest data width `Materialized` mode will expand.
    pub materialize_cap: u32,
}

impl Default for EngineConfig {
    fn default() -> Self {
        Self {
            mode: EngineMode::Streaming,
            partition_count: std::thread::available_parallelism()
                .map(|n| n.get())
                .unwrap_or(1),
            materialize_cap: crate::liouville::DEFAULT_MATERIALIZE_CAP,
        }
    }
}

/// Outcome of a search: the assembled answer, the raw readings it was decoded
/// from, and the two cost counters. `verified` records that the oracle's
/// classical predicate holds at `found`; searches never return unverified
/// answers.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SearchResult {
    pub found: u64,
    pub intensities: Vec<IntensityReading>,
    pub queries_used: u64,
    pub domain_points_evaluated: u64,
    pub verified: bool,
}

/// A power-of-two search domain wrapped around `element_count` real elements.
/// Indices at or above `element_count` are sentinels: padding members that an
/// oracle must never mark.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct PaddedDomain {
    bits: u32,
    element_count: u64,
}

impl PaddedDomain {
    pub fn bits(&self) -> u32 {
        self.bits
    }

    pub fn element_count(&self) -> u64 {
        self.element_count
    }

    pub fn padded_size(&self) -> u64 {
        1u64 << self.bits
    }

    pub fn sentinel_count(&self) -> u64 {
        self.padded_size() - self.element_count
    }

    pub fn is_sentinel(&self, index: u64) -> bool {
        index >= self.element_count
    }
}

/// Smallest power-of-two register that holds `element_count` elements
/// (`element_count ≥ 1`; a single element still gets a 1-bit register).
pub fn pad_domain(element_count: u64) -> PaddedDomain {
    assert!(element_count >= 1, "domain must hold at least one element");
    let bits = if element_count <= 2 {
        1
    } else {
        (element_count - 1).ilog2() + 1
    };
    PaddedDomain {
        bits,
        element_count,
    }
}

struct ProbePlan {
    /// (slot in the output vector, shift into the ancilla word)
    ancilla: Vec<(usize, u32)>,
    /// (slot in the output vector, shift into the data word)
    data: Vec<(usize, u32)>,
}

fn plan_probes(
    layout: crate::liouville::RegisterLayout,
    probes: &[u32],
) -> Result<ProbePlan, LiouvilleError> {
    let a = layout.ancilla_count();
    let d = layout.data_count();
    let mut plan = ProbePlan {
        ancilla: Vec::new(),
        data: Vec::new(),
    };
    for (slot, &position) in probes.iter().enumerate() {
        if position == 0 || position > layout.width() {
            return Err(LiouvilleError::IndexOutOfRange {
                index: position,
                width: layout.width(),
            });
        }
        if position <= a {
            plan.ancilla.push((slot, a - position));
        } else {
            plan.data.push((slot, d - (position - a)));
        }
    }
    Ok(plan)
}

/// Evaluate the classical function over every member of `mixture` and return
/// the exact intensity at each probed register position.
///
/// Streaming mode splits the member index range into `partition_count`
/// disjoint chunks processed in parallel; per-chunk sums are exact integers,
/// so the merged result is bit-identical for any partition count or thread
/// schedule. Materialized mode routes through the explicit component map and
/// exists as an independently-implemented cross-check of the streaming path.
pub fn run_engine(
    oracle: &PermutationOracle,
    mixture: &Mixture,
    probes: &[u32],
    config: &EngineConfig,
) -> Result<Vec<IntensityReading>, SearchError> {
    if mixture.layout() != oracle.layout() {
        return Err(SearchError::State(LiouvilleError::LayoutMismatch {
            state: (
                mixture.layout().ancilla_count(),
                mixture.layout().data_count(),
            ),
            oracle: (
                oracle.layout().ancilla_count(),
                oracle.layout().data_count(),
            ),
        }));
    }
    match config.mode {
        EngineMode::Materialized => {
            let state = mixture.materialize(config.materialize_cap)?;
            let applied = oracle.apply(&state)?;
            let readings = probes
                .iter()
                .map(|&p| measure_intensity(&applied, p))
                .collect::<Result<Vec<_>, _>>()?;
            Ok(readings)
        }
        EngineMode::Streaming => {
            let plan = plan_probes(mixture.layout(), probes)?;
            let members = mixture.multiplicity();
            let partitions = config.partition_count.max(1) as u64;
            let chunk = members.div_ceil(partitions);
            let beta_counts = (0..partitions)
                .into_par_iter()
                .map(|p| {
                    let lo = p * chunk;
                    let hi = members.min(lo.saturating_add(chunk));
                    let mut counts = vec![0u64; probes.len()];
                    for index in lo..hi {
                        let x = mixture.data_value(index);
                        let y = oracle.evaluate(x);
                        if y != 0 {
                            for &(slot, shift) in &plan.ancilla {
                                counts[slot] += (y >> shift) & 1;
                            }
                        }
                        for &(slot, shift) in &plan.data {
                            counts[slot] += (x >> shift) & 1;
                        }
                    }
                    counts
                })
                .reduce(
                    || vec![0u64; probes.len()],
                    |mut acc, part| {
                        for (a, b) in acc.iter_mut().zip(part) {
                            *a += b;
                        }
                        acc
                    },
                );
            Ok(probes
                .iter()
                .zip(beta_counts)
                .map(|(&position, betas)| IntensityReading {
                    qubit_index: position,
                    value: (2 * betas as i128 - members as i128) as i64,
                })
                .collect())
        }
    }
}

/// Single-application search with a value-copying oracle.
///
/// Prepares the uniform mixture, applies the oracle once, measures every
/// ancilla, and decodes each sign into one bit of the answer (−1 → 0,
/// +1 → 1, qubit 1 being the most significant). The answer is accepted only
/// if the oracle's predicate confirms it.
pub fn one_query_search(
    oracle: &PermutationOracle,
    config: &EngineConfig,
) -> Result<SearchResult, SearchError> {
    let layout = oracle.layout();
    let a = layout.ancilla_count();
    if a != layout.data_count() {
        return Err(SearchError::CopyShapeRequired {
            ancillas: a,
            data: layout.data_count(),
        });
    }
    let mixture = Mixture::uniform(layout);
    let probes: Vec<u32> = (1..=a).collect();
    let intensities = run_engine(oracle, &mixture, &probes, config)?;
    let members = mixture.multiplicity();

    let mut found = 0u64;
    for reading in &intensities {
        let sign = decode_sign(reading.value, members)?;
        if sign > 0 {
            found |= 1u64 << (a - reading.qubit_index);
        }
    }
    if !oracle.marks(found) {
        return Err(SearchError::VerificationFailed { found, intensities });
    }
    Ok(SearchResult {
        found,
        intensities,
        queries_used: 1,
        domain_points_evaluated: members,
        verified: true,
    })
}

/// Bit-by-bit search with a one-ancilla flip oracle.
///
/// Query `i` prepares the half mixture with data bit `i` pinned to α and
/// evaluates the oracle's sum over it: a decoded +1 means the target sits in
/// that half (bit `i` is 0), a −1 means it does not (bit `i` is 1). The
/// per-query readings are returned in query order.
pub fn bruschweiler_search(
    oracle: &PermutationOracle,
    config: &EngineConfig,
) -> Result<SearchResult, SearchError> {
    let layout = oracle.layout();
    if layout.ancilla_count() != 1 {
        return Err(SearchError::FlipShapeRequired(layout.ancilla_count()));
    }
    let d = layout.data_count();
    let mut intensities = Vec::with_capacity(d as usize);
    let mut found = 0u64;
    let mut points = 0u64;
    for data_qubit in 1..=d {
        let mixture = Mixture::pinned(layout, data_qubit, SpinValue::Alpha)?;
        let reading = run_engine(oracle, &mixture, &[1], config)?[0];
        points += mixture.multiplicity();
        let sign = decode_sign(reading.value, mixture.multiplicity())?;
        if sign < 0 {
            found |= 1u64 << (d - data_qubit);
        }
        intensities.push(reading);
    }
    if !oracle.marks(found) {
        return Err(SearchError::VerificationFailed { found, intensities });
    }
    Ok(SearchResult {
        found,
        intensities,
        queries_used: u64::from(d),
        domain_points_evaluated: points,
        verified: true,
    })
}
