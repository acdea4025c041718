//! Diagonal mixed states over an (ancilla, data) spin register.
//!
//! A register of `a + d` spins is described in Liouville space by products of
//! per-spin projectors. The algorithms in this crate only ever populate the
//! diagonal, so a state is a weighted multiset of basis configurations: each
//! component is a bit pattern (α encodes 0, β encodes 1) with a positive
//! multiplicity, and the total multiplicity `M` is preserved by every oracle
//! application.
//!
//! Measuring a spin returns an *intensity*: the sum over all components of
//! the component's sign at that spin (α contributes −1, β contributes +1).
//! For a mixture in which an oracle marked zero or one components, adding
//! `M − 1` to the intensity collapses it to a single sign in `{−1, +1}`.
//!
//! Bit order: qubit 1 is the most significant bit of its group, i.e. a data
//! value `z` reads `z₁z₂…z_d` from the top bit down.

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::oracle::PermutationOracle;

/// Widest register supported by the packed `u64` representation.
pub const MAX_REGISTER_WIDTH: u32 = 64;

/// Largest data width that explicit component maps are materialized at.
/// Wider mixtures must be streamed (see the search engine).
pub const DEFAULT_MATERIALIZE_CAP: u32 = 20;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LiouvilleError {
    #[error("register width {width} exceeds the {MAX_REGISTER_WIDTH}-qubit word budget")]
    WidthOverflow { width: u64 },
    #[error("data register needs at least one qubit")]
    EmptyDataRegister,
    #[error("qubit index {index} out of range (register width {width})")]
    IndexOutOfRange { index: u32, width: u32 },
    #[error("value {value:#x} does not fit in {bits} bits")]
    ValueOutOfRange { value: u64, bits: u32 },
    #[error(
        "intensity {intensity} over multiplicity {multiplicity} decodes to {decoded}: \
         the oracle marked a number of components other than zero or one"
    )]
    AmbiguousMarking {
        intensity: i64,
        multiplicity: u64,
        decoded: i64,
    },
    #[error("cannot materialize a {data_bits}-bit data domain (cap {cap})")]
    MaterializeCapExceeded { data_bits: u32, cap: u32 },
    #[error("state layout ({0}a+{1}d) does not match oracle layout ({2}a+{3}d)", .state.0, .state.1, .oracle.0, .oracle.1)]
    LayoutMismatch { state: (u32, u32), oracle: (u32, u32) },
    #[error("mixed state must contain at least one component")]
    EmptyState,
    #[error("operation requires a single readout ancilla, oracle has {0}")]
    SingleAncillaRequired(u32),
    #[error("state ancillas must all be α (got a component with ancilla pattern {0:#b})")]
    AncillaNotClear(u64),
}

/// One spin basis value. α is "up" and encodes bit 0, β is "down" and
/// encodes bit 1; their measured signs are −1 and +1 respectively.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum SpinValue {
    Alpha,
    Beta,
}

impl SpinValue {
    pub fn sign(self) -> i64 {
        match self {
            SpinValue::Alpha => -1,
            SpinValue::Beta => 1,
        }
    }

    pub fn bit(self) -> u64 {
        match self {
            SpinValue::Alpha => 0,
            SpinValue::Beta => 1,
        }
    }

    pub fn from_bit(bit: u64) -> Self {
        if bit & 1 == 0 {
            SpinValue::Alpha
        } else {
            SpinValue::Beta
        }
    }
}

impl fmt::Display for SpinValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SpinValue::Alpha => "α",
            SpinValue::Beta => "β",
        })
    }
}

/// Shape of the register: `ancilla_count` readout spins followed by
/// `data_count` data spins. Register positions are 1-based over the full
/// width, ancillas first.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct RegisterLayout {
    ancilla_count: u32,
    data_count: u32,
}

impl RegisterLayout {
    pub fn new(ancilla_count: u32, data_count: u32) -> Result<Self, LiouvilleError> {
        if data_count == 0 {
            return Err(LiouvilleError::EmptyDataRegister);
        }
        let width = u64::from(ancilla_count) + u64::from(data_count);
        if width > u64::from(MAX_REGISTER_WIDTH) {
            return Err(LiouvilleError::WidthOverflow { width });
        }
        Ok(Self {
            ancilla_count,
            data_count,
        })
    }

    pub fn ancilla_count(&self) -> u32 {
        self.ancilla_count
    }

    pub fn data_count(&self) -> u32 {
        self.data_count
    }

    pub fn width(&self) -> u32 {
        self.ancilla_count + self.data_count
    }

    /// Register position of ancilla qubit `i` (1-based).
    pub fn ancilla_position(&self, i: u32) -> u32 {
        i
    }

    /// Register position of data qubit `i` (1-based).
    pub fn data_position(&self, i: u32) -> u32 {
        self.ancilla_count + i
    }

    /// Number of data configurations, `2^d`.
    pub fn data_domain_size(&self) -> u64 {
        1u64 << self.data_count
    }

    fn check_ancilla_value(&self, value: u64) -> Result<(), LiouvilleError> {
        if self.ancilla_count < 64 && value >> self.ancilla_count != 0 {
            return Err(LiouvilleError::ValueOutOfRange {
                value,
                bits: self.ancilla_count,
            });
        }
        Ok(())
    }

    fn check_data_value(&self, value: u64) -> Result<(), LiouvilleError> {
        if self.data_count < 64 && value >> self.data_count != 0 {
            return Err(LiouvilleError::ValueOutOfRange {
                value,
                bits: self.data_count,
            });
        }
        Ok(())
    }

    pub fn config(&self, ancilla: u64, data: u64) -> Result<BasisConfig, LiouvilleError> {
        self.check_ancilla_value(ancilla)?;
        self.check_data_value(data)?;
        Ok(BasisConfig { ancilla, data })
    }
}

/// One basis configuration: the packed ancilla and data bit patterns.
/// Qubit 1 of each group is the most significant bit of its word.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct BasisConfig {
    pub ancilla: u64,
    pub data: u64,
}

impl BasisConfig {
    /// ±1 sign of the spin at 1-based register `position` under `layout`.
    pub fn sign_at(&self, layout: RegisterLayout, position: u32) -> Result<i64, LiouvilleError> {
        let bit = self.bit_at(layout, position)?;
        Ok(if bit == 1 { 1 } else { -1 })
    }

    /// Bit value (α→0, β→1) at 1-based register `position`.
    pub fn bit_at(&self, layout: RegisterLayout, position: u32) -> Result<u64, LiouvilleError> {
        let a = layout.ancilla_count();
        let d = layout.data_count();
        if position == 0 || position > layout.width() {
            return Err(LiouvilleError::IndexOutOfRange {
                index: position,
                width: layout.width(),
            });
        }
        Ok(if position <= a {
            (self.ancilla >> (a - position)) & 1
        } else {
            (self.data >> (d - (position - a))) & 1
        })
    }
}

/// A diagonal mixed state: basis configurations with positive multiplicities.
///
/// `M` (the total multiplicity) is the number of ensemble members; every
/// oracle application preserves it. Components are kept in a sorted map so
/// iteration and the debug serialization are deterministic.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MixedState {
    layout: RegisterLayout,
    components: BTreeMap<BasisConfig, u64>,
    multiplicity: u64,
}

impl MixedState {
    pub fn from_components<I>(layout: RegisterLayout, components: I) -> Result<Self, LiouvilleError>
    where
        I: IntoIterator<Item = (BasisConfig, u64)>,
    {
        let mut map = BTreeMap::new();
        let mut total: u64 = 0;
        for (config, mult) in components {
            layout.check_ancilla_value(config.ancilla)?;
            layout.check_data_value(config.data)?;
            if mult == 0 {
                continue;
            }
            *map.entry(config).or_insert(0) += mult;
            total += mult;
        }
        if total == 0 {
            return Err(LiouvilleError::EmptyState);
        }
        Ok(Self {
            layout,
            components: map,
            multiplicity: total,
        })
    }

    /// Single-configuration state: all ancillas α, the data part set to `data`.
    pub fn single(layout: RegisterLayout, data: u64) -> Result<Self, LiouvilleError> {
        let config = layout.config(0, data)?;
        Self::from_components(layout, [(config, 1)])
    }

    pub fn layout(&self) -> RegisterLayout {
        self.layout
    }

    /// Total multiplicity `M`.
    pub fn multiplicity(&self) -> u64 {
        self.multiplicity
    }

    pub fn components(&self) -> impl Iterator<Item = (BasisConfig, u64)> + '_ {
        self.components.iter().map(|(c, m)| (*c, *m))
    }

    pub fn component_count(&self) -> usize {
        self.components.len()
    }

    pub(crate) fn replace_components(
        &self,
        components: BTreeMap<BasisConfig, u64>,
        multiplicity: u64,
    ) -> Self {
        Self {
            layout: self.layout,
            components,
            multiplicity,
        }
    }
}

/// Debug serialization: one component per line, `<bitstring> x<multiplicity>`,
/// ancilla bits first, most significant qubit first.
impl fmt::Display for MixedState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (config, mult) in &self.components {
            let a = self.layout.ancilla_count() as usize;
            let d = self.layout.data_count() as usize;
            if a > 0 {
                write!(f, "{:0a$b}", config.ancilla, a = a)?;
            }
            writeln!(f, "{:0d$b} x{}", config.data, mult, d = d)?;
        }
        Ok(())
    }
}

/// A measured intensity: the signed sum `S` over all ensemble members at one
/// register position. `|S| ≤ M` and `S ≡ M (mod 2)` always hold.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct IntensityReading {
    pub qubit_index: u32,
    pub value: i64,
}

/// Implicit description of the mixtures the algorithms prepare: either the
/// full uniform data mixture or the half mixture with one data bit pinned.
/// Ancillas are always α. The description is index-addressable so the engine
/// can stream it in partitions without materializing components.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Mixture {
    layout: RegisterLayout,
    constraint: MixtureConstraint,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MixtureConstraint {
    /// All `2^d` data configurations, multiplicity 1 each.
    Full,
    /// All data configurations with one data qubit pinned to a value.
    Pinned { data_qubit: u32, value: SpinValue },
}

impl Mixture {
    /// The uniform mixture over all data configurations (the state the
    /// Walsh-Hadamard preparation step produces, viewed diagonally).
    pub fn uniform(layout: RegisterLayout) -> Self {
        Self {
            layout,
            constraint: MixtureConstraint::Full,
        }
    }

    /// The mixture over all data configurations with data qubit `data_qubit`
    /// (1-based) pinned to `value`.
    pub fn pinned(
        layout: RegisterLayout,
        data_qubit: u32,
        value: SpinValue,
    ) -> Result<Self, LiouvilleError> {
        if data_qubit == 0 || data_qubit > layout.data_count() {
            return Err(LiouvilleError::IndexOutOfRange {
                index: data_qubit,
                width: layout.data_count(),
            });
        }
        Ok(Self {
            layout,
            constraint: MixtureConstraint::Pinned { data_qubit, value },
        })
    }

    pub fn layout(&self) -> RegisterLayout {
        self.layout
    }

    pub fn constraint(&self) -> MixtureConstraint {
        self.constraint
    }

    /// Total multiplicity `M` of the described state.
    pub fn multiplicity(&self) -> u64 {
        match self.constraint {
            MixtureConstraint::Full => self.layout.data_domain_size(),
            MixtureConstraint::Pinned { .. } => 1u64 << (self.layout.data_count() - 1),
        }
    }

    /// Data value of the `index`-th member, `0 ≤ index < multiplicity()`.
    pub fn data_value(&self, index: u64) -> u64 {
        match self.constraint {
            MixtureConstraint::Full => index,
            MixtureConstraint::Pinned { data_qubit, value } => {
                // Insert the pinned bit at its position; the remaining bits
                // enumerate in ascending order.
                let low_width = self.layout.data_count() - data_qubit;
                let low = index & ((1u64 << low_width) - 1);
                let high = index >> low_width;
                (high << (low_width + 1)) | (value.bit() << low_width) | low
            }
        }
    }

    /// Materialize the described state as an explicit component map.
    pub fn materialize(&self, cap: u32) -> Result<MixedState, LiouvilleError> {
        let d = self.layout.data_count();
        if d > cap {
            return Err(LiouvilleError::MaterializeCapExceeded { data_bits: d, cap });
        }
        let components = (0..self.multiplicity()).map(|j| {
            (
                BasisConfig {
                    ancilla: 0,
                    data: self.data_value(j),
                },
                1,
            )
        });
        MixedState::from_components(self.layout, components)
    }
}

/// All-α ancillas, data ranging over every configuration; `M = 2^d`.
pub fn uniform_data_mixture(layout: RegisterLayout) -> Result<MixedState, LiouvilleError> {
    Mixture::uniform(layout).materialize(DEFAULT_MATERIALIZE_CAP)
}

/// All-α ancillas, data ranging over configurations with data qubit
/// `data_qubit` pinned to `value`; `M = 2^(d−1)`.
pub fn conditional_data_mixture(
    layout: RegisterLayout,
    data_qubit: u32,
    value: SpinValue,
) -> Result<MixedState, LiouvilleError> {
    Mixture::pinned(layout, data_qubit, value)?.materialize(DEFAULT_MATERIALIZE_CAP)
}

/// Signed sum of the spin at `position` over all ensemble members.
pub fn measure_intensity(
    state: &MixedState,
    position: u32,
) -> Result<IntensityReading, LiouvilleError> {
    let mut sum: i64 = 0;
    for (config, mult) in state.components() {
        sum += config.sign_at(state.layout(), position)? * mult as i64;
    }
    Ok(IntensityReading {
        qubit_index: position,
        value: sum,
    })
}

/// Collapse an intensity to a single sign by adding `M − 1`.
///
/// Legal inputs are `S = −M` (no marked member, result −1) and `S = −M + 2`
/// (exactly one marked member, result +1). Anything else means the oracle
/// marked several members and is reported as `AmbiguousMarking` rather than
/// rounded.
pub fn decode_sign(intensity: i64, multiplicity: u64) -> Result<i8, LiouvilleError> {
    let decoded = intensity + (multiplicity as i64 - 1);
    match decoded {
        -1 => Ok(-1),
        1 => Ok(1),
        other => Err(LiouvilleError::AmbiguousMarking {
            intensity,
            multiplicity,
            decoded: other,
        }),
    }
}

/// Evaluate the sum of a one-ancilla oracle's predicate over every member of
/// `state` with a single oracle application: apply, measure the readout spin,
/// decode. Returns the sum when it is 0 or 1; larger sums surface as
/// `AmbiguousMarking`.
pub fn mixed_sum_evaluate(
    oracle: &PermutationOracle,
    state: &MixedState,
) -> Result<u8, LiouvilleError> {
    let layout = oracle.layout();
    if layout.ancilla_count() != 1 {
        return Err(LiouvilleError::SingleAncillaRequired(layout.ancilla_count()));
    }
    if layout != state.layout() {
        return Err(LiouvilleError::LayoutMismatch {
            state: (state.layout().ancilla_count(), state.layout().data_count()),
            oracle: (layout.ancilla_count(), layout.data_count()),
        });
    }
    for (config, _) in state.components() {
        if config.ancilla != 0 {
            return Err(LiouvilleError::AncillaNotClear(config.ancilla));
        }
    }
    let applied = oracle.apply(state)?;
    let reading = measure_intensity(&applied, 1)?;
    let sign = decode_sign(reading.value, applied.multiplicity())?;
    Ok(u8::from(sign > 0))
}

/// Evaluate a one-ancilla oracle's predicate at a single data configuration
/// through the trace formula `f(s) = 1/2 − Tr{U_f I₀^α s U_f† I₀z}`.
///
/// On the diagonal representation the trace picks out the I₀z eigenvalue of
/// the post-oracle readout spin (α → +1/2, β → −1/2), so the result is exact
/// integer arithmetic in half units.
pub fn trace_formula_eval(
    oracle: &PermutationOracle,
    data_value: u64,
) -> Result<u8, LiouvilleError> {
    let layout = oracle.layout();
    if layout.ancilla_count() != 1 {
        return Err(LiouvilleError::SingleAncillaRequired(layout.ancilla_count()));
    }
    let input = layout.config(0, data_value)?;
    let output = oracle.apply_config(input);
    // Doubled I₀z eigenvalue of the readout spin: α → +1, β → −1.
    let doubled_trace: i64 = if output.ancilla >> (layout.ancilla_count() - 1) & 1 == 0 {
        1
    } else {
        -1
    };
    // f = 1/2 − Tr = (1 − 2·Tr) / 2, computed in doubled units.
    Ok(((1 - doubled_trace) / 2) as u8)
}
