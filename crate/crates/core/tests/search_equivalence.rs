//! Cross-checks between the two search algorithms, a plain linear scan, and
//! the two engine modes.

use spinsearch_core::liouville::{Mixture, RegisterLayout, SpinValue};
use spinsearch_core::oracle::{make_copy_oracle, make_crypto_oracle, make_flip_oracle};
use spinsearch_core::search::{
    bruschweiler_search, one_query_search, pad_domain, run_engine, EngineConfig, EngineMode,
};

fn config() -> EngineConfig {
    EngineConfig::default()
}

#[test]
fn both_algorithms_match_linear_scan_exhaustively() {
    for d in 1..=6u32 {
        for z in 0..(1u64 << d) {
            let scan = (0..(1u64 << d)).find(|&x| x == z).unwrap();

            let one = one_query_search(&make_copy_oracle(z, d).unwrap(), &config()).unwrap();
            assert_eq!(one.found, scan);
            assert_eq!(one.queries_used, 1);
            assert_eq!(one.domain_points_evaluated, 1 << d);

            let log = bruschweiler_search(&make_flip_oracle(z, d).unwrap(), &config()).unwrap();
            assert_eq!(log.found, scan);
            assert_eq!(log.queries_used, u64::from(d));
            assert_eq!(log.domain_points_evaluated, u64::from(d) * (1 << (d - 1)));
        }
    }
}

#[test]
fn single_and_zero_marked_readings_decode_cleanly() {
    use spinsearch_core::liouville::decode_sign;
    for d in 1..=6u32 {
        for z in 0..(1u64 << d) {
            let oracle = make_copy_oracle(z, d).unwrap();
            let mixture = Mixture::uniform(oracle.layout());
            let probes: Vec<u32> = (1..=d).collect();
            let readings = run_engine(&oracle, &mixture, &probes, &config()).unwrap();
            let m = mixture.multiplicity();
            for reading in readings {
                // Exactly one or zero β components at every ancilla.
                let sign = decode_sign(reading.value, m).unwrap();
                let bit = (z >> (d - reading.qubit_index)) & 1;
                assert_eq!(sign > 0, bit == 1);
            }
        }
    }
}

#[test]
fn padded_domains_ignore_sentinels() {
    // Five real elements in a 3-bit register; sentinel indices 5..8 are
    // unmarked padding that never returns a ciphertext.
    let domain = pad_domain(5);
    assert_eq!(domain.bits(), 3);
    let element_count = domain.element_count();
    for target in 0..element_count {
        let oracle = make_crypto_oracle(
            move |x| (x < element_count).then_some(x),
            target,
            domain.bits(),
            0,
        )
        .unwrap();
        let result = one_query_search(&oracle, &config()).unwrap();
        assert_eq!(result.found, target);
        assert_eq!(result.domain_points_evaluated, domain.padded_size());
    }
}

#[test]
fn data_probes_read_the_mixture_structure() {
    let layout = RegisterLayout::new(3, 3).unwrap();
    let oracle = make_copy_oracle(0b101, 3).unwrap();
    assert_eq!(oracle.layout(), layout);

    // Uniform mixture: every data bit is β in exactly half the members.
    let uniform = Mixture::uniform(layout);
    let readings = run_engine(&oracle, &uniform, &[4, 5, 6], &config()).unwrap();
    assert!(readings.iter().all(|r| r.value == 0));

    // Pinned mixture: the pinned bit reads ±M, the rest still balance.
    let pinned = Mixture::pinned(layout, 2, SpinValue::Beta).unwrap();
    let readings = run_engine(&oracle, &pinned, &[4, 5, 6], &config()).unwrap();
    assert_eq!(
        readings.iter().map(|r| r.value).collect::<Vec<_>>(),
        vec![0, 4, 0]
    );
}

#[test]
fn engine_modes_agree_across_mixtures_and_oracles() {
    let streaming = EngineConfig {
        mode: EngineMode::Streaming,
        partition_count: 5,
        ..EngineConfig::default()
    };
    let materialized = EngineConfig {
        mode: EngineMode::Materialized,
        ..EngineConfig::default()
    };
    for d in 1..=6u32 {
        for z in [0, (1u64 << d) - 1, 1 % (1u64 << d)] {
            let oracle = make_copy_oracle(z, d).unwrap();
            let probes: Vec<u32> = (1..=oracle.layout().width()).collect();
            let mixtures = {
                let mut all = vec![Mixture::uniform(oracle.layout())];
                for q in 1..=d {
                    all.push(Mixture::pinned(oracle.layout(), q, SpinValue::Alpha).unwrap());
                    all.push(Mixture::pinned(oracle.layout(), q, SpinValue::Beta).unwrap());
                }
                all
            };
            for mixture in mixtures {
                let fast = run_engine(&oracle, &mixture, &probes, &streaming).unwrap();
                let slow = run_engine(&oracle, &mixture, &probes, &materialized).unwrap();
                assert_eq!(fast, slow);
            }
        }
    }
}

#[test]
fn one_query_runs_streaming_beyond_the_materialize_cap() {
    // 22 data bits cannot be materialized at the default cap but stream fine.
    let oracle = make_copy_oracle(0x2A_ABCD, 22).unwrap();
    let result = one_query_search(&oracle, &config()).unwrap();
    assert_eq!(result.found, 0x2A_ABCD);
    assert_eq!(result.domain_points_evaluated, 1 << 22);

    let materialized = EngineConfig {
        mode: EngineMode::Materialized,
        ..EngineConfig::default()
    };
    assert!(one_query_search(&oracle, &materialized).is_err());
}
