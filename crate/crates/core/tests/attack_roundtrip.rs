//! Attack drivers cross-checked against the brute-force decryption oracle on
//! generated instances.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use spinsearch_core::crypto::{
    attack, brute_force_decrypt, mceliece_encrypt, rsa_encrypt, McElieceEncryptor, McElieceKey,
    RandomizedEncryptor, RsaKey,
};
use spinsearch_core::search::EngineConfig;

fn config() -> EngineConfig {
    EngineConfig::default()
}

/// Attack vs brute force on one instance. When the preimage is unique the
/// attack must recover it; otherwise it must either report the ambiguity or
/// return some genuine preimage, never a wrong one.
fn check_instance<E: RandomizedEncryptor>(encryptor: &E, ciphertext: u64) {
    let preimages = brute_force_decrypt(encryptor, ciphertext).unwrap();
    let outcome = attack(encryptor, ciphertext, &config());
    match preimages.len() {
        1 => {
            let report = outcome.unwrap();
            assert_eq!(
                (report.recovered_message, report.recovered_randomness.map(|r| r.index)),
                (preimages[0].0, (encryptor.randomness_bits() > 0).then_some(preimages[0].1)),
            );
            assert!(report.reencrypts_to_ciphertext);
            // Message-ancilla intensities follow the closed form −M + 2·bit.
            let n1 = report.message_bits;
            let m = report.mixture_size as i64;
            for (i, reading) in report.intensities.iter().take(n1 as usize).enumerate() {
                let bit = (report.recovered_message >> (n1 as usize - 1 - i)) & 1;
                assert_eq!(reading.value, -m + 2 * bit as i64);
            }
        }
        _ => {
            if let Ok(report) = outcome {
                let recovered = (
                    report.recovered_message,
                    report.recovered_randomness.map(|r| r.index).unwrap_or(0),
                );
                assert!(preimages.contains(&recovered));
            }
        }
    }
}

#[test]
fn rsa_attack_exhaustive_over_small_keys() {
    for (e, n) in [(7u64, 15u64), (3, 33), (5, 35), (11, 29)] {
        let key = RsaKey::new(e, n).unwrap();
        for c in 0..(1u64 << key.message_bits()) {
            check_instance(&key, c);
        }
    }
}

#[test]
fn rsa_attack_random_instances() {
    let mut rng = ChaCha8Rng::seed_from_u64(0xC0FFEE);
    for _ in 0..50 {
        let modulus = rng.random_range(6u64..=1 << 16);
        let exponent = rng.random_range(2u64..=17) | 1;
        let key = RsaKey::new(exponent, modulus).unwrap();
        let message = rng.random_range(0..modulus);
        let ciphertext = rsa_encrypt(message, &key);
        check_instance(&key, ciphertext);
    }
}

fn random_mceliece_key(rng: &mut ChaCha8Rng) -> McElieceKey {
    loop {
        let k = rng.random_range(2u32..=3);
        let n = rng.random_range(6u32..=9);
        let t = rng.random_range(1u32..=2);
        let rows: Vec<u64> = (0..k).map(|_| rng.random_range(0..(1u64 << n))).collect();
        if let Ok(key) = McElieceKey::new(rows, n, t) {
            return key;
        }
    }
}

#[test]
fn mceliece_attack_random_instances() {
    let mut rng = ChaCha8Rng::seed_from_u64(0xBEEF);
    for _ in 0..20 {
        let key = random_mceliece_key(&mut rng);
        let encryptor = McElieceEncryptor::new(key.clone()).unwrap();
        let message = rng.random_range(0..(1u64 << key.dimension()));
        let error_index = rng.random_range(0..encryptor.domain().count());
        let error = encryptor.domain().vector_at(error_index).unwrap();
        let ciphertext = mceliece_encrypt(message, error, &key).unwrap();
        check_instance(&encryptor, ciphertext);
    }
}

#[test]
fn mceliece_attack_exhaustive_over_a_small_key() {
    let key = McElieceKey::from_text("110101\n011011", 1).unwrap();
    let encryptor = McElieceEncryptor::new(key).unwrap();
    assert_eq!(encryptor.domain().count(), 7);
    assert_eq!(encryptor.randomness_bits(), 3);
    for c in 0..(1u64 << 6) {
        check_instance(&encryptor, c);
    }
}

#[test]
fn recovered_randomness_reencrypts() {
    let key = McElieceKey::from_text("11010101\n10001111", 2).unwrap();
    let encryptor = McElieceEncryptor::new(key.clone()).unwrap();
    let report = attack(&encryptor, 0b01010011, &config()).unwrap();
    let randomness = report.recovered_randomness.unwrap();
    assert_eq!(
        mceliece_encrypt(report.recovered_message, randomness.vector, &key).unwrap(),
        0b01010011
    );
}
