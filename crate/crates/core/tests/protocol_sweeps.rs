use fqc_core::protocols::{qss, random_qubit, teleport, Pauli, QssVariant, TeleportVariant};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn inputs(seed: u64, count: usize) -> Vec<fqc_core::protocols::PureState> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| random_qubit([0; 4].map(|_| rng.gen_range(-1.0..1.0))))
        .collect()
}

#[test]
fn teleportation_is_a_perfect_channel() {
    for input in inputs(7, 100) {
        let reference = teleport(&input, TeleportVariant::A).unwrap();
        for v in TeleportVariant::ALL {
            let r = teleport(&input, v).unwrap();
            assert_eq!(r.branches.len(), 4);
            for b in &r.branches {
                assert!((b.probability - 0.25).abs() < 1e-12);
                assert!(b.fidelity >= 1.0 - 1e-12);
                assert_eq!(b.correction, Pauli::I);
            }
            assert!(r.agrees_with(&reference, 1e-10), "variant {v:?}");
        }
    }
}

#[test]
fn secret_sharing_variants_coincide() {
    for input in inputs(11, 20) {
        for parties in [3, 4] {
            let results: Vec<_> = QssVariant::ALL
                .iter()
                .map(|&v| qss(&input, parties, v).unwrap())
                .collect();
            for r in &results {
                assert_eq!(r.branches.len(), 1 << parties);
                assert!((r.total_probability() - 1.0).abs() < 1e-10);
                assert!(r.min_fidelity() >= 1.0 - 1e-10);
                for b in &r.branches {
                    assert!((b.post_state.vector().norm() - 1.0).abs() < 1e-10);
                }
            }
            for a in &results {
                for b in &results {
                    assert!(a.agrees_with(b, 1e-10), "{} vs {}", a.variant, b.variant);
                }
            }
        }
    }
}
