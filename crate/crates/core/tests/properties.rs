use fqc_core::circuit::{compose, embed, inverse_of, unitary_of};
use fqc_core::gates::{self, Gate};
use fqc_core::matrix::{c, dist_up_to_phase, Complex64, ComplexMatrix};
use fqc_core::qft::{iqft_matrix, qft_matrix};
use fqc_core::{Circuit, CircuitOp};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn random_matrix(dim: usize, seed: u64) -> ComplexMatrix {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    ComplexMatrix::from_fn(dim, |_, _| {
        c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))
    })
}

/// Haar-ish random unitary from Gram-Schmidt on random columns.
fn random_unitary(dim: usize, seed: u64) -> ComplexMatrix {
    let m = random_matrix(dim, seed);
    let mut cols: Vec<Vec<Complex64>> = Vec::new();
    for j in 0..dim {
        let mut v: Vec<Complex64> = (0..dim).map(|i| m.get(i, j)).collect();
        for u in &cols {
            let proj: Complex64 = u.iter().zip(&v).map(|(a, b)| a.conj() * b).sum();
            for (x, y) in v.iter_mut().zip(u) {
                *x -= proj * y;
            }
        }
        let norm = v.iter().map(|x| x.norm_sqr()).sum::<f64>().sqrt();
        cols.push(v.into_iter().map(|x| x / norm).collect());
    }
    ComplexMatrix::from_fn(dim, |i, j| cols[j][i])
}

fn reversal(dim: usize) -> ComplexMatrix {
    ComplexMatrix::permutation(dim, |x| dim - 1 - x)
}

const SINGLE: [Gate; 13] = [
    Gate::X,
    Gate::Y,
    Gate::Z,
    Gate::H,
    Gate::S,
    Gate::Sdg,
    Gate::T,
    Gate::Tdg,
    Gate::U,
    Gate::Udg,
    Gate::V,
    Gate::Vdg,
    Gate::Phase { k: 6, dagger: true },
];

fn random_circuit(n: usize, len: usize, seed: u64) -> Circuit {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut c = Circuit::new(n);
    for _ in 0..len {
        let mut wires: Vec<usize> = (0..n).collect();
        for i in (1..n).rev() {
            wires.swap(i, rng.gen_range(0..=i));
        }
        let gate = match rng.gen_range(0..4) {
            0 if n >= 2 => Gate::Swap,
            1 if n >= 3 => Gate::Peres,
            2 if n >= 3 => Gate::Miller,
            _ => SINGLE[rng.gen_range(0..SINGLE.len())].clone(),
        };
        let arity = gate.arity();
        let extra = rng.gen_range(0..=(n - arity).min(2));
        let mut op = CircuitOp::new(gate, wires[..arity].to_vec());
        for &w in &wires[arity..arity + extra] {
            if rng.gen_bool(0.5) {
                op.controls.push(w);
            } else {
                op.anti_controls.push(w);
            }
        }
        c = c.then(op);
    }
    c
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn flips_are_permutation_products(dim in 2usize..=8, seed in any::<u64>()) {
        let m = random_matrix(dim, seed);
        let p = reversal(dim);
        prop_assert!(m.flip_h().max_abs_diff(&(&p * &m)).unwrap() == 0.0);
        prop_assert!(m.flip_v().max_abs_diff(&(&m * &p)).unwrap() == 0.0);
        prop_assert_eq!(m.flip_h().flip_h(), m.clone());
        prop_assert_eq!(m.flip_h().flip_v(), m.flip_v().flip_h());
    }

    #[test]
    fn distance_is_symmetric_and_phase_blind(dim in 1usize..=8, seed in any::<u64>(), phi in -3.1f64..3.1) {
        let a = random_unitary(dim, seed);
        let b = random_unitary(dim, seed ^ 0xabcdef);
        let ab = dist_up_to_phase(&a, &b).unwrap().distance;
        let ba = dist_up_to_phase(&b, &a).unwrap().distance;
        prop_assert!((ab - ba).abs() < 1e-10);
        let rotated = a.scale(Complex64::from_polar(1.0, phi));
        let pd = dist_up_to_phase(&rotated, &a).unwrap();
        prop_assert!(pd.distance < 1e-10);
        let diff = (pd.phase - phi).rem_euclid(std::f64::consts::TAU);
        prop_assert!(diff < 1e-9 || std::f64::consts::TAU - diff < 1e-9);
    }

    #[test]
    fn kron_laws(seed in any::<u64>()) {
        let [a, b, cm, d] = [0, 1, 2, 3].map(|k| random_matrix(2, seed.wrapping_add(k)));
        let left = a.kron(&b).kron(&cm);
        let right = a.kron(&b.kron(&cm));
        prop_assert!(left.max_abs_diff(&right).unwrap() < 1e-12);
        let mixed = &a.kron(&b) * &cm.kron(&d);
        let expected = (&a * &cm).kron(&(&b * &d));
        prop_assert!(mixed.max_abs_diff(&expected).unwrap() < 1e-12);
    }

    #[test]
    fn controlled_is_multiplicative(seed in any::<u64>(), qubits in 1usize..=2) {
        let dim = 1 << qubits;
        let a = random_unitary(dim, seed);
        let b = random_unitary(dim, seed ^ 1);
        let lhs = gates::controlled(&(&a * &b)).unwrap();
        let rhs = &gates::controlled(&a).unwrap() * &gates::controlled(&b).unwrap();
        prop_assert!(lhs.max_abs_diff(&rhs).unwrap() < 1e-12);
        prop_assert!(lhs.is_unitary(Default::default()));
    }

    #[test]
    fn inverse_of_is_dagger(n in 1usize..=5, len in 0usize..=20, seed in any::<u64>()) {
        let c = random_circuit(n, len, seed);
        let u = unitary_of(&c);
        let inv = unitary_of(&inverse_of(&c));
        prop_assert!(inv.max_abs_diff(&u.dagger()).unwrap() < 1e-10);
        let id = unitary_of(&compose(&c, &inverse_of(&c)).unwrap());
        prop_assert!(id.max_abs_diff(&ComplexMatrix::identity(1 << n)).unwrap() < 1e-10);
    }

    #[test]
    fn composition_multiplies_later_on_the_left(seed in any::<u64>()) {
        let a = random_circuit(3, 6, seed);
        let b = random_circuit(3, 6, seed ^ 7);
        let ab = unitary_of(&compose(&a, &b).unwrap());
        let expected = &unitary_of(&b) * &unitary_of(&a);
        prop_assert!(ab.max_abs_diff(&expected).unwrap() < 1e-10);
    }

    #[test]
    fn embedding_preserves_unitarity(seed in any::<u64>(), n in 2usize..=5) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let u = random_unitary(4, seed);
        let a = rng.gen_range(0..n);
        let b = (a + rng.gen_range(1..n)) % n;
        let e = embed(&u, &[a, b], n).unwrap();
        prop_assert!(e.is_unitary(Default::default()));
    }

    #[test]
    fn swap_exchanges_kron_factors(seed in any::<u64>()) {
        let a = random_matrix(2, seed);
        let b = random_matrix(2, seed ^ 3);
        let s = gates::swap_matrix();
        let lhs = &(&s * &a.kron(&b)) * &s;
        prop_assert!(lhs.max_abs_diff(&b.kron(&a)).unwrap() < 1e-15);
    }
}

#[test]
fn controlled_phase_is_wire_symmetric() {
    let mut phases: Vec<Gate> = vec![
        Gate::Z,
        Gate::S,
        Gate::Sdg,
        Gate::T,
        Gate::Tdg,
        Gate::U,
        Gate::Udg,
    ];
    phases.extend((5..=8).map(|k| Gate::phase(k, false)));
    for g in phases {
        let block = gates::controlled(&g.matrix()).unwrap();
        for (i, j) in [(0, 1), (0, 3), (2, 1)] {
            let a = embed(&block, &[i, j], 4).unwrap();
            let b = embed(&block, &[j, i], 4).unwrap();
            assert!(a.max_abs_diff(&b).unwrap() < 1e-15, "{g:?}");
        }
    }
}

#[test]
fn fourier_fourth_power_is_identity() {
    for n in 0..=8 {
        let f = qft_matrix(n).unwrap();
        let f2 = &f * &f;
        let neg = ComplexMatrix::permutation(1 << n, |x| ((1 << n) - x) % (1 << n));
        assert!(f2.max_abs_diff(&neg).unwrap() < 1e-9, "n={n}");
        let f4 = &f2 * &f2;
        assert!(
            f4.max_abs_diff(&ComplexMatrix::identity(1 << n)).unwrap() < 1e-9,
            "n={n}"
        );
        let round = &f * &iqft_matrix(n).unwrap();
        assert!(
            round
                .max_abs_diff(&ComplexMatrix::identity(1 << n))
                .unwrap()
                < 1e-12
        );
    }
}
