//! Quantum Fourier transform: dense matrices and gate-level circuits.
//!
//! `F_{2^n}` has entry `(v, u) = ω^{u·v}/√(2^n)` with `ω = e^{2πi/2^n}`:
//! input basis state `u` (column) spreads over output amplitudes `v` (row).

use crate::circuit::{Circuit, QubitIndex, MAX_QUBITS};
use crate::error::{Error, Result};
use crate::gates::Gate;
use crate::matrix::{c, root_of_unity, ComplexMatrix};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct QftSpec {
    pub n: usize,
    pub inverse: bool,
    pub include_final_swaps: bool,
}

impl QftSpec {
    pub fn forward(n: usize) -> Self {
        QftSpec {
            n,
            inverse: false,
            include_final_swaps: true,
        }
    }

    pub fn inverse(n: usize) -> Self {
        QftSpec {
            inverse: true,
            ..Self::forward(n)
        }
    }

    pub fn without_swaps(self) -> Self {
        QftSpec {
            include_final_swaps: false,
            ..self
        }
    }
}

fn check_n(n: usize, min: usize, max: usize) -> Result<()> {
    if n < min || n > max {
        return Err(Error::QubitCountOutOfRange { n, min, max });
    }
    Ok(())
}

fn fourier_matrix(n: usize, inverse: bool) -> Result<ComplexMatrix> {
    check_n(n, 0, MAX_QUBITS)?;
    let dim = 1usize << n;
    let modulus = dim as u64;
    let norm = c((1.0 / dim as f64).sqrt(), 0.0);
    Ok(ComplexMatrix::from_fn(dim, |v, u| {
        let k = (u as u64 * v as u64) % modulus;
        let k = if inverse { (modulus - k) % modulus } else { k };
        root_of_unity(k, modulus) * norm
    }))
}

/// `F_{2^n}`; `n = 0` gives the 1×1 identity.
pub fn qft_matrix(n: usize) -> Result<ComplexMatrix> {
    fourier_matrix(n, false)
}

/// `F_{2^n}⁻¹`, entry `(u, v) = ω^{−u·v}/√(2^n)`.
pub fn iqft_matrix(n: usize) -> Result<ComplexMatrix> {
    fourier_matrix(n, true)
}

/// Hadamard + controlled-phase ladder without the final wire reversal.
///
/// Working from the most significant wire down, each wire gets `H` and then
/// a controlled `diag(1, e^{±iπ/2^d})` from every lower wire at distance
/// `d` (S, T, U for `d = 1, 2, 3`). The inverse uses the same layout with
/// conjugated phases; since `F` is symmetric this yields `conj(F) = F⁻¹`.
fn ladder(n: usize, inverse: bool) -> Circuit {
    let mut c = Circuit::new(n);
    for target in (0..n).rev() {
        c = c.h(target);
        for control in (0..target).rev() {
            let distance = (target - control) as u32;
            c = c.controlled(Gate::phase(distance + 1, inverse), &[control], &[target]);
        }
    }
    c
}

fn reversal_swaps(c: Circuit, n: usize) -> Circuit {
    (0..n / 2).fold(c, |c, i| c.swap(i, n - 1 - i))
}

/// Gate-level QFT (or inverse) on `spec.n` wires.
pub fn qft_circuit(spec: QftSpec) -> Result<Circuit> {
    check_n(spec.n, 1, MAX_QUBITS)?;
    let c = ladder(spec.n, spec.inverse);
    Ok(if spec.include_final_swaps {
        reversal_swaps(c, spec.n)
    } else {
        c
    })
}

/// [`qft_circuit`] placed on the given wires of an `n_qubits` register;
/// `wires[j]` plays the role of local qubit `j`.
pub fn qft_circuit_on(spec: QftSpec, wires: &[QubitIndex], n_qubits: usize) -> Result<Circuit> {
    if wires.len() != spec.n {
        return Err(Error::ArityMismatch {
            expected: spec.n,
            got: wires.len(),
        });
    }
    let local = qft_circuit(spec)?;
    let mut out = Circuit::try_new(n_qubits)?;
    for op in local.ops() {
        let map = |v: &Vec<QubitIndex>| v.iter().map(|&w| wires[w]).collect::<Vec<_>>();
        let mut mapped = op.clone();
        mapped.targets = map(&op.targets);
        mapped.controls = map(&op.controls);
        mapped.anti_controls = map(&op.anti_controls);
        out.push(mapped)?;
    }
    Ok(out)
}

/// Swap-free circuit for `F²` (or `(F⁻¹)²`).
///
/// Writing `F = R·L` with `L` the ladder and `R` the wire reversal,
/// `F² = (R·L·R)·L`, and `R·L·R` is the ladder with mirrored wires, so the
/// two reversals cancel.
pub fn qft_squared_circuit(n: usize, inverse: bool) -> Result<Circuit> {
    check_n(n, 2, 4)?;
    let l = ladder(n, inverse);
    let mirrored: Vec<QubitIndex> = (0..n).rev().collect();
    Ok(l.clone().append_mapped(&l, &mirrored))
}

/// Bit-reversal permutation on `n` qubits.
pub fn bit_reversal(n: usize) -> ComplexMatrix {
    ComplexMatrix::permutation(1 << n, |x| {
        (0..n).fold(0, |acc, j| acc | (((x >> j) & 1) << (n - 1 - j)))
    })
}
