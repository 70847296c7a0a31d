//! Circuit representation and dense expansion.
//!
//! Qubit `q0` is the least significant bit of a basis index. Operations are
//! listed in time order; expansion multiplies later operations on the left.
//!
//! An operation's local matrix covers its wires in the order
//! `targets ++ controls ++ anti_controls`, lowest bit first, so control
//! qubits sit in the high bits of the block exactly as in
//! [`with_controls`].

use crate::error::{Error, Result};
use crate::gates::Gate;
use crate::matrix::{ComplexMatrix, ComplexVector, ONE};

pub type QubitIndex = usize;

/// Largest register the dense expansion accepts.
pub const MAX_QUBITS: usize = 12;

#[derive(Debug, Clone, PartialEq)]
pub struct CircuitOp {
    pub gate: Gate,
    pub targets: Vec<QubitIndex>,
    pub controls: Vec<QubitIndex>,
    pub anti_controls: Vec<QubitIndex>,
}

impl CircuitOp {
    pub fn new(gate: Gate, targets: Vec<QubitIndex>) -> Self {
        CircuitOp {
            gate,
            targets,
            controls: Vec::new(),
            anti_controls: Vec::new(),
        }
    }

    pub fn with_controls(mut self, controls: Vec<QubitIndex>) -> Self {
        self.controls = controls;
        self
    }

    pub fn with_anti_controls(mut self, anti_controls: Vec<QubitIndex>) -> Self {
        self.anti_controls = anti_controls;
        self
    }

    /// All wires in local-bit order.
    pub fn wires(&self) -> Vec<QubitIndex> {
        self.targets
            .iter()
            .chain(&self.controls)
            .chain(&self.anti_controls)
            .copied()
            .collect()
    }

    pub fn validate(&self, n_qubits: usize) -> Result<()> {
        let arity = self.gate.arity();
        if arity == 0 {
            return Err(Error::NotPowerOfTwo(match &self.gate {
                Gate::Matrix(m) => m.dim(),
                _ => 0,
            }));
        }
        if self.targets.len() != arity {
            return Err(Error::ArityMismatch {
                expected: arity,
                got: self.targets.len(),
            });
        }
        let wires = self.wires();
        for (i, &w) in wires.iter().enumerate() {
            if w >= n_qubits {
                return Err(Error::QubitOutOfRange { qubit: w, n_qubits });
            }
            if wires[..i].contains(&w) {
                return Err(Error::DuplicateWire(w));
            }
        }
        Ok(())
    }

    pub fn local_matrix(&self) -> ComplexMatrix {
        with_controls(
            &self.gate.matrix(),
            self.controls.len(),
            self.anti_controls.len(),
        )
    }

    pub fn dagger(&self) -> CircuitOp {
        CircuitOp {
            gate: self.gate.dagger(),
            ..self.clone()
        }
    }
}

/// Ordered list of operations on `n_qubits` wires.
#[derive(Debug, Clone, PartialEq)]
pub struct Circuit {
    n_qubits: usize,
    ops: Vec<CircuitOp>,
}

impl Circuit {
    /// Empty circuit. Panics when `n_qubits` is outside `1..=MAX_QUBITS`;
    /// see [`Circuit::try_new`].
    pub fn new(n_qubits: usize) -> Self {
        Self::try_new(n_qubits).expect("qubit count in range")
    }

    pub fn try_new(n_qubits: usize) -> Result<Self> {
        if !(1..=MAX_QUBITS).contains(&n_qubits) {
            return Err(Error::QubitCountOutOfRange {
                n: n_qubits,
                min: 1,
                max: MAX_QUBITS,
            });
        }
        Ok(Circuit {
            n_qubits,
            ops: Vec::new(),
        })
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn ops(&self) -> &[CircuitOp] {
        &self.ops
    }

    pub fn len(&self) -> usize {
        self.ops.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ops.is_empty()
    }

    pub fn push(&mut self, op: CircuitOp) -> Result<()> {
        op.validate(self.n_qubits)?;
        self.ops.push(op);
        Ok(())
    }

    /// Chaining form of [`Circuit::push`] for hand-written constructions;
    /// panics on an invalid operation.
    pub fn then(mut self, op: CircuitOp) -> Self {
        if let Err(e) = self.push(op) {
            panic!("invalid operation in construction: {e}");
        }
        self
    }

    pub fn gate(self, gate: Gate, targets: &[QubitIndex]) -> Self {
        self.then(CircuitOp::new(gate, targets.to_vec()))
    }

    pub fn controlled(self, gate: Gate, controls: &[QubitIndex], targets: &[QubitIndex]) -> Self {
        self.then(CircuitOp::new(gate, targets.to_vec()).with_controls(controls.to_vec()))
    }

    pub fn h(self, q: QubitIndex) -> Self {
        self.gate(Gate::H, &[q])
    }

    pub fn x(self, q: QubitIndex) -> Self {
        self.gate(Gate::X, &[q])
    }

    pub fn cx(self, control: QubitIndex, target: QubitIndex) -> Self {
        self.controlled(Gate::X, &[control], &[target])
    }

    pub fn cz(self, control: QubitIndex, target: QubitIndex) -> Self {
        self.controlled(Gate::Z, &[control], &[target])
    }

    pub fn ccx(self, c0: QubitIndex, c1: QubitIndex, target: QubitIndex) -> Self {
        self.controlled(Gate::X, &[c0, c1], &[target])
    }

    pub fn swap(self, a: QubitIndex, b: QubitIndex) -> Self {
        self.gate(Gate::Swap, &[a, b])
    }

    /// Appends every operation of `other` (same width).
    pub fn append(mut self, other: &Circuit) -> Self {
        assert_eq!(self.n_qubits, other.n_qubits, "circuit width mismatch");
        self.ops.extend(other.ops.iter().cloned());
        self
    }

    /// Appends `other` with its wire `j` mapped to `wires[j]`.
    pub fn append_mapped(mut self, other: &Circuit, wires: &[QubitIndex]) -> Self {
        assert_eq!(other.n_qubits, wires.len(), "wire map length mismatch");
        for op in &other.ops {
            let map = |v: &Vec<QubitIndex>| v.iter().map(|&w| wires[w]).collect();
            let mapped = CircuitOp {
                gate: op.gate.clone(),
                targets: map(&op.targets),
                controls: map(&op.controls),
                anti_controls: map(&op.anti_controls),
            };
            self = self.then(mapped);
        }
        self
    }
}

/// Places a `k`-qubit `gate` on `wires` (wire `j` = local bit `j`) inside an
/// `n`-qubit register, identity elsewhere.
pub fn embed(gate: &ComplexMatrix, wires: &[QubitIndex], n: usize) -> Result<ComplexMatrix> {
    if gate.dim() != 1 << wires.len() {
        return Err(Error::ArityMismatch {
            expected: gate.qubits().unwrap_or(0),
            got: wires.len(),
        });
    }
    check_wires(wires, n)?;
    let dim = 1usize << n;
    let k = wires.len();
    let mask: usize = wires.iter().map(|&w| 1 << w).sum();
    let spread = |local: usize, base: usize| {
        (0..k).fold(base, |acc, j| acc | (((local >> j) & 1) << wires[j]))
    };
    let mut out = ComplexMatrix::zeros(dim);
    for col in 0..dim {
        let base = col & !mask;
        let local_col = (0..k).fold(0, |acc, j| acc | (((col >> wires[j]) & 1) << j));
        for local_row in 0..(1 << k) {
            let z = gate.get(local_row, local_col);
            if z != crate::matrix::ZERO {
                out.set(spread(local_row, base), col, z);
            }
        }
    }
    Ok(out)
}

fn check_wires(wires: &[QubitIndex], n: usize) -> Result<()> {
    for (i, &w) in wires.iter().enumerate() {
        if w >= n {
            return Err(Error::QubitOutOfRange {
                qubit: w,
                n_qubits: n,
            });
        }
        if wires[..i].contains(&w) {
            return Err(Error::DuplicateWire(w));
        }
    }
    Ok(())
}

/// Extends `gate` with `controls` control bits followed by `anti_controls`
/// anti-control bits above it. The gate acts only when every control bit
/// is 1 and every anti-control bit is 0.
pub fn with_controls(gate: &ComplexMatrix, controls: usize, anti_controls: usize) -> ComplexMatrix {
    let g = gate.dim();
    let extra = controls + anti_controls;
    let dim = g << extra;
    let active_block = ((1usize << controls) - 1) * g;
    let mut out = ComplexMatrix::identity(dim);
    for r in 0..g {
        for col in 0..g {
            out.set(active_block + r, active_block + col, gate.get(r, col));
        }
    }
    out
}

/// Precomputed action of one operation on a full register.
struct Kernel {
    local: ComplexMatrix,
    /// `groups[g]` lists the `2^k` global indices touched together.
    groups: Vec<Vec<usize>>,
}

impl Kernel {
    fn new(op: &CircuitOp, n: usize) -> Self {
        let wires = op.wires();
        let k = wires.len();
        let mask: usize = wires.iter().map(|&w| 1 << w).sum();
        let groups = (0..1usize << n)
            .filter(|base| base & mask == 0)
            .map(|base| {
                (0..1usize << k)
                    .map(|local| (0..k).fold(base, |acc, j| acc | (((local >> j) & 1) << wires[j])))
                    .collect()
            })
            .collect();
        Kernel {
            local: op.local_matrix(),
            groups,
        }
    }

    fn apply(
        &self,
        amps: &mut [num_complex::Complex64],
        scratch: &mut Vec<num_complex::Complex64>,
    ) {
        let m = &self.local;
        let d = m.dim();
        for group in &self.groups {
            scratch.clear();
            scratch.extend(group.iter().map(|&i| amps[i]));
            for (r, &gi) in group.iter().enumerate() {
                let mut acc = crate::matrix::ZERO;
                for (col, &a) in scratch.iter().enumerate() {
                    acc += m.as_slice()[r * d + col] * a;
                }
                amps[gi] = acc;
            }
        }
    }
}

/// Applies `c` to a state vector of matching dimension.
pub fn apply_circuit(c: &Circuit, state: &ComplexVector) -> Result<ComplexVector> {
    let dim = 1usize << c.n_qubits;
    if state.dim() != dim {
        return Err(Error::DimensionMismatch {
            left: dim,
            right: state.dim(),
        });
    }
    let mut amps = state.clone();
    let mut scratch = Vec::new();
    for op in &c.ops {
        Kernel::new(op, c.n_qubits).apply(amps.as_mut_slice(), &mut scratch);
    }
    Ok(amps)
}

/// Dense unitary of the whole circuit.
pub fn unitary_of(c: &Circuit) -> ComplexMatrix {
    let n = c.n_qubits;
    let dim = 1usize << n;
    let kernels: Vec<Kernel> = c.ops.iter().map(|op| Kernel::new(op, n)).collect();
    let mut scratch = Vec::new();
    let mut out = ComplexMatrix::zeros(dim);
    for col in 0..dim {
        let mut v = vec![crate::matrix::ZERO; dim];
        v[col] = ONE;
        for k in &kernels {
            k.apply(&mut v, &mut scratch);
        }
        for (r, z) in v.into_iter().enumerate() {
            out.set(r, col, z);
        }
    }
    out
}

/// `a` followed by `b`.
pub fn compose(a: &Circuit, b: &Circuit) -> Result<Circuit> {
    if a.n_qubits != b.n_qubits {
        return Err(Error::WidthMismatch {
            left: a.n_qubits,
            right: b.n_qubits,
        });
    }
    Ok(a.clone().append(b))
}

/// Reversed operation order with every gate replaced by its inverse.
pub fn inverse_of(c: &Circuit) -> Circuit {
    Circuit {
        n_qubits: c.n_qubits,
        ops: c.ops.iter().rev().map(CircuitOp::dagger).collect(),
    }
}

/// CNOT with control `q1` and target `q0`, realized as `(H⊗H)·CX·(H⊗H)`
/// around the standard CNOT (control `q0`).
pub fn flipped_cnot() -> Circuit {
    Circuit::new(2).h(0).h(1).cx(0, 1).h(0).h(1)
}

/// The three SWAP realizations: alternating CNOT/flipped CNOT, the same with
/// the flipped CNOT written out with Hadamards, and the all-Fourier form
/// where every CNOT is `F₄⁻¹·F₄⁻¹` and every Hadamard is `F₂`.
pub fn swap_constructions() -> Vec<Circuit> {
    let flipped_as_cx = Circuit::new(2).controlled(Gate::X, &[1], &[0]);
    let with_flipped = Circuit::new(2).cx(0, 1).append(&flipped_as_cx).cx(0, 1);
    let with_hadamards = Circuit::new(2).cx(0, 1).append(&flipped_cnot()).cx(0, 1);
    let fourier = crate::constructions::fourier_form(&with_hadamards);
    vec![with_flipped, with_hadamards, fourier]
}
