//! Named circuit constructions and the rewrites that generate their
//! Fourier-based variants.
//!
//! Three rewrites recur everywhere:
//! - [`fourier_form`]: each `H` becomes an `F₂` block and each CNOT becomes
//!   two `F₄⁻¹` blocks on `(control, target)`, since `F₄⁻¹·F₄⁻¹ = CNOT`.
//! - [`hadamard_csdg_form`]: each CNOT becomes `H·CS⁻¹·CS⁻¹·H` on the target.
//! - [`cz_as_h_cx`]: each CZ becomes `H·CNOT·H` on the target.
//!
//! Wire convention for three-qubit gates: controls `a = 0`, `b = 1`,
//! target `c = 2`.

use crate::circuit::{Circuit, CircuitOp, QubitIndex};
use crate::gates::Gate;
use crate::qft::{iqft_matrix, qft_matrix};

const A: usize = 0;
const B: usize = 1;
const C: usize = 2;

/// The `F₂` block (numerically `H`).
pub fn qft1_block() -> Gate {
    Gate::matrix_gate(qft_matrix(1).expect("n = 1"))
}

/// The `F₄⁻¹` block.
pub fn iqft2_block() -> Gate {
    Gate::matrix_gate(iqft_matrix(2).expect("n = 2"))
}

fn is_plain(op: &CircuitOp, gate: &Gate, controls: usize) -> bool {
    op.gate == *gate && op.controls.len() == controls && op.anti_controls.is_empty()
}

fn rewrite(c: &Circuit, f: impl Fn(&CircuitOp) -> Option<Vec<CircuitOp>>) -> Circuit {
    c.ops()
        .iter()
        .fold(Circuit::new(c.n_qubits()), |acc, op| match f(op) {
            Some(ops) => ops.into_iter().fold(acc, Circuit::then),
            None => acc.then(op.clone()),
        })
}

pub fn fourier_form(c: &Circuit) -> Circuit {
    rewrite(c, |op| {
        if is_plain(op, &Gate::H, 0) {
            Some(vec![CircuitOp::new(qft1_block(), op.targets.clone())])
        } else if is_plain(op, &Gate::X, 1) {
            let wires = vec![op.controls[0], op.targets[0]];
            let block = CircuitOp::new(iqft2_block(), wires);
            Some(vec![block.clone(), block])
        } else {
            None
        }
    })
}

pub fn hadamard_csdg_form(c: &Circuit) -> Circuit {
    rewrite(c, |op| {
        if !is_plain(op, &Gate::X, 1) {
            return None;
        }
        let (ctl, tgt) = (op.controls[0], op.targets[0]);
        let csdg = CircuitOp::new(Gate::Sdg, vec![tgt]).with_controls(vec![ctl]);
        Some(vec![
            CircuitOp::new(Gate::H, vec![tgt]),
            csdg.clone(),
            csdg,
            CircuitOp::new(Gate::H, vec![tgt]),
        ])
    })
}

pub fn cz_as_h_cx(c: &Circuit) -> Circuit {
    rewrite(c, |op| {
        if !is_plain(op, &Gate::Z, 1) {
            return None;
        }
        let (ctl, tgt) = (op.controls[0], op.targets[0]);
        Some(vec![
            CircuitOp::new(Gate::H, vec![tgt]),
            CircuitOp::new(Gate::X, vec![tgt]).with_controls(vec![ctl]),
            CircuitOp::new(Gate::H, vec![tgt]),
        ])
    })
}

/// Replaces each controlled-V (and V⁻¹) by `H·CT·CT·H` (resp. with `CT⁻¹`),
/// using `V = H·T·T·H`.
pub fn expand_controlled_v(c: &Circuit) -> Circuit {
    rewrite(c, |op| {
        let phase = match op.gate {
            Gate::V => Gate::T,
            Gate::Vdg => Gate::Tdg,
            _ => return None,
        };
        if op.controls.len() != 1 || !op.anti_controls.is_empty() {
            return None;
        }
        let (ctl, tgt) = (op.controls[0], op.targets[0]);
        let ct = CircuitOp::new(phase, vec![tgt]).with_controls(vec![ctl]);
        Some(vec![
            CircuitOp::new(Gate::H, vec![tgt]),
            ct.clone(),
            ct,
            CircuitOp::new(Gate::H, vec![tgt]),
        ])
    })
}

/// Peephole simplification: removes pairs of uncontrolled Hadamards on the
/// same wire with nothing acting on that wire in between, and merges
/// adjacent identical controlled phase gates `CP(θ)·CP(θ) → CP(2θ)` for
/// `T → S` and `T⁻¹ → S⁻¹`.
pub fn simplify(c: &Circuit) -> Circuit {
    let mut ops: Vec<CircuitOp> = c.ops().to_vec();
    loop {
        let mut changed = false;
        'scan: for i in 0..ops.len() {
            let wires = ops[i].wires();
            let next =
                (i + 1..ops.len()).find(|&j| ops[j].wires().iter().any(|w| wires.contains(w)));
            let Some(j) = next else { continue };
            let (a, b) = (&ops[i], &ops[j]);
            if is_plain(a, &Gate::H, 0) && is_plain(b, &Gate::H, 0) && a.targets == b.targets {
                ops.remove(j);
                ops.remove(i);
                changed = true;
                break 'scan;
            }
            let merged = match (&a.gate, &b.gate) {
                (Gate::T, Gate::T) => Some(Gate::S),
                (Gate::Tdg, Gate::Tdg) => Some(Gate::Sdg),
                _ => None,
            };
            if let Some(g) = merged {
                if a.targets == b.targets
                    && a.controls == b.controls
                    && a.anti_controls.is_empty()
                    && b.anti_controls.is_empty()
                    && a.wires().len() == b.wires().len()
                {
                    ops[i].gate = g;
                    ops.remove(j);
                    changed = true;
                    break 'scan;
                }
            }
        }
        if !changed {
            break;
        }
    }
    ops.into_iter()
        .fold(Circuit::new(c.n_qubits()), Circuit::then)
}

fn cphase(c: Circuit, gate: Gate, ctl: QubitIndex, tgt: QubitIndex) -> Circuit {
    c.controlled(gate, &[ctl], &[tgt])
}

// --- two-qubit gates ---------------------------------------------------

/// CNOT (control `q0`) through `{H, controlled-S}` or `{H, controlled-S⁻¹}`:
/// `H·CS·CS·H` on the target.
pub fn cnot_via_controlled_phase(dagger: bool) -> Circuit {
    let s = if dagger { Gate::Sdg } else { Gate::S };
    let c = Circuit::new(2).h(1);
    let c = cphase(c, s.clone(), 0, 1);
    cphase(c, s, 0, 1).h(1)
}

/// Two realizations of controlled-S (controlled-S⁻¹ when `dagger`) from
/// `{T, T⁻¹, CNOT}`; the second uses the control/target symmetry of
/// the controlled phase.
pub fn controlled_s_forms(dagger: bool) -> [Circuit; 2] {
    let (t, tdg) = if dagger {
        (Gate::Tdg, Gate::T)
    } else {
        (Gate::T, Gate::Tdg)
    };
    let first = Circuit::new(2)
        .gate(t.clone(), &[0])
        .gate(t.clone(), &[1])
        .cx(0, 1)
        .gate(tdg.clone(), &[1])
        .cx(0, 1);
    let second = Circuit::new(2)
        .gate(t.clone(), &[0])
        .gate(t, &[1])
        .cx(1, 0)
        .gate(tdg, &[0])
        .cx(1, 0);
    [first, second]
}

/// Anti-controlled CNOT (fires on `q0 = |0⟩`) as CNOT between inverters.
pub fn anti_controlled_cnot() -> Circuit {
    Circuit::new(2).x(0).cx(0, 1).x(0)
}

/// The four controlled-Z forms: `{H, CNOT}`, its Fourier rewrite, the
/// `{H, CS⁻¹}` rewrite, and the simplification to `CS⁻¹·CS⁻¹`.
pub fn controlled_z_forms() -> [Circuit; 4] {
    let base = Circuit::new(2).h(1).cx(0, 1).h(1);
    let csdg = hadamard_csdg_form(&base);
    let simplified = simplify(&csdg);
    [base.clone(), fourier_form(&base), csdg, simplified]
}

/// Controlled-Y as `S⁻¹`, CNOT, `S` on the target.
pub fn controlled_y() -> Circuit {
    Circuit::new(2)
        .gate(Gate::Sdg, &[1])
        .cx(0, 1)
        .gate(Gate::S, &[1])
}

/// Controlled-T from `{U, CNOT, U⁻¹}`.
pub fn controlled_t() -> Circuit {
    Circuit::new(2)
        .gate(Gate::U, &[0])
        .gate(Gate::U, &[1])
        .cx(0, 1)
        .gate(Gate::Udg, &[1])
        .cx(0, 1)
}

/// Controlled-H from `{S, H, T, CNOT, T⁻¹, S⁻¹}`. The ordering is the one
/// found by exhaustive search over orderings of that gate multiset; the
/// search is rerun in the test suite.
pub fn controlled_h() -> Circuit {
    Circuit::new(2)
        .gate(Gate::S, &[1])
        .h(1)
        .gate(Gate::T, &[1])
        .cx(0, 1)
        .gate(Gate::Tdg, &[1])
        .h(1)
        .gate(Gate::Sdg, &[1])
}

/// Controlled-V (controlled-V⁻¹ when `dagger`): `H·CT·CT·H`, and the form
/// over `{H, T, T⁻¹, flipped CNOT}`.
pub fn controlled_v_forms(dagger: bool) -> [Circuit; 2] {
    let (t, tdg) = if dagger {
        (Gate::Tdg, Gate::T)
    } else {
        (Gate::T, Gate::Tdg)
    };
    let c = Circuit::new(2).h(1);
    let c = cphase(c, t.clone(), 0, 1);
    let first = cphase(c, t.clone(), 0, 1).h(1);
    let second = Circuit::new(2)
        .h(1)
        .gate(t.clone(), &[0])
        .gate(t, &[1])
        .cx(1, 0)
        .gate(tdg, &[0])
        .cx(1, 0)
        .h(1);
    [first, second]
}

// --- three- and four-qubit gates ---------------------------------------

/// CNOT from `q0` to `q2`, stepping over `q1`: the direct Fourier form,
/// a SWAP-conjugated nearest-neighbour CNOT, and the four-CNOT
/// nearest-neighbour ladder in both Fourier and `{H, CS⁻¹}` forms.
pub fn step_over_forms() -> [Circuit; 4] {
    let direct = fourier_form(&Circuit::new(3).cx(0, 2));
    let swap12 = Circuit::new(3).cx(1, 2).cx(2, 1).cx(1, 2);
    let via_swap = fourier_form(&swap12.clone().cx(0, 1).append(&swap12));
    let ladder = Circuit::new(3).cx(0, 1).cx(1, 2).cx(0, 1).cx(1, 2);
    [
        direct,
        via_swap,
        fourier_form(&ladder),
        hadamard_csdg_form(&ladder),
    ]
}

/// Fan-out CNOTs from `q0` to every other wire of an `n`-qubit register.
pub fn feynman_fanout(n: usize) -> Circuit {
    (1..n).fold(Circuit::new(n), |c, t| c.cx(0, t))
}

/// Base, Fourier, and `{H, CS⁻¹}` forms of the double (`n = 3`) or triple
/// (`n = 4`) Feynman gate.
pub fn feynman_forms(n: usize) -> [Circuit; 3] {
    let base = feynman_fanout(n);
    [base.clone(), fourier_form(&base), hadamard_csdg_form(&base)]
}

/// Toffoli over Clifford+T (six CNOTs, seven T-type gates, two H).
pub fn toffoli_clifford_t() -> Circuit {
    Circuit::new(3)
        .h(C)
        .cx(B, C)
        .gate(Gate::Tdg, &[C])
        .cx(A, C)
        .gate(Gate::T, &[C])
        .cx(B, C)
        .gate(Gate::Tdg, &[C])
        .cx(A, C)
        .gate(Gate::T, &[B])
        .gate(Gate::T, &[C])
        .h(C)
        .cx(A, B)
        .gate(Gate::T, &[A])
        .gate(Gate::Tdg, &[B])
        .cx(A, B)
}

/// Toffoli from controlled-V and controlled-V⁻¹: the target receives
/// `V^{b}·V^{−(a⊕b)}·V^{a} = V^{2ab}`.
pub fn toffoli_v_network() -> Circuit {
    let c = Circuit::new(3).controlled(Gate::V, &[B], &[C]).cx(A, B);
    c.controlled(Gate::Vdg, &[B], &[C])
        .cx(A, B)
        .controlled(Gate::V, &[A], &[C])
}

/// The controlled-V Toffoli and its successive rewrites: V expanded as
/// `H·T·T·H`, the simplified `{H, CS, CS⁻¹, CNOT}` form, and that form with
/// each CNOT replaced by `H·CS⁻¹·CS⁻¹·H`.
pub fn toffoli_v_forms() -> [Circuit; 4] {
    let network = toffoli_v_network();
    let expanded = expand_controlled_v(&network);
    let simplified = simplify(&expanded);
    let csdg = hadamard_csdg_form(&simplified);
    [network, expanded, simplified, csdg]
}

/// Toffoli over `{H, CT, CS⁻¹, CT⁻¹}`: the controlled-V network with each
/// controlled-V written as `H·CT·CT·H` and each CNOT as `H·CS⁻¹·CS⁻¹·H`.
pub fn toffoli_controlled_phase_form() -> Circuit {
    let expanded = expand_controlled_v(&toffoli_v_network());
    let c = hadamard_csdg_form(&expanded);
    // cancel only the Hadamard pairs; keep CT pairs unmerged
    let mut ops: Vec<CircuitOp> = c.ops().to_vec();
    let mut i = 0;
    while i < ops.len() {
        let wires = ops[i].wires();
        let next = (i + 1..ops.len()).find(|&j| ops[j].wires().iter().any(|w| wires.contains(w)));
        match next {
            Some(j)
                if is_plain(&ops[i], &Gate::H, 0)
                    && is_plain(&ops[j], &Gate::H, 0)
                    && ops[i].targets == ops[j].targets =>
            {
                ops.remove(j);
                ops.remove(i);
                i = 0;
            }
            _ => i += 1,
        }
    }
    ops.into_iter().fold(Circuit::new(3), Circuit::then)
}

/// Toffoli as two controlled-`F₄⁻¹` blocks: control `a`, block on `(b, c)`.
pub fn toffoli_double_controlled_iqft() -> Circuit {
    let op = CircuitOp::new(iqft2_block(), vec![B, C]).with_controls(vec![A]);
    Circuit::new(3).then(op.clone()).then(op)
}

/// How the Toffoli inside a Fredkin/Peres/Miller construction is realized.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ToffoliModule {
    /// Plain doubly-controlled X.
    Direct,
    /// Two controlled-`F₄⁻¹` blocks.
    DoubleControlledIqft,
}

fn toffoli_module(c: Circuit, module: ToffoliModule) -> Circuit {
    match module {
        ToffoliModule::Direct => c.ccx(A, B, C),
        ToffoliModule::DoubleControlledIqft => c.append(&toffoli_double_controlled_iqft()),
    }
}

/// How the surrounding CNOTs are realized.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CnotStyle {
    Direct,
    Fourier,
    HadamardCsdg,
}

fn restyle(c: &Circuit, style: CnotStyle) -> Circuit {
    match style {
        CnotStyle::Direct => c.clone(),
        CnotStyle::Fourier => fourier_form(c),
        CnotStyle::HadamardCsdg => hadamard_csdg_form(c),
    }
}

fn sandwich(
    outer: &Circuit,
    module: ToffoliModule,
    style: CnotStyle,
    trailing: &Circuit,
) -> Circuit {
    let pre = restyle(outer, style);
    let post = restyle(trailing, style);
    toffoli_module(pre, module).append(&post)
}

/// Fredkin (control `a`, swapping `b` and `c`): flipped CNOT `c → b`,
/// Toffoli, flipped CNOT `c → b`.
pub fn fredkin(module: ToffoliModule, style: CnotStyle) -> Circuit {
    let flipped = Circuit::new(3).cx(C, B);
    sandwich(&flipped, module, style, &flipped)
}

/// Peres: Toffoli then CNOT `a → b`. The order was fixed by testing both
/// orderings against `(a, b, c) ↦ (a, a⊕b, c⊕ab)`.
pub fn peres(module: ToffoliModule, style: CnotStyle) -> Circuit {
    sandwich(&Circuit::new(3), module, style, &Circuit::new(3).cx(A, B))
}

/// Miller: flipped CNOT `c → b` and step-over CNOT `c → a` on both sides of
/// a Toffoli.
pub fn miller(module: ToffoliModule, style: CnotStyle) -> Circuit {
    let outer = Circuit::new(3).cx(C, B).cx(C, A);
    sandwich(&outer, module, style, &outer)
}

/// The construction that defines the Miller gate's matrix.
pub fn miller_reference() -> Circuit {
    miller(ToffoliModule::Direct, CnotStyle::Direct)
}
