//! State-vector simulation with exhaustive measurement branching, and the
//! Bell, GHZ, teleportation and secret-sharing circuits built on it.

use serde::ser::{SerializeStruct, Serializer};
use serde::Serialize;

use crate::circuit::{apply_circuit, Circuit, QubitIndex};
use crate::constructions::{cz_as_h_cx, fourier_form, hadamard_csdg_form, simplify};
use crate::error::{Error, Result};
use crate::matrix::{Complex64, ComplexVector, ONE, ZERO};

/// Branches below this probability are dropped.
pub const ZERO_PROBABILITY: f64 = 1e-14;
const NORM_TOL: f64 = 1e-10;

#[derive(Debug, Clone, PartialEq)]
pub struct PureState {
    n_qubits: usize,
    amplitudes: ComplexVector,
}

impl PureState {
    pub fn new(n_qubits: usize, amplitudes: Vec<Complex64>) -> Result<Self> {
        if amplitudes.len() != 1 << n_qubits {
            return Err(Error::BadShape {
                dim: 1 << n_qubits,
                len: amplitudes.len(),
            });
        }
        let v = ComplexVector::new(amplitudes);
        let norm = v.norm();
        if (norm - 1.0).abs() > NORM_TOL {
            return Err(Error::NotNormalized { norm });
        }
        Ok(PureState {
            n_qubits,
            amplitudes: v,
        })
    }

    pub fn basis(n_qubits: usize, index: usize) -> Self {
        PureState {
            n_qubits,
            amplitudes: ComplexVector::basis(1 << n_qubits, index),
        }
    }

    pub fn zero(n_qubits: usize) -> Self {
        Self::basis(n_qubits, 0)
    }

    /// `α|0⟩ + β|1⟩`.
    pub fn qubit(alpha: Complex64, beta: Complex64) -> Result<Self> {
        Self::new(1, vec![alpha, beta])
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        self.amplitudes.as_slice()
    }

    pub fn vector(&self) -> &ComplexVector {
        &self.amplitudes
    }

    /// `self ⊗ |0…0⟩` on `extra` additional high wires.
    pub fn padded(&self, extra: usize) -> PureState {
        let mut amps = self.amplitudes.as_slice().to_vec();
        amps.resize(1 << (self.n_qubits + extra), ZERO);
        PureState {
            n_qubits: self.n_qubits + extra,
            amplitudes: ComplexVector::new(amps),
        }
    }
}

impl Serialize for PureState {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let amps: Vec<[f64; 2]> = self.amplitudes().iter().map(|z| [z.re, z.im]).collect();
        amps.serialize(s)
    }
}

pub fn apply(c: &Circuit, s: &PureState) -> Result<PureState> {
    if c.n_qubits() != s.n_qubits {
        return Err(Error::WidthMismatch {
            left: c.n_qubits(),
            right: s.n_qubits,
        });
    }
    let out = apply_circuit(c, &s.amplitudes)?;
    Ok(PureState {
        n_qubits: s.n_qubits,
        amplitudes: out.normalized(),
    })
}

/// `|⟨a|b⟩|²`.
pub fn fidelity(a: &PureState, b: &PureState) -> Result<f64> {
    if a.n_qubits != b.n_qubits {
        return Err(Error::WidthMismatch {
            left: a.n_qubits,
            right: b.n_qubits,
        });
    }
    Ok(a.amplitudes.inner(&b.amplitudes)?.norm_sqr().min(1.0))
}

#[derive(Debug, Clone, PartialEq)]
pub struct Branch {
    /// `outcome[k]` is the result on the `k`-th measured qubit.
    pub outcome: Vec<bool>,
    pub probability: f64,
    /// State of the unmeasured qubits, in ascending wire order.
    pub post_state: PureState,
}

/// Renders an outcome with the first measured qubit as the rightmost
/// character.
pub fn outcome_bits(outcome: &[bool]) -> String {
    outcome
        .iter()
        .rev()
        .map(|&b| if b { '1' } else { '0' })
        .collect()
}

fn check_wires(qubits: &[QubitIndex], n: usize) -> Result<()> {
    for (k, &q) in qubits.iter().enumerate() {
        if q >= n {
            return Err(Error::QubitOutOfRange {
                qubit: q,
                n_qubits: n,
            });
        }
        if qubits[..k].contains(&q) {
            return Err(Error::DuplicateWire(q));
        }
    }
    Ok(())
}

fn outcome_of(index: usize, width: usize) -> Vec<bool> {
    (0..width).map(|k| (index >> k) & 1 == 1).collect()
}

fn matches_outcome(basis: usize, qubits: &[QubitIndex], outcome: &[bool]) -> bool {
    qubits
        .iter()
        .zip(outcome)
        .all(|(&q, &b)| ((basis >> q) & 1 == 1) == b)
}

/// Projects onto `outcome` on `qubits`, keeping the full register.
/// Returns the probability and the renormalized collapsed state.
fn project(s: &PureState, qubits: &[QubitIndex], outcome: &[bool]) -> (f64, Option<PureState>) {
    let amps: Vec<Complex64> = s
        .amplitudes()
        .iter()
        .enumerate()
        .map(|(i, &a)| {
            if matches_outcome(i, qubits, outcome) {
                a
            } else {
                ZERO
            }
        })
        .collect();
    let p: f64 = amps.iter().map(|a| a.norm_sqr()).sum();
    if p <= ZERO_PROBABILITY {
        return (p, None);
    }
    let v = ComplexVector::new(amps).normalized();
    (
        p,
        Some(PureState {
            n_qubits: s.n_qubits,
            amplitudes: v,
        }),
    )
}

/// Restricts a state whose `measured` wires are in a definite basis state to
/// the remaining wires.
fn reduce(s: &PureState, measured: &[QubitIndex], outcome: &[bool]) -> PureState {
    let kept: Vec<QubitIndex> = (0..s.n_qubits).filter(|q| !measured.contains(q)).collect();
    let base: usize = measured
        .iter()
        .zip(outcome)
        .map(|(&q, &b)| (b as usize) << q)
        .sum();
    let amps: Vec<Complex64> = (0..1usize << kept.len())
        .map(|j| {
            let idx = kept
                .iter()
                .enumerate()
                .fold(base, |acc, (k, &q)| acc | (((j >> k) & 1) << q));
            s.amplitudes()[idx]
        })
        .collect();
    PureState {
        n_qubits: kept.len(),
        amplitudes: ComplexVector::new(amps).normalized(),
    }
}

/// Enumerates every outcome on `qubits` with nonzero probability, counting
/// in binary with `qubits[0]` as the low bit.
pub fn measure(s: &PureState, qubits: &[QubitIndex]) -> Result<Vec<Branch>> {
    check_wires(qubits, s.n_qubits)?;
    let mut out = Vec::new();
    for index in 0..1usize << qubits.len() {
        let outcome = outcome_of(index, qubits.len());
        if let (p, Some(collapsed)) = project(s, qubits, &outcome) {
            out.push(Branch {
                post_state: reduce(&collapsed, qubits, &outcome),
                outcome,
                probability: p,
            });
        }
    }
    Ok(out)
}

/// Seeded sampling of one outcome, for demonstrations only.
pub fn sample(branches: &[Branch], r: f64) -> Option<&Branch> {
    let mut acc = 0.0;
    for b in branches {
        acc += b.probability;
        if r < acc {
            return Some(b);
        }
    }
    branches.last()
}

// --- resource states ----------------------------------------------------

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PrepVariant {
    /// `{H, CNOT}`.
    A,
    /// `{F₂, F₄⁻¹·F₄⁻¹}` blocks.
    B,
    /// `{H, controlled-S⁻¹}`.
    C,
}

impl PrepVariant {
    pub const ALL: [PrepVariant; 3] = [PrepVariant::A, PrepVariant::B, PrepVariant::C];
}

/// `H` on `q0` followed by CNOTs fanning out from `q0`.
pub fn ghz(n: usize, variant: PrepVariant) -> Result<Circuit> {
    if !(2..=4).contains(&n) {
        return Err(Error::QubitCountOutOfRange { n, min: 2, max: 4 });
    }
    let base = (1..n).fold(Circuit::new(n).h(0), |c, t| c.cx(0, t));
    Ok(match variant {
        PrepVariant::A => base,
        PrepVariant::B => fourier_form(&base),
        PrepVariant::C => hadamard_csdg_form(&base),
    })
}

pub fn bell_pair(variant: PrepVariant) -> Circuit {
    ghz(2, variant).expect("n = 2")
}

// --- protocols -----------------------------------------------------------

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Pauli {
    I,
    X,
    Z,
    /// `X·Z`: `Z` first, then `X`.
    XZ,
}

impl Pauli {
    pub const ALL: [Pauli; 4] = [Pauli::I, Pauli::X, Pauli::Z, Pauli::XZ];

    fn apply(self, s: &PureState) -> PureState {
        let [a, b] = [s.amplitudes()[0], s.amplitudes()[1]];
        let amps = match self {
            Pauli::I => vec![a, b],
            Pauli::X => vec![b, a],
            Pauli::Z => vec![a, -b],
            Pauli::XZ => vec![-b, a],
        };
        PureState {
            n_qubits: 1,
            amplitudes: ComplexVector::new(amps),
        }
    }
}

/// A measurement-based protocol: run `circuit`, measure `measured`, then
/// run `feed_forward` with the measured wires collapsed so that controls
/// on them act as classical conditions.
#[derive(Debug, Clone)]
pub struct ProtocolCircuit {
    pub circuit: Circuit,
    pub measured: Vec<QubitIndex>,
    pub feed_forward: Circuit,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ProtocolBranch {
    pub outcome: Vec<bool>,
    pub probability: f64,
    /// Residual Pauli still needed after the feed-forward (ideally `I`).
    pub correction: Pauli,
    pub post_state: PureState,
    pub fidelity: f64,
}

impl Serialize for ProtocolBranch {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("ProtocolBranch", 5)?;
        st.serialize_field("outcome", &outcome_bits(&self.outcome))?;
        st.serialize_field("probability", &self.probability)?;
        st.serialize_field("correction", &self.correction)?;
        st.serialize_field("post_state", &self.post_state)?;
        st.serialize_field("fidelity", &self.fidelity)?;
        st.end()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ProtocolResult {
    pub variant: String,
    pub branches: Vec<ProtocolBranch>,
}

impl ProtocolResult {
    pub fn min_fidelity(&self) -> f64 {
        self.branches.iter().map(|b| b.fidelity).fold(1.0, f64::min)
    }

    pub fn total_probability(&self) -> f64 {
        self.branches.iter().map(|b| b.probability).sum()
    }

    /// Same outcomes in the same order, probabilities within `tol`, and
    /// post-states equal up to global phase.
    pub fn agrees_with(&self, other: &ProtocolResult, tol: f64) -> bool {
        self.branches.len() == other.branches.len()
            && self.branches.iter().zip(&other.branches).all(|(a, b)| {
                a.outcome == b.outcome
                    && (a.probability - b.probability).abs() <= tol
                    && a.post_state
                        .vector()
                        .dist_up_to_phase(b.post_state.vector())
                        .is_ok_and(|d| d <= tol)
            })
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.branches).expect("branches serialize")
    }
}

/// Runs `protocol` with `input` on wire 0 and every other wire in `|0⟩`.
/// The single unmeasured wire carries the output; per branch the Pauli that
/// best restores `input` is recorded and applied.
pub fn run_protocol(
    protocol: &ProtocolCircuit,
    input: &PureState,
    variant: &str,
) -> Result<ProtocolResult> {
    if input.n_qubits != 1 {
        return Err(Error::WidthMismatch {
            left: 1,
            right: input.n_qubits,
        });
    }
    let n = protocol.circuit.n_qubits();
    let start = input.padded(n - 1);
    let state = apply(&protocol.circuit, &start)?;
    let m = &protocol.measured;
    check_wires(m, n)?;
    if n - m.len() != 1 {
        return Err(Error::Malformed(format!(
            "protocol must leave one unmeasured wire, leaves {}",
            n - m.len()
        )));
    }
    let mut branches = Vec::new();
    for index in 0..1usize << m.len() {
        let outcome = outcome_of(index, m.len());
        let (p, Some(collapsed)) = project(&state, m, &outcome) else {
            continue;
        };
        let fed = apply(&protocol.feed_forward, &collapsed)?;
        let raw = reduce(&fed, m, &outcome);
        let (correction, post_state, fid) = Pauli::ALL
            .iter()
            .map(|&p| {
                let s = p.apply(&raw);
                let f = fidelity(&s, input).unwrap_or(0.0);
                (p, s, f)
            })
            .fold(
                None,
                |best: Option<(Pauli, PureState, f64)>, cand| match best {
                    Some(b) if b.2 >= cand.2 => Some(b),
                    _ => Some(cand),
                },
            )
            .expect("four candidates");
        branches.push(ProtocolBranch {
            outcome,
            probability: p,
            correction,
            post_state,
            fidelity: fid,
        });
    }
    Ok(ProtocolResult {
        variant: variant.to_string(),
        branches,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum TeleportVariant {
    /// `{H, CNOT, CZ}` with classically controlled X and Z.
    A,
    /// Classically controlled Z replaced by `H·X·H`.
    B,
    /// `{F₂, F₄⁻¹·F₄⁻¹}` blocks.
    C,
    /// `{H, controlled-S⁻¹}`.
    D,
}

impl TeleportVariant {
    pub const ALL: [TeleportVariant; 4] = [
        TeleportVariant::A,
        TeleportVariant::B,
        TeleportVariant::C,
        TeleportVariant::D,
    ];

    pub fn parse(s: &str) -> Option<Self> {
        Some(match s {
            "a" => TeleportVariant::A,
            "b" => TeleportVariant::B,
            "c" => TeleportVariant::C,
            "d" => TeleportVariant::D,
            _ => return None,
        })
    }

    pub fn name(self) -> &'static str {
        ["a", "b", "c", "d"][self as usize]
    }
}

fn restyle(p: &ProtocolCircuit, f: impl Fn(&Circuit) -> Circuit) -> ProtocolCircuit {
    ProtocolCircuit {
        circuit: f(&p.circuit),
        measured: p.measured.clone(),
        feed_forward: f(&p.feed_forward),
    }
}

/// Wires: 0 input, 1 sender half of the Bell pair, 2 receiver.
pub fn teleport_circuit(variant: TeleportVariant) -> ProtocolCircuit {
    let base = ProtocolCircuit {
        circuit: Circuit::new(3).h(1).cx(1, 2).cx(0, 1).h(0),
        measured: vec![0, 1],
        feed_forward: Circuit::new(3).cx(1, 2).cz(0, 2),
    };
    match variant {
        TeleportVariant::A => base,
        TeleportVariant::B => restyle(&base, cz_as_h_cx),
        TeleportVariant::C => restyle(&base, |c| fourier_form(&cz_as_h_cx(c))),
        TeleportVariant::D => restyle(&base, |c| hadamard_csdg_form(&cz_as_h_cx(c))),
    }
}

pub fn teleport(input: &PureState, variant: TeleportVariant) -> Result<ProtocolResult> {
    run_protocol(&teleport_circuit(variant), input, variant.name())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum QssVariant {
    /// `{H, CNOT, CZ}`.
    A,
    /// Each CZ replaced by `H·CNOT·H`.
    B,
    /// Variant B with adjacent Hadamards merged.
    C,
    /// Variant C in `{F₂, F₄⁻¹·F₄⁻¹}` blocks.
    D,
    /// Variant C in `{H, controlled-S⁻¹}`.
    E,
}

impl QssVariant {
    pub const ALL: [QssVariant; 5] = [
        QssVariant::A,
        QssVariant::B,
        QssVariant::C,
        QssVariant::D,
        QssVariant::E,
    ];

    pub fn parse(s: &str) -> Option<Self> {
        Some(match s {
            "a" => QssVariant::A,
            "b" => QssVariant::B,
            "c" => QssVariant::C,
            "d" => QssVariant::D,
            "e" => QssVariant::E,
            _ => return None,
        })
    }

    pub fn name(self) -> &'static str {
        ["a", "b", "c", "d", "e"][self as usize]
    }
}

/// Wires: 0 secret, 1..=parties GHZ holders; wire `parties` reconstructs.
/// The dealer does a Bell-basis measurement on wires 0 and 1, every other
/// holder except the last measures in the X basis.
pub fn qss_circuit(parties: usize, variant: QssVariant) -> Result<ProtocolCircuit> {
    if !(3..=4).contains(&parties) {
        return Err(Error::InvalidParties(parties));
    }
    let n = parties + 1;
    let last = parties;
    let mut circuit = (2..=parties).fold(Circuit::new(n).h(1), |c, t| c.cx(1, t));
    circuit = circuit.cx(0, 1).h(0);
    circuit = (2..last).fold(circuit, |c, q| c.h(q));
    let mut feed_forward = Circuit::new(n).cx(1, last).cz(0, last);
    feed_forward = (2..last).fold(feed_forward, |c, q| c.cz(q, last));
    let base = ProtocolCircuit {
        circuit,
        measured: (0..last).collect(),
        feed_forward,
    };
    let merged = |c: &Circuit| simplify(&cz_as_h_cx(c));
    Ok(match variant {
        QssVariant::A => base,
        QssVariant::B => restyle(&base, cz_as_h_cx),
        QssVariant::C => restyle(&base, merged),
        QssVariant::D => restyle(&base, |c| fourier_form(&merged(c))),
        QssVariant::E => restyle(&base, |c| hadamard_csdg_form(&merged(c))),
    })
}

pub fn qss(input: &PureState, parties: usize, variant: QssVariant) -> Result<ProtocolResult> {
    run_protocol(&qss_circuit(parties, variant)?, input, variant.name())
}

/// Uniformly random single-qubit state from four normal deviates.
pub fn random_qubit(g: [f64; 4]) -> PureState {
    let v = ComplexVector::new(vec![Complex64::new(g[0], g[1]), Complex64::new(g[2], g[3])]);
    let v = if v.norm() < 1e-12 {
        ComplexVector::new(vec![ONE, ZERO])
    } else {
        v.normalized()
    };
    PureState {
        n_qubits: 1,
        amplitudes: v,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gates::Gate;
    use crate::matrix::c;
    use std::f64::consts::FRAC_1_SQRT_2;

    fn plus() -> PureState {
        PureState::qubit(c(FRAC_1_SQRT_2, 0.0), c(FRAC_1_SQRT_2, 0.0)).unwrap()
    }

    #[test]
    fn bell_state_vector() {
        let s = apply(&bell_pair(PrepVariant::A), &PureState::zero(2)).unwrap();
        let expected = [FRAC_1_SQRT_2, 0.0, 0.0, FRAC_1_SQRT_2];
        for (a, e) in s.amplitudes().iter().zip(expected) {
            assert!((a - c(e, 0.0)).norm() < 1e-12);
        }
        let reference = s.vector().clone();
        for v in PrepVariant::ALL {
            let t = apply(&bell_pair(v), &PureState::zero(2)).unwrap();
            assert!(t.vector().dist_up_to_phase(&reference).unwrap() < 1e-12);
        }
        // |q1 q0⟩ = |10⟩ gives (|01⟩ + |10⟩)/√2
        let t = apply(&bell_pair(PrepVariant::A), &PureState::basis(2, 2)).unwrap();
        assert!((t.amplitudes()[1] - c(FRAC_1_SQRT_2, 0.0)).norm() < 1e-12);
        assert!((t.amplitudes()[2] - c(FRAC_1_SQRT_2, 0.0)).norm() < 1e-12);
        assert!(fidelity(&t, &s).unwrap() < 1e-24);
    }

    #[test]
    fn apply_basics() {
        let s = PureState::zero(2);
        assert_eq!(apply(&Circuit::new(2), &s).unwrap(), s);
        let x = apply(&Circuit::new(2).x(0), &s).unwrap();
        assert_eq!(x, PureState::basis(2, 1));
        assert!(apply(&Circuit::new(3), &s).is_err());
    }

    #[test]
    fn ghz_states() {
        for n in [3, 4] {
            for v in PrepVariant::ALL {
                let s = apply(&ghz(n, v).unwrap(), &PureState::zero(n)).unwrap();
                let top = (1 << n) - 1;
                for (i, a) in s.amplitudes().iter().enumerate() {
                    let want = if i == 0 || i == top { 0.5 } else { 0.0 };
                    assert!((a.norm_sqr() - want).abs() < 1e-12, "n={n} {v:?} i={i}");
                }
            }
        }
        assert!(ghz(5, PrepVariant::A).is_err());
    }

    #[test]
    fn measurement_branches() {
        let bell = apply(&bell_pair(PrepVariant::A), &PureState::zero(2)).unwrap();
        let b = measure(&bell, &[0]).unwrap();
        assert_eq!(b.len(), 2);
        assert!((b[0].probability - 0.5).abs() < 1e-12);
        assert_eq!(b[0].post_state, PureState::basis(1, 0));
        assert_eq!(b[1].post_state, PureState::basis(1, 1));

        let zero = measure(&PureState::zero(3), &[1]).unwrap();
        assert_eq!(zero.len(), 1);
        assert_eq!(zero[0].probability, 1.0);

        let ghz3 = apply(&ghz(3, PrepVariant::A).unwrap(), &PureState::zero(3)).unwrap();
        let b = measure(&ghz3, &[0, 1]).unwrap();
        let outcomes: Vec<_> = b.iter().map(|x| outcome_bits(&x.outcome)).collect();
        assert_eq!(outcomes, ["00", "11"]);
        assert!(measure(&ghz3, &[0, 0]).is_err());
        assert!(measure(&ghz3, &[3]).is_err());
    }

    #[test]
    fn fidelity_values() {
        let z = PureState::basis(1, 0);
        let o = PureState::basis(1, 1);
        assert!((fidelity(&z, &z).unwrap() - 1.0).abs() < 1e-15);
        assert_eq!(fidelity(&z, &o).unwrap(), 0.0);
        assert!((fidelity(&z, &plus()).unwrap() - 0.5).abs() < 1e-12);
        assert!(fidelity(&z, &PureState::zero(2)).is_err());
    }

    #[test]
    fn teleport_basis_and_plus() {
        for v in TeleportVariant::ALL {
            let r = teleport(&PureState::basis(1, 0), v).unwrap();
            assert_eq!(r.branches.len(), 4);
            assert!(r.min_fidelity() > 1.0 - 1e-12);
            let r = teleport(&plus(), v).unwrap();
            for b in &r.branches {
                assert!((b.probability - 0.25).abs() < 1e-12);
                assert!(b.fidelity > 1.0 - 1e-12);
                assert_eq!(b.correction, Pauli::I);
            }
        }
    }

    #[test]
    fn qss_basis_case() {
        for parties in [3, 4] {
            for v in QssVariant::ALL {
                let r = qss(&PureState::basis(1, 1), parties, v).unwrap();
                assert!(r.min_fidelity() > 1.0 - 1e-10, "{parties} {v:?}");
                assert!((r.total_probability() - 1.0).abs() < 1e-10);
            }
        }
        let r = qss(&plus(), 3, QssVariant::A).unwrap();
        assert_eq!(r.branches.len(), 8);
        let r = qss(&plus(), 4, QssVariant::A).unwrap();
        assert_eq!(r.branches.len(), 16);
        assert!(r.branches.iter().all(|b| b.correction == Pauli::I));
        assert!(qss(&plus(), 5, QssVariant::A).is_err());
    }

    #[test]
    fn qss_variants_use_their_gate_sets() {
        let d = qss_circuit(3, QssVariant::D).unwrap();
        assert!(!d
            .circuit
            .ops()
            .iter()
            .any(|o| o.gate == Gate::X && o.controls.len() == 1));
        let e = qss_circuit(3, QssVariant::E).unwrap();
        for op in e.circuit.ops().iter().chain(e.feed_forward.ops()) {
            assert!(matches!(op.gate, Gate::H | Gate::Sdg), "{op:?}");
        }
        let c = qss_circuit(4, QssVariant::C).unwrap();
        let b = qss_circuit(4, QssVariant::B).unwrap();
        assert!(c.feed_forward.len() < b.feed_forward.len());
    }

    #[test]
    fn normalization_is_enforced() {
        assert!(PureState::qubit(c(1.0, 0.0), c(1.0, 0.0)).is_err());
        assert!(PureState::new(1, vec![ONE]).is_err());
    }

    #[test]
    fn branch_json_layout() {
        let r = teleport(&plus(), TeleportVariant::A).unwrap();
        let v: serde_json::Value = serde_json::from_str(&r.to_json()).unwrap();
        assert_eq!(v[1]["outcome"], "01");
        for key in ["outcome", "probability", "post_state", "fidelity"] {
            assert!(v[0].get(key).is_some());
        }
    }
}
