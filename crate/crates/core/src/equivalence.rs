//! Identity registry: each entry pairs two circuit-or-matrix expressions
//! that must agree up to global phase (or, for a negative entry, must not).

use rayon::prelude::*;
use serde::Serialize;

use crate::circuit::{embed, flipped_cnot, swap_constructions, unitary_of, Circuit, CircuitOp};
use crate::constructions::{self as cons, CnotStyle, ToffoliModule};
use crate::error::{Error, Result};
use crate::gates::{self, CnotOrientation, Gate};
use crate::matrix::{c, dist_up_to_phase, ComplexMatrix, Tolerance};
use crate::qft::{iqft_matrix, qft_circuit, qft_matrix, qft_squared_circuit, QftSpec};

#[derive(Debug, Clone)]
pub enum Expr {
    Matrix(ComplexMatrix),
    Circuit(Circuit),
}

impl Expr {
    pub fn evaluate(&self) -> ComplexMatrix {
        match self {
            Expr::Matrix(m) => m.clone(),
            Expr::Circuit(c) => unitary_of(c),
        }
    }
}

impl From<ComplexMatrix> for Expr {
    fn from(m: ComplexMatrix) -> Self {
        Expr::Matrix(m)
    }
}

impl From<Circuit> for Expr {
    fn from(c: Circuit) -> Self {
        Expr::Circuit(c)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Expectation {
    Equivalent,
    /// The two sides must differ by more than `min_distance` under every
    /// global phase.
    Distinct {
        min_distance: f64,
    },
}

#[derive(Debug, Clone)]
pub struct Identity {
    pub id: String,
    pub paper_ref: String,
    pub lhs: Expr,
    pub rhs: Expr,
    pub expectation: Expectation,
    pub tolerance: Option<Tolerance>,
}

impl Identity {
    pub fn new(id: &str, paper_ref: &str, lhs: impl Into<Expr>, rhs: impl Into<Expr>) -> Self {
        Identity {
            id: id.to_string(),
            paper_ref: paper_ref.to_string(),
            lhs: lhs.into(),
            rhs: rhs.into(),
            expectation: Expectation::Equivalent,
            tolerance: None,
        }
    }

    pub fn distinct(mut self, min_distance: f64) -> Self {
        self.expectation = Expectation::Distinct { min_distance };
        self
    }

    pub fn with_tolerance(mut self, tol: Tolerance) -> Self {
        self.tolerance = Some(tol);
        self
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckResult {
    pub id: String,
    pub paper_ref: String,
    pub pass: bool,
    pub distance: f64,
    pub phase: f64,
}

fn round14(x: f64) -> f64 {
    if x.is_finite() {
        let r = (x * 1e14).round() / 1e14;
        if r == 0.0 {
            0.0
        } else {
            r
        }
    } else {
        x
    }
}

pub fn check(identity: &Identity, tol: Tolerance) -> Result<CheckResult> {
    let wrap = |e: Error| Error::Identity {
        id: identity.id.clone(),
        source: Box::new(e),
    };
    let lhs = identity.lhs.evaluate();
    let rhs = identity.rhs.evaluate();
    let pd = dist_up_to_phase(&lhs, &rhs).map_err(wrap)?;
    let eps = identity.tolerance.unwrap_or(tol).eps();
    let pass = match identity.expectation {
        Expectation::Equivalent => pd.distance < eps,
        Expectation::Distinct { min_distance } => pd.distance > min_distance,
    };
    Ok(CheckResult {
        id: identity.id.clone(),
        paper_ref: identity.paper_ref.clone(),
        pass,
        distance: round14(pd.distance),
        phase: round14(pd.phase),
    })
}

#[derive(Debug, Clone, Default, PartialEq, Serialize)]
#[serde(transparent)]
pub struct Report {
    pub results: Vec<CheckResult>,
}

impl Report {
    pub fn passed(&self) -> usize {
        self.results.iter().filter(|r| r.pass).count()
    }

    pub fn failed(&self) -> usize {
        self.results.len() - self.passed()
    }

    pub fn all_passed(&self) -> bool {
        self.results.iter().all(|r| r.pass)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

/// Checks every identity concurrently; results keep catalog order. An
/// evaluation error becomes a failing entry with infinite distance.
pub fn run_all(identities: &[Identity], tol: Tolerance) -> Report {
    let results = identities
        .par_iter()
        .map(|id| {
            check(id, tol).unwrap_or_else(|_| CheckResult {
                id: id.id.clone(),
                paper_ref: id.paper_ref.clone(),
                pass: false,
                distance: f64::INFINITY,
                phase: 0.0,
            })
        })
        .collect();
    Report { results }
}

/// All distinct orderings of `ops` whose circuit on `n_qubits` wires equals
/// `target` up to global phase within `tol`. Used to recover gate orderings
/// when only the gate multiset is known.
pub fn search_orderings(
    ops: &[CircuitOp],
    n_qubits: usize,
    target: &ComplexMatrix,
    tol: f64,
) -> Vec<Vec<CircuitOp>> {
    let mut found: Vec<Vec<CircuitOp>> = Vec::new();
    let mut order: Vec<usize> = (0..ops.len()).collect();
    let mut seen = std::collections::HashSet::new();
    permute(&mut order, 0, &mut |perm| {
        let seq: Vec<CircuitOp> = perm.iter().map(|&i| ops[i].clone()).collect();
        let key = format!("{seq:?}");
        if !seen.insert(key) {
            return;
        }
        let circuit = seq
            .iter()
            .cloned()
            .fold(Circuit::new(n_qubits), Circuit::then);
        let d = dist_up_to_phase(&unitary_of(&circuit), target).map(|p| p.distance);
        if matches!(d, Ok(d) if d < tol) {
            found.push(seq);
        }
    });
    found
}

fn permute(v: &mut [usize], k: usize, visit: &mut impl FnMut(&[usize])) {
    if k == v.len() {
        visit(v);
        return;
    }
    for i in k..v.len() {
        v.swap(k, i);
        permute(v, k + 1, visit);
        v.swap(k, i);
    }
}

fn toffoli_matrix() -> ComplexMatrix {
    ComplexMatrix::permutation(8, |x| if x & 3 == 3 { x ^ 4 } else { x })
}

fn fredkin_matrix() -> ComplexMatrix {
    ComplexMatrix::permutation(8, |x| {
        if x & 1 == 1 {
            1 | ((x >> 2) & 1) << 1 | ((x >> 1) & 1) << 2
        } else {
            x
        }
    })
}

fn fanout_matrix(n: usize) -> ComplexMatrix {
    let mask = ((1 << n) - 1) & !1;
    ComplexMatrix::permutation(1 << n, |x| if x & 1 == 1 { x ^ mask } else { x })
}

/// Controlled-`u` with the control on `q0` and `u` on `q1`. The block form
/// `diag(I, u)` puts the control on the high bit, so it is embedded with
/// wires swapped.
fn ctrl(u: &ComplexMatrix) -> ComplexMatrix {
    let block = gates::controlled(u).expect("catalog gates are unitary");
    embed(&block, &[1, 0], 2).expect("two wires")
}

fn qft(n: usize) -> ComplexMatrix {
    qft_matrix(n).expect("n in range")
}

fn iqft(n: usize) -> ComplexMatrix {
    iqft_matrix(n).expect("n in range")
}

fn circuit_of(spec: QftSpec) -> Circuit {
    qft_circuit(spec).expect("n in range")
}

fn gate_circuit(gates: &[Gate]) -> Circuit {
    gates
        .iter()
        .fold(Circuit::new(1), |c, g| c.gate(g.clone(), &[0]))
}

/// The built-in identity catalog.
pub fn builtin_catalog() -> Vec<Identity> {
    let cx = gates::cnot(CnotOrientation::ControlQ0TargetQ1).matrix;
    let swap = gates::swap_matrix();
    let mut v = Vec::new();

    let [p_id, p_x, p_z, p_y] = gates::pauli_recipes();
    v.push(Identity::new(
        "pauli-identity-from-hadamard",
        "Pauli recipes: I = H·H",
        p_id,
        ComplexMatrix::identity(2),
    ));
    v.push(Identity::new(
        "pauli-x-from-flip",
        "Pauli recipes: X = flip of I",
        p_x,
        gates::pauli_x(),
    ));
    v.push(Identity::new(
        "pauli-z-from-hadamard-conjugation",
        "Pauli recipes: Z = H·X·H",
        p_z,
        gates::pauli_z(),
    ));
    v.push(Identity::new(
        "pauli-y-from-flipped-z",
        "Pauli recipes: Y = i·flip of Z",
        p_y,
        gates::pauli_y(),
    ));

    v.push(Identity::new(
        "t-squared-is-s",
        "phase chain: T² = S",
        gate_circuit(&[Gate::T, Gate::T]),
        Gate::S.matrix(),
    ));
    v.push(Identity::new(
        "u-squared-is-t",
        "phase chain: U² = T",
        gate_circuit(&[Gate::U, Gate::U]),
        Gate::T.matrix(),
    ));
    v.push(Identity::new(
        "s-squared-is-z",
        "phase chain: S² = Z",
        gate_circuit(&[Gate::S, Gate::S]),
        gates::pauli_z(),
    ));
    v.push(Identity::new(
        "v-from-hadamard-and-t",
        "square root of NOT: V = H·T·T·H",
        gate_circuit(&[Gate::H, Gate::T, Gate::T, Gate::H]),
        gates::sqrt_not(),
    ));
    v.push(Identity::new(
        "vdg-from-hadamard-and-tdg",
        "square root of NOT: V⁻¹ = H·T⁻¹·T⁻¹·H",
        gate_circuit(&[Gate::H, Gate::Tdg, Gate::Tdg, Gate::H]),
        gates::sqrt_not().dagger(),
    ));
    v.push(Identity::new(
        "v-squared-is-x",
        "square root of NOT: V² = X",
        gate_circuit(&[Gate::V, Gate::V]),
        gates::pauli_x(),
    ));

    v.push(Identity::new(
        "cnot-from-fourier-squared",
        "CNOT = F₄·F₄",
        &qft(2) * &qft(2),
        cx.clone(),
    ));
    v.push(Identity::new(
        "cnot-from-inverse-fourier-squared",
        "CNOT = F₄⁻¹·F₄⁻¹",
        &iqft(2) * &iqft(2),
        cx.clone(),
    ));
    let root = gates::sqrt_cnot().matrix;
    v.push(Identity::new(
        "sqrt-cnot-squared",
        "square root of CNOT squares to CNOT",
        &root * &root,
        cx.clone(),
    ));
    v.push(
        Identity::new(
            "sqrt-cnot-is-not-fourier",
            "square root of CNOT differs from F₄",
            root,
            qft(2),
        )
        .distinct(0.1),
    );

    for n in 1..=4 {
        v.push(Identity::new(
            &format!("qft-circuit-{n}q"),
            "QFT as Hadamard and controlled-phase ladder",
            circuit_of(QftSpec::forward(n)),
            qft(n),
        ));
    }
    v.push(Identity::new(
        "iqft-circuit-3q",
        "inverse QFT as conjugated-phase ladder",
        circuit_of(QftSpec::inverse(3)),
        iqft(3),
    ));

    v.push(Identity::new(
        "fourier-squared-swap-free-2q",
        "F₄·F₄ with the reversal swaps cancelled",
        qft_squared_circuit(2, false).expect("n = 2"),
        cx.clone(),
    ));
    v.push(Identity::new(
        "inverse-fourier-squared-swap-free-3q",
        "F₈⁻¹·F₈⁻¹ with the reversal swaps cancelled",
        qft_squared_circuit(3, true).expect("n = 3"),
        &iqft(3) * &iqft(3),
    ));
    v.push(Identity::new(
        "fourier-squared-swap-free-4q",
        "F₁₆·F₁₆ with the reversal swaps cancelled",
        qft_squared_circuit(4, false).expect("n = 4"),
        &qft(4) * &qft(4),
    ));

    v.push(Identity::new(
        "flipped-cnot",
        "flipped CNOT from Hadamard conjugation",
        flipped_cnot(),
        gates::cnot(CnotOrientation::ControlQ1TargetQ0).matrix,
    ));
    for (k, form) in swap_constructions().into_iter().enumerate() {
        let label = [
            "three CNOTs",
            "Hadamard-conjugated middle CNOT",
            "Fourier blocks",
        ][k];
        v.push(Identity::new(
            &format!("swap-form-{}", k + 1),
            &format!("SWAP from {label}"),
            form,
            swap.clone(),
        ));
    }

    let cs = ctrl(&Gate::S.matrix());
    let csdg = ctrl(&Gate::Sdg.matrix());
    for (dagger, target) in [(false, &cs), (true, &csdg)] {
        let name = if dagger {
            "controlled-sdg"
        } else {
            "controlled-s"
        };
        for (k, form) in cons::controlled_s_forms(dagger).into_iter().enumerate() {
            v.push(Identity::new(
                &format!("{name}-form-{}", k + 1),
                "controlled-S and controlled-S⁻¹ from T, T⁻¹, CNOT",
                form,
                target.clone(),
            ));
        }
    }

    let anti_block = gates::anti_controlled(&gates::pauli_x()).expect("X is unitary");
    let anti_x = embed(&anti_block, &[1, 0], 2).expect("two wires");
    v.push(Identity::new(
        "anti-control-via-inverters",
        "anti-control as CNOT between inverters",
        cons::anti_controlled_cnot(),
        anti_x.clone(),
    ));
    v.push(Identity::new(
        "anti-control-via-inverters-fourier",
        "anti-control with the CNOT as F₄⁻¹ blocks",
        cons::fourier_form(&cons::anti_controlled_cnot()),
        anti_x,
    ));

    v.push(Identity::new(
        "cnot-via-controlled-s",
        "CNOT from H and controlled-S",
        cons::cnot_via_controlled_phase(false),
        cx.clone(),
    ));
    v.push(Identity::new(
        "cnot-via-controlled-sdg",
        "CNOT from H and controlled-S⁻¹",
        cons::cnot_via_controlled_phase(true),
        cx.clone(),
    ));

    let cz = ctrl(&gates::pauli_z());
    let cz_labels = [
        "H and CNOT",
        "F₂ and F₄⁻¹ blocks",
        "H and controlled-S⁻¹",
        "two controlled-S⁻¹",
    ];
    for (k, form) in cons::controlled_z_forms().into_iter().enumerate() {
        v.push(Identity::new(
            &format!("controlled-z-form-{}", k + 1),
            &format!("controlled-Z from {}", cz_labels[k]),
            form,
            cz.clone(),
        ));
    }

    let cy = ctrl(&gates::pauli_y());
    v.push(Identity::new(
        "controlled-y",
        "controlled-Y from S⁻¹, CNOT, S",
        cons::controlled_y(),
        cy.clone(),
    ));
    v.push(Identity::new(
        "controlled-y-fourier",
        "controlled-Y with the CNOT as F₄⁻¹ blocks",
        cons::fourier_form(&cons::controlled_y()),
        cy,
    ));
    v.push(Identity::new(
        "controlled-t",
        "controlled-T from U, CNOT, U⁻¹",
        cons::controlled_t(),
        ctrl(&Gate::T.matrix()),
    ));
    v.push(Identity::new(
        "controlled-h",
        "controlled-H from S, H, T, CNOT, T⁻¹, S⁻¹",
        cons::controlled_h(),
        ctrl(&gates::hadamard()),
    ));
    for (dagger, name) in [(false, "controlled-v"), (true, "controlled-vdg")] {
        let u = if dagger {
            gates::sqrt_not().dagger()
        } else {
            gates::sqrt_not()
        };
        for (k, form) in cons::controlled_v_forms(dagger).into_iter().enumerate() {
            v.push(Identity::new(
                &format!("{name}-form-{}", k + 1),
                "controlled-V and controlled-V⁻¹ from H and T-type gates",
                form,
                ctrl(&u),
            ));
        }
    }

    let step = embed(&cx, &[0, 2], 3).expect("valid wires");
    let step_labels = [
        "direct F₄⁻¹ blocks",
        "SWAP-conjugated neighbour CNOT",
        "four neighbour CNOTs as F₄⁻¹ blocks",
        "four neighbour CNOTs from H and controlled-S⁻¹",
    ];
    for (k, form) in cons::step_over_forms().into_iter().enumerate() {
        v.push(Identity::new(
            &format!("step-over-cnot-form-{}", k + 1),
            &format!("CNOT jumping an intermediate qubit: {}", step_labels[k]),
            form,
            step.clone(),
        ));
    }

    for (n, name) in [(3, "double-feynman"), (4, "triple-feynman")] {
        let labels = ["CNOT fan-out", "F₄⁻¹ blocks", "H and controlled-S⁻¹"];
        for (k, form) in cons::feynman_forms(n).into_iter().enumerate() {
            v.push(Identity::new(
                &format!("{name}-form-{}", k + 1),
                &format!("{name} gate from {}", labels[k]),
                form,
                fanout_matrix(n),
            ));
        }
    }

    let block = ComplexMatrix::from_fn(8, |r, col| {
        let (hr, hc) = (r & 1, col & 1);
        match (hr, hc) {
            (1, 1) => iqft(2).get(r >> 1, col >> 1),
            (0, 0) if r == col => c(1.0, 0.0),
            _ => c(0.0, 0.0),
        }
    });
    v.push(Identity::new(
        "controlled-inverse-fourier-block",
        "controlled-F₄⁻¹ as the block matrix diag(I, F₄⁻¹)",
        Circuit::new(3)
            .then(CircuitOp::new(cons::iqft2_block(), vec![1, 2]).with_controls(vec![0])),
        block,
    ));

    let toffoli = toffoli_matrix();
    v.push(Identity::new(
        "toffoli-clifford-t",
        "Toffoli from H, T, T⁻¹, CNOT",
        cons::toffoli_clifford_t(),
        toffoli.clone(),
    ));
    v.push(Identity::new(
        "toffoli-clifford-t-fourier",
        "Toffoli with every CNOT as F₄⁻¹ blocks and every H as F₂",
        cons::fourier_form(&cons::toffoli_clifford_t()),
        toffoli.clone(),
    ));
    let v_labels = [
        "controlled-V and controlled-V⁻¹",
        "V expanded as H·T·T·H",
        "H, controlled-S, controlled-S⁻¹, CNOT",
        "H, controlled-S, controlled-S⁻¹",
    ];
    for (k, form) in cons::toffoli_v_forms().into_iter().enumerate() {
        v.push(Identity::new(
            &format!("toffoli-v-form-{}", k + 1),
            &format!("Toffoli from {}", v_labels[k]),
            form,
            toffoli.clone(),
        ));
    }
    v.push(Identity::new(
        "toffoli-controlled-phase",
        "Toffoli from H, controlled-T, controlled-S⁻¹, controlled-T⁻¹",
        cons::toffoli_controlled_phase_form(),
        toffoli.clone(),
    ));
    v.push(Identity::new(
        "toffoli-double-controlled-inverse-fourier",
        "Toffoli as two controlled-F₄⁻¹ blocks",
        cons::toffoli_double_controlled_iqft(),
        toffoli,
    ));

    let styles = [
        (ToffoliModule::Direct, CnotStyle::Direct, "toffoli-cnot"),
        (ToffoliModule::Direct, CnotStyle::Fourier, "toffoli-fourier"),
        (
            ToffoliModule::Direct,
            CnotStyle::HadamardCsdg,
            "toffoli-controlled-sdg",
        ),
        (
            ToffoliModule::DoubleControlledIqft,
            CnotStyle::Fourier,
            "controlled-inverse-fourier",
        ),
    ];
    type Builder = fn(ToffoliModule, CnotStyle) -> Circuit;
    let families: [(&str, Builder, ComplexMatrix); 3] = [
        ("fredkin", cons::fredkin, fredkin_matrix()),
        ("peres", cons::peres, gates::peres_matrix()),
        ("miller", cons::miller, gates::miller_matrix().clone()),
    ];
    for (family, build, target) in families.iter() {
        for (module, style, label) in styles {
            v.push(Identity::new(
                &format!("{family}-{label}"),
                &format!("{family} gate built around a Toffoli ({label})"),
                build(module, style),
                target.clone(),
            ));
        }
    }

    v.push(Identity::new(
        "splitting-then-recombining",
        "recombining after splitting restores the input",
        &gates::recombining() * &gates::splitting(),
        ComplexMatrix::identity(2),
    ));
    v
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::I;
    use std::collections::HashSet;

    fn tol() -> Tolerance {
        Tolerance::new(1e-10).unwrap()
    }

    #[test]
    fn catalog_passes() {
        let cat = builtin_catalog();
        let report = run_all(&cat, tol());
        let failed: Vec<_> = report
            .results
            .iter()
            .filter(|r| !r.pass)
            .map(|r| (&r.id, r.distance))
            .collect();
        assert!(failed.is_empty(), "failed: {failed:?}");
        let positives = cat
            .iter()
            .filter(|i| i.expectation == Expectation::Equivalent)
            .count();
        assert!(positives >= 25);
        assert_eq!(cat.len() - positives, 1);
        let ids: HashSet<_> = cat.iter().map(|i| i.id.as_str()).collect();
        assert_eq!(ids.len(), cat.len(), "duplicate ids");
    }

    #[test]
    fn negative_identity_distance_floor() {
        let cat = builtin_catalog();
        let neg = cat
            .iter()
            .find(|i| matches!(i.expectation, Expectation::Distinct { .. }))
            .unwrap();
        let r = check(neg, tol()).unwrap();
        assert!(r.pass && r.distance > 0.1);
    }

    #[test]
    fn trivial_and_phase_checks() {
        let h = gates::hadamard();
        let r = check(&Identity::new("same", "", h.clone(), h.clone()), tol()).unwrap();
        assert_eq!(r.distance, 0.0);
        let rotated = h.scale(c(0.0, 1.0));
        let r = check(&Identity::new("phase", "", rotated, h), tol()).unwrap();
        assert!(r.pass);
        assert!((r.phase - std::f64::consts::FRAC_PI_2).abs() < 1e-12);
        let z = gates::pauli_recipes()[2].clone();
        let r = check(&Identity::new("z", "", z, gates::pauli_z()), tol()).unwrap();
        assert!(r.pass && r.phase.abs() < 1e-12);
    }

    #[test]
    fn dimension_mismatch_names_identity() {
        let bad = Identity::new(
            "bad",
            "",
            ComplexMatrix::identity(2),
            ComplexMatrix::identity(4),
        );
        match check(&bad, tol()) {
            Err(Error::Identity { id, .. }) => assert_eq!(id, "bad"),
            other => panic!("unexpected {other:?}"),
        }
        let report = run_all(&[bad], tol());
        assert!(!report.results[0].pass);
    }

    #[test]
    fn fault_injection_flags_exactly_one() {
        let mut cat = builtin_catalog();
        let target = cat.iter().position(|i| i.id == "controlled-y").unwrap();
        cat[target].rhs = Expr::Matrix(ctrl(&gates::pauli_x()));
        let report = run_all(&cat, tol());
        let failures: Vec<_> = report.results.iter().filter(|r| !r.pass).collect();
        assert_eq!(failures.len(), 1);
        assert_eq!(failures[0].id, "controlled-y");
        assert!(failures[0].distance >= 1e-10);
    }

    #[test]
    fn empty_catalog_and_json() {
        let report = run_all(&[], tol());
        assert_eq!(report.to_json(), "[]");
        let one = run_all(&builtin_catalog()[..1], tol());
        let v: serde_json::Value = serde_json::from_str(&one.to_json()).unwrap();
        let entry = &v[0];
        for key in ["id", "paper_ref", "pass", "distance", "phase"] {
            assert!(entry.get(key).is_some(), "missing {key}");
        }
    }

    #[test]
    fn report_is_deterministic() {
        let a = run_all(&builtin_catalog(), tol()).to_json();
        let b = run_all(&builtin_catalog(), tol()).to_json();
        assert_eq!(a, b);
    }

    #[test]
    fn controlled_h_order_found_by_search() {
        let t = |g: Gate| CircuitOp::new(g, vec![1]);
        let ops = [
            t(Gate::S),
            t(Gate::H),
            t(Gate::T),
            CircuitOp::new(Gate::X, vec![1]).with_controls(vec![0]),
            t(Gate::Tdg),
            t(Gate::H),
            t(Gate::Sdg),
        ];
        let found = search_orderings(&ops, 2, &ctrl(&gates::hadamard()), 1e-10);
        assert!(!found.is_empty());
        let frozen = cons::controlled_h().ops().to_vec();
        assert!(found.contains(&frozen));
    }

    #[test]
    fn peres_order_found_by_search() {
        let ops = [
            CircuitOp::new(Gate::X, vec![2]).with_controls(vec![0, 1]),
            CircuitOp::new(Gate::X, vec![1]).with_controls(vec![0]),
        ];
        let found = search_orderings(&ops, 3, &gates::peres_matrix(), 1e-10);
        assert_eq!(found.len(), 1);
        let frozen = cons::peres(ToffoliModule::Direct, CnotStyle::Direct);
        assert_eq!(found[0], frozen.ops().to_vec());
    }

    #[test]
    fn controlled_v_flipped_form_found_by_search() {
        let ops = [
            CircuitOp::new(Gate::T, vec![0]),
            CircuitOp::new(Gate::T, vec![1]),
            CircuitOp::new(Gate::X, vec![0]).with_controls(vec![1]),
            CircuitOp::new(Gate::Tdg, vec![0]),
            CircuitOp::new(Gate::X, vec![0]).with_controls(vec![1]),
        ];
        // the surrounding Hadamards are fixed; search the diagonal core
        let core = ctrl(&Gate::S.matrix());
        let found = search_orderings(&ops, 2, &core, 1e-10);
        let frozen = cons::controlled_v_forms(false)[1].ops()[1..6].to_vec();
        assert!(found.contains(&frozen));
    }

    #[test]
    fn swapless_ladders_need_mirrored_second_copy() {
        let l = qft_circuit(QftSpec::forward(2).without_swaps()).unwrap();
        let naive = unitary_of(&l.clone().append(&l));
        let cx = gates::cnot(CnotOrientation::ControlQ0TargetQ1).matrix;
        let d = dist_up_to_phase(&naive, &cx).unwrap().distance;
        let mirrored = unitary_of(&qft_squared_circuit(2, false).unwrap());
        assert!(d > 0.1);
        assert!(dist_up_to_phase(&mirrored, &cx).unwrap().distance < 1e-12);
        let _ = I;
    }
}
