//! Gate catalog.
//!
//! Single-qubit gates are built from the Hadamard matrix by products and
//! row/column flips; the derivation is evaluated at construction and checked
//! against the textbook literal. Multi-qubit catalog matrices are stated in
//! *operand order*: operand `j` of the text form (`cx c t`, `ccx c0 c1 t`)
//! is local index bit `j`, so `cx` is the permutation exchanging basis
//! states 1 and 3.

use std::f64::consts::FRAC_1_SQRT_2;
use std::sync::{Arc, OnceLock};

use serde::Serialize;

use crate::circuit::{unitary_of, Circuit, CircuitOp};
use crate::constructions;
use crate::error::{Error, Result};
use crate::matrix::{c, root_of_unity, ComplexMatrix, Tolerance, I, ONE, ZERO};

/// Maximum entrywise deviation allowed between a recipe and its literal.
pub const RECIPE_TOL: f64 = 1e-13;

/// A gate kind as it appears in a circuit operation.
#[derive(Debug, Clone, PartialEq)]
pub enum Gate {
    Id,
    X,
    Y,
    Z,
    H,
    S,
    Sdg,
    T,
    Tdg,
    U,
    Udg,
    V,
    Vdg,
    /// `diag(1, e^{±2πi/2^k})` for `k ≥ 5`; smaller `k` normalize to
    /// `Z`, `S`, `T`, `U` through [`Gate::phase`].
    Phase {
        k: u32,
        dagger: bool,
    },
    Swap,
    Peres,
    PeresDg,
    Miller,
    /// Inline unitary on `log2(dim)` qubits; not representable in text.
    Matrix(Arc<ComplexMatrix>),
}

impl Gate {
    /// The phase gate `diag(1, e^{2πi/2^k})` (conjugated when `dagger`).
    pub fn phase(k: u32, dagger: bool) -> Gate {
        match (k, dagger) {
            (0, _) => Gate::Id,
            (1, _) => Gate::Z,
            (2, false) => Gate::S,
            (2, true) => Gate::Sdg,
            (3, false) => Gate::T,
            (3, true) => Gate::Tdg,
            (4, false) => Gate::U,
            (4, true) => Gate::Udg,
            _ => Gate::Phase { k, dagger },
        }
    }

    pub fn matrix_gate(m: ComplexMatrix) -> Gate {
        Gate::Matrix(Arc::new(m))
    }

    pub fn arity(&self) -> usize {
        match self {
            Gate::Swap => 2,
            Gate::Peres | Gate::PeresDg | Gate::Miller => 3,
            Gate::Matrix(m) => m.qubits().unwrap_or(0),
            _ => 1,
        }
    }

    pub fn matrix(&self) -> ComplexMatrix {
        match self {
            Gate::Id => ComplexMatrix::identity(2),
            Gate::X => pauli_x(),
            Gate::Y => pauli_y(),
            Gate::Z => pauli_z(),
            Gate::H => hadamard(),
            Gate::S => phase_matrix(2, false),
            Gate::Sdg => phase_matrix(2, true),
            Gate::T => phase_matrix(3, false),
            Gate::Tdg => phase_matrix(3, true),
            Gate::U => phase_matrix(4, false),
            Gate::Udg => phase_matrix(4, true),
            Gate::V => sqrt_not(),
            Gate::Vdg => sqrt_not().conj(),
            Gate::Phase { k, dagger } => phase_matrix(*k, *dagger),
            Gate::Swap => swap_matrix(),
            Gate::Peres => peres_matrix(),
            Gate::PeresDg => peres_matrix().dagger(),
            Gate::Miller => miller_matrix().clone(),
            Gate::Matrix(m) => (**m).clone(),
        }
    }

    pub fn dagger(&self) -> Gate {
        match self {
            Gate::S => Gate::Sdg,
            Gate::Sdg => Gate::S,
            Gate::T => Gate::Tdg,
            Gate::Tdg => Gate::T,
            Gate::U => Gate::Udg,
            Gate::Udg => Gate::U,
            Gate::V => Gate::Vdg,
            Gate::Vdg => Gate::V,
            Gate::Phase { k, dagger } => Gate::Phase {
                k: *k,
                dagger: !dagger,
            },
            Gate::Peres => Gate::PeresDg,
            Gate::PeresDg => Gate::Peres,
            Gate::Matrix(m) => Gate::matrix_gate(m.dagger()),
            // Id, Paulis, H, SWAP, Miller are involutions
            g => g.clone(),
        }
    }

    /// Short label used in diagnostics and text output.
    pub fn label(&self) -> String {
        match self {
            Gate::Id => "id".into(),
            Gate::X => "x".into(),
            Gate::Y => "y".into(),
            Gate::Z => "z".into(),
            Gate::H => "h".into(),
            Gate::S => "s".into(),
            Gate::Sdg => "sdg".into(),
            Gate::T => "t".into(),
            Gate::Tdg => "tdg".into(),
            Gate::U => "u".into(),
            Gate::Udg => "udg".into(),
            Gate::V => "v".into(),
            Gate::Vdg => "vdg".into(),
            Gate::Phase { k, dagger: false } => format!("r{k}"),
            Gate::Phase { k, dagger: true } => format!("r{k}dg"),
            Gate::Swap => "swap".into(),
            Gate::Peres => "peres".into(),
            Gate::PeresDg => "peresdg".into(),
            Gate::Miller => "miller".into(),
            Gate::Matrix(m) => format!("matrix{}", m.dim()),
        }
    }
}

pub fn hadamard() -> ComplexMatrix {
    let r = FRAC_1_SQRT_2;
    ComplexMatrix::from_real_rows([[r, r], [r, -r]])
}

pub fn pauli_x() -> ComplexMatrix {
    ComplexMatrix::from_real_rows([[0.0, 1.0], [1.0, 0.0]])
}

pub fn pauli_y() -> ComplexMatrix {
    ComplexMatrix::from_rows([[ZERO, -I], [I, ZERO]])
}

pub fn pauli_z() -> ComplexMatrix {
    ComplexMatrix::diag(&[ONE, -ONE])
}

/// `diag(1, e^{±2πi/2^k})`.
pub fn phase_matrix(k: u32, dagger: bool) -> ComplexMatrix {
    assert!(k < 63, "phase exponent {k} too large");
    let modulus = 1u64 << k;
    let z = root_of_unity(if dagger { modulus - 1 } else { 1 }, modulus);
    ComplexMatrix::diag(&[ONE, z])
}

/// `V = √X = ((1+i)/2)·[[1, −i], [−i, 1]]`.
pub fn sqrt_not() -> ComplexMatrix {
    let p = c(0.5, 0.5);
    let m = c(0.5, -0.5);
    ComplexMatrix::from_rows([[p, m], [m, p]])
}

pub fn swap_matrix() -> ComplexMatrix {
    ComplexMatrix::permutation(4, |x| ((x & 1) << 1) | (x >> 1))
}

/// Peres gate in operand order `(a, b, c) ↦ (a, a⊕b, c⊕ab)`: a Toffoli
/// followed by a CNOT on the control pair.
pub fn peres_matrix() -> ComplexMatrix {
    ComplexMatrix::permutation(8, |x| {
        let (a, b, cc) = (x & 1, (x >> 1) & 1, (x >> 2) & 1);
        a | ((a ^ b) << 1) | ((cc ^ (a & b)) << 2)
    })
}

/// Miller gate, defined by its construction from flipped CNOTs, step-over
/// CNOTs, and a Toffoli (see [`constructions::miller_reference`]).
pub fn miller_matrix() -> &'static ComplexMatrix {
    static MILLER: OnceLock<ComplexMatrix> = OnceLock::new();
    MILLER.get_or_init(|| unitary_of(&constructions::miller_reference()))
}

/// Which qubit of a two-qubit register controls the CNOT.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CnotOrientation {
    /// `q1` controls, `q0` is the target: exchanges basis states 2 and 3.
    ControlQ1TargetQ0,
    /// `q0` controls, `q1` is the target: exchanges basis states 1 and 3.
    ControlQ0TargetQ1,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Provenance {
    Literal,
    DerivedRecipe,
}

/// A named catalog gate.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GateDef {
    pub name: String,
    pub arity: usize,
    pub provenance: Provenance,
    pub matrix: ComplexMatrix,
}

impl GateDef {
    fn literal(name: &str, matrix: ComplexMatrix) -> Self {
        GateDef {
            name: name.to_string(),
            arity: matrix.qubits().expect("gate dimension is a power of two"),
            provenance: Provenance::Literal,
            matrix,
        }
    }

    /// Records a derived gate after checking the recipe against the literal.
    fn derived(name: &str, recipe: ComplexMatrix, literal: ComplexMatrix) -> Self {
        let dev = recipe
            .max_abs_diff(&literal)
            .expect("recipe and literal share a dimension");
        assert!(
            dev <= RECIPE_TOL,
            "recipe for `{name}` deviates from its literal by {dev:e}"
        );
        GateDef {
            provenance: Provenance::DerivedRecipe,
            ..GateDef::literal(name, literal)
        }
    }
}

/// Recipe evaluations for the Pauli matrices, in order `I, X, Z, Y`:
/// `I = H·H`, `X = flip_h(I)`, `Z = H·X·H`, `Y = i·flip_h(Z)`.
pub fn pauli_recipes() -> [ComplexMatrix; 4] {
    let h = hadamard();
    let id = &h * &h;
    let x = id.flip_h();
    let z = &(&h * &x) * &h;
    let y = z.flip_h().scale(I);
    [id, x, z, y]
}

pub fn pauli_from_hadamard() -> [GateDef; 4] {
    let [id, x, z, y] = pauli_recipes();
    [
        GateDef::derived("id", id, ComplexMatrix::identity(2)),
        GateDef::derived("x", x, pauli_x()),
        GateDef::derived("z", z, pauli_z()),
        GateDef::derived("y", y, pauli_y()),
    ]
}

pub fn phase_gates() -> [GateDef; 6] {
    [
        GateDef::literal("s", Gate::S.matrix()),
        GateDef::literal("sdg", Gate::Sdg.matrix()),
        GateDef::literal("t", Gate::T.matrix()),
        GateDef::literal("tdg", Gate::Tdg.matrix()),
        GateDef::literal("u", Gate::U.matrix()),
        GateDef::literal("udg", Gate::Udg.matrix()),
    ]
}

/// `V = H·T·T·H` and `V⁻¹ = H·T⁻¹·T⁻¹·H`.
pub fn sqrt_not_gates() -> [GateDef; 2] {
    let h = hadamard();
    let t = Gate::T.matrix();
    let tdg = Gate::Tdg.matrix();
    let v = &(&(&h * &t) * &t) * &h;
    let vdg = &(&(&h * &tdg) * &tdg) * &h;
    [
        GateDef::derived("v", v, sqrt_not()),
        GateDef::derived("vdg", vdg, sqrt_not().conj()),
    ]
}

pub fn cnot(orientation: CnotOrientation) -> GateDef {
    match orientation {
        CnotOrientation::ControlQ0TargetQ1 => GateDef::literal(
            "cx",
            ComplexMatrix::from_real_rows([
                [1.0, 0.0, 0.0, 0.0],
                [0.0, 0.0, 0.0, 1.0],
                [0.0, 0.0, 1.0, 0.0],
                [0.0, 1.0, 0.0, 0.0],
            ]),
        ),
        CnotOrientation::ControlQ1TargetQ0 => GateDef::literal(
            "cx_flipped",
            ComplexMatrix::permutation(4, |x| if x >= 2 { x ^ 1 } else { x }),
        ),
    }
}

pub fn sqrt_cnot() -> GateDef {
    let p = c(0.5, 0.5);
    let m = c(0.5, -0.5);
    GateDef::literal(
        "sqrt_cnot",
        ComplexMatrix::from_rows([
            [ONE, ZERO, ZERO, ZERO],
            [ZERO, p, ZERO, m],
            [ZERO, ZERO, ONE, ZERO],
            [ZERO, m, ZERO, p],
        ]),
    )
}

fn check_gate(u: &ComplexMatrix) -> Result<()> {
    if !u.dim().is_power_of_two() {
        return Err(Error::NotPowerOfTwo(u.dim()));
    }
    let deviation = u.unitarity_deviation();
    if deviation >= Tolerance::default().eps() {
        return Err(Error::NotUnitary { deviation });
    }
    Ok(())
}

/// `[[I, 0], [0, u]]`: the control is the high-order bit of the block.
pub fn controlled(u: &ComplexMatrix) -> Result<ComplexMatrix> {
    check_gate(u)?;
    Ok(crate::circuit::with_controls(u, 1, 0))
}

/// `[[u, 0], [0, I]]`: fires when the control (high bit) is `|0⟩`.
pub fn anti_controlled(u: &ComplexMatrix) -> Result<ComplexMatrix> {
    check_gate(u)?;
    Ok(crate::circuit::with_controls(u, 0, 1))
}

/// Matrix of a single catalog operation placed on wires `0..k` in operand
/// order.
fn operand_matrix(gate: Gate, controls: usize) -> ComplexMatrix {
    let arity = gate.arity();
    let n = arity + controls;
    let op = CircuitOp::new(gate, (controls..n).collect()).with_controls((0..controls).collect());
    let mut circuit = Circuit::new(n);
    circuit.push(op).expect("catalog operation is well formed");
    unitary_of(&circuit)
}

/// Toffoli, Fredkin, Peres, Miller in operand order.
pub fn three_qubit_gates() -> [GateDef; 4] {
    [
        GateDef::literal("ccx", operand_matrix(Gate::X, 2)),
        GateDef::literal("cswap", operand_matrix(Gate::Swap, 1)),
        GateDef::literal("peres", peres_matrix()),
        GateDef::derived("miller", miller_matrix().clone(), miller_matrix().clone()),
    ]
}

/// `flip_h(H)`, the beam-splitter "splitting" operator.
pub fn splitting() -> ComplexMatrix {
    hadamard().flip_h()
}

/// `flip_v(H)`, the "recombining" operator.
pub fn recombining() -> ComplexMatrix {
    hadamard().flip_v()
}

/// Mnemonics of the text format, with the base gate and the number of
/// leading control operands.
pub const MNEMONICS: &[&str] = &[
    "id", "x", "y", "z", "h", "s", "sdg", "t", "tdg", "u", "udg", "v", "vdg", "swap", "cx", "cs",
    "csdg", "ct", "ctdg", "cu", "cudg", "cz", "cy", "ch", "cv", "cvdg", "ccx", "cswap", "peres",
    "miller",
];

/// Resolves a mnemonic to `(base gate, control count)`. Besides the fixed
/// names, `rK`/`rKdg` and `crK`/`crKdg` denote the phase gates
/// `diag(1, e^{±2πi/2^K})` and their controlled forms.
pub fn resolve_mnemonic(name: &str) -> Option<(Gate, usize)> {
    let fixed = match name {
        "id" => Some((Gate::Id, 0)),
        "x" => Some((Gate::X, 0)),
        "y" => Some((Gate::Y, 0)),
        "z" => Some((Gate::Z, 0)),
        "h" => Some((Gate::H, 0)),
        "s" => Some((Gate::S, 0)),
        "sdg" => Some((Gate::Sdg, 0)),
        "t" => Some((Gate::T, 0)),
        "tdg" => Some((Gate::Tdg, 0)),
        "u" => Some((Gate::U, 0)),
        "udg" => Some((Gate::Udg, 0)),
        "v" => Some((Gate::V, 0)),
        "vdg" => Some((Gate::Vdg, 0)),
        "swap" => Some((Gate::Swap, 0)),
        "cx" => Some((Gate::X, 1)),
        "cs" => Some((Gate::S, 1)),
        "csdg" => Some((Gate::Sdg, 1)),
        "ct" => Some((Gate::T, 1)),
        "ctdg" => Some((Gate::Tdg, 1)),
        "cu" => Some((Gate::U, 1)),
        "cudg" => Some((Gate::Udg, 1)),
        "cz" => Some((Gate::Z, 1)),
        "cy" => Some((Gate::Y, 1)),
        "ch" => Some((Gate::H, 1)),
        "cv" => Some((Gate::V, 1)),
        "cvdg" => Some((Gate::Vdg, 1)),
        "ccx" => Some((Gate::X, 2)),
        "cswap" => Some((Gate::Swap, 1)),
        "peres" => Some((Gate::Peres, 0)),
        "miller" => Some((Gate::Miller, 0)),
        _ => None,
    };
    fixed.or_else(|| {
        let (controls, rest) = match name.strip_prefix('c') {
            Some(rest) => (1, rest),
            None => (0, name),
        };
        let digits = rest.strip_prefix('r')?;
        let (digits, dagger) = match digits.strip_suffix("dg") {
            Some(d) => (d, true),
            None => (digits, false),
        };
        if digits.is_empty()
            || !digits.bytes().all(|b| b.is_ascii_digit())
            || digits.starts_with('0')
        {
            return None;
        }
        let k: u32 = digits.parse().ok()?;
        // only the range not already covered by z/s/t/u
        (5..=62)
            .contains(&k)
            .then_some((Gate::Phase { k, dagger }, controls))
    })
}

/// Inverse of [`resolve_mnemonic`].
pub fn mnemonic_for(gate: &Gate, controls: usize) -> Option<String> {
    let base = match gate {
        Gate::Matrix(_) | Gate::PeresDg => return None,
        g => g.label(),
    };
    let name = match controls {
        0 => base,
        1 if matches!(gate, Gate::Peres | Gate::Miller | Gate::Id) => return None,
        1 => format!("c{base}"),
        2 if matches!(gate, Gate::X) => "ccx".to_string(),
        _ => return None,
    };
    resolve_mnemonic(&name)
        .filter(|(g, k)| g == gate && *k == controls)
        .map(|_| name)
}

/// Every named gate, built once.
pub fn catalog() -> &'static [GateDef] {
    static CATALOG: OnceLock<Vec<GateDef>> = OnceLock::new();
    CATALOG.get_or_init(|| {
        let mut defs = Vec::new();
        defs.push(GateDef::derived(
            "h",
            crate::qft::qft_matrix(1).expect("n = 1"),
            hadamard(),
        ));
        defs.extend(pauli_from_hadamard());
        defs.extend(phase_gates());
        defs.extend(sqrt_not_gates());
        defs.push(GateDef::literal("swap", swap_matrix()));
        defs.push(cnot(CnotOrientation::ControlQ0TargetQ1));
        defs.push(cnot(CnotOrientation::ControlQ1TargetQ0));
        defs.push(sqrt_cnot());
        for name in [
            "cs", "csdg", "ct", "ctdg", "cu", "cudg", "cz", "cy", "ch", "cv", "cvdg",
        ] {
            let (gate, controls) = resolve_mnemonic(name).expect("fixed mnemonic");
            defs.push(GateDef::literal(name, operand_matrix(gate, controls)));
        }
        defs.extend(three_qubit_gates());
        defs.push(GateDef::derived(
            "splitting",
            splitting(),
            &pauli_x() * &hadamard(),
        ));
        defs.push(GateDef::derived(
            "recombining",
            recombining(),
            &hadamard() * &pauli_x(),
        ));
        defs
    })
}

pub fn lookup(name: &str) -> Option<&'static GateDef> {
    catalog().iter().find(|g| g.name == name)
}
