//! The `.fqc` circuit text format.
//!
//! ```text
//! qubits 3          # header: register width, 1..=12
//! h 0
//! cx 0 2            # controls first, then targets
//! cx !1 2           # `!` marks an anti-control
//! qft 0 2           # QFT ladder over wires 0..=2 (2 0 reverses the order)
//! ```
//!
//! `qft`, `iqft`, `qft2` and `iqft2` expand into gates at parse time;
//! `qft2`/`iqft2` are the swap-free squared transforms on 2 to 4 wires.
//! Phase gates beyond `u` are written `rK`/`rKdg` (`crK`/`crKdg`
//! controlled) for `diag(1, e^{±2πi/2^K})`, `K ≥ 5`.

use std::fmt;
use std::path::{Path, PathBuf};

use crate::circuit::{Circuit, CircuitOp, QubitIndex, MAX_QUBITS};
use crate::error::{Error, Result};
use crate::gates::{mnemonic_for, resolve_mnemonic};
use crate::qft::{qft_circuit, qft_squared_circuit, QftSpec};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    /// 1-based line.
    pub line: usize,
    /// 1-based column, counted in characters.
    pub col: usize,
    pub message: String,
    pub token: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}, col {}: {}", self.line, self.col, self.message)?;
        if !self.token.is_empty() {
            write!(f, " (at `{}`)", self.token)?;
        }
        Ok(())
    }
}

impl std::error::Error for ParseError {}

/// Source text with an optional origin path for diagnostics.
#[derive(Debug, Clone)]
pub struct SourceFile {
    pub path: Option<PathBuf>,
    pub text: String,
}

impl SourceFile {
    pub fn new(text: impl Into<String>) -> Self {
        SourceFile {
            path: None,
            text: text.into(),
        }
    }

    pub fn load(path: &Path) -> std::io::Result<Self> {
        Ok(SourceFile {
            path: Some(path.to_path_buf()),
            text: std::fs::read_to_string(path)?,
        })
    }

    pub fn parse(&self) -> std::result::Result<Circuit, ParseError> {
        parse(&self.text)
    }
}

#[derive(Debug, Clone, Copy)]
struct Token<'a> {
    text: &'a str,
    line: usize,
    col: usize,
}

impl Token<'_> {
    fn error(&self, message: impl Into<String>) -> ParseError {
        ParseError {
            line: self.line,
            col: self.col,
            message: message.into(),
            token: self.text.to_string(),
        }
    }
}

fn tokenize(line: &str, line_no: usize) -> Vec<Token<'_>> {
    let code = line.split('#').next().unwrap_or("");
    let mut out = Vec::new();
    let mut start: Option<usize> = None;
    let mut col = 0;
    let mut start_col = 0;
    for (byte, ch) in code.char_indices() {
        col += 1;
        if ch.is_whitespace() {
            if let Some(s) = start.take() {
                out.push(Token {
                    text: &code[s..byte],
                    line: line_no,
                    col: start_col,
                });
            }
        } else if start.is_none() {
            start = Some(byte);
            start_col = col;
        }
    }
    if let Some(s) = start {
        out.push(Token {
            text: &code[s..],
            line: line_no,
            col: start_col,
        });
    }
    out
}

fn parse_index(tok: &Token, n_qubits: usize) -> std::result::Result<QubitIndex, ParseError> {
    if tok.text.is_empty() || !tok.text.bytes().all(|b| b.is_ascii_digit()) {
        return Err(tok.error("expected a qubit index"));
    }
    let q: usize = tok
        .text
        .parse()
        .map_err(|_| tok.error("qubit index too large"))?;
    if q >= n_qubits {
        return Err(tok.error(format!("qubit {q} out of range for {n_qubits} qubits")));
    }
    Ok(q)
}

fn parse_header(tokens: &[Token]) -> std::result::Result<usize, ParseError> {
    let first = tokens[0];
    if first.text != "qubits" {
        return Err(first.error("expected header `qubits N`"));
    }
    let Some(count) = tokens.get(1) else {
        return Err(first.error("header is missing the qubit count"));
    };
    if let Some(extra) = tokens.get(2) {
        return Err(extra.error("unexpected token after qubit count"));
    }
    let n: usize = if count.text.bytes().all(|b| b.is_ascii_digit()) {
        count.text.parse().unwrap_or(usize::MAX)
    } else {
        return Err(count.error("qubit count must be a number"));
    };
    if !(1..=MAX_QUBITS).contains(&n) {
        return Err(count.error(format!("qubit count must be between 1 and {MAX_QUBITS}")));
    }
    Ok(n)
}

fn expand_fourier(
    name: &Token,
    operands: &[Token],
    n_qubits: usize,
) -> std::result::Result<Circuit, ParseError> {
    if operands.len() != 2 {
        let at = operands.get(2).unwrap_or(name);
        return Err(at.error(format!("`{}` takes a wire range `lo hi`", name.text)));
    }
    let lo = parse_index(&operands[0], n_qubits)?;
    let hi = parse_index(&operands[1], n_qubits)?;
    let wires: Vec<QubitIndex> = if lo <= hi {
        (lo..=hi).collect()
    } else {
        (hi..=lo).rev().collect()
    };
    let k = wires.len();
    let local = match name.text {
        "qft" => qft_circuit(QftSpec::forward(k)),
        "iqft" => qft_circuit(QftSpec::inverse(k)),
        "qft2" => qft_squared_circuit(k, false),
        "iqft2" => qft_squared_circuit(k, true),
        _ => unreachable!("caller checks the name"),
    }
    .map_err(|e| name.error(format!("invalid range: {e}")))?;
    Ok(Circuit::new(n_qubits).append_mapped(&local, &wires))
}

fn parse_op(tokens: &[Token], n_qubits: usize) -> std::result::Result<Vec<CircuitOp>, ParseError> {
    let name = &tokens[0];
    let operands = &tokens[1..];
    if matches!(name.text, "qft" | "iqft" | "qft2" | "iqft2") {
        return Ok(expand_fourier(name, operands, n_qubits)?.ops().to_vec());
    }
    let Some((gate, n_controls)) = resolve_mnemonic(name.text) else {
        return Err(name.error("unknown gate"));
    };
    let expected = n_controls + gate.arity();
    if operands.len() != expected {
        let at = operands.get(expected).unwrap_or(name);
        return Err(at.error(format!(
            "`{}` takes {expected} operand(s), got {}",
            name.text,
            operands.len()
        )));
    }
    let mut controls = Vec::new();
    let mut anti = Vec::new();
    let mut targets = Vec::new();
    let mut seen: Vec<QubitIndex> = Vec::new();
    for (i, tok) in operands.iter().enumerate() {
        let (negated, body) = match tok.text.strip_prefix('!') {
            Some(rest) => (true, rest),
            None => (false, tok.text),
        };
        let digits = Token { text: body, ..*tok };
        let q = parse_index(&digits, n_qubits).map_err(|mut e| {
            e.token = tok.text.to_string();
            e
        })?;
        if seen.contains(&q) {
            return Err(tok.error(format!("wire {q} used twice")));
        }
        seen.push(q);
        if i < n_controls {
            if negated {
                anti.push(q);
            } else {
                controls.push(q);
            }
        } else if negated {
            return Err(tok.error("`!` is only allowed on control operands"));
        } else {
            targets.push(q);
        }
    }
    Ok(vec![CircuitOp::new(gate, targets)
        .with_controls(controls)
        .with_anti_controls(anti)])
}

pub fn parse(src: &str) -> std::result::Result<Circuit, ParseError> {
    let mut circuit: Option<Circuit> = None;
    let mut last_line = 1;
    for (idx, line) in src.lines().enumerate() {
        last_line = idx + 1;
        let tokens = tokenize(line, idx + 1);
        if tokens.is_empty() {
            continue;
        }
        match circuit.as_mut() {
            None => circuit = Some(Circuit::new(parse_header(&tokens)?)),
            Some(c) => {
                for op in parse_op(&tokens, c.n_qubits())? {
                    c.push(op).map_err(|e| tokens[0].error(e.to_string()))?;
                }
            }
        }
    }
    circuit.ok_or_else(|| ParseError {
        line: last_line,
        col: 1,
        message: "missing header `qubits N`".into(),
        token: String::new(),
    })
}

/// Parses raw bytes; invalid UTF-8 is reported at its position.
pub fn parse_bytes(bytes: &[u8]) -> std::result::Result<Circuit, ParseError> {
    match std::str::from_utf8(bytes) {
        Ok(s) => parse(s),
        Err(e) => {
            let valid = std::str::from_utf8(&bytes[..e.valid_up_to()]).expect("valid prefix");
            let line = valid.matches('\n').count() + 1;
            let col = valid.rsplit('\n').next().map_or(0, |l| l.chars().count()) + 1;
            Err(ParseError {
                line,
                col,
                message: "invalid UTF-8".into(),
                token: String::new(),
            })
        }
    }
}

/// Writes `c` in the text format. Fails on operations without a mnemonic
/// (inline matrices, unsupported control counts).
pub fn emit(c: &Circuit) -> Result<String> {
    let mut out = format!("qubits {}\n", c.n_qubits());
    for op in c.ops() {
        let n_controls = op.controls.len() + op.anti_controls.len();
        let name = mnemonic_for(&op.gate, n_controls).ok_or_else(|| {
            Error::NotEmittable(format!(
                "{:?} with {n_controls} control(s)",
                op.gate.label()
            ))
        })?;
        out.push_str(&name);
        let operands = op
            .controls
            .iter()
            .map(|q| q.to_string())
            .chain(op.anti_controls.iter().map(|q| format!("!{q}")))
            .chain(op.targets.iter().map(|q| q.to_string()));
        for o in operands {
            out.push(' ');
            out.push_str(&o);
        }
        out.push('\n');
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circuit::{embed, unitary_of};
    use crate::gates::{anti_controlled, pauli_x, Gate};
    use crate::matrix::ComplexMatrix;
    use crate::qft::qft_matrix;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn err(src: &str) -> ParseError {
        parse(src).expect_err("should fail")
    }

    #[test]
    fn bell_file() {
        let c = parse("qubits 2\nh 0\ncx 0 1\n").unwrap();
        let expected = Circuit::new(2).h(0).cx(0, 1);
        assert_eq!(c, expected);
        assert_eq!(emit(&c).unwrap(), "qubits 2\nh 0\ncx 0 1\n");
    }

    #[test]
    fn header_only_and_comments() {
        let c = parse("# a comment\n\n  qubits 1   # trailing\n").unwrap();
        assert_eq!(c.n_qubits(), 1);
        assert!(c.is_empty());
        assert_eq!(unitary_of(&c), ComplexMatrix::identity(2));
    }

    #[test]
    fn anti_control_step_over() {
        let c = parse("qubits 3\ncx !0 2").unwrap();
        let op = &c.ops()[0];
        assert_eq!(op.anti_controls, [0]);
        assert!(op.controls.is_empty());
        let block = anti_controlled(&pauli_x()).unwrap();
        let oracle = embed(&block, &[2, 0], 3).unwrap();
        assert!(unitary_of(&c).max_abs_diff(&oracle).unwrap() < 1e-15);
        assert_eq!(parse(&emit(&c).unwrap()).unwrap(), c);
    }

    #[test]
    fn fourier_ranges() {
        let c = parse("qubits 3\nqft 0 2").unwrap();
        assert!(
            unitary_of(&c)
                .max_abs_diff(&qft_matrix(3).unwrap())
                .unwrap()
                < 1e-12
        );
        let rev = parse("qubits 3\nqft 2 0").unwrap();
        let placed = embed(&qft_matrix(3).unwrap(), &[2, 1, 0], 3).unwrap();
        assert!(unitary_of(&rev).max_abs_diff(&placed).unwrap() < 1e-12);
        let sq = parse("qubits 2\niqft2 0 1").unwrap();
        let cx = crate::gates::cnot(crate::gates::CnotOrientation::ControlQ0TargetQ1).matrix;
        assert!(unitary_of(&sq).max_abs_diff(&cx).unwrap() < 1e-12);
        let big = parse("qubits 6\nqft 0 5").unwrap();
        assert!(big
            .ops()
            .iter()
            .any(|o| matches!(o.gate, Gate::Phase { k: 5, .. })));
        assert_eq!(parse(&emit(&big).unwrap()).unwrap(), big);
        assert!(parse("qubits 5\nqft2 0 4").is_err());
    }

    #[test]
    fn error_locations() {
        let e = err("qubits 2\nh 0\nfoo 1");
        assert_eq!((e.line, e.col, e.token.as_str()), (3, 1, "foo"));
        let e = err("qubits 2\ncx 0   5");
        assert_eq!((e.line, e.col, e.token.as_str()), (2, 8, "5"));
        let e = err("qubits 2\ncx 1 1");
        assert_eq!((e.line, e.col), (2, 6));
        assert!(e.message.contains("twice"));
        let e = err("qubits 2\ncx 0");
        assert!(e.message.contains("2 operand"));
        let e = err("qubits 2\ncx 0 !1");
        assert!(e.message.contains("control"));
        let e = err("h 0");
        assert_eq!((e.line, e.col), (1, 1));
        let e = err("");
        assert!(e.message.contains("missing header"));
        assert!(err("qubits 13").message.contains("between"));
        assert!(err("qubits 0").message.contains("between"));
        assert!(err("qubits two").message.contains("number"));
        assert!(err("qubits 2\nh 99999999999999999999999")
            .message
            .contains("too large"));
    }

    #[test]
    fn invalid_utf8_is_located() {
        let e = parse_bytes(b"qubits 2\nh \xff0").unwrap_err();
        assert_eq!((e.line, e.col), (2, 3));
        assert!(parse_bytes(b"qubits 1\nx 0").is_ok());
    }

    #[test]
    fn inline_matrix_is_not_emittable() {
        let c = Circuit::new(1).gate(Gate::matrix_gate(qft_matrix(1).unwrap()), &[0]);
        assert!(matches!(emit(&c), Err(Error::NotEmittable(_))));
    }

    #[test]
    fn every_mnemonic_round_trips() {
        for name in crate::gates::MNEMONICS {
            let (gate, k) = resolve_mnemonic(name).unwrap();
            let wires: Vec<String> = (0..k + gate.arity()).map(|q| q.to_string()).collect();
            let src = format!("qubits 4\n{name} {}\n", wires.join(" "));
            let c = parse(&src).unwrap();
            assert_eq!(emit(&c).unwrap(), src);
        }
    }

    const VOCAB: &[&str] = &[
        "qubits",
        "h",
        "cx",
        "ccx",
        "qft",
        "iqft2",
        "r7",
        "crK",
        "!",
        "!0",
        "0",
        "1",
        "2",
        "3",
        "12",
        "-1",
        "#",
        "\n",
        " ",
        "\t",
        "cswap",
        "miller",
        "99999999999999999999",
        "é",
        "\r\n",
    ];

    #[test]
    fn fuzz_never_panics() {
        let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
        for i in 0..10_000 {
            let bytes: Vec<u8> = if i % 2 == 0 {
                let len = rng.gen_range(0..64);
                (0..len).map(|_| rng.gen()).collect()
            } else {
                let mut s = String::from(if rng.gen_bool(0.8) { "qubits 4\n" } else { "" });
                for _ in 0..rng.gen_range(0..24) {
                    s.push_str(VOCAB[rng.gen_range(0..VOCAB.len())]);
                    if rng.gen_bool(0.6) {
                        s.push(' ');
                    }
                }
                s.into_bytes()
            };
            if let Err(e) = parse_bytes(&bytes) {
                let lines = bytes.split(|&b| b == b'\n').count().max(1);
                assert!(e.line >= 1 && e.line <= lines, "{e} for {bytes:?}");
                assert!(e.col >= 1);
            }
        }
    }
}
