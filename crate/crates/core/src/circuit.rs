//! Quantum circuits as flat gate streams, and a parser for a small
//! line-oriented cQASM subset.
//!
//! ```text
//! qubits 3
//! # comment
//! h q[0]
//! cnot q[0],q[1]
//! measure q[2]
//! ```
//!
//! Mnemonics are carried through but never interpreted: a gate with one
//! operand is a single-qubit gate, a gate with two operands is a two-qubit
//! gate, and `measure` is a measurement.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use thiserror::Error;

/// Errors produced while parsing cQASM-lite text. Line numbers are one-based.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("line {line}: syntax error near `{token}`")]
    Syntax { line: usize, token: String },
    #[error("line {line}: qubit q[{qubit}] out of range for {count} declared qubits")]
    Index {
        line: usize,
        qubit: usize,
        count: usize,
    },
    #[error("line {line}: gate before `qubits` header")]
    MissingHeader { line: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum GateKind {
    SingleQubit,
    TwoQubit,
    Measure,
}

/// One gate invocation. Arity is encoded in the variant.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GateEvent {
    Single {
        label: String,
        qubit: usize,
    },
    Two {
        label: String,
        qubits: (usize, usize),
    },
    Measure {
        qubit: usize,
    },
}

impl GateEvent {
    pub fn single(label: impl Into<String>, qubit: usize) -> Self {
        GateEvent::Single {
            label: label.into(),
            qubit,
        }
    }

    pub fn two(label: impl Into<String>, a: usize, b: usize) -> Self {
        GateEvent::Two {
            label: label.into(),
            qubits: (a, b),
        }
    }

    pub fn measure(qubit: usize) -> Self {
        GateEvent::Measure { qubit }
    }

    pub fn kind(&self) -> GateKind {
        match self {
            GateEvent::Single { .. } => GateKind::SingleQubit,
            GateEvent::Two { .. } => GateKind::TwoQubit,
            GateEvent::Measure { .. } => GateKind::Measure,
        }
    }

    pub fn label(&self) -> &str {
        match self {
            GateEvent::Single { label, .. } | GateEvent::Two { label, .. } => label,
            GateEvent::Measure { .. } => "measure",
        }
    }

    pub fn operands(&self) -> Vec<usize> {
        match *self {
            GateEvent::Single { qubit, .. } | GateEvent::Measure { qubit } => vec![qubit],
            GateEvent::Two { qubits: (a, b), .. } => vec![a, b],
        }
    }
}

/// A parsed circuit: declared qubit count plus gates in program order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CircuitIR {
    pub name: String,
    pub qubit_count: usize,
    pub gates: Vec<GateEvent>,
}

/// Gate counts per qubit and per unordered qubit pair.
///
/// Only non-zero entries are stored. Pair keys are normalized to `(low, high)`.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct GateTally {
    pub single: BTreeMap<usize, u64>,
    pub two: BTreeMap<(usize, usize), u64>,
    pub measure: BTreeMap<usize, u64>,
}

impl GateTally {
    pub fn total(&self) -> u64 {
        self.single.values().sum::<u64>()
            + self.two.values().sum::<u64>()
            + self.measure.values().sum::<u64>()
    }
}

impl CircuitIR {
    pub fn new(name: impl Into<String>, qubit_count: usize) -> Self {
        CircuitIR {
            name: name.into(),
            qubit_count,
            gates: Vec::new(),
        }
    }

    pub fn push(&mut self, gate: GateEvent) -> &mut Self {
        self.gates.push(gate);
        self
    }

    pub fn tally(&self) -> GateTally {
        tally_gates(self)
    }

    /// Renders the circuit back into cQASM-lite. `parse_circuit(render())`
    /// reproduces the gate stream; the name is not part of the format.
    pub fn render(&self) -> String {
        let mut out = format!("qubits {}\n", self.qubit_count);
        for gate in &self.gates {
            match gate {
                GateEvent::Single { label, qubit } => writeln!(out, "{label} q[{qubit}]"),
                GateEvent::Two {
                    label,
                    qubits: (a, b),
                } => writeln!(out, "{label} q[{a}],q[{b}]"),
                GateEvent::Measure { qubit } => writeln!(out, "measure q[{qubit}]"),
            }
            .expect("writing to a String cannot fail");
        }
        out
    }
}

/// Counts single-qubit gates, two-qubit gates (per unordered pair) and
/// measurements.
pub fn tally_gates(circuit: &CircuitIR) -> GateTally {
    let mut tally = GateTally::default();
    for gate in &circuit.gates {
        match *gate {
            GateEvent::Single { qubit, .. } => *tally.single.entry(qubit).or_default() += 1,
            GateEvent::Two { qubits: (a, b), .. } => {
                *tally.two.entry((a.min(b), a.max(b))).or_default() += 1
            }
            GateEvent::Measure { qubit } => *tally.measure.entry(qubit).or_default() += 1,
        }
    }
    tally
}

/// Parses cQASM-lite text. The circuit name is left empty.
pub fn parse_circuit(text: &str) -> Result<CircuitIR, ParseError> {
    let mut circuit: Option<CircuitIR> = None;

    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let content = match raw.find('#') {
            Some(pos) => &raw[..pos],
            None => raw,
        }
        .trim();
        if content.is_empty() {
            continue;
        }

        let (head, rest) = match content.split_once(char::is_whitespace) {
            Some((h, r)) => (h, r.trim()),
            None => (content, ""),
        };

        if head == "qubits" {
            if circuit.is_some() {
                return Err(syntax(line, head));
            }
            let count: usize = rest.parse().map_err(|_| syntax(line, rest))?;
            if count == 0 {
                return Err(syntax(line, rest));
            }
            circuit = Some(CircuitIR::new("", count));
            continue;
        }

        if !is_mnemonic(head) {
            return Err(syntax(line, head));
        }
        let circ = circuit.as_mut().ok_or(ParseError::MissingHeader { line })?;

        let operands = parse_operands(rest, line)?;
        for &q in &operands {
            if q >= circ.qubit_count {
                return Err(ParseError::Index {
                    line,
                    qubit: q,
                    count: circ.qubit_count,
                });
            }
        }

        let gate = match (head, operands.as_slice()) {
            ("measure", &[q]) => GateEvent::measure(q),
            ("measure", _) => return Err(syntax(line, rest)),
            (_, &[q]) => GateEvent::single(head, q),
            (_, &[a, b]) if a != b => GateEvent::two(head, a, b),
            _ => return Err(syntax(line, rest)),
        };
        circ.gates.push(gate);
    }

    circuit.ok_or(ParseError::MissingHeader {
        line: text.lines().count().max(1),
    })
}

fn syntax(line: usize, token: &str) -> ParseError {
    ParseError::Syntax {
        line,
        token: token.to_string(),
    }
}

fn is_mnemonic(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_lowercase())
        && chars.all(|c| c.is_ascii_lowercase() || c.is_ascii_digit())
}

fn parse_operands(rest: &str, line: usize) -> Result<Vec<usize>, ParseError> {
    let compact: String = rest.chars().filter(|c| !c.is_whitespace()).collect();
    if compact.is_empty() {
        return Err(syntax(line, rest));
    }
    compact
        .split(',')
        .map(|op| {
            op.strip_prefix("q[")
                .and_then(|s| s.strip_suffix(']'))
                .and_then(|idx| {
                    if idx.chars().all(|c| c.is_ascii_digit()) {
                        idx.parse::<usize>().ok()
                    } else {
                        None
                    }
                })
                .ok_or_else(|| syntax(line, op))
        })
        .collect::<Result<Vec<_>, _>>()
        .and_then(|ops| {
            if ops.len() > 2 {
                Err(syntax(line, rest))
            } else {
                Ok(ops)
            }
        })
}
