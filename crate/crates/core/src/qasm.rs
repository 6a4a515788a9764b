//! OpenQASM 2.0 export and a matching reader.
//!
//! Emitted programs use only `x`, `h`, `z`, `cx` and `ccx`. Multi-controlled
//! gates with more than two controls are lowered to a V-chain of Toffolis
//! over clean ancilla qubits appended after the logical register, so the
//! program's action on the logical qubits equals the circuit's unitary.

use crate::circuit::{Circuit, Gate, MAX_QUBITS};
use crate::error::{Error, Result};

/// Ancillas a lowered gate needs beyond the logical register.
fn ancillas_for(gate: &Gate) -> usize {
    let control_count = match gate {
        Gate::Mcx { controls, .. } => controls.len(),
        // MCZ over k qubits becomes H-conjugated MCX with k-1 controls.
        Gate::Mcz { qubits } => qubits.len() - 1,
        _ => 0,
    };
    control_count.saturating_sub(2)
}

/// Toffoli V-chain computing the AND of `controls` onto `target`.
///
/// Uses `controls.len() - 2` clean ancillas starting at `ancilla_base`; each
/// is returned to |0> before the chain finishes.
fn vchain_ccx(controls: &[usize], target: usize, ancilla_base: usize) -> Vec<Gate> {
    debug_assert!(controls.len() >= 3);
    let m = controls.len();
    let anc = |i: usize| ancilla_base + i;
    let mut gates = Vec::with_capacity(2 * m - 3);
    let compute = |gates: &mut Vec<Gate>| {
        gates.push(Gate::Ccx {
            control_a: controls[0],
            control_b: controls[1],
            target: anc(0),
        });
        for (j, &control) in controls.iter().enumerate().take(m - 1).skip(2) {
            gates.push(Gate::Ccx {
                control_a: control,
                control_b: anc(j - 2),
                target: anc(j - 1),
            });
        }
    };
    compute(&mut gates);
    gates.push(Gate::Ccx {
        control_a: controls[m - 1],
        control_b: anc(m - 3),
        target,
    });
    let uncompute_start = gates.len();
    compute(&mut gates);
    gates[uncompute_start..].reverse();
    gates
}

/// Lowers one gate to the x/h/z/cx/ccx set, using ancillas where needed.
fn lower(gate: &Gate, ancilla_base: usize, out: &mut Vec<Gate>) {
    match gate {
        Gate::X(_) | Gate::H(_) | Gate::Z(_) | Gate::Cx { .. } | Gate::Ccx { .. } => {
            out.push(gate.clone())
        }
        Gate::Mcx { controls, target } => match controls.len() {
            0 => out.push(Gate::X(*target)),
            1 => out.push(Gate::Cx {
                control: controls[0],
                target: *target,
            }),
            2 => out.push(Gate::Ccx {
                control_a: controls[0],
                control_b: controls[1],
                target: *target,
            }),
            _ => out.extend(vchain_ccx(controls, *target, ancilla_base)),
        },
        Gate::Mcz { qubits } => {
            // Z = H X H on the last listed qubit, so MCZ is an H-conjugated
            // multi-controlled NOT.
            let (target, controls) = qubits.split_last().expect("MCZ is never empty");
            out.push(Gate::H(*target));
            lower(
                &Gate::Mcx {
                    controls: controls.to_vec(),
                    target: *target,
                },
                ancilla_base,
                out,
            );
            out.push(Gate::H(*target));
        }
    }
}

/// Rewrites a circuit over the emission gate set, appending ancilla qubits
/// as needed. Used by the emitter and directly testable against the
/// original circuit's action.
pub(crate) fn lower_circuit(circuit: &Circuit) -> (usize, Vec<Gate>) {
    let ancillas = circuit.gates().iter().map(ancillas_for).max().unwrap_or(0);
    let ancilla_base = circuit.qubit_count();
    let mut gates = Vec::new();
    for gate in circuit.gates() {
        lower(gate, ancilla_base, &mut gates);
    }
    (circuit.qubit_count() + ancillas, gates)
}

/// Emits the circuit as an OpenQASM 2.0 program.
pub fn circuit_to_qasm(circuit: &Circuit) -> String {
    let (register_size, gates) = lower_circuit(circuit);
    let mut text = String::new();
    text.push_str("OPENQASM 2.0;\n");
    text.push_str("include \"qelib1.inc\";\n");
    text.push_str(&format!("qreg q[{register_size}];\n"));
    for gate in &gates {
        let line = match gate {
            Gate::X(t) => format!("x q[{t}];"),
            Gate::H(t) => format!("h q[{t}];"),
            Gate::Z(t) => format!("z q[{t}];"),
            Gate::Cx { control, target } => format!("cx q[{control}],q[{target}];"),
            Gate::Ccx {
                control_a,
                control_b,
                target,
            } => format!("ccx q[{control_a}],q[{control_b}],q[{target}];"),
            Gate::Mcx { .. } | Gate::Mcz { .. } => unreachable!("lowered above"),
        };
        text.push_str(&line);
        text.push('\n');
    }
    text
}

/// Parses a program in the emitted subset of OpenQASM 2.0 back to a circuit.
///
/// Accepts the version header, a single `qelib1.inc` include, one quantum
/// register and `x`/`h`/`z`/`cx`/`ccx` statements. Anything else is a parse
/// error; the input is untrusted.
pub fn parse_qasm(source: &str) -> Result<Circuit> {
    let mut statements = Vec::new();
    for raw_line in source.lines() {
        let line = match raw_line.find("//") {
            Some(pos) => &raw_line[..pos],
            None => raw_line,
        };
        // Statements may not span lines; a fragment cut by a newline shows
        // up as two malformed statements.
        for piece in line.split(';') {
            let piece = piece.trim();
            if !piece.is_empty() {
                statements.push(piece.to_string());
            }
        }
    }

    let mut iter = statements.iter();
    match iter.next() {
        Some(s) if s == "OPENQASM 2.0" => {}
        Some(s) => {
            return Err(Error::Parse(format!(
                "expected OPENQASM 2.0 header, got {s:?}"
            )))
        }
        None => return Err(Error::Parse("empty program".into())),
    }

    let mut register: Option<(String, usize)> = None;
    let mut circuit: Option<Circuit> = None;

    for statement in iter {
        if statement == "include \"qelib1.inc\"" {
            continue;
        }
        if let Some(rest) = statement.strip_prefix("qreg ") {
            if register.is_some() {
                return Err(Error::Parse("multiple qreg declarations".into()));
            }
            let (name, size) = parse_register_decl(rest.trim())?;
            if size == 0 || size > MAX_QUBITS {
                return Err(Error::Parse(format!(
                    "register size must be in 1..={MAX_QUBITS}, got {size}"
                )));
            }
            circuit = Some(Circuit::new(size)?);
            register = Some((name, size));
            continue;
        }

        let (mnemonic, args) = match statement.split_once(char::is_whitespace) {
            Some((m, a)) => (m.trim(), a.trim()),
            None => return Err(Error::Parse(format!("malformed statement {statement:?}"))),
        };
        let (reg_name, _) = register
            .as_ref()
            .ok_or_else(|| Error::Parse("gate before qreg declaration".into()))?;
        let qubits = parse_operands(args, reg_name)?;
        let gate = match (mnemonic, qubits.as_slice()) {
            ("x", [t]) => Gate::X(*t),
            ("h", [t]) => Gate::H(*t),
            ("z", [t]) => Gate::Z(*t),
            ("cx", [c, t]) => Gate::Cx {
                control: *c,
                target: *t,
            },
            ("ccx", [a, b, t]) => Gate::Ccx {
                control_a: *a,
                control_b: *b,
                target: *t,
            },
            ("x" | "h" | "z" | "cx" | "ccx", _) => {
                return Err(Error::Parse(format!(
                    "wrong operand count for {mnemonic} in {statement:?}"
                )))
            }
            _ => return Err(Error::Parse(format!("unsupported statement {statement:?}"))),
        };
        circuit
            .as_mut()
            .expect("register implies circuit")
            .push(gate)
            .map_err(|e| Error::Parse(format!("in {statement:?}: {e}")))?;
    }

    circuit.ok_or_else(|| Error::Parse("missing qreg declaration".into()))
}

/// Parses `name[size]` from a qreg declaration.
fn parse_register_decl(text: &str) -> Result<(String, usize)> {
    let open = text
        .find('[')
        .ok_or_else(|| Error::Parse(format!("malformed qreg {text:?}")))?;
    let close = text
        .rfind(']')
        .filter(|&c| c == text.len() - 1 && c > open)
        .ok_or_else(|| Error::Parse(format!("malformed qreg {text:?}")))?;
    let name = text[..open].trim();
    if name.is_empty() || !name.chars().all(|c| c.is_ascii_alphanumeric() || c == '_') {
        return Err(Error::Parse(format!("bad register name {name:?}")));
    }
    let size: usize = text[open + 1..close]
        .trim()
        .parse()
        .map_err(|_| Error::Parse(format!("bad register size in {text:?}")))?;
    Ok((name.to_string(), size))
}

/// Parses a comma-separated list of `reg[index]` operands.
fn parse_operands(args: &str, register: &str) -> Result<Vec<usize>> {
    args.split(',')
        .map(|operand| {
            let operand = operand.trim();
            let open = operand
                .find('[')
                .ok_or_else(|| Error::Parse(format!("malformed operand {operand:?}")))?;
            let close = operand
                .rfind(']')
                .filter(|&c| c == operand.len() - 1 && c > open)
                .ok_or_else(|| Error::Parse(format!("malformed operand {operand:?}")))?;
            let name = operand[..open].trim();
            if name != register {
                return Err(Error::Parse(format!(
                    "unknown register {name:?} in operand {operand:?}"
                )));
            }
            operand[open + 1..close]
                .trim()
                .parse::<usize>()
                .map_err(|_| Error::Parse(format!("bad qubit index in {operand:?}")))
        })
        .collect()
}
