#![no_main]

use libfuzzer_sys::fuzz_target;
use neqr_grover::{circuit_to_qasm, parse_qasm};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    // Must never panic on arbitrary text. A program that parses contains
    // only primitive gates, so emission adds no ancillas and a reparse must
    // reproduce the circuit exactly.
    if let Ok(circuit) = parse_qasm(text) {
        let emitted = circuit_to_qasm(&circuit);
        let reparsed = parse_qasm(&emitted).expect("emitted text parses");
        assert_eq!(reparsed.qubit_count(), circuit.qubit_count());
        assert_eq!(reparsed.gates(), circuit.gates());
    }
});
