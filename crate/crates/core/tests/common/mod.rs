use neqr_grover::{Circuit, Gate};
use rand::rngs::StdRng;
use rand::seq::index::sample;
use rand::{Rng, SeedableRng};

/// Seeded random circuit over the supported gate set.
pub fn random_circuit(qubit_count: usize, gate_count: usize, seed: u64) -> Circuit {
    let mut rng = StdRng::seed_from_u64(seed);
    let mut circuit = Circuit::new(qubit_count).expect("valid qubit count");
    for _ in 0..gate_count {
        let gate = random_gate(&mut rng, qubit_count);
        circuit.push(gate).expect("generated gates are valid");
    }
    circuit
}

pub fn random_gate(rng: &mut StdRng, qubit_count: usize) -> Gate {
    loop {
        let kind = rng.random_range(0..7);
        let needed = match kind {
            0..=2 => 1,
            3 => 2,
            4 => 3,
            5 | 6 => rng.random_range(1..=qubit_count.min(6)),
            _ => unreachable!(),
        };
        if needed > qubit_count {
            continue;
        }
        let picks: Vec<usize> = sample(rng, qubit_count, needed).into_vec();
        return match kind {
            0 => Gate::X(picks[0]),
            1 => Gate::H(picks[0]),
            2 => Gate::Z(picks[0]),
            3 => Gate::Cx {
                control: picks[0],
                target: picks[1],
            },
            4 => Gate::Ccx {
                control_a: picks[0],
                control_b: picks[1],
                target: picks[2],
            },
            5 => {
                let (target, controls) = picks.split_last().unwrap();
                Gate::Mcx {
                    controls: controls.to_vec(),
                    target: *target,
                }
            }
            6 => Gate::Mcz { qubits: picks },
            _ => unreachable!(),
        };
    }
}
