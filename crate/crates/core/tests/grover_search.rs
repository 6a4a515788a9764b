//! End-to-end searches: the 10-qubit run over the encoded image register,
//! amplitude amplification on the NEQR state, agreement between the modes
//! and the closed-form success probability.

mod common;

use common::random_circuit;
use neqr_grover::{
    apply_circuit, bitstring, build_bitstring_oracle, build_diffuser_about, build_diffuser_uniform,
    classical_scan, encode_neqr, iteration_count, prepare_state, run_search,
    run_semiclassical_search, success_probability, Circuit, Gate, GrayImage, SearchMode,
    StateVector, ThresholdConfig,
};
use num_complex::Complex64;

/// 2x2 test image with dark values 0, 20 and 40; the bright 255 sits at
/// (0,1) so the dark pixels land at (0,0), (1,0) and (1,1).
fn dark_corner_image() -> GrayImage {
    GrayImage::new(2, vec![0, 20, 255, 40]).unwrap()
}

fn threshold_100() -> ThresholdConfig {
    ThresholdConfig::new(100).unwrap()
}

#[test]
fn ten_qubit_search_amplifies_the_three_dark_pixels() {
    let result = run_search(
        &dark_corner_image(),
        &threshold_100(),
        SearchMode::Paper,
        4096,
        1,
    )
    .unwrap();

    assert_eq!(result.plan.search_space_size, 1024);
    assert_eq!(result.plan.marked_count, 3);
    assert_eq!(result.plan.iterations, 14);
    assert_eq!(result.oracle_invocations, 14);

    let top: Vec<(usize, usize, u8)> = result.outcomes[..3]
        .iter()
        .map(|o| (o.x, o.y, o.intensity))
        .collect();
    assert!(top.contains(&(0, 0, 0)));
    assert!(top.contains(&(1, 0, 20)));
    assert!(top.contains(&(1, 1, 40)));
    for outcome in &result.outcomes[..3] {
        assert!(
            (outcome.exact_probability - 1.0 / 3.0).abs() < 0.01,
            "probability {}",
            outcome.exact_probability
        );
        assert!(outcome.dark);
    }

    assert!(result.total_dark_probability > 0.999);

    // Mass on the three marked states matches the closed form.
    let marked_mass: f64 = result.outcomes[..3]
        .iter()
        .map(|o| o.exact_probability)
        .sum();
    let predicted = success_probability(1024, 3, 14).unwrap();
    assert!(
        (marked_mass - predicted).abs() < 1e-9,
        "simulated {marked_mass} vs predicted {predicted}"
    );
}

// Closed-form check against direct simulation for small search spaces.
#[test]
fn uniform_start_marked_mass_matches_closed_form() {
    let cases: [(usize, Vec<usize>); 2] = [(2, vec![3]), (4, vec![2, 11])];
    for (total_qubits, marked_indices) in cases {
        let search_space = 1u64 << total_qubits;
        let marked_count = marked_indices.len() as u64;
        let iterations = iteration_count(search_space, marked_count).unwrap();

        let marked: Vec<String> = marked_indices
            .iter()
            .map(|&i| bitstring(i, total_qubits))
            .collect();
        let oracle = build_bitstring_oracle(total_qubits, &marked).unwrap();
        let diffuser = build_diffuser_uniform(total_qubits).unwrap();
        let mut circuit = Circuit::new(total_qubits).unwrap();
        for q in 0..total_qubits {
            circuit.push(Gate::H(q)).unwrap();
        }
        for _ in 0..iterations {
            circuit.append(&oracle).unwrap();
            circuit.append(&diffuser).unwrap();
        }
        let state = apply_circuit(
            &StateVector::new_basis_state(total_qubits, 0).unwrap(),
            &circuit,
        )
        .unwrap();
        let probabilities = state.probabilities();
        let marked_mass: f64 = marked_indices.iter().map(|&i| probabilities[i]).sum();
        let predicted = success_probability(search_space, marked_count, iterations).unwrap();
        assert!(
            (marked_mass - predicted).abs() < 1e-9,
            "N={search_space} M={marked_count} k={iterations}: {marked_mass} vs {predicted}"
        );
    }
}

#[test]
fn amplitude_mode_agrees_with_closed_form_on_random_images() {
    // Dark fraction a = M/4 determines theta; check the simulated dark mass
    // against sin^2((2k+1) theta) for one and two marked pixels.
    for (pixels, marked) in [
        (vec![10u8, 200, 210, 220], 1u64),
        (vec![10, 20, 210, 220], 2),
    ] {
        let image = GrayImage::new(2, pixels).unwrap();
        let result = run_search(&image, &threshold_100(), SearchMode::Amplitude, 64, 3).unwrap();
        let predicted = success_probability(4, marked, result.plan.iterations).unwrap();
        assert!(
            (result.total_dark_probability - predicted).abs() < 1e-10,
            "M={marked}: {} vs {predicted}",
            result.total_dark_probability
        );
    }
}

// The oracle is diagonal by construction; read its diagonal off the uniform
// state in one application and check the sign pattern over all 1024 states.
#[test]
fn bitstring_oracle_diagonal_has_exactly_three_flips() {
    let image = dark_corner_image();
    let config = threshold_100();
    let marked: Vec<String> = classical_scan(&image, &config)
        .iter()
        .map(|p| {
            let layout = neqr_grover::NeqrLayout::for_side(2).unwrap();
            bitstring(layout.basis_index(p.x, p.y, p.intensity), 10)
        })
        .collect();
    assert_eq!(marked.len(), 3);
    let oracle = build_bitstring_oracle(10, &marked).unwrap();

    let mut prep = Circuit::new(10).unwrap();
    for q in 0..10 {
        prep.push(Gate::H(q)).unwrap();
    }
    let uniform = apply_circuit(&StateVector::new_basis_state(10, 0).unwrap(), &prep).unwrap();
    let after = apply_circuit(&uniform, &oracle).unwrap();

    let weight = 1.0 / 32.0;
    let mut flipped = Vec::new();
    for (index, amplitude) in after.amplitudes().iter().enumerate() {
        assert!(amplitude.im.abs() < 1e-14);
        if (amplitude.re + weight).abs() < 1e-12 {
            flipped.push(bitstring(index, 10));
        } else {
            assert!(
                (amplitude.re - weight).abs() < 1e-12,
                "index {index} has amplitude {amplitude}"
            );
        }
    }
    let mut expected = marked.clone();
    expected.sort();
    assert_eq!(flipped, expected);
}

// On a 4x4 image the search space is the 16 positions; amplitude mode stays
// within the NEQR branches, so the dark mass equals the closed form for
// sin^2 theta = M/16 after the planned iterations.
#[test]
fn four_by_four_amplitude_mode_matches_closed_form() {
    for marked in [1u64, 3] {
        let mut pixels = vec![200u8; 16];
        for (slot, p) in [5usize, 0, 14].iter().zip([10u8, 40, 70]) {
            if (marked == 1 && *slot == 5) || marked == 3 {
                pixels[*slot] = p;
            }
        }
        let image = GrayImage::new(4, pixels).unwrap();
        let result = run_search(&image, &threshold_100(), SearchMode::Amplitude, 256, 5).unwrap();
        assert_eq!(result.plan.search_space_size, 16);
        assert_eq!(result.plan.marked_count, marked);
        assert_eq!(result.plan.iterations, iteration_count(16, marked).unwrap());
        let predicted = success_probability(16, marked, result.plan.iterations).unwrap();
        assert!(
            (result.total_dark_probability - predicted).abs() < 1e-10,
            "M={marked}: {} vs {predicted}",
            result.total_dark_probability
        );
    }
}

#[test]
fn diffuser_about_neqr_preparation_fixes_the_neqr_state() {
    let prepared = encode_neqr(&GrayImage::new(2, vec![0, 255, 65, 40]).unwrap()).unwrap();
    let neqr_state = prepare_state(&prepared);
    let diffuser = build_diffuser_about(prepared.circuit());
    let after = apply_circuit(&neqr_state, &diffuser).unwrap();
    let overlap: Complex64 = neqr_state
        .amplitudes()
        .iter()
        .zip(after.amplitudes())
        .map(|(a, b)| a.conj() * b)
        .sum();
    assert!(
        (overlap.norm() - 1.0).abs() < 1e-10,
        "overlap magnitude {}",
        overlap.norm()
    );
}

#[test]
fn diffuser_about_random_preparations_fixes_the_prepared_state() {
    for seed in 0..20u64 {
        let preparation = random_circuit(4, 12, 9000 + seed);
        let prepared_state =
            apply_circuit(&StateVector::new_basis_state(4, 0).unwrap(), &preparation).unwrap();
        let diffuser = build_diffuser_about(&preparation);
        let after = apply_circuit(&prepared_state, &diffuser).unwrap();
        let overlap: Complex64 = prepared_state
            .amplitudes()
            .iter()
            .zip(after.amplitudes())
            .map(|(a, b)| a.conj() * b)
            .sum();
        assert!(
            (overlap.norm() - 1.0).abs() < 1e-10,
            "seed {seed}: overlap magnitude {}",
            overlap.norm()
        );
    }
}

// The three routes agree on which pixels are dark: classical scan,
// semiclassical per-pixel runs, and the top-M outcomes of the paper mode.
#[test]
fn all_modes_agree_on_the_dark_set() {
    let images = [
        vec![30u8, 60, 80, 200],
        vec![200, 30, 60, 80],
        vec![0, 20, 255, 40],
        vec![99, 100, 101, 0],
        vec![1, 2, 3, 4],
    ];
    let config = threshold_100();
    for pixels in images {
        let image = GrayImage::new(2, pixels.clone()).unwrap();
        let scanned: std::collections::BTreeSet<(usize, usize)> = classical_scan(&image, &config)
            .iter()
            .map(|p| (p.x, p.y))
            .collect();

        let semiclassical: std::collections::BTreeSet<(usize, usize)> =
            run_semiclassical_search(&image, &config, 17)
                .unwrap()
                .iter()
                .map(|p| (p.x, p.y))
                .collect();
        assert_eq!(semiclassical, scanned, "semiclassical on {pixels:?}");

        let result = run_search(&image, &config, SearchMode::Paper, 2048, 17).unwrap();
        let top_m: std::collections::BTreeSet<(usize, usize)> = result.outcomes[..scanned.len()]
            .iter()
            .map(|o| (o.x, o.y))
            .collect();
        assert_eq!(top_m, scanned, "paper mode on {pixels:?}");
    }
}

#[test]
fn four_by_four_paper_mode_finds_scanned_pixels() {
    let mut pixels = vec![200u8; 16];
    pixels[3] = 12;
    pixels[9] = 70;
    let image = GrayImage::new(4, pixels).unwrap();
    let config = threshold_100();
    let result = run_search(&image, &config, SearchMode::Paper, 2048, 23).unwrap();
    assert_eq!(result.plan.search_space_size, 4096);
    assert_eq!(result.plan.marked_count, 2);

    let scanned: std::collections::BTreeSet<(usize, usize, u8)> = classical_scan(&image, &config)
        .iter()
        .map(|p| (p.x, p.y, p.intensity))
        .collect();
    let top: std::collections::BTreeSet<(usize, usize, u8)> = result.outcomes[..2]
        .iter()
        .map(|o| (o.x, o.y, o.intensity))
        .collect();
    assert_eq!(top, scanned);
    assert!(result.total_dark_probability > 0.99);
}

#[test]
fn search_results_are_deterministic_for_a_fixed_seed() {
    let image = dark_corner_image();
    let config = threshold_100();
    let a = run_search(&image, &config, SearchMode::Paper, 512, 99).unwrap();
    let b = run_search(&image, &config, SearchMode::Paper, 512, 99).unwrap();
    assert_eq!(a, b);
    let c = run_search(&image, &config, SearchMode::Paper, 512, 100).unwrap();
    assert_eq!(a.plan, c.plan);
    assert_eq!(
        a.outcomes.iter().map(|o| &o.bitstring).collect::<Vec<_>>()[..3],
        c.outcomes.iter().map(|o| &o.bitstring).collect::<Vec<_>>()[..3]
    );
}

#[test]
fn semiclassical_runs_reproduce_every_bright_pixel_permutation() {
    // Same intensity multiset, the bright pixel rotated through all four
    // positions.
    let config = threshold_100();
    for bright_at in 0..4usize {
        let mut pixels = vec![0u8; 4];
        let dark_values = [30u8, 60, 80];
        let mut next_dark = 0;
        for (i, p) in pixels.iter_mut().enumerate() {
            if i == bright_at {
                *p = 200;
            } else {
                *p = dark_values[next_dark];
                next_dark += 1;
            }
        }
        let image = GrayImage::new(2, pixels).unwrap();
        let found = run_semiclassical_search(&image, &config, 31).unwrap();
        assert_eq!(found.len(), 3);
        let expected = classical_scan(&image, &config);
        assert_eq!(found, expected, "bright pixel at index {bright_at}");
    }
}
