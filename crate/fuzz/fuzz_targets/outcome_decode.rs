#![no_main]

use libfuzzer_sys::fuzz_target;
use neqr_grover::{bitstring, decode_outcome, NeqrLayout};

fuzz_target!(|data: &[u8]| {
    let Some((&selector, rest)) = data.split_first() else {
        return;
    };
    let layout = match selector % 4 {
        0 => NeqrLayout::for_side(2),
        1 => NeqrLayout::for_side(4),
        2 => NeqrLayout::with_intensity_bits(1, 4),
        _ => NeqrLayout::with_intensity_bits(2, 8),
    }
    .expect("fixed layouts are valid");
    let Ok(text) = std::str::from_utf8(rest) else {
        return;
    };
    // Must never panic; a successful decode must re-encode to the same bits.
    if let Ok((x, y, intensity)) = decode_outcome(text, &layout) {
        let index = layout.basis_index(x, y, intensity);
        assert_eq!(bitstring(index, layout.total_qubits()), text);
    }
});
