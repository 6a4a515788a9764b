#![no_main]

use libfuzzer_sys::fuzz_target;
use neqr_grover::{parse_pgm, write_pgm, PgmFormat};

fuzz_target!(|data: &[u8]| {
    // Must never panic or overallocate on arbitrary bytes; anything that
    // parses must survive a serialize and reparse round trip.
    if let Ok(image) = parse_pgm(data) {
        for format in [PgmFormat::Ascii, PgmFormat::Binary] {
            let bytes = write_pgm(&image, format);
            let reparsed = parse_pgm(&bytes).expect("writer output parses");
            assert_eq!(reparsed, image);
        }
    }
});
