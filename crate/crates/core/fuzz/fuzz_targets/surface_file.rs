#![no_main]

use libfuzzer_sys::fuzz_target;

use bidouble::{surface_file, verify_fixture};

fuzz_target!(|data: &[u8]| {
    if let Ok(file) = surface_file::parse_bytes(data) {
        if let Some(fx) = file.fixture {
            let _ = verify_fixture(&fx);
            let text = surface_file::export(&fx);
            let again = surface_file::parse_str(&text).expect("exported file parses");
            assert_eq!(again.fixture.as_ref(), Some(&fx));
        }
    }
});
