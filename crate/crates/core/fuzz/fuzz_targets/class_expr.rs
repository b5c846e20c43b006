#![no_main]

use libfuzzer_sys::fuzz_target;

use bidouble::cover;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    let fx = cover::dp1();
    let surface = fx.surface();
    if let Ok(class) = surface.parse_class(text) {
        let printed = surface.format_class(&class);
        assert_eq!(surface.parse_class(&printed).ok(), Some(class));
    }
});
