#![no_main]

use girth_map::{euler_char, validate, SurfaceMap};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    let Ok(m) = SurfaceMap::parse(text) else { return };
    let printed = m.to_json();
    let again = SurfaceMap::parse(&printed).expect("printed map parses");
    assert_eq!(again.to_json(), printed);
    if let Ok(d) = validate(&m) {
        assert_eq!(euler_char(&m).ok(), Some(d.chi));
    }
});
