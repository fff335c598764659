#![no_main]

use girth_interface::DInterface;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    if let Ok(text) = std::str::from_utf8(data) {
        if let Ok(a) = DInterface::parse(text) {
            let again = DInterface::parse(&a.to_string()).expect("printed interface parses");
            assert_eq!(again, a);
        }
    }
});
