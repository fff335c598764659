#![no_main]

use girth_word::Word;
use libfuzzer_sys::fuzz_target;

// The first byte picks the rank; the rest is the word text.
fuzz_target!(|data: &[u8]| {
    let Some((&r, rest)) = data.split_first() else { return };
    let Ok(text) = std::str::from_utf8(rest) else { return };
    let rank = r % 8 + 1;
    if let Ok(w) = Word::parse(rank, text) {
        let again = Word::parse(rank, &w.to_string()).expect("printed word parses");
        assert_eq!(again, w);
        let c = w.cyclic();
        assert_eq!(c.to_word().cyclic(), c);
    }
});
