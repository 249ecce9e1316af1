#![no_main]

use epolar::KrausChannel;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(ch) = KrausChannel::from_json(text) {
        // Anything accepted must be a valid channel and survive a round trip.
        assert!(ch.completeness_deviation() <= 1e-10);
        let again = KrausChannel::from_json(&ch.to_json()).expect("round trip");
        assert_eq!(again, ch);
    }
});
