#![no_main]

use epolar_cli::sweep::DeltaPolicy;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(policy) = text.parse::<DeltaPolicy>() {
        if let DeltaPolicy::Fixed(d) = policy {
            assert!((0.0..=1.0).contains(&d));
        }
        assert_eq!(policy.to_string().parse::<DeltaPolicy>().unwrap(), policy);
    }
});
