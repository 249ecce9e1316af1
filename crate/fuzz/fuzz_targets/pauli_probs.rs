#![no_main]

use epolar::families::PauliProbs;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(p) = text.parse::<PauliProbs>() {
        let a = p.as_array();
        assert!(a.iter().all(|x| x.is_finite() && *x >= 0.0));
        assert!((a.iter().sum::<f64>() - 1.0).abs() <= PauliProbs::SUM_TOL);
        let _ = epolar::coherent::theorem2_certificate(p, 0.01);
    }
});
