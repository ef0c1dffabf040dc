#![no_main]

use libfuzzer_sys::fuzz_target;
use twistlab::schroder::OrderedPartition;

fuzz_target!(|data: &[u8]| {
    if let Ok(s) = std::str::from_utf8(data) {
        if let Ok(x) = s.parse::<OrderedPartition>() {
            let again: OrderedPartition = x.to_string().parse().expect("display output parses");
            assert_eq!(again, x);
        }
    }
});
