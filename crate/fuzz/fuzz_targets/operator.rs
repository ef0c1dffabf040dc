#![no_main]

use libfuzzer_sys::fuzz_target;
use twistlab::hopf::twistiform::Operator;

fuzz_target!(|data: &[u8]| {
    if let Ok(s) = std::str::from_utf8(data) {
        if let Ok(x) = s.parse::<Operator>() {
            let again: Operator = x.to_string().parse().expect("display output parses");
            assert_eq!(again, x);
        }
    }
});
