#![no_main]

use libfuzzer_sys::fuzz_target;
use twistlab::Perm;

fuzz_target!(|data: &[u8]| {
    if let Ok(s) = std::str::from_utf8(data) {
        if let Ok(x) = s.parse::<Perm>() {
            let again: Perm = x.to_string().parse().expect("display output parses");
            assert_eq!(again, x);
        }
    }
});
