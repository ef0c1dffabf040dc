#![no_main]

use libfuzzer_sys::fuzz_target;
use twistlab::io::{from_json_str, to_json_string};
use twistlab::Twist;

fuzz_target!(|data: &[u8]| {
    if let Ok(s) = std::str::from_utf8(data) {
        if let Ok(t) = from_json_str::<Twist>(s) {
            let out = to_json_string(&t);
            let again: Twist = from_json_str(&out).expect("canonical JSON parses");
            assert_eq!(again, t);
            assert_eq!(to_json_string(&again), out);
        }
    }
});
