#![no_main]

use libfuzzer_sys::fuzz_target;
use twistlab::hopf::FormalSum;
use twistlab::io::{from_json_str, to_json_string};
use twistlab::Perm;

fuzz_target!(|data: &[u8]| {
    if let Ok(s) = std::str::from_utf8(data) {
        if let Ok(x) = from_json_str::<FormalSum<Perm>>(s) {
            let again: FormalSum<Perm> = from_json_str(&to_json_string(&x)).expect("canonical JSON parses");
            assert_eq!(again, x);
        }
    }
});
