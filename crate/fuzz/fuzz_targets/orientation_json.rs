#![no_main]

use libfuzzer_sys::fuzz_target;
use twistlab::io::{from_json_str, to_json_string};
use twistlab::recoil::Orientation;

fuzz_target!(|data: &[u8]| {
    if let Ok(s) = std::str::from_utf8(data) {
        if let Ok(o) = from_json_str::<Orientation>(s) {
            let again: Orientation = from_json_str(&to_json_string(&o)).expect("canonical JSON parses");
            assert_eq!(again, o);
        }
    }
});
