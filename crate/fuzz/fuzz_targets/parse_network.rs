//! Feed arbitrary bytes to the network-file parser. Accepted inputs must
//! render back to text that reparses to the identical network.

#![no_main]

use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(net) = bnet::parse_network(text) {
        let rendered = net.format();
        let back = bnet::parse_network(&rendered)
            .unwrap_or_else(|e| panic!("rendered network failed to reparse: {e}\n{rendered}"));
        assert_eq!(back, net, "format/parse round trip changed the network");
    }
});
