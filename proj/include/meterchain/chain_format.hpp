#pragma once

#include <string>
#include <string_view>

#include "meterchain/consensus_chain.hpp"

namespace meterchain {

// Flat text ledger format, one line per record:
//   chain group=<id> blocks=<n>
//   block slot=<n> prev=<hex32> root=<hex32> miner=<hex> sum=<int> count=<int>
//   tx share=<int> slot=<n> pk=<hex> sig=<hex>
// Each block line is followed by exactly `count` tx lines. Every line ends
// with '\n'. Integers and hex strings are canonical (lowercase hex, minimal
// signature magnitude, no leading zeros), and the parser rejects anything
// non-canonical, so serialize(parse(text)) == text byte for byte.
std::string serialize_chain(const Chain& chain);

// Throws ParseError (with line number). Does not validate: run
// validate_chain on the result.
Chain parse_chain(std::string_view text);

}  // namespace meterchain
