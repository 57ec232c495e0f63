#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "meterchain/consensus_chain.hpp"
#include "meterchain/crypto_identity.hpp"

namespace meterchain {

// Per-slot prices in integer micro-currency-units per watt-hour. No floating
// point anywhere in billing.
struct TariffSchedule {
  std::map<uint64_t, int64_t> prices;
};

struct BillLine {
  int64_t energy_wh = 0;
  __int128 charge_micro = 0;
};

struct Bill {
  std::string user_id;
  __int128 total_micro = 0;
  std::map<uint64_t, BillLine> per_slot;
};

// Replays a validated chain against the tariff through the confidential
// pseudonym registry: E_t = sum of the user's shares at slot t, charge =
// E_t * p_t, total = sum of charges, all exact integer arithmetic. A user's
// bill is the same no matter how their readings were split. Negative E_t
// (possible only for dishonest splits) is reported, not rejected.
// Throws RegistryGapError for a chain pseudonym missing from the registry
// and TariffError for a chain slot without a price.
std::vector<Bill> compute_bills(const Chain& chain, const TariffSchedule& tariff,
                                std::span<const RegistryEntry> registry);

// CSV: header "slot,price_micro_per_wh", one row per slot.
TariffSchedule parse_tariff_csv(std::string_view text);
std::string serialize_tariff_csv(const TariffSchedule& tariff);

// CSV: header "user_id,pseudonym", one row per pseudonym (hex), rows of one
// user contiguous. Consumed by the billing engine; never shared with group
// members.
std::vector<RegistryEntry> parse_registry_csv(std::string_view text);
std::string serialize_registry_csv(std::span<const RegistryEntry> registry);

// CSV: header "user_id,slot,energy_wh,charge_micro", one row per user and
// slot, then a final "TOTAL" row over all users.
std::string serialize_bills_csv(std::span<const Bill> bills);

}  // namespace meterchain
