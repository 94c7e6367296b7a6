#pragma once

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "nsb/common/crypto.h"
#include "nsb/contracts/slice_request.h"
#include "nsb/contracts/transfer.h"
#include "nsb/ledger/types.h"

namespace nsb::contracts {

inline constexpr std::string_view kRegistryContract = "resource_registry";
inline constexpr std::string_view kOpeningContract = "opening_allocation";

// Registry writes holding r[i] units of type i in the IB pool. Throws
// std::invalid_argument on an empty vector or a non-positive entry.
std::vector<ledger::WriteEntry> init_registry(const std::vector<std::int64_t>& r);

// Genesis block for `channel`: a single IB-signed transaction initialising the
// registry. Hash and height are filled in by Ledger::bootstrap.
ledger::Block make_genesis(const KeyPair& ib_key, const std::string& channel,
                           const std::vector<std::int64_t>& r, SimTime at = 0);

// Moves the opening allocations out of the registry in one step: reads every
// registry key and writes the pool remainder plus each tenant's holding.
// Throws std::invalid_argument if the pool cannot cover the allocations.
ContractEffect opening_effect(const ledger::WorldState& snapshot,
                              const std::map<TenantId, SliceVector>& allocations);

ledger::Payload encode_opening(const std::map<TenantId, SliceVector>& allocations);

}  // namespace nsb::contracts
