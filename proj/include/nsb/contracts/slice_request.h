#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <vector>

#include "nsb/ledger/types.h"
#include "nsb/ledger/world_state.h"

namespace nsb::contracts {

using ledger::ResourceType;
using ledger::TenantId;

// Resource types carried by a slice request.
inline constexpr ResourceType kRadio = 0;
inline constexpr ResourceType kTransport = 1;
inline constexpr ResourceType kCore = 2;
inline constexpr std::size_t kSliceResources = 3;

using SliceVector = std::array<std::int64_t, kSliceResources>;

enum class Direction : std::uint8_t { kAcquire = 0, kRelease = 1 };

// Ψ = {ρ, η, γ}: radio, transport and core-cloud demand as percentages of the
// requester's opening allocation.
struct SliceRequest {
  TenantId requester = 0;
  // nullopt means OPEN (left to the matchmaker); ledger::kRegistryOwner is
  // the IB's own pool.
  std::optional<TenantId> counterparty;
  double rho = 0.0;
  double eta = 0.0;
  double gamma = 0.0;
  Direction direction = Direction::kAcquire;

  std::array<double, kSliceResources> percentages() const { return {rho, eta, gamma}; }
  // All components >= 0 and at least one > 0.
  bool well_formed() const;
};

// General form Ψ = [π_1..π_I | θ_1..θ_I]: per-type demand in units and the
// price offered for each type.
struct GeneralRequest {
  TenantId requester = 0;
  std::vector<std::int64_t> demands;
  std::vector<std::int64_t> prices;

  bool well_formed() const;
};

// A tenant's standing on its channel. `base` is the opening allocation and
// the reference for request percentages; base + target_delta is the holding
// the tenant aims for (negative delta: resources to free, positive: to seek).
struct TenantAccount {
  TenantId id = 0;
  PublicId public_id{};
  SliceVector base{};
  SliceVector target_delta{};

  std::int64_t target(ResourceType r) const { return base[r] + target_delta[r]; }
  bool seeker() const;
  bool freer() const;
};

class UnknownTenant : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class TenantDirectory {
 public:
  void add(TenantAccount account);
  const TenantAccount& at(TenantId id) const;  // throws UnknownTenant
  const TenantAccount* find(TenantId id) const;
  std::size_t size() const { return accounts_.size(); }
  const std::map<TenantId, TenantAccount>& accounts() const { return accounts_; }

 private:
  std::map<TenantId, TenantAccount> accounts_;
};

// Units moved per type: round(percentage / 100 × requester base).
SliceVector request_amounts(const TenantAccount& requester, const SliceRequest& sr);

// What `giver` can hand over of type r: its holding above its target, or the
// whole pool for the registry.
std::int64_t available(const ledger::WorldState& state, const TenantDirectory& dir,
                       TenantId giver, ResourceType r);
// What `receiver` still needs of type r: its target above its holding; the
// registry accepts any amount.
std::int64_t remaining_need(const ledger::WorldState& state, const TenantDirectory& dir,
                            TenantId receiver, ResourceType r);

}  // namespace nsb::contracts
