#pragma once

#include <array>
#include <optional>
#include <string>
#include <string_view>

namespace ddosfc {

enum class AttackClass { kMisuse, kDetector };

enum class Subclass {
  kTCPSYN,
  kTCPRST,
  kTCPACK,
  kProtocol,
  kUDPMisuse,
  kICMP,
  kBandwidth,
  kTotalTraffic,
  kIPFragment,
  kDNSMisuse,
};

inline constexpr std::size_t kSubclassCount = 10;

inline constexpr std::array<Subclass, kSubclassCount> kAllSubclasses = {
    Subclass::kTCPSYN,    Subclass::kTCPRST,    Subclass::kTCPACK,       Subclass::kProtocol,
    Subclass::kUDPMisuse, Subclass::kICMP,      Subclass::kBandwidth,    Subclass::kTotalTraffic,
    Subclass::kIPFragment, Subclass::kDNSMisuse,
};

inline constexpr std::size_t index_of(Subclass s) { return static_cast<std::size_t>(s); }

/// Canonical, space-free name ("TotalTraffic"). Used in every CSV export.
std::string_view canonical_name(Subclass s);

/// Name as it appears in the source export ("Total Traffic", "TCPSYN").
std::string_view export_name(Subclass s);

/// Accepts either spelling; spaces are stripped before matching.
std::optional<Subclass> parse_subclass(std::string_view text);

std::string_view to_string(AttackClass c);
std::optional<AttackClass> parse_attack_class(std::string_view text);

}  // namespace ddosfc
