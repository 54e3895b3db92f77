// Copyright 2026 The sdxsim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef SDX_NET_HPP_
#define SDX_NET_HPP_

#include <array>
#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace sdx {

/// IPv4 address held as a host-order 32-bit integer, so "numerically
/// smallest" comparisons (router-id tie breaks, prefix ordering) are the
/// plain integer order of the dotted quad read big-endian.
class Ipv4Addr {
 public:
  constexpr Ipv4Addr() = default;
  constexpr explicit Ipv4Addr(uint32_t value) : value_(value) {}

  static std::optional<Ipv4Addr> Parse(std::string_view text);
  /// Parse that aborts on failure; for literals in code and tests.
  static Ipv4Addr MustParse(std::string_view text);

  constexpr uint32_t value() const { return value_; }
  std::string ToString() const;

  constexpr Ipv4Addr operator+(uint32_t delta) const {
    return Ipv4Addr(value_ + delta);
  }
  friend constexpr auto operator<=>(Ipv4Addr, Ipv4Addr) = default;

 private:
  uint32_t value_ = 0;
};

/// CIDR prefix: masked network address plus prefix length.
class CidrPrefix {
 public:
  constexpr CidrPrefix() = default;
  CidrPrefix(Ipv4Addr network, uint8_t length);

  static std::optional<CidrPrefix> Parse(std::string_view text);
  static CidrPrefix MustParse(std::string_view text);

  Ipv4Addr network() const { return network_; }
  uint8_t length() const { return length_; }
  uint32_t mask() const;
  bool Contains(Ipv4Addr addr) const;
  /// True when the two prefixes cover at least one address in common.
  bool Overlaps(const CidrPrefix& other) const;
  /// Address used when a concrete host inside the prefix is needed
  /// (network address + 1; the network address itself for /31 and /32).
  Ipv4Addr representative() const;
  std::string ToString() const;
  /// Dotted-quad netmask, e.g. "255.255.255.0" for a /24.
  std::string NetmaskString() const;

  friend auto operator<=>(const CidrPrefix&, const CidrPrefix&) = default;

 private:
  Ipv4Addr network_;
  uint8_t length_ = 0;
};

/// 48-bit MAC address.
class MacAddr {
 public:
  constexpr MacAddr() = default;
  explicit MacAddr(const std::array<uint8_t, 6>& octets);

  static std::optional<MacAddr> Parse(std::string_view text);
  static MacAddr MustParse(std::string_view text);

  const std::array<uint8_t, 6>& octets() const { return octets_; }
  uint64_t ToUint64() const;
  /// Lowercase colon-separated form, e.g. "aa:00:00:00:00:01".
  std::string ToString() const;

  MacAddr operator+(uint64_t delta) const;
  friend auto operator<=>(const MacAddr&, const MacAddr&) = default;

 private:
  std::array<uint8_t, 6> octets_ = {0, 0, 0, 0, 0, 0};
};

}  // namespace sdx

#endif  // SDX_NET_HPP_
