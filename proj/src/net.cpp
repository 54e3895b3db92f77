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

#include "sdx/net.hpp"

#include <charconv>
#include <cstdio>
#include <cstdlib>

namespace sdx {
namespace {

// Parses a decimal integer in [0, max]; advances `text` past what it ate.
std::optional<uint32_t> EatNumber(std::string_view& text, uint32_t max) {
  uint32_t out = 0;
  const auto* begin = text.data();
  const auto* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(begin, end, out);
  if (ec != std::errc() || ptr == begin || out > max) return std::nullopt;
  text.remove_prefix(static_cast<size_t>(ptr - begin));
  return out;
}

bool EatChar(std::string_view& text, char c) {
  if (text.empty() || text.front() != c) return false;
  text.remove_prefix(1);
  return true;
}

}  // namespace

std::optional<Ipv4Addr> Ipv4Addr::Parse(std::string_view text) {
  uint32_t value = 0;
  for (int i = 0; i < 4; ++i) {
    if (i > 0 && !EatChar(text, '.')) return std::nullopt;
    auto octet = EatNumber(text, 255);
    if (!octet) return std::nullopt;
    value = (value << 8) | *octet;
  }
  if (!text.empty()) return std::nullopt;
  return Ipv4Addr(value);
}

Ipv4Addr Ipv4Addr::MustParse(std::string_view text) {
  auto parsed = Parse(text);
  if (!parsed) {
    std::fprintf(stderr, "bad IPv4 literal: %.*s\n",
                 static_cast<int>(text.size()), text.data());
    std::abort();
  }
  return *parsed;
}

std::string Ipv4Addr::ToString() const {
  char buf[16];
  std::snprintf(buf, sizeof(buf), "%u.%u.%u.%u", (value_ >> 24) & 0xff,
                (value_ >> 16) & 0xff, (value_ >> 8) & 0xff, value_ & 0xff);
  return buf;
}

CidrPrefix::CidrPrefix(Ipv4Addr network, uint8_t length) : length_(length) {
  network_ = Ipv4Addr(network.value() & CidrPrefix::mask());
}

uint32_t CidrPrefix::mask() const {
  if (length_ == 0) return 0;
  return ~uint32_t{0} << (32 - length_);
}

std::optional<CidrPrefix> CidrPrefix::Parse(std::string_view text) {
  auto slash = text.find('/');
  uint8_t length = 32;
  if (slash != std::string_view::npos) {
    std::string_view len_part = text.substr(slash + 1);
    auto len = EatNumber(len_part, 32);
    if (!len || !len_part.empty()) return std::nullopt;
    length = static_cast<uint8_t>(*len);
    text = text.substr(0, slash);
  }
  auto addr = Ipv4Addr::Parse(text);
  if (!addr) return std::nullopt;
  return CidrPrefix(*addr, length);
}

CidrPrefix CidrPrefix::MustParse(std::string_view text) {
  auto parsed = Parse(text);
  if (!parsed) {
    std::fprintf(stderr, "bad CIDR literal: %.*s\n",
                 static_cast<int>(text.size()), text.data());
    std::abort();
  }
  return *parsed;
}

bool CidrPrefix::Contains(Ipv4Addr addr) const {
  return (addr.value() & mask()) == network_.value();
}

bool CidrPrefix::Overlaps(const CidrPrefix& other) const {
  const CidrPrefix& shorter = length_ <= other.length_ ? *this : other;
  const CidrPrefix& longer = length_ <= other.length_ ? other : *this;
  return shorter.Contains(longer.network());
}

Ipv4Addr CidrPrefix::representative() const {
  if (length_ >= 31) return network_;
  return network_ + 1;
}

std::string CidrPrefix::ToString() const {
  return network_.ToString() + "/" + std::to_string(length_);
}

std::string CidrPrefix::NetmaskString() const {
  return Ipv4Addr(mask()).ToString();
}

MacAddr::MacAddr(const std::array<uint8_t, 6>& octets) : octets_(octets) {}

std::optional<MacAddr> MacAddr::Parse(std::string_view text) {
  std::array<uint8_t, 6> octets{};
  for (int i = 0; i < 6; ++i) {
    if (i > 0 && !EatChar(text, ':')) return std::nullopt;
    if (text.size() < 2) return std::nullopt;
    uint8_t byte = 0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + 2, byte, 16);
    if (ec != std::errc() || ptr != text.data() + 2) return std::nullopt;
    octets[static_cast<size_t>(i)] = byte;
    text.remove_prefix(2);
  }
  if (!text.empty()) return std::nullopt;
  return MacAddr(octets);
}

MacAddr MacAddr::MustParse(std::string_view text) {
  auto parsed = Parse(text);
  if (!parsed) {
    std::fprintf(stderr, "bad MAC literal: %.*s\n",
                 static_cast<int>(text.size()), text.data());
    std::abort();
  }
  return *parsed;
}

uint64_t MacAddr::ToUint64() const {
  uint64_t value = 0;
  for (uint8_t octet : octets_) value = (value << 8) | octet;
  return value;
}

std::string MacAddr::ToString() const {
  char buf[18];
  std::snprintf(buf, sizeof(buf), "%02x:%02x:%02x:%02x:%02x:%02x", octets_[0],
                octets_[1], octets_[2], octets_[3], octets_[4], octets_[5]);
  return buf;
}

MacAddr MacAddr::operator+(uint64_t delta) const {
  uint64_t value = (ToUint64() + delta) & 0xffffffffffffULL;
  std::array<uint8_t, 6> octets{};
  for (int i = 5; i >= 0; --i) {
    octets[static_cast<size_t>(i)] = value & 0xff;
    value >>= 8;
  }
  return MacAddr(octets);
}

}  // namespace sdx
