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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "sdx/net.hpp"

using namespace sdx;

TEST_CASE("ipv4 parse and format round-trip") {
  auto addr = Ipv4Addr::Parse("172.0.0.1");
  REQUIRE(addr.has_value());
  CHECK(addr->value() == 0xac000001u);
  CHECK(addr->ToString() == "172.0.0.1");

  CHECK(Ipv4Addr::Parse("") == std::nullopt);
  CHECK(Ipv4Addr::Parse("1.2.3") == std::nullopt);
  CHECK(Ipv4Addr::Parse("256.0.0.1") == std::nullopt);
  CHECK(Ipv4Addr::Parse("1.2.3.4.5") == std::nullopt);
  CHECK(Ipv4Addr::Parse("1.2.3.4 ") == std::nullopt);
}

TEST_CASE("ipv4 ordering follows the 32-bit integer value") {
  CHECK(Ipv4Addr::MustParse("9.255.255.255") <
        Ipv4Addr::MustParse("10.0.0.1"));
  CHECK(Ipv4Addr::MustParse("172.0.0.2") < Ipv4Addr::MustParse("172.0.0.3"));
}

TEST_CASE("cidr parse, mask, containment") {
  auto prefix = CidrPrefix::Parse("140.0.0.0/24");
  REQUIRE(prefix.has_value());
  CHECK(prefix->ToString() == "140.0.0.0/24");
  CHECK(prefix->NetmaskString() == "255.255.255.0");
  CHECK(prefix->Contains(Ipv4Addr::MustParse("140.0.0.99")));
  CHECK(!prefix->Contains(Ipv4Addr::MustParse("140.0.1.0")));

  // Host bits are masked away.
  CHECK(CidrPrefix::MustParse("140.0.0.77/24").ToString() == "140.0.0.0/24");

  // Bare address means /32.
  CHECK(CidrPrefix::MustParse("1.2.3.4").length() == 32);

  CHECK(CidrPrefix::Parse("1.2.3.4/33") == std::nullopt);
  CHECK(CidrPrefix::Parse("1.2.3/24") == std::nullopt);
}

TEST_CASE("cidr overlap is containment of the longer by the shorter") {
  CidrPrefix wide = CidrPrefix::MustParse("10.0.0.0/8");
  CidrPrefix narrow = CidrPrefix::MustParse("10.1.0.0/16");
  CidrPrefix other = CidrPrefix::MustParse("11.0.0.0/8");
  CHECK(wide.Overlaps(narrow));
  CHECK(narrow.Overlaps(wide));
  CHECK(!narrow.Overlaps(other));
  CHECK(wide.Overlaps(wide));
}

TEST_CASE("representative address is network + 1") {
  CHECK(CidrPrefix::MustParse("140.0.0.0/24").representative() ==
        Ipv4Addr::MustParse("140.0.0.1"));
  CHECK(CidrPrefix::MustParse("1.2.3.4/32").representative() ==
        Ipv4Addr::MustParse("1.2.3.4"));
}

TEST_CASE("mac parse, format, arithmetic") {
  auto mac = MacAddr::Parse("aa:00:00:00:00:00");
  REQUIRE(mac.has_value());
  CHECK(mac->ToString() == "aa:00:00:00:00:00");
  CHECK((*mac + 4).ToString() == "aa:00:00:00:00:04");
  CHECK((MacAddr::MustParse("00:00:00:00:00:ff") + 1).ToString() ==
        "00:00:00:00:01:00");

  CHECK(MacAddr::Parse("aa:00:00:00:00") == std::nullopt);
  CHECK(MacAddr::Parse("zz:00:00:00:00:00") == std::nullopt);
}
