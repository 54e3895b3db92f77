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

#ifndef SDX_PROBE_HPP_
#define SDX_PROBE_HPP_

#include <compare>
#include <cstdint>
#include <optional>
#include <string>

#include "sdx/net.hpp"
#include "sdx/policy.hpp"

namespace sdx {

/// A synthetic flow probe: enough of a 5-tuple to exercise routing and
/// policies. `in_port` and `dst_mac` are filled in by the fabric while the
/// probe is in transit.
struct PacketProbe {
  std::string src_host;
  Ipv4Addr src_ip;
  Ipv4Addr dst_ip;
  uint16_t dstport = 0;
  uint16_t srcport = 0;

  std::optional<int> in_port;
  std::optional<MacAddr> dst_mac;

  FlowKeys Keys() const { return {src_ip, dst_ip, srcport, dstport}; }
  std::string ToString() const;
};

/// The fate of a probe. DeliveredNoListener means the fabric forwarded the
/// packet to a port where no host answers on the destination address; it is
/// kept distinct from the drop outcomes so scenario mistakes (a missing host
/// binding) are not misread as policy drops.
struct DeliveryResult {
  enum class Kind {
    kDelivered,
    kDroppedNoRoute,
    kDroppedByPolicy,
    kDeliveredNoListener,
  };

  Kind kind = Kind::kDroppedNoRoute;
  std::string host;         // kDelivered
  std::string participant;  // kDelivered / kDeliveredNoListener: port owner
  int port = -1;            // kDelivered / kDeliveredNoListener
  std::string provenance;   // kDroppedByPolicy: the dropping rule

  static DeliveryResult Delivered(std::string host, std::string participant,
                                  int port);
  static DeliveryResult DroppedNoRoute();
  static DeliveryResult DroppedByPolicy(std::string provenance);
  static DeliveryResult DeliveredNoListener(std::string participant, int port);

  bool IsDrop() const {
    return kind == Kind::kDroppedNoRoute || kind == Kind::kDroppedByPolicy;
  }

  std::string ToString() const;

  friend bool operator==(const DeliveryResult&, const DeliveryResult&) =
      default;
};

}  // namespace sdx

#endif  // SDX_PROBE_HPP_
