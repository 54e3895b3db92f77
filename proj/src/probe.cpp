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

#include "sdx/probe.hpp"

namespace sdx {

std::string PacketProbe::ToString() const {
  return src_host + " " + src_ip.ToString() + " -> " + dst_ip.ToString() +
         ":" + std::to_string(dstport);
}

DeliveryResult DeliveryResult::Delivered(std::string host,
                                         std::string participant, int port) {
  DeliveryResult r;
  r.kind = Kind::kDelivered;
  r.host = std::move(host);
  r.participant = std::move(participant);
  r.port = port;
  return r;
}

DeliveryResult DeliveryResult::DroppedNoRoute() {
  DeliveryResult r;
  r.kind = Kind::kDroppedNoRoute;
  return r;
}

DeliveryResult DeliveryResult::DroppedByPolicy(std::string provenance) {
  DeliveryResult r;
  r.kind = Kind::kDroppedByPolicy;
  r.provenance = std::move(provenance);
  return r;
}

DeliveryResult DeliveryResult::DeliveredNoListener(std::string participant,
                                                   int port) {
  DeliveryResult r;
  r.kind = Kind::kDeliveredNoListener;
  r.participant = std::move(participant);
  r.port = port;
  return r;
}

std::string DeliveryResult::ToString() const {
  switch (kind) {
    case Kind::kDelivered:
      return "delivered(" + host + ", port " + std::to_string(port) + ")";
    case Kind::kDroppedNoRoute:
      return "dropped(no route)";
    case Kind::kDroppedByPolicy:
      return "dropped(policy: " + provenance + ")";
    case Kind::kDeliveredNoListener:
      return "delivered-no-listener(" + participant + ", port " +
             std::to_string(port) + ")";
  }
  return "?";
}

}  // namespace sdx
