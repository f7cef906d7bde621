// Copyright 2026 The dpd Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef DPD_STREAM_H_
#define DPD_STREAM_H_

#include <cstdint>
#include <vector>

namespace dpd {

using ElementId = uint64_t;

enum class UpdateKind : uint8_t { kBlank, kInsert, kDelete };

// One turnstile event: +u, -u, or blank.
struct StreamUpdate {
  UpdateKind kind = UpdateKind::kBlank;
  ElementId element = 0;

  static constexpr StreamUpdate Blank() { return {}; }
  static constexpr StreamUpdate Insert(ElementId e) {
    return {UpdateKind::kInsert, e};
  }
  static constexpr StreamUpdate Delete(ElementId e) {
    return {UpdateKind::kDelete, e};
  }

  bool is_blank() const { return kind == UpdateKind::kBlank; }
  int sign() const {
    return kind == UpdateKind::kInsert ? 1 : kind == UpdateKind::kDelete ? -1 : 0;
  }

  friend bool operator==(const StreamUpdate& a, const StreamUpdate& b) {
    return a.kind == b.kind && (a.kind == UpdateKind::kBlank || a.element == b.element);
  }
};

using Stream = std::vector<StreamUpdate>;

}  // namespace dpd

#endif  // DPD_STREAM_H_
