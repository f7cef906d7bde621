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

#ifndef DPD_STREAM_IO_H_
#define DPD_STREAM_IO_H_

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>

#include "dpd/stream.h"

namespace dpd {

// Malformed stream file; line is 1-based.
class ParseError : public std::runtime_error {
 public:
  ParseError(uint64_t line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}
  uint64_t line() const { return line_; }

 private:
  uint64_t line_;
};

// Text format:
//   # T=<int> U=<int>     optional header
//   +<id> | -<id> | .     one update per line
struct StreamFile {
  Stream updates;
  std::optional<uint64_t> T;
  std::optional<uint64_t> U;
};

StreamFile ReadStreamFile(std::istream& in);
StreamFile ReadStreamFile(const std::string& path);

void WriteStreamFile(std::ostream& out, const Stream& stream, uint64_t universe);

}  // namespace dpd

#endif  // DPD_STREAM_IO_H_
