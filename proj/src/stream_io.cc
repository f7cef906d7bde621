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

#include "dpd/stream_io.h"

#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <string_view>

namespace dpd {
namespace {

std::optional<uint64_t> ParseUint(std::string_view s) {
  if (s.empty()) return std::nullopt;
  uint64_t v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) return std::nullopt;
  return v;
}

bool ParseHeader(std::string_view line, StreamFile& f) {
  constexpr std::string_view kT = "# T=";
  if (!line.starts_with(kT)) return false;
  line.remove_prefix(kT.size());
  const size_t sp = line.find(" U=");
  if (sp == std::string_view::npos) return false;
  auto T = ParseUint(line.substr(0, sp));
  auto U = ParseUint(line.substr(sp + 3));
  if (!T || !U) return false;
  f.T = T;
  f.U = U;
  return true;
}

}  // namespace

StreamFile ReadStreamFile(std::istream& in) {
  StreamFile f;
  std::string raw;
  uint64_t lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    std::string_view line = raw;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (lineno == 1 && line.starts_with("#")) {
      if (!ParseHeader(line, f))
        throw ParseError(lineno, "malformed header, expected '# T=<int> U=<int>'");
      continue;
    }
    if (line == ".") {
      f.updates.push_back(StreamUpdate::Blank());
      continue;
    }
    if (line.size() < 2 || (line[0] != '+' && line[0] != '-'))
      throw ParseError(lineno, "malformed update '" + std::string(line) + "'");
    auto id = ParseUint(line.substr(1));
    if (!id) throw ParseError(lineno, "malformed element id '" + std::string(line) + "'");
    if (f.U && *id >= *f.U)
      throw ParseError(lineno, "element id " + std::to_string(*id) + " >= U=" +
                                   std::to_string(*f.U));
    f.updates.push_back(line[0] == '+' ? StreamUpdate::Insert(*id)
                                       : StreamUpdate::Delete(*id));
  }
  if (f.T && *f.T != f.updates.size())
    throw ParseError(lineno, "header declares T=" + std::to_string(*f.T) + " but file has " +
                                 std::to_string(f.updates.size()) + " updates");
  return f;
}

StreamFile ReadStreamFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open stream file " + path);
  return ReadStreamFile(in);
}

void WriteStreamFile(std::ostream& out, const Stream& stream, uint64_t universe) {
  out << "# T=" << stream.size() << " U=" << universe << '\n';
  for (const auto& x : stream) {
    switch (x.kind) {
      case UpdateKind::kBlank: out << ".\n"; break;
      case UpdateKind::kInsert: out << '+' << x.element << '\n'; break;
      case UpdateKind::kDelete: out << '-' << x.element << '\n'; break;
    }
  }
}

}  // namespace dpd
