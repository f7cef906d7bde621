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

#include <sstream>

#include <gtest/gtest.h>

namespace dpd {
namespace {

StreamFile Parse(const std::string& text) {
  std::istringstream in(text);
  return ReadStreamFile(in);
}

uint64_t FailingLine(const std::string& text) {
  try {
    Parse(text);
  } catch (const ParseError& e) {
    return e.line();
  }
  return 0;
}

TEST(StreamIo, ParsesHeaderAndBody) {
  const StreamFile f = Parse("# T=3 U=10\n+5\n.\n-5\n");
  EXPECT_EQ(f.T, 3u);
  EXPECT_EQ(f.U, 10u);
  EXPECT_EQ(f.updates, (Stream{StreamUpdate::Insert(5), StreamUpdate::Blank(),
                               StreamUpdate::Delete(5)}));
}

TEST(StreamIo, HeaderIsOptionalAndCrlfTolerated) {
  const StreamFile f = Parse("+1\r\n+2\r\n");
  EXPECT_FALSE(f.T.has_value());
  EXPECT_EQ(f.updates.size(), 2u);
}

TEST(StreamIo, ErrorsCarryLineNumbers) {
  EXPECT_EQ(FailingLine("# T=2 U=4\n+1\nx\n"), 3u);
  EXPECT_EQ(FailingLine("+1\n+\n"), 2u);
  EXPECT_EQ(FailingLine("+1\n+abc\n"), 2u);
  EXPECT_EQ(FailingLine("# T=1 U=4\n+4\n"), 2u);
  EXPECT_EQ(FailingLine("# T=x\n"), 1u);
  EXPECT_NE(FailingLine("# T=3 U=4\n+1\n"), 0u);
  EXPECT_EQ(FailingLine("+1\n# T=1 U=4\n"), 2u);
}

TEST(StreamIo, RoundTrip) {
  const Stream s = {StreamUpdate::Insert(7), StreamUpdate::Blank(),
                    StreamUpdate::Delete(7), StreamUpdate::Insert(0)};
  std::ostringstream out;
  WriteStreamFile(out, s, 8);
  EXPECT_EQ(out.str(), "# T=4 U=8\n+7\n.\n-7\n+0\n");
  const StreamFile f = Parse(out.str());
  EXPECT_EQ(f.updates, s);
  EXPECT_EQ(f.U, 8u);
}

TEST(StreamIo, MissingFile) {
  EXPECT_THROW(ReadStreamFile("/nonexistent/stream.txt"), std::runtime_error);
}

}  // namespace
}  // namespace dpd
