// Copyright 2026 The choikit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "choi/channel_io.hpp"

#include <gtest/gtest.h>

#include <string>

#include "choi/builtin_channels.hpp"
#include "test_util.hpp"

namespace choi::io {
namespace {

using choi::testing::printed_ad_choi;

const std::string kFixtures = CHOI_FIXTURE_DIR;

void expect_format_error(std::string_view text, const std::string& needle) {
  try {
    parse_channel(text);
    FAIL() << "expected FormatError for: " << text;
  } catch (const FormatError& e) {
    EXPECT_NE(std::string(e.what()).find(needle), std::string::npos) << e.what();
  }
}

TEST(ChannelIo, ReadsAmplitudeDampingFixtures) {
  const Channel kraus = read_channel(kFixtures + "/ad_p036_kraus.json");
  ASSERT_TRUE(std::holds_alternative<KrausRepr>(kraus));
  EXPECT_EQ(std::get<KrausRepr>(kraus).operators(),
            amplitude_damping_kraus(AmplitudeDamping(0.36)).operators());

  const Channel choi = read_channel(kFixtures + "/ad_p036_choi.json");
  ASSERT_TRUE(std::holds_alternative<ChoiMatrix>(choi));
  EXPECT_EQ(std::get<ChoiMatrix>(choi).matrix(), printed_ad_choi(0.36));
  EXPECT_EQ(channel_d_in(choi), 2u);
}

TEST(ChannelIo, SerializeParseIsValueIdentical) {
  for (std::uint64_t s = 0; s < 20; ++s) {
    const std::size_t d_in = 2 + s % 2, d_out = 1 + s % 3;
    const ChoiMatrix x = random_cptp_choi(d_in, d_out, d_in * d_out, RngSeed{s});
    const std::string text = serialize_channel(x);
    const Channel back = parse_channel(text);
    EXPECT_EQ(std::get<ChoiMatrix>(back).matrix(), x.matrix());
    EXPECT_EQ(serialize_channel(back), text);

    const KrausRepr k = random_cptp_kraus(2, 3, 2, RngSeed{s});
    EXPECT_EQ(std::get<KrausRepr>(parse_channel(serialize_channel(k))).operators(), k.operators());
  }
}

TEST(ChannelIo, StateRoundTrip) {
  const DensityMatrix rho = random_density_matrix(3, RngSeed{4});
  EXPECT_EQ(parse_state(serialize_state(rho.matrix())).matrix(), rho.matrix());
  const DensityMatrix plus = parse_state(read_text(kFixtures + "/state_plus.json"));
  EXPECT_EQ(plus.matrix(), (Matrix{{0.5, 0.5}, {0.5, 0.5}}));
}

TEST(ChannelIo, Diagnostics) {
  expect_format_error(read_text(kFixtures + "/truncated.json"), "line");
  expect_format_error(R"({"d_in": 1, "d_out": 1, "matrix": [[[1, 0]]]})", "kind");
  expect_format_error(R"({"kind": "superop", "d_in": 1, "d_out": 1})", "kind");
  expect_format_error(R"({"kind": "choi", "d_in": 0, "d_out": 1, "matrix": [[[1, 0]]]})", "d_in");
  expect_format_error(R"({"kind": "choi", "d_in": 1, "d_out": 2, "matrix": [[[1, 0]]]})",
                      "expected 2x2");
  expect_format_error(R"({"kind": "choi", "d_in": 1, "d_out": 1, "matrix": [[[1]]]})",
                      "matrix[0][0]");
  expect_format_error(R"({"kind": "choi", "d_in": 1, "d_out": 1, "matrix": [[["a", 0]]]})",
                      "matrix[0][0][0]");
  expect_format_error(R"({"kind": "choi", "d_in": 1, "d_out": 2,
                          "matrix": [[[1, 0], [1, 0]], [[0, 0]]]})",
                      "matrix[1]");
  expect_format_error(R"({"kind": "choi", "d_in": 1, "d_out": 2,
                          "matrix": [[[1, 0], [1, 0]], [[0, 0], [1, 0]]]})",
                      "not Hermitian");
  expect_format_error(R"({"kind": "kraus", "d_in": 2, "d_out": 1, "operators": []})",
                      "operators");
  expect_format_error(R"({"kind": "kraus", "d_in": 2, "d_out": 1,
                          "operators": [[[[1, 0], [0, 0]]], [[[1, 0]]]]})",
                      "operators[1]");
}

TEST(ChannelIo, StateDiagnostics) {
  EXPECT_THROW(parse_state(R"({"d": 2, "matrix": [[[1, 0], [0, 0]], [[0, 0], [1, 0]]]})"),
               FormatError);
  EXPECT_THROW(parse_state(R"({"d": 1, "matrix": [[[1, 0], [0, 0]]]})"), FormatError);
  // Tolerance is configurable.
  const std::string nearly = R"({"d": 1, "matrix": [[[1.000001, 0]]]})";
  EXPECT_THROW(parse_state(nearly), FormatError);
  EXPECT_NO_THROW(parse_state(nearly, 1e-5));
}

TEST(ChannelIo, MatrixDocument) {
  EXPECT_EQ(parse_matrix_document(read_text(kFixtures + "/objective_identity.json")),
            kraus_to_choi(identity_channel(2)).matrix());
  EXPECT_THROW(parse_matrix_document("{}"), FormatError);
}

}  // namespace
}  // namespace choi::io
