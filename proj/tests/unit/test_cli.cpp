/* Copyright 2026 The SeqRank Authors. All Rights Reserved.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "cli_app.hpp"
#include "doctest.h"
#include "seqrank/datamodel/tsv.hpp"
#include "seqrank/models/checkpoint.hpp"

namespace fs = std::filesystem;
using seqrank::cli::kExitOk;
using seqrank::cli::kExitRuntime;
using seqrank::cli::kExitUsage;

namespace {

const std::string kTiny = std::string(SEQRANK_TEST_DATA) + "/tiny.cfg";

struct Run {
  int code;
  std::string out, err;
};

Run cli(std::vector<std::string> args) {
  args.insert(args.begin(), "seqrank");
  std::ostringstream out, err;
  const int code = seqrank::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

fs::path scratch(const std::string& name) {
  const auto dir = fs::temp_directory_path() / "seqrank_cli_test";
  fs::create_directories(dir);
  return dir / name;
}

std::size_t line_count(const std::string& text) {
  std::size_t n = 0;
  for (char c : text) n += c == '\n';
  return n;
}

}  // namespace

TEST_CASE("usage errors exit 1") {
  const auto none = cli({});
  CHECK(none.code == kExitUsage);
  CHECK(cli({"frobnicate"}).code == kExitUsage);
  const auto train = cli({"train"});
  CHECK(train.code == kExitUsage);
  CHECK(train.err.find("--config") != std::string::npos);
  CHECK(cli({"train", "--config", kTiny, "--out", "x", "--bogus"}).code == kExitUsage);
  CHECK(cli({"eval", "--checkpoint", kTiny}).code == kExitUsage);
  CHECK(cli({"--help"}).code == kExitOk);
}

TEST_CASE("runtime errors exit 2") {
  const auto bad = scratch("bad.cfg");
  std::ofstream(bad) << "gen.users = -3\n";
  CHECK(cli({"gen-data", "--config", bad.string(), "--out", scratch("x.tsv").string()}).code == kExitRuntime);
  std::ofstream(bad) << "train.unknown = 1\n";
  CHECK(cli({"pack-stats", "--config", bad.string()}).code == kExitRuntime);
  const auto not_ckpt = cli({"eval", "--checkpoint", kTiny, "--config", kTiny});
  CHECK(not_ckpt.code == kExitRuntime);
  CHECK(not_ckpt.err.find("error:") == 0);
}

TEST_CASE("gen-data is deterministic in the seed") {
  const auto a = scratch("a.tsv"), b = scratch("b.tsv"), c = scratch("c.tsv");
  REQUIRE(cli({"gen-data", "--config", kTiny, "--out", a.string(), "--seed", "9"}).code == kExitOk);
  REQUIRE(cli({"gen-data", "--config", kTiny, "--out", b.string(), "--seed", "9"}).code == kExitOk);
  REQUIRE(cli({"gen-data", "--config", kTiny, "--out", c.string(), "--seed", "10"}).code == kExitOk);
  auto slurp = [](const fs::path& p) {
    std::ifstream f(p, std::ios::binary);
    return std::string(std::istreambuf_iterator<char>(f), {});
  };
  CHECK(slurp(a) == slurp(b));
  CHECK(slurp(a) != slurp(c));
  CHECK(seqrank::data::read_tsv(a.string()).size() == 24);
}

TEST_CASE("pack-stats reports compression") {
  const auto r = cli({"pack-stats", "--config", kTiny, "--batch-users", "8"});
  REQUIRE(r.code == kExitOk);
  CHECK(r.out.find("compression ") != std::string::npos);
  CHECK(r.out.find("padded_fraction_packed ") != std::string::npos);
}

TEST_CASE("train, eval and serve-replay chain") {
  const auto data = scratch("chain.tsv"), ckpt = scratch("chain.ckpt"), log = scratch("chain.log"),
             state = scratch("chain.state"), preds = scratch("chain.preds");
  fs::remove(state);
  REQUIRE(cli({"gen-data", "--config", kTiny, "--out", data.string()}).code == kExitOk);
  const auto t = cli({"train", "--config", kTiny, "--data", data.string(), "--variant", "S3DDPG", "--out",
                      ckpt.string(), "--log", log.string()});
  REQUIRE(t.code == kExitOk);
  CHECK(t.out.find("best_session_auc") != std::string::npos);
  CHECK(fs::exists(ckpt));
  std::ifstream lf(log);
  std::string first;
  std::getline(lf, first);
  CHECK(first.rfind("epoch=0", 0) == 0);

  const auto e = cli({"eval", "--checkpoint", ckpt.string(), "--data", data.string()});
  REQUIRE(e.code == kExitOk);
  CHECK(e.out.find("model S3DDPG") == 0);
  CHECK(e.out.find("group.category_new.users") != std::string::npos);

  const auto s = cli({"serve-replay", "--checkpoint", ckpt.string(), "--data", data.string(), "--audit", "--state",
                      state.string(), "--out", preds.string()});
  REQUIRE(s.code == kExitOk);
  CHECK(s.out.find("audit pass") != std::string::npos);
  CHECK(fs::exists(state));
  // Resuming with an audit over already served users is refused.
  CHECK(cli({"serve-replay", "--checkpoint", ckpt.string(), "--data", data.string(), "--audit", "--state",
             state.string()})
            .code == kExitRuntime);

  const auto dnn = scratch("dnn.ckpt");
  REQUIRE(cli({"train", "--config", kTiny, "--variant", "DNN", "--out", dnn.string()}).code == kExitOk);
  CHECK(cli({"serve-replay", "--checkpoint", dnn.string(), "--config", kTiny}).code == kExitRuntime);
}

TEST_CASE("sweep-mu rows and guard") {
  const auto out = scratch("sweep.tsv");
  const auto r = cli({"sweep-mu", "--config", kTiny, "--values", "0.2,0.5,0.8", "--max-epochs", "1", "--out",
                      out.string()});
  REQUIRE(r.code == kExitOk);
  std::ifstream f(out);
  const std::string text(std::istreambuf_iterator<char>(f), {});
  CHECK(line_count(text) == 4);
  const auto one = cli({"sweep-mu", "--config", kTiny, "--values", "0.99", "--max-epochs", "1"});
  CHECK(one.code == kExitOk);
  CHECK(line_count(one.out) == 2);
  const auto bad = cli({"sweep-mu", "--config", kTiny, "--values", "0.5,1", "--max-epochs", "1"});
  CHECK(bad.code == kExitRuntime);
  CHECK(bad.err.find("degenerates") != std::string::npos);
}

TEST_CASE("ladder writes the four-row table") {
  const auto a = cli({"ladder", "--config", kTiny, "--seed", "17", "--max-epochs", "1"});
  REQUIRE(a.code == kExitOk);
  CHECK(line_count(a.out) == 5);
  CHECK(a.out.find("DNN\t") != std::string::npos);
  CHECK(a.out.find("S3DDPG\t") != std::string::npos);
  const auto b = cli({"ladder", "--config", kTiny, "--seed", "17", "--max-epochs", "1"});
  CHECK(a.out == b.out);
}
