// Copyright 2026 The meol Authors
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

#include <gtest/gtest.h>

#include <chrono>
#include <cstdio>
#include <json.hpp>
#include <sstream>
#include <thread>

#include "cli.hpp"
#include "meol/bench/cache.hpp"
#include "meol/retrieval/index_file.hpp"
#include "meol/svg/document.hpp"
#include "meol/svg/raster.hpp"
#include "test_support.hpp"

namespace meol::cli {
namespace {

using nlohmann::json;
using testing::data_dir;
using testing::read_file;
using testing::TempDir;

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  int code = dispatch(args, out, err);
  return {code, out.str(), err.str()};
}

std::string corpus(const char* name) { return (data_dir() / "corpus" / name).string(); }
std::string trend(const char* name) { return (data_dir() / "trend" / name).string(); }

// Runs the installed binary through the shell and captures stdout.
Result run_binary(const std::string& args) {
  std::string cmd = testing::meol_binary().string() + " " + args + " 2>/dev/null";
  Result r{0, "", ""};
  FILE* p = ::popen(cmd.c_str(), "r");
  if (!p) return {-1, "", ""};
  char buf[4096];
  for (std::size_t n; (n = std::fread(buf, 1, sizeof buf, p)) > 0;) r.out.append(buf, n);
  int status = ::pclose(p);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

TEST(Cli, HelpAndUnknownFlags) {
  auto h = run({"--help"});
  EXPECT_EQ(h.code, kExitOk);
  for (const char* sub : {"rewrite", "embed", "index", "query", "eval", "ablate", "serve-mock"})
    EXPECT_NE(h.out.find(sub), std::string::npos) << sub;
  auto bad = run({"rewrite", "--bogus", corpus("01_bird_layer.svg")});
  EXPECT_EQ(bad.code, kExitUser);
  EXPECT_FALSE(bad.err.empty());
  EXPECT_EQ(run({}).code, kExitUser);
  EXPECT_EQ(run({"--backend", "gpu", "embed", "--text", "x"}).code, kExitUser);
}

TEST(Cli, RewriteToStdoutWithAuditOnStderr) {
  auto r = run({"rewrite", corpus("01_bird_layer.svg")});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  auto doc = svg::parse_svg(r.out);
  auto orig = svg::parse_svg(read_file(corpus("01_bird_layer.svg")));
  EXPECT_LE(svg::visual_distance(svg::rasterize(doc), svg::rasterize(orig)), svg::kVisualTolerance);
  auto audit = json::parse(r.err);
  EXPECT_EQ(audit["status"], "rewritten");
  EXPECT_EQ(audit["item"], "01_bird_layer");
}

TEST(Cli, RewriteWithScriptedFallback) {
  TempDir dir;
  testing::write_file(dir / "plans.jsonl",
                      json{{"svg", read_file(corpus("01_bird_layer.svg"))}, {"response", "not a plan"}}.dump() + "\n");
  auto r = run({"rewrite", corpus("01_bird_layer.svg"), "--plans", (dir / "plans.jsonl").string(), "--retries", "0",
                "-o", (dir / "out.svg").string(), "--audit", (dir / "audit.jsonl").string()});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  EXPECT_EQ(read_file(dir / "out.svg"), read_file(corpus("01_bird_layer.svg")));
  EXPECT_EQ(json::parse(r.out)["status"], "fallback_original");
  EXPECT_EQ(testing::read_lines(dir / "audit.jsonl").size(), 1u);
}

TEST(Cli, RewriteRejectsBrokenInput) {
  TempDir dir;
  testing::write_file(dir / "bad.svg", "<svg><g></svg>");
  auto r = run({"rewrite", (dir / "bad.svg").string()});
  EXPECT_EQ(r.code, kExitUser);
  EXPECT_NE(r.err.find("MalformedXml"), std::string::npos);
}

TEST(Cli, EmbedModalities) {
  auto t = run({"embed", "--text", "a red bird", "--item-id", "q1"});
  ASSERT_EQ(t.code, kExitOk) << t.err;
  auto rec = bench::record_from_cache_json(t.out);
  EXPECT_EQ(rec.template_id, "meol_text");
  EXPECT_EQ(rec.item_id, "q1");
  EXPECT_EQ(rec.dim, 512);

  auto s = run({"--backend", "mock-hash", "embed", "--svg", corpus("12_sun.svg"), "--render", "--family", "keeol",
                "--layer-offset", "4", "--pooling", "mean"});
  ASSERT_EQ(s.code, kExitOk) << s.err;
  auto srec = bench::record_from_cache_json(s.out);
  EXPECT_EQ(srec.template_id, "keeol_image_svg");
  EXPECT_EQ(srec.selector.layer_offset, 4);
  EXPECT_EQ(srec.selector.pooling, "mean_all_tokens");
  EXPECT_EQ(srec.dim, 64);

  auto v = run({"embed", "--svg", corpus("12_sun.svg"), "--variant", "two_words"});
  EXPECT_EQ(bench::record_from_cache_json(v.out).template_id, "meol_svg@two_words");

  EXPECT_EQ(run({"embed", "--text", "x", "--svg", corpus("12_sun.svg")}).code, kExitUser);
  EXPECT_EQ(run({"embed", "--text", "x", "--layer-offset", "40"}).code, kExitUser);
}

TEST(Cli, EmbedImageFile) {
  TempDir dir;
  svg::write_png(svg::rasterize(svg::parse_svg(read_file(corpus("12_sun.svg"))), 32, 32), dir / "sun.png");
  auto r = run({"embed", "--image", (dir / "sun.png").string()});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  EXPECT_EQ(bench::record_from_cache_json(r.out).template_id, "meol_image");
}

TEST(Cli, IndexThenQuery) {
  TempDir dir;
  auto idx = (dir / "trend.idx").string();
  auto i = run({"--json", "index", "--dataset", trend("fixture.jsonl"), "--plans", trend("plans.jsonl"), "-o", idx});
  ASSERT_EQ(i.code, kExitOk) << i.err;
  auto summary = json::parse(i.out);
  EXPECT_EQ(summary["items"], 50);
  EXPECT_EQ(summary["dim"], 512);
  EXPECT_EQ(retrieval::load_index(idx).size(), 50u);

  auto q = run({"query", "--index", idx, "--text", "A house with its roof and wall", "-k", "3"});
  ASSERT_EQ(q.code, kExitOk) << q.err;
  auto lines = testing::split_lines(q.out);
  ASSERT_EQ(lines.size(), 3u);
  EXPECT_EQ(lines[0].rfind("1\ttrend-", 0), 0u);

  auto qj = run({"--json", "query", "--index", idx, "--text", "a house", "-k", "2"});
  EXPECT_EQ(json::parse(qj.out)["results"].size(), 2u);

  auto mismatch = run({"--backend", "mock-hash", "query", "--index", idx, "--text", "a house"});
  EXPECT_EQ(mismatch.code, kExitUser);
  EXPECT_NE(mismatch.err.find("DimMismatch"), std::string::npos);
}

TEST(Cli, IndexFromEmbeddingRecords) {
  TempDir dir;
  std::string lines;
  for (const char* f : {"11_house.svg", "12_sun.svg", "13_tree.svg"}) {
    auto r = run({"embed", "--svg", corpus(f), "--item-id", f});
    ASSERT_EQ(r.code, kExitOk);
    lines += r.out;
  }
  testing::write_file(dir / "emb.jsonl", lines);
  auto i = run({"index", "--embeddings", (dir / "emb.jsonl").string(), "-o", (dir / "x.idx").string()});
  ASSERT_EQ(i.code, kExitOk) << i.err;
  EXPECT_EQ(retrieval::load_index(dir / "x.idx").item_ids(),
            (std::vector<std::string>{"11_house.svg", "12_sun.svg", "13_tree.svg"}));
  EXPECT_EQ(run({"index", "--embeddings", (dir / "emb.jsonl").string(), "--dataset", trend("fixture.jsonl"), "-o",
                 (dir / "y.idx").string()})
                .code,
            kExitUser);
}

TEST(Cli, EvalWritesReport) {
  TempDir dir;
  auto r = run({"--json", "eval", "--dataset", trend("fixture.jsonl"), "--plans", trend("plans.jsonl"), "--out",
                (dir / "rep").string(), "--k", "1,5,10,20"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  auto expected = json::parse(read_file(data_dir() / "trend" / "expected.json"))["image_plus_generated_svg"];
  auto rep = json::parse(r.out);
  EXPECT_NEAR(rep["mrr"].get<double>(), expected["MRR"].get<double>(), 1e-9);
  EXPECT_EQ(rep["rewrites"]["rewritten"], 42);
  for (const char* f : {"ranks.csv", "summary.csv", "top5.csv", "report.json"})
    EXPECT_TRUE(std::filesystem::exists(dir / "rep" / f)) << f;
  EXPECT_EQ(testing::read_lines(dir / "rep" / "ranks.csv").size(), 51u);
}

TEST(Cli, AblateWritesCsv) {
  TempDir dir;
  auto r = run({"--backend", "mock-hash", "ablate", "--kind", "pooling", "--dataset", trend("fixture.jsonl"), "--format",
                "svg_only", "--out", dir.path().string(), "--bins", "10"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  EXPECT_EQ(testing::read_lines(dir / "ablation_pooling.csv").size(), 5u);
  EXPECT_EQ(testing::read_lines(dir / "histograms_pooling.csv").size(), 41u);
  EXPECT_EQ(run({"ablate", "--kind", "everything", "--dataset", trend("fixture.jsonl"), "--out", dir.path().string()})
                .code,
            kExitUser);
}

TEST(Cli, ConfigFileSuppliesOptions) {
  TempDir dir;
  testing::write_file(dir / "meol.toml", "backend = \"mock-hash\"\n[embed]\nlayer-offset = 7\n");
  auto r = run({"--config", (dir / "meol.toml").string(), "embed", "--text", "hello"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  auto rec = bench::record_from_cache_json(r.out);
  EXPECT_EQ(rec.model_id, "mock-hash");
  EXPECT_EQ(rec.selector.layer_offset, 7);
}

TEST(Cli, ServeMockAnswersRemoteClients) {
  TempDir dir;
  auto ready = dir / "ready";
  Result served;
  std::thread server([&] {
    served = run({"--addr", "127.0.0.1:0", "serve-mock", "--ready-file", ready.string(), "--max-requests", "2"});
  });
  std::string addr;
  for (int i = 0; i < 500 && (addr.empty() || addr.back() != '\n'); ++i) {
    std::this_thread::sleep_for(std::chrono::milliseconds(10));
    if (std::filesystem::exists(ready)) addr = read_file(ready);
  }
  ASSERT_FALSE(addr.empty());
  addr.pop_back();
  auto remote = run({"--backend", "remote", "--addr", addr, "embed", "--text", "over the wire"});
  auto local = run({"embed", "--text", "over the wire"});
  EXPECT_EQ(remote.code, kExitOk) << remote.err;
  EXPECT_EQ(bench::record_from_cache_json(remote.out).vector, bench::record_from_cache_json(local.out).vector);
  run({"--backend", "remote", "--addr", addr, "embed", "--text", "second"});
  server.join();
  EXPECT_EQ(served.code, kExitOk);
  EXPECT_NE(served.out.find("served 2 requests"), std::string::npos);
}

TEST(Cli, RemoteWithoutServerIsUnavailable) {
  auto r = run({"--backend", "remote", "--addr", "unix:/nonexistent/meol.sock", "embed", "--text", "x"});
  EXPECT_EQ(r.code, kExitUser);
  EXPECT_NE(r.err.find("BackendUnavailable"), std::string::npos);
}

TEST(CliBinary, ExitCodesAndOutput) {
  auto ok = run_binary("rewrite " + corpus("11_house.svg"));
  EXPECT_EQ(ok.code, 0);
  EXPECT_EQ(ok.out.rfind("<svg", 0), 0u);
  EXPECT_EQ(run_binary("rewrite --nope").code, 1);
  EXPECT_EQ(run_binary("query --index /nonexistent.idx --text x").code, 1);
  auto q = run_binary("--json embed --text 'a bird'");
  EXPECT_EQ(q.code, 0);
  EXPECT_EQ(bench::record_from_cache_json(q.out).template_id, "meol_text");
}

}  // namespace
}  // namespace meol::cli
