#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include "botwatch/cli.h"
#include "botwatch/ingest.h"
#include "botwatch/p2p_monitor.h"
#include "botwatch/pipeline.h"
#include "botwatch/synth.h"
#include "doctest.h"
#include "json.hpp"

using namespace botwatch;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string tmp(const std::string& name) {
  const fs::path dir = fs::path(BOTWATCH_TEST_TMP) / "cli";
  fs::create_directories(dir);
  return (dir / name).string();
}

void put(const std::string& path, const std::string& text) {
  std::ofstream(path, std::ios::binary) << text;
}

std::string get(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

std::vector<std::string> lines(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  for (std::string l; std::getline(in, l);) out.push_back(l);
  return out;
}

std::string s1_spec(std::int64_t size = 3) {
  return "seed = 42\nbenign_hosts = 20\nplanted.0.kind = p2p_bot_group\nplanted.0.size = " +
         std::to_string(size) + "\n";
}

}  // namespace

TEST_CASE("help and usage") {
  auto r = run({"--help"});
  CHECK(r.code == cli::kExitOk);
  CHECK(r.out.find("detect") != std::string::npos);
  CHECK(run({}).code == cli::kExitConfig);
  CHECK(run({"frobnicate"}).code == cli::kExitConfig);
  CHECK(run({"detect", "--flows", "x.csv"}).code == cli::kExitConfig);  // no --internal
}

TEST_CASE("detect: missing file, bad rows, bad config") {
  auto r = run({"detect", "--flows", tmp("does-not-exist.csv"), "--internal", "10.0.0.0/8"});
  CHECK(r.code == cli::kExitIo);
  CHECK_FALSE(r.err.empty());

  put(tmp("bad.csv"), std::string(kFlowHeader) + "\n1,2,3\n");
  r = run({"detect", "--flows", tmp("bad.csv"), "--internal", "10.0.0.0/8"});
  CHECK(r.code == cli::kExitIo);
  CHECK(r.err.find("line 2") != std::string::npos);

  put(tmp("empty.csv"), std::string(kFlowHeader) + "\n");
  put(tmp("bad.conf"), "similarity_threshold = 2\n");
  r = run({"detect", "--flows", tmp("empty.csv"), "--internal", "10.0.0.0/8", "--config", tmp("bad.conf")});
  CHECK(r.code == cli::kExitConfig);
  r = run({"detect", "--flows", tmp("empty.csv"), "--internal", "10.0.0.0/33"});
  CHECK(r.code == cli::kExitConfig);
  put(tmp("bad.wl"), "not-an-ip\n");
  r = run({"detect", "--flows", tmp("empty.csv"), "--internal", "10.0.0.0/8", "--whitelist", tmp("bad.wl")});
  CHECK(r.code == cli::kExitConfig);
}

TEST_CASE("detect on an empty flow file") {
  put(tmp("empty.csv"), std::string(kFlowHeader) + "\n");
  const auto r = run({"detect", "--flows", tmp("empty.csv"), "--internal", "10.0.0.0/8"});
  REQUIRE(r.code == cli::kExitOk);
  const auto doc = nlohmann::json::parse(r.out);
  CHECK(doc["groups"].empty());
  CHECK(doc["counters"]["flows_ingested"] == 0);
}

TEST_CASE("synth then detect finds the planted group") {
  put(tmp("s1.spec"), s1_spec());
  auto r = run({"synth", "--spec", tmp("s1.spec"), "--out", tmp("s1")});
  REQUIRE(r.code == cli::kExitOk);
  CHECK(fs::exists(tmp("s1.flows.csv")));
  CHECK(fs::exists(tmp("s1.truth")));
  const auto first = get(tmp("s1.flows.csv"));
  REQUIRE(run({"synth", "--spec", tmp("s1.spec"), "--out", tmp("s1b")}).code == cli::kExitOk);
  CHECK(get(tmp("s1b.flows.csv")) == first);
  CHECK(get(tmp("s1b.truth")) == get(tmp("s1.truth")));
  REQUIRE(run({"synth", "--spec", tmp("s1.spec"), "--out", tmp("s1c"), "--seed", "43"}).code == 0);
  CHECK(get(tmp("s1c.flows.csv")) != first);

  r = run({"detect", "--flows", tmp("s1.flows.csv"), "--internal", "10.0.0.0/8", "--out",
           tmp("s1.json")});
  REQUIRE(r.code == cli::kExitOk);
  const auto doc = nlohmann::json::parse(get(tmp("s1.json")));
  const auto truth = synth::parse_truth(get(tmp("s1.truth")));
  REQUIRE(doc["groups"].size() == 1);
  CHECK(doc["groups"][0]["path"] == "p2p");
  std::vector<std::string> expect;
  for (auto h : truth.planted[0].hosts) expect.push_back(h.to_string());
  CHECK(doc["groups"][0]["hosts"].get<std::vector<std::string>>() == expect);
}

TEST_CASE("synth rejects a bad spec") {
  put(tmp("neg.spec"), "planted.0.kind = scanner\nplanted.0.size = -2\n");
  CHECK(run({"synth", "--spec", tmp("neg.spec"), "--out", tmp("neg")}).code == cli::kExitConfig);
  CHECK(run({"synth", "--spec", tmp("nope.spec"), "--out", tmp("neg")}).code == cli::kExitIo);
}

TEST_CASE("curves dump") {
  put(tmp("empty.csv"), std::string(kFlowHeader) + "\n");
  auto r = run({"curves", "--flows", tmp("empty.csv")});
  REQUIRE(r.code == cli::kExitOk);
  CHECK(r.out == "key,x,y\n");
  CHECK(run({"curves", "--flows", tmp("empty.csv"), "--path", "dns"}).code == cli::kExitConfig);
  CHECK(run({"curves", "--flows", tmp("missing.csv")}).code == cli::kExitIo);

  const auto sc = synth::generate(synth::p2p_scenario(42));
  put(tmp("c.csv"), write_flow_file(sc.flows));
  r = run({"curves", "--flows", tmp("c.csv"), "--path", "p2p"});
  REQUIRE(r.code == cli::kExitOk);

  // group count oracle: distinct P2P keys per window over the OTHER stream
  const auto staged = stage_flows(sc.flows, {});
  std::size_t groups = 0, degenerate = 0;
  for (const auto& w : window_partition(staged.labeled.other, default_config().window_us())) {
    for (const auto& g : group_flows_p2p(w.flows, 0.001).groups) {
      ++groups;
      std::set<double> xs;
      for (const auto& p : g.points) xs.insert(p.nbpp);
      degenerate += xs.size() == 1;
    }
  }
  const auto rows = lines(r.out);
  std::map<std::string, int> per_key;
  for (std::size_t i = 1; i < rows.size(); ++i) ++per_key[rows[i].substr(0, rows[i].rfind(',', rows[i].rfind(',') - 1))];
  CHECK(per_key.size() == groups);
  std::size_t singles = 0;
  for (const auto& [key, n] : per_key) {
    CHECK((n == 32 || n == 1));
    singles += n == 1;
  }
  CHECK(singles == degenerate);
  CHECK(rows.size() == 1 + 32 * (groups - degenerate) + degenerate);
}

TEST_CASE("stage commands compose to detect") {
  const auto sc = synth::generate([] {
    auto spec = synth::p2p_scenario(5);
    spec.planted.push_back(synth::planted_defaults(synth::PlantKind::kSpammer));
    spec.planted.push_back(synth::planted_defaults(synth::PlantKind::kIrcBotGroup));
    return spec;
  }());
  put(tmp("mix.csv"), write_flow_file(sc.flows));
  put(tmp("mix.wl"), "# nothing\n");
  const auto detect = run({"detect", "--flows", tmp("mix.csv"), "--internal", "10.0.0.0/8",
                           "--whitelist", tmp("mix.wl")});
  REQUIRE(detect.code == 0);
  const auto doc = nlohmann::json::parse(detect.out);

  REQUIRE(run({"classify", "--flows", tmp("mix.csv"), "--whitelist", tmp("mix.wl"), "--out",
               tmp("mix")}).code == 0);
  const std::vector<std::string> parts{"--flows", tmp("mix.irc.csv"), "--flows", tmp("mix.http.csv"),
                                       "--flows", tmp("mix.other.csv"), "--flows", tmp("mix.failed.csv")};
  auto with = [&](std::vector<std::string> head) {
    head.insert(head.end(), parts.begin(), parts.end());
    return head;
  };
  const auto scan = run(with({"scan-score", "--internal", "10.0.0.0/8"}));
  const auto spam = run(with({"spam-score", "--internal", "10.0.0.0/8"}));
  REQUIRE(scan.code == 0);
  REQUIRE(spam.code == 0);

  std::set<std::string> flagged;
  const auto scan_rows = lines(scan.out);
  CHECK(scan_rows[0] == "window,host,C,m,s1,s2,s3,fhs,fls,osd_flagged,isd_S,isd_flagged");
  for (std::size_t i = 1; i < scan_rows.size(); ++i) {
    std::vector<std::string> cells;
    std::istringstream in(scan_rows[i]);
    for (std::string c; std::getline(in, c, ',');) cells.push_back(c);
    if (cells[9] == "1" || cells[11] == "1") flagged.insert(cells[1]);
  }
  const auto spam_rows = lines(spam.out);
  for (std::size_t i = 1; i < spam_rows.size(); ++i) {
    if (spam_rows[i].back() == '1') flagged.insert(spam_rows[i].substr(spam_rows[i].find(',') + 1, spam_rows[i].find(',', spam_rows[i].find(',') + 1) - spam_rows[i].find(',') - 1));
  }
  std::set<std::string> reported;
  for (const auto& w : doc["windows"]) {
    for (const auto& h : w["malicious_hosts"]) reported.insert(h.get<std::string>());
  }
  CHECK(flagged == reported);
  CHECK(reported.size() == 4);

  // detect over the re-joined stage outputs gives the same groups
  const auto again = run(with({"detect", "--internal", "10.0.0.0/8"}));
  REQUIRE(again.code == 0);
  const auto doc2 = nlohmann::json::parse(again.out);
  CHECK(doc2["groups"] == doc["groups"]);
  CHECK(doc["groups"].size() == 2);
}
