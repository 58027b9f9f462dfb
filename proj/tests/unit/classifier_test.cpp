#include <random>

#include "botwatch/classifier.h"
#include "doctest.h"
#include "helpers.h"
#include "random_flows.h"

using namespace botwatch;

namespace {

FlowRecord with_payload(std::string payload, Proto proto = Proto::kTcp) {
  auto f = test::flow("10.0.0.1", "1.2.3.4", 9999);
  f.proto = proto;
  if (proto != Proto::kTcp) f.tcp_state = TcpState::kNotTcp;
  f.payload_prefix = std::move(payload);
  return f;
}

AppLabel label(std::string payload, Proto proto = Proto::kTcp) {
  return classify_flow(with_payload(std::move(payload), proto));
}

}  // namespace

TEST_CASE("IRC, HTTP and OTHER examples") {
  CHECK(label("NICK botxyz\r\n") == AppLabel::kIrc);
  CHECK(label("GET /index.html HTTP/1.1\r\n") == AppLabel::kHttp);
  CHECK(label("", Proto::kUdp) == AppLabel::kOther);
}

TEST_CASE("every token at line start") {
  for (const char* tok : {"NICK ", "PASS ", "USER ", "JOIN ", "OPER ", "PRIVMSG "}) {
    CHECK(label(std::string(tok) + "x") == AppLabel::kIrc);
    CHECK(label(std::string("CAP LS\r\n") + tok + "x") == AppLabel::kIrc);
    CHECK(label(std::string("CAP LS\n") + tok) == AppLabel::kIrc);
    CHECK(label(std::string(tok) + "x", Proto::kUdp) == AppLabel::kOther);
  }
  for (const char* m : {"GET ", "POST ", "HEAD "}) {
    CHECK(label(std::string(m) + "/") == AppLabel::kHttp);
    CHECK(label(std::string(m) + "/", Proto::kUdp) == AppLabel::kOther);
  }
}

TEST_CASE("near misses stay OTHER") {
  for (const char* p : {"nick bot\r\n", "NICKbot\r\n", "NICK", "NIC", " NICK bot", "xNICK bot",
                        "NICK\tbot", "PRIVMSG", "get / HTTP/1.1", "GETX /", "GET", "x GET /",
                        "\r\nGET /", "PUT / HTTP/1.1", "OPTIONS / HTTP/1.1", "Post /",
                        "HEAD/", "hello GET /", "JOIN\r\n", "USERS x"}) {
    CHECK_MESSAGE(label(p) == AppLabel::kOther, p);
  }
}

TEST_CASE("IRC wins over HTTP") {
  CHECK(label("GET /\r\nNICK x\r\n") == AppLabel::kIrc);
}

TEST_CASE("label depends only on proto and payload") {
  std::mt19937_64 rng(9);
  for (int i = 0; i < 300; ++i) {
    auto f = test::random_flow(rng);
    if (i % 3 == 0) f.payload_prefix = "JOIN #c\r\n";
    const auto expect = classify_flow(f);
    auto g = test::random_flow(rng);
    g.proto = f.proto;
    g.tcp_state = f.tcp_state;
    g.payload_prefix = f.payload_prefix;
    CHECK(classify_flow(g) == expect);
  }
}

TEST_CASE("partition agrees with per-flow labels") {
  CHECK(partition_by_label({}).irc.empty());
  const auto three = partition_by_label(
      {with_payload("NICK a\r\n"), with_payload("POST /"), with_payload("\x01\x02")});
  CHECK(three.irc.size() == 1);
  CHECK(three.http.size() == 1);
  CHECK(three.other.size() == 1);

  std::mt19937_64 rng(10);
  auto flows = test::random_flows(rng, 100);
  const char* payloads[] = {"NICK a\r\n", "GET /", "", "PRIVMSG #x :y\r\n", "HEAD /"};
  for (std::size_t i = 0; i < flows.size(); ++i) {
    if (i % 2) flows[i].payload_prefix = payloads[i % 5];
  }
  const auto parts = partition_by_label(flows);
  std::vector<FlowRecord> irc, http, other;
  for (const auto& f : flows) {
    switch (classify_flow(f)) {
      case AppLabel::kIrc: irc.push_back(f); break;
      case AppLabel::kHttp: http.push_back(f); break;
      case AppLabel::kOther: other.push_back(f); break;
    }
  }
  CHECK(parts.irc == irc);
  CHECK(parts.http == http);
  CHECK(parts.other == other);
  CHECK(!irc.empty());
}
