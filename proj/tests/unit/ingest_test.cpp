#include "botwatch/ingest.h"
#include "doctest.h"
#include "helpers.h"
#include "random_flows.h"

using namespace botwatch;

namespace {

const std::string kHeader = std::string(kFlowHeader) + "\n";

// Independent hex oracle.
std::string unhex(const std::string& hex) {
  std::string out;
  for (std::size_t i = 0; i < hex.size(); i += 2) {
    out.push_back(static_cast<char>(std::stoi(hex.substr(i, 2), nullptr, 16)));
  }
  return out;
}

int malformed_line(const std::string& text) {
  try {
    parse_flow_file(text);
  } catch (const MalformedRow& e) {
    return e.line();
  }
  return -1;
}

}  // namespace

TEST_CASE("header only parses to an empty list") {
  CHECK(parse_flow_file(kHeader).empty());
  CHECK(parse_flow_file(std::string(kFlowHeader)).empty());
}

TEST_CASE("example row with an IRC payload") {
  const auto flows = parse_flow_file(
      kHeader +
      "1000.0,10.0,tcp,10.0.0.5,43211,93.10.1.2,6667,20,1000,established,4e49434b20626f740d0a\n");
  REQUIRE(flows.size() == 1);
  const auto& f = flows[0];
  CHECK(f.nbytes == 1000);
  CHECK(f.npkts == 20);
  CHECK(f.payload_prefix == unhex("4e49434b20626f740d0a"));
  CHECK(f.payload_prefix == "NICK bot\r\n");
  CHECK(f.start_us == 1000 * kMicrosPerSecond);
  CHECK(f.duration_us == 10 * kMicrosPerSecond);
  CHECK(f.proto == Proto::kTcp);
  CHECK(f.sip == test::ip("10.0.0.5"));
  CHECK(f.sport == 43211);
  CHECK(f.dip == test::ip("93.10.1.2"));
  CHECK(f.dport == 6667);
  CHECK(f.tcp_state == TcpState::kEstablished);
}

TEST_CASE("row with 10 columns is malformed") {
  const auto text = kHeader + "1000.0,10.0,tcp,10.0.0.5,43211,93.10.1.2,6667,20,1000,established\n";
  CHECK_THROWS_AS(parse_flow_file(text), MalformedRow);
  CHECK(malformed_line(text) == 2);
}

TEST_CASE("malformed rows report their own line") {
  const std::string good = "1.5,0,udp,10.0.0.1,53,8.8.8.8,53,1,60,not_tcp,\n";
  CHECK(malformed_line(kHeader + good + "# comment\n" +
                       "1.5,0,udp,10.0.0.1,53,8.8.8.8,53,1,60,established,\n") == 4);
  for (const std::string& row : {
           "x,0,udp,10.0.0.1,53,8.8.8.8,53,1,60,not_tcp,\n",
           "1.5,-1,udp,10.0.0.1,53,8.8.8.8,53,1,60,not_tcp,\n",
           "1.5,0,UDP,10.0.0.1,53,8.8.8.8,53,1,60,not_tcp,\n",
           "1.5,0,udp,10.0.0.256,53,8.8.8.8,53,1,60,not_tcp,\n",
           "1.5,0,udp,::1,53,8.8.8.8,53,1,60,not_tcp,\n",
           "1.5,0,udp,10.0.0.1,65536,8.8.8.8,53,1,60,not_tcp,\n",
           "1.5,0,udp,10.0.0.1,53,8.8.8.8,53,0,60,not_tcp,\n",
           "1.5,0,udp,10.0.0.1,53,8.8.8.8,53,1,60,not_tcp,4\n",
           "1.5,0,udp,10.0.0.1,53,8.8.8.8,53,1,60,not_tcp,zz\n",
           "1.1234567,0,udp,10.0.0.1,53,8.8.8.8,53,1,60,not_tcp,\n",
           "1.5,0,udp,10.0.0.1,53,8.8.8.8,53,1,60,not_tcp,,\n",
           "1.5,0,udp,10.0.0.1,53,8.8.8.8,53,-1,60,not_tcp,\n",
       }) {
    CHECK_MESSAGE(malformed_line(kHeader + good + row) == 3, row);
  }
  const std::string long_payload(130, 'a');
  CHECK(malformed_line(kHeader + "1,0,tcp,1.1.1.1,1,2.2.2.2,2,1,1,established," + long_payload +
                       "\n") == 2);
}

TEST_CASE("bad header") {
  CHECK_THROWS_AS(parse_flow_file(""), BadHeader);
  CHECK_THROWS_AS(parse_flow_file("start_ts,duration\n"), BadHeader);
  CHECK_THROWS_AS(parse_flow_file("1.0,0,udp,10.0.0.1,53,8.8.8.8,53,1,60,not_tcp,\n"), BadHeader);
}

TEST_CASE("comments, blank lines and CRLF are tolerated") {
  const auto flows = parse_flow_file("# exported\r\n" + std::string(kFlowHeader) +
                                     "\r\n\r\n# x\r\n"
                                     "0.000001,0,icmp,10.0.0.1,0,10.0.0.2,0,0,0,not_tcp,\r\n");
  REQUIRE(flows.size() == 1);
  CHECK(flows[0].start_us == 1);
  CHECK(flows[0].proto == Proto::kIcmp);
}

TEST_CASE("write of nothing is the header") {
  CHECK(write_flow_file({}) == kHeader);
}

TEST_CASE("one flow writes two lines and round-trips") {
  auto f = test::flow("10.0.0.5", "93.10.1.2", 6667, 20, 1000, 1000 * kMicrosPerSecond,
                      10 * kMicrosPerSecond);
  f.sport = 43211;
  f.payload_prefix = "NICK bot\r\n";
  const auto text = write_flow_file({f});
  CHECK(text == kHeader +
                    "1000.0,10.0,tcp,10.0.0.5,43211,93.10.1.2,6667,20,1000,established,"
                    "4e49434b20626f740d0a\n");
  CHECK(parse_flow_file(text) == std::vector<FlowRecord>{f});
}

TEST_CASE("1000 random valid flows round-trip exactly") {
  std::mt19937_64 rng(1000);
  const auto flows = test::random_flows(rng, 1000);
  for (const auto& f : flows) REQUIRE(validate_flow(f).empty());
  const auto back = parse_flow_file(write_flow_file(flows));
  REQUIRE(back.size() == flows.size());
  for (std::size_t i = 0; i < flows.size(); ++i) CHECK(back[i] == flows[i]);
}

TEST_CASE("seconds formatting") {
  CHECK(format_seconds(0) == "0.0");
  CHECK(format_seconds(1) == "0.000001");
  CHECK(format_seconds(1'500'000) == "1.5");
  CHECK(format_seconds(21'599'999'000) == "21599.999");
  CHECK(parse_seconds("21599.999") == 21'599'999'000);
  CHECK(parse_seconds("7") == 7'000'000);
  CHECK_FALSE(parse_seconds("1e3"));
  CHECK_FALSE(parse_seconds(".5"));
  CHECK_FALSE(parse_seconds("-1"));
  CHECK_FALSE(parse_seconds(""));
}

TEST_CASE("hex codec") {
  CHECK(hex_encode(std::string_view("\x00\xff\x10", 3)) == "00ff10");
  CHECK(hex_decode("00FF10") == std::string("\x00\xff\x10", 3));
  CHECK_FALSE(hex_decode("abc"));
  CHECK_FALSE(hex_decode("0g"));
}
