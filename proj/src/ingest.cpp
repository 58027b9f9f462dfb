#include "botwatch/ingest.h"

#include <array>
#include <charconv>
#include <limits>

namespace botwatch {
namespace {

constexpr std::size_t kColumns = 11;

template <typename Int>
std::optional<Int> parse_unsigned(std::string_view s) {
  Int v{};
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc() || ptr != s.data() + s.size()) return std::nullopt;
  return v;
}

std::optional<std::uint16_t> parse_port(std::string_view s) {
  auto v = parse_unsigned<unsigned>(s);
  if (!v || *v > 65535) return std::nullopt;
  return static_cast<std::uint16_t>(*v);
}

FlowRecord parse_row(std::string_view line, int line_no) {
  std::array<std::string_view, kColumns> cols;
  std::size_t n = 0;
  for (std::size_t pos = 0;; ++n) {
    auto comma = line.find(',', pos);
    if (n < kColumns) cols[n] = line.substr(pos, comma - pos);
    if (comma == std::string_view::npos) break;
    pos = comma + 1;
  }
  ++n;
  if (n != kColumns) {
    throw MalformedRow(line_no, "expected 11 columns, found " + std::to_string(n));
  }

  auto bad = [&](const char* field, std::string_view value) -> MalformedRow {
    return MalformedRow(line_no, std::string("bad ") + field + " '" + std::string(value) + "'");
  };

  FlowRecord rec;
  auto start = parse_seconds(cols[0]);
  if (!start) throw bad("start_ts", cols[0]);
  rec.start_us = *start;
  auto duration = parse_seconds(cols[1]);
  if (!duration) throw bad("duration", cols[1]);
  rec.duration_us = *duration;
  auto proto = parse_proto(cols[2]);
  if (!proto) throw bad("proto", cols[2]);
  rec.proto = *proto;
  auto sip = Ipv4::parse(cols[3]);
  if (!sip) throw bad("sip", cols[3]);
  rec.sip = *sip;
  auto sport = parse_port(cols[4]);
  if (!sport) throw bad("sport", cols[4]);
  rec.sport = *sport;
  auto dip = Ipv4::parse(cols[5]);
  if (!dip) throw bad("dip", cols[5]);
  rec.dip = *dip;
  auto dport = parse_port(cols[6]);
  if (!dport) throw bad("dport", cols[6]);
  rec.dport = *dport;
  auto npkts = parse_unsigned<std::uint64_t>(cols[7]);
  if (!npkts) throw bad("npkts", cols[7]);
  rec.npkts = *npkts;
  auto nbytes = parse_unsigned<std::uint64_t>(cols[8]);
  if (!nbytes) throw bad("nbytes", cols[8]);
  rec.nbytes = *nbytes;
  auto state = parse_tcp_state(cols[9]);
  if (!state) throw bad("tcp_state", cols[9]);
  rec.tcp_state = *state;
  auto payload = hex_decode(cols[10]);
  if (!payload) throw bad("payload_prefix_hex", cols[10]);
  rec.payload_prefix = std::move(*payload);

  if (auto violations = validate_flow(rec); !violations.empty()) {
    throw MalformedRow(line_no, violations.front());
  }
  return rec;
}

}  // namespace

BadHeader::BadHeader(int line, const std::string& found)
    : IngestError("line " + std::to_string(line) + ": bad header '" + found + "'"), line_(line) {}

MalformedRow::MalformedRow(int line, std::string reason)
    : IngestError("line " + std::to_string(line) + ": " + reason),
      line_(line),
      reason_(std::move(reason)) {}

std::optional<Micros> parse_seconds(std::string_view text) {
  auto dot = text.find('.');
  auto whole_text = text.substr(0, dot);
  auto frac_text = dot == std::string_view::npos ? std::string_view{} : text.substr(dot + 1);
  if (whole_text.empty() || frac_text.size() > 6) return std::nullopt;
  if (dot != std::string_view::npos && frac_text.empty()) return std::nullopt;

  auto whole = parse_unsigned<std::uint64_t>(whole_text);
  if (!whole) return std::nullopt;
  std::int64_t frac = 0;
  if (!frac_text.empty()) {
    auto f = parse_unsigned<std::uint32_t>(frac_text);
    if (!f) return std::nullopt;
    frac = *f;
    for (auto i = frac_text.size(); i < 6; ++i) frac *= 10;
  }
  constexpr auto kMaxWhole =
      static_cast<std::uint64_t>(std::numeric_limits<Micros>::max() / kMicrosPerSecond) - 1;
  if (*whole > kMaxWhole) return std::nullopt;
  return static_cast<Micros>(*whole) * kMicrosPerSecond + frac;
}

std::string format_seconds(Micros us) {
  std::string out = std::to_string(us / kMicrosPerSecond);
  auto frac = std::to_string(us % kMicrosPerSecond);
  frac.insert(0, 6 - frac.size(), '0');
  while (frac.size() > 1 && frac.back() == '0') frac.pop_back();
  out += '.';
  out += frac;
  return out;
}

std::string hex_encode(std::string_view bytes) {
  static constexpr char kDigits[] = "0123456789abcdef";
  std::string out;
  out.reserve(bytes.size() * 2);
  for (unsigned char c : bytes) {
    out += kDigits[c >> 4];
    out += kDigits[c & 0xf];
  }
  return out;
}

std::optional<std::string> hex_decode(std::string_view hex) {
  if (hex.size() % 2 != 0) return std::nullopt;
  auto nibble = [](char c) -> int {
    if (c >= '0' && c <= '9') return c - '0';
    if (c >= 'a' && c <= 'f') return c - 'a' + 10;
    if (c >= 'A' && c <= 'F') return c - 'A' + 10;
    return -1;
  };
  std::string out;
  out.reserve(hex.size() / 2);
  for (std::size_t i = 0; i < hex.size(); i += 2) {
    int hi = nibble(hex[i]);
    int lo = nibble(hex[i + 1]);
    if (hi < 0 || lo < 0) return std::nullopt;
    out += static_cast<char>((hi << 4) | lo);
  }
  return out;
}

std::vector<FlowRecord> parse_flow_file(std::string_view text) {
  std::vector<FlowRecord> flows;
  bool have_header = false;
  int line_no = 0;
  while (!text.empty()) {
    ++line_no;
    auto nl = text.find('\n');
    auto line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.empty() || line.front() == '#') continue;

    if (!have_header) {
      if (line != kFlowHeader) throw BadHeader(line_no, std::string(line));
      have_header = true;
      continue;
    }
    flows.push_back(parse_row(line, line_no));
  }
  if (!have_header) throw BadHeader(line_no, "");
  return flows;
}

std::string write_flow_file(const std::vector<FlowRecord>& flows) {
  std::string out(kFlowHeader);
  out += '\n';
  for (const auto& f : flows) {
    out += format_seconds(f.start_us);
    out += ',';
    out += format_seconds(f.duration_us);
    out += ',';
    out += to_string(f.proto);
    out += ',';
    out += f.sip.to_string();
    out += ',';
    out += std::to_string(f.sport);
    out += ',';
    out += f.dip.to_string();
    out += ',';
    out += std::to_string(f.dport);
    out += ',';
    out += std::to_string(f.npkts);
    out += ',';
    out += std::to_string(f.nbytes);
    out += ',';
    out += to_string(f.tcp_state);
    out += ',';
    out += hex_encode(f.payload_prefix);
    out += '\n';
  }
  return out;
}

}  // namespace botwatch
