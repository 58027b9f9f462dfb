#include "botwatch/filter.h"

#include <algorithm>

#include "botwatch/config.h"

namespace botwatch {

Whitelist::Whitelist(std::vector<Cidr> entries) : entries_(std::move(entries)) {
  std::sort(entries_.begin(), entries_.end());
  entries_.erase(std::unique(entries_.begin(), entries_.end()), entries_.end());
}

Whitelist Whitelist::parse(std::string_view text) {
  std::vector<Cidr> entries;
  int line_no = 0;
  while (!text.empty()) {
    ++line_no;
    auto nl = text.find('\n');
    auto line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    auto first = line.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) continue;
    line = line.substr(first, line.find_last_not_of(" \t\r") - first + 1);

    auto cidr = Cidr::parse(line);
    if (!cidr) {
      throw ConfigError("whitelist line " + std::to_string(line_no) + ": bad entry '" +
                        std::string(line) + "'");
    }
    entries.push_back(*cidr);
  }
  return Whitelist(std::move(entries));
}

bool Whitelist::matches(Ipv4 addr) const {
  return std::any_of(entries_.begin(), entries_.end(),
                     [addr](const Cidr& c) { return c.contains(addr); });
}

WhitelistResult apply_whitelist(const std::vector<FlowRecord>& flows, const Whitelist& wl) {
  WhitelistResult out;
  out.kept.reserve(flows.size());
  for (const auto& f : flows) {
    if (wl.matches(f.dip)) {
      ++out.dropped_count;
    } else {
      out.kept.push_back(f);
    }
  }
  return out;
}

FilterOutput split_handshake(const std::vector<FlowRecord>& flows) {
  FilterOutput out;
  for (const auto& f : flows) {
    (is_failed_handshake(f) ? out.failed : out.clean).push_back(f);
  }
  return out;
}

}  // namespace botwatch
