#include "botwatch/synth.h"

#include <algorithm>
#include <cmath>
#include <iterator>
#include <map>
#include <set>

#include "botwatch/config.h"

namespace botwatch::synth {
namespace {

constexpr Micros kPatBin = 60 * kMicrosPerSecond;

struct Shape {
  double nbpp;
  double nbps;
  double npkts;
};

std::string host_list(const std::vector<HostId>& hosts) {
  std::string out;
  for (auto h : hosts) {
    if (!out.empty()) out += ',';
    out += h.to_string();
  }
  return out;
}

class Generator {
 public:
  explicit Generator(const ScenarioSpec& spec)
      : spec_(spec),
        rng_(spec.seed),
        duration_us_(static_cast<Micros>(std::llround(spec.duration * 1e6))) {}

  Scenario run() {
    for (std::int64_t i = 0; i < spec_.benign_hosts; ++i) benign_host();
    for (const auto& p : spec_.planted) {
      switch (p.kind) {
        case PlantKind::kP2PBotGroup: p2p_group(p); break;
        case PlantKind::kIrcBotGroup: irc_group(p); break;
        case PlantKind::kScanner: scanners(p); break;
        case PlantKind::kSpammer: spammers(p); break;
      }
    }
    std::sort(flows_.begin(), flows_.end(), [](const FlowRecord& a, const FlowRecord& b) {
      return std::tie(a.start_us, a.sip, a.sport, a.dip, a.dport, a.proto, a.duration_us, a.npkts,
                      a.nbytes, a.tcp_state, a.payload_prefix) <
             std::tie(b.start_us, b.sip, b.sport, b.dip, b.dport, b.proto, b.duration_us, b.npkts,
                      b.nbytes, b.tcp_state, b.payload_prefix);
    });
    std::sort(truth_.malicious.begin(), truth_.malicious.end());
    return {std::move(flows_), std::move(truth_)};
  }

 private:
  HostId internal_host() {
    while (true) {
      Ipv4 ip((10u << 24) | static_cast<std::uint32_t>(1 + rng_.below(0xfffffe)));
      if (used_.insert(ip).second) return ip;
    }
  }

  Ipv4 external_host() {
    while (true) {
      const auto first = static_cast<std::uint32_t>(11 + rng_.below(213));  // 11..223
      if (first == 127) continue;
      Ipv4 ip((first << 24) | static_cast<std::uint32_t>(1 + rng_.below(0xfffffe)));
      if (used_.insert(ip).second) return ip;
    }
  }

  std::uint16_t ephemeral_port() { return static_cast<std::uint16_t>(32768 + rng_.below(28232)); }

  Micros any_time() { return spec_.start_us + static_cast<Micros>(rng_.below(duration_us_)); }

  // `jitter` is the full relative spread: 0.05 scales by [0.975, 1.025).
  double jittered(double v, double jitter) { return v * (1.0 + jitter / 2 * rng_.symmetric()); }

  void emit(Micros start, Proto proto, Ipv4 sip, std::uint16_t sport, Ipv4 dip,
            std::uint16_t dport, const Shape& s, TcpState state, std::string payload) {
    FlowRecord f;
    f.start_us = start;
    f.proto = proto;
    f.sip = sip;
    f.sport = sport;
    f.dip = dip;
    f.dport = dport;
    f.npkts = static_cast<std::uint64_t>(std::max(1.0, std::round(s.npkts)));
    f.nbytes = static_cast<std::uint64_t>(std::max(1.0, std::round(s.nbpp * f.npkts)));
    f.duration_us = std::max<Micros>(
        2000, static_cast<Micros>(std::llround(static_cast<double>(f.nbytes) / s.nbps * 1e6)));
    f.tcp_state = proto == Proto::kTcp ? state : TcpState::kNotTcp;
    f.payload_prefix = std::move(payload);
    flows_.push_back(std::move(f));
  }

  void scan_from(HostId host, std::int64_t targets) {
    for (std::int64_t i = 0; i < targets; ++i) {
      FlowRecord f;
      f.start_us = any_time();
      f.proto = Proto::kTcp;
      f.sip = host;
      f.sport = ephemeral_port();
      f.dip = external_host();
      f.dport = 445;
      f.npkts = 1 + rng_.below(3);  // SYN plus retransmissions
      f.nbytes = 60 * f.npkts;
      f.duration_us = static_cast<Micros>(f.npkts - 1) * 3 * kMicrosPerSecond;
      f.tcp_state = TcpState::kSynOnly;
      flows_.push_back(std::move(f));
    }
  }

  void benign_host() {
    const HostId host = internal_host();
    const double hours = spec_.duration / 3600.0;
    const auto n_flows =
        static_cast<std::int64_t>(std::llround(spec_.benign_flow_rate * hours * rng_.uniform(0.5, 1.5)));

    struct Service {
      Ipv4 server;
      Proto proto;
      std::uint16_t port;
      double level;     // typical nbps
      double pkt_size;  // typical nbpp
    };
    static constexpr std::pair<Proto, std::uint16_t> kServices[] = {
        {Proto::kTcp, 443}, {Proto::kTcp, 80}, {Proto::kUdp, 53},
        {Proto::kTcp, 993}, {Proto::kTcp, 22}, {Proto::kUdp, 123}};
    std::vector<Service> services;
    const auto n_services = 3 + rng_.below(6);
    for (std::uint64_t i = 0; i < n_services; ++i) {
      const auto& [proto, port] = kServices[rng_.below(std::size(kServices))];
      services.push_back({popular_server(), proto, port, rng_.log_uniform(500, 500000),
                          rng_.log_uniform(60, 1400)});
    }

    for (std::int64_t i = 0; i < n_flows; ++i) {
      const auto& svc = services[rng_.below(services.size())];
      Shape s{std::clamp(svc.pkt_size * rng_.log_uniform(0.5, 2.0), 40.0, 1500.0),
              svc.level * rng_.log_uniform(0.3, 3.0), rng_.log_uniform(2, 200)};
      const bool reset = svc.proto == Proto::kTcp && rng_.uniform() < 0.01;
      std::string payload;
      if (svc.port == 80) payload = "GET /index.html HTTP/1.1\r\n";
      emit(any_time(), svc.proto, host, ephemeral_port(), svc.server, svc.port, s,
           reset ? TcpState::kReset : TcpState::kEstablished, std::move(payload));
    }

    if (rng_.uniform() < spec_.benign_smtp_fraction) {
      const Ipv4 mail = mail_server();
      const auto n = 1 + rng_.below(3);
      for (std::uint64_t i = 0; i < n; ++i) {
        Shape s{rng_.log_uniform(200, 1400), rng_.log_uniform(2000, 200000), rng_.log_uniform(8, 60)};
        emit(any_time(), Proto::kTcp, host, ephemeral_port(), mail, 587, s,
             TcpState::kEstablished, "EHLO client\r\n");
      }
    }

    if (rng_.uniform() < spec_.benign_irc_fraction) irc_chatter(host);
  }

  // Interactive IRC use: a few bursts of short messages. Chat is slow, each
  // burst sticks to one typical message size and rates vary per message.
  void irc_chatter(HostId host) {
    static constexpr double kSizes[] = {60, 110, 200, 360, 650, 1200};
    const Ipv4 server = public_irc_server();
    const std::uint16_t sport = ephemeral_port();
    const auto bursts = 1 + rng_.below(3);
    for (std::uint64_t b = 0; b < bursts; ++b) {
      const Micros bin_start = burst_bin();
      const auto n = 4 + rng_.below(5);
      const double level = rng_.log_uniform(10, 10000);
      const double size = kSizes[rng_.below(std::size(kSizes))];
      for (std::uint64_t i = 0; i < n; ++i) {
        const Micros at = bin_start + static_cast<Micros>(rng_.below(50 * kMicrosPerSecond));
        Shape s{size * rng_.uniform(0.97, 1.03), level * rng_.uniform(0.05, 1.0),
                rng_.log_uniform(2, 40)};
        emit(at, Proto::kTcp, host, sport, server, 6667, s, TcpState::kEstablished,
             "PRIVMSG #lobby :hi\r\n");
      }
    }
  }

  Micros burst_bin() {
    const Micros bins = std::max<Micros>(1, duration_us_ / kPatBin);
    const Micros first_bin = (spec_.start_us + kPatBin - 1) / kPatBin;
    return (first_bin + static_cast<Micros>(rng_.below(static_cast<std::uint64_t>(bins)))) * kPatBin;
  }

  Ipv4 from_pool(std::vector<Ipv4>& pool, std::size_t cap) {
    if (pool.size() < cap && (pool.empty() || rng_.uniform() < 0.5)) {
      pool.push_back(external_host());
      return pool.back();
    }
    return pool[rng_.below(pool.size())];
  }
  Ipv4 popular_server() { return from_pool(popular_, 40); }
  Ipv4 mail_server() { return from_pool(mail_, 4); }
  Ipv4 public_irc_server() { return from_pool(irc_servers_, 2); }

  std::vector<Shape> make_template(std::int64_t points) {
    std::vector<Shape> t;
    const double base = rng_.log_uniform(2000, 40000);
    const double lowest = rng_.log_uniform(80, 300);
    double nbpp = lowest;
    for (std::int64_t k = 0; k < points; ++k) {
      t.push_back({nbpp, base * std::sqrt(nbpp / lowest), rng_.log_uniform(10, 80)});
      nbpp *= rng_.uniform(1.3, 1.8);
    }
    return t;
  }

  std::vector<HostId> hosts_for(const PlantedSpec& p) {
    std::vector<HostId> hosts;
    for (std::int64_t i = 0; i < p.size; ++i) hosts.push_back(internal_host());
    return hosts;
  }

  void record(const PlantedSpec& p, std::vector<HostId> hosts, bool malicious) {
    std::sort(hosts.begin(), hosts.end());
    if (malicious) truth_.malicious.insert(truth_.malicious.end(), hosts.begin(), hosts.end());
    truth_.planted.push_back({p.kind, std::move(hosts)});
  }

  void p2p_group(const PlantedSpec& p) {
    const auto hosts = hosts_for(p);
    const Proto proto = rng_.uniform() < 0.5 ? Proto::kUdp : Proto::kTcp;
    const auto port = static_cast<std::uint16_t>(1024 + rng_.below(64512));
    std::vector<Ipv4> peers;
    for (std::int64_t i = 0; i < p.peers; ++i) peers.push_back(external_host());
    const auto shape = make_template(p.template_points);

    for (auto host : hosts) {
      for (auto peer : peers) {
        for (std::int64_t j = 0; j < p.flows_per_peer; ++j) {
          const auto& t = shape[static_cast<std::size_t>(j % p.template_points)];
          Shape s{jittered(t.nbpp, p.jitter), jittered(t.nbps, p.jitter),
                  jittered(t.npkts, p.jitter)};
          emit(any_time(), proto, host, ephemeral_port(), peer, port, s, TcpState::kEstablished,
               {});
        }
      }
      scan_from(host, p.scan_targets);
    }
    record(p, hosts, p.scan_targets > 0);
  }

  void irc_group(const PlantedSpec& p) {
    const auto hosts = hosts_for(p);
    const Ipv4 server = external_host();
    std::vector<std::uint16_t> sports;
    for (std::size_t i = 0; i < hosts.size(); ++i) sports.push_back(ephemeral_port());
    const auto shape = make_template(p.flows_per_push);

    std::set<Micros> bins;
    const Micros available = std::max<Micros>(1, duration_us_ / kPatBin);
    while (static_cast<Micros>(bins.size()) < std::min<Micros>(p.pushes, available)) {
      bins.insert(burst_bin());
    }
    for (Micros bin : bins) {
      const Micros push_at = bin + static_cast<Micros>(rng_.below(15 * kMicrosPerSecond));
      for (std::size_t h = 0; h < hosts.size(); ++h) {
        for (const auto& t : shape) {
          const Micros at = push_at + static_cast<Micros>(rng_.below(40 * kMicrosPerSecond));
          Shape s{jittered(t.nbpp, p.jitter), jittered(t.nbps, p.jitter),
                  jittered(t.npkts, p.jitter)};
          emit(at, Proto::kTcp, hosts[h], sports[h], server, 6667, s, TcpState::kEstablished,
               "PRIVMSG #cc :ok\r\n");
        }
      }
    }
    for (auto host : hosts) scan_from(host, p.scan_targets);
    record(p, hosts, p.scan_targets > 0);
  }

  void scanners(const PlantedSpec& p) {
    const auto hosts = hosts_for(p);
    for (auto host : hosts) scan_from(host, p.scan_targets);
    record(p, hosts, p.scan_targets > 0);
  }

  void spammers(const PlantedSpec& p) {
    const auto hosts = hosts_for(p);
    for (auto host : hosts) {
      std::vector<Ipv4> servers;
      for (std::int64_t i = 0; i < p.smtp_servers; ++i) servers.push_back(external_host());
      for (std::int64_t i = 0; i < p.smtp_flows; ++i) {
        Shape s{rng_.log_uniform(300, 1400), rng_.log_uniform(5000, 200000),
                rng_.log_uniform(8, 40)};
        emit(any_time(), Proto::kTcp, host, ephemeral_port(),
             servers[static_cast<std::size_t>(i % p.smtp_servers)], 25, s,
             TcpState::kEstablished, "EHLO mail\r\n");
      }
      scan_from(host, p.scan_targets);
    }
    const bool flagged = p.smtp_servers >= 5 || p.smtp_flows >= 50 || p.scan_targets > 0;
    record(p, hosts, flagged);
  }

  const ScenarioSpec& spec_;
  Xorshift64Star rng_;
  Micros duration_us_;
  std::set<Ipv4> used_;
  std::vector<Ipv4> popular_, mail_, irc_servers_;
  std::vector<FlowRecord> flows_;
  GroundTruth truth_;
};

std::optional<PlantKind> parse_kind(std::string_view s) {
  for (auto k : {PlantKind::kP2PBotGroup, PlantKind::kIrcBotGroup, PlantKind::kScanner,
                 PlantKind::kSpammer}) {
    if (s == to_string(k)) return k;
  }
  return std::nullopt;
}

}  // namespace

Xorshift64Star::Xorshift64Star(std::uint64_t seed) {
  std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  state_ = z ^ (z >> 31);
  if (state_ == 0) state_ = 0x9E3779B97F4A7C15ULL;
}

std::uint64_t Xorshift64Star::next() {
  state_ ^= state_ >> 12;
  state_ ^= state_ << 25;
  state_ ^= state_ >> 27;
  return state_ * 0x2545F4914F6CDD1DULL;
}

double Xorshift64Star::uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

double Xorshift64Star::uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

double Xorshift64Star::log_uniform(double lo, double hi) {
  return lo * std::exp(std::log(hi / lo) * uniform());
}

std::uint64_t Xorshift64Star::below(std::uint64_t n) {
  if (n == 0) return 0;
  return static_cast<std::uint64_t>(uniform() * static_cast<double>(n)) % n;
}

double Xorshift64Star::symmetric() { return 2.0 * uniform() - 1.0; }

std::string_view to_string(PlantKind k) {
  switch (k) {
    case PlantKind::kP2PBotGroup: return "p2p_bot_group";
    case PlantKind::kIrcBotGroup: return "irc_bot_group";
    case PlantKind::kScanner: return "scanner";
    case PlantKind::kSpammer: return "spammer";
  }
  return "scanner";
}

PlantedSpec planted_defaults(PlantKind kind) {
  PlantedSpec p;
  p.kind = kind;
  switch (kind) {
    case PlantKind::kP2PBotGroup:
      p.size = 3;
      p.scan_targets = 120;
      break;
    case PlantKind::kIrcBotGroup:
      p.size = 4;
      break;
    case PlantKind::kScanner:
      p.size = 1;
      p.scan_targets = 200;
      break;
    case PlantKind::kSpammer:
      p.size = 1;
      p.smtp_servers = 10;
      p.smtp_flows = 60;
      break;
  }
  return p;
}

void check_spec(const ScenarioSpec& spec) {
  auto require = [](bool ok, const std::string& what) {
    if (!ok) throw InvalidSpec(what);
  };
  require(std::isfinite(spec.duration) && spec.duration >= 1.0 && spec.duration <= 1e8,
          "duration must be in [1, 1e8] seconds");
  require(spec.start_us >= 0, "start must be >= 0");
  require(spec.benign_hosts >= 0 && spec.benign_hosts <= 100000,
          "benign_hosts must be in [0, 100000]");
  require(std::isfinite(spec.benign_flow_rate) && spec.benign_flow_rate >= 0 &&
              spec.benign_flow_rate <= 1e5,
          "benign_flow_rate must be in [0, 1e5]");
  require(spec.benign_irc_fraction >= 0 && spec.benign_irc_fraction <= 1,
          "benign_irc_fraction must be in [0,1]");
  require(spec.benign_smtp_fraction >= 0 && spec.benign_smtp_fraction <= 1,
          "benign_smtp_fraction must be in [0,1]");
  for (std::size_t i = 0; i < spec.planted.size(); ++i) {
    const auto& p = spec.planted[i];
    const std::string at = "planted." + std::to_string(i) + ".";
    require(p.size >= 0 && p.size <= 100000, at + "size must be in [0, 100000]");
    require(p.jitter >= 0 && p.jitter <= 0.5, at + "jitter must be in [0, 0.5]");
    require(p.template_points >= 1 && p.template_points <= 64,
            at + "template_points must be in [1, 64]");
    require(p.peers >= 0 && p.peers <= 10000, at + "peers must be in [0, 10000]");
    require(p.flows_per_peer >= 0 && p.flows_per_peer <= 10000,
            at + "flows_per_peer must be in [0, 10000]");
    require(p.pushes >= 0 && p.pushes <= 10000, at + "pushes must be in [0, 10000]");
    require(p.flows_per_push >= 1 && p.flows_per_push <= 64,
            at + "flows_per_push must be in [1, 64]");
    require(p.scan_targets >= 0 && p.scan_targets <= 1000000,
            at + "scan_targets must be in [0, 1000000]");
    require(p.smtp_servers >= 0 && p.smtp_flows >= 0, at + "smtp counts must be >= 0");
    require(p.smtp_flows == 0 || p.smtp_servers >= 1, at + "smtp_flows needs smtp_servers >= 1");
  }
}

ScenarioSpec parse_spec(std::string_view text) {
  std::vector<KeyValue> entries;
  try {
    entries = parse_key_values(text);
  } catch (const ConfigError& e) {
    throw InvalidSpec(e.what());
  }

  ScenarioSpec spec;
  std::map<std::int64_t, std::vector<const KeyValue*>> planted;
  try {
    for (const auto& kv : entries) {
      if (kv.key.starts_with("planted.")) {
        auto rest = std::string_view(kv.key).substr(8);
        auto dot = rest.find('.');
        KeyValue index{kv.key, std::string(rest.substr(0, dot)), kv.line};
        if (dot == std::string_view::npos) throw InvalidSpec("line " + std::to_string(kv.line) + ": bad key " + kv.key);
        const auto n = parse_integer(index);
        if (n < 0) throw InvalidSpec("line " + std::to_string(kv.line) + ": negative planted index");
        planted[n].push_back(&kv);
      } else if (kv.key == "seed") {
        spec.seed = static_cast<std::uint64_t>(parse_integer(kv));
      } else if (kv.key == "duration") {
        spec.duration = parse_decimal(kv);
      } else if (kv.key == "start") {
        spec.start_us = static_cast<Micros>(std::llround(parse_decimal(kv) * 1e6));
      } else if (kv.key == "benign_hosts") {
        spec.benign_hosts = parse_integer(kv);
      } else if (kv.key == "benign_flow_rate") {
        spec.benign_flow_rate = parse_decimal(kv);
      } else if (kv.key == "benign_irc_fraction") {
        spec.benign_irc_fraction = parse_decimal(kv);
      } else if (kv.key == "benign_smtp_fraction") {
        spec.benign_smtp_fraction = parse_decimal(kv);
      } else {
        throw InvalidSpec("line " + std::to_string(kv.line) + ": unknown key " + kv.key);
      }
    }

    for (const auto& [index, kvs] : planted) {
      const KeyValue* kind_kv = nullptr;
      for (const auto* kv : kvs) {
        if (kv->key.ends_with(".kind")) kind_kv = kv;
      }
      if (kind_kv == nullptr) {
        throw InvalidSpec("planted." + std::to_string(index) + " has no kind");
      }
      auto kind = parse_kind(kind_kv->value);
      if (!kind) throw InvalidSpec("unknown planted kind '" + kind_kv->value + "'");
      PlantedSpec p = planted_defaults(*kind);
      for (const auto* kv : kvs) {
        const auto field = kv->key.substr(kv->key.find('.', 8) + 1);
        if (field == "kind") continue;
        if (field == "jitter") {
          p.jitter = parse_decimal(*kv);
          continue;
        }
        const std::map<std::string_view, std::int64_t*> ints = {
            {"size", &p.size},
            {"template_points", &p.template_points},
            {"peers", &p.peers},
            {"flows_per_peer", &p.flows_per_peer},
            {"pushes", &p.pushes},
            {"flows_per_push", &p.flows_per_push},
            {"scan_targets", &p.scan_targets},
            {"smtp_servers", &p.smtp_servers},
            {"smtp_flows", &p.smtp_flows}};
        auto it = ints.find(field);
        if (it == ints.end()) throw InvalidSpec("line " + std::to_string(kv->line) + ": unknown key " + kv->key);
        *it->second = parse_integer(*kv);
      }
      spec.planted.push_back(p);
    }
  } catch (const ConfigError& e) {
    throw InvalidSpec(e.what());
  }
  check_spec(spec);
  return spec;
}

Cidr internal_network() { return Cidr(Ipv4(10u << 24), 8); }

Scenario generate(const ScenarioSpec& spec) {
  check_spec(spec);
  return Generator(spec).run();
}

std::string write_truth(const GroundTruth& truth) {
  std::string out;
  for (std::size_t i = 0; i < truth.planted.size(); ++i) {
    const auto prefix = "planted." + std::to_string(i) + ".";
    out += prefix + "kind = " + std::string(to_string(truth.planted[i].kind)) + "\n";
    out += prefix + "hosts = " + host_list(truth.planted[i].hosts) + "\n";
  }
  out += "malicious = " + host_list(truth.malicious) + "\n";
  return out;
}

GroundTruth parse_truth(std::string_view text) {
  auto parse_hosts = [](const std::string& list) {
    std::vector<HostId> hosts;
    std::string_view rest = list;
    while (!rest.empty()) {
      auto comma = rest.find(',');
      auto ip = Ipv4::parse(rest.substr(0, comma));
      if (!ip) throw InvalidSpec("bad host in truth file");
      hosts.push_back(*ip);
      rest = comma == std::string_view::npos ? std::string_view{} : rest.substr(comma + 1);
    }
    return hosts;
  };

  GroundTruth truth;
  std::map<std::int64_t, PlantedTruth> planted;
  for (const auto& kv : parse_key_values(text)) {
    if (kv.key == "malicious") {
      truth.malicious = parse_hosts(kv.value);
      continue;
    }
    if (!kv.key.starts_with("planted.")) throw InvalidSpec("unknown truth key " + kv.key);
    const auto dot = kv.key.find('.', 8);
    const auto index = std::stoll(kv.key.substr(8, dot - 8));
    const auto field = kv.key.substr(dot + 1);
    if (field == "kind") {
      auto kind = parse_kind(kv.value);
      if (!kind) throw InvalidSpec("unknown kind in truth file");
      planted[index].kind = *kind;
    } else if (field == "hosts") {
      planted[index].hosts = parse_hosts(kv.value);
    } else {
      throw InvalidSpec("unknown truth key " + kv.key);
    }
  }
  for (auto& [i, p] : planted) truth.planted.push_back(std::move(p));
  return truth;
}

ScenarioSpec benign_scenario(std::uint64_t seed, std::int64_t hosts) {
  ScenarioSpec spec;
  spec.seed = seed;
  spec.benign_hosts = hosts;
  return spec;
}

ScenarioSpec p2p_scenario(std::uint64_t seed, std::int64_t bots) {
  ScenarioSpec spec;
  spec.seed = seed;
  spec.benign_hosts = 20;
  auto group = planted_defaults(PlantKind::kP2PBotGroup);
  group.size = bots;
  spec.planted.push_back(group);
  return spec;
}

ScenarioSpec irc_scenario(std::uint64_t seed, std::int64_t bots) {
  ScenarioSpec spec;
  spec.seed = seed;
  spec.benign_hosts = 20;
  auto group = planted_defaults(PlantKind::kIrcBotGroup);
  group.size = bots;
  spec.planted.push_back(group);
  return spec;
}

}  // namespace botwatch::synth
