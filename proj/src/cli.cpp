#include "botwatch/cli.h"

#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

#include "CLI11.hpp"
#include "botwatch/activity.h"
#include "botwatch/config.h"
#include "botwatch/ingest.h"
#include "botwatch/irc_monitor.h"
#include "botwatch/kernels.h"
#include "botwatch/pipeline.h"
#include "botwatch/synth.h"

namespace botwatch::cli {
namespace {

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) throw IoError("error reading " + path);
  return buf.str();
}

void write_file(const std::string& path, const std::string& data) {
  std::ofstream outf(path, std::ios::binary | std::ios::trunc);
  if (!outf) throw IoError("cannot write " + path);
  outf << data;
  if (!outf.flush()) throw IoError("error writing " + path);
}

void emit(const std::string& path, const std::string& data, std::ostream& out) {
  if (path.empty() || path == "-") {
    out << data;
  } else {
    write_file(path, data);
  }
}

std::vector<FlowRecord> load_flows(const std::vector<std::string>& paths) {
  std::vector<FlowRecord> flows;
  for (const auto& path : paths) {
    try {
      auto part = parse_flow_file(read_file(path));
      flows.insert(flows.end(), std::make_move_iterator(part.begin()),
                   std::make_move_iterator(part.end()));
    } catch (const IngestError& e) {
      throw IngestError(path + ": " + e.what());
    }
  }
  return flows;
}

DetectorConfig load_config(const std::string& path) {
  if (path.empty()) return default_config();
  try {
    return parse_config(read_file(path));
  } catch (const ConfigError& e) {
    throw ConfigError(path + ": " + e.what());
  }
}

Whitelist load_whitelist(const std::string& path) {
  if (path.empty()) return {};
  return Whitelist::parse(read_file(path));
}

Cidr parse_internal(const std::string& text) {
  auto cidr = Cidr::parse(text);
  if (!cidr) throw ConfigError("--internal: bad CIDR '" + text + "'");
  return *cidr;
}

std::string fmt_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  return buf;
}

// Per-window activity over flows that already passed the whitelist. Failed
// attempts are recognized from tcp_state, so classify outputs compose.
std::vector<std::pair<WindowIndex, ActivityResult>> activity_by_window(
    const std::vector<FlowRecord>& flows, const DetectorConfig& cfg, const Cidr& internal) {
  std::vector<std::pair<WindowIndex, ActivityResult>> out;
  for (const auto& slice : window_partition(flows, cfg.window_us())) {
    std::vector<FlowRecord> failed;
    for (const auto& f : slice.flows) {
      if (is_failed_handshake(f)) failed.push_back(f);
    }
    out.emplace_back(slice.window, assess_activity(slice.flows, failed, cfg, internal));
  }
  return out;
}

struct Options {
  std::vector<std::string> flows;
  std::string whitelist;
  std::string config;
  std::string internal;
  std::string out;
  std::string spec;
  std::string path = "p2p";
  std::int64_t seed = -1;
};

int cmd_detect(const Options& o, std::ostream& out) {
  const auto cfg = load_config(o.config);
  const auto internal = parse_internal(o.internal);
  const auto wl = load_whitelist(o.whitelist);
  const auto flows = load_flows(o.flows);
  emit(o.out, report_to_json(run_detection(flows, wl, cfg, internal)), out);
  return kExitOk;
}

int cmd_classify(const Options& o, std::ostream& out) {
  const auto wl = load_whitelist(o.whitelist);
  const auto staged = stage_flows(load_flows(o.flows), wl);
  write_file(o.out + ".irc.csv", write_flow_file(staged.labeled.irc));
  write_file(o.out + ".http.csv", write_flow_file(staged.labeled.http));
  write_file(o.out + ".other.csv", write_flow_file(staged.labeled.other));
  write_file(o.out + ".failed.csv", write_flow_file(staged.failed));
  out << "ingested " << staged.ingested << " whitelisted " << staged.whitelisted << " failed "
      << staged.failed.size() << " irc " << staged.labeled.irc.size() << " http "
      << staged.labeled.http.size() << " other " << staged.labeled.other.size() << "\n";
  return kExitOk;
}

int cmd_scan_score(const Options& o, std::ostream& out) {
  const auto cfg = load_config(o.config);
  const auto internal = parse_internal(o.internal);
  const auto flows = load_flows(o.flows);
  std::string csv = "window,host,C,m,s1,s2,s3,fhs,fls,osd_flagged,isd_S,isd_flagged\n";
  for (const auto& [window, activity] : activity_by_window(flows, cfg, internal)) {
    for (const auto& h : activity.hosts) {
      csv += std::to_string(window.index) + "," + h.host.to_string() + "," +
             std::to_string(h.osd.C) + "," + std::to_string(h.osd.m) + "," +
             fmt_double(h.osd.s1) + "," + fmt_double(h.osd.s2) + "," + fmt_double(h.osd.s3) +
             "," + std::to_string(h.osd.failed.fhs) + "," + std::to_string(h.osd.failed.fls) +
             "," + (h.osd_flagged ? "1" : "0") + "," + fmt_double(h.osd.isd_S) + "," +
             (h.isd_flagged ? "1" : "0") + "\n";
    }
  }
  emit(o.out, csv, out);
  return kExitOk;
}

int cmd_spam_score(const Options& o, std::ostream& out) {
  const auto cfg = load_config(o.config);
  const auto internal = parse_internal(o.internal);
  const auto flows = load_flows(o.flows);
  std::string csv = "window,host,smtp_flows,distinct_servers,flagged\n";
  for (const auto& [window, activity] : activity_by_window(flows, cfg, internal)) {
    for (const auto& h : activity.hosts) {
      if (h.spam.smtp_flows == 0) continue;
      csv += std::to_string(window.index) + "," + h.host.to_string() + "," +
             std::to_string(h.spam.smtp_flows) + "," + std::to_string(h.spam.distinct_servers) +
             "," + (h.spam.flagged ? "1" : "0") + "\n";
    }
  }
  emit(o.out, csv, out);
  return kExitOk;
}

int cmd_synth(const Options& o, std::ostream& out) {
  auto spec = synth::parse_spec(read_file(o.spec));
  if (o.seed >= 0) spec.seed = static_cast<std::uint64_t>(o.seed);
  const auto scenario = synth::generate(spec);
  write_file(o.out + ".flows.csv", write_flow_file(scenario.flows));
  write_file(o.out + ".truth", synth::write_truth(scenario.truth));
  out << "wrote " << scenario.flows.size() << " flows to " << o.out << ".flows.csv\n";
  return kExitOk;
}

int cmd_curves(const Options& o, std::ostream& out) {
  if (o.path != "p2p" && o.path != "irc") throw ConfigError("--path must be p2p or irc");
  const auto cfg = load_config(o.config);
  const auto wl = load_whitelist(o.whitelist);
  const auto staged = stage_flows(load_flows(o.flows), wl);
  const bool irc = o.path == "irc";
  const auto& stream = irc ? staged.labeled.irc : staged.labeled.other;

  std::vector<std::pair<std::string, Curve>> curves;
  for (const auto& slice : window_partition(stream, cfg.window_us())) {
    auto grouped = irc ? group_flows_irc(slice.flows, cfg)
                       : group_flows_p2p(slice.flows, cfg.duration_floor);
    for (const auto& g : grouped.groups) {
      curves.emplace_back("w" + std::to_string(slice.window.index) + "|" + g.key.to_string(),
                          build_curve(g.points, cfg.resample_points));
    }
  }
  emit(o.out, write_curves_csv(curves), out);
  return kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"botwatch: flow-based botnet detection by similar communication patterns"};
  app.require_subcommand(1);
  Options o;

  auto* detect = app.add_subcommand("detect", "Run the full pipeline and write a JSON report");
  detect->add_option("--flows", o.flows, "Flow CSV file(s)")->required();
  detect->add_option("--whitelist", o.whitelist, "Destination whitelist (CIDR per line)");
  detect->add_option("--config", o.config, "Detector config (key = value)");
  detect->add_option("--internal", o.internal, "Internal network CIDR, e.g. 10.0.0.0/8")
      ->required();
  detect->add_option("--out", o.out, "Report path (default: stdout)");

  auto* classify = app.add_subcommand("classify", "Filter and label flows into per-stream files");
  classify->add_option("--flows", o.flows, "Flow CSV file(s)")->required();
  classify->add_option("--whitelist", o.whitelist, "Destination whitelist");
  classify->add_option("--out", o.out, "Output prefix: <prefix>.{irc,http,other,failed}.csv")
      ->required();

  auto* scan = app.add_subcommand("scan-score", "Per-host scan scores per window as CSV");
  scan->add_option("--flows", o.flows, "Flow CSV file(s), already whitelisted")->required();
  scan->add_option("--config", o.config, "Detector config");
  scan->add_option("--internal", o.internal, "Internal network CIDR")->required();
  scan->add_option("--out", o.out, "CSV path (default: stdout)");

  auto* spam = app.add_subcommand("spam-score", "Per-host SMTP fan-out per window as CSV");
  spam->add_option("--flows", o.flows, "Flow CSV file(s), already whitelisted")->required();
  spam->add_option("--config", o.config, "Detector config");
  spam->add_option("--internal", o.internal, "Internal network CIDR")->required();
  spam->add_option("--out", o.out, "CSV path (default: stdout)");

  auto* synth_cmd = app.add_subcommand("synth", "Generate a labelled synthetic scenario");
  synth_cmd->add_option("--spec", o.spec, "Scenario spec (key = value)")->required();
  synth_cmd->add_option("--out", o.out, "Output prefix: <prefix>.flows.csv, <prefix>.truth")
      ->required();
  synth_cmd->add_option("--seed", o.seed, "Override the spec seed")->check(CLI::NonNegativeNumber);

  auto* curves = app.add_subcommand("curves", "Dump per-group nbps/nbpp curves as key,x,y CSV");
  curves->add_option("--flows", o.flows, "Flow CSV file(s)")->required();
  curves->add_option("--path", o.path, "p2p or irc (default p2p)");
  curves->add_option("--whitelist", o.whitelist, "Destination whitelist");
  curves->add_option("--config", o.config, "Detector config");
  curves->add_option("--out", o.out, "CSV path (default: stdout)");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitConfig;
  }

  try {
    if (*detect) return cmd_detect(o, out);
    if (*classify) return cmd_classify(o, out);
    if (*scan) return cmd_scan_score(o, out);
    if (*spam) return cmd_spam_score(o, out);
    if (*synth_cmd) return cmd_synth(o, out);
    if (*curves) return cmd_curves(o, out);
  } catch (const IoError& e) {
    err << "error: " << e.what() << "\n";
    return kExitIo;
  } catch (const IngestError& e) {
    err << "error: " << e.what() << "\n";
    return kExitIo;
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const synth::InvalidSpec& e) {
    err << "spec error: " << e.what() << "\n";
    return kExitConfig;
  }
  return kExitConfig;
}

}  // namespace botwatch::cli
