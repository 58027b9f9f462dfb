#pragma once

#include <vector>

#include "botwatch/classifier.h"
#include "botwatch/config.h"
#include "botwatch/correlator.h"
#include "botwatch/filter.h"

namespace botwatch {

/// Output of the filter and classifier stages.
struct StagedFlows {
  std::vector<FlowRecord> failed;
  LabeledStreams labeled;
  std::size_t ingested = 0;
  std::size_t whitelisted = 0;

  /// Every post-whitelist flow: the clean streams followed by the failures.
  std::vector<FlowRecord> kept() const;
};

StagedFlows stage_flows(const std::vector<FlowRecord>& flows, const Whitelist& wl);

/// Full detection run: filter, classify, monitor both paths, score
/// activity per window, correlate. Deterministic and order-insensitive.
BotnetReport run_detection(const std::vector<FlowRecord>& flows, const Whitelist& wl,
                           const DetectorConfig& cfg, const Cidr& internal);

}  // namespace botwatch
