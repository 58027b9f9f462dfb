#include <cmath>
#include <numeric>
#include <random>

#include "botwatch/activity.h"
#include "doctest.h"
#include "helpers.h"

using namespace botwatch;
using test::flow;
using test::ip;

namespace {

// H / ln(m) by direct summation over the positive counts.
double entropy_oracle(const std::vector<std::int64_t>& counts) {
  double total = 0;
  int m = 0;
  for (auto c : counts) {
    if (c > 0) total += static_cast<double>(c), ++m;
  }
  if (m <= 1) return 0;
  double h = 0;
  for (auto c : counts) {
    if (c > 0) {
      const double p = static_cast<double>(c) / total;
      h -= p * std::log(p);
    }
  }
  return h / std::log(static_cast<double>(m));
}

std::vector<FlowRecord> repeat(const FlowRecord& f, int n) { return std::vector<FlowRecord>(n, f); }

DetectorConfig with_mode(VoteMode m) {
  auto cfg = default_config();
  cfg.osd_mode = m;
  return cfg;
}

const Cidr kInternal = *Cidr::parse("10.0.0.0/8");

}  // namespace

TEST_CASE("isd_score examples") {
  CHECK(isd_score({0, 0}, 3, 1) == 0.0);
  CHECK(isd_score({2, 5}, 3, 1) == 11.0);
  CHECK(isd_score({4, 0}, 3, 1) == 12.0);
  CHECK(isd_score({4, 0}, 3, 1) >= default_config().isd_threshold);
}

TEST_CASE("osd_s2 examples") {
  CHECK(osd_s2({3, 3}, 3, 1, 0) == 0.0);
  CHECK(osd_s2({2, 2}, 2, 1, 10) == doctest::Approx(0.6).epsilon(1e-15));
  CHECK(osd_s2({7, 0}, 1, 1, 7) == 1.0);
}

TEST_CASE("entropy examples") {
  CHECK(entropy_norm(std::vector<std::int64_t>{1, 1, 1, 1}) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(entropy_norm(std::vector<std::int64_t>{17}) == 0.0);
  CHECK(entropy_norm(std::vector<std::int64_t>{0, 17, 0}) == 0.0);
  const std::vector<std::int64_t> c{2, 1, 1};
  const double h = -(0.5 * std::log(0.5) + 2 * 0.25 * std::log(0.25));
  CHECK(h == doctest::Approx(1.039720770839918).epsilon(1e-14));
  CHECK(std::log(3.0) == doctest::Approx(1.09861228866811).epsilon(1e-14));
  CHECK(entropy_norm(c) == doctest::Approx(0.946394630357186).epsilon(1e-12));
  CHECK(entropy_norm(c) == doctest::Approx(entropy_oracle(c)).epsilon(1e-12));
  CHECK_THROWS_AS(entropy_norm(std::vector<std::int64_t>{0, 0}), AllZero);
  CHECK_THROWS_AS(entropy_norm(std::vector<std::int64_t>{}), AllZero);
}

TEST_CASE("entropy properties") {
  std::mt19937_64 rng(41);
  for (int i = 0; i < 2000; ++i) {
    std::vector<std::int64_t> counts(1 + rng() % 40);
    for (auto& c : counts) c = static_cast<std::int64_t>(rng() % 5);
    counts[rng() % counts.size()] += 1;
    const double s3 = entropy_norm(counts);
    CHECK(s3 >= 0.0);
    CHECK(s3 <= 1.0);
    CHECK(std::fabs(s3 - entropy_oracle(counts)) <= 1e-12);
    auto shuffled = counts;
    std::shuffle(shuffled.begin(), shuffled.end(), rng);
    CHECK(std::fabs(entropy_norm(shuffled) - s3) <= 1e-12);

    std::int64_t first = 0;
    bool equal = true;
    int positive = 0;
    for (auto c : counts) {
      if (c <= 0) continue;
      ++positive;
      if (first == 0) first = c;
      equal = equal && c == first;
    }
    if (positive >= 2) CHECK((std::fabs(s3 - 1.0) <= 1e-12) == equal);
  }
}

TEST_CASE("numerators are additive") {
  std::mt19937_64 rng(42);
  for (int i = 0; i < 500; ++i) {
    FailedCounts a{static_cast<std::int64_t>(rng() % 100), static_cast<std::int64_t>(rng() % 100)};
    FailedCounts b{static_cast<std::int64_t>(rng() % 100), static_cast<std::int64_t>(rng() % 100)};
    FailedCounts ab{a.fhs + b.fhs, a.fls + b.fls};
    CHECK(isd_score(ab, 3, 1) == isd_score(a, 3, 1) + isd_score(b, 3, 1));
    const std::int64_t c = ab.total() + 1;
    CHECK(osd_s2(ab, 3, 1, c) * c == doctest::Approx(osd_s2(a, 3, 1, c) * c + osd_s2(b, 3, 1, c) * c));
  }
}

TEST_CASE("count_failed splits by severity and ignores successes") {
  const auto cfg = default_config();
  std::vector<FlowRecord> flows{test::syn_only(flow("10.0.0.1", "1.1.1.1", 445)),
                                test::syn_only(flow("10.0.0.1", "1.1.1.1", 446)),
                                flow("10.0.0.1", "1.1.1.1", 445)};
  flows.push_back(test::udp(flow("10.0.0.1", "1.1.1.1", 1434)));
  auto fc = count_failed(flows, cfg);
  CHECK(fc.fhs == 1);
  CHECK(fc.fls == 1);
}

TEST_CASE("vote modes") {
  // default thresholds: 5, 0.5, 0.9
  CHECK(osd_vote(6, 0.6, 0.1, with_mode(VoteMode::kMajority)));
  CHECK_FALSE(osd_vote(6, 0.1, 0.1, with_mode(VoteMode::kAnd)));
  CHECK(osd_vote(6, 0.1, 0.1, with_mode(VoteMode::kOr)));
  CHECK_FALSE(osd_vote(6, 0.1, 0.1, with_mode(VoteMode::kMajority)));
  CHECK(osd_vote(5, 0.5, 0.9, with_mode(VoteMode::kAnd)));
  CHECK_FALSE(osd_vote(0, 0, 0, with_mode(VoteMode::kOr)));
}

TEST_CASE("vote lattice") {
  std::mt19937_64 rng(43);
  std::uniform_real_distribution<double> u(0, 1);
  for (int i = 0; i < 1000; ++i) {
    const double s1 = 10 * u(rng), s2 = u(rng), s3 = u(rng);
    const bool a = osd_vote(s1, s2, s3, with_mode(VoteMode::kAnd));
    const bool m = osd_vote(s1, s2, s3, with_mode(VoteMode::kMajority));
    const bool o = osd_vote(s1, s2, s3, with_mode(VoteMode::kOr));
    CHECK((!a || m));
    CHECK((!m || o));
  }
}

TEST_CASE("osd_scores examples") {
  const auto cfg = default_config();
  const auto host = ip("10.0.0.9");
  auto none = osd_scores(host, {}, {}, cfg);
  CHECK(none.C == 0);
  CHECK(none.s1 == 0);
  CHECK(none.s2 == 0);
  CHECK(none.s3 == 0);
  CHECK_FALSE(none.flagged);

  std::vector<FlowRecord> scans;
  for (int i = 0; i < 100; ++i) {
    auto f = test::syn_only(flow("10.0.0.9", "1.1.1.1", 80));
    f.dip = Ipv4(0x0b000000u + static_cast<std::uint32_t>(i));
    scans.push_back(f);
  }
  auto s = osd_scores(host, scans, scans, cfg);
  CHECK(s.C == 100);
  CHECK(s.m == 100);
  CHECK(s.s1 == doctest::Approx(100.0 / 360.0).epsilon(1e-15));
  CHECK(s.s3 == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(s.s2 == 1.0);  // all failed, low severity, w2 = 1
  CHECK(s.failed.fls == 100);
  CHECK(s.flagged);  // s2 and s3 vote

  const auto one = repeat(test::syn_only(flow("10.0.0.9", "1.1.1.1", 445)), 50);
  s = osd_scores(host, one, one, cfg);
  CHECK(s.m == 1);
  CHECK(s.s3 == 0.0);
  CHECK(s.s2 == 3.0);

  const auto few = repeat(test::syn_only(flow("10.0.0.9", "1.1.1.1", 445)), 9);
  CHECK_FALSE(osd_scores(host, few, few, cfg).flagged);  // below osd_min_scans
  CHECK_THROWS(osd_scores(ip("10.0.0.8"), few, few, cfg));
}

TEST_CASE("spam_detect thresholds") {
  const auto cfg = default_config();
  const auto host = ip("10.0.0.7");
  auto mail = [&](int servers, int flows, std::uint16_t port = 25) {
    std::vector<FlowRecord> out;
    for (int i = 0; i < flows; ++i) {
      auto f = flow("10.0.0.7", "1.1.1.1", port);
      f.dip = Ipv4(0x0b000000u + static_cast<std::uint32_t>(i % servers));
      out.push_back(f);
    }
    return out;
  };
  auto r = spam_detect(host, mail(1, 1), cfg);
  CHECK(r.smtp_flows == 1);
  CHECK_FALSE(r.flagged);
  r = spam_detect(host, mail(10, 60), cfg);
  CHECK(r.smtp_flows == 60);
  CHECK(r.distinct_servers == 10);
  CHECK(r.flagged);
  CHECK_FALSE(spam_detect(host, mail(4, 49), cfg).flagged);
  CHECK(spam_detect(host, mail(5, 49), cfg).flagged);
  CHECK(spam_detect(host, mail(4, 50, 587), cfg).flagged);
  CHECK(spam_detect(host, mail(10, 60, 26), cfg).smtp_flows == 0);
  auto udp_mail = mail(10, 60);
  for (auto& f : udp_mail) f = test::udp(f);
  CHECK(spam_detect(host, udp_mail, cfg).smtp_flows == 0);

  // monotone: adding mail flows never unflags
  std::mt19937_64 rng(44);
  std::vector<FlowRecord> acc;
  bool was = false;
  for (int i = 0; i < 200; ++i) {
    auto f = flow("10.0.0.7", "1.1.1.1", rng() % 2 ? 25 : 587);
    f.dip = Ipv4(0x0b000000u + static_cast<std::uint32_t>(rng() % 8));
    acc.push_back(f);
    const bool now = spam_detect(host, acc, cfg).flagged;
    CHECK((!was || now));
    was = now;
  }
}

TEST_CASE("malicious host set") {
  const auto cfg = default_config();
  std::vector<FlowRecord> all, failed;
  for (int i = 0; i < 60; ++i) {  // scanner 10.0.0.1
    auto f = test::syn_only(flow("10.0.0.1", "1.1.1.1", 445));
    f.dip = Ipv4(0x0b000000u + static_cast<std::uint32_t>(i));
    all.push_back(f);
    failed.push_back(f);
  }
  for (int i = 0; i < 60; ++i) {  // spammer 10.0.0.2 that also scans
    auto f = flow("10.0.0.2", "1.1.1.1", 25);
    f.dip = Ipv4(0x0c000000u + static_cast<std::uint32_t>(i % 10));
    all.push_back(f);
    auto s = test::syn_only(flow("10.0.0.2", "1.1.1.1", 445));
    s.dip = Ipv4(0x0d000000u + static_cast<std::uint32_t>(i));
    all.push_back(s);
    failed.push_back(s);
  }
  for (int i = 0; i < 4; ++i) {  // inbound probes at 10.0.0.3 on 445: S = 12
    auto f = test::syn_only(flow("11.9.9.9", "10.0.0.3", 445));
    all.push_back(f);
    failed.push_back(f);
  }
  all.push_back(flow("10.0.0.4", "1.1.1.1", 443));  // benign

  const auto result = assess_activity(all, failed, cfg, kInternal);
  CHECK(result.malicious == std::vector<HostId>{ip("10.0.0.1"), ip("10.0.0.2"), ip("10.0.0.3")});
  CHECK(malicious_hosts(all, failed, cfg, kInternal) == result.malicious);
  REQUIRE(result.hosts.size() == 4);
  CHECK(result.hosts[1].osd_flagged);
  CHECK(result.hosts[1].spam.flagged);
  CHECK(result.hosts[2].isd_flagged);
  CHECK(result.hosts[2].osd.isd_S == 12.0);
  CHECK_FALSE(result.hosts[3].malicious());
  CHECK(malicious_hosts({}, {}, cfg, kInternal).empty());
}
