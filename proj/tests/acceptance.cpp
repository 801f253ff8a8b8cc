// Acceptance suite: one PASS/FAIL line per criterion.
#include <chrono>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>

#include "singfold/flatmap.hpp"

using namespace singfold;

namespace {

// time limits in seconds
constexpr double kClassifierLimit = 10;
constexpr double kTablesLimit = 15 * 60;
constexpr double kRealizationLimit = 5 * 60;
constexpr double kIdentityLimit = 5 * 60;
constexpr double kTheorem2Limit = 10 * 60;
constexpr int kSamplesPerRow = 3;
constexpr int kTheorem2Points = 100;
constexpr int kTableRows = 38;

struct Outcome {
  bool ok = true;
  std::string first_failure;
  std::ostringstream notes;
  void fail(const std::string& what) {
    if (ok) first_failure = what;
    ok = false;
  }
};

using Clock = std::chrono::steady_clock;

bool report(int n, const std::string& title, double limit, const std::function<void(Outcome&)>& body) {
  Outcome o;
  auto t0 = Clock::now();
  try {
    body(o);
  } catch (const std::exception& e) {
    o.fail(std::string("exception: ") + e.what());
  }
  double secs = std::chrono::duration<double>(Clock::now() - t0).count();
  if (limit > 0 && secs >= limit) o.fail("time limit exceeded");
  std::cout << (o.ok ? "PASS" : "FAIL") << " criterion " << n << ": " << title << " [" << std::fixed;
  std::cout.precision(2);
  std::cout << secs << " s";
  if (limit > 0) std::cout << " / limit " << limit << " s";
  std::cout << "]";
  std::string notes = o.notes.str();
  if (notes.size() >= 2) notes.resize(notes.size() - 2);
  if (!notes.empty()) std::cout << " " << notes;
  if (!o.ok) std::cout << "; first failure: " << o.first_failure;
  std::cout << std::endl;
  return o.ok;
}

std::string classify(const std::string& f) { return fiber_configuration(parse_polynomial(f)).type.to_string(); }

void expect_label(Outcome& o, const std::string& f, const std::string& want, int& checked) {
  ++checked;
  std::string got = classify(f);
  if (got != want) o.fail(f + " gave " + got + ", expected " + want);
}

}  // namespace

int main() {
  bool all = true;

  all &= report(1, "classifier oracle on Klein and Arnold normal forms", kClassifierLimit, [](Outcome& o) {
    int checked = 0;
    for (int n = 2; n <= 9; ++n) expect_label(o, "X^" + std::to_string(n) + " + Y*Z", "A" + std::to_string(n - 1), checked);
    for (int n = 2; n <= 6; ++n)
      expect_label(o, "X*(Y^2 - X^" + std::to_string(n) + ") + Z^2", "D" + std::to_string(n + 2), checked);
    expect_label(o, "X^4 + Y^3 + Z^2", "E6", checked);
    expect_label(o, "X^3 + X*Y^3 + Z^2", "E7", checked);
    expect_label(o, "X^5 + Y^3 + Z^2", "E8", checked);
    for (int k = 1; k <= 8; ++k)
      expect_label(o, "x^" + std::to_string(k + 1) + " + y^2 + z^2", "A" + std::to_string(k), checked);
    for (int k = 4; k <= 8; ++k)
      expect_label(o, "x^2*y + y^" + std::to_string(k - 1) + " + z^2", "D" + std::to_string(k), checked);
    expect_label(o, "x^3 + y^4 + z^2", "E6", checked);
    expect_label(o, "x^3 + x*y^3 + z^2", "E7", checked);
    expect_label(o, "x^3 + y^5 + z^2", "E8", checked);
    o.notes << checked << " forms; ";
  });

  all &= report(2, "configuration tables, quotient and pre-quotient columns", kTablesLimit, [](Outcome& o) {
    int rows = 0, points = 0, pre = 0;
    for (const auto& id : case_ids()) {
      const CaseDescriptor& d = descriptor(id);
      // the pre-quotient column is required for every case but the F4 one
      const bool want_pre = id != "E6F4E7";
      for (const auto& s : d.strata) {
        ++rows;
        auto pts = sample_stratum(id, s.id, kSamplesPerRow, 0);
        if (static_cast<int>(pts.size()) < kSamplesPerRow) o.fail(id + " " + s.id + ": too few samples");
        for (const auto& t : pts) {
          ++points;
          TypeMultiset got = fiber_configuration(quotient_at(d, t), d.quotient_variables).type;
          if (got != s.quotient_type)
            o.fail(id + " " + s.id + " at " + format_point(d, t) + ": " + got.to_string());
          if (want_pre) {
            if (s.prequotient.empty()) o.fail(id + " " + s.id + ": no pre-quotient entry");
            ++pre;
            PreConfiguration c = prequotient_configuration(d, t);
            if (!(c == PreConfiguration::parse(s.prequotient)))
              o.fail(id + " " + s.id + " pre-quotient at " + format_point(d, t) + ": " + c.to_string());
          }
        }
      }
    }
    if (rows != kTableRows) o.fail(std::to_string(rows) + " rows instead of 38");
    o.notes << rows << " rows, " << points << " points, " << pre << " pre-quotient checks; ";
  });

  all &= report(3, "realization tables and the F4 census", kRealizationLimit, [](Outcome& o) {
    const std::map<std::string, std::size_t> counts = {
        {"A3B2D4", 6}, {"A5B3D5", 24}, {"D4C3D6", 24}, {"D4G2E6", 8}, {"D4G2E7", 8}};
    for (const auto& [id, n] : counts) {
      RealizationReport r = match_realizations(id);
      if (!r.ok()) o.fail(id + ": " + (r.failures.empty() ? "" : r.failures.front()));
      if (r.subsystems.size() != n) o.fail(id + ": " + std::to_string(r.subsystems.size()) + " realizations");
    }
    const std::set<std::string> census_want = {"A1+A1+A1", "A1+A1+A1+A1", "A2+A1+A1+A1", "A3+A1",
                                               "A3+A1+A1", "A3+A2+A1",    "A5",          "A5+A1",
                                               "D4+A1",    "D5+A1",       "D6",          "E7"};
    const CaseMeta m = case_meta("E6F4E7");
    const RootSystem phi = build_root_system(m.quotient_type);
    std::set<std::string> census;
    auto subs = enumerate_subsystems(phi, theta_roots(m, phi));
    for (const auto& s : subs) census.insert(s.type.to_string());
    if (census != census_want) o.fail("E6F4E7 census has " + std::to_string(census.size()) + " types");
    std::set<std::string> rows;
    for (const auto& s : descriptor("E6F4E7").strata) rows.insert(s.quotient_type.to_string());
    if (rows != census) o.fail("E6F4E7 census differs from the table rows");
    o.notes << "E6F4E7: " << subs.size() << " subsystems, " << census.size() << " types; ";
  });

  all &= report(4, "symbolic identities: relations, iso, equivariance, quotient derivation", kIdentityLimit,
                [](Outcome& o) {
                  int lines = 0;
                  auto take = [&](const std::string& what, const CheckReport& r) {
                    lines += static_cast<int>(r.lines.size());
                    for (const auto& l : r.lines)
                      if (!l.ok) o.fail(what + ": " + l.what + (l.detail.empty() ? "" : " (" + l.detail + ")"));
                  };
                  for (const auto& id : case_ids()) {
                    take(id + " relations", verify_flat_relations(id));
                    take(id + " iso", verify_iso(id));
                    take(id + " equivariance", verify_equivariance(id));
                    take(id + " quotient", derive_quotient_chart(id).checks);
                  }
                  o.notes << lines << " identities; ";
                });

  all &= report(5, "correspondence for every subsystem (witness route, stratum route for E6F4E7)", 0,
                [](Outcome& o) {
                  for (const auto& id : case_ids()) {
                    CorrespondenceReport r = correspondence_check(id, kSamplesPerRow, 0);
                    if (r.witness_route_available == (id == "E6F4E7")) o.fail(id + ": wrong route");
                    for (const auto& e : r.entries)
                      if (!e.match)
                        o.fail(id + " #" + std::to_string(e.index) + " " + e.type.to_string() + ": got " +
                               e.configuration.to_string() + " in " + e.stratum + e.error);
                    if (r.distinct_types != r.expected_distinct_types) o.fail(id + ": type count differs");
                    o.notes << id << " " << r.entries.size() << "; ";
                  }
                });

  all &= report(6, "every quotient fiber is singular, 100 points per case", kTheorem2Limit, [](Outcome& o) {
    for (const auto& id : case_ids()) {
      CheckReport r = theorem2_spotcheck(id, kTheorem2Points, 0);
      for (const auto& l : r.lines)
        if (!l.ok) o.fail(id + ": " + l.what + " " + l.detail);
    }
    o.notes << case_ids().size() * kTheorem2Points << " points; ";
  });

  return all ? 0 : 1;
}
