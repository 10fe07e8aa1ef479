#include "divis/scan.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <set>
#include <thread>

#include "divis/dual.hpp"
#include "divis/errors.hpp"

namespace divis {
namespace {

constexpr double kGridMatchTol = 1e-9;

unsigned worker_count(std::size_t jobs) {
  unsigned n = std::thread::hardware_concurrency();
  if (n == 0) n = 1;
  if (const char* env = std::getenv("DIVIS_THREADS")) {
    const long v = std::strtol(env, nullptr, 10);
    if (v >= 1 && v <= 256) n = static_cast<unsigned>(v);
  }
  if (jobs < n) n = static_cast<unsigned>(jobs);
  return std::max(1u, n);
}

std::optional<std::size_t> grid_index_of(const std::vector<TGridPoint>& grid, double t) {
  auto it = std::lower_bound(grid.begin(), grid.end(), t - kGridMatchTol,
                             [](const TGridPoint& p, double v) { return p.t < v; });
  if (it == grid.end() || std::abs(it->t - t) > kGridMatchTol) return std::nullopt;
  return static_cast<std::size_t>(it - grid.begin());
}

}  // namespace

std::vector<TGridPoint> make_t_grid(double t_max, int n_max, double mesh) {
  if (!(t_max >= 1.0)) fail(errc::invalid_argument, "t_max must be at least 1");
  if (n_max < 1 || n_max > 12)
    fail(errc::invalid_argument, "n_max must lie in [1, 12]");
  if (!(mesh >= 1e-3) || !(mesh > 0.0) || mesh > 0.5)
    fail(errc::invalid_argument, "mesh must lie in [1e-3, 0.5]");

  std::vector<TGridPoint> pts;
  std::set<std::pair<long long, long long>> seen;
  for (long long l = 1; l <= n_max; ++l) {
    const long long m_cap = static_cast<long long>(std::floor(t_max * static_cast<double>(l) + 1e-9));
    for (long long m = 1; m <= m_cap; ++m) {
      const Rational q{m, l};
      if (!seen.insert({q.num, q.den}).second) continue;
      pts.push_back({q.value(), q});
    }
  }
  for (long long k = 1; static_cast<double>(k) * mesh <= t_max + 1e-12; ++k)
    pts.push_back({static_cast<double>(k) * mesh, std::nullopt});

  std::sort(pts.begin(), pts.end(), [](const TGridPoint& a, const TGridPoint& b) {
    if (a.t != b.t) return a.t < b.t;
    return a.exact.has_value() && !b.exact.has_value();
  });
  std::vector<TGridPoint> out;
  for (const auto& p : pts) {
    if (!out.empty() && p.t - out.back().t < kGridMatchTol) {
      if (!out.back().exact && p.exact) out.back() = p;
      continue;
    }
    out.push_back(p);
  }
  return out;
}

LambdaReport lambda_scan(const Measure& mu, double t_max, int n_max, double mesh,
                         const FracConfig& config) {
  LambdaReport report;
  report.grid = make_t_grid(t_max, n_max, mesh);
  report.verdicts.resize(report.grid.size());
  if (report.grid.empty()) return report;

  // The first point runs alone so admissibility failures surface before
  // any threads start.
  report.verdicts[0] = fractional_power(mu, report.grid[0].t, config);

  const std::size_t jobs = report.grid.size() - 1;
  const unsigned workers = worker_count(jobs);
  if (workers <= 1) {
    for (std::size_t i = 1; i < report.grid.size(); ++i)
      report.verdicts[i] = fractional_power(mu, report.grid[i].t, config);
  } else {
    std::vector<std::exception_ptr> errors(report.grid.size());
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned wk = 0; wk < workers; ++wk) {
      pool.emplace_back([&, wk]() {
        for (std::size_t i = 1 + wk; i < report.grid.size(); i += workers) {
          try {
            report.verdicts[i] = fractional_power(mu, report.grid[i].t, config);
          } catch (...) {
            errors[i] = std::current_exception();
          }
        }
      });
    }
    for (auto& th : pool) th.join();
    for (const auto& e : errors)
      if (e) std::rethrow_exception(e);
  }

  report.summary = summarize(report.grid, report.verdicts);
  return report;
}

StructureSummary summarize(const std::vector<TGridPoint>& grid,
                           const std::vector<MembershipVerdict>& verdicts) {
  if (grid.size() != verdicts.size())
    fail(errc::invalid_argument, "grid and verdict lists differ in length");
  StructureSummary s;
  if (grid.empty()) return s;

  const auto member = [&](std::size_t i) {
    return verdicts[i].verdict == Verdict::Member;
  };

  s.all_member = true;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (verdicts[i].verdict == Verdict::Inconclusive) ++s.inconclusive_count;
    if (member(i)) {
      if (!s.min_member) s.min_member = grid[i].t;
    } else {
      s.all_member = false;
    }
  }

  std::size_t run_start = grid.size();
  for (std::size_t i = grid.size(); i-- > 0;) {
    if (!member(i)) break;
    run_start = i;
  }
  if (run_start == 0)
    s.tail_start = grid.front().t;
  else if (run_start + 1 < grid.size())
    s.tail_start = grid[run_start].t;

  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (!member(i)) continue;
    for (std::size_t j = i; j < grid.size(); ++j) {
      if (!member(j)) continue;
      const double sum = grid[i].t + grid[j].t;
      if (sum > grid.back().t + kGridMatchTol) break;
      const auto idx = grid_index_of(grid, sum);
      if (idx && verdicts[*idx].verdict == Verdict::NonMember)
        s.semigroup_violations.emplace_back(grid[i].t, grid[j].t);
    }
  }
  return s;
}

double t0_lower_bound(const Measure& mu) {
  if (mu.group().kind() == GroupKind::Cyclic)
    fail(errc::wrong_group,
         "the zero-order bound needs a connected dual; cyclic duals are discrete");
  const auto zeros = find_zeros(mu);
  if (zeros.empty())
    fail(errc::no_zeros,
         "characteristic function has no zeros; use winding constraints or a scan instead");
  double best = 0.0;
  for (const auto& z : zeros) best = std::max(best, 1.0 / static_cast<double>(z.order));
  return best;
}

T0Ladder t0_ladder(const Measure& mu, const ZeroPoint& zero, double t) {
  if (!(t > 0.0)) fail(errc::invalid_argument, "t must be positive");
  T0Ladder ladder;
  ladder.t = t;
  for (int e = 5; e <= 20; ++e) {
    const double s = std::ldexp(1.0, -e);
    ladder.s.push_back(s);
    ladder.ratio.push_back(std::pow(std::abs(char_fn(mu, zero.location + s)), t) / s);
  }
  return ladder;
}

ConstraintSet winding_constraints(long long w) {
  ConstraintSet c;
  c.winding = w;
  if (w == 0) return c;
  c.obstructed = true;
  const long long a = std::llabs(w);
  for (long long d = 1; d <= a; ++d)
    if (a % d == 0) c.divisor_union.push_back(d);
  c.intersection_lattice = a;
  c.lower_bound = 1.0 / static_cast<double>(a);
  return c;
}

bool rational_in_constraints(const Rational& q, const ConstraintSet& c) {
  if (!c.obstructed) return true;
  return c.intersection_lattice % q.den == 0;
}

}  // namespace divis
