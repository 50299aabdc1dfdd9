#include "bidcg/kernels.hpp"

#include <algorithm>

#include <omp.h>

namespace bidcg::kernels {
namespace {

struct PerX {
  std::optional<Separation> below;
  std::optional<Separation> above;
};

PerX separate(Solver& solver, GameId g, GameId h, GameId x, std::size_t x_index, int tb) {
  Arena& arena = solver.arena();
  const OutcomeVector gv = solver.outcome_vector(arena.sum(g, x), tb);
  const OutcomeVector hv = solver.outcome_vector(arena.sum(h, x), tb);
  PerX out;
  for (std::size_t pos = 0; pos < gv.entries().size(); ++pos) {
    const Outcome a = gv.entries()[pos], b = hv.entries()[pos];
    if (a == b) continue;
    auto& slot = a == Outcome::R ? out.below : out.above;
    if (!slot) slot = Separation{x_index, OutcomeVector::state_at(tb, pos), a, b};
    if (out.below && out.above) break;
  }
  return out;
}

bool earlier(const Separation& a, const Separation& b) {
  if (a.x_index != b.x_index) return a.x_index < b.x_index;
  return OutcomeVector::position(a.state) < OutcomeVector::position(b.state);
}

void absorb(SeparationScan& scan, const PerX& hit) {
  if (hit.below && !scan.below) scan.below = hit.below;
  if (hit.above && !scan.above) scan.above = hit.above;
}

bool done(const SeparationScan& scan, bool both) {
  return both ? (scan.below && scan.above) : (scan.below || scan.above);
}

void finish(SeparationScan& scan) {
  if (scan.below && scan.above) {
    scan.first = earlier(*scan.below, *scan.above) ? scan.below : scan.above;
  } else {
    scan.first = scan.below ? scan.below : scan.above;
  }
}

}  // namespace

std::vector<OutcomeVector> solve_outcomes(Solver& solver, std::span<const GameId> forms, int tb,
                                          Execution exec) {
  std::vector<std::optional<OutcomeVector>> slots(forms.size());
  for_each_index(forms.size(), exec, [&](std::size_t i) { slots[i] = solver.outcome_vector(forms[i], tb); });
  std::vector<OutcomeVector> out;
  out.reserve(forms.size());
  for (auto& s : slots) out.push_back(std::move(*s));
  return out;
}

SeparationScan scan_separations(Solver& solver, GameId g, GameId h, std::span<const GameId> xs,
                                int tb, Execution exec, bool both_directions) {
  SeparationScan scan;
  if (exec == Execution::Serial) {
    for (std::size_t i = 0; i < xs.size() && !done(scan, both_directions); ++i) {
      absorb(scan, separate(solver, g, h, xs[i], i, tb));
      ++scan.examined;
    }
    finish(scan);
    return scan;
  }

  // Blocks are scanned in order. Within a block every X is evaluated, then
  // hits are absorbed in index order up to the serial stopping point.
  const std::size_t block = static_cast<std::size_t>(std::max(1, omp_get_max_threads())) * 8;
  std::vector<PerX> hits;
  for (std::size_t begin = 0; begin < xs.size() && !done(scan, both_directions); begin += block) {
    const std::size_t end = std::min(xs.size(), begin + block);
    hits.assign(end - begin, PerX{});
    for_each_index(end - begin, Execution::Parallel,
                   [&](std::size_t j) { hits[j] = separate(solver, g, h, xs[begin + j], begin + j, tb); });
    for (const PerX& hit : hits) {
      if (done(scan, both_directions)) break;
      absorb(scan, hit);
      ++scan.examined;
    }
  }
  finish(scan);
  return scan;
}

}  // namespace bidcg::kernels
