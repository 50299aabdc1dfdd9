#pragma once

#include <cstddef>
#include <exception>
#include <optional>
#include <span>
#include <vector>

#include "bidcg/solver.hpp"

namespace bidcg::kernels {

/// Serial runs are the reference the OpenMP versions are tested against.
enum class Execution { Serial, Parallel };

/// Runs body(i) for i in [0, n). Parallel runs use a dynamic OpenMP schedule;
/// the first exception thrown (lowest index) is rethrown afterwards.
template <typename Body>
void for_each_index(std::size_t n, Execution exec, Body&& body) {
  if (exec == Execution::Serial) {
    for (std::size_t i = 0; i < n; ++i) body(i);
    return;
  }
  std::vector<std::exception_ptr> errors(n);
  const long long count = static_cast<long long>(n);
#pragma omp parallel for schedule(dynamic, 4)
  for (long long i = 0; i < count; ++i) {
    try {
      body(static_cast<std::size_t>(i));
    } catch (...) {
      errors[static_cast<std::size_t>(i)] = std::current_exception();
    }
  }
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

/// Outcome vectors of many forms at one total budget.
std::vector<OutcomeVector> solve_outcomes(Solver& solver, std::span<const GameId> forms, int tb,
                                          Execution exec);

/// One state where G + X and H + X have different outcomes.
struct Separation {
  std::size_t x_index = 0;
  BudgetState state;
  Outcome g_outcome = Outcome::L;
  Outcome h_outcome = Outcome::L;
};

struct SeparationScan {
  /// First separation in (X index, vector position) order.
  std::optional<Separation> first;
  /// First one with o(G+X) = R and o(H+X) = L; it refutes G >= H.
  std::optional<Separation> below;
  /// First one with o(G+X) = L and o(H+X) = R; it refutes G <= H.
  std::optional<Separation> above;
  /// Candidates X up to the stopping point.
  std::size_t examined = 0;
};

/// Scans xs in order for X separating G from H at total budget tb. Stops
/// once both directions have a separation, or after the first separation
/// when `both_directions` is false. Parallel runs evaluate blocks of X
/// concurrently and keep the earliest hits, so the whole result equals the
/// serial one.
SeparationScan scan_separations(Solver& solver, GameId g, GameId h, std::span<const GameId> xs,
                                int tb, Execution exec, bool both_directions = true);

}  // namespace bidcg::kernels
