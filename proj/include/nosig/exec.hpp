/**
 * This code is part of nosig.
 *
 * (C) Copyright nosig contributors 2026.
 *
 * This code is licensed under the Apache License, Version 2.0. You may
 * obtain a copy of this license at http://www.apache.org/licenses/LICENSE-2.0.
 *
 * Any modifications or derivative works of this code must retain this
 * copyright notice, and modified files need to carry a notice indicating
 * that they have been altered from the originals.
 */

#ifndef NOSIG_EXEC_HPP
#define NOSIG_EXEC_HPP

#include <exception>
#include <utility>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace nosig {

/// Serial is the reference implementation; Parallel must produce bitwise
/// identical results because every loop body derives its randomness from
/// the item index alone.
enum class ExecPolicy { Serial, Parallel };

namespace exec {

inline int max_threads() {
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

/// Runs body(i) for i in [0, n). Exceptions thrown by any item are
/// captured and the first one rethrown after the loop joins.
template <typename Body>
void for_each(ExecPolicy policy, long long n, Body &&body) {
  if (policy == ExecPolicy::Serial) {
    for (long long i = 0; i < n; ++i)
      body(i);
    return;
  }
  std::exception_ptr first_error;
#ifdef _OPENMP
#pragma omp parallel for schedule(static)
#endif
  for (long long i = 0; i < n; ++i) {
    if (first_error)
      continue;
    try {
      body(i);
    } catch (...) {
#ifdef _OPENMP
#pragma omp critical(nosig_exec_error)
#endif
      {
        if (!first_error)
          first_error = std::current_exception();
      }
    }
  }
  if (first_error)
    std::rethrow_exception(first_error);
}

/// Minimum of value(i) over i in [0, n); ties resolved to the lowest
/// index so both policies agree exactly.
template <typename Value>
std::pair<long long, double> min_reduce(ExecPolicy policy, long long n,
                                        Value &&value) {
  std::vector<double> results(static_cast<std::size_t>(n));
  for_each(policy, n,
           [&](long long i) { results[static_cast<std::size_t>(i)] = value(i); });
  long long best = 0;
  for (long long i = 1; i < n; ++i)
    if (results[static_cast<std::size_t>(i)] <
        results[static_cast<std::size_t>(best)])
      best = i;
  return {best, results[static_cast<std::size_t>(best)]};
}

/// Number of i in [0, n) with pred(i) true.
template <typename Pred>
long long count(ExecPolicy policy, long long n, Pred &&pred) {
  std::vector<char> hits(static_cast<std::size_t>(n), 0);
  for_each(policy, n, [&](long long i) {
    hits[static_cast<std::size_t>(i)] = pred(i) ? 1 : 0;
  });
  long long total = 0;
  for (char h : hits)
    total += h;
  return total;
}

} // namespace exec
} // namespace nosig

#endif
