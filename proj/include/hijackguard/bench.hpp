// Copyright 2026 the hijackguard contributors. Licensed under the
// Apache License, Version 2.0. See the LICENSE file at the root of this
// distribution or at http://www.apache.org/licenses/LICENSE-2.0

#ifndef HIJACKGUARD_BENCH_HPP
#define HIJACKGUARD_BENCH_HPP

#include <string>
#include <vector>

namespace hijackguard {

struct BenchRow {
    std::string label;
    double mean_ms = 0.0;
    double ci95_ms = 0.0;     // half-width of the 95% confidence interval
    double median_ms = 0.0;
};

struct BenchReport {
    int iterations = 0;
    std::vector<BenchRow> rows;

    const BenchRow* find(const std::string& label) const;
    std::string format() const;
};

// Micro-benchmarks the non-interactive enforcement paths:
//   - the P6 keyword check alone
//   - the full EP-AC chain on an allow path
//   - the full EP-AC chain on a P2-deny path
//   - a cached-decision SP-AC hit
// iterations must be >= 100.
BenchReport run_bench(int iterations);

} // namespace hijackguard

#endif
