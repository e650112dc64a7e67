#pragma once

#include <functional>
#include <string>

namespace fuzzrank {

// Writes "[fuzzrank] warning: <msg>" to stderr, once per distinct message
// per process. Warnings never go into data files, so output files stay
// byte-reproducible.
void warn(const std::string& msg);

// Runs fn(0..n-1) on up to `jobs` threads (serial when jobs <= 1).
// Tasks must be independent and write only to their own index slot; the
// partitioning is unspecified, so correctness must not depend on it.
void parallel_for(std::size_t n, int jobs, const std::function<void(std::size_t)>& fn);

// Default worker count: hardware concurrency, at least 1.
int default_jobs();

// Shortest round-trip decimal form of a double (same digits every run).
std::string format_double(double v);

}  // namespace fuzzrank
