#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <vector>

#include "fof/types.hpp"

// Independent reference computations for the tests.  Everything here is
// deliberately naive (enumeration, plain-arithmetic sums) and stays out of
// the library's code paths.

namespace oracle {

// sum over compositions of n into l positive parts of
// (n!/l!) prod_k Gamma(n_k - a) / (n_k! Gamma(1 - a))
double stirling_bruteforce(std::uint32_t n, std::uint32_t l, double a);

// (1/(l! a^l)) sum_k (-1)^k C(l,k) prod_{i=0}^{n-1} (i - a k)
double stirling_alternating(std::uint32_t n, std::uint32_t l, double a);

// every set partition of [n] as a canonical assignment (restricted growth)
std::vector<fof::ClusterAssignment> all_partitions(std::uint32_t n);

// every canonical completion of the given prefix to length n
std::vector<fof::ClusterAssignment> all_completions(const fof::ClusterAssignment& prefix,
                                                    std::uint32_t n);

// n! / (l! * prod_k n_k!): canonical assignments per multiset of sizes times
// l! is the number of labelled z sequences mapping to the same (n_k) multiset
double partition_multiplicity(const fof::ClusterAssignment& assign);

double poisson_pmf(std::uint64_t k, double lambda);
double hypergeometric_pmf(std::uint64_t k, std::uint64_t population,
                          std::uint64_t successes, std::uint64_t draws);

// total variation distance between two (possibly unnormalized) histograms
double tv_distance(const std::map<std::vector<std::uint64_t>, double>& h1,
                   const std::map<std::vector<std::uint64_t>, double>& h2);

}  // namespace oracle
