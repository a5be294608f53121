#pragma once

#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "fof/extrapolate.hpp"
#include "fof/inference.hpp"
#include "fof/types.hpp"

namespace fof {

struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Term tallies in order of first appearance; n = sum of counts.
struct CorpusCounts {
    std::vector<std::pair<std::string, std::uint64_t>> terms;
    std::uint64_t total = 0;
};

// Lowercases ASCII, splits on anything that is not a letter or digit, and
// keeps apostrophes that sit inside a word.  Bytes above 0x7F are treated as
// word characters after UTF-8 validation.  Deliberately simple; it does not
// reproduce any particular corpus preprocessing.
CorpusCounts tokenize(std::istream& in);

CorpusCounts read_counts_tsv(std::istream& in);  // "term\tcount" lines

// clusters ordered by first appearance of their term
ClusterAssignment counts_to_assignment(const CorpusCounts& counts);

FoFVector read_fof_csv(std::istream& in);  // header "size,count", integer counts
// real-valued counts, e.g. posterior means ("size,count" or "size,mean_count")
std::map<std::uint32_t, double> read_fof_csv_real(std::istream& in);
void write_fof_csv(std::ostream& out, const FoFVector& fof);
void write_posterior_fof_csv(std::ostream& out, const PosteriorFoF& posterior);

ClusterAssignment read_assignment(std::istream& in);  // whitespace integers
void write_assignment(std::ostream& out, const ClusterAssignment& assign);

void write_trace_csv(std::ostream& out, const McmcTrace& trace);

}  // namespace fof
