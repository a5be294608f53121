#include "fof/io.hpp"

#include <cctype>
#include <cinttypes>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>
#include <unordered_map>

namespace fof {
namespace {

[[noreturn]] void fail_line(const char* what, std::size_t line) {
    std::ostringstream msg;
    msg << what << " at line " << line;
    throw ParseError(msg.str());
}

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

bool is_word_byte(unsigned char c) {
    return std::isalnum(c) != 0 || c >= 0x80;
}

}  // namespace

CorpusCounts tokenize(std::istream& in) {
    std::string data((std::istreambuf_iterator<char>(in)),
                     std::istreambuf_iterator<char>());

    // UTF-8 structure check
    std::size_t i = 0;
    while (i < data.size()) {
        unsigned char c = static_cast<unsigned char>(data[i]);
        std::size_t extra;
        if (c < 0x80)
            extra = 0;
        else if ((c & 0xE0) == 0xC0)
            extra = 1;
        else if ((c & 0xF0) == 0xE0)
            extra = 2;
        else if ((c & 0xF8) == 0xF0)
            extra = 3;
        else
            throw ParseError("tokenize: malformed UTF-8 lead byte");
        if (i + extra >= data.size() && extra > 0)
            throw ParseError("tokenize: truncated UTF-8 sequence");
        for (std::size_t k = 1; k <= extra; ++k)
            if ((static_cast<unsigned char>(data[i + k]) & 0xC0) != 0x80)
                throw ParseError("tokenize: malformed UTF-8 continuation byte");
        i += extra + 1;
    }

    CorpusCounts out;
    std::unordered_map<std::string, std::size_t> index;
    std::string word;
    auto flush = [&] {
        if (word.empty()) return;
        auto [it, inserted] = index.try_emplace(word, out.terms.size());
        if (inserted)
            out.terms.emplace_back(word, 1);
        else
            ++out.terms[it->second].second;
        ++out.total;
        word.clear();
    };
    for (std::size_t pos = 0; pos < data.size(); ++pos) {
        unsigned char c = static_cast<unsigned char>(data[pos]);
        if (is_word_byte(c)) {
            word.push_back(static_cast<char>(std::tolower(c)));
        } else if (c == '\'' && !word.empty() && pos + 1 < data.size() &&
                   is_word_byte(static_cast<unsigned char>(data[pos + 1]))) {
            word.push_back('\'');
        } else {
            flush();
        }
    }
    flush();
    return out;
}

CorpusCounts read_counts_tsv(std::istream& in) {
    CorpusCounts out;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        auto tab = line.find('\t');
        if (tab == std::string::npos) fail_line("counts tsv: missing tab", line_no);
        std::string term = line.substr(0, tab);
        std::uint64_t count = 0;
        try {
            count = std::stoull(line.substr(tab + 1));
        } catch (const std::exception&) {
            fail_line("counts tsv: bad count", line_no);
        }
        if (term.empty() || count == 0) fail_line("counts tsv: empty term or zero count", line_no);
        out.terms.emplace_back(std::move(term), count);
        out.total += count;
    }
    return out;
}

ClusterAssignment counts_to_assignment(const CorpusCounts& counts) {
    std::vector<std::uint32_t> sizes;
    sizes.reserve(counts.terms.size());
    for (const auto& [term, count] : counts.terms)
        sizes.push_back(static_cast<std::uint32_t>(count));
    return ClusterAssignment::from_sizes(sizes);
}

FoFVector read_fof_csv(std::istream& in) {
    std::string line;
    std::size_t line_no = 0;
    if (!std::getline(in, line)) throw ParseError("fof csv: empty input");
    ++line_no;
    if (line != "size,count")
        fail_line("fof csv: expected header 'size,count'", line_no);
    FoFVector out;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        auto comma = line.find(',');
        if (comma == std::string::npos) fail_line("fof csv: missing comma", line_no);
        std::uint64_t size = 0, count = 0;
        try {
            size = std::stoull(line.substr(0, comma));
            count = std::stoull(line.substr(comma + 1));
        } catch (const std::exception&) {
            fail_line("fof csv: bad number", line_no);
        }
        if (size == 0) fail_line("fof csv: size must be positive", line_no);
        if (count > 0) out.add_cluster(static_cast<std::uint32_t>(size), count);
    }
    return out;
}

std::map<std::uint32_t, double> read_fof_csv_real(std::istream& in) {
    std::string line;
    std::size_t line_no = 0;
    if (!std::getline(in, line)) throw ParseError("fof csv: empty input");
    ++line_no;
    if (line != "size,count" && line != "size,mean_count")
        fail_line("fof csv: expected a size,count header", line_no);
    std::map<std::uint32_t, double> out;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        auto comma = line.find(',');
        if (comma == std::string::npos) fail_line("fof csv: missing comma", line_no);
        std::uint64_t size = 0;
        double count = 0;
        try {
            size = std::stoull(line.substr(0, comma));
            count = std::stod(line.substr(comma + 1));
        } catch (const std::exception&) {
            fail_line("fof csv: bad number", line_no);
        }
        if (size == 0 || !(count >= 0)) fail_line("fof csv: out-of-range entry", line_no);
        out[static_cast<std::uint32_t>(size)] = count;
    }
    return out;
}

void write_fof_csv(std::ostream& out, const FoFVector& fof) {
    out << "size,count\n";
    for (const auto& [size, mult] : fof.counts) out << size << ',' << mult << '\n';
}

void write_posterior_fof_csv(std::ostream& out, const PosteriorFoF& posterior) {
    out << "size,mean_count\n";
    for (const auto& [size, mean] : posterior.mean)
        out << size << ',' << format_double(mean) << '\n';
}

ClusterAssignment read_assignment(std::istream& in) {
    std::vector<std::uint32_t> labels;
    std::uint64_t v;
    while (in >> v) {
        if (v == 0) throw ParseError("assignment: labels must be positive");
        labels.push_back(static_cast<std::uint32_t>(v));
    }
    if (!in.eof()) throw ParseError("assignment: non-integer token");
    if (labels.empty()) throw ParseError("assignment: empty input");
    return ClusterAssignment::from_labels(labels);
}

void write_assignment(std::ostream& out, const ClusterAssignment& assign) {
    for (std::size_t i = 0; i < assign.labels.size(); ++i) {
        if (i > 0) out << (i % 32 == 0 ? '\n' : ' ');
        out << assign.labels[i];
    }
    out << '\n';
}

void write_trace_csv(std::ostream& out, const McmcTrace& trace) {
    out << "iter,gamma0,a,p,l,log_ecpf\n";
    for (const TraceRow& row : trace.rows) {
        out << row.iter << ',' << format_double(row.gamma0) << ','
            << format_double(row.a) << ',' << format_double(row.p) << ',' << row.l << ','
            << format_double(row.log_ecpf) << '\n';
    }
}

}  // namespace fof
