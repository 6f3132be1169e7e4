#include "scsp/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace scsp::io {

namespace {

struct Record {
    std::string keyword;
    std::vector<std::string> fields;
    int line = 0;
};

// Splits a stream into whitespace-separated records, dropping comments.
std::vector<Record> tokenize(std::istream& in) {
    std::vector<Record> records;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (auto pos = line.find('#'); pos != std::string::npos) line.erase(pos);
        std::istringstream ls(line);
        Record rec;
        rec.line = lineno;
        if (!(ls >> rec.keyword)) continue;
        std::string tok;
        while (ls >> tok) rec.fields.push_back(tok);
        records.push_back(std::move(rec));
    }
    return records;
}

VertexId parse_vertex(const std::string& tok, int line) {
    std::size_t used = 0;
    long long v = 0;
    try {
        v = std::stoll(tok, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (used != tok.size() || v < 0) {
        throw std::invalid_argument("line " + std::to_string(line) + ": bad vertex id '" +
                                    tok + "'");
    }
    return v;
}

double parse_value(const std::string& tok, int line) {
    std::size_t used = 0;
    double v = 0;
    try {
        v = std::stod(tok, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (used != tok.size()) {
        throw std::invalid_argument("line " + std::to_string(line) + ": bad value '" + tok +
                                    "'");
    }
    return v;
}

std::ifstream open_or_throw(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open file: " + path);
    return in;
}

// Shared reader for `value`/`label` records: resolves each simplex to its
// canonical index and collects the numeric fields.
struct ParsedRows {
    std::vector<Eigen::Index> indices;
    std::vector<std::vector<double>> values;
};

ParsedRows parse_rows(const SimplicialComplex& x, std::istream& in, int order,
                      const std::string& keyword, std::size_t vertex_count_cap) {
    ParsedRows out;
    for (const auto& rec : tokenize(in)) {
        if (rec.keyword != keyword) {
            throw std::invalid_argument("line " + std::to_string(rec.line) +
                                        ": expected '" + keyword + "' record, got '" +
                                        rec.keyword + "'");
        }
        const std::size_t want = static_cast<std::size_t>(order) + 1;
        if (rec.fields.size() < want + 1) {
            throw std::invalid_argument("line " + std::to_string(rec.line) +
                                        ": record needs " + std::to_string(want) +
                                        " vertices and at least one value");
        }
        (void)vertex_count_cap;
        Simplex s;
        for (std::size_t i = 0; i < want; ++i) {
            s.vertices.push_back(parse_vertex(rec.fields[i], rec.line));
        }
        if (!s.is_valid()) {
            throw std::invalid_argument("line " + std::to_string(rec.line) + ": simplex " +
                                        s.str() + " is not strictly increasing");
        }
        if (!x.contains(s)) {
            throw std::invalid_argument("line " + std::to_string(rec.line) + ": simplex " +
                                        s.str() + " is not in the complex");
        }
        std::vector<double> vals;
        for (std::size_t i = want; i < rec.fields.size(); ++i) {
            vals.push_back(parse_value(rec.fields[i], rec.line));
        }
        if (!out.values.empty() && vals.size() != out.values.front().size()) {
            throw std::invalid_argument("line " + std::to_string(rec.line) +
                                        ": inconsistent number of value columns");
        }
        const Eigen::Index idx = x.index_of(s);
        for (Eigen::Index seen : out.indices) {
            if (seen == idx) {
                throw std::invalid_argument("line " + std::to_string(rec.line) +
                                            ": duplicate record for simplex " + s.str());
            }
        }
        out.indices.push_back(idx);
        out.values.push_back(std::move(vals));
    }
    return out;
}

}  // namespace

SimplicialComplex parse_complex(std::istream& in) {
    std::vector<Simplex> maximal;
    for (const auto& rec : tokenize(in)) {
        if (rec.keyword != "simplex") {
            throw std::invalid_argument("line " + std::to_string(rec.line) +
                                        ": expected 'simplex' record, got '" + rec.keyword +
                                        "'");
        }
        if (rec.fields.empty()) {
            throw std::invalid_argument("line " + std::to_string(rec.line) +
                                        ": simplex record has no vertices");
        }
        Simplex s;
        for (const auto& tok : rec.fields) s.vertices.push_back(parse_vertex(tok, rec.line));
        if (!s.is_valid()) {
            throw std::invalid_argument("line " + std::to_string(rec.line) + ": simplex " +
                                        s.str() + " is not strictly increasing");
        }
        maximal.push_back(std::move(s));
    }
    return SimplicialComplex::from_maximal_simplices(maximal);
}

SimplicialComplex read_complex_file(const std::string& path) {
    auto in = open_or_throw(path);
    return parse_complex(in);
}

std::string dump_complex(const SimplicialComplex& x) {
    std::ostringstream out;
    for (const auto& s : x.maximal_simplices()) {
        out << "simplex";
        for (VertexId v : s.vertices) out << ' ' << v;
        out << '\n';
    }
    return out.str();
}

Eigen::MatrixXd read_signal_matrix(const SimplicialComplex& x, std::istream& in, int order) {
    if (order < 0 || order > x.max_order()) {
        throw std::invalid_argument("complex has no simplices of order " +
                                    std::to_string(order));
    }
    const ParsedRows rows = parse_rows(x, in, order, "value", 4);
    const Eigen::Index n = x.count(order);
    if (rows.indices.empty()) throw std::invalid_argument("signal file has no records");
    const auto cols = static_cast<Eigen::Index>(rows.values.front().size());

    std::vector<bool> seen(static_cast<std::size_t>(n), false);
    Eigen::MatrixXd signal = Eigen::MatrixXd::Zero(n, cols);
    for (std::size_t r = 0; r < rows.indices.size(); ++r) {
        seen[static_cast<std::size_t>(rows.indices[r])] = true;
        for (Eigen::Index c = 0; c < cols; ++c) {
            signal(rows.indices[r], c) = rows.values[r][static_cast<std::size_t>(c)];
        }
    }
    std::string missing;
    for (Eigen::Index i = 0; i < n; ++i) {
        if (!seen[static_cast<std::size_t>(i)]) {
            if (!missing.empty()) missing += ", ";
            missing += x.simplices(order)[static_cast<std::size_t>(i)].str();
        }
    }
    if (!missing.empty()) {
        throw std::invalid_argument("signal is missing values for: " + missing);
    }
    return signal;
}

Eigen::MatrixXd read_signal_matrix_file(const SimplicialComplex& x, const std::string& path,
                                        int order) {
    auto in = open_or_throw(path);
    return read_signal_matrix(x, in, order);
}

Eigen::VectorXd read_signal_file(const SimplicialComplex& x, const std::string& path,
                                 int order) {
    const Eigen::MatrixXd m = read_signal_matrix_file(x, path, order);
    if (m.cols() != 1) {
        throw std::invalid_argument("expected a single-column signal, file has " +
                                    std::to_string(m.cols()) + " columns");
    }
    return m.col(0);
}

Labels read_labels(const SimplicialComplex& x, std::istream& in, int order) {
    if (order < 0 || order > x.max_order()) {
        throw std::invalid_argument("complex has no simplices of order " +
                                    std::to_string(order));
    }
    const ParsedRows rows = parse_rows(x, in, order, "label", 3);
    Labels out;
    std::vector<std::pair<Eigen::Index, double>> pairs;
    for (std::size_t r = 0; r < rows.indices.size(); ++r) {
        if (rows.values[r].size() != 1) {
            throw std::invalid_argument("label records carry exactly one value");
        }
        pairs.emplace_back(rows.indices[r], rows.values[r][0]);
    }
    std::sort(pairs.begin(), pairs.end());
    out.indices.reserve(pairs.size());
    out.values.resize(static_cast<Eigen::Index>(pairs.size()));
    for (std::size_t i = 0; i < pairs.size(); ++i) {
        out.indices.push_back(pairs[i].first);
        out.values[static_cast<Eigen::Index>(i)] = pairs[i].second;
    }
    return out;
}

Labels read_labels_file(const SimplicialComplex& x, const std::string& path, int order) {
    auto in = open_or_throw(path);
    return read_labels(x, in, order);
}

std::string dump_signal(const SimplicialComplex& x, const Eigen::MatrixXd& signal, int order) {
    if (signal.rows() != x.count(order)) {
        throw std::invalid_argument("signal length does not match simplex count");
    }
    std::ostringstream out;
    const auto& cells = x.simplices(order);
    for (Eigen::Index i = 0; i < signal.rows(); ++i) {
        out << "value";
        for (VertexId v : cells[static_cast<std::size_t>(i)].vertices) out << ' ' << v;
        for (Eigen::Index c = 0; c < signal.cols(); ++c) {
            out << ' ' << format_double(signal(i, c));
        }
        out << '\n';
    }
    return out.str();
}

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

}  // namespace scsp::io
