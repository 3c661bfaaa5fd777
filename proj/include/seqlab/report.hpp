#ifndef SEQLAB_REPORT_HPP
#define SEQLAB_REPORT_HPP

#include <string>
#include <vector>

#include <json.hpp>

#include "seqlab/envelope.hpp"
#include "seqlab/verdict.hpp"

namespace seqlab::report {

inline constexpr const char* kToolName = "seqlab";
inline constexpr const char* kToolVersion = "0.1.0";

using Json = nlohmann::ordered_json;

Json verdict_json(const Verdict& v);
Json envelope_json(const EnvelopeEstimate& e);

// Deterministic byte-identical serialization of the same document; the
// timestamp is included only when with_timestamp is set.
class ReportDocument {
public:
    explicit ReportDocument(std::string command, bool with_timestamp);

    void set_input(const std::string& key, Json spec);
    void set_provenance(const std::string& key, Json value);
    void add_check(const std::string& name, Json payload);
    void add_verdict(const Verdict& v);
    void set(const std::string& key, Json value);

    const Json& json() const { return doc_; }
    std::string serialize() const; // 2-space indent, '\n' terminated
    void write_file(const std::string& path) const;
    bool any_inconclusive() const { return inconclusive_; }

private:
    Json doc_;
    bool inconclusive_ = false;
};

// CSV with a header row; cells printed with 17 significant digits.
class CsvWriter {
public:
    explicit CsvWriter(std::vector<std::string> header);
    void add_row(const std::vector<double>& row);
    void add_row_mixed(const std::vector<std::string>& row);
    std::string str() const;
    void write_file(const std::string& path) const;
    static std::string num(double v);

private:
    std::string out_;
    size_t columns_;
};

} // namespace seqlab::report

#endif
