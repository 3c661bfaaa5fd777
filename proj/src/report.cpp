#include "seqlab/report.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>

#include "seqlab/error.hpp"

namespace seqlab::report {

namespace {
// JSON-friendly double: infinities become tagged strings
Json num_json(double v) {
    if (std::isfinite(v)) return v;
    if (std::isnan(v)) return "nan";
    return v > 0 ? "inf" : "-inf";
}

std::string iso_timestamp() {
    auto now = std::chrono::system_clock::now();
    std::time_t t = std::chrono::system_clock::to_time_t(now);
    char buf[40];
    std::tm tm_utc{};
    gmtime_r(&t, &tm_utc);
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm_utc);
    return buf;
}
} // namespace

Json verdict_json(const Verdict& v) {
    Json j;
    j["check"] = v.check;
    j["status"] = to_string(v.status);
    Json consts = Json::object();
    for (const auto& [k, val] : v.constants) consts[k] = num_json(val);
    j["constants"] = consts;
    j["witnesses"] = v.witnesses;
    if (!v.note.empty()) j["note"] = v.note;
    j["horizon_log2"] = v.horizon_log2;
    return j;
}

Json envelope_json(const EnvelopeEstimate& e) {
    Json j;
    j["stream"] = e.stream;
    j["liminf"] = num_json(e.liminf);
    j["limsup"] = num_json(e.limsup);
    j["inf_stable"] = e.inf_stable;
    j["sup_stable"] = e.sup_stable;
    j["diverged"] = e.diverged;
    Json cuts = Json::array();
    for (size_t i = 0; i < e.cutoff_log_p.size(); ++i) {
        Json c;
        c["log_p"] = num_json(e.cutoff_log_p[i]);
        c["tail_inf"] = num_json(e.tail_inf[i]);
        c["tail_sup"] = num_json(e.tail_sup[i]);
        cuts.push_back(c);
    }
    j["cutoffs"] = cuts;
    j["n_samples"] = e.n_samples;
    return j;
}

ReportDocument::ReportDocument(std::string command, bool with_timestamp) {
    doc_["tool"] = kToolName;
    doc_["version"] = kToolVersion;
    doc_["command"] = std::move(command);
    doc_["inputs"] = Json::object();
    doc_["provenance"] = Json::object();
    if (with_timestamp) doc_["provenance"]["timestamp"] = iso_timestamp();
    doc_["checks"] = Json::array();
}

void ReportDocument::set_input(const std::string& key, Json spec) { doc_["inputs"][key] = std::move(spec); }

void ReportDocument::set_provenance(const std::string& key, Json value) {
    doc_["provenance"][key] = std::move(value);
}

void ReportDocument::add_check(const std::string& name, Json payload) {
    Json j;
    j["name"] = name;
    j["result"] = std::move(payload);
    doc_["checks"].push_back(std::move(j));
}

void ReportDocument::add_verdict(const Verdict& v) {
    if (v.status == Status::inconclusive) inconclusive_ = true;
    add_check(v.check, verdict_json(v));
}

void ReportDocument::set(const std::string& key, Json value) { doc_[key] = std::move(value); }

std::string ReportDocument::serialize() const { return doc_.dump(2) + "\n"; }

void ReportDocument::write_file(const std::string& path) const {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw input_error("cannot write report to " + path);
    out << serialize();
}

CsvWriter::CsvWriter(std::vector<std::string> header) : columns_(header.size()) {
    for (size_t i = 0; i < header.size(); ++i) {
        if (i) out_ += ',';
        out_ += header[i];
    }
    out_ += '\n';
}

std::string CsvWriter::num(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void CsvWriter::add_row(const std::vector<double>& row) {
    if (row.size() != columns_) throw input_error("CsvWriter: column count mismatch");
    for (size_t i = 0; i < row.size(); ++i) {
        if (i) out_ += ',';
        out_ += num(row[i]);
    }
    out_ += '\n';
}

void CsvWriter::add_row_mixed(const std::vector<std::string>& row) {
    if (row.size() != columns_) throw input_error("CsvWriter: column count mismatch");
    for (size_t i = 0; i < row.size(); ++i) {
        if (i) out_ += ',';
        out_ += row[i];
    }
    out_ += '\n';
}

std::string CsvWriter::str() const { return out_; }

void CsvWriter::write_file(const std::string& path) const {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw input_error("cannot write CSV to " + path);
    out << out_;
}

} // namespace seqlab::report
