#ifndef SEQLAB_VERDICT_HPP
#define SEQLAB_VERDICT_HPP

#include <map>
#include <string>
#include <vector>

namespace seqlab {

enum class Status { pass, fail, inconclusive };

inline const char* to_string(Status s) {
    switch (s) {
        case Status::pass: return "pass";
        case Status::fail: return "fail";
        default: return "inconclusive";
    }
}

// Outcome of one property check. A fail always carries a concrete violating
// index or a diverging-envelope witness in `witnesses`.
struct Verdict {
    std::string check;
    Status status = Status::inconclusive;
    std::map<std::string, double> constants; // ordered; serializes deterministically
    std::vector<std::string> witnesses;
    std::string note;
    double horizon_log2 = 0.0;

    bool pass() const { return status == Status::pass; }
    bool fail() const { return status == Status::fail; }
};

} // namespace seqlab

#endif
