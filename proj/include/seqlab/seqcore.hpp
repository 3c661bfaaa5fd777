#ifndef SEQLAB_SEQCORE_HPP
#define SEQLAB_SEQCORE_HPP

#include <memory>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "seqlab/big_index.hpp"

namespace seqlab::seqcore {

// Controls how deep a sample schedule reaches. log2_max bounds log2(p) of
// the deepest structural point; the geometric ladder is thinned to at most
// ladder_points entries.
struct ScheduleBudget {
    uint64_t log2_max = 8192;
    int ladder_points = 192;
    uint64_t dense_max = 48;

    static ScheduleBudget from_log2(uint64_t l2) {
        ScheduleBudget b;
        b.log2_max = l2;
        return b;
    }
};

struct FamilySpec {
    enum class Kind { gevrey, m_alpha_beta, m_zero_beta, m_q, example_a, example_b, example_riesz, table };
    Kind kind = Kind::gevrey;
    double alpha = 1.0;
    double beta = 0.0;
    double q = 2.0;
    std::vector<double> log_quotients;

    static FamilySpec parse(const nlohmann::json& j);
    static FamilySpec parse_arg(const std::string& arg); // "gevrey:1", "{...}", or a file path
    nlohmann::ordered_json to_json() const;
    std::string name() const;
};

// Evaluation contract for a sequence M_p through its quotients m_p.
// M_0 = 1 always; log_value(p) = sum_{k<p} log_quotient(k).
class QuotientSeq {
public:
    virtual ~QuotientSeq() = default;
    virtual std::string name() const = 0;
    virtual double log_quotient(const BigIndex& p) const = 0;        // log m_p
    virtual double mean_log_value(const BigIndex& p) const = 0;      // log(M_p)/p for p >= 1
    virtual double log_value(const BigIndex& p) const;               // log M_p; +inf past double range
    virtual BigIndex count_below(double log_t) const = 0;            // nu(e^{log_t}) = #{j : m_j <= t}
    virtual std::vector<BigIndex> sample_schedule(const ScheduleBudget& b) const;
    virtual ScheduleBudget default_budget() const { return {}; }
    // (p, p+1) pairs probing monotonicity across structural seams.
    virtual std::vector<std::pair<BigIndex, BigIndex>> adjacency_probes(const ScheduleBudget& b) const;
    // log-range factor spanned by one structural cycle of the schedule;
    // 0 means no block structure (smooth convergence)
    virtual double schedule_log_cycle() const { return 0.0; }
};

using SeqPtr = std::shared_ptr<const QuotientSeq>;

SeqPtr make_family(const FamilySpec& spec);
// Sequence given by an explicit table of log M_p values (log_values[0] must be 0).
SeqPtr make_tabulated(std::string name, std::vector<double> log_values);

struct SamplePoint {
    BigIndex p;
    double log_m = 0.0;
    double log_M = 0.0;
    double alpha = 0.0; // log m_p
    double beta = 0.0;  // log(m_p / M_p^{1/p}); beta_0 = alpha_0
};

SamplePoint alpha_beta(const QuotientSeq& seq, const BigIndex& p);

// Throws input_error when the quotients are visibly non-monotone on a small probe.
void require_nondecreasing_probe(const QuotientSeq& seq);

} // namespace seqlab::seqcore

#endif
