#ifndef SEQLAB_CONSTRUCT_HPP
#define SEQLAB_CONSTRUCT_HPP

#include <memory>
#include <string>
#include <vector>

#include "seqlab/proxord.hpp"
#include "seqlab/seqcore.hpp"
#include "seqlab/verdict.hpp"

namespace seqlab::construct {

using proxord::OrderPtr;
using proxord::ProximateOrder;
using seqcore::QuotientSeq;
using seqcore::SeqPtr;

// Positive-axis model of a Maergoiz-class function: log V(t) = rho(t) log t on
// the tail, extended below the splice point by the line of matching slope so
// that V stays strictly increasing, V(e^x) convex, and V(0+) = 0.
class AxisV {
public:
    AxisV(OrderPtr order, double x0, double slope0, double min_second_diff);

    double logV(double x) const;   // x = log t
    double dlogV(double x) const;  // = A(x); nondecreasing, positive
    double inverse(double y) const; // x with logV(x) = y (defined for all y)

    double splice_x0() const { return x0_; }
    double splice_slope() const { return slope0_; }
    double rho_limit() const { return order_->rho_limit(); }
    double measured_min_second_diff() const { return min_second_diff_; }
    const ProximateOrder& order() const { return *order_; }

private:
    OrderPtr order_;
    double x0_;
    double slope0_;
    double v0_; // logV(x0)
    double min_second_diff_;
};

// Chooses the splice point: the earliest grid x beyond which A(x) > 0 and
// A is nondecreasing. Throws when the order never settles into that regime.
AxisV make_axis_V(OrderPtr order);

double A_of_s(const AxisV& v, double log_s);

struct SupSolveResult {
    double p = 0.0;
    double log_s = 0.0;    // maximizer location (log domain)
    double log_M = 0.0;    // log M_p^V
    int iterations = 0;
    double residual = 0.0; // |V(s)A(s) - p|
};

// log M_p^V = sup_x (p x - V(e^x)), solved from V(s)A(s) = p.
SupSolveResult mv_value(const AxisV& v, double p);

// Young conjugate of phi_V(x) = V(e^x); +inf for y < 0.
double young_conjugate(const AxisV& v, double y);
// (phi*)* by honest nested numeric optimization.
double biconjugate(const AxisV& v, double x);

class ConstructedSeq {
public:
    SeqPtr seq;                      // tabulated quotient contract
    std::vector<double> log_values;  // log M_p, p = 0..pmax
    std::vector<double> maximizers;  // log s_p, p = 1..pmax
    std::string provenance;
};

ConstructedSeq build_mv_sequence(const AxisV& v, uint64_t pmax);
// L-sequence: l_0 = U(1), l_p = U(p); quotients are regularly varying with
// index 1/rho.
ConstructedSeq build_l_sequence(const AxisV& v, uint64_t pmax);

struct SandwichReport {
    double B = 0.0;        // single constant for (1/B)^p U(p)^p <= M_p <= B^p U(p)^p
    double worst_gap = 0.0;
    Verdict verdict;
};
SandwichReport u_sandwich(const AxisV& v, const ConstructedSeq& mv);

struct VMRow {
    double log_t;
    double V_over_M;
    double nu_bound; // nu/(nu-1)
};
struct VMReport {
    std::vector<VMRow> rows;
    double end_ratio = 0.0;
    Verdict verdict; // 1 <= V/M <= nu/(nu-1) pointwise, V/M -> 1
};
VMReport vm_equivalence(const AxisV& v, const ConstructedSeq& mv, int pts_per_decade = 16);

struct ClosureReport {
    bool short_circuit = false;   // admissibility precondition failed
    Verdict admit_pre;
    Verdict equiv_bounded;        // (M_p / M_p^V)^{1/p} bounded
    Verdict l_regvar;             // quotients of L regularly varying, index 1/rho
    double ratio_lo = 0.0;
    double ratio_hi = 0.0;
    double l_omega = 0.0;
};
// Numerical realization of the equivalence (e) <=> (f): builds M^V from the
// order, compares against seq, then checks the L-sequence route.
ClosureReport admissibility_closure_check(const QuotientSeq& seq, OrderPtr order, uint64_t pmax = 16384);

} // namespace seqlab::construct

#endif
