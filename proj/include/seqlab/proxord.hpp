#ifndef SEQLAB_PROXORD_HPP
#define SEQLAB_PROXORD_HPP

#include <memory>
#include <string>
#include <vector>

#include <json.hpp>

#include "seqlab/assoc.hpp"
#include "seqlab/envelope.hpp"
#include "seqlab/seqcore.hpp"
#include "seqlab/verdict.hpp"

namespace seqlab::proxord {

using assoc::GridSpec;
using seqcore::QuotientSeq;
using seqcore::SeqPtr;

// rho(r) on (c, infinity): continuous, piecewise C^1, nonnegative, with a
// finite limit and r rho'(r) log r -> 0. All evaluation is in log r.
class ProximateOrder {
public:
    virtual ~ProximateOrder() = default;
    virtual std::string name() const = 0;
    virtual double rho(double log_r) const = 0;
    // d rho / d log r (= r rho'(r)); finite differences for wrapped orders
    virtual double drho_dlogr(double log_r) const = 0;
    virtual double log_c() const = 0;       // domain threshold
    virtual double rho_limit() const = 0;   // declared limit, >= 0
    // largest log r the order can be evaluated at (sin counterexample needs
    // the argument as a value)
    virtual double grid_cap() const { return 1e7; }
    bool nonzero() const { return rho_limit() > 0.0; }
};

using OrderPtr = std::shared_ptr<const ProximateOrder>;

struct OrderSpec {
    enum class Kind { constant, rho_alpha_beta, power_decay, log_decay, sin_counterexample };
    Kind kind = Kind::constant;
    double rho = 1.0;
    double alpha = 1.0;
    double beta = 0.0;
    double gamma = 1.0;

    static OrderSpec parse(const nlohmann::json& j);
    static OrderSpec parse_arg(const std::string& arg);
    nlohmann::ordered_json to_json() const;
};

OrderPtr make_order(const OrderSpec& spec);
// d_M(t) of a sequence wrapped as a proximate-order candidate; drho uses
// one-sided finite differences, skipping quotient corner points.
OrderPtr wrap_dm_as_order(SeqPtr seq, std::string name);
// Conjugate order rho*(s) = log U(s) / log s for a nonzero order.
OrderPtr conjugate_order(OrderPtr base);

struct OrderValidation {
    Verdict condition_b; // rho >= 0 on the grid
    Verdict condition_c; // |rho - rho_inf| tail below 1e-2 and decreasing
    Verdict condition_d; // |r rho'(r) log r| tail below 1e-2 and decreasing
    bool nonzero = false;
    double rho_at_end = 0.0;
    int d_residual_large_points = 0; // grid points with |residual| > 0.5
    bool all_pass() const { return condition_b.pass() && condition_c.pass() && condition_d.pass(); }
};
OrderValidation validate_order(const ProximateOrder& o, const GridSpec& grid);
OrderValidation validate_order(const ProximateOrder& o);

// log V(t) = rho(t) log t; requires log t > log c.
double V_of(const ProximateOrder& o, double log_t);
// log U(s) for log s in the attained range of the increasing tail of V.
double U_of(const ProximateOrder& o, double log_s);

Verdict orders_equivalent(const ProximateOrder& a, const ProximateOrder& b, const GridSpec& grid);

struct AdmissibilityReport {
    EnvelopeEstimate envelope; // log t (rho(t) - d_M(t))
    double A = 0.0;
    double B = 0.0;
    Verdict verdict;
};
AdmissibilityReport admits(const QuotientSeq& seq, const ProximateOrder& o, const GridSpec& grid);
AdmissibilityReport admits(const QuotientSeq& seq, const ProximateOrder& o);

// default grid for order validation: reaches e^2000 so slowly-decaying
// residuals like loglog t / log t clear the 1e-2 threshold
GridSpec validation_grid();
// default grid for admissibility envelopes: spans three whole eras of the
// block families in log t
GridSpec admissibility_grid();

} // namespace seqlab::proxord

#endif
