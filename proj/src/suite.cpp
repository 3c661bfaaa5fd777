#include "seqlab/suite.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <unistd.h>

#include "seqlab/assoc.hpp"
#include "seqlab/construct.hpp"
#include "seqlab/error.hpp"
#include "seqlab/harmonic.hpp"
#include "seqlab/props.hpp"
#include "seqlab/regvar.hpp"
#include "seqlab/riesz.hpp"

namespace seqlab::suite {

namespace {

using seqcore::FamilySpec;
using seqcore::ScheduleBudget;
using proxord::OrderSpec;

std::string fmt(const char* pat, double a, double b = 0, double c = 0) {
    char buf[160];
    std::snprintf(buf, sizeof buf, pat, a, b, c);
    return buf;
}

FamilySpec family_shorthand(const std::string& s) { return FamilySpec::parse_arg(s); }
OrderSpec order_shorthand(const std::string& s) { return OrderSpec::parse_arg(s); }

// --- commands -----------------------------------------------------------------

void attach_assoc_csv(report::ReportDocument& doc, const seqcore::QuotientSeq& seq, const CommandOptions& opt) {
    if (!opt.csv_path) return;
    report::CsvWriter csv({"log_t", "nu", "M", "log_M", "d", "residual"});
    assoc::GridSpec grid{2.0, 40.0, 8};
    for (double x : grid.points()) {
        try {
            assoc::AssocEval ev = assoc::eval_assoc(seq, x);
            csv.add_row_mixed({report::CsvWriter::num(x), ev.nu.str(), report::CsvWriter::num(ev.M),
                               report::CsvWriter::num(ev.log_M), report::CsvWriter::num(ev.d_defined ? ev.d : 0.0),
                               report::CsvWriter::num(ev.d_defined ? ev.residual : 0.0)});
        } catch (const Error&) {
            continue;
        }
    }
    csv.write_file(*opt.csv_path);
}

} // namespace

report::ReportDocument cmd_analyze(const FamilySpec& fam, const CommandOptions& opt) {
    seqcore::SeqPtr seq = seqcore::make_family(fam);
    ScheduleBudget b = seq->default_budget();
    if (opt.budget_log2) b.log2_max = *opt.budget_log2;

    report::ReportDocument doc("analyze", opt.timestamp);
    doc.set_input("family", fam.to_json());
    doc.set_provenance("budget_log2", b.log2_max);

    Verdict lc = props::check_lc(*seq, b);
    doc.add_verdict(lc);
    props::MgReport mg = props::check_mg(*seq, b);
    doc.add_verdict(mg.verdict);
    doc.add_check("mg_routes_agree", mg.routes_agree);
    Verdict snq = props::check_snq(*seq, b);
    doc.add_verdict(snq);

    EnvelopeEstimate omega = props::estimate_omega(*seq, b);
    doc.add_check("omega_envelope", report::envelope_json(omega));

    if (lc.pass()) {
        regvar::CharacterizationReport cr = regvar::characterization_crosscheck(*seq, b);
        report::Json j;
        j["b"] = report::verdict_json(cr.rv.b_test);
        j["d"] = report::verdict_json(cr.rv.d_test);
        j["deHaan"] = report::verdict_json(cr.rv.de_haan);
        j["omega"] = cr.rv.omega;
        j["agree"] = cr.rv.agree;
        j["satisfies_g"] = cr.satisfies_g;
        if (cr.gamma_known) {
            j["gamma_lo"] = cr.gamma.lo;
            j["gamma_hi"] = cr.gamma.hi;
        }
        j["summary"] = cr.summary;
        doc.add_check("characterization", j);

        // convenience: equivalence against the Gevrey order nearest the omega estimate
        if (!omega.diverged && omega.inf_stable && omega.liminf > 0.1 && omega.liminf < 16.0) {
            double alpha = std::round(omega.liminf * 4.0) / 4.0;
            if (alpha > 0) {
                FamilySpec g;
                g.kind = FamilySpec::Kind::gevrey;
                g.alpha = alpha;
                Verdict eq = props::check_equiv_quotients(*seq, *seqcore::make_family(g), b);
                eq.check = "equiv_vs_" + g.name();
                doc.add_verdict(eq);
            }
        }
    }
    attach_assoc_csv(doc, *seq, opt);
    return doc;
}

report::ReportDocument cmd_construct(const OrderSpec& spec, const CommandOptions& opt) {
    proxord::OrderPtr order = proxord::make_order(spec);
    if (!order->nonzero())
        throw input_error(order->name() + ": construction requires a nonzero proximate order (rho > 0)");
    proxord::OrderValidation val = proxord::validate_order(*order);
    if (!val.all_pass()) throw input_error(order->name() + ": order fails proximate-order validation");

    uint64_t pmax = opt.pmax.value_or(16384);
    report::ReportDocument doc("construct", opt.timestamp);
    doc.set_input("order", spec.to_json());
    doc.set_provenance("pmax", pmax);

    construct::AxisV axis = construct::make_axis_V(order);
    doc.set_provenance("splice_log_t0", axis.splice_x0());
    doc.set_provenance("splice_slope", axis.splice_slope());
    doc.set_provenance("min_logV_second_difference", axis.measured_min_second_diff());

    construct::ConstructedSeq mv = construct::build_mv_sequence(axis, pmax);
    doc.add_verdict(props::check_lc(*mv.seq));
    doc.add_verdict(props::check_mg(*mv.seq).verdict);
    doc.add_verdict(props::check_snq(*mv.seq));

    construct::SandwichReport sw = construct::u_sandwich(axis, mv);
    doc.add_verdict(sw.verdict);
    construct::VMReport vm = construct::vm_equivalence(axis, mv);
    doc.add_verdict(vm.verdict);

    construct::ConstructedSeq l = construct::build_l_sequence(axis, pmax);
    Verdict eq = props::check_equiv_quotients(*mv.seq, *l.seq);
    eq.check = "l_equiv_mv";
    doc.add_verdict(eq);
    regvar::RegVarReport rv = regvar::regvar_index_test(*l.seq);
    report::Json j;
    j["b"] = report::verdict_json(rv.b_test);
    j["d"] = report::verdict_json(rv.d_test);
    j["deHaan"] = report::verdict_json(rv.de_haan);
    j["omega"] = rv.omega;
    j["agree"] = rv.agree;
    doc.add_check("l_regvar", j);

    if (opt.csv_path) {
        report::CsvWriter csv({"p", "log_s_p", "log_MV_p", "log_l_p"});
        for (uint64_t p = 1; p <= pmax; ++p) {
            double ls = p - 1 < mv.maximizers.size() ? mv.maximizers[p - 1] : 0.0;
            csv.add_row({double(p), ls, mv.log_values[p], l.log_values[p]});
        }
        csv.write_file(*opt.csv_path);
    }
    return doc;
}

report::ReportDocument cmd_admit(const FamilySpec& fam, const OrderSpec& ospec, const CommandOptions& opt) {
    seqcore::SeqPtr seq = seqcore::make_family(fam);
    proxord::OrderPtr order = proxord::make_order(ospec);
    report::ReportDocument doc("admit", opt.timestamp);
    doc.set_input("family", fam.to_json());
    doc.set_input("order", ospec.to_json());

    proxord::AdmissibilityReport adm = proxord::admits(*seq, *order);
    doc.add_verdict(adm.verdict);
    doc.add_check("admissibility_envelope", report::envelope_json(adm.envelope));

    construct::ClosureReport cl = construct::admissibility_closure_check(*seq, order, opt.pmax.value_or(16384));
    report::Json j;
    j["short_circuit"] = cl.short_circuit;
    if (!cl.short_circuit) {
        j["equiv_bounded"] = report::verdict_json(cl.equiv_bounded);
        j["l_regvar"] = report::verdict_json(cl.l_regvar);
        j["ratio_lo"] = cl.ratio_lo;
        j["ratio_hi"] = cl.ratio_hi;
    }
    doc.add_check("closure_chain", j);
    return doc;
}

report::ReportDocument cmd_riesz(const CommandOptions& opt) {
    int nmax = opt.nmax.value_or(20);
    report::ReportDocument doc("riesz", opt.timestamp);
    doc.set_input("family", seqcore::FamilySpec::parse_arg("example_riesz").to_json());
    doc.set_provenance("nmax", nmax);

    riesz::RieszReport rep = riesz::riesz_subsequences(riesz::paper_delta(), nmax);
    report::Json rows = report::Json::array();
    for (const riesz::RieszRow& r : rep.rows) {
        report::Json row;
        row["n"] = r.n;
        row["log2_kn"] = r.log2_kn;
        row["t_kn"] = r.t_kn;
        row["t_qn"] = r.t_qn;
        row["t_kn_recurrence"] = r.t_kn_recurrence;
        row["t_qn_recurrence"] = r.t_qn_recurrence;
        rows.push_back(row);
    }
    doc.add_check("subsequences", rows);
    report::Json lim;
    lim["t_kn_limit"] = rep.t_kn_limit;
    lim["t_qn_limit"] = rep.t_qn_limit;
    lim["max_recurrence_gap"] = rep.max_recurrence_gap;
    lim["limits_differ"] = rep.limits_differ;
    doc.add_check("limits", lim);

    Verdict v;
    v.check = "riesz_mean_has_no_limit";
    v.status = rep.limits_differ ? Status::pass : Status::fail;
    v.constants["gap"] = std::fabs(rep.t_kn_limit - rep.t_qn_limit);
    if (rep.limits_differ)
        v.witnesses.push_back("t along k_n and q_n settles at different values");
    doc.add_verdict(v);

    if (opt.csv_path) {
        report::CsvWriter csv({"n", "log2_kn", "t_kn", "t_qn", "t_kn_recurrence", "t_qn_recurrence"});
        for (const riesz::RieszRow& r : rep.rows)
            csv.add_row({double(r.n), r.log2_kn, r.t_kn, r.t_qn, r.t_kn_recurrence, r.t_qn_recurrence});
        csv.write_file(*opt.csv_path);
    }
    return doc;
}

// --- acceptance criteria --------------------------------------------------------

namespace {

struct Criterion {
    int id;
    const char* name;
    CriterionResult (*run)();
};

CriterionResult make_result(int id, const char* name, bool pass, std::string detail) {
    return {id, name, pass, std::move(detail)};
}

CriterionResult crit_gevrey_indices() {
    std::ostringstream out;
    bool ok = true;
    for (double alpha : {0.5, 1.0, 2.0}) {
        FamilySpec f = family_shorthand(fmt("gevrey:%g", alpha));
        seqcore::SeqPtr seq = seqcore::make_family(f);
        ScheduleBudget b = ScheduleBudget::from_log2(20); // horizon 10^6
        EnvelopeEstimate om = props::estimate_omega(*seq, b);
        bool om_ok = std::fabs(om.liminf - alpha) <= 1e-2;
        double d = assoc::d_M(*seq, std::log(1e8));
        bool d_ok = std::fabs(d - 1.0 / alpha) <= 5e-2;
        ok = ok && om_ok && d_ok;
        out << fmt("alpha=%g: omega=%.4f d(1e8)=%.4f; ", alpha, om.liminf, d);
    }
    return make_result(1, "gevrey_indices", ok, out.str());
}

CriterionResult crit_example_a() {
    seqcore::SeqPtr seq = seqcore::make_family(family_shorthand("example_a"));
    ScheduleBudget b = ScheduleBudget::from_log2((uint64_t(1) << 13) + 2); // blocks k <= 12
    EnvelopeEstimate env = regvar::ratio_limit(*seq, 2.0, b);
    bool env_ok = std::fabs(env.liminf - 2.0) <= 1e-3 && std::fabs(env.limsup - 3.0) <= 1e-3;

    bool ratio_ok = true;
    double worst = 1.0;
    for (const BigIndex& p : seq->sample_schedule(b)) {
        if (p.is_zero()) continue;
        double r = std::exp(seq->log_quotient(p) - p.log_natural());
        worst = std::min(worst, r);
        if (!(r >= 0.25 - 1e-12 && r <= 3.0 + 1e-12)) ratio_ok = false;
    }
    regvar::RegVarReport rv = regvar::regvar_index_test(*seq, b);
    bool char_ok = rv.b_test.fail() && rv.d_test.fail() && rv.agree;
    bool ok = env_ok && ratio_ok && char_ok;
    return make_result(2, "example_a", ok,
                       fmt("ratio env [%.6f, %.6f]; ", env.liminf, env.limsup) +
                           fmt("min m_p/p = %.4f; ", worst) +
                           std::string("characterization b/d fail+agree: ") + (char_ok ? "yes" : "no"));
}

CriterionResult crit_example_b() {
    seqcore::SeqPtr seq = seqcore::make_family(family_shorthand("example_b"));
    ScheduleBudget b = ScheduleBudget::from_log2((uint64_t(1) << 17) + 2); // blocks k <= 16
    EnvelopeEstimate env = regvar::ratio_limit(*seq, 2.0, b);
    bool env_ok = std::fabs(env.liminf - 2.0) <= 1e-3 && std::fabs(env.limsup - 4.0) <= 1e-3;
    EnvelopeEstimate om = props::estimate_omega(*seq, b);
    bool om_ok = std::fabs(om.liminf - 1.0) <= 1e-2;
    props::GammaInterval gi = props::estimate_gamma_index(*seq, b);
    bool gamma_ok = gi.contains(1.0);
    proxord::OrderPtr one = proxord::make_order(order_shorthand("const:1"));
    proxord::AdmissibilityReport adm = proxord::admits(*seq, *one);
    bool admit_ok = adm.verdict.fail() && (adm.envelope.sup_growing || adm.envelope.diverged);
    bool ok = env_ok && om_ok && gamma_ok && admit_ok;
    return make_result(3, "example_b", ok,
                       fmt("ratio env [%.6f, %.6f]; omega=%.5f; ", env.liminf, env.limsup, om.liminf) +
                           fmt("gamma=[%.4f, %.4f]; ", gi.lo, gi.hi) +
                           std::string("admits(const:1) fail+unbounded: ") + (admit_ok ? "yes" : "no"));
}

CriterionResult crit_riesz() {
    riesz::RieszReport rep = riesz::riesz_subsequences(riesz::paper_delta(), 20);
    bool window_ok = true;
    for (const riesz::RieszRow& r : rep.rows)
        if (r.n >= 10 && std::fabs(r.t_kn - 2.5) > std::fabs(rep.rows[10].t_kn - 2.5) + 1e-12) window_ok = false;
    bool lim_ok = std::fabs(rep.t_kn_limit - 2.5) <= 1e-6 && std::fabs(rep.t_qn_limit - 2.75) <= 1e-6 &&
                  rep.contraction_monotone && window_ok;
    bool rec_ok = rep.max_recurrence_gap <= 1e-9;

    seqcore::SeqPtr seq = seqcore::make_family(family_shorthand("example_riesz"));
    ScheduleBudget b = seq->default_budget();
    EnvelopeEstimate env = regvar::ratio_limit(*seq, 2.0, b);
    bool mg_ok = env.liminf >= 3.96 && env.limsup <= 8.08;
    props::GammaInterval gi = props::estimate_gamma_index(*seq, b);
    bool gamma_ok = gi.contains(2.0);
    bool ok = lim_ok && rec_ok && mg_ok && gamma_ok;
    return make_result(4, "riesz", ok,
                       fmt("t_kn->%.9f t_qn->%.9f; ", rep.t_kn_limit, rep.t_qn_limit) +
                           fmt("recurrence gap %.2e; ", rep.max_recurrence_gap) +
                           fmt("mg env [%.4f, %.4f]; ", env.liminf, env.limsup) +
                           fmt("gamma=[%.4f, %.4f]", gi.lo, gi.hi));
}

CriterionResult crit_construct_closed_form() {
    std::ostringstream out;
    bool ok = true;
    for (double rho : {0.5, 1.0, 2.0}) {
        proxord::OrderPtr order = proxord::make_order(order_shorthand(fmt("const:%g", rho)));
        construct::AxisV axis = construct::make_axis_V(order);
        construct::ConstructedSeq mv = construct::build_mv_sequence(axis, 512);
        double worst = 0.0;
        for (uint64_t p = 1; p <= 512; ++p) {
            double expected = (double(p) / rho) * (std::log(double(p) / rho) - 1.0);
            double rel = std::fabs(mv.log_values[p] - expected) / std::max(1.0, std::fabs(expected));
            worst = std::max(worst, rel);
        }
        bool cf_ok = worst <= 1e-8;
        construct::SandwichReport sw = construct::u_sandwich(axis, mv);
        bool props_ok = props::check_lc(*mv.seq).pass() && props::check_mg(*mv.seq).verdict.pass() &&
                        props::check_snq(*mv.seq).pass();
        ok = ok && cf_ok && sw.verdict.pass() && props_ok;
        out << fmt("rho=%g: closed-form rel err %.2e, B=%.4f; ", rho, worst, sw.B);
    }
    return make_result(5, "construct_closed_form", ok, out.str());
}

CriterionResult crit_v_over_m() {
    std::ostringstream out;
    bool ok = true;
    for (const char* spec : {"const:1", "const:2", "log_decay:1:1"}) {
        proxord::OrderPtr order = proxord::make_order(order_shorthand(spec));
        construct::AxisV axis = construct::make_axis_V(order);
        construct::ConstructedSeq mv = construct::build_mv_sequence(axis, 2048);
        construct::VMReport vm = construct::vm_equivalence(axis, mv);
        ok = ok && vm.verdict.pass();
        out << spec << fmt(": end V/M = %.6f; ", vm.end_ratio);
    }
    return make_result(6, "v_over_m", ok, out.str());
}

CriterionResult crit_young_biconjugate() {
    std::ostringstream out;
    bool ok = true;
    {
        construct::AxisV axis = construct::make_axis_V(proxord::make_order(order_shorthand("const:2")));
        double worst = 0.0;
        for (int i = 0; i < 64; ++i) {
            double x = -3.0 + 15.0 * i / 63.0;
            double phi = std::exp(axis.logV(x));
            double bc = construct::biconjugate(axis, x);
            worst = std::max(worst, std::fabs(bc - phi) / std::max(1.0, std::fabs(phi)));
        }
        ok = ok && worst <= 1e-6;
        out << fmt("V=t^2: worst rel err %.2e; ", worst);
    }
    {
        construct::AxisV axis = construct::make_axis_V(proxord::make_order(order_shorthand("rho_alpha_beta:1:1")));
        double lo = axis.splice_x0() + 0.1;
        double worst = 0.0;
        for (int i = 0; i < 64; ++i) {
            double x = lo + (30.0 - lo) * i / 63.0;
            double phi = std::exp(axis.logV(x));
            double bc = construct::biconjugate(axis, x);
            worst = std::max(worst, std::fabs(bc - phi) / std::max(1.0, std::fabs(phi)));
        }
        ok = ok && worst <= 1e-6;
        out << fmt("spliced rho_11: worst rel err %.2e", worst);
    }
    return make_result(7, "young_biconjugate", ok, out.str());
}

CriterionResult crit_order_validation() {
    std::ostringstream out;
    bool ok = true;
    for (const char* spec : {"rho_alpha_beta:1:1", "rho_alpha_beta:1:2", "power_decay:1:1", "power_decay:0.5:2",
                             "log_decay:1:1", "log_decay:1:2"}) {
        proxord::OrderValidation val = proxord::validate_order(*proxord::make_order(order_shorthand(spec)));
        if (!val.all_pass()) {
            ok = false;
            out << spec << " fails validation; ";
        }
    }
    proxord::OrderValidation sin_val = proxord::validate_order(*proxord::make_order(order_shorthand("sin_counterexample:1")));
    bool sin_ok = sin_val.condition_b.pass() && sin_val.condition_c.pass() && sin_val.condition_d.fail() &&
                  sin_val.d_residual_large_points >= 10;
    if (!sin_ok) ok = false;
    out << fmt("sin: D fails with %g large-residual points; ", double(sin_val.d_residual_large_points));
    for (const char* spec : {"const:2", "rho_alpha_beta:1:1", "power_decay:1:1", "log_decay:1:1"}) {
        proxord::OrderPtr base = proxord::make_order(order_shorthand(spec));
        proxord::OrderPtr conj = proxord::conjugate_order(base);
        double got = conj->rho(400.0);
        double want = 1.0 / base->rho_limit();
        if (std::fabs(got - want) > 2e-2) {
            ok = false;
            out << spec << fmt("* limit %.4f vs %.4f; ", got, want);
        }
    }
    return make_result(8, "order_validation", ok, out.str());
}

CriterionResult crit_fail_matrix() {
    seqcore::SeqPtr mq = seqcore::make_family(family_shorthand("m_q:2"));
    bool mq_ok = props::check_lc(*mq).pass() && props::check_mg(*mq).verdict.fail() && props::check_snq(*mq).pass();
    seqcore::SeqPtr zb = seqcore::make_family(family_shorthand("m_zero_beta:1"));
    bool zb_ok = props::check_lc(*zb).pass() && props::check_mg(*zb).verdict.pass() && props::check_snq(*zb).fail();
    return make_result(9, "fail_matrix", mq_ok && zb_ok,
                       std::string("m_q fails exactly mg: ") + (mq_ok ? "yes" : "no") +
                           "; m_zero_beta fails exactly snq: " + (zb_ok ? "yes" : "no"));
}

CriterionResult crit_moricz_normalizer() {
    auto s = [](uint64_t k) { return std::log(double(k)); };
    const double lambda = 1.25;
    std::vector<double> scaled, uncorrected;
    for (uint64_t p : {uint64_t(1000), uint64_t(10000), uint64_t(100000)}) {
        double corr = riesz::moricz_expression(s, lambda, p, true);
        uint64_t P = uint64_t(std::floor(std::pow(double(p), lambda)));
        double dh = harmonic(P) - harmonic(p);
        scaled.push_back(corr / dh);
        uncorrected.push_back(riesz::moricz_expression(s, lambda, p, false));
    }
    double mn = *std::min_element(scaled.begin(), scaled.end());
    double mx = *std::max_element(scaled.begin(), scaled.end());
    double mean = (scaled[0] + scaled[1] + scaled[2]) / 3.0;
    bool stable = (mx - mn) / mean < 0.10;
    bool decays = uncorrected.front() / uncorrected.back() >= 10.0;
    return make_result(10, "moricz_normalizer", stable && decays,
                       fmt("scaled corrected: %.6f..%.6f; ", mn, mx) +
                           fmt("uncorrected decay factor %.1f", uncorrected.front() / uncorrected.back()));
}

std::string g_cli_path;

CriterionResult crit_determinism() {
    if (g_cli_path.empty())
        return make_result(11, "determinism", false, "CLI path unknown; run via the seqlab binary");
    namespace fs = std::filesystem;
    fs::path dir = fs::temp_directory_path();
    fs::path a = dir / ("seqlab_det_a_" + std::to_string(::getpid()) + ".json");
    fs::path b = dir / ("seqlab_det_b_" + std::to_string(::getpid()) + ".json");
    std::string base = "'" + g_cli_path + "' suite --filter gevrey_indices,riesz --no-timestamp --json ";
    int rc1 = std::system((base + "'" + a.string() + "' >/dev/null 2>&1").c_str());
    int rc2 = std::system((base + "'" + b.string() + "' >/dev/null 2>&1").c_str());
    if (rc1 != 0 || rc2 != 0) return make_result(11, "determinism", false, "inner suite run failed");
    std::ifstream fa(a, std::ios::binary), fb(b, std::ios::binary);
    std::stringstream sa, sb;
    sa << fa.rdbuf();
    sb << fb.rdbuf();
    fs::remove(a);
    fs::remove(b);
    bool same = !sa.str().empty() && sa.str() == sb.str();
    return make_result(11, "determinism", same,
                       same ? "two suite runs byte-identical" : "suite outputs differ between runs");
}

const Criterion kCriteria[] = {
    {1, "gevrey_indices", crit_gevrey_indices},
    {2, "example_a", crit_example_a},
    {3, "example_b", crit_example_b},
    {4, "riesz", crit_riesz},
    {5, "construct_closed_form", crit_construct_closed_form},
    {6, "v_over_m", crit_v_over_m},
    {7, "young_biconjugate", crit_young_biconjugate},
    {8, "order_validation", crit_order_validation},
    {9, "fail_matrix", crit_fail_matrix},
    {10, "moricz_normalizer", crit_moricz_normalizer},
    {11, "determinism", crit_determinism},
};

bool filter_match(const std::string& filter, int id, const std::string& name) {
    if (filter.empty()) return true;
    std::stringstream ss(filter);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        if (tok.empty()) continue;
        if (tok == std::to_string(id) || name.find(tok) != std::string::npos) return true;
    }
    return false;
}

} // namespace

std::vector<CriterionResult> run_acceptance(const std::string& filter, const std::string& cli_path) {
    g_cli_path = cli_path;
    std::vector<CriterionResult> out;
    for (const Criterion& c : kCriteria) {
        if (!filter_match(filter, c.id, c.name)) continue;
        try {
            out.push_back(c.run());
        } catch (const std::exception& e) {
            out.push_back(make_result(c.id, c.name, false, std::string("exception: ") + e.what()));
        }
    }
    return out;
}

report::Json acceptance_json(const std::vector<CriterionResult>& results, bool timestamp) {
    report::ReportDocument doc("suite", timestamp);
    report::Json arr = report::Json::array();
    for (const CriterionResult& r : results) {
        report::Json j;
        j["id"] = r.id;
        j["name"] = r.name;
        j["pass"] = r.pass;
        j["detail"] = r.detail;
        arr.push_back(j);
    }
    doc.set("criteria", arr);
    doc.set("all_pass", all_pass(results));
    return doc.json();
}

bool all_pass(const std::vector<CriterionResult>& results) {
    for (const CriterionResult& r : results)
        if (!r.pass) return false;
    return !results.empty();
}

} // namespace seqlab::suite
