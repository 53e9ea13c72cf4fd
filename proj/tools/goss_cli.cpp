// goss: command-line front end for special polynomials, L-values, periods,
// twisted harmonic sums, dual coefficients and the verification harness.

#include <cstdlib>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"

#include "goss/drinfeld.hpp"
#include "goss/error.hpp"
#include "goss/log_algebraicity.hpp"
#include "goss/parallel.hpp"
#include "goss/special_values.hpp"
#include "goss/verify.hpp"

using json = nlohmann::ordered_json;
using namespace goss;

namespace {

constexpr const char* kSchema = "v1";

struct Config {
    std::string ring = "A0";
    unsigned q = 3;
    long precision = 80;
    long guard = 10;
    long terms = 12;
    std::string format = "text";
    std::string threads;
};

const Ring& ring_of(const Config& c) { return c.ring == "A1" ? Ring::a1() : Ring::a0(c.q); }

long working(const Config& c) { return c.precision + c.guard; }

json field_json(const FiniteField& F) {
    return {{"size", F.size()}, {"modulus", F.modulus()}, {"generator", F.to_string(F.generator())}};
}

json config_json(const Config& c, bool with_field) {
    json j{{"ring", c.ring},
           {"q", c.ring == "A1" ? 3u : c.q},
           {"precision", c.precision},
           {"guard", c.guard},
           {"threads", thread_count()},
           {"format", c.format}};
    if (with_field) {
        const Ring& R = ring_of(c);
        const LocalField& L = standard_field(R, working(c));
        j["working_precision"] = working(c);
        j["degree_cap"] = 3 * L.precision() / static_cast<long>(L.ramification()) + 20;
        j["base_field"] = field_json(R.base());
        j["constant_field"] = field_json(L.constants());
        j["ramification"] = L.ramification();
        j["local_field"] = L.describe();
    }
    return j;
}

// Drops digits beyond the requested relative precision.
LaurentElem reported(const LaurentElem& x, const Config& c) {
    return x.is_zero() ? x : x.truncated(x.valuation() + c.precision);
}

json laurent_json(const LaurentElem& x, const Config& c) {
    const LaurentElem y = reported(x, c);
    const FiniteField& F = y.field().constants();
    json coeffs = json::array();
    for (Elem e : y.coeffs()) coeffs.push_back(F.to_string(e));
    json j{{"zero_to_precision", y.is_zero()}, {"valuation", y.valuation()}, {"precision", y.precision()},
           {"coefficients", coeffs}};
    if (!y.is_zero()) j["abs"] = y.abs_value().to_string();
    j["text"] = y.to_string();
    return j;
}

std::string laurent_text(const LaurentElem& x, const Config& c) {
    return reported(x, c).to_string(static_cast<std::size_t>(c.terms));
}

json series_json(const SeriesResult& r, const Config& c) {
    return {{"value", laurent_json(r.value, c)},
            {"degree_cutoff", r.degree_cutoff},
            {"last_increments", {r.last_increments[0], r.last_increments[1]}}};
}

class Output {
public:
    Output(const Config& c, std::string command, bool with_field) : c_(c) {
        doc_["schema"] = kSchema;
        doc_["command"] = std::move(command);
        doc_["config"] = config_json(c, with_field);
    }
    json& doc() { return doc_; }
    std::ostringstream& text() { return text_; }
    void emit() const {
        if (c_.format == "json")
            std::cout << doc_.dump(2) << "\n";
        else
            std::cout << text_.str();
    }

private:
    const Config& c_;
    json doc_;
    std::ostringstream text_;
};

bool is_usage_error(const Error& e) {
    const std::string k = e.kind();
    return k == "ParseError" || k == "NotIrreducible" || k == "InvalidArgument" || k == "InsufficientField";
}

// ---------------------------------------------------------------- commands

int cmd_special_poly(const Config& c, std::uint64_t m, std::optional<int> z_bound, int extend) {
    const DrinfeldModule& rho = DrinfeldModule::get(ring_of(c));
    SpecialPolyOptions o;
    o.z_bound = z_bound;
    o.auto_extend = extend;
    const SpecialPolynomial S = special_poly(rho, m, o);
    Output out(c, "special-poly", false);
    json entries = json::array();
    for (const auto& [n, P] : S.entries) entries.push_back({{"n", n}, {"poly", P.to_string()}});
    const bool capped = S.partial || !S.stabilized();
    out.doc()["result"] = {{"m", m},
                           {"entries", entries},
                           {"text", S.to_string()},
                           {"z_bound", S.z_bound},
                           {"stabilized", S.stabilized()},
                           {"partial", S.partial}};
    out.text() << S.to_string() << "\n";
    if (capped) {
        std::string notice = S.partial ? "monic-block cap reached; entries verified through z^(q^" +
                                             std::to_string(S.complete_through) + ")"
                                       : "top entry nonzero at the z-bound " + std::to_string(S.z_bound) +
                                             "; higher entries were not computed";
        out.doc()["notice"] = notice;
        out.text() << "notice: " << notice << "\n";
    }
    out.emit();
    return 0;
}

int cmd_lvalue(const Config& c, const std::string& prime, const std::string& chr, long s) {
    const Ring& R = ring_of(c);
    const LocalField& L = standard_field(R, working(c));
    const std::string label = chr.find(':') == std::string::npos ? prime + ":" + chr : chr;
    const DirichletCharacter chi = DirichletCharacter::parse(R, label, L.constants());
    const SeriesResult r = goss_l_value(DrinfeldModule::get(R), chi, s, L);
    Output out(c, "lvalue", true);
    out.doc()["character"] = chi.label();
    out.doc()["s"] = s;
    out.doc()["result"] = series_json(r, c);
    out.text() << "L(" << s << ", chi) for chi = " << chi.label() << "\n"
               << "  " << laurent_text(r.value, c) << "\n"
               << "  degree cutoff " << r.degree_cutoff << ", last increments " << r.last_increments[0] << ", "
               << r.last_increments[1] << "\n";
    out.emit();
    return 0;
}

int cmd_period(const Config& c, const std::string& method) {
    const Ring& R = ring_of(c);
    const LocalField& L = standard_field(R, working(c));
    const DrinfeldModule& rho = DrinfeldModule::get(R);
    Output out(c, "period", true);
    json res = json::object();
    std::optional<LaurentElem> product, torsion;
    if (method != "product") {
        torsion = rho.period(PeriodMethod::TorsionLog, L);
        res["torsion_log"] = laurent_json(*torsion, c);
        out.text() << "torsion-log: " << laurent_text(*torsion, c) << "\n";
    }
    if (method != "torsion-log") {
        product = rho.period(PeriodMethod::Product, L);
        res["product"] = laurent_json(*product, c);
        out.text() << "product:     " << laurent_text(*product, c) << "\n";
    }
    res["expected_abs"] = rho.period_abs().to_string();
    out.text() << "expected |period| = " << rho.period_abs().to_string() << "\n";
    if (product && torsion) {
        const long agree = residual(*product, *torsion);
        res["agreement"] = agree;
        out.text() << "agreement: " << agree << " digits\n";
        if (R.id() == RingId::A1) {
            const long inv = residual(-product->inverse(), *torsion);
            res["agreement_reciprocal"] = inv;
            out.text() << "agreement after inverting the eighth root: " << inv << " digits\n";
        }
    }
    out.doc()["result"] = res;
    out.emit();
    return 0;
}

int cmd_lambda(const Config& c, const std::string& prime, std::uint64_t m, const std::string& b) {
    const Ring& R = ring_of(c);
    const LocalField& L = standard_field(R, working(c));
    const SeriesResult r =
        lambda_value(DrinfeldModule::get(R), m, RingElem::parse(R, b), RingElem::parse(R, prime), L);
    Output out(c, "lambda", true);
    out.doc()["prime"] = prime;
    out.doc()["m"] = m;
    out.doc()["b"] = b;
    out.doc()["result"] = series_json(r, c);
    out.text() << "lambda_" << m << "((" << b << ")/(" << prime << "))\n  " << laurent_text(r.value, c) << "\n"
               << "  degree cutoff " << r.degree_cutoff << "\n";
    out.emit();
    return 0;
}

int cmd_dual(const Config& c, const std::string& prime) {
    const Ring& R = ring_of(c);
    const LocalField& L = standard_field(R, working(c));
    const DualCoeffTable T = dual_coeffs(DrinfeldModule::get(R), RingElem::parse(R, prime), L);
    Output out(c, "dual-coeffs", true);
    json rows = json::array();
    for (std::size_t k = 0; k < T.size(); ++k) {
        json coeffs = json::array();
        out.text() << "a = " << T.residues[k].pretty() << "\n";
        for (std::size_t m = 0; m < T.coeffs[k].size(); ++m) {
            coeffs.push_back(laurent_json(T.coeffs[k][m], c));
            out.text() << "  e*_" << m + 1 << " = " << laurent_text(T.coeffs[k][m], c) << "\n";
        }
        rows.push_back({{"residue", T.residues[k].pretty()}, {"node", laurent_json(T.nodes[k], c)}, {"coeffs", coeffs}});
    }
    out.doc()["prime"] = prime;
    out.doc()["result"] = {{"rows", rows},
                           {"determinant_valuation", T.determinant_valuation},
                           {"relation_residual", T.relation_residual}};
    out.text() << "relation residual " << T.relation_residual << ", determinant valuation "
               << T.determinant_valuation << "\n";
    out.emit();
    return 0;
}

json report_json(const VerificationReport& r) {
    json checks = json::array();
    for (const auto& k : r.checks) {
        json j{{"check_id", k.id}, {"anchor", k.anchor}};
        j["residual_valuation"] = k.residual ? json(*k.residual) : json(nullptr);
        j["required"] = k.required;
        j["pass"] = k.pass;
        j["gating"] = k.gating;
        if (!k.note.empty()) j["note"] = k.note;
        checks.push_back(j);
    }
    return {{"title", r.title}, {"working_precision", r.options.working()}, {"passed", r.passed()}, {"checks", checks}};
}

void report_text(std::ostream& os, const VerificationReport& r) {
    os << r.title << " (working precision " << r.options.working() << ")\n";
    for (const auto& k : r.checks) {
        const char* tag = k.pass ? "PASS" : k.gating ? "FAIL" : "INFO";
        os << "  " << tag << "  " << k.id;
        if (k.residual) os << "  " << *k.residual << "/" << k.required;
        os << "  " << k.anchor;
        if (!k.note.empty()) os << "  [" << k.note << "]";
        os << "\n";
    }
    os << (r.passed() ? "  all gating checks pass\n" : "  some gating checks FAIL\n");
}

int cmd_verify(const Config& c, const std::string& example, const std::string& prime, long headroom) {
    VerifyOptions o;
    o.precision = c.precision;
    o.guard = c.guard;
    o.headroom = headroom;
    std::vector<VerificationReport> reports;
    if (!prime.empty()) {
        const Ring& R = ring_of(c);
        reports.push_back(verify_prime(R, RingElem::parse(R, prime), o));
    } else if (example == "all") {
        for (int k = 1; k <= 3; ++k) reports.push_back(verify_example(k, o));
    } else {
        reports.push_back(verify_example(std::stoi(example), o));
    }
    Output out(c, "verify", false);
    out.doc()["config"]["headroom"] = o.working() - o.precision - o.guard;
    json arr = json::array();
    bool ok = true;
    for (const auto& r : reports) {
        arr.push_back(report_json(r));
        report_text(out.text(), r);
        ok = ok && r.passed();
    }
    out.doc()["reports"] = arr;
    out.doc()["passed"] = ok;
    out.emit();
    return ok ? 0 : 1;
}

int cmd_rank_set(const Config& c, std::uint64_t q, std::uint64_t d) {
    const RankSet r = rank_set(q, d);
    Output out(c, "rank-set", false);
    out.doc()["config"].erase("ring");
    out.doc()["config"].erase("q");
    const std::uint64_t formula = rank_formula(q, d);
    out.doc()["result"] = {{"q", q}, {"d", d}, {"members", r.members}, {"rank", r.rank}, {"formula", formula}};
    out.text() << "{";
    for (std::size_t i = 0; i < r.members.size(); ++i) out.text() << (i ? "," : "") << r.members[i];
    out.text() << "}, rank " << r.rank << "\n";
    out.emit();
    return r.rank == formula ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Special polynomials, Goss L-values and twisted harmonic sums for Drinfeld modules"};
    app.require_subcommand(1);
    app.fallthrough();
    Config c;
    app.add_option("--prec", c.precision, "Precision N in digits")->check(CLI::Range(1L, 100000L));
    app.add_option("--guard", c.guard, "Guard digits")->check(CLI::Range(0L, 1000L));
    app.add_option("--format", c.format, "Output format")->check(CLI::IsMember({"text", "json"}));
    app.add_option("--threads", c.threads, "Worker threads (overrides GOSS_THREADS)");
    app.add_option("--terms", c.terms, "Series terms shown in text output")->check(CLI::Range(0L, 100000L));
    auto add_ring = [&](CLI::App* sub) {
        sub->add_option("--ring", c.ring, "A0 (F_q[t]) or A1 (F_3[t,e], e^2 = t^3 - t - 1)")
            ->check(CLI::IsMember({"A0", "A1"}));
        sub->add_option("--q", c.q, "Base field size for A0")->check(CLI::Range(2u, 64u));
    };

    std::uint64_t m = 0;
    std::optional<int> z_bound;
    int extend = 2;
    auto* sp = app.add_subcommand("special-poly", "Anderson special polynomial S_m(x, z)");
    add_ring(sp);
    sp->add_option("--m", m, "Exponent m")->required();
    sp->add_option("--z-bound", z_bound, "Compute z^(q^n) terms for n up to this bound");
    sp->add_option("--extend", extend, "Raises of the default bound while the top term is nonzero")
        ->check(CLI::Range(0, 8));

    std::string prime = "t", chr = "0";
    long s = 1;
    auto* lv = app.add_subcommand("lvalue", "Goss L-value L(s, chi)");
    add_ring(lv);
    lv->add_option("--prime", prime, "Monic irreducible modulus, e.g. t^2+1");
    lv->add_option("--char", chr, "Character exponent j (or prime:j)");
    lv->add_option("--s", s, "Positive integer s")->check(CLI::PositiveNumber);

    std::string method = "both";
    auto* pe = app.add_subcommand("period", "Period of the Drinfeld module");
    add_ring(pe);
    pe->add_option("--method", method, "product, torsion-log or both")
        ->check(CLI::IsMember({"product", "torsion-log", "both"}));

    std::string b = "1";
    auto* la = app.add_subcommand("lambda", "Twisted harmonic sum lambda_m(b/prime)");
    add_ring(la);
    la->add_option("--prime", prime, "Monic irreducible modulus");
    la->add_option("--m", m, "Exponent m");
    la->add_option("--b", b, "Numerator b");

    auto* du = app.add_subcommand("dual-coeffs", "Dual coefficients e*_m(a)");
    add_ring(du);
    du->add_option("--prime", prime, "Monic irreducible modulus");

    std::string example = "all", vprime;
    long headroom = -1;
    auto* ve = app.add_subcommand("verify", "Verification harness");
    add_ring(ve);
    ve->add_option("--example", example, "1, 2, 3 or all")->check(CLI::IsMember({"1", "2", "3", "all"}));
    ve->add_option("--prime", vprime, "Check the identity suite at this prime of --ring instead");
    ve->add_option("--headroom", headroom, "Extra working digits (default N/2)");

    std::uint64_t rq = 3, rd = 1;
    auto* rs = app.add_subcommand("rank-set", "The index set N and its rank");
    rs->add_option("--q", rq, "Prime power q")->required();
    rs->add_option("--d", rd, "Degree d")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }
    if (!c.threads.empty()) setenv("GOSS_THREADS", c.threads.c_str(), 1);
    if (c.ring == "A1") c.q = 3;

    try {
        if (*sp) return cmd_special_poly(c, m, z_bound, extend);
        if (*lv) return cmd_lvalue(c, prime, chr, s);
        if (*pe) return cmd_period(c, method);
        if (*la) return cmd_lambda(c, prime, m, b);
        if (*du) return cmd_dual(c, prime);
        if (*ve) return cmd_verify(c, example, vprime, headroom);
        if (*rs) return cmd_rank_set(c, rq, rd);
    } catch (const Error& e) {
        json err{{"schema", kSchema}, {"error", {{"kind", e.kind()}, {"message", e.what()}}}};
        if (c.format == "json")
            std::cout << err.dump(2) << "\n";
        else
            std::cerr << "error: " << e.kind() << ": " << e.what() << "\n";
        return is_usage_error(e) ? 2 : 1;
    }
    return 2;
}
