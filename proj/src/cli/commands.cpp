#include <sstream>

#include "flatlab/atlas/atlas.hpp"
#include "flatlab/cli/commands.hpp"
#include "flatlab/dynamics/critical.hpp"
#include "flatlab/ratfunc/display.hpp"
#include "flatlab/ratfunc/expr.hpp"
#include "flatlab/ratfunc/reduce.hpp"

namespace flatlab::cli {

namespace {

FqRatFunc reduce_good(const RatFunc<Rationals>& sigma, std::uint64_t p) {
    const Reduction red = rf_reduce_mod_p(sigma, p);
    if (!red.good()) throw BadPrime("bad prime " + std::to_string(p) + ": " + red.reason());
    return *red.map;
}

BigRational parse_rational(const std::string& text) {
    const RatFunc<Rationals> r = rf_parse(text, Rationals{});
    if (!r.is_constant()) throw SyntaxError("expected a rational constant", 0);
    return r.constant_value();
}

long long parse_int(const std::string& text) {
    std::size_t used = 0;
    long long v = 0;
    try {
        v = std::stoll(text, &used);
    } catch (const std::exception&) {
        throw SyntaxError("expected an integer", 0);
    }
    if (used != text.size()) throw SyntaxError("expected an integer", used);
    return v;
}

std::string check_label(const FlatCertificate& c) {
    const auto inv = invariance_check(c.sigma, c.form);
    if (inv.invariant) return "invariant";
    return inv.lambda ? "semi-invariant" : "neither";
}

json reduced_json(const FlatCertificate& c, std::uint64_t p, char var) {
    const GaloisField& f = c.sigma.field();
    return {{"p", p},
            {"map", to_string(c.sigma, var)},
            {"form", {{"weight", c.form.weight}, {"f", to_factored_string(c.form.f, var)}}},
            {"lambda", f.to_string(c.lambda)},
            {"check", check_label(c)}};
}

}  // namespace

VerifyResult cmd_verify(const std::string& map_expr, std::uint64_t p, const std::string& form_expr, long long weight,
                        const std::optional<std::string>& lambda) {
    ExprParser<Rationals> parser(map_expr, Rationals{});
    const RatFunc<Rationals> sigma = parser.parse();
    if (sigma.degree() < 1) throw DegreeTooSmall("map must be non-constant");
    if (weight == 0) throw BadWeight("weight must be nonzero");
    const FqRatFunc s = reduce_good(sigma, p);
    const GaloisField& f = s.field();
    ExprParser<Rationals> form_parser(form_expr, Rationals{});
    const RatFunc<Rationals> fq = form_parser.parse();
    const FqForm form{reduce_coefficients(fq, f), weight};
    if (form.f.is_zero()) throw ZeroPolynomial("form vanishes mod p");
    const char var = parser.variable();

    VerifyResult out;
    const FqForm pulled = form_pullback(s, form);
    out.pullback = "(" + to_factored_string(pulled.f, var) + ")*(d" + std::string(1, var) + ")^" +
                   std::to_string(weight);
    const auto inv = invariance_check(s, form);
    if (!inv.lambda) {
        out.status = "neither";
        out.detail = "pullback quotient is not constant";
        return out;
    }
    out.lambda = f.to_string(*inv.lambda);
    out.status = inv.invariant ? "invariant" : "semi-invariant";
    if (lambda) {
        const FqRaw expected = f.from_rational(parse_rational(*lambda));
        if (!f.equal(expected, *inv.lambda)) {
            out.status = "neither";
            out.detail = "computed lambda " + *out.lambda + " differs from the expected " + f.to_string(expected);
        }
    }
    return out;
}

json cmd_construct(const ConstructRequest& req) {
    json out;
    const auto need = [&](std::size_t n) {
        if (req.args.size() != n) {
            throw Error(req.family + " expects " + std::to_string(n) + " argument(s)");
        }
    };
    if (req.family == "power") {
        need(1);
        const long long d = parse_int(req.args[0]);
        out = {{"family", "power"},
               {"map", to_integral_string(power_map(d), 't')},
               {"form", "(dt/t)^(p-1)"},
               {"lambda", "1"}};
        if (req.p) out["reduced"] = reduced_json(power_certificate(d, *req.p), *req.p, 't');
    } else if (req.family == "cheb") {
        need(1);
        const long long d = parse_int(req.args[0]);
        if (d < 2) throw DegreeTooSmall("Chebyshev map needs d >= 2");
        const auto ud = static_cast<unsigned>(d);
        out = {{"family", "chebyshev"},
               {"map", to_integral_string(RatFunc<Rationals>(chebyshev_poly(ud, req.negative)), 't')},
               {"form", "(dt)^(p-1)/(t^2 - 4)^((p-1)/2)"},
               {"lambda", "1"}};
        if (req.p) out["reduced"] = reduced_json(chebyshev_certificate(ud, req.negative, *req.p), *req.p, 't');
    } else if (req.family == "lattes") {
        need(3);
        const BigRational a = parse_rational(req.args[0]);
        const BigRational b = parse_rational(req.args[1]);
        const long long m = parse_int(req.args[2]);
        if (m < 2) throw DegreeTooSmall("Lattes map needs m >= 2");
        const auto um = static_cast<unsigned>(m);
        const EllipticCurve<Rationals> e{Rationals{}, a, b};
        out = {{"family", "lattes"},
               {"curve", "y^2 = " + to_string(e.cubic(), 'x')},
               {"map", to_integral_string(lattes_map(a, b, um), 'x')},
               {"form", "(dx)^2/(" + to_string(e.cubic(), 'x') + ")"},
               {"weight", 2},
               {"lambda", std::to_string(m * m)}};
        if (req.p) out["reduced"] = reduced_json(lattes_certificate(a, b, um, *req.p), *req.p, 'x');
    } else {
        throw Error("unknown family '" + req.family + "' (expected power, cheb or lattes)");
    }
    return out;
}

std::string construct_text(const json& j) {
    std::ostringstream out;
    out << "family: " << j["family"].get<std::string>() << "\n";
    if (j.contains("curve")) out << "curve: " << j["curve"].get<std::string>() << "\n";
    out << "map: " << j["map"].get<std::string>() << "\n";
    out << "form: " << j["form"].get<std::string>() << "\n";
    out << "lambda: " << j["lambda"].get<std::string>() << "\n";
    if (j.contains("reduced")) {
        const json& r = j["reduced"];
        out << "p: " << r["p"].get<std::uint64_t>() << "\n";
        out << "reduced map: " << r["map"].get<std::string>() << "\n";
        out << "reduced form: weight " << r["form"]["weight"].get<long long>() << ", f = "
            << r["form"]["f"].get<std::string>() << "\n";
        out << "reduced lambda: " << r["lambda"].get<std::string>() << "\n";
        out << "check: " << r["check"].get<std::string>() << "\n";
    }
    return out.str();
}

json cmd_orbifold(const std::string& expr, std::uint64_t p) {
    const ParsedMap pm = parse_map(expr);
    const FqRatFunc s = reduce_good(pm.map, p);
    const DynamicalData dyn = analyze_dynamics(s);
    const GaloisField& big = dyn.locus.field;
    const auto orb = orbifold_data(dyn.graph);
    const Signature sig = parabolic_signature(orb);
    json crit = json::array();
    for (const auto& c : dyn.locus.points) crit.push_back({{"point", flatlab::to_string(big, c.point)}, {"e", c.e}});
    json post = json::array();
    for (const auto& [pt, mu] : orb.postcritical) {
        json item{{"point", flatlab::to_string(big, pt)}};
        if (mu.is_infinity()) {
            item["mu"] = "inf";
        } else {
            item["mu"] = mu.value();
        }
        post.push_back(item);
    }
    json sigj = json::array();
    for (const auto& m : sig.values) {
        if (m.is_infinity()) {
            sigj.push_back("inf");
        } else {
            sigj.push_back(m.value());
        }
    }
    json out{{"input", expr},
             {"p", p},
             {"map", to_string(s, pm.var)},
             {"field_degree", big.degree()},
             {"critical", crit},
             {"postcritical", post},
             {"chi", to_fraction_string(orb.chi)},
             {"signature", sigj},
             {"parabolic", sig.parabolic}};
    if (big.degree() > 1) {
        std::vector<FqRaw> cs;
        const GaloisField fp = field_create(p, 1);
        for (auto c : big.desc().modulus) cs.push_back(fp.from_int(c));
        out["field_modulus"] = to_string(Poly<GaloisField>(fp, cs), 'a');
    }
    if (sig.hint) out["hint"] = flatlab::to_string(*sig.hint);
    return out;
}

std::string orbifold_text(const json& j) {
    std::ostringstream out;
    out << "map mod " << j["p"].get<std::uint64_t>() << ": " << j["map"].get<std::string>() << "\n";
    out << "field: F_" << j["p"].get<std::uint64_t>() << "^" << j["field_degree"].get<unsigned>();
    if (j.contains("field_modulus")) out << " = F_p[a]/(" << j["field_modulus"].get<std::string>() << ")";
    out << "\n";
    out << "critical:";
    for (const auto& c : j["critical"]) out << " " << c["point"].get<std::string>() << " (e=" << c["e"] << ")";
    out << "\n";
    out << "postcritical:";
    for (const auto& c : j["postcritical"]) {
        out << " " << c["point"].get<std::string>() << " (mu=";
        if (c["mu"].is_string()) {
            out << c["mu"].get<std::string>();
        } else {
            out << c["mu"];
        }
        out << ")";
    }
    out << "\n";
    out << "chi: " << j["chi"].get<std::string>() << "\n";
    out << "signature: (";
    bool first = true;
    for (const auto& m : j["signature"]) {
        out << (first ? "" : ",");
        first = false;
        if (m.is_string()) {
            out << m.get<std::string>();
        } else {
            out << m;
        }
    }
    out << ")" << (j["parabolic"].get<bool>() ? " parabolic" : "") << "\n";
    if (j.contains("hint")) out << "hint: " << j["hint"].get<std::string>() << "\n";
    return out.str();
}

}  // namespace flatlab::cli
