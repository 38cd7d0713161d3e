#include <algorithm>
#include <atomic>
#include <chrono>
#include <exception>
#include <set>
#include <sstream>
#include <thread>

#include "flatlab/cli/commands.hpp"
#include "flatlab/dynamics/critical.hpp"
#include "flatlab/ratfunc/display.hpp"
#include "flatlab/ratfunc/expr.hpp"
#include "flatlab/ratfunc/reduce.hpp"

namespace flatlab::cli {

ParsedMap parse_map(const std::string& text) {
    ExprParser<Rationals> parser(text, Rationals{});
    RatFunc<Rationals> map = parser.parse();
    if (map.degree() < 2) throw DegreeTooSmall("map must have degree >= 2");
    return {std::move(map), parser.variable()};
}

std::string to_string(Label l) {
    switch (l) {
        case Label::flat_candidate:
            return "flat-candidate";
        case Label::not_flat:
            return "not-flat";
        case Label::inconclusive:
            return "inconclusive";
    }
    return "";
}

namespace {

template <class K>
std::vector<std::pair<std::string, std::string>> mu_strings(const K& field, const OrbifoldData<K>& orb) {
    std::vector<std::pair<std::string, std::string>> out;
    for (const auto& [pt, mu] : orb.postcritical) out.emplace_back(flatlab::to_string(field, pt), mu.to_string());
    return out;
}

}  // namespace

PrimeReport classify_prime(const RatFunc<Rationals>& sigma, char var, std::uint64_t p, const ClassifyOptions& opt) {
    const auto start = std::chrono::steady_clock::now();
    PrimeReport r;
    r.p = p;
    const Reduction red = rf_reduce_mod_p(sigma, p);
    if (!red.good()) {
        r.reason = red.reason();
        return r;
    }
    r.good = true;
    const FqRatFunc& s = *red.map;
    std::optional<DynamicalData> dyn;
    try {
        dyn.emplace(analyze_dynamics(s));
    } catch (const OrbitLimitExceeded& e) {
        r.reason = e.what();
        return r;
    }
    r.analyzed = true;
    const GaloisField& big = dyn->locus.field;
    r.field_degree = big.degree();
    for (const auto& c : dyn->locus.points) r.critical.emplace_back(flatlab::to_string(big, c.point), std::to_string(c.e));
    const auto orb = orbifold_data(dyn->graph);
    r.chi = orb.chi;
    r.signature = parabolic_signature(orb);
    r.postcritical = mu_strings(big, orb);

    std::size_t finite_postcritical = 0;
    for (const auto& [pt, mu] : orb.postcritical) finite_postcritical += pt.is_infinity() ? 0 : 1;
    std::vector<long long> weights = opt.weights;
    if (weights.empty()) weights.push_back(static_cast<long long>(p - 1));
    for (long long w : weights) {
        SearchNote note;
        note.weight = w;
        if (static_cast<std::uint64_t>(w) % p == 0) {
            note.status = "skipped: weight divisible by p";
            r.searches.push_back(note);
            continue;
        }
        const unsigned pole = opt.bounds.max_pole_order.value_or(static_cast<unsigned>(w));
        const std::uint64_t estimate = static_cast<std::uint64_t>(pole) * finite_postcritical;
        if (orb.chi != 0 && estimate > opt.nonparabolic_search_limit) {
            note.status = "skipped: chi != 0 and denominator degree " + std::to_string(estimate) + " exceeds " +
                          std::to_string(opt.nonparabolic_search_limit);
            r.searches.push_back(note);
            continue;
        }
        const SearchResult res = invariant_search(s, *dyn, w, opt.bounds);
        note.status = "run";
        note.max_pole_order = res.max_pole_order;
        note.max_num_degree = res.max_num_degree;
        note.bounds_too_small = res.bounds_too_small;
        r.searches.push_back(note);
        for (const auto& form : res.basis) r.forms_found.push_back({form.weight, to_factored_string(form.f, var)});
    }
    if (!r.forms_found.empty() && r.chi != 0) {
        throw InternalError("invariant form found at p = " + std::to_string(p) + " while chi != 0");
    }
    if (opt.timings) {
        r.millis = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    }
    return r;
}

Verdict decide(const std::vector<PrimeReport>& primes, const ClassifyOptions& opt) {
    Verdict v;
    std::set<FlatHint> hints;
    std::optional<std::uint64_t> first_nonzero;
    for (const auto& r : primes) {
        ++v.tested;
        if (!r.good) {
            ++v.bad;
            continue;
        }
        ++v.good;
        if (!r.analyzed) {
            ++v.unanalyzed;
            continue;
        }
        if (!r.forms_found.empty()) ++v.with_forms;
        if (r.chi == 0) {
            ++v.chi_zero;
            if (r.signature.hint) hints.insert(*r.signature.hint);
        } else {
            ++v.chi_nonzero;
            if (!first_nonzero) first_nonzero = r.p;
        }
    }
    const std::string range = std::to_string(opt.prime_min) + ".." + std::to_string(opt.prime_max);
    if (v.chi_nonzero > 0) {
        v.label = Label::not_flat;
        v.note = "chi != 0 at " + std::to_string(v.chi_nonzero) + " good prime(s) in " + range + " (first p = " +
                 std::to_string(*first_nonzero) + "); a flat map has chi = 0 at all but finitely many primes";
    } else if (v.chi_zero >= opt.min_primes) {
        v.label = Label::flat_candidate;
        for (auto h : hints) v.hints.push_back(flatlab::to_string(h));
        v.note = "candidate only: chi = 0 at all " + std::to_string(v.chi_zero) + " analyzed good primes in " +
                 range + "; a finite sweep is evidence, not a proof";
    } else {
        v.label = Label::inconclusive;
        v.note = "only " + std::to_string(v.chi_zero) + " good prime(s) with chi = 0 in " + range + ", need " +
                 std::to_string(opt.min_primes);
    }
    return v;
}

Char0Report char0_orbifold(const RatFunc<Rationals>& sigma, unsigned max_steps, unsigned max_bits) {
    Char0Report r;
    const auto crit = rational_critical_points(sigma);
    if (!crit) {
        r.reason = "unsupported over Q: critical points are not all rational";
        return r;
    }
    const auto admissible = [max_bits](const BigRational& v) {
        return mpz_sizeinbase(v.get_num_mpz_t(), 2) + mpz_sizeinbase(v.get_den_mpz_t(), 2) <= max_bits;
    };
    try {
        const auto g = build_orbit_graph(sigma, *crit, static_cast<std::size_t>(max_steps) * crit->size(), admissible);
        const auto orb = orbifold_data(g);
        r.supported = true;
        r.chi = orb.chi;
        r.signature = parabolic_signature(orb);
        r.postcritical = mu_strings(Rationals{}, orb);
    } catch (const OrbitLimitExceeded& e) {
        r.reason = std::string("unsupported over Q: ") + e.what();
    }
    return r;
}

ClassifyReport classify_map(const RatFunc<Rationals>& sigma, char var, const std::string& input,
                            const ClassifyOptions& opt) {
    if (sigma.degree() < 2) throw DegreeTooSmall("map must have degree >= 2");
    if (opt.prime_min > opt.prime_max) throw Error("empty prime range");
    for (long long w : opt.weights) {
        if (w <= 0) throw BadWeight("weights must be positive");
    }
    ClassifyReport rep;
    rep.input = input;
    rep.degree = sigma.degree();
    rep.var = var;
    rep.prime_min = opt.prime_min;
    rep.prime_max = opt.prime_max;
    std::vector<std::uint64_t> primes;
    for (std::uint64_t p = std::max<std::uint64_t>(opt.prime_min, 2); p <= opt.prime_max; ++p) {
        if (is_prime(p)) primes.push_back(p);
    }
    rep.primes.resize(primes.size());
    std::vector<std::exception_ptr> errors(primes.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&]() {
        while (true) {
            const std::size_t i = next.fetch_add(1);
            if (i >= primes.size()) return;
            try {
                rep.primes[i] = classify_prime(sigma, var, primes[i], opt);
            } catch (...) {
                errors[i] = std::current_exception();
            }
        }
    };
    const unsigned threads = std::min<unsigned>(std::max(opt.jobs, 1U), static_cast<unsigned>(primes.size()));
    if (threads <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }
    for (const auto& e : errors) {
        if (e) std::rethrow_exception(e);
    }
    rep.verdict = decide(rep.primes, opt);
    if (opt.char0) rep.char0 = char0_orbifold(sigma);
    return rep;
}

ClassifyReport cmd_classify(const std::string& expr, const ClassifyOptions& opt) {
    const ParsedMap pm = parse_map(expr);
    return classify_map(pm.map, pm.var, expr, opt);
}

int exit_code(const Verdict& v) {
    switch (v.label) {
        case Label::flat_candidate:
            return kFlatCandidate;
        case Label::not_flat:
            return kNotFlat;
        case Label::inconclusive:
            return kInconclusive;
    }
    return kInconclusive;
}

namespace {

json signature_json(const Signature& s) {
    json arr = json::array();
    for (const auto& m : s.values) {
        if (m.is_infinity()) {
            arr.push_back("inf");
        } else {
            arr.push_back(m.value());
        }
    }
    return arr;
}

json pairs_json(const std::vector<std::pair<std::string, std::string>>& v, const char* key, bool numeric) {
    json arr = json::array();
    for (const auto& [pt, val] : v) {
        json item{{"point", pt}};
        if (numeric && val != "inf") {
            item[key] = std::stoull(val);
        } else {
            item[key] = val;
        }
        arr.push_back(item);
    }
    return arr;
}

}  // namespace

json to_json(const ClassifyReport& r) {
    json primes = json::array();
    for (const auto& pr : r.primes) {
        json j{{"p", pr.p}, {"good", pr.good}};
        if (!pr.good || !pr.analyzed) {
            j["reason"] = pr.reason;
            primes.push_back(j);
            continue;
        }
        j["field_degree"] = pr.field_degree;
        j["chi"] = to_fraction_string(pr.chi);
        j["signature"] = signature_json(pr.signature);
        j["parabolic"] = pr.signature.parabolic;
        j["critical"] = pairs_json(pr.critical, "e", true);
        j["postcritical"] = pairs_json(pr.postcritical, "mu", true);
        json forms = json::array();
        for (const auto& f : pr.forms_found) forms.push_back({{"weight", f.weight}, {"f", f.f}});
        j["forms_found"] = forms;
        json searches = json::array();
        for (const auto& s : pr.searches) {
            json sj{{"weight", s.weight}, {"status", s.status}};
            if (s.status == "run") {
                sj["max_pole_order"] = s.max_pole_order;
                sj["max_num_degree"] = s.max_num_degree;
                sj["bounds_too_small"] = s.bounds_too_small;
            }
            searches.push_back(sj);
        }
        j["searches"] = searches;
        if (pr.millis) j["millis"] = *pr.millis;
        primes.push_back(j);
    }
    const Verdict& v = r.verdict;
    json out{{"input", r.input},
             {"degree", r.degree},
             {"primes", primes},
             {"verdict",
              {{"label", to_string(v.label)},
               {"hints", v.hints},
               {"note", v.note},
               {"counts",
                {{"tested", v.tested},
                 {"good", v.good},
                 {"bad", v.bad},
                 {"unanalyzed", v.unanalyzed},
                 {"chi_zero", v.chi_zero},
                 {"chi_nonzero", v.chi_nonzero},
                 {"with_forms", v.with_forms}}}}}};
    if (r.char0) {
        if (r.char0->supported) {
            out["char0"] = {{"supported", true},
                            {"chi", to_fraction_string(r.char0->chi)},
                            {"signature", signature_json(r.char0->signature)},
                            {"postcritical", pairs_json(r.char0->postcritical, "mu", true)}};
        } else {
            out["char0"] = {{"supported", false}, {"reason", r.char0->reason}};
        }
    }
    return out;
}

std::string to_text(const ClassifyReport& r) {
    std::ostringstream out;
    out << "input: " << r.input << "\n";
    out << "degree: " << r.degree << "\n";
    for (const auto& pr : r.primes) {
        out << "p=" << pr.p << " ";
        if (!pr.good) {
            out << "bad: " << pr.reason << "\n";
            continue;
        }
        if (!pr.analyzed) {
            out << "unanalyzed: " << pr.reason << "\n";
            continue;
        }
        out << "k=" << pr.field_degree << " chi=" << to_fraction_string(pr.chi)
            << " signature=" << pr.signature.to_string();
        if (pr.forms_found.empty()) {
            out << " forms=none";
        } else {
            for (const auto& f : pr.forms_found) out << " form=(" << f.f << ")*(d" << r.var << ")^" << f.weight;
        }
        if (pr.millis) out << " ms=" << *pr.millis;
        out << "\n";
    }
    const Verdict& v = r.verdict;
    out << "verdict: " << to_string(v.label);
    if (!v.hints.empty()) {
        out << " (";
        for (std::size_t i = 0; i < v.hints.size(); ++i) out << (i ? ", " : "") << v.hints[i];
        out << ")";
    }
    out << "\n";
    out << "counts: tested=" << v.tested << " good=" << v.good << " bad=" << v.bad << " chi_zero=" << v.chi_zero
        << " chi_nonzero=" << v.chi_nonzero << " with_forms=" << v.with_forms << "\n";
    out << "note: " << v.note << "\n";
    if (r.char0) {
        if (r.char0->supported) {
            out << "char0: chi=" << to_fraction_string(r.char0->chi) << " signature=" << r.char0->signature.to_string()
                << "\n";
        } else {
            out << "char0: " << r.char0->reason << "\n";
        }
    }
    return out.str();
}

}  // namespace flatlab::cli
