#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "flatlab/cli/commands.hpp"

namespace {

using namespace flatlab::cli;

std::pair<std::uint64_t, std::uint64_t> parse_range(const std::string& text) {
    const auto dots = text.find("..");
    if (dots == std::string::npos) throw CLI::ValidationError("--primes", "expected MIN..MAX");
    try {
        return {std::stoull(text.substr(0, dots)), std::stoull(text.substr(dots + 2))};
    } catch (const std::exception&) {
        throw CLI::ValidationError("--primes", "expected MIN..MAX");
    }
}

std::vector<long long> parse_weights(const std::string& text) {
    if (text == "fermat") return {};
    std::vector<long long> out;
    std::size_t start = 0;
    while (start <= text.size()) {
        const auto comma = text.find(',', start);
        const std::string item = text.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
        try {
            std::size_t used = 0;
            out.push_back(std::stoll(item, &used));
            if (used != item.size()) throw std::invalid_argument(item);
        } catch (const std::exception&) {
            throw CLI::ValidationError("--weights", "expected fermat or a comma-separated list of integers");
        }
        if (comma == std::string::npos) break;
        start = comma + 1;
    }
    return out;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"flatlab: invariant forms and orbifolds of rational maps mod p"};
    app.require_subcommand(1);

    std::string expr;
    std::string primes = "5..50";
    std::string weights = "fermat";
    std::optional<unsigned> max_pole;
    std::optional<unsigned> max_num;
    unsigned jobs = 1;
    unsigned min_primes = 8;
    bool as_json = false;
    bool char0 = false;
    bool timings = false;
    auto* classify = app.add_subcommand("classify", "sweep primes and classify a map over Q");
    classify->add_option("expr", expr, "rational map in t (or x)")->required();
    classify->add_option("--primes", primes, "prime range MIN..MAX")->capture_default_str();
    classify->add_option("--weights", weights, "fermat or a comma-separated weight list")->capture_default_str();
    classify->add_option("--max-pole-order", max_pole, "pole order bound of the form search");
    classify->add_option("--max-num-degree", max_num, "numerator degree bound of the form search");
    classify->add_option("--jobs", jobs, "worker threads")->check(CLI::PositiveNumber);
    classify->add_option("--min-primes", min_primes, "good primes needed for flat-candidate")->capture_default_str();
    classify->add_flag("--json", as_json, "emit the JSON report");
    classify->add_flag("--char0", char0, "best-effort orbifold over Q");
    classify->add_flag("--timings", timings, "include per-prime timings");

    std::uint64_t p = 0;
    std::string form;
    long long weight = 0;
    std::optional<std::string> lambda;
    auto* verify = app.add_subcommand("verify", "check sigma^* omega = lambda omega mod p");
    verify->add_option("expr", expr, "rational map over Q")->required();
    verify->add_option("--p", p, "prime")->required();
    verify->add_option("--form", form, "coefficient function f of omega")->required();
    verify->add_option("--weight", weight, "weight of omega")->required();
    verify->add_option("--lambda", lambda, "expected lambda");
    bool verbose = false;
    verify->add_flag("--verbose", verbose, "print the pullback");

    ConstructRequest creq;
    std::optional<std::uint64_t> cp;
    auto* construct = app.add_subcommand("construct", "build a flat map with its certificate");
    construct->add_option("family", creq.family, "power | cheb | lattes")->required();
    construct->add_option("args", creq.args, "family parameters")->allow_extra_args();
    construct->add_option("--p", cp, "reduce modulo this prime");
    construct->add_flag("--negative", creq.negative, "use -Cheb_d");
    construct->add_flag("--json", as_json, "emit JSON");
    construct->positionals_at_end(false);

    auto* orbifold = app.add_subcommand("orbifold", "orbifold data of a map mod p");
    orbifold->add_option("expr", expr, "rational map over Q")->required();
    orbifold->add_option("--p", p, "prime")->required();
    orbifold->add_flag("--json", as_json, "emit JSON");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kUsageError;
    }

    try {
        if (*classify) {
            ClassifyOptions opt;
            std::tie(opt.prime_min, opt.prime_max) = parse_range(primes);
            opt.weights = parse_weights(weights);
            opt.bounds.max_pole_order = max_pole;
            opt.bounds.max_num_degree = max_num;
            opt.jobs = jobs;
            opt.min_primes = min_primes;
            opt.char0 = char0;
            opt.timings = timings;
            const ClassifyReport rep = cmd_classify(expr, opt);
            std::cout << (as_json ? to_json(rep).dump(2) + "\n" : to_text(rep));
            return exit_code(rep.verdict);
        }
        if (*verify) {
            const VerifyResult r = cmd_verify(expr, p, form, weight, lambda);
            std::cout << r.status;
            if (r.lambda && r.status != "neither") std::cout << " lambda=" << *r.lambda;
            std::cout << "\n";
            if (!r.detail.empty()) std::cout << "detail: " << r.detail << "\n";
            if (verbose) std::cout << "pullback: " << r.pullback << "\n";
            return r.status == "neither" ? kNotFlat : kFlatCandidate;
        }
        if (*construct) {
            creq.p = cp;
            const auto j = cmd_construct(creq);
            std::cout << (as_json ? j.dump(2) + "\n" : construct_text(j));
            return 0;
        }
        if (*orbifold) {
            const auto j = cmd_orbifold(expr, p);
            std::cout << (as_json ? j.dump(2) + "\n" : orbifold_text(j));
            return 0;
        }
    } catch (const flatlab::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsageError;
    } catch (const CLI::ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsageError;
    }
    return kUsageError;
}
