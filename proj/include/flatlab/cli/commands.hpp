#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "flatlab/exactnum/rational.hpp"
#include "flatlab/forms/search.hpp"
#include "flatlab/orbifold/orbifold.hpp"
#include "flatlab/ratfunc/ratfunc.hpp"

namespace flatlab::cli {

using nlohmann::json;

/// Exit statuses shared by all subcommands.
enum ExitCode : int { kFlatCandidate = 0, kNotFlat = 1, kInconclusive = 2, kUsageError = 3 };

struct ParsedMap {
    RatFunc<Rationals> map;
    char var;
};

/// Parses a map over Q; throws DegreeTooSmall for degree <= 1.
ParsedMap parse_map(const std::string& text);

struct ClassifyOptions {
    std::uint64_t prime_min = 5;
    std::uint64_t prime_max = 50;
    /// Empty means the Fermat policy: weight p - 1 only.
    std::vector<long long> weights;
    SearchBounds bounds;
    unsigned jobs = 1;
    bool char0 = false;
    unsigned min_primes = 8;
    /// Searches at primes with chi != 0 only while the maximal denominator has
    /// at most this degree.
    unsigned nonparabolic_search_limit = 256;
    bool timings = false;
};

struct FormFound {
    long long weight;
    std::string f;
};

struct SearchNote {
    long long weight;
    std::string status;  ///< "run", "skipped: weight divisible by p", "skipped: chi != 0, ..."
    unsigned max_pole_order = 0;
    unsigned max_num_degree = 0;
    bool bounds_too_small = false;
};

struct PrimeReport {
    std::uint64_t p = 0;
    bool good = false;
    std::string reason;  ///< why the prime is bad, or why a good prime was not analyzed
    bool analyzed = false;
    unsigned field_degree = 1;
    BigRational chi;
    Signature signature;
    std::vector<std::pair<std::string, std::string>> critical;      ///< (point, e)
    std::vector<std::pair<std::string, std::string>> postcritical;  ///< (point, mu)
    std::vector<FormFound> forms_found;
    std::vector<SearchNote> searches;
    std::optional<double> millis;
};

enum class Label { flat_candidate, not_flat, inconclusive };

std::string to_string(Label l);

struct Verdict {
    Label label = Label::inconclusive;
    std::vector<std::string> hints;
    unsigned tested = 0;
    unsigned good = 0;
    unsigned bad = 0;
    unsigned unanalyzed = 0;
    unsigned chi_zero = 0;
    unsigned chi_nonzero = 0;
    unsigned with_forms = 0;
    std::string note;
};

struct Char0Report {
    bool supported = false;
    std::string reason;
    BigRational chi;
    Signature signature;
    std::vector<std::pair<std::string, std::string>> postcritical;
};

struct ClassifyReport {
    std::string input;
    int degree = 0;
    char var = 't';
    std::uint64_t prime_min = 0;
    std::uint64_t prime_max = 0;
    std::vector<PrimeReport> primes;
    Verdict verdict;
    std::optional<Char0Report> char0;
};

/// Analysis of one prime. Throws InternalError if forms are found while chi != 0.
PrimeReport classify_prime(const RatFunc<Rationals>& sigma, char var, std::uint64_t p, const ClassifyOptions& opt);

Verdict decide(const std::vector<PrimeReport>& primes, const ClassifyOptions& opt);

ClassifyReport cmd_classify(const std::string& expr, const ClassifyOptions& opt);
ClassifyReport classify_map(const RatFunc<Rationals>& sigma, char var, const std::string& input,
                            const ClassifyOptions& opt);

/// Best-effort orbifold over Q for maps whose critical orbits stay rational.
Char0Report char0_orbifold(const RatFunc<Rationals>& sigma, unsigned max_steps = 64, unsigned max_bits = 4096);

int exit_code(const Verdict& v);
json to_json(const ClassifyReport& r);
std::string to_text(const ClassifyReport& r);

struct VerifyResult {
    std::string status;  ///< "invariant", "semi-invariant", "neither"
    std::optional<std::string> lambda;
    std::string detail;
    std::string pullback;
};

/// Exact check of sigma^* omega against omega over F_p; an expected lambda
/// that differs from the computed one yields "neither".
VerifyResult cmd_verify(const std::string& map_expr, std::uint64_t p, const std::string& form_expr, long long weight,
                        const std::optional<std::string>& lambda);

struct ConstructRequest {
    std::string family;            ///< power | cheb | lattes
    std::vector<std::string> args;
    bool negative = false;         ///< cheb: use -Cheb_d
    std::optional<std::uint64_t> p;
};

json cmd_construct(const ConstructRequest& req);
std::string construct_text(const json& j);

json cmd_orbifold(const std::string& expr, std::uint64_t p);
std::string orbifold_text(const json& j);

}  // namespace flatlab::cli
