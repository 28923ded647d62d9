// totreal: exact computations in totally real fields from the command line.
//
// Subcommands: field-info, g, classify-small, gamma, units, represent,
// verify-bound, q42-search, prime-seq, squarefree-scan, tower, house,
// member, local-represent.  Output is JSON (default) or text; identical
// arguments and seed always produce byte-identical output.

#include <CLI11.hpp>

#include <cctype>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "totreal/battery.hpp"
#include "totreal/constructions.hpp"
#include "totreal/cyclo.hpp"
#include "totreal/json_io.hpp"
#include "totreal/padics.hpp"
#include "totreal/qlattice.hpp"
#include "totreal/units.hpp"

using namespace totreal;

namespace {

struct Config {
    long precision_bits = 64;     // interval refinement floor
    unsigned long budget = 4000000; // enumeration node cap
    std::string format = "json";
    std::uint64_t seed = 0;
};

void load_config_file(Config& cfg) {
    const char* path = std::getenv("TOTREAL_CONFIG");
    if (!path) return;
    std::ifstream in(path);
    if (!in) throw error("ConfigError", std::string("cannot open config file ") + path);
    std::string line;
    while (std::getline(in, line)) {
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        auto eq = line.find('=');
        if (eq == std::string::npos) continue;
        auto trim = [](std::string s) {
            while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.erase(s.begin());
            while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.pop_back();
            return s;
        };
        std::string key = trim(line.substr(0, eq));
        std::string value = trim(line.substr(eq + 1));
        if (key == "default_precision_bits") cfg.precision_bits = std::stol(value);
        else if (key == "enumeration_budget") cfg.budget = std::stoul(value);
        else if (key == "output_format") cfg.format = value;
        else if (key == "seed") cfg.seed = std::stoull(value);
        else throw error("ConfigError", "unknown config key: " + key);
    }
    if (cfg.precision_bits < 32) throw error("ConfigError", "default_precision_bits must be >= 32");
    if (cfg.budget == 0) throw error("ConfigError", "enumeration_budget must be positive");
}

/// Usage-level failures: bad flags, malformed arguments, invalid field
/// polynomials.  Exit code 2.
struct usage_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// --------------------------------------------------------------------------
// small parsers
// --------------------------------------------------------------------------

/// "x^3+x^2-2x-1", "x^2 - 2", "[c0,c1,...]" -> integer polynomial.
ZPoly parse_poly(const std::string& input) {
    std::string s;
    for (char c : input)
        if (!std::isspace(static_cast<unsigned char>(c))) s += c;
    if (s.empty()) throw usage_error("empty polynomial");
    if (s.front() == '[') {
        json arr = json::parse(s, nullptr, false);
        if (arr.is_discarded() || !arr.is_array()) throw usage_error("bad coefficient list");
        std::vector<Int> c;
        for (const auto& v : arr) {
            if (v.is_number_integer()) c.emplace_back(static_cast<long>(v.get<long long>()));
            else if (v.is_string()) c.emplace_back(v.get<std::string>());
            else throw usage_error("bad coefficient entry");
        }
        return ZPoly(std::move(c));
    }
    std::map<long, Int> terms;
    std::size_t i = 0;
    while (i < s.size()) {
        int sign = 1;
        if (s[i] == '+') { ++i; }
        else if (s[i] == '-') { sign = -1; ++i; }
        if (i >= s.size()) throw usage_error("trailing sign in polynomial");
        std::string digits;
        while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) digits += s[i++];
        Int coeff = digits.empty() ? Int(1) : Int(digits);
        long exp = 0;
        if (i < s.size() && (s[i] == 'x' || s[i] == 'X')) {
            ++i;
            exp = 1;
            if (i < s.size() && s[i] == '^') {
                ++i;
                std::string e;
                while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) e += s[i++];
                if (e.empty()) throw usage_error("missing exponent");
                exp = std::stol(e);
            }
        } else if (digits.empty()) {
            throw usage_error("cannot parse polynomial near position " + std::to_string(i));
        }
        terms[exp] += sign * coeff;
        if (i < s.size() && s[i] == '*') {
            // allow forms like 2*x^3
            ++i;
            if (i >= s.size() || (s[i] != 'x' && s[i] != 'X')) throw usage_error("bad term");
            ++i;
            long e2 = 1;
            if (i < s.size() && s[i] == '^') {
                ++i;
                std::string e;
                while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) e += s[i++];
                if (e.empty()) throw usage_error("missing exponent");
                e2 = std::stol(e);
            }
            terms[exp] -= sign * coeff; // undo the constant interpretation
            terms[e2] += sign * coeff;
        }
        if (i < s.size() && s[i] != '+' && s[i] != '-')
            throw usage_error("cannot parse polynomial near position " + std::to_string(i));
    }
    long deg = 0;
    for (const auto& [e, c] : terms)
        if (c != 0) deg = std::max(deg, e);
    std::vector<Int> c(static_cast<std::size_t>(deg + 1), 0);
    for (const auto& [e, v] : terms)
        if (e <= deg) c[static_cast<std::size_t>(e)] = v;
    return ZPoly(std::move(c));
}

FieldPtr parse_field(const std::string& s) {
    ZPoly p = parse_poly(s);
    try {
        return NumberField::create(p);
    } catch (const error& e) {
        throw usage_error(std::string("invalid field polynomial: ") + e.what() + " [" + e.code() + "]");
    }
}

/// "1,0" or "[\"1/2\", 3]" -> coordinates.
std::vector<Rat> parse_coords(const std::string& input) {
    std::string s;
    for (char c : input)
        if (!std::isspace(static_cast<unsigned char>(c))) s += c;
    std::vector<Rat> out;
    if (!s.empty() && s.front() == '[') {
        json arr = json::parse(s, nullptr, false);
        if (arr.is_discarded() || !arr.is_array()) throw usage_error("bad coordinate list");
        for (const auto& v : arr) out.push_back(rat_from_json(v));
        return out;
    }
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        if (tok.empty()) continue;
        out.push_back(rat_from_string(tok));
    }
    if (out.empty()) throw usage_error("empty coordinate list");
    return out;
}

/// "g(1/7),g(2/7)" -> list of GExpr.
std::vector<GExpr> parse_gexprs(const std::string& input) {
    std::vector<GExpr> out;
    std::string s;
    for (char c : input)
        if (!std::isspace(static_cast<unsigned char>(c))) s += c;
    std::size_t i = 0;
    while (i < s.size()) {
        if (s.compare(i, 2, "g(") != 0) throw usage_error("expected g(s/n) at " + std::to_string(i));
        i += 2;
        auto close = s.find(')', i);
        if (close == std::string::npos) throw usage_error("unbalanced parenthesis");
        std::string body = s.substr(i, close - i);
        i = close + 1;
        if (i < s.size() && s[i] == ',') ++i;
        auto slash = body.find('/');
        long num, den;
        if (slash == std::string::npos) {
            num = std::stol(body);
            den = 1;
        } else {
            num = std::stol(body.substr(0, slash));
            den = std::stol(body.substr(slash + 1));
        }
        out.push_back(g_element(num, den));
    }
    return out;
}

std::vector<std::vector<FieldElement>> parse_gram(const FieldPtr& K, const std::string& s) {
    json arr = json::parse(s, nullptr, false);
    if (arr.is_discarded() || !arr.is_array()) throw usage_error("gram must be a JSON matrix");
    std::vector<std::vector<FieldElement>> gram;
    for (const auto& row : arr) {
        if (!row.is_array()) throw usage_error("gram rows must be arrays");
        std::vector<FieldElement> r;
        for (const auto& entry : row) {
            if (entry.is_array()) r.push_back(element_from_json(K, entry));
            else r.push_back(FieldElement::from_rational(K, rat_from_json(entry)));
        }
        gram.push_back(std::move(r));
    }
    return gram;
}

// --------------------------------------------------------------------------
// output
// --------------------------------------------------------------------------

struct Output {
    std::string format;
    json payload;
    std::string text;

    void emit() const {
        if (format == "json") std::cout << payload.dump(2) << "\n";
        else std::cout << text;
    }
};

std::string render_text(const json& j, int indent = 0) {
    std::ostringstream os;
    std::string pad(static_cast<std::size_t>(indent), ' ');
    if (j.is_object()) {
        for (auto it = j.begin(); it != j.end(); ++it) {
            if (it->is_object() || it->is_array()) {
                os << pad << it.key() << ":\n" << render_text(*it, indent + 2);
            } else {
                os << pad << it.key() << ": " << (it->is_string() ? it->get<std::string>() : it->dump()) << "\n";
            }
        }
    } else if (j.is_array()) {
        for (const auto& v : j) {
            if (v.is_object() || v.is_array()) os << render_text(v, indent + 2);
            else os << pad << "- " << (v.is_string() ? v.get<std::string>() : v.dump()) << "\n";
        }
    } else {
        os << pad << (j.is_string() ? j.get<std::string>() : j.dump()) << "\n";
    }
    return os.str();
}

} // namespace

int main(int argc, char** argv) {
    Config cfg;
    try {
        load_config_file(cfg);
    } catch (const error& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    }

    CLI::App app{"totreal: exact arithmetic in totally real number fields"};
    app.require_subcommand(1);
    app.fallthrough();
    app.add_option("--format", cfg.format, "output format: json or text")
        ->check(CLI::IsMember({"json", "text"}));
    app.add_option("--seed", cfg.seed, "seed for randomized commands");
    app.add_option("--budget", cfg.budget, "enumeration node budget")
        ->check(CLI::PositiveNumber);
    app.add_option("--precision", cfg.precision_bits, "interval refinement floor (bits)")
        ->check(CLI::Range(32L, 1L << 20));

    std::string field_str, alpha_str, gram_str, elem_str, r_str, in_str, out_str;
    long s_arg = 0, n_arg = 1, d_arg = 0, rank_arg = 2, count_arg = 1, limit_arg = 100,
         stages_arg = 1, base_bound_arg = 10, house_bound_arg = 10, trials_arg = 10;
    long p_arg = 2, precision_arg = 8;
    std::string palpha_str = "0";
    long max_lattices_arg = 200;

    auto* cmd_field_info = app.add_subcommand("field-info", "degree, embeddings and discriminant data of a field");
    cmd_field_info->add_option("--field", field_str, "monic integer minimal polynomial")->required();

    auto* cmd_g = app.add_subcommand("g", "the cyclotomic cosine g(s/n) = 2cos(2*pi*s/n)");
    cmd_g->add_option("--s", s_arg)->required();
    cmd_g->add_option("--n", n_arg)->required();

    auto* cmd_classify = app.add_subcommand("classify-small", "write an integral 0 < alpha < 4 as g(s/n)^2");
    cmd_classify->add_option("--field", field_str)->required();
    cmd_classify->add_option("--alpha", alpha_str, "power-basis coordinates")->required();

    auto* cmd_gamma = app.add_subcommand("gamma", "gamma_K of the 2-power cosine chain");
    cmd_gamma->add_option("--field", field_str)->required();

    auto* cmd_units = app.add_subcommand("units", "fundamental unit and totally positive unit square classes");
    cmd_units->add_option("--D", d_arg, "squarefree D > 1")->required();

    auto* cmd_represent = app.add_subcommand("represent", "decide representation of alpha by a quadratic lattice");
    cmd_represent->add_option("--field", field_str)->required();
    cmd_represent->add_option("--gram", gram_str, "JSON Gram matrix")->required();
    cmd_represent->add_option("--alpha", alpha_str)->required();

    auto* cmd_verify = app.add_subcommand("verify-bound", "randomized represented-class bound battery");
    cmd_verify->add_option("--D", d_arg)->required();
    cmd_verify->add_option("--rank", rank_arg)->required();
    cmd_verify->add_option("--trials", trials_arg)->required();
    cmd_verify->add_option("--house-bound", house_bound_arg);

    auto* cmd_q42 = app.add_subcommand("q42-search", "scan lattices for coverage beyond n classes");
    cmd_q42->add_option("--D", d_arg)->required();
    cmd_q42->add_option("--rank", rank_arg)->required();
    cmd_q42->add_option("--house-bound", house_bound_arg);
    cmd_q42->add_option("--max-lattices", max_lattices_arg);

    auto* cmd_prime_seq = app.add_subcommand("prime-seq", "primes q = 3 mod 4 with pairwise gcd(q_i-1, q_j-1) = 2");
    cmd_prime_seq->add_option("--count", count_arg)->required();

    auto* cmd_scan = app.add_subcommand("squarefree-scan", "n = 1 mod 12 with the three products squarefree");
    cmd_scan->add_option("--limit", limit_arg)->required();

    auto* cmd_tower = app.add_subcommand("tower", "stages of the compositum tower");
    cmd_tower->add_option("--stages", stages_arg)->required();
    cmd_tower->add_option("--base-bound", base_bound_arg);

    auto* cmd_house = app.add_subcommand("house", "compare house(x) with a rational");
    cmd_house->add_option("--field", field_str)->required();
    cmd_house->add_option("--elem", elem_str, "power-basis coordinates")->required();
    cmd_house->add_option("--r", r_str, "rational bound")->required();

    auto* cmd_member = app.add_subcommand("member", "basic-open membership H(A, B)");
    cmd_member->add_option("--field", field_str)->required();
    cmd_member->add_option("--in", in_str, "comma list of g(s/n) required in the field");
    cmd_member->add_option("--out", out_str, "comma list of g(s/n) required absent");

    auto* cmd_local = app.add_subcommand("local-represent", "p-adic witness for W^2+WX+X^2+Y^2+Z^2 = alpha");
    cmd_local->add_option("--p", p_arg)->required();
    cmd_local->add_option("--alpha", palpha_str)->required();
    cmd_local->add_option("--precision", precision_arg)->check(CLI::Range(1L, 10000L));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) { // --help
            return app.exit(e);
        }
        std::cerr << e.what() << "\n";
        return 2;
    }

    Output out;
    out.format = cfg.format;

    try {
        if (*cmd_field_info) {
            FieldPtr K = parse_field(field_str);
            json j;
            j["degree"] = K->degree();
            j["minpoly"] = to_json(K->minpoly());
            j["poly_discriminant"] = to_string(K->poly_discriminant());
            json embs = json::array();
            for (const auto& e : K->embeddings())
                embs.push_back(to_json(e.refine_to(static_cast<unsigned>(cfg.precision_bits))));
            j["embeddings"] = embs;
            out.payload = j;
        } else if (*cmd_g) {
            GExpr g = g_element(s_arg, n_arg);
            // very large orders have astronomically large minimal polynomials;
            // the symbolic data and the certified enclosure are always cheap
            bool with_minpoly = g.degree() <= 2048;
            json j = to_json(g, with_minpoly);
            j["degree"] = to_string(g.degree());
            j["interval"] = to_json(g.enclosure(static_cast<unsigned>(cfg.precision_bits)));
            out.payload = j;
        } else if (*cmd_classify) {
            FieldPtr K = parse_field(field_str);
            FieldElement alpha(K, parse_coords(alpha_str));
            auto [n, s] = classify_small(alpha);
            out.payload = json{{"n", n}, {"s", s}, {"repr", "g(" + std::to_string(s) + "/" + std::to_string(n) + ")^2"}};
        } else if (*cmd_gamma) {
            FieldPtr K = parse_field(field_str);
            out.payload = to_json(gamma(K));
        } else if (*cmd_units) {
            out.payload = to_json(tp_unit_square_classes(d_arg));
        } else if (*cmd_represent) {
            FieldPtr K = parse_field(field_str);
            auto gram = parse_gram(K, gram_str);
            QuadraticLattice L = lattice_create(K, gram);
            FieldElement alpha(K, parse_coords(alpha_str));
            out.payload = to_json(represent(L, alpha, cfg.budget));
        } else if (*cmd_verify) {
            BatteryResult r = run_bound_battery(d_arg, rank_arg, trials_arg, cfg.seed,
                                                house_bound_arg, cfg.budget);
            out.payload = to_json(r);
        } else if (*cmd_q42) {
            UnitClassReport report = tp_unit_square_classes(d_arg);
            Question42Result res = question42_search(report, rank_arg, house_bound_arg,
                                                     cfg.budget, max_lattices_arg);
            json j;
            j["D"] = d_arg;
            j["rank"] = rank_arg;
            j["examined"] = res.examined;
            j["max_coverage"] = res.max_coverage;
            j["hits"] = json::array();
            for (const auto& cov : res.hits) j["hits"].push_back(to_json(cov));
            j["note"] = res.hits.empty() ? "no lattice exceeded rank-many classes"
                                         : "FINDING: coverage above the rank, see hits";
            out.payload = j;
        } else if (*cmd_prime_seq) {
            PrimeSequence seq = prime_sequence(static_cast<std::size_t>(count_arg));
            json arr = json::array();
            for (const auto& q : seq.primes) arr.push_back(to_string(q));
            out.payload = arr;
        } else if (*cmd_scan) {
            out.payload = json(squarefree_triple_scan(limit_arg));
        } else if (*cmd_tower) {
            PrimeSequence seq = prime_sequence(static_cast<std::size_t>(stages_arg));
            json arr = json::array();
            for (long i = 0; i <= stages_arg; ++i)
                arr.push_back(to_json(tower_stage(i, seq, base_bound_arg)));
            out.payload = arr;
        } else if (*cmd_house) {
            FieldPtr K = parse_field(field_str);
            FieldElement x(K, parse_coords(elem_str));
            Ordering3 ord = house_compare(x, rat_from_string(r_str));
            out.payload = json{{"result", ord == Ordering3::LT   ? "LT"
                                          : ord == Ordering3::EQ ? "EQ"
                                                                 : "GT"}};
        } else if (*cmd_member) {
            FieldPtr K = parse_field(field_str);
            BasicOpen open_set;
            for (const auto& g : parse_gexprs(in_str)) open_set.require.push_back(g.value());
            for (const auto& g : parse_gexprs(out_str)) open_set.exclude.push_back(g.value());
            bool member = basic_open_membership(K, open_set);
            out.payload = json{{"member", member}, {"vacuous", open_set.is_vacuous()}};
        } else if (*cmd_local) {
            if (!is_prime(Int(p_arg))) throw usage_error("--p must be prime");
            if (precision_arg < 1) throw usage_error("--precision must be >= 1");
            PadicInt alpha(Int(p_arg), static_cast<int>(precision_arg), Int(palpha_str));
            out.payload = to_json(local_represent(Int(p_arg), alpha));
        }
    } catch (const usage_error& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const error& e) {
        if (cfg.format == "json") {
            json err{{"error", {{"type", e.code()}, {"message", e.what()}}}};
            std::cerr << err.dump(2) << "\n";
        } else {
            std::cerr << "error [" << e.code() << "]: " << e.what() << "\n";
        }
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    }

    out.text = render_text(out.payload);
    out.emit();
    return 0;
}
