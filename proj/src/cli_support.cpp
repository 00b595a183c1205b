#include "serieslab/cli_support.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>

#include "serieslab/heights.hpp"
#include "serieslab/json_io.hpp"
#include "serieslab/radical_tower.hpp"
#include "serieslab/um_certifier.hpp"

namespace serieslab {

// ---------------------------------------------------------------------------
// polynomial grammar

IntPolynomial parse_polynomial(const std::string& text) {
    std::map<unsigned long, BigInt> terms;
    std::size_t i = 0;
    auto skip_ws = [&] {
        while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
    };
    auto parse_digits = [&]() -> std::string {
        std::size_t start = i;
        while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
        if (i == start)
            throw DomainError("polynomial parse error at position " + std::to_string(start) +
                              ": expected digits");
        return text.substr(start, i - start);
    };
    skip_ws();
    if (i == text.size()) throw DomainError("empty polynomial");
    bool first = true;
    while (true) {
        skip_ws();
        if (i == text.size()) break;
        int sign = 1;
        if (text[i] == '+' || text[i] == '-') {
            sign = text[i] == '-' ? -1 : 1;
            ++i;
            skip_ws();
        } else if (!first) {
            throw DomainError("polynomial parse error at position " + std::to_string(i) +
                              ": expected '+' or '-'");
        }
        first = false;
        BigInt coeff;
        bool have_coeff = false;
        if (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
            coeff = BigInt(parse_digits());
            have_coeff = true;
            skip_ws();
            if (i < text.size() && text[i] == '*') {
                ++i;
                skip_ws();
            }
        }
        unsigned long exponent = 0;
        if (i < text.size() && (text[i] == 'T' || text[i] == 't')) {
            ++i;
            exponent = 1;
            skip_ws();
            if (i < text.size() && text[i] == '^') {
                ++i;
                skip_ws();
                exponent = std::stoul(parse_digits());
            }
        } else if (!have_coeff) {
            throw DomainError("polynomial parse error at position " + std::to_string(i) +
                              ": expected a coefficient or T");
        }
        if (!have_coeff) coeff = 1;
        terms[exponent] += sign * coeff;
    }
    unsigned long top = 0;
    for (const auto& [e, c] : terms)
        if (c != 0) top = std::max(top, e);
    std::vector<BigInt> coeffs(top + 1, BigInt(0));
    for (const auto& [e, c] : terms)
        if (c != 0) coeffs[e] += c;
    return IntPolynomial(std::move(coeffs));
}

BigRational parse_rational(const std::string& text) {
    BigRational r;
    if (mpq_set_str(r.get_mpq_t(), text.c_str(), 10) != 0)
        throw DomainError("malformed rational: " + text);
    if (r.get_den() == 0) throw DomainError("zero denominator in rational: " + text);
    r.canonicalize();
    return r;
}

// ---------------------------------------------------------------------------
// helpers

namespace {

nlohmann::json height_block(const HeightEnclosure& h) {
    nlohmann::json j;
    j["lower"] = h.lower.to_hex();
    j["lower_approx"] = h.lower.to_double();
    j["precision_bits"] = static_cast<long>(h.precision_used);
    j["upper"] = h.upper.to_hex();
    j["upper_approx"] = h.upper.to_double();
    return j;
}

NFElement parse_alpha(const std::string& text) {
    // "root:<poly>:<index>" or a plain rational
    if (text.rfind("root:", 0) == 0) {
        std::string rest = text.substr(5);
        std::size_t colon = rest.rfind(':');
        std::size_t index = 0;
        std::string poly_text = rest;
        if (colon != std::string::npos &&
            rest.find_first_not_of("0123456789", colon + 1) == std::string::npos &&
            colon + 1 < rest.size()) {
            index = std::stoul(rest.substr(colon + 1));
            poly_text = rest.substr(0, colon);
        }
        auto field = NumberField::create(parse_polynomial(poly_text), index);
        return field->generator();
    }
    return NumberField::rationals()->from_rational(parse_rational(text));
}

SeriesSpec load_spec(const std::string& arg) {
    std::ifstream in(arg);
    if (in.good()) {
        nlohmann::json j = nlohmann::json::parse(in);
        return SeriesSpec::from_json(j);
    }
    if (arg == "factorial") return SeriesSpec::factorial();
    if (arg.rfind("factorial:", 0) == 0)
        return SeriesSpec::factorial(std::stoi(arg.substr(10)));
    throw DomainError("series spec not found (expected a JSON file path or 'factorial[:k]'): " +
                      arg);
}

nlohmann::json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in.good()) throw DomainError("cannot open file: " + path);
    return nlohmann::json::parse(in);
}

struct Output {
    std::string path;  // empty = stdout
    void emit(const nlohmann::json& j) const {
        std::string text = canonical_text(j);
        if (path.empty()) {
            std::cout << text;
        } else {
            std::ofstream out(path, std::ios::binary);
            if (!out.good()) throw DomainError("cannot write output file: " + path);
            out << text;
        }
    }
};

nlohmann::json structure_report_json(const StructureReport& rep) {
    nlohmann::json j;
    j["prefix"] = rep.prefix;
    j["gap_growth"] = rep.gap_growth;
    j["max_restart_ratio"] = rep.max_restart_ratio;
    j["declared_restart_bound"] = rep.declared_restart_bound
                                      ? nlohmann::json(*rep.declared_restart_bound)
                                      : nlohmann::json(nullptr);
    j["restart_within_declared"] = rep.restart_within_declared;
    j["warnings"] = rep.warnings;
    j["zero_scan_limit"] = rep.zero_scan_limit.get_str();
    j["pass"] = true;
    return j;
}

}  // namespace

int run_cli(int argc, const char* const* argv) {
    CLI::App app{"exact arithmetic on lacunary series values at algebraic points"};
    app.require_subcommand(1);
    std::string out_path;
    app.add_option("--out", out_path, "write the JSON result to this path instead of stdout");

    // height
    auto* cmd_height = app.add_subcommand("height", "height of a root of an irreducible polynomial");
    std::string height_poly;
    std::size_t height_root_index = 0;
    double height_tol = 1e-15;
    cmd_height->add_option("poly", height_poly)->required();
    cmd_height->add_option("--root-index", height_root_index);
    cmd_height->add_option("--tol", height_tol);

    // minpoly
    auto* cmd_minpoly = app.add_subcommand("minpoly", "minimal polynomial of a field element");
    std::string mp_field, mp_coords;
    cmd_minpoly->add_option("field", mp_field)->required();
    cmd_minpoly->add_option("coords", mp_coords)->required();

    // series
    auto* cmd_series = app.add_subcommand("series", "series structure, evaluation, tails");
    cmd_series->require_subcommand(1);
    std::string sv_spec;
    int sv_n = 6;
    auto* cmd_validate = cmd_series->add_subcommand("validate", "check the block structure");
    cmd_validate->add_option("spec", sv_spec)->required();
    cmd_validate->add_option("--N", sv_n);
    std::string se_spec, se_alpha;
    long se_target = 64;
    auto* cmd_eval = cmd_series->add_subcommand("eval", "certified value enclosure");
    cmd_eval->add_option("spec", se_spec)->required();
    cmd_eval->add_option("--alpha", se_alpha)->required();
    cmd_eval->add_option("--target-exp", se_target, "radius target 2^-k");
    std::string st_spec, st_alpha;
    int st_n = 2;
    auto* cmd_tail = cmd_series->add_subcommand("tail", "certified tail bound");
    cmd_tail->add_option("spec", st_spec)->required();
    cmd_tail->add_option("--alpha", st_alpha)->required();
    cmd_tail->add_option("--n", st_n);

    // certify
    auto* cmd_certify = app.add_subcommand("certify", "produce and re-check certificates");
    cmd_certify->require_subcommand(1);
    std::string cu_spec, cu_alpha;
    double cu_w = 1;
    int cu_m = 1;
    auto* cmd_um = cmd_certify->add_subcommand("um", "approximation witness of the target degree");
    cmd_um->add_option("--spec", cu_spec)->required();
    cmd_um->add_option("--alpha", cu_alpha)->required();
    cmd_um->add_option("--w", cu_w)->required();
    cmd_um->add_option("--m", cu_m)->required();
    std::string cs_spec, cs_alpha, cs_bound = "10";
    int cs_deg = 1;
    double cs_eta = 0;
    auto* cmd_scan = cmd_certify->add_subcommand("scan", "lower-degree gap scan");
    cmd_scan->add_option("--spec", cs_spec)->required();
    cmd_scan->add_option("--alpha", cs_alpha)->required();
    cmd_scan->add_option("--deg", cs_deg)->required();
    cmd_scan->add_option("--coeff-bound", cs_bound)->required();
    cmd_scan->add_option("--eta", cs_eta)->required();
    std::string cx_spec;
    int cx_deg = 1, cx_prefix = 4;
    auto* cmd_exc = cmd_certify->add_subcommand("exceptions", "Northcott-box exception scan");
    cmd_exc->add_option("--spec", cx_spec)->required();
    cmd_exc->add_option("--deg", cx_deg)->required();
    cmd_exc->add_option("--prefix", cx_prefix);
    std::string cv_path;
    auto* cmd_verify = cmd_certify->add_subcommand("verify", "re-check a certificate file");
    cmd_verify->add_option("cert", cv_path)->required();

    // radical
    auto* cmd_radical = app.add_subcommand("radical", "degree and subfields of a^{1/m}");
    std::string rd_a;
    unsigned long rd_m = 2;
    cmd_radical->add_option("a", rd_a)->required();
    cmd_radical->add_option("m", rd_m)->required();

    // coliou
    auto* cmd_coliou =
        app.add_subcommand("coliou", "partial-sum expansion over the radical field Q(a^{1/m})");
    std::string cl_a;
    unsigned long cl_m = 2;
    cmd_coliou->add_option("a", cl_a)->required();
    cmd_coliou->add_option("m", cl_m)->required();

    // galois
    auto* cmd_galois = app.add_subcommand("galois", "Galois classification and census");
    cmd_galois->require_subcommand(1);
    std::string gg_poly;
    auto* cmd_group = cmd_galois->add_subcommand("group", "Galois group of a monic polynomial");
    cmd_group->add_option("poly", gg_poly)->required();
    int gc_m = 2;
    long gc_x = 2;
    std::string gc_csv;
    auto* cmd_count = cmd_galois->add_subcommand("count", "symmetric-group census");
    cmd_count->add_option("--m", gc_m)->required();
    cmd_count->add_option("--X", gc_x)->required();
    cmd_count->add_option("--csv", gc_csv, "write per-polynomial classifications to this path");

    // audit
    auto* cmd_audit = app.add_subcommand("audit", "height identity audits");
    cmd_audit->require_subcommand(1);
    std::string ah_corpus = "builtin";
    double ah_tol = 1e-12;
    auto* cmd_heights = cmd_audit->add_subcommand("heights", "audit the height identities");
    cmd_heights->add_option("--corpus", ah_corpus, "corpus JSON path or 'builtin'");
    cmd_heights->add_option("--tol", ah_tol);

    // let --out appear after any subcommand
    std::function<void(CLI::App*)> enable_fallthrough = [&](CLI::App* node) {
        node->fallthrough();
        for (CLI::App* sub : node->get_subcommands(nullptr)) enable_fallthrough(sub);
    };
    enable_fallthrough(&app);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return 0;  // --help
        nlohmann::json err;
        err["error"] = e.what();
        err["kind"] = "usage";
        std::cout << canonical_text(err);
        return 1;
    }

    Output out{out_path};
    try {
        if (*cmd_height) {
            auto field = NumberField::create(parse_polynomial(height_poly), height_root_index);
            HeightEnclosure h = height(field->generator(), height_tol);
            nlohmann::json j;
            j["minpoly"] = poly_json(field->defining_poly());
            j["root_index"] = height_root_index;
            j["height"] = height_block(h);
            out.emit(j);
        } else if (*cmd_minpoly) {
            auto field = NumberField::create(parse_polynomial(mp_field));
            std::vector<BigRational> coords;
            std::stringstream ss(mp_coords);
            std::string item;
            while (std::getline(ss, item, ',')) coords.push_back(parse_rational(item));
            NFElement beta = field->element(std::move(coords));
            IntPolynomial m = beta.is_zero()
                                  ? IntPolynomial(std::vector<BigInt>{BigInt(0), BigInt(1)})
                                  : minimal_polynomial(beta);
            nlohmann::json j;
            j["degree"] = m.degree();
            j["minpoly"] = poly_json(m);
            j["minpoly_text"] = m.to_string();
            out.emit(j);
        } else if (*cmd_validate) {
            SeriesSpec spec = load_spec(sv_spec);
            StructureReport rep = validate_structure(spec, sv_n);
            out.emit(structure_report_json(rep));
        } else if (*cmd_eval) {
            SeriesSpec spec = load_spec(se_spec);
            NFElement alpha = parse_alpha(se_alpha);
            ComplexBall v = value_enclosure(spec, alpha, Real::pow2(-se_target));
            nlohmann::json j;
            j["value"] = ball_json(v);
            j["value_approx"] = v.mid_re().to_double();
            out.emit(j);
        } else if (*cmd_tail) {
            SeriesSpec spec = load_spec(st_spec);
            NFElement alpha = parse_alpha(st_alpha);
            TailBound tb = tail_bound(spec, eval_element(alpha, 96), st_n);
            nlohmann::json j;
            j["n"] = tb.n;
            j["theta"] = tb.theta.to_hex();
            j["c"] = tb.c.to_hex();
            j["bound"] = tb.bound.to_hex();
            j["bound_approx"] = tb.bound.to_double();
            out.emit(j);
        } else if (*cmd_um) {
            Certificate cert = um_witness(load_spec(cu_spec), parse_alpha(cu_alpha), cu_w, cu_m);
            out.emit(cert.doc);
        } else if (*cmd_scan) {
            Certificate cert = lower_degree_scan(load_spec(cs_spec), parse_alpha(cs_alpha), cs_deg,
                                                 BigInt(cs_bound), cs_eta);
            out.emit(cert.doc);
        } else if (*cmd_exc) {
            Certificate cert = exception_scan(load_spec(cx_spec), cx_deg, cx_prefix);
            out.emit(cert.doc);
        } else if (*cmd_verify) {
            VerifyOutcome v = verify_certificate(load_json_file(cv_path));
            nlohmann::json j;
            if (v.pass) {
                j["pass"] = true;
                j["detail"] = v.detail;
                out.emit(j);
            } else {
                j["error"] = "recheck failed";
                j["detail"] = v.detail;
                out.emit(j);
                return 1;
            }
        } else if (*cmd_radical) {
            RadicalReport rep = radical_degree(parse_rational(rd_a), rd_m);
            nlohmann::json j;
            j["base"] = rep.base.get_str();
            j["m"] = rep.m;
            j["failing_primes"] = rep.failing_primes;
            j["minus4_flag"] = rep.minus4_flag;
            j["degree"] = rep.degree;
            j["subfield_degrees"] = rep.subfield_degrees
                                        ? nlohmann::json(*rep.subfield_degrees)
                                        : nlohmann::json(nullptr);
            j["used_factorization_fallback"] = rep.used_factorization_fallback;
            out.emit(j);
        } else if (*cmd_coliou) {
            BigRational a = parse_rational(cl_a);
            RadicalExpansion exp = radical_partial_sum_expansion(a, cl_m);
            nlohmann::json j;
            nlohmann::json coords = nlohmann::json::array();
            for (const auto& c : exp.coords) coords.push_back(c.get_str());
            j["coords"] = coords;
            j["degree"] = exp.degree;
            out.emit(j);
        } else if (*cmd_group) {
            GroupLabel g = galois_group(parse_polynomial(gg_poly));
            nlohmann::json j;
            j["group"] = group_label_name(g);
            out.emit(j);
        } else if (*cmd_count) {
            CountReport rep = count_sm(gc_m, gc_x, !gc_csv.empty());
            if (!gc_csv.empty()) {
                std::ofstream csv(gc_csv, std::ios::binary);
                if (!csv.good()) throw DomainError("cannot write csv file: " + gc_csv);
                csv << rep.per_poly_csv;
            }
            out.emit(rep.to_json());
        } else if (*cmd_heights) {
            std::vector<std::pair<NFElement, NFElement>> sample;
            if (ah_corpus == "builtin") {
                auto K = NumberField::create(parse_polynomial("T^2-2"), 1);
                sample.push_back({K->generator(), K->generator()});
                sample.push_back({K->generator() + K->one(), (K->generator() + K->one()).inverse()});
                sample.push_back({K->zero(), K->one()});
                auto Q = NumberField::rationals();
                sample.push_back({Q->from_rational(parse_rational("2/3")),
                                  Q->from_rational(parse_rational("-7/5"))});
            } else {
                nlohmann::json corpus = load_json_file(ah_corpus);
                for (const auto& entry : corpus) {
                    auto field = NumberField::create(
                        parse_polynomial(entry.at("field").get<std::string>()),
                        entry.value("root_index", 0));
                    for (const auto& pair : entry.at("pairs")) {
                        std::vector<BigRational> cx, cy;
                        for (const auto& c : pair.at(0)) cx.push_back(parse_rational(c.get<std::string>()));
                        for (const auto& c : pair.at(1)) cy.push_back(parse_rational(c.get<std::string>()));
                        sample.push_back({field->element(cx), field->element(cy)});
                    }
                }
            }
            auto records = audit_height_axioms(sample, ah_tol);
            // JSON lines go to stdout / file as-is (already one object per line)
            std::string text = audit_report_jsonl(records);
            if (out_path.empty()) {
                std::cout << text;
            } else {
                std::ofstream f(out_path, std::ios::binary);
                if (!f.good()) throw DomainError("cannot write output file: " + out_path);
                f << text;
            }
        }
    } catch (const DomainError& e) {
        nlohmann::json err;
        err["error"] = e.what();
        err["kind"] = "domain";
        std::cout << canonical_text(err);
        return 1;
    } catch (const CapError& e) {
        nlohmann::json err;
        err["error"] = e.what();
        err["kind"] = "resource_cap";
        std::cout << canonical_text(err);
        return 2;
    }
    return 0;
}

}  // namespace serieslab
