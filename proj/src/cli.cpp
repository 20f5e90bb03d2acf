#include "lseq/cli.hpp"

#include <charconv>
#include <cmath>
#include <functional>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "lseq/constants.hpp"
#include "lseq/embedding.hpp"
#include "lseq/error.hpp"
#include "lseq/extreme.hpp"
#include "lseq/norms.hpp"
#include "lseq/weights.hpp"

namespace lseq::cli {

namespace {

using json = nlohmann::ordered_json;

std::string shortest(double v) {
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

double parse_number(const std::string& s, const char* what) {
    if (s == "inf" || s == "infinity") return kInfinity;
    std::size_t used = 0;
    double v = 0.0;
    try {
        v = std::stod(s, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (used == 0 || used != s.size()) throw Error(ErrorCode::InvalidArgument, std::string("bad ") + what + " '" + s + "'");
    return v;
}

std::vector<double> parse_reals(const std::string& s, const char* what) {
    std::vector<double> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(parse_number(item, what));
    return out;
}

std::vector<std::size_t> parse_indices(const std::string& s) {
    std::vector<std::size_t> out;
    for (double v : parse_reals(s, "index list")) {
        if (!(v >= 0.0) || v != std::floor(v) || v > 1e15)
            throw Error(ErrorCode::InvalidArgument, "indices must be non-negative integers");
        out.push_back(static_cast<std::size_t>(v));
    }
    if (out.empty()) throw Error(ErrorCode::InvalidArgument, "empty index list");
    return out;
}

struct Report {
    std::string subcommand;
    json inputs = json::object();
    json results = json::array();
    json provenance = json::array();
    json warnings = json::array();

    void value(const std::string& label, double v) { results.push_back({{"label", label}, {"value", v}}); }
    void bracket(const std::string& label, const Bracket& b) {
        results.push_back({{"label", label}, {"lo", b.lo}, {"hi", b.hi}, {"width", b.width()}});
    }
    void item(const std::string& label, json v) { results.push_back({{"label", label}, {"value", std::move(v)}}); }

    json to_json() const {
        json j = {{"subcommand", subcommand}, {"inputs", inputs}, {"results", results}, {"provenance", provenance}};
        if (!warnings.empty()) j["warnings"] = warnings;
        return j;
    }
};

json estimate_json(const ConstantEstimate& e) {
    json j = {{"value", e.value},
              {"lo", e.certify.lo},
              {"hi", e.certify.hi},
              {"method", std::string(to_string(e.method))},
              {"evaluations", e.evaluations},
              {"seed", e.seed}};
    if (e.method == EstimateMethod::GridRefine) j["refinement_gap"] = e.refinement_gap;
    if (e.out_of_hypothesis) j["out_of_hypothesis"] = true;
    if (!e.argmax.empty()) j["argmax"] = e.argmax;
    return j;
}

json sequence_json(const FiniteSequence& x) {
    json j = json::array();
    for (const auto& [k, v] : x.entries()) j.push_back({k, v});
    return j;
}

struct WeightOptions {
    std::string family = "cesaro";
    std::optional<double> alpha;
    std::string q;
    std::string values;
    std::optional<double> tail_c;
    std::optional<double> tail_alpha;
    std::string config;

    void attach(CLI::App* app) {
        app->add_option("--family", family, "Weight family: cesaro, power, riesz, custom");
        app->add_option("--alpha", alpha, "Exponent of the power family");
        app->add_option("--q", q, "Riesz increments q_0,q_1,... (last one repeats)");
        app->add_option("--values", values, "Custom weights lambda_0,lambda_1,...");
        app->add_option("--tail-c", tail_c, "Custom tail law coefficient: lambda_n = c (n+1)^a");
        app->add_option("--tail-alpha", tail_alpha, "Custom tail law exponent");
        app->add_option("--weights", config, "Full key-value weight config, e.g. \"family=power alpha=1.5\"");
    }

    LambdaWeights build() const {
        if (!config.empty()) return parse_weights(config);
        std::string cfg = "family=" + family;
        if (alpha) cfg += " alpha=" + shortest(*alpha);
        if (!q.empty()) cfg += " q=[" + q + "]";
        if (!values.empty()) cfg += " values=[" + values + "]";
        if (tail_c) cfg += " tail_c=" + shortest(*tail_c);
        if (tail_alpha) cfg += " tail_alpha=" + shortest(*tail_alpha);
        return parse_weights(cfg);
    }
};

struct ExponentOptions {
    std::string p = "2";
    std::string prefix;
    std::optional<double> tail;

    void attach(CLI::App* app) {
        app->add_option("--p", p, "Constant exponent (default 2)");
        app->add_option("--p-prefix", prefix, "Leading exponents p_0,p_1,...");
        app->add_option("--p-tail", tail, "Exponent used after the prefix (default --p)");
    }

    ExponentSeq build() const {
        const double t = tail ? *tail : parse_number(p, "exponent");
        return ExponentSeq(prefix.empty() ? std::vector<double>{} : parse_reals(prefix, "exponent"), t);
    }
};

struct Precision {
    double tol = kDefaultLuxemburgTol;
    double width = kDefaultWidth;
    std::size_t grid = 512;
    std::size_t refine = 64;
    std::uint64_t seed = 0;

    OptimizerConfig optimizer() const {
        OptimizerConfig cfg;
        cfg.grid = grid;
        cfg.refine = refine;
        cfg.seed = seed;
        return cfg;
    }
};

json weights_json(const LambdaWeights& w) { return w.describe(); }

json exponents_json(const ExponentSeq& p) { return {{"prefix", p.prefix()}, {"tail", p.tail()}}; }

void add_weight_warnings(Report& r, const LambdaWeights& w) {
    for (const auto& msg : w.warnings()) r.warnings.push_back(msg);
}

class Table {
public:
    explicit Table(std::vector<std::string> header) : header_(std::move(header)) {}
    void row(std::vector<double> values) { rows_.push_back(std::move(values)); }

    void write_csv(std::ostream& out) const {
        for (std::size_t i = 0; i < header_.size(); ++i) out << (i ? "," : "") << header_[i];
        out << '\n';
        for (const auto& r : rows_) {
            for (std::size_t i = 0; i < r.size(); ++i) out << (i ? "," : "") << shortest(r[i]);
            out << '\n';
        }
    }

    json to_json() const {
        json rows = json::array();
        for (const auto& r : rows_) {
            json obj = json::object();
            for (std::size_t i = 0; i < header_.size(); ++i) obj[header_[i]] = r[i];
            rows.push_back(obj);
        }
        return rows;
    }

private:
    std::vector<std::string> header_;
    std::vector<std::vector<double>> rows_;
};

} // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Numerical toolkit for Lambda-sequence spaces"};
    app.require_subcommand(1);
    app.set_help_all_flag("--help-all", "Show help for all subcommands");

    WeightOptions wopt;
    ExponentOptions eopt;
    Precision prec;
    std::string x_text = "e0";
    double lambda0 = 1.0;
    double lambda1 = 2.0;
    std::string p2 = "2";
    std::string m_list = "10,100,1000,10000";
    std::size_t n_vectors = 3;
    std::size_t blocks = 0;
    double band = kDefaultModularBand;
    double eps = 0.5;
    double p_sup = 2.0;
    bool csv = false;
    bool table = false;
    bool normalize = false;
    bool witness = false;

    auto add_x = [&](CLI::App* sub) { sub->add_option("--x", x_text, "Sequence: e<k> or sparse 'i:v,i:v,...'"); };
    auto add_tol = [&](CLI::App* sub) { sub->add_option("--tol", prec.tol, "Luxemburg bisection tolerance"); };
    auto add_width = [&](CLI::App* sub) { sub->add_option("--width", prec.width, "Target bracket width"); };
    auto add_optimizer = [&](CLI::App* sub) {
        sub->add_option("--lambda0", lambda0, "First weight");
        sub->add_option("--lambda1", lambda1, "Second weight");
        sub->add_option("--p", p2, "Exponent (number or inf)");
        sub->add_option("--grid", prec.grid, "Grid intervals per parameter");
        sub->add_option("--refine", prec.refine, "Local refinement rounds");
        sub->add_option("--seed", prec.seed, "Seed for the extra random restarts");
    };

    auto* norm = app.add_subcommand("norm", "Certified bracket for ||x||_p (p = inf gives the sup-norm)");
    add_x(norm);
    wopt.attach(norm);
    norm->add_option("--p", eopt.p, "Exponent (number or inf)");
    add_width(norm);

    auto* sup = app.add_subcommand("supnorm", "Exact sup-norm max_n Lambda x(n)");
    add_x(sup);
    wopt.attach(sup);

    auto* lux = app.add_subcommand("luxemburg", "Luxemburg norm for a variable exponent sequence");
    add_x(lux);
    wopt.attach(lux);
    eopt.attach(lux);
    add_tol(lux);

    auto* cnj = app.add_subcommand("cnj2", "von Neumann-Jordan constant of the two-dimensional space");
    add_optimizer(cnj);
    auto* jam = app.add_subcommand("james2", "James constant of the two-dimensional space");
    add_optimizer(jam);
    auto* psi_cmd = app.add_subcommand("psi-sup", "C_NJ through the sup of psi/psi2");
    add_optimizer(psi_cmd);
    psi_cmd->add_flag("--table", table, "Emit the psi/psi2 ratio on the grid");
    psi_cmd->add_flag("--csv", csv, "CSV output for --table");

    auto* jseq = app.add_subcommand("james-seq", "James-constant witness pairs along m");
    wopt.attach(jseq);
    jseq->add_option("--p", eopt.p, "Exponent (number or inf)");
    jseq->add_option("--m", m_list, "Comma-separated m values");
    jseq->add_flag("--csv", csv, "CSV output");

    auto* nseq = app.add_subcommand("jns-seq", "n-th strong James witnesses along m");
    wopt.attach(nseq);
    nseq->add_option("--p", eopt.p, "Exponent (number or inf)");
    nseq->add_option("--m", m_list, "Comma-separated m values");
    nseq->add_option("--n", n_vectors, "Number of vectors n >= 2");
    nseq->add_flag("--csv", csv, "CSV output");

    auto* emb = app.add_subcommand("embed-check", "Isometry check against the Nakano block embedding");
    add_x(emb);
    wopt.attach(emb);
    eopt.attach(emb);
    emb->add_option("--N", blocks, "Materialized block index N (raised to cover the support)");
    add_tol(emb);

    auto* ext = app.add_subcommand("extreme-check", "Extreme-point criterion and non-extremeness witness");
    add_x(ext);
    wopt.attach(ext);
    eopt.attach(ext);
    ext->add_option("--tol", prec.tol, "Sphere tolerance on the norm");
    ext->add_option("--band", band, "Tolerance band for sigma(x) = 1");
    ext->add_flag("--normalize", normalize, "Scale x onto the unit sphere first");
    ext->add_flag("--witness", witness, "Construct y != z with 2x = y + z inside the ball");

    auto* ukk = app.add_subcommand("ukk-delta", "eta and delta for the coordinatewise Kadec-Klee estimate");
    ukk->add_option("--eps", eps, "Separation epsilon in (0, 1)")->required();
    ukk->add_option("--psup", p_sup, "sup of the exponents")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? 0 : 1;
    }

    try {
        Report r;
        std::optional<Table> tab;

        if (norm->parsed()) {
            r.subcommand = "norm";
            const auto w = wopt.build();
            const auto x = FiniteSequence::parse(x_text);
            const double p = parse_number(eopt.p, "exponent");
            r.inputs = {{"x", sequence_json(x)}, {"weights", weights_json(w)}, {"p", eopt.p}, {"width", prec.width}};
            add_weight_warnings(r, w);
            if (std::isinf(p)) {
                r.value("supnorm", supnorm(x, w));
                r.provenance.push_back("sup over the support of the weighted means");
            } else {
                r.bracket("norm", pnorm(x, w, p, prec.width));
                r.provenance.push_back("prefix sum plus euler-maclaurin tail enclosure");
            }
        } else if (sup->parsed()) {
            r.subcommand = "supnorm";
            const auto w = wopt.build();
            const auto x = FiniteSequence::parse(x_text);
            r.inputs = {{"x", sequence_json(x)}, {"weights", weights_json(w)}};
            add_weight_warnings(r, w);
            r.value("supnorm", supnorm(x, w));
            r.provenance.push_back("sup over the support of the weighted means");
        } else if (lux->parsed()) {
            r.subcommand = "luxemburg";
            const auto w = wopt.build();
            const auto x = FiniteSequence::parse(x_text);
            const auto p = eopt.build();
            r.inputs = {{"x", sequence_json(x)}, {"weights", weights_json(w)}, {"exponents", exponents_json(p)},
                        {"tol", prec.tol}, {"width", prec.width}};
            add_weight_warnings(r, w);
            const auto res = luxemburg_detail(x, w, p, prec.tol);
            r.bracket("norm", res.norm);
            r.value("modular_residual", res.modular_residual);
            r.value("iterations", res.iterations);
            r.bracket("modular", modular(x, w, p, prec.width).bracket);
            r.provenance.push_back("bisection on certified modular brackets");
        } else if (cnj->parsed() || jam->parsed()) {
            const bool is_cnj = cnj->parsed();
            r.subcommand = is_cnj ? "cnj2" : "james2";
            const double p = parse_number(p2, "exponent");
            r.inputs = {{"lambda0", lambda0}, {"lambda1", lambda1}, {"p", p2},   {"grid", prec.grid},
                        {"refine", prec.refine}, {"seed", prec.seed}};
            if (p == 2.0) {
                r.item("exact", estimate_json(is_cnj ? cnj2_exact(lambda0, lambda1) : james2_exact(lambda0, lambda1)));
                r.provenance.push_back("closed form for the two-dimensional p = 2 space");
            }
            const auto cfg = prec.optimizer();
            r.item("numeric", estimate_json(is_cnj ? cnj2_numeric(lambda0, lambda1, p, cfg)
                                                   : james2_numeric(lambda0, lambda1, p, cfg)));
            r.provenance.push_back("unit-sphere grid with coordinate golden-section refinement (lower bound)");
            if (is_cnj && std::isfinite(p) && p > 1.0) {
                r.item("psi_route", estimate_json(cnj_from_psi(lambda0, lambda1, p, cfg)));
                r.provenance.push_back("squared sup of psi/psi2 over [0, 1]");
            }
        } else if (psi_cmd->parsed()) {
            r.subcommand = "psi-sup";
            const double p = parse_number(p2, "exponent");
            r.inputs = {{"lambda0", lambda0}, {"lambda1", lambda1}, {"p", p2},
                        {"grid", prec.grid},   {"refine", prec.refine}, {"seed", prec.seed}};
            r.item("cnj", estimate_json(cnj_from_psi(lambda0, lambda1, p, prec.optimizer())));
            r.provenance.push_back("squared sup of psi/psi2 over [0, 1]");
            if (table) {
                tab.emplace(std::vector<std::string>{"t", "psi", "psi2", "ratio"});
                for (std::size_t i = 0; i <= prec.grid; ++i) {
                    const double t = static_cast<double>(i) / static_cast<double>(prec.grid);
                    const double a = psi(t, lambda0, lambda1, p);
                    const double b = psi2(t);
                    tab->row({t, a, b, a / b});
                }
            }
        } else if (jseq->parsed() || nseq->parsed()) {
            const bool pair = jseq->parsed();
            r.subcommand = pair ? "james-seq" : "jns-seq";
            const auto w = wopt.build();
            const double p = parse_number(eopt.p, "exponent");
            const auto ms = parse_indices(m_list);
            const std::size_t n = pair ? 2 : n_vectors;
            r.inputs = {{"weights", weights_json(w)}, {"p", eopt.p}, {"m", ms}};
            if (!pair) r.inputs["n"] = n;
            add_weight_warnings(r, w);
            if (std::isinf(p)) {
                tab.emplace(std::vector<std::string>{"m", "value", "supnorm_sum", "supnorm_alternating", "max_unit_error"});
                for (std::size_t m : ms) {
                    const auto c = pair ? james_inf_pair(w, m) : jns_inf(w, n, m);
                    double unit_err = 0.0;
                    for (double s : c.unit_supnorms) unit_err = std::max(unit_err, std::fabs(s - 1.0));
                    tab->row({static_cast<double>(m), c.value, c.supnorm_sum, c.supnorm_alternating, unit_err});
                }
                r.provenance.push_back("explicit sup-norm construction with closed-form value");
            } else {
                tab.emplace(std::vector<std::string>{"m", "lower_bound", "direct_lo", "direct_hi"});
                for (std::size_t m : ms) {
                    const auto c = pair ? james_pair_construction(w, p, m) : jns_construction(w, p, n, m);
                    tab->row({static_cast<double>(m), c.lower_bound, c.direct.lo, c.direct.hi});
                }
                r.provenance.push_back("normalized unit vectors; bound from the tail-sum ratio");
            }
        } else if (emb->parsed()) {
            r.subcommand = "embed-check";
            const auto w = wopt.build();
            const auto x = FiniteSequence::parse(x_text);
            const auto p = eopt.build();
            r.inputs = {{"x", sequence_json(x)}, {"weights", weights_json(w)}, {"exponents", exponents_json(p)},
                        {"N", blocks}, {"tol", prec.tol}};
            add_weight_warnings(r, w);
            const auto rep = isometry_check(x, w, p, blocks, prec.tol);
            r.bracket("direct", rep.direct);
            r.bracket("embedded", rep.embedded);
            r.value("residual", rep.residual);
            r.value("blocks", static_cast<double>(rep.blocks));
            r.provenance.push_back("nakano block embedding with l1 block norms");
        } else if (ext->parsed()) {
            r.subcommand = "extreme-check";
            const auto w = wopt.build();
            auto x = FiniteSequence::parse(x_text);
            const auto p = eopt.build();
            r.inputs = {{"x", sequence_json(x)}, {"weights", weights_json(w)}, {"exponents", exponents_json(p)},
                        {"tol", prec.tol}, {"band", band}, {"normalize", normalize}, {"witness", witness}};
            add_weight_warnings(r, w);
            if (normalize) {
                if (x.is_zero()) throw Error(ErrorCode::NotOnSphere, "the zero sequence cannot be normalized");
                x = x.scaled(1.0 / luxemburg(x, w, p, 1e-12).mid());
                r.item("normalized_x", sequence_json(x));
            }
            if (witness) {
                const auto wit = non_extreme_witness(x, w, p, band);
                r.item("method", std::string(to_string(wit.method)));
                r.value("cutoff", static_cast<double>(wit.cutoff));
                r.value("budget", wit.budget);
                r.item("y", sequence_json(wit.y));
                r.item("z", sequence_json(wit.z));
                r.bracket("sigma_y", wit.sigma_y);
                r.bracket("sigma_z", wit.sigma_z);
                r.provenance.push_back("tail cutoff y = x|[0,n0], z = 2x - y; dyadic single-entry split as fallback");
            } else {
                const auto v = extreme_check(x, w, p, prec.tol, band);
                r.item("verdict", std::string(to_string(v.verdict)));
                r.bracket("norm", v.norm);
                r.bracket("modular", v.modular);
                r.item("on_sphere_modular", v.on_sphere_modular);
                r.value("affine_card", static_cast<double>(v.affine_card));
                r.provenance.push_back("sigma(x) = 1 and Card(A_x) <= 1");
            }
        } else if (ukk->parsed()) {
            r.subcommand = "ukk-delta";
            r.inputs = {{"eps", eps}, {"psup", p_sup}};
            const auto d = ukk_delta(eps, p_sup);
            r.value("eta", d.eta);
            r.value("delta", d.delta);
            r.value("identity_residual", std::pow(1.0 - d.delta, p_sup) - (1.0 - d.eta));
            r.provenance.push_back("eta = (eps/4)^psup, (1 - delta)^psup = 1 - eta");
        }

        if (tab) {
            if (csv) {
                tab->write_csv(out);
                return 0;
            }
            r.item("table", tab->to_json());
        }
        out << r.to_json().dump(2) << '\n';
        return 0;
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return is_numerical_failure(e.code()) ? 2 : 1;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    }
}

} // namespace lseq::cli
