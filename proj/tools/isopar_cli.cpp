#include "isopar_cli.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <tuple>

#include <CLI11.hpp>

#include "isopar/arith.hpp"
#include "isopar/classify.hpp"
#include "isopar/clifford.hpp"
#include "isopar/fkm.hpp"
#include "isopar/geometry.hpp"
#include "isopar/homotopy.hpp"
#include "isopar/json.hpp"

namespace isopar::cli {
namespace {

struct RunConfig {
    std::uint64_t seed = 1;
    std::size_t samples = 100;
    double tol_cm = 1e-9;
    double tol_cluster = 1e-5;
    std::optional<std::string> output_path;
    std::string format = "json";
};

std::uint64_t default_seed() {
    if (const char* env = std::getenv("ISOPAR_SEED")) {
        try {
            return std::stoull(env);
        } catch (const std::exception&) {
        }
    }
    return 1;
}

class Emitter {
  public:
    Emitter(const RunConfig& cfg, std::ostream& out, std::ostream& err) : cfg_(cfg), out_(out), err_(err) {}

    int write(const std::string& text) {
        if (!cfg_.output_path) {
            out_ << text;
            return kOk;
        }
        std::ofstream f(*cfg_.output_path, std::ios::binary);
        if (!f) {
            err_ << "error: cannot open " << *cfg_.output_path << " for writing\n";
            return kInputError;
        }
        f << text;
        return kOk;
    }

    int write(const ojson& j) { return write(j.dump(2) + "\n"); }

  private:
    const RunConfig& cfg_;
    std::ostream& out_;
    std::ostream& err_;
};

// Verification exit status wins over a successful write only when the write succeeded.
int finish(int write_status, int verdict_status) { return write_status != kOk ? write_status : verdict_status; }

ojson stolz_block(std::int64_t hi, std::int64_t lo) {
    ojson j;
    j["pair"] = {{"m_plus", hi}, {"m_minus", lo}};
    if (lo >= 2 && lo < hi) {
        j["homotopy_sphere"] = to_json(stolz(hi, lo, StolzVariant::HomotopySphere));
    } else {
        j["homotopy_sphere"] = {{"applicable", false}, {"reason", "requires 2 <= m_minus < m_plus"}};
    }
    j["dupin"] = to_json(stolz(hi, lo, StolzVariant::Dupin));
    return j;
}

int cmd_classify(const RunConfig& cfg, std::int64_t n, std::int64_t mp, std::int64_t mm, std::ostream& out,
                 std::ostream& err) {
    const DimensionTriple t{n, mp, mm};
    try {
        validate(t);
    } catch (const DomainError& e) {
        err << "error: " << e.what() << "\n";
        return kInputError;
    }
    const auto v = theorem_a(t);
    ojson j;
    j["schema_version"] = kSchemaVersion;
    j["command"] = "classify";
    j["triple"] = {{"n", n}, {"m_plus", mp}, {"m_minus", mm}};
    const auto vj = to_json(v);
    for (auto it = vj.begin(); it != vj.end(); ++it) j[it.key()] = it.value();
    const auto mg = munzner_g(t);
    j["munzner_g"] = mg ? ojson(*mg) : ojson(nullptr);
    j["interpretation"] =
        "admissible: the triple satisfies the necessary dimension conditions for a dual pair in a simply connected "
        "rational homology sphere; the sufficiency direction is claimed but no realization is constructed here";
    if (n == 2 * (mp + mm)) j["stolz"] = stolz_block(std::max(mp, mm), std::min(mp, mm));
    Emitter em(cfg, out, err);
    return finish(em.write(j), v.admissible ? kOk : kRejected);
}

ojson fkm_header(const char* command, const FkmPolynomial& F) {
    ojson j;
    j["schema_version"] = kSchemaVersion;
    j["command"] = command;
    j["m"] = F.system().m;
    j["k"] = F.system().k;
    j["dim"] = F.system().dim;
    j["n"] = F.n();
    j["multiplicities"] = {F.m_plus(), F.m_minus(), F.m_plus(), F.m_minus()};
    return j;
}

int cmd_fkm(const RunConfig& cfg, std::int64_t m, std::int64_t k, const std::string& action,
            const std::vector<double>& levels, std::ostream& out, std::ostream& err) {
    if (m < 1 || k < 1) {
        err << "error: m and k must be >= 1\n";
        return kInputError;
    }
    std::optional<FkmPolynomial> F;
    try {
        F.emplace(m, k);
    } catch (const DomainError& e) {
        err << "error: " << e.what() << "\n";
        return kInputError;
    }
    Emitter em(cfg, out, err);

    if (action == "build") {
        const auto rep = verify_clifford_system(F->system());
        if (!rep.passed) {
            err << "internal error: constructed Clifford system fails verification\n";
            return kRejected;
        }
        return em.write(to_json(F->system()));
    }

    if (action == "verify") {
        auto j = fkm_header("fkm verify", *F);
        j["seed"] = cfg.seed;
        j["samples"] = cfg.samples;
        j["tol_cm"] = cfg.tol_cm;
        const auto cliff = verify_clifford_system(F->system());
        const auto cm = verify_cartan_munzner(*F, cfg.samples, cfg.seed, cfg.tol_cm);
        j["clifford"] = to_json(cliff);
        j["cartan_munzner"] = to_json(cm);
        bool passed = cliff.passed && cm.passed;
        if (F->ambient_dim() <= 16) {
            const auto exact = verify_cartan_munzner_exact(*F, cfg.samples, cfg.seed);
            j["exact"] = to_json(exact);
            passed = passed && exact.passed;
        }
        j["passed"] = passed;
        return finish(em.write(j), passed ? kOk : kRejected);
    }

    // curvature
    if (levels.empty()) {
        err << "error: curvature needs at least one --level\n";
        return kInputError;
    }
    for (double c : levels) {
        if (!(c > -1.0 && c < 1.0)) {
            err << "error: level " << c << " is not a regular value in (-1, 1)\n";
            return kInputError;
        }
    }
    auto j = fkm_header("fkm curvature", *F);
    j["seed"] = cfg.seed;
    j["samples"] = cfg.samples;
    j["tol_cluster"] = cfg.tol_cluster;
    j["levels"] = ojson::array();
    GeometryTolerances tol;
    tol.cluster = cfg.tol_cluster;
    for (double c : levels) {
        try {
            j["levels"].push_back(to_json(curvature_report(*F, c, cfg.samples, cfg.seed, tol)));
        } catch (const GeometryError& e) {
            err << "error: level " << c << ": " << e.what() << " [sample " << e.index() << "]\n";
            return kNonConvergence;
        }
    }
    return em.write(j);
}

int cmd_fiber(const RunConfig& cfg, std::int64_t mp, std::int64_t mm, bool twist_plus, bool twist_minus,
              std::int64_t max_degree, bool homotopy_sphere, std::ostream& out, std::ostream& err) {
    if (mp < 1 || mm < 1) {
        err << "error: multiplicities must be >= 1\n";
        return kInputError;
    }
    if (max_degree < 0) {
        err << "error: --max-degree must be >= 0\n";
        return kInputError;
    }
    const FiberConfig input{mp, mm, twist_plus, twist_minus};
    const FiberConfig fc = normalized(input);
    try {
        validate(fc);
    } catch (const DomainError& e) {
        err << "error: " << e.what() << "\n";
        return kInputError;
    }
    ojson j;
    j["schema_version"] = kSchemaVersion;
    j["command"] = "fiber";
    j["config"] = {{"m_plus", fc.m_plus}, {"m_minus", fc.m_minus}, {"twist_plus", fc.twist_plus},
                   {"twist_minus", fc.twist_minus}};
    if (!(fc == input)) {
        j["note"] = "normalized to m_plus >= m_minus (input was (" + std::to_string(mp) + "," + std::to_string(mm) +
                    "); twist flags swapped with the multiplicities)";
    }
    j["homotopy_sphere_context"] = homotopy_sphere;
    j["pi1"] = std::string(to_string(fundamental_group(fc)));
    j["max_degree"] = max_degree;
    j["homology"] = ojson::array();
    for (std::int64_t i = 0; i <= max_degree; ++i) {
        const auto h = fiber_homology(fc, i);
        ojson e{{"i", i}, {"group", to_string(h)}};
        const auto hj = to_json(h);
        for (auto it = hj.begin(); it != hj.end(); ++it) e[it.key()] = it.value();
        j["homology"].push_back(e);
    }
    const auto rt = rational_type(fc, homotopy_sphere);
    j["rational_types"] = ojson::array();
    for (const auto& alt : rt.alternatives) j["rational_types"].push_back(to_string(alt));
    if (!rt.alternatives.empty()) {
        j["poincare_series"] = poincare_series(rt, max_degree);
    } else {
        j["poincare_series"] = nullptr;
    }
    const auto cons = check_table_consistency(fc, max_degree, homotopy_sphere);
    j["consistent"] = cons.consistent;
    j["forms_checked"] = cons.forms_checked;
    if (!cons.mismatches.empty()) j["mismatches"] = cons.mismatches;
    Emitter em(cfg, out, err);
    return em.write(j);
}

std::string csv_escape(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

int cmd_enumerate(const RunConfig& cfg, std::int64_t max_dim, bool with_stolz, bool with_fkm, std::ostream& out,
                  std::ostream& err) {
    if (max_dim < 4) {
        err << "error: --max-dim must be >= 4\n";
        return kInputError;
    }
    if (!with_stolz && !with_fkm) with_stolz = with_fkm = true;

    struct Row {
        std::vector<std::string> sources;
    };
    std::map<std::tuple<std::int64_t, std::int64_t, std::int64_t>, Row> rows;
    for (const auto& e : enumerate_fkm(max_dim)) {
        rows[{e.n, e.m_plus, e.m_minus}].sources.push_back("FKM(" + std::to_string(e.m) + "," + std::to_string(e.k) + ")");
    }

    auto stolz_text = [](std::int64_t hi, std::int64_t lo, StolzVariant variant) -> std::string {
        if (variant == StolzVariant::HomotopySphere && !(lo >= 2 && lo < hi)) return "n/a";
        const auto v = stolz(hi, lo, variant);
        return std::string(to_string(v.reason));
    };

    Emitter em(cfg, out, err);
    if (cfg.format == "csv") {
        std::ostringstream os;
        os << "n,m_plus,m_minus";
        if (with_fkm) os << ",sources";
        os << ",cases,g";
        if (with_stolz) os << ",stolz_homotopy_sphere,stolz_dupin";
        os << "\n";
        for (const auto& [key, row] : rows) {
            const auto [n, hi, lo] = key;
            const auto v = theorem_a({n, hi, lo});
            std::string cases, sources;
            for (auto c : v.cases) cases += (cases.empty() ? "" : "|") + std::string(to_string(c));
            for (const auto& s : row.sources) sources += (sources.empty() ? "" : " ") + s;
            os << n << "," << hi << "," << lo;
            if (with_fkm) os << "," << csv_escape(sources);
            os << "," << cases << "," << (v.g ? std::to_string(*v.g) : "");
            if (with_stolz) {
                os << "," << stolz_text(hi, lo, StolzVariant::HomotopySphere) << ","
                   << stolz_text(hi, lo, StolzVariant::Dupin);
            }
            os << "\n";
        }
        return em.write(os.str());
    }

    ojson j;
    j["schema_version"] = kSchemaVersion;
    j["command"] = "enumerate";
    j["max_dim"] = max_dim;
    j["rows"] = ojson::array();
    for (const auto& [key, row] : rows) {
        const auto [n, hi, lo] = key;
        ojson r{{"n", n}, {"m_plus", hi}, {"m_minus", lo}};
        if (with_fkm) r["sources"] = row.sources;
        const auto vj = to_json(theorem_a({n, hi, lo}));
        r["theorem_a"] = vj;
        if (with_stolz) {
            r["stolz"] = {{"homotopy_sphere", stolz_text(hi, lo, StolzVariant::HomotopySphere)},
                          {"dupin", stolz_text(hi, lo, StolzVariant::Dupin)}};
        }
        j["rows"].push_back(r);
    }
    return em.write(j);
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Isoparametric FKM data, dimension classification and fiber invariants", "isopar"};
    app.require_subcommand(1);
    app.fallthrough();

    RunConfig cfg;
    cfg.seed = default_seed();
    std::string out_path;
    app.add_option("--seed", cfg.seed, "RNG seed (default: $ISOPAR_SEED or 1)");
    app.add_option("--samples", cfg.samples, "Number of random samples")->check(CLI::PositiveNumber);
    app.add_option("--tol-cm", cfg.tol_cm, "Tolerance for the Cartan-Munzner identities")->check(CLI::PositiveNumber);
    app.add_option("--tol-cluster", cfg.tol_cluster, "Eigenvalue clustering tolerance")->check(CLI::PositiveNumber);
    app.add_option("--out", out_path, "Write the report to this file");
    app.add_option("--format", cfg.format, "Output format")->check(CLI::IsMember({"json", "csv"}));

    std::int64_t n = 0, mp = 0, mm = 0;
    auto* classify = app.add_subcommand("classify", "Dimension-triple admissibility");
    classify->add_option("n", n)->required();
    classify->add_option("m_plus", mp)->required();
    classify->add_option("m_minus", mm)->required();

    std::int64_t m = 0, k = 0;
    std::string action;
    std::vector<double> levels;
    auto* fkm = app.add_subcommand("fkm", "Clifford system and FKM polynomial for (m, k)");
    fkm->add_option("m", m)->required();
    fkm->add_option("k", k)->required();
    fkm->add_option("action", action)->required()->check(CLI::IsMember({"build", "verify", "curvature"}));
    fkm->add_option("--level", levels, "Level value c in (-1, 1); repeatable");

    std::int64_t fp = 0, fm = 0, max_degree = 20;
    bool twist_plus = false, twist_minus = false, homotopy_sphere = false;
    auto* fiber = app.add_subcommand("fiber", "Homotopy-fiber invariants");
    fiber->add_option("m_plus", fp)->required();
    fiber->add_option("m_minus", fm)->required();
    fiber->add_flag("--twist-plus", twist_plus);
    fiber->add_flag("--twist-minus", twist_minus);
    fiber->add_option("--max-degree", max_degree);
    fiber->add_flag("--homotopy-sphere", homotopy_sphere, "Drop types excluded when the total space is a homotopy sphere");

    std::int64_t max_dim = 0;
    bool with_stolz = false, with_fkm = false;
    auto* enumerate = app.add_subcommand("enumerate", "FKM multiplicity table");
    enumerate->add_option("--max-dim", max_dim, "Largest ambient sphere dimension")->required();
    enumerate->add_flag("--stolz", with_stolz, "Include the Stolz columns");
    enumerate->add_flag("--fkm", with_fkm, "Include the FKM source column");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return kInputError;
    }
    if (!out_path.empty()) cfg.output_path = out_path;
    if (cfg.format == "csv" && !enumerate->parsed()) {
        err << "error: csv output is only available for enumerate\n";
        return kInputError;
    }

    try {
        if (classify->parsed()) return cmd_classify(cfg, n, mp, mm, out, err);
        if (fkm->parsed()) return cmd_fkm(cfg, m, k, action, levels, out, err);
        if (fiber->parsed()) return cmd_fiber(cfg, fp, fm, twist_plus, twist_minus, max_degree, homotopy_sphere, out, err);
        if (enumerate->parsed()) return cmd_enumerate(cfg, max_dim, with_stolz, with_fkm, out, err);
    } catch (const DomainError& e) {
        err << "error: " << e.what() << "\n";
        return kInputError;
    }
    return kInputError;
}

} // namespace isopar::cli
