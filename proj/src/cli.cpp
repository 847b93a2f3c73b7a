#include "medianqs/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <fstream>
#include <iomanip>
#include <limits>
#include <numeric>
#include <ostream>
#include <sstream>
#include <thread>
#include <tuple>

#include "medianqs/equal_area_partition.hpp"
#include "medianqs/errors.hpp"
#include "medianqs/icosa_triangulation.hpp"
#include "medianqs/median.hpp"
#include "medianqs/random_instances.hpp"
#include "medianqs/reeb_tree.hpp"

namespace medianqs {

using nlohmann::json;

namespace {

Monomial parse_term(const json& t) {
    if (t.is_array()) {
        if (t.size() != 4) throw ParseError("cli", "polynomial term must be [c, i, j, k]");
        return {t[0].get<double>(), t[1].get<int>(), t[2].get<int>(), t[3].get<int>()};
    }
    if (t.is_object()) {
        return {t.at("c").get<double>(), t.value("i", 0), t.value("j", 0), t.value("k", 0)};
    }
    throw ParseError("cli", "polynomial term must be an array or an object");
}

InputFunction polynomial_from(const json& terms_doc, std::optional<double> lip) {
    if (!terms_doc.is_array()) throw ParseError("cli", "polynomial must be an array of terms");
    std::vector<Monomial> terms;
    for (const auto& t : terms_doc) {
        const Monomial m = parse_term(t);
        if (m.i < 0 || m.j < 0 || m.k < 0) throw ParameterError("cli", "negative exponent in polynomial");
        if (!std::isfinite(m.c)) throw ParameterError("cli", "non-finite polynomial coefficient");
        terms.push_back(m);
    }
    const InputFunction f = InputFunction::polynomial(Polynomial(terms));
    if (lip && *lip < f.lip_bound()) throw ParameterError("cli", "lip_bound below the certified polynomial bound");
    return f;
}

InputFunction from_json(const json& doc, std::optional<double> lip_override) {
    if (doc.is_array()) return polynomial_from(doc, lip_override);
    if (!doc.is_object()) throw ParseError("cli", "function document must be a JSON array or object");
    std::optional<double> lip = lip_override;
    if (!lip && doc.contains("lip_bound")) lip = doc.at("lip_bound").get<double>();

    if (doc.contains("polynomial")) return polynomial_from(doc.at("polynomial"), lip);
    if (doc.contains("vertex_table") || doc.contains("values")) {
        const json& t = doc.contains("vertex_table") ? doc.at("vertex_table") : doc;
        VertexTable table;
        table.N = t.at("N").get<int>();
        table.values = t.at("values").get<std::vector<double>>();
        if (!lip) throw ParameterError("cli", "vertex tables require an explicit lip_bound");
        return InputFunction::vertex_table(std::move(table), *lip);
    }
    throw ParseError("cli", "function document needs \"polynomial\", \"vertex_table\" or \"values\"");
}

InputFunction builtin(const std::string& name) {
    if (name == "z") return InputFunction::polynomial(Polynomial({{1.0, 0, 0, 1}}));
    if (name == "shifted-square") {
        return InputFunction::polynomial(Polynomial({{1.0, 0, 0, 2}, {-0.6, 0, 0, 1}, {0.09, 0, 0, 0}}));
    }
    if (name.rfind("const:", 0) == 0) {
        try {
            std::size_t used = 0;
            const double c = std::stod(name.substr(6), &used);
            if (used == name.size() - 6) return InputFunction::constant(c);
        } catch (const std::exception&) {
        }
        throw ParseError("cli", "bad constant in builtin:" + name);
    }
    throw ParseError("cli", "unknown builtin function '" + name + "'");
}

std::string format_double(double v) {
    std::ostringstream os;
    os << std::setprecision(std::numeric_limits<double>::max_digits10) << v;
    return os.str();
}

json result_json(const QuasiStateResult& r) {
    return json{{"value", r.value},         {"error_bound", r.error_bound}, {"N", r.N},
                {"k", r.k},                 {"lip_bound", r.lip_bound},     {"median_node", r.median_node}};
}

std::size_t worker_cap(std::size_t jobs) {
    std::size_t cap = std::max(1u, std::thread::hardware_concurrency());
    if (const char* env = std::getenv("MEDIANQS_THREADS")) {
        try {
            const long n = std::stol(env);
            if (n >= 1) cap = static_cast<std::size_t>(n);
        } catch (const std::exception&) {
            throw ParseError("cli", "MEDIANQS_THREADS must be a positive integer");
        }
    }
    return std::min(cap, std::max<std::size_t>(jobs, 1));
}

std::vector<int> parse_n_list(const std::string& list) {
    std::vector<int> out;
    std::stringstream ss(list);
    for (std::string item; std::getline(ss, item, ',');) {
        try {
            std::size_t used = 0;
            const int n = std::stoi(item, &used);
            if (used != item.size()) throw std::invalid_argument(item);
            out.push_back(n);
        } catch (const std::exception&) {
            throw ParseError("cli", "bad entry '" + item + "' in --N-list");
        }
    }
    if (out.empty()) throw ParseError("cli", "--N-list is empty");
    return out;
}

struct Options {
    std::string function;
    std::optional<double> epsilon;
    std::optional<int> N;
    std::string k = "auto";
    std::optional<double> lip;
    std::uint64_t seed = 0;
    bool rotate = false;
    std::string n_list;
    int audit_k = 0;
    bool dump = false;
    bool theorem2 = false;
    int verify_N = 8;
    int trials = 200;
};

InputFunction resolve_function(const Options& o) {
    InputFunction f = load_function(o.function, o.lip);
    if (o.rotate) {
        Rng rng(o.seed);
        f = f.rotated(random_rotation(rng));
    }
    return f;
}

int cmd_compute(const Options& o, std::ostream& out) {
    const InputFunction f = resolve_function(o);
    int N = 0, k = 0;
    if (o.epsilon) {
        std::tie(N, k) = select_parameters(*o.epsilon, f.lip_bound());
    } else {
        N = *o.N;
        if (o.k == "auto") {
            k = max_regions(N);
        } else {
            try {
                std::size_t used = 0;
                k = std::stoi(o.k, &used);
                if (used != o.k.size()) throw std::invalid_argument(o.k);
            } catch (const std::exception&) {
                throw ParseError("cli", "--k must be an odd integer or 'auto'");
            }
        }
    }
    out << result_json(compute(f, N, k)).dump(2) << '\n';
    return 0;
}

int cmd_convergence(const Options& o, std::ostream& out) {
    const InputFunction f = resolve_function(o);
    const std::vector<int> Ns = parse_n_list(o.n_list);
    for (int N : Ns) check_parameters(N, max_regions(N));

    struct Row {
        QuasiStateResult r;
        double ms = 0.0;
        std::exception_ptr error;
    };
    std::vector<Row> rows(Ns.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i; (i = next.fetch_add(1)) < Ns.size();) {
            const auto t0 = std::chrono::steady_clock::now();
            try {
                rows[i].r = compute(f, Ns[i], max_regions(Ns[i]));
            } catch (...) {
                rows[i].error = std::current_exception();
            }
            rows[i].ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
        }
    };
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < worker_cap(Ns.size()); ++w) pool.emplace_back(worker);
    for (auto& t : pool) t.join();

    std::vector<std::size_t> order(Ns.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return Ns[a] < Ns[b]; });
    for (std::size_t i : order)
        if (rows[i].error) std::rethrow_exception(rows[i].error);
    out << "N,k,value,error_bound,elapsed_ms\n";
    for (std::size_t i : order) {
        const auto& r = rows[i].r;
        out << r.N << ',' << r.k << ',' << format_double(r.value) << ',' << format_double(r.error_bound) << ','
            << std::fixed << std::setprecision(3) << rows[i].ms << std::defaultfloat << '\n';
    }
    return 0;
}

int cmd_audit_partition(const Options& o, std::ostream& out) {
    const EqualAreaPartition P = build_partition(o.audit_k);
    const PartitionAudit a = audit_partition(P);
    const bool pass = a.max_diameter <= diameter_bound(P.k()) && a.min_inradius >= inradius_bound(P.k()) &&
                      a.area_max_rel_err <= 1e-9;
    out << json{{"k", P.k()},
                {"n", P.n()},
                {"sector_counts", P.sector_counts()},
                {"max_diameter", a.max_diameter},
                {"bound_7_over_sqrt_k", diameter_bound(P.k())},
                {"min_inradius", a.min_inradius},
                {"inradius_bound", inradius_bound(P.k())},
                {"area_max_rel_err", a.area_max_rel_err},
                {"pass", pass}}
               .dump(2)
        << '\n';
    return 0;
}

int cmd_audit_triangulation(const Options& o, std::ostream& out) {
    const IcosaTriangulation tri = build_triangulation(*o.N);
    const double diam = max_curvilinear_diameter(tri);
    const double angle = min_planar_angle(tri);
    out << json{{"N", tri.N},
                {"vertices", tri.vertex_count()},
                {"faces", tri.face_count()},
                {"max_curv_diameter", diam},
                {"diameter_bound", curvilinear_diameter_bound(tri.N)},
                {"min_angle", angle},
                {"theta0", min_angle_bound()},
                {"pass", diam <= curvilinear_diameter_bound(tri.N) && angle >= min_angle_bound()}}
               .dump(2)
        << '\n';
    return 0;
}

int cmd_reeb(const Options& o, std::ostream& out) {
    const InputFunction f = resolve_function(o);
    auto tri = std::make_shared<const IcosaTriangulation>(build_triangulation(*o.N));
    const ScalarField field = sample(f, tri);
    const ReebTree tree = build_reeb(field);
    const CollapsedTree c = collapse(tree);
    if (!o.dump) {
        out << json{{"nodes", tree.size()}, {"collapsed_nodes", c.nodes.size()}, {"root", tree.root()}}.dump(2)
            << '\n';
        return 0;
    }
    json nodes = json::array(), edges = json::array();
    for (const auto& n : c.nodes) nodes.push_back({{"id", n.id}, {"value", n.value}, {"degree", n.degree}});
    for (const auto& [a, b] : c.edges) edges.push_back({a, b});
    out << json{{"nodes", nodes}, {"edges", edges}}.dump(2) << '\n';
    return 0;
}

int cmd_verify(const Options& o, std::ostream& out) {
    if (!o.theorem2) throw ParseError("cli", "verify needs --theorem2");
    if (o.trials < 0) throw ParameterError("cli", "--trials must be nonnegative");
    const auto checks = theorem2_trials(o.verify_N, o.trials, o.seed);
    std::size_t held = 0;
    out << "trial,lhs,rhs,holds\n";
    for (std::size_t t = 0; t < checks.size(); ++t) {
        held += checks[t].holds();
        out << t << ',' << format_double(checks[t].lhs) << ',' << format_double(checks[t].rhs) << ','
            << (checks[t].holds() ? "yes" : "no") << '\n';
    }
    const bool pass = held == checks.size();
    out << (pass ? "PASS" : "FAIL") << " theorem2: " << held << "/" << checks.size() << " trials hold\n";
    return pass ? 0 : static_cast<int>(ErrorKind::Invariant);
}

void write_error(std::ostream& err, const std::string& kind, const std::string& stage, const std::string& message) {
    err << json{{"error", {{"kind", kind}, {"stage", stage}, {"message", message}}}}.dump() << '\n';
}

}  // namespace

InputFunction parse_function(const std::string& json_text, std::optional<double> lip_override) {
    json doc;
    try {
        doc = json::parse(json_text);
    } catch (const json::exception& e) {
        throw ParseError("cli", std::string("invalid JSON: ") + e.what());
    }
    try {
        return from_json(doc, lip_override);
    } catch (const json::exception& e) {
        throw ParseError("cli", std::string("malformed function document: ") + e.what());
    }
}

InputFunction load_function(const std::string& source, std::optional<double> lip_override) {
    if (source.rfind("builtin:", 0) == 0) {
        InputFunction f = builtin(source.substr(8));
        if (lip_override) {
            if (*lip_override < f.lip_bound()) throw ParameterError("cli", "lip_bound below the certified bound");
        }
        return f;
    }
    std::ifstream in(source);
    if (!in) throw ParseError("cli", "cannot open function file '" + source + "'");
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_function(buf.str(), lip_override);
}

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Median quasi-state on the sphere with certified error bounds", "medianqs"};
    app.require_subcommand(1);
    Options o;

    auto add_function = [&](CLI::App* sub, bool required) {
        auto* opt = sub->add_option("--function", o.function, "builtin:<name> or a JSON function file");
        if (required) opt->required();
        sub->add_option("--lip-bound", o.lip, "Lipschitz bound (required for vertex tables)");
        sub->add_option("--seed", o.seed, "seed for all randomness");
        sub->add_flag("--rotate", o.rotate, "apply a seeded random rotation to the input");
    };

    auto* compute_cmd = app.add_subcommand("compute", "compute the quasi-state value with its certificate");
    add_function(compute_cmd, true);
    auto* eps_opt = compute_cmd->add_option("--epsilon", o.epsilon, "target accuracy");
    auto* n_opt = compute_cmd->add_option("--N", o.N, "subdivision parameter");
    compute_cmd->add_option("--k", o.k, "odd region count or 'auto'")->needs(n_opt);
    eps_opt->excludes(n_opt);
    n_opt->excludes(eps_opt);

    auto* conv_cmd = app.add_subcommand("convergence", "CSV sweep over N");
    add_function(conv_cmd, true);
    conv_cmd->add_option("--N-list", o.n_list, "comma separated N values")->required();

    auto* ap_cmd = app.add_subcommand("audit-partition", "audit the equal-area partition");
    ap_cmd->add_option("--k", o.audit_k, "region count")->required();

    auto* at_cmd = app.add_subcommand("audit-triangulation", "audit the icosahedral triangulation");
    at_cmd->add_option("--N", o.N, "subdivision parameter")->required();

    auto* reeb_cmd = app.add_subcommand("reeb", "Reeb tree of the sampled field");
    add_function(reeb_cmd, true);
    reeb_cmd->add_option("--N", o.N, "subdivision parameter")->required();
    reeb_cmd->add_flag("--dump", o.dump, "emit the collapsed tree as JSON");

    auto* verify_cmd = app.add_subcommand("verify", "empirical metric continuity check");
    verify_cmd->add_flag("--theorem2", o.theorem2, "check |zeta_mu - zeta_nu| <= Lip * W_inf");
    verify_cmd->add_option("--N", o.verify_N, "subdivision parameter")->capture_default_str();
    verify_cmd->add_option("--trials", o.trials, "number of random trials")->capture_default_str();
    verify_cmd->add_option("--seed", o.seed, "seed for all randomness");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        write_error(err, "parse", "cli", e.what());
        return static_cast<int>(ErrorKind::Parse);
    }

    try {
        if (compute_cmd->parsed()) {
            if (!o.epsilon && !o.N) throw ParseError("cli", "compute needs exactly one of --epsilon or --N");
            return cmd_compute(o, out);
        }
        if (conv_cmd->parsed()) return cmd_convergence(o, out);
        if (ap_cmd->parsed()) return cmd_audit_partition(o, out);
        if (at_cmd->parsed()) return cmd_audit_triangulation(o, out);
        if (reeb_cmd->parsed()) return cmd_reeb(o, out);
        if (verify_cmd->parsed()) return cmd_verify(o, out);
    } catch (const Error& e) {
        static const char* names[] = {"", "", "parse", "parameter", "invariant", "resource"};
        write_error(err, names[static_cast<int>(e.kind())], e.stage(), e.what());
        return static_cast<int>(e.kind());
    } catch (const std::bad_alloc&) {
        write_error(err, "resource", "cli", "out of memory");
        return static_cast<int>(ErrorKind::Resource);
    } catch (const std::exception& e) {
        write_error(err, "invariant", "cli", e.what());
        return static_cast<int>(ErrorKind::Invariant);
    }
    return static_cast<int>(ErrorKind::Parse);
}

}  // namespace medianqs
