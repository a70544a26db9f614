// forestlat: lattices of admissible partitions below a binary leaf-labeled
// tree. Computes characteristic polynomials three ways, verifies lattice and
// shelling properties, sweeps all small trees, and exports Hasse diagrams.

#include <atomic>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#include <CLI11.hpp>
#include <json.hpp>

#include "forestlat/enumerate.hpp"
#include "forestlat/polynomial.hpp"

using nlohmann::json;
using namespace forestlat;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitDisagreement = 1;
constexpr int kExitUsage = 2;
constexpr int kExitBound = 3;

struct RunConfig {
    std::string tree_text;
    std::string tree_file;
    std::string order_spec;
    int max_leaves = kDefaultLeafBound;
    std::string format = "text";
    bool exhaustive = false;
};

Tree load_tree(const RunConfig& cfg) {
    std::string text = cfg.tree_text;
    if (!cfg.tree_file.empty()) {
        std::ifstream in(cfg.tree_file);
        if (!in) throw std::invalid_argument("cannot open '" + cfg.tree_file + "'");
        std::stringstream ss;
        ss << in.rdbuf();
        text = ss.str();
        while (!text.empty() && (text.back() == '\n' || text.back() == '\r')) text.pop_back();
    }
    if (text.empty()) throw std::invalid_argument("no tree given; use --tree or --file");
    return Tree::parse(text);
}

// --order tokens name the vertices in the order they receive labels 1..n;
// a token is a canonical vertex id (1-based) or a leaf pair "x-y" meaning
// the meet vertex of x and y.
NiceOrder parse_order(const Tree& tree, const std::string& spec) {
    const int n = tree.vertex_count();
    NiceOrder ord;
    ord.label.assign(n, 0);
    std::stringstream ss(spec);
    std::string token;
    int next_label = 1;
    while (std::getline(ss, token, ',')) {
        int vertex;
        auto dash = token.find('-');
        if (dash != std::string::npos) {
            vertex = tree.meet_vertex(token.substr(0, dash), token.substr(dash + 1));
        } else {
            try {
                vertex = std::stoi(token) - 1;
            } catch (const std::exception&) {
                throw std::invalid_argument("bad --order token '" + token + "'");
            }
            if (vertex < 0 || vertex >= n)
                throw std::invalid_argument("vertex id out of range in --order");
        }
        if (ord.label[vertex] != 0) throw std::invalid_argument("vertex repeated in --order");
        ord.label[vertex] = next_label++;
    }
    if (next_label != n + 1) throw std::invalid_argument("--order must list all vertices");
    if (!tree.validate_nice_order(ord))
        throw std::invalid_argument("--order is not a valid nice total order");
    return ord;
}

NiceOrder pick_order(const Tree& tree, const RunConfig& cfg) {
    return cfg.order_spec.empty() ? tree.canonical_nice_order() : parse_order(tree, cfg.order_spec);
}

// ---------------------------------------------------------------------------

struct CharpolyOutcome {
    IntPolynomial via_mobius;
    FactoredPoly via_levels;
    FactoredPoly via_exponents;
    bool agree = false;
};

CharpolyOutcome run_charpoly(const Tree& tree, const NiceOrder& ord, int max_leaves) {
    CharpolyOutcome out;
    LatticeModel lattice = LatticeModel::enumerate(tree, max_leaves);
    MChain chain = m_chain(lattice, ord);
    LevelSets lv = levels(lattice, chain, ord);
    out.via_mobius = charpoly_mobius(lattice);
    out.via_levels = charpoly_levels(lv);
    out.via_exponents = charpoly_exponents(tree);
    out.agree = out.via_mobius == expand(out.via_levels) &&
                out.via_mobius == expand(out.via_exponents);
    return out;
}

struct VerifyOutcome {
    bool lattice = false;
    bool el = false;
    bool sn = false;
    bool left_modular = false;
    bool level_condition = false;
    bool semimodular = false;  // reported, not required
    std::string semimodular_witness;
    std::string el_witness;

    bool required_ok() const { return lattice && el && sn && left_modular && level_condition; }
};

VerifyOutcome run_verify(const Tree& tree, const NiceOrder& ord, int max_leaves,
                         bool all_orders) {
    VerifyOutcome out;
    LatticeModel lattice = LatticeModel::enumerate(tree, max_leaves);
    out.lattice = verify_lattice(lattice);

    std::vector<NiceOrder> orders;
    if (all_orders)
        orders = tree.all_nice_orders();
    else
        orders = {ord};
    out.el = out.sn = true;
    for (const NiceOrder& o : orders) {
        ElResult el = verify_el_labeling(lattice, o);
        if (!el.ok) {
            out.el = false;
            out.el_witness = "[" + format_partition(tree, lattice.element(el.from)) + ", " +
                             format_partition(tree, lattice.element(el.to)) + "]: " + el.reason;
        }
        out.sn = out.sn && verify_sn_labeling(lattice, o);
    }

    MChain chain = m_chain(lattice, ord);
    LevelSets lv = levels(lattice, chain, ord);
    out.left_modular = check_left_modular(lattice, chain);
    out.level_condition = check_level_condition(lattice, lv);

    SemimodularResult semi = check_semimodular(lattice);
    out.semimodular = semi.ok;
    if (!semi.ok)
        out.semimodular_witness = format_partition(tree, lattice.element(semi.x)) + " , " +
                                  format_partition(tree, lattice.element(semi.y));
    return out;
}

json charpoly_json(const Tree& tree, const CharpolyOutcome& r) {
    json j;
    j["schema"] = 1;
    j["tree"] = tree.to_string();
    j["n"] = tree.vertex_count();
    j["roots"] = r.via_exponents.roots;
    j["coeffs"] = r.via_mobius.coeffs;
    j["checks"] = {{"agree", r.agree}};
    return j;
}

int cmd_charpoly(const RunConfig& cfg) {
    Tree tree = load_tree(cfg);
    NiceOrder ord = pick_order(tree, cfg);
    CharpolyOutcome r = run_charpoly(tree, ord, cfg.max_leaves);
    if (cfg.format == "json") {
        std::cout << charpoly_json(tree, r).dump() << "\n";
    } else {
        std::cout << "tree: " << tree.to_string() << "\n";
        std::cout << "n: " << tree.vertex_count() << "\n";
        std::cout << "mobius:    " << r.via_mobius.to_string() << "\n";
        std::cout << "levels:    " << r.via_levels.to_string() << "\n";
        std::cout << "exponents: " << r.via_exponents.to_string() << "\n";
        std::cout << r.via_exponents.to_string() << (r.agree ? " AGREE" : " DISAGREE") << "\n";
    }
    return r.agree ? kExitOk : kExitDisagreement;
}

int cmd_verify(const RunConfig& cfg) {
    Tree tree = load_tree(cfg);
    NiceOrder ord = pick_order(tree, cfg);
    VerifyOutcome r = run_verify(tree, ord, cfg.max_leaves, cfg.exhaustive);
    if (cfg.format == "json") {
        json j;
        j["schema"] = 1;
        j["tree"] = tree.to_string();
        j["n"] = tree.vertex_count();
        FactoredPoly f = charpoly_exponents(tree);
        j["roots"] = f.roots;
        j["coeffs"] = expand(f).coeffs;
        j["checks"] = {{"lattice", r.lattice},
                       {"el_labeling", r.el},
                       {"sn_labeling", r.sn},
                       {"left_modular", r.left_modular},
                       {"level_condition", r.level_condition},
                       {"semimodular", r.semimodular}};
        std::cout << j.dump() << "\n";
    } else {
        auto line = [](const char* name, bool ok, const std::string& extra = "") {
            std::cout << name << (ok ? "pass" : "FAIL")
                      << (extra.empty() ? "" : " " + extra) << "\n";
        };
        std::cout << "tree: " << tree.to_string() << "\n";
        line("lattice          ", r.lattice);
        line("el_labeling      ", r.el, r.el ? "" : r.el_witness);
        line("sn_labeling      ", r.sn);
        line("left_modular     ", r.left_modular);
        line("level_condition  ", r.level_condition);
        if (r.semimodular) {
            std::cout << "semimodular      pass\n";
        } else {
            std::cout << "semimodular      no (not required): " << r.semimodular_witness << "\n";
        }
        std::cout << (r.required_ok() ? "VERIFIED" : "FAILED") << "\n";
    }
    return r.required_ok() ? kExitOk : kExitDisagreement;
}

int sweep_threads() {
    if (const char* env = std::getenv("FOREST_LATTICE_THREADS")) {
        int t = std::atoi(env);
        if (t >= 1) return t;
    }
    unsigned hc = std::thread::hardware_concurrency();
    return hc == 0 ? 1 : static_cast<int>(hc);
}

int cmd_sweep(const RunConfig& cfg) {
    if (cfg.max_leaves > 7) throw bound_error("sweep is limited to 7 leaves");

    struct Row {
        int leaves;
        std::uint64_t trees = 0;
        std::uint64_t semimodular = 0;
        std::vector<std::string> failures;
    };
    std::vector<Row> rows;

    for (int k = 2; k <= cfg.max_leaves; ++k) {
        std::vector<Tree> trees = enumerate_labeled_trees(k);
        Row row;
        row.leaves = k;
        row.trees = trees.size();

        const int nthreads = std::min<int>(sweep_threads(), static_cast<int>(trees.size()));
        std::vector<std::vector<std::string>> fails(nthreads);
        std::atomic<std::uint64_t> semi_count{0};
        std::atomic<std::size_t> next{0};
        auto work = [&](int tid) {
            for (std::size_t i = next.fetch_add(1); i < trees.size(); i = next.fetch_add(1)) {
                const Tree& t = trees[i];
                try {
                    NiceOrder ord = t.canonical_nice_order();
                    VerifyOutcome v = run_verify(t, ord, cfg.max_leaves, cfg.exhaustive);
                    CharpolyOutcome c = run_charpoly(t, ord, cfg.max_leaves);
                    if (v.semimodular) semi_count.fetch_add(1);
                    if (!v.required_ok())
                        fails[tid].push_back(t.to_string() + ": verification failed");
                    if (!c.agree)
                        fails[tid].push_back(t.to_string() + ": polynomials disagree");
                } catch (const std::exception& e) {
                    fails[tid].push_back(t.to_string() + ": " + e.what());
                }
            }
        };
        std::vector<std::thread> pool;
        for (int tid = 1; tid < nthreads; ++tid) pool.emplace_back(work, tid);
        work(0);
        for (auto& th : pool) th.join();

        row.semimodular = semi_count.load();
        for (auto& f : fails) row.failures.insert(row.failures.end(), f.begin(), f.end());
        std::sort(row.failures.begin(), row.failures.end());
        rows.push_back(std::move(row));
    }

    std::uint64_t total = 0, failed = 0;
    for (const auto& r : rows) {
        total += r.trees;
        failed += r.failures.size();
    }

    if (cfg.format == "json") {
        json j;
        j["schema"] = 1;
        j["max_leaves"] = cfg.max_leaves;
        j["rows"] = json::array();
        for (const auto& r : rows) {
            j["rows"].push_back({{"leaves", r.leaves},
                                 {"trees", r.trees},
                                 {"semimodular", r.semimodular},
                                 {"failures", r.failures}});
        }
        j["total"] = total;
        j["failed"] = failed;
        std::cout << j.dump() << "\n";
    } else {
        std::cout << "leaves  trees  semimodular  failures\n";
        for (const auto& r : rows) {
            std::cout << r.leaves << "\t" << r.trees << "\t" << r.semimodular << "\t"
                      << r.failures.size() << "\n";
            for (const auto& f : r.failures) std::cout << "  " << f << "\n";
        }
        std::cout << "total " << total << (failed == 0 ? " OK" : " FAILED") << "\n";
    }
    return failed == 0 ? kExitOk : kExitDisagreement;
}

int cmd_hasse(const RunConfig& cfg) {
    Tree tree = load_tree(cfg);
    if (tree.leaf_count() > 8) throw bound_error("hasse is limited to 8 leaves");
    NiceOrder ord = pick_order(tree, cfg);
    LatticeModel lattice = LatticeModel::enumerate(tree, std::min(cfg.max_leaves, 8));
    std::cout << hasse_dot(lattice, ord);
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"interval lattices of binary leaf-labeled trees"};
    app.require_subcommand(1);
    RunConfig cfg;

    auto add_common = [&](CLI::App* sub, bool with_tree) {
        if (with_tree) {
            sub->add_option("--tree", cfg.tree_text, "tree text, e.g. ((a,b),c)");
            sub->add_option("--file", cfg.tree_file, "file containing the tree text");
            sub->add_option("--order", cfg.order_spec,
                            "nice order: vertices (canonical ids or leaf pairs x-y) in label order");
        }
        sub->add_option("--max-leaves", cfg.max_leaves, "leaf bound")
            ->check(CLI::Range(2, 12));
        sub->add_option("--format", cfg.format, "output format")
            ->check(CLI::IsMember({"text", "json", "dot"}));
    };

    auto* charpoly = app.add_subcommand("charpoly", "characteristic polynomial, three ways");
    add_common(charpoly, true);
    auto* verify = app.add_subcommand("verify", "verify lattice and labeling properties");
    add_common(verify, true);
    verify->add_flag("--exhaustive", cfg.exhaustive, "check all nice orders");
    auto* sweep = app.add_subcommand("sweep", "verify all labeled trees up to --max-leaves");
    add_common(sweep, false);
    sweep->add_flag("--exhaustive", cfg.exhaustive, "check all nice orders");
    auto* hasse = app.add_subcommand("hasse", "Hasse diagram as DOT");
    add_common(hasse, true);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (app.got_subcommand(charpoly)) return cmd_charpoly(cfg);
        if (app.got_subcommand(verify)) return cmd_verify(cfg);
        if (app.got_subcommand(sweep)) return cmd_sweep(cfg);
        if (app.got_subcommand(hasse)) return cmd_hasse(cfg);
    } catch (const bound_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitBound;
    } catch (const parse_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "internal inconsistency: " << e.what() << "\n";
        return kExitDisagreement;
    }
    return kExitUsage;
}
