// xtp: build weighted recursive triangles, certify x-total positivity of
// their Jacobi/Hankel truncations, and cross-check catalogued families.
//
// Exit codes: 0 = all requested checks pass, 1 = a mathematical check failed,
// 2 = usage or input error, 3 = internal invariant violation (a bug).

#include <CLI11.hpp>

#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "xtp/homogenize.hpp"
#include "xtp/io.hpp"

namespace {

using namespace xtp;

constexpr int kExitPass = 0;
constexpr int kExitMathFail = 1;
constexpr int kExitUsage = 2;

// Short forms accepted for two registry names whose full names carry a suffix.
std::string resolve_preset_name(const std::string& name) {
    if (name == "ex3_8") return "ex3_8_bell";
    if (name == "ex3_9") return "ex3_9_eulerian";
    return name;
}

struct PresetFlags {
    std::string name;
    unsigned long u = 3;
    long long a = 1;
    long long b = 1;
    std::string thresholds = "2";
};

PresetParams params_from_flags(const PresetFlags& f) {
    PresetParams p;
    p.u = f.u;
    p.a = f.a;
    p.b = f.b;
    p.thresholds.clear();
    std::size_t pos = 0;
    const std::string& text = f.thresholds;
    while (pos < text.size()) {
        std::size_t comma = text.find(',', pos);
        if (comma == std::string::npos) comma = text.size();
        std::string piece = text.substr(pos, comma - pos);
        try {
            std::size_t used = 0;
            unsigned long v = std::stoul(piece, &used);
            if (used != piece.size()) throw std::invalid_argument(piece);
            p.thresholds.push_back(v);
        } catch (const std::exception&) {
            throw ValueError("--thresholds expects comma-separated integers, got '" +
                             piece + "'");
        }
        pos = comma + 1;
    }
    return p;
}

// Obtain a weight system from --preset or --weights (exactly one).
struct Source {
    WeightSystem weights;
    std::optional<Preset> preset;
};

Source load_source(const PresetFlags& preset_flags, const std::string& weights_path) {
    bool has_preset = !preset_flags.name.empty();
    bool has_file = !weights_path.empty();
    if (has_preset == has_file)
        throw ValueError("exactly one of --preset and --weights is required");
    if (has_file) {
        auto ws = weights_from_json(read_json_file(weights_path));
        return Source{std::move(ws), std::nullopt};
    }
    auto pre = make_preset(resolve_preset_name(preset_flags.name),
                           params_from_flags(preset_flags));
    auto ws = pre.weights;
    return Source{std::move(ws), std::move(pre)};
}

std::map<std::string, Int> parse_assignments(const std::string& text,
                                             const VarSetPtr& vars) {
    std::map<std::string, Int> at;
    std::size_t pos = 0;
    while (pos < text.size()) {
        std::size_t comma = text.find(',', pos);
        if (comma == std::string::npos) comma = text.size();
        std::string piece = text.substr(pos, comma - pos);
        std::size_t eq = piece.find('=');
        if (eq == std::string::npos)
            throw ValueError("--at expects var=value pairs, got '" + piece + "'");
        std::string name = piece.substr(0, eq);
        std::string value = piece.substr(eq + 1);
        if (!vars->index_of(name))
            throw ValueError("--at names unknown variable '" + name + "'");
        if (value.empty() ||
            value.find_first_not_of("0123456789") != std::string::npos)
            throw ValueError("--at values must be nonnegative integers, got '" +
                             value + "' for " + name);
        at[name] = Int(value);
        pos = comma + 1;
    }
    for (const auto& v : vars->names())
        if (!at.count(v))
            throw ValueError("--at must assign every variable; missing '" + v + "'");
    return at;
}

void emit_json(const Json& j) { std::cout << j.dump() << "\n"; }

std::string render_index_set(const std::vector<std::size_t>& idx) {
    std::string s = "{";
    for (std::size_t i = 0; i < idx.size(); ++i)
        s += (i ? "," : "") + std::to_string(idx[i]);
    return s + "}";
}

void print_tp_report_text(const TPReport& rep, const std::string& note) {
    std::cout << "verdict: " << rep.verdict_string() << "\n";
    std::cout << "order checked: " << rep.order_checked << "\n";
    std::cout << "minors evaluated: " << rep.minors_evaluated << "\n";
    for (const auto& v : rep.violations)
        std::cout << "violation: rows " << render_index_set(v.rows) << " cols "
                  << render_index_set(v.cols) << " det "
                  << v.det.to_string(TextStyle::Compact) << "\n";
    if (!note.empty()) std::cout << "note: " << note << "\n";
}

// ---------------------------------------------------------------------------
// gen
// ---------------------------------------------------------------------------

struct GenOpts {
    PresetFlags preset;
    std::string weights_path;
    long long N = -1;
    bool column = false;
    std::string at_text;
    bool json = false;
    bool csv = false;
};

int cmd_gen(const GenOpts& o) {
    if (o.N < 0) throw ValueError("gen requires -N >= 0");
    if (o.csv && o.json) throw ValueError("choose one of --csv and --json");
    if (o.csv && o.at_text.empty())
        throw ValueError("--csv output requires --at (integer specialization)");
    auto src = load_source(o.preset, o.weights_path);
    auto tri = build_triangle(src.weights, static_cast<std::size_t>(o.N));

    if (o.at_text.empty()) {
        if (o.column) {
            auto col = tri.first_column();
            if (o.json) {
                Json j = Json::array();
                for (const auto& f : col) j.push_back(polynomial_to_json(f));
                emit_json(j);
            } else {
                std::string line;
                for (const auto& f : col) {
                    if (!line.empty()) line += "; ";
                    line += f.to_string(TextStyle::Compact);
                }
                std::cout << line << "\n";
            }
        } else if (o.json) {
            emit_json(triangle_to_json(tri));
        } else {
            for (const auto& row : tri.rows) {
                std::string line;
                for (const auto& f : row) {
                    if (!line.empty()) line += "; ";
                    line += f.to_string(TextStyle::Compact);
                }
                std::cout << line << "\n";
            }
        }
        return kExitPass;
    }

    auto at = parse_assignments(o.at_text, src.weights.vars());
    if (o.column) {
        std::vector<Int> values;
        for (const auto& f : tri.first_column()) values.push_back(f.evaluate(at));
        if (o.json) {
            Json j = Json::array();
            for (const auto& v : values) j.push_back(v.str());
            emit_json(j);
        } else if (o.csv) {
            for (const auto& v : values) std::cout << v.str() << "\n";
        } else {
            std::string line;
            for (const auto& v : values) {
                if (!line.empty()) line += " ";
                line += v.str();
            }
            std::cout << line << "\n";
        }
        return kExitPass;
    }
    if (o.json) {
        Json j = Json::array();
        for (const auto& row : tri.rows) {
            Json r = Json::array();
            for (const auto& f : row) r.push_back(f.evaluate(at).str());
            j.push_back(std::move(r));
        }
        emit_json(j);
    } else if (o.csv) {
        std::cout << triangle_csv(tri, at);
    } else {
        for (const auto& row : tri.rows) {
            std::string line;
            for (const auto& f : row) {
                if (!line.empty()) line += " ";
                line += f.evaluate(at).str();
            }
            std::cout << line << "\n";
        }
    }
    return kExitPass;
}

// ---------------------------------------------------------------------------
// hankel
// ---------------------------------------------------------------------------

struct HankelOpts {
    PresetFlags preset;
    std::string weights_path;
    long long N = -1;
    std::string at_text;
    bool json = false;
};

int cmd_hankel(const HankelOpts& o) {
    if (o.N < 1) throw ValueError("hankel requires -N >= 1");
    auto src = load_source(o.preset, o.weights_path);
    std::size_t N = static_cast<std::size_t>(o.N);
    auto tri = build_triangle(src.weights, 2 * N - 2);
    auto H = hankel(tri.first_column(), N);

    if (!o.at_text.empty()) {
        auto at = parse_assignments(o.at_text, src.weights.vars());
        if (o.json) {
            Json j = Json::array();
            for (std::size_t i = 0; i < N; ++i) {
                Json row = Json::array();
                for (std::size_t k = 0; k < N; ++k)
                    row.push_back(H.matrix.at(i, k).evaluate(at).str());
                j.push_back(std::move(row));
            }
            emit_json(j);
        } else {
            for (std::size_t i = 0; i < N; ++i) {
                std::string line;
                for (std::size_t k = 0; k < N; ++k) {
                    if (k) line += " ";
                    line += H.matrix.at(i, k).evaluate(at).str();
                }
                std::cout << line << "\n";
            }
        }
        return kExitPass;
    }
    if (o.json) {
        emit_json(matrix_to_json(H.matrix));
    } else {
        for (std::size_t i = 0; i < N; ++i) {
            std::string line;
            for (std::size_t k = 0; k < N; ++k) {
                if (k) line += "; ";
                line += H.matrix.at(i, k).to_string(TextStyle::Compact);
            }
            std::cout << line << "\n";
        }
    }
    return kExitPass;
}

// ---------------------------------------------------------------------------
// check
// ---------------------------------------------------------------------------

struct CheckOpts {
    PresetFlags preset;
    std::string weights_path;
    std::string matrix_path;
    long long N = -1;
    unsigned order = 0;
    bool hankel_target = false;
    bool jacobi_target = false;
    bool exhaustive = false;
    unsigned jobs = 1;
    bool json = false;
};

int cmd_check(const CheckOpts& o) {
    TPReport rep;
    std::string source_desc;
    std::string note;

    if (!o.matrix_path.empty()) {
        if (o.hankel_target || o.jacobi_target || !o.preset.name.empty() ||
            !o.weights_path.empty())
            throw ValueError("--matrix cannot be combined with preset/weights sources");
        auto M = matrix_from_json(read_json_file(o.matrix_path));
        CheckOptions opt;
        opt.order = o.order;
        opt.exhaustive = o.exhaustive;
        opt.jobs = o.jobs;
        rep = check_xtp(M, opt);
        source_desc = "matrix " + o.matrix_path;
    } else {
        if (o.hankel_target == o.jacobi_target)
            throw ValueError("choose exactly one of --hankel and --jacobi "
                             "(or give --matrix)");
        if (o.N < 1) throw ValueError("check requires -N >= 1");
        auto src = load_source(o.preset, o.weights_path);
        std::size_t N = static_cast<std::size_t>(o.N);
        if (o.jacobi_target) {
            auto J = jacobi_matrix(src.weights, N);
            rep = check_tridiagonal_xtp(J);
            source_desc = "jacobi truncation N=" + std::to_string(N);
            note = "tridiagonal: every consecutive-window minor evaluated";
        } else {
            std::vector<Polynomial> seq;
            if (src.preset && src.preset->hankel_override &&
                2 * N - 1 <= src.preset->hankel_override->size()) {
                seq = *src.preset->hankel_override;
                note = src.preset->hankel_override_note;
            } else {
                seq = build_triangle(src.weights, 2 * N - 2).first_column();
            }
            auto H = hankel(seq, N);
            CheckOptions opt;
            opt.order = o.order;
            opt.exhaustive = o.exhaustive;
            opt.jobs = o.jobs;
            rep = check_xtp(H.matrix, opt);
            source_desc = "hankel truncation N=" + std::to_string(N);
        }
    }

    if (o.json) {
        Json j = tp_report_to_json(rep);
        j["source"] = source_desc;
        if (!note.empty()) j["note"] = note;
        emit_json(j);
    } else {
        std::cout << "source: " << source_desc << "\n";
        print_tp_report_text(rep, note);
    }
    return rep.violations.empty() ? kExitPass : kExitMathFail;
}

// ---------------------------------------------------------------------------
// conditions
// ---------------------------------------------------------------------------

struct ConditionsOpts {
    PresetFlags preset;
    std::string weights_path;
    unsigned long K = 8;
    bool json = false;
};

int cmd_conditions(const ConditionsOpts& o) {
    auto src = load_source(o.preset, o.weights_path);
    auto rep = check_weight_conditions(src.weights, o.K);
    if (o.json) {
        Json j;
        j["pass"] = rep.pass;
        j["K"] = o.K;
        if (rep.first_failure) {
            Json f;
            f["condition"] = rep.first_failure->condition;
            f["index"] = rep.first_failure->index;
            f["witness"] =
                rep.first_failure->witness.to_string(TextStyle::Compact);
            j["first_failure"] = std::move(f);
        }
        emit_json(j);
    } else {
        std::cout << "weight conditions up to K=" << o.K << ": "
                  << (rep.pass ? "pass" : "fail") << "\n";
        if (rep.first_failure)
            std::cout << "first failure: condition (" << rep.first_failure->condition
                      << ") at index " << rep.first_failure->index << ", witness "
                      << rep.first_failure->witness.to_string(TextStyle::Compact)
                      << "\n";
        if (!rep.pass)
            std::cout << "note: the conditions are sufficient, not necessary; "
                         "failing them does not refute positivity\n";
    }
    return rep.pass ? kExitPass : kExitMathFail;
}

// ---------------------------------------------------------------------------
// gf
// ---------------------------------------------------------------------------

struct GfOpts {
    PresetFlags preset;
    long long T = 10;
    bool json = false;
};

int cmd_gf(const GfOpts& o) {
    if (o.preset.name.empty()) throw ValueError("gf requires --preset");
    if (o.T < 1) throw ValueError("gf requires -N >= 1");
    auto pre = make_preset(resolve_preset_name(o.preset.name),
                           params_from_flags(o.preset));
    if (!pre.riordan)
        throw ValueError("preset '" + pre.name +
                         "' is not an R(a,b;c,e) family; use 'catalog run' for "
                         "its oracle checks");
    std::size_t T = static_cast<std::size_t>(o.T);
    auto d = solve_d(*pre.riordan, T);
    auto tri = build_triangle(pre.weights, T);
    auto col = tri.first_column();
    std::vector<bool> equal(T + 1);
    bool all_equal = true;
    for (std::size_t n = 0; n <= T; ++n) {
        equal[n] = (d.coeffs[n] == col[n]);
        all_equal = all_equal && equal[n];
    }
    bool az = verify_AZ_recurrences(tri, *pre.riordan);

    if (o.json) {
        Json j;
        j["preset"] = pre.name;
        j["T"] = T;
        j["equal"] = all_equal;
        Json per = Json::array();
        for (std::size_t n = 0; n <= T; ++n) {
            Json e;
            e["n"] = n;
            e["equal"] = static_cast<bool>(equal[n]);
            per.push_back(std::move(e));
        }
        j["per_coefficient"] = std::move(per);
        j["az_recurrences"] = az;
        emit_json(j);
    } else {
        for (std::size_t n = 0; n <= T; ++n) {
            std::cout << "n=" << n << ": "
                      << (equal[n] ? "equal" : "MISMATCH") << "\n";
            if (!equal[n])
                std::cout << "  series " << d.coeffs[n].to_string(TextStyle::Compact)
                          << "\n  column " << col[n].to_string(TextStyle::Compact)
                          << "\n";
        }
        std::cout << "column generating function: "
                  << (all_equal ? "all-equal" : "mismatch") << " up to N=" << T
                  << "\n";
        std::cout << "entrywise A/Z recurrences: " << (az ? "pass" : "fail")
                  << "\n";
    }
    return (all_equal && az) ? kExitPass : kExitMathFail;
}

// ---------------------------------------------------------------------------
// homogenize
// ---------------------------------------------------------------------------

struct HomogenizeOpts {
    std::string input_path;
    std::string var = "x0";
    bool json = false;
};

int cmd_homogenize(const HomogenizeOpts& o) {
    auto f = polynomial_from_json(read_json_file(o.input_path));
    auto F = homogenize(f, o.var);
    if (o.json)
        emit_json(polynomial_to_json(F));
    else
        std::cout << F.to_string(TextStyle::Compact) << "\n";
    return kExitPass;
}

// ---------------------------------------------------------------------------
// catalog
// ---------------------------------------------------------------------------

struct CatalogRunOpts {
    PresetFlags preset;
    long long N = 6;
    unsigned order = 0;
    unsigned jobs = 1;
    bool json = false;
};

int cmd_catalog_list(bool json) {
    if (json) {
        emit_json(Json(preset_names()));
    } else {
        for (const auto& n : preset_names()) std::cout << n << "\n";
    }
    return kExitPass;
}

int cmd_catalog_run(const CatalogRunOpts& o) {
    if (o.N < 1) throw ValueError("catalog run requires --N >= 1");
    auto pre = make_preset(resolve_preset_name(o.preset.name),
                           params_from_flags(o.preset));
    auto rep = run_preset_suite(pre, static_cast<std::size_t>(o.N), o.order, o.jobs);
    if (o.json) {
        emit_json(suite_report_to_json(rep));
    } else {
        std::cout << "preset " << rep.preset << " (depth " << rep.depth << ")\n";
        for (const auto& c : rep.checks)
            std::cout << (c.pass ? "[PASS] " : "[FAIL] ") << c.name
                      << (c.detail.empty() ? "" : ": " + c.detail) << "\n";
        std::cout << (rep.all_pass() ? "all checks passed" : "some checks FAILED")
                  << "\n";
    }
    return rep.all_pass() ? kExitPass : kExitMathFail;
}

void add_preset_flags(CLI::App* cmd, PresetFlags& flags, bool with_name_option) {
    if (with_name_option)
        cmd->add_option("--preset", flags.name, "preset name from the registry");
    cmd->add_option("--u", flags.u, "family parameter u (ex3_4; u >= 3)");
    cmd->add_option("--a", flags.a, "counterexample parameter a (>= 0)");
    cmd->add_option("--b", flags.b, "counterexample parameter b (>= 0)");
    cmd->add_option("--thresholds", flags.thresholds,
                    "comma-separated thresholds (ex3_3_threshold)");
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact triangles, x-total positivity certificates, and "
                 "catalogued family cross-checks"};
    app.require_subcommand(1);

    GenOpts gen;
    auto* cmd_gen_p = app.add_subcommand(
        "gen", "build the recursion triangle and print it");
    add_preset_flags(cmd_gen_p, gen.preset, true);
    cmd_gen_p->add_option("--weights", gen.weights_path, "weight-system JSON file");
    cmd_gen_p->add_option("-N,--N", gen.N, "triangle depth (rows 0..N)")->required();
    cmd_gen_p->add_flag("--column", gen.column, "print only the first column");
    cmd_gen_p->add_option("--at", gen.at_text, "specialize, e.g. q=2 or q=2,p=1");
    cmd_gen_p->add_flag("--json", gen.json, "machine-readable output");
    cmd_gen_p->add_flag("--csv", gen.csv, "CSV output (requires --at)");

    HankelOpts hank;
    auto* cmd_hankel_p = app.add_subcommand(
        "hankel", "print the N x N Hankel matrix of the first column");
    add_preset_flags(cmd_hankel_p, hank.preset, true);
    cmd_hankel_p->add_option("--weights", hank.weights_path, "weight-system JSON file");
    cmd_hankel_p->add_option("-N,--N", hank.N, "Hankel truncation size")->required();
    cmd_hankel_p->add_option("--at", hank.at_text, "specialize before printing");
    cmd_hankel_p->add_flag("--json", hank.json, "machine-readable output");

    CheckOpts chk;
    auto* cmd_check_p = app.add_subcommand(
        "check", "certify x-total positivity of a matrix truncation");
    add_preset_flags(cmd_check_p, chk.preset, true);
    cmd_check_p->add_option("--weights", chk.weights_path, "weight-system JSON file");
    cmd_check_p->add_option("--matrix", chk.matrix_path, "matrix JSON file");
    cmd_check_p->add_option("-N,--N", chk.N, "truncation size");
    cmd_check_p->add_flag("--hankel", chk.hankel_target,
                          "check the Hankel truncation of the first column");
    cmd_check_p->add_flag("--jacobi", chk.jacobi_target,
                          "check the tridiagonal coefficient matrix");
    cmd_check_p->add_option("--order", chk.order,
                            "largest minor order (default min(4, N))");
    cmd_check_p->add_flag("--exhaustive", chk.exhaustive,
                          "collect every violation instead of stopping at the first");
    cmd_check_p->add_option("--jobs", chk.jobs, "worker threads");
    cmd_check_p->add_flag("--json", chk.json, "machine-readable output");

    ConditionsOpts cond;
    auto* cmd_cond_p = app.add_subcommand(
        "conditions", "evaluate the sufficient weight inequalities");
    add_preset_flags(cmd_cond_p, cond.preset, true);
    cmd_cond_p->add_option("--weights", cond.weights_path, "weight-system JSON file");
    cmd_cond_p->add_option("-K,--K", cond.K, "check indices up to K");
    cmd_cond_p->add_flag("--json", cond.json, "machine-readable output");

    GfOpts gf;
    auto* cmd_gf_p = app.add_subcommand(
        "gf", "compare the column with its Riordan generating function");
    add_preset_flags(cmd_gf_p, gf.preset, true);
    cmd_gf_p->add_option("-N,--N,-T,--T", gf.T, "compare coefficients 0..N");
    cmd_gf_p->add_flag("--json", gf.json, "machine-readable output");

    HomogenizeOpts hom;
    auto* cmd_hom_p = app.add_subcommand(
        "homogenize", "lift a polynomial to homogeneous form with a fresh variable");
    cmd_hom_p->add_option("--input", hom.input_path, "polynomial JSON file")
        ->required();
    cmd_hom_p->add_option("--var", hom.var, "fresh variable name (default x0)");
    cmd_hom_p->add_flag("--json", hom.json, "machine-readable output");

    auto* cmd_cat_p = app.add_subcommand("catalog", "catalogued family suites");
    cmd_cat_p->require_subcommand(1);
    bool cat_list_json = false;
    auto* cat_list = cmd_cat_p->add_subcommand("list", "print registry names");
    cat_list->add_flag("--json", cat_list_json, "machine-readable output");
    CatalogRunOpts cat;
    auto* cat_run = cmd_cat_p->add_subcommand("run", "run one preset's full suite");
    cat_run->add_option("name", cat.preset.name, "preset name")->required();
    add_preset_flags(cat_run, cat.preset, false);
    cat_run->add_option("-N,--N", cat.N, "suite depth (default 6)");
    cat_run->add_option("--order", cat.order, "largest Hankel minor order");
    cat_run->add_option("--jobs", cat.jobs, "worker threads");
    cat_run->add_flag("--json", cat.json, "machine-readable output");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }

    try {
        if (cmd_gen_p->parsed()) return cmd_gen(gen);
        if (cmd_hankel_p->parsed()) return cmd_hankel(hank);
        if (cmd_check_p->parsed()) return cmd_check(chk);
        if (cmd_cond_p->parsed()) return cmd_conditions(cond);
        if (cmd_gf_p->parsed()) return cmd_gf(gf);
        if (cmd_hom_p->parsed()) return cmd_homogenize(hom);
        if (cmd_cat_p->parsed()) {
            if (cat_list->parsed()) return cmd_catalog_list(cat_list_json);
            if (cat_run->parsed()) return cmd_catalog_run(cat);
        }
        std::cerr << "error: no subcommand\n";
        return kExitUsage;
    } catch (const InternalError& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 3;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 3;
    }
}
