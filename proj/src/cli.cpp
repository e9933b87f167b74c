#include "reeb/cli.hpp"

#include <cstdint>
#include <fstream>
#include <iostream>
#include <numeric>
#include <set>
#include <stdexcept>
#include <utility>
#include <variant>

#include <CLI11.hpp>
#include <json.hpp>

#include "reeb/braid.hpp"
#include "reeb/dynamics.hpp"
#include "reeb/index.hpp"
#include "reeb/model.hpp"
#include "reeb/perturb.hpp"
#include "reeb/scalar.hpp"
#include "reeb/spectrum.hpp"

namespace reeb::cli {
namespace {

// one table cell: empty, integer, float, boolean, or verbatim text
using Cell = std::variant<std::monostate, std::int64_t, double, bool, std::string>;

// emits rows either as CSV under a fixed header or as JSON lines with the
// header names as keys; all float formatting goes through fmt_double17 so
// identical configs produce byte-identical output
class RowWriter {
public:
    RowWriter(std::ostream& os, bool json, std::vector<std::string> columns)
        : os_(os), json_(json), cols_(std::move(columns)) {
        if (!json_) {
            for (std::size_t i = 0; i < cols_.size(); ++i)
                os_ << (i ? "," : "") << cols_[i];
            os_ << '\n';
        }
    }

    void row(const std::vector<Cell>& cells) {
        if (cells.size() != cols_.size())
            throw std::logic_error("row width does not match the header");
        if (json_) {
            nlohmann::ordered_json obj;
            for (std::size_t i = 0; i < cells.size(); ++i) {
                const Cell& c = cells[i];
                if (std::holds_alternative<std::monostate>(c))
                    obj[cols_[i]] = nullptr;
                else if (const auto* n = std::get_if<std::int64_t>(&c))
                    obj[cols_[i]] = *n;
                else if (const auto* d = std::get_if<double>(&c))
                    obj[cols_[i]] = *d;
                else if (const auto* b = std::get_if<bool>(&c))
                    obj[cols_[i]] = *b;
                else
                    obj[cols_[i]] = std::get<std::string>(c);
            }
            os_ << obj.dump() << '\n';
        } else {
            for (std::size_t i = 0; i < cells.size(); ++i) {
                if (i) os_ << ',';
                const Cell& c = cells[i];
                if (const auto* n = std::get_if<std::int64_t>(&c))
                    os_ << *n;
                else if (const auto* d = std::get_if<double>(&c))
                    os_ << fmt_double17(*d);
                else if (const auto* b = std::get_if<bool>(&c))
                    os_ << (*b ? "true" : "false");
                else if (const auto* s = std::get_if<std::string>(&c))
                    os_ << *s;
            }
            os_ << '\n';
        }
    }

private:
    std::ostream& os_;
    bool json_;
    std::vector<std::string> cols_;
};

struct CommonOpts {
    std::string out = "-";
    std::string format = "csv";
    std::string config;
    bool json() const { return format == "json-lines"; }
};

void add_common(CLI::App* sp, CommonOpts& c) {
    sp->add_option("--out", c.out, "output path; '-' writes to standard output");
    sp->add_option("--format", c.format, "output format")
        ->check(CLI::IsMember({"csv", "json-lines"}));
    sp->add_option("--config", c.config,
                   "flat key = value file mirroring the flags; command-line flags override");
}

std::string trim_copy(const std::string& s) {
    std::size_t lo = s.find_first_not_of(" \t\r");
    if (lo == std::string::npos) return {};
    std::size_t hi = s.find_last_not_of(" \t\r");
    return s.substr(lo, hi - lo + 1);
}

// reads a flat `key = value` file: blank lines and full-line # comments are
// skipped, values may be wrapped in single or double quotes, repeated keys
// accumulate (only meaningful for list-valued options)
std::vector<std::pair<std::string, std::string>> read_flat_config(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw std::invalid_argument("config: cannot open '" + path + "'");
    std::vector<std::pair<std::string, std::string>> items;
    std::string line;
    for (std::size_t lineno = 1; std::getline(f, line); ++lineno) {
        const std::string t = trim_copy(line);
        if (t.empty() || t.front() == '#') continue;
        const std::size_t eq = t.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument("config: expected 'key = value' at " + path + ":" +
                                        std::to_string(lineno));
        const std::string key = trim_copy(t.substr(0, eq));
        std::string value = trim_copy(t.substr(eq + 1));
        if (key.empty())
            throw std::invalid_argument("config: empty key at " + path + ":" +
                                        std::to_string(lineno));
        if (value.size() >= 2 && (value.front() == '"' || value.front() == '\'') &&
            value.back() == value.front())
            value = value.substr(1, value.size() - 2);
        items.emplace_back(key, value);
    }
    return items;
}

// applies config values onto the parsed subcommand: keys mirror the long flag
// names, options already set on the command line win, unknown keys are errors
void apply_config(CLI::App* sub, const std::string& path) {
    std::set<std::string> filled_here;
    for (const auto& [key, value] : read_flat_config(path)) {
        if (key == "config")
            throw std::invalid_argument("config: nested config files are not supported");
        CLI::Option* opt = key == "help" ? nullptr : sub->get_option_no_throw("--" + key);
        if (opt == nullptr)
            throw std::invalid_argument("config: unknown key '" + key + "' in " + path);
        if (!opt->empty() && filled_here.count(key) == 0) continue;
        try {
            if (opt->get_expected_min() == 0) {
                opt->add_result(opt->get_flag_value(key, value));
            } else {
                opt->add_result(value);
            }
            opt->run_callback();
        } catch (const CLI::Error& e) {
            throw std::invalid_argument("config: bad value for key '" + key + "': " + e.what());
        }
        filled_here.insert(key);
    }
}

template <class Fn>
int emit_to(const CommonOpts& c, std::ostream& fallback, Fn fn) {
    if (c.out == "-") return fn(fallback);
    std::ofstream f(c.out);
    if (!f) throw std::invalid_argument("cannot open output path '" + c.out + "'");
    const int rc = fn(f);
    f.flush();
    if (!f) throw std::runtime_error("failed writing output '" + c.out + "'");
    return rc;
}

// ---- subcommand option bundles -------------------------------------------

struct SpectrumOpts {
    CommonOpts common;
    std::string a = "1", b = "0+1*sqrt(2)";
    std::int64_t k = 100;
    bool with_index = false;
};

struct IndexOpts {
    CommonOpts common;
    std::string a = "1", b = "0+1*sqrt(2)";
    std::int64_t m1 = 0, m2 = 0;
};

struct VolumeCheckOpts {
    CommonOpts common;
    std::string a = "1", b = "0+1*sqrt(2)";
    std::vector<std::int64_t> ks;
    double tol = 2e-3;
};

struct MonotonicityOpts {
    CommonOpts common;
    std::string a = "1", b = "0+1*sqrt(2)";
    std::int64_t k = 100000;
};

struct BraidOpts {
    CommonOpts common;
    std::string file, file2, save;
    int a = 0, b = 0;
    bool have_ab = false;
    double radius = 0.5, phase = 0.0;
    int samples = 0;
    bool lemmas = false;
};

struct PerturbSweepOpts {
    CommonOpts common;
    std::int64_t a_max = 7, b_max = 5, m_max = 12;
};

struct DynamicsOpts {
    CommonOpts common;
    std::string body;
    std::string plane = "both";
    int base_resolution = 16;
};

struct RelationsOpts {
    CommonOpts common;
    std::string body;
    double tol = 1e-5;
};

// ---- handlers --------------------------------------------------------------

int run_spectrum(const SpectrumOpts& o, std::ostream& fallback) {
    const Scalar a = parse_scalar(o.a), b = parse_scalar(o.b);
    const TwoOrbitModel model = ellipsoid_model(a, b);
    const Scalar vol = a * b;
    const auto entries = enumerate_spectrum(model, o.k, o.with_index);
    return emit_to(o.common, fallback, [&](std::ostream& os) {
        RowWriter w(os, o.common.json(),
                    {"k", "m1", "m2", "action", "action_float", "index", "ratio_to_vol"});
        for (const auto& e : entries) {
            Cell idx, ratio;
            if (e.index) idx = *e.index;
            if (e.rank >= 1)
                ratio = ((e.action * e.action) / (Scalar(2 * e.rank) * vol)).to_double();
            w.row({e.rank, e.m1, e.m2, e.action.str(), e.action.to_double(), idx, ratio});
        }
        return 0;
    });
}

int run_index(const IndexOpts& o, std::ostream& fallback) {
    const TwoOrbitModel model = ellipsoid_model(parse_scalar(o.a), parse_scalar(o.b));
    if (o.m1 < 0 || o.m2 < 0 || !admissible(model, o.m1, o.m2))
        throw std::invalid_argument("inadmissible orbit multiplicities (" +
                                    std::to_string(o.m1) + ", " + std::to_string(o.m2) + ")");
    const std::int64_t idx = ech_index(model, o.m1, o.m2);
    return emit_to(o.common, fallback, [&](std::ostream& os) {
        if (o.common.json()) {
            nlohmann::ordered_json obj;
            obj["m1"] = o.m1;
            obj["m2"] = o.m2;
            obj["index"] = idx;
            os << obj.dump() << '\n';
        } else {
            os << idx << '\n';
        }
        return 0;
    });
}

int run_volume_check(const VolumeCheckOpts& o, std::ostream& fallback) {
    const Scalar a = parse_scalar(o.a), b = parse_scalar(o.b);
    const Scalar vol = a * b;
    std::vector<std::int64_t> ks = o.ks;
    if (ks.empty()) ks.push_back(1'000'000);
    const auto rows = volume_asymptotics(a, b, ks);
    return emit_to(o.common, fallback, [&](std::ostream& os) {
        RowWriter w(os, o.common.json(),
                    {"k", "action", "action_float", "ratio_to_vol", "rel_deviation", "tol",
                     "pass"});
        bool all = true;
        for (const auto& r : rows) {
            const double ratio = (r.ratio / vol).to_double();
            const double rel = (r.deviation / vol).abs().to_double();
            const bool pass = rel <= o.tol;
            all = all && pass;
            w.row({r.k, r.value.str(), r.value.to_double(), ratio, rel, o.tol, pass});
        }
        return all ? 0 : 1;
    });
}

int run_monotonicity(const MonotonicityOpts& o, std::ostream& fallback) {
    const TwoOrbitModel model = ellipsoid_model(parse_scalar(o.a), parse_scalar(o.b));
    const auto entries = enumerate_spectrum(model, o.k, false);
    const auto rep = monotonicity_check(entries);
    return emit_to(o.common, fallback, [&](std::ostream& os) {
        RowWriter w(os, o.common.json(),
                    {"ranks_checked", "strictly_increasing", "first_tie_rank", "tie_action"});
        Cell tie_rank, tie_action;
        if (!rep.strictly_increasing) {
            tie_rank = rep.first_tie_rank;
            tie_action = rep.tie_action.str();
        }
        w.row({o.k, rep.strictly_increasing, tie_rank, tie_action});
        return rep.strictly_increasing ? 0 : 1;
    });
}

int run_braid(const BraidOpts& o, std::ostream& fallback) {
    struct Line {
        std::string quantity;
        long long value = 0;
        Cell expected, pass;
    };
    std::vector<Line> lines;
    bool ok = true;
    if (!o.file.empty()) {
        const Braid x = load_braid(o.file);
        lines.push_back({"writhe", writhe(x), {}, {}});
        if (!o.file2.empty()) {
            const Braid y = load_braid(o.file2);
            lines.push_back({"linking", linking(x, y), {}, {}});
        }
    } else if (o.lemmas) {
        if (!o.have_ab)
            throw std::invalid_argument("braid: --lemmas needs --a and --b");
        const BraidLemmaReport rep = verify_braid_lemmas(o.a, o.b);
        lines.push_back({"lemma_writhe", rep.writhe_value, Cell(rep.writhe_expected),
                         Cell(rep.writhe_value == rep.writhe_expected)});
        lines.push_back({"lemma_core_linking", rep.core_linking, Cell(rep.core_expected),
                         Cell(rep.core_linking == rep.core_expected)});
        lines.push_back({"lemma_pair_linking", rep.pair_linking, Cell(rep.pair_expected),
                         Cell(rep.pair_linking == rep.pair_expected)});
        ok = rep.pass;
    } else if (o.have_ab) {
        const Braid t = torus_braid(o.a, o.b, o.radius, o.phase, o.samples);
        if (!o.save.empty()) save_braid(t, o.save);
        lines.push_back({"writhe", writhe(t), {}, {}});
    } else {
        throw std::invalid_argument(
            "braid: provide --file (optionally --file2) or --a/--b (optionally --lemmas)");
    }
    return emit_to(o.common, fallback, [&](std::ostream& os) {
        RowWriter w(os, o.common.json(), {"quantity", "value", "expected", "pass"});
        for (const auto& l : lines)
            w.row({l.quantity, (std::int64_t)l.value, l.expected, l.pass});
        return ok ? 0 : 1;
    });
}

int run_perturb_sweep(const PerturbSweepOpts& o, std::ostream& fallback) {
    const auto configs = enumerate_configs(o.a_max, o.b_max, o.m_max);
    return emit_to(o.common, fallback, [&](std::ostream& os) {
        RowWriter w(os, o.common.json(),
                    {"a", "b", "m", "m0", "parts", "writhe", "defect_min", "defect_max",
                     "bound", "pass"});
        bool all = true;
        for (const auto& cfg : configs) {
            const auto local = local_defect_bound(cfg);
            const auto range = cz_defect_range(cfg);
            const bool cancel = center_cancellation_residual(cfg) == Rational(0);
            const bool pass = local.pass && cancel;
            all = all && pass;
            std::string parts;
            for (std::size_t i = 0; i < cfg.parts.size(); ++i)
                parts += (i ? "+" : "") + std::to_string(cfg.parts[i]);
            w.row({cfg.a, cfg.b, cfg.m, cfg.m0, parts, limit_writhe(cfg), range.lo, range.hi,
                   local.bound, pass});
        }
        return all ? 0 : 1;
    });
}

int run_dynamics(const DynamicsOpts& o, std::ostream& fallback) {
    const StarBody body = parse_body(o.body);
    const VolumeResult vol = contact_volume(body, o.base_resolution);
    std::vector<int> planes;
    if (o.plane == "both")
        planes = {1, 2};
    else
        planes = {o.plane == "1" ? 1 : 2};
    std::vector<std::vector<Cell>> rows;
    for (int plane : planes) {
        const PeriodicOrbitResult orbit = find_planar_orbit(body, plane);
        const RotationResult rot = rotation_number(body, orbit);
        const std::string cls =
            rot.elliptic ? "elliptic" : (rot.degenerate ? "degenerate" : "hyperbolic");
        Cell theta, theta_error, eig1, eig2;
        if (cls == "hyperbolic") {
            eig1 = rot.eig1;
            eig2 = rot.eig2;
        } else {
            theta = rot.theta;
            theta_error = rot.error;
        }
        rows.push_back({(std::int64_t)plane, orbit.period, orbit.period_error, cls, theta,
                        theta_error, eig1, eig2, vol.value, vol.error});
    }
    return emit_to(o.common, fallback, [&](std::ostream& os) {
        RowWriter w(os, o.common.json(),
                    {"plane", "period", "period_error", "classification", "theta",
                     "theta_error", "eig1", "eig2", "volume", "volume_error"});
        for (const auto& r : rows) w.row(r);
        return 0;
    });
}

int run_relations(const RelationsOpts& o, std::ostream& fallback) {
    const RelationReport rep = verify_theorem_relations(parse_body(o.body), o.tol);
    return emit_to(o.common, fallback, [&](std::ostream& os) {
        RowWriter w(os, o.common.json(), {"id", "left", "right", "deviation", "tol", "pass"});
        for (const auto& ch : rep.checks)
            w.row({ch.id, ch.left.to_double(), ch.right.to_double(), ch.deviation(), o.tol,
                   ch.pass});
        return rep.all_pass() ? 0 : 1;
    });
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"two-orbit Reeb dynamics toolkit", "reeb"};
    app.require_subcommand(1);

    SpectrumOpts sp_o;
    auto* sp = app.add_subcommand("spectrum", "enumerate the smallest actions m1*T1 + m2*T2");
    sp->add_option("--a", sp_o.a, "first period (exact literal, e.g. 1 or 3/2)");
    sp->add_option("--b", sp_o.b, "second period (exact literal, e.g. 0+1*sqrt(2))");
    sp->add_option("--k", sp_o.k, "number of entries")->check(CLI::PositiveNumber);
    sp->add_flag("--with-index", sp_o.with_index, "also compute the total index per entry");
    add_common(sp, sp_o.common);

    IndexOpts ix_o;
    auto* ix = app.add_subcommand("index", "total index of the orbit set (m1, m2)");
    ix->add_option("--a", ix_o.a, "first period (exact literal)");
    ix->add_option("--b", ix_o.b, "second period (exact literal)");
    ix->add_option("--m1", ix_o.m1, "multiplicity of the first orbit (required)");
    ix->add_option("--m2", ix_o.m2, "multiplicity of the second orbit (required)");
    add_common(ix, ix_o.common);

    VolumeCheckOpts vc_o;
    auto* vc = app.add_subcommand("volume-check",
                                  "verify the volume asymptotics value^2/(2k) -> a*b");
    vc->add_option("--a", vc_o.a, "first period (exact literal)");
    vc->add_option("--b", vc_o.b, "second period (exact literal)");
    vc->add_option("--k", vc_o.ks, "rank(s) to test (default 1000000)")
        ->check(CLI::PositiveNumber);
    vc->add_option("--tol", vc_o.tol, "relative deviation tolerance")
        ->check(CLI::NonNegativeNumber);
    add_common(vc, vc_o.common);

    MonotonicityOpts mo_o;
    auto* mo = app.add_subcommand("monotonicity",
                                  "check strict monotonicity of the action spectrum");
    mo->add_option("--a", mo_o.a, "first period (exact literal)");
    mo->add_option("--b", mo_o.b, "second period (exact literal)");
    mo->add_option("--k", mo_o.k, "ranks to scan")->check(CLI::PositiveNumber);
    add_common(mo, mo_o.common);

    BraidOpts br_o;
    auto* br = app.add_subcommand("braid", "writhe/linking of sampled and torus braids");
    br->add_option("--file", br_o.file, "braid file to analyze");
    br->add_option("--file2", br_o.file2, "second braid file (adds a linking row)");
    br->add_option("--a", br_o.a, "torus braid winding");
    br->add_option("--b", br_o.b, "torus braid strand count");
    br->add_option("--radius", br_o.radius, "torus braid radius");
    br->add_option("--phase", br_o.phase, "torus braid phase");
    br->add_option("--samples", br_o.samples, "samples per period (0 = automatic)")
        ->check(CLI::NonNegativeNumber);
    br->add_flag("--lemmas", br_o.lemmas, "verify the torus braid writhe/linking values");
    br->add_option("--save", br_o.save, "write the generated torus braid to this path");
    add_common(br, br_o.common);

    PerturbSweepOpts ps_o;
    auto* ps = app.add_subcommand("perturb-sweep",
                                  "sweep perturbation configs against the index bounds");
    ps->add_option("--a-max", ps_o.a_max, "max |rotation numerator|")->check(CLI::PositiveNumber);
    ps->add_option("--b-max", ps_o.b_max, "max rotation denominator")->check(CLI::PositiveNumber);
    ps->add_option("--m-max", ps_o.m_max, "max total multiplicity")->check(CLI::PositiveNumber);
    add_common(ps, ps_o.common);

    DynamicsOpts dy_o;
    auto* dy = app.add_subcommand("dynamics", "periods, rotation numbers and volume of a body");
    dy->add_option("--body", dy_o.body, "body spec, e.g. ellipsoid:1,sqrt2 (required)");
    dy->add_option("--plane", dy_o.plane, "which planar orbit (1, 2, both)")
        ->check(CLI::IsMember({"1", "2", "both"}));
    dy->add_option("--base-resolution", dy_o.base_resolution, "coarsest quadrature grid")
        ->check(CLI::IsMember({16, 32}));
    add_common(dy, dy_o.common);

    RelationsOpts re_o;
    auto* re = app.add_subcommand("relations", "verify the volume/rotation identities");
    re->add_option("--body", re_o.body, "body spec, e.g. ellipsoid:1,sqrt2 (required)");
    re->add_option("--tol", re_o.tol, "deviation tolerance")->check(CLI::NonNegativeNumber);
    add_common(re, re_o.common);

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(std::move(reversed));
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e, out, err);
        return rc == 0 ? 0 : 2;
    }

    const std::pair<CLI::App*, const CommonOpts*> wired[] = {
        {sp, &sp_o.common}, {ix, &ix_o.common}, {vc, &vc_o.common}, {mo, &mo_o.common},
        {br, &br_o.common}, {ps, &ps_o.common}, {dy, &dy_o.common}, {re, &re_o.common}};

    try {
        for (const auto& [sub, common] : wired)
            if (sub->parsed() && !common->config.empty()) apply_config(sub, common->config);

        br_o.have_ab = br->count("--a") > 0 && br->count("--b") > 0;
        if (ix->parsed() && (ix->count("--m1") == 0 || ix->count("--m2") == 0))
            throw std::invalid_argument("index: --m1 and --m2 are required");
        if (dy->parsed() && dy_o.body.empty())
            throw std::invalid_argument("dynamics: --body is required");
        if (re->parsed() && re_o.body.empty())
            throw std::invalid_argument("relations: --body is required");

        if (sp->parsed()) return run_spectrum(sp_o, out);
        if (ix->parsed()) return run_index(ix_o, out);
        if (vc->parsed()) return run_volume_check(vc_o, out);
        if (mo->parsed()) return run_monotonicity(mo_o, out);
        if (br->parsed()) return run_braid(br_o, out);
        if (ps->parsed()) return run_perturb_sweep(ps_o, out);
        if (dy->parsed()) return run_dynamics(dy_o, out);
        if (re->parsed()) return run_relations(re_o, out);
    } catch (const std::invalid_argument& e) {
        err << "reeb: invalid input: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        err << "reeb: " << e.what() << '\n';
        return 1;
    }
    return 2;
}

int run(int argc, const char* const* argv) {
    std::vector<std::string> args;
    for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
    return run(args, std::cout, std::cerr);
}

} // namespace reeb::cli
