#include <CLI11.hpp>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <numbers>
#include <random>
#include <set>
#include <sstream>
#include <string>

#include "lorval/body_io.hpp"
#include "lorval/bodies.hpp"
#include "lorval/errors.hpp"
#include "lorval/experiments.hpp"
#include "lorval/mero.hpp"
#include "lorval/valuations.hpp"
#include "lorval/zonal.hpp"

using namespace lorval;

namespace {

constexpr double kPi = std::numbers::pi;

Json cjson(cplx z) { return Json::array({z.real(), z.imag()}); }

Json laurent_json(const LaurentValue& v) {
    Json j;
    j["lambda"] = cjson(v.at);
    j["pole_order"] = v.pole_order;
    j["residue"] = cjson(v.residue);
    j["finite_part"] = cjson(v.finite_part);
    j["value"] = cjson(v.reported());
    j["value_is_residue"] = v.residue_is_value;
    return j;
}

cplx parse_complex(const std::string& s) {
    auto comma = s.find(',');
    try {
        if (comma == std::string::npos) return {std::stod(s), 0.0};
        return {std::stod(s.substr(0, comma)), std::stod(s.substr(comma + 1))};
    } catch (const std::logic_error&) {
        throw InputError("cannot parse complex number '" + s + "'");
    }
}

// phi from {"fourier": [[m, a_m, b_m], ...]}: sum a_m cos(m x) + b_m sin(m x)
CircleFunction load_circle_function(const std::string& path) {
    Json j = read_json_file(path);
    if (!j.contains("fourier") || !j["fourier"].is_array()) throw InputError("phi file needs a \"fourier\" array");
    std::vector<std::array<double, 3>> terms;
    for (const auto& t : j["fourier"]) {
        if (!t.is_array() || t.size() != 3) throw InputError("fourier terms are [m, a, b]");
        terms.push_back({t[0].get<double>(), t[1].get<double>(), t[2].get<double>()});
    }
    CircleFunction phi;
    phi.f = [terms](const Jet& x) {
        Jet s = Jet::constant(0.0, x.order());
        for (const auto& [m, a, b] : terms) s += a * cos(m * x) + b * sin(m * x);
        return s;
    };
    return phi;
}

class Output {
public:
    explicit Output(const std::string& path) {
        if (!path.empty() && path != "-") {
            file_.open(path);
            if (!file_) throw InputError("cannot open output file " + path);
        }
    }
    std::ostream& os() { return file_.is_open() ? file_ : std::cout; }

private:
    std::ofstream file_;
};

void write_csv_rows(std::ostream& os, const std::vector<double>& x, const std::vector<double>& y, const char* hx,
                    const char* hy) {
    os << hx << "," << hy << "\n";
    char buf[96];
    for (size_t i = 0; i < x.size(); ++i) {
        std::snprintf(buf, sizeof buf, "%.12e,%.12e\n", x[i], y[i]);
        os << buf;
    }
}

std::vector<double> alpha_grid(int N, double lo, double hi) {
    if (N < 2) throw InputError("grid needs at least 2 points");
    std::vector<double> a(N);
    for (int i = 0; i < N; ++i) a[i] = lo + (hi - lo) * i / (N - 1);
    return a;
}

const std::set<std::string> kSubcommands = {"valuate", "hk", "mero", "cosine", "sweep", "fit", "cone-area"};

int usage(const CLI::App& app, int code) {
    std::cerr << app.help();
    return code;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"lorval: Lorentz-invariant valuations toolkit"};
    app.require_subcommand(1);
    std::string output;
    std::uint64_t seed = 20240531;
    app.add_option("-o,--output", output, "output file (default stdout)");
    app.add_option("--seed", seed, "seed for Monte-Carlo and random inputs");

    Json config;

    // valuate
    auto* val = app.add_subcommand("valuate", "evaluate f_T or f_S on a body");
    std::string body_path, which = "T", dump_path;
    val->add_option("--body", body_path, "body JSON file")->required();
    val->add_option("--which", which, "T or S");
    val->add_option("--dump-body", dump_path, "write the ingested body as JSON to this file");

    // hk
    auto* hk = app.add_subcommand("hk", "k-support function of the stretched double cone");
    int hk_k = 1, hk_grid = 33;
    double hk_eps = 0.05;
    hk->add_option("--k", hk_k)->required();
    hk->add_option("--eps", hk_eps)->required();
    hk->add_option("--grid", hk_grid);

    // mero
    auto* mero = app.add_subcommand("mero", "meromorphic engine");
    mero->require_subcommand(1);
    auto* ik = mero->add_subcommand("ik", "I_k(lambda)");
    int ik_k = 0;
    std::string lambda_text = "0";
    ik->add_option("--k", ik_k)->required();
    ik->add_option("--lambda", lambda_text, "RE[,IM]")->required();
    auto* fl = mero->add_subcommand("flambda", "f_lambda^parity(phi)");
    std::string fl_parity = "sym", phi_path;
    fl->add_option("--parity", fl_parity, "sym|antisym|S|T")->required();
    fl->add_option("--lambda", lambda_text, "RE[,IM]")->required();
    fl->add_option("--phi", phi_path, "JSON with a fourier array")->required();

    // cosine
    auto* cos_cmd = app.add_subcommand("cosine", "zonal cosine transform of a measure");
    int cos_k = 1, cos_grid = 33;
    std::string measure_path;
    cos_cmd->add_option("--k", cos_k)->required();
    cos_cmd->add_option("--measure", measure_path)->required();
    cos_cmd->add_option("--grid", cos_grid);

    // sweep
    auto* sw = app.add_subcommand("sweep", "stretched-cone divergence sweep");
    SweepConfig scfg;
    std::string sw_parity = "S", sw_side = "both";
    sw->add_option("--n", scfg.n)->required();
    sw->add_option("--parity", sw_parity, "sym|antisym|S|T")->required();
    sw->add_option("--eps-min", scfg.eps_min);
    sw->add_option("--eps-max", scfg.eps_max);
    sw->add_option("--points", scfg.points);
    sw->add_option("--side", sw_side, "plus|minus|both");

    // fit
    auto* fit = app.add_subcommand("fit", "classify a sweep");
    std::string fit_input;
    fit->add_option("--input", fit_input)->required();

    // cone-area
    auto* ca = app.add_subcommand("cone-area", "check the cone-area identity on random geodesic polygons");
    std::string ca_sheet = "both";
    int ca_count = 10, ca_vertices = 5;
    ca->add_option("--sheet", ca_sheet, "plus|minus|both");
    ca->add_option("--count", ca_count);
    ca->add_option("--vertices", ca_vertices);

    // unknown subcommands get the usage text and their own exit code
    if (argc >= 2) {
        std::string first = argv[1];
        bool option = !first.empty() && first[0] == '-';
        if (!option && !kSubcommands.count(first)) {
            std::cerr << "unknown subcommand '" << first << "'\n";
            return usage(app, 64);
        }
    }
    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        std::vector<std::string> args(argv + 1, argv + argc);
        config["argv"] = args;
        config["seed"] = seed;
        if (const char* t = std::getenv("LORVAL_THREADS")) config["LORVAL_THREADS"] = t;
        Output out(output);
        std::ostream& os = out.os();

        if (val->parsed()) {
            ConvexBody K = load_body(body_path);
            ValuationKind kind = parse_kind(which);
            config["subcommand"] = "valuate";
            config["body"] = body_to_json(K);
            config["which"] = which;
            os << "# " << config.dump() << "\n";
            if (!dump_path.empty()) {
                std::ofstream d(dump_path);
                if (!d) throw InputError("cannot open " + dump_path);
                d << body_to_json(K).dump(2) << "\n";
            }
            Json r;
            r["value"] = evaluate(InvariantValuation{kind, ambient_dim(K)}, K);
            os << r.dump() << "\n";
        } else if (hk->parsed()) {
            config["subcommand"] = "hk";
            config["k"] = hk_k;
            config["eps"] = hk_eps;
            config["grid"] = hk_grid;
            os << "# " << config.dump() << "\n";
            auto a = alpha_grid(hk_grid, 0.0, kPi / 2);
            std::vector<double> v;
            for (double x : a) v.push_back(double_cone_hk(hk_k, hk_eps, x));
            write_csv_rows(os, a, v, "alpha", "value");
        } else if (ik->parsed()) {
            cplx lam = parse_complex(lambda_text);
            config["subcommand"] = "mero ik";
            config["k"] = ik_k;
            config["lambda"] = cjson(lam);
            os << "# " << config.dump() << "\n";
            os << laurent_json(moment_I(ik_k, lam)).dump() << "\n";
        } else if (fl->parsed()) {
            cplx lam = parse_complex(lambda_text);
            Parity p = parse_parity(fl_parity);
            CircleFunction phi = load_circle_function(phi_path);
            config["subcommand"] = "mero flambda";
            config["parity"] = parity_name(p);
            config["lambda"] = cjson(lam);
            config["phi"] = read_json_file(phi_path);
            os << "# " << config.dump() << "\n";
            os << laurent_json(f_lambda(p, phi, lam)).dump() << "\n";
        } else if (cos_cmd->parsed()) {
            ZonalMeasure m = load_measure(measure_path);
            config["subcommand"] = "cosine";
            config["k"] = cos_k;
            config["grid"] = cos_grid;
            config["measure"] = read_json_file(measure_path);
            os << "# " << config.dump() << "\n";
            auto a = alpha_grid(cos_grid, 0.0, kPi / 2);
            write_csv_rows(os, a, cosine_transform_grid(cos_k, m, a), "alpha", "value");
        } else if (sw->parsed()) {
            scfg.parity = parse_parity(sw_parity);
            if (sw_side == "plus") scfg.minus = false;
            else if (sw_side == "minus") scfg.plus = false;
            else if (sw_side != "both") throw InputError("side must be plus, minus or both");
            auto recs = sweep(scfg);
            write_sweep_csv(os, scfg, recs);
        } else if (fit->parsed()) {
            std::ifstream in(fit_input);
            if (!in) throw InputError("cannot open " + fit_input);
            auto recs = read_sweep_csv(in);
            config["subcommand"] = "fit";
            config["input"] = fit_input;
            os << "# " << config.dump() << "\n";
            os << verdict_json(fit_divergence(recs)).dump() << "\n";
        } else if (ca->parsed()) {
            std::vector<Sheet> sheets;
            if (ca_sheet == "plus" || ca_sheet == "both") sheets.push_back(Sheet::HPlus);
            if (ca_sheet == "minus" || ca_sheet == "both") sheets.push_back(Sheet::HMinus);
            if (sheets.empty()) throw InputError("sheet must be plus, minus or both");
            config["subcommand"] = "cone-area";
            config["sheet"] = ca_sheet;
            config["count"] = ca_count;
            config["vertices"] = ca_vertices;
            os << "# " << config.dump() << "\n";
            std::mt19937_64 rng(seed);
            Json rows = Json::array();
            for (Sheet s : sheets)
                for (int i = 0; i < ca_count; ++i) {
                    ConeAreaResult r = cone_area_identity(random_patch(s, ca_vertices, rng));
                    rows.push_back({{"sheet", s == Sheet::HPlus ? "plus" : "minus"},
                                    {"lhs", r.lhs},
                                    {"lhs_closed", r.lhs_closed},
                                    {"rhs", r.rhs},
                                    {"rel_error", std::abs(r.lhs - r.rhs) / std::max(1e-300, std::abs(r.rhs))}});
                }
            os << rows.dump() << "\n";
        }
        return 0;
    } catch (const InputError& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return 2;
    } catch (const PreconditionError& e) {
        std::cerr << "precondition failed: " << e.what() << "\n";
        return 2;
    } catch (const NumericalError& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return 3;
    } catch (const nlohmann::json::exception& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return 3;
    }
}
