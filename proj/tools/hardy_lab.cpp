// hardy-lab: verification suites, instance generation, and decomposition of
// user-supplied subspaces, with JSON-lines reports.
//
// Exit codes: 0 success / all certificates passed, 1 at least one certificate
// failed, 2 usage or input error.

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <thread>

#include <CLI11.hpp>

#include "hardylab/engine.hpp"
#include "hardylab/generators.hpp"
#include "hardylab/io.hpp"
#include "hardylab/suites.hpp"

namespace {

using hardylab::io::json;

int thread_cap() {
    int n = static_cast<int>(std::thread::hardware_concurrency());
    if (n <= 0) n = 1;
    if (const char* env = std::getenv("HARDY_LAB_THREADS")) {
        const int cap = std::atoi(env);
        if (cap >= 1) n = std::min(n, cap);
    }
    return n;
}

std::ostream& open_sink(const std::string& path, std::ofstream& file) {
    if (path.empty()) return std::cout;
    file.open(path, std::ios::app);
    if (!file) throw hardylab::DomainError("cannot open output file: " + path);
    return file;
}

std::string csv_field(const json& v) {
    if (v.is_string()) return v.get<std::string>();
    return v.dump();
}

void write_csv(std::ostream& os, const std::vector<hardylab::suites::Certificate>& certs) {
    std::set<std::string> res_keys, tol_keys;
    for (const auto& c : certs) {
        for (auto it = c.residuals.begin(); it != c.residuals.end(); ++it)
            res_keys.insert(it.key());
        for (auto it = c.tolerances.begin(); it != c.tolerances.end(); ++it)
            tol_keys.insert(it.key());
    }
    os << "suite,index,statement,pass";
    for (const auto& k : res_keys) os << ",res." << k;
    for (const auto& k : tol_keys) os << ",tol." << k;
    os << "\n";
    for (const auto& c : certs) {
        os << c.suite << ',' << c.index << ',' << c.statement << ',' << (c.pass ? 1 : 0);
        for (const auto& k : res_keys)
            os << ',' << (c.residuals.contains(k) ? csv_field(c.residuals.at(k)) : "");
        for (const auto& k : tol_keys)
            os << ',' << (c.tolerances.contains(k) ? csv_field(c.tolerances.at(k)) : "");
        os << "\n";
    }
}

json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw hardylab::DomainError("cannot open input file: " + path);
    json j;
    in >> j;
    return j;
}

hardylab::BlaschkeSpec parse_theta(const std::string& text) {
    if (text == "1") return hardylab::BlaschkeSpec{};
    if (!text.empty() && text[0] == 'z') {
        hardylab::BlaschkeSpec spec;
        spec.monomial_order = text.size() == 1 ? 1 : std::stoi(text.substr(1));
        return spec;
    }
    return hardylab::io::blaschke_from_json(read_json_file(text));
}

hardylab::LaurentSymbol parse_symbol(const std::string& text) {
    if (text.rfind("zbar", 0) == 0) {
        const int k = text.size() == 4 ? 1 : std::stoi(text.substr(4));
        return hardylab::LaurentSymbol::backward(k);
    }
    if (!text.empty() && text[0] == 'z') {
        const int k = text.size() == 1 ? 1 : std::stoi(text.substr(1));
        return hardylab::LaurentSymbol::forward(k);
    }
    return hardylab::io::symbol_from_json(read_json_file(text));
}

struct VerifyOptions {
    std::string suite = "all";
    hardylab::suites::SuiteConfig config;
    std::string out;
    std::string format = "json";
};

int cmd_verify(const VerifyOptions& opt) {
    using namespace hardylab;
    set_default_rank_tol(opt.config.rank_tol);
    const auto start = std::chrono::steady_clock::now();
    std::vector<suites::Certificate> certs;
    if (opt.suite == "all") {
        certs = suites::run_all(opt.config);
    } else {
        certs = suites::run_suite(opt.suite, opt.config);
    }
    std::ofstream file;
    std::ostream& os = open_sink(opt.out, file);
    if (opt.format == "csv") {
        write_csv(os, certs);
    } else {
        for (const auto& c : certs) os << c.to_json().dump() << "\n";
    }
    int failures = 0;
    for (const auto& c : certs)
        if (!c.pass) ++failures;
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::cerr << "verify: " << certs.size() << " certificates, " << failures
              << " failures (" << secs << " s)\n";
    return failures == 0 ? 0 : 1;
}

struct GenOptions {
    std::string generator;
    int order = 128;
    std::uint64_t seed = 1;
    int n = 1;
    int dim = 3;
    std::string theta = "z2";
    std::string symbol = "zbar";
    std::string out;
};

int cmd_gen(const GenOptions& opt) {
    using namespace hardylab;
    json inst;
    inst["generator"] = opt.generator;
    inst["seed"] = opt.seed;
    json params{{"order", opt.order}};
    json certificates = json::array();

    if (opt.generator == "model_space") {
        const BlaschkeSpec spec = parse_theta(opt.theta);
        params["theta"] = io::blaschke_to_json(spec);
        const TruncatedSeries theta = blaschke_series(spec, opt.order);
        certificates.push_back(io::inner_certificate_to_json(
            is_inner(theta, 256, 1e-6, blaschke_tail_bound(spec, opt.order))));
        inst["subspace"] = io::subspace_to_json(model_space(spec, opt.order));
    } else if (opt.generator == "toeplitz") {
        const LaurentSymbol symbol = parse_symbol(opt.symbol);
        params["symbol"] = io::symbol_to_json(symbol);
        const ToeplitzKernelInstance tk = toeplitz_kernel(symbol, opt.order);
        certificates.push_back(io::near_invariance_to_json(tk.certificate));
        inst["subspace"] = io::subspace_to_json(tk.kernel);
    } else if (opt.generator == "inner_multiplier") {
        Rng rng = Rng::substream(opt.seed, "hitt-instance", 0);
        const double cap = modulus_cap(opt.order, 0.6);
        const BlaschkeSpec g_spec = sample_multiplier_spec(rng, 2, cap);
        const BlaschkeSpec theta_spec = sample_blaschke_spec(
            rng, 1, std::min(3, std::max(1, opt.order / 4)), cap, true);
        const InnerMultiplierInstance im =
            inner_multiplier_instance(g_spec, theta_spec, opt.order);
        params["g_spec"] = io::blaschke_to_json(g_spec);
        params["theta_spec"] = io::blaschke_to_json(theta_spec);
        certificates.push_back(io::defect_report_to_json(*im.defect_report));
        certificates.push_back(io::hitt_to_json(*im.hitt));
        inst["subspace"] = io::subspace_to_json(im.M);
    } else if (opt.generator == "defect_instance") {
        const DefectInstance di = sample_defect_instance(opt.seed, opt.n, opt.order);
        params["n"] = opt.n;
        certificates.push_back(io::defect_report_to_json(di.report));
        inst["subspace"] = io::subspace_to_json(di.M);
    } else if (opt.generator == "random") {
        params["dim"] = opt.dim;
        inst["subspace"] =
            io::subspace_to_json(random_subspace(opt.seed, opt.order, opt.dim));
    } else {
        throw DomainError("unknown generator: " + opt.generator);
    }

    inst["params"] = params;
    inst["certificates"] = certificates;
    std::ofstream file;
    std::ostream& os = open_sink(opt.out, file);
    os << inst.dump() << "\n";
    return 0;
}

struct DecomposeOptions {
    std::string input;
    double rank_tol = 1e-8;
    std::string out;
};

int cmd_decompose(const DecomposeOptions& opt) {
    using namespace hardylab;
    set_default_rank_tol(opt.rank_tol);
    json j;
    if (opt.input == "-") {
        std::cin >> j;
    } else {
        j = read_json_file(opt.input);
    }
    if (j.contains("subspace")) j = j.at("subspace");  // accept gen output directly
    const Subspace m = io::subspace_from_json(j);
    if (m.dim() == 0) throw DomainError("decompose: zero subspace");

    const DefectReport report = defect(m, opt.rank_tol);
    json out;
    out["defect_report"] = io::defect_report_to_json(report);
    if (report.defect == 0) {
        out["decomposition"] = io::hitt_to_json(hitt_decompose(m, opt.rank_tol));
        out["type"] = "hitt";
    } else {
        out["decomposition"] =
            io::defect_decomposition_to_json(defect_decompose(m, report, opt.rank_tol));
        out["type"] = "defect";
    }
    std::ofstream file;
    std::ostream& os = open_sink(opt.out, file);
    os << out.dump() << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"hardy-lab: a numerical laboratory for nearly invariant subspaces of the "
                 "backward shift on the real Hardy space"};
    app.require_subcommand(1);

    const auto positive_unit = CLI::Range(1e-15, 1.0 - 1e-15);

    VerifyOptions vopt;
    vopt.config.threads = thread_cap();
    std::vector<std::string> suite_choices = hardylab::suites::suite_names();
    suite_choices.insert(suite_choices.begin(), "all");
    auto* verify = app.add_subcommand("verify", "run verification suites");
    verify->add_option("--suite", vopt.suite, "suite name or 'all'")
        ->check(CLI::IsMember(suite_choices));
    verify->add_option("--order", vopt.config.order, "truncation order")
        ->check(CLI::Range(8, 1 << 16));
    verify->add_option("--trials", vopt.config.trials, "trial count (0 = suite default)");
    verify->add_option("--seed", vopt.config.seed, "master seed");
    verify->add_option("--tol", vopt.config.tol, "certificate tolerance override")
        ->check(positive_unit);
    verify->add_option("--rank-tol", vopt.config.rank_tol, "rank decision tolerance")
        ->check(positive_unit);
    verify->add_option("--out", vopt.out, "output path (default stdout)");
    verify->add_option("--format", vopt.format, "report format")
        ->check(CLI::IsMember({"json", "csv"}));

    GenOptions gopt;
    auto* gen = app.add_subcommand("gen", "generate a certified instance");
    gen->add_option("--generator", gopt.generator, "instance family")
        ->required()
        ->check(CLI::IsMember(
            {"model_space", "toeplitz", "inner_multiplier", "defect_instance", "random"}));
    gen->add_option("--order", gopt.order, "truncation order")->check(CLI::Range(8, 1 << 16));
    gen->add_option("--seed", gopt.seed, "instance seed");
    gen->add_option("--n", gopt.n, "defect bound for defect_instance")
        ->check(CLI::Range(1, 8));
    gen->add_option("--dim", gopt.dim, "dimension for random subspaces");
    gen->add_option("--theta", gopt.theta, "inner function: 1, z, z<k>, or a spec file");
    gen->add_option("--symbol", gopt.symbol, "symbol: zbar, zbar<k>, z<k>, or a file");
    gen->add_option("--out", gopt.out, "output path (default stdout)");

    DecomposeOptions dopt;
    auto* dec = app.add_subcommand("decompose", "decompose a subspace JSON");
    dec->add_option("--input", dopt.input, "subspace JSON path or '-' for stdin")->required();
    dec->add_option("--rank-tol", dopt.rank_tol, "rank decision tolerance")
        ->check(positive_unit);
    dec->add_option("--out", dopt.out, "output path (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (verify->parsed()) return cmd_verify(vopt);
        if (gen->parsed()) return cmd_gen(gopt);
        if (dec->parsed()) return cmd_decompose(dopt);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
