// Process-level contract checks for the hardy-lab binary: exit codes, report
// formats, and determinism. Invoked as: cli_tests <path-to-binary>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <json.hpp>

namespace {

int failures = 0;

void check(bool ok, const std::string& what) {
    if (ok) {
        std::cout << "  ok: " << what << "\n";
    } else {
        ++failures;
        std::cout << "  FAILED: " << what << "\n";
    }
}

int run(const std::string& cmd) {
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace

int main(int argc, char** argv) {
    if (argc < 2) {
        std::cerr << "usage: cli_tests <hardy-lab binary>\n";
        return 2;
    }
    const std::string bin = argv[1];
    const std::string dir = "/tmp/hardy_lab_cli_test";
    run("rm -rf " + dir + " && mkdir -p " + dir);

    check(run(bin + " verify --suite lemma1 --order 32 --trials 5 --seed 7 --out " + dir +
              "/l1.jsonl 2>/dev/null") == 0,
          "verify exits 0 when every certificate passes");
    {
        std::istringstream lines(slurp(dir + "/l1.jsonl"));
        std::string line;
        int count = 0;
        bool parse_ok = true, all_pass = true;
        while (std::getline(lines, line)) {
            ++count;
            auto j = nlohmann::json::parse(line, nullptr, false);
            if (j.is_discarded()) {
                parse_ok = false;
                continue;
            }
            all_pass = all_pass && j.at("pass").get<bool>();
        }
        check(count == 5, "one JSON line per certificate");
        check(parse_ok && all_pass, "JSON lines parse and pass");
    }

    check(run(bin + " verify --suite nosuch 2>/dev/null") == 2,
          "unknown suite is rejected at parse time with exit 2");
    check(run(bin + " verify --order 4 2>/dev/null") == 2, "order below 8 is rejected");
    check(run(bin + " decompose --input " + dir + "/missing.json 2>/dev/null") == 2,
          "missing decompose input exits 2");
    check(run(bin + " gen --generator nosuch 2>/dev/null") == 2, "unknown generator exits 2");

    // determinism: identical configs give byte-identical reports
    check(run(bin + " verify --suite lemma2 --order 32 --trials 4 --out " + dir +
              "/a.jsonl 2>/dev/null") == 0,
          "lemma2 run for determinism check");
    run(bin + " verify --suite lemma2 --order 32 --trials 4 --out " + dir +
        "/b.jsonl 2>/dev/null");
    check(slurp(dir + "/a.jsonl") == slurp(dir + "/b.jsonl"),
          "re-running an identical config reproduces identical bytes");

    // thread cap must not change the bytes
    run("HARDY_LAB_THREADS=3 " + bin + " verify --suite lemma2 --order 32 --trials 4 --out " +
        dir + "/c.jsonl 2>/dev/null");
    check(slurp(dir + "/a.jsonl") == slurp(dir + "/c.jsonl"),
          "HARDY_LAB_THREADS does not affect report bytes");

    // generated instances are bit-identical across runs
    run(bin + " gen --generator inner_multiplier --seed 5 --order 48 --out " + dir +
        "/g1.json 2>/dev/null");
    run(bin + " gen --generator inner_multiplier --seed 5 --order 48 --out " + dir +
        "/g2.json 2>/dev/null");
    check(slurp(dir + "/g1.json") == slurp(dir + "/g2.json"),
          "gen output is bit-identical for a fixed seed");

    // csv export
    check(run(bin + " verify --suite lemma1 --order 32 --trials 3 --format csv --out " + dir +
              "/l1.csv 2>/dev/null") == 0,
          "csv export runs");
    check(slurp(dir + "/l1.csv").rfind("suite,index,statement,pass", 0) == 0,
          "csv header starts with the stable columns");

    // gen → decompose round trip
    check(run(bin + " gen --generator model_space --theta z2 --order 32 --out " + dir +
              "/ms.json 2>/dev/null") == 0,
          "gen model_space z2");
    {
        auto j = nlohmann::json::parse(slurp(dir + "/ms.json"));
        check(j.at("subspace").at("basis").size() == 2, "model space of z^2 has dimension 2");
    }
    check(run(bin + " gen --generator toeplitz --symbol zbar --order 32 --out " + dir +
              "/tk.json 2>/dev/null") == 0,
          "gen toeplitz zbar");
    {
        auto j = nlohmann::json::parse(slurp(dir + "/tk.json"));
        check(j.at("subspace").at("basis").size() == 1, "zbar kernel is one-dimensional");
    }
    check(run(bin + " gen --generator defect_instance --seed 42 --n 2 --order 128 --out " +
              dir + "/di.json 2>/dev/null") == 0,
          "gen defect_instance seed 42");
    check(run(bin + " decompose --input " + dir + "/di.json --out " + dir +
              "/dd.json 2>/dev/null") == 0,
          "decompose the generated instance");
    {
        auto j = nlohmann::json::parse(slurp(dir + "/dd.json"));
        check(j.at("type") == "defect", "defect route chosen");
        check(j.at("decomposition").at("rep_error").get<double>() <= 1e-6,
              "decomposition representation error within tolerance");
        check(j.at("decomposition").at("norm_identity_error").get<double>() <= 1e-6,
              "norm identity within tolerance");
    }

    // a raw subspace literal: span{z} decomposes as the vanishing case with e = 1
    {
        nlohmann::json sub;
        sub["field"] = "real";
        sub["order"] = 16;
        std::vector<double> col(16, 0.0);
        col[1] = 1.0;
        sub["basis"] = nlohmann::json::array({col});
        std::ofstream(dir + "/spanz.json") << sub.dump();
        check(run(bin + " decompose --input " + dir + "/spanz.json --out " + dir +
                  "/spanz_out.json 2>/dev/null") == 0,
              "decompose a raw subspace literal");
        auto j = nlohmann::json::parse(slurp(dir + "/spanz_out.json"));
        check(j.at("type") == "defect" &&
                  j.at("defect_report").at("defect").get<int>() == 1,
              "span{z} has defect 1");
        check(j.at("decomposition").at("case") == "ii", "span{z} is the vanishing case");
        const auto e0 = j.at("decomposition").at("defect_basis").at("basis").at(0).at(0);
        check(std::abs(e0.get<double>() - 1.0) <= 1e-12, "defect direction is the constant 1");
    }

    // decompose routes defect-0 inputs through the multiplier decomposition
    check(run(bin + " gen --generator model_space --theta z3 --order 32 --out " + dir +
              "/m3.json 2>/dev/null") == 0,
          "gen model_space z3");
    check(run(bin + " decompose --input " + dir + "/m3.json --out " + dir +
              "/h3.json 2>/dev/null") == 0,
          "decompose model space");
    {
        auto j = nlohmann::json::parse(slurp(dir + "/h3.json"));
        check(j.at("type") == "hitt", "hitt route chosen for defect zero");
        check(j.at("decomposition").at("n_defect").get<int>() == 0, "N is invariant");
    }

    std::cout << (failures == 0 ? "cli contract: all checks passed\n"
                                : "cli contract: FAILURES\n");
    return failures == 0 ? 0 : 1;
}
