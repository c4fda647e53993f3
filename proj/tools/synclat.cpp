// synclat: command-line front end.
//
// Exit codes: 0 ok, 2 input error, 3 cross-check or verification failure.

#include <synclat/synclat.hpp>

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>
#include <string>

namespace {

constexpr int kOk = 0;
constexpr int kInputError = 2;
constexpr int kCheckFailure = 3;

struct Options {
    std::string path;
    unsigned threads = 1;
    std::size_t max_bell = 12;
    bool allow_large = false;
};

std::string read_input(const std::string& path) {
    if (path == "-") return {std::istreambuf_iterator<char>(std::cin), {}};
    std::ifstream in(path);
    if (!in) throw synclat::InputError("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

synclat::Network load(const Options& opt) {
    auto net = synclat::parse_network(read_input(opt.path));
    if (net.cells() > opt.max_bell && !opt.allow_large)
        throw synclat::InputError("network has " + std::to_string(net.cells()) + " cells; partition enumeration beyond " +
                                  std::to_string(opt.max_bell) + " cells is refused without --allow-large");
    return net;
}

void print_json(const nlohmann::json& j) { std::cout << j.dump(2) << "\n"; }

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Synchrony lattices of regular coupled cell networks"};
    app.require_subcommand(1);
    Options opt;
    app.add_option("--threads", opt.threads, "worker threads for partition filtering")->check(CLI::Range(1u, 256u));
    app.add_option("--max-bell", opt.max_bell, "largest cell count accepted without --allow-large");
    app.add_flag("--allow-large", opt.allow_large, "lift the --max-bell guard");

    auto* analyze = app.add_subcommand("analyze", "full JSON report");
    analyze->add_option("network", opt.path, "network JSON file, '-' for stdin")->required();

    auto* lattice = app.add_subcommand("lattice", "synchrony lattice as DOT or JSON");
    lattice->add_option("network", opt.path)->required();
    bool dot = false, json = false;
    auto* dot_flag = lattice->add_flag("--dot", dot, "DOT output (default)");
    lattice->add_flag("--json", json, "JSON output")->excludes(dot_flag);

    auto* specials = app.add_subcommand("specials", "spectral components and special Jordan subspaces");
    specials->add_option("network", opt.path)->required();

    auto* quotient = app.add_subcommand("quotient", "quotient network by a balanced partition");
    quotient->add_option("network", opt.path)->required();
    std::string partition_text;
    quotient->add_option("--partition", partition_text, "partition such as \"{1,2,3}{4,5}\"")->required();

    auto* verify = app.add_subcommand("verify", "run all consistency checks");
    verify->add_option("network", opt.path)->required();
    std::uint64_t seed = 1;
    std::size_t samples = 20;
    verify->add_option("--seed", seed, "seed for sampled admissible fields");
    verify->add_option("--samples", samples, "random admissible fields per balanced partition");

    auto* random = app.add_subcommand("random", "random regular network");
    std::size_t cells = 0;
    std::int64_t valency = 0;
    std::uint64_t random_seed = 0;
    random->add_option("--cells", cells)->required();
    random->add_option("--valency", valency)->required();
    random->add_option("--seed", random_seed)->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? kOk : kInputError;
    }

    try {
        if (random->parsed()) {
            print_json(synclat::network_to_json(synclat::random_regular(cells, valency, random_seed)));
            return kOk;
        }
        auto net = load(opt);
        if (quotient->parsed()) {
            synclat::Partition pi;
            try {
                pi = synclat::Partition::parse(partition_text, net.cells());
            } catch (const std::invalid_argument& e) {
                throw synclat::InputError(e.what());
            }
            print_json(synclat::network_to_json(synclat::quotient(net, pi)));
            return kOk;
        }
        if (specials->parsed()) {
            auto comps = synclat::spectral_components(net);
            auto sp = synclat::special_jordans(comps);
            print_json({{"components", synclat::components_json(comps)},
                        {"special_jordans", synclat::special_list_json(sp)},
                        {"special_jordan_count", synclat::special_count(sp)}});
            return kOk;
        }
        auto an = synclat::analyze(net, opt.threads);
        if (lattice->parsed()) {
            if (json)
                print_json(synclat::lattice_json(an.lattice));
            else
                std::cout << synclat::lattice_dot(an.lattice);
            return kOk;
        }
        if (analyze->parsed()) {
            auto checks = synclat::run_checks(an);
            print_json(synclat::analysis_report(an, checks));
            for (const auto& c : checks)
                if (!c.passed) return kCheckFailure;
            return kOk;
        }
        if (verify->parsed()) {
            auto checks = synclat::run_checks(an, seed, samples);
            bool ok = true;
            for (const auto& c : checks) {
                std::cout << (c.passed ? "PASS " : "FAIL ") << c.name << "  " << c.detail << "\n";
                ok = ok && c.passed;
            }
            return ok ? kOk : kCheckFailure;
        }
    } catch (const synclat::InputError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kInputError;
    } catch (const synclat::CrossCheckFailure& e) {
        std::cerr << "cross-check failure: " << e.what() << "\n";
        print_json(e.bundle());
        return kCheckFailure;
    }
    return kOk;
}
