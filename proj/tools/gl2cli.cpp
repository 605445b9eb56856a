#include <gl2/report.hpp>

#include "CLI11.hpp"

#include <iostream>
#include <string>
#include <thread>
#include <vector>

int main(int argc, char** argv) {
    CLI::App app{"Exact experiments on the tempered spectrum of GL2 over Q_p"};
    app.require_subcommand(1);

    gl2::ExperimentConfig cfg;
    cfg.jobs = std::max(1u, std::thread::hardware_concurrency());
    std::string format = "table";
    std::vector<long> chi;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--format", format, "output format: table, csv, or json")
            ->check(CLI::IsMember({"table", "csv", "json"}));
        sub->add_option("--out", cfg.output_path, "report file path, written atomically");
        sub->add_option("--jobs", cfg.jobs, "worker count")->check(CLI::PositiveNumber);
    };
    auto add_primes = [&](CLI::App* sub, const char* what) {
        sub->add_option("--primes", cfg.primes, what)->delimiter(',');
    };

    CLI::App* orbits = app.add_subcommand("orbits", "census of tempered orbits");
    add_primes(orbits, "odd primes p");
    orbits->add_option("--r-max", cfg.r_max, "largest conductor, at most 4");
    add_common(orbits);

    CLI::App* mass = app.add_subcommand("mass-check", "fixed-central-character mass identity");
    add_primes(mass, "odd primes p");
    mass->add_option("--r-min", cfg.r_min, "smallest depth");
    mass->add_option("--r-max", cfg.r_max, "largest depth, at most 4");
    mass->add_option("--chi", chi, "central character: conductor (0..2) and index")
        ->expected(2);
    add_common(mass);

    CLI::App* tree = app.add_subcommand("tree-check", "central constant terms on the tree");
    add_primes(tree, "odd primes p");
    tree->add_option("--r-min", cfg.r_min, "smallest depth");
    tree->add_option("--r-max", cfg.r_max, "largest depth, at most 6");
    add_common(tree);

    CLI::App* ratios = app.add_subcommand("ratios", "degree gate and high-degree mass fraction");
    add_primes(ratios, "odd primes p, each exceeding 2A + 1");
    ratios->add_option("--A", cfg.A, "degree threshold");
    add_common(ratios);

    CLI::App* weil = app.add_subcommand("weil", "Weil q-integer enumeration");
    add_primes(weil, "primes q");
    weil->add_option("--weight", cfg.weight, "Weil weight");
    weil->add_option("--A", cfg.A, "largest minimal-polynomial degree, at most 4");
    add_common(weil);

    CLI::App* dims = app.add_subcommand("dims", "dimension main term vs the classical oracle");
    dims->add_option("--n-max", cfg.n_max, "largest level N");
    dims->add_option("--weight", cfg.weight, "even weight k");
    add_common(dims);

    CLI::App* fejer = app.add_subcommand("fejer", "exact Fejer identities and decay");
    fejer->add_option("--m-max", cfg.m_max, "largest window length, scanned in powers of two");
    add_common(fejer);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    cfg.command = app.get_subcommands().front()->get_name();
    if (chi.size() == 2) {
        cfg.chi_conductor = static_cast<int>(chi[0]);
        cfg.chi_index = chi[1];
    }
    if (!cfg.output_path.empty() && format == "table") {
        std::cerr << "error: choose --format csv or json when writing a report file\n";
        return 2;
    }
    cfg.format = format == "table" ? "csv" : format;

    try {
        gl2::ExperimentReport report = gl2::run(cfg);
        if (cfg.output_path.empty()) {
            if (format == "csv")
                std::cout << gl2::render_csv(report);
            else if (format == "json")
                std::cout << gl2::render_json(report);
            else
                std::cout << gl2::render_table(report);
        } else {
            std::cout << report.rows.size() << " rows (" << report.fail_count()
                      << " failing) written to " << cfg.output_path << "\n";
        }
        return report.all_pass() ? 0 : 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
