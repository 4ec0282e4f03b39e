#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"

#include "amfw/experiment.hpp"
#include "amfw/stability.hpp"

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitMemory = 3;
constexpr int kExitSolver = 4;

void apply_env_overrides(amfw::ExperimentConfig& cfg) {
    if (const char* t = std::getenv("AMFW_THREADS")) cfg.threads = std::max(1, std::atoi(t));
    if (const char* m = std::getenv("AMFW_MEMORY_CAP_GIB")) {
        const double cap = std::atof(m);
        if (cap > 0.0) cfg.memory_cap_gib = cap;
    }
}

int emit_report(const amfw::ErrorReport& rep, const std::string& output) {
    std::ostringstream csv;
    amfw::write_csv(csv, rep);
    if (!output.empty()) {
        std::ofstream f(output, std::ios::binary);
        if (!f) {
            std::cerr << "cannot open output file: " << output << "\n";
            return kExitConfig;
        }
        f << csv.str();
        std::cout << "wrote " << output << " (" << rep.rows.size() << " rows, "
                  << rep.elapsed_seconds << " s)\n";
    } else {
        std::cout << csv.str();
    }
    return 0;
}

int run_config(amfw::ExperimentConfig cfg, const std::string& output_override) {
    apply_env_overrides(cfg);
    if (!output_override.empty()) cfg.output = output_override;
    try {
        const amfw::ErrorReport rep = amfw::run_experiment(cfg);
        return emit_report(rep, cfg.output);
    } catch (const amfw::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const amfw::MemoryCapError& e) {
        std::cerr << "memory cap: " << e.what() << "\n";
        return kExitMemory;
    } catch (const std::exception& e) {
        std::cerr << "solver failure: " << e.what() << "\n";
        return kExitSolver;
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"AMF-W splitting solver experiment harness"};
    app.require_subcommand(1);

    std::string config_path, output, preset_name, tables_arg, profile = "default";
    std::string method = "amfw-hv";
    int stab_d = 3, stab_samples = 10000;
    double stab_c = 1.0;
    std::uint64_t stab_seed = 1;
    bool dump = false;

    CLI::App* run = app.add_subcommand("run", "run an experiment from a JSON config file");
    run->add_option("config", config_path, "path to the JSON config")->required();
    run->add_option("-o,--output", output, "override the CSV output path");

    CLI::App* preset = app.add_subcommand("preset", "run a named preset");
    preset->add_option("name", preset_name, "preset name (see 'list')")->required();
    preset->add_option("-o,--output", output, "CSV output path");
    preset->add_flag("--dump-config", dump, "print the preset's config as JSON and exit");

    app.add_subcommand("list", "list available presets");

    CLI::App* verify = app.add_subcommand("verify", "re-run presets and compare with expected values");
    verify->add_option("--tables", tables_arg, "comma-separated table names (default: all)");
    verify->add_option("--tolerance-profile", profile, "default | strict | zero");

    CLI::App* stab = app.add_subcommand("stability", "sample the stability function bound");
    stab->add_option("method", method, "amfw-hv | amfw-38")->required();
    stab->add_option("--d", stab_d, "number of split directions");
    stab->add_option("--samples", stab_samples, "sample count");
    stab->add_option("--c-trial", stab_c, "trial constant for the upper bound");
    stab->add_option("--seed", stab_seed, "random seed");
    stab->add_option("-o,--output", output, "CSV output path (default: stdout)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (run->parsed()) {
            std::ifstream f(config_path);
            if (!f) {
                std::cerr << "cannot read config file: " << config_path << "\n";
                return kExitConfig;
            }
            std::stringstream ss;
            ss << f.rdbuf();
            return run_config(amfw::parse_config(ss.str()), output);
        }
        if (preset->parsed()) {
            const amfw::Preset& p = amfw::find_preset(preset_name);
            if (dump) {
                std::cout << amfw::serialize_config(p.config) << "\n";
                return 0;
            }
            return run_config(p.config, output);
        }
        if (app.get_subcommand("list")->parsed()) {
            for (const amfw::Preset& p : amfw::preset_registry()) {
                const amfw::ExperimentConfig& c = p.config;
                std::cout << p.name << ": " << c.problem << " method=" << c.method
                          << " correction=" << c.correction
                          << " estimator=" << amfw::estimator_label(c.estimator)
                          << " dt=" << amfw::dt_rule_label(c.dt_rule) << "\n  " << p.description
                          << "\n";
            }
            return 0;
        }
        if (verify->parsed()) {
            std::vector<std::string> names;
            if (tables_arg.empty()) {
                names = amfw::verifiable_tables();
            } else {
                std::stringstream ss(tables_arg);
                std::string item;
                while (std::getline(ss, item, ','))
                    if (!item.empty()) names.push_back(item);
            }
            const amfw::VerifySummary sum = amfw::verify_tables(names, profile, std::cout);
            return sum.ok() ? 0 : 1;
        }
        if (stab->parsed()) {
            const amfw::AMFWTableau tb = amfw::find_tableau(method);
            std::vector<amfw::StabilitySample> samples;
            const amfw::StabilityReport rep =
                amfw::check_theorem1_condition(tb, stab_d, stab_samples, stab_c, stab_seed, &samples);
            std::ostringstream csv;
            csv << "# method: " << method << " d: " << stab_d << " c_trial: " << stab_c << "\n";
            csv << "# min_R_plus_1: " << rep.min_r_plus_1
                << " max_upper_violation: " << rep.max_upper_violation
                << " satisfied_fraction: " << rep.satisfied_fraction << " c_limit: " << rep.c_limit
                << "\n";
            csv << "sample,R,bound_gap\n";
            for (std::size_t i = 0; i < samples.size(); ++i)
                csv << i << ',' << samples[i].R << ',' << samples[i].upper_gap << "\n";
            if (!output.empty()) {
                std::ofstream f(output, std::ios::binary);
                f << csv.str();
                std::cout << "wrote " << output << "\n";
            } else {
                std::cout << csv.str();
            }
            return (rep.min_r_plus_1 >= 0.0 && rep.max_upper_violation <= 1e-12) ? 0 : 1;
        }
    } catch (const amfw::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitSolver;
    }
    return 0;
}
