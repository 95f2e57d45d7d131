#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "hypcc/harness.hpp"

int main(int argc, char** argv) {
    CLI::App app{"Boundary-at-infinity metric verification suites"};

    std::string model = "complex-h2";
    std::string suite = "all";
    std::string format = "csv";
    std::string output;
    int samples = 100;
    std::uint64_t seed = 1;
    std::vector<std::string> tolerance_args;

    app.add_option("--model", model, "real-h2 | real-h3 | complex-h2");
    app.add_option("--suite", suite, "thm1 | thm2 | lemmas | axioms | all");
    app.add_option("--samples", samples, "samples per suite");
    app.add_option("--seed", seed, "sampling seed (determines the report bytes)");
    app.add_option("--output", output, "report path (default: stdout)");
    app.add_option("--format", format, "csv | json");
    app.add_option("--tolerance", tolerance_args, "name=value override, repeatable");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        hypcc::verify::VerifyConfig config;
        config.model = hypcc::verify::parse_model(model);
        config.suite = suite;
        config.samples = samples;
        config.seed = seed;
        config.output = output;
        config.format = hypcc::verify::parse_format(format);
        for (const auto& arg : tolerance_args) {
            const auto eq = arg.find('=');
            if (eq == std::string::npos)
                throw hypcc::ConfigError("tolerance must be name=value: " + arg);
            std::size_t used = 0;
            const double value = std::stod(arg.substr(eq + 1), &used);
            config.tolerances.emplace_back(arg.substr(0, eq), value);
        }

        const auto result = hypcc::verify::run_suite(config);

        if (config.output.empty()) {
            hypcc::verify::write_report(result, config, std::cout);
        } else {
            std::ofstream os(config.output, std::ios::binary);
            if (!os) throw hypcc::ConfigError("cannot open output path: " + config.output);
            hypcc::verify::write_report(result, config, os);
        }

        for (const auto& s : result.summaries)
            std::cerr << s.suite << ": " << s.passed << "/" << s.total << " pass, "
                      << s.hard_failures << " hard, " << s.soft_failures << " soft\n";
        return result.hard_failure() ? 1 : 0;
    } catch (const hypcc::ConfigError& e) {
        std::cerr << "configuration error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "configuration error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
