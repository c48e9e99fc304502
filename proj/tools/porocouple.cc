#include <cstdlib>
#include <filesystem>
#include <iostream>

#include <CLI11.hpp>

#include <porocouple/config.hh>
#include <porocouple/scenario.hh>
#include <porocouple/verify.hh>

using namespace Porocouple;

int main(int argc, char** argv)
{
    CLI::App app{"Coupled free flow and porous-medium flow simulator"};
    app.require_subcommand(1);

    std::string runConfig;
    bool verbose = false;
    auto* run = app.add_subcommand("run", "run a scenario");
    run->add_option("config", runConfig, "scenario configuration file")->required();
    run->add_flag("-v,--verbose", verbose, "print time step and Newton information");
    std::vector<std::string> overrides;
    run->add_option("-s,--set", overrides, "override a configuration value (key=value)");

    std::string suite = "all";
    std::string verifyCsv = "verify.csv";
    auto* verify = app.add_subcommand("verify", "run verification cases");
    verify->add_option("suite", suite, "suite name (all, patch, oracle, equivalence, poiseuille, convergence, newton, euler)");
    verify->add_option("--csv", verifyCsv, "machine-readable result file");

    std::string infoConfig;
    auto* info = app.add_subcommand("info", "print grid and dof information");
    info->add_option("config", infoConfig, "scenario configuration file")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (*run)
        {
            auto config = Config::fromFile(runConfig);
            for (const auto& o : overrides)
            {
                const auto eq = o.find('=');
                if (eq == std::string::npos)
                    throw ParameterError("override '" + o + "' is not of the form key=value");
                config.set(o.substr(0, eq), o.substr(eq + 1));
            }
            std::string outdir = config.getString("output.directory", "output");
            if (const char* env = std::getenv("POROCOUPLE_OUTDIR"))
                outdir = env;
            Scenario scenario(config);
            const auto result = scenario.run(outdir, verbose);
            std::cout << "finished at t = " << result.loop.time
                      << (result.loop.stationary ? " (stationary)" : "") << '\n'
                      << "accepted steps " << result.loop.acceptedSteps
                      << ", rejected " << result.loop.rejectedSteps
                      << ", Newton iterations " << result.loop.newtonIterations << '\n'
                      << "gamma_in     " << result.final.gammaIn << " kg/s\n"
                      << "gamma_out    " << result.final.gammaOut << " kg/s\n"
                      << "gamma_top    " << result.final.gammaTop << " kg/s\n"
                      << "constriction " << result.final.constriction << " kg/s\n"
                      << "output in " << outdir << '\n';
            return 0;
        }
        if (*info)
        {
            const auto config = Config::fromFile(infoConfig);
            Scenario scenario(config);
            std::cout << scenario.info();
            return 0;
        }
        if (*verify)
        {
            const auto results = runVerification(suite);
            printVerification(std::cout, results);
            writeVerificationCsv(verifyCsv, results);
            for (const auto& r : results)
                if (!r.passed)
                    return 1;
            return 0;
        }
    }
    catch (const ParameterError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
