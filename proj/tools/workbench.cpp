#include <brstwb/workbench.hpp>

#include <CLI11.hpp>

#include <cstdio>
#include <iostream>

namespace {

constexpr int kExitFail = 1;
constexpr int kExitUsage = 2;

int run(int argc, char** argv) {
    CLI::App app{"workbench: involutive systems, BRST charges and cohomology slices"};
    std::string command;
    std::string file;
    std::optional<int> target_rdeg;
    std::optional<unsigned> degree_bound;
    std::optional<std::size_t> p;
    std::string output;
    bool json = false;
    bool timing = false;
    app.add_option("command", command, "check | build-charge | solve | superfield")->required();
    app.add_option("file", file, "system document (JSON)")->required()->check(CLI::ExistingFile);
    app.add_option("--target-rdeg", target_rdeg, "resolution degree up to which the master equation is solved");
    app.add_option("--degree-bound", degree_bound, "polynomial degree bound for ansatz and membership searches");
    app.add_option("--p", p, "polyvector degree for solve");
    app.add_option("--output", output, "write the charge file here (build-charge, superfield)");
    app.add_flag("--json", json, "machine-readable report");
    app.add_flag("--timing", timing, "include wall time in the report");
    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : kExitUsage;
    }
    auto cmd = brstwb::command_from_name(command);
    if (!cmd) {
        std::cerr << "unknown command '" << command << "'\n";
        return kExitUsage;
    }
    brstwb::CommandResult result;
    try {
        brstwb::CommandOptions opts;
        opts.target_rdeg = target_rdeg;
        opts.degree_bound = degree_bound;
        opts.p = p;
        opts.max_jet_order = brstwb::max_jet_order_from_env();
        auto doc = brstwb::parse_document(brstwb::read_file(file));
        result = brstwb::run_command(*cmd, doc, opts, timing);
    } catch (const brstwb::DocumentError& e) {
        std::cerr << file << ": " << e.what() << "\n";
        return kExitUsage;
    } catch (const brstwb::InvalidDegree& e) {
        std::cerr << "invalid degree: " << e.what() << "\n";
        return kExitUsage;
    } catch (const nlohmann::json::exception& e) {
        std::cerr << file << ": " << e.what() << "\n";
        return kExitUsage;
    } catch (const brstwb::ShapeError& e) {
        std::cerr << file << ": " << e.what() << "\n";
        return kExitUsage;
    } catch (const brstwb::DimensionMismatch& e) {
        std::cerr << file << ": " << e.what() << "\n";
        return kExitUsage;
    } catch (const brstwb::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitFail;
    }
    if (json) {
        auto j = brstwb::to_json(result.report);
        if (result.charge) j["charge"] = nlohmann::json::parse(*result.charge);
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << brstwb::to_text(result.report);
    }
    if (!output.empty() && result.charge) {
        std::FILE* f = std::fopen(output.c_str(), "wb");
        if (!f) {
            std::cerr << "cannot write '" << output << "'\n";
            return kExitUsage;
        }
        std::fputs(result.charge->c_str(), f);
        std::fclose(f);
    }
    return result.report.pass ? 0 : kExitFail;
}

} // namespace

int main(int argc, char** argv) { return run(argc, argv); }
