#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

#include <CLI11.hpp>

#include "mixtop/config.hpp"

namespace {

mixtop::json load_config(const std::string &path) {
    std::stringstream buf;
    if (path == "-") {
        buf << std::cin.rdbuf();
    } else {
        std::ifstream in(path);
        if (!in)
            throw std::runtime_error("cannot read config file " + path);
        buf << in.rdbuf();
    }
    try {
        return mixtop::json::parse(buf.str());
    } catch (const mixtop::json::parse_error &e) {
        throw mixtop::ConfigError("", std::string("invalid JSON: ") + e.what());
    }
}

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{"Exact diagnostics of mixed-state topological order on small lattices"};
    app.set_version_flag("--version", std::string(MIXTOP_VERSION));
    app.require_subcommand(1);

    const std::map<std::string, std::string> commands = {
        {"entropy", "entropy"},         {"cmi", "cmi"},
        {"negativity", "negativity"},   {"braiding", "braiding-table"},
        {"memory", "memory-class"},     {"witness", "tee-witness"},
        {"roof", "convex-roof"},        {"sweep", ""},
    };

    std::string config_path, out_path, format = "json", trace_path;
    mixtop::RunOptions opt;
    for (auto &[name, quantity] : commands) {
        auto *sub = app.add_subcommand(name, quantity.empty() ? "evaluate a config with sweep ranges"
                                                              : "evaluate quantity " + quantity);
        sub->add_option("--config", config_path, "JSON experiment config ('-' for stdin)")->required();
        sub->add_option("--seed", opt.seed, "random seed")->capture_default_str();
        sub->add_option("--out", out_path, "output file (default stdout)");
        sub->add_option("--format", format, "json or csv")
            ->check(CLI::IsMember({"json", "csv"}))
            ->capture_default_str();
        sub->add_option("--budget-qubits", opt.budget_qubits, "syndrome bits / enumerated sites allowed")
            ->capture_default_str();
        sub->add_option("--mc-samples", opt.mc_samples, "sample noisy entropies with this many draws");
        sub->add_option("--trace", trace_path, "write the optimizer trace as JSON lines");
    }
    CLI11_PARSE(app, argc, argv);

    try {
        auto *sub = app.get_subcommands().front();
        const std::string &quantity = commands.at(sub->get_name());
        mixtop::json cfg = load_config(config_path);
        if (!cfg.is_object())
            throw mixtop::ConfigError("", "the config must be a JSON object");
        if (quantity.empty()) {
            if (!cfg.contains("sweep"))
                throw mixtop::ConfigError("sweep", "the sweep command needs sweep ranges");
        } else if (!cfg.contains("quantity")) {
            cfg["quantity"] = quantity;
        } else if (cfg["quantity"] != quantity) {
            throw mixtop::ConfigError("quantity", "config asks for " + cfg["quantity"].dump() + " but the command is " +
                                                      sub->get_name());
        }
        if (!out_path.empty() && !cfg.contains("output"))
            cfg["output"] = out_path;
        else if (out_path.empty() && cfg.contains("output")) {
            if (!cfg["output"].is_string())
                throw mixtop::ConfigError("output", "expected a path");
            out_path = cfg["output"].get<std::string>();
        }
        if (cfg.contains("seed") && app.get_subcommands().front()->count("--seed") == 0) {
            if (!cfg["seed"].is_number_unsigned())
                throw mixtop::ConfigError("seed", "expected an unsigned integer");
            opt.seed = cfg["seed"].get<uint64_t>();
        }
        opt.trace_path = trace_path;
        cfg.erase("output");
        cfg.erase("seed");

        mixtop::json doc = mixtop::run_experiment(cfg, opt);
        std::string text = format == "csv" ? mixtop::to_csv(doc) : doc.dump(2) + "\n";
        if (out_path.empty()) {
            std::cout << text;
        } else {
            std::ofstream out(out_path);
            if (!out)
                throw std::runtime_error("cannot write " + out_path);
            out << text;
        }
    } catch (const mixtop::ConfigError &e) {
        std::cerr << "mixtop: " << e.what() << "\n";
        return 2;
    } catch (const std::length_error &e) {
        std::cerr << "mixtop: budget exceeded: " << e.what() << "\n";
        return 3;
    } catch (const std::exception &e) {
        std::cerr << "mixtop: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
