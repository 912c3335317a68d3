#include "pomr/checks.hpp"
#include "pomr/harness.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <chrono>
#include <iostream>
#include <map>

using namespace pomr;

namespace {

template <class Config>
std::map<std::string, CLI::Option*> add_fields(CLI::App* sub, Config& config) {
    std::map<std::string, CLI::Option*> opts;
    for (const ConfigField& f : config_fields(config)) {
        const std::string flag = "--" + std::string(f.name);
        CLI::Option* o = std::visit(
            [&](auto* p) { return sub->add_option(flag, *p, std::string(f.help))->capture_default_str(); }, f.target);
        opts[std::string(f.name)] = o;
    }
    sub->add_option("--config", "flat key = value file; command-line flags take precedence")->type_name("FILE");
    return opts;
}

// Fields left at their defaults follow the defaults of the chosen setup.
void adopt_setup_defaults(RunConfig& config, const std::map<std::string, CLI::Option*>& given) {
    RunConfig base = config.setup == 1 ? setup1_defaults() : setup2_defaults();
    auto dst = config_fields(config);
    auto src = config_fields(base);
    for (std::size_t i = 0; i < dst.size(); ++i) {
        if (given.at(std::string(dst[i].name))->count() > 0) continue;
        std::visit(
            [&](auto* d) {
                using T = std::remove_pointer_t<decltype(d)>;
                *d = *std::get<T*>(src[i].target);
            },
            dst[i].target);
    }
}

// CLI11 reads config files only at the top level, so the file's entries are
// spliced in right after the subcommand; later command-line flags win.
std::vector<std::string> expand_config(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    for (std::size_t i = 0; i < args.size(); ++i) {
        std::string file;
        std::size_t span = 0;
        if (args[i] == "--config" && i + 1 < args.size()) {
            file = args[i + 1];
            span = 2;
        } else if (args[i].rfind("--config=", 0) == 0) {
            file = args[i].substr(9);
            span = 1;
        }
        if (span == 0) continue;
        std::vector<CLI::ConfigItem> items;
        try {
            items = CLI::ConfigINI().from_file(file);
        } catch (const CLI::Error& e) {
            throw ConfigError("cannot read config file " + file + ": " + e.what());
        }
        args.erase(args.begin() + static_cast<std::ptrdiff_t>(i), args.begin() + static_cast<std::ptrdiff_t>(i + span));
        std::vector<std::string> tokens;
        for (const CLI::ConfigItem& item : items) {
            if (item.name == "++" || item.name == "--") continue;
            if (!item.parents.empty()) throw ConfigError("config file must be flat; found section " + item.parents.front());
            tokens.push_back("--" + item.name);
            tokens.insert(tokens.end(), item.inputs.begin(), item.inputs.end());
        }
        const auto at = args.empty() ? args.end() : args.begin() + 1;
        args.insert(at, tokens.begin(), tokens.end());
        break;
    }
    std::reverse(args.begin(), args.end());
    return args;
}

void report(const RunConfig& c, const ExperimentResult& r, double seconds) {
    std::cout << "setup " << c.setup << ": N=" << r.world.ambient_dim << " points=" << r.world.manifold_points
              << " p=" << r.world.p << " q=" << r.world.q << " reps=" << c.reps << " in " << seconds << " s\n";
    for (const RepStats& s : r.reps)
        std::cout << "  rep " << s.rep << ": single " << s.single_samples << " samples, multi " << s.multi_samples
                  << "/" << s.multi_draws << " accepted, " << s.multi_incomplete << " incomplete points\n";
    std::cout << "wrote " << c.out << "/curves.csv, summary.csv, manifest.json\n";
}

int run(const std::string& command, const RunConfig& c) {
    const auto t0 = std::chrono::steady_clock::now();
    const ExperimentResult r = run_experiment(c);
    write_experiment(command, c, r);
    report(c, r, std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count());
    return 0;
}

int selftest(std::uint64_t seed, const std::string& out) {
    struct Item {
        const char* name;
        CheckResult result;
    };
    const Item items[] = {
        {"suitable bases", check_suitable_bases(30, 20, seed)},
        {"sampler", check_sampler(10, 200, seed)},
        {"point estimate", check_point_estimate(30, seed)},
        {"width bounds", check_width_bounds(3, 1000, seed)},
    };
    std::string text;
    bool ok = true;
    for (const Item& it : items) {
        text += std::string(it.result.pass ? "PASS " : "FAIL ") + it.name + ": " + it.result.detail + "\n";
        ok = ok && it.result.pass;
    }
    std::cout << text;
    std::error_code ec;
    std::filesystem::create_directories(out, ec);
    if (!ec) write_text(std::filesystem::path(out) / "selftest.txt", text);
    return ok ? 0 : 3;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Model reduction from partial observations: experiments and bounds", "pomr"};
    app.require_subcommand(1);
    app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);

    RunConfig s1 = setup1_defaults(), s2 = setup2_defaults(), sample_cfg = setup2_defaults();
    BoundsConfig bc;
    std::uint64_t self_seed = 1;
    std::string self_out = "out", manifest, replay_out;

    CLI::App* setup1 = app.add_subcommand("setup1", "thermal block experiment");
    add_fields(setup1, s1);
    CLI::App* setup2 = app.add_subcommand("setup2", "misaligned two-ellipsoid experiment");
    add_fields(setup2, s2);
    CLI::App* bounds = app.add_subcommand("bounds", "width bounds for given dimensions and singular values");
    add_fields(bounds, bc);
    CLI::App* sample = app.add_subcommand("sample", "dump raw posterior samples of one repetition");
    sample->add_option("--setup", sample_cfg.setup, "1 or 2")->capture_default_str();
    const auto sample_opts = add_fields(sample, sample_cfg);
    CLI::App* self = app.add_subcommand("selftest", "property suites on small instances");
    self->add_option("--seed", self_seed, "base seed")->capture_default_str();
    self->add_option("--out", self_out, "output directory")->capture_default_str();
    CLI::App* replay = app.add_subcommand("replay", "re-run an experiment from its manifest");
    replay->add_option("manifest", manifest, "manifest.json of a previous run")->required();
    replay->add_option("--out", replay_out, "output directory (default: the recorded one)");
    std::uint64_t replay_seed = 0;
    CLI::Option* replay_seed_opt = replay->add_option("--seed", replay_seed, "seed override (default: the recorded one)");

    try {
        app.parse(expand_config(argc, argv));
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (*setup1) return run("setup1", s1);
        if (*setup2) return run("setup2", s2);
        if (*bounds) {
            const BoundCurve curve = theorem1_bounds(bounds_inputs(bc), bc.i_max);
            write_bounds(bc, curve);
            std::cout << bounds_csv(curve);
            return 0;
        }
        if (*sample) {
            if (sample_cfg.setup != 1 && sample_cfg.setup != 2) throw ConfigError("setup must be 1 or 2");
            adopt_setup_defaults(sample_cfg, sample_opts);
            write_samples(sample_cfg);
            std::cout << "wrote " << sample_cfg.out << "/samples.csv\n";
            return 0;
        }
        if (*self) return selftest(self_seed, self_out);
        if (*replay) {
            auto [command, config] = read_manifest(manifest);
            if (!replay_out.empty()) config.out = replay_out;
            if (replay_seed_opt->count() > 0) config.seed = replay_seed;
            return run(command, config);
        }
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const StageError& e) {
        std::cerr << "numerical error in " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "numerical error: " << e.what() << "\n";
        return 3;
    }
    return 0;
}
