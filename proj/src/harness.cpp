#include "pomr/harness.hpp"

#include "pomr/point_estimate.hpp"
#include "pomr/sampling.hpp"
#include "pomr/setups.hpp"

#include <json.hpp>

#include <algorithm>
#include <charconv>
#include <fstream>
#include <future>
#include <memory>
#include <sstream>

namespace pomr {

namespace {

constexpr std::uint64_t kTagObserve = 0x6f627376;  // "obsv"
constexpr std::uint64_t kTagRep = 0x72657073;      // "reps"

const std::vector<std::string>& method_order() {
    static const std::vector<std::string> order{"perf",         "post_single",  "post_multi", "point",
                                                "prior_single", "prior_multi", "bound_dbar", "bound_dbarbar"};
    return order;
}

void config_check(bool ok, const std::string& message) {
    if (!ok) throw ConfigError(message);
}

template <class F>
auto stage(const std::string& name, F&& f) {
    try {
        return f();
    } catch (const StageError&) {
        throw;
    } catch (const std::exception& e) {
        throw StageError(name, e.what());
    }
}

std::vector<ExtendedReal> padded_widths(const SnapshotSet& cloud, const Matrix& basis, Eigen::Index i_max) {
    std::vector<double> w = nested_widths(cloud, basis, i_max);
    std::vector<ExtendedReal> out;
    out.reserve(static_cast<std::size_t>(i_max + 1));
    for (double v : w) out.emplace_back(v);
    while (static_cast<Eigen::Index>(out.size()) <= i_max) out.push_back(out.back());
    return out;
}

// Everything shared by the repetitions of one run.
struct World {
    SnapshotSet M;
    Subspace W;
    PriorManifold single, multi;
    Matrix perf_basis, point_basis;
    BoundCurve bound;
    WorldStats stats;
};

PosteriorOptions posterior_options(const RunConfig& c, std::uint64_t seed) {
    PosteriorOptions o;
    o.sampler.pi.kind = c.pi == "uniform" ? PiDistribution::Kind::UniformBeta : PiDistribution::Kind::Mixture;
    o.sampler.pi.uniform_weight = c.pi_uniform_weight;
    o.sampler.pi.scale = c.pi_scale;
    o.sampler.d_box = c.d_box;
    o.per_point = c.per_point;
    o.max_draws_per_point = c.max_draws;
    o.seed = seed;
    return o;
}

struct Inputs {
    SnapshotSet M;
    Subspace W;
    PriorManifold single, multi;
};

Inputs world_inputs(const RunConfig& c) {
    if (c.setup == 1) {
        Setup1Config s;
        s.cells = static_cast<int>(c.cells);
        s.theta_min = c.theta_min;
        s.theta_step = c.theta_step;
        s.T = static_cast<int>(c.T);
        s.relax_subsample = c.relax_subsample;
        s.flux = c.flux;
        const ThermalBlockModel model = stage("thermal block assembly", [&] { return ThermalBlockModel(s.cells); });
        config_check(c.m <= model.dim(), "m exceeds the finite-element dimension");
        const Setup1World world = stage("setup 1 world", [&] { return build_setup1_world(model, s, c.n); });
        return Inputs{world.M, random_subspace(model.dim(), c.m, derive_seed(c.seed, kTagObserve, 0)),
                      stage("setup 1 prior", [&] { return setup1_prior(world, c.n, 1); }),
                      stage("setup 1 prior", [&] { return setup1_prior(world, c.n, c.L); })};
    }
    Setup2Config s;
    s.N = c.N;
    s.n_max = c.n_max;
    s.k_hat = c.k_hat;
    s.delta = c.delta;
    s.eps_main = c.eps_main;
    s.eps_perturb = c.eps_perturb;
    s.points = c.points;
    const Setup2World world = stage("setup 2 world", [&] { return build_setup2(s, c.seed); });
    return Inputs{world.M, world.W(c.m), world.prior(c.n, 1), world.prior(c.n, c.L)};
}

World build_world(const RunConfig& c) {
    Inputs in = world_inputs(c);
    World w{std::move(in.M), std::move(in.W), std::move(in.single), std::move(in.multi), {}, {}, {}, {}};

    const StoppingRule stop{c.i_max, 0.0};
    w.perf_basis = stage("greedy on M", [&] { return greedy(w.M, stop).basis; });
    w.point_basis = stage("point estimates", [&] {
        return reduce_from_estimates(point_estimates(w.M, w.W, w.single), stop).basis;
    });

    // bound inputs: T is the projection onto V of the first bound_k
    // greedy directions of M, so T lies in V; eps is the empirical sup.
    const DegenerateEllipsoid& prior = w.single[0];
    const SuitableBases bases = stage("suitable bases", [&] {
        return compute_suitable_bases(prior.subspace, w.W, BasesOptions{1e-8, 1e-10, false});
    });
    const Eigen::Index k = std::min<Eigen::Index>(c.bound_k, w.perf_basis.cols());
    const Matrix proj = prior.subspace.basis() * (prior.subspace.basis().transpose() * w.perf_basis.leftCols(k));
    const Subspace T = orthonormalize(proj);
    const double eps = inflate_width(empirical_width(w.M, T));
    w.bound = stage("bounds", [&] { return theorem1_bounds(bound_inputs(bases, T.dim(), eps, prior.width), c.i_max); });

    w.stats.ambient_dim = w.M.ambient_dim();
    w.stats.manifold_points = w.M.size();
    w.stats.p = bases.p;
    w.stats.q = bases.q;
    w.stats.bound_k = T.dim();
    w.stats.bound_eps = eps;
    for (std::size_t j = 0; j < w.multi.size(); ++j) {
        w.stats.prior_widths.push_back(w.multi[j].width);
        w.stats.prior_dims.push_back(w.multi[j].subspace.dim());
    }
    return w;
}

struct RepOutput {
    std::vector<CurveRecord> records;
    RepStats stats;
};

RepOutput run_rep(const RunConfig& c, const World& w, std::int64_t rep) {
    RepOutput out;
    out.stats.rep = rep;
    const std::uint64_t rep_seed = derive_seed(c.seed, kTagRep, static_cast<std::uint64_t>(rep));

    const PosteriorSample single = stage("posterior sampling (single prior)", [&] {
        return sample_posterior(w.M, w.W, w.single, posterior_options(c, derive_seed(rep_seed, 1, 0)));
    });
    const PosteriorSample multi = stage("posterior sampling (multi prior)", [&] {
        return sample_posterior(w.M, w.W, w.multi, posterior_options(c, derive_seed(rep_seed, 2, 0)));
    });
    out.stats.single_draws = single.draws;
    out.stats.single_samples = single.cloud.size();
    out.stats.single_incomplete = single.incomplete_points;
    out.stats.multi_draws = multi.draws;
    out.stats.multi_samples = multi.cloud.size();
    out.stats.multi_incomplete = multi.incomplete_points;

    const StoppingRule stop{c.i_max, 0.0};
    const Matrix post_single = stage("greedy on the posterior cloud", [&] { return greedy(single.cloud, stop).basis; });
    const Matrix post_multi = multi.cloud.empty()
                                  ? Matrix(w.M.ambient_dim(), 0)
                                  : stage("greedy on the posterior cloud", [&] { return greedy(multi.cloud, stop).basis; });

    auto emit = [&](const std::string& method, const std::string& target, const std::vector<ExtendedReal>& v) {
        for (std::size_t i = 0; i < v.size(); ++i)
            out.records.push_back(CurveRecord{method, rep, static_cast<std::int64_t>(i), target, v[i]});
    };
    auto emit_pair = [&](const std::string& method, const Matrix& basis, const SnapshotSet& post) {
        emit(method, "M", padded_widths(w.M, basis, c.i_max));
        if (!post.empty()) emit(method, "Mpost", padded_widths(post, basis, c.i_max));
    };
    stage("widths", [&] {
        emit_pair("perf", w.perf_basis, single.cloud);
        emit_pair("post_single", post_single, single.cloud);
        if (!multi.cloud.empty()) emit_pair("post_multi", post_multi, multi.cloud);
        emit_pair("point", w.point_basis, single.cloud);

        std::vector<ExtendedReal> ps, pm;
        for (Eigen::Index i = 0; i <= c.i_max; ++i) {
            ps.push_back(width_degenerate_ellipsoid(w.single[0].subspace.dim(), w.single[0].width, i));
            ExtendedReal best = ExtendedReal::infinity();
            for (std::size_t j = 0; j < w.multi.size(); ++j)
                best = min(best, width_degenerate_ellipsoid(w.multi[j].subspace.dim(), w.multi[j].width, i));
            pm.push_back(best);
        }
        emit("prior_single", "bound", ps);
        emit("prior_multi", "bound", pm);
        emit("bound_dbar", "bound", w.bound.d_bar);
        emit("bound_dbarbar", "bound", w.bound.d_bar_bar);
        return 0;
    });
    return out;
}

void set_field(const ConfigField& f, const nlohmann::json& j) {
    std::visit(
        [&](auto* p) {
            using T = std::remove_pointer_t<decltype(p)>;
            *p = j.get<T>();
        },
        f.target);
}

nlohmann::json field_value(const ConfigField& f) {
    return std::visit([](auto* p) { return nlohmann::json(*p); }, f.target);
}

}  // namespace

RunConfig setup1_defaults() {
    RunConfig c;
    c.setup = 1;
    c.m = 10;
    c.n = 20;
    c.L = 11;
    c.max_draws = 2000;
    c.bound_k = 4;
    c.reps = 3;
    return c;
}

RunConfig setup2_defaults() {
    RunConfig c;
    c.setup = 2;
    c.m = 25;
    c.n = 25;
    c.L = 11;
    c.bound_k = 5;
    c.reps = 5;
    return c;
}

std::vector<ConfigField> config_fields(RunConfig& c) {
    return {
        {"cells", &c.cells, "thermal block cells per side (setup 1)"},
        {"theta_min", &c.theta_min, "smallest conductivity (setup 1)"},
        {"theta_step", &c.theta_step, "conductivity grid step (setup 1)"},
        {"T", &c.T, "conductivity grid steps per axis (setup 1)"},
        {"relax_subsample", &c.relax_subsample, "max points of the relaxed cloud (setup 1)"},
        {"flux", &c.flux, "boundary flux c (setup 1)"},
        {"N", &c.N, "ambient dimension (setup 2)"},
        {"n_max", &c.n_max, "number of constructed basis pairs (setup 2)"},
        {"k_hat", &c.k_hat, "main directions (setup 2)"},
        {"delta", &c.delta, "cosine between main prior and observation directions (setup 2)"},
        {"eps_main", &c.eps_main, "radius of the main ellipsoid (setup 2)"},
        {"eps_perturb", &c.eps_perturb, "radius of the perturbation ellipsoid (setup 2)"},
        {"points", &c.points, "manifold points (setup 2)"},
        {"m", &c.m, "observation dimension"},
        {"n", &c.n, "prior dimension"},
        {"L", &c.L, "ellipsoids in the multi prior"},
        {"per_point", &c.per_point, "posterior samples per manifold point"},
        {"pi", &c.pi, "pi distribution: mixture or uniform"},
        {"pi_uniform_weight", &c.pi_uniform_weight, "probability of the uniform branch"},
        {"pi_scale", &c.pi_scale, "weight of the uncertain directions in the mixture branch"},
        {"d_box", &c.d_box, "half width of the box on unobserved prior directions"},
        {"max_draws", &c.max_draws, "draw cap per manifold point for the multi prior"},
        {"i_max", &c.i_max, "largest subspace dimension"},
        {"bound_k", &c.bound_k, "dimension of T for the bounds"},
        {"reps", &c.reps, "repetitions"},
        {"threads", &c.threads, "worker threads, 0 for one per repetition"},
        {"seed", &c.seed, "base seed"},
        {"out", &c.out, "output directory"},
    };
}

std::vector<ConfigField> config_fields(BoundsConfig& c) {
    return {
        {"k", &c.k, "dimension of T"},
        {"n", &c.n, "prior dimension"},
        {"m", &c.m, "observation dimension"},
        {"N", &c.N, "ambient dimension"},
        {"eps", &c.eps, "width around T"},
        {"eps_prime", &c.eps_prime, "width around V"},
        {"sigma", &c.sigma, "comma-separated singular values; overrides geometry"},
        {"geometry", &c.geometry, "random, contained (V in W) or orthogonal"},
        {"tol_one", &c.tol_one, "sigma counted as 1 above 1 - tol_one"},
        {"tol_zero", &c.tol_zero, "sigma counted as 0 at or below tol_zero"},
        {"i_max", &c.i_max, "largest subspace dimension"},
        {"seed", &c.seed, "seed for random geometry"},
        {"out", &c.out, "output directory"},
    };
}

void validate(const RunConfig& c) {
    config_check(c.setup == 1 || c.setup == 2, "setup must be 1 or 2");
    config_check(c.m >= 1 && c.n >= 1, "m and n must be positive");
    config_check(c.L >= 1 && c.L <= c.n, "need 1 <= L <= n");
    config_check(c.per_point >= 1, "per_point must be positive");
    config_check(c.pi == "mixture" || c.pi == "uniform", "pi must be mixture or uniform");
    config_check(c.pi_uniform_weight >= 0 && c.pi_uniform_weight <= 1, "pi_uniform_weight must lie in [0, 1]");
    config_check(c.pi_scale > 0, "pi_scale must be positive");
    config_check(c.d_box >= 0, "d_box must be nonnegative");
    config_check(c.max_draws >= 1, "max_draws must be positive");
    config_check(c.i_max >= 1, "i_max must be positive");
    config_check(c.bound_k >= 0 && c.bound_k <= c.n, "need 0 <= bound_k <= n");
    config_check(c.reps >= 1, "reps must be positive");
    config_check(c.threads >= 0, "threads must be nonnegative");
    config_check(!c.out.empty(), "out must not be empty");
    if (c.setup == 1) {
        config_check(c.cells >= 2 && c.cells % 2 == 0, "cells must be even and >= 2");
        config_check(c.theta_min > 0 && c.theta_step >= 0, "need theta_min > 0 and theta_step >= 0");
        config_check(c.T >= 1, "T must be positive");
        config_check(c.relax_subsample >= (c.T + 1) * (c.T + 1), "relax_subsample must be at least (T+1)^2");
        config_check(c.m <= c.cells * (c.cells + 1), "m exceeds the finite-element dimension");
    } else {
        config_check(c.N >= 1 && c.n_max >= 1 && 2 * c.n_max <= c.N, "need 2 n_max <= N");
        config_check(c.k_hat >= 1 && c.k_hat <= c.n_max, "need 1 <= k_hat <= n_max");
        config_check(c.delta > 0 && c.delta < 1, "delta must lie in (0, 1)");
        config_check(c.eps_main >= 0 && c.eps_perturb >= 0, "ellipsoid radii must be nonnegative");
        config_check(c.points >= 1, "points must be positive");
        config_check(c.m <= c.n_max && c.n <= c.n_max, "m and n must not exceed n_max");
    }
}

ExperimentResult run_experiment(const RunConfig& c) {
    validate(c);
    const auto world = std::make_shared<const World>(build_world(c));

    ExperimentResult result;
    result.world = world->stats;
    const std::int64_t workers = c.threads == 0 ? c.reps : c.threads;
    std::vector<RepOutput> outs(static_cast<std::size_t>(c.reps));
    for (std::int64_t start = 0; start < c.reps; start += workers) {
        std::vector<std::future<RepOutput>> futures;
        const std::int64_t stop = std::min(c.reps, start + workers);
        for (std::int64_t rep = start; rep < stop; ++rep)
            futures.push_back(std::async(std::launch::async, [&c, world, rep] { return run_rep(c, *world, rep); }));
        for (std::int64_t rep = start; rep < stop; ++rep) outs[static_cast<std::size_t>(rep)] = futures[static_cast<std::size_t>(rep - start)].get();
    }

    // method-major order so that the CSV groups curves
    for (const std::string& method : method_order())
        for (const RepOutput& o : outs)
            for (const CurveRecord& r : o.records)
                if (r.method == method) result.records.push_back(r);
    for (const RepOutput& o : outs) result.reps.push_back(o.stats);
    return result;
}

std::vector<SummaryRow> summarize(const std::vector<CurveRecord>& records) {
    std::vector<SummaryRow> rows;
    struct Acc {
        ExtendedReal lo = ExtendedReal::infinity(), hi{0.0};
        double sum = 0.0;
        bool inf = false;
        int count = 0;
    };
    std::vector<std::pair<std::tuple<std::string, std::string, std::int64_t>, Acc>> acc;
    for (const CurveRecord& r : records) {
        const auto key = std::make_tuple(r.method, r.target, r.i);
        auto it = std::find_if(acc.begin(), acc.end(), [&](const auto& e) { return e.first == key; });
        if (it == acc.end()) {
            acc.push_back({key, Acc{}});
            it = acc.end() - 1;
        }
        Acc& a = it->second;
        a.lo = min(a.lo, r.value);
        if (a.hi < r.value) a.hi = r.value;
        if (r.value.is_infinite()) a.inf = true;
        else a.sum += r.value.value();
        ++a.count;
    }
    for (const auto& [key, a] : acc) {
        const ExtendedReal mean = a.inf ? ExtendedReal::infinity() : ExtendedReal(a.sum / a.count);
        rows.push_back(SummaryRow{std::get<0>(key), std::get<1>(key), std::get<2>(key), a.lo, mean, a.hi});
    }
    return rows;
}

std::string curves_csv(const std::vector<CurveRecord>& records) {
    std::string s = "method,rep,i,target,value\n";
    for (const CurveRecord& r : records)
        s += r.method + "," + std::to_string(r.rep) + "," + std::to_string(r.i) + "," + r.target + "," +
             r.value.to_string() + "\n";
    return s;
}

std::string summary_csv(const std::vector<SummaryRow>& rows) {
    std::string s = "method,target,i,min,mean,max\n";
    for (const SummaryRow& r : rows)
        s += r.method + "," + r.target + "," + std::to_string(r.i) + "," + r.min.to_string() + "," +
             r.mean.to_string() + "," + r.max.to_string() + "\n";
    return s;
}

void write_text(const std::filesystem::path& path, const std::string& text) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw StageError("output", "cannot open " + path.string());
    f << text;
    if (!f) throw StageError("output", "cannot write " + path.string());
}

std::string fields_json(std::vector<ConfigField> fields) {
    nlohmann::ordered_json j = nlohmann::ordered_json::object();
    for (const ConfigField& f : fields) j[std::string(f.name)] = field_value(f);
    return j.dump();
}

void write_experiment(const std::string& command, const RunConfig& config, const ExperimentResult& result) {
    const std::filesystem::path dir(config.out);
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) throw StageError("output", "cannot create " + dir.string() + ": " + ec.message());
    write_text(dir / "curves.csv", curves_csv(result.records));
    write_text(dir / "summary.csv", summary_csv(summarize(result.records)));

    RunConfig copy = config;
    nlohmann::ordered_json m;
    m["tool"] = "pomr";
    m["command"] = command;
    m["config"] = nlohmann::ordered_json::parse(fields_json(config_fields(copy)));
    m["files"] = {{"curves", "curves.csv"}, {"summary", "summary.csv"}};
    const WorldStats& w = result.world;
    m["world"] = {{"ambient_dim", w.ambient_dim}, {"manifold_points", w.manifold_points},
                  {"p", w.p},                     {"q", w.q},
                  {"bound_k", w.bound_k},         {"bound_eps", w.bound_eps},
                  {"prior_dims", w.prior_dims},   {"prior_widths", w.prior_widths}};
    nlohmann::ordered_json reps = nlohmann::ordered_json::array();
    for (const RepStats& r : result.reps)
        reps.push_back({{"rep", r.rep},
                        {"single_draws", r.single_draws},
                        {"single_samples", r.single_samples},
                        {"single_incomplete_points", r.single_incomplete},
                        {"multi_draws", r.multi_draws},
                        {"multi_samples", r.multi_samples},
                        {"multi_incomplete_points", r.multi_incomplete}});
    m["repetitions"] = reps;
    write_text(dir / "manifest.json", m.dump(2) + "\n");
}

std::pair<std::string, RunConfig> read_manifest(const std::filesystem::path& path) {
    std::ifstream f(path);
    if (!f) throw ConfigError("cannot open manifest " + path.string());
    nlohmann::json m;
    try {
        f >> m;
    } catch (const std::exception& e) {
        throw ConfigError("malformed manifest: " + std::string(e.what()));
    }
    if (!m.contains("command") || !m.contains("config")) throw ConfigError("manifest lacks command or config");
    const std::string command = m["command"].get<std::string>();
    RunConfig c = command == "setup1" ? setup1_defaults() : setup2_defaults();
    if (command != "setup1" && command != "setup2") throw ConfigError("cannot replay command " + command);
    for (const ConfigField& field : config_fields(c)) {
        const std::string key(field.name);
        if (!m["config"].contains(key)) throw ConfigError("manifest lacks config key " + key);
        try {
            set_field(field, m["config"][key]);
        } catch (const std::exception& e) {
            throw ConfigError("bad manifest value for " + key + ": " + e.what());
        }
    }
    return {command, c};
}

BoundInputs bounds_inputs(const BoundsConfig& c) {
    config_check(c.k >= 0 && c.n >= 1 && c.m >= 1 && c.N >= 1, "dimensions must be positive");
    config_check(c.k <= c.n && c.n <= c.N && c.m <= c.N, "need k <= n <= N and m <= N");
    config_check(c.eps >= 0 && c.eps_prime >= 0, "widths must be nonnegative");
    config_check(c.i_max >= 0, "i_max must be nonnegative");
    config_check(c.tol_one >= 0 && c.tol_zero >= 0, "tolerances must be nonnegative");

    if (!c.sigma.empty()) {
        std::vector<double> s;
        std::stringstream ss(c.sigma);
        std::string item;
        while (std::getline(ss, item, ',')) {
            double v = 0;
            const auto* b = item.data();
            const auto res = std::from_chars(b, b + item.size(), v);
            config_check(res.ec == std::errc() && res.ptr == b + item.size(), "bad sigma entry '" + item + "'");
            config_check(v >= 0 && v <= 1, "sigma entries must lie in [0, 1]");
            s.push_back(v);
        }
        config_check(static_cast<std::int64_t>(s.size()) == std::min(c.m, c.n), "sigma needs min(m, n) entries");
        config_check(std::is_sorted(s.rbegin(), s.rend()), "sigma must be nonincreasing");
        BoundInputs in;
        in.k = c.k;
        in.n = c.n;
        in.m = c.m;
        in.N = c.N;
        in.eps = c.eps;
        in.eps_prime = c.eps_prime;
        in.sigma = Eigen::Map<const Eigen::VectorXd>(s.data(), static_cast<Eigen::Index>(s.size()));
        for (double v : s) {
            if (v >= 1.0 - c.tol_one) ++in.p;
            if (v > c.tol_zero) ++in.q;
        }
        config_check(c.m + c.n - in.p <= c.N, "sigma is incompatible with N (m + n - p > N)");
        return in;
    }

    const Subspace V = random_subspace(c.N, c.n, derive_seed(c.seed, kTagObserve, 1));
    Subspace W;
    if (c.geometry == "random") {
        W = random_subspace(c.N, c.m, derive_seed(c.seed, kTagObserve, 2));
    } else if (c.geometry == "contained") {
        config_check(c.n <= c.m, "contained geometry needs n <= m");
        const Subspace perp = orthogonal_complement(V);
        Matrix cols(c.N, c.m);
        cols << V.basis(), perp.basis().leftCols(c.m - c.n);
        W = orthonormalize(cols);
    } else if (c.geometry == "orthogonal") {
        config_check(c.n + c.m <= c.N, "orthogonal geometry needs n + m <= N");
        W = orthogonal_complement(V).leading(c.m);
    } else {
        throw ConfigError("geometry must be random, contained or orthogonal");
    }
    const SuitableBases b = stage("suitable bases", [&] {
        return compute_suitable_bases(V, W, BasesOptions{c.tol_one, c.tol_zero, false});
    });
    return bound_inputs(b, c.k, c.eps, c.eps_prime);
}

std::string bounds_csv(const BoundCurve& curve) {
    std::string s = "i,d_bar,d_bar_bar,min\n";
    for (std::size_t i = 0; i < curve.combined.size(); ++i)
        s += std::to_string(i) + "," + curve.d_bar[i].to_string() + "," + curve.d_bar_bar[i].to_string() + "," +
             curve.combined[i].to_string() + "\n";
    return s;
}

void write_bounds(const BoundsConfig& config, const BoundCurve& curve) {
    const std::filesystem::path dir(config.out);
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) throw StageError("output", "cannot create " + dir.string() + ": " + ec.message());
    write_text(dir / "bounds.csv", bounds_csv(curve));
    BoundsConfig copy = config;
    nlohmann::ordered_json m;
    m["tool"] = "pomr";
    m["command"] = "bounds";
    m["config"] = nlohmann::ordered_json::parse(fields_json(config_fields(copy)));
    m["k_star"] = curve.k_star;
    m["bar_bar_start"] = curve.bar_bar_start;
    m["files"] = {{"bounds", "bounds.csv"}};
    write_text(dir / "manifest.json", m.dump(2) + "\n");
}

void write_samples(const RunConfig& c) {
    validate(c);
    const World w = build_world(c);
    const std::uint64_t rep_seed = derive_seed(c.seed, kTagRep, 0);
    const PosteriorSample single = stage("posterior sampling (single prior)", [&] {
        return sample_posterior(w.M, w.W, w.single, posterior_options(c, derive_seed(rep_seed, 1, 0)));
    });
    const PosteriorSample multi = stage("posterior sampling (multi prior)", [&] {
        return sample_posterior(w.M, w.W, w.multi, posterior_options(c, derive_seed(rep_seed, 2, 0)));
    });

    std::string s = "prior,sample";
    for (Eigen::Index j = 0; j < w.M.ambient_dim(); ++j) s += ",x" + std::to_string(j);
    s += "\n";
    auto dump = [&](const std::string& label, const SnapshotSet& cloud) {
        for (Eigen::Index i = 0; i < cloud.size(); ++i) {
            s += label + "," + std::to_string(i);
            for (Eigen::Index j = 0; j < cloud.ambient_dim(); ++j) s += "," + format_real(cloud[i](j));
            s += "\n";
        }
    };
    dump("single", single.cloud);
    dump("multi", multi.cloud);

    const std::filesystem::path dir(c.out);
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) throw StageError("output", "cannot create " + dir.string() + ": " + ec.message());
    write_text(dir / "samples.csv", s);
    RunConfig copy = c;
    nlohmann::ordered_json m;
    m["tool"] = "pomr";
    m["command"] = "sample";
    m["config"] = nlohmann::ordered_json::parse(fields_json(config_fields(copy)));
    m["files"] = {{"samples", "samples.csv"}};
    m["single"] = {{"draws", single.draws}, {"samples", single.cloud.size()}};
    m["multi"] = {{"draws", multi.draws},
                  {"samples", multi.cloud.size()},
                  {"incomplete_points", multi.incomplete_points}};
    write_text(dir / "manifest.json", m.dump(2) + "\n");
}

}  // namespace pomr
