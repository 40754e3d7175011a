#include <atomic>
#include <chrono>
#include <csignal>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#include <CLI11.hpp>

#include "vcsim/gateway/api.hpp"
#include "vcsim/gateway/http_server.hpp"
#include "vcsim/harness/bench.hpp"
#include "vcsim/harness/config.hpp"
#include "vcsim/harness/scenario.hpp"
#include "vcsim/store/snapshot.hpp"
#include "vcsim/synth/trace.hpp"

namespace fs = std::filesystem;
using namespace vcsim;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 1;
constexpr int kExitRuntime = 2;

std::atomic<bool> g_interrupted{false};

void on_signal(int) { g_interrupted.store(true); }

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

void write_output(const std::string& path, const std::string& text) {
    if (path.empty() || path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw std::runtime_error("cannot write " + path);
    }
    out << text;
}

harness::ScenarioConfig scenario_from(const std::string& path) {
    return path.empty() ? harness::default_scenario() : harness::load_config(path);
}

void apply_overrides(harness::ScenarioConfig& config, const std::string& mode, const std::optional<std::uint64_t>& seed) {
    if (mode == "virtual") config.mode = netsim::ClockMode::Virtual;
    else if (mode == "realtime") config.mode = netsim::ClockMode::Realtime;
    else if (!mode.empty()) throw ConfigError("--mode must be virtual or realtime");
    if (seed) config.seed = *seed;
}

template <typename T, typename Parse>
std::vector<T> read_pool(const std::string& path, Parse parse) {
    std::ifstream in(path);
    if (!in) {
        throw ConfigError("cannot open " + path);
    }
    std::vector<T> out;
    std::string line;
    while (std::getline(in, line)) {
        while (!line.empty() && (line.back() == '\r' || line.back() == ' ')) line.pop_back();
        if (line.empty()) continue;
        auto v = parse(line);
        if (!v) {
            throw ConfigError("bad value '" + line + "' in " + path);
        }
        out.push_back(*v);
    }
    return out;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Vehicular-cloud pipeline simulator"};
    app.require_subcommand(1);

    // run
    auto* run = app.add_subcommand("run", "Run a scenario and print its metrics report");
    std::string run_config, run_mode, run_out, run_snapshot;
    std::optional<std::uint64_t> run_seed;
    run->add_option("--config", run_config, "Scenario JSON (default: built-in 3-vehicle scenario)");
    run->add_option("--mode", run_mode, "virtual or realtime");
    run->add_option("--seed", run_seed, "Override the scenario seed");
    run->add_option("--out", run_out, "Write the report here instead of stdout");
    run->add_option("--snapshot-dir", run_snapshot, "Save the final stores as JSON Lines");

    // bench table1
    auto* bench = app.add_subcommand("bench", "Calibration benches");
    auto* table1 = bench->add_subcommand("table1", "One-image transfer and processing times");
    bench->require_subcommand(1);
    std::string bench_out;
    table1->add_option("--out", bench_out, "Write the JSON table here");

    // trace gen
    auto* trace = app.add_subcommand("trace", "Trace tools");
    auto* gen = trace->add_subcommand("gen", "Generate a synthetic vehicle trace");
    trace->require_subcommand(1);
    synth::TraceParams tp;
    tp.start_fix = GpsFix::from_degrees(45.4397, 4.3872, 1'700'000'000'000);
    std::string plates_file, faces_file, trace_out;
    gen->add_option("--steps", tp.n_steps, "Number of steps")->required()->check(CLI::PositiveNumber);
    gen->add_option("--seed", tp.seed, "Generator seed")->required();
    gen->add_option("--plates", plates_file, "Plate pool, one code per line (default: random)");
    gen->add_option("--faces", faces_file, "Face pool, one code per line (default: random)");
    gen->add_option("--repeat-prob", tp.repeat_prob, "Probability a step repeats the previous one")
        ->check(CLI::Range(0.0, 1.0));
    gen->add_option("--vehicle-id", tp.vehicle_id, "Vehicle id");
    gen->add_option("--step-ms", tp.step_ms, "Milliseconds between steps")->check(CLI::PositiveNumber);
    gen->add_option("--out", trace_out, "Output file (default: stdout)");

    // serve
    auto* serve = app.add_subcommand("serve", "Run a scenario in realtime with the HTTP API listening");
    std::string serve_config;
    std::optional<int> serve_port;
    serve->add_option("--config", serve_config, "Scenario JSON");
    serve->add_option("--port", serve_port, "Override the listen port");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitConfig;
    }

    try {
        if (run->parsed()) {
            auto config = scenario_from(run_config);
            apply_overrides(config, run_mode, run_seed);
            gateway::Services services;
            const auto result = harness::run_scenario(config, services);
            if (!run_snapshot.empty()) {
                store::save_snapshot(run_snapshot, services.detections, services.watchlist);
            }
            write_output(run_out, harness::report_text(result.report));
        } else if (table1->parsed()) {
            const auto rows = harness::bench_table1();
            const auto text = harness::to_json(rows).dump(2) + "\n";
            if (bench_out.empty()) {
                std::cout << text;
            } else {
                write_output(bench_out, text);
                for (const auto& r : rows) {
                    std::printf("%-18s measured %.4f s  table %.2f s  error %.4f%%\n", r.name.c_str(), r.measured_s,
                                r.reference_s, 100.0 * r.rel_error);
                }
            }
        } else if (gen->parsed()) {
            tp.plate_pool = plates_file.empty()
                                ? synth::random_plates(synth::mix_seed(tp.seed, 1), 30)
                                : read_pool<PlateCode>(plates_file, [](const std::string& s) { return PlateCode::parse(s); });
            tp.face_pool = faces_file.empty()
                               ? synth::random_faces(synth::mix_seed(tp.seed, 2), 20)
                               : read_pool<FaceCode>(faces_file, [](const std::string& s) -> std::optional<FaceCode> {
                                     try {
                                         std::size_t pos = 0;
                                         const long long v = std::stoll(s, &pos);
                                         return pos == s.size() ? FaceCode::make(v) : std::nullopt;
                                     } catch (const std::exception&) {
                                         return std::nullopt;
                                     }
                                 });
            synth::Trace t;
            try {
                t = synth::gen_trace(tp);
            } catch (const synth::SynthError& e) {
                throw ConfigError(e.what());
            }
            std::ostringstream out;
            synth::write_trace(out, t);
            write_output(trace_out, out.str());
        } else if (serve->parsed()) {
            auto config = scenario_from(serve_config);
            config.mode = netsim::ClockMode::Realtime;
            if (serve_port) config.listen_port = *serve_port;
            gateway::Services services;
            harness::ScenarioRunner runner(config, services);
            gateway::Api api(services, static_cast<std::size_t>(config.web_workers),
                             [&runner] { return harness::to_json(runner.snapshot()); },
                             [&runner] { return runner.sim_time_ms(); });
            gateway::HttpServer server(api);
            const int port = server.start(config.listen_host, config.listen_port);
            std::cerr << "listening on http://" << config.listen_host << ":" << port << "/api/v1/\n";
            std::signal(SIGINT, on_signal);
            std::signal(SIGTERM, on_signal);
            std::exception_ptr failure;
            std::thread sim([&] {
                try {
                    runner.run();
                } catch (...) {
                    failure = std::current_exception();
                    g_interrupted.store(true);
                }
            });
            std::thread watcher([&runner] {
                while (!g_interrupted.load()) std::this_thread::sleep_for(std::chrono::milliseconds(100));
                runner.stop();
            });
            sim.join();
            std::cerr << "scenario finished; serving until interrupted\n";
            watcher.join();
            server.stop();
            if (failure) std::rethrow_exception(failure);
        }
    } catch (const harness::HarnessError& e) {
        std::cerr << "vcsim: " << e.what() << "\n";
        return kExitConfig;
    } catch (const ConfigError& e) {
        std::cerr << "vcsim: " << e.what() << "\n";
        return kExitConfig;
    } catch (const std::exception& e) {
        std::cerr << "vcsim: " << e.what() << "\n";
        return kExitRuntime;
    }
    return kExitOk;
}
