// mami-bench: planning and link-level experiments from flat key=value
// configs. Subcommands: plan, simulate, sweep, sync.
//
// Exit codes: 0 success, 1 config error, 2 constraint failure, 3 no sync peak.

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "mami/config.hpp"
#include "mami/linksim.hpp"
#include "mami/planner.hpp"
#include "mami/rng.hpp"
#include "mami/stats.hpp"
#include "mami/sync.hpp"

namespace {

using namespace mami;

constexpr int kExitOk = 0;
constexpr int kExitConfig = 1;
constexpr int kExitConstraint = 2;
constexpr int kExitNoPeak = 3;

struct CommonArgs {
    std::string config_path;
    std::string out_path;
    std::optional<long long> seed;
    std::vector<std::string> overrides;
    std::string schedule;
};

KeyValueConfig load_config(const CommonArgs& args) {
    KeyValueConfig cfg = KeyValueConfig::from_file(args.config_path);
    for (const auto& ov : args.overrides) cfg.set_override(ov);
    return cfg;
}

void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw ConfigError("cannot open output file " + path);
    f << text;
}

FrameSchedule schedule_from(const CommonArgs& args) {
    if (args.schedule.empty()) return default_frame();
    FrameSchedule s = FrameSchedule::parse(args.schedule);
    s.check();
    return s;
}

OfdmParams ofdm_from(KeyValueConfig& cfg) {
    OfdmParams p;
    p.fft_size = std::size_t(cfg.get_int("fft_size", 2048));
    p.used_subcarriers = std::size_t(cfg.get_int("used_subcarriers", 1200));
    p.cp_len = std::size_t(cfg.get_int("cp_len", 144));
    p.sample_rate_hz = cfg.get_double("sample_rate_hz", 30.72e6);
    p.symbol_duration_s = double(p.fft_size + p.cp_len) / p.sample_rate_hz;
    return p;
}

int cmd_plan(const CommonArgs& args) {
    KeyValueConfig cfg = load_config(args);
    if (cfg.empty()) throw ConfigError("plan: empty config");

    SystemParams p;
    p.m = std::size_t(cfg.get_int("m"));
    p.k = std::size_t(cfg.get_int("k"));
    p.ofdm = ofdm_from(cfg);
    p.n_ant = std::size_t(cfg.get_int("n_ant", 2));
    p.word_bytes = std::size_t(cfg.get_int("word_bytes", 3));
    p.word_bytes_ant = std::size_t(cfg.get_int("word_bytes_ant", 4));
    p.fc_hz = cfg.get_double("fc_hz", 3.7e9);

    HardwareProfile hw;
    hw.sdr_max_rate_Bps = cfg.get_double("sdr_max_rate_MBps", 830.0) * 1e6;
    hw.sdr_max_links = std::size_t(cfg.get_int("sdr_max_links", 15));
    hw.co_max_rate_Bps = cfg.get_double("co_max_rate_MBps", 2400.0) * 1e6;
    hw.co_max_links = std::size_t(cfg.get_int("co_max_links", 32));
    hw.rf_tx_delay_s = cfg.get_double("rf_tx_delay_us", 2.25) * 1e-6;
    hw.rf_rx_delay_s = cfg.get_double("rf_rx_delay_us", 2.25) * 1e-6;
    hw.fft_delay_s = cfg.get_double("fft_delay_us", 35.0) * 1e-6;

    std::optional<double> extras;
    if (cfg.has("host_extra_MBps")) extras = cfg.get_double("host_extra_MBps") * 1e6;

    const std::size_t searched_n_sub = max_subsystem_size(p, hw);
    const std::size_t searched_n_co = min_coprocessors(p, hw);
    const std::size_t n_sub = std::size_t(cfg.get_int("n_sub", std::int64_t(searched_n_sub)));
    const std::size_t n_co = std::size_t(cfg.get_int("n_co", std::int64_t(searched_n_co)));
    cfg.finish();

    PlanReport rep = validate(p, n_sub, n_co, hw, extras);
    rep.latency = latency_budget(schedule_from(args), p, hw);
    rep.annotations.push_back("search: max n_sub = " + std::to_string(searched_n_sub) +
                              ", min n_co = " + std::to_string(searched_n_co));
    char rate_note[96];
    std::snprintf(rate_note, sizeof rate_note, "detection matrix rate = %.3g /s",
                  detection_matrix_rate(p));
    rep.annotations.push_back(rate_note);

    const std::string text = format_report(rep);
    std::cout << text;
    if (!args.out_path.empty()) write_text_file(args.out_path, report_csv(rep));

    return rep.all_pass() && rep.latency->feasible ? kExitOk : kExitConstraint;
}

Detector detector_from(KeyValueConfig& cfg) {
    Detector d;
    const std::string scheme = cfg.get_string("scheme", "zf");
    if (scheme == "mrc" || scheme == "mrt")
        d.scheme = DetectScheme::MRC;
    else if (scheme == "zf")
        d.scheme = DetectScheme::ZF;
    else if (scheme == "rzf")
        d.scheme = DetectScheme::RZF;
    else
        throw ConfigError("unknown scheme '" + scheme + "'");
    const std::string engine = cfg.get_string("engine", "direct");
    if (engine == "direct")
        d.engine = InverseEngine::Direct;
    else if (engine == "qr")
        d.engine = InverseEngine::QR;
    else if (engine == "neumann")
        d.engine = InverseEngine::Neumann;
    else
        throw ConfigError("unknown engine '" + engine + "'");
    d.neumann_terms = std::size_t(cfg.get_int("neumann_terms", 3));
    return d;
}

SweepConfig sweep_from(KeyValueConfig& cfg, const std::optional<long long>& seed_override) {
    SweepConfig sc;
    sc.m = std::size_t(cfg.get_int("m"));
    sc.k = std::size_t(cfg.get_int("k"));
    Detector det = detector_from(cfg);
    const double k_over = double(sc.k);
    double beta = 0.0;
    if (cfg.has("beta")) {
        beta = cfg.get_double("beta");
    } else if (cfg.has("snr_hint_db")) {
        // MMSE-motivated default: K over the linear SNR hint
        beta = k_over / std::pow(10.0, cfg.get_double("snr_hint_db") / 10.0);
    }
    det.beta_dec = beta;
    sc.scheme_ul = det;
    sc.scheme_dl.engine = det.engine;
    sc.scheme_dl.neumann_terms = det.neumann_terms;
    sc.scheme_dl.beta_pre = beta;
    sc.scheme_dl.scheme = det.scheme == DetectScheme::MRC
                              ? PrecodeScheme::MRT
                              : (det.scheme == DetectScheme::ZF ? PrecodeScheme::ZF
                                                                : PrecodeScheme::RZF);

    const std::string mod = cfg.get_string("modulation", "qpsk");
    if (mod == "qpsk")
        sc.modulation = Modulation::QPSK;
    else if (mod == "qam16")
        sc.modulation = Modulation::QAM16;
    else if (mod == "qam64")
        sc.modulation = Modulation::QAM64;
    else
        throw ConfigError("unknown modulation '" + mod + "'");

    sc.gain_grid_db = cfg.get_double_list("gain_grid_db", {0.0});
    sc.bits_per_point = std::uint64_t(cfg.get_int("bits_per_point", 100000));
    sc.seed = std::uint64_t(seed_override.value_or(cfg.get_int("seed", 1)));

    const std::string chan = cfg.get_string("channel_mode", "flat");
    if (chan == "iid")
        sc.channel_mode = ChannelMode::IidPerSubcarrier;
    else if (chan == "flat")
        sc.channel_mode = ChannelMode::FlatBlock;
    else if (chan == "awgn")
        sc.channel_mode = ChannelMode::AwgnUnit;
    else
        throw ConfigError("unknown channel_mode '" + chan + "'");

    const std::string dir = cfg.get_string("direction", "ul");
    if (dir == "ul")
        sc.direction = SweepDirection::UL;
    else if (dir == "dl")
        sc.direction = SweepDirection::DL;
    else
        throw ConfigError("unknown direction '" + dir + "'");

    const std::string csi = cfg.get_string("csi_mode", "estimated");
    if (csi == "estimated")
        sc.csi_mode = CsiMode::Estimated;
    else if (csi == "perfect")
        sc.csi_mode = CsiMode::Perfect;
    else
        throw ConfigError("unknown csi_mode '" + csi + "'");

    const std::string pg = cfg.get_string("pilot_gain_mode", "sweep");
    if (pg == "sweep")
        sc.pilot_gain_mode = PilotGainMode::Sweep;
    else if (pg == "fixed")
        sc.pilot_gain_mode = PilotGainMode::Fixed;
    else
        throw ConfigError("unknown pilot_gain_mode '" + pg + "'");

    sc.ul_pilot_gain_db = cfg.get_double("ul_pilot_gain_db", 10.0);
    sc.noise_power = cfg.get_double("noise_power", 1.0);
    sc.doppler_hz = cfg.get_double("doppler_hz", 0.0);
    sc.used_subcarriers = std::size_t(cfg.get_int("used_subcarriers", 1200));
    if (cfg.has("ul_power_db")) sc.ul_power_db = cfg.get_double_list("ul_power_db");
    return sc;
}

int cmd_sweep(const CommonArgs& args) {
    KeyValueConfig cfg = load_config(args);
    SweepConfig sc = sweep_from(cfg, args.seed);
    cfg.finish();
    const FrameSchedule schedule = schedule_from(args);
    const auto records = ber_sweep(sc, schedule);

    std::string csv = "direction,gain_db,user,ber,bits\n";
    char buf[160];
    for (const auto& rec : records) {
        for (std::size_t u = 0; u < rec.per_user_ber.size(); u++) {
            std::snprintf(buf, sizeof buf, "%s,%g,%zu,%.10g,%llu\n",
                          rec.direction == SweepDirection::UL ? "UL" : "DL", rec.gain_db, u,
                          rec.per_user_ber[u],
                          static_cast<unsigned long long>(rec.bits_counted));
            csv += buf;
        }
    }
    if (args.out_path.empty())
        std::cout << csv;
    else
        write_text_file(args.out_path, csv);
    return kExitOk;
}

int cmd_simulate(const CommonArgs& args) {
    KeyValueConfig cfg = load_config(args);
    SweepConfig sc = sweep_from(cfg, args.seed);
    const double gain_db = cfg.get_double("gain_db", sc.gain_grid_db.front());
    cfg.finish();
    const FrameSchedule schedule = schedule_from(args);

    LinkState st = make_link_state(sc, rng::derive(sc.seed, {rng::kSweepPoint, 0, 0}));
    const auto outcomes = run_tdd_frame(st, schedule, gains_for_point(sc, gain_db));

    std::string csv = "symbol_index,type,bits,errors\n";
    char buf[96];
    for (std::size_t i = 0; i < outcomes.size(); i++) {
        std::uint64_t bits = 0, errs = 0;
        for (std::size_t u = 0; u < outcomes[i].per_user_bits.size(); u++) {
            bits += outcomes[i].per_user_bits[u];
            errs += outcomes[i].per_user_errors[u];
        }
        std::snprintf(buf, sizeof buf, "%zu,%c,%llu,%llu\n", i,
                      static_cast<char>(outcomes[i].type),
                      static_cast<unsigned long long>(bits),
                      static_cast<unsigned long long>(errs));
        csv += buf;
    }
    if (args.out_path.empty())
        std::cout << csv;
    else
        write_text_file(args.out_path, csv);
    return kExitOk;
}

std::vector<cplx> read_sample_file(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw ConfigError("sync: cannot open input file " + path);
    std::vector<cplx> out;
    double re, im;
    while (f.read(reinterpret_cast<char*>(&re), 8) && f.read(reinterpret_cast<char*>(&im), 8))
        out.emplace_back(re, im);
    if (out.empty()) throw ConfigError("sync: input file holds no samples");
    return out;
}

int cmd_sync(const CommonArgs& args) {
    KeyValueConfig cfg = load_config(args);
    PssConfig pss;
    pss.root = std::size_t(cfg.get_int("root", 25));
    pss.length = std::size_t(cfg.get_int("length", 63));
    pss.detection_threshold = cfg.get_double("threshold", 0.3);
    const double span = cfg.get_double("cfo_span_hz", 7.5e3);
    const std::size_t steps = std::size_t(cfg.get_int("cfo_steps", 19));
    pss.cfo_grid_hz = PssConfig::grid(span, steps);
    const double fs = cfg.get_double("sample_rate_hz", 1.92e6);

    const std::string mode = cfg.get_string("mode", "generate");
    std::vector<cplx> signal;
    if (mode == "file") {
        signal = read_sample_file(cfg.get_string("input"));
        cfg.finish();
    } else if (mode == "generate" || mode == "noise") {
        const double duration_ms = cfg.get_double("duration_ms", 10.0);
        const std::uint64_t seed =
            std::uint64_t(args.seed.value_or(cfg.get_int("seed", 1)));
        const std::size_t n = std::size_t(fs * duration_ms / 1000.0);
        const std::size_t offset = std::size_t(cfg.get_int("offset", 1234));
        const double cfo = cfg.get_double("cfo_hz", 0.0);
        const double snr_db = cfg.get_double("snr_db", 20.0);
        cfg.finish();

        rng::Stream noise(rng::derive(seed, {rng::kNoise}));
        signal.assign(n, cplx{});
        for (auto& v : signal) v = noise.cgauss();
        if (mode == "generate") {
            std::vector<cplx> rep = pss_time_replica(pss, fs);
            if (offset + rep.size() > n)
                throw ConfigError("sync: offset leaves no room for the sequence");
            // unit-energy replica scaled to the requested per-sample SNR
            const double amp =
                std::sqrt(std::pow(10.0, snr_db / 10.0) * double(rep.size()));
            for (std::size_t i = 0; i < rep.size(); i++)
                signal[offset + i] +=
                    amp * rep[i] * std::polar(1.0, 2.0 * M_PI * cfo * double(i) / fs);
        }
    } else {
        throw ConfigError("sync: unknown mode '" + mode + "'");
    }

    SyncResult res;
    try {
        res = acquire(signal, pss, fs);
    } catch (const NoPeak& e) {
        std::cerr << e.what() << "\n";
        return kExitNoPeak;
    }
    char buf[128];
    std::snprintf(buf, sizeof buf, "timing_offset,cfo_hz,peak_metric\n%zu,%g,%.6f\n",
                  res.timing_offset, res.cfo_hz, res.peak_metric);
    std::cout << buf;
    if (!args.out_path.empty()) write_text_file(args.out_path, buf);
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"massive MIMO baseband bench: planning and link simulation"};
    app.require_subcommand(1);

    CommonArgs args;
    auto add_common = [&](CLI::App* sub, bool schedule_opt) {
        sub->add_option("--config", args.config_path, "flat key=value config file")
            ->required();
        sub->add_option("--out", args.out_path, "output CSV path");
        sub->add_option("--seed", args.seed, "override the config seed");
        sub->add_option("--set", args.overrides, "override a config key (key=value)");
        if (schedule_opt)
            sub->add_option("--schedule", args.schedule,
                            "frame schedule letters (P/U/p/D/G)");
    };

    CLI::App* plan = app.add_subcommand("plan", "evaluate partitioning constraints");
    CLI::App* simulate = app.add_subcommand("simulate", "trace a single TDD frame");
    CLI::App* sweep = app.add_subcommand("sweep", "Monte-Carlo BER gain sweep");
    CLI::App* sync = app.add_subcommand("sync", "PSS acquisition");
    add_common(plan, true);
    add_common(simulate, true);
    add_common(sweep, true);
    add_common(sync, false);

    try {
        app.parse(argc, argv);
        if (plan->parsed()) return cmd_plan(args);
        if (simulate->parsed()) return cmd_simulate(args);
        if (sweep->parsed()) return cmd_sweep(args);
        if (sync->parsed()) return cmd_sync(args);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? kExitOk : kExitConfig;
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitConfig;
    }
    return kExitConfig;
}
