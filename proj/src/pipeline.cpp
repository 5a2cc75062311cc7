#include "hnf/pipeline.hpp"

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <numbers>

#include "hnf/sg_filter.hpp"

namespace hnf {

namespace fs = std::filesystem;

std::filesystem::path preset_dir() {
    if (const char* env = std::getenv("HNF_PRESET_DIR")) return env;
#ifdef HNF_PRESET_DIR
    return HNF_PRESET_DIR;
#else
    return "presets";
#endif
}

std::vector<std::string> PipelineConfig::preset_names() {
    return {"ring-sn5", "chain-sn6", "sixring-sn7", "tongue-sn3", "meanfield-sn10",
            "if-sn9"};
}

PipelineConfig PipelineConfig::preset(const std::string& name) {
    const fs::path path = preset_dir() / (name + ".json");
    if (!fs::exists(path))
        throw PipelineError(EXIT_MISSING_INPUT, "unknown preset or missing file: " +
                                                    path.string());
    return from_file(path.string());
}

PipelineConfig PipelineConfig::from_file(const std::string& path) {
    PipelineConfig cfg;
    cfg.raw = load_json_file(path);
    cfg.name = cfg.raw.value("name", fs::path(path).stem().string());
    cfg.kind = cfg.raw.value("kind", std::string("network"));

    if (cfg.kind == "network") {
        cfg.system = system_from_json(cfg.raw.at("system"));
        cfg.eps_res = cfg.system->eps_res;
    } else if (cfg.kind == "meanfield") {
        const auto& oa = cfg.raw.at("oa");
        EnsembleConfig ens;
        ens.Omega = oa.at("Omega").get<std::vector<double>>();
        ens.sigma = oa.at("sigma").get<std::vector<double>>();
        ens.mu = oa.at("mu").get<double>();
        ens.alpha = oa.at("alpha").get<double>();
        ens.adjacency = oa.at("adjacency").get<std::vector<std::vector<double>>>();
        ens.M = oa.value("M", 5000);
        ens.seed = oa.value("seed", 1);
        ens.validate();
        cfg.ensemble = ens;
        cfg.system = oa_build(ens.Omega, ens.sigma, ens.mu, ens.alpha, ens.adjacency);
        cfg.eps_res = cfg.raw.value("eps_res", 0.1);
        cfg.system->eps_res = cfg.eps_res;
    } else if (cfg.kind == "if") {
        const auto& j = cfg.raw.at("if");
        IFConfig ic;
        ic.F = j.at("F").get<std::vector<double>>();
        ic.A_thresh = j.value("A_thresh", 0.36);
        ic.B = j.value("B", 3.333);
        ic.K = j.value("K", 0.0);
        ic.tau = j.value("tau", 0.0);
        ic.offset = j.value("offset", 0.626);
        ic.adjacency = j.at("adjacency").get<std::vector<std::vector<double>>>();
        ic.validate();
        cfg.ifcfg = ic;
    } else {
        throw PipelineError(EXIT_MISSING_INPUT, "unknown config kind: " + cfg.kind);
    }

    if (cfg.raw.contains("sim")) {
        const auto& s = cfg.raw.at("sim");
        cfg.T = s.value("T", cfg.T);
        cfg.dt = s.value("dt", cfg.dt);
        cfg.transient = s.value("transient", cfg.transient);
        cfg.record_every = s.value("record_every", 1);
    }
    cfg.seed = cfg.raw.value("seed", 1);
    if (cfg.raw.contains("slow_phases"))
        cfg.slow_phases = cfg.raw.at("slow_phases").get<std::vector<std::vector<int>>>();
    return cfg;
}

void PipelineConfig::apply_full_scale() {
    full_scale = true;
    if (raw.contains("full_scale_sim")) {
        const auto& s = raw.at("full_scale_sim");
        T = s.value("T", T);
        dt = s.value("dt", dt);
        transient = s.value("transient", transient);
    }
}

namespace {

std::vector<Complex> default_z0(const NetworkSystem& sys) {
    const double r = std::sqrt(std::max(sys.lambda, 0.01));
    std::vector<Complex> z0;
    for (int k = 0; k < sys.n; ++k) z0.push_back(std::polar(0.9 * r, 0.7 * (k + 1)));
    return z0;
}

std::vector<std::vector<int>> recover_combos(const PipelineConfig& cfg, int n) {
    if (cfg.raw.contains("recover") && cfg.raw.at("recover").contains("combos")) {
        const auto& c = cfg.raw.at("recover").at("combos");
        if (c.is_string() && c.get<std::string>() == "full") return full_phase_family(n);
        return c.get<std::vector<std::vector<int>>>();
    }
    if (!cfg.slow_phases.empty()) return cfg.slow_phases;
    return full_phase_family(n);
}

Json fit_to_json(const FitResult& fit) {
    Json jf;
    jf["mse"] = fit.mse;
    jf["penalty"] = fit.penalty;
    jf["threshold"] = fit.threshold;
    jf["rank_warning"] = fit.rank_warning;
    Json feats = Json::array();
    for (std::size_t i = 0; i < fit.features.size(); ++i) {
        Json f;
        f["name"] = fit.features[i].name();
        f["coeff"] = fit.coeffs(static_cast<long>(i));
        f["active"] = fit.coeffs(static_cast<long>(i)) != 0.0;
        feats.push_back(std::move(f));
    }
    jf["features"] = std::move(feats);
    return jf;
}

void write_coeff_csv(const fs::path& path, const std::vector<FitResult>& fits,
                     const std::string& target_prefix) {
    std::ofstream out(path);
    out << "target,feature,coefficient\n";
    out.precision(10);
    for (std::size_t k = 0; k < fits.size(); ++k)
        for (std::size_t i = 0; i < fits[k].features.size(); ++i)
            out << target_prefix << k + 1 << "," << fits[k].features[i].name() << ","
                << fits[k].coeffs(static_cast<long>(i)) << "\n";
}

// -------- derive --------

Json nonres_to_json(const NonresonanceReport& rep) {
    Json out = Json::array();
    for (const auto& e : rep.entries) {
        Json je;
        je["k"] = e.k + 1;
        je["l"] = e.l + 1;
        je["d"] = {int(e.mono.s[0]), int(e.mono.t[0]), int(e.mono.s[1]), int(e.mono.t[1])};
        je["value"] = e.value;
        je["pass"] = e.pass;
        out.push_back(std::move(je));
    }
    return out;
}

std::string mono_str(const Exponents& e) {
    std::string s;
    for (int j = 0; j < e.n(); ++j) {
        for (int r = 0; r < e.s[j]; ++r) s += "u" + std::to_string(j + 1);
        for (int r = 0; r < e.t[j]; ++r) s += "~u" + std::to_string(j + 1);
    }
    return s.empty() ? "1" : s;
}

}  // namespace

std::vector<std::string> cmd_derive(const PipelineConfig& cfg, const fs::path& out) {
    if (!cfg.system)
        throw PipelineError(EXIT_MISSING_INPUT,
                            "derive needs a network or meanfield configuration");
    fs::create_directories(out);
    const NetworkSystem& sys = *cfg.system;
    std::vector<std::string> artifacts;

    const auto nonres = check_nonresonance(sys, sys.eps_res);
    save_json_file((out / "nonresonance.json").string(), nonres_to_json(nonres));
    artifacts.push_back("nonresonance.json");

    const bool meanfield = cfg.kind == "meanfield";
    if (!meanfield && !nonres.all_pass()) {
        std::string msg = "pairwise non-resonance violated:";
        for (const auto& e : nonres.failures())
            msg += " [k=" + std::to_string(e.k + 1) + " l=" + std::to_string(e.l + 1) +
                   " value=" + std::to_string(e.value) + "]";
        throw PipelineError(EXIT_DERIVE_FAILURE, msg);
    }

    Hypernetwork hn;
    double r0;
    Json diag;
    try {
        if (meanfield) {
            hn = mean_field_normal_form(sys, sys.eps_res);
            r0 = oa_amplitudes(cfg.ensemble->sigma, cfg.ensemble->mu).front();
            const auto shift = linear_frequency_shift(sys);
            diag["frequency_shift"] = shift.shift;
            diag["shifted_omega"] = shift.shifted;
            diag["degenerate_matching"] = shift.degenerate;
        } else {
            const auto P = compute_P(sys, sys.eps_res);
            const auto st = compute_second_transform(sys, P);
            const auto cancel = verify_cancellation(sys);
            hn = algorithm1(sys, sys.eps_res);
            r0 = std::sqrt(sys.lambda);
            diag["residual_P"] = cancel.residual_P;
            diag["residual_Q"] = cancel.residual_Q;
            diag["alpha1_below_truncation"] = cancel.alpha1_below;
            diag["alpha2_mismatch"] = cancel.alpha2_mismatch;
            Json jp = Json::array(), jq = Json::array();
            for (int k = 0; k < sys.n; ++k) {
                jp.push_back(poly_to_json(P[k]));
                jq.push_back(poly_to_json(st.Q[k]));
            }
            save_json_file((out / "transform_P.json").string(), jp);
            save_json_file((out / "transform_Q.json").string(), jq);
            artifacts.push_back("transform_P.json");
            artifacts.push_back("transform_Q.json");
        }
    } catch (const ResonantTermError& err) {
        throw PipelineError(EXIT_DERIVE_FAILURE, err.what());
    }

    save_json_file((out / "hyperedges.json").string(), hypernetwork_to_json(hn));
    artifacts.push_back("hyperedges.json");

    const PhaseModel pm = polar_reduce_r0(hn, sys, r0, sys.eps_res);
    Json jpm;
    jpm["n"] = pm.n;
    jpm["Omega"] = pm.Omega;
    jpm["r0"] = r0;
    Json jterms = Json::array();
    for (const auto& t : pm.terms) {
        Json jt;
        jt["node"] = t.node + 1;
        jt["m"] = t.m;
        jt["sin"] = t.sin_c;
        jt["cos"] = t.cos_c;
        jterms.push_back(std::move(jt));
    }
    jpm["terms"] = std::move(jterms);
    jpm["diagnostics"] = diag;
    save_json_file((out / "phase_model.json").string(), jpm);
    artifacts.push_back("phase_model.json");

    std::ofstream rep(out / "derive_report.txt");
    rep << "configuration: " << cfg.name << "\n";
    rep << "pairwise non-resonance min margin: " << nonres.min_margin() << "\n";
    if (!diag.empty()) rep << "diagnostics: " << diag.dump() << "\n";
    rep << "resonant hyperedges (du_k/dt -= alpha^2 * coeff * monomial):\n";
    for (const auto& e : hn.edges)
        rep << "  node " << e.node + 1 << "  " << mono_str(e.mono) << "  coeff ("
            << e.coeff.real() << (e.coeff.imag() < 0 ? " - " : " + ")
            << std::abs(e.coeff.imag()) << "i)  via " << (e.family == '1' ? "1G" : "2G")
            << "(" << e.l + 1 << "," << e.p + 1 << ")\n";
    rep << "phase model terms (dtheta_k/dt = Omega_k + sin_c sin(m.theta) + cos_c cos(m.theta)):\n";
    for (const auto& t : pm.terms) {
        rep << "  node " << t.node + 1 << "  m = [";
        for (std::size_t i = 0; i < t.m.size(); ++i)
            rep << t.m[i] << (i + 1 < t.m.size() ? "," : "");
        rep << "]  sin " << t.sin_c << "  cos " << t.cos_c << "\n";
    }
    artifacts.push_back("derive_report.txt");
    return artifacts;
}

// -------- simulate --------

std::vector<std::string> cmd_simulate(const PipelineConfig& cfg, const fs::path& out,
                                      int threads) {
    fs::create_directories(out);
    std::vector<std::string> artifacts;
    Json sidecar;
    sidecar["config"] = cfg.name;
    sidecar["kind"] = cfg.kind;
    sidecar["dt"] = cfg.dt;
    sidecar["T"] = cfg.T;
    sidecar["transient"] = cfg.transient;
    sidecar["seed"] = cfg.seed;
    sidecar["record_every"] = cfg.record_every;

    try {
        if (cfg.raw.contains("tongue")) {
            const auto& tj = cfg.raw.at("tongue");
            double T = tj.value("T", 5000.0), transient = tj.value("transient", 1000.0);
            const double dt = tj.value("dt", 0.01);
            if (cfg.full_scale && cfg.raw.contains("full_scale_tongue")) {
                T = cfg.raw.at("full_scale_tongue").value("T", T);
                transient = cfg.raw.at("full_scale_tongue").value("transient", transient);
            }
            std::vector<double> deltas, alphas;
            for (double d = tj.value("delta_min", -0.2);
                 d <= tj.value("delta_max", 0.2) + 1e-12; d += tj.value("delta_step", 0.01))
                deltas.push_back(std::round(d * 1e9) / 1e9);
            for (double a = tj.value("alpha_min", 0.0);
                 a <= tj.value("alpha_max", 0.5) + 1e-12; a += tj.value("alpha_step", 0.025))
                alphas.push_back(std::round(a * 1e9) / 1e9);
            const auto grid =
                sweep_sync_tongue(*cfg.system, deltas, alphas, T, dt, transient, threads);
            std::ofstream tcsv(out / "tongue.csv");
            tcsv << "delta,alpha,E\n";
            tcsv.precision(10);
            for (std::size_t i = 0; i < grid.delta.size(); ++i)
                for (std::size_t j = 0; j < grid.alpha.size(); ++j)
                    tcsv << grid.delta[i] << "," << grid.alpha[j] << "," << grid.E[i][j]
                         << "\n";
            artifacts.push_back("tongue.csv");

            const auto fit = fit_tongue_boundary(grid, tj.value("fit_delta_min", 0.01),
                                                 tj.value("fit_delta_max", 0.2),
                                                 tj.value("rel_cut", 0.1));
            Json jf;
            jf["c"] = fit.c;
            jf["r2"] = fit.r2;
            jf["delta"] = fit.delta;
            jf["alpha_c"] = fit.alpha_c;
            save_json_file((out / "tongue_fit.json").string(), jf);
            artifacts.push_back("tongue_fit.json");
        } else if (cfg.kind == "network" || cfg.kind == "meanfield") {
            const auto z0 = default_z0(*cfg.system);
            const auto traj = integrate_network(*cfg.system, z0, cfg.T, cfg.dt,
                                                cfg.record_every, cfg.transient);
            save_csv((out / "trajectory.csv").string(), traj, "z");
            artifacts.push_back("trajectory.csv");
            if (cfg.kind == "meanfield" && cfg.raw.contains("micro_sim")) {
                const auto& ms = cfg.raw.at("micro_sim");
                EnsembleConfig ens = *cfg.ensemble;
                ens.seed = cfg.seed;
                const auto micro = integrate_microscopic(
                    ens, ms.value("T", 400.0), ms.value("dt", 0.01),
                    ms.value("record_every", 10), ms.value("transient", 200.0));
                save_csv((out / "micro_trajectory.csv").string(), micro, "z");
                artifacts.push_back("micro_trajectory.csv");
            }
        } else if (cfg.kind == "if") {
            std::vector<double> v0 =
                cfg.raw.at("if").value("v0", std::vector<double>(cfg.ifcfg->n(), 0.5));
            const auto traj = integrate_if_ring(*cfg.ifcfg, v0, cfg.T, cfg.dt,
                                                cfg.record_every, cfg.transient);
            save_csv((out / "trajectory.csv").string(), traj, "v");
            artifacts.push_back("trajectory.csv");
        }
    } catch (const DivergenceError& err) {
        throw PipelineError(EXIT_DIVERGENCE, err.what());
    }

    save_json_file((out / "sim_meta.json").string(), sidecar);
    artifacts.push_back("sim_meta.json");
    return artifacts;
}

// -------- recover --------

namespace {

PhaseSeries load_phases(const PipelineConfig& cfg, const fs::path& out) {
    if (cfg.kind == "if") {
        auto traj = load_real_csv((out / "trajectory.csv").string());
        traj.dt = cfg.dt * cfg.record_every;
        traj.transient_cut = static_cast<std::size_t>(cfg.transient / traj.dt);
        return extract_phase_peaks(traj);
    }
    auto traj = load_complex_csv((out / "trajectory.csv").string());
    traj.dt = cfg.dt * cfg.record_every;
    traj.transient_cut = static_cast<std::size_t>(cfg.transient / traj.dt);
    return extract_phase_polar(traj);
}

}  // namespace

std::vector<std::string> cmd_recover(const PipelineConfig& cfg, const fs::path& out) {
    if (!fs::exists(out / "trajectory.csv")) {
        if (cfg.raw.contains("tongue")) return {};  // sweep presets have no recovery
        throw PipelineError(EXIT_MISSING_INPUT,
                            "recover: missing trajectory.csv (run simulate first)");
    }
    const Json rec = cfg.raw.value("recover", Json::object());
    const std::string method = rec.value("method", std::string("stlsq"));
    const int drift_degree = rec.value("drift_degree", 0);
    const int harmonics = rec.value("harmonics", 1);
    const int row_stride = rec.value("row_stride", 1);

    PhaseSeries ps = load_phases(cfg, out);

    // detrend against resonance-constrained frequencies when configured
    std::vector<double> Omega_hat = fit_slopes(ps);
    if (rec.contains("detrend_constraints")) {
        const auto cons = rec.at("detrend_constraints").get<std::vector<std::vector<int>>>();
        Omega_hat = estimate_resonant_frequencies(ps, cons);
        ps = detrend(ps, Omega_hat);
    }

    const auto combos = recover_combos(cfg, ps.n());
    const BasisLibrary lib = build_library(ps, combos, drift_degree, harmonics, row_stride);

    const double dt_eff = ps.dt;
    const int sg_window =
        rec.contains("sg_window_s")
            ? 2 * static_cast<int>(rec.at("sg_window_s").get<double>() / (2.0 * dt_eff)) + 1
            : 0;

    std::vector<FitResult> fits;
    for (int k = 0; k < ps.n(); ++k) {
        auto dtheta = differentiate(ps.theta[k], dt_eff);
        if (sg_window > 2) dtheta = savitzky_golay(dtheta, sg_window, 1);
        std::vector<double> target;
        target.reserve(lib.rows());
        for (std::size_t i = ps.transient_cut; i < ps.samples(); i += row_stride)
            target.push_back(dtheta[i]);
        if (method == "lasso")
            fits.push_back(lasso(lib, target, rec.value("penalty", 1e-3)));
        else if (method == "lasso_auto")
            fits.push_back(lasso_auto(lib, target, rec.value("mse_factor", 1.2), 50, true,
                                      rec.value("relative_to_explainable", false)));
        else
            fits.push_back(stlsq(lib, target, rec.value("threshold", 1e-4)));
    }

    Json jf;
    jf["method"] = method;
    jf["Omega_hat"] = Omega_hat;
    Json jnodes = Json::array();
    for (const auto& f : fits) jnodes.push_back(fit_to_json(f));
    jf["nodes"] = std::move(jnodes);
    Json jamp = Json::array();
    for (std::size_t k = 0; k < fits.size(); ++k)
        for (const auto& ta : triplet_amplitudes(fits[k])) {
            Json ja;
            ja["node"] = k + 1;
            ja["combo"] = ta.combo;
            ja["harmonic"] = ta.harmonic;
            ja["H"] = ta.amplitude;
            jamp.push_back(std::move(ja));
        }
    jf["triplet_amplitudes"] = std::move(jamp);
    save_json_file((out / "fits.json").string(), jf);
    write_coeff_csv(out / "coefficients.csv", fits, "theta");

    std::vector<std::string> artifacts{"fits.json", "coefficients.csv"};

    // slow-phase recovery
    if (!cfg.slow_phases.empty() && cfg.raw.contains("slow_recover")) {
        const Json srec = cfg.raw.at("slow_recover");
        const int swin = srec.contains("rolling_window_s")
                             ? static_cast<int>(srec.at("rolling_window_s").get<double>() /
                                                dt_eff)
                             : 0;
        std::vector<std::vector<double>> channels;
        std::vector<std::vector<double>> targets;
        for (const auto& combo : cfg.slow_phases) {
            auto phi = phase_combination(ps, combo);
            phi.erase(phi.begin(),
                      phi.begin() + static_cast<std::ptrdiff_t>(ps.transient_cut));
            auto dphi = differentiate(phi, dt_eff);
            if (swin > 1) {
                phi = rolling_mean(phi, swin);
                dphi = rolling_mean(dphi, swin);
            }
            channels.push_back(std::move(phi));
            targets.push_back(std::move(dphi));
        }
        const auto slow_lib = build_library_from_channels(
            channels, dt_eff, 0, srec.value("harmonics", 1), &cfg.slow_phases);
        std::vector<FitResult> sfits;
        for (const auto& target : targets) {
            if (srec.value("method", std::string("stlsq")) == "lasso")
                sfits.push_back(lasso(slow_lib, target, srec.value("penalty", 1e-5)));
            else
                sfits.push_back(stlsq(slow_lib, target, srec.value("threshold", 1e-4)));
        }
        Json js = Json::array();
        for (const auto& f : sfits) js.push_back(fit_to_json(f));
        save_json_file((out / "slow_fits.json").string(), js);
        write_coeff_csv(out / "slow_coefficients.csv", sfits, "phi");
        artifacts.push_back("slow_fits.json");
        artifacts.push_back("slow_coefficients.csv");
    }
    return artifacts;
}

// -------- predict --------

std::vector<std::string> cmd_predict(const PipelineConfig& cfg, const fs::path& out) {
    if (cfg.slow_phases.empty()) return {};
    if (!fs::exists(out / "trajectory.csv"))
        throw PipelineError(EXIT_MISSING_INPUT, "predict: missing trajectory.csv");
    const PhaseSeries ps = load_phases(cfg, out);
    const double dt_eff = ps.dt;

    const Json srec = cfg.raw.value("slow_recover", Json::object());
    const int swin =
        srec.contains("rolling_window_s")
            ? static_cast<int>(srec.at("rolling_window_s").get<double>() / dt_eff)
            : 0;

    std::vector<std::vector<double>> phi;
    for (const auto& combo : cfg.slow_phases) {
        auto ch = phase_combination(ps, combo);
        ch.erase(ch.begin(), ch.begin() + static_cast<std::ptrdiff_t>(ps.transient_cut));
        if (swin > 1) ch = rolling_mean(ch, swin);
        phi.push_back(std::move(ch));
    }

    const auto fit = fit_slow_phase(phi, dt_eff, cfg.slow_phases);

    std::ofstream csv(out / "prediction.csv");
    csv << "t";
    for (std::size_t c = 0; c < phi.size(); ++c)
        csv << ",phi" << c + 1 << "_data,phi" << c + 1 << "_pred";
    csv << "\n";
    csv.precision(10);
    for (std::size_t i = 0; i < phi.front().size(); ++i) {
        csv << static_cast<double>(i) * dt_eff;
        for (std::size_t c = 0; c < phi.size(); ++c)
            csv << "," << phi[c][i] << "," << fit.prediction.channels[c][i];
        csv << "\n";
    }

    Json jp;
    jp["Omega"] = fit.system.Omega;
    jp["a"] = fit.system.a;
    jp["b"] = fit.system.b;
    jp["phi0"] = fit.phi0;
    jp["mse"] = fit.mse;
    Json errs = Json::array();
    for (std::size_t c = 0; c < phi.size(); ++c)
        errs.push_back(prediction_cycle_error(phi[c], fit.prediction.channels[c]));
    jp["per_cycle_error"] = errs;
    save_json_file((out / "predict.json").string(), jp);
    return {"prediction.csv", "predict.json"};
}

// -------- pipeline / report --------

int cmd_pipeline(const PipelineConfig& cfg, const fs::path& out, int threads) {
    fs::create_directories(out);
    Json index;
    index["config"] = cfg.name;
    index["kind"] = cfg.kind;
    Json status;
    status["ok"] = true;
    try {
        if (cfg.system) {
            Json files = Json::array();
            for (auto& f : cmd_derive(cfg, out)) files.push_back(f);
            index["derive"] = files;
        }
        {
            Json files = Json::array();
            for (auto& f : cmd_simulate(cfg, out, threads)) files.push_back(f);
            index["simulate"] = files;
        }
        {
            Json files = Json::array();
            for (auto& f : cmd_recover(cfg, out)) files.push_back(f);
            index["recover"] = files;
        }
        {
            Json files = Json::array();
            for (auto& f : cmd_predict(cfg, out)) files.push_back(f);
            index["predict"] = files;
        }
        Json metrics;
        if (fs::exists(out / "predict.json"))
            metrics["per_cycle_error"] =
                load_json_file((out / "predict.json").string()).at("per_cycle_error");
        if (fs::exists(out / "tongue_fit.json")) {
            const auto tf = load_json_file((out / "tongue_fit.json").string());
            metrics["tongue_c"] = tf.at("c");
            metrics["tongue_r2"] = tf.at("r2");
        }
        if (fs::exists(out / "fits.json")) {
            const auto f = load_json_file((out / "fits.json").string());
            metrics["Omega_hat"] = f.value("Omega_hat", Json::array());
            metrics["triplet_amplitudes"] = f.value("triplet_amplitudes", Json::array());
        }
        index["metrics"] = metrics;
        save_json_file((out / "index.json").string(), index);
        save_json_file((out / "status.json").string(), status);
        return EXIT_OK;
    } catch (const PipelineError& err) {
        status["ok"] = false;
        status["error"] = err.what();
        status["exit_code"] = err.exit_code;
        save_json_file((out / "status.json").string(), status);
        save_json_file((out / "index.json").string(), index);
        std::cerr << "pipeline failed: " << err.what() << "\n";
        return err.exit_code;
    }
}

namespace {

void write_svg_overlay(const fs::path& path, const std::vector<double>& t,
                       const std::vector<std::vector<double>>& series,
                       const std::vector<std::string>& labels) {
    const double W = 900, H = 360, ML = 60, MR = 20, MT = 20, MB = 40;
    double ymin = 1e300, ymax = -1e300;
    for (const auto& s : series)
        for (double v : s) {
            ymin = std::min(ymin, v);
            ymax = std::max(ymax, v);
        }
    if (ymax <= ymin) ymax = ymin + 1.0;
    const double tmax = t.empty() ? 1.0 : t.back();
    auto X = [&](double tv) { return ML + (W - ML - MR) * tv / tmax; };
    auto Y = [&](double yv) { return H - MB - (H - MT - MB) * (yv - ymin) / (ymax - ymin); };

    const char* colors[] = {"#1f77b4", "#ff7f0e", "#2ca02c", "#d62728"};
    std::ofstream svg(path);
    svg << "<svg xmlns='http://www.w3.org/2000/svg' width='" << W << "' height='" << H
        << "'>\n";
    svg << "<rect x='" << ML << "' y='" << MT << "' width='" << W - ML - MR << "' height='"
        << H - MT - MB << "' fill='none' stroke='black'/>\n";
    const std::size_t stride = std::max<std::size_t>(1, t.size() / 2000);
    for (std::size_t s = 0; s < series.size(); ++s) {
        svg << "<polyline fill='none' stroke='" << colors[s % 4] << "' stroke-width='1.2'"
            << (s % 2 == 1 ? " stroke-dasharray='6,4'" : "") << " points='";
        for (std::size_t i = 0; i < series[s].size(); i += stride)
            svg << X(t[i]) << "," << Y(series[s][i]) << " ";
        svg << "'/>\n";
        svg << "<text x='" << ML + 10 + 160 * s << "' y='" << MT + 16 << "' fill='"
            << colors[s % 4] << "' font-size='13'>" << labels[s] << "</text>\n";
    }
    svg << "<text x='" << W / 2 << "' y='" << H - 8 << "' font-size='13'>t (s)</text>\n";
    svg << "</svg>\n";
}

}  // namespace

int cmd_report(const fs::path& artifacts) {
    if (!fs::exists(artifacts / "index.json")) {
        std::cerr << "report: no index.json under " << artifacts << "\n";
        return EXIT_MISSING_INPUT;
    }
    bool produced = false;
    if (fs::exists(artifacts / "prediction.csv")) {
        std::ifstream in(artifacts / "prediction.csv");
        std::string line;
        std::getline(in, line);
        const int ncols = static_cast<int>(std::count(line.begin(), line.end(), ',')) + 1;
        const int nphi = (ncols - 1) / 2;
        std::vector<double> t;
        std::vector<std::vector<double>> cols(ncols - 1);
        while (std::getline(in, line)) {
            std::stringstream ss(line);
            std::string cell;
            std::getline(ss, cell, ',');
            t.push_back(std::stod(cell));
            for (int c = 0; c < ncols - 1; ++c) {
                std::getline(ss, cell, ',');
                cols[c].push_back(std::stod(cell));
            }
        }
        for (int p = 0; p < nphi; ++p) {
            write_svg_overlay(
                artifacts / ("overlay_phi" + std::to_string(p + 1) + ".svg"), t,
                {cols[2 * p], cols[2 * p + 1]},
                {"phi" + std::to_string(p + 1) + " data",
                 "phi" + std::to_string(p + 1) + " prediction"});
        }
        produced = true;
    }
    if (fs::exists(artifacts / "tongue.csv")) {
        fs::copy_file(artifacts / "tongue.csv", artifacts / "tongue_heatmap.csv",
                      fs::copy_options::overwrite_existing);
        produced = true;
    }
    if (fs::exists(artifacts / "coefficients.csv")) produced = true;
    if (!produced) {
        std::cerr << "report: no plottable artifacts found\n";
        return EXIT_MISSING_INPUT;
    }
    return EXIT_OK;
}

}  // namespace hnf
