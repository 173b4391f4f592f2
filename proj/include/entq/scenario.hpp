// scenario.hpp
// Built-in scenarios, measurement simulation, two-qubit tomography, scenario
// file ingestion and report emission.

#pragma once

#include "entq/evidence.hpp"

#include <json.hpp>

#include <array>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace entq {

inline constexpr std::string_view scenario_schema_version = "1";
inline constexpr std::string_view library_version = "0.1.0";

inline double trace_distance(const DensityMatrix& a, const DensityMatrix& b) {
    if (!(a.dims() == b.dims())) throw DimensionError("trace_distance: dims differ");
    const ComplexMatrix diff = a.matrix() - b.matrix();
    double d = 0.0;
    for (double lam : hermitian_eigs(diff, 1e300).values) d += std::abs(lam);
    return 0.5 * d;
}

// ---------------------------------------------------------------------------
// Paper scenarios as constructors.

// Two-party reduction of the GHZ state: (|00><00| + |11><11|) / 2.
inline DensityMatrix ghz_reduction() {
    const DensityMatrix full = pure_density(ghz());
    ComplexMatrix red = partial_trace(full.matrix(), full.dims(), {0, 1});
    red = (red + red.adjoint()) * cplx{0.5, 0.0};
    return DensityMatrix(std::move(red), DimsSpec{2, 2});
}

// Single photon after a 50:50 beam splitter, modes truncated to {0,1}
// photons: (|0>|1> + |1>|0>) / sqrt(2).
inline StateVector beam_splitter_photon() {
    const double r = 1.0 / std::sqrt(2.0);
    return StateVector({0.0, r, r, 0.0}, DimsSpec{2, 2});
}

struct CatVariant {
    bool mixed;
    double phi; // ignored when mixed

    static CatVariant pure(double phi) { return {false, phi}; }
    static CatVariant dephased() { return {true, 0.0}; }
};

inline const std::array<std::string, 4>& cat_outcome_labels() {
    static const std::array<std::string, 4> labels = {
        "alive&intact", "alive&decayed", "dead&intact", "dead&decayed"};
    return labels;
}

// The paper's single joint measurement: dead/alive x decayed/intact counts.
// Outcomes 2 and 3 have probability exactly zero in both variants.
inline std::array<long long, 4> simulate_cat_experiment(const CatVariant& variant,
                                                        long long shots,
                                                        std::uint64_t seed) {
    const DensityMatrix rho =
        variant.mixed ? cat_mixed() : pure_density(cat_pure(variant.phi));
    const auto probs = basis_probabilities(rho, ComplexMatrix::identity(4));
    const auto counts = sample_multinomial(probs, shots, seed);
    return {counts[0], counts[1], counts[2], counts[3]};
}

// ---------------------------------------------------------------------------
// Two-qubit tomography by linear inversion.

struct TomographySetting {
    std::string basis; // two letters over {X,Y,Z}
    std::array<long long, 4> counts{};
};

struct TomographyResult {
    DensityMatrix estimate;
    std::vector<TomographySetting> settings;
};

// Measure rho in each product-Pauli setting, invert the measured Pauli
// expectations linearly and project to the nearest valid density matrix
// (negative eigenvalues clipped, trace renormalized). Unmeasured Pauli
// expectations enter as zero, so a computational-basis-only protocol pins the
// diagonal and nothing else.
inline TomographyResult tomography_two_qubit(const DensityMatrix& rho,
                                             const std::vector<std::string>& settings,
                                             long long shots_per_setting,
                                             std::uint64_t seed) {
    if (!(rho.dims() == DimsSpec{2, 2}))
        throw DimensionError("tomography_two_qubit: 2x2 dims required");
    if (settings.empty())
        throw ValidationError("tomography_two_qubit: no measurement settings");

    const std::string letters = "IXYZ";
    // est[p][q] accumulates <sigma_p x sigma_q>; counts how many settings
    // contributed so repeated settings average.
    double est[4][4] = {};
    int votes[4][4] = {};
    est[0][0] = 1.0;
    votes[0][0] = 1;

    TomographyResult out{rho, {}}; // placeholder estimate, replaced below
    out.settings.clear();

    std::uint64_t stream = 0;
    for (const auto& s : settings) {
        if (s.size() != 2 || letters.find(s[0]) == std::string::npos ||
            letters.find(s[1]) == std::string::npos || s[0] == 'I' || s[1] == 'I')
            throw ParseError("tomography setting must be two letters over {X,Y,Z}: " + s);
        const ComplexMatrix basis =
            kron(pauli_eigenbasis(s[0]), pauli_eigenbasis(s[1]));
        const auto probs = basis_probabilities(rho, basis);
        const auto counts = sample_multinomial(probs, shots_per_setting, seed, stream++);

        const double inv = 1.0 / static_cast<double>(shots_per_setting);
        auto sign = [](std::size_t bit) { return bit == 0 ? 1.0 : -1.0; };
        double e_ab = 0.0, e_a = 0.0, e_b = 0.0;
        for (std::size_t k = 0; k < 4; ++k) {
            const double f = static_cast<double>(counts[k]) * inv;
            e_ab += sign(k >> 1) * sign(k & 1) * f;
            e_a += sign(k >> 1) * f;
            e_b += sign(k & 1) * f;
        }
        const std::size_t pa = letters.find(s[0]);
        const std::size_t pb = letters.find(s[1]);
        est[pa][pb] += e_ab;
        ++votes[pa][pb];
        est[pa][0] += e_a;
        ++votes[pa][0];
        est[0][pb] += e_b;
        ++votes[0][pb];

        out.settings.push_back({s, {counts[0], counts[1], counts[2], counts[3]}});
    }

    ComplexMatrix recon(4, 4);
    for (std::size_t p = 0; p < 4; ++p)
        for (std::size_t q = 0; q < 4; ++q) {
            if (votes[p][q] == 0) continue;
            const double e = est[p][q] / votes[p][q];
            recon += kron(pauli_matrix(letters[p]), pauli_matrix(letters[q])) *
                     cplx{0.25 * e, 0.0};
        }

    out.estimate = DensityMatrix::project_to_valid(recon, DimsSpec{2, 2});
    return out;
}

// ---------------------------------------------------------------------------
// Scenario description and execution.

struct SimulationSpec {
    std::string basis; // product Pauli basis, e.g. "ZZ"
    long long shots = 1000000;
    std::uint64_t seed = 0;
};

struct TomographySpec {
    std::vector<std::string> settings;
    long long shots = 100000;
    std::uint64_t seed = 0;
};

struct Scenario {
    std::string name;
    DimsSpec dims;
    std::optional<StateVector> source_vector;
    std::optional<DensityMatrix> source_state;
    ConstraintSet constraints;
    std::vector<SimulationSpec> simulations;
    TomographySpec tomography;
    std::vector<std::string> tasks;
    OptimizerOptions opts;
};

namespace detail {

inline nlohmann::json matrix_to_json(const ComplexMatrix& m) {
    nlohmann::json re = nlohmann::json::array(), im = nlohmann::json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        nlohmann::json rrow = nlohmann::json::array(), irow = nlohmann::json::array();
        for (std::size_t j = 0; j < m.cols(); ++j) {
            rrow.push_back(m(i, j).real());
            irow.push_back(m(i, j).imag());
        }
        re.push_back(rrow);
        im.push_back(irow);
    }
    return {{"re", re}, {"im", im}};
}

inline ComplexMatrix matrix_from_json(const nlohmann::json& j) {
    if (!j.contains("re") || !j.contains("im"))
        throw ParseError("matrix needs 're' and 'im' grids");
    const auto& re = j.at("re");
    const auto& im = j.at("im");
    const std::size_t rows = re.size();
    if (rows == 0 || im.size() != rows)
        throw ParseError("matrix grids empty or of differing row counts");
    const std::size_t cols = re.at(0).size();
    ComplexMatrix m(rows, cols);
    for (std::size_t i = 0; i < rows; ++i) {
        if (re.at(i).size() != cols || im.at(i).size() != cols)
            throw ParseError("matrix grids are ragged");
        for (std::size_t j2 = 0; j2 < cols; ++j2)
            m(i, j2) = cplx{re.at(i).at(j2).get<double>(),
                            im.at(i).at(j2).get<double>()};
    }
    return m;
}

inline Observable observable_from_json(const nlohmann::json& j) {
    if (j.is_string()) return pauli_observable(j.get<std::string>());
    if (j.is_object()) return Observable(matrix_from_json(j), "matrix");
    throw ParseError("observable must be a Pauli string or a re/im matrix");
}

inline std::vector<Constraint> pauli_tomography_constraints(const DensityMatrix& rho,
                                                            double tolerance) {
    const std::string letters = "IXYZ";
    std::vector<Constraint> out;
    for (char a : letters)
        for (char b : letters) {
            if (a == 'I' && b == 'I') continue;
            Observable obs = pauli_observable(std::string{a, b});
            const double v = expectation(rho, obs);
            out.emplace_back(std::move(obs), v, tolerance);
        }
    return out;
}

} // namespace detail

inline std::vector<std::string> default_pauli_settings() {
    std::vector<std::string> s;
    for (char a : {'X', 'Y', 'Z'})
        for (char b : {'X', 'Y', 'Z'}) s.push_back(std::string{a, b});
    return s;
}

inline std::vector<std::string> builtin_scenario_names() {
    return {"cat", "cat-neutrino", "crypto-phi-plus", "crypto-ghz-eve",
            "beam-splitter"};
}

inline Scenario builtin_scenario(const std::string& name) {
    Scenario s;
    s.name = name;
    if (name == "cat") {
        s.dims = DimsSpec{2, 2};
        s.source_state = cat_mixed();
        s.constraints.dims = s.dims;
        s.constraints.constraints.emplace_back(pauli_observable("ZZ"), 1.0, 1e-9);
        s.constraints.constraints.emplace_back(pauli_observable("ZI"), 0.0, 1e-9);
        s.constraints.constraints.emplace_back(pauli_observable("IZ"), 0.0, 1e-9);
        s.simulations.push_back({"ZZ", 1000000, 0});
        s.tasks = {"simulate", "assess"};
    } else if (name == "cat-neutrino") {
        s.dims = DimsSpec{2, 2, 2};
        s.source_vector = ghz();
        s.source_state = pure_density(*s.source_vector);
        s.constraints.dims = DimsSpec{2, 2};
        s.constraints.constraints.emplace_back(pauli_observable("ZZ"), 1.0, 1e-9);
        s.constraints.constraints.emplace_back(pauli_observable("ZI"), 0.0, 1e-9);
        s.constraints.constraints.emplace_back(pauli_observable("IZ"), 0.0, 1e-9);
        s.tasks = {"reduce", "assess"};
    } else if (name == "crypto-phi-plus") {
        s.dims = DimsSpec{2, 2};
        s.source_vector = phi_plus();
        s.source_state = pure_density(*s.source_vector);
        s.constraints.dims = s.dims;
        s.constraints.constraints =
            detail::pauli_tomography_constraints(*s.source_state, 1e-6);
        s.simulations.push_back({"ZZ", 1000000, 0});
        s.tasks = {"simulate", "assess"};
    } else if (name == "crypto-ghz-eve") {
        s.dims = DimsSpec{2, 2};
        s.source_state = ghz_reduction();
        s.constraints.dims = s.dims;
        s.constraints.constraints =
            detail::pauli_tomography_constraints(*s.source_state, 1e-6);
        s.simulations.push_back({"ZZ", 1000000, 0});
        s.tasks = {"simulate", "assess"};
    } else if (name == "beam-splitter") {
        s.dims = DimsSpec{2, 2};
        s.source_vector = beam_splitter_photon();
        s.source_state = pure_density(*s.source_vector);
        s.constraints.dims = s.dims;
        s.constraints.constraints =
            detail::pauli_tomography_constraints(*s.source_state, 1e-6);
        s.tasks = {"assess"};
    } else {
        throw ParseError("unknown built-in scenario '" + name + "'");
    }
    return s;
}

inline Scenario scenario_from_json(const nlohmann::json& j) {
    Scenario s;
    try {
        if (j.value("version", "") != scenario_schema_version)
            throw ParseError("scenario field 'version' must be \"1\"");
        s.name = j.at("name").get<std::string>();
        for (const auto& d : j.at("dims"))
            s.dims.dims.push_back(d.get<std::size_t>());
        if (s.dims.size() == 0) throw ParseError("scenario field 'dims' is empty");

        if (j.contains("source_state")) {
            const auto& src = j.at("source_state");
            if (src.contains("matrix")) {
                s.source_state = DensityMatrix(detail::matrix_from_json(src.at("matrix")),
                                               s.dims);
            } else {
                const std::string ctor = src.at("constructor").get<std::string>();
                const auto params = src.value("params", nlohmann::json::object());
                if (ctor == "cat_pure") {
                    s.source_vector =
                        cat_pure(params.value("phi", 0.0), params.value("p", 0.5));
                } else if (ctor == "cat_mixed") {
                    s.source_state = cat_mixed();
                } else if (ctor == "phi_plus") {
                    s.source_vector = phi_plus();
                } else if (ctor == "ghz") {
                    s.source_vector = ghz();
                } else if (ctor == "beam_splitter") {
                    s.source_vector = beam_splitter_photon();
                } else if (ctor == "cat_family") {
                    s.source_state = cat_family(
                        cplx{params.value("x_re", 0.0), params.value("x_im", 0.0)});
                } else {
                    throw ParseError("unknown state constructor '" + ctor + "'");
                }
                if (s.source_vector) {
                    if (!(s.source_vector->dims() == s.dims))
                        throw ParseError("constructor dims do not match scenario dims");
                    s.source_state = pure_density(*s.source_vector);
                }
            }
        }

        s.constraints.dims = j.contains("constraint_dims")
                                 ? DimsSpec(j.at("constraint_dims")
                                                .get<std::vector<std::size_t>>())
                                 : s.dims;
        for (const auto& c : j.value("constraints", nlohmann::json::array()))
            s.constraints.constraints.emplace_back(
                detail::observable_from_json(c.at("observable")),
                c.at("value").get<double>(), c.value("tolerance", 1e-6));

        for (const auto& sim : j.value("simulations", nlohmann::json::array())) {
            SimulationSpec spec;
            spec.basis = sim.at("basis").get<std::string>();
            spec.shots = sim.value("shots", 1000000LL);
            spec.seed = sim.value("seed", std::uint64_t{0});
            if (spec.shots < 1) throw ParseError("simulation shots must be >= 1");
            s.simulations.push_back(std::move(spec));
        }

        if (j.contains("tomography")) {
            const auto& t = j.at("tomography");
            s.tomography.settings =
                t.value("settings", std::vector<std::string>{});
            s.tomography.shots = t.value("shots", 100000LL);
            s.tomography.seed = t.value("seed", std::uint64_t{0});
        }

        s.tasks = j.value("tasks", std::vector<std::string>{});
        for (const auto& t : s.tasks)
            if (t != "assess" && t != "simulate" && t != "tomography" && t != "reduce")
                throw ParseError("unknown task '" + t + "'");
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("scenario parse error: ") + e.what());
    }
    return s;
}

inline Scenario scenario_from_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open scenario file '" + path + "'");
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(in);
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("scenario JSON error in '") + path + "': " +
                         e.what());
    }
    return scenario_from_json(j);
}

// ---------------------------------------------------------------------------
// Report.

struct Report {
    nlohmann::json data;

    std::string to_json_string() const { return data.dump(2) + "\n"; }
    std::string to_text() const;
};

namespace detail {

inline const char* verdict_name(Verdict v) {
    switch (v) {
        case Verdict::EvidenceOfEntanglement: return "EvidenceOfEntanglement";
        case Verdict::NoEvidence: return "NoEvidence";
        default: return "Inconclusive";
    }
}

inline const char* basis_kind_name(BasisKind k) {
    switch (k) {
        case BasisKind::ProductBasis: return "ProductBasis";
        case BasisKind::None: return "None";
        default: return "Unknown";
    }
}

inline ComplexMatrix product_basis_from_string(const std::string& s) {
    if (s.empty()) throw ParseError("empty basis string");
    ComplexMatrix b = pauli_eigenbasis(s[0]);
    for (std::size_t i = 1; i < s.size(); ++i) b = kron(b, pauli_eigenbasis(s[i]));
    return b;
}

} // namespace detail

inline Report run_scenario(const Scenario& s) {
    Report rep;
    rep.data["version"] = std::string(library_version);
    rep.data["scenario"] = s.name;
    rep.data["rng_algorithm"] = std::string(rng_algorithm);
    rep.data["dims"] = s.dims.dims;
    rep.data["tasks"] = nlohmann::json::array();

    if (s.source_state) {
        nlohmann::json st;
        st["matrix"] = detail::matrix_to_json(s.source_state->matrix());
        st["purity"] = purity(*s.source_state);
        if (s.source_state->dims().size() == 2)
            st["negativity"] = negativity(*s.source_state);
        if (s.source_vector && s.source_vector->dims().size() == 2) {
            const auto sd = schmidt(*s.source_vector, s.source_vector->dims());
            st["schmidt_coefficients"] = sd.coefficients;
        }
        rep.data["source_state"] = st;
    }

    DensityMatrix working =
        s.source_state ? *s.source_state
                       : DensityMatrix(ComplexMatrix::identity(s.dims.total()) *
                                           cplx{1.0 / s.dims.total(), 0.0},
                                       s.dims);

    for (const auto& task : s.tasks) {
        nlohmann::json t;
        t["task"] = task;
        if (task == "reduce") {
            if (s.dims.size() < 3)
                throw ValidationError("reduce task needs at least 3 subsystems");
            ComplexMatrix red =
                partial_trace(working.matrix(), working.dims(), {0, 1});
            red = (red + red.adjoint()) * cplx{0.5, 0.0};
            DimsSpec rdims{s.dims[0], s.dims[1]};
            DensityMatrix reduced(std::move(red), rdims);
            t["matrix"] = detail::matrix_to_json(reduced.matrix());
            t["purity"] = purity(reduced);
            t["negativity"] = negativity(reduced);
            t["ppt_verdict"] = ppt_verdict(reduced) == PptVerdict::Separable
                                   ? "Separable"
                                   : "Entangled";
            working = reduced; // later tasks act on the reduction
        } else if (task == "simulate") {
            t["runs"] = nlohmann::json::array();
            for (const auto& sim : s.simulations) {
                const ComplexMatrix basis =
                    detail::product_basis_from_string(sim.basis);
                if (basis.rows() != working.dim())
                    throw DimensionError("simulation basis dims mismatch");
                const auto probs = basis_probabilities(working, basis);
                const auto counts = sample_multinomial(probs, sim.shots, sim.seed);
                nlohmann::json run;
                run["basis"] = sim.basis;
                run["shots"] = sim.shots;
                run["seed"] = sim.seed;
                run["probabilities"] = probs;
                run["counts"] = counts;
                t["runs"].push_back(run);
            }
        } else if (task == "tomography") {
            auto settings = s.tomography.settings;
            if (settings.empty()) settings = default_pauli_settings();
            const auto result = tomography_two_qubit(working, settings,
                                                     s.tomography.shots,
                                                     s.tomography.seed);
            t["shots_per_setting"] = s.tomography.shots;
            t["seed"] = s.tomography.seed;
            t["estimate"] = detail::matrix_to_json(result.estimate.matrix());
            t["estimate_negativity"] = negativity(result.estimate);
            t["trace_distance_to_source"] = trace_distance(result.estimate, working);
            t["settings"] = nlohmann::json::array();
            for (const auto& st : result.settings)
                t["settings"].push_back(
                    {{"basis", st.basis}, {"counts", st.counts}});
        } else if (task == "assess") {
            const EvidenceVerdict v = assess(s.constraints, s.opts);
            t["verdict"] = detail::verdict_name(v.verdict);
            t["min_negativity"] = v.min_negativity;
            t["min_residual"] = v.min_residual;
            t["max_negativity"] = v.max_negativity;
            t["max_residual"] = v.max_residual;
            t["basis_analysis"] = detail::basis_kind_name(v.basis_analysis);
            t["reason"] = v.reason;
            t["restarts"] = s.opts.restarts;
            t["seed"] = s.opts.seed;
            if (v.certificate)
                t["certificate"] = detail::matrix_to_json(v.certificate->matrix());
        }
        rep.data["tasks"].push_back(t);
    }
    return rep;
}

inline std::string Report::to_text() const {
    std::ostringstream os;
    os << "scenario: " << data.value("scenario", "?") << "\n";
    os << "rng: " << data.value("rng_algorithm", "?") << "\n";
    if (data.contains("source_state")) {
        const auto& st = data["source_state"];
        os << "source state: purity " << st.value("purity", 0.0);
        if (st.contains("negativity"))
            os << ", negativity " << st["negativity"].get<double>();
        os << "\n";
    }
    for (const auto& t : data.value("tasks", nlohmann::json::array())) {
        const std::string task = t.value("task", "?");
        os << "[" << task << "]\n";
        if (task == "reduce") {
            os << "  reduced-state purity " << t.value("purity", 0.0)
               << ", negativity " << t.value("negativity", 0.0) << ", verdict "
               << t.value("ppt_verdict", "?") << "\n";
        } else if (task == "simulate") {
            for (const auto& run : t.value("runs", nlohmann::json::array())) {
                os << "  basis " << run.value("basis", "?") << ", shots "
                   << run.value("shots", 0LL) << ": counts";
                for (const auto& c : run["counts"]) os << " " << c.get<long long>();
                os << "\n";
            }
        } else if (task == "tomography") {
            os << "  estimate negativity " << t.value("estimate_negativity", 0.0)
               << ", trace distance to source "
               << t.value("trace_distance_to_source", 0.0) << "\n";
        } else if (task == "assess") {
            os << "  verdict " << t.value("verdict", "?") << " (basis analysis "
               << t.value("basis_analysis", "?") << ")\n";
            os << "  negativity bounds [" << t.value("min_negativity", 0.0) << ", "
               << t.value("max_negativity", 0.0) << "], residuals "
               << t.value("min_residual", 0.0) << " / "
               << t.value("max_residual", 0.0) << "\n";
        }
    }
    return os.str();
}

} // namespace entq
