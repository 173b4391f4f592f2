// acceptance.cpp
// End-to-end acceptance runner: one pass/fail line per criterion, nonzero
// exit when anything fails.

#include "entq/scenario.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

using namespace entq;

namespace {

int failures = 0;

void criterion(const std::string& name, const std::function<bool()>& body) {
    bool ok = false;
    std::string note;
    try {
        ok = body();
    } catch (const std::exception& e) {
        note = std::string(" (exception: ") + e.what() + ")";
    }
    std::printf("%s %s%s\n", ok ? "PASS" : "FAIL", name.c_str(), note.c_str());
    std::fflush(stdout);
    if (!ok) ++failures;
}

StateVector random_pure(const DimsSpec& dims, PhiloxStream& rng) {
    std::vector<cplx> amps(dims.total());
    for (auto& a : amps) a = cplx{rng.normal(), rng.normal()};
    return StateVector::normalized(std::move(amps), dims);
}

ComplexMatrix random_unitary(std::size_t n, PhiloxStream& rng) {
    ComplexMatrix m(n, n);
    for (std::size_t j = 0; j < n; ++j) {
        std::vector<cplx> v(n);
        for (auto& z : v) z = cplx{rng.normal(), rng.normal()};
        for (std::size_t k = 0; k < j; ++k) {
            cplx proj = 0.0;
            for (std::size_t i = 0; i < n; ++i) proj += std::conj(m(i, k)) * v[i];
            for (std::size_t i = 0; i < n; ++i) v[i] -= proj * m(i, k);
        }
        double norm = 0.0;
        for (const auto& z : v) norm += std::norm(z);
        norm = std::sqrt(norm);
        for (std::size_t i = 0; i < n; ++i) m(i, j) = v[i] / norm;
    }
    return m;
}

ComplexMatrix random_hermitian(std::size_t n, PhiloxStream& rng) {
    ComplexMatrix a(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) a(i, j) = cplx{rng.normal(), rng.normal()};
    return (a + a.adjoint()) * cplx{0.5, 0.0};
}

ConstraintSet cat_constraints() {
    ConstraintSet cs;
    cs.dims = DimsSpec{2, 2};
    cs.constraints.emplace_back(pauli_observable("ZZ"), 1.0, 1e-9);
    cs.constraints.emplace_back(pauli_observable("ZI"), 0.0, 1e-9);
    cs.constraints.emplace_back(pauli_observable("IZ"), 0.0, 1e-9);
    return cs;
}

ConstraintSet full_pauli_constraints(const DensityMatrix& rho, double tol = 1e-6) {
    ConstraintSet cs;
    cs.dims = rho.dims();
    const std::string letters = "IXYZ";
    for (char a : letters)
        for (char b : letters) {
            if (a == 'I' && b == 'I') continue;
            Observable obs = pauli_observable(std::string{a, b});
            cs.constraints.emplace_back(std::move(obs), expectation(rho, obs), tol);
        }
    return cs;
}

} // namespace

int main() {
    criterion("1. cat-family negativity law and PT spectrum", [] {
        const std::vector<cplx> xs = {
            0.0, 0.1, 0.25, 0.5, 0.3 * std::polar(1.0, 3.141592653589793 / 3.0)};
        for (const cplx& x : xs) {
            const double ax = std::abs(x);
            const DensityMatrix rho = cat_family(x);
            if (std::abs(negativity(rho) - ax) > 1e-9) return false;
            const ComplexMatrix pt =
                partial_transpose(rho.matrix(), rho.dims(), 1);
            const auto eigs = hermitian_eigs(pt).values;
            const double want[4] = {-ax, ax, 0.5, 0.5};
            std::vector<double> sorted_want(want, want + 4);
            std::sort(sorted_want.begin(), sorted_want.end());
            for (std::size_t k = 0; k < 4; ++k)
                if (std::abs(eigs[k] - sorted_want[k]) > 1e-9) return false;
        }
        return true;
    });

    criterion("2. forced-zeros reproduction", [] {
        const auto forced = forced_zeros({0.5, 0.0, 0.0, 0.5});
        if (forced.size() != 10) return false;
        if (forced.count({0, 3}) || forced.count({3, 0})) return false;
        for (std::size_t i = 0; i < 4; ++i)
            for (std::size_t j = 0; j < 4; ++j) {
                if (i == j) continue;
                const bool free_corner = (i == 0 && j == 3) || (i == 3 && j == 0);
                if (!free_corner && !forced.count({i, j})) return false;
            }
        return true;
    });

    criterion("3. no-evidence verdict for the cat (16 restarts, < 30 s)", [] {
        const auto start = std::chrono::steady_clock::now();
        OptimizerOptions opts; // 16 restarts by default
        const EvidenceVerdict v = assess(cat_constraints(), opts);
        const double secs =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
                .count();
        if (secs >= 30.0) return false;
        if (v.verdict != Verdict::NoEvidence) return false;
        if (!v.certificate) return false;
        if ((v.certificate->matrix() - cat_mixed().matrix()).max_abs() > 1e-9)
            return false;
        if (v.min_negativity > 1e-4) return false;
        return v.max_negativity >= 0.5 - 1e-3;
    });

    criterion("4. GHZ reduction and the crypto pair", [] {
        const DensityMatrix red = ghz_reduction();
        ComplexMatrix want(4, 4);
        want(0, 0) = 0.5;
        want(3, 3) = 0.5;
        if ((red.matrix() - want).max_abs() > 1e-12) return false;
        if (ppt_verdict(red) != PptVerdict::Separable) return false;

        const DensityMatrix bell = pure_density(phi_plus());
        const auto pg = basis_probabilities(bell, ComplexMatrix::identity(4));
        const auto pe = basis_probabilities(red, ComplexMatrix::identity(4));
        for (std::size_t k = 0; k < 4; ++k)
            if (pg[k] != pe[k]) return false;

        OptimizerOptions opts;
        const auto good = min_negativity(full_pauli_constraints(bell), opts);
        const auto evil = min_negativity(full_pauli_constraints(red), opts);
        return std::abs(good.value - 0.5) <= 1e-3 && evil.value <= 1e-3;
    });

    criterion("5. indistinguishability under the single measurement", [] {
        const double pi = 3.141592653589793;
        const std::vector<CatVariant> variants = {
            CatVariant::pure(0.0), CatVariant::pure(pi / 2.0), CatVariant::pure(pi),
            CatVariant::dephased()};
        std::vector<std::array<long long, 4>> tables;
        for (std::size_t i = 0; i < variants.size(); ++i) {
            const auto t = simulate_cat_experiment(variants[i], 1000000, 100 + i);
            if (t[1] != 0 || t[2] != 0) return false;
            const auto again = simulate_cat_experiment(variants[i], 1000000, 100 + i);
            if (again != t) return false;
            tables.push_back(t);
        }
        for (std::size_t i = 0; i < tables.size(); ++i)
            for (std::size_t j = i + 1; j < tables.size(); ++j) {
                double tv = 0.0;
                for (std::size_t k = 0; k < 4; ++k)
                    tv += std::abs(tables[i][k] - tables[j][k]) / 1e6;
                if (tv / 2.0 >= 0.005) return false;
            }
        return true;
    });

    criterion("6. two-bases necessity in tomography", [] {
        const double pi = 3.141592653589793;
        const std::vector<std::string> zonly = {"ZZ"};
        const auto za =
            tomography_two_qubit(pure_density(cat_pure(0.0)), zonly, 100000, 31);
        const auto zb = tomography_two_qubit(cat_mixed(), zonly, 100000, 31);
        if (trace_distance(za.estimate, zb.estimate) >= 0.01) return false;

        const auto settings = default_pauli_settings();
        const auto fa =
            tomography_two_qubit(pure_density(cat_pure(0.0)), settings, 100000, 41);
        const auto fb = tomography_two_qubit(cat_mixed(), settings, 100000, 42);
        if (negativity(fa.estimate) <= 0.4) return false;
        if (negativity(fb.estimate) >= 0.05) return false;

        const auto fpi =
            tomography_two_qubit(pure_density(cat_pure(pi)), settings, 100000, 43);
        const double xx0 = expectation(fa.estimate, pauli_observable("XX"));
        const double xxpi = expectation(fpi.estimate, pauli_observable("XX"));
        return xx0 > 0.9 && xxpi < -0.9;
    });

    criterion("7. property suites", [] {
        const DimsSpec dims{2, 2};

        PhiloxStream rng(20240814);
        for (int iter = 0; iter < 1000; ++iter) {
            const StateVector psi = random_pure(dims, rng);
            const auto sd = schmidt(psi, dims);
            double s2 = 0.0;
            for (double lam : sd.coefficients) s2 += lam * lam;
            if (std::abs(s2 - 1.0) > 1e-12) return false;
            const StateVector back = sd.reconstruct(dims);
            cplx phase = 0.0;
            for (std::size_t i = 0; i < 4; ++i) phase += std::conj(back[i]) * psi[i];
            phase /= std::abs(phase);
            for (std::size_t i = 0; i < 4; ++i)
                if (std::abs(psi[i] - phase * back[i]) > 1e-10) return false;
        }

        for (int iter = 0; iter < 500; ++iter) {
            const DensityMatrix rho =
                random_separable(dims, 1 + (iter % 8), 7000 + iter);
            if (negativity(rho) >= 1e-9) return false;
        }

        for (int iter = 0; iter < 200; ++iter) {
            const DensityMatrix rho = iter % 2 == 0
                                          ? cat_family(0.002 * iter)
                                          : random_separable(dims, 4, 90 + iter);
            const ComplexMatrix uv = kron(random_unitary(2, rng), random_unitary(2, rng));
            ComplexMatrix rot = uv * rho.matrix() * uv.adjoint();
            rot = (rot + rot.adjoint()) * cplx{0.5, 0.0};
            const DensityMatrix sigma(rot, dims);
            if (std::abs(negativity(sigma) - negativity(rho)) > 1e-9) return false;
        }

        int done = 0;
        while (done < 1000) {
            const ComplexMatrix m = random_hermitian(4, rng);
            bool near_zero = false;
            for (double v : hermitian_eigs(m).values) near_zero |= std::abs(v) < 1e-6;
            if (near_zero) continue;
            if (principal_minors_psd(m) != is_psd(m)) return false;
            ++done;
        }

        for (int iter = 0; iter < 200; ++iter) {
            const Observable a(random_hermitian(4, rng), "rand");
            const auto sp = spectral_projectors(a);
            ComplexMatrix sum(4, 4);
            for (const auto& p : sp) sum += p.projector;
            if ((sum - ComplexMatrix::identity(4)).max_abs() > 1e-9) return false;
            for (std::size_t i = 0; i < sp.size(); ++i)
                for (std::size_t j = 0; j < sp.size(); ++j) {
                    const ComplexMatrix prod = sp[i].projector * sp[j].projector;
                    const ComplexMatrix want =
                        i == j ? sp[i].projector : ComplexMatrix(4, 4);
                    if ((prod - want).max_abs() > 1e-9) return false;
                }
        }
        return true;
    });

    criterion("8. beam-splitter scenario", [] {
        const StateVector psi = beam_splitter_photon();
        if (std::abs(negativity(pure_density(psi)) - 0.5) > 1e-9) return false;
        const auto sd = schmidt(psi, psi.dims());
        if (sd.coefficients.size() != 2) return false;
        const double r = 1.0 / std::sqrt(2.0);
        return std::abs(sd.coefficients[0] - r) <= 1e-9 &&
               std::abs(sd.coefficients[1] - r) <= 1e-9;
    });

    if (failures == 0) {
        std::printf("all acceptance criteria passed\n");
        return 0;
    }
    std::printf("%d acceptance criteria failed\n", failures);
    return 1;
}
