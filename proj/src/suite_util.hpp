#pragma once

#include <chrono>
#include <functional>

#include "lfdgf/closure.hpp"
#include "lfdgf/error.hpp"
#include "lfdgf/mcheck.hpp"
#include "lfdgf/models.hpp"
#include "lfdgf/oracle.hpp"
#include "lfdgf/suites.hpp"
#include "lfdgf/translate.hpp"
#include "lfdgf/typemodel.hpp"

namespace lfdgf::suite {

inline Signature corpus_signature(int k) {
    static const std::vector<std::string> names{"x", "y", "z"};
    return Signature({{"P", 1}, {"Q", 2}}, {names.begin(), names.begin() + k});
}

inline int pick_k(Rng& rng, int lo, int hi) {
    return std::uniform_int_distribution<int>(lo, hi)(rng);
}

inline FoAssignment fo_assignment(const Signature& sig, const Assignment& s) {
    FoAssignment out;
    for (Var v = 0; v < sig.k(); ++v)
        out[sig.vars()[v]] = s[v];
    return out;
}

// Draws until `make` returns a value that passes `fits`, counting rejects.
template <class T>
T draw(SuiteReport& rep, const std::function<T()>& make, const std::function<bool(const T&)>& fits) {
    for (int attempt = 0; attempt < 10'000; ++attempt) {
        T t = make();
        if (fits(t))
            return t;
        ++rep.skipped;
    }
    throw CapError("suite generator could not produce an input within the caps");
}

// LFD formula whose closure stays within the type cap.
inline Lfd draw_lfd(SuiteReport& rep, Rng& rng, const Signature& sig, const LfdShape& shape) {
    return draw<Lfd>(
        rep, [&] { return random_lfd(rng, sig, shape); },
        [&](const Lfd& f) {
            try {
                Closure cl(f, sig);
                return true;
            } catch (const CapError&) {
                return false;
            }
        });
}

class Timer {
public:
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
    }

private:
    std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

SuiteReport tr_correctness(std::uint64_t seed, const SuiteOptions& opt);
SuiteReport tau_correctness(std::uint64_t seed, const SuiteOptions& opt);
SuiteReport gf_equisat(std::uint64_t seed, const SuiteOptions& opt);
SuiteReport sigma_direction(std::uint64_t seed, const SuiteOptions& opt);
SuiteReport setup_lemma(std::uint64_t seed, const SuiteOptions& opt);
SuiteReport unraveling(std::uint64_t seed, const SuiteOptions& opt);
SuiteReport distinguishing(std::uint64_t seed, const SuiteOptions& opt);
SuiteReport roundtrip_trbullet(std::uint64_t seed, const SuiteOptions& opt);
SuiteReport size_accounting(std::uint64_t seed, const SuiteOptions& opt);
SuiteReport fmp_smoke(std::uint64_t seed, const SuiteOptions& opt);

} // namespace lfdgf::suite
