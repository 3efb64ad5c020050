#pragma once

#include <cstdint>
#include <deque>
#include <filesystem>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

namespace vscl {

struct Verdict {
    std::string criterion;
    double tolerance = 0.0;
    double measured = 0.0;
    bool pass = false;
};

struct Series {
    std::string name;
    std::vector<double> t;
    std::vector<double> v;
};

enum class DecayModel { exponential, algebraic };

/// Least-squares decay fit in log space: exponential fits log v against t
/// (rate = decay rate, positive for decay), algebraic fits log v against
/// log t (rate = exponent, negative for decay). degenerate flags a window
/// spanning less than one decade of values (fit still returned).
struct DecayFit {
    std::string series;
    double t_start = 0.0;
    double t_end = 0.0;
    DecayModel model = DecayModel::exponential;
    double rate = 0.0;
    double r2 = 0.0;
    bool degenerate = false;
};

/// Fits the (t, value) samples inside [t_start, t_end]. Requires >= 8 points
/// in the window, all values > 0 (std::invalid_argument otherwise).
DecayFit fit_decay(const Series& series, double t_start, double t_end, DecayModel model);

struct ExperimentReport {
    std::string name;
    std::string claim;  // the mathematical statement the experiment probes
    std::uint64_t seed = 0;
    std::vector<std::pair<std::string, double>> params;
    std::deque<Series> series;  // deque: Series& stays valid across add_series
    std::vector<DecayFit> fits;
    std::vector<Verdict> verdicts;

    bool passed() const;
    void add_param(const std::string& key, double value) { params.emplace_back(key, value); }
    void add_verdict(const std::string& criterion, double tolerance, double measured,
                     bool pass);
    Series& add_series(const std::string& name);
    const Series* find_series(const std::string& name) const;

    nlohmann::json to_json() const;
    /// Writes <dir>/report.json and <dir>/series/<name>.csv ('.' decimal,
    /// comma delimiter, header row, %.17g — byte-stable across runs).
    void write(const std::filesystem::path& dir) const;
};

}  // namespace vscl
