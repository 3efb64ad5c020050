#include "vscl/report.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "vscl/numerics.hpp"

namespace vscl {

DecayFit fit_decay(const Series& series, double t_start, double t_end, DecayModel model) {
    std::vector<double> xs, ys;
    double vmin = std::numeric_limits<double>::infinity(), vmax = 0.0;
    for (std::size_t i = 0; i < series.t.size(); ++i) {
        const double t = series.t[i], v = series.v[i];
        if (t < t_start || t > t_end) continue;
        if (!(v > 0.0))
            throw std::invalid_argument("fit_decay: values in the window must be positive");
        if (model == DecayModel::algebraic && !(t > 0.0))
            throw std::invalid_argument("fit_decay: algebraic fit needs t > 0");
        xs.push_back(model == DecayModel::exponential ? t : std::log(t));
        ys.push_back(std::log(v));
        vmin = std::min(vmin, v);
        vmax = std::max(vmax, v);
    }
    if (xs.size() < 8)
        throw std::invalid_argument("fit_decay: need at least 8 points in the window");
    const LineFit lf = fit_line(xs, ys);
    DecayFit fit;
    fit.series = series.name;
    fit.t_start = t_start;
    fit.t_end = t_end;
    fit.model = model;
    fit.rate = (model == DecayModel::exponential) ? -lf.slope : lf.slope;
    fit.r2 = lf.r2;
    fit.degenerate = vmax < 10.0 * vmin;
    return fit;
}

bool ExperimentReport::passed() const {
    for (const auto& v : verdicts)
        if (!v.pass) return false;
    return true;
}

void ExperimentReport::add_verdict(const std::string& criterion, double tolerance,
                                   double measured, bool pass) {
    verdicts.push_back({criterion, tolerance, measured, pass});
}

Series& ExperimentReport::add_series(const std::string& name) {
    series.push_back({name, {}, {}});
    return series.back();
}

const Series* ExperimentReport::find_series(const std::string& name) const {
    for (const auto& s : series)
        if (s.name == name) return &s;
    return nullptr;
}

nlohmann::json ExperimentReport::to_json() const {
    nlohmann::json j;
    j["name"] = name;
    j["claim"] = claim;
    j["seed"] = seed;
    nlohmann::json jp = nlohmann::json::object();
    for (const auto& [k, v] : params) jp[k] = v;
    j["params"] = jp;
    j["series_files"] = nlohmann::json::array();
    for (const auto& s : series) j["series_files"].push_back(s.name + ".csv");
    j["fits"] = nlohmann::json::array();
    for (const auto& f : fits) {
        j["fits"].push_back(
            {{"series", f.series},
             {"window", {f.t_start, f.t_end}},
             {"model", f.model == DecayModel::exponential ? "exponential" : "algebraic"},
             {"rate", f.rate},
             {"r2", f.r2},
             {"degenerate", f.degenerate}});
    }
    j["verdicts"] = nlohmann::json::array();
    for (const auto& v : verdicts) {
        j["verdicts"].push_back({{"criterion", v.criterion},
                                 {"tolerance", v.tolerance},
                                 {"measured", v.measured},
                                 {"pass", v.pass}});
    }
    j["passed"] = passed();
    return j;
}

void ExperimentReport::write(const std::filesystem::path& dir) const {
    namespace fs = std::filesystem;
    fs::create_directories(dir / "series");
    {
        std::ofstream out(dir / "report.json");
        out << to_json().dump(2) << "\n";
    }
    char buf[64];
    for (const auto& s : series) {
        std::ofstream out(dir / "series" / (s.name + ".csv"));
        out << "t," << s.name << "\n";
        for (std::size_t i = 0; i < s.t.size(); ++i) {
            std::snprintf(buf, sizeof buf, "%.17g", s.t[i]);
            out << buf << ",";
            std::snprintf(buf, sizeof buf, "%.17g", s.v[i]);
            out << buf << "\n";
        }
    }
}

}  // namespace vscl
