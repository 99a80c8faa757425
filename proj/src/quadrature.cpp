#include "bz/degeneration/quadrature.hpp"

#include "bz/error.hpp"

#include <cmath>
#include <cstdlib>
#include <sstream>

namespace bz::degen {

namespace {

int parse_positive(const std::string& text, const std::string& what) {
    std::size_t used = 0;
    int value = 0;
    try {
        value = std::stoi(text, &used);
    } catch (const std::exception&) {
        throw InvalidInput("invalid " + what + ": '" + text + "'");
    }
    if (used != text.size() || value <= 0) throw InvalidInput("invalid " + what + ": '" + text + "'");
    return value;
}

}  // namespace

QuadratureSpec QuadratureSpec::parse_grid(const std::string& text) {
    const auto x = text.find('x');
    if (x == std::string::npos) throw InvalidInput("quadrature grid must look like 512x256, got '" + text + "'");
    QuadratureSpec spec;
    spec.radial = parse_positive(text.substr(0, x), "radial grid size");
    spec.angular = parse_positive(text.substr(x + 1), "angular grid size");
    return spec;
}

QuadratureSpec QuadratureSpec::from_environment() {
    const char* env = std::getenv(kGridEnvVar);
    if (env == nullptr || *env == '\0') return {};
    return parse_grid(env);
}

QuadratureSpec QuadratureSpec::doubled() const {
    QuadratureSpec d = *this;
    d.radial *= 2;
    d.angular *= 2;
    return d;
}

SweepSchedule SweepSchedule::geometric(double first, std::size_t count) {
    if (count < 2 || !(first > 0.0) || first >= kMaxSweepL) throw InvalidInput("invalid geometric sweep");
    SweepSchedule s;
    s.L.clear();
    const double ratio = std::pow(kMaxSweepL / first, 1.0 / static_cast<double>(count - 1));
    double L = first;
    for (std::size_t i = 0; i < count; ++i, L *= ratio) s.L.push_back(i + 1 == count ? kMaxSweepL : L);
    return s;
}

SweepSchedule SweepSchedule::parse(const std::string& text) {
    SweepSchedule s;
    s.L.clear();
    std::stringstream in(text);
    std::string item;
    while (std::getline(in, item, ',')) {
        std::size_t used = 0;
        double v = 0;
        try {
            v = std::stod(item, &used);
        } catch (const std::exception&) {
            throw InvalidInput("invalid sweep value '" + item + "'");
        }
        if (used != item.size()) throw InvalidInput("invalid sweep value '" + item + "'");
        s.L.push_back(v);
    }
    s.validate();
    return s;
}

void SweepSchedule::validate() const {
    if (L.size() < 2) throw InvalidInput("sweep needs at least two values of L");
    for (std::size_t i = 0; i < L.size(); ++i) {
        if (!(L[i] > 0.0) || L[i] > kMaxSweepL)
            throw InvalidInput("sweep values must lie in (0, 40]");
        if (i > 0 && !(L[i] > L[i - 1])) throw InvalidInput("sweep values must be increasing");
    }
}

LinearFit fit_line(const std::vector<double>& x, const std::vector<double>& y) {
    if (x.size() != y.size() || x.size() < 2) throw InvalidInput("fit_line needs two or more points");
    const double n = static_cast<double>(x.size());
    double mx = 0, my = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        mx += x[i];
        my += y[i];
    }
    mx /= n;
    my /= n;
    double sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxy += (x[i] - mx) * (y[i] - my);
    }
    if (sxx == 0.0) throw InvalidInput("fit_line needs distinct abscissae");
    LinearFit fit;
    fit.slope = sxy / sxx;
    fit.intercept = my - fit.slope * mx;
    double ss = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double r = y[i] - (fit.intercept + fit.slope * x[i]);
        ss += r * r;
    }
    fit.residual = std::sqrt(ss / n);
    return fit;
}

double fit_exponent(const std::vector<double>& L, const std::vector<double>& y) {
    std::vector<double> lx, ly;
    for (std::size_t i = 0; i < L.size(); ++i) {
        if (y[i] == 0.0) continue;
        lx.push_back(std::log(L[i]));
        ly.push_back(std::log(std::abs(y[i])));
    }
    if (lx.size() < 2) return 0.0;
    return fit_line(lx, ly).slope;
}

DecayFit fit_decay(const std::vector<double>& L, const std::vector<double>& y) {
    std::vector<double> inv;
    for (double v : L) inv.push_back(1.0 / v);
    const auto line = fit_line(inv, y);
    DecayFit d;
    d.limit = line.intercept;
    d.coefficient = line.slope;
    std::vector<double> dev;
    for (double v : y) dev.push_back(v - d.limit);
    d.exponent = fit_exponent(L, dev);
    return d;
}

}  // namespace bz::degen
