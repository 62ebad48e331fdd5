#include "profile.hpp"

#include "util.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <sstream>
#include <stdexcept>

namespace thinhomog {

namespace {

constexpr double kTwoPi = 2.0 * M_PI;

void require(bool cond, const std::string& message) {
    if (!cond) throw std::invalid_argument(message);
}

std::string trim(std::string_view s) {
    size_t b = 0;
    size_t e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return std::string(s.substr(b, e - b));
}

double parse_number(const std::string& token, const std::string& context) {
    char* end = nullptr;
    const std::string t = trim(token);
    const double v = std::strtod(t.c_str(), &end);
    require(end != nullptr && *end == '\0' && !t.empty(), "expected a number in " + context + ", got '" + t + "'");
    return v;
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : s) {
        if (c == sep) {
            out.push_back(cur);
            cur.clear();
        } else {
            cur.push_back(c);
        }
    }
    out.push_back(cur);
    return out;
}

} // namespace

BoundaryProfile BoundaryProfile::constant(double value, double period) {
    require(period > 0.0, "profile period must be positive");
    BoundaryProfile p;
    p.kind_ = ProfileKind::Constant;
    p.period_ = period;
    p.offset_ = value;
    p.lower_ = value;
    p.upper_ = value;
    p.derivative_bound_ = 0.0;
    return p;
}

BoundaryProfile BoundaryProfile::trig(double offset, std::vector<TrigTerm> terms, double period) {
    require(period > 0.0, "profile period must be positive");
    for (const TrigTerm& t : terms) {
        require(t.harmonic >= 1, "trig harmonics must be positive integers");
    }
    BoundaryProfile p;
    p.kind_ = ProfileKind::TrigPolynomial;
    p.period_ = period;
    p.offset_ = offset;
    p.terms_ = std::move(terms);
    p.finalize_bounds();
    return p;
}

BoundaryProfile BoundaryProfile::sawtooth(double offset, double amplitude, double smoothing,
                                          double period) {
    require(period > 0.0, "profile period must be positive");
    require(smoothing > 0.0, "sawtooth smoothing must be positive");
    BoundaryProfile p;
    p.kind_ = ProfileKind::SmoothedSawtooth;
    p.period_ = period;
    p.offset_ = offset;
    p.saw_amplitude_ = amplitude;
    p.saw_smoothing_ = smoothing;
    // Gaussian-damped Fourier series of the unit sawtooth; truncate once the
    // damping factor is below double round-off.
    const int k_max = std::min(64, static_cast<int>(std::ceil(std::sqrt(37.0 / smoothing))));
    for (int k = 1; k <= k_max; ++k) {
        const double damp = std::exp(-smoothing * k * k);
        const double coef = 2.0 * amplitude * ((k % 2 == 1) ? 1.0 : -1.0) * damp / (M_PI * k);
        p.terms_.push_back({coef, k, true});
    }
    p.finalize_bounds();
    return p;
}

void BoundaryProfile::finalize_bounds() {
    derivative_bound_ = 0.0;
    for (const TrigTerm& t : terms_) {
        derivative_bound_ += std::fabs(t.coef) * kTwoPi * t.harmonic / period_;
    }
    const int n = 4096;
    double lo = offset_;
    double hi = offset_;
    int lo_i = 0;
    int hi_i = 0;
    for (int i = 0; i <= n; ++i) {
        const double y = period_ * i / n;
        const double v = (*this)(y);
        if (v < lo) {
            lo = v;
            lo_i = i;
        }
        if (v > hi) {
            hi = v;
            hi_i = i;
        }
    }
    const double h = period_ / n;
    auto value = [this](double y) { return (*this)(y); };
    auto neg_value = [this](double y) { return -(*this)(y); };
    hi = std::max(hi, golden_max(value, std::max(0.0, (hi_i - 1) * h), std::min(period_, (hi_i + 1) * h)));
    lo = std::min(lo, -golden_max(neg_value, std::max(0.0, (lo_i - 1) * h), std::min(period_, (lo_i + 1) * h)));
    const double pad = 1e-12 * (1.0 + std::fabs(lo) + std::fabs(hi));
    lower_ = lo - pad;
    upper_ = hi + pad;
}

double BoundaryProfile::oscillation(double y) const {
    double v = 0.0;
    const double w = kTwoPi / period_;
    for (const TrigTerm& t : terms_) {
        const double arg = w * t.harmonic * y;
        v += t.coef * (t.is_sine ? std::sin(arg) : std::cos(arg));
    }
    return v;
}

double BoundaryProfile::oscillation_derivative(double y) const {
    double v = 0.0;
    const double w = kTwoPi / period_;
    for (const TrigTerm& t : terms_) {
        const double arg = w * t.harmonic * y;
        const double rate = w * t.harmonic;
        v += t.coef * rate * (t.is_sine ? std::cos(arg) : -std::sin(arg));
    }
    return v;
}

double BoundaryProfile::derivative(double y) const { return oscillation_derivative(y); }

double BoundaryProfile::value_nd(const double* x, int n) const {
    double v = offset_;
    for (int j = 0; j < n; ++j) v += oscillation(x[j]);
    return v;
}

double BoundaryProfile::partial_nd(const double* x, int n, int j) const {
    (void)n;
    return oscillation_derivative(x[j]);
}

BoundaryProfile BoundaryProfile::parse(std::string_view dsl_view, double period) {
    const std::string dsl = trim(dsl_view);
    const size_t open = dsl.find('(');
    require(open != std::string::npos && dsl.back() == ')',
            "profile DSL must look like kind(...): '" + dsl + "'");
    const std::string kind = trim(dsl.substr(0, open));
    const std::string body = dsl.substr(open + 1, dsl.size() - open - 2);

    if (kind == "const") {
        return constant(parse_number(body, "const()"), period);
    }
    if (kind == "saw") {
        const auto parts = split(body, ',');
        require(parts.size() == 3, "saw() takes offset, amplitude, smoothing");
        return sawtooth(parse_number(parts[0], "saw offset"), parse_number(parts[1], "saw amplitude"),
                        parse_number(parts[2], "saw smoothing"), period);
    }
    if (kind == "trig") {
        const auto parts = split(body, ';');
        require(!parts.empty(), "trig() needs at least an offset");
        const double offset = parse_number(parts[0], "trig offset");
        std::vector<TrigTerm> terms;
        for (size_t i = 1; i < parts.size(); ++i) {
            std::istringstream in(parts[i]);
            std::string coef_tok, fn_tok, k_tok;
            in >> coef_tok >> fn_tok >> k_tok;
            require(!coef_tok.empty() && !fn_tok.empty() && !k_tok.empty(),
                    "trig term must be '<coef> sin|cos <harmonic>': '" + parts[i] + "'");
            std::string rest;
            in >> rest;
            require(rest.empty(), "unexpected trailing text in trig term: '" + parts[i] + "'");
            TrigTerm t;
            t.coef = parse_number(coef_tok, "trig coefficient");
            require(fn_tok == "sin" || fn_tok == "cos", "trig term function must be sin or cos");
            t.is_sine = (fn_tok == "sin");
            const double kd = parse_number(k_tok, "trig harmonic");
            t.harmonic = static_cast<int>(kd);
            require(t.harmonic >= 1 && kd == t.harmonic, "trig harmonic must be a positive integer");
            terms.push_back(t);
        }
        return trig(offset, std::move(terms), period);
    }
    throw std::invalid_argument("unknown profile kind '" + kind + "' (expected const, trig or saw)");
}

std::string BoundaryProfile::dsl() const {
    std::string out;
    switch (kind_) {
    case ProfileKind::Constant:
        out = "const(" + format_double(offset_) + ")";
        break;
    case ProfileKind::TrigPolynomial: {
        out = "trig(" + format_double(offset_);
        for (const TrigTerm& t : terms_) {
            out += "; " + format_double(t.coef) + (t.is_sine ? " sin " : " cos ") +
                   std::to_string(t.harmonic);
        }
        out += ")";
        break;
    }
    case ProfileKind::SmoothedSawtooth:
        out = "saw(" + format_double(offset_) + ", " + format_double(saw_amplitude_) + ", " +
              format_double(saw_smoothing_) + ")";
        break;
    }
    return out;
}

} // namespace thinhomog
