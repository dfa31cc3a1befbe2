#include "blw/cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <limits>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <unistd.h>

#include "blw/besov.hpp"
#include "blw/bspline.hpp"
#include "blw/euler_frobenius.hpp"
#include "blw/json_io.hpp"
#include "blw/localisation.hpp"
#include "blw/wavelet.hpp"

namespace blw::cli {

namespace {

constexpr std::array<const char*, 9> kFigures = {"phi1+",       "phi1-", "psi_r1+", "r1psi_1/r1+", "psi_r1-",
                                                 "r1psi_1/r1-", "phi2+", "phi2-",   "psi_r1r2+"};

struct UsageError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct Tolerances {
    double phi_residual_factor = 10.0;  // × epsilon
    double psi_sup = 1e-8;
    double psi_support_tail = 1e-8;
    double dym = 1e-11;
    double dymm = 1e-10;
    double gram = 1e-6;
    double moments = 1e-7;
    double bspline_derivative = 1e-12;
    double ddiff = 1e-11;
    double two_scale = 1e-13;
};

json tolerances_json(const Tolerances& t) {
    return json{{"phi_residual_factor", t.phi_residual_factor},
                {"psi_sup", t.psi_sup},
                {"psi_support_tail", t.psi_support_tail},
                {"dym", t.dym},
                {"dymm", t.dymm},
                {"gram", t.gram},
                {"moments", t.moments},
                {"bspline_derivative", t.bspline_derivative},
                {"ddiff", t.ddiff},
                {"two_scale", t.two_scale}};
}

json report_header(const std::string& command) {
    return json{{"schema", 1}, {"command", command}, {"tolerances", tolerances_json(Tolerances{})}};
}

// JSON has no infinity; such exponents are written as "inf".
json real(double v) {
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    if (std::isnan(v)) return nullptr;
    return v;
}

std::string shortest(double v) {
    std::array<char, 32> buf{};
    auto r = std::to_chars(buf.data(), buf.data() + buf.size(), v);
    return std::string(buf.data(), r.ptr);
}

double parse_real(const std::string& text, const std::string& what) {
    if (text == "inf" || text == "infinity" || text == "Inf") return std::numeric_limits<double>::infinity();
    double v = 0.0;
    const char* b = text.data();
    const char* e = b + text.size();
    if (!text.empty() && *b == '+') ++b;
    auto r = std::from_chars(b, e, v);
    if (r.ec != std::errc() || r.ptr != e) throw UsageError(what + ": not a number: '" + text + "'");
    return v;
}

Sign parse_sign(const std::string& text) {
    if (text == "+" || text == "plus" || text == "Plus") return Sign::Plus;
    if (text == "-" || text == "minus" || text == "Minus") return Sign::Minus;
    throw UsageError("--sign must be + or -");
}

std::vector<TChoice> parse_tchoice(const std::string& text, int n) {
    std::vector<TChoice> out;
    if (text.empty()) {
        out.assign(static_cast<std::size_t>(n), TChoice::UseR);
        return out;
    }
    std::stringstream in(text);
    std::string item;
    while (std::getline(in, item, ',')) {
        if (item == "r") {
            out.push_back(TChoice::UseR);
        } else if (item == "invr" || item == "1/r") {
            out.push_back(TChoice::UseInvR);
        } else {
            throw UsageError("--t entries must be r or invr, got '" + item + "'");
        }
    }
    if (static_cast<int>(out.size()) != n) throw UsageError("--t needs exactly n entries");
    return out;
}

std::pair<DyadicRational, DyadicRational> parse_window(const std::string& text) {
    const auto comma = text.find(',');
    if (comma == std::string::npos) throw UsageError("--window must be a,b");
    const double a = parse_real(text.substr(0, comma), "--window");
    const double b = parse_real(text.substr(comma + 1), "--window");
    if (!std::isfinite(a) || !std::isfinite(b) || !(a < b)) throw UsageError("--window needs finite a < b");
    return {DyadicRational::from_double(a), DyadicRational::from_double(b)};
}

int max_psi_order() {
    const char* env = std::getenv("BLW_MAX_N");
    if (!env || !*env) return 4;
    int v = 0;
    const std::string s(env);
    auto r = std::from_chars(s.data(), s.data() + s.size(), v);
    if (r.ec != std::errc() || r.ptr != s.data() + s.size() || v < 1) throw UsageError("BLW_MAX_N must be a positive integer");
    return std::min(v, kMaxEulerFrobeniusOrder);
}

void check_order(int n, int lo) {
    if (n < lo || n > kMaxEulerFrobeniusOrder) {
        throw UsageError("--n must lie in [" + std::to_string(lo) + ", " + std::to_string(kMaxEulerFrobeniusOrder) + "]");
    }
}

void check_epsilon(double e) {
    if (!(e > 0.0 && e < 1.0)) throw UsageError("--epsilon must lie in (0, 1)");
}

// Writes text to path via a temporary file and rename, or to out when path is empty.
void emit(const std::string& text, const std::string& path, std::ostream& out) {
    if (path.empty()) {
        out << text;
        return;
    }
    const std::filesystem::path target(path);
    auto tmp = target;
    tmp += ".tmp." + std::to_string(::getpid());
    {
        std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
        if (!f) throw std::runtime_error("cannot write " + tmp.string());
        f << text;
        f.flush();
        if (!f) throw std::runtime_error("write failed for " + tmp.string());
    }
    std::error_code ec;
    std::filesystem::rename(tmp, target, ec);
    if (ec) {
        std::filesystem::remove(tmp);
        throw std::runtime_error("cannot rename onto " + path + ": " + ec.message());
    }
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

std::string csv_samples(const PiecewisePolynomial& f, const DyadicRational& a, const DyadicRational& b) {
    std::string s = "x,value\n";
    const DyadicRational step(1, 6);
    for (DyadicRational x = a; x <= b; x = x + step) {
        const double xv = x.to_double();
        s += shortest(xv) + "," + shortest(evaluate(f, xv)) + "\n";
    }
    return s;
}

// Smallest window on the 1/64 grid holding the supports of the heaviest terms carrying
// 99.99% of Σ|w|.
std::pair<DyadicRational, DyadicRational> mass_window(const TranslateSeries& s) {
    if (s.terms.empty()) return {DyadicRational(0), DyadicRational(1)};
    double total = 0.0;
    for (const auto& [k, w] : s.terms) total += std::fabs(w);
    const double cut = 0.5e-4 * total;
    std::vector<std::pair<DyadicRational, double>> terms(s.terms.begin(), s.terms.end());
    std::size_t lo = 0, hi = terms.size();
    for (double acc = 0.0; lo + 1 < hi && acc + std::fabs(terms[lo].second) <= cut; ++lo) acc += std::fabs(terms[lo].second);
    for (double acc = 0.0; hi - 1 > lo && acc + std::fabs(terms[hi - 1].second) <= cut; --hi) acc += std::fabs(terms[hi - 1].second);
    const DyadicRational a = terms[lo].first.ldexp(-s.log2_dilation);
    const DyadicRational b = (terms[hi - 1].first + DyadicRational(s.base + 1)).ldexp(-s.log2_dilation);
    const auto floor64 = [](const DyadicRational& x) { return DyadicRational(static_cast<std::int64_t>(std::floor(x.to_double() * 64)), 6); };
    const auto ceil64 = [](const DyadicRational& x) { return DyadicRational(static_cast<std::int64_t>(std::ceil(x.to_double() * 64)), 6); };
    return {floor64(a), ceil64(b)};
}

json spec_json(const WaveletSpec& spec) {
    json t = json::array();
    for (auto c : spec.tchoice) t.push_back(c == TChoice::UseR ? "r" : "invr");
    return json{{"n", spec.n}, {"sign", spec.sign == Sign::Plus ? "+" : "-"}, {"t", std::move(t)}};
}

json check_json(const std::string& name, double residual, double tolerance) {
    return json{{"name", name}, {"residual", residual}, {"tolerance", tolerance}, {"passed", residual <= tolerance}};
}

// ------------------------------------------------------------------ roots

struct RootsArgs {
    int n = 1;
    std::string format = "json";
    std::string out;
};

int cmd_roots(const RootsArgs& a, std::ostream& out) {
    check_order(a.n, 1);
    const auto& d = euler_frobenius_data(a.n);
    if (a.format == "table") {
        std::ostringstream s;
        s << std::setprecision(16);
        s << "n = " << d.n << "\n";
        s << std::left << std::setw(4) << "j" << std::setw(24) << "alpha" << std::setw(24) << "r" << "residual\n";
        for (std::size_t j = 0; j < d.alphas.size(); ++j) {
            s << std::setw(4) << j + 1 << std::setw(24) << d.alphas[j] << std::setw(24) << d.rs[j] << d.residuals[j] << "\n";
        }
        s << "beta  = " << d.beta << "\n";
        s << "delta = " << d.delta << "\n";
        if (d.near_unity) s << "warning: a root lies within 1e-9 of 1\n";
        emit(s.str(), a.out, out);
        return kExitOk;
    }
    json j = report_header("roots");
    j["n"] = d.n;
    j["alpha"] = d.alphas;
    j["r"] = d.rs;
    j["beta"] = d.beta;
    j["delta"] = d.delta;
    j["residuals"] = d.residuals;
    j["derivatives"] = d.derivatives;
    j["near_unity"] = d.near_unity;
    emit(dump(j), a.out, out);
    return kExitOk;
}

// ------------------------------------------------------------------ build

struct BuildArgs {
    std::string kind = "phi";
    int n = 1;
    std::string sign = "+";
    std::string t;
    double epsilon = 1e-12;
    std::string window;
    std::string format = "json";
    std::string out;
};

int cmd_build(const BuildArgs& a, std::ostream& out) {
    check_order(a.n, 1);
    check_epsilon(a.epsilon);
    if (a.kind != "phi" && a.kind != "psi") throw UsageError("--kind must be phi or psi");
    WaveletSpec spec = WaveletSpec::all_r(a.n, parse_sign(a.sign));
    spec.tchoice = parse_tchoice(a.t, a.n);
    const auto series = a.kind == "phi" ? phi_series(spec, a.epsilon) : psi_series(spec, a.epsilon);
    std::optional<std::pair<DyadicRational, DyadicRational>> window;
    if (!a.window.empty()) window = parse_window(a.window);
    const auto m = series_to_polynomial(series, window);
    if (a.format == "csv") {
        const auto w = window ? *window : mass_window(series);
        emit(csv_samples(m.polynomial, w.first, w.second), a.out, out);
        return kExitOk;
    }
    if (a.format != "json") throw UsageError("--format must be json or csv");
    json j = report_header("build");
    j["kind"] = a.kind;
    j["spec"] = spec_json(spec);
    j["epsilon"] = a.epsilon;
    if (window) j["window"] = json::array({window->first.to_double(), window->second.to_double()});
    j["window_tail_mass"] = m.tail_mass;
    j["series"] = to_json(series);
    j["polynomial"] = to_json(m.polynomial);
    emit(dump(j), a.out, out);
    return kExitOk;
}

// ----------------------------------------------------------------- verify

struct VerifyArgs {
    std::string suite = "all";
    int n = 1;
    double epsilon = 1e-12;
    bool allow_large_n = false;
    std::string out;
};

json verify_bspline(int n) {
    const Tolerances tol;
    json checks = json::array();
    const auto rep = verify_bspline_properties(n);
    checks.push_back(json{{"name", "support"}, {"passed", rep.support_ok}});
    checks.push_back(json{{"name", "positivity"}, {"passed", rep.positivity_ok}});
    checks.push_back(json{{"name", "continuity"}, {"residual", rep.max_continuity_jump}, {"passed", rep.continuity_ok}});
    checks.push_back(json{{"name", "symmetry"}, {"residual", rep.max_symmetry_error}, {"passed", rep.symmetry_ok}});
    const auto& b = bspline(BSplineOrder(n));
    const auto& bm = bspline(BSplineOrder(n - 1));
    const auto bm1 = translate_dilate(bm, DyadicRational(1), 0);
    const auto rhs = linear_combine({{1.0, std::cref(bm)}, {-1.0, std::cref(bm1)}});
    checks.push_back(check_json("derivative", sup_distance(differentiate(b), rhs, n + 2), tol.bspline_derivative));
    std::vector<PiecewisePolynomial> parts;
    std::vector<double> weights;
    for (const auto& [k, w] : two_scale_expand(n)) {
        parts.push_back(translate_dilate(b, DyadicRational(k), 1));
        weights.push_back(w);
    }
    std::vector<WeightedTerm> terms;
    for (std::size_t i = 0; i < parts.size(); ++i) terms.emplace_back(weights[i], std::cref(parts[i]));
    checks.push_back(check_json("two_scale", sup_distance(linear_combine(terms), b, n + 2), tol.two_scale));
    if (2 * n + 1 <= kMaxBSplineOrder) {
        const auto hod = high_order_derivative(n);
        const auto left = alternating_two_scale_sum(n);
        const auto right = linear_combine({{std::ldexp(1.0, -2 * n - 1), std::cref(hod.composed)}});
        checks.push_back(check_json("ddiff", sup_distance(left, right, n + 2), tol.ddiff));
    }
    return checks;
}

json verify_localisation(int n, double epsilon) {
    const Tolerances tol;
    json checks = json::array();
    for (Sign s : {Sign::Plus, Sign::Minus}) {
        const std::string tag = s == Sign::Plus ? "+" : "-";
        const auto phi = build_Phi(n, s, epsilon);
        checks.push_back(check_json("Phi" + tag + " off_center", phi.max_off_center_residual, tol.phi_residual_factor * epsilon));
        checks.push_back(check_json("Phi" + tag + " center", std::fabs(phi.center_weight - phi.beta), 1e-10));
        const auto psi = build_Psi(n, s, epsilon);
        checks.push_back(check_json("Psi" + tag + " sup_distance", psi.sup_distance, tol.psi_sup));
        checks.push_back(check_json("Psi" + tag + " outside_support", psi.outside_support, tol.psi_support_tail));
    }
    return checks;
}

json verify_dym(int n) {
    json checks = json::array();
    for (const auto& c : verify_dym_identities(n)) checks.push_back(check_json(c.name, c.residual, c.tolerance));
    return checks;
}

json verify_moments(int n, double epsilon) {
    const Tolerances tol;
    json checks = json::array();
    for (Sign s : {Sign::Plus, Sign::Minus}) {
        for (bool inv : {false, true}) {
            const auto spec = inv ? WaveletSpec::all_inv_r(n, s) : WaveletSpec::all_r(n, s);
            const auto m = vanishing_moments(spec, epsilon);
            for (std::size_t k = 0; k < m.size(); ++k) {
                checks.push_back(check_json(spec.label() + " m=" + std::to_string(k), std::fabs(m[k]), tol.moments));
            }
        }
    }
    return checks;
}

bool all_passed(const json& checks) {
    return std::all_of(checks.begin(), checks.end(), [](const json& c) { return c.at("passed").get<bool>(); });
}

int cmd_verify(const VerifyArgs& a, std::ostream& out) {
    check_order(a.n, 1);
    check_epsilon(a.epsilon);
    static const std::array<std::string, 5> suites = {"bspline", "localisation", "dym", "moments", "all"};
    if (std::find(suites.begin(), suites.end(), a.suite) == suites.end()) {
        throw UsageError("verify suite must be one of bspline, localisation, dym, moments, all");
    }
    const bool want_psi = a.suite == "localisation" || a.suite == "all";
    if (want_psi && a.n > max_psi_order() && !a.allow_large_n) {
        throw UsageError("Psi assembly above n=" + std::to_string(max_psi_order()) +
                         " needs --allow-large-n (or raise BLW_MAX_N)");
    }
    json j = report_header("verify");
    j["suite"] = a.suite;
    j["n"] = a.n;
    j["epsilon"] = a.epsilon;
    json results = json::object();
    if (a.suite == "bspline" || a.suite == "all") results["bspline"] = verify_bspline(a.n);
    if (want_psi) results["localisation"] = verify_localisation(a.n, a.epsilon);
    if (a.suite == "dym" || a.suite == "all") results["dym"] = verify_dym(a.n);
    if (a.suite == "moments" || a.suite == "all") results["moments"] = verify_moments(a.n, a.epsilon);
    bool ok = true;
    for (const auto& [name, checks] : results.items()) ok = ok && all_passed(checks);
    j["results"] = std::move(results);
    j["passed"] = ok;
    emit(dump(j), a.out, out);
    return ok ? kExitOk : kExitVerificationFailed;
}

// ------------------------------------------------------------------- norm

struct NormArgs {
    std::string input;
    int n = 1;
    double s = 0.5;
    std::string p = "2";
    std::string q = "2";
    int D = 8;
    double epsilon = 1e-10;
    std::string which = "both";
    int M = 0;
    int levels = 16;
    int substeps = 4;
    std::string out;
};

PiecewisePolynomial load_function(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw UsageError("cannot read " + path);
    std::stringstream buf;
    buf << f.rdbuf();
    const std::string text = buf.str();
    const bool csv = path.size() >= 4 && path.compare(path.size() - 4, 4, ".csv") == 0;
    if (csv) return polynomial_from_csv(text);
    try {
        return polynomial_from_document(json::parse(text));
    } catch (const json::exception& e) {
        throw UsageError(std::string("invalid JSON input: ") + e.what());
    }
}

json breakdown_json(const NormBreakdown& b) {
    return json{{"value", b.value},
                {"first_term", b.first_term},
                {"second_term", b.second_term},
                {"level_terms", b.level_terms},
                {"series_tail", b.series_tail}};
}

int cmd_norm(const NormArgs& a, std::ostream& out) {
    if (a.input.empty()) throw UsageError("--input is required");
    static const std::array<std::string, 4> kinds = {"star", "circ", "both", "modulus"};
    if (std::find(kinds.begin(), kinds.end(), a.which) == kinds.end()) {
        throw UsageError("--which must be star, circ, both or modulus");
    }
    check_order(a.n, 1);
    check_epsilon(a.epsilon);
    if (a.D < 0) throw UsageError("--D must be non-negative");
    BesovParams params{a.n, a.s, parse_real(a.p, "--p"), parse_real(a.q, "--q")};
    const auto f = load_function(a.input);

    json j = report_header("norm");
    j["input"] = std::filesystem::path(a.input).filename().string();
    j["params"] = json{{"n", params.n}, {"s", params.s}, {"p", real(params.p)}, {"q", real(params.q)}, {"D", a.D}, {"epsilon", a.epsilon}};
    if (a.which == "modulus") {
        const int M = a.M > 0 ? a.M : a.n + 1;
        const ModulusGrid grid{a.levels, a.substeps};
        j["modulus"] = json{{"value", modulus_norm(f, M, params.s, params.p, params.q, grid)},
                            {"M", M},
                            {"levels", grid.levels},
                            {"substeps", grid.substeps},
                            {"profile", modulus_profile(f, M, params.s, params.p, grid)}};
        emit(dump(j), a.out, out);
        return kExitOk;
    }
    params.validate();
    if (a.which == "star") {
        const auto st = norm_star(f, params, a.D, a.epsilon);
        j["star"] = breakdown_json(st);
        j["tail_bounds"] = json{{"series", st.series_tail}, {"last_level_term", st.level_terms.empty() ? 0.0 : st.level_terms.back()}};
    } else if (a.which == "circ") {
        const auto ci = norm_circ(f, params, a.D);
        j["circ"] = breakdown_json(ci);
        j["tail_bounds"] = json{{"last_level_term", ci.level_terms.empty() ? 0.0 : ci.level_terms.back()}};
    } else {
        const auto rep = equivalence_report(f, params, a.D, a.epsilon);
        j["star"] = breakdown_json(rep.star);
        j["circ"] = breakdown_json(rep.circ);
        j["ratio"] = rep.ratio ? json(*rep.ratio) : json(nullptr);
        j["bounds"] = json{{"lower", rep.lower},
                           {"upper", rep.upper},
                           {"block_ratio", rep.block_ratio ? json(*rep.block_ratio) : json(nullptr)},
                           {"violation", rep.violation}};
        j["tail_bounds"] = json{{"series", rep.star.series_tail},
                                {"star_last_level_term", rep.star.level_terms.empty() ? 0.0 : rep.star.level_terms.back()},
                                {"circ_last_level_term", rep.circ.level_terms.empty() ? 0.0 : rep.circ.level_terms.back()}};
    }
    emit(dump(j), a.out, out);
    return kExitOk;
}

// ------------------------------------------------------------------- gram

struct GramArgs {
    std::string system = "phi";
    int n = 1;
    std::string sign = "+";
    std::string t;
    int range = 8;
    double epsilon = 1e-10;
    bool matrix = false;
    std::string out;
};

int cmd_gram(const GramArgs& a, std::ostream& out) {
    check_order(a.n, 1);
    check_epsilon(a.epsilon);
    if (a.range < 1) throw UsageError("--range must be at least 1");
    GramSystem sys;
    if (a.system == "phi") {
        sys = GramSystem::Phi;
    } else if (a.system == "psi") {
        sys = GramSystem::Psi;
    } else if (a.system == "cross") {
        sys = GramSystem::Cross;
    } else {
        throw UsageError("--system must be phi, psi or cross");
    }
    WaveletSpec spec = WaveletSpec::all_r(a.n, parse_sign(a.sign));
    spec.tchoice = parse_tchoice(a.t, a.n);
    const auto g = gram_matrix(sys, spec, a.range, a.epsilon);
    const Tolerances tol;
    json j = report_header("gram");
    j["system"] = a.system;
    j["spec"] = spec_json(spec);
    j["range"] = a.range;
    j["epsilon"] = a.epsilon;
    j["rows"] = g.rows;
    j["cols"] = g.cols;
    j["max_deviation"] = g.max_deviation;
    j["passed"] = g.max_deviation <= tol.gram;
    if (a.matrix) {
        json rows = json::array();
        for (std::size_t i = 0; i < g.rows; ++i) {
            rows.push_back(std::vector<double>(g.entries.begin() + static_cast<long>(i * g.cols),
                                               g.entries.begin() + static_cast<long>((i + 1) * g.cols)));
        }
        j["matrix"] = std::move(rows);
    }
    emit(dump(j), a.out, out);
    return g.max_deviation <= tol.gram ? kExitOk : kExitVerificationFailed;
}

// -------------------------------------------------------------- plot-data

struct PlotArgs {
    std::string figure;
    double epsilon = 1e-12;
    std::string out;
};

int cmd_plot(const PlotArgs& a, std::ostream& out) {
    check_epsilon(a.epsilon);
    const auto it = std::find_if(kFigures.begin(), kFigures.end(), [&](const char* id) { return a.figure == id; });
    if (it == kFigures.end()) throw UsageError("unknown figure id '" + a.figure + "'");
    const std::string id = a.figure;
    const int n = id.find('2') != std::string::npos ? 2 : 1;
    const Sign sign = id.back() == '+' ? Sign::Plus : Sign::Minus;
    WaveletSpec spec = WaveletSpec::all_r(n, sign);
    const bool inverse = id.rfind("r1psi", 0) == 0;
    if (inverse) spec.tchoice.assign(1, TChoice::UseInvR);
    auto series = id.rfind("phi", 0) == 0 ? phi_series(spec, a.epsilon) : psi_series(spec, a.epsilon);
    if (inverse) series = series.scaled(euler_frobenius_data(1).rs[0]);
    const auto w = mass_window(series);
    const auto f = series_to_polynomial(series).polynomial;
    emit(csv_samples(f, w.first, w.second), a.out, out);
    return kExitOk;
}

}  // namespace

std::span<const char* const> figure_ids() { return kFigures; }

int run(std::span<const std::string> args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Spline wavelets with rational filters: roots, construction, localisation and Besov norms", "blw"};
    app.require_subcommand(1);
    app.fallthrough(false);

    RootsArgs roots;
    auto* c_roots = app.add_subcommand("roots", "Euler-Frobenius roots and constants");
    c_roots->add_option("--n", roots.n, "order")->required();
    c_roots->add_option("--format", roots.format, "json or table")->check(CLI::IsMember({"json", "table"}));
    c_roots->add_option("--out", roots.out, "output file");

    BuildArgs build;
    auto* c_build = app.add_subcommand("build", "Build a scaling function or wavelet series");
    c_build->add_option("--kind", build.kind, "phi or psi")->check(CLI::IsMember({"phi", "psi"}));
    c_build->add_option("--n", build.n, "order")->required();
    c_build->add_option("--sign", build.sign, "+ or -");
    c_build->add_option("--t", build.t, "comma list of r|invr, one per factor");
    c_build->add_option("--epsilon", build.epsilon, "truncation threshold");
    c_build->add_option("--window", build.window, "x-window a,b");
    c_build->add_option("--format", build.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
    c_build->add_option("--out", build.out, "output file");

    VerifyArgs verify;
    auto* c_verify = app.add_subcommand("verify", "Run a verification suite");
    c_verify->add_option("suite", verify.suite, "bspline, localisation, dym, moments or all");
    c_verify->add_option("--n", verify.n, "order");
    c_verify->add_option("--epsilon", verify.epsilon, "truncation threshold");
    c_verify->add_flag("--allow-large-n", verify.allow_large_n, "permit Psi assembly above BLW_MAX_N");
    c_verify->add_option("--out", verify.out, "output file");

    NormArgs norm;
    auto* c_norm = app.add_subcommand("norm", "Besov sequence norms of a function");
    c_norm->add_option("--input", norm.input, "polynomial JSON or x,value CSV")->required();
    c_norm->add_option("--n", norm.n, "order");
    c_norm->add_option("--s", norm.s, "smoothness");
    c_norm->add_option("--p", norm.p, "integrability exponent (inf allowed)");
    c_norm->add_option("--q", norm.q, "summability exponent (inf allowed)");
    c_norm->add_option("--D", norm.D, "finest level");
    c_norm->add_option("--epsilon", norm.epsilon, "series truncation threshold");
    c_norm->add_option("--which", norm.which, "star, circ, both or modulus");
    c_norm->add_option("--M", norm.M, "difference order for modulus (default n+1)");
    c_norm->add_option("--levels", norm.levels, "dyadic t-levels for modulus");
    c_norm->add_option("--substeps", norm.substeps, "h-substeps per level for modulus");
    c_norm->add_option("--out", norm.out, "output file");

    GramArgs gram;
    auto* c_gram = app.add_subcommand("gram", "Gram matrix of translates");
    c_gram->add_option("--system", gram.system, "phi, psi or cross");
    c_gram->add_option("--n", gram.n, "order");
    c_gram->add_option("--sign", gram.sign, "+ or -");
    c_gram->add_option("--t", gram.t, "comma list of r|invr");
    c_gram->add_option("--range", gram.range, "shift range");
    c_gram->add_option("--epsilon", gram.epsilon, "truncation threshold");
    c_gram->add_flag("--matrix", gram.matrix, "include matrix entries");
    c_gram->add_option("--out", gram.out, "output file");

    PlotArgs plot;
    auto* c_plot = app.add_subcommand("plot-data", "CSV samples for one figure");
    c_plot->add_option("figure", plot.figure, "figure id")->required();
    c_plot->add_option("--epsilon", plot.epsilon, "truncation threshold");
    c_plot->add_option("--out", plot.out, "output file");

    try {
        std::vector<std::string> argv(args.rbegin(), args.rend());
        app.parse(argv);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        CLI::App* sub = nullptr;
        for (auto* s : app.get_subcommands()) sub = s;
        err << (sub ? sub->help() : app.help());
        return kExitUsage;
    }

    try {
        if (c_roots->parsed()) return cmd_roots(roots, out);
        if (c_build->parsed()) return cmd_build(build, out);
        if (c_verify->parsed()) return cmd_verify(verify, out);
        if (c_norm->parsed()) return cmd_norm(norm, out);
        if (c_gram->parsed()) return cmd_gram(gram, out);
        if (c_plot->parsed()) return cmd_plot(plot, out);
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitUsage;
}

}  // namespace blw::cli
