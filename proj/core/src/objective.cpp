#include "pmsam/objective.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <stdexcept>

namespace pmsam {

namespace {

void check_input(const ObjectiveDescriptor& desc, const Position& p) {
    if (static_cast<int>(p.size()) != desc.dimension)
        throw std::invalid_argument("objective '" + desc.id + "': position has dimension " +
                                    std::to_string(p.size()) + ", expected " +
                                    std::to_string(desc.dimension));
    for (double x : p)
        if (!std::isfinite(x))
            throw std::invalid_argument("objective '" + desc.id +
                                        "': non-finite coordinate in position");
}

double sphere(const Position& x, RandomStream*) {
    double s = 0.0;
    for (double v : x) s += v * v;
    return s;
}

double max_abs(const Position& x, RandomStream*) {
    double m = 0.0;
    for (double v : x) m = std::max(m, std::fabs(v));
    return m;
}

double rotated_ellipsoid(const Position& x, RandomStream*) {
    double total = 0.0, prefix = 0.0;
    for (double v : x) {
        prefix += v;
        total += prefix * prefix;
    }
    return total;
}

double rastrigin(const Position& x, RandomStream*) {
    double s = 0.0;
    for (double v : x) s += v * v - 10.0 * std::cos(2.0 * M_PI * v) + 10.0;
    return s;
}

double quartic_noise(const Position& x, RandomStream* rng) {
    double s = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        double q = x[i] * x[i];
        s += static_cast<double>(i + 1) * q * q;
    }
    // One noise draw per evaluation; a null stream means noise-free.
    if (rng) s += rng->unit();
    return s;
}

double schwefel(const Position& x, RandomStream*) {
    double s = 0.0;
    for (double v : x) s += -v * std::sin(std::sqrt(std::fabs(v)));
    return s;
}

double griewank(const Position& x, RandomStream*) {
    double s = 0.0, prod = 1.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        s += x[i] * x[i] / 4000.0;
        prod *= std::cos(x[i] / std::sqrt(static_cast<double>(i + 1)));
    }
    return s - prod + 1.0;
}

double rosenbrock(const Position& x, RandomStream*) {
    double s = 0.0;
    for (std::size_t i = 0; i + 1 < x.size(); ++i) {
        double a = x[i] * x[i] - x[i + 1];
        double b = x[i] - 1.0;
        s += 100.0 * a * a + b * b;
    }
    return s;
}

double abs_sum_prod(const Position& x, RandomStream*) {
    double s = 0.0, prod = 1.0;
    for (double v : x) {
        s += std::fabs(v);
        prod *= std::fabs(v);
    }
    return s + prod;
}

double michalewicz(const Position& x, RandomStream*) {
    // Steepness exponent 2m with m = 10, a constant of the function family.
    double s = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        double t = std::sin(static_cast<double>(i + 1) * x[i] * x[i] / M_PI);
        s += std::sin(x[i]) * std::pow(t, 20.0);
    }
    return -s;
}

double ackley(const Position& x, RandomStream*) {
    double sq = 0.0, cs = 0.0;
    auto d = static_cast<double>(x.size());
    for (double v : x) {
        sq += v * v;
        cs += std::cos(2.0 * M_PI * v);
    }
    return -20.0 * std::exp(-0.2 * std::sqrt(sq / d)) - std::exp(cs / d) + 20.0 + M_E;
}

double sine_envelope(const Position& x, RandomStream*) {
    double sin_sq = 0.0, sq = 0.0, sin_sqrt = 0.0;
    for (double v : x) {
        double s = std::sin(v);
        sin_sq += s * s;
        sq += v * v;
        double r = std::sin(std::sqrt(std::fabs(v)));
        sin_sqrt += r * r;
    }
    return (sin_sq - std::exp(-sq)) * std::exp(-sin_sqrt);
}

std::vector<ObjectiveDescriptor> make_suite() {
    std::vector<ObjectiveDescriptor> suite;
    auto add = [&suite](std::string id, double lower, double upper, double known_min,
                        bool stochastic, double (*fn)(const Position&, RandomStream*)) {
        ObjectiveDescriptor d;
        d.id = std::move(id);
        d.dimension = 30;
        d.lower = lower;
        d.upper = upper;
        d.known_min = known_min;
        d.stochastic = stochastic;
        d.sense = Sense::minimize;
        d.fn = fn;
        suite.push_back(std::move(d));
    };
    add("f1", -100.0, 100.0, 0.0, false, sphere);
    add("f2", -100.0, 100.0, 0.0, false, max_abs);
    add("f3", -100.0, 100.0, 0.0, false, rotated_ellipsoid);
    add("f4", -5.12, 5.12, 0.0, false, rastrigin);
    add("f5", -1.28, 1.28, 0.0, true, quartic_noise);
    // Published constant; the analytic minimum is closer to -418.9829*d.
    add("f6", -500.0, 500.0, -418.883 * 30.0, false, schwefel);
    add("f7", -600.0, 600.0, 0.0, false, griewank);
    add("f8", -5.0, 10.0, 0.0, false, rosenbrock);
    add("f9", -10.0, 10.0, 0.0, false, abs_sum_prod);
    // Published value is the d=5 literature optimum; kept as metadata only.
    add("f10", 0.0, M_PI, -4.687, false, michalewicz);
    add("f11", -32.0, 32.0, 0.0, false, ackley);
    add("f12", -10.0, 10.0, -1.0, false, sine_envelope);
    return suite;
}

std::mutex& registry_mutex() {
    static std::mutex m;
    return m;
}

std::map<std::string, ObjectiveDescriptor, std::less<>>& registry() {
    static std::map<std::string, ObjectiveDescriptor, std::less<>> r;
    return r;
}

} // namespace

double evaluate(const ObjectiveDescriptor& desc, const Position& p, RandomStream* rng) {
    check_input(desc, p);
    return desc.fn(p, desc.stochastic ? rng : nullptr);
}

bool is_feasible(const ObjectiveDescriptor& desc, const Position& p) {
    if (static_cast<int>(p.size()) != desc.dimension)
        throw std::invalid_argument("objective '" + desc.id + "': position has dimension " +
                                    std::to_string(p.size()) + ", expected " +
                                    std::to_string(desc.dimension));
    for (double x : p)
        if (x < desc.lower || x > desc.upper) return false;
    return true;
}

const std::vector<ObjectiveDescriptor>& builtin_suite() {
    static const std::vector<ObjectiveDescriptor> suite = make_suite();
    return suite;
}

const ObjectiveDescriptor* find_objective(std::string_view id) {
    for (const auto& d : builtin_suite())
        if (d.id == id) return &d;
    std::lock_guard lock(registry_mutex());
    auto it = registry().find(id);
    return it == registry().end() ? nullptr : &it->second;
}

void register_objective(ObjectiveDescriptor desc) {
    if (!desc.fn) throw std::invalid_argument("register_objective: missing function body");
    if (desc.dimension < 1) throw std::invalid_argument("register_objective: dimension < 1");
    if (!(desc.lower < desc.upper))
        throw std::invalid_argument("register_objective: lower must be < upper");
    for (const auto& d : builtin_suite())
        if (d.id == desc.id)
            throw std::invalid_argument("register_objective: id '" + desc.id +
                                        "' shadows a built-in");
    std::lock_guard lock(registry_mutex());
    if (!registry().emplace(desc.id, desc).second)
        throw std::invalid_argument("register_objective: id '" + desc.id +
                                    "' already registered");
}

} // namespace pmsam
