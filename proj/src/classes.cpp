#include "mixaudit/classes.hpp"

#include <cmath>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "mixaudit/coefficients.hpp"

namespace mixaudit {

Pattern canonical(Pattern h) {
    while (!h.empty() && h.back() == 0) h.pop_back();
    return h;
}

namespace {

// exact for the small counts arising here; integers stay below 2^53
double binom(int c, int h) {
    if (h < 0 || h > c) return 0.0;
    if (h > c - h) h = c - h;
    double r = 1.0;
    for (int i = 1; i <= h; ++i) r = r * (c - h + i) / i;
    return std::round(r);
}

std::string pattern_str(const Pattern& h) {
    std::ostringstream os;
    os << "(";
    for (std::size_t i = 0; i < h.size(); ++i) os << (i ? "," : "") << h[i];
    os << ")";
    return os.str();
}

}  // namespace

ClassStructure::ClassStructure(std::vector<int> class_of) : class_of_(std::move(class_of)) {
    if (class_of_.empty()) throw std::invalid_argument("ClassStructure: empty");
    int next_id = 1;
    for (std::size_t i = 0; i < class_of_.size(); ++i) {
        if (class_of_[i] < 1 || class_of_[i] > next_id)
            throw std::invalid_argument(
                "ClassStructure: class ids must be contiguous in order of first appearance");
        if (class_of_[i] == next_id) ++next_id;
    }
    const int M = next_id - 1;
    cap_prefix_.assign(M, std::vector<int>(class_of_.size() + 1, 0));
    for (int t = 1; t <= static_cast<int>(class_of_.size()); ++t) {
        for (int m = 1; m <= M; ++m)
            cap_prefix_[m - 1][t] = cap_prefix_[m - 1][t - 1] + (class_of_[t - 1] == m ? 1 : 0);
    }
}

ClassStructure ClassStructure::all_alike(int K) {
    return ClassStructure(std::vector<int>(K, 1));
}

ClassStructure ClassStructure::all_distinct(int K) {
    std::vector<int> ids(K);
    std::iota(ids.begin(), ids.end(), 1);
    return ClassStructure(std::move(ids));
}

int ClassStructure::class_of(int component) const {
    if (component < 1 || component > components())
        throw std::out_of_range("ClassStructure: component index");
    return class_of_[component - 1];
}

int ClassStructure::num_classes(int t) const {
    if (t < 1 || t > components()) throw std::out_of_range("ClassStructure: t");
    int m = 0;
    for (int j = 0; j < t; ++j) m = std::max(m, class_of_[j]);
    return m;
}

int ClassStructure::capacity(int m, int t) const {
    if (m < 1 || m > static_cast<int>(cap_prefix_.size()))
        throw std::out_of_range("ClassStructure: class id");
    if (t < 0 || t > components()) throw std::out_of_range("ClassStructure: t");
    return cap_prefix_[m - 1][t];
}

int ClassStructure::total_capacity(int m) const { return capacity(m, components()); }

int s_of_h(const Pattern& h_in, const ClassStructure& cs) {
    const Pattern h = canonical(h_in);
    if (static_cast<int>(h.size()) > static_cast<int>(cs.num_classes(cs.components())))
        throw std::invalid_argument("s_of_h: pattern has more classes than the structure");
    for (std::size_t m = 0; m < h.size(); ++m) {
        if (h[m] < 0) throw std::invalid_argument("s_of_h: negative count");
        if (h[m] > cs.total_capacity(static_cast<int>(m) + 1))
            throw std::invalid_argument("s_of_h: infeasible pattern, h_m exceeds class capacity");
    }
    for (int r = 1; r <= cs.components(); ++r) {
        bool ok = true;
        for (std::size_t m = 0; m < h.size(); ++m)
            if (cs.capacity(static_cast<int>(m) + 1, r) < h[m]) { ok = false; break; }
        if (ok) return r;
    }
    throw std::logic_error("s_of_h: unreachable");
}

double gamma_h_t(const Pattern& h_in, int t, const ClassStructure& cs) {
    if (t < 1 || t > cs.components()) throw std::invalid_argument("gamma_h_t: t out of range");
    const Pattern h = canonical(h_in);
    const int N = cs.num_classes(t);
    if (static_cast<int>(h.size()) > N) return 0.0;
    const int it = cs.class_index(t);
    const int h_it = (it <= static_cast<int>(h.size())) ? h[it - 1] : 0;
    if (h_it < 1) return 0.0;
    double prod = 1.0;
    for (int m = 1; m <= N; ++m) {
        const int hm = (m <= static_cast<int>(h.size())) ? h[m - 1] : 0;
        if (hm < 0 || hm > cs.capacity(m, t)) return 0.0;
        prod *= binom(cs.capacity(m, t), hm);
    }
    return prod * h_it / cs.capacity(it, t);
}

std::vector<Pattern> enumerate_H(int t, const ClassStructure& cs, int n, std::optional<int> r) {
    if (t < 1 || t > cs.components()) throw std::invalid_argument("enumerate_H: t out of range");
    const int N = cs.num_classes(t);
    const int it = cs.class_index(t);

    std::vector<Pattern> out;
    Pattern h(N, 0);
    auto rec = [&](auto&& self, int m, int total) -> void {
        if (m > N) {
            Pattern c = canonical(h);
            if (!r || s_of_h(c, cs) == *r) out.push_back(std::move(c));
            return;
        }
        const int lo = (m == it) ? 1 : 0;
        const int hi = std::min(cs.capacity(m, t), n - total);
        for (int v = lo; v <= hi; ++v) {
            h[m - 1] = v;
            self(self, m + 1, total + v);
        }
        h[m - 1] = 0;
    };
    rec(rec, 1, 0);
    return out;
}

double gamma_h_rk(const Pattern& h_in, int r, int k, const ClassStructure& cs) {
    const Pattern h = canonical(h_in);
    if (r != s_of_h(h, cs)) throw std::invalid_argument("gamma_h_rk: r must equal s(h)");
    if (k < r) throw std::invalid_argument("gamma_h_rk: need k >= r");
    const double gr = gamma_h_t(h, r, cs);
    double sum = 0.0;
    for (int t = r; t <= k; ++t) sum += gamma_h_t(h, t, cs);
    return sum / gr;
}

double represent_fk(const std::map<Pattern, double>& fdagger_by_pattern, int k,
                    const ClassStructure& cs, const ModelConfig& config) {
    if (k < 1 || k > cs.components()) throw std::invalid_argument("represent_fk: k out of range");
    double fk = 0.0;
    for (int r = 1; r <= k; ++r) {
        const double a_kr = log_a(k, r, config).to_double();
        // {h : s(h) = r} is exactly the set reachable at r with r minimal;
        // gamma_h^{r,k} zeroes the t's at which h is not reachable.
        for (const Pattern& h : enumerate_H(r, cs, config.n, r)) {
            auto it = fdagger_by_pattern.find(h);
            if (it == fdagger_by_pattern.end())
                throw std::invalid_argument("represent_fk: missing f_dagger for pattern " +
                                            pattern_str(h));
            fk += a_kr * gamma_h_rk(h, r, k, cs) * it->second;
        }
    }
    return fk;
}

double represent_fk_recursive(const std::map<Pattern, double>& fdagger_by_pattern, int k,
                              const ClassStructure& cs, const ModelConfig& config) {
    if (k == 1) return represent_fk(fdagger_by_pattern, 1, cs, config);
    const double prev = represent_fk(fdagger_by_pattern, k - 1, cs, config);
    double corr = 0.0;
    for (int r = 1; r <= k; ++r) {
        const double a_kr = log_a(k, r, config).to_double();
        for (const Pattern& h : enumerate_H(r, cs, config.n, r)) {
            auto it = fdagger_by_pattern.find(h);
            if (it == fdagger_by_pattern.end())
                throw std::invalid_argument("represent_fk_recursive: missing f_dagger for pattern " +
                                            pattern_str(h));
            corr += a_kr * (gamma_h_t(h, k, cs) / gamma_h_t(h, r, cs)) * it->second;
        }
    }
    return log_a(k, k - 1, config).to_double() * prev + corr;
}

}  // namespace mixaudit
