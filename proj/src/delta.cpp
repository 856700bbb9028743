#include "ssr/delta.hpp"

#include <sstream>

#include "ssr/error.hpp"

namespace ssr {

DeltaMap::DeltaMap(int codomain, std::vector<int> values)
    : codomain_(codomain), values_(std::move(values)) {
    if (codomain_ < 0 || values_.empty()) {
        throw InvariantError("DeltaMap: empty domain or negative codomain");
    }
    int prev = 0;
    for (int v : values_) {
        if (v < prev || v > codomain_) {
            throw InvariantError("DeltaMap: values not monotone in [0," + std::to_string(codomain_) +
                                 "]: " + str());
        }
        prev = v;
    }
}

DeltaMap DeltaMap::identity(int n) {
    std::vector<int> v(static_cast<std::size_t>(n) + 1);
    for (int i = 0; i <= n; ++i) v[static_cast<std::size_t>(i)] = i;
    return DeltaMap(n, std::move(v));
}

DeltaMap DeltaMap::coface(int n, int i) {
    std::vector<int> v;
    for (int l = 0; l <= n; ++l) {
        if (l != i) v.push_back(l);
    }
    return DeltaMap(n, std::move(v));
}

DeltaMap DeltaMap::codegeneracy(int n, int i) {
    std::vector<int> v;
    for (int l = 0; l <= n + 1; ++l) v.push_back(l <= i ? l : l - 1);
    return DeltaMap(n, std::move(v));
}

DeltaMap DeltaMap::constant(int k, int n, int value) {
    return DeltaMap(n, std::vector<int>(static_cast<std::size_t>(k) + 1, value));
}

DeltaMap DeltaMap::interval(int n, int lo, int hi) {
    std::vector<int> v;
    for (int l = lo; l <= hi; ++l) v.push_back(l);
    return DeltaMap(n, std::move(v));
}

std::vector<DeltaMap> DeltaMap::all(int k, int n) {
    std::vector<DeltaMap> out;
    std::vector<int> cur(static_cast<std::size_t>(k) + 1, 0);
    while (true) {
        out.emplace_back(n, cur);
        // next monotone sequence in lexicographic order
        int pos = k;
        while (pos >= 0 && cur[static_cast<std::size_t>(pos)] == n) --pos;
        if (pos < 0) break;
        int v = cur[static_cast<std::size_t>(pos)] + 1;
        for (int l = pos; l <= k; ++l) cur[static_cast<std::size_t>(l)] = v;
    }
    return out;
}

bool DeltaMap::injective() const {
    for (std::size_t i = 1; i < values_.size(); ++i) {
        if (values_[i] == values_[i - 1]) return false;
    }
    return true;
}

bool DeltaMap::surjective() const {
    if (values_.front() != 0 || values_.back() != codomain_) return false;
    for (std::size_t i = 1; i < values_.size(); ++i) {
        if (values_[i] - values_[i - 1] > 1) return false;
    }
    return true;
}

bool DeltaMap::is_identity() const { return dom() == cod() && injective(); }

DeltaMap DeltaMap::front(int j) const {
    return DeltaMap((*this)(j), std::vector<int>(values_.begin(), values_.begin() + j + 1));
}

std::string DeltaMap::str() const {
    std::ostringstream os;
    os << '(';
    for (std::size_t i = 0; i < values_.size(); ++i) os << (i ? "," : "") << values_[i];
    os << "):[" << dom() << "]->[" << codomain_ << ']';
    return os.str();
}

DeltaMap compose(const DeltaMap& u, const DeltaMap& w) {
    if (w.cod() != u.dom()) {
        throw InvariantError("compose: " + u.str() + " after " + w.str() + " has a dimension mismatch");
    }
    std::vector<int> v;
    v.reserve(w.values().size());
    for (int x : w.values()) v.push_back(u(x));
    return DeltaMap(u.cod(), std::move(v));
}

EpiMono epi_mono(const DeltaMap& u) {
    std::vector<int> image;
    std::vector<int> epi;
    for (int x : u.values()) {
        if (image.empty() || image.back() != x) image.push_back(x);
        epi.push_back(static_cast<int>(image.size()) - 1);
    }
    int m = static_cast<int>(image.size()) - 1;
    return {DeltaMap(m, std::move(epi)), DeltaMap(u.cod(), std::move(image))};
}

ImageFactorization image_factorization(const DeltaMap& u) {
    auto [epi, mono] = epi_mono(u);
    int lo = u(0);
    int hi = u(u.dom());
    std::vector<int> mid;
    for (int x : mono.values()) mid.push_back(x - lo);
    return {epi, DeltaMap(hi - lo, std::move(mid)), DeltaMap::interval(u.cod(), lo, hi), lo, hi};
}

}  // namespace ssr
