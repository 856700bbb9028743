#ifndef SSR_DELTA_HPP
#define SSR_DELTA_HPP

#include <compare>
#include <string>
#include <vector>

namespace ssr {

/// An order-preserving map [k] -> [n], stored by its values u(0..k).
class DeltaMap {
public:
    DeltaMap() = default;
    /// Throws InvariantError unless values are nondecreasing within 0..codomain.
    DeltaMap(int codomain, std::vector<int> values);

    static DeltaMap identity(int n);
    /// The coface [n-1] -> [n] skipping i.
    static DeltaMap coface(int n, int i);
    /// The codegeneracy [n+1] -> [n] hitting i twice.
    static DeltaMap codegeneracy(int n, int i);
    static DeltaMap constant(int k, int n, int value);
    /// Inclusion of the interval [lo, hi] into [n].
    static DeltaMap interval(int n, int lo, int hi);

    /// Every order-preserving map [k] -> [n], lexicographically ordered.
    static std::vector<DeltaMap> all(int k, int n);

    int dom() const { return static_cast<int>(values_.size()) - 1; }
    int cod() const { return codomain_; }
    int operator()(int i) const { return values_[static_cast<std::size_t>(i)]; }
    const std::vector<int>& values() const { return values_; }

    bool injective() const;
    bool surjective() const;
    bool is_identity() const;

    /// u restricted to [0, j], viewed as a map [j] -> [u(j)].
    DeltaMap front(int j) const;

    std::string str() const;

    friend bool operator==(const DeltaMap&, const DeltaMap&) = default;
    friend auto operator<=>(const DeltaMap&, const DeltaMap&) = default;

private:
    int codomain_ = 0;
    std::vector<int> values_{0};
};

/// u ∘ w. Requires w.cod() == u.dom().
DeltaMap compose(const DeltaMap& u, const DeltaMap& w);

/// u = mono ∘ epi with epi surjective and mono injective.
struct EpiMono {
    DeltaMap epi;
    DeltaMap mono;
};
EpiMono epi_mono(const DeltaMap& u);

/// The factorisation u = incl ∘ mid ∘ surj through the smallest interval
/// [lo, hi] = [u(0), u(k)] containing the image.
struct ImageFactorization {
    DeltaMap surj;  // [k] -> im(u)
    DeltaMap mid;   // im(u) -> [0, hi - lo]
    DeltaMap incl;  // [0, hi - lo] -> [n], l |-> lo + l
    int lo = 0;
    int hi = 0;
};
ImageFactorization image_factorization(const DeltaMap& u);

}  // namespace ssr

#endif
