#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <vector>

#include "germkit/error.hpp"
#include "germkit/order.hpp"
#include "germkit/poly.hpp"

namespace germ {

/// Reduces p against a list of polynomials that is assumed to already be a
/// standard basis for `ord`. Global orders give the fully reduced remainder.
/// Local orders give a remainder that is fully reduced when the leading
/// ideal has finite colength, and a Mora weak normal form otherwise (only
/// the leading monomial is guaranteed irreducible; zero iff p lies in the
/// ideal of the local ring).
Poly reduce(const Poly& p, const std::vector<Poly>& standard, const MonomialOrder& ord,
            const Limits& limits = {});

/// Buchberger for global and elimination orders. For the local order a
/// truncated computation modulo a power of the maximal ideal is tried first
/// and kept once it certifies finite colength; otherwise Mora's tangent cone
/// algorithm runs. The result is minimal, monic and sorted by ascending
/// leading monomial; for global orders it is the reduced basis.
std::vector<Poly> compute_standard_basis(const std::vector<Poly>& generators,
                                         const MonomialOrder& ord, const Limits& limits = {});

/// Local standard basis by Mora's algorithm alone.
std::vector<Poly> mora_standard_basis(const std::vector<Poly>& generators, const Limits& limits = {});

/// Leading monomial of a nonzero polynomial under ord.
Monomial leading_monomial(const Poly& p, const MonomialOrder& ord);
/// Sorted by ord, largest first.
std::vector<std::pair<Monomial, Rational>> ordered_terms(const Poly& p, const MonomialOrder& ord);

/// Generator list plus a per-order cache of standard bases. Copies share
/// the cache; the cache is guarded so concurrent readers are safe.
class Ideal {
 public:
  Ideal(RingPtr ring, std::vector<Poly> generators);
  /// The zero ideal of the ring with no variables; a placeholder value.
  Ideal();

  static Ideal zero(RingPtr ring);
  static Ideal unit(RingPtr ring);

  const RingPtr& ring() const noexcept { return ring_; }
  std::size_t nvars() const noexcept { return ring_->size(); }
  /// Never empty; the zero ideal is presented by the single generator 0.
  const std::vector<Poly>& generators() const noexcept { return generators_; }

  const std::vector<Poly>& standard_basis(const MonomialOrder& ord, const Limits& limits = {}) const;
  const std::vector<Poly>& global_basis(const Limits& limits = {}) const;
  const std::vector<Poly>& local_basis(const Limits& limits = {}) const;

  bool is_zero() const;
  /// Membership in the polynomial ring.
  bool contains(const Poly& p, const Limits& limits = {}) const;
  /// Membership in the local ring at the origin.
  bool contains_locally(const Poly& p, const Limits& limits = {}) const;
  bool is_unit(const Limits& limits = {}) const;
  bool is_unit_locally(const Limits& limits = {}) const;

 private:
  struct Cache {
    std::mutex mutex;
    std::map<MonomialOrder, std::vector<Poly>> bases;
  };

  RingPtr ring_;
  std::vector<Poly> generators_;
  std::shared_ptr<Cache> cache_;
};

/// The public division operation: reduces against a standard basis of the
/// ideal generated by `basis`, so p - result lies in that ideal.
Poly normal_form(const Poly& p, const std::vector<Poly>& basis, const MonomialOrder& ord,
                 const Limits& limits = {});

/// Dimension over the rationals of the local ring at 0 modulo I; nullopt
/// means infinite.
std::optional<std::size_t> quotient_dim_local(const Ideal& I, const Limits& limits = {});

/// Krull dimension of V(I) at the origin; nullopt means the germ is empty.
std::optional<int> dim_at_origin(const Ideal& I, const Limits& limits = {});

Ideal ideal_sum(const Ideal& a, const Ideal& b);
Ideal ideal_product(const Ideal& a, const Ideal& b);
Ideal ideal_intersection(const Ideal& a, const Ideal& b, const Limits& limits = {});
/// I : J, computed as the intersection of (I ∩ ⟨h⟩) / h over generators h.
Ideal ideal_colon(const Ideal& I, const Ideal& J, const Limits& limits = {});
/// I : J^∞, computed generator-wise with an auxiliary variable and
/// intersected. The result is presented by its reduced global basis.
Ideal saturate(const Ideal& I, const Ideal& J, const Limits& limits = {});
/// Equality in the polynomial ring (reduced global bases agree).
bool ideals_equal(const Ideal& a, const Ideal& b, const Limits& limits = {});
/// Equality in the local ring at the origin (mutual local membership).
bool ideals_equal_locally(const Ideal& a, const Ideal& b, const Limits& limits = {});

Ideal jacobian_ideal(const Poly& g);

}  // namespace germ
