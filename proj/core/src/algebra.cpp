#include "symcone/algebra.hpp"

#include <charconv>
#include <string>

#include "symcone/errors.hpp"

namespace symcone {

Algebra Algebra::sym_real(int r) {
  if (r < 1 || r > kMaxMatrixOrder) {
    throw InvalidAlgebra("SYM_REAL order must be in [1, " + std::to_string(kMaxMatrixOrder) +
                         "], got " + std::to_string(r));
  }
  const auto dim = static_cast<std::size_t>(r) * (r + 1) / 2;
  return Algebra(AlgebraKind::SymReal, r, r, dim, 1);
}

Algebra Algebra::herm_complex(int r) {
  if (r < 2 || r > kMaxMatrixOrder) {
    throw InvalidAlgebra("HERM_COMPLEX order must be in [2, " + std::to_string(kMaxMatrixOrder) +
                         "], got " + std::to_string(r));
  }
  const auto dim = static_cast<std::size_t>(r) * r;
  return Algebra(AlgebraKind::HermComplex, r, r, dim, 2);
}

Algebra Algebra::lorentz(int n) {
  if (n < 2) {
    throw InvalidAlgebra("LORENTZ order must be >= 2, got " + std::to_string(n));
  }
  return Algebra(AlgebraKind::Lorentz, n, 2, static_cast<std::size_t>(n) + 1, n - 1);
}

Algebra Algebra::parse(std::string_view spec) {
  const auto colon = spec.find(':');
  if (colon == std::string_view::npos) {
    throw ParseError("malformed algebra spec '" + std::string(spec) +
                     "': expected <kind>:<order> with kind in {symr, hermc, lorentz}");
  }
  const auto kind = spec.substr(0, colon);
  const auto digits = spec.substr(colon + 1);
  int order = 0;
  const auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), order);
  if (ec != std::errc{} || ptr != digits.data() + digits.size() || digits.empty()) {
    throw ParseError("malformed algebra spec '" + std::string(spec) + "': order is not an integer");
  }
  try {
    if (kind == "symr") return sym_real(order);
    if (kind == "hermc") return herm_complex(order);
    if (kind == "lorentz") return lorentz(order);
  } catch (const InvalidAlgebra& e) {
    throw ParseError("malformed algebra spec '" + std::string(spec) + "': " + e.what());
  }
  throw ParseError("malformed algebra spec '" + std::string(spec) + "': unknown kind '" +
                   std::string(kind) + "' (expected symr, hermc or lorentz)");
}

Algebra Algebra::from_kind_name(std::string_view kind, int order) {
  if (kind == "SYM_REAL") return sym_real(order);
  if (kind == "HERM_COMPLEX") return herm_complex(order);
  if (kind == "LORENTZ") return lorentz(order);
  throw ParseError("unknown algebra kind '" + std::string(kind) + "'");
}

std::string Algebra::spec() const {
  switch (kind_) {
    case AlgebraKind::SymReal: return "symr:" + std::to_string(order_);
    case AlgebraKind::HermComplex: return "hermc:" + std::to_string(order_);
    case AlgebraKind::Lorentz: return "lorentz:" + std::to_string(order_);
  }
  return {};
}

std::string Algebra::kind_name() const {
  switch (kind_) {
    case AlgebraKind::SymReal: return "SYM_REAL";
    case AlgebraKind::HermComplex: return "HERM_COMPLEX";
    case AlgebraKind::Lorentz: return "LORENTZ";
  }
  return {};
}

std::string Algebra::to_string() const { return kind_name() + "(" + std::to_string(order_) + ")"; }

}  // namespace symcone
