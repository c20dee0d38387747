#include "tcmp/monomial.hpp"

#include "tcmp/error.hpp"

namespace tcmp {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::MissingMoment: return "MissingMoment";
    case ErrorCode::AsymmetricData: return "AsymmetricData";
    case ErrorCode::DegreeOverflow: return "DegreeOverflow";
    case ErrorCode::NotHermitian: return "NotHermitian";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::NotARelation: return "NotARelation";
    case ErrorCode::ZeroLeadingCoefficient: return "ZeroLeadingCoefficient";
    case ErrorCode::OutsideCone: return "OutsideCone";
    case ErrorCode::InfiniteVarietySuspected: return "InfiniteVarietySuspected";
    case ErrorCode::SingularSystem: return "SingularSystem";
    case ErrorCode::NoAnalyticCubic: return "NoAnalyticCubic";
    case ErrorCode::PatternMismatch: return "PatternMismatch";
    case ErrorCode::DegenerateParams: return "DegenerateParams";
    case ErrorCode::DegenerateTransform: return "DegenerateTransform";
    case ErrorCode::IllConditioned: return "IllConditioned";
    case ErrorCode::NegativeDensity: return "NegativeDensity";
    case ErrorCode::VerificationFailed: return "VerificationFailed";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::ParseError: return "ParseError";
  }
  return "Unknown";
}

Complex MonomialIndex::evaluate(Complex z) const {
  Complex result{1.0, 0.0};
  const Complex zb = std::conj(z);
  for (int k = 0; k < i; ++k) result *= zb;
  for (int k = 0; k < j; ++k) result *= z;
  return result;
}

std::string MonomialIndex::label() const {
  if (i == 0 && j == 0) return "1";
  std::string s;
  if (i > 0) s += i == 1 ? "Zb" : "Zb^" + std::to_string(i);
  if (j > 0) s += j == 1 ? "Z" : "Z^" + std::to_string(j);
  return s;
}

MonomialIndex monomial_at(std::size_t position) {
  std::size_t d = 0;
  while ((d + 1) * (d + 2) / 2 <= position) ++d;
  const auto i = static_cast<int>(position - d * (d + 1) / 2);
  return {i, static_cast<int>(d) - i};
}

std::vector<MonomialIndex> graded_monomials(int n) {
  std::vector<MonomialIndex> out;
  out.reserve(monomial_count(n));
  for (int d = 0; d <= n; ++d)
    for (int i = 0; i <= d; ++i) out.push_back({i, d - i});
  return out;
}

}  // namespace tcmp
