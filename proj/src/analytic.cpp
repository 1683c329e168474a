#include "ucran/analytic.hpp"

#include <stdexcept>

namespace ucran {

double erlang_b(double offered_erlangs, int servers) {
  if (offered_erlangs < 0.0 || servers < 0)
    throw std::domain_error("erlang_b: negative input");
  double b = 1.0;
  for (int k = 1; k <= servers; ++k)
    b = offered_erlangs * b / (k + offered_erlangs * b);
  return b;
}

double mm1_sojourn(double lambda, double mu) {
  if (lambda >= mu) throw std::domain_error("mm1_sojourn: unstable queue");
  return 1.0 / (mu - lambda);
}

double mm1_in_system(double lambda, double mu) {
  if (lambda >= mu) throw std::domain_error("mm1_in_system: unstable queue");
  const double rho = lambda / mu;
  return rho / (1.0 - rho);
}

}  // namespace ucran
