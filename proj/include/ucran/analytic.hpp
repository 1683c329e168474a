#pragma once

namespace ucran {

// Erlang-B blocking for offered load a (Erlangs) on c servers, via the
// standard recursion B_k = a*B_{k-1} / (k + a*B_{k-1}).
double erlang_b(double offered_erlangs, int servers);

// M/M/1 mean sojourn time W = 1/(mu - lambda); requires lambda < mu.
double mm1_sojourn(double lambda, double mu);

// M/M/1 mean number in system L = rho/(1-rho).
double mm1_in_system(double lambda, double mu);

}  // namespace ucran
