#include "nlscan/rng.hpp"

#include "nlscan/dist.hpp"

namespace nlscan {

double Rng::next_gaussian() { return dist::normal_quantile(next_uniform()); }

}  // namespace nlscan
