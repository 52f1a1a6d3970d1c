// Copyright 2026 The qunc Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Prints every lower and upper bound on dA^2 + dB^2 for one random qutrit state.

#include <cstdio>

#include "qunc/bounds.hpp"
#include "qunc/reverse.hpp"

int main() {
    qunc::Rng rng(7);
    const auto rho = qunc::random_mixed(3, rng);
    const auto psi = qunc::random_pure(3, rng);
    const auto a = qunc::random_hermitian(3, rng);
    const auto b = qunc::random_hermitian(3, rng);

    auto show = [](const qunc::BoundReport& r) {
        std::printf("  %-28s %12.6f  (target %.6f, %s)\n", r.name.c_str(), r.boundValue, r.target,
                    r.holds() ? "holds" : "VIOLATED");
    };

    std::printf("mixed state, sum of variances %.6f\n", qunc::sum_variances(rho, a, b));
    show(qunc::robertson_sum_bound(rho, a, b));
    show(qunc::theorem1_bound(rho, a, b, qunc::random_perp(rho, rng)));
    show(qunc::theorem1_bound(rho, a, b));
    show(qunc::theorem2_pb_bound(rho, a, b));
    show(qunc::theorem3_optimized(rho, a, b, 64, rng));
    show(qunc::theorem4_fidelity_bound(rho, a, b));

    std::printf("pure state, sum of variances %.6f\n", qunc::sum_variances(psi.density(), a, b));
    show(qunc::theorem3_optimized(psi, a, b, 64, rng));
    show(qunc::kittaneh_bound(psi, a, b));
    show(qunc::elhaddad_kittaneh_bound(psi, a, b, 0.5, 2.0));
    return 0;
}
