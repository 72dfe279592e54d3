// Builds the auxiliary polynomial for one small system and prints how often it
// vanishes at each common root.
#include <kres/stepanov.hpp>

#include <iostream>

int main() {
    using namespace kres;
    const PrimeFieldCtx ctx(1009);
    const u64 t = 126;  // 1008 / 8
    // theta_i = (alpha + a_i)^t forces alpha = 3 to be a common root
    std::vector<u64> shifts{1, 5, 9, 14}, targets;
    for (u64 a : shifts) targets.push_back(mod_pow(3 + a, t, ctx));
    const SystemSpec spec(ctx, t, shifts, targets);

    const auto rep = verify_lemma_commonsol(spec);
    const auto& P = rep.params;
    std::cout << "r=" << rep.effective_r << " M=" << P.M << " D=" << P.D << " T=" << P.T << " N=" << P.N
              << " deg F=" << rep.deg_F << "\n";
    for (std::size_t i = 0; i < rep.roots.size(); ++i)
        std::cout << "root " << rep.roots[i] << " multiplicity " << rep.multiplicities[i] << "\n";
    std::cout << (rep.passed() ? "ok" : "FAILED") << "\n";
    return rep.passed() ? 0 : 1;
}
