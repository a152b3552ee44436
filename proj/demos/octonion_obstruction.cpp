// On the (8,16) octonion-plane module, the -1 eigenspace of K^2 has dimension 6
// for every admissible V.  The dimension count for an Einstein hypersurface with
// a nonzero Y needs it to be 4, so this case contributes no solution.
//
//   octonion_obstruction [samples] [seed]

#include <cstdio>
#include <cstdlib>

#include "drspace/drspace.hpp"

using namespace drspace;

int main(int argc, char** argv) {
  const std::size_t samples = argc > 1 ? std::strtoul(argv[1], nullptr, 10) : 8;
  const std::uint64_t seed = argc > 2 ? std::strtoull(argv[2], nullptr, 10) : 1;

  const DamekRicci g(8, 16);
  Sampler rng(seed);
  const int required = 2 * 8 - 16 / 2 - 4;
  std::printf("module (d_z, d_v) = (8, 16); required d_-1 = %d\n\n", required);
  std::printf("%6s %10s %10s %6s %14s\n", "sample", "|V_1|", "|Y|", "d_-1", "K^2 residual");

  bool six = true;
  for (std::size_t k = 0; k < samples; ++k) {
    const Vector V = admissible_octonion_v(rng, 0.3 + rng.uniform());
    // the octonion-pair model places Y along the real unit
    const Vector Y = (0.2 + rng.uniform()) * Vector::Unit(8, 0);
    const ZMinusOne z = k_square_minus1_space(g, V, Y);
    six = six && z.dim() == 6;
    std::printf("%6zu %10.4f %10.4f %6d %14.2e\n", k, V.head(8).norm(), Y.norm(), static_cast<int>(z.dim()),
                z.equivalence_residual);
  }

  // Z' = |V_2|^-2 (Z V_2) V_1^* pairs Z with the second octonion equation
  const LedgerReport r = replay_octonion_case(samples, seed);
  std::printf("\nZ' residual %.2e, imaginary-part residual %.2e\n", r.at("octonion.zprime").residual,
              r.at("octonion.imaginary").residual);
  std::printf("%s\n", six ? "d_-1 = 6 throughout, never the required 4: no Einstein hypersurface here"
                          : "unexpected: some sample has d_-1 != 6");
  return six ? 0 : 1;
}
