#include "coopaloha/closed_form.hpp"

#include <string>

#include "coopaloha/error.hpp"

namespace coopaloha {

namespace {

constexpr std::array<bs_mask, 8> label_sets = {0, 0b001, 0b010, 0b100, 0b011, 0b110, 0b101, 0b111};

double w1(const m3_probes& p) {
  const auto& R = p.idle;
  const auto& C = p.single;
  const double nR2 = 1.0 - R[2], nR3 = 1.0 - R[3];
  const double sum = R[4] * R[6] * R[7] + C[4] * R[2] * R[5] * R[6] * R[7] +
                     C[4] * C[5] * R[2] * R[3] * R[6] * R[7] + C[6] * R[3] * R[4] * R[5] * R[7] +
                     C[6] * C[5] * R[2] * R[3] * R[4] * R[7] + C[4] * C[6] * R[2] * R[3] * R[5] * R[7] +
                     C[7] * (R[4] * R[5] * R[6] * (1.0 - nR2 * nR3) + C[4] * R[2] * R[3] * R[5] * R[6] +
                             C[6] * R[2] * R[3] * R[4] * R[5]);
  return 1.0 - p.sole * sum;
}

double w4(const m3_probes& p) {
  const auto& R = p.idle;
  const auto& C = p.single;
  const double nR1 = 1.0 - R[1], nR2 = 1.0 - R[2];
  const double inner = R[5] * R[6] * (1.0 - nR1 * nR2) + (1.0 - R[5] - C[5]) * R[1] * R[6] +
                       (1.0 - R[6] - C[6]) * R[2] * R[5] + C[5] * R[6] * (R[1] + nR1 * R[2] * R[3]) +
                       C[6] * R[5] * (R[2] + nR2 * R[1] * R[3]);
  return 1.0 - p.sole * (R[7] * inner + C[7] * R[3] * R[5] * R[6] * (1.0 - nR1 * nR2));
}

double w7(const m3_probes& p) {
  const auto& R = p.idle;
  const double nR1 = 1.0 - R[1], nR2 = 1.0 - R[2], nR3 = 1.0 - R[3];
  const double nR4 = 1.0 - R[4], nR5 = 1.0 - R[5], nR6 = 1.0 - R[6];
  return 1.0 - p.sole * (R[4] * R[5] * R[6] * (1.0 - nR1 * nR2 * nR3) + R[4] * R[5] * nR6 * R[2] +
                         R[4] * nR5 * R[6] * R[1] + nR4 * R[5] * R[6] * R[3]);
}

// Relabel base stations by `perm` (perm[j] = image of BS j, 0-based) and
// return probes seen from the image network.
m3_probes relabel(const m3_probes& p, const std::array<int, 3>& perm) {
  m3_probes out;
  out.sole = p.sole;
  for (int k = 1; k <= 7; ++k) {
    bs_mask image = 0;
    for (int j = 0; j < 3; ++j)
      if (label_sets[static_cast<std::size_t>(k)] & (1U << j)) image |= 1U << perm[static_cast<std::size_t>(j)];
    const auto src = static_cast<std::size_t>(m3_label_of(image));
    out.idle[static_cast<std::size_t>(k)] = p.idle[src];
    out.single[static_cast<std::size_t>(k)] = p.single[src];
  }
  return out;
}

}  // namespace

bs_mask m3_label_set(int label) {
  if (label < 1 || label > 7) throw config_error("three-BS group label must be in 1..7");
  return label_sets[static_cast<std::size_t>(label)];
}

int m3_label_of(bs_mask set) {
  for (int k = 1; k <= 7; ++k)
    if (label_sets[static_cast<std::size_t>(k)] == set) return k;
  throw config_error("not a three-BS group set");
}

double closed_form_w_m3(const m3_probes& probes, int target) {
  switch (target) {
    case 1: return w1(probes);
    case 2: return w1(relabel(probes, {1, 0, 2}));  // swap BS1 and BS2
    case 3: return w1(relabel(probes, {2, 1, 0}));  // swap BS1 and BS3
    case 4: return w4(probes);
    case 5: return w4(relabel(probes, {2, 1, 0}));  // {1,2} -> {2,3}
    case 6: return w4(relabel(probes, {0, 2, 1}));  // {1,2} -> {1,3}
    case 7: return w7(probes);
    default: throw config_error("closed form target must be in 1..7, got " + std::to_string(target));
  }
}

}  // namespace coopaloha
