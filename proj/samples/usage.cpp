/**
 * @file usage.cpp
 * @brief Build the exact (1,0) x (1,0) table, print one state and verify the whole table.
 */
#include "qcg3/pipeline.hpp"

#include <iostream>

using namespace qcg3;

int main() {
  const ExactField ef;
  const auto table = qcg_table(ef, 1, 1);

  // The antisymmetric channel state at weight (1,1).
  const auto* st = table.find_state(1, {1, 1}, 0);
  if (!st) return 1;
  for (const auto& [k, c] : st->terms)
    std::cout << "(" << k[0] << "," << k[1] << ")x(" << k[2] << "," << k[3] << ")  " << ef.to_string(c) << "\n";

  const auto lines = verify_pipeline(ef, 1, 1);
  for (const auto& l : lines)
    std::cout << (l.pass() ? "PASS " : "FAIL ") << l.name << " " << l.value.to_string(3) << "\n";
  return first_failure(lines) ? 1 : 0;
}
