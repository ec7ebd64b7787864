#include "cqfc/presets.hpp"

namespace cqfc::presets {

namespace {

classical::JointPmf skewed_pair_masses() {
  return {{2, 2}, {0.003920, 0.976080, 0.019920, 0.000080}};
}

}  // namespace

classical::SourceModel skewed_pair_source() {
  classical::Embedding emb;
  emb.q = 2;
  emb.h1 = {0, 1};
  emb.h2 = {0, 1};
  emb.g = {0, 1};
  return {skewed_pair_masses(), {{0, 1}, {1, 0}}, emb};
}

classical::SourceModel or_source() {
  classical::Embedding emb;
  emb.q = 3;
  emb.h1 = {0, 1};
  emb.h2 = {0, 1};
  emb.g = {0, 1, 1};
  return {skewed_pair_masses(), {{0, 1}, {1, 1}}, emb};
}

}  // namespace cqfc::presets
