#include "qtree/decision_tree.hpp"

#include <stdexcept>
#include <string>

namespace qtree {

std::size_t DecisionTree::Builder::leaf(std::size_t outcome) {
  if (outcome >= n_) throw std::out_of_range("leaf outcome " + std::to_string(outcome) + " outside alphabet");
  raw_.push_back({OutcomeSet{outcome}, OutcomeSet{}, kNoChild, kNoChild, outcome});
  return raw_.size() - 1;
}

std::size_t DecisionTree::Builder::internal(OutcomeSet query, std::size_t left, std::size_t right) {
  if (left >= raw_.size() || right >= raw_.size() || left == right) {
    throw std::invalid_argument("invalid child handles");
  }
  raw_.push_back({raw_[left].candidates | raw_[right].candidates, query, left, right, 0});
  return raw_.size() - 1;
}

std::size_t DecisionTree::Builder::join(const DecisionSet& a, std::size_t first, std::size_t second) {
  const OutcomeSet c = candidates(first) | candidates(second);
  const auto query = a.find_query(c, candidates(first));
  if (!query) {
    throw std::invalid_argument("no query in " + a.describe() + " separates " + candidates(first).to_string() +
                                " from " + candidates(second).to_string());
  }
  if ((c & *query) == candidates(first)) return internal(*query, first, second);
  return internal(*query, second, first);
}

DecisionTree DecisionTree::Builder::finish(std::size_t root, const Distribution* d) const {
  if (root >= raw_.size()) throw std::invalid_argument("invalid root handle");
  if (d != nullptr && d->size() != n_) throw std::invalid_argument("distribution size does not match tree alphabet");
  DecisionTree t;
  t.n_ = n_;
  t.nodes_.reserve(raw_.size());

  // Preorder copy with candidate propagation; explicit stack of (raw handle, candidates, parent slot).
  struct Frame {
    std::size_t handle;
    OutcomeSet candidates;
    std::size_t parent;
    bool is_left;
  };
  std::vector<Frame> stack{{root, OutcomeSet::full(n_), kNoChild, false}};
  std::size_t visited = 0;
  while (!stack.empty()) {
    const Frame f = stack.back();
    stack.pop_back();
    if (++visited > raw_.size()) throw std::invalid_argument("decision tree contains a cycle or shared node");
    const Raw& r = raw_[f.handle];
    const std::size_t index = t.nodes_.size();
    if (f.parent != kNoChild) (f.is_left ? t.nodes_[f.parent].left : t.nodes_[f.parent].right) = index;

    TreeNode node;
    node.candidates = f.candidates;
    if (f.candidates.empty()) throw std::invalid_argument("decision tree node with no candidates");
    if (d != nullptr) node.mass = d->mass(f.candidates);
    if (r.left == kNoChild) {
      if (f.candidates != OutcomeSet{r.outcome}) {
        throw std::invalid_argument("leaf for outcome " + std::to_string(r.outcome) + " reached with candidates " +
                                    f.candidates.to_string());
      }
      node.outcome = r.outcome;
      t.nodes_.push_back(node);
      continue;
    }
    node.query = r.query;
    t.nodes_.push_back(node);
    const OutcomeSet yes = f.candidates & r.query;
    const OutcomeSet no = f.candidates - r.query;
    if (yes.empty() || no.empty()) {
      throw std::invalid_argument("query " + r.query.to_string() + " does not split candidates " +
                                  f.candidates.to_string());
    }
    // Right pushed first so the left subtree is emitted next (preorder).
    stack.push_back({r.right, no, index, false});
    stack.push_back({r.left, yes, index, true});
  }
  return t;
}

std::vector<std::size_t> DecisionTree::leaf_depths() const {
  std::vector<std::size_t> depth(n_, 0);
  std::vector<std::pair<std::size_t, std::size_t>> stack{{0, 0}};
  while (!stack.empty()) {
    auto [i, dpt] = stack.back();
    stack.pop_back();
    const TreeNode& node = nodes_[i];
    if (node.is_leaf()) {
      depth[node.outcome] = dpt;
    } else {
      stack.push_back({node.left, dpt + 1});
      stack.push_back({node.right, dpt + 1});
    }
  }
  return depth;
}

ValidationReport validate_tree(const DecisionTree& t, const DecisionSet& a) {
  if (t.alphabet_size() != a.alphabet_size()) {
    throw std::invalid_argument("tree alphabet size " + std::to_string(t.alphabet_size()) +
                                " does not match decision set " + a.describe());
  }
  ValidationReport report;
  const auto& nodes = t.nodes();
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    const TreeNode& node = nodes[i];
    if (node.is_leaf()) continue;
    const OutcomeSet left = nodes[node.left].candidates;
    if (!a.realizes(node.candidates, left)) report.violations.push_back({i, node.candidates, left});
  }
  report.feasible = report.violations.empty();
  return report;
}

}  // namespace qtree
