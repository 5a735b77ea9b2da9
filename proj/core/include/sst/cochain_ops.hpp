#pragma once

// Concrete AlgebraOps instances for the two algebras the cochain machinery
// runs over: the crossed product and finite complex matrix algebras.

#include <Eigen/Dense>

#include "sst/cochain.hpp"
#include "sst/crossed_product.hpp"

namespace sst {

inline AlgebraOpsPtr<CrossedProductElement> crossed_product_ops(
    DiffeoGroupPtr group, CompositionOptions opt = {}) {
  auto ops = std::make_shared<AlgebraOps<CrossedProductElement>>();
  ops->multiply = [opt](const CrossedProductElement& a, const CrossedProductElement& b) {
    return multiply(a, b, opt);
  };
  ops->unit = [group]() { return CrossedProductElement::scalar(group, Complex(1.0)); };
  ops->add = [](const CrossedProductElement& a, const CrossedProductElement& b) {
    return a + b;
  };
  ops->scale = [](Complex s, const CrossedProductElement& a) { return s * a; };
  ops->norm = [](const CrossedProductElement& a) { return a.l2_norm(); };
  return ops;
}

inline AlgebraOpsPtr<Eigen::MatrixXcd> matrix_algebra_ops(Eigen::Index dim) {
  auto ops = std::make_shared<AlgebraOps<Eigen::MatrixXcd>>();
  ops->multiply = [](const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
    return Eigen::MatrixXcd(a * b);
  };
  ops->unit = [dim]() { return Eigen::MatrixXcd(Eigen::MatrixXcd::Identity(dim, dim)); };
  ops->add = [](const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
    return Eigen::MatrixXcd(a + b);
  };
  ops->scale = [](Complex s, const Eigen::MatrixXcd& a) { return Eigen::MatrixXcd(s * a); };
  ops->norm = [](const Eigen::MatrixXcd& a) { return a.norm(); };
  return ops;
}

}  // namespace sst
