// Recovers a 3-sparse unit vector from 1-bit Gaussian measurements and prints
// the error every ten iterations.

#include <cmath>
#include <iostream>

#include "qcs/qcs.hpp"

int main() {
  const int n = 500, k = 3, m = 1000;
  const auto model = qcs::SignalModel::sparse(k, n, 1.0, 1.0);
  const auto spec = qcs::QuantizerSpec::make_sign();

  const qcs::Vector x = qcs::gen_signal(model, 2024);
  const auto inst = qcs::sample_instance(qcs::MatrixKind::Gaussian, qcs::DitherKind::zero(), m, n, 7);
  const qcs::Vector y = qcs::measure(inst, spec, x);

  const auto defaults = qcs::default_step_size(qcs::Family::OneBitGaussian);
  qcs::PgdConfig cfg;
  cfg.eta = defaults.eta;
  cfg.iterations = 100;
  cfg.init = qcs::init::RandomInModel{11};
  const auto out = qcs::pgd_recover(cfg, model, spec, inst, y, &x);

  for (std::size_t t = 9; t < out.errors.size(); t += 10) {
    std::cout << "iter " << t + 1 << "  error " << out.errors[t] << '\n';
  }
  std::cout << "hamming(Q(A xhat), y) = " << qcs::hamming(qcs::measure(inst, spec, out.estimate), y) << '\n';
  return 0;
}
