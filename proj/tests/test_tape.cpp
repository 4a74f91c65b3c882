#include <catch2/catch_amalgamated.hpp>

#include "netfill/tape.hpp"
#include "test_helpers.hpp"

using namespace netfill;

TEST_CASE("matmul kernels agree with naive loops") {
  Rng rng(5);
  const Matrix a = testing::random_matrix(7, 4, rng);
  const Matrix b = testing::random_matrix(4, 6, rng);
  const Matrix ab = matmul(a, b);
  const Matrix naive = testing::naive_matmul(a, b);
  REQUIRE(ab.same_shape(naive));
  for (std::size_t i = 0; i < ab.data.size(); ++i)
    CHECK(ab.data[i] == Catch::Approx(naive.data[i]).margin(1e-12));

  const Matrix nt = matmul_nt(a, transpose(b));  // a * (b^T)^T == a * b
  for (std::size_t i = 0; i < nt.data.size(); ++i)
    CHECK(nt.data[i] == Catch::Approx(naive.data[i]).margin(1e-12));

  const Matrix tn = matmul_tn(transpose(a), b);
  for (std::size_t i = 0; i < tn.data.size(); ++i)
    CHECK(tn.data[i] == Catch::Approx(naive.data[i]).margin(1e-12));

  CHECK_THROWS_AS(matmul(a, a), std::invalid_argument);
}

TEST_CASE("sum of a leaf has an all-ones gradient") {
  Rng rng(3);
  Tape tape;
  const int w = tape.leaf(testing::random_matrix(3, 5, rng));
  const int loss = tape.sum(w);
  tape.backward(loss);
  for (const double g : tape.grad(w).data) CHECK(g == 1.0);
}

TEST_CASE("gradients of composed ops match finite differences") {
  Rng rng(17);
  Matrix w_val = testing::random_matrix(4, 4, rng);
  Matrix b_val = testing::random_matrix(1, 4, rng, 0.5);
  Matrix eps_val(1, 1, 0.25);
  const Matrix x_val = testing::random_matrix(4, 4, rng);

  const auto loss_fn = [&](const Matrix& w, const Matrix& b, const Matrix& eps) {
    Tape tape;
    const int x = tape.constant(x_val);
    const int wn = tape.leaf(w);
    const int bn = tape.leaf(b);
    const int en = tape.leaf(eps);
    const int z = tape.add_bias_row(tape.matmul(tape.scale_shift(x, en), wn), bn);
    const int s = tape.sigmoid(tape.relu(z));
    return tape.scalar(tape.sum(tape.gram(s)));
  };

  Tape tape;
  const int x = tape.constant(x_val);
  const int wn = tape.leaf(w_val);
  const int bn = tape.leaf(b_val);
  const int en = tape.leaf(eps_val);
  const int z = tape.add_bias_row(tape.matmul(tape.scale_shift(x, en), wn), bn);
  const int s = tape.sigmoid(tape.relu(z));
  const int loss = tape.sum(tape.gram(s));
  tape.backward(loss);

  const double step = 1e-5;
  const auto check_param = [&](Matrix& param, const Matrix& grad) {
    for (std::size_t k = 0; k < param.data.size(); ++k) {
      const double saved = param.data[k];
      param.data[k] = saved + step;
      const double up = loss_fn(w_val, b_val, eps_val);
      param.data[k] = saved - step;
      const double down = loss_fn(w_val, b_val, eps_val);
      param.data[k] = saved;
      const double fd = (up - down) / (2.0 * step);
      CHECK(grad.data[k] == Catch::Approx(fd).margin(1e-6));
    }
  };
  check_param(w_val, tape.grad(wn));
  check_param(b_val, tape.grad(bn));
  check_param(eps_val, tape.grad(en));
}

TEST_CASE("full pipeline gradient check on a random instance") {
  Rng rng(23);
  const Graph g = testing::er_graph(8, 0.4, rng);
  const Matrix a_hat = g.to_matrix();
  Matrix a_obs(6, 6);
  for (int i = 0; i < 6; ++i)
    for (int j = 0; j < 6; ++j) a_obs(i, j) = a_hat(i, j);
  GinModel model = init_gin({8, 4, 3}, rng);
  CHECK(testing::gradient_check(model, a_hat, a_obs) < 1e-4);
}

TEST_CASE("epsilon receives gradient whenever a node has a neighbor") {
  Rng rng(31);
  Graph g(6);
  g.add_edge(0, 1);
  g.add_edge(2, 4);
  const Matrix a_hat = g.to_matrix();
  Matrix a_obs(5, 5);
  for (int i = 0; i < 5; ++i)
    for (int j = 0; j < 5; ++j) a_obs(i, j) = a_hat(i, j);
  GinModel model = init_gin({6, 4, 3}, rng);

  Tape tape;
  const GinBinding binding = bind_parameters(tape, model);
  const int a = tape.constant(a_hat);
  const int h = gin_forward(tape, model, binding, a);
  const int p = decode_probabilities(tape, h);
  tape.backward(bce_loss_observed(tape, p, a_obs));
  CHECK(tape.grad(binding.layers[0].epsilon).data[0] != 0.0);

  // finite-difference corroboration
  const double base = testing::pipeline_loss(model, a_hat, a_obs);
  model.layers[0].epsilon(0, 0) += 1e-4;
  const double bumped = testing::pipeline_loss(model, a_hat, a_obs);
  CHECK((bumped - base) / 1e-4 ==
        Catch::Approx(tape.grad(binding.layers[0].epsilon).data[0]).epsilon(0.01));
}

TEST_CASE("tape rejects shape mismatches and bad nodes") {
  Tape tape;
  const int a = tape.constant(Matrix(2, 3, 1.0));
  const int b = tape.constant(Matrix(3, 3, 1.0));
  CHECK_THROWS_AS(tape.add(a, b), std::invalid_argument);
  CHECK_THROWS_AS(tape.diag_shift(a, tape.constant(Matrix(1, 1))), std::invalid_argument);
  CHECK_THROWS_AS(tape.scalar(a), std::invalid_argument);
  CHECK_THROWS_AS(tape.value(99), std::out_of_range);
  CHECK_THROWS_AS(tape.backward(b), std::invalid_argument);
}

TEST_CASE("adam optimizer") {
  SECTION("zero gradient leaves parameters unchanged") {
    Matrix p(2, 2, 1.5);
    const Matrix zero(2, 2, 0.0);
    AdamState state;
    adam_step({&p}, {&zero}, state, 0.1);
    for (const double v : p.data) CHECK(v == 1.5);
  }
  SECTION("first step with constant gradient moves by about lr") {
    Matrix p(1, 3, 0.0);
    const Matrix g(1, 3, 0.7);
    AdamState state;
    adam_step({&p}, {&g}, state, 0.01);
    for (const double v : p.data) CHECK(std::fabs(v) == Catch::Approx(0.01).epsilon(1e-4));
  }
  SECTION("minimizes a quadratic bowl to below 1e-6 within 2000 steps") {
    Rng rng(2);
    Matrix x = testing::random_matrix(1, 6, rng, 2.0);
    const Matrix target = testing::random_matrix(1, 6, rng, 1.0);
    AdamState state;
    double f = 0.0;
    for (int step = 0; step < 2000; ++step) {
      Matrix grad(1, 6);
      f = 0.0;
      for (int i = 0; i < 6; ++i) {
        const double d = x(0, i) - target(0, i);
        f += d * d;
        grad(0, i) = 2.0 * d;
      }
      if (f < 1e-6) break;
      adam_step({&x}, {&grad}, state, 0.05);
    }
    CHECK(f < 1e-6);
  }
}
