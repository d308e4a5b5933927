// Copyright 2026 The dpcomm Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
#include "dpcomm/gaussian_sender.h"

#include <cmath>
#include <limits>
#include <random>

#include "dpcomm/error.h"
#include "dpcomm/rng.h"

namespace dpcomm::sender {
namespace {

constexpr double kSymmetryTol = 1e-12;
constexpr double kEigenFloor = -1e-12;
constexpr double kTargetMinEigen = 1e-9;
constexpr double kJitter = 1e-9;

using Eigen::MatrixXd;
using Eigen::VectorXd;

Eigen::SelfAdjointEigenSolver<MatrixXd> Eig(const MatrixXd& m) {
  return Eigen::SelfAdjointEigenSolver<MatrixXd>(m);
}

MatrixXd Noise(int d, double noise_var) {
  return noise_var * MatrixXd::Identity(d, d);
}

void CheckNoise(double noise_var) {
  Require(noise_var >= 0.0 && std::isfinite(noise_var),
          "noise variance must be nonnegative");
}

}  // namespace

MatrixXd ProjectPsd(const MatrixXd& sym) {
  Require(sym.rows() == sym.cols(), "covariance must be square");
  const auto eig = Eig(0.5 * (sym + sym.transpose()));
  const VectorXd clamped = eig.eigenvalues().cwiseMax(0.0);
  return eig.eigenvectors() * clamped.asDiagonal() * eig.eigenvectors().transpose();
}

GaussianMessageDist MakeDist(VectorXd mean, MatrixXd cov, bool diagonal) {
  Require(mean.size() > 0, "dimension must be positive");
  Require(cov.rows() == mean.size() && cov.cols() == mean.size(),
          "covariance shape must match the mean");
  Require(mean.allFinite() && cov.allFinite(), "parameters must be finite");
  Require((cov - cov.transpose()).cwiseAbs().maxCoeff() <= kSymmetryTol,
          "covariance must be symmetric");
  if (diagonal) {
    MatrixXd off = cov;
    off.diagonal().setZero();
    Require(off.cwiseAbs().maxCoeff() == 0.0,
            "diagonal distribution has off-diagonal covariance entries");
  }
  const MatrixXd sym = 0.5 * (cov + cov.transpose());
  Require(Eig(sym).eigenvalues().minCoeff() >= kEigenFloor,
          "covariance must be positive semidefinite");
  GaussianMessageDist out;
  out.mean = std::move(mean);
  if (diagonal) {
    out.cov = sym.diagonal().cwiseMax(0.0).asDiagonal();
  } else {
    out.cov = ProjectPsd(sym);
  }
  out.diagonal = diagonal;
  return out;
}

void Validate(const SenderProblem& problem) {
  CheckNoise(problem.noise_var);
  Require(problem.dim() > 0, "dimension must be positive");
  const double min_eig = Eig(problem.target.cov).eigenvalues().minCoeff();
  if (!(min_eig >= kTargetMinEigen)) {
    Fail(ErrorCode::kSingularTarget,
         "target covariance must be positive definite (min eigenvalue >= 1e-9)");
  }
}

double KlGaussian(const GaussianMessageDist& p, const GaussianMessageDist& q) {
  Require(p.mean.size() == q.mean.size(), "dimension mismatch");
  const Eigen::LLT<MatrixXd> q_chol(q.cov);
  if (q_chol.info() != Eigen::Success ||
      Eig(q.cov).eigenvalues().minCoeff() < kTargetMinEigen) {
    Fail(ErrorCode::kSingularTarget, "second argument of KL must be nonsingular");
  }
  const Eigen::LLT<MatrixXd> p_chol(p.cov);
  if (p_chol.info() != Eigen::Success ||
      Eig(p.cov).eigenvalues().minCoeff() <= 0.0) {
    return std::numeric_limits<double>::infinity();
  }
  const int d = static_cast<int>(p.mean.size());
  const MatrixXd lq = q_chol.matrixL();
  const MatrixXd lp = p_chol.matrixL();
  const double logdet_q = 2.0 * lq.diagonal().array().log().sum();
  const double logdet_p = 2.0 * lp.diagonal().array().log().sum();
  const double trace = q_chol.solve(p.cov).trace();
  const VectorXd diff = p.mean - q.mean;
  const double maha = diff.dot(q_chol.solve(diff));
  return 0.5 * (logdet_q - logdet_p + trace + maha - d);
}

double SentKl(const SenderProblem& problem, const GaussianMessageDist& dist) {
  Validate(problem);
  GaussianMessageDist sent = dist;
  sent.cov = dist.cov + Noise(problem.dim(), problem.noise_var);
  return KlGaussian(sent, problem.target);
}

SenderSolution ObliviousOptimum(const SenderProblem& problem) {
  Validate(problem);
  SenderSolution out;
  out.dist = problem.target;
  out.achieved_kl = SentKl(problem, out.dist);
  return out;
}

SenderSolution AwareOptimum(const SenderProblem& problem) {
  Validate(problem);
  SenderSolution out;
  out.dist.mean = problem.target.mean;
  out.dist.diagonal = problem.target.diagonal;
  out.dist.cov = ProjectPsd(problem.target.cov - Noise(problem.dim(), problem.noise_var));
  if (out.dist.diagonal) {
    out.dist.cov = MatrixXd(out.dist.cov.diagonal().asDiagonal());
  }
  out.achieved_kl = SentKl(problem, out.dist);
  return out;
}

double SenderObjective(const SenderProblem& problem, const VectorXd& mean,
                       const VectorXd& variances) {
  Validate(problem);
  Require(mean.size() == problem.dim() && variances.size() == problem.dim(),
          "parameter dimension mismatch");
  GaussianMessageDist dist;
  dist.mean = mean;
  dist.cov = variances.asDiagonal();
  return SentKl(problem, dist);
}

ObjectiveGradient SenderGradient(const SenderProblem& problem,
                                 const VectorXd& mean, const VectorXd& variances) {
  Validate(problem);
  Require(mean.size() == problem.dim() && variances.size() == problem.dim(),
          "parameter dimension mismatch");
  const Eigen::LLT<MatrixXd> target(problem.target.cov);
  const MatrixXd precision = target.solve(MatrixXd::Identity(problem.dim(), problem.dim()));
  ObjectiveGradient g;
  g.mean = precision * (mean - problem.target.mean);
  const VectorXd sent = variances.array() + problem.noise_var;
  g.variances = 0.5 * (precision.diagonal().array() - sent.array().inverse()).matrix();
  return g;
}

GdResult AwareOptimumGd(const SenderProblem& problem, int steps,
                        double learning_rate, CovarianceParam param) {
  Validate(problem);
  Require(steps >= 0, "step count must be nonnegative");
  Require(learning_rate >= 0.0 && std::isfinite(learning_rate),
          "learning rate must be nonnegative");
  const int d = problem.dim();
  const MatrixXd precision =
      Eigen::LLT<MatrixXd>(problem.target.cov).solve(MatrixXd::Identity(d, d));
  // Variances may reach 0 only when the channel noise keeps the sent
  // covariance invertible.
  const double floor = problem.noise_var > 0.0 ? 0.0 : kJitter;

  VectorXd mean = problem.target.mean;
  VectorXd var = problem.target.cov.diagonal();
  MatrixXd factor = Eigen::LLT<MatrixXd>(problem.target.cov).matrixL();

  auto objective = [&] {
    GaussianMessageDist dist;
    dist.mean = mean;
    dist.cov = param == CovarianceParam::kDiagonal ? MatrixXd(var.asDiagonal())
                                                   : MatrixXd(factor * factor.transpose());
    return SentKl(problem, dist);
  };

  GdResult out;
  double last = objective();
  out.initial_objective = last;
  int rises = 0;
  for (int it = 0; it < steps; ++it) {
    const VectorXd grad_mean = precision * (mean - problem.target.mean);
    if (param == CovarianceParam::kDiagonal) {
      const VectorXd sent = var.array() + problem.noise_var;
      const VectorXd grad_var =
          0.5 * (precision.diagonal().array() - sent.array().inverse()).matrix();
      var = (var - learning_rate * grad_var).cwiseMax(floor);
    } else {
      const MatrixXd sent = factor * factor.transpose() + Noise(d, problem.noise_var);
      const MatrixXd sent_inv =
          Eigen::LLT<MatrixXd>(sent).solve(MatrixXd::Identity(d, d));
      const MatrixXd grad_cov = 0.5 * (precision - sent_inv);
      factor -= learning_rate * 2.0 * grad_cov * factor;
    }
    mean -= learning_rate * grad_mean;
    out.steps_run = it + 1;

    const double now = objective();
    if (!std::isfinite(now)) {
      Fail(ErrorCode::kStepSize, "objective became non-finite; reduce the learning rate");
    }
    rises = now > last ? rises + 1 : 0;
    if (rises >= 10) {
      Fail(ErrorCode::kStepSize,
           "objective increased for 10 consecutive steps; reduce the learning rate");
    }
    last = now;
  }

  out.solution.dist.mean = mean;
  if (param == CovarianceParam::kDiagonal) {
    out.solution.dist.cov = var.asDiagonal();
    out.solution.dist.diagonal = true;
  } else {
    out.solution.dist.cov = factor * factor.transpose();
  }
  out.solution.achieved_kl = last;
  return out;
}

MessageSampler::MessageSampler(const GaussianMessageDist& dist, double noise_var)
    : mean_(dist.mean), noise_sd_(std::sqrt(noise_var)) {
  CheckNoise(noise_var);
  Require(dist.cov.rows() == dist.mean.size() && dist.cov.cols() == dist.mean.size(),
          "covariance shape must match the mean");
  const auto eig = Eig(0.5 * (dist.cov + dist.cov.transpose()));
  const VectorXd roots = eig.eigenvalues().cwiseMax(0.0).cwiseSqrt();
  root_ = eig.eigenvectors() * roots.asDiagonal() * eig.eigenvectors().transpose();
}

VectorXd MessageSampler::Draw(uint64_t rng_seed) const {
  Stream stream(DeriveSeed(rng_seed, 0x5e4d));
  std::normal_distribution<double> normal;
  const Eigen::Index d = mean_.size();
  VectorXd xi(d), u(d);
  for (Eigen::Index k = 0; k < d; ++k) xi[k] = normal(stream);
  for (Eigen::Index k = 0; k < d; ++k) u[k] = normal(stream);
  return mean_ + root_ * xi + noise_sd_ * u;
}

VectorXd SampleMessage(const GaussianMessageDist& dist, double noise_var,
                       uint64_t rng_seed) {
  return MessageSampler(dist, noise_var).Draw(rng_seed);
}

}  // namespace dpcomm::sender
