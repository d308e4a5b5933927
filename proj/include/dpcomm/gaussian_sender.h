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

// Stochastic Gaussian message sender. The sender draws p ~ N(mu, Sigma) and
// the channel adds u ~ N(0, sigma^2 I), so receivers see N(mu, Sigma +
// sigma^2 I). A noise-oblivious sender fits N(mu, Sigma) to the target; a
// noise-aware sender fits the post-noise distribution instead.

#ifndef DPCOMM_GAUSSIAN_SENDER_H_
#define DPCOMM_GAUSSIAN_SENDER_H_

#include <cstdint>

#include <Eigen/Dense>

namespace dpcomm::sender {

struct GaussianMessageDist {
  Eigen::VectorXd mean;
  Eigen::MatrixXd cov;
  bool diagonal = false;
};

// Symmetrizes and clamps eigenvalues at 0. Throws kInvalidParameter when the
// input is asymmetric beyond 1e-12 or has an eigenvalue below -1e-12.
GaussianMessageDist MakeDist(Eigen::VectorXd mean, Eigen::MatrixXd cov,
                             bool diagonal = false);

// Positive-part projection in the matrix's eigenbasis.
Eigen::MatrixXd ProjectPsd(const Eigen::MatrixXd& sym);

struct SenderProblem {
  GaussianMessageDist target;
  double noise_var = 0.0;

  int dim() const { return static_cast<int>(target.mean.size()); }
};

// Throws kSingularTarget when the target covariance has an eigenvalue
// below 1e-9.
void Validate(const SenderProblem& problem);

// Full KL(p || q) including the -d constant and the 1/2 factor. Returns
// +inf when p.cov is singular. Throws kSingularTarget for singular q.cov.
double KlGaussian(const GaussianMessageDist& p, const GaussianMessageDist& q);

// KL of the post-noise message N(mu, Sigma + noise_var I) against the target.
double SentKl(const SenderProblem& problem, const GaussianMessageDist& dist);

struct SenderSolution {
  GaussianMessageDist dist;  // pre-noise message distribution
  double achieved_kl = 0.0;  // SentKl of `dist`
};

// Fits the target while ignoring the noise: returns the target itself and
// the KL it actually incurs once noise is added.
SenderSolution ObliviousOptimum(const SenderProblem& problem);

// Minimizer of SentKl over mu and PSD Sigma: mu = mu*, Sigma = positive part
// of Sigma* - noise_var I.
SenderSolution AwareOptimum(const SenderProblem& problem);

// SentKl as a function of (mean, diagonal variances) and its gradient.
double SenderObjective(const SenderProblem& problem, const Eigen::VectorXd& mean,
                       const Eigen::VectorXd& variances);

struct ObjectiveGradient {
  Eigen::VectorXd mean;
  Eigen::VectorXd variances;
};

ObjectiveGradient SenderGradient(const SenderProblem& problem,
                                 const Eigen::VectorXd& mean,
                                 const Eigen::VectorXd& variances);

enum class CovarianceParam { kDiagonal, kFullFactor };

struct GdResult {
  SenderSolution solution;
  int steps_run = 0;
  double initial_objective = 0.0;
};

// Gradient descent on SentKl starting from the noise-oblivious solution.
// kDiagonal: projected steps on (mu, variances >= 0). kFullFactor: plain
// steps on (mu, A) with Sigma = A A^T. Throws kStepSize when the objective
// rises for 10 consecutive steps.
GdResult AwareOptimumGd(const SenderProblem& problem, int steps,
                        double learning_rate,
                        CovarianceParam param = CovarianceParam::kDiagonal);

// Reparameterized draws mu + Sigma^{1/2} xi + sqrt(noise_var) u with xi, u
// standard normal. Caches the symmetric square root.
class MessageSampler {
 public:
  MessageSampler(const GaussianMessageDist& dist, double noise_var);

  Eigen::VectorXd Draw(uint64_t rng_seed) const;

 private:
  Eigen::VectorXd mean_;
  Eigen::MatrixXd root_;
  double noise_sd_;
};

Eigen::VectorXd SampleMessage(const GaussianMessageDist& dist, double noise_var,
                              uint64_t rng_seed);

}  // namespace dpcomm::sender

#endif  // DPCOMM_GAUSSIAN_SENDER_H_
