#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

// Exponential-sum algebra for the free oscillator.  Every free-theory
// correlator and cumulant is a finite sum
//
//     sum_k c_k (hbar/2w)^{n/2} exp(-i w [s_k1 t_1 + ... + s_kn t_n])
//
// with signs s_kj in {+1,-1}.  ExpSum holds the coefficients c_k keyed by the
// packed sign sequence; the (hbar/2w)^{n/2} prefactor is attached at
// evaluation time.

namespace wightman {

using Complex = std::complex<double>;

struct truncation_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct convergence_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct normalization_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct PhysicalParams {
  double omega = 1.0;
  double hbar = 1.0;
  double lambda = 0.0;
  double t0 = 0.0;

  void validate() const {
    if (!(omega > 0.0)) throw std::invalid_argument("omega must be positive");
    if (!(hbar > 0.0)) throw std::invalid_argument("hbar must be positive");
    if (lambda < 0.0) throw std::invalid_argument("lambda must be nonnegative");
  }
  // Perturbative regime requires lambda << omega^3/hbar.
  bool perturbative() const { return lambda < 0.1 * omega * omega * omega / hbar; }
  double quantum() const { return hbar / (2.0 * omega); }
};

// Sign sequence (s_1 ... s_n), stored packed as '+'/'-' characters so that
// symbolic equality of correlators is decidable key-by-key.
class SignVector {
 public:
  SignVector() = default;
  explicit SignVector(std::string packed) : repr_(std::move(packed)) {
    for (char c : repr_)
      if (c != '+' && c != '-') throw std::invalid_argument("sign chars must be '+' or '-'");
  }
  explicit SignVector(const std::vector<int>& signs) {
    repr_.reserve(signs.size());
    for (int s : signs) {
      if (s != 1 && s != -1) throw std::invalid_argument("signs must be +1 or -1");
      repr_.push_back(s > 0 ? '+' : '-');
    }
  }

  std::size_t size() const { return repr_.size(); }
  bool empty() const { return repr_.empty(); }
  int sign(std::size_t i) const { return repr_[i] == '+' ? 1 : -1; }
  const std::string& packed() const { return repr_; }

  SignVector flipped() const {
    std::string out = repr_;
    for (char& c : out) c = (c == '+') ? '-' : '+';
    return SignVector(std::move(out));
  }

  void push_back(int s) { repr_.push_back(s > 0 ? '+' : '-'); }

  friend bool operator<(const SignVector& a, const SignVector& b) { return a.repr_ < b.repr_; }
  friend bool operator==(const SignVector& a, const SignVector& b) { return a.repr_ == b.repr_; }

 private:
  std::string repr_;
};

class ExpSum {
 public:
  using TermMap = std::map<SignVector, Complex>;

  ExpSum() = default;
  explicit ExpSum(std::size_t arity) : arity_(arity) {}

  std::size_t arity() const { return arity_; }
  const TermMap& terms() const { return terms_; }
  bool empty() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }

  void add_term(const SignVector& sv, Complex c) {
    if (sv.size() != arity_) throw std::invalid_argument("sign vector length != arity");
    auto it = terms_.find(sv);
    if (it == terms_.end()) {
      if (c != 0.0) terms_.emplace(sv, c);
    } else {
      it->second += c;
      if (it->second == 0.0) terms_.erase(it);
    }
  }

  Complex coeff(const SignVector& sv) const {
    auto it = terms_.find(sv);
    return it == terms_.end() ? Complex(0.0) : it->second;
  }

  ExpSum& operator+=(const ExpSum& o) {
    if (o.arity_ != arity_) throw std::invalid_argument("arity mismatch in ExpSum addition");
    for (const auto& [sv, c] : o.terms_) add_term(sv, c);
    return *this;
  }
  friend ExpSum operator+(ExpSum a, const ExpSum& b) { return a += b; }

  ExpSum& operator*=(Complex s) {
    if (s == 0.0) {
      terms_.clear();
      return *this;
    }
    for (auto& [sv, c] : terms_) c *= s;
    return *this;
  }
  friend ExpSum operator*(ExpSum a, Complex s) { return a *= s; }
  friend ExpSum operator*(Complex s, ExpSum a) { return a *= s; }

  // Complex-conjugate counterpart: flips every sign and conjugates
  // coefficients, so that eval(conj_map(e), t) == conj(eval(e, t)).
  ExpSum conj_map() const {
    ExpSum out(arity_);
    for (const auto& [sv, c] : terms_) out.add_term(sv.flipped(), std::conj(c));
    return out;
  }

  // Product of two sums over disjoint position sets.  positions_a[i] is the
  // destination slot of a's i-th argument in the combined arity-n sum.
  static ExpSum product(const ExpSum& a, const ExpSum& b, const std::vector<std::size_t>& positions_a,
                        const std::vector<std::size_t>& positions_b, std::size_t arity_out) {
    if (positions_a.size() != a.arity() || positions_b.size() != b.arity())
      throw std::invalid_argument("embedding size mismatch");
    ExpSum out(arity_out);
    std::string key(arity_out, '?');
    for (const auto& [sa, ca] : a.terms_) {
      for (const auto& [sb, cb] : b.terms_) {
        std::fill(key.begin(), key.end(), '?');
        for (std::size_t i = 0; i < positions_a.size(); ++i) key[positions_a[i]] = sa.packed()[i];
        for (std::size_t i = 0; i < positions_b.size(); ++i) key[positions_b[i]] = sb.packed()[i];
        out.add_term(SignVector(key), ca * cb);
      }
    }
    return out;
  }

  // Drops terms with |coeff| <= tol (used by tests comparing symbolic routes).
  ExpSum cleaned(double tol) const {
    ExpSum out(arity_);
    for (const auto& [sv, c] : terms_)
      if (std::abs(c) > tol) out.add_term(sv, c);
    return out;
  }

 private:
  std::size_t arity_ = 0;
  TermMap terms_;
};

// f_{s1...sn} = (hbar/2w)^{n/2} exp(-i w [s1 t1 + ... + sn tn]); single term,
// unit coefficient.
inline ExpSum make_f(const SignVector& sigma) {
  if (sigma.empty()) throw std::invalid_argument("make_f: empty sign vector");
  ExpSum e(sigma.size());
  e.add_term(sigma, Complex(1.0));
  return e;
}

inline ExpSum make_f(const std::string& packed) { return make_f(SignVector(packed)); }

// F_{nk}: sum of all C(n,k) placements of k '+' signs among n slots.
inline ExpSum make_F(std::size_t n, std::size_t k) {
  if (k > n) throw std::invalid_argument("make_F: k > n");
  if (n == 0) throw std::invalid_argument("make_F: n must be positive");
  ExpSum e(n);
  std::string key = std::string(k, '+') + std::string(n - k, '-');  // '+' < '-'
  do {
    e.add_term(SignVector(key), Complex(1.0));
  } while (std::next_permutation(key.begin(), key.end()));
  return e;
}

inline Complex eval_expsum(const ExpSum& e, const std::vector<double>& times, const PhysicalParams& p) {
  if (times.size() != e.arity()) throw std::invalid_argument("eval_expsum: times length != arity");
  p.validate();
  const double pref = std::pow(p.quantum(), 0.5 * static_cast<double>(e.arity()));
  Complex acc(0.0);
  for (const auto& [sv, c] : e.terms()) {
    double phase = 0.0;
    for (std::size_t j = 0; j < times.size(); ++j) phase += sv.sign(j) * times[j];
    acc += c * std::exp(Complex(0.0, -p.omega * phase));
  }
  return pref * acc;
}

inline std::uint64_t binomial(unsigned n, unsigned k) {
  if (k > n) return 0;
  if (k > n - k) k = n - k;
  std::uint64_t r = 1;
  for (unsigned i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

}  // namespace wightman
