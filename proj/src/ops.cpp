#include "qfock/ops.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace qfock {

namespace {

void require_n_max(int n_max, const char* who) {
    if (n_max < 0) {
        throw DomainError(std::string(who) + ": n_max must be non-negative");
    }
}

double norm1(const Operator& m) {
    return m.cwiseAbs().colwise().sum().maxCoeff();
}

void require_square_finite(const Operator& m, const char* who) {
    if (m.rows() != m.cols() || m.rows() == 0) {
        throw DimensionError(std::string(who) + ": matrix must be square and non-empty");
    }
    if (!m.allFinite()) {
        throw DomainError(std::string(who) + ": non-finite entry");
    }
}

void require_match(const Operator& a, const FockState& s, const char* who) {
    if (a.rows() != a.cols() || a.rows() != s.dim()) {
        throw DimensionError(std::string(who) + ": operator and state dimensions differ");
    }
}

}  // namespace

Operator annihilation(int n_max) {
    require_n_max(n_max, "annihilation");
    Operator a = Operator::Zero(n_max + 1, n_max + 1);
    for (int n = 1; n <= n_max; ++n) {
        a(n - 1, n) = std::sqrt(static_cast<double>(n));
    }
    return a;
}

Operator creation(int n_max) {
    return annihilation(n_max).adjoint();
}

Operator number(int n_max) {
    require_n_max(n_max, "number");
    Operator m = Operator::Zero(n_max + 1, n_max + 1);
    for (int n = 0; n <= n_max; ++n) {
        m(n, n) = static_cast<double>(n);
    }
    return m;
}

Operator identity(int n_max) {
    require_n_max(n_max, "identity");
    return Operator::Identity(n_max + 1, n_max + 1);
}

Operator hamiltonian(int n_max, const ModeScale& ms) {
    if (!ms.omega()) {
        throw DomainError("hamiltonian: ModeScale has no omega");
    }
    const double e = kHbar * *ms.omega();
    Operator h = number(n_max);
    for (int n = 0; n <= n_max; ++n) {
        h(n, n) = e * (n + 0.5);
    }
    return h;
}

Operator quadrature_q(int n_max, const ModeScale& ms) {
    Operator a = annihilation(n_max);
    return std::sqrt(ms.scale()) * (a.adjoint() + a);
}

Operator quadrature_p(int n_max, const ModeScale& ms) {
    Operator a = annihilation(n_max);
    return cplx(0.0, std::sqrt(ms.scale())) * (a.adjoint() - a);
}

Operator commutator(const Operator& a, const Operator& b) {
    if (a.rows() != a.cols() || b.rows() != b.cols() || a.rows() != b.rows()) {
        throw DimensionError("commutator: operands must be square of equal size");
    }
    return a * b - b * a;
}

Operator mat_exp(const Operator& a, double tol) {
    require_square_finite(a, "mat_exp");
    if (!(tol > 0.0)) {
        throw DomainError("mat_exp: tol must be positive");
    }
    const Eigen::Index d = a.rows();
    const double anorm = norm1(a);
    int squarings = 0;
    if (anorm > 0.5) {
        squarings = static_cast<int>(std::ceil(std::log2(anorm / 0.5)));
    }
    const Operator b = a / std::ldexp(1.0, squarings);

    // Taylor core on ||B||_1 <= 1/2; terms fall below machine precision by k ~ 15.
    constexpr int kMaxTerms = 60;
    const double eps = std::numeric_limits<double>::epsilon();
    Operator sum = Operator::Identity(d, d);
    Operator term = Operator::Identity(d, d);
    double term_norm = 1.0;
    for (int k = 1; k <= kMaxTerms; ++k) {
        term = (term * b) / static_cast<double>(k);
        sum += term;
        term_norm = norm1(term);
        if (term_norm <= eps * norm1(sum)) {
            break;
        }
    }
    if (term_norm > tol * norm1(sum)) {
        std::ostringstream msg;
        msg << "mat_exp: Taylor core did not reach tol " << tol << " (last term " << term_norm
            << ")";
        throw ConvergenceError(msg.str());
    }
    for (int i = 0; i < squarings; ++i) {
        sum = sum * sum;
    }
    if (!sum.allFinite()) {
        throw ConvergenceError("mat_exp: overflow during squaring");
    }
    return sum;
}

bool translation_fits(cplx gamma, int n_max) {
    const double r = std::abs(gamma);
    return r * r + 10.0 * r + 20.0 <= n_max;
}

Operator translation(cplx gamma, int n_max) {
    require_n_max(n_max, "translation");
    if (!translation_fits(gamma, n_max)) {
        std::ostringstream msg;
        msg << "translation: n_max = " << n_max << " too small for |gamma| = " << std::abs(gamma)
            << "; need |gamma|^2 + 10|gamma| + 20 <= n_max";
        throw TruncationError(msg.str());
    }
    const Operator a = annihilation(n_max);
    return mat_exp(gamma * a.adjoint() - std::conj(gamma) * a);
}

int lower_half_limit(int n_max) {
    return n_max / 2;
}

double max_abs_lower_half(const Operator& m) {
    const int k = lower_half_limit(static_cast<int>(m.rows()) - 1) + 1;
    return m.topLeftCorner(k, k).cwiseAbs().maxCoeff();
}

CbhReport cbh_check(cplx gamma, int n_max, double tol) {
    if (!translation_fits(gamma, n_max)) {
        throw TruncationError("cbh_check: truncation too small for gamma");
    }
    const Operator a_op = annihilation(n_max);
    const Operator big_a = gamma * a_op.adjoint();
    const Operator big_b = -std::conj(gamma) * a_op;
    const Operator lhs = mat_exp(big_a) * mat_exp(big_b);
    const Operator rhs = mat_exp(big_a + big_b + 0.5 * commutator(big_a, big_b));
    const double dev = max_abs_lower_half(lhs - rhs);
    return {dev, tol, dev <= tol};
}

cplx bracket(const Operator& a, const FockState& s) {
    require_match(a, s, "bracket");
    return s.amps().dot(a * s.amps());
}

cplx expect(const Operator& a, const FockState& s) {
    const double n2 = s.norm_squared();
    if (!(n2 > 0.0)) {
        throw DomainError("expect: zero state");
    }
    return bracket(a, s) / n2;
}

double variance(const Operator& a, const FockState& s) {
    require_match(a, s, "variance");
    if (!is_hermitian(a)) {
        throw DomainError("variance: operator is not Hermitian");
    }
    const double n2 = s.norm_squared();
    if (!(n2 > 0.0)) {
        throw DomainError("variance: zero state");
    }
    const Vec av = a * s.amps();
    const double mean = s.amps().dot(av).real() / n2;
    const double second = av.squaredNorm() / n2;  // <A^2> = ||A psi||^2 for Hermitian A
    return second - mean * mean;
}

bool is_hermitian(const Operator& m, double tol) {
    if (m.rows() != m.cols()) {
        return false;
    }
    if (m.size() == 0) {
        return true;
    }
    const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
    return (m - m.adjoint()).cwiseAbs().maxCoeff() <= tol * scale;
}

Vec lower(const Vec& psi) {
    const Eigen::Index d = psi.size();
    Vec out = Vec::Zero(d);
    for (Eigen::Index n = 1; n < d; ++n) {
        out(n - 1) = std::sqrt(static_cast<double>(n)) * psi(n);
    }
    return out;
}

Vec raise(const Vec& psi) {
    const Eigen::Index d = psi.size();
    Vec out = Vec::Zero(d);
    for (Eigen::Index n = 0; n + 1 < d; ++n) {
        out(n + 1) = std::sqrt(static_cast<double>(n + 1)) * psi(n);
    }
    return out;
}

}  // namespace qfock
