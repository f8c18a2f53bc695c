#include "rsiegel/weights.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace rsiegel {

bool GLWeight::is_dominant() const
{
    if (static_cast<int>(m.size()) != n) return false;
    for (std::size_t i = 1; i < m.size(); ++i)
        if (m[i - 1] < m[i]) return false;
    return true;
}

int GLWeight::size_sum() const { return std::accumulate(m.begin(), m.end(), 0); }

void validate(const OrthWeight& lambda)
{
    if (lambda.n < 1) throw DomainError("orthogonal weight needs n >= 1");
    const int l = lambda.n / 2;
    if (static_cast<int>(lambda.m.size()) != l)
        throw DomainError("orthogonal weight for n = " + std::to_string(lambda.n) + " needs " + std::to_string(l) + " entries");
    for (int i = 0; i < l; ++i) {
        if (lambda.m[static_cast<std::size_t>(i)] < 0) throw DomainError("orthogonal weight entries must be nonnegative");
        if (i > 0 && lambda.m[static_cast<std::size_t>(i - 1)] < lambda.m[static_cast<std::size_t>(i)])
            throw DomainError("orthogonal weight entries must be weakly decreasing");
    }
    if (lambda.sign != 1 && lambda.sign != -1) throw DomainError("sign must be +1 or -1");
    if (lambda.n % 2 == 0 && lambda.sign == -1 && std::all_of(lambda.m.begin(), lambda.m.end(), [](int v) { return v == 0; }))
        throw DomainError("the - family needs some nonzero entry");
}

GLWeight kv_tau(const OrthWeight& lambda)
{
    validate(lambda);
    const int n = lambda.n;
    const int l = n / 2;
    GLWeight out{n, std::vector<int>(static_cast<std::size_t>(n), 0)};
    const int total = std::accumulate(lambda.m.begin(), lambda.m.end(), 0);
    const bool first_branch = (n % 2 == 1) ? (lambda.sign == ((total % 2 == 0) ? 1 : -1)) : (lambda.sign == 1);
    if (first_branch) {
        for (int i = 0; i < l; ++i) out.m[static_cast<std::size_t>(i)] = lambda.m[static_cast<std::size_t>(i)];
        return out;
    }
    int r = 0;
    for (int i = 0; i < l; ++i)
        if (lambda.m[static_cast<std::size_t>(i)] != 0) r = i + 1;
    for (int i = 0; i < r; ++i) out.m[static_cast<std::size_t>(i)] = lambda.m[static_cast<std::size_t>(i)];
    for (int i = r; i < n - r; ++i) out.m[static_cast<std::size_t>(i)] = 1;
    return out;
}

std::optional<OrthWeight> tau_sigma_membership(const GLWeight& rho)
{
    if (!rho.is_dominant() || rho.n < 1) return std::nullopt;
    if (rho.m.back() < 0) return std::nullopt;
    const int n = rho.n;
    const int l = n / 2;
    int zeros = 0;
    while (zeros < n && rho.m[static_cast<std::size_t>(n - 1 - zeros)] == 0) ++zeros;
    OrthWeight lambda{n, std::vector<int>(static_cast<std::size_t>(l), 0), 1};
    if (zeros >= n - l) {
        for (int i = 0; i < l; ++i) lambda.m[static_cast<std::size_t>(i)] = rho.m[static_cast<std::size_t>(i)];
        if (n % 2 == 1) {
            int total = std::accumulate(lambda.m.begin(), lambda.m.end(), 0);
            lambda.sign = (total % 2 == 0) ? 1 : -1;
        }
        return lambda;
    }
    const int r = zeros;
    if (n % 2 == 0 && r == 0) return std::nullopt;
    for (int i = r; i < n - r; ++i)
        if (rho.m[static_cast<std::size_t>(i)] != 1) return std::nullopt;
    if (r > 0 && rho.m[static_cast<std::size_t>(r - 1)] == 0) return std::nullopt;
    for (int i = 0; i < r; ++i) lambda.m[static_cast<std::size_t>(i)] = rho.m[static_cast<std::size_t>(i)];
    if (n % 2 == 1) {
        int total = std::accumulate(lambda.m.begin(), lambda.m.end(), 0);
        lambda.sign = (total % 2 == 0) ? -1 : 1;
    } else {
        lambda.sign = -1;
    }
    return lambda;
}

OrthWeight parse_orth_weight(int n, const std::string& text)
{
    auto semi = text.find(';');
    if (semi == std::string::npos) throw DomainError("orthogonal weight needs ';' before the sign");
    OrthWeight out{n, {}, 1};
    std::string entries = text.substr(0, semi);
    std::string sign = text.substr(semi + 1);
    std::stringstream ss(entries);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) continue;
        std::size_t pos = 0;
        int v = std::stoi(item, &pos);
        if (pos != item.size()) throw DomainError("bad weight entry '" + item + "'");
        out.m.push_back(v);
    }
    if (sign == "+1" || sign == "+" || sign == "1") out.sign = 1;
    else if (sign == "-1" || sign == "-") out.sign = -1;
    else throw DomainError("bad sign '" + sign + "'");
    validate(out);
    return out;
}

std::string to_string(const OrthWeight& lambda)
{
    std::string s;
    for (std::size_t i = 0; i < lambda.m.size(); ++i) s += (i ? "," : "") + std::to_string(lambda.m[i]);
    if (lambda.n % 2) s += lambda.sign == 1 ? ";+1" : ";-1";
    else s += lambda.sign == 1 ? ";+" : ";-";
    return s;
}

std::string to_string(const GLWeight& rho)
{
    std::string s = "(";
    for (std::size_t i = 0; i < rho.m.size(); ++i) s += (i ? "," : "") + std::to_string(rho.m[i]);
    return s + ")";
}

long long binomial(int n, int k)
{
    if (k < 0 || k > n) return 0;
    long long out = 1;
    for (int i = 1; i <= k; ++i) out = out * (n - k + i) / i;
    return out;
}

GLWeight GLRep::highest_weight() const
{
    if (n == 1) return {1, {j + k}};
    return {2, {j + k, k}};
}

Eigen::VectorXd GLRep::gram_weights() const
{
    Eigen::VectorXd g(dim());
    if (n == 1) {
        g(0) = 1;
        return g;
    }
    for (int i = 0; i <= j; ++i) g(i) = 1.0 / static_cast<double>(binomial(j, i));
    return g;
}

GLRep materialize_sym_rep(int j, int k)
{
    if (j < 0) throw DomainError("Sym^j needs j >= 0");
    return GLRep{2, j, k};
}

} // namespace rsiegel
