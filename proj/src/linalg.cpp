#include "injekt/linalg.hpp"

namespace injekt {

// Bareiss fraction-free elimination. Rows are scaled to integers first, all
// intermediate divisions are exact in Z, so coefficient growth stays at the
// size of the corresponding minors.
size_t rank_rational(const MatQ& m) {
    const size_t rows = m.rows, cols = m.cols;
    if (rows == 0 || cols == 0) return 0;
    std::vector<std::vector<Int>> z(rows, std::vector<Int>(cols));
    for (size_t i = 0; i < rows; ++i) {
        Int lcm = 1;
        for (size_t j = 0; j < cols; ++j) lcm = ::lcm(lcm, m.at(i, j).get_den());
        for (size_t j = 0; j < cols; ++j) {
            Rat scaled = m.at(i, j) * Rat(lcm);
            scaled.canonicalize();
            z[i][j] = scaled.get_num();
        }
    }
    Int prev = 1;
    size_t rank = 0;
    for (size_t col = 0; col < cols && rank < rows; ++col) {
        size_t piv = rank;
        while (piv < rows && z[piv][col] == 0) ++piv;
        if (piv == rows) continue;
        if (piv != rank) z[piv].swap(z[rank]);
        for (size_t i = rank + 1; i < rows; ++i) {
            for (size_t j = col + 1; j < cols; ++j) {
                Int num = z[rank][col] * z[i][j] - z[i][col] * z[rank][j];
                mpz_divexact(z[i][j].get_mpz_t(), num.get_mpz_t(), prev.get_mpz_t());
            }
            z[i][col] = 0;
        }
        prev = z[rank][col];
        ++rank;
    }
    return rank;
}

} // namespace injekt
