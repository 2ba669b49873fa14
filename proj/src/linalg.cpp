#include "c2f/linalg.hpp"

namespace c2f {

namespace {
// returns pivot column -> row map after in-place Gauss-Jordan
std::vector<int> reduce(const FieldPtr& F, Mat& M, std::vector<Elem>* rhs) {
    (void)F;
    const int rows = static_cast<int>(M.size());
    const int cols = rows ? static_cast<int>(M[0].size()) : 0;
    std::vector<int> where(static_cast<size_t>(cols), -1);
    int row = 0;
    for (int col = 0; col < cols && row < rows; ++col) {
        int piv = -1;
        for (int r = row; r < rows; ++r)
            if (!M[static_cast<size_t>(r)][static_cast<size_t>(col)].is_zero()) { piv = r; break; }
        if (piv < 0) continue;
        std::swap(M[static_cast<size_t>(piv)], M[static_cast<size_t>(row)]);
        if (rhs) std::swap((*rhs)[static_cast<size_t>(piv)], (*rhs)[static_cast<size_t>(row)]);
        Elem d = M[static_cast<size_t>(row)][static_cast<size_t>(col)];
        Elem dinv = d.inverse();
        for (int c = 0; c < cols; ++c)
            M[static_cast<size_t>(row)][static_cast<size_t>(c)] =
                M[static_cast<size_t>(row)][static_cast<size_t>(c)] * dinv;
        if (rhs) (*rhs)[static_cast<size_t>(row)] = (*rhs)[static_cast<size_t>(row)] * dinv;
        for (int r = 0; r < rows; ++r) {
            if (r == row) continue;
            Elem f = M[static_cast<size_t>(r)][static_cast<size_t>(col)];
            if (f.is_zero()) continue;
            for (int c = 0; c < cols; ++c)
                M[static_cast<size_t>(r)][static_cast<size_t>(c)] =
                    M[static_cast<size_t>(r)][static_cast<size_t>(c)] -
                    f * M[static_cast<size_t>(row)][static_cast<size_t>(c)];
            if (rhs)
                (*rhs)[static_cast<size_t>(r)] =
                    (*rhs)[static_cast<size_t>(r)] - f * (*rhs)[static_cast<size_t>(row)];
        }
        where[static_cast<size_t>(col)] = row;
        ++row;
    }
    return where;
}
}  // namespace

std::optional<std::vector<Elem>> solve_linear(const FieldPtr& F, Mat M, std::vector<Elem> rhs) {
    const int rows = static_cast<int>(M.size());
    const int cols = rows ? static_cast<int>(M[0].size()) : 0;
    auto where = reduce(F, M, &rhs);
    for (int r = 0; r < rows; ++r) {
        bool all0 = true;
        for (int c = 0; c < cols; ++c)
            if (!M[static_cast<size_t>(r)][static_cast<size_t>(c)].is_zero()) { all0 = false; break; }
        if (all0 && !rhs[static_cast<size_t>(r)].is_zero()) return std::nullopt;
    }
    std::vector<Elem> x(static_cast<size_t>(cols), Elem::zero(F));
    for (int c = 0; c < cols; ++c)
        if (where[static_cast<size_t>(c)] >= 0) x[static_cast<size_t>(c)] = rhs[static_cast<size_t>(where[static_cast<size_t>(c)])];
    return x;
}

std::optional<std::vector<Elem>> nullspace_vector(const FieldPtr& F, Mat M) {
    const int cols = M.empty() ? 0 : static_cast<int>(M[0].size());
    auto where = reduce(F, M, nullptr);
    int free_col = -1;
    for (int c = 0; c < cols; ++c)
        if (where[static_cast<size_t>(c)] < 0) { free_col = c; break; }
    if (free_col < 0) return std::nullopt;
    std::vector<Elem> x(static_cast<size_t>(cols), Elem::zero(F));
    x[static_cast<size_t>(free_col)] = Elem::one(F);
    for (int c = 0; c < cols; ++c) {
        int r = where[static_cast<size_t>(c)];
        if (r >= 0) x[static_cast<size_t>(c)] = -M[static_cast<size_t>(r)][static_cast<size_t>(free_col)];
    }
    return x;
}

int matrix_rank(const FieldPtr& F, Mat M) {
    auto where = reduce(F, M, nullptr);
    int rank = 0;
    for (int w : where)
        if (w >= 0) ++rank;
    return rank;
}

}  // namespace c2f
